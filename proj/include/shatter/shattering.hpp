#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "shatter/set_system.hpp"

namespace shatter {

/// Largest support for which Sh/st are computed exhaustively.
inline constexpr int kMaxShatterSupport = 25;

enum class ShatterKind { Shattered, StronglyShattered };

std::string_view to_string(ShatterKind kind); // "Sh" / "st"

/// A down-closed family of sets produced by shattered_sets or
/// strongly_shattered_sets, in canonical order.
struct ShatterFamily {
    int n = 1;
    ShatterKind kind = ShatterKind::Shattered;
    std::vector<SetMask> sets;

    [[nodiscard]] std::size_t size() const { return sets.size(); }
    [[nodiscard]] bool contains(SetMask s) const;
    /// Same sets, ignoring kind.
    [[nodiscard]] bool same_sets(const ShatterFamily& other) const { return n == other.n && sets == other.sets; }
    [[nodiscard]] bool is_subfamily_of(const ShatterFamily& other) const;

    friend bool operator==(const ShatterFamily&, const ShatterFamily&) = default;
};

/// 2^S + I is contained in the source system.
struct StrongWitness {
    SetMask shattered; // S
    SetMask offset;    // I, disjoint from S

    friend bool operator==(const StrongWitness&, const StrongWitness&) = default;
};

/// Sh(F): every S whose trace {F & S} is all of 2^S.
///
/// Computed bottom-up over the subset lattice of supp(F): a candidate is only
/// tested once all of its immediate subsets are known to be shattered.
/// Requires a nonempty system with |supp(F)| <= 25.
ShatterFamily shattered_sets(const SetSystem& system);

/// st(F): every S such that some translate 2^S + I lies inside F.
/// Same preconditions and traversal as shattered_sets.
ShatterFamily strongly_shattered_sets(const SetSystem& system);

/// All offsets I with 2^S + I contained in the system, ascending by I.
/// Empty iff S is not strongly shattered.
std::vector<StrongWitness> strong_witnesses(const SetSystem& system, SetMask s);

/// Largest |S| over Sh(F).
int vc_dimension(const SetSystem& system);
int vc_dimension(const ShatterFamily& family);

struct ExtremalityReport {
    std::size_t family_size = 0;
    std::size_t shattered_count = 0;
    std::size_t strongly_shattered_count = 0;
    bool extremal = false;
};

/// |Sh(F)| == |F|. Also computes |st(F)| and throws InternalError if
/// (|Sh| == |F|) and (|st| == |F|) disagree.
ExtremalityReport extremality(const SetSystem& system);
bool is_extremal(const SetSystem& system);

/// Inclusion-maximal members of Sh(F).
std::vector<SetMask> maximal_shattered(const SetSystem& system);
std::vector<SetMask> maximal_sets(const ShatterFamily& family);

} // namespace shatter
