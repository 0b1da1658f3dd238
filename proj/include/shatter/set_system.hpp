#pragma once

#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

#include "shatter/set_mask.hpp"

namespace shatter {

/// A duplicate-free family of subsets of [n], kept in canonical order
/// (ascending numeric mask value). Immutable once built.
class SetSystem {
  public:
    using const_iterator = std::vector<SetMask>::const_iterator;

    /// The empty system over [n].
    explicit SetSystem(int n);
    /// Sorts members; throws InvalidInput on duplicates, out-of-universe
    /// members, or n outside [1, kMaxUniverse].
    SetSystem(int n, std::vector<SetMask> members);

    /// Convenience for literals: SetSystem::of(3, {{}, {1}, {2, 3}}).
    static SetSystem of(int n, std::initializer_list<std::initializer_list<int>> sets);
    /// The full cube 2^S over universe n.
    static SetSystem power_set(int n, SetMask s);

    [[nodiscard]] int universe_size() const { return n_; }
    [[nodiscard]] std::size_t size() const { return members_.size(); }
    [[nodiscard]] bool empty() const { return members_.empty(); }
    [[nodiscard]] std::span<const SetMask> members() const { return members_; }
    [[nodiscard]] const SetMask& operator[](std::size_t i) const { return members_[i]; }
    [[nodiscard]] const_iterator begin() const { return members_.begin(); }
    [[nodiscard]] const_iterator end() const { return members_.end(); }

    [[nodiscard]] bool contains(SetMask s) const;
    /// Index of s in canonical order, or -1.
    [[nodiscard]] long index_of(SetMask s) const;

    /// Copy with s added; throws InvalidInput if already present.
    [[nodiscard]] SetSystem with(SetMask s) const;
    /// Copy with s removed; throws InvalidInput if absent.
    [[nodiscard]] SetSystem without(SetMask s) const;

    friend bool operator==(const SetSystem&, const SetSystem&) = default;

  private:
    struct Trusted {};
    SetSystem(Trusted, int n, std::vector<SetMask> sorted) : n_{n}, members_{std::move(sorted)} {}

    int n_;
    std::vector<SetMask> members_;
};

/// Union of all members.
SetMask support(const SetSystem& system);

/// phi_i: toggles element i in every member.
SetSystem bit_flip(const SetSystem& system, int element);

/// Composition of phi_i over all i in flips.
SetSystem apply_flips(const SetSystem& system, SetMask flips);

struct FlipResult {
    SetSystem system;
    /// The elements that were flipped. Applying the same flips again undoes them.
    SetMask flips;
};

/// Flips every element of target so that target's image is the empty set.
FlipResult flip_to_empty(const SetSystem& system, SetMask target);

/// Recovers the system that flip_to_empty was called on.
SetSystem invert_flip(const FlipResult& flipped);

struct Subdivision {
    SetSystem avoiding;   // F0: members without i
    SetSystem containing; // F1: members with i, i removed
};

Subdivision standard_subdivision(const SetSystem& system, int element);

/// The interval [lower, upper] of the subset lattice.
class IntervalQuery {
  public:
    /// Throws InvalidInput unless lower is a subset of upper.
    IntervalQuery(SetMask lower, SetMask upper);

    [[nodiscard]] SetMask lower() const { return lower_; }
    [[nodiscard]] SetMask upper() const { return upper_; }
    [[nodiscard]] bool contains(SetMask s) const { return lower_.is_subset_of(s) && s.is_subset_of(upper_); }

  private:
    SetMask lower_;
    SetMask upper_;
};

/// Members F with lower <= F <= upper.
SetSystem interval_restrict(const SetSystem& system, const IntervalQuery& query);

} // namespace shatter
