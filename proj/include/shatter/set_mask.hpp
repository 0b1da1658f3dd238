#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

#include "shatter/errors.hpp"

namespace shatter {

/// Largest supported universe; a subset of [n] always fits one machine word.
inline constexpr int kMaxUniverse = 63;

/// A subset of the universe [n] = {1, ..., n}.
///
/// Elements are 1-based at the interface; element i lives in bit (i - 1).
/// The mask itself does not know n: callers that care about the universe
/// bound check it with fits_universe().
class SetMask {
  public:
    using word_type = std::uint64_t;

    constexpr SetMask() = default;
    constexpr explicit SetMask(word_type bits) : bits_{bits} {}

    /// Builds a mask from 1-based element labels. Throws InvalidInput for
    /// labels outside [1, kMaxUniverse].
    static SetMask of(std::initializer_list<int> elements);
    static SetMask of(const std::vector<int>& elements);

    static constexpr SetMask singleton(int element) { return SetMask{word_type{1} << (element - 1)}; }
    static constexpr SetMask universe(int n) {
        return SetMask{n >= 64 ? ~word_type{0} : (word_type{1} << n) - 1};
    }

    [[nodiscard]] constexpr word_type bits() const { return bits_; }
    [[nodiscard]] constexpr bool empty() const { return bits_ == 0; }
    [[nodiscard]] constexpr int size() const { return std::popcount(bits_); }
    [[nodiscard]] constexpr bool contains(int element) const {
        return element >= 1 && element <= 64 && ((bits_ >> (element - 1)) & 1U) != 0;
    }
    [[nodiscard]] constexpr bool is_subset_of(SetMask other) const { return (bits_ & ~other.bits_) == 0; }
    [[nodiscard]] constexpr bool fits_universe(int n) const { return is_subset_of(universe(n)); }

    [[nodiscard]] constexpr SetMask with(int element) const { return *this | singleton(element); }
    [[nodiscard]] constexpr SetMask without(int element) const { return *this - singleton(element); }
    [[nodiscard]] constexpr SetMask toggled(int element) const { return *this ^ singleton(element); }

    /// Largest element, or 0 for the empty set.
    [[nodiscard]] constexpr int max_element() const { return 64 - std::countl_zero(bits_); }
    /// Smallest element, or 0 for the empty set.
    [[nodiscard]] constexpr int min_element() const { return bits_ == 0 ? 0 : std::countr_zero(bits_) + 1; }

    /// Ascending 1-based labels.
    [[nodiscard]] std::vector<int> elements() const;

    friend constexpr SetMask operator|(SetMask a, SetMask b) { return SetMask{a.bits_ | b.bits_}; }
    friend constexpr SetMask operator&(SetMask a, SetMask b) { return SetMask{a.bits_ & b.bits_}; }
    friend constexpr SetMask operator^(SetMask a, SetMask b) { return SetMask{a.bits_ ^ b.bits_}; }
    /// Set difference.
    friend constexpr SetMask operator-(SetMask a, SetMask b) { return SetMask{a.bits_ & ~b.bits_}; }

    constexpr SetMask& operator|=(SetMask o) {
        bits_ |= o.bits_;
        return *this;
    }
    constexpr SetMask& operator&=(SetMask o) {
        bits_ &= o.bits_;
        return *this;
    }
    constexpr SetMask& operator^=(SetMask o) {
        bits_ ^= o.bits_;
        return *this;
    }

    // Canonical order is the numeric value of the mask.
    friend constexpr auto operator<=>(SetMask, SetMask) = default;

  private:
    word_type bits_{0};
};

/// Set literal such as "{}" or "{2,3}".
std::string to_string(SetMask mask);

/// Calls fn on every subset of mask, starting from the empty set and
/// ending with mask itself.
template <typename Fn>
void for_each_subset(SetMask mask, Fn&& fn) {
    const auto full = mask.bits();
    SetMask::word_type sub = 0;
    while (true) {
        fn(SetMask{sub});
        if (sub == full) break;
        sub = (sub - full) & full;
    }
}

/// Gathers the bits of x selected by mask into the low-order bits (software pext).
constexpr std::uint64_t compress_bits(std::uint64_t x, std::uint64_t mask) {
    std::uint64_t out = 0;
    int pos = 0;
    while (mask != 0) {
        const auto low = mask & (~mask + 1);
        if ((x & low) != 0) out |= std::uint64_t{1} << pos;
        ++pos;
        mask ^= low;
    }
    return out;
}

/// Inverse of compress_bits: scatters low-order bits of x into the positions of mask.
constexpr std::uint64_t expand_bits(std::uint64_t x, std::uint64_t mask) {
    std::uint64_t out = 0;
    while (mask != 0) {
        const auto low = mask & (~mask + 1);
        if ((x & 1U) != 0) out |= low;
        x >>= 1;
        mask ^= low;
    }
    return out;
}

} // namespace shatter

template <>
struct std::hash<shatter::SetMask> {
    std::size_t operator()(shatter::SetMask m) const noexcept { return std::hash<std::uint64_t>{}(m.bits()); }
};
