#pragma once

#include <initializer_list>
#include <ostream>
#include <random>
#include <vector>

#include "shatter/set_mask.hpp"
#include "shatter/set_system.hpp"

namespace shatter {

inline void PrintTo(SetMask m, std::ostream* os) { *os << to_string(m); }

inline void PrintTo(const SetSystem& s, std::ostream* os) {
    *os << "n=" << s.universe_size() << " {";
    const char* sep = "";
    for (auto m : s) {
        *os << sep << to_string(m);
        sep = ",";
    }
    *os << "}";
}

} // namespace shatter

namespace testing_support {

using shatter::SetMask;
using shatter::SetSystem;

inline SetMask M(std::initializer_list<int> e) { return SetMask::of(e); }

inline SetSystem S(int n, std::initializer_list<std::initializer_list<int>> sets) { return SetSystem::of(n, sets); }

// {{}, {1}, {2}, {3}, {2,3}}: the running example family.
inline SetSystem example_family() { return S(3, {{}, {1}, {2}, {3}, {2, 3}}); }

// Every system over [n] whose members are encoded by the bits of code.
inline SetSystem decode(int n, std::uint64_t code) {
    std::vector<SetMask> members;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m)
        if ((code >> m) & 1U) members.emplace_back(m);
    return SetSystem(n, members);
}

inline SetSystem random_system(int n, double p, std::mt19937_64& rng) {
    std::bernoulli_distribution coin(p);
    std::vector<SetMask> members;
    while (members.empty())
        for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m)
            if (coin(rng)) members.emplace_back(m);
    return SetSystem(n, members);
}

// Literal trace check: does every subset of s occur as F & s?
inline bool traces_all(const SetSystem& f, SetMask s) {
    std::vector<bool> seen(std::size_t{1} << s.size());
    const auto el = s.elements();
    for (auto m : f) {
        std::size_t code = 0;
        for (std::size_t k = 0; k < el.size(); ++k)
            if (m.contains(el[k])) code |= std::size_t{1} << k;
        seen[code] = true;
    }
    for (bool b : seen)
        if (!b) return false;
    return true;
}

inline int shattered_count(const SetSystem& f) {
    int count = 0;
    const auto n = f.universe_size();
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s)
        if (traces_all(f, SetMask{s})) ++count;
    return count;
}

inline bool extremal_by_count(const SetSystem& f) { return shattered_count(f) == static_cast<int>(f.size()); }

} // namespace testing_support
