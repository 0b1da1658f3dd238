#include "shatter/set_system.hpp"

#include <algorithm>
#include <string>

namespace shatter {

namespace {

void check_universe(int n) {
    if (n < 1 || n > kMaxUniverse) throw InvalidInput("universe size " + std::to_string(n) + " outside [1, 63]");
}

void check_element(const SetSystem& system, int element) {
    if (element < 1 || element > system.universe_size()) {
        throw InvalidInput("element " + std::to_string(element) + " outside universe [1, " +
                           std::to_string(system.universe_size()) + "]");
    }
}

SetSystem map_members(const SetSystem& system, SetMask toggle) {
    std::vector<SetMask> out;
    out.reserve(system.size());
    for (auto m : system) out.push_back(m ^ toggle);
    return SetSystem(system.universe_size(), std::move(out));
}

} // namespace

SetSystem::SetSystem(int n) : n_{n} { check_universe(n); }

SetSystem::SetSystem(int n, std::vector<SetMask> members) : n_{n}, members_{std::move(members)} {
    check_universe(n);
    std::sort(members_.begin(), members_.end());
    const auto universe = SetMask::universe(n);
    for (std::size_t i = 0; i < members_.size(); ++i) {
        if (!members_[i].is_subset_of(universe)) {
            throw InvalidInput("set " + to_string(members_[i]) + " exceeds universe [1, " + std::to_string(n) + "]");
        }
        if (i > 0 && members_[i] == members_[i - 1]) {
            throw InvalidInput("duplicate set " + to_string(members_[i]));
        }
    }
}

SetSystem SetSystem::of(int n, std::initializer_list<std::initializer_list<int>> sets) {
    std::vector<SetMask> members;
    for (auto s : sets) members.push_back(SetMask::of(s));
    return SetSystem(n, std::move(members));
}

SetSystem SetSystem::power_set(int n, SetMask s) {
    std::vector<SetMask> members;
    for_each_subset(s, [&](SetMask h) { members.push_back(h); });
    return SetSystem(n, std::move(members));
}

bool SetSystem::contains(SetMask s) const { return std::binary_search(members_.begin(), members_.end(), s); }

long SetSystem::index_of(SetMask s) const {
    auto it = std::lower_bound(members_.begin(), members_.end(), s);
    if (it == members_.end() || *it != s) return -1;
    return static_cast<long>(it - members_.begin());
}

SetSystem SetSystem::with(SetMask s) const {
    if (!s.fits_universe(n_)) throw InvalidInput("set " + to_string(s) + " exceeds universe");
    auto it = std::lower_bound(members_.begin(), members_.end(), s);
    if (it != members_.end() && *it == s) throw InvalidInput("set " + to_string(s) + " already a member");
    std::vector<SetMask> out;
    out.reserve(members_.size() + 1);
    out.insert(out.end(), members_.begin(), it);
    out.push_back(s);
    out.insert(out.end(), it, members_.end());
    return SetSystem(Trusted{}, n_, std::move(out));
}

SetSystem SetSystem::without(SetMask s) const {
    auto it = std::lower_bound(members_.begin(), members_.end(), s);
    if (it == members_.end() || *it != s) throw InvalidInput("set " + to_string(s) + " is not a member");
    std::vector<SetMask> out;
    out.reserve(members_.size() - 1);
    out.insert(out.end(), members_.begin(), it);
    out.insert(out.end(), it + 1, members_.end());
    return SetSystem(Trusted{}, n_, std::move(out));
}

SetMask support(const SetSystem& system) {
    SetMask out;
    for (auto m : system) out |= m;
    return out;
}

SetSystem bit_flip(const SetSystem& system, int element) {
    check_element(system, element);
    return map_members(system, SetMask::singleton(element));
}

SetSystem apply_flips(const SetSystem& system, SetMask flips) {
    if (!flips.fits_universe(system.universe_size())) throw InvalidInput("flip set exceeds universe");
    return map_members(system, flips);
}

FlipResult flip_to_empty(const SetSystem& system, SetMask target) {
    if (!system.contains(target)) throw InvalidInput("anchor " + to_string(target) + " is not a member");
    return FlipResult{map_members(system, target), target};
}

SetSystem invert_flip(const FlipResult& flipped) { return map_members(flipped.system, flipped.flips); }

Subdivision standard_subdivision(const SetSystem& system, int element) {
    check_element(system, element);
    std::vector<SetMask> avoiding;
    std::vector<SetMask> containing;
    for (auto m : system) {
        if (m.contains(element)) {
            containing.push_back(m.without(element));
        } else {
            avoiding.push_back(m);
        }
    }
    const int n = system.universe_size();
    return Subdivision{SetSystem(n, std::move(avoiding)), SetSystem(n, std::move(containing))};
}

IntervalQuery::IntervalQuery(SetMask lower, SetMask upper) : lower_{lower}, upper_{upper} {
    if (!lower.is_subset_of(upper)) {
        throw InvalidInput("malformed interval: " + to_string(lower) + " is not a subset of " + to_string(upper));
    }
}

SetSystem interval_restrict(const SetSystem& system, const IntervalQuery& query) {
    std::vector<SetMask> out;
    for (auto m : system) {
        if (query.contains(m)) out.push_back(m);
    }
    return SetSystem(system.universe_size(), std::move(out));
}

} // namespace shatter
