#include "shatter/set_mask.hpp"

#include <string>

namespace shatter {

SetMask SetMask::of(std::initializer_list<int> elements) {
    return of(std::vector<int>(elements));
}

SetMask SetMask::of(const std::vector<int>& elements) {
    SetMask out;
    for (int e : elements) {
        if (e < 1 || e > kMaxUniverse) throw InvalidInput("element " + std::to_string(e) + " outside [1, 63]");
        out = out.with(e);
    }
    return out;
}

std::vector<int> SetMask::elements() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(size()));
    for (auto rest = bits_; rest != 0; rest &= rest - 1) out.push_back(std::countr_zero(rest) + 1);
    return out;
}

std::string to_string(SetMask mask) {
    std::string out = "{";
    bool first = true;
    for (int e : mask.elements()) {
        if (!first) out += ',';
        out += std::to_string(e);
        first = false;
    }
    out += '}';
    return out;
}

} // namespace shatter
