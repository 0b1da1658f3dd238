#include "shatter/shattering.hpp"

#include <algorithm>
#include <cstdint>
#include <string>

namespace shatter {

namespace {

using Word = std::uint32_t;

void require_shatterable(const SetSystem& system) {
    if (system.empty()) throw InvalidInput("shattering is undefined for the empty set system");
    const auto supp = support(system);
    if (supp.size() > kMaxShatterSupport) {
        throw InvalidInput("support size " + std::to_string(supp.size()) + " exceeds the exhaustive limit of " +
                           std::to_string(kMaxShatterSupport));
    }
}

// Members re-encoded over the support only, so every lattice walk is over
// m = |supp(F)| bits instead of n.
class CompressedSystem {
  public:
    explicit CompressedSystem(const SetSystem& system) : support_{support(system)}, width_{support_.size()} {
        members_.reserve(system.size());
        for (auto m : system) members_.push_back(static_cast<Word>(compress_bits(m.bits(), support_.bits())));
        if (width_ <= kDenseLimit) {
            stamp_.assign(std::size_t{1} << width_, 0);
            count_.assign(std::size_t{1} << width_, 0);
        }
    }

    [[nodiscard]] int width() const { return width_; }
    [[nodiscard]] std::size_t size() const { return members_.size(); }
    [[nodiscard]] Word full() const { return width_ == 32 ? ~Word{0} : (Word{1} << width_) - 1; }
    [[nodiscard]] SetMask expand(Word s) const { return SetMask{expand_bits(s, support_.bits())}; }
    [[nodiscard]] Word compress(SetMask s) const { return static_cast<Word>(compress_bits(s.bits(), support_.bits())); }

    // Whether the traces {F & s} cover all 2^|s| patterns.
    bool traces_full(Word s) {
        const std::size_t target = std::size_t{1} << std::popcount(s);
        if (members_.size() < target) return false;
        if (dense()) {
            const auto gen = next_generation();
            std::size_t distinct = 0;
            for (auto f : members_) {
                auto& st = stamp_[f & s];
                if (st != gen) {
                    st = gen;
                    if (++distinct == target) return true;
                }
            }
            return false;
        }
        keys_.clear();
        for (auto f : members_) keys_.push_back(f & s);
        std::sort(keys_.begin(), keys_.end());
        return static_cast<std::size_t>(std::unique(keys_.begin(), keys_.end()) - keys_.begin()) == target;
    }

    // Buckets members by their part outside s; a bucket of size 2^|s| is a
    // full translated cube. Returns the bucket keys (offsets), ascending.
    // With first_only, stops at the first full bucket found.
    std::vector<Word> full_buckets(Word s, bool first_only) {
        std::vector<Word> out;
        const std::size_t target = std::size_t{1} << std::popcount(s);
        if (members_.size() < target) return out;
        const Word outside = full() & ~s;
        if (dense()) {
            const auto gen = next_generation();
            for (auto f : members_) {
                const Word key = f & outside;
                if (stamp_[key] != gen) {
                    stamp_[key] = gen;
                    count_[key] = 0;
                }
                if (++count_[key] == target) {
                    out.push_back(key);
                    if (first_only) return out;
                }
            }
            std::sort(out.begin(), out.end());
            return out;
        }
        keys_.clear();
        for (auto f : members_) keys_.push_back(f & outside);
        std::sort(keys_.begin(), keys_.end());
        for (std::size_t i = 0; i < keys_.size();) {
            std::size_t j = i;
            while (j < keys_.size() && keys_[j] == keys_[i]) ++j;
            if (j - i == target) {
                out.push_back(keys_[i]);
                if (first_only) return out;
            }
            i = j;
        }
        return out;
    }

  private:
    static constexpr int kDenseLimit = 20;

    [[nodiscard]] bool dense() const { return width_ <= kDenseLimit; }
    std::uint32_t next_generation() {
        if (++generation_ == 0) {
            std::fill(stamp_.begin(), stamp_.end(), 0);
            generation_ = 1;
        }
        return generation_;
    }

    SetMask support_;
    int width_;
    std::vector<Word> members_;
    std::vector<std::uint32_t> stamp_;
    std::vector<std::uint32_t> count_;
    std::vector<Word> keys_;
    std::uint32_t generation_ = 0;
};

// Upward traversal of the subset lattice of [0, width). A set is tested only
// when all its immediate subsets passed, which is sound for any down-closed
// property. Each candidate is generated once, from the set minus its top bit.
template <typename Test>
std::vector<Word> down_closed_family(int width, Test&& test) {
    std::vector<bool> accepted(std::size_t{1} << width, false);
    std::vector<Word> all;
    std::vector<Word> level;
    if (!test(Word{0})) return all;
    accepted[0] = true;
    level.push_back(0);
    all.push_back(0);
    std::vector<Word> next;
    while (!level.empty()) {
        next.clear();
        for (auto s : level) {
            const int top = s == 0 ? 0 : 32 - std::countl_zero(s);
            for (int e = top; e < width; ++e) {
                const Word t = s | (Word{1} << e);
                bool subsets_ok = true;
                for (Word rest = s; rest != 0; rest &= rest - 1) {
                    const Word low = rest & (~rest + 1);
                    if (!accepted[t ^ low]) {
                        subsets_ok = false;
                        break;
                    }
                }
                if (subsets_ok && test(t)) {
                    accepted[t] = true;
                    next.push_back(t);
                }
            }
        }
        all.insert(all.end(), next.begin(), next.end());
        level.swap(next);
    }
    return all;
}

ShatterFamily expand_family(const CompressedSystem& cs, int n, ShatterKind kind, const std::vector<Word>& sets) {
    ShatterFamily out{n, kind, {}};
    out.sets.reserve(sets.size());
    for (auto s : sets) out.sets.push_back(cs.expand(s));
    std::sort(out.sets.begin(), out.sets.end());
    return out;
}

} // namespace

std::string_view to_string(ShatterKind kind) { return kind == ShatterKind::Shattered ? "Sh" : "st"; }

bool ShatterFamily::contains(SetMask s) const { return std::binary_search(sets.begin(), sets.end(), s); }

bool ShatterFamily::is_subfamily_of(const ShatterFamily& other) const {
    return std::includes(other.sets.begin(), other.sets.end(), sets.begin(), sets.end());
}

ShatterFamily shattered_sets(const SetSystem& system) {
    require_shatterable(system);
    CompressedSystem cs(system);
    auto sets = down_closed_family(cs.width(), [&](Word s) { return cs.traces_full(s); });
    return expand_family(cs, system.universe_size(), ShatterKind::Shattered, sets);
}

ShatterFamily strongly_shattered_sets(const SetSystem& system) {
    require_shatterable(system);
    CompressedSystem cs(system);
    auto sets = down_closed_family(cs.width(), [&](Word s) { return !cs.full_buckets(s, true).empty(); });
    return expand_family(cs, system.universe_size(), ShatterKind::StronglyShattered, sets);
}

std::vector<StrongWitness> strong_witnesses(const SetSystem& system, SetMask s) {
    require_shatterable(system);
    if (!s.fits_universe(system.universe_size())) throw InvalidInput("set " + to_string(s) + " exceeds universe");
    std::vector<StrongWitness> out;
    const auto supp = support(system);
    if (!s.is_subset_of(supp)) return out;
    CompressedSystem cs(system);
    for (auto key : cs.full_buckets(cs.compress(s), false)) out.push_back(StrongWitness{s, cs.expand(key)});
    return out;
}

int vc_dimension(const ShatterFamily& family) {
    int best = 0;
    for (auto s : family.sets) best = std::max(best, s.size());
    return best;
}

int vc_dimension(const SetSystem& system) { return vc_dimension(shattered_sets(system)); }

ExtremalityReport extremality(const SetSystem& system) {
    ExtremalityReport report;
    report.family_size = system.size();
    report.shattered_count = shattered_sets(system).size();
    report.strongly_shattered_count = strongly_shattered_sets(system).size();
    report.extremal = report.shattered_count == report.family_size;
    const bool reverse_extremal = report.strongly_shattered_count == report.family_size;
    if (report.extremal != reverse_extremal) {
        throw InternalError("extremality mismatch: |F|=" + std::to_string(report.family_size) +
                            " |Sh|=" + std::to_string(report.shattered_count) +
                            " |st|=" + std::to_string(report.strongly_shattered_count));
    }
    return report;
}

bool is_extremal(const SetSystem& system) { return extremality(system).extremal; }

std::vector<SetMask> maximal_sets(const ShatterFamily& family) {
    std::vector<SetMask> out;
    const auto universe = SetMask::universe(family.n);
    for (auto s : family.sets) {
        bool maximal = true;
        for (int e : (universe - s).elements()) {
            if (family.contains(s.with(e))) {
                maximal = false;
                break;
            }
        }
        if (maximal) out.push_back(s);
    }
    return out;
}

std::vector<SetMask> maximal_shattered(const SetSystem& system) { return maximal_sets(shattered_sets(system)); }

} // namespace shatter
