#include "paircorr/energy.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace paircorr {

namespace {

// Counter over integer keys that switches between a flat array (when the
// key span is modest) and a hash map. The flat path is what makes the
// O(N^2) passes tolerable for dense desk-scale sequences.
class SpanCounter {
public:
    SpanCounter(std::int64_t lo, std::int64_t hi, std::int64_t expected) {
        span_ = hi - lo;
        lo_ = lo;
        if (span_ >= 0 && span_ <= kFlatLimit) {
            flat_.assign(static_cast<std::size_t>(span_) + 1, 0);
            use_flat_ = true;
        } else {
            hash_.reserve(static_cast<std::size_t>(expected));
        }
    }

    void add(std::int64_t key, std::int64_t w) {
        if (use_flat_) {
            flat_[static_cast<std::size_t>(key - lo_)] += w;
        } else {
            hash_[key] += w;
        }
    }

    template <typename F>
    void for_each(F&& f) const {
        if (use_flat_) {
            for (std::size_t i = 0; i < flat_.size(); ++i) {
                if (flat_[i] != 0) f(lo_ + static_cast<std::int64_t>(i), flat_[i]);
            }
        } else {
            for (const auto& [k, v] : hash_) f(k, v);
        }
    }

private:
    static constexpr std::int64_t kFlatLimit = std::int64_t{1} << 23;

    bool use_flat_ = false;
    std::int64_t lo_ = 0;
    std::int64_t span_ = 0;
    std::vector<std::int64_t> flat_;
    std::unordered_map<std::int64_t, std::int64_t> hash_;
};

void check_args(const IntegerSequence& seq, std::int64_t n) {
    if (n < 1) throw std::invalid_argument("additive energy needs at least one term");
    if (n > seq.size()) {
        throw std::invalid_argument("sequence '" + seq.label + "' has " +
                                    std::to_string(seq.size()) + " terms, need " +
                                    std::to_string(n));
    }
    if (n > kEnergyMaxN) {
        throw std::range_error("n = " + std::to_string(n) +
                               " overflows the 64-bit energy accumulator (max " +
                               std::to_string(kEnergyMaxN) + ")");
    }
    seq.validate();
}

} // namespace

std::map<std::int64_t, std::int64_t> representation_function(const IntegerSequence& seq,
                                                             std::int64_t n) {
    check_args(seq, n);
    const auto& a = seq.terms;
    // Strictly increasing terms: every k > l difference is positive, and
    // r(-v) = r(v) fills in the negative side.
    SpanCounter diffs(1, a[static_cast<std::size_t>(n - 1)] - a[0], n * (n - 1) / 2);
    for (std::int64_t k = 1; k < n; ++k) {
        for (std::int64_t l = 0; l < k; ++l) {
            diffs.add(a[static_cast<std::size_t>(k)] - a[static_cast<std::size_t>(l)], 1);
        }
    }
    std::map<std::int64_t, std::int64_t> r;
    diffs.for_each([&](std::int64_t v, std::int64_t count) {
        r[v] = count;
        r[-v] = count;
    });
    return r;
}

EnergyReport additive_energy(const IntegerSequence& seq, std::int64_t n) {
    check_args(seq, n);
    const auto& a = seq.terms;
    const std::int64_t lo = a[0];
    const std::int64_t hi = a[static_cast<std::size_t>(n - 1)];

    // Route one: multiset of pairwise sums, diagonal included. Ordered
    // pairs (k, l) and (l, k) share a sum, so off-diagonal entries carry
    // weight two.
    SpanCounter sums(2 * lo, 2 * hi, n * (n + 1) / 2);
    for (std::int64_t k = 0; k < n; ++k) {
        const std::int64_t ak = a[static_cast<std::size_t>(k)];
        sums.add(2 * ak, 1);
        for (std::int64_t l = k + 1; l < n; ++l) {
            sums.add(ak + a[static_cast<std::size_t>(l)], 2);
        }
    }
    std::int64_t energy_sums = 0;
    sums.for_each([&](std::int64_t, std::int64_t count) { energy_sums += count * count; });

    // Route two: N^2 + sum of squared representation counts.
    SpanCounter diffs(1, hi - lo, n * (n - 1) / 2);
    for (std::int64_t k = 1; k < n; ++k) {
        for (std::int64_t l = 0; l < k; ++l) {
            diffs.add(a[static_cast<std::size_t>(k)] - a[static_cast<std::size_t>(l)], 1);
        }
    }
    std::int64_t energy_diffs = n * n;
    std::map<std::int64_t, std::int64_t> rep;
    diffs.for_each([&](std::int64_t v, std::int64_t count) {
        energy_diffs += 2 * count * count; // v and -v
        rep[v] = count;
        rep[-v] = count;
    });

    if (energy_sums != energy_diffs) {
        throw std::logic_error("energy routes disagree: sums " + std::to_string(energy_sums) +
                               " vs diffs " + std::to_string(energy_diffs));
    }

    EnergyReport report;
    report.n = n;
    report.energy = energy_sums;
    report.normalized = static_cast<double>(energy_sums) /
                        (static_cast<double>(n) * static_cast<double>(n) * static_cast<double>(n));
    report.rep_function = std::move(rep);
    return report;
}

std::string to_string(EnergyRegime regime) {
    switch (regime) {
        case EnergyRegime::maximal_order: return "maximal_order";
        case EnergyRegime::subcritical: return "subcritical";
        case EnergyRegime::indeterminate: return "indeterminate";
    }
    return "?";
}

EnergyRegime classify_energy_regime(const EnergyReport& report,
                                    const RegimeThresholds& thresholds) {
    if (report.n < 3) return EnergyRegime::indeterminate;
    if (report.normalized >= thresholds.tau_max) return EnergyRegime::maximal_order;
    const double n = static_cast<double>(report.n);
    const double subcritical_cap =
        thresholds.kappa * n * n * n / std::pow(std::log(n), thresholds.c);
    if (static_cast<double>(report.energy) <= subcritical_cap) return EnergyRegime::subcritical;
    return EnergyRegime::indeterminate;
}

} // namespace paircorr
