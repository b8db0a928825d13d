// Additive energy of a strictly increasing integer sequence: the number
// of quadruples (a, b, c, d) with a + b = c + d, all four drawn from the
// first N terms. Always between N^2 and N^3.
//
// Two routes are computed and cross-checked on every call: the sum
// multiset (E = sum over S of c_S^2, c_S ordered pairs with a + b = S)
// and the difference identity (E = N^2 + sum over v != 0 of r(v)^2 with
// r the representation function of differences).
#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "paircorr/generators.hpp"

namespace paircorr {

// Largest N with N^3 still representable in a signed 64-bit accumulator.
inline constexpr std::int64_t kEnergyMaxN = 2097151;

struct EnergyReport {
    std::int64_t n = 0;
    std::int64_t energy = 0;
    double normalized = 0.0; // energy / N^3
    // v -> #{(k,l), k != l, a_k - a_l = v}; symmetric, v = 0 excluded.
    std::map<std::int64_t, std::int64_t> rep_function;
};

// r as above for the first n terms. The sequence must validate.
std::map<std::int64_t, std::int64_t> representation_function(const IntegerSequence& seq,
                                                             std::int64_t n);

// Throws std::range_error for n > kEnergyMaxN, std::invalid_argument for
// n < 1 or n exceeding the sequence length.
EnergyReport additive_energy(const IntegerSequence& seq, std::int64_t n);

enum class EnergyRegime { maximal_order, subcritical, indeterminate };

std::string to_string(EnergyRegime regime);

struct RegimeThresholds {
    double tau_max = 0.1; // maximal order when E / N^3 >= tau_max
    double kappa = 1.0;   // subcritical when E <= kappa * N^3 / (log N)^c
    double c = 1.0;
};

// N < 3 is always indeterminate; maximal_order takes precedence when both
// tests pass.
EnergyRegime classify_energy_regime(const EnergyReport& report,
                                    const RegimeThresholds& thresholds = {});

} // namespace paircorr
