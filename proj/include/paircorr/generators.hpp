// Point-set generators: uniform i.i.d. samples, Kronecker sequences
// frac(n*alpha), sequences frac(a_n*alpha) over integer families,
// polynomial variants frac(f(n)*alpha), and Halton points.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "paircorr/point_set.hpp"

namespace paircorr {

// Direction vector for Kronecker-type generators, one entry per dimension.
struct AlphaVector {
    std::vector<double> alphas;

    int dim() const { return static_cast<int>(alphas.size()); }
};

// A strictly increasing list of non-negative integers a_1 < a_2 < ...
// label records how it was built ("squares", "file:...", ...).
struct IntegerSequence {
    std::vector<std::int64_t> terms;
    std::string label;

    std::int64_t size() const { return static_cast<std::int64_t>(terms.size()); }

    // Throws std::invalid_argument naming the offending position if the
    // terms are not non-negative and strictly increasing.
    void validate() const;
};

enum class SequenceFamily {
    identity,       // 1, 2, 3, ...
    squares,        // 1, 4, 9, ...
    cubes,          // 1, 8, 27, ...
    primes,         // 2, 3, 5, ...
    lacunary_base2, // 2, 4, 8, ...
};

SequenceFamily parse_sequence_family(const std::string& name);
std::string to_string(SequenceFamily family);

// First n terms of a built-in family. Throws std::range_error when a term
// would overflow 64 bits (lacunary_base2 beyond n = 62, huge squares/cubes).
IntegerSequence make_integer_sequence(SequenceFamily family, std::int64_t n);

// n i.i.d. uniform points of [0,1)^d. Deterministic for a fixed seed:
// a single mt19937_64 engine seeded with `seed` produces coordinates in
// point-major order, each double built as (engine() >> 11) * 2^-53.
PointSet uniform_points(int dim, std::int64_t n, std::uint64_t seed);

// Kronecker sequence x_n = (frac(n*alpha_1), ..., frac(n*alpha_d)),
// n = 1..n_points. Each coordinate is computed per-index via frac_mul,
// not by iterated addition, so there is no error accumulation in n.
PointSet kronecker_points(const AlphaVector& alpha, std::int64_t n_points);

// x_n = (frac(a_n*alpha_1), ..., frac(a_n*alpha_d)) over a supplied
// integer sequence. Throws std::invalid_argument if the sequence holds
// fewer than n_points terms (the message names the shortfall).
PointSet sequence_alpha_points(const IntegerSequence& seq, const AlphaVector& alpha,
                               std::int64_t n_points);

// x_n = (frac(f(n)*alpha_1), ...) for an integer polynomial f given by
// ascending coefficients (f = coeffs[0] + coeffs[1]*n + ...). Requires
// degree >= 2, a nonzero leading coefficient, and f strictly increasing
// on 1..n_points (validated; violations throw std::invalid_argument).
PointSet polynomial_alpha_points(const std::vector<std::int64_t>& coeffs,
                                 const AlphaVector& alpha, std::int64_t n_points);

// Halton sequence in the first d prime bases, n = 1..n_points.
// d = 1 is the van der Corput sequence in base 2: 0.5, 0.25, 0.75, ...
PointSet halton_points(int dim, std::int64_t n_points);

// Shared helpers, exposed for tests and the diagnostics module.

// Canonical 53-bit double in [0,1) from one 64-bit engine draw.
double uniform_double(std::uint64_t bits);

// Stateless seed mixer (splitmix64 finalizer); used to derive independent
// per-trial seeds from (seed, index) in Monte Carlo runs.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);

// Random direction vector with entries in [0,1); same engine and double
// construction as uniform_points.
AlphaVector random_alpha(int dim, std::uint64_t seed);

} // namespace paircorr
