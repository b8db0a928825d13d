#include "paircorr/generators.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "paircorr/torus.hpp"

namespace paircorr {

void IntegerSequence::validate() const {
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (terms[i] < 0) {
            throw std::invalid_argument("integer sequence: term " + std::to_string(i + 1) +
                                        " is negative");
        }
        if (i > 0 && terms[i] <= terms[i - 1]) {
            throw std::invalid_argument("integer sequence: term " + std::to_string(i + 1) +
                                        " does not increase (" + std::to_string(terms[i - 1]) +
                                        " -> " + std::to_string(terms[i]) + ")");
        }
    }
}

SequenceFamily parse_sequence_family(const std::string& name) {
    if (name == "identity") return SequenceFamily::identity;
    if (name == "squares") return SequenceFamily::squares;
    if (name == "cubes") return SequenceFamily::cubes;
    if (name == "primes") return SequenceFamily::primes;
    if (name == "lacunary_base2") return SequenceFamily::lacunary_base2;
    throw std::invalid_argument("unknown sequence family: " + name);
}

std::string to_string(SequenceFamily family) {
    switch (family) {
        case SequenceFamily::identity: return "identity";
        case SequenceFamily::squares: return "squares";
        case SequenceFamily::cubes: return "cubes";
        case SequenceFamily::primes: return "primes";
        case SequenceFamily::lacunary_base2: return "lacunary_base2";
    }
    return "?";
}

namespace {

// First n primes via a sieve sized with the usual n*(ln n + ln ln n)
// upper bound (valid for n >= 6; smaller n use a fixed bound).
std::vector<std::int64_t> first_primes(std::int64_t n) {
    std::vector<std::int64_t> primes;
    if (n <= 0) return primes;
    primes.reserve(static_cast<std::size_t>(n));
    std::size_t limit = 15;
    if (n >= 6) {
        const double nd = static_cast<double>(n);
        limit = static_cast<std::size_t>(nd * (std::log(nd) + std::log(std::log(nd)))) + 2;
    }
    std::vector<bool> composite(limit + 1, false);
    for (std::size_t p = 2; p <= limit && primes.size() < static_cast<std::size_t>(n); ++p) {
        if (composite[p]) continue;
        primes.push_back(static_cast<std::int64_t>(p));
        for (std::size_t q = p * p; q <= limit; q += p) composite[q] = true;
    }
    if (primes.size() < static_cast<std::size_t>(n)) {
        throw std::range_error("prime sieve bound too small"); // unreachable for n >= 1
    }
    return primes;
}

std::int64_t checked_square(std::int64_t k) {
    std::int64_t r;
    if (__builtin_mul_overflow(k, k, &r)) throw std::range_error("square overflows 64-bit range");
    return r;
}

std::int64_t checked_cube(std::int64_t k) {
    std::int64_t r;
    if (__builtin_mul_overflow(checked_square(k), k, &r)) {
        throw std::range_error("cube overflows 64-bit range");
    }
    return r;
}

PointSet alpha_multiples(const AlphaVector& alpha, std::int64_t n_points,
                         const std::int64_t* factors, std::string label) {
    const int d = alpha.dim();
    if (d < 1) throw std::invalid_argument("alpha vector must have at least one entry");
    PointSet out(d, std::move(label));
    out.reserve(n_points);
    std::vector<double> pt(static_cast<std::size_t>(d));
    for (std::int64_t i = 0; i < n_points; ++i) {
        for (int k = 0; k < d; ++k) pt[static_cast<std::size_t>(k)] = frac_mul(factors[i], alpha.alphas[static_cast<std::size_t>(k)]);
        out.append(pt);
    }
    return out;
}

} // namespace

IntegerSequence make_integer_sequence(SequenceFamily family, std::int64_t n) {
    if (n < 0) throw std::invalid_argument("sequence length must be non-negative");
    IntegerSequence seq;
    seq.label = to_string(family);
    seq.terms.reserve(static_cast<std::size_t>(n));
    switch (family) {
        case SequenceFamily::identity:
            for (std::int64_t k = 1; k <= n; ++k) seq.terms.push_back(k);
            break;
        case SequenceFamily::squares:
            for (std::int64_t k = 1; k <= n; ++k) seq.terms.push_back(checked_square(k));
            break;
        case SequenceFamily::cubes:
            for (std::int64_t k = 1; k <= n; ++k) seq.terms.push_back(checked_cube(k));
            break;
        case SequenceFamily::primes:
            seq.terms = first_primes(n);
            break;
        case SequenceFamily::lacunary_base2:
            if (n > 62) throw std::range_error("lacunary_base2 overflows 64-bit range beyond 62 terms");
            for (std::int64_t k = 1; k <= n; ++k) seq.terms.push_back(std::int64_t{1} << k);
            break;
    }
    seq.validate();
    return seq;
}

double uniform_double(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
    // splitmix64 finalizer over seed advanced by index steps of the golden
    // ratio increment; distinct (seed, index) pairs decorrelate well.
    std::uint64_t z = seed + (index + 1) * 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

PointSet uniform_points(int dim, std::int64_t n, std::uint64_t seed) {
    if (dim < 1) throw std::invalid_argument("dimension must be >= 1");
    if (n < 0) throw std::invalid_argument("point count must be non-negative");
    PointSet out(dim, "uniform(d=" + std::to_string(dim) + ",n=" + std::to_string(n) +
                          ",seed=" + std::to_string(seed) + ")");
    out.reserve(n);
    std::mt19937_64 eng(seed);
    std::vector<double> pt(static_cast<std::size_t>(dim));
    for (std::int64_t i = 0; i < n; ++i) {
        for (auto& c : pt) c = uniform_double(eng());
        out.append(pt);
    }
    return out;
}

PointSet kronecker_points(const AlphaVector& alpha, std::int64_t n_points) {
    if (n_points < 0) throw std::invalid_argument("point count must be non-negative");
    std::vector<std::int64_t> idx(static_cast<std::size_t>(n_points));
    for (std::int64_t i = 0; i < n_points; ++i) idx[static_cast<std::size_t>(i)] = i + 1;
    return alpha_multiples(alpha, n_points, idx.data(),
                           "kronecker(d=" + std::to_string(alpha.dim()) + ",n=" +
                               std::to_string(n_points) + ")");
}

PointSet sequence_alpha_points(const IntegerSequence& seq, const AlphaVector& alpha,
                               std::int64_t n_points) {
    if (n_points < 0) throw std::invalid_argument("point count must be non-negative");
    if (seq.size() < n_points) {
        throw std::invalid_argument("integer sequence '" + seq.label + "' has " +
                                    std::to_string(seq.size()) + " terms, need " +
                                    std::to_string(n_points));
    }
    seq.validate();
    return alpha_multiples(alpha, n_points, seq.terms.data(),
                           "an_alpha(" + seq.label + ",n=" + std::to_string(n_points) + ")");
}

PointSet polynomial_alpha_points(const std::vector<std::int64_t>& coeffs,
                                 const AlphaVector& alpha, std::int64_t n_points) {
    if (coeffs.size() < 3) {
        throw std::invalid_argument("polynomial must have degree >= 2");
    }
    if (coeffs.back() == 0) {
        throw std::invalid_argument("polynomial leading coefficient must be nonzero");
    }
    if (n_points < 0) throw std::invalid_argument("point count must be non-negative");

    std::vector<std::int64_t> values(static_cast<std::size_t>(n_points));
    for (std::int64_t n = 1; n <= n_points; ++n) {
        __int128 acc = 0;
        for (std::size_t j = coeffs.size(); j-- > 0;) {
            acc = acc * n + coeffs[j];
            if (acc > std::numeric_limits<std::int64_t>::max() ||
                acc < std::numeric_limits<std::int64_t>::min()) {
                throw std::range_error("polynomial value overflows 64-bit range at n = " +
                                       std::to_string(n));
            }
        }
        values[static_cast<std::size_t>(n - 1)] = static_cast<std::int64_t>(acc);
        if (n > 1 && values[static_cast<std::size_t>(n - 1)] <= values[static_cast<std::size_t>(n - 2)]) {
            throw std::invalid_argument("polynomial is not strictly increasing at n = " +
                                        std::to_string(n));
        }
    }
    return alpha_multiples(alpha, n_points, values.data(),
                           "poly(deg=" + std::to_string(coeffs.size() - 1) + ",n=" +
                               std::to_string(n_points) + ")");
}

PointSet halton_points(int dim, std::int64_t n_points) {
    if (dim < 1) throw std::invalid_argument("dimension must be >= 1");
    if (n_points < 0) throw std::invalid_argument("point count must be non-negative");
    const std::vector<std::int64_t> bases = first_primes(dim);
    PointSet out(dim, "halton(d=" + std::to_string(dim) + ",n=" + std::to_string(n_points) + ")");
    out.reserve(n_points);
    std::vector<double> pt(static_cast<std::size_t>(dim));
    for (std::int64_t n = 1; n <= n_points; ++n) {
        for (int k = 0; k < dim; ++k) {
            const std::int64_t base = bases[static_cast<std::size_t>(k)];
            double inv = 0.0, scale = 1.0;
            for (std::int64_t i = n; i > 0; i /= base) {
                scale /= static_cast<double>(base);
                inv += scale * static_cast<double>(i % base);
            }
            pt[static_cast<std::size_t>(k)] = inv;
        }
        out.append(pt);
    }
    return out;
}

AlphaVector random_alpha(int dim, std::uint64_t seed) {
    if (dim < 1) throw std::invalid_argument("dimension must be >= 1");
    std::mt19937_64 eng(seed);
    AlphaVector a;
    a.alphas.resize(static_cast<std::size_t>(dim));
    for (auto& x : a.alphas) x = uniform_double(eng());
    return a;
}

} // namespace paircorr
