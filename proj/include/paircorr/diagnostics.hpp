// Diagnostics around the pair correlation statistic: closed-form
// expectation and concentration bounds, Monte Carlo moment estimates,
// the quadratic lower bound for sequences with an equidistribution
// defect, simultaneous rational approximation of a direction pair and
// the lag-pair witness built from it, star discrepancy, and convergence
// sweeps over growing prefixes.
#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "paircorr/generators.hpp"
#include "paircorr/pair_correlation.hpp"
#include "paircorr/point_set.hpp"

namespace paircorr {

// Exact mean of the statistic for N i.i.d. uniform points:
// (N-1)/N * (2s)^d.
double expected_pair_correlation(std::int64_t n, double s, int dim);

// Chebyshev tail bound c * max(s^d, s^(2d-1)) / (eps^2 * N) on
// P(|F - (2s)^d| >= eps). The constant c is a caller-supplied
// calibration, not hard-coded.
double chebyshev_deviation_bound(std::int64_t n, double s, int dim, double eps, double c);

struct MomentEstimate {
    double mean = 0.0;
    double variance = 0.0; // unbiased (trials - 1 denominator)
    int trials = 0;
};

// Empirical mean/variance of the statistic over independent uniform
// samples. Trial t uses seed mix_seed(seed, t), so results are
// deterministic and independent of the parallel schedule.
MomentEstimate monte_carlo_moments(int dim, std::int64_t n, double s, int trials,
                                   std::uint64_t seed);

// Lower bound R_{eps,lambda}(s) on the statistic (d = 1, integer s) for a
// sequence whose empirical measure puts mass lambda - eps on a set of
// volume lambda: (4s(s-1) + 1) * (lambda (1 - eps/lambda)^2 +
// (1-lambda)(1 + eps/(1-lambda))^2) - 1.
double equidistribution_defect_bound(double eps, double lambda, std::int64_t s);

// Leading coefficient of R - (2s)^2 as a quadratic in s; algebraically
// equal to 4 eps^2 / (lambda (1 - lambda)), hence strictly positive.
double equidistribution_defect_leading_coeff(double eps, double lambda);

// Smallest positive integer s with R(s) > (2s)^2. Computed from the
// quadratic root and re-verified pointwise, so it is exact without
// scanning the (possibly enormous) range below the crossing.
std::int64_t min_contradicting_s(double eps, double lambda);

struct ApproxHit {
    std::int64_t q = 0;
    double theta = 0.0; // sqrt(q) * max_i dist_to_nearest_int(q * alpha_i)
};

// All q <= q_max with theta in (0, rho), for a two-component alpha.
std::vector<ApproxHit> simultaneous_approx_search(const AlphaVector& alpha,
                                                  std::int64_t q_max, double rho = 1.0);

// Lag-pair witness for the Kronecker sequence of a well-approximable
// direction pair: at length N every index pair (k, k + qL) realises the
// same sup distance L*theta/sqrt(q), which the sandwich pins between
// 1/sqrt(N) and 3/sqrt(N). A Poissonian limit cannot host ~gamma*N such
// ordered pairs at one scale, which is what the fields document.
struct KroneckerWitness {
    std::int64_t q = 0;
    double theta = 0.0;
    std::int64_t a = 0;       // minimal amplification factor
    double b = 0.0;           // 2 / (1 + theta^2), > 1
    std::int64_t l = 0;       // block length
    double nu_tilde = 0.0;    // real trim before flooring
    std::int64_t n = 0;       // witness sequence length
    std::int64_t lag = 0;     // q * l
    double lag_distance = 0.0; // l * theta / sqrt(q)
    std::int64_t pair_count_at_lag = 0; // lag pairs within 1e-9 of lag_distance
    double gamma_bound = 0.0; // (2/(1+rho^2) - 1) / A_rho^2; 0 when rho = 1
    double sandwich_lo = 0.0; // 1 / sqrt(N)
    double sandwich_hi = 0.0; // 3 / sqrt(N)
    bool sandwich_ok = false;
};

// Requires alpha.dim() == 2 and theta in (0,1) (as produced by the
// search). A sandwich violation is reported through sandwich_ok, not an
// exception.
KroneckerWitness build_kronecker_witness(const AlphaVector& alpha, std::int64_t q,
                                         double theta, double rho = 1.0);

// Star discrepancy. d = 1 returns the exact value via the sorted-points
// formula; d >= 2 returns the anchored-grid estimate with grid_k cells
// per side (exact over grid-aligned boxes, within d/grid_k of the truth).
double star_discrepancy_estimate(const PointSet& pts, int grid_k = 64);

struct ConvergenceSweep {
    std::vector<double> s_values;
    std::vector<std::int64_t> n_values;
    std::vector<std::vector<double>> f;       // [n_index][s_index]
    std::vector<std::vector<double>> abs_dev; // |F - (2s)^d|
    int dim = 0;
    std::string label;
};

// Evaluates the statistic on prefixes of one generated sequence; the
// generator is called once with the largest requested length.
ConvergenceSweep convergence_sweep(const std::function<PointSet(std::int64_t)>& generate,
                                   const SGrid& grid,
                                   const std::vector<std::int64_t>& n_values);

// Prefix lengths round(M^(1+gamma)) with M advancing geometrically
// (about 25% per step), clipped to [n_min, n_max], deduplicated.
std::vector<std::int64_t> subsequence_schedule(std::int64_t n_min, std::int64_t n_max,
                                               double gamma = 0.1);

// CSV rows "N,s,F,poisson_ref,abs_dev"; optional '#' comment lines first.
std::string to_csv(const ConvergenceSweep& sweep, const std::string& comment = "");

} // namespace paircorr
