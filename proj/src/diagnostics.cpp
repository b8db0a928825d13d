#include "paircorr/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "paircorr/io.hpp"
#include "paircorr/torus.hpp"

namespace paircorr {

namespace {

void check_lambda(double lambda) {
    if (!(lambda > 0.0 && lambda < 1.0)) {
        throw std::invalid_argument("lambda must lie strictly inside (0,1)");
    }
}

// Minimal integer a >= 1 with ((1/(a*theta))^(2/3) + 1)^3 * theta^2 <
// (1 + theta^2) / 2. Exists for every theta in (0,1) because the left
// side falls to theta^2 as a grows; the guard catches theta pushed so
// close to 1 that the factor explodes.
std::int64_t min_amplification(double theta) {
    constexpr std::int64_t kGuard = 1000000;
    const double target = 0.5 * (1.0 + theta * theta);
    for (std::int64_t a = 1; a <= kGuard; ++a) {
        const double u = std::pow(1.0 / (static_cast<double>(a) * theta), 2.0 / 3.0);
        const double lhs = std::pow(u + 1.0, 3.0) * theta * theta;
        if (lhs < target) return a;
    }
    throw std::runtime_error("no amplification factor below 1e6; theta too close to 1");
}

} // namespace

double expected_pair_correlation(std::int64_t n, double s, int dim) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    if (dim < 1) throw std::invalid_argument("dim must be >= 1");
    if (!(s >= 0.0)) throw std::invalid_argument("s must be >= 0");
    return (static_cast<double>(n - 1) / static_cast<double>(n)) * poisson_reference(s, dim);
}

double chebyshev_deviation_bound(std::int64_t n, double s, int dim, double eps, double c) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    if (dim < 1) throw std::invalid_argument("dim must be >= 1");
    if (!(s >= 0.0)) throw std::invalid_argument("s must be >= 0");
    if (!(eps > 0.0)) throw std::invalid_argument("eps must be > 0");
    if (!(c > 0.0)) throw std::invalid_argument("calibration constant must be > 0");
    const double spread = std::max(std::pow(s, dim), std::pow(s, 2 * dim - 1));
    return c * spread / (eps * eps * static_cast<double>(n));
}

MomentEstimate monte_carlo_moments(int dim, std::int64_t n, double s, int trials,
                                   std::uint64_t seed) {
    if (trials < 2) throw std::invalid_argument("need at least 2 trials for a variance");
    const SGrid grid = SGrid::of({s});
    std::vector<double> f(static_cast<std::size_t>(trials), 0.0);
#pragma omp parallel for schedule(dynamic)
    for (int t = 0; t < trials; ++t) {
        const PointSet pts = uniform_points(dim, n, mix_seed(seed, static_cast<std::uint64_t>(t)));
        f[static_cast<std::size_t>(t)] = pair_correlation_cell_list(pts, grid).f_values[0];
    }
    MomentEstimate est;
    est.trials = trials;
    double sum = 0.0;
    for (double v : f) sum += v;
    est.mean = sum / trials;
    double ss = 0.0;
    for (double v : f) ss += (v - est.mean) * (v - est.mean);
    est.variance = ss / (trials - 1);
    return est;
}

double equidistribution_defect_bound(double eps, double lambda, std::int64_t s) {
    check_lambda(lambda);
    if (!(eps >= 0.0 && eps <= lambda)) {
        throw std::invalid_argument("eps must lie in [0, lambda]");
    }
    if (s < 1) throw std::invalid_argument("s must be a positive integer");
    const double sd = static_cast<double>(s);
    const double lo = lambda * (1.0 - eps / lambda) * (1.0 - eps / lambda);
    const double hi = (1.0 - lambda) * (1.0 + eps / (1.0 - lambda)) * (1.0 + eps / (1.0 - lambda));
    return (4.0 * sd * (sd - 1.0) + 1.0) * (lo + hi) - 1.0;
}

double equidistribution_defect_leading_coeff(double eps, double lambda) {
    check_lambda(lambda);
    if (!(eps >= 0.0)) throw std::invalid_argument("eps must be >= 0");
    const double lo = lambda * (1.0 - eps / lambda) * (1.0 - eps / lambda);
    const double hi = (1.0 - lambda) * (1.0 + eps / (1.0 - lambda)) * (1.0 + eps / (1.0 - lambda));
    return 4.0 * (lo + hi) - 4.0;
}

std::int64_t min_contradicting_s(double eps, double lambda) {
    check_lambda(lambda);
    if (!(eps > 0.0 && eps <= lambda)) {
        throw std::invalid_argument("eps must lie in (0, lambda]");
    }
    // R(s) - (2s)^2 = 4e s^2 - 4(1+e) s + e with e = eps^2/(lambda(1-lambda)):
    // an upward parabola whose smaller root is below 1, so the answer is the
    // first integer past the larger root. Jumping there keeps this O(1) even
    // when the crossing is far out.
    const double e = eps * eps / (lambda * (1.0 - lambda));
    const double root = ((1.0 + e) + std::sqrt(1.0 + 2.0 * e)) / (2.0 * e);
    if (root > 4.0e15) {
        throw std::range_error("crossing point too large to certify in double precision");
    }
    std::int64_t s = std::max<std::int64_t>(1, static_cast<std::int64_t>(root) - 2);
    while (!(equidistribution_defect_bound(eps, lambda, s) > poisson_reference(static_cast<double>(s), 2) /* (2s)^2 */)) {
        ++s;
    }
    return s;
}

std::vector<ApproxHit> simultaneous_approx_search(const AlphaVector& alpha,
                                                  std::int64_t q_max, double rho) {
    if (alpha.dim() != 2) throw std::invalid_argument("search needs exactly two alpha components");
    if (q_max < 1) throw std::invalid_argument("q_max must be >= 1");
    if (!(rho > 0.0 && rho <= 1.0)) throw std::invalid_argument("rho must lie in (0, 1]");
    std::vector<ApproxHit> hits;
    for (std::int64_t q = 1; q <= q_max; ++q) {
        double worst = 0.0;
        for (double a : alpha.alphas) {
            const double f = frac_mul(q, a);
            const double d = std::min(f, 1.0 - f);
            if (d > worst) worst = d;
        }
        const double theta = std::sqrt(static_cast<double>(q)) * worst;
        if (theta > 0.0 && theta < rho) hits.push_back({q, theta});
    }
    return hits;
}

KroneckerWitness build_kronecker_witness(const AlphaVector& alpha, std::int64_t q,
                                         double theta, double rho) {
    if (alpha.dim() != 2) throw std::invalid_argument("witness needs exactly two alpha components");
    if (q < 1) throw std::invalid_argument("q must be >= 1");
    if (!(theta > 0.0 && theta < 1.0)) {
        throw std::invalid_argument("theta must lie in (0,1); pick q from the search");
    }
    if (!(rho > 0.0 && rho <= 1.0)) throw std::invalid_argument("rho must lie in (0, 1]");

    KroneckerWitness w;
    w.q = q;
    w.theta = theta;
    w.a = min_amplification(theta);
    w.b = 2.0 / (1.0 + theta * theta);
    const double u = std::pow(1.0 / (static_cast<double>(w.a) * theta), 2.0 / 3.0);
    w.l = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(u)));

    const __int128 bulk = static_cast<__int128>(w.a) * w.a * w.l * q;
    if (bulk > (static_cast<__int128>(1) << 62)) {
        throw std::range_error("witness length overflows the 64-bit range");
    }
    const double ld = static_cast<double>(w.l);
    w.nu_tilde = static_cast<double>(static_cast<std::int64_t>(bulk)) -
                 static_cast<double>(q) / (ld * ld * theta * theta);
    const auto nu = static_cast<std::int64_t>(std::floor(w.nu_tilde));
    w.n = static_cast<std::int64_t>(bulk) - nu;
    w.lag = q * w.l;
    w.lag_distance = ld * theta / std::sqrt(static_cast<double>(q));
    w.sandwich_lo = 1.0 / std::sqrt(static_cast<double>(w.n));
    w.sandwich_hi = 3.0 / std::sqrt(static_cast<double>(w.n));
    w.sandwich_ok = w.lag_distance >= w.sandwich_lo * (1.0 - 1e-12) &&
                    w.lag_distance <= w.sandwich_hi * (1.0 + 1e-12);

    // gamma > 0 needs rho < 1; at the default rho = 1 the bound degenerates
    // to 0 and the amplification search at theta = rho would not terminate.
    if (rho < 1.0) {
        const double a_rho = static_cast<double>(min_amplification(rho));
        w.gamma_bound = (2.0 / (1.0 + rho * rho) - 1.0) / (a_rho * a_rho);
    } else {
        w.gamma_bound = 0.0;
    }

    constexpr std::int64_t kRecountCap = 200000000;
    if (w.n > kRecountCap) {
        throw std::range_error("witness length " + std::to_string(w.n) +
                               " too large to verify pairwise");
    }
    const double a1 = alpha.alphas[0];
    const double a2 = alpha.alphas[1];
    std::int64_t matched = 0;
    const std::int64_t last = w.n - w.lag;
#pragma omp parallel for reduction(+ : matched) schedule(static)
    for (std::int64_t k = 1; k <= last; ++k) {
        const double d1 = coord_torus_dist(frac_mul(k, a1), frac_mul(k + w.lag, a1));
        const double d2 = coord_torus_dist(frac_mul(k, a2), frac_mul(k + w.lag, a2));
        const double dist = d1 > d2 ? d1 : d2;
        if (std::abs(dist - w.lag_distance) <= 1e-9) ++matched;
    }
    w.pair_count_at_lag = matched;
    return w;
}

double star_discrepancy_estimate(const PointSet& pts, int grid_k) {
    const std::int64_t n = pts.size();
    if (n < 1) throw std::invalid_argument("discrepancy needs a non-empty point set");
    const int d = pts.dim();

    if (d == 1) {
        // Exact via the sorted-points formula: the supremum over anchored
        // intervals is attained just before/after a point.
        std::vector<double> xs(pts.data());
        std::sort(xs.begin(), xs.end());
        double best = 0.0;
        for (std::int64_t i = 1; i <= n; ++i) {
            const double x = xs[static_cast<std::size_t>(i - 1)];
            const double up = static_cast<double>(i) / static_cast<double>(n) - x;
            const double down = x - static_cast<double>(i - 1) / static_cast<double>(n);
            best = std::max({best, up, down});
        }
        return best;
    }

    if (grid_k < 1) throw std::invalid_argument("grid_k must be >= 1");
    double cells_d = 1.0;
    for (int k = 0; k < d; ++k) cells_d *= static_cast<double>(grid_k);
    if (cells_d > static_cast<double>(std::int64_t{1} << 24)) {
        throw std::range_error("grid_k^dim exceeds the cell budget; lower grid_k");
    }
    const auto total = static_cast<std::int64_t>(cells_d);

    std::vector<std::int64_t> counts(static_cast<std::size_t>(total), 0);
    const double* x = pts.raw();
    for (std::int64_t i = 0; i < n; ++i) {
        std::int64_t idx = 0;
        for (int k = d - 1; k >= 0; --k) {
            auto c = static_cast<std::int64_t>(x[i * d + k] * grid_k);
            if (c >= grid_k) c = grid_k - 1;
            idx = idx * grid_k + c;
        }
        ++counts[static_cast<std::size_t>(idx)];
    }

    // In-place prefix sums along each axis turn cell counts into counts of
    // the anchored boxes [0, (c+1)/K) per corner cell c.
    std::int64_t stride = 1;
    for (int k = 0; k < d; ++k) {
        for (std::int64_t idx = 0; idx < total; ++idx) {
            if ((idx / stride) % grid_k > 0) {
                counts[static_cast<std::size_t>(idx)] += counts[static_cast<std::size_t>(idx - stride)];
            }
        }
        stride *= grid_k;
    }

    double best = 0.0;
    for (std::int64_t idx = 0; idx < total; ++idx) {
        double vol = 1.0;
        std::int64_t rem = idx;
        for (int k = 0; k < d; ++k) {
            vol *= static_cast<double>(rem % grid_k + 1) / static_cast<double>(grid_k);
            rem /= grid_k;
        }
        const double frac_in =
            static_cast<double>(counts[static_cast<std::size_t>(idx)]) / static_cast<double>(n);
        best = std::max(best, std::abs(frac_in - vol));
    }
    return best;
}

ConvergenceSweep convergence_sweep(const std::function<PointSet(std::int64_t)>& generate,
                                   const SGrid& grid,
                                   const std::vector<std::int64_t>& n_values) {
    if (n_values.empty()) throw std::invalid_argument("n_values must not be empty");
    for (std::size_t i = 0; i < n_values.size(); ++i) {
        if (n_values[i] < 1 || (i > 0 && n_values[i] <= n_values[i - 1])) {
            throw std::invalid_argument("n_values must be positive and strictly increasing");
        }
    }
    const std::int64_t n_max = n_values.back();
    const PointSet full = generate(n_max);
    if (full.size() < n_max) {
        throw std::invalid_argument("generator produced " + std::to_string(full.size()) +
                                    " points, need " + std::to_string(n_max));
    }

    ConvergenceSweep sweep;
    sweep.s_values = grid.values;
    sweep.n_values = n_values;
    sweep.dim = full.dim();
    sweep.label = full.label();
    for (std::int64_t n : n_values) {
        const PairCorrResult r = pair_correlation_cell_list(full.prefix(n), grid);
        sweep.f.push_back(r.f_values);
        std::vector<double> dev(r.f_values.size());
        for (std::size_t i = 0; i < dev.size(); ++i) {
            dev[i] = std::abs(r.f_values[i] - r.poisson_ref[i]);
        }
        sweep.abs_dev.push_back(std::move(dev));
    }
    return sweep;
}

std::vector<std::int64_t> subsequence_schedule(std::int64_t n_min, std::int64_t n_max,
                                               double gamma) {
    if (n_min < 1 || n_max < n_min) throw std::invalid_argument("need 1 <= n_min <= n_max");
    if (!(gamma >= 0.0)) throw std::invalid_argument("gamma must be >= 0");
    std::vector<std::int64_t> ns;
    for (std::int64_t m = 1;;) {
        const double nd = std::pow(static_cast<double>(m), 1.0 + gamma);
        if (nd > static_cast<double>(n_max) + 0.5) break;
        const auto n = static_cast<std::int64_t>(std::llround(nd));
        if (n >= n_min && n <= n_max && (ns.empty() || n > ns.back())) ns.push_back(n);
        m = std::max(m + 1, static_cast<std::int64_t>(std::llround(static_cast<double>(m) * 1.25)));
    }
    if (ns.empty() || ns.back() != n_max) ns.push_back(n_max);
    return ns;
}

std::string to_csv(const ConvergenceSweep& sweep, const std::string& comment) {
    std::ostringstream out;
    if (!comment.empty()) {
        std::istringstream lines(comment);
        std::string h;
        while (std::getline(lines, h)) out << "# " << h << "\n";
    }
    out << "N,s,F,poisson_ref,abs_dev\n";
    for (std::size_t r = 0; r < sweep.n_values.size(); ++r) {
        for (std::size_t i = 0; i < sweep.s_values.size(); ++i) {
            out << sweep.n_values[r] << "," << format_double(sweep.s_values[i]) << ","
                << format_double(sweep.f[r][i]) << ","
                << format_double(poisson_reference(sweep.s_values[i], sweep.dim)) << ","
                << format_double(sweep.abs_dev[r][i]) << "\n";
        }
    }
    return out.str();
}

} // namespace paircorr
