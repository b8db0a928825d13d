#include "doctest.h"

#include <stdexcept>

#include <algorithm>
#include <cmath>
#include <random>

#include "paircorr/diagnostics.hpp"
#include "paircorr/generators.hpp"
#include "paircorr/torus.hpp"

using namespace paircorr;

TEST_CASE("expected value of the statistic under uniform sampling") {
    CHECK(expected_pair_correlation(10, 0.5, 2) == doctest::Approx(0.9).epsilon(1e-15));
    CHECK(expected_pair_correlation(2, 1.0, 1) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(expected_pair_correlation(1, 3.0, 4) == 0.0);
    CHECK_THROWS_AS(expected_pair_correlation(0, 0.5, 1), std::invalid_argument);
}

TEST_CASE("chebyshev bound arithmetic") {
    // max(s^d, s^(2d-1)) picks s^d below 1 and s^(2d-1) above it.
    CHECK(chebyshev_deviation_bound(100, 2.0, 2, 0.5, 1.0) ==
          doctest::Approx(8.0 / 25.0).epsilon(1e-15));
    CHECK(chebyshev_deviation_bound(100, 0.5, 2, 0.5, 1.0) ==
          doctest::Approx(0.25 / 25.0).epsilon(1e-15));
    CHECK(chebyshev_deviation_bound(1000, 1.0, 3, 0.1, 2.0) ==
          doctest::Approx(2.0 / 10.0).epsilon(1e-12));
    CHECK_THROWS_AS(chebyshev_deviation_bound(100, 0.5, 2, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(chebyshev_deviation_bound(100, 0.5, 2, 0.1, -1.0), std::invalid_argument);
}

TEST_CASE("monte carlo moments are deterministic and centred") {
    const MomentEstimate a = monte_carlo_moments(1, 64, 0.5, 60, 999);
    const MomentEstimate b = monte_carlo_moments(1, 64, 0.5, 60, 999);
    CHECK(a.mean == b.mean);
    CHECK(a.variance == b.variance);
    CHECK(a.variance > 0.0);
    // 60 trials: the mean sits within ~4 standard errors of (N-1)/N * 2s.
    const double se = std::sqrt(a.variance / 60.0);
    CHECK(std::abs(a.mean - expected_pair_correlation(64, 0.5, 1)) <= 4.0 * se);
    CHECK_THROWS_AS(monte_carlo_moments(1, 64, 0.5, 1, 0), std::invalid_argument);
}

TEST_CASE("defect bound frozen values") {
    // eps -> 0 degenerates to the Poissonian parabola sampled at integers.
    CHECK(equidistribution_defect_bound(0.0, 0.5, 3) == doctest::Approx(24.0).epsilon(1e-15));
    CHECK(equidistribution_defect_bound(0.1, 0.5, 1) == doctest::Approx(0.04).epsilon(1e-12));
    CHECK(equidistribution_defect_bound(0.3, 0.7, 1) ==
          doctest::Approx(3.0 / 7.0).epsilon(1e-12));
    CHECK_THROWS_AS(equidistribution_defect_bound(0.1, 1.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(equidistribution_defect_bound(0.6, 0.5, 1), std::invalid_argument);
    CHECK_THROWS_AS(equidistribution_defect_bound(0.1, 0.5, 0), std::invalid_argument);
}

TEST_CASE("leading coefficient identity") {
    CHECK(equidistribution_defect_leading_coeff(0.1, 0.5) == doctest::Approx(0.16).epsilon(1e-12));
    CHECK(equidistribution_defect_leading_coeff(0.0, 0.3) == doctest::Approx(0.0).epsilon(1e-15));
    std::mt19937_64 eng(808);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int rep = 0; rep < 2000; ++rep) {
        const double lambda = 0.05 + 0.9 * unit(eng);
        const double eps = unit(eng) * std::min(lambda, 1.0 - lambda) * 0.999;
        const double got = equidistribution_defect_leading_coeff(eps, lambda);
        const double expect = 4.0 * eps * eps / (lambda * (1.0 - lambda));
        CHECK(std::abs(got - expect) <= 1e-12 * std::max(1.0, expect));
    }
}

TEST_CASE("first contradicting scale is a genuine first crossing") {
    std::mt19937_64 eng(809);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int rep = 0; rep < 200; ++rep) {
        const double lambda = 0.1 + 0.8 * unit(eng);
        const double eps = (0.05 + 0.9 * unit(eng)) * std::min(lambda, 1.0 - lambda);
        const std::int64_t s = min_contradicting_s(eps, lambda);
        REQUIRE(s >= 1);
        CHECK(equidistribution_defect_bound(eps, lambda, s) >
              poisson_reference(static_cast<double>(s), 2));
        if (s > 1) {
            CHECK(equidistribution_defect_bound(eps, lambda, s - 1) <=
                  poisson_reference(static_cast<double>(s - 1), 2));
        }
    }
}

TEST_CASE("first contradicting scale matches a direct scan") {
    const auto scan = [](double eps, double lambda) {
        for (std::int64_t s = 1;; ++s) {
            if (equidistribution_defect_bound(eps, lambda, s) >
                poisson_reference(static_cast<double>(s), 2)) {
                return s;
            }
        }
    };
    CHECK(min_contradicting_s(0.2, 0.5) == scan(0.2, 0.5));
    CHECK(min_contradicting_s(0.05, 0.5) == scan(0.05, 0.5));
    CHECK(min_contradicting_s(0.01, 0.9) == scan(0.01, 0.9));
    CHECK(min_contradicting_s(0.49, 0.5) == scan(0.49, 0.5));
}

TEST_CASE("first contradicting scale never drops as eps shrinks") {
    for (double lambda : {0.3, 0.5, 0.8}) {
        double eps = std::min(lambda, 1.0 - lambda) * 0.9;
        std::int64_t prev = min_contradicting_s(eps, lambda);
        for (int halvings = 0; halvings < 6; ++halvings) {
            eps /= 2.0;
            const std::int64_t next = min_contradicting_s(eps, lambda);
            CHECK(next >= prev);
            prev = next;
        }
    }
    CHECK_THROWS_AS(min_contradicting_s(0.0, 0.5), std::invalid_argument);
}

TEST_CASE("simultaneous approximation search matches a long-double oracle") {
    const AlphaVector alpha{{std::sqrt(2.0), std::sqrt(3.0)}};
    const auto hits = simultaneous_approx_search(alpha, 2000, 1.0);
    REQUIRE(!hits.empty());

    // Independent recomputation in extended precision.
    const auto oracle_theta = [&](std::int64_t q) {
        long double worst = 0.0L;
        for (double a : alpha.alphas) {
            const long double prod = static_cast<long double>(q) * static_cast<long double>(a);
            const long double f = prod - std::floor(prod);
            const long double d = std::min(f, 1.0L - f);
            if (d > worst) worst = d;
        }
        return static_cast<double>(std::sqrt(static_cast<long double>(q)) * worst);
    };
    for (const auto& h : hits) {
        CHECK(h.theta > 0.0);
        CHECK(h.theta < 1.0);
        CHECK(h.theta == doctest::Approx(oracle_theta(h.q)).epsilon(1e-9));
    }
    // And no qualifying q was skipped.
    std::size_t idx = 0;
    for (std::int64_t q = 1; q <= 2000; ++q) {
        const double t = oracle_theta(q);
        const bool qualifies = t > 0.0 && t < 1.0;
        const bool listed = idx < hits.size() && hits[idx].q == q;
        if (listed) ++idx;
        CHECK(listed == qualifies);
    }
    CHECK(idx == hits.size());

    CHECK_THROWS_AS(simultaneous_approx_search(AlphaVector{{0.5}}, 100, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(simultaneous_approx_search(alpha, 0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(simultaneous_approx_search(alpha, 100, 1.5), std::invalid_argument);
}

TEST_CASE("witness construction satisfies its inequalities") {
    const AlphaVector alpha{{std::sqrt(2.0), std::sqrt(3.0)}};
    const auto hits = simultaneous_approx_search(alpha, 3000, 1.0);
    REQUIRE(!hits.empty());
    const auto best = *std::min_element(
        hits.begin(), hits.end(), [](const auto& a, const auto& b) { return a.theta < b.theta; });

    const KroneckerWitness w = build_kronecker_witness(alpha, best.q, best.theta, 1.0);
    CHECK(w.b > 1.0);
    CHECK(w.a >= 1);
    CHECK(w.l >= 1);
    CHECK(w.lag == w.q * w.l);
    CHECK(w.n >= static_cast<std::int64_t>(w.b * static_cast<double>(w.l * w.q)));
    CHECK(w.sandwich_ok);
    CHECK(w.sandwich_lo <= w.lag_distance * (1.0 + 1e-12));
    CHECK(w.lag_distance <= w.sandwich_hi * (1.0 + 1e-12));
    // Every lag pair shares the common distance.
    CHECK(w.pair_count_at_lag == w.n - w.lag);
    CHECK(w.gamma_bound == 0.0); // rho = 1 degenerates the bound

    const KroneckerWitness tight = build_kronecker_witness(alpha, best.q, best.theta, 0.9);
    CHECK(tight.gamma_bound > 0.0);
    CHECK(static_cast<double>(tight.n - tight.lag) >=
          tight.gamma_bound * static_cast<double>(tight.n));

    CHECK_THROWS_AS(build_kronecker_witness(alpha, best.q, 1.2, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(build_kronecker_witness(alpha, 0, 0.5, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(build_kronecker_witness(AlphaVector{{0.5}}, 3, 0.5, 1.0),
                    std::invalid_argument);
}

TEST_CASE("star discrepancy is exact in one dimension") {
    PointSet solo(1);
    const double zero[] = {0.0};
    solo.append(zero);
    CHECK(star_discrepancy_estimate(solo, 64) == 1.0);

    PointSet pair(1);
    const double a[] = {0.25}, b[] = {0.75};
    pair.append(a);
    pair.append(b);
    CHECK(star_discrepancy_estimate(pair, 64) == doctest::Approx(0.25).epsilon(1e-15));

    // Perfectly centred lattice reaches the 1/(2N) floor.
    PointSet lattice(1);
    for (int i = 0; i < 10; ++i) {
        const double x[] = {(2.0 * i + 1.0) / 20.0};
        lattice.append(x);
    }
    CHECK(star_discrepancy_estimate(lattice, 64) == doctest::Approx(0.05).epsilon(1e-12));
}

TEST_CASE("grid discrepancy estimate refines monotonically") {
    const PointSet pts = uniform_points(2, 3000, 77);
    const double at_k = star_discrepancy_estimate(pts, 32);
    const double at_2k = star_discrepancy_estimate(pts, 64);
    CHECK(at_k <= at_2k);                 // finer grid sees at least as much
    CHECK(at_2k <= at_k + 2.0 / 32.0);    // and at most d/K more
    CHECK(at_k > 0.0);
    CHECK(at_k < 0.1);
}

TEST_CASE("halton beats uniform on discrepancy") {
    const double halton = star_discrepancy_estimate(halton_points(2, 4000), 64);
    const double uniform = star_discrepancy_estimate(uniform_points(2, 4000, 3), 64);
    CHECK(halton < 0.01);
    CHECK(halton < uniform);
}

TEST_CASE("discrepancy guards") {
    CHECK_THROWS_AS(star_discrepancy_estimate(PointSet(2), 64), std::invalid_argument);
    CHECK_THROWS_AS(star_discrepancy_estimate(uniform_points(2, 10, 0), 0),
                    std::invalid_argument);
    CHECK_THROWS_AS(star_discrepancy_estimate(uniform_points(5, 10, 0), 64), std::range_error);
}

TEST_CASE("subsequence schedule is increasing and anchored") {
    const auto ns = subsequence_schedule(10, 100000, 0.1);
    REQUIRE(!ns.empty());
    CHECK(ns.front() >= 10);
    CHECK(ns.back() == 100000);
    for (std::size_t i = 1; i < ns.size(); ++i) CHECK(ns[i] > ns[i - 1]);
    CHECK(ns.size() < 80); // geometric-like spacing, not one row per integer
    CHECK_THROWS_AS(subsequence_schedule(0, 10, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(subsequence_schedule(10, 5, 0.1), std::invalid_argument);
}

TEST_CASE("convergence sweep equals direct evaluation on prefixes") {
    const SGrid grid = SGrid::of({0.5, 1.0});
    const std::vector<std::int64_t> ns = {50, 200, 1000};
    const auto gen = [](std::int64_t n) { return uniform_points(2, n, 4242); };
    const ConvergenceSweep sweep = convergence_sweep(gen, grid, ns);

    REQUIRE(sweep.n_values == ns);
    REQUIRE(sweep.f.size() == ns.size());
    const PointSet full = gen(1000);
    for (std::size_t r = 0; r < ns.size(); ++r) {
        const PairCorrResult direct =
            pair_correlation_brute_force(full.prefix(ns[r]), grid);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            CHECK(sweep.f[r][i] == direct.f_values[i]);
            CHECK(sweep.abs_dev[r][i] ==
                  doctest::Approx(std::abs(direct.f_values[i] - direct.poisson_ref[i]))
                      .epsilon(1e-15));
        }
    }

    CHECK_THROWS_AS(convergence_sweep(gen, grid, {}), std::invalid_argument);
    CHECK_THROWS_AS(convergence_sweep(gen, grid, {100, 100}), std::invalid_argument);
    const auto short_gen = [](std::int64_t) { return uniform_points(1, 5, 0); };
    CHECK_THROWS_AS(convergence_sweep(short_gen, grid, {10}), std::invalid_argument);
}

TEST_CASE("sweep csv carries the documented header") {
    const SGrid grid = SGrid::of({1.0});
    const ConvergenceSweep sweep =
        convergence_sweep([](std::int64_t n) { return uniform_points(1, n, 1); }, grid, {10, 20});
    const std::string csv = to_csv(sweep, "cfg");
    CHECK(csv.rfind("# cfg\nN,s,F,poisson_ref,abs_dev\n", 0) == 0);
}
