#include "doctest.h"

#include <stdexcept>

#include <cmath>
#include <set>

#include "paircorr/generators.hpp"
#include "paircorr/torus.hpp"

using namespace paircorr;

TEST_CASE("uniform generator is deterministic and in range") {
    const PointSet a = uniform_points(3, 500, 12345);
    const PointSet b = uniform_points(3, 500, 12345);
    const PointSet c = uniform_points(3, 500, 54321);
    CHECK(a.data() == b.data()); // bit-identical for equal seeds
    CHECK(a.data() != c.data());
    for (double x : a.data()) {
        CHECK(x >= 0.0);
        CHECK(x < 1.0);
    }
    // Longer runs extend shorter ones: the engine fills point-major.
    const PointSet longer = uniform_points(3, 600, 12345);
    CHECK(std::equal(a.data().begin(), a.data().end(), longer.data().begin()));
}

TEST_CASE("kronecker sequence matches a long-double oracle") {
    const double alpha = frac(std::sqrt(2.0));
    const AlphaVector av{{alpha}};
    const PointSet pts = kronecker_points(av, 1000);
    REQUIRE(pts.size() == 1000);
    // Spot values for n = 1..3.
    CHECK(pts.point(0)[0] == doctest::Approx(0.414213562373095).epsilon(1e-12));
    CHECK(pts.point(1)[0] == doctest::Approx(0.828427124746190).epsilon(1e-12));
    CHECK(pts.point(2)[0] == doctest::Approx(0.242640687119285).epsilon(1e-12));
    for (std::int64_t n = 1; n <= 1000; ++n) {
        const long double exact = static_cast<long double>(n) * static_cast<long double>(alpha);
        const auto expect = static_cast<double>(exact - std::floor(exact));
        CHECK(pts.point(n - 1)[0] == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("kronecker with alpha = 0.5 alternates exactly") {
    const PointSet pts = kronecker_points(AlphaVector{{0.5}}, 4);
    CHECK(pts.point(0)[0] == 0.5);
    CHECK(pts.point(1)[0] == 0.0);
    CHECK(pts.point(2)[0] == 0.5);
    CHECK(pts.point(3)[0] == 0.0);
}

TEST_CASE("an_alpha over the identity family reproduces kronecker bitwise") {
    const AlphaVector av{{frac(std::sqrt(2.0)), frac(std::sqrt(3.0))}};
    const IntegerSequence ident = make_integer_sequence(SequenceFamily::identity, 200);
    const PointSet via_seq = sequence_alpha_points(ident, av, 200);
    const PointSet direct = kronecker_points(av, 200);
    CHECK(via_seq.data() == direct.data());
}

TEST_CASE("an_alpha reports a shortfall by name") {
    const IntegerSequence seq = make_integer_sequence(SequenceFamily::squares, 5);
    CHECK_THROWS_WITH_AS(sequence_alpha_points(seq, AlphaVector{{0.3}}, 10),
                         "integer sequence 'squares' has 5 terms, need 10",
                         std::invalid_argument);
}

TEST_CASE("integer families produce the documented openings") {
    CHECK(make_integer_sequence(SequenceFamily::identity, 5).terms ==
          std::vector<std::int64_t>{1, 2, 3, 4, 5});
    CHECK(make_integer_sequence(SequenceFamily::squares, 5).terms ==
          std::vector<std::int64_t>{1, 4, 9, 16, 25});
    CHECK(make_integer_sequence(SequenceFamily::cubes, 4).terms ==
          std::vector<std::int64_t>{1, 8, 27, 64});
    CHECK(make_integer_sequence(SequenceFamily::primes, 8).terms ==
          std::vector<std::int64_t>{2, 3, 5, 7, 11, 13, 17, 19});
    CHECK(make_integer_sequence(SequenceFamily::lacunary_base2, 4).terms ==
          std::vector<std::int64_t>{2, 4, 8, 16});
}

TEST_CASE("prime family scales to the sieve bound") {
    const IntegerSequence primes = make_integer_sequence(SequenceFamily::primes, 10000);
    CHECK(primes.terms.size() == 10000);
    CHECK(primes.terms[9999] == 104729); // the 10000th prime
    primes.validate();
}

TEST_CASE("lacunary family refuses 64-bit overflow") {
    CHECK(make_integer_sequence(SequenceFamily::lacunary_base2, 62).terms.back() ==
          (std::int64_t{1} << 62));
    CHECK_THROWS_AS(make_integer_sequence(SequenceFamily::lacunary_base2, 63), std::range_error);
}

TEST_CASE("polynomial generator validates shape and matches the squares family") {
    const AlphaVector av{{frac(std::sqrt(5.0))}};
    // f(n) = n^2 given by ascending coefficients.
    const PointSet poly = polynomial_alpha_points({0, 0, 1}, av, 50);
    const PointSet squares =
        sequence_alpha_points(make_integer_sequence(SequenceFamily::squares, 50), av, 50);
    CHECK(poly.data() == squares.data());

    CHECK_THROWS_AS(polynomial_alpha_points({1, 2}, av, 10), std::invalid_argument); // degree 1
    CHECK_THROWS_AS(polynomial_alpha_points({0, 1, 0}, av, 10), std::invalid_argument); // zero lead
    // f(n) = 100 - 101 n + n^3 dips before it grows.
    CHECK_THROWS_AS(polynomial_alpha_points({100, -101, 0, 1}, av, 10), std::invalid_argument);
}

TEST_CASE("halton opens with the classic van der Corput values") {
    const PointSet one = halton_points(1, 4);
    CHECK(one.point(0)[0] == 0.5);
    CHECK(one.point(1)[0] == 0.25);
    CHECK(one.point(2)[0] == 0.75);
    CHECK(one.point(3)[0] == 0.125);

    const PointSet two = halton_points(2, 2);
    CHECK(two.point(0)[0] == 0.5);
    CHECK(two.point(0)[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(two.point(1)[0] == 0.25);
    CHECK(two.point(1)[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("halton coordinates are distinct and in range") {
    const PointSet pts = halton_points(2, 2000);
    std::set<double> seen;
    for (std::int64_t i = 0; i < pts.size(); ++i) {
        CHECK(pts.point(i)[0] >= 0.0);
        CHECK(pts.point(i)[0] < 1.0);
        seen.insert(pts.point(i)[0]);
    }
    CHECK(seen.size() == 2000); // base-2 radical inverse never repeats
}

TEST_CASE("mix_seed decorrelates trial seeds") {
    std::set<std::uint64_t> seen;
    for (std::uint64_t t = 0; t < 1000; ++t) seen.insert(mix_seed(99, t));
    CHECK(seen.size() == 1000);
    CHECK(mix_seed(99, 0) == mix_seed(99, 0));
    CHECK(mix_seed(99, 0) != mix_seed(100, 0));
}
