#include "doctest.h"

#include <stdexcept>

#include <sstream>

#include "paircorr/io.hpp"

using namespace paircorr;

TEST_CASE("point set files round-trip") {
    PointSet pts(3);
    const double a[] = {0.125, 0.5, 0.9999999};
    const double b[] = {0.0, 0.3333333333333333, 0.1};
    pts.append(a);
    pts.append(b);

    std::stringstream buf;
    write_point_set(buf, pts, "written by round-trip test");
    const PointSet back = read_point_set(buf, "buffer");

    REQUIRE(back.dim() == 3);
    REQUIRE(back.size() == 2);
    for (std::int64_t i = 0; i < 2; ++i) {
        for (int k = 0; k < 3; ++k) {
            CHECK(back.point(i)[k] == pts.point(i)[k]); // 17 digits => exact
        }
    }
}

TEST_CASE("point set parser skips comments and blank lines") {
    std::stringstream in("# header\n\n0.25,0.75\n  # inline full-line comment\n0.5,0.5\n");
    const PointSet pts = read_point_set(in, "buffer");
    CHECK(pts.dim() == 2);
    CHECK(pts.size() == 2);
    CHECK(pts.point(0)[1] == 0.75);
}

TEST_CASE("point set parser reports the offending line") {
    SUBCASE("dimension mismatch") {
        std::stringstream in("0.25,0.75\n0.5\n");
        CHECK_THROWS_WITH_AS(read_point_set(in, "pts"),
                             "pts: line 2: expected 2 coordinates, got 1",
                             std::invalid_argument);
    }
    SUBCASE("value out of range") {
        std::stringstream in("# c\n0.25\n1.5\n");
        CHECK_THROWS_WITH_AS(read_point_set(in, "pts"), "pts: line 3: coordinate 1.5 outside [0,1)",
                             std::invalid_argument);
    }
    SUBCASE("not a number") {
        std::stringstream in("0.25,zebra\n");
        CHECK_THROWS_AS(read_point_set(in, "pts"), std::invalid_argument);
    }
    SUBCASE("empty input") {
        std::stringstream in("# nothing\n");
        CHECK_THROWS_AS(read_point_set(in, "pts"), std::invalid_argument);
    }
}

TEST_CASE("integer sequence files parse and validate") {
    std::stringstream in("# squares\n1\n4\n9\n16\n");
    const IntegerSequence seq = read_integer_sequence(in, "seq");
    CHECK(seq.terms == std::vector<std::int64_t>{1, 4, 9, 16});

    std::stringstream bad("1\n4\n4\n");
    CHECK_THROWS_WITH_AS(read_integer_sequence(bad, "seq"),
                         "seq: line 3: term 4 does not increase past 4", std::invalid_argument);

    std::stringstream negative("-3\n");
    CHECK_THROWS_AS(read_integer_sequence(negative, "seq"), std::invalid_argument);

    std::stringstream garbage("12x\n");
    CHECK_THROWS_AS(read_integer_sequence(garbage, "seq"), std::invalid_argument);
}

TEST_CASE("format_double survives a round trip") {
    for (double x : {0.1, 1.0 / 3.0, 0.7071067811865476, 1e-17, 123456.789}) {
        CHECK(std::stod(format_double(x)) == x);
    }
}
