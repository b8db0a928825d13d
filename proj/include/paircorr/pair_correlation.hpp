// The empirical pair correlation statistic on the torus.
//
// For N points of [0,1)^d and a scale s, count ordered pairs (l, m),
// l != m, whose sup torus distance is at most s / N^(1/d), and divide by
// N. Under Poissonian behaviour the statistic tends to (2s)^d.
//
// Two counting engines are provided. The brute-force scan is the serial
// reference: O(N^2), no auxiliary state, kept as the oracle for tests.
// The cell-list engine buckets points into a wrap-around grid whose cell
// width is at least the largest threshold, visits only neighbouring
// buckets, and parallelises over points with OpenMP. Both engines share
// the same distance and threshold-binning code, so their counts agree
// exactly, not just within tolerance.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "paircorr/point_set.hpp"

namespace paircorr {

// Strictly increasing, finite, non-negative scales. s = 0 is allowed and
// counts exactly-coincident pairs only.
struct SGrid {
    std::vector<double> values;

    static SGrid of(std::vector<double> values);
    std::size_t size() const { return values.size(); }
};

struct PairCorrResult {
    std::int64_t n = 0;
    int dim = 0;
    std::vector<double> s_values;
    std::vector<std::int64_t> counts; // ordered pairs within threshold; always even
    std::vector<double> f_values;     // counts[i] / n
    std::vector<double> poisson_ref;  // (2 s_i)^dim
    std::string label;
};

// (2s)^d, the Poissonian limit of the statistic.
double poisson_reference(double s, int dim);

// s / N^(1/d); the single place the threshold is derived, shared by both
// engines and by the diagnostics sweeps.
double pair_threshold(std::int64_t n, int dim, double s);

PairCorrResult pair_correlation_brute_force(const PointSet& pts, const SGrid& grid);
PairCorrResult pair_correlation_cell_list(const PointSet& pts, const SGrid& grid);

// Cells per side the cell-list engine will use for a given configuration;
// exposed so tests can bound its memory (cells_per_side^dim is O(N)).
std::int64_t cell_list_cells_per_side(std::int64_t n, int dim, double r_max);

// CSV with header "s,count,F,poisson_ref"; optional leading '#' comment
// lines (one per line of `comment`).
std::string to_csv(const PairCorrResult& result, const std::string& comment = "");

} // namespace paircorr
