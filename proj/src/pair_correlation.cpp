#include "paircorr/pair_correlation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "paircorr/io.hpp"
#include "paircorr/torus.hpp"

namespace paircorr {

SGrid SGrid::of(std::vector<double> values) {
    if (values.empty()) throw std::invalid_argument("scale grid must not be empty");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i]) || values[i] < 0.0) {
            throw std::invalid_argument("scale grid entries must be finite and >= 0");
        }
        if (i > 0 && values[i] <= values[i - 1]) {
            throw std::invalid_argument("scale grid must be strictly increasing");
        }
    }
    SGrid g;
    g.values = std::move(values);
    return g;
}

double poisson_reference(double s, int dim) {
    return std::pow(2.0 * s, dim);
}

double pair_threshold(std::int64_t n, int dim, double s) {
    return s / std::pow(static_cast<double>(n), 1.0 / dim);
}

namespace {

// Inclusive binning: a pair at distance `dist` qualifies for every
// threshold t_j >= dist, and the thresholds are sorted, so it suffices to
// bump the first qualifying bin and prefix-sum afterwards.
inline void bin_distance(double dist, const std::vector<double>& thresholds,
                         std::vector<std::int64_t>& hist) {
    const auto it = std::lower_bound(thresholds.begin(), thresholds.end(), dist);
    if (it != thresholds.end()) ++hist[static_cast<std::size_t>(it - thresholds.begin())];
}

std::vector<double> make_thresholds(std::int64_t n, int dim, const SGrid& grid) {
    std::vector<double> t(grid.values.size());
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = pair_threshold(n, dim, grid.values[i]);
    return t;
}

// Turns first-qualifying-bin tallies into the final result: cumulative
// unordered counts, doubled to ordered counts, then F = count / N.
PairCorrResult assemble(const PointSet& pts, const SGrid& grid,
                        std::vector<std::int64_t> hist) {
    PairCorrResult r;
    r.n = pts.size();
    r.dim = pts.dim();
    r.s_values = grid.values;
    r.label = pts.label();
    r.counts.resize(grid.size());
    r.f_values.resize(grid.size());
    r.poisson_ref.resize(grid.size());
    std::int64_t acc = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        acc += hist[i];
        r.counts[i] = 2 * acc;
        r.f_values[i] = r.n > 0 ? static_cast<double>(r.counts[i]) / static_cast<double>(r.n) : 0.0;
        r.poisson_ref[i] = poisson_reference(grid.values[i], r.dim);
    }
    return r;
}

} // namespace

PairCorrResult pair_correlation_brute_force(const PointSet& pts, const SGrid& grid) {
    const std::int64_t n = pts.size();
    const int d = pts.dim();
    std::vector<std::int64_t> hist(grid.size(), 0);
    if (n >= 2) {
        const std::vector<double> thresholds = make_thresholds(n, d, grid);
        const double* x = pts.raw();
        for (std::int64_t l = 0; l < n; ++l) {
            const double* xl = x + l * d;
            for (std::int64_t m = l + 1; m < n; ++m) {
                const double* xm = x + m * d;
                double dist = 0.0;
                for (int k = 0; k < d; ++k) {
                    const double dk = coord_torus_dist(xl[k], xm[k]);
                    if (dk > dist) dist = dk;
                }
                bin_distance(dist, thresholds, hist);
            }
        }
    }
    return assemble(pts, grid, std::move(hist));
}

std::int64_t cell_list_cells_per_side(std::int64_t n, int dim, double r_max) {
    // Cell width must be >= r_max so that neighbouring cells cover every
    // qualifying pair; the second cap keeps the number of cells O(N).
    std::int64_t by_radius;
    if (r_max <= 0.0) {
        by_radius = std::numeric_limits<std::int64_t>::max();
    } else {
        by_radius = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::floor(1.0 / r_max)));
    }
    const double budget = 4.0 * static_cast<double>(std::max<std::int64_t>(n, 1));
    const auto by_memory =
        std::max<std::int64_t>(1, static_cast<std::int64_t>(std::floor(std::pow(budget, 1.0 / dim))));
    return std::min(by_radius, by_memory);
}

PairCorrResult pair_correlation_cell_list(const PointSet& pts, const SGrid& grid) {
    const std::int64_t n = pts.size();
    const int d = pts.dim();
    std::vector<std::int64_t> hist(grid.size(), 0);
    if (n < 2) return assemble(pts, grid, std::move(hist));

    const std::vector<double> thresholds = make_thresholds(n, d, grid);
    const double r_max = thresholds.back();
    const double* x = pts.raw();

    const std::int64_t m_side = cell_list_cells_per_side(n, d, r_max);
    std::int64_t n_cells = 1;
    for (int k = 0; k < d; ++k) n_cells *= m_side;

    // Bucket points with a counting sort: cell_start[c]..cell_start[c+1]
    // indexes `order` with the points of cell c.
    const auto cell_coord = [&](double c) {
        auto v = static_cast<std::int64_t>(c * static_cast<double>(m_side));
        return v >= m_side ? m_side - 1 : v; // c < 1 can still round up
    };
    const auto cell_of = [&](const double* p) {
        std::int64_t id = 0;
        for (int k = d - 1; k >= 0; --k) id = id * m_side + cell_coord(p[k]);
        return id;
    };

    std::vector<std::int64_t> cell_start(static_cast<std::size_t>(n_cells) + 1, 0);
    std::vector<std::int64_t> cell_id(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) {
        cell_id[static_cast<std::size_t>(i)] = cell_of(x + i * d);
        ++cell_start[static_cast<std::size_t>(cell_id[static_cast<std::size_t>(i)]) + 1];
    }
    for (std::size_t c = 1; c < cell_start.size(); ++c) cell_start[c] += cell_start[c - 1];
    std::vector<std::int64_t> order(static_cast<std::size_t>(n));
    {
        std::vector<std::int64_t> cursor(cell_start.begin(), cell_start.end() - 1);
        for (std::int64_t i = 0; i < n; ++i) {
            order[static_cast<std::size_t>(cursor[static_cast<std::size_t>(cell_id[static_cast<std::size_t>(i)])]++)] = i;
        }
    }

    // Per-dimension neighbour offsets with wrap-around, deduplicated so a
    // small grid (m_side <= 2) never visits the same cell twice.
    std::vector<std::int64_t> deltas;
    if (m_side == 1) {
        deltas = {0};
    } else if (m_side == 2) {
        deltas = {0, 1};
    } else {
        deltas = {-1, 0, 1};
    }
    const std::size_t n_offsets = [&] {
        std::size_t v = 1;
        for (int k = 0; k < d; ++k) v *= deltas.size();
        return v;
    }();

    // Every unordered pair within r_max sits in neighbouring cells, so
    // scanning neighbours of each point's own cell and keeping j > i
    // visits each pair exactly once. Per-thread histograms merge by
    // integer addition, which makes the counts schedule-independent.
#pragma omp parallel
    {
        std::vector<std::int64_t> local(hist.size(), 0);
        std::vector<std::int64_t> ccoord(static_cast<std::size_t>(d));
#pragma omp for schedule(dynamic, 1024)
        for (std::int64_t i = 0; i < n; ++i) {
            const double* xi = x + i * d;
            for (int k = 0; k < d; ++k) ccoord[static_cast<std::size_t>(k)] = cell_coord(xi[k]);
            for (std::size_t off = 0; off < n_offsets; ++off) {
                std::int64_t neighbour = 0;
                std::size_t rem = off;
                for (int k = d - 1; k >= 0; --k) {
                    const std::int64_t delta = deltas[rem % deltas.size()];
                    rem /= deltas.size();
                    std::int64_t c = ccoord[static_cast<std::size_t>(k)] + delta;
                    if (c < 0) c += m_side;
                    if (c >= m_side) c -= m_side;
                    neighbour = neighbour * m_side + c;
                }
                const std::int64_t lo = cell_start[static_cast<std::size_t>(neighbour)];
                const std::int64_t hi = cell_start[static_cast<std::size_t>(neighbour) + 1];
                for (std::int64_t slot = lo; slot < hi; ++slot) {
                    const std::int64_t j = order[static_cast<std::size_t>(slot)];
                    if (j <= i) continue;
                    const double* xj = x + j * d;
                    double dist = 0.0;
                    for (int k = 0; k < d; ++k) {
                        const double dk = coord_torus_dist(xi[k], xj[k]);
                        if (dk > dist) dist = dk;
                    }
                    bin_distance(dist, thresholds, local);
                }
            }
        }
#pragma omp critical
        for (std::size_t b = 0; b < hist.size(); ++b) hist[b] += local[b];
    }

    return assemble(pts, grid, std::move(hist));
}

std::string to_csv(const PairCorrResult& result, const std::string& comment) {
    std::ostringstream out;
    if (!comment.empty()) {
        std::istringstream lines(comment);
        std::string h;
        while (std::getline(lines, h)) out << "# " << h << "\n";
    }
    out << "s,count,F,poisson_ref\n";
    for (std::size_t i = 0; i < result.s_values.size(); ++i) {
        out << format_double(result.s_values[i]) << "," << result.counts[i] << ","
            << format_double(result.f_values[i]) << "," << format_double(result.poisson_ref[i])
            << "\n";
    }
    return out.str();
}

} // namespace paircorr
