// Torus geometry for the unit cube [0,1)^d with the wrap-around sup metric.
//
// Distances are measured coordinate-wise as "distance to the nearest
// integer", so 0.95 and 0.05 are 0.1 apart, and no point is ever farther
// than 1/2 from another along a single axis.
#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

namespace paircorr {

// Fractional part with the floor convention: frac(-0.25) == 0.75.
// The result always lands in [0,1); values that round up to 1.0 are
// folded back to 0.
inline double frac(double x) {
    double r = x - std::floor(x);
    if (r >= 1.0) r = 0.0;
    if (r < 0.0) r = 0.0;
    return r;
}

// frac(a * alpha) for integer a, with a two-product correction.
//
// A plain double multiply rounds a*alpha to 53 bits, which costs up to
// ~2^-14 of absolute error once a approaches 2^40; after taking the
// fractional part that error survives in full. Splitting the product
// with fma() recovers the rounding residual, so the result stays
// accurate to a few ulps of 1 for |a*alpha| < 2^53.
inline double frac_mul(std::int64_t a, double alpha) {
    const double ad = static_cast<double>(a);
    const double p = ad * alpha;
    const double err = std::fma(ad, alpha, -p); // p + err == a*alpha exactly
    double r = p - std::floor(p);               // exact for |p| < 2^53
    r += err;
    r -= std::floor(r);
    if (r >= 1.0) r = 0.0;
    if (r < 0.0) r = 0.0;
    return r;
}

// Distance from x to the nearest integer: min(frac(x), 1 - frac(x)).
// Always in [0, 1/2].
inline double dist_to_nearest_int(double x) {
    const double f = frac(x);
    const double g = 1.0 - f;
    return f < g ? f : g;
}

// Wrap-around distance between two coordinates already in [0,1):
// min(|a - b|, 1 - |a - b|). Built on the absolute difference so the
// result is bit-identical under argument swap; kept branch-cheap for
// the counting kernels.
inline double coord_torus_dist(double a, double b) {
    double delta = a - b;
    if (delta < 0.0) delta = -delta;
    const double g = 1.0 - delta;
    return delta < g ? delta : g;
}

// Sup-norm torus distance between two points of equal dimension.
inline double sup_torus_dist(std::span<const double> a, std::span<const double> b) {
    double best = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double dk = coord_torus_dist(a[k], b[k]);
        if (dk > best) best = dk;
    }
    return best;
}

// A single point of [0,1)^d. Mostly a convenience for tests and small
// call sites; bulk storage lives in PointSet.
struct TorusPoint {
    std::vector<double> coords;

    int dim() const { return static_cast<int>(coords.size()); }
};

inline double sup_torus_dist(const TorusPoint& a, const TorusPoint& b) {
    return sup_torus_dist(std::span<const double>(a.coords),
                          std::span<const double>(b.coords));
}

} // namespace paircorr
