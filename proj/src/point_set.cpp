#include "paircorr/point_set.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace paircorr {

namespace {

void check_coord(double c) {
    if (!std::isfinite(c) || c < 0.0 || c >= 1.0) {
        throw std::invalid_argument("point coordinate out of [0,1): " + std::to_string(c));
    }
}

} // namespace

PointSet::PointSet(int dim, std::string label)
    : dim_(dim), label_(std::move(label)) {
    if (dim < 1) throw std::invalid_argument("point dimension must be >= 1");
}

void PointSet::append(std::span<const double> pt) {
    if (static_cast<int>(pt.size()) != dim_) {
        throw std::invalid_argument("point has " + std::to_string(pt.size()) +
                                    " coordinates, expected " + std::to_string(dim_));
    }
    for (double c : pt) check_coord(c);
    coords_.insert(coords_.end(), pt.begin(), pt.end());
}

PointSet PointSet::prefix(std::int64_t n) const {
    if (n < 0 || n > size()) throw std::invalid_argument("prefix length out of range");
    PointSet out(dim_, label_);
    out.coords_.assign(coords_.begin(), coords_.begin() + n * dim_);
    return out;
}

PointSet PointSet::from_flat(int dim, std::vector<double> flat, std::string label) {
    PointSet out(dim, std::move(label));
    if (flat.size() % static_cast<std::size_t>(dim) != 0) {
        throw std::invalid_argument("flat coordinate buffer is not a multiple of dim");
    }
    for (double c : flat) check_coord(c);
    out.coords_ = std::move(flat);
    return out;
}

} // namespace paircorr
