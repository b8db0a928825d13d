// Flat storage for N points of [0,1)^d plus a provenance label.
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace paircorr {

// Row-major coordinate storage: point i occupies coords[i*d .. i*d+d).
// Every coordinate is validated to be finite and in [0,1) on the way in;
// the counting kernels rely on that range and never re-check it.
// Treat a PointSet as immutable once it is being read concurrently.
class PointSet {
public:
    explicit PointSet(int dim, std::string label = "");

    int dim() const { return dim_; }
    std::int64_t size() const { return static_cast<std::int64_t>(coords_.size()) / dim_; }
    bool empty() const { return coords_.empty(); }

    std::span<const double> point(std::int64_t i) const {
        return {coords_.data() + i * dim_, static_cast<std::size_t>(dim_)};
    }
    const std::vector<double>& data() const { return coords_; }
    const double* raw() const { return coords_.data(); }

    const std::string& label() const { return label_; }
    void set_label(std::string label) { label_ = std::move(label); }

    void reserve(std::int64_t n) { coords_.reserve(static_cast<std::size_t>(n) * dim_); }
    void append(std::span<const double> pt);

    // First n points, keeping dimension and label.
    PointSet prefix(std::int64_t n) const;

    // Adopts a prevalidated flat buffer (still checks range).
    static PointSet from_flat(int dim, std::vector<double> flat, std::string label = "");

private:
    int dim_;
    std::string label_;
    std::vector<double> coords_;
};

} // namespace paircorr
