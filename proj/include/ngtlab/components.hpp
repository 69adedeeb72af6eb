#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <span>
#include <vector>

#include "ngtlab/chart.hpp"

namespace ngtlab {

// Dense rank-R component array with every axis of length n, row-major.
// Index meaning is fixed by whoever produces the array; see tensor.hpp.
template <int R>
class Components {
public:
    Components() = default;
    explicit Components(int n, double fill = 0.0) : n_(n), data_(volume(n), fill) {}

    int dim() const { return n_; }
    static constexpr int rank() { return R; }
    size_t size() const { return data_.size(); }

    template <class... I>
    double& operator()(I... idx) {
        static_assert(sizeof...(I) == R);
        return data_[offset(idx...)];
    }
    template <class... I>
    double operator()(I... idx) const {
        static_assert(sizeof...(I) == R);
        return data_[offset(idx...)];
    }

    std::span<double> flat() { return data_; }
    std::span<const double> flat() const { return data_; }

    double maxAbs() const {
        double m = 0.0;
        for (double v : data_)
            m = std::max(m, std::abs(v));
        return m;
    }

    Components& operator+=(const Components& o) {
        check(o);
        for (size_t i = 0; i < data_.size(); ++i)
            data_[i] += o.data_[i];
        return *this;
    }
    Components& operator-=(const Components& o) {
        check(o);
        for (size_t i = 0; i < data_.size(); ++i)
            data_[i] -= o.data_[i];
        return *this;
    }
    Components& operator*=(double s) {
        for (double& v : data_)
            v *= s;
        return *this;
    }

    friend Components operator+(Components a, const Components& b) { return a += b; }
    friend Components operator-(Components a, const Components& b) { return a -= b; }
    friend Components operator*(double s, Components a) { return a *= s; }
    friend Components operator*(Components a, double s) { return a *= s; }
    friend Components operator-(Components a) { return a *= -1.0; }

private:
    int n_ = 0;
    std::vector<double> data_;

    static size_t volume(int n) {
        size_t v = 1;
        for (int i = 0; i < R; ++i)
            v *= static_cast<size_t>(n);
        return v;
    }

    template <class... I>
    size_t offset(I... idx) const {
        size_t off = 0;
        ((off = off * static_cast<size_t>(n_) + static_cast<size_t>(idx)), ...);
        return off;
    }

    void check(const Components& o) const {
        if (o.n_ != n_)
            throw ShapeError("component arrays of different dimension");
    }
};

using Vector = Components<1>;
using Matrix = Components<2>;
using Tensor3 = Components<3>;

template <int R>
double maxAbsDiff(const Components<R>& a, const Components<R>& b) {
    if (a.dim() != b.dim())
        throw ShapeError("maxAbsDiff: dimension mismatch");
    double m = 0.0;
    auto x = a.flat();
    auto y = b.flat();
    for (size_t i = 0; i < x.size(); ++i)
        m = std::max(m, std::abs(x[i] - y[i]));
    return m;
}

Matrix identity(int n);
Matrix transpose(const Matrix& m);
Matrix matmul(const Matrix& a, const Matrix& b);
Vector matvec(const Matrix& a, const Vector& v);
double dot(const Vector& a, const Vector& b);

// 1-norm condition number above this is treated as singular.
inline constexpr double kSingularCondition = 1e12;

class SingularMetricError : public Error {
public:
    SingularMetricError(std::string what, double condition);
    double condition() const { return condition_; }

private:
    double condition_;
};

struct Inverse {
    Matrix inverse;
    double condition = 0.0;  // 1-norm
};

// Partial-pivot LU inverse; throws SingularMetricError when the 1-norm
// condition number exceeds kSingularCondition.
Inverse invert(const Matrix& m, const char* what = "matrix");

// Same, but reports failure through nullopt-like flag instead of throwing.
bool tryInvert(const Matrix& m, Inverse& out);

} // namespace ngtlab
