#pragma once

// Evaluation of multilinear forms on arguments of the shape A^k v, where v is
// a coordinate basis vector or an explicit vector such as xi. Identities are
// written once as lambdas over (X, Y, Z) and checked on all basis triples.

#include <array>
#include <memory>

#include "ngtlab/components.hpp"

namespace ngtlab {

struct Arg {
    int basis = -1;  // coordinate index, or -1 when vec is used
    const Vector* vec = nullptr;
    int power = 0;  // number of applications of A
};

inline Arg basisArg(int i) { return Arg{i, nullptr, 0}; }
inline Arg vectorArg(const Vector& v) { return Arg{-1, &v, 0}; }
inline Arg A(Arg a, int times = 1) {
    a.power += times;
    return a;
}

inline constexpr int kMaxPower = 3;

// A^0 .. A^kMaxPower.
class Powers {
public:
    explicit Powers(const Matrix& a);
    const Matrix& operator[](int k) const { return p_.at(static_cast<size_t>(k)); }
    int dim() const { return p_[0].dim(); }
    // Components of the argument vector.
    Vector coefficients(const Arg& a) const;

private:
    std::array<Matrix, kMaxPower + 1> p_;
};

// Lazily caches the basis-argument tables for each combination of powers.
// Not thread-safe; build one per point and thread.
class Form3 {
public:
    Form3(const Tensor3& t, const Powers& powers);
    double operator()(const Arg& x, const Arg& y, const Arg& z) const;
    const Tensor3& components() const { return t_; }

private:
    Tensor3 t_;
    const Powers* powers_;
    mutable std::array<std::unique_ptr<Tensor3>, (kMaxPower + 1) * (kMaxPower + 1) * (kMaxPower + 1)> cache_;
};

class Form2 {
public:
    Form2(const Matrix& m, const Powers& powers);
    double operator()(const Arg& x, const Arg& y) const;
    const Matrix& components() const { return m_; }

private:
    Matrix m_;
    const Powers* powers_;
    mutable std::array<std::unique_ptr<Matrix>, (kMaxPower + 1) * (kMaxPower + 1)> cache_;
};

class Form1 {
public:
    Form1(const Vector& v, const Powers& powers);
    double operator()(const Arg& x) const;

private:
    Vector v_;
    const Powers* powers_;
};

template <class Fn>
Tensor3 tabulate3(int n, Fn&& f) {
    Tensor3 out(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                out(i, j, k) = f(basisArg(i), basisArg(j), basisArg(k));
    return out;
}

template <class Fn>
Matrix tabulate2(int n, Fn&& f) {
    Matrix out(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            out(i, j) = f(basisArg(i), basisArg(j));
    return out;
}

// max |f| over basis triples.
template <class Fn>
double maxOver3(int n, Fn&& f) {
    double m = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                m = std::max(m, std::abs(f(basisArg(i), basisArg(j), basisArg(k))));
    return m;
}

template <class Fn>
double maxOver2(int n, Fn&& f) {
    double m = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            m = std::max(m, std::abs(f(basisArg(i), basisArg(j))));
    return m;
}

template <class Fn>
double maxOver1(int n, Fn&& f) {
    double m = 0.0;
    for (int i = 0; i < n; ++i)
        m = std::max(m, std::abs(f(basisArg(i))));
    return m;
}

} // namespace ngtlab
