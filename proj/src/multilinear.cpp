#include "ngtlab/multilinear.hpp"

namespace ngtlab {

Powers::Powers(const Matrix& a) {
    p_[0] = identity(a.dim());
    for (int k = 1; k <= kMaxPower; ++k)
        p_[static_cast<size_t>(k)] = matmul(p_[static_cast<size_t>(k - 1)], a);
}

Vector Powers::coefficients(const Arg& a) const {
    int n = dim();
    Vector v(n);
    if (a.vec)
        v = *a.vec;
    else
        v(a.basis) = 1.0;
    int k = a.power;
    while (k > kMaxPower) {
        v = matvec(p_[kMaxPower], v);
        k -= kMaxPower;
    }
    return k == 0 ? v : matvec(p_[static_cast<size_t>(k)], v);
}

namespace {

// out(.., i, ..) = sum_p t(.., p, ..) P(p, i) on the given slot.
Tensor3 mapSlot(const Tensor3& t, const Matrix& P, int slot) {
    int n = t.dim();
    Tensor3 out(n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                double s = 0.0;
                for (int p = 0; p < n; ++p) {
                    if (slot == 0)
                        s += t(p, b, c) * P(p, a);
                    else if (slot == 1)
                        s += t(a, p, c) * P(p, b);
                    else
                        s += t(a, b, p) * P(p, c);
                }
                out(a, b, c) = s;
            }
    return out;
}

bool cacheable(const Arg& a) { return !a.vec && a.power <= kMaxPower; }

} // namespace

Form3::Form3(const Tensor3& t, const Powers& powers) : t_(t), powers_(&powers) {}

double Form3::operator()(const Arg& x, const Arg& y, const Arg& z) const {
    if (cacheable(x) && cacheable(y) && cacheable(z)) {
        size_t key = static_cast<size_t>((x.power * (kMaxPower + 1) + y.power) * (kMaxPower + 1) + z.power);
        auto& slot = cache_[key];
        if (!slot) {
            Tensor3 m = t_;
            if (x.power)
                m = mapSlot(m, (*powers_)[x.power], 0);
            if (y.power)
                m = mapSlot(m, (*powers_)[y.power], 1);
            if (z.power)
                m = mapSlot(m, (*powers_)[z.power], 2);
            slot = std::make_unique<Tensor3>(std::move(m));
        }
        return (*slot)(x.basis, y.basis, z.basis);
    }
    Vector cx = powers_->coefficients(x);
    Vector cy = powers_->coefficients(y);
    Vector cz = powers_->coefficients(z);
    int n = t_.dim();
    double s = 0.0;
    for (int p = 0; p < n; ++p) {
        if (cx(p) == 0.0)
            continue;
        for (int q = 0; q < n; ++q) {
            double w = cx(p) * cy(q);
            if (w == 0.0)
                continue;
            for (int r = 0; r < n; ++r)
                s += w * cz(r) * t_(p, q, r);
        }
    }
    return s;
}

Form2::Form2(const Matrix& m, const Powers& powers) : m_(m), powers_(&powers) {}

double Form2::operator()(const Arg& x, const Arg& y) const {
    if (cacheable(x) && cacheable(y)) {
        size_t key = static_cast<size_t>(x.power * (kMaxPower + 1) + y.power);
        auto& slot = cache_[key];
        if (!slot)
            slot = std::make_unique<Matrix>(
                matmul(matmul(transpose((*powers_)[x.power]), m_), (*powers_)[y.power]));
        return (*slot)(x.basis, y.basis);
    }
    Vector cx = powers_->coefficients(x);
    Vector cy = powers_->coefficients(y);
    return dot(cx, matvec(m_, cy));
}

Form1::Form1(const Vector& v, const Powers& powers) : v_(v), powers_(&powers) {}

double Form1::operator()(const Arg& x) const {
    if (!x.vec && x.power == 0)
        return v_(x.basis);
    return dot(v_, powers_->coefficients(x));
}

} // namespace ngtlab
