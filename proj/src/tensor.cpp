#include "ngtlab/tensor.hpp"

namespace ngtlab {

std::pair<TensorField, TensorField> decompose(const TensorField& G, std::span<const Point> probes) {
    if (G.valence() != Valence{2, 0})
        throw ShapeError("decompose expects a (0,2) field");
    int n = G.dim();
    std::vector<ScalarFieldPtr> g, F;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const auto& a = G.component(static_cast<size_t>(i * n + j));
            const auto& b = G.component(static_cast<size_t>(j * n + i));
            if (i == j) {
                g.push_back(a);
                F.push_back(constantField(0.0, n));
                continue;
            }
            g.push_back(linearCombination({{0.5, a}, {0.5, b}}, n));
            F.push_back(linearCombination({{0.5, a}, {-0.5, b}}, n));
        }
    TensorField gf(n, Valence{2, 0}, std::move(g), Symmetry::Symmetric);
    TensorField Ff(n, Valence{2, 0}, std::move(F), Symmetry::Skew);
    for (const Point& p : probes)
        invert(gf.jet2(p).value, "symmetric part g");
    return {std::move(gf), std::move(Ff)};
}

Matrix recoverA(const Matrix& g, const Matrix& F) {
    Matrix gInv = invert(g, "metric g").inverse;
    int n = g.dim();
    Matrix A(n);
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int l = 0; l < n; ++l)
                A(k, i) += gInv(k, l) * F(i, l);
    return A;
}

Matrix recoverA(const TensorField& g, const TensorField& F, std::span<const double> p) {
    return recoverA(g.jet2(p).value, F.jet2(p).value);
}

Tensor3 exteriorDerivative2(const Tensor3& d) {
    int n = d.dim();
    Tensor3 out(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                out(i, j, k) = d(i, j, k) + d(j, k, i) + d(k, i, j);
    return out;
}

Tensor3 exteriorDerivative2(const TensorField& F, std::span<const double> p) {
    if (F.valence() != Valence{2, 0})
        throw ShapeError("exteriorDerivative2 expects a (0,2) field");
    return exteriorDerivative2(F.jet2(p).partial);
}

Matrix exteriorDerivative1(const Matrix& d) {
    int n = d.dim();
    Matrix out(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            out(i, j) = d(i, j) - d(j, i);
    return out;
}

Matrix exteriorDerivative1(const TensorField& eta, std::span<const double> p) {
    if (eta.valence() != Valence{1, 0})
        throw ShapeError("exteriorDerivative1 expects a (0,1) field");
    return exteriorDerivative1(eta.jet1(p).partial);
}

Tensor3 nablaBilinear(const Connection& c, const Matrix& S, const Tensor3& dS) {
    int n = S.dim();
    const Tensor3& G = c.gamma;
    Tensor3 out(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                double v = dS(i, j, k);
                for (int p = 0; p < n; ++p)
                    v -= G(p, i, j) * S(p, k) + G(p, i, k) * S(j, p);
                out(i, j, k) = v;
            }
    return out;
}

Tensor3 nablaEndomorphism(const Connection& c, const Matrix& A, const Tensor3& dA) {
    int n = A.dim();
    const Tensor3& G = c.gamma;
    Tensor3 out(n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
            for (int j = 0; j < n; ++j) {
                double v = dA(i, k, j);
                for (int p = 0; p < n; ++p)
                    v += G(k, i, p) * A(p, j) - G(p, i, j) * A(k, p);
                out(i, k, j) = v;
            }
    return out;
}

Matrix nablaCovector(const Connection& c, const Vector& eta, const Matrix& deta) {
    int n = eta.dim();
    Matrix out(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double v = deta(i, j);
            for (int p = 0; p < n; ++p)
                v -= c.gamma(p, i, j) * eta(p);
            out(i, j) = v;
        }
    return out;
}

Matrix nablaVector(const Connection& c, const Vector& xi, const Matrix& dxi) {
    int n = xi.dim();
    Matrix out(n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            double v = dxi(i, k);
            for (int p = 0; p < n; ++p)
                v += c.gamma(k, i, p) * xi(p);
            out(i, k) = v;
        }
    return out;
}

std::vector<double> covariantDerivative(const Connection& c, const FieldSample& s) {
    int n = s.dim;
    if (c.dim() != n)
        throw ShapeError("connection and field dimensions differ");
    auto copyOut = [](const auto& comps) {
        auto f = comps.flat();
        return std::vector<double>(f.begin(), f.end());
    };
    size_t count = s.value.size();
    if (s.valence.rank() == 1) {
        Vector v(n);
        Matrix d(n);
        for (int i = 0; i < n; ++i)
            v(i) = s.value[static_cast<size_t>(i)];
        for (int m = 0; m < n; ++m)
            for (int i = 0; i < n; ++i)
                d(m, i) = s.partial[static_cast<size_t>(m) * count + static_cast<size_t>(i)];
        if (s.valence == Valence{1, 0})
            return copyOut(nablaCovector(c, v, d));
        return copyOut(nablaVector(c, v, d));
    }
    if (s.valence == Valence{2, 0} || s.valence == Valence{1, 1}) {
        Matrix v(n);
        Tensor3 d(n);
        std::copy(s.value.begin(), s.value.end(), v.flat().begin());
        std::copy(s.partial.begin(), s.partial.end(), d.flat().begin());
        if (s.valence == Valence{2, 0})
            return copyOut(nablaBilinear(c, v, d));
        return copyOut(nablaEndomorphism(c, v, d));
    }
    throw ShapeError("covariantDerivative: unsupported valence (" + std::to_string(s.valence.covariant) + "," +
                     std::to_string(s.valence.contravariant) + ")");
}

Tensor3 lowerLast(const Tensor3& upper, const Matrix& g) {
    int n = upper.dim();
    Tensor3 out(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                double v = 0.0;
                for (int l = 0; l < n; ++l)
                    v += g(k, l) * upper(l, i, j);
                out(i, j, k) = v;
            }
    return out;
}

Tensor3 raiseLast(const Tensor3& lowered, const Matrix& gInv) {
    int n = lowered.dim();
    Tensor3 out(n);
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double v = 0.0;
                for (int l = 0; l < n; ++l)
                    v += gInv(k, l) * lowered(i, j, l);
                out(k, i, j) = v;
            }
    return out;
}

Torsion torsionOf(const Connection& c, const Matrix& g) {
    int n = c.dim();
    Torsion t{Tensor3(n), Tensor3(n)};
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                t.upper(k, i, j) = c.gamma(k, i, j) - c.gamma(k, j, i);
    t.lowered = lowerLast(t.upper, g);
    return t;
}

Connection addLowered(const Connection& base, const Tensor3& K, const Matrix& gInv) {
    Connection c = base;
    c.gamma += raiseLast(K, gInv);
    return c;
}

} // namespace ngtlab
