#include "ngtlab/geometry.hpp"

#include <cmath>

namespace ngtlab {

PreconditionFailure::PreconditionFailure(const std::string& what, double residual)
    : Error(what + " (residual " + std::to_string(residual) + ")"), residual_(residual) {}

namespace {

// C(i,j,k) = g((nabla_i A) e_j, e_k) from the (i,k,j) layout of nablaEndomorphism.
Tensor3 lowerNablaA(const Tensor3& nablaA, const Matrix& g) {
    int n = g.dim();
    Tensor3 out(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                double v = 0.0;
                for (int l = 0; l < n; ++l)
                    v += g(k, l) * nablaA(i, l, j);
                out(i, j, k) = v;
            }
    return out;
}

double scaleOf(const Tensor3& t) { return 1.0 + t.maxAbs(); }

void requireShapes(const Tensor3& T, const Tensor3& nablaG) {
    int n = T.dim();
    if (nablaG.dim() != n)
        throw ShapeError("torsion and nabla g have different dimensions");
    double skew = 0.0, sym = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                skew = std::max(skew, std::abs(T(i, j, k) + T(j, i, k)));
                sym = std::max(sym, std::abs(nablaG(i, j, k) - nablaG(i, k, j)));
            }
    if (skew > 1e-10 * scaleOf(T))
        throw ShapeError("torsion is not skew in its first two slots (" + std::to_string(skew) + ")");
    if (sym > 1e-10 * scaleOf(nablaG))
        throw ShapeError("nabla g is not symmetric in its last two slots (" + std::to_string(sym) + ")");
}

} // namespace

Derived::Derived(const PointFrame& f)
    : frame(&f),
      n(f.n),
      powers(f.A),
      lc(leviCivita(f)),
      dF(exteriorDerivative2(f.dF)),
      N(nijenhuis(f)),
      lcNablaF(nablaBilinear(lc, f.F, f.dF)),
      lcNablaA(lowerNablaA(nablaEndomorphism(lc, f.A, f.dA), f.g)) {}

Connection leviCivita(const Matrix& g, const Matrix& gInv, const Tensor3& dg) {
    int n = g.dim();
    Tensor3 K(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int l = 0; l < n; ++l)
                K(i, j, l) = 0.5 * (dg(i, j, l) + dg(j, i, l) - dg(l, i, j));
    return Connection{raiseLast(K, gInv)};
}

Connection leviCivita(const PointFrame& f) { return leviCivita(f.g, f.gInv, f.dg); }

Connection connectionFromTorsionAndNablaG(const PointFrame& f, const Tensor3& T, const Tensor3& nablaG) {
    requireShapes(T, nablaG);
    int n = f.n;
    Tensor3 K(n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z)
                K(x, y, z) = 0.5 * (T(x, y, z) + T(z, x, y) - T(y, z, x)) -
                             0.5 * (nablaG(x, y, z) + nablaG(y, z, x) - nablaG(z, y, x));
    return addLowered(leviCivita(f), K, f.gInv);
}

Tensor3 inducedNablaF(const PointFrame& f, const Tensor3& T, const Tensor3& nablaG) {
    requireShapes(T, nablaG);
    Derived d(f);
    Form3 t = d.form(T), ng = d.form(nablaG), lcF = d.form(d.lcNablaF);
    return tabulate3(f.n, [&](Arg X, Arg Y, Arg Z) {
        return lcF(X, Y, Z) + 0.5 * (t(X, Y, A(Z)) + t(Z, X, A(Y))) +
               0.5 * (t(A(Z), X, Y) + t(A(Z), Y, X) + t(X, A(Y), Z) + t(Z, A(Y), X)) +
               0.5 * (ng(X, A(Y), Z) - ng(X, Y, A(Z)) - ng(Y, A(Z), X)) +
               0.5 * (ng(Z, A(Y), X) + ng(A(Z), Y, X) - ng(A(Y), Z, X));
    });
}

double cyclicDFIdentityResidual(const PointFrame& f, const Connection& c) {
    Derived d(f);
    Tensor3 T = torsionOf(c, f.g).lowered;
    Tensor3 nF = nablaBilinear(c, f.F, f.dF);
    Form3 t = d.form(T), dF = d.form(d.dF), nf = d.form(nF);
    return maxOver3(f.n, [&](Arg X, Arg Y, Arg Z) {
        return dF(X, Y, Z) + t(X, Y, A(Z)) + t(Y, Z, A(X)) + t(Z, X, A(Y)) -
               (nf(X, Y, Z) + nf(Y, Z, X) + nf(Z, X, Y));
    });
}

CompatResidual metricConnectionCompatResidual(const PointFrame& f, const Tensor3& T) {
    Derived d(f);
    Form3 t = d.form(T), dF = d.form(d.dF), lcF = d.form(d.lcNablaF);
    CompatResidual r;
    r.nablaLcF = maxOver3(f.n, [&](Arg X, Arg Y, Arg Z) {
        return lcF(X, Y, Z) + 0.5 * (t(X, Y, A(Z)) + t(Z, X, A(Y))) +
               0.5 * (t(A(Z), X, Y) + t(A(Z), Y, X) + t(X, A(Y), Z) + t(Z, A(Y), X));
    });
    r.cyclic = maxOver3(f.n, [&](Arg X, Arg Y, Arg Z) {
        return dF(X, Y, Z) + t(X, Y, A(Z)) + t(Y, Z, A(X)) + t(Z, X, A(Y));
    });
    return r;
}

Connection metricConnectionWithTorsion(const PointFrame& f, const Tensor3& T) {
    return connectionFromTorsionAndNablaG(f, T, Tensor3(f.n));
}

Nijenhuis nijenhuis(const PointFrame& f) {
    int n = f.n;
    const Matrix& a = f.A;
    const Tensor3& da = f.dA;  // da(m,k,j) = d_m A^k_j
    Tensor3 up(n);
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double v = 0.0;
                for (int p = 0; p < n; ++p)
                    v += a(p, i) * da(p, k, j) - a(p, j) * da(p, k, i) + a(k, p) * da(j, p, i) -
                         a(k, p) * da(i, p, j);
                up(k, i, j) = v;
            }
    Nijenhuis N{up, lowerLast(up, f.g)};
    return N;
}

Tensor3 nijenhuisViaNablaA(const PointFrame& f, const Connection& c) {
    Powers P(f.A);
    Tensor3 C = lowerNablaA(nablaEndomorphism(c, f.A, f.dA), f.g);
    Tensor3 T = torsionOf(c, f.g).lowered;
    Form3 e(C, P), t(T, P);
    return tabulate3(f.n, [&](Arg X, Arg Y, Arg Z) {
        return e(A(X), Y, Z) - e(A(Y), X, Z) + e(X, Y, A(Z)) - e(Y, X, A(Z)) - t(A(X), A(Y), Z) -
               t(X, Y, A(Z, 2)) - t(A(X), Y, A(Z)) - t(X, A(Y), A(Z));
    });
}

Tensor3 nijenhuisParallelForm(const PointFrame& f, const Tensor3& T) {
    Powers P(f.A);
    Form3 t(T, P);
    return tabulate3(f.n, [&](Arg X, Arg Y, Arg Z) {
        return -t(A(X), A(Y), Z) - t(X, Y, A(Z, 2)) - t(A(X), Y, A(Z)) - t(X, A(Y), A(Z));
    });
}

double ndf1Residual(const PointFrame& f) {
    Derived d(f);
    Form3 N = d.form(d.N.lowered), dF = d.form(d.dF);
    return maxOver3(f.n, [&](Arg X, Arg Y, Arg Z) {
        return N(X, Y, A(Z)) + N(X, Z, A(Y)) - dF(X, Y, A(Z, 2)) - dF(X, Z, A(Y, 2));
    });
}

double totalSkewResidual(const Tensor3& T) {
    int n = T.dim();
    double m = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                m = std::max({m, std::abs(T(i, j, k) + T(j, i, k)), std::abs(T(i, j, k) + T(i, k, j))});
    return m;
}

SkewTorsionResult skewTorsionExistence(const PointFrame& f, double tol) {
    SkewTorsionResult r;
    r.condition = ndf1Residual(f);
    if (r.condition > tol)
        return r;
    Inverse inv;
    if (!tryInvert(f.A, inv))
        throw DegenerateStructureError("A is singular at this point; use the structure-specific path");

    int n = f.n;
    Derived d(f);
    Tensor3 R = 2.0 * d.lcNablaF - d.dF;  // R(X,Y,Z) = T(AX,Y,Z)
    Tensor3 T(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                double v = 0.0;
                for (int p = 0; p < n; ++p)
                    v += inv.inverse(p, i) * R(p, j, k);
                T(i, j, k) = v;
            }
    Connection c = addLowered(d.lc, 0.5 * T, f.gInv);

    Form3 t = d.form(T), N = d.form(d.N.lowered), dF = d.form(d.dF);
    r.torsionSkew = totalSkewResidual(T);
    r.imageCrossCheck = maxOver3(n, [&](Arg X, Arg Y, Arg Z) {
        return t(A(X), A(Y), Z) + N(X, Y, Z) - dF(X, Y, A(Z));
    });
    r.nablaG = nablaBilinear(c, f.g, f.dg).maxAbs();
    r.nablaF = nablaBilinear(c, f.F, f.dF).maxAbs();
    r.parallelNijenhuis = maxAbsDiff(nijenhuisParallelForm(f, T), d.N.lowered);
    r.torsion = std::move(T);
    r.connection = std::move(c);
    return r;
}

Connection eisenhartConnection(const PointFrame& f) {
    return addLowered(leviCivita(f), 0.5 * exteriorDerivative2(f.dF), f.gInv);
}

double eisenhartNijenhuisResidual(const PointFrame& f) {
    Derived d(f);
    Form3 N = d.form(d.N.lowered), lcF = d.form(d.lcNablaF);
    return maxOver3(f.n, [&](Arg X, Arg Y, Arg Z) {
        return N(X, Y, Z) -
               (lcF(A(X), Y, Z) - lcF(A(Y), X, Z) + lcF(X, Y, A(Z)) - lcF(Y, X, A(Z)));
    });
}

} // namespace ngtlab
