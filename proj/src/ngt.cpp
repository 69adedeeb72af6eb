#include "ngtlab/ngt.hpp"

namespace ngtlab {

namespace {

Tensor3 loweredNablaA(const PointFrame& f, const Connection& c) {
    Tensor3 nA = nablaEndomorphism(c, f.A, f.dA);
    int n = f.n;
    Tensor3 out(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                double v = 0.0;
                for (int l = 0; l < n; ++l)
                    v += f.g(k, l) * nA(i, l, j);
                out(i, j, k) = v;
            }
    return out;
}

Tensor3 ein8Literal(const Derived& d, const Tensor3& T) {
    Form3 t = d.form(T), dF = d.form(d.dF);
    return tabulate3(d.n, [&](Arg X, Arg Y, Arg Z) {
        return dF(X, Y, A(Z)) + 0.5 * (dF(A(X), Y, Z) + dF(X, A(Y), Z)) +
               0.5 * (t(Y, Z, A(X)) - t(X, Z, A(Y)) + t(Y, A(Z), X) - t(X, A(Z), Y) - t(X, A(Y), A(Z, 2)) -
                      t(A(X), Y, A(Z, 2))) -
               0.5 * (t(Z, A(Y), A(X, 2)) - t(Z, A(X), A(Y, 2)) + t(A(Z), Y, A(X, 2)) - t(A(Z), X, A(Y, 2))) -
               t(A(X), A(Y), A(Z));
    });
}

// g((nabla_X A)Y,Z) in terms of dF and T.
Tensor3 ein7Form(const Derived& d, const Tensor3& T) {
    Form3 t = d.form(T), dF = d.form(d.dF);
    return tabulate3(d.n, [&](Arg X, Arg Y, Arg Z) {
        return 0.5 * (dF(X, Y, Z) + t(Y, Z, X) + t(X, Y, A(Z)) + t(X, A(Y), Z) - t(X, A(Y), A(Z)) -
                      t(X, Z, A(Y, 2)));
    });
}

Tensor3 nuj1Form(const Derived& d, const Tensor3& E, const Tensor3& T) {
    Form3 e = d.form(E), t = d.form(T);
    return tabulate3(d.n, [&](Arg X, Arg Y, Arg Z) {
        return e(A(X), Y, Z) - e(A(Y), X, Z) + e(X, Y, A(Z)) - e(Y, X, A(Z)) - t(A(X), A(Y), Z) -
               t(X, Y, A(Z, 2)) - t(A(X), Y, A(Z)) - t(X, A(Y), A(Z));
    });
}

Tensor3 cyclicSum(const Tensor3& t) {
    int n = t.dim();
    Tensor3 out(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                out(i, j, k) = t(i, j, k) + t(j, k, i) + t(k, i, j);
    return out;
}

} // namespace

double einsteinMetricityResidual(const PointFrame& f, const Connection& c) {
    Tensor3 nG = nablaBilinear(c, f.g, f.dg) + nablaBilinear(c, f.F, f.dF);
    Powers P(f.A);
    Form3 ng(nG, P), t(torsionOf(c, f.g).lowered, P);
    return maxOver3(f.n, [&](Arg X, Arg Y, Arg Z) { return ng(X, Y, Z) + t(X, Y, Z) - t(X, Y, A(Z)); });
}

NgtDecomposition ngtGeneralDecomposition(const PointFrame& f, const Tensor3& T, double tol) {
    if (T.dim() != f.n)
        throw ShapeError("torsion dimension differs from the chart");
    double skew = 0.0;
    for (int i = 0; i < f.n; ++i)
        for (int j = 0; j < f.n; ++j)
            for (int k = 0; k < f.n; ++k)
                skew = std::max(skew, std::abs(T(i, j, k) + T(j, i, k)));
    if (skew > 1e-10 * (1.0 + T.maxAbs()))
        throw ShapeError("torsion is not skew in its first two slots");

    Derived d(f);
    NgtDecomposition r;
    r.torsionCyclic = maxAbsDiff(cyclicSum(T), -1.0 * d.dF);
    if (r.torsionCyclic > tol)
        throw ConstraintViolation("dF is not minus the cyclic sum of the torsion", r.torsionCyclic);

    int n = f.n;
    Form3 t = d.form(T), dF = d.form(d.dF);
    r.nablaG = tabulate3(n, [&](Arg X, Arg Y, Arg Z) {
        return -0.5 * (t(X, Y, Z) - t(X, Y, A(Z)) + t(X, Z, Y) - t(X, Z, A(Y)));
    });
    // slot order (Z, X, Y): (nabla_Z F)(X, Y)
    r.nablaF = tabulate3(n, [&](Arg Z, Arg X, Arg Y) {
        return 0.5 * (dF(X, Y, Z) + t(X, Y, Z) - t(Z, Y, A(X)) + t(Z, X, A(Y)));
    });
    r.nablaA = ein7Form(d, T);
    Tensor3 K = tabulate3(n, [&](Arg X, Arg Y, Arg Z) {
        return 0.5 * (t(X, Y, Z) - t(X, Z, A(Y)) - t(Y, Z, A(X)));
    });
    Tensor3 K2 = tabulate3(n, [&](Arg X, Arg Y, Arg Z) {
        return -0.5 * (dF(X, Y, Z) + t(Z, X, Y) + t(Y, Z, X)) + 0.5 * (t(Z, X, A(Y)) + t(Z, Y, A(X)));
    });
    r.connectionForms = maxAbsDiff(K, K2);
    r.connection = addLowered(d.lc, K, f.gInv);

    r.cyclicNablaG = cyclicSum(r.nablaG).maxAbs();
    r.nablaGCheck = maxAbsDiff(nablaBilinear(r.connection, f.g, f.dg), r.nablaG);
    r.nablaFCheck = maxAbsDiff(nablaBilinear(r.connection, f.F, f.dF), r.nablaF);
    r.nablaACheck = maxAbsDiff(loweredNablaA(f, r.connection), r.nablaA);
    r.metricity = einsteinMetricityResidual(f, r.connection);
    r.nijenhuis = maxAbsDiff(ein8Literal(d, T), d.N.lowered);
    return r;
}

Ein8Guard ein8Guard(const PointFrame& f, const Tensor3& T) {
    Derived d(f);
    Tensor3 literal = ein8Literal(d, T);
    Tensor3 chain = nuj1Form(d, ein7Form(d, T), T);
    return Ein8Guard{maxAbsDiff(literal, chain), maxAbsDiff(literal, d.N.lowered), maxAbsDiff(chain, d.N.lowered)};
}

double ngtSkewConditionResidual(const PointFrame& f) {
    Derived d(f);
    Form3 N = d.form(d.N.lowered), dF = d.form(d.dF);
    const double third = 1.0 / 3.0, sixth = 1.0 / 6.0;
    return maxOver3(f.n, [&](Arg X, Arg Y, Arg Z) {
        double rhs = 2.0 * third * dF(X, Y, A(Z)) + third * dF(A(X), Y, Z) + third * dF(X, A(Y), Z) +
                     third * dF(A(X), A(Y), A(Z)) -
                     sixth * (dF(A(X, 2), Y, A(Z)) + dF(A(X, 2), A(Y), Z) + dF(X, A(Y, 2), A(Z)) -
                              dF(X, A(Y), A(Z, 2))) -
                     sixth * (dF(A(X), A(Y, 2), Z) - dF(A(X), Y, A(Z, 2)));
        return N(X, Y, Z) - rhs;
    });
}

Connection ngtSkewConnection(const PointFrame& f) {
    Derived d(f);
    Form3 dF = d.form(d.dF);
    Tensor3 K = tabulate3(f.n, [&](Arg X, Arg Y, Arg Z) {
        return (-dF(X, Y, Z) - dF(X, A(Y), Z) + dF(A(X), Y, Z)) / 6.0;
    });
    return addLowered(d.lc, K, f.gInv);
}

NgtSkewResult ngtSkewPipeline(const PointFrame& f, double tol) {
    double cond = ngtSkewConditionResidual(f);
    if (cond > tol)
        throw PreconditionFailure("the Nijenhuis tensor does not satisfy the skew-torsion NGT condition", cond);

    Derived d(f);
    int n = f.n;
    NgtSkewResult r;
    r.condition = cond;
    r.torsion = (-1.0 / 3.0) * d.dF;
    r.connection = ngtSkewConnection(f);
    r.nablaG = nablaBilinear(r.connection, f.g, f.dg);
    r.nablaF = nablaBilinear(r.connection, f.F, f.dF);
    r.lcNablaF = d.lcNablaF;

    Form3 dF = d.form(d.dF), nF = d.form(r.nablaF), lcF = d.form(d.lcNablaF);
    r.torsionCheck = maxAbsDiff(torsionOf(r.connection, f.g).lowered, r.torsion);
    r.metricity = einsteinMetricityResidual(f, r.connection);
    r.nablaGForm = maxAbsDiff(r.nablaG, tabulate3(n, [&](Arg X, Arg Y, Arg Z) {
                                  return -(dF(X, Y, A(Z)) - dF(X, A(Y), Z)) / 6.0;
                              }));
    r.nablaFForm = maxAbsDiff(r.nablaF, tabulate3(n, [&](Arg X, Arg Y, Arg Z) {
                                  return (2.0 * dF(X, Y, Z) - dF(X, Y, A(Z)) - dF(X, A(Y), Z)) / 6.0;
                              }));
    Tensor3 ff2 = tabulate3(n, [&](Arg X, Arg Y, Arg Z) {
        return (dF(X, Y, Z) + dF(X, A(Y), A(Z))) / 3.0 - (dF(A(X), Y, A(Z)) + dF(A(X), A(Y), Z)) / 6.0;
    });
    r.lcNablaFForm = maxAbsDiff(d.lcNablaF, ff2);
    r.lcNablaAForm = maxAbsDiff(d.lcNablaA, ff2);
    r.nablaGCombined = maxAbsDiff(r.nablaG + r.nablaF, tabulate3(n, [&](Arg X, Arg Y, Arg Z) {
                                      return (dF(X, Y, Z) - dF(X, Y, A(Z))) / 3.0;
                                  }));
    r.nablaFviaLc = maxOver3(n, [&](Arg X, Arg Y, Arg Z) {
        return nF(X, Y, Z) -
               (lcF(X, Y, Z) - (dF(X, Y, A(Z)) + dF(Z, X, A(Y))) / 6.0 -
                (2.0 * dF(X, A(Y), A(Z)) + dF(Z, A(Y), A(X)) + dF(Y, A(X), A(Z))) / 6.0);
    });
    return r;
}

} // namespace ngtlab
