#include "ngtlab/structures.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace ngtlab {

const char* toString(StructureKind k) {
    switch (k) {
    case StructureKind::Generic:
        return "generic";
    case StructureKind::AlmostHermitian:
        return "almost-hermitian";
    case StructureKind::AlmostParaHermitian:
        return "almost-para-hermitian";
    case StructureKind::AlmostContact:
        return "almost-contact";
    case StructureKind::AlmostParaContact:
        return "almost-paracontact";
    }
    return "?";
}

double Compatibility::worst() const {
    return std::max({square, metric, gSkew, reeb, normalization, duality, degenerate});
}

namespace {

bool isContactKind(StructureKind k) {
    return k == StructureKind::AlmostContact || k == StructureKind::AlmostParaContact;
}

// Per-point forms shared by the structure checks. Not copyable: the forms
// point into `d`.
struct Ctx {
    explicit Ctx(const PointFrame& frame)
        : f(frame),
          n(frame.n),
          d(frame),
          deta(frame.hasContact ? exteriorDerivative1(frame.deta) : Matrix(frame.n)),
          lcEta(frame.hasContact ? nablaCovector(d.lc, frame.eta, frame.deta) : Matrix(frame.n)),
          lcXi(lowerXi()),
          dF(d.dF, d.powers),
          N(d.N.lowered, d.powers),
          lcA(d.lcNablaA, d.powers),
          lcF(d.lcNablaF, d.powers),
          dEta(deta, d.powers),
          lcEtaF(lcEta, d.powers),
          lcXiF(lcXi, d.powers),
          g(frame.g, d.powers),
          eta(frame.hasContact ? frame.eta : Vector(frame.n), d.powers) {}
    Ctx(const Ctx&) = delete;
    Ctx& operator=(const Ctx&) = delete;

    const PointFrame& f;
    int n;
    Derived d;
    Matrix deta;
    Matrix lcEta;  // (nabla^g_i eta)_j
    Matrix lcXi;  // g(nabla^g_i xi, e_j)
    Form3 dF, N, lcA, lcF;
    Form2 dEta, lcEtaF, lcXiF, g;
    Form1 eta;

    Arg xi() const { return vectorArg(f.xi); }

    // N^ac = N + d eta (x) eta (sign +1) or N^apc = N - d eta (x) eta (sign -1).
    double Nc(Arg X, Arg Y, Arg Z, double sign) const { return N(X, Y, Z) + sign * dEta(X, Y) * eta(Z); }

    // (d eta ^ eta)(X,Y,Z) = d eta(X,Y) eta(Z) + cyclic.
    double wedge(Arg X, Arg Y, Arg Z) const {
        return dEta(X, Y) * eta(Z) + dEta(Y, Z) * eta(X) + dEta(Z, X) * eta(Y);
    }

private:
    Matrix lowerXi() const {
        Matrix out(f.n);
        if (!f.hasContact)
            return out;
        Matrix nx = nablaVector(d.lc, f.xi, f.dxi);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double v = 0.0;
                for (int k = 0; k < n; ++k)
                    v += f.g(j, k) * nx(i, k);
                out(i, j) = v;
            }
        return out;
    }
};

double squareModel(StructureKind k, int row, int col, const PointFrame& f) {
    double delta = row == col ? 1.0 : 0.0;
    switch (k) {
    case StructureKind::AlmostHermitian:
        return -delta;
    case StructureKind::AlmostParaHermitian:
        return delta;
    case StructureKind::AlmostContact:
        return -delta + f.xi(row) * f.eta(col);
    case StructureKind::AlmostParaContact:
        return delta - f.xi(row) * f.eta(col);
    case StructureKind::Generic:
        break;
    }
    return 0.0;
}

double metricModel(StructureKind k, int i, int j, const PointFrame& f) {
    switch (k) {
    case StructureKind::AlmostHermitian:
        return f.g(i, j);
    case StructureKind::AlmostParaHermitian:
        return -f.g(i, j);
    case StructureKind::AlmostContact:
        return f.g(i, j) - f.eta(i) * f.eta(j);
    case StructureKind::AlmostParaContact:
        return -f.g(i, j) + f.eta(i) * f.eta(j);
    case StructureKind::Generic:
        break;
    }
    return 0.0;
}

Connection skewConnection(const Ctx& c, const Tensor3& T) { return addLowered(c.d.lc, 0.5 * T, c.f.gInv); }

void verifyTorsion(const Ctx& c, StructureTorsion& r, Tensor3 T) {
    const PointFrame& f = c.f;
    Connection con = skewConnection(c, T);
    r.torsionSkew = totalSkewResidual(T);
    r.nablaG = nablaBilinear(con, f.g, f.dg).maxAbs();
    r.nablaF = nablaBilinear(con, f.F, f.dF).maxAbs();
    if (f.hasContact) {
        r.nablaEta = nablaCovector(con, f.eta, f.deta).maxAbs();
        r.nablaXi = nablaVector(con, f.xi, f.dxi).maxAbs();
        double m = 0.0;
        for (int i = 0; i < f.n; ++i)
            for (int j = 0; j < f.n; ++j) {
                double v = 0.0;
                for (int p = 0; p < f.n; ++p)
                    v += f.xi(p) * T(p, i, j);
                m = std::max(m, std::abs(c.deta(i, j) - v));
            }
        r.etaFromTorsion = m;
    }
    r.torsion = std::move(T);
    r.connection = std::move(con);
}

double totalSkewOf(int n, const std::function<double(Arg, Arg, Arg)>& t) {
    return maxOver3(n, [&](Arg X, Arg Y, Arg Z) { return t(X, Y, Z) + t(X, Z, Y); });
}

bool passes(double r, double tol) { return std::isfinite(r) && r <= tol; }

using PerFrame = std::function<void(const Ctx&, Findings&)>;

Findings overFrames(std::span<const PointFrame> frames, const PerFrame& fn) {
    Findings out;
    for (const PointFrame& f : frames) {
        Ctx c(f);
        Findings one;
        fn(c, one);
        out.merge(one);
    }
    return out;
}

bool allPass(const Findings& fs, const std::string& name, double tol) {
    auto r = fs.residual(name);
    return r && passes(*r, tol);
}

} // namespace

void recordNgtSkewPipeline(const PointFrame& f, Findings& out, const std::string& prefix, double tol) {
    try {
        NgtSkewResult r = ngtSkewPipeline(f, tol);
        out.add(prefix + "skew-condition", "skew1", Role::Identity, r.condition);
        out.add(prefix + "torsion", "tordfnew", Role::Identity, r.torsionCheck);
        out.add(prefix + "metricity", "metein1", Role::Identity, r.metricity);
        out.add(prefix + "nabla-g", "skew0", Role::Identity, r.nablaGForm);
        out.add(prefix + "nabla-F", "skew0", Role::Identity, r.nablaFForm);
        out.add(prefix + "levi-civita-nabla-F", "ff2", Role::Identity, r.lcNablaFForm);
        out.add(prefix + "levi-civita-nabla-A", "ff2", Role::Identity, r.lcNablaAForm);
        out.add(prefix + "nabla-G", "pp1", Role::Identity, r.nablaGCombined);
        out.add(prefix + "nabla-F-from-levi-civita", "ff1", Role::Identity, r.nablaFviaLc);
    } catch (const PreconditionFailure& e) {
        out.add(prefix + "skew-condition", "skew1", Role::Identity, e.residual());
    }
}

Compatibility compatibility(const PointFrame& f, StructureKind k) {
    Compatibility c;
    int n = f.n;
    if (k == StructureKind::Generic)
        return c;
    if (isContactKind(k) && !f.hasContact)
        throw Error(std::string(toString(k)) + " needs eta and xi");
    Matrix A2 = matmul(f.A, f.A);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            c.square = std::max(c.square, std::abs(A2(i, j) - squareModel(k, i, j, f)));
            double gAA = 0.0, gAY = 0.0;
            for (int p = 0; p < n; ++p)
                for (int q = 0; q < n; ++q)
                    gAA += f.g(p, q) * f.A(p, i) * f.A(q, j);
            for (int p = 0; p < n; ++p)
                gAY += f.g(p, j) * f.A(p, i) + f.g(i, p) * f.A(p, j);
            c.metric = std::max(c.metric, std::abs(gAA - metricModel(k, i, j, f)));
            c.gSkew = std::max(c.gSkew, std::abs(gAY));
        }
    if (isContactKind(k)) {
        c.reeb = matvec(f.A, f.xi).maxAbs();
        c.normalization = std::abs(dot(f.eta, f.xi) - 1.0);
        for (int j = 0; j < n; ++j) {
            double gx = 0.0, Fx = 0.0;
            for (int p = 0; p < n; ++p) {
                gx += f.g(p, j) * f.xi(p);
                Fx += f.F(p, j) * f.xi(p);
            }
            c.duality = std::max(c.duality, std::abs(f.eta(j) - gx));
            c.degenerate = std::max(c.degenerate, std::abs(Fx));
        }
    }
    return c;
}

StructureKind classify(std::span<const PointFrame> frames, double tol) {
    bool contact = !frames.empty() && frames.front().hasContact;
    if (contact)
        for (const PointFrame& f : frames) {
            double r = std::abs(dot(f.eta, f.xi) - 1.0);
            if (r > tol)
                throw Error("inconsistent contact pair: eta(xi) = " + std::to_string(dot(f.eta, f.xi)));
        }
    const StructureKind order[] = {StructureKind::AlmostHermitian, StructureKind::AlmostParaHermitian,
                                   StructureKind::AlmostContact, StructureKind::AlmostParaContact};
    for (StructureKind k : order) {
        if (isContactKind(k) && !contact)
            continue;
        bool ok = !frames.empty();
        for (const PointFrame& f : frames)
            if (!passes(compatibility(f, k).worst(), tol)) {
                ok = false;
                break;
            }
        if (ok)
            return k;
    }
    return StructureKind::Generic;
}

StructureTorsion hermitianSkewTorsion(const PointFrame& f, double tol) {
    Ctx c(f);
    StructureTorsion r;
    r.condition = totalSkewOf(c.n, [&](Arg X, Arg Y, Arg Z) { return c.N(X, Y, Z); });
    if (passes(r.condition, tol))
        verifyTorsion(c, r, tabulate3(c.n, [&](Arg X, Arg Y, Arg Z) {
                          return c.N(X, Y, Z) + c.dF(A(X), A(Y), A(Z));
                      }));
    return r;
}

StructureTorsion paraHermitianSkewTorsion(const PointFrame& f, double tol) {
    Ctx c(f);
    StructureTorsion r;
    r.condition = totalSkewOf(c.n, [&](Arg X, Arg Y, Arg Z) { return c.N(X, Y, Z); });
    if (passes(r.condition, tol))
        verifyTorsion(c, r, tabulate3(c.n, [&](Arg X, Arg Y, Arg Z) {
                          return -c.N(X, Y, Z) + c.dF(A(X), A(Y), A(Z));
                      }));
    return r;
}

StructureTorsion contactSkewTorsion(const PointFrame& f, double tol) {
    if (!f.hasContact)
        throw Error("contactSkewTorsion needs eta and xi");
    Ctx c(f);
    StructureTorsion r;
    r.condition = totalSkewOf(c.n, [&](Arg X, Arg Y, Arg Z) { return c.Nc(X, Y, Z, 1.0); });
    r.killing = killingResidual(f);
    if (passes(r.condition, tol) && passes(r.killing, tol))
        verifyTorsion(c, r, tabulate3(c.n, [&](Arg X, Arg Y, Arg Z) {
                          return c.N(X, Y, Z) + c.eta(Z) * c.dEta(X, Y) + c.dF(A(X), A(Y), A(Z)) +
                                 c.eta(Z) * c.dEta(A(X), A(Y)) + c.eta(Y) * c.dEta(A(Z), A(X)) +
                                 c.eta(X) * c.dEta(A(Y), A(Z));
                      }));
    return r;
}

StructureTorsion paracontactSkewTorsion(const PointFrame& f, double tol) {
    if (!f.hasContact)
        throw Error("paracontactSkewTorsion needs eta and xi");
    Ctx c(f);
    StructureTorsion r;
    r.condition = totalSkewOf(c.n, [&](Arg X, Arg Y, Arg Z) { return c.Nc(X, Y, Z, -1.0); });
    r.killing = killingResidual(f);
    if (passes(r.condition, tol) && passes(r.killing, tol))
        verifyTorsion(c, r, tabulate3(c.n, [&](Arg X, Arg Y, Arg Z) {
                          return -c.N(A(X), A(Y), Z) + c.dF(A(X), A(Y), A(Z)) + c.eta(X) * c.dEta(Y, Z) +
                                 c.eta(Y) * c.dEta(Z, X);
                      }));
    return r;
}

double nearlyKahlerResidual(const PointFrame& f) {
    Derived d(f);
    Tensor3 nA = nablaEndomorphism(d.lc, f.A, f.dA);  // (i, k, j)
    double m = 0.0;
    for (int i = 0; i < f.n; ++i)
        for (int k = 0; k < f.n; ++k)
            m = std::max(m, std::abs(nA(i, k, i)));
    return m;
}

double nearlyKahlerFormResidual(const PointFrame& f) {
    Derived d(f);
    double m = 0.0;
    for (int i = 0; i < f.n; ++i)
        for (int j = 0; j < f.n; ++j)
            for (int k = 0; k < f.n; ++k)
                m = std::max(m, std::abs(d.lcNablaF(i, j, k) + d.lcNablaF(j, i, k)));
    return m;
}

double killingResidual(const PointFrame& f) {
    if (!f.hasContact)
        throw Error("killingResidual needs xi");
    Ctx c(f);
    return maxOver2(f.n, [&](Arg X, Arg Y) { return c.lcXiF(X, Y) + c.lcXiF(Y, X); });
}

double almostNearlyCosymplecticResidual(const PointFrame& f) {
    if (!f.hasContact)
        throw Error("almostNearlyCosymplecticResidual needs eta and xi");
    Ctx c(f);
    return maxOver3(f.n, [&](Arg X, Arg Y, Arg Z) {
        return c.lcA(X, Y, Z) - (-c.dF(A(X), A(Y), Z) / 3.0 + c.eta(Z) * c.dEta(Y, A(X)) / 6.0 -
                                 0.5 * c.eta(Y) * c.dEta(A(Z), X));
    });
}

double paracontactNgtResidual(const PointFrame& f) {
    Ctx c(f);
    return maxOver3(f.n, [&](Arg X, Arg Y, Arg Z) {
        return c.lcA(X, Y, Z) - ((c.dF(X, Y, Z) + c.dF(X, A(Y), A(Z))) / 3.0 -
                                 (c.dF(A(X), Y, A(Z)) + c.dF(A(X), A(Y), Z)) / 6.0);
    });
}

Findings hermitianNgtEquivalence(std::span<const PointFrame> frames, const Tolerances& tol) {
    double t = tol.identity;
    int oneSided = 0;
    Findings out = overFrames(frames, [&](const Ctx& c, Findings& fs) {
        double s = ngtSkewConditionResidual(c.f);
        double k = nearlyKahlerResidual(c.f);
        fs.add("hermitian/skew-condition", "skew1", Role::Condition, s);
        fs.add("hermitian/nearly-kahler", "nk2", Role::Condition, k);
        fs.add("hermitian/nearly-kahler-form", "nk2", Role::Condition, nearlyKahlerFormResidual(c.f));
        if (passes(s, t) != passes(k, t))
            ++oneSided;
    });
    out.add("hermitian/equivalence", "nika", Role::Identity, oneSided == 0 ? 0.0 : 1.0);
    if (!allPass(out, "hermitian/skew-condition", t))
        return out;

    out.merge(overFrames(frames, [&](const Ctx& c, Findings& fs) {
        recordNgtSkewPipeline(c.f, fs, "hermitian/ngt-", t);
        int n = c.n;
        fs.add("hermitian/dF-type", "dfah", Role::Identity, maxOver3(n, [&](Arg X, Arg Y, Arg Z) {
                   double a = c.dF(X, Y, A(Z)), b = c.dF(X, A(Y), Z), e = c.dF(A(X), Y, Z),
                          h = -c.dF(A(X), A(Y), A(Z));
                   return std::max({std::abs(a - b), std::abs(b - e), std::abs(e - h)});
               }));
        fs.add("hermitian/nijenhuis-dF", "nika", Role::Identity, maxOver3(n, [&](Arg X, Arg Y, Arg Z) {
                   return c.N(X, Y, Z) - 4.0 / 3.0 * c.dF(X, Y, A(Z));
               }));
        fs.add("hermitian/nijenhuis-skew", "skewah", Role::Identity, maxOver3(n, [&](Arg X, Arg Y, Arg Z) {
                   return c.N(X, Y, Z) - (c.dF(X, Y, A(Z)) + (c.dF(A(X), Y, Z) + c.dF(X, A(Y), Z) +
                                                              c.dF(A(X), A(Y), A(Z))) /
                                                                 3.0);
               }));
        double torsion = maxOver3(n, [&](Arg X, Arg Y, Arg Z) {
            return -c.dF(X, Y, Z) / 3.0 - c.N(X, Y, A(Z)) / 4.0;
        });
        fs.add("hermitian/torsion", "nk3", Role::Identity, torsion);
        Connection con = ngtSkewConnection(c.f);
        Connection viaN = addLowered(c.d.lc, tabulate3(n, [&](Arg X, Arg Y, Arg Z) {
                                         return c.N(X, Y, A(Z)) / 8.0;
                                     }),
                                     c.f.gInv);
        Connection viaDF = addLowered(c.d.lc, (-1.0 / 6.0) * c.d.dF, c.f.gInv);
        fs.add("hermitian/connection", "nika", Role::Identity,
               std::max(maxAbsDiff(con.gamma, viaN.gamma), maxAbsDiff(con.gamma, viaDF.gamma)));
        fs.add("hermitian/nabla-g", "nika", Role::Identity, nablaBilinear(con, c.f.g, c.f.dg).maxAbs());
        Tensor3 nF = nablaBilinear(con, c.f.F, c.f.dF);
        fs.add("hermitian/nabla-F", "nika", Role::Identity, maxAbsDiff(nF, tabulate3(n, [&](Arg X, Arg Y, Arg Z) {
                                                                  return (c.dF(X, Y, Z) - c.dF(X, Y, A(Z))) / 3.0;
                                                              })));
    }));
    return out;
}

Findings paraHermitianNgtCheck(std::span<const PointFrame> frames, const Tolerances& tol) {
    double t = tol.identity;
    Findings out = overFrames(frames, [&](const Ctx& c, Findings& fs) {
        fs.add("para-hermitian/nijenhuis-skew", "ngtskewp", Role::Condition,
               totalSkewOf(c.n, [&](Arg X, Arg Y, Arg Z) { return c.N(X, Y, Z); }));
    });
    if (!allPass(out, "para-hermitian/nijenhuis-skew", t))
        return out;

    bool nearlyPara = true;
    for (const PointFrame& f : frames)
        nearlyPara = nearlyPara && passes(nearlyKahlerResidual(f), t);

    out.merge(overFrames(frames, [&](const Ctx& c, Findings& fs) {
        recordNgtSkewPipeline(c.f, fs, "para-hermitian/ngt-", t);
        int n = c.n;
        fs.add("para-hermitian/skew-condition-para-form", "ngtskewp", Role::Identity,
               maxOver3(n, [&](Arg X, Arg Y, Arg Z) {
                   return c.N(X, Y, Z) -
                          (c.dF(X, Y, A(Z)) + c.dF(A(X), Y, Z) + c.dF(X, A(Y), Z) + c.dF(A(X), A(Y), A(Z))) / 3.0;
               }));
        if (nearlyPara) {
            fs.add("para-hermitian/nearly-para-kahler", "nk2", Role::Identity, nearlyKahlerResidual(c.f));
            fs.add("para-hermitian/nijenhuis-dF", "ngtskewp", Role::Identity, maxOver3(n, [&](Arg X, Arg Y, Arg Z) {
                       return c.N(X, Y, Z) - 4.0 / 3.0 * c.dF(X, Y, A(Z));
                   }));
            Connection con = ngtSkewConnection(c.f);
            fs.add("para-hermitian/nabla-g", "ngtskewp", Role::Identity,
                   nablaBilinear(con, c.f.g, c.f.dg).maxAbs());
        }
    }));
    return out;
}

Findings contactNgtPipeline(std::span<const PointFrame> frames, const Tolerances& tol) {
    double t = tol.identity;
    Findings out = overFrames(frames, [&](const Ctx& c, Findings& fs) {
        fs.add("contact/almost-nearly-cosymplectic", "ff3f", Role::Condition, almostNearlyCosymplecticResidual(c.f));
        // Identities that hold on every almost contact metric manifold.
        fs.add("contact/blair", "Problem", Role::Identity, maxOver3(c.n, [&](Arg X, Arg Y, Arg Z) {
                   return 2.0 * c.lcA(X, Y, Z) -
                          (c.dF(X, Y, Z) - c.dF(X, A(Y), A(Z)) + c.Nc(Y, Z, A(X), 1.0) +
                           (c.dEta(A(Y), Z) - c.dEta(A(Z), Y)) * c.eta(X) - c.dEta(X, A(Y)) * c.eta(Z) +
                           c.dEta(X, A(Z)) * c.eta(Y));
               }));
        const PointFrame& f = c.f;
        Matrix lie(c.n);  // (L_xi F)_ij from partial derivatives
        for (int i = 0; i < c.n; ++i)
            for (int j = 0; j < c.n; ++j) {
                double v = 0.0;
                for (int k = 0; k < c.n; ++k)
                    v += f.xi(k) * f.dF(k, i, j) + f.F(k, j) * f.dxi(i, k) + f.F(i, k) * f.dxi(j, k);
                lie(i, j) = v;
            }
        Form2 lieF(lie, c.d.powers);
        fs.add("contact/lie-derivative-F", "lieF", Role::Identity, maxOver2(c.n, [&](Arg X, Arg Y) {
                   return lieF(X, Y) - (c.lcF(c.xi(), X, Y) - c.lcXiF(X, A(Y)) + c.lcXiF(Y, A(X)));
               }));
    });
    if (!allPass(out, "contact/almost-nearly-cosymplectic", t))
        return out;

    double maxDEta = 0.0, maxNac = 0.0;
    for (const PointFrame& f : frames) {
        Ctx c(f);
        maxDEta = std::max(maxDEta, c.deta.maxAbs());
        maxNac = std::max(maxNac, maxOver3(c.n, [&](Arg X, Arg Y, Arg Z) { return c.Nc(X, Y, Z, 1.0); }));
    }

    out.merge(overFrames(frames, [&](const Ctx& c, Findings& fs) {
        int n = c.n;
        Arg xi = c.xi();
        recordNgtSkewPipeline(c.f, fs, "contact/ngt-", t);
        fs.add("contact/torsion", "acnika", Role::Identity, maxOver3(n, [&](Arg X, Arg Y, Arg Z) {
                   return -c.dF(X, Y, Z) / 3.0 -
                          (-c.N(A(X), A(Y), A(Z)) / 4.0 +
                           (c.eta(X) * c.dEta(Y, A(Z)) + c.eta(Y) * c.dEta(Z, A(X)) + c.eta(Z) * c.dEta(X, A(Y))) /
                               3.0);
               }));
        Connection con = ngtSkewConnection(c.f);
        Connection formula = addLowered(c.d.lc, tabulate3(n, [&](Arg X, Arg Y, Arg Z) {
                                            return -c.dF(X, Y, Z) / 6.0 +
                                                   (c.eta(X) * c.dEta(Y, Z) + c.eta(Y) * c.dEta(X, Z)) / 6.0;
                                        }),
                                        c.f.gInv);
        fs.add("contact/connection", "acnika", Role::Identity, maxAbsDiff(con.gamma, formula.gamma));
        Tensor3 ng = nablaBilinear(con, c.f.g, c.f.dg);
        Tensor3 nf = nablaBilinear(con, c.f.F, c.f.dF);
        auto etaTerm = [&](Arg X, Arg Y, Arg Z) {
            return (c.eta(Y) * c.dEta(Z, X) + c.eta(Z) * c.dEta(Y, X)) / 6.0;
        };
        fs.add("contact/nabla-g", "acnika", Role::Identity, maxAbsDiff(ng, tabulate3(n, etaTerm)));
        fs.add("contact/nabla-F", "acnika", Role::Identity, maxAbsDiff(nf, tabulate3(n, [&](Arg X, Arg Y, Arg Z) {
                                                                 return (c.dF(X, Y, Z) - c.dF(X, Y, A(Z))) / 3.0 -
                                                                        etaTerm(X, Y, Z);
                                                             })));
        fs.add("contact/levi-civita-eta", "kill", Role::Identity, maxOver2(n, [&](Arg X, Arg Z) {
                   return std::max(std::abs(c.lcEtaF(X, Z) - c.lcXiF(X, Z)),
                                   std::abs(c.lcEtaF(X, Z) - (c.dF(X, A(Z), xi) / 3.0 + c.dF(A(X), Z, xi) / 6.0)));
               }));
        fs.add("contact/d-eta", "xi1", Role::Identity, maxOver2(n, [&](Arg X, Arg Z) {
                   return std::max({std::abs(c.dEta(X, Z) - 0.5 * (c.dF(X, A(Z), xi) + c.dF(A(X), Z, xi))),
                                    std::abs(c.dEta(X, xi)), std::abs(c.dEta(A(X), Z) - c.dEta(X, A(Z)))});
               }));
        fs.add("contact/d-eta-from-dF", "dfdet", Role::Identity, maxOver2(n, [&](Arg Y, Arg Z) {
                   double e = c.dEta(Y, Z);
                   return std::max(std::abs(c.dF(Y, A(Z), xi) - e), std::abs(c.dF(A(Y), Z, xi) - e));
               }));
        fs.add("contact/levi-civita-eta-half-d-eta", "kill1", Role::Identity,
               maxOver2(n, [&](Arg X, Arg Y) { return c.lcEtaF(X, Y) - 0.5 * c.dEta(X, Y); }));
        fs.add("contact/nijenhuis-xi", "nijxi", Role::Identity, maxOver2(n, [&](Arg X, Arg Y) {
                   double e = c.dEta(X, Y);
                   return std::max(std::abs(c.N(X, Y, xi) - e), std::abs(c.N(xi, X, Y) - e));
               }));
        fs.add("contact/nijenhuis", "skewacB2", Role::Identity, maxOver3(n, [&](Arg X, Arg Y, Arg Z) {
                   return c.N(X, Y, Z) - (-4.0 / 3.0 * c.dF(A(X), A(Y), A(Z)) + c.wedge(X, Y, Z));
               }));
        fs.add("contact/nijenhuis-total-skew", "skewacB2", Role::Identity,
               totalSkewOf(n, [&](Arg X, Arg Y, Arg Z) { return c.N(X, Y, Z); }));
        fs.add("contact/dF-sum", "finac1", Role::Identity, maxOver3(n, [&](Arg X, Arg Y, Arg Z) {
                   return c.dF(A(X), A(Y), A(Z)) + c.dF(X, Y, A(Z)) -
                          (c.eta(X) * c.dEta(Y, Z) + c.eta(Y) * c.dEta(Z, X));
               }));
        fs.add("contact/lie-derivative-F-d-eta", "lieF", Role::Identity, maxOver2(n, [&](Arg X, Arg Y) {
                   return c.lcF(xi, X, Y) - c.lcXiF(X, A(Y)) + c.lcXiF(Y, A(X)) - c.dEta(Y, A(X));
               }));
        fs.add("contact/killing", "kill1", Role::Identity, killingResidual(c.f));
        if (passes(maxDEta, t))
            fs.add("contact/closed-eta-parallel", "acnika", Role::Identity, c.lcEta.maxAbs());
        if (passes(maxNac, t))
            fs.add("contact/normal-cosymplectic", "acnika", Role::Identity,
                   std::max(c.deta.maxAbs(), c.d.dF.maxAbs()));
    }));
    return out;
}

Findings paracontactNgtPipeline(std::span<const PointFrame> frames, const Tolerances& tol) {
    double t = tol.identity;
    Findings out = overFrames(frames, [&](const Ctx& c, Findings& fs) {
        fs.add("paracontact/ngt-condition", "acnikap", Role::Condition, paracontactNgtResidual(c.f));
    });
    if (!allPass(out, "paracontact/ngt-condition", t))
        return out;

    out.merge(overFrames(frames, [&](const Ctx& c, Findings& fs) {
        int n = c.n;
        Arg xi = c.xi();
        recordNgtSkewPipeline(c.f, fs, "paracontact/ngt-", t);
        fs.add("paracontact/levi-civita-eta", "xi1AP", Role::Identity, maxOver2(n, [&](Arg X, Arg Y) {
                   return std::max(std::abs(c.lcEtaF(X, Y) - c.lcXiF(X, Y)),
                                   std::abs(c.lcEtaF(X, Y) - (-c.dF(X, A(Y), xi) / 3.0 + c.dF(A(X), Y, xi) / 6.0)));
               }));
        fs.add("paracontact/d-eta", "xi1AP", Role::Identity, maxOver2(n, [&](Arg X, Arg Y) {
                   return std::max({std::abs(c.dEta(X, Y) + (c.dF(A(X), Y, xi) + c.dF(X, A(Y), xi)) / 6.0),
                                    std::abs(c.dEta(X, xi)), std::abs(c.dEta(A(X), Y) - c.dEta(X, A(Y)))});
               }));
        fs.add("paracontact/nijenhuis", "skew1AP", Role::Identity, maxOver3(n, [&](Arg X, Arg Y, Arg Z) {
                   return c.N(X, Y, Z) -
                          ((c.dF(X, Y, A(Z)) + c.dF(A(X), Y, Z) + c.dF(X, A(Y), Z) + c.dF(A(X), A(Y), A(Z))) / 3.0 -
                           c.eta(X) * c.dEta(Y, Z) - c.eta(Y) * c.dEta(Z, X) + c.eta(Z) * c.dEta(X, Y));
               }));
        fs.add("paracontact/levi-civita-A", "ZamAP", Role::Identity, maxOver3(n, [&](Arg X, Arg Y, Arg Z) {
                   return 2.0 * c.lcA(X, Y, Z) -
                          (c.dF(X, Y, Z) + c.dF(X, A(Y), A(Z)) - c.Nc(Y, Z, A(X), -1.0) +
                           (c.dEta(A(Y), Z) + c.dEta(Y, A(Z))) * c.eta(X) + c.dEta(A(Y), X) * c.eta(Z) -
                           c.dEta(A(Z), X) * c.eta(Y));
               }));
        fs.add("paracontact/nijenhuis-shifted", "ZamkAP", Role::Identity, maxOver3(n, [&](Arg X, Arg Y, Arg Z) {
                   return c.N(Y, Z, A(X)) -
                          ((c.dF(X, Y, Z) + c.dF(X, A(Y), A(Z)) + c.dF(A(X), Y, A(Z)) + c.dF(A(X), A(Y), Z)) / 3.0 +
                           2.0 * c.dEta(A(Y), Z) * c.eta(X) + c.dEta(A(Y), X) * c.eta(Z) -
                           c.dEta(A(Z), X) * c.eta(Y));
               }));
        fs.add("paracontact/nijenhuis-xi", "acnikap", Role::Identity,
               maxOver2(n, [&](Arg X, Arg Y) { return c.N(X, Y, xi) + c.dEta(X, Y); }));
        auto nAAA = [&](Arg X, Arg Y, Arg Z) { return c.N(A(X), A(Y), A(Z)); };
        fs.add("paracontact/nijenhuis-image", "acnikap", Role::Identity, maxOver3(n, [&](Arg X, Arg Y, Arg Z) {
                   return nAAA(X, Y, Z) -
                          ((c.dF(A(X), A(Y), Z) + c.dF(X, A(Y), A(Z)) + c.dF(A(X), Y, A(Z)) + c.dF(X, Y, Z)) / 3.0 +
                           2.0 * c.eta(Z) * c.dEta(A(X), Y) + 2.0 * c.eta(Y) * c.dEta(A(Z), X) +
                           2.0 * c.eta(X) * c.dEta(A(Y), Z));
               }));
        fs.add("paracontact/nijenhuis-image-skew", "acnikap", Role::Identity, totalSkewOf(n, nAAA));
        // Not implied by the condition; the warped example has a non-Killing xi.
        fs.add("paracontact/killing", "xi1AP", Role::Info, killingResidual(c.f));
    }));
    return out;
}

Findings structureTorsionFindings(std::span<const PointFrame> frames, StructureKind kind, const Tolerances& tol) {
    using Fn = StructureTorsion (*)(const PointFrame&, double);
    Fn fn = nullptr;
    std::string prefix, anchor;
    switch (kind) {
    case StructureKind::AlmostHermitian:
        fn = hermitianSkewTorsion, prefix = "hermitian-connection/", anchor = "AHskew";
        break;
    case StructureKind::AlmostParaHermitian:
        fn = paraHermitianSkewTorsion, prefix = "para-hermitian-connection/", anchor = "APHskew";
        break;
    case StructureKind::AlmostContact:
        fn = contactSkewTorsion, prefix = "contact-connection/", anchor = "AcHskew";
        break;
    case StructureKind::AlmostParaContact:
        fn = paracontactSkewTorsion, prefix = "paracontact-connection/", anchor = "AcHskewp";
        break;
    case StructureKind::Generic:
        return {};
    }
    double t = tol.identity;
    bool contact = isContactKind(kind);
    std::vector<StructureTorsion> results;
    bool ok = true;
    for (const PointFrame& f : frames) {
        results.push_back(fn(f, t));
        ok = ok && passes(results.back().condition, t) && (!contact || passes(results.back().killing, t));
    }
    Findings out;
    for (const StructureTorsion& r : results) {
        out.add(prefix + "nijenhuis-skew", anchor, Role::Condition, r.condition);
        if (contact)
            out.add(prefix + "killing", anchor, Role::Condition, r.killing);
    }
    if (!ok)
        return out;
    for (size_t i = 0; i < results.size(); ++i) {
        const StructureTorsion& r = results[i];
        out.add(prefix + "torsion-skew", anchor, Role::Identity, r.torsionSkew);
        out.add(prefix + "nabla-g", "skct", Role::Identity, r.nablaG);
        out.add(prefix + "nabla-F", "skct", Role::Identity, r.nablaF);
        if (contact) {
            out.add(prefix + "nabla-eta", anchor, Role::Identity, r.nablaEta);
            out.add(prefix + "nabla-xi", anchor, Role::Identity, r.nablaXi);
            out.add(prefix + "d-eta-torsion", "aconeta", Role::Identity, r.etaFromTorsion);
        }
        // The compact displayed torsion formulas, under the reading
        // eta(Z) * N^ac(xi, X, Y) of the last term; informational only.
        if (contact && r.torsion) {
            Ctx c(frames[i]);
            double sign = kind == StructureKind::AlmostContact ? 1.0 : -1.0;
            Form3 T(*r.torsion, c.d.powers);
            Arg xi = c.xi();
            out.add(prefix + "compact-torsion-formula", sign > 0 ? "tac1" : "AcHskewp", Role::Info,
                    maxOver3(c.n, [&](Arg X, Arg Y, Arg Z) {
                        double v = c.wedge(X, Y, Z) + sign * c.Nc(X, Y, Z, sign) + c.dF(A(X), A(Y), A(Z)) -
                                   sign * c.eta(Z) * c.Nc(xi, X, Y, 1.0);
                        return T(X, Y, Z) - v;
                    }));
        }
    }
    return out;
}

} // namespace ngtlab
