#include <doctest.h>

#include <random>

#include "ngtlab/manifolds.hpp"
#include "ngtlab/structures.hpp"
#include "support/random_fields.hpp"

using namespace ngtlab;
namespace ts = testsupport;
using ngtlab::expr::Expr;

namespace {

std::vector<PointFrame> frames(const Manifold& m, int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<PointFrame> out;
    while (static_cast<int>(out.size()) < count) {
        Point p = ts::randomPoint(rng, m.domain);
        if (m.chart.contains(p))
            out.push_back(makeFrame(m, p));
    }
    return out;
}

double residualOf(const Findings& fs, const std::string& name) {
    auto r = fs.residual(name);
    REQUIRE_MESSAGE(r.has_value(), name);
    return *r;
}

double maxIdentity(const Findings& fs) {
    double m = 0.0;
    for (const Finding& f : fs.items())
        if (f.role == Role::Identity)
            m = std::max(m, f.residual);
    return m;
}

// (d eta ^ eta) with the cyclic sum, scaled.
Tensor3 wedgeVariant(const PointFrame& f, double scale, bool cyclic) {
    Matrix de = exteriorDerivative1(f.deta);
    int n = f.n;
    Tensor3 out(n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z) {
                double v = de(x, y) * f.eta(z);
                if (cyclic)
                    v += de(y, z) * f.eta(x) + de(z, x) * f.eta(y);
                out(x, y, z) = scale * v;
            }
    return out;
}

// L_xi g in coordinates.
double lieKilling(const PointFrame& f) {
    int n = f.n;
    double m = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double v = 0.0;
            for (int k = 0; k < n; ++k)
                v += f.xi(k) * f.dg(k, i, j) + f.g(k, j) * f.dxi(i, k) + f.g(i, k) * f.dxi(j, k);
            m = std::max(m, std::abs(v));
        }
    return m;
}

// A product of Givens rotations with small polynomial angles.
ts::ExprMatrix randomRotation(std::mt19937_64& rng, const Chart& chart, int n) {
    std::vector<Expr> x = ts::coordinates(chart.dim());
    ts::ExprMatrix O(static_cast<size_t>(n), std::vector<Expr>(static_cast<size_t>(n)));
    for (int i = 0; i < n; ++i)
        O[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1.0;
    int count = 1 + static_cast<int>(rng() % 3);
    for (int r = 0; r < count; ++r) {
        size_t p = rng() % static_cast<size_t>(n), q = (p + 1 + rng() % static_cast<size_t>(n - 1)) % static_cast<size_t>(n);
        size_t a = rng() % static_cast<size_t>(n), b = rng() % static_cast<size_t>(n);
        Expr theta = ts::uniform(rng, -0.4, 0.4) * x[a] + ts::uniform(rng, -0.3, 0.3) * x[a] * x[b];
        if (rng() % 4 == 0)
            theta = ts::uniform(rng, -1, 1);  // constant rotations preserve everything
        O = ts::multiply(ts::givens(static_cast<size_t>(n), p, q, theta), O);
    }
    return O;
}

} // namespace

TEST_SUITE("structures") {

TEST_CASE("classification edge cases") {
    Manifold m = manifolds::contactR3();
    m.contact->xi = TensorField::fromExprs(3, Valence{0, 1}, {0.0, 0.0, 1.0});
    auto fr = frames(m, 3, 61);
    CHECK_THROWS_AS(classify(fr, 1e-9), Error);

    Manifold z = manifolds::contactR3();
    z.metric = GeneralizedMetric::fromTwoForm(z.metric.g(),
                                              TensorField::fromExprs(3, Valence{2, 0}, std::vector<Expr>(9), Symmetry::Skew));
    CHECK((classify(frames(z, 5, 62), 1e-9) == StructureKind::Generic));
    CHECK((classify(std::vector<PointFrame>{}, 1e-9) == StructureKind::Generic));
}

TEST_CASE("Hermitian skew torsion") {
    for (const PointFrame& f : frames(manifolds::s6NearlyKahler(), 10, 63)) {
        StructureTorsion r = hermitianSkewTorsion(f, 1e-8);
        REQUIRE(r.torsion);
        CHECK(r.torsionSkew < 1e-9);
        CHECK(r.nablaG < 1e-9);
        CHECK(r.nablaF < 1e-8);
    }
    PointFrame d = makeFrame(manifolds::deformedHermitianR4(), std::vector<double>{0.7, 0.1, -0.2, 0.3});
    StructureTorsion r = hermitianSkewTorsion(d, 1e-8);
    CHECK(r.condition > 1e-3);
    CHECK_FALSE(r.torsion);
}

TEST_CASE("para-Hermitian skew torsion") {
    for (const PointFrame& f : frames(manifolds::s33NearlyParaKahler(), 10, 64)) {
        StructureTorsion r = paraHermitianSkewTorsion(f, 1e-8);
        REQUIRE(r.torsion);
        CHECK(r.nablaG < 1e-9);
        CHECK(r.nablaF < 1e-8);
        CHECK(r.torsion->maxAbs() > 1e-2);
    }
    Manifold flat = manifolds::flatParaKahler(2);
    Expr angle = Expr::variable(1, flat.chart.name(1));
    Manifold twisted = ts::conjugated(flat, ts::givens(4, 0, 2, angle), "twisted");
    auto fr = frames(twisted, 5, 65);
    CHECK((classify(fr, 1e-9) == StructureKind::AlmostParaHermitian));
    double worst = 0.0;
    for (const PointFrame& f : fr) {
        StructureTorsion r = paraHermitianSkewTorsion(f, 1e-8);
        worst = std::max(worst, r.condition);
    }
    CHECK(worst > 1e-3);
}

TEST_CASE("nearly Kaehler residual") {
    CHECK(nearlyKahlerResidual(frames(manifolds::flatKahler(2), 1, 66)[0]) == 0.0);
    for (const PointFrame& f : frames(manifolds::s6NearlyKahler(), 10, 67)) {
        CHECK(nearlyKahlerResidual(f) < 1e-8);
        CHECK(nearlyKahlerFormResidual(f) < 1e-8);
    }
    PointFrame d = makeFrame(manifolds::deformedHermitianR4(), std::vector<double>{0.7, 0.0, 0.0, 0.0});
    CHECK(nearlyKahlerResidual(d) > 1e-3);
}

TEST_CASE("Hermitian equivalence over the catalog") {
    Tolerances tol;
    for (const char* name : {"flat-kahler-4", "s6-nearly-kahler", "deformed-hermitian-r4"}) {
        Findings fs = hermitianNgtEquivalence(frames(manifolds::builtin(name), 10, 68), tol);
        INFO(name);
        CHECK(residualOf(fs, "hermitian/equivalence") == 0.0);
        if (residualOf(fs, "hermitian/skew-condition") <= 1e-8) {
            CHECK(residualOf(fs, "hermitian/torsion") < 1e-8);
            CHECK(maxIdentity(fs) < 1e-8);
        } else {
            CHECK(residualOf(fs, "hermitian/nearly-kahler") > 1e-3);
            CHECK_FALSE(fs.residual("hermitian/torsion"));
        }
    }
}

TEST_CASE("Hermitian equivalence on rotated structures") {
    std::mt19937_64 rng(69);
    Tolerances tol;
    int both = 0, neither = 0;
    for (int k = 0; k < 50; ++k) {
        Manifold base = k % 2 == 0 ? manifolds::flatKahler(2) : manifolds::s6NearlyKahler();
        if (k % 2 == 1)
            base.domain = Box::cube(6, -0.8, 0.8);
        Manifold m = ts::conjugated(base, randomRotation(rng, base.chart, base.dim()), "rotated");
        auto fr = frames(m, 4, 70 + static_cast<std::uint64_t>(k));
        REQUIRE((classify(fr, 1e-9) == StructureKind::AlmostHermitian));
        Findings fs = hermitianNgtEquivalence(fr, tol);
        CHECK(residualOf(fs, "hermitian/equivalence") == 0.0);
        bool skew = residualOf(fs, "hermitian/skew-condition") <= 1e-8;
        bool nk = residualOf(fs, "hermitian/nearly-kahler") <= 1e-8;
        CHECK(skew == nk);
        (skew ? both : neither) += 1;
        if (skew)
            CHECK(maxIdentity(fs) < 1e-7);
    }
    // both branches are exercised
    CHECK(both > 0);
    CHECK(neither > 0);
}

TEST_CASE("para-Hermitian NGT check") {
    Tolerances tol;
    Findings s = paraHermitianNgtCheck(frames(manifolds::s33NearlyParaKahler(), 10, 71), tol);
    CHECK(residualOf(s, "para-hermitian/nijenhuis-skew") < 1e-8);
    CHECK(residualOf(s, "para-hermitian/nearly-para-kahler") < 1e-8);
    CHECK(maxIdentity(s) < 1e-8);
    Findings f = paraHermitianNgtCheck(frames(manifolds::flatParaKahler(2), 3, 72), tol);
    CHECK(maxIdentity(f) == 0.0);
}

TEST_CASE("almost nearly cosymplectic residual") {
    for (const PointFrame& f : frames(manifolds::nkTimesLine(), 10, 73))
        CHECK(almostNearlyCosymplecticResidual(f) < 1e-8);
    CHECK(almostNearlyCosymplecticResidual(frames(manifolds::flatKahlerTimesLine(), 1, 74)[0]) == 0.0);
    CHECK(almostNearlyCosymplecticResidual(frames(manifolds::contactR3(), 1, 75)[0]) > 1e-2);
    CHECK_THROWS_AS(almostNearlyCosymplecticResidual(frames(manifolds::flatKahler(2), 1, 76)[0]), Error);
}

TEST_CASE("contact pipeline") {
    Tolerances tol;
    SUBCASE("nearly Kaehler times a line") {
        Findings fs = contactNgtPipeline(frames(manifolds::nkTimesLine(), 10, 77), tol);
        CHECK(residualOf(fs, "contact/almost-nearly-cosymplectic") < 1e-8);
        CHECK(residualOf(fs, "contact/torsion") < 1e-8);
        CHECK(residualOf(fs, "contact/killing") < 1e-8);
        CHECK(residualOf(fs, "contact/closed-eta-parallel") < 1e-8);
        CHECK(maxIdentity(fs) < 1e-8);
    }
    SUBCASE("standard contact structure") {
        Findings fs = contactNgtPipeline(frames(manifolds::contactR3(), 10, 78), tol);
        CHECK(residualOf(fs, "contact/almost-nearly-cosymplectic") == doctest::Approx(1.0 / 6.0).epsilon(1e-9));
        CHECK(residualOf(fs, "contact/blair") < 1e-12);
        CHECK(residualOf(fs, "contact/lie-derivative-F") < 1e-12);
        CHECK_FALSE(fs.residual("contact/torsion"));
    }
    SUBCASE("closed eta branch") {
        Findings fs = contactNgtPipeline(frames(manifolds::flatKahlerTimesLine(), 3, 79), tol);
        CHECK(residualOf(fs, "contact/normal-cosymplectic") == 0.0);
        CHECK(maxIdentity(fs) == 0.0);
    }
}

TEST_CASE("contact skew torsion pins the wedge convention") {
    for (const PointFrame& f : frames(manifolds::contactR3(), 10, 80)) {
        StructureTorsion r = contactSkewTorsion(f, 1e-8);
        REQUIRE(r.torsion);
        CHECK(r.nablaG < 1e-12);
        CHECK(r.nablaF < 1e-12);
        CHECK(r.nablaEta < 1e-12);
        CHECK(r.nablaXi < 1e-12);
        CHECK(maxAbsDiff(*r.torsion, wedgeVariant(f, 1.0, true)) < 1e-12);
        CHECK(maxAbsDiff(*r.torsion, wedgeVariant(f, 0.5, true)) > 0.1);
        CHECK(maxAbsDiff(*r.torsion, wedgeVariant(f, 1.0, false)) > 0.1);
    }
}

TEST_CASE("Killing residual against coordinates") {
    for (const char* name : {"contact-r3", "nk-times-line", "warped-cosymplectic-r3", "warped-paracontact-r3"})
        for (const PointFrame& f : frames(manifolds::builtin(name), 5, 81)) {
            INFO(name);
            CHECK(killingResidual(f) == doctest::Approx(lieKilling(f)).epsilon(1e-9).scale(1.0));
        }
    CHECK(killingResidual(frames(manifolds::warpedCosymplecticR3(), 1, 82)[0]) > 1e-2);
}

TEST_CASE("the corollary torsion on nk x line is the Gray torsion") {
    for (const PointFrame& f : frames(manifolds::nkTimesLine(), 10, 83)) {
        StructureTorsion r = contactSkewTorsion(f, 1e-8);
        REQUIRE(r.torsion);
        Tensor3 gray = (1.0 / 3.0) * Derived(f).dF;
        Powers P(f.A);
        Form3 g(gray, P);
        Tensor3 expected = tabulate3(f.n, [&](Arg X, Arg Y, Arg Z) { return g(X, Y, A(Z)); });
        CHECK(maxAbsDiff(*r.torsion, expected) < 1e-9);
        CHECK(r.nablaF < 1e-8);
    }
}

TEST_CASE("paracontact pipeline") {
    Tolerances tol;
    for (const char* name : {"para-product-line", "s33-times-line"}) {
        Findings fs = paracontactNgtPipeline(frames(manifolds::builtin(name), 10, 84), tol);
        INFO(name);
        CHECK(residualOf(fs, "paracontact/ngt-condition") < 1e-8);
        CHECK(maxIdentity(fs) < 1e-8);
    }
    Manifold base = manifolds::paraProductLine();
    Expr angle = 0.5 * Expr::variable(1, base.chart.name(1));
    Manifold twisted = ts::conjugated(base, ts::givens(5, 0, 2, angle), "twisted");
    auto fr = frames(twisted, 5, 85);
    CHECK((classify(fr, 1e-9) == StructureKind::AlmostParaContact));
    Findings fs = paracontactNgtPipeline(fr, tol);
    CHECK(residualOf(fs, "paracontact/ngt-condition") > 1e-3);
    CHECK_FALSE(fs.residual("paracontact/ngt-skew-condition"));
}

TEST_CASE("structure torsion findings") {
    Tolerances tol;
    Findings h = structureTorsionFindings(frames(manifolds::s6NearlyKahler(), 5, 86), StructureKind::AlmostHermitian, tol);
    CHECK(residualOf(h, "hermitian-connection/nabla-F") < 1e-8);
    Findings c = structureTorsionFindings(frames(manifolds::contactR3(), 5, 87), StructureKind::AlmostContact, tol);
    CHECK(residualOf(c, "contact-connection/d-eta-torsion") < 1e-12);
    CHECK(maxIdentity(c) < 1e-12);
    Findings w = structureTorsionFindings(frames(manifolds::warpedCosymplecticR3(), 5, 88), StructureKind::AlmostContact, tol);
    CHECK(residualOf(w, "contact-connection/killing") > 1e-2);
    CHECK_FALSE(w.residual("contact-connection/nabla-g"));
    CHECK(structureTorsionFindings({}, StructureKind::Generic, tol).empty());
}

}
