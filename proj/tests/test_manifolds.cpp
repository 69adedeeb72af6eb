#include <doctest.h>

#include <Eigen/Dense>
#include <random>

#include "ngtlab/manifolds.hpp"
#include "ngtlab/ngt.hpp"
#include "ngtlab/structures.hpp"
#include "support/random_fields.hpp"

using namespace ngtlab;
namespace ts = testsupport;

namespace {


Eigen::VectorXd cross7(const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
    Eigen::VectorXd w = Eigen::VectorXd::Zero(7);
    for (int a = 0; a < 7; ++a)
        for (int b = 0; b < 7; ++b)
            for (int c = 0; c < 7; ++c)
                w(c) += manifolds::octonionEpsilon(a + 1, b + 1, c + 1) * u(a) * v(b);
    return w;
}

std::vector<Point> samples(const Manifold& m, int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Point> out;
    while (static_cast<int>(out.size()) < count) {
        Point p = ts::randomPoint(rng, m.domain);
        if (m.chart.contains(p))
            out.push_back(p);
    }
    return out;
}

StructureKind intended(const std::string& name) {
    if (name.find("contact") != std::string::npos && name.find("para") != std::string::npos)
        return StructureKind::AlmostParaContact;
    if (name == "para-product-line" || name == "s33-times-line")
        return StructureKind::AlmostParaContact;
    if (name.find("line") != std::string::npos || name.find("contact") != std::string::npos ||
        name.find("cosymplectic") != std::string::npos)
        return StructureKind::AlmostContact;
    if (name.find("para") != std::string::npos)
        return StructureKind::AlmostParaHermitian;
    return StructureKind::AlmostHermitian;
}

} // namespace

TEST_SUITE("manifolds") {

TEST_CASE("octonion cross product") {
    std::mt19937_64 rng(51);
    for (int k = 0; k < 50; ++k) {
        Eigen::VectorXd u(7), v(7);
        for (int i = 0; i < 7; ++i) {
            u(i) = ts::uniform(rng, -1, 1);
            v(i) = ts::uniform(rng, -1, 1);
        }
        Eigen::VectorXd w = cross7(u, v);
        CHECK(std::abs(w.squaredNorm() - (u.squaredNorm() * v.squaredNorm() - std::pow(u.dot(v), 2))) < 1e-12);
        CHECK(std::abs(w.dot(u)) < 1e-12);
        // u x (u x v) = -|u|^2 v + <u,v> u
        Eigen::VectorXd t = cross7(u, w) + u.squaredNorm() * v - u.dot(v) * u;
        CHECK(t.norm() < 1e-12);
    }
    for (int a = 1; a <= 7; ++a)
        for (int b = 1; b <= 7; ++b)
            for (int c = 1; c <= 7; ++c) {
                double e = manifolds::octonionEpsilon(a, b, c);
                CHECK(e == -manifolds::octonionEpsilon(b, a, c));
                CHECK(e == manifolds::octonionEpsilon(b, c, a));
            }
}

TEST_CASE("S6: pushforward of the cross product") {
    Manifold m = manifolds::s6NearlyKahler();
    for (const Point& u : samples(m, 20, 52)) {
        Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(u.data(), 6);
        double r2 = x.squaredNorm(), s = 1 + r2;
        Eigen::VectorXd p(7);
        p << 2 * x / s, (r2 - 1) / s;
        Eigen::MatrixXd J(7, 6);  // dp/du
        for (int j = 0; j < 6; ++j) {
            for (int i = 0; i < 6; ++i)
                J(i, j) = 2 * ((i == j) / s - 2 * x(i) * x(j) / (s * s));
            J(6, j) = 4 * x(j) / (s * s);
        }
        Eigen::MatrixXd pull = (J.transpose() * J).inverse() * J.transpose();
        Eigen::MatrixXd Aref(6, 6);
        for (int j = 0; j < 6; ++j)
            Aref.col(j) = pull * cross7(p, J.col(j));
        PointFrame f = makeFrame(m, u);
        Eigen::MatrixXd gref = J.transpose() * J;
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j) {
                CHECK(std::abs(f.A(i, j) - Aref(i, j)) < 1e-12);
                CHECK(std::abs(f.g(i, j) - gref(i, j)) < 1e-12);
            }
        CHECK(maxAbsDiff(matmul(f.A, f.A), -identity(6)) < 1e-9);
        CHECK(nearlyKahlerResidual(f) < 1e-8);
    }
}

TEST_CASE("S6: the chart origin") {
    PointFrame f = makeFrame(manifolds::s6NearlyKahler(), std::vector<double>(6, 0.0));
    for (int k = 0; k < 6; ++k)
        for (int i = 0; i < 6; ++i)
            CHECK(f.A(k, i) == -manifolds::octonionEpsilon(7, i + 1, k + 1));
    CHECK(maxAbsDiff(matmul(f.A, f.A), -identity(6)) == 0.0);
    CHECK_FALSE(manifolds::s6NearlyKahler().chart.contains(std::vector<double>{11, 0, 0, 0, 0, 0}));
}

TEST_CASE("S33: split structure") {
    Manifold m = manifolds::s33NearlyParaKahler();
    for (const Point& p : samples(m, 20, 53)) {
        PointFrame f = makeFrame(m, p);
        Compatibility c = compatibility(f, StructureKind::AlmostParaHermitian);
        CHECK(c.worst() < 1e-9);
        CHECK(nearlyKahlerResidual(f) < 1e-8);
        CHECK(Derived(f).dF.maxAbs() > 1e-2);
    }
}

TEST_CASE("deformed Hermitian R4") {
    Manifold m = manifolds::deformedHermitianR4();
    std::mt19937_64 rng(54);
    for (int k = 0; k < 10; ++k) {
        PointFrame f = makeFrame(m, ts::randomPoint(rng, m.domain));
        CHECK(maxAbsDiff(matmul(f.A, f.A), -identity(4)) < 1e-12);
    }
    PointFrame f = makeFrame(m, std::vector<double>{0.7, 0.0, 0.0, 0.0});
    CHECK(nearlyKahlerResidual(f) > 1e-3);
    CHECK(ngtSkewConditionResidual(f) > 1e-3);
}

TEST_CASE("contact R3") {
    Manifold m = manifolds::contactR3();
    std::mt19937_64 rng(55);
    for (int k = 0; k < 10; ++k) {
        PointFrame f = makeFrame(m, ts::randomPoint(rng, m.domain));
        Compatibility c = compatibility(f, StructureKind::AlmostContact);
        CHECK(c.worst() < 1e-9);
        CHECK(dot(f.eta, f.xi) == doctest::Approx(1.0).epsilon(1e-15));
        // contact: eta ^ d eta != 0
        Matrix de = exteriorDerivative1(f.deta);
        double vol = f.eta(0) * de(1, 2) + f.eta(1) * de(2, 0) + f.eta(2) * de(0, 1);
        CHECK(std::abs(vol) > 0.1);
    }
}

TEST_CASE("products with a line") {
    SUBCASE("nearly Kaehler times a line") {
        Manifold m = manifolds::nkTimesLine();
        for (const Point& p : samples(m, 10, 56)) {
            PointFrame f = makeFrame(m, p);
            CHECK(exteriorDerivative1(f.deta).maxAbs() == 0.0);
            CHECK(almostNearlyCosymplecticResidual(f) < 1e-8);
            CHECK(killingResidual(f) == 0.0);
        }
    }
    SUBCASE("flat para-Kaehler times a line") {
        Manifold m = manifolds::paraProductLine();
        for (const Point& p : samples(m, 10, 57)) {
            PointFrame f = makeFrame(m, p);
            CHECK(compatibility(f, StructureKind::AlmostParaContact).worst() < 1e-9);
            CHECK(Derived(f).dF.maxAbs() == 0.0);
            CHECK(killingResidual(f) == 0.0);
        }
    }
}

TEST_CASE("every builtin classifies as intended and has a nondegenerate metric") {
    for (const std::string& name : manifolds::builtinNames()) {
        Manifold m = manifolds::builtin(name);
        CHECK(m.name == name);
        std::vector<PointFrame> frames;
        for (const Point& p : samples(m, 20, 58)) {
            frames.push_back(makeFrame(m, p));
            Eigen::MatrixXd g(m.dim(), m.dim());
            for (int i = 0; i < m.dim(); ++i)
                for (int j = 0; j < m.dim(); ++j)
                    g(i, j) = frames.back().g(i, j);
            CHECK(std::abs(g.determinant()) >= 1e-6);
            if (frames.back().hasContact) {
                // the skew part is degenerate along xi
                Vector Axi = matvec(frames.back().A, frames.back().xi);
                CHECK(Axi.maxAbs() < 1e-10);
                CHECK(matvec(transpose(frames.back().F), frames.back().xi).maxAbs() < 1e-10);
            }
        }
        INFO(name);
        CHECK((classify(frames, 1e-9) == intended(name)));
    }
}

TEST_CASE("lookup") {
    auto names = manifolds::builtinNames();
    for (const char* stable : {"flat-kahler-4", "s6-nearly-kahler", "nk-times-line", "contact-r3",
                               "deformed-hermitian-r4", "flat-para-kahler-4", "para-product-line"})
        CHECK(std::find(names.begin(), names.end(), stable) != names.end());
    CHECK_THROWS_AS(manifolds::builtin("no-such-manifold"), Error);
    PointFrame f = makeFrame(manifolds::flatKahler(1), std::vector<double>{0.3, 0.1});
    CHECK(leviCivita(f).gamma.maxAbs() == 0.0);
    CHECK(nijenhuis(f).lowered.maxAbs() == 0.0);
    CHECK(Derived(f).dF.maxAbs() == 0.0);
    CHECK(einsteinMetricityResidual(f, leviCivita(f)) == 0.0);
    PointFrame f2 = makeFrame(manifolds::flatKahler(2), std::vector<double>(4, 0.2));
    CHECK(maxAbsDiff(ngtSkewConnection(f2).gamma, leviCivita(f2).gamma) == 0.0);
}

}
