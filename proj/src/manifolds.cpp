#include "ngtlab/manifolds.hpp"

#include <array>
#include <cmath>
#include <functional>

namespace ngtlab::manifolds {

using expr::Expr;

namespace {

using ExprMatrix = std::vector<std::vector<Expr>>;

ExprMatrix zeros(int n) { return ExprMatrix(static_cast<size_t>(n), std::vector<Expr>(static_cast<size_t>(n))); }

std::vector<Expr> flatten(const ExprMatrix& m) {
    std::vector<Expr> out;
    for (const auto& row : m)
        out.insert(out.end(), row.begin(), row.end());
    return out;
}

std::vector<Expr> variables(const Chart& c) {
    std::vector<Expr> v;
    for (int i = 0; i < c.dim(); ++i)
        v.push_back(Expr::variable(i, c.name(i)));
    return v;
}

Manifold assemble(std::string name, Chart chart, const ExprMatrix& g, const ExprMatrix& F, Box domain,
                  std::string description) {
    int n = chart.dim();
    Manifold m;
    m.name = std::move(name);
    m.metric = GeneralizedMetric::fromTwoForm(TensorField::fromExprs(n, Valence{2, 0}, flatten(g), Symmetry::Symmetric),
                                              TensorField::fromExprs(n, Valence{2, 0}, flatten(F), Symmetry::Skew));
    m.chart = std::move(chart);
    m.domain = std::move(domain);
    m.description = std::move(description);
    return m;
}

void setContact(Manifold& m, const std::vector<Expr>& eta, const std::vector<Expr>& xi) {
    int n = m.dim();
    m.contact = ContactPair{TensorField::fromExprs(n, Valence{1, 0}, eta), TensorField::fromExprs(n, Valence{0, 1}, xi)};
}

// Pairs of quaternions (a, b) with the split Cayley-Dickson product
// (a,b)(c,d) = (ac + conj(d) b, da + b conj(c)).
using Quat = std::array<double, 4>;
using Oct = std::array<double, 8>;

Quat qmul(const Quat& p, const Quat& q) {
    return {p[0] * q[0] - p[1] * q[1] - p[2] * q[2] - p[3] * q[3], p[0] * q[1] + p[1] * q[0] + p[2] * q[3] - p[3] * q[2],
            p[0] * q[2] - p[1] * q[3] + p[2] * q[0] + p[3] * q[1], p[0] * q[3] + p[1] * q[2] - p[2] * q[1] + p[3] * q[0]};
}

Quat qconj(const Quat& q) { return {q[0], -q[1], -q[2], -q[3]}; }

Quat qadd(const Quat& a, const Quat& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]}; }

Oct splitMul(const Oct& x, const Oct& y) {
    Quat a{x[0], x[1], x[2], x[3]}, b{x[4], x[5], x[6], x[7]};
    Quat c{y[0], y[1], y[2], y[3]}, d{y[4], y[5], y[6], y[7]};
    Quat lo = qadd(qmul(a, c), qmul(qconj(d), b));
    Quat hi = qadd(qmul(d, a), qmul(b, qconj(c)));
    return {lo[0], lo[1], lo[2], lo[3], hi[0], hi[1], hi[2], hi[3]};
}

struct SplitTable {
    double m[7][7][7] = {};
    SplitTable() {
        for (int a = 0; a < 7; ++a)
            for (int b = 0; b < 7; ++b) {
                Oct x{}, y{};
                x[static_cast<size_t>(a + 1)] = 1.0;
                y[static_cast<size_t>(b + 1)] = 1.0;
                Oct p = splitMul(x, y);
                for (int c = 0; c < 7; ++c)
                    m[a][b][c] = p[static_cast<size_t>(c + 1)];
            }
    }
};

const SplitTable& splitTable() {
    static const SplitTable t;
    return t;
}

// phi(a,b,c) = <e_a x e_b, e_c> on the imaginary split octonions.
double splitPhi(int a, int b, int c) { return splitOctonionProduct(a, b, c) * splitSignature(c); }

} // namespace

double octonionEpsilon(int a, int b, int c) {
    static const int triples[7][3] = {{1, 2, 3}, {1, 4, 5}, {1, 7, 6}, {2, 4, 6}, {2, 5, 7}, {3, 4, 7}, {3, 6, 5}};
    for (const auto& t : triples) {
        int x = t[0], y = t[1], z = t[2];
        if ((a == x && b == y && c == z) || (a == y && b == z && c == x) || (a == z && b == x && c == y))
            return 1.0;
        if ((a == y && b == x && c == z) || (a == x && b == z && c == y) || (a == z && b == y && c == x))
            return -1.0;
    }
    return 0.0;
}

double splitOctonionProduct(int a, int b, int c) { return splitTable().m[a][b][c]; }

int splitSignature(int a) { return a < 3 ? 1 : -1; }

Manifold flatKahler(int m) {
    int n = 2 * m;
    ExprMatrix g = zeros(n), F = zeros(n);
    for (int i = 0; i < n; ++i)
        g[i][i] = 1.0;
    for (int a = 0; a < m; ++a) {
        F[2 * a][2 * a + 1] = 1.0;
        F[2 * a + 1][2 * a] = -1.0;
    }
    return assemble("flat-kahler-" + std::to_string(n), numberedChart(n), g, F, Box::cube(n, -1, 1),
                    "flat Kaehler R^" + std::to_string(n));
}

Manifold flatParaKahler(int m) {
    int n = 2 * m;
    ExprMatrix g = zeros(n), F = zeros(n);
    for (int i = 0; i < n; ++i)
        g[i][i] = i % 2 == 0 ? 1.0 : -1.0;
    for (int a = 0; a < m; ++a) {
        F[2 * a][2 * a + 1] = -1.0;
        F[2 * a + 1][2 * a] = 1.0;
    }
    return assemble("flat-para-kahler-" + std::to_string(n), numberedChart(n), g, F, Box::cube(n, -1, 1),
                    "flat para-Kaehler R^" + std::to_string(n));
}

Manifold s6NearlyKahler() {
    const int n = 6, pole = 7;
    Chart chart({"u1", "u2", "u3", "u4", "u5", "u6"}, [](std::span<const double> p) {
        double r = 0.0;
        for (double x : p)
            r += x * x;
        return r < 100.0;
    });
    std::vector<Expr> u = variables(chart);
    Expr r2;
    for (const Expr& x : u)
        r2 += pow(x, 2);
    Expr lam = Expr(2.0) / (1.0 + r2);
    Expr lam2 = pow(lam, 2);

    std::vector<Expr> pole7(n);  // sum_a u_a phi(7, i, a)
    for (int i = 0; i < n; ++i)
        for (int a = 0; a < n; ++a)
            if (double e = octonionEpsilon(pole, i + 1, a + 1); e != 0.0)
                pole7[i] += e * u[a];

    ExprMatrix g = zeros(n), F = zeros(n);
    for (int i = 0; i < n; ++i) {
        g[i][i] = lam2;
        for (int j = i + 1; j < n; ++j) {
            Expr inner;
            for (int a = 0; a < n; ++a)
                if (double e = octonionEpsilon(a + 1, i + 1, j + 1); e != 0.0)
                    inner += e * u[a];
            inner += u[i] * pole7[j] - u[j] * pole7[i];
            Expr v = lam2 * ((1.0 - lam) * octonionEpsilon(pole, i + 1, j + 1) + lam * inner);
            F[i][j] = v;
            F[j][i] = -v;
        }
    }
    return assemble("s6-nearly-kahler", chart, g, F, Box::cube(n, -0.8, 0.8),
                    "nearly Kaehler S^6, stereographic chart from the pole e7");
}

Manifold s33NearlyParaKahler() {
    const int n = 6, pole = 6;
    Chart chart({"y1", "y2", "y3", "y4", "y5", "y6"}, [](std::span<const double> p) {
        double s = 1.0;
        for (size_t a = 0; a < p.size(); ++a)
            s += splitSignature(static_cast<int>(a)) * p[a] * p[a];
        return s > 0.0;
    });
    std::vector<Expr> y = variables(chart);
    Expr s = 1.0;
    for (int a = 0; a < n; ++a)
        s += splitSignature(a) * pow(y[a], 2);
    Expr x7 = sqrt(s);
    std::vector<Expr> d(n);
    for (int i = 0; i < n; ++i)
        d[i] = splitSignature(i) * y[i] / x7;

    ExprMatrix g = zeros(n), F = zeros(n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            Expr v = -(d[i] * d[j]);
            if (i == j)
                v = splitSignature(i) + v;
            g[i][j] = v;
            g[j][i] = v;
        }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            Expr v = splitPhi(pole, i, j) * x7;
            Expr t1, t2;
            for (int a = 0; a < n; ++a) {
                v += splitPhi(a, i, j) * y[a];
                t1 += splitPhi(a, i, pole) * y[a];
                t2 += splitPhi(a, pole, j) * y[a];
            }
            v += d[j] * t1 + d[i] * t2;
            F[i][j] = v;
            F[j][i] = -v;
        }
    return assemble("s33-nearly-para-kahler", chart, g, F, Box::cube(n, -0.5, 0.5),
                    "nearly para-Kaehler pseudo-sphere S^{3,3} in the imaginary split octonions");
}

Manifold timesLine(const Manifold& base, std::string name) {
    int b = base.dim();
    int n = b + 1;
    std::vector<std::string> names = base.chart.names();
    names.push_back("t");
    const Chart& bc = base.chart;
    DomainPredicate pred;
    if (bc.hasPredicate())
        pred = [bc](std::span<const double> p) { return bc.contains(p.first(p.size() - 1)); };
    Chart chart(names, pred);

    // Lift each base component; the base fields ignore the extra coordinate.
    auto lift = [&](const ScalarFieldPtr& f) -> ScalarFieldPtr {
        if (const Expr* e = f->expression())
            return symbolicField(*e, n);
        ScalarFieldPtr keep = f;
        return callableField([keep](std::span<const double> p) { return keep->value(p.first(p.size() - 1)); },
                             [keep](std::span<const double> p, std::span<double> grad) {
                                 keep->valueAndGradient(p.first(p.size() - 1), grad.first(grad.size() - 1));
                                 grad.back() = 0.0;
                             });
    };
    std::vector<ScalarFieldPtr> g, F;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i < b && j < b) {
                g.push_back(lift(base.metric.g().component(static_cast<size_t>(i * b + j))));
                F.push_back(lift(base.metric.F().component(static_cast<size_t>(i * b + j))));
            } else {
                g.push_back(constantField(i == j ? 1.0 : 0.0, n));
                F.push_back(constantField(0.0, n));
            }
        }
    Manifold m;
    m.name = std::move(name);
    m.metric = GeneralizedMetric::fromTwoForm(TensorField(n, Valence{2, 0}, std::move(g), Symmetry::Symmetric),
                                              TensorField(n, Valence{2, 0}, std::move(F), Symmetry::Skew));
    m.chart = std::move(chart);
    Box box = base.domain;
    box.lo.push_back(-2.0);
    box.hi.push_back(2.0);
    m.domain = std::move(box);
    m.description = base.description + " times a line, eta = dt";
    std::vector<Expr> eta(n), xi(n);
    eta[b] = 1.0;
    xi[b] = 1.0;
    setContact(m, eta, xi);
    return m;
}

Manifold nkTimesLine() { return timesLine(s6NearlyKahler(), "nk-times-line"); }
Manifold s33TimesLine() { return timesLine(s33NearlyParaKahler(), "s33-times-line"); }
Manifold flatKahlerTimesLine() { return timesLine(flatKahler(2), "flat-kahler-times-line"); }
Manifold paraProductLine() { return timesLine(flatParaKahler(2), "para-product-line"); }

Manifold contactR3() {
    Chart chart({"x", "y", "z"});
    std::vector<Expr> v = variables(chart);
    const Expr& y = v[1];
    std::vector<Expr> eta{-y / 2.0, 0.0, 0.5};
    ExprMatrix g = zeros(3), F = zeros(3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            g[i][j] = eta[i] * eta[j] + (i == j && i < 2 ? 0.25 : 0.0);
    F[0][1] = -0.25;
    F[1][0] = 0.25;
    Manifold m = assemble("contact-r3", chart, g, F, Box::cube(3, -1, 1),
                          "standard contact structure on R^3, eta = (dz - y dx)/2");
    setContact(m, eta, {0.0, 0.0, 2.0});
    return m;
}

Manifold deformedHermitianR4() {
    Chart chart = numberedChart(4);
    Expr x1 = Expr::variable(0, chart.name(0));
    Expr c = cos(x1), s = sin(x1);
    ExprMatrix R = zeros(4), J = zeros(4);
    R[0][0] = 1.0;
    R[2][2] = 1.0;
    R[1][1] = c;
    R[1][3] = -s;
    R[3][1] = s;
    R[3][3] = c;
    J[1][0] = 1.0;
    J[0][1] = -1.0;
    J[3][2] = 1.0;
    J[2][3] = -1.0;
    ExprMatrix A = zeros(4);  // R J R^T
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            Expr v;
            for (int p = 0; p < 4; ++p)
                for (int q = 0; q < 4; ++q)
                    v += R[i][p] * J[p][q] * R[j][q];
            A[i][j] = v;
        }
    ExprMatrix g = zeros(4), F = zeros(4);
    for (int i = 0; i < 4; ++i) {
        g[i][i] = 1.0;
        for (int j = 0; j < 4; ++j)
            F[i][j] = i == j ? Expr(0.0) : A[j][i];
    }
    return assemble("deformed-hermitian-r4", chart, g, F, Box::cube(4, -1, 1),
                    "almost Hermitian R^4 with a rotating complex structure; not nearly Kaehler");
}

Manifold warpedCosymplecticR3() {
    Chart chart({"x", "y", "z"});
    Expr w = exp(Expr::variable(2, "z"));
    ExprMatrix g = zeros(3), F = zeros(3);
    g[0][0] = w;
    g[1][1] = w;
    g[2][2] = 1.0;
    F[0][1] = w;
    F[1][0] = -w;
    Manifold m = assemble("warped-cosymplectic-r3", chart, g, F, Box::cube(3, -1, 1),
                          "warped almost contact R^3 whose Reeb field is not Killing");
    setContact(m, {0.0, 0.0, 1.0}, {0.0, 0.0, 1.0});
    return m;
}

Manifold warpedParacontactR3() {
    Chart chart({"x", "y", "z"});
    Expr w = exp(Expr::variable(2, "z"));
    ExprMatrix g = zeros(3), F = zeros(3);
    g[0][0] = w;
    g[1][1] = -w;
    g[2][2] = 1.0;
    F[0][1] = -w;
    F[1][0] = w;
    Manifold m = assemble("warped-paracontact-r3", chart, g, F, Box::cube(3, -1, 1),
                          "warped almost paracontact R^3 whose Reeb field is not Killing");
    setContact(m, {0.0, 0.0, 1.0}, {0.0, 0.0, 1.0});
    return m;
}

namespace {

struct Entry {
    const char* name;
    std::function<Manifold()> make;
};

const std::vector<Entry>& catalog() {
    static const std::vector<Entry> entries = {
        {"flat-kahler-4", [] { return flatKahler(2); }},
        {"s6-nearly-kahler", s6NearlyKahler},
        {"nk-times-line", nkTimesLine},
        {"contact-r3", contactR3},
        {"deformed-hermitian-r4", deformedHermitianR4},
        {"flat-para-kahler-4", [] { return flatParaKahler(2); }},
        {"para-product-line", paraProductLine},
        {"flat-kahler-times-line", flatKahlerTimesLine},
        {"s33-nearly-para-kahler", s33NearlyParaKahler},
        {"s33-times-line", s33TimesLine},
        {"warped-cosymplectic-r3", warpedCosymplecticR3},
        {"warped-paracontact-r3", warpedParacontactR3},
    };
    return entries;
}

} // namespace

std::vector<std::string> builtinNames() {
    std::vector<std::string> names;
    for (const Entry& e : catalog())
        names.emplace_back(e.name);
    return names;
}

Manifold builtin(std::string_view name) {
    for (const Entry& e : catalog())
        if (name == e.name)
            return e.make();
    std::string known;
    for (const Entry& e : catalog())
        known += std::string(known.empty() ? "" : ", ") + e.name;
    throw Error("unknown builtin '" + std::string(name) + "' (known: " + known + ")");
}

} // namespace ngtlab::manifolds
