#include "ngtlab/fields.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <sstream>

namespace ngtlab {

// ---------------------------------------------------------------------------
// dense helpers

Matrix identity(int n) {
    Matrix m(n);
    for (int i = 0; i < n; ++i)
        m(i, i) = 1.0;
    return m;
}

Matrix transpose(const Matrix& m) {
    int n = m.dim();
    Matrix t(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            t(j, i) = m(i, j);
    return t;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
    int n = a.dim();
    if (b.dim() != n)
        throw ShapeError("matmul: dimension mismatch");
    Matrix c(n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            double aik = a(i, k);
            if (aik == 0.0)
                continue;
            for (int j = 0; j < n; ++j)
                c(i, j) += aik * b(k, j);
        }
    return c;
}

Vector matvec(const Matrix& a, const Vector& v) {
    int n = a.dim();
    Vector r(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            r(i) += a(i, j) * v(j);
    return r;
}

double dot(const Vector& a, const Vector& b) {
    double s = 0.0;
    for (int i = 0; i < a.dim(); ++i)
        s += a(i) * b(i);
    return s;
}

SingularMetricError::SingularMetricError(std::string what, double condition)
    : Error(std::move(what)), condition_(condition) {}

bool tryInvert(const Matrix& m, Inverse& out) {
    int n = m.dim();
    Eigen::MatrixXd a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            a(i, j) = m(i, j);
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
    Eigen::MatrixXd inv = lu.inverse();
    double norm = a.cwiseAbs().colwise().sum().maxCoeff();
    double invNorm = inv.cwiseAbs().colwise().sum().maxCoeff();
    double cond = norm * invNorm;
    out.condition = std::isfinite(cond) ? cond : INFINITY;
    if (!(out.condition <= kSingularCondition) || norm == 0.0)
        return false;
    out.inverse = Matrix(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            out.inverse(i, j) = inv(i, j);
    return true;
}

Inverse invert(const Matrix& m, const char* what) {
    Inverse out;
    if (!tryInvert(m, out)) {
        std::ostringstream msg;
        msg << "singular " << what << ": condition number " << out.condition << " exceeds "
            << kSingularCondition;
        throw SingularMetricError(msg.str(), out.condition);
    }
    return out;
}

// ---------------------------------------------------------------------------
// scalar fields

const char* toString(DerivativeMethod m) {
    switch (m) {
    case DerivativeMethod::Symbolic: return "symbolic";
    case DerivativeMethod::UserSupplied: return "user-supplied";
    case DerivativeMethod::FiniteDifference: return "finite-difference";
    }
    return "?";
}

namespace {

DerivativeMethod worst(DerivativeMethod a, DerivativeMethod b) {
    return static_cast<int>(a) > static_cast<int>(b) ? a : b;
}

class ExprField final : public ScalarField {
public:
    ExprField(expr::Expr e, int dim) : e_(std::move(e)), dim_(dim) {
        std::vector<expr::Expr> outs{e_};
        for (int i = 0; i < dim; ++i)
            outs.push_back(expr::differentiate(e_, i));
        valueOnly_ = expr::Program(std::span<const expr::Expr>(outs.data(), 1));
        withGrad_ = expr::Program(outs);
    }
    double value(std::span<const double> p) const override {
        double v = 0.0;
        valueOnly_.run(p, std::span<double>(&v, 1));
        return v;
    }
    double valueAndGradient(std::span<const double> p, std::span<double> grad) const override {
        std::vector<double> out(static_cast<size_t>(dim_) + 1);
        withGrad_.run(p, out);
        std::copy(out.begin() + 1, out.end(), grad.begin());
        return out[0];
    }
    DerivativeMethod method() const override { return DerivativeMethod::Symbolic; }
    const expr::Expr* expression() const override { return &e_; }

private:
    expr::Expr e_;
    int dim_;
    expr::Program valueOnly_;
    expr::Program withGrad_;
};

class CallableField final : public ScalarField {
public:
    CallableField(ValueFn v, GradientFn g) : v_(std::move(v)), g_(std::move(g)) {}
    double value(std::span<const double> p) const override { return v_(p); }
    double valueAndGradient(std::span<const double> p, std::span<double> grad) const override {
        g_(p, grad);
        return v_(p);
    }
    DerivativeMethod method() const override { return DerivativeMethod::UserSupplied; }

private:
    ValueFn v_;
    GradientFn g_;
};

class FiniteDifferenceField final : public ScalarField {
public:
    FiniteDifferenceField(ValueFn v, double rel) : v_(std::move(v)), rel_(rel) {}
    double value(std::span<const double> p) const override { return v_(p); }
    double valueAndGradient(std::span<const double> p, std::span<double> grad) const override {
        std::vector<double> x(p.begin(), p.end());
        for (size_t i = 0; i < x.size(); ++i) {
            double x0 = x[i];
            double h = rel_ * std::max(1.0, std::abs(x0));
            x[i] = x0 + h;
            double hp = x[i] - x0;
            double fp = v_(x);
            x[i] = x0 - h;
            double hm = x0 - x[i];
            double fm = v_(x);
            x[i] = x0;
            grad[i] = (fp - fm) / (hp + hm);
        }
        return v_(p);
    }
    DerivativeMethod method() const override { return DerivativeMethod::FiniteDifference; }

private:
    ValueFn v_;
    double rel_;
};

class CombinationField final : public ScalarField {
public:
    CombinationField(std::vector<std::pair<double, ScalarFieldPtr>> terms, int dim)
        : terms_(std::move(terms)), dim_(dim) {
        for (const auto& t : terms_)
            method_ = worst(method_, t.second->method());
    }
    double value(std::span<const double> p) const override {
        double s = 0.0;
        for (const auto& [c, f] : terms_)
            s += c * f->value(p);
        return s;
    }
    double valueAndGradient(std::span<const double> p, std::span<double> grad) const override {
        std::fill(grad.begin(), grad.end(), 0.0);
        std::vector<double> g(static_cast<size_t>(dim_));
        double s = 0.0;
        for (const auto& [c, f] : terms_) {
            s += c * f->valueAndGradient(p, g);
            for (size_t i = 0; i < g.size(); ++i)
                grad[i] += c * g[i];
        }
        return s;
    }
    DerivativeMethod method() const override { return method_; }

private:
    std::vector<std::pair<double, ScalarFieldPtr>> terms_;
    int dim_;
    DerivativeMethod method_ = DerivativeMethod::Symbolic;
};

class ProductSumField final : public ScalarField {
public:
    ProductSumField(std::vector<std::pair<ScalarFieldPtr, ScalarFieldPtr>> terms, int dim)
        : terms_(std::move(terms)), dim_(dim) {
        for (const auto& t : terms_)
            method_ = worst(method_, worst(t.first->method(), t.second->method()));
    }
    double value(std::span<const double> p) const override {
        double s = 0.0;
        for (const auto& [a, b] : terms_)
            s += a->value(p) * b->value(p);
        return s;
    }
    double valueAndGradient(std::span<const double> p, std::span<double> grad) const override {
        std::fill(grad.begin(), grad.end(), 0.0);
        std::vector<double> ga(static_cast<size_t>(dim_)), gb(static_cast<size_t>(dim_));
        double s = 0.0;
        for (const auto& [a, b] : terms_) {
            double va = a->valueAndGradient(p, ga);
            double vb = b->valueAndGradient(p, gb);
            s += va * vb;
            for (size_t i = 0; i < ga.size(); ++i)
                grad[i] += ga[i] * vb + va * gb[i];
        }
        return s;
    }
    DerivativeMethod method() const override { return method_; }

private:
    std::vector<std::pair<ScalarFieldPtr, ScalarFieldPtr>> terms_;
    int dim_;
    DerivativeMethod method_ = DerivativeMethod::Symbolic;
};

} // namespace

ScalarFieldPtr symbolicField(const expr::Expr& e, int dim) {
    return std::make_shared<ExprField>(e, dim);
}

ScalarFieldPtr constantField(double c, int dim) {
    return symbolicField(expr::Expr(c), dim);
}

ScalarFieldPtr callableField(ValueFn value, GradientFn gradient) {
    return std::make_shared<CallableField>(std::move(value), std::move(gradient));
}

ScalarFieldPtr finiteDifferenceField(ValueFn value, double relStep) {
    return std::make_shared<FiniteDifferenceField>(std::move(value), relStep);
}

ScalarFieldPtr linearCombination(const std::vector<std::pair<double, ScalarFieldPtr>>& terms, int dim) {
    bool symbolic = true;
    for (const auto& t : terms)
        symbolic = symbolic && t.second->expression();
    if (symbolic) {
        expr::Expr e;
        for (const auto& [c, f] : terms)
            e = e + expr::Expr(c) * *f->expression();
        return symbolicField(e, dim);
    }
    return std::make_shared<CombinationField>(terms, dim);
}

ScalarFieldPtr productSum(const std::vector<std::pair<ScalarFieldPtr, ScalarFieldPtr>>& terms, int dim) {
    bool symbolic = true;
    for (const auto& t : terms)
        symbolic = symbolic && t.first->expression() && t.second->expression();
    if (symbolic) {
        expr::Expr e;
        for (const auto& [a, b] : terms)
            e = e + *a->expression() * *b->expression();
        return symbolicField(e, dim);
    }
    return std::make_shared<ProductSumField>(terms, dim);
}

// ---------------------------------------------------------------------------
// tensor fields

namespace {
size_t power(int n, int r) {
    size_t v = 1;
    for (int i = 0; i < r; ++i)
        v *= static_cast<size_t>(n);
    return v;
}
} // namespace

TensorField::TensorField(int dim, Valence valence, std::vector<ScalarFieldPtr> components, Symmetry symmetry)
    : dim_(dim), valence_(valence), symmetry_(symmetry), components_(std::move(components)) {
    if (dim < 1)
        throw ShapeError("tensor field dimension must be positive");
    if (components_.size() != power(dim, valence.rank()))
        throw ShapeError("tensor field needs " + std::to_string(power(dim, valence.rank())) + " components, got " +
                         std::to_string(components_.size()));
    if (symmetry != Symmetry::None && valence.rank() != 2)
        throw ShapeError("symmetry can only be declared for rank-2 fields");
    for (const auto& c : components_)
        if (!c)
            throw ShapeError("tensor field component is null");
}

TensorField TensorField::fromExprs(int dim, Valence valence, const std::vector<expr::Expr>& comps, Symmetry symmetry) {
    std::vector<ScalarFieldPtr> fields;
    fields.reserve(comps.size());
    for (const auto& e : comps)
        fields.push_back(symbolicField(e, dim));
    return TensorField(dim, valence, std::move(fields), symmetry);
}

DerivativeMethod TensorField::method() const {
    DerivativeMethod m = DerivativeMethod::Symbolic;
    for (const auto& c : components_)
        m = worst(m, c->method());
    return m;
}

FieldSample TensorField::sample(std::span<const double> p) const {
    if (static_cast<int>(p.size()) != dim_)
        throw ShapeError("point has " + std::to_string(p.size()) + " coordinates, field dimension is " +
                         std::to_string(dim_));
    FieldSample s;
    s.valence = valence_;
    s.dim = dim_;
    size_t count = components_.size();
    s.value.resize(count);
    s.partial.resize(count * static_cast<size_t>(dim_));
    std::vector<double> grad(static_cast<size_t>(dim_));
    for (size_t c = 0; c < count; ++c) {
        s.value[c] = components_[c]->valueAndGradient(p, grad);
        for (int m = 0; m < dim_; ++m)
            s.partial[static_cast<size_t>(m) * count + c] = grad[static_cast<size_t>(m)];
    }
    if (symmetry_ != Symmetry::None) {
        double tol = method() == DerivativeMethod::Symbolic ? 1e-12 : 1e-7;
        double sign = symmetry_ == Symmetry::Symmetric ? 1.0 : -1.0;
        size_t n = static_cast<size_t>(dim_);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j <= i; ++j) {
                double a = s.value[i * n + j];
                double b = s.value[j * n + i];
                double scale = std::max({1.0, std::abs(a), std::abs(b)});
                if (std::abs(a - sign * b) > tol * scale) {
                    std::ostringstream msg;
                    msg << "declared " << (sign > 0 ? "symmetric" : "skew") << " field violates symmetry at component ("
                        << i + 1 << "," << j + 1 << "): " << a << " vs " << b;
                    throw ShapeError(msg.str());
                }
            }
    }
    return s;
}

Jet1 TensorField::jet1(std::span<const double> p) const {
    if (valence_.rank() != 1)
        throw ShapeError("jet1 needs a rank-1 field");
    FieldSample s = sample(p);
    Jet1 j{Vector(dim_), Matrix(dim_)};
    for (int i = 0; i < dim_; ++i)
        j.value(i) = s.value[static_cast<size_t>(i)];
    for (int m = 0; m < dim_; ++m)
        for (int i = 0; i < dim_; ++i)
            j.partial(m, i) = s.partial[static_cast<size_t>(m * dim_ + i)];
    return j;
}

Jet2 TensorField::jet2(std::span<const double> p) const {
    if (valence_.rank() != 2)
        throw ShapeError("jet2 needs a rank-2 field");
    FieldSample s = sample(p);
    Jet2 j{Matrix(dim_), Tensor3(dim_)};
    std::copy(s.value.begin(), s.value.end(), j.value.flat().begin());
    std::copy(s.partial.begin(), s.partial.end(), j.partial.flat().begin());
    return j;
}

// ---------------------------------------------------------------------------
// generalized metric

GeneralizedMetric GeneralizedMetric::fromTwoForm(TensorField g, TensorField F) {
    if (g.valence() != Valence{2, 0} || F.valence() != Valence{2, 0})
        throw ShapeError("g and F must be (0,2) fields");
    if (g.dim() != F.dim())
        throw ShapeError("g and F have different dimensions");
    GeneralizedMetric m;
    m.g_ = TensorField(g.dim(), g.valence(), g.components(), Symmetry::Symmetric);
    m.F_ = TensorField(F.dim(), F.valence(), F.components(), Symmetry::Skew);
    return m;
}

GeneralizedMetric GeneralizedMetric::fromEndomorphism(const TensorField& g, const TensorField& A) {
    if (A.valence() != Valence{1, 1})
        throw ShapeError("endomorphism must be a (1,1) field");
    if (g.dim() != A.dim())
        throw ShapeError("g and A have different dimensions");
    int n = g.dim();
    std::vector<ScalarFieldPtr> F;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::vector<std::pair<ScalarFieldPtr, ScalarFieldPtr>> terms;
            for (int k = 0; k < n; ++k) {
                const auto& a = A.component(static_cast<size_t>(k * n + i));
                const auto& gk = g.component(static_cast<size_t>(k * n + j));
                const expr::Expr* ea = a->expression();
                const expr::Expr* eg = gk->expression();
                if ((ea && ea->isConstant(0.0)) || (eg && eg->isConstant(0.0)))
                    continue;
                terms.emplace_back(a, gk);
            }
            F.push_back(terms.empty() ? constantField(0.0, n) : productSum(terms, n));
        }
    return fromTwoForm(g, TensorField(n, Valence{2, 0}, std::move(F)));
}

DerivativeMethod GeneralizedMetric::method() const {
    return worst(g_.method(), F_.method());
}

DerivativeMethod Manifold::method() const {
    DerivativeMethod m = metric.method();
    if (contact)
        m = worst(m, worst(contact->eta.method(), contact->xi.method()));
    return m;
}

// ---------------------------------------------------------------------------
// frames

PointFrame makeFrame(const GeneralizedMetric& metric, const ContactPair* contact, std::span<const double> p) {
    PointFrame fr;
    int n = metric.dim();
    fr.n = n;
    fr.point.assign(p.begin(), p.end());
    fr.method = metric.method();

    Jet2 g = metric.g().jet2(p);
    Jet2 F = metric.F().jet2(p);
    fr.g = g.value;
    fr.dg = g.partial;
    fr.F = F.value;
    fr.dF = F.partial;
    Inverse inv = invert(fr.g, "metric g");
    fr.gInv = inv.inverse;
    fr.condition = inv.condition;

    // A = g^-1 F^T and d(g^-1) = -g^-1 (dg) g^-1.
    fr.A = Matrix(n);
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i) {
            double s = 0.0;
            for (int l = 0; l < n; ++l)
                s += fr.gInv(k, l) * fr.F(i, l);
            fr.A(k, i) = s;
        }
    fr.dA = Tensor3(n);
    for (int m = 0; m < n; ++m) {
        Matrix dgm(n), dFm(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                dgm(i, j) = fr.dg(m, i, j);
                dFm(i, j) = fr.dF(m, i, j);
            }
        Matrix dInv = -1.0 * matmul(matmul(fr.gInv, dgm), fr.gInv);
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i) {
                double s = 0.0;
                for (int l = 0; l < n; ++l)
                    s += dInv(k, l) * fr.F(i, l) + fr.gInv(k, l) * dFm(i, l);
                fr.dA(m, k, i) = s;
            }
    }

    if (contact) {
        if (contact->eta.valence() != Valence{1, 0} || contact->xi.valence() != Valence{0, 1})
            throw ShapeError("eta must be (0,1) and xi must be (1,0)");
        if (contact->eta.dim() != n || contact->xi.dim() != n)
            throw ShapeError("eta/xi dimension differs from the metric");
        Jet1 eta = contact->eta.jet1(p);
        Jet1 xi = contact->xi.jet1(p);
        fr.hasContact = true;
        fr.eta = eta.value;
        fr.deta = eta.partial;
        fr.xi = xi.value;
        fr.dxi = xi.partial;
        fr.method = worst(fr.method, worst(contact->eta.method(), contact->xi.method()));
    }
    return fr;
}

PointFrame makeFrame(const Manifold& m, std::span<const double> p) {
    if (!m.chart.contains(p))
        throw Error("point outside the chart domain of '" + m.name + "'");
    return makeFrame(m.metric, m.contact ? &*m.contact : nullptr, p);
}

} // namespace ngtlab
