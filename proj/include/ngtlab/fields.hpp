#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ngtlab/components.hpp"
#include "ngtlab/expr.hpp"

namespace ngtlab {

enum class DerivativeMethod { Symbolic, UserSupplied, FiniteDifference };

const char* toString(DerivativeMethod m);

// Real function on a chart with first partial derivatives.
class ScalarField {
public:
    virtual ~ScalarField() = default;

    virtual double value(std::span<const double> p) const = 0;
    // grad.size() == p.size().
    virtual double valueAndGradient(std::span<const double> p, std::span<double> grad) const = 0;
    virtual DerivativeMethod method() const = 0;
    // Set for Expr-backed fields so that derived fields stay symbolic.
    virtual const expr::Expr* expression() const { return nullptr; }
};

using ScalarFieldPtr = std::shared_ptr<const ScalarField>;
using ValueFn = std::function<double(std::span<const double>)>;
using GradientFn = std::function<void(std::span<const double>, std::span<double>)>;

ScalarFieldPtr symbolicField(const expr::Expr& e, int dim);
ScalarFieldPtr constantField(double c, int dim);
ScalarFieldPtr callableField(ValueFn value, GradientFn gradient);
// Central differences with step relStep * max(1, |x_i|).
ScalarFieldPtr finiteDifferenceField(ValueFn value, double relStep = 1e-6);
// sum_t coeff_t * f_t; symbolic when every term is.
ScalarFieldPtr linearCombination(const std::vector<std::pair<double, ScalarFieldPtr>>& terms, int dim);
// sum_t f_t * h_t (product rule for the gradient); symbolic when every factor is.
ScalarFieldPtr productSum(const std::vector<std::pair<ScalarFieldPtr, ScalarFieldPtr>>& terms, int dim);

enum class Symmetry { None, Symmetric, Skew };

struct Valence {
    int covariant = 0;
    int contravariant = 0;
    int rank() const { return covariant + contravariant; }
    friend bool operator==(const Valence&, const Valence&) = default;
};

// Values and first partials of a tensor field at one point. Component index
// order is contravariant slots first, then covariant ones; partial holds
// d_m(component c) at m * value.size() + c.
struct FieldSample {
    Valence valence;
    int dim = 0;
    std::vector<double> value;
    std::vector<double> partial;
};

// Value with first partials for the common ranks. partial(m, ...) = d_m.
struct Jet1 {
    Vector value;
    Matrix partial;
};
struct Jet2 {
    Matrix value;
    Tensor3 partial;
};

class TensorField {
public:
    TensorField() = default;
    TensorField(int dim, Valence valence, std::vector<ScalarFieldPtr> components, Symmetry symmetry = Symmetry::None);

    // Component arrays of symbolic expressions, row-major.
    static TensorField fromExprs(int dim, Valence valence, const std::vector<expr::Expr>& comps,
                                 Symmetry symmetry = Symmetry::None);

    int dim() const { return dim_; }
    Valence valence() const { return valence_; }
    Symmetry symmetry() const { return symmetry_; }
    size_t componentCount() const { return components_.size(); }
    const ScalarFieldPtr& component(size_t flat) const { return components_.at(flat); }
    const std::vector<ScalarFieldPtr>& components() const { return components_; }
    // The least exact derivative method among the components.
    DerivativeMethod method() const;

    // Checks declared symmetry: 1e-12 relative for symbolic, 1e-7 otherwise.
    FieldSample sample(std::span<const double> p) const;

    Jet1 jet1(std::span<const double> p) const;
    Jet2 jet2(std::span<const double> p) const;

private:
    int dim_ = 0;
    Valence valence_;
    Symmetry symmetry_ = Symmetry::None;
    std::vector<ScalarFieldPtr> components_;
};

// G = g + F with derived A, F(X,Y) = g(AX,Y). Stored as (g, F).
class GeneralizedMetric {
public:
    GeneralizedMetric() = default;

    static GeneralizedMetric fromTwoForm(TensorField g, TensorField F);
    // F_ij = A^k_i g_kj. g-skewness of A is checked at evaluation time.
    static GeneralizedMetric fromEndomorphism(const TensorField& g, const TensorField& A);

    int dim() const { return g_.dim(); }
    const TensorField& g() const { return g_; }
    const TensorField& F() const { return F_; }
    DerivativeMethod method() const;

private:
    TensorField g_;
    TensorField F_;
};

struct ContactPair {
    TensorField eta;  // (0,1)
    TensorField xi;  // (1,0)
};

struct Manifold {
    std::string name;
    Chart chart;
    GeneralizedMetric metric;
    std::optional<ContactPair> contact;
    Box domain;
    std::string description;

    int dim() const { return chart.dim(); }
    DerivativeMethod method() const;
};

// Evaluated components and first partials at one point.
//   g(i,j), gInv(i,j), dg(m,i,j) = d_m g_ij
//   F(i,j), dF(m,i,j) = d_m F_ij      (partials, not the exterior derivative)
//   A(k,j) = A^k_j, dA(m,k,j) = d_m A^k_j
//   eta(j), deta(m,j);  xi(k), dxi(m,k)
struct PointFrame {
    Point point;
    int n = 0;
    DerivativeMethod method = DerivativeMethod::Symbolic;
    Matrix g, gInv;
    Tensor3 dg;
    Matrix F;
    Tensor3 dF;
    Matrix A;
    Tensor3 dA;
    double condition = 0.0;

    bool hasContact = false;
    Vector eta, xi;
    Matrix deta, dxi;
};

PointFrame makeFrame(const GeneralizedMetric& metric, const ContactPair* contact, std::span<const double> p);
PointFrame makeFrame(const Manifold& m, std::span<const double> p);

} // namespace ngtlab
