#pragma once

// Index conventions used throughout:
//   (nabla_X Y)^k = X^i d_i Y^k + Gamma^k_ij X^i Y^j, stored gamma(k, i, j)
//   T^k_ij = Gamma^k_ij - Gamma^k_ji, lowered T(i, j, k) = g_kl T^l_ij
//   covariant derivatives put the derivative index first:
//     (0,2)  out(i, j, k) = (nabla_i S)_jk
//     (1,1)  out(i, k, j) = (nabla_i A)^k_j
//     (0,1)  out(i, j)    = (nabla_i eta)_j
//     (1,0)  out(i, k)    = (nabla_i xi)^k
//   exterior derivatives carry no factorial:
//     dF(i,j,k) = d_i F_jk + d_j F_ki + d_k F_ij,  deta(i,j) = d_i eta_j - d_j eta_i

#include <span>
#include <utility>
#include <vector>

#include "ngtlab/fields.hpp"

namespace ngtlab {

struct Connection {
    Tensor3 gamma;  // gamma(k, i, j) = Gamma^k_ij

    int dim() const { return gamma.dim(); }
};

struct Torsion {
    Tensor3 upper;  // T^k_ij at (k, i, j)
    Tensor3 lowered;  // T(i, j, k)
};

// Splits a (0,2) field into its symmetric and skew parts. Throws
// SingularMetricError if g is singular at one of the probe points.
std::pair<TensorField, TensorField> decompose(const TensorField& G, std::span<const Point> probes = {});

// A with F(X,Y) = g(AX,Y): A(k,i) = g^kl F_il.
Matrix recoverA(const Matrix& g, const Matrix& F);
Matrix recoverA(const TensorField& g, const TensorField& F, std::span<const double> p);

// From partials dF(m,i,j) = d_m F_ij.
Tensor3 exteriorDerivative2(const Tensor3& partials);
Tensor3 exteriorDerivative2(const TensorField& F, std::span<const double> p);
// From partials deta(m,j) = d_m eta_j.
Matrix exteriorDerivative1(const Matrix& partials);
Matrix exteriorDerivative1(const TensorField& eta, std::span<const double> p);

Tensor3 nablaBilinear(const Connection& c, const Matrix& S, const Tensor3& dS);
Tensor3 nablaEndomorphism(const Connection& c, const Matrix& A, const Tensor3& dA);
Matrix nablaCovector(const Connection& c, const Vector& eta, const Matrix& deta);
Matrix nablaVector(const Connection& c, const Vector& xi, const Matrix& dxi);
// Dispatches on valence; (0,1), (1,0), (0,2) and (1,1) are supported.
// Result layout: derivative index first, then the sample's component order.
std::vector<double> covariantDerivative(const Connection& c, const FieldSample& s);

Torsion torsionOf(const Connection& c, const Matrix& g);

// upper(k,i,j) -> lowered(i,j,k) with g_kl.
Tensor3 lowerLast(const Tensor3& upper, const Matrix& g);
// lowered(i,j,l) -> upper(k,i,j) with g^kl.
Tensor3 raiseLast(const Tensor3& lowered, const Matrix& gInv);

// Gamma^k_ij = base^k_ij + g^kl K(i,j,l); K(X,Y,Z) is the change of g(nabla_X Y, Z).
Connection addLowered(const Connection& base, const Tensor3& K, const Matrix& gInv);

} // namespace ngtlab
