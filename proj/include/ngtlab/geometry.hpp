#pragma once

#include <optional>

#include "ngtlab/multilinear.hpp"
#include "ngtlab/tensor.hpp"

namespace ngtlab {

// A computation whose precondition failed; residual() is the measured value
// of the violated condition.
class PreconditionFailure : public Error {
public:
    PreconditionFailure(const std::string& what, double residual);
    double residual() const { return residual_; }

private:
    double residual_;
};

// The structure endomorphism is not invertible (almost contact or
// paracontact input); the structures module handles those.
class DegenerateStructureError : public Error {
public:
    using Error::Error;
};

struct Nijenhuis {
    Tensor3 upper;  // N^k_ij at (k, i, j)
    Tensor3 lowered;  // N(i, j, k)
};

// Levi-Civita data and the usual derived tensors at one point.
struct Derived {
    explicit Derived(const PointFrame& frame);

    const PointFrame* frame;
    int n;
    Powers powers;
    Connection lc;
    Tensor3 dF;  // exterior derivative
    Nijenhuis N;
    Tensor3 lcNablaF;  // (nabla^g_i F)_jk
    Tensor3 lcNablaA;  // g((nabla^g_i A) e_j, e_k)

    Form3 form(const Tensor3& t) const { return Form3(t, powers); }
    Form2 form(const Matrix& m) const { return Form2(m, powers); }
};

Connection leviCivita(const Matrix& g, const Matrix& gInv, const Tensor3& dg);
Connection leviCivita(const PointFrame& frame);

// The connection with torsion T and prescribed
// nablaG(i,j,k) = (nabla_i g)_jk.
Connection connectionFromTorsionAndNablaG(const PointFrame& frame, const Tensor3& T, const Tensor3& nablaG);
// The closed form of nabla F for that connection.
Tensor3 inducedNablaF(const PointFrame& frame, const Tensor3& T, const Tensor3& nablaG);

// Universal identity relating dF, the torsion and the cyclic sum of nabla F.
double cyclicDFIdentityResidual(const PointFrame& frame, const Connection& c);

struct CompatResidual {
    double nablaLcF = 0.0;  // the nabla^g F condition
    double cyclic = 0.0;  // its dF consequence
};
CompatResidual metricConnectionCompatResidual(const PointFrame& frame, const Tensor3& T);

// g(nabla_X Y, Z) = g(nabla^g_X Y, Z) + 1/2 [T(X,Y,Z) + T(Z,X,Y) - T(Y,Z,X)].
Connection metricConnectionWithTorsion(const PointFrame& frame, const Tensor3& T);

Nijenhuis nijenhuis(const PointFrame& frame);
// Right side of the Nijenhuis formula through nabla A and the torsion of c.
Tensor3 nijenhuisViaNablaA(const PointFrame& frame, const Connection& c);
// The nabla A = 0 specialization, in terms of T only.
Tensor3 nijenhuisParallelForm(const PointFrame& frame, const Tensor3& T);

double ndf1Residual(const PointFrame& frame);

struct SkewTorsionResult {
    double condition = 0.0;  // ndf1 residual
    std::optional<Tensor3> torsion;
    std::optional<Connection> connection;
    double torsionSkew = 0.0;
    double imageCrossCheck = 0.0;  // first line of the torsion formula
    double nablaG = 0.0;
    double nablaF = 0.0;
    double parallelNijenhuis = 0.0;
};

// Throws DegenerateStructureError when the condition holds but A is singular.
SkewTorsionResult skewTorsionExistence(const PointFrame& frame, double tol);

Connection eisenhartConnection(const PointFrame& frame);
// Both sides of the Nijenhuis formula for the Eisenhart connection.
double eisenhartNijenhuisResidual(const PointFrame& frame);

// max |T(X,Y,Z) + T(X,Z,Y)|.
double totalSkewResidual(const Tensor3& T);

} // namespace ngtlab
