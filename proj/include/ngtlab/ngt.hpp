#pragma once

// Einstein metricity: (nabla_X G)(Y,Z) = -G(T(X,Y),Z) with G = g + F.

#include "ngtlab/geometry.hpp"

namespace ngtlab {

// The torsion violates the dF relation forced by Einstein metricity.
class ConstraintViolation : public PreconditionFailure {
public:
    using PreconditionFailure::PreconditionFailure;
};

// max over basis triples of (nabla_X G)(Y,Z) + T(X,Y,Z) - T(X,Y,AZ).
double einsteinMetricityResidual(const PointFrame& frame, const Connection& c);

struct NgtDecomposition {
    Tensor3 nablaG;  // (nabla_i g)_jk
    Tensor3 nablaF;  // (nabla_i F)_jk
    Tensor3 nablaA;  // g((nabla_i A) e_j, e_k)
    Connection connection;

    double cyclicNablaG = 0.0;  // cyclic sum of nabla g
    double torsionCyclic = 0.0;  // dF + cyclic T; the precondition
    double nablaGCheck = 0.0;  // connection vs the closed form
    double nablaFCheck = 0.0;
    double nablaACheck = 0.0;
    double connectionForms = 0.0;  // two closed forms of the connection agree
    double metricity = 0.0;
    double nijenhuis = 0.0;  // closed form vs the Nijenhuis tensor
};

// Throws ConstraintViolation when dF != -(cyclic sum of T) beyond tol.
NgtDecomposition ngtGeneralDecomposition(const PointFrame& frame, const Tensor3& T, double tol);

struct Ein8Guard {
    double literalVsChain = 0.0;  // closed formula vs substitution into the nabla A form
    double literalVsN = 0.0;
    double chainVsN = 0.0;
};
Ein8Guard ein8Guard(const PointFrame& frame, const Tensor3& T);

// N minus the dF expression required for a skew-torsion NGT connection.
double ngtSkewConditionResidual(const PointFrame& frame);

// g(nabla_X Y, Z) = g(nabla^g_X Y, Z) - dF(X,Y,Z)/6 - dF(X,AY,Z)/6 + dF(AX,Y,Z)/6.
Connection ngtSkewConnection(const PointFrame& frame);

struct NgtSkewResult {
    Tensor3 torsion;  // -dF/3
    Connection connection;
    Tensor3 nablaG, nablaF, lcNablaF;

    double condition = 0.0;
    double torsionCheck = 0.0;  // torsion of the connection vs -dF/3
    double metricity = 0.0;
    double nablaGForm = 0.0;
    double nablaFForm = 0.0;
    double lcNablaFForm = 0.0;  // nabla^g F closed form
    double lcNablaAForm = 0.0;  // same through g((nabla^g A)Y,Z)
    double nablaGCombined = 0.0;  // (nabla G) = (dF - dF(X,Y,AZ))/3
    double nablaFviaLc = 0.0;  // nabla F from nabla^g F and dF
};

// Throws PreconditionFailure carrying the condition residual when it exceeds tol.
NgtSkewResult ngtSkewPipeline(const PointFrame& frame, double tol);

} // namespace ngtlab
