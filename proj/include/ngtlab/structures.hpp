#pragma once

#include <optional>
#include <span>

#include "ngtlab/findings.hpp"
#include "ngtlab/ngt.hpp"

namespace ngtlab {

enum class StructureKind { Generic, AlmostHermitian, AlmostParaHermitian, AlmostContact, AlmostParaContact };

const char* toString(StructureKind k);

struct Compatibility {
    double square = 0.0;  // A^2 against the model
    double metric = 0.0;  // g(AX,AY) against the model
    double gSkew = 0.0;  // g(AX,Y) + g(X,AY)
    double reeb = 0.0;  // |A xi|, contact kinds only
    double normalization = 0.0;  // |eta(xi) - 1|
    double duality = 0.0;  // |eta - g(xi, .)|
    double degenerate = 0.0;  // |F(xi, .)|

    double worst() const;
};

// Residuals of the compatibility conditions of kind k at one frame.
Compatibility compatibility(const PointFrame& f, StructureKind k);

// First kind whose compatibility conditions hold at every frame within tol.
// Throws Error when a contact pair has eta(xi) != 1.
StructureKind classify(std::span<const PointFrame> frames, double tol);

// Skew-torsion connections preserving G, structure by structure.
struct StructureTorsion {
    double condition = 0.0;  // total skewness of N, N^ac or N^apc
    double killing = 0.0;  // symmetrized nabla^g xi (contact kinds)
    std::optional<Tensor3> torsion;
    std::optional<Connection> connection;
    double torsionSkew = 0.0;
    double nablaG = 0.0;
    double nablaF = 0.0;
    double nablaEta = 0.0;
    double nablaXi = 0.0;
    double etaFromTorsion = 0.0;  // d eta - xi -| T
};

StructureTorsion hermitianSkewTorsion(const PointFrame& f, double tol);
StructureTorsion paraHermitianSkewTorsion(const PointFrame& f, double tol);
StructureTorsion contactSkewTorsion(const PointFrame& f, double tol);
StructureTorsion paracontactSkewTorsion(const PointFrame& f, double tol);

// max over basis vectors of |(nabla^g_X A)X|.
double nearlyKahlerResidual(const PointFrame& f);
// Symmetric part of nabla^g F in its first two slots.
double nearlyKahlerFormResidual(const PointFrame& f);

// Lie derivative of g along xi, from the Levi-Civita connection.
double killingResidual(const PointFrame& f);

// The defining relation of almost-nearly cosymplectic structures.
double almostNearlyCosymplecticResidual(const PointFrame& f);
// nabla^g F (equivalently g((nabla^g A)Y, Z)) against its dF expression.
double paracontactNgtResidual(const PointFrame& f);

// Records the outputs of ngtSkewPipeline under prefix; a failed precondition
// is recorded as its residual.
void recordNgtSkewPipeline(const PointFrame& f, Findings& out, const std::string& prefix, double tol);

// Point-set pipelines. Each first evaluates its defining condition at every
// frame; downstream identities run only when the condition holds throughout.
Findings hermitianNgtEquivalence(std::span<const PointFrame> frames, const Tolerances& tol);
Findings paraHermitianNgtCheck(std::span<const PointFrame> frames, const Tolerances& tol);
Findings contactNgtPipeline(std::span<const PointFrame> frames, const Tolerances& tol);
Findings paracontactNgtPipeline(std::span<const PointFrame> frames, const Tolerances& tol);

// Corollary-path reports for the four structure classes.
Findings structureTorsionFindings(std::span<const PointFrame> frames, StructureKind kind, const Tolerances& tol);

} // namespace ngtlab
