#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ngtlab/fields.hpp"

namespace ngtlab::manifolds {

// R^{2m}, g = identity, F_{2a-1,2a} = 1.
Manifold flatKahler(int m);
// R^{2m}, g = diag(1,-1,...), A swapping each pair.
Manifold flatParaKahler(int m);
// S^6 through inverse stereographic projection from the pole e7, with the
// almost complex structure X -> p x X of the imaginary octonions.
Manifold s6NearlyKahler();
// S^{3,3} = {<p,p> = -1} in the imaginary split octonions, as a graph over
// its first six coordinates, with A X = p x X.
Manifold s33NearlyParaKahler();
// M x R with eta = dt, xi = d/dt and A extended by A xi = 0.
Manifold timesLine(const Manifold& base, std::string name);
Manifold nkTimesLine();
Manifold s33TimesLine();
Manifold flatKahlerTimesLine();
Manifold paraProductLine();
// eta = (dz - y dx)/2, xi = 2 d/dz, g = eta^2 + (dx^2 + dy^2)/4.
Manifold contactR3();
// g = identity, A = R(x1) J0 R(x1)^T with R rotating the (x2, x4) plane.
Manifold deformedHermitianR4();
// diag(e^z, e^z, 1) with eta = dz; xi is not Killing.
Manifold warpedCosymplecticR3();
Manifold warpedParacontactR3();

std::vector<std::string> builtinNames();
// Throws Error for an unknown name.
Manifold builtin(std::string_view name);

// Octonion structure constants on the imaginary units: e_a e_b = -delta_ab + sum_c eps(a,b,c) e_c.
double octonionEpsilon(int a, int b, int c);
// Split octonions: e_a e_b = -sig_a delta_ab + sum_c m(a,b,c) e_c, indices 0..6.
double splitOctonionProduct(int a, int b, int c);
// Signature of the imaginary split octonions (+,+,+,-,-,-,-).
int splitSignature(int a);

} // namespace ngtlab::manifolds
