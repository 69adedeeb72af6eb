#pragma once

// Manifold definition files. Example:
//
//   # nearly anything after '#' is a comment
//   [chart]
//   name = warped
//   coords = x, y, z
//
//   [metric]            # upper triangle, 1-based "i,j"; missing entries are 0
//   1,1 = exp(z)
//   2,2 = exp(z)
//   3,3 = 1
//
//   [two-form]          # strict upper triangle; or [endomorphism] with all i,j
//   1,2 = exp(z)
//
//   [contact]           # optional
//   eta[3] = 1
//   xi[3] = 1
//
//   [domain]            # optional, default [-1, 1] per coordinate
//   z = -0.5, 0.5

#include <string>
#include <string_view>

#include "ngtlab/fields.hpp"

namespace ngtlab {

class SpecError : public Error {
public:
    SpecError(const std::string& source, int line, const std::string& message);
    int line() const { return line_; }

private:
    int line_;
};

// source names the text in error messages.
Manifold parseSpec(std::string_view text, const std::string& source = "<spec>");
Manifold loadSpec(const std::string& path);

} // namespace ngtlab
