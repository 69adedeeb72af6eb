#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ngtlab/fields.hpp"

namespace ngtlab {

enum class Verdict { Pass, Fail, Indeterminate, Info };

const char* toString(Verdict v);

// Which tolerance applies to a residual.
enum class Role {
    Structural,  // algebraic compatibility (A^2, g-skewness, ...)
    Condition,  // the hypothesis of a theorem; failing is a legitimate outcome
    Identity,  // a consequence that must hold whenever its condition does
    Info  // reported, never judged
};

struct Tolerances {
    double structural = 1e-9;
    double identity = 1e-8;
    double reject = 1e-3;  // residuals at or above this count as failures

    static Tolerances forMethod(DerivativeMethod m);
    // identity = t, structural = t/10, reject = max(1e-3, t).
    static Tolerances fromOverride(double t);

    double forRole(Role r) const { return r == Role::Structural ? structural : identity; }
};

// Pass at or below tol, Fail at or above reject, Indeterminate in between.
Verdict judge(double residual, double tol, double reject);

struct Finding {
    std::string name;
    std::string anchor;
    Role role = Role::Identity;
    double residual = 0.0;
    int samples = 0;
};

// Named residuals merged by maximum across points, in first-insertion order.
class Findings {
public:
    void add(const std::string& name, const std::string& anchor, Role role, double residual);
    void merge(const Findings& other);

    const std::vector<Finding>& items() const { return items_; }
    const Finding* find(const std::string& name) const;
    // Residual of a finding, or nullopt if it was never recorded.
    std::optional<double> residual(const std::string& name) const;
    bool empty() const { return items_.empty(); }

private:
    std::vector<Finding> items_;
};

} // namespace ngtlab
