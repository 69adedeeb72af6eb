#include "ngtlab/findings.hpp"

#include <algorithm>
#include <cmath>

namespace ngtlab {

const char* toString(Verdict v) {
    switch (v) {
    case Verdict::Pass:
        return "pass";
    case Verdict::Fail:
        return "fail";
    case Verdict::Indeterminate:
        return "indeterminate";
    case Verdict::Info:
        return "info";
    }
    return "?";
}

Tolerances Tolerances::forMethod(DerivativeMethod m) {
    if (m == DerivativeMethod::FiniteDifference)
        return Tolerances{1e-5, 1e-4, 1e-3};
    return Tolerances{};
}

Tolerances Tolerances::fromOverride(double t) { return Tolerances{t / 10.0, t, std::max(1e-3, t)}; }

Verdict judge(double residual, double tol, double reject) {
    if (!std::isfinite(residual))
        return Verdict::Fail;
    if (residual <= tol)
        return Verdict::Pass;
    if (residual >= reject)
        return Verdict::Fail;
    return Verdict::Indeterminate;
}

void Findings::add(const std::string& name, const std::string& anchor, Role role, double residual) {
    for (Finding& f : items_)
        if (f.name == name) {
            // NaN propagates so that a broken evaluation is never hidden by max.
            if (std::isnan(residual) || residual > f.residual)
                f.residual = residual;
            ++f.samples;
            return;
        }
    items_.push_back(Finding{name, anchor, role, residual, 1});
}

void Findings::merge(const Findings& other) {
    for (const Finding& f : other.items_) {
        int before = 0;
        if (const Finding* mine = find(f.name))
            before = mine->samples;
        add(f.name, f.anchor, f.role, f.residual);
        for (Finding& m : items_)
            if (m.name == f.name)
                m.samples = before + f.samples;
    }
}

const Finding* Findings::find(const std::string& name) const {
    auto it = std::find_if(items_.begin(), items_.end(), [&](const Finding& f) { return f.name == name; });
    return it == items_.end() ? nullptr : &*it;
}

std::optional<double> Findings::residual(const std::string& name) const {
    if (const Finding* f = find(name))
        return f->residual;
    return std::nullopt;
}

} // namespace ngtlab
