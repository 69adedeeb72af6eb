#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ngtlab {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Shape, valence or symmetry mismatch between inputs.
class ShapeError : public Error {
public:
    using Error::Error;
};

using Point = std::vector<double>;
using DomainPredicate = std::function<bool(std::span<const double>)>;

// A coordinate patch: ordered, distinct coordinate names plus an optional
// predicate restricting where fields may be evaluated.
class Chart {
public:
    Chart() = default;
    explicit Chart(std::vector<std::string> names, DomainPredicate domain = {});

    int dim() const { return static_cast<int>(names_.size()); }
    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(int i) const { return names_.at(static_cast<size_t>(i)); }
    // -1 when the name is not a coordinate.
    int indexOf(std::string_view name) const;
    bool contains(std::span<const double> p) const;
    bool hasPredicate() const { return static_cast<bool>(domain_); }

private:
    std::vector<std::string> names_;
    DomainPredicate domain_;
};

// Names x1..xn.
Chart numberedChart(int n, std::string_view prefix = "x");

struct Box {
    std::vector<double> lo;
    std::vector<double> hi;

    static Box cube(int n, double lo, double hi);
    int dim() const { return static_cast<int>(lo.size()); }
};

} // namespace ngtlab
