#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ngtlab/chart.hpp"

namespace ngtlab::expr {

enum class Kind {
    Constant,
    Variable,
    Neg,
    Sin,
    Cos,
    Exp,
    Log,
    Sqrt,
    Atan,
    Add,
    Sub,
    Mul,
    Div,
    Pow,
};

struct Node;

// Immutable expression tree. Copies share structure. The arithmetic
// operators below fold constants and drop neutral elements, so building an
// expression with them never leaves a constant-only subtree behind.
class Expr {
public:
    Expr();  // the constant 0
    Expr(double value);  // NOLINT: constants convert implicitly

    static Expr variable(int index, std::string name);

    Kind kind() const;
    double constant() const;  // Kind::Constant only
    int variableIndex() const;  // Kind::Variable only
    const std::string& variableName() const;
    int exponent() const;  // Kind::Pow only
    int arity() const;
    Expr operand(int i) const;

    bool isConstant() const { return kind() == Kind::Constant; }
    bool isConstant(double v) const { return isConstant() && constant() == v; }

    const Node* node() const { return node_.get(); }
    const std::shared_ptr<const Node>& shared() const { return node_; }
    static Expr fromNode(std::shared_ptr<const Node> n);

    friend bool operator==(const Expr& a, const Expr& b);

private:
    std::shared_ptr<const Node> node_;
};

struct Node {
    Kind kind = Kind::Constant;
    double value = 0.0;
    int index = -1;  // variable index or integer exponent
    std::string name;
    std::shared_ptr<const Node> a;
    std::shared_ptr<const Node> b;
};

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr pow(const Expr& base, int exponent);
Expr sin(const Expr& a);
Expr cos(const Expr& a);
Expr exp(const Expr& a);
Expr log(const Expr& a);
Expr sqrt(const Expr& a);
Expr atan(const Expr& a);

Expr& operator+=(Expr& a, const Expr& b);
Expr& operator-=(Expr& a, const Expr& b);
Expr& operator*=(Expr& a, const Expr& b);

class ParseError : public Error {
public:
    ParseError(size_t offset, std::string message, std::vector<std::string> expected);

    size_t offset() const { return offset_; }
    const std::string& detail() const { return detail_; }
    const std::vector<std::string>& expected() const { return expected_; }

private:
    size_t offset_;
    std::string detail_;
    std::vector<std::string> expected_;
};

// Raised for division by zero, log of a non-positive value, sqrt of a
// negative value, or a non-finite result. where() prints the offending node.
class EvalError : public Error {
public:
    EvalError(std::string message, std::string where);
    const std::string& where() const { return where_; }

private:
    std::string where_;
};

Expr parse(std::string_view text, const Chart& chart);
Expr parse(std::string_view text, std::span<const std::string> names);

Expr differentiate(const Expr& e, int coord);
Expr differentiate(const Expr& e, std::string_view coord, const Chart& chart);

double evaluate(const Expr& e, std::span<const double> p);

// Minimal parentheses; constants in shortest round-trip form.
std::string toString(const Expr& e);

// Distinct nodes reachable from e (shared subtrees counted once).
size_t nodeCount(const Expr& e);

// Flattened evaluator for a batch of expressions sharing subtrees.
class Program {
public:
    Program() = default;
    explicit Program(std::span<const Expr> outputs);

    // out.size() must equal the number of outputs.
    void run(std::span<const double> p, std::span<double> out) const;
    size_t size() const { return code_.size(); }

private:
    struct Instr {
        Kind kind;
        int a;
        int b;
        int k;
        double value;
    };
    std::vector<Instr> code_;
    std::vector<int> outputs_;
    std::vector<const Node*> origin_;
    std::vector<Expr> keepAlive_;
};

} // namespace ngtlab::expr
