#include "ngtlab/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

namespace ngtlab {

Chart::Chart(std::vector<std::string> names, DomainPredicate domain)
    : names_(std::move(names)), domain_(std::move(domain)) {
    static const char* reserved[] = {"sin", "cos", "exp", "log", "sqrt", "atan"};
    for (size_t i = 0; i < names_.size(); ++i) {
        const std::string& n = names_[i];
        bool ok = !n.empty() && (std::isalpha(static_cast<unsigned char>(n[0])) || n[0] == '_');
        for (char c : n)
            ok = ok && (std::isalnum(static_cast<unsigned char>(c)) || c == '_');
        if (!ok)
            throw ShapeError("invalid coordinate name '" + n + "'");
        for (const char* r : reserved)
            if (n == r)
                throw ShapeError("coordinate name '" + n + "' is a function name");
        for (size_t j = 0; j < i; ++j)
            if (names_[j] == n)
                throw ShapeError("duplicate coordinate name '" + n + "'");
    }
}

int Chart::indexOf(std::string_view name) const {
    for (size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name)
            return static_cast<int>(i);
    return -1;
}

bool Chart::contains(std::span<const double> p) const {
    if (static_cast<int>(p.size()) != dim())
        return false;
    return !domain_ || domain_(p);
}

Chart numberedChart(int n, std::string_view prefix) {
    std::vector<std::string> names;
    for (int i = 1; i <= n; ++i)
        names.push_back(std::string(prefix) + std::to_string(i));
    return Chart(std::move(names));
}

Box Box::cube(int n, double lo, double hi) {
    return Box{std::vector<double>(static_cast<size_t>(n), lo), std::vector<double>(static_cast<size_t>(n), hi)};
}

} // namespace ngtlab

namespace ngtlab::expr {

namespace {

using NodePtr = std::shared_ptr<const Node>;

NodePtr constantNode(double v) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Constant;
    n->value = v;
    return n;
}

Expr raw(Kind k, const Expr& a, const Expr& b = Expr(), int index = -1) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->a = a.shared();
    if (k == Kind::Add || k == Kind::Sub || k == Kind::Mul || k == Kind::Div)
        n->b = b.shared();
    n->index = index;
    return Expr::fromNode(std::move(n));
}

bool isUnary(Kind k) {
    switch (k) {
    case Kind::Neg:
    case Kind::Sin:
    case Kind::Cos:
    case Kind::Exp:
    case Kind::Log:
    case Kind::Sqrt:
    case Kind::Atan:
    case Kind::Pow:
        return true;
    default:
        return false;
    }
}

bool isBinary(Kind k) {
    return k == Kind::Add || k == Kind::Sub || k == Kind::Mul || k == Kind::Div;
}

// Folding only happens when the result is finite and no domain error is hidden.
bool foldable(double v) { return std::isfinite(v); }

const char* functionName(Kind k) {
    switch (k) {
    case Kind::Sin: return "sin";
    case Kind::Cos: return "cos";
    case Kind::Exp: return "exp";
    case Kind::Log: return "log";
    case Kind::Sqrt: return "sqrt";
    case Kind::Atan: return "atan";
    default: return "";
    }
}

Expr applyFunction(Kind k, const Expr& a) {
    if (a.isConstant()) {
        double c = a.constant();
        double v = 0.0;
        bool ok = true;
        switch (k) {
        case Kind::Sin: v = std::sin(c); break;
        case Kind::Cos: v = std::cos(c); break;
        case Kind::Exp: v = std::exp(c); break;
        case Kind::Atan: v = std::atan(c); break;
        case Kind::Log: ok = c > 0; v = ok ? std::log(c) : 0.0; break;
        case Kind::Sqrt: ok = c >= 0; v = ok ? std::sqrt(c) : 0.0; break;
        default: ok = false;
        }
        if (ok && foldable(v))
            return Expr(v);
    }
    return raw(k, a);
}

std::string clip(std::string s) {
    if (s.size() > 160)
        s = s.substr(0, 157) + "...";
    return s;
}

} // namespace

Expr::Expr() : node_(constantNode(0.0)) {}
Expr::Expr(double value) : node_(constantNode(value)) {}

Expr Expr::fromNode(std::shared_ptr<const Node> n) {
    Expr e;
    e.node_ = std::move(n);
    return e;
}

Expr Expr::variable(int index, std::string name) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Variable;
    n->index = index;
    n->name = std::move(name);
    return fromNode(std::move(n));
}

Kind Expr::kind() const { return node_->kind; }
double Expr::constant() const { return node_->value; }
int Expr::variableIndex() const { return node_->index; }
const std::string& Expr::variableName() const { return node_->name; }
int Expr::exponent() const { return node_->index; }

int Expr::arity() const {
    if (isBinary(kind()))
        return 2;
    return isUnary(kind()) ? 1 : 0;
}

Expr Expr::operand(int i) const {
    return fromNode(i == 0 ? node_->a : node_->b);
}

bool operator==(const Expr& x, const Expr& y) {
    const Node* a = x.node();
    const Node* b = y.node();
    if (a == b)
        return true;
    if (a->kind != b->kind)
        return false;
    switch (a->kind) {
    case Kind::Constant:
        return a->value == b->value;
    case Kind::Variable:
        return a->index == b->index && a->name == b->name;
    case Kind::Pow:
        return a->index == b->index && x.operand(0) == y.operand(0);
    default:
        break;
    }
    if (!(x.operand(0) == y.operand(0)))
        return false;
    return x.arity() == 1 || x.operand(1) == y.operand(1);
}

Expr operator+(const Expr& a, const Expr& b) {
    if (a.isConstant() && b.isConstant() && foldable(a.constant() + b.constant()))
        return Expr(a.constant() + b.constant());
    if (a.isConstant(0.0))
        return b;
    if (b.isConstant(0.0))
        return a;
    return raw(Kind::Add, a, b);
}

Expr operator-(const Expr& a, const Expr& b) {
    if (a.isConstant() && b.isConstant() && foldable(a.constant() - b.constant()))
        return Expr(a.constant() - b.constant());
    if (b.isConstant(0.0))
        return a;
    if (a.isConstant(0.0))
        return -b;
    return raw(Kind::Sub, a, b);
}

Expr operator*(const Expr& a, const Expr& b) {
    if (a.isConstant() && b.isConstant() && foldable(a.constant() * b.constant()))
        return Expr(a.constant() * b.constant());
    if (a.isConstant(0.0) || b.isConstant(0.0))
        return Expr(0.0);
    if (a.isConstant(1.0))
        return b;
    if (b.isConstant(1.0))
        return a;
    if (a.isConstant(-1.0))
        return -b;
    if (b.isConstant(-1.0))
        return -a;
    return raw(Kind::Mul, a, b);
}

Expr operator/(const Expr& a, const Expr& b) {
    if (a.isConstant() && b.isConstant() && b.constant() != 0.0 && foldable(a.constant() / b.constant()))
        return Expr(a.constant() / b.constant());
    if (b.isConstant(1.0))
        return a;
    return raw(Kind::Div, a, b);
}

Expr operator-(const Expr& a) {
    if (a.isConstant())
        return Expr(-a.constant());
    if (a.kind() == Kind::Neg)
        return a.operand(0);
    return raw(Kind::Neg, a);
}

Expr pow(const Expr& base, int exponent) {
    if (exponent == 0)
        return Expr(1.0);
    if (exponent == 1)
        return base;
    if (base.isConstant()) {
        double c = base.constant();
        if (!(c == 0.0 && exponent < 0)) {
            double v = std::pow(c, static_cast<double>(exponent));
            if (foldable(v))
                return Expr(v);
        }
    }
    return raw(Kind::Pow, base, Expr(), exponent);
}

Expr sin(const Expr& a) { return applyFunction(Kind::Sin, a); }
Expr cos(const Expr& a) { return applyFunction(Kind::Cos, a); }
Expr exp(const Expr& a) { return applyFunction(Kind::Exp, a); }
Expr log(const Expr& a) { return applyFunction(Kind::Log, a); }
Expr sqrt(const Expr& a) { return applyFunction(Kind::Sqrt, a); }
Expr atan(const Expr& a) { return applyFunction(Kind::Atan, a); }

Expr& operator+=(Expr& a, const Expr& b) { return a = a + b; }
Expr& operator-=(Expr& a, const Expr& b) { return a = a - b; }
Expr& operator*=(Expr& a, const Expr& b) { return a = a * b; }

// ---------------------------------------------------------------------------
// errors

namespace {
std::string joinExpected(const std::vector<std::string>& expected) {
    std::string out;
    for (size_t i = 0; i < expected.size(); ++i) {
        if (i)
            out += ", ";
        out += expected[i];
    }
    return out;
}
} // namespace

ParseError::ParseError(size_t offset, std::string message, std::vector<std::string> expected)
    : Error("parse error at offset " + std::to_string(offset) + ": " + message +
            (expected.empty() ? std::string() : " (expected " + joinExpected(expected) + ")")),
      offset_(offset), detail_(std::move(message)), expected_(std::move(expected)) {}

EvalError::EvalError(std::string message, std::string where)
    : Error(message + " in '" + where + "'"), where_(std::move(where)) {}

// ---------------------------------------------------------------------------
// parser

namespace {

class Parser {
public:
    Parser(std::string_view text, std::span<const std::string> names) : text_(text), names_(names) {}

    Expr run() {
        skipSpace();
        if (pos_ == text_.size())
            throw ParseError(pos_, "empty input", operandStart());
        Expr e = parseSum();
        skipSpace();
        if (pos_ != text_.size()) {
            if (text_[pos_] == ')')
                throw ParseError(pos_, "unbalanced ')'", {"operator", "end of input"});
            throw ParseError(pos_, "unexpected '" + std::string(1, text_[pos_]) + "'", {"operator", "end of input"});
        }
        return e;
    }

private:
    std::string_view text_;
    std::span<const std::string> names_;
    size_t pos_ = 0;

    static std::vector<std::string> operandStart() { return {"number", "identifier", "'('", "'-'"}; }

    void skipSpace() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool accept(char c) {
        skipSpace();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Expr parseSum() {
        Expr e = parseProduct();
        for (;;) {
            if (accept('+'))
                e = e + parseProduct();
            else if (accept('-'))
                e = e - parseProduct();
            else
                return e;
        }
    }

    Expr parseProduct() {
        Expr e = parseUnary();
        for (;;) {
            if (accept('*'))
                e = e * parseUnary();
            else if (accept('/'))
                e = e / parseUnary();
            else
                return e;
        }
    }

    Expr parseUnary() {
        if (accept('-'))
            return -parseUnary();
        return parsePower();
    }

    Expr parsePower() {
        Expr base = parsePrimary();
        if (!accept('^'))
            return base;
        skipSpace();
        size_t start = pos_;
        bool negative = false;
        if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
            negative = text_[pos_] == '-';
            ++pos_;
        }
        size_t digits = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        if (pos_ == digits)
            throw ParseError(start, pos_ == text_.size() ? "missing exponent" : "exponent must be an integer literal",
                             {"integer"});
        if (pos_ < text_.size() && (text_[pos_] == '.' || text_[pos_] == 'e' || text_[pos_] == 'E'))
            throw ParseError(start, "non-integer exponent", {"integer"});
        int k = 0;
        auto res = std::from_chars(text_.data() + digits, text_.data() + pos_, k);
        if (res.ec != std::errc() || k > 64)
            throw ParseError(start, "exponent out of range", {"integer with |k| <= 64"});
        return pow(base, negative ? -k : k);
    }

    Expr parsePrimary() {
        skipSpace();
        if (pos_ == text_.size())
            throw ParseError(pos_, "unexpected end of input", operandStart());
        char c = text_[pos_];
        if (c == '(') {
            size_t open = pos_;
            ++pos_;
            Expr e = parseSum();
            if (!accept(')')) {
                skipSpace();
                throw ParseError(pos_, "unbalanced '(' opened at offset " + std::to_string(open), {"')'", "operator"});
            }
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
            return parseNumber();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
            return parseIdentifier();
        throw ParseError(pos_, "unexpected '" + std::string(1, c) + "'", operandStart());
    }

    Expr parseNumber() {
        size_t start = pos_;
        auto digitsAt = [&](size_t& p) {
            size_t s = p;
            while (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p])))
                ++p;
            return p - s;
        };
        size_t p = pos_;
        size_t intDigits = digitsAt(p);
        size_t fracDigits = 0;
        if (p < text_.size() && text_[p] == '.') {
            ++p;
            fracDigits = digitsAt(p);
        }
        if (intDigits + fracDigits == 0)
            throw ParseError(start, "malformed number", {"digit"});
        if (p < text_.size() && (text_[p] == 'e' || text_[p] == 'E')) {
            size_t q = p + 1;
            if (q < text_.size() && (text_[q] == '+' || text_[q] == '-'))
                ++q;
            size_t expDigits = digitsAt(q);
            if (expDigits == 0)
                throw ParseError(q, "malformed exponent in number", {"digit"});
            p = q;
        }
        double v = 0.0;
        auto res = std::from_chars(text_.data() + start, text_.data() + p, v);
        if (res.ec != std::errc() || !std::isfinite(v))
            throw ParseError(start, "number out of range", {"finite number"});
        pos_ = p;
        return Expr(v);
    }

    Expr parseIdentifier() {
        size_t start = pos_;
        while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        std::string_view id = text_.substr(start, pos_ - start);
        static const std::pair<const char*, Kind> functions[] = {
            {"sin", Kind::Sin}, {"cos", Kind::Cos}, {"exp", Kind::Exp},
            {"log", Kind::Log}, {"sqrt", Kind::Sqrt}, {"atan", Kind::Atan},
        };
        for (const auto& [name, kind] : functions) {
            if (id != name)
                continue;
            if (!accept('(')) {
                skipSpace();
                throw ParseError(pos_, "expected '(' after function '" + std::string(id) + "'", {"'('"});
            }
            size_t open = pos_ - 1;
            Expr arg = parseSum();
            if (!accept(')')) {
                skipSpace();
                throw ParseError(pos_, "unbalanced '(' opened at offset " + std::to_string(open), {"')'", "operator"});
            }
            return applyFunction(kind, arg);
        }
        for (size_t i = 0; i < names_.size(); ++i)
            if (names_[i] == id)
                return Expr::variable(static_cast<int>(i), std::string(id));
        std::vector<std::string> expected(names_.begin(), names_.end());
        for (const auto& f : functions)
            expected.push_back(std::string(f.first) + "(");
        throw ParseError(start, "unknown identifier '" + std::string(id) + "'", std::move(expected));
    }
};

} // namespace

Expr parse(std::string_view text, std::span<const std::string> names) {
    return Parser(text, names).run();
}

Expr parse(std::string_view text, const Chart& chart) {
    return parse(text, std::span<const std::string>(chart.names()));
}

// ---------------------------------------------------------------------------
// differentiation

namespace {

class Differentiator {
public:
    explicit Differentiator(int coord) : coord_(coord) {}

    Expr run(const Expr& e) {
        auto it = memo_.find(e.node());
        if (it != memo_.end())
            return it->second;
        Expr d = compute(e);
        memo_.emplace(e.node(), d);
        return d;
    }

private:
    int coord_;
    std::unordered_map<const Node*, Expr> memo_;

    Expr compute(const Expr& e) {
        switch (e.kind()) {
        case Kind::Constant:
            return Expr(0.0);
        case Kind::Variable:
            return Expr(e.variableIndex() == coord_ ? 1.0 : 0.0);
        default:
            break;
        }
        Expr u = e.operand(0);
        Expr du = run(u);
        if (e.arity() == 1 && du.isConstant(0.0))
            return Expr(0.0);
        switch (e.kind()) {
        case Kind::Neg: return -du;
        case Kind::Sin: return cos(u) * du;
        case Kind::Cos: return -(sin(u) * du);
        case Kind::Exp: return e * du;
        case Kind::Log: return du / u;
        case Kind::Sqrt: return du / (Expr(2.0) * e);
        case Kind::Atan: return du / (Expr(1.0) + pow(u, 2));
        case Kind::Pow: {
            int k = e.exponent();
            return Expr(static_cast<double>(k)) * pow(u, k - 1) * du;
        }
        default:
            break;
        }
        Expr v = e.operand(1);
        Expr dv = run(v);
        switch (e.kind()) {
        case Kind::Add: return du + dv;
        case Kind::Sub: return du - dv;
        case Kind::Mul: return du * v + u * dv;
        case Kind::Div:
            if (dv.isConstant(0.0))
                return du / v;
            return (du * v - u * dv) / pow(v, 2);
        default:
            throw Error("differentiate: unreachable node kind");
        }
    }
};

} // namespace

Expr differentiate(const Expr& e, int coord) {
    return Differentiator(coord).run(e);
}

Expr differentiate(const Expr& e, std::string_view coord, const Chart& chart) {
    int i = chart.indexOf(coord);
    if (i < 0)
        throw ShapeError("differentiate: '" + std::string(coord) + "' is not a coordinate of the chart");
    return differentiate(e, i);
}

// ---------------------------------------------------------------------------
// evaluation

namespace {

double applyKind(Kind k, double a, double b, int exponent, const Node* n) {
    auto fail = [&](const char* what) -> double {
        throw EvalError(std::string("domain error: ") + what, clip(toString(Expr::fromNode(
            std::shared_ptr<const Node>(std::shared_ptr<const Node>(), n)))));
    };
    double r = 0.0;
    switch (k) {
    case Kind::Neg: r = -a; break;
    case Kind::Sin: r = std::sin(a); break;
    case Kind::Cos: r = std::cos(a); break;
    case Kind::Exp: r = std::exp(a); break;
    case Kind::Atan: r = std::atan(a); break;
    case Kind::Log:
        if (!(a > 0.0))
            return fail("log of non-positive value");
        r = std::log(a);
        break;
    case Kind::Sqrt:
        if (a < 0.0)
            return fail("sqrt of negative value");
        r = std::sqrt(a);
        break;
    case Kind::Pow:
        if (a == 0.0 && exponent < 0)
            return fail("division by zero");
        r = std::pow(a, static_cast<double>(exponent));
        break;
    case Kind::Add: r = a + b; break;
    case Kind::Sub: r = a - b; break;
    case Kind::Mul: r = a * b; break;
    case Kind::Div:
        if (b == 0.0)
            return fail("division by zero");
        r = a / b;
        break;
    default:
        return fail("bad node");
    }
    if (!std::isfinite(r))
        return fail("non-finite value");
    return r;
}

double evalNode(const Node* n, std::span<const double> p) {
    switch (n->kind) {
    case Kind::Constant:
        return n->value;
    case Kind::Variable:
        if (n->index < 0 || static_cast<size_t>(n->index) >= p.size())
            throw ShapeError("evaluate: point has " + std::to_string(p.size()) + " coordinates, variable '" + n->name +
                             "' needs index " + std::to_string(n->index));
        return p[static_cast<size_t>(n->index)];
    default:
        break;
    }
    double a = evalNode(n->a.get(), p);
    double b = n->b ? evalNode(n->b.get(), p) : 0.0;
    return applyKind(n->kind, a, b, n->index, n);
}

} // namespace

double evaluate(const Expr& e, std::span<const double> p) {
    return evalNode(e.node(), p);
}

// ---------------------------------------------------------------------------
// printing

namespace {

int precedence(const Node* n) {
    switch (n->kind) {
    case Kind::Add:
    case Kind::Sub:
        return 1;
    case Kind::Mul:
    case Kind::Div:
        return 2;
    case Kind::Neg:
        return 3;
    case Kind::Pow:
        return 4;
    case Kind::Constant:
        return std::signbit(n->value) ? 3 : 5;
    default:
        return 5;
    }
}

void formatNumber(double v, std::string& out) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    out.append(buf, res.ptr);
}

void print(const Node* n, std::string& out);

void printChild(const Node* child, bool parens, std::string& out) {
    if (parens)
        out += '(';
    print(child, out);
    if (parens)
        out += ')';
}

void print(const Node* n, std::string& out) {
    switch (n->kind) {
    case Kind::Constant:
        formatNumber(n->value, out);
        return;
    case Kind::Variable:
        out += n->name;
        return;
    case Kind::Neg:
        out += '-';
        printChild(n->a.get(), precedence(n->a.get()) < 3, out);
        return;
    case Kind::Pow:
        printChild(n->a.get(), precedence(n->a.get()) <= 4, out);
        out += '^';
        out += std::to_string(n->index);
        return;
    case Kind::Sin:
    case Kind::Cos:
    case Kind::Exp:
    case Kind::Log:
    case Kind::Sqrt:
    case Kind::Atan:
        out += functionName(n->kind);
        printChild(n->a.get(), true, out);
        return;
    default:
        break;
    }
    int p = precedence(n);
    printChild(n->a.get(), precedence(n->a.get()) < p, out);
    switch (n->kind) {
    case Kind::Add: out += " + "; break;
    case Kind::Sub: out += " - "; break;
    case Kind::Mul: out += '*'; break;
    default: out += '/'; break;
    }
    printChild(n->b.get(), precedence(n->b.get()) <= p, out);
}

} // namespace

std::string toString(const Expr& e) {
    std::string out;
    print(e.node(), out);
    return out;
}

size_t nodeCount(const Expr& e) {
    std::unordered_set<const Node*> seen;
    std::vector<const Node*> stack{e.node()};
    while (!stack.empty()) {
        const Node* n = stack.back();
        stack.pop_back();
        if (!n || !seen.insert(n).second)
            continue;
        stack.push_back(n->a.get());
        stack.push_back(n->b.get());
    }
    return seen.size();
}

// ---------------------------------------------------------------------------
// flattened evaluation

Program::Program(std::span<const Expr> outputs) {
    std::unordered_map<const Node*, int> slot;
    keepAlive_.assign(outputs.begin(), outputs.end());
    // Iterative post-order so deep derivative trees do not exhaust the stack.
    for (const Expr& out : outputs) {
        std::vector<std::pair<const Node*, bool>> stack{{out.node(), false}};
        while (!stack.empty()) {
            auto [n, expanded] = stack.back();
            stack.pop_back();
            if (slot.count(n))
                continue;
            if (!expanded) {
                stack.push_back({n, true});
                if (n->b)
                    stack.push_back({n->b.get(), false});
                if (n->a)
                    stack.push_back({n->a.get(), false});
                continue;
            }
            Instr ins{n->kind, -1, -1, n->index, n->value};
            if (n->a)
                ins.a = slot.at(n->a.get());
            if (n->b)
                ins.b = slot.at(n->b.get());
            slot.emplace(n, static_cast<int>(code_.size()));
            code_.push_back(ins);
            origin_.push_back(n);
        }
        outputs_.push_back(slot.at(out.node()));
    }
}

void Program::run(std::span<const double> p, std::span<double> out) const {
    if (out.size() != outputs_.size())
        throw ShapeError("Program::run: output size mismatch");
    std::vector<double> reg(code_.size());
    for (size_t i = 0; i < code_.size(); ++i) {
        const Instr& ins = code_[i];
        switch (ins.kind) {
        case Kind::Constant:
            reg[i] = ins.value;
            break;
        case Kind::Variable:
            if (ins.k < 0 || static_cast<size_t>(ins.k) >= p.size())
                throw ShapeError("evaluate: point has too few coordinates for '" + origin_[i]->name + "'");
            reg[i] = p[static_cast<size_t>(ins.k)];
            break;
        default:
            reg[i] = applyKind(ins.kind, reg[static_cast<size_t>(ins.a)],
                               ins.b >= 0 ? reg[static_cast<size_t>(ins.b)] : 0.0, ins.k, origin_[i]);
        }
    }
    for (size_t j = 0; j < outputs_.size(); ++j)
        out[j] = reg[static_cast<size_t>(outputs_[j])];
}

} // namespace ngtlab::expr
