#include "ngtlab/specfile.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "ngtlab/tensor.hpp"

namespace ngtlab {

SpecError::SpecError(const std::string& source, int line, const std::string& message)
    : Error(source + (line > 0 ? ":" + std::to_string(line) : std::string()) + ": " + message), line_(line) {}

namespace {

std::string trim(std::string_view s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos)
        return {};
    size_t e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> splitList(std::string_view s) {
    std::vector<std::string> out;
    size_t start = 0;
    while (true) {
        size_t comma = s.find(',', start);
        out.push_back(trim(s.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
        if (comma == std::string_view::npos)
            break;
        start = comma + 1;
    }
    return out;
}

struct Entry {
    std::string key;
    std::string value;
    int line = 0;
};

struct Section {
    int line = 0;
    std::vector<Entry> entries;
};

class Reader {
public:
    Reader(std::string_view text, std::string source) : source_(std::move(source)) { read(text); }

    [[noreturn]] void fail(int line, const std::string& msg) const { throw SpecError(source_, line, msg); }

    const Section* section(const std::string& name) const {
        auto it = sections_.find(name);
        return it == sections_.end() ? nullptr : &it->second;
    }

    void requireKnown(std::initializer_list<std::string_view> known) const {
        for (const auto& [name, sec] : sections_)
            if (std::find(known.begin(), known.end(), name) == known.end())
                fail(sec.line, "unknown section [" + name + "]");
    }

private:
    std::string source_;
    std::map<std::string, Section> sections_;

    void read(std::string_view text) {
        std::istringstream in{std::string(text)};
        std::string raw;
        Section* current = nullptr;
        int line = 0;
        while (std::getline(in, raw)) {
            ++line;
            std::string s = trim(raw.substr(0, raw.find('#')));
            if (s.empty())
                continue;
            if (s.front() == '[') {
                if (s.back() != ']')
                    fail(line, "malformed section header '" + s + "'");
                std::string name = trim(std::string_view(s).substr(1, s.size() - 2));
                if (sections_.count(name))
                    fail(line, "duplicate section [" + name + "]");
                current = &sections_[name];
                current->line = line;
                continue;
            }
            size_t eq = s.find('=');
            if (eq == std::string::npos)
                fail(line, "expected 'key = value'");
            if (!current)
                fail(line, "entry outside of any section");
            std::string key = trim(std::string_view(s).substr(0, eq));
            std::string value = trim(std::string_view(s).substr(eq + 1));
            if (key.empty() || value.empty())
                fail(line, "empty key or value");
            for (const Entry& e : current->entries)
                if (e.key == key)
                    fail(line, "duplicate key '" + key + "' (first given on line " + std::to_string(e.line) + ")");
            current->entries.push_back(Entry{key, value, line});
        }
    }
};

std::optional<int> parseIndex(std::string_view s) {
    int v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
        return std::nullopt;
    return v;
}

double parseNumber(const Reader& r, const Entry& e, const std::string& text) {
    double v = 0.0;
    auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || p != text.data() + text.size() || !std::isfinite(v))
        r.fail(e.line, "expected a number, got '" + text + "'");
    return v;
}

struct PairKey {
    int i, j;
};

PairKey pairKey(const Reader& r, const Entry& e, int n) {
    auto parts = splitList(e.key);
    if (parts.size() != 2)
        r.fail(e.line, "expected an index pair 'i,j', got '" + e.key + "'");
    auto i = parseIndex(parts[0]), j = parseIndex(parts[1]);
    if (!i || !j)
        r.fail(e.line, "indices must be integers in '" + e.key + "'");
    if (*i < 1 || *i > n || *j < 1 || *j > n)
        r.fail(e.line, "index out of range 1.." + std::to_string(n) + " in '" + e.key + "'");
    return {*i - 1, *j - 1};
}

expr::Expr parseValue(const Reader& r, const Entry& e, const Chart& chart) {
    try {
        return expr::parse(e.value, chart);
    } catch (const expr::ParseError& err) {
        r.fail(e.line, "in '" + e.key + "': " + err.what());
    }
}

// Deterministic probe points spread over the box.
std::vector<Point> probes(const Box& box) {
    std::vector<Point> out;
    const double golden = 0.6180339887498949;
    for (int k = 0; k < 8; ++k) {
        Point p(static_cast<size_t>(box.dim()));
        for (int i = 0; i < box.dim(); ++i) {
            double t = std::fmod(0.5 + golden * (k + 1) * (i + 1) + 0.1 * k, 1.0);
            p[static_cast<size_t>(i)] = box.lo[static_cast<size_t>(i)] + t * (box.hi[static_cast<size_t>(i)] - box.lo[static_cast<size_t>(i)]);
        }
        out.push_back(std::move(p));
    }
    return out;
}

std::string describe(const Point& p) {
    std::ostringstream o;
    o << '(';
    for (size_t i = 0; i < p.size(); ++i)
        o << (i ? ", " : "") << p[i];
    o << ')';
    return o.str();
}

void validate(const Manifold& m, const std::string& source, bool fromEndomorphism) {
    int n = m.dim();
    for (const Point& p : probes(m.domain)) {
        if (!m.chart.contains(p))
            continue;
        PointFrame f;
        try {
            f = makeFrame(m, p);
        } catch (const Error& e) {
            throw SpecError(source, 0, std::string(e.what()) + " at probe point " + describe(p));
        }
        if (fromEndomorphism)
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j)
                    if (std::abs(f.F(i, j) + f.F(j, i)) > 1e-9 * (1.0 + std::abs(f.F(i, j))))
                        throw SpecError(source, 0,
                                        "endomorphism is not g-skew: F(" + std::to_string(i + 1) + "," +
                                            std::to_string(j + 1) + ") != -F(" + std::to_string(j + 1) + "," +
                                            std::to_string(i + 1) + ") at " + describe(p));
        if (f.hasContact) {
            double ex = dot(f.eta, f.xi);
            if (std::abs(ex - 1.0) > 1e-9)
                throw SpecError(source, 0, "eta(xi) = " + std::to_string(ex) + " at " + describe(p));
        }
    }
}

} // namespace

Manifold parseSpec(std::string_view text, const std::string& source) {
    Reader r(text, source);
    r.requireKnown({"chart", "metric", "two-form", "endomorphism", "contact", "domain"});

    const Section* chartSec = r.section("chart");
    if (!chartSec)
        r.fail(0, "missing [chart] section");
    std::string name = "spec";
    std::vector<std::string> coords;
    std::optional<int> dim;
    int coordsLine = chartSec->line;
    for (const Entry& e : chartSec->entries) {
        if (e.key == "name")
            name = e.value;
        else if (e.key == "coords") {
            coords = splitList(e.value);
            coordsLine = e.line;
        } else if (e.key == "dim") {
            dim = parseIndex(e.value);
            if (!dim || *dim < 1)
                r.fail(e.line, "dim must be a positive integer");
        } else
            r.fail(e.line, "unknown key '" + e.key + "' in [chart]");
    }
    if (coords.empty()) {
        if (!dim)
            r.fail(chartSec->line, "[chart] needs coords or dim");
        coords = numberedChart(*dim).names();
    }
    if (dim && *dim != static_cast<int>(coords.size()))
        r.fail(coordsLine, "dim = " + std::to_string(*dim) + " but " + std::to_string(coords.size()) + " coordinates");
    Chart chart = [&] {
        try {
            return Chart(coords);
        } catch (const Error& e) {
            r.fail(coordsLine, e.what());
        }
    }();
    int n = chart.dim();

    const Section* metricSec = r.section("metric");
    if (!metricSec)
        r.fail(0, "missing [metric] section");
    std::vector<expr::Expr> g(static_cast<size_t>(n * n));
    for (const Entry& e : metricSec->entries) {
        auto [i, j] = pairKey(r, e, n);
        if (i > j)
            r.fail(e.line, "metric keys must be upper triangle (i <= j), got '" + e.key + "'");
        expr::Expr v = parseValue(r, e, chart);
        g[static_cast<size_t>(i * n + j)] = v;
        g[static_cast<size_t>(j * n + i)] = v;
    }
    TensorField gField = TensorField::fromExprs(n, Valence{2, 0}, g, Symmetry::Symmetric);

    const Section* twoForm = r.section("two-form");
    const Section* endo = r.section("endomorphism");
    if (twoForm && endo)
        r.fail(endo->line, "give either [two-form] or [endomorphism], not both");
    if (!twoForm && !endo)
        r.fail(0, "missing [two-form] or [endomorphism] section");

    Manifold m;
    m.name = name;
    if (twoForm) {
        std::vector<expr::Expr> F(static_cast<size_t>(n * n));
        for (const Entry& e : twoForm->entries) {
            auto [i, j] = pairKey(r, e, n);
            if (i >= j)
                r.fail(e.line, "two-form keys must be strict upper triangle (i < j), got '" + e.key + "'");
            expr::Expr v = parseValue(r, e, chart);
            F[static_cast<size_t>(i * n + j)] = v;
            F[static_cast<size_t>(j * n + i)] = -v;
        }
        m.metric = GeneralizedMetric::fromTwoForm(gField, TensorField::fromExprs(n, Valence{2, 0}, F, Symmetry::Skew));
    } else {
        std::vector<expr::Expr> A(static_cast<size_t>(n * n));
        for (const Entry& e : endo->entries) {
            auto [i, j] = pairKey(r, e, n);
            A[static_cast<size_t>(i * n + j)] = parseValue(r, e, chart);
        }
        m.metric = GeneralizedMetric::fromEndomorphism(gField, TensorField::fromExprs(n, Valence{1, 1}, A));
    }

    if (const Section* c = r.section("contact")) {
        std::vector<expr::Expr> eta(static_cast<size_t>(n)), xi(static_cast<size_t>(n));
        for (const Entry& e : c->entries) {
            size_t open = e.key.find('['), close = e.key.find(']');
            std::string head = e.key.substr(0, open);
            auto idx = open != std::string::npos && close == e.key.size() - 1
                           ? parseIndex(std::string_view(e.key).substr(open + 1, close - open - 1))
                           : std::nullopt;
            if ((head != "eta" && head != "xi") || !idx)
                r.fail(e.line, "expected eta[i] or xi[i], got '" + e.key + "'");
            int k = idx.value_or(0);
            if (k < 1 || k > n)
                r.fail(e.line, "index out of range 1.." + std::to_string(n) + " in '" + e.key + "'");
            (head == "eta" ? eta : xi)[static_cast<size_t>(k - 1)] = parseValue(r, e, chart);
        }
        m.contact = ContactPair{TensorField::fromExprs(n, Valence{1, 0}, eta), TensorField::fromExprs(n, Valence{0, 1}, xi)};
    }

    m.domain = Box::cube(n, -1.0, 1.0);
    if (const Section* d = r.section("domain")) {
        for (const Entry& e : d->entries) {
            int i = chart.indexOf(e.key);
            if (i < 0)
                r.fail(e.line, "unknown coordinate '" + e.key + "' in [domain]");
            auto parts = splitList(e.value);
            if (parts.size() != 2)
                r.fail(e.line, "expected 'lo, hi'");
            double lo = parseNumber(r, e, parts[0]), hi = parseNumber(r, e, parts[1]);
            if (!(lo < hi))
                r.fail(e.line, "empty interval");
            m.domain.lo[static_cast<size_t>(i)] = lo;
            m.domain.hi[static_cast<size_t>(i)] = hi;
        }
    }
    m.chart = std::move(chart);
    m.description = "loaded from " + source;
    validate(m, source, endo != nullptr);
    return m;
}

Manifold loadSpec(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw SpecError(path, 0, "cannot open file");
    std::ostringstream s;
    s << in.rdbuf();
    return parseSpec(s.str(), path);
}

} // namespace ngtlab
