#include "ngtlab/checks.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace ngtlab {

const char* toString(Suite s) {
    switch (s) {
    case Suite::Auto: return "auto";
    case Suite::Generic: return "generic";
    case Suite::Hermitian: return "hermitian";
    case Suite::ParaHermitian: return "para-hermitian";
    case Suite::Contact: return "contact";
    case Suite::Paracontact: return "paracontact";
    case Suite::Ngt: return "ngt";
    case Suite::Eisenhart: return "eisenhart";
    }
    return "?";
}

std::optional<Suite> parseSuite(std::string_view s) {
    for (Suite v : {Suite::Auto, Suite::Generic, Suite::Hermitian, Suite::ParaHermitian, Suite::Contact,
                    Suite::Paracontact, Suite::Ngt, Suite::Eisenhart})
        if (s == toString(v))
            return v;
    return std::nullopt;
}

std::vector<Point> samplePoints(const Box& box, int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Point> out;
    out.reserve(static_cast<size_t>(std::max(n, 0)));
    for (int k = 0; k < n; ++k) {
        Point p(box.lo.size());
        for (size_t i = 0; i < p.size(); ++i) {
            // 53 random bits, so the stream is the same on every platform.
            double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
            p[i] = box.lo[i] + u * (box.hi[i] - box.lo[i]);
        }
        out.push_back(std::move(p));
    }
    return out;
}

FrameSet evaluateFrames(const Manifold& m, const std::vector<Point>& points) {
    size_t count = points.size();
    std::vector<std::optional<PointFrame>> frames(count);
    std::vector<std::string> errors(count);
    auto work = [&](size_t begin, size_t step) {
        for (size_t k = begin; k < count; k += step) {
            if (!m.chart.contains(points[k])) {
                errors[k] = "outside the chart domain";
                continue;
            }
            try {
                frames[k] = makeFrame(m, points[k]);
            } catch (const Error& e) {
                errors[k] = e.what();
            }
        }
    };
    size_t workers = std::clamp<size_t>(std::thread::hardware_concurrency(), 1, 16);
    workers = std::min(workers, std::max<size_t>(count, 1));
    if (workers == 1) {
        work(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (size_t w = 0; w < workers; ++w)
            pool.emplace_back(work, w, workers);
        for (auto& t : pool)
            t.join();
    }
    FrameSet out;
    for (size_t k = 0; k < count; ++k) {
        if (frames[k])
            out.frames.push_back(std::move(*frames[k]));
        else
            out.skipped.push_back("point " + std::to_string(k) + ": " + errors[k]);
    }
    return out;
}

namespace {

using PerFrame = std::function<void(const PointFrame&, Findings&)>;

Findings overFrames(std::span<const PointFrame> frames, const PerFrame& fn) {
    Findings out;
    for (const PointFrame& f : frames) {
        Findings one;
        fn(f, one);
        out.merge(one);
    }
    return out;
}

bool holds(const Findings& fs, const std::string& name, double tol) {
    auto r = fs.residual(name);
    return r && std::isfinite(*r) && *r <= tol;
}

bool isContactKind(StructureKind k) {
    return k == StructureKind::AlmostContact || k == StructureKind::AlmostParaContact;
}

const char* compatibilityAnchor(StructureKind k) {
    switch (k) {
    case StructureKind::AlmostContact: return "acon";
    case StructureKind::AlmostParaContact: return "apcon";
    default: return "m1";
    }
}

Findings compatibilityFindings(std::span<const PointFrame> frames, StructureKind kind) {
    if (kind == StructureKind::Generic)
        return {};
    return overFrames(frames, [&](const PointFrame& f, Findings& fs) {
        Compatibility c = compatibility(f, kind);
        std::string a = compatibilityAnchor(kind);
        fs.add("structure/square", a, Role::Structural, c.square);
        fs.add("structure/metric", a, Role::Structural, c.metric);
        fs.add("structure/g-skew", a, Role::Structural, c.gSkew);
        if (isContactKind(kind)) {
            fs.add("structure/reeb-kernel", a, Role::Structural, c.reeb);
            fs.add("structure/eta-xi", a, Role::Structural, c.normalization);
            fs.add("structure/eta-dual", a, Role::Structural, c.duality);
            fs.add("structure/F-degenerate", a, Role::Structural, c.degenerate);
        }
    });
}

Findings genericSuite(std::span<const PointFrame> frames, StructureKind kind, const Tolerances& tol) {
    Findings out = overFrames(frames, [&](const PointFrame& f, Findings& fs) {
        Derived d(f);
        Connection eis = eisenhartConnection(f);
        fs.add("generic/levi-civita-torsion", "lcg", Role::Structural, torsionOf(d.lc, f.g).lowered.maxAbs());
        fs.add("generic/levi-civita-nabla-g", "lcg", Role::Identity, nablaBilinear(d.lc, f.g, f.dg).maxAbs());
        fs.add("generic/cyclic-dF-levi-civita", "cconn1", Role::Identity, cyclicDFIdentityResidual(f, d.lc));
        fs.add("generic/cyclic-dF-eisenhart", "cconn1", Role::Identity, cyclicDFIdentityResidual(f, eis));
        fs.add("generic/nijenhuis-levi-civita", "nuj1", Role::Identity,
               maxAbsDiff(nijenhuisViaNablaA(f, d.lc), d.N.lowered));
        fs.add("generic/nijenhuis-eisenhart", "nuj1", Role::Identity,
               maxAbsDiff(nijenhuisViaNablaA(f, eis), d.N.lowered));
        fs.add("generic/skew-torsion-condition", "ndf1", Role::Condition, ndf1Residual(f));
    });
    // Singular A: the structure-specific constructors take over.
    if (isContactKind(kind) || !holds(out, "generic/skew-torsion-condition", tol.identity))
        return out;
    try {
        out.merge(overFrames(frames, [&](const PointFrame& f, Findings& fs) {
            SkewTorsionResult r = skewTorsionExistence(f, tol.identity);
            if (!r.torsion)
                return;
            CompatResidual compat = metricConnectionCompatResidual(f, *r.torsion);
            fs.add("generic/skew-torsion-total-skew", "tor1", Role::Identity, r.torsionSkew);
            fs.add("generic/skew-torsion-image", "tor1", Role::Identity, r.imageCrossCheck);
            fs.add("generic/skew-torsion-nabla-g", "skct", Role::Identity, r.nablaG);
            fs.add("generic/skew-torsion-nabla-F", "skct", Role::Identity, r.nablaF);
            fs.add("generic/skew-torsion-nijenhuis", "nuj2", Role::Identity, r.parallelNijenhuis);
            fs.add("generic/skew-torsion-compatibility", "conn2", Role::Identity, compat.nablaLcF);
            fs.add("generic/skew-torsion-cyclic", "conn1", Role::Identity, compat.cyclic);
        }));
    } catch (const DegenerateStructureError&) {
    }
    return out;
}

// Lowered Eisenhart connection straight from the partials of G = g + F.
Tensor3 eisenhartCoordinateForm(const PointFrame& f) {
    int n = f.n;
    Tensor3 K(n);
    auto dG = [&](int m, int i, int j) { return f.dg(m, i, j) + f.dF(m, i, j); };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                K(i, j, k) = 0.5 * (dG(i, j, k) + dG(j, k, i) - dG(k, j, i));
    return K;
}

Findings eisenhartSuite(std::span<const PointFrame> frames) {
    return overFrames(frames, [&](const PointFrame& f, Findings& fs) {
        Connection c = eisenhartConnection(f);
        Tensor3 dF = exteriorDerivative2(f.dF);
        fs.add("eisenhart/torsion", "Eisen1", Role::Structural, maxAbsDiff(torsionOf(c, f.g).lowered, dF));
        fs.add("eisenhart/nabla-g", "Eisen1", Role::Structural, nablaBilinear(c, f.g, f.dg).maxAbs());
        fs.add("eisenhart/coordinate-form", "Eisen1", Role::Identity,
               maxAbsDiff(lowerLast(c.gamma, f.g), eisenhartCoordinateForm(f)));
        fs.add("eisenhart/nijenhuis", "EisenhN1", Role::Identity, eisenhartNijenhuisResidual(f));
        fs.add("eisenhart/cyclic-dF", "cconn1", Role::Identity, cyclicDFIdentityResidual(f, c));
        fs.add("eisenhart/einstein-metricity", "metein", Role::Info, einsteinMetricityResidual(f, c));
    });
}

Findings ngtSuite(std::span<const PointFrame> frames, const Tolerances& tol) {
    double t = tol.identity;
    Findings out = overFrames(frames, [&](const PointFrame& f, Findings& fs) {
        fs.add("ngt/skew-condition", "skew1", Role::Condition, ngtSkewConditionResidual(f));
        Tensor3 T = (-1.0 / 3.0) * exteriorDerivative2(f.dF);
        fs.add("ngt/nijenhuis-derivation", "ein8", Role::Identity, ein8Guard(f, T).literalVsChain);
    });
    if (!holds(out, "ngt/skew-condition", t))
        return out;
    out.merge(overFrames(frames, [&](const PointFrame& f, Findings& fs) {
        recordNgtSkewPipeline(f, fs, "ngt/pipeline-", t);
        Tensor3 T = (-1.0 / 3.0) * exteriorDerivative2(f.dF);
        NgtDecomposition d = ngtGeneralDecomposition(f, T, t);
        fs.add("ngt/decomposition-cyclic-nabla-g", "ein2", Role::Identity, d.cyclicNablaG);
        fs.add("ngt/decomposition-torsion-cyclic", "ein3", Role::Identity, d.torsionCyclic);
        fs.add("ngt/decomposition-nabla-g", "gencon", Role::Identity, d.nablaGCheck);
        fs.add("ngt/decomposition-nabla-F", "gencon", Role::Identity, d.nablaFCheck);
        fs.add("ngt/decomposition-nabla-A", "ein7", Role::Identity, d.nablaACheck);
        fs.add("ngt/decomposition-connection-forms", "gencon", Role::Identity, d.connectionForms);
        fs.add("ngt/decomposition-metricity", "metein", Role::Identity, d.metricity);
        fs.add("ngt/decomposition-nijenhuis", "ein8", Role::Identity, d.nijenhuis);
        fs.add("ngt/decomposition-vs-skew-connection", "newnbl", Role::Identity,
               maxAbsDiff(d.connection.gamma, ngtSkewConnection(f).gamma));
    }));
    return out;
}

// Corollary-path torsion against -dF/3 where both constructions apply.
Findings crossPath(std::span<const PointFrame> frames, StructureKind kind, const Tolerances& tol) {
    std::string prefix = kind == StructureKind::AlmostContact ? "contact/" : "paracontact/";
    return overFrames(frames, [&](const PointFrame& f, Findings& fs) {
        StructureTorsion s = kind == StructureKind::AlmostContact ? contactSkewTorsion(f, tol.identity)
                                                                  : paracontactSkewTorsion(f, tol.identity);
        if (!s.torsion || ngtSkewConditionResidual(f) > tol.identity)
            return;
        Tensor3 T = (-1.0 / 3.0) * exteriorDerivative2(f.dF);
        fs.add(prefix + "cross-path-torsion-difference", "tac", Role::Info, maxAbsDiff(*s.torsion, T));
    });
}

Findings classSuite(std::span<const PointFrame> frames, StructureKind kind, const Tolerances& tol) {
    Findings out;
    switch (kind) {
    case StructureKind::AlmostHermitian: out = hermitianNgtEquivalence(frames, tol); break;
    case StructureKind::AlmostParaHermitian: out = paraHermitianNgtCheck(frames, tol); break;
    case StructureKind::AlmostContact: out = contactNgtPipeline(frames, tol); break;
    case StructureKind::AlmostParaContact: out = paracontactNgtPipeline(frames, tol); break;
    case StructureKind::Generic: return out;
    }
    out.merge(structureTorsionFindings(frames, kind, tol));
    if (isContactKind(kind))
        out.merge(crossPath(frames, kind, tol));
    return out;
}

StructureKind kindForSuite(Suite s) {
    switch (s) {
    case Suite::Hermitian: return StructureKind::AlmostHermitian;
    case Suite::ParaHermitian: return StructureKind::AlmostParaHermitian;
    case Suite::Contact: return StructureKind::AlmostContact;
    case Suite::Paracontact: return StructureKind::AlmostParaContact;
    default: return StructureKind::Generic;
    }
}

} // namespace

Findings runSuite(std::span<const PointFrame> frames, Suite suite, StructureKind kind, const Tolerances& tol) {
    Findings out;
    switch (suite) {
    case Suite::Auto:
        out.merge(compatibilityFindings(frames, kind));
        out.merge(genericSuite(frames, kind, tol));
        out.merge(eisenhartSuite(frames));
        out.merge(ngtSuite(frames, tol));
        out.merge(classSuite(frames, kind, tol));
        break;
    case Suite::Generic:
        out.merge(compatibilityFindings(frames, kind));
        out.merge(genericSuite(frames, kind, tol));
        break;
    case Suite::Eisenhart: out.merge(eisenhartSuite(frames)); break;
    case Suite::Ngt: out.merge(ngtSuite(frames, tol)); break;
    default: {
        StructureKind wanted = kindForSuite(suite);
        out.merge(compatibilityFindings(frames, wanted));
        bool compatible = true;
        for (const Finding& f : out.items())
            compatible = compatible && std::isfinite(f.residual) && f.residual <= tol.structural;
        if (compatible)
            out.merge(classSuite(frames, wanted, tol));
    }
    }
    return out;
}

CheckReport runChecks(const Manifold& m, const CheckOptions& opts) {
    if (opts.points < 1)
        throw Error("at least one sample point is required");
    auto start = std::chrono::steady_clock::now();

    CheckReport r;
    r.manifold = m.name;
    r.derivatives = toString(m.method());
    r.suite = toString(opts.suite);
    r.seed = opts.seed;
    r.points = opts.points;
    r.tolerances = opts.tol ? Tolerances::fromOverride(*opts.tol) : Tolerances::forMethod(m.method());

    FrameSet fs = evaluateFrames(m, samplePoints(m.domain, opts.points, opts.seed));
    r.skipped = static_cast<int>(fs.skipped.size());
    for (size_t i = 0; i < fs.skipped.size() && i < 5; ++i)
        r.skipReasons.push_back(fs.skipped[i]);

    StructureKind kind = StructureKind::Generic;
    if (!fs.frames.empty())
        kind = classify(fs.frames, r.tolerances.structural);
    r.structure = toString(kind);

    Findings findings = runSuite(fs.frames, opts.suite, kind, r.tolerances);
    for (const Finding& f : findings.items()) {
        CheckRecord c;
        c.name = f.name;
        c.anchor = f.anchor;
        c.role = f.role;
        c.residual = f.residual;
        c.samples = f.samples;
        if (f.role == Role::Info) {
            c.verdict = Verdict::Info;
        } else {
            c.tol = r.tolerances.forRole(f.role);
            c.verdict = judge(f.residual, c.tol, r.tolerances.reject);
        }
        r.records.push_back(std::move(c));
    }
    std::stable_sort(r.records.begin(), r.records.end(),
                     [](const CheckRecord& a, const CheckRecord& b) { return a.name < b.name; });
    r.wallSeconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

namespace {

const char* roleName(Role r) {
    switch (r) {
    case Role::Structural: return "structural";
    case Role::Condition: return "condition";
    case Role::Identity: return "identity";
    case Role::Info: return "info";
    }
    return "?";
}

} // namespace

std::string toJson(const CheckReport& r) {
    using nlohmann::ordered_json;
    ordered_json j;
    j["manifold"] = r.manifold;
    j["structure"] = r.structure;
    j["derivatives"] = r.derivatives;
    j["suite"] = r.suite;
    j["seed"] = r.seed;
    j["points"] = r.points;
    j["evaluated"] = r.points - r.skipped;
    j["skipped"] = r.skipped;
    j["skip_reasons"] = r.skipReasons;
    j["tolerances"] = {{"structural", r.tolerances.structural},
                       {"identity", r.tolerances.identity},
                       {"reject", r.tolerances.reject}};
    ordered_json checks = ordered_json::array();
    for (const CheckRecord& c : r.records) {
        ordered_json e;
        e["name"] = c.name;
        e["anchor"] = c.anchor;
        e["role"] = roleName(c.role);
        // NaN is not valid JSON.
        if (std::isfinite(c.residual))
            e["max_residual"] = c.residual;
        else
            e["max_residual"] = nullptr;
        e["tolerance"] = c.tol;
        e["verdict"] = toString(c.verdict);
        e["samples"] = c.samples;
        checks.push_back(std::move(e));
    }
    j["checks"] = std::move(checks);
    j["passed"] = allPassed(r);
    return j.dump(2) + "\n";
}

std::string formatTable(const CheckReport& r) {
    std::ostringstream o;
    char buf[256];
    o << "manifold " << r.manifold << " (" << r.structure << ", " << r.derivatives << " derivatives)\n";
    o << "suite " << r.suite << ", seed " << r.seed << ", " << (r.points - r.skipped) << "/" << r.points
      << " points evaluated\n";
    for (const std::string& s : r.skipReasons)
        o << "  skipped " << s << "\n";
    size_t width = 5;
    for (const CheckRecord& c : r.records)
        width = std::max(width, c.name.size());
    std::snprintf(buf, sizeof buf, "\n%-*s  %-10s  %-12s  %-9s  %s\n", static_cast<int>(width), "check", "anchor",
                  "residual", "tol", "verdict");
    o << buf;
    int failed = 0, indeterminate = 0;
    for (const CheckRecord& c : r.records) {
        if (c.verdict == Verdict::Fail)
            ++failed;
        if (c.verdict == Verdict::Indeterminate)
            ++indeterminate;
        std::string tol = c.verdict == Verdict::Info ? "-" : [&] {
            char t[32];
            std::snprintf(t, sizeof t, "%.0e", c.tol);
            return std::string(t);
        }();
        std::snprintf(buf, sizeof buf, "%-*s  %-10s  %-12.3e  %-9s  %s\n", static_cast<int>(width), c.name.c_str(),
                      c.anchor.c_str(), c.residual, tol.c_str(), toString(c.verdict));
        o << buf;
    }
    std::snprintf(buf, sizeof buf, "\n%zu checks, %d failed, %d indeterminate, %.2f s\n", r.records.size(), failed,
                  indeterminate, r.wallSeconds);
    o << buf;
    return o.str();
}

bool allPassed(const CheckReport& r) {
    if (r.points - r.skipped < 1)
        return false;
    return std::all_of(r.records.begin(), r.records.end(), [](const CheckRecord& c) {
        return c.verdict == Verdict::Pass || c.verdict == Verdict::Info;
    });
}

} // namespace ngtlab
