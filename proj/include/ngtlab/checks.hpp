#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ngtlab/findings.hpp"
#include "ngtlab/structures.hpp"

namespace ngtlab {

enum class Suite { Auto, Generic, Hermitian, ParaHermitian, Contact, Paracontact, Ngt, Eisenhart };

const char* toString(Suite s);
std::optional<Suite> parseSuite(std::string_view s);

struct CheckOptions {
    int points = 32;
    std::uint64_t seed = 42;
    std::optional<double> tol;  // identity tolerance override
    Suite suite = Suite::Auto;
};

struct CheckRecord {
    std::string name;
    std::string anchor;
    Role role = Role::Identity;
    double residual = 0.0;  // max over points
    double tol = 0.0;
    Verdict verdict = Verdict::Pass;
    int samples = 0;
};

struct CheckReport {
    std::string manifold;
    std::string derivatives;
    std::string structure;
    std::string suite;
    std::uint64_t seed = 0;
    int points = 0;
    int skipped = 0;
    std::vector<std::string> skipReasons;  // first few, in point order
    Tolerances tolerances;
    std::vector<CheckRecord> records;  // sorted by name
    double wallSeconds = 0.0;
};

// n points uniform in the box from a mt19937_64 stream.
std::vector<Point> samplePoints(const Box& box, int n, std::uint64_t seed);

// Evaluates the frame at every point that lies in the chart domain; the rest
// are skipped with a reason.
struct FrameSet {
    std::vector<PointFrame> frames;
    std::vector<std::string> skipped;
};
FrameSet evaluateFrames(const Manifold& m, const std::vector<Point>& points);

// Findings of one suite on a fixed frame set. Auto is resolved by classify.
Findings runSuite(std::span<const PointFrame> frames, Suite suite, StructureKind kind, const Tolerances& tol);

CheckReport runChecks(const Manifold& m, const CheckOptions& opts);

// Deterministic: no timing information.
std::string toJson(const CheckReport& r);
std::string formatTable(const CheckReport& r);
// True when no judged record failed or came out indeterminate.
bool allPassed(const CheckReport& r);

} // namespace ngtlab
