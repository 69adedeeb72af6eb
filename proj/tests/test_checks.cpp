#include <doctest.h>

#include <json.hpp>

#include "ngtlab/checks.hpp"
#include "ngtlab/manifolds.hpp"

using namespace ngtlab;

namespace {

const CheckRecord* record(const CheckReport& r, const std::string& name) {
    for (const CheckRecord& c : r.records)
        if (c.name == name)
            return &c;
    return nullptr;
}

} // namespace

TEST_SUITE("checks") {

TEST_CASE("sample points are deterministic and inside the box") {
    Box box = Box::cube(3, -0.5, 2.0);
    auto a = samplePoints(box, 50, 7), b = samplePoints(box, 50, 7), c = samplePoints(box, 50, 8);
    CHECK(a == b);
    CHECK(a != c);
    for (const Point& p : a)
        for (double x : p) {
            CHECK(x >= -0.5);
            CHECK(x < 2.0);
        }
}

TEST_CASE("suite names") {
    for (Suite s : {Suite::Auto, Suite::Generic, Suite::Hermitian, Suite::ParaHermitian, Suite::Contact,
                    Suite::Paracontact, Suite::Ngt, Suite::Eisenhart})
        CHECK((parseSuite(toString(s)) == s));
    CHECK_FALSE(parseSuite("kahler"));
}

TEST_CASE("json reports are deterministic") {
    CheckOptions o;
    o.points = 6;
    std::string a = toJson(runChecks(manifolds::s6NearlyKahler(), o));
    std::string b = toJson(runChecks(manifolds::s6NearlyKahler(), o));
    CHECK(a == b);
    auto j = nlohmann::json::parse(a);
    CHECK(j["manifold"] == "s6-nearly-kahler");
    CHECK(j["evaluated"] == 6);
    CHECK(j["passed"] == true);
    CHECK(j["tolerances"]["identity"] == 1e-8);
    CHECK(j["checks"].size() > 20);
    std::vector<std::string> names;
    for (auto& c : j["checks"])
        names.push_back(c["name"]);
    CHECK(std::is_sorted(names.begin(), names.end()));
}

TEST_CASE("a single point is enough") {
    CheckOptions o;
    o.points = 1;
    CheckReport r = runChecks(manifolds::flatKahler(2), o);
    CHECK(r.points == 1);
    CHECK(allPassed(r));
    CHECK(formatTable(r).find("flat-kahler-4") != std::string::npos);
}

TEST_CASE("contact R3 fails the nearly cosymplectic condition") {
    CheckOptions o;
    o.points = 4;
    CheckReport r = runChecks(manifolds::contactR3(), o);
    CHECK(r.structure == "almost-contact");
    const CheckRecord* c = record(r, "contact/almost-nearly-cosymplectic");
    REQUIRE(c);
    CHECK(c->anchor == "ff3f");
    CHECK((c->verdict == Verdict::Fail));
    CHECK_FALSE(allPassed(r));
    const CheckRecord* blair = record(r, "contact/blair");
    REQUIRE(blair);
    CHECK((blair->verdict == Verdict::Pass));
}

TEST_CASE("suites and overrides") {
    CheckOptions o;
    o.points = 3;
    o.suite = Suite::Eisenhart;
    CheckReport e = runChecks(manifolds::deformedHermitianR4(), o);
    for (const CheckRecord& c : e.records)
        CHECK(c.name.rfind("eisenhart/", 0) == 0);
    CHECK(allPassed(e));

    o.suite = Suite::Hermitian;
    CheckReport mismatch = runChecks(manifolds::flatParaKahler(2), o);
    CHECK_FALSE(allPassed(mismatch));
    CHECK_FALSE(record(mismatch, "hermitian/equivalence"));

    o.suite = Suite::Auto;
    o.tol = 1e-6;
    CheckReport t = runChecks(manifolds::s6NearlyKahler(), o);
    CHECK(t.tolerances.identity == 1e-6);
    CHECK(t.tolerances.structural == doctest::Approx(1e-7));
    CHECK(t.tolerances.reject == 1e-3);
}

TEST_CASE("points outside the chart are skipped") {
    Manifold m = manifolds::s6NearlyKahler();
    m.domain = Box::cube(6, 0.0, 6.0);  // partly outside the chart
    CheckOptions o;
    o.points = 20;
    CheckReport r = runChecks(m, o);
    CHECK(r.skipped > 0);
    CHECK(r.skipped < 20);
    CHECK(r.skipReasons.size() <= 5);
    m.domain = Box::cube(6, 5.0, 9.0);
    CheckReport none = runChecks(m, o);
    CHECK(none.skipped == 20);
    CHECK_FALSE(allPassed(none));
}

}
