// Command line front end: check, list, eval.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ngtlab/checks.hpp"
#include "ngtlab/manifolds.hpp"
#include "ngtlab/specfile.hpp"

using namespace ngtlab;

namespace {

Manifold loadManifold(const std::string& builtinName, const std::string& specPath) {
    if (!builtinName.empty() && !specPath.empty())
        throw Error("give either --builtin or --spec, not both");
    if (!builtinName.empty())
        return manifolds::builtin(builtinName);
    if (!specPath.empty())
        return loadSpec(specPath);
    throw Error("one of --builtin or --spec is required");
}

Point parsePoint(const std::string& csv, int dim) {
    Point p;
    std::stringstream s(csv);
    std::string item;
    while (std::getline(s, item, ',')) {
        size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || item.find_first_not_of(" \t", used) != std::string::npos)
            throw Error("bad coordinate '" + item + "' in --point");
        p.push_back(v);
    }
    if (static_cast<int>(p.size()) != dim)
        throw Error("--point has " + std::to_string(p.size()) + " coordinates, the chart has " + std::to_string(dim));
    return p;
}

nlohmann::ordered_json toArray(const Tensor3& t) {
    nlohmann::ordered_json a = nlohmann::ordered_json::array();
    for (int i = 0; i < t.dim(); ++i) {
        nlohmann::ordered_json b = nlohmann::ordered_json::array();
        for (int j = 0; j < t.dim(); ++j) {
            nlohmann::ordered_json c = nlohmann::ordered_json::array();
            for (int k = 0; k < t.dim(); ++k)
                c.push_back(t(i, j, k));
            b.push_back(std::move(c));
        }
        a.push_back(std::move(b));
    }
    return a;
}

int runEval(const Manifold& m, const std::string& pointCsv, const std::string& quantity) {
    Point p = parsePoint(pointCsv, m.dim());
    if (!m.chart.contains(p))
        throw Error("point is outside the chart domain");
    PointFrame f = makeFrame(m, p);
    nlohmann::ordered_json out;
    out["manifold"] = m.name;
    out["point"] = p;
    out["quantity"] = quantity;
    if (quantity == "christoffels") {
        out["layout"] = "Gamma^k_ij at [k][i][j]";
        out["components"] = toArray(leviCivita(f).gamma);
    } else if (quantity == "torsion") {
        out["layout"] = "T(e_i, e_j, e_k) = -dF/3 at [i][j][k]";
        out["components"] = toArray(torsionOf(ngtSkewConnection(f), f.g).lowered);
    } else if (quantity == "nijenhuis") {
        out["layout"] = "N(e_i, e_j, e_k) at [i][j][k]";
        out["components"] = toArray(nijenhuis(f).lowered);
    } else if (quantity == "dF") {
        out["layout"] = "dF(e_i, e_j, e_k) at [i][j][k]";
        out["components"] = toArray(exteriorDerivative2(f.dF));
    } else if (quantity == "ngt-connection") {
        out["layout"] = "Gamma^k_ij at [k][i][j]";
        out["components"] = toArray(ngtSkewConnection(f).gamma);
    } else {
        throw Error("unknown quantity '" + quantity + "'");
    }
    std::cout << out.dump(2) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Generalized metrics, NGT connections and structure checks"};
    app.require_subcommand(1);

    std::string builtinName, specPath, jsonPath, suiteName = "auto", pointCsv, quantity;
    int points = 32;
    std::uint64_t seed = 42;
    double tol = 0.0;

    CLI::App* check = app.add_subcommand("check", "run a check suite over sampled points");
    check->add_option("--builtin", builtinName, "builtin manifold name");
    check->add_option("--spec", specPath, "manifold definition file");
    check->add_option("--points", points, "number of sample points")->check(CLI::PositiveNumber);
    check->add_option("--seed", seed, "sampling seed");
    auto* tolOpt = check->add_option("--tol", tol, "identity tolerance")->check(CLI::PositiveNumber);
    check->add_option("--json", jsonPath, "write the JSON report here ('-' for stdout)");
    check->add_option("--suite", suiteName, "auto|generic|hermitian|para-hermitian|contact|paracontact|ngt|eisenhart");

    CLI::App* list = app.add_subcommand("list", "list builtin manifolds");

    CLI::App* eval = app.add_subcommand("eval", "print components at one point");
    eval->add_option("--builtin", builtinName, "builtin manifold name");
    eval->add_option("--spec", specPath, "manifold definition file");
    eval->add_option("--point", pointCsv, "comma separated coordinates")->required();
    eval->add_option("--quantity", quantity, "christoffels|torsion|nijenhuis|dF|ngt-connection")
        ->required()
        ->check(CLI::IsMember({"christoffels", "torsion", "nijenhuis", "dF", "ngt-connection"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (*list) {
            for (const std::string& name : manifolds::builtinNames()) {
                Manifold m = manifolds::builtin(name);
                std::printf("%-26s dim %d  %s\n", name.c_str(), m.dim(), m.description.c_str());
            }
            return 0;
        }
        Manifold m = loadManifold(builtinName, specPath);
        if (*eval)
            return runEval(m, pointCsv, quantity);

        auto suite = parseSuite(suiteName);
        if (!suite)
            throw Error("unknown suite '" + suiteName + "'");
        CheckOptions opts;
        opts.points = points;
        opts.seed = seed;
        opts.suite = *suite;
        if (*tolOpt)
            opts.tol = tol;
        CheckReport report = runChecks(m, opts);
        if (jsonPath == "-") {
            std::cout << toJson(report);
        } else {
            std::cout << formatTable(report);
            if (!jsonPath.empty()) {
                std::ofstream out(jsonPath, std::ios::binary);
                if (!out)
                    throw Error("cannot write " + jsonPath);
                out << toJson(report);
            }
        }
        return allPassed(report) ? 0 : 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
