// Copyright 2026 The chernoff-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// The chernoff-lab command line. run() is the whole program minus process
// setup, so it can be driven in-process by tests.

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#if __has_include(<CLI11.hpp>)
#include <CLI11.hpp>
#else
#include <CLI/CLI.hpp>
#endif

#include "chernofflab/chernofflab.hpp"
#include "chernofflab/io.hpp"

namespace chernofflab::cli {

using io::json;

enum ExitCode : int { kOk = 0, kInvalidInput = 2, kSolverFailure = 3, kInfiniteResult = 4 };

inline constexpr const char *kConfigEnv = "CHERNOFF_LAB_CONFIG";
inline constexpr const char *kSepNotice =
    "notice: a 'sep' set is replaced by its PPT relaxation; values are upper bounds on the separable ones";

struct CliConfig {
    double alphaTol = AlphaSearchOptions{}.alphaTol;
    double sdpGapTol = sdp::SolverOptions{}.gapTol;
    double fwTol = FrankWolfeOptions{}.gapTol;
    double rankTol = kDefaultRankTol;
    std::uint64_t seed = 0;
    std::string outputFormat = "json";
    long dimCap = CopyCount::kDefaultDimCap;

    AlphaSearchOptions alpha() const { return {alphaTol}; }
    FrankWolfeOptions frankWolfe() const {
        FrankWolfeOptions f;
        f.gapTol = fwTol;
        return f;
    }
    sdp::SolverOptions solver() const {
        sdp::SolverOptions s;
        s.gapTol = sdpGapTol;
        return s;
    }
};

inline CliConfig configFromJson(const json &j) {
    if (!j.is_object())
        throw InvalidInput("config: expected a JSON object");
    CliConfig c;
    auto real = [&](const std::string &key, double &field) {
        if (!j.contains(key))
            return;
        if (!j[key].is_number() || !(j[key].get<double>() > 0.0))
            throw InvalidInput("config: '" + key + "' must be a positive number");
        field = j[key].get<double>();
    };
    for (const auto &[key, value] : j.items()) {
        static const std::vector<std::string> known{"alphaTol", "sdpGapTol", "fwTol",  "rankTol",
                                                    "seed",     "outputFormat", "dimCap"};
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw InvalidInput("config: unknown field '" + key + "'");
    }
    real("alphaTol", c.alphaTol);
    real("sdpGapTol", c.sdpGapTol);
    real("fwTol", c.fwTol);
    real("rankTol", c.rankTol);
    if (j.contains("seed")) {
        if (!j["seed"].is_number_integer() || j["seed"].get<long long>() < 0)
            throw InvalidInput("config: 'seed' must be a non-negative integer");
        c.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("outputFormat")) {
        if (!j["outputFormat"].is_string())
            throw InvalidInput("config: 'outputFormat' must be \"json\" or \"csv\"");
        c.outputFormat = j["outputFormat"].get<std::string>();
        if (c.outputFormat != "json" && c.outputFormat != "csv")
            throw InvalidInput("config: 'outputFormat' must be \"json\" or \"csv\"");
    }
    if (j.contains("dimCap")) {
        if (!j["dimCap"].is_number_integer() || j["dimCap"].get<long long>() < 1)
            throw InvalidInput("config: 'dimCap' must be a positive integer");
        c.dimCap = j["dimCap"].get<long>();
    }
    return c;
}

inline CliConfig loadConfig() {
    const char *path = std::getenv(kConfigEnv);
    if (path == nullptr || *path == '\0')
        return {};
    return configFromJson(io::readJsonFile(path));
}

inline PriorVector parsePriors(const std::string &csv) {
    std::vector<double> p;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double x = 0.0;
        try {
            x = std::stod(item, &used);
        } catch (const std::exception &) {
            throw InvalidInput("priors: '" + item + "' is not a number");
        }
        if (used != item.size())
            throw InvalidInput("priors: '" + item + "' is not a number");
        p.push_back(x);
    }
    return PriorVector(std::move(p), 1e-9);
}

namespace detail {

struct Context {
    CliConfig config;
    std::ostream &out;
    std::ostream &err;
    std::vector<std::string> notices;

    void notice(const std::string &msg) {
        if (std::find(notices.begin(), notices.end(), msg) != notices.end())
            return;
        notices.push_back(msg);
        err << msg << '\n';
    }

    void emit(json j) {
        if (!notices.empty())
            j["notices"] = notices;
        out << j.dump(2) << '\n';
    }
};

/// A set file, or a state file read as a singleton set.
inline StateSet loadSet(Context &ctx, const std::string &path) {
    json j = io::readJsonFile(path);
    if (j.is_object() && j.contains("type") && j["type"] == "sep") {
        ctx.notice(kSepNotice);
        j["type"] = "ppt";
    }
    if (j.is_object() && j.contains("type"))
        return io::setFromJson(j);
    return StateSet::singleton(io::densityFromJson(j));
}

inline json chernoffToJson(const ChernoffResult &c) {
    json j{{"value", io::divergenceToJson(c.value)},
           {"alphaStar", c.alphaStar},
           {"quasi", c.quasi},
           {"iterations", c.iterations},
           {"fwGap", c.fwGap},
           {"maxFwGap", c.maxFwGap},
           {"capped", c.capped},
           {"endpointCertified", c.endpointCertified}};
    if (c.achievers)
        j["achievers"] = {io::matrixToJson(c.achievers->first.matrix()), io::matrixToJson(c.achievers->second.matrix())};
    return j;
}

inline json solveToJson(const SolveReport &r) {
    return {{"status", sdp::toString(r.status)},
            {"gap", r.gap},
            {"primalResidual", r.primalResidual},
            {"dualResidual", r.dualResidual},
            {"iterations", r.iterations}};
}

inline json statesToJson(const std::vector<DensityMatrix> &states) {
    json out = json::array();
    for (const auto &s : states)
        out.push_back(io::matrixToJson(s.matrix()));
    return out;
}

inline json scanToJson(const std::string &name, const ScanResult &s) {
    json entries = json::array();
    for (const auto &e : s.entries)
        entries.push_back({{"n", e.n},
                           {"perCopyValue", io::divergenceToJson(e.perCopy)},
                           {"alphaStar", e.alphaStar},
                           {"fwGap", e.fwGap}});
    return {{"sequence", name}, {"stable", s.stable}, {"monotone", s.monotone}, {"entries", entries}};
}

} // namespace detail

/// Runs one command. args excludes the program name.
inline int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Chernoff divergence and hypothesis testing between sets of quantum states", "chernoff-lab"};
    app.require_subcommand(1);
    app.fallthrough();
    bool strictFinite = false;
    app.add_flag("--strict-finite", strictFinite, "Exit with status 4 when a reported divergence is infinite");

    std::string rhoFile, sigmaFile, set1File, set2File, psiFile, setFile, outFile, priorsCsv, seqName;
    std::vector<std::string> setFiles;
    int nMax = 1, qubits = 1;

    auto *pair = app.add_subcommand("chernoff-pair", "Chernoff divergence of two states");
    pair->add_option("--rho", rhoFile, "State file")->required();
    pair->add_option("--sigma", sigmaFile, "State file")->required();

    auto *sets = app.add_subcommand("chernoff-sets", "Chernoff divergence of two sets");
    sets->add_option("--set1", set1File, "Set or state file")->required();
    sets->add_option("--set2", set2File, "Set or state file")->required();

    auto *pemin = app.add_subcommand("pemin", "Minimum worst-case error over several sets");
    pemin->add_option("--sets", setFiles, "Set or state files")->required()->expected(2, 64);
    pemin->add_option("--priors", priorsCsv, "Comma-separated priors")->required();

    auto *universal = app.add_subcommand("universal-test", "Universal test for two sets");
    universal->add_option("--set1", set1File, "Set or state file")->required();
    universal->add_option("--set2", set2File, "Set or state file")->required();
    universal->add_option("--priors", priorsCsv, "Comma-separated priors")->required();
    universal->add_option("--out", outFile, "Output file for the test matrix")->required();

    auto *ov = app.add_subcommand("overlap", "Maximum overlap of a pure state with a set");
    ov->add_option("--psi", psiFile, "Pure state file")->required();
    ov->add_option("--set", setFile, "Set file")->required();

    auto *scan = app.add_subcommand("scan", "Per-copy divergence of a set sequence for n = 1..nmax");
    scan->add_option("--seq", seqName, "Sequence")->required()->check(CLI::IsMember({"iid", "stab-vs-T", "hull"}));
    scan->add_option("--nmax", nMax, "Largest copy count")->required()->check(CLI::PositiveNumber);
    scan->add_option("--rho", rhoFile, "First state for --seq iid");
    scan->add_option("--sigma", sigmaFile, "Second state for --seq iid");

    auto *stab = app.add_subcommand("stab-enum", "Enumerate stabilizer states");
    stab->add_option("--qubits", qubits, "Number of qubits")->required()->check(CLI::PositiveNumber);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError &e) {
        app.exit(e, out, err);
        return kInvalidInput;
    }

    try {
        detail::Context ctx{loadConfig(), out, err, {}};
        const CliConfig &cfg = ctx.config;
        bool infinite = false;

        if (pair->parsed()) {
            const ChernoffResult c =
                chernoffPair(io::densityFromJson(io::readJsonFile(rhoFile)), io::densityFromJson(io::readJsonFile(sigmaFile)),
                             cfg.alpha());
            infinite = c.value.isInfinite();
            ctx.emit(detail::chernoffToJson(c));
        } else if (sets->parsed()) {
            const StateSet s1 = detail::loadSet(ctx, set1File), s2 = detail::loadSet(ctx, set2File);
            const ChernoffResult c = chernoffSets(s1, s2, cfg.alpha(), cfg.frankWolfe(), cfg.solver());
            infinite = c.value.isInfinite();
            ctx.emit(detail::chernoffToJson(c));
        } else if (pemin->parsed()) {
            std::vector<StateSet> loaded;
            for (const auto &f : setFiles)
                loaded.push_back(detail::loadSet(ctx, f));
            const PeMinResult r = peMinSets(loaded, parsePriors(priorsCsv), cfg.sdpGapTol);
            ctx.emit({{"value", r.value},
                      {"povm", io::povmToJson(r.povm)},
                      {"worstStates", detail::statesToJson(r.worstStates)},
                      {"sdp", detail::solveToJson(r.report)}});
        } else if (universal->parsed()) {
            const StateSet s1 = detail::loadSet(ctx, set1File), s2 = detail::loadSet(ctx, set2File);
            const UniversalTestResult u = universalTest(s1, s2, parsePriors(priorsCsv), cfg.rankTol, cfg.sdpGapTol);
            io::writeJsonFile(outFile, io::matrixToJson(u.test.matrix().matrix()));
            if (u.rankDeficient)
                ctx.notice("warning: pi_1 rho_1* - pi_2 rho_2* is numerically rank deficient (margin " +
                           std::to_string(*u.report.fullRankMargin) + "); optimality of the test is not certified");
            json solves = json::array();
            for (const auto &s : u.report.solves)
                solves.push_back(detail::solveToJson(s));
            ctx.emit({{"errorProbability", u.report.value},
                      {"fullRankMargin", *u.report.fullRankMargin},
                      {"rankDeficient", u.rankDeficient},
                      {"traceNorm", u.traceDistance.value},
                      {"worstStates", detail::statesToJson(u.report.worstStates)},
                      {"closestPair", detail::statesToJson({u.traceDistance.rho1, u.traceDistance.rho2})},
                      {"sdp", solves},
                      {"testFile", outFile}});
        } else if (ov->parsed()) {
            const PureState psi = io::pureFromJson(io::readJsonFile(psiFile));
            const OverlapValue o = overlap(psi, detail::loadSet(ctx, setFile), cfg.solver());
            json j{{"value", o.value}, {"achiever", io::matrixToJson(o.achiever.matrix())}};
            if (o.sdp)
                j["sdp"] = detail::solveToJson(*o.sdp);
            ctx.emit(j);
        } else if (scan->parsed()) {
            SetSequence seq1, seq2;
            if (seqName == "iid") {
                const DensityMatrix rho =
                    rhoFile.empty() ? randomDensity(2, cfg.seed) : io::densityFromJson(io::readJsonFile(rhoFile));
                const DensityMatrix sigma = sigmaFile.empty() ? randomDensity(2, cfg.seed + 1)
                                                              : io::densityFromJson(io::readJsonFile(sigmaFile));
                seq1 = iidSequence(rho);
                seq2 = iidSequence(sigma);
            } else if (seqName == "stab-vs-T") {
                seq1 = iidSequence(fromPure(tState()));
                seq2 = stabilizerSequence();
            } else {
                seq1 = hullPowerSequence(StateSet::vertexHull({randomDensity(2, cfg.seed), randomDensity(2, cfg.seed + 1)}));
                seq2 = hullPowerSequence(
                    StateSet::vertexHull({randomDensity(2, cfg.seed + 2), randomDensity(2, cfg.seed + 3)}));
            }
            const ScanResult s =
                regularizedScan(seq1, seq2, CopyCount(nMax), cfg.dimCap, cfg.alpha(), cfg.frankWolfe(), cfg.solver());
            for (const auto &e : s.entries)
                infinite = infinite || e.perCopy.isInfinite();
            if (cfg.outputFormat == "csv")
                s.writeCsv(out);
            else
                ctx.emit(detail::scanToJson(seqName, s));
        } else if (stab->parsed()) {
            const std::vector<PureState> states = enumerateStabilizerStates(qubits);
            json list = json::array();
            for (const auto &s : states)
                list.push_back(io::pureToJson(s));
            ctx.emit({{"qubits", qubits}, {"count", states.size()}, {"states", list}});
        }
        return strictFinite && infinite ? kInfiniteResult : kOk;
    } catch (const InvalidInput &e) {
        err << "error: " << e.what() << '\n';
        return kInvalidInput;
    } catch (const Unsupported &e) {
        err << "error: " << e.what() << '\n';
        return kInvalidInput;
    } catch (const SolverFailure &e) {
        err << "solver failure: " << e.what() << '\n';
        return kSolverFailure;
    }
}

} // namespace chernofflab::cli
