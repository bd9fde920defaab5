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

// Discrimination programs built on the conic engine.
//
// Minimum error for r hypotheses:
//     P_e,min = max { 1 - tr X : X >= pi_i rho_i }.
// X is eliminated through slack blocks S_i = X - pi_i rho_i >= 0, i.e.
// X = S_1 + pi_1 rho_1 and S_1 + pi_1 rho_1 - S_i - pi_i rho_i = 0 (i >= 2).
// The dual slack on S_i is the POVM element M_i. When the states range over
// SDP-representable sets, the same program is solved jointly in (S, rho).

#include <vector>

#include "chernofflab/measurements.hpp"
#include "chernofflab/sets.hpp"

namespace chernofflab {

struct PeMinResult {
    double value = 0.0;
    Povm povm;
    std::vector<DensityMatrix> worstStates; // empty for fixed states
    SolveReport report;
};

struct TraceDistanceResult {
    DensityMatrix rho1;
    DensityMatrix rho2;
    double value; // || pi_1 rho_1 - pi_2 rho_2 ||_1
    SolveReport report;
};

namespace detail {

inline Povm povmFromSlacks(const sdp::SdpSolution &sol, const std::vector<int> &slackBlocks) {
    std::vector<HermitianMatrix> elems;
    elems.reserve(slackBlocks.size());
    for (int b : slackBlocks)
        elems.push_back(HermitianMatrix::fromHermitian(sol.dualSlackBlocks[b].hermitian));
    return Povm(std::move(elems), 1e-8);
}

inline void checkPriors(std::size_t r, const PriorVector &priors, const char *who) {
    if (r < 2)
        throw InvalidInput(std::string(who) + ": at least two hypotheses are required");
    if (priors.size() != r)
        throw InvalidInput(std::string(who) + ": number of priors does not match number of hypotheses");
}

} // namespace detail

/// Minimum error probability of discriminating fixed states, with an optimal POVM.
inline PeMinResult peMinStates(const std::vector<DensityMatrix> &states, const PriorVector &priors,
                               double gapTol = 1e-8) {
    detail::checkPriors(states.size(), priors, "peMinStates");
    const Eigen::Index d = states.front().dim();
    for (const auto &s : states)
        if (s.dim() != d)
            throw InvalidInput("peMinStates: states have different dimensions");

    sdp::SdpProblem problem;
    std::vector<int> slack;
    for (std::size_t i = 0; i < states.size(); ++i)
        slack.push_back(problem.addHermitianBlock(d));
    problem.objective.push_back({slack[0], {CMatrix::Identity(d, d), {}}});
    for (std::size_t i = 1; i < states.size(); ++i) {
        const CMatrix rhs = priors[i] * states[i].matrix() - priors[0] * states[0].matrix();
        sdp::addOperatorEquality(problem,
                                 {sdp::OperatorTerm::scaled(slack[0], 1.0), sdp::OperatorTerm::scaled(slack[i], -1.0)},
                                 rhs);
    }
    const sdp::SdpSolution sol = sdp::solve(problem, gapTol);
    requireOptimal(sol, "peMinStates");
    const double value = 1.0 - (sol.primalObjective + priors[0]);
    return {value, detail::povmFromSlacks(sol, slack), {}, SolveReport::from(sol)};
}

/// Minimum worst-case error over composite hypotheses; also the maximin
/// value over states, attained by the returned worst states.
inline PeMinResult peMinSets(const std::vector<StateSet> &sets, const PriorVector &priors, double gapTol = 1e-8) {
    detail::checkPriors(sets.size(), priors, "peMinSets");
    const Eigen::Index d = sets.front().dim();
    for (const auto &s : sets)
        if (s.dim() != d)
            throw InvalidInput("peMinSets: sets have different dimensions");

    sdp::SdpProblem problem;
    std::vector<int> slack;
    for (std::size_t i = 0; i < sets.size(); ++i)
        slack.push_back(problem.addHermitianBlock(d));
    std::vector<EmbeddedSet> embedded;
    for (const auto &s : sets)
        embedded.push_back(embed(problem, sdpRepresentation(s)));
    problem.objective.push_back({slack[0], {CMatrix::Identity(d, d), {}}});
    for (std::size_t i = 1; i < sets.size(); ++i) {
        std::vector<sdp::OperatorTerm> terms{sdp::OperatorTerm::scaled(slack[0], 1.0),
                                             sdp::OperatorTerm::scaled(slack[i], -1.0)};
        for (auto &t : embedded[0].scaledState(priors[0]))
            terms.push_back(t);
        for (auto &t : embedded[i].scaledState(-priors[i]))
            terms.push_back(t);
        sdp::addOperatorEquality(problem, terms, CMatrix::Zero(d, d));
    }
    const sdp::SdpSolution sol = sdp::solve(problem, gapTol);
    requireOptimal(sol, "peMinSets");
    std::vector<DensityMatrix> worst;
    for (const auto &e : embedded)
        worst.push_back(e.extract(sol));
    const double value = 1.0 - (sol.primalObjective + priors[0]);
    return {value, detail::povmFromSlacks(sol, slack), std::move(worst), SolveReport::from(sol)};
}

/// min || pi_1 rho_1 - pi_2 rho_2 ||_1 over rho_i in set_i, as
/// min tr[P + Q] s.t. P - Q = pi_1 rho_1 - pi_2 rho_2, P, Q >= 0.
inline TraceDistanceResult minTraceDistOverSets(const StateSet &set1, const StateSet &set2, const PriorVector &priors,
                                                double gapTol = 1e-8) {
    detail::checkPriors(2, priors, "minTraceDistOverSets");
    if (set1.dim() != set2.dim())
        throw InvalidInput("minTraceDistOverSets: dimension mismatch");
    const Eigen::Index d = set1.dim();
    sdp::SdpProblem problem;
    const int p = problem.addHermitianBlock(d);
    const int q = problem.addHermitianBlock(d);
    const EmbeddedSet e1 = embed(problem, sdpRepresentation(set1));
    const EmbeddedSet e2 = embed(problem, sdpRepresentation(set2));
    problem.objective.push_back({p, {CMatrix::Identity(d, d), {}}});
    problem.objective.push_back({q, {CMatrix::Identity(d, d), {}}});
    std::vector<sdp::OperatorTerm> terms{sdp::OperatorTerm::scaled(p, 1.0), sdp::OperatorTerm::scaled(q, -1.0)};
    for (auto &t : e1.scaledState(-priors[0]))
        terms.push_back(t);
    for (auto &t : e2.scaledState(priors[1]))
        terms.push_back(t);
    sdp::addOperatorEquality(problem, terms, CMatrix::Zero(d, d));
    const sdp::SdpSolution sol = sdp::solve(problem, gapTol);
    requireOptimal(sol, "minTraceDistOverSets");
    DensityMatrix r1 = e1.extract(sol);
    DensityMatrix r2 = e2.extract(sol);
    const double value = traceNorm(r1.hermitian() * priors[0] - r2.hermitian() * priors[1]);
    return {std::move(r1), std::move(r2), value, SolveReport::from(sol)};
}

} // namespace chernofflab
