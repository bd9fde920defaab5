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

#include <optional>
#include <vector>

#include "chernofflab/measurements.hpp"
#include "chernofflab/sdp/formulations.hpp"

namespace chernofflab {

struct ErrorReport {
    double value = 0.0;
    std::vector<DensityMatrix> worstStates;
    /// min |eigenvalue| of pi_1 rho_1* - pi_2 rho_2*, for universal tests.
    std::optional<double> fullRankMargin;
    std::vector<SolveReport> solves;
};

/// 1 - sum_i pi_i tr[rho_i M_i].
inline double errorProbPovm(const Povm &povm, const std::vector<DensityMatrix> &states, const PriorVector &priors) {
    if (povm.size() != states.size() || priors.size() != states.size())
        throw InvalidInput("errorProbPovm: POVM, states and priors must have the same length");
    double success = 0.0;
    for (std::size_t i = 0; i < states.size(); ++i) {
        if (states[i].dim() != povm.dim())
            throw InvalidInput("errorProbPovm: dimension mismatch");
        success += priors[i] * traceInner(states[i].matrix(), povm[i].matrix());
    }
    return 1.0 - success;
}

/// sup over rho_i in set_i of the error of `povm`; separates into one
/// linear maximization of tr[rho_i (I - M_i)] per set.
inline ErrorReport worstCaseError(const Povm &povm, const std::vector<StateSet> &sets, const PriorVector &priors,
                                  const sdp::SolverOptions &sdpOpt = {}) {
    if (povm.size() != sets.size() || priors.size() != sets.size())
        throw InvalidInput("worstCaseError: POVM, sets and priors must have the same length");
    ErrorReport r;
    const HermitianMatrix id = HermitianMatrix::identity(povm.dim());
    for (std::size_t i = 0; i < sets.size(); ++i) {
        if (sets[i].dim() != povm.dim())
            throw InvalidInput("worstCaseError: dimension mismatch");
        OracleResult o = linearOracle(sets[i], id - povm[i], sdpOpt);
        r.value += priors[i] * o.value;
        r.worstStates.push_back(std::move(o.state));
        if (o.sdp)
            r.solves.push_back(*o.sdp);
    }
    return r;
}

namespace detail {
inline void checkBinary(const PriorVector &priors, const char *who) {
    if (priors.size() != 2)
        throw InvalidInput(std::string(who) + ": exactly two priors are required");
}
} // namespace detail

/// Projector onto the nonnegative eigenspace of pi_1 rho_1 - pi_2 rho_2.
inline TestOperator helstromTest(const DensityMatrix &rho1, const DensityMatrix &rho2, const PriorVector &priors) {
    detail::checkBinary(priors, "helstromTest");
    if (rho1.dim() != rho2.dim())
        throw InvalidInput("helstromTest: dimension mismatch");
    return TestOperator(posProjector(rho1.hermitian() * priors[0] - rho2.hermitian() * priors[1]));
}

struct UniversalTestResult {
    TestOperator test;
    ErrorReport report;
    /// Delta was numerically rank deficient; optimality is not certified.
    bool rankDeficient = false;
    TraceDistanceResult traceDistance;
};

inline constexpr double kDefaultRankTol = 1e-7;

/// Helstrom test of the pair minimizing || pi_1 rho_1 - pi_2 rho_2 ||_1 over
/// the two sets. Optimal for the composite problem when Delta is full rank.
/// For full-rank Delta the projector is read off the minimax POVM of
/// peMinSets (first element rounded at eigenvalue one half), which agrees
/// with {Delta >= 0} and is resolved more sharply by the solver.
inline UniversalTestResult universalTest(const StateSet &set1, const StateSet &set2, const PriorVector &priors,
                                         double rankTol = kDefaultRankTol, double gapTol = 1e-8) {
    detail::checkBinary(priors, "universalTest");
    if (!(rankTol > 0.0))
        throw InvalidInput("universalTest: rankTol must be positive");
    TraceDistanceResult td = minTraceDistOverSets(set1, set2, priors, gapTol);
    const HermitianMatrix delta = td.rho1.hermitian() * priors[0] - td.rho2.hermitian() * priors[1];
    const double margin = eigh(delta).eigenvalues.cwiseAbs().minCoeff();
    const bool deficient = margin <= rankTol;
    std::vector<SolveReport> solves{td.report};
    HermitianMatrix projector = posProjector(delta);
    if (!deficient) {
        const PeMinResult pe = peMinSets({set1, set2}, priors, gapTol);
        solves.push_back(pe.report);
        projector = posProjector(pe.povm[0] - HermitianMatrix::identity(delta.dim()) * 0.5);
    }
    TestOperator test(projector);
    ErrorReport rep = worstCaseError(Povm::fromTest(test), {set1, set2}, priors);
    rep.fullRankMargin = margin;
    rep.solves.insert(rep.solves.begin(), solves.begin(), solves.end());
    return {std::move(test), std::move(rep), deficient, std::move(td)};
}

struct SaddleCheck {
    bool holds = false;
    double worstCase = 0.0;
    double atWorstStates = 0.0;
    double peMin = 0.0;
};

/// Both saddle inequalities at (test, worst states of the joint program).
inline SaddleCheck verifySaddleDetailed(const TestOperator &test, const StateSet &set1, const StateSet &set2,
                                        const PriorVector &priors, double tol) {
    detail::checkBinary(priors, "verifySaddle");
    const PeMinResult pe = peMinSets({set1, set2}, priors);
    const Povm povm = Povm::fromTest(test);
    SaddleCheck c;
    c.peMin = pe.value;
    c.worstCase = worstCaseError(povm, {set1, set2}, priors).value;
    c.atWorstStates = errorProbPovm(povm, pe.worstStates, priors);
    c.holds = c.worstCase <= pe.value + tol && c.atWorstStates >= pe.value - tol;
    return c;
}

inline bool verifySaddle(const TestOperator &test, const StateSet &set1, const StateSet &set2,
                         const PriorVector &priors, double tol) {
    return verifySaddleDetailed(test, set1, set2, priors, tol).holds;
}

struct AudenaertCheck {
    double lhs;
    double rhs;
    bool holds;
};

/// tr[V^alpha W^{1-alpha}] against (1/2) tr[V + W - |V - W|].
inline AudenaertCheck audenaertCheck(const HermitianMatrix &v, const HermitianMatrix &w, double alpha) {
    if (v.dim() != w.dim())
        throw InvalidInput("audenaertCheck: dimension mismatch");
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw InvalidInput("audenaertCheck: alpha must lie in [0, 1]");
    const double lhs = traceInner(matrixPower(v, alpha), matrixPower(w, 1.0 - alpha));
    const double rhs = 0.5 * (v.trace() + w.trace() - traceNorm(v - w));
    return {lhs, rhs, lhs >= rhs - 1e-10};
}

} // namespace chernofflab
