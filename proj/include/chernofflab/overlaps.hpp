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

#include <cmath>
#include <limits>
#include <optional>

#include "chernofflab/chernoff.hpp"

namespace chernofflab {

/// sup_{sigma in set} <psi|sigma|psi>.
struct OverlapValue {
    double value;
    DensityMatrix achiever;
    std::optional<SolveReport> sdp;
};

inline OverlapValue overlap(const PureState &psi, const StateSet &set, const sdp::SolverOptions &sdpOpt = {}) {
    if (psi.dim() != set.dim())
        throw InvalidInput("overlap: dimension mismatch");
    OracleResult o = linearOracle(set, HermitianMatrix::outer(psi.amplitudes()), sdpOpt);
    const double v = std::clamp(o.value, 0.0, 1.0);
    return {v, std::move(o.state), o.sdp};
}

struct OverlapCrossCheck {
    DivergenceValue lhs = DivergenceValue::finite(0.0);
    double rhs = 0.0; // -log2 overlap, +inf for zero overlap
    bool holds = false;
};

/// chernoffSets({psi}, set) against -log2 overlap(psi, set).
inline OverlapCrossCheck overlapChernoffCrossCheck(const PureState &psi, const StateSet &set, double tol = 1e-5) {
    const OverlapValue o = overlap(psi, set);
    const ChernoffResult c = chernoffSets(StateSet::singleton(fromPure(psi)), set);
    OverlapCrossCheck r;
    r.lhs = c.value;
    r.rhs = o.value <= kZeroQuasi ? std::numeric_limits<double>::infinity() : -std::log2(o.value);
    if (std::isinf(r.rhs))
        r.holds = r.lhs.isInfinite();
    else
        r.holds = !r.lhs.isInfinite() && std::abs(r.lhs.bits() - r.rhs) <= tol;
    return r;
}

} // namespace chernofflab
