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

#include <catch2/catch.hpp>

#include "oracles.hpp"

using namespace chernofflab;
using Catch::Matchers::WithinAbs;

namespace {
const double kMagic = std::log2(4.0 - 2.0 * std::sqrt(2.0));
}

TEST_CASE("overlap of the T state with stabilizer states", "[overlaps]") {
    const auto o = overlap(tState(), StateSet::stabilizer(1));
    CHECK_THAT(o.value, WithinAbs((2.0 + std::sqrt(2.0)) / 4.0, 1e-12));
    CHECK_THAT(o.value, WithinAbs(traceInner(HermitianMatrix::outer(tState().amplitudes()), o.achiever.hermitian()),
                                  1e-9));
    const auto o2 = overlap(tensorPower(tState(), CopyCount(2)), StateSet::stabilizer(2));
    CHECK_THAT(o2.value, WithinAbs(std::pow(4.0 - 2.0 * std::sqrt(2.0), -2), 1e-12));
}

TEST_CASE("overlap with incoherent states is the largest population", "[overlaps]") {
    CVector a(2);
    a << std::sqrt(0.7), std::sqrt(0.3);
    CHECK_THAT(overlap(PureState(a), StateSet::incoherent(2)).value, WithinAbs(0.7, 1e-14));
}

TEST_CASE("overlap of maximally entangled states with PPT states", "[overlaps]") {
    const auto o = overlap(maxEntangled(3), StateSet::ppt(3, 3));
    CHECK_THAT(o.value, WithinAbs(1.0 / 3.0, 1e-6));
    CHECK(membership(StateSet::ppt(3, 3), o.achiever, 1e-7));
}

TEST_CASE("overlap bounds and membership", "[overlaps]") {
    const PureState plus = plusState();
    CHECK_THAT(overlap(plus, StateSet::stabilizer(1)).value, WithinAbs(1.0, 1e-12));
    CHECK(membership(StateSet::stabilizer(1), fromPure(plus), 1e-7));
    const auto t = overlap(tState(), StateSet::stabilizer(1));
    CHECK(t.value < 1.0);
    CHECK_FALSE(membership(StateSet::stabilizer(1), fromPure(tState()), 1e-7));
    CHECK_THROWS_AS(overlap(plus, StateSet::incoherent(3)), InvalidInput);
}

TEST_CASE("overlap is monotone under set inclusion", "[overlaps]") {
    const StateSet stabSet = StateSet::stabilizer(1);
    const auto &stab = *stabSet.hullVertices();
    const StateSet sub = StateSet::vertexHull({stab[0], stab[3]});
    for (std::uint64_t s = 0; s < 10; ++s) {
        const PureState psi = randomPure(2, 40 + s);
        CHECK(overlap(psi, sub).value <= overlap(psi, StateSet::stabilizer(1)).value + 1e-9);
        CHECK(overlap(psi, StateSet::incoherent(2)).value <= overlap(psi, StateSet::fullSimplex(2)).value + 1e-9);
    }
}

TEST_CASE("overlapChernoffCrossCheck", "[overlaps]") {
    const auto t = overlapChernoffCrossCheck(tState(), StateSet::stabilizer(1));
    CHECK(t.holds);
    CHECK_THAT(t.lhs.bits(), WithinAbs(kMagic, 1e-9));
    CHECK_THAT(t.rhs, WithinAbs(kMagic, 1e-9));

    const auto b = overlapChernoffCrossCheck(basisState(3, 1), StateSet::incoherent(3));
    CHECK(b.holds);
    CHECK_THAT(b.lhs.bits(), WithinAbs(0.0, 1e-12));

    const auto tt = overlapChernoffCrossCheck(tensorPower(tState(), CopyCount(2)), StateSet::stabilizer(2));
    CHECK(tt.holds);
    CHECK_THAT(tt.rhs, WithinAbs(2 * kMagic, 1e-9));

    const StateSet onlyOne = StateSet::vertexHull({fromPure(basisState(2, 1)), fromPure(basisState(2, 1))});
    const auto zero = overlapChernoffCrossCheck(basisState(2, 0), onlyOne);
    CHECK(std::isinf(zero.rhs));
    CHECK(zero.lhs.isInfinite());
    CHECK(zero.holds);
}
