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

TEST_CASE("Stabilizer enumeration counts", "[sets]") {
    CHECK(stabilizerStateCount(1) == 6);
    CHECK(stabilizerStateCount(2) == 60);
    CHECK(stabilizerStateCount(3) == 1080);
    CHECK(enumerateStabilizerStates(1).size() == 6);
    const auto two = enumerateStabilizerStates(2);
    CHECK(two.size() == 60);
    for (std::size_t i = 0; i < two.size(); ++i)
        for (std::size_t j = i + 1; j < two.size(); ++j)
            CHECK(std::abs(two[i].amplitudes().dot(two[j].amplitudes())) < 1.0 - 1e-9);
    CHECK_THROWS_AS(enumerateStabilizerStates(3), Unsupported);
    CHECK_THROWS_AS(enumerateStabilizerStates(0), InvalidInput);
}

TEST_CASE("Single-qubit stabilizer overlaps take the values 0, 1/2, 1", "[sets]") {
    const auto one = enumerateStabilizerStates(1);
    for (const auto &a : one)
        for (const auto &b : one) {
            const double f = std::norm(a.amplitudes().dot(b.amplitudes()));
            const bool ok = std::abs(f) < 1e-12 || std::abs(f - 0.5) < 1e-12 || std::abs(f - 1.0) < 1e-12;
            CHECK(ok);
        }
}

TEST_CASE("StateSet factories and type names", "[sets]") {
    CHECK(StateSet::incoherent(3).typeName() == "incoherent");
    CHECK(StateSet::ppt(2, 3).dim() == 6);
    CHECK(StateSet::stabilizer(2).hullVertices()->size() == 60);
    CHECK(StateSet::fullSimplex(2).typeName() == "fullSimplex");
    CHECK(StateSet::singleton(fromPure(plusState())).isSingleton());
    CHECK_FALSE(StateSet::stabilizer(1).isSingleton());
    CHECK_THROWS_AS(StateSet::vertexHull({}), InvalidInput);
    CHECK_THROWS_AS(StateSet::vertexHull({randomDensity(2, 1), randomDensity(3, 1)}), InvalidInput);
    CHECK_THROWS_AS(StateSet::incoherent(0), InvalidInput);
}

TEST_CASE("maxSupportMember", "[sets]") {
    const DensityMatrix b = StateSet::stabilizer(1).maxSupportMember();
    CHECK((b.matrix() - CMatrix::Identity(2, 2) / 2.0).norm() < 1e-12);
    const DensityMatrix m = StateSet::ppt(2, 2).maxSupportMember();
    CHECK((m.matrix() - CMatrix::Identity(4, 4) / 4.0).norm() < 1e-15);
}

TEST_CASE("linearOracle on hulls breaks ties by lowest index", "[sets]") {
    const StateSet s = StateSet::vertexHull(
        {fromPure(basisState(2, 0)), fromPure(basisState(2, 1)), fromPure(basisState(2, 0))});
    const auto r = linearOracle(s, HermitianMatrix::identity(2));
    CHECK_THAT(r.value, WithinAbs(1.0, 1e-15));
    CHECK((r.state.matrix() - fromPure(basisState(2, 0)).matrix()).norm() == 0.0);
    RVector lam(2);
    lam << 0.0, 1.0;
    CHECK((linearOracle(s, HermitianMatrix::diagonal(lam)).state.matrix() - fromPure(basisState(2, 1)).matrix())
              .norm() == 0.0);
}

TEST_CASE("linearOracle on incoherent and full simplex sets", "[sets]") {
    RVector lam(3);
    lam << 0.2, 0.9, 0.9;
    const auto r = linearOracle(StateSet::incoherent(3), HermitianMatrix::diagonal(lam));
    CHECK_THAT(r.value, WithinAbs(0.9, 1e-15));
    CHECK_THAT(r.state.matrix()(1, 1).real(), WithinAbs(1.0, 1e-15));
    std::mt19937_64 rng(2);
    const CMatrix a = oracle::ginibreDensity(3, rng);
    const auto f = linearOracle(StateSet::fullSimplex(3), HermitianMatrix(a));
    const auto ev = oracle::realEigenvalues(a);
    CHECK_THAT(f.value, WithinAbs(*std::max_element(ev.begin(), ev.end()), 1e-12));
}

TEST_CASE("linearOracle on PPT sets reproduces 1/m for maximally entangled states", "[sets]") {
    for (int m : {2, 3}) {
        const auto r = linearOracle(StateSet::ppt(m, m), HermitianMatrix::outer(maxEntangled(m).amplitudes()));
        CHECK_THAT(r.value, WithinAbs(1.0 / m, 1e-6));
        REQUIRE(r.sdp.has_value());
        CHECK(r.sdp->gap <= 1e-8);
        CHECK(membership(StateSet::ppt(m, m), r.state, 1e-7));
    }
}

TEST_CASE("membership by variant", "[sets]") {
    const StateSet stab = StateSet::stabilizer(1);
    CHECK(membership(stab, DensityMatrix::maximallyMixed(2)));
    CHECK(membership(stab, fromPure(plusState())));
    CHECK_FALSE(membership(stab, fromPure(tState())));
    CHECK(membership(StateSet::incoherent(2), DensityMatrix::maximallyMixed(2)));
    CHECK_FALSE(membership(StateSet::incoherent(2), fromPure(plusState())));
    CHECK_FALSE(membership(StateSet::ppt(2, 2), fromPure(maxEntangled(2))));
    CHECK(membership(StateSet::ppt(2, 2), DensityMatrix::maximallyMixed(4)));
    CHECK(membership(StateSet::ppt(2, 2), tensorProduct(randomDensity(2, 1), randomDensity(2, 2))));
    CHECK(membership(StateSet::fullSimplex(3), randomDensity(3, 4)));
    CHECK_THROWS_AS(membership(stab, DensityMatrix::maximallyMixed(3)), InvalidInput);
}

TEST_CASE("Hull membership is exact for interior and boundary points", "[sets]") {
    std::vector<DensityMatrix> verts{randomDensity(3, 1), randomDensity(3, 2), randomDensity(3, 3)};
    const StateSet hull = StateSet::vertexHull(verts);
    const CMatrix inside = 0.2 * verts[0].matrix() + 0.5 * verts[1].matrix() + 0.3 * verts[2].matrix();
    CHECK(membership(hull, DensityMatrix(inside)));
    const CMatrix edge = 0.6 * verts[0].matrix() + 0.4 * verts[2].matrix();
    CHECK(membership(hull, DensityMatrix(edge)));
    CHECK_FALSE(membership(hull, randomDensity(3, 9)));
}

TEST_CASE("peMinSets on {|+>} against incoherent qubit states", "[sets]") {
    const StateSet plus = StateSet::singleton(fromPure(plusState()));
    const auto r = peMinSets({plus, StateSet::incoherent(2)}, PriorVector::uniform(2));
    const double grid = oracle::incoherentQubitGrid(fromPure(plusState()).matrix(), 0.5, 0.5);
    CHECK_THAT(r.value, WithinAbs(grid, 1e-6));
    CHECK_THAT(r.value, WithinAbs(0.25, 1e-6));
    REQUIRE(r.worstStates.size() == 2);
    CHECK((r.worstStates[1].matrix() - CMatrix::Identity(2, 2) / 2.0).norm() < 1e-4);
}

TEST_CASE("peMinSets on singletons reduces to peMinStates", "[sets]") {
    const DensityMatrix a = randomDensity(2, 31), b = randomDensity(2, 32);
    const PriorVector pi({0.35, 0.65});
    const auto s = peMinSets({StateSet::singleton(a), StateSet::singleton(b)}, pi);
    CHECK_THAT(s.value, WithinAbs(peMinStates({a, b}, pi).value, 1e-7));
}

TEST_CASE("peMinSets for two-vertex hulls matches a weight grid", "[sets]") {
    const DensityMatrix a0 = randomDensity(2, 41), a1 = randomDensity(2, 42);
    const DensityMatrix b0 = randomDensity(2, 43), b1 = randomDensity(2, 44);
    const PriorVector pi({0.5, 0.5});
    const auto r = peMinSets({StateSet::vertexHull({a0, a1}), StateSet::vertexHull({b0, b1})}, pi);
    const double grid = oracle::zoomGridMax([&](double s, double t) {
        const CMatrix x = s * a0.matrix() + (1 - s) * a1.matrix();
        const CMatrix y = t * b0.matrix() + (1 - t) * b1.matrix();
        return oracle::helstromError(x, y, 0.5, 0.5);
    });
    CHECK_THAT(r.value, WithinAbs(grid, 1e-4));
    CHECK(r.value >= grid - 1e-7);
}

TEST_CASE("minTraceDistOverSets on {|+>} against incoherent states", "[sets]") {
    const auto r = minTraceDistOverSets(StateSet::singleton(fromPure(plusState())), StateSet::incoherent(2),
                                        PriorVector::uniform(2));
    CHECK_THAT(r.value, WithinAbs(0.5, 1e-6));
    CHECK((r.rho2.matrix() - CMatrix::Identity(2, 2) / 2.0).norm() < 1e-4);
}

TEST_CASE("minTraceDistOverSets of overlapping sets is zero", "[sets]") {
    const auto r = minTraceDistOverSets(StateSet::stabilizer(1), StateSet::incoherent(2), PriorVector::uniform(2));
    CHECK_THAT(r.value, WithinAbs(0.0, 1e-6));
}

TEST_CASE("tensorProductSet", "[sets]") {
    const StateSet s = StateSet::vertexHull({fromPure(basisState(2, 0)), fromPure(plusState())});
    const StateSet s2 = tensorProductSet(s, s);
    CHECK(s2.dim() == 4);
    CHECK(s2.hullVertices()->size() == 4);
    CHECK_THROWS_AS(tensorProductSet(s, StateSet::incoherent(2)), Unsupported);
}

TEST_CASE("Set sequences and stability checks", "[sets]") {
    CHECK(checkStability(stabilizerSequence()));
    CHECK(checkStability(incoherentSequence(2)));
    const StateSet base = StateSet::vertexHull({fromPure(basisState(2, 0)), DensityMatrix::maximallyMixed(2)});
    CHECK(checkStability(hullPowerSequence(base)));
    CHECK(checkStability(iidSequence(randomDensity(2, 3))));

    SetSequence broken{[](int n) {
                           if (n == 1)
                               return StateSet::singleton(fromPure(basisState(2, 0)));
                           return StateSet::singleton(fromPure(basisState(4, 3)));
                       },
                       true, 2, "broken"};
    CHECK_FALSE(checkStability(broken));

    SetSequence wrongDim{[](int) { return StateSet::incoherent(3); }, true, 2, "wrong"};
    CHECK_THROWS_AS(wrongDim.at(1), InvalidInput);
    CHECK_THROWS_AS(stabilizerSequence().at(13), InvalidInput);
    CHECK_THROWS_AS(hullPowerSequence(StateSet::incoherent(2)), Unsupported);
}
