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
const PriorVector kHalf = PriorVector::uniform(2);

Povm trivialPovm(Eigen::Index d) { return Povm({HermitianMatrix::identity(d), HermitianMatrix::zero(d)}); }

StateSet plusSet() { return StateSet::singleton(fromPure(plusState())); }
} // namespace

TEST_CASE("TestOperator and Povm validation", "[testing]") {
    RVector lam(2);
    lam << 1.2, 0.0;
    CHECK_THROWS_AS(TestOperator(HermitianMatrix::diagonal(lam)), InvalidInput);
    lam << 0.5, 0.25;
    const TestOperator t(HermitianMatrix::diagonal(lam));
    CHECK_THAT(t.complement()(1, 1).real(), WithinAbs(0.75, 1e-15));
    CHECK_THROWS_AS(Povm({HermitianMatrix::identity(2), HermitianMatrix::identity(2)}), InvalidInput);
    CHECK_THROWS_AS(Povm(std::vector<HermitianMatrix>{}), InvalidInput);
    CHECK(Povm::fromTest(t).size() == 2);
}

TEST_CASE("errorProbPovm", "[testing]") {
    const DensityMatrix z = fromPure(basisState(2, 0)), o = fromPure(basisState(2, 1));
    const Povm perfect({HermitianMatrix(z.matrix()), HermitianMatrix(o.matrix())});
    CHECK_THAT(errorProbPovm(perfect, {z, o}, kHalf), WithinAbs(0.0, 1e-15));
    CHECK_THAT(errorProbPovm(trivialPovm(2), {z, o}, kHalf), WithinAbs(0.5, 1e-15));
    const DensityMatrix plus = fromPure(plusState());
    const TestOperator h = helstromTest(plus, z, kHalf);
    CHECK_THAT(errorProbPovm(Povm::fromTest(h), {plus, z}, kHalf), WithinAbs(0.5 * (1 - std::sqrt(2.0) / 2), 1e-12));
    CHECK_THROWS_AS(errorProbPovm(perfect, {z}, kHalf), InvalidInput);
}

TEST_CASE("helstromTest", "[testing]") {
    const DensityMatrix z = fromPure(basisState(2, 0)), o = fromPure(basisState(2, 1));
    const TestOperator t = helstromTest(z, o, kHalf);
    CHECK((t.matrix().matrix() - z.matrix()).norm() < 1e-12);
    const DensityMatrix r = randomDensity(3, 2);
    const PriorVector pi({0.3, 0.7});
    CHECK_THAT(errorProbPovm(Povm::fromTest(helstromTest(r, r, pi)), {r, r}, pi), WithinAbs(0.3, 1e-12));
    for (std::uint64_t s = 0; s < 10; ++s) {
        const DensityMatrix a = randomDensity(2, 50 + s), b = randomDensity(2, 60 + s);
        const TestOperator m = helstromTest(a, b, pi);
        CHECK_THAT(errorProbPovm(Povm::fromTest(m), {a, b}, pi),
                   WithinAbs(oracle::helstromError(a.matrix(), b.matrix(), 0.3, 0.7), 1e-10));
    }
}

TEST_CASE("helstromTest is invariant under positive scaling", "[testing]") {
    const DensityMatrix a = randomDensity(3, 70), b = randomDensity(3, 71);
    const HermitianMatrix delta = a.hermitian() * 0.4 - b.hermitian() * 0.6;
    const HermitianMatrix p = helstromTest(a, b, PriorVector({0.4, 0.6})).matrix();
    for (double c : {1e-3, 0.5, 7.0})
        CHECK((posProjector(delta * c).matrix() - p.matrix()).norm() < 1e-10);
}

TEST_CASE("worstCaseError", "[testing]") {
    const DensityMatrix a = randomDensity(2, 80), b = randomDensity(2, 81);
    const TestOperator t = helstromTest(a, b, kHalf);
    const auto w = worstCaseError(Povm::fromTest(t), {StateSet::singleton(a), StateSet::singleton(b)}, kHalf);
    CHECK_THAT(w.value, WithinAbs(errorProbPovm(Povm::fromTest(t), {a, b}, kHalf), 1e-14));

    const PriorVector pi({0.35, 0.65});
    const auto triv = worstCaseError(trivialPovm(2), {StateSet::stabilizer(1), StateSet::incoherent(2)}, pi);
    CHECK_THAT(triv.value, WithinAbs(0.65, 1e-14));

    const TestOperator h = helstromTest(fromPure(plusState()), DensityMatrix::maximallyMixed(2), kHalf);
    const auto comp = worstCaseError(Povm::fromTest(h), {plusSet(), StateSet::incoherent(2)}, kHalf);
    const auto pe = peMinSets({plusSet(), StateSet::incoherent(2)}, kHalf);
    CHECK_THAT(comp.value, WithinAbs(pe.value, 1e-6));
    CHECK_THAT(comp.value, WithinAbs(oracle::incoherentQubitGrid(fromPure(plusState()).matrix(), 0.5, 0.5), 1e-6));
}

TEST_CASE("peMinSets lower-bounds the worst-case error of any POVM", "[testing]") {
    const std::vector<StateSet> sets{StateSet::vertexHull({randomDensity(2, 90), randomDensity(2, 91)}),
                                     StateSet::incoherent(2)};
    const PriorVector pi({0.45, 0.55});
    const double pe = peMinSets(sets, pi).value;
    for (std::uint64_t s = 0; s < 10; ++s) {
        // random two-outcome POVM from a random test operator
        const DensityMatrix r = randomDensity(2, 900 + s);
        const HermitianMatrix m = r.hermitian() * (1.0 / maxEigenvalue(r.hermitian()));
        const auto w = worstCaseError(Povm::fromTest(TestOperator(m)), sets, pi);
        CHECK(pe <= w.value + 1e-9);
    }
    const auto povm = peMinSets(sets, pi).povm;
    CHECK(worstCaseError(povm, sets, pi).value - pe <= 1e-6);
}

TEST_CASE("universalTest on singletons is the Helstrom test", "[testing]") {
    const DensityMatrix a = randomDensity(2, 100), b = randomDensity(2, 101);
    const PriorVector pi({0.4, 0.6});
    const auto u = universalTest(StateSet::singleton(a), StateSet::singleton(b), pi);
    CHECK((u.test.matrix().matrix() - helstromTest(a, b, pi).matrix().matrix()).norm() < 1e-5);
    CHECK_FALSE(u.rankDeficient);
}

TEST_CASE("universalTest for {|+>} against incoherent states", "[testing]") {
    const auto u = universalTest(plusSet(), StateSet::incoherent(2), kHalf);
    CHECK((u.test.matrix().matrix() - fromPure(plusState()).matrix()).norm() < 1e-5);
    REQUIRE(u.report.fullRankMargin.has_value());
    CHECK_THAT(*u.report.fullRankMargin, WithinAbs(0.25, 1e-6));
    CHECK(u.report.value == Approx(oracle::incoherentQubitGrid(fromPure(plusState()).matrix(), 0.5, 0.5)).margin(1e-6));
    CHECK_FALSE(u.rankDeficient);
    CHECK(verifySaddle(u.test, plusSet(), StateSet::incoherent(2), kHalf, 1e-5));
}

TEST_CASE("universalTest on overlapping sets warns about rank deficiency", "[testing]") {
    const auto u = universalTest(StateSet::stabilizer(1), StateSet::incoherent(2), kHalf);
    CHECK(u.rankDeficient);
    CHECK_THAT(u.report.value, WithinAbs(0.5, 1e-6));
    CHECK_THROWS_AS(universalTest(StateSet::stabilizer(1), StateSet::incoherent(2), PriorVector::uniform(3)),
                    InvalidInput);
}

TEST_CASE("universalTest is optimal on full-rank hull instances", "[testing]") {
    int checked = 0;
    for (std::uint64_t s = 0; s < 8; ++s) {
        const StateSet h1 = StateSet::vertexHull({randomDensity(2, 1000 + s), randomDensity(2, 1100 + s)});
        const StateSet h2 = StateSet::vertexHull({randomDensity(2, 1200 + s), randomDensity(2, 1300 + s)});
        const auto u = universalTest(h1, h2, kHalf);
        if (u.rankDeficient)
            continue;
        ++checked;
        CHECK(u.report.value - peMinSets({h1, h2}, kHalf).value <= 1e-5);
        const HermitianMatrix delta = u.traceDistance.rho1.hermitian() * 0.5 - u.traceDistance.rho2.hermitian() * 0.5;
        CHECK((posProjector(delta).matrix() - u.test.matrix().matrix()).norm() <= 1e-2);
    }
    CHECK(checked > 0);
}

TEST_CASE("verifySaddle", "[testing]") {
    const StateSet z = StateSet::singleton(fromPure(basisState(2, 0)));
    const StateSet o = StateSet::singleton(fromPure(basisState(2, 1)));
    CHECK_FALSE(verifySaddle(TestOperator(HermitianMatrix::identity(2)), z, o, kHalf, 1e-5));
    const DensityMatrix a = randomDensity(2, 3), b = randomDensity(2, 4);
    CHECK(verifySaddle(helstromTest(a, b, kHalf), StateSet::singleton(a), StateSet::singleton(b), kHalf, 1e-6));
}

TEST_CASE("Near-optimal tests are close to the Helstrom projector", "[testing]") {
    const DensityMatrix a = randomDensity(3, 5), b = randomDensity(3, 6);
    const HermitianMatrix delta = a.hermitian() * 0.5 - b.hermitian() * 0.5;
    const HermitianMatrix p = posProjector(delta);
    const double best = traceInner(delta, p);
    double margin = 1e300;
    for (double x : oracle::realEigenvalues(delta.matrix()))
        margin = std::min(margin, std::abs(x));
    REQUIRE(margin > 1e-6);
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 20; ++trial) {
        const HermitianMatrix r(oracle::ginibreDensity(3, rng));
        const HermitianMatrix other = r * (1.0 / maxEigenvalue(r));
        for (double t : {1.0, 1e-2, 1e-4, 1e-6}) {
            const HermitianMatrix m = p * (1.0 - t) + other * t;
            const double shortfall = best - traceInner(delta, m);
            CHECK(shortfall >= -1e-14);
            CHECK((m.matrix() - p.matrix()).squaredNorm() <= shortfall / margin + 1e-14);
        }
    }
}

TEST_CASE("audenaertCheck", "[testing]") {
    const HermitianMatrix v = randomDensity(3, 7).hermitian() * 2.0;
    const auto eq = audenaertCheck(v, v, 0.4);
    CHECK_THAT(eq.lhs, WithinAbs(v.trace(), 1e-12));
    CHECK_THAT(eq.rhs, WithinAbs(v.trace(), 1e-12));
    CHECK(eq.holds);
    const auto orth = audenaertCheck(fromPure(basisState(2, 0)).hermitian(), fromPure(basisState(2, 1)).hermitian(), 0.5);
    CHECK_THAT(orth.rhs, WithinAbs(0.0, 1e-15));
    CHECK(orth.holds);
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 30; ++trial) {
        const int d = 2 + trial % 2;
        const HermitianMatrix a = HermitianMatrix(oracle::ginibreDensity(d, rng)) * (0.5 + trial);
        const HermitianMatrix b = HermitianMatrix(oracle::ginibreDensity(d, rng));
        for (int k = 0; k <= 10; ++k)
            CHECK(audenaertCheck(a, b, k / 10.0).holds);
    }
    CHECK_THROWS_AS(audenaertCheck(v, v, -0.1), InvalidInput);
}
