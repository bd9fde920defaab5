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

#include <cstdio>
#include <filesystem>

#include "oracles.hpp"

using namespace chernofflab;
using chernofflab::io::json;

TEST_CASE("matrix JSON round trip is exact", "[io]") {
    const DensityMatrix r = randomDensity(3, 11);
    const CMatrix back = io::matrixFromJson(json::parse(io::matrixToJson(r.matrix()).dump()));
    CHECK(back == r.matrix());
}

TEST_CASE("pure state JSON round trip", "[io]") {
    const PureState t = tState();
    const PureState back = io::pureFromJson(json::parse(io::pureToJson(t).dump()));
    CHECK(back.amplitudes() == t.amplitudes());
    CHECK(io::isPureStateJson(io::pureToJson(t)));
    CHECK((io::densityFromJson(io::pureToJson(t)).matrix() - fromPure(t).matrix()).norm() < 1e-15);
}

TEST_CASE("set JSON round trip", "[io]") {
    const std::vector<StateSet> sets{StateSet::vertexHull({randomDensity(2, 1), randomDensity(2, 2)}),
                                     StateSet::incoherent(4), StateSet::ppt(2, 3), StateSet::stabilizer(2),
                                     StateSet::fullSimplex(3)};
    for (const auto &s : sets) {
        const json j = io::setToJson(s);
        const StateSet back = io::setFromJson(json::parse(j.dump()));
        CHECK(back.typeName() == s.typeName());
        CHECK(back.dim() == s.dim());
        CHECK(io::setToJson(back) == j);
    }
    const json pureHull = {{"type", "vertexHull"}, {"vertices", {io::pureToJson(plusState())}}};
    CHECK(io::setFromJson(pureHull).isSingleton());
}

TEST_CASE("POVM and divergence JSON", "[io]") {
    const Povm p = Povm::fromTest(helstromTest(randomDensity(2, 3), randomDensity(2, 4), PriorVector::uniform(2)));
    const Povm back = io::povmFromJson(json::parse(io::povmToJson(p).dump()));
    REQUIRE(back.size() == 2);
    CHECK(back[0].matrix() == p[0].matrix());
    CHECK(io::divergenceToJson(DivergenceValue::infinity()) == "inf");
    CHECK(io::divergenceFromJson("inf").isInfinite());
    CHECK(io::divergenceFromJson(io::divergenceToJson(DivergenceValue::finite(0.25))).bits() == 0.25);
    CHECK_THROWS_AS(io::divergenceFromJson("infinity"), InvalidInput);
}

TEST_CASE("SDP problem JSON round trip", "[io]") {
    sdp::SdpProblem p;
    const EmbeddedSet emb = embed(p, sdpRepresentation(StateSet::ppt(2, 2)));
    p.objective.push_back({emb.stateTerms.front().block, {-fromPure(maxEntangled(2)).matrix(), {}}});
    const json j = io::problemToJson(p);
    const sdp::SdpProblem back = io::problemFromJson(json::parse(j.dump()));
    CHECK(io::problemToJson(back) == j);
    CHECK(sdp::solve(back).primalObjective == Approx(-0.5).margin(1e-7));
}

TEST_CASE("malformed JSON is rejected as invalid input", "[io]") {
    CHECK_THROWS_AS(io::matrixFromJson(json::parse(R"({"rows":2,"cols":2,"data":[[1,0]]})")), InvalidInput);
    CHECK_THROWS_AS(io::matrixFromJson(json::parse(R"({"rows":1,"cols":1,"data":[[1]]})")), InvalidInput);
    CHECK_THROWS_AS(io::matrixFromJson(json::parse(R"({"rows":1,"data":[[1,0]]})")), InvalidInput);
    CHECK_THROWS_AS(io::densityFromJson(json::parse(R"({"rows":1,"cols":1,"data":[[2,0]]})")), InvalidInput);
    CHECK_THROWS_AS(io::pureFromJson(json::parse(R"({"dim":2,"amplitudes":[[1,0]]})")), InvalidInput);
    CHECK_THROWS_AS(io::setFromJson(json::parse(R"({"type":"sep","dim":4})")), InvalidInput);
    CHECK_THROWS_AS(io::setFromJson(json::parse(R"({"type":"incoherent","dim":"two"})")), InvalidInput);
    CHECK_THROWS_AS(io::setFromJson(json::parse(R"([1,2])")), InvalidInput);
    CHECK_THROWS_AS(io::povmFromJson(json::parse(R"({"a":1})")), InvalidInput);
    CHECK_THROWS_AS(io::problemFromJson(json::parse(R"({"blocks":[{"kind":"cone","dim":2}]})")), InvalidInput);
    CHECK_THROWS_AS(io::readJsonFile("/nonexistent/file.json"), InvalidInput);
}

TEST_CASE("JSON files", "[io]") {
    const auto path = (std::filesystem::temp_directory_path() / "chernofflab_io_test.json").string();
    io::writeJsonFile(path, io::setToJson(StateSet::stabilizer(1)));
    CHECK(io::setFromJson(io::readJsonFile(path)).typeName() == StateSet::stabilizer(1).typeName());
    {
        std::FILE *f = std::fopen(path.c_str(), "w");
        std::fputs("{ not json", f);
        std::fclose(f);
    }
    CHECK_THROWS_AS(io::readJsonFile(path), InvalidInput);
    std::filesystem::remove(path);
}
