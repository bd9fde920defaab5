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

// JSON file formats.
//
//   matrix     { "rows": d, "cols": d, "data": [[re, im], ...] }   (row-major)
//   pure state { "dim": d, "amplitudes": [[re, im], ...] }
//   set        { "type": "vertexHull", "vertices": [state, ...] }
//              { "type": "incoherent", "dim": d }
//              { "type": "ppt", "dimA": a, "dimB": b }
//              { "type": "stabilizer", "qubits": n }
//              { "type": "fullSimplex", "dim": d }
//
// Doubles are written in shortest round-trip form.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "chernofflab/chernoff.hpp"
#include "chernofflab/measurements.hpp"
#include "chernofflab/sets.hpp"

namespace chernofflab::io {

using json = nlohmann::json;

namespace detail {

inline Complex complexFromJson(const json &j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw InvalidInput("expected a [re, im] pair");
    const double re = j[0].get<double>(), im = j[1].get<double>();
    if (!std::isfinite(re) || !std::isfinite(im))
        throw InvalidInput("non-finite matrix entry");
    return {re, im};
}

inline json complexToJson(Complex z) { return json::array({z.real(), z.imag()}); }

inline Eigen::Index sizeField(const json &j, const char *key) {
    if (!j.is_object() || !j.contains(key) || !j[key].is_number_integer())
        throw InvalidInput(std::string("missing integer field '") + key + "'");
    const auto v = j[key].get<long long>();
    if (v < 1)
        throw InvalidInput(std::string("field '") + key + "' must be positive");
    return static_cast<Eigen::Index>(v);
}

template <class F> auto guarded(F &&f) {
    try {
        return f();
    } catch (const json::exception &e) {
        throw InvalidInput(std::string("malformed JSON: ") + e.what());
    }
}

} // namespace detail

inline json matrixToJson(const CMatrix &m) {
    json data = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            data.push_back(detail::complexToJson(m(i, j)));
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

inline CMatrix matrixFromJson(const json &j) {
    return detail::guarded([&] {
        const Eigen::Index r = detail::sizeField(j, "rows");
        const Eigen::Index c = detail::sizeField(j, "cols");
        if (!j.contains("data") || !j["data"].is_array())
            throw InvalidInput("matrix: missing 'data' array");
        const json &data = j["data"];
        if (static_cast<Eigen::Index>(data.size()) != r * c)
            throw InvalidInput("matrix: 'data' length " + std::to_string(data.size()) + " does not equal rows*cols");
        CMatrix m(r, c);
        for (Eigen::Index i = 0; i < r; ++i)
            for (Eigen::Index k = 0; k < c; ++k)
                m(i, k) = detail::complexFromJson(data[i * c + k]);
        return m;
    });
}

inline json pureToJson(const PureState &psi) {
    json amps = json::array();
    for (Eigen::Index i = 0; i < psi.dim(); ++i)
        amps.push_back(detail::complexToJson(psi[i]));
    return {{"dim", psi.dim()}, {"amplitudes", amps}};
}

inline PureState pureFromJson(const json &j) {
    return detail::guarded([&] {
        const Eigen::Index d = detail::sizeField(j, "dim");
        if (!j.contains("amplitudes") || !j["amplitudes"].is_array() ||
            static_cast<Eigen::Index>(j["amplitudes"].size()) != d)
            throw InvalidInput("pure state: 'amplitudes' must hold dim entries");
        CVector v(d);
        for (Eigen::Index i = 0; i < d; ++i)
            v[i] = detail::complexFromJson(j["amplitudes"][i]);
        return PureState(v);
    });
}

inline bool isPureStateJson(const json &j) { return j.is_object() && j.contains("amplitudes"); }

/// Density matrix from either a matrix or a pure-state object.
inline DensityMatrix densityFromJson(const json &j) {
    if (isPureStateJson(j))
        return fromPure(pureFromJson(j));
    return DensityMatrix(matrixFromJson(j));
}

inline json setToJson(const StateSet &set) {
    return std::visit(
        [&](const auto &s) -> json {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, VertexHull>) {
                json verts = json::array();
                for (const auto &v : s.vertices)
                    verts.push_back(matrixToJson(v.matrix()));
                return {{"type", "vertexHull"}, {"vertices", verts}};
            } else if constexpr (std::is_same_v<T, Incoherent>) {
                return {{"type", "incoherent"}, {"dim", s.dim}};
            } else if constexpr (std::is_same_v<T, Ppt>) {
                return {{"type", "ppt"}, {"dimA", s.dimA}, {"dimB", s.dimB}};
            } else if constexpr (std::is_same_v<T, Stabilizer>) {
                return {{"type", "stabilizer"}, {"qubits", s.qubits}};
            } else {
                return {{"type", "fullSimplex"}, {"dim", s.dim}};
            }
        },
        set.variant());
}

inline StateSet setFromJson(const json &j) {
    return detail::guarded([&] {
        if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
            throw InvalidInput("set: missing string field 'type'");
        const std::string type = j["type"].get<std::string>();
        if (type == "vertexHull") {
            if (!j.contains("vertices") || !j["vertices"].is_array())
                throw InvalidInput("vertexHull: missing 'vertices' array");
            std::vector<DensityMatrix> verts;
            for (const auto &v : j["vertices"])
                verts.push_back(densityFromJson(v));
            return StateSet::vertexHull(std::move(verts));
        }
        if (type == "incoherent")
            return StateSet::incoherent(detail::sizeField(j, "dim"));
        if (type == "ppt")
            return StateSet::ppt(detail::sizeField(j, "dimA"), detail::sizeField(j, "dimB"));
        if (type == "stabilizer")
            return StateSet::stabilizer(static_cast<int>(detail::sizeField(j, "qubits")));
        if (type == "fullSimplex")
            return StateSet::fullSimplex(detail::sizeField(j, "dim"));
        throw InvalidInput("set: unknown type '" + type + "'");
    });
}

inline json povmToJson(const Povm &p) {
    json out = json::array();
    for (const auto &m : p.elements())
        out.push_back(matrixToJson(m.matrix()));
    return out;
}

inline Povm povmFromJson(const json &j) {
    return detail::guarded([&] {
        if (!j.is_array())
            throw InvalidInput("POVM: expected an array of matrices");
        std::vector<HermitianMatrix> elems;
        for (const auto &m : j)
            elems.emplace_back(matrixFromJson(m));
        return Povm(std::move(elems));
    });
}

inline json divergenceToJson(const DivergenceValue &v) {
    if (v.isInfinite())
        return "inf";
    return v.bits();
}

inline DivergenceValue divergenceFromJson(const json &j) {
    if (j.is_string() && j.get<std::string>() == "inf")
        return DivergenceValue::infinity();
    if (!j.is_number())
        throw InvalidInput("divergence: expected a number or \"inf\"");
    return DivergenceValue::finite(j.get<double>());
}

// ---------------------------------------------------------------------------
// SDP problem dump, for debugging

namespace detail {
inline json blockValueToJson(const sdp::BlockSpec &spec, const sdp::BlockValue &v) {
    if (spec.kind == sdp::BlockKind::Hermitian)
        return matrixToJson(v.hermitian);
    return std::vector<double>(v.nonnegative.data(), v.nonnegative.data() + v.nonnegative.size());
}

inline sdp::BlockValue blockValueFromJson(const sdp::BlockSpec &spec, const json &j) {
    sdp::BlockValue v;
    if (spec.kind == sdp::BlockKind::Hermitian) {
        v.hermitian = matrixFromJson(j);
    } else {
        const auto xs = j.get<std::vector<double>>();
        v.nonnegative = Eigen::Map<const RVector>(xs.data(), static_cast<Eigen::Index>(xs.size()));
    }
    return v;
}

inline json coefficientsToJson(const sdp::SdpProblem &p, const std::vector<sdp::BlockCoefficient> &terms) {
    json out = json::array();
    for (const auto &t : terms)
        out.push_back({{"block", t.block}, {"value", blockValueToJson(p.blocks.at(t.block), t.value)}});
    return out;
}

inline std::vector<sdp::BlockCoefficient> coefficientsFromJson(const sdp::SdpProblem &p, const json &j) {
    std::vector<sdp::BlockCoefficient> out;
    for (const auto &t : j) {
        const int b = t.at("block").get<int>();
        if (b < 0 || b >= static_cast<int>(p.blocks.size()))
            throw InvalidInput("SDP dump: block index out of range");
        out.push_back({b, blockValueFromJson(p.blocks[b], t.at("value"))});
    }
    return out;
}
} // namespace detail

inline json problemToJson(const sdp::SdpProblem &p) {
    json blocks = json::array();
    for (const auto &b : p.blocks)
        blocks.push_back({{"kind", b.kind == sdp::BlockKind::Hermitian ? "hermitian" : "nonnegative"}, {"dim", b.dim}});
    json eqs = json::array();
    for (const auto &e : p.equalities)
        eqs.push_back({{"terms", detail::coefficientsToJson(p, e.terms)}, {"rhs", e.rhs}});
    return {{"blocks", blocks},
            {"objective", detail::coefficientsToJson(p, p.objective)},
            {"objectiveConstant", p.objectiveConstant},
            {"equalities", eqs}};
}

inline sdp::SdpProblem problemFromJson(const json &j) {
    return detail::guarded([&] {
        sdp::SdpProblem p;
        for (const auto &b : j.at("blocks")) {
            const std::string kind = b.at("kind").get<std::string>();
            if (kind != "hermitian" && kind != "nonnegative")
                throw InvalidInput("SDP dump: unknown block kind '" + kind + "'");
            p.blocks.push_back({kind == "hermitian" ? sdp::BlockKind::Hermitian : sdp::BlockKind::Nonnegative,
                                static_cast<Eigen::Index>(b.at("dim").get<long long>())});
        }
        p.objective = detail::coefficientsFromJson(p, j.at("objective"));
        p.objectiveConstant = j.value("objectiveConstant", 0.0);
        for (const auto &e : j.at("equalities"))
            p.equalities.push_back({detail::coefficientsFromJson(p, e.at("terms")), e.at("rhs").get<double>()});
        p.validate();
        return p;
    });
}

// ---------------------------------------------------------------------------
// Files

inline json readJsonFile(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw InvalidInput("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception &e) {
        throw InvalidInput("'" + path + "' is not valid JSON: " + e.what());
    }
}

inline void writeJsonFile(const std::string &path, const json &j) {
    std::ofstream out(path);
    if (!out)
        throw InvalidInput("cannot write '" + path + "'");
    out << j.dump(2) << '\n';
}

} // namespace chernofflab::io
