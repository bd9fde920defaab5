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

// Convex compact sets of density matrices used as composite hypotheses:
// finite hulls, incoherent (diagonal) states, PPT states, stabilizer
// polytopes and the full state space. Every variant provides
//   - a linear maximization oracle  sigma -> max tr[A sigma],
//   - a membership test,
//   - an SDP representation that can be embedded in larger programs.

#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "chernofflab/sdp/solver.hpp"
#include "chernofflab/states.hpp"

namespace chernofflab {

struct VertexHull {
    std::vector<DensityMatrix> vertices;
};
struct Incoherent {
    Eigen::Index dim;
};
struct Ppt {
    Eigen::Index dimA, dimB;
};
struct Stabilizer {
    int qubits;
    std::vector<PureState> states;
    std::vector<DensityMatrix> vertices;
};
struct FullSimplex {
    Eigen::Index dim;
};

// ---------------------------------------------------------------------------
// Stabilizer states

inline constexpr double kPhaseTolerance = 1e-9;

/// Removes the global phase: the first non-negligible amplitude becomes real
/// and positive.
inline CVector canonicalPhase(const CVector &v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (std::abs(v[i]) > kPhaseTolerance) {
            const Complex phase = std::conj(v[i]) / std::abs(v[i]);
            CVector out = v * phase;
            for (Eigen::Index k = 0; k < out.size(); ++k) {
                double re = out[k].real(), im = out[k].imag();
                if (std::abs(re) < 1e-15)
                    re = 0.0;
                if (std::abs(im) < 1e-15)
                    im = 0.0;
                out[k] = Complex(re, im);
            }
            return out;
        }
    }
    return v;
}

/// 2^n prod_{k=1..n} (2^k + 1).
inline long stabilizerStateCount(int qubits) {
    long count = 1L << qubits;
    for (int k = 1; k <= qubits; ++k)
        count *= (1L << k) + 1;
    return count;
}

/// All pure stabilizer states on 1 or 2 qubits, duplicate-free up to global
/// phase, in breadth-first order of the Clifford closure of |0...0> under
/// H and S on each qubit and CZ on each pair.
inline std::vector<PureState> enumerateStabilizerStates(int qubits) {
    if (qubits < 1)
        throw InvalidInput("enumerateStabilizerStates: need at least one qubit");
    if (qubits > 2)
        throw Unsupported("enumerateStabilizerStates: only 1 or 2 qubits are supported");
    const Eigen::Index d = Eigen::Index(1) << qubits;

    CMatrix h1(2, 2), s1(2, 2);
    h1 << 1, 1, 1, -1;
    h1 /= std::sqrt(2.0);
    s1 << 1, 0, 0, Complex(0, 1);
    auto onQubit = [&](const CMatrix &g, int q) {
        CMatrix out = CMatrix::Identity(1, 1);
        for (int k = 0; k < qubits; ++k)
            out = kron(out, k == q ? g : CMatrix(CMatrix::Identity(2, 2)));
        return out;
    };
    std::vector<CMatrix> gates;
    for (int q = 0; q < qubits; ++q) {
        gates.push_back(onQubit(h1, q));
        gates.push_back(onQubit(s1, q));
    }
    for (int a = 0; a < qubits; ++a)
        for (int b = a + 1; b < qubits; ++b) {
            CMatrix cz = CMatrix::Identity(d, d);
            for (Eigen::Index i = 0; i < d; ++i) {
                const bool bitA = (i >> (qubits - 1 - a)) & 1;
                const bool bitB = (i >> (qubits - 1 - b)) & 1;
                if (bitA && bitB)
                    cz(i, i) = -1.0;
            }
            gates.push_back(cz);
        }

    std::vector<CVector> found;
    auto known = [&](const CVector &v) {
        for (const CVector &f : found)
            if (std::abs(f.dot(v)) > 1.0 - kPhaseTolerance)
                return true;
        return false;
    };
    CVector start = CVector::Zero(d);
    start[0] = 1.0;
    found.push_back(start);
    for (std::size_t head = 0; head < found.size(); ++head) {
        const CVector current = found[head];
        for (const CMatrix &g : gates) {
            CVector next = canonicalPhase(g * current);
            if (!known(next))
                found.push_back(next);
        }
    }
    if (static_cast<long>(found.size()) != stabilizerStateCount(qubits))
        throw SolverFailure("enumerateStabilizerStates: closure produced " + std::to_string(found.size()) +
                            " states, expected " + std::to_string(stabilizerStateCount(qubits)));
    std::vector<PureState> out;
    out.reserve(found.size());
    for (const CVector &v : found)
        out.push_back(PureState::normalize(v));
    return out;
}

// ---------------------------------------------------------------------------

/// Convex compact set of density matrices.
class StateSet {
public:
    using Variant = std::variant<VertexHull, Incoherent, Ppt, Stabilizer, FullSimplex>;

    static StateSet vertexHull(std::vector<DensityMatrix> vertices) {
        if (vertices.empty())
            throw InvalidInput("StateSet::vertexHull: at least one vertex is required");
        const Eigen::Index d = vertices.front().dim();
        for (const auto &v : vertices)
            if (v.dim() != d)
                throw InvalidInput("StateSet::vertexHull: vertices have different dimensions");
        return StateSet(VertexHull{std::move(vertices)}, d);
    }
    static StateSet singleton(DensityMatrix rho) { return vertexHull({std::move(rho)}); }
    static StateSet incoherent(Eigen::Index d) {
        if (d < 1)
            throw InvalidInput("StateSet::incoherent: dimension must be positive");
        return StateSet(Incoherent{d}, d);
    }
    static StateSet ppt(Eigen::Index dimA, Eigen::Index dimB) {
        if (dimA < 1 || dimB < 1)
            throw InvalidInput("StateSet::ppt: dimensions must be positive");
        return StateSet(Ppt{dimA, dimB}, dimA * dimB);
    }
    static StateSet stabilizer(int qubits) {
        Stabilizer s{qubits, enumerateStabilizerStates(qubits), {}};
        for (const auto &psi : s.states)
            s.vertices.push_back(fromPure(psi));
        const Eigen::Index d = Eigen::Index(1) << qubits;
        return StateSet(std::move(s), d);
    }
    static StateSet fullSimplex(Eigen::Index d) {
        if (d < 1)
            throw InvalidInput("StateSet::fullSimplex: dimension must be positive");
        return StateSet(FullSimplex{d}, d);
    }

    Eigen::Index dim() const { return dim_; }
    const Variant &variant() const { return v_; }

    std::string typeName() const {
        return std::visit(
            [](const auto &s) -> std::string {
                using T = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<T, VertexHull>)
                    return "vertexHull";
                else if constexpr (std::is_same_v<T, Incoherent>)
                    return "incoherent";
                else if constexpr (std::is_same_v<T, Ppt>)
                    return "ppt";
                else if constexpr (std::is_same_v<T, Stabilizer>)
                    return "stabilizer";
                else
                    return "fullSimplex";
            },
            v_);
    }

    /// Vertices when the set is a finite hull (VertexHull or Stabilizer).
    const std::vector<DensityMatrix> *hullVertices() const {
        if (auto *h = std::get_if<VertexHull>(&v_))
            return &h->vertices;
        if (auto *s = std::get_if<Stabilizer>(&v_))
            return &s->vertices;
        return nullptr;
    }

    bool isSingleton() const {
        const auto *v = hullVertices();
        return v && v->size() == 1;
    }

    /// A member whose support contains the support of every other member:
    /// the vertex barycenter for hulls, I/d otherwise.
    DensityMatrix maxSupportMember() const {
        if (const auto *verts = hullVertices()) {
            CMatrix sum = CMatrix::Zero(dim_, dim_);
            for (const auto &v : *verts)
                sum += v.matrix();
            return DensityMatrix::normalized(sum);
        }
        return DensityMatrix::maximallyMixed(dim_);
    }

private:
    StateSet(Variant v, Eigen::Index d) : v_(std::move(v)), dim_(d) {}
    Variant v_;
    Eigen::Index dim_;
};

// ---------------------------------------------------------------------------
// SDP representation

/// Affine + conic description of sigma in a set, with block indices local
/// to the representation.
struct SetRepresentation {
    struct OperatorConstraint {
        std::vector<sdp::OperatorTerm> terms;
        CMatrix rhs;
    };
    struct TraceConstraint {
        std::vector<sdp::OperatorTerm> terms;
        double rhs;
    };

    Eigen::Index dim = 0;
    std::vector<sdp::BlockSpec> blocks;
    std::vector<sdp::OperatorTerm> stateTerms; // sigma = sum of these
    std::vector<OperatorConstraint> operatorConstraints;
    std::vector<TraceConstraint> traceConstraints;
};

inline SetRepresentation sdpRepresentation(const StateSet &set) {
    using sdp::BlockKind;
    using sdp::OperatorTerm;
    SetRepresentation rep;
    rep.dim = set.dim();
    if (const auto *verts = set.hullVertices()) {
        std::vector<CMatrix> mats;
        for (const auto &v : *verts)
            mats.push_back(v.matrix());
        rep.blocks.push_back({BlockKind::Nonnegative, static_cast<Eigen::Index>(mats.size())});
        rep.stateTerms.push_back(OperatorTerm::weighted(0, 1.0, mats));
        rep.traceConstraints.push_back({{OperatorTerm::weighted(0, 1.0, mats)}, 1.0});
        return rep;
    }
    if (std::holds_alternative<Incoherent>(set.variant())) {
        rep.blocks.push_back({BlockKind::Nonnegative, set.dim()});
        rep.stateTerms.push_back(OperatorTerm::diagonal(0, 1.0));
        rep.traceConstraints.push_back({{OperatorTerm::diagonal(0, 1.0)}, 1.0});
        return rep;
    }
    if (const auto *p = std::get_if<Ppt>(&set.variant())) {
        rep.blocks.push_back({BlockKind::Hermitian, set.dim()});
        rep.blocks.push_back({BlockKind::Hermitian, set.dim()});
        rep.stateTerms.push_back(OperatorTerm::scaled(0, 1.0));
        rep.operatorConstraints.push_back(
            {{OperatorTerm::scaled(1, 1.0), OperatorTerm::partialTranspose(0, -1.0, p->dimA, p->dimB)},
             CMatrix::Zero(set.dim(), set.dim())});
        rep.traceConstraints.push_back({{OperatorTerm::scaled(0, 1.0)}, 1.0});
        return rep;
    }
    rep.blocks.push_back({BlockKind::Hermitian, set.dim()});
    rep.stateTerms.push_back(OperatorTerm::scaled(0, 1.0));
    rep.traceConstraints.push_back({{OperatorTerm::scaled(0, 1.0)}, 1.0});
    return rep;
}

/// A representation placed inside a larger problem.
struct EmbeddedSet {
    Eigen::Index dim = 0;
    std::vector<sdp::OperatorTerm> stateTerms; // global block indices

    /// Terms for c * sigma.
    std::vector<sdp::OperatorTerm> scaledState(double c) const {
        std::vector<sdp::OperatorTerm> out = stateTerms;
        for (auto &t : out)
            t.scale *= c;
        return out;
    }

    DensityMatrix extract(const sdp::SdpSolution &sol) const {
        CMatrix m = CMatrix::Zero(dim, dim);
        for (const auto &t : stateTerms)
            m += t.apply(sol.primalBlocks[t.block]);
        return DensityMatrix::normalized(m);
    }
};

inline EmbeddedSet embed(sdp::SdpProblem &problem, const SetRepresentation &rep) {
    const int offset = static_cast<int>(problem.blocks.size());
    for (const auto &b : rep.blocks)
        problem.blocks.push_back(b);
    auto shift = [offset](std::vector<sdp::OperatorTerm> terms) {
        for (auto &t : terms)
            t.block += offset;
        return terms;
    };
    for (const auto &c : rep.operatorConstraints)
        sdp::addOperatorEquality(problem, shift(c.terms), c.rhs);
    for (const auto &c : rep.traceConstraints)
        sdp::addTraceEquality(problem, shift(c.terms), rep.dim, c.rhs);
    return {rep.dim, shift(rep.stateTerms)};
}

/// Compact record of an SDP solve, kept by front-ends for certification.
struct SolveReport {
    sdp::SdpStatus status = sdp::SdpStatus::Optimal;
    double gap = 0.0;
    double primalResidual = 0.0;
    double dualResidual = 0.0;
    int iterations = 0;

    static SolveReport from(const sdp::SdpSolution &s) {
        return {s.status, s.gap, s.primalResidual, s.dualResidual, s.iterations};
    }
};

inline void requireOptimal(const sdp::SdpSolution &s, const std::string &who) {
    if (!s.optimal()) {
        std::ostringstream msg;
        msg << who << ": SDP solver returned status " << sdp::toString(s.status) << " (gap " << s.gap
            << ", primal residual " << s.primalResidual << ", dual residual " << s.dualResidual << ")";
        throw SolverFailure(msg.str());
    }
}

// ---------------------------------------------------------------------------
// Linear oracle

struct OracleResult {
    DensityMatrix state;
    double value;
    std::optional<SolveReport> sdp;
};

inline constexpr double kTieTolerance = 1e-12;

/// argmax_{sigma in set} tr[A sigma] and the value.
inline OracleResult linearOracle(const StateSet &set, const HermitianMatrix &a,
                                 const sdp::SolverOptions &sdpOptions = {}) {
    if (a.dim() != set.dim())
        throw InvalidInput("linearOracle: operator dimension " + std::to_string(a.dim()) +
                           " does not match set dimension " + std::to_string(set.dim()));
    if (const auto *verts = set.hullVertices()) {
        std::vector<double> vals;
        vals.reserve(verts->size());
        for (const auto &v : *verts)
            vals.push_back(traceInner(a.matrix(), v.matrix()));
        const double best = *std::max_element(vals.begin(), vals.end());
        for (std::size_t k = 0; k < vals.size(); ++k)
            if (vals[k] >= best - kTieTolerance)
                return {(*verts)[k], vals[k], std::nullopt};
    }
    if (std::holds_alternative<Incoherent>(set.variant())) {
        const RVector diag = a.matrix().diagonal().real();
        const double best = diag.maxCoeff();
        for (Eigen::Index k = 0; k < diag.size(); ++k)
            if (diag[k] >= best - kTieTolerance)
                return {fromPure(basisState(static_cast<int>(set.dim()), static_cast<int>(k))), diag[k],
                        std::nullopt};
    }
    if (std::holds_alternative<FullSimplex>(set.variant())) {
        const EigenSystem es = eigh(a);
        const Eigen::Index top = es.eigenvalues.size() - 1;
        const CVector v = es.eigenvectors.col(top);
        DensityMatrix s = fromPure(PureState::normalize(v));
        return {s, traceInner(a.matrix(), s.matrix()), std::nullopt};
    }
    // Ppt: maximize tr[A sigma] over sigma >= 0, sigma^{T_B} >= 0, tr sigma = 1.
    sdp::SdpProblem problem;
    const EmbeddedSet emb = embed(problem, sdpRepresentation(set));
    problem.objective.push_back({emb.stateTerms.front().block, {-a.matrix(), {}}});
    const sdp::SdpSolution sol = sdp::solve(problem, sdpOptions);
    requireOptimal(sol, "linearOracle(ppt)");
    DensityMatrix s = emb.extract(sol);
    return {s, traceInner(a.matrix(), s.matrix()), SolveReport::from(sol)};
}

// ---------------------------------------------------------------------------
// Membership

/// Nearest point of conv{points} to the origin (Wolfe's minimum-norm-point
/// algorithm). Returns convex weights.
inline RVector minNormPointWeights(const std::vector<RVector> &points) {
    const std::size_t k = points.size();
    const double eps = 1e-15;
    double scale = 0.0;
    for (const auto &p : points)
        scale = std::max(scale, p.squaredNorm());
    scale = std::max(scale, 1e-300);

    std::size_t first = 0;
    for (std::size_t i = 1; i < k; ++i)
        if (points[i].squaredNorm() < points[first].squaredNorm())
            first = i;
    std::vector<std::size_t> active{first};
    std::vector<double> w{1.0};
    auto current = [&]() {
        RVector x = RVector::Zero(points.front().size());
        for (std::size_t i = 0; i < active.size(); ++i)
            x += w[i] * points[active[i]];
        return x;
    };
    RVector x = current();
    for (int major = 0; major < 1000; ++major) {
        std::size_t j = 0;
        double bestDot = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < k; ++i) {
            const double dd = x.dot(points[i]);
            if (dd < bestDot) {
                bestDot = dd;
                j = i;
            }
        }
        if (x.squaredNorm() - bestDot <= eps * scale)
            break;
        if (std::find(active.begin(), active.end(), j) != active.end())
            break;
        active.push_back(j);
        w.push_back(0.0);
        for (int minor = 0; minor < 1000; ++minor) {
            const Eigen::Index s = static_cast<Eigen::Index>(active.size());
            Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(s + 1, s + 1);
            for (Eigen::Index a = 0; a < s; ++a) {
                for (Eigen::Index b = 0; b < s; ++b)
                    kkt(a, b) = points[active[a]].dot(points[active[b]]);
                kkt(a, s) = 1.0;
                kkt(s, a) = 1.0;
            }
            RVector rhs = RVector::Zero(s + 1);
            rhs[s] = 1.0;
            const RVector sol = kkt.completeOrthogonalDecomposition().solve(rhs);
            const RVector v = sol.head(s);
            if ((v.array() > eps).all()) {
                for (Eigen::Index a = 0; a < s; ++a)
                    w[a] = v[a];
                break;
            }
            double theta = 1.0;
            for (Eigen::Index a = 0; a < s; ++a)
                if (v[a] <= eps)
                    theta = std::min(theta, w[a] / (w[a] - v[a]));
            for (Eigen::Index a = 0; a < s; ++a)
                w[a] = theta * v[a] + (1.0 - theta) * w[a];
            std::vector<std::size_t> keptIdx;
            std::vector<double> keptW;
            for (Eigen::Index a = 0; a < s; ++a)
                if (w[a] > eps) {
                    keptIdx.push_back(active[a]);
                    keptW.push_back(w[a]);
                }
            active = keptIdx;
            w = keptW;
        }
        x = current();
    }
    RVector weights = RVector::Zero(static_cast<Eigen::Index>(k));
    double total = 0.0;
    for (double wi : w)
        total += wi;
    for (std::size_t i = 0; i < active.size(); ++i)
        weights[static_cast<Eigen::Index>(active[i])] = w[i] / total;
    return weights;
}

/// Real coordinates of a Hermitian matrix (isometric for the Frobenius norm).
inline RVector hermitianCoordinates(const CMatrix &m) {
    const Eigen::Index d = m.rows();
    RVector out(d * d);
    Eigen::Index k = 0;
    for (Eigen::Index i = 0; i < d; ++i)
        out[k++] = m(i, i).real();
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = i + 1; j < d; ++j) {
            out[k++] = std::sqrt(2.0) * m(i, j).real();
            out[k++] = std::sqrt(2.0) * m(i, j).imag();
        }
    return out;
}

/// Frobenius distance from rho to the convex hull of the vertices, with the
/// nearest convex weights.
inline std::pair<double, RVector> hullDistance(const std::vector<DensityMatrix> &vertices, const DensityMatrix &rho) {
    std::vector<RVector> pts;
    pts.reserve(vertices.size());
    for (const auto &v : vertices)
        pts.push_back(hermitianCoordinates(v.matrix() - rho.matrix()));
    RVector w = minNormPointWeights(pts);
    CMatrix diff = -rho.matrix();
    for (std::size_t k = 0; k < vertices.size(); ++k)
        diff += w[static_cast<Eigen::Index>(k)] * vertices[k].matrix();
    return {diff.norm(), w};
}

inline bool membership(const StateSet &set, const DensityMatrix &rho, double tol = 1e-8) {
    if (rho.dim() != set.dim())
        throw InvalidInput("membership: dimension mismatch");
    if (const auto *verts = set.hullVertices())
        return hullDistance(*verts, rho).first <= tol;
    if (minEigenvalue(rho.hermitian()) < -tol)
        return false;
    if (std::holds_alternative<Incoherent>(set.variant())) {
        CMatrix off = rho.matrix();
        off.diagonal().setZero();
        return off.norm() <= tol;
    }
    if (const auto *p = std::get_if<Ppt>(&set.variant()))
        return minEigenvalue(partialTranspose(rho.hermitian(), p->dimA, p->dimB)) >= -tol;
    return true;
}

// ---------------------------------------------------------------------------
// Tensor products and sequences

inline StateSet tensorProductSet(const StateSet &a, const StateSet &b) {
    const auto *va = a.hullVertices();
    const auto *vb = b.hullVertices();
    if (!va || !vb)
        throw Unsupported("tensorProductSet: both factors must be finite hulls (got " + a.typeName() + ", " +
                          b.typeName() + ")");
    std::vector<DensityMatrix> out;
    out.reserve(va->size() * vb->size());
    for (const auto &x : *va)
        for (const auto &y : *vb)
            out.push_back(tensorProduct(x, y));
    return StateSet::vertexHull(std::move(out));
}

/// Family n -> C_n of sets on (C^baseDim)^{⊗n}.
struct SetSequence {
    std::function<StateSet(int)> generator;
    bool stable = false;
    Eigen::Index baseDim = 2;
    std::string name;

    StateSet at(int n, long cap = CopyCount::kDefaultDimCap) const {
        CopyCount(n).checkedDimension(baseDim, cap);
        StateSet s = generator(n);
        long expected = CopyCount(n).checkedDimension(baseDim, cap);
        if (s.dim() != expected)
            throw InvalidInput("SetSequence '" + name + "': generator returned dimension " + std::to_string(s.dim()) +
                               " at n=" + std::to_string(n));
        return s;
    }
};

/// Spot check of C_1 ⊗ C_1 ⊆ C_2: products of vertices (or of basis states
/// and the maximally mixed state for non-hull sets) must lie in C_2.
inline bool checkStability(const SetSequence &seq, double tol = 1e-8, long cap = CopyCount::kDefaultDimCap) {
    const StateSet c1 = seq.at(1, cap);
    const StateSet c2 = seq.at(2, cap);
    std::vector<DensityMatrix> samples;
    if (const auto *v = c1.hullVertices()) {
        samples = *v;
    } else {
        for (int i = 0; i < static_cast<int>(c1.dim()); ++i)
            samples.push_back(fromPure(basisState(static_cast<int>(c1.dim()), i)));
        samples.push_back(c1.maxSupportMember());
    }
    for (const auto &x : samples)
        for (const auto &y : samples)
            if (!membership(c2, tensorProduct(x, y), tol))
                return false;
    return true;
}

/// {rho^{⊗n}} as singleton sets.
inline SetSequence iidSequence(const DensityMatrix &rho) {
    return {[rho](int n) { return StateSet::singleton(tensorPower(rho, CopyCount(n))); }, true, rho.dim(),
            "iid"};
}

/// {STAB_n}, n <= 2.
inline SetSequence stabilizerSequence() {
    return {[](int n) { return StateSet::stabilizer(n); }, true, 2, "stabilizer"};
}

/// {I_{d^n}}.
inline SetSequence incoherentSequence(Eigen::Index d) {
    return {[d](int n) {
                Eigen::Index dn = 1;
                for (int k = 0; k < n; ++k)
                    dn *= d;
                return StateSet::incoherent(dn);
            },
            true, d, "incoherent"};
}

/// n-fold tensorProductSet of a finite hull.
inline SetSequence hullPowerSequence(const StateSet &base) {
    if (!base.hullVertices())
        throw Unsupported("hullPowerSequence: base set must be a finite hull");
    return {[base](int n) {
                StateSet out = base;
                for (int k = 1; k < n; ++k)
                    out = tensorProductSet(out, base);
                return out;
            },
            true, base.dim(), "hullPower"};
}

} // namespace chernofflab
