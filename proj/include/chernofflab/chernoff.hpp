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

// Quantum Chernoff quasi-divergence Q_alpha(rho||sigma) = tr[rho^alpha sigma^{1-alpha}]
// and divergence C = max_alpha -log2 Q_alpha, for states and for convex sets.
//
// For sets, Q_alpha(C1||C2) = sup Q_alpha(rho||sigma) is a concave
// maximization solved by Frank-Wolfe on C1 x C2; log2 Q_alpha(C1||C2) is
// convex in alpha, so C(C1||C2) follows from a golden-section search.

#include <cmath>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "chernofflab/sets.hpp"

namespace chernofflab {

/// Nonnegative divergence in bits, possibly infinite.
class DivergenceValue {
public:
    static DivergenceValue finite(double bits) {
        if (!std::isfinite(bits))
            return infinity();
        if (bits < -1e-9)
            throw InvalidInput("DivergenceValue: negative value " + std::to_string(bits));
        return DivergenceValue(std::max(bits, 0.0), false);
    }
    static DivergenceValue infinity() { return DivergenceValue(std::numeric_limits<double>::infinity(), true); }

    bool isInfinite() const { return infinite_; }
    double bits() const { return value_; }

    bool operator<(const DivergenceValue &o) const {
        if (infinite_)
            return false;
        return o.infinite_ || value_ < o.value_;
    }

private:
    DivergenceValue(double v, bool inf) : value_(v), infinite_(inf) {}
    double value_;
    bool infinite_;
};

/// Q_alpha below this is reported as an infinite divergence.
inline constexpr double kZeroQuasi = 1e-300;
inline constexpr double kSlopeTolerance = 1e-12;

inline double checkAlpha(double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw InvalidInput("alpha must lie in [0, 1], got " + std::to_string(alpha));
    return alpha;
}

inline double qAlphaPair(const DensityMatrix &rho, const DensityMatrix &sigma, double alpha) {
    checkAlpha(alpha);
    if (rho.dim() != sigma.dim())
        throw InvalidInput("qAlphaPair: dimension mismatch");
    const HermitianMatrix a = matrixPower(rho.hermitian(), alpha);
    const HermitianMatrix b = matrixPower(sigma.hermitian(), 1.0 - alpha);
    return std::max(0.0, traceInner(a, b));
}

/// d/dalpha Q_alpha(rho||sigma) (natural log), one-sided at the endpoints.
inline double qAlphaSlope(const DensityMatrix &rho, const DensityMatrix &sigma, double alpha) {
    checkAlpha(alpha);
    const EigenSystem er = eigh(rho.hermitian());
    const EigenSystem es = eigh(sigma.hermitian());
    const RVector lr = clippedSpectrum(er.eigenvalues, "qAlphaSlope");
    const RVector ls = clippedSpectrum(es.eigenvalues, "qAlphaSlope");
    // sum_ij lr_i^alpha ls_j^{1-alpha} (ln lr_i - ln ls_j) |<e_i|f_j>|^2 over the supports
    const CMatrix overlap = er.eigenvectors.adjoint() * es.eigenvectors;
    double slope = 0.0;
    for (Eigen::Index i = 0; i < lr.size(); ++i) {
        if (lr[i] <= 0.0)
            continue;
        for (Eigen::Index j = 0; j < ls.size(); ++j) {
            if (ls[j] <= 0.0)
                continue;
            const double w = std::norm(overlap(i, j));
            slope += powerWithSupportConvention(lr[i], alpha) * powerWithSupportConvention(ls[j], 1.0 - alpha) *
                     (std::log(lr[i]) - std::log(ls[j])) * w;
        }
    }
    return slope;
}

struct AlphaSearchOptions {
    double alphaTol = 1e-6;
};

struct FrankWolfeOptions {
    double gapTol = 1e-6;
    int maxIterations = 5000;
    bool recordHistory = false;
};

struct ChernoffResult {
    DivergenceValue value = DivergenceValue::finite(0.0);
    double alphaStar = 0.0;
    std::optional<std::pair<DensityMatrix, DensityMatrix>> achievers;
    /// Quasi-divergence at alphaStar.
    double quasi = 1.0;
    int iterations = 0;
    /// Frank-Wolfe gap at alphaStar (0 where the value is exact).
    double fwGap = 0.0;
    /// Largest Frank-Wolfe gap over all evaluated alphas.
    double maxFwGap = 0.0;
    /// Some Frank-Wolfe run stopped at the iteration cap.
    bool capped = false;
    /// alphaStar was certified at an endpoint by a one-sided derivative.
    bool endpointCertified = false;
    /// Every SDP solved along the way.
    std::vector<SolveReport> solves;
};

/// Golden-section minimization of a convex function on [lo, hi]; f takes
/// alpha and returns the objective. Endpoints are not evaluated here.
template <class F> double goldenSectionMinimize(F &&f, double lo, double hi, double tol) {
    const double invPhi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - invPhi * (b - a);
    double d = a + invPhi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invPhi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invPhi * (b - a);
            fd = f(d);
        }
    }
    return fc <= fd ? c : d;
}

inline ChernoffResult chernoffPair(const DensityMatrix &rho, const DensityMatrix &sigma,
                                   const AlphaSearchOptions &opt = {}) {
    if (rho.dim() != sigma.dim())
        throw InvalidInput("chernoffPair: dimension mismatch");
    const EigenSystem er = eigh(rho.hermitian());
    const EigenSystem es = eigh(sigma.hermitian());
    double bestQ = std::numeric_limits<double>::infinity();
    double bestAlpha = 0.0;
    int evals = 0;
    auto q = [&](double alpha) {
        ++evals;
        const double v = std::max(0.0, traceInner(matrixPower(er, alpha), matrixPower(es, 1.0 - alpha)));
        if (v < bestQ) {
            bestQ = v;
            bestAlpha = alpha;
        }
        return v;
    };
    q(0.0);
    q(1.0);
    if (bestQ > kZeroQuasi)
        goldenSectionMinimize([&](double a) { return std::log2(std::max(q(a), kZeroQuasi)); }, 0.0, 1.0,
                              opt.alphaTol);
    ChernoffResult r;
    r.alphaStar = bestAlpha;
    r.quasi = bestQ;
    r.iterations = evals;
    r.value = bestQ <= kZeroQuasi ? DivergenceValue::infinity() : DivergenceValue::finite(-std::log2(bestQ));
    r.achievers.emplace(rho, sigma);
    return r;
}

// ---------------------------------------------------------------------------
// Set quasi-divergence

struct QAlphaSetsResult {
    double value = 0.0;
    DensityMatrix rho;
    DensityMatrix sigma;
    double fwGap = 0.0;
    int iterations = 0;
    bool capped = false;
    std::vector<double> history; // objective per iterate when recorded
    std::vector<SolveReport> solves;
};

namespace detail {

/// Q_alpha at an endpoint for sets: with P_max a maximal-support member,
/// Q_0 = max_sigma tr[Pi_{P_max} sigma] and Q_1 = max_rho tr[rho Pi_{P_max}].
inline QAlphaSetsResult quasiEndpoint(const StateSet &set1, const StateSet &set2, double alpha,
                                      const sdp::SolverOptions &sdpOpt) {
    if (alpha == 0.0) {
        DensityMatrix rho = set1.maxSupportMember();
        const OracleResult o = linearOracle(set2, supportProjector(rho.hermitian()), sdpOpt);
        QAlphaSetsResult r{std::clamp(o.value, 0.0, 1.0), rho, o.state, 0.0, 0, false, {}, {}};
        if (o.sdp)
            r.solves.push_back(*o.sdp);
        return r;
    }
    DensityMatrix sigma = set2.maxSupportMember();
    const OracleResult o = linearOracle(set1, supportProjector(sigma.hermitian()), sdpOpt);
    QAlphaSetsResult r{std::clamp(o.value, 0.0, 1.0), o.state, sigma, 0.0, 0, false, {}, {}};
    if (o.sdp)
        r.solves.push_back(*o.sdp);
    return r;
}

/// A point of a set kept as a convex combination of atoms (oracle outputs,
/// hull vertices, or a starting member), so that weight can also be moved
/// away from an atom.
struct AtomicPoint {
    std::vector<CMatrix> atoms;
    std::vector<double> weights;
    CMatrix point;

    static AtomicPoint single(const CMatrix &m) { return {{m}, {1.0}, m}; }

    void recompute() {
        double total = 0.0;
        for (double w : weights)
            total += w;
        point = CMatrix::Zero(atoms.front().rows(), atoms.front().cols());
        for (std::size_t k = 0; k < atoms.size(); ++k) {
            weights[k] /= total;
            point += weights[k] * atoms[k];
        }
    }

    std::size_t findOrAdd(const CMatrix &m) {
        for (std::size_t k = 0; k < atoms.size(); ++k)
            if ((atoms[k] - m).norm() <= 1e-13)
                return k;
        atoms.push_back(m);
        weights.push_back(0.0);
        return atoms.size() - 1;
    }

    void dropEmpty() {
        std::size_t j = 0;
        for (std::size_t k = 0; k < atoms.size(); ++k)
            if (weights[k] > 0.0) {
                atoms[j] = std::move(atoms[k]);
                weights[j] = weights[k];
                ++j;
            }
        atoms.resize(j);
        weights.resize(j);
    }
};

/// Maximal-support starting point: all vertices (or basis states) with equal weight.
inline AtomicPoint initialAtoms(const StateSet &set) {
    AtomicPoint p;
    if (const auto *verts = set.hullVertices()) {
        for (const auto &v : *verts)
            p.atoms.push_back(v.matrix());
    } else if (std::holds_alternative<Incoherent>(set.variant())) {
        for (Eigen::Index k = 0; k < set.dim(); ++k) {
            CMatrix e = CMatrix::Zero(set.dim(), set.dim());
            e(k, k) = 1.0;
            p.atoms.push_back(e);
        }
    } else {
        p.atoms.push_back(set.maxSupportMember().matrix());
    }
    p.weights.assign(p.atoms.size(), 1.0);
    p.recompute();
    return p;
}

struct FwState {
    AtomicPoint rho;
    AtomicPoint sigma;
};

/// Gradient of rho -> tr[rho^alpha B] with the spectrum floored at the clip
/// level. At a rank-deficient point the true one-sided derivative into the
/// kernel is +inf wherever B has weight there; the floor keeps that ascent
/// visible to the gap certificate. If B vanishes on the kernel (as at a
/// maximizer) the result equals the exact gradient.
inline HermitianMatrix fwGradient(const EigenSystem &es, double alpha, const HermitianMatrix &b) {
    const RVector lam = clippedSpectrum(es.eigenvalues, "frankWolfe").cwiseMax(tol::kClip);
    const CMatrix &u = es.eigenvectors;
    CMatrix rotated = u.adjoint() * b.matrix() * u;
    for (Eigen::Index i = 0; i < lam.size(); ++i)
        for (Eigen::Index j = 0; j < lam.size(); ++j)
            rotated(i, j) *= powerDividedDifference(lam[i], lam[j], alpha);
    return HermitianMatrix::fromHermitian(u * rotated * u.adjoint());
}

/// Root of the decreasing derivative of a concave line objective on
/// [0, hi], given its value at 0 (> 0).
template <class D> double concaveLineSearch(D &&deriv, double d0, double hi) {
    double dHi = deriv(hi);
    if (dHi >= 0.0)
        return hi;
    double lo = 0.0, dLo = d0;
    int side = 0;
    for (int it = 0; it < 100 && hi - lo > 1e-13 * std::max(hi, 1e-300); ++it) {
        // Illinois variant of regula falsi
        const double g = (lo * dHi - hi * dLo) / (dHi - dLo);
        const double dg = deriv(g);
        if (dg > 0.0) {
            lo = g;
            dLo = dg;
            if (side == 1)
                dHi *= 0.5;
            side = 1;
        } else if (dg < 0.0) {
            hi = g;
            dHi = dg;
            if (side == -1)
                dLo *= 0.5;
            side = -1;
        } else {
            return g;
        }
    }
    return lo;
}

} // namespace detail

/// Frank-Wolfe ascent for Q_alpha(set1||set2) at interior alpha, on the
/// state `st` (updated in place).
///
/// Block-coordinate pairwise steps: the factor with the larger Frank-Wolfe
/// gap moves weight from its worst active atom to the oracle atom.
inline QAlphaSetsResult frankWolfeQuasi(const StateSet &set1, const StateSet &set2, double alpha,
                                        detail::FwState &st, const FrankWolfeOptions &fw,
                                        const sdp::SolverOptions &sdpOpt) {
    const bool fixed[2] = {set1.isSingleton(), set2.isSingleton()};
    const StateSet *sets[2] = {&set1, &set2};
    detail::AtomicPoint *pts[2] = {&st.rho, &st.sigma};
    const double expo[2] = {alpha, 1.0 - alpha};

    QAlphaSetsResult out{0.0, DensityMatrix::normalized(st.rho.point), DensityMatrix::normalized(st.sigma.point),
                         0.0, 0, false, {}, {}};
    for (int it = 0;; ++it) {
        if (it % 64 == 63) {
            st.rho.recompute();
            st.sigma.recompute();
        }
        const EigenSystem es[2] = {eigh(HermitianMatrix::fromHermitian(st.rho.point)),
                                   eigh(HermitianMatrix::fromHermitian(st.sigma.point))};
        const HermitianMatrix pw[2] = {matrixPower(es[0], expo[0]), matrixPower(es[1], expo[1])};
        const double value = traceInner(pw[0], pw[1]);
        if (fw.recordHistory)
            out.history.push_back(value);

        double gaps[2] = {0.0, 0.0};
        std::optional<HermitianMatrix> grads[2];
        std::optional<OracleResult> orc[2];
        for (int k = 0; k < 2; ++k) {
            if (fixed[k])
                continue;
            grads[k] = detail::fwGradient(es[k], expo[k], pw[1 - k]);
            orc[k] = linearOracle(*sets[k], *grads[k], sdpOpt);
            if (orc[k]->sdp)
                out.solves.push_back(*orc[k]->sdp);
            gaps[k] = std::max(0.0, orc[k]->value - traceInner(grads[k]->matrix(), pts[k]->point));
        }
        const double gap = gaps[0] + gaps[1];
        out.value = value;
        out.fwGap = gap;
        out.iterations = it;
        if (gap <= fw.gapTol)
            break;
        if (it >= fw.maxIterations) {
            out.capped = true;
            break;
        }

        const int k = gaps[0] >= gaps[1] ? 0 : 1;
        detail::AtomicPoint &p = *pts[k];
        const HermitianMatrix &g = *grads[k];
        const std::size_t s = p.findOrAdd(orc[k]->state.matrix());
        std::size_t a = s;
        double worst = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < p.atoms.size(); ++j) {
            if (p.weights[j] <= 0.0)
                continue;
            const double v = traceInner(g.matrix(), p.atoms[j]);
            if (v < worst) {
                worst = v;
                a = j;
            }
        }
        const bool pairwise = a != s;
        const CMatrix dir = pairwise ? CMatrix(p.atoms[s] - p.atoms[a]) : CMatrix(p.atoms[s] - p.point);
        const double hi = pairwise ? p.weights[a] : 1.0;
        const HermitianMatrix &other = pw[1 - k];
        auto deriv = [&](double t) {
            const EigenSystem e = eigh(HermitianMatrix::fromHermitian(p.point + t * dir));
            return traceInner(detail::fwGradient(e, expo[k], other).matrix(), dir);
        };
        const double d0 = traceInner(g.matrix(), dir);
        if (!(d0 > 0.0)) {
            out.capped = true;
            break;
        }
        const double step = detail::concaveLineSearch(deriv, d0, hi);
        if (!(step > 0.0)) {
            out.capped = true;
            break;
        }
        if (pairwise) {
            p.weights[s] += step;
            p.weights[a] = step >= hi ? 0.0 : p.weights[a] - step;
        } else {
            for (double &w : p.weights)
                w *= 1.0 - step;
            p.weights[s] += step;
        }
        p.point += step * dir;
        p.dropEmpty();
    }
    out.rho = DensityMatrix::normalized(st.rho.point);
    out.sigma = DensityMatrix::normalized(st.sigma.point);
    out.value = std::max(0.0, out.value);
    return out;
}

/// Q_alpha(set1||set2) with maximizing states. Interior alpha runs
/// Frank-Wolfe from maximal-support members.
inline QAlphaSetsResult qAlphaSets(const StateSet &set1, const StateSet &set2, double alpha,
                                   const FrankWolfeOptions &fw = {}, const sdp::SolverOptions &sdpOpt = {}) {
    checkAlpha(alpha);
    if (set1.dim() != set2.dim())
        throw InvalidInput("qAlphaSets: dimension mismatch");
    if (alpha == 0.0 || alpha == 1.0)
        return detail::quasiEndpoint(set1, set2, alpha, sdpOpt);
    detail::FwState st{detail::initialAtoms(set1), detail::initialAtoms(set2)};
    return frankWolfeQuasi(set1, set2, alpha, st, fw, sdpOpt);
}

/// C(set1||set2) = max_alpha -log2 Q_alpha(set1||set2).
///
/// Both endpoints are evaluated exactly. If the maximizers at an endpoint
/// have a one-sided derivative pointing into [0, 1] uphill for log Q, that
/// endpoint is optimal (log2 Q_alpha(sets) dominates the tangent line of a
/// convex function through it) and the interior search is skipped.
inline ChernoffResult chernoffSets(const StateSet &set1, const StateSet &set2, const AlphaSearchOptions &opt = {},
                                   const FrankWolfeOptions &fw = {}, const sdp::SolverOptions &sdpOpt = {}) {
    if (set1.dim() != set2.dim())
        throw InvalidInput("chernoffSets: dimension mismatch");
    if (set1.isSingleton() && set2.isSingleton())
        return chernoffPair(set1.hullVertices()->front(), set2.hullVertices()->front(), opt);

    ChernoffResult r;
    std::optional<QAlphaSetsResult> best;
    double bestAlpha = 0.0;
    int evals = 0;
    auto consider = [&](double alpha, QAlphaSetsResult q) {
        ++evals;
        r.iterations += q.iterations;
        r.maxFwGap = std::max(r.maxFwGap, q.fwGap);
        r.capped = r.capped || q.capped;
        r.solves.insert(r.solves.end(), q.solves.begin(), q.solves.end());
        if (!best || q.value < best->value) {
            bestAlpha = alpha;
            best = std::move(q);
        }
    };
    QAlphaSetsResult q0 = detail::quasiEndpoint(set1, set2, 0.0, sdpOpt);
    QAlphaSetsResult q1 = detail::quasiEndpoint(set1, set2, 1.0, sdpOpt);
    const double slope0 = q0.value > kZeroQuasi ? qAlphaSlope(q0.rho, q0.sigma, 0.0) : 0.0;
    const double slope1 = q1.value > kZeroQuasi ? qAlphaSlope(q1.rho, q1.sigma, 1.0) : 0.0;
    const bool zero = q0.value <= kZeroQuasi || q1.value <= kZeroQuasi;
    consider(0.0, q0);
    consider(1.0, q1);

    if (!zero) {
        const bool at0 = slope0 >= -kSlopeTolerance && best->value == q0.value;
        const bool at1 = slope1 <= kSlopeTolerance && best->value == q1.value;
        if (at0 || at1) {
            r.endpointCertified = true;
        } else {
            detail::FwState warm{detail::initialAtoms(set1), detail::initialAtoms(set2)};
            auto objective = [&](double alpha) {
                QAlphaSetsResult q = frankWolfeQuasi(set1, set2, alpha, warm, fw, sdpOpt);
                const double v = q.value;
                consider(alpha, std::move(q));
                return std::log2(std::max(v, kZeroQuasi));
            };
            goldenSectionMinimize(objective, 0.0, 1.0, opt.alphaTol);
        }
    }
    r.alphaStar = bestAlpha;
    r.quasi = best->value;
    r.fwGap = best->fwGap;
    r.value = best->value <= kZeroQuasi ? DivergenceValue::infinity() : DivergenceValue::finite(-std::log2(best->value));
    r.achievers.emplace(best->rho, best->sigma);
    return r;
}

struct MultiChernoffResult {
    DivergenceValue value = DivergenceValue::finite(0.0);
    std::size_t first = 0;
    std::size_t second = 1;
};

/// min over pairs i != j of C(C_i||C_j). C is symmetric (Q_alpha(a||b) =
/// Q_{1-alpha}(b||a)), so only i < j is evaluated; that pair is also the
/// lexicographically lowest ordered achiever.
inline MultiChernoffResult chernoffMulti(const std::vector<StateSet> &sets, const AlphaSearchOptions &opt = {},
                                         const FrankWolfeOptions &fw = {}, const sdp::SolverOptions &sdpOpt = {}) {
    if (sets.size() < 2)
        throw InvalidInput("chernoffMulti: at least two sets are required");
    std::optional<MultiChernoffResult> best;
    for (std::size_t i = 0; i < sets.size(); ++i)
        for (std::size_t j = i + 1; j < sets.size(); ++j) {
            const ChernoffResult c = chernoffSets(sets[i], sets[j], opt, fw, sdpOpt);
            if (!best || c.value < best->value)
                best = MultiChernoffResult{c.value, i, j};
        }
    return *best;
}

// ---------------------------------------------------------------------------
// Finite-n regularization scans

struct ScanEntry {
    int n;
    DivergenceValue perCopy;
    double alphaStar;
    double fwGap;
};

struct ScanResult {
    std::vector<ScanEntry> entries;
    bool stable = false;
    /// Non-increase of the per-copy value (within 1e-6); meaningful when stable.
    bool monotone = true;

    void writeCsv(std::ostream &os) const {
        os << "n,perCopyValue,alphaStar,fwGap\n";
        std::ostringstream line;
        line.precision(17);
        for (const auto &e : entries) {
            line.str("");
            line << e.n << ',';
            if (e.perCopy.isInfinite())
                line << "inf";
            else
                line << e.perCopy.bits();
            line << ',' << e.alphaStar << ',' << e.fwGap << '\n';
            os << line.str();
        }
    }
};

inline constexpr double kMonotoneTolerance = 1e-6;

inline ScanResult regularizedScan(const SetSequence &seq1, const SetSequence &seq2, CopyCount nMax,
                                  long cap = CopyCount::kDefaultDimCap, const AlphaSearchOptions &opt = {},
                                  const FrankWolfeOptions &fw = {}, const sdp::SolverOptions &sdpOpt = {}) {
    if (seq1.baseDim != seq2.baseDim)
        throw InvalidInput("regularizedScan: sequences have different base dimensions");
    nMax.checkedDimension(seq1.baseDim, cap);
    ScanResult out;
    out.stable = seq1.stable && seq2.stable;
    for (int n = 1; n <= nMax.value(); ++n) {
        const ChernoffResult c = chernoffSets(seq1.at(n, cap), seq2.at(n, cap), opt, fw, sdpOpt);
        const DivergenceValue per =
            c.value.isInfinite() ? c.value : DivergenceValue::finite(c.value.bits() / static_cast<double>(n));
        if (!out.entries.empty() && out.stable) {
            const auto &prev = out.entries.back().perCopy;
            if (!prev.isInfinite() && (per.isInfinite() || per.bits() > prev.bits() + kMonotoneTolerance))
                out.monotone = false;
        }
        out.entries.push_back({n, per, c.alphaStar, c.fwGap});
    }
    return out;
}

} // namespace chernofflab
