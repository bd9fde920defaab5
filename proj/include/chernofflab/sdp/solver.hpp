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

// Infeasible-start primal-dual path-following method for SdpProblem.
//
// Search direction: HKM (X dZ Z^{-1} linearization, symmetrized), Schur
// complement M_ij = Re tr[A_i X A_j Z^{-1}] factored densely. Mehrotra
// predictor-corrector with separate primal and dual step lengths.
//
// Dual problem:  maximize b^T y  s.t.  C - sum_i y_i A_i = Z >= 0.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "chernofflab/sdp/problem.hpp"

namespace chernofflab::sdp {

enum class SdpStatus { Optimal, MaxIterations, InfeasibleSuspected };

inline const char *toString(SdpStatus s) {
    switch (s) {
    case SdpStatus::Optimal:
        return "optimal";
    case SdpStatus::MaxIterations:
        return "maxIterations";
    case SdpStatus::InfeasibleSuspected:
        return "infeasibleSuspected";
    }
    return "unknown";
}

struct SolverOptions {
    double gapTol = 1e-8;
    /// Residual target while iterating (relative to 1 + data norm).
    double targetFeasibilityTol = 1e-9;
    /// Residuals accepted when progress stalls or the iteration limit is hit.
    double feasibilityTol = 1e-7;
    int maxIterations = 200;
    double stepFraction = 0.98;
    /// Norm of an iterate beyond which the problem is declared infeasible.
    double divergenceBound = 1e12;
    Eigen::Index maxBlockDim = 64;
    std::size_t maxBlocks = 8;
};

struct IterateRecord {
    double primalObjective;
    double dualObjective;
    double primalResidual;
    double dualResidual;
    double complementarity;
};

struct SdpSolution {
    std::vector<BlockValue> primalBlocks;
    std::vector<BlockValue> dualSlackBlocks;
    RVector dualMultipliers;
    double primalObjective = 0.0;
    double dualObjective = 0.0;
    /// |primal - dual| objective difference at the returned iterate.
    double gap = 0.0;
    /// ||b - A(X)||_2
    double primalResidual = 0.0;
    /// ||C - A^*(y) - Z||_F
    double dualResidual = 0.0;
    /// <X, Z>
    double complementarity = 0.0;
    int iterations = 0;
    SdpStatus status = SdpStatus::MaxIterations;
    std::vector<IterateRecord> history;

    bool optimal() const { return status == SdpStatus::Optimal; }
};

namespace detail {

inline double blockInner(const BlockSpec &spec, const BlockValue &a, const BlockValue &b) {
    if (spec.kind == BlockKind::Hermitian)
        return traceInner(a.hermitian, b.hermitian);
    return a.nonnegative.dot(b.nonnegative);
}

/// Re tr[A W] for Hermitian A and general W.
inline double realTraceProduct(const CMatrix &a, const CMatrix &w) { return a.cwiseProduct(w.transpose()).sum().real(); }

inline double blockNorm(const BlockSpec &spec, const BlockValue &v) {
    return spec.kind == BlockKind::Hermitian ? v.hermitian.norm() : v.nonnegative.norm();
}

/// Largest t with X + t dX in the cone (infinity if unbounded), X interior.
inline double maxStep(const BlockSpec &spec, const BlockValue &x, const BlockValue &dx) {
    if (spec.kind == BlockKind::Nonnegative) {
        double t = std::numeric_limits<double>::infinity();
        for (Eigen::Index k = 0; k < spec.dim; ++k)
            if (dx.nonnegative[k] < 0.0)
                t = std::min(t, -x.nonnegative[k] / dx.nonnegative[k]);
        return t;
    }
    Eigen::LLT<CMatrix> llt(x.hermitian);
    if (llt.info() != Eigen::Success)
        return 0.0;
    CMatrix l = llt.matrixL();
    CMatrix tmp = l.triangularView<Eigen::Lower>().solve(dx.hermitian);
    CMatrix s = l.triangularView<Eigen::Lower>().solve(tmp.adjoint()).adjoint();
    s = 0.5 * (s + s.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(s, Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues()[0];
    return lo >= 0.0 ? std::numeric_limits<double>::infinity() : -1.0 / lo;
}

class InteriorPoint {
public:
    InteriorPoint(const SdpProblem &p, const SolverOptions &opt) : p_(p), opt_(opt) {
        nb_ = p_.blocks.size();
        m_ = p_.equalities.size();
        byBlock_.resize(nb_);
        for (std::size_t i = 0; i < m_; ++i)
            for (std::size_t t = 0; t < p_.equalities[i].terms.size(); ++t)
                byBlock_[p_.equalities[i].terms[t].block].push_back({i, t});
        c_.resize(nb_);
        for (std::size_t b = 0; b < nb_; ++b)
            c_[b] = BlockValue::zero(p_.blocks[b]);
        for (const auto &term : p_.objective) {
            if (p_.blocks[term.block].kind == BlockKind::Hermitian)
                c_[term.block].hermitian += term.value.hermitian;
            else
                c_[term.block].nonnegative += term.value.nonnegative;
        }
        b_.resize(static_cast<Eigen::Index>(m_));
        for (std::size_t i = 0; i < m_; ++i)
            b_[static_cast<Eigen::Index>(i)] = p_.equalities[i].rhs;
        totalDim_ = 0;
        for (const auto &spec : p_.blocks)
            totalDim_ += static_cast<double>(spec.dim);
    }

    SdpSolution run() {
        initialize();
        SdpSolution sol;
        int stalled = 0;
        for (int it = 0;; ++it) {
            const Metrics met = metrics();
            sol.history.push_back({met.pobj, met.dobj, met.pres, met.dres, met.comp});
            if (met.pres <= opt_.targetFeasibilityTol * (1.0 + b_.norm()) &&
                met.dres <= opt_.targetFeasibilityTol * (1.0 + cNorm()) && met.gap <= opt_.gapTol &&
                met.comp <= opt_.gapTol) {
                sol.status = SdpStatus::Optimal;
                return finish(std::move(sol), met, it);
            }
            if (it >= opt_.maxIterations) {
                sol.status = acceptable(met) ? SdpStatus::Optimal : SdpStatus::MaxIterations;
                return finish(std::move(sol), met, it);
            }
            if (iterateNorm() > opt_.divergenceBound) {
                sol.status = SdpStatus::InfeasibleSuspected;
                return finish(std::move(sol), met, it);
            }
            const double progress = step();
            if (!(progress > 1e-10)) {
                if (++stalled >= 5) {
                    const Metrics last = metrics();
                    if (acceptable(last))
                        sol.status = SdpStatus::Optimal;
                    else
                        sol.status = diverging(last) ? SdpStatus::InfeasibleSuspected : SdpStatus::MaxIterations;
                    return finish(std::move(sol), last, it + 1);
                }
            } else {
                stalled = 0;
            }
        }
    }

private:
    struct Metrics {
        double pobj, dobj, pres, dres, comp, gap;
    };

    bool acceptable(const Metrics &met) const {
        return met.pres <= opt_.feasibilityTol && met.dres <= opt_.feasibilityTol && met.gap <= opt_.gapTol &&
               met.comp <= opt_.gapTol;
    }

    double cNorm() const {
        double s = 0.0;
        for (std::size_t b = 0; b < nb_; ++b)
            s += std::pow(blockNorm(p_.blocks[b], c_[b]), 2);
        return std::sqrt(s);
    }

    double constraintNorm(std::size_t i) const {
        double s = 0.0;
        for (const auto &t : p_.equalities[i].terms)
            s += std::pow(blockNorm(p_.blocks[t.block], t.value), 2);
        return std::sqrt(s);
    }

    void initialize() {
        const double sqrtN = std::sqrt(totalDim_);
        double xi = std::max(10.0, sqrtN);
        double eta = std::max({10.0, sqrtN, cNorm()});
        for (std::size_t i = 0; i < m_; ++i) {
            const double an = constraintNorm(i);
            xi = std::max(xi, totalDim_ * (1.0 + std::abs(b_[static_cast<Eigen::Index>(i)])) / (1.0 + an));
            eta = std::max(eta, an);
        }
        x_.resize(nb_);
        z_.resize(nb_);
        for (std::size_t b = 0; b < nb_; ++b) {
            x_[b] = BlockValue::identity(p_.blocks[b], xi);
            z_[b] = BlockValue::identity(p_.blocks[b], eta);
        }
        y_ = RVector::Zero(static_cast<Eigen::Index>(m_));
    }

    RVector applyA(const std::vector<BlockValue> &x) const {
        RVector out = RVector::Zero(static_cast<Eigen::Index>(m_));
        for (std::size_t i = 0; i < m_; ++i)
            for (const auto &t : p_.equalities[i].terms)
                out[static_cast<Eigen::Index>(i)] += blockInner(p_.blocks[t.block], t.value, x[t.block]);
        return out;
    }

    std::vector<BlockValue> applyAdjoint(const RVector &y) const {
        std::vector<BlockValue> out(nb_);
        for (std::size_t b = 0; b < nb_; ++b)
            out[b] = BlockValue::zero(p_.blocks[b]);
        for (std::size_t i = 0; i < m_; ++i) {
            const double yi = y[static_cast<Eigen::Index>(i)];
            if (yi == 0.0)
                continue;
            for (const auto &t : p_.equalities[i].terms) {
                if (p_.blocks[t.block].kind == BlockKind::Hermitian)
                    out[t.block].hermitian += yi * t.value.hermitian;
                else
                    out[t.block].nonnegative += yi * t.value.nonnegative;
            }
        }
        return out;
    }

    std::vector<BlockValue> dualResidualBlocks() const {
        std::vector<BlockValue> r = applyAdjoint(y_);
        for (std::size_t b = 0; b < nb_; ++b) {
            if (p_.blocks[b].kind == BlockKind::Hermitian)
                r[b].hermitian = c_[b].hermitian - r[b].hermitian - z_[b].hermitian;
            else
                r[b].nonnegative = c_[b].nonnegative - r[b].nonnegative - z_[b].nonnegative;
        }
        return r;
    }

    Metrics metrics() const {
        Metrics met{};
        met.pobj = p_.objectiveConstant;
        met.comp = 0.0;
        for (std::size_t b = 0; b < nb_; ++b) {
            met.pobj += blockInner(p_.blocks[b], c_[b], x_[b]);
            met.comp += blockInner(p_.blocks[b], x_[b], z_[b]);
        }
        met.dobj = p_.objectiveConstant + b_.dot(y_);
        met.pres = (b_ - applyA(x_)).norm();
        const auto rd = dualResidualBlocks();
        double s = 0.0;
        for (std::size_t b = 0; b < nb_; ++b)
            s += std::pow(blockNorm(p_.blocks[b], rd[b]), 2);
        met.dres = std::sqrt(s);
        met.gap = std::abs(met.pobj - met.dobj);
        return met;
    }

    double iterateNorm() const {
        double s = y_.squaredNorm();
        for (std::size_t b = 0; b < nb_; ++b)
            s += std::pow(blockNorm(p_.blocks[b], x_[b]), 2) + std::pow(blockNorm(p_.blocks[b], z_[b]), 2);
        return std::sqrt(s);
    }

    bool diverging(const Metrics &met) const {
        return iterateNorm() > 1e-3 * opt_.divergenceBound || met.pres > 1e3 || met.dres > 1e3;
    }

    SdpSolution finish(SdpSolution sol, const Metrics &met, int iterations) const {
        sol.primalBlocks = x_;
        sol.dualSlackBlocks = z_;
        sol.dualMultipliers = y_;
        sol.primalObjective = met.pobj;
        sol.dualObjective = met.dobj;
        sol.gap = met.gap;
        sol.primalResidual = met.pres;
        sol.dualResidual = met.dres;
        sol.complementarity = met.comp;
        sol.iterations = iterations;
        return sol;
    }

    // Z^{-1} for every block (elementwise inverse on nonnegative blocks).
    std::vector<BlockValue> inverseZ() const {
        std::vector<BlockValue> out(nb_);
        for (std::size_t b = 0; b < nb_; ++b) {
            if (p_.blocks[b].kind == BlockKind::Hermitian) {
                Eigen::LLT<CMatrix> llt(z_[b].hermitian);
                CMatrix inv = llt.solve(CMatrix::Identity(p_.blocks[b].dim, p_.blocks[b].dim));
                out[b].hermitian = 0.5 * (inv + inv.adjoint());
            } else {
                out[b].nonnegative = z_[b].nonnegative.cwiseInverse();
            }
        }
        return out;
    }

    // Schur complement M_ij = <A_i, X A_j Z^{-1}>.
    Eigen::MatrixXd schur(const std::vector<BlockValue> &zinv) const {
        Eigen::MatrixXd mat = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m_), static_cast<Eigen::Index>(m_));
        for (std::size_t b = 0; b < nb_; ++b) {
            const auto &rows = byBlock_[b];
            if (rows.empty())
                continue;
            const bool herm = p_.blocks[b].kind == BlockKind::Hermitian;
            for (const auto &[j, tj] : rows) {
                const BlockValue &aj = p_.equalities[j].terms[tj].value;
                if (herm) {
                    const CMatrix w = x_[b].hermitian * aj.hermitian * zinv[b].hermitian;
                    for (const auto &[i, ti] : rows) {
                        if (i > j)
                            continue;
                        const double v = realTraceProduct(p_.equalities[i].terms[ti].value.hermitian, w);
                        mat(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) += v;
                    }
                } else {
                    const RVector w = x_[b].nonnegative.cwiseProduct(aj.nonnegative).cwiseProduct(zinv[b].nonnegative);
                    for (const auto &[i, ti] : rows) {
                        if (i > j)
                            continue;
                        mat(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) +=
                            p_.equalities[i].terms[ti].value.nonnegative.dot(w);
                    }
                }
            }
        }
        for (Eigen::Index j = 0; j < mat.cols(); ++j)
            for (Eigen::Index i = j + 1; i < mat.rows(); ++i)
                mat(i, j) = mat(j, i);
        return mat;
    }

    // LDLT of the Jacobi-equilibrated Schur complement. Near the optimum it
    // can lose definiteness to rounding; a small diagonal shift is then added.
    struct SchurFactor {
        RVector scale;
        Eigen::LDLT<Eigen::MatrixXd> ldlt;

        bool compute(const Eigen::MatrixXd &mat) {
            scale = mat.diagonal().cwiseAbs().cwiseMax(1e-300).cwiseSqrt().cwiseInverse();
            Eigen::MatrixXd scaled = scale.asDiagonal() * mat * scale.asDiagonal();
            for (double shift : {0.0, 1e-14, 1e-12, 1e-10}) {
                ldlt.compute(scaled + shift * Eigen::MatrixXd::Identity(scaled.rows(), scaled.cols()));
                if (ldlt.info() == Eigen::Success && ldlt.isPositive())
                    return true;
            }
            return false;
        }

        RVector solve(const RVector &r) const { return scale.cwiseProduct(ldlt.solve(scale.cwiseProduct(r))); }
    };

    struct Direction {
        std::vector<BlockValue> dx, dz;
        RVector dy;
    };

    // Solves the Newton system for target sigma*mu and an optional
    // second-order correction term (dXa * dZa).
    template <class Factor>
    Direction direction(const Factor &factor, const std::vector<BlockValue> &zinv,
                        const std::vector<BlockValue> &rd, const RVector &rp, double target,
                        const std::vector<BlockValue> *corr) const {
        // K = target Z^{-1} - X - X Rd Z^{-1} - Corr Z^{-1}
        std::vector<BlockValue> k(nb_);
        for (std::size_t b = 0; b < nb_; ++b) {
            if (p_.blocks[b].kind == BlockKind::Hermitian) {
                CMatrix kk = target * zinv[b].hermitian - x_[b].hermitian -
                             x_[b].hermitian * rd[b].hermitian * zinv[b].hermitian;
                if (corr)
                    kk -= (*corr)[b].hermitian * zinv[b].hermitian;
                k[b].hermitian = 0.5 * (kk + kk.adjoint());
            } else {
                RVector kk = target * zinv[b].nonnegative - x_[b].nonnegative -
                             x_[b].nonnegative.cwiseProduct(rd[b].nonnegative).cwiseProduct(zinv[b].nonnegative);
                if (corr)
                    kk -= (*corr)[b].nonnegative.cwiseProduct(zinv[b].nonnegative);
                k[b].nonnegative = kk;
            }
        }
        Direction d;
        d.dy = factor.solve(rp - applyA(k));
        const auto aty = applyAdjoint(d.dy);
        d.dz.resize(nb_);
        d.dx.resize(nb_);
        for (std::size_t b = 0; b < nb_; ++b) {
            if (p_.blocks[b].kind == BlockKind::Hermitian) {
                d.dz[b].hermitian = rd[b].hermitian - aty[b].hermitian;
                CMatrix dx = k[b].hermitian + x_[b].hermitian * aty[b].hermitian * zinv[b].hermitian;
                d.dx[b].hermitian = 0.5 * (dx + dx.adjoint());
            } else {
                d.dz[b].nonnegative = rd[b].nonnegative - aty[b].nonnegative;
                d.dx[b].nonnegative =
                    k[b].nonnegative + x_[b].nonnegative.cwiseProduct(aty[b].nonnegative).cwiseProduct(zinv[b].nonnegative);
            }
        }
        return d;
    }

    std::pair<double, double> stepLengths(const Direction &d) const {
        double ap = std::numeric_limits<double>::infinity();
        double ad = std::numeric_limits<double>::infinity();
        for (std::size_t b = 0; b < nb_; ++b) {
            ap = std::min(ap, maxStep(p_.blocks[b], x_[b], d.dx[b]));
            ad = std::min(ad, maxStep(p_.blocks[b], z_[b], d.dz[b]));
        }
        return {std::min(1.0, opt_.stepFraction * ap), std::min(1.0, opt_.stepFraction * ad)};
    }

    double step() {
        const auto zinv = inverseZ();
        const auto rd = dualResidualBlocks();
        const RVector rp = b_ - applyA(x_);
        double mu = 0.0;
        for (std::size_t b = 0; b < nb_; ++b)
            mu += blockInner(p_.blocks[b], x_[b], z_[b]);
        mu /= totalDim_;

        SchurFactor factor;
        if (!factor.compute(schur(zinv)))
            return 0.0;

        // predictor
        Direction aff = direction(factor, zinv, rd, rp, 0.0, nullptr);
        auto [app, adp] = stepLengths(aff);
        double muAff = 0.0;
        for (std::size_t b = 0; b < nb_; ++b) {
            const BlockSpec &spec = p_.blocks[b];
            BlockValue xa, za;
            if (spec.kind == BlockKind::Hermitian) {
                xa.hermitian = x_[b].hermitian + app * aff.dx[b].hermitian;
                za.hermitian = z_[b].hermitian + adp * aff.dz[b].hermitian;
            } else {
                xa.nonnegative = x_[b].nonnegative + app * aff.dx[b].nonnegative;
                za.nonnegative = z_[b].nonnegative + adp * aff.dz[b].nonnegative;
            }
            muAff += blockInner(spec, xa, za);
        }
        muAff /= totalDim_;
        const double sigma = std::clamp(std::pow(std::max(muAff, 0.0) / mu, 3.0), 0.0, 1.0);

        // corrector
        std::vector<BlockValue> corr(nb_);
        for (std::size_t b = 0; b < nb_; ++b) {
            if (p_.blocks[b].kind == BlockKind::Hermitian)
                corr[b].hermitian = aff.dx[b].hermitian * aff.dz[b].hermitian;
            else
                corr[b].nonnegative = aff.dx[b].nonnegative.cwiseProduct(aff.dz[b].nonnegative);
        }
        Direction d = direction(factor, zinv, rd, rp, sigma * mu, &corr);
        auto [ap, ad] = stepLengths(d);
        if (!std::isfinite(ap) || !std::isfinite(ad))
            return 0.0;

        for (std::size_t b = 0; b < nb_; ++b) {
            if (p_.blocks[b].kind == BlockKind::Hermitian) {
                x_[b].hermitian += ap * d.dx[b].hermitian;
                z_[b].hermitian += ad * d.dz[b].hermitian;
                x_[b].hermitian = 0.5 * (x_[b].hermitian + x_[b].hermitian.adjoint()).eval();
                z_[b].hermitian = 0.5 * (z_[b].hermitian + z_[b].hermitian.adjoint()).eval();
            } else {
                x_[b].nonnegative += ap * d.dx[b].nonnegative;
                z_[b].nonnegative += ad * d.dz[b].nonnegative;
            }
        }
        y_ += ad * d.dy;
        return std::min(ap, ad);
    }

    const SdpProblem &p_;
    SolverOptions opt_;
    std::size_t nb_ = 0, m_ = 0;
    double totalDim_ = 0.0;
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> byBlock_;
    std::vector<BlockValue> c_;
    RVector b_;
    std::vector<BlockValue> x_, z_;
    RVector y_;
};

} // namespace detail

inline SdpSolution solve(const SdpProblem &problem, const SolverOptions &options) {
    problem.validate();
    if (problem.blocks.size() > options.maxBlocks)
        throw InvalidInput("sdp::solve: " + std::to_string(problem.blocks.size()) + " blocks exceed the limit of " +
                           std::to_string(options.maxBlocks));
    for (const auto &spec : problem.blocks)
        if (spec.kind == BlockKind::Hermitian && spec.dim > options.maxBlockDim)
            throw InvalidInput("sdp::solve: block dimension " + std::to_string(spec.dim) + " exceeds " +
                               std::to_string(options.maxBlockDim));
    if (!(options.gapTol > 0.0))
        throw InvalidInput("sdp::solve: gapTol must be positive");
    return detail::InteriorPoint(problem, options).run();
}

inline SdpSolution solve(const SdpProblem &problem, double gapTol = 1e-8) {
    SolverOptions options;
    options.gapTol = gapTol;
    return solve(problem, options);
}

} // namespace chernofflab::sdp
