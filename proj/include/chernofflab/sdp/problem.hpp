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

// Standard-form conic program over a product of cones:
//
//     minimize    sum_b <C_b, X_b>
//     subject to  sum_b <A_ib, X_b> = b_i,   i = 1..m
//                 X_b >= 0 (Hermitian PSD block) or X_b in R^n_+ (nonnegative block)
//
// <A, X> is Re tr[A X] for Hermitian blocks and the dot product otherwise.

#include <string>
#include <vector>

#include "chernofflab/hermlab.hpp"

namespace chernofflab::sdp {

enum class BlockKind { Hermitian, Nonnegative };

struct BlockSpec {
    BlockKind kind = BlockKind::Hermitian;
    Eigen::Index dim = 1;
};

/// Value (or coefficient) on one block; only the member matching the block
/// kind is populated.
struct BlockValue {
    CMatrix hermitian;
    RVector nonnegative;

    static BlockValue zero(const BlockSpec &spec) {
        BlockValue v;
        if (spec.kind == BlockKind::Hermitian)
            v.hermitian = CMatrix::Zero(spec.dim, spec.dim);
        else
            v.nonnegative = RVector::Zero(spec.dim);
        return v;
    }
    static BlockValue identity(const BlockSpec &spec, double scale = 1.0) {
        BlockValue v;
        if (spec.kind == BlockKind::Hermitian)
            v.hermitian = scale * CMatrix::Identity(spec.dim, spec.dim);
        else
            v.nonnegative = RVector::Constant(spec.dim, scale);
        return v;
    }
};

struct BlockCoefficient {
    int block = 0;
    BlockValue value;
};

struct Equality {
    std::vector<BlockCoefficient> terms;
    double rhs = 0.0;
};

struct SdpProblem {
    std::vector<BlockSpec> blocks;
    std::vector<BlockCoefficient> objective;
    std::vector<Equality> equalities;
    double objectiveConstant = 0.0;

    int addHermitianBlock(Eigen::Index dim) {
        blocks.push_back({BlockKind::Hermitian, dim});
        return static_cast<int>(blocks.size()) - 1;
    }
    int addNonnegativeBlock(Eigen::Index dim) {
        blocks.push_back({BlockKind::Nonnegative, dim});
        return static_cast<int>(blocks.size()) - 1;
    }

    /// Throws InvalidInput when the data does not match the block layout.
    void validate() const {
        if (blocks.empty())
            throw InvalidInput("SdpProblem: at least one block is required");
        auto checkCoefficient = [&](const BlockCoefficient &c, const std::string &where) {
            if (c.block < 0 || c.block >= static_cast<int>(blocks.size()))
                throw InvalidInput(where + ": block index out of range");
            const BlockSpec &spec = blocks[c.block];
            if (spec.kind == BlockKind::Hermitian) {
                const CMatrix &h = c.value.hermitian;
                if (h.rows() != spec.dim || h.cols() != spec.dim)
                    throw InvalidInput(where + ": Hermitian coefficient has wrong size");
                if (!h.allFinite() || (h - h.adjoint()).norm() > 1e-10 * std::max(1.0, h.norm()))
                    throw InvalidInput(where + ": coefficient must be finite and Hermitian");
            } else {
                if (c.value.nonnegative.size() != spec.dim || !c.value.nonnegative.allFinite())
                    throw InvalidInput(where + ": nonnegative-block coefficient has wrong size");
            }
        };
        for (const BlockSpec &spec : blocks)
            if (spec.dim < 1)
                throw InvalidInput("SdpProblem: block dimensions must be positive");
        for (const auto &c : objective)
            checkCoefficient(c, "objective");
        for (std::size_t i = 0; i < equalities.size(); ++i) {
            for (const auto &c : equalities[i].terms)
                checkCoefficient(c, "equality " + std::to_string(i));
            if (!std::isfinite(equalities[i].rhs))
                throw InvalidInput("equality " + std::to_string(i) + ": non-finite right-hand side");
        }
    }
};

// ---------------------------------------------------------------------------
// Helpers for writing operator equalities  sum_k L_k(X_{b_k}) = R  (R Hermitian)
// as d^2 real equalities, one per element of an orthonormal Hermitian basis.

/// Orthonormal basis of d x d Hermitian matrices under Re tr[A B].
inline std::vector<CMatrix> hermitianBasis(Eigen::Index d) {
    std::vector<CMatrix> basis;
    basis.reserve(static_cast<std::size_t>(d * d));
    const double s = 1.0 / std::sqrt(2.0);
    for (Eigen::Index i = 0; i < d; ++i) {
        CMatrix e = CMatrix::Zero(d, d);
        e(i, i) = 1.0;
        basis.push_back(e);
    }
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = i + 1; j < d; ++j) {
            CMatrix re = CMatrix::Zero(d, d);
            re(i, j) = s;
            re(j, i) = s;
            basis.push_back(re);
            CMatrix im = CMatrix::Zero(d, d);
            im(i, j) = Complex(0.0, -s);
            im(j, i) = Complex(0.0, s);
            basis.push_back(im);
        }
    return basis;
}

/// A linear map from one block into d x d Hermitian operators, described by
/// its adjoint (which is what a constraint row needs).
struct OperatorTerm {
    enum class Kind { Scaled, PartialTranspose, Weighted, Diagonal };
    Kind kind = Kind::Scaled;
    int block = 0;
    double scale = 1.0;
    Eigen::Index dimA = 0, dimB = 0;   // PartialTranspose
    std::vector<CMatrix> components;   // Weighted: X_b = w -> scale * sum_k w_k V_k

    static OperatorTerm scaled(int block, double c) { return {Kind::Scaled, block, c, 0, 0, {}}; }
    static OperatorTerm partialTranspose(int block, double c, Eigen::Index a, Eigen::Index b) {
        return {Kind::PartialTranspose, block, c, a, b, {}};
    }
    static OperatorTerm weighted(int block, double c, std::vector<CMatrix> vertices) {
        return {Kind::Weighted, block, c, 0, 0, std::move(vertices)};
    }
    static OperatorTerm diagonal(int block, double c) { return {Kind::Diagonal, block, c, 0, 0, {}}; }

    /// Coefficient on the block for the constraint row "Re tr[B * L(X)]".
    BlockValue adjoint(const CMatrix &basisElement) const {
        BlockValue v;
        switch (kind) {
        case Kind::Scaled:
            v.hermitian = scale * basisElement;
            break;
        case Kind::PartialTranspose:
            v.hermitian = scale * chernofflab::partialTranspose(basisElement, dimA, dimB);
            break;
        case Kind::Weighted:
            v.nonnegative.resize(static_cast<Eigen::Index>(components.size()));
            for (std::size_t k = 0; k < components.size(); ++k)
                v.nonnegative[static_cast<Eigen::Index>(k)] = scale * traceInner(basisElement, components[k]);
            break;
        case Kind::Diagonal:
            v.nonnegative = scale * basisElement.diagonal().real();
            break;
        }
        return v;
    }

    /// Applies the map to a block value.
    CMatrix apply(const BlockValue &x) const {
        switch (kind) {
        case Kind::Scaled:
            return scale * x.hermitian;
        case Kind::PartialTranspose:
            return scale * chernofflab::partialTranspose(x.hermitian, dimA, dimB);
        case Kind::Weighted: {
            CMatrix out = CMatrix::Zero(components.front().rows(), components.front().cols());
            for (std::size_t k = 0; k < components.size(); ++k)
                out += x.nonnegative[static_cast<Eigen::Index>(k)] * components[k];
            return scale * out;
        }
        case Kind::Diagonal:
            return scale * CMatrix(x.nonnegative.cast<Complex>().asDiagonal());
        }
        return {};
    }
};

/// Adds the d^2 real rows of  sum_k L_k(X) = rhs. Terms hitting the same
/// block are merged. Returns the index of the first row added.
inline std::size_t addOperatorEquality(SdpProblem &problem, const std::vector<OperatorTerm> &terms,
                                       const CMatrix &rhs) {
    const std::size_t first = problem.equalities.size();
    for (const CMatrix &basisElement : hermitianBasis(rhs.rows())) {
        Equality row;
        row.rhs = traceInner(basisElement, rhs);
        for (const OperatorTerm &t : terms) {
            BlockValue coef = t.adjoint(basisElement);
            auto it = std::find_if(row.terms.begin(), row.terms.end(),
                                   [&](const BlockCoefficient &c) { return c.block == t.block; });
            if (it == row.terms.end()) {
                row.terms.push_back({t.block, std::move(coef)});
            } else if (coef.hermitian.size() > 0) {
                it->value.hermitian += coef.hermitian;
            } else {
                it->value.nonnegative += coef.nonnegative;
            }
        }
        problem.equalities.push_back(std::move(row));
    }
    return first;
}

/// Adds the scalar row  sum over terms of tr[L_k(X)] = rhs.
inline void addTraceEquality(SdpProblem &problem, const std::vector<OperatorTerm> &terms, Eigen::Index dim,
                             double rhs) {
    Equality row;
    row.rhs = rhs;
    const CMatrix id = CMatrix::Identity(dim, dim);
    for (const OperatorTerm &t : terms)
        row.terms.push_back({t.block, t.adjoint(id)});
    problem.equalities.push_back(std::move(row));
}

} // namespace chernofflab::sdp
