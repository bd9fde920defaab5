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

// Dense complex Hermitian linear algebra: spectral decomposition, spectral
// functions, first-order perturbation (divided differences), norms and the
// tensor/partial-transpose bookkeeping used by the rest of the library.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <string>

#include <Eigen/Dense>

#include "chernofflab/errors.hpp"

namespace chernofflab {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

namespace tol {
/// Eigenvalues at or below this are treated as exact zeros (support convention).
inline constexpr double kClip = 1e-10;
/// Eigenvalues below minus this reject a matrix claimed to be PSD.
inline constexpr double kRejectNegative = 1e-8;
/// Eigenvalues in [-kProjector, 0) still count as nonnegative in posProjector.
inline constexpr double kProjector = 1e-12;
/// Eigenvalue pairs closer than this use the analytic derivative.
inline constexpr double kDividedDifference = 1e-9;
/// Largest antihermitian part accepted (relative) before symmetrization.
inline constexpr double kHermitianInput = 1e-8;
} // namespace tol

/// Square complex matrix equal to its conjugate transpose. Construction
/// symmetrizes, so downstream code may rely on exact Hermiticity.
class HermitianMatrix {
public:
    explicit HermitianMatrix(const CMatrix &m) {
        if (m.rows() != m.cols() || m.rows() < 1)
            throw InvalidInput("HermitianMatrix: expected a nonempty square matrix, got " +
                               std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
        if (!m.allFinite())
            throw InvalidInput("HermitianMatrix: non-finite entries");
        const double scale = std::max(1.0, m.norm());
        if ((m - m.adjoint()).norm() > tol::kHermitianInput * scale)
            throw InvalidInput("HermitianMatrix: input is not Hermitian");
        m_ = 0.5 * (m + m.adjoint());
    }

    static HermitianMatrix identity(Eigen::Index d) { return HermitianMatrix(CMatrix::Identity(d, d)); }
    static HermitianMatrix zero(Eigen::Index d) { return HermitianMatrix(CMatrix::Zero(d, d)); }
    static HermitianMatrix diagonal(const RVector &diag) {
        return HermitianMatrix(CMatrix(diag.cast<Complex>().asDiagonal()));
    }
    /// |v><v| (no normalization applied).
    static HermitianMatrix outer(const CVector &v) { return HermitianMatrix(v * v.adjoint()); }

    Eigen::Index dim() const { return m_.rows(); }
    const CMatrix &matrix() const { return m_; }
    Complex operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }
    double trace() const { return m_.trace().real(); }

    HermitianMatrix operator+(const HermitianMatrix &o) const { return fromHermitian(m_ + o.matrix()); }
    HermitianMatrix operator-(const HermitianMatrix &o) const { return fromHermitian(m_ - o.matrix()); }
    HermitianMatrix operator-() const { return fromHermitian(-m_); }
    HermitianMatrix operator*(double c) const { return fromHermitian(c * m_); }
    friend HermitianMatrix operator*(double c, const HermitianMatrix &h) { return h * c; }

    /// Wraps a matrix already known to be Hermitian up to rounding.
    static HermitianMatrix fromHermitian(const CMatrix &m) {
        HermitianMatrix h;
        h.m_ = 0.5 * (m + m.adjoint());
        return h;
    }

private:
    HermitianMatrix() = default;
    CMatrix m_;
};

/// Re tr[A B] for Hermitian A, B.
inline double traceInner(const CMatrix &a, const CMatrix &b) {
    return (a.cwiseProduct(b.transpose())).sum().real();
}
inline double traceInner(const HermitianMatrix &a, const HermitianMatrix &b) {
    return traceInner(a.matrix(), b.matrix());
}

struct EigenSystem {
    RVector eigenvalues;  // ascending
    CMatrix eigenvectors; // columns, orthonormal

    CMatrix reconstruct() const {
        return eigenvectors * eigenvalues.cast<Complex>().asDiagonal() * eigenvectors.adjoint();
    }
};

inline EigenSystem eigh(const HermitianMatrix &h) {
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(h.matrix());
    if (solver.info() != Eigen::Success)
        throw SolverFailure("eigh: eigendecomposition did not converge");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

/// Rebuilds U f(Λ) U† from a decomposition.
inline HermitianMatrix spectralFunction(const EigenSystem &es, const std::function<double(double)> &f) {
    RVector mapped = es.eigenvalues.unaryExpr(f);
    return HermitianMatrix::fromHermitian(es.eigenvectors * mapped.cast<Complex>().asDiagonal() *
                                          es.eigenvectors.adjoint());
}

/// Spectrum of a PSD matrix with rounding noise removed: values below
/// -kRejectNegative raise, values at or below kClip become exact zeros.
inline RVector clippedSpectrum(const RVector &eigenvalues, const char *who) {
    RVector out = eigenvalues;
    for (Eigen::Index i = 0; i < out.size(); ++i) {
        if (out[i] < -tol::kRejectNegative)
            throw InvalidInput(std::string(who) + ": matrix is not positive semidefinite (eigenvalue " +
                               std::to_string(out[i]) + ")");
        if (out[i] <= tol::kClip)
            out[i] = 0.0;
    }
    return out;
}

/// x^alpha with 0^alpha := 0 for every alpha, including alpha = 0.
inline double powerWithSupportConvention(double x, double alpha) {
    if (x <= 0.0)
        return 0.0;
    return alpha == 0.0 ? 1.0 : std::pow(x, alpha);
}

inline HermitianMatrix matrixPower(const EigenSystem &es, double alpha) {
    RVector lam = clippedSpectrum(es.eigenvalues, "matrixPower");
    RVector mapped = lam.unaryExpr([alpha](double x) { return powerWithSupportConvention(x, alpha); });
    return HermitianMatrix::fromHermitian(es.eigenvectors * mapped.cast<Complex>().asDiagonal() *
                                          es.eigenvectors.adjoint());
}

/// P^alpha for PSD P and alpha in [0, 1]; P^0 is the support projector.
inline HermitianMatrix matrixPower(const HermitianMatrix &p, double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw InvalidInput("matrixPower: alpha must lie in [0, 1]");
    return matrixPower(eigh(p), alpha);
}

inline HermitianMatrix supportProjector(const HermitianMatrix &p) { return matrixPower(p, 0.0); }

inline double traceNorm(const HermitianMatrix &h) { return eigh(h).eigenvalues.cwiseAbs().sum(); }

/// Projector {H >= 0} onto eigenvectors with eigenvalue >= -kProjector.
inline HermitianMatrix posProjector(const HermitianMatrix &h) {
    const EigenSystem es = eigh(h);
    return spectralFunction(es, [](double x) { return x >= -tol::kProjector ? 1.0 : 0.0; });
}

inline double minEigenvalue(const HermitianMatrix &h) { return eigh(h).eigenvalues[0]; }
inline double maxEigenvalue(const HermitianMatrix &h) {
    const RVector ev = eigh(h).eigenvalues;
    return ev[ev.size() - 1];
}

/// Transpose of the second tensor factor of an operator on C^dimA ⊗ C^dimB.
inline CMatrix partialTranspose(const CMatrix &m, Eigen::Index dimA, Eigen::Index dimB) {
    if (dimA < 1 || dimB < 1 || m.rows() != dimA * dimB || m.cols() != dimA * dimB)
        throw InvalidInput("partialTranspose: dimension " + std::to_string(m.rows()) + " is not " +
                           std::to_string(dimA) + "*" + std::to_string(dimB));
    CMatrix out(m.rows(), m.cols());
    for (Eigen::Index a = 0; a < dimA; ++a)
        for (Eigen::Index b = 0; b < dimB; ++b)
            for (Eigen::Index a2 = 0; a2 < dimA; ++a2)
                for (Eigen::Index b2 = 0; b2 < dimB; ++b2)
                    out(a * dimB + b, a2 * dimB + b2) = m(a * dimB + b2, a2 * dimB + b);
    return out;
}

inline HermitianMatrix partialTranspose(const HermitianMatrix &h, Eigen::Index dimA, Eigen::Index dimB) {
    return HermitianMatrix::fromHermitian(partialTranspose(h.matrix(), dimA, dimB));
}

inline CMatrix kron(const CMatrix &a, const CMatrix &b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

inline HermitianMatrix kron(const HermitianMatrix &a, const HermitianMatrix &b) {
    return HermitianMatrix::fromHermitian(kron(a.matrix(), b.matrix()));
}

inline CVector kron(const CVector &a, const CVector &b) {
    CVector out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i)
        out.segment(i * b.size(), b.size()) = a[i] * b;
    return out;
}

/// First divided difference of x -> x^alpha on a clipped spectrum.
///
/// Pairs touching an exact zero use the secant through the origin, which is
/// exact and free of cancellation; the zero-zero pair is set to 0, so the
/// kernel block never contributes (moves restricted to the support).
inline double powerDividedDifference(double x, double y, double alpha) {
    if (x == 0.0 && y == 0.0)
        return 0.0;
    if (x == 0.0 || y == 0.0) {
        const double nz = std::max(x, y);
        return std::pow(nz, alpha - 1.0);
    }
    if (std::abs(x - y) < tol::kDividedDifference) {
        const double mid = 0.5 * (x + y);
        return alpha * std::pow(mid, alpha - 1.0);
    }
    return (std::pow(x, alpha) - std::pow(y, alpha)) / (x - y);
}

/// Gradient of rho -> tr[rho^alpha B]: tr[G H] = d/dt tr[(rho + tH)^alpha B].
inline HermitianMatrix gradTracePower(const EigenSystem &es, double alpha, const HermitianMatrix &b) {
    const RVector lam = clippedSpectrum(es.eigenvalues, "gradTracePower");
    const Eigen::Index d = lam.size();
    const CMatrix &u = es.eigenvectors;
    CMatrix rotated = u.adjoint() * b.matrix() * u;
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j)
            rotated(i, j) *= powerDividedDifference(lam[i], lam[j], alpha);
    return HermitianMatrix::fromHermitian(u * rotated * u.adjoint());
}

inline HermitianMatrix gradTracePower(const HermitianMatrix &rho, double alpha, const HermitianMatrix &b) {
    if (rho.dim() != b.dim())
        throw InvalidInput("gradTracePower: dimension mismatch");
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw InvalidInput("gradTracePower: alpha must lie in (0, 1]");
    return gradTracePower(eigh(rho), alpha, b);
}

} // namespace chernofflab
