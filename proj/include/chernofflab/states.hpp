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

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "chernofflab/hermlab.hpp"

namespace chernofflab {

/// PSD, unit-trace operator.
class DensityMatrix {
public:
    static constexpr double kTolerance = 1e-10;

    explicit DensityMatrix(HermitianMatrix m) : m_(std::move(m)) {
        const double t = m_.trace();
        if (std::abs(t - 1.0) > kTolerance)
            throw InvalidInput("DensityMatrix: trace " + std::to_string(t) + " differs from 1");
        const double lo = minEigenvalue(m_);
        if (lo < -kTolerance)
            throw InvalidInput("DensityMatrix: negative eigenvalue " + std::to_string(lo));
    }
    explicit DensityMatrix(const CMatrix &m) : DensityMatrix(HermitianMatrix(m)) {}

    /// Accepts a PSD operator with positive trace and rescales it to trace 1,
    /// clipping rounding-level negative eigenvalues. Used on solver output.
    static DensityMatrix normalized(const CMatrix &m) {
        HermitianMatrix h = HermitianMatrix::fromHermitian(m);
        EigenSystem es = eigh(h);
        if (es.eigenvalues[0] < -1e-7)
            throw InvalidInput("DensityMatrix::normalized: operator is not PSD");
        if (es.eigenvalues[0] < 0.0) {
            RVector lam = es.eigenvalues.cwiseMax(0.0);
            h = HermitianMatrix::fromHermitian(es.eigenvectors * lam.cast<Complex>().asDiagonal() *
                                               es.eigenvectors.adjoint());
        }
        const double t = h.trace();
        if (!(t > 0.0))
            throw InvalidInput("DensityMatrix::normalized: zero trace");
        return DensityMatrix(HermitianMatrix::fromHermitian(h.matrix() / t));
    }

    static DensityMatrix maximallyMixed(Eigen::Index d) {
        return DensityMatrix(HermitianMatrix::identity(d) * (1.0 / static_cast<double>(d)));
    }

    Eigen::Index dim() const { return m_.dim(); }
    const HermitianMatrix &hermitian() const { return m_; }
    const CMatrix &matrix() const { return m_.matrix(); }

private:
    HermitianMatrix m_;
};

/// Unit vector of amplitudes a_i.
class PureState {
public:
    static constexpr double kTolerance = 1e-12;

    explicit PureState(CVector amplitudes) : a_(std::move(amplitudes)) {
        if (a_.size() < 1)
            throw InvalidInput("PureState: empty amplitude vector");
        if (!a_.allFinite())
            throw InvalidInput("PureState: non-finite amplitudes");
        if (std::abs(a_.norm() - 1.0) > kTolerance)
            throw InvalidInput("PureState: amplitudes are not normalized (norm " + std::to_string(a_.norm()) +
                               ")");
    }

    /// Normalizes a nonzero vector.
    static PureState normalize(const CVector &v) {
        const double n = v.norm();
        if (!(n > 0.0))
            throw InvalidInput("PureState::normalize: zero vector");
        return PureState(v / n);
    }

    Eigen::Index dim() const { return a_.size(); }
    const CVector &amplitudes() const { return a_; }
    Complex operator[](Eigen::Index i) const { return a_[i]; }

private:
    CVector a_;
};

/// Strictly positive probabilities summing to one.
class PriorVector {
public:
    static constexpr double kTolerance = 1e-12;

    explicit PriorVector(std::vector<double> p, double sumTolerance = kTolerance) : p_(std::move(p)) {
        if (p_.empty())
            throw InvalidInput("PriorVector: empty");
        double s = 0.0;
        for (double x : p_) {
            if (!(x > 0.0) || !std::isfinite(x))
                throw InvalidInput("PriorVector: priors must be strictly positive");
            s += x;
        }
        if (std::abs(s - 1.0) > sumTolerance)
            throw InvalidInput("PriorVector: priors sum to " + std::to_string(s));
    }

    static PriorVector uniform(std::size_t r) { return PriorVector(std::vector<double>(r, 1.0 / double(r))); }

    std::size_t size() const { return p_.size(); }
    double operator[](std::size_t i) const { return p_[i]; }
    const std::vector<double> &values() const { return p_; }

private:
    std::vector<double> p_;
};

/// Number of tensor copies n with the dimension cap dim^n <= cap.
class CopyCount {
public:
    static constexpr long kDefaultDimCap = 4096;

    explicit CopyCount(int n) : n_(n) {
        if (n < 1)
            throw InvalidInput("CopyCount: n must be >= 1");
    }
    int value() const { return n_; }

    /// dim^n, or throws if it exceeds cap.
    long checkedDimension(long baseDim, long cap = kDefaultDimCap) const {
        long d = 1;
        for (int k = 0; k < n_; ++k) {
            d *= baseDim;
            if (d > cap)
                throw InvalidInput("CopyCount: dimension " + std::to_string(baseDim) + "^" + std::to_string(n_) +
                                   " exceeds cap " + std::to_string(cap));
        }
        return d;
    }

private:
    int n_;
};

inline DensityMatrix fromPure(const PureState &psi) { return DensityMatrix(HermitianMatrix::outer(psi.amplitudes())); }

inline DensityMatrix tensorPower(const DensityMatrix &rho, CopyCount n, long cap = CopyCount::kDefaultDimCap) {
    n.checkedDimension(rho.dim(), cap);
    CMatrix out = rho.matrix();
    for (int k = 1; k < n.value(); ++k)
        out = kron(out, rho.matrix());
    return DensityMatrix::normalized(out);
}

inline PureState tensorPower(const PureState &psi, CopyCount n, long cap = CopyCount::kDefaultDimCap) {
    n.checkedDimension(psi.dim(), cap);
    CVector out = psi.amplitudes();
    for (int k = 1; k < n.value(); ++k)
        out = kron(out, psi.amplitudes());
    return PureState::normalize(out);
}

inline DensityMatrix tensorProduct(const DensityMatrix &a, const DensityMatrix &b) {
    return DensityMatrix::normalized(kron(a.matrix(), b.matrix()));
}

inline PureState tensorProduct(const PureState &a, const PureState &b) {
    return PureState::normalize(kron(a.amplitudes(), b.amplitudes()));
}

/// (|0> + e^{i pi/4}|1>)/sqrt(2).
inline PureState tState() {
    CVector a(2);
    a[0] = 1.0 / std::sqrt(2.0);
    a[1] = std::polar(1.0 / std::sqrt(2.0), std::numbers::pi / 4.0);
    return PureState::normalize(a);
}

/// (1/sqrt m) sum_i |ii>.
inline PureState maxEntangled(int m) {
    if (m < 2)
        throw InvalidInput("maxEntangled: m must be >= 2");
    CVector a = CVector::Zero(static_cast<Eigen::Index>(m) * m);
    for (int i = 0; i < m; ++i)
        a[i * m + i] = 1.0;
    return PureState::normalize(a);
}

inline PureState basisState(int d, int i) {
    if (d < 1 || i < 0 || i >= d)
        throw InvalidInput("basisState: need 0 <= i < d");
    CVector a = CVector::Zero(d);
    a[i] = 1.0;
    return PureState(a);
}

/// (|0> + |1>)/sqrt 2.
inline PureState plusState() {
    CVector a(2);
    a << 1.0, 1.0;
    return PureState::normalize(a);
}

/// Ginibre ensemble: rho = G G† / tr(G G†) with G complex standard normal.
inline DensityMatrix randomDensity(int d, std::uint64_t seed) {
    if (d < 1)
        throw InvalidInput("randomDensity: d must be >= 1");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    CMatrix g(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            g(i, j) = Complex(normal(rng), normal(rng));
    CMatrix p = g * g.adjoint();
    return DensityMatrix::normalized(p);
}

/// Haar-like random pure state (normalized complex Gaussian vector).
inline PureState randomPure(int d, std::uint64_t seed) {
    if (d < 1)
        throw InvalidInput("randomPure: d must be >= 1");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    CVector v(d);
    for (int i = 0; i < d; ++i)
        v[i] = Complex(normal(rng), normal(rng));
    return PureState::normalize(v);
}

} // namespace chernofflab
