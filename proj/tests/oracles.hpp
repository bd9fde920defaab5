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

// Reference computations used by the tests. They avoid the library's
// spectral routines (general complex eigensolver instead of the Hermitian
// one, explicit index loops, brute-force grids) so that agreement is
// evidence rather than repetition.

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include <Eigen/Eigenvalues>

#include "chernofflab/chernofflab.hpp"

namespace oracle {

using chernofflab::CMatrix;
using chernofflab::Complex;
using chernofflab::CVector;
using chernofflab::DensityMatrix;

inline std::vector<double> realEigenvalues(const CMatrix &h) {
    Eigen::ComplexEigenSolver<CMatrix> es(h);
    std::vector<double> out;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
        out.push_back(es.eigenvalues()[i].real());
    return out;
}

inline double traceNorm(const CMatrix &h) {
    double s = 0.0;
    for (double x : realEigenvalues(h))
        s += std::abs(x);
    return s;
}

/// P^a through a general eigendecomposition; P is assumed PSD and
/// diagonalizable (true for Hermitian input). Zero eigenvalues map to 0.
inline CMatrix power(const CMatrix &p, double a) {
    Eigen::ComplexEigenSolver<CMatrix> es(p);
    const CMatrix v = es.eigenvectors();
    CVector d(p.rows());
    for (Eigen::Index i = 0; i < d.size(); ++i) {
        const double x = es.eigenvalues()[i].real();
        d[i] = x > 1e-12 ? std::pow(x, a) : 0.0;
    }
    return v * d.asDiagonal() * v.inverse();
}

inline double quasi(const CMatrix &rho, const CMatrix &sigma, double a) {
    return (power(rho, a) * power(sigma, 1.0 - a)).trace().real();
}

/// sum_i p_i^a q_i^{1-a} for commuting (diagonal) states.
inline double classicalQuasi(const std::vector<double> &p, const std::vector<double> &q, double a) {
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i] > 0 && q[i] > 0)
            s += std::pow(p[i], a) * std::pow(q[i], 1.0 - a);
    return s;
}

/// max_alpha -log2 Q on a uniform alpha grid.
inline double gridChernoff(const std::function<double(double)> &q, double step) {
    double best = 0.0;
    const int n = static_cast<int>(std::round(1.0 / step));
    for (int k = 0; k <= n; ++k)
        best = std::max(best, -std::log2(q(k * step)));
    return best;
}

/// Minimum error for two states from the trace norm.
inline double helstromError(const CMatrix &rho1, const CMatrix &rho2, double p1, double p2) {
    return 0.5 * (p1 + p2 - traceNorm(p1 * rho1 - p2 * rho2));
}

inline CMatrix partialTransposeLoops(const CMatrix &m, int dA, int dB) {
    CMatrix out(m.rows(), m.cols());
    for (int i = 0; i < dA; ++i)
        for (int j = 0; j < dB; ++j)
            for (int k = 0; k < dA; ++k)
                for (int l = 0; l < dB; ++l)
                    out(i * dB + j, k * dB + l) = m(i * dB + l, k * dB + j);
    return out;
}

/// max over q in [0,1] of the two-state minimum error between rho and diag(q, 1-q).
inline double incoherentQubitGrid(const CMatrix &rho, double p1, double p2, int points = 20001) {
    double best = 0.0;
    for (int k = 0; k < points; ++k) {
        const double q = double(k) / (points - 1);
        CMatrix s = CMatrix::Zero(2, 2);
        s(0, 0) = q;
        s(1, 1) = 1.0 - q;
        best = std::max(best, helstromError(rho, s, p1, p2));
    }
    return best;
}

/// Maximize a concave f over t in [0,1]^2 by a zooming grid.
inline double zoomGridMax(const std::function<double(double, double)> &f, int points = 11, int levels = 8,
                          double shrink = 0.25) {
    double c1 = 0.5, c2 = 0.5, h = 0.5, best = -1e300;
    for (int level = 0; level < levels; ++level) {
        double b1 = c1, b2 = c2;
        for (int a = 0; a < points; ++a)
            for (int b = 0; b < points; ++b) {
                const double t1 = std::clamp(c1 - h + 2 * h * a / (points - 1), 0.0, 1.0);
                const double t2 = std::clamp(c2 - h + 2 * h * b / (points - 1), 0.0, 1.0);
                const double v = f(t1, t2);
                if (v > best) {
                    best = v;
                    b1 = t1;
                    b2 = t2;
                }
            }
        c1 = b1;
        c2 = b2;
        h *= shrink * 2;
    }
    return best;
}

inline CMatrix ginibreDensity(int d, std::mt19937_64 &rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    CMatrix g(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            g(i, j) = Complex(n(rng), n(rng));
    CMatrix r = g * g.adjoint();
    return r / r.trace().real();
}

inline CVector randomVector(int d, std::mt19937_64 &rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    CVector v(d);
    for (int i = 0; i < d; ++i)
        v[i] = Complex(n(rng), n(rng));
    return v / v.norm();
}

} // namespace oracle
