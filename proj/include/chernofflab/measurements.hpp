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

#include <vector>

#include "chernofflab/hermlab.hpp"

namespace chernofflab {

/// Two-outcome test {M, I - M} with 0 <= M <= I (accepting hypothesis 1 on M).
class TestOperator {
public:
    static constexpr double kTolerance = 1e-9;

    explicit TestOperator(HermitianMatrix m) : m_(std::move(m)) {
        const EigenSystem es = eigh(m_);
        if (es.eigenvalues[0] < -kTolerance || es.eigenvalues[es.eigenvalues.size() - 1] > 1.0 + kTolerance)
            throw InvalidInput("TestOperator: eigenvalues must lie in [0, 1]");
    }

    Eigen::Index dim() const { return m_.dim(); }
    const HermitianMatrix &matrix() const { return m_; }
    HermitianMatrix complement() const { return HermitianMatrix::identity(m_.dim()) - m_; }

private:
    HermitianMatrix m_;
};

/// PSD elements summing to the identity.
class Povm {
public:
    static constexpr double kElementTolerance = 1e-9;
    static constexpr double kCompletenessTolerance = 1e-7;

    explicit Povm(std::vector<HermitianMatrix> elements, double elementTolerance = kElementTolerance)
        : e_(std::move(elements)) {
        if (e_.empty())
            throw InvalidInput("Povm: no elements");
        const Eigen::Index d = e_.front().dim();
        CMatrix sum = CMatrix::Zero(d, d);
        for (const auto &m : e_) {
            if (m.dim() != d)
                throw InvalidInput("Povm: elements have different dimensions");
            if (minEigenvalue(m) < -elementTolerance)
                throw InvalidInput("Povm: element is not positive semidefinite");
            sum += m.matrix();
        }
        if ((sum - CMatrix::Identity(d, d)).norm() > kCompletenessTolerance)
            throw InvalidInput("Povm: elements do not sum to the identity");
    }

    static Povm fromTest(const TestOperator &t) { return Povm({t.matrix(), t.complement()}); }

    std::size_t size() const { return e_.size(); }
    Eigen::Index dim() const { return e_.front().dim(); }
    const HermitianMatrix &operator[](std::size_t i) const { return e_[i]; }
    const std::vector<HermitianMatrix> &elements() const { return e_; }

private:
    std::vector<HermitianMatrix> e_;
};

} // namespace chernofflab
