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

#include <stdexcept>
#include <string>

namespace chernofflab {

/// Raised when arguments violate a documented precondition (dimensions,
/// positivity, normalization, caps).
class InvalidInput : public std::invalid_argument {
public:
    explicit InvalidInput(const std::string &what) : std::invalid_argument(what) {}
};

/// Raised when a numerical routine fails to deliver a certified result.
class SolverFailure : public std::runtime_error {
public:
    explicit SolverFailure(const std::string &what) : std::runtime_error(what) {}
};

/// Raised for inputs that are well formed but outside what is implemented
/// (e.g. stabilizer sets beyond two qubits).
class Unsupported : public std::logic_error {
public:
    explicit Unsupported(const std::string &what) : std::logic_error(what) {}
};

} // namespace chernofflab
