// Copyright 2026 The pauli-mrf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PAULI_MRF_ERRORS_H
#define PAULI_MRF_ERRORS_H

#include <stdexcept>
#include <string>

namespace pauli_mrf {

/// Operands disagree on qubit count or region size.
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// An exact (enumerating) operation was asked to work above the enumeration cap.
struct UnsupportedSizeError : std::length_error {
    using std::length_error::length_error;
};

/// Malformed text, file or configuration.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Invalid user supplied configuration (maps to CLI exit code 1).
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// An estimate could not be formed from the available data.
struct EstimationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Every decay point sits below the noise floor.
struct IndeterminateDecayError : EstimationError {
    using EstimationError::EstimationError;
};

/// Only one decay point clears the noise floor, so C and alpha cannot be separated.
struct InsufficientDataError : EstimationError {
    using EstimationError::EstimationError;
};

}  // namespace pauli_mrf

#endif
