// Copyright 2026 The sqreadout Authors
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

#ifndef SQREADOUT_ERRORS_HPP
#define SQREADOUT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sqreadout {

/// Thrown when an input violates a documented precondition. The CLI maps it
/// to exit code 1.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string &what) : std::invalid_argument(what) {}
};

/// Thrown when a computation cannot produce a finite answer (non-PD
/// covariance, multimodal peak search, ...). The CLI maps it to exit code 2.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string &what) : std::runtime_error(what) {}
};

namespace detail {

inline void require(bool ok, const std::string &message) {
  if (!ok) {
    throw ValidationError(message);
  }
}

}  // namespace detail

}  // namespace sqreadout

#endif  // SQREADOUT_ERRORS_HPP
