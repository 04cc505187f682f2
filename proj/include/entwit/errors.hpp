// Copyright 2026 The entwit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ENTWIT_ERRORS_HPP
#define ENTWIT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace entwit {

// Caller supplied something outside an operation's domain (bad site index,
// negative beta, mismatched registers, malformed file, ...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A numerical invariant failed: eigensolver non-convergence, a matrix that
// is not Hermitian/unitary/unit-trace within tolerance, a rank-deficient
// operand where a logarithm is needed.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(std::string check, const std::string &what)
      : std::runtime_error(what), check_(std::move(check)) {}

  // Short name of the failing check, e.g. "unitarity".
  const std::string &check() const noexcept { return check_; }

 private:
  std::string check_;
};

}  // namespace entwit

#endif  // ENTWIT_ERRORS_HPP
