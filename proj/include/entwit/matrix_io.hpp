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

#ifndef ENTWIT_MATRIX_IO_HPP
#define ENTWIT_MATRIX_IO_HPP

#include <filesystem>

#include <json.hpp>

#include "entwit/operator_core.hpp"

// JSON matrix format: {"n": qubits, "re": [[...]], "im": [[...]]}, row-major.
// "im" may be omitted for real matrices. Values are validated against the
// invariants of the target type on load.
namespace entwit::io {

nlohmann::json matrix_to_json(const QubitRegister &reg, const Matrix &m);

/// Parses the raw matrix and its register without any invariant check.
std::pair<QubitRegister, Matrix> matrix_from_json(const nlohmann::json &j);

template <class T>
nlohmann::json to_json(const T &op) {
  return matrix_to_json(op.reg(), op.matrix());
}

HermitianOperator hermitian_from_json(const nlohmann::json &j);
DensityMatrix density_from_json(const nlohmann::json &j);
UnitaryOperator unitary_from_json(const nlohmann::json &j);

nlohmann::json read_json_file(const std::filesystem::path &path);

}  // namespace entwit::io

#endif  // ENTWIT_MATRIX_IO_HPP
