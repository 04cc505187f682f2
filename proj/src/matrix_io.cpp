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

#include "entwit/matrix_io.hpp"

#include <fstream>
#include <sstream>

namespace entwit::io {

using nlohmann::json;

json matrix_to_json(const QubitRegister &reg, const Matrix &m) {
  json re = json::array();
  json im = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json re_row = json::array();
    json im_row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      re_row.push_back(m(i, j).real());
      im_row.push_back(m(i, j).imag());
    }
    re.push_back(std::move(re_row));
    im.push_back(std::move(im_row));
  }
  return json{{"n", reg.size()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

namespace {

void read_part(const json &rows, Eigen::Index dim, const char *key,
               Matrix &out, bool imaginary) {
  if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != dim) {
    std::ostringstream os;
    os << "matrix json: \"" << key << "\" must be an array of " << dim << " rows";
    throw InvalidArgument(os.str());
  }
  for (Eigen::Index i = 0; i < dim; ++i) {
    const json &row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != dim) {
      std::ostringstream os;
      os << "matrix json: row " << i << " of \"" << key << "\" must have " << dim
         << " entries";
      throw InvalidArgument(os.str());
    }
    for (Eigen::Index j = 0; j < dim; ++j) {
      const json &v = row[static_cast<std::size_t>(j)];
      if (!v.is_number()) {
        std::ostringstream os;
        os << "matrix json: entry (" << i << "," << j << ") of \"" << key
           << "\" is not a number";
        throw InvalidArgument(os.str());
      }
      const double x = v.get<double>();
      if (imaginary) {
        out(i, j).imag(x);
      } else {
        out(i, j).real(x);
      }
    }
  }
}

}  // namespace

std::pair<QubitRegister, Matrix> matrix_from_json(const json &j) {
  if (!j.is_object()) throw InvalidArgument("matrix json: expected an object");
  for (const auto &[key, _] : j.items()) {
    if (key != "n" && key != "re" && key != "im") {
      throw InvalidArgument("matrix json: unknown key \"" + key + "\"");
    }
  }
  if (!j.contains("n") || !j.at("n").is_number_integer()) {
    throw InvalidArgument("matrix json: missing integer \"n\"");
  }
  if (!j.contains("re")) throw InvalidArgument("matrix json: missing \"re\"");
  const QubitRegister reg(j.at("n").get<int>());
  Matrix m = Matrix::Zero(reg.dim(), reg.dim());
  read_part(j.at("re"), reg.dim(), "re", m, false);
  if (j.contains("im")) read_part(j.at("im"), reg.dim(), "im", m, true);
  return {reg, std::move(m)};
}

HermitianOperator hermitian_from_json(const json &j) {
  auto [reg, m] = matrix_from_json(j);
  return {reg, std::move(m)};
}

DensityMatrix density_from_json(const json &j) {
  auto [reg, m] = matrix_from_json(j);
  return {reg, std::move(m)};
}

UnitaryOperator unitary_from_json(const json &j) {
  auto [reg, m] = matrix_from_json(j);
  return {reg, std::move(m)};
}

json read_json_file(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error &e) {
    throw InvalidArgument(path.string() + ": " + e.what());
  }
}

}  // namespace entwit::io
