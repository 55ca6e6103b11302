// Copyright 2026 The collidekit Authors
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

#include "collidekit/io.hpp"

#include <cstdio>
#include <sstream>

#include "collidekit/errors.hpp"

namespace collidekit::io {
namespace {

Eigen::MatrixXd real_matrix(const json& j, const char* what) {
  if (!j.is_array() || j.empty()) throw ShapeError(std::string(what) + ": expected a non-empty 2D array");
  const auto rows = static_cast<Eigen::Index>(j.size());
  if (!j[0].is_array() || j[0].empty()) throw ShapeError(std::string(what) + ": expected a 2D array");
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw ShapeError(std::string(what) + ": ragged rows");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      const auto& v = row[static_cast<std::size_t>(c)];
      if (!v.is_number()) throw ShapeError(std::string(what) + ": non-numeric entry");
      m(r, c) = v.get<double>();
    }
  }
  return m;
}

json real_to_json(const Eigen::MatrixXd& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(std::move(row));
  }
  return out;
}

std::string inline_real(const Eigen::MatrixXd& m) {
  std::string s = "[";
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    if (r) s += ',';
    s += '[';
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c) s += ',';
      s += format_double(m(r, c));
    }
    s += ']';
  }
  return s + "]";
}

BlochVector bloch_from_array(const json& j) {
  if (!j.is_array() || j.size() != 3) throw ShapeError("Bloch vector must be an array of 3 numbers");
  for (const auto& v : j) {
    if (!v.is_number()) throw ShapeError("Bloch vector entries must be numbers");
  }
  return BlochVector(j[0].get<double>(), j[1].get<double>(), j[2].get<double>());
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

ComplexMatrix matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("re")) throw ShapeError("complex matrix needs an \"re\" array");
  const Eigen::MatrixXd re = real_matrix(j.at("re"), "re");
  Eigen::MatrixXd im = Eigen::MatrixXd::Zero(re.rows(), re.cols());
  if (j.contains("im")) {
    im = real_matrix(j.at("im"), "im");
    if (im.rows() != re.rows() || im.cols() != re.cols()) throw ShapeError("re and im shapes differ");
  }
  ComplexMatrix m(re.rows(), re.cols());
  m.real() = re;
  m.imag() = im;
  return m;
}

json matrix_to_json(const ComplexMatrix& m) {
  return {{"re", real_to_json(m.real())}, {"im", real_to_json(m.imag())}};
}

DensityOperator density_from_json(const json& j) {
  if (j.is_array()) return density_from_bloch(bloch_from_array(j));
  if (j.is_object() && j.contains("bloch")) return density_from_bloch(bloch_from_array(j.at("bloch")));
  if (j.is_object() && j.contains("re")) {
    const ComplexMatrix m = matrix_from_json(j);
    if (j.contains("dim") && j.at("dim").get<long>() != m.rows()) {
      throw ShapeError("state \"dim\" does not match the matrix size");
    }
    return DensityOperator::from_matrix(m);
  }
  throw ShapeError("state must be a Bloch array, {\"bloch\": [...]} or {\"dim\", \"re\", \"im\"}");
}

json density_to_json(const DensityOperator& rho) {
  json j = matrix_to_json(rho.matrix());
  j["dim"] = rho.dim();
  return j;
}

std::string density_inline(const DensityOperator& rho) {
  return "{\"re\":" + inline_real(rho.matrix().real()) + ",\"im\":" + inline_real(rho.matrix().imag()) + "}";
}

PauliTransferMatrix ptm_from_json(const json& j) {
  const json& arr = (j.is_object() && j.contains("ptm")) ? j.at("ptm") : j;
  const Eigen::MatrixXd m = real_matrix(arr, "ptm");
  if (m.rows() != 4 || m.cols() != 4) throw ShapeError("ptm must be 4x4");
  return PauliTransferMatrix(Eigen::Matrix4d(m));
}

json ptm_to_json(const PauliTransferMatrix& e) { return real_to_json(e.matrix()); }

std::vector<ComplexMatrix> kraus_from_json(const json& j) {
  const json& arr = (j.is_object() && j.contains("kraus")) ? j.at("kraus") : j;
  if (!arr.is_array() || arr.empty()) throw ShapeError("kraus must be a non-empty list");
  std::vector<ComplexMatrix> out;
  for (const auto& k : arr) out.push_back(matrix_from_json(k));
  return out;
}

json generator_to_json(const Generator& g) {
  const auto d = lindblad_decompose(g);
  const auto verdict = is_lindblad(d);
  return {{"g", real_to_json(g.matrix())},
          {"h", {d.h(0), d.h(1), d.h(2)}},
          {"C_re", real_to_json(d.c.real())},
          {"C_im", real_to_json(d.c.imag())},
          {"lindblad_valid", verdict.valid},
          {"min_eig_C", verdict.min_eig_c}};
}

CsvWriter::CsvWriter(std::ostream& os, const std::vector<std::string>& header) : os_(os), width_(header.size()) {
  row(header);
}

void CsvWriter::row(const std::vector<std::string>& fields) {
  if (fields.size() != width_) throw ShapeError("CSV row width does not match the header");
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) os_ << ',';
    const std::string& f = fields[i];
    if (f.find_first_of(",\"\n") == std::string::npos) {
      os_ << f;
      continue;
    }
    os_ << '"';
    for (char ch : f) {
      if (ch == '"') os_ << '"';
      os_ << ch;
    }
    os_ << '"';
  }
  os_ << '\n';
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj, const ComplexMatrix& basis) {
  std::vector<std::string> header{"step", "D_sys", "D_res", "rho_S", "xi_prime"};
  const bool coherence = basis.size() > 0;
  if (coherence) header.emplace_back("coherence");
  CsvWriter csv(os, header);
  for (const auto& step : traj.steps) {
    std::vector<std::string> fields{std::to_string(step.n), format_double(step.d_sys), format_double(step.d_res),
                                    density_inline(step.system), density_inline(step.reservoir)};
    if (coherence) fields.push_back(format_double(std::abs(in_basis(step.system, basis)(0, 1))));
    csv.row(fields);
  }
}

}  // namespace collidekit::io
