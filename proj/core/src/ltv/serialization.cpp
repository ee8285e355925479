/*
 Copyright 2026 The ltviqc Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

     http://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/

#include "ltviqc/ltv/serialization.hpp"

#include <stdexcept>
#include <string>

namespace ltviqc {

using nlohmann::json;

json matrix_to_json(const Eigen::MatrixXd& M) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < M.cols(); ++j) row.push_back(M(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd matrix_from_json(const json& j) {
  if (j.is_number()) return Eigen::MatrixXd::Constant(1, 1, j.get<double>());
  if (!j.is_array()) throw std::invalid_argument("matrix must be a nested array");
  const auto rows = static_cast<Eigen::Index>(j.size());
  if (rows == 0) return Eigen::MatrixXd(0, 0);
  const auto cols = static_cast<Eigen::Index>(j.at(0).is_array() ? j.at(0).size() : 1);
  Eigen::MatrixXd M(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const json& row = j.at(static_cast<std::size_t>(i));
    if (row.is_number()) {
      if (cols != 1) throw std::invalid_argument("ragged matrix");
      M(i, 0) = row.get<double>();
      continue;
    }
    if (static_cast<Eigen::Index>(row.size()) != cols) {
      throw std::invalid_argument("ragged matrix rows");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      M(i, c) = row.at(static_cast<std::size_t>(c)).get<double>();
    }
  }
  return M;
}

namespace {

json signal_samples(const MatrixSignal& s, const TimeGrid& grid) {
  json out = json::array();
  for (double t : grid.points()) out.push_back(matrix_to_json(s(t)));
  return out;
}

MatrixSignal signal_from(const json& samples, const TimeGrid& grid, Interp interp,
                         const char* name) {
  if (!samples.is_array() || samples.size() != grid.size()) {
    throw std::invalid_argument(std::string("system field '") + name +
                                "' must hold one matrix per grid point");
  }
  std::vector<Eigen::MatrixXd> mats;
  mats.reserve(grid.size());
  for (const auto& m : samples) mats.push_back(matrix_from_json(m));
  return MatrixSignal(grid, std::move(mats), interp);
}

}  // namespace

json to_json(const LtvSystem& sys) {
  const TimeGrid grid = sys.grid();
  json j;
  j["grid"] = grid.vector();
  j["A"] = signal_samples(sys.A(), grid);
  j["B"] = signal_samples(sys.B(), grid);
  j["C"] = signal_samples(sys.C(), grid);
  j["D"] = signal_samples(sys.D(), grid);
  j["interp"] = sys.A().interp() == Interp::ZeroOrderHold ? "zoh" : "linear";
  return j;
}

LtvSystem ltv_system_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("system must be a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (key != "grid" && key != "A" && key != "B" && key != "C" && key != "D" &&
        key != "interp") {
      throw std::invalid_argument("unknown system key '" + key + "'");
    }
  }
  TimeGrid grid(j.at("grid").get<std::vector<double>>());
  Interp interp = Interp::PiecewiseLinear;
  if (j.contains("interp")) {
    const auto s = j.at("interp").get<std::string>();
    if (s == "zoh") {
      interp = Interp::ZeroOrderHold;
    } else if (s != "linear") {
      throw std::invalid_argument("interp must be 'linear' or 'zoh'");
    }
  }
  return LtvSystem(signal_from(j.at("A"), grid, interp, "A"),
                   signal_from(j.at("B"), grid, interp, "B"),
                   signal_from(j.at("C"), grid, interp, "C"),
                   signal_from(j.at("D"), grid, interp, "D"));
}

}  // namespace ltviqc
