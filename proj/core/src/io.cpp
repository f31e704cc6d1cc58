// Copyright 2026 The channelscope Authors
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

#include "channelscope/io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "channelscope/errors.hpp"

namespace channelscope::io {

namespace {

void require_keys(const json& doc, const std::set<std::string>& allowed,
                  const char* what) {
  if (!doc.is_object()) throw FormatError(std::string(what) + ": expected a JSON object");
  for (const auto& item : doc.items())
    if (!allowed.contains(item.key()))
      throw FormatError(std::string(what) + ": unknown key '" + item.key() + "'");
}

double finite_number(const json& value, const std::string& where) {
  if (!value.is_number()) throw FormatError(where + ": expected a number");
  const double x = value.get<double>();
  if (!std::isfinite(x)) throw FormatError(where + ": non-finite value");
  return x;
}

Vector3 vector3(const json& doc, const std::string& where) {
  if (!doc.is_array() || doc.size() != 3)
    throw FormatError(where + ": expected an array of 3 numbers");
  Vector3 v;
  for (int i = 0; i < 3; ++i)
    v(i) = finite_number(doc[static_cast<std::size_t>(i)],
                         where + "[" + std::to_string(i) + "]");
  return v;
}

Matrix3 matrix3(const json& doc, const std::string& where) {
  if (!doc.is_array() || doc.size() != 3)
    throw FormatError(where + ": expected a 3x3 array (row-major)");
  Matrix3 m;
  for (int i = 0; i < 3; ++i)
    m.row(i) = vector3(doc[static_cast<std::size_t>(i)],
                       where + "[" + std::to_string(i) + "]").transpose();
  return m;
}

json matrix_json(const Matrix3& m) {
  json rows = json::array();
  for (int i = 0; i < 3; ++i) rows.push_back({m(i, 0), m(i, 1), m(i, 2)});
  return rows;
}

json vector_json(const Vector3& v) { return json::array({v(0), v(1), v(2)}); }

std::int64_t count(const json& value, const std::string& where) {
  if (!value.is_number_integer() || value.get<std::int64_t>() < 0)
    throw FormatError(where + ": expected a non-negative integer");
  return value.get<std::int64_t>();
}

}  // namespace

ChannelFile parse_channel(const json& doc) {
  require_keys(doc, {"M", "v", "meta"}, "channel file");
  if (!doc.contains("M") || !doc.contains("v"))
    throw FormatError("channel file: 'M' and 'v' are required");
  ChannelFile out;
  out.channel = AffineChannel(matrix3(doc["M"], "M"), vector3(doc["v"], "v"));
  if (doc.contains("meta")) {
    if (!doc["meta"].is_object()) throw FormatError("channel file: 'meta' must be an object");
    out.meta = doc["meta"];
  }
  return out;
}

json channel_to_json(const AffineChannel& channel, const json& meta) {
  return json{{"M", matrix_json(channel.matrix())},
              {"v", vector_json(channel.translation())},
              {"meta", meta}};
}

DataMatrix parse_data_matrix(const json& doc) {
  require_keys(doc, {"D", "d", "meta"}, "data-matrix file");
  if (!doc.contains("D") || !doc.contains("d"))
    throw FormatError("data-matrix file: 'D' and 'd' are required");
  return DataMatrix{matrix3(doc["D"], "D"), vector3(doc["d"], "d")};
}

json data_matrix_to_json(const DataMatrix& dm) {
  return json{{"D", matrix_json(dm.D)}, {"d", vector_json(dm.d)}};
}

std::optional<MeasurementModel> CountsFile::model() const {
  if (eta0 && eta1) return MeasurementModel(*eta0, *eta1);
  if (eta) return MeasurementModel(*eta);
  return std::nullopt;
}

CountsFile parse_counts(const json& doc) {
  require_keys(doc, {"eta", "eta0", "eta1", "settings", "config", "meta"}, "counts file");
  CountsFile out;
  if (doc.contains("eta")) out.eta = finite_number(doc["eta"], "eta");
  if (doc.contains("eta0")) out.eta0 = finite_number(doc["eta0"], "eta0");
  if (doc.contains("eta1")) out.eta1 = finite_number(doc["eta1"], "eta1");
  if (doc.contains("config")) out.config = doc["config"];
  if (!doc.contains("settings") || !doc["settings"].is_array())
    throw FormatError("counts file: 'settings' array is required");

  std::size_t i = 0;
  for (const auto& entry : doc["settings"]) {
    const std::string where = "settings[" + std::to_string(i++) + "]";
    require_keys(entry, {"state", "axis", "orientation", "counts_plus", "counts_minus"},
                 where.c_str());
    for (const char* key : {"state", "axis", "counts_plus", "counts_minus"})
      if (!entry.contains(key))
        throw FormatError(where + ": missing '" + key + "'");
    if (!entry["state"].is_string() || !entry["axis"].is_string())
      throw FormatError(where + ": 'state' and 'axis' must be strings");
    const auto state = parse_state(entry["state"].get<std::string>());
    const auto axis = parse_axis(entry["axis"].get<std::string>());
    if (!state) throw FormatError(where + ": unknown state '" + entry["state"].get<std::string>() + "'");
    if (!axis) throw FormatError(where + ": unknown axis '" + entry["axis"].get<std::string>() + "'");
    Orientation orientation = Orientation::plus;
    if (entry.contains("orientation")) {
      const json& o = entry["orientation"];
      if (o == "+") {
        orientation = Orientation::plus;
      } else if (o == "-") {
        orientation = Orientation::minus;
      } else {
        throw FormatError(where + ": orientation must be \"+\" or \"-\"");
      }
    }
    SettingCounts s{*state, *axis, orientation, count(entry["counts_plus"], where + ".counts_plus"),
                    count(entry["counts_minus"], where + ".counts_minus")};
    if (s.shots() < 1) throw FormatError(where + ": zero shots");
    out.record.add(s);
  }
  return out;
}

json counts_to_json(const ExperimentRecord& record, const MeasurementModel& model,
                    const json& config) {
  json settings = json::array();
  for (const auto& s : record.settings()) {
    settings.push_back(json{
        {"state", std::string(state_name(s.state))},
        {"axis", std::string(1, axis_name(s.axis))},
        {"orientation", s.orientation == Orientation::plus ? "+" : "-"},
        {"counts_plus", s.counts_plus},
        {"counts_minus", s.counts_minus},
    });
  }
  json doc{{"eta", model.eta()}, {"settings", settings}};
  if (model.eta0() != model.eta1()) {
    doc["eta0"] = model.eta0();
    doc["eta1"] = model.eta1();
  }
  if (!config.empty()) doc["config"] = config;
  return doc;
}

std::vector<SweepPoint> parse_sweep_points(std::istream& in,
                                           const std::optional<std::string>& estimator) {
  const auto split = [](const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      const auto b = cell.find_first_not_of(" \t\r");
      const auto e = cell.find_last_not_of(" \t\r");
      cells.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
    }
    return cells;
  };

  std::string line;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    header = split(line);
    break;
  }
  const auto column = [&](std::initializer_list<const char*> names) -> int {
    for (const char* name : names)
      for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return static_cast<int>(i);
    return -1;
  };
  const int s_col = column({"s_db", "setting"});
  const int l_col = column({"lambda_hat"});
  const int e_col = column({"estimator"});
  if (s_col < 0 || l_col < 0)
    throw FormatError("sweep points: header must name s_db (or setting) and lambda_hat");
  if (estimator && e_col < 0)
    throw FormatError("sweep points: no estimator column to filter on");

  std::vector<SweepPoint> points;
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || line[0] == '#') continue;
    const auto cells = split(line);
    const auto need = static_cast<std::size_t>(std::max({s_col, l_col, e_col}) + 1);
    if (cells.size() < need)
      throw FormatError("sweep points: row " + std::to_string(row) + " is short");
    SweepPoint p;
    p.estimator = e_col >= 0 ? cells[static_cast<std::size_t>(e_col)] : "";
    if (estimator && p.estimator != *estimator) continue;
    if (cells[static_cast<std::size_t>(l_col)].empty()) continue;
    try {
      std::size_t used = 0;
      p.s_db = std::stod(cells[static_cast<std::size_t>(s_col)], &used);
      p.lambda_hat = std::stod(cells[static_cast<std::size_t>(l_col)]);
    } catch (const std::exception&) {
      throw FormatError("sweep points: row " + std::to_string(row) + " is not numeric");
    }
    if (!std::isfinite(p.s_db) || !std::isfinite(p.lambda_hat))
      throw FormatError("sweep points: row " + std::to_string(row) + " is not finite");
    points.push_back(p);
  }
  return points;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void write_text_atomic(const std::filesystem::path& path, const std::string& text) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw FormatError("cannot write " + tmp.string());
    out << text;
    if (!out) throw FormatError("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace channelscope::io
