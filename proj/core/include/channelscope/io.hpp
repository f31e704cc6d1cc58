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

#ifndef CHANNELSCOPE_IO_HPP_
#define CHANNELSCOPE_IO_HPP_

#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "channelscope/measurement.hpp"
#include "channelscope/metrics.hpp"

// File formats. All parsers throw FormatError on malformed input, including
// non-finite numbers and unknown keys.
namespace channelscope::io {

using nlohmann::json;

// {"M": [[3x3 row-major]], "v": [3], "meta": {...}}
struct ChannelFile {
  AffineChannel channel;
  json meta = json::object();
};
ChannelFile parse_channel(const json& doc);
json channel_to_json(const AffineChannel& channel, const json& meta = json::object());

// {"D": [[3x3 row-major]], "d": [3]}
DataMatrix parse_data_matrix(const json& doc);
json data_matrix_to_json(const DataMatrix& dm);

// {"eta": 0.988, "settings": [{"state": "+x", "axis": "x", "orientation": "+",
//   "counts_plus": n, "counts_minus": m}, ...]}. Optional "eta0"/"eta1" for a
// biased detector and "config"/"meta" objects carried through verbatim.
struct CountsFile {
  std::optional<double> eta;
  std::optional<double> eta0;
  std::optional<double> eta1;
  ExperimentRecord record;
  json config = json::object();

  // Model from eta0/eta1 when both are given, else eta. nullopt when absent.
  std::optional<MeasurementModel> model() const;
};
CountsFile parse_counts(const json& doc);
json counts_to_json(const ExperimentRecord& record, const MeasurementModel& model,
                    const json& config = json::object());

// CSV with a header row naming at least s_db (or setting) and lambda_hat;
// an optional estimator column filters rows. Lines starting with '#' are
// comments.
std::vector<SweepPoint> parse_sweep_points(std::istream& in,
                                           const std::optional<std::string>& estimator = {});

json read_json_file(const std::filesystem::path& path);
// Writes via a temporary file in the same directory and renames it.
void write_text_atomic(const std::filesystem::path& path, const std::string& text);

}  // namespace channelscope::io

#endif  // CHANNELSCOPE_IO_HPP_
