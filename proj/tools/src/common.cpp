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

#include "common.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <thread>

namespace channelscope::cli {

namespace {

template <typename Make>
AffineChannel affine_in_lambda(double lambda, Make make) {
  // Families are affine in lambda; outside [0, 1] extrapolate linearly.
  if (lambda >= 0.0 && lambda <= 1.0) return make(lambda);
  const AffineChannel at0 = make(0.0);
  const AffineChannel at1 = make(1.0);
  return AffineChannel(at0.matrix() + lambda * (at1.matrix() - at0.matrix()),
                       at0.translation() + lambda * (at1.translation() - at0.translation()));
}

std::string option_name(std::string key) {
  for (char& c : key)
    if (c == '_') c = '-';
  return key;
}

std::string scalar_text(const json& value, const std::string& key) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_number()) return value.dump();
  throw UsageError("config: value of '" + key + "' must be a number, string or list");
}

void append_option(ConfigExpansion& out, const CLI::App& command, const std::string& key,
                   const json& value) {
  const std::string name = "--" + option_name(key);
  const CLI::Option* option = command.get_option_no_throw(name);
  if (option == nullptr || name == "--config")
    throw UsageError("config: unknown key '" + key + "' for '" + command.get_name() + "'");
  if (value.is_boolean()) {
    if (value.get<bool>()) out.args.push_back(name);
    return;
  }
  if (value.is_null()) return;
  if (value.is_array()) {
    std::string joined;
    for (const auto& item : value) {
      if (!joined.empty()) joined += ',';
      joined += scalar_text(item, key);
    }
    if (joined.empty()) throw UsageError("config: '" + key + "' is an empty list");
    out.args.push_back(name + "=" + joined);
    return;
  }
  out.args.push_back(name + "=" + scalar_text(value, key));
}

}  // namespace

void ChannelSpec::add_options(CLI::App& app) {
  app.add_option("--family", family, "phase_damping, rotated_pd or rotation_damping")
      ->check(CLI::IsMember({"phase_damping", "rotated_pd", "rotation_damping"}));
  app.add_option("--lambda", lambda, "damping parameter")->capture_default_str();
  app.add_option("--theta-deg", theta_deg, "rotated_pd plane angle, degrees")
      ->capture_default_str();
  app.add_option("--alpha-deg", alpha_deg, "rotation_damping angle, degrees")
      ->capture_default_str();
  app.add_option("--channel", channel_file, "channel JSON file instead of a family")
      ->check(CLI::ExistingFile);
}

AffineChannel ChannelSpec::build() const {
  if (inline_channel) return io::parse_channel(*inline_channel).channel;
  if (!channel_file.empty()) return io::parse_channel(io::read_json_file(channel_file)).channel;
  if (family.empty()) throw UsageError("a channel is required: --family or --channel");
  if (!std::isfinite(lambda) || !std::isfinite(theta_deg) || !std::isfinite(alpha_deg))
    throw UsageError("channel parameters must be finite");
  const Family f = *parse_family(family);
  switch (f) {
    case Family::phase_damping:
      return affine_in_lambda(lambda, [](double l) { return phase_damping(l); });
    case Family::rotated_phase_damping:
      return affine_in_lambda(lambda, [&](double l) {
        return rotated_phase_damping(l, Angle::degrees(theta_deg));
      });
    case Family::rotation_damping:
      return affine_in_lambda(
          lambda, [&](double l) { return rotation_damping(l, Angle::degrees(alpha_deg)); });
  }
  throw UsageError("unknown family");
}

json ChannelSpec::to_json() const {
  if (inline_channel) return *inline_channel;
  if (!channel_file.empty()) return json{{"file", channel_file}};
  json out{{"family", family}, {"lambda", lambda}};
  if (family == "rotated_pd") out["theta_deg"] = theta_deg;
  if (family == "rotation_damping") out["alpha_deg"] = alpha_deg;
  return out;
}

void EnsembleSpec::add_options(CLI::App& app) {
  auto* file_opt = app.add_option("--ensemble", file,
                                  "state-tomography data-matrix JSON of the test states")
                       ->check(CLI::ExistingFile);
  app.add_flag("--ideal-states", ideal, "use ideal pure test states")->excludes(file_opt);
}

TestStateEnsemble EnsembleSpec::build(const MeasurementModel& model) const {
  if (!file.empty())
    return ensemble_from_state_tomography(io::parse_data_matrix(io::read_json_file(file)), model);
  if (ideal || default_ideal) return TestStateEnsemble::ideal();
  throw UsageError("test states are required: --ensemble or --ideal-states");
}

json EnsembleSpec::to_json() const {
  if (!file.empty()) return json{{"file", file}};
  return "ideal";
}

void ModelSpec::add_options(CLI::App& app) {
  auto* e = app.add_option("--eta", eta, "mean detection efficiency, > 0.5");
  auto* e0 = app.add_option("--eta0", eta0, "probability of detecting |0> correctly");
  auto* e1 = app.add_option("--eta1", eta1, "probability of detecting |1> correctly");
  e0->needs(e1);
  e1->needs(e0);
  e->excludes(e0);
}

std::optional<MeasurementModel> ModelSpec::build() const {
  try {
    if (eta0 && eta1) return MeasurementModel(*eta0, *eta1);
    if (eta) return MeasurementModel(*eta);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  return std::nullopt;
}

json ModelSpec::to_json() const {
  if (eta0 && eta1) return json{{"eta0", *eta0}, {"eta1", *eta1}};
  if (eta) return json{{"eta", *eta}};
  return json::object();
}

std::string fixed4(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", value);
  std::string out = buf;
  if (out == "-0.0000") out = "0.0000";
  return out;
}

std::string fixed4(const AffineChannel& channel) {
  std::string out;
  const char axes[] = {'x', 'y', 'z'};
  for (int j = 0; j < 3; ++j) {
    out += "  ";
    out += axes[j];
    out += ": v = " + fixed4(channel.translation()(j)) + "  M =";
    for (int k = 0; k < 3; ++k) out += " " + fixed4(channel.matrix()(j, k));
    out += '\n';
  }
  return out;
}

ConfigExpansion expand_config(const json& config, const CLI::App& command) {
  if (!config.is_object()) throw UsageError("config: top level must be a JSON object");
  ConfigExpansion out;
  for (const auto& [key, value] : config.items()) {
    if (key == "channel" && value.is_object()) {
      if (value.contains("M") || value.contains("v")) {
        if (command.get_option_no_throw("--channel") == nullptr)
          throw UsageError("config: unknown key 'channel' for '" + command.get_name() + "'");
        out.inline_channel = value;
        continue;
      }
      for (const auto& [sub, sub_value] : value.items()) append_option(out, command, sub, sub_value);
      continue;
    }
    append_option(out, command, key, value);
  }
  return out;
}

json cp_report_json(const CpReport& report) {
  return json{{"cp", report.cp}, {"min_eigenvalue", report.min_eigenvalue}};
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  io::write_text_atomic(path, text);
}

unsigned worker_count(std::size_t jobs) {
  unsigned cap = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("CHANNEL_SCOPE_THREADS"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const long value = std::strtol(env, &end, 10);
    if (*end != '\0' || value < 1)
      throw UsageError("CHANNEL_SCOPE_THREADS must be a positive integer");
    cap = static_cast<unsigned>(value);
  }
  return static_cast<unsigned>(std::min<std::size_t>(cap, std::max<std::size_t>(jobs, 1)));
}

}  // namespace channelscope::cli
