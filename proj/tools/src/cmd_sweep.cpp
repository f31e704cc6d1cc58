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

#include <atomic>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <memory>
#include <mutex>
#include <thread>

#include "common.hpp"

namespace channelscope::cli {

namespace {

struct SweepState {
  std::string family;
  std::vector<double> db;
  std::vector<double> angles_deg;
  double s_v0 = 0.38;
  double t_ms = 21.6;
  double lambda = 1.0;
  double theta_deg = 0.0;
  double alpha_deg = 0.0;
  EnsembleSpec ensemble;
  ModelSpec model;
  std::int64_t shots = 100;
  std::uint64_t seed = 0;
  int restarts = 10;
  std::string out_dir;
};

struct Row {
  std::string estimator;
  double lambda_hat = 0.0;
  std::optional<double> angle_deg;
  std::optional<double> fidelity;
};

struct Bar {
  std::string source;
  std::string entry;
  double value = 0.0;
};

struct SettingResult {
  std::vector<Row> rows;
  std::vector<Bar> bars;
};

std::string full(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void add_bars(std::vector<Bar>& bars, const std::string& source, const Matrix3& m,
              const Vector3& v, const char* matrix_name, const char* vector_name) {
  const char axes[] = {'x', 'y', 'z'};
  for (int j = 0; j < 3; ++j) {
    bars.push_back({source, std::string(vector_name) + "_" + axes[j], v(j)});
    for (int k = 0; k < 3; ++k)
      bars.push_back({source, std::string(matrix_name) + "_" + axes[j] + axes[k], m(j, k)});
  }
}

std::optional<double> fidelity_if_cp(const AffineChannel& a, const AffineChannel& b) {
  if (!is_completely_positive(a, 1e-7).cp) return std::nullopt;
  return process_fidelity(a, b);
}

int sweep(const SweepState& s) {
  const bool by_db = !s.db.empty();
  if (by_db == !s.angles_deg.empty())
    throw UsageError("give exactly one non-empty sweep list: --db or --angles-deg");
  const Family family = *parse_family(s.family);
  if (!by_db && family == Family::phase_damping)
    throw UsageError("phase_damping has no angle; sweep it with --db");
  const std::optional<MeasurementModel> model = s.model.build();
  if (!model) throw UsageError("sweep needs --eta or --eta0/--eta1");
  const NoiseSweepModel noise{s.s_v0, s.t_ms};
  if (by_db) {
    try {
      noise.validate();
    } catch (const DomainError& e) {
      throw UsageError(e.what());
    }
  }
  const TestStateEnsemble ensemble = s.ensemble.build(*model);
  const std::vector<double>& settings = by_db ? s.db : s.angles_deg;

  json config{{"command", "sweep"},
              {"family", s.family},
              {"ensemble", s.ensemble.to_json()},
              {"shots", s.shots},
              {"seed", s.seed},
              {"restarts", s.restarts}};
  config.update(s.model.to_json());
  if (by_db) {
    config["db"] = s.db;
    config["s_v0"] = s.s_v0;
    config["t_ms"] = s.t_ms;
    if (family == Family::rotated_phase_damping) config["theta_deg"] = s.theta_deg;
    if (family == Family::rotation_damping) config["alpha_deg"] = s.alpha_deg;
  } else {
    config["angles_deg"] = s.angles_deg;
    config["lambda"] = s.lambda;
  }

  const std::filesystem::path dir(s.out_dir);
  std::filesystem::create_directories(dir);

  auto truth_at = [&](double setting) {
    const double l = by_db ? lambda_from_noise(noise, setting) : s.lambda;
    switch (family) {
      case Family::phase_damping:
        return phase_damping(l);
      case Family::rotated_phase_damping:
        return rotated_phase_damping(l, Angle::degrees(by_db ? s.theta_deg : setting));
      case Family::rotation_damping:
        break;
    }
    return rotation_damping(l, Angle::degrees(by_db ? s.alpha_deg : setting));
  };

  auto run_setting = [&](std::size_t i) {
    const double setting = settings[i];
    const AffineChannel truth = truth_at(setting);
    const ExperimentRecord record =
        sample_counts(truth, ensemble, *model, {s.shots, mix_seed(s.seed, i), false});
    json setting_config = config;
    setting_config["setting"] = setting;
    setting_config["setting_index"] = i;
    io::write_text_atomic(dir / ("counts_" + std::to_string(i) + ".json"),
                          io::counts_to_json(record, *model, setting_config).dump(2) + "\n");

    const ObservationSet obs = record.observations();
    const DataMatrix dm = data_matrix_from_frequencies(FrequencyTable::from_observations(obs));
    const EstimateReport lin = linear_inverse(dm, ensemble, *model);
    const EstimateReport ml = ml_estimate(obs, ensemble, *model, {s.restarts, 50000, s.seed, false});
    const FamilyEstimate fam = constrained_ml(obs, ensemble, *model, family);
    const AffineChannel fam_channel = fam.channel();

    SettingResult out;
    const std::optional<double> no_angle;
    out.rows.push_back({"model", by_db ? lambda_from_noise(noise, setting) : s.lambda,
                        family == Family::phase_damping
                            ? no_angle
                            : std::optional<double>(by_db ? (family == Family::rotation_damping
                                                                 ? s.alpha_deg
                                                                 : s.theta_deg)
                                                          : setting),
                        fidelity_if_cp(truth, fam_channel)});
    out.rows.push_back({"lambda_bar", lambda_bar(lin.channel), no_angle,
                        fidelity_if_cp(lin.channel, fam_channel)});
    out.rows.push_back({"lambda_bar_ml", lambda_bar(ml.channel), no_angle,
                        process_fidelity(ml.channel, fam_channel)});
    out.rows.push_back({"lambda_est", fam.lambda,
                        fam.angle ? std::optional<double>(fam.angle->degrees()) : no_angle, 1.0});
    add_bars(out.bars, "data", dm.D, dm.d, "D", "d");
    add_bars(out.bars, "linear", lin.channel.matrix(), lin.channel.translation(), "M", "v");
    add_bars(out.bars, "ml", ml.channel.matrix(), ml.channel.translation(), "M", "v");
    add_bars(out.bars, "model", truth.matrix(), truth.translation(), "M", "v");
    return out;
  };

  std::vector<SettingResult> results(settings.size());
  std::vector<std::exception_ptr> errors(settings.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < settings.size(); i = next++) {
      try {
        results[i] = run_setting(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned workers = worker_count(settings.size());
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  const std::string header = "# config: " + config.dump() + "\n";
  const char* setting_label = by_db ? "setting_db" : "setting_deg";
  std::string table = header + "setting,estimator,lambda_hat,angle_deg,fidelity_to_family\n";
  std::string bars = header + "setting,source,entry,value\n";
  std::cout << setting_label << "  model     lambda_bar  lambda_bar_ml  lambda_est"
            << (family == Family::phase_damping ? "" : "  angle_est") << '\n';
  for (std::size_t i = 0; i < settings.size(); ++i) {
    const std::string setting = full(settings[i]);
    for (const Row& r : results[i].rows)
      table += setting + "," + r.estimator + "," + full(r.lambda_hat) + "," +
               (r.angle_deg ? full(*r.angle_deg) : "") + "," +
               (r.fidelity ? full(*r.fidelity) : "") + "\n";
    for (const Bar& b : results[i].bars)
      bars += setting + "," + b.source + "," + b.entry + "," + full(b.value) + "\n";
    const auto& rows = results[i].rows;
    std::cout << fixed4(settings[i]) << "  " << fixed4(rows[0].lambda_hat) << "  "
              << fixed4(rows[1].lambda_hat) << "      " << fixed4(rows[2].lambda_hat) << "         "
              << fixed4(rows[3].lambda_hat);
    if (rows[3].angle_deg) std::cout << "      " << fixed4(*rows[3].angle_deg);
    std::cout << '\n';
  }
  io::write_text_atomic(dir / "sweep.csv", table);
  io::write_text_atomic(dir / "bars.csv", bars);
  return kExitOk;
}

}  // namespace

Command add_sweep(CLI::App& root) {
  auto state = std::make_shared<SweepState>();
  CLI::App* app = root.add_subcommand(
      "sweep", "simulate and reconstruct a family over noise levels or angles");
  app->add_option("--family", state->family)
      ->required()
      ->check(CLI::IsMember({"phase_damping", "rotated_pd", "rotation_damping"}));
  app->add_option("--db", state->db, "noise attenuations in dB, comma separated")
      ->delimiter(',');
  app->add_option("--angles-deg", state->angles_deg, "family angles in degrees, comma separated")
      ->delimiter(',');
  app->add_option("--s-v0", state->s_v0, "spectral density at 0 dB, 1/ms")->capture_default_str();
  app->add_option("--t-ms", state->t_ms, "noise exposure, ms")->capture_default_str();
  app->add_option("--lambda", state->lambda, "damping for angle sweeps")->capture_default_str();
  app->add_option("--theta-deg", state->theta_deg, "rotated_pd angle for dB sweeps")
      ->capture_default_str();
  app->add_option("--alpha-deg", state->alpha_deg, "rotation_damping angle for dB sweeps")
      ->capture_default_str();
  state->ensemble.add_options(*app);
  state->model.add_options(*app);
  app->add_option("--shots", state->shots, "shots per setting")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app->add_option("--seed", state->seed, "random seed")->capture_default_str();
  app->add_option("--restarts", state->restarts, "ML restarts")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app->add_option("--out-dir", state->out_dir, "directory for sweep.csv, bars.csv and counts")
      ->required();
  return {app, [state] { return sweep(*state); }, nullptr};
}

}  // namespace channelscope::cli
