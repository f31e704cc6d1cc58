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

#include <iostream>
#include <memory>

#include "common.hpp"

namespace channelscope::cli {

namespace {

struct ReconstructState {
  std::string method = "linear";
  std::string counts;
  std::string data;
  EnsembleSpec ensemble;
  ModelSpec model;
  int restarts = 10;
  int max_evaluations = 50000;
  std::uint64_t seed = 0;
  bool strict_cp = false;
  std::string out;
  std::string diagnostics;
};

struct Input {
  MeasurementModel model = MeasurementModel::sharp();
  ObservationSet observations;
  std::optional<DataMatrix> data_matrix;
};

Input load_input(const ReconstructState& s) {
  Input in;
  const std::optional<MeasurementModel> cli_model = s.model.build();
  if (!s.counts.empty()) {
    const io::CountsFile file = io::parse_counts(io::read_json_file(s.counts));
    std::optional<MeasurementModel> model = cli_model;
    if (!model) {
      try {
        model = file.model();
      } catch (const DomainError& e) {
        throw UsageError(std::string("counts file: ") + e.what());
      }
    }
    if (!model) throw UsageError("no detection efficiency: pass --eta or put eta in the counts file");
    in.model = *model;
    in.observations = file.record.observations();
    const FrequencyTable table = FrequencyTable::from_observations(in.observations);
    if (table.complete()) in.data_matrix = data_matrix_from_frequencies(table);
  } else {
    if (!cli_model) throw UsageError("--data needs --eta or --eta0/--eta1");
    in.model = *cli_model;
    const DataMatrix dm = io::parse_data_matrix(io::read_json_file(s.data));
    in.observations = frequencies_from_data_matrix(dm).to_observations();
    in.data_matrix = dm;
  }
  return in;
}

const DataMatrix& require_data_matrix(const Input& in) {
  if (!in.data_matrix) {
    const FrequencyTable table = FrequencyTable::from_observations(in.observations);
    data_matrix_from_frequencies(table);  // throws IncompleteDataError with the list
  }
  return *in.data_matrix;
}

int reconstruct(const ReconstructState& s) {
  const Input in = load_input(s);
  const TestStateEnsemble ensemble = s.ensemble.build(in.model);

  json config{{"command", "reconstruct"},
              {"method", s.method},
              {"ensemble", s.ensemble.to_json()},
              {"eta0", in.model.eta0()},
              {"eta1", in.model.eta1()}};
  if (!s.counts.empty()) config["counts"] = s.counts;
  if (!s.data.empty()) config["data"] = s.data;
  if (s.method == "ml") {
    config["restarts"] = s.restarts;
    config["max_evaluations"] = s.max_evaluations;
    config["seed"] = s.seed;
  }
  config["strict_cp"] = s.strict_cp;

  json diag{{"method", s.method}};
  AffineChannel channel;
  if (s.method == "linear" || s.method == "linear-regularized" || s.method == "ml") {
    EstimateReport r;
    if (s.method == "ml") {
      r = ml_estimate(in.observations, ensemble, in.model,
                      {s.restarts, s.max_evaluations, s.seed, false});
    } else {
      r = linear_inverse(require_data_matrix(in), ensemble, in.model);
      if (s.method == "linear-regularized") r = regularize(r);
      const LikelihoodValue l = log_likelihood(r.channel, in.observations, ensemble, in.model);
      r.log_likelihood = l.value;
      r.clipped_terms = l.clipped_terms;
    }
    channel = r.channel;
    diag["cp"] = cp_report_json(r.cp);
    diag["log_likelihood"] = r.log_likelihood;
    diag["clipped_terms"] = r.clipped_terms;
    diag["regularization_c"] = r.regularization_c ? json(*r.regularization_c) : json(nullptr);
    diag["iterations"] = r.iterations;
    diag["converged"] = r.converged;
    if (s.method == "ml") {
      diag["restart_spread"] = r.restart_spread;
      diag["suspicious"] = r.suspicious;
    }
  } else {
    const std::string prefix = "family:";
    const auto family = parse_family(s.method.substr(prefix.size()));
    const FamilyEstimate f = constrained_ml(in.observations, ensemble, in.model, *family);
    channel = f.channel();
    diag["family"] = std::string(family_name(f.family));
    diag["lambda"] = f.lambda;
    if (f.angle) diag[f.family == Family::rotation_damping ? "alpha_deg" : "theta_deg"] = f.angle->degrees();
    diag["log_likelihood"] = f.log_likelihood;
    diag["converged"] = f.converged;
    diag["cp"] = cp_report_json(is_completely_positive(channel, 1e-7));
  }
  diag["lambda_bar"] = lambda_bar(channel);
  diag["config"] = config;

  const bool cp = diag["cp"]["cp"].get<bool>();
  std::cout << "method: " << s.method << '\n' << fixed4(channel);
  std::cout << "cp: " << (cp ? "true" : "false")
            << "  min Choi eigenvalue: " << fixed4(diag["cp"]["min_eigenvalue"].get<double>()) << '\n';
  std::cout << "log-likelihood: " << fixed4(diag["log_likelihood"].get<double>())
            << "  lambda_bar: " << fixed4(diag["lambda_bar"].get<double>()) << '\n';
  if (diag.contains("regularization_c") && !diag["regularization_c"].is_null())
    std::cout << "regularization c: " << fixed4(diag["regularization_c"].get<double>()) << '\n';
  if (diag.contains("family")) {
    std::cout << "lambda_est: " << fixed4(diag["lambda"].get<double>());
    for (const char* key : {"theta_deg", "alpha_deg"})
      if (diag.contains(key)) std::cout << "  " << key << ": " << fixed4(diag[key].get<double>());
    std::cout << '\n';
  }

  if (s.strict_cp && s.method == "linear" && !cp) {
    std::cerr << "error: linear estimate is not completely positive (--strict-cp)\n";
    return kExitStrictCp;
  }
  if (!s.out.empty())
    io::write_text_atomic(s.out, io::channel_to_json(channel, {{"method", s.method}, {"config", config}})
                                         .dump(2) + "\n");
  if (!s.diagnostics.empty()) io::write_text_atomic(s.diagnostics, diag.dump(2) + "\n");
  return kExitOk;
}

}  // namespace

Command add_reconstruct(CLI::App& root) {
  auto state = std::make_shared<ReconstructState>();
  state->ensemble.default_ideal = false;
  CLI::App* app = root.add_subcommand("reconstruct", "estimate a channel from counts or a data matrix");
  app->add_option("--method", state->method)
      ->check(CLI::IsMember({"linear", "linear-regularized", "ml", "family:phase_damping",
                             "family:rotated_pd", "family:rotation_damping"}))
      ->capture_default_str();
  auto* counts = app->add_option("--counts", state->counts, "counts JSON")->check(CLI::ExistingFile);
  auto* data = app->add_option("--data", state->data, "data-matrix JSON")->check(CLI::ExistingFile);
  counts->excludes(data);
  state->ensemble.add_options(*app);
  state->model.add_options(*app);
  app->add_option("--restarts", state->restarts, "ML restarts")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app->add_option("--max-evaluations", state->max_evaluations, "ML evaluations per restart")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app->add_option("--seed", state->seed, "ML restart seed")->capture_default_str();
  app->add_flag("--strict-cp", state->strict_cp, "exit 3 when the linear estimate is not CP");
  app->add_option("--out", state->out, "channel JSON output");
  app->add_option("--diagnostics", state->diagnostics, "diagnostics JSON output");
  return {app, [state] {
            if (state->counts.empty() && state->data.empty())
              throw UsageError("one of --counts or --data is required");
            return reconstruct(*state);
          },
          nullptr};
}

}  // namespace channelscope::cli
