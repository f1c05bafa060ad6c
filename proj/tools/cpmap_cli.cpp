/**
 * This code is part of cpmap.
 *
 * (C) Copyright cpmap contributors 2026.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 *
 * Any modifications or derivative works of this code must retain this
 * copyright notice, and modified files need to carry a notice indicating
 * that they have been altered from the originals.
 */

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cpmap/channels.hpp"
#include "cpmap/experiment.hpp"
#include "cpmap/reconstruct.hpp"
#include "cpmap/serialization.hpp"

namespace {

struct OptimizerFlags {
  long max_evals = cpmap::SimplexOptions{}.max_evals;
  int restarts = cpmap::SimplexOptions{}.restarts;
  double tol = cpmap::SimplexOptions{}.tol_f;

  void attach(CLI::App *cmd) {
    cmd->add_option("--max-evals", max_evals, "Objective evaluation budget");
    cmd->add_option("--restarts", restarts, "Simplex restarts");
    cmd->add_option("--tol", tol, "Relative value-spread tolerance");
  }

  cpmap::SimplexOptions to_options() const {
    cpmap::SimplexOptions opts;
    opts.max_evals = max_evals;
    opts.restarts = restarts;
    opts.tol_f = tol;
    return opts;
  }
};

cpmap::ChoiMatrix resolve_channel(const std::string &spec,
                                  const std::string &file,
                                  std::string &label) {
  if (!file.empty()) {
    label = file;
    return cpmap::read_channel_file(file);
  }
  const auto named = cpmap::parse_channel_spec(spec);
  label = named.label;
  return cpmap::choi_from_kraus(named.kraus);
}

void print_choi(const cpmap::ChoiMatrix &choi) {
  const auto &s = choi.matrix();
  std::printf("Choi matrix (%zux%zu), output factor first:\n", s.rows(),
              s.cols());
  for (std::size_t i = 0; i < s.rows(); ++i) {
    for (std::size_t j = 0; j < s.cols(); ++j)
      std::printf(" (%8.4f,%8.4f)", s(i, j).real(), s(i, j).imag());
    std::printf("\n");
  }
  const auto tp = cpmap::is_trace_preserving(choi, 1e-10);
  std::printf("trace: %.4f   tp deviation: %.3e\n", choi.trace(),
              tp.deviation);
}

cpmap::Json result_to_json(const cpmap::ReconstructionResult &result) {
  cpmap::Json j{
      {"model", cpmap::model_name(result.model)},
      {"seed", result.seed},
      {"K", result.record_count},
      {"N", result.choi.dim_in()},
      {"M", result.choi.dim_out()},
      {"choi", cpmap::matrix_to_json(result.choi.matrix())},
      {"log_likelihood", result.log_likelihood},
      {"penalized_log_likelihood", result.penalized_log_likelihood},
      {"trace_S", result.trace_s},
      {"tp_deviation", result.tp_deviation},
      {"converged", result.optimizer.converged},
      {"evaluations", result.optimizer.evaluations},
      {"restart_values", result.optimizer.restart_values},
  };
  if (result.model != cpmap::Model::Full)
    j["model_params"] = result.optimizer.best_params;
  if (!result.warnings.empty()) j["warnings"] = result.warnings;
  return j;
}

std::vector<std::size_t> parse_size_list(const std::string &csv) {
  std::vector<std::size_t> out;
  std::size_t pos = 0;
  try {
    while (pos < csv.size()) {
      std::size_t next = csv.find(',', pos);
      if (next == std::string::npos) next = csv.size();
      out.push_back(std::stoull(csv.substr(pos, next - pos)));
      pos = next + 1;
    }
  } catch (const std::exception &) {
    throw cpmap::InvalidArgument("bad integer list '" + csv + "'");
  }
  if (out.empty()) throw cpmap::InvalidArgument("empty list");
  return out;
}

std::vector<double> parse_double_list(const std::string &csv) {
  std::vector<double> out;
  std::size_t pos = 0;
  try {
    while (pos < csv.size()) {
      std::size_t next = csv.find(',', pos);
      if (next == std::string::npos) next = csv.size();
      out.push_back(std::stod(csv.substr(pos, next - pos)));
      pos = next + 1;
    }
  } catch (const std::exception &) {
    throw cpmap::InvalidArgument("bad number list '" + csv + "'");
  }
  if (out.empty()) throw cpmap::InvalidArgument("empty list");
  return out;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{
      "cpmap: simulate randomized process-tomography data and reconstruct "
      "the channel's Choi matrix by maximum likelihood"};
  app.require_subcommand(1);

  // --- simulate ---------------------------------------------------------
  auto *sim = app.add_subcommand(
      "simulate", "Generate a measurement-record file for a channel");
  std::string sim_channel, sim_channel_file, sim_out;
  std::size_t sim_k = 0;
  std::uint64_t sim_seed = 0;
  auto *sim_spec = sim->add_option(
      "--channel", sim_channel,
      "Channel spec: pauli:p0,p1,p2,p3 | depol:lambda | adamp:p");
  auto *sim_file =
      sim->add_option("--channel-file", sim_channel_file,
                      "JSON channel description ({kraus|choi, dims})");
  sim_spec->excludes(sim_file);
  sim->add_option("--k", sim_k, "Number of measurement records")
      ->required()
      ->check(CLI::PositiveNumber);
  sim->add_option("--seed", sim_seed, "Simulation seed")->required();
  sim->add_option("--out", sim_out, "Output record file (JSON lines)")
      ->required();

  // --- reconstruct ------------------------------------------------------
  auto *rec = app.add_subcommand(
      "reconstruct", "Maximum-likelihood Choi matrix from a record file");
  std::string rec_in, rec_out, rec_model = "full";
  std::uint64_t rec_seed = 0;
  OptimizerFlags rec_optim;
  rec->add_option("--in", rec_in, "Input record file")->required();
  rec->add_option("--out", rec_out, "Output result JSON")->required();
  rec->add_option("--model", rec_model, "Objective family: full|pauli|depol");
  rec->add_option("--seed", rec_seed, "Optimizer seed")->required();
  rec_optim.attach(rec);

  // --- study-scaling ----------------------------------------------------
  auto *scal = app.add_subcommand(
      "study-scaling", "Statistical error of lambda vs sample size");
  std::string scal_channel = "depol:0.8", scal_ks = "1875,7500,30000";
  std::string scal_model = "full", scal_out;
  std::size_t scal_reps = 20;
  std::uint64_t scal_seed = 0;
  unsigned scal_jobs = 0;
  OptimizerFlags scal_optim;
  scal->add_option("--channel", scal_channel, "Channel spec (default depol:0.8)");
  scal->add_option("--ks", scal_ks, "Comma-separated sample sizes");
  scal->add_option("--reps", scal_reps, "Repetitions per sample size");
  scal->add_option("--seed", scal_seed, "Study seed")->required();
  scal->add_option("--model", scal_model, "Objective family: full|pauli|depol");
  scal->add_option("--out", scal_out, "Output CSV (K,error)")->required();
  scal->add_option("--jobs", scal_jobs, "Worker threads (0 = all cores)");
  scal_optim.attach(scal);

  // --- study-damping ----------------------------------------------------
  auto *damp = app.add_subcommand(
      "study-damping", "Damping-parameter sweep at fixed sample size");
  std::string damp_ps = "0.1,0.3,0.5,0.7,0.9", damp_out;
  std::size_t damp_k = 10000, damp_reps = 10;
  std::uint64_t damp_seed = 0;
  unsigned damp_jobs = 0;
  OptimizerFlags damp_optim;
  damp->add_option("--ps", damp_ps, "Comma-separated true p values");
  damp->add_option("--k", damp_k, "Records per reconstruction");
  damp->add_option("--reps", damp_reps, "Repetitions per grid point");
  damp->add_option("--seed", damp_seed, "Study seed")->required();
  damp->add_option("--out", damp_out, "Output CSV (p_true,p_mean,p_std)")
      ->required();
  damp->add_option("--jobs", damp_jobs, "Worker threads (0 = all cores)");
  damp_optim.attach(damp);

  // --- channel-show -----------------------------------------------------
  auto *show = app.add_subcommand("channel-show",
                                  "Print a named channel's Choi matrix");
  std::string show_channel, show_channel_file, show_out;
  auto *show_spec = show->add_option("--channel", show_channel, "Channel spec");
  auto *show_file = show->add_option("--channel-file", show_channel_file,
                                     "JSON channel description");
  show_spec->excludes(show_file);
  show->add_option("--out", show_out, "Also write the channel as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (sim->parsed()) {
      if (sim_channel.empty() && sim_channel_file.empty())
        throw cpmap::InvalidArgument("simulate needs --channel or --channel-file");
      std::string label;
      const auto choi = resolve_channel(sim_channel, sim_channel_file, label);
      const auto records = cpmap::generate_records(choi, sim_k, sim_seed);
      cpmap::RecordFileHeader header;
      header.seed = sim_seed;
      header.channel = label;
      header.dim_in = choi.dim_in();
      header.dim_out = choi.dim_out();
      cpmap::write_record_file(sim_out, header, records);
      std::printf("wrote %zu records to %s\n", records.size(), sim_out.c_str());
      return 0;
    }

    if (rec->parsed()) {
      const auto file = cpmap::read_record_file(rec_in);
      cpmap::ReconstructOptions opts;
      opts.model = cpmap::model_from_name(rec_model);
      opts.simplex = rec_optim.to_options();
      opts.seed = rec_seed;
      const auto result = cpmap::reconstruct(file.records, opts);
      cpmap::write_text_file(rec_out, result_to_json(result).dump(2) + "\n");
      for (const auto &w : result.warnings)
        std::fprintf(stderr, "warning: %s\n", w.c_str());
      std::printf("log-likelihood %.6f  trace %.6f  tp deviation %.6f  %s\n",
                  result.log_likelihood, result.trace_s, result.tp_deviation,
                  result.optimizer.converged ? "converged" : "NOT converged");
      return result.optimizer.converged ? 0 : 3;
    }

    if (scal->parsed()) {
      const auto named = cpmap::parse_channel_spec(scal_channel);
      const auto result = cpmap::study_error_scaling(
          named.kraus, parse_size_list(scal_ks), scal_reps, scal_seed,
          cpmap::model_from_name(scal_model), scal_optim.to_options(),
          scal_jobs);
      std::vector<double> ks(result.sample_sizes.begin(),
                             result.sample_sizes.end());
      cpmap::write_text_file(
          scal_out, cpmap::csv_from_columns({"K", "error"},
                                            {ks, result.errors}));
      std::printf("fitted log-log slope: %.4f\n", result.fitted_slope);
      return 0;
    }

    if (damp->parsed()) {
      const auto rows = cpmap::study_damping_sweep(
          parse_double_list(damp_ps), damp_k, damp_reps, damp_seed,
          damp_optim.to_options(), damp_jobs);
      std::vector<double> p_true, p_mean, p_std;
      for (const auto &row : rows) {
        p_true.push_back(row.p_true);
        p_mean.push_back(row.p_mean);
        p_std.push_back(row.p_std);
      }
      cpmap::write_text_file(
          damp_out, cpmap::csv_from_columns({"p_true", "p_mean", "p_std"},
                                            {p_true, p_mean, p_std}));
      std::printf("damping sweep finished (%zu grid points)\n", rows.size());
      return 0;
    }

    if (show->parsed()) {
      if (show_channel.empty() && show_channel_file.empty())
        throw cpmap::InvalidArgument(
            "channel-show needs --channel or --channel-file");
      std::string label;
      const auto choi = resolve_channel(show_channel, show_channel_file, label);
      std::printf("channel: %s\n", label.c_str());
      print_choi(choi);
      if (!show_out.empty())
        cpmap::write_text_file(show_out,
                               cpmap::choi_to_json(choi).dump(2) + "\n");
      return 0;
    }
  } catch (const cpmap::InvalidArgument &e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const cpmap::FormatError &e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const cpmap::Error &e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception &e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
