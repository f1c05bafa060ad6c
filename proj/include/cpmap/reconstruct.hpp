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

#ifndef CPMAP_RECONSTRUCT_HPP_
#define CPMAP_RECONSTRUCT_HPP_

#include <array>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <mutex>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "cpmap/channels.hpp"
#include "cpmap/experiment.hpp"
#include "cpmap/likelihood.hpp"
#include "cpmap/simplex.hpp"

namespace cpmap {

//=========================================================================
// Models
//=========================================================================

// Full: all (NM)^2 Cholesky parameters.
// Pauli: 4 weights, squared into the probabilities of a Pauli channel.
// Depol: the single depolarizing parameter lambda.
enum class Model { Full, Pauli, Depol };

inline const char *model_name(Model m) {
  switch (m) {
    case Model::Full: return "full";
    case Model::Pauli: return "pauli";
    case Model::Depol: return "depol";
  }
  return "?";
}

inline Model model_from_name(const std::string &name) {
  if (name == "full") return Model::Full;
  if (name == "pauli") return Model::Pauli;
  if (name == "depol") return Model::Depol;
  throw InvalidArgument("unknown model '" + name + "'; use full|pauli|depol");
}

struct ReconstructOptions {
  Model model = Model::Full;
  SimplexOptions simplex;
  std::uint64_t seed = 0;   // jitters the optimizer's starting point
  double probability_floor = 1e-12;
  double start_jitter = 0.02;
};

struct ReconstructionResult {
  ChoiMatrix choi;
  double log_likelihood = 0.0;
  double penalized_log_likelihood = 0.0;
  double tp_deviation = 0.0;
  double trace_s = 0.0;
  OptimReport optimizer;
  Model model = Model::Full;
  std::uint64_t seed = 0;
  std::size_t record_count = 0;
  std::vector<std::string> warnings;
};

//=========================================================================
// Channel-family parameter extraction
//=========================================================================

// Inverts the Pauli-channel Choi pattern entrywise.
inline std::array<double, 4> extract_pauli_probs(const ChoiMatrix &c) {
  if (c.dim_in() != 2 || c.dim_out() != 2)
    throw DimensionMismatch("extract_pauli_probs: need a qubit channel");
  const ComplexMatrix &s = c.matrix();
  const double p0 = 0.5 * (s(0, 0).real() + s(0, 3).real());
  const double p3 = 0.5 * (s(0, 0).real() - s(0, 3).real());
  const double p1 = 0.5 * (s(1, 1).real() + s(1, 2).real());
  const double p2 = 0.5 * (s(1, 1).real() - s(1, 2).real());
  return {p0, p1, p2, p3};
}

// lambda = (<Psi|S|Psi> - 1)/3 with the unnormalized entangled vector;
// linear in S and exact on the depolarizing family.
inline double extract_depolarizing_lambda(const ChoiMatrix &c) {
  if (c.dim_in() != 2 || c.dim_out() != 2)
    throw DimensionMismatch("extract_depolarizing_lambda: need a qubit channel");
  const ComplexMatrix &s = c.matrix();
  const double overlap = s(0, 0).real() + s(0, 3).real() + s(3, 0).real() +
                         s(3, 3).real();
  return (overlap - 1.0) / 3.0;
}

inline ChoiMatrix damping_choi(double p) {
  return choi_from_kraus(amplitude_damping(p));
}

// Least-squares fit of the damping parameter: coarse scan over [0,1]
// followed by golden-section refinement of || S - S_a(p) ||_F^2.
inline double extract_damping_p(const ChoiMatrix &c) {
  if (c.dim_in() != 2 || c.dim_out() != 2)
    throw DimensionMismatch("extract_damping_p: need a qubit channel");
  const auto residual = [&](double p) {
    const double d = frobenius_distance(c.matrix(), damping_choi(p).matrix());
    return d * d;
  };
  const int coarse = 64;
  double best_p = 0.0;
  double best_r = residual(0.0);
  for (int i = 1; i <= coarse; ++i) {
    const double p = double(i) / coarse;
    const double r = residual(p);
    if (r < best_r) {
      best_r = r;
      best_p = p;
    }
  }
  double lo = std::max(0.0, best_p - 1.0 / coarse);
  double hi = std::min(1.0, best_p + 1.0 / coarse);
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = hi - inv_phi * (hi - lo);
  double b = lo + inv_phi * (hi - lo);
  double fa = residual(a);
  double fb = residual(b);
  while (hi - lo > 1e-7) {
    if (fa < fb) {
      hi = b;
      b = a;
      fb = fa;
      a = hi - inv_phi * (hi - lo);
      fa = residual(a);
    } else {
      lo = a;
      a = b;
      fa = fb;
      b = lo + inv_phi * (hi - lo);
      fb = residual(b);
    }
  }
  return 0.5 * (lo + hi);
}

//=========================================================================
// Reduced-model objectives
//=========================================================================

namespace detail {

// vec(sigma_i) vec(sigma_i)^dag, the Choi building blocks of the Pauli
// family.
inline const std::array<ComplexVector, 4> &pauli_vecs() {
  static const std::array<ComplexVector, 4> v = {
      pauli(0).entries(), pauli(1).entries(), pauli(2).entries(),
      pauli(3).entries()};
  return v;
}

inline ComplexMatrix pauli_family_choi(const std::array<double, 4> &probs) {
  ComplexMatrix s(4, 4);
  for (std::size_t i = 0; i < 4; ++i) {
    const auto &v = pauli_vecs()[i];
    for (std::size_t a = 0; a < 4; ++a) {
      if (v[a] == Complex(0.0, 0.0)) continue;
      for (std::size_t b = 0; b < 4; ++b)
        s(a, b) += probs[i] * v[a] * std::conj(v[b]);
    }
  }
  return s;
}

// Per-record overlaps |<<sigma_i | x_l>>|^2; the record probability under
// the Pauli family is their convex combination.
inline std::vector<std::array<double, 4>> pauli_overlaps(
    const LikelihoodContext &ctx) {
  if (ctx.rank1_probes().empty())
    throw InvalidArgument("reduced models need projective records");
  const std::size_t d = ctx.probe_dim();
  const std::size_t count = ctx.rank1_probes().size() / d;
  std::vector<std::array<double, 4>> overlaps(count);
  for (std::size_t l = 0; l < count; ++l) {
    const Complex *x = ctx.rank1_probes().data() + l * d;
    for (std::size_t i = 0; i < 4; ++i) {
      const auto &v = pauli_vecs()[i];
      Complex acc(0.0, 0.0);
      for (std::size_t a = 0; a < d; ++a) acc += std::conj(v[a]) * x[a];
      overlaps[l][i] = std::norm(acc);
    }
  }
  return overlaps;
}

inline double family_log_likelihood(
    const std::vector<std::array<double, 4>> &overlaps,
    const std::array<double, 4> &probs, double floor) {
  double total = 0.0;
  double chunk = 1.0;
  int in_chunk = 0;
  for (const auto &o : overlaps) {
    const double p =
        probs[0] * o[0] + probs[1] * o[1] + probs[2] * o[2] + probs[3] * o[3];
    chunk *= p > floor ? p : floor;
    if (++in_chunk == 16) {
      total += std::log(chunk);
      chunk = 1.0;
      in_chunk = 0;
    }
  }
  if (in_chunk > 0) total += std::log(chunk);
  return total;
}

}  // namespace detail

//=========================================================================
// reconstruct
//=========================================================================

inline ReconstructionResult reconstruct(
    const std::vector<MeasurementRecord> &records,
    const ReconstructOptions &opts = {}) {
  ReconstructionResult result{ChoiMatrix(2, 2, ComplexMatrix::identity(4) *
                                                   Complex(0.5, 0.0))};
  result.model = opts.model;
  result.seed = opts.seed;
  result.record_count = records.size();
  if (records.size() < 100)
    result.warnings.push_back(
        "fewer than 100 records; the estimate may be strongly underdetermined");

  const LikelihoodContext ctx(records, opts.probability_floor);
  const double k = static_cast<double>(ctx.record_count());
  Rng jitter_rng(mix_seed(opts.seed, 0x0b7a9e5dULL));

  ComplexMatrix s_best(4, 4);
  if (opts.model == Model::Full) {
    ParamVector x0 = initial_point(ctx.dim_in(), ctx.dim_out());
    for (auto &x : x0) x += opts.start_jitter * jitter_rng.gaussian();
    const Objective objective = [&ctx](const ParamVector &v) {
      return penalized_log_likelihood(v, ctx);
    };
    result.optimizer = maximize(objective, x0, opts.simplex);
    s_best = params_to_cholesky(result.optimizer.best_params, ctx.dim_in(),
                                ctx.dim_out())
                 .gram();
  } else if (opts.model == Model::Pauli) {
    const auto overlaps = detail::pauli_overlaps(ctx);
    const double floor = opts.probability_floor;
    // Weights square into probabilities, so the family stays completely
    // positive; the trace penalty again drives the total weight to 1.
    const Objective objective = [&overlaps, floor, k](const ParamVector &w) {
      const std::array<double, 4> probs = {w[0] * w[0], w[1] * w[1],
                                           w[2] * w[2], w[3] * w[3]};
      const double trace_term = probs[0] + probs[1] + probs[2] + probs[3];
      return detail::family_log_likelihood(overlaps, probs, floor) -
             k * trace_term;
    };
    ParamVector w0(4, 0.5);
    for (auto &x : w0) x += opts.start_jitter * jitter_rng.gaussian();
    result.optimizer = maximize(objective, w0, opts.simplex);
    const auto &w = result.optimizer.best_params;
    s_best = detail::pauli_family_choi(
        {w[0] * w[0], w[1] * w[1], w[2] * w[2], w[3] * w[3]});
  } else {
    const auto overlaps = detail::pauli_overlaps(ctx);
    const double floor = opts.probability_floor;
    const Objective objective = [&overlaps, floor, k](const ParamVector &t) {
      const double lambda = t[0];
      const double p0 = (1.0 + 3.0 * lambda) / 4.0;
      const double p = (1.0 - lambda) / 4.0;
      return detail::family_log_likelihood(overlaps, {p0, p, p, p}, floor) -
             k;  // Tr S = N exactly on this family
    };
    ParamVector t0(1, 0.0);
    t0[0] += opts.start_jitter * jitter_rng.gaussian();
    result.optimizer = maximize(objective, t0, opts.simplex);
    const double lambda = result.optimizer.best_params[0];
    const double p0 = (1.0 + 3.0 * lambda) / 4.0;
    const double p = (1.0 - lambda) / 4.0;
    s_best = detail::pauli_family_choi({p0, p, p, p});
  }

  result.choi = ChoiMatrix(ctx.dim_in(), ctx.dim_out(), std::move(s_best));
  result.log_likelihood = ctx.log_likelihood_choi(result.choi.matrix());
  result.penalized_log_likelihood =
      result.log_likelihood - k / double(ctx.dim_in()) * result.choi.trace();
  result.trace_s = result.choi.trace();
  result.tp_deviation = is_trace_preserving(result.choi).deviation;
  return result;
}

//=========================================================================
// Batch studies
//=========================================================================

namespace detail {

// Index-addressed fan-out; results depend only on the task index, never on
// scheduling.
inline void parallel_for(std::size_t count, unsigned jobs,
                         const std::function<void(std::size_t)> &body) {
  if (jobs == 0) jobs = std::thread::hardware_concurrency();
  if (jobs <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&]() {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  const unsigned n = std::min<std::size_t>(jobs, count);
  pool.reserve(n);
  for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
  for (auto &t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace detail

struct ScalingStudyResult {
  std::vector<std::size_t> sample_sizes;
  std::vector<double> errors;        // std dev of lambda_ML per K
  std::vector<double> lambda_means;  // mean of lambda_ML per K
  // Raw estimates, indexed [grid point][repetition].
  std::vector<std::vector<double>> lambdas;
  double fitted_slope = 0.0;         // log(error) vs log(K)
};

inline double sample_std(const std::vector<double> &xs) {
  const std::size_t n = xs.size();
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= double(n);
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / double(n - 1));
}

inline double sample_mean(const std::vector<double> &xs) {
  double mean = 0.0;
  for (double x : xs) mean += x;
  return mean / double(xs.size());
}

// Monte Carlo scaling of the statistical error: at each sample size K,
// `repetitions` independent simulations and reconstructions; the spread of
// the extracted lambda gives the error bar, and the log-log slope its
// scaling exponent.  Repetition seeds derive from (seed, grid index,
// repetition index) alone, so enlarging the grid or repetition count keeps
// earlier runs identical.
inline ScalingStudyResult study_error_scaling(
    const KrausSet &channel, const std::vector<std::size_t> &sample_sizes,
    std::size_t repetitions, std::uint64_t seed, Model model = Model::Full,
    const SimplexOptions &simplex = {}, unsigned jobs = 1) {
  if (repetitions < 5)
    throw InvalidArgument("study_error_scaling: need at least 5 repetitions");
  if (sample_sizes.empty())
    throw InvalidArgument("study_error_scaling: empty sample-size grid");
  const ChoiMatrix truth = choi_from_kraus(channel);

  ScalingStudyResult result;
  result.sample_sizes = sample_sizes;
  std::vector<std::vector<double>> lambdas(
      sample_sizes.size(), std::vector<double>(repetitions, 0.0));

  detail::parallel_for(
      sample_sizes.size() * repetitions, jobs, [&](std::size_t task) {
        const std::size_t gi = task / repetitions;
        const std::size_t rep = task % repetitions;
        const std::uint64_t grid_seed = mix_seed(seed, gi);
        const std::uint64_t data_seed = mix_seed(grid_seed, 2 * rep);
        const std::uint64_t opt_seed = mix_seed(grid_seed, 2 * rep + 1);
        const auto records =
            generate_records(truth, sample_sizes[gi], data_seed);
        ReconstructOptions opts;
        opts.model = model;
        opts.simplex = simplex;
        opts.seed = opt_seed;
        const auto rec = reconstruct(records, opts);
        lambdas[gi][rep] = extract_depolarizing_lambda(rec.choi);
      });

  result.lambdas = std::move(lambdas);
  for (const auto &row : result.lambdas) {
    result.errors.push_back(sample_std(row));
    result.lambda_means.push_back(sample_mean(row));
  }

  // Least-squares slope in log-log coordinates.
  const std::size_t n = sample_sizes.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += std::log(double(sample_sizes[i]));
    my += std::log(result.errors[i]);
  }
  mx /= double(n);
  my /= double(n);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = std::log(double(sample_sizes[i])) - mx;
    sxy += dx * (std::log(result.errors[i]) - my);
    sxx += dx * dx;
  }
  result.fitted_slope = sxy / sxx;
  return result;
}

struct DampingSweepPoint {
  double p_true = 0.0;
  double p_mean = 0.0;
  double p_std = 0.0;
};

// Fig.-2 style sweep: reconstruct the damping channel across a grid of
// true p values and report the extracted parameter's mean and spread.
inline std::vector<DampingSweepPoint> study_damping_sweep(
    const std::vector<double> &p_values, std::size_t sample_size,
    std::size_t repetitions, std::uint64_t seed,
    const SimplexOptions &simplex = {}, unsigned jobs = 1) {
  if (repetitions < 2)
    throw InvalidArgument("study_damping_sweep: need at least 2 repetitions");
  if (p_values.empty())
    throw InvalidArgument("study_damping_sweep: empty p grid");

  std::vector<std::vector<double>> estimates(
      p_values.size(), std::vector<double>(repetitions, 0.0));

  detail::parallel_for(
      p_values.size() * repetitions, jobs, [&](std::size_t task) {
        const std::size_t gi = task / repetitions;
        const std::size_t rep = task % repetitions;
        const ChoiMatrix truth = damping_choi(p_values[gi]);
        const std::uint64_t grid_seed = mix_seed(seed, gi);
        const std::uint64_t data_seed = mix_seed(grid_seed, 2 * rep);
        const std::uint64_t opt_seed = mix_seed(grid_seed, 2 * rep + 1);
        const auto records = generate_records(truth, sample_size, data_seed);
        ReconstructOptions opts;
        opts.simplex = simplex;
        opts.seed = opt_seed;
        const auto rec = reconstruct(records, opts);
        estimates[gi][rep] = extract_damping_p(rec.choi);
      });

  std::vector<DampingSweepPoint> rows;
  for (std::size_t gi = 0; gi < p_values.size(); ++gi)
    rows.push_back({p_values[gi], sample_mean(estimates[gi]),
                    sample_std(estimates[gi])});
  return rows;
}

}  // namespace cpmap

#endif  // CPMAP_RECONSTRUCT_HPP_
