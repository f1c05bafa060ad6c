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

#ifndef CPMAP_SIMPLEX_HPP_
#define CPMAP_SIMPLEX_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numeric>
#include <vector>

#include "cpmap/errors.hpp"
#include "cpmap/likelihood.hpp"

namespace cpmap {

//=========================================================================
// Downhill simplex maximization with restarts.
//
// Standard Nelder-Mead moves (reflect, expand, contract, shrink), run as a
// maximizer.  The simplex stalls easily in 16 dimensions, so after each
// convergence the simplex is re-seeded around the incumbent best with the
// step halved.  Everything is deterministic for a fixed starting point.
//=========================================================================

struct SimplexOptions {
  double initial_step = 0.1;
  double reflection = 1.0;
  double expansion = 2.0;
  double contraction = 0.5;
  double shrink = 0.5;
  long max_evals = 200000;
  // Relative value spread |f_best - f_worst| / (|f_best| + 1e-30).
  double tol_f = 1e-8;
  int restarts = 3;
};

struct OptimReport {
  ParamVector best_params;
  double best_value = 0.0;
  long evaluations = 0;
  bool converged = false;
  // Best value at the end of each round (initial round plus restarts).
  std::vector<double> restart_values;
};

using Objective = std::function<double(const ParamVector &)>;

namespace detail {

struct SimplexState {
  std::vector<ParamVector> x;  // n+1 vertices
  std::vector<double> f;
  std::vector<std::size_t> order;  // by descending f, stable

  void sort() {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return f[a] > f[b]; });
  }
  const ParamVector &best_x() const { return x[order.front()]; }
  double best_f() const { return f[order.front()]; }
  double worst_f() const { return f[order.back()]; }
  double second_worst_f() const { return f[order[order.size() - 2]]; }
};

}  // namespace detail

inline OptimReport maximize(const Objective &objective, const ParamVector &x0,
                            const SimplexOptions &opts = {}) {
  const std::size_t n = x0.size();
  if (n == 0) throw InvalidArgument("maximize: empty starting point");
  if (opts.max_evals <= static_cast<long>(n) + 1)
    throw InvalidArgument("maximize: max_evals must exceed dim + 1");

  OptimReport report;
  report.evaluations = 0;

  const auto eval = [&](const ParamVector &p) {
    ++report.evaluations;
    return objective(p);
  };

  const double f0 = eval(x0);
  if (!std::isfinite(f0))
    throw ObjectiveNotFinite("maximize: objective not finite at x0");

  ParamVector best = x0;
  double best_f = f0;

  // Ties within kTieTol accept the reflected point; keeps runs that hit
  // exactly equal vertex values deterministic.
  constexpr double kTieTol = 1e-15;

  double step = opts.initial_step;
  bool converged = false;

  for (int round = 0; round <= opts.restarts; ++round) {
    detail::SimplexState s;
    s.x.assign(n + 1, best);
    s.f.assign(n + 1, best_f);
    s.order.assign(n + 1, 0);
    bool budget_left = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (report.evaluations >= opts.max_evals) {
        budget_left = false;
        // Unevaluated vertices must never be selected.
        for (std::size_t j = i; j < n; ++j)
          s.f[j + 1] = -std::numeric_limits<double>::infinity();
        break;
      }
      s.x[i + 1][i] += step;
      s.f[i + 1] = eval(s.x[i + 1]);
    }

    converged = false;
    while (budget_left) {
      s.sort();
      if (s.best_f() > best_f) {
        best_f = s.best_f();
        best = s.best_x();
      }
      const double spread = std::abs(s.best_f() - s.worst_f());
      if (spread <= opts.tol_f * (std::abs(s.best_f()) + 1e-30)) {
        converged = true;
        break;
      }
      if (report.evaluations >= opts.max_evals) {
        budget_left = false;
        break;
      }

      const std::size_t worst = s.order.back();

      // Centroid of all vertices but the worst.
      ParamVector centroid(n, 0.0);
      for (std::size_t v = 0; v <= n; ++v) {
        if (v == worst) continue;
        for (std::size_t i = 0; i < n; ++i) centroid[i] += s.x[v][i];
      }
      for (double &ci : centroid) ci /= static_cast<double>(n);

      ParamVector reflected(n);
      for (std::size_t i = 0; i < n; ++i)
        reflected[i] =
            centroid[i] + opts.reflection * (centroid[i] - s.x[worst][i]);
      const double f_reflected = eval(reflected);

      if (f_reflected >= s.best_f() - kTieTol) {
        // Try to expand past the best vertex.
        if (report.evaluations < opts.max_evals) {
          ParamVector expanded(n);
          for (std::size_t i = 0; i < n; ++i)
            expanded[i] =
                centroid[i] + opts.expansion * (reflected[i] - centroid[i]);
          const double f_expanded = eval(expanded);
          if (f_expanded > f_reflected) {
            s.x[worst] = std::move(expanded);
            s.f[worst] = f_expanded;
            continue;
          }
        }
        s.x[worst] = std::move(reflected);
        s.f[worst] = f_reflected;
        continue;
      }
      if (f_reflected >= s.second_worst_f() - kTieTol) {
        s.x[worst] = std::move(reflected);
        s.f[worst] = f_reflected;
        continue;
      }

      // Contraction, outside toward the reflected point when it improved
      // on the worst vertex, inside otherwise.
      const bool outside = f_reflected >= s.worst_f() - kTieTol;
      if (report.evaluations >= opts.max_evals) {
        budget_left = false;
        break;
      }
      ParamVector contracted(n);
      const ParamVector &target = outside ? reflected : s.x[worst];
      for (std::size_t i = 0; i < n; ++i)
        contracted[i] =
            centroid[i] + opts.contraction * (target[i] - centroid[i]);
      const double f_contracted = eval(contracted);
      const double bar = outside ? f_reflected : s.worst_f();
      if (f_contracted >= bar - kTieTol) {
        s.x[worst] = std::move(contracted);
        s.f[worst] = f_contracted;
        continue;
      }

      // Shrink toward the best vertex.
      const std::size_t keep = s.order.front();
      for (std::size_t v = 0; v <= n; ++v) {
        if (v == keep) continue;
        if (report.evaluations >= opts.max_evals) {
          budget_left = false;
          break;
        }
        for (std::size_t i = 0; i < n; ++i)
          s.x[v][i] = s.x[keep][i] + opts.shrink * (s.x[v][i] - s.x[keep][i]);
        s.f[v] = eval(s.x[v]);
      }
    }

    s.sort();
    if (s.best_f() > best_f) {
      best_f = s.best_f();
      best = s.best_x();
    }
    report.restart_values.push_back(best_f);
    step *= 0.5;
    if (!budget_left) break;
  }

  report.best_params = std::move(best);
  report.best_value = best_f;
  report.converged = converged;
  return report;
}

// Parameters of C = I/sqrt(M), i.e. S = I/M: the maximally mixing channel,
// trace preserving exactly.  The reconstruction starts here.
inline ParamVector initial_point(std::size_t dim_in, std::size_t dim_out) {
  const std::size_t d = dim_in * dim_out;
  ParamVector v(d * d, 0.0);
  const double diag = 1.0 / std::sqrt(static_cast<double>(dim_out));
  for (std::size_t i = 0; i < d; ++i) v[i] = diag;
  return v;
}

}  // namespace cpmap

#endif  // CPMAP_SIMPLEX_HPP_
