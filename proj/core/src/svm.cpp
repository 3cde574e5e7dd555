// Copyright 2026 The picosvm Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include "picosvm/svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "picosvm/errors.hpp"
#include "picosvm/shuffle.hpp"

namespace picosvm::svm {

namespace {

double dot(std::span<const double> w, const SparseVector& x) {
  double sum = 0.0;
  for (const auto& c : x.components) sum += w[c.index] * c.value;
  return sum;
}

double hinge_sum(std::span<const double> scores, std::span<const int> y, double b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    sum += std::max(0.0, 1.0 - y[i] * (scores[i] + b));
  }
  return sum;
}

// Active instances containing each feature, for kernel columns
// K(i, .) = x_i . X restricted to the active set.
class Postings {
 public:
  void build(std::span<const SparseVector> X, std::span<const std::size_t> active,
             std::size_t dim) {
    start_.assign(dim + 1, 0);
    for (std::size_t k : active) {
      for (const auto& c : X[k].components) ++start_[c.index + 1];
    }
    std::partial_sum(start_.begin(), start_.end(), start_.begin());
    entries_.resize(start_.back());
    std::vector<std::size_t> fill(start_.begin(), start_.end() - 1);
    for (std::size_t k : active) {
      for (const auto& c : X[k].components) entries_[fill[c.index]++] = {k, c.value};
    }
  }

  /// Writes out[k] = x . X[k] for active k; other entries are left alone.
  void column(const SparseVector& x, std::span<const std::size_t> active,
              std::vector<double>& out) const {
    for (std::size_t k : active) out[k] = 0.0;
    for (const auto& c : x.components) {
      for (std::size_t e = start_[c.index]; e < start_[c.index + 1]; ++e) {
        out[entries_[e].first] += c.value * entries_[e].second;
      }
    }
  }

 private:
  std::vector<std::size_t> start_;
  std::vector<std::pair<std::size_t, double>> entries_;
};

void check_inputs(std::span<const SparseVector> X, std::span<const int> y) {
  if (X.size() != y.size()) {
    throw ContractError("train: " + std::to_string(X.size()) + " vectors but " +
                        std::to_string(y.size()) + " labels");
  }
  if (X.size() < 2) throw ContractError("train: need at least two instances");
  bool has_pos = false;
  bool has_neg = false;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i] != 1 && y[i] != -1) {
      throw ContractError("train: labels must be +1 or -1, got " + std::to_string(y[i]));
    }
    (y[i] > 0 ? has_pos : has_neg) = true;
    if (X[i].dim != X[0].dim) throw ContractError("train: vectors have different dimensions");
    for (const auto& c : X[i].components) {
      if (c.index >= X[i].dim) throw ContractError("train: component index out of range");
    }
  }
  if (!has_pos || !has_neg) throw ValidationError("train: both classes must be present");
}

}  // namespace

TrainingConfig TrainingConfig::defaults_for(Task task) {
  TrainingConfig config;
  config.task = task;
  config.c = task == Task::O ? 0.6 : 1.0;
  return config;
}

void TrainingConfig::validate() const {
  if (!(c > 0.0) || !std::isfinite(c)) throw ValidationError("C must be positive");
  if (!(tol > 0.0)) throw ValidationError("tol must be positive");
  if (max_epochs < 1) throw ValidationError("max_epochs must be at least 1");
}

std::vector<int> to_signed(std::span<const int> binary_labels) {
  std::vector<int> out;
  out.reserve(binary_labels.size());
  for (int label : binary_labels) {
    if (label != 0 && label != 1) {
      throw ContractError("expected binary label 0 or 1, got " + std::to_string(label));
    }
    out.push_back(label == 1 ? 1 : -1);
  }
  return out;
}

double optimal_bias(std::span<const double> scores, std::span<const int> y) {
  // sum_i max(0, 1 - y_i (s_i + b)) is convex and piecewise linear in b.
  // A positive contributes slope -1 left of 1 - s_i, a negative slope +1
  // right of -1 - s_i.
  struct Knot {
    double at;
    bool positive;
  };
  std::vector<Knot> knots;
  knots.reserve(scores.size());
  std::size_t n_pos = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (y[i] > 0) {
      knots.push_back({1.0 - scores[i], true});
      ++n_pos;
    } else {
      knots.push_back({-1.0 - scores[i], false});
    }
  }
  if (knots.empty()) return 0.0;
  std::sort(knots.begin(), knots.end(), [](const Knot& a, const Knot& b) { return a.at < b.at; });

  // Right derivative at t: #{negative knots <= t} - #{positive knots > t}.
  long long slope = -static_cast<long long>(n_pos);
  for (std::size_t i = 0; i < knots.size();) {
    const double at = knots[i].at;
    std::size_t j = i;
    for (; j < knots.size() && knots[j].at == at; ++j) slope += 1;
    if (slope > 0) return at;
    if (slope == 0) return j < knots.size() ? 0.5 * (at + knots[j].at) : at;
    i = j;
  }
  return knots.back().at;
}

LinearModel train(std::span<const SparseVector> X, std::span<const int> y,
                  const TrainingConfig& config) {
  config.validate();
  check_inputs(X, y);

  // Sequential minimal optimization on the dual
  //   max sum_i a_i - (1/2) a' Q a,  Q_ij = y_i y_j x_i.x_j,
  //   0 <= a_i <= C,  sum_i y_i a_i = 0,
  // with second-order working-set selection and shrinking. G = Q a - 1 is
  // kept for the active set and rebuilt for everyone from w at each check.
  const std::size_t n = X.size();
  const std::size_t dim = X[0].dim;
  const double C = config.c;
  constexpr double kTau = 1e-12;
  constexpr double kViolationFloor = 1e-12;
  const std::size_t check_interval = std::min<std::size_t>(n, 1000);
  const std::size_t step_budget = static_cast<std::size_t>(config.max_epochs) * n;

  std::vector<double> alpha(n, 0.0);
  std::vector<double> grad(n, -1.0);
  std::vector<double> w(dim, 0.0);
  std::vector<double> diag(n);
  for (std::size_t i = 0; i < n; ++i) diag[i] = X[i].squared_norm();
  std::vector<double> col_i(n);
  std::vector<double> col_j(n);
  std::vector<double> scores(n);

  // Scan order; decides ties in working-set selection.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(config.seed);
  portable_shuffle(std::span<std::size_t>(order), rng);
  std::vector<std::size_t> active = order;
  Postings postings;
  postings.build(X, active, dim);

  const auto in_up = [&](std::size_t t) { return y[t] > 0 ? alpha[t] < C : alpha[t] > 0.0; };
  const auto in_low = [&](std::size_t t) { return y[t] > 0 ? alpha[t] > 0.0 : alpha[t] < C; };
  // Largest violation m(a) - M(a) over the given instances.
  const auto violation = [&](std::span<const std::size_t> set) {
    double up = -std::numeric_limits<double>::infinity();
    double low = std::numeric_limits<double>::infinity();
    for (std::size_t t : set) {
      const double v = -y[t] * grad[t];
      if (in_up(t)) up = std::max(up, v);
      if (in_low(t)) low = std::min(low, v);
    }
    return up - low;
  };

  // One SMO pair update on the active set; false once no pair violates.
  const auto smo_step = [&]() {
    double g_max = -std::numeric_limits<double>::infinity();
    std::size_t i = n;
    for (std::size_t t : active) {
      if (in_up(t) && -y[t] * grad[t] > g_max) {
        g_max = -y[t] * grad[t];
        i = t;
      }
    }
    if (i == n) return false;
    postings.column(X[i], active, col_i);

    double g_min = std::numeric_limits<double>::infinity();
    double best_gain = std::numeric_limits<double>::infinity();
    std::size_t j = n;
    for (std::size_t t : active) {
      if (!in_low(t)) continue;
      const double v = -y[t] * grad[t];
      g_min = std::min(g_min, v);
      const double b_it = g_max - v;
      if (b_it > 0.0) {
        double a_it = diag[i] + diag[t] - 2.0 * col_i[t];
        if (a_it <= 0.0) a_it = kTau;
        const double gain = -(b_it * b_it) / a_it;
        if (gain <= best_gain) {
          best_gain = gain;
          j = t;
        }
      }
    }
    if (j == n || g_max - g_min <= kViolationFloor) return false;
    postings.column(X[j], active, col_j);

    // Two-variable subproblem, clipped to the box along the constraint line.
    const double q_ij = y[i] * y[j] * col_i[j];
    const double old_ai = alpha[i];
    const double old_aj = alpha[j];
    double ai = old_ai;
    double aj = old_aj;
    if (y[i] != y[j]) {
      double quad = diag[i] + diag[j] + 2.0 * q_ij;
      if (quad <= 0.0) quad = kTau;
      const double delta = (-grad[i] - grad[j]) / quad;
      const double diff = ai - aj;
      ai += delta;
      aj += delta;
      if (diff > 0.0) {
        if (aj < 0.0) {
          aj = 0.0;
          ai = diff;
        }
      } else if (ai < 0.0) {
        ai = 0.0;
        aj = -diff;
      }
      if (diff > 0.0) {
        if (ai > C) {
          ai = C;
          aj = C - diff;
        }
      } else if (aj > C) {
        aj = C;
        ai = C + diff;
      }
    } else {
      double quad = diag[i] + diag[j] - 2.0 * q_ij;
      if (quad <= 0.0) quad = kTau;
      const double delta = (grad[i] - grad[j]) / quad;
      const double sum = ai + aj;
      ai -= delta;
      aj += delta;
      if (sum > C) {
        if (ai > C) {
          ai = C;
          aj = sum - C;
        }
      } else if (aj < 0.0) {
        aj = 0.0;
        ai = sum;
      }
      if (sum > C) {
        if (aj > C) {
          aj = C;
          ai = sum - C;
        }
      } else if (ai < 0.0) {
        ai = 0.0;
        aj = sum;
      }
    }
    const double d_i = ai - old_ai;
    const double d_j = aj - old_aj;
    if (d_i == 0.0 && d_j == 0.0) return false;
    alpha[i] = ai;
    alpha[j] = aj;
    for (std::size_t k : active) {
      grad[k] += y[k] * (y[i] * d_i * col_i[k] + y[j] * d_j * col_j[k]);
    }
    for (const auto& c : X[i].components) w[c.index] += y[i] * d_i * c.value;
    for (const auto& c : X[j].components) w[c.index] += y[j] * d_j * c.value;
    return true;
  };

  // Bound variables that the current extreme violations say will stay at
  // their bound leave the active set.
  const auto shrink = [&]() {
    double up = -std::numeric_limits<double>::infinity();   // max over I_up of -y G
    double low = -std::numeric_limits<double>::infinity();  // max over I_low of y G
    for (std::size_t t : active) {
      if (in_up(t)) up = std::max(up, -y[t] * grad[t]);
      if (in_low(t)) low = std::max(low, y[t] * grad[t]);
    }
    const auto stays_at_bound = [&](std::size_t t) {
      if (alpha[t] >= C) return y[t] > 0 ? -grad[t] > up : -grad[t] > low;
      if (alpha[t] <= 0.0) return y[t] > 0 ? grad[t] > low : grad[t] > up;
      return false;
    };
    const auto kept = std::stable_partition(active.begin(), active.end(),
                                            [&](std::size_t t) { return !stays_at_bound(t); });
    if (kept == active.end()) return;
    active.erase(kept, active.end());
    postings.build(X, active, dim);
  };

  LinearModel model;
  model.config = config;
  model.w.assign(dim, 0.0);
  double best_primal = std::numeric_limits<double>::infinity();

  // Refreshes every gradient from w, updates the incumbent (w with its
  // exactly optimal bias) and returns the dual value.
  const auto check = [&]() {
    double w_sq = 0.0;
    for (double v : w) w_sq += v * v;
    double alpha_sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      scores[k] = dot(w, X[k]);
      grad[k] = y[k] * scores[k] - 1.0;
      alpha_sum += alpha[k];
    }
    const double bias = optimal_bias(scores, y);
    const double primal = 0.5 * w_sq + C * hinge_sum(scores, y, bias);
    if (primal < best_primal) {
      best_primal = primal;
      model.w = w;
      model.b = bias;
    }
    return alpha_sum - 0.5 * w_sq;
  };

  // An epoch is n pair updates; the incumbent objective is recorded at each
  // epoch boundary and at exit.
  std::size_t steps = 0;
  while (true) {
    bool active_optimal = false;
    for (std::size_t s = 0; s < check_interval && steps < step_budget; ++s) {
      if (!smo_step()) {
        active_optimal = true;
        break;
      }
      ++steps;
    }
    const double dual = check();
    const double gap = std::max(0.0, best_primal - dual);
    model.status.duality_gap = gap;

    bool done = gap <= config.tol * (1.0 + std::abs(dual));
    if (!done && active_optimal) {
      if (active.size() < n && violation(order) > kViolationFloor) {
        active = order;
        postings.build(X, active, dim);
      } else {
        done = true;
      }
    }
    const bool out_of_budget = steps >= step_budget;
    while (model.status.objective_trace.size() < steps / n) {
      model.status.objective_trace.push_back(best_primal);
    }
    if (done || out_of_budget) {
      if (model.status.objective_trace.empty() ||
          model.status.objective_trace.size() * n < steps) {
        model.status.objective_trace.push_back(best_primal);
      }
      model.status.converged = done;
      break;
    }
    if (!active_optimal) shrink();
  }
  model.status.epochs = static_cast<int>(model.status.objective_trace.size());
  model.objective_at_convergence = objective(model, X, y);
  return model;
}

double decision(const LinearModel& model, const SparseVector& x) {
  if (x.dim != model.w.size()) {
    throw ContractError("vector dimension " + std::to_string(x.dim) +
                        " does not match model dimension " + std::to_string(model.w.size()));
  }
  return dot(model.w, x) + model.b;
}

int predict(const LinearModel& model, const SparseVector& x) {
  return decision(model, x) >= 0.0 ? 1 : 0;
}

SlackSummary slack(const LinearModel& model, std::span<const SparseVector> X,
                   std::span<const int> y) {
  if (X.size() != y.size()) throw ContractError("slack: vector and label counts differ");
  SlackSummary summary;
  summary.xi.reserve(X.size());
  for (std::size_t i = 0; i < X.size(); ++i) {
    const double xi = std::max(0.0, 1.0 - y[i] * decision(model, X[i]));
    summary.xi.push_back(xi);
    summary.total_slack += xi;
  }
  return summary;
}

double objective(const LinearModel& model, std::span<const SparseVector> X,
                 std::span<const int> y) {
  double w_sq = 0.0;
  for (double v : model.w) w_sq += v * v;
  return 0.5 * w_sq + model.config.c * slack(model, X, y).total_slack;
}

}  // namespace picosvm::svm
