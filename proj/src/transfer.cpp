#include "rotspec/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace rotspec {

namespace {

Eigen::Index power_of_three(int exponent) {
  Eigen::Index n = 1;
  for (int i = 0; i < exponent; ++i) n *= 3;
  return n;
}

TransferGraph::EdgeValues table_values(const PotentialTable& table) {
  TransferGraph::EdgeValues values(static_cast<Eigen::Index>(table.values.size()), 2);
  for (std::size_t e = 0; e < table.values.size(); ++e)
    values.row(static_cast<Eigen::Index>(e)) = to_double(table.values[e]).transpose();
  return values;
}

}  // namespace

TransferGraph::TransferGraph(const PotentialTable& table)
    : TransferGraph(table.memory, table_values(table)) {}

TransferGraph::TransferGraph(int memory, EdgeValues values)
    : memory_(memory), nodes_(0), values_(std::move(values)) {
  if (memory_ < 1) throw ValidationError("memory", "must be >= 1");
  nodes_ = power_of_three(memory_ - 1);
  if (values_.rows() != 3 * nodes_)
    throw std::invalid_argument("edge value count must be 3^memory");
  if (!values_.allFinite()) throw std::invalid_argument("edge values must be finite");
}

TransferGraph build_graph(const PotentialTable& table) { return TransferGraph(table); }

// ---------------------------------------------------------------------------
// Pressure

namespace {

struct PowerResult {
  Eigen::VectorXd vector;
  double radius = 0;
  int iterations = 0;
  bool converged = false;
};

// y = A v and y = A^T v for A_{source(e), target(e)} = weight(e). For memory
// m >= 2 the node count n is a multiple of 3: node u's out-edges 3u + s land
// on the consecutive nodes (3u mod n) + s, and node 3q + r is entered from
// the nodes q + j n/3.
void apply(const TransferGraph& g, const Eigen::VectorXd& weight, const Eigen::VectorXd& v, Eigen::VectorXd& y,
           bool transpose) {
  const Eigen::Index n = g.node_count();
  if (n % 3 != 0) {
    y.setZero();
    for (Eigen::Index e = 0; e < g.edge_count(); ++e) {
      if (transpose) y[g.target(e)] += v[g.source(e)] * weight[e];
      else y[g.source(e)] += weight[e] * v[g.target(e)];
    }
    return;
  }
  const Eigen::Index third = n / 3;
  if (!transpose) {
    Eigen::Index t = 0;
    for (Eigen::Index u = 0; u < n; ++u) {
      const Eigen::Index e = 3 * u;
      y[u] = weight[e] * v[t] + weight[e + 1] * v[t + 1] + weight[e + 2] * v[t + 2];
      t += 3;
      if (t == n) t = 0;
    }
  } else {
    for (Eigen::Index q = 0; q < third; ++q) {
      const double a = v[q], b = v[q + third], c = v[q + 2 * third];
      for (Eigen::Index r = 0; r < 3; ++r) {
        const Eigen::Index t = 3 * q + r;
        y[t] = a * weight[t] + b * weight[t + n] + c * weight[t + 2 * n];
      }
    }
  }
}

// Log Perron vector of A (transpose = false) or A^T, with
// log A_e = log_weight(e) <= 0. Weights at large |alpha| span more than the
// double range, so the iteration runs on the gauge-transformed matrix
// D^-1 A D, D = diag(exp(gauge)), and every few steps the iterate is folded
// into the gauge. The shift sigma tracks the radius estimate, which removes
// the peripheral spectrum of periodic components.
PowerResult perron(const TransferGraph& g, const Eigen::VectorXd& log_weight, bool transpose,
                   const Eigen::VectorXd* log_start, double radius_guess, const PressureOptions& options) {
  constexpr int fold_every = 16;
  const Eigen::Index n = g.node_count();
  const Eigen::Index edges = g.edge_count();
  Eigen::VectorXd gauge = (log_start && log_start->size() == n && log_start->allFinite())
                              ? Eigen::VectorXd(log_start->array() - log_start->maxCoeff())
                              : Eigen::VectorXd::Zero(n);
  Eigen::VectorXd weight(edges), v(n), y(n);
  auto refold = [&] {
    for (Eigen::Index e = 0; e < edges; ++e) {
      const Eigen::Index head = transpose ? g.source(e) : g.target(e);
      const Eigen::Index tail = transpose ? g.target(e) : g.source(e);
      weight[e] = std::exp(log_weight[e] + gauge[head] - gauge[tail]);
    }
    v.setConstant(1.0 / static_cast<double>(n));
  };
  refold();

  PowerResult out;
  double sigma = radius_guess > 0 ? radius_guess : weight.sum() / static_cast<double>(n);
  double previous_log = std::numeric_limits<double>::quiet_NaN();
  for (int it = 1; it <= options.max_iterations; ++it) {
    apply(g, weight, v, y, transpose);
    const double radius = y.sum();  // 1^T B v with sum(v) = 1
    if (!(radius > 0)) break;       // every weight underflowed; reported as unconverged
    Eigen::VectorXd next = (y + sigma * v) / (radius + sigma);
    const double change = (next - v).lpNorm<1>();
    const double current_log = std::log(radius);
    v = std::move(next);
    sigma = radius;
    out.iterations = it;
    out.radius = radius;
    if (std::abs(current_log - previous_log) < options.tolerance && change < options.tolerance) {
      out.converged = true;
      break;
    }
    previous_log = current_log;
    if (it % fold_every == 0) {
      gauge.array() += v.array().log();
      gauge.array() -= gauge.maxCoeff();
      refold();
    }
  }
  gauge.array() += v.array().log();
  gauge.array() -= gauge.maxCoeff();
  out.vector = std::move(gauge);
  return out;
}

double log_sum_exp(const Eigen::VectorXd& x) {
  const double top = x.maxCoeff();
  return top + std::log((x.array() - top).exp().sum());
}

Eigen::VectorXd normalized_exp(const Eigen::VectorXd& log_v) {
  Eigen::VectorXd v = (log_v.array() - log_v.maxCoeff()).exp().matrix();
  return v / v.sum();
}

}  // namespace

GibbsData pressure(const TransferGraph& g, const Vec2d& alpha, const GibbsData* warm,
                   const PressureOptions& options) {
  if (!alpha.allFinite()) throw std::invalid_argument("alpha must be finite");
  const Eigen::Index n = g.node_count();
  const Eigen::Index edges = g.edge_count();
  const Eigen::VectorXd exponent = g.values() * alpha;
  const double shift = exponent.maxCoeff();
  const Eigen::VectorXd log_weight = exponent.array() - shift;

  const bool use_warm = warm && warm->log_right.size() == n && warm->log_left.size() == n;
  double guess = 0;
  if (use_warm && warm->converged) guess = std::exp(warm->pressure - shift);
  if (!std::isfinite(guess)) guess = 0;

  const PowerResult right = perron(g, log_weight, false, use_warm ? &warm->log_right : nullptr, guess, options);
  const PowerResult left = perron(g, log_weight, true, use_warm ? &warm->log_left : nullptr, right.radius, options);

  GibbsData out;
  out.alpha = alpha;
  out.log_right = right.vector;
  out.log_left = left.vector;
  out.right = normalized_exp(right.vector);
  out.left = normalized_exp(left.vector);
  out.iterations = right.iterations + left.iterations;
  out.converged = right.converged && left.converged;

  // Edge measure l_u A_e r_v and transitions p_e = A_e r_v / (A r)_u, in logs.
  const Eigen::VectorXd& R = out.log_right;
  const Eigen::VectorXd& L = out.log_left;
  Eigen::VectorXd forward(edges), log_flow(edges);
  for (Eigen::Index e = 0; e < edges; ++e) {
    forward[e] = log_weight[e] + R[g.target(e)];
    log_flow[e] = L[g.source(e)] + forward[e];
  }
  Eigen::VectorXd log_row = Eigen::VectorXd::Constant(n, -std::numeric_limits<double>::infinity());
  for (Eigen::Index e = 0; e < edges; ++e) {
    double& row = log_row[g.source(e)];
    const double hi = std::max(row, forward[e]);
    row = hi + std::log(std::exp(row - hi) + std::exp(forward[e] - hi));
  }
  const double log_total = log_sum_exp(log_flow);
  const double log_overlap = log_sum_exp(L + R);
  if (!std::isfinite(log_total) || !std::isfinite(log_overlap)) {
    out.converged = false;
    out.pressure = std::numeric_limits<double>::quiet_NaN();
    out.edge_probability = Eigen::VectorXd::Zero(edges);
    return out;
  }
  Eigen::VectorXd flow = (log_flow.array() - log_total).exp().matrix();
  flow /= flow.sum();

  // Rayleigh quotient l^T A r / l^T r.
  out.pressure = shift + log_total - log_overlap;
  out.rv = g.values().transpose() * flow;
  double entropy = 0;
  for (Eigen::Index e = 0; e < edges; ++e) {
    if (flow[e] <= 0) continue;
    entropy -= flow[e] * (forward[e] - log_row[g.source(e)]);
  }
  out.entropy = entropy;
  out.edge_probability = std::move(flow);
  return out;
}

// ---------------------------------------------------------------------------
// Karp

double max_cycle_mean(const TransferGraph& g, std::span<const double> edge_weights) {
  const Eigen::Index n = g.node_count();
  const Eigen::Index edges = g.edge_count();
  if (static_cast<Eigen::Index>(edge_weights.size()) != edges)
    throw std::invalid_argument("one weight per edge required");
  constexpr double neg_inf = -std::numeric_limits<double>::infinity();

  // D_k(v): heaviest k-edge walk from node 0 to v. The full-shift de Bruijn
  // graph is strongly connected, so a single source suffices. Node v has
  // exactly three incoming edges, v + j n for j = 0, 1, 2.
  auto relax = [&](const std::vector<double>& prev, std::vector<double>& next) {
    const auto w = edge_weights.data();
    if (n % 3 == 0) {
      const Eigen::Index third = n / 3;
      for (Eigen::Index q = 0; q < third; ++q) {
        const double a = prev[static_cast<std::size_t>(q)];
        const double b = prev[static_cast<std::size_t>(q + third)];
        const double c = prev[static_cast<std::size_t>(q + 2 * third)];
        for (Eigen::Index r = 0; r < 3; ++r) {
          const Eigen::Index t = 3 * q + r;
          next[static_cast<std::size_t>(t)] = std::max({a + w[t], b + w[t + n], c + w[t + 2 * n]});
        }
      }
      return;
    }
    for (Eigen::Index v = 0; v < n; ++v) {
      double best = neg_inf;
      for (Eigen::Index j = 0; j < 3; ++j) {
        const Eigen::Index e = v + j * n;
        best = std::max(best, prev[static_cast<std::size_t>(e / 3)] + w[e]);
      }
      next[static_cast<std::size_t>(v)] = best;
    }
  };

  std::vector<double> current(static_cast<std::size_t>(n), neg_inf), next(static_cast<std::size_t>(n));
  current[0] = 0;
  for (Eigen::Index k = 0; k < n; ++k) {
    relax(current, next);
    std::swap(current, next);
  }
  const std::vector<double> last = current;  // D_n

  // Second pass: min_k (D_n(v) - D_k(v)) / (n - k) without storing all rows.
  std::vector<double> worst(static_cast<std::size_t>(n), std::numeric_limits<double>::infinity());
  std::fill(current.begin(), current.end(), neg_inf);
  current[0] = 0;
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index v = 0; v < n; ++v) {
      const auto i = static_cast<std::size_t>(v);
      if (last[i] == neg_inf || current[i] == neg_inf) continue;
      worst[i] = std::min(worst[i], (last[i] - current[i]) / static_cast<double>(n - k));
    }
    relax(current, next);
    std::swap(current, next);
  }
  double best = neg_inf;
  for (Eigen::Index v = 0; v < n; ++v) {
    const auto i = static_cast<std::size_t>(v);
    if (last[i] != neg_inf) best = std::max(best, worst[i]);
  }
  return best;
}

double karp_support(const TransferGraph& g, const Vec2d& direction) {
  if (direction.isZero(0)) throw std::invalid_argument("support function needs a nonzero direction");
  const Eigen::VectorXd projected = g.values() * direction;
  return max_cycle_mean(g, std::span<const double>(projected.data(), static_cast<std::size_t>(projected.size())));
}

SupportTable support_table(const TransferGraph& g, int count) {
  if (count < 3) throw std::invalid_argument("need at least three directions");
  SupportTable table;
  for (int i = 0; i < count; ++i) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(count);
    table.directions.emplace_back(std::cos(angle), std::sin(angle));
    table.support.push_back(karp_support(g, table.directions.back()));
  }
  return table;
}

// ---------------------------------------------------------------------------
// Markov entropy

double markov_entropy(const Eigen::MatrixXd& transitions, const Eigen::VectorXd& stationary) {
  const Eigen::Index n = transitions.rows();
  if (transitions.cols() != n || stationary.size() != n || n == 0)
    throw std::invalid_argument("transition matrix must be square and match the distribution");
  if ((transitions.array() < 0).any()) throw std::invalid_argument("negative transition probability");
  for (Eigen::Index u = 0; u < n; ++u) {
    if (std::abs(transitions.row(u).sum() - 1.0) > 1e-12)
      throw std::invalid_argument("row " + std::to_string(u) + " does not sum to 1");
  }
  if ((stationary.array() < 0).any() || std::abs(stationary.sum() - 1.0) > 1e-10)
    throw std::invalid_argument("stationary vector is not a distribution");
  if ((stationary.transpose() * transitions - stationary.transpose()).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("distribution is not invariant under the chain");
  double h = 0;
  for (Eigen::Index u = 0; u < n; ++u) {
    for (Eigen::Index v = 0; v < n; ++v) {
      const double p = transitions(u, v);
      if (p > 0) h -= stationary[u] * p * std::log(p);
    }
  }
  return h;
}

// ---------------------------------------------------------------------------
// Dual solver

namespace {

std::string describe_direction(const Vec2d& d, double excess) {
  std::ostringstream os;
  os.precision(6);
  os << "target outside the rotation set: separated along direction (" << d.x() << ", " << d.y()
     << ") by " << excess;
  return os.str();
}

Vec2d project_to_ball(const Vec2d& alpha, double cap) {
  const double norm = alpha.norm();
  return norm > cap ? Vec2d(alpha * (cap / norm)) : alpha;
}

}  // namespace

InfeasibleTarget::InfeasibleTarget(const Vec2d& direction, double excess)
    : std::domain_error(describe_direction(direction, excess)), direction_(direction), excess_(excess) {}

void check_feasible(const SupportTable& table, const Vec2d& w) {
  for (std::size_t i = 0; i < table.directions.size(); ++i) {
    const double excess = table.directions[i].dot(w) - table.support[i];
    if (excess > 1e-9) throw InfeasibleTarget(table.directions[i], excess);
  }
}

SpectrumSample dual_localized_entropy(const TransferGraph& g, const Vec2d& w, const DualOptions& options,
                                      const SupportTable* support) {
  if (!(options.alpha_cap > 0)) throw ValidationError("alpha_cap", "must be positive");
  if (!w.allFinite()) throw ValidationError("target", "must be finite");
  if (support) {
    check_feasible(*support, w);
  } else {
    check_feasible(support_table(g), w);
  }

  SpectrumSample sample;
  sample.w = w;
  sample.alpha_cap = options.alpha_cap;

  Vec2d alpha = Vec2d::Zero();
  GibbsData gibbs = pressure(g, alpha, nullptr, options.pressure);
  sample.pressure_evaluations = 1;
  double value = gibbs.pressure - alpha.dot(w);
  sample.estimate = value;
  sample.alpha_star = alpha;

  // Projected BFGS on the 2x2 inverse Hessian, Armijo backtracking along the
  // projected path; falls back to steepest descent when the model fails.
  Eigen::Matrix2d inverse_hessian = Eigen::Matrix2d::Identity();
  bool model_is_identity = true;
  int iteration = 0;
  std::vector<double> history;
  for (; iteration < options.max_iterations; ++iteration) {
    const Vec2d gradient = gibbs.rv - w;
    const Vec2d projected_gradient = alpha - project_to_ball(alpha - gradient, options.alpha_cap);
    sample.gradient_norm = projected_gradient.norm();
    if (sample.gradient_norm < options.tolerance) {
      sample.converged = true;
      break;
    }
    Vec2d direction = -(inverse_hessian * gradient);
    if (!(gradient.dot(direction) < 0)) {
      inverse_hessian.setIdentity();
      model_is_identity = true;
      direction = -gradient;
    }
    bool accepted = false;
    Vec2d delta = Vec2d::Zero();
    GibbsData candidate;
    double candidate_value = value;
    for (double t = 1.0; t > 1e-20; t *= 0.5) {
      const Vec2d trial = project_to_ball(alpha + t * direction, options.alpha_cap);
      delta = trial - alpha;
      if (delta.norm() <= 1e-15 * (1.0 + alpha.norm())) break;
      candidate = pressure(g, trial, &gibbs, options.pressure);
      ++sample.pressure_evaluations;
      // An unconverged pressure is not a certified value; shrink instead.
      if (!candidate.converged) continue;
      candidate_value = candidate.pressure - trial.dot(w);
      if (candidate_value <= value + options.armijo * gradient.dot(delta)) {
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      if (model_is_identity) break;  // stalled: on the cap sphere or at machine precision
      inverse_hessian.setIdentity();
      model_is_identity = true;
      continue;
    }
    const Vec2d change = candidate.rv - gibbs.rv;
    const double curvature = delta.dot(change);
    if (curvature > 1e-14 * delta.norm() * change.norm()) {
      const double rho = 1.0 / curvature;
      const Eigen::Matrix2d left = Eigen::Matrix2d::Identity() - rho * delta * change.transpose();
      inverse_hessian = left * inverse_hessian * left.transpose() + rho * delta * delta.transpose();
      model_is_identity = false;
    }
    alpha += delta;
    gibbs = std::move(candidate);
    value = candidate_value;
    if (value < sample.estimate) {
      sample.estimate = value;
      sample.alpha_star = alpha;
    }
    history.push_back(sample.estimate);
    const auto window = static_cast<std::size_t>(std::max(options.stall_window, 1));
    if (history.size() > window &&
        history[history.size() - 1 - window] - sample.estimate < options.stall_tolerance) {
      ++iteration;
      break;
    }
  }
  sample.iterations = iteration;
  return sample;
}

}  // namespace rotspec
