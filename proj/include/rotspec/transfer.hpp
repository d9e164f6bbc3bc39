#pragma once

// Thermodynamic side of the localized entropy: de Bruijn transfer graphs for a
// locally constant potential, pressure and Gibbs data by power iteration,
// max-mean-cycle support functions, and the convex dual
//
//   H_m(w) <= inf_{|alpha| <= T}  P(alpha . Phi_m) - alpha . w .
//
// All entropies are in nats.

#include "rotspec/potential.hpp"
#include "rotspec/rational.hpp"

#include <Eigen/Core>

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace rotspec {

/// Nodes are the 3^(m-1) words of length m-1 (lexicographic = base-3 index);
/// edge e is the length-m word with index e, from node e / 3 to node
/// e mod 3^(m-1). Edge values are the truncated potential in double precision.
class TransferGraph {
 public:
  using EdgeValues = Eigen::Matrix<double, Eigen::Dynamic, 2>;

  explicit TransferGraph(const PotentialTable& table);
  /// Generic constructor: values.rows() must be 3^memory.
  TransferGraph(int memory, EdgeValues values);

  int memory() const noexcept { return memory_; }
  Eigen::Index node_count() const noexcept { return nodes_; }
  Eigen::Index edge_count() const noexcept { return values_.rows(); }
  Eigen::Index source(Eigen::Index e) const noexcept { return e / 3; }
  Eigen::Index target(Eigen::Index e) const noexcept { return e % nodes_; }
  Vec2d value(Eigen::Index e) const { return values_.row(e).transpose(); }
  const EdgeValues& values() const noexcept { return values_; }

 private:
  int memory_;
  Eigen::Index nodes_;
  EdgeValues values_;
};

TransferGraph build_graph(const PotentialTable& table);

struct PressureOptions {
  double tolerance = 1e-12;  // on successive log-eigenvalue estimates
  int max_iterations = 100000;
};

/// Perron data of the transfer matrix with entries exp(alpha . value(e)).
struct GibbsData {
  double pressure = 0;  // log spectral radius
  Vec2d alpha = Vec2d::Zero();
  Eigen::VectorXd right;             // sum-normalized (tiny entries may underflow)
  Eigen::VectorXd left;              // sum-normalized (tiny entries may underflow)
  Eigen::VectorXd log_right;         // logs of the Perron vectors, max entry 0
  Eigen::VectorXd log_left;
  Eigen::VectorXd edge_probability;  // stationary edge measure of the Gibbs chain
  Vec2d rv = Vec2d::Zero();          // gradient of the pressure
  double entropy = 0;
  int iterations = 0;
  bool converged = false;
};

/// Shifted power iteration on the edge list. `warm` seeds the Perron vectors
/// (e.g. from a nearby alpha). Non-convergence is reported via `converged`;
/// when the weights underflow the pressure is NaN.
GibbsData pressure(const TransferGraph& g, const Vec2d& alpha, const GibbsData* warm = nullptr,
                   const PressureOptions& options = {});

/// Maximum cycle mean of the given per-edge weights (Karp's dynamic program,
/// O(n) memory via two passes).
double max_cycle_mean(const TransferGraph& g, std::span<const double> edge_weights);

/// Support function of the rotation set of the graph's potential:
/// the maximum cycle mean of direction . value(e).
double karp_support(const TransferGraph& g, const Vec2d& direction);

/// Support values of the rotation set along `count` equally spaced unit directions.
struct SupportTable {
  std::vector<Vec2d> directions;
  std::vector<double> support;
};
SupportTable support_table(const TransferGraph& g, int count = 32);

/// Entropy -sum_u pi_u sum_v p_uv log p_uv of a stationary Markov chain.
/// Throws std::invalid_argument if `transitions` is not stochastic (1e-12) or
/// `stationary` is not an invariant distribution (1e-10).
double markov_entropy(const Eigen::MatrixXd& transitions, const Eigen::VectorXd& stationary);

class InfeasibleTarget : public std::domain_error {
 public:
  InfeasibleTarget(const Vec2d& direction, double excess);
  const Vec2d& direction() const noexcept { return direction_; }
  double excess() const noexcept { return excess_; }

 private:
  Vec2d direction_;
  double excess_;
};

/// Throws InfeasibleTarget naming a separating direction when w lies outside
/// the polygon described by `table` (tolerance 1e-9).
void check_feasible(const SupportTable& table, const Vec2d& w);

struct DualOptions {
  double alpha_cap = 1e3;   // T: the minimization runs over |alpha| <= T
  double tolerance = 1e-9;  // on |grad F|
  int max_iterations = 5000;
  double armijo = 1e-4;
  // Stop once the best bound improved by less than stall_tolerance over the
  // last stall_window iterations (boundary targets have no finite minimizer).
  int stall_window = 25;
  double stall_tolerance = 1e-10;
  PressureOptions pressure{};
};

struct SpectrumSample {
  Vec2d w = Vec2d::Zero();
  double estimate = 0;  // upper bound for H_m(w)
  Vec2d alpha_star = Vec2d::Zero();
  double alpha_cap = 0;
  int iterations = 0;
  int pressure_evaluations = 0;
  double gradient_norm = 0;
  bool converged = false;
  std::optional<double> primal_witness;  // lower bound, when one is known
};

/// Projected BFGS with backtracking on F(alpha) = P(alpha) - alpha . w over |alpha| <= T.
/// Every F(alpha) is an upper bound for sup{h(mu) : rv(mu) = w}; the smallest
/// one found is returned. `support` may be shared across targets on one graph.
SpectrumSample dual_localized_entropy(const TransferGraph& g, const Vec2d& w,
                                      const DualOptions& options = {},
                                      const SupportTable* support = nullptr);

struct PrimalSolution {
  double entropy = 0;
  Eigen::VectorXd edge_flow;  // stationary edge measure attaining `entropy`
  int iterations = 0;
  bool converged = false;
};

/// Entropy maximization over stationary edge measures with mean value w,
/// for graphs with at most 9 nodes. Independent of the pressure code: the
/// feasible face is found from enumerated simple cycles and the concave
/// program is solved by projected Newton ascent. Returns a feasible value
/// (a lower bound for H_m(w)).
PrimalSolution primal_constrained_entropy(const TransferGraph& g, const Vec2d& w);

}  // namespace rotspec
