#include "rotspec/geometry.hpp"
#include "rotspec/transfer.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <map>

namespace rotspec {

namespace {

constexpr double kFaceTolerance = 1e-9;

struct Cycle {
  std::vector<Eigen::Index> edges;
  Vec2d mean;
};

// Every simple cycle, listed once from its smallest node.
std::vector<Cycle> simple_cycles(const TransferGraph& g) {
  std::vector<Cycle> cycles;
  const Eigen::Index n = g.node_count();
  std::vector<bool> on_path(static_cast<std::size_t>(n), false);
  std::vector<Eigen::Index> path;
  std::function<void(Eigen::Index, Eigen::Index)> extend = [&](Eigen::Index start, Eigen::Index node) {
    for (Eigen::Index s = 0; s < 3; ++s) {
      const Eigen::Index e = 3 * node + s;
      const Eigen::Index next = g.target(e);
      if (next < start) continue;
      path.push_back(e);
      if (next == start) {
        Vec2d sum = Vec2d::Zero();
        for (auto edge : path) sum += g.value(edge);
        cycles.push_back({path, sum / static_cast<double>(path.size())});
      } else if (!on_path[static_cast<std::size_t>(next)]) {
        on_path[static_cast<std::size_t>(next)] = true;
        extend(start, next);
        on_path[static_cast<std::size_t>(next)] = false;
      }
      path.pop_back();
    }
  };
  for (Eigen::Index start = 0; start < n; ++start) {
    on_path[static_cast<std::size_t>(start)] = true;
    extend(start, start);
    on_path[static_cast<std::size_t>(start)] = false;
  }
  return cycles;
}

// Halfplane { x : normal . x <= offset } for one hull edge.
struct Facet {
  Vec2d normal;
  double offset;
};

std::vector<Facet> facets(const HullD& hull) {
  std::vector<Facet> out;
  const std::size_t k = hull.size();
  for (std::size_t i = 0; i < k; ++i) {
    const Vec2d& a = hull.vertices[i];
    const Vec2d& b = hull.vertices[(i + 1) % k];
    Vec2d normal(b.y() - a.y(), a.x() - b.x());
    normal.normalize();
    out.push_back({normal, normal.dot(a)});
  }
  return out;
}

// Cycles whose means lie in the smallest face of the cycle-mean polygon
// containing w. Throws InfeasibleTarget if w is outside the polygon.
std::vector<const Cycle*> face_cycles(const std::vector<Cycle>& cycles, const Vec2d& w) {
  std::vector<Vec2d> means;
  for (const auto& c : cycles) means.push_back(c.mean);
  const HullD hull = convex_hull(means);

  std::vector<const Cycle*> allowed;
  auto keep_if = [&](auto&& predicate) {
    for (const auto& c : cycles)
      if (predicate(c.mean)) allowed.push_back(&c);
  };
  auto near = [](const Vec2d& p) { return [p](const Vec2d& q) { return (p - q).norm() <= kFaceTolerance; }; };

  if (hull.size() == 1) {
    const double gap = (w - hull.vertices[0]).norm();
    if (gap > kFaceTolerance) throw InfeasibleTarget((w - hull.vertices[0]) / gap, gap);
    keep_if(near(hull.vertices[0]));
    return allowed;
  }
  if (hull.size() == 2) {
    const Vec2d& p = hull.vertices[0];
    const Vec2d& q = hull.vertices[1];
    const Vec2d axis = q - p;
    const double length = axis.norm();
    const Vec2d normal(-axis.y() / length, axis.x() / length);
    const double off_line = normal.dot(w - p);
    if (std::abs(off_line) > kFaceTolerance)
      throw InfeasibleTarget(off_line > 0 ? normal : Vec2d(-normal), std::abs(off_line));
    const double t = axis.dot(w - p) / (length * length);
    if (t < -kFaceTolerance / length) throw InfeasibleTarget(-axis / length, -t * length);
    if (t > 1 + kFaceTolerance / length) throw InfeasibleTarget(axis / length, (t - 1) * length);
    if (t * length <= kFaceTolerance) {
      keep_if(near(p));
    } else if ((1 - t) * length <= kFaceTolerance) {
      keep_if(near(q));
    } else {
      keep_if([](const Vec2d&) { return true; });
    }
    return allowed;
  }

  std::vector<Facet> tight;
  for (const auto& f : facets(hull)) {
    const double slack = f.offset - f.normal.dot(w);
    if (slack < -kFaceTolerance) throw InfeasibleTarget(f.normal, -slack);
    if (slack <= kFaceTolerance) tight.push_back(f);
  }
  keep_if([&](const Vec2d& m) {
    for (const auto& f : tight)
      if (f.normal.dot(m) < f.offset - kFaceTolerance) return false;
    return true;
  });
  return allowed;
}

// Convex weights over `points` reproducing `target`, via a fan triangulation
// of their hull. Returns nullopt if target is (numerically) outside.
std::optional<std::vector<double>> barycentric(const std::vector<Vec2d>& points, const Vec2d& target) {
  std::vector<double> weights(points.size(), 0.0);
  auto index_of = [&](const Vec2d& v) {
    for (std::size_t i = 0; i < points.size(); ++i)
      if (points[i] == v) return i;
    return points.size();
  };
  const HullD hull = convex_hull(points);
  constexpr double eps = 1e-12;
  if (hull.size() == 1) {
    if ((target - hull.vertices[0]).norm() > kFaceTolerance) return std::nullopt;
    weights[index_of(hull.vertices[0])] = 1.0;
    return weights;
  }
  if (hull.size() == 2) {
    const Vec2d axis = hull.vertices[1] - hull.vertices[0];
    const double t = axis.dot(target - hull.vertices[0]) / axis.squaredNorm();
    if (t < -eps || t > 1 + eps) return std::nullopt;
    weights[index_of(hull.vertices[0])] = 1 - t;
    weights[index_of(hull.vertices[1])] = t;
    return weights;
  }
  const Vec2d& a = hull.vertices[0];
  for (std::size_t i = 1; i + 1 < hull.size(); ++i) {
    const Vec2d& b = hull.vertices[i];
    const Vec2d& c = hull.vertices[i + 1];
    const double area = cross(a, b, c);
    const double la = cross(target, b, c) / area;
    const double lc = cross(a, b, target) / area;
    const double lb = 1.0 - la - lc;
    if (la >= -eps && lb >= -eps && lc >= -eps) {
      weights[index_of(a)] += std::max(la, 0.0);
      weights[index_of(b)] += std::max(lb, 0.0);
      weights[index_of(c)] += std::max(lc, 0.0);
      return weights;
    }
  }
  return std::nullopt;
}

// Conditional entropy of a stationary edge flow: -sum pi_e log(pi_e / pi_source(e)).
double flow_entropy(const Eigen::VectorXd& flow, const std::vector<Eigen::Index>& source_of,
                    Eigen::Index node_count) {
  Eigen::VectorXd out_mass = Eigen::VectorXd::Zero(node_count);
  for (Eigen::Index i = 0; i < flow.size(); ++i) out_mass[source_of[static_cast<std::size_t>(i)]] += flow[i];
  double h = 0;
  for (Eigen::Index i = 0; i < flow.size(); ++i) {
    if (flow[i] > 0) h -= flow[i] * std::log(flow[i] / out_mass[source_of[static_cast<std::size_t>(i)]]);
  }
  return h;
}

}  // namespace

PrimalSolution primal_constrained_entropy(const TransferGraph& g, const Vec2d& w) {
  if (g.node_count() > 9) throw ValidationError("memory", "primal solver handles memory <= 3 only");

  const std::vector<Cycle> cycles = simple_cycles(g);
  const std::vector<const Cycle*> allowed = face_cycles(cycles, w);

  // Strictly positive start: mix the allowed cycles' centroid into an exact
  // barycentric decomposition of a slightly displaced target.
  std::vector<Vec2d> means;
  for (const Cycle* c : allowed) means.push_back(c->mean);
  Vec2d center = Vec2d::Zero();
  for (const auto& m : means) center += m;
  center /= static_cast<double>(means.size());
  std::optional<std::vector<double>> base;
  double mix = 0.5;
  for (int attempt = 0; attempt < 60 && !base; ++attempt, mix *= 0.5)
    base = barycentric(means, (w - mix * center) / (1 - mix));
  mix *= 2;  // undo the final halving
  if (!base) throw InfeasibleTarget(Vec2d::UnitX(), 0.0);

  std::map<Eigen::Index, double> start_flow;
  for (std::size_t i = 0; i < allowed.size(); ++i) {
    const double weight = mix / static_cast<double>(allowed.size()) + (1 - mix) * (*base)[i];
    const auto& edges = allowed[i]->edges;
    for (auto e : edges) start_flow[e] += weight / static_cast<double>(edges.size());
  }

  // Variables: edges on allowed cycles.
  std::vector<Eigen::Index> edge_ids, source_of;
  Eigen::VectorXd flow(static_cast<Eigen::Index>(start_flow.size()));
  for (auto [e, mass] : start_flow) {
    flow[static_cast<Eigen::Index>(edge_ids.size())] = mass;
    edge_ids.push_back(e);
    source_of.push_back(g.source(e));
  }
  const Eigen::Index k = flow.size();
  const Eigen::Index n = g.node_count();

  // Constraints: total mass, flow conservation at each node, mean value = w.
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(1 + n + 2, k);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(1 + n + 2);
  b[0] = 1;
  b.tail<2>() = w;
  for (Eigen::Index i = 0; i < k; ++i) {
    const Eigen::Index e = edge_ids[static_cast<std::size_t>(i)];
    A(0, i) = 1;
    A(1 + g.source(e), i) += 1;
    A(1 + g.target(e), i) -= 1;
    A.block<2, 1>(1 + n, i) = g.value(e);
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeFullV);
  const double cutoff = 1e-10 * std::max(1.0, svd.singularValues().maxCoeff());
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()[i] > cutoff) ++rank;
  const Eigen::MatrixXd null_basis = svd.matrixV().rightCols(k - rank);

  // Remove the start point's residual with a least-norm correction.
  {
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(A);
    cod.setThreshold(1e-10);
    const Eigen::VectorXd corrected = flow - cod.solve(A * flow - b);
    if (corrected.minCoeff() > 0) flow = corrected;
  }

  PrimalSolution solution;
  double h = flow_entropy(flow, source_of, n);
  for (int it = 0; it < 500; ++it) {
    solution.iterations = it + 1;
    if (null_basis.cols() == 0) {
      solution.converged = true;
      break;
    }
    Eigen::VectorXd out_mass = Eigen::VectorXd::Zero(n);
    for (Eigen::Index i = 0; i < k; ++i) out_mass[source_of[static_cast<std::size_t>(i)]] += flow[i];
    Eigen::VectorXd gradient(k);
    for (Eigen::Index i = 0; i < k; ++i)
      gradient[i] = std::log(out_mass[source_of[static_cast<std::size_t>(i)]] / flow[i]);
    // Negated Hessian of the conditional entropy.
    Eigen::MatrixXd curvature = Eigen::MatrixXd::Zero(k, k);
    for (Eigen::Index i = 0; i < k; ++i) {
      curvature(i, i) += 1.0 / flow[i];
      for (Eigen::Index j = 0; j < k; ++j) {
        if (source_of[static_cast<std::size_t>(i)] == source_of[static_cast<std::size_t>(j)])
          curvature(i, j) -= 1.0 / out_mass[source_of[static_cast<std::size_t>(i)]];
      }
    }
    const Eigen::VectorXd reduced_gradient = null_basis.transpose() * gradient;
    if (reduced_gradient.norm() < 1e-11) {
      solution.converged = true;
      break;
    }
    Eigen::MatrixXd reduced = null_basis.transpose() * curvature * null_basis;
    reduced.diagonal().array() += 1e-12 * std::max(1.0, reduced.diagonal().maxCoeff());
    Eigen::VectorXd direction = null_basis * reduced.ldlt().solve(reduced_gradient);
    if (!(gradient.dot(direction) > 0)) direction = null_basis * reduced_gradient;

    double step = 1.0;
    for (Eigen::Index i = 0; i < k; ++i)
      if (direction[i] < 0) step = std::min(step, 0.95 * flow[i] / -direction[i]);
    const double slope = gradient.dot(direction);
    bool moved = false;
    for (int halving = 0; halving < 60; ++halving, step *= 0.5) {
      const Eigen::VectorXd trial = flow + step * direction;
      const double trial_h = flow_entropy(trial, source_of, n);
      if (trial_h >= h + 1e-4 * step * slope) {
        moved = trial_h > h;
        flow = trial;
        h = trial_h;
        break;
      }
    }
    if (!moved) {
      solution.converged = reduced_gradient.norm() < 1e-7;
      break;
    }
  }

  // Only a feasible flow certifies a lower bound.
  if ((A * flow - b).lpNorm<Eigen::Infinity>() > 1e-9 || flow.minCoeff() < 0) solution.converged = false;
  solution.entropy = h;
  solution.edge_flow = Eigen::VectorXd::Zero(g.edge_count());
  for (Eigen::Index i = 0; i < k; ++i) solution.edge_flow[edge_ids[static_cast<std::size_t>(i)]] = flow[i];
  return solution;
}

}  // namespace rotspec
