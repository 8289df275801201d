#pragma once

#include <Eigen/Dense>

#include <map>
#include <vector>

#include "ltoim/graph.hpp"

namespace ltoim {

// Confidence ellipsoid {w : (w - center)' M (w - center) <= rho^2} over one
// node's in-weight coordinates, parameterized by the regression state
// (gramian M, moment b) with center = M^{-1} b. M must be symmetric
// positive definite; the constructor factorizes it once and caches the
// inverse. Throws SingularGramian when the factorization fails or M is
// numerically singular, ValidationError on shape or radius problems.
class NodeEllipsoid {
 public:
  NodeEllipsoid(Eigen::MatrixXd gramian, Eigen::VectorXd moment, double rho);

  int dim() const { return static_cast<int>(center_.size()); }
  const Eigen::MatrixXd& gramian() const { return M_; }
  const Eigen::VectorXd& moment() const { return b_; }
  const Eigen::VectorXd& center() const { return center_; }
  const Eigen::MatrixXd& inverse() const { return Minv_; }
  double radius() const { return rho_; }

  // sqrt((w - center)' M (w - center))
  double mahalanobis(const Eigen::VectorXd& w) const;
  // Membership with a small relative slack; box = true additionally
  // requires w inside [0,1]^dim.
  bool contains(const Eigen::VectorXd& w, bool box = false,
                double tol = 1e-9) const;

 private:
  Eigen::MatrixXd M_, Minv_;
  Eigen::VectorXd b_, center_;
  double rho_;
};

enum class BoxMode {
  EllipsoidOnly,  // optimize over the bare ellipsoid
  BoxClipped      // clamp the argmax into [0,1]^dim, value left as is
};

struct LinearMaxResult {
  double value = 0.0;
  Eigen::VectorXd argmax;
};

// max_{w in ellipsoid} c'w in closed form: c'center + rho * s with
// s = sqrt(c' M^{-1} c), attained at center + (rho / s) M^{-1} c (the
// center when s = 0). BoxClipped clamps only the argmax; the clamped point
// can leave the ellipsoid and its objective can fall below `value`.
LinearMaxResult max_linear_over_ellipsoid(const Eigen::VectorXd& c,
                                          const NodeEllipsoid& ell,
                                          BoxMode mode = BoxMode::EllipsoidOnly);

// One ellipsoid per node with in-edges, in that node's in-neighbor
// coordinate order.
class ConfidenceSet {
 public:
  ConfidenceSet() = default;

  // M = I, b = 0 for every node with in-edges.
  static ConfidenceSet uniform_prior(const Graph& g, double rho);

  void set(int v, NodeEllipsoid e);
  bool has(int v) const { return nodes_.contains(v); }
  const NodeEllipsoid& at(int v) const;
  std::vector<int> node_ids() const;

 private:
  std::map<int, NodeEllipsoid> nodes_;
};

}  // namespace ltoim
