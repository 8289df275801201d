#include "ltoim/ellipsoid.hpp"

#include <cmath>
#include <string>

namespace ltoim {

NodeEllipsoid::NodeEllipsoid(Eigen::MatrixXd gramian, Eigen::VectorXd moment,
                             double rho)
    : M_(std::move(gramian)), b_(std::move(moment)), rho_(rho) {
  if (M_.rows() != M_.cols() || M_.rows() == 0)
    throw ValidationError("gramian must be square and non-empty");
  if (b_.size() != M_.rows())
    throw ValidationError("moment size does not match gramian");
  if (!(rho_ >= 0.0)) throw ValidationError("radius must be non-negative");

  double asym = (M_ - M_.transpose()).cwiseAbs().maxCoeff();
  double scale = std::max(1.0, M_.cwiseAbs().maxCoeff());
  if (asym > 1e-9 * scale)
    throw ValidationError("gramian is not symmetric");
  M_ = ((M_ + M_.transpose()) / 2.0).eval();

  Eigen::LLT<Eigen::MatrixXd> llt(M_);
  if (llt.info() != Eigen::Success)
    throw SingularGramian("gramian is not positive definite");
  double min_pivot = llt.matrixL().toDenseMatrix().diagonal().minCoeff();
  if (min_pivot * min_pivot < 1e-10)
    throw SingularGramian("gramian is numerically singular");
  Minv_ = llt.solve(Eigen::MatrixXd::Identity(M_.rows(), M_.cols()));
  center_ = llt.solve(b_);
}

double NodeEllipsoid::mahalanobis(const Eigen::VectorXd& w) const {
  if (w.size() != dim())
    throw ValidationError("point dimension does not match the ellipsoid");
  Eigen::VectorXd d = w - center_;
  return std::sqrt(std::max(0.0, d.dot(M_ * d)));
}

bool NodeEllipsoid::contains(const Eigen::VectorXd& w, bool box,
                             double tol) const {
  double m = mahalanobis(w);
  if (m * m > rho_ * rho_ * (1.0 + tol) + 1e-12) return false;
  if (box && ((w.array() < -1e-12).any() || (w.array() > 1.0 + 1e-12).any()))
    return false;
  return true;
}

LinearMaxResult max_linear_over_ellipsoid(const Eigen::VectorXd& c,
                                          const NodeEllipsoid& ell,
                                          BoxMode mode) {
  if (c.size() != ell.dim())
    throw ValidationError("objective dimension does not match the ellipsoid");
  Eigen::VectorXd x = ell.inverse() * c;
  double s = std::sqrt(std::max(0.0, c.dot(x)));
  LinearMaxResult out;
  out.value = c.dot(ell.center()) + ell.radius() * s;
  out.argmax = s == 0.0
                   ? ell.center()
                   : Eigen::VectorXd(ell.center() + (ell.radius() / s) * x);
  if (mode == BoxMode::BoxClipped)
    out.argmax = out.argmax.cwiseMax(0.0).cwiseMin(1.0);
  return out;
}

ConfidenceSet ConfidenceSet::uniform_prior(const Graph& g, double rho) {
  ConfidenceSet cs;
  for (int v = 0; v < g.node_count(); ++v) {
    int d = g.in_degree(v);
    if (d == 0) continue;
    cs.nodes_.emplace(
        v, NodeEllipsoid(Eigen::MatrixXd::Identity(d, d),
                         Eigen::VectorXd::Zero(d), rho));
  }
  return cs;
}

void ConfidenceSet::set(int v, NodeEllipsoid e) {
  nodes_.insert_or_assign(v, std::move(e));
}

const NodeEllipsoid& ConfidenceSet::at(int v) const {
  auto it = nodes_.find(v);
  if (it == nodes_.end())
    throw ValidationError("no ellipsoid for node " + std::to_string(v));
  return it->second;
}

std::vector<int> ConfidenceSet::node_ids() const {
  std::vector<int> ids;
  ids.reserve(nodes_.size());
  for (const auto& [v, e] : nodes_) ids.push_back(v);
  return ids;
}

}  // namespace ltoim
