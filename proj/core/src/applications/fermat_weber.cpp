#include "scg/applications/fermat_weber.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "scg/error.hpp"
#include "scg/jacobi.hpp"

namespace scg::fermat_weber {

void validate(const Instance& instance) {
  if (instance.maps.empty()) throw Error(ErrorCode::empty_input, "Fermat-Weber instance needs at least one residual");
  if (instance.maps.size() != instance.targets.size()) {
    throw Error(ErrorCode::dimension_mismatch, "Fermat-Weber instance has mismatched map and target counts");
  }
  if (!(instance.radius > 0.0) || !std::isfinite(instance.radius)) {
    throw Error(ErrorCode::invalid_argument, "Fermat-Weber radius must be positive");
  }
  const auto m = instance.maps.front().rows();
  const auto d = instance.maps.front().cols();
  if (m == 0 || d == 0) throw Error(ErrorCode::dimension_mismatch, "Fermat-Weber maps must be non-empty");
  for (std::size_t i = 0; i < instance.maps.size(); ++i) {
    if (instance.maps[i].rows() != m || instance.maps[i].cols() != d || instance.targets[i].size() != m) {
      throw Error(ErrorCode::dimension_mismatch, "Fermat-Weber residual " + std::to_string(i) + " has inconsistent shape");
    }
  }
}

double sum_of_norms(const Instance& instance, const Eigen::VectorXd& x) {
  double g = 0.0;
  for (std::size_t i = 0; i < instance.maps.size(); ++i) g += (instance.maps[i] * x - instance.targets[i]).norm();
  return g;
}

Eigen::VectorXd location_from_strategy(const Element& strategy, double radius) {
  const auto& col = strategy.data();
  return 2.0 * radius * col.col(0).tail(col.rows() - 1);
}

double spectral_norm(const Eigen::MatrixXd& a) {
  const Eigen::MatrixXd gram = a.cols() <= a.rows() ? Eigen::MatrixXd(a.transpose() * a) : Eigen::MatrixXd(a * a.transpose());
  return std::sqrt(std::max(0.0, jacobi_eigen(gram).values(0)));
}

BilinearZeroSumGame build_game(const Instance& instance) {
  validate(instance);
  const std::size_t d = instance.location_dim();
  const std::size_t m = instance.residual_dim();
  const std::size_t p = instance.maps.size();
  const double two_r = 2.0 * instance.radius;

  const auto xc = ConeDescriptor::spin(d + 1);
  const auto yc = ConeDescriptor::product(std::vector<ConeDescriptor>(p, ConeDescriptor::spin(m + 1)));

  Element c(yc);
  double frob2 = 0.0;
  for (std::size_t i = 0; i < p; ++i) {
    c.block(i).data.col(0).tail(static_cast<Eigen::Index>(m)) = -instance.targets[i];
    const double s = spectral_norm(instance.maps[i]);
    frob2 += s * s;
  }
  const double lip = instance.radius * std::sqrt(frob2);

  auto maps = std::make_shared<const std::vector<Eigen::MatrixXd>>(instance.maps);
  LinearMap forward = [maps, yc, two_r, d, m](const Element& x) {
    Element y(yc);
    const Eigen::VectorXd xt = x.data().col(0).tail(static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < maps->size(); ++i) {
      y.block(i).data.col(0).tail(static_cast<Eigen::Index>(m)) = two_r * ((*maps)[i] * xt);
    }
    return y;
  };
  // Both algebras are spin factors, so the factor 2 of the canonical pairing
  // cancels between <A x, y> and <x, A* y>.
  LinearMap adjoint = [maps, xc, two_r, d, m](const Element& y) {
    Eigen::VectorXd acc = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < maps->size(); ++i) {
      acc += (*maps)[i].transpose() * y.block(i).data.col(0).tail(static_cast<Eigen::Index>(m));
    }
    Element x(xc);
    x.block(0).data.col(0).tail(static_cast<Eigen::Index>(d)) = two_r * acc;
    return x;
  };

  BilinearZeroSumGame game(Simplex(xc), Simplex(yc, SimplexKind::per_component), std::move(forward),
                           std::move(adjoint), Element(xc), std::move(c), lip, lip);
  game.set_primal_objective([inst = instance](const Element& x_bar) {
    return sum_of_norms(inst, location_from_strategy(x_bar, inst.radius));
  });
  return game;
}

Instance synthetic_instance(std::size_t dim, std::size_t targets, double radius, Rng& rng) {
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> scale(0.5 * radius, 1.5 * radius);
  Instance inst;
  inst.radius = radius;
  const auto d = static_cast<Eigen::Index>(dim);
  for (std::size_t i = 0; i < targets; ++i) {
    Eigen::VectorXd b(d);
    do {
      for (Eigen::Index j = 0; j < d; ++j) b(j) = normal(rng);
    } while (b.norm() == 0.0);
    b.normalize();
    b *= scale(rng);
    inst.maps.push_back(Eigen::MatrixXd::Identity(d, d));
    inst.targets.push_back(std::move(b));
  }
  return inst;
}

}  // namespace scg::fermat_weber
