#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

#include "scg/game.hpp"
#include "scg/rng.hpp"

namespace scg::fermat_weber {

/// min over |x|_2 <= radius of g(x) = sum_i |A_i x - b_i|_2.
struct Instance {
  std::vector<Eigen::MatrixXd> maps;
  std::vector<Eigen::VectorXd> targets;
  double radius = 1.0;

  std::size_t location_dim() const { return static_cast<std::size_t>(maps.front().cols()); }
  std::size_t residual_dim() const { return static_cast<std::size_t>(maps.front().rows()); }
};

/// Throws on empty, ragged or inconsistent data, or a nonpositive radius.
void validate(const Instance& instance);

double sum_of_norms(const Instance& instance, const Eigen::VectorXd& x);

/// Location x = 2R x̃ encoded by the ball point (½, x̃) of spin(d+1).
Eigen::VectorXd location_from_strategy(const Element& strategy, double radius);

/// Second-order cone min-max form of the location problem.
///
/// The minimiser plays (½, x/(2R)) in spin(d+1); the maximiser plays one
/// trace-one point of spin(m+1) per residual, and
/// f(x̄, y) = sum_i <(0, 2R A_i x̃) - (0, b_i), y_i> in the canonical pairing,
/// so max_y f equals g(x). Lipschitz constants are R sqrt(sum_i |A_i|_2^2).
/// The game's primal objective evaluates g at the decoded location.
BilinearZeroSumGame build_game(const Instance& instance);

/// A_i = I_d; b_i has a uniformly random direction and a norm uniform in
/// [0.5 R, 1.5 R].
Instance synthetic_instance(std::size_t dim, std::size_t targets, double radius, Rng& rng);

/// Largest singular value.
double spectral_norm(const Eigen::MatrixXd& a);

}  // namespace scg::fermat_weber
