#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "scg/learner.hpp"

namespace scg::online_location {

/// Parameters of a temporally correlated demand stream.
struct StreamParams {
  std::size_t location_dim = 10;  // d
  std::size_t residual_dim = 10;  // m
  double radius = 1.0;
  double rho = 0.6;
  double sigma = 0.12;
  std::size_t horizon = 20000;
  std::uint64_t seed = 0;
};

void validate(const StreamParams& params);

/// A fixed map and one demand point per round.
struct DemandStream {
  Eigen::MatrixXd map;
  std::vector<Eigen::VectorXd> targets;
};

/// A has i.i.d. standard normal entries rescaled to unit spectral norm and is
/// drawn once. b_0 is a normalised Gaussian; afterwards
/// b_t = rho b_{t-1} + sqrt(1 - rho^2) xi_t with xi_t ~ N(0, sigma^2 I),
/// renormalised to unit length. Deterministic in the seed.
DemandStream generate_stream(const StreamParams& params);

struct OnlineResult {
  /// (r_x(t) + r_y(t)) / t for t = 1..T.
  std::vector<double> scaled_regret_sum;
  double regret_x = 0.0;
  double regret_y = 0.0;
};

/// Both players learn online on f_t(x̄, y) = <Ã_t x̄ - b̄_t, y> with the
/// location player in spin(d+1) and the demand player in spin(m+1). Regret
/// is measured against the best fixed strategy for the realised payoffs.
OnlineResult online_self_play(const DemandStream& stream, double radius, const LearnerConfig& config_x,
                              const LearnerConfig& config_y);

OnlineResult online_self_play(const StreamParams& params, const LearnerConfig& config_x,
                              const LearnerConfig& config_y);

}  // namespace scg::online_location
