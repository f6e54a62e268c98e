#include "scg/applications/online_location.hpp"

#include <cmath>

#include "scg/applications/fermat_weber.hpp"
#include "scg/error.hpp"
#include "scg/rng.hpp"

namespace scg::online_location {

void validate(const StreamParams& params) {
  if (params.location_dim < 1 || params.residual_dim < 1) {
    throw Error(ErrorCode::invalid_argument, "stream dimensions must be positive");
  }
  if (!(params.radius > 0.0)) throw Error(ErrorCode::invalid_argument, "stream radius must be positive");
  if (!(params.rho >= 0.0 && params.rho < 1.0)) throw Error(ErrorCode::invalid_argument, "rho must lie in [0, 1)");
  if (!(params.sigma >= 0.0)) throw Error(ErrorCode::invalid_argument, "sigma must be nonnegative");
  if (params.horizon < 1) throw Error(ErrorCode::invalid_argument, "stream horizon must be at least 1");
}

DemandStream generate_stream(const StreamParams& params) {
  validate(params);
  Rng rng(params.seed);
  std::normal_distribution<double> normal;
  const auto d = static_cast<Eigen::Index>(params.location_dim);
  const auto m = static_cast<Eigen::Index>(params.residual_dim);

  DemandStream stream;
  stream.map.resize(m, d);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) stream.map(i, j) = normal(rng);
  }
  stream.map /= fermat_weber::spectral_norm(stream.map);

  Eigen::VectorXd b(m);
  do {
    for (Eigen::Index i = 0; i < m; ++i) b(i) = normal(rng);
  } while (b.norm() == 0.0);
  b.normalize();

  const double innovation = std::sqrt(1.0 - params.rho * params.rho);
  stream.targets.reserve(params.horizon);
  for (std::size_t t = 0; t < params.horizon; ++t) {
    Eigen::VectorXd xi(m);
    for (Eigen::Index i = 0; i < m; ++i) xi(i) = params.sigma * normal(rng);
    Eigen::VectorXd next = params.rho * b + innovation * xi;
    const double n = next.norm();
    if (n > 0.0) b = next / n;
    stream.targets.push_back(b);
  }
  return stream;
}

OnlineResult online_self_play(const DemandStream& stream, double radius, const LearnerConfig& config_x,
                              const LearnerConfig& config_y) {
  const auto m = stream.map.rows();
  const auto d = stream.map.cols();
  const auto xc = ConeDescriptor::spin(static_cast<std::size_t>(d) + 1);
  const auto yc = ConeDescriptor::spin(static_cast<std::size_t>(m) + 1);
  if (!(config_x.simplex.cone() == xc) || !(config_y.simplex.cone() == yc)) {
    throw Error(ErrorCode::descriptor_mismatch, "online location learners must play spin(d+1) and spin(m+1)");
  }
  const double two_r = 2.0 * radius;
  const Eigen::MatrixXd map_t = stream.map.transpose();

  LearnerState sx = learner_init(config_x);
  LearnerState sy = learner_init(config_y);
  RegretLedger lx(config_x.simplex, false);
  RegretLedger ly(config_y.simplex, false);
  OnlineResult result;
  result.scaled_regret_sum.reserve(stream.targets.size());

  Element mx(xc);
  Element my(yc);
  for (std::size_t t = 0; t < stream.targets.size(); ++t) {
    const Eigen::VectorXd xt = sx.iterate.element().data().col(0).tail(d);
    const Eigen::VectorXd yt = sy.iterate.element().data().col(0).tail(m);
    // Gains: the location player minimises f_t, the demand player maximises it.
    mx.block(0).data.col(0).tail(d) = -two_r * (map_t * yt);
    my.block(0).data.col(0).tail(m) = two_r * (stream.map * xt) - stream.targets[t];
    lx.record(mx, sx.iterate);
    ly.record(my, sy.iterate);
    result.regret_x = regret(lx);
    result.regret_y = regret(ly);
    result.scaled_regret_sum.push_back((result.regret_x + result.regret_y) / static_cast<double>(t + 1));
    sx = learner_step(sx, mx, config_x);
    sy = learner_step(sy, my, config_y);
  }
  return result;
}

OnlineResult online_self_play(const StreamParams& params, const LearnerConfig& config_x,
                              const LearnerConfig& config_y) {
  return online_self_play(generate_stream(params), params.radius, config_x, config_y);
}

}  // namespace scg::online_location
