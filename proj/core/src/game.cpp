#include "scg/game.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "scg/error.hpp"
#include "scg/numeric_policy.hpp"

namespace scg {

namespace {

Element random_element(const ConeDescriptor& cone, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Eigen::VectorXd coords(static_cast<Eigen::Index>(cone.ambient_dim()));
  for (Eigen::Index i = 0; i < coords.size(); ++i) coords(i) = normal(rng);
  return Element::from_coordinates(cone, coords);
}

void check_adjoint(const Simplex& x_space, const Simplex& y_space, const LinearMap& forward,
                   const LinearMap& adjoint) {
  std::mt19937_64 rng(0x5eed'ad01u);
  for (int trial = 0; trial < 8; ++trial) {
    const Element x = random_element(x_space.cone(), rng);
    const Element y = random_element(y_space.cone(), rng);
    const Element ax = forward(x);
    const Element aty = adjoint(y);
    if (!(ax.descriptor() == y_space.cone()) || !(aty.descriptor() == x_space.cone())) {
      throw Error(ErrorCode::descriptor_mismatch, "game operator maps between the wrong algebras");
    }
    const double lhs = inner(ax, y);
    const double rhs = inner(x, aty);
    const double scale = 1.0 + norm(ax) * norm(y) + norm(x) * norm(aty);
    if (std::abs(lhs - rhs) > kDefaultPolicy.structural * scale) {
      std::ostringstream os;
      os.precision(17);
      os << "adjoint inconsistency: <A(x), y> = " << lhs << " but <x, A*(y)> = " << rhs;
      throw Error(ErrorCode::invariant_violation, os.str());
    }
  }
}

}  // namespace

BilinearZeroSumGame::BilinearZeroSumGame(Simplex x_space, Simplex y_space, LinearMap forward, LinearMap adjoint,
                                         Element b, Element c, double lipschitz_x, double lipschitz_y)
    : x_space_(std::move(x_space)),
      y_space_(std::move(y_space)),
      forward_(std::move(forward)),
      adjoint_(std::move(adjoint)),
      b_(std::move(b)),
      c_(std::move(c)),
      lipschitz_x_(lipschitz_x),
      lipschitz_y_(lipschitz_y) {
  if (!(b_.descriptor() == x_space_.cone())) {
    throw Error(ErrorCode::descriptor_mismatch, "offset b must live in the minimiser's algebra");
  }
  if (!(c_.descriptor() == y_space_.cone())) {
    throw Error(ErrorCode::descriptor_mismatch, "offset C must live in the maximiser's algebra");
  }
  if (!(lipschitz_x_ >= 0.0) || !(lipschitz_y_ >= 0.0)) {
    throw Error(ErrorCode::invalid_argument, "Lipschitz constants must be nonnegative");
  }
  check_adjoint(x_space_, y_space_, forward_, adjoint_);
}

BilinearZeroSumGame BilinearZeroSumGame::from_matrix(Simplex x_space, Simplex y_space, const Eigen::MatrixXd& matrix,
                                                     Element b, Element c, double lipschitz_x, double lipschitz_y) {
  const ConeDescriptor xc = x_space.cone();
  const ConeDescriptor yc = y_space.cone();
  if (static_cast<std::size_t>(matrix.rows()) != yc.ambient_dim() ||
      static_cast<std::size_t>(matrix.cols()) != xc.ambient_dim()) {
    std::ostringstream os;
    os << "forward matrix is " << matrix.rows() << "x" << matrix.cols() << ", expected " << yc.ambient_dim() << "x"
       << xc.ambient_dim();
    throw Error(ErrorCode::dimension_mismatch, os.str());
  }
  // <M u, v>_y = u^T M^T G_y v, so the adjoint in x coordinates is G_x^{-1} M^T G_y.
  const Eigen::VectorXd gx = coordinate_metric(xc);
  const Eigen::VectorXd gy = coordinate_metric(yc);
  Eigen::MatrixXd adj = gx.cwiseInverse().asDiagonal() * matrix.transpose() * gy.asDiagonal();
  LinearMap forward = [matrix, yc](const Element& x) {
    return Element::from_coordinates(yc, matrix * x.coordinates());
  };
  LinearMap adjoint = [adj = std::move(adj), xc](const Element& y) {
    return Element::from_coordinates(xc, adj * y.coordinates());
  };
  return BilinearZeroSumGame(std::move(x_space), std::move(y_space), std::move(forward), std::move(adjoint),
                             std::move(b), std::move(c), lipschitz_x, lipschitz_y);
}

Element BilinearZeroSumGame::forward(const Element& x) const {
  require_same_descriptor(x, b_, "forward");
  return forward_(x);
}

Element BilinearZeroSumGame::adjoint(const Element& y) const {
  require_same_descriptor(y, c_, "adjoint");
  return adjoint_(y);
}

double BilinearZeroSumGame::value(const Element& x, const Element& y) const {
  return inner(y, forward(x)) + inner(b_, x) + inner(c_, y);
}

double estimate_operator_norm(const ConeDescriptor& x_cone, const LinearMap& forward, const LinearMap& adjoint,
                              int iterations, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Element v = random_element(x_cone, rng);
  double nv = norm(v);
  if (nv == 0.0) return 0.0;
  v *= 1.0 / nv;
  double sigma2 = 0.0;
  for (int i = 0; i < iterations; ++i) {
    Element w = adjoint(forward(v));
    const double nw = norm(w);
    if (nw == 0.0) return 0.0;
    sigma2 = nw;
    v = w * (1.0 / nw);
  }
  return std::sqrt(sigma2);
}

BilinearZeroSumGame matrix_game(const Eigen::MatrixXd& payoff) {
  const auto xc = ConeDescriptor::orthant(static_cast<std::size_t>(payoff.cols()));
  const auto yc = ConeDescriptor::orthant(static_cast<std::size_t>(payoff.rows()));
  const double lip = payoff.cwiseAbs().maxCoeff();
  return BilinearZeroSumGame::from_matrix(Simplex(xc), Simplex(yc), payoff, Element(xc), Element(yc), lip, lip);
}

BilinearZeroSumGame matching_pennies() {
  Eigen::MatrixXd m(2, 2);
  m << 1.0, -1.0, -1.0, 1.0;
  return matrix_game(m);
}

PayoffVectors payoff_vectors(const BilinearZeroSumGame& game, const Element& x, const Element& y) {
  Element mx = -(game.adjoint(y) + game.b());
  Element my = game.forward(x) + game.c();
  return PayoffVectors{std::move(mx), std::move(my)};
}

DualityGap duality_gap(const BilinearZeroSumGame& game, const Element& x_bar, const Element& y_bar) {
  const double primal = game.y_space().support_max(game.forward(x_bar) + game.c()).value + inner(game.b(), x_bar);
  const double dual =
      -game.x_space().support_max(-(game.adjoint(y_bar) + game.b())).value + inner(game.c(), y_bar);
  return DualityGap{primal - dual, primal, dual};
}

Schedule saddle_point_schedule_from_entropy_range(double lipschitz_x, double lipschitz_y, double range_x,
                                                  double range_y, double eps) {
  if (!(eps > 0.0)) throw Error(ErrorCode::invalid_argument, "accuracy eps must be positive");
  const double l2 = lipschitz_x * lipschitz_x + lipschitz_y * lipschitz_y;
  if (!(l2 > 0.0)) throw Error(ErrorCode::invalid_argument, "at least one Lipschitz constant must be positive");
  if (range_x < 0.0 || range_y < 0.0) throw Error(ErrorCode::invalid_argument, "entropy ranges are nonnegative");
  const double root = std::sqrt(2.0 * l2);
  Schedule s;
  s.step_size = 1.0 / (2.0 * root);
  s.round_bound = 2.0 * (range_x + range_y) * root / eps;
  s.rounds = static_cast<std::size_t>(std::ceil(s.round_bound));
  return s;
}

Schedule saddle_point_schedule(double lipschitz_x, double lipschitz_y, std::size_t rank_x, std::size_t rank_y,
                               double eps) {
  if (rank_x < 1 || rank_y < 1) throw Error(ErrorCode::invalid_argument, "ranks must be at least 1");
  return saddle_point_schedule_from_entropy_range(lipschitz_x, lipschitz_y, std::log(static_cast<double>(rank_x)),
                                                  std::log(static_cast<double>(rank_y)), eps);
}

Schedule saddle_point_schedule(const BilinearZeroSumGame& game, double eps) {
  return saddle_point_schedule_from_entropy_range(game.lipschitz_x(), game.lipschitz_y(),
                                                  game.x_space().entropy_range(), game.y_space().entropy_range(), eps);
}

double regret_sum_step_size(std::span<const double> lipschitz) {
  double s = 0.0;
  for (double l : lipschitz) s += l * l;
  if (!(s > 0.0)) throw Error(ErrorCode::invalid_argument, "at least one Lipschitz constant must be positive");
  return 1.0 / (2.0 * std::sqrt(static_cast<double>(lipschitz.size()) * s));
}

double regret_sum_bound(std::span<const double> entropy_ranges, std::span<const double> lipschitz) {
  double r = 0.0;
  for (double x : entropy_ranges) r += x;
  double s = 0.0;
  for (double l : lipschitz) s += l * l;
  return 2.0 * r * std::sqrt(static_cast<double>(lipschitz.size()) * s);
}

SelfPlayTrace self_play(const BilinearZeroSumGame& game, const LearnerConfig& config_x,
                        const LearnerConfig& config_y, const SelfPlayOptions& options) {
  if (options.rounds < 1) throw Error(ErrorCode::invalid_argument, "self_play needs at least one round");
  if (options.record_every < 1) throw Error(ErrorCode::invalid_argument, "record_every must be at least 1");
  if (!(config_x.simplex.cone() == game.x_space().cone()) || !(config_y.simplex.cone() == game.y_space().cone())) {
    throw Error(ErrorCode::descriptor_mismatch, "learner configurations do not match the game");
  }

  SelfPlayTrace trace{{},
                      Element(game.x_space().cone()),
                      Element(game.y_space().cone()),
                      RegretLedger(config_x.simplex, options.keep_history),
                      RegretLedger(config_y.simplex, options.keep_history)};

  LearnerState sx = learner_init(config_x);
  LearnerState sy = learner_init(config_y);
  const double tol = kDefaultPolicy.structural;

  for (std::size_t t = 1; t <= options.rounds; ++t) {
    const Element& x = sx.iterate.element();
    const Element& y = sy.iterate.element();
    PayoffVectors pv = payoff_vectors(game, x, y);
    trace.ledger_x.record(pv.x, sx.iterate);
    trace.ledger_y.record(pv.y, sy.iterate);
    const double inv_t = 1.0 / static_cast<double>(t);
    trace.x_average += (x - trace.x_average) * inv_t;
    trace.y_average += (y - trace.y_average) * inv_t;

    if (t % options.record_every == 0 || t == options.rounds) {
      const DualityGap d = duality_gap(game, trace.x_average, trace.y_average);
      Checkpoint cp;
      cp.t = t;
      cp.gap = d.gap;
      cp.primal = d.primal;
      cp.dual = d.dual;
      cp.regret_x = regret(trace.ledger_x);
      cp.regret_y = regret(trace.ledger_y);
      if (game.primal_objective()) cp.primal_objective = game.primal_objective()(trace.x_average);
      if (!std::isfinite(cp.gap) || !std::isfinite(cp.regret_x) || !std::isfinite(cp.regret_y)) {
        throw Error(ErrorCode::non_finite, "non-finite metric at round " + std::to_string(t));
      }
      if (options.enforce_gap_regret && (cp.gap < -tol || cp.gap > cp.scaled_regret_sum() + tol)) {
        std::ostringstream os;
        os.precision(17);
        os << "round " << t << ": duality gap " << cp.gap << " outside [0, " << cp.scaled_regret_sum() << "]";
        throw Error(ErrorCode::invariant_violation, os.str());
      }
      trace.checkpoints.push_back(cp);
    }

    sx = learner_step(sx, pv.x, config_x);
    sy = learner_step(sy, pv.y, config_y);
  }
  return trace;
}

std::vector<RegretLedger> n_player_self_play(const PayoffOracle& oracle, std::span<const LearnerConfig> configs,
                                             std::size_t rounds, const RoundObserver& observer, bool keep_history) {
  std::vector<LearnerState> states;
  std::vector<RegretLedger> ledgers;
  states.reserve(configs.size());
  ledgers.reserve(configs.size());
  for (const auto& cfg : configs) {
    states.push_back(learner_init(cfg));
    ledgers.emplace_back(cfg.simplex, keep_history);
  }
  std::vector<SimplexPoint> joint;
  for (std::size_t t = 1; t <= rounds; ++t) {
    joint.clear();
    for (const auto& s : states) joint.push_back(s.iterate);
    std::vector<Element> payoffs = oracle(joint);
    if (payoffs.size() != configs.size()) {
      throw Error(ErrorCode::dimension_mismatch, "payoff oracle returned " + std::to_string(payoffs.size()) +
                                                     " vectors for " + std::to_string(configs.size()) + " players");
    }
    for (std::size_t i = 0; i < configs.size(); ++i) {
      if (!(payoffs[i].descriptor() == configs[i].simplex.cone())) {
        throw Error(ErrorCode::descriptor_mismatch, "payoff oracle: player " + std::to_string(i) +
                                                        " received a vector in the wrong algebra");
      }
      ledgers[i].record(payoffs[i], states[i].iterate);
    }
    if (observer) observer(t, ledgers);
    for (std::size_t i = 0; i < configs.size(); ++i) states[i] = learner_step(states[i], payoffs[i], configs[i]);
  }
  return ledgers;
}

PayoffOracle zero_sum_oracle(const BilinearZeroSumGame& game) {
  return [&game](std::span<const SimplexPoint> joint) {
    PayoffVectors pv = payoff_vectors(game, joint[0].element(), joint[1].element());
    return std::vector<Element>{std::move(pv.x), std::move(pv.y)};
  };
}

}  // namespace scg
