#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "scg/element.hpp"
#include "scg/learner.hpp"
#include "scg/simplex.hpp"

namespace scg {

using LinearMap = std::function<Element(const Element&)>;

/// Two-player zero-sum game f(x, y) = <y, A(x)> + <b, x> + <C, y> with x the
/// minimising player and y the maximising player.
class BilinearZeroSumGame {
 public:
  /// Validates descriptors and checks <A(x), y> = <x, A*(y)> on random pairs;
  /// throws ErrorCode::invariant_violation if the adjoint is inconsistent.
  BilinearZeroSumGame(Simplex x_space, Simplex y_space, LinearMap forward, LinearMap adjoint, Element b,
                      Element c, double lipschitz_x, double lipschitz_y);

  /// Game whose forward map acts on ambient coordinates,
  /// coords(A(x)) = matrix * coords(x). The adjoint is derived with the
  /// coordinate metrics of both algebras.
  static BilinearZeroSumGame from_matrix(Simplex x_space, Simplex y_space, const Eigen::MatrixXd& matrix,
                                         Element b, Element c, double lipschitz_x, double lipschitz_y);

  const Simplex& x_space() const { return x_space_; }
  const Simplex& y_space() const { return y_space_; }
  Element forward(const Element& x) const;
  Element adjoint(const Element& y) const;
  const Element& b() const { return b_; }
  const Element& c() const { return c_; }
  /// Lipschitz constant of the minimiser's payoff vector m_x in y.
  double lipschitz_x() const { return lipschitz_x_; }
  /// Lipschitz constant of the maximiser's payoff vector m_y in x.
  double lipschitz_y() const { return lipschitz_y_; }

  double value(const Element& x, const Element& y) const;

  /// Optional problem-specific objective evaluated at the minimiser's average
  /// strategy (e.g. the Fermat-Weber sum of norms).
  void set_primal_objective(std::function<double(const Element&)> objective) {
    primal_objective_ = std::move(objective);
  }
  const std::function<double(const Element&)>& primal_objective() const { return primal_objective_; }

 private:
  Simplex x_space_;
  Simplex y_space_;
  LinearMap forward_;
  LinearMap adjoint_;
  Element b_;
  Element c_;
  double lipschitz_x_;
  double lipschitz_y_;
  std::function<double(const Element&)> primal_objective_;
};

/// Largest ratio |A(v)| / |v| in canonical EJA norms, by power iteration on
/// A*A. This upper-bounds the trace-1 to trace-infinity Lipschitz constant of
/// both payoff vectors; it is an estimate, not the sharp constant.
double estimate_operator_norm(const ConeDescriptor& x_cone, const LinearMap& forward, const LinearMap& adjoint,
                              int iterations = 500, std::uint64_t seed = 7);

/// Matrix game on simplices: f(x, y) = y^T M x, with M rows indexing y.
BilinearZeroSumGame matrix_game(const Eigen::MatrixXd& payoff);
BilinearZeroSumGame matching_pennies();

struct PayoffVectors {
  /// Minimiser's gain vector -(A*(y) + b).
  Element x;
  /// Maximiser's gain vector A(x) + C.
  Element y;
};

PayoffVectors payoff_vectors(const BilinearZeroSumGame& game, const Element& x, const Element& y);

struct DualityGap {
  double gap = 0.0;
  /// max_y f(x̄, y).
  double primal = 0.0;
  /// min_x f(x, ȳ).
  double dual = 0.0;
};

DualityGap duality_gap(const BilinearZeroSumGame& game, const Element& x_bar, const Element& y_bar);

struct Schedule {
  double step_size = 0.0;
  /// Unrounded sufficient horizon.
  double round_bound = 0.0;
  std::size_t rounds = 0;
};

/// Step size 1/(2 sqrt(2(Lx^2 + Ly^2))) and horizon
/// ceil(2 (Rx + Ry) sqrt(2(Lx^2 + Ly^2)) / eps) for an eps-saddle point of the
/// averaged optimistic iterates, with R the entropy ranges of both strategy
/// sets.
Schedule saddle_point_schedule_from_entropy_range(double lipschitz_x, double lipschitz_y, double range_x,
                                                  double range_y, double eps);

/// Same with R = ln(rank).
Schedule saddle_point_schedule(double lipschitz_x, double lipschitz_y, std::size_t rank_x, std::size_t rank_y,
                               double eps);

/// Same with the entropy ranges of a game's strategy sets.
Schedule saddle_point_schedule(const BilinearZeroSumGame& game, double eps);

/// Common step size 1/(2 sqrt(N sum L_i^2)) bounding the sum of regrets of N
/// optimistic learners.
double regret_sum_step_size(std::span<const double> lipschitz);

/// 2 (sum R_i) sqrt(N sum L_i^2).
double regret_sum_bound(std::span<const double> entropy_ranges, std::span<const double> lipschitz);

struct SelfPlayOptions {
  std::size_t rounds = 1;
  std::size_t record_every = 1;
  /// Keep every payoff and iterate in the ledgers.
  bool keep_history = false;
  /// Throw ErrorCode::invariant_violation when a recorded duality gap exceeds
  /// the averaged regret sum or is negative (beyond the structural tolerance).
  bool enforce_gap_regret = true;
};

struct Checkpoint {
  std::size_t t = 0;
  double gap = 0.0;
  double primal = 0.0;
  double dual = 0.0;
  double regret_x = 0.0;
  double regret_y = 0.0;
  std::optional<double> primal_objective;

  double scaled_regret_sum() const { return (regret_x + regret_y) / static_cast<double>(t); }
};

struct SelfPlayTrace {
  std::vector<Checkpoint> checkpoints;
  Element x_average;
  Element y_average;
  RegretLedger ledger_x;
  RegretLedger ledger_y;
};

/// Simultaneous self-play: each round both players observe payoff vectors at
/// the current joint strategy and then step. Checkpoints are taken every
/// `record_every` rounds and at the final round.
SelfPlayTrace self_play(const BilinearZeroSumGame& game, const LearnerConfig& config_x,
                        const LearnerConfig& config_y, const SelfPlayOptions& options);

using PayoffOracle = std::function<std::vector<Element>(std::span<const SimplexPoint>)>;
using RoundObserver = std::function<void(std::size_t t, std::span<const RegretLedger>)>;

/// N learners playing simultaneously against a payoff oracle for T rounds.
std::vector<RegretLedger> n_player_self_play(const PayoffOracle& oracle, std::span<const LearnerConfig> configs,
                                             std::size_t rounds, const RoundObserver& observer = {},
                                             bool keep_history = false);

/// Oracle returning both zero-sum payoff vectors of a bilinear game.
PayoffOracle zero_sum_oracle(const BilinearZeroSumGame& game);

}  // namespace scg
