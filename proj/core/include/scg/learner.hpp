#pragma once

#include <cstddef>
#include <vector>

#include "scg/element.hpp"
#include "scg/simplex.hpp"

namespace scg {

/// Configuration of an (optimistic) symmetric cone multiplicative weights
/// learner. Payoffs follow the gain convention: the learner maximises <m, x>.
struct LearnerConfig {
  Simplex simplex;
  double step_size = 0.1;
  /// Predict the next payoff with the last one (OSCMWU); otherwise SCMWU.
  bool optimistic = true;

  LearnerConfig(Simplex s, double eta, bool opt);
  LearnerConfig(const ConeDescriptor& cone, double eta, bool opt)
      : LearnerConfig(Simplex(cone), eta, opt) {}
};

/// Immutable learner state after t observed payoffs.
struct LearnerState {
  /// Exact running sum of the observed payoffs.
  Element cumulative_payoff;
  Element last_payoff;
  /// Strategy to play next.
  SimplexPoint iterate;
  std::size_t t = 0;
};

LearnerState learner_init(const LearnerConfig& config);

/// Absorbs payoff m and computes the next iterate
/// exp_normalize(eta * (sum_k m^k + predictor)).
LearnerState learner_step(const LearnerState& state, const Element& payoff, const LearnerConfig& config);

/// Payoffs and played iterates of one player, for external regret.
///
/// Running sums are always maintained; full histories are kept only when
/// requested.
class RegretLedger {
 public:
  explicit RegretLedger(Simplex simplex, bool keep_history = true);

  void record(const Element& payoff, const SimplexPoint& iterate);

  std::size_t rounds() const { return rounds_; }
  const Simplex& simplex() const { return simplex_; }
  const Element& cumulative_payoff() const { return cumulative_; }
  /// Sum over rounds of <m^t, x^t>.
  double realized_gain() const { return realized_; }

  bool keeps_history() const { return keep_history_; }
  const std::vector<Element>& payoff_history() const { return payoffs_; }
  const std::vector<SimplexPoint>& iterate_history() const { return iterates_; }

 private:
  Simplex simplex_;
  bool keep_history_;
  std::size_t rounds_ = 0;
  Element cumulative_;
  double realized_ = 0.0;
  std::vector<Element> payoffs_;
  std::vector<SimplexPoint> iterates_;
};

/// max_x <sum_t m^t, x> - sum_t <m^t, x^t>, the best fixed strategy in
/// hindsight against linear payoffs. Throws on an empty ledger.
double regret(const RegretLedger& ledger);

}  // namespace scg
