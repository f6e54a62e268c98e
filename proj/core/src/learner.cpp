#include "scg/learner.hpp"

#include <cmath>

#include "scg/error.hpp"

namespace scg {

LearnerConfig::LearnerConfig(Simplex s, double eta, bool opt)
    : simplex(std::move(s)), step_size(eta), optimistic(opt) {
  if (!(step_size > 0.0) || !std::isfinite(step_size)) {
    throw Error(ErrorCode::invalid_argument, "learner step size must be positive and finite");
  }
}

LearnerState learner_init(const LearnerConfig& config) {
  const ConeDescriptor& cone = config.simplex.cone();
  return LearnerState{Element(cone), Element(cone), config.simplex.uniform_point(), 0};
}

LearnerState learner_step(const LearnerState& state, const Element& payoff, const LearnerConfig& config) {
  if (!(payoff.descriptor() == config.simplex.cone())) {
    throw Error(ErrorCode::descriptor_mismatch, "learner_step: payoff lives in " +
                                                    payoff.descriptor().to_string() + ", learner plays " +
                                                    config.simplex.cone().to_string());
  }
  if (!payoff.all_finite()) throw Error(ErrorCode::non_finite, "learner_step: non-finite payoff entry");

  Element cumulative = state.cumulative_payoff + payoff;
  Element weights = cumulative;
  if (config.optimistic) weights += payoff;
  weights *= config.step_size;
  SimplexPoint next = config.simplex.exp_normalize(weights);
  return LearnerState{std::move(cumulative), payoff, std::move(next), state.t + 1};
}

RegretLedger::RegretLedger(Simplex simplex, bool keep_history)
    : simplex_(std::move(simplex)), keep_history_(keep_history), cumulative_(simplex_.cone()) {}

void RegretLedger::record(const Element& payoff, const SimplexPoint& iterate) {
  cumulative_ += payoff;
  realized_ += inner(payoff, iterate.element());
  ++rounds_;
  if (keep_history_) {
    payoffs_.push_back(payoff);
    iterates_.push_back(iterate);
  }
}

double regret(const RegretLedger& ledger) {
  if (ledger.rounds() == 0) throw Error(ErrorCode::empty_input, "regret of an empty ledger");
  return ledger.simplex().support_max(ledger.cumulative_payoff()).value - ledger.realized_gain();
}

}  // namespace scg
