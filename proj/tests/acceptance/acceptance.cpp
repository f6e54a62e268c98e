// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "scg/applications/fermat_weber.hpp"
#include "scg/applications/metric_learning.hpp"
#include "scg/applications/online_location.hpp"
#include "scg/error.hpp"
#include "scg/game.hpp"
#include "scg/spectral.hpp"

using namespace scg;
using scg::testing::random_element;
using scg::testing::random_interior_point;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

// Gap-regret bookkeeping shared by every self-play run below.
struct GapRegretTally {
  std::size_t runs = 0;
  std::size_t checkpoints = 0;
  std::size_t violations = 0;
  double worst = -1e300;  // max over checkpoints of gap - scaled regret sum
  bool negative_gap = false;
};
GapRegretTally tally;

SelfPlayTrace tracked_self_play(const BilinearZeroSumGame& g, const LearnerConfig& cx, const LearnerConfig& cy,
                                const SelfPlayOptions& options) {
  SelfPlayOptions o = options;
  // Checked here as well so a violation is counted instead of aborting the run.
  o.enforce_gap_regret = false;
  auto trace = self_play(g, cx, cy, o);
  ++tally.runs;
  for (const auto& cp : trace.checkpoints) {
    ++tally.checkpoints;
    const double excess = cp.gap - cp.scaled_regret_sum();
    tally.worst = std::max(tally.worst, excess);
    if (excess > 1e-9) ++tally.violations;
    if (cp.gap < -1e-9) tally.negative_gap = true;
  }
  return trace;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::vector<ConeDescriptor> headline_cones() {
  return {ConeDescriptor::orthant(5), ConeDescriptor::spin(6), ConeDescriptor::sym(4),
          ConeDescriptor::product({ConeDescriptor::orthant(3), ConeDescriptor::spin(4), ConeDescriptor::sym(2)})};
}

Outcome strong_convexity() {
  Rng rng(derive_seed(1, 0));
  double worst = 1e300;
  std::size_t pairs = 0;
  for (const auto& c : headline_cones()) {
    for (int k = 0; k < 1000; ++k, ++pairs) {
      const auto x = random_interior_point(c, rng, 2.0).element();
      const auto y = random_interior_point(c, rng, 2.0).element();
      const double n1 = trace_p_norm(x - y, 1);
      worst = std::min(worst, bregman(x, y) - 0.5 * n1 * n1);
    }
  }
  return {worst >= -1e-9, fmt("min D(x,y) - |x-y|_1^2/2 = %.3e over %zu pairs", worst, pairs)};
}

Outcome data_processing() {
  Rng rng(derive_seed(2, 0));
  double worst = -1e300;
  std::size_t pairs = 0;
  for (const auto& c : {ConeDescriptor::sym(3), ConeDescriptor::spin(5)}) {
    for (int k = 0; k < 500; ++k, ++pairs) {
      const auto x = random_interior_point(c, rng, 2.0).element();
      const auto y = random_interior_point(c, rng, 2.0).element();
      const auto frame = spectral_decompose(x - y).frame;
      const double after = bregman(diagonal_map(x, frame), diagonal_map(y, frame));
      worst = std::max(worst, after - bregman(x, y));
    }
  }
  return {worst <= 1e-9, fmt("max D(Tx,Ty) - D(x,y) = %.3e over %zu pairs", worst, pairs)};
}

Outcome dual_norm() {
  Rng rng(derive_seed(3, 0));
  double holder = -1e300;
  double witness = 0.0;
  std::size_t n = 0;
  for (const auto& c : headline_cones()) {
    for (int k = 0; k < 500; ++k, ++n) {
      const auto v = random_element(c, rng);
      const auto x = random_element(c, rng);
      holder = std::max(holder, std::abs(inner(v, x)) - trace_p_norm(v, kInfinity) * trace_p_norm(x, 1));
      const auto s = spectral_decompose(x);
      Element w(c);
      for (std::size_t i = 0; i < s.frame.size(); ++i) w += (s.eigenvalues[i] >= 0 ? 1.0 : -1.0) * s.frame[i];
      witness = std::max(witness, std::abs(inner(w, x) - trace_p_norm(x, 1)));
      witness = std::max(witness, std::abs(trace_p_norm(w, kInfinity) - 1.0));
    }
  }
  return {holder <= 1e-9 && witness <= 1e-9,
          fmt("max Holder excess %.3e, max witness slack %.3e over %zu elements", holder, witness, n)};
}


Outcome oftrl_equivalence() {
  Rng rng(derive_seed(4, 0));
  double worst = 0.0;
  std::size_t checks = 0;
  for (const auto& c : {ConeDescriptor::orthant(3), ConeDescriptor::spin(4), ConeDescriptor::sym(2)}) {
    for (bool opt : {false, true}) {
      for (int trial = 0; trial < 10; ++trial) {
        const LearnerConfig cfg(c, 0.6, opt);
        auto state = learner_init(cfg);
        Element sum(c);
        for (int t = 0; t < 3; ++t, ++checks) {
          const auto m = random_element(c, rng);
          sum += m;
          state = learner_step(state, m, cfg);
          const auto oracle = scg::testing::entropic_argmax(opt ? sum + m : sum, cfg.step_size);
          worst = std::max(worst, scg::testing::oracle_trace_norm(state.iterate.element() - oracle));
        }
      }
    }
  }
  return {worst <= 1e-6, fmt("max trace-1 distance to the entropic argmax %.3e over %zu iterates", worst, checks)};
}

Outcome classical_reductions() {
  Rng rng(derive_seed(5, 0));
  const auto oc = ConeDescriptor::orthant(5);
  const LearnerConfig ocfg(oc, 0.8, false);
  auto s = learner_init(ocfg);
  Eigen::VectorXd cum = Eigen::VectorXd::Zero(5);
  double mwu = 0.0;
  for (int t = 0; t < 500; ++t) {
    const auto m = random_element(oc, rng);
    cum += m.data().col(0);
    s = learner_step(s, m, ocfg);
    mwu = std::max(mwu, (s.iterate.element().data().col(0) - scg::testing::softmax(cum, ocfg.step_size))
                            .cwiseAbs()
                            .maxCoeff());
  }

  const int n = 4;
  std::normal_distribution<double> normal;
  Eigen::MatrixXd g(n, n);
  for (int i = 0; i < n * n; ++i) g.data()[i] = normal(rng);
  const Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(g).householderQ();
  const LearnerConfig scfg(ConeDescriptor::sym(n), 0.5, false);
  const LearnerConfig dcfg(ConeDescriptor::orthant(n), 0.5, false);
  auto a = learner_init(scfg);
  auto b = learner_init(dcfg);
  double mmwu = 0.0;
  for (int t = 0; t < 500; ++t) {
    Eigen::VectorXd d(n);
    for (int i = 0; i < n; ++i) d(i) = normal(rng);
    a = learner_step(a, Element::sym(q * d.asDiagonal() * q.transpose()), scfg);
    b = learner_step(b, Element::orthant(d), dcfg);
    const Eigen::MatrixXd expected = q * b.iterate.element().data().col(0).asDiagonal() * q.transpose();
    mmwu = std::max(mmwu, (a.iterate.element().block(0).data - expected).cwiseAbs().maxCoeff());
  }
  return {mwu <= 1e-12 && mmwu <= 1e-10,
          fmt("orthant vs exponential weights %.3e; sym vs eigenvalue learner %.3e (500 rounds each)", mwu, mmwu)};
}

Outcome epsilon_saddle() {
  Eigen::MatrixXd biased(2, 2);
  biased << 2, -1, -1, 1;
  struct Named {
    const char* name;
    BilinearZeroSumGame game;
  };
  const std::vector<Named> games{{"matching pennies", matching_pennies()}, {"biased pennies", matrix_game(biased)}};
  bool ok = true;
  std::string detail;
  for (const auto& [name, game] : games) {
    detail += std::string(detail.empty() ? "" : "; ") + name + ":";
    for (double eps : {0.1, 0.05, 0.01}) {
      const auto s = saddle_point_schedule(game, eps);
      const LearnerConfig cx(game.x_space(), s.step_size, true);
      const LearnerConfig cy(game.y_space(), s.step_size, true);
      SelfPlayOptions o;
      o.rounds = s.rounds;
      o.record_every = 1;
      const double gap = tracked_self_play(game, cx, cy, o).checkpoints.back().gap;
      ok = ok && gap <= eps;
      detail += fmt(" eps=%g T=%zu d=%.2e", eps, s.rounds, gap);
    }
  }
  // The unrounded horizon is linear in 1/eps; ceilings can differ by one.
  const auto mp = matching_pennies();
  double worst_ratio = 0.0;
  for (double eps : {0.1, 0.05, 0.01}) {
    const double ratio = saddle_point_schedule(mp, eps / 2).round_bound / saddle_point_schedule(mp, eps).round_bound;
    worst_ratio = std::max(worst_ratio, std::abs(ratio - 2.0));
  }
  ok = ok && worst_ratio <= 1e-12;
  detail += fmt("; |T(eps/2)/T(eps) - 2| <= %.1e", worst_ratio);
  return {ok, detail};
}

Outcome regret_sum_constant() {
  bool ok = true;
  std::string detail;
  {
    const auto mp = matching_pennies();
    const std::vector<double> l{mp.lipschitz_x(), mp.lipschitz_y()};
    const std::vector<double> r{mp.x_space().entropy_range(), mp.y_space().entropy_range()};
    const double eta = regret_sum_step_size(l);
    const double bound = regret_sum_bound(r, l);
    const std::vector<LearnerConfig> cfgs(2, LearnerConfig(mp.x_space(), eta, true));
    double worst = -1e300;
    n_player_self_play(zero_sum_oracle(mp), cfgs, 10000, [&](std::size_t, std::span<const RegretLedger> ls) {
      worst = std::max(worst, regret(ls[0]) + regret(ls[1]));
    });
    ok = ok && worst <= bound + 1e-6;
    detail += fmt("pennies: max_T sum r = %.4f <= %.4f", worst, bound);
  }
  {
    const std::vector<ConeDescriptor> cones{ConeDescriptor::orthant(3), ConeDescriptor::spin(4), ConeDescriptor::sym(2)};
    const std::vector<double> l(3, 1.0);
    std::vector<double> r;
    for (const auto& c : cones) r.push_back(std::log(static_cast<double>(c.rank())));
    const double eta = regret_sum_step_size(l);
    const double bound = regret_sum_bound(r, l);
    std::vector<LearnerConfig> cfgs;
    for (const auto& c : cones) cfgs.emplace_back(c, eta, true);
    double worst = -1e300;
    n_player_self_play(
        [&](std::span<const SimplexPoint> s) {
          std::vector<Element> out;
          for (const auto& p : s) out.emplace_back(p.descriptor());
          return out;
        },
        cfgs, 10000,
        [&](std::size_t, std::span<const RegretLedger> ls) {
          double sum = 0.0;
          for (const auto& x : ls) sum += regret(x);
          worst = std::max(worst, sum);
        });
    ok = ok && worst <= bound + 1e-6;
    detail += fmt("; 3-player zero game: max_T sum r = %.2e <= %.4f", worst, bound);
  }
  return {ok, detail};
}

double fermat_weber_run(const fermat_weber::Instance& inst, double eps, std::size_t* rounds) {
  const auto g = fermat_weber::build_game(inst);
  const auto s = saddle_point_schedule(g, eps);
  const LearnerConfig cx(g.x_space(), s.step_size, true);
  const LearnerConfig cy(g.y_space(), s.step_size, true);
  SelfPlayOptions o;
  o.rounds = s.rounds;
  o.record_every = std::max<std::size_t>(1, s.rounds / 100);
  const auto trace = tracked_self_play(g, cx, cy, o);
  *rounds = s.rounds;
  return *trace.checkpoints.back().primal_objective;
}

Outcome fermat_weber_correctness() {
  bool ok = true;
  std::string detail;
  std::size_t rounds = 0;

  fermat_weber::Instance single;
  single.maps = {Eigen::MatrixXd::Identity(2, 2)};
  single.targets = {Eigen::VectorXd::Zero(2)};
  single.radius = 1.0;
  const double g1 = fermat_weber_run(single, 1e-3, &rounds);
  ok = ok && std::abs(g1 - 0.0) <= 1e-3;
  detail += fmt("single target g=%.2e (T=%zu)", g1, rounds);

  fermat_weber::Instance two;
  two.maps = {Eigen::MatrixXd::Ones(1, 1), Eigen::MatrixXd::Ones(1, 1)};
  two.targets = {Eigen::VectorXd::Constant(1, -1.0), Eigen::VectorXd::Constant(1, 1.0)};
  two.radius = 5.0;
  const double g2 = fermat_weber_run(two, 1e-3, &rounds);
  ok = ok && std::abs(g2 - 2.0) <= 1e-3;
  detail += fmt("; two-point g-2=%.2e (T=%zu)", g2 - 2.0, rounds);

  fermat_weber::Instance tri;
  Eigen::MatrixXd pts(2, 3);
  for (int i = 0; i < 3; ++i) {
    const double a = std::numbers::pi / 180.0 * std::vector<double>{0.0, 100.0, 220.0}[static_cast<std::size_t>(i)];
    pts.col(i) << std::cos(a), std::sin(a);
    tri.maps.push_back(Eigen::MatrixXd::Identity(2, 2));
    tri.targets.push_back(pts.col(i));
  }
  tri.radius = 1.5;
  const auto median = scg::testing::weiszfeld(pts);
  const double g_star = fermat_weber::sum_of_norms(tri, median);
  const double g3 = fermat_weber_run(tri, 1e-2, &rounds);
  ok = ok && std::abs(g3 - g_star) <= 1e-2;
  detail += fmt("; triangle g-g*=%.2e (T=%zu)", g3 - g_star, rounds);
  return {ok, detail};
}

struct Curve {
  std::vector<std::size_t> t;
  std::vector<double> mean_gap;
};

// Seed-averaged gap of the average iterates at every tenth of the horizon.
Curve averaged_curve(const std::function<BilinearZeroSumGame(std::uint64_t)>& make, double eta, std::size_t rounds,
                     bool optimistic, int seeds) {
  Curve c;
  for (int seed = 0; seed < seeds; ++seed) {
    const auto g = make(static_cast<std::uint64_t>(seed));
    const double step = eta > 0 ? eta : saddle_point_schedule(g, 1.0).step_size;
    const LearnerConfig cx(g.x_space(), step, optimistic);
    const LearnerConfig cy(g.y_space(), step, optimistic);
    SelfPlayOptions o;
    o.rounds = rounds;
    o.record_every = rounds / 10;
    const auto trace = tracked_self_play(g, cx, cy, o);
    if (c.t.empty()) {
      for (const auto& cp : trace.checkpoints) c.t.push_back(cp.t);
      c.mean_gap.assign(c.t.size(), 0.0);
    }
    for (std::size_t i = 0; i < c.t.size(); ++i) c.mean_gap[i] += trace.checkpoints[i].gap / seeds;
  }
  return c;
}

bool non_increasing_after(const Curve& c, std::size_t burn_in) {
  for (std::size_t i = 1; i < c.t.size(); ++i) {
    if (c.t[i - 1] >= burn_in && c.mean_gap[i] > c.mean_gap[i - 1]) return false;
  }
  return true;
}

Outcome gap_decrease() {
  constexpr int kSeeds = 5;
  bool ok = true;
  std::string detail;

  const auto metric = [](std::uint64_t seed) {
    auto rng = make_rng(seed, 0);
    auto data = metric_learning::synthetic_clusters(3, 30, 4, 3.0, rng);
    metric_learning::standardize(data);
    auto pairs = make_rng(seed, 1);
    return metric_learning::build_game(metric_learning::sample_pairs(data, 40, 40, pairs));
  };
  const auto location = [](std::uint64_t seed) {
    auto rng = make_rng(seed, 0);
    return fermat_weber::build_game(fermat_weber::synthetic_instance(10, 15, 5.0, rng));
  };

  struct Setup {
    const char* name;
    std::function<BilinearZeroSumGame(std::uint64_t)> make;
    double eta;  // <= 0 selects the saddle-point schedule's step size
    std::size_t rounds;
  };
  const std::vector<Setup> setups{{"metric learning (d=4, D=40)", metric, 0.0, 3000},
                                  {"facility location (d=10, p=15, eta=0.07)", location, 0.07, 3000}};
  for (const auto& s : setups) {
    const auto plain = averaged_curve(s.make, s.eta, s.rounds, false, kSeeds);
    const auto opt = averaged_curve(s.make, s.eta, s.rounds, true, kSeeds);
    const bool dec = non_increasing_after(plain, s.rounds / 10) && non_increasing_after(opt, s.rounds / 10);
    const bool adv = opt.mean_gap.back() <= plain.mean_gap.back();
    ok = ok && dec && adv;
    detail += fmt("%s%s: decreasing=%s, final gap OSCMWU %.4g vs SCMWU %.4g", detail.empty() ? "" : "; ", s.name,
                  dec ? "yes" : "no", opt.mean_gap.back(), plain.mean_gap.back());
  }
  return {ok, detail};
}

Outcome online_location_regret() {
  bool ok = true;
  std::string detail;
  constexpr std::size_t kRounds = 5000;
  for (bool opt : {false, true}) {
    detail += std::string(detail.empty() ? "" : "; ") + (opt ? "OSCMWU" : "SCMWU") + ":";
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      online_location::StreamParams p;
      p.horizon = kRounds;
      p.seed = derive_seed(seed, 0);
      const LearnerConfig cx(ConeDescriptor::spin(p.location_dim + 1), 10.0, opt);
      const LearnerConfig cy(ConeDescriptor::spin(p.residual_dim + 1), 10.0, opt);
      const auto r = online_location::online_self_play(p, cx, cy);
      const double early = r.scaled_regret_sum[kRounds / 10 - 1];
      const double late = r.scaled_regret_sum[kRounds - 1];
      // The scaled sum may approach zero from below; vanishing is judged on
      // its magnitude.
      ok = ok && std::abs(late) < std::abs(early);
      detail += fmt(" [%.3e -> %.3e]", early, late);
    }
  }
  return {ok, detail};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_seconds;
    std::function<Outcome()> run;
  };
  std::vector<Criterion> criteria{
      {1, "strong convexity of the negative entropy", 10, strong_convexity},
      {2, "data-processing inequality", 10, data_processing},
      {3, "trace-norm duality", 0, dual_norm},
      {4, "OFTRL equivalence", 0, oftrl_equivalence},
      {5, "classical reductions", 0, classical_reductions},
      {6, "eps-saddle point", 30, epsilon_saddle},
      {8, "regret-sum constant", 0, regret_sum_constant},
      {9, "Fermat-Weber correctness", 60, fermat_weber_correctness},
      {10, "decreasing gap and optimistic advantage", 120, gap_decrease},
      {11, "online facility location", 0, online_location_regret},
  };

  int failures = 0;
  auto report = [&](int id, const char* name, bool pass, const std::string& detail, double seconds) {
    std::printf("[%s] %2d %s: %s (%.2f s)\n", pass ? "PASS" : "FAIL", id, name, detail.c_str(), seconds);
    std::fflush(stdout);
    if (!pass) ++failures;
  };

  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool pass = out.pass;
    if (c.limit_seconds > 0 && secs >= c.limit_seconds) {
      pass = false;
      out.detail += fmt("; exceeded %.0f s", c.limit_seconds);
    }
    report(c.id, c.name, pass, out.detail, secs);
  }

  const bool gap_ok = tally.violations == 0 && !tally.negative_gap && tally.checkpoints > 0;
  report(7, "gap-regret inequality", gap_ok,
         fmt("%zu checkpoints in %zu runs, max gap - (r1+r2)/T = %.3e, %zu violations", tally.checkpoints, tally.runs,
             tally.worst, tally.violations),
         0.0);

  std::printf("%d of %zu criteria failed\n", failures, criteria.size() + 1);
  return failures == 0 ? 0 : 1;
}
