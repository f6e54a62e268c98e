#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace scg::testing {

namespace {

// Euclidean projection of y onto {x : x_i >= floor, sum x = 1}.
Eigen::VectorXd project_floored_simplex(const Eigen::VectorXd& y, double floor) {
  const auto n = y.size();
  const double mass = 1.0 - floor * static_cast<double>(n);
  Eigen::VectorXd z = y.array() - floor;
  std::vector<double> sorted(z.data(), z.data() + n);
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double cumsum = 0.0;
  double theta = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    cumsum += sorted[static_cast<std::size_t>(k)];
    const double t = (cumsum - mass) / static_cast<double>(k + 1);
    if (sorted[static_cast<std::size_t>(k)] - t > 0) theta = t;
  }
  return (z.array() - theta).max(0.0) + floor;
}

}  // namespace

Element random_element(const ConeDescriptor& desc, Rng& rng, double scale) {
  std::normal_distribution<double> normal(0.0, scale);
  Element x(desc);
  for (auto& block : x.blocks()) {
    auto& m = block.data;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = normal(rng);
    }
    if (block.kind == ConeKind::sym) m = (0.5 * (m + m.transpose())).eval();
  }
  return x;
}

SimplexPoint random_interior_point(const ConeDescriptor& desc, Rng& rng, double scale) {
  return exp_normalize(random_element(desc, rng, scale));
}

Eigen::VectorXd oracle_eigenvalues(const Element& x) {
  std::vector<double> all;
  for (const auto& block : x.blocks()) {
    std::vector<double> vals;
    switch (block.kind) {
      case ConeKind::orthant:
        for (Eigen::Index i = 0; i < block.data.rows(); ++i) vals.push_back(block.data(i, 0));
        break;
      case ConeKind::spin: {
        const double s = block.data(0, 0);
        const double r = block.data.col(0).tail(block.data.rows() - 1).norm();
        vals = {s + r, s - r};
        break;
      }
      case ConeKind::sym: {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(block.data, Eigen::EigenvaluesOnly);
        for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) vals.push_back(es.eigenvalues()(i));
        break;
      }
      case ConeKind::product:
        throw std::logic_error("product blocks do not exist");
    }
    std::sort(vals.begin(), vals.end(), std::greater<>());
    all.insert(all.end(), vals.begin(), vals.end());
  }
  return Eigen::Map<Eigen::VectorXd>(all.data(), static_cast<Eigen::Index>(all.size()));
}

double oracle_trace_norm(const Element& x) { return oracle_eigenvalues(x).cwiseAbs().sum(); }

Element entropic_argmax(const Element& g, double eta) {
  if (g.blocks().size() != 1) throw std::invalid_argument("entropic_argmax handles simple cones only");
  const auto& gb = g.block(0);
  const double floor = 1e-12;
  const int iterations = 200000;
  Element result(g.descriptor());
  auto& out = result.block(0).data;

  switch (gb.kind) {
    case ConeKind::orthant: {
      const auto n = gb.data.rows();
      Eigen::VectorXd x = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
      for (int it = 0; it < iterations; ++it) {
        const double step = 0.5 * x.minCoeff();
        Eigen::VectorXd grad = eta * gb.data.col(0).array() - x.array().log() - 1.0;
        Eigen::VectorXd next = project_floored_simplex(x + step * grad, floor);
        const double moved = (next - x).lpNorm<1>();
        x = next;
        if (moved < 1e-15) break;
      }
      out.col(0) = x;
      break;
    }
    case ConeKind::spin: {
      // s is pinned to 1/2 by the trace; ascend in the vector part.
      const auto k = gb.data.rows() - 1;
      const Eigen::VectorXd gbar = gb.data.col(0).tail(k);
      Eigen::VectorXd v = Eigen::VectorXd::Zero(k);
      for (int it = 0; it < iterations; ++it) {
        const double r = v.norm();
        const double lp = 0.5 + r;
        const double lm = 0.5 - r;
        Eigen::VectorXd grad = 2.0 * eta * gbar;
        if (r > 0.0) grad -= (std::log(lp) - std::log(lm)) * v / r;
        const double step = 0.5 * lm;
        Eigen::VectorXd next = v + step * grad;
        const double cap = 0.5 - floor;
        if (next.norm() > cap) next *= cap / next.norm();
        const double moved = (next - v).norm();
        v = next;
        if (moved < 1e-15) break;
      }
      out(0, 0) = 0.5;
      out.col(0).tail(k) = v;
      break;
    }
    case ConeKind::sym: {
      const auto n = gb.data.rows();
      Eigen::MatrixXd x = Eigen::MatrixXd::Identity(n, n) / static_cast<double>(n);
      for (int it = 0; it < iterations; ++it) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(x);
        const Eigen::VectorXd lam = es.eigenvalues();
        const Eigen::MatrixXd log_x = es.eigenvectors() * lam.array().log().matrix().asDiagonal() *
                                      es.eigenvectors().transpose();
        const Eigen::MatrixXd grad = eta * gb.data - log_x - Eigen::MatrixXd::Identity(n, n);
        const Eigen::MatrixXd y = x + 0.5 * lam.minCoeff() * grad;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ys(0.5 * (y + y.transpose()));
        const Eigen::VectorXd proj = project_floored_simplex(ys.eigenvalues(), floor);
        const Eigen::MatrixXd next = ys.eigenvectors() * proj.asDiagonal() * ys.eigenvectors().transpose();
        const double moved = (next - x).norm();
        x = next;
        if (moved < 1e-15) break;
      }
      out = x;
      break;
    }
    case ConeKind::product:
      break;
  }
  return result;
}

Eigen::VectorXd softmax(const Eigen::VectorXd& cumulative, double eta) {
  std::vector<long double> w(static_cast<std::size_t>(cumulative.size()));
  long double total = 0.0L;
  for (Eigen::Index i = 0; i < cumulative.size(); ++i) {
    w[static_cast<std::size_t>(i)] = std::exp(static_cast<long double>(eta) * cumulative(i));
    total += w[static_cast<std::size_t>(i)];
  }
  Eigen::VectorXd p(cumulative.size());
  for (Eigen::Index i = 0; i < p.size(); ++i) p(i) = static_cast<double>(w[static_cast<std::size_t>(i)] / total);
  return p;
}

double scalar_kl(const Eigen::VectorXd& p, const Eigen::VectorXd& q) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (p(i) > 0.0) s += p(i) * std::log(p(i) / q(i));
  }
  return s;
}

PiecewiseMin minimize_max_of_lines(const std::vector<double>& slopes, const std::vector<double>& offsets, double lo,
                                   double hi) {
  auto envelope = [&](double t) {
    double m = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < slopes.size(); ++k) m = std::max(m, slopes[k] * t + offsets[k]);
    return m;
  };
  std::vector<double> candidates{lo, hi};
  for (std::size_t i = 0; i < slopes.size(); ++i) {
    for (std::size_t j = i + 1; j < slopes.size(); ++j) {
      if (slopes[i] == slopes[j]) continue;
      const double t = (offsets[j] - offsets[i]) / (slopes[i] - slopes[j]);
      if (t >= lo && t <= hi) candidates.push_back(t);
    }
  }
  PiecewiseMin best{lo, envelope(lo)};
  for (double t : candidates) {
    const double v = envelope(t);
    if (v < best.value) best = {t, v};
  }
  return best;
}

Eigen::VectorXd weiszfeld(const Eigen::MatrixXd& targets, int iterations, double stop) {
  Eigen::VectorXd x = targets.rowwise().mean();
  for (int it = 0; it < iterations; ++it) {
    Eigen::VectorXd num = Eigen::VectorXd::Zero(x.size());
    double den = 0.0;
    for (Eigen::Index i = 0; i < targets.cols(); ++i) {
      const double r = (x - targets.col(i)).norm();
      if (r < 1e-12) continue;
      num += targets.col(i) / r;
      den += 1.0 / r;
    }
    if (den == 0.0) break;
    const Eigen::VectorXd next = num / den;
    const double moved = (next - x).norm();
    x = next;
    if (moved < stop) break;
  }
  return x;
}

}  // namespace scg::testing
