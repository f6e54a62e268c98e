#include "scg/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "scg/error.hpp"
#include "scg/jacobi.hpp"

namespace scg {

BlockSpectrum block_spectrum(const Block& block, const NumericPolicy& policy) {
  BlockSpectrum out;
  out.kind = block.kind;
  switch (block.kind) {
    case ConeKind::orthant:
      out.values = block.data.col(0);
      break;
    case ConeKind::spin: {
      const auto m = block.data.rows() - 1;
      const double s = block.data(0, 0);
      Eigen::VectorXd bar = block.data.col(0).tail(m);
      const double r = bar.norm();
      out.values.resize(2);
      out.values << s + r, s - r;
      if (r < policy.degeneracy) {
        out.vectors = Eigen::VectorXd::Zero(m);
        out.vectors(0, 0) = 1.0;
      } else {
        out.vectors = bar / r;
      }
      break;
    }
    case ConeKind::sym: {
      auto eig = jacobi_eigen(block.data);
      out.values = std::move(eig.values);
      out.vectors = std::move(eig.vectors);
      break;
    }
    case ConeKind::product:
      break;
  }
  return out;
}

Block compose_block(const BlockSpectrum& spectrum, const Eigen::VectorXd& values) {
  Block b;
  b.kind = spectrum.kind;
  switch (spectrum.kind) {
    case ConeKind::orthant:
      b.data = values;
      break;
    case ConeKind::spin: {
      const auto m = spectrum.vectors.rows();
      b.data.resize(m + 1, 1);
      b.data(0, 0) = 0.5 * (values(0) + values(1));
      b.data.col(0).tail(m) = 0.5 * (values(0) - values(1)) * spectrum.vectors.col(0);
      break;
    }
    case ConeKind::sym: {
      const auto& v = spectrum.vectors;
      Eigen::MatrixXd m = v * values.asDiagonal() * v.transpose();
      b.data = 0.5 * (m + m.transpose());
      break;
    }
    case ConeKind::product:
      break;
  }
  return b;
}

SpectralDecomposition spectral_decompose(const Element& x, const NumericPolicy& policy) {
  SpectralDecomposition out;
  out.eigenvalues.reserve(x.descriptor().rank());
  out.frame.reserve(x.descriptor().rank());
  const auto blocks = x.blocks();
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    const BlockSpectrum spec = block_spectrum(blocks[k], policy);
    const auto r = spec.values.size();
    for (Eigen::Index i = 0; i < r; ++i) {
      out.eigenvalues.push_back(spec.values(i));
      Eigen::VectorXd unit = Eigen::VectorXd::Zero(r);
      unit(i) = 1.0;
      Element q(x.descriptor());
      q.block(k) = compose_block(spec, unit);
      out.frame.push_back(std::move(q));
    }
  }
  return out;
}

Eigen::VectorXd eigenvalues(const Element& x) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(x.descriptor().rank()));
  Eigen::Index pos = 0;
  for (const auto& b : x.blocks()) {
    const BlockSpectrum spec = block_spectrum(b);
    out.segment(pos, spec.values.size()) = spec.values;
    pos += spec.values.size();
  }
  return out;
}

double lambda_max(const Element& x) { return eigenvalues(x).maxCoeff(); }
double lambda_min(const Element& x) { return eigenvalues(x).minCoeff(); }

Element lowner_map(const Element& x, const std::function<double(double)>& fn) {
  Element out(x.descriptor());
  const auto blocks = x.blocks();
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    const BlockSpectrum spec = block_spectrum(blocks[k]);
    Eigen::VectorXd mapped = spec.values.unaryExpr(fn);
    out.block(k) = compose_block(spec, mapped);
  }
  return out;
}

namespace {

void check_domain(const Eigen::VectorXd& values, ScalarFunction fn) {
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    const double lam = values(i);
    switch (fn.kind) {
      case ScalarFunction::Kind::ln:
        if (!(lam > 0.0)) throw DomainError("ln requires strictly positive eigenvalues", lam);
        break;
      case ScalarFunction::Kind::pow: {
        const bool integral = std::floor(fn.exponent) == fn.exponent;
        if (!integral && !(lam > 0.0)) {
          throw DomainError("fractional power requires strictly positive eigenvalues", lam);
        }
        if (integral && fn.exponent < 0.0 && lam == 0.0) {
          throw DomainError("negative power of a zero eigenvalue", lam);
        }
        break;
      }
      default:
        break;
    }
  }
}

double apply_scalar(ScalarFunction fn, double lam) {
  switch (fn.kind) {
    case ScalarFunction::Kind::exp: return std::exp(lam);
    case ScalarFunction::Kind::ln: return std::log(lam);
    case ScalarFunction::Kind::abs: return std::abs(lam);
    case ScalarFunction::Kind::pow: return std::pow(lam, fn.exponent);
  }
  return lam;
}

}  // namespace

Element lowner_apply(const Element& x, ScalarFunction fn) {
  Element out(x.descriptor());
  const auto blocks = x.blocks();
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    const BlockSpectrum spec = block_spectrum(blocks[k]);
    check_domain(spec.values, fn);
    Eigen::VectorXd mapped = spec.values.unaryExpr([fn](double lam) { return apply_scalar(fn, lam); });
    out.block(k) = compose_block(spec, mapped);
  }
  return out;
}

double trace_p_norm(const Element& x, double p) {
  if (!(p >= 1.0)) throw Error(ErrorCode::invalid_argument, "trace_p_norm requires p >= 1");
  const Eigen::VectorXd lam = eigenvalues(x).cwiseAbs();
  if (std::isinf(p)) return lam.maxCoeff();
  if (p == 1.0) return lam.sum();
  return std::pow(lam.array().pow(p).sum(), 1.0 / p);
}

bool in_cone(const Element& x, double tol) { return lambda_min(x) >= -tol; }

void check_jordan_frame(std::span<const Element> frame, double tol) {
  if (frame.empty()) throw Error(ErrorCode::frame_invariant, "empty frame");
  const ConeDescriptor& desc = frame.front().descriptor();
  if (frame.size() != desc.rank()) {
    throw Error(ErrorCode::frame_invariant, "frame size " + std::to_string(frame.size()) +
                                                " does not match rank " + std::to_string(desc.rank()));
  }
  Element sum(desc);
  for (std::size_t i = 0; i < frame.size(); ++i) {
    const Element& qi = frame[i];
    require_same_descriptor(qi, frame.front(), "check_jordan_frame");
    if (max_abs_difference(jordan_product(qi, qi), qi) > tol) {
      throw Error(ErrorCode::frame_invariant, "frame element " + std::to_string(i) + " is not idempotent");
    }
    if (std::abs(trace(qi) - 1.0) > tol) {
      throw Error(ErrorCode::frame_invariant, "frame element " + std::to_string(i) + " is not primitive");
    }
    for (std::size_t j = i + 1; j < frame.size(); ++j) {
      if (max_abs_difference(jordan_product(qi, frame[j]), Element(desc)) > tol) {
        throw Error(ErrorCode::frame_invariant,
                    "frame elements " + std::to_string(i) + " and " + std::to_string(j) + " are not orthogonal");
      }
    }
    sum += qi;
  }
  if (max_abs_difference(sum, identity(desc)) > tol) {
    throw Error(ErrorCode::frame_invariant, "frame does not sum to the identity");
  }
}

Element diagonal_map(const Element& z, std::span<const Element> frame) {
  check_jordan_frame(frame);
  Element out(z.descriptor());
  for (const auto& q : frame) {
    const double nq = norm(q);
    out += (inner(z, q) / (nq * nq)) * q;
  }
  return out;
}

}  // namespace scg
