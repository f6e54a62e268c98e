#include "scg/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>
#include <string>

#include "scg/error.hpp"
#include "scg/spectral.hpp"

namespace scg {

namespace {

bool in_trace_one_slice(const Element& x, double tol) {
  return std::abs(trace(x) - 1.0) <= tol && in_cone(x, tol);
}

}  // namespace

SimplexPoint SimplexPoint::validated(Element x, double tol) {
  return Simplex(x.descriptor()).point(std::move(x), tol);
}

Simplex::Simplex(ConeDescriptor cone, SimplexKind kind) : cone_(std::move(cone)), kind_(kind) {
  if (kind_ == SimplexKind::per_component && !cone_.is_product()) kind_ = SimplexKind::trace_one;
}

std::size_t Simplex::constraint_count() const {
  return kind_ == SimplexKind::per_component ? cone_.components().size() : 1;
}

ConeDescriptor Simplex::piece(std::size_t j) const {
  return kind_ == SimplexKind::per_component ? cone_.components().at(j) : cone_;
}

double Simplex::entropy_range() const {
  double r = 0.0;
  for (std::size_t j = 0; j < constraint_count(); ++j) r += std::log(static_cast<double>(piece(j).rank()));
  return r;
}

SimplexPoint Simplex::uniform_point() const {
  if (kind_ == SimplexKind::trace_one) {
    return SimplexPoint(identity(cone_) * (1.0 / static_cast<double>(cone_.rank())));
  }
  Element x(cone_);
  for (std::size_t j = 0; j < constraint_count(); ++j) {
    const ConeDescriptor p = piece(j);
    x.set_component(j, identity(p) * (1.0 / static_cast<double>(p.rank())));
  }
  return SimplexPoint(std::move(x));
}

namespace {

// Exponentiates the leaves [first, last) of `w` into `out` with a common shift
// and unit total trace across those leaves.
void exp_normalize_leaves(const Element& w, Element& out, std::size_t first, std::size_t last) {
  std::vector<BlockSpectrum> specs;
  specs.reserve(last - first);
  double shift = -std::numeric_limits<double>::infinity();
  for (std::size_t k = first; k < last; ++k) {
    specs.push_back(block_spectrum(w.block(k)));
    shift = std::max(shift, specs.back().values.maxCoeff());
  }
  if (!std::isfinite(shift)) throw Error(ErrorCode::non_finite, "exp_normalize: non-finite weights");
  double total = 0.0;
  std::vector<Eigen::VectorXd> mapped;
  mapped.reserve(specs.size());
  for (const auto& s : specs) {
    mapped.push_back((s.values.array() - shift).exp().matrix());
    total += mapped.back().sum();
  }
  for (std::size_t k = first; k < last; ++k) {
    out.block(k) = compose_block(specs[k - first], mapped[k - first] / total);
  }
}

}  // namespace

SimplexPoint Simplex::exp_normalize(const Element& w) const {
  if (!(w.descriptor() == cone_)) {
    throw Error(ErrorCode::descriptor_mismatch, "exp_normalize: weights live in " + w.descriptor().to_string() +
                                                    ", simplex over " + cone_.to_string());
  }
  Element out(cone_);
  if (kind_ == SimplexKind::trace_one) {
    exp_normalize_leaves(w, out, 0, w.blocks().size());
  } else {
    for (std::size_t j = 0; j < constraint_count(); ++j) {
      const std::size_t first = cone_.leaf_offset(j);
      const std::size_t last = first + cone_.components()[j].leaves().size();
      exp_normalize_leaves(w, out, first, last);
    }
  }
  return SimplexPoint(std::move(out));
}

namespace {

struct LeafMax {
  double value;
  std::size_t leaf;
  Eigen::Index index;
  BlockSpectrum spectrum;
};

// First maximal eigenvalue across leaves [first, last) in decomposition order.
LeafMax leaf_max(const Element& c, std::size_t first, std::size_t last) {
  LeafMax best{-std::numeric_limits<double>::infinity(), first, 0, {}};
  for (std::size_t k = first; k < last; ++k) {
    BlockSpectrum s = block_spectrum(c.block(k));
    for (Eigen::Index i = 0; i < s.values.size(); ++i) {
      if (s.values(i) > best.value) {
        best.value = s.values(i);
        best.leaf = k;
        best.index = i;
        best.spectrum = s;
      }
    }
  }
  return best;
}

}  // namespace

SupportValue Simplex::support_max(const Element& c) const {
  if (!(c.descriptor() == cone_)) {
    throw Error(ErrorCode::descriptor_mismatch, "support_max: descriptor mismatch");
  }
  Element argmax(cone_);
  double value = 0.0;
  for (std::size_t j = 0; j < constraint_count(); ++j) {
    std::size_t first = 0;
    std::size_t last = c.blocks().size();
    if (kind_ == SimplexKind::per_component) {
      first = cone_.leaf_offset(j);
      last = first + cone_.components()[j].leaves().size();
    }
    LeafMax m = leaf_max(c, first, last);
    if (!std::isfinite(m.value)) throw Error(ErrorCode::non_finite, "support_max: non-finite eigenvalue");
    value += m.value;
    Eigen::VectorXd unit = Eigen::VectorXd::Zero(m.spectrum.values.size());
    unit(m.index) = 1.0;
    argmax.block(m.leaf) = compose_block(m.spectrum, unit);
  }
  return SupportValue{value, SimplexPoint(std::move(argmax))};
}

bool Simplex::contains(const Element& x, double tol) const {
  if (!(x.descriptor() == cone_)) return false;
  if (kind_ == SimplexKind::trace_one) return in_trace_one_slice(x, tol);
  for (std::size_t j = 0; j < constraint_count(); ++j) {
    if (!in_trace_one_slice(x.component(j), tol)) return false;
  }
  return true;
}

SimplexPoint Simplex::point(Element x, double tol) const {
  if (!contains(x, tol)) {
    throw Error(ErrorCode::invariant_violation,
                "element is not in the generalized simplex over " + cone_.to_string());
  }
  return SimplexPoint(std::move(x));
}

SimplexPoint uniform_point(const ConeDescriptor& descriptor) { return Simplex(descriptor).uniform_point(); }

SimplexPoint exp_normalize(const Element& w) { return Simplex(w.descriptor()).exp_normalize(w); }

SupportValue support_max(const Element& c) { return Simplex(c.descriptor()).support_max(c); }

double entropy(const Element& x, BoundaryPolicy policy) {
  const Eigen::VectorXd lam = eigenvalues(x);
  double s = 0.0;
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    const double l = lam(i);
    if (l > 0.0) {
      s += l * std::log(l);
    } else if (policy == BoundaryPolicy::zero_log_zero && l >= 0.0 && l < 1e-300) {
      continue;
    } else {
      throw DomainError("entropy requires strictly positive eigenvalues", l);
    }
  }
  return s;
}

double bregman(const Element& x, const Element& y) {
  require_same_descriptor(x, y, "bregman");
  const Element ln_x = lowner_apply(x, ScalarFunction::ln());
  const Element ln_y = lowner_apply(y, ScalarFunction::ln());
  return inner(x, ln_x) - inner(x, ln_y) + trace(y) - trace(x);
}

}  // namespace scg
