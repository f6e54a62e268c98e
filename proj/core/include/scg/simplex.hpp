#pragma once

#include "scg/element.hpp"
#include "scg/numeric_policy.hpp"

namespace scg {

/// Which trace constraint a strategy set imposes on a cone.
enum class SimplexKind {
  /// Δ_K = {x in K : tr(x) = 1}.
  trace_one,
  /// Product of the trace-one slices of each top-level component of a product
  /// cone: every component has unit trace.
  per_component,
};

/// A point of a generalized simplex. Only produced by validating factories.
class SimplexPoint {
 public:
  const Element& element() const { return element_; }
  const ConeDescriptor& descriptor() const { return element_.descriptor(); }

  /// Validates membership in Δ_K of the element's own descriptor.
  static SimplexPoint validated(Element x, double tol = kDefaultPolicy.structural);

 private:
  friend class Simplex;
  explicit SimplexPoint(Element x) : element_(std::move(x)) {}
  Element element_;
};

struct SupportValue {
  double value = 0.0;
  SimplexPoint argmax;
};

/// Strategy set over a symmetric cone: its trace-one slice, or the product of
/// per-component trace-one slices.
class Simplex {
 public:
  explicit Simplex(ConeDescriptor cone, SimplexKind kind = SimplexKind::trace_one);

  const ConeDescriptor& cone() const { return cone_; }
  SimplexKind kind() const { return kind_; }

  /// Number of trace-one constraints (1, or the number of components).
  std::size_t constraint_count() const;
  /// Descriptor of the j-th constrained piece.
  ConeDescriptor piece(std::size_t j) const;

  /// Upper bound on the range of the negative entropy over the set:
  /// ln r, or sum_j ln r_j for per-component sets.
  double entropy_range() const;

  /// Entropy minimiser: e / r on every constrained piece.
  SimplexPoint uniform_point() const;

  /// exp(w) normalised to unit trace on every constrained piece. Invariant
  /// under w -> w + c e; the largest eigenvalue of each piece is subtracted
  /// before exponentiation.
  SimplexPoint exp_normalize(const Element& w) const;

  /// max over the set of <c, y>, with a maximiser built from primitive
  /// idempotents of the top eigenvalue of each piece (first in
  /// decomposition order on ties).
  SupportValue support_max(const Element& c) const;

  bool contains(const Element& x, double tol = kDefaultPolicy.structural) const;
  /// Throws ErrorCode::invariant_violation unless contains(x, tol).
  SimplexPoint point(Element x, double tol = kDefaultPolicy.structural) const;

 private:
  ConeDescriptor cone_;
  SimplexKind kind_;
};

SimplexPoint uniform_point(const ConeDescriptor& descriptor);
SimplexPoint exp_normalize(const Element& w);
SupportValue support_max(const Element& c);

enum class BoundaryPolicy {
  /// Non-positive eigenvalues are an error.
  strict,
  /// Eigenvalues in [0, 1e-300) contribute 0 ln 0 = 0.
  zero_log_zero,
};

/// Negative entropy tr(x ∘ ln x) = sum lambda_i ln lambda_i.
double entropy(const Element& x, BoundaryPolicy policy = BoundaryPolicy::strict);

/// Bregman divergence of the negative entropy,
/// tr(x ∘ ln x - x ∘ ln y + y - x). Both arguments must be interior.
double bregman(const Element& x, const Element& y);

}  // namespace scg
