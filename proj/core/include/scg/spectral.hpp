#pragma once

#include <Eigen/Dense>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "scg/element.hpp"
#include "scg/numeric_policy.hpp"

namespace scg {

/// x = sum_i eigenvalues[i] * frame[i] over a Jordan frame.
struct SpectralDecomposition {
  std::vector<double> eigenvalues;
  std::vector<Element> frame;
};

/// Spectrum of a single simple block, without materialising frame elements.
///
/// Orthant: `vectors` is empty and the frame is the coordinate basis.
/// Spin: `vectors` is the unit direction u (column) with q± = ½(1, ±u) and
/// values ordered (s + |x|, s - |x|).
/// Sym: `vectors` holds orthonormal eigenvectors as columns, values
/// descending.
struct BlockSpectrum {
  ConeKind kind = ConeKind::orthant;
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
};

BlockSpectrum block_spectrum(const Block& block, const NumericPolicy& policy = kDefaultPolicy);

/// Rebuilds sum_i values[i] q_i from a block spectrum and replacement values.
Block compose_block(const BlockSpectrum& spectrum, const Eigen::VectorXd& values);

/// Type-II spectral decomposition. Product frames are the per-block frames
/// embedded with zeros elsewhere; eigenvalues follow leaf order.
SpectralDecomposition spectral_decompose(const Element& x, const NumericPolicy& policy = kDefaultPolicy);

/// All eigenvalues in the same order as spectral_decompose.
Eigen::VectorXd eigenvalues(const Element& x);

double lambda_max(const Element& x);
double lambda_min(const Element& x);

/// Scalar function lifted by the Löwner extension.
struct ScalarFunction {
  enum class Kind { exp, ln, abs, pow };
  Kind kind = Kind::exp;
  double exponent = 1.0;

  static ScalarFunction exp() { return {Kind::exp, 1.0}; }
  static ScalarFunction ln() { return {Kind::ln, 1.0}; }
  static ScalarFunction abs() { return {Kind::abs, 1.0}; }
  static ScalarFunction pow(double alpha) { return {Kind::pow, alpha}; }
};

/// sum_i fn(lambda_i) q_i. Throws DomainError for ln or a non-integer power
/// on a non-positive eigenvalue, and for a negative integer power at zero.
Element lowner_apply(const Element& x, ScalarFunction fn);

/// Löwner extension of an arbitrary scalar map; no domain checks.
Element lowner_map(const Element& x, const std::function<double(double)>& fn);

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// (sum |lambda_i|^p)^(1/p), or max |lambda_i| for p = infinity.
double trace_p_norm(const Element& x, double p);

/// True iff the smallest eigenvalue is >= -tol.
bool in_cone(const Element& x, double tol = 0.0);

/// Checks idempotency, unit trace, mutual orthogonality and completeness of a
/// Jordan frame. Throws ErrorCode::frame_invariant on failure.
void check_jordan_frame(std::span<const Element> frame, double tol = kDefaultPolicy.structural);

/// z -> sum_i <z, q̂_i> q̂_i with q̂_i = q_i / |q_i|. The frame is validated
/// first.
Element diagonal_map(const Element& z, std::span<const Element> frame);

}  // namespace scg
