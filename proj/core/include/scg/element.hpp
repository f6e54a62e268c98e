#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <span>
#include <vector>

#include "scg/cone.hpp"

namespace scg {

/// Payload of one simple factor. Orthant and spin blocks are n x 1 columns
/// (spin stores the scalar part s in row 0 followed by the vector part);
/// sym blocks are dense symmetric n x n matrices.
struct Block {
  ConeKind kind = ConeKind::orthant;
  Eigen::MatrixXd data;

  std::size_t size() const { return static_cast<std::size_t>(data.rows()); }
};

/// An element of the Euclidean Jordan algebra named by its descriptor.
///
/// Storage is one Block per leaf of the descriptor, so nested products are
/// flat in memory. Arithmetic is blockwise and requires equal descriptors.
class Element {
 public:
  /// Zero of orthant(1).
  Element();
  /// Zero element of the given algebra.
  explicit Element(ConeDescriptor descriptor);

  static Element zero(const ConeDescriptor& descriptor) { return Element(descriptor); }
  static Element orthant(const Eigen::VectorXd& values);
  static Element orthant(std::initializer_list<double> values);
  /// Spin element (s, bar). bar must be non-empty.
  static Element spin(double s, const Eigen::VectorXd& bar);
  static Element spin(double s, std::initializer_list<double> bar);
  /// Symmetric matrix element; the input is symmetrised as (M + M^T) / 2.
  static Element sym(const Eigen::MatrixXd& matrix);
  static Element product(const std::vector<Element>& components);

  /// Builds an element from ambient coordinates (see coordinates()).
  static Element from_coordinates(const ConeDescriptor& descriptor, const Eigen::VectorXd& coords);

  const ConeDescriptor& descriptor() const { return descriptor_; }

  std::span<const Block> blocks() const { return blocks_; }
  std::span<Block> blocks() { return blocks_; }
  const Block& block(std::size_t leaf) const { return blocks_.at(leaf); }
  Block& block(std::size_t leaf) { return blocks_.at(leaf); }

  /// Top-level component i of a product element (the element itself for a
  /// simple cone and i == 0).
  Element component(std::size_t i) const;
  /// Overwrites top-level component i.
  void set_component(std::size_t i, const Element& value);

  /// Orthant values, or the column of a spin block (simple elements only).
  const Eigen::MatrixXd& data() const;

  /// Ambient coordinates: orthant and spin blocks verbatim, sym blocks as the
  /// upper triangle in row-major order. Length is ambient_dim().
  Eigen::VectorXd coordinates() const;

  bool all_finite() const;

  Element& operator+=(const Element& other);
  Element& operator-=(const Element& other);
  Element& operator*=(double scale);

  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator*(Element a, double s) { return a *= s; }
  friend Element operator*(double s, Element a) { return a *= s; }
  friend Element operator-(Element a) { return a *= -1.0; }

 private:
  ConeDescriptor descriptor_;
  std::vector<Block> blocks_;
};

/// Throws ErrorCode::descriptor_mismatch unless a and b share a descriptor.
void require_same_descriptor(const Element& a, const Element& b, const char* what);

/// Unit element e.
Element identity(const ConeDescriptor& descriptor);

/// Jordan product x ∘ y.
Element jordan_product(const Element& x, const Element& y);

double trace(const Element& x);

/// Canonical inner product tr(x ∘ y). On spin blocks this is twice the
/// Euclidean dot product.
double inner(const Element& x, const Element& y);

/// sqrt(inner(x, x)).
double norm(const Element& x);

/// Diagonal metric G with inner(x, y) = coords(x)^T G coords(y).
Eigen::VectorXd coordinate_metric(const ConeDescriptor& descriptor);

/// Largest absolute difference between corresponding stored entries.
double max_abs_difference(const Element& a, const Element& b);

}  // namespace scg
