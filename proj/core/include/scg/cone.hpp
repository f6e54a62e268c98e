#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace scg {

enum class ConeKind { orthant, spin, sym, product };

/// Names a symmetric cone: the nonnegative orthant R^n_+, the second-order
/// cone L^n_+ (Jordan spin algebra), the PSD cone S^n_+, or a Cartesian
/// product of those.
///
/// Descriptors are immutable values; copies share the underlying node.
class ConeDescriptor {
 public:
  /// Default-constructs orthant(1).
  ConeDescriptor();

  static ConeDescriptor orthant(std::size_t n);
  /// Requires n >= 2: one scalar part and at least one vector coordinate.
  static ConeDescriptor spin(std::size_t n);
  static ConeDescriptor sym(std::size_t n);
  static ConeDescriptor product(std::vector<ConeDescriptor> components);

  ConeKind kind() const;
  /// Size parameter for simple cones; number of components for products.
  std::size_t n() const;
  /// Top-level components of a product (empty for simple cones).
  const std::vector<ConeDescriptor>& components() const;

  std::size_t rank() const;
  /// Number of independent coordinates (n(n+1)/2 for sym).
  std::size_t ambient_dim() const;

  /// Simple (non-product) factors in depth-first order. Nested products
  /// flatten to the same list; a simple cone is its own single leaf. The view
  /// is valid while this descriptor is alive.
  std::span<const ConeDescriptor> leaves() const;

  /// Index of the first leaf of top-level component i.
  std::size_t leaf_offset(std::size_t component) const;

  bool is_product() const { return kind() == ConeKind::product; }

  /// Compact text form, e.g. "product[orthant(2),spin(3)]".
  std::string to_string() const;
  static ConeDescriptor parse(const std::string& text);

  friend bool operator==(const ConeDescriptor& a, const ConeDescriptor& b);

  /// Opaque shared representation.
  struct Node;

 private:
  explicit ConeDescriptor(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

}  // namespace scg
