#pragma once

namespace scg {

/// Tolerances shared by structural checks across the library.
struct NumericPolicy {
  /// Idempotency, orthogonality, reconstruction and simplex-membership checks.
  double structural = 1e-9;
  /// Below this a spin vector part is treated as zero and the frame falls back
  /// to a fixed direction.
  double degeneracy = 1e-14;
  /// Minimum eigenvalue kept when regularising a Gram matrix before an inverse
  /// square root.
  double ridge = 1e-8;
};

inline constexpr NumericPolicy kDefaultPolicy{};

}  // namespace scg
