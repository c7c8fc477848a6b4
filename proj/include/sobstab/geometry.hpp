#pragma once

#include <string>
#include <string_view>

namespace sobstab {

enum class GeometryKind { Circle, Sphere, Product };

std::string_view to_string(GeometryKind kind);
GeometryKind parse_geometry_kind(std::string_view name);

/// One of the three manifolds with every constant derived from (q, d).
///
/// Circle:  R/Z with ‖u‖² = ∫(u'² + S u²), S = (2π)²/(q-2), unit volume.
/// Sphere:  S^d with ‖u‖² = ∫(|∇u|² + d/(q-2) u²), Y = d/(q-2) |S^d|^{1-2/q}.
/// Product: S¹(1/√(d-2)) × S^{d-1} with the conformal Laplacian energy,
///          q = 2d/(d-2), Vol = (2π/√(d-2))|S^{d-1}|, Y = (d-2)²/4 Vol^{2/d}.
class Geometry {
 public:
  GeometryKind kind() const noexcept { return kind_; }
  double q() const noexcept { return q_; }
  /// Manifold dimension; 1 for the circle.
  int d() const noexcept { return d_; }

  /// S on the circle, Y on the sphere and product.
  double sobolev_constant() const noexcept { return sobolev_constant_; }
  /// Zeroth-order coefficient of the energy: S, d/(q-2) or (d-2)²/4.
  double mass() const noexcept { return mass_; }
  /// Total measure: 1, |S^d| or Vol.
  double volume() const noexcept { return volume_; }
  /// Radius of the S¹ factor (product only, 0 otherwise).
  double circle_radius() const noexcept { return circle_radius_; }
  /// Period of the s-coordinate on the product, 2π·radius.
  double period() const noexcept { return kTwoPiValue * circle_radius_; }

  std::string describe() const;

  friend Geometry make_geometry(GeometryKind kind, double q, int d);

 private:
  static constexpr double kTwoPiValue = 6.28318530717958647692;

  GeometryKind kind_ = GeometryKind::Circle;
  double q_ = 0.0;
  int d_ = 1;
  double sobolev_constant_ = 0.0;
  double mass_ = 0.0;
  double volume_ = 1.0;
  double circle_radius_ = 0.0;
};

/// Validating constructor. For Product, q is ignored and set to 2d/(d-2).
/// Errors: SubcriticalExponent (q <= 2), SupercriticalExponent (sphere, d >= 3,
/// q >= 2d/(d-2); or d = 2 with q > 64), DimensionTooSmall.
Geometry make_geometry(GeometryKind kind, double q, int d = 0);

/// 1/√(d-2), the radius of the S¹ factor of the product manifold.
double product_radius(int d);

/// Critical exponent 2d/(d-2) (d >= 3).
double critical_exponent(int d);

}  // namespace sobstab
