#include "sobstab/geometry.hpp"

#include <cmath>
#include <sstream>

#include "sobstab/error.hpp"
#include "sobstab/spectral_core.hpp"

namespace sobstab {

std::string_view to_string(GeometryKind kind) {
  switch (kind) {
    case GeometryKind::Circle: return "circle";
    case GeometryKind::Sphere: return "sphere";
    case GeometryKind::Product: return "product";
  }
  return "unknown";
}

GeometryKind parse_geometry_kind(std::string_view name) {
  if (name == "circle") return GeometryKind::Circle;
  if (name == "sphere") return GeometryKind::Sphere;
  if (name == "product") return GeometryKind::Product;
  throw Error(ErrorCode::InvalidArgument, "unknown geometry '" + std::string(name) + "'");
}

double critical_exponent(int d) {
  if (d < 3) throw Error(ErrorCode::DimensionTooSmall, "critical exponent needs d >= 3");
  return 2.0 * d / (d - 2.0);
}

double product_radius(int d) {
  if (d < 3) {
    throw Error(ErrorCode::DimensionTooSmall, "product manifold needs d >= 3, got " + std::to_string(d));
  }
  return 1.0 / std::sqrt(d - 2.0);
}

Geometry make_geometry(GeometryKind kind, double q, int d) {
  Geometry g;
  g.kind_ = kind;
  switch (kind) {
    case GeometryKind::Circle:
      if (!(q > 2.0) || !std::isfinite(q)) {
        throw Error(ErrorCode::SubcriticalExponent, "circle needs 2 < q < inf");
      }
      g.q_ = q;
      g.d_ = 1;
      g.sobolev_constant_ = kTwoPi * kTwoPi / (q - 2.0);
      g.mass_ = g.sobolev_constant_;
      g.volume_ = 1.0;
      break;
    case GeometryKind::Sphere: {
      if (d < 2) throw Error(ErrorCode::DimensionTooSmall, "sphere needs d >= 2");
      if (d > 16) throw Error(ErrorCode::InvalidArgument, "sphere dimension capped at 16");
      if (!(q > 2.0)) throw Error(ErrorCode::SubcriticalExponent, "sphere needs q > 2");
      if (d >= 3 && !(q < critical_exponent(d))) {
        throw Error(ErrorCode::SupercriticalExponent, "sphere needs q < 2d/(d-2)");
      }
      if (d == 2 && !(q <= 64.0)) {
        throw Error(ErrorCode::SupercriticalExponent, "sphere with d = 2 caps q at 64");
      }
      g.q_ = q;
      g.d_ = d;
      const double area = sphere_area(d);
      g.mass_ = d / (q - 2.0);
      g.sobolev_constant_ = g.mass_ * std::pow(area, 1.0 - 2.0 / q);
      g.volume_ = area;
      break;
    }
    case GeometryKind::Product: {
      if (d < 3) throw Error(ErrorCode::DimensionTooSmall, "product manifold needs d >= 3");
      if (d > 16) throw Error(ErrorCode::InvalidArgument, "product dimension capped at 16");
      g.q_ = critical_exponent(d);
      g.d_ = d;
      g.circle_radius_ = product_radius(d);
      g.volume_ = kTwoPi * g.circle_radius_ * sphere_area(d - 1);
      g.mass_ = 0.25 * (d - 2.0) * (d - 2.0);
      g.sobolev_constant_ = g.mass_ * std::pow(g.volume_, 2.0 / d);
      break;
    }
  }
  return g;
}

std::string Geometry::describe() const {
  std::ostringstream os;
  os << to_string(kind_) << "(q=" << q_;
  if (kind_ != GeometryKind::Circle) os << ", d=" << d_;
  os << ")";
  return os.str();
}

}  // namespace sobstab
