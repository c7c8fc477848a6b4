#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "sobstab/error.hpp"
#include "sobstab/geometry.hpp"
#include "sobstab/spectral_core.hpp"

using namespace sobstab;

namespace {

ErrorCode code_of(GeometryKind kind, double q, int d) {
  try {
    make_geometry(kind, q, d);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("circle constants") {
  const Geometry g = make_geometry(GeometryKind::Circle, 4.0);
  CHECK(g.sobolev_constant() == doctest::Approx(2.0 * kPi * kPi).epsilon(1e-15));
  CHECK(g.sobolev_constant() == doctest::Approx(19.7392088).epsilon(1e-8));
  CHECK(g.volume() == 1.0);
  CHECK(g.d() == 1);
  for (double q : {2.05, 2.5, 3.0, 4.0, 7.3, 12.0, 60.0}) {
    const Geometry c = make_geometry(GeometryKind::Circle, q);
    CHECK(c.sobolev_constant() * (q - 2.0) == doctest::Approx(4.0 * kPi * kPi).epsilon(1e-15));
  }
}

TEST_CASE("sphere constants") {
  const Geometry g = make_geometry(GeometryKind::Sphere, 3.0, 2);
  CHECK(g.sobolev_constant() == doctest::Approx(2.0 * std::cbrt(4.0 * kPi)).epsilon(1e-14));
  CHECK(g.mass() == doctest::Approx(2.0));
  CHECK(g.volume() == doctest::Approx(4.0 * kPi));
}

TEST_CASE("product constants") {
  const Geometry g = make_geometry(GeometryKind::Product, 0.0, 3);
  CHECK(g.q() == 6.0);
  CHECK(g.volume() == doctest::Approx(8.0 * kPi * kPi).epsilon(1e-15));
  const long double y = 0.25L * std::pow(8.0L * oracle::kPi * oracle::kPi, 2.0L / 3.0L);
  CHECK(g.sobolev_constant() == doctest::Approx(static_cast<double>(y)).epsilon(1e-14));
  CHECK(g.sobolev_constant() == doctest::Approx(4.6012).epsilon(1e-4));

  for (int d = 3; d <= 8; ++d) {
    const Geometry p = make_geometry(GeometryKind::Product, 0.0, d);
    const long double vol = 2.0L * oracle::kPi / std::sqrt(static_cast<long double>(d - 2)) * oracle::sphere_area(d - 1);
    const long double ref = (d - 2.0L) * (d - 2.0L) / 4.0L * std::pow(vol, 2.0L / d);
    CHECK(std::fabs(p.sobolev_constant() - static_cast<double>(ref)) <= 1e-12 * static_cast<double>(ref));
    CHECK(p.q() == doctest::Approx(2.0 * d / (d - 2.0)).epsilon(1e-15));
    CHECK(p.circle_radius() == doctest::Approx(1.0 / std::sqrt(d - 2.0)));
  }
}

TEST_CASE("product_radius") {
  CHECK(product_radius(3) == doctest::Approx(1.0));
  CHECK(product_radius(4) == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(product_radius(6) == doctest::Approx(0.5));
  CHECK_THROWS_AS(product_radius(2), Error);
}

TEST_CASE("validation") {
  CHECK(code_of(GeometryKind::Circle, 2.0, 0) == ErrorCode::SubcriticalExponent);
  CHECK(code_of(GeometryKind::Circle, 1.5, 0) == ErrorCode::SubcriticalExponent);
  CHECK(code_of(GeometryKind::Sphere, 3.0, 1) == ErrorCode::DimensionTooSmall);
  CHECK(code_of(GeometryKind::Sphere, 2.0, 3) == ErrorCode::SubcriticalExponent);
  CHECK(code_of(GeometryKind::Product, 0.0, 2) == ErrorCode::DimensionTooSmall);
  CHECK(code_of(GeometryKind::Sphere, 65.0, 2) == ErrorCode::SupercriticalExponent);
  for (int d = 3; d <= 8; ++d) {
    const double crit = 2.0 * d / (d - 2.0);
    CHECK_NOTHROW(make_geometry(GeometryKind::Sphere, crit - 1e-9, d));
    CHECK(code_of(GeometryKind::Sphere, crit, d) == ErrorCode::SupercriticalExponent);
  }
  CHECK_NOTHROW(make_geometry(GeometryKind::Sphere, 40.0, 2));
}

TEST_CASE("geometry names") {
  CHECK(parse_geometry_kind("circle") == GeometryKind::Circle);
  CHECK(parse_geometry_kind("sphere") == GeometryKind::Sphere);
  CHECK(parse_geometry_kind("product") == GeometryKind::Product);
  CHECK_THROWS_AS(parse_geometry_kind("torus"), Error);
  CHECK(to_string(GeometryKind::Product) == "product");
}
