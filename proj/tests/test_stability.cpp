#include <doctest.h>

#include <cmath>

#include "sobstab/error.hpp"
#include "sobstab/stability.hpp"

using namespace sobstab;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidArgument;
}

double rel(double a, double b) { return std::fabs(a / b - 1.0); }

}  // namespace

TEST_CASE("sharp constants") {
  CHECK(sharp_constant(make_geometry(GeometryKind::Circle, 4.0)) == doctest::Approx(1.0 / 3.0));
  CHECK(sharp_constant(make_geometry(GeometryKind::Circle, 6.0)) == doctest::Approx(8.0 / 15.0));
  CHECK(sharp_constant(make_geometry(GeometryKind::Circle, 3.0)) == doctest::Approx(5.0 / 24.0));
  CHECK(sharp_constant(make_geometry(GeometryKind::Product, 0.0, 3)) == doctest::Approx(8.0 / 15.0));
  CHECK(sharp_constant(make_geometry(GeometryKind::Sphere, 3.0, 2)) == doctest::Approx(0.15));
  CHECK(sharp_constant(make_geometry(GeometryKind::Sphere, 4.0, 3)) == doctest::Approx(4.0 / 45.0));
}

TEST_CASE("extremal family coefficients") {
  const Geometry c = make_geometry(GeometryKind::Circle, 4.0);
  const SpectralFunction u0 = extremal_family(c, 0.0);
  CHECK(std::fabs(deficit(u0)) <= 1e-13 * h1_norm_sq(u0));
  const SpectralFunction u = extremal_family(c, 0.1);
  CHECK(u.cos_coeff(0) == 1.0);
  CHECK(u.cos_coeff(1) == doctest::Approx(0.1));
  CHECK(u.cos_coeff(2) == doctest::Approx(0.0025));

  CHECK(code_of([&] { extremal_family(c, 0.31); }) == ErrorCode::EpsilonOutOfRange);
  CHECK(code_of([&] { extremal_family(c, -0.01); }) == ErrorCode::EpsilonOutOfRange);
}

TEST_CASE("sphere extremal family pointwise") {
  // 1 + εx + ε²·(1/2)(x² - 1/3) on S², evaluated through the zonal basis
  const Geometry g = make_geometry(GeometryKind::Sphere, 3.0, 2);
  const double eps = 0.1;
  const SpectralFunction u = extremal_family(g, eps);
  const ZonalBasis basis(2, 2);
  for (double x : {-1.0, -0.4, 0.0, 0.25, 1.0}) {
    double v = 0.0;
    for (int l = 0; l <= 2; ++l) v += u.cos_coeff(0, l) * basis.eval(l, x);
    CHECK(v == doctest::Approx(1.0 + eps * x + 0.01 * 0.5 * (x * x - 1.0 / 3.0)).epsilon(1e-14));
  }
}

TEST_CASE("product extremal family pointwise") {
  const Geometry g = make_geometry(GeometryKind::Product, 0.0, 4);
  const double eps = 0.2;
  const SpectralFunction u = extremal_family(g, eps);
  const double y0 = static_cast<double>(u.constant_mode_value());
  const double c = (g.q() - 1.0) / 12.0;
  for (double s : {0.0, 0.3, 1.7}) {
    const double w = std::sqrt(2.0) * s;
    const double v = y0 * (u.cos_coeff(0, 0) + u.cos_coeff(1, 0) * std::cos(w) + u.cos_coeff(2, 0) * std::cos(2 * w));
    CHECK(v == doctest::Approx(1.0 + eps * std::cos(w) + eps * eps * c * std::cos(2 * w)).epsilon(1e-14));
  }
}

TEST_CASE("fit_exponent") {
  std::vector<DistDeficit> pairs;
  for (double dist : {0.1, 0.05, 0.02, 0.01}) pairs.push_back({dist * dist, std::pow(dist, 4)});
  CHECK(std::fabs(fit_exponent(pairs) - 4.0) <= 1e-12);

  std::vector<DistDeficit> narrow = {{1.0, 1.0}, {1.1, 1.2}, {1.2, 1.4}};
  CHECK(code_of([&] { fit_exponent(narrow); }) == ErrorCode::InsufficientRange);
  std::vector<DistDeficit> few = {{1.0, 1.0}, {4.0, 16.0}};
  CHECK(code_of([&] { fit_exponent(few); }) == ErrorCode::InvalidArgument);
  std::vector<DistDeficit> negative = {{1.0, 1.0}, {4.0, -16.0}, {9.0, 81.0}};
  CHECK(code_of([&] { fit_exponent(negative); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("extrapolate_constant") {
  std::vector<double> eps = {0.08, 0.04, 0.02, 0.01, 0.005};
  std::vector<double> q;
  for (double e : eps) q.push_back(1.0 / 3.0 + 0.7 * e);
  CHECK(std::fabs(extrapolate_constant(eps, q) - 1.0 / 3.0) <= 1e-12);
  std::vector<double> q3;
  for (double e : {0.3, 0.1, 0.0333}) q3.push_back(2.0 - 5.0 * e);
  CHECK(std::fabs(extrapolate_constant(std::vector<double>{0.3, 0.1, 0.0333}, q3) - 2.0) <= 1e-12);
}

TEST_CASE("scan reproduces the sharp constants") {
  for (const Geometry& g : {make_geometry(GeometryKind::Circle, 3.0), make_geometry(GeometryKind::Circle, 4.0),
                            make_geometry(GeometryKind::Sphere, 4.0, 3), make_geometry(GeometryKind::Sphere, 3.0, 2)}) {
    const ScanResult s = epsilon_scan(g, 0.08, 0.5, 5);
    CAPTURE(g.describe());
    REQUIRE(s.epsilons.size() == 5);
    CHECK(s.quotients.size() == 5);
    CHECK(s.deficits.size() == 5);
    CHECK(s.dist_sqs.size() == 5);
    for (std::size_t i = 1; i < s.epsilons.size(); ++i) CHECK(s.epsilons[i] < s.epsilons[i - 1]);
    for (double q : s.quotients) CHECK(q > 0.0);
    CHECK(rel(s.extrapolated_constant, sharp_constant(g)) < 0.01);
    CHECK(std::fabs(s.fitted_exponent - 4.0) < 0.05);
  }
}

TEST_CASE("exponent 2 along a positive Hessian direction") {
  // 1 + ε cos 4πt on the circle, eigenvalue 3(2π)²
  const Geometry g = make_geometry(GeometryKind::Circle, 4.0);
  const Family f = [&g](double eps) {
    SpectralFunction u(g, 2, 0);
    u.set_cos(0, 0, 1.0);
    u.set_cos(2, 0, eps);
    return u;
  };
  const ScanResult s = epsilon_scan(f, 0.08, 0.5, 5);
  CHECK(std::fabs(s.fitted_exponent - 2.0) < 0.05);
  // quotient grows like ε^{-2}
  CHECK(s.quotients.back() / s.quotients.front() == doctest::Approx(256.0).epsilon(0.05));
  CHECK(first_positive_mode(g) == ModeLabel{2, 0, Branch::Cos});
}

TEST_CASE("monotone refinement") {
  for (const Geometry& g : {make_geometry(GeometryKind::Circle, 4.0), make_geometry(GeometryKind::Sphere, 3.0, 2),
                            make_geometry(GeometryKind::Product, 0.0, 3)}) {
    const ScanResult coarse = epsilon_scan(g, 0.08, 0.5, 5);
    const ScanResult fine = epsilon_scan(g, 0.04, 0.5, 5);
    const double own_error = std::fabs(coarse.quotients.back() - coarse.extrapolated_constant);
    CHECK(std::fabs(fine.extrapolated_constant - coarse.extrapolated_constant) < own_error);
  }
}

TEST_CASE("removing the corrector raises the limit") {
  for (const Geometry& g : {make_geometry(GeometryKind::Circle, 4.0), make_geometry(GeometryKind::Sphere, 4.0, 3),
                            make_geometry(GeometryKind::Product, 0.0, 4)}) {
    const ScanResult with = epsilon_scan(g, 0.08, 0.5, 5);
    const ScanResult bare = epsilon_scan([&g](double e) { return extremal_family(g, e, 0.0); }, 0.08, 0.5, 5);
    CHECK(bare.extrapolated_constant > with.extrapolated_constant);
  }
  // Without the corrector only the loss term is left: loss · conversion · ‖1‖², 5/12 at q = 4.
  const Geometry c = make_geometry(GeometryKind::Circle, 4.0);
  const QuarticBudget b = quartic_budget(c);
  const double no_corrector = b.loss * b.distance_conversion * b.norm_sq_at_optimizer;
  CHECK(no_corrector == doctest::Approx(5.0 / 12.0));
  const ScanResult bare = epsilon_scan([&c](double e) { return extremal_family(c, e, 0.0); }, 0.08, 0.5, 5);
  CHECK(rel(bare.extrapolated_constant, no_corrector) < 1e-3);
  CHECK(bare.extrapolated_constant > 1.05 * epsilon_scan(c, 0.08, 0.5, 5).extrapolated_constant);
}

TEST_CASE("product and circle scans agree by scaling") {
  for (int d : {3, 4, 5}) {
    const Geometry p = make_geometry(GeometryKind::Product, 0.0, d);
    const Geometry c = make_geometry(GeometryKind::Circle, p.q());
    const double cp = epsilon_scan(p, 0.08, 0.5, 5).extrapolated_constant;
    const double cc = epsilon_scan(c, 0.08, 0.5, 5).extrapolated_constant;
    CHECK(rel(cp, cc) < 0.005);
    CHECK(rel(cp, sharp_constant(p)) < 0.01);
  }
}

TEST_CASE("scan preconditions") {
  const Geometry g = make_geometry(GeometryKind::Circle, 4.0);
  CHECK(code_of([&] { epsilon_scan(g, 0.35, 0.5, 5); }) == ErrorCode::EpsilonOutOfRange);
  CHECK(code_of([&] { epsilon_scan(g, 0.08, 0.5, 2); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { epsilon_scan(g, 0.08, 1.5, 4); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { epsilon_scan(g, 0.001, 0.5, 6); }) == ErrorCode::EpsilonOutOfRange);
  // ε = 5e-4 puts the quartic deficit near 5e-14·‖u‖²
  CHECK(code_of([&] { epsilon_scan(g, 0.001, 0.5, 3); }) == ErrorCode::NoisyScan);
}
