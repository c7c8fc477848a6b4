#include "sobstab/stability.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sobstab/error.hpp"

namespace sobstab {

namespace {

void check_epsilon(double eps) {
  if (!(eps >= 0.0 && eps <= 0.3)) {
    throw Error(ErrorCode::EpsilonOutOfRange, "epsilon " + std::to_string(eps) + " outside [0, 0.3]");
  }
}

}  // namespace

double sharp_constant(const Geometry& g) {
  if (g.kind() == GeometryKind::Sphere) return sphere_sharp_constant(g.d(), g.q());
  return circle_sharp_constant(g.q());
}

SpectralFunction extremal_family(const Geometry& g, double eps, double corrector_scale) {
  check_epsilon(eps);
  const double h = corrector_scale * corrector_coefficient(g) * eps * eps;
  switch (g.kind()) {
    case GeometryKind::Circle: {
      SpectralFunction u(g, 2, 0);
      u.set_cos(0, 0, 1.0);
      u.set_cos(1, 0, eps);
      u.set_cos(2, 0, h);
      return u;
    }
    case GeometryKind::Sphere: {
      // x = sqrt(|S^d|/(d+1)) Y_1, x² - 1/(d+1) = sqrt(2d|S^d| / ((d+1)²(d+3))) Y_2
      const double d = g.d();
      const double area = sphere_area(g.d());
      SpectralFunction u(g, 0, 2);
      u.set_cos(0, 0, u.unit_constant_coefficient());
      u.set_cos(0, 1, eps * std::sqrt(area / (d + 1.0)));
      u.set_cos(0, 2, h * std::sqrt(2.0 * d * area / ((d + 1.0) * (d + 1.0) * (d + 3.0))));
      return u;
    }
    case GeometryKind::Product: {
      SpectralFunction u(g, 2, 0);
      const double unit = u.unit_constant_coefficient();
      u.set_cos(0, 0, unit);
      u.set_cos(1, 0, eps * unit);
      u.set_cos(2, 0, h * unit);
      return u;
    }
  }
  return SpectralFunction(g, 0, 0);
}

ModeLabel first_positive_mode(const Geometry& g) {
  switch (g.kind()) {
    case GeometryKind::Circle: return {2, 0, Branch::Cos};
    case GeometryKind::Sphere: return {0, 2, Branch::Cos};
    case GeometryKind::Product: return {0, 1, Branch::Cos};
  }
  return {};
}

SpectralFunction mode_family(const Geometry& g, const ModeLabel& mode, double eps) {
  check_epsilon(eps);
  const int K = g.kind() == GeometryKind::Sphere ? 0 : mode.k;
  const int L = g.kind() == GeometryKind::Circle ? 0 : mode.l;
  SpectralFunction u(g, K, L);
  const double unit = u.unit_constant_coefficient();
  u.set_cos(0, 0, unit);
  // Zonal harmonics peak at x = 1; rescale so the perturbation has sup-norm eps.
  double peak = 1.0;
  if (g.kind() == GeometryKind::Sphere) peak = zonal_eval(g.d(), mode.l, 1.0);
  if (g.kind() == GeometryKind::Product) peak = zonal_eval(g.d() - 1, mode.l, 1.0);
  const double coeff = eps / peak;
  if (mode.branch == Branch::Sin && mode.k > 0) {
    u.set_sin(K, L, coeff);
  } else {
    u.set_cos(K, L, u.cos_coeff(K, L) + coeff);
  }
  return u;
}

ScanResult epsilon_scan(const Geometry& g, double eps0, double factor, int count,
                        const QuadratureOptions& options) {
  return epsilon_scan([&g](double eps) { return extremal_family(g, eps); }, eps0, factor, count, options);
}

ScanResult epsilon_scan(const Family& family, double eps0, double factor, int count,
                        const QuadratureOptions& options) {
  if (count < 3) throw Error(ErrorCode::InvalidArgument, "scan needs at least 3 points");
  if (!(factor > 0.0 && factor < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "scan factor must lie in (0, 1)");
  }
  if (!(eps0 > 0.0 && eps0 <= 0.3)) {
    throw Error(ErrorCode::EpsilonOutOfRange, "scan start must lie in (0, 0.3]");
  }
  if (eps0 * std::pow(factor, count - 1) < 1e-4) {
    throw Error(ErrorCode::EpsilonOutOfRange, "smallest scan epsilon falls below 1e-4");
  }

  ScanResult scan;
  double eps = eps0;
  for (int i = 0; i < count; ++i, eps *= factor) {
    const DeficitReport report = stability_report(family(eps), options);
    if (!(report.deficit > kNoiseFloor * report.norm_sq) || !report.quotient ||
        !std::isfinite(*report.quotient)) {
      throw Error(ErrorCode::NoisyScan, "deficit " + std::to_string(report.deficit) + " at eps " +
                                            std::to_string(eps) + " is below the rounding floor");
    }
    scan.epsilons.push_back(eps);
    scan.quotients.push_back(*report.quotient);
    scan.deficits.push_back(report.deficit);
    scan.dist_sqs.push_back(report.dist_sq);
    scan.reports.push_back(report);
  }

  std::vector<DistDeficit> pairs;
  for (std::size_t i = 0; i < scan.reports.size(); ++i) {
    if (scan.deficits[i] > kNoiseFloor * scan.reports[i].norm_sq) {
      pairs.push_back({scan.dist_sqs[i], scan.deficits[i]});
    }
  }
  scan.fitted_exponent = fit_exponent(pairs);
  scan.extrapolated_constant = extrapolate_constant(scan);
  return scan;
}

double fit_exponent(std::span<const DistDeficit> pairs) {
  if (pairs.size() < 3) throw Error(ErrorCode::InvalidArgument, "exponent fit needs at least 3 pairs");
  double min_dist = HUGE_VAL;
  double max_dist = 0.0;
  for (const auto& p : pairs) {
    if (!(p.dist_sq > 0.0 && p.deficit > 0.0)) {
      throw Error(ErrorCode::InvalidArgument, "exponent fit needs positive distances and deficits");
    }
    min_dist = std::min(min_dist, std::sqrt(p.dist_sq));
    max_dist = std::max(max_dist, std::sqrt(p.dist_sq));
  }
  if (max_dist / min_dist < 1.5) {
    throw Error(ErrorCode::InsufficientRange, "distance spread below a factor 1.5");
  }
  const double n = static_cast<double>(pairs.size());
  double mx = 0.0, my = 0.0;
  for (const auto& p : pairs) {
    mx += 0.5 * std::log(p.dist_sq);
    my += std::log(p.deficit);
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (const auto& p : pairs) {
    const double dx = 0.5 * std::log(p.dist_sq) - mx;
    sxy += dx * (std::log(p.deficit) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

double extrapolate_constant(std::span<const double> epsilons, std::span<const double> quotients) {
  if (epsilons.size() < 2 || epsilons.size() != quotients.size()) {
    throw Error(ErrorCode::InvalidArgument, "extrapolation needs matching sequences of length >= 2");
  }
  // Two smallest ε; scans are ordered by decreasing ε.
  std::size_t small = 0;
  for (std::size_t i = 1; i < epsilons.size(); ++i) {
    if (epsilons[i] < epsilons[small]) small = i;
  }
  std::size_t next = small == 0 ? 1 : 0;
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    if (i != small && epsilons[i] < epsilons[next]) next = i;
  }
  const double f = epsilons[small] / epsilons[next];
  return (quotients[small] - f * quotients[next]) / (1.0 - f);
}

double extrapolate_constant(const ScanResult& scan) {
  return extrapolate_constant(scan.epsilons, scan.quotients);
}

}  // namespace sobstab
