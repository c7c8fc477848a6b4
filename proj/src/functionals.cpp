#include "sobstab/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "sobstab/error.hpp"

namespace sobstab {

namespace {

constexpr long double kPiLd = 3.141592653589793238462643383279502884L;
constexpr int kMaxGaussPoints = 4096;
constexpr long long kMaxTensorPoints = 1LL << 23;

int next_power_of_two(int n) {
  int p = 1;
  while (p < n) p <<= 1;
  return p;
}

// |v|^q with an exact multiplication path for integer exponents.
long double abs_pow(long double v, double q, int integer_q) {
  const long double a = std::fabs(v);
  if (integer_q > 0) {
    long double result = 1.0L;
    long double base = a;
    for (int e = integer_q; e > 0; e >>= 1) {
      if (e & 1) result *= base;
      base *= base;
    }
    return result;
  }
  return std::pow(a, static_cast<long double>(q));
}

int integer_exponent(double q) {
  if (q == std::floor(q) && q <= 64.0) return static_cast<int>(q);
  return 0;
}

// cos/sin of 2πm/n for m = 0..n-1.
struct TrigTable {
  std::vector<long double> c;
  std::vector<long double> s;
  explicit TrigTable(int n) : c(n), s(n) {
    for (int m = 0; m < n; ++m) {
      const long double angle = 2.0L * kPiLd * m / n;
      c[m] = std::cos(angle);
      s[m] = std::sin(angle);
    }
  }
};

// Values along the circle coordinate of Σ_k cos_coeff(k,l) cos + sin_coeff(k,l) sin for fixed l.
void fourier_values(const SpectralFunction& u, int l, const TrigTable& trig, std::vector<long double>& out) {
  const int n = static_cast<int>(trig.c.size());
  out.assign(n, 0.0L);
  for (int j = 0; j < n; ++j) {
    long double sum = u.cos_coeff(0, l);
    int m = 0;  // k·j mod n
    for (int k = 1; k <= u.max_mode(); ++k) {
      m += j;
      if (m >= n) m -= n;
      sum += u.cos_coeff(k, l) * trig.c[m] + u.sin_coeff(k, l) * trig.s[m];
    }
    out[j] = sum;
  }
}

// Grids are rebuilt for every evaluation otherwise; searches evaluate thousands of times.
const TrigTable& trig_table(int n) {
  thread_local std::map<int, TrigTable> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, TrigTable(n)).first;
  return it->second;
}

const LatitudeRuleLd& cached_latitude_rule(int sphere_dim, int n) {
  thread_local std::map<std::pair<int, int>, LatitudeRuleLd> cache;
  const auto key = std::make_pair(sphere_dim, n);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, latitude_rule_ld(sphere_dim, n)).first;
  return it->second;
}

long double sobolev_constant_ld(const Geometry& g) {
  const long double mass = g.mass();
  switch (g.kind()) {
    case GeometryKind::Circle: return mass;
    case GeometryKind::Sphere:
      return mass * std::pow(sphere_area_ld(g.d()), 1.0L - 2.0L / g.q());
    case GeometryKind::Product: {
      const long double vol = 2.0L * kPiLd / std::sqrt(static_cast<long double>(g.d() - 2)) *
                              sphere_area_ld(g.d() - 1);
      return mass * std::pow(vol, 1.0L - 2.0L / g.q());
    }
  }
  return mass;
}

struct Grid {
  int s = 0;
  int x = 0;
};

Grid initial_grid(const SpectralFunction& u) {
  const int K = u.max_mode();
  const int L = u.max_degree();
  switch (u.geometry().kind()) {
    case GeometryKind::Circle: return {next_power_of_two(std::max(256, 16 * K)), 0};
    case GeometryKind::Sphere: return {0, std::max(64, 8 * L)};
    case GeometryKind::Product: return {next_power_of_two(std::max(64, 16 * K)), std::max(32, 8 * L)};
  }
  return {};
}

bool within_cap(const Grid& g, const QuadratureOptions& options) {
  if (g.s > options.cap) return false;
  if (g.x > std::min(options.cap, kMaxGaussPoints)) return false;
  if (g.s > 0 && g.x > 0 && static_cast<long long>(g.s) * g.x > kMaxTensorPoints) return false;
  return true;
}

}  // namespace

long double h1_norm_sq_ld(const SpectralFunction& u) {
  const long double mass = u.geometry().mass();
  long double total = 0.0L;
  for (int k = 0; k <= u.max_mode(); ++k) {
    for (int l = 0; l <= u.max_degree(); ++l) {
      const long double a = u.cos_coeff(k, l);
      const long double b = u.sin_coeff(k, l);
      total += (u.frequency_sq(k, l) + mass) * (a * a + b * b) * u.basis_norm_sq(k, l);
    }
  }
  return total;
}

double h1_norm_sq(const SpectralFunction& u) { return static_cast<double>(h1_norm_sq_ld(u)); }

long double lq_integral_on_grid(const SpectralFunction& u, int grid_s, int grid_x) {
  const Geometry& g = u.geometry();
  const double q = g.q();
  const int iq = integer_exponent(q);
  long double total = 0.0L;

  switch (g.kind()) {
    case GeometryKind::Circle: {
      if (grid_s < 4 * u.max_mode() + 4 || (grid_s & (grid_s - 1)) != 0) {
        throw Error(ErrorCode::AliasedGrid, "circle grid " + std::to_string(grid_s) + " too small");
      }
      const TrigTable& trig = trig_table(grid_s);
      std::vector<long double> values;
      fourier_values(u, 0, trig, values);
      for (long double v : values) total += abs_pow(v, q, iq);
      return total / grid_s;
    }
    case GeometryKind::Sphere: {
      const ZonalBasis basis(g.d(), u.max_degree());
      const LatitudeRuleLd& rule = cached_latitude_rule(g.d(), grid_x);
      std::vector<long double> y(u.max_degree() + 1);
      for (int i = 0; i < grid_x; ++i) {
        basis.eval_all(rule.x[i], std::span<long double>(y));
        long double v = 0.0L;
        for (int l = 0; l <= u.max_degree(); ++l) v += u.cos_coeff(0, l) * y[l];
        total += rule.weights[i] * abs_pow(v, q, iq);
      }
      return total;
    }
    case GeometryKind::Product: {
      if (grid_s < 4 * u.max_mode() + 4 || (grid_s & (grid_s - 1)) != 0) {
        throw Error(ErrorCode::AliasedGrid, "s-grid " + std::to_string(grid_s) + " too small");
      }
      const int L = u.max_degree();
      const ZonalBasis basis(g.d() - 1, L);
      const LatitudeRuleLd& rule = cached_latitude_rule(g.d() - 1, grid_x);
      const TrigTable& trig = trig_table(grid_s);
      // A[l][j]: Fourier part of the coefficient of Y_l at s_j.
      std::vector<std::vector<long double>> fourier(L + 1);
      for (int l = 0; l <= L; ++l) fourier_values(u, l, trig, fourier[l]);
      std::vector<long double> y(L + 1);
      const long double ds = 2.0L * kPiLd / std::sqrt(static_cast<long double>(g.d() - 2)) / grid_s;
      for (int i = 0; i < grid_x; ++i) {
        basis.eval_all(rule.x[i], std::span<long double>(y));
        long double ring = 0.0L;
        for (int j = 0; j < grid_s; ++j) {
          long double v = 0.0L;
          for (int l = 0; l <= L; ++l) v += fourier[l][j] * y[l];
          ring += abs_pow(v, q, iq);
        }
        total += rule.weights[i] * ring;
      }
      return total * ds;
    }
  }
  return total;
}

LqEvaluation lq_evaluate(const SpectralFunction& u, const QuadratureOptions& options) {
  const double q = u.geometry().q();
  Grid grid = initial_grid(u);
  auto doubled = [](Grid g) { return Grid{g.s * 2, g.x * 2}; };
  while (!within_cap(doubled(grid), options)) {
    Grid smaller{grid.s / 2, grid.x / 2};
    if (smaller.s < 4 * u.max_mode() + 4 && u.geometry().kind() != GeometryKind::Sphere) break;
    if (smaller.x < 1 && u.geometry().kind() != GeometryKind::Circle) break;
    grid = smaller;
  }

  long double previous = lq_integral_on_grid(u, grid.s, grid.x);
  long double previous_norm = std::pow(previous, 1.0L / q);
  while (true) {
    const Grid next = doubled(grid);
    if (!within_cap(next, options)) {
      throw QuadratureNotConverged(static_cast<double>(previous_norm), static_cast<double>(previous_norm));
    }
    const long double current = lq_integral_on_grid(u, next.s, next.x);
    const long double current_norm = std::pow(current, 1.0L / q);
    const long double change = std::fabs(current_norm - previous_norm);
    grid = next;
    if (change <= options.rel_tol * std::fabs(current_norm)) {
      return {current, static_cast<double>(current_norm), grid.s, grid.x};
    }
    if (!within_cap(doubled(grid), options)) {
      throw QuadratureNotConverged(static_cast<double>(previous_norm), static_cast<double>(current_norm));
    }
    previous = current;
    previous_norm = current_norm;
  }
}

double lq_norm(const SpectralFunction& u, const QuadratureOptions& options) {
  return lq_evaluate(u, options).norm;
}

namespace {

long double deficit_ld(const SpectralFunction& u, const LqEvaluation& lq, long double norm_sq) {
  const long double c = sobolev_constant_ld(u.geometry());
  const long double lq_sq = std::pow(lq.integral, 2.0L / u.geometry().q());
  return norm_sq - c * lq_sq;
}

}  // namespace

double deficit(const SpectralFunction& u, const QuadratureOptions& options) {
  const LqEvaluation lq = lq_evaluate(u, options);
  return static_cast<double>(deficit_ld(u, lq, h1_norm_sq_ld(u)));
}

MeanProjection mean_project(const SpectralFunction& u) {
  MeanProjection out{static_cast<double>(u.cos_coeff(0, 0) * u.constant_mode_value()), u};
  out.fluctuation.set_cos(0, 0, 0.0);
  return out;
}

DeficitReport stability_report(const SpectralFunction& u, const QuadratureOptions& options) {
  const LqEvaluation lq = lq_evaluate(u, options);
  const long double norm_sq = h1_norm_sq_ld(u);
  const MeanProjection projection = mean_project(u);
  const long double dist_sq = h1_norm_sq_ld(projection.fluctuation);
  const long double def = deficit_ld(u, lq, norm_sq);

  DeficitReport report;
  report.norm_sq = static_cast<double>(norm_sq);
  report.lq_norm = lq.norm;
  report.deficit = static_cast<double>(def);
  report.mean = projection.mean;
  report.dist_sq = static_cast<double>(dist_sq);
  if (dist_sq > kDegenerateDistance * norm_sq) {
    report.quotient = static_cast<double>(norm_sq * def / (dist_sq * dist_sq));
  }
  return report;
}

double stability_quotient(const SpectralFunction& u, const QuadratureOptions& options) {
  const long double norm_sq = h1_norm_sq_ld(u);
  const long double dist_sq = h1_norm_sq_ld(mean_project(u).fluctuation);
  if (!(dist_sq > kDegenerateDistance * norm_sq)) {
    throw Error(ErrorCode::DegenerateDistance, "distance to the constants is zero");
  }
  return *stability_report(u, options).quotient;
}

}  // namespace sobstab
