#include "sobstab/spectral_core.hpp"

#include <cmath>
#include <string>

#include "sobstab/error.hpp"

namespace sobstab {

namespace {

struct LegendreValue {
  double p;
  double dp;
};

// P_n(x) and P_n'(x) by the three-term recurrence.
LegendreValue legendre(int n, double x) {
  double p0 = 1.0;
  double p1 = x;
  if (n == 0) return {1.0, 0.0};
  for (int k = 2; k <= n; ++k) {
    const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = pk;
  }
  const double dp = n * (x * p1 - p0) / (x * x - 1.0);
  return {p1, dp};
}

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidOrder: return "InvalidOrder";
    case ErrorCode::DegreeOutOfRange: return "DegreeOutOfRange";
    case ErrorCode::AliasedGrid: return "AliasedGrid";
    case ErrorCode::SubcriticalExponent: return "SubcriticalExponent";
    case ErrorCode::SupercriticalExponent: return "SupercriticalExponent";
    case ErrorCode::DimensionTooSmall: return "DimensionTooSmall";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::QuadratureNotConverged: return "QuadratureNotConverged";
    case ErrorCode::DegenerateDistance: return "DegenerateDistance";
    case ErrorCode::EpsilonOutOfRange: return "EpsilonOutOfRange";
    case ErrorCode::NoisyScan: return "NoisyScan";
    case ErrorCode::InsufficientRange: return "InsufficientRange";
    case ErrorCode::SearchDegenerate: return "SearchDegenerate";
  }
  return "Unknown";
}

bool is_numerical(ErrorCode code) {
  return code == ErrorCode::QuadratureNotConverged || code == ErrorCode::NoisyScan ||
         code == ErrorCode::SearchDegenerate;
}

Quadrature gauss_legendre(int n) {
  if (n < 1 || n > 4096) {
    throw Error(ErrorCode::InvalidOrder, "Gauss-Legendre order " + std::to_string(n) +
                                             " outside [1, 4096]");
  }
  Quadrature rule;
  rule.order = n;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);

  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Tricomi's estimate of the (i+1)-th largest root.
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    LegendreValue v{};
    for (int iter = 0; iter < 100; ++iter) {
      v = legendre(n, x);
      const double dx = v.p / v.dp;
      x -= dx;
      if (std::abs(dx) < 1e-16 || std::abs(v.p) < 1e-15) {
        v = legendre(n, x);
        break;
      }
    }
    if (n % 2 == 1 && i == half - 1) x = 0.0;
    if (x == 0.0) v = legendre(n, 0.0);
    const double w = 2.0 / ((1.0 - x * x) * v.dp * v.dp);
    rule.nodes[n - 1 - i] = x;
    rule.nodes[i] = -x;
    rule.weights[n - 1 - i] = w;
    rule.weights[i] = w;
  }
  return rule;
}

LatitudeRule latitude_rule(int sphere_dim, int n) {
  if (sphere_dim < 1) {
    throw Error(ErrorCode::DimensionTooSmall, "latitude rule needs sphere dimension >= 1");
  }
  const Quadrature gl = gauss_legendre(n);
  const double ring = sphere_area(sphere_dim - 1);
  LatitudeRule rule;
  rule.x.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    const double theta = 0.5 * kPi * (1.0 + gl.nodes[i]);
    rule.x[i] = std::cos(theta);
    rule.weights[i] = 0.5 * kPi * gl.weights[i] * ring * std::pow(std::sin(theta), sphere_dim - 1);
  }
  return rule;
}

LatitudeRuleLd latitude_rule_ld(int sphere_dim, int n) {
  if (sphere_dim < 1) {
    throw Error(ErrorCode::DimensionTooSmall, "latitude rule needs sphere dimension >= 1");
  }
  constexpr long double pi = 3.141592653589793238462643383279502884L;
  const Quadrature gl = gauss_legendre(n);
  const long double ring = sphere_area_ld(sphere_dim - 1);
  LatitudeRuleLd rule;
  rule.x.resize(n);
  rule.weights.resize(n);
  long double total = 0.0L;
  for (int i = 0; i < n; ++i) {
    const long double theta = 0.5L * pi * (1.0L + gl.nodes[i]);
    rule.x[i] = std::cos(theta);
    rule.weights[i] = 0.5L * pi * gl.weights[i] * ring * std::pow(std::sin(theta), sphere_dim - 1);
    total += rule.weights[i];
  }
  const long double scale = sphere_area_ld(sphere_dim) / total;
  for (auto& w : rule.weights) w *= scale;
  return rule;
}

long double sphere_area_ld(int d) {
  if (d < 0 || d > 16) {
    throw Error(ErrorCode::InvalidArgument, "sphere dimension " + std::to_string(d) +
                                                " outside [0, 16]");
  }
  constexpr long double pi = 3.141592653589793238462643383279502884L;
  long double area = (d % 2 == 0) ? 2.0L : 2.0L * pi;
  for (int n = (d % 2 == 0) ? 2 : 3; n <= d; n += 2) area *= 2.0L * pi / (n - 1);
  return area;
}

double sphere_area(int d) { return static_cast<double>(sphere_area_ld(d)); }

long long harmonic_multiplicity(int d, int degree) {
  auto binom = [](long long n, long long k) -> long long {
    if (k < 0 || n < k) return 0;
    long long r = 1;
    for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
  };
  if (degree < 0) return 0;
  return binom(degree + d, d) - binom(degree + d - 2, d);
}

ZonalBasis::ZonalBasis(int sphere_dim, int max_degree)
    : dim_(sphere_dim), max_degree_(max_degree), lambda_(0.5L * (sphere_dim - 1)) {
  if (sphere_dim < 2) {
    throw Error(ErrorCode::DimensionTooSmall, "zonal basis needs sphere dimension >= 2");
  }
  if (max_degree < 0 || max_degree > 64) {
    throw Error(ErrorCode::DegreeOutOfRange, "zonal truncation " + std::to_string(max_degree) +
                                                 " outside [0, 64]");
  }
  // ∫ (C_ℓ^λ)² (1-x²)^{λ-1/2} dx = π 2^{1-2λ} Γ(ℓ+2λ) / (ℓ! (ℓ+λ) Γ(λ)²)
  constexpr long double pi = 3.141592653589793238462643383279502884L;
  const long double ring = sphere_area_ld(sphere_dim - 1);
  inv_norm_.resize(max_degree + 1);
  inv_norm_[0] = 1.0L / std::sqrt(sphere_area_ld(sphere_dim));
  for (int l = 1; l <= max_degree; ++l) {
    const long double log_h = std::log(pi) + (1.0L - 2.0L * lambda_) * std::log(2.0L) +
                              std::lgamma(l + 2.0L * lambda_) - std::lgamma(l + 1.0L) -
                              std::log(l + lambda_) - 2.0L * std::lgamma(lambda_);
    inv_norm_[l] = 1.0L / std::sqrt(ring * std::exp(log_h));
  }
}

double ZonalBasis::eigenvalue(int degree) const noexcept {
  return static_cast<double>(degree) * (degree + dim_ - 1);
}

template <class Real>
void ZonalBasis::eval_impl(Real x, std::span<Real> out) const {
  // Gegenbauer recurrence: ℓ C_ℓ = 2(ℓ+λ-1) x C_{ℓ-1} - (ℓ+2λ-2) C_{ℓ-2}
  const Real lambda = static_cast<Real>(lambda_);
  Real c_prev = 1;
  Real c_cur = 2 * lambda * x;
  out[0] = static_cast<Real>(inv_norm_[0]);
  if (max_degree_ >= 1) out[1] = c_cur * static_cast<Real>(inv_norm_[1]);
  for (int l = 2; l <= max_degree_; ++l) {
    const Real c_next = (2 * (l + lambda - 1) * x * c_cur - (l + 2 * lambda - 2) * c_prev) / l;
    c_prev = c_cur;
    c_cur = c_next;
    out[l] = c_cur * static_cast<Real>(inv_norm_[l]);
  }
}

void ZonalBasis::eval_all(double x, std::span<double> out) const { eval_impl<double>(x, out); }

void ZonalBasis::eval_all(long double x, std::span<long double> out) const {
  eval_impl<long double>(x, out);
}

double ZonalBasis::eval(int degree, double x) const {
  if (degree < 0 || degree > max_degree_) {
    throw Error(ErrorCode::DegreeOutOfRange, "degree " + std::to_string(degree) +
                                                 " exceeds truncation " + std::to_string(max_degree_));
  }
  std::vector<double> values(max_degree_ + 1);
  eval_all(x, std::span<double>(values));
  return values[degree];
}

double zonal_eval(int sphere_dim, int degree, double x) {
  if (degree < 0 || degree > 64) {
    throw Error(ErrorCode::DegreeOutOfRange, "degree " + std::to_string(degree) + " outside [0, 64]");
  }
  return ZonalBasis(sphere_dim, degree).eval(degree, x);
}

std::vector<double> circle_synthesis(const FourierCoefficients& coeffs, int n) {
  const int modes = coeffs.max_mode();
  if (coeffs.sin_coeffs.size() != coeffs.cos_coeffs.size()) {
    throw Error(ErrorCode::InvalidArgument, "cosine and sine coefficient counts differ");
  }
  if (!is_power_of_two(n) || n < 4 * modes + 4) {
    throw Error(ErrorCode::AliasedGrid, "grid size " + std::to_string(n) +
                                            " must be a power of two >= " + std::to_string(4 * modes + 4));
  }
  std::vector<double> cos_table(n), sin_table(n);
  for (int m = 0; m < n; ++m) {
    const double angle = kTwoPi * m / n;
    cos_table[m] = std::cos(angle);
    sin_table[m] = std::sin(angle);
  }
  std::vector<double> values(n, coeffs.a0);
  for (int j = 0; j < n; ++j) {
    double sum = coeffs.a0;
    for (int k = 1; k <= modes; ++k) {
      const int m = static_cast<int>((static_cast<long long>(k) * j) % n);
      sum += coeffs.cos_coeffs[k - 1] * cos_table[m] + coeffs.sin_coeffs[k - 1] * sin_table[m];
    }
    values[j] = sum;
  }
  return values;
}

FourierCoefficients circle_analysis(std::span<const double> values, int max_mode) {
  const int n = static_cast<int>(values.size());
  if (!is_power_of_two(n) || n < 4 * max_mode + 4) {
    throw Error(ErrorCode::AliasedGrid, "grid size " + std::to_string(n) + " too small for " +
                                            std::to_string(max_mode) + " modes");
  }
  FourierCoefficients out;
  out.cos_coeffs.assign(max_mode, 0.0);
  out.sin_coeffs.assign(max_mode, 0.0);
  long double mean = 0.0L;
  for (double v : values) mean += v;
  out.a0 = static_cast<double>(mean / n);
  for (int k = 1; k <= max_mode; ++k) {
    long double c = 0.0L, s = 0.0L;
    for (int j = 0; j < n; ++j) {
      const int m = static_cast<int>((static_cast<long long>(k) * j) % n);
      const double angle = kTwoPi * m / n;
      c += values[j] * std::cos(angle);
      s += values[j] * std::sin(angle);
    }
    out.cos_coeffs[k - 1] = static_cast<double>(2.0L * c / n);
    out.sin_coeffs[k - 1] = static_cast<double>(2.0L * s / n);
  }
  return out;
}

}  // namespace sobstab
