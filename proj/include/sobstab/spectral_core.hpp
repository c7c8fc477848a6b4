#pragma once

// Shared spectral machinery: Gauss–Legendre rules, sphere areas, orthonormal
// zonal harmonics and trigonometric synthesis on uniform circle grids.

#include <span>
#include <vector>

namespace sobstab {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// n-point rule on [-1, 1]. Nodes ascending.
struct Quadrature {
  std::vector<double> nodes;
  std::vector<double> weights;
  int order = 0;
};

/// Gauss–Legendre rule of order n, 1 <= n <= 4096. Throws InvalidOrder.
Quadrature gauss_legendre(int n);

/// Weighted rule for integrals over S^d of functions of the latitude x = ω_{d+1}:
/// sum_i w_i f(x_i) ≈ ∫_{S^d} f(ω_{d+1}) dω. Gauss–Legendre in the polar angle.
struct LatitudeRule {
  std::vector<double> x;
  std::vector<double> weights;
};

LatitudeRule latitude_rule(int sphere_dim, int n);

/// Extended-precision latitude rule whose weights are rescaled to sum to |S^d|
/// exactly, so constants integrate without rounding drift.
struct LatitudeRuleLd {
  std::vector<long double> x;
  std::vector<long double> weights;
};

LatitudeRuleLd latitude_rule_ld(int sphere_dim, int n);

/// |S^d|, the surface area of the unit d-sphere, 0 <= d <= 16.
double sphere_area(int d);

/// Same value carried in extended precision.
long double sphere_area_ld(int d);

/// Dimension of the space of degree-ℓ spherical harmonics on S^d.
long long harmonic_multiplicity(int d, int degree);

/// L²(S^d)-orthonormal zonal harmonics Y_0..Y_L as functions of x = ω_{d+1}.
///
/// Y_ℓ(x) = C_ℓ^{(d-1)/2}(x) / sqrt(h_ℓ), where C is the Gegenbauer polynomial and
/// h_ℓ its squared norm against |S^{d-1}| (1-x²)^{(d-2)/2} dx. The normalization
/// constants are computed once at construction. Y_ℓ(1) > 0 for every ℓ.
class ZonalBasis {
 public:
  ZonalBasis(int sphere_dim, int max_degree);

  int dimension() const noexcept { return dim_; }
  int max_degree() const noexcept { return max_degree_; }

  /// Y_ℓ(x). Throws DegreeOutOfRange when ℓ > max_degree.
  double eval(int degree, double x) const;

  /// All of Y_0(x) .. Y_L(x) into out (size L+1).
  void eval_all(double x, std::span<double> out) const;

  /// Extended-precision variant of eval_all; Y_0 is exactly |S^d|^{-1/2}.
  void eval_all(long double x, std::span<long double> out) const;

  /// Laplace–Beltrami eigenvalue ℓ(ℓ+d-1) of Y_ℓ.
  double eigenvalue(int degree) const noexcept;

 private:
  template <class Real>
  void eval_impl(Real x, std::span<Real> out) const;

  int dim_;
  int max_degree_;
  long double lambda_;
  std::vector<long double> inv_norm_;
};

/// Convenience: orthonormal zonal harmonic of degree ℓ on S^d at x.
double zonal_eval(int sphere_dim, int degree, double x);

/// u(t) = a0 + Σ_k a_k cos 2πkt + b_k sin 2πkt with k = 1..K.
/// cos_coeffs[k-1] = a_k, sin_coeffs[k-1] = b_k; the two must have equal size.
struct FourierCoefficients {
  double a0 = 0.0;
  std::vector<double> cos_coeffs;
  std::vector<double> sin_coeffs;

  int max_mode() const noexcept { return static_cast<int>(cos_coeffs.size()); }
};

/// Values at t_j = j/n. n must be a power of two with n >= 4K+4 (AliasedGrid).
std::vector<double> circle_synthesis(const FourierCoefficients& coeffs, int n);

/// Inverse of circle_synthesis for modes up to max_mode.
FourierCoefficients circle_analysis(std::span<const double> values, int max_mode);

}  // namespace sobstab
