#pragma once

#include <vector>

#include "sobstab/geometry.hpp"
#include "sobstab/spectral_core.hpp"

namespace sobstab {

/// A trial function given by real coefficients in the geometry's orthogonal basis.
///
/// Storage is a (K+1)×(L+1) tensor of cosine coefficients and one of sine
/// coefficients, indexed by Fourier mode k and zonal degree ℓ:
///   Circle:  φ_{k}(t)     = cos 2πkt / sin 2πkt                     (L = 0)
///   Sphere:  φ_{ℓ}(x)     = Y_ℓ(x), orthonormal zonal harmonics      (K = 0)
///   Product: φ_{k,ℓ}(s,x) = cos(k√(d-2)s) Y_ℓ(x) / sin(k√(d-2)s) Y_ℓ(x)
/// The sine entries of row k = 0 are always zero.
class SpectralFunction {
 public:
  static constexpr int kMaxModes = 64;

  /// Zero function with the given truncation (K ignored on the sphere, L on the circle).
  SpectralFunction(const Geometry& geometry, int max_mode, int max_degree);

  static SpectralFunction circle(const Geometry& geometry, const FourierCoefficients& coeffs);
  static SpectralFunction sphere(const Geometry& geometry, const std::vector<double>& zonal);
  /// cos_tensor[k][ℓ], sin_tensor[k][ℓ]; sin_tensor may be empty.
  static SpectralFunction product(const Geometry& geometry,
                                  const std::vector<std::vector<double>>& cos_tensor,
                                  const std::vector<std::vector<double>>& sin_tensor);
  /// The constant function u ≡ value.
  static SpectralFunction constant(const Geometry& geometry, double value);

  const Geometry& geometry() const noexcept { return geometry_; }
  int max_mode() const noexcept { return max_mode_; }
  int max_degree() const noexcept { return max_degree_; }

  double cos_coeff(int k, int l = 0) const { return cos_[index(k, l)]; }
  double sin_coeff(int k, int l = 0) const { return sin_[index(k, l)]; }
  void set_cos(int k, int l, double value) { cos_[index(k, l)] = value; }
  void set_sin(int k, int l, double value);

  /// Value of the constant basis function φ_{0,0} (1, |S^d|^{-1/2} or |S^{d-1}|^{-1/2}).
  long double constant_mode_value() const;

  /// Coefficient that represents u ≡ 1.
  double unit_constant_coefficient() const;

  /// Squared L² norm of the basis function for (k, ℓ).
  long double basis_norm_sq(int k, int l) const;
  /// Eigenvalue of -Δ on the basis function for (k, ℓ).
  long double frequency_sq(int k, int l) const;

  SpectralFunction scaled(double factor) const;
  /// u(· - shift) along the circle coordinate (t on the circle, s on the product).
  SpectralFunction shifted(double shift) const;
  /// Same function re-expressed with a larger truncation.
  SpectralFunction widened(int max_mode, int max_degree) const;

  FourierCoefficients fourier() const;
  std::vector<double> zonal() const;

  bool operator==(const SpectralFunction& other) const;

 private:
  std::size_t index(int k, int l) const;

  Geometry geometry_;
  int max_mode_;
  int max_degree_;
  std::vector<double> cos_;
  std::vector<double> sin_;
};

}  // namespace sobstab
