#pragma once

#include <string>
#include <vector>

#include "sobstab/geometry.hpp"

namespace sobstab {

enum class Branch { Cos, Sin };

/// A mode of the linearized operator: Fourier index k (circle, product),
/// zonal degree ℓ (sphere, product) and the cos/sin branch for k >= 1.
struct ModeLabel {
  int k = 0;
  int l = 0;
  Branch branch = Branch::Cos;

  std::string to_string() const;
  bool operator==(const ModeLabel&) const = default;
};

struct SpectrumEntry {
  ModeLabel mode;
  double raw = 0.0;         // second-variation eigenvalue
  double normalized = 0.0;  // raw / (frequency² + mass)
  /// Degeneracy not enumerated as separate entries: the spherical-harmonic
  /// multiplicity of degree ℓ (on S^d, or on S^{d-1} for the product).
  long long multiplicity = 1;
};

struct SpectrumCounts {
  int negative = 0;
  int zero = 0;
  int positive = 0;
};

struct HessianSpectrum {
  std::vector<SpectrumEntry> entries;  // ascending in raw
  SpectrumCounts counts;
  std::vector<ModeLabel> kernel_modes;
};

/// |raw| below this is a zero eigenvalue.
inline constexpr double kZeroEigenvalue = 1e-10;

/// Eigenvalue of the second-variation form at the constant optimizer:
/// circle (2π)²(k²-1), sphere ℓ(ℓ+d-1) - d, product (d-2)(k²-1) + ℓ(ℓ+d-2).
double linearized_eigenvalue(const Geometry& g, const ModeLabel& mode);

/// All modes with k, ℓ <= cutoff (<= 64).
HessianSpectrum spectrum(const Geometry& g, int cutoff);

/// Spectrum on S¹(r) × S^{d-1}: k²/r² + ℓ(ℓ+d-2) - (d-2), r in (0, 4].
HessianSpectrum product_radius_spectrum(int d, double radius, int cutoff);

/// Fourth-order coefficient budget of the expansion along the zero mode.
struct QuarticBudget {
  double loss = 0.0;   // μ⁴ coefficient from the zero mode alone
  double gain = 0.0;   // recovered by the optimal degree-2 corrector
  double net = 0.0;    // loss - gain
  double distance_conversion = 0.0;  // μ⁴ = conversion · ‖u - ū‖⁴ at leading order
  double norm_sq_at_optimizer = 0.0; // ‖1‖² (circle: S)
  double implied_sharp_constant = 0.0;
};

QuarticBudget quartic_budget(const Geometry& g);

/// Coefficients of the reduced corrector polynomial ρ a² - β μ a whose minimum
/// over a at μ = 1 equals -gain (the completed square).
struct CorrectorPolynomial {
  double quadratic = 0.0;  // the overall prefactor times ρ
  double linear = 0.0;     // the overall prefactor times β
};

CorrectorPolynomial corrector_polynomial(const Geometry& g);

/// Scalar multiplying the degree-2 mode in the optimal corrector:
/// (q-1)/12 on the circle and product, d(q-1)/(2(d+2)) on the sphere.
double corrector_coefficient(const Geometry& g);

/// (q+2)(q-2)/(12(q-1)).
double circle_sharp_constant(double q);

/// (d+1)(q-2)(2d-q(d-2)) / (2(d+2)(d+3)(q-1)); reduces to the circle value at d = 1.
double sphere_sharp_constant(int d, double q);

}  // namespace sobstab
