#pragma once

#include <optional>

#include "sobstab/spectral_function.hpp"

namespace sobstab {

/// Adaptive grid control for the L^q quadrature.
struct QuadratureOptions {
  /// Largest admissible grid size per direction (Gauss rules are further capped at 4096).
  int cap = 1 << 16;
  /// Doubling stops once the L^q norm changes by less than this, relatively.
  double rel_tol = 1e-11;
};

struct LqEvaluation {
  long double integral = 0.0L;  // ∫ |u|^q
  double norm = 0.0;            // (∫ |u|^q)^{1/q}
  int grid_s = 0;               // uniform points (circle / s-direction), 0 on the sphere
  int grid_x = 0;               // latitude points, 0 on the circle
};

/// All scalars of one evaluation.
struct DeficitReport {
  double norm_sq = 0.0;   // ‖u‖²
  double lq_norm = 0.0;   // ‖u‖_q
  double deficit = 0.0;   // ‖u‖² - C‖u‖_q², reported raw (may be slightly negative)
  double mean = 0.0;      // ū
  double dist_sq = 0.0;   // ‖u - ū‖²
  std::optional<double> quotient;  // ‖u‖² · deficit / dist_sq², absent when dist_sq <= 1e-14 ‖u‖²
};

struct MeanProjection {
  double mean = 0.0;
  SpectralFunction fluctuation;
};

/// Relative threshold below which dist_sq counts as zero.
inline constexpr double kDegenerateDistance = 1e-14;

/// Exact Parseval evaluation of the energy norm ‖u‖².
double h1_norm_sq(const SpectralFunction& u);
long double h1_norm_sq_ld(const SpectralFunction& u);

/// ∫|u|^q on a fixed grid (no adaptivity). grid_s is a power of two.
long double lq_integral_on_grid(const SpectralFunction& u, int grid_s, int grid_x);

/// Adaptive L^q evaluation; throws QuadratureNotConverged at the grid cap.
LqEvaluation lq_evaluate(const SpectralFunction& u, const QuadratureOptions& options = {});

double lq_norm(const SpectralFunction& u, const QuadratureOptions& options = {});

/// ‖u‖² - C ‖u‖_q² with C = S or Y for the geometry.
double deficit(const SpectralFunction& u, const QuadratureOptions& options = {});

MeanProjection mean_project(const SpectralFunction& u);

DeficitReport stability_report(const SpectralFunction& u, const QuadratureOptions& options = {});

/// Quotient of stability_report; throws DegenerateDistance for (near-)constant u.
double stability_quotient(const SpectralFunction& u, const QuadratureOptions& options = {});

}  // namespace sobstab
