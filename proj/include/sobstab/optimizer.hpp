#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sobstab/functionals.hpp"

namespace sobstab {

struct OptimizationOutcome {
  SpectralFunction best_function;
  double best_quotient = 0.0;
  int iterations = 0;  // simplex iterations of the winning restart
  int restarts = 0;
  std::uint64_t seed = 0;
  bool converged = false;  // winning restart reached the diameter tolerance
};

struct SimplexOptions {
  double diameter_tol = 1e-9;
  int max_iterations = 5000;
  QuadratureOptions quadrature;
};

/// Search over the truncated coefficient space:
///   Circle  a_k, b_k for 1 <= k <= K
///   Sphere  c_ℓ for 1 <= ℓ <= K
///   Product cos/sin of (k, 0) for 1 <= k <= K and of (k, 1) for 0 <= k <= K
/// Restart r draws coefficients uniform on [-0.5, 0.5] / (1 + k² + ℓ²); restarts with
/// r % 4 == 3 have constant mode 0, the others constant mode 1.
/// K <= 16, 1 <= restarts <= 64. Throws SearchDegenerate when no candidate is finite.
OptimizationOutcome minimize_quotient(const Geometry& g, int K, int restarts, std::uint64_t seed,
                                      const SimplexOptions& options = {});

/// Single simplex descent from start, keeping its constant mode fixed.
OptimizationOutcome descend_from(const SpectralFunction& start, const SimplexOptions& options = {});

struct ProfilePoint {
  double eps = 0.0;
  double quotient = 0.0;
};

/// Quotient of 1 + ε·direction for each ε in (0, 0.3].
/// direction must have zero mean and nonzero norm (InvalidArgument).
std::vector<ProfilePoint> direction_profile(const Geometry& g, const SpectralFunction& direction,
                                            std::span<const double> epsilons,
                                            const QuadratureOptions& options = {});

/// Share of ‖u - ū‖² carried by the kernel modes (circle k = 1, sphere ℓ = 1,
/// product (k, ℓ) = (1, 0)).
double kernel_fraction(const SpectralFunction& u);

}  // namespace sobstab
