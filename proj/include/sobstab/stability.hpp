#pragma once

#include <functional>
#include <span>
#include <vector>

#include "sobstab/functionals.hpp"
#include "sobstab/hessian.hpp"

namespace sobstab {

/// ε-indexed table of stability quotients with fitted exponent and limit.
struct ScanResult {
  std::vector<double> epsilons;  // decreasing
  std::vector<double> quotients;
  std::vector<double> deficits;
  std::vector<double> dist_sqs;
  std::vector<DeficitReport> reports;
  double fitted_exponent = 0.0;
  double extrapolated_constant = 0.0;
};

struct DistDeficit {
  double dist_sq = 0.0;
  double deficit = 0.0;
};

using Family = std::function<SpectralFunction(double)>;

/// Deficits at or below this multiple of ‖u‖² are indistinguishable from rounding.
inline constexpr double kNoiseFloor = 1e-13;

/// Closed-form liminf of the quotient along near-optimal sequences.
double sharp_constant(const Geometry& g);

/// 1 + ε g + ε² h with g the zero mode and h = corrector_scale · (optimal corrector).
/// 0 <= ε <= 0.3, else EpsilonOutOfRange.
SpectralFunction extremal_family(const Geometry& g, double eps, double corrector_scale = 1.0);

/// Lowest mode with a positive linearized eigenvalue: circle k = 2, sphere ℓ = 2,
/// product (k, ℓ) = (0, 1).
ModeLabel first_positive_mode(const Geometry& g);

/// 1 + ε φ with φ the (cos branch) basis function of mode, scaled to unit size at its peak.
SpectralFunction mode_family(const Geometry& g, const ModeLabel& mode, double eps);

/// Scan along extremal_family at ε_i = ε₀ · factor^i, i < count.
ScanResult epsilon_scan(const Geometry& g, double eps0, double factor, int count,
                        const QuadratureOptions& options = {});

/// Scan along an arbitrary family.
ScanResult epsilon_scan(const Family& family, double eps0, double factor, int count,
                        const QuadratureOptions& options = {});

/// Least-squares slope α in deficit ~ dist^α (dist = √dist_sq).
double fit_exponent(std::span<const DistDeficit> pairs);

/// Two-point Richardson extrapolation of Q(ε) = C + c₁ε on the two smallest ε.
double extrapolate_constant(std::span<const double> epsilons, std::span<const double> quotients);
double extrapolate_constant(const ScanResult& scan);

}  // namespace sobstab
