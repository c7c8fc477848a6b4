#include "sobstab/hessian.hpp"

#include <algorithm>
#include <cmath>

#include "sobstab/error.hpp"
#include "sobstab/spectral_core.hpp"

namespace sobstab {

std::string ModeLabel::to_string() const {
  std::string s = "(" + std::to_string(k) + "," + std::to_string(l) + ")";
  if (k > 0) s += branch == Branch::Cos ? "cos" : "sin";
  return s;
}

namespace {

void check_cutoff(int cutoff) {
  if (cutoff < 0 || cutoff > 64) {
    throw Error(ErrorCode::InvalidArgument, "spectrum cutoff must lie in [0, 64]");
  }
}

void finalize(HessianSpectrum& spectrum) {
  std::stable_sort(spectrum.entries.begin(), spectrum.entries.end(),
                   [](const SpectrumEntry& a, const SpectrumEntry& b) { return a.raw < b.raw; });
  for (const auto& e : spectrum.entries) {
    if (std::abs(e.raw) < kZeroEigenvalue) {
      ++spectrum.counts.zero;
      spectrum.kernel_modes.push_back(e.mode);
    } else if (e.raw < 0.0) {
      ++spectrum.counts.negative;
    } else {
      ++spectrum.counts.positive;
    }
  }
}

// Adds the cos (and, for k >= 1, sin) branch of mode (k, l).
void add_branches(HessianSpectrum& spectrum, int k, int l, double raw, double normalized,
                  long long multiplicity) {
  spectrum.entries.push_back({{k, l, Branch::Cos}, raw, normalized, multiplicity});
  if (k > 0) spectrum.entries.push_back({{k, l, Branch::Sin}, raw, normalized, multiplicity});
}

}  // namespace

double linearized_eigenvalue(const Geometry& g, const ModeLabel& mode) {
  const double k = mode.k;
  const double l = mode.l;
  switch (g.kind()) {
    case GeometryKind::Circle: {
      const double freq = kTwoPi * k;
      return freq * freq - g.mass() * (g.q() - 2.0);
    }
    case GeometryKind::Sphere: return l * (l + g.d() - 1.0) - g.d();
    case GeometryKind::Product: return (g.d() - 2.0) * (k * k - 1.0) + l * (l + g.d() - 2.0);
  }
  return 0.0;
}

HessianSpectrum spectrum(const Geometry& g, int cutoff) {
  check_cutoff(cutoff);
  HessianSpectrum out;
  switch (g.kind()) {
    case GeometryKind::Circle:
      for (int k = 0; k <= cutoff; ++k) {
        const double raw = linearized_eigenvalue(g, {k, 0});
        const double freq = kTwoPi * k;
        add_branches(out, k, 0, raw, raw / (freq * freq + g.mass()), 1);
      }
      break;
    case GeometryKind::Sphere:
      for (int l = 0; l <= cutoff; ++l) {
        const double raw = linearized_eigenvalue(g, {0, l});
        const double freq = l * (l + g.d() - 1.0);
        out.entries.push_back({{0, l, Branch::Cos}, raw, raw / (freq + g.mass()),
                               harmonic_multiplicity(g.d(), l)});
      }
      break;
    case GeometryKind::Product:
      for (int k = 0; k <= cutoff; ++k) {
        for (int l = 0; l <= cutoff; ++l) {
          const double raw = linearized_eigenvalue(g, {k, l});
          const double freq = (g.d() - 2.0) * k * k + l * (l + g.d() - 2.0);
          add_branches(out, k, l, raw, raw / (freq + g.mass()), harmonic_multiplicity(g.d() - 1, l));
        }
      }
      break;
  }
  finalize(out);
  return out;
}

HessianSpectrum product_radius_spectrum(int d, double radius, int cutoff) {
  if (d < 3) throw Error(ErrorCode::DimensionTooSmall, "product manifold needs d >= 3");
  if (!(radius > 0.0 && radius <= 4.0)) {
    throw Error(ErrorCode::InvalidArgument, "radius must lie in (0, 4]");
  }
  check_cutoff(cutoff);
  const double mass = 0.25 * (d - 2.0) * (d - 2.0);
  HessianSpectrum out;
  for (int k = 0; k <= cutoff; ++k) {
    for (int l = 0; l <= cutoff; ++l) {
      const double freq = (k * k) / (radius * radius) + l * (l + d - 2.0);
      const double raw = freq - (d - 2.0);
      add_branches(out, k, l, raw, raw / (freq + mass), harmonic_multiplicity(d - 1, l));
    }
  }
  finalize(out);
  return out;
}

double circle_sharp_constant(double q) { return (q + 2.0) * (q - 2.0) / (12.0 * (q - 1.0)); }

double sphere_sharp_constant(int d, double q) {
  return (d + 1.0) * (q - 2.0) * (2.0 * d - q * (d - 2.0)) / (2.0 * (d + 2.0) * (d + 3.0) * (q - 1.0));
}

QuarticBudget quartic_budget(const Geometry& g) {
  const double q = g.q();
  QuarticBudget b;
  if (g.kind() == GeometryKind::Sphere) {
    const double d = g.d();
    const double area = sphere_area(g.d());
    b.loss = d * (q - 1.0) * (q + d) / (2.0 * (d + 1.0) * (d + 1.0) * (d + 3.0)) * area;
    b.gain = d * d * d * (q - 1.0) * (q - 1.0) / (2.0 * (d + 1.0) * (d + 1.0) * (d + 2.0) * (d + 3.0)) * area;
    b.net = d * (q - 1.0) * (2.0 * d - (d - 2.0) * q) / (2.0 * (d + 1.0) * (d + 2.0) * (d + 3.0)) * area;
    // ‖x‖² = d(q-1)|S^d| / ((q-2)(d+1)), ‖1‖² = d|S^d|/(q-2)
    const double zero_mode_norm_sq = d * (q - 1.0) * area / ((q - 2.0) * (d + 1.0));
    b.distance_conversion = 1.0 / (zero_mode_norm_sq * zero_mode_norm_sq);
    b.norm_sq_at_optimizer = d * area / (q - 2.0);
  } else {
    // The product reduces to the circle at q = 2d/(d-2) by rescaling s.
    const double s = kTwoPi * kTwoPi / (q - 2.0);
    b.loss = s * (q + 1.0) * (q - 1.0) * (q - 2.0) / 32.0;
    b.gain = s * (q - 1.0) * (q - 1.0) * (q - 2.0) / 96.0;
    b.net = s * (q + 2.0) * (q - 1.0) * (q - 2.0) / 48.0;
    b.distance_conversion = 4.0 / ((q - 1.0) * (q - 1.0) * s * s);
    b.norm_sq_at_optimizer = s;
  }
  b.implied_sharp_constant = b.net * b.distance_conversion * b.norm_sq_at_optimizer;
  return b;
}

CorrectorPolynomial corrector_polynomial(const Geometry& g) {
  const double q = g.q();
  if (g.kind() == GeometryKind::Sphere) {
    const double d = g.d();
    const double area = sphere_area(g.d());
    return {d + 2.0, d * (q - 1.0) * std::sqrt(2.0 * d * area / ((d + 1.0) * (d + 1.0) * (d + 3.0)))};
  }
  const double s = kTwoPi * kTwoPi / (q - 2.0);
  const double prefactor = 0.5 * (q - 2.0) * s;
  return {prefactor * 3.0, prefactor * 0.5 * (q - 1.0)};
}

double corrector_coefficient(const Geometry& g) {
  const double q = g.q();
  if (g.kind() == GeometryKind::Sphere) {
    return g.d() * (q - 1.0) / (2.0 * (g.d() + 2.0));
  }
  return (q - 1.0) / 12.0;
}

}  // namespace sobstab
