#include "sobstab/spectral_function.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sobstab/error.hpp"

namespace sobstab {

namespace {
constexpr long double kPiLd = 3.141592653589793238462643383279502884L;
}

SpectralFunction::SpectralFunction(const Geometry& geometry, int max_mode, int max_degree)
    : geometry_(geometry),
      max_mode_(geometry.kind() == GeometryKind::Sphere ? 0 : max_mode),
      max_degree_(geometry.kind() == GeometryKind::Circle ? 0 : max_degree) {
  if (max_mode_ < 0 || max_mode_ > kMaxModes || max_degree_ < 0 || max_degree_ > kMaxModes) {
    throw Error(ErrorCode::InvalidArgument, "truncation must satisfy 0 <= K, L <= 64");
  }
  const auto size = static_cast<std::size_t>(max_mode_ + 1) * (max_degree_ + 1);
  cos_.assign(size, 0.0);
  sin_.assign(size, 0.0);
}

std::size_t SpectralFunction::index(int k, int l) const {
  if (k < 0 || k > max_mode_ || l < 0 || l > max_degree_) {
    throw Error(ErrorCode::DegreeOutOfRange, "mode (" + std::to_string(k) + ", " + std::to_string(l) +
                                                 ") outside truncation");
  }
  return static_cast<std::size_t>(k) * (max_degree_ + 1) + l;
}

void SpectralFunction::set_sin(int k, int l, double value) {
  if (k == 0 && value != 0.0) {
    throw Error(ErrorCode::InvalidArgument, "mode k = 0 has no sine part");
  }
  sin_[index(k, l)] = value;
}

SpectralFunction SpectralFunction::circle(const Geometry& geometry, const FourierCoefficients& coeffs) {
  if (geometry.kind() != GeometryKind::Circle) {
    throw Error(ErrorCode::InvalidArgument, "Fourier coefficients need a circle geometry");
  }
  if (coeffs.cos_coeffs.size() != coeffs.sin_coeffs.size()) {
    throw Error(ErrorCode::InvalidArgument, "cosine and sine coefficient counts differ");
  }
  SpectralFunction u(geometry, coeffs.max_mode(), 0);
  u.set_cos(0, 0, coeffs.a0);
  for (int k = 1; k <= coeffs.max_mode(); ++k) {
    u.set_cos(k, 0, coeffs.cos_coeffs[k - 1]);
    u.set_sin(k, 0, coeffs.sin_coeffs[k - 1]);
  }
  return u;
}

SpectralFunction SpectralFunction::sphere(const Geometry& geometry, const std::vector<double>& zonal) {
  if (geometry.kind() != GeometryKind::Sphere) {
    throw Error(ErrorCode::InvalidArgument, "zonal coefficients need a sphere geometry");
  }
  if (zonal.empty()) throw Error(ErrorCode::InvalidArgument, "zonal coefficient list is empty");
  SpectralFunction u(geometry, 0, static_cast<int>(zonal.size()) - 1);
  for (std::size_t l = 0; l < zonal.size(); ++l) u.set_cos(0, static_cast<int>(l), zonal[l]);
  return u;
}

SpectralFunction SpectralFunction::product(const Geometry& geometry,
                                           const std::vector<std::vector<double>>& cos_tensor,
                                           const std::vector<std::vector<double>>& sin_tensor) {
  if (geometry.kind() != GeometryKind::Product) {
    throw Error(ErrorCode::InvalidArgument, "tensor coefficients need a product geometry");
  }
  if (cos_tensor.empty() || cos_tensor.front().empty()) {
    throw Error(ErrorCode::InvalidArgument, "tensor coefficient table is empty");
  }
  const int rows = static_cast<int>(cos_tensor.size());
  const int cols = static_cast<int>(cos_tensor.front().size());
  for (const auto& row : cos_tensor) {
    if (static_cast<int>(row.size()) != cols) {
      throw Error(ErrorCode::InvalidArgument, "tensor rows have unequal length");
    }
  }
  if (!sin_tensor.empty()) {
    if (static_cast<int>(sin_tensor.size()) != rows) {
      throw Error(ErrorCode::InvalidArgument, "sine tensor shape differs from cosine tensor");
    }
    for (const auto& row : sin_tensor) {
      if (static_cast<int>(row.size()) != cols) {
        throw Error(ErrorCode::InvalidArgument, "sine tensor shape differs from cosine tensor");
      }
    }
  }
  SpectralFunction u(geometry, rows - 1, cols - 1);
  for (int k = 0; k < rows; ++k) {
    for (int l = 0; l < cols; ++l) {
      u.set_cos(k, l, cos_tensor[k][l]);
      if (!sin_tensor.empty()) u.set_sin(k, l, sin_tensor[k][l]);
    }
  }
  return u;
}

SpectralFunction SpectralFunction::constant(const Geometry& geometry, double value) {
  SpectralFunction u(geometry, 0, 0);
  u.set_cos(0, 0, value * u.unit_constant_coefficient());
  return u;
}

long double SpectralFunction::constant_mode_value() const {
  switch (geometry_.kind()) {
    case GeometryKind::Circle: return 1.0L;
    case GeometryKind::Sphere: return 1.0L / std::sqrt(sphere_area_ld(geometry_.d()));
    case GeometryKind::Product: return 1.0L / std::sqrt(sphere_area_ld(geometry_.d() - 1));
  }
  return 1.0L;
}

double SpectralFunction::unit_constant_coefficient() const {
  return static_cast<double>(1.0L / constant_mode_value());
}

long double SpectralFunction::basis_norm_sq(int k, int /*l*/) const {
  switch (geometry_.kind()) {
    case GeometryKind::Circle: return k == 0 ? 1.0L : 0.5L;
    case GeometryKind::Sphere: return 1.0L;
    case GeometryKind::Product: {
      const long double period = 2.0L * kPiLd / std::sqrt(static_cast<long double>(geometry_.d() - 2));
      return k == 0 ? period : 0.5L * period;
    }
  }
  return 1.0L;
}

long double SpectralFunction::frequency_sq(int k, int l) const {
  const long double kk = k;
  const long double ll = l;
  switch (geometry_.kind()) {
    case GeometryKind::Circle: return 4.0L * kPiLd * kPiLd * kk * kk;
    case GeometryKind::Sphere: return ll * (ll + geometry_.d() - 1);
    case GeometryKind::Product: return (geometry_.d() - 2) * kk * kk + ll * (ll + geometry_.d() - 2);
  }
  return 0.0L;
}

SpectralFunction SpectralFunction::scaled(double factor) const {
  SpectralFunction out = *this;
  for (auto& c : out.cos_) c *= factor;
  for (auto& c : out.sin_) c *= factor;
  return out;
}

SpectralFunction SpectralFunction::shifted(double shift) const {
  if (geometry_.kind() == GeometryKind::Sphere) {
    throw Error(ErrorCode::InvalidArgument, "zonal sphere functions have no translation coordinate");
  }
  // cos(ω(t - t0)) = cos ωt cos ωt0 + sin ωt sin ωt0, sin(ω(t - t0)) = sin ωt cos ωt0 - cos ωt sin ωt0
  const double base = geometry_.kind() == GeometryKind::Circle ? kTwoPi : std::sqrt(geometry_.d() - 2.0);
  SpectralFunction out = *this;
  for (int k = 1; k <= max_mode_; ++k) {
    const double phase = base * k * shift;
    const double c = std::cos(phase);
    const double s = std::sin(phase);
    for (int l = 0; l <= max_degree_; ++l) {
      const double a = cos_coeff(k, l);
      const double b = sin_coeff(k, l);
      out.set_cos(k, l, a * c - b * s);
      out.set_sin(k, l, a * s + b * c);
    }
  }
  return out;
}

SpectralFunction SpectralFunction::widened(int max_mode, int max_degree) const {
  SpectralFunction out(geometry_, std::max(max_mode, max_mode_), std::max(max_degree, max_degree_));
  for (int k = 0; k <= max_mode_; ++k) {
    for (int l = 0; l <= max_degree_; ++l) {
      out.set_cos(k, l, cos_coeff(k, l));
      out.set_sin(k, l, sin_coeff(k, l));
    }
  }
  return out;
}

FourierCoefficients SpectralFunction::fourier() const {
  if (geometry_.kind() != GeometryKind::Circle) {
    throw Error(ErrorCode::InvalidArgument, "Fourier view requires a circle function");
  }
  FourierCoefficients c;
  c.a0 = cos_coeff(0);
  for (int k = 1; k <= max_mode_; ++k) {
    c.cos_coeffs.push_back(cos_coeff(k));
    c.sin_coeffs.push_back(sin_coeff(k));
  }
  return c;
}

std::vector<double> SpectralFunction::zonal() const {
  if (geometry_.kind() != GeometryKind::Sphere) {
    throw Error(ErrorCode::InvalidArgument, "zonal view requires a sphere function");
  }
  return cos_;
}

bool SpectralFunction::operator==(const SpectralFunction& other) const {
  return geometry_.kind() == other.geometry_.kind() && geometry_.q() == other.geometry_.q() &&
         geometry_.d() == other.geometry_.d() && max_mode_ == other.max_mode_ &&
         max_degree_ == other.max_degree_ && cos_ == other.cos_ && sin_ == other.sin_;
}

}  // namespace sobstab
