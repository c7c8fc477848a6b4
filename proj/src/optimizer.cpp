#include "sobstab/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "sobstab/error.hpp"
#include "sobstab/stability.hpp"

namespace sobstab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Slot {
  int k;
  int l;
  bool sine;
};

std::vector<Slot> free_slots(const SpectralFunction& u) {
  std::vector<Slot> slots;
  for (int k = 0; k <= u.max_mode(); ++k) {
    for (int l = 0; l <= u.max_degree(); ++l) {
      if (k == 0 && l == 0) continue;
      slots.push_back({k, l, false});
      if (k > 0) slots.push_back({k, l, true});
    }
  }
  return slots;
}

class Objective {
 public:
  Objective(const SpectralFunction& base, std::vector<Slot> slots, const QuadratureOptions& quadrature)
      : base_(base), slots_(std::move(slots)), unit_(base.unit_constant_coefficient()),
        quadrature_(quadrature) {}

  std::size_t dimension() const { return slots_.size(); }

  SpectralFunction build(const std::vector<double>& p) const {
    SpectralFunction u = base_;
    for (std::size_t i = 0; i < slots_.size(); ++i) {
      const Slot& s = slots_[i];
      if (s.sine) {
        u.set_sin(s.k, s.l, p[i] * unit_);
      } else {
        u.set_cos(s.k, s.l, p[i] * unit_);
      }
    }
    return u;
  }

  std::vector<double> params_of(const SpectralFunction& u) const {
    std::vector<double> p(slots_.size());
    for (std::size_t i = 0; i < slots_.size(); ++i) {
      const Slot& s = slots_[i];
      p[i] = (s.sine ? u.sin_coeff(s.k, s.l) : u.cos_coeff(s.k, s.l)) / unit_;
    }
    return p;
  }

  // Candidates whose deficit is lost in rounding, or whose quadrature fails, are +inf.
  double operator()(const std::vector<double>& p) const {
    try {
      const DeficitReport r = stability_report(build(p), quadrature_);
      if (!r.quotient || !(r.deficit > kNoiseFloor * r.norm_sq)) return kInf;
      return std::isfinite(*r.quotient) ? *r.quotient : kInf;
    } catch (const Error&) {
      return kInf;
    }
  }

  double step(std::size_t i) const {
    const Slot& s = slots_[i];
    return 0.1 / (1.0 + s.k * s.k + s.l * s.l);
  }

 private:
  SpectralFunction base_;
  std::vector<Slot> slots_;
  double unit_;
  QuadratureOptions quadrature_;
};

struct SimplexResult {
  std::vector<double> best;
  double value = kInf;
  int iterations = 0;
  bool converged = false;
};

SimplexResult nelder_mead(const Objective& f, const std::vector<double>& x0, const SimplexOptions& options) {
  const std::size_t n = x0.size();
  std::vector<std::vector<double>> x(n + 1, x0);
  std::vector<double> fx(n + 1);
  fx[0] = f(x0);
  for (std::size_t i = 0; i < n; ++i) {
    x[i + 1][i] += f.step(i);
    fx[i + 1] = f(x[i + 1]);
  }

  std::vector<std::size_t> order(n + 1);
  std::vector<double> centroid(n), xr(n), xe(n), xc(n);
  auto point = [&](const std::vector<double>& from, double t, std::vector<double>& out) {
    for (std::size_t j = 0; j < n; ++j) out[j] = centroid[j] + t * (from[j] - centroid[j]);
  };

  SimplexResult result;
  int it = 0;
  for (; it < options.max_iterations; ++it) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fx[a] < fx[b]; });
    const std::size_t best = order[0];
    const std::size_t worst = order[n];
    const std::size_t second = order[n - 1];

    double diameter = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
      for (std::size_t j = 0; j < n; ++j) diameter = std::max(diameter, std::fabs(x[i][j] - x[best][j]));
    }
    if (diameter < options.diameter_tol) {
      result.converged = true;
      break;
    }

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (std::size_t j = 0; j < n; ++j) centroid[j] += x[i][j];
    }
    for (double& c : centroid) c /= static_cast<double>(n);

    point(x[worst], -1.0, xr);
    const double fr = f(xr);
    if (fr < fx[best]) {
      point(x[worst], -2.0, xe);
      const double fe = f(xe);
      if (fe < fr) {
        x[worst] = xe;
        fx[worst] = fe;
      } else {
        x[worst] = xr;
        fx[worst] = fr;
      }
      continue;
    }
    if (fr < fx[second]) {
      x[worst] = xr;
      fx[worst] = fr;
      continue;
    }
    // Outside contraction when the reflection improves on the worst point, inside otherwise.
    const bool outside = fr < fx[worst];
    point(x[worst], outside ? -0.5 : 0.5, xc);
    const double fc = f(xc);
    if (fc < (outside ? fr : fx[worst])) {
      x[worst] = xc;
      fx[worst] = fc;
      continue;
    }
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == best) continue;
      for (std::size_t j = 0; j < n; ++j) x[i][j] = x[best][j] + 0.5 * (x[i][j] - x[best][j]);
      fx[i] = f(x[i]);
    }
  }

  const auto best = static_cast<std::size_t>(std::min_element(fx.begin(), fx.end()) - fx.begin());
  result.best = x[best];
  result.value = fx[best];
  result.iterations = it;
  return result;
}

OptimizationOutcome descend(const SpectralFunction& start, const SimplexOptions& options) {
  const Objective f(start, free_slots(start), options.quadrature);
  const SimplexResult r = nelder_mead(f, f.params_of(start), options);
  OptimizationOutcome out{f.build(r.best), r.value, r.iterations, 1, 0, r.converged};
  return out;
}

}  // namespace

OptimizationOutcome descend_from(const SpectralFunction& start, const SimplexOptions& options) {
  OptimizationOutcome out = descend(start, options);
  if (!std::isfinite(out.best_quotient)) {
    throw Error(ErrorCode::SearchDegenerate, "no finite quotient along the descent");
  }
  return out;
}

OptimizationOutcome minimize_quotient(const Geometry& g, int K, int restarts, std::uint64_t seed,
                                      const SimplexOptions& options) {
  if (K < 1 || K > 16) throw Error(ErrorCode::InvalidArgument, "search truncation K must lie in [1, 16]");
  if (restarts < 1 || restarts > 64) throw Error(ErrorCode::InvalidArgument, "restarts must lie in [1, 64]");

  int max_mode = K;
  int max_degree = 0;
  if (g.kind() == GeometryKind::Sphere) {
    max_mode = 0;
    max_degree = K;
  } else if (g.kind() == GeometryKind::Product) {
    max_degree = 1;
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(-0.5, 0.5);
  std::vector<OptimizationOutcome> outcomes;
  outcomes.reserve(restarts);
  for (int r = 0; r < restarts; ++r) {
    SpectralFunction start(g, max_mode, max_degree);
    const double unit = start.unit_constant_coefficient();
    if (r % 4 != 3) start.set_cos(0, 0, unit);
    for (const Slot& s : free_slots(start)) {
      const double value = uniform(rng) / (1.0 + s.k * s.k + s.l * s.l) * unit;
      if (s.sine) {
        start.set_sin(s.k, s.l, value);
      } else {
        start.set_cos(s.k, s.l, value);
      }
    }
    outcomes.push_back(descend(start, options));
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i < outcomes.size(); ++i) {
    if (outcomes[i].best_quotient < outcomes[best].best_quotient) best = i;
  }
  if (!std::isfinite(outcomes[best].best_quotient)) {
    throw Error(ErrorCode::SearchDegenerate, "every restart stayed at degenerate candidates");
  }
  OptimizationOutcome out = outcomes[best];
  out.restarts = restarts;
  out.seed = seed;
  return out;
}

std::vector<ProfilePoint> direction_profile(const Geometry& g, const SpectralFunction& direction,
                                            std::span<const double> epsilons,
                                            const QuadratureOptions& options) {
  const double norm = std::sqrt(h1_norm_sq(direction));
  if (!(norm > 0.0)) throw Error(ErrorCode::InvalidArgument, "direction has zero norm");
  if (std::fabs(direction.cos_coeff(0, 0)) > 1e-12 * norm) {
    throw Error(ErrorCode::InvalidArgument, "direction must have zero mean");
  }
  if (direction.geometry().kind() != g.kind() || direction.geometry().q() != g.q() ||
      direction.geometry().d() != g.d()) {
    throw Error(ErrorCode::InvalidArgument, "direction lives on a different geometry");
  }
  std::vector<ProfilePoint> out;
  for (double eps : epsilons) {
    if (!(eps > 0.0 && eps <= 0.3)) throw Error(ErrorCode::EpsilonOutOfRange, "profile epsilon outside (0, 0.3]");
    SpectralFunction u = direction.scaled(eps);
    u.set_cos(0, 0, u.unit_constant_coefficient());
    out.push_back({eps, stability_quotient(u, options)});
  }
  return out;
}

double kernel_fraction(const SpectralFunction& u) {
  const long double mass = u.geometry().mass();
  long double total = 0.0L;
  long double kernel = 0.0L;
  for (int k = 0; k <= u.max_mode(); ++k) {
    for (int l = 0; l <= u.max_degree(); ++l) {
      if (k == 0 && l == 0) continue;
      const long double a = u.cos_coeff(k, l);
      const long double b = u.sin_coeff(k, l);
      const long double e = (u.frequency_sq(k, l) + mass) * (a * a + b * b) * u.basis_norm_sq(k, l);
      total += e;
      const bool is_kernel = u.geometry().kind() == GeometryKind::Sphere ? l == 1 : (k == 1 && l == 0);
      if (is_kernel) kernel += e;
    }
  }
  return total > 0.0L ? static_cast<double>(kernel / total) : 0.0;
}

}  // namespace sobstab
