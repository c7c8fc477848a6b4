#include "sobstab/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <unistd.h>

#include "sobstab/error.hpp"
#include "sobstab/hessian.hpp"
#include "sobstab/optimizer.hpp"
#include "sobstab/stability.hpp"

namespace sobstab::cli {

using nlohmann::json;

namespace {

const std::vector<std::string> kSubcommands = {"constants", "eval",     "scan",  "spectrum",
                                               "radius-sweep", "optimize", "budget"};

json config_to_json(const RunConfig& c) {
  return json{{"subcommand", c.subcommand}, {"geometry", c.geometry},     {"q", c.q},
              {"d", c.d},                   {"modes", c.modes},           {"cutoff", c.cutoff},
              {"eps_start", c.eps_start},   {"eps_factor", c.eps_factor}, {"eps_count", c.eps_count},
              {"quad_cap", c.quad_cap},     {"restarts", c.restarts},     {"seed", c.seed},
              {"output", c.output},         {"output_path", c.output_path}, {"input", c.input},
              {"family", c.family},         {"radii", c.radii}};
}

RunConfig config_from_json(const json& j) {
  RunConfig c;
  auto get = [&j](const char* key, auto& field) {
    if (j.contains(key)) j.at(key).get_to(field);
  };
  get("subcommand", c.subcommand);
  get("geometry", c.geometry);
  get("q", c.q);
  get("d", c.d);
  get("modes", c.modes);
  get("cutoff", c.cutoff);
  get("eps_start", c.eps_start);
  get("eps_factor", c.eps_factor);
  get("eps_count", c.eps_count);
  get("quad_cap", c.quad_cap);
  get("restarts", c.restarts);
  get("seed", c.seed);
  get("output", c.output);
  get("output_path", c.output_path);
  get("input", c.input);
  get("family", c.family);
  get("radii", c.radii);
  return c;
}

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorCode::InvalidArgument, what); }

std::string fmt(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

json geometry_to_json(const Geometry& g) {
  return json{{"kind", std::string(to_string(g.kind()))}, {"q", g.q()}, {"d", g.d()}};
}

json function_to_json(const SpectralFunction& u) {
  json coeffs;
  switch (u.geometry().kind()) {
    case GeometryKind::Circle: {
      const FourierCoefficients f = u.fourier();
      coeffs = json{{"a0", f.a0}, {"cos", f.cos_coeffs}, {"sin", f.sin_coeffs}};
      break;
    }
    case GeometryKind::Sphere: coeffs = json{{"zonal", u.zonal()}}; break;
    case GeometryKind::Product: {
      std::vector<std::vector<double>> c(u.max_mode() + 1), s(u.max_mode() + 1);
      for (int k = 0; k <= u.max_mode(); ++k) {
        for (int l = 0; l <= u.max_degree(); ++l) {
          c[k].push_back(u.cos_coeff(k, l));
          s[k].push_back(u.sin_coeff(k, l));
        }
      }
      coeffs = json{{"tensor", c}, {"tensor_sin", s}};
      break;
    }
  }
  return json{{"geometry", geometry_to_json(u.geometry())}, {"coefficients", coeffs}};
}

SpectralFunction function_from_json(const json& j, const Geometry& g) {
  const json& c = j.contains("coefficients") ? j.at("coefficients") : j;
  switch (g.kind()) {
    case GeometryKind::Circle: {
      FourierCoefficients f;
      if (c.contains("a0")) c.at("a0").get_to(f.a0);
      if (c.contains("cos")) c.at("cos").get_to(f.cos_coeffs);
      if (c.contains("sin")) c.at("sin").get_to(f.sin_coeffs);
      f.sin_coeffs.resize(std::max(f.sin_coeffs.size(), f.cos_coeffs.size()), 0.0);
      f.cos_coeffs.resize(f.sin_coeffs.size(), 0.0);
      return SpectralFunction::circle(g, f);
    }
    case GeometryKind::Sphere:
      if (!c.contains("zonal")) invalid("sphere input needs a \"zonal\" array");
      return SpectralFunction::sphere(g, c.at("zonal").get<std::vector<double>>());
    case GeometryKind::Product: {
      if (!c.contains("tensor")) invalid("product input needs a \"tensor\" array");
      std::vector<std::vector<double>> sin_tensor;
      if (c.contains("tensor_sin")) c.at("tensor_sin").get_to(sin_tensor);
      return SpectralFunction::product(g, c.at("tensor").get<std::vector<std::vector<double>>>(), sin_tensor);
    }
  }
  invalid("unknown geometry");
}

json report_to_json(const DeficitReport& r) {
  json j{{"norm_sq", r.norm_sq}, {"lq_norm", r.lq_norm}, {"deficit", r.deficit},
         {"mean", r.mean},       {"dist_sq", r.dist_sq}};
  j["quotient"] = r.quotient ? json(*r.quotient) : json(nullptr);
  return j;
}

json spectrum_to_json(const HessianSpectrum& s) {
  json entries = json::array();
  for (const auto& e : s.entries) {
    entries.push_back({{"k", e.mode.k},
                       {"l", e.mode.l},
                       {"branch", e.mode.branch == Branch::Cos ? "cos" : "sin"},
                       {"label", e.mode.to_string()},
                       {"raw", e.raw},
                       {"normalized", e.normalized},
                       {"multiplicity", e.multiplicity}});
  }
  json kernel = json::array();
  for (const auto& m : s.kernel_modes) kernel.push_back(m.to_string());
  return json{{"entries", entries},
              {"counts", {{"negative", s.counts.negative}, {"zero", s.counts.zero}, {"positive", s.counts.positive}}},
              {"kernel_modes", kernel}};
}

// Key/value rows for results made of scalars only.
std::string scalars_csv(const json& result) {
  std::string out = "key,value\n";
  for (const auto& [key, value] : result.items()) {
    if (value.is_number_float()) {
      out += key + "," + fmt(value.get<double>()) + "\n";
    } else if (value.is_number() || value.is_boolean()) {
      out += key + "," + value.dump() + "\n";
    } else if (value.is_string()) {
      out += key + "," + value.get<std::string>() + "\n";
    } else if (value.is_null()) {
      out += key + ",\n";
    }
  }
  return out;
}

struct Report {
  json result;
  std::string csv;
};

Geometry geometry_of(const RunConfig& c) { return make_geometry(parse_geometry_kind(c.geometry), c.q, c.d); }

QuadratureOptions quadrature_of(const RunConfig& c) {
  QuadratureOptions o;
  o.cap = c.quad_cap;
  return o;
}

void validate(const RunConfig& c) {
  if (std::find(kSubcommands.begin(), kSubcommands.end(), c.subcommand) == kSubcommands.end()) {
    invalid("unknown subcommand '" + c.subcommand + "'");
  }
  if (c.output != "json" && c.output != "csv") invalid("--output must be json or csv");
  if (c.quad_cap < 64 || c.quad_cap > (1 << 20)) invalid("--quad-cap must lie in [64, 2^20]");
  if (c.subcommand == "radius-sweep") {
    if (c.d < 3) throw Error(ErrorCode::DimensionTooSmall, "radius sweep needs --d >= 3");
    if (c.radii.empty()) invalid("radius sweep needs at least one radius");
  } else {
    (void)geometry_of(c);
  }
  if (c.cutoff < 0 || c.cutoff > 64) invalid("--cutoff must lie in [0, 64]");
  if (c.subcommand == "scan") {
    if (c.family != "extremal" && c.family != "bare" && c.family != "positive") {
      invalid("--family must be extremal, bare or positive");
    }
    if (c.eps_count < 3) invalid("--eps-count must be at least 3");
    if (!(c.eps_factor > 0.0 && c.eps_factor < 1.0)) invalid("--eps-factor must lie in (0, 1)");
    if (!(c.eps_start > 0.0 && c.eps_start <= 0.3)) {
      throw Error(ErrorCode::EpsilonOutOfRange, "--eps-start must lie in (0, 0.3]");
    }
    if (c.eps_start * std::pow(c.eps_factor, c.eps_count - 1) < 1e-4) {
      throw Error(ErrorCode::EpsilonOutOfRange, "smallest scan epsilon falls below 1e-4");
    }
  }
  if (c.subcommand == "optimize") {
    if (c.modes < 1 || c.modes > 16) invalid("--modes must lie in [1, 16] for optimize");
    if (c.restarts < 1 || c.restarts > 64) invalid("--restarts must lie in [1, 64]");
  }
  if (c.subcommand == "eval" && c.input.empty()) invalid("eval needs --input");
}

Report run_constants(const RunConfig& c) {
  const Geometry g = geometry_of(c);
  json r{{"geometry", geometry_to_json(g)}};
  r[g.kind() == GeometryKind::Circle ? "S" : "Y"] = g.sobolev_constant();
  r["mass"] = g.mass();
  r["volume"] = g.volume();
  if (g.kind() == GeometryKind::Product) r["circle_radius"] = g.circle_radius();
  r["sharp_constant"] = sharp_constant(g);
  r["corrector_coefficient"] = corrector_coefficient(g);
  return {r, scalars_csv(r)};
}

Report run_eval(const RunConfig& c) {
  std::ifstream in(c.input);
  if (!in) invalid("cannot open input file '" + c.input + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    invalid(std::string("malformed input file: ") + e.what());
  }
  Geometry g = geometry_of(c);
  if (j.contains("geometry")) {
    const json& gj = j.at("geometry");
    const std::string kind = gj.value("kind", c.geometry);
    g = make_geometry(parse_geometry_kind(kind), gj.value("q", c.q), gj.value("d", c.d));
  }
  const SpectralFunction u = function_from_json(j, g);
  json r = report_to_json(stability_report(u, quadrature_of(c)));
  r["sobolev_constant"] = g.sobolev_constant();
  return {r, scalars_csv(r)};
}

Report run_scan(const RunConfig& c) {
  const Geometry g = geometry_of(c);
  Family family;
  if (c.family == "bare") {
    family = [&g](double eps) { return extremal_family(g, eps, 0.0); };
  } else if (c.family == "positive") {
    const ModeLabel mode = first_positive_mode(g);
    family = [&g, mode](double eps) { return mode_family(g, mode, eps); };
  } else {
    family = [&g](double eps) { return extremal_family(g, eps); };
  }
  const ScanResult s = epsilon_scan(family, c.eps_start, c.eps_factor, c.eps_count, quadrature_of(c));
  std::vector<double> norm_sqs, lq_norms;
  for (const auto& rep : s.reports) {
    norm_sqs.push_back(rep.norm_sq);
    lq_norms.push_back(rep.lq_norm);
  }
  json r{{"epsilons", s.epsilons},
         {"norm_sqs", norm_sqs},
         {"lq_norms", lq_norms},
         {"deficits", s.deficits},
         {"dist_sqs", s.dist_sqs},
         {"quotients", s.quotients},
         {"fitted_exponent", s.fitted_exponent},
         {"extrapolated_constant", s.extrapolated_constant},
         {"sharp_constant", sharp_constant(g)}};

  std::string csv = "eps,norm_sq,lq_norm,deficit,dist_sq,quotient\n";
  for (std::size_t i = 0; i < s.epsilons.size(); ++i) {
    csv += fmt(s.epsilons[i]) + "," + fmt(norm_sqs[i]) + "," + fmt(lq_norms[i]) + "," + fmt(s.deficits[i]) +
           "," + fmt(s.dist_sqs[i]) + "," + fmt(s.quotients[i]) + "\n";
  }
  csv += "# fitted_exponent=" + fmt(s.fitted_exponent) + ",extrapolated_constant=" +
         fmt(s.extrapolated_constant) + "\n";
  return {r, csv};
}

Report run_spectrum(const RunConfig& c) {
  const HessianSpectrum s = spectrum(geometry_of(c), c.cutoff);
  std::string csv = "k,l,branch,raw,normalized,multiplicity\n";
  for (const auto& e : s.entries) {
    csv += std::to_string(e.mode.k) + "," + std::to_string(e.mode.l) + "," +
           (e.mode.branch == Branch::Cos ? "cos" : "sin") + "," + fmt(e.raw) + "," + fmt(e.normalized) + "," +
           std::to_string(e.multiplicity) + "\n";
  }
  return {spectrum_to_json(s), csv};
}

Report run_radius_sweep(const RunConfig& c) {
  const double base = product_radius(c.d);
  json sweep = json::array();
  std::string csv = "factor,radius,negative,zero,positive\n";
  for (double factor : c.radii) {
    const double radius = factor * base;
    const HessianSpectrum s = product_radius_spectrum(c.d, radius, c.cutoff);
    json entry = spectrum_to_json(s);
    entry.erase("entries");
    entry["factor"] = factor;
    entry["radius"] = radius;
    sweep.push_back(entry);
    csv += fmt(factor) + "," + fmt(radius) + "," + std::to_string(s.counts.negative) + "," +
           std::to_string(s.counts.zero) + "," + std::to_string(s.counts.positive) + "\n";
  }
  return {json{{"d", c.d}, {"base_radius", base}, {"sweep", sweep}}, csv};
}

Report run_optimize(const RunConfig& c) {
  SimplexOptions options;
  options.quadrature = quadrature_of(c);
  const OptimizationOutcome o = minimize_quotient(geometry_of(c), c.modes, c.restarts, c.seed, options);
  json r{{"best_quotient", o.best_quotient}, {"iterations", o.iterations},
         {"restarts", o.restarts},           {"seed", o.seed},
         {"converged", o.converged},         {"kernel_fraction", kernel_fraction(o.best_function)},
         {"best_function", function_to_json(o.best_function)}};
  return {r, scalars_csv(r)};
}

Report run_budget(const RunConfig& c) {
  const Geometry g = geometry_of(c);
  const QuarticBudget b = quartic_budget(g);
  json r{{"loss", b.loss},
         {"gain", b.gain},
         {"net", b.net},
         {"distance_conversion", b.distance_conversion},
         {"norm_sq_at_optimizer", b.norm_sq_at_optimizer},
         {"implied_sharp_constant", b.implied_sharp_constant},
         {"sharp_constant", sharp_constant(g)}};
  return {r, scalars_csv(r)};
}

Report execute(const RunConfig& c) {
  if (c.subcommand == "constants") return run_constants(c);
  if (c.subcommand == "eval") return run_eval(c);
  if (c.subcommand == "scan") return run_scan(c);
  if (c.subcommand == "spectrum") return run_spectrum(c);
  if (c.subcommand == "radius-sweep") return run_radius_sweep(c);
  if (c.subcommand == "optimize") return run_optimize(c);
  return run_budget(c);
}

void write_atomically(const std::string& path, const std::string& text) {
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) invalid("cannot write '" + tmp.string() + "'");
    os << text;
    os.flush();
    if (!os) invalid("write to '" + tmp.string() + "' failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    invalid("cannot rename onto '" + path + "': " + ec.message());
  }
}

void add_common_options(CLI::App& app, RunConfig& c) {
  app.add_option("--geometry", c.geometry, "circle, sphere or product")
      ->check(CLI::IsMember({"circle", "sphere", "product"}));
  app.add_option("--q", c.q, "Exponent q (ignored for the product)");
  app.add_option("--d", c.d, "Dimension of the sphere or product manifold");
  app.add_option("--modes", c.modes, "Truncation K for optimize");
  app.add_option("--cutoff", c.cutoff, "Mode cutoff for spectrum and radius-sweep");
  app.add_option("--eps-start", c.eps_start, "Largest scan epsilon");
  app.add_option("--eps-factor", c.eps_factor, "Ratio between consecutive scan epsilons");
  app.add_option("--eps-count", c.eps_count, "Number of scan points");
  app.add_option("--quad-cap", c.quad_cap, "Largest quadrature grid per direction");
  app.add_option("--restarts", c.restarts, "Optimizer restarts");
  app.add_option("--seed", c.seed, "Optimizer seed");
  app.add_option("--output", c.output, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--output-path", c.output_path, "Write the report here instead of stdout");
  app.add_option("--input", c.input, "Coefficient file for eval");
  app.add_option("--family", c.family, "Scan family: extremal, bare or positive")
      ->check(CLI::IsMember({"extremal", "bare", "positive"}));
  app.add_option("--radii", c.radii, "Radius-sweep factors relative to 1/sqrt(d-2)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectral toolkit for degenerate stability of Sobolev inequalities", "sobstab"};
  RunConfig config;
  std::string config_path;
  app.set_version_flag("--version", kVersion);
  app.add_option("--config", config_path, "Re-run the config embedded in a JSON report");
  app.require_subcommand(0, 1);
  std::vector<CLI::App*> subs;
  const std::vector<std::string> descriptions = {
      "Sobolev constant, mass, volume and sharp stability constant",
      "Deficit report for a coefficient file (--input)",
      "Epsilon scan of the stability quotient with exponent fit and extrapolation",
      "Labeled spectrum of the linearized operator at the constants",
      "Kernel of the product spectrum as the circle radius varies (--radii, --d)",
      "Simplex search for the smallest stability quotient",
      "Fourth-order budget along the zero mode"};
  for (std::size_t i = 0; i < kSubcommands.size(); ++i) {
    CLI::App* sub = app.add_subcommand(kSubcommands[i], descriptions[i]);
    sub->fallthrough();
    add_common_options(*sub, config);
    subs.push_back(sub);
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << app.help();
    return kValidation;
  }

  try {
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) invalid("cannot open config file '" + config_path + "'");
      json j;
      try {
        j = json::parse(in);
        config = config_from_json(j.contains("config") ? j.at("config") : j);
      } catch (const json::exception& e) {
        invalid(std::string("malformed config file: ") + e.what());
      }
    } else {
      for (CLI::App* sub : subs) {
        if (sub->parsed()) config.subcommand = sub->get_name();
      }
      if (config.subcommand.empty()) {
        err << "a subcommand is required\n" << app.help();
        return kValidation;
      }
    }

    validate(config);
    const Report report = execute(config);
    std::string text;
    if (config.output == "csv") {
      text = report.csv;
    } else {
      const json doc{{"config", config_to_json(config)}, {"version", kVersion}, {"result", report.result}};
      text = doc.dump(2) + "\n";
    }
    if (config.output_path.empty()) {
      out << text;
    } else {
      write_atomically(config.output_path, text);
    }
    return kOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return is_numerical(e.code()) ? kNumerical : kValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kValidation;
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace sobstab::cli
