#include "dpp/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>
#include <unistd.h>

#include "dpp/counting.hpp"
#include "dpp/errors.hpp"
#include "dpp/variance.hpp"

namespace dpp::cli {

namespace {

using nlohmann::json;

struct CommonOptions {
  std::string format = "csv";
  std::string output;
  std::string scheme = "adaptive_gauss_kronrod";
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  int max_subdivisions = 400;
  int radial_nodes = 400;

  QuadratureConfig quadrature() const {
    QuadratureConfig config;
    config.scheme = parse_quadrature_scheme(scheme);
    config.rel_tol = rel_tol;
    config.abs_tol = abs_tol;
    config.max_subdivisions = max_subdivisions;
    config.radial_nodes = radial_nodes;
    config.validate();
    return config;
  }
};

/// A table rendered either as CSV (header + rows) or as a JSON document.
struct Report {
  std::string command;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  json doc = json::object();
};

std::string render(const Report& report, const std::string& format) {
  std::ostringstream os;
  if (format == "json") {
    os << report.doc.dump(2) << '\n';
    return os.str();
  }
  auto line = [&os](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
    os << '\n';
  };
  line(report.header);
  for (const auto& row : report.rows) line(row);
  return os.str();
}

std::optional<std::filesystem::path> output_path(const CommonOptions& common,
                                                 const std::string& command) {
  if (!common.output.empty()) return std::filesystem::path(common.output);
  if (const char* dir = std::getenv(kOutputDirEnv); dir != nullptr && *dir != '\0') {
    return std::filesystem::path(dir) / (command + "." + common.format);
  }
  return std::nullopt;
}

// Writes next to the target and renames, so a failed run leaves no file.
void write_atomically(const std::filesystem::path& path, const std::string& text) {
  auto tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream file(tmp, std::ios::binary | std::ios::trunc);
    if (!file) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    file << text;
    file.flush();
    if (!file) {
      std::filesystem::remove(tmp);
      throw std::runtime_error("failed writing " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, path);
}

void require(bool condition, const std::string& message) {
  if (!condition) throw DomainError(message);
}

std::string_view paper_route(VarianceRoute route) {
  switch (route) {
    case VarianceRoute::shirai:
      return "ShiFor";
    case VarianceRoute::geometric:
      return "VF";
    case VarianceRoute::int1:
      return "Int1";
    case VarianceRoute::int3:
      return "Int3";
    case VarianceRoute::series:
      return "BinMom";
  }
  return "";
}

// ---------------------------------------------------------------- variance

struct VarianceOptions {
  bool euclidean = false;
  int n = 0;
  double nu = 1.0;
  int m = 0;
  std::vector<double> radii;
  std::string route;
  double epsilon = 1e-12;
};

std::vector<VarianceRoute> resolve_routes(const VarianceOptions& opt) {
  const std::string route = opt.route.empty() ? (opt.euclidean ? "both" : "int1") : opt.route;
  if (opt.euclidean) {
    if (route == "both") return {VarianceRoute::shirai, VarianceRoute::geometric};
    if (route == "shirai") return {VarianceRoute::shirai};
    if (route == "geometric") return {VarianceRoute::geometric};
    throw DomainError("Euclidean routes are shirai, geometric or both");
  }
  if (route == "both") return {VarianceRoute::int1, VarianceRoute::int3};
  if (route == "all") return {VarianceRoute::int1, VarianceRoute::int3, VarianceRoute::series};
  if (route == "int1") return {VarianceRoute::int1};
  if (route == "int3") return {VarianceRoute::int3};
  if (route == "series") return {VarianceRoute::series};
  throw DomainError("hyperbolic routes are int1, int3, series, both or all");
}

Report cmd_variance(const VarianceOptions& opt, const CommonOptions& common) {
  const auto config = common.quadrature();
  const auto routes = resolve_routes(opt);
  require(!opt.radii.empty(), "at least one --r value is required");
  std::optional<EuclideanLevel> flat;
  std::optional<HyperbolicLevel> curved;
  if (opt.euclidean) {
    flat.emplace(opt.n);
    for (double r : opt.radii) require(r > 0.0, "Euclidean radii must be positive");
  } else {
    curved.emplace(opt.nu, opt.m);
    for (double r : opt.radii) require(r > 0.0 && r < 1.0, "hyperbolic radii must lie in (0, 1)");
    for (auto route : routes) {
      require(route != VarianceRoute::series || opt.m == 0,
              "the series route exists only for m = 0");
    }
    require(opt.epsilon > 0.0, "--epsilon must be positive");
  }

  Report report;
  report.command = "variance";
  report.header = {"r", "value", "error_estimate", "route"};
  json rows = json::array();
  for (double r : opt.radii) {
    for (auto route : routes) {
      VarianceResult result;
      switch (route) {
        case VarianceRoute::shirai:
          result = variance_euclidean_shirai(*flat, r, config);
          break;
        case VarianceRoute::geometric:
          result = variance_euclidean_geometric(*flat, r, config);
          break;
        case VarianceRoute::int1:
          result = variance_hyperbolic(*curved, r, config);
          break;
        case VarianceRoute::int3:
          result = variance_hyperbolic_via_transformed(*curved, r, config);
          break;
        case VarianceRoute::series: {
          const auto s = variance_series(opt.nu, r, opt.epsilon);
          result = {s.value, s.error, VarianceRoute::series};
          break;
        }
      }
      report.rows.push_back({format_double(r), format_double(result.value),
                             format_double(result.error_estimate),
                             std::string(to_string(route))});
      rows.push_back({{"r", r},
                      {"value", result.value},
                      {"error_estimate", result.error_estimate},
                      {"route", to_string(route)},
                      {"paper_route", paper_route(route)}});
    }
  }
  report.doc["command"] = "variance";
  report.doc["level"] = opt.euclidean ? json{{"process", "euclidean"}, {"n", opt.n}}
                                      : json{{"process", "hyperbolic"}, {"nu", opt.nu}, {"m", opt.m}};
  report.doc["rows"] = rows;
  return report;
}

// ------------------------------------------------------------- asymptotics

struct AsymptoticsOptions {
  double nu = 1.0;
  int m = 0;
  std::vector<double> radii{0.9, 0.99, 0.999};
};

Report cmd_asymptotics(const AsymptoticsOptions& opt, const CommonOptions& common,
                       std::ostream& err) {
  const auto config = common.quadrature();
  const HyperbolicLevel level(opt.nu, opt.m);
  require(!opt.radii.empty(), "at least one --r value is required");
  for (double r : opt.radii) require(r > 0.0 && r < 1.0, "radii must lie in (0, 1)");

  const double constant = asymptotic_constant(level, config);
  const double bound = asymptotic_constant_bound(level);
  const bool violated = constant > bound;
  if (violated) {
    err << "warning: asymptotic constant " << format_double(constant)
        << " exceeds the bound 2(nu-m)-1 = " << format_double(bound) << '\n';
  }

  Report report;
  report.command = "asymptotics";
  report.header = {"r", "scaled_variance", "constant", "ratio"};
  json rows = json::array();
  for (double r : opt.radii) {
    const double scaled = (1.0 - r) * (1.0 + r) * variance_hyperbolic(level, r, config).value;
    report.rows.push_back({format_double(r), format_double(scaled), format_double(constant),
                           format_double(scaled / constant)});
    rows.push_back({{"r", r},
                    {"scaled_variance", scaled},
                    {"constant", constant},
                    {"ratio", scaled / constant},
                    {"paper_route", "Int1"}});
  }
  report.rows.push_back({"limit", format_double(constant), format_double(constant), "1"});
  report.doc = {{"command", "asymptotics"},
                {"level", {{"nu", opt.nu}, {"m", opt.m}}},
                {"rows", rows},
                {"limit", {{"constant", constant}, {"paper_route", "Thm1"}}},
                {"bound", bound},
                {"bound_violated", violated}};
  return report;
}

// ------------------------------------------------------------ distribution

struct DistributionOptions {
  double nu = 1.0;
  double r = 0.5;
  double epsilon = 1e-12;
  std::vector<double> s_grid;
  int max_moment = 0;
  std::int64_t samples = 0;
  std::uint64_t seed = 0;
  int threads = 1;
};

Report cmd_distribution(const DistributionOptions& opt) {
  require(opt.nu > 0.5, "nu must exceed 1/2");
  require(opt.r > 0.0 && opt.r < 1.0, "r must lie in (0, 1)");
  require(opt.epsilon > 0.0, "--epsilon must be positive");
  for (double s : opt.s_grid) require(s >= -1.0 && std::isfinite(s), "s values must be finite and >= -1");
  require(opt.max_moment >= 0 && opt.max_moment <= kMaxBinomialMomentOrder,
          "--moments must lie in [0, " + std::to_string(kMaxBinomialMomentOrder) + "]");
  require(opt.samples >= 0, "--samples must be non-negative");
  require(opt.threads >= 1, "--threads must be >= 1");

  const auto profile = build_profile(opt.nu, opt.r, opt.epsilon);
  const auto dist = distribution(profile);

  Report report;
  report.command = "distribution";
  report.header = {"quantity", "index", "value"};
  auto add = [&report](const std::string& q, const std::string& idx, double v) {
    report.rows.push_back({q, idx, format_double(v)});
  };
  for (std::size_t j = 0; j < profile.probabilities.size(); ++j) {
    add("probability", std::to_string(j + 1), profile.probabilities[j]);
  }
  for (std::size_t k = 0; k < dist.pmf.size(); ++k) add("pmf", std::to_string(k), dist.pmf[k]);
  add("mean", "", dist.mean);
  add("variance", "", dist.variance);
  add("tail_bound", "", profile.tail_bound);

  json gf = json::array();
  for (double s : opt.s_grid) {
    const double product = generating_function(profile, s);
    std::vector<double> terms(dist.pmf.size());
    for (std::size_t k = 0; k < dist.pmf.size(); ++k) {
      terms[k] = dist.pmf[k] * std::pow(1.0 + s, static_cast<double>(k));
    }
    const double expectation = pairwise_sum(terms);
    add("generating_function", format_double(s), product);
    add("pmf_expectation", format_double(s), expectation);
    gf.push_back({{"s", s}, {"product", product}, {"pmf_expectation", expectation},
                  {"paper_route", "GenFun"}});
  }
  json moments = json::array();
  for (int k = 1; k <= opt.max_moment; ++k) {
    const double value = binomial_moment(profile, k);
    add("binomial_moment", std::to_string(k), value);
    moments.push_back({{"k", k}, {"value", value}, {"paper_route", "BinMom"}});
  }
  json histogram = json::array();
  if (opt.samples > 0) {
    const auto hist = sample_counts(profile, opt.seed, opt.samples, opt.threads);
    for (std::size_t k = 0; k < hist.size(); ++k) {
      report.rows.push_back({"histogram", std::to_string(k), std::to_string(hist[k])});
      histogram.push_back(hist[k]);
    }
  }

  report.doc = {{"command", "distribution"},
                {"nu", opt.nu},
                {"r", opt.r},
                {"probabilities", profile.probabilities},
                {"tail_bound", profile.tail_bound},
                {"pmf", dist.pmf},
                {"mean", dist.mean},
                {"variance", dist.variance},
                {"paper_route", "GenFun"},
                {"generating_function", gf},
                {"binomial_moments", moments}};
  if (opt.samples > 0) {
    report.doc["monte_carlo"] = {{"seed", opt.seed}, {"samples", opt.samples},
                                 {"histogram", histogram}};
  }
  return report;
}

// ------------------------------------------------------------- contraction

struct ContractionOptions {
  int m = 0;
  double r = 1.0;
  std::vector<double> scales{4.0, 8.0, 16.0};
};

Report cmd_contraction(const ContractionOptions& opt, const CommonOptions& common) {
  const auto config = common.quadrature();
  require(opt.m >= 0, "m must be non-negative");
  require(opt.r > 0.0, "r must be positive");
  require(!opt.scales.empty(), "at least one --R value is required");
  for (double scale : opt.scales) {
    require(scale > 1.0 && opt.r / scale < 1.0, "each R must exceed max(1, r)");
    HyperbolicLevel(0.5 * scale * scale, opt.m);
  }

  const auto table = contraction_check(opt.m, opt.r, opt.scales, config);
  Report report;
  report.command = "contraction";
  report.header = {"R", "scaled_variance", "euclidean_target", "ratio", "unscaled_variance",
                   "unscaled_ratio"};
  json rows = json::array();
  for (const auto& row : table) {
    report.rows.push_back({format_double(row.curvature_scale), format_double(row.scaled_variance),
                           format_double(row.euclidean_target), format_double(row.ratio),
                           format_double(row.variance), format_double(row.unscaled_ratio)});
    rows.push_back({{"R", row.curvature_scale},
                    {"scaled_variance", row.scaled_variance},
                    {"euclidean_target", row.euclidean_target},
                    {"ratio", row.ratio},
                    {"unscaled_variance", row.variance},
                    {"unscaled_ratio", row.unscaled_ratio},
                    {"paper_route", "Int1"}});
  }
  report.doc = {{"command", "contraction"}, {"m", opt.m}, {"r", opt.r}, {"rows", rows}};
  return report;
}

void add_output(CLI::App* sub, CommonOptions& common) {
  sub->add_option("--format", common.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--output", common.output,
                  std::string("output file (default: stdout, or $") + kOutputDirEnv +
                      "/<command>.<format>)");
}

void add_common(CLI::App* sub, CommonOptions& common) {
  add_output(sub, common);
  sub->add_option("--scheme", common.scheme,
                  "adaptive_gauss_kronrod | tanh_sinh | gauss_legendre_fixed");
  sub->add_option("--rel-tol", common.rel_tol, "relative quadrature tolerance");
  sub->add_option("--abs-tol", common.abs_tol, "absolute quadrature tolerance");
  sub->add_option("--max-subdivisions", common.max_subdivisions, "adaptive interval budget");
  sub->add_option("--radial-nodes", common.radial_nodes, "node budget of the fixed scheme");
}

}  // namespace

std::string format_double(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Variance and counting statistics of Ginibre-type and hyperbolic-type "
               "determinantal point processes"};
  app.require_subcommand(1);
  CommonOptions common;

  VarianceOptions var;
  auto* variance = app.add_subcommand("variance", "variance of N_r by one or more routes");
  variance->add_flag("--euclidean", var.euclidean, "planar process at level --n");
  variance->add_option("--n", var.n, "Euclidean Landau level");
  variance->add_option("--nu", var.nu, "magnetic strength, nu > 1/2");
  variance->add_option("--m", var.m, "hyperbolic level index");
  variance->add_option("--r", var.radii, "radius or comma-separated radii")
      ->required()
      ->delimiter(',');
  variance->add_option("--route", var.route,
                       "int1 | int3 | series | both | all (hyperbolic); shirai | geometric | both");
  variance->add_option("--epsilon", var.epsilon, "series tail tolerance");
  add_common(variance, common);

  AsymptoticsOptions asym;
  auto* asymptotics = app.add_subcommand("asymptotics", "(1-r^2) V against its r -> 1 limit");
  asymptotics->add_option("--nu", asym.nu)->required();
  asymptotics->add_option("--m", asym.m);
  asymptotics->add_option("--r", asym.radii, "comma-separated radii")->delimiter(',');
  add_common(asymptotics, common);

  DistributionOptions dist;
  auto* distribution_cmd =
      app.add_subcommand("distribution", "law of N_r for the weighted Bergman process (m = 0)");
  distribution_cmd->add_option("--nu", dist.nu)->required();
  distribution_cmd->add_option("--r", dist.r)->required();
  distribution_cmd->add_option("--epsilon", dist.epsilon, "tail tolerance of the profile");
  distribution_cmd->add_option("--s", dist.s_grid, "generating-function arguments")->delimiter(',');
  distribution_cmd->add_option("--moments", dist.max_moment, "binomial moments 1..k");
  distribution_cmd->add_option("--samples", dist.samples, "Monte Carlo draws");
  distribution_cmd->add_option("--seed", dist.seed, "Monte Carlo seed");
  distribution_cmd->add_option("--threads", dist.threads, "sampling threads");
  add_output(distribution_cmd, common);

  ContractionOptions con;
  auto* contraction = app.add_subcommand("contraction", "flat limit nu = R^2/2, radius r/R");
  contraction->add_option("--m", con.m);
  contraction->add_option("--r", con.r);
  contraction->add_option("--R", con.scales, "comma-separated curvature scales")->delimiter(',');
  add_common(contraction, common);

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }

  try {
    Report report;
    if (*variance) {
      report = cmd_variance(var, common);
    } else if (*asymptotics) {
      report = cmd_asymptotics(asym, common, err);
    } else if (*distribution_cmd) {
      report = cmd_distribution(dist);
    } else {
      report = cmd_contraction(con, common);
    }
    const std::string text = render(report, common.format);
    if (const auto path = output_path(common, report.command)) {
      write_atomically(*path, text);
    } else {
      out << text;
    }
    return kExitOk;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const QuadratureFailure& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const TruncationFailure& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
}

}  // namespace dpp::cli
