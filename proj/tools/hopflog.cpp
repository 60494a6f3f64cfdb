// Command-line driver: sample configurations, evaluate energies and
// expectations, run Monte Carlo estimates and sweeps.

#include <atomic>
#include <csignal>
#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hopflog/errors.hpp"
#include "hopflog/expectations.hpp"
#include "hopflog/harness.hpp"
#include "hopflog/io.hpp"
#include "hopflog/lift_energy.hpp"

namespace {

using namespace hopflog;
using nlohmann::json;

std::atomic<bool> g_stop{false};

extern "C" void on_sigint(int) { g_stop = true; }

struct Options {
  std::string family = "uniform-s3";
  std::vector<long> n;
  std::vector<int> r;
  std::vector<int> L;
  std::vector<int> parallels;
  std::string rj_file;
  std::vector<int> rj;
  std::optional<int> k;
  std::optional<double> alpha;
  std::string k_rule;
  int runs = 1;
  std::uint64_t seed = 0;
  std::uint64_t run = 0;
  std::string out;
  std::string format = "csv";
  std::string config;
  std::optional<int> dim;
  std::string in;
  long max_n = 100000;
  int max_subdivisions = kExpectationQuadrature.max_subdivisions;
};

void add_model_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--family", o.family, "Point family");
  cmd->add_option("--n", o.n, "Number of points, or base points for lifted uniform families")->delimiter(',');
  cmd->add_option("--r", o.r, "Spherical-ensemble rank")->delimiter(',');
  cmd->add_option("--L", o.L, "Harmonic-ensemble degree")->delimiter(',');
  cmd->add_option("--parallels", o.parallels, "Diamond parallels (ansatz counts)")->delimiter(',');
  cmd->add_option("--rj", o.rj_file, "File with Diamond counts, one integer per line");
  cmd->add_option("--k", o.k, "Points per fibre");
  cmd->add_option("--alpha", o.alpha, "Diamond k-rule exponent: k = round(p^alpha)");
  cmd->add_option("--k-rule", o.k_rule, "explicit | alpha | spherical | harmonic");
  cmd->add_option("--seed", o.seed, "Master seed");
  cmd->add_option("--config", o.config, "JSON file whose keys override flags");
}

void add_output_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--out", o.out, "Output path (default stdout)");
  cmd->add_option("--format", o.format, "csv | json");
}

void apply_config_file(Options& o) {
  if (o.config.empty()) return;
  json j;
  try {
    j = json::parse(read_file(o.config));
  } catch (const json::exception& e) {
    throw ValidationError("invalid config JSON in '" + o.config + "': " + e.what());
  }
  if (!j.is_object()) throw ValidationError("config '" + o.config + "' must be a JSON object");
  auto list = [&](const char* key, auto& target) {
    if (!j.contains(key)) return;
    using T = typename std::decay_t<decltype(target)>::value_type;
    target.clear();
    if (j[key].is_array())
      for (const auto& v : j[key]) target.push_back(v.get<T>());
    else
      target.push_back(j[key].get<T>());
  };
  try {
    if (j.contains("family")) o.family = j["family"].get<std::string>();
    list("n", o.n);
    list("r", o.r);
    list("L", o.L);
    list("parallels", o.parallels);
    list("rj", o.rj);
    if (j.contains("k")) o.k = j["k"].get<int>();
    if (j.contains("alpha")) o.alpha = j["alpha"].get<double>();
    if (j.contains("k_rule")) o.k_rule = j["k_rule"].get<std::string>();
    if (j.contains("runs")) o.runs = j["runs"].get<int>();
    if (j.contains("seed")) o.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("run")) o.run = j["run"].get<std::uint64_t>();
    if (j.contains("out")) o.out = j["out"].get<std::string>();
    if (j.contains("format")) o.format = j["format"].get<std::string>();
    if (j.contains("max_n")) o.max_n = j["max_n"].get<long>();
  } catch (const json::exception& e) {
    throw ValidationError("config '" + o.config + "': " + e.what());
  }
}

std::vector<int> read_counts(const std::string& path) {
  std::istringstream in(read_file(path));
  std::vector<int> counts;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      counts.push_back(std::stoi(line));
    } catch (const std::exception&) {
      throw ValidationError("'" + path + "': not an integer: '" + line + "'");
    }
  }
  return counts;
}

template <class T>
T single(const std::vector<T>& v, const char* flag, T fallback) {
  if (v.empty()) return fallback;
  if (v.size() > 1) throw ValidationError(std::string(flag) + " takes a single value here");
  return v.front();
}

ExperimentConfig to_config(const Options& o) {
  ExperimentConfig c;
  c.family = family_from_string(o.family);
  c.n = single(o.n, "--n", 0L);
  c.r = single(o.r, "--r", 0);
  c.L = single(o.L, "--L", -1);
  c.parallels = single(o.parallels, "--parallels", 0);
  c.rj = o.rj;
  if (!o.rj_file.empty()) c.rj = read_counts(o.rj_file);
  c.runs = o.runs;
  c.seed = o.seed;

  std::string rule = o.k_rule;
  if (rule.empty()) rule = o.k ? "explicit" : (o.alpha ? "alpha" : "explicit");
  if (rule == "explicit") {
    c.k_rule.kind = KRule::Kind::explicit_k;
    c.k_rule.k = o.k.value_or(1);
  } else if (rule == "alpha") {
    c.k_rule.kind = KRule::Kind::alpha;
    c.k_rule.alpha = o.alpha.value_or(1.2);
  } else if (rule == "spherical") {
    c.k_rule.kind = KRule::Kind::spherical;
  } else if (rule == "harmonic") {
    c.k_rule.kind = KRule::Kind::harmonic;
  } else {
    throw ValidationError("unknown --k-rule '" + rule + "'");
  }
  c.validate();
  return c;
}

Format guess_format(const std::string& path, const std::string& requested, bool requested_set) {
  if (requested_set) return format_from_string(requested);
  if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") return Format::json;
  return Format::csv;
}

void print_json(const json& j, const std::string& out) { write_output(j.dump(2) + "\n", out); }

int cmd_generate(Options& o) {
  const ExperimentConfig c = to_config(o);
  write_output(points_to_string(generate(c, o.run), format_from_string(o.format)), o.out);
  return 0;
}

int cmd_energy(Options& o, bool format_set) {
  if (o.in.empty()) throw ValidationError("energy: --in is required");
  const Format f = guess_format(o.in, o.format, format_set);
  PointTable t = parse_points(read_file(o.in), f);
  const int dim = o.dim.value_or(t.dim);
  if (dim != t.dim) throw ValidationError("energy: --dim disagrees with the file");
  const double e = log_energy(t.coords, dim);
  json j;
  j["n"] = t.size();
  j["energy"] = e;
  print_json(j, o.out);
  return 0;
}

int cmd_expect(Options& o) {
  const ExperimentConfig c = to_config(o);
  json j;
  j["family"] = o.family;
  j["N"] = c.total_points();
  j["k"] = c.resolve_k();
  const auto cf = closed_form(c);
  j["closed_form"] = cf ? json(*cf) : json(nullptr);
  // Independent evaluation where one exists.
  QuadratureSpec q = kExpectationQuadrature;
  q.max_subdivisions = o.max_subdivisions;
  if (c.family == Family::lifted_spherical)
    j["quadrature"] = expected_lifted_dpp(spherical_profile(c.r), c.resolve_k(), DppIntegralForm::automatic, q);
  else if (c.family == Family::lifted_harmonic)
    j["quadrature"] = expected_lifted_dpp(harmonic_profile(c.L), c.resolve_k(), DppIntegralForm::semi_infinite, q);
  else if (c.family == Family::lifted_diamond) {
    LiftedDiamondOptions opt;
    opt.average_over_longitude = true;
    opt.quadrature.max_subdivisions = o.max_subdivisions;
    j["quadrature"] = expected_lifted_diamond_semianalytic(c.diamond_spec(), c.resolve_k(), opt);
  }
  if (cf && c.total_points() >= 2) {
    const auto s = normalized_series(*cf, static_cast<double>(c.total_points()));
    j["n1"] = s.n1;
    j["n2"] = s.n2;
  }
  print_json(j, o.out);
  return 0;
}

int emit_rows(const std::vector<ResultRow>& rows, const Options& o, bool interrupted) {
  write_output(rows_to_string(rows, format_from_string(o.format)), o.out);
  if (interrupted) {
    std::cerr << "interrupted: wrote " << rows.size() << " row(s) from completed runs\n";
    return 130;
  }
  return 0;
}

int cmd_mc(Options& o) {
  const ExperimentConfig c = to_config(o);
  const McResult res = mc_run(c, &g_stop);
  if (res.energies.empty()) return emit_rows({}, o, true);
  return emit_rows({res.row}, o, res.interrupted);
}

int cmd_sweep(Options& o) {
  const Family family = family_from_string(o.family);
  if (family == Family::lifted_diamond && (o.alpha || o.k_rule == "alpha") && !o.k) {
    if (o.parallels.empty()) throw ValidationError("sweep: --parallels list is required");
    format_from_string(o.format);
    const auto rows = sweep_diamond_alpha(o.parallels, o.alpha.value_or(1.2), o.runs, o.seed, &g_stop);
    return emit_rows(rows, o, g_stop.load());
  }
  // Sweep over whichever size flag carries a list.
  std::vector<Options> points;
  auto expand = [&](auto member) {
    for (const auto& v : o.*member) {
      Options copy = o;
      (copy.*member) = {v};
      points.push_back(copy);
    }
  };
  if (o.n.size() > 1) expand(&Options::n);
  else if (o.r.size() > 1) expand(&Options::r);
  else if (o.L.size() > 1) expand(&Options::L);
  else if (o.parallels.size() > 1) expand(&Options::parallels);
  else points.push_back(o);
  std::vector<ResultRow> rows;
  for (const auto& p : points) {
    if (g_stop) break;
    const McResult res = mc_run(to_config(p), &g_stop);
    if (!res.energies.empty()) rows.push_back(res.row);
  }
  return emit_rows(rows, o, g_stop.load());
}

int cmd_figure(Options& o) {
  const double alpha = o.alpha.value_or(1.2);
  const auto ps = o.parallels.empty() ? figure_parallels(alpha, o.max_n) : o.parallels;
  format_from_string(o.format);
  const auto rows = sweep_diamond_alpha(ps, alpha, o.runs, o.seed, &g_stop);
  return emit_rows(rows, o, g_stop.load());
}

int run(int argc, char** argv) {
  CLI::App app{"Logarithmic energy of Hopf-lifted point configurations on S^3"};
  app.require_subcommand(1);
  Options o;

  auto* gen = app.add_subcommand("generate", "Sample one configuration and write its points");
  add_model_flags(gen, o);
  add_output_flags(gen, o);
  gen->add_option("--run", o.run, "Run index (substream)");

  auto* energy = app.add_subcommand("energy", "Logarithmic energy of a point file");
  energy->add_option("--in", o.in, "Points file (csv or json)")->required();
  energy->add_option("--dim", o.dim, "Coordinates per point");
  auto* energy_fmt = energy->add_option("--format", o.format, "Input format (default from extension)");
  energy->add_option("--out", o.out, "Output path (default stdout)");

  auto* expect = app.add_subcommand("expect", "Closed-form or quadrature expectation");
  add_model_flags(expect, o);
  expect->add_option("--out", o.out, "Output path (default stdout)");
  expect->add_option("--max-subdivisions", o.max_subdivisions, "Subdivision budget of the quadrature cross-check");

  auto* mc = app.add_subcommand("mc", "Monte Carlo estimate over seeded runs");
  add_model_flags(mc, o);
  add_output_flags(mc, o);
  mc->add_option("--runs", o.runs, "Independent runs");

  auto* sweep = app.add_subcommand("sweep", "Monte Carlo over a list of sizes, or the Diamond alpha sweep");
  add_model_flags(sweep, o);
  add_output_flags(sweep, o);
  sweep->add_option("--runs", o.runs, "Independent runs per point");

  auto* figure = app.add_subcommand("figure", "Lifted-Diamond series (n1, n2 against N)");
  figure->add_option("--alpha", o.alpha, "k = round(p^alpha)");
  figure->add_option("--parallels", o.parallels, "Parallel counts (default: even p up to --max-n)")->delimiter(',');
  figure->add_option("--max-n", o.max_n, "Largest N in the default series");
  figure->add_option("--runs", o.runs, "Runs per point")->default_val(5);
  figure->add_option("--seed", o.seed, "Master seed");
  figure->add_option("--config", o.config, "JSON file whose keys override flags");
  add_output_flags(figure, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  std::signal(SIGINT, on_sigint);
  apply_config_file(o);
  if (*gen) return cmd_generate(o);
  if (*energy) return cmd_energy(o, energy_fmt->count() > 0);
  if (*expect) return cmd_expect(o);
  if (*mc) return cmd_mc(o);
  if (*sweep) return cmd_sweep(o);
  if (*figure) return cmd_figure(o);
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
