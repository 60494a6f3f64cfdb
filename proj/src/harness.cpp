#include "hopflog/harness.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>

#include "hopflog/dpp.hpp"
#include "hopflog/errors.hpp"
#include "hopflog/expectations.hpp"
#include "hopflog/lift_energy.hpp"
#include "hopflog/parallel.hpp"
#include "hopflog/sampling.hpp"

namespace hopflog {

namespace {

struct FamilyName {
  Family family;
  const char* name;
};

constexpr FamilyName kFamilyNames[] = {
    {Family::uniform_s2, "uniform-s2"},
    {Family::uniform_s3, "uniform-s3"},
    {Family::antipodal_s3, "antipodal-s3"},
    {Family::diamond_s2, "diamond-s2"},
    {Family::spherical_s2, "spherical-s2"},
    {Family::harmonic_s2, "harmonic-s2"},
    {Family::lifted_uniform, "lifted-uniform"},
    {Family::lifted_antipodal, "lifted-antipodal"},
    {Family::lifted_spherical, "lifted-spherical"},
    {Family::lifted_harmonic, "lifted-harmonic"},
    {Family::lifted_diamond, "lifted-diamond"},
};

bool uses_diamond(Family f) { return f == Family::diamond_s2 || f == Family::lifted_diamond; }
bool uses_rank(Family f) { return f == Family::spherical_s2 || f == Family::lifted_spherical; }
bool uses_degree(Family f) { return f == Family::harmonic_s2 || f == Family::lifted_harmonic; }

}  // namespace

std::string to_string(Family family) {
  for (const auto& e : kFamilyNames)
    if (e.family == family) return e.name;
  return "unknown";
}

Family family_from_string(const std::string& name) {
  for (const auto& e : kFamilyNames)
    if (name == e.name) return e.family;
  std::string known;
  for (const auto& e : kFamilyNames) known += std::string(known.empty() ? "" : ", ") + e.name;
  throw ValidationError("unknown family '" + name + "' (expected one of: " + known + ")");
}

bool is_lifted(Family family) {
  switch (family) {
    case Family::lifted_uniform:
    case Family::lifted_antipodal:
    case Family::lifted_spherical:
    case Family::lifted_harmonic:
    case Family::lifted_diamond: return true;
    default: return false;
  }
}

void ExperimentConfig::validate() const {
  if (runs < 1) throw ValidationError("runs must be >= 1");
  switch (family) {
    case Family::uniform_s2:
    case Family::uniform_s3:
    case Family::lifted_uniform:
      if (n < 1) throw ValidationError(to_string(family) + ": --n must be >= 1");
      break;
    case Family::antipodal_s3:
    case Family::lifted_antipodal:
      if (n < 2) throw ValidationError(to_string(family) + ": --n must be >= 2");
      if (n % 2 != 0) throw OddSize(to_string(family) + ": --n must be even");
      break;
    default: break;
  }
  if (uses_rank(family) && r < 1) throw ValidationError(to_string(family) + ": --r must be >= 1");
  if (uses_degree(family) && L < 0) throw ValidationError(to_string(family) + ": --L must be >= 0");
  if (uses_diamond(family)) diamond_spec().validate();
  if (is_lifted(family)) {
    switch (k_rule.kind) {
      case KRule::Kind::explicit_k:
        if (k_rule.k < 1) throw ValidationError("--k must be >= 1");
        break;
      case KRule::Kind::alpha:
        if (!(k_rule.alpha > 0.0)) throw ValidationError("--alpha must be positive");
        if (!uses_diamond(family)) throw ValidationError("the alpha k-rule applies to Diamond families only");
        break;
      case KRule::Kind::spherical:
        if (!uses_rank(family)) throw ValidationError("the spherical k-rule applies to spherical families only");
        break;
      case KRule::Kind::harmonic:
        if (!uses_degree(family)) throw ValidationError("the harmonic k-rule applies to harmonic families only");
        break;
    }
  }
}

DiamondSpec ExperimentConfig::diamond_spec() const {
  if (!rj.empty()) return DiamondSpec::from_counts(rj);
  if (parallels < 1) throw ValidationError(to_string(family) + ": --parallels or --rj is required");
  return DiamondSpec::ansatz(parallels);
}

int ExperimentConfig::resolve_k() const {
  if (!is_lifted(family)) return 1;
  switch (k_rule.kind) {
    case KRule::Kind::explicit_k: return k_rule.k;
    case KRule::Kind::alpha: {
      const int p = diamond_spec().parallels();
      return std::max(1, static_cast<int>(std::round(std::pow(static_cast<double>(p), k_rule.alpha))));
    }
    case KRule::Kind::spherical: return spherical_k_rule(r);
    case KRule::Kind::harmonic: return harmonic_k_rule(static_cast<long>(L + 1) * (L + 1));
  }
  return 1;
}

namespace {
long base_points(const ExperimentConfig& c) {
  switch (c.family) {
    case Family::uniform_s2:
    case Family::uniform_s3:
    case Family::antipodal_s3:
    case Family::lifted_uniform:
    case Family::lifted_antipodal: return c.n;
    case Family::spherical_s2:
    case Family::lifted_spherical: return c.r;
    case Family::harmonic_s2:
    case Family::lifted_harmonic: return static_cast<long>(c.L + 1) * (c.L + 1);
    case Family::diamond_s2: return c.diamond_spec().total_points();
    case Family::lifted_diamond: return c.diamond_spec().total_points() - 2;
  }
  return 0;
}
}  // namespace

long ExperimentConfig::total_points() const { return base_points(*this) * resolve_k(); }

double ExperimentConfig::main_parameter() const {
  if (uses_rank(family)) return r;
  if (uses_degree(family)) return L;
  if (uses_diamond(family)) return diamond_spec().parallels();
  return static_cast<double>(n);
}

AnyConfiguration generate(const ExperimentConfig& config, std::uint64_t run) {
  config.validate();
  SeededStream stream = SeededStream(config.seed).substream(run);
  const int k = config.resolve_k();
  Configuration2 base;
  switch (config.family) {
    case Family::uniform_s3: {
      auto cfg = sample_uniform_s3(static_cast<std::size_t>(config.n), stream);
      cfg.provenance.seed = config.seed;
      cfg.provenance.run = run;
      return cfg;
    }
    case Family::antipodal_s3: {
      auto cfg = antipodal_augment(sample_uniform_s3(static_cast<std::size_t>(config.n / 2), stream));
      cfg.provenance.family = "antipodal-s3";
      cfg.provenance.seed = config.seed;
      cfg.provenance.run = run;
      return cfg;
    }
    case Family::uniform_s2:
    case Family::lifted_uniform: base = sample_uniform_s2(static_cast<std::size_t>(config.n), stream); break;
    case Family::lifted_antipodal:
      base = antipodal_augment(sample_uniform_s2(static_cast<std::size_t>(config.n / 2), stream));
      base.provenance.family = "antipodal-s2";
      break;
    case Family::spherical_s2:
    case Family::lifted_spherical: base = hkpv_sample(ProjectionKernel::spherical(config.r), stream); break;
    case Family::harmonic_s2:
    case Family::lifted_harmonic: base = hkpv_sample(ProjectionKernel::harmonic(config.L), stream); break;
    case Family::diamond_s2: base = build_diamond(config.diamond_spec(), stream); break;
    case Family::lifted_diamond: base = diamond_for_lifting(build_diamond(config.diamond_spec(), stream)); break;
  }
  base.provenance.seed = config.seed;
  base.provenance.run = run;
  if (!is_lifted(config.family)) return base;
  return hopf_lift(base, LiftSpec{k}, stream);
}

double energy_of(const AnyConfiguration& cfg, unsigned workers) {
  return std::visit([&](const auto& c) { return log_energy(c, workers); }, cfg);
}

std::optional<double> closed_form(const ExperimentConfig& config) {
  config.validate();
  const int k = config.resolve_k();
  switch (config.family) {
    case Family::uniform_s2: {
      const double n = static_cast<double>(config.n);
      return n * (n - 1.0) * (0.5 - std::numbers::ln2);
    }
    case Family::uniform_s3: return expected_uniform_s3(config.n);
    case Family::antipodal_s3: return expected_uniform_s3_antipodal(config.n);
    case Family::diamond_s2: return diamond_expected_energy_s2(config.diamond_spec());
    case Family::lifted_uniform: return expected_lifted_uniform(config.n, k);
    case Family::lifted_antipodal: return expected_lifted_antipodal(config.n, k);
    case Family::lifted_spherical: return expected_lifted_spherical_closed(config.r, k);
    case Family::lifted_harmonic: return expected_lifted_dpp(harmonic_profile(config.L), k);
    case Family::lifted_diamond: return expected_lifted_diamond_semianalytic(config.diamond_spec(), k);
    case Family::spherical_s2:
    case Family::harmonic_s2: return std::nullopt;
  }
  return std::nullopt;
}

McResult mc_run(const ExperimentConfig& config, const std::atomic<bool>* stop) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  const std::size_t runs = static_cast<std::size_t>(config.runs);
  const unsigned workers = config.workers ? config.workers : worker_count();
  // Parallelize across runs when there are several; otherwise inside the
  // energy sum. The energy is bit-identical for any thread count.
  const bool across_runs = runs > 1 && workers > 1;
  std::vector<std::optional<double>> slots(runs);
  parallel_for(
      runs,
      [&](std::size_t run) {
        if (stop && stop->load()) return;
        slots[run] = energy_of(generate(config, run), across_runs ? 1u : workers);
      },
      across_runs ? workers : 1u);

  McResult out;
  for (const auto& s : slots)
    if (s) out.energies.push_back(*s);
  out.interrupted = out.energies.size() < runs;

  ResultRow& row = out.row;
  row.n = config.total_points();
  row.k = config.resolve_k();
  row.param = config.main_parameter();
  const std::size_t m = out.energies.size();
  if (m > 0) {
    double mean = 0.0;
    for (double e : out.energies) mean += e;
    mean /= static_cast<double>(m);
    double ss = 0.0;
    for (double e : out.energies) ss += (e - mean) * (e - mean);
    row.energy_mean = mean;
    row.energy_se = m > 1 ? std::sqrt(ss / static_cast<double>(m - 1)) / std::sqrt(static_cast<double>(m)) : 0.0;
  } else {
    row.energy_mean = std::numeric_limits<double>::quiet_NaN();
  }
  row.closed_form = closed_form(config);
  if (row.n >= 2) {
    const auto s = normalized_series(row.energy_mean, static_cast<double>(row.n));
    row.n1 = s.n1;
    row.n2 = s.n2;
  } else {
    row.n1 = row.n2 = std::numeric_limits<double>::quiet_NaN();
  }
  row.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

ResultRow mc_estimate(const ExperimentConfig& config) { return mc_run(config).row; }

std::vector<ResultRow> sweep_diamond_alpha(const std::vector<int>& parallels, double alpha, int runs,
                                           std::uint64_t seed, const std::atomic<bool>* stop) {
  if (!(alpha > 0.0)) throw ValidationError("sweep_diamond_alpha: alpha must be positive");
  std::vector<ResultRow> rows;
  for (int p : parallels) {
    if (stop && stop->load()) break;
    ExperimentConfig config;
    config.family = Family::lifted_diamond;
    config.parallels = p;
    config.k_rule.kind = KRule::Kind::alpha;
    config.k_rule.alpha = alpha;
    config.runs = runs;
    config.seed = seed;
    McResult res = mc_run(config, stop);
    if (res.energies.empty()) break;
    rows.push_back(res.row);
  }
  return rows;
}

std::vector<int> figure_parallels(double alpha, long n_cap) {
  std::vector<int> out;
  for (int p = 2;; p += 2) {
    ExperimentConfig c;
    c.family = Family::lifted_diamond;
    c.parallels = p;
    c.k_rule.kind = KRule::Kind::alpha;
    c.k_rule.alpha = alpha;
    if (c.total_points() > n_cap) break;
    out.push_back(p);
  }
  return out;
}

}  // namespace hopflog
