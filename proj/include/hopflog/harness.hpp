#pragma once

#include <atomic>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hopflog/diamond.hpp"
#include "hopflog/geometry.hpp"

namespace hopflog {

enum class Family {
  uniform_s2,
  uniform_s3,
  antipodal_s3,
  diamond_s2,
  spherical_s2,  // spherical-ensemble DPP on S^2
  harmonic_s2,   // harmonic-ensemble DPP on S^2
  lifted_uniform,
  lifted_antipodal,
  lifted_spherical,
  lifted_harmonic,
  lifted_diamond,
};

std::string to_string(Family family);
Family family_from_string(const std::string& name);  // throws ValidationError
bool is_lifted(Family family);

// How the number of points per fibre is chosen.
struct KRule {
  enum class Kind { explicit_k, alpha, spherical, harmonic };
  Kind kind = Kind::explicit_k;
  int k = 1;           // explicit_k
  double alpha = 1.2;  // alpha: k = max(1, round(p^alpha)) for Diamond parallels p
};

struct ExperimentConfig {
  Family family = Family::uniform_s3;
  long n = 0;          // points (uniform, antipodal) or base points (lifted uniform/antipodal)
  int r = 0;           // spherical rank
  int L = -1;          // harmonic degree
  int parallels = 0;   // Diamond p (ansatz counts)
  std::vector<int> rj; // explicit Diamond counts; overrides parallels
  KRule k_rule;
  int runs = 1;
  std::uint64_t seed = 0;
  unsigned workers = 0;  // 0: worker_count()

  void validate() const;
  int resolve_k() const;        // 1 for unlifted families
  long total_points() const;    // N of one sample
  double main_parameter() const;  // the param column: r, L, p, or the base size
  DiamondSpec diamond_spec() const;
};

using AnyConfiguration = std::variant<Configuration2, Configuration3>;

// One sample, drawn from the substream (seed, run).
AnyConfiguration generate(const ExperimentConfig& config, std::uint64_t run);
double energy_of(const AnyConfiguration& cfg, unsigned workers = 0);

// Exact or quadrature expectation, when the family has one.
std::optional<double> closed_form(const ExperimentConfig& config);

struct ResultRow {
  long n = 0;
  int k = 1;
  double param = 0.0;
  double energy_mean = 0.0;
  double energy_se = 0.0;
  std::optional<double> closed_form;
  double n1 = 0.0;
  double n2 = 0.0;
  double wall_time_s = 0.0;

  bool operator==(const ResultRow&) const = default;
};

struct McResult {
  ResultRow row;
  std::vector<double> energies;  // by run index, completed runs only
  bool interrupted = false;
};

// Mean and standard error (sample sd / sqrt(M), 0 for M = 1) over M runs.
// Runs are independent substreams reduced in run-index order, so the result
// depends only on (config, seed, M). If *stop becomes true, runs not yet
// started are skipped and the row summarizes the completed ones.
McResult mc_run(const ExperimentConfig& config, const std::atomic<bool>* stop = nullptr);
ResultRow mc_estimate(const ExperimentConfig& config);

// Lifted Diamond with ansatz counts for each p and k = max(1, round(p^alpha)).
std::vector<ResultRow> sweep_diamond_alpha(const std::vector<int>& parallels, double alpha, int runs,
                                           std::uint64_t seed, const std::atomic<bool>* stop = nullptr);

// Parallel counts for the figure series: even p from 2 while N <= n_cap.
std::vector<int> figure_parallels(double alpha = 1.2, long n_cap = 100000);

}  // namespace hopflog
