#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "meeksep/errors.hpp"

namespace meeksep::exp {

/// One benchmark cell: a method run on one instance.
struct ExperimentRecord {
  std::string method;
  std::uint64_t seed = 0;    // instance seed
  int n = 0;
  int param = 0;             // r for subset, |I*| for matching
  long long interventions = 0;
  long long lower_bound = 0;
  double ms = 0.0;
  bool error = false;
};

/// Benchmark configuration, read from a key=value file. Unknown keys are
/// rejected with a line number.
struct RunConfig {
  std::string problem = "subset";  // subset | matching
  std::string model;               // rhop (subset); er | ba | tree (matching)
  int n = 100;
  int r = 3;
  double density = -1.0;           // defaults per model when negative
  int k = 10;                      // |I*| for matching
  int m_attach = 2;
  int reps = 20;
  std::uint64_t seed = 1;
  std::vector<std::string> methods;
  std::string instances = "instances";
  std::string out;                 // gen: dir, run: csv, report: svg
  double tol = 1e-9;
  double std_mult = -1.0;          // default 0.5 subset / 0.2 matching
  int jobs = 1;
  int kmax = 12;
  bool fixed_ms = false;           // write ms=0 for byte-reproducible CSVs

  static RunConfig from_file(const std::filesystem::path& path);
  void set(const std::string& key, const std::string& value);  // throws InputError
  void validate() const;
  double effective_density() const;
  double effective_std_mult() const;
};

/// Per-instance and per-cell seed derivation (documented in the README):
/// instance i       -> mix(mix(master, 1), i)
/// method m, inst i -> mix(mix(instance_seed_i, 2), fnv1a(m))
std::uint64_t instance_seed(std::uint64_t master, int index);
std::uint64_t method_seed(std::uint64_t inst_seed, const std::string& method);
std::uint64_t fnv1a(const std::string& s);

/// Writes `reps` serialized instances into the instances directory.
/// Idempotent per seed: regenerating produces byte-identical files.
std::vector<std::filesystem::path> cmd_gen(const RunConfig& cfg);

/// Runs every configured method on every instance and writes the CSV.
/// Columns: method,seed,n,param,interventions,lower_bound,ms,error.
/// A method failure becomes a row with error=1; the run continues.
std::vector<ExperimentRecord> cmd_run(const RunConfig& cfg);

void write_csv(std::ostream& out, const std::vector<ExperimentRecord>& rows);
std::vector<ExperimentRecord> read_csv(std::istream& in, const std::string& origin);
std::vector<ExperimentRecord> read_csv(const std::filesystem::path& path);

struct ReportPoint {
  int param = 0;
  int count = 0;
  double mean = 0.0;
  double stddev = 0.0;
};
struct ReportSeries {
  std::string method;
  std::vector<ReportPoint> points;  // by ascending param
};

/// Per-method mean and standard deviation per parameter value.
std::vector<ReportSeries> summarize(const std::vector<ExperimentRecord>& rows);

/// Text table plus an SVG line chart with error bars at std_mult * stddev.
void cmd_report(const std::filesystem::path& csv_path, const std::filesystem::path& svg_path,
                double std_mult, std::ostream& table_out);

std::string render_svg(const std::vector<ReportSeries>& series, double std_mult,
                       const std::string& title);

/// Property suites behind the `verify` CLI command. Prints one line per
/// suite; returns true when all pass. `quick` shrinks the sample sizes.
bool run_property_suites(std::uint64_t seed, bool quick, std::ostream& out);

}  // namespace meeksep::exp
