#include "meeksep/experiments.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "meeksep/algorithms.hpp"
#include "meeksep/chordal.hpp"
#include "meeksep/generators.hpp"
#include "meeksep/io.hpp"
#include "meeksep/meek.hpp"
#include "meeksep/rng.hpp"

namespace meeksep::exp {

namespace fs = std::filesystem;

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

std::uint64_t instance_seed(std::uint64_t master, int index) {
  return Rng::mix(Rng::mix(master, 1), static_cast<std::uint64_t>(index));
}

std::uint64_t method_seed(std::uint64_t inst_seed, const std::string& method) {
  return Rng::mix(Rng::mix(inst_seed, 2), fnv1a(method));
}

namespace {

const std::vector<std::string> kSubsetMethods = {"meeksep", "meeksep1", "random",
                                                 "verification-lb", "bruteforce-nu"};
const std::vector<std::string> kMatchingMethods = {"meeksep", "meeksep1", "random",
                                                   "verification-lb"};

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

}  // namespace

void RunConfig::set(const std::string& key, const std::string& value) {
  try {
    if (key == "problem") problem = value;
    else if (key == "model") model = value;
    else if (key == "n") n = std::stoi(value);
    else if (key == "r") r = std::stoi(value);
    else if (key == "density") density = std::stod(value);
    else if (key == "k") k = std::stoi(value);
    else if (key == "m_attach") m_attach = std::stoi(value);
    else if (key == "reps") reps = std::stoi(value);
    else if (key == "seed") seed = std::stoull(value);
    else if (key == "methods") methods = split_list(value);
    else if (key == "instances") instances = value;
    else if (key == "out") out = value;
    else if (key == "tol") tol = std::stod(value);
    else if (key == "std_mult") std_mult = std::stod(value);
    else if (key == "jobs") jobs = std::stoi(value);
    else if (key == "kmax") kmax = std::stoi(value);
    else if (key == "fixed_ms") fixed_ms = (value == "1" || value == "true");
    else throw InputError("unknown config key '" + key + "'");
  } catch (const InputError&) {
    throw;
  } catch (const std::invalid_argument&) {
    throw InputError("bad value for config key '" + key + "': " + value);
  } catch (const std::out_of_range&) {
    throw InputError("bad value for config key '" + key + "': " + value);
  }
}

RunConfig RunConfig::from_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path.string());
  RunConfig cfg;
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const auto a = raw.find_first_not_of(" \t\r");
    if (a == std::string::npos) continue;
    const auto b = raw.find_last_not_of(" \t\r");
    const std::string line = raw.substr(a, b - a + 1);
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError(path.string() + ":" + std::to_string(lineno) + ": expected key=value");
    try {
      cfg.set(line.substr(0, eq), line.substr(eq + 1));
    } catch (const InputError& e) {
      throw ParseError(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (cfg.model.empty()) cfg.model = cfg.problem == "matching" ? "er" : "rhop";
  if (cfg.methods.empty())
    cfg.methods = cfg.problem == "matching" ? kMatchingMethods
                                            : std::vector<std::string>{"meeksep", "meeksep1",
                                                                       "random", "verification-lb"};
  cfg.validate();
  return cfg;
}

void RunConfig::validate() const {
  if (problem != "subset" && problem != "matching")
    throw InputError("problem must be 'subset' or 'matching'");
  if (problem == "subset" && model != "rhop")
    throw InputError("subset instances use the rhop model");
  if (problem == "matching" && model != "er" && model != "ba" && model != "tree")
    throw InputError("matching instances use model er, ba or tree");
  if (reps < 1) throw InputError("reps must be >= 1");
  if (jobs < 1) throw InputError("jobs must be >= 1");
  const auto& known = problem == "matching" ? kMatchingMethods : kSubsetMethods;
  for (const auto& m : methods) {
    if (std::find(known.begin(), known.end(), m) == known.end())
      throw InputError("unknown method '" + m + "' for problem " + problem);
  }
}

double RunConfig::effective_density() const {
  if (density >= 0.0) return density;
  return problem == "matching" ? 0.2 : 0.001;
}

double RunConfig::effective_std_mult() const {
  if (std_mult >= 0.0) return std_mult;
  return problem == "matching" ? 0.2 : 0.5;
}

namespace {

std::string instance_name(const RunConfig& cfg, int i) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%s_%04d.txt", cfg.problem.c_str(), i);
  return buf;
}

Dag build_model_graph(const RunConfig& cfg, std::uint64_t seed) {
  if (cfg.model == "er") return er_dag(cfg.n, cfg.effective_density(), seed);
  if (cfg.model == "ba") return ba_dag(cfg.n, cfg.m_attach, seed);
  if (cfg.model == "tree") return tree_dag(cfg.n, seed);
  throw InputError("unknown model " + cfg.model);
}

}  // namespace

std::vector<fs::path> cmd_gen(const RunConfig& cfg) {
  const fs::path dir(cfg.instances);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir.string() + ": " + ec.message());

  std::vector<fs::path> files;
  for (int i = 0; i < cfg.reps; ++i) {
    const std::uint64_t iseed = instance_seed(cfg.seed, i);
    const fs::path file = dir / instance_name(cfg, i);
    if (cfg.problem == "subset") {
      auto inst = r_hop_instance(cfg.n, cfg.r, cfg.effective_density(), iseed);
      io::write_subset_instance(file, inst);
    } else {
      auto inst = matching_instance(build_model_graph(cfg, Rng::mix(iseed, 21)), cfg.k,
                                    Rng::mix(iseed, 22));
      inst.meta["model"] = cfg.model;
      inst.meta["instance_seed"] = std::to_string(iseed);
      io::write_matching_instance(file, inst);
    }
    files.push_back(file);
  }
  return files;
}

namespace {

struct Cell {
  std::string method;
  int instance_index = 0;
  fs::path file;
  std::uint64_t inst_seed = 0;
};

ExperimentRecord run_subset_cell(const RunConfig& cfg, const Cell& cell) {
  ExperimentRecord rec;
  rec.method = cell.method;
  rec.seed = cell.inst_seed;
  rec.n = cfg.n;
  rec.param = cfg.r;

  const auto t0 = std::chrono::steady_clock::now();
  try {
    const auto inst = io::read_subset_instance(cell.file);
    rec.n = inst.hidden.vertex_count();
    rec.param = inst.r;
    rec.lower_bound = subset_lower_bound(inst.hidden, inst.targets);
    const std::uint64_t mseed = method_seed(cell.inst_seed, cell.method);
    if (cell.method == "verification-lb") {
      rec.interventions = rec.lower_bound;
    } else if (cell.method == "bruteforce-nu") {
      rec.interventions = subset_verification_bruteforce(inst.hidden, inst.targets, cfg.kmax);
    } else {
      InterventionOracle oracle(inst.hidden);
      if (cell.method == "random") {
        random_baseline(oracle, inst.targets, mseed);
      } else {
        SubsetSearchOptions opts;
        opts.early_exit = cell.method == "meeksep1";
        subset_search(oracle, inst.targets, mseed, opts);
      }
      rec.interventions = oracle.count();
    }
  } catch (const std::exception&) {
    rec.error = true;
    rec.interventions = -1;
    rec.lower_bound = -1;
  }
  const auto t1 = std::chrono::steady_clock::now();
  rec.ms = cfg.fixed_ms ? 0.0 : std::chrono::duration<double, std::milli>(t1 - t0).count();
  return rec;
}

ExperimentRecord run_matching_cell(const RunConfig& cfg, const Cell& cell) {
  ExperimentRecord rec;
  rec.method = cell.method;
  rec.seed = cell.inst_seed;
  rec.n = cfg.n;
  rec.param = cfg.k;

  const auto t0 = std::chrono::steady_clock::now();
  try {
    const auto inst = io::read_matching_instance(cell.file);
    rec.n = inst.sem.graph().vertex_count();
    rec.param = static_cast<int>(inst.hidden_targets.size());
    rec.lower_bound = rec.param;  // |I*|: performing the solution itself
    const std::uint64_t mseed = method_seed(cell.inst_seed, cell.method);
    if (cell.method == "verification-lb") {
      rec.interventions = rec.lower_bound;
    } else {
      InterventionOracle oracle(inst.sem.graph());
      const MeanQuery observe = [&](const ShiftAssignment& a) { return mean_vector(inst.sem, a); };
      ShiftAssignment got;
      if (cell.method == "random") {
        got = random_mean_match(oracle, observe, inst.target_mean, mseed, cfg.tol);
      } else {
        MeanMatchOptions opts;
        opts.early_exit = cell.method == "meeksep1";
        opts.tol = cfg.tol;
        got = causal_mean_match(oracle, observe, inst.target_mean, mseed, opts);
      }
      // Total cost: structural queries plus performing the recovered shifts.
      rec.interventions = oracle.count() + static_cast<long long>(got.size());
      if (got.targets() != inst.hidden_targets.targets()) rec.error = true;
    }
  } catch (const std::exception&) {
    rec.error = true;
    rec.interventions = -1;
  }
  const auto t1 = std::chrono::steady_clock::now();
  rec.ms = cfg.fixed_ms ? 0.0 : std::chrono::duration<double, std::milli>(t1 - t0).count();
  return rec;
}

}  // namespace

std::vector<ExperimentRecord> cmd_run(const RunConfig& cfg) {
  const fs::path dir(cfg.instances);
  std::vector<Cell> cells;
  for (const auto& method : cfg.methods) {
    for (int i = 0; i < cfg.reps; ++i) {
      Cell c;
      c.method = method;
      c.instance_index = i;
      c.file = dir / instance_name(cfg, i);
      c.inst_seed = instance_seed(cfg.seed, i);
      if (!fs::exists(c.file)) throw IoError("missing instance file " + c.file.string());
      cells.push_back(std::move(c));
    }
  }

  std::vector<ExperimentRecord> rows(cells.size());
  const int jobs = std::max(1, cfg.jobs);
  std::size_t next = 0;
  std::mutex mu;
  auto worker = [&]() {
    for (;;) {
      std::size_t idx;
      {
        std::lock_guard<std::mutex> lock(mu);
        if (next >= cells.size()) return;
        idx = next++;
      }
      rows[idx] = cfg.problem == "subset" ? run_subset_cell(cfg, cells[idx])
                                          : run_matching_cell(cfg, cells[idx]);
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  if (!cfg.out.empty()) {
    const fs::path out_path(cfg.out);
    if (out_path.has_parent_path()) {
      std::error_code ec;
      fs::create_directories(out_path.parent_path(), ec);
    }
    std::ofstream out(out_path);
    if (!out) throw IoError("cannot write " + cfg.out);
    write_csv(out, rows);
  }
  return rows;
}

void write_csv(std::ostream& out, const std::vector<ExperimentRecord>& rows) {
  out << "method,seed,n,param,interventions,lower_bound,ms,error\n";
  for (const auto& r : rows) {
    char ms[32];
    std::snprintf(ms, sizeof(ms), "%.3f", r.ms);
    out << r.method << "," << r.seed << "," << r.n << "," << r.param << "," << r.interventions
        << "," << r.lower_bound << "," << ms << "," << (r.error ? 1 : 0) << "\n";
  }
}

std::vector<ExperimentRecord> read_csv(std::istream& in, const std::string& origin) {
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& what) -> void {
    throw ParseError(origin + ":" + std::to_string(lineno) + ": " + what);
  };
  if (!std::getline(in, line)) throw ParseError(origin + ": empty input");
  ++lineno;
  if (line.find("method,seed,n,param,interventions,lower_bound,ms,error") != 0)
    fail("unexpected CSV header");

  std::vector<ExperimentRecord> rows;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::string cur;
    for (char c : line) {
      if (c == ',') {
        f.push_back(cur);
        cur.clear();
      } else {
        cur.push_back(c);
      }
    }
    f.push_back(cur);
    if (f.size() != 8) fail("expected 8 fields, got " + std::to_string(f.size()));
    ExperimentRecord r;
    try {
      r.method = f[0];
      r.seed = std::stoull(f[1]);
      r.n = std::stoi(f[2]);
      r.param = std::stoi(f[3]);
      r.interventions = std::stoll(f[4]);
      r.lower_bound = std::stoll(f[5]);
      r.ms = std::stod(f[6]);
      r.error = f[7] == "1";
    } catch (const std::exception&) {
      fail("malformed numeric field");
    }
    rows.push_back(std::move(r));
  }
  if (rows.empty()) throw ParseError(origin + ": no data rows");
  return rows;
}

std::vector<ExperimentRecord> read_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return read_csv(in, path.string());
}

std::vector<ReportSeries> summarize(const std::vector<ExperimentRecord>& rows) {
  std::map<std::string, std::map<int, std::vector<double>>> grouped;
  for (const auto& r : rows) {
    if (r.error) continue;
    grouped[r.method][r.param].push_back(static_cast<double>(r.interventions));
  }
  std::vector<ReportSeries> out;
  for (const auto& [method, by_param] : grouped) {
    ReportSeries s;
    s.method = method;
    for (const auto& [param, xs] : by_param) {
      ReportPoint p;
      p.param = param;
      p.count = static_cast<int>(xs.size());
      double sum = 0.0;
      for (double x : xs) sum += x;
      p.mean = sum / xs.size();
      double sq = 0.0;
      for (double x : xs) sq += (x - p.mean) * (x - p.mean);
      p.stddev = xs.size() > 1 ? std::sqrt(sq / (xs.size() - 1)) : 0.0;
      s.points.push_back(p);
    }
    out.push_back(std::move(s));
  }
  return out;
}

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

}  // namespace

std::string render_svg(const std::vector<ReportSeries>& series, double std_mult,
                       const std::string& title) {
  const double w = 640, h = 420, ml = 64, mr = 150, mt = 40, mb = 48;
  double xmin = 1e300, xmax = -1e300, ymin = 0.0, ymax = -1e300;
  for (const auto& s : series) {
    for (const auto& p : s.points) {
      xmin = std::min(xmin, static_cast<double>(p.param));
      xmax = std::max(xmax, static_cast<double>(p.param));
      ymax = std::max(ymax, p.mean + std_mult * p.stddev);
    }
  }
  if (xmax < xmin) {
    xmin = 0;
    xmax = 1;
  }
  if (ymax <= ymin) ymax = ymin + 1;
  if (xmax == xmin) xmax = xmin + 1;
  ymax *= 1.05;

  auto sx = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (w - ml - mr); };
  auto sy = [&](double y) { return h - mb - (y - ymin) / (ymax - ymin) * (h - mt - mb); };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
     << "\" viewBox=\"0 0 " << w << " " << h << "\">\n";
  os << "<rect width=\"" << w << "\" height=\"" << h << "\" fill=\"white\"/>\n";
  os << "<text x=\"" << w / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" << title
     << "</text>\n";
  // axes
  os << "<line x1=\"" << ml << "\" y1=\"" << h - mb << "\" x2=\"" << w - mr << "\" y2=\""
     << h - mb << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << h - mb
     << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double y = ymin + (ymax - ymin) * i / 4.0;
    os << "<text x=\"" << ml - 8 << "\" y=\"" << sy(y) + 4
       << "\" text-anchor=\"end\" font-size=\"11\">" << std::fixed << std::setprecision(1) << y
       << "</text>\n";
    os << "<line x1=\"" << ml << "\" y1=\"" << sy(y) << "\" x2=\"" << w - mr << "\" y2=\"" << sy(y)
       << "\" stroke=\"#dddddd\"/>\n";
  }
  os.unsetf(std::ios_base::fixed);
  os << std::setprecision(6);

  int ci = 0;
  for (const auto& s : series) {
    const char* color = kPalette[ci % 6];
    std::ostringstream pts;
    for (const auto& p : s.points) pts << sx(p.param) << "," << sy(p.mean) << " ";
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\""
       << pts.str() << "\"/>\n";
    for (const auto& p : s.points) {
      const double e = std_mult * p.stddev;
      os << "<circle cx=\"" << sx(p.param) << "\" cy=\"" << sy(p.mean) << "\" r=\"3\" fill=\""
         << color << "\"/>\n";
      if (e > 0) {
        os << "<line x1=\"" << sx(p.param) << "\" y1=\"" << sy(p.mean - e) << "\" x2=\""
           << sx(p.param) << "\" y2=\"" << sy(p.mean + e) << "\" stroke=\"" << color << "\"/>\n";
        for (double yy : {p.mean - e, p.mean + e}) {
          os << "<line x1=\"" << sx(p.param) - 4 << "\" y1=\"" << sy(yy) << "\" x2=\""
             << sx(p.param) + 4 << "\" y2=\"" << sy(yy) << "\" stroke=\"" << color << "\"/>\n";
        }
      }
      os << "<text x=\"" << sx(p.param) << "\" y=\"" << h - mb + 16
         << "\" text-anchor=\"middle\" font-size=\"11\">" << p.param << "</text>\n";
    }
    os << "<rect x=\"" << w - mr + 12 << "\" y=\"" << mt + 18 * ci << "\" width=\"12\" height=\"4\" fill=\""
       << color << "\"/>\n";
    os << "<text x=\"" << w - mr + 30 << "\" y=\"" << mt + 18 * ci + 6 << "\" font-size=\"12\">"
       << s.method << "</text>\n";
    ++ci;
  }
  os << "</svg>\n";
  return os.str();
}

void cmd_report(const fs::path& csv_path, const fs::path& svg_path, double std_mult,
                std::ostream& table_out) {
  const auto rows = read_csv(csv_path);
  const auto series = summarize(rows);
  if (series.empty()) throw ParseError(csv_path.string() + ": no usable (error-free) rows");

  table_out << "method            param  count        mean      stddev\n";
  for (const auto& s : series) {
    for (const auto& p : s.points) {
      char line[128];
      std::snprintf(line, sizeof(line), "%-16s %6d %6d %11.3f %11.3f\n", s.method.c_str(), p.param,
                    p.count, p.mean, p.stddev);
      table_out << line;
    }
  }
  if (svg_path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(svg_path.parent_path(), ec);
  }
  std::ofstream svg(svg_path);
  if (!svg) throw IoError("cannot write " + svg_path.string());
  svg << render_svg(series, std_mult,
                    "mean interventions (error bars: " + io::format_double(std_mult) + " std)");
}

// ---- property suites (the `verify` CLI command) -----------------------------

namespace {

struct Suite {
  std::ostream& out;
  bool all_ok = true;

  void report(const std::string& name, bool ok, const std::string& detail = "") {
    out << (ok ? "PASS" : "FAIL") << "  " << name;
    if (!detail.empty()) out << "  (" << detail << ")";
    out << "\n";
    all_ok = all_ok && ok;
  }
};

}  // namespace

bool run_property_suites(std::uint64_t seed, bool quick, std::ostream& out) {
  Suite s{out};
  Rng rng(seed);
  const int trials = quick ? 40 : 200;

  // Orientation soundness plus chain-graph and chordality structure of every
  // revealed graph along random intervention sequences.
  {
    int bad_sound = 0, bad_chain = 0, bad_chordal = 0;
    for (int t = 0; t < trials; ++t) {
      const int n = 4 + static_cast<int>(rng.next_below(8));
      const Dag g = er_dag(n, 0.4, rng.next_u64());
      InterventionOracle oracle(g);
      for (int q = 0; q < 3; ++q) {
        const auto& rev = oracle.intervene(static_cast<int>(rng.next_below(n)));
        for (const auto& [u, v] : rev.arcs())
          if (!g.has_arc(u, v)) ++bad_sound;
        if (!is_chain_graph(rev)) ++bad_chain;
        for (const auto& comp : chain_components(rev)) {
          const auto sub = induced_subgraph(rev, comp);
          if (!is_chordal(UndirectedGraph(sub.graph.vertex_count(), sub.graph.undirected_edges())))
            ++bad_chordal;
        }
      }
    }
    s.report("revealed-graph soundness", bad_sound == 0);
    s.report("revealed graphs are chain graphs", bad_chain == 0);
    s.report("chain components are chordal", bad_chordal == 0);
  }

  // Chain components partition the vertex set.
  {
    int bad = 0;
    for (int t = 0; t < trials; ++t) {
      const int n = 3 + static_cast<int>(rng.next_below(8));
      const Pdag e = essential_graph(er_dag(n, 0.5, rng.next_u64()));
      std::vector<int> seen(n, 0);
      for (const auto& comp : chain_components(e))
        for (int v : comp) ++seen[v];
      for (int v = 0; v < n; ++v)
        if (seen[v] != 1) ++bad;
    }
    s.report("chain components partition V", bad == 0);
  }

  // Separator guarantee: separator size <= 2 and halved components.
  {
    int bad = 0, runs = 0;
    for (int t = 0; t < (quick ? 20 : 100); ++t) {
      const int n = 8;
      const auto inst = r_hop_instance(n, 2, 0.25, rng.next_u64());
      InterventionOracle oracle(inst.hidden);
      const auto comps = chain_components(oracle.revealed());
      const auto& comp = comps.front();
      if (comp.size() < 2) continue;
      ++runs;
      const auto res = meek_separator(oracle, comp, rng.next_u64());
      if (res.separator.size() > 2) ++bad;
      InterventionSet sep;
      for (int v : res.separator) sep.add_atomic(v);
      const auto sub = induced_subgraph(inst.hidden, comp);
      InterventionSet local_sep;
      for (int v : res.separator) {
        const auto it = std::lower_bound(sub.original_ids.begin(), sub.original_ids.end(), v);
        local_sep.add_atomic(static_cast<int>(it - sub.original_ids.begin()));
      }
      const Pdag closed = interventional_essential_graph(sub.graph, local_sep);
      for (const auto& c : chain_components(closed))
        if (2 * c.size() > comp.size() + 1) ++bad;  // ceil(n/2)
    }
    s.report("meek separator halves components", bad == 0,
             std::to_string(runs) + " searches checked");
  }

  // Subset search orients all targets and dominates the lower bound.
  {
    int bad = 0;
    for (int t = 0; t < (quick ? 10 : 40); ++t) {
      const auto inst = r_hop_instance(9, 2, 0.2, rng.next_u64());
      InterventionOracle oracle(inst.hidden);
      subset_search(oracle, inst.targets, rng.next_u64());
      for (const auto& [u, v] : inst.targets.pairs())
        if (oracle.revealed().has_undirected(u, v)) ++bad;
      if (oracle.count() < subset_lower_bound(inst.hidden, inst.targets)) ++bad;
    }
    s.report("subset search orients targets above lower bound", bad == 0);
  }

  // Mean matching recovers the hidden assignment exactly.
  {
    int bad = 0;
    for (int t = 0; t < (quick ? 5 : 20); ++t) {
      const auto inst = matching_instance(er_dag(12, 0.3, rng.next_u64()), 3, rng.next_u64());
      InterventionOracle oracle(inst.sem.graph());
      const MeanQuery observe = [&](const ShiftAssignment& a) { return mean_vector(inst.sem, a); };
      const auto got = causal_mean_match(oracle, observe, inst.target_mean, rng.next_u64());
      if (got.targets() != inst.hidden_targets.targets()) ++bad;
      for (const auto& [v, a] : got.entries())
        if (std::abs(a - inst.hidden_targets.value_or(v, 0.0)) > 1e-9) ++bad;
    }
    s.report("mean matching exact recovery", bad == 0);
  }

  return s.all_ok;
}

}  // namespace meeksep::exp
