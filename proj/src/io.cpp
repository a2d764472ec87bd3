#include "meeksep/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace meeksep::io {

namespace {

struct LineReader {
  std::istream& in;
  std::string origin;
  int lineno = 0;

  // Next meaningful line; '#' comments and blank lines are skipped.
  bool next(std::string& out) {
    std::string raw;
    while (std::getline(in, raw)) {
      ++lineno;
      const auto hash = raw.find('#');
      if (hash != std::string::npos) raw.erase(hash);
      std::size_t a = raw.find_first_not_of(" \t\r");
      if (a == std::string::npos) continue;
      std::size_t b = raw.find_last_not_of(" \t\r");
      out = raw.substr(a, b - a + 1);
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(origin + ":" + std::to_string(lineno) + ": " + what);
  }

  std::string expect(const std::string& what) {
    std::string line;
    if (!next(line)) fail("unexpected end of input, expected " + what);
    return line;
  }
};

struct ParsedGraph {
  int n = 0;
  std::vector<std::pair<int, int>> arcs;
  std::vector<std::pair<int, int>> undirected;
  std::vector<double> weights;  // aligned with arcs when weighted
  bool weighted = false;
};

ParsedGraph parse_graph(LineReader& r, bool allow_weights) {
  ParsedGraph g;
  {
    std::istringstream head(r.expect("header 'n m d'"));
    int m = 0, d = 0;
    if (!(head >> g.n >> m >> d) || g.n < 0 || m < 0 || d < 0) r.fail("bad header, expected 'n m d'");
    g.arcs.reserve(m);
    g.undirected.reserve(d);
    for (int i = 0; i < m + d; ++i) {
      std::istringstream ls(r.expect("edge line"));
      int u, v;
      char kind;
      if (!(ls >> u >> v >> kind)) r.fail("bad edge line, expected 'u v D|U [w]'");
      if (kind == 'D') {
        g.arcs.emplace_back(u, v);
        double w;
        if (ls >> w) {
          if (!allow_weights) r.fail("unexpected weight column");
          g.weighted = true;
          g.weights.push_back(w);
        } else if (g.weighted) {
          r.fail("missing weight column");
        }
      } else if (kind == 'U') {
        g.undirected.emplace_back(u, v);
      } else {
        r.fail(std::string("unknown edge kind '") + kind + "'");
      }
    }
    if (g.weighted && g.weights.size() != g.arcs.size()) r.fail("mixed weighted and unweighted arcs");
  }
  return g;
}

void write_graph(std::ostream& out, int n, const std::vector<std::pair<int, int>>& arcs,
                 const std::vector<std::pair<int, int>>& und) {
  out << n << " " << arcs.size() << " " << und.size() << "\n";
  for (const auto& [u, v] : arcs) out << u << " " << v << " D\n";
  for (const auto& [u, v] : und) out << u << " " << v << " U\n";
}

std::map<std::string, std::string> parse_meta(LineReader& r, std::string first_line) {
  std::map<std::string, std::string> meta;
  std::string line = std::move(first_line);
  do {
    if (line.rfind("meta ", 0) != 0) r.fail("expected 'meta key=value'");
    const std::string kv = line.substr(5);
    const auto eq = kv.find('=');
    if (eq == std::string::npos) r.fail("expected 'meta key=value'");
    meta[kv.substr(0, eq)] = kv.substr(eq + 1);
  } while (r.next(line));
  return meta;
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  // Trim to the shortest representation that still round-trips.
  for (int prec = 1; prec < 17; ++prec) {
    char sh[64];
    std::snprintf(sh, sizeof(sh), "%.*g", prec, x);
    double back = 0.0;
    std::sscanf(sh, "%lf", &back);
    if (back == x) return sh;
  }
  return buf;
}

Pdag read_pdag(std::istream& in, const std::string& origin) {
  LineReader r{in, origin};
  const auto g = parse_graph(r, false);
  try {
    return Pdag(g.n, g.arcs, g.undirected);
  } catch (const std::exception& e) {
    r.fail(e.what());
  }
}

Pdag read_pdag(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return read_pdag(in, path.string());
}

void write_pdag(std::ostream& out, const Pdag& g) {
  write_graph(out, g.vertex_count(), g.arcs(), g.undirected_edges());
}

void write_pdag(const std::filesystem::path& path, const Pdag& g) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  write_pdag(out, g);
}

Dag read_dag(std::istream& in, const std::string& origin) {
  LineReader r{in, origin};
  const auto g = parse_graph(r, false);
  if (!g.undirected.empty()) r.fail("expected a fully oriented graph (d == 0)");
  try {
    return Dag(g.n, g.arcs);
  } catch (const std::exception& e) {
    r.fail(e.what());
  }
}

Dag read_dag(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return read_dag(in, path.string());
}

void write_dag(std::ostream& out, const Dag& g) {
  write_graph(out, g.vertex_count(), g.arcs(), {});
}

void write_dag(const std::filesystem::path& path, const Dag& g) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  write_dag(out, g);
}

void write_subset_instance(std::ostream& out, const SubsetInstance& inst) {
  write_dag(out, inst.hidden);
  out << "targets " << inst.targets.size() << "\n";
  for (const auto& [u, v] : inst.targets.pairs()) out << u << " " << v << "\n";
  for (const auto& [k, v] : inst.meta) out << "meta " << k << "=" << v << "\n";
}

void write_subset_instance(const std::filesystem::path& path, const SubsetInstance& inst) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  write_subset_instance(out, inst);
}

SubsetInstance read_subset_instance(std::istream& in, const std::string& origin) {
  LineReader r{in, origin};
  const auto g = parse_graph(r, false);
  if (!g.undirected.empty()) r.fail("subset instance requires a fully oriented hidden graph");

  SubsetInstance inst;
  try {
    inst.hidden = Dag(g.n, g.arcs);
  } catch (const std::exception& e) {
    r.fail(e.what());
  }

  std::string line = r.expect("'targets <t>'");
  int t = 0;
  {
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word >> t) || word != "targets" || t < 0) r.fail("expected 'targets <t>'");
  }
  for (int i = 0; i < t; ++i) {
    std::istringstream ls(r.expect("target edge line"));
    int u, v;
    if (!(ls >> u >> v)) r.fail("bad target edge line");
    try {
      inst.targets.insert(u, v);
    } catch (const std::exception& e) {
      r.fail(e.what());
    }
  }
  if (r.next(line)) inst.meta = parse_meta(r, line);

  auto geti = [&](const char* key, int fallback) {
    auto it = inst.meta.find(key);
    return it == inst.meta.end() ? fallback : std::stoi(it->second);
  };
  inst.n = g.n;
  inst.r = geti("r", 0);
  inst.hop_center = geti("center", -1);
  if (auto it = inst.meta.find("density"); it != inst.meta.end()) inst.density = std::stod(it->second);
  if (auto it = inst.meta.find("seed"); it != inst.meta.end()) inst.seed = std::stoull(it->second);
  return inst;
}

SubsetInstance read_subset_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return read_subset_instance(in, path.string());
}

void write_matching_instance(std::ostream& out, const MatchingInstance& inst) {
  const Dag& g = inst.sem.graph();
  const auto arcs = g.arcs();
  out << g.vertex_count() << " " << arcs.size() << " 0\n";
  for (const auto& [u, v] : arcs)
    out << u << " " << v << " D " << format_double(inst.sem.weight(u, v)) << "\n";
  out << "intercepts";
  for (double c : inst.sem.intercepts()) out << " " << format_double(c);
  out << "\n";
  out << "shifts " << inst.hidden_targets.size() << "\n";
  for (const auto& [v, a] : inst.hidden_targets.entries())
    out << v << " " << format_double(a) << "\n";
  for (const auto& [k, v] : inst.meta) out << "meta " << k << "=" << v << "\n";
}

void write_matching_instance(const std::filesystem::path& path, const MatchingInstance& inst) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  write_matching_instance(out, inst);
}

MatchingInstance read_matching_instance(std::istream& in, const std::string& origin) {
  LineReader r{in, origin};
  const auto g = parse_graph(r, true);
  if (!g.undirected.empty()) r.fail("matching instance requires a fully oriented graph");
  if (!g.weighted && !g.arcs.empty()) r.fail("matching instance requires arc weights");

  std::vector<double> intercepts;
  {
    std::istringstream ls(r.expect("'intercepts ...'"));
    std::string word;
    if (!(ls >> word) || word != "intercepts") r.fail("expected 'intercepts c0 ... c_{n-1}'");
    double c;
    while (ls >> c) intercepts.push_back(c);
    if (static_cast<int>(intercepts.size()) != g.n) r.fail("intercept count mismatch");
  }

  MatchingInstance inst;
  try {
    std::vector<std::tuple<int, int, double>> weights;
    for (std::size_t i = 0; i < g.arcs.size(); ++i)
      weights.emplace_back(g.arcs[i].first, g.arcs[i].second, g.weights[i]);
    inst.sem = ShiftSem(Dag(g.n, g.arcs), weights, intercepts);
  } catch (const std::exception& e) {
    r.fail(e.what());
  }

  std::string line = r.expect("'shifts <k>'");
  int k = 0;
  {
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word >> k) || word != "shifts" || k < 0) r.fail("expected 'shifts <k>'");
  }
  for (int i = 0; i < k; ++i) {
    std::istringstream ls(r.expect("shift line"));
    int v;
    double a;
    if (!(ls >> v >> a)) r.fail("bad shift line, expected 'v a'");
    try {
      inst.hidden_targets.set(v, a);
    } catch (const std::exception& e) {
      r.fail(e.what());
    }
  }
  if (r.next(line)) inst.meta = parse_meta(r, line);
  if (auto it = inst.meta.find("seed"); it != inst.meta.end()) inst.seed = std::stoull(it->second);

  inst.target_mean = mean_vector(inst.sem, inst.hidden_targets);
  return inst;
}

MatchingInstance read_matching_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return read_matching_instance(in, path.string());
}

void write_shift_assignment(std::ostream& out, const ShiftAssignment& a) {
  for (const auto& [v, x] : a.entries()) out << v << " " << format_double(x) << "\n";
}

void write_shift_assignment(const std::filesystem::path& path, const ShiftAssignment& a) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  write_shift_assignment(out, a);
}

ShiftAssignment read_shift_assignment(std::istream& in, const std::string& origin) {
  LineReader r{in, origin};
  ShiftAssignment a;
  std::string line;
  while (r.next(line)) {
    std::istringstream ls(line);
    int v;
    double x;
    if (!(ls >> v >> x)) r.fail("bad shift line, expected 'v a'");
    try {
      a.set(v, x);
    } catch (const std::exception& e) {
      r.fail(e.what());
    }
  }
  return a;
}

ShiftAssignment read_shift_assignment(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return read_shift_assignment(in, path.string());
}

}  // namespace meeksep::io
