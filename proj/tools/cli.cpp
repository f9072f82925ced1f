#include "cli.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "souvlaki/assembly.hpp"
#include "souvlaki/census.hpp"
#include "souvlaki/diagnostics.hpp"
#include "souvlaki/electrical.hpp"
#include "souvlaki/errors.hpp"
#include "souvlaki/flow.hpp"
#include "souvlaki/topology.hpp"
#include "souvlaki/walk.hpp"

#ifndef SOUVLAKI_VERSION
#define SOUVLAKI_VERSION "0.0.0"
#endif

namespace souvlaki::cli {

namespace {

struct UsageError : Error {
  using Error::Error;
};

struct RunConfig {
  std::string command;
  int k = 0;
  int n = 0;
  int K = 0;
  int d = 7;
  int r = 1;
  std::uint64_t seed = 0;
  double tol = 1e-10;
  double budget = 0;
  std::string out;
  std::string format = "csv";
  std::string glue = "tower";
  std::string mode;
  std::string emit;
  std::string exporter;
  std::string strategy;
  std::string law = "census";
  long runs = 10000;
  long horizon = 100000;
  long samples = 2000;
  int n2 = 0;
  int functions = 50;
  long quadruples = 100000;
  int starts = 3;

  bool has_k = false, has_n = false, has_K = false, has_seed = false;

  std::string describe() const {
    std::ostringstream s;
    s << "command=" << command << " k=" << (has_k ? std::to_string(k) : "-")
      << " n=" << (has_n ? std::to_string(n) : "-") << " K=" << (has_K ? std::to_string(K) : "-") << " d=" << d
      << " r=" << r << " seed=" << (has_seed ? std::to_string(seed) : "-") << " tol=" << format_real(tol)
      << " budget=" << format_real(budget) << " format=" << format << " glue=" << glue << " mode=" << mode
      << " emit=" << emit << " export=" << exporter << " strategy=" << strategy << " law=" << law << " runs=" << runs
      << " horizon=" << horizon << " samples=" << samples << " n2=" << n2 << " functions=" << functions
      << " quadruples=" << quadruples << " starts=" << starts;
    return s.str();
  }
};

/// Comment lines for csv and edge lists; a leading object line for jsonl.
std::string provenance(const RunConfig& c, const std::string& instance = {}) {
  if (c.format == "jsonl") {
    nlohmann::ordered_json meta{{"version", SOUVLAKI_VERSION}, {"config", c.describe()}};
    if (!instance.empty()) meta["instance"] = instance;
    return nlohmann::ordered_json{{"provenance", meta}}.dump() + "\n";
  }
  return "# souvlaki " SOUVLAKI_VERSION "\n# config: " + c.describe() + "\n";
}

/// Column-typed rows rendered as CSV or JSON lines.
class Table {
 public:
  enum class Kind { Integer, Real, Text };

  explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  Table& row() {
    rows_.emplace_back();
    return *this;
  }
  Table& text(std::string v) { return push(std::move(v), Kind::Text); }
  Table& integer(long long v) { return push(std::to_string(v), Kind::Integer); }
  Table& integer(const BigInt& v) { return push(v.str(), Kind::Integer); }
  Table& rational(const Rational& v) { return push(to_fraction(v), Kind::Text); }
  Table& real(double v) { return push(format_real(v), Kind::Real); }

  std::string render(const std::string& format) const {
    std::string out;
    if (format == "csv") {
      out += join(columns_) + "\n";
      for (const auto& r : rows_) {
        std::vector<std::string> cells;
        for (const auto& [v, kind] : r) cells.push_back(v);
        out += join(cells) + "\n";
      }
    } else if (format == "jsonl") {
      for (const auto& r : rows_) {
        nlohmann::ordered_json j;
        for (std::size_t i = 0; i < r.size(); ++i) {
          const auto& [v, kind] = r[i];
          // Integers that may exceed 64 bits and reals stay textual to keep them lossless.
          if (kind == Kind::Integer && v.size() < 18) {
            j[columns_[i]] = std::stoll(v);
          } else {
            j[columns_[i]] = v;
          }
        }
        out += j.dump() + "\n";
      }
    } else {
      throw UsageError("format must be csv or jsonl for this command, got '" + format + "'");
    }
    return out;
  }

 private:
  Table& push(std::string v, Kind kind) {
    rows_.back().emplace_back(std::move(v), kind);
    return *this;
  }
  static std::string join(const std::vector<std::string>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i];
    return s;
  }

  std::vector<std::string> columns_;
  std::vector<std::vector<std::pair<std::string, Kind>>> rows_;
};

Budget budget_of(const RunConfig& c) { return c.budget > 0 ? Budget(c.budget) : Budget::from_env(); }

void require(bool ok, const std::string& message) {
  if (!ok) throw UsageError(message);
}

void require_seed(const RunConfig& c) { require(c.has_seed, c.command + " is stochastic and needs --seed"); }

GlueMode glue_of(const RunConfig& c) { return parse_glue_mode(c.glue); }

assembly::Assembled instance_of(const RunConfig& c) {
  require(c.has_n != c.has_K, c.command + " needs exactly one of --n (tree) or --K (spine)");
  return c.has_n ? assembly::assemble_Tn(c.n, c.d, glue_of(c), budget_of(c))
                 : assembly::spine_truncation(c.K, c.d, glue_of(c), budget_of(c));
}

std::string cmd_build(const RunConfig& c) {
  const assembly::Assembled a = instance_of(c);
  if (!c.exporter.empty()) {
    require(c.exporter == "edges", "--export must be 'edges'");
    const std::string body = assembly::export_edges(a.graph, a.souvlaki->header());
    const std::size_t eol = body.find('\n');
    return body.substr(0, eol + 1) + provenance(c) + body.substr(eol + 1);
  }
  Table t({"instance", "vertices", "edges", "components", "max_degree", "spine_vertices"});
  t.row()
      .text(a.souvlaki->header().substr(2))
      .integer(static_cast<long long>(a.graph.num_vertices()))
      .integer(static_cast<long long>(a.graph.num_edges()))
      .integer(a.components)
      .integer(a.graph.max_degree())
      .integer(static_cast<long long>(a.spine_vertices().size()));
  return provenance(c) + t.render(c.format);
}

std::string cmd_export(const RunConfig& c) {
  Graph g;
  std::string header;
  if (c.has_k) {
    require(!c.has_n && !c.has_K, "export takes one of --k (meatball), --n (tree) or --K (spine)");
    g = topology::materialize_meatball({c.k, c.d}, topology::Part::Full, budget_of(c));
    header = "# souvlaki v1 M k=" + std::to_string(c.k);
  } else {
    const assembly::Assembled a = instance_of(c);
    g = a.graph;
    header = a.souvlaki->header();
  }
  if (c.format == "edges") {
    const std::string body = assembly::export_edges(g, header);
    const std::size_t eol = body.find('\n');
    return body.substr(0, eol + 1) + provenance(c) + body.substr(eol + 1);
  }
  Table t({"u", "v"});
  std::vector<std::pair<std::string, std::string>> edges;
  for (const auto& [u, v] : g.edge_list()) {
    std::string a = g.name(u);
    std::string b = g.name(v);
    if (b < a) std::swap(a, b);
    edges.emplace_back(a, b);
  }
  std::sort(edges.begin(), edges.end());
  for (const auto& [a, b] : edges) t.row().text(a).text(b);
  if (c.format == "jsonl") return provenance(c, header.substr(2)) + t.render(c.format);
  return header + "\n" + provenance(c) + t.render(c.format);
}

/// Outward rounding onto the grid 1/10^digits, so the printed interval still contains the exact one.
std::pair<Rational, Rational> widen(const census::Interval& in, int digits) {
  const BigInt scale = ipow(10, static_cast<unsigned>(digits));
  auto floor_div = [](const BigInt& a, const BigInt& b) {
    BigInt q = a / b;
    if (a % b != 0 && a < 0) --q;
    return q;
  };
  const Rational lo_scaled = in.lo * scale;
  const Rational hi_scaled = in.hi * scale;
  const BigInt lo = floor_div(numerator(lo_scaled), denominator(lo_scaled));
  BigInt hi = floor_div(numerator(hi_scaled), denominator(hi_scaled));
  if (Rational(hi) != hi_scaled) ++hi;
  return {Rational(lo, scale), Rational(hi, scale)};
}

std::string cmd_census(const RunConfig& c) {
  require(c.has_n, "census needs --n");
  const Rational tol(c.tol);
  const int digits = static_cast<int>(std::ceil(-std::log10(c.tol))) + 3;
  Table t({"k", "v_k", "u_k", "p_kn", "p_k_lo", "p_k_hi"});
  for (const auto& row : census::census_table(c.n, c.d, tol, glue_of(c))) {
    t.row().integer(row.k).integer(row.v).integer(row.u).rational(row.p_kn);
    const auto [lo, hi] = widen(row.p_k, digits);
    t.rational(lo).rational(hi);
  }
  return provenance(c) + t.render(c.format);
}

std::string cmd_flow(const RunConfig& c) {
  require(c.has_k, "flow needs --k");
  const std::string mode = c.mode.empty() ? "analytic" : c.mode;
  const std::string emit = c.emit.empty() ? "csv" : c.emit;
  require(mode == "exact" || mode == "analytic", "--mode must be exact or analytic");
  if (emit == "edges") {
    const flow::MeatballFlow f = flow::build_flow_gk(c.k, budget_of(c));
    std::vector<std::string> lines;
    for (const auto& e : f.flow.entries()) {
      std::string a = f.graph.name(e.from);
      std::string b = f.graph.name(e.to);
      Rational v = f.flow.value(e.from, e.to);
      if (b < a) {
        std::swap(a, b);
        v = -v;
      }
      lines.push_back(a + " " + b + " " + to_fraction(v));
    }
    std::sort(lines.begin(), lines.end());
    std::string out = provenance(c);
    for (const auto& l : lines) out += l + "\n";
    return out;
  }
  require(emit == "csv", "--emit must be csv or edges");
  flow::EnergyReport e;
  if (mode == "analytic") {
    e = flow::energy_analytic(c.k);
  } else {
    const flow::MeatballFlow f = flow::build_flow_gk(c.k, budget_of(c));
    e = flow::energy_exact(f.flow, f.graph, c.k);
  }
  Table t({"k", "E_ascent", "E_horiz", "E_descent", "E_redistribute", "E_total", "k2E"});
  t.row()
      .integer(c.k)
      .rational(e.ascent)
      .rational(e.horizontal)
      .rational(e.descent)
      .rational(e.redistribution)
      .rational(e.total)
      .rational(e.k2_total);
  return provenance(c) + t.render(c.format);
}

electrical::SolverOptions solver_of(const RunConfig& c) { return electrical::SolverOptions{c.tol, 0}; }

std::string cmd_resist(const RunConfig& c) {
  require(c.has_K, "resist needs --K");
  const assembly::Assembled spine = assembly::spine_truncation(c.K, c.d, glue_of(c), budget_of(c));
  if (!c.strategy.empty()) {
    const auto strategy = electrical::parse_tree_strategy(c.strategy);
    if (strategy == electrical::TreeStrategy::Random) require_seed(c);
    const auto contrast = electrical::subtree_resistance_contrast(spine, strategy, c.seed, solver_of(c));
    Table t({"K", "strategy", "R_tree", "R_graph", "ratio", "residual", "iters"});
    t.row()
        .integer(c.K)
        .text(electrical::to_string(strategy))
        .real(contrast.tree)
        .real(contrast.graph)
        .real(contrast.tree / contrast.graph)
        .real(contrast.graph_solve.residual)
        .integer(contrast.graph_solve.iterations);
    return provenance(c) + t.render(c.format);
  }
  // k = 0 is R(source, wired frontier); k >= 1 are the contracted junction resistances.
  Table t({"K", "k", "R", "residual", "iters"});
  const VertexId s = spine.source();
  const auto frontier = spine.frontier();
  const auto whole = electrical::effective_resistance(spine.graph, std::span(&s, 1), frontier, solver_of(c));
  t.row().integer(c.K).integer(0).real(whole.value).real(whole.residual).integer(whole.iterations);
  for (const auto& row : electrical::junction_resistance_profile(spine, solver_of(c))) {
    t.row().integer(c.K).integer(row.k).real(row.resistance.value).real(row.resistance.residual)
        .integer(row.resistance.iterations);
  }
  return provenance(c) + t.render(c.format);
}

std::string cmd_walk(const RunConfig& c) {
  const std::string emit = c.emit.empty() ? "stats" : c.emit;
  if (emit == "symmetry") {
    require(c.has_k, "walk --emit symmetry needs --k");
    const auto r = walk::radial_symmetry_check(c.k, solver_of(c));
    const auto broken = walk::radial_symmetry_check(c.k, solver_of(c), walk::row1_edge(c.k));
    Table t({"k", "instance", "max_deviation", "starts", "generators", "max_residual"});
    t.row().integer(c.k).text("intact").real(r.max_deviation).integer(r.starts).integer(r.generators)
        .real(r.max_residual);
    t.row().integer(c.k).text("edge_removed").real(broken.max_deviation).integer(broken.starts)
        .integer(broken.generators).real(broken.max_residual);
    return provenance(c) + t.render(c.format);
  }
  if (emit == "escape") {
    require(c.has_K, "walk --emit escape needs --K");
    const auto spine = assembly::spine_truncation(c.K, c.d, glue_of(c), budget_of(c));
    const auto e = walk::escape_probability(spine, solver_of(c));
    Table t({"K", "escape", "via_resistance", "source_degree", "R", "residual"});
    t.row().integer(c.K).real(e.probability).real(e.via_resistance).integer(e.source_degree)
        .real(e.resistance.value).real(std::max(e.harmonic.residual, e.resistance.residual));
    return provenance(c) + t.render(c.format);
  }
  if (emit == "distribution") {
    require(c.has_k, "walk --emit distribution needs --k");
    const topology::MeatballSpec spec{c.k, c.d};
    const Graph g = topology::materialize_meatball(spec, topology::Part::Full, budget_of(c));
    const topology::MeatballIndex index(spec, topology::Part::Full);
    std::vector<VertexId> top;
    for (std::size_t v = 0; v < g.num_vertices(); ++v) {
      if (index.unrank(static_cast<std::int64_t>(v)).row() == c.k) top.push_back(static_cast<VertexId>(v));
    }
    std::string out = provenance(c);
    for (std::int64_t p = 0; p < index.width(0); ++p) {
      const auto start = static_cast<VertexId>(index.rank(0, 0, p));
      const auto nu = walk::exact_hitting_distribution(g, start, top, solver_of(c));
      nlohmann::ordered_json j;
      j["start"] = g.name(start);
      j["residual"] = format_real(nu.residual);
      j["total"] = format_real(nu.total());
      nlohmann::ordered_json probs = nlohmann::ordered_json::object();
      for (std::size_t i = 0; i < nu.absorbing.size(); ++i) probs[g.name(nu.absorbing[i])] = format_real(nu.probability[i]);
      j["probability"] = probs;
      out += j.dump() + "\n";
    }
    return out;
  }
  require(emit == "stats", "--emit must be stats, distribution, symmetry or escape");
  require_seed(c);
  require(c.has_n, "walk needs --n (tree instance)");
  require(c.starts >= 1, "--starts must be positive");
  const assembly::Assembled tree = assembly::assemble_Tn(c.n, c.d, glue_of(c), budget_of(c));
  const auto starts = walk::bush_starts(tree.graph, c.starts, c.seed);
  require(!starts.empty(), "instance has no bush vertices");
  Table t({"start", "runs", "hits", "frequency", "q50", "q90", "q99", "max"});
  for (std::size_t i = 0; i < starts.size(); ++i) {
    const auto s = walk::simulate_spine_hitting(tree.graph, starts[i], c.runs, c.horizon, c.seed + i);
    t.row().text(tree.graph.name(starts[i])).integer(s.runs).integer(s.hits).real(s.frequency());
    for (std::size_t q = 0; q < 4; ++q) t.integer(q < s.quantiles.size() ? s.quantiles[q].second : -1);
  }
  return provenance(c) + t.render(c.format);
}

std::string cmd_mtp(const RunConfig& c) {
  require(c.has_n, "mtp needs --n");
  require_seed(c);
  const assembly::Assembled tree = assembly::assemble_Tn(c.n, c.d, glue_of(c), budget_of(c));
  diagnostics::RootLaw law;
  if (c.law == "census") {
    law = diagnostics::census_root_law(tree);
  } else if (c.law == "degree") {
    law = diagnostics::degree_biased_law(tree.graph);
  } else {
    throw UsageError("--law must be census or degree");
  }
  Table t({"function", "lhs", "rhs", "equal"});
  auto add = [&](const diagnostics::TransportFunction& f) {
    const auto r = diagnostics::mtp_check(tree.graph, law, f);
    t.row().text(r.function).rational(r.lhs).rational(r.rhs).integer(r.lhs == r.rhs ? 1 : 0);
  };
  add(diagnostics::TransportFunction::adjacency());
  add(diagnostics::TransportFunction::uphill());
  for (int i = 0; i < c.functions; ++i) {
    add(diagnostics::TransportFunction::random(1 + i % std::max(1, c.r), c.seed + static_cast<std::uint64_t>(i)));
  }
  return provenance(c) + t.render(c.format);
}

std::string cmd_lwc(const RunConfig& c) {
  require(c.has_n, "lwc needs --n (first level)");
  require_seed(c);
  const int n2 = c.n2 > 0 ? c.n2 : c.n + 1;
  const auto r = diagnostics::lwc_diagnostic(c.r, c.d, c.n, n2, c.samples, c.seed, budget_of(c));
  Table t({"pair", "tv", "radius", "types_a", "types_b", "max_root_degree", "hashed_types", "hash_collisions"});
  const auto add = [&](const std::string& pair, const diagnostics::TvEstimate& tv, std::size_t a, std::size_t b) {
    t.row().text(pair).real(tv.value).real(tv.radius).integer(static_cast<long long>(a))
        .integer(static_cast<long long>(b)).integer(r.max_root_degree).integer(r.hashed_types)
        .integer(r.hash_collisions);
  };
  const std::string a = "n" + std::to_string(c.n);
  const std::string b = "n" + std::to_string(n2);
  add(a + "-" + b, r.n1_n2, r.types_n1.size(), r.types_n2.size());
  add(a + "-limit", r.n1_limit, r.types_n1.size(), r.types_limit.size());
  add(b + "-limit", r.n2_limit, r.types_n2.size(), r.types_limit.size());
  return provenance(c) + t.render(c.format);
}

std::string cmd_delta(const RunConfig& c) {
  const std::string mode = c.mode.empty() ? "exact" : c.mode;
  const auto dm = diagnostics::parse_delta_mode(mode);
  if (dm == diagnostics::DeltaMode::Sampled) require_seed(c);
  Graph g;
  std::string instance;
  if (c.has_k) {
    g = topology::materialize_meatball({c.k, c.d}, topology::Part::Full, budget_of(c));
    instance = "M" + std::to_string(c.k);
  } else {
    const auto a = instance_of(c);
    g = a.graph;
    instance = a.souvlaki->header().substr(2);
  }
  if (!c.strategy.empty()) {
    const auto strategy = electrical::parse_tree_strategy(c.strategy);
    g = electrical::tree_graph(electrical::spanning_tree(g, 0, strategy, c.seed));
    instance += " tree=" + c.strategy;
  }
  const auto s = diagnostics::gromov_delta(g, dm, static_cast<std::uint64_t>(c.quadruples), c.seed, instance);
  std::string witness;
  for (VertexId v : s.witness) witness += (witness.empty() ? "" : " ") + g.name(v);
  Table t({"instance", "mode", "delta", "twice_delta", "quadruples", "witness"});
  t.row().text(instance).text(mode).rational(s.delta()).integer(s.twice_delta)
      .integer(BigInt(s.quadruples)).text(witness);
  return provenance(c) + t.render(c.format);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Canopy tree souvlaki: construction, flows, resistances, walks and diagnostics", "souvlaki"};
  app.set_config("--config", "", "key = value configuration file; flags override it");
  app.fallthrough();
  app.require_subcommand(1);
  auto* ok = app.add_option("--k", c.k, "meatball level")->check(CLI::Range(1, 64));
  auto* on = app.add_option("--n", c.n, "tree level of T'_n")->check(CLI::Range(1, 64));
  auto* oK = app.add_option("--K", c.K, "spine truncation level")->check(CLI::Range(2, 64));
  app.add_option("--d", c.d, "branching number, d > 6")->check(CLI::Range(7, 1000));
  app.add_option("--r", c.r, "ball or transport radius")->check(CLI::Range(0, 16));
  auto* os = app.add_option("--seed", c.seed, "master seed");
  app.add_option("--tol", c.tol, "solver tolerance / census interval width")->check(CLI::PositiveNumber);
  app.add_option("--budget", c.budget, "vertex budget (default: SOUVLAKI_BUDGET or 2e7)")->check(CLI::PositiveNumber);
  app.add_option("--out", c.out, "output file (default stdout)");
  app.add_option("--format", c.format, "csv, jsonl or edges")->check(CLI::IsMember({"csv", "jsonl", "edges"}));
  app.add_option("--glue", c.glue, "tower or base")->check(CLI::IsMember({"tower", "base"}));
  app.add_option("--mode", c.mode, "flow: exact|analytic; delta: exact|sampled");
  app.add_option("--emit", c.emit, "flow: csv|edges; walk: stats|distribution|symmetry|escape");
  app.add_option("--export", c.exporter, "build: edges");
  app.add_option("--strategy", c.strategy, "spanning tree: bfs, dfs or random");
  app.add_option("--law", c.law, "mtp root law: census or degree");
  app.add_option("--runs", c.runs, "walks per start")->check(CLI::NonNegativeNumber);
  app.add_option("--horizon", c.horizon, "walk horizon")->check(CLI::NonNegativeNumber);
  app.add_option("--samples", c.samples, "lwc samples per source")->check(CLI::PositiveNumber);
  app.add_option("--n2", c.n2, "second tree level for lwc")->check(CLI::Range(1, 64));
  app.add_option("--functions", c.functions, "random transport functions")->check(CLI::NonNegativeNumber);
  app.add_option("--quadruples", c.quadruples, "sampled delta quadruples")->check(CLI::PositiveNumber);
  app.add_option("--starts", c.starts, "bush starts for walk");
  const std::vector<std::pair<std::string, std::string>> commands{
      {"build", "materialize T'_n or the spine truncation"},
      {"census", "volumes, ownership and root-level law"},
      {"flow", "energy of g^(k) or its edge values"},
      {"resist", "effective resistances on the spine truncation"},
      {"walk", "spine hitting, hitting laws, symmetry, escape"},
      {"mtp", "mass transport balance on T'_n"},
      {"lwc", "local weak convergence distances"},
      {"delta", "four-point hyperbolicity"},
      {"export", "edge list of a meatball, tree or spine"}};
  for (const auto& [name, help] : commands) app.add_subcommand(name, help);
  const std::string usage = app.help();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << usage;
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << usage;
    return kUsage;
  }
  c.command = app.get_subcommands().front()->get_name();
  c.has_k = ok->count() > 0;
  c.has_n = on->count() > 0;
  c.has_K = oK->count() > 0;
  c.has_seed = os->count() > 0;

  try {
    std::string artifact;
    if (c.command == "build") artifact = cmd_build(c);
    else if (c.command == "census") artifact = cmd_census(c);
    else if (c.command == "flow") artifact = cmd_flow(c);
    else if (c.command == "resist") artifact = cmd_resist(c);
    else if (c.command == "walk") artifact = cmd_walk(c);
    else if (c.command == "mtp") artifact = cmd_mtp(c);
    else if (c.command == "lwc") artifact = cmd_lwc(c);
    else if (c.command == "delta") artifact = cmd_delta(c);
    else artifact = cmd_export(c);
    if (c.out.empty()) {
      out << artifact;
    } else {
      std::ofstream file(c.out, std::ios::binary);
      if (!file) throw UsageError("cannot open " + c.out);
      file << artifact;
    }
    return kOk;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n" << usage;
    return kUsage;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const CoordinateError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kBudget;
  } catch (const SolverError& e) {
    err << "error: " << e.what() << "\n";
    return kSolver;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace souvlaki::cli
