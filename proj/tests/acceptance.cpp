// Acceptance run: one PASS/FAIL line per criterion, exit status 1 when any fails.
//
//   acceptance [baselines.txt] [--only N]

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "souvlaki/assembly.hpp"
#include "souvlaki/census.hpp"
#include "souvlaki/diagnostics.hpp"
#include "souvlaki/electrical.hpp"
#include "souvlaki/errors.hpp"
#include "souvlaki/flow.hpp"
#include "souvlaki/random.hpp"
#include "souvlaki/topology.hpp"
#include "souvlaki/walk.hpp"

#ifndef SOUVLAKI_BASELINES
#define SOUVLAKI_BASELINES "data/baselines.txt"
#endif

namespace {

using namespace souvlaki;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  /// Records a failed check; the first few messages are kept.
  void check(bool ok, const std::string& what) {
    if (ok) return;
    if (pass) detail << "failed: ";
    else detail << "; ";
    detail << what;
    pass = false;
  }
};

class Baselines {
 public:
  explicit Baselines(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open baselines file " + path);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      std::istringstream fields(line);
      std::string key, value;
      if (fields >> key >> value) values_[key] = value;
    }
    if (text("format") != "1") throw InvalidArgument("unsupported baselines format in " + path);
  }
  const std::string& text(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) throw InvalidArgument("baseline missing: " + key);
    return it->second;
  }
  double real(const std::string& key) const { return std::stod(text(key)); }
  Rational rational(const std::string& key) const { return parse_fraction(text(key)); }

 private:
  std::map<std::string, std::string> values_;
};

bool within(double value, double baseline, double relative) {
  return std::abs(value - baseline) <= relative * std::abs(baseline);
}

std::string real(double x) { return format_real(x); }

// 1. Volumes of the left pieces and their level profile, by enumeration.
Outcome volumes(const Baselines&) {
  Outcome o;
  const std::int64_t quoted[] = {14, 860, 23310};
  for (int k = 1; k <= 5; ++k) {
    const topology::MeatballSpec spec(k);
    const Graph g = topology::materialize_meatball(spec, topology::Part::LeftOnly);
    std::int64_t six = 1;
    for (int i = 0; i <= k; ++i) six *= 6;
    const std::int64_t kk = std::int64_t{k} * k;
    const std::int64_t closed = (six - 1) / 5 * (kk * kk + kk);
    o.check(static_cast<std::int64_t>(g.num_vertices()) == closed, "|M^L_" + std::to_string(k) + "| enumeration");
    o.check(census::volume_vk(k) == closed, "v_" + std::to_string(k) + " formula");
    if (k <= 3) o.check(closed == quoted[k - 1], "quoted v_" + std::to_string(k));
    std::vector<std::int64_t> rows(static_cast<std::size_t>(k) + 1, 0);
    for (const auto& l : g.labels()) ++rows.at(static_cast<std::size_t>(l.row));
    std::int64_t per_row = kk * kk + kk;
    for (int i = 0; i <= k; ++i, per_row *= 6) {
      o.check(rows[static_cast<std::size_t>(i)] == per_row, "level " + std::to_string(i) + " of k=" + std::to_string(k));
      o.check(census::level_count(k, i) == per_row, "level_count(" + std::to_string(k) + "," + std::to_string(i) + ")");
    }
  }
  o.detail << (o.pass ? "v_k enumerated for k=1..5; 14, 860, 23310; level counts 6^i (k^2+k^4)" : "");
  return o;
}

// 2. Root level law of T'_2 by exhaustive census, and the limit sampler against its weights.
Outcome root_law(const Baselines& base) {
  Outcome o;
  const auto tree = assembly::assemble_Tn(2, 7);
  o.check(static_cast<std::int64_t>(tree.graph.num_vertices()) == std::stoll(base.text("vertices.T2")), "|T'_2|");
  std::int64_t level1 = 0, left = 0;
  for (const auto& l : tree.graph.labels()) {
    if (l.copy_layer) continue;
    ++left;
    if (l.level == 1) ++level1;
  }
  const Rational census_p(level1, left);
  o.check(census_p == Rational(686, 6706), "census p_{1,2} = " + to_fraction(census_p));
  o.check(census::root_level_prob(1, 2, 7) == Rational(686, 6706), "formula p_{1,2}");

  const census::LevelSampler sampler(7);
  std::vector<Rational> weight;
  Rational z = 0;
  for (int k = 1; k <= sampler.max_level(); ++k) {
    weight.push_back(census::ownership_weight(k, 7));
    z += weight.back();
  }
  constexpr long kDraws = 1000000;
  std::vector<long> counts(weight.size(), 0);
  Engine rng = substream(2024, 0);
  for (long i = 0; i < kDraws; ++i) ++counts.at(static_cast<std::size_t>(sampler.sample(rng) - 1));
  double tv = 0;
  for (std::size_t i = 0; i < weight.size(); ++i) {
    tv += std::abs(static_cast<double>(counts[i]) / kDraws - to_double(weight[i] / z));
  }
  tv /= 2;
  o.check(tv < 5e-3, "sampler TV " + real(tv));
  if (o.pass) o.detail << "census p_{1,2} = 686/6706 over " << left << " left-piece vertices; 1e6 draws, TV " << real(tv);
  return o;
}

// 3. Exact contracts of g^(k), k <= 4.
Outcome flow_validity(const Baselines&) {
  Outcome o;
  std::size_t edges = 0;
  for (int k = 1; k <= 4; ++k) {
    const std::string tag = " (k=" + std::to_string(k) + ")";
    const flow::MeatballFlow m = flow::build_flow_gk(k);
    o.check(m.flow.conserves(), "conservation" + tag);
    o.check(m.sources.size() == static_cast<std::size_t>(k * k), "source count" + tag);
    o.check(m.sinks.size() == static_cast<std::size_t>((k + 1) * (k + 1)), "sink count" + tag);
    for (VertexId r : m.sources) o.check(m.flow.divergence(r) == Rational(1, k * k), "source outflow" + tag);
    for (VertexId l : m.sinks) o.check(m.flow.divergence(l) == -Rational(1, (k + 1) * (k + 1)), "sink inflow" + tag);
    const topology::MeatballIndex index(m.spec, topology::Part::Full);
    const Rational cap(1, ipow(3, k));
    long loads = 0;
    for (const auto& e : m.flow.entries()) {
      const auto a = index.unrank(e.from);
      const auto b = index.unrank(e.to);
      const Rational x(BigInt(e.numerator), m.flow.denominator());
      if (a.row() == b.row()) o.check(x <= cap, "horizontal flow " + to_fraction(x) + tag);
      if (b.row() == k && a.row() == k - 1 && b.w.base() >= m.spec.left_width()) {
        o.check(x == cap / (k * k), "height-k load" + tag);
        ++loads;
      }
    }
    o.check(loads > 0, "no height-k load edges" + tag);
    edges += m.flow.entries().size();
    if (!o.pass) break;
  }
  if (o.pass) o.detail << "k=1..4 exact, " << edges << " flow edges, zero tolerance";
  return o;
}

// 4. Energy bookkeeping: exact sums, the scaled bound and the Cauchy tail.
Outcome energy(const Baselines& base) {
  Outcome o;
  for (int k = 1; k <= 3; ++k) {
    const flow::MeatballFlow m = flow::build_flow_gk(k);
    const flow::EnergyReport e = flow::energy_exact(m.flow, m.graph, k);
    const flow::EnergyReport a = flow::energy_analytic(k);
    const std::string tag = " (k=" + std::to_string(k) + ")";
    o.check(e.ascent == a.ascent && e.horizontal == a.horizontal && e.descent == a.descent &&
                e.redistribution == a.redistribution && e.total == a.total,
            "exact != analytic" + tag);
  }
  o.check(flow::energy_analytic(1).total == base.rational("energy.g1"), "E(g^(1)) baseline");
  const flow::EnergySweep sweep = flow::energy_sweep(30);
  const double constant = base.real("energy.k2max.value");
  for (const auto& r : sweep.reports) o.check(to_double(r.k2_total) <= constant * (1 + 1e-12), "k^2 E above constant");
  o.check(sweep.argmax == std::stoi(base.text("energy.k2max.argmax")), "argmax of k^2 E");
  o.check(within(to_double(sweep.max_k2_total), constant, 1e-12), "max k^2 E vs baseline");
  for (int J = 1; J < 30; ++J) {
    Rational tail = 0;
    for (int k = J + 1; k <= 30; ++k) tail += sweep.reports[static_cast<std::size_t>(k - 1)].total;
    // The tail bound only applies once the geometric ratio certificate kicks in.
    if (J >= 12) o.check(tail <= flow::energy_tail_bound(J), "tail bound J=" + std::to_string(J));
  }
  for (int J = 12; J < 30; ++J) o.check(flow::energy_tail_bound(J + 1) < flow::energy_tail_bound(J), "tail bound monotone");
  o.check(within(to_double(sweep.partial_sum), base.real("energy.partial_sum.k30"), 1e-12), "partial sum baseline");
  if (o.pass) {
    o.detail << "exact = analytic for k<=3; max k^2 E = " << real(to_double(sweep.max_k2_total)) << " at k=" << sweep.argmax
             << "; sum_{k<=30} E = " << real(to_double(sweep.partial_sum)) << " + tail <= "
             << real(to_double(flow::energy_tail_bound(30)));
  }
  return o;
}

struct SpineData {
  assembly::Assembled spine;
  Rational concat;
};

Rational energy_ceiling() {
  return flow::energy_sweep(30).partial_sum + flow::energy_tail_bound(30);
}

// 5. Source to frontier resistance against Thomson bounds, and the escape identity.
Outcome transience(const Baselines& base) {
  Outcome o;
  const double ceiling = to_double(energy_ceiling());
  std::ostringstream values;
  for (int K = 2; K <= 4; ++K) {
    const std::string tag = " (K=" + std::to_string(K) + ")";
    const auto spine = assembly::spine_truncation(K, 7);
    o.check(static_cast<std::int64_t>(spine.graph.num_vertices()) ==
                std::stoll(base.text("vertices.spine.K" + std::to_string(K))),
            "vertex count" + tag);
    const walk::EscapeResult e = walk::escape_probability(spine);
    const double r = e.resistance.value;
    const Rational concat = flow::concatenated_energy_analytic(K);
    o.check(concat == base.rational("energy.concat.K" + std::to_string(K)), "concatenated energy baseline" + tag);
    o.check(r <= to_double(concat), "R > concatenated energy" + tag);
    o.check(r <= ceiling, "R above the summed energy bound" + tag);
    o.check(within(r, base.real("resistance.source.K" + std::to_string(K)), 1e-2), "R off baseline" + tag);
    o.check(std::abs(e.probability - e.via_resistance) <= 1e-6, "escape identity" + tag);
    values << (K > 2 ? ", " : "") << "K=" << K << ": R=" << real(r) << " <= " << real(to_double(concat))
           << " escape=" << real(e.probability);
  }
  if (o.pass) o.detail << values.str() << "; all <= " << real(ceiling);
  return o;
}

// 6. Spanning trees lose transience; junction profile and degrees.
Outcome subtrees(const Baselines& base) {
  Outcome o;
  using electrical::TreeStrategy;
  const TreeStrategy strategies[] = {TreeStrategy::Bfs, TreeStrategy::Dfs, TreeStrategy::Random};
  std::map<TreeStrategy, std::vector<double>> tree;
  std::ostringstream values;
  std::vector<electrical::ProfileRow> smaller;
  for (int K = 2; K <= 4; ++K) {
    const auto spine = assembly::spine_truncation(K, 7);
    const double concat = to_double(flow::concatenated_energy_analytic(K));
    for (TreeStrategy s : strategies) {
      const auto c = electrical::subtree_resistance_contrast(spine, s, 1);
      tree[s].push_back(c.tree);
      o.check(c.graph <= concat, "R_graph above energy bound (K=" + std::to_string(K) + ")");
    }
    if (K == 3) smaller = electrical::junction_resistance_profile(spine);
    if (K == 4) {
      const auto profile = electrical::junction_resistance_profile(spine);
      // Rayleigh: the K=4 truncation contains the K=3 one, so no junction resistance may grow.
      for (std::size_t i = 0; i < smaller.size(); ++i) {
        o.check(profile[i].resistance.value <= smaller[i].resistance.value * (1 + 1e-9),
                "profile grew from K=3 at k=" + std::to_string(smaller[i].k));
      }
      o.check(profile.size() == 3, "profile rows");
      for (const auto& row : profile) {
        const std::string k = std::to_string(row.k);
        o.check(row.resistance.value > 0, "profile positive k=" + k);
        o.check(within(row.resistance.value, base.real("resistance.profile.k" + k), 1e-2), "profile baseline k=" + k);
        o.check(row.degree == std::stoi(base.text("degree.junction.k" + k)), "deg(v_" + k + ")");
        o.check(row.degree <= 8 * row.k * row.k, "deg(v_" + k + ")/k^2 > 8");
        values << (row.k > 1 ? ", " : "") << "R(v_" << k << ",v_" << row.k + 1 << ")=" << real(row.resistance.value)
               << " deg=" << row.degree;
      }
    }
  }
  std::ostringstream trees;
  for (TreeStrategy s : strategies) {
    const auto& r = tree[s];
    o.check(r[0] < r[1] && r[1] < r[2], "R_tree not increasing for " + electrical::to_string(s));
    trees << electrical::to_string(s) << " " << real(r[0]) << "<" << real(r[1]) << "<" << real(r[2]) << "; ";
  }
  if (o.pass) o.detail << trees.str() << values.str();
  return o;
}

// 7. Spine hitting from bush starts and radial symmetry of hitting laws.
Outcome liouville(const Baselines&) {
  Outcome o;
  const auto tree = assembly::assemble_Tn(2, 7);
  const auto starts = walk::bush_starts(tree.graph, 5, 7);
  o.check(starts.size() == 5, "bush starts");
  double worst = 1;
  for (VertexId s : starts) {
    const auto stats = walk::simulate_spine_hitting(tree.graph, s, 10000, 100000, 11);
    worst = std::min(worst, stats.frequency());
    o.check(stats.frequency() >= 0.999, "hitting frequency " + real(stats.frequency()) + " from " + tree.graph.name(s));
  }
  double deviation = 0;
  for (int k = 1; k <= 2; ++k) {
    const auto rep = walk::radial_symmetry_check(k);
    deviation = std::max(deviation, rep.max_deviation);
    o.check(rep.max_deviation <= 1e-9, "symmetry deviation " + real(rep.max_deviation) + " on M_" + std::to_string(k));
  }
  const auto control = walk::radial_symmetry_check(2, {}, walk::row1_edge(2));
  o.check(control.max_deviation > 1e-3, "control deviation " + real(control.max_deviation));
  if (o.pass) {
    o.detail << starts.size() << " bush starts, min frequency " << real(worst) << "; symmetry deviation "
             << real(deviation) << "; control " << real(control.max_deviation);
  }
  return o;
}

// 8. Mass transport on T'_2 with the census root law.
Outcome mass_transport(const Baselines&) {
  Outcome o;
  const auto tree = assembly::assemble_Tn(2, 7);
  const auto uniform = diagnostics::census_root_law(tree);
  for (int i = 0; i < 50; ++i) {
    const auto f = diagnostics::TransportFunction::random(1 + i % 2, static_cast<std::uint64_t>(i) + 1);
    const auto r = diagnostics::mtp_check(tree.graph, uniform, f);
    o.check(r.lhs == r.rhs, f.name() + ": " + to_fraction(r.lhs) + " != " + to_fraction(r.rhs));
  }
  const auto uphill = diagnostics::TransportFunction::uphill();
  const auto balanced = diagnostics::mtp_check(tree.graph, uniform, uphill);
  o.check(balanced.lhs == balanced.rhs, "uphill under the uniform law");
  const auto biased = diagnostics::mtp_check(tree.graph, diagnostics::degree_biased_law(tree.graph), uphill);
  o.check(biased.lhs != biased.rhs, "biased control balanced");
  if (o.pass) {
    o.detail << "50 random functions exact; biased control " << to_fraction(biased.lhs) << " != "
             << to_fraction(biased.rhs);
  }
  return o;
}

// 9. Four-point hyperbolicity.
Outcome hyperbolicity(const Baselines& base) {
  Outcome o;
  using diagnostics::DeltaMode;
  const Graph m2 = topology::materialize_meatball(topology::MeatballSpec(2), topology::Part::Full);
  o.check(static_cast<std::int64_t>(m2.num_vertices()) == std::stoll(base.text("vertices.M2")), "|M_2|");
  for (auto s : {electrical::TreeStrategy::Bfs, electrical::TreeStrategy::Dfs, electrical::TreeStrategy::Random}) {
    const Graph t = electrical::tree_graph(electrical::spanning_tree(m2, 0, s, 3));
    const auto d = diagnostics::gromov_delta(t, DeltaMode::Exact);
    o.check(d.twice_delta == 0, "delta of " + electrical::to_string(s) + " tree " + to_fraction(d.delta()));
  }
  const auto exact = diagnostics::gromov_delta(m2, DeltaMode::Exact, 0, 0, "M_2");
  o.check(exact.twice_delta == std::stoi(base.text("delta.M2.twice")), "M_2 delta " + to_fraction(exact.delta()));
  const auto sampled = diagnostics::gromov_delta(m2, DeltaMode::Sampled, 100000, 9, "M_2");
  o.check(sampled.twice_delta <= exact.twice_delta, "sampled above exact on M_2");
  const Graph m1 = topology::materialize_meatball(topology::MeatballSpec(1), topology::Part::Full);
  const auto e1 = diagnostics::gromov_delta(m1, DeltaMode::Exact);
  const auto s1 = diagnostics::gromov_delta(m1, DeltaMode::Sampled, 100000, 9);
  o.check(s1.twice_delta <= e1.twice_delta, "sampled above exact on M_1");
  if (o.pass) {
    o.detail << "trees 0; M_2 exact delta " << to_fraction(exact.delta()) << " over " << exact.quadruples
             << " quadruples; sampled " << to_fraction(sampled.delta());
  }
  return o;
}

// 10. Stochastic subcommands repeat byte for byte.
Outcome determinism(const Baselines&) {
  Outcome o;
  const std::vector<std::vector<std::string>> commands{
      {"walk", "--n", "2", "--seed", "5", "--runs", "500", "--horizon", "20000"},
      {"walk", "--n", "2", "--seed", "5", "--runs", "500", "--format", "jsonl"},
      {"mtp", "--n", "2", "--seed", "5", "--functions", "5"},
      {"lwc", "--n", "2", "--n2", "3", "--r", "1", "--seed", "5", "--samples", "300"},
      {"delta", "--k", "2", "--mode", "sampled", "--seed", "5", "--quadruples", "20000"},
      {"resist", "--K", "2", "--strategy", "random", "--seed", "5"},
      {"build", "--K", "2", "--export", "edges"}};
  const auto run = [](const std::vector<std::string>& args, int& code) {
    std::ostringstream out, err;
    code = cli::run(args, out, err);
    return out.str();
  };
  for (const auto& args : commands) {
    int c1 = 0, c2 = 0;
    const std::string first = run(args, c1);
    const std::string second = run(args, c2);
    o.check(c1 == cli::kOk && c2 == cli::kOk, args.front() + " exit code");
    o.check(!first.empty() && first == second, args.front() + " output differs");
  }
  // A different seed must actually change a stochastic artifact.
  int code = 0;
  auto other = commands.front();
  other[4] = "6";
  o.check(run(other, code) != run(commands.front(), code), "walk ignores the seed");
  if (o.pass) o.detail << commands.size() << " command lines repeated byte-identically";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  std::string path = SOUVLAKI_BASELINES;
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--only" && i + 1 < argc) only = std::atoi(argv[++i]);
    else path = arg;
  }
  const Baselines base(path);
  const std::vector<std::pair<std::string, std::function<Outcome(const Baselines&)>>> criteria{
      {"volume formula", volumes},
      {"root distribution", root_law},
      {"flow validity", flow_validity},
      {"flow energy", energy},
      {"transience surrogate", transience},
      {"no transient subtree", subtrees},
      {"liouville surrogates", liouville},
      {"mass transport", mass_transport},
      {"hyperbolicity", hyperbolicity},
      {"determinism", determinism}};
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (only != 0 && only != id) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second(base);
    } catch (const std::exception& e) {
      o.check(false, std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << id << " (" << criteria[i].first << ", "
              << std::fixed;
    std::cout.precision(1);
    std::cout << seconds << " s): " << o.detail.str() << std::endl;
    std::cout.unsetf(std::ios::fixed);
  }
  return failures == 0 ? 0 : 1;
}
