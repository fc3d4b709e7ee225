// dyncut: replay update/query streams against the dynamic cut structures and
// write JSON reports.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>

#include "dyncut/audit.hpp"
#include "dyncut/cut_sparsifier.hpp"
#include "dyncut/dynamic_msf.hpp"
#include "dyncut/hierarchy.hpp"
#include "dyncut/io.hpp"
#include "dyncut/jtree.hpp"
#include "dyncut/oracle.hpp"
#include "dyncut/queries.hpp"
#include "dyncut/sf_bundle.hpp"

using namespace dyncut;
using Json = nlohmann::ordered_json;

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kInvariant = 2, kMismatch = 3 };

struct OracleMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string graph, stream, out, csv, dump, suite = "all";
  std::uint64_t seed = 1;
  std::size_t strict = 0;
  double epsilon = 0.5, cxi = 1.0, c = 1.0;
  Cap cap_scale = 1;
  std::size_t j = 8, levels = 2, samples = 3, max_trees = 8, bundle_depth = 2, runs = 3;
  std::size_t witness_limit = 32, max_path_length = 0;
  double gamma_init = 0, rebuild_c = 2.0;
  oracle::Budget budget;
  bool timings = false;
};

struct Input {
  DynamicMultiGraph g;
  std::vector<io::StreamOp> ops;
};

Input load(const Options& o) {
  Input in;
  std::ifstream gf(o.graph);
  if (!gf) throw UsageError("cannot open graph file " + o.graph);
  try {
    in.g = io::read_graph(gf, o.cap_scale);
  } catch (const io::ParseError& e) {
    throw UsageError(o.graph + ": " + e.what());
  }
  if (!o.stream.empty()) {
    std::ifstream sf(o.stream);
    if (!sf) throw UsageError("cannot open stream file " + o.stream);
    try {
      in.ops = io::read_stream(sf, o.cap_scale);
    } catch (const io::ParseError& e) {
      throw UsageError(o.stream + ": " + e.what());
    }
  }
  return in;
}

GraphUpdate resolve(const DynamicMultiGraph& g, const io::StreamOp& op, const Options& o) {
  try {
    return io::resolve_update(g, op);
  } catch (const io::ParseError& e) {
    throw UsageError(o.stream + ": " + e.what());
  }
}

std::size_t count_queries(const Input& in) {
  return static_cast<std::size_t>(std::count_if(in.ops.begin(), in.ops.end(), [](const io::StreamOp& op) { return op.op == 'Q'; }));
}

bool strict_due(const Options& o, std::size_t step) { return o.strict && step % o.strict == 0; }

Json header(const char* cmd, const Options& o, const Input& in) {
  Json j;
  j["schema"] = 1;
  j["command"] = cmd;
  j["seed"] = o.seed;
  j["input"] = {{"graph", o.graph}, {"stream", o.stream}, {"n", in.g.num_vertices()}, {"m", in.g.num_edges()},
                {"stream_lines", in.ops.size()}, {"cap_scale", o.cap_scale}};
  return j;
}

const char* op_name(const GraphUpdate& u) {
  if (std::holds_alternative<EdgeInsert>(u)) return "insert";
  if (std::holds_alternative<EdgeDelete>(u)) return "delete";
  return "split";
}

Json update_json(const io::StreamOp& op, const GraphUpdate& u) {
  Json j{{"line", op.line}, {"op", op_name(u)}};
  if (auto* ins = std::get_if<EdgeInsert>(&u)) j["handle"] = ins->handle;
  if (auto* del = std::get_if<EdgeDelete>(&u)) j["handle"] = del->handle;
  if (auto* sp = std::get_if<VertexSplit>(&u)) {
    j["vertex"] = sp->v;
    j["new_vertex"] = sp->new_vertex;
    j["moved"] = sp->moved.size();
  }
  return j;
}

bool same_graph(const DynamicMultiGraph& a, const DynamicMultiGraph& b) {
  if (a.num_edges() != b.num_edges()) return false;
  for (auto h : a.edges())
    if (!b.has_edge(h) || a.cap(h) != b.cap(h) || a.endpoint(h, 0) != b.endpoint(h, 0) ||
        a.endpoint(h, 1) != b.endpoint(h, 1))
      return false;
  return true;
}

// H must use G's handles with G's endpoints.
void check_subgraph(const CutSparsifier& s) {
  const auto& g = s.graph();
  const auto& h = s.sparsifier();
  for (auto e : h.edges()) {
    DYNCUT_CHECK(g.has_edge(e), "sparsifier edge missing from the graph");
    DYNCUT_CHECK(g.endpoint(e, 0) == h.endpoint(e, 0) && g.endpoint(e, 1) == h.endpoint(e, 1),
                 "sparsifier edge with different endpoints");
  }
  DYNCUT_CHECK(h.num_edges() <= s.edge_budget(), "sparsifier above its size budget");
}

SparsifierConfig sparsifier_config(const Options& o) {
  SparsifierConfig sc;
  sc.epsilon = o.epsilon;
  sc.c = o.c;
  sc.c_xi = o.cxi;
  sc.seed = o.seed;
  return sc;
}

HierarchyConfig hierarchy_config(const Options& o, std::uint64_t seed) {
  HierarchyConfig hc;
  hc.levels = o.levels;
  hc.j = o.j;
  hc.samples = o.samples;
  hc.rebuild_c = o.rebuild_c;
  hc.seed = seed;
  hc.gamma_init = o.gamma_init;
  hc.max_trees = o.max_trees;
  hc.sparsifier_c_xi = o.cxi;
  hc.max_path_length = o.max_path_length;
  return hc;
}

MwuConfig mwu_config(const Options& o) {
  MwuConfig mc;
  mc.gamma_init = o.gamma_init;
  mc.max_trees = std::max(o.max_trees, mc.min_trees);
  mc.seed = o.seed;
  return mc;
}

// ---- sparsify ----

Json run_sparsify(const Options& o) {
  auto in = load(o);
  Json rep = header("sparsify", o, in);
  rep["skipped_queries"] = count_queries(in);
  CutSparsifier s(in.g, sparsifier_config(o));
  check_subgraph(s);
  rep["config"] = {{"epsilon", o.epsilon}, {"c_xi", o.cxi}, {"c", o.c}, {"strict", o.strict}};
  rep["sparsifier"] = {{"levels", s.levels()},
                       {"bundle_depth", s.bundle_depth()},
                       {"classes", s.classes()},
                       {"edge_budget", s.edge_budget()},
                       {"capacity_ratio_bound", s.capacity_ratio()}};
  rep["initial"] = {{"h_edges", s.sparsifier().num_edges()}, {"h_equals_g", same_graph(s.graph(), s.sparsifier())}};
  Json ups = Json::array();
  std::size_t step = 0;
  for (const auto& op : in.ops) {
    if (op.op == 'Q') continue;
    auto u = resolve(s.graph(), op, o);
    auto r = s.apply(u);
    auto j = update_json(op, u);
    j["h_edges"] = s.sparsifier().num_edges();
    j["inserted"] = r.inserted;
    j["deleted"] = r.deleted;
    j["reweighted"] = r.reweighted;
    ups.push_back(std::move(j));
    if (strict_due(o, ++step)) {
      s.validate();
      check_subgraph(s);
    }
  }
  s.validate();
  check_subgraph(s);
  rep["updates"] = std::move(ups);
  const auto& t = s.totals();
  rep["totals"] = {{"inserted", t.inserted}, {"deleted", t.deleted}, {"reweighted", t.reweighted},
                   {"recourse", t.inserted + t.deleted + t.reweighted}, {"coins", s.coins_drawn()}};
  rep["final"] = {{"n", s.graph().num_vertices()},
                  {"m", s.graph().num_edges()},
                  {"h_edges", s.sparsifier().num_edges()},
                  {"h_equals_g", same_graph(s.graph(), s.sparsifier())}};
  if (!o.dump.empty()) {
    std::ofstream f(o.dump);
    if (!f) throw UsageError("cannot write " + o.dump);
    io::write_graph(f, s.sparsifier());
  }
  return rep;
}

// ---- jtrees ----

Json tree_json(const JTree& t) {
  return {{"roots", t.num_roots()},
          {"core_edges", t.core().num_edges()},
          {"forest_edges", t.forest_edges().size()},
          {"max_forest_depth", t.max_forest_depth()}};
}

Json run_jtrees(const Options& o) {
  auto in = load(o);

  if (o.j < 1 || o.j > in.g.num_vertices()) throw UsageError("--j must lie in [1, n]");
  Json rep = header("jtrees", o, in);
  rep["skipped_queries"] = count_queries(in);
  rep["config"] = {{"j", o.j}, {"gamma_init", o.gamma_init}, {"max_trees", o.max_trees}, {"strict", o.strict}};
  auto mwu = mwu_build(in.g, o.j, mwu_config(o));
  std::vector<JTree> trees;
  JTreeOptions jo;
  jo.max_path_length = o.max_path_length;
  for (std::size_t i = 0; i < mwu.trees.size(); ++i) {
    jo.seed = o.seed + i;
    trees.emplace_back(in.g, mwu.trees[i], jo);
  }
  rep["mwu"] = {{"gamma", mwu.gamma}, {"nominal_trees", mwu.nominal_trees}, {"escalations", mwu.escalations},
                {"trees", mwu.trees.size()}};
  Json initial = Json::array();
  for (std::size_t i = 0; i < trees.size(); ++i) {
    auto j = tree_json(trees[i]);
    j["tree_ratio"] = mwu.trees[i].ratio;
    initial.push_back(std::move(j));
  }
  rep["initial"] = {{"alpha_hat", collection_quality(trees)}, {"trees", std::move(initial)}};

  auto audit = [&] {
    for (const auto& t : trees) {
      t.validate();
      if (!audit::core_matches_contraction(t)) throw OracleMismatch("core differs from the contraction");
    }
  };
  if (o.strict) audit();
  DynamicMultiGraph g = in.g;
  Json ups = Json::array();
  std::size_t step = 0;
  for (const auto& op : in.ops) {
    if (op.op == 'Q') continue;
    auto u = resolve(g, op, o);
    g.apply(u);
    CoreLog sum;
    std::size_t max_core = 0;
    for (auto& t : trees) {
      sum.append(t.apply(u));
      max_core = std::max(max_core, t.num_roots());
    }
    auto j = update_json(op, u);
    j["terminals"] = sum.terminals;
    j["core_splits"] = sum.splits;
    j["core_inserts"] = sum.inserts;
    j["core_deletes"] = sum.deletes;
    j["max_core"] = max_core;
    ups.push_back(std::move(j));
    if (strict_due(o, ++step)) audit();
  }
  for (const auto& t : trees) t.validate();
  rep["updates"] = std::move(ups);
  Json fin = Json::array();
  for (const auto& t : trees) fin.push_back(tree_json(t));
  rep["final"] = {{"alpha_hat", collection_quality(trees)}, {"trees", std::move(fin)}};
  return rep;
}

// ---- hierarchy ----

struct RatioRow {
  std::size_t line;
  std::string query;
  double reported, witness;
  std::optional<double> exact;
};

Json level_json(const LevelReport& l) {
  return {{"sparsifier_recourse", l.sparsifier_recourse}, {"terminals", l.terminals},
          {"core_splits", l.core_splits},                 {"core_inserts", l.core_inserts},
          {"core_deletes", l.core_deletes},               {"rebuilds", l.rebuilds},
          {"max_core", l.max_core}};
}

Json levels_json(const HierarchyReport& r) {
  Json a = Json::array();
  for (const auto& l : r.levels) a.push_back(level_json(l));
  return a;
}

template <class T>
Json limited(const std::vector<T>& xs, std::size_t limit) {
  if (xs.size() > limit) return {{"size", xs.size()}, {"truncated", true}};
  return {{"size", xs.size()}, {"vertices", xs}};
}

Json frac_json(const Fraction& f) { return {{"num", f.num}, {"den", f.den}, {"value", f.value()}}; }

// Answers one query and compares it with the oracle when the graph fits the
// budget.
Json answer(const Hierarchy& h, const io::StreamOp& op, const Options& o, std::vector<RatioRow>& rows) {
  const auto& g = h.graph();
  try {
    io::check_query(g, op);
  } catch (const io::ParseError& e) {
    throw UsageError(o.stream + ": " + e.what());
  }
  const auto& q = op.query;
  QueryOptions qo;
  qo.seed = o.seed;
  auto view = audit::oracle_view(g);
  int n = view.g.n();
  Json j{{"line", op.line}, {"query", io::query_name(q.kind)}};
  RatioRow row{op.line, io::query_name(q.kind), 0, 0, std::nullopt};
  auto fail = [&](const std::string& what) {
    throw OracleMismatch("line " + std::to_string(op.line) + ": " + what);
  };
  QueryReport r;
  switch (q.kind) {
    case io::QueryKind::MinCut: {
      r = min_cut(h, q.vertices[0], q.vertices[1]);
      j["value"] = r.value;
      j["witness_cost"] = r.witness_cost;
      j["witness"] = limited(r.witness_side, o.witness_limit);
      row.reported = static_cast<double>(r.value);
      row.witness = static_cast<double>(r.witness_cost);
      if (!r.feasible) fail("min-cut witness does not separate the terminals");
      if (g.num_edges() <= static_cast<std::size_t>(o.budget.max_flow_edges)) {
        auto exact = oracle::exact_min_cut(view.g, view.index.at(q.vertices[0]), view.index.at(q.vertices[1]), o.budget);
        row.exact = static_cast<double>(exact);
        if (r.value < exact || r.witness_cost < exact) fail("min cut below the exact value");
      }
      break;
    }
    case io::QueryKind::Sparsest: {
      r = sparsest_cut(h, qo);
      j["value"] = frac_json(r.value_frac);
      j["witness_sparsity"] = frac_json(r.witness_sparsity);
      j["witness"] = limited(r.witness_side, o.witness_limit);
      row.reported = r.value_frac.value();
      row.witness = r.witness_sparsity.value();
      if (!r.feasible) fail("sparsest-cut candidate is not a cut of its chain");
      if (n <= o.budget.max_enum_vertices) {
        auto exact = oracle::exact_sparsest_cut(view.g, std::vector<oracle::Weight>(static_cast<std::size_t>(n), 1), o.budget);
        row.exact = exact.psi.value();
        if (r.witness_sparsity < Fraction{exact.psi.num, exact.psi.den}) fail("witness sparser than the optimum");
      }
      break;
    }
    case io::QueryKind::Multiway:
    case io::QueryKind::Multicut: {
      bool mw = q.kind == io::QueryKind::Multiway;
      std::vector<std::pair<VertexId, VertexId>> pairs;
      for (std::size_t i = 0; i + 1 < q.vertices.size(); i += 2) pairs.push_back({q.vertices[i], q.vertices[i + 1]});
      r = mw ? multiway_cut(h, q.vertices, qo) : multicut(h, pairs, qo);
      j["value"] = r.value;
      j["witness_cost"] = r.witness_cost;
      std::set<std::uint32_t> parts;
      for (auto v : g.vertices()) parts.insert(r.witness_partition[v]);
      j["witness_parts"] = parts.size();
      row.reported = static_cast<double>(r.value);
      row.witness = static_cast<double>(r.witness_cost);
      if (!r.feasible) fail("partition leaves a required pair together");
      if (n <= o.budget.max_partition_vertices) {
        oracle::PartitionCut exact;
        if (mw) {
          std::vector<int> t;
          for (auto v : q.vertices) t.push_back(view.index.at(v));
          exact = oracle::exact_multiway(view.g, t, o.budget);
        } else {
          std::vector<std::pair<int, int>> p;
          for (auto [a, b] : pairs) p.push_back({view.index.at(a), view.index.at(b)});
          exact = oracle::exact_multicut(view.g, p, o.budget);
        }
        row.exact = static_cast<double>(exact.value);
        if (r.witness_cost < exact.value) fail("partition cheaper than the optimum");
      }
      break;
    }
  }
  j["per_chain"] = r.per_chain;
  j["best_chain"] = r.best_chain;
  j["feasible"] = r.feasible;
  if (row.exact) {
    j["exact"] = *row.exact;
    if (*row.exact > 0) j["ratio"] = row.witness / *row.exact;
  }
  rows.push_back(row);
  return j;
}

void write_csv(const std::string& path, const std::vector<RatioRow>& rows) {
  std::ofstream f(path);
  if (!f) throw UsageError("cannot write " + path);
  f << "line,query,reported,witness,exact,witness_ratio\n";
  for (const auto& r : rows) {
    f << r.line << ',' << r.query << ',' << r.reported << ',' << r.witness << ',';
    if (r.exact) {
      f << *r.exact << ',';
      if (*r.exact > 0) f << r.witness / *r.exact;
    } else {
      f << ',';
    }
    f << '\n';
  }
}

void audit_hierarchy(const Hierarchy& h, const Options& o) {
  h.validate();
  for (const auto& c : h.chains()) c.validate();
  if (static_cast<int>(h.graph().num_vertices()) <= o.budget.max_enum_vertices &&
      audit::chain_violations(h, o.budget) > 0)
    throw OracleMismatch("a chain undercuts the graph");
}

Json run_hierarchy(const Options& o) {
  auto in = load(o);
  Json rep = header("hierarchy", o, in);
  Hierarchy h(in.g, hierarchy_config(o, o.seed));
  rep["config"] = {{"levels", o.levels},       {"j", o.j},         {"samples", o.samples},
                   {"rebuild_c", o.rebuild_c}, {"c_xi", o.cxi},    {"gamma_init", o.gamma_init},
                   {"max_trees", o.max_trees}, {"strict", o.strict}};
  rep["level_sizes"] = h.level_sizes();
  rep["chains"] = h.chain_count();
  if (o.strict) audit_hierarchy(h, o);
  Json ups = Json::array(), queries = Json::array();
  std::vector<RatioRow> rows;
  std::size_t step = 0;
  for (const auto& op : in.ops) {
    if (op.op == 'Q') {
      queries.push_back(answer(h, op, o, rows));
      continue;
    }
    auto u = resolve(h.graph(), op, o);
    auto r = h.update(u);
    auto j = update_json(op, u);
    j["rebuilt"] = r.rebuilt;
    j["levels"] = levels_json(r);
    ups.push_back(std::move(j));
    if (strict_due(o, ++step)) audit_hierarchy(h, o);
  }
  h.validate();
  rep["updates"] = std::move(ups);
  rep["queries"] = std::move(queries);
  rep["totals"] = {{"updates", h.updates()}, {"levels", levels_json(h.totals())}};
  if (!o.csv.empty()) write_csv(o.csv, rows);
  return rep;
}

// ---- verify ----

struct SuiteResult {
  std::size_t checks = 0, mismatches = 0;
  Json first;
  void check(bool ok, std::size_t line, const std::string& what) {
    ++checks;
    if (ok) return;
    if (!mismatches) first = {{"line", line}, {"what", what}};
    ++mismatches;
  }
  Json json(std::size_t updates) const {
    Json j{{"updates", updates}, {"checks", checks}, {"mismatches", mismatches}};
    if (mismatches) j["first_mismatch"] = first;
    return j;
  }
};

SuiteResult verify_msf(const Input& in, const Options& o) {
  SuiteResult res;
  DynamicMultiGraph g = in.g;
  DynamicMsf f;
  f.build(g);
  auto same = [&](std::size_t line) {
    auto got = f.forest();
    std::sort(got.begin(), got.end());
    res.check(got == audit::kruskal_forest(g), line, "forest differs from Kruskal");
  };
  same(0);
  for (const auto& op : in.ops) {
    if (op.op == 'Q') continue;
    auto u = resolve(g, op, o);
    g.apply(u);
    auto r = f.apply(g, u);
    f.validate(g);
    same(op.line);
    bool split = std::holds_alternative<VertexSplit>(u);
    bool ins = std::holds_alternative<EdgeInsert>(u);
    res.check(r.inserted.size() <= 1 && ((ins || split) ? r.deleted.empty() : r.deleted.size() <= 1), op.line,
              "recourse above its bound");
  }
  return res;
}

SuiteResult verify_bundle(const Input& in, const Options& o) {
  SuiteResult res;
  SFBundle b(in.g, o.bundle_depth);
  auto cert = [&](std::size_t line) {
    if (b.graph().num_edges() > static_cast<std::size_t>(o.budget.max_flow_edges)) return;
    res.check(audit::bundle_certificate_violations(b, o.budget) == 0, line, "edge outside the bundle below depth");
  };
  cert(0);
  for (const auto& op : in.ops) {
    if (op.op == 'Q') continue;
    auto u = resolve(b.graph(), op, o);
    auto r = b.apply(u);
    b.validate();
    cert(op.line);
    bool split = std::holds_alternative<VertexSplit>(u);
    bool ins = std::holds_alternative<EdgeInsert>(u);
    std::size_t cap = split ? b.depth() : 1;
    res.check(r.inserted.size() <= cap && ((ins || split) ? r.deleted.empty() : r.deleted.size() <= 1), op.line,
              "recourse above its bound");
  }
  return res;
}

SuiteResult verify_sparsifier(const Input& in, const Options& o) {
  SuiteResult res;
  CutSparsifier s(in.g, sparsifier_config(o));
  auto audit_once = [&](std::size_t line) {
    s.validate();
    bool ok = true;
    try {
      check_subgraph(s);
    } catch (const InvariantError&) {
      ok = false;
    }
    res.check(ok, line, "sparsifier is not a bounded subgraph");
  };
  audit_once(0);
  for (const auto& op : in.ops) {
    if (op.op == 'Q') continue;
    auto u = resolve(s.graph(), op, o);
    s.apply(u);
    audit_once(op.line);
  }
  return res;
}

SuiteResult verify_jtree(const Input& in, const Options& o) {
  SuiteResult res;
  DynamicMultiGraph g = in.g;
  std::size_t j = std::clamp<std::size_t>(o.j, 1, std::max<std::size_t>(1, g.num_vertices()));
  auto mwu = mwu_build(g, j, mwu_config(o));
  std::vector<JTree> trees;
  for (std::size_t i = 0; i < mwu.trees.size(); ++i) trees.emplace_back(g, mwu.trees[i], JTreeOptions{o.seed + i, 0});
  auto audit_once = [&](std::size_t line) {
    bool small = static_cast<int>(g.num_vertices()) <= o.budget.max_enum_vertices;
    for (const auto& t : trees) {
      t.validate();
      res.check(audit::core_matches_contraction(t), line, "core differs from the contraction");
      res.check(audit::canonical_embedding_feasible(t), line, "graph does not embed into the j-tree");
      if (small) res.check(audit::lower_bound_violations(t, o.budget) == 0, line, "j-tree undercuts the graph");
    }
    if (small)
      res.check(audit::worst_average_ratio(trees, o.budget) <= collection_quality(trees) + 1e-9, line,
                "average ratio above the quality bound");
  };
  audit_once(0);
  for (const auto& op : in.ops) {
    if (op.op == 'Q') continue;
    auto u = resolve(g, op, o);
    g.apply(u);
    for (auto& t : trees) t.apply(u);
    audit_once(op.line);
  }
  return res;
}

SuiteResult verify_hierarchy(const Input& in, const Options& o) {
  SuiteResult res;
  Hierarchy h(in.g, hierarchy_config(o, o.seed));
  auto audit_once = [&](std::size_t line) {
    h.validate();
    for (const auto& c : h.chains()) c.validate();
    if (static_cast<int>(h.graph().num_vertices()) <= o.budget.max_enum_vertices)
      res.check(audit::chain_violations(h, o.budget) == 0, line, "a chain undercuts the graph");
  };
  audit_once(0);
  for (const auto& op : in.ops) {
    if (op.op == 'Q') continue;
    auto u = resolve(h.graph(), op, o);
    h.update(u);
    audit_once(op.line);
  }
  return res;
}

Json run_verify(const Options& o, int& code) {
  auto in = load(o);
  Json rep = header("verify", o, in);
  rep["suite"] = o.suite;
  std::size_t updates = 0;
  for (const auto& op : in.ops) updates += op.op != 'Q';
  std::vector<std::pair<std::string, SuiteResult (*)(const Input&, const Options&)>> suites{
      {"msf", verify_msf},
      {"bundle", verify_bundle},
      {"sparsifier", verify_sparsifier},
      {"jtree", verify_jtree},
      {"hierarchy", verify_hierarchy}};
  Json out = Json::object();
  std::size_t bad = 0;
  bool any = false;
  for (const auto& [name, fn] : suites) {
    if (o.suite != "all" && o.suite != name) continue;
    any = true;
    auto r = fn(in, o);
    bad += r.mismatches;
    out[name] = r.json(updates);
  }
  if (!any) throw UsageError("unknown suite " + o.suite);
  rep["suites"] = std::move(out);
  rep["mismatches"] = bad;
  if (bad) code = kMismatch;
  return rep;
}

// ---- bench ----

Json run_bench(const Options& o) {
  auto in = load(o);
  Json rep = header("bench", o, in);
  rep["config"] = {{"runs", o.runs}, {"levels", o.levels}, {"j", o.j}, {"samples", o.samples},
                   {"epsilon", o.epsilon}, {"c_xi", o.cxi}, {"timings", o.timings}};
  Json runs = Json::array();
  using Clock = std::chrono::steady_clock;
  for (std::size_t r = 0; r < o.runs; ++r) {
    Options ro = o;
    ro.seed = o.seed + r;
    auto t0 = Clock::now();
    CutSparsifier s(in.g, sparsifier_config(ro));
    for (const auto& op : in.ops) {
      if (op.op == 'Q') continue;
      auto u = resolve(s.graph(), op, ro);
      s.apply(u);
    }
    auto t1 = Clock::now();
    Hierarchy h(in.g, hierarchy_config(ro, ro.seed));
    std::vector<RatioRow> rows;
    Json queries = Json::array();
    for (const auto& op : in.ops) {
      if (op.op == 'Q') {
        auto a = answer(h, op, ro, rows);
        queries.push_back({{"line", op.line}, {"query", a["query"]}, {"value", a["value"]}});
        continue;
      }
      auto u = resolve(h.graph(), op, ro);
      h.update(u);
    }
    auto t2 = Clock::now();
    const auto& st = s.totals();
    Json j{{"seed", ro.seed},
           {"sparsifier",
            {{"h_edges", s.sparsifier().num_edges()}, {"recourse", st.inserted + st.deleted + st.reweighted}}},
           {"hierarchy", {{"levels", levels_json(h.totals())}, {"queries", std::move(queries)}}}};
    if (o.timings) {
      auto ms = [](auto a, auto b) { return std::chrono::duration<double, std::milli>(b - a).count(); };
      j["ms"] = {{"sparsifier", ms(t0, t1)}, {"hierarchy", ms(t1, t2)}};
    }
    runs.push_back(std::move(j));
  }
  rep["runs"] = std::move(runs);
  return rep;
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--graph", o.graph, "graph file (header 'n m', then 'u v cap')")->required();
  sub->add_option("--stream", o.stream, "update/query stream");
  sub->add_option("--out", o.out, "JSON report path (default: stdout)");
  sub->add_option("--seed", o.seed, "random seed");
  sub->add_option("--strict", o.strict, "validate every N updates (0: off)");
  sub->add_option("--cap-scale", o.cap_scale, "integer scale applied to capacities")->check(CLI::PositiveNumber);
  sub->add_option("--oracle-enum", o.budget.max_enum_vertices, "largest n for cut enumeration");
  sub->add_option("--oracle-partition", o.budget.max_partition_vertices, "largest n for partition oracles");
  sub->add_option("--oracle-flow", o.budget.max_flow_edges, "largest m for max-flow oracles");
}

void add_sparsifier(CLI::App* sub, Options& o) {
  sub->add_option("--epsilon", o.epsilon, "cut error")->check(CLI::Range(1e-9, 1.0));
  sub->add_option("--cxi", o.cxi, "sampling constant")->check(CLI::PositiveNumber);
  sub->add_option("--c", o.c, "failure exponent")->check(CLI::PositiveNumber);
}

void add_trees(CLI::App* sub, Options& o) {
  sub->add_option("--j", o.j, "core size target")->check(CLI::PositiveNumber);
  sub->add_option("--gamma-init", o.gamma_init, "initial congestion target (0: automatic)");
  sub->add_option("--max-trees", o.max_trees, "trees per weight-update run")->check(CLI::PositiveNumber);
  sub->add_option("--max-path-length", o.max_path_length, "cap on forest depth (0: none)");
}

void add_hierarchy(CLI::App* sub, Options& o, bool with_cxi) {
  sub->add_option("--levels", o.levels, "number of levels L")->check(CLI::PositiveNumber);
  sub->add_option("--samples", o.samples, "children per node")->check(CLI::PositiveNumber);
  sub->add_option("--rebuild-c", o.rebuild_c, "rebuild once a core exceeds c * j_i")->check(CLI::PositiveNumber);
  if (with_cxi)
    sub->add_option("--cxi", o.cxi, "sampling constant of the core sparsifiers")->check(CLI::PositiveNumber);
  sub->add_option("--witness-limit", o.witness_limit, "largest witness printed in full");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dynamic cut sparsifiers, j-trees and cut queries"};
  app.require_subcommand(1, 1);
  Options o;
  auto* sp = app.add_subcommand("sparsify", "maintain a cut sparsifier over the stream");
  add_common(sp, o);
  add_sparsifier(sp, o);
  sp->add_option("--dump", o.dump, "write the final sparsifier as a graph file");
  auto* jt = app.add_subcommand("jtrees", "maintain a j-tree collection over the stream");
  add_common(jt, o);
  add_trees(jt, o);
  auto* hi = app.add_subcommand("hierarchy", "maintain the hierarchy and answer stream queries");
  add_common(hi, o);
  add_trees(hi, o);
  add_hierarchy(hi, o, true);
  hi->add_option("--csv", o.csv, "CSV table of query ratios");
  auto* ve = app.add_subcommand("verify", "replay the stream with oracle checks after every update");
  add_common(ve, o);
  add_sparsifier(ve, o);
  add_trees(ve, o);
  add_hierarchy(ve, o, false);
  ve->add_option("--suite", o.suite, "msf | bundle | sparsifier | jtree | hierarchy | all")
      ->check(CLI::IsMember({"msf", "bundle", "sparsifier", "jtree", "hierarchy", "all"}));
  ve->add_option("--depth", o.bundle_depth, "bundle depth for the bundle suite")->check(CLI::PositiveNumber);
  auto* be = app.add_subcommand("bench", "repeat the replay over several seeds");
  add_common(be, o);
  add_sparsifier(be, o);
  add_trees(be, o);
  add_hierarchy(be, o, false);
  be->add_option("--runs", o.runs, "number of seeds")->check(CLI::PositiveNumber);
  be->add_flag("--timings", o.timings, "include wall-clock times (breaks byte-identical reports)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  int code = kOk;
  Json rep;
  try {
    if (*sp) rep = run_sparsify(o);
    else if (*jt) rep = run_jtrees(o);
    else if (*hi) rep = run_hierarchy(o);
    else if (*ve) rep = run_verify(o, code);
    else rep = run_bench(o);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const InvariantError& e) {
    std::cerr << "invariant violated: " << e.what() << "\n";
    return kInvariant;
  } catch (const OracleMismatch& e) {
    std::cerr << "oracle mismatch: " << e.what() << "\n";
    return kMismatch;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  std::string text = rep.dump(2) + "\n";
  if (o.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(o.out);
    if (!f) {
      std::cerr << "error: cannot write " << o.out << "\n";
      return kUsage;
    }
    f << text;
  }
  return code;
}
