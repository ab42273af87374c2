#include "traintrack_tools/commands.hpp"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <sstream>

#include "traintrack/automaton.hpp"
#include "traintrack/folds.hpp"
#include "traintrack/golden.hpp"
#include "traintrack/relabel.hpp"
#include "traintrack/search.hpp"
#include "traintrack/spectral.hpp"
#include "traintrack/whitehead.hpp"

namespace traintrack::tools {

using nlohmann::json;

namespace {

std::string decimal(const Rational& r, int digits = 12) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << static_cast<long double>(r);
  return os.str();
}

std::string yes(bool b) { return b ? "yes" : "no"; }

json turn_names(const OrientedGraph& g, const std::vector<Turn>& turns) {
  json out = json::array();
  for (Turn t : turns) out.push_back(g.turn_name(t));
  return out;
}

json dir_names(const OrientedGraph& g, const std::vector<Dir>& dirs) {
  json out = json::array();
  for (Dir d : dirs) out.push_back(g.dir_name(d));
  return out;
}

std::string join(const json& names, const std::string& sep = ", ") {
  std::string out;
  for (const auto& n : names) out += (out.empty() ? "" : sep) + n.get<std::string>();
  return out.empty() ? "none" : out;
}

json graph_json(const OrientedGraph& g, const std::vector<std::string>& vertex_names) {
  json edges = json::array();
  for (const auto& e : g.edges()) {
    edges.push_back({{"name", e.name}, {"from", vertex_names.at(e.from)}, {"to", vertex_names.at(e.to)}});
  }
  return {{"vertices", vertex_names}, {"edges", edges}};
}

std::vector<std::string> default_vertex_names(const OrientedGraph& g) {
  std::vector<std::string> out;
  for (int v = 0; v < g.vertex_count(); ++v) out.push_back("v" + std::to_string(v));
  return out;
}

json pnp_json(const OrientedGraph& g, const PnpResult& p) {
  json out{{"status", to_string(p.status)},
           {"bound_length", p.bound_length},
           {"bound_period", p.bound_period},
           {"states", p.states},
           {"skipped_periods", p.skipped_periods}};
  if (p.path) {
    out["path"] = path_name(g, *p.path);
    out["period"] = p.period;
    out["interior_endpoints"] = p.interior_endpoints;
  }
  return out;
}

std::string iw_shape(const IdealWhiteheadGraph& iw) {
  const auto sizes = iw.sizes();
  const auto n = sizes.size();
  if (std::all_of(sizes.begin(), sizes.end(), [](int k) { return k == 3; })) {
    return std::to_string(n) + (n == 1 ? " triangle" : " triangles");
  }
  std::string out = "components of sizes";
  for (std::size_t i = 0; i < n; ++i) out += (i ? ", " : " ") + std::to_string(sizes[i]);
  return out;
}

json schema(const std::string& command) { return {{"schema", "1"}, {"command", command}}; }

}  // namespace

Report certify(const MapDocument& doc, const GlobalOptions& opts) {
  const GraphMap& g = doc.map;
  const OrientedGraph& G = g.source();
  const auto& names = doc.vertex_names;
  Report r;
  json& j = r.json;
  std::ostringstream os;
  j = schema("certify");
  j["graph"] = graph_json(G, names);
  const int rank = graph_invariants(G).rank;
  j["rank"] = rank;
  os << "graph: " << G.vertex_count() << (G.vertex_count() == 1 ? " vertex, " : " vertices, ") << G.edge_count()
     << " edges, rank " << rank << '\n';

  const auto tt = is_train_track(g);
  j["train_track"] = {{"value", tt.train_track},
                      {"illegal_turns", turn_names(G, tt.illegal)},
                      {"closure", turn_names(G, tt.closure.turns)}};
  os << "train track: " << yes(tt.train_track);
  if (tt.witness) {
    j["train_track"]["witness"] = G.turn_name(*tt.witness);
    os << " (an iterate takes the illegal turn " << G.turn_name(*tt.witness) << ")";
  }
  if (tt.untight_edge) {
    j["train_track"]["untight_edge"] = G.edge_name(*tt.untight_edge);
    os << " (image of " << G.edge_name(*tt.untight_edge) << " backtracks)";
  }
  os << "\nillegal turns: " << join(j["train_track"]["illegal_turns"]) << '\n';
  os << "turn closure (" << tt.closure.turns.size() << "): " << join(j["train_track"]["closure"]) << '\n';
  const bool expanding = is_expanding(g);
  j["expanding"] = expanding;
  os << "expanding: " << yes(expanding) << '\n';

  const auto spec = classify_matrix(transition_matrix(g));
  j["spectral"] = {{"matrix", spec.matrix.to_rows()},
                   {"convention", "row i counts occurrences of each edge in the image of edge i"},
                   {"char_poly", spec.char_poly.to_string()},
                   {"char_poly_coefficients", spec.char_poly.coefficient_strings()},
                   {"irreducible", spec.irreducible},
                   {"primitive", spec.primitive},
                   {"perron", spec.perron}};
  os << "transition matrix (row e: edges in the image of e):\n";
  const auto rows = spec.matrix.to_rows();
  for (int e = 0; e < G.edge_count(); ++e) {
    os << "  " << std::setw(4) << std::left << G.edge_name(e) << std::right;
    for (long long x : rows[e]) os << ' ' << x;
    os << '\n';
  }
  os << "char poly: " << spec.char_poly.to_string() << '\n';
  os << "irreducible: " << yes(spec.irreducible);
  if (spec.primitivity_exponent) {
    j["spectral"]["primitivity_exponent"] = *spec.primitivity_exponent;
    os << ", M^" << *spec.primitivity_exponent << " > 0";
  }
  os << '\n';
  if (spec.dominant_root) {
    const auto& root = *spec.dominant_root;
    j["spectral"]["stretch"] = {{"lo", decimal(root.lo)}, {"hi", decimal(root.hi)}, {"approx", root.midpoint()}};
    os << "stretch: " << decimal(root.lo, 6) << " in [" << decimal(root.lo) << ", " << decimal(root.hi) << "]"
       << (spec.perron ? ", Perron" : "") << '\n';
  }

  const auto verdict = is_principal(g, opts.pnp, rank);
  const auto& fic = verdict.fic;
  std::vector<std::string> invariant, disconnected;
  for (int e : fic.invariant_edges) invariant.push_back(G.edge_name(e));
  for (int v : fic.disconnected_vertices) disconnected.push_back(names.at(v));
  j["fic"] = {{"passed", fic.passed()},
              {"irreducible", fic.irreducible},
              {"pf", fic.pf},
              {"local_whitehead_connected", fic.local_whitehead_connected},
              {"disconnected_vertices", disconnected},
              {"invariant_edges", invariant},
              {"failures", fic.failures}};
  if (!invariant.empty()) os << "invariant edge set: {" << join(json(invariant)) << "}\n";
  if (fic.pnp) {
    j["fic"]["pnp"] = pnp_json(G, *fic.pnp);
    os << "PNP search: " << to_string(fic.pnp->status) << " (length " << fic.pnp->bound_length << ", period "
       << fic.pnp->bound_period << ")";
    if (fic.pnp->path) os << ": " << path_name(G, *fic.pnp->path) << " of period " << fic.pnp->period;
    os << '\n';
  }
  os << "local Whitehead graphs connected: " << yes(fic.local_whitehead_connected) << '\n';
  os << "fully irreducible criterion: " << (fic.passed() ? "passed" : "failed") << '\n';
  for (const auto& f : fic.failures) os << "  " << f << '\n';

  if (verdict.iw) {
    json comps = json::array();
    for (const auto& c : verdict.iw->components) {
      comps.push_back({{"vertex", names.at(c.vertex)},
                       {"directions", dir_names(G, c.vertices)},
                       {"turns", turn_names(G, c.edges)},
                       {"triangle", c.is_triangle()}});
    }
    j["ideal_whitehead"] = {{"components", comps},
                            {"shape", iw_shape(*verdict.iw)},
                            {"index", verdict.index.str()},
                            {"expected_index", verdict.expected_index.str()}};
    os << "IW = " << iw_shape(*verdict.iw) << '\n';
    for (const auto& c : comps) os << "  at " << c["vertex"].get<std::string>() << ": " << join(c["turns"]) << '\n';
    os << "index: " << verdict.index.str() << " (3/2 - r = " << verdict.expected_index.str() << ")\n";
  }
  j["principal"] = verdict.principal;
  j["verdict"] = verdict.principal ? "PRINCIPAL" : "NOT PRINCIPAL";
  j["reasons"] = verdict.reasons;
  os << "verdict: " << j["verdict"].get<std::string>() << '\n';
  for (const auto& why : verdict.reasons) os << "  " << why << '\n';
  r.text = os.str();
  r.exit_code = verdict.principal ? ok : not_principal;
  return r;
}

Report decompose(const MapDocument& doc, const GlobalOptions&) {
  const GraphMap& g = doc.map;
  Report r;
  json& j = r.json;
  std::ostringstream os;
  j = schema("decompose");
  const auto seq = stallings_decompose(g);
  j["summary"] = describe(seq);
  j["fold_count"] = seq.fold_count();
  os << describe(seq) << '\n';
  json steps = json::array();
  int i = 0;
  for (const auto& s : seq.steps) {
    if (s.is_fold()) {
      const auto& f = *s.fold;
      const auto& src = f.source();
      steps.push_back({{"kind", "fold"},
                       {"fold_kind", to_string(f.kind)},
                       {"e1", src.dir_name(f.e1)},
                       {"e0", src.dir_name(f.e0)},
                       {"result", graph_json(f.result(), default_vertex_names(f.result()))}});
      os << "  " << ++i << ". " << to_string(f.kind) << " fold " << src.dir_name(f.e1) << " over "
         << src.dir_name(f.e0) << '\n';
    } else {
      const auto name = relabeling_name(s.source(), s.sigma);
      steps.push_back({{"kind", "relabeling"}, {"sigma", name}});
      os << "  " << ++i << ". relabeling " << name << '\n';
    }
  }
  j["steps"] = steps;
  const bool exact = seq.composed() == g;
  j["composes_exactly"] = exact;
  os << "composition reproduces the map: " << yes(exact) << '\n';

  // Bounded look at fold-conjugates: every rotation and every one-fold
  // subdivision, each re-decomposed.
  int best = seq.fold_count();
  std::size_t explored = 0;
  auto consider = [&](const FoldSequence& c) {
    ++explored;
    best = std::min({best, c.fold_count(), stallings_decompose(c.composed()).fold_count()});
  };
  for (int k = 0; k < seq.fold_count(); ++k) {
    consider(rotate(seq, k));
    for (int split = 1; split < subdivision_length(seq, k); ++split) consider(rotate_subdivided(seq, k, split));
  }
  j["fold_count_search"] = {
      {"lower_bound", seq.fold_count() > 0 ? 1 : 0}, {"best_found", best}, {"conjugates_explored", explored}};
  os << "fewest folds among " << explored << " fold-conjugates: " << best << " (lower bound "
     << (seq.fold_count() > 0 ? 1 : 0) << ")\n";
  r.text = os.str();
  r.exit_code = exact ? ok : verification_failed;
  return r;
}

Report automaton_build(int rank, const GlobalOptions& opts, std::string* dot) {
  AutomatonOptions ao;
  ao.jobs = opts.jobs;
  const auto a = build_automaton(rank, ao);
  const auto n = node_i_analysis(a, golden_map(), 4);
  Report r;
  r.json = json::parse(automaton_to_json(a, n));
  r.json["command"] = "automaton build";
  if (dot) *dot = automaton_to_dot(a, n.node_i);
  std::ostringstream os;
  int looped = 0;
  for (const auto& s : a.sccs) looped += s.has_loop;
  os << "classes: " << a.classes.size() << " (" << a.labeled_node_count() << " labeled nodes)\n";
  os << "fold edges: " << a.edges.size() << " (" << a.rejected_folds << " candidate folds rejected)\n";
  os << "SCCs: " << a.sccs.size() << ", " << looped << " with loops\n";
  os << "node I: C" << n.node_i << ", " << n.folds_entering << " folds entering (" << n.self_folds
     << " from itself, " << n.folds_entering_labeled << " labeled)\n";
  os << "M_I: " << n.m_i.size() << " classes in " << n.remaining.size() << " looped SCCs\n";
  if (!n.invariant_label_names.empty()) {
    os << "invariant labels: {" << join(json(n.invariant_label_names)) << "}\n";
  } else {
    os << "invariant labels: none\n";
  }
  os << "M_I loops up to length 4: " << n.loops_checked << ", reducible " << n.loops_reducible << '\n';
  os << "obstruction: " << yes(n.obstruction()) << '\n';
  r.text = os.str();
  r.exit_code = n.obstruction() ? ok : verification_failed;
  return r;
}

Report search_single_fold(int rank, const GlobalOptions& opts) {
  SearchOptions so;
  so.pnp = opts.pnp;
  so.jobs = opts.jobs;
  so.shuffle_seed = opts.seed;
  const auto t0 = std::chrono::steady_clock::now();
  const auto s = single_fold_search(rank, so);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  Report r;
  json& j = r.json;
  j = schema("search single-fold");
  j["rank"] = rank;
  j["counts"] = {{"graphs", s.universe.size()}, {"folds", s.folds},   {"triples", s.triples},
                 {"train_track", s.train_track}, {"irreducible", s.irreducible}, {"fic", s.fic},
                 {"principal", s.principal},     {"intransitive", s.intransitive},
                 {"intransitive_irreducible", s.intransitive_irreducible}};
  std::ostringstream os;
  os << "rank " << rank << " single-fold search\n";
  const std::vector<std::pair<std::string, std::size_t>> table{
      {"graphs", s.universe.size()}, {"folds", s.folds}, {"(graph, fold, sigma)", s.triples},
      {"train track", s.train_track}, {"irreducible", s.irreducible}, {"FIC", s.fic},
      {"principal", s.principal}};
  for (const auto& [name, count] : table) os << "  " << std::setw(22) << std::left << name << count << '\n';
  json classes = json::array();
  const auto g = golden_map();
  for (const auto& members : s.classes) {
    const auto& rep = s.survivors.at(members.front());
    json c{{"members", members.size()},
           {"fold", rep.map.source().dir_name(rep.e1) + " over " + rep.map.source().dir_name(rep.e0)},
           {"sigma", relabeling_name(rep.map.source(), rep.sigma)},
           {"map", print_map_document(rep.map)}};
    if (rank == 3) c["conjugate_to_g"] = find_conjugating_relabeling(rep.map, g).has_value();
    classes.push_back(c);
  }
  j["classes"] = classes;
  j["class_count"] = s.class_count();
  os << s.class_count() << (s.class_count() == 1 ? " class" : " classes") << '\n';
  for (const auto& c : classes) {
    os << "  fold " << c["fold"].get<std::string>() << ", " << c["members"].get<std::size_t>() << " labeled";
    if (c.contains("conjugate_to_g")) os << (c["conjugate_to_g"].get<bool>() ? ", conjugate to g" : "");
    os << '\n';
  }
  os << "time: " << std::fixed << std::setprecision(2) << secs << " s\n";
  r.text = os.str();
  return r;
}

Report verify_theorem_a(const GlobalOptions&) {
  const auto rep = theorem_A_driver(golden_map());
  Report r;
  r.json = schema("verify theorem-a");
  json steps = json::array();
  std::ostringstream os;
  for (const auto& s : rep.steps) {
    steps.push_back({{"name", s.name}, {"passed", s.passed}, {"detail", s.detail}});
    os << (s.passed ? "PASS " : "FAIL ") << s.name << ": " << s.detail << '\n';
  }
  r.json["steps"] = steps;
  r.json["char_poly"] = rep.char_poly.to_string();
  r.json["stretch"] = {{"lo", decimal(rep.stretch.lo)}, {"hi", decimal(rep.stretch.hi)}};
  r.json["passed"] = rep.passed();
  os << (rep.passed() ? "theorem A: all steps pass" : "theorem A: FAILED") << '\n';
  r.text = os.str();
  r.exit_code = rep.passed() ? ok : verification_failed;
  return r;
}

Report verify_theorem_b(const GlobalOptions& opts) {
  Report r;
  r.json = schema("verify theorem-b");
  r.json["ranks"] = json::array();
  std::ostringstream os;
  bool all = true;
  for (int rank : {3, 4, 5}) {
    const auto s = search_single_fold(rank, opts);
    const int count = s.json["class_count"];
    bool passed = rank == 3 ? count == 1 && s.json["classes"][0]["conjugate_to_g"].get<bool>() : count == 0;
    all = all && passed;
    r.json["ranks"].push_back({{"rank", rank}, {"class_count", count}, {"passed", passed}, {"search", s.json}});
    os << (passed ? "PASS " : "FAIL ") << "rank " << rank << ": " << count << (count == 1 ? " class" : " classes")
       << (rank == 3 && count == 1 && passed ? ", conjugate to g" : "") << '\n';
  }
  r.json["passed"] = all;
  os << (all ? "theorem B: verified for ranks 3-5" : "theorem B: FAILED") << '\n';
  r.text = os.str();
  r.exit_code = all ? ok : verification_failed;
  return r;
}

}  // namespace traintrack::tools
