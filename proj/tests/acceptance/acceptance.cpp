// One PASS/FAIL line per acceptance criterion. Exit status 1 when any fails.

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "traintrack/automaton.hpp"
#include "traintrack/folds.hpp"
#include "traintrack/golden.hpp"
#include "traintrack/io.hpp"
#include "traintrack/spectral.hpp"
#include "traintrack/whitehead.hpp"
#include "traintrack_tools/commands.hpp"

using namespace traintrack;
using nlohmann::json;

namespace {

struct Outcome {
  std::vector<std::string> failures;
  std::string note;
  void require(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

const Automaton& automaton() {
  static const Automaton a = build_automaton(3);
  return a;
}

std::string data(const std::string& name) { return std::string(TRAINTRACK_TEST_DATA) + "/" + name; }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome golden_certificate() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const auto doc = read_map_document(data("g.map"));
  const auto r = tools::certify(doc, {});
  const double secs = seconds_since(t0);
  const json& j = r.json;
  o.require(j["train_track"]["value"] == true, "not a train track");
  o.require(j["train_track"]["illegal_turns"] == json::array({"{~c,d}"}), "illegal turns");
  const json closure = {"{a,~d}", "{a,~e}", "{~a,~b}", "{~a,c}", "{b,d}",
                        "{b,e}",  "{~b,c}", "{~c,e}",  "{d,e}",  "{~d,~e}"};
  o.require(j["train_track"]["closure"] == closure, "turn closure");
  // Displayed with one column per source edge.
  const auto display = IntegerMatrix::from_rows(
      {{0, 0, 0, 0, 1}, {1, 0, 0, 0, 0}, {0, 0, 0, 1, 0}, {0, 1, 0, 0, 0}, {0, 0, 1, 1, 0}});
  const auto m = IntegerMatrix::from_rows(j["spectral"]["matrix"].get<std::vector<std::vector<long long>>>());
  o.require(m.transpose() == display, "transition matrix");
  o.require(j["spectral"]["char_poly"] == "x^5 - x - 1", "char poly");
  const double lo = std::stod(j["spectral"]["stretch"]["lo"].get<std::string>());
  const double hi = std::stod(j["spectral"]["stretch"]["hi"].get<std::string>());
  o.require(lo >= 1.16730 && hi <= 1.16731, "stretch interval");
  o.require(matrix_power(m, 17).is_positive() && j["spectral"]["primitivity_exponent"].get<int>() <= 17, "M^17 > 0");
  o.require(j["ideal_whitehead"]["shape"] == "3 triangles", "ideal Whitehead graph");
  o.require(j["ideal_whitehead"]["index"] == "-3/2", "index");
  o.require(j["verdict"] == "PRINCIPAL" && r.exit_code == 0, "verdict");
  o.require(secs < 1.0, "runtime");
  std::ostringstream os;
  os.precision(12);
  os << "stretch in [" << lo << ", " << hi << "], " << secs << " s";
  o.note = os.str();
  return o;
}

Outcome theorem_a() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = tools::verify_theorem_a({});
  for (const auto& s : r.json["steps"]) o.require(s["passed"].get<bool>(), s["name"].get<std::string>());
  o.require(r.json["steps"].size() == 4, "four steps");
  const double secs = seconds_since(t0);
  o.require(secs < 30, "runtime");
  o.note = std::to_string(r.json["steps"].size()) + " steps, " + std::to_string(secs) + " s";
  return o;
}

Outcome theorem_b() {
  Outcome o;
  tools::GlobalOptions opts;
  opts.jobs = 2;
  const auto r = tools::verify_theorem_b(opts);
  for (const auto& rank : r.json["ranks"]) {
    o.require(rank["passed"].get<bool>(), "rank " + std::to_string(rank["rank"].get<int>()));
    o.note += (o.note.empty() ? "" : ", ") + std::string("rank ") + std::to_string(rank["rank"].get<int>()) + ": " +
              std::to_string(rank["class_count"].get<int>());
  }
  return o;
}

Outcome automaton_soundness() {
  Outcome o;
  const auto& a = automaton();
  const auto g = golden_map();
  const auto match = decomposition_to_loop(a, stallings_decompose(g));
  o.require(match && match->loop.steps.size() == 1 && loop_to_map(a, match->loop) == relabel(g, match->tau),
            "(i) g loop");
  int with_fic = 0;
  for (const auto& s : fic_loops_by_scc(a, 3)) with_fic += s.fic_passing > 0;
  o.require(with_fic == 1, "(ii) one SCC with an FIC loop");
  const auto n = node_i_analysis(a, g, 4);
  o.require(n.obstruction(), "(iii) M_I loops reducible");
  const auto t = check_transport(a, 3);
  o.require(t.passed() && t.contained == t.loops, "(iv) transport");
  o.note = std::to_string(n.loops_checked) + " M_I loops, " + std::to_string(t.loops) + " transport loops";
  return o;
}

// The loop with relabelings left in place.
FoldSequence raw_sequence(const Automaton& a, const AutomatonLoop& loop) {
  FoldSequence seq;
  for (const auto& st : loop.steps) {
    const FoldEdge& e = a.edges[st.edge];
    const Relabeling sigma = st.automorphism.size() ? st.automorphism.after(e.sigma) : e.sigma;
    seq.steps.push_back(fold_step(e.fold));
    seq.steps.push_back(relabel_step(e.fold.result(), sigma, a.classes[e.to].rep.graph));
  }
  return seq;
}

void round_trip(Outcome& o, const std::string& name, const GraphMap& h, const FoldSequence& raw) {
  const auto seq = stallings_decompose(h);
  o.require(seq.is_clean() && seq.composed() == h, name + ": decompose then compose");
  const auto poly = char_poly(transition_matrix(h));
  const auto sizes = is_principal(h).iw->sizes();
  for (int k = 1; k < seq.fold_count(); ++k) {
    const auto rh = rotate(seq, k).composed();
    const auto v = is_principal(rh);
    o.require(char_poly(transition_matrix(rh)) == poly && v.iw && v.iw->sizes() == sizes,
              name + ": rotation " + std::to_string(k));
  }
  o.require(push_permutations(raw).composed() == raw.composed(), name + ": push_permutations");
}

Outcome round_trips() {
  Outcome o;
  const auto& a = automaton();
  const auto g = golden_map();
  const auto g_seq = stallings_decompose(g);
  for (int p = 1; p <= 3; ++p) {
    // Powers of g with the relabeling after every fold.
    FoldSequence raw = g_seq;
    for (int i = 1; i < p; ++i) raw = concat(raw, g_seq);
    round_trip(o, "g^" + std::to_string(p), power(g, p), raw);
  }
  std::vector<int> looped;
  for (const auto& s : a.sccs) {
    if (s.has_loop) looped = s.classes;
  }
  auto loops = enumerate_loops(a, 4, looped);
  std::mt19937_64 rng(20261016);
  std::shuffle(loops.begin(), loops.end(), rng);
  int taken = 0;
  std::size_t tried = 0;
  for (const auto& loop : loops) {
    if (taken == 50) break;
    ++tried;
    const auto h = loop_to_map(a, loop);
    if (!is_train_track(h).train_track || !is_irreducible(transition_matrix(h))) continue;
    if (!is_principal(h).principal) continue;
    round_trip(o, "loop " + std::to_string(taken), h, raw_sequence(a, loop));
    ++taken;
  }
  o.require(taken == 50, "50 principal loops");
  o.note = std::to_string(taken) + " principal loops from " + std::to_string(tried) + " shuffled loops";
  return o;
}

Outcome negative_controls() {
  Outcome o;
  const auto psi = tools::certify(read_map_document(data("psi.map")), {});
  o.require(psi.json["train_track"]["value"] == false && psi.json["train_track"].contains("witness"),
            "psi has a witness");
  o.require(psi.exit_code != 0, "psi not principal");
  const auto block = tools::certify(read_map_document(data("block.map")), {});
  o.require(block.json["fic"]["irreducible"] == false, "block map reducible");
  o.require(block.json["fic"]["invariant_edges"] == json::array({"p"}), "invariant edge set");
  o.note = "psi witness " + psi.json["train_track"].value("witness", std::string("?")) + ", invariant edges {" +
           (block.json["fic"]["invariant_edges"].empty() ? std::string()
                                                          : block.json["fic"]["invariant_edges"][0].get<std::string>()) +
           "}";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"golden certificate", golden_certificate}, {"theorem A driver", theorem_a},
      {"theorem B search", theorem_b},           {"automaton soundness", automaton_soundness},
      {"round trips", round_trips},              {"negative controls", negative_controls},
  };
  int failed = 0;
  int i = 0;
  for (const auto& [name, check] : criteria) {
    ++i;
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o.failures.push_back(std::string("exception: ") + e.what());
    }
    const bool ok = o.failures.empty();
    failed += !ok;
    std::cout << (ok ? "PASS" : "FAIL") << ' ' << i << ' ' << name;
    if (!o.note.empty()) std::cout << " (" << o.note << ")";
    for (const auto& f : o.failures) std::cout << "\n    " << f;
    std::cout << std::endl;
  }
  return failed ? 1 : 0;
}
