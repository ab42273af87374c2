#include <gtest/gtest.h>

#include <random>
#include <set>

#include "test_maps.hpp"
#include "traintrack/spectral.hpp"
#include "traintrack/train_track.hpp"

using namespace traintrack;
using namespace tt_test;

namespace {

enum { a, b, c, d, e };

std::vector<Turn> g_turns() {
  std::vector<Turn> t = {{F(e), B(c)}, {F(a), B(e)}, {B(b), B(a)}, {F(d), F(b)}, {B(e), B(d)},
                         {B(a), F(c)}, {F(b), F(e)}, {B(d), F(a)}, {F(c), B(b)}, {F(e), F(d)}};
  std::sort(t.begin(), t.end());
  return t;
}

GraphMap fibonacci() {
  const auto r = rose(2);
  return GraphMap(r, r, {0}, {make_path(r, {F(0), F(1)}), make_path(r, {F(0)})});
}

// All tight paths of length <= max_len between vertices, with exactly one
// illegal turn, fixed up to tightening by g^k for some k <= K.
std::vector<EdgePath> brute_force_pnps(const GraphMap& g, int max_len, int K) {
  const auto& G = g.source();
  const auto illegal = illegal_turns(g);
  std::vector<GraphMap> powers{g};
  for (int k = 2; k <= K; ++k) powers.push_back(compose(g, powers.back()));
  std::vector<EdgePath> found;
  std::vector<EdgePath> frontier;
  for (int v = 0; v < G.vertex_count(); ++v) frontier.push_back({v, {}});
  for (int len = 1; len <= max_len; ++len) {
    std::vector<EdgePath> next;
    for (const auto& p : frontier) {
      const int at = path_end(G, p);
      for (Dir x : G.directions_at(at)) {
        if (!p.dirs.empty() && x == p.dirs.back().inverse()) continue;
        EdgePath q = p;
        q.dirs.push_back(x);
        next.push_back(q);
        int n_illegal = 0;
        for (Turn t : taken_turns(q)) n_illegal += std::binary_search(illegal.begin(), illegal.end(), t);
        if (n_illegal != 1) continue;
        for (const auto& gk : powers) {
          if (tighten(G, gk.image(q)) == q) {
            found.push_back(q);
            break;
          }
        }
      }
    }
    frontier = std::move(next);
  }
  return found;
}

}  // namespace

TEST(TurnClosure, GMatchesTurnList) {
  EXPECT_EQ(taken_turn_closure(g_map()).turns, g_turns());
}

TEST(TurnClosure, IdentityIsEmpty) {
  EXPECT_TRUE(taken_turn_closure(GraphMap::identity(g_graph())).turns.empty());
}

TEST(TurnClosure, PsiReachesDegenerate) {
  const auto cl = taken_turn_closure(psi_map());
  enum { x, y, z };
  // {~z,~x} -> {x,~y} -> {y,~z} -> {z,x} -> {z,y} -> degenerate
  const std::vector<Turn> chain = {{B(z), B(x)}, {F(x), B(y)}, {F(y), B(z)}, {F(z), F(x)}, {F(z), F(y)}};
  for (Turn t : chain) EXPECT_TRUE(cl.contains(t)) << "missing turn";
  EXPECT_TRUE(std::binary_search(cl.collapsing.begin(), cl.collapsing.end(), Turn(F(z), F(y))));
}

TEST(TurnClosure, ContainsTurnsOfIteratesAndIsInvariant) {
  for (const auto& g : {g_map(), fibonacci()}) {
    const auto cl = taken_turn_closure(g);
    const auto dg = direction_map(g);
    for (Turn t : cl.turns) {
      const Turn img(dg[t.first().code()], dg[t.second().code()]);
      EXPECT_TRUE(img.degenerate() || cl.contains(img));
    }
    GraphMap gk = g;
    for (int k = 1; k <= 5; ++k) {
      for (const auto& p : gk.edge_images()) {
        for (Turn t : taken_turns(p)) EXPECT_TRUE(cl.contains(t));
      }
      gk = compose(g, gk);
    }
  }
}

TEST(IllegalTurns, G) {
  EXPECT_EQ(illegal_turns(g_map()), (std::vector<Turn>{Turn(F(d), B(c))}));
}

TEST(IllegalTurns, Identity) {
  EXPECT_TRUE(illegal_turns(GraphMap::identity(g_graph())).empty());
}

TEST(IllegalTurns, PsiContainsWitness) {
  const auto il = illegal_turns(psi_map());
  EXPECT_TRUE(std::binary_search(il.begin(), il.end(), Turn(B(2), B(0))));
}

TEST(TrainTrack, GIsTrainTrack) {
  const auto cert = is_train_track(g_map());
  EXPECT_TRUE(cert.train_track);
  EXPECT_FALSE(cert.witness);
  EXPECT_TRUE(cert.expanding);
  EXPECT_EQ(cert.illegal.size(), 1u);
}

TEST(TrainTrack, PsiIsNot) {
  const auto cert = is_train_track(psi_map());
  EXPECT_FALSE(cert.train_track);
  ASSERT_TRUE(cert.witness);
  EXPECT_EQ(*cert.witness, Turn(B(2), B(0)));
}

TEST(TrainTrack, IdentityVacuously) {
  const auto cert = is_train_track(GraphMap::identity(g_graph()));
  EXPECT_TRUE(cert.train_track);
  EXPECT_FALSE(cert.expanding);
}

TEST(TrainTrack, UntightImage) {
  const auto r = rose(2);
  const GraphMap h(r, r, {0}, {make_path(r, {F(0), F(1), B(1)}), make_path(r, {F(0)})});
  const auto cert = is_train_track(h);
  EXPECT_FALSE(cert.train_track);
  EXPECT_EQ(cert.untight_edge, 0);
}

TEST(TrainTrack, PowersStayTight) {
  for (const auto& g : {g_map(), fibonacci()}) {
    ASSERT_TRUE(is_train_track(g).train_track);
    GraphMap gk = g;
    for (int k = 1; k <= 6; ++k) {
      for (int i = 0; i < g.source().edge_count(); ++i) {
        EXPECT_EQ(tighten(g.source(), gk.image(Dir::forward(i))), gk.edge_image(i)) << "k=" << k;
      }
      // Iterating without intermediate tightening reaches the same paths.
      gk = compose(g, gk);
    }
  }
}

TEST(Expanding, G) { EXPECT_TRUE(is_expanding(g_map())); }

TEST(Expanding, Identity) { EXPECT_FALSE(is_expanding(GraphMap::identity(g_graph()))); }

TEST(Expanding, GrowingEdgeFeedingPermutation) {
  // a -> a b, b -> b: a grows linearly, b does not.
  const auto r = rose(2);
  const GraphMap h(r, r, {0}, {make_path(r, {F(0), F(1)}), make_path(r, {F(1)})});
  EXPECT_FALSE(is_expanding(h));
  const auto m = transition_matrix(h);
  EXPECT_EQ(matrix_power(m, 64).at(1, 1), 1);
}

TEST(Expanding, AgreesWithRowSums) {
  const auto r = rose(2);
  const std::vector<GraphMap> maps = {
      g_map(), fibonacci(), GraphMap::identity(g_graph()),
      GraphMap(r, r, {0}, {make_path(r, {F(1)}), make_path(r, {F(0)})}),
      GraphMap(r, r, {0}, {make_path(r, {F(0), F(0)}), make_path(r, {F(1)})}),
  };
  for (const auto& h : maps) {
    const auto m = matrix_power(transition_matrix(h), 64);
    bool all_large = true;
    for (int i = 0; i < m.size(); ++i) {
      BigInt sum = 0;
      for (int j = 0; j < m.size(); ++j) sum += m.at(i, j);
      all_large = all_large && sum > 64;
    }
    EXPECT_EQ(is_expanding(h), all_large);
  }
}

TEST(Pnp, NoneForG) {
  PnpOptions opts;
  opts.max_length = 50;
  opts.max_period = 9;
  const auto res = pnp_bounded_search(g_map(), opts);
  EXPECT_EQ(res.status, PnpResult::Status::none_up_to_bound);
  EXPECT_EQ(res.bound_period, 9);
  EXPECT_TRUE(res.skipped_periods.empty());
}

TEST(Pnp, DefaultPeriodIsLcm) {
  const auto res = pnp_bounded_search(g_map());
  EXPECT_EQ(res.bound_period, 9);
  EXPECT_EQ(res.bound_length, 50);
}

TEST(Pnp, IdentityRejected) {
  EXPECT_THROW(pnp_bounded_search(GraphMap::identity(g_graph())), DomainError);
}

TEST(Pnp, PositiveControl) {
  const auto g = fibonacci();
  const auto brute = brute_force_pnps(g, 4, 4);
  ASSERT_FALSE(brute.empty());
  PnpOptions opts;
  opts.max_length = 8;
  opts.max_period = 4;
  const auto res = pnp_bounded_search(g, opts);
  ASSERT_EQ(res.status, PnpResult::Status::found);
  ASSERT_TRUE(res.path);
  EXPECT_NE(std::find(brute.begin(), brute.end(), *res.path), brute.end());
  const auto gk = power(g, static_cast<int>(res.period));
  EXPECT_EQ(tighten(g.source(), gk.image(*res.path)), *res.path);
}

TEST(Pnp, BruteForceAgreesForG) {
  EXPECT_TRUE(brute_force_pnps(g_map(), 7, 9).empty());
}

TEST(Fic, GPasses) {
  const auto r = fic_check(g_map());
  EXPECT_TRUE(r.passed()) << (r.failures.empty() ? "" : r.failures.front());
  EXPECT_TRUE(r.irreducible);
  EXPECT_TRUE(r.pf);
  EXPECT_TRUE(r.local_whitehead_connected);
  EXPECT_TRUE(r.pnp_clean);
}

TEST(Fic, IdentityFails) {
  const auto r = fic_check(GraphMap::identity(g_graph()));
  EXPECT_FALSE(r.irreducible);
  EXPECT_FALSE(r.pf);
  EXPECT_FALSE(r.passed());
}

TEST(Fic, BlockReducible) {
  // Two loops at different vertices joined by an edge; each loop doubles.
  const OrientedGraph G(2, {{"p", 0, 0}, {"q", 1, 1}, {"s", 0, 1}});
  const GraphMap h(G, G, {0, 1},
                   {make_path(G, {F(0), F(0)}), make_path(G, {F(1), F(1)}), make_path(G, {F(2)})});
  const auto r = fic_check(h);
  EXPECT_FALSE(r.irreducible);
  EXPECT_EQ(r.invariant_edges, std::vector<int>{0});
}

// Every fully irreducible class in rank 2 is geometric, so each irreducible
// train track map on the 2-rose has a periodic Nielsen path. Most of these
// have endpoints inside edges.
TEST(Pnp, RankTwoTrainTracksAlwaysHaveOne) {
  const auto R = rose(2);
  std::vector<GraphMap> moves;
  for (int i = 0; i < 2; ++i) {
    for (Dir y : {F(1 - i), B(1 - i)}) {
      for (bool right : {true, false}) {
        std::vector<EdgePath> img{make_path(R, {F(0)}), make_path(R, {F(1)})};
        img[i] = right ? make_path(R, {F(i), y}) : make_path(R, {y, F(i)});
        moves.emplace_back(R, R, std::vector<int>{0}, img);
      }
    }
  }
  std::mt19937 rng(7);
  int checked = 0, interior = 0;
  for (int trial = 0; trial < 1500; ++trial) {
    GraphMap g = moves[rng() % moves.size()];
    const int n = 1 + static_cast<int>(rng() % 6);
    for (int k = 0; k < n; ++k) g = compose(moves[rng() % moves.size()], g);
    if (!is_train_track(g).train_track || !is_expanding(g) || !is_irreducible(transition_matrix(g))) continue;
    PnpOptions opts;
    opts.max_period = 12;
    const auto res = pnp_bounded_search(g, opts);
    ASSERT_EQ(res.status, PnpResult::Status::found);
    ++checked;
    interior += res.interior_endpoints;
  }
  EXPECT_GT(checked, 100);
  EXPECT_GT(interior, 0);
}
