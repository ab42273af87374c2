#include <gtest/gtest.h>

#include <random>

#include "test_maps.hpp"
#include "traintrack/folds.hpp"
#include "traintrack/spectral.hpp"
#include "traintrack/whitehead.hpp"

using namespace traintrack;
using namespace tt_test;

namespace {

enum { a, b, c, d, e };

IntPolynomial stripped_poly(const GraphMap& g) { return strip_zero_roots(char_poly(transition_matrix(g))); }

std::vector<int> iw_sizes(const GraphMap& g) {
  auto s = ideal_whitehead(g).sizes();
  std::sort(s.begin(), s.end());
  return s;
}

// Elementary automorphism of the 3-rose: petal i -> petal i followed by petal j (or ~j).
GraphMap nielsen(int i, Dir j) {
  const auto R = rose(3);
  std::vector<EdgePath> imgs;
  for (int k = 0; k < 3; ++k) {
    if (k == i) {
      imgs.push_back(make_path(R, {F(k), j}));
    } else {
      imgs.push_back(make_path(R, {F(k)}));
    }
  }
  return GraphMap(R, R, {0}, imgs);
}

GraphMap random_automorphism(std::mt19937& rng, int moves) {
  GraphMap out = GraphMap::identity(rose(3));
  for (int m = 0; m < moves; ++m) {
    const int i = static_cast<int>(rng() % 3);
    int k = static_cast<int>(rng() % 2);
    k = k >= i ? k + 1 : k;
    out = compose(nielsen(i, Dir::forward(k).oriented(rng() & 1)), out);
  }
  return out;
}

}  // namespace

TEST(Folds, GIsOneProperFoldThenRelabeling) {
  const auto g = g_map();
  const auto seq = stallings_decompose(g);
  ASSERT_TRUE(seq.is_clean());
  ASSERT_EQ(seq.fold_count(), 1);
  const FoldMove& f = *seq.folds().front();
  EXPECT_EQ(f.kind, FoldMove::Kind::proper_full);
  EXPECT_EQ(f.e1, F(d));
  EXPECT_EQ(f.e0, B(c));
  // d -> ~c d, everything else fixed
  EXPECT_EQ(f.map.edge_image(d).dirs, (std::vector<Dir>{B(c), F(d)}));
  for (int x : {a, b, c, e}) EXPECT_EQ(f.map.edge_image(x).dirs, std::vector<Dir>{F(x)});

  const std::vector<Dir> sigma{B(b), B(d), F(e), B(c), F(a)};
  EXPECT_EQ(seq.final_relabeling().images(), sigma);
  EXPECT_EQ(compose(relabeling_map(f.result(), seq.final_relabeling(), g.target()), f.map), g);
  EXPECT_EQ(seq.composed(), g);
  EXPECT_EQ(describe(seq), "1 fold (d over ~c), then relabeling");
}

TEST(Folds, GSquaredHasTwoFolds) {
  const auto g2 = power(g_map(), 2);
  const auto seq = stallings_decompose(g2);
  EXPECT_TRUE(seq.is_clean());
  EXPECT_EQ(seq.fold_count(), 2);
  EXPECT_EQ(seq.composed(), g2);
}

TEST(Folds, AutomorphismNeedsNoFolds) {
  const auto G = g_graph();
  for (const auto& sigma : automorphisms(G)) {
    const auto seq = stallings_decompose(relabeling_map(G, sigma));
    EXPECT_EQ(seq.fold_count(), 0);
    EXPECT_EQ(seq.final_relabeling(), sigma);
  }
}

TEST(Folds, ProperFullFoldOnRose) {
  const auto R = rose(2);
  const auto f = apply_fold(R, F(1), F(0), FoldMove::Kind::proper_full);
  EXPECT_EQ(f.result(), R);
  EXPECT_EQ(f.map.edge_image(1).dirs, (std::vector<Dir>{F(0), F(1)}));
  const auto g = apply_fold(R, B(1), F(0), FoldMove::Kind::proper_full);
  EXPECT_EQ(g.map.edge_image(1).dirs, (std::vector<Dir>{F(1), B(0)}));
}

TEST(Folds, CompleteFoldMergesEndpoints) {
  // theta graph: three edges from 0 to 1
  const OrientedGraph theta(2, {{"p", 0, 1}, {"q", 0, 1}, {"r", 0, 1}});
  const auto f = apply_fold(theta, F(0), F(2), FoldMove::Kind::complete);
  EXPECT_EQ(f.result().vertex_count(), 2);
  EXPECT_EQ(f.result().edge_count(), 2);
  EXPECT_EQ(f.map.edge_image(0).dirs, std::vector<Dir>{F(1)});
  EXPECT_EQ(f.map.edge_image(1).dirs, std::vector<Dir>{F(0)});
  EXPECT_EQ(f.map.edge_image(2).dirs, std::vector<Dir>{F(1)});
  EXPECT_EQ(f.edge_origin, (std::vector<int>{1, 2}));

  // two edges of a barbell-like graph with distinct termini: vertices merge
  const OrientedGraph v(3, {{"p", 0, 1}, {"q", 0, 2}, {"r", 1, 2}, {"t", 1, 1}});
  const auto h = apply_fold(v, F(1), F(0), FoldMove::Kind::complete);
  EXPECT_EQ(h.result().vertex_count(), 2);
  EXPECT_EQ(h.map.vertex_image(1), h.map.vertex_image(2));
  EXPECT_EQ(h.result().euler_characteristic(), v.euler_characteristic());
}

TEST(Folds, PartialFoldAddsVertexAndEdge) {
  const auto R = rose(2);
  const auto f = apply_fold(R, F(1), F(0), FoldMove::Kind::partial);
  EXPECT_EQ(f.result().vertex_count(), 2);
  EXPECT_EQ(f.result().edge_count(), 3);
  EXPECT_EQ(f.new_edge, 2);
  EXPECT_EQ(f.result().edge_name(2), "s");
  EXPECT_EQ(f.map.edge_image(0).dirs, (std::vector<Dir>{F(2), F(0)}));
  EXPECT_EQ(f.map.edge_image(1).dirs, (std::vector<Dir>{F(2), F(1)}));
  EXPECT_EQ(f.result().origin(F(0)), f.new_vertex);
  EXPECT_EQ(f.result().origin(F(1)), f.new_vertex);
  EXPECT_EQ(f.edge_origin, (std::vector<int>{0, 1, -1}));
}

TEST(Folds, FoldPreconditions) {
  const auto G = g_graph();
  EXPECT_THROW(apply_fold(G, F(a), F(a), FoldMove::Kind::partial), StructuralError);
  EXPECT_THROW(apply_fold(G, F(a), F(c), FoldMove::Kind::partial), StructuralError);
  EXPECT_THROW(apply_fold(G, F(9), F(a), FoldMove::Kind::partial), StructuralError);
}

TEST(Folds, NonEquivalenceIsRejected) {
  const auto R = rose(2);
  const GraphMap collapse(R, R, {0}, {make_path(R, {F(0)}), make_path(R, {F(0)})});
  EXPECT_THROW(stallings_decompose(collapse), DecompositionError);
  const GraphMap square(R, R, {0}, {make_path(R, {F(0), F(0)}), make_path(R, {F(1)})});
  EXPECT_THROW(stallings_decompose(square), DecompositionError);
}

TEST(Folds, RandomAutomorphismsDecompose) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const auto phi = random_automorphism(rng, 1 + trial % 7);
    const auto seq = stallings_decompose(phi);
    EXPECT_TRUE(seq.is_clean());
    EXPECT_EQ(seq.composed(), phi);
  }
}

TEST(Folds, PushPermutationsKeepsMap) {
  const auto seq = stallings_decompose(g_map());
  const auto raw = concat(seq, seq);
  EXPECT_FALSE(raw.is_clean());
  const auto pushed = push_permutations(raw);
  EXPECT_TRUE(pushed.is_clean());
  EXPECT_EQ(pushed.fold_count(), 2);
  EXPECT_EQ(pushed.composed(), power(g_map(), 2));
}

TEST(Folds, ComposePowerMatchesDirectPower) {
  const auto g = g_map();
  const auto seq = stallings_decompose(g);
  const auto M = transition_matrix(g);
  for (int p = 1; p <= 4; ++p) {
    const auto sp = compose_power(seq, p);
    EXPECT_EQ(sp.fold_count(), p);
    EXPECT_EQ(sp.composed(), power(g, p));
    EXPECT_EQ(transition_matrix(sp.composed()), matrix_power(M, p));
  }
}

TEST(Folds, RotationsPreserveInvariants) {
  const auto g = g_map();
  for (int p : {1, 2, 3}) {
    const auto gp = power(g, p);
    const auto seq = compose_power(stallings_decompose(g), p);
    for (int j = 0; j <= seq.fold_count(); ++j) {
      const auto rot = rotate(seq, j);
      EXPECT_TRUE(rot.is_clean());
      const auto h = rot.composed();
      EXPECT_TRUE(h.is_self_map());
      EXPECT_EQ(stripped_poly(h), stripped_poly(gp));
      EXPECT_EQ(iw_sizes(h), iw_sizes(gp));
    }
  }
}

TEST(Folds, RotateFullCircleIsConjugate) {
  const auto seq = compose_power(stallings_decompose(g_map()), 2);
  const auto back = rotate(rotate(seq, 1), 1);
  EXPECT_TRUE(find_conjugating_relabeling(back.composed(), seq.composed()).has_value());
}

TEST(Folds, SubdivisionOfGIsNotRealizable) {
  const auto seq = stallings_decompose(g_map());
  EXPECT_EQ(subdivision_length(seq, 0), 1);
  EXPECT_EQ(subdivision_length(compose_power(seq, 4), 2), 1);
  EXPECT_THROW(rotate_subdivided(seq, 0, 1), StructuralError);
  EXPECT_THROW(rotate_subdivided(seq, 0, 0), StructuralError);
}

TEST(Folds, SubdividedRotationsOfPowers) {
  const auto g = g_map();
  int checked = 0;
  // the folded segment first maps over two edges at the fifth power
  for (int p : {5, 6}) {
    const auto gp = power(g, p);
    const auto seq = compose_power(stallings_decompose(g), p);
    for (int j = 0; j < seq.fold_count(); ++j) {
      const int q = subdivision_length(seq, j);
      for (int split = 1; split < q; ++split) {
        const auto sub = rotate_subdivided(seq, j, split);
        const auto h = sub.composed();
        EXPECT_EQ(h.source().vertex_count(), gp.source().vertex_count() + 1);
        EXPECT_EQ(stripped_poly(h), stripped_poly(gp));
        EXPECT_EQ(iw_sizes(h), iw_sizes(gp));
        ++checked;
      }
    }
  }
  EXPECT_GT(checked, 0);
}
