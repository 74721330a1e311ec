#include <gtest/gtest.h>

#include <functional>
#include <random>

#include "oracles.hpp"

using namespace lincat;
namespace fx = lincat::fixtures;

// Hand Tietze reductions for the two presentations of the same quiver
// (arrows x -> y: alpha, beta or a, b; y -> z: gamma, delta or c, d),
// spanning tree {alpha, gamma} resp. {a, c} from x:
//
//   R  = {gamma alpha - delta beta, gamma beta - delta alpha}
//        relators alpha, gamma, gamma alpha beta^-1 delta^-1, gamma beta alpha^-1 delta^-1
//        kill alpha, gamma:  beta^-1 delta^-1 = 1  and  beta delta^-1 = 1
//        so delta = beta^-1 = beta, leaving < beta | beta^2 >, cyclic of order 2.
//
//   R' = {c a, c b - d a}
//        c a is a single path and contributes nothing; relators a, c, c b a^-1 d^-1
//        kill a, c:  b d^-1 = 1, so d = b, leaving < b | >, infinite cyclic.

namespace {

// |Hom(G, H)| by trying every assignment of the generators.
std::size_t count_homs(const FPGroup& g, const FiniteGroup& h) {
  const std::size_t k = g.generators.size();
  std::vector<std::size_t> img(k, 0);
  std::size_t count = 0;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == k) {
      for (const auto& r : g.relators) {
        std::size_t v = h.identity();
        for (int l : r) {
          std::size_t x = img[static_cast<std::size_t>(std::abs(l) - 1)];
          v = h.mul(v, l > 0 ? x : h.inv(x));
        }
        if (v != h.identity()) return;
      }
      ++count;
      return;
    }
    for (std::size_t x = 0; x < h.size(); ++x) {
      img[i] = x;
      rec(i + 1);
    }
  };
  rec(0);
  return count;
}

std::vector<std::vector<std::size_t>> all_spanning_trees(const QuiverPresentation& p) {
  std::vector<std::vector<std::size_t>> out;
  const std::size_t m = p.arrows.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
    std::vector<std::size_t> t;
    for (std::size_t a = 0; a < m; ++a) {
      if (mask >> a & 1) t.push_back(a);
    }
    if (is_spanning_tree(p, t)) out.push_back(t);
  }
  return out;
}

FPGroup fp(std::vector<std::string> gens, std::vector<Word> rels) { return FPGroup{std::move(gens), std::move(rels)}; }

}  // namespace

TEST(Pi1, GdlpPresentationR) {
  auto p = fx::gdlp_presentation();
  Pi1Presentation r = pi1_presentation(p, p.vertex_index("x"));
  EXPECT_TRUE(r.warnings.empty());
  EXPECT_EQ(r.group.generators.size(), 4u);
  EXPECT_EQ(r.group.relators.size(), 4u);
  EXPECT_EQ(bounded_order(r.group, 1000), std::optional<std::size_t>(2));
  EXPECT_EQ(abelianization(r.group), (std::vector<BigInt>{2}));
  FPGroup s = simplify(r.group);
  ASSERT_EQ(s.generators.size(), 1u);
  ASSERT_EQ(s.relators.size(), 1u);
  EXPECT_EQ(s.relators[0].size(), 2u);
  EXPECT_EQ(s.relators[0][0], s.relators[0][1]);
  EXPECT_EQ(count_homs(r.group, FiniteGroup::cyclic(4)), 2u);
  EXPECT_EQ(count_homs(r.group, FiniteGroup::cyclic(3)), 1u);
}

TEST(Pi1, GdlpPresentationRPrime) {
  auto p = fx::gdlp_alt_presentation();
  Pi1Presentation r = pi1_presentation(p, p.vertex_index("x"));
  EXPECT_EQ(r.group.relators.size(), 3u);
  EXPECT_FALSE(bounded_order(r.group, 2000).has_value());
  EXPECT_EQ(abelianization(r.group), (std::vector<BigInt>{0}));
  FPGroup s = simplify(r.group);
  EXPECT_EQ(s.generators.size(), 1u);
  EXPECT_TRUE(s.relators.empty());
  // Z maps onto every cyclic group.
  for (std::size_t n : {2, 3, 5}) EXPECT_EQ(count_homs(r.group, FiniteGroup::cyclic(n)), n);
}

TEST(Pi1, SameCategoryDifferentGroups) {
  // Both presentations give four-dimensional hom(x, z)-free categories of the
  // same shape; the groups still differ.
  auto b = present(fx::gdlp_presentation(), FieldSpec::prime(2));
  auto b2 = present(fx::gdlp_alt_presentation(), FieldSpec::prime(2));
  for (std::size_t x = 0; x < 3; ++x) {
    for (std::size_t y = 0; y < 3; ++y) EXPECT_EQ(b.category->dim(x, y), b2.category->dim(x, y));
  }
  auto g1 = pi1_presentation(fx::gdlp_presentation(), 0).group;
  auto g2 = pi1_presentation(fx::gdlp_alt_presentation(), 0).group;
  EXPECT_NE(abelianization(g1), abelianization(g2));
}

TEST(Pi1, FreeGroupRank) {
  // No relations: free of rank arrows - vertices + 1.
  struct Case {
    std::string text;
    std::size_t rank;
  };
  std::vector<Case> cases{{"vertex s t\narrow a: s -> t\narrow b: s -> t\n", 1},
                          {"vertex s t\narrow a: s -> t\narrow b: s -> t\narrow c: s -> t\n", 2},
                          {"vertex a b c\narrow f: a -> b\narrow g: b -> c\n", 0},
                          {"vertex o\narrow x: o -> o\narrow y: o -> o\n", 2}};
  for (const auto& [text, rank] : cases) {
    auto p = QuiverPresentation::parse_text(text);
    auto g = pi1_presentation(p, 0).group;
    auto ab = abelianization(g);
    if (rank == 0) {
      EXPECT_EQ(ab, (std::vector<BigInt>{1}));
      EXPECT_EQ(bounded_order(g, 100), std::optional<std::size_t>(1));
    } else {
      EXPECT_EQ(ab, std::vector<BigInt>(rank, 0));
      EXPECT_FALSE(bounded_order(g, 500).has_value());
    }
    EXPECT_EQ(simplify(g).generators.size(), rank);
  }
}

TEST(Pi1, MonomialRelationsDoNotMatter) {
  auto base = QuiverPresentation::parse_text(fx::gdlp_text);
  auto more = QuiverPresentation::parse_text(std::string(fx::gdlp_text) + "rel gamma*alpha\n");
  auto g1 = pi1_presentation(base, 0).group;
  auto g2 = pi1_presentation(more, 0).group;
  EXPECT_EQ(g1, g2);
}

TEST(Pi1, DependentRelationsWarn) {
  auto p = QuiverPresentation::parse_text(std::string(fx::gdlp_text) + "rel gamma*alpha - delta*beta\n");
  EXPECT_FALSE(pi1_presentation(p, 0).warnings.empty());
}

TEST(Pi1, IndependentOfSpanningTreeAndBase) {
  for (const char* text : {fx::gdlp_text, fx::gdlp_alt_text}) {
    auto p = QuiverPresentation::parse_text(text);
    const auto trees = all_spanning_trees(p);
    ASSERT_EQ(trees.size(), 4u);
    auto ref = pi1_presentation(p, 0).group;
    const auto ab = abelianization(ref);
    const auto order = bounded_order(ref, 1000);
    for (const auto& t : trees) {
      for (std::size_t b0 = 0; b0 < p.vertices.size(); ++b0) {
        auto g = pi1_presentation(p, b0, t).group;
        EXPECT_EQ(abelianization(g), ab);
        EXPECT_EQ(bounded_order(g, 1000), order);
        for (std::size_t n : {2, 3, 4}) EXPECT_EQ(count_homs(g, FiniteGroup::cyclic(n)), count_homs(ref, FiniteGroup::cyclic(n)));
        EXPECT_EQ(count_homs(g, oracle::s3()), count_homs(ref, oracle::s3()));
      }
    }
  }
  auto p = fx::gdlp_presentation();
  EXPECT_THROW(pi1_presentation(p, 0, std::vector<std::size_t>{0, 1}), InputError);
}

TEST(Pi1, DisconnectedQuiverRejected) {
  auto p = QuiverPresentation::parse_text("vertex a b\n");
  EXPECT_THROW(pi1_presentation(p, 0), PreconditionError);
}

TEST(Words, Reduction) {
  EXPECT_EQ(free_reduce({1, 2, -2, -1, 3}), (Word{3}));
  EXPECT_EQ(cyclic_reduce({-1, 2, 3, 1}), (Word{2, 3}));
  EXPECT_EQ(inverse_word({1, -2}), (Word{2, -1}));
  EXPECT_TRUE(free_reduce({1, -1}).empty());
}

TEST(Tietze, InvariantsPreserved) {
  std::mt19937 rng(3);
  std::vector<FPGroup> groups{fp({"a", "b"}, {{1, 1}, {2, 2, 2}, {1, 2, 1, 2}}),
                              fp({"a", "b", "c"}, {{1, 2, -3}, {1, 1, 1, 1}, {3, -2}}),
                              pi1_presentation(fx::gdlp_presentation(), 0).group,
                              pi1_presentation(fx::gdlp_alt_presentation(), 0).group};
  for (auto g : groups) {
    const auto ab = abelianization(g);
    const auto ord = bounded_order(g, 2000);
    FPGroup s = simplify(g);
    EXPECT_EQ(abelianization(s), ab);
    EXPECT_EQ(bounded_order(s, 2000), ord);
    // Conjugating a relator, inserting x x^-1 and adding a consequence
    // leave the group unchanged.
    for (int trial = 0; trial < 5; ++trial) {
      FPGroup h = g;
      Word& r = h.relators[rng() % h.relators.size()];
      const int x = static_cast<int>(1 + rng() % g.generators.size());
      r.insert(r.begin(), x);
      r.push_back(-x);
      r.insert(r.begin() + static_cast<std::ptrdiff_t>(rng() % (r.size() + 1)), {x, -x});
      Word consequence = h.relators[0];
      consequence.insert(consequence.end(), h.relators.back().begin(), h.relators.back().end());
      h.relators.push_back(consequence);
      EXPECT_EQ(abelianization(h), ab);
      EXPECT_EQ(bounded_order(h, 2000), ord);
      EXPECT_EQ(count_homs(h, oracle::s3()), count_homs(g, oracle::s3()));
    }
  }
}

TEST(ToddCoxeter, KnownOrders) {
  EXPECT_EQ(bounded_order(fp({"b"}, {{1, 1}}), 100), std::optional<std::size_t>(2));
  EXPECT_FALSE(bounded_order(fp({"b"}, {}), 100).has_value());
  EXPECT_EQ(bounded_order(fp({"a", "b"}, {{1}, {2}}), 100), std::optional<std::size_t>(1));
  EXPECT_EQ(bounded_order(fp({"a"}, {{1, 1, 1, 1, 1}, {1, 1, 1}}), 100), std::optional<std::size_t>(1));
  // S3 = < a, b | a^2, b^3, (ab)^2 >
  EXPECT_EQ(bounded_order(fp({"a", "b"}, {{1, 1}, {2, 2, 2}, {1, 2, 1, 2}}), 100), std::optional<std::size_t>(6));
  // Q8 = < i, j | i^4, i^2 j^-2, j^-1 i j i >
  EXPECT_EQ(bounded_order(fp({"i", "j"}, {{1, 1, 1, 1}, {1, 1, -2, -2}, {-2, 1, 2, 1}}), 200),
            std::optional<std::size_t>(8));
  // A5 = < a, b | a^2, b^3, (ab)^5 >
  EXPECT_EQ(bounded_order(fp({"a", "b"}, {{1, 1}, {2, 2, 2}, {1, 2, 1, 2, 1, 2, 1, 2, 1, 2}}), 2000),
            std::optional<std::size_t>(60));
  EXPECT_THROW(bounded_order(fp({"a"}, {{2}}), 10), InputError);
}

TEST(Abelianization, Examples) {
  EXPECT_EQ(abelianization(fp({"a", "b"}, {{1, 1}, {2, 2, 2}, {1, 2, 1, 2}})), (std::vector<BigInt>{2}));
  EXPECT_EQ(abelianization(fp({"a", "b"}, {{1, 1}, {2, 2}})), (std::vector<BigInt>{2, 2}));
  EXPECT_EQ(abelianization(fp({"a", "b"}, {{1, 1, 1, 1}, {2, 2, 2, 2, 2, 2}})), (std::vector<BigInt>{2, 12}));
  EXPECT_EQ(abelianization(fp({"a"}, {})), (std::vector<BigInt>{0}));
  EXPECT_EQ(abelianization(fp({"a"}, {{1}})), (std::vector<BigInt>{1}));
}

TEST(Pi1, OrderMatchesDeckGroupOfTheDoubleCover) {
  // The C1 -> B covering is Galois with deck group of order |pi1(Q, R)|.
  auto b = fx::gdlp_base();
  auto g = is_galois(fx::gdlp_cover(b.category));
  ASSERT_TRUE(g.galois);
  auto order = bounded_order(pi1_presentation(fx::gdlp_presentation(), 0).group, 100);
  ASSERT_TRUE(order.has_value());
  EXPECT_EQ(g.group.elements.size(), *order);
  // Kronecker: pi1 is Z and every cyclic cover is Galois with cyclic deck group.
  auto kp = QuiverPresentation::parse_text("vertex s t\narrow alpha: s -> t\narrow beta: s -> t\n");
  auto kg = pi1_presentation(kp, 0).group;
  auto k = fx::kronecker();
  for (std::size_t n : {2, 3, 5}) {
    EXPECT_EQ(count_homs(kg, FiniteGroup::cyclic(n)), n);
    EXPECT_EQ(is_galois(fx::cyclic_cover(n, k)).group.elements.size(), n);
  }
}
