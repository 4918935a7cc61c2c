#include <gtest/gtest.h>

#include <set>
#include <unordered_set>

#include "chevmod/chevalley.hpp"

using namespace chevmod;
using namespace chevmod::chevalley;
using rootsys::CartanType;

namespace {

struct Case {
  CartanType type;
  unsigned p, k;
};

std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

// |G|/|B| from the group order formulas.
std::uint64_t flag_count(CartanType t, std::uint64_t q) {
  switch (t) {
    case CartanType::A1: return q + 1;
    case CartanType::A2: return (q + 1) * (q * q + q + 1);
    case CartanType::A3: return (q + 1) * (q * q + q + 1) * (q * q * q + q * q + q + 1);
    case CartanType::B2: return (q * q * q * q - 1) * (q * q - 1) / ((q - 1) * (q - 1));
  }
  return 0;
}

class GroupTest : public ::testing::TestWithParam<Case> {
 protected:
  ChevalleyGroup make() const {
    const auto c = GetParam();
    return ChevalleyGroup(c.type, gf::FieldSpec::make(c.p, c.k));
  }
};

}  // namespace

TEST_P(GroupTest, RootElementsLieInGroupAndAreAdditive) {
  const auto G = make();
  const auto& F = G.field();
  const auto elems = F.enumerate();
  for (int r = 0; r < G.roots().num_roots(); ++r) {
    for (Elem c : elems) {
      ASSERT_TRUE(G.in_group(G.eps(r, c)));
      for (Elem d : elems) EXPECT_EQ(G.mul(G.eps(r, c), G.eps(r, d)), G.eps(r, F.add(c, d)));
    }
    EXPECT_EQ(G.eps(r, 0), G.identity());
    EXPECT_EQ(G.is_upper_unitriangular(G.eps(r, 1)), G.roots().is_positive(r));
  }
}

TEST_P(GroupTest, WeylRepresentativesPermuteRootSubgroups) {
  const auto G = make();
  const auto& W = G.weyl();
  for (int w = 0; w < W.size(); ++w) {
    const Mat n = G.weyl_rep(w);
    ASSERT_TRUE(G.in_group(n));
    const Mat ninv = G.inverse(n);
    for (int r = 0; r < G.roots().num_roots(); ++r) {
      const Mat conj = G.mul(G.mul(n, G.eps(r, 1)), ninv);
      const int target = W.act(w, r);
      const Elem plus = 1, minus = G.field().neg(1);
      EXPECT_TRUE(conj == G.eps(target, plus) || conj == G.eps(target, minus))
          << "w=" << W.format(w) << " root " << G.roots().format_root(r);
    }
  }
}

TEST_P(GroupTest, CosetCountsMatchOrderFormulas) {
  const auto G = make();
  const std::uint64_t q = G.field().order();
  CosetSpace flags(G, 0);
  EXPECT_EQ(flags.size(), flag_count(GetParam().type, q));
  const auto& W = G.weyl();
  for (rootsys::Subset K = 1; K <= G.roots().full_set(); ++K) {
    CosetSpace X(G, K);
    std::uint64_t expect = 0;
    for (int w : W.min_coset_reps(K)) expect += ipow(q, W.length(w));
    EXPECT_EQ(X.size(), expect) << "K=" << K;
  }
}

TEST_P(GroupTest, CosetActionIsHomomorphism) {
  const auto G = make();
  CosetSpace X(G, 0);
  const auto gens = G.group_generators();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const auto a = X.action(gens[i]);
    std::set<std::uint32_t> image(a.begin(), a.end());
    EXPECT_EQ(image.size(), X.size());
    const auto& h = gens[(i + 1) % gens.size()];
    const auto b = X.action(h);
    const auto ab = X.action(G.mul(gens[i], h));
    for (std::size_t x = 0; x < X.size(); ++x) EXPECT_EQ(ab[x], a[b[x]]);
  }
  // The Borel subgroup fixes the base point and only it among Bruhat cell e.
  for (const auto& u : G.unipotent_generators()) EXPECT_EQ(X.action(u)[0], 0u);
  EXPECT_EQ(X.bruhat_label(0), 0);
}

TEST_P(GroupTest, BruhatCellSizes) {
  const auto G = make();
  CosetSpace X(G, 0);
  const auto& W = G.weyl();
  std::vector<std::uint64_t> cells(W.size(), 0);
  for (std::size_t i = 0; i < X.size(); ++i) ++cells.at(X.bruhat_label(i));
  for (int w = 0; w < W.size(); ++w) EXPECT_EQ(cells[w], ipow(G.field().order(), W.length(w)));
}

TEST_P(GroupTest, StructureFacts) {
  const auto G = make();
  StructureOptions opts;
  opts.samples = 200;
  const auto r = check_structure_facts(G, opts);
  for (const auto* rep : {&r.conjugation, &r.positive_part, &r.multiplication, &r.uniqueness, &r.commutators,
                          &r.torus}) {
    EXPECT_EQ(rep->failed, 0u) << (rep->failures.empty() ? "" : rep->failures.front());
    // Rank one has no pair of positive roots, so the commutator fact is vacuous.
    if (rep == &r.commutators && G.roots().rank() == 1) continue;
    EXPECT_GT(rep->checked(), 0u);
  }
}

TEST_P(GroupTest, UwElementsFactorUniquely) {
  const auto G = make();
  const auto& W = G.weyl();
  const auto elems = G.field().enumerate();
  for (int w = 0; w < W.size(); ++w) {
    if (ipow(elems.size(), W.length(w)) > 4096) continue;
    const auto us = G.u_w_elements(w, elems);
    std::unordered_set<Mat, MatHash> distinct(us.begin(), us.end());
    EXPECT_EQ(distinct.size(), us.size());
    for (const auto& u : us) {
      std::vector<Elem> coeffs;
      ASSERT_TRUE(G.factor(u, W.phi_minus(w), coeffs));
      EXPECT_TRUE(G.is_upper_unitriangular(u));
    }
  }
}

TEST_P(GroupTest, SimpleReflectionDecompositionIsUnique) {
  const auto G = make();
  for (int i = 0; i < G.roots().rank(); ++i) {
    for (Elem c : G.field().enumerate()) {
      if (c == 0) {
        EXPECT_ANY_THROW(G.decompose_sus(i, c));
        continue;
      }
      EXPECT_EQ(G.count_sus_solutions(i, c), 1);
      EXPECT_NE(G.decompose_sus(i, c).x_param, 0u);
    }
  }
}

TEST_P(GroupTest, TorusActsByRootCharacters) {
  const auto G = make();
  for (const auto& t : G.torus_generators()) {
    ASSERT_TRUE(G.in_group(t));
    ASSERT_TRUE(G.is_diagonal(t));
    const Mat tinv = G.inverse(t);
    for (int r = 0; r < G.roots().num_roots(); ++r) {
      EXPECT_EQ(G.mul(G.mul(t, G.eps(r, 1)), tinv), G.eps(r, G.root_character(r, t)));
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Groups, GroupTest,
                         ::testing::Values(Case{CartanType::A1, 2, 1}, Case{CartanType::A1, 3, 1},
                                           Case{CartanType::A1, 2, 2}, Case{CartanType::A1, 5, 1},
                                           Case{CartanType::A2, 2, 1}, Case{CartanType::A2, 3, 1},
                                           Case{CartanType::A2, 2, 2}, Case{CartanType::A3, 2, 1},
                                           Case{CartanType::B2, 2, 1}, Case{CartanType::B2, 3, 1}));

TEST(CosetSpace, LimitRaisesBudgetExceeded) {
  ChevalleyGroup G(CartanType::A3, gf::FieldSpec::make(2, 1));
  EXPECT_THROW(CosetSpace(G, 0, 100), BudgetExceeded);
}

TEST(Sp4, GramMatrixIsPreserved) {
  ChevalleyGroup G(CartanType::B2, gf::FieldSpec::make(3, 1));
  EXPECT_EQ(G.kind(), GroupKind::Sp4);
  EXPECT_EQ(G.matrix_size(), 4);
  for (const auto& g : G.group_generators()) EXPECT_TRUE(G.in_group(g));
  // A determinant-one matrix outside Sp_4.
  Mat m = G.identity();
  m(0, 1) = 1;
  EXPECT_FALSE(G.in_group(m));
}
