#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "chevmod/rootsys.hpp"

using namespace chevmod::rootsys;

namespace {

const std::vector<CartanType> kTypes = {CartanType::A1, CartanType::A2, CartanType::A3, CartanType::B2};

// Type A_{n-1}: recover the permutation pi of {0..n-1} with
// w(e_i - e_{i+1}) = e_{pi(i)} - e_{pi(i+1)} by brute force over S_n.
std::vector<int> as_permutation(const WeylGroup& W, int w) {
  const auto& R = W.datum();
  const int n = R.rank() + 1;
  // root in simple coordinates -> (i, j) with root = e_i - e_j
  auto pair_of = [&](int idx) {
    const auto& c = R.root(idx);
    int lo = -1, hi = -1, sign = 0;
    for (int k = 0; k < R.rank(); ++k) {
      if (c[k] != 0) {
        sign = c[k];
        if (lo < 0) lo = k;
        hi = k;
      }
    }
    return sign > 0 ? std::make_pair(lo, hi + 1) : std::make_pair(hi + 1, lo);
  };
  std::vector<int> pi(n);
  std::iota(pi.begin(), pi.end(), 0);
  do {
    bool ok = true;
    for (int k = 0; k < R.rank() && ok; ++k) {
      ok = pair_of(W.act(w, R.simple(k))) == std::make_pair(pi[k], pi[k + 1]);
    }
    if (ok) return pi;
  } while (std::next_permutation(pi.begin(), pi.end()));
  return {};
}

int inversions(const std::vector<int>& pi) {
  int c = 0;
  for (std::size_t i = 0; i < pi.size(); ++i) {
    for (std::size_t j = i + 1; j < pi.size(); ++j) c += pi[i] > pi[j];
  }
  return c;
}

// Rank-matrix criterion for the Bruhat order on S_n.
bool bruhat_sn(const std::vector<int>& u, const std::vector<int>& v) {
  const int n = static_cast<int>(u.size());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      int cu = 0, cv = 0;
      for (int a = 0; a <= i; ++a) {
        cu += u[a] >= j;
        cv += v[a] >= j;
      }
      if (cu > cv) return false;
    }
  }
  return true;
}

}  // namespace

TEST(RootDatum, Counts) {
  const std::vector<std::pair<int, int>> expect = {{2, 1}, {6, 3}, {12, 6}, {8, 4}};
  for (std::size_t t = 0; t < kTypes.size(); ++t) {
    RootDatum R(kTypes[t]);
    EXPECT_EQ(R.num_roots(), expect[t].first);
    EXPECT_EQ(R.num_positive(), expect[t].second);
  }
}

TEST(RootDatum, OrderIsHeightDescendingAndClosedUnderNegation) {
  for (auto type : kTypes) {
    RootDatum R(type);
    for (int i = 0; i + 1 < R.num_positive(); ++i) EXPECT_GE(R.height(i), R.height(i + 1));
    for (int i = 0; i < R.num_roots(); ++i) {
      EXPECT_EQ(R.negate(R.negate(i)), i);
      EXPECT_NE(R.is_positive(i), R.is_positive(R.negate(i)));
      EXPECT_EQ(R.find(R.root(i)), i);
    }
  }
}

TEST(RootDatum, B2HasShortSimpleRootFirst) {
  RootDatum R(CartanType::B2);
  // <alpha_2, alpha_1^vee> = -2: alpha_1 short, alpha_2 long.
  EXPECT_EQ(R.cartan()[1][0], -2);
  std::set<Root> pos;
  for (int i = 0; i < R.num_positive(); ++i) pos.insert(R.root(i));
  EXPECT_EQ(pos, (std::set<Root>{{1, 0}, {0, 1}, {1, 1}, {2, 1}}));
}

TEST(WeylGroup, OrdersAndLongestElement) {
  const std::vector<int> order = {2, 6, 24, 8};
  for (std::size_t t = 0; t < kTypes.size(); ++t) {
    WeylGroup W(kTypes[t]);
    EXPECT_EQ(W.size(), order[t]);
    EXPECT_EQ(W.length(W.longest()), W.datum().num_positive());
    for (int w = 0; w < W.size(); ++w) {
      EXPECT_EQ(static_cast<int>(W.phi_minus(w).size()), W.length(w));
      EXPECT_EQ(W.mul(w, W.inverse(w)), W.identity());
      EXPECT_EQ(W.from_word(W.word(w)), w);
    }
  }
}

TEST(WeylGroup, TypeAMatchesSymmetricGroup) {
  for (auto type : {CartanType::A1, CartanType::A2, CartanType::A3}) {
    WeylGroup W(type);
    std::set<std::vector<int>> perms;
    for (int w = 0; w < W.size(); ++w) {
      const auto pi = as_permutation(W, w);
      ASSERT_FALSE(pi.empty());
      perms.insert(pi);
      EXPECT_EQ(W.length(w), inversions(pi));
    }
    EXPECT_EQ(static_cast<int>(perms.size()), W.size());
  }
}

TEST(WeylGroup, BruhatOrderMatchesRankCriterion) {
  for (auto type : {CartanType::A2, CartanType::A3}) {
    WeylGroup W(type);
    for (int u = 0; u < W.size(); ++u) {
      for (int v = 0; v < W.size(); ++v) {
        EXPECT_EQ(W.bruhat_le(u, v), bruhat_sn(as_permutation(W, u), as_permutation(W, v)))
            << W.format(u) << " <= " << W.format(v);
      }
    }
  }
}

TEST(WeylGroup, BruhatOrderIsPartialOrderCompatibleWithLength) {
  for (auto type : kTypes) {
    WeylGroup W(type);
    for (int u = 0; u < W.size(); ++u) {
      EXPECT_TRUE(W.bruhat_le(W.identity(), u));
      EXPECT_TRUE(W.bruhat_le(u, W.longest()));
      for (int v = 0; v < W.size(); ++v) {
        if (u != v && W.bruhat_le(u, v)) {
          EXPECT_LT(W.length(u), W.length(v));
          EXPECT_FALSE(W.bruhat_le(v, u));
        }
      }
    }
  }
}

TEST(WeylGroup, ParabolicCosetCounts) {
  for (auto type : kTypes) {
    WeylGroup W(type);
    for (Subset J = 0; J <= W.datum().full_set(); ++J) {
      const auto WJ = W.parabolic(J);
      const auto reps = W.min_coset_reps(J);
      EXPECT_EQ(reps.size() * WJ.size(), static_cast<std::size_t>(W.size()));
      // Length additivity l(w x) = l(w) + l(x) for w in W^J, x in W_J.
      std::set<int> products;
      for (int w : reps) {
        for (int x : WJ) {
          EXPECT_EQ(W.length(W.mul(w, x)), W.length(w) + W.length(x));
          products.insert(W.mul(w, x));
        }
      }
      EXPECT_EQ(static_cast<int>(products.size()), W.size());
      // w_J is the unique longest element of W_J.
      for (int x : WJ) EXPECT_LE(W.length(x), W.length(W.longest(J)));
    }
  }
}

TEST(WeylGroup, YSetExamples) {
  WeylGroup W(CartanType::A2);
  auto names = [&](Subset J) {
    std::vector<std::string> out;
    for (int w : W.y_set(J)) out.push_back(W.format(w));
    return out;
  };
  EXPECT_EQ(names(0b01), (std::vector<std::string>{"e", "s2"}));
  EXPECT_EQ(names(0b10), (std::vector<std::string>{"e", "s1"}));
  EXPECT_EQ(names(0), (std::vector<std::string>{"e"}));
  EXPECT_EQ(names(0b11), (std::vector<std::string>{"e"}));
}

TEST(WeylGroup, YSetDefinition) {
  for (auto type : kTypes) {
    WeylGroup W(type);
    for (Subset J = 0; J <= W.datum().full_set(); ++J) {
      const auto reps = W.min_coset_reps(J);
      std::vector<int> expect;
      for (int w : reps) {
        if (W.right_descents(W.mul(w, W.longest(J))) == J) expect.push_back(w);
      }
      auto got = W.y_set(J);
      std::sort(got.begin(), got.end());
      std::sort(expect.begin(), expect.end());
      EXPECT_EQ(got, expect);
    }
  }
}

TEST(WeylGroup, LongestElementFactorization) {
  for (auto type : kTypes) {
    WeylGroup W(type);
    for (Subset J = 0; J <= W.datum().full_set(); ++J) {
      const auto f = W.w0_factorization(J);
      EXPECT_EQ(W.mul(W.mul(f.v, f.wJ), f.wJprime), W.longest());
      EXPECT_EQ(W.length(f.v) + W.length(f.wJ) + W.length(f.wJprime), W.length(W.longest()));
      EXPECT_EQ(f.wJ, W.longest(J));
      EXPECT_EQ(f.wJprime, W.longest(W.datum().full_set() & ~J));
    }
  }
}

TEST(WeylGroup, SigmaIsConjugationByLongestElement) {
  WeylGroup A2(CartanType::A2);
  EXPECT_EQ(A2.sigma(), (std::vector<int>{1, 0}));
  WeylGroup A3(CartanType::A3);
  EXPECT_EQ(A3.sigma(), (std::vector<int>{2, 1, 0}));
  WeylGroup B2(CartanType::B2);
  EXPECT_EQ(B2.sigma(), (std::vector<int>{0, 1}));
  EXPECT_EQ(A3.apply_sigma(0b001), Subset{0b100});
}

TEST(Sweeps, NoCounterexamples) {
  for (auto type : kTypes) {
    WeylGroup W(type);
    const auto s = sweep_stable_inversion_sets(W);
    EXPECT_TRUE(s.counterexamples.empty());
    EXPECT_GT(s.checked(), 0u);
    std::size_t checked = 0;
    for (Subset J = 0; J <= W.datum().full_set(); ++J) {
      const auto l = sweep_ladder_separation(W, J);
      EXPECT_TRUE(l.counterexamples.empty());
      checked += l.checked();
    }
    if (type != CartanType::A1) EXPECT_GT(checked, 0u);
  }
}

TEST(Subsets, RoundTrip) {
  EXPECT_EQ(parse_subset("13", 3), Subset{0b101});
  EXPECT_EQ(format_subset(0b101, 3), "13");
  EXPECT_EQ(parse_subset("", 2), Subset{0});
  EXPECT_ANY_THROW(parse_subset("3", 2));
  EXPECT_ANY_THROW(parse_type("G2"));
}
