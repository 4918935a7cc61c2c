#include <gtest/gtest.h>

#include <set>

#include "chevmod/gf.hpp"

using namespace chevmod::gf;

namespace {

// Schoolbook polynomial arithmetic over GF(p), used as an independent model
// of GF(p^k) = GF(p)[x]/(modulus).
using Poly = std::vector<unsigned>;

Poly decode(Elem a, unsigned p, unsigned k) {
  Poly c(k);
  for (unsigned i = 0; i < k; ++i) {
    c[i] = a % p;
    a /= p;
  }
  return c;
}

Elem encode(const Poly& c, unsigned p) {
  Elem v = 0;
  for (std::size_t i = c.size(); i-- > 0;) v = v * p + c[i];
  return v;
}

Poly mulmod(const Poly& a, const Poly& b, const std::vector<unsigned>& modulus, unsigned p) {
  const std::size_t k = a.size();
  Poly prod(2 * k, 0);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
  }
  // modulus is monic of degree k, coefficients low to high.
  for (std::size_t d = 2 * k - 1; d >= k; --d) {
    const unsigned c = prod[d];
    if (c == 0) continue;
    for (std::size_t i = 0; i <= k; ++i) prod[d - k + i] = (prod[d - k + i] + p * p - c * modulus[i] % p) % p;
  }
  prod.resize(k);
  return prod;
}

struct Params {
  unsigned p, k;
};

class FieldTest : public ::testing::TestWithParam<Params> {};

}  // namespace

TEST_P(FieldTest, MultiplicationMatchesPolynomialModel) {
  const auto [p, k] = GetParam();
  auto F = FieldSpec::make(p, k);
  ASSERT_EQ(F->modulus().size(), k + 1);
  ASSERT_EQ(F->modulus().back(), 1u);
  for (Elem a = 0; a < F->order(); ++a) {
    for (Elem b = 0; b < F->order(); ++b) {
      const Elem expect = encode(mulmod(decode(a, p, k), decode(b, p, k), F->modulus(), p), p);
      ASSERT_EQ(F->mul(a, b), expect) << a << "*" << b;
      Poly s = decode(a, p, k), t = decode(b, p, k);
      for (unsigned i = 0; i < k; ++i) s[i] = (s[i] + t[i]) % p;
      ASSERT_EQ(F->add(a, b), encode(s, p));
    }
  }
}

TEST_P(FieldTest, FieldAxioms) {
  const auto [p, k] = GetParam();
  auto F = FieldSpec::make(p, k);
  const auto elems = F->enumerate();
  ASSERT_EQ(elems.size(), F->order());
  for (Elem a : elems) {
    EXPECT_EQ(F->add(a, F->neg(a)), 0u);
    if (a != 0) EXPECT_EQ(F->mul(a, F->inv(a)), 1u);
    EXPECT_EQ(F->pow(a, F->order()), a);  // Frobenius^k is the identity
  }
}

TEST_P(FieldTest, PrimitiveElementGeneratesUnits) {
  const auto [p, k] = GetParam();
  auto F = FieldSpec::make(p, k);
  std::set<Elem> seen;
  Elem x = 1;
  for (unsigned i = 0; i + 1 < F->order(); ++i) {
    seen.insert(x);
    x = F->mul(x, F->primitive());
  }
  EXPECT_EQ(seen.size(), F->order() - 1);
  EXPECT_EQ(x, 1u);
}

TEST_P(FieldTest, ModulusIsIrreducible) {
  const auto [p, k] = GetParam();
  auto F = FieldSpec::make(p, k);
  // A reducible monic of degree k has a monic factor of degree <= k/2.
  const auto& m = F->modulus();
  auto divides = [&](const Poly& d) {
    std::vector<int> r(m.begin(), m.end());
    const int dd = static_cast<int>(d.size()) - 1;
    for (int i = static_cast<int>(r.size()) - 1; i >= dd; --i) {
      const int c = r[i];
      for (int j = 0; j <= dd; ++j) r[i - dd + j] = ((r[i - dd + j] - c * int(d[j])) % int(p) + int(p)) % int(p);
    }
    for (int i = 0; i < dd; ++i) {
      if (r[i] != 0) return false;
    }
    return true;
  };
  for (unsigned deg = 1; 2 * deg <= k; ++deg) {
    unsigned count = 1;
    for (unsigned i = 0; i < deg; ++i) count *= p;
    for (unsigned c = 0; c < count; ++c) {
      Poly d = decode(c, p, deg);
      d.push_back(1);
      EXPECT_FALSE(divides(d)) << "modulus has a factor of degree " << deg;
    }
  }
}

TEST_P(FieldTest, FpBasisSpansField) {
  const auto [p, k] = GetParam();
  auto F = FieldSpec::make(p, k);
  const auto basis = F->fp_basis();
  ASSERT_EQ(basis.size(), k);
  std::set<Elem> span{0};
  for (Elem b : basis) {
    std::set<Elem> next;
    for (Elem s : span) {
      Elem t = s;
      for (unsigned i = 0; i < p; ++i) {
        next.insert(t);
        t = F->add(t, b);
      }
    }
    span = next;
  }
  EXPECT_EQ(span.size(), F->order());
}

INSTANTIATE_TEST_SUITE_P(SmallFields, FieldTest,
                         ::testing::Values(Params{2, 1}, Params{3, 1}, Params{5, 1}, Params{2, 2}, Params{2, 3},
                                           Params{2, 4}, Params{3, 2}, Params{5, 2}, Params{7, 1}));

TEST(Embedding, IsInjectiveRingHomomorphism) {
  for (auto [p, m, n] : std::vector<std::tuple<unsigned, unsigned, unsigned>>{
           {2, 1, 2}, {2, 2, 4}, {2, 1, 4}, {3, 1, 2}, {2, 1, 3}, {2, 2, 2}}) {
    auto small = FieldSpec::make(p, m);
    auto big = FieldSpec::make(p, n);
    Embedding e(small, big);
    std::set<Elem> image(e.image().begin(), e.image().end());
    EXPECT_EQ(image.size(), small->order());
    for (Elem a = 0; a < small->order(); ++a) {
      for (Elem b = 0; b < small->order(); ++b) {
        EXPECT_EQ(e(small->add(a, b)), big->add(e(a), e(b)));
        EXPECT_EQ(e(small->mul(a, b)), big->mul(e(a), e(b)));
      }
    }
    EXPECT_EQ(e(1), 1u);
  }
}

TEST(Embedding, ImageIsFixedByFrobeniusPower) {
  auto small = FieldSpec::make(2, 2);
  auto big = FieldSpec::make(2, 4);
  Embedding e(small, big);
  for (Elem x : e.image()) EXPECT_EQ(big->pow(x, 4), x);
}

TEST(Embedding, RejectsNonDividingDegree) {
  EXPECT_ANY_THROW(Embedding(FieldSpec::make(2, 2), FieldSpec::make(2, 3)));
}

TEST(PrimePower, Decomposition) {
  EXPECT_EQ(prime_power(2), std::make_pair(2u, 1u));
  EXPECT_EQ(prime_power(9), std::make_pair(3u, 2u));
  EXPECT_EQ(prime_power(16), std::make_pair(2u, 4u));
  EXPECT_ANY_THROW(prime_power(6));
  EXPECT_ANY_THROW(prime_power(1));
  EXPECT_TRUE(is_prime(251));
  EXPECT_FALSE(is_prime(1));
}

TEST(FieldSpec, RejectsOversizedField) { EXPECT_ANY_THROW(FieldSpec::make(2, 17)); }

TEST(FieldSpec, DeterministicConstruction) {
  auto a = FieldSpec::make(3, 2);
  auto b = FieldSpec::make(3, 2);
  EXPECT_EQ(a->modulus(), b->modulus());
  EXPECT_EQ(a->primitive(), b->primitive());
}
