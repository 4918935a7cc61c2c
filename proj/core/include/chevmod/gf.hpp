#pragma once

// Arithmetic in small finite fields GF(p^k).
//
// Elements are encoded as integers: the coefficient vector (c_0, ..., c_{k-1})
// of the polynomial representative maps to sum c_i p^i. The numeric order of
// the encoding is the canonical element order used for every tie-break in the
// library (lexicographic on the coefficient vector, highest degree first).

#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace chevmod::gf {

using Elem = std::uint32_t;

constexpr std::uint32_t kMaxFieldOrder = 1u << 16;

class FieldSpec;
using FieldPtr = std::shared_ptr<const FieldSpec>;

/// Immutable description of GF(p^k) together with its arithmetic tables.
///
/// The modulus is the lexicographically smallest monic irreducible of degree k
/// (for k = 1 this is the polynomial x, whose root is 0). Construction is
/// deterministic: two calls with the same (p, k) agree element by element.
class FieldSpec {
 public:
  static FieldPtr make(unsigned p, unsigned k);

  unsigned characteristic() const { return p_; }
  unsigned degree() const { return k_; }
  std::uint32_t order() const { return order_; }
  /// Monic modulus, coefficients c_0 .. c_k.
  const std::vector<unsigned>& modulus() const { return modulus_; }
  bool is_prime_field() const { return k_ == 1; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  /// Class of x modulo the modulus.
  Elem generator() const { return k_ == 1 ? 0 : p_; }
  /// A multiplicative generator of GF(p^k)^*.
  Elem primitive() const { return primitive_; }

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const;
  Elem from_int(long long v) const;
  Elem from_coeffs(std::span<const unsigned> coeffs) const;
  std::vector<unsigned> coeffs(Elem a) const;

  /// All elements in canonical order.
  std::vector<Elem> enumerate() const;
  /// {1, g, ..., g^{k-1}} with g the class of x.
  std::vector<Elem> fp_basis() const;

  std::string name() const;
  std::string format(Elem a) const;

 private:
  FieldSpec(unsigned p, unsigned k, std::vector<unsigned> modulus);
  Elem slow_mul(Elem a, Elem b) const;
  Elem slow_add(Elem a, Elem b) const;

  unsigned p_;
  unsigned k_;
  std::uint32_t order_;
  std::vector<unsigned> modulus_;
  Elem primitive_ = 1;
  std::vector<Elem> exp_;
  std::vector<std::uint32_t> log_;
  std::vector<Elem> neg_;
  std::vector<std::uint16_t> add_table_;  // populated for small orders
};

/// Value-semantics wrapper for use outside hot loops.
class FieldElement {
 public:
  FieldElement(const FieldSpec& spec, Elem repr) : spec_(&spec), repr_(repr) {}

  const FieldSpec& spec() const { return *spec_; }
  Elem repr() const { return repr_; }
  bool is_zero() const { return repr_ == 0; }

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator-() const { return {*spec_, spec_->neg(repr_)}; }
  FieldElement inverse() const;
  FieldElement pow(std::uint64_t e) const { return {*spec_, spec_->pow(repr_, e)}; }
  bool operator==(const FieldElement& o) const;
  bool operator!=(const FieldElement& o) const { return !(*this == o); }

 private:
  void require_same(const FieldElement& o) const;
  const FieldSpec* spec_;
  Elem repr_;
};

/// Injective ring map GF(p^m) -> GF(p^n), m | n, sending the class of x to the
/// smallest root of the small modulus in the big field.
class Embedding {
 public:
  Embedding(FieldPtr small, FieldPtr big);

  Elem operator()(Elem x) const { return table_.at(x); }
  const FieldSpec& small() const { return *small_; }
  const FieldSpec& big() const { return *big_; }
  /// Image of the whole small field, in the small field's canonical order.
  const std::vector<Elem>& image() const { return table_; }

 private:
  FieldPtr small_;
  FieldPtr big_;
  std::vector<Elem> table_;
};

bool is_prime(unsigned n);
/// Returns (p, k) with q = p^k, or throws if q is not a prime power.
std::pair<unsigned, unsigned> prime_power(unsigned q);

}  // namespace chevmod::gf
