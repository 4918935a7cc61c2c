#include "chevmod/gf.hpp"

#include <sstream>

namespace chevmod::gf {

namespace {

using Poly = std::vector<unsigned>;  // c_0 .. c_d, trailing coefficient nonzero

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

// Remainder of f modulo monic g over GF(p).
Poly poly_mod(Poly f, const Poly& g, unsigned p) {
  trim(f);
  const std::size_t dg = g.size() - 1;
  while (f.size() > dg) {
    const unsigned lead = f.back();
    const std::size_t shift = f.size() - 1 - dg;
    for (std::size_t i = 0; i <= dg; ++i) {
      f[shift + i] = (f[shift + i] + p - (lead * g[i]) % p) % p;
    }
    trim(f);
  }
  return f;
}

Poly monic_from_index(std::uint32_t index, unsigned p, unsigned degree) {
  Poly f(degree + 1, 0);
  for (unsigned i = 0; i < degree; ++i) {
    f[i] = index % p;
    index /= p;
  }
  f[degree] = 1;
  return f;
}

std::uint32_t ipow(unsigned base, unsigned e) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < e; ++i) {
    r *= base;
    if (r > (1ull << 32)) throw std::invalid_argument("integer power overflow");
  }
  return static_cast<std::uint32_t>(r);
}

bool is_irreducible(const Poly& f, unsigned p) {
  const unsigned k = static_cast<unsigned>(f.size() - 1);
  for (unsigned d = 1; 2 * d <= k; ++d) {
    const std::uint32_t count = ipow(p, d);
    for (std::uint32_t idx = 0; idx < count; ++idx) {
      if (poly_mod(f, monic_from_index(idx, p, d), p).empty()) return false;
    }
  }
  return true;
}

}  // namespace

bool is_prime(unsigned n) {
  if (n < 2) return false;
  for (unsigned d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::pair<unsigned, unsigned> prime_power(unsigned q) {
  if (q < 2) throw std::invalid_argument("not a prime power: " + std::to_string(q));
  unsigned p = 2;
  while (q % p != 0) ++p;
  unsigned k = 0;
  unsigned r = q;
  while (r % p == 0) {
    r /= p;
    ++k;
  }
  if (r != 1) throw std::invalid_argument("not a prime power: " + std::to_string(q));
  return {p, k};
}

FieldPtr FieldSpec::make(unsigned p, unsigned k) {
  if (!is_prime(p)) throw std::invalid_argument("field characteristic must be prime, got " + std::to_string(p));
  if (k == 0) throw std::invalid_argument("field degree must be positive");
  std::uint64_t order = 1;
  for (unsigned i = 0; i < k; ++i) {
    order *= p;
    if (order > kMaxFieldOrder) {
      throw std::invalid_argument("field order exceeds 2^16: " + std::to_string(p) + "^" + std::to_string(k));
    }
  }
  const auto count = static_cast<std::uint32_t>(order);
  for (std::uint32_t idx = 0; idx < count; ++idx) {
    Poly f = monic_from_index(idx, p, k);
    if (is_irreducible(f, p)) {
      return FieldPtr(new FieldSpec(p, k, std::move(f)));
    }
  }
  throw std::logic_error("no irreducible polynomial found");
}

FieldSpec::FieldSpec(unsigned p, unsigned k, std::vector<unsigned> modulus)
    : p_(p), k_(k), order_(ipow(p, k)), modulus_(std::move(modulus)) {
  neg_.resize(order_);
  for (Elem a = 0; a < order_; ++a) {
    auto c = coeffs(a);
    for (auto& x : c) x = (p_ - x) % p_;
    neg_[a] = from_coeffs(c);
  }
  if (order_ <= 1024) {
    add_table_.resize(static_cast<std::size_t>(order_) * order_);
    for (Elem a = 0; a < order_; ++a) {
      for (Elem b = 0; b < order_; ++b) {
        add_table_[static_cast<std::size_t>(a) * order_ + b] = static_cast<std::uint16_t>(slow_add(a, b));
      }
    }
  }

  // Smallest element of multiplicative order q - 1.
  const std::uint32_t group_order = order_ - 1;
  for (Elem cand = 1; cand < order_; ++cand) {
    std::uint32_t ord = 1;
    Elem x = cand;
    while (x != 1) {
      x = slow_mul(x, cand);
      ++ord;
    }
    if (ord == group_order) {
      primitive_ = cand;
      break;
    }
  }
  exp_.resize(2 * static_cast<std::size_t>(group_order) + 1);
  log_.assign(order_, 0);
  Elem x = 1;
  for (std::uint32_t e = 0; e < group_order; ++e) {
    exp_[e] = x;
    log_[x] = e;
    x = slow_mul(x, primitive_);
  }
  for (std::uint32_t e = group_order; e < exp_.size(); ++e) exp_[e] = exp_[e - group_order];
}

Elem FieldSpec::slow_add(Elem a, Elem b) const {
  Elem r = 0;
  Elem place = 1;
  while (a != 0 || b != 0) {
    r += place * ((a % p_ + b % p_) % p_);
    a /= p_;
    b /= p_;
    place *= p_;
  }
  return r;
}

Elem FieldSpec::slow_mul(Elem a, Elem b) const {
  const auto ca = coeffs(a);
  const auto cb = coeffs(b);
  Poly prod(2 * k_, 0);
  for (unsigned i = 0; i < k_; ++i) {
    for (unsigned j = 0; j < k_; ++j) prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p_;
  }
  Poly r = poly_mod(prod, modulus_, p_);
  r.resize(k_, 0);
  return from_coeffs(r);
}

Elem FieldSpec::add(Elem a, Elem b) const {
  if (!add_table_.empty()) return add_table_[static_cast<std::size_t>(a) * order_ + b];
  if (p_ == 2) return a ^ b;
  return slow_add(a, b);
}

Elem FieldSpec::neg(Elem a) const { return neg_[a]; }

Elem FieldSpec::inv(Elem a) const {
  if (a == 0) throw std::domain_error("inverse of zero in " + name());
  const std::uint32_t group_order = order_ - 1;
  return exp_[(group_order - log_[a]) % group_order];
}

Elem FieldSpec::pow(Elem a, std::uint64_t e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  const std::uint64_t group_order = order_ - 1;
  return exp_[static_cast<std::size_t>((static_cast<std::uint64_t>(log_[a]) * (e % group_order)) % group_order)];
}

Elem FieldSpec::from_int(long long v) const {
  const long long r = ((v % static_cast<long long>(p_)) + p_) % p_;
  return static_cast<Elem>(r);
}

Elem FieldSpec::from_coeffs(std::span<const unsigned> c) const {
  Elem r = 0;
  Elem place = 1;
  for (std::size_t i = 0; i < c.size() && i < k_; ++i) {
    r += place * (c[i] % p_);
    place *= p_;
  }
  return r;
}

std::vector<unsigned> FieldSpec::coeffs(Elem a) const {
  std::vector<unsigned> c(k_, 0);
  for (unsigned i = 0; i < k_; ++i) {
    c[i] = a % p_;
    a /= p_;
  }
  return c;
}

std::vector<Elem> FieldSpec::enumerate() const {
  std::vector<Elem> all(order_);
  for (Elem a = 0; a < order_; ++a) all[a] = a;
  return all;
}

std::vector<Elem> FieldSpec::fp_basis() const {
  std::vector<Elem> basis;
  Elem x = 1;
  for (unsigned i = 0; i < k_; ++i) {
    basis.push_back(x);
    x = slow_mul(x, generator());
  }
  return basis;
}

std::string FieldSpec::name() const {
  std::ostringstream os;
  os << "GF(" << p_;
  if (k_ > 1) os << "^" << k_;
  os << ")";
  return os.str();
}

std::string FieldSpec::format(Elem a) const {
  if (k_ == 1) return std::to_string(a);
  const auto c = coeffs(a);
  std::string out;
  for (int i = static_cast<int>(k_) - 1; i >= 0; --i) {
    if (c[i] == 0) continue;
    if (!out.empty()) out += "+";
    if (i == 0 || c[i] != 1) out += std::to_string(c[i]);
    if (i >= 1) out += "g";
    if (i >= 2) out += "^" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

void FieldElement::require_same(const FieldElement& o) const {
  if (spec_ != o.spec_) throw std::invalid_argument("field elements from different fields");
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  require_same(o);
  return {*spec_, spec_->add(repr_, o.repr_)};
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
  require_same(o);
  return {*spec_, spec_->sub(repr_, o.repr_)};
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
  require_same(o);
  return {*spec_, spec_->mul(repr_, o.repr_)};
}

FieldElement FieldElement::inverse() const { return {*spec_, spec_->inv(repr_)}; }

bool FieldElement::operator==(const FieldElement& o) const { return spec_ == o.spec_ && repr_ == o.repr_; }

Embedding::Embedding(FieldPtr small, FieldPtr big) : small_(std::move(small)), big_(std::move(big)) {
  if (small_->characteristic() != big_->characteristic()) {
    throw std::invalid_argument("embedding between fields of different characteristic");
  }
  if (big_->degree() % small_->degree() != 0) {
    throw std::invalid_argument("cannot embed " + small_->name() + " into " + big_->name());
  }
  const auto& mod = small_->modulus();
  auto eval = [&](Elem x) {
    Elem acc = 0;
    for (std::size_t i = mod.size(); i-- > 0;) {
      acc = big_->add(big_->mul(acc, x), big_->from_int(mod[i]));
    }
    return acc;
  };
  Elem root = 0;
  bool found = false;
  for (Elem x = 0; x < big_->order(); ++x) {
    if (eval(x) == 0) {
      root = x;
      found = true;
      break;
    }
  }
  if (!found) throw std::logic_error("modulus has no root in the extension field");

  table_.resize(small_->order());
  for (Elem a = 0; a < small_->order(); ++a) {
    const auto c = small_->coeffs(a);
    Elem acc = 0;
    Elem power = 1;
    for (unsigned i = 0; i < small_->degree(); ++i) {
      acc = big_->add(acc, big_->mul(big_->from_int(c[i]), power));
      power = big_->mul(power, root);
    }
    table_[a] = acc;
  }
}

}  // namespace chevmod::gf
