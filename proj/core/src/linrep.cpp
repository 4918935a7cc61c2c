#include "chevmod/linrep.hpp"

#include <algorithm>
#include <deque>
#include <random>
#include <stdexcept>

namespace chevmod::linrep {

namespace {

bool prime(unsigned n) {
  if (n < 2) return false;
  for (unsigned d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

int leading(const Vec& v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] != 0) return static_cast<int>(i);
  }
  return -1;
}

}  // namespace

Zl::Zl(unsigned l) : l_(l) {
  if (!prime(l) || l > 251) throw std::invalid_argument("coefficient field must be GF(l) for a prime l <= 251");
  std::vector<Scalar> inv(l, 0);
  for (unsigned a = 1; a < l; ++a) {
    for (unsigned b = 1; b < l; ++b) {
      if ((a * b) % l == 1) {
        inv[a] = Scalar(b);
        break;
      }
    }
  }
  inv_ = std::make_shared<const std::vector<Scalar>>(std::move(inv));
}

Scalar Zl::inv(Scalar a) const {
  if (a == 0) throw std::domain_error("inverse of zero");
  return (*inv_)[a];
}

Scalar Zl::from_int(long long v) const {
  long long r = v % static_cast<long long>(l_);
  if (r < 0) r += l_;
  return Scalar(r);
}

void Zl::axpy(Vec& y, Scalar c, const Vec& x) const {
  if (c == 0) return;
  const std::size_t n = y.size();
  if (l_ == 2) {
    for (std::size_t i = 0; i < n; ++i) y[i] ^= x[i];
    return;
  }
  Scalar prod[256];
  for (unsigned v = 0; v < l_; ++v) prod[v] = mul(c, Scalar(v));
  for (std::size_t i = 0; i < n; ++i) {
    const unsigned s = unsigned(y[i]) + prod[x[i]];
    y[i] = Scalar(s >= l_ ? s - l_ : s);
  }
}

void Zl::scale(Vec& x, Scalar c) const {
  if (c == 1) return;
  for (auto& v : x) v = mul(v, c);
}

bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](Scalar s) { return s == 0; });
}

std::size_t support_size(const Vec& v) {
  return static_cast<std::size_t>(std::count_if(v.begin(), v.end(), [](Scalar s) { return s != 0; }));
}

int action_dim(const Action& g) {
  if (const auto* p = std::get_if<Permutation>(&g)) return static_cast<int>(p->image.size());
  return std::get<DenseMatrix>(g).n;
}

Vec apply(const Zl& F, const Action& g, const Vec& v) {
  if (const auto* p = std::get_if<Permutation>(&g)) {
    Vec out(v.size(), 0);
    for (std::size_t i = 0; i < v.size(); ++i) out[p->image[i]] = v[i];
    return out;
  }
  const auto& m = std::get<DenseMatrix>(g);
  Vec out(m.n, 0);
  for (int c = 0; c < m.n; ++c) F.axpy(out, v[c], m.cols[c]);
  return out;
}

Action transpose(const Action& g) {
  if (const auto* p = std::get_if<Permutation>(&g)) {
    Permutation t;
    t.image.resize(p->image.size());
    for (std::size_t i = 0; i < p->image.size(); ++i) t.image[p->image[i]] = static_cast<std::uint32_t>(i);
    return t;
  }
  const auto& m = std::get<DenseMatrix>(g);
  DenseMatrix t;
  t.n = m.n;
  t.cols.assign(m.n, Vec(m.n, 0));
  for (int c = 0; c < m.n; ++c) {
    for (int r = 0; r < m.n; ++r) t.cols[r][c] = m.cols[c][r];
  }
  return t;
}

DenseMatrix to_dense(const Zl& F, const Action& g) {
  if (const auto* m = std::get_if<DenseMatrix>(&g)) return *m;
  const auto& p = std::get<Permutation>(g);
  (void)F;
  DenseMatrix d;
  d.n = static_cast<int>(p.image.size());
  d.cols.assign(d.n, Vec(d.n, 0));
  for (int c = 0; c < d.n; ++c) d.cols[c][p.image[c]] = 1;
  return d;
}

Action compose(const Zl& F, const Action& a, const Action& b) {
  const auto* pa = std::get_if<Permutation>(&a);
  const auto* pb = std::get_if<Permutation>(&b);
  if (pa && pb) {
    Permutation out;
    out.image.resize(pb->image.size());
    for (std::size_t i = 0; i < out.image.size(); ++i) out.image[i] = pa->image[pb->image[i]];
    return out;
  }
  const DenseMatrix db = to_dense(F, b);
  DenseMatrix out;
  out.n = db.n;
  out.cols.reserve(db.n);
  for (int c = 0; c < db.n; ++c) out.cols.push_back(apply(F, a, db.cols[c]));
  return out;
}

Subspace Subspace::full(const Zl& F, int n) {
  Subspace S(F, n);
  for (int i = 0; i < n; ++i) {
    Vec e(n, 0);
    e[i] = 1;
    S.rows_.push_back(std::move(e));
    S.pivots_.push_back(i);
  }
  return S;
}

void Subspace::reduce(Vec& v) const {
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    const Scalar c = v[pivots_[k]];
    if (c != 0) F_.axpy(v, F_.neg(c), rows_[k]);
  }
}

bool Subspace::contains(Vec v) const {
  reduce(v);
  return is_zero(v);
}

std::optional<Vec> Subspace::insert(Vec v) {
  if (static_cast<int>(v.size()) != n_) throw std::invalid_argument("vector length does not match the space");
  reduce(v);
  const int p = leading(v);
  if (p < 0) return std::nullopt;
  F_.scale(v, F_.inv(v[p]));
  for (auto& row : rows_) {
    const Scalar c = row[p];
    if (c != 0) F_.axpy(row, F_.neg(c), v);
  }
  const auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), p) - pivots_.begin();
  pivots_.insert(pivots_.begin() + pos, p);
  rows_.insert(rows_.begin() + pos, v);
  return v;
}

bool Subspace::contains_space(const Subspace& other) const {
  return std::all_of(other.rows_.begin(), other.rows_.end(), [&](const Vec& v) { return contains(v); });
}

Vec Subspace::coordinates(const Vec& v) const {
  Vec out(rows_.size());
  for (std::size_t k = 0; k < rows_.size(); ++k) out[k] = v[pivots_[k]];
  return out;
}

Subspace Subspace::sum(const Subspace& other) const {
  Subspace S = *this;
  for (const auto& v : other.rows_) S.insert(v);
  return S;
}

Subspace Subspace::intersect(const Subspace& other) const {
  std::vector<Vec> cols = rows_;
  cols.insert(cols.end(), other.rows_.begin(), other.rows_.end());
  const auto ker = kernel_of_columns(F_, cols, n_);
  Subspace S(F_, n_);
  for (const auto& k : ker) {
    Vec v(n_, 0);
    for (std::size_t i = 0; i < rows_.size(); ++i) F_.axpy(v, k[i], rows_[i]);
    S.insert(std::move(v));
  }
  return S;
}

std::vector<Vec> kernel_of_columns(const Zl& F, const std::vector<Vec>& cols, int rows) {
  const std::size_t m = cols.size();
  struct Entry {
    Vec v;
    Vec track;
    int piv;
  };
  std::vector<Entry> ech;
  std::vector<Vec> kernel;
  for (std::size_t c = 0; c < m; ++c) {
    Vec v = cols[c];
    if (static_cast<int>(v.size()) != rows) throw std::invalid_argument("column length mismatch");
    Vec t(m, 0);
    t[c] = 1;
    for (const auto& e : ech) {
      const Scalar f = v[e.piv];
      if (f == 0) continue;
      const Scalar nf = F.neg(f);
      F.axpy(v, nf, e.v);
      F.axpy(t, nf, e.track);
    }
    const int p = leading(v);
    if (p < 0) {
      kernel.push_back(std::move(t));
      continue;
    }
    const Scalar s = F.inv(v[p]);
    F.scale(v, s);
    F.scale(t, s);
    ech.push_back({std::move(v), std::move(t), p});
  }
  return kernel;
}

bool Module::invariant(const Subspace& S) const {
  for (const auto& g : gens) {
    for (const auto& v : S.basis()) {
      if (!S.contains(apply(field, g, v))) return false;
    }
  }
  return true;
}

Module Module::dual() const {
  std::vector<Action> t;
  t.reserve(gens.size());
  for (const auto& g : gens) t.push_back(transpose(g));
  return Module(field, dim, std::move(t));
}

Subspace spin(const Module& M, const std::vector<Vec>& seeds, std::optional<Subspace> start) {
  Subspace S = start ? std::move(*start) : Subspace(M.field, M.dim);
  std::deque<Vec> queue;
  for (const auto& s : seeds) {
    if (auto r = S.insert(s)) queue.push_back(std::move(*r));
  }
  while (!queue.empty()) {
    if (S.rank() == M.dim) break;
    Vec v = std::move(queue.front());
    queue.pop_front();
    for (const auto& g : M.gens) {
      if (auto r = S.insert(apply(M.field, g, v))) queue.push_back(std::move(*r));
    }
  }
  return S;
}

namespace {

Module induced(const Module& ambient, const std::vector<Vec>& basis, const auto& coords) {
  std::vector<Action> gens;
  gens.reserve(ambient.gens.size());
  for (const auto& g : ambient.gens) {
    DenseMatrix m;
    m.n = static_cast<int>(basis.size());
    for (const auto& b : basis) m.cols.push_back(coords(apply(ambient.field, g, b)));
    gens.push_back(std::move(m));
  }
  return Module(ambient.field, static_cast<int>(basis.size()), std::move(gens));
}

}  // namespace

Subquotient::Subquotient(const Module& ambient, const Subspace& big, const Subspace& small)
    : small_(small), module_(ambient.field, 0, {}) {
  Subspace comp(ambient.field, ambient.dim);
  for (auto b : big.basis()) {
    small_.reduce(b);
    comp.insert(std::move(b));
  }
  complement_ = comp.basis();
  cpivots_ = comp.pivots();
  module_ = induced(ambient, complement_, [&](const Vec& x) { return coords(x); });
}

Vec Subquotient::coords(const Vec& x) const {
  Vec r = x;
  small_.reduce(r);
  Vec y(complement_.size());
  for (std::size_t i = 0; i < complement_.size(); ++i) y[i] = r[cpivots_[i]];
  return y;
}

Vec Subquotient::lift(const Vec& y) const {
  Vec x(small_.ambient_dim(), 0);
  for (std::size_t i = 0; i < complement_.size(); ++i) module_.field.axpy(x, y[i], complement_[i]);
  return x;
}

Subspace fixed_space(const Zl& F, const std::vector<Action>& gens, const Subspace& within) {
  const int n = within.ambient_dim();
  std::vector<Vec> basis = within.basis();
  for (const auto& g : gens) {
    if (basis.empty()) break;
    std::vector<Vec> cols;
    cols.reserve(basis.size());
    for (const auto& b : basis) {
      Vec d = apply(F, g, b);
      F.axpy(d, F.neg(1), b);
      cols.push_back(std::move(d));
    }
    const auto ker = kernel_of_columns(F, cols, n);
    std::vector<Vec> next;
    for (const auto& k : ker) {
      Vec v(n, 0);
      for (std::size_t j = 0; j < basis.size(); ++j) F.axpy(v, k[j], basis[j]);
      next.push_back(std::move(v));
    }
    basis = std::move(next);
  }
  Subspace S(F, n);
  for (auto& b : basis) S.insert(std::move(b));
  return S;
}

std::vector<Vec> enumerate_lines(const Zl& F, const std::vector<Vec>& basis, std::size_t limit) {
  const std::size_t k = basis.size();
  if (k == 0) return {};
  const std::size_t l = F.order();
  std::size_t count = 0;
  std::size_t power = 1;
  for (std::size_t i = 0; i < k; ++i) {
    count += power;
    if (count > limit) throw BudgetExceeded("line enumeration exceeds " + std::to_string(limit) + " lines");
    power *= l;
  }
  std::vector<Vec> out;
  out.reserve(count);
  for (std::size_t p = 0; p < k; ++p) {
    const std::size_t free = k - 1 - p;
    std::vector<Scalar> coeff(free, 0);
    while (true) {
      Vec v = basis[p];
      for (std::size_t j = 0; j < free; ++j) F.axpy(v, coeff[j], basis[p + 1 + j]);
      out.push_back(std::move(v));
      std::size_t j = 0;
      while (j < free && ++coeff[j] == l) coeff[j++] = 0;
      if (j == free) break;
    }
  }
  return out;
}

namespace {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(gen_() % n); }
  Scalar scalar(const Zl& F) { return Scalar(gen_() % F.order()); }
  Scalar nonzero(const Zl& F) { return Scalar(1 + gen_() % (F.order() - 1)); }
  std::uint64_t next() { return gen_(); }

 private:
  std::mt19937_64 gen_;
};

Vec random_combination(const Zl& F, const std::vector<Vec>& basis, Rng& rng) {
  const std::size_t n = basis.front().size();
  while (true) {
    Vec v(n, 0);
    for (const auto& b : basis) F.axpy(v, rng.scalar(F), b);
    if (!is_zero(v)) return v;
  }
}

DenseMatrix random_algebra_element(const Module& M, Rng& rng, int max_word) {
  const Zl& F = M.field;
  DenseMatrix theta;
  theta.n = M.dim;
  theta.cols.assign(M.dim, Vec(M.dim, 0));
  const Scalar c0 = rng.scalar(F);
  for (int i = 0; i < M.dim; ++i) theta.cols[i][i] = c0;
  const int words = 2 + static_cast<int>(rng.below(2));
  for (int w = 0; w < words; ++w) {
    const int len = 1 + static_cast<int>(rng.below(max_word));
    Action word = M.gens[rng.below(M.gens.size())];
    for (int j = 1; j < len; ++j) word = compose(F, M.gens[rng.below(M.gens.size())], word);
    const Scalar c = rng.nonzero(F);
    if (const auto* p = std::get_if<Permutation>(&word)) {
      for (int i = 0; i < M.dim; ++i) theta.cols[i][p->image[i]] = F.add(theta.cols[i][p->image[i]], c);
    } else {
      const auto& d = std::get<DenseMatrix>(word);
      for (int i = 0; i < M.dim; ++i) F.axpy(theta.cols[i], c, d.cols[i]);
    }
  }
  return theta;
}

/// {x | <y, x> = 0 for all y in S}.
Subspace annihilator(const Zl& F, const Subspace& S) {
  const int n = S.ambient_dim();
  const int r = S.rank();
  std::vector<Vec> cols(n, Vec(r, 0));
  for (int i = 0; i < r; ++i) {
    for (int c = 0; c < n; ++c) cols[c][i] = S.basis()[i][c];
  }
  Subspace out(F, n);
  for (auto& k : kernel_of_columns(F, cols, r)) out.insert(std::move(k));
  return out;
}

}  // namespace

MeatAxeResult meataxe(const Module& M, std::uint64_t seed, const MeatAxeOptions& opts) {
  if (M.dim <= 0) throw std::invalid_argument("meataxe requires a nonzero module");
  MeatAxeResult res;
  if (M.dim == 1 || M.gens.empty()) {
    res.irreducible = M.dim == 1;
    if (!res.irreducible) {
      Subspace S(M.field, M.dim);
      Vec e(M.dim, 0);
      e[0] = 1;
      S.insert(e);
      res.submodule = S;
    }
    return res;
  }
  const Zl& F = M.field;
  Rng rng(seed);
  std::optional<Module> dual;
  for (int attempt = 1; attempt <= opts.budget; ++attempt) {
    res.attempts = attempt;
    const DenseMatrix theta = random_algebra_element(M, rng, opts.max_word);
    const auto kernel = kernel_of_columns(F, theta.cols, M.dim);
    if (kernel.empty()) continue;
    std::vector<Vec> lines;
    try {
      lines = enumerate_lines(F, kernel, static_cast<std::size_t>(opts.max_kernel_lines));
    } catch (const BudgetExceeded&) {
      const Subspace S = spin(M, {random_combination(F, kernel, rng)});
      if (S.rank() < M.dim) {
        res.submodule = S;
        return res;
      }
      continue;
    }
    for (const auto& v : lines) {
      const Subspace S = spin(M, {v});
      if (S.rank() < M.dim) {
        res.submodule = S;
        return res;
      }
    }
    // Norton: some vector of ker(theta^T) must generate the dual module.
    const Action theta_t = transpose(Action(theta));
    const auto kt = kernel_of_columns(F, std::get<DenseMatrix>(theta_t).cols, M.dim);
    if (!dual) dual = M.dual();
    const Subspace St = spin(*dual, {kt.front()});
    if (St.rank() < M.dim) {
      res.submodule = annihilator(F, St);
      return res;
    }
    res.irreducible = true;
    res.kernel_dim = static_cast<int>(kernel.size());
    res.lines_checked = static_cast<int>(lines.size());
    return res;
  }
  throw BudgetExceeded("meataxe: no verdict after " + std::to_string(opts.budget) + " attempts");
}

std::vector<int> composition_factors(const Module& M, std::uint64_t seed, const MeatAxeOptions& opts) {
  std::vector<int> dims;
  Rng rng(seed);
  std::vector<Module> work{M};
  while (!work.empty()) {
    Module cur = std::move(work.back());
    work.pop_back();
    if (cur.dim == 0) continue;
    const auto r = meataxe(cur, rng.next(), opts);
    if (r.irreducible) {
      dims.push_back(cur.dim);
      continue;
    }
    const Subspace& S = *r.submodule;
    Subquotient sub(cur, S, Subspace(cur.field, cur.dim));
    Subquotient quot(cur, Subspace::full(cur.field, cur.dim), S);
    work.push_back(quot.module());
    work.push_back(sub.module());
  }
  std::sort(dims.begin(), dims.end());
  int total = 0;
  for (int d : dims) total += d;
  if (total != M.dim) throw std::logic_error("composition factor dimensions do not add up");
  return dims;
}

SocleVerdict socle_simple_check(const Module& M, const Subspace& within, const Vec& candidate,
                                const std::vector<Action>& unipotent_gens, bool defining_characteristic,
                                std::uint64_t seed, std::size_t max_lines) {
  if (!defining_characteristic) {
    throw PreconditionError("socle test requires the defining characteristic");
  }
  SocleVerdict v;
  if (is_zero(candidate) || !within.contains(candidate)) {
    v.reason = "candidate is zero or outside the module";
    return v;
  }
  const Subspace fixed = fixed_space(M.field, unipotent_gens, within);
  v.fixed_dim = fixed.rank();
  const Subspace C = spin(M, {candidate});
  const auto lines = enumerate_lines(M.field, fixed.basis(), max_lines);
  v.lines = lines.size();
  for (const auto& L : lines) {
    if (C.contains(L)) continue;  // spin(L) is contained in C, and C is checked irreducible below
    if (!spin(M, {L}).contains_space(C)) {
      v.reason = "a fixed line generates a submodule missing the candidate";
      return v;
    }
  }
  Subquotient sub(M, C, Subspace(M.field, M.dim));
  v.candidate_irreducible = meataxe(sub.module(), seed).irreducible;
  if (!v.candidate_irreducible) {
    v.reason = "the candidate generates a reducible module";
    return v;
  }
  v.simple = true;
  return v;
}

}  // namespace chevmod::linrep
