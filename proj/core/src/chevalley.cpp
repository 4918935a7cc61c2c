#include "chevmod/chevalley.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <stdexcept>

namespace chevmod::chevalley {

std::size_t MatHash::operator()(const Mat& m) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (Elem e : m.a) {
    h ^= e;
    h *= 1099511628211ull;
  }
  return h;
}

namespace {

int matrix_size_for(rootsys::CartanType t) {
  switch (t) {
    case rootsys::CartanType::A1: return 2;
    case rootsys::CartanType::A2: return 3;
    case rootsys::CartanType::A3: return 4;
    case rootsys::CartanType::B2: return 4;
  }
  return 0;
}

}  // namespace

ChevalleyGroup::ChevalleyGroup(rootsys::CartanType type, gf::FieldPtr field)
    : kind_(type == rootsys::CartanType::B2 ? GroupKind::Sp4 : GroupKind::SL),
      n_(matrix_size_for(type)),
      field_(std::move(field)),
      weyl_(type) {
  const auto& R = roots();
  entries_.resize(R.num_roots());
  for (int r = 0; r < R.num_positive(); ++r) {
    const auto& v = R.root(r);
    std::vector<Entry> e;
    if (kind_ == GroupKind::SL) {
      int i = 0;
      while (v[i] == 0) ++i;
      int j = i;
      while (j < R.rank() && v[j] == 1) ++j;
      e.push_back({i, j, 1});
    } else {
      const int e1 = v[0];
      const int e2 = 2 * v[1] - v[0];
      if (e1 == 1 && e2 == -1) e = {{0, 1, 1}, {2, 3, -1}};
      else if (e1 == 0 && e2 == 2) e = {{1, 2, 1}};
      else if (e1 == 1 && e2 == 1) e = {{0, 2, 1}, {1, 3, 1}};
      else if (e1 == 2 && e2 == 0) e = {{0, 3, 1}};
      else throw std::logic_error("unexpected root of Sp_4");
    }
    entries_[r] = e;
    std::vector<Entry> t;
    for (const auto& x : e) t.push_back({x.col, x.row, x.sign});
    entries_[R.negate(r)] = t;
  }

  if (kind_ == GroupKind::Sp4) {
    const auto& F = *field_;
    gram_ = Mat(4);
    gram_(0, 3) = 1;
    gram_(1, 2) = 1;
    gram_(2, 1) = F.neg(1);
    gram_(3, 0) = F.neg(1);
  }

  const Elem one = 1;
  const Elem minus_one = field_->neg(1);
  for (int i = 0; i < R.rank(); ++i) {
    const int a = R.simple(i);
    simple_reps_.push_back(mul(mul(eps(a, one), eps(R.negate(a), minus_one)), eps(a, one)));
  }
  const auto& W = weyl_;
  for (int w = 0; w < W.size(); ++w) {
    Mat m = identity();
    for (int i : W.word(w)) m = mul(m, simple_reps_[i]);
    weyl_reps_.push_back(m);
    std::vector<int> pattern(n_, -1);
    for (int c = 0; c < n_; ++c) {
      for (int r = 0; r < n_; ++r) {
        if (m(r, c) != 0) pattern[c] = r;
      }
    }
    weyl_patterns_.push_back(pattern);
  }
}

std::string ChevalleyGroup::name() const {
  const std::string g = kind_ == GroupKind::SL ? "SL_" + std::to_string(n_) : "Sp_4";
  return g + "(" + field_->name() + ")";
}

Mat ChevalleyGroup::identity() const {
  Mat m(n_);
  for (int i = 0; i < n_; ++i) m(i, i) = 1;
  return m;
}

Mat ChevalleyGroup::mul(const Mat& x, const Mat& y) const {
  const auto& F = *field_;
  Mat out(n_);
  for (int i = 0; i < n_; ++i) {
    for (int k = 0; k < n_; ++k) {
      const Elem xik = x(i, k);
      if (xik == 0) continue;
      for (int j = 0; j < n_; ++j) {
        const Elem ykj = y(k, j);
        if (ykj != 0) out(i, j) = F.add(out(i, j), F.mul(xik, ykj));
      }
    }
  }
  return out;
}

Mat ChevalleyGroup::inverse(const Mat& x) const {
  const auto& F = *field_;
  Mat a = x;
  Mat inv = identity();
  for (int col = 0; col < n_; ++col) {
    int piv = col;
    while (piv < n_ && a(piv, col) == 0) ++piv;
    if (piv == n_) throw std::domain_error("singular matrix");
    if (piv != col) {
      for (int j = 0; j < n_; ++j) {
        std::swap(a(piv, j), a(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
    }
    const Elem s = F.inv(a(col, col));
    for (int j = 0; j < n_; ++j) {
      a(col, j) = F.mul(a(col, j), s);
      inv(col, j) = F.mul(inv(col, j), s);
    }
    for (int r = 0; r < n_; ++r) {
      if (r == col || a(r, col) == 0) continue;
      const Elem f = F.neg(a(r, col));
      for (int j = 0; j < n_; ++j) {
        a(r, j) = F.add(a(r, j), F.mul(f, a(col, j)));
        inv(r, j) = F.add(inv(r, j), F.mul(f, inv(col, j)));
      }
    }
  }
  return inv;
}

Elem ChevalleyGroup::det(const Mat& x) const {
  const auto& F = *field_;
  Mat a = x;
  Elem d = 1;
  for (int col = 0; col < n_; ++col) {
    int piv = col;
    while (piv < n_ && a(piv, col) == 0) ++piv;
    if (piv == n_) return 0;
    if (piv != col) {
      for (int j = 0; j < n_; ++j) std::swap(a(piv, j), a(col, j));
      d = F.neg(d);
    }
    d = F.mul(d, a(col, col));
    const Elem s = F.inv(a(col, col));
    for (int r = col + 1; r < n_; ++r) {
      if (a(r, col) == 0) continue;
      const Elem f = F.neg(F.mul(a(r, col), s));
      for (int j = col; j < n_; ++j) a(r, j) = F.add(a(r, j), F.mul(f, a(col, j)));
    }
  }
  return d;
}

bool ChevalleyGroup::in_group(const Mat& x) const {
  if (x.n != n_) return false;
  if (kind_ == GroupKind::SL) return det(x) == 1;
  Mat xt(n_);
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) xt(i, j) = x(j, i);
  }
  return mul(mul(xt, gram_), x) == gram_;
}

bool ChevalleyGroup::is_upper_unitriangular(const Mat& x) const {
  for (int i = 0; i < n_; ++i) {
    if (x(i, i) != 1) return false;
    for (int j = 0; j < i; ++j) {
      if (x(i, j) != 0) return false;
    }
  }
  return true;
}

bool ChevalleyGroup::is_diagonal(const Mat& x) const {
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      if (i != j && x(i, j) != 0) return false;
    }
  }
  return true;
}

Mat ChevalleyGroup::eps(int root, Elem c) const {
  if (root < 0 || root >= roots().num_roots()) throw std::out_of_range("root index out of range");
  const auto& F = *field_;
  Mat m = identity();
  for (const auto& e : entries_[root]) m(e.row, e.col) = e.sign > 0 ? c : F.neg(c);
  return m;
}

Mat ChevalleyGroup::torus(const std::vector<Elem>& params) const {
  const auto& F = *field_;
  if (static_cast<int>(params.size()) != torus_rank()) throw std::invalid_argument("wrong number of torus parameters");
  Mat m(n_);
  if (kind_ == GroupKind::SL) {
    Elem prod = 1;
    for (int i = 0; i < n_ - 1; ++i) {
      m(i, i) = params[i];
      prod = F.mul(prod, params[i]);
    }
    m(n_ - 1, n_ - 1) = F.inv(prod);
  } else {
    m(0, 0) = params[0];
    m(1, 1) = params[1];
    m(2, 2) = F.inv(params[1]);
    m(3, 3) = F.inv(params[0]);
  }
  return m;
}

std::vector<Mat> ChevalleyGroup::torus_generators() const {
  std::vector<Mat> out;
  if (field_->order() == 2) return out;
  for (int i = 0; i < torus_rank(); ++i) {
    std::vector<Elem> p(torus_rank(), 1);
    p[i] = field_->primitive();
    out.push_back(torus(p));
  }
  return out;
}

Elem ChevalleyGroup::root_character(int root, const Mat& t) const {
  const auto& e = entries_.at(root).front();
  return field_->div(t(e.row, e.row), t(e.col, e.col));
}

std::vector<Mat> ChevalleyGroup::root_products(const std::vector<int>& roots_list,
                                               const std::vector<Elem>& scalars) const {
  std::vector<Mat> out{identity()};
  for (int r : roots_list) {
    std::vector<Mat> next;
    next.reserve(out.size() * scalars.size());
    for (const auto& m : out) {
      for (Elem c : scalars) next.push_back(mul(m, eps(r, c)));
    }
    out = std::move(next);
  }
  return out;
}

std::vector<Mat> ChevalleyGroup::u_w_elements(int w, const std::vector<Elem>& scalars) const {
  return root_products(weyl_.phi_minus(w), scalars);
}

bool ChevalleyGroup::factor(const Mat& u, const std::vector<int>& roots_list, std::vector<Elem>& coeffs) const {
  const auto& F = *field_;
  Mat rest = u;
  coeffs.assign(roots_list.size(), 0);
  for (std::size_t j = roots_list.size(); j-- > 0;) {
    const auto& e = entries_[roots_list[j]].front();
    Elem c = rest(e.row, e.col);
    if (e.sign < 0) c = F.neg(c);
    coeffs[j] = c;
    if (c != 0) rest = mul(rest, eps(roots_list[j], F.neg(c)));
  }
  return rest == identity();
}

std::vector<Mat> ChevalleyGroup::group_generators() const {
  std::vector<Mat> out;
  const auto basis = field_->fp_basis();
  const auto& R = roots();
  for (int i = 0; i < R.rank(); ++i) {
    for (int root : {R.simple(i), R.negate(R.simple(i))}) {
      for (Elem x : basis) out.push_back(eps(root, x));
    }
  }
  return out;
}

std::vector<Mat> ChevalleyGroup::unipotent_generators() const {
  std::vector<Mat> out;
  const auto basis = field_->fp_basis();
  for (int r = 0; r < roots().num_positive(); ++r) {
    for (Elem x : basis) out.push_back(eps(r, x));
  }
  return out;
}

namespace {

struct SusScan {
  int solutions = 0;
  SusDecomposition first{};
};

SusScan scan_sus(const ChevalleyGroup& G, int i, Elem c) {
  const auto& F = G.field();
  const int a = G.roots().simple(i);
  const Mat s = G.simple_rep(i);
  const Mat s_inv = G.inverse(s);
  const Mat lhs = G.mul(G.mul(s, G.eps(a, c)), s_inv);
  SusScan scan;
  for (Elem d = 1; d < F.order(); ++d) {
    const Mat x = G.eps(a, d);
    const Mat m = G.mul(G.mul(s_inv, G.eps(a, F.neg(d))), lhs);  // = t y
    Mat t(G.matrix_size());
    for (int k = 0; k < G.matrix_size(); ++k) t(k, k) = m(k, k);
    if (!G.in_group(t)) continue;
    const Mat y = G.mul(G.inverse(t), m);
    std::vector<Elem> coeff;
    if (!G.factor(y, {a}, coeff) || coeff[0] == 0) continue;
    if (G.mul(G.mul(x, s), G.mul(t, y)) != lhs) continue;
    if (scan.solutions == 0) scan.first = {d, coeff[0], x, t, y};
    ++scan.solutions;
  }
  return scan;
}

}  // namespace

SusDecomposition ChevalleyGroup::decompose_sus(int i, Elem c) const {
  if (c == 0) throw std::domain_error("decompose_sus requires a nontrivial root element");
  const auto scan = scan_sus(*this, i, c);
  if (scan.solutions != 1) {
    throw std::logic_error("s u s^{-1} = x s t y has " + std::to_string(scan.solutions) + " solutions");
  }
  return scan.first;
}

int ChevalleyGroup::count_sus_solutions(int i, Elem c) const {
  if (c == 0) throw std::domain_error("decompose_sus requires a nontrivial root element");
  return scan_sus(*this, i, c).solutions;
}

std::vector<int> ChevalleyGroup::column_blocks(Subset K) const {
  std::vector<bool> linked(n_ - 1, false);  // linked[j]: columns j, j+1 share a block
  for (int i = 0; i < roots().rank(); ++i) {
    if (!(K & (Subset{1} << i))) continue;
    if (kind_ == GroupKind::SL) {
      linked[i] = true;
    } else if (i == 0) {
      linked[0] = linked[2] = true;
    } else {
      linked[1] = true;
    }
  }
  std::vector<int> blocks(n_, 0);
  for (int j = 1; j < n_; ++j) blocks[j] = blocks[j - 1] + (linked[j - 1] ? 0 : 1);
  return blocks;
}

Mat canonicalize(const gf::FieldSpec& F, const Mat& g, const std::vector<int>& blocks) {
  const int n = g.n;
  std::vector<std::vector<Elem>> chosen;
  std::vector<int> pivots;
  auto eliminate = [&](std::vector<Elem>& v, const std::vector<Elem>& col, int piv) {
    const Elem f = v[piv];
    if (f == 0) return;
    const Elem nf = F.neg(f);
    for (int r = 0; r < n; ++r) {
      if (col[r] != 0) v[r] = F.add(v[r], F.mul(nf, col[r]));
    }
  };
  int start = 0;
  while (start < n) {
    int end = start;
    while (end < n && blocks[end] == blocks[start]) ++end;
    std::vector<std::vector<Elem>> fresh;
    std::vector<int> fresh_piv;
    for (int c = start; c < end; ++c) {
      std::vector<Elem> v(n);
      for (int r = 0; r < n; ++r) v[r] = g(r, c);
      for (std::size_t k = 0; k < chosen.size(); ++k) eliminate(v, chosen[k], pivots[k]);
      for (std::size_t k = 0; k < fresh.size(); ++k) eliminate(v, fresh[k], fresh_piv[k]);
      int piv = -1;
      for (int r = n - 1; r >= 0; --r) {
        if (v[r] != 0) {
          piv = r;
          break;
        }
      }
      if (piv < 0) throw std::domain_error("canonicalize: singular matrix");
      const Elem s = F.inv(v[piv]);
      for (auto& x : v) x = F.mul(x, s);
      for (std::size_t k = 0; k < fresh.size(); ++k) eliminate(fresh[k], v, piv);
      fresh.push_back(std::move(v));
      fresh_piv.push_back(piv);
    }
    std::vector<std::size_t> order(fresh.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return fresh_piv[x] < fresh_piv[y]; });
    for (std::size_t k : order) {
      chosen.push_back(fresh[k]);
      pivots.push_back(fresh_piv[k]);
    }
    start = end;
  }
  Mat out(n);
  for (int c = 0; c < n; ++c) {
    for (int r = 0; r < n; ++r) out(r, c) = chosen[c][r];
  }
  return out;
}

std::vector<int> pivot_pattern(const Mat& m) {
  std::vector<int> out(m.n, -1);
  for (int c = 0; c < m.n; ++c) {
    for (int r = m.n - 1; r >= 0; --r) {
      if (m(r, c) != 0) {
        out[c] = r;
        break;
      }
    }
  }
  return out;
}

CosetSpace::CosetSpace(const ChevalleyGroup& group, Subset K, std::size_t limit)
    : group_(&group), K_(K), blocks_(group.column_blocks(K)) {
  const auto& F = group.field();
  const auto gens = group.group_generators();
  const Mat id = group.identity();
  points_.push_back(canonicalize(F, id, blocks_));
  reps_.push_back(id);
  index_.emplace(points_[0], 0);
  for (std::size_t head = 0; head < points_.size(); ++head) {
    for (const auto& g : gens) {
      Mat p = canonicalize(F, group.mul(g, points_[head]), blocks_);
      if (index_.count(p)) continue;
      if (points_.size() >= limit) {
        throw BudgetExceeded("coset enumeration for " + group.name() + " exceeds " + std::to_string(limit) + " points");
      }
      index_.emplace(p, static_cast<std::uint32_t>(points_.size()));
      points_.push_back(std::move(p));
      reps_.push_back(group.mul(g, reps_[head]));
    }
  }
  if (is_borel()) {
    std::map<std::vector<int>, int> by_pattern;
    for (int w = 0; w < group.weyl().size(); ++w) by_pattern[group.weyl_pattern(w)] = w;
    labels_.resize(points_.size());
    for (std::size_t i = 0; i < points_.size(); ++i) labels_[i] = by_pattern.at(pivot_pattern(points_[i]));
  }
}

std::uint32_t CosetSpace::locate(const Mat& g) const {
  const auto it = index_.find(canonicalize(group_->field(), g, blocks_));
  if (it == index_.end()) throw std::logic_error("coset not found: element outside the group");
  return it->second;
}

std::vector<std::uint32_t> CosetSpace::action(const Mat& g) const {
  std::vector<std::uint32_t> perm(points_.size());
  for (std::size_t i = 0; i < points_.size(); ++i) perm[i] = locate(group_->mul(g, points_[i]));
  return perm;
}

int CosetSpace::bruhat_label(std::size_t i) const {
  if (!is_borel()) throw std::logic_error("Bruhat labels are defined for Borel cosets only");
  return labels_.at(i);
}

namespace {

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}
  Elem elem(const gf::FieldSpec& F) { return static_cast<Elem>(rng_() % F.order()); }
  Elem nonzero(const gf::FieldSpec& F) { return 1 + static_cast<Elem>(rng_() % (F.order() - 1)); }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }

 private:
  std::mt19937_64 rng_;
};

std::string lift_constant(const gf::FieldSpec& F, Elem c) {
  if (!F.is_prime_field()) {
    // Integer structure constants live in the prime field.
    for (int v = 0; v < static_cast<int>(F.characteristic()); ++v) {
      if (F.from_int(v) == c) return std::to_string(v <= static_cast<int>(F.characteristic()) / 2 ? v : v - static_cast<int>(F.characteristic()));
    }
    return F.format(c);
  }
  const int p = static_cast<int>(F.characteristic());
  const int v = static_cast<int>(c);
  return std::to_string(v <= p / 2 ? v : v - p);
}

}  // namespace

StructureReport check_structure_facts(const ChevalleyGroup& G, const StructureOptions& opts) {
  StructureReport rep;
  const auto& F = G.field();
  const auto& W = G.weyl();
  const auto& R = G.roots();
  const bool exhaustive = F.order() <= opts.exhaustive_order;
  rep.exhaustive = exhaustive;
  Sampler rng(opts.seed);
  const auto all = F.enumerate();

  std::vector<int> positive(R.num_positive());
  for (int r = 0; r < R.num_positive(); ++r) positive[r] = r;

  // Conjugation of root subgroups by Weyl representatives.
  auto conj_case = [&](int w, int a, Elem c) {
    const Mat wd = G.weyl_rep(w);
    const Mat m = G.mul(G.mul(wd, G.eps(a, c)), G.inverse(wd));
    const int target = W.act(w, a);
    std::vector<Elem> coeff;
    const bool ok = G.factor(m, {target}, coeff);
    rep.conjugation.record(ok, [&] {
      return "w=" + W.format(w) + " alpha=" + R.format_root(a) + " c=" + F.format(c);
    });
  };
  if (exhaustive) {
    for (int w = 0; w < W.size(); ++w)
      for (int a = 0; a < R.num_roots(); ++a)
        for (Elem c : all) conj_case(w, a, c);
  } else {
    for (std::size_t k = 0; k < opts.samples; ++k)
      conj_case(static_cast<int>(rng.index(W.size())), static_cast<int>(rng.index(R.num_roots())), rng.elem(F));
  }

  // w U'_w w^{-1} in U, bijectivity of U_w x U'_w -> U, unique factorization in U_w.
  for (int w = 0; w < W.size(); ++w) {
    const auto minus = W.phi_minus(w);
    const auto plus = W.phi_plus(w);
    const Mat wd = G.weyl_rep(w);
    const Mat wd_inv = G.inverse(wd);
    if (exhaustive) {
      const auto Uw = G.root_products(minus, all);
      const auto Upw = G.root_products(plus, all);
      for (const auto& u : Upw) {
        rep.positive_part.record(G.is_upper_unitriangular(G.mul(G.mul(wd, u), wd_inv)),
                                 [&] { return "w=" + W.format(w); });
      }
      std::unordered_map<Mat, int, MatHash> seen;
      for (const auto& u : Uw) seen.emplace(u, 0);
      rep.uniqueness.record(seen.size() == Uw.size(), [&] { return "repeated factored forms for w=" + W.format(w); });
      std::unordered_map<Mat, int, MatHash> products;
      bool inside = true;
      for (const auto& u : Uw) {
        for (const auto& v : Upw) {
          Mat x = G.mul(u, v);
          inside = inside && G.is_upper_unitriangular(x);
          products.emplace(std::move(x), 0);
        }
      }
      std::size_t expected = 1;
      for (int r = 0; r < R.num_positive(); ++r) expected *= F.order();
      rep.multiplication.record(inside && products.size() == expected, [&] {
        return "w=" + W.format(w) + ": " + std::to_string(products.size()) + " distinct products, expected " +
               std::to_string(expected);
      });
    } else {
      std::unordered_map<Mat, std::vector<Elem>, MatHash> products;
      for (std::size_t k = 0; k < opts.samples / W.size() + 1; ++k) {
        std::vector<Elem> cm, cp;
        for (std::size_t j = 0; j < minus.size(); ++j) cm.push_back(rng.elem(F));
        for (std::size_t j = 0; j < plus.size(); ++j) cp.push_back(rng.elem(F));
        Mat u = G.identity();
        for (std::size_t j = 0; j < minus.size(); ++j) u = G.mul(u, G.eps(minus[j], cm[j]));
        Mat v = G.identity();
        for (std::size_t j = 0; j < plus.size(); ++j) v = G.mul(v, G.eps(plus[j], cp[j]));
        rep.positive_part.record(G.is_upper_unitriangular(G.mul(G.mul(wd, v), wd_inv)),
                                 [&] { return "w=" + W.format(w); });
        std::vector<Elem> back;
        rep.uniqueness.record(G.factor(u, minus, back) && back == cm, [&] { return "refactoring failed, w=" + W.format(w); });
        Mat x = G.mul(u, v);
        std::vector<Elem> key = cm;
        key.insert(key.end(), cp.begin(), cp.end());
        const auto it = products.find(x);
        const bool fresh = it == products.end() || it->second == key;
        rep.multiplication.record(fresh && G.is_upper_unitriangular(x), [&] { return "collision, w=" + W.format(w); });
        products.emplace(std::move(x), std::move(key));
      }
    }
  }

  // Commutator relations.
  bool any_pair = false;
  for (int a = 0; a < R.num_positive(); ++a) {
    for (int b = 0; b < R.num_positive(); ++b) {
      if (a == b) continue;
      std::vector<int> targets;
      std::vector<std::pair<int, int>> mn;
      for (int r = 0; r < R.num_positive(); ++r) {
        for (int m = 1; m <= 3; ++m) {
          for (int n = 1; n <= 3; ++n) {
            if (R.combine(m, a, n, b) == r) {
              targets.push_back(r);
              mn.emplace_back(m, n);
            }
          }
        }
      }
      if (!targets.empty()) any_pair = true;
      std::vector<Elem> constants(targets.size(), 0);
      std::vector<bool> have(targets.size(), false);
      auto comm_case = [&](Elem x, Elem y) {
        const Mat ea = G.eps(a, x);
        const Mat eb = G.eps(b, y);
        const Mat c = G.mul(G.mul(ea, eb), G.mul(G.inverse(ea), G.inverse(eb)));
        std::vector<Elem> coeff;
        bool ok = G.factor(c, targets, coeff);
        for (std::size_t t = 0; ok && t < targets.size(); ++t) {
          const Elem scale = F.mul(F.pow(x, mn[t].first), F.pow(y, mn[t].second));
          const Elem k = F.div(coeff[t], scale);
          if (!have[t]) {
            constants[t] = k;
            have[t] = true;
          } else if (constants[t] != k) {
            ok = false;
          }
        }
        rep.commutators.record(ok, [&] {
          return "[eps(" + R.format_root(a) + "," + F.format(x) + "), eps(" + R.format_root(b) + "," + F.format(y) + ")]";
        });
      };
      if (exhaustive) {
        for (Elem x = 1; x < F.order(); ++x)
          for (Elem y = 1; y < F.order(); ++y) comm_case(x, y);
      } else {
        for (std::size_t k = 0; k < opts.samples / 4 + 1; ++k) comm_case(rng.nonzero(F), rng.nonzero(F));
      }
      if (a < b) {
        for (std::size_t t = 0; t < targets.size(); ++t) {
          if (!have[t]) continue;
          rep.commutators.note("c[" + R.format_root(a) + "," + R.format_root(b) + "]^" + std::to_string(mn[t].first) +
                                   std::to_string(mn[t].second),
                               lift_constant(F, constants[t]));
        }
      }
    }
  }
  if (!any_pair) rep.commutators.note("vacuous", "no two positive roots sum to a root");

  // eps additivity and torus conjugation.
  std::vector<Mat> tori;
  if (exhaustive) {
    std::vector<std::vector<Elem>> params{{}};
    for (int i = 0; i < G.torus_rank(); ++i) {
      std::vector<std::vector<Elem>> next;
      for (const auto& p : params) {
        for (Elem x = 1; x < F.order(); ++x) {
          auto q = p;
          q.push_back(x);
          next.push_back(q);
        }
      }
      params = std::move(next);
    }
    for (const auto& p : params) tori.push_back(G.torus(p));
  } else {
    for (std::size_t k = 0; k < 16; ++k) {
      std::vector<Elem> p;
      for (int i = 0; i < G.torus_rank(); ++i) p.push_back(rng.nonzero(F));
      tori.push_back(G.torus(p));
    }
  }
  for (int r = 0; r < R.num_roots(); ++r) {
    auto add_case = [&](Elem x, Elem y) {
      rep.torus.record(G.mul(G.eps(r, x), G.eps(r, y)) == G.eps(r, F.add(x, y)),
                       [&] { return "additivity at " + R.format_root(r); });
    };
    if (exhaustive) {
      for (Elem x : all)
        for (Elem y : all) add_case(x, y);
    } else {
      for (std::size_t k = 0; k < opts.samples / R.num_roots() + 1; ++k) add_case(rng.elem(F), rng.elem(F));
    }
    for (const auto& t : tori) {
      auto tor_case = [&](Elem c) {
        const Mat lhs = G.mul(G.mul(t, G.eps(r, c)), G.inverse(t));
        rep.torus.record(G.in_group(t) && lhs == G.eps(r, F.mul(G.root_character(r, t), c)),
                         [&] { return "torus conjugation at " + R.format_root(r); });
      };
      if (exhaustive) {
        for (Elem c : all) tor_case(c);
      } else {
        tor_case(rng.elem(F));
      }
    }
  }
  return rep;
}

}  // namespace chevmod::chevalley
