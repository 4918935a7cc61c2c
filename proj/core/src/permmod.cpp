#include "chevmod/permmod.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>

namespace chevmod::permmod {

using linrep::Action;
using linrep::Permutation;

// ---------------------------------------------------------------------------
// PermSpace

PermSpace::PermSpace(const chevalley::ChevalleyGroup& G, Subset K, const linrep::Zl& k, std::size_t limit)
    : G_(&G), cosets_(G, K, limit), module_(k, 0, {}) {
  std::vector<Action> gens;
  for (const auto& g : G.group_generators()) gens.push_back(Permutation{cosets_.action(g)});
  module_ = linrep::Module(k, dim(), std::move(gens));
  eps_cache_.resize(static_cast<std::size_t>(G.roots().num_roots()) * G.field().order());
  weyl_cache_.resize(G.weyl().size());
}

Vec PermSpace::base() const {
  Vec v(dim(), 0);
  v[0] = 1;
  return v;
}

const Permutation& PermSpace::eps_perm(int root, Elem c) const {
  auto& slot = eps_cache_.at(static_cast<std::size_t>(root) * G_->field().order() + c);
  if (!slot) slot = Permutation{cosets_.action(G_->eps(root, c))};
  return *slot;
}

const Permutation& PermSpace::weyl_perm(int w) const {
  auto& slot = weyl_cache_.at(w);
  if (!slot) slot = Permutation{cosets_.action(G_->weyl_rep(w))};
  return *slot;
}

Vec PermSpace::apply(const Permutation& p, const Vec& v) const {
  Vec out(v.size(), 0);
  for (std::size_t i = 0; i < v.size(); ++i) out[p.image[i]] = v[i];
  return out;
}

Vec PermSpace::act(const Mat& g, const Vec& v) const {
  return apply(Permutation{cosets_.action(g)}, v);
}

Vec PermSpace::root_sum(int root, const std::vector<Elem>& elems, const Vec& v) const {
  const auto& F = coeff();
  Vec out(v.size(), 0);
  for (Elem c : elems) {
    const auto& p = eps_perm(root, c);
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] != 0) out[p.image[i]] = F.add(out[p.image[i]], v[i]);
    }
  }
  return out;
}

Vec PermSpace::root_products_sum(const std::vector<int>& roots, const std::vector<Elem>& elems, const Vec& v) const {
  Vec out = v;
  for (std::size_t j = roots.size(); j-- > 0;) out = root_sum(roots[j], elems, out);
  return out;
}

std::vector<Action> PermSpace::unipotent_actions() const {
  std::vector<Action> out;
  const auto basis = G_->field().fp_basis();
  for (int r = 0; r < G_->roots().num_positive(); ++r) {
    for (Elem x : basis) out.push_back(eps_perm(r, x));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Context

namespace {

std::size_t expected_cosets(const rootsys::WeylGroup& W, const std::vector<int>& reps, std::uint64_t order) {
  std::size_t total = 0;
  for (int w : reps) {
    std::size_t t = 1;
    for (int k = 0; k < W.length(w); ++k) t *= order;
    total += t;
  }
  return total;
}

Vec zero_like(const Vec& v) { return Vec(v.size(), 0); }

}  // namespace

Context::Context(rootsys::CartanType type, unsigned q, unsigned level, unsigned ell, std::size_t budget)
    : q_(q), level_(level), ell_(ell), budget_(budget), coeff_(ell) {
  const auto [p, k] = gf::prime_power(q);
  p_ = p;
  k_ = k;
  if (level == 0) throw std::invalid_argument("field level must be positive");
  std::uint64_t order = 1;
  for (unsigned i = 0; i < k * level; ++i) {
    order *= p;
    if (order > gf::kMaxFieldOrder) throw std::invalid_argument("field order exceeds 2^16");
  }
  auto F = gf::FieldSpec::make(p, k * level);
  G_ = std::make_unique<chevalley::ChevalleyGroup>(type, F);
  const auto& W = G_->weyl();
  std::vector<int> all(W.size());
  for (int w = 0; w < W.size(); ++w) all[w] = w;
  const std::size_t expected = expected_cosets(W, all, order);
  if (expected > budget) {
    throw BudgetExceeded(G_->name() + ": |G/B| = " + std::to_string(expected) + " exceeds the budget of " +
                         std::to_string(budget));
  }
  borel_ = std::make_unique<PermSpace>(*G_, 0, coeff_, budget + 1);
  if (static_cast<std::size_t>(borel_->dim()) != expected) {
    throw std::logic_error("Borel module dimension differs from the sum over W of q^l(w)");
  }
}

std::string Context::describe() const {
  return G_->name() + " over GF(" + std::to_string(ell_) + ")";
}

const std::vector<Elem>& Context::subfield(unsigned c) const {
  if (c == 0 || level_ % c != 0) {
    throw std::invalid_argument("GF(q^" + std::to_string(c) + ") does not embed in GF(q^" + std::to_string(level_) + ")");
  }
  auto it = subfields_.find(c);
  if (it == subfields_.end()) {
    auto small = gf::FieldSpec::make(p_, k_ * c);
    gf::Embedding e(small, G_->field_ptr());
    it = subfields_.emplace(c, e.image()).first;
  }
  return it->second;
}

std::vector<Elem> Context::transversal(unsigned a, unsigned b) const {
  if (b % a != 0) throw std::invalid_argument("transversal requires a | b");
  const auto& F = G_->field();
  std::vector<Elem> big = subfield(b);
  std::sort(big.begin(), big.end());
  const auto& small = subfield(a);
  std::set<Elem> covered;
  std::vector<Elem> reps;
  for (Elem x : big) {
    if (covered.count(x)) continue;
    reps.push_back(x);
    for (Elem y : small) covered.insert(F.add(x, y));
  }
  return reps;
}

const PermSpace& Context::parabolic(Subset K) const {
  if (K == 0) return *borel_;
  auto it = parabolic_.find(K);
  if (it == parabolic_.end()) {
    it = parabolic_.emplace(K, std::make_unique<PermSpace>(*G_, K, coeff_, budget_ + 1)).first;
    const auto& W = weyl();
    std::uint64_t order = G_->field().order();
    if (static_cast<std::size_t>(it->second->dim()) != expected_cosets(W, W.min_coset_reps(K), order)) {
      throw std::logic_error("parabolic module dimension differs from the sum over W^K of q^l(w)");
    }
  }
  return *it->second;
}

Scalar Context::sign(int w) const {
  return weyl().length(w) % 2 == 0 ? Scalar(1) : coeff_.neg(1);
}

Vec Context::u_sum(const PermSpace& X, int w, unsigned c, const Vec& v) const {
  return X.root_products_sum(weyl().phi_minus(w), subfield(c), v);
}

Vec Context::u_sum_enumerated(int w, unsigned c, const Vec& v) const {
  Vec out = zero_like(v);
  for (const auto& u : G_->u_w_elements(w, subfield(c))) {
    coeff_.axpy(out, 1, borel_->act(u, v));
  }
  return out;
}

Vec Context::eta(Subset J) const {
  Vec v(borel_->dim(), 0);
  const Vec base = one_tr();
  for (int w : weyl().parabolic(J)) coeff_.axpy(v, sign(w), borel_->weyl(w, base));
  return v;
}

Vec Context::bigD(Subset J) const {
  const auto& X = parabolic(roots().full_set() & ~J);
  Vec v(X.dim(), 0);
  const Vec base = X.base();
  for (int w : weyl().parabolic(J)) coeff_.axpy(v, sign(w), X.weyl(w, base));
  return v;
}

Vec Context::frak_f(Subset K, unsigned c) const {
  Vec v(borel_->dim(), 0);
  const Vec base = one_tr();
  for (int w : weyl().parabolic(K)) coeff_.axpy(v, 1, u_sum(weyl().inverse(w), c, borel_->weyl(w, base)));
  return v;
}

Vec Context::f_cl(Subset J, unsigned c) const {
  const auto& W = weyl();
  Vec v(borel_->dim(), 0);
  const Vec base = one_tr();
  for (int x : W.parabolic(J)) {
    const int w = W.mul(W.longest(), x);
    coeff_.axpy(v, 1, u_sum(w, c, borel_->weyl(W.inverse(w), base)));
  }
  return v;
}

std::vector<int> theta_roots(const rootsys::WeylGroup& W, Subset J, int w) {
  return W.phi_minus(W.mul(W.longest(J), W.inverse(w)));
}

Vec Context::theta(Subset J, int w, int d, unsigned b, unsigned a, const Vec& v) const {
  if (b % a != 0) throw std::invalid_argument("Theta requires a | b");
  const auto roots_list = theta_roots(weyl(), J, w);
  if (d < 0 || d > static_cast<int>(roots_list.size())) throw std::invalid_argument("Theta: d out of range");
  const auto& Fb = subfield(b);
  const auto& Fa = subfield(a);
  Vec out = v;
  for (int j = static_cast<int>(roots_list.size()) - 1; j >= 0; --j) {
    out = borel_->root_sum(roots_list[j], j < d ? Fb : Fa, out);
  }
  return out;
}

Vec Context::iota(Subset K, const Vec& v, unsigned c) const {
  const auto& X = parabolic(K);
  const Vec f = frak_f(K, c);
  Vec out(borel_->dim(), 0);
  for (int i = 0; i < X.dim(); ++i) {
    if (v[i] == 0) continue;
    coeff_.axpy(out, v[i], borel_->act(X.cosets().representative(i), f));
  }
  return out;
}

const Filtration& Context::filtration() const {
  if (filtration_) return *filtration_;
  auto filt = std::make_unique<Filtration>();
  const auto& M = borel_->module();
  const Subset full = roots().full_set();
  const std::size_t count = std::size_t{1} << roots().rank();
  std::vector<Subspace> spans;
  for (Subset J = 0; J < count; ++J) spans.push_back(linrep::spin(M, {eta(J)}));
  auto& rep = filt->report;
  for (Subset J = 0; J < count; ++J) {
    for (Subset K = 0; K < count; ++K) {
      if (K == J || (K & J) != J) continue;
      const bool contained = spans[J].contains_space(spans[K]);
      rep.record(contained && spans[J].rank() > spans[K].rank(), [&] {
        return "M_J does not strictly contain M_K for J=" + rootsys::format_subset(J, roots().rank()) +
               " K=" + rootsys::format_subset(K, roots().rank());
      });
    }
  }
  std::size_t total = 0;
  for (Subset J = 0; J < count; ++J) {
    FiltrationPiece piece{J, spans[J], Subspace(coeff_, borel_->dim()), nullptr, {}};
    for (Subset K = 0; K < count; ++K) {
      if (K != J && (K & J) == J) piece.MJprime = piece.MJprime.sum(spans[K]);
    }
    piece.E = std::make_shared<linrep::Subquotient>(M, piece.MJ, piece.MJprime);
    piece.C = piece.E->coords(eta(J));
    total += piece.E->dim();
    rep.record(piece.E->dim() > 0 && !linrep::is_zero(piece.C), [&] {
      return "E_J vanishes or C_J = 0 for J=" + rootsys::format_subset(J, roots().rank());
    });
    rep.note("dim E_{" + rootsys::format_subset(J, roots().rank()) + "}", std::to_string(piece.E->dim()));
    filt->pieces.push_back(std::move(piece));
  }
  rep.record(total == static_cast<std::size_t>(borel_->dim()), [&] {
    return "sum of dim E_J is " + std::to_string(total) + ", module dimension " + std::to_string(borel_->dim());
  });
  // Steinberg dimension q^{L l(w_0)}.
  std::size_t st = 1;
  for (int k = 0; k < weyl().length(weyl().longest()); ++k) st *= G_->field().order();
  rep.record(static_cast<std::size_t>(filt->pieces[full].E->dim()) == st, "dim E_I differs from q^l(w_0)");
  // E_empty is the trivial module.
  const auto& E0 = *filt->pieces[0].E;
  bool trivial = E0.dim() == 1;
  for (const auto& g : E0.module().gens) {
    trivial = trivial && linrep::apply(coeff_, g, filt->pieces[0].C) == filt->pieces[0].C;
  }
  rep.record(trivial, "E_empty is not the trivial module");
  // dim E_J = sum over Y^J of q^{L l(w_J w^{-1})}.
  for (Subset J = 0; J < count; ++J) {
    std::size_t expected = 0;
    for (int w : weyl().y_set(J)) {
      std::size_t t = 1;
      for (int k = 0; k < weyl().length(weyl().mul(weyl().longest(J), weyl().inverse(w))); ++k) {
        t *= G_->field().order();
      }
      expected += t;
    }
    rep.record(expected == static_cast<std::size_t>(filt->pieces[J].E->dim()), [&] {
      return "dim E_J differs from the sum over Y^J for J=" + rootsys::format_subset(J, roots().rank());
    });
  }
  filtration_ = std::move(filt);
  return *filtration_;
}

Vec Context::in_E(Subset J, const Vec& v) const { return piece(J).E->coords(v); }

// ---------------------------------------------------------------------------
// Verification procedures

namespace {

std::string subset_name(const Context& ctx, Subset J) {
  return "{" + rootsys::format_subset(J, ctx.roots().rank()) + "}";
}

void require_defining(const Context& ctx, const char* what) {
  if (!ctx.defining()) {
    throw PreconditionError(std::string(what) + " requires the defining characteristic (l = p)");
  }
}

Vec add(const linrep::Zl& F, Vec x, const Vec& y, Scalar c = 1) {
  F.axpy(x, c, y);
  return x;
}

/// Applies eps(roots[0], c_0) ... eps(roots[t-1], c_{t-1}) to v for every
/// coefficient tuple, in odometer order.
std::vector<Vec> unipotent_orbit(const PermSpace& X, const std::vector<int>& roots_list,
                                 const std::vector<Elem>& elems, const Vec& v) {
  std::vector<Vec> out{v};
  for (std::size_t j = roots_list.size(); j-- > 0;) {
    std::vector<Vec> next;
    next.reserve(out.size() * elems.size());
    for (Elem c : elems) {
      for (const auto& x : out) next.push_back(X.apply(X.eps_perm(roots_list[j], c), x));
    }
    out = std::move(next);
  }
  return out;
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  Vec nonzero_vector(const linrep::Zl& F, const std::vector<Vec>& basis) {
    while (true) {
      Vec v(basis.front().size(), 0);
      for (const auto& b : basis) F.axpy(v, Scalar(gen_() % F.order()), b);
      if (!linrep::is_zero(v)) return v;
    }
  }
  Vec nonzero_vector(const linrep::Zl& F, int n) {
    while (true) {
      Vec v(n);
      for (auto& x : v) x = Scalar(gen_() % F.order());
      if (!linrep::is_zero(v)) return v;
    }
  }
  std::uint64_t next() { return gen_(); }

 private:
  std::mt19937_64 gen_;
};

/// Whether v is a scalar multiple of f (f nonzero).
bool proportional(const linrep::Zl& F, const Vec& v, const Vec& f) {
  std::size_t i = 0;
  while (f[i] == 0) ++i;
  const Scalar lambda = F.mul(v[i], F.inv(f[i]));
  Vec scaled = f;
  F.scale(scaled, lambda);
  if (lambda == 0) return linrep::is_zero(v);
  return scaled == v;
}

}  // namespace

CheckReport verify_simple_reflection_action(const Context& ctx, Subset J) {
  CheckReport rep;
  const auto& W = ctx.weyl();
  const auto& R = ctx.roots();
  const auto& G = ctx.group();
  const auto& X = ctx.borel();
  const auto& F = ctx.coeff();
  const int wJ = W.longest(J);
  const Vec eta = ctx.eta(J);
  std::size_t case2 = 0, case3 = 0, case4 = 0;
  for (int i = 0; i < R.rank(); ++i) {
    const int alpha = R.simple(i);
    const int si = W.simple(i);
    std::set<Elem> images;
    for (Elem c : ctx.subfield(ctx.level())) {
      if (c == 0) continue;
      const auto dec = G.decompose_sus(i, c);
      images.insert(dec.x_param);
      for (int w : W.min_coset_reps(J)) {
        const Vec weta = X.weyl(w, eta);
        const Vec lhs = X.weyl(si, X.apply(X.eps_perm(alpha, c), weta));
        const int siw = W.mul(si, w);
        const bool c2 = W.length(W.mul(w, wJ)) < W.length(W.mul(siw, wJ));
        const bool c3 = W.length(siw) < W.length(w);
        const bool c4 = !c3 && W.length(W.mul(siw, wJ)) < W.length(W.mul(w, wJ));
        rep.record(int(c2) + int(c3) + int(c4) == 1, [&] {
          return "case split ambiguous: i=" + std::to_string(i + 1) + " w=" + W.format(w);
        });
        Vec rhs;
        int which = 0;
        if (W.length(siw) < W.length(w)) {
          which = 3;
          rhs = X.apply(X.eps_perm(alpha, dec.x_param), weta);
        } else if (W.length(W.mul(w, wJ)) < W.length(W.mul(siw, wJ))) {
          which = 2;
          rhs = X.weyl(siw, eta);
        } else {
          which = 4;
          rhs = add(F, X.apply(X.eps_perm(alpha, dec.x_param), weta), weta, F.neg(1));
        }
        (which == 2 ? case2 : which == 3 ? case3 : case4)++;
        rep.record(lhs == rhs, [&] {
          return "case (" + std::to_string(which) + ") fails: i=" + std::to_string(i + 1) + " w=" + W.format(w) +
                 " J=" + subset_name(ctx, J);
        });
      }
    }
    rep.record(images.size() + 1 == ctx.subfield(ctx.level()).size(),
               [&] { return "f_i is not a bijection for i=" + std::to_string(i + 1); });
  }
  rep.note("case (2) identities", std::to_string(case2));
  rep.note("case (3) identities", std::to_string(case3));
  rep.note("case (4) identities", std::to_string(case4));
  return rep;
}

CheckReport verify_filtration(const Context& ctx) {
  CheckReport rep = ctx.filtration().report;
  if (ctx.defining()) {
    const auto& E = *ctx.piece(ctx.roots().full_set()).E;
    rep.record(linrep::meataxe(E.module(), 0x5eed).irreducible, "E_I is reducible");
  } else {
    rep.skip();
  }
  return rep;
}

CheckReport verify_quotient_basis(const Context& ctx, Subset J) {
  CheckReport rep;
  const auto& W = ctx.weyl();
  const auto& X = ctx.borel();
  const auto& piece = ctx.piece(J);
  const Vec eta = ctx.eta(J);
  const auto& elems = ctx.subfield(ctx.level());
  Subspace span(ctx.coeff(), piece.E->dim());
  std::size_t count = 0;
  bool independent = true;
  for (int w : W.y_set(J)) {
    for (const auto& v : unipotent_orbit(X, theta_roots(W, J, w), elems, X.weyl(w, eta))) {
      ++count;
      if (!piece.MJ.contains(v) || !span.insert(ctx.in_E(J, v))) independent = false;
    }
  }
  rep.record(independent, [&] { return "the vectors u w C_J are dependent for J=" + subset_name(ctx, J); });
  rep.record(count == static_cast<std::size_t>(piece.E->dim()), [&] {
    return "finite-level phenomenon: " + std::to_string(count) + " vectors u w C_J but dim E_J = " +
           std::to_string(piece.E->dim()) + " for J=" + subset_name(ctx, J);
  });
  rep.note("basis size", std::to_string(count));
  return rep;
}

CheckReport verify_parabolic_realization(const Context& ctx, Subset J, std::uint64_t seed) {
  CheckReport rep;
  const auto& W = ctx.weyl();
  const Subset Jp = ctx.roots().full_set() & ~J;
  const auto& X = ctx.parabolic(Jp);
  const Vec D = ctx.bigD(J);
  const Subspace Ep = linrep::spin(X.module(), {D});
  const auto& elems = ctx.subfield(ctx.level());
  Subspace span(ctx.coeff(), X.dim());
  std::size_t count = 0;
  bool independent = true;
  for (int w : W.y_set(J)) {
    for (const auto& v : unipotent_orbit(X, theta_roots(W, J, w), elems, X.weyl(w, D))) {
      ++count;
      if (!Ep.contains(v) || !span.insert(v)) independent = false;
    }
  }
  rep.record(independent, [&] { return "the vectors u w D_J are dependent for J=" + subset_name(ctx, J); });
  rep.record(count == static_cast<std::size_t>(Ep.rank()), [&] {
    return "finite-level phenomenon: " + std::to_string(count) + " vectors u w D_J but dim E'_J = " +
           std::to_string(Ep.rank());
  });
  const auto& piece = ctx.piece(J);
  rep.record(Ep.rank() == piece.E->dim(), [&] {
    return "dim E'_J = " + std::to_string(Ep.rank()) + " but dim E_J = " + std::to_string(piece.E->dim());
  });
  if (Jp == 0) rep.record(Ep == piece.MJ, "E'_I differs from the span of eta_I");
  linrep::Subquotient sub(X.module(), Ep, Subspace(ctx.coeff(), X.dim()));
  const auto f1 = linrep::composition_factors(sub.module(), seed);
  const auto f2 = linrep::composition_factors(piece.E->module(), seed + 1);
  rep.record(f1 == f2, "composition factor dimensions of E'_J and E_J differ");
  rep.note("dim E'_J", std::to_string(Ep.rank()));
  return rep;
}

CheckReport verify_steinberg_identity(const Context& ctx, Subset J, unsigned m) {
  require_defining(ctx, "the Steinberg identity");
  CheckReport rep;
  const auto& W = ctx.weyl();
  const auto& X = ctx.borel();
  const auto& F = ctx.coeff();
  const Vec inner = ctx.u_sum(W.longest(J), m, ctx.eta(J));
  Vec sum(X.dim(), 0);
  for (int w : W.parabolic(J)) F.axpy(sum, ctx.sign(w), X.weyl(w, inner));
  const auto& piece = ctx.piece(J);
  rep.record(piece.MJ.contains(sum) && ctx.in_E(J, sum) == piece.C,
             [&] { return "sum (-1)^l(w) w U_{w_J} C_J != C_J for J=" + subset_name(ctx, J); });
  return rep;
}

namespace {

/// Every combination sum n_j r_j (0 <= n_j <= 3) with n_0 >= lead_min and
/// sum n_j >= total_min that lands in `watch` must land in `target`.
bool closure_holds(const rootsys::RootDatum& R, const std::vector<int>& vars, int lead_min, int total_min,
                   const std::set<int>& watch, const std::set<int>& target) {
  const std::size_t n = vars.size();
  if (n == 0) return true;
  std::vector<int> coef(n, 0);
  const int dim = R.rank();
  while (true) {
    int total = 0;
    for (int c : coef) total += c;
    if (coef[0] >= lead_min && total >= total_min) {
      rootsys::Root v(dim, 0);
      for (std::size_t j = 0; j < n; ++j) {
        for (int k = 0; k < dim; ++k) v[k] += coef[j] * R.root(vars[j])[k];
      }
      const int idx = R.find(v);
      if (idx >= 0 && watch.count(idx) && !target.count(idx)) return false;
    }
    std::size_t j = 0;
    while (j < n && ++coef[j] > 3) coef[j++] = 0;
    if (j == n) break;
  }
  return true;
}

}  // namespace

CheckReport verify_commutation_absorption(const Context& ctx, Subset J, unsigned a, unsigned b) {
  require_defining(ctx, "the commutation lemma");
  CheckReport rep;
  const auto& W = ctx.weyl();
  const auto& R = ctx.roots();
  const auto& X = ctx.borel();
  const auto& Fa = ctx.subfield(a);
  const auto& Fb = ctx.subfield(b);
  const Vec eta = ctx.eta(J);
  std::set<int> positive;
  for (int r = 0; r < R.num_positive(); ++r) positive.insert(r);
  std::size_t inadmissible = 0, scenarios = 0;
  for (int w : W.y_set(J)) {
    const auto phi = theta_roots(W, J, w);
    const std::set<int> phi_set(phi.begin(), phi.end());
    const auto plus = W.phi_plus(W.mul(W.longest(J), W.inverse(w)));
    const Vec base = X.weyl(w, eta);
    const std::size_t t = phi.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << t); ++mask) {
      std::vector<int> A, B;
      for (std::size_t j = 0; j < t; ++j) ((mask >> j) & 1 ? A : B).push_back(phi[j]);
      const std::set<int> A_set(A.begin(), A.end());
      ++scenarios;
      if (!closure_holds(R, A, 0, 2, positive, A_set)) {
        ++inadmissible;
        rep.skip();
        continue;
      }
      const Vec inner = X.root_products_sum(B, Fa, base);
      const Vec delta = X.root_products_sum(A, Fb, inner);
      const Vec delta_E = ctx.in_E(J, delta);
      // (i)
      if (B.empty()) {
        rep.skip();
      } else {
        std::vector<int> vars{B.front()};
        vars.insert(vars.end(), A.begin(), A.end());
        if (!closure_holds(R, vars, 1, 2, positive, A_set)) {
          rep.skip();
        } else {
          for (Elem x : Fb) {
            const auto& px = X.eps_perm(B.front(), x);
            const Vec lhs = X.apply(px, delta);
            const Vec rhs = X.root_products_sum(A, Fb, X.apply(px, inner));
            rep.record(ctx.in_E(J, lhs) == ctx.in_E(J, rhs), [&] {
              return "(i) fails: w=" + W.format(w) + " beta_1=" + R.format_root(B.front());
            });
          }
        }
      }
      // (ii)
      for (int gamma : plus) {
        std::vector<int> vars{gamma};
        vars.insert(vars.end(), A.begin(), A.end());
        vars.insert(vars.end(), B.begin(), B.end());
        if (!closure_holds(R, vars, 1, 1, phi_set, A_set)) {
          rep.skip();
          continue;
        }
        for (Elem y : Fb) {
          rep.record(ctx.in_E(J, X.apply(X.eps_perm(gamma, y), delta)) == delta_E, [&] {
            return "(ii) fails: w=" + W.format(w) + " gamma=" + R.format_root(gamma);
          });
        }
      }
    }
  }
  rep.note("scenarios", std::to_string(scenarios));
  rep.note("inadmissible scenarios", std::to_string(inadmissible));
  return rep;
}

CheckReport verify_theta_steps(const Context& ctx, Subset J, unsigned a, unsigned b) {
  require_defining(ctx, "the Theta step identities");
  CheckReport rep;
  const auto& W = ctx.weyl();
  const auto& X = ctx.borel();
  const auto& F = ctx.coeff();
  const Vec eta = ctx.eta(J);
  const auto Y = W.y_set(J);
  const auto T = ctx.transversal(a, b);
  auto I_sum = [&](int root, const Vec& v) { return X.root_sum(root, T, v); };
  std::size_t differing = 0;
  for (int w : Y) {
    const auto roots_list = theta_roots(W, J, w);
    const int t = static_cast<int>(roots_list.size());
    const Vec base = X.weyl(w, eta);
    const int x = W.mul(W.longest(J), W.inverse(w));
    rep.record(ctx.theta(J, w, t, a, a, base) == ctx.u_sum(x, a, base), "Theta(w,t,a,a) != U_{w_J w^-1, q^a}");
    rep.record(ctx.theta(J, w, t, b, a, base) == ctx.u_sum(x, b, base), "Theta(w,t,b,a) != U_{w_J w^-1, q^b}");
    for (int d = 0; d < t; ++d) {
      const Vec lhs = I_sum(roots_list[d], ctx.theta(J, w, d, b, a, base));
      const Vec rhs = ctx.theta(J, w, d + 1, b, a, base);
      rep.record(ctx.in_E(J, lhs) == ctx.in_E(J, rhs), [&] {
        return "transversal step fails: w=" + W.format(w) + " d=" + std::to_string(d);
      });
    }
    if (t > 0 && a != b &&
        ctx.in_E(J, ctx.theta(J, w, 0, b, a, base)) != ctx.in_E(J, ctx.theta(J, w, t, b, a, base))) {
      ++differing;
    }
  }
  // Subsets Y of Y^J with at least two elements.
  std::size_t multi = 0;
  for (std::size_t mask = 1; mask < (std::size_t{1} << Y.size()); ++mask) {
    std::vector<int> sub;
    for (std::size_t j = 0; j < Y.size(); ++j) {
      if ((mask >> j) & 1) sub.push_back(Y[j]);
    }
    if (sub.size() < 2) continue;
    std::set<int> uni;
    std::vector<std::set<int>> sets;
    for (int w : sub) {
      const auto r = theta_roots(W, J, w);
      sets.emplace_back(r.begin(), r.end());
      uni.insert(r.begin(), r.end());
    }
    const std::vector<int> phiY(uni.begin(), uni.end());  // root indices follow the global order
    std::size_t l0 = 0;
    while (l0 < phiY.size() &&
           std::all_of(sets.begin(), sets.end(), [&](const std::set<int>& s) { return s.count(phiY[l0]) > 0; })) {
      ++l0;
    }
    if (l0 == phiY.size()) {
      rep.record(false, "two elements of Y^J share Phi^-_{w_J w^-1}");
      continue;
    }
    for (std::size_t d = 0; d <= l0; ++d) {
      ++multi;
      Vec xi_next(ctx.piece(J).E->dim(), 0);
      for (std::size_t k = 0; k < sub.size(); ++k) {
        const int w = sub[k];
        const Vec base = X.weyl(w, eta);
        Vec v = ctx.theta(J, w, static_cast<int>(d), b, a, base);
        for (std::size_t j = d; j <= l0; ++j) v = I_sum(phiY[j], v);
        const Vec vE = ctx.in_E(J, v);
        F.axpy(xi_next, 1, vE);
        if (sets[k].count(phiY[l0])) {
          const Vec rhs = ctx.theta(J, w, static_cast<int>(l0) + 1, b, a, base);
          rep.record(vE == ctx.in_E(J, rhs), [&] { return "collapse to Theta(w,d+l) fails: w=" + W.format(w); });
        } else {
          rep.record(linrep::is_zero(vE), [&] { return "transversal product does not vanish: w=" + W.format(w); });
          const Vec single = I_sum(phiY[l0], ctx.theta(J, w, static_cast<int>(l0), b, a, base));
          rep.record(linrep::is_zero(ctx.in_E(J, single)),
                     [&] { return "q^{b-a} vanishing fails: w=" + W.format(w); });
        }
      }
      rep.record(!linrep::is_zero(xi_next), "xi_{d+l} vanishes");
    }
  }
  rep.note("multi-element subsets (with d)", std::to_string(multi));
  rep.note("Theta(w,0) != Theta(w,t) in E_J", std::to_string(differing));
  return rep;
}

SeparationResult find_separation_witness(const Context& ctx, Subset J, const std::vector<int>& Y, int d,
                                         unsigned a, unsigned b, const std::vector<Scalar>& coefficients) {
  require_defining(ctx, "the separation statement");
  if (Y.empty() || coefficients.size() != Y.size()) throw std::invalid_argument("separation: bad Y or coefficients");
  if (a == b || b % a != 0) throw std::invalid_argument("separation requires a != b and a | b");
  const auto& W = ctx.weyl();
  const auto& X = ctx.borel();
  const auto& F = ctx.coeff();
  const Vec eta = ctx.eta(J);
  std::set<int> uni;
  for (int w : Y) {
    const auto r = theta_roots(W, J, w);
    uni.insert(r.begin(), r.end());
  }
  const std::vector<int> phiY(uni.begin(), uni.end());
  if (d > static_cast<int>(phiY.size())) throw std::invalid_argument("separation: d too large");
  for (int j = 0; j < d; ++j) {
    for (int w : Y) {
      const auto r = theta_roots(W, J, w);
      if (std::find(r.begin(), r.end(), phiY[j]) == r.end()) {
        throw std::invalid_argument("separation: the first d roots are not common to Y");
      }
    }
  }
  const auto& E = *ctx.piece(J).E;
  Vec xi(E.dim(), 0);
  for (std::size_t k = 0; k < Y.size(); ++k) {
    if (coefficients[k] == 0) throw std::invalid_argument("separation: coefficients must be nonzero");
    F.axpy(xi, coefficients[k], ctx.in_E(J, ctx.theta(J, Y[k], d, b, a, X.weyl(Y[k], eta))));
  }
  SeparationResult res;
  if (linrep::is_zero(xi)) return res;
  res.precondition = true;
  const Subspace M = linrep::spin(E.module(), {xi});
  for (unsigned c : {b, a}) {
    for (int w : W.y_set(J)) {
      const Vec target = ctx.in_E(J, ctx.u_sum(W.mul(W.longest(J), W.inverse(w)), c, X.weyl(w, eta)));
      if (!linrep::is_zero(target) && M.contains(target)) {
        res.found = true;
        res.w = w;
        res.c = c;
        return res;
      }
    }
  }
  return res;
}

CheckReport verify_separation(const Context& ctx, Subset J, unsigned a, unsigned b) {
  CheckReport rep;
  const auto& W = ctx.weyl();
  const auto Y = W.y_set(J);
  // Every nonempty subset while that stays small; otherwise the singletons,
  // the whole set and a fixed random sample.
  std::vector<std::uint64_t> masks;
  const std::uint64_t full = (std::uint64_t{1} << Y.size()) - 1;
  if (Y.size() <= kExhaustiveSeparationSize) {
    for (std::uint64_t m = 1; m <= full; ++m) masks.push_back(m);
  } else {
    rep.note("subsets", "sampled");
    std::set<std::uint64_t> picked;
    for (std::size_t j = 0; j < Y.size(); ++j) picked.insert(std::uint64_t{1} << j);
    picked.insert(full);
    std::mt19937_64 rng(0x5e9a0000u + J);
    while (picked.size() < Y.size() + 1 + kSampledSeparationSubsets) {
      const std::uint64_t m = rng() & full;
      if (m != 0) picked.insert(m);
    }
    masks.assign(picked.begin(), picked.end());
  }
  for (const std::uint64_t mask : masks) {
    std::vector<int> sub;
    std::string label;
    for (std::size_t j = 0; j < Y.size(); ++j) {
      if ((mask >> j) & 1) {
        sub.push_back(Y[j]);
        label += (label.empty() ? "" : ",") + W.format(Y[j]);
      }
    }
    const auto r = find_separation_witness(ctx, J, sub, 0, a, b, std::vector<Scalar>(sub.size(), 1));
    if (!r.precondition) {
      rep.skip();
      rep.note("Y={" + label + "}", "xi_0 = 0");
      continue;
    }
    rep.record(r.found, [&] { return "no witness for J=" + subset_name(ctx, J) + " Y={" + label + "}"; });
    if (r.found) {
      rep.note("Y={" + label + "}", "w=" + W.format(r.w) + " c=" + std::to_string(r.c));
    }
  }
  return rep;
}

CheckReport verify_induction_step(const Context& ctx, Subset J, int w, int s, unsigned a, unsigned b) {
  require_defining(ctx, "the induction step");
  if (a == b || b % a != 0) throw std::invalid_argument("induction step requires a != b and a | b");
  const auto& W = ctx.weyl();
  const auto& X = ctx.borel();
  const int si = W.simple(s);
  const int sw = W.mul(si, w);
  const auto Y = W.y_set(J);
  const auto in_Y = [&](int x) { return std::find(Y.begin(), Y.end(), x) != Y.end(); };
  if (!in_Y(w) || !in_Y(sw) || W.length(sw) <= W.length(w)) {
    throw std::invalid_argument("induction step requires w, sw in Y^J with sw > w");
  }
  CheckReport rep;
  const Vec eta = ctx.eta(J);
  const int x = W.mul(W.longest(J), W.inverse(w));
  const Vec seed = ctx.u_sum(W.mul(x, si), a, X.weyl(si, X.weyl(w, eta)));
  const auto& E = *ctx.piece(J).E;
  const Vec seedE = ctx.in_E(J, seed);
  const Subspace M = linrep::spin(E.module(), {seedE});
  const Vec target = ctx.in_E(J, ctx.u_sum(x, b, X.weyl(w, eta)));
  rep.record(!linrep::is_zero(seedE) && !linrep::is_zero(target) && M.contains(target), [&] {
    return "U_{w_J w^-1, q^b} w C_J not in the submodule for w=" + W.format(w) + " s=s" + std::to_string(s + 1);
  });
  return rep;
}

CheckReport verify_induction_steps(const Context& ctx, Subset J, unsigned a, unsigned b) {
  CheckReport rep;
  const auto& W = ctx.weyl();
  const auto Y = W.y_set(J);
  for (int w : Y) {
    for (int s = 0; s < W.rank(); ++s) {
      const int sw = W.mul(W.simple(s), w);
      if (std::find(Y.begin(), Y.end(), sw) == Y.end() || W.length(sw) <= W.length(w)) continue;
      rep.absorb(verify_induction_step(ctx, J, w, s, a, b));
      rep.note("pair", "w=" + W.format(w) + " s=s" + std::to_string(s + 1));
    }
  }
  return rep;
}

CheckReport verify_fixed_points(const Context& ctx, std::size_t samples, std::uint64_t seed) {
  require_defining(ctx, "the fixed-point property");
  CheckReport rep;
  const auto& X = ctx.borel();
  const auto U = X.unipotent_actions();
  Rng rng(seed);
  for (std::size_t k = 0; k < samples; ++k) {
    const Vec x = rng.nonzero_vector(ctx.coeff(), X.dim());
    const Subspace S = linrep::spin(X.module(), {x});
    rep.record(linrep::fixed_space(ctx.coeff(), U, S).rank() > 0,
               [&] { return "sample " + std::to_string(k) + " spans a submodule without U-fixed vectors"; });
  }
  return rep;
}

namespace {

struct SocleData {
  Vec candidate;  // (-1)^{l(w_J)} U_{w_J v_J^{-1}} v_J D_J in k[G/P_{J'}]
  Subspace Ep;
};

SocleData socle_data(const Context& ctx, Subset J) {
  const auto& W = ctx.weyl();
  const Subset Jp = ctx.roots().full_set() & ~J;
  const auto& X = ctx.parabolic(Jp);
  const auto fact = W.w0_factorization(J);
  const Vec D = ctx.bigD(J);
  Vec cand = ctx.u_sum(X, W.mul(fact.wJ, W.inverse(fact.v)), ctx.level(), X.weyl(fact.v, D));
  ctx.coeff().scale(cand, ctx.sign(fact.wJ));
  return {std::move(cand), linrep::spin(X.module(), {D})};
}

}  // namespace

CheckReport verify_socle(const Context& ctx, Subset J, std::uint64_t seed) {
  require_defining(ctx, "the simple-socle test");
  CheckReport rep;
  const Subset Jp = ctx.roots().full_set() & ~J;
  const auto& X = ctx.parabolic(Jp);
  const auto data = socle_data(ctx, J);
  const auto verdict =
      linrep::socle_simple_check(X.module(), data.Ep, data.candidate, X.unipotent_actions(), true, seed);
  rep.record(verdict.simple, [&] { return "socle of E'_J not simple for J=" + subset_name(ctx, J) + ": " + verdict.reason; });
  rep.note("U-fixed dimension in E'_J", std::to_string(verdict.fixed_dim));
  rep.note("fixed lines checked", std::to_string(verdict.lines));
  return rep;
}

CheckReport verify_socle_route(const Context& ctx, Subset J, std::size_t samples, std::uint64_t seed) {
  require_defining(ctx, "the socle route");
  CheckReport rep;
  const auto& W = ctx.weyl();
  const auto& R = ctx.roots();
  const auto& G = ctx.group();
  const auto& B = ctx.borel();
  const auto& F = ctx.coeff();
  const unsigned L = ctx.level();
  const Subset Jp = R.full_set() & ~J;
  const auto fact = W.w0_factorization(J);
  const int x = W.mul(fact.wJ, W.inverse(fact.v));
  const Vec fJp = ctx.frak_f(Jp, L);
  const Vec f_sigma = ctx.f_cl(W.apply_sigma(Jp), L);

  // (a) f^{sigma J'} = U_{w_J v_J^{-1}} v_J w_J f_{J'}.
  rep.record(f_sigma == ctx.u_sum(x, L, B.weyl(fact.v, B.weyl(fact.wJ, fJp))),
             "(a) f^{sigma J'} differs from U_{w_J v_J^-1} v_J w_J f_{J'}");
  // (b) vanishing below w_J.
  for (int w : W.parabolic(J)) {
    if (w == fact.wJ) continue;
    if (!W.bruhat_le(w, fact.wJ)) {
      rep.skip();
      continue;
    }
    rep.record(linrep::is_zero(ctx.u_sum(x, L, B.weyl(fact.v, B.weyl(w, fJp)))),
               [&] { return "(b) U_{w_J v_J^-1} v_J w f_{J'} != 0 for w=" + W.format(w); });
  }
  // (c) the line k f^J.
  {
    const Vec f = ctx.f_cl(J, L);
    const Subspace S = linrep::spin(B.module(), {f});
    linrep::Subquotient sub(B.module(), S, Subspace(F, B.dim()));
    rep.record(linrep::meataxe(sub.module(), seed).irreducible, "(c) k G f^J is reducible");
    rep.record(linrep::fixed_space(F, B.unipotent_actions(), S).rank() == 1, "(c) U-fixed space of k G f^J is not a line");
    const auto basis = G.field().fp_basis();
    std::vector<std::pair<std::string, Vec>> stab;
    for (int r = 0; r < R.num_positive(); ++r) {
      for (Elem c : basis) stab.emplace_back("eps(" + R.format_root(r) + ")", B.apply(B.eps_perm(r, c), f));
    }
    for (int j = 0; j < R.rank(); ++j) {
      const int neg = R.negate(R.simple(j));
      if (J & (Subset{1} << j)) {
        for (Elem c : basis) stab.emplace_back("eps(" + R.format_root(neg) + ")", B.apply(B.eps_perm(neg, c), f));
      } else {
        rep.record(!proportional(F, B.apply(B.eps_perm(neg, 1), f), f),
                   [&] { return "(c) eps(-a" + std::to_string(j + 1) + ", 1) stabilizes k f^J"; });
      }
    }
    for (const auto& t : G.torus_generators()) stab.emplace_back("torus", B.act(t, f));
    for (const auto& [name, v] : stab) {
      rep.record(proportional(F, v, f), [&] { return "(c) " + name + " does not stabilize k f^J"; });
    }
  }
  // (d) simple socle, and iota(candidate) = f^{sigma J'}.
  const auto& X = ctx.parabolic(Jp);
  const auto data = socle_data(ctx, J);
  rep.record(ctx.iota(Jp, data.candidate, L) == f_sigma, "(d) the parabolic candidate does not map to f^{sigma J'}");
  const auto verdict = linrep::socle_simple_check(X.module(), data.Ep, data.candidate, X.unipotent_actions(), true, seed);
  rep.record(verdict.simple, [&] { return "(d) socle of E'_J not simple: " + verdict.reason; });
  // (e) every sampled nonzero x generates a module containing the candidate.
  Rng rng(seed);
  for (std::size_t k = 0; k < samples; ++k) {
    const Vec v = rng.nonzero_vector(F, data.Ep.basis());
    rep.record(linrep::spin(X.module(), {v}).contains(data.candidate),
               [&] { return "(e) sample " + std::to_string(k) + " misses U_{w_J v_J^-1} v_J D_J"; });
  }
  rep.note("dim E'_J", std::to_string(data.Ep.rank()));
  return rep;
}

CompositionSummary composition_report(const Context& ctx, std::uint64_t seed) {
  CompositionSummary out;
  out.dim = ctx.borel().dim();
  Rng rng(seed);
  out.borel_factors = linrep::composition_factors(ctx.borel().module(), rng.next());
  for (const auto& piece : ctx.filtration().pieces) {
    out.piece_factors[piece.J] = linrep::composition_factors(piece.E->module(), rng.next());
  }
  return out;
}

}  // namespace chevmod::permmod
