#include "chevmod/rootsys.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace chevmod::rootsys {

CartanType parse_type(const std::string& label) {
  if (label == "A1") return CartanType::A1;
  if (label == "A2") return CartanType::A2;
  if (label == "A3") return CartanType::A3;
  if (label == "B2" || label == "C2") return CartanType::B2;
  throw std::invalid_argument("unsupported root system type: " + label);
}

std::string type_name(CartanType t) {
  switch (t) {
    case CartanType::A1: return "A1";
    case CartanType::A2: return "A2";
    case CartanType::A3: return "A3";
    case CartanType::B2: return "B2";
  }
  return "?";
}

std::string format_subset(Subset J, int rank) {
  std::string out;
  for (int i = 0; i < rank; ++i) {
    if (J & (Subset{1} << i)) out += std::to_string(i + 1);
  }
  return out;
}

Subset parse_subset(const std::string& text, int rank) {
  Subset J = 0;
  for (char c : text) {
    if (c == ',' || c == ' ') continue;
    if (c < '1' || c > '9') throw std::invalid_argument("bad subset: " + text);
    const int i = c - '1';
    if (i >= rank) throw std::invalid_argument("simple index out of range in subset: " + text);
    J |= Subset{1} << i;
  }
  return J;
}

RootDatum::RootDatum(CartanType type) : type_(type) {
  switch (type) {
    case CartanType::A1: cartan_ = {{2}}; break;
    case CartanType::A2: cartan_ = {{2, -1}, {-1, 2}}; break;
    case CartanType::A3: cartan_ = {{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}}; break;
    // alpha_1 short, alpha_2 long: the labelling realized by Sp_4.
    case CartanType::B2: cartan_ = {{2, -1}, {-2, 2}}; break;
  }
  rank_ = static_cast<int>(cartan_.size());

  auto reflect_vec = [&](const Root& beta, int i) {
    int c = 0;
    for (int j = 0; j < rank_; ++j) c += beta[j] * cartan_[j][i];
    Root out = beta;
    out[i] -= c;
    return out;
  };

  std::vector<Root> found;
  for (int i = 0; i < rank_; ++i) {
    Root r(rank_, 0);
    r[i] = 1;
    found.push_back(r);
  }
  for (std::size_t head = 0; head < found.size(); ++head) {
    for (int i = 0; i < rank_; ++i) {
      Root r = reflect_vec(found[head], i);
      if (std::find(found.begin(), found.end(), r) == found.end()) found.push_back(r);
    }
  }

  std::vector<Root> positive;
  for (const auto& r : found) {
    if (std::all_of(r.begin(), r.end(), [](int c) { return c >= 0; })) positive.push_back(r);
  }
  std::sort(positive.begin(), positive.end(), [](const Root& a, const Root& b) {
    const int ha = std::accumulate(a.begin(), a.end(), 0);
    const int hb = std::accumulate(b.begin(), b.end(), 0);
    if (ha != hb) return ha > hb;
    return a > b;
  });
  num_positive_ = static_cast<int>(positive.size());
  roots_ = positive;
  for (const auto& r : positive) {
    Root n = r;
    for (auto& c : n) c = -c;
    roots_.push_back(n);
  }
  if (static_cast<int>(roots_.size()) != static_cast<int>(found.size())) {
    throw std::logic_error("root system is not closed under negation");
  }

  negation_.resize(roots_.size());
  for (int i = 0; i < num_roots(); ++i) negation_[i] = i < num_positive_ ? i + num_positive_ : i - num_positive_;
  simple_idx_.resize(rank_);
  for (int i = 0; i < rank_; ++i) {
    Root r(rank_, 0);
    r[i] = 1;
    simple_idx_[i] = find(r);
  }
  reflection_.assign(rank_, std::vector<int>(roots_.size()));
  for (int i = 0; i < rank_; ++i) {
    for (int r = 0; r < num_roots(); ++r) reflection_[i][r] = find(reflect_vec(roots_[r], i));
  }
}

int RootDatum::height(int idx) const {
  const auto& r = roots_.at(idx);
  return std::accumulate(r.begin(), r.end(), 0);
}

int RootDatum::find(const Root& r) const {
  for (int i = 0; i < num_roots(); ++i) {
    if (roots_[i] == r) return i;
  }
  return -1;
}

int RootDatum::pairing(int idx, int i) const {
  int c = 0;
  for (int j = 0; j < rank_; ++j) c += roots_[idx][j] * cartan_[j][i];
  return c;
}

int RootDatum::combine(int m, int alpha, int n, int beta) const {
  Root r(rank_, 0);
  for (int j = 0; j < rank_; ++j) r[j] = m * roots_[alpha][j] + n * roots_[beta][j];
  return find(r);
}

std::string RootDatum::format_root(int idx) const {
  const auto& r = roots_.at(idx);
  std::string out;
  const bool neg = !is_positive(idx);
  for (int j = 0; j < rank_; ++j) {
    const int c = neg ? -r[j] : r[j];
    if (c == 0) continue;
    if (!out.empty()) out += "+";
    if (c != 1) out += std::to_string(c);
    out += "a" + std::to_string(j + 1);
  }
  return neg ? "-(" + out + ")" : out;
}

WeylGroup::WeylGroup(CartanType type) : datum_(type) {
  const int nroots = datum_.num_roots();
  WeylElement id;
  id.perm.resize(nroots);
  for (int r = 0; r < nroots; ++r) id.perm[r] = static_cast<std::uint8_t>(r);
  elements_.push_back(id);

  std::map<std::vector<std::uint8_t>, int> index;
  index[id.perm] = 0;
  std::vector<int> layer{0};
  while (!layer.empty()) {
    std::vector<WeylElement> next;
    for (int w : layer) {
      for (int i = 0; i < rank(); ++i) {
        WeylElement x;
        x.perm.resize(nroots);
        for (int r = 0; r < nroots; ++r) x.perm[r] = elements_[w].perm[datum_.reflect(i, r)];
        if (index.count(x.perm)) continue;
        bool dup = false;
        for (const auto& y : next) dup = dup || y.perm == x.perm;
        if (dup) continue;
        x.word = elements_[w].word;
        x.word.push_back(i);
        x.length = elements_[w].length + 1;
        next.push_back(std::move(x));
      }
    }
    std::sort(next.begin(), next.end(), [](const WeylElement& a, const WeylElement& b) { return a.word < b.word; });
    layer.clear();
    for (auto& x : next) {
      index[x.perm] = static_cast<int>(elements_.size());
      layer.push_back(static_cast<int>(elements_.size()));
      elements_.push_back(std::move(x));
    }
  }

  const int n = size();
  simple_.resize(rank());
  for (int i = 0; i < rank(); ++i) simple_[i] = from_word({i});
  mul_.resize(static_cast<std::size_t>(n) * n);
  inverse_.resize(n);
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      std::vector<std::uint8_t> p(nroots);
      for (int r = 0; r < nroots; ++r) p[r] = elements_[u].perm[elements_[v].perm[r]];
      mul_[u * n + v] = index.at(p);
    }
  }
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (mul_[u * n + v] == 0) inverse_[u] = v;
    }
  }
  for (const auto& x : elements_) {
    int inv_count = 0;
    for (int r = 0; r < datum_.num_positive(); ++r) inv_count += datum_.is_positive(x.perm[r]) ? 0 : 1;
    if (inv_count != x.length) throw std::logic_error("length does not match inversion count");
  }
}

int WeylGroup::from_word(const std::vector<int>& word) const {
  const int nroots = datum_.num_roots();
  std::vector<std::uint8_t> p(nroots);
  for (int r = 0; r < nroots; ++r) {
    int x = r;
    for (auto it = word.rbegin(); it != word.rend(); ++it) x = datum_.reflect(*it, x);
    p[r] = static_cast<std::uint8_t>(x);
  }
  for (int w = 0; w < size(); ++w) {
    if (elements_[w].perm == p) return w;
  }
  throw std::logic_error("word does not multiply to a group element");
}

Subset WeylGroup::right_descents(int w) const {
  Subset out = 0;
  for (int i = 0; i < rank(); ++i) {
    if (length(mul(w, simple_[i])) < length(w)) out |= Subset{1} << i;
  }
  return out;
}

Subset WeylGroup::left_descents(int w) const {
  Subset out = 0;
  for (int i = 0; i < rank(); ++i) {
    if (length(mul(simple_[i], w)) < length(w)) out |= Subset{1} << i;
  }
  return out;
}

std::vector<int> WeylGroup::phi_minus(int w) const {
  std::vector<int> out;
  for (int r = 0; r < datum_.num_positive(); ++r) {
    if (!datum_.is_positive(act(w, r))) out.push_back(r);
  }
  return out;
}

std::vector<int> WeylGroup::phi_plus(int w) const {
  std::vector<int> out;
  for (int r = 0; r < datum_.num_positive(); ++r) {
    if (datum_.is_positive(act(w, r))) out.push_back(r);
  }
  return out;
}

std::vector<int> WeylGroup::parabolic(Subset J) const {
  std::vector<int> members{identity()};
  for (std::size_t head = 0; head < members.size(); ++head) {
    for (int i = 0; i < rank(); ++i) {
      if (!(J & (Subset{1} << i))) continue;
      const int x = mul(members[head], simple_[i]);
      if (std::find(members.begin(), members.end(), x) == members.end()) members.push_back(x);
    }
  }
  std::sort(members.begin(), members.end());
  return members;
}

int WeylGroup::longest(Subset J) const {
  int best = identity();
  for (int w : parabolic(J)) {
    if (length(w) > length(best)) best = w;
  }
  return best;
}

std::vector<int> WeylGroup::min_coset_reps(Subset J) const {
  const auto WJ = parabolic(J);
  std::vector<int> reps;
  std::vector<bool> covered(size(), false);
  for (int w = 0; w < size(); ++w) {
    if (covered[w]) continue;
    int best = w;
    for (int v : WJ) {
      const int x = mul(w, v);
      covered[x] = true;
      if (length(x) < length(best)) best = x;
    }
    reps.push_back(best);
  }
  std::sort(reps.begin(), reps.end());
  return reps;
}

std::vector<int> WeylGroup::y_set(Subset J) const {
  const int wJ = longest(J);
  std::vector<int> out;
  for (int w : min_coset_reps(J)) {
    if (right_descents(mul(w, wJ)) == J) out.push_back(w);
  }
  return out;
}

bool WeylGroup::bruhat_le(int u, int v) const {
  const auto& word_v = word(v);
  const std::size_t n = word_v.size();
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (static_cast<int>(__builtin_popcount(mask)) != length(u)) continue;
    int x = identity();
    for (std::size_t k = 0; k < n; ++k) {
      if (mask & (1u << k)) x = mul(x, simple_[word_v[k]]);
    }
    if (x == u) return true;
  }
  return false;
}

WeylGroup::W0Factorization WeylGroup::w0_factorization(Subset J) const {
  const Subset Jp = datum_.full_set() & ~J;
  const int w0 = longest();
  const int wJ = longest(J);
  const int wJp = longest(Jp);
  const int v = mul(mul(w0, inverse(wJp)), inverse(wJ));
  if (length(v) + length(wJ) + length(wJp) != length(w0)) {
    throw std::logic_error("w_0 = v_J w_J w_J' is not length-additive for J = " + format_subset(J, rank()));
  }
  return {v, wJ, wJp};
}

std::vector<int> WeylGroup::sigma() const {
  const int w0 = longest();
  std::vector<int> out(rank());
  for (int i = 0; i < rank(); ++i) {
    const int c = mul(mul(w0, simple_[i]), w0);
    for (int j = 0; j < rank(); ++j) {
      if (simple_[j] == c) out[i] = j;
    }
  }
  return out;
}

Subset WeylGroup::apply_sigma(Subset J) const {
  const auto s = sigma();
  Subset out = 0;
  for (int i = 0; i < rank(); ++i) {
    if (J & (Subset{1} << i)) out |= Subset{1} << s[i];
  }
  return out;
}

std::string WeylGroup::format(int w) const {
  if (word(w).empty()) return "e";
  std::string out;
  for (int i : word(w)) out += "s" + std::to_string(i + 1);
  return out;
}

namespace {

std::vector<int> sorted_image(const WeylGroup& W, int x, const std::vector<int>& roots) {
  std::vector<int> out;
  for (int r : roots) out.push_back(W.act(x, r));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

SweepReport sweep_stable_inversion_sets(const WeylGroup& W) {
  SweepReport rep;
  for (int w = 0; w < W.size(); ++w) {
    const auto inv = W.phi_minus(w);
    for (int i = 0; i < W.rank(); ++i) {
      ++rep.total;
      const int s = W.simple(i);
      const int ws = W.mul(w, s);
      if (W.length(ws) < W.length(w) || sorted_image(W, s, inv) != inv) {
        ++rep.vacuous;
        continue;
      }
      bool found = false;
      for (int j = 0; j < W.rank() && !found; ++j) found = W.mul(W.simple(j), w) == ws;
      if (!found) rep.counterexamples.push_back("w=" + W.format(w) + " s=s" + std::to_string(i + 1));
    }
  }
  return rep;
}

SweepReport sweep_ladder_separation(const WeylGroup& W, Subset J) {
  SweepReport rep;
  const auto Y = W.y_set(J);
  const int wJ = W.longest(J);
  for (int i = 0; i < W.rank(); ++i) {
    const int s = W.simple(i);
    for (int w : Y) {
      ++rep.total;
      const int sw = W.mul(s, w);
      if (std::find(Y.begin(), Y.end(), sw) == Y.end() || W.length(sw) < W.length(w)) {
        ++rep.vacuous;
        continue;
      }
      const auto inv = W.phi_minus(W.mul(wJ, W.inverse(w)));
      if (sorted_image(W, s, inv) == inv) {
        rep.counterexamples.push_back("J=" + format_subset(J, W.rank()) + " w=" + W.format(w) + " s=s" +
                                      std::to_string(i + 1));
      }
    }
  }
  return rep;
}

}  // namespace chevmod::rootsys
