#pragma once

// Root systems of rank <= 3 and their Weyl groups.
//
// Roots are integer vectors in the basis of simple roots. The root list is
// ordered once and for all: positive roots first, by non-increasing height
// with ties broken by the lexicographically larger coordinate vector first
// (so alpha_1 precedes alpha_2), followed by the negatives in the same order.
// Every "height-descending" root order in the library is this order.
//
// Subsets J of the simple-reflection index set I are bitmasks.

#include <cstdint>
#include <string>
#include <vector>

namespace chevmod::rootsys {

enum class CartanType { A1, A2, A3, B2 };

CartanType parse_type(const std::string& label);
std::string type_name(CartanType t);

using Subset = std::uint32_t;
using Root = std::vector<int>;

std::string format_subset(Subset J, int rank);
/// Parses "", "1", "12", "1,2" (1-based simple indices).
Subset parse_subset(const std::string& text, int rank);

class RootDatum {
 public:
  explicit RootDatum(CartanType type);

  CartanType type() const { return type_; }
  int rank() const { return rank_; }
  Subset full_set() const { return (Subset{1} << rank_) - 1; }
  /// A_{ij} = <alpha_i, alpha_j^vee>.
  const std::vector<std::vector<int>>& cartan() const { return cartan_; }

  int num_roots() const { return static_cast<int>(roots_.size()); }
  int num_positive() const { return num_positive_; }
  const Root& root(int idx) const { return roots_.at(idx); }
  bool is_positive(int idx) const { return idx < num_positive_; }
  int height(int idx) const;
  int negate(int idx) const { return negation_[idx]; }
  int simple(int i) const { return simple_idx_[i]; }
  /// Index of a root vector, or -1.
  int find(const Root& r) const;
  /// s_i applied to root idx.
  int reflect(int i, int idx) const { return reflection_[i][idx]; }
  /// <beta, alpha_i^vee>.
  int pairing(int idx, int i) const;
  /// Index of m*alpha + n*beta if it is a root, else -1.
  int combine(int m, int alpha, int n, int beta) const;

  std::string format_root(int idx) const;

 private:
  CartanType type_;
  int rank_;
  std::vector<std::vector<int>> cartan_;
  std::vector<Root> roots_;
  int num_positive_ = 0;
  std::vector<int> negation_;
  std::vector<int> simple_idx_;
  std::vector<std::vector<int>> reflection_;
};

/// A Weyl group element as the permutation it induces on the root list.
struct WeylElement {
  std::vector<std::uint8_t> perm;  // perm[r] = index of w(root r)
  int length = 0;
  std::vector<int> word;  // one reduced word (0-based simple indices), left to right
};

class WeylGroup {
 public:
  explicit WeylGroup(CartanType type);

  const RootDatum& datum() const { return datum_; }
  int rank() const { return datum_.rank(); }
  int size() const { return static_cast<int>(elements_.size()); }
  /// Elements are listed by length, then lexicographically by reduced word.
  const WeylElement& element(int w) const { return elements_.at(w); }
  int identity() const { return 0; }
  int simple(int i) const { return simple_[i]; }
  int length(int w) const { return elements_[w].length; }
  const std::vector<int>& word(int w) const { return elements_[w].word; }

  int mul(int u, int v) const { return mul_[u * size() + v]; }
  int inverse(int w) const { return inverse_[w]; }
  int from_word(const std::vector<int>& word) const;
  /// Image of root idx under w.
  int act(int w, int root) const { return elements_[w].perm[root]; }

  /// Right descents {s | l(ws) < l(w)}.
  Subset right_descents(int w) const;
  /// Left descents {s | l(sw) < l(w)}.
  Subset left_descents(int w) const;
  /// Phi_w^- = {alpha > 0 | w(alpha) < 0} in the global root order.
  std::vector<int> phi_minus(int w) const;
  std::vector<int> phi_plus(int w) const;

  std::vector<int> parabolic(Subset J) const;
  int longest(Subset J) const;
  int longest() const { return longest(datum_.full_set()); }
  /// Minimal-length representatives of W / W_J.
  std::vector<int> min_coset_reps(Subset J) const;
  /// {w in W^J | R(w w_J) = J}.
  std::vector<int> y_set(Subset J) const;
  /// Bruhat order u <= v (subword criterion).
  bool bruhat_le(int u, int v) const;

  struct W0Factorization {
    int v;
    int wJ;
    int wJprime;
  };
  /// w_0 = v_J w_J w_{J'} with additive lengths; throws std::logic_error otherwise.
  W0Factorization w0_factorization(Subset J) const;

  /// The permutation of I induced by conjugation with w_0.
  std::vector<int> sigma() const;
  Subset apply_sigma(Subset J) const;

  std::string format(int w) const;

 private:
  RootDatum datum_;
  std::vector<WeylElement> elements_;
  std::vector<int> simple_;
  std::vector<int> mul_;
  std::vector<int> inverse_;
};

struct SweepReport {
  std::size_t total = 0;
  std::size_t vacuous = 0;
  std::size_t checked() const { return total - vacuous; }
  std::vector<std::string> counterexamples;
};

/// For all w, s with ws > w and s(Phi_w^-) = Phi_w^-: ws = tw for some t in S.
SweepReport sweep_stable_inversion_sets(const WeylGroup& W);
/// For all s, w in Y^J with sw in Y^J and sw > w: s does not stabilize
/// Phi^-_{w_J w^{-1}}.
SweepReport sweep_ladder_separation(const WeylGroup& W, Subset J);

}  // namespace chevmod::rootsys
