#pragma once

// Exact linear algebra over a prime field GF(l), l <= 251, and the module
// machinery built on it: spinning, subquotients, fixed points, a Norton
// MeatAxe, composition series and a socle test for defining characteristic.
//
// Vectors are dense byte arrays. Generators act on column vectors, either as
// permutations of the basis or as dense matrices stored by columns.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "chevmod/report.hpp"

namespace chevmod::linrep {

using Scalar = std::uint8_t;
using Vec = std::vector<Scalar>;

/// The prime field GF(l).
class Zl {
 public:
  explicit Zl(unsigned l);

  unsigned order() const { return l_; }
  Scalar add(Scalar a, Scalar b) const {
    unsigned s = unsigned(a) + b;
    return Scalar(s >= l_ ? s - l_ : s);
  }
  Scalar sub(Scalar a, Scalar b) const { return add(a, neg(b)); }
  Scalar neg(Scalar a) const { return a == 0 ? 0 : Scalar(l_ - a); }
  Scalar mul(Scalar a, Scalar b) const { return Scalar((unsigned(a) * b) % l_); }
  Scalar inv(Scalar a) const;
  Scalar from_int(long long v) const;

  /// y += c x
  void axpy(Vec& y, Scalar c, const Vec& x) const;
  void scale(Vec& x, Scalar c) const;

 private:
  unsigned l_;
  std::shared_ptr<const std::vector<Scalar>> inv_;
};

bool is_zero(const Vec& v);
std::size_t support_size(const Vec& v);

/// g e_i = e_{image[i]}.
struct Permutation {
  std::vector<std::uint32_t> image;
};

/// cols[c] = g e_c.
struct DenseMatrix {
  int n = 0;
  std::vector<Vec> cols;
};

using Action = std::variant<Permutation, DenseMatrix>;

int action_dim(const Action& g);
Vec apply(const Zl& F, const Action& g, const Vec& v);
/// The transpose (for permutations, the inverse permutation).
Action transpose(const Action& g);
/// x -> a(b(x)).
Action compose(const Zl& F, const Action& a, const Action& b);
DenseMatrix to_dense(const Zl& F, const Action& g);

/// Subspace of GF(l)^n in fully reduced echelon form: each basis row has a
/// leading 1 at its pivot, every other row vanishes there, and pivots
/// increase.
class Subspace {
 public:
  Subspace(const Zl& F, int n) : F_(F), n_(n) {}
  static Subspace full(const Zl& F, int n);

  int ambient_dim() const { return n_; }
  int rank() const { return static_cast<int>(rows_.size()); }
  const std::vector<Vec>& basis() const { return rows_; }
  const std::vector<int>& pivots() const { return pivots_; }
  const Zl& field() const { return F_; }

  /// Reduces v modulo the subspace; the result vanishes at every pivot.
  void reduce(Vec& v) const;
  bool contains(Vec v) const;
  /// Adds v; returns the reduced vector when it was new.
  std::optional<Vec> insert(Vec v);
  bool contains_space(const Subspace& other) const;
  /// Coefficients of v in the basis (v must lie in the subspace).
  Vec coordinates(const Vec& v) const;

  Subspace sum(const Subspace& other) const;
  Subspace intersect(const Subspace& other) const;
  bool operator==(const Subspace& o) const { return n_ == o.n_ && rows_ == o.rows_; }

 private:
  Zl F_;
  int n_;
  std::vector<Vec> rows_;
  std::vector<int> pivots_;
};

/// Basis (as coefficient vectors) of the dependencies among the columns.
std::vector<Vec> kernel_of_columns(const Zl& F, const std::vector<Vec>& cols, int rows);

struct Module {
  Zl field;
  int dim = 0;
  std::vector<Action> gens;

  Module(Zl F, int n, std::vector<Action> g) : field(F), dim(n), gens(std::move(g)) {}
  bool invariant(const Subspace& S) const;
  Module dual() const;
};

/// Smallest invariant subspace containing `start` and the seeds. `start`
/// must itself be invariant.
Subspace spin(const Module& M, const std::vector<Vec>& seeds, std::optional<Subspace> start = std::nullopt);

/// The module big / small for invariant subspaces small <= big, with
/// coordinates with respect to a complement of `small` inside `big`.
class Subquotient {
 public:
  Subquotient(const Module& ambient, const Subspace& big, const Subspace& small);

  int dim() const { return static_cast<int>(complement_.size()); }
  const Module& module() const { return module_; }
  /// Coordinates of the class of x (x must lie in `big`).
  Vec coords(const Vec& x) const;
  /// A vector of `big` in the given class.
  Vec lift(const Vec& y) const;
  const Subspace& small() const { return small_; }

 private:
  Subspace small_;
  std::vector<Vec> complement_;  // vanish at the pivots of small_
  std::vector<int> cpivots_;
  Module module_;
};

/// Vectors of `within` fixed by every given action.
Subspace fixed_space(const Zl& F, const std::vector<Action>& gens, const Subspace& within);

struct MeatAxeResult {
  bool irreducible = false;
  std::optional<Subspace> submodule;  // proper, nonzero, invariant when splitting
  int attempts = 0;
  // Norton certificate for an irreducible verdict.
  int kernel_dim = 0;
  int lines_checked = 0;
};

struct MeatAxeOptions {
  int budget = 200;
  int max_word = 8;
  int max_kernel_lines = 512;
};

/// Throws BudgetExceeded when no verdict is reached within the budget.
MeatAxeResult meataxe(const Module& M, std::uint64_t seed, const MeatAxeOptions& opts = {});

/// Sorted composition factor dimensions.
std::vector<int> composition_factors(const Module& M, std::uint64_t seed, const MeatAxeOptions& opts = {});

struct SocleVerdict {
  bool simple = false;
  int fixed_dim = 0;
  std::size_t lines = 0;
  bool candidate_irreducible = false;
  std::string reason;
};

/// Simple-socle test in defining characteristic: every line of U-fixed
/// vectors inside `within` must spin to a space containing the candidate,
/// and the candidate must spin to an irreducible module. The caller asserts
/// l = p; `defining_characteristic` false raises PreconditionError.
SocleVerdict socle_simple_check(const Module& M, const Subspace& within, const Vec& candidate,
                                const std::vector<Action>& unipotent_gens, bool defining_characteristic,
                                std::uint64_t seed, std::size_t max_lines = 20000);

/// All normalized nonzero vectors (first nonzero coordinate 1) of a space.
std::vector<Vec> enumerate_lines(const Zl& F, const std::vector<Vec>& basis, std::size_t limit);

}  // namespace chevmod::linrep
