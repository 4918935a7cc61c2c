#pragma once

// Matrix models of the finite Chevalley groups SL_2, SL_3, SL_4 (types A1-A3)
// and Sp_4 (type B2) over GF(q^a), together with their flag varieties G/B and
// partial flag varieties G/P_K.
//
// Conventions.
//   * SL_n: the root e_i - e_j is realized by the elementary matrix E_ij, so
//     eps(alpha, c) = 1 + c E_ij. B is the upper-triangular subgroup.
//   * Sp_4: the Gram matrix is antidiag(1, 1, -1, -1); the basis carries the
//     weights (e1, e2, -e2, -e1). The simple roots are alpha_1 = e1 - e2
//     (short) and alpha_2 = 2 e2 (long), and
//         X_{e1-e2} = E01 - E23,  X_{2e2} = E12,  X_{e1+e2} = E02 + E13,
//         X_{2e1} = E03,          X_{-beta} = X_beta^T.
//     Every X_beta squares to zero, so eps(beta, c) = 1 + c X_beta, and with
//     this Gram matrix Sp_4 intersected with the upper triangular matrices is
//     exactly the Borel subgroup.
//   * Weyl representatives: s_i-dot = eps(a_i, 1) eps(-a_i, -1) eps(a_i, 1),
//     and w-dot is the product of these along the cached reduced word of w.
//
// Cosets. A right coset gB (or gP_K) is identified with the flag spanned by
// the columns of g. Its canonical representative is the column-echelon form
// obtained with column operations legal in the upper-triangular (resp. block
// upper-triangular) subgroup of GL_n: each column is reduced against earlier
// pivots, then normalized so that its bottom-most nonzero entry is 1.
// Two elements of G lie in the same coset of B_G iff their GL canonical
// forms agree: g^{-1} h is then in B_GL intersected with G, which is B_G for
// SL_n (determinant one) and for Sp_4 (B_GL meets Sp_4 in the upper
// triangular symplectic matrices, which form its Borel subgroup). The same
// argument applies to the parabolics P_K, whose GL counterparts are the
// block upper-triangular groups cut out by the column blocks of K. The orbit
// counts sum_{w in W^K} q^{l(w)} are checked against these statements.

#include <cstdint>
#include <memory>
#include <unordered_map>
#include <vector>

#include "chevmod/gf.hpp"
#include "chevmod/report.hpp"
#include "chevmod/rootsys.hpp"

namespace chevmod::chevalley {

using gf::Elem;
using rootsys::Subset;

/// Square matrix over a finite field (entries are encoded field elements).
struct Mat {
  int n = 0;
  std::vector<Elem> a;

  Mat() = default;
  explicit Mat(int size) : n(size), a(static_cast<std::size_t>(size) * size, 0) {}
  Elem& operator()(int r, int c) { return a[static_cast<std::size_t>(r) * n + c]; }
  Elem operator()(int r, int c) const { return a[static_cast<std::size_t>(r) * n + c]; }
  bool operator==(const Mat& o) const { return n == o.n && a == o.a; }
  bool operator!=(const Mat& o) const { return !(*this == o); }
};

struct MatHash {
  std::size_t operator()(const Mat& m) const noexcept;
};

enum class GroupKind { SL, Sp4 };

/// Result of writing s u s^{-1} = x s t y inside the rank-one subgroup.
struct SusDecomposition {
  Elem x_param;  // x = eps(alpha_i, x_param); this is f_i(c)
  Elem y_param;
  Mat x;
  Mat t;
  Mat y;
};

class ChevalleyGroup {
 public:
  ChevalleyGroup(rootsys::CartanType type, gf::FieldPtr field);

  GroupKind kind() const { return kind_; }
  int matrix_size() const { return n_; }
  const gf::FieldSpec& field() const { return *field_; }
  const gf::FieldPtr& field_ptr() const { return field_; }
  const rootsys::WeylGroup& weyl() const { return weyl_; }
  const rootsys::RootDatum& roots() const { return weyl_.datum(); }
  std::string name() const;

  Mat identity() const;
  Mat mul(const Mat& x, const Mat& y) const;
  Mat inverse(const Mat& x) const;
  Elem det(const Mat& x) const;
  bool in_group(const Mat& x) const;
  bool is_upper_unitriangular(const Mat& x) const;
  bool is_diagonal(const Mat& x) const;

  Mat eps(int root, Elem c) const;
  Mat simple_rep(int i) const { return simple_reps_.at(i); }
  Mat weyl_rep(int w) const { return weyl_reps_.at(w); }
  /// Column-to-row permutation of the monomial matrix w-dot.
  const std::vector<int>& weyl_pattern(int w) const { return weyl_patterns_.at(w); }

  /// Diagonal torus element with the given free parameters (n-1 for SL_n,
  /// two for Sp_4).
  Mat torus(const std::vector<Elem>& params) const;
  int torus_rank() const { return kind_ == GroupKind::SL ? n_ - 1 : 2; }
  std::vector<Mat> torus_generators() const;
  /// alpha(t) for a diagonal t.
  Elem root_character(int root, const Mat& t) const;

  /// Products prod_i eps(beta_i, c_i) over Phi_w^- in the global root order,
  /// with the c_i ranging over `scalars` (odometer order, last root fastest).
  std::vector<Mat> u_w_elements(int w, const std::vector<Elem>& scalars) const;
  /// Same for an arbitrary root list (assumed height-descending).
  std::vector<Mat> root_products(const std::vector<int>& roots, const std::vector<Elem>& scalars) const;
  /// Writes u = prod eps(beta_i, c_i) over a height-descending root list;
  /// returns false if u is not of that form.
  bool factor(const Mat& u, const std::vector<int>& roots, std::vector<Elem>& coeffs) const;

  /// eps(+-alpha_i, x) for x in the GF(p)-basis of the field.
  std::vector<Mat> group_generators() const;
  /// eps(beta, x), beta > 0, x in the GF(p)-basis.
  std::vector<Mat> unipotent_generators() const;

  /// Throws std::domain_error for c = 0.
  SusDecomposition decompose_sus(int i, Elem c) const;
  /// Number of x in U*_{alpha_i} for which s u s^{-1} = x s t y is solvable.
  int count_sus_solutions(int i, Elem c) const;

  /// Block index of every column for the parabolic P_K.
  std::vector<int> column_blocks(Subset K) const;

  /// Position and coefficient of a nonzero entry of X_beta.
  struct Entry {
    int row;
    int col;
    int sign;
  };
  const std::vector<Entry>& root_entries(int root) const { return entries_.at(root); }

 private:
  GroupKind kind_;
  int n_;
  gf::FieldPtr field_;
  rootsys::WeylGroup weyl_;
  std::vector<std::vector<Entry>> entries_;
  std::vector<Mat> simple_reps_;
  std::vector<Mat> weyl_reps_;
  std::vector<std::vector<int>> weyl_patterns_;
  Mat gram_;
};

/// Canonical representative of g B_GL (or g P_GL for the given column blocks).
Mat canonicalize(const gf::FieldSpec& F, const Mat& g, const std::vector<int>& blocks);

/// Bottom-most pivot row of each column of a canonical Borel representative.
std::vector<int> pivot_pattern(const Mat& canonical);

/// The orbit of the base flag under G: the points of G/B or G/P_K.
class CosetSpace {
 public:
  static constexpr std::size_t kDefaultLimit = 100000;

  CosetSpace(const ChevalleyGroup& group, Subset K, std::size_t limit = kDefaultLimit);

  Subset parabolic() const { return K_; }
  bool is_borel() const { return K_ == 0; }
  std::size_t size() const { return points_.size(); }
  const Mat& point(std::size_t i) const { return points_.at(i); }
  /// A group element g with g P = point(i).
  const Mat& representative(std::size_t i) const { return reps_.at(i); }
  /// Index of the coset g P, for any g in G.
  std::uint32_t locate(const Mat& g) const;
  /// Permutation i -> index of g * point(i).
  std::vector<std::uint32_t> action(const Mat& g) const;
  /// The Weyl element w with point in U w-dot B (Borel cosets only).
  int bruhat_label(std::size_t i) const;

 private:
  const ChevalleyGroup* group_;
  Subset K_;
  std::vector<int> blocks_;
  std::vector<Mat> points_;
  std::vector<Mat> reps_;
  std::unordered_map<Mat, std::uint32_t, MatHash> index_;
  std::vector<int> labels_;
};

struct StructureOptions {
  /// Field orders up to this bound are swept exhaustively.
  std::uint32_t exhaustive_order = 9;
  /// Random cases per fact otherwise.
  std::size_t samples = 1000;
  std::uint64_t seed = 1;
};

struct StructureReport {
  CheckReport conjugation;     // w U_alpha w^{-1} = U_{w(alpha)}
  CheckReport positive_part;   // w U'_w w^{-1} in U
  CheckReport multiplication;  // U_w x U'_w -> U bijective
  CheckReport uniqueness;      // unique factored form in U_w
  CheckReport commutators;     // commutator relations with constant structure constants
  CheckReport torus;           // eps additivity and torus conjugation
  bool exhaustive = true;
};

StructureReport check_structure_facts(const ChevalleyGroup& G, const StructureOptions& opts = {});

}  // namespace chevmod::chevalley
