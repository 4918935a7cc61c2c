#pragma once

// Permutation modules k[G/B] and k[G/P_K] of a finite Chevalley group, the
// named vectors built from them (eta_J, C_J, D_J, the parabolic sums f_K and
// the Carter-Lusztig sums f^J), the eta filtration with subquotients E_J,
// the mixed-level root-subgroup operators Theta(w, d, b, a), and the
// verification procedures that exercise them.
//
// A context fixes (type, q, level L, l): the group is G(GF(q^L)) and the
// coefficient field is GF(l). Sums over U_{w, q^c} for c | L use the copy of
// GF(q^c) inside GF(q^L). Group-algebra sums over U_w are applied as the
// product of the root-subgroup sums over Phi_w^- in the global root order,
// which is the same element of kG by the unique factorization in U_w.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "chevmod/chevalley.hpp"
#include "chevmod/linrep.hpp"
#include "chevmod/report.hpp"
#include "chevmod/rootsys.hpp"

namespace chevmod::permmod {

using chevalley::Mat;
using gf::Elem;
using linrep::Scalar;
using linrep::Subspace;
using linrep::Vec;
using rootsys::Subset;

/// k[G/P_K] with cached actions of root elements and Weyl representatives.
class PermSpace {
 public:
  PermSpace(const chevalley::ChevalleyGroup& G, Subset K, const linrep::Zl& k, std::size_t limit);

  const chevalley::CosetSpace& cosets() const { return cosets_; }
  int dim() const { return static_cast<int>(cosets_.size()); }
  const linrep::Module& module() const { return module_; }
  const linrep::Zl& coeff() const { return module_.field; }
  /// The basis vector of the base coset P_K.
  Vec base() const;

  const linrep::Permutation& eps_perm(int root, Elem c) const;
  const linrep::Permutation& weyl_perm(int w) const;
  Vec apply(const linrep::Permutation& p, const Vec& v) const;
  Vec act(const Mat& g, const Vec& v) const;
  Vec weyl(int w, const Vec& v) const { return apply(weyl_perm(w), v); }
  /// Sum over c in elems of eps(root, c) v.
  Vec root_sum(int root, const std::vector<Elem>& elems, const Vec& v) const;
  /// Product of root sums over the list, the last root applied first.
  Vec root_products_sum(const std::vector<int>& roots, const std::vector<Elem>& elems, const Vec& v) const;
  /// eps(beta, x) for beta > 0, x in the GF(p)-basis, as actions.
  std::vector<linrep::Action> unipotent_actions() const;

 private:
  const chevalley::ChevalleyGroup* G_;
  chevalley::CosetSpace cosets_;
  linrep::Module module_;
  mutable std::vector<std::optional<linrep::Permutation>> eps_cache_;
  mutable std::vector<std::optional<linrep::Permutation>> weyl_cache_;
};

struct FiltrationPiece {
  Subset J = 0;
  Subspace MJ;
  Subspace MJprime;
  std::shared_ptr<linrep::Subquotient> E;
  Vec C;  // C_J in E_J coordinates
};

struct Filtration {
  std::vector<FiltrationPiece> pieces;  // indexed by the bitmask J
  CheckReport report;
};

class Context {
 public:
  /// Throws BudgetExceeded when the Borel module dimension exceeds `budget`.
  Context(rootsys::CartanType type, unsigned q, unsigned level, unsigned ell, std::size_t budget = 20000);

  const chevalley::ChevalleyGroup& group() const { return *G_; }
  const rootsys::WeylGroup& weyl() const { return G_->weyl(); }
  const rootsys::RootDatum& roots() const { return G_->roots(); }
  const linrep::Zl& coeff() const { return coeff_; }
  unsigned q() const { return q_; }
  unsigned p() const { return p_; }
  unsigned level() const { return level_; }
  unsigned ell() const { return ell_; }
  bool defining() const { return ell_ == p_; }
  std::size_t budget() const { return budget_; }
  std::string describe() const;

  /// GF(q^c) inside the matrix field, in canonical order of GF(q^c).
  const std::vector<Elem>& subfield(unsigned c) const;
  /// Additive coset representatives of GF(q^a) in GF(q^b), smallest first.
  std::vector<Elem> transversal(unsigned a, unsigned b) const;

  const PermSpace& borel() const { return *borel_; }
  const PermSpace& parabolic(Subset K) const;

  Scalar sign(int w) const;
  Vec one_tr() const { return borel_->base(); }
  Vec u_sum(int w, unsigned c, const Vec& v) const { return u_sum(*borel_, w, c, v); }
  Vec u_sum(const PermSpace& X, int w, unsigned c, const Vec& v) const;
  /// Same operator, summing over the matrices of U_{w, q^c} one by one.
  Vec u_sum_enumerated(int w, unsigned c, const Vec& v) const;

  Vec eta(Subset J) const;
  /// D_J in k[G/P_{J'}].
  Vec bigD(Subset J) const;
  Vec frak_f(Subset K, unsigned c) const;
  /// f^J = sum over w in w_0 W_J of U_{w, q^c} w^{-1} 1_tr.
  Vec f_cl(Subset J, unsigned c) const;
  /// Theta(w, d, b, a) applied to v, over Phi^-_{w_J w^{-1}}.
  Vec theta(Subset J, int w, int d, unsigned b, unsigned a, const Vec& v) const;
  /// The map k[G/P_K] -> k[G/B], gP_K -> g f_K.
  Vec iota(Subset K, const Vec& v, unsigned c) const;

  const Filtration& filtration() const;
  const FiltrationPiece& piece(Subset J) const { return filtration().pieces.at(J); }
  /// Image of an ambient vector of M_J in E_J.
  Vec in_E(Subset J, const Vec& v) const;

 private:
  unsigned q_, p_, k_, level_, ell_;
  std::size_t budget_;
  linrep::Zl coeff_;
  std::unique_ptr<chevalley::ChevalleyGroup> G_;
  std::unique_ptr<PermSpace> borel_;
  mutable std::map<Subset, std::unique_ptr<PermSpace>> parabolic_;
  mutable std::map<unsigned, std::vector<Elem>> subfields_;
  mutable std::unique_ptr<Filtration> filtration_;
};

/// Phi^-_{w_J w^{-1}} in the global root order.
std::vector<int> theta_roots(const rootsys::WeylGroup& W, Subset J, int w);

CheckReport verify_simple_reflection_action(const Context& ctx, Subset J);
CheckReport verify_filtration(const Context& ctx);
CheckReport verify_quotient_basis(const Context& ctx, Subset J);
CheckReport verify_parabolic_realization(const Context& ctx, Subset J, std::uint64_t seed);
CheckReport verify_steinberg_identity(const Context& ctx, Subset J, unsigned m);
/// Context at level b; a | b.
CheckReport verify_commutation_absorption(const Context& ctx, Subset J, unsigned a, unsigned b);
CheckReport verify_theta_steps(const Context& ctx, Subset J, unsigned a, unsigned b);

struct SeparationResult {
  bool precondition = false;  // xi_d != 0
  bool found = false;
  int w = -1;
  unsigned c = 0;
};
SeparationResult find_separation_witness(const Context& ctx, Subset J, const std::vector<int>& Y, int d,
                                         unsigned a, unsigned b, const std::vector<Scalar>& coefficients);
/// Subsets of Y^J are enumerated exhaustively up to this size of Y^J, and
/// sampled beyond it.
inline constexpr std::size_t kExhaustiveSeparationSize = 6;
inline constexpr std::size_t kSampledSeparationSubsets = 8;
CheckReport verify_separation(const Context& ctx, Subset J, unsigned a, unsigned b);
CheckReport verify_induction_step(const Context& ctx, Subset J, int w, int s, unsigned a, unsigned b);
/// All admissible (w, s) for J; vacuous when there are none.
CheckReport verify_induction_steps(const Context& ctx, Subset J, unsigned a, unsigned b);

CheckReport verify_fixed_points(const Context& ctx, std::size_t samples, std::uint64_t seed);
CheckReport verify_socle_route(const Context& ctx, Subset J, std::size_t samples, std::uint64_t seed);
CheckReport verify_socle(const Context& ctx, Subset J, std::uint64_t seed);

struct CompositionSummary {
  int dim = 0;
  std::vector<int> borel_factors;
  std::map<Subset, std::vector<int>> piece_factors;
};
CompositionSummary composition_report(const Context& ctx, std::uint64_t seed);

}  // namespace chevmod::permmod
