#pragma once

#include <optional>
#include <string>
#include <vector>

#include "extrans/cohomology.hpp"
#include "extrans/divisor.hpp"

namespace extrans {

/// Blow-up of X along the coordinate subspace {x_i = 0, i in center} and the
/// hypersurface divisor D = sum a_i D_i.
struct TransitionSpec {
  GitPresentation base;
  IntVec a;
  std::vector<int> center;           // 0-based, any order
  IntVec weights;                    // empty means all 1
  std::optional<Rational> epsilon;   // auto-selected when absent

  int m() const { return base.m(); }
  int k() const { return static_cast<int>(center.size()); }
  Mask center_mask() const { return mask_of(center); }
  bool weighted() const;
  /// Weight of index i: 0 off the center, 1 on it when unweighted.
  Integer weight(int i) const;
  Integer weight_sum() const;
  /// Center indices first, then the rest in order: the "first k" ordering.
  std::vector<int> permutation() const;
};

/// One named structural verdict. detail carries the witness or mismatch.
struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

bool all_pass(const std::vector<Check>& checks);

/// Characters over L + Z. Index m is e, index m+1 is f.
struct HatPresentation {
  int r = 0;                        // rank of the hat torus
  std::vector<IntVec> characters;   // D^_1..D^_m, D^_e
  IntVec f;                         // D^_f = -D~
  std::vector<std::string> labels;  // m + 2 entries, the last two "e" and "f"
  QVec omega_plus, omega_minus;
  Rational epsilon;
  bool epsilon_from_user = false;

  int m() const { return static_cast<int>(characters.size()) - 1; }
  int e_index() const { return m(); }
  int f_index() const { return m() + 1; }
  GitPresentation blowup() const;       // X~ at omega_plus
  GitPresentation unblown() const;      // same characters at omega_minus, equals X
  GitPresentation total_plus() const;   // T~
  GitPresentation total_minus() const;  // T-bar
};

/// Coefficients of D~ on D^_1..D^_m, D^_e.
IntVec dtilde_coefficients(const TransitionSpec& spec);

/// Throws CenterMeetsExtendedSet, CenterNotCone, OmegaOnWall, ChamberChanged.
HatPresentation blowup_presentation(const TransitionSpec& spec);

/// Heights t > 0 where (omega, t) or (omega, -t) meets a cone spanned by
/// r of the characters, r being one less than the ambient rank. Sorted.
std::vector<Rational> critical_heights(const std::vector<IntVec>& characters, const QVec& omega);
/// Half the smallest critical height, or 1 when there is none.
/// Throws OmegaOnWall when omega itself sits on a wall of the base.
Rational epsilon_select(const std::vector<IntVec>& characters, const QVec& omega);

/// Base fan equals the omega_minus fan; omega_plus fan is the star subdivision.
std::vector<Check> verify_blowup_fan(const TransitionSpec& spec, const HatPresentation& hat);

struct SupportFunctionData {
  std::vector<Mask> cones;     // maximal cones
  std::vector<QVec> m_sigma;   // aligned with cones, in dual free coordinates
  bool cartier = false;
  bool convex = false;
  bool extended_ok = false;
  std::string witness;         // first failure, empty when all hold

  bool nef() const { return convex && extended_ok; }
  Rational value(const StackyFan& fan, const QVec& n) const;
};

/// a has one entry per fan index. Throws InconsistentOnSharedFace.
SupportFunctionData support_function(const StackyFan& fan, const IntVec& a);

/// Lattice points of {m : <m, b_i> >= -a_i for rays i}, sorted.
/// Throws UnboundedPolytope.
std::vector<IntVec> delta_polytope_points(const StackyFan& fan, const IntVec& a);

struct FilterResult {
  std::vector<IntVec> survivors;
  std::size_t total = 0;
  bool agrees_with_tilde = false;  // order-of-vanishing test == D~ membership test
};

FilterResult degenerate_filter(const std::vector<IntVec>& points, const TransitionSpec& spec,
                               const StackyFan& base_fan);

struct CrepancyResult {
  bool ok = false;
  IntVec dtilde;       // coefficients on D^_1..D^_m, D^_e
  IntVec pullback_d;   // q*D
  IntVec pullback_k;   // q*K_X
  QVec mismatch;       // q*(K+D) - (K~ + D~) in L-hat dual, zero when ok
  std::string detail;
};

/// e_coefficient overrides the e-coefficient of D~ (probing only).
CrepancyResult crepancy_check(const TransitionSpec& spec, const HatPresentation& hat,
                              std::optional<Integer> e_coefficient = std::nullopt);

struct TotalSpaces {
  GitPresentation t;       // base characters plus -sum a_i D_i, at omega
  GitPresentation tbar;    // hat plus D^_f at omega_minus
  GitPresentation ttilde;  // hat plus D^_f at omega_plus
};

TotalSpaces total_space_presentations(const TransitionSpec& spec, const HatPresentation& hat);

/// Cone families of both total-space fans, the interior ray, the sector
/// bijection and the cone splittings. Never throws; failures become checks.
std::vector<Check> verify_total_space(const TransitionSpec& spec, const HatPresentation& hat,
                                      const TotalSpaces& spaces);

struct WallChart {
  IntVec e;                        // primitive, omega_plus . e > 0
  std::vector<Integer> pairings;   // D_j . e
  Integer pairing_sum = 0;
  Rational frak_c = 1;
  bool crepant = false;
  std::vector<std::string> warnings;
  std::vector<IntVec> p_wall;      // p_1..p_r, shared by both sides
  IntVec p_minus_last;
  std::optional<IntVec> p_plus_last;
  IntVec c;                        // p+_{r+1} + p-_{r+1} = sum c_i p_i
  bool wall_basis_in_cone = false;
};

/// minus and plus share characters. p_minus_last defaults to a character
/// pairing to -1 with e. Throws NoCommonWall.
WallChart wall_chart(const GitPresentation& minus, const GitPresentation& plus,
                     const std::optional<IntVec>& p_minus_last = std::nullopt);

struct SectorCondition {
  QVec nu;                  // sector of T
  int tbar_dim = 0;
  int uf_dim = 0;           // dim u_f H(T-bar_nu)
  int narrow_t_dim = 0;
  bool injective = false;
  bool surjective = false;
  bool c2 = false;
  Poly kernel_witness;      // nonzero when injectivity fails
  Poly missing_witness;     // narrow class of T_nu not hit
  Poly c2_witness;          // element of ker(u_e) on narrow outside u_f H
  std::vector<std::string> names;  // variable names of T-bar_nu
  std::vector<std::string> t_names;
};

struct ConditionResult {
  bool c1 = false;
  bool c2 = false;
  std::vector<SectorCondition> sectors;
  bool frac_sectors_vanish = true;
  std::vector<std::string> frac_violations;
};

/// Conditions on u_f H_CR(T-bar) against the narrow cohomology of T.
ConditionResult check_conditions(const GitPresentation& t, const GitPresentation& tbar);

struct TransitionReport {
  TransitionSpec spec;
  std::vector<int> permutation;
  HatPresentation hat;
  std::vector<std::pair<std::string, ValidationReport>> validations;  // X, X~, T, T-bar, T~
  SupportFunctionData support_d, support_dtilde;
  CrepancyResult crepancy;
  std::vector<Check> blowup_checks;
  std::vector<Check> total_space_checks;
  std::size_t delta_d_points = 0;
  std::size_t delta_dtilde_points = 0;
  FilterResult filter;
  bool filter_matches_direct = false;
  WallChart wall;            // T-bar / T~
  WallChart blowup_wall;     // X / X~
  ConditionResult conditions;
  std::vector<std::string> flags;
};

/// Whole pipeline. Hard failures propagate as Error with a stage prefix.
TransitionReport transition_report(const TransitionSpec& spec);

}  // namespace extrans
