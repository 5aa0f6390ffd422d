#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "extrans/git.hpp"

namespace extrans {

/// Simplicial fan in N (x) Q built from GIT data; cones are index sets.
struct StackyFan {
  int m = 0;
  int n = 0;                      // free rank of N
  std::vector<Integer> torsion;   // invariant factors of the torsion of N
  IntMatrix beta;                 // (n + torsion count) x m
  std::vector<QVec> rays;         // free part of beta(e_i), length n each
  std::vector<Mask> max_cones;    // sorted
  Mask extended = 0;              // S

  bool is_cone(Mask cone) const;
  /// Every cone, face-closed, sorted by (size, mask). Includes the zero cone.
  std::vector<Mask> cones() const;
  std::vector<QVec> rays_of(Mask cone) const;
  /// Every maximal cone has n independent rays.
  bool pure_full_dimensional() const;
};

StackyFan build_fan(const GitPresentation& p, const AnticoneFamily& family);

/// Fan given directly by rays and maximal cones (tests, total spaces).
StackyFan fan_from_rays(const std::vector<QVec>& rays, const std::vector<Mask>& max_cones);

struct ConeLocation {
  Mask cone = 0;  // smallest cone containing the vector
  QVec coeffs;    // positive, aligned with indices_of(cone)
};

/// Smallest cone of the fan containing v, or nullopt when v is outside the
/// support. Throws NonSimplicial when maximal cones disagree on it.
std::optional<ConeLocation> locate_in_fan(const StackyFan& fan, const QVec& v);

/// Codimension-one cones lying in exactly one maximal cone.
std::vector<Mask> boundary_facets(const StackyFan& fan);
/// Cones whose relative interior meets the interior of the support.
/// Throws NotPureFullDimensional.
std::vector<Mask> interior_cones(const StackyFan& fan);

struct TwistedSector {
  QVec nu;                     // in [0,1)^r
  Mask support = 0;            // {i : D_i . nu integral}
  std::vector<int> index_map;  // sub character k is parent character index_map[k]
  GitPresentation sub;
  Rational age;                // sum of frac(D_i . nu) over all characters

  bool untwisted() const { return is_zero(nu); }
};

/// Sorted by nu; the untwisted sector comes first.
std::vector<TwistedSector> twisted_sectors(const GitPresentation& p, const AnticoneFamily& family);

struct SectorSplit {
  std::vector<TwistedSector> int_sectors;
  std::vector<TwistedSector> frac_sectors;
};

/// Splits by integrality of D_e . nu.
SectorSplit classify_sectors_int_frac(const std::vector<TwistedSector>& sectors,
                                      const GitPresentation& hat, int e_index);

/// Pairs sector k of the base with the int sector whose nu is (nu_k, 0).
/// Throws BijectionFailure if the assignment is not a bijection.
std::vector<std::pair<int, int>> match_int_sectors(const std::vector<TwistedSector>& base,
                                                   const std::vector<TwistedSector>& int_sectors);

}  // namespace extrans
