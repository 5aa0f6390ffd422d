#pragma once

#include <map>
#include <string>
#include <vector>

#include "extrans/fan.hpp"
#include "extrans/poly.hpp"

namespace extrans {

/// Homogeneous class of polynomial degree `degree` (cohomological degree
/// 2*degree), in the normal-form basis of that degree.
struct CohClass {
  int degree = 0;
  QVec coords;
  bool is_zero() const { return extrans::is_zero(coords); }
  bool operator==(const CohClass&) const = default;
};

/// Q[u_0..u_{n-1}] / (relations), graded with every u_i in degree 1.
/// Linear relations eliminate variables; the remaining relations are reduced
/// degree by degree with pivots on lexicographically-first monomials, the
/// highest-index surviving variable being the most significant.
class GradedRing {
 public:
  struct Options {
    /// Variables kept as survivors when possible, in order of preference.
    /// Otherwise the highest-index variables are eliminated first.
    std::vector<int> preferred_survivors;
    std::vector<std::string> names;
  };

  /// Throws NonvanishingAboveCap if a degree above the cap is nonzero.
  static GradedRing create(int nvars, const std::vector<Poly>& relations, int degree_cap,
                           const Options& options);
  static GradedRing create(int nvars, const std::vector<Poly>& relations, int degree_cap) {
    return create(nvars, relations, degree_cap, Options{});
  }

  int nvars() const { return nvars_; }
  int degree_cap() const { return cap_; }  // polynomial degree
  const std::vector<int>& survivors() const { return survivors_; }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<Poly>& linear_relations() const { return linear_; }
  const std::vector<Poly>& higher_relations() const { return higher_; }
  /// u_i written in the survivors.
  const Poly& variable_image(int i) const { return var_image_[i]; }

  int dim(int degree) const;
  std::vector<int> dims() const;  // degrees 0..cap
  int total_dim() const;
  /// Standard monomials of the given degree (over all variables).
  const std::vector<Monomial>& basis(int degree) const;

  CohClass zero(int degree) const;
  CohClass one() const;
  CohClass variable(int i) const;
  /// Homogeneous polynomial over the original variables.
  CohClass from_poly(const Poly& p, int degree = -1) const;
  Poly to_poly(const CohClass& c) const;
  std::string format(const CohClass& c) const;

  CohClass multiply(const CohClass& a, const CohClass& b) const;
  CohClass add(const CohClass& a, const CohClass& b) const;
  CohClass scale(const Rational& s, const CohClass& a) const;
  /// dim(j + deg c) x dim(j) matrix of x -> c x (empty rows above the cap).
  QMatrix mult_matrix(const CohClass& c, int j) const;

 private:
  struct Slice {
    std::vector<Monomial> monomials;  // over survivors only, lex descending
    std::map<Monomial, int> index;
    QMatrix rref;
    std::vector<int> pivots;
    std::vector<int> coord_of;        // monomial -> basis coordinate or -1
    std::vector<Monomial> basis;      // over all variables
  };

  QVec reduce(const Poly& survivor_poly, int degree) const;
  Monomial lift(const Monomial& survivor_mono) const;
  Monomial drop(const Monomial& full_mono) const;

  int nvars_ = 0;
  int cap_ = 0;
  std::vector<int> survivors_;
  std::vector<int> survivor_slot_;  // variable -> survivor position or -1
  std::vector<std::string> names_;
  std::vector<Poly> linear_;
  std::vector<Poly> higher_;
  std::vector<Poly> var_image_;      // over survivors (length h monomials)
  std::vector<Poly> higher_reduced_; // over survivors
  std::vector<Slice> slices_;        // degrees 0..cap
};

/// Per-degree subspace in normal-form coordinates, each degree in RREF.
struct GradedSubspace {
  std::vector<QMatrix> rows;  // one entry per degree 0..cap

  int dim(int degree) const { return static_cast<int>(rows.at(degree).size()); }
  std::vector<int> dims() const;
  int total_dim() const;
  bool contains(const CohClass& c) const;
  bool operator==(const GradedSubspace& o) const { return rows == o.rows; }
};

GradedSubspace whole_ring(const GradedRing& ring);
GradedSubspace zero_subspace(const GradedRing& ring);
GradedSubspace span_of(const GradedRing& ring, const std::vector<CohClass>& classes);
GradedSubspace intersect(const GradedRing& ring, const GradedSubspace& a, const GradedSubspace& b);
GradedSubspace sum(const GradedRing& ring, const GradedSubspace& a, const GradedSubspace& b);
/// Vectors of `a` spanning a complement of `b` inside `a` (b must lie in a).
std::vector<CohClass> complement_basis(const GradedRing& ring, const GradedSubspace& a,
                                       const GradedSubspace& b);

/// span{g * x} over generators g and all x.
GradedSubspace ideal_image(const GradedRing& ring, const std::vector<CohClass>& generators);
/// ker(x -> c x), degree by degree.
GradedSubspace mult_kernel(const GradedRing& ring, const CohClass& c);

/// Stanley-Reisner presentation of the GIT quotient. Linear relations come
/// from a basis of the dual of N, product relations from minimal index sets
/// whose complement is not an anticone. Extended variables vanish.
GradedRing ring_presentation(const GradedRing::Options& options, const GitPresentation& p,
                             const AnticoneFamily& family, const StackyFan& fan);
GradedRing ring_presentation(const GitPresentation& p, const AnticoneFamily& family,
                             const StackyFan& fan);

/// Minimal index sets Q whose complement is not an anticone.
std::vector<Mask> minimal_nonfaces(const AnticoneFamily& family);

/// Module over the ring generated by prod_{i in I} u_i for interior cones I.
struct NarrowSpace {
  GradedSubspace space;
  std::vector<Mask> generators;  // minimal interior cones
};

NarrowSpace narrow_by_interior_cones(const GradedRing& ring, const StackyFan& fan);

/// Linear map between rings determined by the images of the source's
/// original variables. Matrices are per degree, target dim x source dim.
struct RingMap {
  std::vector<QMatrix> matrices;
  bool well_defined = false;
  std::vector<std::string> defects;  // relations not sent to zero

  CohClass apply(const GradedRing& target, const CohClass& c) const;
  GradedSubspace image(const GradedRing& target, const GradedSubspace& s) const;
  /// Kernel of the map restricted to s, as a subspace of the source.
  GradedSubspace kernel_on(const GradedRing& source, const GradedSubspace& s) const;
};

RingMap ring_map(const GradedRing& source, const GradedRing& target, const std::vector<CohClass>& images);
/// Bijective ring map: well defined, square and invertible in every degree.
bool is_isomorphism(const GradedRing& source, const GradedRing& target, const RingMap& f);

/// Quotient by u_kill = 0 and the map onto it.
struct Restriction {
  GradedRing target;
  RingMap map;
};

Restriction restriction_map(const GradedRing& ring, int kill_index);

struct SectorRing {
  TwistedSector sector;
  AnticoneFamily family;
  StackyFan fan;
  GradedRing ring;
  Rational degree_shift;  // 2 * age, cosmetic
};

/// One ring per twisted sector. preferred survivors are given in parent
/// indices and translated into each sector.
std::vector<SectorRing> chen_ruan(const GitPresentation& p, const AnticoneFamily& family,
                                  const std::vector<int>& preferred_survivors = {});

}  // namespace extrans
