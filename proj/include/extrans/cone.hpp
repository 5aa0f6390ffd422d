#pragma once

#include <vector>

#include "extrans/linalg.hpp"

namespace extrans {

inline constexpr int kMaxConeDim = 12;
inline constexpr int kMaxConeGenerators = 64;

/// {y : A y >= 0} = lineality + cone(rays), rays primitive and sorted.
struct RayDescription {
  QMatrix lineality;  // basis of the null space of A
  std::vector<IntVec> rays;
};

RayDescription extreme_rays(const QMatrix& inequalities, int dim);

/// Facet description of cone(generators): the cone equals
/// {x : n.x >= 0 for n in normals, q.x = 0 for q in equations}.
/// Normals lie in span(generators) so they are unique up to scaling.
struct FacetDescription {
  std::vector<IntVec> normals;
  QMatrix equations;
};

FacetDescription cone_facets(const std::vector<QVec>& generators, int dim);

/// Closed polyhedral cone carried in both descriptions.
class PolyCone {
 public:
  PolyCone() = default;
  static PolyCone from_generators(const std::vector<QVec>& generators, int dim);
  static PolyCone from_inequalities(const QMatrix& inequalities, int dim);

  int dim() const { return dim_; }
  /// Minimal generators: extreme rays plus +/- a lineality basis.
  const std::vector<QVec>& generators() const { return generators_; }
  const std::vector<IntVec>& facet_normals() const { return facets_.normals; }
  const QMatrix& equations() const { return facets_.equations; }
  /// Facets followed by +/- equations.
  QMatrix inequalities() const;

  bool contains(const QVec& x) const;
  bool contains_interior(const QVec& x) const;  // relative interior
  int cone_dimension() const;

  PolyCone dual() const;
  PolyCone intersect(const PolyCone& other) const;
  /// Same point set.
  bool same_as(const PolyCone& other) const;

 private:
  int dim_ = 0;
  std::vector<QVec> generators_;
  FacetDescription facets_;
};

}  // namespace extrans
