#include "extrans/cone.hpp"

#include <algorithm>
#include <set>

#include "extrans/error.hpp"

namespace extrans {

namespace {

QMatrix dedupe_rows(const QMatrix& rows) {
  std::set<IntVec> seen;
  QMatrix out;
  for (const auto& r : rows) {
    if (is_zero(r)) continue;
    IntVec p = primitive(r);
    if (seen.insert(p).second) out.push_back(to_qvec(p));
  }
  return out;
}

struct Ray {
  QVec z;
  std::vector<bool> tight;  // per processed inequality
};

}  // namespace

RayDescription extreme_rays(const QMatrix& inequalities_in, int dim) {
  if (dim > kMaxConeDim) throw Error(ErrorCode::DimensionLimit, "ambient dimension above limit");
  QMatrix a = dedupe_rows(inequalities_in);
  if (static_cast<int>(a.size()) > kMaxConeGenerators)
    throw Error(ErrorCode::DimensionLimit, "too many inequalities");
  RayDescription out;
  out.lineality = nullspace(a, dim);
  QMatrix basis = row_space(a, dim);  // y = basis^T z
  const int k = static_cast<int>(basis.size());
  if (k == 0) return out;

  // inequality rows in z coordinates
  const int rows = static_cast<int>(a.size());
  QMatrix az(rows, QVec(k, 0));
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < k; ++j) az[i][j] = dot(a[i], basis[j]);

  std::vector<int> start = independent_subset(az, k);
  QMatrix init;
  for (int i : start) init.push_back(az[i]);
  auto inv = inverse(init);
  std::vector<bool> used(rows, false);
  for (int i : start) used[i] = true;
  std::vector<int> order(start);
  for (int i = 0; i < rows; ++i)
    if (!used[i]) order.push_back(i);

  std::vector<Ray> cur;
  for (int j = 0; j < k; ++j) {
    Ray r;
    r.z.resize(k);
    for (int i = 0; i < k; ++i) r.z[i] = (*inv)[i][j];
    r.z = primitive_q(r.z);
    for (int i = 0; i < k; ++i) r.tight.push_back(i != j);
    cur.push_back(std::move(r));
  }

  for (std::size_t step = k; step < order.size(); ++step) {
    const QVec& row = az[order[step]];
    std::vector<Rational> val(cur.size());
    std::vector<Ray> next;
    std::vector<int> pos, neg;
    for (std::size_t i = 0; i < cur.size(); ++i) {
      val[i] = dot(row, cur[i].z);
      if (val[i] > 0)
        pos.push_back(static_cast<int>(i));
      else if (val[i] < 0)
        neg.push_back(static_cast<int>(i));
      if (val[i] >= 0) {
        Ray r = cur[i];
        r.tight.push_back(val[i] == 0);
        next.push_back(std::move(r));
      }
    }
    for (int p : pos)
      for (int n : neg) {
        QMatrix common;
        for (std::size_t c = 0; c < step; ++c)
          if (cur[p].tight[c] && cur[n].tight[c]) common.push_back(az[order[c]]);
        if (rank(common, k) != k - 2) continue;
        Ray r;
        r.z = primitive_q(val[p] * cur[n].z - val[n] * cur[p].z);
        for (std::size_t c = 0; c < step; ++c) r.tight.push_back(cur[p].tight[c] && cur[n].tight[c]);
        r.tight.push_back(true);
        next.push_back(std::move(r));
      }
    cur = std::move(next);
  }

  std::set<IntVec> rays;
  for (const auto& r : cur) {
    QVec y(dim, 0);
    for (int j = 0; j < k; ++j)
      for (int i = 0; i < dim; ++i) y[i] += r.z[j] * basis[j][i];
    rays.insert(primitive(y));
  }
  out.rays.assign(rays.begin(), rays.end());
  return out;
}

FacetDescription cone_facets(const std::vector<QVec>& generators, int dim) {
  if (static_cast<int>(generators.size()) > kMaxConeGenerators)
    throw Error(ErrorCode::DimensionLimit, "too many generators");
  // facets of cone(G) are the extreme rays of {y : G y >= 0} inside span(G)
  RayDescription polar = extreme_rays(generators, dim);
  FacetDescription out;
  out.normals = polar.rays;
  out.equations = row_space(polar.lineality, dim);
  return out;
}

PolyCone PolyCone::from_generators(const std::vector<QVec>& generators, int dim) {
  PolyCone c;
  c.dim_ = dim;
  c.facets_ = cone_facets(generators, dim);
  // minimal generators = rays of the dual of the facet description
  RayDescription rd = extreme_rays(c.inequalities(), dim);
  for (const auto& r : rd.rays) c.generators_.push_back(to_qvec(r));
  for (const auto& l : row_space(rd.lineality, dim)) {
    c.generators_.push_back(l);
    c.generators_.push_back(-l);
  }
  return c;
}

PolyCone PolyCone::from_inequalities(const QMatrix& inequalities, int dim) {
  RayDescription rd = extreme_rays(inequalities, dim);
  std::vector<QVec> gens;
  for (const auto& r : rd.rays) gens.push_back(to_qvec(r));
  for (const auto& l : row_space(rd.lineality, dim)) {
    gens.push_back(l);
    gens.push_back(-l);
  }
  return from_generators(gens, dim);
}

QMatrix PolyCone::inequalities() const {
  QMatrix out;
  for (const auto& n : facets_.normals) out.push_back(to_qvec(n));
  for (const auto& q : facets_.equations) {
    out.push_back(q);
    out.push_back(-q);
  }
  return out;
}

bool PolyCone::contains(const QVec& x) const {
  for (const auto& q : facets_.equations)
    if (dot(q, x) != 0) return false;
  for (const auto& n : facets_.normals)
    if (dot(to_qvec(n), x) < 0) return false;
  return true;
}

bool PolyCone::contains_interior(const QVec& x) const {
  for (const auto& q : facets_.equations)
    if (dot(q, x) != 0) return false;
  for (const auto& n : facets_.normals)
    if (dot(to_qvec(n), x) <= 0) return false;
  return true;
}

int PolyCone::cone_dimension() const { return dim_ - static_cast<int>(facets_.equations.size()); }

PolyCone PolyCone::dual() const { return from_inequalities(generators_, dim_); }

PolyCone PolyCone::intersect(const PolyCone& other) const {
  if (dim_ != other.dim_) throw Error(ErrorCode::InvalidArgument, "intersect: dimension mismatch");
  QMatrix rows = inequalities();
  for (auto& r : other.inequalities()) rows.push_back(std::move(r));
  return from_inequalities(rows, dim_);
}

bool PolyCone::same_as(const PolyCone& other) const {
  if (dim_ != other.dim_) return false;
  for (const auto& g : generators_)
    if (!other.contains(g)) return false;
  for (const auto& g : other.generators_)
    if (!contains(g)) return false;
  return true;
}

}  // namespace extrans
