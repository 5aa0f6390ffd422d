#include "extrans/cohomology.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "extrans/error.hpp"

namespace extrans {

namespace {

// Monomials of total degree d in h variables, lexicographically descending
// with the last variable most significant, so relations pivot on
// high-index variables first.
std::vector<Monomial> monomials_of_degree(int h, int d) {
  std::vector<Monomial> out;
  Monomial cur(h, 0);
  std::function<void(int, int)> rec = [&](int var, int left) {
    if (var == 0) {
      cur[0] = left;
      out.push_back(cur);
      return;
    }
    for (int e = left; e >= 0; --e) {
      cur[var] = e;
      rec(var - 1, left - e);
    }
  };
  if (h == 0) {
    if (d == 0) out.emplace_back();
    return out;
  }
  rec(h - 1, d);
  return out;
}

}  // namespace

GradedRing GradedRing::create(int nvars, const std::vector<Poly>& relations, int degree_cap,
                              const Options& options) {
  GradedRing R;
  R.nvars_ = nvars;
  R.cap_ = degree_cap;
  R.names_ = options.names;
  if (R.names_.empty())
    for (int i = 0; i < nvars; ++i) R.names_.push_back("u_" + std::to_string(i + 1));
  if (static_cast<int>(R.names_.size()) != nvars)
    throw Error(ErrorCode::InvalidArgument, "variable name count differs from variable count");

  for (const Poly& rel : relations) {
    int d = homogeneous_degree(rel);
    if (d < 0) continue;
    if (d == 0) throw Error(ErrorCode::InvalidArgument, "unit relation: the ring is zero");
    (d == 1 ? R.linear_ : R.higher_).push_back(rel);
  }

  // elimination order: non-preferred variables from the top, then preferred
  // ones from the least preferred
  std::vector<int> order;
  std::vector<bool> preferred(nvars, false);
  for (int v : options.preferred_survivors) preferred.at(v) = true;
  for (int v = nvars - 1; v >= 0; --v)
    if (!preferred[v]) order.push_back(v);
  for (auto it = options.preferred_survivors.rbegin(); it != options.preferred_survivors.rend(); ++it)
    order.push_back(*it);

  QMatrix lin;
  for (const Poly& rel : R.linear_) {
    QVec row(nvars, 0);
    for (const auto& [mono, c] : rel)
      for (int i = 0; i < nvars; ++i)
        if (mono[i] == 1) row[i] = c;
    QVec permuted(nvars);
    for (int k = 0; k < nvars; ++k) permuted[k] = row[order[k]];
    lin.push_back(std::move(permuted));
  }
  std::vector<int> pivots = rref(lin, nvars);
  std::vector<bool> eliminated(nvars, false);
  for (int pc : pivots) eliminated[order[pc]] = true;
  R.survivor_slot_.assign(nvars, -1);
  for (int v = 0; v < nvars; ++v)
    if (!eliminated[v]) {
      R.survivor_slot_[v] = static_cast<int>(R.survivors_.size());
      R.survivors_.push_back(v);
    }
  const int h = static_cast<int>(R.survivors_.size());
  R.var_image_.assign(nvars, Poly{});
  for (int v : R.survivors_) R.var_image_[v] = poly_variable(h, R.survivor_slot_[v]);
  for (std::size_t k = 0; k < pivots.size(); ++k) {
    Poly img;
    for (int pc = 0; pc < nvars; ++pc) {
      int v = order[pc];
      if (eliminated[v] || lin[k][pc] == 0) continue;
      img = img + (-lin[k][pc]) * poly_variable(h, R.survivor_slot_[v]);
    }
    R.var_image_[order[pivots[k]]] = img;
  }

  int guard = 1;
  for (const Poly& rel : R.higher_) {
    Poly red = substitute(rel, R.var_image_, h);
    if (red.empty()) continue;
    guard = std::max(guard, homogeneous_degree(red));
    R.higher_reduced_.push_back(std::move(red));
  }

  for (int j = 0; j <= degree_cap + guard; ++j) {
    Slice s;
    s.monomials = monomials_of_degree(h, j);
    std::map<Monomial, int>& index = s.index;
    for (std::size_t k = 0; k < s.monomials.size(); ++k) index[s.monomials[k]] = static_cast<int>(k);
    const int width = static_cast<int>(s.monomials.size());
    QMatrix rows;
    for (const Poly& g : R.higher_reduced_) {
      int dg = homogeneous_degree(g);
      if (dg > j) continue;
      for (const Monomial& mu : monomials_of_degree(h, j - dg)) {
        QVec row(width, 0);
        for (const auto& [mono, c] : g) {
          Monomial prod(h);
          for (int i = 0; i < h; ++i) prod[i] = mono[i] + mu[i];
          row[index.at(prod)] += c;
        }
        rows.push_back(std::move(row));
      }
    }
    s.pivots = rref(rows, width);
    s.rref = std::move(rows);
    std::vector<bool> is_pivot(width, false);
    for (int pc : s.pivots) is_pivot[pc] = true;
    s.coord_of.assign(width, -1);
    for (int k = 0; k < width; ++k)
      if (!is_pivot[k]) {
        s.coord_of[k] = static_cast<int>(s.basis.size());
        s.basis.push_back(R.lift(s.monomials[k]));
      }
    if (j > degree_cap) {
      if (!s.basis.empty())
        throw Error(ErrorCode::NonvanishingAboveCap,
                    "degree " + std::to_string(2 * j) + " is nonzero above the cap " +
                        std::to_string(2 * degree_cap));
      continue;
    }
    R.slices_.push_back(std::move(s));
  }
  return R;
}

Monomial GradedRing::lift(const Monomial& survivor_mono) const {
  Monomial full(nvars_, 0);
  for (std::size_t k = 0; k < survivors_.size(); ++k) full[survivors_[k]] = survivor_mono[k];
  return full;
}

Monomial GradedRing::drop(const Monomial& full_mono) const {
  Monomial m(survivors_.size());
  for (std::size_t k = 0; k < survivors_.size(); ++k) m[k] = full_mono[survivors_[k]];
  return m;
}

int GradedRing::dim(int degree) const {
  if (degree < 0 || degree > cap_) return 0;
  return static_cast<int>(slices_[degree].basis.size());
}

std::vector<int> GradedRing::dims() const {
  std::vector<int> out;
  for (int j = 0; j <= cap_; ++j) out.push_back(dim(j));
  return out;
}

int GradedRing::total_dim() const {
  int t = 0;
  for (int j = 0; j <= cap_; ++j) t += dim(j);
  return t;
}

const std::vector<Monomial>& GradedRing::basis(int degree) const { return slices_.at(degree).basis; }

CohClass GradedRing::zero(int degree) const { return CohClass{degree, QVec(dim(degree), 0)}; }

CohClass GradedRing::one() const { return from_poly(poly_constant(nvars_, 1), 0); }

CohClass GradedRing::variable(int i) const { return from_poly(poly_variable(nvars_, i), 1); }

QVec GradedRing::reduce(const Poly& p, int degree) const {
  if (degree > cap_) return {};
  const Slice& s = slices_[degree];
  QVec v(s.monomials.size(), 0);
  for (const auto& [mono, c] : p) {
    auto it = s.index.find(mono);
    if (it == s.index.end()) throw Error(ErrorCode::InvalidArgument, "monomial of the wrong degree");
    v[it->second] += c;
  }
  for (std::size_t k = 0; k < s.pivots.size(); ++k) {
    Rational f = v[s.pivots[k]];
    if (f == 0) continue;
    for (std::size_t t = 0; t < v.size(); ++t)
      if (s.rref[k][t] != 0) v[t] -= f * s.rref[k][t];
  }
  QVec out(s.basis.size());
  for (std::size_t t = 0; t < v.size(); ++t)
    if (s.coord_of[t] >= 0) out[s.coord_of[t]] = v[t];
  return out;
}

CohClass GradedRing::from_poly(const Poly& p, int degree) const {
  int d = homogeneous_degree(p);
  if (d < 0) {
    if (degree < 0) throw Error(ErrorCode::InvalidArgument, "degree of the zero polynomial is unknown");
    return zero(degree);
  }
  if (degree >= 0 && degree != d) throw Error(ErrorCode::InvalidArgument, "polynomial degree mismatch");
  Poly s = substitute(p, var_image_, static_cast<int>(survivors_.size()));
  if (s.empty()) return zero(d);
  return CohClass{d, reduce(s, d)};
}

Poly GradedRing::to_poly(const CohClass& c) const {
  Poly p;
  if (c.degree > cap_) return p;
  const auto& b = basis(c.degree);
  for (std::size_t k = 0; k < b.size(); ++k)
    if (c.coords[k] != 0) p = p + c.coords[k] * poly_monomial(b[k]);
  return p;
}

std::string GradedRing::format(const CohClass& c) const { return to_string(to_poly(c), names_); }

CohClass GradedRing::multiply(const CohClass& a, const CohClass& b) const {
  const int d = a.degree + b.degree;
  if (d > cap_) return zero(d);
  Poly pa, pb;
  for (std::size_t k = 0; k < a.coords.size(); ++k)
    if (a.coords[k] != 0) pa = pa + a.coords[k] * poly_monomial(drop(basis(a.degree)[k]));
  for (std::size_t k = 0; k < b.coords.size(); ++k)
    if (b.coords[k] != 0) pb = pb + b.coords[k] * poly_monomial(drop(basis(b.degree)[k]));
  Poly prod = pa * pb;
  if (prod.empty()) return zero(d);
  return CohClass{d, reduce(prod, d)};
}

CohClass GradedRing::add(const CohClass& a, const CohClass& b) const {
  if (a.degree != b.degree) throw Error(ErrorCode::InvalidArgument, "adding classes of different degrees");
  return CohClass{a.degree, a.coords + b.coords};
}

CohClass GradedRing::scale(const Rational& s, const CohClass& a) const {
  return CohClass{a.degree, s * a.coords};
}

QMatrix GradedRing::mult_matrix(const CohClass& c, int j) const {
  const int rows = dim(j + c.degree);
  const int cols = dim(j);
  QMatrix m(rows, QVec(cols, 0));
  for (int k = 0; k < cols; ++k) {
    QVec e(cols, 0);
    e[k] = 1;
    CohClass img = multiply(c, CohClass{j, e});
    for (int t = 0; t < rows; ++t) m[t][k] = img.coords[t];
  }
  return m;
}

// ---- subspaces

std::vector<int> GradedSubspace::dims() const {
  std::vector<int> out;
  for (const auto& r : rows) out.push_back(static_cast<int>(r.size()));
  return out;
}

int GradedSubspace::total_dim() const {
  int t = 0;
  for (const auto& r : rows) t += static_cast<int>(r.size());
  return t;
}

bool GradedSubspace::contains(const CohClass& c) const {
  if (c.degree >= static_cast<int>(rows.size())) return c.is_zero();
  QMatrix m = rows[c.degree];
  int before = static_cast<int>(m.size());
  m.push_back(c.coords);
  return rank(m, static_cast<int>(c.coords.size())) == before;
}

GradedSubspace whole_ring(const GradedRing& ring) {
  GradedSubspace s;
  for (int j = 0; j <= ring.degree_cap(); ++j) {
    QMatrix id(ring.dim(j), QVec(ring.dim(j), 0));
    for (int k = 0; k < ring.dim(j); ++k) id[k][k] = 1;
    s.rows.push_back(std::move(id));
  }
  return s;
}

GradedSubspace zero_subspace(const GradedRing& ring) {
  GradedSubspace s;
  s.rows.assign(ring.degree_cap() + 1, QMatrix{});
  return s;
}

GradedSubspace span_of(const GradedRing& ring, const std::vector<CohClass>& classes) {
  GradedSubspace s = zero_subspace(ring);
  for (const auto& c : classes)
    if (c.degree <= ring.degree_cap()) s.rows[c.degree].push_back(c.coords);
  for (int j = 0; j <= ring.degree_cap(); ++j) rref(s.rows[j], ring.dim(j));
  return s;
}

GradedSubspace intersect(const GradedRing& ring, const GradedSubspace& a, const GradedSubspace& b) {
  GradedSubspace s = zero_subspace(ring);
  for (int j = 0; j <= ring.degree_cap(); ++j) {
    const int d = ring.dim(j);
    const QMatrix& A = a.rows[j];
    const QMatrix& B = b.rows[j];
    const int na = static_cast<int>(A.size());
    const int nb = static_cast<int>(B.size());
    QMatrix m(d, QVec(na + nb));
    for (int t = 0; t < d; ++t) {
      for (int i = 0; i < na; ++i) m[t][i] = A[i][t];
      for (int i = 0; i < nb; ++i) m[t][na + i] = -B[i][t];
    }
    for (const auto& x : nullspace(m, na + nb)) {
      QVec v(d, 0);
      for (int i = 0; i < na; ++i) v = v + x[i] * A[i];
      s.rows[j].push_back(v);
    }
    rref(s.rows[j], d);
  }
  return s;
}

GradedSubspace sum(const GradedRing& ring, const GradedSubspace& a, const GradedSubspace& b) {
  GradedSubspace s = a;
  for (int j = 0; j <= ring.degree_cap(); ++j) {
    for (const auto& r : b.rows[j]) s.rows[j].push_back(r);
    rref(s.rows[j], ring.dim(j));
  }
  return s;
}

std::vector<CohClass> complement_basis(const GradedRing& ring, const GradedSubspace& a,
                                       const GradedSubspace& b) {
  std::vector<CohClass> out;
  for (int j = 0; j <= ring.degree_cap(); ++j) {
    QMatrix cur = b.rows[j];
    for (const auto& r : a.rows[j]) {
      cur.push_back(r);
      if (rank(cur, ring.dim(j)) == static_cast<int>(cur.size()))
        out.push_back(CohClass{j, r});
      else
        cur.pop_back();
    }
  }
  return out;
}

GradedSubspace ideal_image(const GradedRing& ring, const std::vector<CohClass>& generators) {
  std::vector<CohClass> spanning;
  for (const auto& g : generators)
    for (int j = 0; j + g.degree <= ring.degree_cap(); ++j)
      for (int k = 0; k < ring.dim(j); ++k) {
        QVec e(ring.dim(j), 0);
        e[k] = 1;
        spanning.push_back(ring.multiply(g, CohClass{j, e}));
      }
  return span_of(ring, spanning);
}

GradedSubspace mult_kernel(const GradedRing& ring, const CohClass& c) {
  GradedSubspace s = zero_subspace(ring);
  for (int j = 0; j <= ring.degree_cap(); ++j) {
    QMatrix m = ring.mult_matrix(c, j);
    if (m.empty()) {
      QMatrix id(ring.dim(j), QVec(ring.dim(j), 0));
      for (int k = 0; k < ring.dim(j); ++k) id[k][k] = 1;
      s.rows[j] = std::move(id);
      continue;
    }
    s.rows[j] = nullspace(m, ring.dim(j));
    rref(s.rows[j], ring.dim(j));
  }
  return s;
}

// ---- Stanley-Reisner presentation

std::vector<Mask> minimal_nonfaces(const AnticoneFamily& family) {
  const int m = family.m;
  const Mask all = full_mask(m);
  std::vector<Mask> out;
  for (int k = 1; k <= m; ++k) {
    std::vector<int> idx(k);
    std::function<void(int, int, Mask)> rec = [&](int pos, int from, Mask s) {
      if (pos == k) {
        if (family.contains(all & ~s)) return;
        for (Mask q : out)
          if ((q & s) == q) return;
        out.push_back(s);
        return;
      }
      for (int i = from; i < m; ++i) rec(pos + 1, i + 1, s | (1u << i));
    };
    rec(0, 0, 0);
  }
  return out;
}

GradedRing ring_presentation(const GradedRing::Options& options, const GitPresentation& p,
                             const AnticoneFamily& family, const StackyFan& fan) {
  const int m = p.m();
  std::vector<Poly> rels;
  for (int k = 0; k < fan.n; ++k) {
    Poly rel;
    for (int i = 0; i < m; ++i)
      if (fan.beta(k, i) != 0) rel = rel + Rational(fan.beta(k, i)) * poly_variable(m, i);
    rels.push_back(std::move(rel));
  }
  for (Mask q : minimal_nonfaces(family)) {
    Monomial mono(m, 0);
    for (int i : indices_of(q)) mono[i] = 1;
    rels.push_back(poly_monomial(mono));
  }
  GradedRing::Options opts = options;
  if (opts.names.empty() && !p.labels.empty())
    for (int i = 0; i < m; ++i) opts.names.push_back("u_" + p.labels[i]);
  return GradedRing::create(m, rels, fan.n, opts);
}

GradedRing ring_presentation(const GitPresentation& p, const AnticoneFamily& family,
                             const StackyFan& fan) {
  return ring_presentation(GradedRing::Options{}, p, family, fan);
}

NarrowSpace narrow_by_interior_cones(const GradedRing& ring, const StackyFan& fan) {
  NarrowSpace out;
  std::vector<Mask> inter = interior_cones(fan);
  for (Mask c : inter) {
    bool minimal = true;
    for (Mask d : inter)
      if (d != c && (d & c) == d) minimal = false;
    if (minimal) out.generators.push_back(c);
  }
  std::vector<CohClass> gens;
  for (Mask c : out.generators) {
    Monomial mono(ring.nvars(), 0);
    for (int i : indices_of(c)) mono[i] = 1;
    gens.push_back(ring.from_poly(poly_monomial(mono)));
  }
  out.space = ideal_image(ring, gens);
  return out;
}

// ---- ring maps

namespace {

CohClass image_of_poly(const GradedRing& target, const std::vector<CohClass>& images, const Poly& p,
                       int degree) {
  CohClass acc = target.zero(degree);
  for (const auto& [mono, c] : p) {
    CohClass term = target.one();
    for (std::size_t i = 0; i < mono.size(); ++i)
      for (int e = 0; e < mono[i]; ++e) term = target.multiply(term, images[i]);
    if (term.degree > target.degree_cap()) continue;
    acc = target.add(acc, target.scale(c, term));
  }
  return acc;
}

}  // namespace

RingMap ring_map(const GradedRing& source, const GradedRing& target, const std::vector<CohClass>& images) {
  if (static_cast<int>(images.size()) != source.nvars())
    throw Error(ErrorCode::InvalidArgument, "ring map needs one image per source variable");
  for (const auto& img : images)
    if (img.degree != 1) throw Error(ErrorCode::InvalidArgument, "variable images must have degree 1");
  RingMap f;
  f.well_defined = true;
  std::vector<Poly> rels = source.linear_relations();
  for (const auto& r : source.higher_relations()) rels.push_back(r);
  for (const Poly& rel : rels) {
    int d = homogeneous_degree(rel);
    if (d > target.degree_cap()) continue;
    CohClass img = image_of_poly(target, images, rel, d);
    if (!img.is_zero()) {
      f.well_defined = false;
      f.defects.push_back(to_string(rel, source.names()));
    }
  }
  for (int j = 0; j <= source.degree_cap(); ++j) {
    const int rows = target.dim(j);
    const auto& b = source.basis(j);
    QMatrix m(rows, QVec(b.size(), 0));
    for (std::size_t k = 0; k < b.size(); ++k) {
      CohClass img = image_of_poly(target, images, poly_monomial(b[k]), j);
      for (int t = 0; t < rows; ++t) m[t][k] = img.coords[t];
    }
    f.matrices.push_back(std::move(m));
  }
  return f;
}

CohClass RingMap::apply(const GradedRing& target, const CohClass& c) const {
  if (c.degree >= static_cast<int>(matrices.size())) return target.zero(c.degree);
  const QMatrix& m = matrices[c.degree];
  return CohClass{c.degree, multiply(m, c.coords)};
}

GradedSubspace RingMap::image(const GradedRing& target, const GradedSubspace& s) const {
  std::vector<CohClass> imgs;
  for (int j = 0; j < static_cast<int>(s.rows.size()); ++j)
    for (const auto& r : s.rows[j]) imgs.push_back(apply(target, CohClass{j, r}));
  return span_of(target, imgs);
}

GradedSubspace RingMap::kernel_on(const GradedRing& source, const GradedSubspace& s) const {
  GradedSubspace out = zero_subspace(source);
  for (int j = 0; j <= source.degree_cap(); ++j) {
    const QMatrix& basis = s.rows[j];
    const int k = static_cast<int>(basis.size());
    const QMatrix& m = matrices[j];
    QMatrix comp(m.size(), QVec(k, 0));
    for (int i = 0; i < k; ++i) {
      QVec col = multiply(m, basis[i]);
      for (std::size_t t = 0; t < col.size(); ++t) comp[t][i] = col[t];
    }
    for (const auto& x : nullspace(comp, k)) {
      QVec v(source.dim(j), 0);
      for (int i = 0; i < k; ++i) v = v + x[i] * basis[i];
      out.rows[j].push_back(v);
    }
    rref(out.rows[j], source.dim(j));
  }
  return out;
}

bool is_isomorphism(const GradedRing& source, const GradedRing& target, const RingMap& f) {
  if (!f.well_defined) return false;
  const int top = std::max(source.degree_cap(), target.degree_cap());
  for (int j = 0; j <= top; ++j) {
    if (source.dim(j) != target.dim(j)) return false;
    if (j >= static_cast<int>(f.matrices.size())) continue;
    if (rank(f.matrices[j], source.dim(j)) != source.dim(j)) return false;
  }
  return true;
}

Restriction restriction_map(const GradedRing& ring, int kill_index) {
  if (kill_index < 0 || kill_index >= ring.nvars())
    throw Error(ErrorCode::InvalidArgument, "restriction index out of range");
  std::vector<Poly> rels = ring.linear_relations();
  for (const auto& r : ring.higher_relations()) rels.push_back(r);
  rels.push_back(poly_variable(ring.nvars(), kill_index));
  GradedRing::Options opts;
  opts.names = ring.names();
  for (int v : ring.survivors())
    if (v != kill_index) opts.preferred_survivors.push_back(v);
  Restriction out{GradedRing::create(ring.nvars(), rels, ring.degree_cap(), opts), {}};
  std::vector<CohClass> images;
  for (int i = 0; i < ring.nvars(); ++i) images.push_back(out.target.variable(i));
  out.map = ring_map(ring, out.target, images);
  return out;
}

std::vector<SectorRing> chen_ruan(const GitPresentation& p, const AnticoneFamily& family,
                                  const std::vector<int>& preferred_survivors) {
  std::vector<SectorRing> out;
  for (auto& sec : twisted_sectors(p, family)) {
    AnticoneFamily fam = validated_anticones(sec.sub);
    StackyFan fan = build_fan(sec.sub, fam);
    GradedRing::Options opts;
    if (p.labels.empty())
      for (int i : sec.index_map) opts.names.push_back("u_" + std::to_string(i + 1));
    for (int v : preferred_survivors) {
      auto it = std::find(sec.index_map.begin(), sec.index_map.end(), v);
      if (it != sec.index_map.end()) opts.preferred_survivors.push_back(static_cast<int>(it - sec.index_map.begin()));
    }
    GradedRing ring = ring_presentation(opts, sec.sub, fam, fan);
    Rational shift = 2 * sec.age;
    out.push_back(SectorRing{std::move(sec), std::move(fam), std::move(fan), std::move(ring), shift});
  }
  return out;
}

}  // namespace extrans
