#include "extrans/fan.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "extrans/error.hpp"
#include "extrans/snf.hpp"

namespace extrans {

bool StackyFan::is_cone(Mask cone) const {
  for (Mask c : max_cones)
    if ((c & cone) == cone) return true;
  return false;
}

std::vector<Mask> StackyFan::cones() const {
  std::set<Mask> all;
  for (Mask c : max_cones) {
    // walk all submasks of c
    for (Mask s = c;; s = (s - 1) & c) {
      all.insert(s);
      if (s == 0) break;
    }
  }
  std::vector<Mask> out(all.begin(), all.end());
  std::sort(out.begin(), out.end(), [](Mask a, Mask b) {
    if (popcount(a) != popcount(b)) return popcount(a) < popcount(b);
    return indices_of(a) < indices_of(b);
  });
  return out;
}

std::vector<QVec> StackyFan::rays_of(Mask cone) const {
  std::vector<QVec> out;
  for (int i : indices_of(cone)) out.push_back(rays[i]);
  return out;
}

bool StackyFan::pure_full_dimensional() const {
  if (max_cones.empty()) return false;
  for (Mask c : max_cones) {
    if (popcount(c) != n) return false;
    if (rank(rays_of(c), n) != n) return false;
  }
  return true;
}

StackyFan build_fan(const GitPresentation& p, const AnticoneFamily& family) {
  StackyFan fan;
  fan.m = p.m();
  Cokernel ck = cokernel_presentation(p.character_matrix());
  fan.n = ck.free_rank;
  fan.torsion = ck.torsion;
  fan.beta = ck.projection;
  for (int i = 0; i < fan.m; ++i) {
    QVec b(fan.n);
    for (int k = 0; k < fan.n; ++k) b[k] = ck.projection(k, i);
    fan.rays.push_back(std::move(b));
  }
  fan.extended = family.common();
  const Mask all = full_mask(fan.m);
  for (Mask j : family.minimal) fan.max_cones.push_back(all & ~j);
  std::sort(fan.max_cones.begin(), fan.max_cones.end());
  for (Mask c : fan.max_cones)
    if (rank(fan.rays_of(c), fan.n) != popcount(c))
      throw Error(ErrorCode::NonSimplicial, "maximal cone " + mask_to_string(c) + " has dependent rays");
  return fan;
}

StackyFan fan_from_rays(const std::vector<QVec>& rays, const std::vector<Mask>& max_cones) {
  StackyFan fan;
  fan.m = static_cast<int>(rays.size());
  fan.n = rays.empty() ? 0 : static_cast<int>(rays[0].size());
  fan.rays = rays;
  fan.max_cones = max_cones;
  std::sort(fan.max_cones.begin(), fan.max_cones.end());
  return fan;
}

std::optional<ConeLocation> locate_in_fan(const StackyFan& fan, const QVec& v) {
  std::optional<ConeLocation> best;
  for (Mask c : fan.max_cones) {
    std::vector<int> idx = indices_of(c);
    auto sol = solve(transpose(fan.rays_of(c), fan.n), v, static_cast<int>(idx.size()));
    if (!sol) continue;
    if (std::any_of(sol->begin(), sol->end(), [](const Rational& x) { return x < 0; })) continue;
    ConeLocation loc;
    for (std::size_t k = 0; k < idx.size(); ++k)
      if ((*sol)[k] > 0) {
        loc.cone |= 1u << idx[k];
        loc.coeffs.push_back((*sol)[k]);
      }
    if (best && (best->cone != loc.cone || best->coeffs != loc.coeffs))
      throw Error(ErrorCode::NonSimplicial, "vector " + to_string(v) + " located inconsistently");
    best = loc;
  }
  return best;
}

std::vector<Mask> boundary_facets(const StackyFan& fan) {
  std::map<Mask, int> count;
  for (Mask c : fan.max_cones)
    for (int i : indices_of(c)) ++count[c & ~(1u << i)];
  std::vector<Mask> out;
  for (auto [f, k] : count)
    if (k == 1) out.push_back(f);
  return out;
}

std::vector<Mask> interior_cones(const StackyFan& fan) {
  if (!fan.pure_full_dimensional())
    throw Error(ErrorCode::NotPureFullDimensional, "fan is not pure of full dimension");
  std::vector<Mask> boundary = boundary_facets(fan);
  std::vector<Mask> out;
  for (Mask c : fan.cones()) {
    bool on_boundary = false;
    for (Mask f : boundary)
      if ((f & c) == c) {
        on_boundary = true;
        break;
      }
    if (!on_boundary) out.push_back(c);
  }
  return out;
}

std::vector<TwistedSector> twisted_sectors(const GitPresentation& p, const AnticoneFamily& family) {
  const int m = p.m();
  std::map<QVec, TwistedSector> found;  // keyed by nu mod Z^r
  for (Mask j : family.minimal) {
    std::vector<IntVec> rows;
    for (int i : indices_of(j)) rows.push_back(p.characters[i]);
    IntMatrix mj = IntMatrix::from_rows(rows, p.r);
    for (QVec& nu : overlattice_cosets(mj)) {
      if (found.count(nu)) continue;
      Mask support = 0;
      Rational age = 0;
      for (int i = 0; i < m; ++i) {
        Rational pairing = dot(to_qvec(p.characters[i]), nu);
        if (is_integral(pairing))
          support |= 1u << i;
        else
          age += frac(pairing);
      }
      if (!family.contains(support)) continue;
      TwistedSector sec;
      sec.nu = nu;
      sec.support = support;
      sec.index_map = indices_of(support);
      sec.sub.r = p.r;
      sec.sub.omega = p.omega;
      for (int i : sec.index_map) {
        sec.sub.characters.push_back(p.characters[i]);
        if (!p.labels.empty()) sec.sub.labels.push_back(p.labels[i]);
      }
      sec.age = age;
      found.emplace(std::move(nu), std::move(sec));
    }
  }
  std::vector<TwistedSector> out;
  for (auto& [k, s] : found) out.push_back(std::move(s));
  return out;
}

SectorSplit classify_sectors_int_frac(const std::vector<TwistedSector>& sectors,
                                      const GitPresentation& hat, int e_index) {
  SectorSplit split;
  const QVec de = to_qvec(hat.characters.at(e_index));
  for (const auto& s : sectors) {
    if (is_integral(dot(de, s.nu)))
      split.int_sectors.push_back(s);
    else
      split.frac_sectors.push_back(s);
  }
  return split;
}

std::vector<std::pair<int, int>> match_int_sectors(const std::vector<TwistedSector>& base,
                                                   const std::vector<TwistedSector>& int_sectors) {
  std::map<QVec, int> by_nu;
  for (std::size_t k = 0; k < int_sectors.size(); ++k) {
    const QVec& nu = int_sectors[k].nu;
    if (nu.empty() || nu.back() != 0)
      throw Error(ErrorCode::BijectionFailure,
                  "int sector " + to_string(nu) + " has a nonzero last coordinate");
    by_nu[QVec(nu.begin(), nu.end() - 1)] = static_cast<int>(k);
  }
  std::vector<std::pair<int, int>> out;
  std::set<int> used;
  for (std::size_t k = 0; k < base.size(); ++k) {
    auto it = by_nu.find(base[k].nu);
    if (it == by_nu.end())
      throw Error(ErrorCode::BijectionFailure,
                  "sector " + to_string(base[k].nu) + " has no partner");
    used.insert(it->second);
    out.emplace_back(static_cast<int>(k), it->second);
  }
  if (used.size() != int_sectors.size())
    throw Error(ErrorCode::BijectionFailure, "unmatched int sectors remain");
  return out;
}

}  // namespace extrans
