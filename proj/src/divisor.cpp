#include "extrans/divisor.hpp"

#include "extrans/error.hpp"

namespace extrans {

PolyCone extended_ample_cone(const GitPresentation& p, const AnticoneFamily& family) {
  QMatrix rows;
  for (Mask j : family.minimal)
    for (auto& q : PolyCone::from_generators(p.character_vectors(j), p.r).inequalities())
      rows.push_back(std::move(q));
  return PolyCone::from_inequalities(rows, p.r);
}

DivisorClassData divisor_class_data(const GitPresentation& p, const AnticoneFamily& family,
                                    const StackyFan& fan) {
  DivisorClassData out;
  const int m = p.m();
  const int r = p.r;
  out.extended = family.common();
  const QMatrix chars = p.character_vectors(full_mask(m));

  for (int j : indices_of(out.extended)) {
    auto loc = locate_in_fan(fan, fan.rays[j]);
    if (!loc)
      throw Error(ErrorCode::ExtendedVectorOutsideSupport,
                  "ray of extended index " + std::to_string(j) + " lies in no cone");
    ExtendedVector ev;
    ev.index = j;
    ev.cone = loc->cone;
    ev.coeffs = loc->coeffs;
    QVec target(m, 0);
    target[j] = 1;
    std::vector<int> idx = indices_of(loc->cone);
    for (std::size_t k = 0; k < idx.size(); ++k) target[idx[k]] = -loc->coeffs[k];
    auto xi = solve(chars, target, r);
    if (!xi) throw Error(ErrorCode::InvalidArgument, "pairing table for xi is inconsistent");
    ev.xi = *xi;
    out.xi.push_back(std::move(ev));
  }

  // x -> x - sum_j (x . xi_j) D_j kills D_S and lands in the common kernel
  auto project = [&](const QVec& x) {
    QVec y = x;
    for (const auto& ev : out.xi) y = y - dot(x, ev.xi) * chars[ev.index];
    return y;
  };
  std::vector<QVec> projected;
  std::vector<int> candidates;
  for (int i = 0; i < m; ++i)
    if (!has(out.extended, i)) {
      projected.push_back(project(chars[i]));
      candidates.push_back(i);
    }
  for (int k : independent_subset(projected, r)) out.h2_basis.push_back(candidates[k]);
  const int h = static_cast<int>(out.h2_basis.size());
  QMatrix basis_cols(r, QVec(h));
  for (int k = 0; k < h; ++k) {
    QVec b = project(chars[out.h2_basis[k]]);
    for (int t = 0; t < r; ++t) basis_cols[t][k] = b[t];
  }
  out.theta.assign(h, QVec(r, 0));
  for (int t = 0; t < r; ++t) {
    QVec e(r, 0);
    e[t] = 1;
    auto c = solve(basis_cols, project(e), h);
    if (!c) throw Error(ErrorCode::InvalidArgument, "projection leaves the span of H^2 basis");
    for (int k = 0; k < h; ++k) out.theta[k][t] = (*c)[k];
  }

  out.extended_ample_cone = extended_ample_cone(p, family);
  std::vector<QVec> ample_gens;
  for (const auto& g : out.extended_ample_cone.generators()) ample_gens.push_back(out.theta_of(g));
  out.ample_cone = PolyCone::from_generators(ample_gens, h);

  QMatrix mori_rows = out.extended_ample_cone.generators();
  for (int j : indices_of(out.extended)) {
    mori_rows.push_back(chars[j]);
    mori_rows.push_back(-chars[j]);
  }
  out.mori_cone = PolyCone::from_inequalities(mori_rows, r);
  return out;
}

}  // namespace extrans
