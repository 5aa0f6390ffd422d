#include "extrans/git.hpp"

#include <algorithm>
#include <random>

#include "extrans/error.hpp"
#include "extrans/lp.hpp"
#include "extrans/snf.hpp"

namespace extrans {

Mask mask_of(const std::vector<int>& indices) {
  Mask s = 0;
  for (int i : indices) {
    if (i < 0 || i >= kMaxCharacters) throw Error(ErrorCode::InvalidArgument, "index out of range");
    s |= 1u << i;
  }
  return s;
}

std::vector<int> indices_of(Mask s) {
  std::vector<int> out;
  for (int i = 0; s; ++i, s >>= 1)
    if (s & 1u) out.push_back(i);
  return out;
}

std::string mask_to_string(Mask s) {
  std::string out = "{";
  bool first = true;
  for (int i : indices_of(s)) {
    if (!first) out += ",";
    out += std::to_string(i);
    first = false;
  }
  return out + "}";
}

void GitPresentation::check_shape() const {
  if (r < 0) throw Error(ErrorCode::InvalidArgument, "negative torus rank");
  if (m() > kMaxCharacters) throw Error(ErrorCode::InvalidArgument, "too many characters");
  if (static_cast<int>(omega.size()) != r)
    throw Error(ErrorCode::InvalidArgument, "stability has wrong length");
  for (int i = 0; i < m(); ++i)
    if (static_cast<int>(characters[i].size()) != r)
      throw Error(ErrorCode::InvalidArgument, "character " + std::to_string(i) + " has wrong length");
  if (!labels.empty() && static_cast<int>(labels.size()) != m())
    throw Error(ErrorCode::InvalidArgument, "label count differs from character count");
}

IntMatrix GitPresentation::character_matrix() const { return IntMatrix::from_rows(characters, r); }

std::vector<QVec> GitPresentation::character_vectors(Mask subset) const {
  std::vector<QVec> out;
  for (int i : indices_of(subset)) out.push_back(to_qvec(characters[i]));
  return out;
}

std::string GitPresentation::label(int i) const {
  if (!labels.empty()) return labels[i];
  return "D" + std::to_string(i + 1);
}

GitPresentation GitPresentation::with_omega(const QVec& w) const {
  GitPresentation q = *this;
  q.omega = w;
  q.check_shape();
  return q;
}

GitPresentation make_presentation(int r, const std::vector<std::vector<long>>& characters,
                                  const QVec& omega) {
  GitPresentation p;
  p.r = r;
  for (const auto& c : characters) p.characters.emplace_back(c.begin(), c.end());
  p.omega = omega;
  p.check_shape();
  return p;
}

bool is_anticone_lp(const GitPresentation& p, Mask subset) {
  return strict_cone_feasibility(p.character_vectors(subset), p.omega).feasible;
}

bool AnticoneFamily::contains(Mask subset) const {
  for (Mask j : minimal)
    if ((j & subset) == j) return true;
  return false;
}

Mask AnticoneFamily::common() const {
  if (minimal.empty()) return 0;
  Mask s = full_mask(m);
  for (Mask j : minimal) s &= j;
  return s;
}

namespace {

// next subset with the same popcount
Mask gosper(Mask x) {
  Mask c = x & (~x + 1u);
  Mask r = x + c;
  return (((r ^ x) >> 2) / c) | r;
}

}  // namespace

AnticoneFamily anticones(const GitPresentation& p) {
  p.check_shape();
  const int m = p.m();
  AnticoneFamily fam;
  fam.m = m;
  for (int k = 0; k <= m; ++k) {
    std::vector<Mask> found;
    if (k == 0) {
      if (is_anticone_lp(p, 0)) found.push_back(0);
    } else {
      const Mask limit = full_mask(m);
      for (Mask s = (1u << k) - 1u; s <= limit && s != 0; s = gosper(s)) {
        if (fam.contains(s)) continue;
        if (is_anticone_lp(p, s)) found.push_back(s);
        if (s == limit) break;
      }
    }
    for (Mask s : found) fam.minimal.push_back(s);
  }

  // upward closure
  auto fail = [&](Mask s) {
    throw Error(ErrorCode::NotUpwardClosed,
                "superset " + mask_to_string(s) + " of an anticone is not an anticone");
  };
  if (m <= 10) {
    for (Mask s = 0; s <= full_mask(m); ++s) {
      if (fam.contains(s) && !is_anticone_lp(p, s)) fail(s);
      if (s == full_mask(m)) break;
    }
  } else {
    for (Mask j : fam.minimal)
      for (int i = 0; i < m; ++i)
        if (!has(j, i) && !is_anticone_lp(p, j | (1u << i))) fail(j | (1u << i));
    std::mt19937 rng(0x5eed);
    for (int t = 0; t < 200 && !fam.minimal.empty(); ++t) {
      Mask j = fam.minimal[rng() % fam.minimal.size()];
      Mask s = j | (static_cast<Mask>(rng()) & full_mask(m));
      if (!is_anticone_lp(p, s)) fail(s);
    }
  }
  return fam;
}

Mask extended_set(const AnticoneFamily& family) { return family.common(); }

ValidationReport validate(const GitPresentation& p) {
  ValidationReport rep;
  AnticoneFamily fam;
  try {
    fam = anticones(p);
    rep.upward_closed = true;
    rep.family = fam;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotUpwardClosed) throw;
    rep.failures.push_back(std::string("anticones are not upward closed: ") + e.what());
    return rep;
  }
  rep.full_set_anticone = fam.contains(full_mask(p.m()));
  if (!rep.full_set_anticone) rep.failures.push_back("the full index set is not an anticone");

  rep.full_dimensional = true;
  for (Mask j : fam.minimal) {
    if (rank(p.character_vectors(j), p.r) != p.r) {
      rep.full_dimensional = false;
      rep.failures.push_back("anticone " + mask_to_string(j) + " spans less than the full rank");
    }
  }
  if (fam.minimal.empty()) {
    rep.full_dimensional = false;
    rep.failures.push_back("no anticones: stability is outside the cone of characters");
  }
  if (!rep.full_dimensional) return rep;

  // rays of the complement of every minimal anticone must be independent
  Cokernel ck = cokernel_presentation(p.character_matrix());
  Mask s = fam.common();
  rep.simplicial = true;
  for (Mask j : fam.minimal) {
    std::vector<QVec> rays;
    for (int i : indices_of(full_mask(p.m()) & ~j & ~s)) {
      QVec b(ck.free_rank);
      for (int k = 0; k < ck.free_rank; ++k) b[k] = ck.projection(k, i);
      rays.push_back(b);
    }
    if (rank(rays, ck.free_rank) != static_cast<int>(rays.size())) {
      rep.simplicial = false;
      rep.failures.push_back("cone on the complement of " + mask_to_string(j) +
                             " has dependent rays");
    }
  }
  return rep;
}

AnticoneFamily validated_anticones(const GitPresentation& p) {
  ValidationReport rep = validate(p);
  if (!rep.ok()) {
    std::string msg;
    for (const auto& f : rep.failures) msg += (msg.empty() ? "" : "; ") + f;
    throw Error(ErrorCode::ValidationFailed, msg);
  }
  return rep.family;
}

}  // namespace extrans
