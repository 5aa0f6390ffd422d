#include "extrans/transition.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "extrans/error.hpp"
#include "extrans/snf.hpp"

namespace extrans {

namespace {

std::string masks_to_string(const std::vector<Mask>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + mask_to_string(v[i]);
  return s + "]";
}

std::string intvec_to_string(const IntVec& v) { return to_string(to_qvec(v)); }

// first element of a that is not in b
std::string first_difference(std::vector<Mask> a, std::vector<Mask> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  for (Mask x : a)
    if (!std::binary_search(b.begin(), b.end(), x)) return "unexpected " + mask_to_string(x);
  for (Mask x : b)
    if (!std::binary_search(a.begin(), a.end(), x)) return "missing " + mask_to_string(x);
  return "";
}

Check compare_cones(const std::string& name, std::vector<Mask> actual, std::vector<Mask> expected) {
  std::sort(actual.begin(), actual.end());
  std::sort(expected.begin(), expected.end());
  Check c{name, actual == expected, ""};
  c.detail = c.pass ? std::to_string(actual.size()) + " maximal cones"
                    : first_difference(actual, expected);
  return c;
}

void for_each_subset_of_size(int n, int k, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> idx(k);
  std::function<void(int, int)> rec = [&](int pos, int start) {
    if (pos == k) {
      fn(idx);
      return;
    }
    for (int i = start; i <= n - (k - pos); ++i) {
      idx[pos] = i;
      rec(pos + 1, i + 1);
    }
  };
  if (k >= 0 && k <= n) rec(0, 0);
}

// coefficients of x in terms of independent vectors, or nullopt
std::optional<QVec> coefficients(const std::vector<QVec>& vectors, const QVec& x) {
  const int dim = static_cast<int>(x.size());
  const int k = static_cast<int>(vectors.size());
  QMatrix a(dim, QVec(k));
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < k; ++j) a[i][j] = vectors[j][i];
  return solve(a, x, k);
}

bool in_closed_cone(const std::vector<QVec>& independent, const QVec& x) {
  auto c = coefficients(independent, x);
  if (!c) return false;
  for (const auto& v : *c)
    if (v < 0) return false;
  return true;
}

Rational rational_power(const Integer& base, long exponent) {
  Integer p;
  mpz_pow_ui(p.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  Rational q(p);
  return exponent < 0 ? Rational(1) / q : q;
}

QVec lift(const QVec& v, const Rational& last) {
  QVec out(v);
  out.push_back(last);
  return out;
}

}  // namespace

// ---- spec

bool TransitionSpec::weighted() const {
  for (const auto& w : weights)
    if (w != 1) return true;
  return false;
}

Integer TransitionSpec::weight(int i) const {
  auto it = std::find(center.begin(), center.end(), i);
  if (it == center.end()) return 0;
  if (weights.empty()) return 1;
  return weights[it - center.begin()];
}

Integer TransitionSpec::weight_sum() const {
  Integer s = 0;
  for (int i : center) s += weight(i);
  return s;
}

std::vector<int> TransitionSpec::permutation() const {
  std::vector<int> perm = center;
  for (int i = 0; i < m(); ++i)
    if (std::find(center.begin(), center.end(), i) == center.end()) perm.push_back(i);
  return perm;
}

bool all_pass(const std::vector<Check>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

// ---- hat presentation

namespace {

GitPresentation hat_at(const HatPresentation& h, const QVec& omega, bool with_f) {
  GitPresentation p;
  p.r = h.r;
  p.characters = h.characters;
  p.labels.assign(h.labels.begin(), h.labels.begin() + h.m() + 1);
  if (with_f) {
    p.characters.push_back(h.f);
    p.labels.push_back(h.labels.back());
  }
  p.omega = omega;
  return p;
}

}  // namespace

GitPresentation HatPresentation::blowup() const { return hat_at(*this, omega_plus, false); }
GitPresentation HatPresentation::unblown() const { return hat_at(*this, omega_minus, false); }
GitPresentation HatPresentation::total_plus() const { return hat_at(*this, omega_plus, true); }
GitPresentation HatPresentation::total_minus() const { return hat_at(*this, omega_minus, true); }

IntVec dtilde_coefficients(const TransitionSpec& spec) {
  IntVec c = spec.a;
  Integer e = 1;
  for (int i : spec.center) e += spec.weight(i) * (spec.a[i] - 1);
  c.push_back(e);
  return c;
}

namespace {

void check_spec(const TransitionSpec& spec) {
  spec.base.check_shape();
  const int m = spec.m();
  if (static_cast<int>(spec.a.size()) != m)
    throw Error(ErrorCode::InvalidArgument, "divisor has " + std::to_string(spec.a.size()) +
                                                " coefficients, expected " + std::to_string(m));
  if (spec.center.empty()) throw Error(ErrorCode::InvalidArgument, "empty blow-up center");
  std::set<int> seen;
  for (int i : spec.center) {
    if (i < 0 || i >= m) throw Error(ErrorCode::InvalidArgument, "center index " + std::to_string(i) + " out of range");
    if (!seen.insert(i).second) throw Error(ErrorCode::InvalidArgument, "repeated center index " + std::to_string(i));
  }
  if (!spec.weights.empty()) {
    if (spec.weights.size() != spec.center.size())
      throw Error(ErrorCode::InvalidArgument, "one weight per center index expected");
    for (const auto& w : spec.weights)
      if (w <= 0) throw Error(ErrorCode::InvalidArgument, "weights must be positive");
  }
  if (m + 2 > kMaxCharacters) throw Error(ErrorCode::DimensionLimit, "too many characters");
}

}  // namespace

std::vector<Rational> critical_heights(const std::vector<IntVec>& characters, const QVec& omega) {
  const int dim = static_cast<int>(omega.size()) + 1;
  const int n = static_cast<int>(characters.size());
  std::vector<QVec> chars;
  for (const auto& c : characters) chars.push_back(to_qvec(c));
  std::set<Rational> heights;
  for_each_subset_of_size(n, dim - 1, [&](const std::vector<int>& idx) {
    std::vector<QVec> vs;
    for (int i : idx) vs.push_back(chars[i]);
    if (rank(vs, dim) != dim - 1) return;
    QMatrix normal = nullspace(vs, dim);
    const QVec& nv = normal.at(0);
    if (nv.back() == 0) return;  // parallel to the vertical line
    Rational t = -dot(QVec(nv.begin(), nv.end() - 1), omega) / nv.back();
    if (t == 0) return;
    if (in_closed_cone(vs, lift(omega, t))) heights.insert(t < 0 ? Rational(-t) : t);
  });
  return {heights.begin(), heights.end()};
}

Rational epsilon_select(const std::vector<IntVec>& characters, const QVec& omega) {
  const int r = static_cast<int>(omega.size());
  if (is_zero(omega)) throw Error(ErrorCode::OmegaOnWall, "stability is zero");
  // omega must avoid cones spanned by r-1 of the projected characters
  std::vector<QVec> base;
  for (const auto& c : characters) {
    QVec v(to_qvec(c));
    v.pop_back();
    if (!is_zero(v)) base.push_back(v);
  }
  if (r >= 2)
    for_each_subset_of_size(static_cast<int>(base.size()), r - 1, [&](const std::vector<int>& idx) {
      std::vector<QVec> vs;
      for (int i : idx) vs.push_back(base[i]);
      if (rank(vs, r) != r - 1) return;
      if (in_closed_cone(vs, omega))
        throw Error(ErrorCode::OmegaOnWall, to_string(omega) + " lies on the wall spanned by " +
                                                std::to_string(idx.size()) + " characters");
    });
  auto h = critical_heights(characters, omega);
  return h.empty() ? Rational(1) : h.front() / 2;
}

HatPresentation blowup_presentation(const TransitionSpec& spec) {
  check_spec(spec);
  const int m = spec.m();
  const int r = spec.base.r;
  AnticoneFamily fam = validated_anticones(spec.base);
  StackyFan fan = build_fan(spec.base, fam);
  const Mask center = spec.center_mask();
  if (center & fan.extended)
    throw Error(ErrorCode::CenterMeetsExtendedSet,
                "center " + mask_to_string(center) + " meets S = " + mask_to_string(fan.extended));
  if (!fan.is_cone(center)) throw Error(ErrorCode::CenterNotCone, "center " + mask_to_string(center) + " is not a cone");

  HatPresentation h;
  h.r = r + 1;
  for (int i = 0; i < m; ++i) {
    IntVec c = spec.base.characters[i];
    c.push_back(spec.weight(i));
    h.characters.push_back(std::move(c));
    h.labels.push_back(spec.base.labels.empty() ? std::to_string(i + 1) : spec.base.labels[i]);
  }
  IntVec de(r + 1, 0);
  de[r] = -1;
  h.characters.push_back(de);
  h.labels.push_back("e");
  IntVec dt = dtilde_coefficients(spec);
  h.f = IntVec(r + 1, 0);
  for (int i = 0; i <= m; ++i)
    for (int j = 0; j <= r; ++j) h.f[j] -= dt[i] * h.characters[i][j];
  h.labels.push_back("f");

  std::vector<IntVec> all = h.characters;
  all.push_back(h.f);
  Rational auto_eps = epsilon_select(all, spec.base.omega);
  auto set_eps = [&](const Rational& eps) {
    h.epsilon = eps;
    h.omega_plus = lift(spec.base.omega, eps);
    h.omega_minus = lift(spec.base.omega, -eps);
  };
  set_eps(auto_eps);
  if (spec.epsilon) {
    if (*spec.epsilon <= 0) throw Error(ErrorCode::InvalidArgument, "epsilon must be positive");
    HatPresentation ref = h;
    set_eps(*spec.epsilon);
    h.epsilon_from_user = true;
    for (bool with_f : {false, true})
      for (bool plus : {true, false}) {
        auto mine = plus ? hat_at(h, h.omega_plus, with_f) : hat_at(h, h.omega_minus, with_f);
        auto theirs = plus ? hat_at(ref, ref.omega_plus, with_f) : hat_at(ref, ref.omega_minus, with_f);
        if (!(anticones(mine) == anticones(theirs)))
          throw Error(ErrorCode::ChamberChanged, "epsilon " + to_string(*spec.epsilon) +
                                                     " leaves the chamber found at " + to_string(auto_eps));
      }
  }
  validated_anticones(h.blowup());
  validated_anticones(h.unblown());
  return h;
}

std::vector<Check> verify_blowup_fan(const TransitionSpec& spec, const HatPresentation& hat) {
  std::vector<Check> out;
  const int m = spec.m();
  const Mask center = spec.center_mask();
  const Mask ebit = 1u << m;
  AnticoneFamily base_fam = validated_anticones(spec.base);
  StackyFan base_fan = build_fan(spec.base, base_fam);

  GitPresentation minus = hat.unblown();
  AnticoneFamily minus_fam = validated_anticones(minus);
  StackyFan minus_fan = build_fan(minus, minus_fam);
  std::vector<Mask> lifted;
  for (Mask j : base_fam.minimal) lifted.push_back(j | ebit);
  std::sort(lifted.begin(), lifted.end());
  std::vector<Mask> got = minus_fam.minimal;
  std::sort(got.begin(), got.end());
  out.push_back({"minus_anticones_lift", got == lifted,
                 got == lifted ? "J anticone iff J+e anticone" : first_difference(got, lifted)});
  Check same = compare_cones("minus_fan_equals_base", minus_fan.max_cones, base_fan.max_cones);
  if (minus_fan.extended != (base_fan.extended | ebit)) {
    same.pass = false;
    same.detail = "extended set " + mask_to_string(minus_fan.extended);
  }
  out.push_back(same);

  AnticoneFamily plus_fam = validated_anticones(hat.blowup());
  StackyFan plus_fan = build_fan(hat.blowup(), plus_fam);
  std::vector<Mask> expected;
  std::size_t untouched = 0, containing = 0;
  for (Mask c : base_fan.max_cones) {
    if ((c & center) != center) {
      expected.push_back(c);
      ++untouched;
    } else {
      ++containing;
      for (int i : spec.center) expected.push_back((c & ~(1u << i)) | ebit);
    }
  }
  out.push_back(compare_cones("plus_fan_star_subdivision", plus_fan.max_cones, expected));
  std::size_t predicted = untouched + static_cast<std::size_t>(spec.k()) * containing;
  out.push_back({"plus_cone_count", plus_fan.max_cones.size() == predicted,
                 std::to_string(plus_fan.max_cones.size()) + " = " + std::to_string(untouched) + " + " +
                     std::to_string(spec.k()) + "*" + std::to_string(containing)});
  return out;
}

// ---- support function

Rational SupportFunctionData::value(const StackyFan& fan, const QVec& n) const {
  auto loc = locate_in_fan(fan, n);
  if (!loc) throw Error(ErrorCode::InvalidArgument, to_string(n) + " is outside the fan");
  for (std::size_t s = 0; s < cones.size(); ++s)
    if ((loc->cone & ~cones[s]) == 0) return dot(m_sigma[s], n);
  throw Error(ErrorCode::InvalidArgument, "no maximal cone over " + mask_to_string(loc->cone));
}

SupportFunctionData support_function(const StackyFan& fan, const IntVec& a) {
  if (static_cast<int>(a.size()) != fan.m) throw Error(ErrorCode::InvalidArgument, "support function: wrong length");
  if (!fan.pure_full_dimensional()) throw Error(ErrorCode::NotPureFullDimensional, "support function needs a pure fan");
  SupportFunctionData sf;
  sf.cartier = sf.convex = sf.extended_ok = true;
  auto fail = [&](bool& flag, const std::string& why) {
    if (flag && sf.witness.empty()) sf.witness = why;
    flag = false;
  };
  const int n = fan.n;
  std::vector<QMatrix> inverses;
  for (Mask c : fan.max_cones) {
    std::vector<int> idx = indices_of(c);
    QMatrix rays = fan.rays_of(c);
    auto inv = inverse(rays);
    if (!inv) throw Error(ErrorCode::NonSimplicial, "cone " + mask_to_string(c));
    QVec rhs;
    for (int i : idx) rhs.push_back(-Rational(a[i]));
    QVec ms = multiply(*inv, rhs);
    if (!is_integral(ms)) fail(sf.cartier, "m_sigma " + to_string(ms) + " on " + mask_to_string(c) + " is not integral");
    sf.cones.push_back(c);
    sf.m_sigma.push_back(std::move(ms));
    inverses.push_back(std::move(*inv));
  }
  for (std::size_t s = 0; s < sf.cones.size(); ++s) {
    for (int i = 0; i < fan.m; ++i) {
      if (has(fan.extended, i)) continue;
      Rational v = dot(sf.m_sigma[s], fan.rays[i]);
      // does the ray lie in this cone?
      bool inside = true;
      for (int j = 0; j < n && inside; ++j) {
        Rational lam = 0;
        for (int k = 0; k < n; ++k) lam += inverses[s][k][j] * fan.rays[i][k];
        if (lam < 0) inside = false;
      }
      if (inside && v != -Rational(a[i]))
        throw Error(ErrorCode::InconsistentOnSharedFace,
                    "ray " + std::to_string(i) + " lies in " + mask_to_string(sf.cones[s]) + " with value " +
                        to_string(v) + " instead of " + to_string(Integer(-a[i])));
      if (!inside && v < -Rational(a[i]))
        fail(sf.convex, "<m_sigma, b_" + std::to_string(i) + "> = " + to_string(v) + " < " +
                            to_string(Integer(-a[i])) + " on " + mask_to_string(sf.cones[s]));
    }
  }
  for (int j : indices_of(fan.extended)) {
    Rational v = sf.value(fan, fan.rays[j]);
    if (v < -Rational(a[j]))
      fail(sf.extended_ok, "phi(b_" + std::to_string(j) + ") = " + to_string(v) + " < " + to_string(Integer(-a[j])));
  }
  return sf;
}

std::vector<IntVec> delta_polytope_points(const StackyFan& fan, const IntVec& a) {
  const int n = fan.n;
  if (n + 1 > kMaxConeDim) throw Error(ErrorCode::DimensionLimit, "polytope dimension");
  QMatrix recession, homog;
  for (int i = 0; i < fan.m; ++i) {
    if (has(fan.extended, i)) continue;
    recession.push_back(fan.rays[i]);
    homog.push_back(lift(fan.rays[i], Rational(a[i])));
  }
  RayDescription rec = extreme_rays(recession, n);
  if (!rec.lineality.empty() || !rec.rays.empty())
    throw Error(ErrorCode::UnboundedPolytope, "recession cone is nonzero");
  QVec sdir(n + 1, 0);
  sdir[n] = 1;
  homog.push_back(sdir);
  RayDescription rd = extreme_rays(homog, n + 1);
  std::vector<QVec> vertices;
  for (const auto& ray : rd.rays) {
    if (ray[n] <= 0) continue;
    QVec v(n);
    for (int k = 0; k < n; ++k) v[k] = Rational(ray[k]) / Rational(ray[n]);
    vertices.push_back(std::move(v));
  }
  if (vertices.empty()) return {};
  IntVec lo(n), hi(n);
  for (int k = 0; k < n; ++k) {
    lo[k] = floor(vertices[0][k]);
    hi[k] = ceil(vertices[0][k]);
    for (const auto& v : vertices) {
      lo[k] = std::min(lo[k], floor(v[k]));
      hi[k] = std::max(hi[k], ceil(v[k]));
    }
  }
  Integer volume = 1;
  for (int k = 0; k < n; ++k) volume *= hi[k] - lo[k] + 1;
  if (volume > 20000000) throw Error(ErrorCode::DimensionLimit, "bounding box too large");
  std::vector<IntVec> points;
  IntVec cur = lo;
  while (true) {
    QVec q = to_qvec(cur);
    bool ok = true;
    for (const auto& row : homog) {
      Rational s = row[n];
      for (int k = 0; k < n; ++k) s += row[k] * q[k];
      if (s < 0) {
        ok = false;
        break;
      }
    }
    if (ok) points.push_back(cur);
    int k = n - 1;
    while (k >= 0 && cur[k] == hi[k]) {
      cur[k] = lo[k];
      --k;
    }
    if (k < 0) break;
    ++cur[k];
  }
  std::sort(points.begin(), points.end());
  return points;
}

FilterResult degenerate_filter(const std::vector<IntVec>& points, const TransitionSpec& spec,
                               const StackyFan& base_fan) {
  FilterResult out;
  out.total = points.size();
  out.agrees_with_tilde = true;
  const IntVec dt = dtilde_coefficients(spec);
  const Integer threshold = spec.weight_sum() - 1;
  QVec be(base_fan.n, 0);
  for (int i : spec.center) be = be + Rational(spec.weight(i)) * base_fan.rays[i];
  for (const auto& p : points) {
    QVec q = to_qvec(p);
    Rational ord = 0;
    for (int i : spec.center) ord += Rational(spec.weight(i)) * (dot(q, base_fan.rays[i]) + Rational(spec.a[i]));
    bool keep = ord >= Rational(threshold);
    bool in_tilde = dot(q, be) + Rational(dt.back()) >= 0;
    if (keep != in_tilde) out.agrees_with_tilde = false;
    if (keep) out.survivors.push_back(p);
  }
  return out;
}

// ---- crepancy

CrepancyResult crepancy_check(const TransitionSpec& spec, const HatPresentation& hat,
                              std::optional<Integer> e_coefficient) {
  CrepancyResult out;
  const int m = spec.m();
  AnticoneFamily fam = validated_anticones(spec.base);
  StackyFan fan = build_fan(spec.base, fam);
  QVec be(fan.n, 0);
  for (int i : spec.center) be = be + Rational(spec.weight(i)) * fan.rays[i];

  auto pullback = [&](const IntVec& a) {
    SupportFunctionData sf = support_function(fan, a);
    Rational v = sf.value(fan, be);
    if (!is_integral(v)) throw Error(ErrorCode::InvalidArgument, "pullback coefficient " + to_string(v));
    IntVec c = a;
    c.push_back(-v.get_num());
    return c;
  };
  out.pullback_d = pullback(spec.a);
  out.pullback_k = pullback(IntVec(m, -1));
  out.dtilde = dtilde_coefficients(spec);
  if (e_coefficient) out.dtilde.back() = *e_coefficient;
  IntVec ktilde(m + 1, -1);

  IntVec diff(m + 1);
  for (int i = 0; i <= m; ++i) diff[i] = out.pullback_k[i] + out.pullback_d[i] - ktilde[i] - out.dtilde[i];
  out.mismatch = QVec(hat.r, 0);
  for (int i = 0; i <= m; ++i) out.mismatch = out.mismatch + Rational(diff[i]) * to_qvec(hat.characters[i]);

  // the two displayed identities, each along D^_e only
  const Integer ws = spec.weight_sum();
  bool d_ok = true, k_ok = true;
  for (int i = 0; i < m; ++i) {
    d_ok = d_ok && out.pullback_d[i] == out.dtilde[i];
    k_ok = k_ok && out.pullback_k[i] == ktilde[i];
  }
  d_ok = d_ok && out.pullback_d[m] - out.dtilde[m] == ws - 1;
  k_ok = k_ok && out.pullback_k[m] - ktilde[m] == 1 - ws;
  out.ok = d_ok && k_ok && is_zero(out.mismatch) && std::all_of(diff.begin(), diff.end(), [](const Integer& x) { return x == 0; });
  if (out.ok)
    out.detail = "q*(K+D) = K~ + D~";
  else
    out.detail = "mismatch " + to_string(out.mismatch) + (d_ok ? "" : "; q*D - D~ is not (w-1)D_e") +
                 (k_ok ? "" : "; q*K - K~ is not (1-w)D_e");
  return out;
}

// ---- total spaces

TotalSpaces total_space_presentations(const TransitionSpec& spec, const HatPresentation& hat) {
  TotalSpaces ts;
  ts.t = spec.base;
  IntVec f(spec.base.r, 0);
  for (int i = 0; i < spec.m(); ++i)
    for (int j = 0; j < spec.base.r; ++j) f[j] -= spec.a[i] * spec.base.characters[i][j];
  ts.t.characters.push_back(f);
  ts.t.labels.assign(hat.labels.begin(), hat.labels.begin() + spec.m());
  ts.t.labels.push_back("f");
  ts.tbar = hat.total_minus();
  ts.ttilde = hat.total_plus();
  return ts;
}

std::vector<Check> verify_total_space(const TransitionSpec& spec, const HatPresentation& hat,
                                      const TotalSpaces& spaces) {
  std::vector<Check> out;
  const int m = spec.m();
  const Mask ebit = 1u << m, fbit = 1u << (m + 1);
  const Mask center = spec.center_mask();
  auto guarded = [&](const std::string& name, const std::function<Check()>& fn) {
    try {
      out.push_back(fn());
    } catch (const Error& e) {
      out.push_back({name, false, e.what()});
    }
  };

  guarded("total_plus_cones", [&] {
    AnticoneFamily xf = validated_anticones(hat.blowup());
    StackyFan xfan = build_fan(hat.blowup(), xf);
    AnticoneFamily tf = validated_anticones(spaces.ttilde);
    StackyFan tfan = build_fan(spaces.ttilde, tf);
    std::vector<Mask> expected;
    for (Mask c : xfan.max_cones) expected.push_back(c | fbit);
    return compare_cones("total_plus_cones", tfan.max_cones, expected);
  });

  guarded("total_minus_cones", [&] {
    AnticoneFamily bf = validated_anticones(spec.base);
    StackyFan bfan = build_fan(spec.base, bf);
    AnticoneFamily tf = validated_anticones(spaces.tbar);
    StackyFan tfan = build_fan(spaces.tbar, tf);
    std::vector<Mask> expected;
    for (Mask c : bfan.max_cones) {
      expected.push_back(c | fbit);
      if ((c & center) == center) expected.push_back(c | ebit);
    }
    Check c = compare_cones("total_minus_cones", tfan.max_cones, expected);
    if (c.pass && tfan.extended != bfan.extended) {
      c.pass = false;
      c.detail = "extended set changed to " + mask_to_string(tfan.extended);
    }
    return c;
  });

  guarded("unique_interior_ray", [&] {
    AnticoneFamily tf = validated_anticones(spaces.ttilde);
    StackyFan tfan = build_fan(spaces.ttilde, tf);
    std::vector<Mask> rays;
    for (Mask c : interior_cones(tfan))
      if (popcount(c) == 1) rays.push_back(c);
    bool ok = rays.size() == 1 && rays[0] == fbit;
    return Check{"unique_interior_ray", ok, "interior rays " + masks_to_string(rays)};
  });

  guarded("int_sector_bijection", [&] {
    auto bar_secs = twisted_sectors(spaces.tbar, validated_anticones(spaces.tbar));
    auto t_secs = twisted_sectors(spaces.t, validated_anticones(spaces.t));
    SectorSplit split = classify_sectors_int_frac(bar_secs, spaces.tbar, m);
    auto pairs = match_int_sectors(t_secs, split.int_sectors);
    return Check{"int_sector_bijection", true,
                 std::to_string(pairs.size()) + " int sectors, " + std::to_string(split.frac_sectors.size()) +
                     " frac sectors"};
  });

  guarded("cone_splitting", [&] {
    const int r = spaces.t.r;
    QVec down(r + 1, 0);
    down[r] = -1;
    AnticoneFamily tf = validated_anticones(spaces.t);
    StackyFan tfan = build_fan(spaces.t, tf);
    AnticoneFamily bf = validated_anticones(spaces.tbar);
    StackyFan bfan = build_fan(spaces.tbar, bf);
    DivisorClassData td = divisor_class_data(spaces.t, tf, tfan);
    DivisorClassData bd = divisor_class_data(spaces.tbar, bf, bfan);

    auto product = [&](const PolyCone& c) {
      std::vector<QVec> gens;
      for (const auto& g : c.generators()) gens.push_back(lift(g, 0));
      gens.push_back(down);
      return PolyCone::from_generators(gens, r + 1);
    };
    auto facets = [](const PolyCone& c) {
      auto v = c.facet_normals();
      std::sort(v.begin(), v.end());
      return v;
    };
    PolyCone ample = product(td.extended_ample_cone);
    PolyCone mori = product(td.mori_cone);
    bool ample_ok = ample.same_as(bd.extended_ample_cone) && facets(ample) == facets(bd.extended_ample_cone);
    bool mori_ok = mori.same_as(bd.mori_cone);
    std::string d = std::string(ample_ok ? "" : "extended ample cone differs; ") + (mori_ok ? "" : "Mori cone differs");
    if (d.empty()) d = std::to_string(bd.extended_ample_cone.facet_normals().size()) + " facets";
    return Check{"cone_splitting", ample_ok && mori_ok, d};
  });
  return out;
}

// ---- wall chart

WallChart wall_chart(const GitPresentation& minus, const GitPresentation& plus,
                     const std::optional<IntVec>& p_minus_last) {
  WallChart w;
  const int dim = plus.r;
  PolyCone cplus = extended_ample_cone(plus, validated_anticones(plus));
  PolyCone cminus = extended_ample_cone(minus, validated_anticones(minus));

  auto restricted = [&](const PolyCone& c, const QVec& n) {
    QMatrix ineq = c.inequalities();
    ineq.push_back(n);
    ineq.push_back(-n);
    return PolyCone::from_inequalities(ineq, dim);
  };
  std::optional<IntVec> found;
  for (const auto& n : cplus.facet_normals()) {
    QVec nq = to_qvec(n);
    bool opposite = false;
    for (const auto& k : cminus.facet_normals())
      if (to_qvec(k) == -nq) opposite = true;
    if (!opposite) continue;
    if (restricted(cplus, nq).same_as(restricted(cminus, nq))) {
      found = n;
      break;
    }
  }
  if (!found) throw Error(ErrorCode::NoCommonWall, "chambers share no codimension-one face");
  w.e = primitive(to_qvec(*found));
  if (dot(plus.omega, to_qvec(w.e)) < 0)
    for (auto& x : w.e) x = -x;
  const QVec eq = to_qvec(w.e);

  for (const auto& c : plus.characters) {
    Rational p = dot(to_qvec(c), eq);
    w.pairings.push_back(p.get_num());
    w.pairing_sum += p.get_num();
    if (p != 0) w.frak_c *= rational_power(p.get_num(), p.get_num().get_si());
  }
  w.crepant = w.pairing_sum == 0;
  if (!w.crepant)
    w.warnings.push_back("NonCrepantWall: sum of D_j.e is " + to_string(w.pairing_sum));

  // bases adapted to the wall
  PolyCone wall = restricted(cplus, eq);
  std::vector<IntVec> gens;
  for (const auto& g : wall.generators()) gens.push_back(primitive(g));
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  auto unimodular_in_wall = [&](const std::vector<IntVec>& vs) {
    if (static_cast<int>(vs.size()) != dim - 1) return false;
    IntMatrix mat = IntMatrix::from_rows(vs, dim);
    auto d = smith_normal_form(mat).diagonal();
    if (static_cast<int>(d.size()) < dim - 1) return false;
    for (int i = 0; i < dim - 1; ++i)
      if (d[i] != 1) return false;
    return true;
  };
  if (wall.equations().size() == 1 && unimodular_in_wall(gens)) {
    w.p_wall = gens;
    w.wall_basis_in_cone = true;
  } else {
    IntMatrix row(1, dim);
    for (int j = 0; j < dim; ++j) row(0, j) = w.e[j];
    SnfResult s = smith_normal_form(row);
    for (int j = 1; j < dim; ++j) w.p_wall.push_back(s.R.column(j));
  }

  if (p_minus_last) {
    w.p_minus_last = *p_minus_last;
  } else {
    for (const auto& c : minus.characters)
      if (dot(to_qvec(c), eq) == -1 && cminus.contains(to_qvec(c))) {
        w.p_minus_last = c;
        break;
      }
  }
  if (w.p_minus_last.empty()) {
    w.warnings.push_back("no character pairs to -1 with e inside the minus chamber");
    return w;
  }

  // p+_{r+1} = -p-_{r+1} + sum c_i p_i inside the plus chamber, smallest |c| first
  const int r = dim - 1;
  const int bound = r <= 3 ? 6 : 2;
  std::vector<IntVec> candidates;
  IntVec cur(r, -bound);
  while (true) {
    candidates.push_back(cur);
    int k = r - 1;
    while (k >= 0 && cur[k] == bound) {
      cur[k] = -bound;
      --k;
    }
    if (k < 0) break;
    ++cur[k];
  }
  auto l1 = [](const IntVec& v) {
    Integer s = 0;
    for (const auto& x : v) s += abs(x);
    return s;
  };
  std::stable_sort(candidates.begin(), candidates.end(),
                   [&](const IntVec& x, const IntVec& y) { return l1(x) < l1(y); });
  for (const auto& c : candidates) {
    QVec p = -to_qvec(w.p_minus_last);
    for (int i = 0; i < r; ++i) p = p + Rational(c[i]) * to_qvec(w.p_wall[i]);
    if (cplus.contains(p)) {
      w.p_plus_last = to_intvec(p);
      w.c = c;
      break;
    }
  }
  if (!w.p_plus_last) w.warnings.push_back("no integral p+ found in the search box");
  return w;
}

// ---- conditions

namespace {

// First Chern class of the line bundle of chi on a sector, written through
// the sector's own characters.
CohClass character_class(const SectorRing& s, const IntVec& chi) {
  const auto& sub = s.sector.sub;
  std::vector<QVec> cols;
  for (const auto& c : sub.characters) cols.push_back(to_qvec(c));
  auto coeff = coefficients(cols, to_qvec(chi));
  if (!coeff) throw Error(ErrorCode::InvalidArgument, "character " + intvec_to_string(chi) + " is not in the sector span");
  Poly p;
  for (std::size_t k = 0; k < coeff->size(); ++k)
    if ((*coeff)[k] != 0) p = p + (*coeff)[k] * poly_variable(s.ring.nvars(), static_cast<int>(k));
  return p.empty() ? s.ring.zero(1) : s.ring.from_poly(p, 1);
}

CohClass local_variable(const SectorRing& s, int parent, const IntVec& chi) {
  auto it = std::find(s.sector.index_map.begin(), s.sector.index_map.end(), parent);
  if (it != s.sector.index_map.end()) return s.ring.variable(static_cast<int>(it - s.sector.index_map.begin()));
  return character_class(s, chi);
}

std::optional<CohClass> first_class(const GradedSubspace& s) {
  for (std::size_t d = 0; d < s.rows.size(); ++d)
    if (!s.rows[d].empty()) return CohClass{static_cast<int>(d), s.rows[d][0]};
  return std::nullopt;
}

}  // namespace

ConditionResult check_conditions(const GitPresentation& t, const GitPresentation& tbar) {
  ConditionResult out;
  out.c1 = out.c2 = true;
  const int m = t.m() - 1;
  if (tbar.m() != m + 2) throw Error(ErrorCode::InvalidArgument, "total spaces do not match");
  const int e = m, f = m + 1;
  auto sec_t = chen_ruan(t, validated_anticones(t), {m - 1});
  auto sec_bar = chen_ruan(tbar, validated_anticones(tbar), {m - 1, m});

  std::vector<TwistedSector> t_list, int_list;
  std::vector<int> int_index;
  for (const auto& s : sec_t) t_list.push_back(s.sector);
  for (std::size_t j = 0; j < sec_bar.size(); ++j) {
    const auto& s = sec_bar[j];
    if (is_integral(dot(to_qvec(tbar.characters[e]), s.sector.nu))) {
      int_list.push_back(s.sector);
      int_index.push_back(static_cast<int>(j));
      continue;
    }
    CohClass uf = character_class(s, tbar.characters[f]);
    if (ideal_image(s.ring, {uf}).total_dim() != 0) {
      out.frac_sectors_vanish = false;
      out.frac_violations.push_back("u_f H is nonzero on sector " + to_string(s.sector.nu));
    }
  }
  auto pairs = match_int_sectors(t_list, int_list);

  for (auto [kt, ki] : pairs) {
    const SectorRing& st = sec_t[kt];
    const SectorRing& sb = sec_bar[int_index[ki]];
    const GradedRing& rb = sb.ring;
    const GradedRing& rt = st.ring;
    SectorCondition sc;
    sc.nu = st.sector.nu;
    sc.names = rb.names();
    sc.t_names = rt.names();
    sc.tbar_dim = rb.total_dim();

    CohClass uf = local_variable(sb, f, tbar.characters[f]);
    CohClass ue = local_variable(sb, e, tbar.characters[e]);
    std::vector<CohClass> images;
    for (int parent : sb.sector.index_map) {
      if (parent == e)
        images.push_back(rt.zero(1));
      else
        images.push_back(local_variable(st, parent == f ? m : parent, t.characters[parent == f ? m : parent]));
    }
    RingMap res = ring_map(rb, rt, images);

    GradedSubspace ufh = ideal_image(rb, {uf});
    sc.uf_dim = ufh.total_dim();
    GradedSubspace nar_t = narrow_by_interior_cones(rt, st.fan).space;
    sc.narrow_t_dim = nar_t.total_dim();
    if (!res.well_defined) {
      sc.injective = sc.surjective = false;
    } else {
      GradedSubspace ker = res.kernel_on(rb, ufh);
      sc.injective = ker.total_dim() == 0;
      if (auto w = first_class(ker)) sc.kernel_witness = rb.to_poly(*w);
      GradedSubspace img = res.image(rt, ufh);
      sc.surjective = img == nar_t;
      if (!sc.surjective) {
        auto missing = complement_basis(rt, nar_t, intersect(rt, img, nar_t));
        if (!missing.empty()) sc.missing_witness = rt.to_poly(missing[0]);
      }
    }

    GradedSubspace nar_b = narrow_by_interior_cones(rb, sb.fan).space;
    GradedSubspace ker_e = intersect(rb, mult_kernel(rb, ue), nar_b);
    sc.c2 = ker_e == ufh;
    if (!sc.c2) {
      auto extra = complement_basis(rb, ker_e, intersect(rb, ufh, ker_e));
      if (!extra.empty()) sc.c2_witness = rb.to_poly(extra[0]);
    }
    out.c1 = out.c1 && sc.injective && sc.surjective;
    out.c2 = out.c2 && sc.c2;
    out.sectors.push_back(std::move(sc));
  }
  return out;
}

// ---- pipeline

TransitionReport transition_report(const TransitionSpec& spec) {
  auto stage = [](const char* name, auto fn) {
    try {
      return fn();
    } catch (const Error& e) {
      throw Error(e.code(), std::string(name) + ": " + e.detail());
    }
  };
  TransitionReport rep;
  rep.spec = spec;
  rep.permutation = spec.permutation();

  ValidationReport vx = validate(spec.base);
  if (!vx.ok()) {
    std::string msg;
    for (const auto& f : vx.failures) msg += (msg.empty() ? "" : "; ") + f;
    throw Error(ErrorCode::ValidationFailed, "validate X: " + msg);
  }
  rep.hat = stage("blowup", [&] { return blowup_presentation(spec); });
  TotalSpaces spaces = stage("total_spaces", [&] { return total_space_presentations(spec, rep.hat); });
  rep.validations = {{"X", vx},
                     {"X~", validate(rep.hat.blowup())},
                     {"T", validate(spaces.t)},
                     {"T-bar", validate(spaces.tbar)},
                     {"T~", validate(spaces.ttilde)}};
  for (const auto& [name, v] : rep.validations)
    if (!v.ok()) throw Error(ErrorCode::ValidationFailed, "validate " + name + ": " + v.failures.front());

  StackyFan base_fan = build_fan(spec.base, vx.family);
  GitPresentation xt = rep.hat.blowup();
  StackyFan xt_fan = build_fan(xt, rep.validations[1].second.family);
  IntVec dt = dtilde_coefficients(spec);

  stage("support", [&] {
    rep.support_d = support_function(base_fan, spec.a);
    rep.support_dtilde = support_function(xt_fan, dt);
    return 0;
  });
  rep.crepancy = stage("crepancy", [&] { return crepancy_check(spec, rep.hat); });
  rep.blowup_checks = stage("blowup_fan", [&] { return verify_blowup_fan(spec, rep.hat); });
  rep.total_space_checks = verify_total_space(spec, rep.hat, spaces);

  stage("sections", [&] {
    auto pts = delta_polytope_points(base_fan, spec.a);
    rep.delta_d_points = pts.size();
    rep.filter = degenerate_filter(pts, spec, base_fan);
    auto direct = delta_polytope_points(xt_fan, dt);
    rep.delta_dtilde_points = direct.size();
    // compare by orders of vanishing along D_1..D_m, which do not depend on coordinates
    auto orders = [&](const std::vector<IntVec>& points, const StackyFan& fan) {
      std::set<IntVec> out;
      for (const auto& p : points) {
        IntVec ord;
        for (int i = 0; i < spec.m(); ++i) ord.push_back(Rational(dot(to_qvec(p), fan.rays[i]) + Rational(spec.a[i])).get_num());
        out.insert(ord);
      }
      return out;
    };
    rep.filter_matches_direct = orders(rep.filter.survivors, base_fan) == orders(direct, xt_fan);
    return 0;
  });

  IntVec de = rep.hat.characters[rep.hat.e_index()];
  rep.wall = stage("wall_chart", [&] { return wall_chart(spaces.tbar, spaces.ttilde, de); });
  rep.blowup_wall = stage("wall_chart", [&] { return wall_chart(rep.hat.unblown(), xt, de); });
  rep.conditions = stage("conditions", [&] { return check_conditions(spaces.t, spaces.tbar); });

  rep.flags.push_back("indices are 0-based; labels are 1-based");
  rep.flags.push_back("age = sum of fractional parts of D_i.nu; degree shift = 2 age");
  rep.flags.push_back("sectors keyed by nu modulo the character lattice");
  rep.flags.push_back("wall basis: p-_{r+1} = D_e");
  rep.flags.push_back("center permutation recorded, indices not reordered");
  if (spec.weighted()) rep.flags.push_back("weighted blow-up: experimental");
  if (rep.hat.epsilon_from_user) rep.flags.push_back("epsilon supplied by user");
  if (!rep.conditions.frac_sectors_vanish) rep.flags.push_back("paper inconsistency: u_f H nonzero on a frac sector");
  return rep;
}

}  // namespace extrans
