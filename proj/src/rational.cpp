#include "extrans/rational.hpp"

#include <cctype>

#include "extrans/error.hpp"

namespace extrans {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::EmptyGeneratorSet: return "EmptyGeneratorSet";
    case ErrorCode::NotFiniteIndex: return "NotFiniteIndex";
    case ErrorCode::DimensionLimit: return "DimensionLimit";
    case ErrorCode::NotUpwardClosed: return "NotUpwardClosed";
    case ErrorCode::ExtendedVectorOutsideSupport: return "ExtendedVectorOutsideSupport";
    case ErrorCode::NonSimplicial: return "NonSimplicial";
    case ErrorCode::NotPureFullDimensional: return "NotPureFullDimensional";
    case ErrorCode::BijectionFailure: return "BijectionFailure";
    case ErrorCode::NonvanishingAboveCap: return "NonvanishingAboveCap";
    case ErrorCode::CenterNotCone: return "CenterNotCone";
    case ErrorCode::CenterMeetsExtendedSet: return "CenterMeetsExtendedSet";
    case ErrorCode::OmegaOnWall: return "OmegaOnWall";
    case ErrorCode::ChamberChanged: return "ChamberChanged";
    case ErrorCode::InconsistentOnSharedFace: return "InconsistentOnSharedFace";
    case ErrorCode::UnboundedPolytope: return "UnboundedPolytope";
    case ErrorCode::NoCommonWall: return "NoCommonWall";
    case ErrorCode::ValidationFailed: return "ValidationFailed";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::UnknownPreset: return "UnknownPreset";
  }
  return "Unknown";
}

namespace {

bool parse_integer(std::string_view s, Integer& out) {
  if (s.empty()) return false;
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (start == s.size()) return false;
  for (std::size_t i = start; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  std::string digits(s[0] == '+' ? s.substr(1) : s);
  return out.set_str(digits, 10) == 0;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  Integer num, den = 1;
  bool ok = slash == std::string_view::npos
                ? parse_integer(text, num)
                : parse_integer(text.substr(0, slash), num) &&
                      parse_integer(text.substr(slash + 1), den);
  if (!ok) throw Error(ErrorCode::SchemaError, "malformed rational '" + std::string(text) + "'");
  if (den == 0) throw Error(ErrorCode::SchemaError, "zero denominator in '" + std::string(text) + "'");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }
std::string to_string(const Integer& z) { return z.get_str(); }

std::string to_string(const QVec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].get_str();
  }
  return s + ")";
}

Integer floor(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer ceil(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Rational frac(const Rational& q) { return q - Rational(floor(q)); }

bool is_integral(const Rational& q) { return q.get_den() == 1; }

bool is_integral(const QVec& v) {
  for (const auto& x : v)
    if (!is_integral(x)) return false;
  return true;
}

QVec to_qvec(const IntVec& v) { return QVec(v.begin(), v.end()); }

QVec to_qvec(const std::vector<long>& v) {
  QVec out;
  out.reserve(v.size());
  for (long x : v) out.emplace_back(x);
  return out;
}

IntVec to_intvec(const QVec& v) {
  IntVec out;
  out.reserve(v.size());
  for (const auto& x : v) {
    if (!is_integral(x)) throw Error(ErrorCode::InvalidArgument, "non-integral entry " + x.get_str());
    out.push_back(x.get_num());
  }
  return out;
}

Rational dot(const QVec& a, const QVec& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::InvalidArgument, "dot: length mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

bool is_zero(const QVec& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

IntVec primitive(const QVec& v) {
  Integer l = 1;
  for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  IntVec out;
  out.reserve(v.size());
  Integer g = 0;
  for (const auto& x : v) {
    Integer z = x.get_num() * (l / x.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.get_mpz_t());
    out.push_back(z);
  }
  if (g > 1)
    for (auto& z : out) z /= g;
  return out;
}

QVec primitive_q(const QVec& v) { return to_qvec(primitive(v)); }

QVec operator+(const QVec& a, const QVec& b) {
  QVec r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

QVec operator-(const QVec& a, const QVec& b) {
  QVec r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

QVec operator*(const Rational& s, const QVec& v) {
  QVec r(v);
  for (auto& x : r) x *= s;
  return r;
}

QVec operator-(const QVec& v) {
  QVec r(v);
  for (auto& x : r) x = -x;
  return r;
}

}  // namespace extrans
