#include "extrans/poly.hpp"

#include <numeric>

#include "extrans/error.hpp"

namespace extrans {

namespace {

void add_term(Poly& p, const Monomial& mono, const Rational& c) {
  if (c == 0) return;
  auto it = p.find(mono);
  if (it == p.end()) {
    p.emplace(mono, c);
    return;
  }
  it->second += c;
  if (it->second == 0) p.erase(it);
}

}  // namespace

Poly poly_variable(int nvars, int i) {
  Monomial mono(nvars, 0);
  mono.at(i) = 1;
  return Poly{{mono, 1}};
}

Poly poly_constant(int nvars, const Rational& c) {
  if (c == 0) return {};
  return Poly{{Monomial(nvars, 0), c}};
}

Poly poly_monomial(const Monomial& mono) { return Poly{{mono, 1}}; }

Poly operator+(const Poly& a, const Poly& b) {
  Poly r = a;
  for (const auto& [mono, c] : b) add_term(r, mono, c);
  return r;
}

Poly operator-(const Poly& a, const Poly& b) {
  Poly r = a;
  for (const auto& [mono, c] : b) add_term(r, mono, -c);
  return r;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly r;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) {
      Monomial mono(ma.size());
      for (std::size_t i = 0; i < ma.size(); ++i) mono[i] = ma[i] + mb[i];
      add_term(r, mono, ca * cb);
    }
  return r;
}

Poly operator*(const Rational& s, const Poly& a) {
  if (s == 0) return {};
  Poly r = a;
  for (auto& [mono, c] : r) c *= s;
  return r;
}

Poly poly_pow(const Poly& a, int k) {
  if (a.empty()) return k == 0 ? poly_constant(0, 1) : Poly{};
  Poly r = poly_constant(static_cast<int>(a.begin()->first.size()), 1);
  for (int i = 0; i < k; ++i) r = r * a;
  return r;
}

Poly substitute(const Poly& p, const std::vector<Poly>& images, int target_vars) {
  Poly r;
  for (const auto& [mono, c] : p) {
    Poly term = poly_constant(target_vars, c);
    for (std::size_t i = 0; i < mono.size() && !term.empty(); ++i)
      for (int e = 0; e < mono[i]; ++e) term = term * images[i];
    r = r + term;
  }
  return r;
}

int monomial_degree(const Monomial& mono) { return std::accumulate(mono.begin(), mono.end(), 0); }

int homogeneous_degree(const Poly& p) {
  int d = -1;
  for (const auto& [mono, c] : p) {
    int e = monomial_degree(mono);
    if (d >= 0 && e != d) throw Error(ErrorCode::InvalidArgument, "polynomial is not homogeneous");
    d = e;
  }
  return d;
}

std::string to_string(const Poly& p, const std::vector<std::string>& names) {
  if (p.empty()) return "0";
  std::string out;
  // larger monomials first
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    const auto& [mono, c] = *it;
    Rational a = abs(c);
    bool constant = monomial_degree(mono) == 0;
    if (out.empty())
      out += c < 0 ? "-" : "";
    else
      out += c < 0 ? " - " : " + ";
    if (a != 1 || constant) out += a.get_str() + (constant ? "" : "*");
    bool first = true;
    for (std::size_t i = 0; i < mono.size(); ++i) {
      if (mono[i] == 0) continue;
      if (!first) out += "*";
      out += names.at(i);
      if (mono[i] > 1) out += "^" + std::to_string(mono[i]);
      first = false;
    }
  }
  return out;
}

}  // namespace extrans
