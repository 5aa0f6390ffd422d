#pragma once

#include <map>
#include <string>
#include <vector>

#include "extrans/rational.hpp"

namespace extrans {

using Monomial = std::vector<int>;  // exponent per variable
using Poly = std::map<Monomial, Rational>;

Poly poly_variable(int nvars, int i);
Poly poly_constant(int nvars, const Rational& c);
Poly poly_monomial(const Monomial& mono);
Poly operator+(const Poly& a, const Poly& b);
Poly operator-(const Poly& a, const Poly& b);
Poly operator*(const Poly& a, const Poly& b);
Poly operator*(const Rational& s, const Poly& a);
Poly poly_pow(const Poly& a, int k);
/// Substitute var i -> images[i].
Poly substitute(const Poly& p, const std::vector<Poly>& images, int target_vars);
int monomial_degree(const Monomial& mono);
/// -1 for the zero polynomial; throws InvalidArgument if not homogeneous.
int homogeneous_degree(const Poly& p);
std::string to_string(const Poly& p, const std::vector<std::string>& names);

}  // namespace extrans
