#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace extrans {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVec = std::vector<Integer>;
using QVec = std::vector<Rational>;

/// Parses "p", "-p" or "p/q". Throws Error(SchemaError) on malformed input
/// or a zero denominator.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);
std::string to_string(const Integer& z);
std::string to_string(const QVec& v);

Integer floor(const Rational& q);
Integer ceil(const Rational& q);
/// Fractional part in [0, 1).
Rational frac(const Rational& q);
bool is_integral(const Rational& q);
bool is_integral(const QVec& v);

QVec to_qvec(const IntVec& v);
IntVec to_intvec(const QVec& v);  // requires integral entries
QVec to_qvec(const std::vector<long>& v);

Rational dot(const QVec& a, const QVec& b);
bool is_zero(const QVec& v);

/// Smallest positive multiple of v with coprime integer entries. Zero stays zero.
IntVec primitive(const QVec& v);
QVec primitive_q(const QVec& v);

QVec operator+(const QVec& a, const QVec& b);
QVec operator-(const QVec& a, const QVec& b);
QVec operator*(const Rational& s, const QVec& v);
QVec operator-(const QVec& v);

}  // namespace extrans
