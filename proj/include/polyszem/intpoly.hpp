#pragma once

#include <string>
#include <vector>

#include "polyszem/bigint.hpp"

namespace polyszem {

/// Dense integer polynomial: coeffs[k] multiplies x^k.  The zero polynomial
/// is the empty vector; otherwise the trailing coefficient is nonzero.
/// Coefficients are exact unbounded integers because iterated differencing
/// compounds binomial factors beyond 64 bits.
using IntPoly = std::vector<BigInt>;

void normalize(IntPoly& p);
int degree(const IntPoly& p);  // -1 for the zero polynomial
bool is_zero(const IntPoly& p);
BigInt coeff(const IntPoly& p, int k);

IntPoly ip_add(const IntPoly& a, const IntPoly& b);
IntPoly ip_sub(const IntPoly& a, const IntPoly& b);
IntPoly ip_neg(const IntPoly& a);
IntPoly ip_scale(const IntPoly& a, const BigInt& k);
IntPoly ip_shift_var(const IntPoly& a, int e);  // multiply by x^e

/// Exact evaluation.
BigInt ip_eval(const IntPoly& p, long long x);

/// Exact evaluation narrowed to 64 bits; throws std::overflow_error when the
/// value leaves the representable range.
long long ip_eval_ll(const IntPoly& p, long long x);

/// Horner evaluation mod m (m >= 1); result in [0, m).
long long ip_eval_mod(const IntPoly& p, long long x, long long m);

/// p(a*x + b), computed exactly.
IntPoly ip_compose_affine(const IntPoly& p, long long a, long long b);

/// Parses sums of terms like "n^2", "-3n", "2n^3+n-1".
IntPoly parse_intpoly(const std::string& text, char var = 'n');
std::string to_string(const IntPoly& p, char var = 'n');

}  // namespace polyszem
