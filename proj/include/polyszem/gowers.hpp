#pragma once

#include <complex>
#include <optional>
#include <utility>
#include <vector>

#include "polyszem/errors.hpp"

namespace polyszem::gowers {

using cd = std::complex<double>;

/// Finite complex sequence indexed 1..N.  When modulus M (>= N) is set, the
/// sequence lives on Z_M identified with {1..M}; positions N+1..M read as 0.
struct ArithSequence {
  std::vector<cd> values;            // values[t] = a(t+1)
  std::optional<long long> modulus;

  long long n() const { return static_cast<long long>(values.size()); }
  void validate() const;  // throws std::invalid_argument

  bool operator==(const ArithSequence&) const = default;
};

/// Zero-padding embed of [1,N] into Z_{dN}: cube sums over the padded
/// sequence see no wraparound from shifts bounded by N.
ArithSequence embed(const ArithSequence& a, int d);

/// Box-norm recursion: U_1 is |mean|, U_{d+1} averages U_d of the
/// multiplicative derivative over all shifts.  d = 2 goes through the
/// Fourier fourth-moment identity; requires the modulus to be set.
double gowers_norm(const ArithSequence& a, int d);

/// Same recursion without the d = 2 Fourier shortcut; reference path.
double gowers_norm_recursive(const ArithSequence& a, int d);

/// Direct cube average (d <= 3).  Cost guard: M <= 256 for d = 3,
/// M <= 8192 for d = 2.
double brute_gowers(const ArithSequence& a, int d);

/// Per-shift inner averages |E_n a(n+h) conj a(n)|, h = 0..M-1 (plot data).
std::vector<double> u2_shift_table(const ArithSequence& a);

struct VectorSequence {
  int dim = 0;
  std::vector<std::vector<cd>> vectors;  // vectors[t] = v(t+1), each of size dim

  long long n() const { return static_cast<long long>(vectors.size()); }
  void validate() const;
};

struct VdcBound {
  double lhs;  // squared norm of the full average
  double rhs;  // diagonal term plus averaged shifted correlations
};

/// Shipped constant for lhs <= C * rhs; the campaign tests treat any
/// violation as a bug.
inline constexpr double kVdcConstant = 4.0;

/// lhs = |(1/N) sum v(n)|^2,
/// rhs = (1/N^2) sum |v(n)|^2
///     + (1/N) sum_{h=1..N} |(1/N) sum_{n<=N-h} <v(n+h), v(n)>|.
VdcBound vdc_inequality(const VectorSequence& v);

struct IdentityCheck {
  double restricted;  // cyclic cube sums of the 3N-embed, shifts kept in [1,N]
  double truncated;   // plain truncated sums on [1,N] with the 1/81 scaling
};

/// The two sides agree exactly: the embed removes circular effects, so each
/// cyclic inner sum is 1/3 of the truncated one and the 9 N^2 vs 81 N^2
/// scalings cancel.
IdentityCheck example_identity_check(const ArithSequence& a);

}  // namespace polyszem::gowers
