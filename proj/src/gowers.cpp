#include "polyszem/gowers.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "polyszem/errors.hpp"

namespace polyszem::gowers {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<cd> padded(const ArithSequence& a) {
  a.validate();
  if (!a.modulus) throw std::invalid_argument("sequence has no modulus");
  std::vector<cd> x(static_cast<size_t>(*a.modulus), cd{0.0, 0.0});
  for (size_t t = 0; t < a.values.size(); ++t) x[t] = a.values[t];
  return x;
}

void fft_pow2(std::vector<cd>& a, bool invert) {
  size_t n = a.size();
  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (size_t len = 2; len <= n; len <<= 1) {
    double ang = 2.0 * kPi / static_cast<double>(len) * (invert ? 1.0 : -1.0);
    cd wl{std::cos(ang), std::sin(ang)};
    for (size_t i = 0; i < n; i += len) {
      cd w{1.0, 0.0};
      for (size_t k = 0; k < len / 2; ++k) {
        cd u = a[i + k], v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wl;
      }
    }
  }
  if (invert)
    for (auto& z : a) z /= static_cast<double>(n);
}

// X_k = sum_n x_n e(-2 pi i n k / M) for arbitrary M via the chirp trick.
std::vector<cd> dft(const std::vector<cd>& x) {
  size_t M = x.size();
  if (M == 0) return {};
  size_t L = 1;
  while (L < 2 * M - 1) L <<= 1;
  // chirp phases use n^2 mod 2M so the angles stay exact for large n
  std::vector<cd> chirp(M);
  for (size_t n = 0; n < M; ++n) {
    long long q = static_cast<long long>(n) * static_cast<long long>(n) %
                  (2 * static_cast<long long>(M));
    double ang = -kPi * static_cast<double>(q) / static_cast<double>(M);
    chirp[n] = cd{std::cos(ang), std::sin(ang)};
  }
  std::vector<cd> a(L, cd{0, 0}), b(L, cd{0, 0});
  for (size_t n = 0; n < M; ++n) a[n] = x[n] * chirp[n];
  b[0] = cd{1, 0};
  for (size_t n = 1; n < M; ++n) {
    cd c = std::conj(chirp[n]);
    b[n] = c;
    b[L - n] = c;
  }
  fft_pow2(a, false);
  fft_pow2(b, false);
  for (size_t i = 0; i < L; ++i) a[i] *= b[i];
  fft_pow2(a, true);
  std::vector<cd> out(M);
  for (size_t k = 0; k < M; ++k) out[k] = a[k] * chirp[k];
  return out;
}

double u1(const std::vector<cd>& x) {
  cd s{0, 0};
  for (const cd& v : x) s += v;
  return std::abs(s) / static_cast<double>(x.size());
}

double u2_fourier(const std::vector<cd>& x) {
  std::vector<cd> spec = dft(x);
  double inv = 1.0 / static_cast<double>(x.size());
  double acc = 0.0;
  for (const cd& z : spec) {
    double m2 = std::norm(z * inv);
    acc += m2 * m2;
  }
  return std::pow(acc, 0.25);
}

// U_d via the recursion over multiplicative derivatives; fast = true routes
// d = 2 through the Fourier identity.
double u_rec(const std::vector<cd>& x, int d, bool fast) {
  if (d == 1) return u1(x);
  if (d == 2 && fast) return u2_fourier(x);
  size_t M = x.size();
  double acc = 0.0;
  std::vector<cd> deriv(M);
  double p = static_cast<double>(1LL << (d - 1));
  for (size_t h = 0; h < M; ++h) {
    for (size_t t = 0; t < M; ++t) deriv[t] = x[(t + h) % M] * std::conj(x[t]);
    acc += std::pow(u_rec(deriv, d - 1, fast), p);
  }
  acc /= static_cast<double>(M);
  return std::pow(acc, 1.0 / (2.0 * p));
}

double norm_impl(const ArithSequence& a, int d, bool fast) {
  if (d < 1) throw std::invalid_argument("box norm degree must be at least 1");
  std::vector<cd> x = padded(a);
  double cost = std::pow(static_cast<double>(x.size()), d - 1);
  if (cost > 4e9) throw CostGuardError("box norm recursion too large for exact mode");
  return u_rec(x, d, fast);
}

}  // namespace

void ArithSequence::validate() const {
  if (modulus && *modulus < n())
    throw std::invalid_argument("modulus is smaller than the sequence length");
}

ArithSequence embed(const ArithSequence& a, int d) {
  a.validate();
  if (d < 1) throw std::invalid_argument("embed degree must be at least 1");
  long long M = d * a.n();
  ArithSequence out;
  out.values.assign(static_cast<size_t>(M), cd{0, 0});
  for (size_t t = 0; t < a.values.size(); ++t) out.values[t] = a.values[t];
  out.modulus = M;
  return out;
}

double gowers_norm(const ArithSequence& a, int d) { return norm_impl(a, d, true); }

double gowers_norm_recursive(const ArithSequence& a, int d) { return norm_impl(a, d, false); }

double brute_gowers(const ArithSequence& a, int d) {
  if (d < 1 || d > 3) throw std::invalid_argument("cube average implemented for d in 1..3");
  std::vector<cd> x = padded(a);
  long long M = static_cast<long long>(x.size());
  if (d == 3 && M > 256) throw CostGuardError("cube average for d = 3 capped at modulus 256");
  if (d == 2 && M > 8192) throw CostGuardError("cube average for d = 2 capped at modulus 8192");
  auto at = [&](long long i) { return x[static_cast<size_t>(i % M)]; };
  if (d == 1) {
    cd s{0, 0};
    for (long long n = 0; n < M; ++n) s += at(n);
    double v = std::abs(s) / static_cast<double>(M);
    return v;
  }
  if (d == 2) {
    double acc = 0.0;
    for (long long h = 0; h < M; ++h) {
      cd s{0, 0};
      for (long long n = 0; n < M; ++n) s += at(n) * std::conj(at(n + h));
      acc += std::norm(s / static_cast<double>(M));
    }
    return std::pow(acc / static_cast<double>(M), 0.25);
  }
  double acc = 0.0;
  for (long long h1 = 0; h1 < M; ++h1) {
    for (long long h2 = 0; h2 < M; ++h2) {
      cd s{0, 0};
      for (long long n = 0; n < M; ++n)
        s += at(n) * std::conj(at(n + h1)) * std::conj(at(n + h2)) * at(n + h1 + h2);
      acc += std::norm(s / static_cast<double>(M));
    }
  }
  return std::pow(acc / static_cast<double>(M * M), 0.125);
}

std::vector<double> u2_shift_table(const ArithSequence& a) {
  std::vector<cd> x = padded(a);
  long long M = static_cast<long long>(x.size());
  if (M > 8192) throw CostGuardError("shift table capped at modulus 8192");
  std::vector<double> out(static_cast<size_t>(M));
  for (long long h = 0; h < M; ++h) {
    cd s{0, 0};
    for (long long n = 0; n < M; ++n) s += x[(n + h) % M] * std::conj(x[n]);
    out[h] = std::abs(s) / static_cast<double>(M);
  }
  return out;
}

void VectorSequence::validate() const {
  if (dim < 1) throw std::invalid_argument("vector dimension must be positive");
  for (const auto& v : vectors)
    if (static_cast<int>(v.size()) != dim)
      throw std::invalid_argument("vector entry has the wrong dimension");
}

VdcBound vdc_inequality(const VectorSequence& v) {
  v.validate();
  long long N = v.n();
  if (N < 1) throw std::invalid_argument("empty vector sequence");
  double dN = static_cast<double>(N);
  std::vector<cd> mean(v.dim, cd{0, 0});
  double sq = 0.0;
  for (const auto& vec : v.vectors) {
    for (int k = 0; k < v.dim; ++k) mean[k] += vec[k];
    double s = 0.0;
    for (const cd& z : vec) s += std::norm(z);
    sq += s;
  }
  double lhs = 0.0;
  for (const cd& z : mean) lhs += std::norm(z / dN);
  double corr = 0.0;
  for (long long h = 1; h <= N; ++h) {
    cd inner{0, 0};
    for (long long n = 1; n + h <= N; ++n) {
      const auto& u = v.vectors[static_cast<size_t>(n + h - 1)];
      const auto& w = v.vectors[static_cast<size_t>(n - 1)];
      for (int k = 0; k < v.dim; ++k) inner += u[k] * std::conj(w[k]);
    }
    corr += std::abs(inner / dN);
  }
  double rhs = sq / (dN * dN) + corr / dN;
  return {lhs, rhs};
}

IdentityCheck example_identity_check(const ArithSequence& a) {
  a.validate();
  long long N = a.n();
  if (N < 1) throw std::invalid_argument("empty sequence");
  std::vector<cd> x = padded(embed(a, 3));
  long long M = 3 * N;
  auto cyc = [&](long long i) { return x[static_cast<size_t>(i % M)]; };
  double restricted = 0.0, truncated = 0.0;
  for (long long h1 = 1; h1 <= N; ++h1) {
    for (long long h2 = 1; h2 <= N; ++h2) {
      cd s{0, 0};
      for (long long n = 0; n < M; ++n)
        s += cyc(n) * std::conj(cyc(n + h1)) * std::conj(cyc(n + h2)) * cyc(n + h1 + h2);
      restricted += std::norm(s / static_cast<double>(M));
      cd t{0, 0};
      for (long long n = 1; n <= N - h1 - h2; ++n)
        t += a.values[n - 1] * std::conj(a.values[n + h1 - 1]) * std::conj(a.values[n + h2 - 1]) *
             a.values[n + h1 + h2 - 1];
      truncated += std::norm(t / static_cast<double>(N));
    }
  }
  double dN = static_cast<double>(N);
  return {restricted / (9.0 * dN * dN), truncated / (81.0 * dN * dN)};
}

}  // namespace polyszem::gowers
