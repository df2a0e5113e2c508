#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace polyszem {

/// Exact signed integer of unbounded size.  Iterated formal differencing
/// multiplies polynomial coefficients by compounding binomial factors, which
/// leaves the 64-bit range on degree-8 reductions, so coefficient arithmetic
/// must not saturate or wrap.  Sign-magnitude with base-2^32 limbs; only the
/// operations the polynomial layer needs (no division beyond what printing
/// and modular evaluation require).
class BigInt {
 public:
  BigInt() = default;
  BigInt(long long v);  // NOLINT(google-explicit-constructor): numeric literal convenience

  static BigInt from_string(std::string_view s);
  std::string to_string() const;

  bool is_zero() const { return sign_ == 0; }
  int sign() const { return sign_; }
  bool fits_ll() const;
  long long to_ll() const;              // throws std::overflow_error when out of range
  long long mod_ll(long long m) const;  // mathematical residue in [0, m); m >= 1

  friend BigInt operator+(const BigInt& a, const BigInt& b);
  friend BigInt operator-(const BigInt& a, const BigInt& b);
  friend BigInt operator*(const BigInt& a, const BigInt& b);
  BigInt operator-() const;
  BigInt& operator+=(const BigInt& b) { return *this = *this + b; }
  BigInt& operator-=(const BigInt& b) { return *this = *this - b; }
  BigInt& operator*=(const BigInt& b) { return *this = *this * b; }

  friend bool operator==(const BigInt& a, const BigInt& b) {
    return a.sign_ == b.sign_ && a.mag_ == b.mag_;
  }
  friend bool operator<(const BigInt& a, const BigInt& b);
  friend bool operator>(const BigInt& a, const BigInt& b) { return b < a; }
  friend bool operator<=(const BigInt& a, const BigInt& b) { return !(b < a); }
  friend bool operator>=(const BigInt& a, const BigInt& b) { return !(a < b); }
  friend bool operator!=(const BigInt& a, const BigInt& b) { return !(a == b); }

 private:
  int sign_ = 0;                    // -1, 0, +1
  std::vector<std::uint32_t> mag_;  // little-endian limbs, no trailing zeros, empty iff zero

  static int cmp_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b);
  static std::vector<std::uint32_t> add_mag(const std::vector<std::uint32_t>& a,
                                            const std::vector<std::uint32_t>& b);
  static std::vector<std::uint32_t> sub_mag(const std::vector<std::uint32_t>& a,
                                            const std::vector<std::uint32_t>& b);  // needs a >= b
  static BigInt make(int sign, std::vector<std::uint32_t> mag);
};

}  // namespace polyszem
