#include "polyszem/bigint.hpp"

#include <algorithm>
#include <stdexcept>

namespace polyszem {

namespace {
constexpr std::uint64_t kBase = 1ULL << 32;
}

BigInt::BigInt(long long v) {
  if (v == 0) return;
  sign_ = v < 0 ? -1 : 1;
  // negate via unsigned arithmetic so LLONG_MIN stays defined behavior
  std::uint64_t u = v < 0 ? 0ULL - static_cast<std::uint64_t>(v) : static_cast<std::uint64_t>(v);
  while (u) {
    mag_.push_back(static_cast<std::uint32_t>(u & 0xffffffffULL));
    u >>= 32;
  }
}

BigInt BigInt::make(int sign, std::vector<std::uint32_t> mag) {
  while (!mag.empty() && mag.back() == 0) mag.pop_back();
  BigInt r;
  r.sign_ = mag.empty() ? 0 : sign;
  r.mag_ = std::move(mag);
  return r;
}

int BigInt::cmp_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (size_t i = a.size(); i-- > 0;)
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  return 0;
}

std::vector<std::uint32_t> BigInt::add_mag(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) {
  std::vector<std::uint32_t> r(std::max(a.size(), b.size()) + 1, 0);
  std::uint64_t carry = 0;
  for (size_t i = 0; i < r.size(); ++i) {
    std::uint64_t s = carry;
    if (i < a.size()) s += a[i];
    if (i < b.size()) s += b[i];
    r[i] = static_cast<std::uint32_t>(s & 0xffffffffULL);
    carry = s >> 32;
  }
  return r;
}

std::vector<std::uint32_t> BigInt::sub_mag(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) {
  std::vector<std::uint32_t> r(a.size(), 0);
  std::int64_t borrow = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    std::int64_t s = static_cast<std::int64_t>(a[i]) - borrow - (i < b.size() ? b[i] : 0);
    borrow = 0;
    if (s < 0) {
      s += static_cast<std::int64_t>(kBase);
      borrow = 1;
    }
    r[i] = static_cast<std::uint32_t>(s);
  }
  return r;
}

BigInt operator+(const BigInt& a, const BigInt& b) {
  if (a.sign_ == 0) return b;
  if (b.sign_ == 0) return a;
  if (a.sign_ == b.sign_) return BigInt::make(a.sign_, BigInt::add_mag(a.mag_, b.mag_));
  int c = BigInt::cmp_mag(a.mag_, b.mag_);
  if (c == 0) return {};
  return c > 0 ? BigInt::make(a.sign_, BigInt::sub_mag(a.mag_, b.mag_))
               : BigInt::make(b.sign_, BigInt::sub_mag(b.mag_, a.mag_));
}

BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }

BigInt BigInt::operator-() const {
  BigInt r = *this;
  r.sign_ = -r.sign_;
  return r;
}

BigInt operator*(const BigInt& a, const BigInt& b) {
  if (a.sign_ == 0 || b.sign_ == 0) return {};
  std::vector<std::uint32_t> r(a.mag_.size() + b.mag_.size(), 0);
  for (size_t i = 0; i < a.mag_.size(); ++i) {
    std::uint64_t carry = 0;
    for (size_t j = 0; j < b.mag_.size(); ++j) {
      std::uint64_t cur = static_cast<std::uint64_t>(a.mag_[i]) * b.mag_[j] + r[i + j] + carry;
      r[i + j] = static_cast<std::uint32_t>(cur & 0xffffffffULL);
      carry = cur >> 32;
    }
    size_t k = i + b.mag_.size();
    while (carry) {
      std::uint64_t cur = r[k] + carry;
      r[k] = static_cast<std::uint32_t>(cur & 0xffffffffULL);
      carry = cur >> 32;
      ++k;
    }
  }
  return BigInt::make(a.sign_ * b.sign_, std::move(r));
}

bool operator<(const BigInt& a, const BigInt& b) {
  if (a.sign_ != b.sign_) return a.sign_ < b.sign_;
  int c = BigInt::cmp_mag(a.mag_, b.mag_);
  return a.sign_ >= 0 ? c < 0 : c > 0;
}

bool BigInt::fits_ll() const {
  if (mag_.size() > 2) return false;
  std::uint64_t u = 0;
  for (size_t i = mag_.size(); i-- > 0;) u = (u << 32) | mag_[i];
  if (sign_ >= 0) return u <= 0x7fffffffffffffffULL;
  return u <= 0x8000000000000000ULL;
}

long long BigInt::to_ll() const {
  if (!fits_ll()) throw std::overflow_error("integer too large for a 64-bit result");
  std::uint64_t u = 0;
  for (size_t i = mag_.size(); i-- > 0;) u = (u << 32) | mag_[i];
  return sign_ >= 0 ? static_cast<long long>(u) : -static_cast<long long>(u - 1) - 1;
}

long long BigInt::mod_ll(long long m) const {
  if (m <= 0) throw std::invalid_argument("modulus must be positive");
  std::uint64_t um = static_cast<std::uint64_t>(m);
  std::uint64_t r = 0;
  for (size_t i = mag_.size(); i-- > 0;) {
    unsigned __int128 cur = (static_cast<unsigned __int128>(r) << 32) | mag_[i];
    r = static_cast<std::uint64_t>(cur % um);
  }
  long long rr = static_cast<long long>(r);
  if (sign_ < 0 && rr != 0) rr = m - rr;
  return rr;
}

BigInt BigInt::from_string(std::string_view s) {
  size_t i = 0;
  int sign = 1;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) sign = s[i++] == '-' ? -1 : 1;
  if (i >= s.size()) throw std::invalid_argument("empty integer literal");
  BigInt r;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("bad digit in integer literal");
    r = r * BigInt(10) + BigInt(s[i] - '0');
  }
  if (sign < 0) r = -r;
  return r;
}

std::string BigInt::to_string() const {
  if (sign_ == 0) return "0";
  std::vector<std::uint32_t> work = mag_;
  std::string digits;
  while (!work.empty()) {
    // divide by 10^9, collecting the remainder as nine decimal digits
    std::uint64_t rem = 0;
    for (size_t i = work.size(); i-- > 0;) {
      std::uint64_t cur = (rem << 32) | work[i];
      work[i] = static_cast<std::uint32_t>(cur / 1000000000ULL);
      rem = cur % 1000000000ULL;
    }
    while (!work.empty() && work.back() == 0) work.pop_back();
    for (int k = 0; k < 9; ++k) {
      digits.push_back(static_cast<char>('0' + rem % 10));
      rem /= 10;
    }
  }
  while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
  if (sign_ < 0) digits.push_back('-');
  std::reverse(digits.begin(), digits.end());
  return digits;
}

}  // namespace polyszem
