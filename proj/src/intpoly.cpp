#include "polyszem/intpoly.hpp"

#include <cctype>
#include <stdexcept>

namespace polyszem {

void normalize(IntPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

int degree(const IntPoly& p) { return static_cast<int>(p.size()) - 1; }

bool is_zero(const IntPoly& p) { return p.empty(); }

BigInt coeff(const IntPoly& p, int k) {
  return (k >= 0 && k < static_cast<int>(p.size())) ? p[k] : BigInt();
}

IntPoly ip_add(const IntPoly& a, const IntPoly& b) {
  IntPoly r(std::max(a.size(), b.size()));
  for (size_t i = 0; i < r.size(); ++i)
    r[i] = coeff(a, static_cast<int>(i)) + coeff(b, static_cast<int>(i));
  normalize(r);
  return r;
}

IntPoly ip_sub(const IntPoly& a, const IntPoly& b) { return ip_add(a, ip_neg(b)); }

IntPoly ip_neg(const IntPoly& a) {
  IntPoly r = a;
  for (auto& c : r) c = -c;
  return r;
}

IntPoly ip_scale(const IntPoly& a, const BigInt& k) {
  if (k.is_zero()) return {};
  IntPoly r = a;
  for (auto& c : r) c *= k;
  return r;
}

IntPoly ip_shift_var(const IntPoly& a, int e) {
  if (a.empty()) return {};
  IntPoly r(a.size() + e);
  for (size_t i = 0; i < a.size(); ++i) r[i + e] = a[i];
  return r;
}

BigInt ip_eval(const IntPoly& p, long long x) {
  BigInt acc;
  BigInt bx(x);
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * bx + *it;
  return acc;
}

long long ip_eval_ll(const IntPoly& p, long long x) { return ip_eval(p, x).to_ll(); }

long long ip_eval_mod(const IntPoly& p, long long x, long long m) {
  if (m < 1) throw std::invalid_argument("modulus must be positive");
  std::uint64_t um = static_cast<std::uint64_t>(m);
  std::uint64_t xm = static_cast<std::uint64_t>(((x % m) + m) % m);
  std::uint64_t acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    unsigned __int128 cur = static_cast<unsigned __int128>(acc) * xm +
                            static_cast<std::uint64_t>(it->mod_ll(m));
    acc = static_cast<std::uint64_t>(cur % um);
  }
  return static_cast<long long>(acc);
}

IntPoly ip_compose_affine(const IntPoly& p, long long a, long long b) {
  // Horner in the substituted variable: r <- r * (a x + b) + c_k.
  IntPoly r;
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    IntPoly next = ip_add(ip_scale(ip_shift_var(r, 1), BigInt(a)), ip_scale(r, BigInt(b)));
    r = ip_add(next, IntPoly{*it});
  }
  return r;
}

namespace {

[[noreturn]] void parse_fail(const std::string& text) {
  throw std::invalid_argument("cannot parse polynomial: '" + text + "'");
}

}  // namespace

IntPoly parse_intpoly(const std::string& text, char var) {
  IntPoly acc;
  size_t i = 0;
  auto skip_ws = [&] { while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
  skip_ws();
  if (i == text.size()) parse_fail(text);
  bool first = true;
  while (i < text.size()) {
    bool negative = false;
    skip_ws();
    if (text[i] == '+' || text[i] == '-') {
      negative = text[i] == '-';
      ++i;
    } else if (!first) {
      parse_fail(text);
    }
    skip_ws();
    bool saw_digits = false;
    BigInt mag;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      mag = mag * BigInt(10) + BigInt(text[i] - '0');
      saw_digits = true;
      ++i;
    }
    skip_ws();
    int power = 0;
    if (i < text.size() && text[i] == var) {
      ++i;
      power = 1;
      if (i < text.size() && text[i] == '^') {
        ++i;
        if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i]))) parse_fail(text);
        power = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
          power = power * 10 + (text[i++] - '0');
      }
    } else if (!saw_digits) {
      parse_fail(text);
    }
    BigInt c = saw_digits ? mag : BigInt(1);
    if (negative) c = -c;
    IntPoly term(power + 1);
    term[power] = c;
    acc = ip_add(acc, term);
    first = false;
    skip_ws();
  }
  return acc;
}

std::string to_string(const IntPoly& p, char var) {
  if (p.empty()) return "0";
  std::string out;
  for (int k = degree(p); k >= 0; --k) {
    const BigInt& c = p[k];
    if (c.is_zero()) continue;
    bool neg = c.sign() < 0;
    if (!out.empty()) out += neg ? "-" : "+";
    else if (neg) out += "-";
    BigInt mag = neg ? -c : c;
    if (mag != BigInt(1) || k == 0) out += mag.to_string();
    if (k >= 1) {
      out += var;
      if (k > 1) out += "^" + std::to_string(k);
    }
  }
  return out.empty() ? "0" : out;
}

}  // namespace polyszem
