#include "polyszem/pet.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "polyszem/errors.hpp"
#include "polyszem/util.hpp"

namespace polyszem::pet {

ShiftPoly ShiftPoly::constant(long long c) {
  if (c == 0) return {};
  ShiftPoly p;
  p.coeffs.push_back(IntPoly{BigInt(c)});
  return p;
}

ShiftPoly ShiftPoly::h_constant(IntPoly c) {
  polyszem::normalize(c);
  if (c.empty()) return {};
  ShiftPoly p;
  p.coeffs.push_back(std::move(c));
  return p;
}

ShiftPoly ShiftPoly::from_n_coeffs(IntPoly plain) {
  ShiftPoly p;
  for (const BigInt& c : plain) p.coeffs.push_back(c.is_zero() ? IntPoly{} : IntPoly{c});
  p.normalize();
  return p;
}

int ShiftPoly::degree() const { return static_cast<int>(coeffs.size()) - 1; }

const IntPoly& ShiftPoly::leading() const {
  if (coeffs.empty()) throw std::logic_error("leading coefficient of the zero polynomial");
  return coeffs.back();
}

void ShiftPoly::normalize() {
  for (auto& c : coeffs) polyszem::normalize(c);
  while (!coeffs.empty() && coeffs.back().empty()) coeffs.pop_back();
}

ShiftPoly sp_add(const ShiftPoly& a, const ShiftPoly& b) {
  ShiftPoly r;
  size_t n = std::max(a.coeffs.size(), b.coeffs.size());
  r.coeffs.resize(n);
  for (size_t k = 0; k < n; ++k) {
    IntPoly ca = k < a.coeffs.size() ? a.coeffs[k] : IntPoly{};
    IntPoly cb = k < b.coeffs.size() ? b.coeffs[k] : IntPoly{};
    r.coeffs[k] = ip_add(ca, cb);
  }
  r.normalize();
  return r;
}

ShiftPoly sp_neg(const ShiftPoly& a) {
  ShiftPoly r = a;
  for (auto& c : r.coeffs) c = ip_neg(c);
  return r;
}

ShiftPoly sp_sub(const ShiftPoly& a, const ShiftPoly& b) { return sp_add(a, sp_neg(b)); }

ShiftPoly shift_formal(const ShiftPoly& p) {
  // p(n+h) = sum_k c_k(h) sum_{j<=k} C(k,j) n^j h^{k-j}
  ShiftPoly r;
  r.coeffs.resize(p.coeffs.size());
  for (int k = 0; k < static_cast<int>(p.coeffs.size()); ++k) {
    if (p.coeffs[k].empty()) continue;
    for (int j = 0; j <= k; ++j) {
      IntPoly term = ip_shift_var(ip_scale(p.coeffs[k], binomial(k, j)), k - j);
      r.coeffs[j] = ip_add(r.coeffs[j], term);
    }
  }
  r.normalize();
  return r;
}

ShiftPoly shift_by(const ShiftPoly& p, long long h) {
  ShiftPoly r;
  r.coeffs.resize(p.coeffs.size());
  for (int k = 0; k < static_cast<int>(p.coeffs.size()); ++k) {
    if (p.coeffs[k].empty()) continue;
    BigInt hpow(1);
    for (int j = k; j >= 0; --j) {
      // multiplier C(k,j) h^{k-j}; hpow tracks h^{k-j} as j descends
      IntPoly term = ip_scale(p.coeffs[k], BigInt(binomial(k, j)) * hpow);
      r.coeffs[j] = ip_add(r.coeffs[j], term);
      if (j > 0) hpow *= BigInt(h);
    }
  }
  r.normalize();
  return r;
}

ShiftPoly substitute_h(const ShiftPoly& p, long long h) {
  ShiftPoly r;
  for (const auto& c : p.coeffs) {
    BigInt v = ip_eval(c, h);
    r.coeffs.push_back(v.is_zero() ? IntPoly{} : IntPoly{v});
  }
  r.normalize();
  return r;
}

ShiftPoly substitute_affine(const ShiftPoly& p, long long a, long long b) {
  // Horner in n: r <- r * (a n + b) + c_k, with h-polynomial coefficients.
  ShiftPoly r;
  for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it) {
    ShiftPoly next;
    next.coeffs.resize(r.coeffs.size() + 1);
    for (size_t k = 0; k < r.coeffs.size(); ++k) {
      next.coeffs[k + 1] = ip_add(next.coeffs[k + 1], ip_scale(r.coeffs[k], a));
      next.coeffs[k] = ip_add(next.coeffs[k], ip_scale(r.coeffs[k], b));
    }
    next.coeffs.resize(std::max<size_t>(next.coeffs.size(), 1));
    next.coeffs[0] = ip_add(next.coeffs[0], *it);
    next.normalize();
    r = std::move(next);
  }
  return r;
}

bool equivalent(const ShiftPoly& p, const ShiftPoly& q) {
  bool pc = p.is_constant(), qc = q.is_constant();
  if (pc || qc) return pc && qc;
  return p.degree() == q.degree() && p.leading() == q.leading();
}

PolyFamily::PolyFamily(int ell_, int m_) : ell(ell_), m(m_) {
  entries.assign(ell, std::vector<ShiftPoly>(m));
}

void PolyFamily::validate() const {
  if (ell < 1 || m < 1) throw std::invalid_argument("family dimensions must be positive");
  if (static_cast<int>(entries.size()) != ell)
    throw std::invalid_argument("family row count does not match ell");
  for (const auto& row : entries)
    if (static_cast<int>(row.size()) != m)
      throw std::invalid_argument("family column count does not match m");
}

int PolyFamily::max_degree() const {
  int d = -1;
  for (const auto& row : entries)
    for (const auto& p : row) d = std::max(d, p.degree());
  return d;
}

std::vector<ShiftPoly> PolyFamily::column(int j) const {
  std::vector<ShiftPoly> col(ell);
  for (int i = 0; i < ell; ++i) col[i] = entries[i][j];
  return col;
}

PolyFamily substitute_h(const PolyFamily& f, long long h) {
  PolyFamily r = f;
  for (auto& row : r.entries)
    for (auto& p : row) p = substitute_h(p, h);
  return r;
}

PolyFamily substitute_affine(const PolyFamily& f, long long a, long long b) {
  PolyFamily r = f;
  for (auto& row : r.entries)
    for (auto& p : row) p = substitute_affine(p, a, b);
  return r;
}

TypeMatrix::TypeMatrix(int ell_, int s_) : ell(ell_), s(s_) {
  w.assign(ell, std::vector<int>(s, 0));
}

bool TypeMatrix::is_zero() const {
  for (const auto& row : w)
    for (int v : row)
      if (v != 0) return false;
  return true;
}

namespace {

// Smallest row index whose entry is nonconstant, or -1 for constant columns.
int column_level(const PolyFamily& f, int j) {
  for (int i = 0; i < f.ell; ++i)
    if (!f.entries[i][j].is_constant()) return i;
  return -1;
}

}  // namespace

TypeMatrix family_type(const PolyFamily& f, int s) {
  f.validate();
  if (s < 1) throw std::invalid_argument("type degree bound must be positive");
  if (f.max_degree() > s)
    throw std::invalid_argument("type degree bound is below the family degree");
  TypeMatrix t(f.ell, s);
  // classes[i] collects (degree, leading coefficient) pairs seen in row i
  std::vector<std::set<std::pair<int, IntPoly>>> classes(f.ell);
  for (int j = 0; j < f.m; ++j) {
    int i = column_level(f, j);
    if (i < 0) continue;
    const ShiftPoly& p = f.entries[i][j];
    if (classes[i].insert({p.degree(), p.leading()}).second) ++t.at_degree(i, p.degree());
  }
  return t;
}

bool type_less(const TypeMatrix& a, const TypeMatrix& b) {
  if (a.ell != b.ell || a.s != b.s) throw std::invalid_argument("type matrix shapes differ");
  for (int i = 0; i < a.ell; ++i)
    for (int k = 0; k < a.s; ++k)
      if (a.w[i][k] != b.w[i][k]) return a.w[i][k] < b.w[i][k];
  return false;
}

namespace {

template <class Shift>
PolyFamily vdc_impl(const PolyFamily& f, int column, Shift&& shift) {
  f.validate();
  if (column < 0 || column >= f.m) throw std::out_of_range("vdc column index out of range");
  PolyFamily r(f.ell, 2 * f.m);
  for (int i = 0; i < f.ell; ++i) {
    const ShiftPoly& q = f.entries[i][column];
    for (int j = 0; j < f.m; ++j) {
      r.entries[i][j] = sp_sub(shift(f.entries[i][j]), q);
      r.entries[i][f.m + j] = sp_sub(f.entries[i][j], q);
    }
  }
  return r;
}

}  // namespace

PolyFamily vdc_operation(const PolyFamily& f, int column) {
  return vdc_impl(f, column, [](const ShiftPoly& p) { return shift_formal(p); });
}

PolyFamily vdc_operation(const PolyFamily& f, int column, long long h) {
  return vdc_impl(f, column, [h](const ShiftPoly& p) { return shift_by(p, h); });
}

PolyFamily absorb_constants(const PolyFamily& f) {
  f.validate();
  std::vector<std::vector<ShiftPoly>> cols;
  for (int j = 0; j < f.m; ++j) {
    std::vector<ShiftPoly> col = f.column(j);
    bool nonconstant = false;
    for (auto& p : col) {
      if (!p.coeffs.empty()) {
        p.coeffs[0].clear();  // constant terms act as fixed factors; drop them
        p.normalize();
      }
      nonconstant |= !p.is_zero();
    }
    if (!nonconstant) continue;
    if (std::find(cols.begin(), cols.end(), col) == cols.end()) cols.push_back(std::move(col));
  }
  if (cols.empty()) cols.emplace_back(f.ell);  // keep one all-zero column
  PolyFamily r(f.ell, static_cast<int>(cols.size()));
  for (int j = 0; j < r.m; ++j)
    for (int i = 0; i < f.ell; ++i) r.entries[i][j] = cols[j][i];
  return r;
}

PolyFamily merge_equivalent_columns(const PolyFamily& f) {
  f.validate();
  std::vector<std::vector<ShiftPoly>> cols;
  for (int j = 0; j < f.m; ++j) {
    std::vector<ShiftPoly> col = f.column(j);
    bool merged = false;
    for (const auto& kept : cols) {
      bool all_rows = true;
      for (int i = 0; i < f.ell && all_rows; ++i) all_rows = equivalent(kept[i], col[i]);
      if (all_rows) {
        merged = true;
        break;
      }
    }
    if (!merged) cols.push_back(std::move(col));
  }
  PolyFamily r(f.ell, static_cast<int>(cols.size()));
  for (int j = 0; j < r.m; ++j)
    for (int i = 0; i < f.ell; ++i) r.entries[i][j] = cols[j][i];
  return r;
}

int choose_reducing_tuple(const PolyFamily& f, int s) {
  TypeMatrix base = family_type(f, s);
  if (base.is_zero())
    throw std::invalid_argument("family of constants has nothing to reduce");
  // Candidates ordered by descending degree of the first nonconstant entry,
  // ties by column index.  High-degree subtractions, when they verify, clear
  // leading positions of the type and keep traces short, but they only verify
  // when the spawned lower-degree classes collide with existing ones, so only
  // a few are worth probing before falling back.
  std::vector<std::tuple<int, int, int>> order;  // (-degree, column, level)
  int deepest = -1;
  for (int j = 0; j < f.m; ++j) {
    int level = column_level(f, j);
    if (level < 0) continue;  // constant columns never reduce anything
    order.emplace_back(-f.entries[level][j].degree(), j, level);
    deepest = std::max(deepest, level);
  }
  std::sort(order.begin(), order.end());
  constexpr int kProbeLimit = 4;
  int tried = 0;
  for (auto [neg_deg, j, level] : order) {
    if (tried++ >= kProbeLimit) break;
    if (type_less(family_type(vdc_operation(f, j), s), base)) return j;
  }
  // Fallback with a guarantee: at the deepest level take the least degree.
  // Rows above that level see only constant subtractions, nothing sits below
  // to spawn debris at its position, so its class count strictly drops.
  int safe = -1, safe_deg = s + 1;
  for (auto [neg_deg, j, level] : order)
    if (level == deepest && -neg_deg < safe_deg) { safe_deg = -neg_deg; safe = j; }
  if (safe >= 0 && type_less(family_type(vdc_operation(f, safe), s), base)) return safe;
  for (int j = 0; j < f.m; ++j)
    if (type_less(family_type(vdc_operation(f, j), s), base)) return j;
  throw NoReducingTuple("no column reduces the type matrix");
}

PetTrace pet_reduce(const PolyFamily& f, int s) {
  f.validate();
  if (f.max_degree() > s)
    throw std::invalid_argument("type degree bound is below the family degree");
  PetTrace trace;
  PolyFamily cur = f;
  TypeMatrix cur_type = family_type(cur, s);
  trace.initial_type = cur_type;
  // Terminates unconditionally: every step is verified to strictly lower the
  // type matrix, and the row-major lexicographic order on bounded nonnegative
  // count vectors admits no infinite descending chain.
  while (!cur_type.is_zero()) {
    PolyFamily work = merge_equivalent_columns(absorb_constants(cur));
    int j = choose_reducing_tuple(work, s);
    PolyFamily next = vdc_operation(work, j);
    TypeMatrix next_type = family_type(next, s);
    if (!type_less(next_type, cur_type))
      throw NoReducingTuple("vdc step failed to lower the type");
    trace.steps.push_back({j, std::nullopt, next_type});
    cur = std::move(next);
    cur_type = std::move(next_type);
  }
  return trace;
}

}  // namespace polyszem::pet
