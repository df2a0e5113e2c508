#include "polyszem/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "polyszem/parallel.hpp"
#include "polyszem/util.hpp"

namespace polyszem::dynamics {

double Observable::sup_bound() const {
  double b = 0.0;
  for (const cd& v : values) b = std::max(b, std::abs(v));
  return b;
}

Observable Observable::ones(long long size) {
  return {std::vector<cd>(static_cast<size_t>(size), cd{1.0, 0.0})};
}

Observable Observable::indicator(const std::vector<std::uint8_t>& ind) {
  Observable f;
  f.values.reserve(ind.size());
  for (auto b : ind) f.values.push_back(cd{b ? 1.0 : 0.0, 0.0});
  return f;
}

double EventSet::measure() const {
  if (indicator.empty()) return 0.0;
  long long c = 0;
  for (auto b : indicator) c += b ? 1 : 0;
  return static_cast<double>(c) / static_cast<double>(indicator.size());
}

EventSet EventSet::first_half(long long size) {
  EventSet A;
  A.indicator.assign(static_cast<size_t>(size), 0);
  for (long long i = 0; i < size / 2; ++i) A.indicator[static_cast<size_t>(i)] = 1;
  return A;
}

EventSet EventSet::full(long long size) {
  EventSet A;
  A.indicator.assign(static_cast<size_t>(size), 1);
  return A;
}

EventSet EventSet::from_indices(long long size, const std::vector<long long>& idx) {
  EventSet A;
  A.indicator.assign(static_cast<size_t>(size), 0);
  for (long long i : idx) {
    if (i < 0 || i >= size) throw std::out_of_range("event index outside the space");
    A.indicator[static_cast<size_t>(i)] = 1;
  }
  return A;
}

FiniteSystem::FiniteSystem(long long size, std::vector<std::vector<std::int32_t>> maps,
                           std::vector<std::string> labels)
    : size_(size), maps_(std::move(maps)), labels_(std::move(labels)) {
  if (size_ < 1) throw std::invalid_argument("system size must be positive");
  if (maps_.empty()) throw std::invalid_argument("system needs at least one map");
  for (const auto& T : maps_) {
    if (static_cast<long long>(T.size()) != size_)
      throw std::invalid_argument("map size does not match the space");
    std::vector<std::uint8_t> seen(static_cast<size_t>(size_), 0);
    for (std::int32_t y : T) {
      if (y < 0 || y >= size_ || seen[static_cast<size_t>(y)])
        throw std::invalid_argument("map is not a permutation");
      seen[static_cast<size_t>(y)] = 1;
    }
  }
  for (size_t i = 0; i < maps_.size(); ++i) {
    for (size_t j = i + 1; j < maps_.size(); ++j) {
      for (long long x = 0; x < size_; ++x) {
        std::int32_t a = maps_[i][static_cast<size_t>(maps_[j][static_cast<size_t>(x)])];
        std::int32_t b = maps_[j][static_cast<size_t>(maps_[i][static_cast<size_t>(x)])];
        if (a != b) throw std::invalid_argument("maps do not commute");
      }
    }
  }
  cycle_id_.resize(maps_.size());
  cycle_pos_.resize(maps_.size());
  cycles_.resize(maps_.size());
  for (size_t m = 0; m < maps_.size(); ++m) {
    cycle_id_[m].assign(static_cast<size_t>(size_), -1);
    cycle_pos_[m].assign(static_cast<size_t>(size_), -1);
    for (long long x = 0; x < size_; ++x) {
      if (cycle_id_[m][static_cast<size_t>(x)] >= 0) continue;
      std::vector<std::int32_t> cyc;
      std::int32_t cur = static_cast<std::int32_t>(x);
      while (cycle_id_[m][static_cast<size_t>(cur)] < 0) {
        cycle_id_[m][static_cast<size_t>(cur)] = static_cast<std::int32_t>(cycles_[m].size());
        cycle_pos_[m][static_cast<size_t>(cur)] = static_cast<std::int32_t>(cyc.size());
        cyc.push_back(cur);
        cur = maps_[m][static_cast<size_t>(cur)];
      }
      cycles_[m].push_back(std::move(cyc));
    }
  }
}

FiniteSystem FiniteSystem::cyclic_rotation(long long size) {
  std::vector<std::int32_t> T(static_cast<size_t>(size));
  for (long long x = 0; x < size; ++x) T[static_cast<size_t>(x)] = static_cast<std::int32_t>((x + 1) % size);
  return FiniteSystem(size, {std::move(T)});
}

FiniteSystem FiniteSystem::torus_rotations(std::vector<long long> dims) {
  if (dims.empty()) throw std::invalid_argument("torus needs at least one axis");
  long long size = 1;
  for (long long d : dims) {
    if (d < 1) throw std::invalid_argument("torus axis must be positive");
    size = checked_mul(size, d);
  }
  // row-major point index; axis i steps by the trailing stride
  std::vector<long long> stride(dims.size(), 1);
  for (int i = static_cast<int>(dims.size()) - 2; i >= 0; --i) stride[i] = stride[i + 1] * dims[i + 1];
  std::vector<std::vector<std::int32_t>> maps;
  for (size_t i = 0; i < dims.size(); ++i) {
    std::vector<std::int32_t> T(static_cast<size_t>(size));
    for (long long x = 0; x < size; ++x) {
      long long coord = (x / stride[i]) % dims[i];
      long long wrapped = x + stride[i] - (coord + 1 == dims[i] ? dims[i] * stride[i] : 0);
      T[static_cast<size_t>(x)] = static_cast<std::int32_t>(wrapped);
    }
    maps.push_back(std::move(T));
  }
  return FiniteSystem(size, std::move(maps));
}

std::int32_t FiniteSystem::apply_power(int map, long long exponent, std::int32_t x) const {
  const auto& cyc = cycles_[static_cast<size_t>(map)]
                           [static_cast<size_t>(cycle_id_[static_cast<size_t>(map)][static_cast<size_t>(x)])];
  long long L = static_cast<long long>(cyc.size());
  long long pos = cycle_pos_[static_cast<size_t>(map)][static_cast<size_t>(x)];
  long long e = exponent % L;
  if (e < 0) e += L;
  return cyc[static_cast<size_t>((pos + e) % L)];
}

void FiniteSystem::composite_power(const std::vector<IntPoly>& qs, long long arg,
                                   std::vector<std::int32_t>& out) const {
  if (static_cast<int>(qs.size()) != ell())
    throw std::invalid_argument("one exponent polynomial per map is required");
  out.resize(static_cast<size_t>(size_));
  for (long long x = 0; x < size_; ++x) out[static_cast<size_t>(x)] = static_cast<std::int32_t>(x);
  std::vector<long long> residue;  // exponent mod cycle length, per cycle
  for (int m = 0; m < ell(); ++m) {
    const auto& cycles = cycles_[static_cast<size_t>(m)];
    residue.resize(cycles.size());
    for (size_t c = 0; c < cycles.size(); ++c)
      residue[c] = ip_eval_mod(qs[static_cast<size_t>(m)], arg,
                               static_cast<long long>(cycles[c].size()));
    for (auto& y : out) {
      const auto& cyc = cycles[static_cast<size_t>(cycle_id_[static_cast<size_t>(m)][static_cast<size_t>(y)])];
      long long L = static_cast<long long>(cyc.size());
      long long pos = cycle_pos_[static_cast<size_t>(m)][static_cast<size_t>(y)];
      y = cyc[static_cast<size_t>((pos + residue[static_cast<size_t>(
                                             cycle_id_[static_cast<size_t>(m)][static_cast<size_t>(y)])]) %
                                  L)];
    }
  }
}

double l2_norm(const FiniteSystem& sys, const Observable& f) {
  if (static_cast<long long>(f.values.size()) != sys.size())
    throw std::invalid_argument("observable size does not match the space");
  double acc = 0.0;
  for (const cd& v : f.values) acc += std::norm(v);
  return std::sqrt(acc / static_cast<double>(sys.size()));
}

double l2_distance(const FiniteSystem& sys, const Observable& f, const Observable& g) {
  if (f.values.size() != g.values.size()) throw std::invalid_argument("observable sizes differ");
  double acc = 0.0;
  for (size_t i = 0; i < f.values.size(); ++i) acc += std::norm(f.values[i] - g.values[i]);
  return std::sqrt(acc / static_cast<double>(sys.size()));
}

Observable iterate(const FiniteSystem& sys, const std::vector<long long>& exponents,
                   const Observable& f) {
  if (static_cast<int>(exponents.size()) != sys.ell())
    throw std::invalid_argument("one exponent per map is required");
  if (static_cast<long long>(f.values.size()) != sys.size())
    throw std::invalid_argument("observable size does not match the space");
  Observable g;
  g.values.resize(f.values.size());
  for (long long x = 0; x < sys.size(); ++x) {
    std::int32_t y = static_cast<std::int32_t>(x);
    for (int m = 0; m < sys.ell(); ++m) y = sys.apply_power(m, exponents[static_cast<size_t>(m)], y);
    g.values[static_cast<size_t>(x)] = f.values[static_cast<size_t>(y)];
  }
  return g;
}

std::vector<std::vector<IntPoly>> numeric_entries(const pet::PolyFamily& fam) {
  fam.validate();
  std::vector<std::vector<IntPoly>> out(static_cast<size_t>(fam.ell));
  for (int i = 0; i < fam.ell; ++i) {
    out[static_cast<size_t>(i)].resize(static_cast<size_t>(fam.m));
    for (int j = 0; j < fam.m; ++j) {
      const pet::ShiftPoly& p = fam.entries[static_cast<size_t>(i)][static_cast<size_t>(j)];
      IntPoly q(p.coeffs.size(), 0);
      for (size_t k = 0; k < p.coeffs.size(); ++k) {
        if (degree(p.coeffs[k]) > 0)
          throw std::invalid_argument("family entries must not involve the shift variable");
        q[k] = coeff(p.coeffs[k], 0);
      }
      normalize(q);
      out[static_cast<size_t>(i)][static_cast<size_t>(j)] = std::move(q);
    }
  }
  return out;
}

namespace {

// Per-column orbit products for one n: acc[x] += weight * prod_j f_j(pi_j x).
class OrbitAccumulator {
 public:
  OrbitAccumulator(const FiniteSystem& sys, const std::vector<std::vector<IntPoly>>& entries)
      : sys_(sys), entries_(entries), m_(static_cast<int>(entries.empty() ? 0 : entries[0].size())) {
    column_.resize(static_cast<size_t>(sys.ell()));
  }

  int m() const { return m_; }

  // evaluates prod_j f_j((prod_i T_i^{q_{i,j}(arg)}) x) into prod
  void products(const std::vector<Observable>& fs, long long arg, std::vector<cd>& prod) {
    prod.assign(static_cast<size_t>(sys_.size()), cd{1.0, 0.0});
    for (int j = 0; j < m_; ++j) {
      for (int i = 0; i < sys_.ell(); ++i)
        column_[static_cast<size_t>(i)] = entries_[static_cast<size_t>(i)][static_cast<size_t>(j)];
      sys_.composite_power(column_, arg, image_);
      const auto& f = fs[static_cast<size_t>(j)].values;
      for (long long x = 0; x < sys_.size(); ++x)
        prod[static_cast<size_t>(x)] *= f[static_cast<size_t>(image_[static_cast<size_t>(x)])];
    }
  }

 private:
  const FiniteSystem& sys_;
  const std::vector<std::vector<IntPoly>>& entries_;
  int m_;
  std::vector<IntPoly> column_;
  std::vector<std::int32_t> image_;
};

void check_observables(const FiniteSystem& sys, const std::vector<Observable>& fs, int m) {
  if (static_cast<int>(fs.size()) != m)
    throw std::invalid_argument("one observable per family column is required");
  for (const auto& f : fs)
    if (static_cast<long long>(f.values.size()) != sys.size())
      throw std::invalid_argument("observable size does not match the space");
}

}  // namespace

Observable weighted_multi_average(const FiniteSystem& sys, const std::vector<Observable>& fs,
                                  const pet::PolyFamily& fam, std::span<const double> weights,
                                  long long N, std::pair<long long, long long> affine) {
  if (N < 1) throw std::invalid_argument("N must be positive");
  auto entries = numeric_entries(fam);
  if (static_cast<int>(entries.size()) != sys.ell())
    throw std::invalid_argument("family rows must match the number of maps");
  OrbitAccumulator orbits(sys, entries);
  check_observables(sys, fs, orbits.m());
  if (!weights.empty() && static_cast<long long>(weights.size()) < N)
    throw std::invalid_argument("weight sequence is shorter than N");
  std::vector<cd> acc(static_cast<size_t>(sys.size()), cd{0, 0});
  std::vector<cd> prod;
  for (long long n = 1; n <= N; ++n) {
    long long arg = checked_add(checked_mul(affine.first, n), affine.second);
    double wt = weights.empty() ? 1.0 : weights[static_cast<size_t>(n - 1)];
    orbits.products(fs, arg, prod);
    for (long long x = 0; x < sys.size(); ++x)
      acc[static_cast<size_t>(x)] += wt * prod[static_cast<size_t>(x)];
  }
  Observable out;
  out.values.resize(acc.size());
  for (size_t x = 0; x < acc.size(); ++x) out.values[x] = acc[x] / static_cast<double>(N);
  return out;
}

PropKeyResult prop_key_experiment(const FiniteSystem& sys, const std::vector<Observable>& fs,
                                  const pet::PolyFamily& fam, const primes::WTrickTable& table,
                                  long long N, int threads) {
  if (N < 1) throw std::invalid_argument("N must be positive");
  auto entries = numeric_entries(fam);
  if (static_cast<int>(entries.size()) != sys.ell())
    throw std::invalid_argument("family rows must match the number of maps");
  if (N > (table.limit - table.W) / table.W)
    throw std::out_of_range("W N + r exceeds the sieve limit");
  PropKeyResult out;
  out.per_r.resize(table.coprime_residues.size());
  parallel_for(static_cast<long long>(table.coprime_residues.size()), threads, [&](long long k) {
    long long r = table.coprime_residues[static_cast<size_t>(k)];
    OrbitAccumulator orbits(sys, entries);
    check_observables(sys, fs, orbits.m());
    std::vector<cd> acc(static_cast<size_t>(sys.size()), cd{0, 0});
    std::vector<cd> prod;
    for (long long n = 1; n <= N; ++n) {
      double wt = primes::lambda_w_r(table, r, n) - 1.0;
      orbits.products(fs, table.W * n + r, prod);
      for (long long x = 0; x < sys.size(); ++x)
        acc[static_cast<size_t>(x)] += wt * prod[static_cast<size_t>(x)];
    }
    Observable avg;
    avg.values.resize(acc.size());
    for (size_t x = 0; x < acc.size(); ++x) avg.values[x] = acc[x] / static_cast<double>(N);
    out.per_r[static_cast<size_t>(k)] = {r, l2_norm(sys, avg)};
  });
  out.max_norm = 0.0;
  for (const auto& [r, v] : out.per_r) out.max_norm = std::max(out.max_norm, v);
  return out;
}

double joint_return_measure(const FiniteSystem& sys, const EventSet& A,
                            const std::vector<std::vector<long long>>& tuples) {
  if (static_cast<long long>(A.indicator.size()) != sys.size())
    throw std::invalid_argument("event size does not match the space");
  std::vector<std::uint8_t> keep = A.indicator;
  for (const auto& tuple : tuples) {
    if (static_cast<int>(tuple.size()) != sys.ell())
      throw std::invalid_argument("one exponent per map is required");
    for (long long x = 0; x < sys.size(); ++x) {
      if (!keep[static_cast<size_t>(x)]) continue;
      std::int32_t y = static_cast<std::int32_t>(x);
      for (int m = 0; m < sys.ell(); ++m) y = sys.apply_power(m, tuple[static_cast<size_t>(m)], y);
      if (!A.indicator[static_cast<size_t>(y)]) keep[static_cast<size_t>(x)] = 0;
    }
  }
  long long c = 0;
  for (auto b : keep) c += b ? 1 : 0;
  return static_cast<double>(c) / static_cast<double>(sys.size());
}

double recurrence_average(const FiniteSystem& sys, const EventSet& A, const pet::PolyFamily& fam,
                          std::span<const double> weights, long long N) {
  if (N < 1) throw std::invalid_argument("N must be positive");
  if (static_cast<long long>(A.indicator.size()) != sys.size())
    throw std::invalid_argument("event size does not match the space");
  auto entries = numeric_entries(fam);
  if (static_cast<int>(entries.size()) != sys.ell())
    throw std::invalid_argument("family rows must match the number of maps");
  if (!weights.empty() && static_cast<long long>(weights.size()) < N)
    throw std::invalid_argument("weight sequence is shorter than N");
  int m = fam.m;
  std::vector<IntPoly> column(static_cast<size_t>(sys.ell()));
  std::vector<std::int32_t> image;
  std::vector<std::uint8_t> keep;
  double acc = 0.0;
  for (long long n = 1; n <= N; ++n) {
    keep = A.indicator;
    for (int j = 0; j < m; ++j) {
      for (int i = 0; i < sys.ell(); ++i)
        column[static_cast<size_t>(i)] = entries[static_cast<size_t>(i)][static_cast<size_t>(j)];
      sys.composite_power(column, n, image);
      for (long long x = 0; x < sys.size(); ++x)
        if (keep[static_cast<size_t>(x)] &&
            !A.indicator[static_cast<size_t>(image[static_cast<size_t>(x)])])
          keep[static_cast<size_t>(x)] = 0;
    }
    long long c = 0;
    for (auto b : keep) c += b ? 1 : 0;
    double mu = static_cast<double>(c) / static_cast<double>(sys.size());
    acc += (weights.empty() ? 1.0 : weights[static_cast<size_t>(n - 1)]) * mu;
  }
  return acc / static_cast<double>(N);
}

CauchyDiagnostic cauchy_diagnostic(const FiniteSystem& sys, const std::vector<Observable>& fs,
                                   const pet::PolyFamily& fam, const primes::WTrickTable& table,
                                   const std::vector<long long>& grid) {
  if (grid.empty()) throw std::invalid_argument("grid must not be empty");
  for (size_t k = 1; k < grid.size(); ++k)
    if (grid[k] <= grid[k - 1]) throw std::invalid_argument("grid must be strictly increasing");
  if (grid.front() < 1 || grid.back() > table.limit)
    throw std::invalid_argument("grid exceeds the sieve limit");
  auto entries = numeric_entries(fam);
  if (static_cast<int>(entries.size()) != sys.ell())
    throw std::invalid_argument("family rows must match the number of maps");
  OrbitAccumulator orbits(sys, entries);
  check_observables(sys, fs, orbits.m());
  std::vector<cd> acc(static_cast<size_t>(sys.size()), cd{0, 0});
  std::vector<cd> prod;
  std::vector<Observable> partial;
  size_t next = 0;
  for (long long n = 1; n <= grid.back(); ++n) {
    double wt = table.lambda_prime(n);
    if (wt != 0.0) {
      orbits.products(fs, n, prod);
      for (long long x = 0; x < sys.size(); ++x)
        acc[static_cast<size_t>(x)] += wt * prod[static_cast<size_t>(x)];
    }
    if (next < grid.size() && n == grid[next]) {
      Observable avg;
      avg.values.resize(acc.size());
      for (size_t x = 0; x < acc.size(); ++x) avg.values[x] = acc[x] / static_cast<double>(n);
      partial.push_back(std::move(avg));
      ++next;
    }
  }
  CauchyDiagnostic out;
  out.grid = grid;
  out.distances.assign(grid.size(), std::vector<double>(grid.size(), 0.0));
  for (size_t i = 0; i < partial.size(); ++i)
    for (size_t j = 0; j < partial.size(); ++j)
      out.distances[i][j] = l2_distance(sys, partial[i], partial[j]);
  return out;
}

}  // namespace polyszem::dynamics
