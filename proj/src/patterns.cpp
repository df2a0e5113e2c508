#include "polyszem/patterns.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "polyszem/dynamics.hpp"
#include "polyszem/errors.hpp"
#include "polyszem/util.hpp"

namespace polyszem::patterns {

long long Window::volume() const {
  long long v = 1;
  for (const auto& [lo, hi] : ranges) v = checked_mul(v, hi - lo + 1);
  return v;
}

void Window::validate() const {
  if (ranges.empty() || ranges.size() > 3)
    throw std::invalid_argument("window dimension must be 1..3");
  for (const auto& [lo, hi] : ranges)
    if (lo > hi) throw std::invalid_argument("window range is empty");
  if (volume() > 10'000'000) throw CostGuardError("window volume capped at 1e7 points");
}

WindowedSet::WindowedSet(Window window, std::vector<Point> members)
    : window_(std::move(window)), members_(std::move(members)) {
  window_.validate();
  for (const auto& p : members_) {
    if (!in_window(p)) throw std::invalid_argument("set member outside the window");
    keys_.insert(key(p));
  }
  if (keys_.size() != members_.size()) throw std::invalid_argument("duplicate set member");
  std::sort(members_.begin(), members_.end());
}

bool WindowedSet::in_window(const Point& p) const {
  for (int i = 0; i < ell(); ++i)
    if (p[static_cast<size_t>(i)] < window_.ranges[static_cast<size_t>(i)].first ||
        p[static_cast<size_t>(i)] > window_.ranges[static_cast<size_t>(i)].second)
      return false;
  return true;
}

std::uint64_t WindowedSet::key(const Point& p) const {
  std::uint64_t k = 0;
  for (int i = 0; i < ell(); ++i) {
    const auto& [lo, hi] = window_.ranges[static_cast<size_t>(i)];
    k = k * static_cast<std::uint64_t>(hi - lo + 1) +
        static_cast<std::uint64_t>(p[static_cast<size_t>(i)] - lo);
  }
  return k;
}

bool WindowedSet::contains(const Point& p) const {
  return in_window(p) && keys_.count(key(p)) > 0;
}

double WindowedSet::density() const {
  return static_cast<double>(members_.size()) / static_cast<double>(window_.volume());
}

WindowedSet WindowedSet::random(Window window, double density, std::uint64_t seed) {
  window.validate();
  if (density < 0.0 || density > 1.0) throw std::invalid_argument("density must lie in [0,1]");
  std::vector<Point> members;
  long long vol = window.volume();
  int ell = window.ell();
  for (long long idx = 0; idx < vol; ++idx) {
    if (splitmix_canonical(seed, static_cast<std::uint64_t>(idx)) >= density) continue;
    Point p{0, 0, 0};
    long long rem = idx;
    for (int i = ell - 1; i >= 0; --i) {
      const auto& [lo, hi] = window.ranges[static_cast<size_t>(i)];
      long long len = hi - lo + 1;
      p[static_cast<size_t>(i)] = lo + rem % len;
      rem /= len;
    }
    members.push_back(p);
  }
  return WindowedSet(std::move(window), std::move(members));
}

WindowedSet WindowedSet::translated(const std::vector<long long>& t) const {
  if (static_cast<int>(t.size()) != ell()) throw std::invalid_argument("translation dimension mismatch");
  Window w = window_;
  for (int i = 0; i < ell(); ++i) {
    w.ranges[static_cast<size_t>(i)].first += t[static_cast<size_t>(i)];
    w.ranges[static_cast<size_t>(i)].second += t[static_cast<size_t>(i)];
  }
  std::vector<Point> members = members_;
  for (auto& p : members)
    for (int i = 0; i < ell(); ++i) p[static_cast<size_t>(i)] += t[static_cast<size_t>(i)];
  return WindowedSet(std::move(w), std::move(members));
}

double dyadic_max_density(const WindowedSet& E, int max_levels) {
  const Window& w = E.window();
  double best = E.density();
  for (int level = 1; level <= max_levels; ++level) {
    long long parts = 1LL << level;
    // cell grid per axis; skip once cells fall below a small floor
    std::vector<std::vector<std::pair<long long, long long>>> axis_cells(
        static_cast<size_t>(w.ell()));
    bool usable = true;
    for (int i = 0; i < w.ell() && usable; ++i) {
      const auto& [lo, hi] = w.ranges[static_cast<size_t>(i)];
      long long len = hi - lo + 1;
      long long cells = std::min(parts, len);
      if (len / cells < 4 && len > 4) usable = false;
      for (long long c = 0; c < cells; ++c) {
        long long a = lo + c * len / cells;
        long long b = lo + (c + 1) * len / cells - 1;
        if (a <= b) axis_cells[static_cast<size_t>(i)].push_back({a, b});
      }
    }
    if (!usable) break;
    std::vector<size_t> idx(static_cast<size_t>(w.ell()), 0);
    while (true) {
      Window cell;
      for (int i = 0; i < w.ell(); ++i)
        cell.ranges.push_back(axis_cells[static_cast<size_t>(i)][idx[static_cast<size_t>(i)]]);
      long long count = 0;
      for (const auto& p : E.members()) {
        bool in = true;
        for (int i = 0; i < w.ell(); ++i)
          if (p[static_cast<size_t>(i)] < cell.ranges[static_cast<size_t>(i)].first ||
              p[static_cast<size_t>(i)] > cell.ranges[static_cast<size_t>(i)].second)
            in = false;
        if (in) ++count;
      }
      best = std::max(best, static_cast<double>(count) / static_cast<double>(cell.volume()));
      int axis = w.ell() - 1;
      while (axis >= 0) {
        if (++idx[static_cast<size_t>(axis)] < axis_cells[static_cast<size_t>(axis)].size()) break;
        idx[static_cast<size_t>(axis)] = 0;
        --axis;
      }
      if (axis < 0) break;
    }
  }
  return best;
}

void PatternSpec::validate() const {
  if (ell < 1 || ell > 3) throw std::invalid_argument("pattern dimension must be 1..3");
  if (polys.empty()) throw std::invalid_argument("pattern needs at least one map");
  for (const auto& q : polys) {
    if (static_cast<int>(q.size()) != ell)
      throw std::invalid_argument("pattern map has the wrong dimension");
    for (const auto& c : q)
      if (!coeff(c, 0).is_zero())
        throw std::invalid_argument("pattern polynomials must have zero constant term");
  }
}

std::vector<long long> PatternSpec::shift_at(int j, long long n) const {
  std::vector<long long> v(static_cast<size_t>(ell));
  for (int i = 0; i < ell; ++i)
    v[static_cast<size_t>(i)] =
        ip_eval_ll(polys[static_cast<size_t>(j)][static_cast<size_t>(i)], n);
  return v;
}

PatternSpec PatternSpec::parse(const std::string& text, int ell) {
  PatternSpec spec;
  spec.ell = ell;
  std::stringstream maps(text);
  std::string map_text;
  while (std::getline(maps, map_text, ';')) {
    std::vector<IntPoly> comps;
    std::stringstream comp_stream(map_text);
    std::string comp;
    while (std::getline(comp_stream, comp, ',')) comps.push_back(parse_intpoly(comp));
    spec.polys.push_back(std::move(comps));
  }
  spec.validate();
  return spec;
}

namespace {

// Sub-window on which every shifted copy still lands inside the window.
Window valid_subwindow(const Window& w, const PatternSpec& spec, long long n) {
  Window v = w;
  for (int j = 0; j < spec.m(); ++j) {
    std::vector<long long> s = spec.shift_at(j, n);
    for (int i = 0; i < w.ell(); ++i) {
      auto& [lo, hi] = v.ranges[static_cast<size_t>(i)];
      if (s[static_cast<size_t>(i)] >= 0)
        hi = std::min(hi, w.ranges[static_cast<size_t>(i)].second - s[static_cast<size_t>(i)]);
      else
        lo = std::max(lo, w.ranges[static_cast<size_t>(i)].first - s[static_cast<size_t>(i)]);
      if (lo > hi) throw WindowExhausted("shifted copies leave no valid sub-window");
    }
  }
  return v;
}

}  // namespace

double intersection_density(const WindowedSet& E, const PatternSpec& spec, long long n) {
  spec.validate();
  if (spec.ell != E.ell()) throw std::invalid_argument("pattern and set dimensions differ");
  Window v = valid_subwindow(E.window(), spec, n);
  std::vector<std::vector<long long>> shifts;
  for (int j = 0; j < spec.m(); ++j) shifts.push_back(spec.shift_at(j, n));
  long long count = 0;
  for (const auto& p : E.members()) {
    bool in = true;
    for (int i = 0; i < E.ell() && in; ++i)
      in = p[static_cast<size_t>(i)] >= v.ranges[static_cast<size_t>(i)].first &&
           p[static_cast<size_t>(i)] <= v.ranges[static_cast<size_t>(i)].second;
    for (const auto& s : shifts) {
      if (!in) break;
      Point q = p;
      for (int i = 0; i < E.ell(); ++i) q[static_cast<size_t>(i)] += s[static_cast<size_t>(i)];
      in = E.contains(q);
    }
    if (in) ++count;
  }
  return static_cast<double>(count) / static_cast<double>(v.volume());
}

SearchResult shifted_prime_search(const WindowedSet& E, const PatternSpec& spec,
                                  const primes::WTrickTable& table, int shift, double threshold) {
  if (shift != -1 && shift != 1) throw std::invalid_argument("shift must be -1 or +1");
  SearchResult out;
  for (long long p : table.prime_list) {
    long long n = p + shift;
    try {
      double d = intersection_density(E, spec, n);
      if (d >= threshold) out.hits.push_back({p, n, d});
    } catch (const WindowExhausted&) {
      ++out.skipped_window;  // shifted copies no longer fit; skip and count
    }
  }
  return out;
}

CorrespondenceResult correspondence_check(const WindowedSet& E, const PatternSpec& spec,
                                          long long n) {
  spec.validate();
  if (spec.ell != E.ell()) throw std::invalid_argument("pattern and set dimensions differ");
  const Window& w = E.window();
  std::vector<long long> dims;
  for (const auto& [lo, hi] : w.ranges) dims.push_back(hi - lo + 1);
  dynamics::FiniteSystem sys = dynamics::FiniteSystem::torus_rotations(dims);
  // row-major index matching the torus layout
  std::vector<std::uint8_t> ind(static_cast<size_t>(w.volume()), 0);
  for (const auto& p : E.members()) {
    long long idx = 0;
    for (int i = 0; i < E.ell(); ++i)
      idx = idx * dims[static_cast<size_t>(i)] +
            (p[static_cast<size_t>(i)] - w.ranges[static_cast<size_t>(i)].first);
    ind[static_cast<size_t>(idx)] = 1;
  }
  dynamics::EventSet A{std::move(ind)};
  std::vector<std::vector<long long>> tuples;
  for (int j = 0; j < spec.m(); ++j) tuples.push_back(spec.shift_at(j, n));
  CorrespondenceResult out;
  out.combinatorial = intersection_density(E, spec, n);
  out.dynamical = dynamics::joint_return_measure(sys, A, tuples);
  double inv = 0.0;
  for (long long d : dims) inv += 1.0 / static_cast<double>(d);
  out.epsilon = 2.0 * inv;  // perimeter over volume of the box
  out.within_tolerance = out.combinatorial >= out.dynamical - out.epsilon;
  return out;
}

}  // namespace polyszem::patterns
