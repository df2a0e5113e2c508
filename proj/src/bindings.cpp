// Python bindings for the core operations.  Scalar and sequence arguments
// use native Python types; structured values with arbitrary-precision
// coefficients (families, traces, systems, profiles) cross the boundary as
// JSON strings via the same codec the CLI uses, so nothing is lost.
#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "polyszem/dynamics.hpp"
#include "polyszem/errors.hpp"
#include "polyszem/gowers.hpp"
#include "polyszem/io.hpp"
#include "polyszem/patterns.hpp"
#include "polyszem/pet.hpp"
#include "polyszem/primes.hpp"
#include "polyszem/version.hpp"

namespace py = pybind11;
using polyszem::io::json;

namespace {

polyszem::pet::PolyFamily family_from_str(const std::string& text) {
  return polyszem::io::family_from_json(json::parse(text));
}

polyszem::gowers::ArithSequence make_sequence(const std::vector<std::complex<double>>& values,
                                              long long modulus) {
  polyszem::gowers::ArithSequence a;
  a.values = values;
  if (modulus > 0) a.modulus = modulus;
  a.validate();
  return a;
}

}  // namespace

PYBIND11_MODULE(polyszem, mod) {
  mod.doc() = "Polynomial multiple-recurrence experiments: van der Corput "
              "reduction, Gowers norms, prime weights, finite dynamics, and "
              "pattern search.";
  mod.attr("__version__") = polyszem::kVersion;

  py::register_exception<polyszem::CostGuardError>(mod, "CostGuardError", PyExc_RuntimeError);
  py::register_exception<polyszem::NoReducingTuple>(mod, "NoReducingTuple", PyExc_RuntimeError);
  py::register_exception<polyszem::WindowExhausted>(mod, "WindowExhausted", PyExc_RuntimeError);

  // ---- van der Corput reduction on polynomial families (JSON bridge) ----
  mod.def(
      "pet_reduce",
      [](const std::string& family, int s) {
        auto fam = family_from_str(family);
        if (s <= 0) s = std::max(1, fam.max_degree());
        return polyszem::io::trace_to_json(polyszem::pet::pet_reduce(fam, s)).dump();
      },
      py::arg("family"), py::arg("s") = 0,
      "Run the full reduction on a family JSON string; returns the trace as JSON.");
  mod.def(
      "family_type",
      [](const std::string& family, int s) {
        auto fam = family_from_str(family);
        if (s <= 0) s = std::max(1, fam.max_degree());
        return polyszem::io::type_to_json(polyszem::pet::family_type(fam, s)).dump();
      },
      py::arg("family"), py::arg("s") = 0, "Type matrix of a family JSON string, as JSON.");
  mod.def(
      "vdc_operation",
      [](const std::string& family, int column) {
        return polyszem::io::family_to_json(
                   polyszem::pet::vdc_operation(family_from_str(family), column))
            .dump();
      },
      py::arg("family"), py::arg("column"),
      "One formal-shift differencing step; returns the new family as JSON.");

  // ---- Gowers norms ----
  mod.def(
      "gowers_norm",
      [](const std::vector<std::complex<double>>& values, long long modulus, int d) {
        return polyszem::gowers::gowers_norm(make_sequence(values, modulus), d);
      },
      py::arg("values"), py::arg("modulus"), py::arg("d"));
  mod.def(
      "brute_gowers",
      [](const std::vector<std::complex<double>>& values, long long modulus, int d) {
        return polyszem::gowers::brute_gowers(make_sequence(values, modulus), d);
      },
      py::arg("values"), py::arg("modulus"), py::arg("d"));
  mod.def(
      "embed",
      [](const std::vector<std::complex<double>>& values, int d) {
        auto e = polyszem::gowers::embed(make_sequence(values, 0), d);
        return py::make_tuple(e.values, *e.modulus);
      },
      py::arg("values"), py::arg("d"), "Zero-pad [1,N] into Z_{dN}; returns (values, modulus).");
  mod.def(
      "vdc_inequality",
      [](const std::vector<std::vector<std::complex<double>>>& vectors) {
        polyszem::gowers::VectorSequence v;
        v.dim = vectors.empty() ? 1 : static_cast<int>(vectors.front().size());
        v.vectors = vectors;
        v.validate();
        auto b = polyszem::gowers::vdc_inequality(v);
        return py::make_tuple(b.lhs, b.rhs, polyszem::gowers::kVdcConstant);
      },
      py::arg("vectors"), "Returns (lhs, rhs, constant) with lhs <= constant * rhs expected.");

  // ---- prime tables ----
  py::class_<polyszem::primes::WTrickTable>(mod, "WTrickTable")
      .def_readonly("limit", &polyszem::primes::WTrickTable::limit)
      .def_readonly("w", &polyszem::primes::WTrickTable::w)
      .def_readonly("W", &polyszem::primes::WTrickTable::W)
      .def_readonly("phi_W", &polyszem::primes::WTrickTable::phi_W)
      .def_readonly("coprime_residues", &polyszem::primes::WTrickTable::coprime_residues)
      .def("mangoldt", &polyszem::primes::WTrickTable::lambda, py::arg("n"))
      .def("mangoldt_prime", &polyszem::primes::WTrickTable::lambda_prime, py::arg("n"))
      .def("pi", &polyszem::primes::WTrickTable::pi, py::arg("N"));
  mod.def("build_table", &polyszem::primes::build_table, py::arg("limit"), py::arg("w"));
  mod.def("lambda_w_r", &polyszem::primes::lambda_w_r, py::arg("table"), py::arg("r"),
          py::arg("n"));
  mod.def(
      "compare_prime_average",
      [](const polyszem::primes::WTrickTable& t,
         const std::function<std::complex<double>(long long)>& a, long long N) {
        return polyszem::primes::compare_prime_average(t, a, N);
      },
      py::arg("table"), py::arg("a"), py::arg("N"));
  mod.def("weight_discrepancy", &polyszem::primes::weight_discrepancy, py::arg("table"),
          py::arg("r"), py::arg("N"));
  mod.def(
      "uniformity_profile",
      [](const polyszem::primes::WTrickTable& t, long long N, int d, int threads) {
        return polyszem::io::profile_to_json(
                   polyszem::primes::uniformity_profile(t, N, d, threads))
            .dump();
      },
      py::arg("table"), py::arg("N"), py::arg("d"), py::arg("threads") = 1,
      "Per-residue box-norm profile as JSON.");

  // ---- finite dynamics ----
  py::class_<polyszem::dynamics::FiniteSystem>(mod, "FiniteSystem")
      .def(py::init<long long, std::vector<std::vector<std::int32_t>>,
                    std::vector<std::string>>(),
           py::arg("size"), py::arg("maps"), py::arg("labels") = std::vector<std::string>{})
      .def_static("cyclic_rotation", &polyszem::dynamics::FiniteSystem::cyclic_rotation,
                  py::arg("size"))
      .def_static("torus_rotations", &polyszem::dynamics::FiniteSystem::torus_rotations,
                  py::arg("dims"))
      .def_property_readonly("size", &polyszem::dynamics::FiniteSystem::size)
      .def_property_readonly("ell", &polyszem::dynamics::FiniteSystem::ell);
  py::class_<polyszem::dynamics::Observable>(mod, "Observable")
      .def(py::init([](const std::vector<std::complex<double>>& values) {
             polyszem::dynamics::Observable f;
             f.values = values;
             return f;
           }),
           py::arg("values"))
      .def_static("ones", &polyszem::dynamics::Observable::ones, py::arg("size"))
      .def_static(
          "indicator",
          [](long long size, const std::vector<long long>& indices) {
            std::vector<std::uint8_t> ind(static_cast<size_t>(size), 0);
            for (long long i : indices) ind.at(static_cast<size_t>(i)) = 1;
            return polyszem::dynamics::Observable::indicator(ind);
          },
          py::arg("size"), py::arg("indices"))
      .def_readonly("values", &polyszem::dynamics::Observable::values);
  py::class_<polyszem::dynamics::EventSet>(mod, "EventSet")
      .def_static("first_half", &polyszem::dynamics::EventSet::first_half, py::arg("size"))
      .def_static("full", &polyszem::dynamics::EventSet::full, py::arg("size"))
      .def_static("from_indices", &polyszem::dynamics::EventSet::from_indices, py::arg("size"),
                  py::arg("indices"))
      .def("measure", &polyszem::dynamics::EventSet::measure);
  mod.def(
      "iterate",
      [](const polyszem::dynamics::FiniteSystem& sys, const std::vector<long long>& exponents,
         const polyszem::dynamics::Observable& f) {
        return polyszem::dynamics::iterate(sys, exponents, f);
      },
      py::arg("system"), py::arg("exponents"), py::arg("f"));
  mod.def(
      "weighted_multi_average",
      [](const polyszem::dynamics::FiniteSystem& sys,
         const std::vector<polyszem::dynamics::Observable>& fs, const std::string& family,
         const std::vector<double>& weights, long long N, long long a, long long b) {
        return polyszem::dynamics::weighted_multi_average(sys, fs, family_from_str(family),
                                                          weights, N, {a, b});
      },
      py::arg("system"), py::arg("fs"), py::arg("family"), py::arg("weights"), py::arg("N"),
      py::arg("a") = 1, py::arg("b") = 0);
  mod.def(
      "prop_key_experiment",
      [](const polyszem::dynamics::FiniteSystem& sys,
         const std::vector<polyszem::dynamics::Observable>& fs, const std::string& family,
         const polyszem::primes::WTrickTable& table, long long N, int threads) {
        auto r = polyszem::dynamics::prop_key_experiment(sys, fs, family_from_str(family), table,
                                                         N, threads);
        return py::make_tuple(r.per_r, r.max_norm);
      },
      py::arg("system"), py::arg("fs"), py::arg("family"), py::arg("table"), py::arg("N"),
      py::arg("threads") = 1, "Returns (per_r pairs, max_norm).");
  mod.def(
      "recurrence_average",
      [](const polyszem::dynamics::FiniteSystem& sys, const polyszem::dynamics::EventSet& A,
         const std::string& family, const std::vector<double>& weights, long long N) {
        return polyszem::dynamics::recurrence_average(sys, A, family_from_str(family), weights,
                                                      N);
      },
      py::arg("system"), py::arg("A"), py::arg("family"), py::arg("weights"), py::arg("N"));
  mod.def(
      "cauchy_diagnostic",
      [](const polyszem::dynamics::FiniteSystem& sys,
         const std::vector<polyszem::dynamics::Observable>& fs, const std::string& family,
         const polyszem::primes::WTrickTable& table, const std::vector<long long>& grid) {
        auto d = polyszem::dynamics::cauchy_diagnostic(sys, fs, family_from_str(family), table,
                                                       grid);
        return py::make_tuple(d.grid, d.distances);
      },
      py::arg("system"), py::arg("fs"), py::arg("family"), py::arg("table"), py::arg("grid"));

  // ---- windowed pattern combinatorics ----
  py::class_<polyszem::patterns::WindowedSet>(mod, "WindowedSet")
      .def(py::init([](const std::vector<std::pair<long long, long long>>& ranges,
                       const std::vector<std::vector<long long>>& members) {
             polyszem::patterns::Window w;
             for (auto [lo, hi] : ranges) w.ranges.push_back({lo, hi});
             std::vector<polyszem::patterns::Point> pts;
             for (const auto& t : members) {
               polyszem::patterns::Point p{0, 0, 0};
               for (size_t i = 0; i < t.size(); ++i) p[i] = t[i];
               pts.push_back(p);
             }
             return polyszem::patterns::WindowedSet(w, pts);
           }),
           py::arg("ranges"), py::arg("members"))
      .def_static(
          "random",
          [](const std::vector<std::pair<long long, long long>>& ranges, double density,
             unsigned long long seed) {
            polyszem::patterns::Window w;
            for (auto [lo, hi] : ranges) w.ranges.push_back({lo, hi});
            return polyszem::patterns::WindowedSet::random(w, density, seed);
          },
          py::arg("ranges"), py::arg("density"), py::arg("seed"))
      .def_property_readonly("ell", &polyszem::patterns::WindowedSet::ell)
      .def("size", &polyszem::patterns::WindowedSet::size)
      .def("density", &polyszem::patterns::WindowedSet::density);
  py::class_<polyszem::patterns::PatternSpec>(mod, "PatternSpec")
      .def_static("parse", &polyszem::patterns::PatternSpec::parse, py::arg("text"),
                  py::arg("ell"))
      .def("m", &polyszem::patterns::PatternSpec::m);
  mod.def("intersection_density", &polyszem::patterns::intersection_density, py::arg("E"),
          py::arg("spec"), py::arg("n"));
  mod.def("dyadic_max_density", &polyszem::patterns::dyadic_max_density, py::arg("E"),
          py::arg("max_levels") = 4);
  mod.def(
      "shifted_prime_search",
      [](const polyszem::patterns::WindowedSet& E, const polyszem::patterns::PatternSpec& spec,
         const polyszem::primes::WTrickTable& table, int shift, double threshold) {
        auto r = polyszem::patterns::shifted_prime_search(E, spec, table, shift, threshold);
        py::list hits;
        for (const auto& h : r.hits) hits.append(py::make_tuple(h.prime, h.n, h.density));
        return py::make_tuple(hits, r.skipped_window);
      },
      py::arg("E"), py::arg("spec"), py::arg("table"), py::arg("shift"), py::arg("threshold"),
      "Returns ([(prime, n, density), ...], skipped_window_count).");
  mod.def(
      "correspondence_check",
      [](const polyszem::patterns::WindowedSet& E, const polyszem::patterns::PatternSpec& spec,
         long long n) {
        auto r = polyszem::patterns::correspondence_check(E, spec, n);
        return py::make_tuple(r.combinatorial, r.dynamical, r.epsilon, r.within_tolerance);
      },
      py::arg("E"), py::arg("spec"), py::arg("n"),
      "Returns (combinatorial, dynamical, epsilon, within_tolerance).");
}
