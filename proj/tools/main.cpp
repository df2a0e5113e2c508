// Command line front end.  Every experiment is a subcommand that echoes its
// configuration into a JSON report and optionally emits plot-ready CSV.
// Exit codes: 0 success, 2 validation or input error, 3 cost-guard
// rejection, 1 internal inconsistency.
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "polyszem/dynamics.hpp"
#include "polyszem/errors.hpp"
#include "polyszem/gowers.hpp"
#include "polyszem/io.hpp"
#include "polyszem/patterns.hpp"
#include "polyszem/pet.hpp"
#include "polyszem/primes.hpp"
#include "polyszem/util.hpp"
#include "polyszem/version.hpp"

namespace {

using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

std::string resolve_out(const std::string& path) {
  if (path.empty() || path.front() == '/') return path;
  const char* dir = std::getenv("POLYSZEM_OUT_DIR");
  if (dir == nullptr || *dir == '\0') return path;
  return std::string(dir) + "/" + path;
}

json make_report(const std::string& command, json config, json payload, Clock::time_point t0) {
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
  json report;
  report["version"] = polyszem::kVersion;
  report["command"] = command;
  report["config"] = std::move(config);
  report["meta"] = json{{"wall_time_ms", ms}};
  report["payload"] = std::move(payload);
  return report;
}

void emit_report(const json& report, const std::string& out) {
  std::string text = report.dump(2);
  text.push_back('\n');
  if (out.empty())
    std::cout << text;
  else
    polyszem::io::write_text_file(resolve_out(out), text);
}

json complex_json(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

// "rotation:M", "torus:M1xM2[xM3...]", or a path to a system JSON file.
polyszem::dynamics::FiniteSystem parse_system(const std::string& spec) {
  if (spec.rfind("rotation:", 0) == 0) {
    long long size = std::stoll(spec.substr(9));
    return polyszem::dynamics::FiniteSystem::cyclic_rotation(size);
  }
  if (spec.rfind("torus:", 0) == 0) {
    std::vector<long long> dims;
    std::string rest = spec.substr(6);
    size_t pos = 0;
    while (pos < rest.size()) {
      size_t x = rest.find('x', pos);
      if (x == std::string::npos) x = rest.size();
      dims.push_back(std::stoll(rest.substr(pos, x - pos)));
      pos = x + 1;
    }
    return polyszem::dynamics::FiniteSystem::torus_rotations(dims);
  }
  return polyszem::io::system_from_json(polyszem::io::read_json_file(spec));
}

// "half", "full", or a path to a JSON file {"indices": [...]}.
polyszem::dynamics::EventSet parse_event_set(const std::string& spec, long long size) {
  if (spec == "half") return polyszem::dynamics::EventSet::first_half(size);
  if (spec == "full") return polyszem::dynamics::EventSet::full(size);
  json j = polyszem::io::read_json_file(spec);
  if (!j.contains("indices"))
    throw std::invalid_argument("event set file needs an \"indices\" array");
  return polyszem::dynamics::EventSet::from_indices(size,
                                                    j["indices"].get<std::vector<long long>>());
}

// ";"-separated columns of ","-separated components, e.g. "n^2,n;0,n" for
// two columns over two maps.  Unlike pattern specs, constant terms are kept.
polyszem::pet::PolyFamily polys_to_family(const std::string& text, int ell) {
  std::vector<std::vector<polyszem::IntPoly>> columns;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t semi = text.find(';', pos);
    if (semi == std::string::npos) semi = text.size();
    std::string column = text.substr(pos, semi - pos);
    std::vector<polyszem::IntPoly> comps;
    size_t cpos = 0;
    while (cpos <= column.size()) {
      size_t comma = column.find(',', cpos);
      if (comma == std::string::npos) comma = column.size();
      comps.push_back(polyszem::parse_intpoly(column.substr(cpos, comma - cpos)));
      cpos = comma + 1;
    }
    if (static_cast<int>(comps.size()) != ell)
      throw std::invalid_argument("expected " + std::to_string(ell) +
                                  " comma-separated components per column");
    columns.push_back(std::move(comps));
    pos = semi + 1;
  }
  polyszem::pet::PolyFamily fam(ell, static_cast<int>(columns.size()));
  for (int j = 0; j < fam.m; ++j)
    for (int i = 0; i < ell; ++i)
      fam.entries[i][j] = polyszem::pet::ShiftPoly::from_n_coeffs(columns[j][i]);
  fam.validate();
  return fam;
}

polyszem::pet::PolyFamily family_from_flags(const std::string& family_path,
                                            const std::string& polys, int ell) {
  if (!family_path.empty())
    return polyszem::io::family_from_json(polyszem::io::read_json_file(family_path));
  return polys_to_family(polys, ell);
}

std::vector<polyszem::dynamics::Observable> observables_from_flags(const std::string& obs_path,
                                                                   long long size, int m) {
  if (obs_path.empty())
    return std::vector<polyszem::dynamics::Observable>(
        m, polyszem::dynamics::Observable::ones(size));
  auto fs = polyszem::io::observables_from_json(polyszem::io::read_json_file(obs_path));
  if (static_cast<int>(fs.size()) != m)
    throw std::invalid_argument("observable count does not match the family columns");
  return fs;
}

// W = product of primes below w, via a throwaway small sieve.
long long small_W(int w) { return polyszem::primes::build_table(std::max(w, 3) + 1, w).W; }

std::vector<long long> parse_grid(const std::string& text) {
  std::vector<long long> grid;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    grid.push_back(std::stoll(text.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  return grid;
}

std::vector<double> w_trick_weights(const polyszem::primes::WTrickTable& table, long long N) {
  std::vector<double> weights(static_cast<size_t>(N));
  for (long long n = 1; n <= N; ++n)
    weights[static_cast<size_t>(n - 1)] = polyszem::primes::lambda_w_r(table, 1, n);
  return weights;
}

// Scalar sequence files load as 1-dimensional vector sequences; files with a
// "vectors" key carry explicit dimension.
polyszem::gowers::VectorSequence vector_sequence_from_json(const json& j) {
  polyszem::gowers::VectorSequence v;
  if (j.contains("vectors")) {
    v.dim = j.at("dim").get<int>();
    for (const auto& row : j.at("vectors")) {
      std::vector<std::complex<double>> entry;
      for (const auto& value : row) entry.push_back(polyszem::io::complex_value_from_json(value));
      v.vectors.push_back(std::move(entry));
    }
  } else {
    auto a = polyszem::io::sequence_from_json(j);
    v.dim = 1;
    for (auto z : a.values) v.vectors.push_back({z});
  }
  v.validate();
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Polynomial multiple-recurrence experiments"};
  app.set_version_flag("--version", polyszem::kVersion);
  app.require_subcommand(1);

  // ---- pet ----------------------------------------------------------------
  auto* pet_cmd = app.add_subcommand("pet", "Run the full polynomial exhaustion on a family");
  std::string pet_family, pet_out;
  int pet_s = 0;
  pet_cmd->add_option("--family", pet_family, "family JSON file")->required();
  pet_cmd->add_option("--s", pet_s, "type degree bound (default: family degree)");
  pet_cmd->add_option("--out", pet_out, "report path (default: stdout)");
  pet_cmd->callback([&] {
    auto t0 = Clock::now();
    auto fam = polyszem::io::family_from_json(polyszem::io::read_json_file(pet_family));
    int s = pet_s > 0 ? pet_s : std::max(1, fam.max_degree());
    auto trace = polyszem::pet::pet_reduce(fam, s);
    json config{{"family", pet_family}, {"s", s}, {"out", pet_out}};
    emit_report(make_report("pet", config, polyszem::io::trace_to_json(trace), t0), pet_out);
  });

  // ---- gowers ---------------------------------------------------------------
  auto* gowers_cmd = app.add_subcommand("gowers", "Box norm of a finite sequence");
  std::string gow_seq, gow_mode = "fast", gow_out, gow_csv;
  int gow_d = 0, gow_embed = 0;
  gowers_cmd->add_option("--seq", gow_seq, "sequence JSON file")->required();
  gowers_cmd->add_option("--d", gow_d, "norm degree")->required()->check(CLI::PositiveNumber);
  gowers_cmd->add_option("--mode", gow_mode, "fast | recursive | brute")
      ->check(CLI::IsMember({"fast", "recursive", "brute"}));
  gowers_cmd->add_option("--embed", gow_embed, "zero-pad into Z_{dN} with this d first");
  gowers_cmd->add_option("--csv", gow_csv, "write the shift correlation table as CSV");
  gowers_cmd->add_option("--out", gow_out, "report path (default: stdout)");
  gowers_cmd->callback([&] {
    auto t0 = Clock::now();
    auto a = polyszem::io::sequence_from_json(polyszem::io::read_json_file(gow_seq));
    if (gow_embed > 0) a = polyszem::gowers::embed(a, gow_embed);
    double norm = gow_mode == "brute"       ? polyszem::gowers::brute_gowers(a, gow_d)
                  : gow_mode == "recursive" ? polyszem::gowers::gowers_norm_recursive(a, gow_d)
                                            : polyszem::gowers::gowers_norm(a, gow_d);
    if (!gow_csv.empty()) {
      auto table = polyszem::gowers::u2_shift_table(a);
      std::vector<std::vector<double>> rows;
      for (size_t h = 0; h < table.size(); ++h)
        rows.push_back({static_cast<double>(h), table[h]});
      polyszem::io::write_csv(resolve_out(gow_csv), {"h", "inner_average"}, rows);
    }
    json config{{"seq", gow_seq}, {"d", gow_d},     {"mode", gow_mode},
                {"embed", gow_embed}, {"csv", gow_csv}, {"out", gow_out}};
    json payload{{"d", gow_d}, {"mode", gow_mode}, {"norm", norm}};
    emit_report(make_report("gowers", config, payload, t0), gow_out);
  });

  // ---- vdc ------------------------------------------------------------------
  auto* vdc_cmd = app.add_subcommand(
      "vdc", "Differencing inequality on a sequence, or one symbolic step on a family");
  std::string vdc_seq, vdc_family, vdc_out;
  int vdc_column = 0;
  long long vdc_h = 0;
  bool vdc_h_set = false;
  vdc_cmd->set_help_flag("--help", "print help");  // frees -h for the shift value
  auto* vdc_seq_opt = vdc_cmd->add_option("--seq", vdc_seq, "sequence JSON file");
  auto* vdc_fam_opt = vdc_cmd->add_option("--family", vdc_family, "family JSON file");
  vdc_cmd->add_option("--column", vdc_column, "column to subtract (family mode)");
  vdc_cmd->add_option("--h", vdc_h, "integer shift (family mode; default: formal h)")
      ->each([&](const std::string&) { vdc_h_set = true; });
  vdc_cmd->add_option("--out", vdc_out, "report path (default: stdout)");
  vdc_seq_opt->excludes(vdc_fam_opt);
  vdc_cmd->callback([&] {
    auto t0 = Clock::now();
    json config, payload;
    if (!vdc_seq.empty()) {
      auto v = vector_sequence_from_json(polyszem::io::read_json_file(vdc_seq));
      auto bound = polyszem::gowers::vdc_inequality(v);
      config = json{{"seq", vdc_seq}, {"out", vdc_out}};
      payload = json{{"lhs", bound.lhs},
                     {"rhs", bound.rhs},
                     {"constant", polyszem::gowers::kVdcConstant},
                     {"holds", bound.lhs <= polyszem::gowers::kVdcConstant * bound.rhs}};
    } else if (!vdc_family.empty()) {
      auto fam = polyszem::io::family_from_json(polyszem::io::read_json_file(vdc_family));
      auto image = vdc_h_set ? polyszem::pet::vdc_operation(fam, vdc_column, vdc_h)
                             : polyszem::pet::vdc_operation(fam, vdc_column);
      config = json{{"family", vdc_family},
                    {"column", vdc_column},
                    {"h", vdc_h_set ? json(vdc_h) : json("formal")},
                    {"out", vdc_out}};
      payload = json{{"m", image.m}, {"family", polyszem::io::family_to_json(image)}};
    } else {
      throw CLI::ValidationError("vdc", "needs --seq or --family");
    }
    emit_report(make_report("vdc", config, payload, t0), vdc_out);
  });

  // ---- primes-profile -------------------------------------------------------
  auto* prof_cmd = app.add_subcommand("primes-profile",
                                      "Box-norm uniformity profile of the normalized weight");
  long long prof_N = 0;
  int prof_w = 0, prof_d = 0, prof_threads = 1;
  std::string prof_out, prof_csv;
  prof_cmd->add_option("--w", prof_w, "sieve cutoff for the W product")->required();
  prof_cmd->add_option("--N", prof_N, "sample length per residue")->required();
  prof_cmd->add_option("--d", prof_d, "norm degree")->required();
  prof_cmd->add_option("--threads", prof_threads, "worker cap (default 1)");
  prof_cmd->add_option("--csv", prof_csv, "write the per-residue table as CSV");
  prof_cmd->add_option("--out", prof_out, "report path (default: stdout)");
  prof_cmd->callback([&] {
    auto t0 = Clock::now();
    long long limit = polyszem::checked_add(
        polyszem::checked_mul(small_W(prof_w), polyszem::checked_add(prof_N, 1)), 1);
    auto table = polyszem::primes::build_table(limit, prof_w);
    auto profile = polyszem::primes::uniformity_profile(table, prof_N, prof_d, prof_threads);
    if (!prof_csv.empty()) {
      std::vector<std::vector<double>> rows;
      for (auto [r, norm] : profile.per_r) rows.push_back({static_cast<double>(r), norm});
      polyszem::io::write_csv(resolve_out(prof_csv), {"r", "norm"}, rows);
    }
    json config{{"w", prof_w},       {"N", prof_N},     {"d", prof_d},
                {"threads", prof_threads}, {"csv", prof_csv}, {"out", prof_out}};
    emit_report(make_report("primes-profile", config, polyszem::io::profile_to_json(profile), t0),
                prof_out);
  });

  // ---- compare ---------------------------------------------------------------
  auto* cmp_cmd = app.add_subcommand(
      "compare", "Prime average vs weighted full average of a bounded sequence");
  long long cmp_N = 0;
  int cmp_w = 3;
  std::string cmp_a = "one", cmp_seq, cmp_out;
  cmp_cmd->add_option("--N", cmp_N, "average length")->required();
  cmp_cmd->add_option("--a", cmp_a, "builtin sequence: one | alt")
      ->check(CLI::IsMember({"one", "alt"}));
  cmp_cmd->add_option("--seq", cmp_seq, "sequence JSON file overriding --a");
  cmp_cmd->add_option("--w", cmp_w, "sieve cutoff for the table (default 3)");
  cmp_cmd->add_option("--out", cmp_out, "report path (default: stdout)");
  cmp_cmd->callback([&] {
    auto t0 = Clock::now();
    auto table = polyszem::primes::build_table(std::max(cmp_N, 100LL), cmp_w);
    std::function<std::complex<double>(long long)> fn;
    if (!cmp_seq.empty()) {
      auto a = polyszem::io::sequence_from_json(polyszem::io::read_json_file(cmp_seq));
      if (a.n() < cmp_N) throw std::invalid_argument("sequence is shorter than N");
      fn = [a](long long n) { return a.values[static_cast<size_t>(n - 1)]; };
    } else if (cmp_a == "alt") {
      fn = [](long long n) { return std::complex<double>(n % 2 == 0 ? 1.0 : -1.0, 0.0); };
    } else {
      fn = [](long long) { return std::complex<double>(1.0, 0.0); };
    }
    auto detail = polyszem::primes::compare_prime_average_detail(table, fn, cmp_N);
    json config{{"N", cmp_N}, {"a", cmp_seq.empty() ? cmp_a : cmp_seq}, {"w", cmp_w},
                {"out", cmp_out}};
    json payload{{"prime_average", complex_json(detail.prime_average)},
                 {"weighted_average", complex_json(detail.weighted_average)},
                 {"difference", detail.difference}};
    emit_report(make_report("compare", config, payload, t0), cmp_out);
  });

  // ---- prop-key ----------------------------------------------------------------
  auto* prop_cmd = app.add_subcommand(
      "prop-key", "Per-residue discrepancy averages of a system along a family");
  std::string prop_system, prop_family, prop_polys, prop_obs, prop_out;
  long long prop_N = 0;
  int prop_w = 0, prop_threads = 1;
  prop_cmd->add_option("--system", prop_system, "rotation:M | torus:AxB | JSON file")->required();
  auto* prop_fam_opt = prop_cmd->add_option("--family", prop_family, "family JSON file");
  auto* prop_pol_opt = prop_cmd->add_option("--polys", prop_polys, "inline exponent polynomials");
  prop_cmd->add_option("--w", prop_w, "sieve cutoff for the W product")->required();
  prop_cmd->add_option("--N", prop_N, "average length")->required();
  prop_cmd->add_option("--obs", prop_obs, "observables JSON file (default: all ones)");
  prop_cmd->add_option("--threads", prop_threads, "worker cap (default 1)");
  prop_cmd->add_option("--out", prop_out, "report path (default: stdout)");
  prop_fam_opt->excludes(prop_pol_opt);
  prop_cmd->callback([&] {
    auto t0 = Clock::now();
    if (prop_family.empty() && prop_polys.empty())
      throw CLI::ValidationError("prop-key", "needs --family or --polys");
    auto sys = parse_system(prop_system);
    auto fam = family_from_flags(prop_family, prop_polys, sys.ell());
    auto fs = observables_from_flags(prop_obs, sys.size(), fam.m);
    long long limit = polyszem::checked_add(
        polyszem::checked_mul(small_W(prop_w), polyszem::checked_add(prop_N, 1)), 1);
    auto table = polyszem::primes::build_table(limit, prop_w);
    auto res = polyszem::dynamics::prop_key_experiment(sys, fs, fam, table, prop_N, prop_threads);
    json per_r = json::array();
    for (auto [r, norm] : res.per_r) per_r.push_back(json{{"r", r}, {"norm", norm}});
    json config{{"system", prop_system},
                {"family", prop_family.empty() ? prop_polys : prop_family},
                {"w", prop_w},
                {"N", prop_N},
                {"obs", prop_obs},
                {"threads", prop_threads},
                {"out", prop_out}};
    json payload{{"per_r", per_r}, {"max_norm", res.max_norm}};
    emit_report(make_report("prop-key", config, payload, t0), prop_out);
  });

  // ---- recurrence ---------------------------------------------------------------
  auto* rec_cmd = app.add_subcommand(
      "recurrence", "Average joint return measure of a set along a family");
  std::string rec_system, rec_A = "half", rec_family, rec_polys, rec_out;
  long long rec_N = 0;
  int rec_w = 3;
  bool rec_unweighted = false;
  rec_cmd->add_option("--system", rec_system, "rotation:M | torus:AxB | JSON file")->required();
  rec_cmd->add_option("--A", rec_A, "half | full | JSON file with indices");
  auto* rec_fam_opt = rec_cmd->add_option("--family", rec_family, "family JSON file");
  auto* rec_pol_opt = rec_cmd->add_option("--polys", rec_polys, "inline exponent polynomials");
  rec_cmd->add_option("--N", rec_N, "average length")->required();
  rec_cmd->add_option("--w", rec_w, "sieve cutoff for the weights (default 3)");
  rec_cmd->add_flag("--unweighted", rec_unweighted, "plain averages instead of prime weights");
  rec_cmd->add_option("--out", rec_out, "report path (default: stdout)");
  rec_fam_opt->excludes(rec_pol_opt);
  rec_cmd->callback([&] {
    auto t0 = Clock::now();
    if (rec_family.empty() && rec_polys.empty())
      throw CLI::ValidationError("recurrence", "needs --family or --polys");
    auto sys = parse_system(rec_system);
    auto fam = family_from_flags(rec_family, rec_polys, sys.ell());
    auto A = parse_event_set(rec_A, sys.size());
    std::vector<double> weights;
    if (!rec_unweighted) {
      long long limit = polyszem::checked_add(
          polyszem::checked_mul(small_W(rec_w), polyszem::checked_add(rec_N, 1)), 1);
      weights = w_trick_weights(polyszem::primes::build_table(limit, rec_w), rec_N);
    }
    double avg = polyszem::dynamics::recurrence_average(sys, A, fam, weights, rec_N);
    json config{{"system", rec_system},
                {"A", rec_A},
                {"family", rec_family.empty() ? rec_polys : rec_family},
                {"N", rec_N},
                {"w", rec_w},
                {"unweighted", rec_unweighted},
                {"out", rec_out}};
    json payload{{"average", avg},
                 {"measure_A", A.measure()},
                 {"weighted", !rec_unweighted}};
    emit_report(make_report("recurrence", config, payload, t0), rec_out);
  });

  // ---- cauchy ----------------------------------------------------------------
  auto* cau_cmd = app.add_subcommand(
      "cauchy", "Pairwise distances of weighted partial averages over an N grid");
  std::string cau_system, cau_family, cau_polys, cau_obs, cau_grid, cau_out, cau_csv;
  int cau_w = 3;
  cau_cmd->add_option("--system", cau_system, "rotation:M | torus:AxB | JSON file")->required();
  auto* cau_fam_opt = cau_cmd->add_option("--family", cau_family, "family JSON file");
  auto* cau_pol_opt = cau_cmd->add_option("--polys", cau_polys, "inline exponent polynomials");
  cau_cmd->add_option("--grid", cau_grid, "comma-separated average lengths")->required();
  cau_cmd->add_option("--obs", cau_obs, "observables JSON file (default: all ones)");
  cau_cmd->add_option("--w", cau_w, "sieve cutoff for the table (default 3)");
  cau_cmd->add_option("--csv", cau_csv, "write the distance matrix as CSV");
  cau_cmd->add_option("--out", cau_out, "report path (default: stdout)");
  cau_fam_opt->excludes(cau_pol_opt);
  cau_cmd->callback([&] {
    auto t0 = Clock::now();
    if (cau_family.empty() && cau_polys.empty())
      throw CLI::ValidationError("cauchy", "needs --family or --polys");
    auto sys = parse_system(cau_system);
    auto fam = family_from_flags(cau_family, cau_polys, sys.ell());
    auto fs = observables_from_flags(cau_obs, sys.size(), fam.m);
    auto grid = parse_grid(cau_grid);
    long long top = 0;
    for (long long g : grid) top = std::max(top, g);
    auto table = polyszem::primes::build_table(std::max(top, 100LL), cau_w);
    auto diag = polyszem::dynamics::cauchy_diagnostic(sys, fs, fam, table, grid);
    if (!cau_csv.empty()) {
      std::vector<std::string> header{"N"};
      for (long long g : grid) header.push_back(std::to_string(g));
      std::vector<std::vector<double>> rows;
      for (size_t i = 0; i < diag.grid.size(); ++i) {
        std::vector<double> row{static_cast<double>(diag.grid[i])};
        row.insert(row.end(), diag.distances[i].begin(), diag.distances[i].end());
        rows.push_back(std::move(row));
      }
      polyszem::io::write_csv(resolve_out(cau_csv), header, rows);
    }
    json config{{"system", cau_system},
                {"family", cau_family.empty() ? cau_polys : cau_family},
                {"grid", grid},
                {"obs", cau_obs},
                {"w", cau_w},
                {"csv", cau_csv},
                {"out", cau_out}};
    json payload{{"grid", diag.grid}, {"distances", diag.distances}};
    emit_report(make_report("cauchy", config, payload, t0), cau_out);
  });

  // ---- search ---------------------------------------------------------------
  auto* sea_cmd = app.add_subcommand(
      "search", "Shifted-prime pattern search over a windowed set");
  std::string sea_set, sea_polys, sea_out, sea_csv;
  int sea_shift = 0, sea_w = 3;
  long long sea_limit = 1000;
  double sea_threshold = 0.01;
  sea_cmd->add_option("--set", sea_set, "set file (.json or tuples per line)")->required();
  sea_cmd->add_option("--polys", sea_polys, "shift polynomials, e.g. \"n^2;n\"")->required();
  sea_cmd->add_option("--shift", sea_shift, "-1 or +1 around each prime")->required();
  sea_cmd->add_option("--threshold", sea_threshold, "keep densities >= this (default 0.01)");
  sea_cmd->add_option("--limit", sea_limit, "scan primes up to this bound (default 1000)");
  sea_cmd->add_option("--w", sea_w, "sieve cutoff for the table (default 3)");
  sea_cmd->add_option("--csv", sea_csv, "write hits as CSV");
  sea_cmd->add_option("--out", sea_out, "report path (default: stdout)");
  sea_cmd->callback([&] {
    auto t0 = Clock::now();
    auto E = polyszem::io::load_set(sea_set);
    auto spec = polyszem::patterns::PatternSpec::parse(sea_polys, E.ell());
    auto table = polyszem::primes::build_table(std::max(sea_limit, 10LL), sea_w);
    auto res = polyszem::patterns::shifted_prime_search(E, spec, table, sea_shift, sea_threshold);
    if (!sea_csv.empty()) {
      std::vector<std::vector<double>> rows;
      for (const auto& h : res.hits)
        rows.push_back({static_cast<double>(h.prime), static_cast<double>(h.n), h.density});
      polyszem::io::write_csv(resolve_out(sea_csv), {"prime", "n", "density"}, rows);
    }
    json hits = json::array();
    for (const auto& h : res.hits)
      hits.push_back(json{{"prime", h.prime}, {"n", h.n}, {"density", h.density}});
    json config{{"set", sea_set},       {"polys", sea_polys},   {"shift", sea_shift},
                {"threshold", sea_threshold}, {"limit", sea_limit}, {"w", sea_w},
                {"csv", sea_csv},       {"out", sea_out}};
    json payload{{"hits", hits},
                 {"hit_count", static_cast<long long>(res.hits.size())},
                 {"skipped_window", res.skipped_window}};
    emit_report(make_report("search", config, payload, t0), sea_out);
  });

  // ---- correspondence ----------------------------------------------------------
  auto* cor_cmd = app.add_subcommand(
      "correspondence", "Windowed intersection density vs its torus counterpart");
  std::string cor_set, cor_polys, cor_out;
  long long cor_n = 0;
  cor_cmd->add_option("--set", cor_set, "set file (.json or tuples per line)")->required();
  cor_cmd->add_option("--polys", cor_polys, "shift polynomials, e.g. \"n^2;n\"")->required();
  cor_cmd->add_option("--n", cor_n, "evaluation point of the shifts")->required();
  cor_cmd->add_option("--out", cor_out, "report path (default: stdout)");
  cor_cmd->callback([&] {
    auto t0 = Clock::now();
    auto E = polyszem::io::load_set(cor_set);
    auto spec = polyszem::patterns::PatternSpec::parse(cor_polys, E.ell());
    auto res = polyszem::patterns::correspondence_check(E, spec, cor_n);
    json config{{"set", cor_set}, {"polys", cor_polys}, {"n", cor_n}, {"out", cor_out}};
    json payload{{"combinatorial", res.combinatorial},
                 {"dynamical", res.dynamical},
                 {"epsilon", res.epsilon},
                 {"within_tolerance", res.within_tolerance}};
    emit_report(make_report("correspondence", config, payload, t0), cor_out);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const polyszem::CostGuardError& e) {
    std::cerr << "cost guard: " << e.what() << "\n";
    return 3;
  } catch (const polyszem::NoReducingTuple& e) {
    std::cerr << "internal inconsistency: " << e.what() << "\n";
    return 1;
  } catch (const polyszem::WindowExhausted& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
