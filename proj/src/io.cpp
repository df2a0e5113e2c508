#include "polyszem/io.hpp"

#include <fstream>
#include <sstream>

namespace polyszem::io {

namespace {

json intpoly_to_json(const IntPoly& p) {
  if (p.empty()) return json::array({0});
  json out = json::array();
  // coefficients beyond the 64-bit range travel as decimal strings
  for (const auto& c : p) {
    if (c.fits_ll())
      out.push_back(c.to_ll());
    else
      out.push_back(c.to_string());
  }
  return out;
}

IntPoly intpoly_from_json(const json& j) {
  IntPoly p;
  for (const auto& c : j) {
    if (c.is_string())
      p.push_back(BigInt::from_string(c.get<std::string>()));
    else
      p.push_back(BigInt(c.get<long long>()));
  }
  normalize(p);
  return p;
}

json shiftpoly_to_json(const pet::ShiftPoly& p) {
  json out = json::array();
  if (p.coeffs.empty()) out.push_back(intpoly_to_json({}));
  for (const auto& c : p.coeffs) out.push_back(intpoly_to_json(c));
  return out;
}

pet::ShiftPoly shiftpoly_from_json(const json& j) {
  pet::ShiftPoly p;
  for (const auto& c : j) p.coeffs.push_back(intpoly_from_json(c));
  p.normalize();
  return p;
}

}  // namespace

json family_to_json(const pet::PolyFamily& f) {
  f.validate();
  json entries = json::array();
  for (int i = 0; i < f.ell; ++i) {
    json row = json::array();
    for (int j = 0; j < f.m; ++j) row.push_back(shiftpoly_to_json(f.entries[i][j]));
    entries.push_back(std::move(row));
  }
  return json{{"ell", f.ell}, {"m", f.m}, {"entries", std::move(entries)}};
}

pet::PolyFamily family_from_json(const json& j) {
  pet::PolyFamily f(j.at("ell").get<int>(), j.at("m").get<int>());
  const json& entries = j.at("entries");
  if (static_cast<int>(entries.size()) != f.ell)
    throw std::invalid_argument("family row count does not match ell");
  for (int i = 0; i < f.ell; ++i) {
    if (static_cast<int>(entries[i].size()) != f.m)
      throw std::invalid_argument("family column count does not match m");
    for (int jj = 0; jj < f.m; ++jj) f.entries[i][jj] = shiftpoly_from_json(entries[i][jj]);
  }
  f.validate();
  return f;
}

json type_to_json(const pet::TypeMatrix& t) {
  json rows = json::array();
  for (const auto& row : t.w) rows.push_back(row);
  return rows;
}

json trace_to_json(const pet::PetTrace& tr) {
  json steps = json::array();
  for (const auto& st : tr.steps) {
    json rec{{"column", st.column}};
    if (st.h)
      rec["h"] = *st.h;
    else
      rec["h"] = "formal";
    rec["type"] = type_to_json(st.type);
    steps.push_back(std::move(rec));
  }
  return json{{"initial_type", type_to_json(tr.initial_type)},
              {"steps", std::move(steps)},
              {"degree_d", tr.degree_d()},
              {"gowers_degree", tr.gowers_degree()}};
}

json sequence_to_json(const gowers::ArithSequence& a) {
  json values = json::array();
  for (const auto& v : a.values) values.push_back(json::array({v.real(), v.imag()}));
  json out{{"N", a.n()}};
  out["modulus"] = a.modulus ? json(*a.modulus) : json(nullptr);
  out["values"] = std::move(values);
  return out;
}

std::complex<double> complex_value_from_json(const json& v) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2)
    return {v.at(0).get<double>(), v.at(1).get<double>()};
  throw std::invalid_argument("values must be numbers or [re, im] pairs");
}

gowers::ArithSequence sequence_from_json(const json& j) {
  gowers::ArithSequence a;
  const json& values = j.is_array() ? j : j.at("values");
  for (const auto& v : values) a.values.push_back(complex_value_from_json(v));
  if (j.is_object()) {
    if (j.contains("modulus") && !j.at("modulus").is_null())
      a.modulus = j.at("modulus").get<long long>();
    if (j.contains("N") && j.at("N").get<long long>() != a.n())
      throw std::invalid_argument("sequence length does not match N");
  }
  a.validate();
  return a;
}

json system_to_json(const dynamics::FiniteSystem& sys) {
  json maps = json::array();
  for (const auto& T : sys.maps()) maps.push_back(T);
  json out{{"size", sys.size()}, {"maps", std::move(maps)}};
  if (!sys.labels().empty()) out["labels"] = sys.labels();
  return out;
}

dynamics::FiniteSystem system_from_json(const json& j) {
  long long size = j.at("size").get<long long>();
  std::vector<std::vector<std::int32_t>> maps;
  for (const auto& T : j.at("maps")) maps.push_back(T.get<std::vector<std::int32_t>>());
  std::vector<std::string> labels;
  if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
  return dynamics::FiniteSystem(size, std::move(maps), std::move(labels));
}

json profile_to_json(const primes::UniformityProfile& p) {
  json per_r = json::array();
  for (const auto& [r, v] : p.per_r) per_r.push_back(json{{"r", r}, {"norm", v}});
  return json{{"w", p.w},   {"W", p.W},           {"N", p.N},
              {"d", p.d},   {"per_r", std::move(per_r)}, {"max", p.max_norm}};
}

patterns::WindowedSet set_from_json(const json& j) {
  patterns::Window w;
  for (const auto& r : j.at("window"))
    w.ranges.emplace_back(r.at(0).get<long long>(), r.at(1).get<long long>());
  int ell = j.at("ell").get<int>();
  if (ell != w.ell()) throw std::invalid_argument("set dimension does not match its window");
  if (j.contains("points")) {
    std::vector<patterns::Point> pts;
    for (const auto& p : j.at("points")) {
      patterns::Point q{0, 0, 0};
      if (static_cast<int>(p.size()) != ell)
        throw std::invalid_argument("set point has the wrong dimension");
      for (int i = 0; i < ell; ++i) q[static_cast<size_t>(i)] = p[i].get<long long>();
      pts.push_back(q);
    }
    return patterns::WindowedSet(std::move(w), std::move(pts));
  }
  if (j.contains("density"))
    return patterns::WindowedSet::random(std::move(w), j.at("density").get<double>(),
                                         j.value("seed", 0ULL));
  throw std::invalid_argument("set file needs either points or density");
}

patterns::WindowedSet load_set(const std::string& path) {
  if (path.size() >= 5 && path.substr(path.size() - 5) == ".json")
    return set_from_json(read_json_file(path));
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open set file: " + path);
  std::vector<patterns::Point> pts;
  int ell = 0;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    patterns::Point p{0, 0, 0};
    int k = 0;
    long long v;
    while (ls >> v) {
      if (k >= 3) throw std::invalid_argument("set points must have at most 3 coordinates");
      p[static_cast<size_t>(k++)] = v;
    }
    if (k == 0) continue;  // blank line
    if (ell == 0) ell = k;
    if (k != ell) throw std::invalid_argument("inconsistent point dimensions in set file");
    pts.push_back(p);
  }
  if (pts.empty()) throw std::invalid_argument("set file has no points");
  patterns::Window w;
  for (int i = 0; i < ell; ++i) {
    long long lo = pts[0][static_cast<size_t>(i)], hi = lo;
    for (const auto& p : pts) {
      lo = std::min(lo, p[static_cast<size_t>(i)]);
      hi = std::max(hi, p[static_cast<size_t>(i)]);
    }
    w.ranges.emplace_back(lo, hi);
  }
  return patterns::WindowedSet(std::move(w), std::move(pts));
}

std::vector<dynamics::Observable> observables_from_json(const json& j) {
  std::vector<dynamics::Observable> out;
  for (const auto& obs : j.at("observables")) {
    dynamics::Observable f;
    for (const auto& v : obs) f.values.push_back(complex_value_from_json(v));
    out.push_back(std::move(f));
  }
  return out;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  json j;
  in >> j;
  return j;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write file: " + path);
  out << text;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write file: " + path);
  for (size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << "\n";
  out.precision(17);
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << "\n";
  }
}

}  // namespace polyszem::io
