// Copyright 2026 The sysid Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sysid/io.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace sysid {

using nlohmann::json;

namespace {

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& j, Index rows, Index cols, const std::string& name) {
  require(j.is_array() && static_cast<Index>(j.size()) == rows, ErrorCode::corrupt,
          name + ": expected " + std::to_string(rows) + " rows");
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const json& row = j[static_cast<std::size_t>(i)];
    require(row.is_array() && static_cast<Index>(row.size()) == cols, ErrorCode::corrupt,
            name + ": expected " + std::to_string(cols) + " columns");
    for (Index k = 0; k < cols; ++k) {
      const json& v = row[static_cast<std::size_t>(k)];
      require(v.is_number(), ErrorCode::corrupt, name + ": non-numeric entry");
      m(i, k) = v.get<double>();
    }
  }
  return m;
}

json vector_to_json(const Vector& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Vector vector_from_json(const json& j, const std::string& name) {
  require(j.is_array(), ErrorCode::corrupt, name + ": expected an array");
  Vector v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    require(j[i].is_number(), ErrorCode::corrupt, name + ": non-numeric entry");
    v(static_cast<Index>(i)) = j[i].get<double>();
  }
  return v;
}

json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorCode::corrupt, what + ": invalid JSON (" + e.what() + ")");
  }
}

template <typename T>
T field(const json& j, const char* key, const std::string& what) {
  require(j.is_object() && j.contains(key), ErrorCode::corrupt,
          what + ": missing field '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    fail(ErrorCode::corrupt, what + ": field '" + key + "' has the wrong type");
  }
}

void check_version(const json& j, const std::string& what) {
  const int v = field<int>(j, "format_version", what);
  require(v == kFormatVersion, ErrorCode::corrupt,
          what + ": unsupported format_version " + std::to_string(v));
}

json state_space_fields(const StateSpace& ss) {
  return {{"A", matrix_to_json(ss.A)}, {"B", matrix_to_json(ss.B)},
          {"C", matrix_to_json(ss.C)}, {"D", matrix_to_json(ss.D)}};
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorCode::io, "cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  require(!in.bad(), ErrorCode::io, "error reading '" + path + "'");
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  require(static_cast<bool>(out), ErrorCode::io, "cannot open '" + path + "' for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  out.flush();
  require(static_cast<bool>(out), ErrorCode::io, "error writing '" + path + "'");
}

// ---- systems ---------------------------------------------------------------

std::string system_to_json(const LtiSystem& sys) {
  sys.ss.validate();
  json j = {{"format_version", kFormatVersion},
            {"n", sys.ss.order()},
            {"m", sys.ss.inputs()},
            {"l", sys.ss.outputs()}};
  j["dt"] = sys.dt ? json(*sys.dt) : json(nullptr);
  j.update(state_space_fields(sys.ss));
  json gen = {{"kind", sys.generator.kind}};
  gen["seed"] = sys.generator.seed ? json(*sys.generator.seed) : json(nullptr);
  gen["params"] = json::object();
  for (const auto& [k, v] : sys.generator.params) gen["params"][k] = v;
  j["generator"] = gen;
  return j.dump(2);
}

LtiSystem system_from_json(const std::string& text) {
  const std::string what = "system JSON";
  const json j = parse_json(text, what);
  check_version(j, what);
  const auto n = field<Index>(j, "n", what);
  const auto m = field<Index>(j, "m", what);
  const auto l = field<Index>(j, "l", what);
  LtiSystem sys;
  sys.ss.A = matrix_from_json(j.at("A"), n, n, "A");
  sys.ss.B = matrix_from_json(j.at("B"), n, m, "B");
  sys.ss.C = matrix_from_json(j.at("C"), l, n, "C");
  sys.ss.D = matrix_from_json(j.at("D"), l, m, "D");
  if (j.contains("dt") && !j["dt"].is_null()) sys.dt = j["dt"].get<double>();
  if (j.contains("generator")) {
    const json& g = j["generator"];
    sys.generator.kind = g.value("kind", "");
    if (g.contains("seed") && !g["seed"].is_null()) sys.generator.seed = g["seed"].get<std::uint64_t>();
    if (g.contains("params"))
      for (const auto& [k, v] : g["params"].items()) sys.generator.params[k] = v.get<double>();
  }
  sys.ss.validate();
  return sys;
}

void save_system(const std::string& path, const LtiSystem& sys) { write_file(path, system_to_json(sys)); }
LtiSystem load_system(const std::string& path) { return system_from_json(read_file(path)); }

// ---- models ----------------------------------------------------------------

std::string model_to_json(const IdentifiedModel& model) {
  json j = {{"format_version", kFormatVersion},
            {"order", model.order()},
            {"dims", {{"n", model.order()}, {"m", model.ss.inputs()}, {"l", model.ss.outputs()}}},
            {"formulation", to_string(model.formulation)},
            {"A_r", matrix_to_json(model.ss.A)},
            {"B_r", matrix_to_json(model.ss.B)},
            {"C_r", matrix_to_json(model.ss.C)},
            {"D_r", matrix_to_json(model.ss.D)},
            {"sigma", vector_to_json(model.sigma)},
            {"feedthrough_known", model.feedthrough_known}};
  const auto& p = model.provenance;
  json prov = {{"method", p.method}, {"r", p.r}, {"rho", p.rho}, {"q", p.q}, {"s", p.s}};
  prov["seed"] = p.seed ? json(*p.seed) : json(nullptr);
  j["provenance"] = prov;
  if (model.tangential) {
    const auto& t = *model.tangential;
    json tj = {{"lp", t.lp}, {"mp", t.mp}, {"sigma_w", vector_to_json(t.sigma_w)},
               {"sigma_e", vector_to_json(t.sigma_e)}};
    tj["epsilon"] = t.epsilon ? json(*t.epsilon) : json(nullptr);
    j["tangential"] = tj;
  }
  j["warnings"] = model.warnings;
  return j.dump(2);
}

IdentifiedModel model_from_json(const std::string& text) {
  const std::string what = "model JSON";
  const json j = parse_json(text, what);
  check_version(j, what);
  const json& dims = j.at("dims");
  const auto n = field<Index>(dims, "n", what);
  const auto m = field<Index>(dims, "m", what);
  const auto l = field<Index>(dims, "l", what);
  require(field<Index>(j, "order", what) == n, ErrorCode::corrupt, what + ": order != dims.n");
  IdentifiedModel model;
  model.ss.A = matrix_from_json(j.at("A_r"), n, n, "A_r");
  model.ss.B = matrix_from_json(j.at("B_r"), n, m, "B_r");
  model.ss.C = matrix_from_json(j.at("C_r"), l, n, "C_r");
  model.ss.D = matrix_from_json(j.at("D_r"), l, m, "D_r");
  model.sigma = vector_from_json(j.at("sigma"), "sigma");
  model.formulation = formulation_from_string(field<std::string>(j, "formulation", what));
  model.feedthrough_known = j.value("feedthrough_known", true);
  if (j.contains("provenance")) {
    const json& p = j["provenance"];
    model.provenance.method = p.value("method", "");
    model.provenance.r = p.value("r", Index{0});
    model.provenance.rho = p.value("rho", Index{0});
    model.provenance.q = p.value("q", Index{0});
    model.provenance.s = p.value("s", Index{0});
    if (p.contains("seed") && !p["seed"].is_null()) model.provenance.seed = p["seed"].get<std::uint64_t>();
  }
  if (j.contains("tangential")) {
    const json& t = j["tangential"];
    TangentialInfo info;
    info.lp = field<Index>(t, "lp", what);
    info.mp = field<Index>(t, "mp", what);
    info.sigma_w = vector_from_json(t.at("sigma_w"), "sigma_w");
    info.sigma_e = vector_from_json(t.at("sigma_e"), "sigma_e");
    if (t.contains("epsilon") && !t["epsilon"].is_null()) info.epsilon = t["epsilon"].get<double>();
    model.tangential = info;
  }
  if (j.contains("warnings")) model.warnings = j["warnings"].get<std::vector<std::string>>();
  model.ss.validate();
  return model;
}

void save_model(const std::string& path, const IdentifiedModel& model) {
  write_file(path, model_to_json(model));
}
IdentifiedModel load_model(const std::string& path) { return model_from_json(read_file(path)); }

// ---- diagnostics -----------------------------------------------------------

namespace {

class FiniteWriter {
 public:
  json operator()(double x, const std::string& name) {
    if (std::isfinite(x)) return x;
    warnings.push_back(name + " is " + (std::isnan(x) ? "NaN" : "infinite") + "; written as null");
    return nullptr;
  }
  json operator()(const std::optional<double>& x, const std::string& name) {
    return x ? (*this)(*x, name) : json(nullptr);
  }
  json operator()(const Vector& v, const std::string& name) {
    json out = json::array();
    for (Index i = 0; i < v.size(); ++i)
      out.push_back((*this)(v(i), name + "[" + std::to_string(i) + "]"));
    return out;
  }
  std::vector<std::string> warnings;
};

double number_or_nan(const json& j, const char* key) {
  if (!j.contains(key) || j[key].is_null()) return std::numeric_limits<double>::quiet_NaN();
  return j[key].get<double>();
}

std::optional<double> optional_number(const json& j, const char* key) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  return j[key].get<double>();
}

}  // namespace

std::string diagnostics_to_json(const DiagnosticsReport& d) {
  FiniteWriter w;
  const auto& a = d.assumptions;
  json j = {{"format_version", kFormatVersion},
            {"sigma", w(d.sigma, "sigma")},
            {"sin_theta_max", w(d.sin_theta_max, "sin_theta_max")},
            {"sin_theta_source", d.sin_theta_source},
            {"eta", w(d.eta, "eta")},
            {"upsilon_pinv_norm", w(d.upsilon_pinv_norm, "upsilon_pinv_norm")},
            {"kappa_W", w(d.kappa_w, "kappa_W")},
            {"theorem_bound", w(d.theorem_bound, "theorem_bound")},
            {"spectral_radius", w(d.spectral_radius, "spectral_radius")},
            {"stability_margin", w(d.stability_margin, "stability_margin")},
            {"residual_bound", w(d.residual_bound, "residual_bound")},
            {"gap", w(d.gap, "gap")}};
  j["assumptions"] = {{"A1", {{"pass", a.a1}, {"kappa_W", w(a.kappa_w, "A1.kappa_W")}, {"threshold", a.kappa_max}}},
                      {"A2", {{"pass", a.a2}, {"sigma_min", w(a.upsilon_sigma_min, "A2.sigma_min")},
                              {"cutoff", w(a.upsilon_cutoff, "A2.cutoff")}}},
                      {"A3", {{"pass", a.a3}, {"tail_ratio", w(a.tail_ratio, "A3.tail_ratio")},
                              {"threshold", a.tail_ratio_max}}},
                      {"A4", {{"pass", a.a4}, {"evaluated", a.a4_evaluated}, {"eta", w(a.eta, "A4.eta")}}}};
  j["timings"] = {{"operator_build", d.timings.operator_build},
                  {"svd", d.timings.svd},
                  {"recovery", d.timings.recovery}};
  std::vector<std::string> warnings = d.warnings;
  warnings.insert(warnings.end(), w.warnings.begin(), w.warnings.end());
  j["warnings"] = warnings;
  return j.dump(2);
}

DiagnosticsReport diagnostics_from_json(const std::string& text) {
  const std::string what = "diagnostics JSON";
  const json j = parse_json(text, what);
  check_version(j, what);
  DiagnosticsReport d;
  const json& sig = j.at("sigma");
  d.sigma.resize(static_cast<Index>(sig.size()));
  for (std::size_t i = 0; i < sig.size(); ++i)
    d.sigma(static_cast<Index>(i)) = sig[i].is_null() ? std::numeric_limits<double>::quiet_NaN()
                                                      : sig[i].get<double>();
  d.sin_theta_max = optional_number(j, "sin_theta_max");
  d.sin_theta_source = j.value("sin_theta_source", "unavailable");
  d.eta = optional_number(j, "eta");
  d.upsilon_pinv_norm = number_or_nan(j, "upsilon_pinv_norm");
  d.kappa_w = number_or_nan(j, "kappa_W");
  d.theorem_bound = optional_number(j, "theorem_bound");
  d.spectral_radius = number_or_nan(j, "spectral_radius");
  d.stability_margin = number_or_nan(j, "stability_margin");
  d.residual_bound = optional_number(j, "residual_bound");
  d.gap = optional_number(j, "gap");
  if (j.contains("assumptions")) {
    const json& a = j["assumptions"];
    auto& r = d.assumptions;
    r.a1 = a.at("A1").value("pass", false);
    r.kappa_w = number_or_nan(a["A1"], "kappa_W");
    r.kappa_max = number_or_nan(a["A1"], "threshold");
    r.a2 = a.at("A2").value("pass", false);
    r.upsilon_sigma_min = number_or_nan(a["A2"], "sigma_min");
    r.upsilon_cutoff = number_or_nan(a["A2"], "cutoff");
    r.a3 = a.at("A3").value("pass", false);
    r.tail_ratio = number_or_nan(a["A3"], "tail_ratio");
    r.tail_ratio_max = number_or_nan(a["A3"], "threshold");
    r.a4 = a.at("A4").value("pass", false);
    r.a4_evaluated = a["A4"].value("evaluated", false);
    r.eta = number_or_nan(a["A4"], "eta");
  }
  if (j.contains("timings")) {
    d.timings.operator_build = j["timings"].value("operator_build", 0.0);
    d.timings.svd = j["timings"].value("svd", 0.0);
    d.timings.recovery = j["timings"].value("recovery", 0.0);
  }
  if (j.contains("warnings")) d.warnings = j["warnings"].get<std::vector<std::string>>();
  return d;
}

void save_diagnostics(const std::string& path, const DiagnosticsReport& d) {
  write_file(path, diagnostics_to_json(d));
}

// ---- Markov files ----------------------------------------------------------

namespace {

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

void put_f64le(std::string& out, double x) {
  auto bits = std::bit_cast<std::uint64_t>(x);
  if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
  char buf[8];
  std::memcpy(buf, &bits, 8);
  out.append(buf, 8);
}

double get_f64le(const char* p) {
  std::uint64_t bits;
  std::memcpy(&bits, p, 8);
  if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
  return std::bit_cast<double>(bits);
}

}  // namespace

void save_markov(const std::string& path, const MarkovSequence& markov) {
  const Index ell = markov.ell(), m = markov.m();
  std::string payload;
  payload.reserve(static_cast<std::size_t>(8 * markov.size() * ell * m));
  for (const Matrix& h : markov.blocks())
    for (Index i = 0; i < ell; ++i)
      for (Index j = 0; j < m; ++j) put_f64le(payload, h(i, j));

  json side = {{"format_version", kFormatVersion},
               {"ell", ell},
               {"m", m},
               {"num_params", markov.size()},
               {"dtype", "f64le"},
               {"block_order", "k-ascending"},
               {"layout", "row-major-per-block"},
               {"has_feedthrough", markov.has_feedthrough()},
               {"payload", std::filesystem::path(path).filename().string()}};
  side["dt"] = markov.dt() ? json(*markov.dt()) : json(nullptr);
  write_file(path, payload);
  write_file(path + ".json", side.dump(2));
}

MarkovSequence load_markov(const std::string& path_in) {
  if (ends_with(path_in, ".csv")) return load_markov_csv(path_in);
  const std::string path = ends_with(path_in, ".json") ? path_in.substr(0, path_in.size() - 5) : path_in;
  const std::string what = "Markov sidecar '" + path + ".json'";
  const json side = parse_json(read_file(path + ".json"), what);
  check_version(side, what);
  require(field<std::string>(side, "dtype", what) == "f64le", ErrorCode::corrupt,
          what + ": unsupported dtype");
  require(field<std::string>(side, "block_order", what) == "k-ascending", ErrorCode::corrupt,
          what + ": unsupported block_order");
  require(field<std::string>(side, "layout", what) == "row-major-per-block", ErrorCode::corrupt,
          what + ": unsupported layout");
  const auto ell = field<Index>(side, "ell", what);
  const auto m = field<Index>(side, "m", what);
  const auto count = field<Index>(side, "num_params", what);
  require(ell >= 1 && m >= 1 && count >= 1, ErrorCode::corrupt, what + ": invalid dimensions");
  std::optional<double> dt;
  if (side.contains("dt") && !side["dt"].is_null()) dt = side["dt"].get<double>();
  const bool feedthrough = side.value("has_feedthrough", true);

  const std::string payload = read_file(path);
  const auto expected = static_cast<std::size_t>(8 * count * ell * m);
  require(payload.size() == expected, ErrorCode::corrupt,
          "Markov payload '" + path + "' is corrupt: expected " + std::to_string(expected) +
              " bytes, found " + std::to_string(payload.size()));
  std::vector<Matrix> blocks;
  blocks.reserve(static_cast<std::size_t>(count));
  const char* p = payload.data();
  for (Index k = 0; k < count; ++k) {
    Matrix h(ell, m);
    for (Index i = 0; i < ell; ++i)
      for (Index j = 0; j < m; ++j, p += 8) h(i, j) = get_f64le(p);
    blocks.push_back(std::move(h));
  }
  if (!feedthrough) {
    blocks.erase(blocks.begin());
    return MarkovSequence::from_h1(ell, m, std::move(blocks), dt);
  }
  return MarkovSequence(ell, m, std::move(blocks), dt);
}

// ---- CSV -------------------------------------------------------------------

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& field_in) {
  std::string f = field_in;
  while (!f.empty() && std::isspace(static_cast<unsigned char>(f.back()))) f.pop_back();
  std::size_t start = 0;
  while (start < f.size() && std::isspace(static_cast<unsigned char>(f[start]))) ++start;
  f = f.substr(start);
  if (f == "nan" || f == "NaN") return std::numeric_limits<double>::quiet_NaN();
  if (f == "inf") return std::numeric_limits<double>::infinity();
  if (f == "-inf") return -std::numeric_limits<double>::infinity();
  double x = 0.0;
  const auto res = std::from_chars(f.data(), f.data() + f.size(), x);
  require(res.ec == std::errc() && res.ptr == f.data() + f.size() && !f.empty(), ErrorCode::corrupt,
          "cannot parse '" + field_in + "' as a number");
  return x;
}

CsvTable parse_csv(const std::string& text, bool has_header) {
  CsvTable table;
  std::istringstream in(text);
  std::string line;
  bool header_done = !has_header;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    if (line[0] == '#') {
      table.comments.push_back(line.substr(line.size() > 1 && line[1] == ' ' ? 2 : 1));
      continue;
    }
    std::vector<std::string> fields;
    std::size_t pos = 0;
    while (true) {
      const std::size_t comma = line.find(',', pos);
      fields.push_back(line.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    if (!header_done) {
      table.header = std::move(fields);
      header_done = true;
    } else {
      table.rows.push_back(std::move(fields));
    }
  }
  return table;
}

void save_markov_csv(const std::string& path, const MarkovSequence& markov) {
  std::string out = "# sysid-markov ell=" + std::to_string(markov.ell()) + " m=" + std::to_string(markov.m());
  if (markov.dt()) out += " dt=" + format_double(*markov.dt());
  out += "\n";
  for (const Matrix& h : markov.blocks()) {
    for (Index i = 0; i < h.rows(); ++i)
      for (Index j = 0; j < h.cols(); ++j) {
        if (i || j) out += ",";
        out += format_double(h(i, j));
      }
    out += "\n";
  }
  write_file(path, out);
}

MarkovSequence load_markov_csv(const std::string& path) {
  const CsvTable table = parse_csv(read_file(path), false);
  Index ell = 0, m = 0;
  std::optional<double> dt;
  for (const auto& c : table.comments) {
    if (c.rfind("sysid-markov", 0) != 0) continue;
    std::istringstream words(c.substr(12));
    std::string word;
    while (words >> word) {
      const auto eq = word.find('=');
      if (eq == std::string::npos) continue;
      const std::string key = word.substr(0, eq), value = word.substr(eq + 1);
      if (key == "ell") ell = static_cast<Index>(parse_double(value));
      else if (key == "m") m = static_cast<Index>(parse_double(value));
      else if (key == "dt") dt = parse_double(value);
    }
  }
  require(ell >= 1 && m >= 1, ErrorCode::corrupt,
          "Markov CSV '" + path + "': missing '# sysid-markov ell=.. m=..' header");
  std::vector<Matrix> blocks;
  for (std::size_t k = 0; k < table.rows.size(); ++k) {
    const auto& row = table.rows[k];
    require(static_cast<Index>(row.size()) == ell * m, ErrorCode::corrupt,
            "Markov CSV '" + path + "': row " + std::to_string(k) + " has " +
                std::to_string(row.size()) + " values, expected " + std::to_string(ell * m));
    Matrix h(ell, m);
    for (Index i = 0; i < ell; ++i)
      for (Index j = 0; j < m; ++j) h(i, j) = parse_double(row[static_cast<std::size_t>(i * m + j)]);
    blocks.push_back(std::move(h));
  }
  require(!blocks.empty(), ErrorCode::corrupt, "Markov CSV '" + path + "': no blocks");
  return MarkovSequence(ell, m, std::move(blocks), dt);
}

// ---- comparison ------------------------------------------------------------

CompareReport compare_models(const IdentifiedModel& a, const IdentifiedModel& b, Index count) {
  CompareReport r;
  const ComplexVector ea = eig(a.ss.A).values, eb = eig(b.ss.A).values;
  r.sv_a_in_b = spectral_variation(ea, eb);
  r.sv_b_in_a = spectral_variation(eb, ea);
  r.hausdorff = std::max(r.sv_a_in_b, r.sv_b_in_a);
  r.markov_error = markov_relative_error(a.ss, b.ss, count, &r.warnings);
  return r;
}

std::string compare_report_csv(const CompareReport& report) {
  std::string out;
  out += "# hausdorff=" + format_double(report.hausdorff) + "\n";
  out += "# sv_a_in_b=" + format_double(report.sv_a_in_b) + "\n";
  out += "# sv_b_in_a=" + format_double(report.sv_b_in_a) + "\n";
  for (const auto& w : report.warnings) out += "# warning: " + w + "\n";
  out += "k,M_k\n";
  for (Index k = 0; k < report.markov_error.size(); ++k)
    out += std::to_string(k + 1) + "," + format_double(report.markov_error(k)) + "\n";
  return out;
}

CompareReport parse_compare_report(const std::string& text) {
  const CsvTable table = parse_csv(text, true);
  require(table.header == std::vector<std::string>{"k", "M_k"}, ErrorCode::corrupt,
          "compare report: expected header 'k,M_k'");
  CompareReport r;
  for (const auto& c : table.comments) {
    const auto eq = c.find('=');
    if (c.rfind("warning: ", 0) == 0) {
      r.warnings.push_back(c.substr(9));
    } else if (eq != std::string::npos) {
      const std::string key = c.substr(0, eq);
      const double value = parse_double(c.substr(eq + 1));
      if (key == "hausdorff") r.hausdorff = value;
      else if (key == "sv_a_in_b") r.sv_a_in_b = value;
      else if (key == "sv_b_in_a") r.sv_b_in_a = value;
    }
  }
  r.markov_error.resize(static_cast<Index>(table.rows.size()));
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    require(table.rows[i].size() == 2, ErrorCode::corrupt, "compare report: rows need two fields");
    require(static_cast<std::size_t>(parse_double(table.rows[i][0])) == i + 1, ErrorCode::corrupt,
            "compare report: k out of sequence");
    r.markov_error(static_cast<Index>(i)) = parse_double(table.rows[i][1]);
  }
  return r;
}

}  // namespace sysid
