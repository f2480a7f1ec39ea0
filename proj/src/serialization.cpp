#include "fintriple/serialization.hpp"

#include <fstream>
#include <sstream>
#include <utility>

namespace fintriple {
namespace {

// `label` is the full path used in messages when it differs from the key.
const Json& require(const Json& j, const std::string& key, const std::string& label = "") {
  const std::string& name = label.empty() ? key : label;
  if (!j.is_object()) throw ParseError("'" + name + "': enclosing value is not an object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError("missing field '" + name + "'");
  return *it;
}

int require_count(const Json& j, const std::string& field, int minimum) {
  const Json& v = require(j, field);
  if (!v.is_number_integer())
    throw ParseError("field '" + field + "': expected an integer");
  const long long raw = v.get<long long>();
  if (raw < minimum || raw > 1 << 20)
    throw ParseError("field '" + field + "': value " + std::to_string(raw) + " out of range");
  return static_cast<int>(raw);
}

void require_schema_version(const Json& j) {
  const Json& v = require(j, "schema_version");
  if (!v.is_string() || v.get<std::string>() != "1")
    throw ParseError("field 'schema_version': expected the string \"1\"");
}

bool is_complex_pair(const Json& j) {
  return j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number();
}

Complex complex_from_json(const Json& j, const std::string& field) {
  if (!is_complex_pair(j))
    throw ParseError("field '" + field + "': expected a [re, im] pair");
  return Complex(j[0].get<double>(), j[1].get<double>());
}

int sign_from_json(const Json& j, const std::string& field) {
  if (j.is_number_integer()) {
    const int s = j.get<int>();
    if (s == 1 || s == -1) return s;
  }
  throw ParseError("field '" + field + "': expected 1 or -1");
}

Json parse_document(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // e.what() carries the byte/line position from the parser.
    throw ParseError(e.what());
  }
}

// Canonical layout helpers: one matrix row per line with compact [re, im]
// pairs, so golden files stay diffable without a line per number. dump() of
// each row reuses the library's shortest round-tripping double format.
void append_indent(std::string& out, int depth) { out.append(static_cast<size_t>(depth) * 2, ' '); }

void append_matrix(std::string& out, const ComplexMatrix& m, int depth) {
  out += "[\n";
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    append_indent(out, depth + 1);
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      row.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
    out += row.dump();
    out += r + 1 < m.rows() ? ",\n" : "\n";
  }
  append_indent(out, depth);
  out += "]";
}

}  // namespace

Json matrix_to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      row.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const Json& j, const std::string& field, int expected_dim) {
  if (!j.is_array() || j.empty())
    throw ParseError("field '" + field + "': expected a non-empty list of rows");
  const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
  if (!j[0].is_array() || j[0].empty())
    throw ParseError("field '" + field + "': row 0 is not a non-empty list");
  const Eigen::Index cols = static_cast<Eigen::Index>(j[0].size());
  ComplexMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Json& row = j[static_cast<size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      throw ParseError("field '" + field + "': row " + std::to_string(r) +
                       " has inconsistent length");
    for (Eigen::Index c = 0; c < cols; ++c)
      m(r, c) = complex_from_json(row[static_cast<size_t>(c)],
                                  field + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
  }
  if (expected_dim >= 0 && (rows != expected_dim || cols != expected_dim))
    throw ParseError("field '" + field + "': expected a " + std::to_string(expected_dim) + " x " +
                     std::to_string(expected_dim) + " matrix, got " + std::to_string(rows) +
                     " x " + std::to_string(cols));
  return m;
}

ComplexMatrix block_from_json(const Json& j, const std::string& field, int n) {
  if (j.is_number())
    return j.get<double>() * ComplexMatrix::Identity(n, n);
  if (is_complex_pair(j))
    return complex_from_json(j, field) * ComplexMatrix::Identity(n, n);
  return matrix_from_json(j, field, n);
}

std::string write_triple(const RealSpectralTriple& t) {
  std::string out = "{\n";
  out += "  \"schema_version\": \"1\",\n";
  out += "  \"dim_h\": " + std::to_string(t.dim_h) + ",\n";
  out += "  \"algebra_generators\": [";
  for (size_t i = 0; i < t.algebra_generators.size(); ++i) {
    out += i ? ",\n    " : "\n    ";
    append_matrix(out, t.algebra_generators[i], 2);
  }
  out += t.algebra_generators.empty() ? "],\n" : "\n  ],\n";
  out += "  \"dirac\": ";
  append_matrix(out, t.dirac, 1);
  out += ",\n";
  if (t.gamma) {
    out += "  \"gamma\": ";
    append_matrix(out, *t.gamma, 1);
    out += ",\n";
  }
  out += "  \"j_linear_part\": ";
  append_matrix(out, t.j.linear_part(), 1);
  out += ",\n";
  Json signs;
  signs["epsilon"] = t.signs.epsilon;
  signs["epsilon_prime"] = t.signs.epsilon_prime;
  if (t.signs.epsilon_double_prime) signs["epsilon_double_prime"] = *t.signs.epsilon_double_prime;
  out += "  \"signs\": " + signs.dump() + "\n";
  out += "}\n";
  return out;
}

RealSpectralTriple read_triple(const std::string& text) {
  const Json j = parse_document(text);
  require_schema_version(j);
  const int dim_h = require_count(j, "dim_h", 1);

  const Json& gens = require(j, "algebra_generators");
  if (!gens.is_array()) throw ParseError("field 'algebra_generators': expected a list");
  std::vector<ComplexMatrix> generators;
  generators.reserve(gens.size());
  for (size_t i = 0; i < gens.size(); ++i)
    generators.push_back(
        matrix_from_json(gens[i], "algebra_generators[" + std::to_string(i) + "]", dim_h));

  ComplexMatrix dirac = matrix_from_json(require(j, "dirac"), "dirac", dim_h);

  std::optional<ComplexMatrix> gamma;
  if (j.contains("gamma")) gamma = matrix_from_json(j["gamma"], "gamma", dim_h);

  ComplexMatrix c = matrix_from_json(require(j, "j_linear_part"), "j_linear_part", dim_h);

  const Json& sj = require(j, "signs");
  SignTriple signs;
  signs.epsilon = sign_from_json(require(sj, "epsilon", "signs.epsilon"), "signs.epsilon");
  signs.epsilon_prime =
      sign_from_json(require(sj, "epsilon_prime", "signs.epsilon_prime"), "signs.epsilon_prime");
  if (sj.contains("epsilon_double_prime"))
    signs.epsilon_double_prime =
        sign_from_json(sj["epsilon_double_prime"], "signs.epsilon_double_prime");
  // The grading sign travels with the grading.
  if (gamma.has_value() != signs.epsilon_double_prime.has_value())
    throw ParseError(gamma ? "field 'signs.epsilon_double_prime': required when gamma is present"
                           : "field 'signs.epsilon_double_prime': forbidden without gamma");

  return RealSpectralTriple{dim_h,          std::move(generators), std::move(dirac),
                            std::move(gamma), AntilinearMap(std::move(c)), signs};
}

std::string write_sm_params(const SMDiracParams& p) {
  const auto compact = [](const ComplexMatrix& m) { return matrix_to_json(m).dump(); };
  std::string out = "{\n";
  out += "  \"schema_version\": \"1\",\n";
  out += "  \"generations\": " + std::to_string(p.generations) + ",\n";
  out += "  \"alpha\": [\n";
  out += "    [" + compact(p.a13) + ", " + compact(p.a14) + "],\n";
  out += "    [" + compact(p.a23) + ", " + compact(p.a24) + "]\n";
  out += "  ],\n";
  out += "  \"beta\": [\n";
  out += "    [" + compact(p.b13) + ", " + compact(p.b14) + "],\n";
  out += "    [" + compact(p.b23) + ", " + compact(p.b24) + "]\n";
  out += "  ],\n";
  out += "  \"delta\": {\n";
  out += "    \"d12\": " + compact(p.d12) + ",\n";
  out += "    \"d13\": " + compact(p.d13) + ",\n";
  out += "    \"d14\": " + compact(p.d14) + ",\n";
  out += "    \"d21\": " + compact(p.d21) + ",\n";
  out += "    \"d22\": " + compact(p.d22) + ",\n";
  out += "    \"d23\": " + compact(p.d23) + ",\n";
  out += "    \"d24\": " + compact(p.d24) + "\n";
  out += "  },\n";
  out += "  \"upsilon_r\": " + compact(p.yr) + "\n";
  out += "}\n";
  return out;
}

Json params_to_json(const SMDiracParams& p) {
  Json j;
  j["schema_version"] = "1";
  j["generations"] = p.generations;
  j["alpha"] = Json::array({Json::array({matrix_to_json(p.a13), matrix_to_json(p.a14)}),
                            Json::array({matrix_to_json(p.a23), matrix_to_json(p.a24)})});
  j["beta"] = Json::array({Json::array({matrix_to_json(p.b13), matrix_to_json(p.b14)}),
                           Json::array({matrix_to_json(p.b23), matrix_to_json(p.b24)})});
  Json delta;
  delta["d12"] = matrix_to_json(p.d12);
  delta["d13"] = matrix_to_json(p.d13);
  delta["d14"] = matrix_to_json(p.d14);
  delta["d21"] = matrix_to_json(p.d21);
  delta["d22"] = matrix_to_json(p.d22);
  delta["d23"] = matrix_to_json(p.d23);
  delta["d24"] = matrix_to_json(p.d24);
  j["delta"] = std::move(delta);
  j["upsilon_r"] = matrix_to_json(p.yr);
  return j;
}

SMDiracParams read_sm_params(const std::string& text) {
  const Json j = parse_document(text);
  require_schema_version(j);
  const int n = require_count(j, "generations", 1);
  SMDiracParams p = SMDiracParams::zero(n);

  const auto read_two_by_two = [&](const std::string& field, ComplexMatrix* row1col1,
                                   ComplexMatrix* row1col2, ComplexMatrix* row2col1,
                                   ComplexMatrix* row2col2) {
    const Json& v = require(j, field);
    if (!v.is_array() || v.size() != 2 || !v[0].is_array() || v[0].size() != 2 ||
        !v[1].is_array() || v[1].size() != 2)
      throw ParseError("field '" + field + "': expected a 2 x 2 array of blocks");
    *row1col1 = block_from_json(v[0][0], field + "[0][0]", n);
    *row1col2 = block_from_json(v[0][1], field + "[0][1]", n);
    *row2col1 = block_from_json(v[1][0], field + "[1][0]", n);
    *row2col2 = block_from_json(v[1][1], field + "[1][1]", n);
  };
  read_two_by_two("alpha", &p.a13, &p.a14, &p.a23, &p.a24);
  read_two_by_two("beta", &p.b13, &p.b14, &p.b23, &p.b24);

  const Json& delta = require(j, "delta");
  if (!delta.is_object()) throw ParseError("field 'delta': expected an object");
  const std::vector<std::pair<const char*, ComplexMatrix*>> slots = {
      {"d12", &p.d12}, {"d13", &p.d13}, {"d14", &p.d14}, {"d21", &p.d21},
      {"d22", &p.d22}, {"d23", &p.d23}, {"d24", &p.d24}};
  for (const auto& [name, slot] : slots) {
    const std::string label = std::string("delta.") + name;
    *slot = block_from_json(require(delta, name, label), label, n);
  }
  for (auto it = delta.begin(); it != delta.end(); ++it) {
    bool known = false;
    for (const auto& [name, slot] : slots) known = known || it.key() == name;
    if (!known) throw ParseError("field 'delta': unknown coupling '" + it.key() + "'");
  }

  p.yr = block_from_json(require(j, "upsilon_r"), "upsilon_r", n);
  return p;
}

std::string load_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (!in.good() && !in.eof()) throw ParseError("read failure on '" + path + "'");
  return std::move(buf).str();
}

void save_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot open '" + path + "' for writing");
  out << text;
  out.flush();
  if (!out.good()) throw ParseError("write failure on '" + path + "'");
}

RealSpectralTriple load_triple(const std::string& path) {
  try {
    return read_triple(load_text(path));
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

SMDiracParams load_sm_params(const std::string& path) {
  try {
    return read_sm_params(load_text(path));
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

}  // namespace fintriple
