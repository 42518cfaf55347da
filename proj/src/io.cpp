#include "curvjet/io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace curvjet {

namespace {

using Json = nlohmann::ordered_json;

std::string join_indices(std::initializer_list<int> one_based) {
  std::string out;
  for (int v : one_based) {
    if (!out.empty()) out += ',';
    out += std::to_string(v);
  }
  return out;
}

std::vector<int> parse_index_key(const std::string& key, std::size_t count,
                                 const std::string& where) {
  std::vector<int> out;
  std::stringstream ss(key);
  std::string piece;
  while (std::getline(ss, piece, ',')) {
    try {
      std::size_t used = 0;
      int v = std::stoi(piece, &used);
      if (used != piece.size()) throw std::invalid_argument(piece);
      out.push_back(v);
    } catch (const std::exception&) {
      throw DocumentError(where, "malformed index '" + key + "'");
    }
  }
  if (out.size() != count)
    throw DocumentError(where, "expected " + std::to_string(count) + " comma-joined integers, got '" +
                                   key + "'");
  return out;
}

Json matrix_to_json(const RatMatrix& m) {
  Json rows = Json::array();
  for (int r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(to_string(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

RatMatrix matrix_from_json(const Json& j, int rows, int cols, const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != rows)
    throw DocumentError(where, "expected " + std::to_string(rows) + " rows");
  RatMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    const Json& row = j[r];
    if (!row.is_array() || static_cast<int>(row.size()) != cols)
      throw DocumentError(where + "[" + std::to_string(r) + "]",
                          "expected " + std::to_string(cols) + " entries");
    for (int c = 0; c < cols; ++c) {
      if (!row[c].is_string())
        throw DocumentError(where + "[" + std::to_string(r) + "]", "entries must be rational strings");
      try {
        m(r, c) = parse_rational(row[c].get<std::string>());
      } catch (const std::invalid_argument& e) {
        throw DocumentError(where + "[" + std::to_string(r) + "]", e.what());
      }
    }
  }
  return m;
}

Json series_to_json(const TruncatedSeries& s) {
  Json obj = Json::object();
  for (const auto& [code, c] : s.terms()) {
    std::string key;
    for (int v = 0; v < s.vars(); ++v) {
      if (v) key += ',';
      key += std::to_string(mono::exponent(code, v));
    }
    obj[key] = to_string(c);
  }
  return obj;
}

TruncatedSeries series_from_json(const Json& j, int vars, int order, const std::string& where) {
  TruncatedSeries s(vars, order);
  if (!j.is_object()) throw DocumentError(where, "expected an object of exponent keys");
  for (const auto& [key, value] : j.items()) {
    std::vector<int> exps = parse_index_key(key, static_cast<std::size_t>(vars), where + "." + key);
    int deg = 0;
    for (int e : exps) {
      if (e < 0) throw DocumentError(where + "." + key, "negative exponent");
      deg += e;
    }
    if (deg > order) throw DocumentError(where + "." + key, "exponent beyond the truncation order");
    if (!value.is_string()) throw DocumentError(where + "." + key, "coefficient must be a string");
    Rational c;
    try {
      c = parse_rational(value.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw DocumentError(where + "." + key, e.what());
    }
    std::uint64_t code = mono::make(exps, vars);
    if (sgn(s.coeff(code)) != 0) throw DocumentError(where + "." + key, "duplicate exponent key");
    s.set_coeff(code, c);
  }
  return s;
}

Json series_matrix_to_json(const SeriesMatrix& m) {
  Json obj = Json::object();
  for (int r = 0; r < m.rows(); ++r)
    for (int c = r; c < m.cols(); ++c) {
      if (m(r, c).is_zero()) continue;
      obj[join_indices({r + 1, c + 1})] = series_to_json(m(r, c));
    }
  return obj;
}

SeriesMatrix series_matrix_from_json(const Json& j, int dim, int vars, int order,
                                     const std::string& where) {
  SeriesMatrix m(dim, dim, vars, order);
  if (!j.is_object()) throw DocumentError(where, "expected an object of index keys");
  for (const auto& [key, value] : j.items()) {
    std::vector<int> idx = parse_index_key(key, 2, where + "." + key);
    int r = idx[0] - 1, c = idx[1] - 1;
    if (r < 0 || c < 0 || r >= dim || c >= dim || r > c)
      throw DocumentError(where + "." + key, "index out of range (upper-triangular 1-based expected)");
    TruncatedSeries entry = series_from_json(value, vars, order, where + "." + key);
    m(r, c) = entry;
    if (c != r) m(c, r) = std::move(entry);
  }
  return m;
}

Json meta_to_json(const MetaMap& meta) {
  Json obj = Json::object();
  for (const auto& [k, v] : meta) obj[k] = v;
  return obj;
}

MetaMap meta_from_json(const Json& j, const std::string& where) {
  MetaMap meta;
  if (!j.is_object()) throw DocumentError(where, "expected an object");
  for (const auto& [k, v] : j.items()) {
    if (!v.is_string()) throw DocumentError(where + "." + k, "metadata values must be strings");
    meta[k] = v.get<std::string>();
  }
  return meta;
}

Json parse_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DocumentError("", e.what());
  }
}

void expect_keys(const Json& j, const std::vector<std::string>& allowed, const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const auto& a : allowed) ok = ok || key == a;
    if (!ok) throw DocumentError(where.empty() ? key : where + "." + key, "unknown key");
  }
}

int get_int(const Json& j, const std::string& key, int lo, int hi) {
  if (!j.contains(key)) throw DocumentError(key, "missing");
  if (!j[key].is_number_integer()) throw DocumentError(key, "expected an integer");
  int v = j[key].get<int>();
  if (v < lo || v > hi)
    throw DocumentError(key, "out of range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return v;
}

std::string get_string(const Json& j, const std::string& key) {
  if (!j.contains(key)) throw DocumentError(key, "missing");
  if (!j[key].is_string()) throw DocumentError(key, "expected a string");
  return j[key].get<std::string>();
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

constexpr const char* kModelSchema = "curvjet-model/1";
constexpr const char* kJetSchema = "curvjet-jet/1";
constexpr const char* kSolveSchema = "curvjet-solve/1";
constexpr const char* kReportSchema = "curvjet-report/1";

}  // namespace

std::string save_model_document(const ModelBundle& bundle, const MetaMap& meta) {
  const int n = bundle.model.form.dim;
  Json j;
  j["schema"] = kModelSchema;
  j["kind"] = to_string(bundle.kind);
  j["dim"] = n;
  j["eps"] = matrix_to_json(bundle.model.form.eps);
  Json a = Json::object();
  for (int i = 0; i < n; ++i)
    for (int jj = i + 1; jj < n; ++jj)
      for (int k = 0; k < n; ++k)
        for (int l = k + 1; l < n; ++l) {
          if (std::make_pair(i, jj) > std::make_pair(k, l)) continue;
          const Rational& v = bundle.model.tensor.at(i, jj, k, l);
          if (sgn(v) == 0) continue;
          a[join_indices({i + 1, jj + 1, k + 1, l + 1})] = to_string(v);
        }
  j["A"] = std::move(a);
  if (bundle.structure) j["J"] = matrix_to_json(bundle.structure->j);
  if (bundle.hyper) {
    j["J1"] = matrix_to_json(bundle.hyper->j[0]);
    j["J2"] = matrix_to_json(bundle.hyper->j[1]);
    j["J3"] = matrix_to_json(bundle.hyper->j[2]);
  }
  if (!meta.empty()) j["meta"] = meta_to_json(meta);
  return dump(j);
}

ModelBundle load_model_document(const std::string& text) {
  Json j = parse_text(text);
  if (!j.is_object()) throw DocumentError("", "expected a JSON object");
  expect_keys(j, {"schema", "kind", "dim", "eps", "A", "J", "J1", "J2", "J3", "meta"}, "");
  if (get_string(j, "schema") != kModelSchema)
    throw DocumentError("schema", "expected '" + std::string(kModelSchema) + "'");
  auto kind = model_kind_from_string(get_string(j, "kind"));
  if (!kind) throw DocumentError("kind", "unknown kind '" + get_string(j, "kind") + "'");
  const int n = get_int(j, "dim", 1, 12);

  ModelBundle out;
  out.kind = *kind;
  if (!j.contains("eps")) throw DocumentError("eps", "missing");
  RatMatrix eps = matrix_from_json(j["eps"], n, n, "eps");
  try {
    out.model.form = BilinearForm::from_matrix(eps);
  } catch (const std::invalid_argument& e) {
    throw DocumentError("eps", e.what());
  }

  out.model.tensor = CurvTensor(n);
  std::vector<bool> assigned(static_cast<std::size_t>(n) * n * n * n, false);
  auto flat = [n](int i, int jj, int k, int l) {
    return ((static_cast<std::size_t>(i) * n + jj) * n + k) * n + l;
  };
  if (!j.contains("A") || !j["A"].is_object()) throw DocumentError("A", "missing or not an object");
  for (const auto& [key, value] : j["A"].items()) {
    const std::string where = "A." + key;
    std::vector<int> idx = parse_index_key(key, 4, where);
    for (int v : idx)
      if (v < 1 || v > n) throw DocumentError(where, "index out of range 1.." + std::to_string(n));
    if (!value.is_string()) throw DocumentError(where, "coefficient must be a rational string");
    Rational val;
    try {
      val = parse_rational(value.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw DocumentError(where, e.what());
    }
    int i = idx[0] - 1, jj = idx[1] - 1, k = idx[2] - 1, l = idx[3] - 1;
    // The eight symmetry images with their signs.
    const std::array<std::pair<std::array<int, 4>, int>, 8> images = {{
        {{i, jj, k, l}, 1},
        {{jj, i, k, l}, -1},
        {{i, jj, l, k}, -1},
        {{jj, i, l, k}, 1},
        {{k, l, i, jj}, 1},
        {{l, k, i, jj}, -1},
        {{k, l, jj, i}, -1},
        {{l, k, jj, i}, 1},
    }};
    for (const auto& [im, sign] : images) {
      Rational target = val * sign;
      std::size_t pos = flat(im[0], im[1], im[2], im[3]);
      if (assigned[pos]) {
        if (out.model.tensor.at(im[0], im[1], im[2], im[3]) != target)
          throw DocumentError(where,
                              "inconsistent with an earlier entry's symmetry image at (" +
                                  join_indices({im[0] + 1, im[1] + 1, im[2] + 1, im[3] + 1}) + ")",
                              DocumentError::Kind::consistency);
      } else {
        out.model.tensor.set_entry(im[0], im[1], im[2], im[3], target);
        assigned[pos] = true;
      }
    }
  }

  auto load_j = [&](const char* key) {
    if (!j.contains(key)) throw DocumentError(key, "missing for kind '" + get_string(j, "kind") + "'");
    return matrix_from_json(j[key], n, n, key);
  };
  switch (*kind) {
    case ModelKind::plain:
      for (const char* key : {"J", "J1", "J2", "J3"})
        if (j.contains(key)) throw DocumentError(key, "not allowed for plain models");
      break;
    case ModelKind::hermitian:
      out.structure = HermitianStructure{load_j("J"), -1};
      break;
    case ModelKind::para:
      out.structure = HermitianStructure{load_j("J"), 1};
      break;
    case ModelKind::hyper_pseudo:
    case ModelKind::hyper_para:
      out.hyper = HyperStructure{
          {load_j("J1"), load_j("J2"), load_j("J3")},
          *kind == ModelKind::hyper_pseudo ? HyperKind::hyper_pseudo : HyperKind::hyper_para};
      break;
  }

  if (j.contains("meta")) {
    MetaMap meta = meta_from_json(j["meta"], "meta");
    auto it = meta.find("seed");
    if (it != meta.end()) {
      try {
        out.seed = std::stoull(it->second);
      } catch (const std::exception&) {
        // informational only
      }
    }
  }
  return out;
}

std::string save_jet_document(const MetricJet& g, const MetaMap& meta) {
  Json j;
  j["schema"] = kJetSchema;
  j["kind"] = "metric-jet";
  j["dim"] = g.dim();
  j["order"] = g.order();
  j["g"] = series_matrix_to_json(g.g);
  if (!meta.empty()) j["meta"] = meta_to_json(meta);
  return dump(j);
}

MetricJet load_jet_document(const std::string& text) {
  Json j = parse_text(text);
  if (!j.is_object()) throw DocumentError("", "expected a JSON object");
  expect_keys(j, {"schema", "kind", "dim", "order", "g", "meta"}, "");
  if (get_string(j, "schema") != kJetSchema)
    throw DocumentError("schema", "expected '" + std::string(kJetSchema) + "'");
  if (get_string(j, "kind") != "metric-jet") throw DocumentError("kind", "expected 'metric-jet'");
  const int n = get_int(j, "dim", 1, 12);
  const int order = get_int(j, "order", 0, mono::kMaxDegree);
  if (!j.contains("g")) throw DocumentError("g", "missing");
  SeriesMatrix g = series_matrix_from_json(j["g"], n, n, order, "g");
  try {
    return make_metric_jet(std::move(g));
  } catch (const std::invalid_argument& e) {
    throw DocumentError("g", e.what());
  }
}

std::string save_solve_document(const SolveDocument& doc) {
  Json j;
  j["schema"] = kSolveSchema;
  j["target"] = doc.target;
  j["dim"] = doc.h.dim();
  j["order"] = doc.h.order();
  j["h"] = series_matrix_to_json(doc.h.g);
  if (doc.phi) j["phi"] = series_to_json(*doc.phi);
  if (doc.xi) j["xi"] = series_to_json(*doc.xi);
  if (doc.eta) j["eta"] = series_to_json(*doc.eta);
  j["frame"] = matrix_to_json(doc.frame);
  if (!doc.meta.empty()) j["meta"] = meta_to_json(doc.meta);
  return dump(j);
}

SolveDocument load_solve_document(const std::string& text) {
  Json j = parse_text(text);
  if (!j.is_object()) throw DocumentError("", "expected a JSON object");
  expect_keys(j, {"schema", "target", "dim", "order", "h", "phi", "xi", "eta", "frame", "meta"}, "");
  if (get_string(j, "schema") != kSolveSchema)
    throw DocumentError("schema", "expected '" + std::string(kSolveSchema) + "'");
  SolveDocument out;
  out.target = get_string(j, "target");
  const int n = get_int(j, "dim", 1, 12);
  const int order = get_int(j, "order", 0, mono::kMaxDegree);
  if (!j.contains("h")) throw DocumentError("h", "missing");
  out.h = make_metric_jet(series_matrix_from_json(j["h"], n, n, order, "h"));
  if (j.contains("phi")) out.phi = series_from_json(j["phi"], n, order, "phi");
  if (j.contains("xi")) out.xi = series_from_json(j["xi"], n, order, "xi");
  if (j.contains("eta")) out.eta = series_from_json(j["eta"], n, order, "eta");
  if (!j.contains("frame")) throw DocumentError("frame", "missing");
  out.frame = matrix_from_json(j["frame"], n, n, "frame");
  if (j.contains("meta")) out.meta = meta_from_json(j["meta"], "meta");
  return out;
}

std::string save_report_document(const ReportDocument& report) {
  Json j;
  j["schema"] = kReportSchema;
  j["operation"] = report.operation;
  j["input_digest"] = report.input_digest;
  Json orders = Json::object();
  for (const auto& [k, v] : report.orders) orders[k] = v;
  j["orders"] = std::move(orders);
  Json verdicts = Json::object();
  for (const auto& [k, v] : report.verdicts) verdicts[k] = v;
  j["verdicts"] = std::move(verdicts);
  Json diagnostics = Json::object();
  for (const auto& [k, v] : report.diagnostics) diagnostics[k] = v;
  j["diagnostics"] = std::move(diagnostics);
  j["pass"] = report.pass;
  return dump(j);
}

bool all_verdicts_pass(const ReportDocument& report) {
  for (const auto& [k, v] : report.verdicts)
    if (!v) return false;
  return true;
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string digest_of(const std::string& bytes) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx",
                static_cast<unsigned long long>(fnv1a64(bytes)));
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << bytes;
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace curvjet
