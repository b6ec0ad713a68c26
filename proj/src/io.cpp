#include "hlr3/io.hpp"

#include <fstream>
#include <sstream>
#include <utility>

#include <json.hpp>

namespace hlr3 {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string child(const std::string& path, const std::string& name) {
  return path.empty() ? name : path + "." + name;
}

std::string element(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

const json& field(const json& obj, const std::string& name, const std::string& path) {
  if (!obj.is_object()) throw ParseError(path, "expected an object");
  auto it = obj.find(name);
  if (it == obj.end()) throw ParseError(child(path, name), "missing field");
  return *it;
}

std::size_t get_size(const json& j, const std::string& path) {
  if (!j.is_number_unsigned()) throw ParseError(path, "expected a nonnegative integer");
  return j.get<std::size_t>();
}

Rat get_rational(const json& j, const std::string& path) {
  if (!j.is_string()) throw ParseError(path, "expected a rational string");
  return parse_rational(j.get<std::string>(), path);
}

const json& get_array(const json& j, std::size_t len, const std::string& path) {
  if (!j.is_array()) throw ParseError(path, "expected an array");
  if (j.size() != len)
    throw ParseError(path, "expected " + std::to_string(len) + " entries, found " +
                               std::to_string(j.size()));
  return j;
}

Vec get_vec(const json& j, std::size_t len, const std::string& path) {
  get_array(j, len, path);
  Vec out(len);
  for (std::size_t i = 0; i < len; ++i) out[i] = get_rational(j[i], element(path, i));
  return out;
}

Matrix get_matrix(const json& j, std::size_t rows, std::size_t cols, const std::string& path) {
  get_array(j, rows, path);
  Matrix out(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    Vec row = get_vec(j[r], cols, element(path, r));
    for (std::size_t c = 0; c < cols; ++c) out.at(r, c) = row[c];
  }
  return out;
}

void fill_tensor(const json& j, Tensor& t, std::vector<std::size_t>& idx, std::size_t depth,
                 const std::string& path) {
  if (depth == t.shape.size()) {
    t.at(idx) = get_rational(j, path);
    return;
  }
  get_array(j, t.shape[depth], path);
  for (std::size_t i = 0; i < t.shape[depth]; ++i) {
    idx[depth] = i;
    fill_tensor(j[i], t, idx, depth + 1, element(path, i));
  }
}

Tensor get_tensor(const json& j, std::vector<std::size_t> shape, const std::string& path) {
  Tensor t(std::move(shape));
  std::vector<std::size_t> idx(t.shape.size(), 0);
  fill_tensor(j, t, idx, 0, path);
  return t;
}

/// Reads the shape off the nesting itself; every level must be a nonempty
/// array with uniform lengths.
Tensor infer_tensor(const json& j, std::size_t rank, const std::string& path) {
  std::vector<std::size_t> shape;
  const json* cursor = &j;
  std::string where = path;
  for (std::size_t d = 0; d < rank; ++d) {
    if (!cursor->is_array() || cursor->empty())
      throw ParseError(where, "expected a nonempty array");
    shape.push_back(cursor->size());
    cursor = &(*cursor)[0];
    where = element(where, 0);
  }
  return get_tensor(j, std::move(shape), path);
}

std::vector<std::vector<Matrix>> get_pair_table(const json& j, std::size_t l_dim,
                                                std::size_t m_dim, const std::string& path) {
  get_array(j, l_dim, path);
  std::vector<std::vector<Matrix>> out(l_dim);
  for (std::size_t i = 0; i < l_dim; ++i) {
    const json& row = get_array(j[i], l_dim, element(path, i));
    out[i].reserve(l_dim);
    for (std::size_t k = 0; k < l_dim; ++k)
      out[i].push_back(get_matrix(row[k], m_dim, m_dim, element(element(path, i), k)));
  }
  return out;
}

HLR3Algebra parse_algebra(const json& j, const std::string& path) {
  HLR3Algebra alg;
  const json& ja = field(j, "A", path);
  const std::string pa = child(path, "A");
  alg.A.dim = get_size(field(ja, "dim", pa), child(pa, "dim"));
  const std::size_t da = alg.A.dim;
  alg.A.mult = get_tensor(field(ja, "mult", pa), {da, da, da}, child(pa, "mult"));
  alg.A.unit = get_vec(field(ja, "unit", pa), da, child(pa, "unit"));
  alg.A.phi = get_matrix(field(ja, "phi", pa), da, da, child(pa, "phi"));

  alg.L_dim = get_size(field(j, "L_dim", path), child(path, "L_dim"));
  const std::size_t dl = alg.L_dim;
  alg.a_action.dim = dl;
  alg.a_action.action =
      get_tensor(field(j, "action", path), {da, dl, dl}, child(path, "action"));
  alg.bracket = get_tensor(field(j, "bracket", path), {dl, dl, dl, dl}, child(path, "bracket"));
  alg.alpha = get_matrix(field(j, "alpha", path), dl, dl, child(path, "alpha"));
  alg.anchor.rho = get_pair_table(field(j, "anchor", path), dl, da, child(path, "anchor"));
  return alg;
}

LeftModule parse_module(const json& j, const std::string& path) {
  LeftModule mod;
  mod.dim = get_size(field(j, "dim", path), child(path, "dim"));
  const std::size_t dm = mod.dim;
  const json& jact = field(j, "action", path);
  if (!jact.is_array() || jact.empty())
    throw ParseError(child(path, "action"), "expected a nonempty array");
  const std::size_t da = jact.size();
  mod.a_action.dim = dm;
  mod.a_action.action = get_tensor(jact, {da, dm, dm}, child(path, "action"));
  mod.beta = get_matrix(field(j, "beta", path), dm, dm, child(path, "beta"));
  const json& jpsi = field(j, "psi", path);
  if (!jpsi.is_array() || jpsi.empty())
    throw ParseError(child(path, "psi"), "expected a nonempty array");
  mod.psi = get_pair_table(jpsi, jpsi.size(), dm, child(path, "psi"));
  return mod;
}

CochainPayload parse_cochain(const json& j, const std::string& path) {
  CochainPayload c;
  c.degree = get_size(field(j, "degree", path), child(path, "degree"));
  const json& jref = field(j, "module_ref", path);
  if (!jref.is_string()) throw ParseError(child(path, "module_ref"), "expected a string");
  c.module_ref = jref.get<std::string>();
  std::size_t rank = c.degree == 0 ? 2 : 2 * c.degree + 2;
  c.values = infer_tensor(field(j, "values", path), rank, child(path, "values"));
  return c;
}

DeformationPayload parse_deformation(const json& j, const std::string& path) {
  DeformationPayload d;
  d.order = get_size(field(j, "order", path), child(path, "order"));
  const json& jterms = get_array(field(j, "terms", path), d.order, child(path, "terms"));
  for (std::size_t n = 0; n < d.order; ++n)
    d.terms.push_back(infer_tensor(jterms[n], 4, element(child(path, "terms"), n)));
  if (j.is_object() && j.contains("symbols")) {
    const std::string ps = child(path, "symbols");
    const json& jsym = get_array(j["symbols"], d.order, ps);
    std::vector<std::vector<Matrix>> all;
    for (std::size_t n = 0; n < d.order; ++n) {
      const std::string pn = element(ps, n);
      const std::size_t dl = d.terms[n].shape.empty() ? 0 : d.terms[n].shape[0];
      get_array(jsym[n], dl, pn);
      std::vector<Matrix> grid;
      for (std::size_t i = 0; i < dl; ++i) {
        const json& row = get_array(jsym[n][i], dl, element(pn, i));
        for (std::size_t k = 0; k < dl; ++k) {
          const json& cell = row[k];
          const std::string pc = element(element(pn, i), k);
          if (!cell.is_array() || cell.empty() || !cell[0].is_array() || cell[0].empty())
            throw ParseError(pc, "expected a matrix");
          grid.push_back(get_matrix(cell, cell.size(), cell[0].size(), pc));
        }
      }
      all.push_back(std::move(grid));
    }
    d.symbols = std::move(all);
  }
  return d;
}

ExtensionDatum parse_extension(const json& j, const std::string& path) {
  ExtensionDatum ext;
  ext.base = parse_algebra(field(j, "base", path), child(path, "base"));
  ext.fiber = parse_module(field(j, "fiber", path), child(path, "fiber"));
  ext.total = parse_algebra(field(j, "total", path), child(path, "total"));
  ext.incl = get_matrix(field(j, "incl", path), ext.total.L_dim, ext.fiber.dim,
                        child(path, "incl"));
  ext.proj = get_matrix(field(j, "proj", path), ext.base.L_dim, ext.total.L_dim,
                        child(path, "proj"));
  return ext;
}

ordered_json rational_json(const Rat& v) { return rational_to_string(v); }

ordered_json vec_json(const Vec& v) {
  ordered_json out = ordered_json::array();
  for (const Rat& x : v) out.push_back(rational_json(x));
  return out;
}

ordered_json matrix_json(const Matrix& m) {
  ordered_json out = ordered_json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    ordered_json row = ordered_json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(rational_json(m.at(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

ordered_json tensor_json_level(const Tensor& t, std::vector<std::size_t>& idx,
                               std::size_t depth) {
  if (depth == t.shape.size()) return rational_json(t.at(idx));
  ordered_json out = ordered_json::array();
  for (std::size_t i = 0; i < t.shape[depth]; ++i) {
    idx[depth] = i;
    out.push_back(tensor_json_level(t, idx, depth + 1));
  }
  return out;
}

ordered_json tensor_json(const Tensor& t) {
  std::vector<std::size_t> idx(t.shape.size(), 0);
  return tensor_json_level(t, idx, 0);
}

ordered_json pair_table_json(const std::vector<std::vector<Matrix>>& table) {
  ordered_json out = ordered_json::array();
  for (const auto& row : table) {
    ordered_json jrow = ordered_json::array();
    for (const Matrix& m : row) jrow.push_back(matrix_json(m));
    out.push_back(std::move(jrow));
  }
  return out;
}

ordered_json algebra_json(const HLR3Algebra& alg) {
  ordered_json out;
  out["A"] = {{"dim", alg.A.dim},
              {"mult", tensor_json(alg.A.mult)},
              {"unit", vec_json(alg.A.unit)},
              {"phi", matrix_json(alg.A.phi)}};
  out["L_dim"] = alg.L_dim;
  out["action"] = tensor_json(alg.a_action.action);
  out["bracket"] = tensor_json(alg.bracket);
  out["alpha"] = matrix_json(alg.alpha);
  out["anchor"] = pair_table_json(alg.anchor.rho);
  return out;
}

ordered_json module_json(const LeftModule& mod) {
  ordered_json out;
  out["dim"] = mod.dim;
  out["action"] = tensor_json(mod.a_action.action);
  out["beta"] = matrix_json(mod.beta);
  out["psi"] = pair_table_json(mod.psi);
  return out;
}

ordered_json cochain_json(const CochainPayload& c) {
  ordered_json out;
  out["degree"] = c.degree;
  out["module_ref"] = c.module_ref;
  out["values"] = tensor_json(c.values);
  return out;
}

ordered_json deformation_json(const DeformationPayload& d) {
  ordered_json out;
  out["order"] = d.order;
  ordered_json terms = ordered_json::array();
  for (const Tensor& t : d.terms) terms.push_back(tensor_json(t));
  out["terms"] = std::move(terms);
  if (d.symbols.has_value()) {
    ordered_json all = ordered_json::array();
    for (std::size_t n = 0; n < d.symbols->size(); ++n) {
      const std::vector<Matrix>& grid = (*d.symbols)[n];
      const std::size_t dl = d.terms[n].shape.empty() ? 0 : d.terms[n].shape[0];
      ordered_json jg = ordered_json::array();
      for (std::size_t i = 0; i < dl; ++i) {
        ordered_json row = ordered_json::array();
        for (std::size_t k = 0; k < dl; ++k) row.push_back(matrix_json(grid[i * dl + k]));
        jg.push_back(std::move(row));
      }
      all.push_back(std::move(jg));
    }
    out["symbols"] = std::move(all);
  }
  return out;
}

ordered_json extension_json(const ExtensionDatum& ext) {
  ordered_json out;
  out["base"] = algebra_json(ext.base);
  out["fiber"] = module_json(ext.fiber);
  out["total"] = algebra_json(ext.total);
  out["incl"] = matrix_json(ext.incl);
  out["proj"] = matrix_json(ext.proj);
  return out;
}

}  // namespace

ParseError::ParseError(std::string path, const std::string& message)
    : std::runtime_error(path.empty() ? message : path + ": " + message),
      path_(std::move(path)) {}

std::string kind_name(ManifestKind kind) {
  switch (kind) {
    case ManifestKind::algebra: return "algebra";
    case ManifestKind::module: return "module";
    case ManifestKind::cochain: return "cochain";
    case ManifestKind::deformation: return "deformation";
    case ManifestKind::extension: return "extension";
  }
  return "unknown";
}

Rat parse_rational(const std::string& text, const std::string& path) {
  std::size_t pos = 0;
  if (pos < text.size() && text[pos] == '-') ++pos;
  std::size_t digits = 0;
  while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
    ++pos;
    ++digits;
  }
  if (digits == 0) throw ParseError(path, "malformed rational '" + text + "'");
  bool has_den = false;
  if (pos < text.size() && text[pos] == '/') {
    has_den = true;
    ++pos;
    std::size_t den_digits = 0;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
      ++pos;
      ++den_digits;
    }
    if (den_digits == 0) throw ParseError(path, "malformed rational '" + text + "'");
  }
  if (pos != text.size()) throw ParseError(path, "malformed rational '" + text + "'");
  Rat value(text, 10);
  if (has_den && value.get_den() == 0)
    throw ParseError(path, "zero denominator in '" + text + "'");
  value.canonicalize();
  return value;
}

Manifest parse_manifest(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("", std::string("invalid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ParseError("", "expected a top-level object");
  const json& version = field(root, "format_version", "");
  if (!version.is_string() || version.get<std::string>() != "hlr3/1")
    throw ParseError("format_version", "unknown version");
  const json& jkind = field(root, "kind", "");
  if (!jkind.is_string()) throw ParseError("kind", "expected a string");
  const std::string kind = jkind.get<std::string>();
  const json& payload = field(root, "payload", "");
  Manifest m;
  if (kind == "algebra") {
    m.payload = parse_algebra(payload, "payload");
  } else if (kind == "module") {
    m.payload = parse_module(payload, "payload");
  } else if (kind == "cochain") {
    m.payload = parse_cochain(payload, "payload");
  } else if (kind == "deformation") {
    m.payload = parse_deformation(payload, "payload");
  } else if (kind == "extension") {
    m.payload = parse_extension(payload, "payload");
  } else {
    throw ParseError("kind", "unknown kind '" + kind + "'");
  }
  return m;
}

std::string emit_manifest(const Manifest& manifest) {
  ordered_json root;
  root["format_version"] = "hlr3/1";
  root["kind"] = kind_name(manifest.kind());
  switch (manifest.kind()) {
    case ManifestKind::algebra:
      root["payload"] = algebra_json(std::get<HLR3Algebra>(manifest.payload));
      break;
    case ManifestKind::module:
      root["payload"] = module_json(std::get<LeftModule>(manifest.payload));
      break;
    case ManifestKind::cochain:
      root["payload"] = cochain_json(std::get<CochainPayload>(manifest.payload));
      break;
    case ManifestKind::deformation:
      root["payload"] = deformation_json(std::get<DeformationPayload>(manifest.payload));
      break;
    case ManifestKind::extension:
      root["payload"] = extension_json(std::get<ExtensionDatum>(manifest.payload));
      break;
  }
  return root.dump(2) + "\n";
}

Manifest load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("file", "cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_manifest(buf.str());
}

void save_manifest(const Manifest& manifest, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("file", "cannot write '" + path + "'");
  out << emit_manifest(manifest);
}

namespace {

template <typename T>
const T& expect_kind(const Manifest& manifest, ManifestKind kind) {
  if (manifest.kind() != kind)
    throw ParseError("kind", "expected a " + kind_name(kind) + " manifest, found " +
                                 kind_name(manifest.kind()));
  return std::get<T>(manifest.payload);
}

}  // namespace

const HLR3Algebra& as_algebra(const Manifest& manifest) {
  return expect_kind<HLR3Algebra>(manifest, ManifestKind::algebra);
}
const LeftModule& as_module(const Manifest& manifest) {
  return expect_kind<LeftModule>(manifest, ManifestKind::module);
}
const CochainPayload& as_cochain(const Manifest& manifest) {
  return expect_kind<CochainPayload>(manifest, ManifestKind::cochain);
}
const DeformationPayload& as_deformation(const Manifest& manifest) {
  return expect_kind<DeformationPayload>(manifest, ManifestKind::deformation);
}
const ExtensionDatum& as_extension(const Manifest& manifest) {
  return expect_kind<ExtensionDatum>(manifest, ManifestKind::extension);
}

DeformationSeries series_from_payload(const HLR3Algebra& alg,
                                      const DeformationPayload& payload) {
  DeformationSeries series;
  series.order = payload.order;
  series.terms.push_back(structure_as_multiderivation(alg));
  for (std::size_t n = 0; n < payload.order; ++n) {
    Multiderivation d = zero_multiderivation(alg, 2);
    if (payload.terms[n].shape != d.map.shape)
      throw std::invalid_argument("deformation term " + std::to_string(n + 1) +
                                  " does not match the algebra dimension");
    d.map = payload.terms[n];
    if (payload.symbols.has_value()) {
      const std::vector<Matrix>& grid = (*payload.symbols)[n];
      if (grid.size() != d.symbol.size())
        throw std::invalid_argument("deformation symbols " + std::to_string(n + 1) +
                                    " do not match the algebra dimension");
      for (std::size_t i = 0; i < grid.size(); ++i) {
        if (grid[i].rows() != alg.A.dim || grid[i].cols() != alg.A.dim)
          throw std::invalid_argument("deformation symbols " + std::to_string(n + 1) +
                                      " do not match the base dimension");
        d.symbol[i] = grid[i];
      }
    }
    series.terms.push_back(std::move(d));
  }
  return series;
}

}  // namespace hlr3
