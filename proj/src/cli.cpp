#include "hlr3/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "hlr3/cohomology.hpp"
#include "hlr3/constructions.hpp"
#include "hlr3/deformations.hpp"
#include "hlr3/extensions.hpp"
#include "hlr3/fixtures.hpp"
#include "hlr3/io.hpp"

namespace hlr3 {

namespace {

using nlohmann::ordered_json;

std::size_t degree_bound() {
  const char* env = std::getenv("HLR3_MAX_DEGREE");
  if (env == nullptr || *env == '\0') return 2;
  char* end = nullptr;
  long v = std::strtol(env, &end, 10);
  if (end == nullptr || *end != '\0' || v < 0)
    throw ParseError("HLR3_MAX_DEGREE", "expected a nonnegative integer");
  return static_cast<std::size_t>(v);
}

bool looks_like_path(const std::string& ref) {
  return ref.find('/') != std::string::npos || ref.find(".json") != std::string::npos;
}

HLR3Algebra resolve_algebra(const std::string& ref) {
  if (!looks_like_path(ref)) {
    try {
      return fixture_by_name(ref);
    } catch (const std::invalid_argument&) {
      throw ParseError("algebra", "unknown fixture '" + ref + "' (paths need a / or .json)");
    }
  }
  return as_algebra(load_manifest(ref));
}

LeftModule resolve_module(const HLR3Algebra& alg, const std::string& ref) {
  if (!looks_like_path(ref)) {
    try {
      return module_by_name(alg, ref);
    } catch (const std::invalid_argument&) {
      throw ParseError("module", "unknown module '" + ref + "' (paths need a / or .json)");
    }
  }
  return as_module(load_manifest(ref));
}

ordered_json condition_json(const ConditionResult& c) {
  ordered_json out;
  out["name"] = c.name;
  out["passed"] = c.passed;
  if (!c.passed) {
    out["indices"] = c.indices;
    out["lhs"] = c.lhs;
    out["rhs"] = c.rhs;
  }
  return out;
}

ordered_json report_json(const VerificationReport& rep) {
  ordered_json out;
  out["passed"] = rep.passed();
  ordered_json conds = ordered_json::array();
  for (const ConditionResult& c : rep.conditions) conds.push_back(condition_json(c));
  out["conditions"] = std::move(conds);
  return out;
}

void print_report(const VerificationReport& rep, bool as_json, std::ostream& out) {
  if (as_json)
    out << report_json(rep).dump(2) << "\n";
  else
    out << rep.summary();
}

void write_or_print(const Manifest& m, const std::string& out_path, std::ostream& out) {
  if (out_path.empty())
    out << emit_manifest(m);
  else
    save_manifest(m, out_path);
}

nlohmann::json load_bare_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("file", "cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return nlohmann::json::parse(buf.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("", std::string("invalid JSON: ") + e.what());
  }
}

Matrix bare_matrix(const nlohmann::json& j, std::size_t rows, std::size_t cols,
                   const std::string& path) {
  if (!j.is_array() || j.size() != rows) throw ParseError(path, "expected a matrix");
  Matrix out(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const nlohmann::json& row = j[r];
    if (!row.is_array() || row.size() != cols)
      throw ParseError(path + "[" + std::to_string(r) + "]", "expected a matrix row");
    for (std::size_t c = 0; c < cols; ++c) {
      if (!row[c].is_string())
        throw ParseError(path + "[" + std::to_string(r) + "][" + std::to_string(c) + "]",
                         "expected a rational string");
      out.at(r, c) = parse_rational(
          row[c].get<std::string>(),
          path + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
    }
  }
  return out;
}

std::pair<std::size_t, std::size_t> parse_degrees(const std::string& spec) {
  std::size_t dots = spec.find("..");
  auto number = [](const std::string& s) -> std::size_t {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError("--degrees", "expected N or A..B");
    return static_cast<std::size_t>(std::stoul(s));
  };
  if (dots == std::string::npos) {
    std::size_t n = number(spec);
    return {n, n};
  }
  std::size_t lo = number(spec.substr(0, dots));
  std::size_t hi = number(spec.substr(dots + 2));
  if (lo > hi) throw ParseError("--degrees", "empty range");
  return {lo, hi};
}

struct CliState {
  std::ostream& out;
  std::ostream& err;
  bool json = false;
  int exit_code = 0;
};

void cmd_verify(CliState& st, const std::string& alg_ref, const std::string& mod_ref) {
  if (!mod_ref.empty()) {
    HLR3Algebra alg = resolve_algebra(alg_ref);
    LeftModule mod = resolve_module(alg, mod_ref);
    VerificationReport rep = module_check(alg, mod);
    print_report(rep, st.json, st.out);
    st.exit_code = rep.passed() ? 0 : 1;
    return;
  }
  if (looks_like_path(alg_ref)) {
    Manifest m = load_manifest(alg_ref);
    if (m.kind() == ManifestKind::extension) {
      VerificationReport rep = check_extension(as_extension(m));
      print_report(rep, st.json, st.out);
      st.exit_code = rep.passed() ? 0 : 1;
      return;
    }
  }
  HLR3Algebra alg = resolve_algebra(alg_ref);
  VerificationReport rep = verify_all(alg);
  print_report(rep, st.json, st.out);
  st.exit_code = rep.passed() ? 0 : 1;
}

void cmd_construct(CliState& st, const std::string& op, const std::vector<std::string>& in,
                   const std::string& out_path, bool admissible) {
  auto need = [&](std::size_t n) {
    if (in.size() != n)
      throw ParseError("--in", op + " needs " + std::to_string(n) + " input file(s)");
  };
  HLR3Algebra result;
  if (op == "twist") {
    need(2);
    HLR3Algebra alg = resolve_algebra(in[0]);
    nlohmann::json jm = load_bare_json(in[1]);
    if (!jm.is_object() || !jm.contains("phi") || !jm.contains("alpha"))
      throw ParseError("", "morphism file needs fields phi and alpha");
    Matrix phi = bare_matrix(jm["phi"], alg.A.dim, alg.A.dim, "phi");
    Matrix alpha = bare_matrix(jm["alpha"], alg.L_dim, alg.L_dim, "alpha");
    result = yau_twist(alg, phi, alpha);
  } else if (op == "tensor") {
    need(2);
    HLR3Algebra carrier = resolve_algebra(in[0]);
    HLR3Algebra base = resolve_algebra(in[1]);
    HomLie3 l3{carrier.L_dim, carrier.bracket, carrier.alpha};
    std::size_t total = base.A.dim * carrier.L_dim;
    Anchor rho = zero_anchor(total, base.A.dim);
    result = tensor_extension(l3, base.A, rho);
    if (admissible) {
      Anchor found =
          find_admissible_anchor(result.A, result.L_dim, result.bracket, result.alpha);
      result = tensor_extension(l3, base.A, found);
    }
  } else if (op == "fiber") {
    need(2);
    result = fiber_product(resolve_algebra(in[0]), resolve_algebra(in[1]));
  } else if (op == "semidirect") {
    need(1);
    result = semidirect_product(resolve_algebra(in[0]));
  } else if (op == "modsum") {
    need(2);
    HLR3Algebra alg = resolve_algebra(in[0]);
    LeftModule mod = resolve_module(alg, in[1]);
    result = module_semidirect_sum(alg, mod);
    VerificationReport rep = verify_all(result);
    if (!rep.passed()) {
      print_report(rep, st.json, st.out);
      st.exit_code = 1;
    }
  } else {
    throw ParseError("construct", "unknown operation '" + op + "'");
  }
  Manifest m;
  m.payload = std::move(result);
  write_or_print(m, out_path, st.out);
}

void cmd_cohomology(CliState& st, const std::string& alg_ref, const std::string& mod_ref,
                    const std::string& degrees) {
  HLR3Algebra alg = resolve_algebra(alg_ref);
  LeftModule mod = resolve_module(alg, mod_ref);
  auto [lo, hi] = parse_degrees(degrees);
  std::size_t bound = degree_bound();
  if (hi > bound)
    throw ParseError("--degrees", "degree " + std::to_string(hi) +
                                      " exceeds the bound " + std::to_string(bound) +
                                      " (set HLR3_MAX_DEGREE to raise it)");
  ordered_json summary;
  for (std::size_t n = lo; n <= hi; ++n) {
    CohomologyDims dims = cohomology_dim(alg, mod, n);
    if (st.json) {
      summary[std::to_string(n)] = {{"dimC", dims.dim_c},
                                    {"dimZ", dims.dim_z},
                                    {"dimB", dims.dim_b},
                                    {"dimH", dims.dim_h}};
    } else {
      st.out << "n=" << n << "  dim C=" << dims.dim_c << "  dim Z=" << dims.dim_z
             << "  dim B=" << dims.dim_b << "  dim H=" << dims.dim_h << "\n";
    }
  }
  if (st.json) st.out << summary.dump(2) << "\n";
}

void cmd_delta(CliState& st, const std::string& alg_ref, const std::string& mod_ref,
               const std::string& cochain_path, const std::string& out_path) {
  HLR3Algebra alg = resolve_algebra(alg_ref);
  LeftModule mod = resolve_module(alg, mod_ref);
  CochainPayload payload = as_cochain(load_manifest(cochain_path));
  std::size_t bound = degree_bound();
  if (payload.degree > bound)
    throw ParseError("degree", "cochain degree exceeds the bound (set HLR3_MAX_DEGREE)");
  Cochain f{payload.degree, payload.values};
  VerificationReport membership = check_cochain(alg, mod, f);
  if (!membership.passed()) {
    print_report(membership, st.json, st.out);
    st.exit_code = 1;
    return;
  }
  Cochain image = delta(alg, mod, f);
  bool canonical = is_cocycle(alg, mod, f);
  std::optional<bool> literal;
  if (payload.degree == 0) literal = check_0cocycle_literal(alg, mod, f);
  if (payload.degree == 1) literal = check_1cocycle_literal(alg, mod, f);
  if (st.json) {
    ordered_json j;
    j["canonical_cocycle"] = canonical;
    if (literal.has_value()) {
      j["literal_cocycle"] = *literal;
      j["verdicts_agree"] = canonical == *literal;
    }
    st.out << j.dump(2) << "\n";
  } else {
    st.out << "canonical cocycle (delta f = 0): " << (canonical ? "yes" : "no") << "\n";
    if (literal.has_value())
      st.out << "literal displayed condition: " << (*literal ? "yes" : "no")
             << "  (verdicts " << (canonical == *literal ? "agree" : "differ") << ")\n";
  }
  Manifest m;
  m.payload = CochainPayload{image.degree, payload.module_ref, image.values};
  write_or_print(m, out_path, st.out);
}

void cmd_extension(CliState& st, const std::string& op, const std::vector<std::string>& in,
                   const std::string& out_path) {
  auto need = [&](std::size_t n) {
    if (in.size() != n)
      throw ParseError("extension", op + " needs " + std::to_string(n) + " argument(s)");
  };
  if (op == "build") {
    need(3);
    HLR3Algebra alg = resolve_algebra(in[0]);
    LeftModule mod = resolve_module(alg, in[1]);
    CochainPayload payload = as_cochain(load_manifest(in[2]));
    if (payload.degree != 1) throw ParseError("degree", "extension cocycles have degree 1");
    ExtensionBuild build = build_extension(alg, mod, Cochain{1, payload.values});
    print_report(build.verification, st.json, st.out);
    Manifest m;
    m.payload = std::move(build.ext);
    write_or_print(m, out_path, st.out);
    st.exit_code = build.verification.passed() ? 0 : 1;
  } else if (op == "cocycle") {
    need(1);
    ExtensionDatum ext = as_extension(load_manifest(in[0]));
    SectionCocycle sc = section_to_cocycle(ext, canonical_section(ext));
    Manifest m;
    m.payload = CochainPayload{1, "fiber", sc.omega.values};
    write_or_print(m, out_path, st.out);
  } else if (op == "equiv") {
    need(2);
    ExtensionDatum a = as_extension(load_manifest(in[0]));
    ExtensionDatum b = as_extension(load_manifest(in[1]));
    std::optional<Cochain> nu = find_equivalence(a, b);
    if (!nu.has_value()) {
      st.err << "no equivalence exists\n";
      st.exit_code = 1;
      return;
    }
    Manifest m;
    m.payload = CochainPayload{0, "fiber", nu->values};
    write_or_print(m, out_path, st.out);
  } else if (op == "auts") {
    need(1);
    ExtensionDatum ext = as_extension(load_manifest(in[0]));
    std::size_t dim_aut = automorphism_space(ext).dim();
    std::size_t dim_z0 = cohomology_dim(ext.base, ext.fiber, 0).dim_z;
    std::size_t dim_h1 = cohomology_dim(ext.base, ext.fiber, 1).dim_h;
    if (st.json) {
      ordered_json j;
      j["dim_aut"] = dim_aut;
      j["dim_z0"] = dim_z0;
      j["dim_h1"] = dim_h1;
      st.out << j.dump(2) << "\n";
    } else {
      st.out << "dim automorphisms = " << dim_aut << "  dim Z^0 = " << dim_z0
             << "  dim H^1 = " << dim_h1 << "\n";
    }
  } else {
    throw ParseError("extension", "unknown operation '" + op + "'");
  }
}

DeformationSeries load_series(const HLR3Algebra& alg, const std::string& path,
                              bool with_symbols) {
  DeformationPayload payload = as_deformation(load_manifest(path));
  DeformationSeries series = series_from_payload(alg, payload);
  if (with_symbols) {
    for (std::size_t n = 1; n < series.terms.size(); ++n) {
      VerificationReport rep = check_multiderivation(alg, series.terms[n]);
      if (!rep.passed())
        throw PreconditionError("series term " + std::to_string(n) +
                                    " fails the multiderivation conditions",
                                rep);
    }
  }
  return series;
}

Manifest series_manifest(const DeformationSeries& series) {
  DeformationPayload payload;
  payload.order = series.order;
  bool any_symbol = false;
  std::vector<std::vector<Matrix>> symbols;
  for (std::size_t n = 1; n <= series.order; ++n) {
    payload.terms.push_back(series.terms[n].map);
    symbols.push_back(series.terms[n].symbol);
    for (const Matrix& s : series.terms[n].symbol)
      if (!s.is_zero()) any_symbol = true;
  }
  if (any_symbol) payload.symbols = std::move(symbols);
  Manifest m;
  m.payload = std::move(payload);
  return m;
}

void cmd_deform(CliState& st, const std::string& op, const std::vector<std::string>& in,
                const std::string& out_path, std::optional<std::size_t> order,
                const std::string& mode_name, bool with_symbols) {
  auto need = [&](std::size_t n) {
    if (in.size() != n)
      throw ParseError("deform", op + " needs " + std::to_string(n) + " argument(s)");
  };
  if (op == "check") {
    need(2);
    HLR3Algebra alg = resolve_algebra(in[0]);
    DeformationSeries series = load_series(alg, in[1], with_symbols);
    if (order.has_value()) {
      series.terms.resize(std::min(series.terms.size(), *order + 1),
                          zero_multiderivation(alg, 2));
      while (series.terms.size() < *order + 1)
        series.terms.push_back(zero_multiderivation(alg, 2));
      series.order = *order;
    }
    DeformationMode mode = DeformationMode::strict_order;
    if (mode_name == "full")
      mode = DeformationMode::full_truncation;
    else if (mode_name != "strict")
      throw ParseError("--mode", "expected strict or full");
    VerificationReport rep = check_deformation(alg, series, mode);
    print_report(rep, st.json, st.out);
    st.exit_code = rep.passed() ? 0 : 1;
  } else if (op == "infinitesimal") {
    need(2);
    HLR3Algebra alg = resolve_algebra(in[0]);
    DeformationSeries series = load_series(alg, in[1], with_symbols);
    InfinitesimalClass cls = infinitesimal_class(alg, series);
    if (st.json) {
      ordered_json j;
      j["trivial_to_order"] = cls.trivial_to_order;
      if (!cls.trivial_to_order) {
        j["order"] = cls.order;
        j["closed"] = cls.closed;
        j["bounding"] = cls.bounding;
        j["coboundary_dim"] = cls.coboundary_basis.size();
        j["rigid"] = cls.rigid;
      }
      st.out << j.dump(2) << "\n";
    } else if (cls.trivial_to_order) {
      st.out << "trivial to the series order\n";
    } else {
      st.out << "first nonzero term at order " << cls.order << "\n"
             << "closed under the deformation differential: " << (cls.closed ? "yes" : "no")
             << "\n"
             << "bounding (removable by an equivalence): " << (cls.bounding ? "yes" : "no")
             << "\n"
             << "ternary coboundary space dimension: " << cls.coboundary_basis.size() << "\n"
             << "rigid at this spot: " << (cls.rigid ? "yes" : "no") << "\n";
    }
    st.exit_code = cls.trivial_to_order || cls.closed ? 0 : 1;
  } else if (op == "equiv") {
    need(3);
    HLR3Algebra alg = resolve_algebra(in[0]);
    DeformationSeries series = load_series(alg, in[1], with_symbols);
    nlohmann::json jaut = load_bare_json(in[2]);
    if (!jaut.is_object() || !jaut.contains("terms"))
      throw ParseError("", "automorphism file needs field terms");
    const nlohmann::json& jt = jaut["terms"];
    if (!jt.is_array()) throw ParseError("terms", "expected an array");
    FormalAutomorphism aut;
    aut.order = series.order;
    for (std::size_t i = 0; i < jt.size(); ++i)
      aut.terms.push_back(bare_matrix(jt[i], alg.L_dim, alg.L_dim,
                                      "terms[" + std::to_string(i) + "]"));
    while (aut.terms.size() < aut.order) aut.terms.push_back(Matrix(alg.L_dim, alg.L_dim));
    if (aut.terms.size() > aut.order)
      throw ParseError("terms", "more terms than the series order");
    DeformationSeries moved = apply_equivalence(alg, series, aut);
    write_or_print(series_manifest(moved), out_path, st.out);
  } else if (op == "trivialize") {
    need(2);
    HLR3Algebra alg = resolve_algebra(in[0]);
    DeformationSeries series = load_series(alg, in[1], with_symbols);
    std::size_t n = 0;
    if (order.has_value()) {
      n = *order;
    } else {
      for (std::size_t k = 1; k <= series.order; ++k)
        if (!series.terms[k].map.is_zero()) {
          n = k;
          break;
        }
    }
    if (n == 0) {
      st.out << "series is already trivial to its order\n";
      return;
    }
    std::optional<Multiderivation> phi = trivializing_map(alg, series.terms[n]);
    if (!phi.has_value()) {
      st.err << "not trivializable at order " << n << "\n";
      st.exit_code = 1;
      return;
    }
    DeformationSeries moved = trivialize_step(alg, series, n, *phi);
    write_or_print(series_manifest(moved), out_path, st.out);
  } else {
    throw ParseError("deform", "unknown operation '" + op + "'");
  }
}

void cmd_fixtures(CliState& st, const std::string& op, const std::string& name,
                  const std::string& module_name, const std::string& out_path) {
  if (op == "list") {
    for (const NamedFixture& fx : all_fixtures()) st.out << fx.name << "\n";
    return;
  }
  if (op != "emit") throw ParseError("fixtures", "unknown operation '" + op + "'");
  if (name.empty()) throw ParseError("fixtures", "emit needs a fixture name");
  HLR3Algebra alg = fixture_by_name(name);
  Manifest m;
  if (module_name.empty()) {
    m.payload = std::move(alg);
  } else {
    m.payload = module_by_name(alg, module_name);
  }
  write_or_print(m, out_path, st.out);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CliState st{out, err};

  CLI::App app{"exact checker for structure constants of twisted triple brackets"};
  app.name("hlr3");
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", st.json, "machine-readable reports");

  std::string verify_alg;
  std::string verify_mod;
  CLI::App* verify = app.add_subcommand("verify", "check every defining axiom");
  verify->add_option("algebra", verify_alg, "fixture name or manifest path")->required();
  verify->add_option("--module", verify_mod, "also check this module over the algebra");
  verify->callback([&] { cmd_verify(st, verify_alg, verify_mod); });

  std::string construct_op;
  std::vector<std::string> construct_in;
  std::string construct_out;
  bool construct_admissible = false;
  CLI::App* construct = app.add_subcommand("construct", "build derived algebras");
  construct->add_option("operation", construct_op, "twist|tensor|fiber|semidirect|modsum")
      ->required();
  construct->add_option("--in", construct_in, "input files")->required();
  construct->add_option("--out", construct_out, "output manifest path");
  construct->add_flag("--admissible", construct_admissible,
                      "search for a nonzero admissible anchor (tensor only)");
  construct->callback(
      [&] { cmd_construct(st, construct_op, construct_in, construct_out, construct_admissible); });

  std::string coh_alg;
  std::string coh_mod;
  std::string coh_degrees = "0..2";
  CLI::App* coh = app.add_subcommand("cohomology", "dimensions of the cochain complex");
  coh->add_option("algebra", coh_alg)->required();
  coh->add_option("module", coh_mod, "trivial|adjoint|coefficients or a manifest path")
      ->required();
  coh->add_option("--degrees", coh_degrees, "N or A..B (default 0..2)");
  coh->callback([&] { cmd_cohomology(st, coh_alg, coh_mod, coh_degrees); });

  std::string delta_alg;
  std::string delta_mod;
  std::string delta_cochain;
  std::string delta_out;
  CLI::App* delta_cmd = app.add_subcommand("delta", "coboundary of a cochain");
  delta_cmd->add_option("algebra", delta_alg)->required();
  delta_cmd->add_option("module", delta_mod)->required();
  delta_cmd->add_option("cochain", delta_cochain, "cochain manifest path")->required();
  delta_cmd->add_option("--out", delta_out, "output manifest path");
  delta_cmd->callback([&] { cmd_delta(st, delta_alg, delta_mod, delta_cochain, delta_out); });

  std::string ext_op;
  std::vector<std::string> ext_in;
  std::string ext_out;
  CLI::App* ext = app.add_subcommand("extension", "abelian extensions from cocycles");
  ext->add_option("operation", ext_op, "build|cocycle|equiv|auts")->required();
  ext->add_option("inputs", ext_in, "operation inputs");
  ext->add_option("--out", ext_out, "output manifest path");
  ext->callback([&] { cmd_extension(st, ext_op, ext_in, ext_out); });

  std::string def_op;
  std::vector<std::string> def_in;
  std::string def_out;
  std::optional<std::size_t> def_order;
  std::string def_mode = "strict";
  bool def_symbols = false;
  CLI::App* deform = app.add_subcommand("deform", "formal deformations of the bracket");
  deform->add_option("operation", def_op, "check|infinitesimal|equiv|trivialize")->required();
  deform->add_option("inputs", def_in, "operation inputs");
  deform->add_option("--out", def_out, "output manifest path");
  deform->add_option("--order", def_order, "override the series order / step order");
  deform->add_option("--mode", def_mode, "strict|full (check only)");
  deform->add_flag("--with-symbols", def_symbols,
                   "enforce the multiderivation conditions on every stored term");
  deform->callback(
      [&] { cmd_deform(st, def_op, def_in, def_out, def_order, def_mode, def_symbols); });

  std::string fix_op;
  std::string fix_name;
  std::string fix_module;
  std::string fix_out;
  CLI::App* fixtures = app.add_subcommand("fixtures", "built-in worked examples");
  fixtures->add_option("operation", fix_op, "list|emit")->required();
  fixtures->add_option("name", fix_name, "fixture name (emit)");
  fixtures->add_option("--module", fix_module, "emit this module instead of the algebra");
  fixtures->add_option("--out", fix_out, "output manifest path");
  fixtures->callback([&] { cmd_fixtures(st, fix_op, fix_name, fix_module, fix_out); });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "input error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    err << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "input error: " << e.what() << "\n";
    return 2;
  } catch (const PreconditionError& e) {
    err << "mathematical failure: " << e.what() << "\n";
    const ConditionResult* f = e.report().first_failure();
    if (f != nullptr) err << f->describe() << "\n";
    return 1;
  } catch (const ContainmentError& e) {
    err << "mathematical failure: " << e.what() << "\n";
    return 1;
  }
  return st.exit_code;
}

}  // namespace hlr3
