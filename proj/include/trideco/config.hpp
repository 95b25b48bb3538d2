#pragma once

// JSON job configurations and the bundled presets.

#include <filesystem>
#include <fstream>
#include <numeric>
#include <set>

#include <json.hpp>

#include "trideco/triangular.hpp"

namespace trideco {

using json = nlohmann::json;

struct Budgets {
  std::size_t max_degree = 12;
  std::size_t oracle_dim = 64;
  std::size_t induced_dim = 4096;
};

inline const std::vector<std::string>& analysis_names() {
  static const std::vector<std::string> names = {"nichols", "build",  "simples", "characters",
                                                 "bgg",     "tensor", "rigid",   "coideal"};
  return names;
}

struct JobConfig {
  std::string name;
  int cyclotomic_order = 1;
  std::string base_kind;     // group_double | abelian_qt | explicit
  std::optional<FDHopf> group;  // K, when the base is D(K)
  QuasitriangularHopf qt;
  YDModule v;
  std::vector<std::string> analyses;
  Budgets budgets;
};

namespace detail {

inline Error invalid(const std::string& path, const std::string& what) {
  return config_error("ConfigInvalid", path + ": " + what);
}

inline const json& field(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object() || !j.contains(key)) throw invalid(path, "missing field '" + key + "'");
  return j.at(key);
}

inline long as_long(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw invalid(path, "expected an integer");
  return j.get<long>();
}

inline std::size_t as_size(const json& j, const std::string& path) {
  const long v = as_long(j, path);
  if (v < 0) throw invalid(path, "expected a nonnegative integer");
  return static_cast<std::size_t>(v);
}

inline Rational as_rational(const json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) {
    try {
      Rational r(j.get<std::string>());
      r.canonicalize();
      return r;
    } catch (const std::exception&) {
      throw invalid(path, "bad rational literal");
    }
  }
  throw invalid(path, "expected an integer or a rational string");
}

/// Literals: an integer, a rational string "p/q", {"zeta": k} for zeta_n^k with
/// n the field order (or "order" when given), or {"order": n, "coeffs": [...]}
/// in the power basis of Q(zeta_n). Every order must divide the field order.
inline Cyclotomic as_cyclotomic(const json& j, int field_order, const std::string& path) {
  if (!j.is_object()) return Cyclotomic(as_rational(j, path));
  const int order = j.contains("order") ? static_cast<int>(as_long(j.at("order"), path + ".order")) : field_order;
  if (order < 1) throw invalid(path, "order must be positive");
  if (field_order % order != 0)
    throw invalid(path, "root order " + std::to_string(order) + " does not divide cyclotomic_order " +
                            std::to_string(field_order));
  if (j.contains("zeta")) {
    Cyclotomic z = Cyclotomic::zeta(order, as_long(j.at("zeta"), path + ".zeta"));
    if (j.contains("scale")) z *= Cyclotomic(as_rational(j.at("scale"), path + ".scale"));
    return z;
  }
  const json& cs = field(j, "coeffs", path);
  if (!cs.is_array()) throw invalid(path + ".coeffs", "expected an array");
  Cyclotomic::Coeffs coeffs;
  for (std::size_t k = 0; k < cs.size(); ++k) coeffs.push_back(as_rational(cs[k], path + ".coeffs[" + std::to_string(k) + "]"));
  try {
    return Cyclotomic(order, std::move(coeffs));
  } catch (const Error& e) {
    throw invalid(path, e.what());
  }
}

inline Matrix as_matrix(const json& j, int field_order, const std::string& path, std::size_t rows, std::size_t cols) {
  if (!j.is_array() || j.size() != rows) throw invalid(path, "expected " + std::to_string(rows) + " rows");
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string rp = path + "[" + std::to_string(r) + "]";
    if (!j[r].is_array() || j[r].size() != cols) throw invalid(rp, "expected " + std::to_string(cols) + " entries");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = as_cyclotomic(j[r][c], field_order, rp + "[" + std::to_string(c) + "]");
  }
  return m;
}

inline std::vector<Matrix> as_action(const json& j, int field_order, const std::string& path, std::size_t count,
                                     std::size_t dim) {
  if (!j.is_array() || j.size() != count)
    throw invalid(path, "expected one matrix per basis element (" + std::to_string(count) + ")");
  std::vector<Matrix> out;
  for (std::size_t a = 0; a < count; ++a) out.push_back(as_matrix(j[a], field_order, path + "[" + std::to_string(a) + "]", dim, dim));
  return out;
}

inline long determinant_mod(std::vector<std::vector<long>> m, long n) {
  const std::size_t k = m.size();
  Matrix q(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) q(i, j) = Cyclotomic(m[i][j]);
  // Determinant by elimination over Q; the result is an integer.
  Rational det = 1;
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t p = c;
    while (p < k && q(p, c).is_zero()) ++p;
    if (p == k) return 0;
    if (p != c) {
      for (std::size_t j = 0; j < k; ++j) std::swap(q(p, j), q(c, j));
      det = -det;
    }
    det *= q(c, c).constant();
    for (std::size_t i = c + 1; i < k; ++i) {
      if (q(i, c).is_zero()) continue;
      const Cyclotomic f = q(i, c) * q(c, c).inverse();
      for (std::size_t j = c; j < k; ++j) q(i, j) -= f * q(c, j);
    }
  }
  const long d = det.get_num().get_si();
  return ((d % n) + n) % n;
}

inline FDHopf group_from_cayley(const json& base) {
  const json& t = field(base, "cayley", "base");
  if (!t.is_array() || t.empty()) throw invalid("base.cayley", "expected a nonempty square table");
  const std::size_t n = t.size();
  std::vector<std::vector<std::size_t>> table(n);
  for (std::size_t a = 0; a < n; ++a) {
    if (!t[a].is_array() || t[a].size() != n) throw invalid("base.cayley[" + std::to_string(a) + "]", "row length mismatch");
    for (std::size_t b = 0; b < n; ++b) table[a].push_back(as_size(t[a][b], "base.cayley"));
  }
  std::size_t identity = n;
  for (std::size_t e = 0; e < n && identity == n; ++e) {
    bool ok = true;
    for (std::size_t a = 0; a < n; ++a) ok = ok && table[e][a] == a && table[a][e] == a;
    if (ok) identity = e;
  }
  if (identity == n) throw invalid("base.cayley", "no identity element");
  std::vector<std::size_t> inv(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (table[a][b] == identity) inv[a] = b;
  for (auto x : inv)
    if (x == n) throw invalid("base.cayley", "an element has no inverse");
  std::vector<std::string> labels;
  if (base.contains("labels"))
    for (const auto& l : base.at("labels")) labels.push_back(l.get<std::string>());
  return group_algebra(table, inv, identity, labels);
}

/// Sparse structure constants: lists of [indices..., coefficient].
inline FDHopf explicit_hopf(const json& base, int field_order) {
  FDHopf h;
  h.dim = as_size(field(base, "dim", "base"), "base.dim");
  h.field_order = field_order;
  const std::size_t n = h.dim;
  auto entries = [&](const std::string& key, std::size_t arity) {
    const json& list = field(base, key, "base");
    std::vector<std::pair<std::vector<std::size_t>, Cyclotomic>> out;
    for (std::size_t e = 0; e < list.size(); ++e) {
      const std::string p = "base." + key + "[" + std::to_string(e) + "]";
      if (!list[e].is_array() || list[e].size() != arity + 1) throw invalid(p, "expected " + std::to_string(arity + 1) + " items");
      std::vector<std::size_t> idx;
      for (std::size_t k = 0; k < arity; ++k) {
        idx.push_back(as_size(list[e][k], p));
        if (idx.back() >= n) throw invalid(p, "basis index out of range");
      }
      out.emplace_back(idx, as_cyclotomic(list[e][arity], field_order, p));
    }
    return out;
  };
  h.mult.assign(n * n, Elem{});
  for (const auto& [i, c] : entries("mult", 3)) accumulate(h.mult[i[0] * n + i[1]], i[2], c);
  for (const auto& [i, c] : entries("unit", 1)) accumulate(h.unit, i[0], c);
  h.comult.assign(n, Tensor{});
  for (const auto& [i, c] : entries("comult", 3)) accumulate(h.comult[i[0]], Key{i[1], i[2]}, c);
  h.counit.assign(n, Cyclotomic());
  for (const auto& [i, c] : entries("counit", 1)) h.counit[i[0]] += c;
  h.antipode = Matrix(n, n);
  for (const auto& [i, c] : entries("antipode", 2)) h.antipode(i[1], i[0]) += c;
  const auto inv = inverse(h.antipode);
  if (!inv) throw invalid("base.antipode", "antipode is not invertible");
  h.antipode_inv = *inv;
  for (std::size_t a = 0; a < n; ++a) h.labels.push_back("e" + std::to_string(a));
  if (auto f = h.axiom_failure()) throw invalid("base", "not a Hopf algebra: " + *f);
  return h;
}

}  // namespace detail

inline JobConfig parse_config(const json& j) {
  using namespace detail;
  JobConfig cfg;
  cfg.name = j.contains("name") ? j.at("name").get<std::string>() : "job";
  const int order = static_cast<int>(as_long(field(field(j, "field", ""), "cyclotomic_order", "field"), "field.cyclotomic_order"));
  if (order < 1) throw invalid("field.cyclotomic_order", "must be positive");
  cfg.cyclotomic_order = order;

  const json& base = field(j, "base", "");
  cfg.base_kind = field(base, "kind", "base").get<std::string>();
  const json empty = json::object();
  const json& mod = j.contains("module") ? j.at("module") : empty;

  if (cfg.base_kind == "group_double") {
    FDHopf k = group_from_cayley(base);
    k.field_order = order;
    cfg.qt = drinfeld_double(k);
    cfg.qt.hopf.field_order = order;
    const std::size_t dim = as_size(field(mod, "dim", "module"), "module.dim");
    const json& degs = field(mod, "degrees", "module");
    if (!degs.is_array() || degs.size() != dim) throw invalid("module.degrees", "expected one group element per basis vector");
    std::vector<std::size_t> degrees;
    for (std::size_t i = 0; i < dim; ++i) {
      degrees.push_back(as_size(degs[i], "module.degrees"));
      if (degrees.back() >= k.dim) throw invalid("module.degrees", "group element out of range");
    }
    const auto action = as_action(field(mod, "action", "module"), order, "module.action", k.dim, dim);
    try {
      const YDModule yd = yd_over_group(k, action, degrees);
      cfg.v = yd_from_qt(cfg.qt, to_double_module(k, yd));
    } catch (const Error& e) {
      throw invalid("module", e.what());
    }
    cfg.group = std::move(k);
  } else if (cfg.base_kind == "abelian_qt") {
    const std::size_t theta = as_size(field(base, "theta", "base"), "base.theta");
    const long n = as_long(field(base, "N", "base"), "base.N");
    if (n < 1) throw invalid("base.N", "must be positive");
    if (order % n != 0) throw invalid("field.cyclotomic_order", "must be divisible by N = " + std::to_string(n));
    const json& ej = field(base, "exponents", "base");
    if (!ej.is_array() || ej.size() != theta) throw invalid("base.exponents", "expected a theta x theta matrix");
    std::vector<std::vector<long>> e(theta);
    for (std::size_t i = 0; i < theta; ++i) {
      if (!ej[i].is_array() || ej[i].size() != theta) throw invalid("base.exponents[" + std::to_string(i) + "]", "row length mismatch");
      for (std::size_t k = 0; k < theta; ++k) e[i].push_back(as_long(ej[i][k], "base.exponents"));
    }
    if (std::gcd(determinant_mod(e, n), n) != 1)
      throw invalid("base.exponents", "exponent matrix is not invertible mod N, so the bicharacter is degenerate");
    cfg.qt = qt_abelian(e, static_cast<std::size_t>(n));
    cfg.qt.hopf.field_order = order;
    std::vector<Matrix> action = abelian_module(e, static_cast<std::size_t>(n));
    if (mod.contains("action")) {
      const std::size_t dim = as_size(field(mod, "dim", "module"), "module.dim");
      action = as_action(mod.at("action"), order, "module.action", cfg.qt.hopf.dim, dim);
    }
    try {
      cfg.v = yd_from_qt(cfg.qt, action);
    } catch (const Error& e2) {
      throw invalid("module", e2.what());
    }
  } else if (cfg.base_kind == "explicit") {
    cfg.qt.hopf = explicit_hopf(base, order);
    const std::size_t n = cfg.qt.hopf.dim;
    const json& r = field(base, "R", "base");
    for (std::size_t e = 0; e < r.size(); ++e) {
      const std::string p = "base.R[" + std::to_string(e) + "]";
      if (!r[e].is_array() || r[e].size() != 3) throw invalid(p, "expected [i, j, coefficient]");
      const std::size_t a = as_size(r[e][0], p), b = as_size(r[e][1], p);
      if (a >= n || b >= n) throw invalid(p, "basis index out of range");
      accumulate(cfg.qt.R, Key{a, b}, as_cyclotomic(r[e][2], order, p));
    }
    const QtReport rep = verify_qt(cfg.qt);
    if (!rep.ok()) throw invalid("base.R", "not an R-matrix: " + rep.summary());
    const std::size_t dim = as_size(field(mod, "dim", "module"), "module.dim");
    const auto action = as_action(field(mod, "action", "module"), order, "module.action", n, dim);
    try {
      cfg.v = yd_from_qt(cfg.qt, action);
    } catch (const Error& e) {
      throw invalid("module", e.what());
    }
    if (mod.contains("coaction")) {
      // [m, h, m', c]: coaction(x_m) contains c e_h (x) x_m'.
      std::vector<Tensor> given(dim);
      const json& co = mod.at("coaction");
      for (std::size_t e = 0; e < co.size(); ++e) {
        const std::string p = "module.coaction[" + std::to_string(e) + "]";
        if (!co[e].is_array() || co[e].size() != 4) throw invalid(p, "expected [m, h, m', coefficient]");
        const std::size_t m = as_size(co[e][0], p), h = as_size(co[e][1], p), m2 = as_size(co[e][2], p);
        if (m >= dim || m2 >= dim || h >= n) throw invalid(p, "index out of range");
        accumulate(given[m], Key{h, m2}, as_cyclotomic(co[e][3], order, p));
      }
      if (given != cfg.v.coaction) throw invalid("module.coaction", "coaction disagrees with the one induced by R");
    }
  } else {
    throw invalid("base.kind", "unknown kind '" + cfg.base_kind + "'");
  }

  if (j.contains("analyses")) {
    std::set<std::string> seen;
    for (const auto& a : j.at("analyses")) {
      const std::string s = a.get<std::string>();
      const auto& names = analysis_names();
      if (std::find(names.begin(), names.end(), s) == names.end()) throw invalid("analyses", "unknown analysis '" + s + "'");
      if (seen.insert(s).second) cfg.analyses.push_back(s);
    }
  } else {
    cfg.analyses = analysis_names();
  }
  if (j.contains("budgets")) {
    const json& b = j.at("budgets");
    if (b.contains("max_degree")) cfg.budgets.max_degree = as_size(b.at("max_degree"), "budgets.max_degree");
    if (b.contains("oracle_dim")) cfg.budgets.oracle_dim = as_size(b.at("oracle_dim"), "budgets.oracle_dim");
    if (b.contains("induced_dim")) cfg.budgets.induced_dim = as_size(b.at("induced_dim"), "budgets.induced_dim");
  }
  return cfg;
}

inline json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "IoError", "cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw config_error("ConfigInvalid", path.string() + ": " + e.what());
  }
}

inline JobConfig load_config(const std::filesystem::path& path) {
  try {
    return parse_config(read_json_file(path));
  } catch (const json::exception& e) {
    throw config_error("ConfigInvalid", path.string() + ": " + e.what());
  }
}

#ifndef TRIDECO_PRESET_DIR
#define TRIDECO_PRESET_DIR "presets"
#endif

inline std::filesystem::path preset_dir() {
  if (const char* env = std::getenv("TRIDECO_PRESETS")) return env;
  return TRIDECO_PRESET_DIR;
}

/// Names of the bundled presets, sorted.
inline std::vector<std::string> preset_names() {
  std::vector<std::string> out;
  if (!std::filesystem::is_directory(preset_dir())) return out;
  for (const auto& e : std::filesystem::directory_iterator(preset_dir()))
    if (e.path().extension() == ".json") out.push_back(e.path().stem().string());
  std::sort(out.begin(), out.end());
  return out;
}

inline JobConfig load_preset(const std::string& name) {
  const auto path = preset_dir() / (name + ".json");
  if (!std::filesystem::exists(path)) throw config_error("ConfigInvalid", "unknown preset '" + name + "'");
  return load_config(path);
}

}  // namespace trideco
