#pragma once

// The batch pipeline behind the CLI: builds the tower lazily, runs the
// requested analyses and collects a deterministic JSON bundle.

#include <exception>
#include <functional>
#include <random>
#include <thread>

#include "trideco/config.hpp"
#include "trideco/repr.hpp"

namespace trideco {

struct RunOptions {
  bool full = false;  // verify-level full
  std::size_t threads = 1;
  std::optional<std::size_t> max_degree;
};

/// Thread cap from TRIDECO_THREADS, defaulting to the hardware concurrency.
inline std::size_t thread_cap() {
  std::size_t n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("TRIDECO_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) n = std::min(n, static_cast<std::size_t>(v));
    } catch (const std::exception&) {
      throw config_error("ConfigInvalid", "TRIDECO_THREADS must be a positive integer");
    }
  }
  return n;
}

/// Runs f(0..count-1) on up to `threads` workers; f writes only its own slot.
inline void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& f) {
  threads = std::max<std::size_t>(1, std::min(threads, count));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(count);
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          f(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

// ---------------------------------------------------------------------------
// Canonical JSON rendering.

inline json rational_json(const Rational& r) {
  if (r.get_den() == 1 && r.get_num().fits_slong_p()) return r.get_num().get_si();
  return r.get_str();
}

inline json cyclotomic_json(const Cyclotomic& c) {
  json coeffs = json::array();
  if (c.is_rational()) {
    coeffs.push_back(rational_json(c.constant()));
    return {{"order", 1}, {"coeffs", coeffs}};
  }
  for (const auto& x : c.coeffs()) coeffs.push_back(rational_json(x));
  return {{"order", c.order()}, {"coeffs", coeffs}};
}

inline json laurent_json(const Laurent& p) {
  json out = json::array();
  for (const auto& [d, c] : p) out.push_back({d, c});
  return out;
}

inline json character_json(const GradedCharacter& ch, const WeightTable& table) {
  json out = json::array();
  for (const auto& [d, v] : ch.terms)
    for (std::size_t w = 0; w < v.size(); ++w)
      if (v[w] != 0) out.push_back({{"degree", d}, {"weight", table.weights[w].label}, {"multiplicity", v[w]}});
  return out;
}

inline json hilbert_json(const NicholsAlgebra& b) {
  const auto h = b.hilbert();
  std::vector<std::size_t> rev(h.rbegin(), h.rend());
  json out = {{"hilbert", h}, {"dim", std::accumulate(h.begin(), h.end(), std::size_t{0})}, {"palindromic", h == rev}};
  out["n_top"] = b.n_top ? json(*b.n_top) : json(nullptr);
  return out;
}

inline json error_json(const Error& e) {
  const char* kind = e.kind() == ErrorKind::Config ? "config" : e.kind() == ErrorKind::Invariant ? "invariant" : e.kind() == ErrorKind::Budget ? "budget" : "io";
  return {{"status", "error"}, {"code", e.code()}, {"kind", kind}, {"message", e.what()}};
}

// ---------------------------------------------------------------------------

class Pipeline {
 public:
  Pipeline(const JobConfig& cfg, RunOptions opt) : cfg_(cfg), opt_(opt) {}

  std::size_t max_degree() const { return opt_.max_degree.value_or(cfg_.budgets.max_degree); }

  const TriangularHopf& u() {
    return cached(u_, u_error_, [&] { return build_u(cfg_.qt, cfg_.v, max_degree()); });
  }

  const WeightTable& weights() {
    return cached(table_, table_error_, [&] { return enumerate_weights(cfg_.qt.hopf); });
  }

  struct Highest {
    std::vector<GradedModule> vermas, simples;
    std::vector<GradedCharacter> mch, lch;
    std::vector<DecompPolynomial> verma_in_l;
    std::vector<GradedCharacter> pch;  // from BGG reciprocity
  };

  /// Per-weight Verma -> head -> character pipelines, run in parallel.
  const Highest& highest() {
    return cached(highest_, highest_error_, [&] {
      const TriangularHopf& a = u();
      const WeightTable& t = weights();
      const std::size_t n = t.size();
      Highest h;
      h.vermas.resize(n);
      h.simples.resize(n);
      h.mch.resize(n);
      h.lch.resize(n);
      parallel_for(n, opt_.threads, [&](std::size_t w) {
        h.vermas[w] = verma(a, t.weights[w].action);
        h.simples[w] = head(a, h.vermas[w]);
        h.mch[w] = graded_character(h.vermas[w], t);
        h.lch[w] = graded_character(h.simples[w], t);
        if (opt_.full) {
          require_module(a, h.vermas[w]);
          require_module(a, h.simples[w]);
        }
      });
      for (const auto& c : h.mch) h.verma_in_l.push_back(decompose(c, h.lch, true));
      h.pch = projective_characters_bgg(h.verma_in_l, h.mch);
      return h;
    });
  }

  std::size_t induced_dim(std::size_t w) {
    return u().fm.size() * u().fp.size() * weights().weights[w].dim;
  }
  bool induced_fits() {
    for (std::size_t w = 0; w < weights().size(); ++w)
      if (induced_dim(w) > cfg_.budgets.induced_dim) return false;
    return true;
  }

  json run() {
    json analyses = json::object();
    for (const auto& name : cfg_.analyses) {
      json rec;
      try {
        rec = run_one(name);
        if (!rec.contains("status")) rec["status"] = "ok";
      } catch (const Error& e) {
        rec = error_json(e);
      } catch (const std::exception& e) {
        rec = error_json(invariant_error("InternalError", e.what()));
      }
      analyses[name] = rec;
    }
    json cfgj = {{"name", cfg_.name},
                 {"cyclotomic_order", cfg_.cyclotomic_order},
                 {"base", cfg_.base_kind},
                 {"dim_H", cfg_.qt.hopf.dim},
                 {"dim_V", cfg_.v.dim},
                 {"verify_level", opt_.full ? "full" : "fast"},
                 {"max_degree", max_degree()},
                 {"analyses", cfg_.analyses}};
    return {{"config", cfgj}, {"analyses", analyses}};
  }

 private:
  template <class T, class F>
  const T& cached(std::optional<T>& slot, std::exception_ptr& err, F make) {
    if (slot) return *slot;
    if (err) std::rethrow_exception(err);
    try {
      slot.emplace(make());
    } catch (...) {
      err = std::current_exception();
      throw;
    }
    return *slot;
  }

  std::string label(std::size_t w) { return weights().weights[w].label; }

  json run_one(const std::string& name) {
    if (name == "nichols") return nichols();
    if (name == "build") return build();
    if (name == "simples") return simples();
    if (name == "characters") return characters();
    if (name == "bgg") return bgg();
    if (name == "tensor") return tensor();
    if (name == "rigid") return rigid();
    if (name == "coideal") return coideal();
    throw config_error("ConfigInvalid", "unknown analysis " + name);
  }

  json nichols() {
    const FDHopf& h = cfg_.qt.hopf;
    const YDModule ov = dual_yd(cfg_.qt, cfg_.v);
    const NicholsAlgebra bv = build_nichols(h, cfg_.v, max_degree(), true);
    const NicholsAlgebra bov = build_nichols(h, ov, max_degree(), true);
    json out = {{"V", hilbert_json(bv)}, {"oV", hilbert_json(bov)}};
    // ch B^n(oV) = ch B^n(V)* for every n.
    bool dual_ok = bv.hilbert() == bov.hilbert();
    for (std::size_t n = 0; dual_ok && n < bv.hilbert().size(); ++n) {
      if (bv.dim(n) == 0) continue;
      dual_ok = module_character(bov.degrees[n].action) == module_character(dual_action(h, bv.degrees[n].action));
    }
    out["degreewise_duality"] = dual_ok;
    bool passed = dual_ok;
    if (bv.n_top && bov.n_top) {
      const TopData tv = top_data(h, bv), to = top_data(h, bov);
      const WeightTable& t = weights();
      const std::size_t lv = t.index_of(tv.lambda), lo = t.index_of(to.lambda);
      const std::size_t prod = t.index_of(tensor_action(h, tv.lambda, to.lambda));
      out["lambda_V"] = label(lv);
      out["lambda_oV"] = label(lo);
      out["top_weights_cancel"] = prod == t.trivial();
      passed = passed && prod == t.trivial();
    }
    out["passed"] = passed;
    return out;
  }

  std::vector<std::size_t> sample(std::size_t dim, std::size_t count) const {
    std::vector<std::size_t> s(dim);
    std::iota(s.begin(), s.end(), 0);
    if (dim <= count) return s;
    std::mt19937 rng(11);
    std::shuffle(s.begin(), s.end(), rng);
    s.resize(count);
    std::sort(s.begin(), s.end());
    return s;
  }

  static json check_json(const AlgebraCheck& c) {
    json j = {{"checked", c.checked}, {"failures", c.failures}, {"passed", c.ok()}};
    if (!c.ok()) j["first_failure"] = c.first_failure;
    return j;
  }

  json build() {
    const TriangularHopf& a = u();
    const std::size_t exhaustive = 100;
    const AlgebraCheck assoc = check_associativity(a, exhaustive, opt_.full ? 1000 : 200);
    const auto s = sample(a.dim(), opt_.full ? 100 : 30);
    const AlgebraCheck grading = check_grading(a, s);
    const AlgebraCheck hopf = check_hopf(a, s);
    json out = {{"dim", a.dim()},
                {"dim_BV", a.fm.size()},
                {"dim_H", a.H().dim},
                {"dim_BoV", a.fp.size()},
                {"triangular", a.dim() == a.fm.size() * a.H().dim * a.fp.size()},
                {"associativity", check_json(assoc)},
                {"associativity_mode", a.dim() <= exhaustive ? "exhaustive" : "sampled"},
                {"grading", check_json(grading)},
                {"hopf", check_json(hopf)}};
    out["passed"] = assoc.ok() && grading.ok() && hopf.ok();
    return out;
  }

  json simples() {
    const WeightTable& t = weights();
    json list = json::array();
    for (std::size_t w = 0; w < t.size(); ++w) {
      json chi = json::array();
      for (const auto& c : t.weights[w].character) chi.push_back(cyclotomic_json(c));
      list.push_back({{"label", label(w)}, {"dim", t.weights[w].dim}, {"character", chi}, {"dual", label(t.dual(w))}});
    }
    std::size_t squares = 0;
    for (const auto& w : t.weights) squares += w.dim * w.dim;
    return {{"weights", list}, {"count", t.size()}, {"trivial", label(t.trivial())}, {"sum_of_squares", squares},
            {"passed", squares == cfg_.qt.hopf.dim}};
  }

  json characters() {
    const WeightTable& t = weights();
    const Highest& h = highest();
    json verma = json::object(), simple = json::object(), lowest = json::object(), symmetric = json::object(), dims = json::object();
    std::set<std::size_t> bars;
    for (std::size_t w = 0; w < t.size(); ++w) {
      verma[label(w)] = character_json(h.mch[w], t);
      simple[label(w)] = character_json(h.lch[w], t);
      const LowestWeight lw = lowest_weight(h.simples[w], t);
      bars.insert(lw.weight);
      lowest[label(w)] = {{"weight", label(lw.weight)}, {"degree", lw.degree}};
      std::vector<std::size_t> hs;
      for (const auto& [d, c] : h.simples[w].dims()) hs.push_back(c);
      std::vector<std::size_t> rev(hs.rbegin(), hs.rend());
      symmetric[label(w)] = hs == rev;
      dims[label(w)] = h.simples[w].dim();
    }
    bool distinct = true;
    for (std::size_t a = 0; a < t.size(); ++a)
      for (std::size_t b = a + 1; b < t.size(); ++b) distinct = distinct && h.lch[a] != h.lch[b];
    return {{"verma", verma},
            {"simple", simple},
            {"simple_dims", dims},
            {"lowest_weight", lowest},
            {"simple_hilbert_symmetric", symmetric},
            {"bar_is_bijection", bars.size() == t.size()},
            {"simples_distinct", distinct},
            {"passed", distinct && bars.size() == t.size()}};
  }

  json bgg() {
    const TriangularHopf& a = u();
    const WeightTable& t = weights();
    const Highest& h = highest();
    const std::size_t n = t.size();
    json dec = json::object(), proj = json::object();
    for (std::size_t lam = 0; lam < n; ++lam) {
      json row = json::object();
      for (std::size_t mu = 0; mu < n; ++mu)
        if (!h.verma_in_l[lam][mu].empty()) row[label(mu)] = laurent_json(h.verma_in_l[lam][mu]);
      dec[label(lam)] = row;
      proj[label(lam)] = character_json(h.pch[lam], t);
    }
    std::size_t total = 0;
    bool standard_ok = true;
    for (std::size_t w = 0; w < n; ++w) {
      total += h.pch[w].dimension(t) * h.simples[w].dim();
      // A standard module is projective iff it is simple.
      standard_ok = standard_ok && ((h.mch[w] == h.pch[w]) == (h.vermas[w].dim() == h.simples[w].dim()));
    }
    json out = {{"verma_in_simples", dec},
                {"projective", proj},
                {"dimension_sum", total},
                {"dim_u", a.dim()},
                {"standard_projective_iff_simple", standard_ok}};
    bool passed = total == a.dim() && standard_ok;
    if (induced_fits()) {
      json covers = json::object();
      std::size_t residual = 0;
      for (std::size_t w = 0; w < n; ++w) {
        const GradedModule p = projective_cover(a, t.weights[w].action, h.simples[w], cfg_.budgets.induced_dim);
        if (opt_.full) require_module(a, p);
        const bool match = graded_character(p, t) == h.pch[w];
        covers[label(w)] = {{"dim", p.dim()}, {"matches_bgg", match}};
        passed = passed && match;
      }
      out["explicit_covers"] = covers;
      // Brauer reciprocity: [P(lam):M(mu)] = [W(lam_V mu):L(lam)].
      const TopData top = top_data(a.H(), a.BV);
      std::vector<GradedCharacter> wch(n);
      for (std::size_t w = 0; w < n; ++w) wch[w] = graded_character(coverma(a, t.weights[w].action, cfg_.budgets.induced_dim), t);
      for (std::size_t lam = 0; lam < n; ++lam) {
        const auto pm = decompose(h.pch[lam], h.mch, true);
        for (std::size_t mu = 0; mu < n; ++mu) {
          const std::size_t nu = t.index_of(tensor_action(a.H(), top.lambda, t.weights[mu].action));
          if (at_one(pm[mu]) != at_one(decompose(wch[nu], h.lch, true)[lam])) ++residual;
        }
      }
      out["reciprocity_residual"] = residual;
      passed = passed && residual == 0;
    } else {
      out["explicit_covers"] = {{"status", "skipped"}, {"reason", "Ind exceeds budgets.induced_dim"}};
    }
    out["passed"] = passed;
    return out;
  }

  json tensor() {
    const TriangularHopf& a = u();
    const WeightTable& t = weights();
    const Highest& h = highest();
    const std::size_t n = t.size();
    if (!induced_fits()) throw budget_error("BudgetExceeded", "Ind exceeds budgets.induced_dim");
    const TopData top = top_data(a.H(), a.BV);
    std::size_t duality_fail = 0, w_m_fail = 0, pq_fail = 0, pq_pairs = 0;
    for (std::size_t lam = 0; lam < n; ++lam) {
      const std::size_t nu = t.dual(t.index_of(tensor_action(a.H(), top.lambda, t.weights[lam].action)));
      GradedCharacter expected;
      expected.add(h.mch[nu], static_cast<int>(top.n_top));
      if (graded_character(dual_module(a, h.vermas[lam]), t) != expected) ++duality_fail;
    }
    std::vector<GradedModule> ws(n);
    std::vector<GradedCharacter> wch(n);
    for (std::size_t w = 0; w < n; ++w) {
      ws[w] = coverma(a, t.weights[w].action, cfg_.budgets.induced_dim);
      wch[w] = graded_character(ws[w], t);
    }
    std::map<std::pair<std::size_t, std::size_t>, GradedCharacter> ind;
    auto ind_char = [&](std::size_t lam, std::size_t mu) -> const GradedCharacter& {
      auto it = ind.find({lam, mu});
      if (it == ind.end())
        it = ind.emplace(std::make_pair(lam, mu),
                         graded_character(induced(a, tensor_action(a.H(), t.weights[lam].action, t.weights[mu].action),
                                                  cfg_.budgets.induced_dim),
                                          t))
                 .first;
      return it->second;
    };
    for (std::size_t lam = 0; lam < n; ++lam)
      for (std::size_t mu = 0; mu < n; ++mu)
        if (graded_character(tensor_module(a, ws[lam], h.vermas[mu]), t) != ind_char(lam, mu)) ++w_m_fail;
    // P (x) Q = sum p_{P,W(lam)} p_{Q,M(mu)} Ind(lam mu), on up to four pairs.
    std::vector<GradedModule> ps;
    for (std::size_t w = 0; w < n; ++w) ps.push_back(projective_cover(a, t.weights[w].action, h.simples[w], cfg_.budgets.induced_dim));
    for (std::size_t p = 0; p < n && pq_pairs < 4; ++p)
      for (std::size_t q = p; q < n && pq_pairs < 4; ++q) {
        if (ps[p].dim() * ps[q].dim() > cfg_.budgets.induced_dim) continue;
        ++pq_pairs;
        const auto pw = decompose(graded_character(ps[p], t), wch, false);
        const auto qm = decompose(graded_character(ps[q], t), h.mch, true);
        GradedCharacter rhs;
        for (std::size_t lam = 0; lam < n; ++lam)
          for (std::size_t mu = 0; mu < n; ++mu) {
            const Laurent c = pw[lam] * qm[mu];
            for (const auto& [d, k] : c) rhs.add(ind_char(lam, mu), d, k);
          }
        if (graded_character(tensor_module(a, ps[p], ps[q]), t) != rhs) ++pq_fail;
      }
    return {{"verma_duality_failures", duality_fail},
            {"w_tensor_m_failures", w_m_fail},
            {"projective_tensor_pairs", pq_pairs},
            {"projective_tensor_failures", pq_fail},
            {"passed", duality_fail == 0 && w_m_fail == 0 && pq_fail == 0}};
  }

  json rigid() {
    if (!cfg_.group) throw config_error("ConfigInvalid", "rigid needs a group_double base");
    const TriangularHopf& a = u();
    const WeightTable& t = weights();
    json crit = json::array(), scan = json::array();
    std::vector<std::size_t> c, s = rigid_by_head_scan(a, t);
    for (const auto& r : rigid_modules(a, *cfg_.group, t)) {
      c.push_back(r.weight);
      crit.push_back(label(r.weight));
    }
    for (auto w : s) scan.push_back(label(w));
    return {{"criterion", crit}, {"head_scan", scan}, {"agree", c == s}, {"passed", c == s}};
  }

  json coideal() {
    const CoidealReport r = coideal_check(cfg_.qt, cfg_.v);
    return {{"pairs", r.pairs},
            {"coideal_failures", r.coideal_failures},
            {"auxiliary_failures", r.auxiliary_failures},
            {"residual_terms", r.residual_terms},
            {"passed", r.ok()}};
  }

  const JobConfig& cfg_;
  RunOptions opt_;
  std::optional<TriangularHopf> u_;
  std::optional<WeightTable> table_;
  std::optional<Highest> highest_;
  std::exception_ptr u_error_, table_error_, highest_error_;
};

inline json run_job(const JobConfig& cfg, const RunOptions& opt) { return Pipeline(cfg, opt).run(); }

/// Exit status for a bundle: 0 when every analysis ran and passed, else the
/// code of the first failing analysis in run order (3 for a failed check).
inline int bundle_exit_code(const json& bundle) {
  for (const auto& name : bundle.at("config").at("analyses")) {
    const json& rec = bundle.at("analyses").at(name.get<std::string>());
    if (rec.value("status", "ok") == "error") {
      const std::string kind = rec.at("kind");
      return kind == "config" ? 2 : kind == "budget" ? 4 : kind == "io" ? 1 : 3;
    }
    if (rec.contains("passed") && !rec.at("passed").get<bool>()) return 3;
  }
  return 0;
}

}  // namespace trideco
