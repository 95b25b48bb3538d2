#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "trideco/repr.hpp"

using namespace trideco;
using namespace fixtures;
using namespace oracles;

namespace {

/// u over a double together with its weights. Heap-held so the table's
/// pointer into u stays valid.
struct Setup {
  FDHopf k;
  TriangularHopf u;
  WeightTable table;
  TopData top;
  std::vector<GradedModule> vermas, simples;
  std::vector<GradedCharacter> mch, lch;
};

std::unique_ptr<Setup> setup(const FDHopf& k, const YDModule& yd) {
  auto s = std::make_unique<Setup>();
  s->k = k;
  const DoubleTower t = tower(k, yd);
  s->u = build_u(t.d, t.v);
  s->table = enumerate_weights(s->u.H());
  s->top = top_data(s->u.H(), s->u.BV);
  for (const auto& w : s->table.weights) {
    s->vermas.push_back(verma(s->u, w.action));
    s->simples.push_back(head(s->u, s->vermas.back()));
    s->mch.push_back(graded_character(s->vermas.back(), s->table));
    s->lch.push_back(graded_character(s->simples.back(), s->table));
  }
  return s;
}

std::unique_ptr<Setup> taft(std::size_t n) {
  const FDHopf k = cyclic(n);
  return setup(k, line_over_cyclic(k, n));
}

std::vector<DecompPolynomial> verma_in_l(const Setup& s) {
  std::vector<DecompPolynomial> out;
  for (const auto& c : s.mch) out.push_back(decompose(c, s.lch, true));
  return out;
}

std::size_t index_of_product(const Setup& s, const std::vector<Matrix>& a, const std::vector<Matrix>& b) {
  return s.table.index_of(tensor_h_modules(s.u.H(), a, b));
}

}  // namespace

TEST(Weights, BaseField) {
  const FDHopf k = cyclic(1);
  const WeightTable t = enumerate_weights(k);
  ASSERT_EQ(t.size(), 1u);
  EXPECT_EQ(t.trivial(), 0u);
}

TEST(Weights, DoubleOfZ2) {
  QuasitriangularHopf d = drinfeld_double(cyclic(2));
  d.hopf.field_order = 2;
  const WeightTable t = enumerate_weights(d.hopf);
  ASSERT_EQ(t.size(), 4u);
  for (const auto& w : t.weights) EXPECT_EQ(w.dim, 1u);
  EXPECT_EQ(t.trivial(), 0u);
}

TEST(Weights, DoubleOfS3) {
  FDHopf s3 = s3_group_algebra();
  s3.field_order = 3;
  QuasitriangularHopf d = drinfeld_double(s3);
  d.hopf.field_order = 3;
  const WeightTable t = enumerate_weights(d.hopf);
  ASSERT_EQ(t.size(), 8u);
  std::vector<std::size_t> dims;
  std::size_t squares = 0;
  for (const auto& w : t.weights) {
    dims.push_back(w.dim);
    squares += w.dim * w.dim;
    EXPECT_FALSE(trideco::module_failure(d.hopf, w.action));
    EXPECT_EQ(commutant(w.action).size(), 1u);  // End = k
    if (w.dim <= 4) {
      for (std::size_t i = 0; i < w.dim; ++i) {
        Matrix e(w.dim, 1);
        e(i, 0) = 1;
        EXPECT_EQ(spin(w.action, e).cols(), w.dim);
      }
    }
  }
  EXPECT_EQ(dims, (std::vector<std::size_t>{1, 1, 2, 2, 2, 2, 3, 3}));
  EXPECT_EQ(squares, 36u);
  for (std::size_t a = 0; a < t.size(); ++a)
    for (std::size_t b = a + 1; b < t.size(); ++b) EXPECT_TRUE(intertwiners(t.weights[a].action, t.weights[b].action).empty());
  // Fusion of the two 3-dim simples has total dimension 9.
  const auto f = t.fusion(6, 7);
  std::size_t total = 0;
  for (std::size_t w = 0; w < f.size(); ++w) total += static_cast<std::size_t>(f[w]) * t.weights[w].dim;
  EXPECT_EQ(total, 9u);
}

TEST(Weights, NonSemisimpleBaseIsRejected) {
  const FDHopf k = cyclic(2);
  const NicholsAlgebra b = build_nichols(k, line_over_cyclic(k, 2), 4, true);
  FDHopf boson = bosonization(to_braided_data(b), k);
  boson.field_order = 2;
  try {
    enumerate_weights(boson);
    FAIL() << "expected NotSemisimple";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "NotSemisimple");
  }
}

TEST(Repr, ZeroSpaceIsSemisimple) {
  const FDHopf k = cyclic(2);
  QuasitriangularHopf d = drinfeld_double(k);
  d.hopf.field_order = 2;
  YDModule zero;
  zero.action.assign(d.hopf.dim, Matrix(0, 0));
  const TriangularHopf u = build_u(d, zero);
  const WeightTable t = enumerate_weights(u.H());
  for (const auto& w : t.weights) {
    const GradedModule m = verma(u, w.action);
    EXPECT_EQ(m.dims(), (std::map<int, std::size_t>{{0, 1}}));
    EXPECT_EQ(head(u, m).dim(), 1u);
    const GradedModule p = projective_cover(u, w.action, m);
    EXPECT_EQ(p.dim(), 1u);
  }
}

TEST(Repr, VermaShapes) {
  const auto s = taft(2);
  for (std::size_t w = 0; w < s->table.size(); ++w) {
    const GradedModule& m = s->vermas[w];
    EXPECT_EQ(m.dims(), (std::map<int, std::size_t>{{-1, 1}, {0, 1}}));
    EXPECT_FALSE(module_failure(s->u, m));
    EXPECT_EQ(graded_character(verma_as_quotient(s->u, s->table.weights[w].action), s->table), s->mch[w]);
    const GradedModule cw = coverma(s->u, s->table.weights[w].action);
    EXPECT_EQ(cw.dims(), (std::map<int, std::size_t>{{0, 1}, {1, 1}}));
    EXPECT_FALSE(module_failure(s->u, cw));
    // The highest weight is killed by y and generates.
    const auto top = m.in_degree(0);
    Matrix v(m.dim(), 1);
    v(top[0], 0) = 1;
    for (const auto& y : m.y) EXPECT_TRUE((y * v).is_zero());
    EXPECT_EQ(spin(m.generators(), v).cols(), m.dim());
  }
}

TEST(Repr, FominKirillovVerma) {
  FDHopf s3 = s3_group_algebra();
  s3.field_order = 3;
  const auto s = setup(s3, fk3_over_s3(s3));
  const GradedModule& m = s->vermas[s->table.trivial()];
  EXPECT_EQ(m.dims(), (std::map<int, std::size_t>{{-4, 1}, {-3, 3}, {-2, 4}, {-1, 3}, {0, 1}}));
  EXPECT_FALSE(module_failure(s->u, m));
  std::size_t total = 0;
  const auto pch = projective_characters_bgg(verma_in_l(*s), s->mch);
  for (std::size_t w = 0; w < s->table.size(); ++w) total += pch[w].dimension(s->table) * s->simples[w].dim();
  EXPECT_EQ(total, 5184u);
  std::vector<bool> hit(s->table.size(), false);
  for (const auto& l : s->simples) hit[lowest_weight(l, s->table).weight] = true;
  EXPECT_EQ(std::count(hit.begin(), hit.end(), true), static_cast<long>(s->table.size()));
}

TEST(Repr, HeadsAgainstRadicalOracle) {
  for (std::size_t n : {2u, 3u}) {
    const auto s = taft(n);
    const Matrix rad = radical_of_u(s->u);
    for (std::size_t w = 0; w < s->table.size(); ++w) {
      const GradedModule& m = s->vermas[w];
      EXPECT_TRUE(same_span(maximal_submodule(s->u, m), radical_of_module(s->u, rad, m)));
      EXPECT_FALSE(module_failure(s->u, s->simples[w]));
      EXPECT_EQ(s->simples[w].in_degree(0).size(), s->table.weights[w].dim);
    }
    // Distinct graded characters, so pairwise non-isomorphic.
    for (std::size_t a = 0; a < s->table.size(); ++a)
      for (std::size_t b = a + 1; b < s->table.size(); ++b) EXPECT_NE(s->lch[a], s->lch[b]);
  }
}

TEST(Repr, LowestWeights) {
  const auto s = taft(2);
  const LowestWeight lw = lowest_weight(s->simples[0], s->table);
  EXPECT_TRUE(lw.degree == 0 || lw.degree == -1);
  for (std::size_t n : {2u, 3u}) {
    const auto t = taft(n);
    std::set<std::size_t> bars;
    for (const auto& l : t->simples) {
      const LowestWeight x = lowest_weight(l, t->table);
      EXPECT_LE(x.degree, 0);
      bars.insert(x.weight);
    }
    EXPECT_EQ(bars.size(), t->table.size());
  }
  const GradedModule lam = inflate(s->u, s->table.weights[0].action);
  EXPECT_EQ(lowest_weight(lam, s->table).weight, 0u);
}

TEST(Repr, CompositionFactorsAgainstOracle) {
  for (std::size_t n : {2u, 3u}) {
    const auto s = taft(n);
    const Matrix rad = radical_of_u(s->u);
    const auto dec = verma_in_l(*s);
    for (std::size_t lam = 0; lam < s->table.size(); ++lam) {
      const auto counts = composition_counts(s->u, rad, s->vermas[lam], s->simples);
      for (std::size_t mu = 0; mu < s->table.size(); ++mu) {
        for (const auto& [d, c] : dec[lam][mu]) EXPECT_GE(c, 0);
        EXPECT_EQ(at_one(dec[lam][mu]), counts[mu]) << "M(" << lam << ") : L(" << mu << ")";
      }
    }
  }
}

TEST(Repr, CharacterArithmetic) {
  const auto s = taft(3);
  const std::size_t count = s->table.size();
  for (std::size_t w = 0; w < count; ++w) {
    EXPECT_EQ(s->mch[w].dimension(s->table), 3 * s->table.weights[w].dim);
    GradedCharacter lifted;
    lifted.add(s->lch[w], 2);
    const DecompPolynomial p = decompose(lifted, s->lch, true);
    for (std::size_t v = 0; v < count; ++v)
      EXPECT_EQ(p[v], (v == w ? Laurent{{2, 1}} : Laurent{})) << w << " " << v;
    const DecompPolynomial q = decompose(s->mch[w], s->mch, true);
    for (std::size_t v = 0; v < count; ++v) EXPECT_EQ(q[v], (v == w ? Laurent{{0, 1}} : Laurent{}));
    EXPECT_EQ(recombine(decompose(s->mch[w], s->lch, true), s->lch), s->mch[w]);
  }
  // Multiplicativity on a few pairs.
  for (auto [a, b] : {std::pair<std::size_t, std::size_t>{0, 1}, {1, 2}, {4, 4}}) {
    const GradedModule t = tensor_module(s->u, s->vermas[a], s->simples[b]);
    EXPECT_FALSE(module_failure(s->u, t));
    EXPECT_EQ(graded_character(t, s->table), product(s->mch[a], s->lch[b], s->table));
  }
  // A lone non-rigid weight is not the character of a module.
  EXPECT_THROW(decompose(delta_character(1, 0, count), s->lch, true), Error);
  EXPECT_EQ(decompose(delta_character(0, 0, count), s->lch, true)[0], (Laurent{{0, 1}}));
  // A basis whose leading term is not a single weight is refused.
  GradedCharacter bad = delta_character(0, 0, count);
  bad.add(0, delta_character(1, 0, count).terms.at(0));
  std::vector<GradedCharacter> basis(count, bad);
  EXPECT_THROW(decompose(s->mch[0], basis, true), Error);
}

TEST(Repr, ProjectiveCoversAndBgg) {
  for (std::size_t n : {2u, 3u}) {
    const auto s = taft(n);
    const Matrix rad = radical_of_u(s->u);
    const auto dec = verma_in_l(*s);
    const auto pch = projective_characters_bgg(dec, s->mch);
    std::size_t total = 0;
    for (std::size_t w = 0; w < s->table.size(); ++w) {
      const GradedModule p = projective_cover(s->u, s->table.weights[w].action, s->simples[w]);
      EXPECT_FALSE(module_failure(s->u, p));
      EXPECT_EQ(graded_character(p, s->table), pch[w]);
      total += p.dim() * s->simples[w].dim();
      // head(P) = P / rad P is L(w).
      Matrix lift;
      const auto top = quotient_action(p.generators(), radical_of_module(s->u, rad, p), &lift);
      EXPECT_TRUE(isomorphic(top, s->simples[w].generators()));
      // M(w) is projective iff it is simple.
      EXPECT_EQ(s->mch[w] == pch[w], s->vermas[w].dim() == s->simples[w].dim());
      // Ind(w) has a standard filtration.
      const GradedModule ind = induced(s->u, s->table.weights[w].action);
      for (const auto& poly : decompose(graded_character(ind, s->table), s->mch, true))
        for (const auto& [d, c] : poly) EXPECT_GE(c, 0);
    }
    EXPECT_EQ(total, s->u.dim());
  }
}

TEST(Repr, BrauerReciprocity) {
  for (std::size_t n : {2u, 3u}) {
    const auto s = taft(n);
    const auto pch = projective_characters_bgg(verma_in_l(*s), s->mch);
    const std::size_t count = s->table.size();
    for (std::size_t lam = 0; lam < count; ++lam)
      for (std::size_t mu = 0; mu < count; ++mu) {
        const Laurent pm = decompose(pch[lam], s->mch, true)[mu];
        const std::size_t nu = index_of_product(*s, s->top.lambda, s->table.weights[mu].action);
        const GradedCharacter w = graded_character(coverma(s->u, s->table.weights[nu].action), s->table);
        const Laurent wl = decompose(w, s->lch, true)[lam];
        EXPECT_EQ(at_one(pm), at_one(wl));
        EXPECT_EQ(pm, (Laurent{{static_cast<int>(s->top.n_top), 1}} * bar(wl)));
      }
  }
}

TEST(Repr, VermaDuality) {
  for (std::size_t n : {2u, 3u}) {
    const auto s = taft(n);
    for (std::size_t lam = 0; lam < s->table.size(); ++lam) {
      const GradedModule dual = dual_module(s->u, s->vermas[lam]);
      EXPECT_FALSE(module_failure(s->u, dual));
      const std::size_t nu = s->table.dual(index_of_product(*s, s->top.lambda, s->table.weights[lam].action));
      GradedCharacter expected;
      expected.add(s->mch[nu], static_cast<int>(s->top.n_top));
      EXPECT_EQ(graded_character(dual, s->table), expected);
      EXPECT_TRUE(isomorphic(dual.generators(), s->vermas[nu].generators()));
      EXPECT_EQ(graded_character(dual_module(s->u, dual), s->table), s->mch[lam]);
    }
  }
}

TEST(Repr, CoVermaTensorVermaIsInduced) {
  for (std::size_t n : {2u, 3u}) {
    const auto s = taft(n);
    const std::size_t count = s->table.size();
    const GradedModule eps = inflate(s->u, s->table.weights[s->table.trivial()].action);
    EXPECT_EQ(graded_character(tensor_module(s->u, eps, s->simples[1]), s->table), s->lch[1]);
    for (std::size_t lam = 0; lam < count; ++lam)
      for (std::size_t mu = 0; mu < count; ++mu) {
        const auto& wl = s->table.weights[lam].action;
        const auto& wm = s->table.weights[mu].action;
        const GradedModule t = tensor_module(s->u, coverma(s->u, wl), s->vermas[mu]);
        const GradedModule ind = induced(s->u, tensor_h_modules(s->u.H(), wl, wm));
        EXPECT_EQ(graded_character(t, s->table), graded_character(ind, s->table));
      }
  }
}

TEST(Repr, ProjectiveTensorFormula) {
  const auto s = taft(2);
  const std::size_t count = s->table.size();
  std::vector<GradedModule> ps;
  std::vector<GradedCharacter> wch, ich;
  for (std::size_t w = 0; w < count; ++w) {
    ps.push_back(projective_cover(s->u, s->table.weights[w].action, s->simples[w]));
    wch.push_back(graded_character(coverma(s->u, s->table.weights[w].action), s->table));
  }
  for (auto [a, b] : {std::pair<std::size_t, std::size_t>{0, 0}, {0, 2}, {2, 3}, {1, 3}}) {
    const GradedCharacter lhs = graded_character(tensor_module(s->u, ps[a], ps[b]), s->table);
    const auto pw = decompose(graded_character(ps[a], s->table), wch, false);
    const auto qm = decompose(graded_character(ps[b], s->table), s->mch, true);
    GradedCharacter rhs;
    for (std::size_t lam = 0; lam < count; ++lam)
      for (std::size_t mu = 0; mu < count; ++mu) {
        const Laurent coeff = pw[lam] * qm[mu];
        if (coeff.empty()) continue;
        const GradedCharacter ind = graded_character(
            induced(s->u, tensor_h_modules(s->u.H(), s->table.weights[lam].action, s->table.weights[mu].action)), s->table);
        for (const auto& [d, c] : coeff) rhs.add(ind, d, c);
      }
    EXPECT_EQ(lhs, rhs) << a << " " << b;
  }
}

TEST(Repr, RigidModules) {
  for (std::size_t n : {2u, 3u}) {
    const auto s = taft(n);
    const auto rigid = rigid_modules(s->u, s->k, s->table);
    std::vector<std::size_t> found;
    for (const auto& r : rigid) found.push_back(r.weight);
    EXPECT_EQ(found, rigid_by_head_scan(s->u, s->table));
    ASSERT_FALSE(found.empty());
    EXPECT_EQ(found.front(), s->table.trivial());
    for (auto w : found) {
      const GradedModule lam = inflate(s->u, s->table.weights[w].action);
      EXPECT_FALSE(module_failure(s->u, lam));
    }
  }
}

TEST(Repr, TopWeightsCancel) {
  for (std::size_t n : {2u, 3u}) {
    const auto s = taft(n);
    const TopData other = top_data(s->u.H(), s->u.BoV);
    EXPECT_EQ(index_of_product(*s, s->top.lambda, other.lambda), s->table.trivial());
    EXPECT_EQ(index_of_product(*s, other.lambda, s->top.lambda), s->table.trivial());
  }
}

TEST(Repr, ModuleCheckCatchesBrokenAction) {
  const auto s = taft(2);
  // On M(w2) the y x relation has a nonzero constant term, so rescaling x breaks it.
  GradedModule m = s->vermas[2];
  m.x[0] = m.x[0] * Cyclotomic(2L);
  EXPECT_TRUE(module_failure(s->u, m));
}
