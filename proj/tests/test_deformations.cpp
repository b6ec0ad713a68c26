#include <doctest.h>

#include <random>
#include <stdexcept>
#include <vector>

#include "hlr3/cohomology.hpp"
#include "hlr3/deformations.hpp"
#include "hlr3/fixtures.hpp"

using namespace hlr3;

namespace {

Multiderivation ternary(const HLR3Algebra& alg, const Tensor& map) {
  Multiderivation d = zero_multiderivation(alg, 2);
  d.map = map;
  return d;
}

Multiderivation unary_from_matrix(const HLR3Algebra& alg, const Matrix& m) {
  Multiderivation d = zero_multiderivation(alg, 0);
  for (std::size_t i = 0; i < alg.L_dim; ++i)
    for (std::size_t l = 0; l < alg.L_dim; ++l) d.map.at({i, l}) = m.at(l, i);
  return d;
}

Matrix random_matrix(std::mt19937& rng, std::size_t n, int span) {
  Matrix m(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      m.at(r, c) = Rat(static_cast<int>(rng() % (2 * span + 1)) - span);
  return m;
}

/// Random totally skew ternary map: values on strictly increasing triples,
/// extended by the permutation sign.
Tensor random_skew_ternary(std::mt19937& rng, std::size_t dl) {
  Tensor t(std::vector<std::size_t>(4, dl));
  for (std::size_t i = 0; i < dl; ++i)
    for (std::size_t j = i + 1; j < dl; ++j)
      for (std::size_t k = j + 1; k < dl; ++k)
        for (std::size_t l = 0; l < dl; ++l) {
          Rat v = Rat(static_cast<int>(rng() % 7) - 3);
          t.at({i, j, k, l}) = v;
          t.at({j, k, i, l}) = v;
          t.at({k, i, j, l}) = v;
          t.at({j, i, k, l}) = -v;
          t.at({i, k, j, l}) = -v;
          t.at({k, j, i, l}) = -v;
        }
  return t;
}

Tensor tensor_sum(const Tensor& a, const Tensor& b) {
  Tensor out = a;
  for (std::size_t i = 0; i < out.data.size(); ++i) out.data[i] += b.data[i];
  return out;
}

}  // namespace

TEST_CASE("the bracket and anchor of every fixture form a multiderivation") {
  for (const NamedFixture& fx : all_fixtures()) {
    Multiderivation m = structure_as_multiderivation(fx.algebra);
    CHECK(m.degree == 2);
    CHECK(m.map == fx.algebra.bracket);
    VerificationReport rep = check_multiderivation(fx.algebra, m);
    CHECK(rep.passed());
    CHECK(rep.conditions.size() == 7);
    CHECK(rep.conditions[0].name == "map_skew");
    CHECK(rep.conditions[6].name == "leibniz_rule");
  }
}

TEST_CASE("each multiderivation condition localizes its own violation") {
  HLR3Algebra f2p = fixture_by_name("F2prime");
  Multiderivation m = structure_as_multiderivation(f2p);

  SUBCASE("map_skew") {
    Multiderivation bad = m;
    bad.map.at({0, 0, 1, 2}) = 1;
    VerificationReport rep = check_multiderivation(f2p, bad);
    CHECK_FALSE(rep.passed());
    CHECK(rep.first_failure()->name == "map_skew");
    CHECK_FALSE(rep.first_failure()->indices.empty());
  }
  SUBCASE("map_equivariance") {
    HLR3Algebra f3 = fixture_by_name("F3");
    Multiderivation bad = zero_multiderivation(f3, 1);
    bad.map.at({0, 1, 2}) = 1;
    bad.map.at({1, 0, 2}) = -1;
    VerificationReport rep = check_multiderivation(f3, bad);
    CHECK(rep.conditions[0].passed);
    CHECK_FALSE(rep.conditions[1].passed);
    CHECK(rep.conditions[1].name == "map_equivariance");
  }
  SUBCASE("symbol_skew") {
    Multiderivation bad = m;
    bad.symbol[0 * 4 + 0].at(0, 0) = 1;
    VerificationReport rep = check_multiderivation(f2p, bad);
    CHECK_FALSE(rep.conditions[2].passed);
  }
  SUBCASE("symbol_derivation") {
    Multiderivation bad = m;
    bad.symbol[0 * 4 + 1].at(0, 0) = 1;
    bad.symbol[1 * 4 + 0].at(0, 0) = -1;
    VerificationReport rep = check_multiderivation(f2p, bad);
    CHECK(rep.conditions[2].passed);
    CHECK_FALSE(rep.conditions[4].passed);
  }
  SUBCASE("leibniz_rule") {
    HLR3Algebra f4 = fixture_by_name("F4");
    Multiderivation bad = structure_as_multiderivation(f4);
    for (Matrix& s : bad.symbol) s = Matrix(2, 2);
    VerificationReport rep = check_multiderivation(f4, bad);
    for (std::size_t c = 0; c < 6; ++c) CHECK(rep.conditions[c].passed);
    CHECK_FALSE(rep.conditions[6].passed);
    CHECK(rep.conditions[6].name == "leibniz_rule");
  }
  SUBCASE("wrong shapes throw") {
    Multiderivation bad = m;
    bad.degree = 1;
    CHECK_THROWS_AS((void)check_multiderivation(f2p, bad), std::invalid_argument);
    Multiderivation short_symbol = m;
    short_symbol.symbol.pop_back();
    CHECK_THROWS_AS((void)check_multiderivation(f2p, short_symbol), std::invalid_argument);
  }
}

TEST_CASE("composition against the identity rescales by the arity") {
  HLR3Algebra f2 = fixture_by_name("F2");
  Multiderivation idm = unary_from_matrix(f2, Matrix::identity(4));
  std::mt19937 rng(11);

  Multiderivation b = zero_multiderivation(f2, 1);
  b.map.at({0, 1, 2}) = 1;
  b.map.at({1, 0, 2}) = -1;
  b.map.at({2, 3, 0}) = 1;
  b.map.at({3, 2, 0}) = -1;
  Tensor bi = compose(f2, b, idm);
  for (std::size_t t = 0; t < bi.data.size(); ++t) CHECK(bi.data[t] == Rat(2) * b.map.data[t]);

  Multiderivation m = structure_as_multiderivation(f2);
  Tensor mi = compose(f2, m, idm);
  for (std::size_t t = 0; t < mi.data.size(); ++t) CHECK(mi.data[t] == Rat(3) * m.map.data[t]);
}

TEST_CASE("shuffle composition of two binary maps matches the hand expansion") {
  HLR3Algebra f2 = fixture_by_name("F2");
  Multiderivation b = zero_multiderivation(f2, 1);
  b.map.at({0, 1, 2}) = 1;
  b.map.at({1, 0, 2}) = -1;
  b.map.at({2, 3, 0}) = 1;
  b.map.at({3, 2, 0}) = -1;

  Tensor bb = compose(f2, b, b);
  Tensor expect(std::vector<std::size_t>(4, 4));
  expect.at({0, 1, 3, 0}) = 1;
  expect.at({0, 3, 1, 0}) = -1;
  expect.at({1, 0, 3, 0}) = -1;
  expect.at({1, 2, 3, 2}) = 1;
  expect.at({1, 3, 0, 0}) = 1;
  expect.at({1, 3, 2, 2}) = -1;
  expect.at({2, 1, 3, 2}) = -1;
  expect.at({2, 3, 1, 2}) = 1;
  expect.at({3, 0, 1, 0}) = 1;
  expect.at({3, 1, 0, 0}) = -1;
  expect.at({3, 1, 2, 2}) = 1;
  expect.at({3, 2, 1, 2}) = -1;
  CHECK(bb == expect);

  Multiderivation m = structure_as_multiderivation(f2);
  CHECK(compose(f2, m, b).is_zero());
  CHECK(compose(f2, b, m).is_zero());

  Tensor g12 = gbracket(f2, b, m);
  Tensor g21 = gbracket(f2, m, b);
  for (std::size_t t = 0; t < g12.data.size(); ++t) CHECK(g12.data[t] + g21.data[t] == 0);
}

TEST_CASE("the shuffle square of skew ternary maps collapses below dimension five") {
  HLR3Algebra f2 = fixture_by_name("F2");
  Multiderivation m = structure_as_multiderivation(f2);
  CHECK(compose(f2, m, m).is_zero());
  CHECK(gbracket(f2, m, m).is_zero());

  std::mt19937 rng(20260814);
  for (int trial = 0; trial < 5; ++trial) {
    Multiderivation a = ternary(f2, random_skew_ternary(rng, 4));
    Multiderivation b = ternary(f2, random_skew_ternary(rng, 4));
    CHECK(compose(f2, a, b).is_zero());
    Tensor g = gbracket(f2, a, b);
    CHECK(g.is_zero());
  }
}

TEST_CASE("maurer_cartan_check matches the hom-Jacobi verdict") {
  for (const NamedFixture& fx : all_fixtures()) {
    CHECK(maurer_cartan_check(fx.algebra) == verify_hom_jacobi(fx.algebra).passed());
    CHECK(maurer_cartan_check(fx.algebra));
  }

  HLR3Algebra f2 = fixture_by_name("F2");
  std::mt19937 rng(20260814);
  int both_fail = 0;
  int both_pass = 0;
  std::vector<std::vector<std::size_t>> triples = {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};
  int trials = 0;
  for (const std::vector<std::size_t>& tr : triples)
    for (std::size_t l = 0; l < 4; ++l)
      for (int v : {1, -1}) {
        HLR3Algebra bumped = f2;
        Tensor orbit(std::vector<std::size_t>(4, 4));
        orbit.at({tr[0], tr[1], tr[2], l}) = v;
        orbit.at({tr[1], tr[2], tr[0], l}) = v;
        orbit.at({tr[2], tr[0], tr[1], l}) = v;
        orbit.at({tr[1], tr[0], tr[2], l}) = -v;
        orbit.at({tr[0], tr[2], tr[1], l}) = -v;
        orbit.at({tr[2], tr[1], tr[0], l}) = -v;
        bumped.bracket = tensor_sum(f2.bracket, orbit);
        bool mc = maurer_cartan_check(bumped);
        bool jac = verify_hom_jacobi(bumped).passed();
        CHECK(mc == jac);
        ++(mc ? both_pass : both_fail);
        ++trials;
      }
  while (trials < 50) {
    HLR3Algebra bumped = f2;
    bumped.bracket = tensor_sum(f2.bracket, random_skew_ternary(rng, 4));
    bool mc = maurer_cartan_check(bumped);
    bool jac = verify_hom_jacobi(bumped).passed();
    CHECK(mc == jac);
    ++(mc ? both_pass : both_fail);
    ++trials;
  }
  CHECK(both_fail > 0);
  CHECK(both_pass > 0);
}

TEST_CASE("def_delta on unary maps agrees with the graded bracket route") {
  std::mt19937 rng(7);
  for (const NamedFixture& fx : all_fixtures()) {
    const HLR3Algebra& alg = fx.algebra;
    Multiderivation m = structure_as_multiderivation(alg);
    Multiderivation u = unary_from_matrix(alg, random_matrix(rng, alg.L_dim, 4));
    Multiderivation du = def_delta(alg, u);
    CHECK(du.degree == 2);
    CHECK(du.map == gbracket(alg, m, u));
    for (const Matrix& s : du.symbol) CHECK(s.is_zero());
  }
}

TEST_CASE("def_delta squares to zero on unary basis maps") {
  for (const NamedFixture& fx : all_fixtures()) {
    const HLR3Algebra& alg = fx.algebra;
    for (std::size_t i = 0; i < alg.L_dim; ++i)
      for (std::size_t l = 0; l < alg.L_dim; ++l) {
        Multiderivation u = zero_multiderivation(alg, 0);
        u.map.at({i, l}) = 1;
        CHECK(def_delta(alg, def_delta(alg, u)).map.is_zero());
      }
  }
}

TEST_CASE("def_delta rejects even-arity input") {
  HLR3Algebra f2 = fixture_by_name("F2");
  Multiderivation even = zero_multiderivation(f2, 1);
  CHECK_THROWS_AS((void)def_delta(f2, even), std::invalid_argument);
}

TEST_CASE("the graded bracket against the structure vanishes at the ternary spot") {
  HLR3Algebra f2 = fixture_by_name("F2");
  Multiderivation m = structure_as_multiderivation(f2);
  LeftModule adj = module_by_name(f2, "adjoint");
  std::vector<Cochain> z1 = cocycle_basis(f2, adj, 1);
  REQUIRE(z1.size() == 13);
  Multiderivation t = ternary(f2, z1[0].values);
  CHECK(gbracket(f2, m, t).is_zero());
  CHECK(def_delta(f2, t).map.is_zero());
  Multiderivation other = ternary(f2, cochain_space(f2, adj, 1).basis_cochain(4).values);
  CHECK(gbracket(f2, m, other).is_zero());
  CHECK_FALSE(def_delta(f2, other).map.is_zero());
}

TEST_CASE("order-one deformations pass exactly when the term is a cocycle") {
  HLR3Algebra f2 = fixture_by_name("F2");
  LeftModule adj = module_by_name(f2, "adjoint");
  CochainSpaceBasis c1 = cochain_space(f2, adj, 1);
  Matrix d2 = delta_matrix(f2, adj, 2);

  for (std::size_t i = 0; i < c1.dim(); ++i) {
    Cochain basis = c1.basis_cochain(i);
    bool closed = vec_is_zero(d2.apply(cochain_to_coords(c1.shape, basis)));
    DeformationSeries s = undeformed_series(f2, 1);
    s.terms[1].map = basis.values;
    VerificationReport rep = check_deformation(f2, s, DeformationMode::strict_order);
    CHECK(rep.passed() == closed);
    CHECK(rep.conditions.size() == 2);
    CHECK(rep.conditions[0].name == "order_0");
    CHECK(rep.conditions[1].name == "order_1");
  }
}

TEST_CASE("a non-cocycle first term fails with a localized witness") {
  HLR3Algebra f2 = fixture_by_name("F2");
  LeftModule adj = module_by_name(f2, "adjoint");
  DeformationSeries s = undeformed_series(f2, 1);
  s.terms[1].map = cochain_space(f2, adj, 1).basis_cochain(4).values;
  VerificationReport rep = check_deformation(f2, s, DeformationMode::strict_order);
  CHECK_FALSE(rep.passed());
  const ConditionResult* f = rep.first_failure();
  REQUIRE(f != nullptr);
  CHECK(f->name == "order_1");
  CHECK(f->indices == std::vector<std::size_t>{0, 1, 1, 2, 3});
}

TEST_CASE("an obstructed cocycle pair fails the order-two equation") {
  HLR3Algebra f2 = fixture_by_name("F2");
  LeftModule adj = module_by_name(f2, "adjoint");
  std::vector<Cochain> z1 = cocycle_basis(f2, adj, 1);
  Tensor pair = tensor_sum(z1[0].values, z1[4].values);

  DeformationSeries s = undeformed_series(f2, 2);
  s.terms[1].map = pair;
  VerificationReport rep = check_deformation(f2, s, DeformationMode::strict_order);
  CHECK_FALSE(rep.passed());
  CHECK(rep.conditions[0].passed);
  CHECK(rep.conditions[1].passed);
  const ConditionResult* f = rep.first_failure();
  REQUIRE(f != nullptr);
  CHECK(f->name == "order_2");
  CHECK(f->indices == std::vector<std::size_t>{0, 1, 1, 2, 3});
  CHECK(f->lhs == "(0, 0, 1, 0)");

  SUBCASE("every single cocycle basis term is unobstructed at order two") {
    for (const Cochain& z : z1) {
      DeformationSeries one = undeformed_series(f2, 2);
      one.terms[1].map = z.values;
      CHECK(check_deformation(f2, one, DeformationMode::strict_order).passed());
    }
  }
}

TEST_CASE("full truncation mode surfaces obstructions beyond the series order") {
  HLR3Algebra f2 = fixture_by_name("F2");
  LeftModule adj = module_by_name(f2, "adjoint");
  std::vector<Cochain> z1 = cocycle_basis(f2, adj, 1);
  DeformationSeries s = undeformed_series(f2, 1);
  s.terms[1].map = tensor_sum(z1[0].values, z1[4].values);

  CHECK(check_deformation(f2, s, DeformationMode::strict_order).passed());
  VerificationReport full = check_deformation(f2, s, DeformationMode::full_truncation);
  CHECK_FALSE(full.passed());
  CHECK(full.conditions.size() == 3);
  CHECK(full.first_failure()->name == "order_2");
}

TEST_CASE("series validation rejects malformed input") {
  HLR3Algebra f2 = fixture_by_name("F2");
  DeformationSeries s = undeformed_series(f2, 2);

  DeformationSeries short_series = s;
  short_series.terms.pop_back();
  CHECK_THROWS_AS((void)check_deformation(f2, short_series, DeformationMode::strict_order),
                  std::invalid_argument);

  DeformationSeries wrong_degree = s;
  wrong_degree.terms[1] = zero_multiderivation(f2, 0);
  CHECK_THROWS_AS((void)check_deformation(f2, wrong_degree, DeformationMode::strict_order),
                  std::invalid_argument);

  DeformationSeries wrong_start = s;
  wrong_start.terms[0].map.at({0, 1, 2, 3}) += 1;
  CHECK_THROWS_AS((void)check_deformation(f2, wrong_start, DeformationMode::strict_order),
                  std::invalid_argument);
}

TEST_CASE("formal automorphisms must commute with the twist") {
  HLR3Algebra f3 = fixture_by_name("F3");
  FormalAutomorphism ok;
  ok.order = 1;
  ok.terms = {Matrix::identity(4)};
  CHECK(check_formal_automorphism(f3, ok).passed());

  HLR3Algebra scaled = fixture_by_name("F1");
  for (std::size_t i = 0; i < 3; ++i) scaled.alpha.at(i, i) = Rat(static_cast<int>(i) + 1);
  FormalAutomorphism diag;
  diag.order = 1;
  Matrix d(3, 3);
  d.at(0, 0) = 5;
  d.at(2, 2) = -1;
  diag.terms = {d};
  CHECK(check_formal_automorphism(scaled, diag).passed());

  FormalAutomorphism bad;
  bad.order = 1;
  Matrix t(3, 3);
  t.at(0, 1) = 1;
  bad.terms = {t};
  VerificationReport rep = check_formal_automorphism(scaled, bad);
  CHECK_FALSE(rep.passed());
  REQUIRE(rep.first_failure() != nullptr);
  CHECK(rep.first_failure()->name == "alpha_commutes");
  CHECK(rep.first_failure()->indices == std::vector<std::size_t>{1, 0, 1});

  FormalAutomorphism mismatched;
  mismatched.order = 2;
  mismatched.terms = {Matrix::identity(4)};
  CHECK_THROWS_AS((void)check_formal_automorphism(f3, mismatched), std::invalid_argument);
}

TEST_CASE("equivalence transport is gauge invariant and invertible") {
  HLR3Algebra f2 = fixture_by_name("F2");
  LeftModule adj = module_by_name(f2, "adjoint");
  std::vector<Cochain> z1 = cocycle_basis(f2, adj, 1);
  std::mt19937 rng(20260814);

  FormalAutomorphism fwd;
  fwd.order = 2;
  Matrix t1 = random_matrix(rng, 4, 2);
  Matrix t2 = random_matrix(rng, 4, 2);
  fwd.terms = {t1, t2};

  DeformationSeries base = undeformed_series(f2, 2);
  base.terms[1].map = z1[5].values;
  CHECK(check_deformation(f2, base, DeformationMode::strict_order).passed());

  DeformationSeries moved = apply_equivalence(f2, base, fwd);
  CHECK(moved.terms[0].map == f2.bracket);
  CHECK(check_deformation(f2, moved, DeformationMode::strict_order).passed());

  FormalAutomorphism inv;
  inv.order = 2;
  Matrix i2 = t1 * t1;
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) i2.at(r, c) -= t2.at(r, c);
  Matrix i1(4, 4);
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) i1.at(r, c) = -t1.at(r, c);
  inv.terms = {i1, i2};
  DeformationSeries back = apply_equivalence(f2, moved, inv);
  for (std::size_t n = 0; n <= 2; ++n) CHECK(back.terms[n].map == base.terms[n].map);

  FormalAutomorphism wrong_order;
  wrong_order.order = 1;
  wrong_order.terms = {t1};
  CHECK_THROWS_AS((void)apply_equivalence(f2, base, wrong_order), std::invalid_argument);
}

TEST_CASE("transporting the trivial series produces coboundary leading terms") {
  HLR3Algebra f2 = fixture_by_name("F2");
  std::mt19937 rng(3);
  FormalAutomorphism hide;
  hide.order = 3;
  for (int k = 0; k < 3; ++k) hide.terms.push_back(random_matrix(rng, 4, 2));

  DeformationSeries hidden = apply_equivalence(f2, undeformed_series(f2, 3), hide);
  Multiderivation h1 = unary_from_matrix(f2, hide.terms[0]);
  CHECK(hidden.terms[1].map == def_delta(f2, h1).map);
  CHECK(check_deformation(f2, hidden, DeformationMode::strict_order).passed());
}

TEST_CASE("a trivialization step cancels a bounding first term exactly") {
  HLR3Algebra f2 = fixture_by_name("F2");
  std::mt19937 rng(20260814);
  Multiderivation phi = unary_from_matrix(f2, random_matrix(rng, 4, 3));
  Multiderivation dphi = def_delta(f2, phi);
  REQUIRE_FALSE(dphi.map.is_zero());

  DeformationSeries s = undeformed_series(f2, 3);
  s.terms[1] = dphi;
  DeformationSeries out = trivialize_step(f2, s, 1, phi);
  CHECK(out.terms[1].map.is_zero());
  CHECK(out.order == 3);
  CHECK(out.terms[0].map == f2.bracket);

  SUBCASE("a wrong unary map is rejected with a report") {
    Multiderivation other = unary_from_matrix(f2, random_matrix(rng, 4, 3));
    bool bounds = def_delta(f2, other).map == s.terms[1].map;
    REQUIRE_FALSE(bounds);
    CHECK_THROWS_AS((void)trivialize_step(f2, s, 1, other), PreconditionError);
  }
  SUBCASE("the step order must point at the first nonzero term") {
    CHECK_THROWS_AS((void)trivialize_step(f2, s, 2, phi), PreconditionError);
    CHECK_THROWS_AS((void)trivialize_step(f2, s, 0, phi), std::invalid_argument);
    CHECK_THROWS_AS((void)trivialize_step(f2, s, 4, phi), std::invalid_argument);
  }
  SUBCASE("only unary maps are accepted") {
    CHECK_THROWS_AS((void)trivialize_step(f2, s, 1, dphi), std::invalid_argument);
  }
}

TEST_CASE("successive trivialization unwinds a hidden-trivial series completely") {
  HLR3Algebra f2 = fixture_by_name("F2");
  std::mt19937 rng(20260814);
  FormalAutomorphism hide;
  hide.order = 3;
  for (int k = 0; k < 3; ++k) hide.terms.push_back(random_matrix(rng, 4, 2));
  DeformationSeries series = apply_equivalence(f2, undeformed_series(f2, 3), hide);
  REQUIRE_FALSE(series.terms[1].map.is_zero());

  std::size_t previous = 0;
  for (int step = 0; step < 3; ++step) {
    InfinitesimalClass cls = infinitesimal_class(f2, series);
    if (cls.trivial_to_order) break;
    CHECK(cls.order > previous);
    REQUIRE(cls.bounding);
    REQUIRE(cls.primitive.has_value());
    series = trivialize_step(f2, series, cls.order, *cls.primitive);
    previous = cls.order;
  }
  InfinitesimalClass done = infinitesimal_class(f2, series);
  CHECK(done.trivial_to_order);
}

TEST_CASE("trivializing_map solves the unary coboundary equation") {
  HLR3Algebra f2 = fixture_by_name("F2");
  LeftModule adj = module_by_name(f2, "adjoint");
  std::vector<Cochain> z1 = cocycle_basis(f2, adj, 1);

  std::vector<std::size_t> bounding;
  for (std::size_t i = 0; i < z1.size(); ++i) {
    std::optional<Multiderivation> phi = trivializing_map(f2, ternary(f2, z1[i].values));
    if (phi.has_value()) {
      bounding.push_back(i);
      CHECK(def_delta(f2, *phi).map == z1[i].values);
    }
  }
  CHECK(bounding == std::vector<std::size_t>{3});

  Multiderivation wrong = zero_multiderivation(f2, 0);
  CHECK_THROWS_AS((void)trivializing_map(f2, wrong), std::invalid_argument);
}

TEST_CASE("infinitesimal_class reports the first term's cohomological status") {
  HLR3Algebra f2 = fixture_by_name("F2");
  LeftModule adj = module_by_name(f2, "adjoint");
  std::vector<Cochain> z1 = cocycle_basis(f2, adj, 1);

  SUBCASE("the undeformed series is trivial to its order") {
    InfinitesimalClass cls = infinitesimal_class(f2, undeformed_series(f2, 2));
    CHECK(cls.trivial_to_order);
  }
  SUBCASE("a non-bounding cocycle gives a closed, non-trivial class") {
    DeformationSeries s = undeformed_series(f2, 2);
    s.terms[1].map = z1[0].values;
    InfinitesimalClass cls = infinitesimal_class(f2, s);
    CHECK_FALSE(cls.trivial_to_order);
    CHECK(cls.order == 1);
    CHECK(cls.closed);
    CHECK_FALSE(cls.bounding);
    CHECK_FALSE(cls.primitive.has_value());
    CHECK(cls.coboundary_basis.size() == 4);
    CHECK_FALSE(cls.rigid);
    for (const Multiderivation& cb : cls.coboundary_basis)
      CHECK(trivializing_map(f2, cb).has_value());
  }
  SUBCASE("a coboundary at a later order yields a primitive there") {
    std::mt19937 rng(5);
    Multiderivation phi = unary_from_matrix(f2, random_matrix(rng, 4, 3));
    DeformationSeries s = undeformed_series(f2, 2);
    s.terms[2] = def_delta(f2, phi);
    InfinitesimalClass cls = infinitesimal_class(f2, s);
    CHECK(cls.order == 2);
    CHECK(cls.closed);
    CHECK(cls.bounding);
    REQUIRE(cls.primitive.has_value());
    CHECK(def_delta(f2, *cls.primitive).map == s.terms[2].map);
  }
  SUBCASE("a non-closed first term is reported open") {
    DeformationSeries s = undeformed_series(f2, 1);
    s.terms[1].map = cochain_space(f2, adj, 1).basis_cochain(4).values;
    InfinitesimalClass cls = infinitesimal_class(f2, s);
    CHECK_FALSE(cls.closed);
    CHECK_FALSE(cls.bounding);
  }
}
