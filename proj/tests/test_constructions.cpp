#include <doctest.h>

#include <stdexcept>

#include "hlr3/constructions.hpp"
#include "hlr3/fixtures.hpp"

using namespace hlr3;

namespace {

bool same_algebra(const HLR3Algebra& a, const HLR3Algebra& b) {
  return a.A.dim == b.A.dim && a.A.mult == b.A.mult && a.A.unit == b.A.unit &&
         a.A.phi == b.A.phi && a.L_dim == b.L_dim && a.a_action.action == b.a_action.action &&
         a.bracket == b.bracket && a.alpha == b.alpha && a.anchor.rho == b.anchor.rho;
}

}  // namespace

TEST_CASE("all named fixtures satisfy every axiom") {
  for (const auto& [name, alg] : all_fixtures()) {
    INFO(name);
    CHECK(verify_all(alg).passed());
  }
  CHECK(verify_all(make_f2prime()).passed());
}

TEST_CASE("fixture lookup resolves names and rejects unknowns") {
  CHECK(fixture_by_name("F1").L_dim == 3);
  CHECK(fixture_by_name("F2").L_dim == 4);
  CHECK(fixture_by_name("F3").L_dim == 4);
  CHECK(fixture_by_name("F4").L_dim == 6);
  CHECK(fixture_by_name("F2prime").L_dim == 4);
  CHECK_THROWS_AS((void)fixture_by_name("F9"), std::invalid_argument);
}

TEST_CASE("twisting along (id, -id) negates bracket and twist") {
  HLR3Algebra f2 = make_f2();
  HLR3Algebra f3 = make_f3();
  CHECK(f3.alpha == Matrix::identity(4).scaled(Rat(-1)));
  CHECK(f3.bracket.at({0, 1, 2, 3}) == Rat(-1));
  CHECK(f3.A.phi == Matrix::identity(1));
  Tensor negated = f2.bracket;
  for (auto& c : negated.data) c = -c;
  CHECK(f3.bracket == negated);
}

TEST_CASE("twisting along the identity pair changes nothing") {
  HLR3Algebra f2 = make_f2();
  HLR3Algebra same = yau_twist(f2, Matrix::identity(1), Matrix::identity(4));
  CHECK(same_algebra(f2, same));
}

TEST_CASE("twisting along a non-morphism is rejected with a report") {
  HLR3Algebra f2 = make_f2();
  try {
    (void)yau_twist(f2, Matrix::identity(1), Matrix::identity(4).scaled(Rat(2)));
    FAIL("expected PreconditionError");
  } catch (const PreconditionError& e) {
    CHECK_FALSE(e.report().passed());
    REQUIRE(e.report().first_failure() != nullptr);
    CHECK(e.report().first_failure()->name == "bracket_compat");
  }
}

TEST_CASE("twisting twice by -id returns to the original") {
  Matrix neg = Matrix::identity(4).scaled(Rat(-1));
  HLR3Algebra back = yau_twist(make_f3(), Matrix::identity(1), neg);
  CHECK(back.bracket == make_f2().bracket);
  CHECK(back.alpha == Matrix::identity(4));
}

TEST_CASE("untwisted algebras pass through the inclusion unchanged") {
  HLR3Algebra f2 = make_f2();
  CHECK(same_algebra(from_3_lie_rinehart(f2), f2));
  CHECK_THROWS_AS((void)from_3_lie_rinehart(make_f3()), PreconditionError);
}

TEST_CASE("embedding a plain 3-Hom-Lie algebra gives the one-dimensional base") {
  HLR3Algebra f1 = make_f1();
  CHECK(f1.A.dim == 1);
  CHECK(f1.A.unit == Vec{Rat(1)});
  CHECK(f1.L_dim == 3);
  CHECK(verify_all(f1).passed());
}

TEST_CASE("tensor extension by the rationals reproduces the input") {
  HomLie3 l3;
  l3.dim = 4;
  l3.bracket = make_f2().bracket;
  l3.alpha = Matrix::identity(4);
  CommAlgebra q;
  q.dim = 1;
  q.mult = Tensor({1, 1, 1});
  q.mult.at({0, 0, 0}) = 1;
  q.unit = Vec{Rat(1)};
  q.phi = Matrix::identity(1);
  HLR3Algebra out = tensor_extension(l3, q, zero_anchor(4, 1));
  CHECK(same_algebra(out, make_f2()));
}

TEST_CASE("tensor extension over the dual numbers with zero anchor verifies") {
  HomLie3 l3;
  l3.dim = 4;
  l3.bracket = make_f2().bracket;
  l3.alpha = Matrix::identity(4);
  CommAlgebra a = make_f2prime().A;
  HLR3Algebra out = tensor_extension(l3, a, zero_anchor(4, 2));
  CHECK(out.L_dim == 8);
  CHECK(verify_all(out).passed());
  CHECK(out.bracket.at({0, 1, 2, 3}) == Rat(1));
  CHECK(out.bracket.at({0, 1, 6, 7}) == Rat(1));
  CHECK(out.bracket.at({4, 1, 2, 7}) == Rat(1));
  CHECK(out.bracket.at({4, 5, 2, 3}) == Rat(0));
}

TEST_CASE("tensor extension carries a nonzero admissible anchor") {
  HLR3Algebra f2p = make_f2prime();
  HomLie3 l3;
  l3.dim = 4;
  l3.bracket = f2p.bracket;
  l3.alpha = Matrix::identity(4);
  HLR3Algebra out = tensor_extension(l3, f2p.A, f2p.anchor);
  CHECK(out.L_dim == 8);
  CHECK(verify_all(out).passed());
  CHECK(out.bracket.at({0, 1, 6, 7}) == Rat(1));
  CHECK(out.bracket.at({0, 1, 6, 6}) == Rat(1));
  Matrix t_dt(2, 2);
  t_dt.at(1, 1) = 1;
  CHECK(out.anchor.rho[0][1] == t_dt);
  CHECK(out.anchor.rho[4][1] == Matrix(2, 2));
}

TEST_CASE("tensor extension rejects an anchor violating the derivation law") {
  HomLie3 l3;
  l3.dim = 4;
  l3.bracket = make_f2().bracket;
  l3.alpha = Matrix::identity(4);
  CommAlgebra a = make_f2prime().A;
  Anchor bad = zero_anchor(4, 2);
  bad.rho[0][1].at(0, 1) = 1;
  bad.rho[1][0].at(0, 1) = -1;
  CHECK_THROWS_AS((void)tensor_extension(l3, a, bad), PreconditionError);
}

TEST_CASE("fiber product of an algebra with itself doubles or matches the anchor kernel") {
  HLR3Algebra p = fiber_product(make_f2(), make_f2());
  CHECK(p.L_dim == 8);
  CHECK(verify_all(p).passed());

  HLR3Algebra q = fiber_product(make_f1(), make_f1());
  CHECK(q.L_dim == 6);

  HLR3Algebra r = fiber_product(make_f2prime(), make_f2prime());
  CHECK(r.L_dim == 6);
  CHECK(verify_all(r).passed());
}

TEST_CASE("fiber product demands a shared base and matched carrier dimensions") {
  CHECK_THROWS_AS((void)fiber_product(make_f1(), make_f2()), std::invalid_argument);
  CHECK_THROWS_AS((void)fiber_product(make_f2(), make_f2prime()), std::invalid_argument);
}

TEST_CASE("semidirect product adjoins the base algebra as an abelian summand") {
  HLR3Algebra s1 = semidirect_product(make_f1());
  CHECK(s1.L_dim == 4);
  CHECK(verify_all(s1).passed());

  HLR3Algebra s2 = semidirect_product(make_f2());
  CHECK(s2.L_dim == 5);
  CHECK(verify_all(s2).passed());
  CHECK(s2.bracket.at({0, 1, 2, 3}) == Rat(1));
  CHECK(s2.bracket.at({0, 1, 4, 4}) == Rat(0));
}

TEST_CASE("semidirect product realizes the dual-number fixture") {
  HLR3Algebra f4 = make_f4();
  CHECK(f4.L_dim == 6);
  CHECK(verify_all(f4).passed());
  CHECK(f4.bracket.at({0, 1, 2, 3}) == Rat(1));
  CHECK(f4.bracket.at({0, 1, 5, 5}) == Rat(1));
  CHECK(f4.bracket.at({0, 1, 4, 4}) == Rat(0));
  Vec t = Vec{Rat(0), Rat(1)};
  Vec f4_basis = unit_vec(6, 4);
  CHECK(f4.act(t, f4_basis) == unit_vec(6, 5));
  CHECK(vec_is_zero(f4.act(t, unit_vec(6, 5))));
  CHECK(f4.alpha == Matrix::identity(6));
  Matrix t_dt(2, 2);
  t_dt.at(1, 1) = 1;
  CHECK(f4.anchor.rho[0][1] == t_dt);
  CHECK(f4.anchor.rho[4][5] == Matrix(2, 2));
}

TEST_CASE("module semidirect sum with a trivial line module verifies") {
  HLR3Algebra f2 = make_f2();
  LeftModule trivial;
  trivial.dim = 1;
  trivial.a_action.dim = 1;
  trivial.a_action.action = Tensor({1, 1, 1});
  trivial.a_action.action.at({0, 0, 0}) = 1;
  trivial.beta = Matrix::identity(1);
  trivial.psi.assign(4, std::vector<Matrix>(4, Matrix(1, 1)));
  HLR3Algebra out = module_semidirect_sum(f2, trivial);
  CHECK(out.L_dim == 5);
  CHECK(out.bracket.at({0, 1, 2, 3}) == Rat(1));
  CHECK(out.alpha == Matrix::identity(5));
  CHECK(verify_all(out).passed());
}

TEST_CASE("derivations of the dual numbers scale the nilpotent generator") {
  std::vector<Matrix> ders = derivation_space(make_f2prime().A);
  REQUIRE(ders.size() == 1);
  Matrix t_dt(2, 2);
  t_dt.at(1, 1) = 1;
  CHECK(ders[0] == t_dt);

  CommAlgebra q;
  q.dim = 1;
  q.mult = Tensor({1, 1, 1});
  q.mult.at({0, 0, 0}) = 1;
  q.unit = Vec{Rat(1)};
  q.phi = Matrix::identity(1);
  CHECK(derivation_space(q).empty());
}

TEST_CASE("the admissibility search finds the canonical anchor over the dual numbers") {
  HLR3Algebra f2p = make_f2prime();
  Matrix t_dt(2, 2);
  t_dt.at(1, 1) = 1;
  CHECK(f2p.anchor.rho[0][1] == t_dt);
  CHECK(f2p.anchor.rho[1][0] == t_dt.scaled(Rat(-1)));
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(f2p.anchor.rho[i][3] == Matrix(2, 2));
    CHECK(f2p.anchor.rho[i][i] == Matrix(2, 2));
  }
}

TEST_CASE("the admissibility search over the rationals returns the zero anchor") {
  HLR3Algebra f2 = make_f2();
  Anchor found = find_admissible_anchor(f2.A, 4, f2.bracket, f2.alpha);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) CHECK(found.rho[i][j].is_zero());
}
