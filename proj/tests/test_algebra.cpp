#include <doctest.h>

#include <random>

#include "hlr3/algebra.hpp"
#include "hlr3/fixtures.hpp"

using namespace hlr3;

namespace {

Vec random_vec(std::mt19937_64& rng, std::size_t dim) {
  std::uniform_int_distribution<int> num(-4, 4);
  std::uniform_int_distribution<int> den(1, 3);
  Vec v(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    v[i] = Rat(num(rng), den(rng));
    v[i].canonicalize();
  }
  return v;
}

void set_skew(Tensor& bracket, std::size_t i, std::size_t j, std::size_t k, std::size_t l,
              const Rat& c) {
  bracket.at({i, j, k, l}) = c;
  bracket.at({j, k, i, l}) = c;
  bracket.at({k, i, j, l}) = c;
  bracket.at({j, i, k, l}) = -c;
  bracket.at({i, k, j, l}) = -c;
  bracket.at({k, j, i, l}) = -c;
}

}  // namespace

TEST_CASE("abelian and nilpotent fixtures satisfy every axiom") {
  for (const auto& alg : {make_f1(), make_f2()}) {
    VerificationReport report = verify_all(alg);
    CHECK(report.passed());
    CHECK(report.conditions.size() == 17);
    CHECK(report.first_failure() == nullptr);
  }
}

TEST_CASE("condition registry order is stable") {
  VerificationReport report = verify_all(make_f1());
  const char* expected[] = {"algebra_comm",       "algebra_assoc",     "algebra_unit",
                            "phi_endomorphism",   "a_module_unit",     "a_module_assoc",
                            "bracket_skew",       "hom_jacobi",        "alpha_multiplicative",
                            "alpha_module_compat", "anchor_skew",      "anchor_derivation",
                            "anchor_equivariance", "anchor_rep_r1",    "anchor_rep_r2",
                            "anchor_a_linearity", "bracket_leibniz"};
  REQUIRE(report.conditions.size() == 17);
  for (std::size_t i = 0; i < 17; ++i) CHECK(report.conditions[i].name == expected[i]);
}

TEST_CASE("a broken skew entry is caught and localized") {
  HLR3Algebra alg = make_f2();
  alg.bracket.at({1, 0, 2, 3}) = 5;
  VerificationReport report = verify_all(alg);
  CHECK_FALSE(report.passed());
  const ConditionResult* failure = report.first_failure();
  REQUIRE(failure != nullptr);
  CHECK(failure->name == "bracket_skew");
  CHECK_FALSE(failure->indices.empty());
  CHECK_FALSE(failure->lhs.empty());
  CHECK_FALSE(failure->rhs.empty());
}

TEST_CASE("a broken Jacobi entry is caught") {
  HLR3Algebra alg = make_f2();
  set_skew(alg.bracket, 1, 2, 3, 1, Rat(1));
  VerificationReport report = verify_all(alg);
  CHECK_FALSE(report.passed());
  REQUIRE(report.first_failure() != nullptr);
  CHECK(report.first_failure()->name == "hom_jacobi");
}

TEST_CASE("bracket evaluation matches the structure constants") {
  HLR3Algebra f2 = make_f2();
  Vec e0 = unit_vec(4, 0), e1 = unit_vec(4, 1), e2 = unit_vec(4, 2), e3 = unit_vec(4, 3);
  CHECK(evaluate_bracket(f2, e0, e1, e2) == e3);
  CHECK(evaluate_bracket(f2, e1, e0, e2) == vec_scaled(e3, Rat(-1)));
  CHECK(vec_is_zero(evaluate_bracket(f2, e0, e0, e2)));
  CHECK(vec_is_zero(evaluate_bracket(f2, e3, e1, e2)));
}

TEST_CASE("bracket evaluation is multilinear and alternating on random vectors") {
  HLR3Algebra f2 = make_f2();
  std::mt19937_64 rng(20260814);
  for (int trial = 0; trial < 20; ++trial) {
    Vec x = random_vec(rng, 4), y = random_vec(rng, 4), z = random_vec(rng, 4);
    Vec w = random_vec(rng, 4);
    Rat c(3, 2);
    CHECK(vec_is_zero(evaluate_bracket(f2, x, x, y)));
    Vec lhs = evaluate_bracket(f2, vec_add(x, vec_scaled(w, c)), y, z);
    Vec rhs = vec_add(evaluate_bracket(f2, x, y, z),
                      vec_scaled(evaluate_bracket(f2, w, y, z), c));
    CHECK(lhs == rhs);
  }
}

TEST_CASE("negating the carrier map is a self-morphism of the nilpotent fixture") {
  HLR3Algebra f2 = make_f2();
  HLR3Morphism h{Matrix::identity(1), Matrix::identity(4).scaled(Rat(-1))};
  VerificationReport report = verify_morphism(f2, f2, h);
  CHECK(report.passed());
  const char* expected[] = {"g_multiplicative", "g_unit",     "module_compat", "bracket_compat",
                            "alpha_compat",     "phi_compat", "anchor_compat"};
  REQUIRE(report.conditions.size() == 7);
  for (std::size_t i = 0; i < 7; ++i) CHECK(report.conditions[i].name == expected[i]);
}

TEST_CASE("the zero carrier map with identity base map is a morphism") {
  HLR3Algebra f2 = make_f2();
  HLR3Morphism h{Matrix::identity(1), Matrix(4, 4)};
  CHECK(verify_morphism(f2, f2, h).passed());
}

TEST_CASE("doubling the carrier map breaks bracket compatibility") {
  HLR3Algebra f2 = make_f2();
  HLR3Morphism h{Matrix::identity(1), Matrix::identity(4).scaled(Rat(2))};
  VerificationReport report = verify_morphism(f2, f2, h);
  CHECK_FALSE(report.passed());
  REQUIRE(report.first_failure() != nullptr);
  CHECK(report.first_failure()->name == "bracket_compat");
}

TEST_CASE("regularity tracks invertibility of both twists") {
  HLR3Algebra f2 = make_f2();
  CHECK(f2.regular());
  f2.alpha = Matrix(4, 4);
  CHECK_FALSE(f2.regular());
}

TEST_CASE("anchor evaluation is bilinear in the carrier arguments") {
  HLR3Algebra alg = make_f2prime();
  Vec e0 = unit_vec(4, 0), e1 = unit_vec(4, 1);
  Matrix expected(2, 2);
  expected.at(1, 1) = 1;
  CHECK(alg.anchor_of(e0, e1) == expected);
  CHECK(alg.anchor_of(e1, e0) == expected.scaled(Rat(-1)));
  Vec x = vec_add(e0, vec_scaled(e1, Rat(2)));
  CHECK(alg.anchor_of(x, e1) == expected);
  Vec t = unit_vec(2, 1);
  CHECK(evaluate_anchor(alg, e0, e1, t) == t);
}

TEST_CASE("shape validation rejects inconsistent tensors") {
  HLR3Algebra alg = make_f2();
  alg.alpha = Matrix::identity(3);
  CHECK_THROWS_AS(validate_shapes(alg), std::invalid_argument);
}
