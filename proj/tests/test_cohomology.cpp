#include <doctest.h>

#include <random>
#include <stdexcept>
#include <vector>

#include "hlr3/cohomology.hpp"
#include "hlr3/fixtures.hpp"
#include "support/oracles.hpp"

using namespace hlr3;

namespace {

Vec random_coords(std::mt19937& rng, std::size_t n) {
  std::uniform_int_distribution<int> num(-4, 4);
  std::uniform_int_distribution<int> den(1, 3);
  Vec v(n);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = Rat(num(rng), den(rng));
    v[i].canonicalize();
  }
  return v;
}

Cochain identity_0cochain(const HLR3Algebra& alg) {
  Cochain nu = zero_cochain(0, alg.L_dim, alg.L_dim);
  for (std::size_t i = 0; i < alg.L_dim; ++i) nu.values.at({i, i}) = 1;
  return nu;
}

Cochain bracket_1cochain(const HLR3Algebra& alg) {
  Cochain f = zero_cochain(1, alg.L_dim, alg.L_dim);
  f.values.data = alg.bracket.data;
  return f;
}

void set_skew_triple(Cochain& f, std::size_t i, std::size_t j, std::size_t k, std::size_t m,
                     const Rat& c) {
  f.values.at({i, j, k, m}) = c;
  f.values.at({j, k, i, m}) = c;
  f.values.at({k, i, j, m}) = c;
  f.values.at({j, i, k, m}) = -c;
  f.values.at({i, k, j, m}) = -c;
  f.values.at({k, j, i, m}) = -c;
}

}  // namespace

TEST_CASE("builtin modules satisfy every module axiom") {
  HLR3Algebra f1 = make_f1();
  HLR3Algebra f2 = make_f2();
  HLR3Algebra f3 = make_f3();
  HLR3Algebra f2p = make_f2prime();
  HLR3Algebra f4 = make_f4();
  CHECK(module_check(f1, make_trivial_module(f1)).passed());
  CHECK(module_check(f2, make_adjoint_module(f2)).passed());
  CHECK(module_check(f2, make_coefficients_module(f2)).passed());
  CHECK(module_check(f3, make_adjoint_module(f3)).passed());
  CHECK(module_check(f3, make_trivial_module(f3)).passed());
  CHECK(module_check(f2p, make_coefficients_module(f2p)).passed());
  CHECK(module_check(f4, make_coefficients_module(f4)).passed());
}

TEST_CASE("module check reports the full registry in order") {
  HLR3Algebra f2 = make_f2();
  VerificationReport rep = module_check(f2, make_adjoint_module(f2));
  std::vector<std::string> names;
  for (const auto& c : rep.conditions) names.push_back(c.name);
  CHECK(names == std::vector<std::string>{"a_module_unit", "a_module_assoc", "psi_skew",
                                          "psi_equivariance", "rep_r1", "rep_r2", "beta_compat",
                                          "psi_a_linearity", "psi_leibniz"});
}

TEST_CASE("adjoint over a nonzero anchor with a two-dimensional base is not a module") {
  HLR3Algebra f4 = make_f4();
  VerificationReport rep = module_check(f4, make_adjoint_module(f4));
  CHECK(!rep.passed());
  REQUIRE(rep.first_failure() != nullptr);
  CHECK(rep.first_failure()->name == "psi_a_linearity");
  CHECK_THROWS_AS((void)delta_matrix(f4, make_adjoint_module(f4), 1), ContainmentError);
}

TEST_CASE("perturbing the pair action is caught by a named representation axiom") {
  HLR3Algebra f2 = make_f2();
  LeftModule mod = make_adjoint_module(f2);
  mod.psi[0][1].at(0, 0) += 1;
  mod.psi[1][0] = mod.psi[0][1].scaled(Rat(-1));
  VerificationReport rep = module_check(f2, mod);
  CHECK(!rep.passed());
  REQUIRE(rep.first_failure() != nullptr);
  CHECK(rep.first_failure()->name == "rep_r1");
}

TEST_CASE("module lookup resolves builtin names and rejects the rest") {
  HLR3Algebra f2 = make_f2();
  CHECK(module_by_name(f2, "adjoint").psi[0][1].at(3, 2) == 1);
  CHECK(module_by_name(f2, "trivial").dim == 1);
  CHECK(module_by_name(f2, "coefficients").dim == 1);
  CHECK_THROWS_AS((void)module_by_name(f2, "nonsense"), std::invalid_argument);
  CHECK_THROWS_AS((void)make_trivial_module(make_f2prime()), std::invalid_argument);
}

TEST_CASE("coefficients module carries the anchor as its pair action") {
  HLR3Algebra f2p = make_f2prime();
  LeftModule coe = make_coefficients_module(f2p);
  CHECK(coe.dim == 2);
  CHECK(coe.beta == Matrix::identity(2));
  CHECK(coe.psi[0][1] == f2p.anchor.rho[0][1]);
  CHECK(coe.psi[0][1].at(1, 1) == 1);
  CHECK(coe.psi[0][1].at(0, 0) == 0);
}

TEST_CASE("cochain arity and canonical coordinate counts") {
  CHECK(cochain_arity(0) == 1);
  CHECK(cochain_arity(1) == 3);
  CHECK(cochain_arity(2) == 5);
  CHECK(cochain_arity(3) == 7);
  CHECK(cochain_shape(0, 4, 4).raw_dim() == 16);
  CHECK(cochain_shape(1, 4, 4).raw_dim() == 16);
  CHECK(cochain_shape(2, 4, 4).raw_dim() == 96);
  CHECK(cochain_shape(3, 4, 4).raw_dim() == 576);
  CHECK(cochain_shape(1, 3, 1).raw_dim() == 1);
  CHECK(cochain_shape(2, 3, 1).raw_dim() == 3);
}

TEST_CASE("tuple normalization tracks signs and kills repeats inside a group") {
  CochainShape shape = cochain_shape(2, 4, 4);
  auto norm = shape.normalize({1, 0, 2, 1, 3});
  REQUIRE(norm.has_value());
  CHECK(norm->first == 1);
  CHECK(shape.canonical[norm->second] == std::vector<std::size_t>{0, 1, 1, 2, 3});
  auto swapped = shape.normalize({0, 1, 2, 1, 3});
  REQUIRE(swapped.has_value());
  CHECK(swapped->first == -1);
  CHECK(swapped->second == norm->second);
  CHECK(!shape.normalize({0, 0, 1, 2, 3}).has_value());
  CHECK(!shape.normalize({0, 1, 2, 2, 3}).has_value());
  CHECK(shape.normalize({0, 1, 0, 2, 3}).has_value());
}

TEST_CASE("canonical coordinates round-trip through the full tensor") {
  std::mt19937 rng(7);
  HLR3Algebra f2 = make_f2();
  LeftModule adj = make_adjoint_module(f2);
  for (std::size_t degree = 1; degree <= 2; ++degree) {
    CochainShape shape = cochain_shape(degree, 4, 4);
    Vec coords = random_coords(rng, shape.raw_dim());
    Cochain f = cochain_from_coords(shape, coords);
    CHECK(cochain_to_coords(shape, f) == coords);
    CHECK(check_cochain(f2, adj, f).passed());
  }
}

TEST_CASE("cochain space dimensions are as frozen") {
  HLR3Algebra f1 = make_f1();
  HLR3Algebra f2 = make_f2();
  HLR3Algebra f3 = make_f3();
  LeftModule t1 = make_trivial_module(f1);
  LeftModule adj2 = make_adjoint_module(f2);
  CHECK(cochain_space(f1, t1, 0).dim() == 3);
  CHECK(cochain_space(f1, t1, 1).dim() == 1);
  CHECK(cochain_space(f1, t1, 2).dim() == 3);
  CHECK(cochain_space(f1, t1, 3).dim() == 9);
  CHECK(cochain_space(f2, adj2, 0).dim() == 16);
  CHECK(cochain_space(f2, adj2, 1).dim() == 16);
  CHECK(cochain_space(f2, adj2, 2).dim() == 96);
  CHECK(cochain_space(f2, adj2, 1).full);
  CHECK(cochain_space(f2, make_coefficients_module(f2), 2).dim() == 24);
  CHECK(cochain_space(f3, make_adjoint_module(f3), 0).dim() == 16);
  CHECK(cochain_space(f3, make_adjoint_module(f3), 2).dim() == 96);
}

TEST_CASE("sign parity empties every cochain space over the twisted trivial pair") {
  HLR3Algebra f3 = make_f3();
  LeftModule triv = make_trivial_module(f3);
  CHECK(cochain_space(f3, triv, 0).dim() == 0);
  CHECK(cochain_space(f3, triv, 1).dim() == 0);
  CohomologyDims d = cohomology_dim(f3, triv, 0);
  CHECK(d.dim_c == 0);
  CHECK(d.dim_h == 0);
}

TEST_CASE("base multiplication constrains cochain spaces over a two-dimensional base") {
  HLR3Algebra f2p = make_f2prime();
  LeftModule coe = make_coefficients_module(f2p);
  CHECK(cochain_space(f2p, coe, 0).dim() == 4);
  CHECK(cochain_space(f2p, coe, 1).dim() == 4);
  CHECK(cochain_space(f2p, coe, 2).dim() == 24);
  for (std::size_t i = 0; i < 4; ++i) {
    Cochain f = cochain_space(f2p, coe, 0).basis_cochain(i);
    CHECK(f.values.at({i, 0}) == 0);
    CHECK(f.values.at({i, 1}) == 1);
    CHECK(check_cochain(f2p, coe, f).passed());
  }
  HLR3Algebra f4 = make_f4();
  LeftModule coe4 = make_coefficients_module(f4);
  CHECK(cochain_space(f4, coe4, 0).dim() == 6);
  CHECK(cochain_space(f4, coe4, 1).dim() == 10);
}

TEST_CASE("multilinearity over the base is enforced on tuples with repeats") {
  HLR3Algebra f4 = make_f4();
  LeftModule coe = make_coefficients_module(f4);
  Cochain f = zero_cochain(1, 6, 2);
  set_skew_triple(f, 2, 4, 5, 1, Rat(1));
  VerificationReport rep = check_cochain(f4, coe, f);
  CHECK(!rep.passed());
  REQUIRE(rep.first_failure() != nullptr);
  CHECK(rep.first_failure()->name == "cochain_a_linearity");
  CochainSpaceBasis space = cochain_space(f4, coe, 1);
  CHECK(!space.express(cochain_to_coords(space.shape, f)).has_value());
}

TEST_CASE("cochain membership failures are localized") {
  HLR3Algebra f2 = make_f2();
  LeftModule adj = make_adjoint_module(f2);
  Cochain f = zero_cochain(1, 4, 4);
  f.values.at({0, 0, 1, 0}) = 1;
  VerificationReport rep = check_cochain(f2, adj, f);
  CHECK(!rep.passed());
  REQUIRE(rep.first_failure() != nullptr);
  CHECK(rep.first_failure()->name == "cochain_skew");
  CHECK(rep.first_failure()->indices == std::vector<std::size_t>{0, 0, 1});
  Cochain bad_shape = zero_cochain(1, 3, 4);
  CHECK_THROWS_AS((void)check_cochain(f2, adj, bad_shape), std::invalid_argument);
}

TEST_CASE("coboundary of the identity lands on twice the center generator") {
  HLR3Algebra f2 = make_f2();
  LeftModule adj = make_adjoint_module(f2);
  Cochain d = delta(f2, adj, identity_0cochain(f2));
  CHECK(d.degree == 1);
  CHECK(d.values.at({0, 1, 2, 3}) == 2);
  CHECK(d.values.at({1, 0, 2, 3}) == -2);
  CHECK(d.values.at({0, 1, 2, 0}) == 0);
  CHECK(d.values.at({0, 1, 3, 3}) == 0);
  CHECK(check_cochain(f2, adj, d).passed());
}

TEST_CASE("coboundary is linear in the cochain") {
  std::mt19937 rng(11);
  HLR3Algebra f2 = make_f2();
  LeftModule adj = make_adjoint_module(f2);
  CochainShape shape = cochain_shape(1, 4, 4);
  Cochain f = cochain_from_coords(shape, random_coords(rng, shape.raw_dim()));
  Cochain g = cochain_from_coords(shape, random_coords(rng, shape.raw_dim()));
  Cochain sum = f;
  for (std::size_t i = 0; i < sum.values.data.size(); ++i) {
    sum.values.data[i] += 2 * g.values.data[i];
  }
  Cochain df = delta(f2, adj, f);
  Cochain dg = delta(f2, adj, g);
  Cochain dsum = delta(f2, adj, sum);
  for (std::size_t i = 0; i < dsum.values.data.size(); ++i) {
    CHECK(dsum.values.data[i] == df.values.data[i] + 2 * dg.values.data[i]);
  }
}

TEST_CASE("coboundary agrees with the naive oracle on every basis cochain") {
  struct Pair {
    HLR3Algebra alg;
    std::string module;
    std::size_t max_degree;
  };
  std::vector<Pair> pairs;
  pairs.push_back({make_f1(), "trivial", 2});
  pairs.push_back({make_f2(), "adjoint", 1});
  pairs.push_back({make_f2(), "coefficients", 1});
  pairs.push_back({make_f3(), "adjoint", 1});
  for (const auto& [alg, module, max_degree] : pairs) {
    LeftModule mod = module_by_name(alg, module);
    for (std::size_t degree = 0; degree <= max_degree; ++degree) {
      CochainSpaceBasis space = cochain_space(alg, mod, degree);
      for (std::size_t i = 0; i < space.dim(); ++i) {
        Cochain f = space.basis_cochain(i);
        INFO(module, " degree ", degree, " basis ", i);
        CHECK(delta(alg, mod, f).values == oracles::oracle_delta(alg, mod, f).values);
      }
    }
  }
}

TEST_CASE("coboundary matrix matches pointwise evaluation") {
  HLR3Algebra f2 = make_f2();
  LeftModule adj = make_adjoint_module(f2);
  CochainShape s0 = cochain_shape(0, 4, 4);
  CochainShape s1 = cochain_shape(1, 4, 4);
  Cochain nu = identity_0cochain(f2);
  Matrix d1 = delta_matrix(f2, adj, 1);
  CHECK(d1.apply(cochain_to_coords(s0, nu)) == cochain_to_coords(s1, delta(f2, adj, nu)));
}

TEST_CASE("composing consecutive coboundaries gives zero") {
  struct Pair {
    HLR3Algebra alg;
    std::string module;
  };
  std::vector<Pair> pairs;
  pairs.push_back({make_f1(), "trivial"});
  pairs.push_back({make_f2(), "adjoint"});
  pairs.push_back({make_f2(), "coefficients"});
  pairs.push_back({make_f3(), "adjoint"});
  pairs.push_back({make_f2prime(), "coefficients"});
  pairs.push_back({make_f4(), "coefficients"});
  for (const auto& [alg, module] : pairs) {
    LeftModule mod = module_by_name(alg, module);
    INFO(module, " over a ", alg.L_dim, "-dimensional carrier");
    CHECK((delta_matrix(alg, mod, 2) * delta_matrix(alg, mod, 1)).is_zero());
  }
}

TEST_CASE("cohomology dimensions are as frozen") {
  struct Golden {
    HLR3Algebra alg;
    std::string module;
    std::vector<std::array<std::size_t, 4>> czbh;
  };
  std::vector<Golden> table;
  table.push_back({make_f1(), "trivial", {{3, 3, 0, 3}, {1, 1, 0, 1}, {3, 3, 0, 3}}});
  table.push_back({make_f2(), "adjoint", {{16, 12, 0, 12}, {16, 13, 4, 9}, {96, 24, 3, 21}}});
  table.push_back({make_f2(), "coefficients", {{4, 3, 0, 3}, {4, 4, 1, 3}, {24, 6, 0, 6}}});
  table.push_back({make_f3(), "adjoint", {{16, 12, 0, 12}, {16, 13, 4, 9}, {96, 24, 3, 21}}});
  table.push_back({make_f2prime(), "coefficients", {{4, 2, 0, 2}, {4, 2, 2, 0}}});
  table.push_back({make_f4(), "coefficients", {{6, 3, 0, 3}, {10, 3, 3, 0}}});
  for (const auto& [alg, module, czbh] : table) {
    LeftModule mod = module_by_name(alg, module);
    for (std::size_t n = 0; n < czbh.size(); ++n) {
      CohomologyDims d = cohomology_dim(alg, mod, n);
      INFO(module, " degree ", n, " over a ", alg.L_dim, "-dimensional carrier");
      CHECK(d.dim_c == czbh[n][0]);
      CHECK(d.dim_z == czbh[n][1]);
      CHECK(d.dim_b == czbh[n][2]);
      CHECK(d.dim_h == czbh[n][3]);
    }
  }
}

TEST_CASE("cocycle bases consist of checked cocycles") {
  HLR3Algebra f2 = make_f2();
  LeftModule adj = make_adjoint_module(f2);
  std::vector<Cochain> z0 = cocycle_basis(f2, adj, 0);
  CHECK(z0.size() == 12);
  std::vector<Cochain> z1 = cocycle_basis(f2, adj, 1);
  CHECK(z1.size() == 13);
  for (const Cochain& f : z1) {
    CHECK(check_cochain(f2, adj, f).passed());
    CHECK(is_cocycle(f2, adj, f));
  }
}

TEST_CASE("the bracket itself is a one-cocycle in the adjoint coefficients") {
  HLR3Algebra f2 = make_f2();
  LeftModule adj = make_adjoint_module(f2);
  Cochain br = bracket_1cochain(f2);
  CHECK(check_cochain(f2, adj, br).passed());
  CHECK(is_cocycle(f2, adj, br));
  CHECK(check_1cocycle_literal(f2, adj, br));
}

TEST_CASE("displayed and canonical degree-0 cocycle conditions disagree on the identity") {
  HLR3Algebra f2 = make_f2();
  LeftModule adj = make_adjoint_module(f2);
  Cochain nu = identity_0cochain(f2);
  CHECK(check_0cocycle_literal(f2, adj, nu));
  CHECK(!is_cocycle(f2, adj, nu));
  Cochain zero = zero_cochain(0, 4, 4);
  CHECK(check_0cocycle_literal(f2, adj, zero));
  CHECK(is_cocycle(f2, adj, zero));
}

TEST_CASE("both degree-0 conditions hold on an abelian carrier") {
  HLR3Algebra f1 = make_f1();
  LeftModule triv = make_trivial_module(f1);
  CochainSpaceBasis space = cochain_space(f1, triv, 0);
  for (std::size_t i = 0; i < space.dim(); ++i) {
    Cochain nu = space.basis_cochain(i);
    CHECK(check_0cocycle_literal(f1, triv, nu));
    CHECK(is_cocycle(f1, triv, nu));
  }
}

TEST_CASE("literal condition checkers validate the cochain degree") {
  HLR3Algebra f2 = make_f2();
  LeftModule adj = make_adjoint_module(f2);
  CHECK_THROWS_AS((void)check_0cocycle_literal(f2, adj, zero_cochain(1, 4, 4)),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)check_1cocycle_literal(f2, adj, zero_cochain(0, 4, 4)),
                  std::invalid_argument);
}
