#include "hlr3/fixtures.hpp"

#include <stdexcept>

#include "hlr3/constructions.hpp"

namespace hlr3 {

namespace {

void set_skew_triple(Tensor& bracket, std::size_t i, std::size_t j, std::size_t k, std::size_t l,
                     const Rat& c) {
  bracket.at({i, j, k, l}) = c;
  bracket.at({j, k, i, l}) = c;
  bracket.at({k, i, j, l}) = c;
  bracket.at({j, i, k, l}) = -c;
  bracket.at({i, k, j, l}) = -c;
  bracket.at({k, j, i, l}) = -c;
}

HomLie3 abelian_hom_lie3(std::size_t dim) {
  HomLie3 l3;
  l3.dim = dim;
  l3.bracket = Tensor({dim, dim, dim, dim});
  l3.alpha = Matrix::identity(dim);
  return l3;
}

CommAlgebra dual_numbers() {
  CommAlgebra a;
  a.dim = 2;
  a.mult = Tensor({2, 2, 2});
  a.mult.at({0, 0, 0}) = 1;
  a.mult.at({0, 1, 1}) = 1;
  a.mult.at({1, 0, 1}) = 1;
  a.unit = Vec{Rat(1), Rat(0)};
  a.phi = Matrix::identity(2);
  return a;
}

}  // namespace

HLR3Algebra make_f1() { return embed_hom_lie3(abelian_hom_lie3(3)); }

HLR3Algebra make_f2() {
  HomLie3 l3 = abelian_hom_lie3(4);
  set_skew_triple(l3.bracket, 0, 1, 2, 3, Rat(1));
  return embed_hom_lie3(l3);
}

HLR3Algebra make_f3() {
  Matrix neg = Matrix::identity(4).scaled(Rat(-1));
  return yau_twist(make_f2(), Matrix::identity(1), neg);
}

HLR3Algebra make_f2prime() {
  HLR3Algebra f2 = make_f2();
  CommAlgebra a = dual_numbers();

  HLR3Algebra out;
  out.A = a;
  out.L_dim = 4;
  out.a_action.dim = 4;
  out.a_action.action = Tensor({2, 4, 4});
  for (std::size_t j = 0; j < 4; ++j) out.a_action.action.at({0, j, j}) = 1;
  out.bracket = f2.bracket;
  out.alpha = Matrix::identity(4);
  out.anchor = find_admissible_anchor(a, 4, out.bracket, out.alpha);

  VerificationReport report = verify_all(out);
  if (!report.passed()) throw PreconditionError("fixture F2' failed verification", report);
  return out;
}

HLR3Algebra make_f4() { return semidirect_product(make_f2prime()); }

std::vector<NamedFixture> all_fixtures() {
  return {{"F1", make_f1()}, {"F2", make_f2()}, {"F3", make_f3()}, {"F4", make_f4()}};
}

HLR3Algebra fixture_by_name(const std::string& name) {
  if (name == "F1") return make_f1();
  if (name == "F2") return make_f2();
  if (name == "F3") return make_f3();
  if (name == "F4") return make_f4();
  if (name == "F2prime") return make_f2prime();
  throw std::invalid_argument("unknown fixture: " + name);
}

}  // namespace hlr3
