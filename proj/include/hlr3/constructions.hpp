#ifndef HLR3_CONSTRUCTIONS_HPP
#define HLR3_CONSTRUCTIONS_HPP

#include <vector>

#include "hlr3/algebra.hpp"

namespace hlr3 {

/// Plain triple-bracket algebra with a twist, the tensor_extension input.
struct HomLie3 {
  std::size_t dim = 0;
  Tensor bracket;
  Matrix alpha;
};

/// Raised when a construction's mathematical precondition fails; carries the
/// verification report naming the violated condition.
class PreconditionError : public std::runtime_error {
public:
  PreconditionError(const std::string& message, VerificationReport report);

  [[nodiscard]] const VerificationReport& report() const { return report_; }

private:
  VerificationReport report_;
};

/// Wraps a triple-bracket algebra over the one-dimensional base algebra with
/// the trivial action and zero anchor.
[[nodiscard]] HLR3Algebra embed_hom_lie3(const HomLie3& l3);

/// Identity embedding of an untwisted algebra; rejects inputs whose twists
/// are not the identity or that fail verification.
[[nodiscard]] HLR3Algebra from_3_lie_rinehart(const HLR3Algebra& alg);

/// Composes a self-morphism (phi_new, alpha_new) into the structure: bracket
/// becomes alpha_new([.,.,.]), anchor becomes phi_new(rho(.,.)), twists
/// compose. The pair must pass verify_morphism from the algebra to itself.
[[nodiscard]] HLR3Algebra yau_twist(const HLR3Algebra& alg, const Matrix& phi_new,
                                    const Matrix& alpha_new);

/// Free extension of scalars: the carrier is A tensor L with basis index
/// p*dim(L)+i for a_p tensor e_i, the bracket carries three anchor correction
/// terms, and the anchor multiplies by phi of the leading coefficients.
[[nodiscard]] HLR3Algebra tensor_extension(const HomLie3& l3, const CommAlgebra& a,
                                           const Anchor& rho);

/// Pairs (l, m) whose anchor columns agree, with componentwise structure.
/// Both inputs must share the base algebra and have equal carrier dimension;
/// closure of the kernel under the action, bracket, and twist is checked and
/// a ContainmentError carries the escaping vector otherwise.
[[nodiscard]] HLR3Algebra fiber_product(const HLR3Algebra& alg_l, const HLR3Algebra& alg_m);

/// Carrier L + A with bracket ([x,y,z], rho(x,y)c + rho(y,z)a + rho(z,x)b),
/// blockwise twist, and the anchor lifted from the L block.
[[nodiscard]] HLR3Algebra semidirect_product(const HLR3Algebra& alg);

/// Carrier L + M with the module action entering the bracket through psi.
/// The result is intentionally not verified: a later verify_all decides
/// whether the module data was admissible.
[[nodiscard]] HLR3Algebra module_semidirect_sum(const HLR3Algebra& alg, const LeftModule& mod);

/// Basis of the phi-twisted derivations of A.
[[nodiscard]] std::vector<Matrix> derivation_space(const CommAlgebra& a);

/// Searches for a nonzero anchor satisfying every anchor axiom over the
/// given bracket and twist: solves the linear conditions, then filters the
/// kernel basis through check_anchor_axioms. Returns the zero anchor when
/// nothing passes.
[[nodiscard]] Anchor find_admissible_anchor(const CommAlgebra& a, std::size_t l_dim,
                                            const Tensor& bracket, const Matrix& alpha);

/// The zero anchor of the given shape.
[[nodiscard]] Anchor zero_anchor(std::size_t l_dim, std::size_t a_dim);

}  // namespace hlr3

#endif
