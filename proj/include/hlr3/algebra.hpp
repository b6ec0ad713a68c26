#ifndef HLR3_ALGEBRA_HPP
#define HLR3_ALGEBRA_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "hlr3/linalg.hpp"
#include "hlr3/tensor.hpp"

namespace hlr3 {

/// Commutative unital algebra with an endomorphism, given by structure constants.
/// mult.at({i,j,k}) is the coefficient of e_k in e_i * e_j.
struct CommAlgebra {
  std::size_t dim = 0;
  Tensor mult;
  Vec unit;
  Matrix phi;

  [[nodiscard]] Vec multiply(const Vec& a, const Vec& b) const;
  /// Matrix of b -> a*b.
  [[nodiscard]] Matrix mult_operator(const Vec& a) const;
  [[nodiscard]] bool regular() const;
};

/// Action of an algebra on a module: action.at({i,j,k}) is the coefficient of
/// m_k in a_i * m_j.
struct AModuleStructure {
  std::size_t dim = 0;
  Tensor action;

  [[nodiscard]] Vec act(const Vec& a, const Vec& x) const;
  /// Matrix of x -> a*x.
  [[nodiscard]] Matrix action_operator(const Vec& a) const;
};

/// Bilinear extension of a table of matrices indexed by basis pairs.
[[nodiscard]] Matrix pair_eval(const std::vector<std::vector<Matrix>>& table, const Vec& x,
                               const Vec& y);

/// Anchor values on basis pairs: rho[i][j] is the derivation matrix attached
/// to (e_i, e_j), extended bilinearly by evaluate.
struct Anchor {
  std::vector<std::vector<Matrix>> rho;

  [[nodiscard]] Matrix evaluate(const Vec& x, const Vec& y) const;
};

/// The full tuple (A, L, [.,.,.], phi, alpha, rho) by structure constants.
/// bracket.at({i,j,k,l}) is the coefficient of e_l in [e_i, e_j, e_k].
struct HLR3Algebra {
  CommAlgebra A;
  std::size_t L_dim = 0;
  AModuleStructure a_action;
  Tensor bracket;
  Matrix alpha;
  Anchor anchor;

  [[nodiscard]] Vec bracket_of(const Vec& x, const Vec& y, const Vec& z) const;
  [[nodiscard]] Matrix anchor_of(const Vec& x, const Vec& y) const;
  [[nodiscard]] Vec act(const Vec& a, const Vec& x) const;
  /// True when both phi and alpha are invertible.
  [[nodiscard]] bool regular() const;
};

/// Coefficient module over an algebra: twist beta and pair action psi[i][j],
/// a dim x dim matrix for each basis pair of L.
struct LeftModule {
  std::size_t dim = 0;
  AModuleStructure a_action;
  Matrix beta;
  std::vector<std::vector<Matrix>> psi;

  [[nodiscard]] Matrix psi_of(const Vec& x, const Vec& y) const;
};

/// Morphism candidate: g on algebra coordinates, f on module coordinates.
struct HLR3Morphism {
  Matrix g;
  Matrix f;
};

/// Outcome of one named axiom check; indices locate the first failing basis
/// tuple in lexicographic order and lhs/rhs render both side values there.
struct ConditionResult {
  std::string name;
  bool passed = true;
  std::vector<std::size_t> indices;
  std::string lhs;
  std::string rhs;

  [[nodiscard]] std::string describe() const;
};

struct VerificationReport {
  std::vector<ConditionResult> conditions;

  [[nodiscard]] bool passed() const;
  [[nodiscard]] const ConditionResult* first_failure() const;
  [[nodiscard]] std::string summary() const;
};

/// i-th standard basis vector of the given dimension.
[[nodiscard]] Vec unit_vec(std::size_t dim, std::size_t i);

/// Unit and associativity laws of an A-module structure, reported under the
/// given condition name.
[[nodiscard]] ConditionResult check_module_unit(const CommAlgebra& a, const AModuleStructure& mod,
                                                std::string name);
[[nodiscard]] ConditionResult check_module_assoc(const CommAlgebra& a, const AModuleStructure& mod,
                                                 std::string name);

/// Throws std::invalid_argument when tensor shapes are inconsistent.
void validate_shapes(const HLR3Algebra& alg);

/// Checks the alpha-twisted Jacobi identity on all basis quintuples.
[[nodiscard]] VerificationReport verify_hom_jacobi(const HLR3Algebra& alg);

/// Checks every defining axiom; see the condition names in the implementation.
[[nodiscard]] VerificationReport verify_all(const HLR3Algebra& alg);

/// Checks the morphism conditions for (g, f) between two algebras.
[[nodiscard]] VerificationReport verify_morphism(const HLR3Algebra& src, const HLR3Algebra& dst,
                                                 const HLR3Morphism& h);

/// Trilinear extension of the bracket tensor.
[[nodiscard]] Vec evaluate_bracket(const HLR3Algebra& alg, const Vec& x, const Vec& y,
                                   const Vec& z);

/// Anchor derivation of (x, y) applied to the algebra element a.
[[nodiscard]] Vec evaluate_anchor(const HLR3Algebra& alg, const Vec& x, const Vec& y,
                                  const Vec& a);

/// The anchor-only axiom subset over a given bracket and twist: skewness,
/// phi-derivation, equivariance, and both representation axioms. Used by
/// constructions that take an anchor candidate without an ambient algebra.
[[nodiscard]] VerificationReport check_anchor_axioms(const CommAlgebra& a, std::size_t l_dim,
                                                     const Tensor& bracket, const Matrix& alpha,
                                                     const Anchor& rho);

}  // namespace hlr3

#endif
