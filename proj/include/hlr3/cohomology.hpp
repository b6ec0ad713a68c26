#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hlr3/algebra.hpp"

namespace hlr3 {

/// Left module axioms over a verified algebra, in registry order:
/// a_module_unit, a_module_assoc, psi_skew, psi_equivariance, rep_r1, rep_r2,
/// beta_compat, psi_a_linearity, psi_leibniz.
[[nodiscard]] VerificationReport module_check(const HLR3Algebra& alg, const LeftModule& mod);

/// M = Q with zero pair action; requires a one-dimensional base algebra.
[[nodiscard]] LeftModule make_trivial_module(const HLR3Algebra& alg);
/// M = L with psi(x,y) = [x,y,-] and beta = alpha.
[[nodiscard]] LeftModule make_adjoint_module(const HLR3Algebra& alg);
/// M = A with psi = rho and beta = phi.
[[nodiscard]] LeftModule make_coefficients_module(const HLR3Algebra& alg);
/// Resolves "trivial", "adjoint", or "coefficients".
[[nodiscard]] LeftModule module_by_name(const HLR3Algebra& alg, const std::string& name);

/// Degree-n cochain: a (2n+1)-linear map L x ... x L -> M stored on all basis
/// tuples; values shape is 2n+1 copies of l_dim followed by m_dim.
struct Cochain {
  std::size_t degree = 0;
  Tensor values;
};

[[nodiscard]] std::size_t cochain_arity(std::size_t degree);
[[nodiscard]] Cochain zero_cochain(std::size_t degree, std::size_t l_dim, std::size_t m_dim);

/// Signed-symmetry skeleton of a degree-n cochain: skew under swapping inside
/// each of the n leading pairs and totally skew in the closing three
/// arguments. Canonical tuples have each leading pair strictly increasing and
/// the closing triple strictly increasing; every other tuple is a signed
/// image of one of them or forced to zero.
struct CochainShape {
  std::size_t degree = 0;
  std::size_t l_dim = 0;
  std::size_t m_dim = 0;
  std::vector<std::vector<std::size_t>> canonical;

  [[nodiscard]] std::size_t arity() const { return cochain_arity(degree); }
  /// Number of free coordinates: canonical.size() * m_dim.
  [[nodiscard]] std::size_t raw_dim() const { return canonical.size() * m_dim; }
  /// Sign and canonical rank of a tuple; nullopt when skewness forces zero.
  [[nodiscard]] std::optional<std::pair<int, std::size_t>> normalize(
      const std::vector<std::size_t>& tuple) const;

 private:
  friend CochainShape cochain_shape(std::size_t, std::size_t, std::size_t);
  std::vector<std::vector<std::size_t>> pair_rank_;
  std::vector<std::vector<std::vector<std::size_t>>> triple_rank_;
  std::size_t n_pairs_ = 0;
  std::size_t n_triples_ = 0;
};

[[nodiscard]] CochainShape cochain_shape(std::size_t degree, std::size_t l_dim,
                                         std::size_t m_dim);

/// Values on canonical tuples, flattened as canonical_rank * m_dim + m_coord.
[[nodiscard]] Vec cochain_to_coords(const CochainShape& shape, const Cochain& f);
/// Signed extension of canonical values to the full tensor.
[[nodiscard]] Cochain cochain_from_coords(const CochainShape& shape, const Vec& coords);

/// Full membership test: tensor shape, signed symmetry on every tuple,
/// beta-equivariance, and A-multilinearity with the phi^(2n+1) twist.
[[nodiscard]] VerificationReport check_cochain(const HLR3Algebra& alg, const LeftModule& mod,
                                               const Cochain& f);

/// Basis of the cochain space in canonical coordinates. When the equivariance
/// and multilinearity constraints are vacuous the basis is the full canonical
/// coordinate space and no vectors are materialized.
struct CochainSpaceBasis {
  std::size_t degree = 0;
  CochainShape shape;
  bool full = false;
  SubspaceBasis coords;

  [[nodiscard]] std::size_t dim() const { return full ? shape.raw_dim() : coords.dim(); }
  /// Canonical coordinates of the i-th basis element.
  [[nodiscard]] Vec basis_coords(std::size_t i) const;
  /// The i-th basis element as a full cochain.
  [[nodiscard]] Cochain basis_cochain(std::size_t i) const;
  /// Coefficients of a canonical-coordinate vector in this basis, with exact
  /// reconstruction check; nullopt when the vector lies outside the space.
  [[nodiscard]] std::optional<Vec> express(const Vec& reduced) const;
};

[[nodiscard]] CochainSpaceBasis cochain_space(const HLR3Algebra& alg, const LeftModule& mod,
                                              std::size_t degree);

/// The coboundary of a degree n-1 cochain, evaluated on every output tuple.
[[nodiscard]] Cochain delta(const HLR3Algebra& alg, const LeftModule& mod, const Cochain& f);

/// Matrix of delta: C^(n-1) -> C^n in the cochain_space bases. Every image is
/// re-checked for membership in C^n; a violation throws ContainmentError.
[[nodiscard]] Matrix delta_matrix(const HLR3Algebra& alg, const LeftModule& mod, std::size_t n);

struct CohomologyDims {
  std::size_t dim_c = 0;
  std::size_t dim_z = 0;
  std::size_t dim_b = 0;
  std::size_t dim_h = 0;
};

/// dim C^n, dim Z^n = ker(delta out of degree n), dim B^n = im(delta into
/// degree n), and dim H^n via the checked quotient.
[[nodiscard]] CohomologyDims cohomology_dim(const HLR3Algebra& alg, const LeftModule& mod,
                                            std::size_t n);

/// Basis of Z^n as full cochains.
[[nodiscard]] std::vector<Cochain> cocycle_basis(const HLR3Algebra& alg, const LeftModule& mod,
                                                 std::size_t n);

/// delta(f) == 0, the canonical cocycle test.
[[nodiscard]] bool is_cocycle(const HLR3Algebra& alg, const LeftModule& mod, const Cochain& f);

/// Literal displayed condition for degree-0 candidates:
/// psi(x,y)nu(z) + psi(x,z)nu(y) + psi(y,z)nu(x) - nu([x,y,z]) = 0.
/// Differs from delta(nu) = 0 in the middle pair order; both verdicts are
/// reported by callers, neither replaces the other.
[[nodiscard]] bool check_0cocycle_literal(const HLR3Algebra& alg, const LeftModule& mod,
                                          const Cochain& nu);

/// Literal displayed condition for degree-1 candidates, with single-alpha
/// twists inside the pair action as displayed.
[[nodiscard]] bool check_1cocycle_literal(const HLR3Algebra& alg, const LeftModule& mod,
                                          const Cochain& omega);

}  // namespace hlr3
