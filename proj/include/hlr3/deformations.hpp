#ifndef HLR3_DEFORMATIONS_HPP
#define HLR3_DEFORMATIONS_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "hlr3/algebra.hpp"
#include "hlr3/constructions.hpp"
#include "hlr3/tensor.hpp"

namespace hlr3 {

/// Degree n multiderivation of the bracket module: a totally skew (n+1)-linear
/// map L^(n+1) -> L with an n-linear symbol valued in operators on A.
/// map.at({i_0,...,i_n, l}) is the coefficient of e_l in D(e_{i_0},...,e_{i_n});
/// symbol holds the matrix of sigma(e_{i_1},...,e_{i_n}) at the row-major flat
/// index of (i_1,...,i_n), a single matrix when the degree is zero.
struct Multiderivation {
  std::size_t degree = 0;
  Tensor map;
  std::vector<Matrix> symbol;
};

/// Zero map of the given degree with a zero symbol table.
[[nodiscard]] Multiderivation zero_multiderivation(const HLR3Algebra& alg, std::size_t degree);

/// The bracket paired with the anchor as its symbol, packaged as a degree 2
/// multiderivation. A failing condition throws PreconditionError, since it
/// indicates the input algebra itself is broken.
[[nodiscard]] Multiderivation structure_as_multiderivation(const HLR3Algebra& alg);

/// Conditions, in order: map_skew, map_equivariance, symbol_skew,
/// symbol_equivariance, symbol_derivation, symbol_a_linear, leibniz_rule.
/// The symbol conditions scale moved coefficients through phi^degree; the
/// A-linearity and Leibniz checks run over every final index, repeats
/// included, so degenerate tuples cannot hide a violation.
[[nodiscard]] VerificationReport check_multiderivation(const HLR3Algebra& alg,
                                                       const Multiderivation& d);

/// Shuffle composition of the underlying maps: the value of d2 enters as the
/// first argument of d1, the remaining arguments are twisted by alpha^deg(d2),
/// and the sum runs over ascending block splits with the permutation sign.
/// The result is the full antisymmetrization of a block-skew map, so it
/// vanishes identically once deg(d1) + deg(d2) + 1 exceeds dim L.
[[nodiscard]] Tensor compose(const HLR3Algebra& alg, const Multiderivation& d1,
                             const Multiderivation& d2);

/// Graded bracket (-1)^(pq) d1 compose d2 - d2 compose d1 on the maps.
[[nodiscard]] Tensor gbracket(const HLR3Algebra& alg, const Multiderivation& d1,
                              const Multiderivation& d2);

/// Whether the four-term expansion of the bracket against itself vanishes on
/// every basis quintuple:
///   [a(x),a(y),[u,v,w]] - [a(v),a(w),[x,y,u]] + [a(u),a(w),[x,y,v]]
///                       - [a(u),a(v),[x,y,w]].
/// This matches the Jacobi verdict of verify_hom_jacobi. The shuffle square
/// is not usable here: it degenerates to zero below dim L = 5.
[[nodiscard]] bool maurer_cartan_check(const HLR3Algebra& alg);

/// Differential of the deformation complex on odd-arity multiderivations,
/// evaluated by the pair-convention expansion with the bracket as the pair
/// action. For unary input this agrees exactly with gbracket against the
/// structure multiderivation. The output carries a zero symbol table.
/// Even-arity input throws invalid_argument.
[[nodiscard]] Multiderivation def_delta(const HLR3Algebra& alg, const Multiderivation& d);

/// Formal deformation truncated at t^order: terms[n] multiplies t^n, each of
/// degree 2, and terms[0] must equal the structure multiderivation.
struct DeformationSeries {
  std::size_t order = 0;
  std::vector<Multiderivation> terms;
};

/// The series (m, 0, ..., 0) of the given order.
[[nodiscard]] DeformationSeries undeformed_series(const HLR3Algebra& alg, std::size_t order);

/// strict_order collects the t^n equations for n <= order; full_truncation
/// additionally demands the equations up to 2*order generated by the
/// truncated terms alone, i.e. the truncation solves Maurer-Cartan as a
/// polynomial.
enum class DeformationMode { strict_order, full_truncation };

/// One condition per order, named order_<n>; a failing condition records the
/// witness quintuple in its indices. Structural defects of the series throw
/// invalid_argument.
[[nodiscard]] VerificationReport check_deformation(const HLR3Algebra& alg,
                                                   const DeformationSeries& series,
                                                   DeformationMode mode);

/// Change of variables Phi_t = id + sum_{i>=1} t^i terms[i-1]; every term
/// must commute with alpha.
struct FormalAutomorphism {
  std::size_t order = 0;
  std::vector<Matrix> terms;
};

/// Single condition alpha_commutes; failing indices are {term, row, col}.
[[nodiscard]] VerificationReport check_formal_automorphism(const HLR3Algebra& alg,
                                                           const FormalAutomorphism& phi);

/// Transports the series through Phi_t:
///   new_m_t(x, y, z) = Phi_t^{-1} m_t(Phi_t x, Phi_t y, Phi_t z)
/// truncated at the series order, with the inverse built order by order via
/// Psi_k = -sum_{j=1..k} Phi_j Psi_{k-j}. Transported higher terms carry zero
/// symbols. The automorphism order must match the series order.
[[nodiscard]] DeformationSeries apply_equivalence(const HLR3Algebra& alg,
                                                  const DeformationSeries& series,
                                                  const FormalAutomorphism& phi);

/// One trivialization step: requires the terms below n to vanish and
/// def_delta(phi) to equal the order-n term, transports by Phi_t = id - t^n
/// phi, and verifies the output's order-n term is exactly zero.
[[nodiscard]] DeformationSeries trivialize_step(const HLR3Algebra& alg,
                                                const DeformationSeries& series, std::size_t n,
                                                const Multiderivation& phi);

/// Solves def_delta(phi) = target over unary maps commuting with alpha;
/// nullopt when no solution exists. Needs the adjoint coefficient pair, so a
/// base algebra whose anchor breaks that pair propagates ContainmentError.
[[nodiscard]] std::optional<Multiderivation> trivializing_map(const HLR3Algebra& alg,
                                                              const Multiderivation& target);

/// Class data for the first nonvanishing term beyond the structure.
struct InfinitesimalClass {
  /// No term beyond the structure is nonzero.
  bool trivial_to_order = false;
  /// Index of the first nonzero term when not trivial.
  std::size_t order = 0;
  /// That term, the coset representative.
  Multiderivation representative;
  /// def_delta of the representative vanishes.
  bool closed = false;
  /// The representative is itself a coboundary.
  bool bounding = false;
  /// A unary map with def_delta(primitive) = representative, when bounding.
  std::optional<Multiderivation> primitive;
  /// Basis of the space of ternary coboundaries.
  std::vector<Multiderivation> coboundary_basis;
  /// Every ternary cocycle bounds, so every infinitesimal can be removed.
  bool rigid = false;
};

/// Locates the first nonzero term, certifies closedness under def_delta,
/// solves for a bounding unary map, and probes rigidity at the ternary spot.
[[nodiscard]] InfinitesimalClass infinitesimal_class(const HLR3Algebra& alg,
                                                     const DeformationSeries& series);

}  // namespace hlr3

#endif
