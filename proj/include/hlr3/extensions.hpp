#ifndef HLR3_EXTENSIONS_HPP
#define HLR3_EXTENSIONS_HPP

#include <optional>
#include <vector>

#include "hlr3/cohomology.hpp"
#include "hlr3/constructions.hpp"

namespace hlr3 {

/// Abelian extension in split coordinates: the total algebra lives on L + M,
/// incl embeds the fiber as the trailing block and proj collapses onto the
/// base. The fiber carries the module structure the extension restricts to.
struct ExtensionDatum {
  HLR3Algebra base;
  LeftModule fiber;
  HLR3Algebra total;
  Matrix incl;
  Matrix proj;
};

/// Base-to-total splitting candidate.
struct Section {
  Matrix tau;
};

/// Structural invariants of the datum, in registry order: proj_incl_zero,
/// incl_injective, proj_surjective, exactness, fiber_abelian,
/// incl_action_compat, incl_twist_compat, proj_action_compat,
/// proj_twist_compat, proj_bracket_compat, proj_anchor_compat,
/// section_projects, section_a_linear, section_twist_compat (the last three
/// for the canonical section x -> (x, 0)).
[[nodiscard]] VerificationReport check_extension(const ExtensionDatum& ext);

/// The splitting x -> (x, 0).
[[nodiscard]] Section canonical_section(const ExtensionDatum& ext);

/// Assembled datum together with the axiom report of its total algebra; the
/// report fails exactly when the input cochain is not a cocycle.
struct ExtensionBuild {
  ExtensionDatum ext;
  VerificationReport verification;
};

/// Total bracket [x+m, y+n, z+p] = [x,y,z] + psi(x,y)p + psi(y,z)m
/// + psi(z,x)n + omega(x,y,z), twist alpha + beta, anchor through proj.
/// omega must be a member of C^1(L; M); whether it is a cocycle is reported,
/// not required.
[[nodiscard]] ExtensionBuild build_extension(const HLR3Algebra& alg, const LeftModule& mod,
                                             const Cochain& omega);

/// The cochain measuring how far a section is from a bracket morphism,
/// omega(x,y,z) = incl^{-1}([tau x, tau y, tau z] - tau([x,y,z])), together
/// with the pair action the section induces on the fiber.
struct SectionCocycle {
  Cochain omega;
  std::vector<std::vector<Matrix>> induced_psi;
};

/// Extracts the cocycle of a section. The section invariants, the ideal
/// property (differences stay in the fiber), membership of the result in
/// C^1, and closedness are all checked; violations throw PreconditionError.
[[nodiscard]] SectionCocycle section_to_cocycle(const ExtensionDatum& ext, const Section& tau);

/// Solves for nu in C^0(L; M) making F(x+m) = x + m + nu(x) an isomorphism
/// of the two totals fixing base and fiber. Returns nullopt when the linear
/// system is inconsistent. Requires equal base and fiber data.
[[nodiscard]] std::optional<Cochain> find_equivalence(const ExtensionDatum& ext_a,
                                                      const ExtensionDatum& ext_b);

/// Basis of the nu in C^0(L; M) for which F_nu = id + incl . nu . proj is an
/// automorphism of the total algebra; coordinates flatten nu as
/// base_index * dim(M) + fiber_index.
[[nodiscard]] SubspaceBasis automorphism_space(const ExtensionDatum& ext);

}  // namespace hlr3

#endif
