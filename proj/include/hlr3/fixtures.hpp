#pragma once

#include <string>
#include <vector>

#include "hlr3/algebra.hpp"

namespace hlr3 {

/// Abelian bracket on Q^3 with identity twists and zero anchor.
[[nodiscard]] HLR3Algebra make_f1();

/// Q^4 with [e0,e1,e2] = e3 (skew extended), identity twists, zero anchor.
[[nodiscard]] HLR3Algebra make_f2();

/// F2 with both carrier twist and bracket negated: the Yau twist of F2 along
/// the self-morphism (id, -id).
[[nodiscard]] HLR3Algebra make_f3();

/// F2's bracket over the dual numbers Q[t]/(t^2) with trivial t-action and
/// the first admissible nonzero anchor, rho(e0,e1) = t d/dt.
[[nodiscard]] HLR3Algebra make_f2prime();

/// Semidirect product of F2' with its own base algebra, dimension 6.
[[nodiscard]] HLR3Algebra make_f4();

struct NamedFixture {
  std::string name;
  HLR3Algebra algebra;
};

/// F1..F4 in order; names match the CLI fixture arguments.
[[nodiscard]] std::vector<NamedFixture> all_fixtures();

/// Resolves a fixture name, throwing std::invalid_argument for unknown names.
[[nodiscard]] HLR3Algebra fixture_by_name(const std::string& name);

}  // namespace hlr3
