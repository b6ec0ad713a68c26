#ifndef HLR3_IO_HPP
#define HLR3_IO_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "hlr3/algebra.hpp"
#include "hlr3/deformations.hpp"
#include "hlr3/extensions.hpp"

namespace hlr3 {

/// Schema or syntax violation; path() names the JSON location of the first
/// offending value, e.g. "payload.A.mult[0][1][2]".
class ParseError : public std::runtime_error {
public:
  ParseError(std::string path, const std::string& message);

  [[nodiscard]] const std::string& path() const { return path_; }

private:
  std::string path_;
};

/// Cochain values with a named coefficient module. module_ref is either one
/// of the built-in module names or a path to a module manifest; resolution
/// happens at the call site, not at parse time.
struct CochainPayload {
  std::size_t degree = 0;
  std::string module_ref;
  Tensor values;
};

/// Deformation terms m_1..m_order as ternary cochain tensors; the structure
/// term m_0 is injected by the loader from the ambient algebra. Symbols are
/// optional per-term anchor perturbations, absent means all zero.
struct DeformationPayload {
  std::size_t order = 0;
  std::vector<Tensor> terms;
  std::optional<std::vector<std::vector<Matrix>>> symbols;
};

enum class ManifestKind { algebra, module, cochain, deformation, extension };

/// One parsed file: the payload variant index matches the kind.
struct Manifest {
  std::variant<HLR3Algebra, LeftModule, CochainPayload, DeformationPayload, ExtensionDatum>
      payload;

  [[nodiscard]] ManifestKind kind() const {
    return static_cast<ManifestKind>(payload.index());
  }
};

[[nodiscard]] std::string kind_name(ManifestKind kind);

/// Strict rational syntax: optional minus, digits, optionally "/digits" with
/// a positive denominator. Anything else, including "1/0", throws ParseError
/// with the given path. rational_to_string from linalg inverts it.
[[nodiscard]] Rat parse_rational(const std::string& text, const std::string& path);

/// Parses a manifest from JSON text; every violation names its JSON path.
[[nodiscard]] Manifest parse_manifest(const std::string& text);

/// Deterministic two-space-indented JSON; parse_manifest inverts it exactly.
[[nodiscard]] std::string emit_manifest(const Manifest& manifest);

/// File wrappers; unreadable or unwritable paths throw ParseError at "file".
[[nodiscard]] Manifest load_manifest(const std::string& path);
void save_manifest(const Manifest& manifest, const std::string& path);

/// Accessors that throw ParseError naming the expected kind on mismatch.
[[nodiscard]] const HLR3Algebra& as_algebra(const Manifest& manifest);
[[nodiscard]] const LeftModule& as_module(const Manifest& manifest);
[[nodiscard]] const CochainPayload& as_cochain(const Manifest& manifest);
[[nodiscard]] const DeformationPayload& as_deformation(const Manifest& manifest);
[[nodiscard]] const ExtensionDatum& as_extension(const Manifest& manifest);

/// Builds the full series over the algebra: terms[0] is the structure
/// multiderivation, terms[n] carries the stored map and, when symbols are
/// present, the stored symbol grid, else zeros.
[[nodiscard]] DeformationSeries series_from_payload(const HLR3Algebra& alg,
                                                    const DeformationPayload& payload);

}  // namespace hlr3

#endif
