// JSON file formats for derivations and sequent proofs (see FORMATS.md).

#ifndef BLLP_SERIAL_HPP
#define BLLP_SERIAL_HPP

#include <string>

#include "bllp/proofs.hpp"
#include "bllp/typing.hpp"

namespace bllp {

inline constexpr int kFormatVersion = 1;

std::string derivation_to_text(const Derivation& d, int indent = 2);
/// Throws ParseError on malformed input or a version mismatch.
Derivation parse_derivation(const std::string& text);

std::string proof_to_text(const Proof& p, int indent = 2);
Proof parse_proof(const std::string& text);

}  // namespace bllp

#endif  // BLLP_SERIAL_HPP
