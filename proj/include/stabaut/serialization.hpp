#pragma once

#include <optional>
#include <string>

#include "stabaut/block_codes.hpp"
#include "stabaut/kr_embed.hpp"

namespace stabaut {

inline constexpr int kFileVersion = 1;

/// Contents of an automorphism file: the forward code and, optionally, its
/// inverse.
struct AutomorphismFile {
  StabilizedCode forward;
  std::optional<StabilizedCode> inverse;
};

/// Canonical JSON (sorted keys, compact, trailing newline).
std::string save_automorphism(const Automorphism& a);
std::string save_code(const StabilizedCode& code);
/// Parses and validates; throws ValidationError naming the first bad locus.
AutomorphismFile load_automorphism_file(const std::string& text);
/// Loads and pairs with an inverse: the stored one (checked) or one found by
/// search up to radius max_inverse_radius. Throws ValidationError otherwise.
Automorphism load_automorphism(const std::string& text, std::size_t max_inverse_radius = 4);

std::string save_marker_scheme(const MarkerScheme& scheme);
MarkerScheme load_marker_scheme(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace stabaut
