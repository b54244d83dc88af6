#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "brent/error.hpp"
#include "brent/scheme.hpp"

namespace brent {

/// Index convention of the gamma matrices in serialized data. kFlipped is the
/// internal convention; kApplication stores gamma[r][c] = 1 iff M_l feeds c_{rc}.
enum class GammaConvention { kFlipped, kApplication };

const char* convention_name(GammaConvention c);
GammaConvention parse_convention(std::string_view name);

/// Transposes every gamma matrix (switches between the two conventions).
Scheme flip_gamma(const Scheme& s);

/// Returns the convention under which `as_written` verifies, preferring
/// kFlipped when both do, or nullopt when neither does.
std::optional<GammaConvention> detect_gamma_convention(const Scheme& as_written);

/// Human-readable format:
///
///   scheme n=3 m=23
///   1: (a11 + a13)(b13)(c22 + c32)
///   ...
///
/// '#' starts a comment; whitespace is ignored; an all-zero factor is "(0)".
/// Throws ParseError with the offending line number.
Scheme parse_scheme(std::string_view text);
std::string render_scheme(const Scheme& s);

/// JSON: {"n", "m", "gamma_convention", "label", "summands": [{"alpha", "beta", "gamma"}]}
/// with row-major 0/1 arrays. Application-convention gamma is transposed on import.
Scheme scheme_from_json(std::string_view text);
std::string scheme_to_json(const Scheme& s,
                           GammaConvention convention = GammaConvention::kFlipped);

/// Dispatches on content: JSON if the first non-blank character is '{'.
Scheme parse_scheme_any(std::string_view text);
Scheme load_scheme(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace brent
