#pragma once

#include <string_view>

#include "brent/scheme.hpp"
#include "brent/scheme_io.hpp"

namespace brent {

/// Strassen's 2x2 scheme with coefficients reduced mod 2.
Scheme strassen();

/// The two neighboring 3x3 rank-23 schemes that share summands 1-19.
Scheme fig1_scheme_a();
Scheme fig1_scheme_b();

/// Text of the neighboring schemes exactly as printed (summands 1-19, then
/// the four A and four B variants), in the human scheme format.
std::string_view fig1_scheme_a_text();
std::string_view fig1_scheme_b_text();

/// Gamma convention the printed neighboring schemes turned out to use; the
/// loaders pick whichever convention verifies.
GammaConvention fig1_gamma_convention();

}  // namespace brent
