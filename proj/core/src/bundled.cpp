#include "brent/bundled.hpp"

#include <stdexcept>
#include <string>

namespace brent {

namespace {

// Summands shared by both neighboring schemes.
constexpr std::string_view kSharedSummands = R"(scheme n=3 m=23
1:  (a11 + a13 + a21 + a22 + a23)(b13)(c22 + c32)
2:  (a11 + a13 + a23)(b13 + b32)(c11 + c22 + c31 + c32)
3:  (a11 + a13)(b32)(c21 + c22 + c31 + c32)
4:  (a11 + a31)(b11 + b12 + b13)(c23)
5:  (a11 + a33)(b11 + b13 + b32)(c11 + c23)
6:  (a12 + a13 + a23)(b13 + b33)(c11 + c31)
7:  (a12 + a22 + a32)(b21 + b22 + b23)(c33)
8:  (a12 + a31 + a32 + a33)(b22)(c23 + c33)
9:  (a12 + a33)(b13 + b21 + b33)(c11 + c33)
10: (a12)(b13 + b23 + b33)(c31 + c33)
11: (a21 + a31 + a33)(b11)(c12 + c22)
12: (a21)(b11 + b12 + b13)(c22)
13: (a22 + a31 + a33)(b13 + b22)(c12 + c13 + c22 + c33)
14: (a22 + a32 + a33)(b21)(c13 + c33)
15: (a22)(b13 + b21 + b22)(c12 + c13)
16: (a22)(b13 + b23)(c32 + c33)
17: (a23)(b31)(c11 + c12 + c31 + c32)
18: (a31 + a33)(b11 + b13 + b22)(c12 + c13 + c22 + c23)
19: (a33)(b11 + b21 + b31)(c11 + c13)
)";

constexpr std::string_view kTailA = R"(20A: (a12)(b22)(c21 + c23)
21A: (a11)(b12 + b32)(c21 + c23)
22A: (a13 + a33)(b31 + b32 + b33)(c11)
23A: (a23)(b31 + b32 + b33)(c11 + c31 + c32)
)";

constexpr std::string_view kTailB = R"(20B: (a11 + a12)(b22)(c21 + c23)
21B: (a11)(b12 + b22 + b32)(c21 + c23)
22B: (a13 + a33)(b31 + b32 + b33)(c31 + c32)
23B: (a13 + a23 + a33)(b31 + b32 + b33)(c11 + c31 + c32)
)";

const std::string& text_a() {
  static const std::string text = std::string(kSharedSummands) + std::string(kTailA);
  return text;
}

const std::string& text_b() {
  static const std::string text = std::string(kSharedSummands) + std::string(kTailB);
  return text;
}

Scheme load_printed(std::string_view text, const char* label) {
  Scheme s = parse_scheme(text);
  s.label = label;
  const auto conv = detect_gamma_convention(s);
  if (!conv) throw std::logic_error(std::string("bundled scheme does not verify: ") + label);
  return *conv == GammaConvention::kApplication ? flip_gamma(s) : s;
}

}  // namespace

Scheme strassen() {
  // Application convention: gamma[r][c] = 1 iff M_l appears in c_{rc}.
  //   M1 = (a11 + a22)(b11 + b22)   c11 = M1 + M4 + M5 + M7
  //   M2 = (a21 + a22)(b11)         c12 = M3 + M5
  //   M3 = (a11)(b12 + b22)         c21 = M2 + M4
  //   M4 = (a22)(b21 + b11)         c22 = M1 + M2 + M3 + M6
  //   M5 = (a11 + a12)(b22)
  //   M6 = (a21 + a11)(b11 + b12)
  //   M7 = (a12 + a22)(b21 + b22)
  constexpr std::string_view kApplication = R"(scheme n=2 m=7
1: (a11 + a22)(b11 + b22)(c11 + c22)
2: (a21 + a22)(b11)(c21 + c22)
3: (a11)(b12 + b22)(c12 + c22)
4: (a22)(b11 + b21)(c11 + c21)
5: (a11 + a12)(b22)(c11 + c12)
6: (a11 + a21)(b11 + b12)(c22)
7: (a12 + a22)(b21 + b22)(c11)
)";
  Scheme s = flip_gamma(parse_scheme(kApplication));
  s.label = "strassen";
  return s;
}

Scheme fig1_scheme_a() { return load_printed(text_a(), "fig1_a"); }
Scheme fig1_scheme_b() { return load_printed(text_b(), "fig1_b"); }

std::string_view fig1_scheme_a_text() { return text_a(); }
std::string_view fig1_scheme_b_text() { return text_b(); }

GammaConvention fig1_gamma_convention() {
  const auto conv = detect_gamma_convention(parse_scheme(text_a()));
  if (!conv) throw std::logic_error("bundled scheme does not verify");
  return *conv;
}

}  // namespace brent
