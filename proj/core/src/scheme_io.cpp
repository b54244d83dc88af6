#include "brent/scheme_io.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace brent {

const char* convention_name(GammaConvention c) {
  return c == GammaConvention::kFlipped ? "flipped" : "application";
}

GammaConvention parse_convention(std::string_view name) {
  if (name == "flipped") return GammaConvention::kFlipped;
  if (name == "application") return GammaConvention::kApplication;
  throw ParseError("unknown gamma_convention '" + std::string(name) + "'", 0);
}

Scheme flip_gamma(const Scheme& s) {
  Scheme out = s;
  for (Summand& sm : out.summands) sm.gamma = sm.gamma.transposed();
  return out;
}

std::optional<GammaConvention> detect_gamma_convention(const Scheme& as_written) {
  if (verify(as_written)) return GammaConvention::kFlipped;
  if (verify(flip_gamma(as_written))) return GammaConvention::kApplication;
  return std::nullopt;
}

namespace {

std::string strip(std::string_view line) {
  std::string out;
  for (char c : line) {
    if (c == '#') break;
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  }
  return out;
}

// Parses "a13+a22" or "0" into m. `pos` points just past '('.
void parse_factor(const std::string& s, std::size_t& pos, char letter, int n, BitMatrix& m,
                  int line) {
  const std::size_t close = s.find(')', pos);
  if (close == std::string::npos) throw ParseError("unterminated factor", line);
  const std::string body = s.substr(pos, close - pos);
  pos = close + 1;
  if (body == "0") return;
  if (body.empty()) throw ParseError("empty factor", line);
  std::size_t p = 0;
  while (p <= body.size()) {
    const std::size_t plus = std::min(body.find('+', p), body.size());
    const std::string entry = body.substr(p, plus - p);
    if (entry.size() != 3 || entry[0] != letter || !std::isdigit(static_cast<unsigned char>(entry[1])) ||
        !std::isdigit(static_cast<unsigned char>(entry[2]))) {
      throw ParseError("malformed entry '" + entry + "' (expected " + letter + "<row><col>)", line);
    }
    const int row = entry[1] - '1';
    const int col = entry[2] - '1';
    if (row < 0 || row >= n || col < 0 || col >= n) {
      throw ParseError("index out of range in '" + entry + "'", line);
    }
    if (m.get(row, col)) throw ParseError("duplicate entry '" + entry + "'", line);
    m.set(row, col);
    p = plus + 1;
  }
}

std::string render_factor(const BitMatrix& m, char letter) {
  std::string out = "(";
  bool first = true;
  for (int r = 0; r < m.dim(); ++r)
    for (int c = 0; c < m.dim(); ++c) {
      if (!m.get(r, c)) continue;
      if (!first) out += " + ";
      out += letter;
      out += std::to_string(r + 1);
      out += std::to_string(c + 1);
      first = false;
    }
  if (first) out += '0';
  out += ')';
  return out;
}

}  // namespace

Scheme parse_scheme(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  std::optional<Scheme> scheme;
  int expected_m = 0;
  int next = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string s = strip(raw);
    if (s.empty()) continue;
    if (!scheme) {
      int n = 0, m = 0;
      char tail = 0;
      if (std::sscanf(s.c_str(), "schemen=%dm=%d%c", &n, &m, &tail) != 2) {
        throw ParseError("expected header 'scheme n=<n> m=<m>'", line);
      }
      if (n < 1 || n > kMaxDimension) throw ParseError("unsupported dimension", line);
      if (m < 0) throw ParseError("negative rank", line);
      scheme.emplace(n, m);
      scheme->summands.clear();
      expected_m = m;
      continue;
    }
    const std::size_t colon = s.find(':');
    if (colon == std::string::npos || colon == 0 || !std::isdigit(static_cast<unsigned char>(s[0]))) {
      throw ParseError("expected '<index>: (...)(...)(...)'", line);
    }
    std::size_t digits = 0;
    while (digits < colon && std::isdigit(static_cast<unsigned char>(s[digits]))) ++digits;
    for (std::size_t i = digits; i < colon; ++i) {
      if (!std::isalpha(static_cast<unsigned char>(s[i]))) throw ParseError("bad summand label", line);
    }
    if (std::stoi(s.substr(0, digits)) != next + 1) {
      throw ParseError("summand numbered out of order (expected " + std::to_string(next + 1) + ")",
                       line);
    }
    if (next >= expected_m) throw ParseError("more summands than m", line);
    Summand sm(scheme->n);
    std::size_t pos = colon + 1;
    constexpr char kLetters[] = {'a', 'b', 'c'};
    for (int f = 0; f < 3; ++f) {
      if (pos >= s.size() || s[pos] != '(') throw ParseError("expected '('", line);
      ++pos;
      parse_factor(s, pos, kLetters[f], scheme->n, sm.matrix(kRoles[f]), line);
    }
    if (pos != s.size()) throw ParseError("trailing characters after third factor", line);
    scheme->summands.push_back(sm);
    ++next;
  }
  if (!scheme) throw ParseError("empty scheme text", line);
  if (next != expected_m) {
    throw ParseError("expected " + std::to_string(expected_m) + " summands, found " +
                         std::to_string(next),
                     line);
  }
  return *scheme;
}

std::string render_scheme(const Scheme& s) {
  std::string out = "scheme n=" + std::to_string(s.n) + " m=" + std::to_string(s.m()) + "\n";
  for (int l = 0; l < s.m(); ++l) {
    const Summand& sm = s.summands[l];
    out += std::to_string(l + 1) + ": " + render_factor(sm.alpha, 'a') +
           render_factor(sm.beta, 'b') + render_factor(sm.gamma, 'c') + "\n";
  }
  return out;
}

namespace {

using nlohmann::json;

json matrix_to_json(const BitMatrix& m) {
  json arr = json::array();
  for (int r = 0; r < m.dim(); ++r)
    for (int c = 0; c < m.dim(); ++c) arr.push_back(m.get(r, c) ? 1 : 0);
  return arr;
}

BitMatrix matrix_from_json(const json& arr, int n) {
  if (!arr.is_array() || arr.size() != static_cast<std::size_t>(n * n)) {
    throw ParseError("matrix must be an array of n*n entries", 0);
  }
  BitMatrix m(n);
  for (int i = 0; i < n * n; ++i) {
    const int v = arr[i].get<int>();
    if (v != 0 && v != 1) throw ParseError("matrix entries must be 0 or 1", 0);
    if (v) m.set(i / n, i % n);
  }
  return m;
}

}  // namespace

Scheme scheme_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
    const int n = doc.at("n").get<int>();
    const int m = doc.at("m").get<int>();
    if (n < 1 || n > kMaxDimension) throw ParseError("unsupported dimension", 0);
    const auto& arr = doc.at("summands");
    if (!arr.is_array() || arr.size() != static_cast<std::size_t>(m)) {
      throw ParseError("summand count does not match m", 0);
    }
    Scheme s(n, m, doc.value("label", std::string{}));
    for (int l = 0; l < m; ++l) {
      s.summands[l].alpha = matrix_from_json(arr[l].at("alpha"), n);
      s.summands[l].beta = matrix_from_json(arr[l].at("beta"), n);
      s.summands[l].gamma = matrix_from_json(arr[l].at("gamma"), n);
    }
    const auto conv = parse_convention(doc.value("gamma_convention", std::string{"flipped"}));
    return conv == GammaConvention::kApplication ? flip_gamma(s) : s;
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid scheme JSON: ") + e.what(), 0);
  }
}

std::string scheme_to_json(const Scheme& s, GammaConvention convention) {
  const Scheme src = convention == GammaConvention::kApplication ? flip_gamma(s) : s;
  json doc;
  doc["n"] = src.n;
  doc["m"] = src.m();
  doc["gamma_convention"] = convention_name(convention);
  doc["label"] = src.label;
  json arr = json::array();
  for (const Summand& sm : src.summands) {
    arr.push_back({{"alpha", matrix_to_json(sm.alpha)},
                   {"beta", matrix_to_json(sm.beta)},
                   {"gamma", matrix_to_json(sm.gamma)}});
  }
  doc["summands"] = std::move(arr);
  return doc.dump(1) + "\n";
}

Scheme parse_scheme_any(std::string_view text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == '{' ? scheme_from_json(text) : parse_scheme(text);
  }
  throw ParseError("empty scheme text", 0);
}

Scheme load_scheme(const std::filesystem::path& path) {
  Scheme s = parse_scheme_any(read_file(path));
  if (s.label.empty()) s.label = path.stem().string();
  return s;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

}  // namespace brent
