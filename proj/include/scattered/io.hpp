#pragma once

// Text serialization: matrices as one row per line with coordinates written
// as base-p digit strings, polynomials and coordinate vectors as the same
// digit strings. Round-trips are exact.

#include <sstream>
#include <string>

#include "linalg.hpp"

namespace scattered {

inline std::string coord_string(const Field& F, u32 code) {
  if (code >= F.size()) throw std::invalid_argument("coordinate code out of range");
  const u32 p = F.characteristic();
  std::string s(F.degree_over_prime(), '0');
  for (auto it = s.rbegin(); it != s.rend(); ++it) {
    *it = char('0' + code % p);
    code /= p;
  }
  return s;
}

inline u32 parse_coord(const Field& F, const std::string& token) {
  if (token.empty() || token.size() != F.degree_over_prime())
    throw std::invalid_argument("coordinate '" + token + "' needs " + std::to_string(F.degree_over_prime()) +
                                " digits");
  u64 code = 0;
  for (char c : token) {
    if (c < '0' || c >= char('0' + std::min<u32>(F.characteristic(), 10)))
      throw std::invalid_argument("bad digit in coordinate '" + token + "'");
    code = code * F.characteristic() + u32(c - '0');
  }
  if (code >= F.size()) throw std::invalid_argument("coordinate '" + token + "' out of range");
  return u32(code);
}

inline std::string vector_to_text(const VectorSpace& V, u64 code) {
  std::string out;
  for (u32 i = 0; i < V.n(); ++i) {
    if (i) out += ' ';
    out += coord_string(V.field(), V.digit(code, i));
  }
  return out;
}

inline u64 parse_vector(const VectorSpace& V, const std::string& line) {
  std::istringstream in(line);
  std::string token;
  u64 code = 0;
  u32 got = 0;
  while (in >> token) {
    if (got == V.n()) throw std::invalid_argument("too many coordinates in row");
    code = code * V.q() + parse_coord(V.field(), token);
    ++got;
  }
  if (got != V.n()) throw std::invalid_argument("row needs " + std::to_string(V.n()) + " coordinates");
  return code;
}

inline std::string matrix_to_text(const Subspace& U) {
  std::string out;
  for (u64 r : U.rows()) {
    out += vector_to_text(U.space(), r);
    out += '\n';
  }
  return out;
}

/* blank lines and lines starting with '#' are skipped */
inline std::vector<u64> parse_matrix(const VectorSpace& V, const std::string& text) {
  std::vector<u64> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos || line[pos] == '#') continue;
    rows.push_back(parse_vector(V, line));
  }
  return rows;
}

/* comma-separated small integers, low degree first */
inline std::vector<u32> parse_int_list(const std::string& text) {
  std::vector<u32> out;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) {
    if (token.find_first_not_of("0123456789 \t") != std::string::npos || token.find_first_not_of(" \t") == std::string::npos)
      throw std::invalid_argument("bad integer list entry '" + token + "'");
    out.push_back(u32(std::stoul(token)));
  }
  if (out.empty()) throw std::invalid_argument("empty integer list");
  return out;
}

}  // namespace scattered
