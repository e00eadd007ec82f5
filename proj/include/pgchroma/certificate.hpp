#pragma once

// Certificate files:
//
//   pgchroma v1
//   n=<n> q=<q> t=<t> k=<k>
//   <c1c2...cn> <color>        one line per point, canonical order
//
// Each ci is the element code of one coordinate (a single digit since q <= 9).

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "pgchroma/coloring.hpp"
#include "pgchroma/error.hpp"

namespace pgchroma {

inline constexpr std::string_view kCertificateMagic = "pgchroma v1";

inline void write_certificate(const Coloring& c, std::ostream& out) {
  c.check();
  out << kCertificateMagic << '\n';
  out << "n=" << c.n() << " q=" << c.q() << " t=" << c.t << " k=" << c.k << '\n';
  for (std::uint32_t i = 0; i < c.colors.size(); ++i) out << c.space->label({i}) << ' ' << int{c.colors[i]} << '\n';
}

inline void write_certificate(const Coloring& c, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::ParseError, "cannot open " + path + " for writing");
  write_certificate(c, out);
  if (!out) throw Error(ErrorKind::ParseError, "write to " + path + " failed");
}

inline std::string certificate_text(const Coloring& c) {
  std::ostringstream s;
  write_certificate(c, s);
  return s.str();
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  return s;
}

inline bool parse_int(std::string_view s, int& out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

// Parses "key=value" and checks the key.
inline int parse_field(std::string_view token, std::string_view key, int line) {
  int value = 0;
  if (token.size() <= key.size() + 1 || token.substr(0, key.size()) != key || token[key.size()] != '=' ||
      !parse_int(token.substr(key.size() + 1), value))
    throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": expected " + std::string(key) + "=<int>", line);
  return value;
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace detail

inline Coloring read_certificate(std::istream& in) {
  auto fail = [](int line, const std::string& msg) -> Error {
    return Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": " + msg, line);
  };
  std::string raw;
  int line = 1;
  if (!std::getline(in, raw) || detail::trim(raw) != kCertificateMagic) throw fail(1, "missing 'pgchroma v1' header");
  ++line;
  if (!std::getline(in, raw)) throw fail(2, "missing parameter line");
  auto fields = detail::split_ws(detail::trim(raw));
  if (fields.size() != 4) throw fail(2, "expected 'n=<n> q=<q> t=<t> k=<k>'");
  const int n = detail::parse_field(fields[0], "n", 2);
  const int q = detail::parse_field(fields[1], "q", 2);
  const int t = detail::parse_field(fields[2], "t", 2);
  const int k = detail::parse_field(fields[3], "k", 2);
  if (!is_supported_order(q)) throw fail(2, "unsupported field order q=" + std::to_string(q));
  if (n < 1 || n > kMaxDimension) throw fail(2, "n out of range");
  if (t < 2) throw fail(2, "t must be at least 2");
  if (k < 1 || k > kMaxColors) throw fail(2, "k must be in [1,255]");

  SpacePtr space = ProjectiveSpace::create(n, q);
  Coloring c(space, t, k);
  std::vector<bool> seen(space->size(), false);
  std::size_t next = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto body = detail::trim(raw);
    if (body.empty()) continue;
    if (next == space->size())
      throw Error(ErrorKind::ChecksumMismatch, "line " + std::to_string(line) + ": more point lines than the " +
                                                   std::to_string(space->size()) + " implied by the header", line);
    auto tokens = detail::split_ws(body);
    if (tokens.size() != 2) throw fail(line, "expected '<coordinates> <color>'");
    const auto digits = tokens[0];
    if (static_cast<int>(digits.size()) != n) throw fail(line, "coordinate tuple must have " + std::to_string(n) + " digits");
    std::uint64_t code = 0;
    for (char ch : digits) {
      if (ch < '0' || ch > '9' || ch - '0' >= q) throw fail(line, "coordinate digit outside GF(" + std::to_string(q) + ")");
      code = code * static_cast<std::uint64_t>(q) + static_cast<std::uint64_t>(ch - '0');
    }
    if (!space->is_normalized(code)) throw fail(line, "point " + std::string(digits) + " is not normalized");
    const std::uint32_t id = space->index_of(code);
    if (seen[id]) throw fail(line, "duplicate point " + std::string(digits));
    if (id != next) throw fail(line, "point " + std::string(digits) + " out of canonical order");
    int color = 0;
    if (!detail::parse_int(tokens[1], color) || color < 0) throw fail(line, "bad color");
    if (color >= k) throw fail(line, "color " + std::to_string(color) + " not below k=" + std::to_string(k));
    seen[id] = true;
    c.colors[id] = static_cast<Color>(color);
    ++next;
  }
  if (next != space->size())
    throw Error(ErrorKind::ChecksumMismatch,
                "body has " + std::to_string(next) + " points, header implies " + std::to_string(space->size()), line);
  return c;
}

inline Coloring read_certificate(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
  return read_certificate(in);
}

inline Coloring parse_certificate(const std::string& text) {
  std::istringstream in(text);
  return read_certificate(in);
}

}  // namespace pgchroma
