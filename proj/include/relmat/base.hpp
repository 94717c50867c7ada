//  Copyright 2026 The relmat Authors
//
//  Licensed under the Apache License, Version 2.0 (the "License");
//  you may not use this file except in compliance with the License.
//  You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
//  Unless required by applicable law or agreed to in writing, software
//  distributed under the License is distributed on an "AS IS" BASIS,
//  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//  See the License for the specific language governing permissions and
//  limitations under the License.

#pragma once

#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace relmat {

/// A tuple of element indices. Comparison is lexicographic.
using Tuple = std::vector<int>;

/// Base class for all errors raised by the library.
class error : public std::runtime_error {
 public:
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed text or JSON input. Carries the 1-based line and column of
/// the offending token when known (0 when not).
class parse_error : public error {
 public:
  explicit parse_error(const std::string& what, int line = 0, int column = 0)
      : error(format(what, line, column)), line_(line), column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  static std::string format(const std::string& what, int line, int column) {
    if (line <= 0) return what;
    std::ostringstream os;
    os << "line " << line;
    if (column > 0) os << ", column " << column;
    os << ": " << what;
    return os.str();
  }

  int line_;
  int column_;
};

/// A constructed universe would exceed the configured cap.
class universe_cap_error : public error {
 public:
  using error::error;
};

/// Default cap on the size of constructed product universes.
inline constexpr int kDefaultUniverseCap = 4096;

/// Mixed-radix encoding of coordinate tuples as single indices.
/// Coordinate 0 is the least significant digit, so indices sort the same
/// way as tuples read right to left; tuple (a,b,c) over radices (p,q,r)
/// encodes as a + b*p + c*p*q.
inline int mixed_radix_encode(const Tuple& coords, const std::vector<int>& radices) {
  int code = 0;
  int weight = 1;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    code += coords[i] * weight;
    weight *= radices[i];
  }
  return code;
}

inline Tuple mixed_radix_decode(int code, const std::vector<int>& radices) {
  Tuple coords(radices.size(), 0);
  for (std::size_t i = 0; i < radices.size(); ++i) {
    coords[i] = code % radices[i];
    code /= radices[i];
  }
  return coords;
}

/// 64-bit FNV-1a, used for canonical input digests in reports.
inline std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t value) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[value & 0xf];
    value >>= 4;
  }
  return out;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw error("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw error("failed writing '" + path + "'");
}

namespace detail {

inline bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  auto head = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
  auto tail = [&](char c) { return head(c) || (c >= '0' && c <= '9'); };
  if (!head(s[0])) return false;
  for (std::size_t i = 1; i < s.size(); ++i)
    if (!tail(s[i])) return false;
  return true;
}

}  // namespace detail

}  // namespace relmat
