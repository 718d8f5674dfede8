// Copyright 2026 The medlat Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <charconv>
#include <compare>
#include <concepts>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "medlat/error.hpp"

namespace medlat {

/// A point of a finite product of chains: one natural number per coordinate.
/// The tag keeps ideal vectors, rank assignments and price vectors apart at
/// the type level while sharing the lattice machinery.
template <class Tag>
class Coords {
 public:
  using value_type = int;

  Coords() = default;
  explicit Coords(std::vector<int> values) : values_(std::move(values)) {}
  Coords(std::initializer_list<int> values) : values_(values) {}

  std::size_t size() const noexcept { return values_.size(); }
  int operator[](std::size_t i) const { return values_[i]; }
  int& operator[](std::size_t i) { return values_[i]; }

  auto begin() const noexcept { return values_.begin(); }
  auto end() const noexcept { return values_.end(); }
  auto begin() noexcept { return values_.begin(); }
  auto end() noexcept { return values_.end(); }

  std::span<const int> values() const noexcept { return values_; }

  friend bool operator==(const Coords&, const Coords&) = default;
  // Lexicographic; used for deterministic ordering only, not the lattice order.
  friend auto operator<=>(const Coords&, const Coords&) = default;

 private:
  std::vector<int> values_;
};

struct IdealTag {};
struct AssignmentTag {};
struct PriceTag {};

using IdealVector = Coords<IdealTag>;
using AssignmentVector = Coords<AssignmentTag>;
using PriceVector = Coords<PriceTag>;

template <class T>
concept LatticeVector = requires(const T& v, std::vector<int> raw) {
  { v.size() } -> std::convertible_to<std::size_t>;
  { v[std::size_t{0}] } -> std::convertible_to<int>;
  T(std::move(raw));
};

template <LatticeVector V>
void require_same_shape(const V& a, const V& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorKind::ShapeMismatch,
                "vectors of length " + std::to_string(a.size()) + " and " +
                    std::to_string(b.size()));
  }
}

template <LatticeVector V>
V meet(const V& a, const V& b) {
  require_same_shape(a, b);
  std::vector<int> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::min(a[i], b[i]);
  return V(std::move(out));
}

template <LatticeVector V>
V join(const V& a, const V& b) {
  require_same_shape(a, b);
  std::vector<int> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::max(a[i], b[i]);
  return V(std::move(out));
}

/// Componentwise order.
template <LatticeVector V>
bool leq(const V& a, const V& b) {
  require_same_shape(a, b);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

template <LatticeVector V>
std::string to_string(const V& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  out += ')';
  return out;
}

template <class Tag>
std::ostream& operator<<(std::ostream& os, const Coords<Tag>& v) {
  return os << to_string(v);
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto first = s.find_first_not_of(ws);
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(ws);
  return s.substr(first, last - first + 1);
}

inline int parse_natural(std::string_view token, std::string_view context) {
  token = trim(token);
  int value = 0;
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (token.empty() || ec != std::errc() || ptr != end || value < 0) {
    throw Error(ErrorKind::MalformedFile,
                "expected a natural number, got '" + std::string(token) +
                    "' in '" + std::string(context) + "'");
  }
  return value;
}

}  // namespace detail

/// Parses "(c1,c2,...)"; whitespace around tokens is ignored. "()" is the
/// zero-length vector.
template <LatticeVector V>
V parse_vector(std::string_view text) {
  const auto s = detail::trim(text);
  if (s.size() < 2 || s.front() != '(' || s.back() != ')') {
    throw Error(ErrorKind::MalformedFile,
                "vector must be parenthesised: '" + std::string(text) + "'");
  }
  const auto body = detail::trim(s.substr(1, s.size() - 2));
  std::vector<int> values;
  if (!body.empty()) {
    std::size_t start = 0;
    while (true) {
      const auto comma = body.find(',', start);
      const auto token = body.substr(
          start, comma == std::string_view::npos ? std::string_view::npos
                                                 : comma - start);
      values.push_back(detail::parse_natural(token, text));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
  }
  return V(std::move(values));
}

/// One vector per non-blank line; lines starting with '#' are comments.
template <LatticeVector V>
std::vector<V> parse_vector_list(std::string_view text) {
  std::vector<V> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    const auto line = detail::trim(text.substr(pos, nl - pos));
    if (!line.empty() && line.front() != '#') out.push_back(parse_vector<V>(line));
    pos = nl + 1;
  }
  return out;
}

}  // namespace medlat
