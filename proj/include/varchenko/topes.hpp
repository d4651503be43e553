#pragma once

#include <algorithm>
#include <cctype>
#include <compare>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "varchenko/wiring_diagram.hpp"

namespace varchenko {

enum class Sign : signed char { Minus = -1, Zero = 0, Plus = 1 };

// Sign vector of a region: coordinate a is Plus when the region lies above line a.
class Tope {
 public:
  Tope() = default;
  explicit Tope(std::vector<Sign> signs) : signs_(std::move(signs)) {}

  std::size_t size() const { return signs_.size(); }
  Sign operator[](std::size_t a) const { return signs_[a]; }
  Sign& operator[](std::size_t a) { return signs_[a]; }
  const std::vector<Sign>& signs() const { return signs_; }

  Tope negated() const {
    Tope t = *this;
    for (auto& s : t.signs_) s = static_cast<Sign>(-static_cast<signed char>(s));
    return t;
  }

  std::vector<LineId> support() const {
    std::vector<LineId> out;
    for (std::size_t a = 0; a < signs_.size(); ++a)
      if (signs_[a] != Sign::Zero) out.push_back(a);
    return out;
  }

  std::string to_string() const {
    std::string s;
    for (auto x : signs_) s += x == Sign::Plus ? '+' : x == Sign::Minus ? '-' : '0';
    return s;
  }

  friend auto operator<=>(const Tope&, const Tope&) = default;

 private:
  std::vector<Sign> signs_;
};

// Lines on which the two topes take opposite nonzero signs, ascending.
inline std::vector<LineId> separation_set(const Tope& a, const Tope& b) {
  if (a.size() != b.size()) throw std::invalid_argument("topes have different lengths");
  std::vector<LineId> out;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != Sign::Zero && a[i] == static_cast<Sign>(-static_cast<signed char>(b[i]))) out.push_back(i);
  return out;
}

// One tope per line over the characters + - 0. Checks that the set is nonempty,
// that all topes share one support and that it is closed under negation.
inline std::vector<Tope> topes_from_file(std::string_view text) {
  std::vector<Tope> out;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::vector<Sign> signs;
    for (std::size_t c = 0; c < line.size(); ++c) {
      char ch = line[c];
      if (ch == '+')
        signs.push_back(Sign::Plus);
      else if (ch == '-')
        signs.push_back(Sign::Minus);
      else if (ch == '0')
        signs.push_back(Sign::Zero);
      else if (!std::isspace(static_cast<unsigned char>(ch)))
        throw ParseError(std::string("unexpected character '") + ch + "' in tope", line_no, c + 1);
    }
    if (!signs.empty()) out.emplace_back(std::move(signs));
  }
  if (out.empty()) throw ValidationError("the tope set is empty");
  const auto support = out.front().support();
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i].size() != out.front().size() || out[i].support() != support)
      throw ValidationError("tope " + std::to_string(i + 1) + " has a different support than tope 1", i);
  }
  std::set<Tope> all(out.begin(), out.end());
  for (std::size_t i = 0; i < out.size(); ++i)
    if (!all.count(out[i].negated()))
      throw ValidationError("the negation of tope " + std::to_string(i + 1) + " is missing", i);
  return out;
}

}  // namespace varchenko
