#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace varchenko {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Weight variable x_index. Indices start at 1.
struct VariableId {
  std::uint32_t index = 0;

  friend constexpr auto operator<=>(const VariableId&, const VariableId&) = default;
};

using Assignment = std::map<VariableId, Rational>;

class MissingVariable : public std::out_of_range {
 public:
  explicit MissingVariable(VariableId v)
      : std::out_of_range("no value assigned to x" + std::to_string(v.index)), variable(v) {}
  VariableId variable;
};

class Monomial {
 public:
  static constexpr std::size_t kMaxVariables = 16;

  Monomial() = default;

  static Monomial variable(VariableId v, unsigned exponent = 1) {
    check_index(v);
    if (exponent > 255) throw std::overflow_error("monomial exponent exceeds 255");
    Monomial m;
    m.exps_[v.index - 1] = static_cast<std::uint8_t>(exponent);
    return m;
  }

  unsigned exponent(VariableId v) const {
    check_index(v);
    return exps_[v.index - 1];
  }

  unsigned degree() const {
    unsigned d = 0;
    for (auto e : exps_) d += e;
    return d;
  }

  bool is_one() const { return degree() == 0; }

  // Largest variable index with a nonzero exponent, 0 for the constant monomial.
  std::uint32_t max_variable() const {
    for (std::size_t i = kMaxVariables; i-- > 0;)
      if (exps_[i] != 0) return static_cast<std::uint32_t>(i + 1);
    return 0;
  }

  std::vector<VariableId> variables() const {
    std::vector<VariableId> out;
    for (std::size_t i = 0; i < kMaxVariables; ++i)
      if (exps_[i] != 0) out.push_back(VariableId{static_cast<std::uint32_t>(i + 1)});
    return out;
  }

  Monomial operator*(const Monomial& other) const {
    Monomial m;
    for (std::size_t i = 0; i < kMaxVariables; ++i) {
      unsigned e = unsigned(exps_[i]) + other.exps_[i];
      if (e > 255) throw std::overflow_error("monomial exponent exceeds 255");
      m.exps_[i] = static_cast<std::uint8_t>(e);
    }
    return m;
  }

  bool divides(const Monomial& other) const {
    for (std::size_t i = 0; i < kMaxVariables; ++i)
      if (exps_[i] > other.exps_[i]) return false;
    return true;
  }

  // Requires divisor.divides(*this).
  Monomial quotient(const Monomial& divisor) const {
    Monomial m;
    for (std::size_t i = 0; i < kMaxVariables; ++i)
      m.exps_[i] = static_cast<std::uint8_t>(exps_[i] - divisor.exps_[i]);
    return m;
  }

  Monomial capped(unsigned cap) const {
    Monomial m = *this;
    for (auto& e : m.exps_) e = static_cast<std::uint8_t>(std::min<unsigned>(e, cap));
    return m;
  }

  // Graded order; ties are broken at the highest differing variable, where the
  // smaller exponent sorts first. This is a monomial order, so leading terms
  // behave under multiplication.
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
    if (auto c = a.degree() <=> b.degree(); c != 0) return c;
    for (std::size_t i = kMaxVariables; i-- > 0;)
      if (a.exps_[i] != b.exps_[i]) return a.exps_[i] <=> b.exps_[i];
    return std::strong_ordering::equal;
  }
  friend bool operator==(const Monomial& a, const Monomial& b) { return a.exps_ == b.exps_; }

  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < kMaxVariables; ++i) {
      if (exps_[i] == 0) continue;
      if (!out.empty()) out += '*';
      out += 'x' + std::to_string(i + 1);
      if (exps_[i] > 1) out += '^' + std::to_string(exps_[i]);
    }
    return out.empty() ? "1" : out;
  }

 private:
  static void check_index(VariableId v) {
    if (v.index == 0 || v.index > kMaxVariables)
      throw std::out_of_range("variable index out of range: " + std::to_string(v.index));
  }

  std::array<std::uint8_t, kMaxVariables> exps_{};
};

class Polynomial {
 public:
  struct Term {
    Monomial monomial;
    Integer coefficient;
    friend bool operator==(const Term&, const Term&) = default;
  };

  Polynomial() = default;
  Polynomial(long long c) {  // NOLINT(google-explicit-constructor): integer literals read naturally
    if (c != 0) terms_.push_back({Monomial{}, Integer(c)});
  }
  explicit Polynomial(const Integer& c) {
    if (c != 0) terms_.push_back({Monomial{}, c});
  }
  Polynomial(const Monomial& m, const Integer& c = 1) {  // NOLINT(google-explicit-constructor)
    if (c != 0) terms_.push_back({m, c});
  }

  static Polynomial variable(VariableId v, unsigned exponent = 1) {
    return Polynomial(Monomial::variable(v, exponent));
  }

  // Terms in ascending monomial order; the last one leads.
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_one() const { return terms_.size() == 1 && terms_[0].monomial.is_one() && terms_[0].coefficient == 1; }
  const Term& leading_term() const { return terms_.back(); }

  unsigned degree() const { return terms_.empty() ? 0 : terms_.back().monomial.degree(); }

  std::set<VariableId> variables() const {
    std::set<VariableId> out;
    for (const auto& t : terms_)
      for (auto v : t.monomial.variables()) out.insert(v);
    return out;
  }

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  Polynomial operator-() const {
    Polynomial r = *this;
    for (auto& t : r.terms_) t.coefficient = -t.coefficient;
    return r;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) { return merge(a, b, false); }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return merge(a, b, true); }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Term> raw;
    raw.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& s : a.terms_)
      for (const auto& t : b.terms_) raw.push_back({s.monomial * t.monomial, s.coefficient * t.coefficient});
    return from_unsorted(std::move(raw));
  }

  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  // Builds a canonical polynomial from arbitrary (possibly repeated or zero) terms.
  static Polynomial from_unsorted(std::vector<Term> raw) {
    std::sort(raw.begin(), raw.end(), [](const Term& x, const Term& y) { return x.monomial < y.monomial; });
    Polynomial r;
    for (auto& t : raw) {
      if (!r.terms_.empty() && r.terms_.back().monomial == t.monomial)
        r.terms_.back().coefficient += t.coefficient;
      else {
        if (!r.terms_.empty() && r.terms_.back().coefficient == 0) r.terms_.pop_back();
        r.terms_.push_back(std::move(t));
      }
    }
    if (!r.terms_.empty() && r.terms_.back().coefficient == 0) r.terms_.pop_back();
    return r;
  }

 private:
  static Polynomial merge(const Polynomial& a, const Polynomial& b, bool subtract) {
    Polynomial r;
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    auto i = a.terms_.begin();
    auto j = b.terms_.begin();
    while (i != a.terms_.end() || j != b.terms_.end()) {
      if (j == b.terms_.end() || (i != a.terms_.end() && i->monomial < j->monomial)) {
        r.terms_.push_back(*i++);
      } else if (i == a.terms_.end() || j->monomial < i->monomial) {
        r.terms_.push_back({j->monomial, subtract ? Integer(-j->coefficient) : j->coefficient});
        ++j;
      } else {
        Integer c = subtract ? Integer(i->coefficient - j->coefficient) : Integer(i->coefficient + j->coefficient);
        if (c != 0) r.terms_.push_back({i->monomial, std::move(c)});
        ++i;
        ++j;
      }
    }
    return r;
  }

  std::vector<Term> terms_;
};

// Truncates every exponent of 3 or more down to 2.
inline Polynomial phi(const Polynomial& p) {
  std::vector<Polynomial::Term> raw;
  raw.reserve(p.terms().size());
  for (const auto& t : p.terms()) raw.push_back({t.monomial.capped(2), t.coefficient});
  return Polynomial::from_unsorted(std::move(raw));
}

// phi of a product, truncating after each multiplication. Agrees with
// phi(f1*...*fk) because phi(pq) = phi(phi(p)phi(q)) holds monomialwise.
inline Polynomial phi_of_product(std::span<const Polynomial> factors) {
  Polynomial acc(1);
  for (const auto& f : factors) acc = phi(acc * f);
  return acc;
}

// Returns r with p = q*r when r exists over the integers, nullopt otherwise.
inline std::optional<Polynomial> try_exact_div(const Polynomial& p, const Polynomial& q) {
  if (q.is_zero()) throw std::domain_error("division by the zero polynomial");
  const auto& lead = q.leading_term();
  std::vector<Polynomial::Term> quotient;
  Polynomial rem = p;
  while (!rem.is_zero()) {
    const auto& top = rem.leading_term();
    if (!lead.monomial.divides(top.monomial)) return std::nullopt;
    Integer c, r;
    boost::multiprecision::divide_qr(top.coefficient, lead.coefficient, c, r);
    if (r != 0) return std::nullopt;
    Polynomial step(top.monomial.quotient(lead.monomial), c);
    quotient.push_back(step.terms().front());
    rem -= step * q;
  }
  std::reverse(quotient.begin(), quotient.end());
  return Polynomial::from_unsorted(std::move(quotient));
}

inline Rational power(const Rational& base, unsigned exponent) {
  Rational r = 1;
  for (unsigned i = 0; i < exponent; ++i) r *= base;
  return r;
}

inline Rational evaluate(const Polynomial& p, const Assignment& at) {
  Rational sum = 0;
  for (const auto& t : p.terms()) {
    Rational term = Rational(t.coefficient);
    for (auto v : t.monomial.variables()) {
      auto it = at.find(v);
      if (it == at.end()) throw MissingVariable(v);
      term *= power(it->second, t.monomial.exponent(v));
    }
    sum += term;
  }
  return sum;
}

inline std::string to_string(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : p.terms()) {
    bool negative = t.coefficient < 0;
    Integer mag = negative ? Integer(-t.coefficient) : t.coefficient;
    if (first)
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    first = false;
    if (t.monomial.is_one())
      out += mag.str();
    else if (mag == 1)
      out += t.monomial.to_string();
    else
      out += mag.str() + "*" + t.monomial.to_string();
  }
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << to_string(p); }
inline std::ostream& operator<<(std::ostream& os, const Monomial& m) { return os << m.to_string(); }

class PolynomialParseError : public std::invalid_argument {
 public:
  PolynomialParseError(const std::string& what, std::size_t pos)
      : std::invalid_argument(what + " at offset " + std::to_string(pos)), offset(pos) {}
  std::size_t offset;
};

namespace detail {

// Recursive descent over: sum := term (('+'|'-') term)*, term := factor ('*' factor)*,
// factor := ('-')? atom ('^' int)?, atom := int | x<int> | '(' sum ')'.
class PolynomialParser {
 public:
  explicit PolynomialParser(std::string_view s) : s_(s) {}

  Polynomial parse() {
    Polynomial p = sum();
    skip();
    if (pos_ != s_.size()) throw PolynomialParseError("unexpected character", pos_);
    return p;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  std::string digits() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) throw PolynomialParseError("expected a number", pos_);
    return std::string(s_.substr(start, pos_ - start));
  }
  Polynomial sum() {
    Polynomial acc = product();
    for (;;) {
      if (eat('+'))
        acc += product();
      else if (eat('-'))
        acc -= product();
      else
        return acc;
    }
  }
  Polynomial product() {
    Polynomial acc = factor();
    while (eat('*')) acc *= factor();
    return acc;
  }
  Polynomial factor() {
    if (eat('-')) return -factor();
    Polynomial base = atom();
    if (eat('^')) {
      unsigned long e = std::stoul(digits());
      Polynomial r(1);
      for (unsigned long i = 0; i < e; ++i) r *= base;
      return r;
    }
    return base;
  }
  Polynomial atom() {
    skip();
    if (eat('(')) {
      Polynomial p = sum();
      if (!eat(')')) throw PolynomialParseError("expected ')'", pos_);
      return p;
    }
    if (pos_ < s_.size() && s_[pos_] == 'x') {
      ++pos_;
      unsigned long idx = std::stoul(digits());
      if (idx == 0 || idx > Monomial::kMaxVariables) throw PolynomialParseError("variable index out of range", pos_);
      return Polynomial::variable(VariableId{static_cast<std::uint32_t>(idx)});
    }
    return Polynomial(Integer(digits()));
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Polynomial parse_polynomial(std::string_view text) { return detail::PolynomialParser(text).parse(); }

// Convenience for 1 - m^2 where m is the product of the given variables.
inline Polynomial one_minus_square(std::span<const VariableId> vars) {
  Monomial m;
  for (auto v : vars) m = m * Monomial::variable(v, 2);
  return Polynomial(1) - Polynomial(m);
}

}  // namespace varchenko
