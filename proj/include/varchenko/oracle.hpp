#pragma once

// Brute-force reference implementations. Nothing here may call into the
// geometry, numbering or elimination code it is used to check; only the
// polynomial type and the plain data types are shared.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "varchenko/matrix.hpp"
#include "varchenko/poly.hpp"
#include "varchenko/topes.hpp"
#include "varchenko/wiring_diagram.hpp"

namespace varchenko::oracle {

class SizeExceeded : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Fraction-free elimination with row swaps. `divide` must be exact.
template <class T, class Divide>
T bareiss_determinant(Matrix<T> m, const T& zero, const T& one, Divide divide) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  if (n == 0) return one;
  bool negate = false;
  T previous = one;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == zero) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && m(swap_row, k) == zero) ++swap_row;
      if (swap_row == n) return zero;
      for (std::size_t c = 0; c < n; ++c) std::swap(m(k, c), m(swap_row, c));
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) = divide(m(k, k) * m(i, j) - m(i, k) * m(k, j), previous);
    previous = m(k, k);
  }
  return negate ? T(zero - m(n - 1, n - 1)) : m(n - 1, n - 1);
}

inline Rational rational_determinant(const Matrix<Rational>& m) {
  return bareiss_determinant<Rational>(m, Rational(0), Rational(1), [](const Rational& a, const Rational& b) { return a / b; });
}

inline Rational brute_determinant(const Matrix<Polynomial>& v, const Assignment& at) {
  return rational_determinant(v.map([&](const Polynomial& p) { return evaluate(p, at); }));
}

// Laplace expansion along rows, memoised over the set of remaining columns.
inline Polynomial symbolic_determinant(const Matrix<Polynomial>& m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  if (n > 7) throw SizeExceeded("cofactor expansion is limited to 7x7 matrices");
  std::map<std::uint32_t, Polynomial> memo;
  std::function<Polynomial(std::size_t, std::uint32_t)> minor = [&](std::size_t row, std::uint32_t cols) -> Polynomial {
    if (row == n) return Polynomial(1);
    if (auto it = memo.find(cols); it != memo.end()) return it->second;
    Polynomial acc;
    int sign = 1;
    for (std::size_t c = 0; c < n; ++c) {
      if (!(cols & (1u << c))) continue;
      if (!m(row, c).is_zero()) {
        Polynomial term = m(row, c) * minor(row + 1, cols & ~(1u << c));
        acc = sign > 0 ? acc + term : acc - term;
      }
      sign = -sign;
    }
    memo.emplace(cols, acc);
    return acc;
  };
  return minor(0, n == 0 ? 0u : (1u << n) - 1u);
}

// Bareiss over the polynomial ring for matrices too large for cofactors.
inline Polynomial symbolic_bareiss_determinant(const Matrix<Polynomial>& m) {
  return bareiss_determinant<Polynomial>(m, Polynomial(), Polynomial(1), [](const Polynomial& a, const Polynomial& b) {
    auto q = try_exact_div(a, b);
    if (!q) throw std::logic_error("inexact division inside Bareiss elimination");
    return *q;
  });
}

// Slab-by-slab wire orders, recomputed here so the oracle stays independent.
inline std::vector<std::vector<std::size_t>> naive_slab_orders(std::size_t n, const std::vector<Event>& events) {
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::vector<std::vector<std::size_t>> out{order};
  for (const auto& e : events) {
    std::reverse(order.begin() + static_cast<std::ptrdiff_t>(e.bottom - 1), order.begin() + static_cast<std::ptrdiff_t>(e.bottom - 1 + e.size));
    out.push_back(order);
  }
  return out;
}

// Tests every sign vector: it is a region exactly when, in some slab, the
// wires it lies above form a bottom segment of the wire order.
inline std::set<Tope> naive_regions(const WiringDiagram& w) {
  const std::size_t n = w.wires();
  if (n > 12) throw SizeExceeded("naive region enumeration is limited to 12 wires");
  auto orders = naive_slab_orders(n, w.events());
  std::set<Tope> out;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    bool found = false;
    for (const auto& order : orders) {
      std::size_t p = 0;
      while (p < n && (mask >> order[p] & 1u)) ++p;
      std::size_t rest = p;
      while (rest < n && !(mask >> order[rest] & 1u)) ++rest;
      if (rest == n) {
        found = true;
        break;
      }
    }
    if (!found) continue;
    std::vector<Sign> s(n);
    for (std::size_t a = 0; a < n; ++a) s[a] = (mask >> a & 1u) ? Sign::Plus : Sign::Minus;
    out.insert(Tope(std::move(s)));
  }
  return out;
}

inline std::string fingerprint(const std::set<Tope>& topes) {
  std::vector<std::string> s;
  for (const auto& t : topes) s.push_back(t.to_string());
  std::sort(s.begin(), s.end());
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? ";" : "") + s[i];
  return out;
}

// All diagrams on n wires with at most max_events events, one per tope set.
// Adjacent events acting on disjoint position ranges commute, so only the
// order with the lower block first is explored.
inline void enumerate_diagrams(std::size_t n, std::size_t max_events, bool allow_degenerate,
                               const std::function<void(const WiringDiagram&)>& visit) {
  if (n == 0 || n > 6) throw SizeExceeded("the corpus generator supports 1 to 6 wires");
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::vector<char> crossed(n * n, 0);
  std::vector<Event> events;
  std::set<std::string> seen;
  std::function<void()> dfs = [&]() {
    WiringDiagram d(n, events);
    if (seen.insert(fingerprint(naive_regions(d))).second) visit(d);
    if (events.size() == max_events) return;
    for (std::size_t b = 0; b + 1 < n; ++b)
      for (std::size_t s = 2; b + s <= n; ++s) {
        if (s > 2 && !allow_degenerate) break;
        if (!events.empty()) {
          const auto& prev = events.back();
          bool disjoint = b >= prev.bottom - 1 + prev.size || b + s <= prev.bottom - 1;
          if (disjoint && b < prev.bottom - 1) continue;
        }
        bool ok = true;
        for (std::size_t i = b; i < b + s && ok; ++i)
          for (std::size_t j = i + 1; j < b + s && ok; ++j) ok = !crossed[order[i] * n + order[j]];
        if (!ok) continue;
        for (std::size_t i = b; i < b + s; ++i)
          for (std::size_t j = i + 1; j < b + s; ++j) crossed[order[i] * n + order[j]] = crossed[order[j] * n + order[i]] = 1;
        std::reverse(order.begin() + static_cast<std::ptrdiff_t>(b), order.begin() + static_cast<std::ptrdiff_t>(b + s));
        events.push_back({b + 1, s});
        dfs();
        events.pop_back();
        std::reverse(order.begin() + static_cast<std::ptrdiff_t>(b), order.begin() + static_cast<std::ptrdiff_t>(b + s));
        for (std::size_t i = b; i < b + s; ++i)
          for (std::size_t j = i + 1; j < b + s; ++j) crossed[order[i] * n + order[j]] = crossed[order[j] * n + order[i]] = 0;
      }
  };
  dfs();
}

inline std::vector<WiringDiagram> enumerate_diagrams(std::size_t n, std::size_t max_events, bool allow_degenerate) {
  std::vector<WiringDiagram> out;
  enumerate_diagrams(n, max_events, allow_degenerate, [&](const WiringDiagram& d) { out.push_back(d); });
  return out;
}

inline std::vector<WiringDiagram> full_corpus(std::size_t n, bool allow_degenerate = true) {
  return enumerate_diagrams(n, n * (n - 1) / 2, allow_degenerate);
}

// Seeded rational point with numerators and denominators in [2, 97]. Points
// where any of the `avoid` polynomials vanishes are rejected and the next
// seed is tried.
inline Assignment random_assignment(const std::vector<VariableId>& vars, std::uint64_t seed,
                                    const std::vector<Polynomial>& avoid = {}) {
  for (std::uint64_t attempt = seed;; ++attempt) {
    std::mt19937_64 rng(attempt);
    std::uniform_int_distribution<int> dist(2, 97);
    Assignment a;
    for (auto v : vars) {
      int num = dist(rng);
      int den = dist(rng);
      a[v] = Rational(num, den);
    }
    bool singular = std::any_of(avoid.begin(), avoid.end(), [&](const Polynomial& p) { return evaluate(p, a) == 0; });
    if (!singular) return a;
  }
}

}  // namespace varchenko::oracle
