#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace varchenko {

// Wires are 0-based internally; wire w is drawn at position w+1 in the leftmost slab.
using LineId = std::size_t;

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line_no, std::size_t column_no)
      : std::runtime_error("line " + std::to_string(line_no) + ", column " + std::to_string(column_no) + ": " + what),
        line(line_no),
        column(column_no) {}
  std::size_t line;
  std::size_t column;
};

class ValidationError : public std::runtime_error {
 public:
  ValidationError(const std::string& what, std::optional<std::size_t> where = std::nullopt)
      : std::runtime_error(what), index(where) {}
  // Offending event (wiring input) or tope (tope input), 0-based.
  std::optional<std::size_t> index;
};

// The block of `size` wires at positions bottom..bottom+size-1 (1-based, counted
// from the bottom) reverses its order.
struct Event {
  std::size_t bottom = 1;
  std::size_t size = 2;
  friend bool operator==(const Event&, const Event&) = default;
};

class WiringDiagram {
 public:
  WiringDiagram() = default;

  WiringDiagram(std::size_t wires, std::vector<Event> events) : wires_(wires), events_(std::move(events)) {
    if (wires_ == 0) throw ValidationError("a diagram needs at least one wire");
    std::vector<LineId> order(wires_);
    for (std::size_t w = 0; w < wires_; ++w) order[w] = w;
    orders_.push_back(order);
    std::vector<char> crossed(wires_ * wires_, 0);
    for (std::size_t k = 0; k < events_.size(); ++k) {
      const auto& e = events_[k];
      if (e.size < 2) throw ValidationError("event " + std::to_string(k + 1) + " has size below 2", k);
      if (e.bottom < 1 || e.bottom + e.size - 1 > wires_)
        throw ValidationError("event " + std::to_string(k + 1) + " reaches outside the wires", k);
      for (std::size_t i = e.bottom - 1; i < e.bottom - 1 + e.size; ++i)
        for (std::size_t j = i + 1; j < e.bottom - 1 + e.size; ++j) {
          char& c = crossed[order[i] * wires_ + order[j]];
          if (c)
            throw ValidationError("event " + std::to_string(k + 1) + " crosses wires " + std::to_string(order[i] + 1) +
                                      " and " + std::to_string(order[j] + 1) + " a second time",
                                  k);
          c = crossed[order[j] * wires_ + order[i]] = 1;
        }
      std::reverse(order.begin() + static_cast<std::ptrdiff_t>(e.bottom - 1),
                   order.begin() + static_cast<std::ptrdiff_t>(e.bottom - 1 + e.size));
      orders_.push_back(order);
    }
  }

  std::size_t wires() const { return wires_; }
  const std::vector<Event>& events() const { return events_; }
  std::size_t slab_count() const { return events_.size() + 1; }

  // Wire at each position (0-based, bottom first) in slab j. Slab j lies
  // between event j-1 and event j.
  const std::vector<LineId>& slab_order(std::size_t slab) const { return orders_.at(slab); }

  std::size_t position_of(std::size_t slab, LineId wire) const {
    const auto& o = orders_.at(slab);
    return static_cast<std::size_t>(std::find(o.begin(), o.end(), wire) - o.begin());
  }

  // Wires meeting at event k, bottom to top in the slab left of it.
  std::vector<LineId> event_wires(std::size_t k) const {
    const auto& e = events_.at(k);
    const auto& o = orders_[k];
    return {o.begin() + static_cast<std::ptrdiff_t>(e.bottom - 1),
            o.begin() + static_cast<std::ptrdiff_t>(e.bottom - 1 + e.size)};
  }

  bool is_degenerate(std::size_t k) const { return events_.at(k).size >= 3; }

  std::vector<std::size_t> degenerate_events() const {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < events_.size(); ++k)
      if (is_degenerate(k)) out.push_back(k);
    return out;
  }

  WiringDiagram truncated(std::size_t event_count) const {
    return WiringDiagram(wires_, std::vector<Event>(events_.begin(), events_.begin() + static_cast<std::ptrdiff_t>(event_count)));
  }

  // Mirror image in a horizontal axis. Wire w of the result is wire n-1-w of this one.
  WiringDiagram flipped() const {
    std::vector<Event> ev;
    for (const auto& e : events_) ev.push_back({wires_ + 2 - e.size - e.bottom, e.size});
    return WiringDiagram(wires_, std::move(ev));
  }

  friend bool operator==(const WiringDiagram& a, const WiringDiagram& b) {
    return a.wires_ == b.wires_ && a.events_ == b.events_;
  }

 private:
  std::size_t wires_ = 0;
  std::vector<Event> events_;
  std::vector<std::vector<LineId>> orders_;
};

namespace detail {

struct Token {
  std::string text;
  std::size_t column;
};

inline std::vector<Token> tokenize_line(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '#') break;
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) && line[i] != '#') ++i;
    out.push_back({std::string(line.substr(start, i - start)), start + 1});
  }
  return out;
}

inline std::size_t parse_count(const Token& t, std::size_t line_no) {
  if (t.text.empty() || t.text.size() > 9 ||
      t.text.find_first_not_of("0123456789") != std::string::npos)
    throw ParseError("expected a nonnegative integer, found '" + t.text + "'", line_no, t.column);
  return std::stoul(t.text);
}

}  // namespace detail

// Format: `wires <n>` then one `event <bottom> <size>` per line. `#` starts a comment.
inline WiringDiagram parse_wiring_diagram(std::string_view text) {
  std::optional<std::size_t> wires;
  std::vector<Event> events;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_no;
    start = end + 1;
    auto tokens = detail::tokenize_line(line);
    if (tokens.empty()) continue;
    const auto& kw = tokens[0];
    if (!wires) {
      if (kw.text != "wires") throw ParseError("expected 'wires <n>'", line_no, kw.column);
      if (tokens.size() != 2) throw ParseError("'wires' takes exactly one argument", line_no, kw.column);
      wires = detail::parse_count(tokens[1], line_no);
      if (*wires == 0) throw ParseError("wire count must be positive", line_no, tokens[1].column);
      continue;
    }
    if (kw.text != "event") throw ParseError("expected 'event', found '" + kw.text + "'", line_no, kw.column);
    if (tokens.size() != 3) throw ParseError("'event' takes exactly two arguments", line_no, kw.column);
    events.push_back({detail::parse_count(tokens[1], line_no), detail::parse_count(tokens[2], line_no)});
  }
  if (!wires) throw ParseError("missing 'wires' header", line_no, 1);
  return WiringDiagram(*wires, std::move(events));
}

inline std::string to_text(const WiringDiagram& w) {
  std::ostringstream out;
  out << "wires " << w.wires() << '\n';
  for (const auto& e : w.events()) out << "event " << e.bottom << ' ' << e.size << '\n';
  return out.str();
}

}  // namespace varchenko
