#pragma once

// Line-oriented scenario language:
//
//   scenario <name>
//   price <SYM> <tick> <price>
//   at <tick> buy|borrow|short-sell|sell <SYM> <qty>
//   at <tick> cover <SYM> <qty> by-purchase|with-owned
//   at <tick> death [heir <LABEL>]
//
// '#' starts a comment. Tokens are separated by blanks.

#include <charconv>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "realize/error.hpp"
#include "realize/ledger.hpp"
#include "realize/market.hpp"
#include "realize/money.hpp"
#include "realize/scenario.hpp"

namespace realize {

namespace dsl_detail {

struct Token {
  std::string_view text;
  std::size_t column = 0;  // 1-based, in code points
};

inline std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t col = 0;
  std::size_t start = std::string_view::npos;
  std::size_t start_col = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    const bool end = i == line.size() || line[i] == '#';
    const char c = end ? ' ' : line[i];
    const bool blank = c == ' ' || c == '\t' || c == '\r';
    if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) ++col;
    if (blank) {
      if (start != std::string_view::npos) {
        out.push_back({line.substr(start, i - start), start_col});
        start = std::string_view::npos;
      }
      if (end) break;
    } else if (start == std::string_view::npos) {
      start = i;
      start_col = col;
    }
  }
  return out;
}

inline bool is_symbol(std::string_view s) {
  if (s.empty() || s.front() == '-') return false;
  for (char c : s) {
    const bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
                    (c >= '0' && c <= '9') || c == '_' || c == '.' || c == '-';
    if (!ok) return false;
  }
  return true;
}

inline std::optional<std::int64_t> parse_int(std::string_view s) {
  std::int64_t v = 0;
  const auto* first = s.data();
  if (!s.empty() && s.front() == '+') ++first;
  const auto [p, ec] = std::from_chars(first, s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size() || first == s.data() + s.size()) {
    return std::nullopt;
  }
  return v;
}

class LineParser {
 public:
  LineParser(std::size_t line_no, std::vector<Token> toks, std::size_t line_len)
      : line_(line_no), toks_(std::move(toks)), eol_col_(line_len + 1) {}

  [[noreturn]] void fail(ErrorCode code, std::string detail, std::size_t col) const {
    throw Error(code, std::move(detail), SourcePos{line_, col});
  }
  [[noreturn]] void expected(std::string_view what) const {
    const std::string got = pos_ < toks_.size()
                                ? "'" + std::string(toks_[pos_].text) + "'"
                                : std::string("end of line");
    fail(ErrorCode::SyntaxError, "expected " + std::string(what) + ", found " + got, col());
  }

  std::size_t col() const { return pos_ < toks_.size() ? toks_[pos_].column : eol_col_; }
  bool at_end() const { return pos_ >= toks_.size(); }
  std::string_view peek() const { return at_end() ? std::string_view{} : toks_[pos_].text; }
  const Token& next(std::string_view what) {
    if (at_end()) expected(what);
    return toks_[pos_++];
  }

  SecurityId symbol() {
    if (at_end() || !is_symbol(peek())) expected("security symbol");
    return SecurityId{std::string(next("security symbol").text)};
  }
  Tick tick() {
    const auto v = at_end() ? std::nullopt : parse_int(peek());
    if (!v || *v < 0) expected("non-negative integer tick");
    ++pos_;
    return Tick{*v};
  }
  Shares quantity() {
    const auto v = at_end() ? std::nullopt : parse_int(peek());
    if (!v) expected("integer quantity");
    if (*v <= 0) {
      fail(ErrorCode::InvalidQuantity,
           "quantity must be positive, got " + std::to_string(*v), col());
    }
    ++pos_;
    return *v;
  }
  Money price() {
    const auto v = at_end() ? std::nullopt : parse_money(peek());
    if (!v) expected("decimal price with at most two fraction digits");
    ++pos_;
    return *v;
  }
  void finish() {
    if (!at_end()) expected("end of line");
  }

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
  std::vector<Token> toks_;
  std::size_t eol_col_;
  std::size_t pos_ = 0;
};

}  // namespace dsl_detail

/// Parses scenario text. `default_name` is used when no `scenario` line is present.
inline Scenario parse_scenario(std::string_view text, std::string default_name = {}) {
  using dsl_detail::LineParser;
  Scenario s;
  std::optional<std::string> name;
  struct Ref {
    SecurityId sec;
    Tick at;
    bool needs_quote_at_tick;
    SourcePos pos;
  };
  std::vector<Ref> refs;

  std::size_t line_no = 0;
  std::size_t begin = 0;
  while (begin <= text.size()) {
    std::size_t end = text.find('\n', begin);
    if (end == std::string_view::npos) end = text.size();
    const auto line = text.substr(begin, end - begin);
    ++line_no;
    begin = end + 1;

    auto toks = dsl_detail::tokenize(line);
    if (toks.empty()) {
      if (end == text.size()) break;
      continue;
    }
    LineParser p(line_no, std::move(toks), line.size());
    const auto head = p.next("directive");

    if (head.text == "scenario") {
      if (name) p.fail(ErrorCode::SyntaxError, "duplicate scenario name", head.column);
      const auto& tok = p.next("scenario name");
      name = std::string(tok.text);
      p.finish();
    } else if (head.text == "price") {
      const auto sym_col = p.col();
      const SecurityId sec = p.symbol();
      const Tick t = p.tick();
      const Money price = p.price();
      p.finish();
      if (!s.prices.set(sec, t, price)) {
        p.fail(ErrorCode::DuplicatePrice,
               "second price for " + sec.symbol() + " at " + t.to_string(), sym_col);
      }
    } else if (head.text == "at") {
      const auto tick_col = p.col();
      const Tick t = p.tick();
      if (!s.events.empty() && t < s.events.back().at) {
        p.fail(ErrorCode::NonMonotonicTick,
               t.to_string() + " follows " + s.events.back().at.to_string(), tick_col);
      }
      const auto& verb = p.next("event verb");
      if (verb.text == "death") {
        std::string heir;
        if (!p.at_end()) {
          if (p.peek() != "heir") p.expected("'heir' or end of line");
          p.next("heir");
          heir = std::string(p.next("heir label").text);
        }
        p.finish();
        s.events.push_back(TransactionEvent::death(t, std::move(heir)));
        if (end == text.size()) break;
        continue;
      }

      EventKind kind{};
      if (verb.text == "buy") kind = EventKind::Buy;
      else if (verb.text == "borrow") kind = EventKind::Borrow;
      else if (verb.text == "short-sell") kind = EventKind::ShortSell;
      else if (verb.text == "sell") kind = EventKind::SellOwned;
      else if (verb.text == "cover") kind = EventKind::CoverByPurchase;
      else p.fail(ErrorCode::UnknownDirective, "unknown event '" + std::string(verb.text) + "'", verb.column);

      const auto sym_col = p.col();
      const SecurityId sec = p.symbol();
      const Shares qty = p.quantity();
      if (verb.text == "cover") {
        const auto mode = p.at_end() ? std::string_view{} : p.peek();
        if (mode == "by-purchase") kind = EventKind::CoverByPurchase;
        else if (mode == "with-owned") kind = EventKind::CoverByOwnedLot;
        else p.expected("'by-purchase' or 'with-owned'");
        p.next("cover mode");
      }
      p.finish();
      refs.push_back({sec, t, kind != EventKind::Borrow, SourcePos{line_no, sym_col}});
      s.events.push_back({t, kind, sec, qty, {}});
    } else {
      p.fail(ErrorCode::UnknownDirective, "unknown directive '" + std::string(head.text) + "'",
             head.column);
    }
    if (end == text.size()) break;
  }

  for (const auto& r : refs) {
    if (!s.prices.quotes(r.sec)) {
      throw Error(ErrorCode::UndefinedPrice, r.sec.symbol() + " has no price lines", r.pos);
    }
    if (r.needs_quote_at_tick && !s.prices.has(r.sec, r.at)) {
      throw Error(ErrorCode::UndefinedPrice,
                  "no price for " + r.sec.symbol() + " at " + r.at.to_string(), r.pos);
    }
  }
  s.name = name ? *name : std::move(default_name);
  return s;
}

/// Prints a scenario in the DSL. `parse_scenario(format_scenario(s)) == s`.
inline std::string format_scenario(const Scenario& s) {
  std::ostringstream out;
  if (!s.name.empty()) out << "scenario " << s.name << '\n';
  for (const auto& [sec, quotes] : s.prices.all()) {
    for (const auto& [t, price] : quotes) {
      out << "price " << sec.symbol() << ' ' << t.value << ' ' << to_decimal_string(price) << '\n';
    }
  }
  for (const auto& e : s.events) {
    out << "at " << e.at.value << ' ';
    switch (e.kind) {
      case EventKind::Buy: out << "buy "; break;
      case EventKind::Borrow: out << "borrow "; break;
      case EventKind::ShortSell: out << "short-sell "; break;
      case EventKind::SellOwned: out << "sell "; break;
      case EventKind::CoverByPurchase:
      case EventKind::CoverByOwnedLot: out << "cover "; break;
      case EventKind::Death:
        out << "death";
        if (!e.heir.empty()) out << " heir " << e.heir;
        out << '\n';
        continue;
    }
    out << e.sec.symbol() << ' ' << e.qty;
    if (e.kind == EventKind::CoverByPurchase) out << " by-purchase";
    if (e.kind == EventKind::CoverByOwnedLot) out << " with-owned";
    out << '\n';
  }
  return out.str();
}

}  // namespace realize
