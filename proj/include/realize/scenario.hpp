#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "realize/error.hpp"
#include "realize/ledger.hpp"
#include "realize/market.hpp"
#include "realize/money.hpp"
#include "realize/realization.hpp"
#include "realize/taxation.hpp"

namespace realize {

struct Scenario {
  std::string name;
  PricePath prices;
  std::vector<TransactionEvent> events;  // tick order, then sequence

  /// Label of the heir named on the first death event, if any.
  std::optional<std::string> heir_label() const {
    for (const auto& e : events) {
      if (e.kind == EventKind::Death && !e.heir.empty()) return e.heir;
    }
    return std::nullopt;
  }

  bool operator==(const Scenario&) const = default;
};

/// Checks the scenario-level invariants shared by parsed and built-in
/// scenarios: positive quantities, non-decreasing ticks, and a quote for
/// every (security, tick) an event trades at.
inline void validate(const Scenario& s) {
  std::optional<Tick> last;
  for (std::size_t i = 0; i < s.events.size(); ++i) {
    const auto& e = s.events[i];
    try {
      if (last && e.at < *last) {
        throw Error(ErrorCode::NonMonotonicTick,
                    e.at.to_string() + " follows " + last->to_string());
      }
      last = e.at;
      if (e.kind == EventKind::Death) continue;
      require_positive(e.qty);
      if (!s.prices.quotes(e.sec)) {
        throw Error(ErrorCode::UndefinedPrice, e.sec.symbol() + " has no quotes");
      }
      if (e.kind != EventKind::Borrow && !s.prices.has(e.sec, e.at)) {
        throw Error(ErrorCode::UndefinedPrice,
                    "no price for " + e.sec.symbol() + " at " + e.at.to_string());
      }
    } catch (const Error& err) {
      throw err.at_event(i);
    }
  }
}

// ---------------------------------------------------------------------------
// Built-in scenarios

inline constexpr Shares kBlock = 100'000;
inline constexpr std::array<std::int64_t, 7> kGridFuturePrices{25, 50, 75, 100, 125, 150, 175};
inline constexpr std::int64_t kGridPresentPrice = 100;

inline const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names{
      "strategy1", "strategy2", "strategy3", "proposed_demo", "death_avoidance", "offset_grid"};
  return names;
}

namespace detail {

inline Scenario abc_path(std::string name) {
  Scenario s;
  s.name = std::move(name);
  const SecurityId abc{"ABC"};
  s.prices.set(abc, Tick{1}, Money::pesos(50));
  s.prices.set(abc, Tick{2}, Money::pesos(100));
  s.prices.set(abc, Tick{3}, Money::pesos(30));
  return s;
}

inline std::vector<TransactionEvent> short_against_the_box(Tick cover) {
  const SecurityId abc{"ABC"};
  return {TransactionEvent::buy(Tick{1}, abc, kBlock),
          TransactionEvent::borrow(Tick{2}, abc, kBlock),
          TransactionEvent::short_sell(Tick{2}, abc, kBlock),
          TransactionEvent::cover_with_owned(cover, abc, kBlock)};
}

inline std::string grid_symbol(std::string_view leg, std::int64_t future) {
  return std::string(leg) + std::to_string(future);
}

}  // namespace detail

inline Scenario builtin(std::string_view name) {
  const SecurityId abc{"ABC"};
  if (name == "strategy1" || name == "strategy2") {
    Scenario s = detail::abc_path(std::string(name));
    s.events = {TransactionEvent::buy(Tick{1}, abc, kBlock),
                TransactionEvent::sell(Tick{name == "strategy1" ? 2 : 3}, abc, kBlock)};
    return s;
  }
  if (name == "strategy3" || name == "proposed_demo") {
    Scenario s = detail::abc_path(std::string(name));
    s.events = detail::short_against_the_box(Tick{3});
    return s;
  }
  if (name == "death_avoidance") {
    Scenario s;
    s.name = "death_avoidance";
    s.prices.set(abc, Tick{1}, Money::pesos(50));
    s.prices.set(abc, Tick{2}, Money::pesos(100));
    s.prices.set(abc, Tick{3}, Money::pesos(130));  // death, between time 2 and time 3
    s.prices.set(abc, Tick{4}, Money::pesos(130));  // cover by the heir
    auto events = detail::short_against_the_box(Tick{4});
    events.insert(events.begin() + 3, TransactionEvent::death(Tick{3}, "Y"));
    s.events = std::move(events);
    return s;
  }
  if (name == "offset_grid") {
    // One ordinary leg and one short leg per future price, each on its own
    // symbol so the 14 legs never interact.
    Scenario s;
    s.name = "offset_grid";
    for (const auto future : kGridFuturePrices) {
      for (const auto* leg : {"ORD", "SHORT"}) {
        const SecurityId sec{detail::grid_symbol(leg, future)};
        s.prices.set(sec, Tick{1}, Money::pesos(kGridPresentPrice));
        s.prices.set(sec, Tick{2}, Money::pesos(future));
      }
    }
    for (const auto future : kGridFuturePrices) {
      const SecurityId ord{detail::grid_symbol("ORD", future)};
      const SecurityId sht{detail::grid_symbol("SHORT", future)};
      s.events.push_back(TransactionEvent::buy(Tick{1}, ord, kBlock));
      s.events.push_back(TransactionEvent::borrow(Tick{1}, sht, kBlock));
      s.events.push_back(TransactionEvent::short_sell(Tick{1}, sht, kBlock));
    }
    for (const auto future : kGridFuturePrices) {
      s.events.push_back(TransactionEvent::sell(Tick{2}, SecurityId{detail::grid_symbol("ORD", future)}, kBlock));
      s.events.push_back(TransactionEvent::cover_by_purchase(
          Tick{2}, SecurityId{detail::grid_symbol("SHORT", future)}, kBlock));
    }
    return s;
  }
  throw Error(ErrorCode::UnknownScenario, "no built-in scenario named '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// Runner

struct CashPoint {
  Tick at;
  Money delta;
  Money cumulative;
  bool operator==(const CashPoint&) const = default;
};

struct Holding {
  SecurityId sec;
  Shares owned = 0;
  Shares borrowed_unsold = 0;
  Shares short_outstanding = 0;
  bool operator==(const Holding&) const = default;
};

struct RunReport {
  std::string scenario;
  Regime regime = Regime::Current;
  RateSchedule schedule = RateSchedule::PaperFlat;
  NettingWindow window;
  std::vector<RealizationEvent> events;
  TaxTimeline taxes;
  std::vector<CashPoint> cash;
  Money final_cash;
  std::vector<Holding> inventory;
  Reservations open_reservations;
  PortfolioState final_state;

  bool operator==(const RunReport&) const = default;
};

struct RunOptions {
  Regime regime = Regime::Current;
  RateSchedule schedule = RateSchedule::PaperFlat;
  NettingWindow window;

  RunOptions() = default;
  RunOptions(Regime r, RateSchedule s = RateSchedule::PaperFlat, NettingWindow w = {})
      : regime(r), schedule(s), window(w) {}
};

inline RunReport run(const Scenario& scenario, const RunOptions& opt = {}) {
  validate(scenario);
  RunReport report;
  report.scenario = scenario.name;
  report.regime = opt.regime;
  report.schedule = opt.schedule;
  report.window = opt.window;

  PortfolioState state;
  Reservations reservations;
  for (std::size_t i = 0; i < scenario.events.size(); ++i) {
    const auto& ev = scenario.events[i];
    try {
      const LotPolicy policy = opt.regime == Regime::Proposed
                                   ? reservation_policy(state, reservations, ev)
                                   : LotPolicy::fifo();
      Applied applied = apply_event(state, ev, scenario.prices, policy);
      Realized realized = realize(applied.effects, opt.regime, std::move(reservations));
      state = std::move(applied.state);
      reservations = std::move(realized.reservations);
      report.events.insert(report.events.end(), realized.events.begin(), realized.events.end());

      if (report.cash.empty() || report.cash.back().at != ev.at) {
        const Money before = report.cash.empty() ? Money{} : report.cash.back().cumulative;
        report.cash.push_back({ev.at, Money{}, before});
      }
      report.cash.back().delta += applied.effects.cash_delta;
      report.cash.back().cumulative += applied.effects.cash_delta;
    } catch (const Error& err) {
      throw err.at_event(i);
    }
  }

  report.taxes = tax_timeline(report.events, opt.window, opt.schedule);
  report.final_cash = state.cash;
  std::set<SecurityId> secs;
  for (const auto& l : state.lots) secs.insert(l.sec);
  for (const auto& b : state.borrows) secs.insert(b.sec);
  for (const auto& sec : secs) {
    report.inventory.push_back(
        {sec, state.owned(sec), state.borrowed_unsold(sec), state.short_outstanding(sec)});
  }
  report.open_reservations = std::move(reservations);
  report.final_state = std::move(state);
  return report;
}

struct ComparisonRow {
  Tick period;
  Money current_tax;
  Money proposed_tax;
  Money delta;  // proposed - current
  bool operator==(const ComparisonRow&) const = default;
};

struct ComparisonReport {
  RunReport current;
  RunReport proposed;
  std::vector<ComparisonRow> rows;
  Money total_delta;
  bool operator==(const ComparisonReport&) const = default;
};

inline ComparisonReport compare(const Scenario& scenario,
                                RateSchedule schedule = RateSchedule::PaperFlat,
                                NettingWindow window = {}) {
  ComparisonReport c;
  c.current = run(scenario, {Regime::Current, schedule, window});
  c.proposed = run(scenario, {Regime::Proposed, schedule, window});
  std::map<Tick, ComparisonRow> rows;
  for (const auto& l : c.current.taxes.lines) {
    auto& r = rows[l.period];
    r.period = l.period;
    r.current_tax += l.tax_due;
  }
  for (const auto& l : c.proposed.taxes.lines) {
    auto& r = rows[l.period];
    r.period = l.period;
    r.proposed_tax += l.tax_due;
  }
  for (auto& [t, r] : rows) {
    r.delta = r.proposed_tax - r.current_tax;
    c.rows.push_back(r);
  }
  c.total_delta = c.proposed.taxes.total_tax - c.current.taxes.total_tax;
  return c;
}

}  // namespace realize
