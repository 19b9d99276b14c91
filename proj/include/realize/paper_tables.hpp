#pragma once

// Worked tables rebuilt from engine runs. Labels are layout only: every
// number comes from a RunReport, a price lookup, or tax_due.

#include <sstream>
#include <string>
#include <vector>

#include "realize/money.hpp"
#include "realize/realization.hpp"
#include "realize/scenario.hpp"
#include "realize/taxation.hpp"
#include "realize/text_table.hpp"

namespace realize {

struct GridRow {
  Money present;
  Money future;
  RealizationEvent ordinary;  // buy at present, sell at future
  RealizationEvent short_cycle;  // short at present, cover by purchase at future
};

namespace tables_detail {

inline const SecurityId& abc() {
  static const SecurityId s{"ABC"};
  return s;
}

/// Two-tick ABC scenario: ordinary round trip or short cycle from `from` to `to`.
inline Scenario window(Money from, Money to, bool short_cycle, Shares qty = kBlock) {
  Scenario s;
  s.name = short_cycle ? "short_window" : "ordinary_window";
  s.prices.set(abc(), Tick{1}, from);
  s.prices.set(abc(), Tick{2}, to);
  if (short_cycle) {
    s.events = {TransactionEvent::borrow(Tick{1}, abc(), qty),
                TransactionEvent::short_sell(Tick{1}, abc(), qty),
                TransactionEvent::cover_by_purchase(Tick{2}, abc(), qty)};
  } else {
    s.events = {TransactionEvent::buy(Tick{1}, abc(), qty),
                TransactionEvent::sell(Tick{2}, abc(), qty)};
  }
  return s;
}

inline const RealizationEvent& only_event(const RunReport& r) {
  if (r.events.size() != 1) throw std::logic_error("expected exactly one realization event");
  return r.events.front();
}

inline const RealizationEvent& find(const RunReport& r, RealizationKind kind) {
  for (const auto& e : r.events) if (e.kind == kind) return e;
  throw std::logic_error("missing realization event");
}

/// Per-share tax of a set of events: the same timeline computed on one share.
inline Money tax_per_share(const std::vector<RealizationEvent>& events) {
  std::vector<RealizationEvent> unit;
  for (auto e : events) {
    e.qty = 1;
    e.gain_total = e.gain_per_share;
    unit.push_back(e);
  }
  return tax_timeline(unit).total_tax;
}

inline Money net_per_share(const std::vector<RealizationEvent>& events) {
  Money n;
  for (const auto& e : events) n += e.gain_per_share;
  return n;
}

/// "Per Share / Total" table in the worked-example layout.
class Sheet {
 public:
  Sheet(std::string title, bool total_decimals)
      : title_(std::move(title)), decimals_(total_decimals) {}

  Sheet& money(std::string label, Money per_share, Money total, bool parens = false) {
    rows_.push_back({std::move(label), fmt(per_share, true, parens), fmt(total, !decimals_, parens)});
    return *this;
  }
  /// Loss or gain row shown as a magnitude, label picked by sign.
  Sheet& gain(const std::string& gain_label, const std::string& loss_label, Money per_share,
              Money total) {
    return money(per_share.is_negative() ? loss_label : gain_label, abs(per_share), abs(total));
  }
  Sheet& rate(std::string label, Rate r) {
    rows_.push_back({std::move(label), r.to_string(), r.to_string()});
    return *this;
  }
  Sheet& heading(std::string text) {
    rows_.push_back({std::move(text), "", ""});
    return *this;
  }
  Sheet& blank() { return heading(""); }

  std::string render() const {
    using A = TextTable::Align;
    TextTable t({A::Left, A::Right, A::Right});
    t.row({"", "Per Share (₱)", "Total (₱)"});
    for (const auto& r : rows_) t.row(r);
    return title_ + "\n" + t.render();
  }

 private:
  static std::string fmt(Money m, bool trim, bool parens) {
    return format_money(m, {.thousands = true, .trim_whole = trim, .parens = parens});
  }

  std::string title_;
  bool decimals_;
  std::vector<std::vector<std::string>> rows_;
};

inline std::string plain(Money m) { return format_money(m, {.trim_whole = true}); }

}  // namespace tables_detail

/// Ordinary round trip and short cycle over the same two prices, per future price.
inline std::vector<GridRow> offset_grid() {
  using tables_detail::only_event;
  using tables_detail::window;
  std::vector<GridRow> rows;
  const Money present = Money::pesos(kGridPresentPrice);
  for (const auto f : kGridFuturePrices) {
    const Money future = Money::pesos(f);
    rows.push_back({present, future, only_event(run(window(present, future, false))),
                    only_event(run(window(present, future, true)))});
  }
  return rows;
}

inline std::string render_offset_grid() {
  using A = TextTable::Align;
  using tables_detail::plain;
  TextTable t({A::Right, A::Right, A::Right, A::Right, A::Right, A::Right, A::Right, A::Right});
  t.row({"", "Ordinary Sale (₱)", "", "", "Short Sale (₱)", "", "", ""});
  t.row({"Present", "Selling Price", "Basis", "Gain (Loss)", "Selling Price", "Basis",
         "Gain (Loss)", "Sum"});
  for (const auto& r : offset_grid()) {
    t.row({plain(r.present), plain(r.ordinary.amount_realized_per_share),
           plain(r.ordinary.basis_per_share), plain(r.ordinary.gain_per_share),
           plain(r.short_cycle.amount_realized_per_share), plain(r.short_cycle.basis_per_share),
           plain(r.short_cycle.gain_per_share),
           plain(r.ordinary.gain_per_share + r.short_cycle.gain_per_share)});
  }
  return "Offsetting grid: ordinary sale vs short sale over the same window\n" + t.render();
}

inline std::string render_paper_tables() {
  using namespace tables_detail;
  const Rate rate = kFlatRate;
  const Scenario fig1 = builtin("strategy1");
  const auto price = [&](std::int64_t t) { return price_at(fig1.prices, abc(), Tick{t}); };
  std::ostringstream out;
  const auto emit = [&](const std::string& s) { out << s << '\n'; };

  // Ordinary sales over the 50/100/30 ABC path.
  {
    const auto r = run(window(price(1), price(2), false));
    const auto& e = only_event(r);
    emit(Sheet("Ordinary sale: buy at time 1, sell at time 2", false)
             .money("Selling Price", e.amount_realized_per_share, e.amount_realized_per_share * e.qty)
             .money("Less: Basis", e.basis_per_share, e.basis_per_share * e.qty)
             .gain("Capital Gain", "Capital Loss", e.gain_per_share, e.gain_total)
             .rate("Multiply by: Rate of Capital Gains Tax", rate)
             .money("Capital Gains Tax", tax_per_share(r.events), r.taxes.total_tax)
             .render());
  }
  {
    const auto r = run(window(price(2), price(3), false));
    const auto& e = only_event(r);
    emit(Sheet("Ordinary sale: buy at time 2, sell at time 3", false)
             .money("Selling Price", e.amount_realized_per_share, e.amount_realized_per_share * e.qty)
             .money("Less: Basis", e.basis_per_share, e.basis_per_share * e.qty)
             .gain("Capital Gain", "Capital Loss", e.gain_per_share, e.gain_total)
             .money("Capital Gains Tax", tax_per_share(r.events), r.taxes.total_tax)
             .render());
  }

  // Short sales over the same windows (current rule: realized at cover).
  {
    const auto r = run(window(price(1), price(2), true));
    const auto& e = only_event(r);
    emit(Sheet("Short sale: sell borrowed shares at time 1, replace at time 2", false)
             .money("Selling Price from Short Sale", e.amount_realized_per_share,
                    e.amount_realized_per_share * e.qty)
             .money("Less: Cost of Replacing Borrowed Shares", e.basis_per_share,
                    e.basis_per_share * e.qty)
             .gain("Capital Gain", "Capital Loss", e.gain_per_share, e.gain_total)
             .money("Capital Gains Tax", tax_per_share(r.events), r.taxes.total_tax)
             .render());
  }
  {
    const auto r = run(window(price(2), price(3), true));
    const auto& e = only_event(r);
    emit(Sheet("Short sale: sell borrowed shares at time 2, replace at time 3", false)
             .money("Selling Price from Short Sale (time 2)", e.amount_realized_per_share,
                    e.amount_realized_per_share * e.qty)
             .money("Less: Cost of Replacing Borrowed Shares (time 3)", e.basis_per_share,
                    e.basis_per_share * e.qty)
             .gain("Capital Gain (time 3)", "Capital Loss (time 3)", e.gain_per_share, e.gain_total)
             .rate("Multiply by: Rate of Capital Gains Tax", rate)
             .money("Capital Gains Tax", tax_per_share(r.events), r.taxes.total_tax)
             .render());
  }

  emit(render_offset_grid());

  // Receipt of proceeds vs realization, t1 -> t2.
  {
    using A = TextTable::Align;
    const auto ord = run(window(price(1), price(2), false));
    const auto sht = run(window(price(1), price(2), true));
    const auto mark = [](bool b) { return std::string(b ? "✓" : ""); };
    const auto realized_at = [](const RunReport& r, std::int64_t t) {
      for (const auto& e : r.events) if (e.at == Tick{t}) return true;
      return false;
    };
    const auto received_at = [](const RunReport& r, std::int64_t t) {
      for (const auto& c : r.cash) if (c.at == Tick{t} && c.delta > Money{}) return true;
      return false;
    };
    const auto seq = [](const RunReport& r, std::int64_t t) {
      for (const auto& c : r.cash) {
        if (c.at == Tick{t}) return std::string(c.delta > Money{} ? "Dispose (sell)" : "Acquire (buy)");
      }
      return std::string{};
    };
    TextTable t({A::Left, A::Left, A::Left, A::Left, A::Left});
    t.row({"Time period", "Ordinary Sale", "", "Short Sale", ""});
    t.row({"", "time 1", "time 2", "time 1", "time 2"});
    t.row({"Sequence of events", seq(ord, 1), seq(ord, 2), seq(sht, 1), seq(sht, 2)});
    t.row({"Date of realization", mark(realized_at(ord, 1)), mark(realized_at(ord, 2)),
           mark(realized_at(sht, 1)), mark(realized_at(sht, 2))});
    t.row({"Date of receipt of sale proceeds", mark(received_at(ord, 1)), mark(received_at(ord, 2)),
           mark(received_at(sht, 1)), mark(received_at(sht, 2))});
    emit("Timing of receipt and realization\n" + t.render());
  }

  // Covering a short with owned shares: two realization events, t1 -> t2.
  {
    Scenario s = window(price(1), price(2), true);
    s.name = "cover_with_owned_window";
    s.events = {TransactionEvent::buy(Tick{1}, abc(), kBlock),
                TransactionEvent::borrow(Tick{1}, abc(), kBlock),
                TransactionEvent::short_sell(Tick{1}, abc(), kBlock),
                TransactionEvent::cover_with_owned(Tick{2}, abc(), kBlock)};
    const auto r = run(s);
    const auto& owned = find(r, RealizationKind::OwnedDisposalAtCover);
    const auto& cover = find(r, RealizationKind::ShortCover);
    emit(Sheet("Replacing borrowed shares with owned shares: two realization events", false)
             .money("Proceeds of Disposition (time 2)", owned.amount_realized_per_share,
                    owned.amount_realized_per_share * owned.qty)
             .money("Less: Basis (time 1)", owned.basis_per_share, owned.basis_per_share * owned.qty)
             .gain("Capital Gain from Disposition of Owned Share",
                   "Capital Loss from Disposition of Owned Share", owned.gain_per_share,
                   owned.gain_total)
             .money("Selling Price from Short Sale (time 1)", cover.amount_realized_per_share,
                    cover.amount_realized_per_share * cover.qty)
             .money("Less: Cost of Replacing Borrowed Shares (time 2)", cover.basis_per_share,
                    cover.basis_per_share * cover.qty)
             .gain("Capital Gain from Short Sale", "Capital Loss from Short Sale",
                   cover.gain_per_share, cover.gain_total)
             .gain("Net Capital Gain", "Net Capital Loss", net_per_share(r.events),
                   r.taxes.lines.at(0).net_capital_gain)
             .render());
  }

  // Strategy 1: sell at time 2.
  {
    const auto r = run(builtin("strategy1"));
    const auto& e = only_event(r);
    emit(Sheet("Strategy 1: sell at time 2", true)
             .money("Original Purchase Price (time 1)", e.basis_per_share, e.basis_per_share * e.qty)
             .gain("Add: Unrealized Capital Gains (time 1-2)", "Less: Unrealized Capital Loss (time 1-2)",
                   price(2) - e.basis_per_share, (price(2) - e.basis_per_share) * e.qty)
             .money("Share Price (time 2)", price(2), price(2) * e.qty)
             .money("Selling Price (time 2)", e.amount_realized_per_share,
                    e.amount_realized_per_share * e.qty)
             .money("Less: Basis (time 1)", e.basis_per_share, e.basis_per_share * e.qty)
             .gain("Capital Gains (time 2)", "Capital Loss (time 2)", e.gain_per_share, e.gain_total)
             .rate("Multiply by: Rate of Capital Gains Tax", rate)
             .money("Capital Gains Tax (time 2)", tax_per_share(r.events), r.taxes.total_tax)
             .render());
  }

  // Strategy 2: hold to time 3.
  {
    const auto r = run(builtin("strategy2"));
    const auto& e = only_event(r);
    const bool loss = e.gain_per_share.is_negative();
    emit(Sheet("Strategy 2: sell at time 3", true)
             .money("Original Purchase Price (time 1)", e.basis_per_share, e.basis_per_share * e.qty)
             .gain("Add: Unrealized Capital Gains (time 1-3)", "Less: Unrealized Capital Loss (time 1-3)",
                   price(3) - e.basis_per_share, (price(3) - e.basis_per_share) * e.qty)
             .money("Share Price (time 3)", price(3), price(3) * e.qty)
             .money("Selling Price (time 3)", e.amount_realized_per_share,
                    e.amount_realized_per_share * e.qty)
             .money("Less: Basis", e.basis_per_share, e.basis_per_share * e.qty)
             .money(loss ? "Capital Loss (time 3)" : "Capital Gain (time 3)", e.gain_per_share,
                    e.gain_total, true)
             .money("Capital Gains Tax (time 3)", tax_per_share(r.events), r.taxes.total_tax)
             .render());
  }

  // Strategy 3: tax deferral through a short sale against owned shares.
  {
    const auto r = run(builtin("strategy3"));
    const auto& owned = find(r, RealizationKind::OwnedDisposalAtCover);
    const auto& cover = find(r, RealizationKind::ShortCover);
    const auto& line = r.taxes.lines.at(0);
    const Shares q = owned.qty;
    emit(Sheet("Strategy 3: tax deferral scheme (current rule)", true)
             .heading("Owned shares")
             .money("Original Purchase Price (time 1)", owned.basis_per_share, owned.basis_per_share * q)
             .gain("Add: Unrealized Capital Gains (time 2)", "Less: Unrealized Capital Loss (time 2)",
                   price(2) - owned.basis_per_share, (price(2) - owned.basis_per_share) * q)
             .money("Share Price (time 2)", price(2), price(2) * q)
             .gain("Add: Unrealized Capital Gains (time 2)", "Less: Unrealized Capital Loss (time 2)",
                   price(3) - price(2), (price(3) - price(2)) * q)
             .money("Share Price (time 3)", price(3), price(3) * q)
             .money("Proceeds from Disposition of Shares (time 3)", owned.amount_realized_per_share,
                    owned.amount_realized_per_share * q)
             .money("Less: Basis (time 1)", owned.basis_per_share, owned.basis_per_share * q)
             .gain("Capital Gain from Disposition of Owned Shares (time 3)",
                   "Capital Loss from Disposition of Owned Shares (time 3)", owned.gain_per_share,
                   owned.gain_total)
             .blank()
             .heading("Short sale")
             .money("Proceeds from Sale of Borrowed Shares (time 2)", cover.amount_realized_per_share,
                    cover.amount_realized_per_share * cover.qty)
             .money("Less: Cost of Replacing Borrowed Shares (time 3)", cover.basis_per_share,
                    cover.basis_per_share * cover.qty)
             .gain("Capital Gains from Short Sale (time 3)", "Capital Loss from Short Sale (time 3)",
                   cover.gain_per_share, cover.gain_total)
             .blank()
             .heading("Net capital gains computation")
             .gain("Capital Gains from Short Sale (time 3)", "Capital Loss from Short Sale (time 3)",
                   cover.gain_per_share, cover.gain_total)
             .gain("Add: Capital Gain from Disposition of Owned Shares (time 3)",
                   "Less: Capital Loss from Disposition of Owned Shares (time 3)", owned.gain_per_share,
                   owned.gain_total)
             .gain("Net Capital Gains (time 3)", "Net Capital Loss (time 3)", net_per_share(r.events),
                   line.net_capital_gain)
             .rate("Multiply by: Rate of Capital Gains Tax", rate)
             .money("Capital Gains Tax (time 3)", tax_per_share(r.events), r.taxes.total_tax)
             .render());
  }

  // Death between time 2 and time 3 steps the basis up.
  {
    const Scenario s = builtin("death_avoidance");
    const auto dp = [&](std::int64_t t) { return price_at(s.prices, abc(), Tick{t}); };
    const auto r = run(s);
    const auto& owned = find(r, RealizationKind::OwnedDisposalAtCover);
    const auto& cover = find(r, RealizationKind::ShortCover);
    const auto& line = r.taxes.lines.at(0);
    const Shares q = owned.qty;
    emit(Sheet("Tax avoidance with intervention of death (current rule)", true)
             .heading("Owned shares")
             .money("Original Purchase Price (time 1)", dp(1), dp(1) * q)
             .gain("Add: Unrealized Capital Gains (time 1-2)", "Less: Unrealized Capital Loss (time 1-2)",
                   dp(2) - dp(1), (dp(2) - dp(1)) * q)
             .money("Share Price (time 2)", dp(2), dp(2) * q)
             .gain("Add: Unrealized Capital Gains (time 2-3)", "Less: Unrealized Capital Loss (time 2-3)",
                   dp(4) - dp(2), (dp(4) - dp(2)) * q)
             .money("Share Price (time 3)", dp(4), dp(4) * q)
             .money("Proceeds from Disposition of Shares (time 3)", owned.amount_realized_per_share,
                    owned.amount_realized_per_share * q)
             .money("Less: Basis (intervening period between time 2 and time 3)",
                    owned.basis_per_share, owned.basis_per_share * q)
             .gain("Capital Gain from Disposition of Owned Shares (time 3)",
                   "Capital Loss from Disposition of Owned Shares (time 3)", owned.gain_per_share,
                   owned.gain_total)
             .blank()
             .heading("Short sale")
             .money("Proceeds from Sale of Borrowed Shares (time 2)", cover.amount_realized_per_share,
                    cover.amount_realized_per_share * cover.qty)
             .money("Less: Cost of Replacing Borrowed Shares (time 3)", cover.basis_per_share,
                    cover.basis_per_share * cover.qty)
             .gain("Capital Gain from Short Sale (time 3)", "Capital Loss from Short Sale (time 3)",
                   cover.gain_per_share, cover.gain_total)
             .blank()
             .heading("Net capital loss computation")
             .gain("Capital Gains from Disposition of Owned Shares (time 3)",
                   "Capital Loss from Disposition of Owned Shares (time 3)", owned.gain_per_share,
                   owned.gain_total)
             .gain("Add: Capital Gain from Short Sale (time 3)", "Less: Capital Loss from Short Sale (time 3)",
                   cover.gain_per_share, cover.gain_total)
             .gain("Net Capital Gain (time 3)", "Net Capital Loss (time 3)", net_per_share(r.events),
                   line.net_capital_gain)
             .money("Capital Gains Tax (time 3)", tax_per_share(r.events), r.taxes.total_tax)
             .render());
  }

  // Proposed rule on the 50/100/30 ABC path.
  {
    const auto cur = run(builtin("proposed_demo"), {Regime::Current});
    const auto pro = run(builtin("proposed_demo"), {Regime::Proposed});
    const auto& cs = find(pro, RealizationKind::ConstructiveSale);
    const auto& cover = find(pro, RealizationKind::ShortCover);
    const auto tax_at = [&](Tick t) {
      for (const auto& l : pro.taxes.lines) if (l.period == t) return l.tax_due;
      return Money{};
    };
    emit(Sheet("Proposed rule, first realization event: constructive sale at time 2", false)
             .money("Selling Price (time 2)", cs.amount_realized_per_share, cs.amount_realized_per_share * cs.qty)
             .money("Less: Acquisition Cost (time 1)", cs.basis_per_share, cs.basis_per_share * cs.qty)
             .gain("Capital Gain (time 2)", "Capital Loss (time 2)", cs.gain_per_share, cs.gain_total)
             .rate("Multiply by: CGT rate", rate)
             .money("Capital Gains Tax (time 2)", tax_per_share({cs}), tax_at(cs.at))
             .render());
    emit(Sheet("Proposed rule, second realization event: replacement at time 3", false)
             .money("Proceeds from Short Sale (time 2)", cover.amount_realized_per_share,
                    cover.amount_realized_per_share * cover.qty)
             .money("Less: Cost of Replacement of Borrowed Share (time 3)", cover.basis_per_share,
                    cover.basis_per_share * cover.qty)
             .gain("Capital Gain (time 3)", "Capital Loss (time 3)", cover.gain_per_share, cover.gain_total)
             .rate("Multiply by: CGT rate", rate)
             .money("Capital Gains Tax (time 3)", tax_per_share({cover}), tax_at(cover.at))
             .render());
    emit(Sheet("Total capital gains tax, current vs proposed rule", false)
             .money("Current rule (deferred to time 3)", tax_per_share(cur.events), cur.taxes.total_tax)
             .money("Proposed rule (time 2 and time 3)", tax_per_share(pro.events), pro.taxes.total_tax)
             .render());
  }

  std::string s = out.str();
  if (!s.empty() && s.back() == '\n') s.pop_back();  // no blank line after the last table
  return s;
}

}  // namespace realize
