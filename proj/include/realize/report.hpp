#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include <json.hpp>

#include "realize/money.hpp"
#include "realize/realization.hpp"
#include "realize/scenario.hpp"
#include "realize/taxation.hpp"
#include "realize/text_table.hpp"

namespace realize {

enum class OutputFormat { Table, Csv, Json };

inline std::optional<OutputFormat> parse_format(std::string_view s) {
  if (s == "table") return OutputFormat::Table;
  if (s == "csv") return OutputFormat::Csv;
  if (s == "json") return OutputFormat::Json;
  return std::nullopt;
}

inline std::string to_string(const NettingWindow& w) {
  switch (w.kind) {
    case NettingWindow::Kind::PerTick: return "per-tick";
    case NettingWindow::Kind::WholeRun: return "whole-run";
    case NettingWindow::Kind::Fixed: return "every:" + std::to_string(w.width);
  }
  return "?";
}

/// "per-tick", "whole-run" or "every:<N>" with N >= 1.
inline std::optional<NettingWindow> parse_window(std::string_view s) {
  if (s == "per-tick") return NettingWindow::per_tick();
  if (s == "whole-run") return NettingWindow::whole_run();
  if (s.substr(0, 6) == "every:") {
    const auto n = s.substr(6);
    std::int64_t w = 0;
    for (char c : n) {
      if (c < '0' || c > '9' || w > 1'000'000'000) return std::nullopt;
      w = w * 10 + (c - '0');
    }
    if (n.empty() || w < 1) return std::nullopt;
    return NettingWindow::fixed(w);
  }
  return std::nullopt;
}

inline std::optional<Regime> parse_regime(std::string_view s) {
  if (s == "current") return Regime::Current;
  if (s == "proposed") return Regime::Proposed;
  return std::nullopt;
}

inline std::optional<RateSchedule> parse_schedule(std::string_view s) {
  if (s == "paper") return RateSchedule::PaperFlat;
  if (s == "statutory") return RateSchedule::Statutory;
  return std::nullopt;
}

namespace report_detail {

using Json = nlohmann::ordered_json;

inline std::string peso(Money m) { return format_money(m, {.peso_sign = true}); }
inline std::string signed_peso(Money m) { return m.is_negative() ? peso(m) : "+" + peso(m); }
inline std::string shares(Shares q) {
  return format_money(Money::centavos(q * 100), {.trim_whole = true});
}

inline Json to_json(const RealizationEvent& e) {
  return {{"tick", e.at.value},
          {"kind", to_string(e.kind)},
          {"security", e.sec.symbol()},
          {"qty", e.qty},
          {"amount_realized_per_share_centavos", e.amount_realized_per_share.raw()},
          {"basis_per_share_centavos", e.basis_per_share.raw()},
          {"gain_per_share_centavos", e.gain_per_share.raw()},
          {"gain_total_centavos", e.gain_total.raw()}};
}

inline Json to_json(const RunReport& r) {
  Json j;
  j["scenario"] = r.scenario;
  j["regime"] = to_string(r.regime);
  j["rates"] = to_string(r.schedule);
  j["window"] = to_string(r.window);
  j["realization_events"] = Json::array();
  for (const auto& e : r.events) j["realization_events"].push_back(to_json(e));
  j["tax_timeline"] = Json::array();
  for (const auto& l : r.taxes.lines) {
    j["tax_timeline"].push_back({{"period", l.period.value},
                                 {"net_capital_gain_centavos", l.net_capital_gain.raw()},
                                 {"tax_due_centavos", l.tax_due.raw()}});
  }
  j["cash_timeline"] = Json::array();
  for (const auto& c : r.cash) {
    j["cash_timeline"].push_back({{"tick", c.at.value},
                                  {"delta_centavos", c.delta.raw()},
                                  {"cumulative_centavos", c.cumulative.raw()}});
  }
  j["inventory"] = Json::array();
  for (const auto& h : r.inventory) {
    j["inventory"].push_back({{"security", h.sec.symbol()},
                              {"owned", h.owned},
                              {"borrowed_unsold", h.borrowed_unsold},
                              {"short_outstanding", h.short_outstanding}});
  }
  j["totals"] = {{"total_tax_centavos", r.taxes.total_tax.raw()},
                 {"total_pre_tax_cash_centavos", r.final_cash.raw()}};
  return j;
}

inline constexpr std::string_view kRunCsvHeader =
    "record,tick,kind,security,qty,amount_realized_per_share,basis_per_share,"
    "gain_per_share,gain_total,net_capital_gain,tax_due,cash_delta,cash_cumulative";

inline std::string csv_rows(const RunReport& r) {
  std::ostringstream o;
  for (const auto& e : r.events) {
    o << "realization," << e.at.value << ',' << to_string(e.kind) << ',' << e.sec.symbol() << ','
      << e.qty << ',' << e.amount_realized_per_share.raw() << ',' << e.basis_per_share.raw()
      << ',' << e.gain_per_share.raw() << ',' << e.gain_total.raw() << ",,,,\n";
  }
  for (const auto& l : r.taxes.lines) {
    o << "tax," << l.period.value << ",,,,,,,," << l.net_capital_gain.raw() << ','
      << l.tax_due.raw() << ",,\n";
  }
  for (const auto& c : r.cash) {
    o << "cash," << c.at.value << ",,,,,,,,,," << c.delta.raw() << ',' << c.cumulative.raw()
      << '\n';
  }
  o << "total,,,,,,,,,," << r.taxes.total_tax.raw() << ",," << r.final_cash.raw() << '\n';
  return o.str();
}

}  // namespace report_detail

inline std::string render_table(const RunReport& r) {
  using report_detail::peso;
  using A = TextTable::Align;
  std::ostringstream o;
  o << "scenario: " << r.scenario << "\n"
    << "regime: " << to_string(r.regime) << "  rates: " << to_string(r.schedule)
    << "  window: " << to_string(r.window) << "\n\n";

  o << "Realization events\n";
  if (r.events.empty()) {
    o << "(none)\n";
  } else {
    TextTable t({A::Left, A::Left, A::Left, A::Right, A::Right, A::Right, A::Right, A::Right});
    t.row({"tick", "kind", "security", "qty", "amount/share", "basis/share", "gain/share", "gain total"});
    for (const auto& e : r.events) {
      t.row({e.at.to_string(), std::string(to_string(e.kind)), e.sec.symbol(),
             report_detail::shares(e.qty), peso(e.amount_realized_per_share),
             peso(e.basis_per_share), peso(e.gain_per_share), peso(e.gain_total)});
    }
    o << t.render();
  }

  o << "\nTax timeline\n";
  TextTable tax({A::Left, A::Right, A::Right});
  tax.row({"period", "net capital gain", "tax due"});
  for (const auto& l : r.taxes.lines) {
    tax.row({l.period.to_string(), peso(l.net_capital_gain), peso(l.tax_due)});
  }
  tax.row({"total", "", peso(r.taxes.total_tax)});
  o << tax.render();

  o << "\nCash timeline (pre-tax)\n";
  TextTable cash({A::Left, A::Right, A::Right});
  cash.row({"tick", "delta", "cumulative"});
  for (const auto& c : r.cash) {
    cash.row({c.at.to_string(), report_detail::signed_peso(c.delta), peso(c.cumulative)});
  }
  o << cash.render();

  o << "\nFinal inventory\n";
  if (r.inventory.empty()) {
    o << "(empty)\n";
  } else {
    TextTable inv({A::Left, A::Right, A::Right, A::Right});
    inv.row({"security", "owned", "borrowed unsold", "short outstanding"});
    for (const auto& h : r.inventory) {
      inv.row({h.sec.symbol(), report_detail::shares(h.owned),
               report_detail::shares(h.borrowed_unsold), report_detail::shares(h.short_outstanding)});
    }
    o << inv.render();
  }

  o << "\ntotal tax: " << peso(r.taxes.total_tax) << "\n"
    << "total pre-tax cash: " << peso(r.final_cash) << "\n";
  return o.str();
}

inline std::string render_table(const ComparisonReport& c) {
  using report_detail::peso;
  using report_detail::signed_peso;
  using A = TextTable::Align;
  std::ostringstream o;
  o << "scenario: " << c.current.scenario << "\n"
    << "rates: " << to_string(c.current.schedule) << "  window: " << to_string(c.current.window)
    << "\n\n";
  TextTable t({A::Left, A::Right, A::Right, A::Right});
  t.row({"period", "current tax", "proposed tax", "delta"});
  for (const auto& r : c.rows) {
    t.row({r.period.to_string(), peso(r.current_tax), peso(r.proposed_tax), signed_peso(r.delta)});
  }
  t.row({"total", peso(c.current.taxes.total_tax), peso(c.proposed.taxes.total_tax),
         signed_peso(c.total_delta)});
  o << t.render();
  o << "\npre-tax cash: current " << peso(c.current.final_cash) << ", proposed "
    << peso(c.proposed.final_cash) << "\n";
  return o.str();
}

inline std::string render_csv(const RunReport& r) {
  return std::string(report_detail::kRunCsvHeader) + "\n" + report_detail::csv_rows(r);
}

inline std::string render_csv(const ComparisonReport& c) {
  std::ostringstream o;
  o << "record,period,current_tax,proposed_tax,delta\n";
  for (const auto& r : c.rows) {
    o << "period," << r.period.value << ',' << r.current_tax.raw() << ',' << r.proposed_tax.raw()
      << ',' << r.delta.raw() << '\n';
  }
  o << "total,," << c.current.taxes.total_tax.raw() << ',' << c.proposed.taxes.total_tax.raw()
    << ',' << c.total_delta.raw() << '\n';
  return o.str();
}

inline std::string render_json(const RunReport& r) {
  return report_detail::to_json(r).dump(2) + "\n";
}

inline std::string render_json(const ComparisonReport& c) {
  report_detail::Json j;
  j["scenario"] = c.current.scenario;
  j["rates"] = to_string(c.current.schedule);
  j["window"] = to_string(c.current.window);
  j["rows"] = report_detail::Json::array();
  for (const auto& r : c.rows) {
    j["rows"].push_back({{"period", r.period.value},
                         {"current_tax_centavos", r.current_tax.raw()},
                         {"proposed_tax_centavos", r.proposed_tax.raw()},
                         {"delta_centavos", r.delta.raw()}});
  }
  j["totals"] = {{"current_tax_centavos", c.current.taxes.total_tax.raw()},
                 {"proposed_tax_centavos", c.proposed.taxes.total_tax.raw()},
                 {"delta_centavos", c.total_delta.raw()}};
  j["current"] = report_detail::to_json(c.current);
  j["proposed"] = report_detail::to_json(c.proposed);
  return j.dump(2) + "\n";
}

template <typename Report>
std::string render(const Report& r, OutputFormat f) {
  switch (f) {
    case OutputFormat::Table: return render_table(r);
    case OutputFormat::Csv: return render_csv(r);
    case OutputFormat::Json: return render_json(r);
  }
  return {};
}

}  // namespace realize
