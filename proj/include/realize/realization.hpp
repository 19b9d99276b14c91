#pragma once

#include <algorithm>
#include <map>
#include <string_view>
#include <vector>

#include "realize/error.hpp"
#include "realize/ledger.hpp"
#include "realize/market.hpp"
#include "realize/money.hpp"

namespace realize {

/// Which realization rules apply. Fixed for a whole run.
///
/// Current: a sale realizes at the sale; a short sale realizes only when it
/// is covered; covering with owned shares realizes both the owned disposal
/// and the short cycle at the cover tick.
///
/// Proposed: short-selling while owning identical unreserved shares is a
/// constructive sale of those owned shares at the short-sale tick, and the
/// later delivery of the reserved shares counts as delivery of the borrowed
/// shares (only the short cycle realizes at cover).
enum class Regime { Current, Proposed };

constexpr std::string_view to_string(Regime r) {
  return r == Regime::Current ? "current" : "proposed";
}

enum class RealizationKind {
  OrdinarySale,
  ShortCover,
  OwnedDisposalAtCover,
  ConstructiveSale,
};

constexpr std::string_view to_string(RealizationKind k) {
  switch (k) {
    case RealizationKind::OrdinarySale: return "OrdinarySale";
    case RealizationKind::ShortCover: return "ShortCover";
    case RealizationKind::OwnedDisposalAtCover: return "OwnedDisposalAtCover";
    case RealizationKind::ConstructiveSale: return "ConstructiveSale";
  }
  return "?";
}

struct RealizationEvent {
  Tick at;
  RealizationKind kind = RealizationKind::OrdinarySale;
  SecurityId sec;
  Shares qty = 0;
  Money amount_realized_per_share;
  Money basis_per_share;
  Money gain_per_share;  // signed
  Money gain_total;  // signed

  static RealizationEvent make(Tick at, RealizationKind kind, SecurityId sec,
                               Shares qty, Money amount, Money basis) {
    const Money gain = amount - basis;
    return {at, kind, std::move(sec), qty, amount, basis, gain, gain * qty};
  }

  bool operator==(const RealizationEvent&) const = default;
};

/// Owned shares already disposed of constructively; they may not be sold again.
struct ConstructiveReservation {
  LotId lot = 0;
  SecurityId sec;
  Shares qty = 0;
  Tick reserved_at;
  bool operator==(const ConstructiveReservation&) const = default;
};

using Reservations = std::vector<ConstructiveReservation>;

struct Realized {
  std::vector<RealizationEvent> events;
  Reservations reservations;
};

inline Shares reserved_in_lot(const Reservations& rs, LotId lot) {
  Shares n = 0;
  for (const auto& r : rs) if (r.lot == lot) n += r.qty;
  return n;
}

inline Shares reserved_in_security(const Reservations& rs, const SecurityId& sec) {
  Shares n = 0;
  for (const auto& r : rs) if (r.sec == sec) n += r.qty;
  return n;
}

/// Owned, unreserved shares of `sec` available to a constructive sale.
inline Shares trigger_check(const PortfolioState& state, const Reservations& rs,
                            const SecurityId& sec) {
  Shares n = 0;
  for (const auto& l : state.lots) {
    if (l.sec == sec) n += l.qty - std::min(l.qty, reserved_in_lot(rs, l.id));
  }
  return n;
}

namespace detail {

// Releases up to `qty` reserved shares, oldest first; restricted to one lot
// when `lot` is set. Returns how many were released.
inline Shares release(Reservations& rs, const SecurityId& sec, Shares qty,
                      std::optional<LotId> lot = std::nullopt) {
  Shares released = 0;
  for (auto& r : rs) {
    if (released == qty) break;
    if (r.sec != sec || (lot && r.lot != *lot)) continue;
    const Shares take = std::min(r.qty, qty - released);
    r.qty -= take;
    released += take;
  }
  std::erase_if(rs, [](const ConstructiveReservation& r) { return r.qty == 0; });
  return released;
}

inline void short_covers(const LedgerEffects& fx, std::vector<RealizationEvent>& out) {
  for (const auto& slice : fx.borrows_covered) {
    out.push_back(RealizationEvent::make(fx.event.at, RealizationKind::ShortCover,
                                         fx.event.sec, slice.qty,
                                         slice.proceeds_per_share.value(), fx.price));
  }
}

inline Shares held_qty(const LedgerEffects& fx, LotId lot) {
  for (const auto& l : fx.lots_held) if (l.id == lot) return l.qty;
  return 0;
}

}  // namespace detail

/// Turns what one ledger event moved into dated realization events.
inline Realized realize(const LedgerEffects& fx, Regime regime, Reservations reservations) {
  Realized out;
  const auto& ev = fx.event;
  const bool proposed = regime == Regime::Proposed;

  switch (ev.kind) {
    case EventKind::Buy:
    case EventKind::Borrow:
    case EventKind::Death:
      break;

    case EventKind::SellOwned:
      for (const auto& slice : fx.lots_consumed) {
        if (proposed) {
          const Shares free = detail::held_qty(fx, slice.lot) -
                              reserved_in_lot(reservations, slice.lot);
          if (slice.qty > free) {
            throw Error(ErrorCode::ReservationMismatch,
                        "sale consumes constructively disposed shares of lot " +
                            std::to_string(slice.lot));
          }
        }
        out.events.push_back(RealizationEvent::make(ev.at, RealizationKind::OrdinarySale,
                                                    ev.sec, slice.qty, fx.price,
                                                    slice.basis_per_share));
      }
      break;

    case EventKind::ShortSell: {
      if (!proposed) break;
      Shares remaining = ev.qty;
      for (const auto& lot : fx.lots_held) {
        if (remaining == 0) break;
        const Shares free = lot.qty - std::min(lot.qty, reserved_in_lot(reservations, lot.id));
        const Shares take = std::min(free, remaining);
        if (take == 0) continue;
        reservations.push_back({lot.id, ev.sec, take, ev.at});
        out.events.push_back(RealizationEvent::make(ev.at, RealizationKind::ConstructiveSale,
                                                    ev.sec, take, fx.price,
                                                    lot.basis_per_share));
        remaining -= take;
      }
      // Any excess over owned shares realizes at cover, as under Current.
      break;
    }

    case EventKind::CoverByPurchase:
      if (proposed) detail::release(reservations, ev.sec, ev.qty);
      detail::short_covers(fx, out.events);
      break;

    case EventKind::CoverByOwnedLot: {
      Shares unreserved_used = 0;
      for (const auto& slice : fx.lots_consumed) {
        Shares disposed = slice.qty;
        if (proposed) {
          disposed -= detail::release(reservations, ev.sec, slice.qty, slice.lot);
          unreserved_used += disposed;
        }
        if (disposed > 0) {
          out.events.push_back(RealizationEvent::make(
              ev.at, RealizationKind::OwnedDisposalAtCover, ev.sec, disposed,
              fx.price, slice.basis_per_share));
        }
      }
      if (proposed && unreserved_used > 0 && reserved_in_security(reservations, ev.sec) > 0) {
        throw Error(ErrorCode::ReservationMismatch,
                    "cover delivered unreserved " + ev.sec.symbol() +
                        " shares while reserved shares remain");
      }
      detail::short_covers(fx, out.events);
      break;
    }
  }
  out.reservations = std::move(reservations);
  return out;
}

/// Lot caps that keep a Proposed-regime disposal consistent with the
/// reservations: sales take only unreserved shares, covers take reserved
/// shares first.
inline LotPolicy reservation_policy(const PortfolioState& state, const Reservations& rs,
                                    const TransactionEvent& ev) {
  LotPolicy policy;
  if (ev.kind == EventKind::SellOwned) {
    for (const auto& l : state.lots) {
      if (l.sec == ev.sec) policy.caps[l.id] = l.qty - std::min(l.qty, reserved_in_lot(rs, l.id));
    }
  } else if (ev.kind == EventKind::CoverByOwnedLot) {
    Shares remaining = ev.qty;
    std::map<LotId, Shares> plan;
    for (const auto& l : state.lots) {
      if (l.sec != ev.sec) continue;
      const Shares take = std::min({reserved_in_lot(rs, l.id), l.qty, remaining});
      plan[l.id] = take;
      remaining -= take;
    }
    for (const auto& l : state.lots) {
      if (l.sec != ev.sec) continue;
      const Shares take = std::min(l.qty - plan[l.id], remaining);
      plan[l.id] += take;
      remaining -= take;
    }
    // A shortfall stays uncapped so the ledger reports InsufficientOwnedShares.
    if (remaining == 0) policy.caps = std::move(plan);
  }
  return policy;
}

}  // namespace realize
