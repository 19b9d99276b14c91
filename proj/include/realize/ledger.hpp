#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "realize/error.hpp"
#include "realize/market.hpp"
#include "realize/money.hpp"

namespace realize {

using LotId = std::uint32_t;
using BorrowId = std::uint32_t;

enum class AcquisitionMethod { Purchase, Inheritance };

/// An owned parcel of identical shares.
struct Lot {
  LotId id = 0;
  SecurityId sec;
  Shares qty = 0;
  Money basis_per_share;
  Tick acquired_at;
  AcquisitionMethod method = AcquisitionMethod::Purchase;

  bool operator==(const Lot&) const = default;
};

/// An open securities-borrowing obligation.
///
/// Borrowed shares belong to the borrower once lent, but they are kept apart
/// from lots so they never count as owned identical shares. A position is
/// either wholly unsold or wholly sold short: a partial short sale splits it.
struct BorrowPosition {
  BorrowId id = 0;
  SecurityId sec;
  Shares qty_borrowed = 0;
  Tick borrowed_at;
  Shares qty_sold_short = 0;
  std::optional<Money> short_proceeds_per_share;
  std::optional<Tick> sold_at;
  Shares qty_outstanding = 0;

  Shares qty_unsold() const { return qty_borrowed - qty_sold_short; }
  /// Sold-short shares not yet replaced.
  Shares qty_coverable() const {
    return qty_sold_short == 0 ? 0 : qty_outstanding;
  }

  bool operator==(const BorrowPosition&) const = default;
};

enum class EventKind {
  Buy,
  Borrow,
  ShortSell,
  SellOwned,
  CoverByPurchase,
  CoverByOwnedLot,
  Death,
};

constexpr std::string_view to_string(EventKind k) {
  switch (k) {
    case EventKind::Buy: return "Buy";
    case EventKind::Borrow: return "Borrow";
    case EventKind::ShortSell: return "ShortSell";
    case EventKind::SellOwned: return "SellOwned";
    case EventKind::CoverByPurchase: return "CoverByPurchase";
    case EventKind::CoverByOwnedLot: return "CoverByOwnedLot";
    case EventKind::Death: return "Death";
  }
  return "?";
}

struct TransactionEvent {
  Tick at;
  EventKind kind = EventKind::Buy;
  SecurityId sec;  // unset for Death
  Shares qty = 0;  // zero for Death
  std::string heir;  // Death only, may be empty

  bool operator==(const TransactionEvent&) const = default;

  static TransactionEvent buy(Tick t, SecurityId s, Shares q) { return {t, EventKind::Buy, std::move(s), q, {}}; }
  static TransactionEvent borrow(Tick t, SecurityId s, Shares q) { return {t, EventKind::Borrow, std::move(s), q, {}}; }
  static TransactionEvent short_sell(Tick t, SecurityId s, Shares q) { return {t, EventKind::ShortSell, std::move(s), q, {}}; }
  static TransactionEvent sell(Tick t, SecurityId s, Shares q) { return {t, EventKind::SellOwned, std::move(s), q, {}}; }
  static TransactionEvent cover_by_purchase(Tick t, SecurityId s, Shares q) { return {t, EventKind::CoverByPurchase, std::move(s), q, {}}; }
  static TransactionEvent cover_with_owned(Tick t, SecurityId s, Shares q) { return {t, EventKind::CoverByOwnedLot, std::move(s), q, {}}; }
  static TransactionEvent death(Tick t, std::string heir = {}) { return {t, EventKind::Death, {}, 0, std::move(heir)}; }
};

struct PortfolioState {
  std::vector<Lot> lots;  // FIFO order (ascending id)
  std::vector<BorrowPosition> borrows;  // ascending id
  Money cash;  // cumulative pre-tax cash flow
  int owner_generation = 0;
  LotId next_lot_id = 1;
  BorrowId next_borrow_id = 1;

  Shares owned(const SecurityId& sec) const {
    Shares n = 0;
    for (const auto& l : lots) if (l.sec == sec) n += l.qty;
    return n;
  }
  Shares borrowed_unsold(const SecurityId& sec) const {
    Shares n = 0;
    for (const auto& b : borrows) if (b.sec == sec) n += b.qty_unsold();
    return n;
  }
  Shares short_outstanding(const SecurityId& sec) const {
    Shares n = 0;
    for (const auto& b : borrows) if (b.sec == sec) n += b.qty_coverable();
    return n;
  }
  const Lot* find_lot(LotId id) const {
    const auto it = std::find_if(lots.begin(), lots.end(),
                                 [&](const Lot& l) { return l.id == id; });
    return it == lots.end() ? nullptr : &*it;
  }

  bool operator==(const PortfolioState&) const = default;
};

/// How owned lots are picked for a disposal.
struct LotPolicy {
  enum class Kind { Fifo, SpecificId };
  Kind kind = Kind::Fifo;
  /// SpecificId: lots consumed in this order.
  std::vector<LotId> ids;
  /// Upper bound on what may be taken from a lot; absent means unlimited.
  std::map<LotId, Shares> caps;

  static LotPolicy fifo() { return {}; }
  static LotPolicy specific(std::vector<LotId> ids) {
    return {Kind::SpecificId, std::move(ids), {}};
  }
};

struct LotSlice {
  LotId lot = 0;
  Shares qty = 0;
  Money basis_per_share;
  bool operator==(const LotSlice&) const = default;
};

struct BorrowSlice {
  BorrowId borrow = 0;
  Shares qty = 0;
  /// Proceeds of the short sale of these shares; set on cover slices.
  std::optional<Money> proceeds_per_share;
  bool operator==(const BorrowSlice&) const = default;
};

struct StepUpRecord {
  LotId lot = 0;
  Money old_basis;
  Money new_basis;
  bool operator==(const StepUpRecord&) const = default;
};

/// What an event moved. The realization rules read only this.
struct LedgerEffects {
  TransactionEvent event;
  Money price;  // market price used (zero for Borrow/Death)
  Money cash_delta;
  std::optional<LotId> lot_opened;
  std::optional<BorrowId> borrow_opened;
  std::vector<LotSlice> lots_consumed;
  std::vector<BorrowSlice> borrows_sold;
  std::vector<BorrowSlice> borrows_covered;
  std::vector<StepUpRecord> stepped_up;
  /// ShortSell, SellOwned, CoverByOwnedLot: owned lots of the security
  /// before the event.
  std::vector<Lot> lots_held;
};

struct Applied {
  PortfolioState state;
  LedgerEffects effects;
};

inline void require_positive(Shares qty) {
  if (qty <= 0) {
    throw Error(ErrorCode::InvalidQuantity,
                "quantity must be positive, got " + std::to_string(qty));
  }
}

/// Picks which lot shares a disposal of `qty` shares consumes. Pure.
inline std::vector<LotSlice> match_lots(const PortfolioState& state,
                                        const SecurityId& sec, Shares qty,
                                        const LotPolicy& policy = {}) {
  require_positive(qty);
  std::vector<const Lot*> order;
  if (policy.kind == LotPolicy::Kind::Fifo) {
    for (const auto& l : state.lots) if (l.sec == sec) order.push_back(&l);
  } else {
    for (LotId id : policy.ids) {
      const Lot* l = state.find_lot(id);
      if (l == nullptr || l->sec != sec) {
        throw Error(ErrorCode::UnknownLotId,
                    "lot " + std::to_string(id) + " is not a live " + sec.symbol() + " lot");
      }
      order.push_back(l);
    }
  }

  std::vector<LotSlice> out;
  Shares remaining = qty;
  for (const Lot* l : order) {
    if (remaining == 0) break;
    Shares avail = l->qty;
    if (const auto cap = policy.caps.find(l->id); cap != policy.caps.end()) {
      avail = std::min(avail, cap->second);
    }
    const Shares take = std::min(avail, remaining);
    if (take <= 0) continue;
    out.push_back({l->id, take, l->basis_per_share});
    remaining -= take;
  }
  if (remaining > 0) {
    throw Error(ErrorCode::InsufficientOwnedShares,
                "need " + std::to_string(qty) + " " + sec.symbol() + ", only " +
                    std::to_string(qty - remaining) + " available");
  }
  return out;
}

/// Transmits the whole portfolio to an heir: every lot's basis becomes the
/// market price at `at`; open borrow positions carry over unchanged.
inline PortfolioState step_up(const PortfolioState& state, Tick at,
                              const PricePath& path,
                              std::vector<StepUpRecord>* records = nullptr) {
  const bool open_borrow =
      std::any_of(state.borrows.begin(), state.borrows.end(),
                  [](const BorrowPosition& b) { return b.qty_outstanding > 0; });
  if (state.lots.empty() && !open_borrow) {
    throw Error(ErrorCode::NothingToTransmit, "no lots or open borrows at death");
  }
  PortfolioState next = state;
  for (auto& lot : next.lots) {
    const Money fmv = price_at(path, lot.sec, at);
    if (records) records->push_back({lot.id, lot.basis_per_share, fmv});
    lot.basis_per_share = fmv;
    lot.method = AcquisitionMethod::Inheritance;
    lot.acquired_at = at;
  }
  ++next.owner_generation;
  return next;
}

namespace detail {

inline void consume_lots(PortfolioState& s, const std::vector<LotSlice>& slices) {
  for (const auto& slice : slices) {
    for (auto& l : s.lots) {
      if (l.id == slice.lot) l.qty -= slice.qty;
    }
  }
  std::erase_if(s.lots, [](const Lot& l) { return l.qty == 0; });
}

inline std::vector<BorrowSlice> cover_borrows(PortfolioState& s,
                                              const SecurityId& sec, Shares qty) {
  if (s.short_outstanding(sec) < qty) {
    throw Error(ErrorCode::OverCover,
                "cover of " + std::to_string(qty) + " " + sec.symbol() +
                    " exceeds " + std::to_string(s.short_outstanding(sec)) +
                    " shares sold short and outstanding");
  }
  std::vector<BorrowSlice> out;
  Shares remaining = qty;
  for (auto& b : s.borrows) {
    if (remaining == 0) break;
    if (b.sec != sec) continue;
    const Shares take = std::min(b.qty_coverable(), remaining);
    if (take == 0) continue;
    b.qty_outstanding -= take;
    remaining -= take;
    out.push_back({b.id, take, b.short_proceeds_per_share});
  }
  std::erase_if(s.borrows, [](const BorrowPosition& b) { return b.qty_outstanding == 0; });
  return out;
}

}  // namespace detail

/// Applies one transaction. The input state is never modified.
inline Applied apply_event(const PortfolioState& state, const TransactionEvent& ev,
                           const PricePath& path, const LotPolicy& policy = {}) {
  Applied out{state, LedgerEffects{}};
  PortfolioState& s = out.state;
  LedgerEffects& fx = out.effects;
  fx.event = ev;

  if (ev.kind == EventKind::Death) {
    s = step_up(state, ev.at, path, &fx.stepped_up);
    return out;
  }

  require_positive(ev.qty);
  const SecurityId& sec = ev.sec;
  if (ev.kind != EventKind::Borrow) fx.price = price_at(path, sec, ev.at);
  if (ev.kind == EventKind::ShortSell || ev.kind == EventKind::SellOwned ||
      ev.kind == EventKind::CoverByOwnedLot) {
    for (const auto& l : s.lots) if (l.sec == sec) fx.lots_held.push_back(l);
  }

  switch (ev.kind) {
    case EventKind::Buy: {
      const LotId id = s.next_lot_id++;
      s.lots.push_back({id, sec, ev.qty, fx.price, ev.at, AcquisitionMethod::Purchase});
      fx.lot_opened = id;
      fx.cash_delta = -(fx.price * ev.qty);
      break;
    }
    case EventKind::Borrow: {
      const BorrowId id = s.next_borrow_id++;
      s.borrows.push_back({id, sec, ev.qty, ev.at, 0, std::nullopt, std::nullopt, ev.qty});
      fx.borrow_opened = id;
      break;
    }
    case EventKind::ShortSell: {
      if (s.borrowed_unsold(sec) < ev.qty) {
        throw Error(ErrorCode::NoOpenBorrow,
                    "short sale of " + std::to_string(ev.qty) + " " + sec.symbol() +
                        " exceeds " + std::to_string(s.borrowed_unsold(sec)) +
                        " borrowed unsold shares");
      }
      Shares remaining = ev.qty;
      std::vector<BorrowPosition> split_off;
      for (auto& b : s.borrows) {
        if (remaining == 0) break;
        if (b.sec != sec || b.qty_unsold() == 0) continue;
        const Shares take = std::min(b.qty_unsold(), remaining);
        if (take < b.qty_borrowed) {
          BorrowPosition rest = b;
          rest.id = s.next_borrow_id++;
          rest.qty_borrowed = rest.qty_outstanding = b.qty_borrowed - take;
          split_off.push_back(rest);
          b.qty_borrowed = b.qty_outstanding = take;
        }
        b.qty_sold_short = take;
        b.short_proceeds_per_share = fx.price;
        b.sold_at = ev.at;
        remaining -= take;
        fx.borrows_sold.push_back({b.id, take, fx.price});
      }
      s.borrows.insert(s.borrows.end(), split_off.begin(), split_off.end());
      std::sort(s.borrows.begin(), s.borrows.end(),
                [](const BorrowPosition& a, const BorrowPosition& b) { return a.id < b.id; });
      fx.cash_delta = fx.price * ev.qty;
      break;
    }
    case EventKind::SellOwned: {
      fx.lots_consumed = match_lots(s, sec, ev.qty, policy);
      detail::consume_lots(s, fx.lots_consumed);
      fx.cash_delta = fx.price * ev.qty;
      break;
    }
    case EventKind::CoverByPurchase: {
      fx.borrows_covered = detail::cover_borrows(s, sec, ev.qty);
      fx.cash_delta = -(fx.price * ev.qty);
      break;
    }
    case EventKind::CoverByOwnedLot: {
      fx.lots_consumed = match_lots(s, sec, ev.qty, policy);
      detail::consume_lots(s, fx.lots_consumed);
      fx.borrows_covered = detail::cover_borrows(s, sec, ev.qty);
      break;
    }
    case EventKind::Death:
      break;
  }
  s.cash += fx.cash_delta;
  return out;
}

}  // namespace realize
