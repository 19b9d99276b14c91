#include <gtest/gtest.h>

#include "realize/realization.hpp"
#include "realize/scenario.hpp"

using namespace realize;

namespace {

const SecurityId kAbc{"ABC"};
using K = RealizationKind;

struct Trace {
  PortfolioState state;
  Reservations reservations;
  std::vector<RealizationEvent> events;
};

// Drives the ledger and realization steps directly, without the runner.
Trace drive(const Scenario& s, Regime regime) {
  Trace t;
  for (const auto& ev : s.events) {
    const LotPolicy pol = regime == Regime::Proposed
                              ? reservation_policy(t.state, t.reservations, ev)
                              : LotPolicy::fifo();
    const Applied a = apply_event(t.state, ev, s.prices, pol);
    Realized r = realize::realize(a.effects, regime, t.reservations);
    t.state = a.state;
    t.reservations = r.reservations;
    t.events.insert(t.events.end(), r.events.begin(), r.events.end());
  }
  return t;
}

RealizationEvent rev(std::int64_t tick, K kind, Shares qty, std::int64_t amount, std::int64_t basis) {
  return RealizationEvent::make(Tick{tick}, kind, kAbc, qty, Money::pesos(amount),
                                Money::pesos(basis));
}

}  // namespace

TEST(Realize, Strategy3UnderCurrent) {
  const auto t = drive(builtin("strategy3"), Regime::Current);
  const std::vector<RealizationEvent> expected{
      rev(3, K::OwnedDisposalAtCover, kBlock, 30, 50),
      rev(3, K::ShortCover, kBlock, 100, 30)};
  ASSERT_EQ(t.events, expected);
  EXPECT_EQ(t.events[0].gain_per_share, -Money::pesos(20));
  EXPECT_EQ(t.events[1].gain_per_share, Money::pesos(70));
  EXPECT_EQ(t.events[0].gain_total, -Money::pesos(2'000'000));
  EXPECT_EQ(t.events[1].gain_total, Money::pesos(7'000'000));
}

TEST(Realize, Strategy3UnderProposed) {
  const auto t = drive(builtin("strategy3"), Regime::Proposed);
  const std::vector<RealizationEvent> expected{
      rev(2, K::ConstructiveSale, kBlock, 100, 50),
      rev(3, K::ShortCover, kBlock, 100, 30)};
  EXPECT_EQ(t.events, expected);
  EXPECT_TRUE(t.reservations.empty());
}

TEST(Realize, SameTickRoundTripHasZeroGain) {
  Scenario s;
  s.prices.set(kAbc, Tick{1}, Money::pesos(50));
  s.events = {TransactionEvent::buy(Tick{1}, kAbc, 10), TransactionEvent::sell(Tick{1}, kAbc, 10)};
  const auto t = drive(s, Regime::Current);
  ASSERT_EQ(t.events.size(), 1u);
  EXPECT_EQ(t.events[0].kind, K::OrdinarySale);
  EXPECT_EQ(t.events[0].gain_total, Money{});
}

TEST(Realize, DeathPathUnderCurrent) {
  const auto t = drive(builtin("death_avoidance"), Regime::Current);
  const std::vector<RealizationEvent> expected{
      rev(4, K::OwnedDisposalAtCover, kBlock, 130, 130),
      rev(4, K::ShortCover, kBlock, 100, 130)};
  EXPECT_EQ(t.events, expected);
  EXPECT_EQ(t.events[1].gain_per_share, -Money::pesos(30));
}

TEST(Realize, DeathPathUnderProposed) {
  const auto t = drive(builtin("death_avoidance"), Regime::Proposed);
  const std::vector<RealizationEvent> expected{
      rev(2, K::ConstructiveSale, kBlock, 100, 50),
      rev(4, K::ShortCover, kBlock, 100, 130)};
  EXPECT_EQ(t.events, expected);
}

TEST(Realize, CurrentNeverRealizesAtShortSell) {
  const auto t = drive(builtin("strategy3"), Regime::Current);
  for (const auto& e : t.events) EXPECT_NE(e.at, Tick{2});
}

TEST(TriggerCheck, CountsUnreservedOwnedShares) {
  const Scenario s = builtin("strategy3");
  PortfolioState st = apply_event({}, s.events[0], s.prices).state;
  EXPECT_EQ(trigger_check(st, {}, kAbc), kBlock);
  const Reservations full{{1, kAbc, kBlock, Tick{2}}};
  EXPECT_EQ(trigger_check(st, full, kAbc), 0);
  const Reservations part{{1, kAbc, 30'000, Tick{2}}};
  EXPECT_EQ(trigger_check(st, part, kAbc), 70'000);
  EXPECT_EQ(trigger_check(st, {}, SecurityId{"XYZ"}), 0);
}

TEST(TriggerCheck, BorrowedSharesDoNotCount) {
  const Scenario s = builtin("strategy3");
  PortfolioState st;
  st = apply_event(st, s.events[1], s.prices).state;  // borrow only
  EXPECT_EQ(trigger_check(st, {}, kAbc), 0);
}

TEST(Realize, PartialOwnershipSplitsPerShare) {
  Scenario s = builtin("strategy3");
  s.events = {TransactionEvent::buy(Tick{1}, kAbc, 60'000),
              TransactionEvent::borrow(Tick{2}, kAbc, kBlock),
              TransactionEvent::short_sell(Tick{2}, kAbc, kBlock),
              TransactionEvent::cover_by_purchase(Tick{3}, kAbc, kBlock)};
  const auto t = drive(s, Regime::Proposed);
  // 60k constructive at t2 (100-50); all 100k short covered at t3 (100-30).
  const std::vector<RealizationEvent> expected{
      rev(2, K::ConstructiveSale, 60'000, 100, 50),
      rev(3, K::ShortCover, kBlock, 100, 30)};
  EXPECT_EQ(t.events, expected);
  EXPECT_EQ(t.events[0].gain_total, Money::pesos(3'000'000));

  const auto cur = drive(s, Regime::Current);
  const std::vector<RealizationEvent> cur_expected{rev(3, K::ShortCover, kBlock, 100, 30)};
  EXPECT_EQ(cur.events, cur_expected);
}

TEST(Realize, ReservationsFollowFifoAcrossLots) {
  Scenario s;
  s.prices.set(kAbc, Tick{1}, Money::pesos(40));
  s.prices.set(kAbc, Tick{2}, Money::pesos(60));
  s.prices.set(kAbc, Tick{3}, Money::pesos(90));
  s.events = {TransactionEvent::buy(Tick{1}, kAbc, 30),
              TransactionEvent::buy(Tick{2}, kAbc, 30),
              TransactionEvent::borrow(Tick{3}, kAbc, 50),
              TransactionEvent::short_sell(Tick{3}, kAbc, 50)};
  const auto t = drive(s, Regime::Proposed);
  const std::vector<RealizationEvent> expected{
      rev(3, K::ConstructiveSale, 30, 90, 40),
      rev(3, K::ConstructiveSale, 20, 90, 60)};
  EXPECT_EQ(t.events, expected);
  EXPECT_EQ(trigger_check(t.state, t.reservations, kAbc), 10);
}

TEST(Realize, ProposedSaleOfReservedSharesFails) {
  Scenario s = builtin("strategy3");
  s.events.back() = TransactionEvent::sell(Tick{3}, kAbc, 1);
  try {
    run(s, {Regime::Proposed});
    FAIL() << "expected InsufficientOwnedShares";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InsufficientOwnedShares);
    EXPECT_EQ(e.event_index(), 3u);
  }
  // The same sale is fine under Current.
  EXPECT_NO_THROW(run(s, {Regime::Current}));
}

TEST(Realize, ReservationMismatchGuardOnRawEffects) {
  const Scenario s = builtin("strategy3");
  PortfolioState st;
  for (int i = 0; i < 3; ++i) st = apply_event(st, s.events[i], s.prices).state;
  const Reservations rs{{1, kAbc, kBlock, Tick{2}}};
  // Bypassing reservation_policy, a plain FIFO sale reaches reserved shares.
  const Applied a = apply_event(st, TransactionEvent::sell(Tick{3}, kAbc, 10), s.prices);
  try {
    realize::realize(a.effects, Regime::Proposed, rs);
    FAIL() << "expected ReservationMismatch";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ReservationMismatch);
  }
  EXPECT_NO_THROW(realize::realize(a.effects, Regime::Current, {}));
}

TEST(Realize, CoverByPurchaseReleasesReservations) {
  Scenario s = builtin("strategy3");
  s.events.back() = TransactionEvent::cover_by_purchase(Tick{3}, kAbc, kBlock);
  s.events.push_back(TransactionEvent::sell(Tick{3}, kAbc, kBlock));
  const auto t = drive(s, Regime::Proposed);
  EXPECT_TRUE(t.reservations.empty());
  ASSERT_EQ(t.events.size(), 3u);
  EXPECT_EQ(t.events[2].kind, K::OrdinarySale);
  EXPECT_EQ(t.events[2].basis_per_share, Money::pesos(50));
}
