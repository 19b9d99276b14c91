#include <gtest/gtest.h>

#include <random>

#include "realize/scenario.hpp"
#include "realize/taxation.hpp"

using namespace realize;

namespace {

const SecurityId kAbc{"ABC"};

RealizationEvent gain_at(std::int64_t tick, std::int64_t pesos) {
  return {Tick{tick}, RealizationKind::OrdinarySale, kAbc, 1, {}, {}, Money::pesos(pesos),
          Money::pesos(pesos)};
}

}  // namespace

TEST(NetByPeriod, NetsWithinATick) {
  const std::vector<PeriodNet> expected{{Tick{3}, Money::pesos(5'000'000)}};
  EXPECT_EQ(net_by_period({gain_at(3, 7'000'000), gain_at(3, -2'000'000)}), expected);
}

TEST(NetByPeriod, NetLoss) {
  const std::vector<PeriodNet> expected{{Tick{3}, -Money::pesos(3'000'000)}};
  EXPECT_EQ(net_by_period({gain_at(3, 0), gain_at(3, -3'000'000)}), expected);
}

TEST(NetByPeriod, Empty) { EXPECT_TRUE(net_by_period({}).empty()); }

TEST(NetByPeriod, SeparateTicksStaySeparate) {
  const std::vector<PeriodNet> expected{{Tick{2}, Money::pesos(10)}, {Tick{3}, -Money::pesos(4)}};
  EXPECT_EQ(net_by_period({gain_at(2, 10), gain_at(3, -4)}), expected);
}

TEST(NetByPeriod, WholeRunWindowLabelledByLastTick) {
  const std::vector<PeriodNet> expected{{Tick{3}, Money::pesos(6)}};
  EXPECT_EQ(net_by_period({gain_at(2, 10), gain_at(3, -4)}, NettingWindow::whole_run()), expected);
}

TEST(NetByPeriod, FixedWindows) {
  const auto w = NettingWindow::fixed(2);
  EXPECT_EQ(w.key(Tick{2}), w.key(Tick{3}));
  EXPECT_NE(w.key(Tick{3}), w.key(Tick{4}));
  EXPECT_NE(w.key(Tick{-1}), w.key(Tick{0}));
  EXPECT_EQ(w.key(Tick{-1}), w.key(Tick{-2}));
  const std::vector<PeriodNet> expected{{Tick{1}, Money::pesos(1)},
                                        {Tick{3}, Money::pesos(6)},
                                        {Tick{4}, Money::pesos(2)}};
  EXPECT_EQ(net_by_period({gain_at(1, 1), gain_at(2, 10), gain_at(3, -4), gain_at(4, 2)}, w),
            expected);
}

TEST(TaxDue, Examples) {
  EXPECT_EQ(tax_due(Money::pesos(5'000'000), RateSchedule::PaperFlat), Money::pesos(500'000));
  EXPECT_EQ(tax_due(-Money::pesos(2'000'000), RateSchedule::PaperFlat), Money{});
  EXPECT_EQ(tax_due(-Money::pesos(2'000'000), RateSchedule::Statutory), Money{});
  EXPECT_EQ(tax_due(Money::pesos(5'000'000), RateSchedule::Statutory), Money::pesos(495'000));
  EXPECT_EQ(tax_due(Money::pesos(100'000), RateSchedule::Statutory), Money::pesos(5'000));
  EXPECT_EQ(tax_due(Money{}, RateSchedule::Statutory), Money{});
}

TEST(TaxDue, StatutoryMatchesTierArithmetic) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::int64_t> pesos(1, 10'000'000);
  for (int i = 0; i < 2'000; ++i) {
    const std::int64_t p = pesos(rng);
    // whole-peso gains: 5% and 10% of a whole-peso amount are exact in centavos
    const std::int64_t lower = std::min<std::int64_t>(p, 100'000);
    const std::int64_t upper = std::max<std::int64_t>(p - 100'000, 0);
    const Money expected = Money::centavos(lower * 5 + upper * 10);
    EXPECT_EQ(tax_due(Money::pesos(p), RateSchedule::Statutory), expected) << p;
    EXPECT_EQ(tax_due(Money::pesos(p), RateSchedule::PaperFlat), Money::centavos(p * 10));
  }
}

TEST(TaxDue, MonotoneAndStatutoryBelowFlat) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::int64_t> c(-1'000'000, 2'000'000'000);
  for (int i = 0; i < 5'000; ++i) {
    Money a = Money::centavos(c(rng));
    Money b = Money::centavos(c(rng));
    if (b < a) std::swap(a, b);
    for (const auto s : {RateSchedule::PaperFlat, RateSchedule::Statutory}) {
      EXPECT_LE(tax_due(a, s), tax_due(b, s));
      EXPECT_GE(tax_due(a, s), Money{});
    }
    EXPECT_LE(tax_due(b, RateSchedule::Statutory), tax_due(b, RateSchedule::PaperFlat));
  }
}

TEST(TaxTimeline, Strategy3Current) {
  const auto r = run(builtin("strategy3"), {Regime::Current});
  const std::vector<TaxLine> expected{{Tick{3}, Money::pesos(5'000'000), Money::pesos(500'000)}};
  EXPECT_EQ(r.taxes.lines, expected);
  EXPECT_EQ(r.taxes.total_tax, Money::pesos(500'000));
}

TEST(TaxTimeline, AbcPathProposed) {
  const auto r = run(builtin("proposed_demo"), {Regime::Proposed});
  const std::vector<TaxLine> expected{{Tick{2}, Money::pesos(5'000'000), Money::pesos(500'000)},
                                      {Tick{3}, Money::pesos(7'000'000), Money::pesos(700'000)}};
  EXPECT_EQ(r.taxes.lines, expected);
  EXPECT_EQ(r.taxes.total_tax, Money::pesos(1'200'000));
}

TEST(TaxTimeline, EmptyAndLossPeriods) {
  EXPECT_TRUE(tax_timeline({}).lines.empty());
  EXPECT_EQ(tax_timeline({}).total_tax, Money{});
  const auto t = tax_timeline({gain_at(2, -10), gain_at(3, 100)});
  // A loss in one period does not carry into the next.
  EXPECT_EQ(t.total_tax, Money::pesos(10));
  EXPECT_EQ(t.lines[0].tax_due, Money{});
}

TEST(TaxTimeline, WholeRunNetsAcrossTicks) {
  const auto t = tax_timeline({gain_at(2, -10), gain_at(3, 100)}, NettingWindow::whole_run());
  ASSERT_EQ(t.lines.size(), 1u);
  EXPECT_EQ(t.total_tax, Money::pesos(9));
}
