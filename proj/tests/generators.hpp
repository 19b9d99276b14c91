#pragma once

// Random scenario generation for the property suites. Generated scenarios
// are valid under both regimes: a sale never touches shares that a
// constructive sale could have reserved (sell qty <= owned - short
// outstanding), and every cover is backed by an outstanding short.

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "realize/realize.hpp"

namespace realize::testing {

class ScenarioGen {
 public:
  explicit ScenarioGen(std::uint64_t seed) : rng_(seed) {}

  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
  }

  /// Whole pesos in [lo, hi].
  Money peso_price(std::int64_t lo = 1, std::int64_t hi = 1000) {
    return Money::pesos(uniform(lo, hi));
  }

  /// Any centavo amount between ₱0.01 and ₱1,000.00.
  Money centavo_price() { return Money::centavos(uniform(1, 100'000)); }

  Scenario scenario() {
    Scenario s;
    s.name = "random";
    const std::vector<SecurityId> secs{SecurityId{"AAA"}, SecurityId{"BBB"}};
    const auto ticks = uniform(2, 6);
    for (const auto& sec : secs) {
      for (std::int64_t t = 1; t <= ticks; ++t) {
        s.prices.set(sec, Tick{t}, uniform(0, 3) == 0 ? centavo_price() : peso_price());
      }
    }

    struct Book {
      Shares owned = 0;
      Shares unsold = 0;
      Shares outstanding = 0;
    };
    std::map<SecurityId, Book> book;
    const auto estate_nonempty = [&] {
      for (const auto& [sec, b] : book) {
        if (b.owned > 0 || b.unsold > 0 || b.outstanding > 0) return true;
      }
      return false;
    };

    for (std::int64_t t = 1; t <= ticks; ++t) {
      const auto n = uniform(0, 4);
      for (std::int64_t k = 0; k < n; ++k) {
        const SecurityId& sec = secs[static_cast<std::size_t>(uniform(0, 1))];
        Book& b = book[sec];
        const Tick at{t};
        switch (uniform(0, 7)) {
          case 0: {
            const Shares q = uniform(1, 1000);
            b.owned += q;
            s.events.push_back(TransactionEvent::buy(at, sec, q));
            break;
          }
          case 1: {
            const Shares q = uniform(1, 1000);
            b.unsold += q;
            s.events.push_back(TransactionEvent::borrow(at, sec, q));
            break;
          }
          case 2:
            if (b.unsold > 0) {
              const Shares q = uniform(1, b.unsold);
              b.unsold -= q;
              b.outstanding += q;
              s.events.push_back(TransactionEvent::short_sell(at, sec, q));
            }
            break;
          case 3:
            if (b.owned - b.outstanding > 0) {
              const Shares q = uniform(1, b.owned - b.outstanding);
              b.owned -= q;
              s.events.push_back(TransactionEvent::sell(at, sec, q));
            }
            break;
          case 4:
            if (b.outstanding > 0) {
              const Shares q = uniform(1, b.outstanding);
              b.outstanding -= q;
              s.events.push_back(TransactionEvent::cover_by_purchase(at, sec, q));
            }
            break;
          case 5:
          case 6:
            if (std::min(b.outstanding, b.owned) > 0) {
              const Shares q = uniform(1, std::min(b.outstanding, b.owned));
              b.outstanding -= q;
              b.owned -= q;
              s.events.push_back(TransactionEvent::cover_with_owned(at, sec, q));
            }
            break;
          case 7:
            if (estate_nonempty() && uniform(0, 2) == 0) {
              s.events.push_back(TransactionEvent::death(at, uniform(0, 1) ? "H" : ""));
            }
            break;
        }
      }
    }
    return s;
  }

  /// Buy at t1, short against the box at t2, cover with the owned shares at t3.
  Scenario against_the_box(Money p1, Money p2, Money p3, Shares qty = kBlock) {
    Scenario s;
    s.name = "box";
    const SecurityId abc{"ABC"};
    s.prices.set(abc, Tick{1}, p1);
    s.prices.set(abc, Tick{2}, p2);
    s.prices.set(abc, Tick{3}, p3);
    s.events = {TransactionEvent::buy(Tick{1}, abc, qty), TransactionEvent::borrow(Tick{2}, abc, qty),
                TransactionEvent::short_sell(Tick{2}, abc, qty),
                TransactionEvent::cover_with_owned(Tick{3}, abc, qty)};
    return s;
  }

  /// Buy at t1, sell at `sell_tick` (2 or 3).
  Scenario ordinary(Money p1, Money p2, Money p3, std::int64_t sell_tick, Shares qty = kBlock) {
    Scenario s;
    s.name = "ordinary";
    const SecurityId abc{"ABC"};
    s.prices.set(abc, Tick{1}, p1);
    s.prices.set(abc, Tick{2}, p2);
    s.prices.set(abc, Tick{3}, p3);
    s.events = {TransactionEvent::buy(Tick{1}, abc, qty),
                TransactionEvent::sell(Tick{sell_tick}, abc, qty)};
    return s;
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace realize::testing
