#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "tropmeas/tropical.hpp"

using tropmeas::MaxPlus;

namespace {
const MaxPlus bot = MaxPlus::bottom();
MaxPlus v(double x) { return MaxPlus(x); }
}  // namespace

TEST_CASE("oplus is max with bottom as the least element") {
  CHECK(oplus(v(3), v(5)) == v(5));
  CHECK(oplus(bot, v(-7)) == v(-7));
  CHECK(oplus(v(-7), bot) == v(-7));
  CHECK(oplus(v(2.5), v(2.5)) == v(2.5));
  CHECK(oplus(bot, bot).is_bottom());
}

TEST_CASE("odot is plus with bottom absorbing") {
  CHECK(odot(v(3), v(5)) == v(8));
  CHECK(odot(MaxPlus::one(), v(4.25)) == v(4.25));
  CHECK(odot(bot, v(7)).is_bottom());
  CHECK(odot(v(7), bot).is_bottom());
  CHECK_FALSE(odot(v(-1e300), v(-1e300)).is_bottom());
}

TEST_CASE("big_oplus folds max") {
  CHECK(tropmeas::big_oplus({v(-1), v(0), v(-3)}) == v(0));
  CHECK(tropmeas::big_oplus(std::span<const MaxPlus>{}).is_bottom());
  CHECK(tropmeas::big_oplus({bot, v(-2)}) == v(-2));
}

TEST_CASE("finite values reject NaN and infinities") {
  CHECK_THROWS_AS(MaxPlus(std::nan("")), std::invalid_argument);
  CHECK_THROWS_AS(MaxPlus(std::numeric_limits<double>::infinity()), std::invalid_argument);
  CHECK_THROWS_AS(MaxPlus(-std::numeric_limits<double>::infinity()), std::invalid_argument);
  CHECK_THROWS_AS(bot.value(), std::logic_error);
}

TEST_CASE("ieee boundary conversion") {
  CHECK(MaxPlus::from_ieee(-std::numeric_limits<double>::infinity()).is_bottom());
  CHECK(MaxPlus::from_ieee(1.5) == v(1.5));
  CHECK(bot.to_ieee() == -std::numeric_limits<double>::infinity());
  CHECK_THROWS(MaxPlus::from_ieee(std::numeric_limits<double>::infinity()));
  CHECK(bot.to_string() == "-inf");
  CHECK(v(-0.5).to_string() == "-0.5");
}

TEST_CASE("semiring laws on random values") {
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> d(-100.0, 100.0);
  auto draw = [&] { return std::bernoulli_distribution(0.1)(rng) ? bot : v(d(rng)); };
  for (int i = 0; i < 2000; ++i) {
    const MaxPlus a = draw(), b = draw(), c = draw();
    CHECK(oplus(oplus(a, b), c) == oplus(a, oplus(b, c)));
    CHECK(oplus(a, b) == oplus(b, a));
    CHECK(oplus(a, a) == a);
    CHECK(odot(a, b) == odot(b, a));
    CHECK(oplus(a, bot) == a);
    CHECK(odot(a, MaxPlus::one()) == a);
    CHECK(odot(a, bot).is_bottom());

    const MaxPlus l = odot(odot(a, b), c), r = odot(a, odot(b, c));
    CHECK(l.is_bottom() == r.is_bottom());
    if (!l.is_bottom()) CHECK(std::abs(l.value() - r.value()) <= 1e-12 * std::max(1.0, std::abs(l.value())));

    // a (.) (b (+) c) = (a (.) b) (+) (a (.) c): max commutes with adding a.
    CHECK(odot(a, oplus(b, c)) == oplus(odot(a, b), odot(a, c)));

    if (!a.is_bottom()) {
      CHECK(odot(a, inverse(a)) == MaxPlus::one());
      CHECK_FALSE(odot(a, b).is_bottom() != b.is_bottom());
    }
  }
  CHECK_THROWS_AS(inverse(bot), std::domain_error);
}
