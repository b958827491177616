#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "tpmab/rng.hpp"

using namespace tpmab;

TEST_CASE("equal keys reproduce, unequal keys differ") {
  StreamKey key{42, 3, 0, 17, 2, 5};
  KeyedStream a(key);
  KeyedStream b(key);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

  StreamKey other = key;
  other.lane = 6;
  KeyedStream c(key);
  KeyedStream d(other);
  int same = 0;
  for (int i = 0; i < 64; ++i) same += c.next_u64() == d.next_u64();
  CHECK(same == 0);
}

TEST_CASE("unit draws live in [0,1)") {
  KeyedStream s(StreamKey{7, 0, 0, 0, 0, 0});
  for (int i = 0; i < 10000; ++i) {
    double u = s.next_unit();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("next_below is uniform over small ranges") {
  KeyedStream s(StreamKey{11, 0, 0, 0, 0, 0});
  std::vector<int> counts(7, 0);
  const int draws = 70000;
  for (int i = 0; i < draws; ++i) counts[static_cast<size_t>(s.next_below(7))] += 1;
  for (int c : counts) {
    CHECK(c > draws / 7 - 600);
    CHECK(c < draws / 7 + 600);
  }
}

TEST_CASE("beta moments match a/(a+b) within three standard errors") {
  struct Case {
    double a, b;
  };
  for (Case c : {Case{1, 1}, Case{2, 5}, Case{10, 10}, Case{0.5, 2}, Case{100, 3}}) {
    KeyedStream s(StreamKey{1234, static_cast<uint64_t>(c.a * 10), 0,
                            static_cast<uint64_t>(c.b * 10), 0, 0});
    const int n = 100000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      double x = s.next_beta(c.a, c.b);
      CHECK(x >= 0.0);
      CHECK(x <= 1.0);
      sum += x;
    }
    const double mean = sum / n;
    const double expected = c.a / (c.a + c.b);
    const double variance =
        c.a * c.b / ((c.a + c.b) * (c.a + c.b) * (c.a + c.b + 1.0));
    const double se = std::sqrt(variance / n);
    CHECK(std::abs(mean - expected) < 3.0 * se);
  }
}

TEST_CASE("exponential and normal moments are sane") {
  KeyedStream s(StreamKey{99, 0, 0, 0, 0, 0});
  const int n = 200000;
  double exp_sum = 0.0, norm_sum = 0.0, norm_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    exp_sum += s.next_exponential();
    double z = s.next_normal();
    norm_sum += z;
    norm_sq += z * z;
  }
  CHECK(exp_sum / n == doctest::Approx(1.0).epsilon(0.01));
  CHECK(norm_sum / n == doctest::Approx(0.0).epsilon(1.0).scale(0.01));
  CHECK(norm_sq / n == doctest::Approx(1.0).epsilon(0.02));
}
