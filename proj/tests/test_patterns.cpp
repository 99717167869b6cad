#include "doctest.h"

#include <algorithm>
#include <string>

#include "oracles.hpp"
#include "scanwin/error.hpp"
#include "scanwin/patterns.hpp"

using namespace scanwin;

namespace {

std::vector<std::string> texts(const PatternSet& set) {
  std::vector<std::string> out;
  for (const auto& x : set) out.push_back(x.to_string());
  return out;
}

long long binomial(int n, int k) {
  long long c = 1;
  for (int i = 1; i <= k; ++i) c = c * (n - i + 1) / i;
  return c;
}

}  // namespace

TEST_CASE("enumeration matches brute force for every w <= 12") {
  for (int w = 1; w <= 12; ++w) {
    for (int s = 1; s <= w; ++s) {
      CAPTURE(w);
      CAPTURE(s);
      const auto set = enumerate_patterns(w, s);
      CHECK(texts(set) == oracle::brute_force_patterns(w, s));
      CHECK(static_cast<long long>(set.size()) == binomial(w - 1, s - 1));
      CHECK(pattern_count(w, s) == set.size());
    }
  }
}

TEST_CASE("enumerated patterns satisfy the pattern invariants") {
  for (int w = 1; w <= 12; ++w) {
    for (int s = 1; s <= w; ++s) {
      const auto set = enumerate_patterns(w, s);
      for (std::size_t i = 0; i < set.size(); ++i) {
        const auto& x = set[i];
        CHECK(x.bits().front() == 1);
        CHECK(x.bits().back() == 1);
        CHECK(x.ones() == s);
        CHECK(x.length() >= s);
        CHECK(x.length() <= w);
        if (i > 0) CHECK(canonical_less(set[i - 1], x));
        CHECK(set.index_of(x) == i);
      }
    }
  }
}

TEST_CASE("small families") {
  CHECK(texts(enumerate_patterns(4, 4)) == std::vector<std::string>{"1111"});
  CHECK(enumerate_patterns(5, 3).size() == 6);
  CHECK(texts(enumerate_patterns(6, 2)) ==
        std::vector<std::string>{"11", "101", "1001", "10001", "100001"});
  CHECK(texts(enumerate_patterns(7, 1)) == std::vector<std::string>{"1"});
}

TEST_CASE("ages run oldest first down to zero") {
  CHECK(ages_from_pattern(EndingPattern::from_string("11")) == std::vector<int>{1, 0});
  CHECK(ages_from_pattern(EndingPattern::from_string("1010001")) == std::vector<int>{6, 4, 0});
  CHECK(ages_from_pattern(EndingPattern::from_string("1111")) == std::vector<int>{3, 2, 1, 0});

  for (const auto& x : enumerate_patterns(9, 4)) {
    const auto ages = ages_from_pattern(x);
    REQUIRE(ages.size() == 4);
    CHECK(ages.back() == 0);
    CHECK(ages.front() == x.length() - 1);
    CHECK(std::adjacent_find(ages.begin(), ages.end(), std::less_equal<>()) == ages.end());
  }
}

TEST_CASE("text round trip and validation") {
  const auto x = EndingPattern::from_string("1001101");
  CHECK(x.to_string() == "1001101");
  CHECK(x.length() == 7);
  CHECK(x.ones() == 4);
  CHECK(EndingPattern::run(3).to_string() == "111");

  for (const char* bad : {"", "0", "01", "10", "1021", "1 1"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(EndingPattern::from_string(bad), Error);
  }
  CHECK_THROWS_AS(EndingPattern(std::vector<Bit>{1, 2, 1}), Error);
}

TEST_CASE("canonical order is length first, then binary value") {
  const auto a = EndingPattern::from_string("111");
  const auto b = EndingPattern::from_string("1011");
  const auto c = EndingPattern::from_string("1101");
  CHECK(canonical_less(a, b));
  CHECK(canonical_less(b, c));
  CHECK_FALSE(canonical_less(c, b));
  CHECK_FALSE(canonical_less(a, a));
  const auto set = enumerate_patterns(4, 3);
  CHECK_FALSE(set.index_of(EndingPattern::from_string("10101")).has_value());
}

TEST_CASE("argument and cap errors") {
  const auto kind_of = [](auto fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::kUsage;
  };
  CHECK(kind_of([] { enumerate_patterns(3, 0); }) == ErrorKind::kInvalidArgument);
  CHECK(kind_of([] { enumerate_patterns(2, 3); }) == ErrorKind::kInvalidArgument);
  CHECK(kind_of([] { enumerate_patterns(30, 10, 1000); }) == ErrorKind::kCapExceeded);
  CHECK(pattern_count(2, 3) == 0);
  CHECK(pattern_count(200, 100) == std::numeric_limits<std::size_t>::max());
}
