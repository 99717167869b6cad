#include "scanwin/patterns.hpp"

#include <algorithm>
#include <limits>

#include <fmt/format.h>

#include "scanwin/error.hpp"

namespace scanwin {

EndingPattern::EndingPattern(std::vector<Bit> bits) : bits_(std::move(bits)) {
  if (bits_.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "ending pattern must be nonempty");
  }
  for (Bit b : bits_) {
    if (b > 1) {
      throw Error(ErrorKind::kInvalidArgument, "ending pattern bits must be 0 or 1");
    }
    ones_ += b;
  }
  if (bits_.front() != 1 || bits_.back() != 1) {
    throw Error(ErrorKind::kInvalidArgument,
                "ending pattern must start and end with a success");
  }
}

EndingPattern EndingPattern::from_string(std::string_view text) {
  std::vector<Bit> bits;
  bits.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1') {
      throw Error(ErrorKind::kInvalidArgument,
                  fmt::format("invalid pattern character '{}' in \"{}\"", c, text));
    }
    bits.push_back(static_cast<Bit>(c - '0'));
  }
  return EndingPattern(std::move(bits));
}

EndingPattern EndingPattern::run(int s) {
  if (s < 1) {
    throw Error(ErrorKind::kInvalidArgument, "run length must be >= 1");
  }
  return EndingPattern(std::vector<Bit>(static_cast<std::size_t>(s), 1));
}

std::string EndingPattern::to_string() const {
  std::string out(bits_.size(), '0');
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) out[i] = '1';
  }
  return out;
}

bool canonical_less(const EndingPattern& a, const EndingPattern& b) noexcept {
  if (a.length() != b.length()) return a.length() < b.length();
  // Equal lengths: binary value order is lexicographic order.
  return std::lexicographical_compare(a.bits().begin(), a.bits().end(),
                                      b.bits().begin(), b.bits().end());
}

std::optional<std::size_t> PatternSet::index_of(const EndingPattern& x) const {
  auto it = std::lower_bound(patterns.begin(), patterns.end(), x, CanonicalLess{});
  if (it == patterns.end() || !(*it == x)) return std::nullopt;
  return static_cast<std::size_t>(it - patterns.begin());
}

std::size_t pattern_count(int w, int s) {
  if (s < 1 || w < s) return 0;
  const std::size_t n = static_cast<std::size_t>(w - 1);
  std::size_t k = static_cast<std::size_t>(s - 1);
  k = std::min(k, n - k);
  // C(n, i) = C(n, i-1) * (n - i + 1) / i stays integral at every step.
  __extension__ typedef unsigned __int128 wide;
  wide c = 1;
  const auto limit = static_cast<wide>(std::numeric_limits<std::size_t>::max());
  for (std::size_t i = 1; i <= k; ++i) {
    c = c * (n - i + 1) / i;
    if (c > limit) return std::numeric_limits<std::size_t>::max();
  }
  return static_cast<std::size_t>(c);
}

PatternSet enumerate_patterns(int w, int s, std::size_t cap) {
  if (s < 1) {
    throw Error(ErrorKind::kInvalidArgument, fmt::format("s must be >= 1 (got {})", s));
  }
  if (w < s) {
    throw Error(ErrorKind::kInvalidArgument,
                fmt::format("window w={} must be >= s={}", w, s));
  }
  const std::size_t count = pattern_count(w, s);
  if (count > cap) {
    throw Error(ErrorKind::kCapExceeded,
                fmt::format("|Omega({},{})| = {} exceeds the pattern cap {}", w, s,
                            count, cap));
  }

  PatternSet set{w, s, {}};
  set.patterns.reserve(count);
  if (s == 1) {
    set.patterns.push_back(EndingPattern::run(1));
    return set;
  }
  for (int l = s; l <= w; ++l) {
    // Interior bits hold s-2 ones; next_permutation walks them in
    // lexicographic (= binary) ascending order from the smallest arrangement.
    std::vector<Bit> interior(static_cast<std::size_t>(l - 2), 0);
    std::fill(interior.end() - (s - 2), interior.end(), Bit{1});
    do {
      std::vector<Bit> bits;
      bits.reserve(static_cast<std::size_t>(l));
      bits.push_back(1);
      bits.insert(bits.end(), interior.begin(), interior.end());
      bits.push_back(1);
      set.patterns.emplace_back(std::move(bits));
    } while (std::next_permutation(interior.begin(), interior.end()));
  }
  return set;
}

std::vector<int> ages_from_pattern(const EndingPattern& x) {
  std::vector<int> ages;
  ages.reserve(static_cast<std::size_t>(x.ones()));
  const auto bits = x.bits();
  const int l = x.length();
  for (int i = 0; i < l; ++i) {
    if (bits[static_cast<std::size_t>(i)]) ages.push_back(l - 1 - i);
  }
  return ages;
}

}  // namespace scanwin
