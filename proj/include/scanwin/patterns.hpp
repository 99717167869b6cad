#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace scanwin {

/// Refuse to enumerate more ending patterns than this unless the caller
/// raises the cap explicitly.
inline constexpr std::size_t kDefaultPatternCap = 5'000'000;

using Bit = std::uint8_t;

/// A binary string x_1..x_l with x_1 = x_l = 1. Records where the successes
/// that completed the process sit inside the final window; the last bit is
/// the success that completed it.
class EndingPattern {
 public:
  /// Throws Error(kInvalidArgument) unless bits is nonempty, contains only
  /// 0/1, and starts and ends with 1.
  explicit EndingPattern(std::vector<Bit> bits);

  /// Parses the ASCII form, e.g. "1010001".
  static EndingPattern from_string(std::string_view text);

  /// All-ones pattern of length s.
  static EndingPattern run(int s);

  std::span<const Bit> bits() const noexcept { return bits_; }
  int length() const noexcept { return static_cast<int>(bits_.size()); }
  int ones() const noexcept { return ones_; }
  std::string to_string() const;

  friend bool operator==(const EndingPattern&, const EndingPattern&) = default;

 private:
  std::vector<Bit> bits_;
  int ones_ = 0;
};

/// Canonical order: length ascending, then bits read as a binary number
/// (first bit most significant) ascending.
bool canonical_less(const EndingPattern& a, const EndingPattern& b) noexcept;

struct CanonicalLess {
  bool operator()(const EndingPattern& a, const EndingPattern& b) const noexcept {
    return canonical_less(a, b);
  }
};

/// The family of ending patterns for window w and s successes, in
/// canonical order.
struct PatternSet {
  int w = 0;
  int s = 0;
  std::vector<EndingPattern> patterns;

  std::size_t size() const noexcept { return patterns.size(); }
  const EndingPattern& operator[](std::size_t i) const { return patterns[i]; }
  auto begin() const noexcept { return patterns.begin(); }
  auto end() const noexcept { return patterns.end(); }

  /// Position of x in canonical order, or nullopt if x is not a member.
  std::optional<std::size_t> index_of(const EndingPattern& x) const;
};

/// binomial(w-1, s-1), saturating at SIZE_MAX.
std::size_t pattern_count(int w, int s);

/// All binary strings of length s..w with s ones that start and end with 1.
/// Throws Error(kInvalidArgument) for s < 1 or w < s, and
/// Error(kCapExceeded) when pattern_count(w, s) > cap.
PatternSet enumerate_patterns(int w, int s, std::size_t cap = kDefaultPatternCap);

/// Age (in time steps) of every success in x, oldest first. The success at
/// 1-indexed position i of a length-l pattern has age l - i.
std::vector<int> ages_from_pattern(const EndingPattern& x);

}  // namespace scanwin
