#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "syncsum/common.hpp"

namespace syncsum::numeration {

enum class DigitOrder { msd, lsd };

/// A base-k positional system (either digit order) or the Zeckendorf system.
class System {
 public:
  static System base(unsigned k, DigitOrder order = DigitOrder::msd);
  static System fibonacci();
  /// Accepts "msd_<k>", "lsd_<k>" and "fib".
  static System parse(std::string_view tag);

  bool is_fibonacci() const noexcept { return fibonacci_; }
  /// Size of the digit alphabet: k for base systems, 2 for Zeckendorf.
  unsigned radix() const noexcept { return radix_; }
  DigitOrder order() const noexcept { return order_; }
  /// The same system read most-significant-digit first.
  System as_msd() const noexcept;
  std::string tag() const;

  friend bool operator==(const System&, const System&) = default;

 private:
  System(bool fib, unsigned radix, DigitOrder order) : fibonacci_(fib), radix_(radix), order_(order) {}
  bool fibonacci_;
  unsigned radix_;
  DigitOrder order_;
};

using Digits = std::vector<std::uint8_t>;

/// Digits are always stored most significant first, whatever the system's order.
struct Numeral {
  System system;
  Digits digits;
};

/// prefix . block^r . suffix
struct PatternNumeral {
  System system;
  Digits prefix;
  Digits block;
  Digits suffix;
  std::string parameter = "r";
};

/// F_0 = 0, F_1 = 1, ...
BigInt fibonacci_number(unsigned index);

Numeral to_digits(const BigInt& n, System system);
BigInt from_digits(const Numeral& numeral, bool allow_noncanonical = false);
BigInt value_of(System system, std::span<const std::uint8_t> msd_digits, bool allow_noncanonical = false);

/// True when the word has no leading zero and, for Zeckendorf, no "11" factor.
bool is_canonical(const Numeral& numeral);
/// Zeckendorf words must avoid "11"; base words only need digits in range.
bool is_valid_word(System system, std::span<const std::uint8_t> msd_digits);

struct Alignment {
  std::vector<Digits> words;             // msd-first, equal length
  std::vector<DigitOrder> original_order;
};

Alignment align(std::span<const Numeral> numerals);

Numeral expand_pattern(const PatternNumeral& pattern, std::size_t r, bool allow_noncanonical = false);

/// Text form such as "msd_2:10101", "msd_13:1_12_0", "lsd_2:011" (lsd digits printed lsd first).
std::string format_numeral(const Numeral& numeral);
Numeral parse_numeral(std::string_view text);

/// Digit word in the text convention of `system`; underscores separate digits when present.
Digits parse_digit_word(std::string_view text, System system);
std::string format_digit_word(const Digits& digits, System system);

/// Micro-grammar "prefix (block)^r suffix", whitespace ignored, optional leading "0*".
PatternNumeral parse_pattern(std::string_view text, System system);
std::string format_pattern(const PatternNumeral& pattern);

}  // namespace syncsum::numeration
