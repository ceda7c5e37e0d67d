#include "syncsum/numeration.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

namespace syncsum::numeration {

System System::base(unsigned k, DigitOrder order) {
  if (k < 2 || k > 255) throw Error("base must lie in [2, 255], got " + std::to_string(k));
  return System(false, k, order);
}

System System::fibonacci() { return System(true, 2, DigitOrder::msd); }

System System::parse(std::string_view tag) {
  if (tag == "fib") return fibonacci();
  DigitOrder order;
  if (tag.starts_with("msd_")) {
    order = DigitOrder::msd;
  } else if (tag.starts_with("lsd_")) {
    order = DigitOrder::lsd;
  } else {
    throw Error("unknown numeration system '" + std::string(tag) + "'");
  }
  unsigned k = 0;
  auto rest = tag.substr(4);
  auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), k);
  if (ec != std::errc{} || ptr != rest.data() + rest.size()) {
    throw Error("bad base in numeration system '" + std::string(tag) + "'");
  }
  return base(k, order);
}

System System::as_msd() const noexcept {
  System s = *this;
  s.order_ = DigitOrder::msd;
  return s;
}

std::string System::tag() const {
  if (fibonacci_) return "fib";
  return (order_ == DigitOrder::msd ? "msd_" : "lsd_") + std::to_string(radix_);
}

BigInt fibonacci_number(unsigned index) {
  BigInt f;
  mpz_fib_ui(f.get_mpz_t(), index);
  return f;
}

Numeral to_digits(const BigInt& n, System system) {
  if (n < 0) throw Error("negative integers have no numeral");
  Numeral out{system, {}};
  if (n == 0) return out;
  if (system.is_fibonacci()) {
    // Greedy Zeckendorf over weights F_2 = 1, F_3 = 2, ...
    std::vector<BigInt> weights{1, 2};
    while (weights.back() <= n) weights.push_back(weights[weights.size() - 1] + weights[weights.size() - 2]);
    weights.pop_back();
    BigInt rest = n;
    for (auto it = weights.rbegin(); it != weights.rend(); ++it) {
      if (*it <= rest) {
        out.digits.push_back(1);
        rest -= *it;
      } else {
        out.digits.push_back(0);
      }
    }
    return out;
  }
  BigInt rest = n;
  const unsigned long k = system.radix();
  while (rest > 0) {
    out.digits.push_back(static_cast<std::uint8_t>(mpz_fdiv_q_ui(rest.get_mpz_t(), rest.get_mpz_t(), k)));
  }
  std::reverse(out.digits.begin(), out.digits.end());
  return out;
}

bool is_valid_word(System system, std::span<const std::uint8_t> msd_digits) {
  for (std::size_t i = 0; i < msd_digits.size(); ++i) {
    if (msd_digits[i] >= system.radix()) return false;
    if (system.is_fibonacci() && i > 0 && msd_digits[i] == 1 && msd_digits[i - 1] == 1) return false;
  }
  return true;
}

BigInt value_of(System system, std::span<const std::uint8_t> msd_digits, bool allow_noncanonical) {
  for (auto d : msd_digits) {
    if (d >= system.radix()) {
      throw Error("digit " + std::to_string(d) + " out of range for " + system.tag());
    }
  }
  if (system.is_fibonacci()) {
    if (!allow_noncanonical && !is_valid_word(system, msd_digits)) {
      throw Error("Zeckendorf word contains \"11\"");
    }
    // value and the value with every weight shifted down by one index
    BigInt value = 0, shifted = 0;
    for (auto d : msd_digits) {
      BigInt next = value + shifted + d;
      shifted = value + d;
      value = std::move(next);
    }
    return value;
  }
  BigInt value = 0;
  for (auto d : msd_digits) value = value * system.radix() + d;
  return value;
}

BigInt from_digits(const Numeral& numeral, bool allow_noncanonical) {
  return value_of(numeral.system, numeral.digits, allow_noncanonical);
}

bool is_canonical(const Numeral& numeral) {
  if (!numeral.digits.empty() && numeral.digits.front() == 0) return false;
  return is_valid_word(numeral.system, numeral.digits);
}

Alignment align(std::span<const Numeral> numerals) {
  Alignment out;
  std::size_t width = 0;
  for (const auto& n : numerals) width = std::max(width, n.digits.size());
  for (const auto& n : numerals) {
    Digits padded(width - n.digits.size(), 0);
    padded.insert(padded.end(), n.digits.begin(), n.digits.end());
    out.words.push_back(std::move(padded));
    out.original_order.push_back(n.system.order());
  }
  return out;
}

Numeral expand_pattern(const PatternNumeral& pattern, std::size_t r, bool allow_noncanonical) {
  Numeral out{pattern.system, pattern.prefix};
  out.digits.reserve(pattern.prefix.size() + r * pattern.block.size() + pattern.suffix.size());
  for (std::size_t i = 0; i < r; ++i) out.digits.insert(out.digits.end(), pattern.block.begin(), pattern.block.end());
  out.digits.insert(out.digits.end(), pattern.suffix.begin(), pattern.suffix.end());
  for (auto d : out.digits) {
    if (d >= pattern.system.radix()) throw Error("pattern digit out of range for " + pattern.system.tag());
  }
  if (!allow_noncanonical && !is_valid_word(pattern.system, out.digits)) {
    throw Error("pattern expansion at r=" + std::to_string(r) + " is not a valid Zeckendorf word");
  }
  return out;
}

Digits parse_digit_word(std::string_view text, System system) {
  Digits out;
  auto push = [&](std::string_view tok) {
    unsigned d = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), d);
    if (tok.empty() || ec != std::errc{} || ptr != tok.data() + tok.size()) {
      throw Error("bad digit '" + std::string(tok) + "'");
    }
    if (d >= system.radix()) throw Error("digit " + std::to_string(d) + " out of range for " + system.tag());
    out.push_back(static_cast<std::uint8_t>(d));
  };
  if (text.find('_') != std::string_view::npos) {
    std::size_t start = 0;
    while (true) {
      auto pos = text.find('_', start);
      push(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
      if (pos == std::string_view::npos) break;
      start = pos + 1;
    }
  } else {
    for (std::size_t i = 0; i < text.size(); ++i) push(text.substr(i, 1));
  }
  return out;
}

std::string format_digit_word(const Digits& digits, System system) {
  std::string out;
  const bool separated = system.radix() > 10;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (separated && i > 0) out += '_';
    out += std::to_string(digits[i]);
  }
  return out;
}

std::string format_numeral(const Numeral& numeral) {
  Digits shown = numeral.digits;
  if (numeral.system.order() == DigitOrder::lsd) std::reverse(shown.begin(), shown.end());
  return numeral.system.tag() + ":" + format_digit_word(shown, numeral.system);
}

Numeral parse_numeral(std::string_view text) {
  auto colon = text.find(':');
  if (colon == std::string_view::npos) throw Error("numeral needs a system tag: '" + std::string(text) + "'");
  System sys = System::parse(text.substr(0, colon));
  Numeral out{sys, parse_digit_word(text.substr(colon + 1), sys)};
  if (sys.order() == DigitOrder::lsd) std::reverse(out.digits.begin(), out.digits.end());
  return out;
}

PatternNumeral parse_pattern(std::string_view text, System system) {
  std::string compact;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) compact += c;
  }
  std::string_view s = compact;
  if (s.starts_with("0*")) s.remove_prefix(2);
  auto open = s.find('(');
  auto close = s.find(")^");
  if (open == std::string_view::npos || close == std::string_view::npos || close < open) {
    throw Error("pattern must look like 'prefix (block)^r suffix': '" + std::string(text) + "'");
  }
  auto after = s.substr(close + 2);
  std::size_t name_len = 0;
  while (name_len < after.size() && std::isalpha(static_cast<unsigned char>(after[name_len]))) ++name_len;
  if (name_len == 0) throw Error("pattern exponent needs a parameter name: '" + std::string(text) + "'");
  PatternNumeral p{system, {}, {}, {}, std::string(after.substr(0, name_len))};
  p.prefix = parse_digit_word(s.substr(0, open), system);
  p.block = parse_digit_word(s.substr(open + 1, close - open - 1), system);
  p.suffix = parse_digit_word(after.substr(name_len), system);
  if (p.block.empty()) throw Error("pattern block must be non-empty");
  return p;
}

std::string format_pattern(const PatternNumeral& p) {
  std::string out = format_digit_word(p.prefix, p.system);
  out += "(" + format_digit_word(p.block, p.system) + ")^" + p.parameter;
  if (!p.suffix.empty()) out += " " + format_digit_word(p.suffix, p.system);
  return out;
}

}  // namespace syncsum::numeration
