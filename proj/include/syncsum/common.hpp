#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace syncsum {

using BigInt = mpz_class;
using BigRat = mpq_class;

/// Raised for contract violations: bad input, unknown names, unsupported systems.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses "p", "-p" or "p/q" into a reduced rational.
BigRat parse_rational(const std::string& text);
std::string format_rational(const BigRat& q);

}  // namespace syncsum
