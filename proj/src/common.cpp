#include "syncsum/common.hpp"

namespace syncsum {

BigRat parse_rational(const std::string& text) {
  BigRat q;
  if (text.empty() || q.set_str(text, 10) != 0) {
    throw Error("not a rational number: '" + text + "'");
  }
  if (q.get_den() == 0) throw Error("zero denominator: '" + text + "'");
  q.canonicalize();
  return q;
}

std::string format_rational(const BigRat& q) { return q.get_str(); }

}  // namespace syncsum
