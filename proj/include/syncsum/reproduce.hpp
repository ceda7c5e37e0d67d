#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace syncsum::reproduce {

struct Options {
  std::uint64_t seed = 0;
  std::size_t max_states = 64;
  std::size_t test_len = 8;
};

struct Row {
  std::string group;
  std::string id;
  std::string claim;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

/// eval, linrep, sum-index, sync, pd, mw, pf, le, bs, sc, rs, ftm,
/// fib-identities, growth. "all" runs every group in this order.
const std::vector<std::string>& group_names();

/// Throws Error for an unknown group, listing the known ones.
std::vector<Row> run(std::string_view group, const Options& options = {});

bool all_passed(const std::vector<Row>& rows);
std::string format_table(const std::vector<Row>& rows);
std::string to_json(const std::vector<Row>& rows);

}  // namespace syncsum::reproduce
