#pragma once

#include <charconv>
#include <string>

namespace mstlab {

// Shortest decimal string that round-trips the exact double. Used for every
// CSV/JSON number we emit so outputs are byte-stable across runs and worker
// counts.
inline std::string format_double(double x) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

}  // namespace mstlab
