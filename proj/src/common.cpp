#include "mink/common.hpp"

#include <cstdio>

namespace mink {

std::string format_double(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, x);
  return buf;
}

}  // namespace mink
