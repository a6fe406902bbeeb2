#include "wgband/common.hpp"

#include <cstdio>

namespace wgband {

std::string format_sig(double v, int significant_digits) {
  if (significant_digits < 1) significant_digits = 1;
  if (significant_digits > 17) significant_digits = 17;
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", significant_digits, v);
  return buf;
}

}  // namespace wgband
