#include "fusactk/limits.hpp"

#include <cstdlib>
#include <string>

namespace fusactk {

namespace {

Limits from_env() {
  Limits l;
  if (const char* v = std::getenv("FUSACTK_MAX_ORDER")) {
    try {
      unsigned long long n = std::stoull(v);
      if (n > 0) l.max_group_order = n;
    } catch (const std::exception&) {
      // unparsable value: keep the default
    }
  }
  return l;
}

Limits& storage() {
  static Limits l = from_env();
  return l;
}

}  // namespace

const Limits& limits() { return storage(); }
void set_limits(const Limits& l) { storage() = l; }

}  // namespace fusactk
