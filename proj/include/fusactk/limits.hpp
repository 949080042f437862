#pragma once

#include <cstddef>

namespace fusactk {

struct Limits {
  std::size_t max_group_order = 20000;
  std::size_t max_pgroup_order = 256;
  std::size_t max_chains = 2000000;
};

// Process-wide caps. The first call reads FUSACTK_MAX_ORDER from the
// environment; set_limits overrides everything.
const Limits& limits();
void set_limits(const Limits& l);

}  // namespace fusactk
