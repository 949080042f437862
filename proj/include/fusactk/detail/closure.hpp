#pragma once

#include <set>
#include <vector>

#include "fusactk/pgroup.hpp"

namespace fusactk::detail {

// Closes a family of morphisms (stored corestricted to their images) under
// inverses, restriction to subgroups and composition. Ops supplies
// source/image/compose/restrict/inverse for the morphism type M.
template <class M, class Ops>
std::vector<std::vector<M>> close_category(const PGroup& s, const std::vector<M>& seed, const Ops& ops) {
  const std::size_t n = s.subgroup_count();
  std::vector<std::set<M>> by_source(n);
  std::vector<std::vector<M>> by_image(n);
  std::vector<M> work;
  auto add = [&](M m) {
    SubId src = ops.source(m);
    if (by_source[src].insert(m).second) {
      by_image[ops.image(m)].push_back(m);
      work.push_back(std::move(m));
    }
  };
  for (const auto& m : seed) add(m);
  while (!work.empty()) {
    M m = std::move(work.back());
    work.pop_back();
    const SubId p = ops.source(m);
    const SubId q = ops.image(m);
    add(ops.inverse(m));
    for (SubId r : s.sub(p).maximal) add(ops.restrict(m, r));
    std::vector<M> after(by_source[q].begin(), by_source[q].end());
    for (const auto& b : after) add(ops.compose(b, m));
    std::vector<M> before = by_image[p];
    for (const auto& a : before) add(ops.compose(m, a));
  }
  std::vector<std::vector<M>> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i].assign(by_source[i].begin(), by_source[i].end());
  return out;
}

}  // namespace fusactk::detail
