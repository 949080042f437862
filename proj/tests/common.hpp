#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include <doctest.h>

#include "fusactk/action_system.hpp"
#include "fusactk/fixtures.hpp"
#include "fusactk/perm_group.hpp"
#include "fusactk/pgroup.hpp"

namespace testing {

using namespace fusactk;

inline Perm perm(const std::string& cycles, std::size_t degree) { return Perm::parse(cycles, degree); }

inline PermGroup group(std::size_t degree, const std::vector<std::string>& gens) {
  std::vector<Perm> ps;
  for (const auto& g : gens) ps.push_back(perm(g, degree));
  return generate_group(degree, ps);
}

inline std::shared_ptr<const PGroup> pgroup(std::size_t degree, const std::vector<std::string>& gens, unsigned p = 2) {
  return std::make_shared<const PGroup>(group(degree, gens), p);
}

// Ambient data and its fusion action system, built once per fixture name.
struct Built {
  Ambient ambient;
  FusionActionSystem x;
};
inline const Built& built(const std::string& name) {
  static std::map<std::string, Built> cache;
  auto it = cache.find(name);
  if (it == cache.end()) {
    Built b;
    b.ambient = fixture(name);
    b.x = ambient_fusion_action(b.ambient);
    it = cache.emplace(name, std::move(b)).first;
  }
  return it->second;
}

inline SubId sub_of(const PGroup& s, const std::vector<std::string>& gens) {
  std::vector<Elem> es;
  for (const auto& g : gens) es.push_back(*s.index_of(perm(g, s.degree())));
  return s.generated(es);
}

inline Elem elem(const PGroup& s, const std::string& g) { return *s.index_of(perm(g, s.degree())); }

}  // namespace testing
