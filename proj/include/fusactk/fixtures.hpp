#pragma once

#include <string>
#include <vector>

#include "fusactk/action_system.hpp"

namespace fusactk {

// Description of an ambient triple in cycle notation.
struct FixtureSpec {
  std::string name;
  std::string description;
  std::size_t degree = 0;
  std::vector<std::string> generators;
  unsigned prime = 2;
  std::vector<std::string> sylow_generators;  // empty: use sylow_subgroup
  // "natural", "point", or per-generator images on action_size points
  std::string action = "natural";
  std::size_t action_size = 0;
  std::vector<std::string> action_images;
};

const std::vector<FixtureSpec>& builtin_fixtures();
const FixtureSpec& fixture_spec(const std::string& name);
Ambient build_ambient(const FixtureSpec& spec);
Ambient fixture(const std::string& name);

}  // namespace fusactk
