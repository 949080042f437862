#include "fusactk/fixtures.hpp"

#include "fusactk/error.hpp"

namespace fusactk {

const std::vector<FixtureSpec>& builtin_fixtures() {
  static const std::vector<FixtureSpec> list = {
      {"FIX-T", "C2 acting naturally on {0,1}", 2, {"(0 1)"}, 2, {}, "natural", 0, {}},
      {"FIX-B", "S3 acting naturally on {0,1,2}, S = <(0 1)>", 3, {"(0 1)", "(0 1 2)"}, 2, {"(0 1)"}, "natural", 0, {}},
      {"FIX-A", "S4 acting naturally on {0,1,2,3}, S = D8", 4, {"(0 1)", "(0 1 2 3)"}, 2, {"(0 1 2 3)", "(0 2)"},
       "natural", 0, {}},
      {"FIX-C", "S4 acting on its three pair partitions through S4 -> S3, S = D8", 4, {"(0 1)", "(0 1 2 3)"}, 2,
       {"(0 1 2 3)", "(0 2)"}, "images", 3, {"(1 2)", "(0 2)"}},
      {"FIX-P", "S4 acting on a single point, S = D8", 4, {"(0 1)", "(0 1 2 3)"}, 2, {"(0 1 2 3)", "(0 2)"}, "point", 1,
       {}},
  };
  return list;
}

const FixtureSpec& fixture_spec(const std::string& name) {
  for (const auto& f : builtin_fixtures())
    if (f.name == name) return f;
  throw InputError("unknown fixture " + name);
}

Ambient build_ambient(const FixtureSpec& spec) {
  std::vector<Perm> gens;
  for (const auto& g : spec.generators) gens.push_back(Perm::parse(g, spec.degree));
  Ambient a;
  a.g = generate_group(spec.degree, gens);
  a.p = spec.prime;
  if (spec.sylow_generators.empty()) {
    a.s = sylow_subgroup(a.g, spec.prime);
  } else {
    std::vector<Perm> sg;
    for (const auto& g : spec.sylow_generators) sg.push_back(Perm::parse(g, spec.degree));
    a.s = subgroup_generated(a.g, sg);
  }
  if (spec.action == "natural") {
    a.action = GroupAction::natural(a.g);
  } else if (spec.action == "point") {
    a.action = GroupAction::trivial(a.g, 1);
  } else {
    std::vector<Perm> ims;
    for (const auto& im : spec.action_images) ims.push_back(Perm::parse(im, spec.action_size));
    a.action = GroupAction::from_generator_images(a.g, spec.action_size, gens, ims);
  }
  return a;
}

Ambient fixture(const std::string& name) { return build_ambient(fixture_spec(name)); }

}  // namespace fusactk
