#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fusactk/action_system.hpp"

namespace fusactk {

enum class Criterion { full, automized_receiving, sylow_plus_receiving };

std::string criterion_name(Criterion c);

struct SatViolation {
  SubId subgroup = 0;
  std::string axiom;
  std::string witness;
};

struct SaturationReport {
  bool verdict = true;
  Criterion criterion = Criterion::full;
  std::vector<SatViolation> violations;
};

// Axioms 1-5 of fusion action system saturation.
SaturationReport check_saturation_full(const FusionActionSystem& x);
// Every conjugacy class has a fully automized, receiving member.
SaturationReport check_saturation_rs(const FusionActionSystem& x);
// S is fully automized and every fully normalized subgroup is receiving.
SaturationReport check_saturation_stancu(const FusionActionSystem& x);

// Restrictions of automorphisms: starting from the source, each step applies
// the automorphism of steps[i].subgroup to the current image (which lies
// inside that subgroup); the result is finally included in target.
struct AlperinStep {
  SubId subgroup = 0;
  ActionMorphism automorphism;
};

struct AlperinWord {
  SubId source = 0;
  SubId target = 0;
  std::vector<AlperinStep> steps;
  ActionMorphism composite;
  // Orders of the sources visited by the recursion, in visiting order.
  std::vector<std::size_t> recursion_orders;
  // Source orders strictly increase along every path of the recursion.
  bool orders_increase = true;
};

ActionMorphism recompose(const FusionActionSystem& x, const AlperinWord& w);
// Throws PreconditionError if x is not saturated or m is not in x.
AlperinWord alperin_factorize(const FusionActionSystem& x, const ActionMorphism& m);
// Same, skipping the saturation pre-check (for bulk use on a checked system).
AlperinWord alperin_factorize_unchecked(const FusionActionSystem& x, const ActionMorphism& m);

struct RealizationReport {
  PermGroup g;           // X(1) as permutations of X
  bool sylow = false;    // l_S Sylow in G
  bool fusion_equal = false;
  bool system_equal = false;
  std::vector<std::string> mismatches;
};

RealizationReport realize_faithful(const FusionActionSystem& x);

// Rebuilds a system over a different copy of S: map[e] is the index of the
// image of e in the new base.
FusionActionSystem transport_system(const FusionActionSystem& x, std::shared_ptr<const PGroup> base,
                                    const std::vector<Elem>& map, SAction action);

struct Mutant {
  std::string kind;
  std::string description;
  FusionActionSystem system;
};

// Subsystems generated after deleting automorphism orbits or extensions from
// the generating automorphism groups of x, plus random sub-generations.
std::vector<Mutant> mutate_system(const FusionActionSystem& x, std::size_t count, std::uint64_t seed);

}  // namespace fusactk
