#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fusactk/action_system.hpp"
#include "fusactk/fusion.hpp"
#include "fusactk/saturation.hpp"

namespace fusactk {

// A subgroup T of S rebuilt as its own p-group, with element maps both ways.
struct LocalBase {
  std::shared_ptr<const PGroup> group;
  SubId in_parent = 0;
  std::vector<Elem> to_parent;    // local element -> element of S
  std::vector<Elem> from_parent;  // element of S -> local element, or npos
  static constexpr Elem npos = static_cast<Elem>(-1);

  SubId local_sub(const PGroup& parent, SubId q) const;
  InjectiveHom to_local(const PGroup& parent, const InjectiveHom& h) const;
  InjectiveHom to_parent_hom(const PGroup& parent, const InjectiveHom& h) const;
  ActionMorphism to_local(const PGroup& parent, const ActionMorphism& m) const;
  SAction restrict(const SAction& x) const;
};
LocalBase local_base(const PGroup& s, SubId t);

// Rebuilds x on T from per-subgroup morphism lists given in S-indexing.
FusionActionSystem localize_system(const FusionActionSystem& x, const LocalBase& lb,
                                   const std::vector<std::vector<ActionMorphism>>& out_in_parent);

struct ActionMorphismHash {
  std::size_t operator()(const ActionMorphism& m) const;
};

// All sigma in Sym(X) intertwining phi.
std::vector<Perm> intertwiners(const PGroup& s, const SAction& x, const InjectiveHom& phi);
// Aut(P;X): every intertwined pair of an automorphism of P, canonically sorted.
std::vector<ActionMorphism> aut_pairs(const FusionActionSystem& x, SubId p);
// Aut_S(P;X) as pairs (c_n, l_n), n in N_S(P).
std::vector<ActionMorphism> aut_s_pairs(const FusionActionSystem& x, SubId p);
// Every subgroup of Aut(P;X), each sorted. Throws CapExceeded when Aut(P;X)
// has more than max_order elements.
std::vector<std::vector<ActionMorphism>> aut_pair_subgroups(const FusionActionSystem& x, SubId p,
                                                            std::size_t max_order = 48);

struct FrattiniWitness {
  ActionMorphism chi;  // morphism between subgroups of C
  InjectiveHom psi;    // automorphism of C in the underlying system
  InjectiveHom phi;    // morphism of the core system with chi = phi ∘ psi|P
};

struct AschbacherWitness {
  InjectiveHom phi;           // automorphism of C in the core system
  ActionMorphism extension;   // defined on C·Z_S(C)
};

struct CoreResult {
  SubId core = 0;
  SubgroupRef core_group;
  LocalBase local;
  FusionSystem core_fusion;  // on the local copy of C
  bool strongly_closed = false;
  bool conjugation_invariant = false;
  bool frattini = false;
  bool saturated = false;
  bool aschbacher = false;
  bool core_exact = false;
  std::size_t invariance_checks = 0;
  std::vector<FrattiniWitness> frattini_witnesses;
  std::vector<AschbacherWitness> aschbacher_witnesses;
  std::vector<std::string> failures;
  bool normal() const {
    return strongly_closed && conjugation_invariant && frattini && saturated && aschbacher && core_exact;
  }
};
// Throws PreconditionError unless x is saturated.
CoreResult core_subsystem(const FusionActionSystem& x);

struct KappaResult {
  std::vector<Perm> domain;          // X(1), canonically sorted
  std::vector<ActionMorphism> lift;  // chosen lift in X(C) per domain element
  std::vector<std::size_t> image;    // Out class index per domain element
  FusionAutGroups out;               // Aut, Inn and Out of the core system
  bool well_defined = false;
  bool homomorphism = false;
  bool all_pairs = false;            // false: checked against generators only
  std::size_t image_order = 0;
  std::size_t kernel_order = 0;
  bool injective() const { return kernel_order == 1; }
};
// Throws PreconditionError if x is not saturated or a lift is missing.
KappaResult kappa_map(const FusionActionSystem& x);

struct KNormalizerSpec {
  SubId base_subgroup = 0;
  std::vector<ActionMorphism> k;
  SubId n_s_k = 0;
  LocalBase local;
  FusionActionSystem subsystem;  // on the local copy of N_S^K(P)
};
// N_S^K(P).
SubId k_normalizer_group(const FusionActionSystem& x, SubId p, const std::vector<ActionMorphism>& k);
// Throws InputError if k is not a subgroup of Aut(P;X).
KNormalizerSpec k_normalizer_subsystem(const FusionActionSystem& x, SubId p, std::vector<ActionMorphism> k);

struct KNormalizationReport {
  bool by_order = false;
  bool x_centralized = false;
  bool sylow = false;  // Aut_S^K(P;X) Sylow in Aut_X^K(P;X)
  std::size_t order = 0;
  std::size_t max_order = 0;
  std::size_t aut_s_k = 0;
  std::size_t aut_x_k = 0;
  bool by_conditions() const { return x_centralized && sylow; }
  bool agree() const { return by_order == by_conditions(); }
};
KNormalizationReport is_fully_k_normalized(const FusionActionSystem& x, SubId p, const std::vector<ActionMorphism>& k);

// For every iso (phi,sigma) out of P whose target is fully conjugate-K-normalized,
// looks for a stored morphism on P·N_S^K(P) carrying P onto the target.
struct KExtensionReport {
  std::size_t checked = 0;
  std::vector<std::string> missing;
  bool ok() const { return missing.empty(); }
};
KExtensionReport k_normalizer_extensions(const FusionActionSystem& x, SubId p, const std::vector<ActionMorphism>& k);

// Subgroup of S fixing x.
SubId point_stabilizer(const FusionActionSystem& x, std::size_t point);
// X(1) as sigmas of the automorphisms of the trivial subgroup.
std::vector<Perm> sigma_group(const FusionActionSystem& x);
bool is_transitive(const FusionActionSystem& x);

struct StabilizerResult {
  std::size_t point = 0;
  SubId stabilizer = 0;
  LocalBase local;
  FusionActionSystem subsystem;
  bool transitive = false;
  bool fully_by_order = false;
  bool fully_by_sylow = false;
  bool fully_stabilized() const { return fully_by_order; }
  // Filled when the point is fully stabilized in a transitive system.
  std::optional<SaturationReport> full, rs, stancu;
};
StabilizerResult stabilizer_subsystem(const FusionActionSystem& x, std::size_t point);

struct PreimageResult {
  SubId t = 0;
  LocalBase local;
  FusionActionSystem subsystem;
  bool sylow = false;  // l_T Sylow in H
  std::optional<SaturationReport> saturation;
};
// Throws InputError if h is not a subgroup of X(1).
PreimageResult preimage_subsystem(const FusionActionSystem& x, const std::vector<Perm>& h);

struct SubconjugacyWitness {
  std::size_t point = 0;
  SubId stabilizer = 0;
  ActionMorphism morphism;  // from S_y into S_x, sigma(y) = x
};
struct SubconjugacyReport {
  std::vector<SubconjugacyWitness> witnesses;
  std::vector<std::size_t> missing;
  bool ok() const { return missing.empty(); }
};
// Throws PreconditionError unless x is transitive and the point fully stabilized.
SubconjugacyReport stabilizer_subconjugacy_check(const FusionActionSystem& x, std::size_t point);

}  // namespace fusactk
