#pragma once

#include <compare>
#include <memory>
#include <string>
#include <vector>

#include "fusactk/perm_group.hpp"
#include "fusactk/pgroup.hpp"

namespace fusactk {

// An injective homomorphism between subgroups of S. images is parallel to the
// canonical member list of the domain.
struct InjectiveHom {
  SubId domain = 0;
  SubId codomain = 0;
  std::vector<Elem> images;

  friend bool operator==(const InjectiveHom&, const InjectiveHom&) = default;
  friend auto operator<=>(const InjectiveHom&, const InjectiveHom&) = default;
};

InjectiveHom hom_identity(const PGroup& s, SubId p);
InjectiveHom hom_inclusion(const PGroup& s, SubId p, SubId q);
// c_g restricted to P, corestricted to gPg^-1.
InjectiveHom hom_conjugation(const PGroup& s, Elem g, SubId p);
Elem hom_apply(const PGroup& s, const InjectiveHom& h, Elem x);
SubId hom_image(const PGroup& s, const InjectiveHom& h);
// b ∘ a; needs image(a) <= domain(b).
InjectiveHom hom_compose(const PGroup& s, const InjectiveHom& b, const InjectiveHom& a);
InjectiveHom hom_restrict(const PGroup& s, const InjectiveHom& h, SubId r);
InjectiveHom hom_corestrict(const PGroup& s, const InjectiveHom& h, SubId q);
// Inverse of h viewed as an isomorphism onto its image.
InjectiveHom hom_inverse(const PGroup& s, const InjectiveHom& h);
bool hom_is_iso(const PGroup& s, const InjectiveHom& h);
// Checks the homomorphism property on all pairs and injectivity.
bool hom_is_valid(const PGroup& s, const InjectiveHom& h);
std::string hom_str(const PGroup& s, const InjectiveHom& h);

struct Violation {
  SubId subgroup = 0;
  std::string axiom;
  std::string detail;
};

struct FusionSaturationReport {
  bool saturated = true;
  std::vector<Violation> violations;
};

// A fusion system on S. Morphisms are stored corestricted to their images;
// hom(P,Q) recovers the full hom-set by inclusion.
class FusionSystem {
 public:
  FusionSystem() = default;
  // Smallest fusion system containing F_S and the given morphisms.
  static FusionSystem generate(std::shared_ptr<const PGroup> s, const std::vector<InjectiveHom>& gens);
  // Trusted constructor: out[P] must already be closed and corestricted.
  static FusionSystem from_closed(std::shared_ptr<const PGroup> s, std::vector<std::vector<InjectiveHom>> out);

  const PGroup& base() const { return *base_; }
  const std::shared_ptr<const PGroup>& base_ptr() const { return base_; }
  unsigned prime() const { return base_->prime(); }
  const std::vector<InjectiveHom>& out(SubId p) const { return out_[p]; }
  std::vector<InjectiveHom> hom(SubId p, SubId q) const;
  std::vector<InjectiveHom> isos(SubId p, SubId q) const;
  std::vector<InjectiveHom> aut(SubId p) const { return isos(p, p); }
  bool contains(const InjectiveHom& h) const;
  // Sorted ids of F-conjugates of P.
  std::vector<SubId> conjugates(SubId p) const;
  std::size_t stored_count() const;

  friend bool operator==(const FusionSystem& a, const FusionSystem& b) { return a.out_ == b.out_; }

 private:
  std::shared_ptr<const PGroup> base_;
  std::vector<std::vector<InjectiveHom>> out_;
};

FusionSystem minimal_fusion_system(std::shared_ptr<const PGroup> s);

// F_S(G). S must be a Sylow p-subgroup of G.
FusionSystem ambient_fusion_system(const PermGroup& g, const SubgroupRef& s, unsigned p);

// Saturation in the sense of fully normalized => fully centralized with
// Sylow automizer, plus extension along N_phi into fully centralized targets.
FusionSaturationReport is_saturated_fusion(const FusionSystem& f);

// gamma ∘ eta ∘ gamma^-1, with domain and codomain translated along gamma.
InjectiveHom translate(const PGroup& s, const InjectiveHom& gamma, const InjectiveHom& eta);

struct FusionAutGroups {
  std::vector<std::vector<Elem>> aut;  // automorphisms of S as image tables
  std::vector<std::vector<Elem>> inn;  // F(S)
  std::size_t out_order = 0;
  std::vector<std::vector<Elem>> coset_reps;  // least element of each coset alpha*Inn
  bool inn_normal = false;
};

FusionAutGroups fusion_aut_groups(const FusionSystem& f);

// Index of the coset alpha*Inn containing alpha within coset_reps.
std::size_t out_class(const PGroup& s, const FusionAutGroups& g, const std::vector<Elem>& alpha);

}  // namespace fusactk
