#pragma once

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fusactk/fusion.hpp"
#include "fusactk/perm_group.hpp"
#include "fusactk/pgroup.hpp"

namespace fusactk {

// An intertwined pair (phi, sigma): phi injective between subgroups of S and
// sigma a permutation of X with sigma l_p sigma^-1 = l_phi(p).
struct ActionMorphism {
  InjectiveHom phi;
  Perm sigma;

  SubId domain() const { return phi.domain; }
  SubId codomain() const { return phi.codomain; }
  friend bool operator==(const ActionMorphism&, const ActionMorphism&) = default;
  friend auto operator<=>(const ActionMorphism&, const ActionMorphism&) = default;
};

// The S-set X: one permutation of {0..m-1} per element of S.
struct SAction {
  std::size_t set_size = 1;
  std::vector<Perm> ell;  // indexed by Elem

  const Perm& operator()(Elem e) const { return ell[e]; }
};

bool is_intertwined(const PGroup& s, const SAction& x, const InjectiveHom& phi, const Perm& sigma);

class FusionActionSystem {
 public:
  FusionActionSystem() = default;
  // Smallest fusion action system containing the minimal system and gens.
  static FusionActionSystem generate(std::shared_ptr<const PGroup> s, SAction x,
                                     const std::vector<ActionMorphism>& gens);
  // Trusted: out[P] already closed and corestricted to images.
  static FusionActionSystem from_closed(std::shared_ptr<const PGroup> s, SAction x,
                                        std::vector<std::vector<ActionMorphism>> out);

  const PGroup& base() const { return *base_; }
  const std::shared_ptr<const PGroup>& base_ptr() const { return base_; }
  unsigned prime() const { return base_->prime(); }
  const SAction& action() const { return x_; }
  std::size_t set_size() const { return x_.set_size; }
  const Perm& ell(Elem e) const { return x_.ell[e]; }

  const std::vector<ActionMorphism>& out(SubId p) const { return out_[p]; }
  std::vector<ActionMorphism> hom(SubId p, SubId q) const;
  std::vector<ActionMorphism> isos(SubId p, SubId q) const;
  std::vector<ActionMorphism> aut(SubId p) const { return isos(p, p); }
  // Stored morphisms out of P with the given sigma.
  std::vector<const ActionMorphism*> with_sigma(SubId p, const Perm& sigma) const;
  bool contains(const ActionMorphism& m) const;
  std::vector<SubId> conjugates(SubId p) const;
  std::size_t stored_count() const;

  // C, N_S(P;X), Z_S(P;X), Z(P;X)
  SubId core() const { return core_; }
  SubId x_normalizer(SubId p) const { return base_->intersect(base_->sub(p).normalizer, core_); }
  SubId x_centralizer(SubId p) const { return base_->intersect(base_->sub(p).centralizer, core_); }
  SubId x_center(SubId p) const { return base_->intersect(base_->sub(p).center, core_); }

  friend bool operator==(const FusionActionSystem& a, const FusionActionSystem& b) {
    return a.out_ == b.out_ && a.x_.ell == b.x_.ell;
  }

 private:
  void index();
  std::shared_ptr<const PGroup> base_;
  SAction x_;
  std::vector<std::vector<ActionMorphism>> out_;
  std::vector<std::map<Perm, std::vector<std::size_t>>> by_sigma_;
  SubId core_ = 0;
};

ActionMorphism am_identity(const FusionActionSystem& x, SubId p);
ActionMorphism am_inclusion(const FusionActionSystem& x, SubId p, SubId q);
ActionMorphism am_conjugation(const FusionActionSystem& x, Elem s, SubId p);
// b ∘ a
ActionMorphism am_compose(const PGroup& s, const ActionMorphism& b, const ActionMorphism& a);
ActionMorphism am_restrict(const PGroup& s, const ActionMorphism& m, SubId r);
ActionMorphism am_inverse(const PGroup& s, const ActionMorphism& m);
// Corestricted to the image.
ActionMorphism am_normalize(const PGroup& s, const ActionMorphism& m);
std::string am_str(const PGroup& s, const ActionMorphism& m);

// Ambient data: G, a Sylow p-subgroup S and an action of G on X.
struct Ambient {
  PermGroup g;
  SubgroupRef s;
  unsigned p = 2;
  GroupAction action;
};

SAction restrict_action(const Ambient& a, const PGroup& s);
FusionActionSystem ambient_fusion_action(const Ambient& a);
FusionActionSystem minimal_fusion_action(std::shared_ptr<const PGroup> s, SAction x);
FusionSystem underlying_fusion_system(const FusionActionSystem& x);

using AutTable = std::vector<Elem>;

// The five automizer groups of P and their S-versions.
struct AutomizerDiamond {
  SubId subgroup = 0;
  std::vector<ActionMorphism> full;     // X(P)
  std::vector<AutTable> fusion;         // F(P)
  std::vector<Perm> sigma;              // Sigma(P)
  std::vector<AutTable> fusion0;        // {phi : (phi, id) in X(P)}
  std::vector<Perm> sigma0;             // {sigma : (id, sigma) in X(P)}
  std::vector<ActionMorphism> full_s;   // Aut_S(P;X)
  std::vector<AutTable> fusion_s;       // Aut_S(P)
  std::vector<Perm> sigma_s;            // Sigma^S(P)
  std::vector<AutTable> fusion0_s;      // F_S(P)_0
  std::vector<Perm> sigma0_s;           // Sigma^S(P)_0

  bool exact() const {
    return full.size() == sigma0.size() * fusion.size() && full.size() == fusion0.size() * sigma.size();
  }
};

AutomizerDiamond automizer_diamond(const FusionActionSystem& x, SubId p);

// N_(phi,sigma) for an isomorphism m : P -> Q (Q = image).
SubId extender(const FusionActionSystem& x, const ActionMorphism& m);
// A stored morphism out of r with the same sigma restricting to m on its
// domain, if any.
std::optional<ActionMorphism> find_extension(const FusionActionSystem& x, const ActionMorphism& m, SubId r);

struct FullyFlags {
  bool normalized = false;
  bool centralized = false;
  bool x_normalized = false;
  bool x_centralized = false;
  bool automized = false;
  bool receiving = false;
};

// Per-subgroup flags together with the conjugacy data they were derived from.
struct FullyTable {
  std::vector<FullyFlags> flags;
  std::vector<std::vector<SubId>> classes;  // class members of each P
};

FullyTable classify_all(const FusionActionSystem& x);
FullyFlags classify_fully(const FusionActionSystem& x, SubId p);
// Sorted list of class representatives: lexicographically least fully
// normalized member of each class.
std::vector<SubId> class_representatives(const FusionActionSystem& x, const FullyTable& t);
// Receiving, with the first offending iso when it fails.
bool is_receiving(const FusionActionSystem& x, SubId p, std::string* why = nullptr);

struct CentricFlags {
  std::optional<bool> p_centric_at_x;  // ambient only
  bool f_centric_at_x = false;
  std::optional<bool> p_centric;       // ambient only
  bool f_centric = false;
};

std::vector<CentricFlags> x_centric_classify(const FusionActionSystem& x, const Ambient* ambient = nullptr);
// Ids of the X-centric subgroups (F-centric at X), ascending.
std::vector<SubId> x_centric_subgroups(const FusionActionSystem& x);

bool is_F_stable(const SAction& x, const FusionSystem& f);
std::size_t fixed_points(const PGroup& s, const SAction& x, SubId p);

}  // namespace fusactk
