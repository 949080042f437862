#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "fusactk/action_system.hpp"
#include "fusactk/fusion.hpp"
#include "fusactk/saturation.hpp"
#include "fusactk/subsystems.hpp"

namespace fusactk {

using Token = std::uint32_t;
inline constexpr Token kNoToken = static_cast<Token>(-1);

struct TokenInfo {
  SubId src = 0;
  SubId dst = 0;
  ActionMorphism pi;             // codomain is dst
  std::optional<Perm> witness;   // representative element of G, ambient only
};

// A finite category with opaque morphism tokens, a dense composition table
// per triple of objects, and the structure maps delta and pi.
class AugmentedCategory {
 public:
  using ComposeFn = std::function<Token(Token u, Token t)>;             // u ∘ t
  using DeltaFn = std::function<Token(SubId p, SubId q, Elem s)>;

  AugmentedCategory() = default;
  // Tokens must be numbered so that each hom-set is listed in token order.
  // compose and delta may return kNoToken; verifiers report the gap.
  static AugmentedCategory assemble(std::shared_ptr<const PGroup> base, std::size_t set_size,
                                    std::vector<SubId> objects, std::vector<TokenInfo> tokens,
                                    const ComposeFn& compose, const DeltaFn& delta);

  const PGroup& base() const { return *base_; }
  const std::shared_ptr<const PGroup>& base_ptr() const { return base_; }
  std::size_t set_size() const { return set_size_; }
  const std::vector<SubId>& objects() const { return objects_; }
  bool has_object(SubId p) const { return p < obj_index_.size() && obj_index_[p] >= 0; }
  std::size_t token_count() const { return tokens_.size(); }
  const TokenInfo& info(Token t) const { return tokens_[t]; }
  const ActionMorphism& pi(Token t) const { return tokens_[t].pi; }
  const std::vector<Token>& hom(SubId p, SubId q) const;
  std::size_t position(Token t) const { return pos_[t]; }

  // u ∘ t, or kNoToken when the table has a gap. Throws InputError when
  // the tokens are not composable.
  Token compose(Token u, Token t) const;
  // delta_{P,Q}(s) for s in N_S(P,Q); kNoToken when s is outside N_S(P,Q).
  Token delta(SubId p, SubId q, Elem s) const;
  // The elements s of N_S(P,Q) with a delta token, ascending.
  const std::vector<Elem>& delta_domain(SubId p, SubId q) const;
  Token identity(SubId p) const { return delta(p, p, 0); }
  Token inclusion(SubId p, SubId q) const { return delta(p, q, 0); }
  bool is_iso(Token t) const;
  // The inverse of an iso token, found by scan.
  Token inverse(Token t) const;

  // Ambient lookup: the token represented by g in hom(P,Q).
  std::optional<Token> by_element(SubId p, SubId q, const Perm& g) const;
  bool has_elements() const { return !element_index_.empty(); }

  // Mutations for the verification harness.
  AugmentedCategory with_compose_entry(Token u, Token t, Token result) const;
  AugmentedCategory without_token(Token t) const;

  // Internal: per-hom-set element lookup installed by ambient builders.
  void set_element_index(std::vector<std::unordered_map<Perm, Token, PermHash>> index) {
    element_index_ = std::move(index);
  }

 private:
  std::size_t pair_index(SubId p, SubId q) const;
  Token* entry(Token u, Token t);
  std::shared_ptr<const PGroup> base_;
  std::size_t set_size_ = 1;
  std::vector<SubId> objects_;
  std::vector<int> obj_index_;
  std::vector<TokenInfo> tokens_;
  std::vector<std::size_t> pos_;
  std::vector<std::vector<Token>> homs_;                // per (P,Q)
  // Composition blocks per nonempty (P,Q,R): entry pos(u)*|T(P,Q)| + pos(t).
  std::vector<Token> table_;
  std::unordered_map<std::uint64_t, std::size_t> block_offset_;
  std::vector<std::vector<Elem>> delta_elems_;          // per (P,Q)
  std::vector<std::vector<Token>> delta_tokens_;        // parallel to delta_elems_
  std::vector<std::unordered_map<Perm, Token, PermHash>> element_index_;
};

// Transporter category of G on the given objects (all subgroups when empty).
// Throws InputError when the objects are not closed under F-conjugacy and overgroups.
AugmentedCategory ambient_transporter(const Ambient& a, const FusionActionSystem& x,
                                      std::vector<SubId> objects = {});
// L_G^{cX}: tokens are cosets of O^p(Z_G(P;X)) in N_G(P,Q). Objects default to
// the X-centric subgroups; throws InputError on a non-X-centric request.
AugmentedCategory ambient_linking_action(const Ambient& a, const FusionActionSystem& x,
                                         std::vector<SubId> objects = {});
// O^p(Z_G(P;X)) as a subgroup of G.
SubgroupRef ambient_linking_kernel(const Ambient& a, const PGroup& s, SubId p);

struct CategoryViolation {
  std::string axiom;
  SubId src = 0;
  SubId dst = 0;
  std::string detail;
};

struct AxiomReport {
  std::map<std::string, std::size_t> checks;    // per axiom
  std::map<std::string, std::size_t> failures;  // per axiom
  std::vector<CategoryViolation> violations;    // first few per axiom
  bool ok() const { return failures.empty(); }
  bool failed(const std::string& axiom) const { return failures.count(axiom) > 0; }
  void fail(const std::string& axiom, SubId src, SubId dst, std::string detail);
  void add_checks(const std::string& axiom, std::size_t n) { checks[axiom] += n; }
  void merge(const AxiomReport& o);
};

AxiomReport verify_transporter_axioms(const AugmentedCategory& t, const FusionSystem& f);
AxiomReport verify_linking_axioms(const AugmentedCategory& l, const FusionActionSystem& x);
// Associativity on every composable triple; stops after max_triples.
AxiomReport verify_associativity(const AugmentedCategory& t, std::size_t max_triples = 5000000);

// The unique h with pi(h) = declared and g ∘ h = composite.
Token lift_right(const AugmentedCategory& l, Token g, Token composite, const ActionMorphism& declared);
// The unique h in T(P*,Q*) with incl ∘ h = g ∘ incl.
Token restrict_token(const AugmentedCategory& l, Token g, SubId p_star, SubId q_star);
// The unique g~ in T(P~,Q~) with g~ ∘ incl = incl ∘ g, for an iso g.
Token extend_token(const AugmentedCategory& l, Token g, SubId p_tilde, SubId q_tilde);
struct Factorization {
  Token iso = kNoToken;
  Token inclusion = kNoToken;
};
Factorization factor_token(const AugmentedCategory& l, Token g);

// Exhaustive checks of the structural consequences of the linking axioms.
struct StructureReport {
  AxiomReport report;
  std::size_t right_lifts = 0;
  std::size_t restrictions = 0;
  std::size_t factorizations = 0;
  std::size_t extensions = 0;
  std::size_t left_pseudo_lifts = 0;
  // Lifts g for which more than one z in phi(Z(P;X)) gives the same pair.
  std::size_t ambiguous_translates = 0;
  std::size_t cancellations = 0;
  std::size_t sylow_objects = 0;
  std::size_t target_orbits = 0;
  bool ok() const { return report.ok(); }
};
StructureReport verify_linking_structure(const AugmentedCategory& l, const FusionActionSystem& x);

// Q\X(P,Q) under postcomposition with (c_q, l_q).
struct OrbitCategory {
  std::vector<SubId> objects;
  // orbits[(P,Q)] = list of orbits, each a sorted list of morphisms
  std::map<std::pair<SubId, SubId>, std::vector<std::vector<ActionMorphism>>> orbits;
  std::map<std::pair<SubId, SubId>, std::map<ActionMorphism, std::size_t>> orbit_index;
  bool composition_well_defined = false;
  const std::vector<std::vector<ActionMorphism>>& hom(SubId p, SubId q) const;
  // Index of the orbit of m within hom(P,Q).
  std::size_t orbit_of(SubId p, SubId q, const ActionMorphism& m) const;
};
// Objects: X-centric subgroups when centric_only, otherwise all subgroups.
OrbitCategory orbit_category(const FusionActionSystem& x, bool centric_only);

// A permutation of X per token.
using ThetaMap = std::vector<Perm>;
// theta(t) = sigma component of pi(t).
ThetaMap induced_theta(const AugmentedCategory& t);
// Throws InputError unless theta is functorial and trivial on inclusions.
void validate_theta(const AugmentedCategory& t, const ThetaMap& theta);

struct ThetaSylowRow {
  SubId subgroup = 0;
  std::size_t e = 0, k = 0, ek = 0, t = 0;  // |E(P)|, |K(P)|, |E∩K|, |T(P)|
  bool normalized_ok = false;
  bool centralized_ok = false;
  bool x_normalized_ok = false;
  bool x_centralized_ok = false;
  bool ok() const { return normalized_ok && centralized_ok && x_normalized_ok && x_centralized_ok; }
};
struct ThetaResult {
  FusionActionSystem system;
  SaturationReport ob_saturation;  // violations restricted to Ob(T)
  std::vector<ThetaSylowRow> sylow;
  bool ok() const;
};
ThetaResult fusion_action_from_theta(const AugmentedCategory& t, const ThetaMap& theta);

struct LinkingFromTheta {
  FusionActionSystem system;          // X^theta
  AugmentedCategory category;
  AxiomReport axioms;                 // linking axioms over X^theta
  std::vector<std::size_t> ek_prime;  // |EK'(P)| per object of the result
  bool complements_ok = false;
  bool composition_well_defined = false;
  std::vector<std::string> failures;
};
// L^theta = T(P,Q)/EK'(P) on the X-centric objects of X^theta.
LinkingFromTheta linking_from_theta(const AugmentedCategory& t, const ThetaMap& theta);

// Hom-set bijections a -> b through ambient witnesses, commuting with delta and pi.
struct CategoryComparison {
  bool same_objects = false;
  bool bijective = false;
  bool delta_commutes = false;
  bool pi_commutes = false;
  bool composition_commutes = false;
  std::vector<std::string> failures;
  bool ok() const { return same_objects && bijective && delta_commutes && pi_commutes && composition_commutes; }
};
CategoryComparison compare_via_witnesses(const AugmentedCategory& a, const AugmentedCategory& b);

struct StabilizerLinkingResult {
  std::size_t point = 0;
  SubId stabilizer = 0;             // S_x in the parent
  LocalBase local;
  AugmentedCategory category;       // over the local copy of S_x
  FusionSystem fusion;              // F_x on the local copy
  bool fully_stabilized = false;    // delta(S_x) Sylow in L_x(C)
  AxiomReport transporter;          // transporter axioms over F_x
  bool fusion_saturated = false;
  bool theta_image_in_core = false;   // theta(Mor L) = theta(L(C))
  bool transporter_iff_sylow = false;
};
StabilizerLinkingResult stabilizer_linking(const AugmentedCategory& l, const FusionActionSystem& x, std::size_t point);

nlohmann::json category_to_json(const AugmentedCategory& t);
// Rebuilds a category from category_to_json output.
AugmentedCategory category_from_json(const nlohmann::json& j);

}  // namespace fusactk
