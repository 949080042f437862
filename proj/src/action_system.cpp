#include "fusactk/action_system.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "fusactk/detail/closure.hpp"
#include "fusactk/error.hpp"

namespace fusactk {

bool is_intertwined(const PGroup& s, const SAction& x, const InjectiveHom& phi, const Perm& sigma) {
  if (sigma.degree() != x.set_size) return false;
  Perm si = sigma.inverse();
  for (Elem g : s.sub(phi.domain).gens)
    if (sigma * x(g) * si != x(hom_apply(s, phi, g))) return false;
  return true;
}

ActionMorphism am_identity(const FusionActionSystem& x, SubId p) {
  return {hom_identity(x.base(), p), Perm(x.set_size())};
}

ActionMorphism am_inclusion(const FusionActionSystem& x, SubId p, SubId q) {
  return {hom_inclusion(x.base(), p, q), Perm(x.set_size())};
}

ActionMorphism am_conjugation(const FusionActionSystem& x, Elem s, SubId p) {
  return {hom_conjugation(x.base(), s, p), x.ell(s)};
}

ActionMorphism am_compose(const PGroup& s, const ActionMorphism& b, const ActionMorphism& a) {
  return {hom_compose(s, b.phi, a.phi), b.sigma * a.sigma};
}

ActionMorphism am_restrict(const PGroup& s, const ActionMorphism& m, SubId r) {
  return {hom_restrict(s, m.phi, r), m.sigma};
}

ActionMorphism am_inverse(const PGroup& s, const ActionMorphism& m) {
  return {hom_inverse(s, m.phi), m.sigma.inverse()};
}

ActionMorphism am_normalize(const PGroup& s, const ActionMorphism& m) {
  ActionMorphism r = m;
  r.phi.codomain = hom_image(s, m.phi);
  return r;
}

std::string am_str(const PGroup& s, const ActionMorphism& m) {
  return "(" + hom_str(s, m.phi) + ", " + m.sigma.str() + ")";
}

namespace {

struct ActionOps {
  const PGroup& s;
  SubId source(const ActionMorphism& m) const { return m.phi.domain; }
  SubId image(const ActionMorphism& m) const { return m.phi.codomain; }
  ActionMorphism compose(const ActionMorphism& b, const ActionMorphism& a) const {
    return am_normalize(s, am_compose(s, b, a));
  }
  ActionMorphism restrict(const ActionMorphism& m, SubId r) const { return am_normalize(s, am_restrict(s, m, r)); }
  ActionMorphism inverse(const ActionMorphism& m) const { return am_inverse(s, m); }
};

}  // namespace

void FusionActionSystem::index() {
  by_sigma_.assign(out_.size(), {});
  for (SubId p = 0; p < out_.size(); ++p)
    for (std::size_t i = 0; i < out_[p].size(); ++i) by_sigma_[p][out_[p][i].sigma].push_back(i);
  std::vector<Elem> c;
  for (Elem e = 0; e < base_->order(); ++e)
    if (x_.ell[e].is_identity()) c.push_back(e);
  core_ = base_->find_members(c);
}

FusionActionSystem FusionActionSystem::generate(std::shared_ptr<const PGroup> s, SAction x,
                                                const std::vector<ActionMorphism>& gens) {
  if (x.set_size == 0) throw InputError("the acted-on set must be nonempty");
  if (x.ell.size() != s->order()) throw InputError("action must give one permutation per element of S");
  std::vector<ActionMorphism> seed;
  for (SubId p = 0; p < s->subgroup_count(); ++p)
    for (Elem g = 0; g < s->order(); ++g) seed.push_back({hom_conjugation(*s, g, p), x.ell[g]});
  for (const auto& m : gens) {
    if (!hom_is_valid(*s, m.phi)) throw InputError("generator is not an injective homomorphism");
    if (!is_intertwined(*s, x, m.phi, m.sigma)) throw InputError("generator pair is not intertwined");
    seed.push_back(am_normalize(*s, m));
  }
  FusionActionSystem f;
  f.out_ = detail::close_category(*s, seed, ActionOps{*s});
  f.base_ = std::move(s);
  f.x_ = std::move(x);
  f.index();
  return f;
}

FusionActionSystem FusionActionSystem::from_closed(std::shared_ptr<const PGroup> s, SAction x,
                                                   std::vector<std::vector<ActionMorphism>> out) {
  FusionActionSystem f;
  f.base_ = std::move(s);
  f.x_ = std::move(x);
  f.out_ = std::move(out);
  for (auto& v : f.out_) std::sort(v.begin(), v.end());
  f.index();
  return f;
}

std::vector<ActionMorphism> FusionActionSystem::hom(SubId p, SubId q) const {
  std::vector<ActionMorphism> r;
  for (const auto& m : out_[p])
    if (base_->contains(q, m.phi.codomain)) {
      r.push_back(m);
      r.back().phi.codomain = q;
    }
  return r;
}

std::vector<ActionMorphism> FusionActionSystem::isos(SubId p, SubId q) const {
  std::vector<ActionMorphism> r;
  for (const auto& m : out_[p])
    if (m.phi.codomain == q) r.push_back(m);
  return r;
}

std::vector<const ActionMorphism*> FusionActionSystem::with_sigma(SubId p, const Perm& sigma) const {
  std::vector<const ActionMorphism*> r;
  auto it = by_sigma_[p].find(sigma);
  if (it == by_sigma_[p].end()) return r;
  for (auto i : it->second) r.push_back(&out_[p][i]);
  return r;
}

bool FusionActionSystem::contains(const ActionMorphism& m) const {
  ActionMorphism c = am_normalize(*base_, m);
  if (!base_->contains(m.phi.codomain, c.phi.codomain)) return false;
  return std::binary_search(out_[m.phi.domain].begin(), out_[m.phi.domain].end(), c);
}

std::vector<SubId> FusionActionSystem::conjugates(SubId p) const {
  std::set<SubId> r;
  for (const auto& m : out_[p]) r.insert(m.phi.codomain);
  return {r.begin(), r.end()};
}

std::size_t FusionActionSystem::stored_count() const {
  std::size_t n = 0;
  for (const auto& v : out_) n += v.size();
  return n;
}

SAction restrict_action(const Ambient& a, const PGroup& s) {
  SAction x;
  x.set_size = a.action.set_size();
  for (Elem e = 0; e < s.order(); ++e) x.ell.push_back(a.action(s.perm(e)));
  return x;
}

FusionActionSystem ambient_fusion_action(const Ambient& a) {
  if (!is_prime(a.p)) throw InputError(std::to_string(a.p) + " is not prime");
  if (a.s.order() != p_part(a.g.order(), a.p) || p_part(a.s.order(), a.p) != a.s.order())
    throw PreconditionError("S is not a Sylow p-subgroup of G");
  if (!a.action.group().same_as(a.g)) throw InputError("action is not defined on G");
  if (a.action.set_size() == 0) throw InputError("the acted-on set must be nonempty");
  auto s = std::make_shared<const PGroup>(a.s.as_group(), a.p);
  SAction x = restrict_action(a, *s);
  std::vector<std::vector<ActionMorphism>> out(s->subgroup_count());
  for (SubId q = 0; q < s->subgroup_count(); ++q) {
    std::set<ActionMorphism> maps;
    const auto& gens = s->sub(q).gens;
    const auto& mem = s->members(q);
    for (std::size_t gi = 0; gi < a.g.order(); ++gi) {
      const Perm& g = a.g.element(gi);
      Perm ginv = g.inverse();
      bool inside = true;
      for (Elem e : gens)
        if (!s->index_of(g * s->perm(e) * ginv)) {
          inside = false;
          break;
        }
      if (!inside) continue;
      ActionMorphism m{{q, 0, {}}, a.action.of_index(gi)};
      for (Elem e : mem) m.phi.images.push_back(*s->index_of(g * s->perm(e) * ginv));
      m.phi.codomain = hom_image(*s, m.phi);
      maps.insert(std::move(m));
    }
    out[q].assign(maps.begin(), maps.end());
  }
  return FusionActionSystem::from_closed(std::move(s), std::move(x), std::move(out));
}

FusionActionSystem minimal_fusion_action(std::shared_ptr<const PGroup> s, SAction x) {
  return FusionActionSystem::generate(std::move(s), std::move(x), {});
}

FusionSystem underlying_fusion_system(const FusionActionSystem& x) {
  std::vector<std::vector<InjectiveHom>> out(x.base().subgroup_count());
  for (SubId p = 0; p < out.size(); ++p) {
    std::set<InjectiveHom> maps;
    for (const auto& m : x.out(p)) maps.insert(m.phi);
    out[p].assign(maps.begin(), maps.end());
  }
  return FusionSystem::from_closed(x.base_ptr(), std::move(out));
}

namespace {

template <class T>
std::vector<T> uniq(std::vector<T> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

AutomizerDiamond automizer_diamond(const FusionActionSystem& x, SubId p) {
  const PGroup& s = x.base();
  AutomizerDiamond d;
  d.subgroup = p;
  d.full = x.aut(p);
  const auto& idp = s.members(p);
  const Perm idx(x.set_size());
  for (const auto& m : d.full) {
    d.fusion.push_back(m.phi.images);
    d.sigma.push_back(m.sigma);
    if (m.sigma == idx) d.fusion0.push_back(m.phi.images);
    if (m.phi.images == idp) d.sigma0.push_back(m.sigma);
  }
  d.fusion = uniq(std::move(d.fusion));
  d.sigma = uniq(std::move(d.sigma));
  d.fusion0 = uniq(std::move(d.fusion0));
  d.sigma0 = uniq(std::move(d.sigma0));
  const SubId c = x.core();
  for (Elem n : s.members(s.sub(p).normalizer)) {
    auto cn = hom_conjugation(s, n, p);
    d.full_s.push_back({cn, x.ell(n)});
    d.fusion_s.push_back(cn.images);
    d.sigma_s.push_back(x.ell(n));
    if (s.contains_elem(c, n)) d.fusion0_s.push_back(cn.images);
    if (s.contains_elem(s.sub(p).centralizer, n)) d.sigma0_s.push_back(x.ell(n));
  }
  d.full_s = uniq(std::move(d.full_s));
  d.fusion_s = uniq(std::move(d.fusion_s));
  d.sigma_s = uniq(std::move(d.sigma_s));
  d.fusion0_s = uniq(std::move(d.fusion0_s));
  d.sigma0_s = uniq(std::move(d.sigma0_s));
  return d;
}

SubId extender(const FusionActionSystem& x, const ActionMorphism& m) {
  const PGroup& s = x.base();
  SubId q = hom_image(s, m.phi);
  if (q != m.phi.codomain) throw PreconditionError("extender needs an isomorphism onto its codomain");
  const SubId p = m.phi.domain;
  std::set<std::pair<std::vector<Elem>, Perm>> auts;
  for (Elem n : s.members(s.sub(q).normalizer)) auts.insert({hom_conjugation(s, n, q).images, x.ell(n)});
  auto inv = hom_inverse(s, m.phi);
  Perm si = m.sigma.inverse();
  std::vector<Elem> ext;
  for (Elem n : s.members(s.sub(p).normalizer)) {
    std::vector<Elem> t;
    for (Elem y : s.members(q)) t.push_back(hom_apply(s, m.phi, s.conj(n, hom_apply(s, inv, y))));
    if (auts.count({t, m.sigma * x.ell(n) * si})) ext.push_back(n);
  }
  return s.find_members(ext);
}

std::optional<ActionMorphism> find_extension(const FusionActionSystem& x, const ActionMorphism& m, SubId r) {
  const PGroup& s = x.base();
  if (!s.contains(r, m.phi.domain)) throw PreconditionError("extension target must contain the domain");
  for (const ActionMorphism* c : x.with_sigma(r, m.sigma)) {
    bool ok = true;
    for (Elem g : s.sub(m.phi.domain).gens)
      if (hom_apply(s, c->phi, g) != hom_apply(s, m.phi, g)) {
        ok = false;
        break;
      }
    if (ok) return *c;
  }
  return std::nullopt;
}

bool is_receiving(const FusionActionSystem& x, SubId p, std::string* why) {
  for (SubId q : x.conjugates(p))
    for (const auto& m : x.isos(q, p)) {
      SubId n = extender(x, m);
      if (!find_extension(x, m, n)) {
        if (why)
          *why = "no extension of " + am_str(x.base(), m) + " to its extender of order " +
                 std::to_string(x.base().sub_order(n));
        return false;
      }
    }
  return true;
}

FullyTable classify_all(const FusionActionSystem& x) {
  const PGroup& s = x.base();
  const std::size_t n = s.subgroup_count();
  std::vector<std::size_t> nn(n), zz(n), nx(n), zx(n);
  for (SubId p = 0; p < n; ++p) {
    nn[p] = s.sub_order(s.sub(p).normalizer);
    zz[p] = s.sub_order(s.sub(p).centralizer);
    nx[p] = s.sub_order(x.x_normalizer(p));
    zx[p] = s.sub_order(x.x_centralizer(p));
  }
  FullyTable t;
  t.flags.resize(n);
  t.classes.resize(n);
  for (SubId p = 0; p < n; ++p) {
    t.classes[p] = x.conjugates(p);
    auto& f = t.flags[p];
    f.normalized = f.centralized = f.x_normalized = f.x_centralized = true;
    for (SubId q : t.classes[p]) {
      if (nn[q] > nn[p]) f.normalized = false;
      if (zz[q] > zz[p]) f.centralized = false;
      if (nx[q] > nx[p]) f.x_normalized = false;
      if (zx[q] > zx[p]) f.x_centralized = false;
    }
    auto d = automizer_diamond(x, p);
    f.automized = d.full_s.size() == p_part(d.full.size(), s.prime());
    f.receiving = is_receiving(x, p);
  }
  return t;
}

FullyFlags classify_fully(const FusionActionSystem& x, SubId p) {
  const PGroup& s = x.base();
  FullyFlags f;
  f.normalized = f.centralized = f.x_normalized = f.x_centralized = true;
  for (SubId q : x.conjugates(p)) {
    if (s.sub_order(s.sub(q).normalizer) > s.sub_order(s.sub(p).normalizer)) f.normalized = false;
    if (s.sub_order(s.sub(q).centralizer) > s.sub_order(s.sub(p).centralizer)) f.centralized = false;
    if (s.sub_order(x.x_normalizer(q)) > s.sub_order(x.x_normalizer(p))) f.x_normalized = false;
    if (s.sub_order(x.x_centralizer(q)) > s.sub_order(x.x_centralizer(p))) f.x_centralized = false;
  }
  auto d = automizer_diamond(x, p);
  f.automized = d.full_s.size() == p_part(d.full.size(), s.prime());
  f.receiving = is_receiving(x, p);
  return f;
}

std::vector<SubId> class_representatives(const FusionActionSystem& x, const FullyTable& t) {
  std::set<SubId> reps;
  for (SubId p = 0; p < t.classes.size(); ++p) {
    for (SubId q : t.classes[p])
      if (t.flags[q].normalized) {
        reps.insert(q);
        break;
      }
  }
  (void)x;
  return {reps.begin(), reps.end()};
}

std::vector<CentricFlags> x_centric_classify(const FusionActionSystem& x, const Ambient* ambient) {
  const PGroup& s = x.base();
  const std::size_t n = s.subgroup_count();
  std::vector<CentricFlags> out(n);
  for (SubId p = 0; p < n; ++p) {
    bool fx = true, f = true;
    for (SubId q : x.conjugates(p)) {
      if (x.x_center(q) != x.x_centralizer(q)) fx = false;
      if (s.sub(q).center != s.sub(q).centralizer) f = false;
    }
    out[p].f_centric_at_x = fx;
    out[p].f_centric = f;
    if (ambient) {
      std::vector<Perm> gens;
      for (Elem e : s.sub(p).gens) gens.push_back(s.perm(e));
      std::size_t zg = 0, zgx = 0;
      for (std::size_t i = 0; i < ambient->g.order(); ++i) {
        const Perm& g = ambient->g.element(i);
        bool cent = true;
        for (const auto& h : gens)
          if (g * h != h * g) {
            cent = false;
            break;
          }
        if (!cent) continue;
        ++zg;
        if (ambient->action.of_index(i).is_identity()) ++zgx;
      }
      out[p].p_centric_at_x = s.sub_order(x.x_center(p)) == p_part(zgx, s.prime());
      out[p].p_centric = s.sub_order(s.sub(p).center) == p_part(zg, s.prime());
    }
  }
  return out;
}

std::vector<SubId> x_centric_subgroups(const FusionActionSystem& x) {
  auto flags = x_centric_classify(x);
  std::vector<SubId> r;
  for (SubId p = 0; p < flags.size(); ++p)
    if (flags[p].f_centric_at_x) r.push_back(p);
  return r;
}

std::size_t fixed_points(const PGroup& s, const SAction& x, SubId p) {
  std::size_t c = 0;
  for (std::size_t pt = 0; pt < x.set_size; ++pt) {
    bool fixed = true;
    for (Elem g : s.sub(p).gens)
      if (x(g)(pt) != pt) {
        fixed = false;
        break;
      }
    if (fixed) ++c;
  }
  return c;
}

bool is_F_stable(const SAction& x, const FusionSystem& f) {
  const PGroup& s = f.base();
  for (SubId p = 0; p < s.subgroup_count(); ++p)
    for (SubId q : f.conjugates(p))
      if (fixed_points(s, x, p) != fixed_points(s, x, q)) return false;
  return true;
}

}  // namespace fusactk
