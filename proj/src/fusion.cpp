#include "fusactk/fusion.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "fusactk/detail/closure.hpp"
#include "fusactk/error.hpp"

namespace fusactk {

InjectiveHom hom_identity(const PGroup& s, SubId p) { return {p, p, s.members(p)}; }

InjectiveHom hom_inclusion(const PGroup& s, SubId p, SubId q) {
  if (!s.contains(q, p)) throw PreconditionError("inclusion needs P <= Q");
  return {p, q, s.members(p)};
}

InjectiveHom hom_conjugation(const PGroup& s, Elem g, SubId p) {
  InjectiveHom h{p, s.conjugate_sub(g, p), {}};
  for (Elem x : s.members(p)) h.images.push_back(s.conj(g, x));
  return h;
}

Elem hom_apply(const PGroup& s, const InjectiveHom& h, Elem x) {
  std::size_t i = s.position(h.domain, x);
  if (i == PGroup::npos) throw PreconditionError("element outside domain");
  return h.images[i];
}

SubId hom_image(const PGroup& s, const InjectiveHom& h) {
  std::vector<Elem> m = h.images;
  std::sort(m.begin(), m.end());
  return s.find_members(m);
}

InjectiveHom hom_compose(const PGroup& s, const InjectiveHom& b, const InjectiveHom& a) {
  InjectiveHom r{a.domain, b.codomain, {}};
  r.images.reserve(a.images.size());
  for (Elem x : a.images) r.images.push_back(hom_apply(s, b, x));
  return r;
}

InjectiveHom hom_restrict(const PGroup& s, const InjectiveHom& h, SubId r) {
  if (!s.contains(h.domain, r)) throw PreconditionError("restriction to a non-subgroup of the domain");
  InjectiveHom out{r, h.codomain, {}};
  for (Elem x : s.members(r)) out.images.push_back(hom_apply(s, h, x));
  return out;
}

InjectiveHom hom_corestrict(const PGroup& s, const InjectiveHom& h, SubId q) {
  for (Elem y : h.images)
    if (!s.contains_elem(q, y)) throw PreconditionError("image not inside new codomain");
  InjectiveHom out = h;
  out.codomain = q;
  return out;
}

InjectiveHom hom_inverse(const PGroup& s, const InjectiveHom& h) {
  SubId q = hom_image(s, h);
  const auto& dm = s.members(h.domain);
  InjectiveHom r{q, h.domain, std::vector<Elem>(dm.size())};
  for (std::size_t i = 0; i < dm.size(); ++i) r.images[s.position(q, h.images[i])] = dm[i];
  return r;
}

bool hom_is_iso(const PGroup& s, const InjectiveHom& h) { return hom_image(s, h) == h.codomain; }

bool hom_is_valid(const PGroup& s, const InjectiveHom& h) {
  const auto& dm = s.members(h.domain);
  if (h.images.size() != dm.size()) return false;
  std::vector<Elem> sorted = h.images;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  for (Elem y : h.images)
    if (!s.contains_elem(h.codomain, y)) return false;
  for (std::size_t i = 0; i < dm.size(); ++i)
    for (std::size_t j = 0; j < dm.size(); ++j)
      if (hom_apply(s, h, s.mul(dm[i], dm[j])) != s.mul(h.images[i], h.images[j])) return false;
  return true;
}

std::string hom_str(const PGroup& s, const InjectiveHom& h) {
  std::string out = "{";
  const auto& dm = s.members(h.domain);
  for (std::size_t i = 0; i < dm.size(); ++i) {
    if (i) out += ", ";
    out += s.perm(dm[i]).str() + "->" + s.perm(h.images[i]).str();
  }
  return out + "}";
}

namespace {

struct HomOps {
  const PGroup& s;
  SubId source(const InjectiveHom& m) const { return m.domain; }
  SubId image(const InjectiveHom& m) const { return m.codomain; }
  InjectiveHom compose(const InjectiveHom& b, const InjectiveHom& a) const {
    auto r = hom_compose(s, b, a);
    r.codomain = hom_image(s, r);
    return r;
  }
  InjectiveHom restrict(const InjectiveHom& m, SubId r) const {
    auto h = hom_restrict(s, m, r);
    h.codomain = hom_image(s, h);
    return h;
  }
  InjectiveHom inverse(const InjectiveHom& m) const { return hom_inverse(s, m); }
};

}  // namespace

FusionSystem FusionSystem::generate(std::shared_ptr<const PGroup> s, const std::vector<InjectiveHom>& gens) {
  std::vector<InjectiveHom> seed;
  for (SubId p = 0; p < s->subgroup_count(); ++p)
    for (Elem g = 0; g < s->order(); ++g) seed.push_back(hom_conjugation(*s, g, p));
  for (const auto& h : gens) {
    if (!hom_is_valid(*s, h)) throw InputError("generator is not an injective homomorphism");
    InjectiveHom c = h;
    c.codomain = hom_image(*s, h);
    seed.push_back(std::move(c));
  }
  FusionSystem f;
  f.out_ = detail::close_category(*s, seed, HomOps{*s});
  f.base_ = std::move(s);
  return f;
}

FusionSystem FusionSystem::from_closed(std::shared_ptr<const PGroup> s, std::vector<std::vector<InjectiveHom>> out) {
  FusionSystem f;
  f.base_ = std::move(s);
  f.out_ = std::move(out);
  for (auto& v : f.out_) std::sort(v.begin(), v.end());
  return f;
}

std::vector<InjectiveHom> FusionSystem::hom(SubId p, SubId q) const {
  std::vector<InjectiveHom> r;
  for (const auto& h : out_[p])
    if (base_->contains(q, h.codomain)) {
      r.push_back(h);
      r.back().codomain = q;
    }
  return r;
}

std::vector<InjectiveHom> FusionSystem::isos(SubId p, SubId q) const {
  std::vector<InjectiveHom> r;
  for (const auto& h : out_[p])
    if (h.codomain == q) r.push_back(h);
  return r;
}

bool FusionSystem::contains(const InjectiveHom& h) const {
  InjectiveHom c = h;
  c.codomain = hom_image(*base_, h);
  if (!base_->contains(h.codomain, c.codomain)) return false;
  return std::binary_search(out_[h.domain].begin(), out_[h.domain].end(), c);
}

std::vector<SubId> FusionSystem::conjugates(SubId p) const {
  std::set<SubId> r;
  for (const auto& h : out_[p]) r.insert(h.codomain);
  return {r.begin(), r.end()};
}

std::size_t FusionSystem::stored_count() const {
  std::size_t n = 0;
  for (const auto& v : out_) n += v.size();
  return n;
}

FusionSystem minimal_fusion_system(std::shared_ptr<const PGroup> s) { return FusionSystem::generate(std::move(s), {}); }

FusionSystem ambient_fusion_system(const PermGroup& g, const SubgroupRef& sref, unsigned p) {
  if (!is_prime(p)) throw InputError(std::to_string(p) + " is not prime");
  if (sref.order() != p_part(g.order(), p) || p_part(sref.order(), p) != sref.order())
    throw PreconditionError("S is not a Sylow p-subgroup of G");
  auto s = std::make_shared<const PGroup>(sref.as_group(), p);
  std::vector<std::vector<InjectiveHom>> out(s->subgroup_count());
  for (SubId q = 0; q < s->subgroup_count(); ++q) {
    std::set<InjectiveHom> maps;
    const auto& gens = s->sub(q).gens;
    const auto& mem = s->members(q);
    for (const auto& x : g.elements()) {
      Perm xi = x.inverse();
      bool inside = true;
      for (Elem e : gens)
        if (!s->index_of(x * s->perm(e) * xi)) {
          inside = false;
          break;
        }
      if (!inside) continue;
      InjectiveHom h{q, 0, {}};
      for (Elem e : mem) h.images.push_back(*s->index_of(x * s->perm(e) * xi));
      h.codomain = hom_image(*s, h);
      maps.insert(std::move(h));
    }
    out[q].assign(maps.begin(), maps.end());
  }
  return FusionSystem::from_closed(std::move(s), std::move(out));
}

namespace {

// {c_n|_Q : n in N_S(Q)} as image tables.
std::set<std::vector<Elem>> s_automizer(const PGroup& s, SubId q) {
  std::set<std::vector<Elem>> r;
  for (Elem n : s.members(s.sub(q).normalizer)) r.insert(hom_conjugation(s, n, q).images);
  return r;
}

bool agrees_on_gens(const PGroup& s, const InjectiveHom& big, const InjectiveHom& small) {
  for (Elem x : s.sub(small.domain).gens)
    if (hom_apply(s, big, x) != hom_apply(s, small, x)) return false;
  return true;
}

}  // namespace

FusionSaturationReport is_saturated_fusion(const FusionSystem& f) {
  const PGroup& s = f.base();
  const unsigned p = s.prime();
  FusionSaturationReport rep;
  const std::size_t n = s.subgroup_count();
  std::vector<bool> fnorm(n), fcent(n);
  for (SubId q = 0; q < n; ++q) {
    fnorm[q] = fcent[q] = true;
    for (SubId r : f.conjugates(q)) {
      if (s.sub_order(s.sub(r).normalizer) > s.sub_order(s.sub(q).normalizer)) fnorm[q] = false;
      if (s.sub_order(s.sub(r).centralizer) > s.sub_order(s.sub(q).centralizer)) fcent[q] = false;
    }
  }
  for (SubId q = 0; q < n; ++q) {
    if (!fnorm[q]) continue;
    if (!fcent[q]) rep.violations.push_back({q, "I", "fully normalized but not fully centralized"});
    std::size_t autf = f.aut(q).size();
    std::size_t auts = s_automizer(s, q).size();
    if (auts != p_part(autf, p))
      rep.violations.push_back({q, "I", "Aut_S(P) of order " + std::to_string(auts) + " is not Sylow in F(P) of order " +
                                            std::to_string(autf)});
  }
  for (SubId q = 0; q < n; ++q) {
    if (!fcent[q]) continue;
    auto autsq = s_automizer(s, q);
    for (SubId pp : f.conjugates(q)) {
      for (const auto& phi : f.isos(pp, q)) {
        auto phinv = hom_inverse(s, phi);
        std::vector<Elem> ext;
        for (Elem e : s.members(s.sub(pp).normalizer)) {
          auto cn = hom_conjugation(s, e, pp);
          auto t = hom_compose(s, phi, hom_compose(s, cn, phinv));
          if (autsq.count(t.images)) ext.push_back(e);
        }
        SubId nphi = s.find_members(ext);
        bool found = false;
        for (const auto& cand : f.out(nphi))
          if (agrees_on_gens(s, cand, phi)) {
            found = true;
            break;
          }
        if (!found)
          rep.violations.push_back({q, "II", "no extension of " + hom_str(s, phi) + " to N_phi of order " +
                                                 std::to_string(s.sub_order(nphi))});
      }
    }
  }
  rep.saturated = rep.violations.empty();
  return rep;
}

InjectiveHom translate(const PGroup& s, const InjectiveHom& gamma, const InjectiveHom& eta) {
  if (!s.contains(gamma.domain, eta.domain) || !s.contains(gamma.domain, eta.codomain))
    throw PreconditionError("translation needs domain and codomain inside the domain of gamma");
  auto gp = hom_restrict(s, gamma, eta.domain);
  auto gq = hom_restrict(s, gamma, eta.codomain);
  SubId dom = hom_image(s, gp);
  SubId cod = hom_image(s, gq);
  InjectiveHom r{dom, cod, std::vector<Elem>(s.sub_order(dom))};
  const auto& em = s.members(eta.domain);
  for (std::size_t i = 0; i < em.size(); ++i)
    r.images[s.position(dom, gp.images[i])] = hom_apply(s, gamma, eta.images[i]);
  return r;
}

namespace {

std::vector<Elem> compose_tables(const std::vector<Elem>& a, const std::vector<Elem>& b) {
  std::vector<Elem> r(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = a[b[i]];
  return r;
}

std::vector<Elem> invert_table(const std::vector<Elem>& a) {
  std::vector<Elem> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[a[i]] = static_cast<Elem>(i);
  return r;
}

}  // namespace

FusionAutGroups fusion_aut_groups(const FusionSystem& f) {
  const PGroup& s = f.base();
  const SubId top = s.whole();
  FusionAutGroups g;
  for (auto& alpha : s.automorphisms(top)) {
    InjectiveHom a{top, top, alpha};
    bool ok = true;
    for (SubId p = 0; p < s.subgroup_count() && ok; ++p) {
      std::vector<InjectiveHom> moved;
      for (const auto& h : f.out(p)) moved.push_back(translate(s, a, h));
      std::sort(moved.begin(), moved.end());
      SubId ap = hom_image(s, hom_restrict(s, a, p));
      ok = (moved == f.out(ap));
    }
    if (ok) g.aut.push_back(alpha);
  }
  for (const auto& h : f.aut(top)) g.inn.push_back(h.images);
  std::sort(g.inn.begin(), g.inn.end());
  std::set<std::vector<Elem>> assigned;
  for (const auto& alpha : g.aut) {
    if (assigned.count(alpha)) continue;
    g.coset_reps.push_back(alpha);
    for (const auto& i : g.inn) assigned.insert(compose_tables(alpha, i));
  }
  g.out_order = g.coset_reps.size();
  std::set<std::vector<Elem>> inn(g.inn.begin(), g.inn.end());
  g.inn_normal = true;
  for (const auto& alpha : g.coset_reps) {
    auto ai = invert_table(alpha);
    for (const auto& i : g.inn)
      if (!inn.count(compose_tables(alpha, compose_tables(i, ai)))) g.inn_normal = false;
  }
  return g;
}

std::size_t out_class(const PGroup&, const FusionAutGroups& g, const std::vector<Elem>& alpha) {
  for (std::size_t k = 0; k < g.coset_reps.size(); ++k) {
    auto ri = invert_table(g.coset_reps[k]);
    auto q = compose_tables(ri, alpha);
    if (std::binary_search(g.inn.begin(), g.inn.end(), q)) return k;
  }
  throw PreconditionError("automorphism outside Aut(F)");
}

}  // namespace fusactk
