#include "fusactk/subsystems.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "fusactk/error.hpp"
#include "fusactk/limits.hpp"

namespace fusactk {

SubId LocalBase::local_sub(const PGroup& parent, SubId q) const {
  std::vector<Elem> m;
  for (Elem e : parent.members(q)) {
    if (from_parent[e] == npos) throw PreconditionError("subgroup is not inside the local base");
    m.push_back(from_parent[e]);
  }
  std::sort(m.begin(), m.end());
  return group->find_members(m);
}

InjectiveHom LocalBase::to_local(const PGroup& parent, const InjectiveHom& h) const {
  InjectiveHom r{local_sub(parent, h.domain), local_sub(parent, h.codomain), {}};
  const auto& dom = group->members(r.domain);
  r.images.reserve(dom.size());
  for (Elem a : dom) r.images.push_back(from_parent[hom_apply(parent, h, to_parent[a])]);
  return r;
}

InjectiveHom LocalBase::to_parent_hom(const PGroup& parent, const InjectiveHom& h) const {
  auto up = [&](SubId local) {
    std::vector<Elem> m;
    for (Elem e : group->members(local)) m.push_back(to_parent[e]);
    std::sort(m.begin(), m.end());
    return parent.find_members(m);
  };
  InjectiveHom r{up(h.domain), up(h.codomain), {}};
  for (Elem a : parent.members(r.domain)) r.images.push_back(to_parent[hom_apply(*group, h, from_parent[a])]);
  return r;
}

ActionMorphism LocalBase::to_local(const PGroup& parent, const ActionMorphism& m) const {
  return {to_local(parent, m.phi), m.sigma};
}

SAction LocalBase::restrict(const SAction& x) const {
  SAction r;
  r.set_size = x.set_size;
  for (Elem e : to_parent) r.ell.push_back(x.ell[e]);
  return r;
}

LocalBase local_base(const PGroup& s, SubId t) {
  LocalBase lb;
  lb.in_parent = t;
  auto g = PermGroup::from_closed_set(s.degree(), s.perms(t));
  lb.group = std::make_shared<const PGroup>(g, s.prime());
  lb.from_parent.assign(s.order(), LocalBase::npos);
  for (Elem e = 0; e < lb.group->order(); ++e) {
    Elem pe = *s.index_of(lb.group->perm(e));
    lb.to_parent.push_back(pe);
    lb.from_parent[pe] = e;
  }
  return lb;
}

FusionActionSystem localize_system(const FusionActionSystem& x, const LocalBase& lb,
                                   const std::vector<std::vector<ActionMorphism>>& out_in_parent) {
  std::vector<std::vector<ActionMorphism>> out(lb.group->subgroup_count());
  for (const auto& list : out_in_parent)
    for (const auto& m : list) {
      auto l = lb.to_local(x.base(), m);
      out[l.phi.domain].push_back(std::move(l));
    }
  for (auto& v : out) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }
  return FusionActionSystem::from_closed(lb.group, lb.restrict(x.action()), std::move(out));
}

std::size_t ActionMorphismHash::operator()(const ActionMorphism& m) const {
  std::size_t h = std::hash<std::size_t>{}(m.phi.domain * 1000003u + m.phi.codomain);
  for (Elem e : m.phi.images) h = h * 31 + e;
  return h ^ (PermHash{}(m.sigma) << 1);
}

std::vector<Perm> intertwiners(const PGroup& s, const SAction& x, const InjectiveHom& phi) {
  const std::size_t m = x.set_size;
  std::vector<Elem> gens = s.sub(phi.domain).gens;
  std::vector<std::pair<const Perm*, const Perm*>> constraints;
  for (Elem g : gens) constraints.push_back({&x.ell[g], &x.ell[hom_apply(s, phi, g)]});
  std::vector<Perm> result;
  std::vector<int> img(m, -1);
  std::vector<char> used(m, 0);
  // sigma(l_g(a)) = l_phi(g)(sigma(a)); propagate from each new assignment
  std::function<void()> rec = [&]() {
    std::size_t a = 0;
    while (a < m && img[a] >= 0) ++a;
    if (a == m) {
      result.emplace_back(std::vector<Point>(img.begin(), img.end()));
      return;
    }
    for (std::size_t b = 0; b < m; ++b) {
      if (used[b]) continue;
      auto saved_img = img;
      auto saved_used = used;
      bool ok = true;
      std::vector<std::size_t> queue{a};
      img[a] = static_cast<int>(b);
      used[b] = 1;
      while (ok && !queue.empty()) {
        std::size_t u = queue.back();
        queue.pop_back();
        for (auto [l, r] : constraints) {
          std::size_t nu = (*l)(u);
          std::size_t nv = (*r)(static_cast<std::size_t>(img[u]));
          if (img[nu] < 0) {
            if (used[nv]) { ok = false; break; }
            img[nu] = static_cast<int>(nv);
            used[nv] = 1;
            queue.push_back(nu);
          } else if (static_cast<std::size_t>(img[nu]) != nv) {
            ok = false;
            break;
          }
        }
      }
      if (ok) rec();
      img = std::move(saved_img);
      used = std::move(saved_used);
    }
  };
  rec();
  std::sort(result.begin(), result.end());
  return result;
}

std::vector<ActionMorphism> aut_pairs(const FusionActionSystem& x, SubId p) {
  const PGroup& s = x.base();
  std::vector<ActionMorphism> r;
  for (auto& table : s.automorphisms(p)) {
    InjectiveHom phi{p, p, table};
    for (auto& sg : intertwiners(s, x.action(), phi)) r.push_back({phi, sg});
  }
  std::sort(r.begin(), r.end());
  return r;
}

std::vector<ActionMorphism> aut_s_pairs(const FusionActionSystem& x, SubId p) {
  std::set<ActionMorphism> r;
  for (Elem n : x.base().members(x.base().sub(p).normalizer)) r.insert(am_conjugation(x, n, p));
  return {r.begin(), r.end()};
}

std::vector<std::vector<ActionMorphism>> aut_pair_subgroups(const FusionActionSystem& x, SubId p,
                                                            std::size_t max_order) {
  auto all = aut_pairs(x, p);
  if (all.size() > max_order)
    throw CapExceeded("Aut(P;X) has " + std::to_string(all.size()) + " elements, above " + std::to_string(max_order));
  const PGroup& s = x.base();
  // identity first, as required by the table construction
  auto id = am_identity(x, p);
  auto it = std::find(all.begin(), all.end(), id);
  std::rotate(all.begin(), it, it + 1);
  auto table = make_table_group(all, [&](const ActionMorphism& a, const ActionMorphism& b) { return am_compose(s, a, b); },
                                ActionMorphismHash{});
  std::vector<std::vector<ActionMorphism>> result;
  for (auto& members : table.all_subgroups()) {
    std::vector<ActionMorphism> k;
    for (Elem e : members) k.push_back(all[e]);
    std::sort(k.begin(), k.end());
    result.push_back(std::move(k));
  }
  return result;
}

namespace {

bool is_core_morphism(const FusionActionSystem& x, const InjectiveHom& phi) {
  return x.contains(ActionMorphism{phi, Perm(x.set_size())});
}

std::vector<InjectiveHom> distinct_auts(const FusionActionSystem& x, SubId p) {
  std::set<InjectiveHom> r;
  for (auto& m : x.aut(p)) r.insert(m.phi);
  return {r.begin(), r.end()};
}

}  // namespace

CoreResult core_subsystem(const FusionActionSystem& x) {
  if (!check_saturation_full(x).verdict) throw PreconditionError("system is not saturated");
  const PGroup& s = x.base();
  CoreResult r;
  const SubId c = x.core();
  r.core = c;
  r.core_group = s.ref(c);
  r.local = local_base(s, c);
  const Perm id_x(x.set_size());

  // the core fusion system, in S-indexing first
  std::vector<std::vector<InjectiveHom>> cf(r.local.group->subgroup_count());
  for (SubId p : s.subgroups_of(c))
    for (const auto& m : x.out(p))
      if (m.sigma == id_x) {
        auto l = r.local.to_local(s, m.phi);
        cf[l.domain].push_back(std::move(l));
      }
  for (auto& v : cf) std::sort(v.begin(), v.end());
  r.core_fusion = FusionSystem::from_closed(r.local.group, std::move(cf));

  // strong closure
  r.strongly_closed = true;
  for (SubId p = 0; p < s.subgroup_count() && r.strongly_closed; ++p) {
    SubId pc = s.intersect(p, c);
    for (const auto& m : x.out(p)) {
      bool ok = true;
      for (Elem e : s.members(pc))
        if (!s.contains_elem(c, hom_apply(s, m.phi, e))) ok = false;
      if (!ok) {
        r.strongly_closed = false;
        r.failures.push_back("strong closure fails for " + am_str(s, m));
        break;
      }
    }
  }

  auto aut_c = distinct_auts(x, c);

  // conjugation invariance: psi phi psi^-1 stays in the core system
  r.conjugation_invariant = true;
  for (SubId p : s.subgroups_of(c))
    for (const auto& m : x.out(p)) {
      if (!(m.sigma == id_x)) continue;
      for (const auto& psi : aut_c) {
        ++r.invariance_checks;
        auto t = translate(s, psi, m.phi);
        if (!is_core_morphism(x, t)) {
          r.conjugation_invariant = false;
          r.failures.push_back("conjugate of " + hom_str(s, m.phi) + " by " + hom_str(s, psi) + " leaves the core system");
        }
      }
    }

  // Frattini factorization chi = phi ∘ psi|P
  r.frattini = true;
  auto f = underlying_fusion_system(x);
  for (SubId p : s.subgroups_of(c))
    for (const auto& chi : f.out(p)) {
      bool found = false;
      for (const auto& psi : aut_c) {
        auto pr = hom_restrict(s, psi, p);
        auto phi = hom_compose(s, chi, hom_inverse(s, pr));
        if (is_core_morphism(x, phi)) {
          ActionMorphism chi_pair{chi, id_x};
          for (const auto& m : x.out(p))
            if (m.phi == chi) { chi_pair = m; break; }
          r.frattini_witnesses.push_back({chi_pair, psi, phi});
          found = true;
          break;
        }
      }
      if (!found) {
        r.frattini = false;
        r.failures.push_back("no Frattini factorization for " + hom_str(s, chi));
      }
    }

  r.saturated = is_saturated_fusion(r.core_fusion).saturated;
  if (!r.saturated) r.failures.push_back("core fusion system is not saturated");

  // Aschbacher: each phi in C(C) extends to C·Z_S(C) with [ext, Z_S(C)] <= C
  r.aschbacher = true;
  const SubId z = s.sub(c).centralizer;
  const SubId cz = s.join(c, z);
  for (const auto& m : x.aut(c)) {
    if (!(m.sigma == id_x)) continue;
    bool found = false;
    for (const auto& e : x.out(cz)) {
      if (!(am_normalize(s, am_restrict(s, e, c)).phi == m.phi)) continue;
      bool comm = true;
      for (Elem zz : s.members(z))
        if (!s.contains_elem(c, s.mul(hom_apply(s, e.phi, zz), s.inv(zz)))) comm = false;
      if (comm) {
        r.aschbacher_witnesses.push_back({m.phi, e});
        found = true;
        break;
      }
    }
    if (!found) {
      r.aschbacher = false;
      r.failures.push_back("no extension to C·Z_S(C) for " + hom_str(s, m.phi));
    }
  }

  // core exactness
  auto d = automizer_diamond(x, c);
  std::set<AutTable> c_aut;
  for (const auto& h : r.core_fusion.aut(r.core_fusion.base().whole())) c_aut.insert(r.local.to_parent_hom(s, h).images);
  std::set<AutTable> f0(d.fusion0.begin(), d.fusion0.end());
  std::set<AutTable> inner;
  for (Elem e : s.members(c)) inner.insert(hom_conjugation(s, e, c).images);
  std::set<AutTable> f0s(d.fusion0_s.begin(), d.fusion0_s.end());
  r.core_exact = (f0 == c_aut) && (f0s == inner);
  if (!r.core_exact) r.failures.push_back("core exactness fails");
  return r;
}

std::vector<Perm> sigma_group(const FusionActionSystem& x) {
  std::set<Perm> g;
  for (const auto& m : x.out(x.base().trivial())) g.insert(m.sigma);
  return {g.begin(), g.end()};
}

KappaResult kappa_map(const FusionActionSystem& x) {
  auto core = core_subsystem(x);
  const PGroup& s = x.base();
  const PGroup& lc = *core.local.group;
  KappaResult r;
  r.domain = sigma_group(x);
  r.out = fusion_aut_groups(core.core_fusion);
  std::map<Perm, std::size_t> pos;
  for (std::size_t i = 0; i < r.domain.size(); ++i) pos[r.domain[i]] = i;
  r.well_defined = true;
  std::vector<InjectiveHom> local_lift;
  for (const auto& sg : r.domain) {
    std::optional<ActionMorphism> first;
    std::set<std::size_t> classes;
    for (const auto* m : x.with_sigma(core.core, sg)) {
      if (m->phi.codomain != core.core) continue;
      if (!first) first = *m;
      classes.insert(out_class(lc, r.out, core.local.to_local(s, m->phi).images));
    }
    if (!first) throw PreconditionError("no lift to the core for sigma " + sg.str());
    if (classes.size() != 1) r.well_defined = false;
    r.lift.push_back(*first);
    local_lift.push_back(core.local.to_local(s, first->phi));
    r.image.push_back(out_class(lc, r.out, local_lift.back().images));
  }
  std::vector<std::size_t> right;
  r.all_pairs = r.domain.size() <= 256;
  if (r.all_pairs) {
    for (std::size_t i = 0; i < r.domain.size(); ++i) right.push_back(i);
  } else {
    for (const auto& g : greedy_generators(r.domain)) right.push_back(pos.at(g));
  }
  r.homomorphism = true;
  for (std::size_t i = 0; i < r.domain.size() && r.homomorphism; ++i)
    for (std::size_t j : right) {
      std::size_t k = pos.at(r.domain[i] * r.domain[j]);
      auto comp = hom_compose(lc, local_lift[i], local_lift[j]);
      if (out_class(lc, r.out, comp.images) != r.image[k]) {
        r.homomorphism = false;
        break;
      }
    }
  std::set<std::size_t> img(r.image.begin(), r.image.end());
  r.image_order = img.size();
  std::size_t id_class = out_class(lc, r.out, hom_identity(lc, lc.whole()).images);
  r.kernel_order = static_cast<std::size_t>(std::count(r.image.begin(), r.image.end(), id_class));
  return r;
}

namespace {

void check_k(const FusionActionSystem& x, SubId p, const std::vector<ActionMorphism>& k) {
  const PGroup& s = x.base();
  if (k.empty()) throw InputError("K is empty");
  std::set<ActionMorphism> ks(k.begin(), k.end());
  for (const auto& a : k) {
    if (a.phi.domain != p || a.phi.codomain != p || !hom_is_valid(s, a.phi) || !hom_is_iso(s, a.phi))
      throw InputError("K contains a pair that is not an automorphism of P");
    if (a.sigma.degree() != x.set_size() || !is_intertwined(s, x.action(), a.phi, a.sigma))
      throw InputError("K contains a pair that is not intertwined");
  }
  if (!ks.count(am_identity(x, p))) throw InputError("K is not a subgroup (identity missing)");
  for (const auto& a : k)
    for (const auto& b : k)
      if (!ks.count(am_compose(s, a, b))) throw InputError("K is not a subgroup (not closed)");
}

std::size_t k_normalizer_order(const FusionActionSystem& x, SubId q, const std::set<ActionMorphism>& k) {
  std::size_t n = 0;
  for (Elem e : x.base().members(x.base().sub(q).normalizer))
    if (k.count(am_conjugation(x, e, q))) ++n;
  return n;
}

std::set<ActionMorphism> conjugate_k(const PGroup& s, const ActionMorphism& iso, const std::vector<ActionMorphism>& k) {
  auto inv = am_inverse(s, iso);
  std::set<ActionMorphism> r;
  for (const auto& a : k) r.insert(am_compose(s, am_compose(s, iso, a), inv));
  return r;
}

}  // namespace

SubId k_normalizer_group(const FusionActionSystem& x, SubId p, const std::vector<ActionMorphism>& k) {
  const PGroup& s = x.base();
  std::set<ActionMorphism> ks(k.begin(), k.end());
  std::vector<Elem> members;
  for (Elem e : s.members(s.sub(p).normalizer))
    if (ks.count(am_conjugation(x, e, p))) members.push_back(e);
  return s.find_members(members);
}

KNormalizerSpec k_normalizer_subsystem(const FusionActionSystem& x, SubId p, std::vector<ActionMorphism> k) {
  check_k(x, p, k);
  std::sort(k.begin(), k.end());
  const PGroup& s = x.base();
  KNormalizerSpec r;
  r.base_subgroup = p;
  r.k = k;
  r.n_s_k = k_normalizer_group(x, p, k);
  r.local = local_base(s, r.n_s_k);
  std::set<ActionMorphism> ks(k.begin(), k.end());
  std::vector<std::vector<ActionMorphism>> out(s.subgroup_count());
  for (SubId q : s.subgroups_of(r.n_s_k)) {
    SubId pq = s.join(p, q);
    for (const auto& m : x.out(pq)) {
      auto mp = am_normalize(s, am_restrict(s, m, p));
      if (mp.phi.codomain != p || !ks.count(mp)) continue;
      auto mq = am_normalize(s, am_restrict(s, m, q));
      if (!s.contains(r.n_s_k, mq.phi.codomain)) continue;
      out[q].push_back(mq);
    }
  }
  r.subsystem = localize_system(x, r.local, out);
  return r;
}

KNormalizationReport is_fully_k_normalized(const FusionActionSystem& x, SubId p, const std::vector<ActionMorphism>& k) {
  check_k(x, p, k);
  const PGroup& s = x.base();
  KNormalizationReport r;
  std::set<ActionMorphism> ks(k.begin(), k.end());
  r.order = k_normalizer_order(x, p, ks);
  r.max_order = r.order;
  for (SubId q : x.conjugates(p))
    for (const auto& iso : x.isos(p, q))
      r.max_order = std::max(r.max_order, k_normalizer_order(x, q, conjugate_k(s, iso, k)));
  r.by_order = r.order >= r.max_order;
  r.x_centralized = classify_fully(x, p).x_centralized;
  for (const auto& a : aut_s_pairs(x, p))
    if (ks.count(a)) ++r.aut_s_k;
  for (const auto& a : x.aut(p))
    if (ks.count(a)) ++r.aut_x_k;
  r.sylow = r.aut_s_k == p_part(r.aut_x_k, s.prime());
  return r;
}

KExtensionReport k_normalizer_extensions(const FusionActionSystem& x, SubId p, const std::vector<ActionMorphism>& k) {
  check_k(x, p, k);
  const PGroup& s = x.base();
  KExtensionReport r;
  const SubId pn = s.join(p, k_normalizer_group(x, p, k));
  std::map<SubId, bool> reached;
  for (SubId q : x.conjugates(p)) {
    for (const auto& iso : x.isos(p, q)) {
      auto kq = conjugate_k(s, iso, k);
      std::vector<ActionMorphism> kv(kq.begin(), kq.end());
      std::size_t nq = k_normalizer_order(x, q, kq);
      bool fully = true;
      for (SubId q2 : x.conjugates(q)) {
        for (const auto& iso2 : x.isos(q, q2))
          if (k_normalizer_order(x, q2, conjugate_k(s, iso2, kv)) > nq) { fully = false; break; }
        if (!fully) break;
      }
      if (!fully) continue;
      ++r.checked;
      if (!reached.count(q)) {
        bool found = false;
        for (const auto& m : x.out(pn))
          if (hom_image(s, hom_restrict(s, m.phi, p)) == q) { found = true; break; }
        reached[q] = found;
      }
      if (!reached[q]) r.missing.push_back("no morphism on P·N_S^K(P) carrying P onto subgroup " + std::to_string(q));
    }
  }
  return r;
}

SubId point_stabilizer(const FusionActionSystem& x, std::size_t point) {
  if (point >= x.set_size()) throw InputError("point " + std::to_string(point) + " is outside X");
  std::vector<Elem> m;
  for (Elem e = 0; e < x.base().order(); ++e)
    if (x.ell(e)(point) == point) m.push_back(e);
  return x.base().find_members(m);
}

bool is_transitive(const FusionActionSystem& x) {
  std::vector<char> seen(x.set_size(), 0);
  seen[0] = 1;
  for (const auto& sg : sigma_group(x)) seen[sg(0)] = 1;
  return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
}

namespace {

FusionActionSystem filtered_system(const FusionActionSystem& x, const LocalBase& lb,
                                   const std::function<bool(const Perm&)>& keep) {
  const PGroup& s = x.base();
  std::vector<std::vector<ActionMorphism>> out(s.subgroup_count());
  for (SubId q : s.subgroups_of(lb.in_parent))
    for (const auto& m : x.out(q))
      if (keep(m.sigma)) out[q].push_back(m);
  return localize_system(x, lb, out);
}

}  // namespace

StabilizerResult stabilizer_subsystem(const FusionActionSystem& x, std::size_t point) {
  const PGroup& s = x.base();
  StabilizerResult r;
  r.point = point;
  r.stabilizer = point_stabilizer(x, point);
  r.local = local_base(s, r.stabilizer);
  r.subsystem = filtered_system(x, r.local, [&](const Perm& sg) { return sg(point) == point; });
  r.transitive = is_transitive(x);
  std::size_t best = 0;
  for (std::size_t y = 0; y < x.set_size(); ++y) best = std::max(best, s.sub_order(point_stabilizer(x, y)));
  r.fully_by_order = s.sub_order(r.stabilizer) >= best;
  // l_{S_x} has order |S_x|/|C|
  std::size_t fixing = 0;
  for (const auto& sg : sigma_group(x))
    if (sg(point) == point) ++fixing;
  r.fully_by_sylow = s.sub_order(r.stabilizer) / s.sub_order(x.core()) == p_part(fixing, s.prime());
  if (r.transitive && r.fully_by_order) {
    r.full = check_saturation_full(r.subsystem);
    r.rs = check_saturation_rs(r.subsystem);
    r.stancu = check_saturation_stancu(r.subsystem);
  }
  return r;
}

PreimageResult preimage_subsystem(const FusionActionSystem& x, const std::vector<Perm>& h) {
  const PGroup& s = x.base();
  auto g1 = sigma_group(x);
  std::set<Perm> g1s(g1.begin(), g1.end());
  std::set<Perm> hs;
  for (const auto& sg : h) {
    if (sg.degree() != x.set_size()) throw InputError("H element has the wrong degree");
    if (!g1s.count(sg)) throw InputError("H is not inside X(1): " + sg.str());
    hs.insert(sg);
  }
  if (!hs.count(Perm(x.set_size()))) throw InputError("H is not a subgroup (identity missing)");
  for (const auto& a : hs)
    for (const auto& b : hs)
      if (!hs.count(a * b)) throw InputError("H is not a subgroup (not closed)");
  PreimageResult r;
  std::vector<Elem> t;
  for (Elem e = 0; e < s.order(); ++e)
    if (hs.count(x.ell(e))) t.push_back(e);
  r.t = s.find_members(t);
  r.local = local_base(s, r.t);
  r.subsystem = filtered_system(x, r.local, [&](const Perm& sg) { return hs.count(sg) > 0; });
  std::set<Perm> lt;
  for (Elem e : t) lt.insert(x.ell(e));
  r.sylow = lt.size() == p_part(hs.size(), s.prime());
  if (r.sylow) r.saturation = check_saturation_full(r.subsystem);
  return r;
}

SubconjugacyReport stabilizer_subconjugacy_check(const FusionActionSystem& x, std::size_t point) {
  if (!is_transitive(x)) throw PreconditionError("system is not transitive");
  const PGroup& s = x.base();
  const SubId sx = point_stabilizer(x, point);
  for (std::size_t y = 0; y < x.set_size(); ++y)
    if (s.sub_order(point_stabilizer(x, y)) > s.sub_order(sx)) throw PreconditionError("point is not fully stabilized");
  SubconjugacyReport r;
  for (std::size_t y = 0; y < x.set_size(); ++y) {
    SubId sy = point_stabilizer(x, y);
    std::optional<ActionMorphism> w;
    if (y == point) {
      w = am_identity(x, sx);
    } else {
      // (phi, sigma) with sigma(y) = x carries S_y into S_x.
      for (const auto& m : x.out(sy))
        if (m.sigma(y) == point && s.contains(sx, m.phi.codomain)) {
          w = m;
          break;
        }
    }
    if (w) r.witnesses.push_back({y, sy, *w});
    else r.missing.push_back(y);
  }
  return r;
}

}  // namespace fusactk
