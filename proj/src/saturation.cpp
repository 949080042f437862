#include "fusactk/saturation.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "fusactk/error.hpp"

namespace fusactk {

std::string criterion_name(Criterion c) {
  switch (c) {
    case Criterion::full:
      return "full";
    case Criterion::automized_receiving:
      return "automized_receiving";
    case Criterion::sylow_plus_receiving:
      return "sylow_plus_receiving";
  }
  return "?";
}

namespace {

bool is_sylow(std::size_t sub, std::size_t whole, unsigned p) { return sub == p_part(whole, p); }

std::string sylow_msg(const char* what, std::size_t sub, std::size_t whole) {
  return std::string(what) + " of order " + std::to_string(sub) + " is not Sylow in a group of order " +
         std::to_string(whole);
}

}  // namespace

SaturationReport check_saturation_full(const FusionActionSystem& x) {
  const PGroup& s = x.base();
  const unsigned p = s.prime();
  SaturationReport rep;
  rep.criterion = Criterion::full;
  auto t = classify_all(x);
  auto add = [&](SubId q, const char* ax, std::string w) { rep.violations.push_back({q, ax, std::move(w)}); };
  for (SubId q = 0; q < s.subgroup_count(); ++q) {
    const auto& f = t.flags[q];
    if (f.normalized && !f.centralized) add(q, "1", "fully normalized but not fully centralized");
    if (f.normalized && !f.x_normalized) add(q, "1", "fully normalized but not fully X-normalized");
    if (f.x_normalized && !f.x_centralized) add(q, "1", "fully X-normalized but not fully X-centralized");
    if (f.centralized && !f.x_centralized) add(q, "1", "fully centralized but not fully X-centralized");
    auto d = automizer_diamond(x, q);
    if (f.normalized) {
      if (!is_sylow(d.fusion_s.size(), d.fusion.size(), p))
        add(q, "2", sylow_msg("Aut_S(P)", d.fusion_s.size(), d.fusion.size()));
      if (!is_sylow(d.full_s.size(), d.full.size(), p))
        add(q, "2", sylow_msg("Aut_S(P;X)", d.full_s.size(), d.full.size()));
      if (!is_sylow(d.sigma_s.size(), d.sigma.size(), p))
        add(q, "2", sylow_msg("Sigma^S(P)", d.sigma_s.size(), d.sigma.size()));
    }
    if (f.x_normalized && !is_sylow(d.fusion0_s.size(), d.fusion0.size(), p))
      add(q, "3", sylow_msg("F_S(P)_0", d.fusion0_s.size(), d.fusion0.size()));
    if (f.centralized && !is_sylow(d.sigma0_s.size(), d.sigma0.size(), p))
      add(q, "4", sylow_msg("Sigma^S(P)_0", d.sigma0_s.size(), d.sigma0.size()));
  }
  for (SubId q = 0; q < s.subgroup_count(); ++q) {
    if (!t.flags[q].x_centralized) continue;
    for (SubId src : t.classes[q])
      for (const auto& m : x.isos(src, q)) {
        SubId n = extender(x, m);
        if (!find_extension(x, m, n))
          add(q, "5", "no extension of " + am_str(s, m) + " to its extender of order " + std::to_string(s.sub_order(n)));
      }
  }
  rep.verdict = rep.violations.empty();
  return rep;
}

SaturationReport check_saturation_rs(const FusionActionSystem& x) {
  const PGroup& s = x.base();
  SaturationReport rep;
  rep.criterion = Criterion::automized_receiving;
  auto t = classify_all(x);
  std::set<SubId> done;
  for (SubId q = 0; q < s.subgroup_count(); ++q) {
    if (done.count(q)) continue;
    bool good = false;
    for (SubId r : t.classes[q]) {
      done.insert(r);
      if (t.flags[r].automized && t.flags[r].receiving) good = true;
    }
    if (!good) rep.violations.push_back({q, "RS", "no fully automized receiving subgroup in the class"});
  }
  rep.verdict = rep.violations.empty();
  return rep;
}

SaturationReport check_saturation_stancu(const FusionActionSystem& x) {
  const PGroup& s = x.base();
  SaturationReport rep;
  rep.criterion = Criterion::sylow_plus_receiving;
  auto t = classify_all(x);
  if (!t.flags[s.whole()].automized) rep.violations.push_back({s.whole(), "S", "S is not fully automized"});
  for (SubId q = 0; q < s.subgroup_count(); ++q) {
    if (!t.flags[q].normalized || t.flags[q].receiving) continue;
    std::string why;
    is_receiving(x, q, &why);
    rep.violations.push_back({q, "receiving", "fully normalized but not receiving: " + why});
  }
  rep.verdict = rep.violations.empty();
  return rep;
}

ActionMorphism recompose(const FusionActionSystem& x, const AlperinWord& w) {
  const PGroup& s = x.base();
  ActionMorphism cur = am_identity(x, w.source);
  for (const auto& st : w.steps) {
    SubId img = cur.phi.codomain;
    if (!s.contains(st.subgroup, img)) throw PreconditionError("Alperin step does not contain the current image");
    cur = am_normalize(s, am_compose(s, am_restrict(s, st.automorphism, img), cur));
  }
  if (!s.contains(w.target, cur.phi.codomain)) throw PreconditionError("Alperin word misses its target");
  cur.phi.codomain = w.target;
  return cur;
}

namespace {

struct Factorizer {
  const FusionActionSystem& x;
  const FullyTable& t;
  std::vector<std::size_t>& orders;
  bool& increasing;

  // parent: order of the source one level up the recursion (0 at the root).
  std::vector<AlperinStep> iso(const ActionMorphism& a, std::size_t parent) {
    const PGroup& s = x.base();
    const SubId p = a.phi.domain;
    const SubId q = a.phi.codomain;
    if (p == s.whole()) return {{p, a}};
    if (t.flags[q].normalized) return to_normalized(a, parent);
    SubId rep = q;
    for (SubId r : t.classes[q])
      if (t.flags[r].normalized) {
        rep = r;
        break;
      }
    const ActionMorphism a2 = x.isos(q, rep).front();
    auto w1 = to_normalized(am_normalize(s, am_compose(s, a2, a)), parent);
    auto w2 = to_normalized(a2, parent);
    for (auto it = w2.rbegin(); it != w2.rend(); ++it) w1.push_back({it->subgroup, am_inverse(s, it->automorphism)});
    return w1;
  }

  std::vector<AlperinStep> to_normalized(const ActionMorphism& g, std::size_t parent) {
    const PGroup& s = x.base();
    const SubId p = g.phi.domain;
    orders.push_back(s.sub_order(p));
    if (s.sub_order(p) <= parent) increasing = false;
    if (p == s.whole()) return {{p, g}};
    const SubId n = s.sub(p).normalizer;
    for (const auto& chi : x.aut(p)) {
      auto beta = am_normalize(s, am_compose(s, g, chi));
      auto ext = find_extension(x, beta, n);
      if (!ext) continue;
      std::vector<AlperinStep> w;
      if (chi != am_identity(x, p)) w.push_back({p, am_inverse(s, chi)});
      auto rest = iso(*ext, s.sub_order(p));
      w.insert(w.end(), rest.begin(), rest.end());
      return w;
    }
    throw PreconditionError("no automorphism makes the morphism extend to N_S(P): system is not saturated");
  }
};

}  // namespace

AlperinWord alperin_factorize_unchecked(const FusionActionSystem& x, const ActionMorphism& m) {
  if (!x.contains(m)) throw PreconditionError("morphism is not in the system");
  const PGroup& s = x.base();
  auto t = classify_all(x);
  AlperinWord w;
  w.source = m.phi.domain;
  w.target = m.phi.codomain;
  Factorizer f{x, t, w.recursion_orders, w.orders_increase};
  w.steps = f.iso(am_normalize(s, m), 0);
  w.composite = recompose(x, w);
  return w;
}

AlperinWord alperin_factorize(const FusionActionSystem& x, const ActionMorphism& m) {
  if (!check_saturation_full(x).verdict) throw PreconditionError("system is not saturated");
  return alperin_factorize_unchecked(x, m);
}

FusionActionSystem transport_system(const FusionActionSystem& x, std::shared_ptr<const PGroup> base,
                                    const std::vector<Elem>& map, SAction action) {
  const PGroup& s = x.base();
  std::vector<std::vector<ActionMorphism>> out(base->subgroup_count());
  auto sub_map = [&](SubId p) {
    std::vector<Elem> m;
    for (Elem e : s.members(p)) m.push_back(map[e]);
    std::sort(m.begin(), m.end());
    return base->find_members(m);
  };
  for (SubId p = 0; p < s.subgroup_count(); ++p) {
    SubId np = sub_map(p);
    for (const auto& mo : x.out(p)) {
      ActionMorphism r{{np, sub_map(mo.phi.codomain), std::vector<Elem>(base->sub_order(np))}, mo.sigma};
      const auto& mem = s.members(p);
      for (std::size_t i = 0; i < mem.size(); ++i) r.phi.images[base->position(np, map[mem[i]])] = map[mo.phi.images[i]];
      out[np].push_back(std::move(r));
    }
  }
  return FusionActionSystem::from_closed(std::move(base), std::move(action), std::move(out));
}

RealizationReport realize_faithful(const FusionActionSystem& x) {
  const PGroup& s = x.base();
  for (Elem e = 1; e < s.order(); ++e)
    if (x.ell(e).is_identity()) throw PreconditionError("the S-action is not faithful");
  if (!check_saturation_full(x).verdict) throw PreconditionError("system is not saturated");
  RealizationReport rep;
  std::vector<Perm> g1;
  for (const auto& m : x.out(s.trivial())) g1.push_back(m.sigma);
  rep.g = PermGroup::from_closed_set(x.set_size(), g1);
  std::vector<Perm> ls;
  for (Elem e = 0; e < s.order(); ++e) ls.push_back(x.ell(e));
  Ambient a;
  a.g = rep.g;
  a.p = s.prime();
  a.s = subgroup_generated(rep.g, ls);
  a.action = GroupAction::natural(rep.g);
  rep.sylow = a.s.order() == p_part(rep.g.order(), a.p);
  if (!rep.sylow) {
    rep.mismatches.push_back("l_S is not Sylow in X(1)");
    return rep;
  }
  auto xg = ambient_fusion_action(a);
  std::vector<Elem> map(s.order());
  for (Elem e = 0; e < s.order(); ++e) map[e] = *xg.base().index_of(x.ell(e));
  auto moved = transport_system(x, xg.base_ptr(), map, xg.action());
  rep.system_equal = (moved == xg);
  rep.fusion_equal = (underlying_fusion_system(moved) == underlying_fusion_system(xg));
  for (SubId p = 0; p < xg.base().subgroup_count(); ++p)
    if (moved.out(p) != xg.out(p))
      rep.mismatches.push_back("hom-sets out of subgroup " + std::to_string(p) + " differ (" +
                               std::to_string(moved.out(p).size()) + " vs " + std::to_string(xg.out(p).size()) + ")");
  return rep;
}

namespace {

using Gens = std::vector<ActionMorphism>;

Gens all_automorphisms(const FusionActionSystem& x) {
  Gens g;
  for (SubId p = 0; p < x.base().subgroup_count(); ++p) {
    auto a = x.aut(p);
    g.insert(g.end(), a.begin(), a.end());
  }
  return g;
}

}  // namespace

std::vector<Mutant> mutate_system(const FusionActionSystem& x, std::size_t count, std::uint64_t seed) {
  const PGroup& s = x.base();
  std::mt19937_64 rng(seed);
  std::vector<Mutant> out;
  std::vector<FusionActionSystem> seen;
  std::set<Gens> tried;
  auto keep = [&](std::string kind, std::string desc, Gens gens) {
    std::sort(gens.begin(), gens.end());
    if (!tried.insert(gens).second) return;
    auto m = FusionActionSystem::generate(x.base_ptr(), x.action(), gens);
    if (m == x) return;
    for (const auto& o : seen)
      if (o == m) return;
    seen.push_back(m);
    out.push_back({std::move(kind), std::move(desc), std::move(m)});
  };
  // subgroups whose automorphism group is larger than its S-part
  std::vector<SubId> rich;
  for (SubId p = 0; p < s.subgroup_count(); ++p)
    if (automizer_diamond(x, p).full_s.size() < x.aut(p).size()) rich.push_back(p);
  std::vector<ActionMorphism> stored;
  for (SubId p = 0; p < s.subgroup_count(); ++p)
    for (const auto& m : x.out(p))
      if (m.phi.codomain != p || m.phi.images != s.members(p) || !m.sigma.is_identity()) stored.push_back(m);
  const auto autos = all_automorphisms(x);
  const std::size_t attempts = count * 40 + 40;
  for (std::size_t a = 0; a < attempts && out.size() < count; ++a) {
    const int kind = static_cast<int>(a % 3);
    if (kind == 0 && !rich.empty()) {
      // delete one Aut_S(P;X) double coset from X(P)
      SubId p = rich[rng() % rich.size()];
      auto d = automizer_diamond(x, p);
      std::set<ActionMorphism> sp(d.full_s.begin(), d.full_s.end());
      std::vector<ActionMorphism> outside;
      for (const auto& m : d.full)
        if (!sp.count(m)) outside.push_back(m);
      const auto& pick = outside[rng() % outside.size()];
      std::set<ActionMorphism> orbit;
      for (const auto& u : d.full_s)
        for (const auto& v : d.full_s) orbit.insert(am_compose(s, u, am_compose(s, pick, v)));
      Gens g;
      for (const auto& m : autos) {
        if (m.phi.domain == p && orbit.count(m)) continue;
        if (s.contains(m.phi.domain, p) && m.phi.domain != p) {
          auto r = am_normalize(s, am_restrict(s, m, p));
          if (r.phi.codomain == p && orbit.count(r)) continue;
        }
        g.push_back(m);
      }
      keep("orbit", "deleted an Aut_S-orbit of X(P) at subgroup " + std::to_string(p), g);
    } else if (kind == 1 && !rich.empty()) {
      // delete extensions: drop automorphisms of every proper overgroup of P
      SubId p = rich[rng() % rich.size()];
      Gens g;
      for (const auto& m : autos)
        if (!(s.contains(m.phi.domain, p) && m.phi.domain != p)) g.push_back(m);
      keep("extension", "deleted automorphisms of the overgroups of subgroup " + std::to_string(p), g);
    } else if (!stored.empty()) {
      // random sub-generation from a handful of stored morphisms
      Gens g;
      std::size_t k = 1 + rng() % 3;
      for (std::size_t i = 0; i < k; ++i) g.push_back(stored[rng() % stored.size()]);
      keep("random", "generated by " + std::to_string(k) + " random stored morphisms", g);
    }
  }
  return out;
}

}  // namespace fusactk
