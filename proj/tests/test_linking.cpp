#include <random>

#include "common.hpp"
#include "fusactk/error.hpp"
#include "fusactk/linking.hpp"
#include "oracle.hpp"

using namespace testing;

namespace {

const AugmentedCategory& linking(const std::string& name) {
  static std::map<std::string, AugmentedCategory> cache;
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(name, ambient_linking_action(built(name).ambient, built(name).x)).first;
  return it->second;
}

const AugmentedCategory& transporter(const std::string& name) {
  static std::map<std::string, AugmentedCategory> cache;
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(name, ambient_transporter(built(name).ambient, built(name).x)).first;
  return it->second;
}

bool is_iso_pair(const PGroup& s, const ActionMorphism& m) { return s.sub_order(m.domain()) == s.sub_order(m.codomain()); }

}  // namespace

TEST_CASE("ambient_transporter examples") {
  Ambient d8;
  d8.g = group(4, {"(0 1 2 3)", "(0 2)"});
  d8.s = whole_group(d8.g);
  d8.p = 2;
  d8.action = GroupAction::natural(d8.g);
  auto x = ambient_fusion_action(d8);
  auto t = ambient_transporter(d8, x, {x.base().whole()});
  CHECK(t.objects().size() == 1);
  CHECK(t.token_count() == 8);

  const auto& tb = transporter("FIX-B");
  CHECK(tb.hom(0, 0).size() == 6);
  const auto& ta = transporter("FIX-A");
  SubId s = built("FIX-A").x.base().whole();
  CHECK(ta.hom(s, s).size() == 8);
}

TEST_CASE("ambient_transporter rejects object sets that are not closed") {
  const auto& a = built("FIX-A");
  const auto& s = a.x.base();
  SubId p = sub_of(s, {"(0 2)"});
  CHECK_THROWS_AS(ambient_transporter(a.ambient, a.x, {p, s.whole()}), InputError);
}

TEST_CASE("ambient_linking_action examples") {
  const auto& la = linking("FIX-A");
  const auto& ta = transporter("FIX-A");
  const auto& sa = built("FIX-A").x.base();
  CHECK(la.objects().size() == sa.subgroup_count());
  for (SubId p = 0; p < sa.subgroup_count(); ++p)
    for (SubId q = 0; q < sa.subgroup_count(); ++q) CHECK(la.hom(p, q).size() == ta.hom(p, q).size());

  for (const auto& name : {"FIX-C", "FIX-P"}) {
    SubId s = built(name).x.base().whole();
    CHECK(linking(name).hom(s, s).size() == 8);
  }
  const auto& c = built("FIX-C");
  CHECK_THROWS_AS(ambient_linking_action(c.ambient, c.x, {c.x.base().trivial(), c.x.base().whole()}), InputError);
}

TEST_CASE("verify_transporter_axioms examples") {
  for (const auto& f : builtin_fixtures()) {
    CAPTURE(f.name);
    const auto& x = built(f.name).x;
    CHECK(verify_transporter_axioms(transporter(f.name), underlying_fusion_system(x)).ok());
    CHECK(verify_transporter_axioms(linking(f.name), underlying_fusion_system(x)).ok());
  }
  // One composite removed from the table.
  const auto& t = transporter("FIX-A");
  const auto& s = built("FIX-A").x.base();
  Token u = t.hom(s.whole(), s.whole())[3], v = t.hom(s.whole(), s.whole())[5];
  auto broken = t.with_compose_entry(u, v, kNoToken);
  auto r = verify_transporter_axioms(broken, underlying_fusion_system(built("FIX-A").x));
  CHECK_FALSE(r.ok());
  CHECK((r.failed("A2") || r.failed("functoriality")));
}

TEST_CASE("verify_linking_axioms examples") {
  const auto& p = built("FIX-P");
  CHECK(verify_linking_axioms(linking("FIX-P"), p.x).ok());
  const auto& c = built("FIX-C");
  const auto& l = linking("FIX-C");
  auto r = verify_linking_axioms(l, c.x);
  CHECK(r.ok());
  const auto& s = c.x.base();
  for (SubId a : l.objects())
    for (SubId b : l.objects())
      CHECK(l.hom(a, b).size() == c.x.hom(a, b).size() * s.sub_order(c.x.x_center(a)));
  // Deleting one token of a Z(S;X)-orbit breaks the free action.
  auto mutated = l.without_token(l.hom(s.whole(), s.whole()).back());
  auto m = verify_linking_axioms(mutated, c.x);
  CHECK_FALSE(m.ok());
  CHECK(m.failed("A"));
}

TEST_CASE("lift_right examples") {
  const auto& c = built("FIX-C");
  const auto& l = linking("FIX-C");
  const auto& s = c.x.base();
  const SubId w = s.whole();
  for (Token h : l.hom(w, w)) {
    CHECK(lift_right(l, l.identity(w), h, l.pi(h)) == h);
    for (Token g : l.hom(w, w)) CHECK(lift_right(l, g, l.compose(g, h), l.pi(h)) == h);
  }
  // Random composable pairs over all objects, checked against a scan of the pi-fiber.
  std::mt19937 rng(5);
  const auto& objs = l.objects();
  int done = 0;
  for (int trial = 0; trial < 2000 && done < 50; ++trial) {
    SubId p = objs[rng() % objs.size()], q = objs[rng() % objs.size()], r = objs[rng() % objs.size()];
    if (l.hom(p, q).empty() || l.hom(q, r).empty()) continue;
    Token h0 = l.hom(p, q)[rng() % l.hom(p, q).size()];
    Token g = l.hom(q, r)[rng() % l.hom(q, r).size()];
    Token comp = l.compose(g, h0);
    std::vector<Token> fiber;
    for (Token h : l.hom(p, q))
      if (l.pi(h) == l.pi(h0) && l.compose(g, h) == comp) fiber.push_back(h);
    REQUIRE(fiber.size() == 1);
    CHECK(lift_right(l, g, comp, l.pi(h0)) == fiber[0]);
    ++done;
  }
  CHECK(done == 50);
}

TEST_CASE("restrict_token and extend_token examples") {
  const auto& c = built("FIX-C");
  const auto& l = linking("FIX-C");
  const auto& s = c.x.base();
  for (SubId p : l.objects())
    for (SubId q : l.objects())
      for (Token g : l.hom(p, q)) CHECK(restrict_token(l, g, p, q) == g);
  for (SubId p : l.objects()) {
    SubId n = s.sub(p).normalizer;
    for (Elem e : s.members(n))
      CHECK(extend_token(l, l.delta(p, p, e), n, n) == l.delta(n, n, e));
  }
  // Isos between Klein-four objects extended to D8.
  const SubId w = s.whole();
  std::size_t found = 0;
  for (SubId p : l.objects()) {
    if (s.sub_order(p) != 4 || s.sub(p).normalizer != w) continue;
    for (SubId q : l.objects()) {
      if (s.sub_order(q) != 4 || s.sub(q).normalizer != w) continue;
      for (Token g : l.hom(p, q)) {
        if (!l.is_iso(g)) continue;
        // The extension exists exactly when g delta(S) g^-1 = delta(S); scan for it.
        std::vector<Token> cands;
        for (Token h : l.hom(w, w))
          if (l.compose(h, l.inclusion(p, w)) == l.compose(l.inclusion(q, w), g)) cands.push_back(h);
        if (cands.empty()) continue;
        REQUIRE(cands.size() == 1);
        CHECK(extend_token(l, g, w, w) == cands[0]);
        ++found;
      }
    }
  }
  CHECK(found > 0);
}

TEST_CASE("factor_token examples") {
  const auto& c = built("FIX-C");
  const auto& l = linking("FIX-C");
  const auto& s = c.x.base();
  for (SubId p : l.objects())
    for (SubId q : l.objects())
      for (Token g : l.hom(p, q)) {
        auto f = factor_token(l, g);
        CHECK(l.compose(f.inclusion, f.iso) == g);
        if (p == q || l.is_iso(g)) {
          if (l.is_iso(g)) CHECK(f.iso == g);
        }
        if (is_iso_pair(s, l.pi(g))) CHECK(f.inclusion == l.identity(q));
      }
  for (SubId p : l.objects())
    for (SubId q : l.objects())
      if (s.contains(q, p)) {
        auto f = factor_token(l, l.inclusion(p, q));
        CHECK(f.iso == l.identity(p));
        CHECK(f.inclusion == l.inclusion(p, q));
      }
}

TEST_CASE("orbit_category examples") {
  for (const auto& name : {"FIX-B", "FIX-A", "FIX-C", "FIX-P"}) {
    const auto& x = built(name).x;
    SubId w = x.base().whole();
    auto o = orbit_category(x, false);
    CHECK(o.composition_well_defined);
    CHECK(o.hom(w, w).size() * aut_s_pairs(x, w).size() == x.aut(w).size());
  }
  auto c2 = pgroup(2, {"(0 1)"});
  auto pt = minimal_fusion_action(c2, SAction{1, std::vector<Perm>(2, Perm(1))});
  auto o = orbit_category(pt, true);
  REQUIRE(o.objects.size() == 1);
  CHECK(o.hom(o.objects[0], o.objects[0]).size() == 1);
  auto ob = orbit_category(built("FIX-B").x, false);
  CHECK(ob.hom(0, 0).size() == 6);
}

TEST_CASE("category JSON round trip") {
  for (const auto& name : {"FIX-B", "FIX-C"}) {
    const auto& l = linking(name);
    auto j = category_to_json(l);
    auto back = category_from_json(j);
    CHECK(category_to_json(back) == j);
    CHECK(verify_linking_axioms(back, built(name).x).ok());
  }
  CHECK_THROWS_AS(category_from_json(nlohmann::json::object()), InputError);
}

TEST_CASE("fusion_action_from_theta examples") {
  for (const auto& name : {"FIX-P", "FIX-B", "FIX-A"}) {
    CAPTURE(name);
    const auto& t = transporter(name);
    auto r = fusion_action_from_theta(t, induced_theta(t));
    CHECK(r.system == built(name).x);
    CHECK(r.ok());
  }
  const auto& c = built("FIX-C");
  const auto& l = linking("FIX-C");
  auto r = fusion_action_from_theta(l, induced_theta(l));
  CHECK(r.ob_saturation.verdict);
  for (SubId p : l.objects())
    for (SubId q : l.objects()) CHECK(r.system.hom(p, q) == c.x.hom(p, q));
  ThetaMap bad = induced_theta(l);
  bad[l.hom(l.objects().back(), l.objects().back()).back()] = perm("(0 1)", 3);
  CHECK_THROWS_AS(validate_theta(l, bad), InputError);
}

TEST_CASE("linking_from_theta examples") {
  const auto& l = linking("FIX-C");
  auto same = linking_from_theta(l, induced_theta(l));
  for (auto k : same.ek_prime) CHECK(k == 1);
  CHECK(compare_via_witnesses(same.category, l).ok());

  const auto& ta = transporter("FIX-A");
  auto fa = linking_from_theta(ta, induced_theta(ta));
  CHECK(compare_via_witnesses(fa.category, linking("FIX-A")).ok());

  const auto& c = built("FIX-C");
  auto tc = ambient_transporter(c.ambient, c.x, x_centric_subgroups(c.x));
  auto fc = linking_from_theta(tc, induced_theta(tc));
  CHECK(fc.complements_ok);
  CHECK(fc.composition_well_defined);
  CHECK(fc.axioms.ok());
  CHECK(compare_via_witnesses(fc.category, l).ok());
}

TEST_CASE("stabilizer_linking examples") {
  const auto& p = built("FIX-P");
  auto sp = stabilizer_linking(linking("FIX-P"), p.x, 0);
  CHECK(sp.category.token_count() == linking("FIX-P").token_count());
  CHECK(sp.fully_stabilized);

  const auto& b = built("FIX-B");
  auto s2 = stabilizer_linking(linking("FIX-B"), b.x, 2);
  CHECK(s2.fully_stabilized);
  CHECK(s2.transporter.ok());
  CHECK(s2.fusion_saturated);
  CHECK(s2.theta_image_in_core);
  CHECK(s2.transporter_iff_sylow);
  for (SubId q : s2.category.objects()) CHECK(s2.local.group->sub_order(q) <= 2);
  auto s0 = stabilizer_linking(linking("FIX-B"), b.x, 0);
  CHECK_FALSE(s0.fully_stabilized);
  CHECK(s0.transporter_iff_sylow);
}

TEST_CASE("property: linking structure on every fixture") {
  for (const auto& f : builtin_fixtures()) {
    CAPTURE(f.name);
    const auto& x = built(f.name).x;
    const auto& l = linking(f.name);
    CHECK(verify_linking_axioms(l, x).ok());
    CHECK(verify_associativity(l).ok());
    auto st = verify_linking_structure(l, x);
    CHECK(st.ok());
    CHECK(st.right_lifts > 0);
    CHECK(st.restrictions > 0);
    CHECK(st.factorizations > 0);
    CHECK(st.left_pseudo_lifts > 0);
    CHECK(st.cancellations > 0);
    CHECK(st.sylow_objects > 0);
  }
}

TEST_CASE("property: transporter and linking hom-set sizes match the oracle") {
  std::vector<FixtureSpec> specs(builtin_fixtures().begin(), builtin_fixtures().end());
  for (const auto& f : oracle::generated_triples(false))
    if (f.name.rfind("S5", 0) != 0) specs.push_back(f);
  for (const auto& spec : specs) {
    CAPTURE(spec.name);
    Ambient a = build_ambient(spec);
    auto x = ambient_fusion_action(a);
    auto t = oracle::make_triple(spec);
    oracle::adopt_sylow(t, a);
    auto subs = oracle::s_subgroups(t);
    auto tr = ambient_transporter(a, x);
    for (std::size_t i = 0; i < subs.size(); ++i)
      for (std::size_t j = 0; j < subs.size(); ++j)
        CHECK(tr.hom(i, j).size() == oracle::transporter(t.g, subs[i], subs[j]).size());
    auto l = ambient_linking_action(a, x);
    auto counts = oracle::linking_counts(t, subs);
    std::vector<SubId> objs;
    for (const auto& [k, v] : counts)
      if (k.first == k.second) objs.push_back(static_cast<SubId>(k.first));
    CHECK(objs == l.objects());
    for (const auto& [k, v] : counts) CHECK(l.hom(k.first, k.second).size() == v);
  }
}
