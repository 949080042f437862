#include "common.hpp"
#include "fusactk/error.hpp"
#include "oracle.hpp"

using namespace testing;

TEST_CASE("ambient_fusion_action on a single point is the fusion system") {
  const auto& b = built("FIX-P");
  auto f = ambient_fusion_system(b.ambient.g, b.ambient.s, b.ambient.p);
  CHECK(underlying_fusion_system(b.x) == f);
  const auto& s = b.x.base();
  for (SubId p = 0; p < s.subgroup_count(); ++p)
    for (const auto& m : b.x.out(p)) CHECK(m.sigma.is_identity());
}

TEST_CASE("ambient_fusion_action hom-set sizes") {
  const auto& b = built("FIX-B");
  const auto& sb = b.x.base();
  CHECK(b.x.hom(sb.trivial(), sb.trivial()).size() == 6);
  CHECK(b.x.hom(sb.whole(), sb.whole()).size() == 2);
  const auto& c = built("FIX-C");
  CHECK(c.x.aut(c.x.base().whole()).size() == 4);
}

TEST_CASE("is_intertwined examples") {
  const auto& b = built("FIX-B");
  const auto& s = b.x.base();
  const auto& x = b.x.action();
  CHECK(is_intertwined(s, x, hom_identity(s, s.whole()), Perm(3)));
  for (const auto& g : {"()", "(0 1)", "(0 1 2)", "(0 2)"})
    CHECK(is_intertwined(s, x, hom_identity(s, s.trivial()), perm(g, 3)));
  CHECK_FALSE(is_intertwined(s, x, hom_identity(s, s.whole()), perm("(0 1 2)", 3)));
  CHECK(is_intertwined(s, x, hom_identity(s, s.whole()), perm("(0 1)", 3)));
}

TEST_CASE("underlying_fusion_system equals the ambient fusion system") {
  for (const auto& name : {"FIX-B", "FIX-A", "FIX-C"}) {
    const auto& b = built(name);
    CHECK(underlying_fusion_system(b.x) == ambient_fusion_system(b.ambient.g, b.ambient.s, b.ambient.p));
  }
}

TEST_CASE("automizer_diamond examples") {
  auto v4 = pgroup(4, {"(0 1)(2 3)", "(0 2)(1 3)"});
  SAction nat{4, {}};
  for (Elem e = 0; e < v4->order(); ++e) nat.ell.push_back(v4->perm(e));
  auto m = minimal_fusion_action(v4, nat);
  auto d = automizer_diamond(m, v4->whole());
  CHECK(d.full.size() == 4);
  CHECK(d.fusion.size() == 1);
  CHECK(d.sigma.size() == 4);

  const auto& b = built("FIX-B");
  auto db = automizer_diamond(b.x, b.x.base().trivial());
  CHECK(db.full.size() == 6);
  CHECK(db.fusion.size() == 1);
  CHECK(db.sigma.size() == 6);
  CHECK(db.fusion0.size() == 1);
  CHECK(db.sigma0.size() == 6);

  // Exhaustive enumeration on FIX-C at S.
  const auto& c = built("FIX-C");
  auto dc = automizer_diamond(c.x, c.x.base().whole());
  CHECK(dc.full.size() == 4);
  CHECK(dc.fusion.size() == 4);
  CHECK(dc.sigma.size() == 2);
  CHECK(dc.fusion0.size() == 2);
  CHECK(dc.sigma0.size() == 1);
  CHECK(dc.exact());
}

TEST_CASE("extender examples") {
  const auto& a = built("FIX-A");
  const auto& s = a.x.base();
  for (SubId p = 0; p < s.subgroup_count(); ++p) {
    CHECK(extender(a.x, am_identity(a.x, p)) == s.sub(p).normalizer);
    for (Elem g = 0; g < s.order(); ++g) CHECK(extender(a.x, am_conjugation(a.x, g, p)) == s.sub(p).normalizer);
  }
  const auto& b = built("FIX-B");
  const auto& sb = b.x.base();
  ActionMorphism m{hom_identity(sb, sb.trivial()), perm("(0 1 2)", 3)};
  CHECK(extender(b.x, m) == sb.trivial());
}

TEST_CASE("classify_fully examples") {
  for (const auto& name : {"FIX-T", "FIX-B", "FIX-A", "FIX-C", "FIX-P"}) {
    const auto& b = built(name);
    CHECK(classify_fully(b.x, b.x.base().whole()).normalized);
  }
  const auto& b = built("FIX-B");
  auto f = classify_fully(b.x, b.x.base().trivial());
  CHECK(f.normalized);
  CHECK(f.centralized);
  CHECK(f.x_normalized);
  CHECK(f.x_centralized);

  const auto& a = built("FIX-A");
  const auto& s = a.x.base();
  SubId v1 = sub_of(s, {"(0 2)", "(1 3)"});
  SubId v2 = sub_of(s, {"(0 1)(2 3)", "(0 2)(1 3)"});
  CHECK(classify_fully(a.x, v1).normalized);
  CHECK(classify_fully(a.x, v2).normalized);
}

TEST_CASE("x_centric_classify examples") {
  const auto& a = built("FIX-A");
  CHECK(x_centric_subgroups(a.x).size() == a.x.base().subgroup_count());
  const auto& pt = built("FIX-P");
  auto flags = x_centric_classify(pt.x, &pt.ambient);
  for (const auto& f : flags) {
    CHECK(f.f_centric_at_x == f.f_centric);
    REQUIRE(f.p_centric_at_x.has_value());
    CHECK(*f.p_centric_at_x == f.f_centric_at_x);
  }
  const auto& c = built("FIX-C");
  const auto& s = c.x.base();
  auto fc = x_centric_classify(c.x, &c.ambient);
  CHECK(fc[s.whole()].f_centric_at_x);
  CHECK(s.sub_order(c.x.x_center(s.whole())) == 2);
}

TEST_CASE("is_F_stable examples") {
  const auto& p = built("FIX-P");
  CHECK(is_F_stable(p.x.action(), underlying_fusion_system(p.x)));
  for (const auto& name : {"FIX-B", "FIX-A", "FIX-C"}) {
    const auto& b = built(name);
    CHECK(is_F_stable(b.x.action(), underlying_fusion_system(b.x)));
  }
  // V4 = <(0 1), (2 3)> with <(0 1)> fused to <(2 3)>, acting on {0,1,2}
  // through its first factor: the two subgroups have 1 and 3 fixed points.
  auto s = pgroup(4, {"(0 1)", "(2 3)"});
  SubId a = sub_of(*s, {"(0 1)"}), b = sub_of(*s, {"(2 3)"});
  auto f = FusionSystem::generate(s, {InjectiveHom{a, b, {0, elem(*s, "(2 3)")}}});
  SAction x{3, {}};
  for (Elem e = 0; e < s->order(); ++e) {
    const Perm& g = s->perm(e);
    x.ell.push_back(Perm(std::vector<Point>{g(0), g(1), 2}));
  }
  CHECK(fixed_points(*s, x, a) == 1);
  CHECK(fixed_points(*s, x, b) == 3);
  CHECK_FALSE(is_F_stable(x, f));
}

TEST_CASE("generate closes under composition, restriction and inverses") {
  const auto& c = built("FIX-C");
  const auto& s = c.x.base();
  std::vector<ActionMorphism> gens = c.x.aut(s.whole());
  auto x = FusionActionSystem::generate(c.x.base_ptr(), c.x.action(), gens);
  for (SubId p = 0; p < s.subgroup_count(); ++p)
    for (const auto& m : x.out(p)) {
      CHECK(x.contains(am_inverse(s, m)));
      for (SubId r : s.subgroups_of(p)) CHECK(x.contains(am_normalize(s, am_restrict(s, m, r))));
    }
}

TEST_CASE("property: ambient fusion action systems match the oracle") {
  std::vector<FixtureSpec> specs(builtin_fixtures().begin(), builtin_fixtures().end());
  for (const auto& f : oracle::generated_triples(false)) specs.push_back(f);
  for (const auto& spec : specs) {
    CAPTURE(spec.name);
    Ambient a = build_ambient(spec);
    auto x = ambient_fusion_action(a);
    auto t = oracle::make_triple(spec);
    oracle::adopt_sylow(t, a);
    auto subs = oracle::s_subgroups(t);
    REQUIRE(oracle::subgroup_strings(t.g, subs) == oracle::lib_subgroup_strings(x.base()));
    CHECK(oracle::ambient_homs(t, subs, true) == oracle::lib_homs(x));
    // Core of the S-action.
    CHECK(oracle::elements_str(t.g, oracle::kernel(t, t.s)) == oracle::lib_elements_str(x.base().perms(x.core())));
  }
}

TEST_CASE("property: diamond exactness, strong closure of the core, extender sandwich") {
  for (const auto& name : {"FIX-T", "FIX-B", "FIX-A", "FIX-C", "FIX-P"}) {
    CAPTURE(name);
    const auto& b = built(name);
    const auto& s = b.x.base();
    SubId core = b.x.core();
    for (SubId p = 0; p < s.subgroup_count(); ++p) {
      auto d = automizer_diamond(b.x, p);
      CHECK(d.exact());
      for (const auto& m : b.x.out(p)) {
        for (std::size_t i = 0; i < s.members(p).size(); ++i)
          if (s.contains_elem(core, s.members(p)[i])) CHECK(s.contains_elem(core, m.phi.images[i]));
        SubId n = extender(b.x, m);
        SubId lower = s.join(p, b.x.x_centralizer(p));
        CHECK(s.contains(n, lower));
        CHECK(s.contains(s.sub(p).normalizer, n));
      }
    }
  }
}

TEST_CASE("property: Sylow automizers of fully normalized subgroups in ambient systems") {
  for (const auto& name : {"FIX-B", "FIX-A", "FIX-C", "FIX-P"}) {
    CAPTURE(name);
    const auto& b = built(name);
    const auto& s = b.x.base();
    for (SubId p = 0; p < s.subgroup_count(); ++p) {
      if (!classify_fully(b.x, p).normalized) continue;
      auto d = automizer_diamond(b.x, p);
      CHECK(d.full_s.size() == oracle::p_part(d.full.size(), 2));
      CHECK(d.sigma_s.size() == oracle::p_part(d.sigma.size(), 2));
      CHECK(d.fusion_s.size() == oracle::p_part(d.fusion.size(), 2));
    }
  }
}

TEST_CASE("property: isos into fully X-centralized targets extend to the extender") {
  for (const auto& name : {"FIX-B", "FIX-A", "FIX-C", "FIX-P"}) {
    CAPTURE(name);
    const auto& b = built(name);
    const auto& s = b.x.base();
    auto table = classify_all(b.x);
    for (SubId p = 0; p < s.subgroup_count(); ++p)
      for (const auto& m : b.x.out(p)) {
        if (!table.flags[m.codomain()].x_centralized) continue;
        CHECK(find_extension(b.x, m, extender(b.x, m)).has_value());
      }
  }
}
