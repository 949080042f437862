#include "common.hpp"
#include "fusactk/fusion.hpp"
#include "oracle.hpp"

using namespace testing;

namespace {

FusionSystem ambient_fusion(const std::string& name) {
  const auto& b = built(name);
  return ambient_fusion_system(b.ambient.g, b.ambient.s, b.ambient.p);
}

// V4 = <(0 1), (2 3)> with an extra iso <(0 1)> -> <(2 3)> and nothing else.
FusionSystem swap_system() {
  auto s = pgroup(4, {"(0 1)", "(2 3)"});
  SubId a = sub_of(*s, {"(0 1)"}), b = sub_of(*s, {"(2 3)"});
  InjectiveHom h{a, b, {0, elem(*s, "(2 3)")}};
  return FusionSystem::generate(s, {h});
}

}  // namespace

TEST_CASE("ambient_fusion_system of a p-group is the minimal system") {
  auto d8 = group(4, {"(0 1 2 3)", "(0 2)"});
  auto f = ambient_fusion_system(d8, whole_group(d8), 2);
  auto m = minimal_fusion_system(std::make_shared<const PGroup>(d8, 2));
  CHECK(oracle::lib_homs(f) == oracle::lib_homs(m));
}

TEST_CASE("ambient_fusion_system examples") {
  auto fb = ambient_fusion("FIX-B");
  const auto& sb = fb.base();
  CHECK(fb.hom(sb.trivial(), sb.trivial()).size() == 1);
  CHECK(fb.aut(sb.whole()).size() == 1);

  auto fa = ambient_fusion("FIX-A");
  const auto& s = fa.base();
  SubId p = sub_of(s, {"(0 2)"}), q = sub_of(s, {"(1 3)"});
  auto homs = fa.hom(p, q);
  REQUIRE(homs.size() == 1);
  CHECK(hom_apply(s, homs[0], elem(s, "(0 2)")) == elem(s, "(1 3)"));
}

TEST_CASE("is_saturated_fusion examples") {
  auto c2 = pgroup(2, {"(0 1)"});
  CHECK(is_saturated_fusion(minimal_fusion_system(c2)).saturated);
  CHECK(is_saturated_fusion(ambient_fusion("FIX-A")).saturated);
  auto bad = is_saturated_fusion(swap_system());
  CHECK_FALSE(bad.saturated);
  CHECK_FALSE(bad.violations.empty());
}

TEST_CASE("translate examples") {
  auto fa = ambient_fusion("FIX-A");
  const auto& s = fa.base();
  SubId whole = s.whole();
  SubId p = sub_of(s, {"(0 2)"});
  InjectiveHom eta = hom_conjugation(s, elem(s, "(0 2)"), whole);
  CHECK(translate(s, hom_identity(s, whole), eta) == eta);
  InjectiveHom gamma = hom_conjugation(s, elem(s, "(0 1 2 3)"), whole);
  InjectiveHom id_p = hom_identity(s, p);
  auto t = translate(s, gamma, id_p);
  CHECK(t == hom_identity(s, hom_image(s, hom_restrict(s, gamma, p))));
  CHECK(translate(s, gamma, eta) == hom_conjugation(s, elem(s, "(1 3)"), whole));
}

TEST_CASE("fusion_aut_groups examples") {
  auto v4 = pgroup(4, {"(0 1)(2 3)", "(0 2)(1 3)"});
  auto g = fusion_aut_groups(minimal_fusion_system(v4));
  CHECK(g.aut.size() == 6);
  CHECK(g.inn.size() == 1);
  CHECK(g.out_order == 6);
  CHECK(g.inn_normal);

  auto c2 = fusion_aut_groups(minimal_fusion_system(pgroup(2, {"(0 1)"})));
  CHECK(c2.aut.size() == 1);

  auto b = fusion_aut_groups(ambient_fusion("FIX-B"));
  CHECK(b.inn.size() == 1);
  CHECK(b.aut.size() == 1);
}

TEST_CASE("hom helpers") {
  auto fa = ambient_fusion("FIX-A");
  const auto& s = fa.base();
  SubId v = sub_of(s, {"(0 2)", "(1 3)"});
  InjectiveHom c = hom_conjugation(s, elem(s, "(0 1 2 3)"), v);
  CHECK(hom_is_valid(s, c));
  CHECK(hom_is_iso(s, c));
  CHECK(hom_compose(s, hom_inverse(s, c), c) == hom_identity(s, v));
  InjectiveHom bad{v, v, std::vector<Elem>(s.sub_order(v), 0)};
  CHECK_FALSE(hom_is_valid(s, bad));
}

TEST_CASE("property: ambient fusion systems match the oracle and are saturated") {
  std::vector<FixtureSpec> specs(builtin_fixtures().begin(), builtin_fixtures().end());
  for (const auto& f : oracle::generated_triples(false)) specs.push_back(f);
  for (const auto& spec : specs) {
    CAPTURE(spec.name);
    Ambient a = build_ambient(spec);
    auto f = ambient_fusion_system(a.g, a.s, a.p);
    auto t = oracle::make_triple(spec);
    oracle::adopt_sylow(t, a);
    auto subs = oracle::s_subgroups(t);
    REQUIRE(oracle::subgroup_strings(t.g, subs) == oracle::lib_subgroup_strings(f.base()));
    CHECK(oracle::ambient_homs(t, subs, false) == oracle::lib_homs(f));
    CHECK(is_saturated_fusion(f).saturated);
  }
}

TEST_CASE("property: fusion automorphisms preserve the system and Inn is normal") {
  for (const auto& name : {"FIX-B", "FIX-A", "FIX-C"}) {
    auto f = ambient_fusion(name);
    const auto& s = f.base();
    auto g = fusion_aut_groups(f);
    CHECK(g.inn_normal);
    CHECK(g.aut.size() == g.inn.size() * g.out_order);
    for (const auto& alpha_table : g.aut) {
      InjectiveHom alpha{s.whole(), s.whole(), alpha_table};
      for (SubId p = 0; p < s.subgroup_count(); ++p)
        for (const auto& eta : f.out(p)) CHECK(f.contains(translate(s, alpha, eta)));
    }
  }
}
