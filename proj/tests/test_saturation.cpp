#include "common.hpp"
#include "fusactk/error.hpp"
#include "fusactk/saturation.hpp"
#include "oracle.hpp"

using namespace testing;

namespace {

FusionActionSystem minimal_c2() {
  auto c2 = pgroup(2, {"(0 1)"});
  SAction x{2, {}};
  for (Elem e = 0; e < c2->order(); ++e) x.ell.push_back(c2->perm(e));
  return minimal_fusion_action(c2, x);
}

// X = point, S = <(0 1), (2 3)> with an iso <(0 1)> -> <(2 3)> that does not extend.
FusionActionSystem unextendable() {
  auto s = pgroup(4, {"(0 1)", "(2 3)"});
  SubId a = sub_of(*s, {"(0 1)"}), b = sub_of(*s, {"(2 3)"});
  SAction x{1, std::vector<Perm>(s->order(), Perm(1))};
  ActionMorphism m{InjectiveHom{a, b, {0, elem(*s, "(2 3)")}}, Perm(1)};
  return FusionActionSystem::generate(s, x, {m});
}

bool all_three(const FusionActionSystem& x) {
  return check_saturation_full(x).verdict && check_saturation_rs(x).verdict && check_saturation_stancu(x).verdict;
}

}  // namespace

TEST_CASE("saturation checkers: examples") {
  CHECK(all_three(minimal_c2()));
  for (const auto& f : builtin_fixtures()) {
    CAPTURE(f.name);
    CHECK(all_three(built(f.name).x));
  }
  auto bad = unextendable();
  auto full = check_saturation_full(bad);
  CHECK_FALSE(full.verdict);
  bool cites5 = false;
  for (const auto& v : full.violations) cites5 = cites5 || v.axiom == "5";
  CHECK(cites5);
  CHECK_FALSE(check_saturation_rs(bad).verdict);
  CHECK_FALSE(check_saturation_stancu(bad).verdict);
}

TEST_CASE("saturation report verdict matches the violation list") {
  auto bad = unextendable();
  for (const auto& r : {check_saturation_full(bad), check_saturation_rs(bad), check_saturation_stancu(bad)})
    CHECK(r.verdict == r.violations.empty());
}

TEST_CASE("alperin_factorize examples") {
  const auto& a = built("FIX-A");
  const auto& s = a.x.base();
  for (const auto& m : a.x.aut(s.whole())) {
    auto w = alperin_factorize(a.x, m);
    CHECK(w.steps.size() == 1);
    CHECK(recompose(a.x, w) == m);
  }
  SubId p = sub_of(s, {"(0 2)"}), q = sub_of(s, {"(1 3)"});
  ActionMorphism c = am_conjugation(a.x, elem(s, "(0 1 2 3)"), p);
  REQUIRE(c.codomain() == q);
  auto w = alperin_factorize(a.x, c);
  CHECK(recompose(a.x, w) == c);
  CHECK(w.composite == c);

  const auto& b = built("FIX-B");
  const auto& sb = b.x.base();
  ActionMorphism m{hom_identity(sb, sb.trivial()), perm("(0 1 2)", 3)};
  auto wb = alperin_factorize(b.x, m);
  CHECK(wb.steps.size() <= 3);
  CHECK(recompose(b.x, wb) == m);
}

TEST_CASE("alperin_factorize preconditions") {
  auto bad = unextendable();
  CHECK_THROWS_AS(alperin_factorize(bad, bad.out(1).front()), PreconditionError);
  const auto& b = built("FIX-B");
  const auto& sb = b.x.base();
  ActionMorphism outside{hom_identity(sb, sb.whole()), perm("(0 1 2)", 3)};
  CHECK_THROWS_AS(alperin_factorize(b.x, outside), PreconditionError);
}

TEST_CASE("realize_faithful examples") {
  auto rb = realize_faithful(built("FIX-B").x);
  CHECK(rb.g.order() == 6);
  CHECK(rb.sylow);
  CHECK(rb.fusion_equal);
  CHECK(rb.system_equal);
  auto ra = realize_faithful(built("FIX-A").x);
  CHECK(ra.g.order() == 24);
  CHECK(ra.fusion_equal);
  CHECK(ra.system_equal);
  auto rc = realize_faithful(minimal_c2());
  CHECK(rc.g.order() == 2);
  CHECK(rc.system_equal);
  CHECK_THROWS_AS(realize_faithful(built("FIX-C").x), PreconditionError);
}

TEST_CASE("property: the three checkers agree on mutants") {
  std::size_t total = 0, unsaturated = 0;
  std::vector<FusionActionSystem> bases;
  for (const auto& name : {"FIX-A", "FIX-C", "FIX-P"}) bases.push_back(built(name).x);
  for (const auto& spec : oracle::generated_triples(false))
    if (spec.name == "S4xC2-natural-p2" || spec.name == "S3xS3-natural-p3" || spec.name == "D12-natural-p3")
      bases.push_back(ambient_fusion_action(build_ambient(spec)));
  for (const auto& base : bases) {
    for (const auto& m : mutate_system(base, 20, 7)) {
      CAPTURE(m.description);
      bool f = check_saturation_full(m.system).verdict;
      bool r = check_saturation_rs(m.system).verdict;
      bool st = check_saturation_stancu(m.system).verdict;
      CHECK(f == r);
      CHECK(f == st);
      ++total;
      if (!f) ++unsaturated;
    }
  }
  CHECK(total >= 50);
  CHECK(unsaturated > 0);
}

TEST_CASE("property: saturated systems have saturated underlying fusion systems") {
  std::vector<FusionActionSystem> systems = {minimal_c2()};
  for (const auto& f : builtin_fixtures()) systems.push_back(built(f.name).x);
  for (const auto& m : mutate_system(built("FIX-C").x, 20, 11)) systems.push_back(m.system);
  for (const auto& x : systems)
    if (check_saturation_full(x).verdict) CHECK(is_saturated_fusion(underlying_fusion_system(x)).saturated);
}

TEST_CASE("property: fully normalized subgroups in saturated systems") {
  for (const auto& f : builtin_fixtures()) {
    const auto& x = built(f.name).x;
    const auto& s = x.base();
    auto t = classify_all(x);
    for (SubId p = 0; p < s.subgroup_count(); ++p) {
      const auto& fl = t.flags[p];
      auto d = automizer_diamond(x, p);
      bool sylow = d.fusion_s.size() == oracle::p_part(d.fusion.size(), s.prime());
      if (fl.normalized) {
        CHECK(fl.centralized);
        CHECK(fl.x_normalized);
        CHECK(fl.x_centralized);
        CHECK(fl.automized);
        CHECK(fl.receiving);
      }
      CHECK(fl.normalized == (fl.centralized && sylow));
    }
  }
}

TEST_CASE("property: Alperin words recompose with strictly increasing recursion orders") {
  for (const auto& f : builtin_fixtures()) {
    const auto& x = built(f.name).x;
    const auto& s = x.base();
    for (SubId p = 0; p < s.subgroup_count(); ++p)
      for (const auto& m : x.out(p)) {
        auto w = alperin_factorize_unchecked(x, m);
        CHECK(recompose(x, w) == m);
        CHECK(w.orders_increase);
      }
  }
}
