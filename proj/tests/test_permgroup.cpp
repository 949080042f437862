#include <random>
#include <set>

#include "common.hpp"
#include "fusactk/error.hpp"
#include "fusactk/limits.hpp"
#include "oracle.hpp"

using namespace testing;

TEST_CASE("cycle notation parsing and printing") {
  CHECK(perm("(0 1 2)(3 4)", 5).str() == "(0 1 2)(3 4)");
  CHECK(perm("()", 3).is_identity());
  CHECK(perm("(2 0 1)", 3) == perm("(0 1 2)", 3));
  CHECK_THROWS_AS(perm("(0 1", 3), InputError);
  CHECK_THROWS_AS(perm("(0 5)", 3), InputError);
  CHECK_THROWS_AS(perm("(0 1 0)", 3), InputError);
  CHECK_THROWS_AS(perm("(0 x)", 3), InputError);
}

TEST_CASE("composition is right to left") {
  Perm a = perm("(0 1)", 3), b = perm("(1 2)", 3);
  CHECK((a * b)(1) == a(b(1)));
  CHECK((a * b) == perm("(0 1 2)", 3));
  CHECK(conjugate(a, b) == perm("(0 2)", 3));
}

TEST_CASE("generate_group orders") {
  CHECK(group(2, {"(0 1)"}).order() == 2);
  CHECK(group(3, {"(0 1)", "(0 1 2)"}).order() == 6);
  CHECK(group(4, {"(0 1 2 3)", "(0 2)"}).order() == 8);
  CHECK(group(3, {"(0 1)", "(0 1 2)"}).order() == oracle::closure(3, {oracle::parse("(0 1)", 3), oracle::parse("(0 1 2)", 3)}).size());
}

TEST_CASE("generate_group respects the order cap") {
  Limits saved = limits();
  Limits l = saved;
  l.max_group_order = 10;
  set_limits(l);
  CHECK_THROWS_AS(group(4, {"(0 1)", "(0 1 2 3)"}), CapExceeded);
  set_limits(saved);
}

TEST_CASE("sylow_subgroup orders") {
  auto s3 = group(3, {"(0 1)", "(0 1 2)"});
  auto s4 = group(4, {"(0 1)", "(0 1 2 3)"});
  CHECK(sylow_subgroup(s3, 2).order() == 2);
  CHECK(sylow_subgroup(s4, 2).order() == 8);
  CHECK(sylow_subgroup(s3, 5).order() == 1);
}

TEST_CASE("transporter_set examples") {
  auto s3 = group(3, {"(0 1)", "(0 1 2)"});
  auto t = transporter_set(s3, trivial_subgroup(s3), trivial_subgroup(s3));
  CHECK(t.size() == 6);
  auto c2 = subgroup_generated(s3, {perm("(0 1)", 3)});
  auto n = transporter_set(s3, c2, c2);
  REQUIRE(n.size() == 2);
  CHECK(n[0].is_identity());
  CHECK(n[1] == perm("(0 1)", 3));

  auto s4 = group(4, {"(0 1)", "(0 1 2 3)"});
  auto p = subgroup_generated(s4, {perm("(0 2)", 4)});
  auto q = subgroup_generated(s4, {perm("(1 3)", 4)});
  auto tr = transporter_set(s4, p, q);
  CHECK(tr.size() == 4);
  for (const auto& g : tr) CHECK(conjugate(g, perm("(0 2)", 4)) == perm("(1 3)", 4));
}

TEST_CASE("subgroup counts") {
  CHECK(pgroup(2, {"(0 1)"})->subgroup_count() == 2);
  CHECK(pgroup(4, {"(0 1 2 3)", "(0 2)"})->subgroup_count() == 10);
  CHECK(pgroup(4, {"(0 1)(2 3)", "(0 2)(1 3)"})->subgroup_count() == 5);
  // C2 x C2 by closure over every element subset.
  auto v4 = oracle::make_group(4, {oracle::parse("(0 1)(2 3)", 4), oracle::parse("(0 2)(1 3)", 4)});
  std::set<oracle::Sub> subs;
  for (int mask = 0; mask < 16; ++mask) {
    std::vector<int> seed;
    for (int i = 0; i < 4; ++i)
      if (mask & (1 << i)) seed.push_back(i);
    subs.insert(oracle::sub_closure(v4, seed));
  }
  CHECK(subs.size() == 5);
}

TEST_CASE("subgroup lattice order: trivial first, whole last") {
  auto d8 = pgroup(4, {"(0 1 2 3)", "(0 2)"});
  CHECK(d8->sub_order(d8->trivial()) == 1);
  CHECK(d8->sub_order(d8->whole()) == 8);
  for (SubId i = 1; i < d8->subgroup_count(); ++i) CHECK(d8->sub_order(i - 1) <= d8->sub_order(i));
}

TEST_CASE("action_core examples") {
  auto s3 = group(3, {"(0 1)", "(0 1 2)"});
  CHECK(action_core(GroupAction::natural(s3), whole_group(s3)).order() == 1);
  const auto& c = built("FIX-C");
  auto core = action_core(c.ambient.action, whole_group(c.ambient.g));
  CHECK(core.order() == 4);
  CHECK(core.contains(perm("(0 1)(2 3)", 4)));
  CHECK(core.contains(perm("(0 2)(1 3)", 4)));
  auto core_s = action_core(c.ambient.action, c.ambient.s);
  CHECK(core_s == intersection(core, c.ambient.s));
  CHECK(core_s.order() == 4);
}

TEST_CASE("x_normalizer and x_centralizer examples") {
  auto s3 = group(3, {"(0 1)", "(0 1 2)"});
  auto h = subgroup_generated(s3, {perm("(0 1)", 3)});
  CHECK(x_normalizer(s3, h, GroupAction::natural(s3)).order() == 1);
  const auto& c = built("FIX-C");
  const auto& g = c.ambient.g;
  auto nd8 = x_normalizer(g, c.ambient.s, c.ambient.action);
  CHECK(nd8.order() == 4);
  auto v4 = subgroup_generated(g, {perm("(0 1)(2 3)", 4), perm("(0 2)(1 3)", 4)});
  auto zv4 = x_centralizer(g, v4, c.ambient.action);
  CHECK(zv4 == v4);
}

TEST_CASE("from_generator_images rejects inconsistent assignments") {
  auto s3 = group(3, {"(0 1)", "(0 1 2)"});
  CHECK_THROWS_AS(GroupAction::from_generator_images(s3, 2, {perm("(0 1)", 3), perm("(0 1 2)", 3)},
                                                     {perm("()", 2), perm("(0 1)", 2)}),
                  InputError);
  auto sign = GroupAction::from_generator_images(s3, 2, {perm("(0 1)", 3), perm("(0 1 2)", 3)},
                                                 {perm("(0 1)", 2), perm("()", 2)});
  CHECK(!sign.is_faithful());
}

// Random groups inside S_6 of order at most 200, checked against the oracle.
TEST_CASE("property: constructors agree with the brute-force oracle on random groups") {
  std::mt19937 rng(12345);
  int tested = 0;
  for (int trial = 0; trial < 60 && tested < 25; ++trial) {
    std::vector<int> pts = {0, 1, 2, 3, 4, 5};
    std::vector<Perm> gens;
    std::vector<oracle::P> ogens;
    int ngens = 1 + static_cast<int>(rng() % 2);
    for (int k = 0; k < ngens; ++k) {
      std::shuffle(pts.begin(), pts.end(), rng);
      std::vector<Point> img(pts.begin(), pts.end());
      gens.emplace_back(img);
      ogens.push_back(oracle::P(pts.begin(), pts.end()));
    }
    auto og = oracle::make_group(6, ogens);
    if (og.order() > 200) continue;
    ++tested;
    auto g = generate_group(6, gens);
    REQUIRE(g.order() == static_cast<std::size_t>(og.order()));
    CHECK(oracle::lib_elements_str(g.elements()) == oracle::elements_str(og, oracle::whole(og)));
    for (unsigned p : {2u, 3u, 5u}) {
      auto s = sylow_subgroup(g, p);
      CHECK(s.order() == oracle::p_part(og.order(), p));
      // Every Sylow subgroup found by a full scan is conjugate to s.
      if (og.order() <= 72) {
        oracle::Sub os;
        for (const auto& e : s.elements()) os.push_back(og.idx.at(oracle::from_lib(e)));
        std::sort(os.begin(), os.end());
        std::set<oracle::Sub> conj;
        for (int x = 0; x < og.order(); ++x) conj.insert(oracle::conjugate(og, x, os));
        for (const auto& h : oracle::subgroups(og, oracle::whole(og)))
          if (h.size() == os.size()) CHECK(conj.count(h) == 1);
      }
      // N_G(S,S) = N_G(S).
      CHECK(transporter_set(g, s, s).size() == normalizer(g, s).order());
    }
  }
  CHECK(tested >= 10);
}

TEST_CASE("property: the action core is normal") {
  for (const auto& name : {"FIX-B", "FIX-A", "FIX-C", "FIX-P"}) {
    const auto& b = built(name);
    auto core = action_core(b.ambient.action, whole_group(b.ambient.g));
    for (const auto& g : b.ambient.g.elements())
      for (const auto& c : core.elements()) CHECK(core.contains(conjugate(g, c)));
  }
}
