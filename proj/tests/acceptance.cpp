// Acceptance runner: one PASS/FAIL line per criterion, non-zero exit on any FAIL.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fusactk/action_system.hpp"
#include "fusactk/error.hpp"
#include "fusactk/fixtures.hpp"
#include "fusactk/linking.hpp"
#include "fusactk/obstruction.hpp"
#include "fusactk/saturation.hpp"
#include "fusactk/subsystems.hpp"
#include "oracle.hpp"

using namespace fusactk;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool cond, const std::string& what) {
    if (cond) return;
    if (pass) detail << "first failure: " << what;
    pass = false;
  }
};

struct Built {
  Ambient ambient;
  FusionActionSystem x;
};

const Built& built(const FixtureSpec& spec) {
  static std::map<std::string, Built> cache;
  auto it = cache.find(spec.name);
  if (it == cache.end()) {
    Built b;
    b.ambient = build_ambient(spec);
    b.x = ambient_fusion_action(b.ambient);
    it = cache.emplace(spec.name, std::move(b)).first;
  }
  return it->second;
}
const Built& built(const std::string& fixture_name) { return built(fixture_spec(fixture_name)); }

std::vector<FixtureSpec> fixtures() { return {builtin_fixtures().begin(), builtin_fixtures().end()}; }

bool saturated_all(const FusionActionSystem& x, bool* agree = nullptr) {
  bool f = check_saturation_full(x).verdict;
  bool r = check_saturation_rs(x).verdict;
  bool s = check_saturation_stancu(x).verdict;
  if (agree) *agree = (f == r) && (f == s);
  return f && r && s;
}

// ---------------------------------------------------------------- criteria

void ambient_saturation(Outcome& o) {
  std::size_t generated = 0;
  auto specs = fixtures();
  for (const auto& g : oracle::generated_triples(true)) {
    specs.push_back(g);
    ++generated;
  }
  for (const auto& spec : specs) {
    const auto& b = built(spec);
    o.require(b.ambient.g.order() <= 2000, spec.name + " exceeds 2000");
    bool agree = false;
    o.require(saturated_all(b.x, &agree), spec.name + " not saturated");
    o.require(agree, spec.name + " checkers disagree");
  }
  o.require(generated >= 10, "fewer than 10 generated triples");
  o.detail << specs.size() << " triples (" << generated << " generated)";
}

void checker_equivalence(Outcome& o) {
  std::vector<FusionActionSystem> bases;
  for (const auto& name : {"FIX-A", "FIX-C", "FIX-P"}) bases.push_back(built(name).x);
  for (const auto& spec : oracle::generated_triples(false))
    if (spec.name == "S4xC2-natural-p2" || spec.name == "S3xS3-natural-p3" || spec.name == "D12-natural-p3")
      bases.push_back(built(spec).x);
  std::size_t total = 0, unsaturated = 0;
  for (const auto& base : bases)
    for (const auto& m : mutate_system(base, 20, 7)) {
      bool agree = false;
      bool sat = saturated_all(m.system, &agree);
      o.require(agree, "checkers disagree on " + m.description);
      ++total;
      if (!sat && agree) ++unsaturated;
    }
  o.require(total >= 50, "fewer than 50 mutants");
  o.detail << total << " mutants, " << unsaturated << " unsaturated";
}

void alperin_completeness(Outcome& o) {
  std::size_t words = 0;
  for (const auto& f : fixtures()) {
    const auto& x = built(f).x;
    const auto& s = x.base();
    for (SubId p = 0; p < s.subgroup_count(); ++p)
      for (const auto& m : x.out(p)) {
        auto w = alperin_factorize(x, m);
        o.require(recompose(x, w) == m, f.name + " word does not recompose");
        o.require(w.orders_increase, f.name + " recursion orders do not increase");
        ++words;
      }
  }
  o.detail << words << " morphisms factored";
}

void faithful_realization(Outcome& o) {
  std::size_t n = 0;
  for (const auto& f : fixtures()) {
    const auto& b = built(f);
    if (b.x.base().sub_order(b.x.core()) != 1) continue;
    auto r = realize_faithful(b.x);
    o.require(r.sylow && r.fusion_equal && r.system_equal, f.name + " round trip differs");
    // The fixtures act faithfully with G, so the realized group has order |G|.
    o.require(r.g.order() == b.ambient.g.order(), f.name + " realized order");
    ++n;
  }
  o.require(n >= 3, "fewer than 3 faithful fixtures");
  o.detail << n << " faithful fixtures";
}

void core_suite(Outcome& o) {
  const auto& c = built("FIX-C");
  auto r = core_subsystem(c.x);
  o.require(r.core_group.order() == 4, "core order");
  bool v4 = true;
  for (const auto& g : {"(0 1)(2 3)", "(0 2)(1 3)"}) v4 = v4 && r.core_group.contains(Perm::parse(g, 4));
  o.require(v4, "core is not V4");
  o.require(r.saturated, "core system not saturated");
  o.require(r.normal(), "core system not normal");
  o.require(r.aschbacher, "Aschbacher condition");
  auto k = kappa_map(c.x);
  o.require(k.well_defined && k.homomorphism, "kappa not a homomorphism");
  o.require(k.injective(), "kappa not injective");
  o.require(k.image_order == 6, "kappa image order");
  o.detail << "|C| = " << r.core_group.order() << ", |im kappa| = " << k.image_order;
}

void k_normalizer_suite(Outcome& o) {
  std::size_t pairs = 0, full = 0;
  for (const auto& name : {"FIX-B", "FIX-C"}) {
    const auto& x = built(name).x;
    const auto& s = x.base();
    for (SubId p = 0; p < s.subgroup_count(); ++p)
      for (const auto& k : aut_pair_subgroups(x, p)) {
        ++pairs;
        auto r = is_fully_k_normalized(x, p, k);
        o.require(r.agree(), std::string(name) + " characterizations disagree");
        if (!r.by_order) continue;
        ++full;
        o.require(saturated_all(k_normalizer_subsystem(x, p, k).subsystem), std::string(name) + " N^K not saturated");
      }
  }
  o.detail << pairs << " pairs, " << full << " fully K-normalized";
}

void linking_suite(Outcome& o) {
  std::size_t checks = 0;
  for (const auto& f : fixtures()) {
    const auto& b = built(f);
    auto fusion = underlying_fusion_system(b.x);
    auto t = ambient_transporter(b.ambient, b.x);
    auto l = ambient_linking_action(b.ambient, b.x);
    auto rt = verify_transporter_axioms(t, fusion);
    auto rl = verify_transporter_axioms(l, fusion);
    auto ra = verify_linking_axioms(l, b.x);
    auto st = verify_linking_structure(l, b.x);
    o.require(rt.ok(), f.name + " transporter axioms");
    o.require(rl.ok(), f.name + " transporter axioms on L");
    o.require(ra.ok(), f.name + " linking axioms");
    o.require(st.ok(), f.name + " structure");
    o.require(ra.checks.count("counting") > 0, f.name + " counting not checked");
    o.require(st.right_lifts && st.factorizations && st.restrictions && st.extensions && st.left_pseudo_lifts,
              f.name + " structure check not exercised");
    const auto& s = b.x.base();
    for (SubId p : l.objects())
      for (SubId q : l.objects())
        o.require(l.hom(p, q).size() == b.x.hom(p, q).size() * s.sub_order(b.x.x_center(p)), f.name + " |L| count");
    for (const auto* r : {&rt, &rl, &ra, &st.report})
      for (const auto& [k, v] : r->checks) checks += v;
  }
  o.detail << checks << " axiom checks";
}

void theta_roundtrips(Outcome& o) {
  for (const auto& f : fixtures()) {
    const auto& b = built(f);
    auto t = ambient_transporter(b.ambient, b.x);
    auto r = fusion_action_from_theta(t, induced_theta(t));
    o.require(r.system == b.x, f.name + " X^theta differs from X_G");
    o.require(r.ok(), f.name + " Ob-saturation checks");
    auto lt = linking_from_theta(t, induced_theta(t));
    o.require(lt.axioms.ok() && lt.complements_ok && lt.composition_well_defined, f.name + " L^theta axioms");
    o.require(compare_via_witnesses(lt.category, ambient_linking_action(b.ambient, b.x)).ok(),
              f.name + " L^theta differs from L");
  }
  o.detail << fixtures().size() << " fixtures";
}

void stabilizer_suite(Outcome& o) {
  const auto& b = built("FIX-B");
  auto st = stabilizer_subsystem(b.x, 2);
  o.require(st.fully_by_order && st.fully_by_sylow, "x = 2 not fully stabilized");
  o.require(st.full && st.full->verdict && st.rs->verdict && st.stancu->verdict, "X_2 not saturated");
  auto sl = stabilizer_linking(ambient_linking_action(b.ambient, b.x), b.x, 2);
  o.require(sl.transporter.ok(), "stabilizer linking transporter axioms");
  auto sc = stabilizer_subconjugacy_check(b.x, 2);
  o.require(sc.ok(), "subconjugacy check");
  o.require(sc.witnesses.size() == 3, "witness count");
  o.detail << sc.witnesses.size() << " witnesses";
}

void obstruction_sanity(Outcome& o) {
  // Zero functor: faithful fixtures have Z(P;X) = 1 everywhere.
  for (const auto& f : fixtures()) {
    const auto& b = built(f);
    if (b.x.base().sub_order(b.x.core()) != 1) continue;
    for (const auto& h : higher_limits(center_functor(b.x).functor)) o.require(h.trivial(), f.name + " zero functor");
  }
  auto z2 = higher_limits(constant_point_functor({1, {{2}}}));
  o.require(z2.size() == 4 && z2[0].str() == "Z/2", "lim^0 of Z/2");
  for (std::size_t n = 1; n < z2.size(); ++n) o.require(z2[n].trivial(), "higher lim of Z/2");
  std::size_t complexes = 0;
  auto specs = fixtures();
  for (const auto& g : oracle::generated_triples(false)) specs.push_back(g);
  for (const auto& spec : specs) {
    const auto& b = built(spec);
    auto cf = center_functor(b.x);
    auto c = bar_complex(cf.functor, 2);
    o.require(differential_squares_to_zero(c), spec.name + " d^2 != 0");
    ++complexes;
    auto h = cohomology(c, 0);
    auto t = oracle::make_triple(spec);
    oracle::adopt_sylow(t, b.ambient);
    o.require(static_cast<std::size_t>(h[0].order()) == oracle::center_lim0_order(t), spec.name + " lim^0");
  }
  for (int m : {2, 3})
    for (long long v : {2, 3, 4, 6}) {
      auto c = bar_complex(oracle::cyclic_group_functor(m, v, false), 3);
      o.require(differential_squares_to_zero(c), "cyclic d^2 != 0");
      ++complexes;
    }
  o.detail << complexes << " complexes";
}

std::string hom_sizes(const AugmentedCategory& c, std::size_t n) {
  std::ostringstream os;
  for (SubId p = 0; p < n; ++p)
    for (SubId q = 0; q < n; ++q) os << c.hom(p, q).size() << ',';
  return os.str();
}

void differential_testing(Outcome& o) {
  std::size_t triples = 0;
  auto specs = fixtures();
  for (const auto& g : oracle::generated_triples(false)) specs.push_back(g);
  for (const auto& spec : specs) {
    const auto& b = built(spec);
    if (b.ambient.g.order() > 200) continue;
    ++triples;
    auto t = oracle::make_triple(spec);
    const std::string& n = spec.name;
    o.require(oracle::lib_elements_str(b.ambient.g.elements()) == oracle::elements_str(t.g, oracle::whole(t.g)),
              n + " group elements");
    o.require(b.ambient.s.order() == oracle::p_part(t.g.order(), t.p), n + " Sylow order");
    oracle::adopt_sylow(t, b.ambient);
    // Sylow conjugacy: |G : N_G(S)| conjugates, and every p-element lies in one.
    std::set<oracle::Sub> conj;
    for (int g = 0; g < t.g.order(); ++g) conj.insert(oracle::conjugate(t.g, g, t.s));
    o.require(conj.size() * oracle::transporter(t.g, t.s, t.s).size() == static_cast<std::size_t>(t.g.order()),
              n + " Sylow normalizer index");
    for (int g = 0; g < t.g.order(); ++g) {
      std::size_t ord = 1;
      for (int y = g; y != 0; y = t.g.mul(y, g)) ++ord;
      if (!oracle::is_p_power(ord, t.p)) continue;
      bool inside = false;
      for (const auto& c : conj) inside = inside || oracle::contains(c, g);
      o.require(inside, n + " p-element outside every Sylow conjugate");
    }
    auto subs = oracle::s_subgroups(t);
    o.require(oracle::subgroup_strings(t.g, subs) == oracle::lib_subgroup_strings(b.x.base()), n + " subgroups");
    auto fusion = ambient_fusion_system(b.ambient.g, b.ambient.s, b.ambient.p);
    o.require(oracle::ambient_homs(t, subs, false) == oracle::lib_homs(fusion), n + " ambient fusion");
    o.require(oracle::ambient_homs(t, subs, true) == oracle::lib_homs(b.x), n + " fusion action");
    o.require(oracle::elements_str(t.g, oracle::kernel(t, t.s)) == oracle::lib_elements_str(b.x.base().perms(b.x.core())),
              n + " core");
    auto tr = ambient_transporter(b.ambient, b.x);
    std::ostringstream expect_t;
    for (std::size_t i = 0; i < subs.size(); ++i)
      for (std::size_t j = 0; j < subs.size(); ++j) expect_t << oracle::transporter(t.g, subs[i], subs[j]).size() << ',';
    o.require(expect_t.str() == hom_sizes(tr, subs.size()), n + " transporter");
    auto l = ambient_linking_action(b.ambient, b.x);
    auto counts = oracle::linking_counts(t, subs);
    std::ostringstream expect_l, got_l;
    for (const auto& [k, v] : counts) {
      expect_l << k.first << '>' << k.second << ':' << v << ',';
      got_l << k.first << '>' << k.second << ':' << l.hom(k.first, k.second).size() << ',';
    }
    std::vector<SubId> objs;
    for (const auto& [k, v] : counts)
      if (k.first == k.second) objs.push_back(static_cast<SubId>(k.first));
    o.require(objs == l.objects(), n + " linking objects");
    o.require(expect_l.str() == got_l.str(), n + " linking hom-sets");
  }
  o.detail << triples << " triples with |G| <= 200";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
      {"ambient saturation", ambient_saturation},
      {"checker equivalence under mutation", checker_equivalence},
      {"Alperin completeness", alperin_completeness},
      {"faithful realization", faithful_realization},
      {"FIX-C core suite", core_suite},
      {"K-normalizer suite", k_normalizer_suite},
      {"linking", linking_suite},
      {"theta round trips", theta_roundtrips},
      {"FIX-B stabilizer suite", stabilizer_suite},
      {"obstruction sanity", obstruction_sanity},
      {"differential testing", differential_testing},
  };
  const std::map<std::size_t, double> budget = {{1, 60}, {3, 120}, {6, 600}};
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    auto b = budget.find(i + 1);
    if (b != budget.end()) o.require(secs < b->second, "over the time budget");
    all = all && o.pass;
    std::printf("%s criterion %zu (%s): %s [%.2fs]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.str().c_str(), secs);
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
