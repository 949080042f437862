#include "fusactk/job.hpp"

#include <algorithm>
#include <memory>
#include <optional>
#include <set>
#include <sstream>

#include "fusactk/error.hpp"
#include "fusactk/linking.hpp"
#include "fusactk/obstruction.hpp"
#include "fusactk/saturation.hpp"
#include "fusactk/subsystems.hpp"

namespace fusactk {

using nlohmann::json;

namespace {

// Allowed parameters per command with their defaults.
const std::map<std::string, json>& command_defaults() {
  static const std::map<std::string, json> d = {
      {"analyze", json::object()},
      {"saturation-check", {{"criterion", "all"}}},
      {"alperin-factor", json::object()},
      {"core", json::object()},
      {"kappa", json::object()},
      {"stabilizer", {{"point", nullptr}}},
      {"k-normalizer", {{"subgroup", json::array()}}},
      {"centric", json::object()},
      {"transporter", json::object()},
      {"linking", json::object()},
      {"theta-roundtrip", json::object()},
      {"obstruction", {{"max_degree", 3}}},
  };
  return d;
}

std::string canonical_perm(const std::string& cycles, std::size_t degree) {
  return Perm::parse(cycles, degree).str();
}

std::vector<std::string> string_list(const json& j, const char* key) {
  if (!j.is_array()) throw InputError(std::string(key) + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& v : j) {
    if (!v.is_string()) throw InputError(std::string(key) + " must be an array of strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

std::size_t unsigned_field(const json& j, const char* key) {
  if (!j.is_number_integer() || j.get<long long>() < 0) throw InputError(std::string(key) + " must be a non-negative integer");
  return j.get<std::size_t>();
}

JobCommand parse_command(const json& c) {
  JobCommand cmd;
  json params = json::object();
  if (c.is_string()) {
    cmd.name = c.get<std::string>();
  } else if (c.is_object()) {
    if (!c.contains("name") || !c["name"].is_string()) throw InputError("command object needs a string name");
    cmd.name = c["name"].get<std::string>();
    for (const auto& [k, v] : c.items())
      if (k != "name") params[k] = v;
  } else {
    throw InputError("commands must be strings or objects");
  }
  auto it = command_defaults().find(cmd.name);
  if (it == command_defaults().end()) throw InputError("unknown command " + cmd.name);
  cmd.params = it->second;
  for (const auto& [k, v] : params.items()) {
    if (!cmd.params.contains(k)) throw InputError("command " + cmd.name + " has no parameter " + k);
    cmd.params[k] = v;
  }
  if (cmd.name == "saturation-check") {
    const auto& c2 = cmd.params["criterion"];
    static const std::set<std::string> ok = {"full", "rs", "stancu", "all"};
    if (!c2.is_string() || !ok.count(c2.get<std::string>())) throw InputError("criterion must be full, rs, stancu or all");
  } else if (cmd.name == "stabilizer") {
    if (cmd.params["point"].is_null()) throw InputError("stabilizer needs a point");
    unsigned_field(cmd.params["point"], "point");
  } else if (cmd.name == "k-normalizer") {
    string_list(cmd.params["subgroup"], "subgroup");
  } else if (cmd.name == "obstruction") {
    std::size_t d = unsigned_field(cmd.params["max_degree"], "max_degree");
    if (d > 5) throw InputError("max_degree must be at most 5");
  }
  return cmd;
}

}  // namespace

const std::vector<std::string>& job_command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [k, v] : command_defaults()) n.push_back(k);
    return n;
  }();
  return names;
}

JobSpec parse_job(const json& j) {
  if (!j.is_object()) throw InputError("job must be a JSON object");
  static const std::set<std::string> keys = {"degree", "group_generators", "prime", "sylow_generators", "action",
                                             "commands"};
  for (const auto& [k, v] : j.items())
    if (!keys.count(k)) throw InputError("unknown job field " + k);
  for (const char* k : {"degree", "group_generators", "prime"})
    if (!j.contains(k)) throw InputError(std::string("job needs ") + k);
  JobSpec s;
  s.degree = unsigned_field(j["degree"], "degree");
  if (s.degree == 0 || s.degree > 64) throw InputError("degree must be between 1 and 64");
  for (const auto& g : string_list(j["group_generators"], "group_generators"))
    s.group_generators.push_back(canonical_perm(g, s.degree));
  if (s.group_generators.empty()) throw InputError("group_generators must not be empty");
  std::size_t p = unsigned_field(j["prime"], "prime");
  if (!is_prime(p)) throw InputError("prime must be a prime");
  s.prime = static_cast<unsigned>(p);
  if (j.contains("sylow_generators"))
    for (const auto& g : string_list(j["sylow_generators"], "sylow_generators"))
      s.sylow_generators.push_back(canonical_perm(g, s.degree));
  if (j.contains("action")) {
    const auto& a = j["action"];
    if (a.is_string()) {
      s.action = a.get<std::string>();
      if (s.action != "natural" && s.action != "point") throw InputError("action must be natural, point or an object");
    } else if (a.is_object()) {
      for (const auto& [k, v] : a.items())
        if (k != "size" && k != "images") throw InputError("unknown action field " + k);
      if (!a.contains("size") || !a.contains("images")) throw InputError("explicit action needs size and images");
      s.action = "images";
      s.action_size = unsigned_field(a["size"], "size");
      if (s.action_size == 0 || s.action_size > 64) throw InputError("action size must be between 1 and 64");
      for (const auto& g : string_list(a["images"], "images"))
        s.action_images.push_back(canonical_perm(g, s.action_size));
      if (s.action_images.size() != s.group_generators.size())
        throw InputError("one action image per group generator expected");
    } else {
      throw InputError("action must be a string or an object");
    }
  }
  if (s.action == "natural") s.action_size = s.degree;
  if (s.action == "point") s.action_size = 1;
  if (j.contains("commands")) {
    if (!j["commands"].is_array()) throw InputError("commands must be an array");
    for (const auto& c : j["commands"]) s.commands.push_back(parse_command(c));
  }
  return s;
}

JobSpec parse_job_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("job is not valid JSON: ") + e.what());
  }
  return parse_job(j);
}

json emit_job(const JobSpec& s) {
  json j;
  j["degree"] = s.degree;
  j["group_generators"] = s.group_generators;
  j["prime"] = s.prime;
  j["sylow_generators"] = s.sylow_generators;
  if (s.action == "images")
    j["action"] = {{"size", s.action_size}, {"images", s.action_images}};
  else
    j["action"] = s.action;
  j["commands"] = json::array();
  for (const auto& c : s.commands) {
    json o = c.params;
    o["name"] = c.name;
    j["commands"].push_back(std::move(o));
  }
  return j;
}

JobSpec job_from_fixture(const FixtureSpec& f) {
  json j;
  j["degree"] = f.degree;
  j["group_generators"] = f.generators;
  j["prime"] = f.prime;
  j["sylow_generators"] = f.sylow_generators;
  if (f.action == "images")
    j["action"] = {{"size", f.action_size}, {"images", f.action_images}};
  else
    j["action"] = f.action;
  return parse_job(j);
}

FixtureSpec job_fixture_spec(const JobSpec& s) {
  FixtureSpec f;
  f.name = "job";
  f.degree = s.degree;
  f.generators = s.group_generators;
  f.prime = s.prime;
  f.sylow_generators = s.sylow_generators;
  f.action = s.action;
  f.action_size = s.action_size;
  f.action_images = s.action_images;
  return f;
}

json list_fixtures_json() {
  json out = json::array();
  for (const auto& f : builtin_fixtures()) {
    json e;
    e["name"] = f.name;
    e["description"] = f.description;
    e["job"] = emit_job(job_from_fixture(f));
    out.push_back(std::move(e));
  }
  return out;
}

// ---------------------------------------------------------------- running

namespace {

std::string sub_str(const PGroup& s, SubId id) {
  const auto& gens = s.sub(id).gens;
  if (gens.empty()) return "1";
  std::string out = "<";
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (i) out += ", ";
    out += s.perm(gens[i]).str();
  }
  return out + ">";
}

json violations_json(const PGroup& s, const std::vector<SatViolation>& v, std::size_t limit = 3) {
  json out = json::array();
  for (std::size_t i = 0; i < v.size() && i < limit; ++i)
    out.push_back({{"subgroup", sub_str(s, v[i].subgroup)}, {"axiom", v[i].axiom}, {"witness", v[i].witness}});
  return out;
}

json axiom_json(const PGroup& s, const AxiomReport& r) {
  json j;
  std::size_t total = 0;
  for (const auto& [k, v] : r.checks) total += v;
  j["ok"] = r.ok();
  j["checks"] = total;
  j["failures"] = r.failures;
  json v = json::array();
  for (std::size_t i = 0; i < r.violations.size() && i < 5; ++i) {
    const auto& e = r.violations[i];
    v.push_back({{"axiom", e.axiom}, {"src", sub_str(s, e.src)}, {"dst", sub_str(s, e.dst)}, {"detail", e.detail}});
  }
  j["violations"] = v;
  return j;
}

json saturation_json(const PGroup& s, const SaturationReport& r) {
  return {{"saturated", r.verdict}, {"violations", r.violations.size()}, {"first", violations_json(s, r.violations)}};
}

struct Context {
  Ambient ambient;
  FusionActionSystem x;
  std::optional<AugmentedCategory> transporter, linking;

  const AugmentedCategory& linking_category() {
    if (!linking) linking = ambient_linking_action(ambient, x);
    return *linking;
  }
  const AugmentedCategory& transporter_category() {
    if (!transporter) transporter = ambient_transporter(ambient, x);
    return *transporter;
  }
};

SubId subgroup_from_generators(const PGroup& s, const std::vector<std::string>& gens) {
  std::vector<Elem> es;
  for (const auto& g : gens) {
    auto idx = s.index_of(Perm::parse(g, s.degree()));
    if (!idx) throw InputError("generator " + g + " is not in S");
    es.push_back(*idx);
  }
  return s.generated(es);
}

bool cmd_analyze(Context& c, json& r) {
  const PGroup& s = c.x.base();
  r["group_order"] = c.ambient.g.order();
  r["sylow_order"] = s.order();
  r["prime"] = c.ambient.p;
  r["set_size"] = c.x.set_size();
  r["faithful"] = c.ambient.action.is_faithful();
  r["subgroups"] = s.subgroup_count();
  r["core"] = sub_str(s, c.x.core());
  r["core_order"] = s.sub_order(c.x.core());
  r["stored_morphisms"] = c.x.stored_count();
  r["conjugacy_classes"] = class_representatives(c.x, classify_all(c.x)).size();
  r["x_centric_subgroups"] = x_centric_subgroups(c.x).size();
  bool ok = true;
  if (c.ambient.action.is_faithful()) {
    RealizationReport rr = realize_faithful(c.x);
    r["realization"] = {{"sylow", rr.sylow}, {"fusion_equal", rr.fusion_equal}, {"system_equal", rr.system_equal},
                        {"group_order", rr.g.order()}};
    ok = rr.sylow && rr.fusion_equal && rr.system_equal;
  }
  return ok;
}

bool cmd_saturation(Context& c, const JobCommand& cmd, json& r) {
  const PGroup& s = c.x.base();
  std::string which = cmd.params["criterion"];
  std::vector<bool> verdicts;
  if (which == "full" || which == "all") {
    auto rep = check_saturation_full(c.x);
    r["full"] = saturation_json(s, rep);
    verdicts.push_back(rep.verdict);
  }
  if (which == "rs" || which == "all") {
    auto rep = check_saturation_rs(c.x);
    r["rs"] = saturation_json(s, rep);
    verdicts.push_back(rep.verdict);
  }
  if (which == "stancu" || which == "all") {
    auto rep = check_saturation_stancu(c.x);
    r["stancu"] = saturation_json(s, rep);
    verdicts.push_back(rep.verdict);
  }
  bool agree = std::adjacent_find(verdicts.begin(), verdicts.end(), std::not_equal_to<>()) == verdicts.end();
  bool saturated = agree && verdicts.front();
  r["agree"] = agree;
  r["verdict"] = saturated ? "saturated" : (agree ? "not saturated" : "checkers disagree");
  return saturated;
}

bool cmd_alperin(Context& c, json& r) {
  const PGroup& s = c.x.base();
  if (!check_saturation_full(c.x).verdict) throw PreconditionError("Alperin factorization needs a saturated system");
  std::size_t count = 0, max_steps = 0, mismatches = 0;
  json first = json::array();
  for (SubId p = 0; p < s.subgroup_count(); ++p)
    for (const auto& m : c.x.out(p)) {
      AlperinWord w = alperin_factorize_unchecked(c.x, m);
      ++count;
      max_steps = std::max(max_steps, w.steps.size());
      if (recompose(c.x, w) != m || w.composite != m) {
        ++mismatches;
        if (first.size() < 3) first.push_back(am_str(s, m));
      }
    }
  r["morphisms"] = count;
  r["max_steps"] = max_steps;
  r["mismatches"] = mismatches;
  r["first_mismatches"] = first;
  return mismatches == 0;
}

bool cmd_core(Context& c, json& r) {
  const PGroup& s = c.x.base();
  CoreResult cr = core_subsystem(c.x);
  r["core"] = sub_str(s, cr.core);
  r["core_order"] = s.sub_order(cr.core);
  r["strongly_closed"] = cr.strongly_closed;
  r["conjugation_invariant"] = cr.conjugation_invariant;
  r["frattini"] = cr.frattini;
  r["saturated"] = cr.saturated;
  r["aschbacher"] = cr.aschbacher;
  r["core_exact"] = cr.core_exact;
  r["normal"] = cr.normal();
  r["invariance_checks"] = cr.invariance_checks;
  r["frattini_witnesses"] = cr.frattini_witnesses.size();
  r["aschbacher_witnesses"] = cr.aschbacher_witnesses.size();
  r["failures"] = cr.failures;
  return cr.normal();
}

bool cmd_kappa(Context& c, json& r) {
  KappaResult k = kappa_map(c.x);
  r["domain_order"] = k.domain.size();
  r["out_order"] = k.out.out_order;
  r["image_order"] = k.image_order;
  r["kernel_order"] = k.kernel_order;
  r["well_defined"] = k.well_defined;
  r["homomorphism"] = k.homomorphism;
  r["injective"] = k.injective();
  r["all_pairs"] = k.all_pairs;
  return k.well_defined && k.homomorphism;
}

bool cmd_stabilizer(Context& c, const JobCommand& cmd, json& r) {
  const PGroup& s = c.x.base();
  std::size_t point = cmd.params["point"];
  if (point >= c.x.set_size()) throw InputError("point outside X");
  StabilizerResult st = stabilizer_subsystem(c.x, point);
  r["point"] = point;
  r["stabilizer"] = sub_str(s, st.stabilizer);
  r["stabilizer_order"] = s.sub_order(st.stabilizer);
  r["transitive"] = st.transitive;
  r["fully_by_order"] = st.fully_by_order;
  r["fully_by_sylow"] = st.fully_by_sylow;
  bool ok = st.fully_by_order == st.fully_by_sylow;
  if (st.full) {
    r["saturation"] = {{"full", st.full->verdict}, {"rs", st.rs->verdict}, {"stancu", st.stancu->verdict}};
    ok = ok && st.full->verdict && st.rs->verdict && st.stancu->verdict;
  }
  if (st.transitive && st.fully_stabilized()) {
    SubconjugacyReport sc = stabilizer_subconjugacy_check(c.x, point);
    r["subconjugacy_witnesses"] = sc.witnesses.size();
    r["subconjugacy_missing"] = sc.missing;
    ok = ok && sc.ok();
  }
  StabilizerLinkingResult sl = stabilizer_linking(c.linking_category(), c.x, point);
  json lj;
  lj["fully_stabilized"] = sl.fully_stabilized;
  lj["objects"] = sl.category.objects().size();
  lj["tokens"] = sl.category.token_count();
  lj["transporter_axioms"] = sl.transporter.ok();
  lj["fusion_saturated"] = sl.fusion_saturated;
  lj["theta_image_in_core"] = sl.theta_image_in_core;
  lj["transporter_iff_sylow"] = sl.transporter_iff_sylow;
  r["linking"] = lj;
  ok = ok && sl.transporter_iff_sylow && sl.fully_stabilized == st.fully_stabilized();
  if (sl.fully_stabilized) ok = ok && sl.transporter.ok() && sl.fusion_saturated && sl.theta_image_in_core;
  return ok;
}

bool cmd_k_normalizer(Context& c, const JobCommand& cmd, json& r) {
  const PGroup& s = c.x.base();
  std::vector<SubId> subs;
  auto gens = cmd.params["subgroup"].get<std::vector<std::string>>();
  if (gens.empty()) {
    for (SubId p = 0; p < s.subgroup_count(); ++p) subs.push_back(p);
  } else {
    subs.push_back(subgroup_from_generators(s, gens));
  }
  std::size_t pairs = 0, agree = 0, fully = 0, saturated = 0, extension_checks = 0, extension_failures = 0;
  json problems = json::array();
  for (SubId p : subs)
    for (const auto& k : aut_pair_subgroups(c.x, p)) {
      ++pairs;
      KNormalizationReport kr = is_fully_k_normalized(c.x, p, k);
      if (kr.agree())
        ++agree;
      else if (problems.size() < 5)
        problems.push_back("characterizations disagree at " + sub_str(s, p) + ", |K| = " + std::to_string(k.size()));
      if (!kr.by_order) continue;
      ++fully;
      KNormalizerSpec ks = k_normalizer_subsystem(c.x, p, k);
      bool sat = check_saturation_full(ks.subsystem).verdict && check_saturation_rs(ks.subsystem).verdict &&
                 check_saturation_stancu(ks.subsystem).verdict;
      if (sat)
        ++saturated;
      else if (problems.size() < 5)
        problems.push_back("unsaturated K-normalizer subsystem at " + sub_str(s, p) + ", |K| = " +
                           std::to_string(k.size()));
      KExtensionReport ex = k_normalizer_extensions(c.x, p, k);
      extension_checks += ex.checked;
      if (!ex.ok()) {
        ++extension_failures;
        if (problems.size() < 5) problems.push_back(ex.missing.front());
      }
    }
  r["subgroups"] = subs.size();
  r["pairs"] = pairs;
  r["characterizations_agree"] = agree;
  r["fully_k_normalized"] = fully;
  r["saturated_subsystems"] = saturated;
  r["extension_checks"] = extension_checks;
  r["extension_failures"] = extension_failures;
  r["problems"] = problems;
  return agree == pairs && saturated == fully && extension_failures == 0;
}

bool cmd_centric(Context& c, json& r) {
  const PGroup& s = c.x.base();
  auto flags = x_centric_classify(c.x, &c.ambient);
  json list = json::array();
  bool ok = true;
  std::size_t count = 0;
  for (SubId p = 0; p < flags.size(); ++p) {
    const auto& f = flags[p];
    if (f.p_centric_at_x && *f.p_centric_at_x != f.f_centric_at_x) ok = false;
    if (f.p_centric && *f.p_centric != f.f_centric) ok = false;
    if (!f.f_centric_at_x) continue;
    ++count;
    list.push_back({{"subgroup", sub_str(s, p)}, {"order", s.sub_order(p)}, {"f_centric", f.f_centric},
                    {"x_center_order", s.sub_order(c.x.x_center(p))}});
  }
  r["x_centric_count"] = count;
  r["x_centric"] = list;
  r["ambient_agrees"] = ok;
  return ok;
}

bool cmd_transporter(Context& c, json& r) {
  const PGroup& s = c.x.base();
  const auto& t = c.transporter_category();
  auto ax = verify_transporter_axioms(t, underlying_fusion_system(c.x));
  auto as = verify_associativity(t);
  r["objects"] = t.objects().size();
  r["tokens"] = t.token_count();
  r["axioms"] = axiom_json(s, ax);
  r["associativity"] = axiom_json(s, as);
  return ax.ok() && as.ok();
}

bool cmd_linking(Context& c, json& r) {
  const PGroup& s = c.x.base();
  const auto& l = c.linking_category();
  auto la = verify_linking_axioms(l, c.x);
  auto ta = verify_transporter_axioms(l, underlying_fusion_system(c.x));
  auto as = verify_associativity(l);
  auto st = verify_linking_structure(l, c.x);
  r["objects"] = l.objects().size();
  r["tokens"] = l.token_count();
  r["linking_axioms"] = axiom_json(s, la);
  r["transporter_axioms"] = axiom_json(s, ta);
  r["associativity"] = axiom_json(s, as);
  r["structure"] = axiom_json(s, st.report);
  r["right_lifts"] = st.right_lifts;
  r["restrictions"] = st.restrictions;
  r["factorizations"] = st.factorizations;
  r["extensions"] = st.extensions;
  r["left_pseudo_lifts"] = st.left_pseudo_lifts;
  r["ambiguous_translates"] = st.ambiguous_translates;
  r["cancellations"] = st.cancellations;
  r["sylow_objects"] = st.sylow_objects;
  return la.ok() && ta.ok() && as.ok() && st.ok();
}

bool cmd_theta(Context& c, json& r) {
  const auto& t = c.transporter_category();
  ThetaResult th = fusion_action_from_theta(t, induced_theta(t));
  bool equal = th.system == c.x;
  r["fusion_action_equal"] = equal;
  r["ob_saturated"] = th.ob_saturation.verdict;
  r["sylow_rows_ok"] = std::all_of(th.sylow.begin(), th.sylow.end(), [](const auto& row) { return row.ok(); });
  auto tc = ambient_transporter(c.ambient, c.x, x_centric_subgroups(c.x));
  LinkingFromTheta lt = linking_from_theta(tc, induced_theta(tc));
  CategoryComparison cmp = compare_via_witnesses(lt.category, c.linking_category());
  r["linking"] = {{"complements_ok", lt.complements_ok},
                  {"composition_well_defined", lt.composition_well_defined},
                  {"axioms_ok", lt.axioms.ok()},
                  {"matches_ambient", cmp.ok()},
                  {"failures", lt.failures},
                  {"comparison_failures", cmp.failures}};
  return equal && th.ok() && lt.complements_ok && lt.composition_well_defined && lt.axioms.ok() && cmp.ok();
}

json invariants_json(const AbelianInvariants& a) {
  json t = json::array();
  for (const auto& d : a.torsion) t.push_back(static_cast<unsigned long long>(d));
  return {{"group", a.str()}, {"invariant_factors", t}, {"free_rank", a.free_rank}};
}

bool cmd_obstruction(Context& c, const JobCommand& cmd, json& r) {
  std::size_t deg = cmd.params["max_degree"];
  CenterFunctor cf = center_functor(c.x);
  FunctorCheck fc = check_functor(cf.functor);
  CochainComplex cx = bar_complex(cf.functor, deg);
  std::vector<std::string> d2f;
  bool d2 = differential_squares_to_zero(cx, &d2f);
  auto lims = cohomology(cx, deg);
  json values = json::array();
  for (const auto& v : cf.functor.values) values.push_back(invariant_factors(v).str());
  json dims = json::array();
  for (std::size_t n = 0; n < cx.degrees.size(); ++n) dims.push_back(cx.dimension(n));
  json lj = json::array();
  for (const auto& l : lims) lj.push_back(invariants_json(l));
  r["objects"] = cf.objects.size();
  r["arrows"] = cf.functor.category.arrows.size();
  r["values"] = values;
  r["functorial"] = fc.ok();
  r["cochain_dimensions"] = dims;
  r["d_squared_zero"] = d2;
  r["limits"] = lj;
  return fc.ok() && d2;
}

}  // namespace

Report run_job(const JobSpec& spec) {
  Report rep;
  json& out = rep.json;
  out["job"] = emit_job(spec);
  out["results"] = json::array();
  auto classify = [](int& exit_code, json& r, const char* kind, const std::string& msg, int code) {
    r["status"] = "error";
    r["error"] = kind;
    r["message"] = msg;
    exit_code = std::max(exit_code, code);
  };
  std::unique_ptr<Context> ctx;
  try {
    ctx = std::make_unique<Context>();
    ctx->ambient = build_ambient(job_fixture_spec(spec));
    ctx->x = ambient_fusion_action(ctx->ambient);
  } catch (const InputError& e) {
    classify(rep.exit_code, out, "input", e.what(), kExitInput);
    return rep;
  } catch (const CapExceeded& e) {
    classify(rep.exit_code, out, "cap", e.what(), kExitCap);
    return rep;
  } catch (const PreconditionError& e) {
    classify(rep.exit_code, out, "precondition", e.what(), kExitInput);
    return rep;
  }
  for (const auto& cmd : spec.commands) {
    json r;
    r["command"] = cmd.name;
    r["params"] = cmd.params;
    try {
      bool ok = false;
      Context& c = *ctx;
      if (cmd.name == "analyze") ok = cmd_analyze(c, r);
      else if (cmd.name == "saturation-check") ok = cmd_saturation(c, cmd, r);
      else if (cmd.name == "alperin-factor") ok = cmd_alperin(c, r);
      else if (cmd.name == "core") ok = cmd_core(c, r);
      else if (cmd.name == "kappa") ok = cmd_kappa(c, r);
      else if (cmd.name == "stabilizer") ok = cmd_stabilizer(c, cmd, r);
      else if (cmd.name == "k-normalizer") ok = cmd_k_normalizer(c, cmd, r);
      else if (cmd.name == "centric") ok = cmd_centric(c, r);
      else if (cmd.name == "transporter") ok = cmd_transporter(c, r);
      else if (cmd.name == "linking") ok = cmd_linking(c, r);
      else if (cmd.name == "theta-roundtrip") ok = cmd_theta(c, r);
      else if (cmd.name == "obstruction") ok = cmd_obstruction(c, cmd, r);
      else throw InputError("unknown command " + cmd.name);
      r["status"] = ok ? "ok" : "fail";
      if (!ok) rep.exit_code = std::max(rep.exit_code, kExitVerification);
    } catch (const InputError& e) {
      classify(rep.exit_code, r, "input", e.what(), kExitInput);
    } catch (const CapExceeded& e) {
      classify(rep.exit_code, r, "cap", e.what(), kExitCap);
    } catch (const PreconditionError& e) {
      classify(rep.exit_code, r, "precondition", e.what(), kExitVerification);
    }
    out["results"].push_back(std::move(r));
  }
  if (!out.contains("status")) out["status"] = rep.exit_code == kExitOk ? "ok" : "fail";
  out["exit_code"] = rep.exit_code;
  return rep;
}

// ---------------------------------------------------------------- text

namespace {

void flatten(const json& j, const std::string& prefix, std::ostringstream& os) {
  for (const auto& [k, v] : j.items()) {
    if (k == "command" || k == "status" || k == "params") continue;
    std::string key = prefix.empty() ? k : prefix + "." + k;
    if (v.is_object()) {
      flatten(v, key, os);
    } else if (v.is_array()) {
      bool scalar = std::all_of(v.begin(), v.end(), [](const json& e) { return e.is_primitive(); });
      if (v.empty()) continue;
      if (scalar) {
        os << "  " << key << ": ";
        for (std::size_t i = 0; i < v.size(); ++i) {
          if (i) os << ", ";
          os << (v[i].is_string() ? v[i].get<std::string>() : v[i].dump());
        }
        os << "\n";
      } else if (std::all_of(v.begin(), v.end(), [](const json& e) { return e.is_object() && e.contains("group"); })) {
        os << "  " << key << ": ";
        for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i]["group"].get<std::string>();
        os << "\n";
      } else {
        os << "  " << key << ": " << v.size() << " entries\n";
      }
    } else {
      os << "  " << key << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    }
  }
}

}  // namespace

std::string report_text(const json& report) {
  std::ostringstream os;
  if (report.contains("error")) {
    os << "error (" << report["error"].get<std::string>() << "): " << report["message"].get<std::string>() << "\n";
    return os.str();
  }
  for (const auto& r : report["results"]) {
    os << r["command"].get<std::string>() << ": " << r["status"].get<std::string>() << "\n";
    flatten(r, "", os);
  }
  os << "status: " << report["status"].get<std::string>() << "\n";
  return os.str();
}

}  // namespace fusactk
