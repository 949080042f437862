#include "fusactk/linking.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

#include "fusactk/error.hpp"

namespace fusactk {

namespace {

constexpr std::size_t kKeepPerAxiom = 5;

std::string sub_str(const PGroup& s, SubId p) {
  return "#" + std::to_string(p) + " (order " + std::to_string(s.sub_order(p)) + ")";
}

std::string pair_str(const PGroup& s, SubId p, SubId q) { return sub_str(s, p) + " -> " + sub_str(s, q); }

const std::vector<Token> kEmptyTokens;
const std::vector<Elem> kEmptyElems;

bool is_identity_hom(const InjectiveHom& h, const PGroup& s) {
  return h.domain == h.codomain && h.images == s.members(h.domain);
}

}  // namespace

// ---------------------------------------------------------------- category

AugmentedCategory AugmentedCategory::assemble(std::shared_ptr<const PGroup> base, std::size_t set_size,
                                              std::vector<SubId> objects, std::vector<TokenInfo> tokens,
                                              const ComposeFn& compose, const DeltaFn& delta) {
  AugmentedCategory c;
  c.base_ = std::move(base);
  c.set_size_ = set_size;
  std::sort(objects.begin(), objects.end());
  objects.erase(std::unique(objects.begin(), objects.end()), objects.end());
  c.objects_ = std::move(objects);
  c.obj_index_.assign(c.base_->subgroup_count(), -1);
  for (std::size_t i = 0; i < c.objects_.size(); ++i) {
    if (c.objects_[i] >= c.base_->subgroup_count()) throw InputError("object id out of range");
    c.obj_index_[c.objects_[i]] = static_cast<int>(i);
  }
  const std::size_t n = c.objects_.size();
  c.tokens_ = std::move(tokens);
  c.homs_.assign(n * n, {});
  c.pos_.resize(c.tokens_.size());
  for (Token t = 0; t < c.tokens_.size(); ++t) {
    const auto& info = c.tokens_[t];
    if (!c.has_object(info.src) || !c.has_object(info.dst)) throw InputError("token between non-objects");
    auto& h = c.homs_[c.pair_index(info.src, info.dst)];
    c.pos_[t] = h.size();
    h.push_back(t);
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const auto& pq = c.homs_[a * n + b];
      if (pq.empty()) continue;
      for (std::size_t d = 0; d < n; ++d) {
        const auto& qr = c.homs_[b * n + d];
        if (qr.empty()) continue;
        c.block_offset_.emplace((a * n + b) * n + d, c.table_.size());
        for (Token u : qr)
          for (Token t : pq) c.table_.push_back(compose(u, t));
      }
    }
  c.delta_elems_.assign(n * n, {});
  c.delta_tokens_.assign(n * n, {});
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      auto elems = c.base_->transporter(c.objects_[a], c.objects_[b]);
      auto& toks = c.delta_tokens_[a * n + b];
      for (Elem e : elems) toks.push_back(delta(c.objects_[a], c.objects_[b], e));
      c.delta_elems_[a * n + b] = std::move(elems);
    }
  return c;
}

std::size_t AugmentedCategory::pair_index(SubId p, SubId q) const {
  if (!has_object(p) || !has_object(q)) throw InputError("subgroup is not an object of the category");
  return static_cast<std::size_t>(obj_index_[p]) * objects_.size() + static_cast<std::size_t>(obj_index_[q]);
}

const std::vector<Token>& AugmentedCategory::hom(SubId p, SubId q) const {
  if (!has_object(p) || !has_object(q)) return kEmptyTokens;
  return homs_[pair_index(p, q)];
}

Token* AugmentedCategory::entry(Token u, Token t) {
  const auto& iu = tokens_.at(u);
  const auto& it = tokens_.at(t);
  if (iu.src != it.dst) throw InputError("tokens are not composable");
  std::size_t pq = pair_index(it.src, it.dst);
  auto f = block_offset_.find(pq * objects_.size() + static_cast<std::size_t>(obj_index_[iu.dst]));
  return &table_[f->second + pos_[u] * homs_[pq].size() + pos_[t]];
}

Token AugmentedCategory::compose(Token u, Token t) const {
  return *const_cast<AugmentedCategory*>(this)->entry(u, t);
}

Token AugmentedCategory::delta(SubId p, SubId q, Elem s) const {
  if (!has_object(p) || !has_object(q)) return kNoToken;
  std::size_t i = pair_index(p, q);
  const auto& el = delta_elems_[i];
  auto it = std::lower_bound(el.begin(), el.end(), s);
  if (it == el.end() || *it != s) return kNoToken;
  return delta_tokens_[i][static_cast<std::size_t>(it - el.begin())];
}

const std::vector<Elem>& AugmentedCategory::delta_domain(SubId p, SubId q) const {
  if (!has_object(p) || !has_object(q)) return kEmptyElems;
  return delta_elems_[pair_index(p, q)];
}

bool AugmentedCategory::is_iso(Token t) const {
  return base_->sub_order(tokens_[t].src) == base_->sub_order(tokens_[t].dst);
}

Token AugmentedCategory::inverse(Token t) const {
  if (!is_iso(t)) return kNoToken;
  const auto& i = tokens_[t];
  Token id_p = identity(i.src), id_q = identity(i.dst);
  for (Token h : hom(i.dst, i.src))
    if (compose(h, t) == id_p && compose(t, h) == id_q) return h;
  return kNoToken;
}

std::optional<Token> AugmentedCategory::by_element(SubId p, SubId q, const Perm& g) const {
  if (element_index_.empty() || !has_object(p) || !has_object(q)) return std::nullopt;
  const auto& m = element_index_[pair_index(p, q)];
  auto it = m.find(g);
  if (it == m.end()) return std::nullopt;
  return it->second;
}

AugmentedCategory AugmentedCategory::with_compose_entry(Token u, Token t, Token result) const {
  AugmentedCategory c = *this;
  *c.entry(u, t) = result;
  return c;
}

AugmentedCategory AugmentedCategory::without_token(Token removed) const {
  std::vector<Token> renum(tokens_.size(), kNoToken), back;
  std::vector<TokenInfo> infos;
  for (Token t = 0; t < tokens_.size(); ++t) {
    if (t == removed) continue;
    renum[t] = static_cast<Token>(back.size());
    back.push_back(t);
    infos.push_back(tokens_[t]);
  }
  auto map = [&](Token x) { return x == kNoToken ? kNoToken : renum[x]; };
  auto c = assemble(
      base_, set_size_, objects_, std::move(infos), [&](Token u, Token t) { return map(compose(back[u], back[t])); },
      [&](SubId p, SubId q, Elem s) { return map(delta(p, q, s)); });
  if (!element_index_.empty()) {
    auto idx = element_index_;
    for (auto& m : idx)
      for (auto it = m.begin(); it != m.end();) {
        if (it->second == removed) {
          it = m.erase(it);
        } else {
          it->second = renum[it->second];
          ++it;
        }
      }
    c.set_element_index(std::move(idx));
  }
  return c;
}

// ---------------------------------------------------------------- ambient

namespace {

SubgroupRef in_ambient(const Ambient& a, const PGroup& s, SubId p) {
  std::vector<std::uint32_t> m;
  for (Elem e : s.members(p)) m.push_back(*a.g.index_of(s.perm(e)));
  std::sort(m.begin(), m.end());
  return SubgroupRef(a.g, std::move(m), false);
}

void check_ambient(const Ambient& a, const FusionActionSystem& x) {
  if (x.base().order() != a.s.order() || x.set_size() != a.action.set_size())
    throw InputError("fusion action system does not belong to the ambient triple");
}

// Tokens are the cosets gK_P of kernel[P] inside N_G(P,Q).
AugmentedCategory coset_category(const Ambient& a, const FusionActionSystem& x, std::vector<SubId> objects,
                                 const std::function<SubgroupRef(SubId)>& kernel) {
  const PGroup& s = x.base();
  std::sort(objects.begin(), objects.end());
  objects.erase(std::unique(objects.begin(), objects.end()), objects.end());
  const std::size_t n = objects.size();
  std::vector<SubgroupRef> refs;
  std::vector<std::vector<Perm>> kernels;
  for (SubId p : objects) {
    refs.push_back(in_ambient(a, s, p));
    kernels.push_back(kernel(p).elements());
  }
  std::vector<TokenInfo> tokens;
  std::vector<std::unordered_map<Perm, Token, PermHash>> index(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      auto& idx = index[i * n + j];
      for (const Perm& g : transporter_set(a.g, refs[i], refs[j])) {
        if (idx.count(g)) continue;
        Token tok = static_cast<Token>(tokens.size());
        TokenInfo info;
        info.src = objects[i];
        info.dst = objects[j];
        info.pi.phi = {objects[i], objects[j], {}};
        Perm ginv = g.inverse();
        for (Elem e : s.members(objects[i])) info.pi.phi.images.push_back(*s.index_of(g * s.perm(e) * ginv));
        info.pi.sigma = a.action(g);
        info.witness = g;
        tokens.push_back(std::move(info));
        for (const Perm& k : kernels[i]) idx.emplace(g * k, tok);
      }
    }
  std::vector<int> pos(s.subgroup_count(), -1);
  for (std::size_t i = 0; i < n; ++i) pos[objects[i]] = static_cast<int>(i);
  auto lookup = [&](SubId p, SubId q, const Perm& g) {
    const auto& m = index[static_cast<std::size_t>(pos[p]) * n + static_cast<std::size_t>(pos[q])];
    auto it = m.find(g);
    return it == m.end() ? kNoToken : it->second;
  };
  auto c = AugmentedCategory::assemble(
      x.base_ptr(), x.set_size(), objects, tokens,
      [&](Token u, Token t) { return lookup(tokens[t].src, tokens[u].dst, *tokens[u].witness * *tokens[t].witness); },
      [&](SubId p, SubId q, Elem e) { return lookup(p, q, s.perm(e)); });
  c.set_element_index(std::move(index));
  return c;
}

}  // namespace

AugmentedCategory ambient_transporter(const Ambient& a, const FusionActionSystem& x, std::vector<SubId> objects) {
  check_ambient(a, x);
  const PGroup& s = x.base();
  if (objects.empty())
    for (SubId p = 0; p < s.subgroup_count(); ++p) objects.push_back(p);
  std::vector<bool> in(s.subgroup_count(), false);
  for (SubId p : objects) {
    if (p >= s.subgroup_count()) throw InputError("object id out of range");
    in[p] = true;
  }
  for (SubId p : objects) {
    for (SubId q : x.conjugates(p))
      if (!in[q]) throw InputError("object set not closed under conjugacy: " + sub_str(s, q) + " missing");
    for (SubId q = 0; q < s.subgroup_count(); ++q)
      if (s.contains(q, p) && !in[q]) throw InputError("object set not closed under overgroups: " + sub_str(s, q) + " missing");
  }
  SubgroupRef one = trivial_subgroup(a.g);
  return coset_category(a, x, std::move(objects), [&](SubId) { return one; });
}

SubgroupRef ambient_linking_kernel(const Ambient& a, const PGroup& s, SubId p) {
  SubgroupRef z = x_centralizer(a.g, in_ambient(a, s, p), a.action);
  std::vector<Perm> gens;
  for (std::uint32_t i : z.members())
    if (a.g.element(i).order() % s.prime() != 0) gens.push_back(a.g.element(i));
  if (gens.empty()) return trivial_subgroup(a.g);
  return subgroup_generated(a.g, gens);
}

AugmentedCategory ambient_linking_action(const Ambient& a, const FusionActionSystem& x, std::vector<SubId> objects) {
  check_ambient(a, x);
  const PGroup& s = x.base();
  auto centric = x_centric_subgroups(x);
  if (objects.empty()) {
    objects = centric;
  } else {
    for (SubId p : objects)
      if (!std::binary_search(centric.begin(), centric.end(), p))
        throw InputError("subgroup " + sub_str(s, p) + " is not X-centric");
  }
  return coset_category(a, x, std::move(objects), [&](SubId p) { return ambient_linking_kernel(a, s, p); });
}

// ---------------------------------------------------------------- reports

void AxiomReport::fail(const std::string& axiom, SubId src, SubId dst, std::string detail) {
  if (++failures[axiom] <= kKeepPerAxiom) violations.push_back({axiom, src, dst, std::move(detail)});
}

void AxiomReport::merge(const AxiomReport& o) {
  for (const auto& [k, v] : o.checks) checks[k] += v;
  for (const auto& [k, v] : o.failures) failures[k] += v;
  violations.insert(violations.end(), o.violations.begin(), o.violations.end());
}

namespace {

// Checks shared by both verifiers: token endpoints, delta endpoints, gaps in
// the composition table, identity laws and functoriality of delta.
void check_category_basics(const AugmentedCategory& t, AxiomReport& r, const std::string& endpoint_axiom) {
  const PGroup& s = t.base();
  const auto& obs = t.objects();
  std::size_t n_end = 0, n_comp = 0, n_id = 0, n_delta = 0;
  for (SubId p : obs)
    for (SubId q : obs) {
      for (Token g : t.hom(p, q)) {
        ++n_end;
        const auto& phi = t.pi(g).phi;
        if (phi.domain != p || phi.codomain != q) r.fail(endpoint_axiom, p, q, "pi does not preserve endpoints");
      }
      for (Elem e : t.delta_domain(p, q)) {
        ++n_end;
        Token d = t.delta(p, q, e);
        if (d == kNoToken) {
          r.fail(endpoint_axiom, p, q, "delta undefined on element " + std::to_string(e));
        } else if (t.info(d).src != p || t.info(d).dst != q) {
          r.fail(endpoint_axiom, p, q, "delta does not preserve endpoints");
        }
      }
    }
  for (SubId p : obs) {
    Token id_p = t.identity(p);
    if (id_p == kNoToken) {
      r.fail("identity", p, p, "no identity token");
      continue;
    }
    for (SubId q : obs) {
      Token id_q = t.identity(q);
      for (Token g : t.hom(p, q)) {
        ++n_id;
        if (t.compose(g, id_p) != g || (id_q != kNoToken && t.compose(id_q, g) != g))
          r.fail("identity", p, q, "identity law fails for token " + std::to_string(g));
      }
    }
  }
  for (SubId p : obs)
    for (SubId q : obs)
      for (SubId w : obs) {
        const auto& pq = t.hom(p, q);
        const auto& qw = t.hom(q, w);
        for (Token u : qw)
          for (Token g : pq) {
            ++n_comp;
            if (t.compose(u, g) == kNoToken)
              r.fail("functoriality", p, w, "composite of tokens " + std::to_string(u) + " and " + std::to_string(g) + " missing");
          }
        for (Elem a : t.delta_domain(p, q))
          for (Elem b : t.delta_domain(q, w)) {
            ++n_delta;
            Token da = t.delta(p, q, a), db = t.delta(q, w, b);
            if (da == kNoToken || db == kNoToken) continue;
            if (t.compose(db, da) != t.delta(p, w, s.mul(b, a)))
              r.fail("functoriality", p, w, "delta is not multiplicative");
          }
      }
  r.add_checks(endpoint_axiom, n_end);
  r.add_checks("identity", n_id);
  r.add_checks("functoriality", n_comp + n_delta);
}

// delta_{Q,Q} token -> element, for membership tests in delta(Q~).
std::unordered_map<Token, Elem> delta_inverse(const AugmentedCategory& t, SubId q) {
  std::unordered_map<Token, Elem> m;
  for (Elem e : t.delta_domain(q, q)) m.emplace(t.delta(q, q, e), e);
  return m;
}

// delta(p~) for p~ in P~ conjugated by the iso g lands in delta(Q~).
bool conjugation_condition(const AugmentedCategory& t, Token g, Token ginv, SubId pt, SubId qt) {
  const PGroup& s = t.base();
  const auto& ig = t.info(g);
  auto dq = delta_inverse(t, ig.dst);
  for (Elem e : s.sub(pt).gens) {
    Token d = t.delta(ig.src, ig.src, e);
    if (d == kNoToken) return false;
    Token c = t.compose(t.compose(g, d), ginv);
    auto it = dq.find(c);
    if (it == dq.end() || !s.contains_elem(qt, it->second)) return false;
  }
  return true;
}

bool is_normal_overgroup(const PGroup& s, SubId small, SubId big) {
  return s.contains(big, small) && s.contains(s.sub(small).normalizer, big);
}

}  // namespace

AxiomReport verify_transporter_axioms(const AugmentedCategory& t, const FusionSystem& f) {
  AxiomReport r;
  const PGroup& s = t.base();
  if (f.base().order() != s.order() || f.base().subgroup_count() != s.subgroup_count())
    throw InputError("fusion system and category live on different groups");
  const auto& obs = t.objects();
  std::size_t n = 0;
  for (SubId p : obs) {
    for (SubId q : f.conjugates(p)) {
      ++n;
      if (!t.has_object(q)) r.fail("objects", p, q, "F-conjugate " + sub_str(s, q) + " is not an object");
    }
    for (SubId q = 0; q < s.subgroup_count(); ++q)
      if (s.contains(q, p)) {
        ++n;
        if (!t.has_object(q)) r.fail("objects", p, q, "overgroup " + sub_str(s, q) + " is not an object");
      }
  }
  r.add_checks("objects", n);
  check_category_basics(t, r, "A1");

  // pi is a functor into F.
  n = 0;
  for (SubId p : obs)
    for (SubId q : obs)
      for (SubId w : obs)
        for (Token u : t.hom(q, w))
          for (Token g : t.hom(p, q)) {
            Token c = t.compose(u, g);
            if (c == kNoToken) continue;
            ++n;
            if (t.pi(c).phi.images != hom_compose(s, t.pi(u).phi, t.pi(g).phi).images)
              r.fail("functoriality", p, w, "pi is not multiplicative on tokens " + std::to_string(u) + ", " + std::to_string(g));
          }
  r.add_checks("functoriality", n);

  // (A2): E(P) acts freely on both sides and pi is the orbit map of E(P).
  std::vector<std::vector<Token>> e_of(s.subgroup_count());
  for (SubId p : obs)
    for (Token g : t.hom(p, p))
      if (is_identity_hom(t.pi(g).phi, s)) e_of[p].push_back(g);
  n = 0;
  for (SubId p : obs)
    for (SubId q : obs) {
      const auto& pq = t.hom(p, q);
      std::map<std::vector<Elem>, std::set<Token>> fibers;
      for (Token g : pq) fibers[t.pi(g).phi.images].insert(g);
      for (Token g : pq) {
        ++n;
        std::set<Token> right, left;
        for (Token e : e_of[p]) right.insert(t.compose(g, e));
        for (Token e : e_of[q]) left.insert(t.compose(e, g));
        if (right.size() != e_of[p].size()) r.fail("A2", p, q, "E(P) does not act freely on the right");
        if (left.size() != e_of[q].size()) r.fail("A2", p, q, "E(Q) does not act freely on the left");
        if (right != fibers[t.pi(g).phi.images]) r.fail("A2", p, q, "pi is not the orbit map of E(P)");
      }
      std::set<std::vector<Elem>> image, target;
      for (const auto& [k, v] : fibers) image.insert(k);
      for (const auto& h : f.hom(p, q)) target.insert(h.images);
      ++n;
      if (image != target)
        r.fail("A2", p, q, "pi hits " + std::to_string(image.size()) + " of " + std::to_string(target.size()) + " morphisms of F");
    }
  r.add_checks("A2", n);

  // (B): delta injective with pi(delta(s)) = c_s.
  n = 0;
  for (SubId p : obs)
    for (SubId q : obs) {
      std::set<Token> seen;
      for (Elem e : t.delta_domain(p, q)) {
        ++n;
        Token d = t.delta(p, q, e);
        if (d == kNoToken) continue;
        if (!seen.insert(d).second) r.fail("B", p, q, "delta is not injective");
        if (t.pi(d).phi.images != hom_conjugation(s, e, p).images) r.fail("B", p, q, "pi(delta(s)) differs from c_s");
      }
    }
  r.add_checks("B", n);

  // (C): g ∘ delta(p) = delta(phi(p)) ∘ g.
  n = 0;
  for (SubId p : obs)
    for (SubId q : obs)
      for (Token g : t.hom(p, q)) {
        const auto& phi = t.pi(g).phi;
        const auto& mem = s.members(p);
        for (std::size_t i = 0; i < mem.size(); ++i) {
          ++n;
          Token dp = t.delta(p, p, mem[i]), dq = t.delta(q, q, phi.images[i]);
          if (dp == kNoToken || dq == kNoToken || t.compose(g, dp) != t.compose(dq, g))
            r.fail("C", p, q, "naturality square fails for token " + std::to_string(g));
        }
      }
  r.add_checks("C", n);

  // (I): delta(S) Sylow in T(S).
  SubId whole = s.whole();
  r.add_checks("I", 1);
  if (!t.has_object(whole)) {
    r.fail("I", whole, whole, "S is not an object");
  } else {
    std::size_t order = t.hom(whole, whole).size();
    if (order == 0 || p_part(order, s.prime()) != s.order())
      r.fail("I", whole, whole, "|T(S)| = " + std::to_string(order) + " has the wrong p-part");
  }

  // (II): extension along normal overgroups.
  n = 0;
  for (SubId p : obs)
    for (SubId q : obs)
      for (Token g : t.hom(p, q)) {
        if (!t.is_iso(g)) continue;
        Token ginv = t.inverse(g);
        if (ginv == kNoToken) {
          r.fail("II", p, q, "iso token " + std::to_string(g) + " has no inverse");
          continue;
        }
        for (SubId pt : obs) {
          if (!is_normal_overgroup(s, p, pt)) continue;
          for (SubId qt : obs) {
            if (!is_normal_overgroup(s, q, qt)) continue;
            if (!conjugation_condition(t, g, ginv, pt, qt)) continue;
            ++n;
            Token target = t.compose(t.inclusion(q, qt), g);
            Token ip = t.inclusion(p, pt);
            bool found = false;
            for (Token h : t.hom(pt, qt))
              if (t.compose(h, ip) == target) {
                found = true;
                break;
              }
            if (!found) r.fail("II", p, q, "no extension of token " + std::to_string(g) + " to " + pair_str(s, pt, qt));
          }
        }
      }
  r.add_checks("II", n);
  return r;
}

AxiomReport verify_linking_axioms(const AugmentedCategory& l, const FusionActionSystem& x) {
  AxiomReport r;
  const PGroup& s = l.base();
  if (x.base().order() != s.order() || x.base().subgroup_count() != s.subgroup_count())
    throw InputError("fusion action system and category live on different groups");
  const auto& obs = l.objects();
  r.add_checks("objects", 1);
  if (obs != x_centric_subgroups(x)) r.fail("objects", 0, 0, "objects differ from the X-centric subgroups");
  check_category_basics(l, r, "endpoints");

  std::size_t n = 0;
  for (SubId p : obs)
    for (SubId q : obs)
      for (SubId w : obs)
        for (Token u : l.hom(q, w))
          for (Token g : l.hom(p, q)) {
            Token c = l.compose(u, g);
            if (c == kNoToken) continue;
            ++n;
            if (l.pi(c) != am_compose(s, l.pi(u), l.pi(g)))
              r.fail("functoriality", p, w, "pi is not multiplicative on tokens " + std::to_string(u) + ", " + std::to_string(g));
          }
  r.add_checks("functoriality", n);

  std::size_t n_pi = 0, n_a = 0, n_b = 0, n_c = 0, n_count = 0;
  for (SubId p : obs) {
    const auto& zp = s.members(x.x_center(p));
    for (SubId q : obs) {
      const auto& pq = l.hom(p, q);
      std::map<ActionMorphism, std::set<Token>> fibers;
      for (Token g : pq) {
        ++n_pi;
        fibers[l.pi(g)].insert(g);
        if (!x.contains(l.pi(g))) r.fail("pi", p, q, "pi(token " + std::to_string(g) + ") is not a morphism of X");
      }
      auto target = x.hom(p, q);
      std::set<ActionMorphism> image, want(target.begin(), target.end());
      for (const auto& [k, v] : fibers) image.insert(k);
      ++n_pi;
      if (image != want)
        r.fail("pi", p, q, "pi hits " + std::to_string(image.size()) + " of " + std::to_string(want.size()) + " morphisms");
      ++n_count;
      if (pq.size() != want.size() * zp.size())
        r.fail("counting", p, q, std::to_string(pq.size()) + " tokens, expected " + std::to_string(want.size()) + " x " +
                                     std::to_string(zp.size()));
      // (A): Z(P;X) acts freely on the right with pi as orbit map.
      for (Token g : pq) {
        ++n_a;
        std::set<Token> orbit;
        for (Elem z : zp) {
          Token d = l.delta(p, p, z);
          if (d != kNoToken) orbit.insert(l.compose(g, d));
        }
        if (orbit.size() != zp.size()) r.fail("A", p, q, "Z(P;X) does not act freely on token " + std::to_string(g));
        if (orbit != fibers[l.pi(g)]) r.fail("A", p, q, "pi is not the orbit map of Z(P;X)");
      }
      // (B): delta injective, pi(delta(s)) = (c_s, l_s).
      std::set<Token> seen;
      for (Elem e : l.delta_domain(p, q)) {
        ++n_b;
        Token d = l.delta(p, q, e);
        if (d == kNoToken) continue;
        if (!seen.insert(d).second) r.fail("B", p, q, "delta is not injective");
        ActionMorphism want_pi = am_conjugation(x, e, p);
        want_pi.phi.codomain = q;
        if (l.pi(d) != want_pi) r.fail("B", p, q, "pi(delta(s)) differs from (c_s, l_s)");
      }
      // (C)
      const auto& mem = s.members(p);
      for (Token g : pq) {
        const auto& phi = l.pi(g).phi;
        for (std::size_t i = 0; i < mem.size(); ++i) {
          ++n_c;
          Token dp = l.delta(p, p, mem[i]), dq = l.delta(q, q, phi.images[i]);
          if (dp == kNoToken || dq == kNoToken || l.compose(g, dp) != l.compose(dq, g))
            r.fail("C", p, q, "naturality square fails for token " + std::to_string(g));
        }
      }
    }
  }
  r.add_checks("pi", n_pi);
  r.add_checks("A", n_a);
  r.add_checks("B", n_b);
  r.add_checks("C", n_c);
  r.add_checks("counting", n_count);
  return r;
}

AxiomReport verify_associativity(const AugmentedCategory& t, std::size_t max_triples) {
  AxiomReport r;
  std::size_t n = 0;
  const auto& obs = t.objects();
  for (SubId p : obs)
    for (SubId q : obs)
      for (SubId w : obs)
        for (SubId v : obs)
          for (Token a : t.hom(p, q))
            for (Token b : t.hom(q, w))
              for (Token c : t.hom(w, v)) {
                if (n >= max_triples) {
                  r.add_checks("associativity", n);
                  return r;
                }
                ++n;
                Token ab = t.compose(b, a), bc = t.compose(c, b);
                if (ab == kNoToken || bc == kNoToken) continue;
                if (t.compose(c, ab) != t.compose(bc, a)) r.fail("associativity", p, v, "composition is not associative");
              }
  r.add_checks("associativity", n);
  return r;
}

// ---------------------------------------------------------------- token operations

Token lift_right(const AugmentedCategory& l, Token g, Token composite, const ActionMorphism& declared) {
  const PGroup& s = l.base();
  const auto& ig = l.info(g);
  const auto& ic = l.info(composite);
  if (ic.dst != ig.dst || declared.phi.domain != ic.src) throw InputError("lift_right: inputs are not composable");
  SubId p = ic.src, q = ig.src;
  if (!s.contains(q, hom_image(s, declared.phi))) throw InputError("lift_right: declared morphism does not land in the source of g");
  ActionMorphism d = declared;
  d.phi.codomain = q;
  if (am_compose(s, l.pi(g), d) != l.pi(composite))
    throw PreconditionError("lift_right: pi(g) composed with the declared morphism is not pi(composite)");
  Token found = kNoToken;
  for (Token h : l.hom(p, q))
    if (l.pi(h) == d && l.compose(g, h) == composite) {
      if (found != kNoToken) throw PreconditionError("lift_right: lift is not unique (axiom violation)");
      found = h;
    }
  if (found == kNoToken) throw PreconditionError("lift_right: no lift exists (axiom violation)");
  return found;
}

Token restrict_token(const AugmentedCategory& l, Token g, SubId p_star, SubId q_star) {
  const PGroup& s = l.base();
  const auto& ig = l.info(g);
  if (!l.has_object(p_star) || !l.has_object(q_star)) throw InputError("restrict_token: subgroup is not an object");
  if (!s.contains(ig.src, p_star) || !s.contains(ig.dst, q_star))
    throw PreconditionError("restrict_token: not subgroups of the source and target");
  for (Elem e : s.members(p_star))
    if (!s.contains_elem(q_star, hom_apply(s, l.pi(g).phi, e)))
      throw PreconditionError("restrict_token: c_g(P*) is not contained in Q*");
  Token target = l.compose(g, l.inclusion(p_star, ig.src));
  Token iq = l.inclusion(q_star, ig.dst);
  Token found = kNoToken;
  for (Token h : l.hom(p_star, q_star))
    if (l.compose(iq, h) == target) {
      if (found != kNoToken) throw PreconditionError("restrict_token: restriction is not unique (axiom violation)");
      found = h;
    }
  if (found == kNoToken) throw PreconditionError("restrict_token: no restriction exists (axiom violation)");
  return found;
}

Token extend_token(const AugmentedCategory& l, Token g, SubId p_tilde, SubId q_tilde) {
  const PGroup& s = l.base();
  const auto& ig = l.info(g);
  if (!l.has_object(p_tilde) || !l.has_object(q_tilde)) throw InputError("extend_token: subgroup is not an object");
  if (!l.is_iso(g)) throw PreconditionError("extend_token: token is not an isomorphism");
  if (!is_normal_overgroup(s, ig.src, p_tilde) || !is_normal_overgroup(s, ig.dst, q_tilde))
    throw PreconditionError("extend_token: targets are not normal overgroups");
  Token ginv = l.inverse(g);
  if (ginv == kNoToken) throw PreconditionError("extend_token: token has no inverse (axiom violation)");
  if (!conjugation_condition(l, g, ginv, p_tilde, q_tilde))
    throw PreconditionError("extend_token: g delta(P~) g^-1 is not inside delta(Q~)");
  Token target = l.compose(l.inclusion(ig.dst, q_tilde), g);
  Token ip = l.inclusion(ig.src, p_tilde);
  Token found = kNoToken;
  for (Token h : l.hom(p_tilde, q_tilde))
    if (l.compose(h, ip) == target) {
      if (found != kNoToken) throw PreconditionError("extend_token: extension is not unique (axiom violation)");
      found = h;
    }
  if (found == kNoToken) throw PreconditionError("extend_token: no extension exists (axiom violation)");
  if (restrict_token(l, found, ig.src, ig.dst) != g) throw PreconditionError("extend_token: extension does not restrict back");
  return found;
}

Factorization factor_token(const AugmentedCategory& l, Token g) {
  const PGroup& s = l.base();
  const auto& ig = l.info(g);
  SubId image = hom_image(s, l.pi(g).phi);
  if (!l.has_object(image)) throw PreconditionError("factor_token: image " + sub_str(s, image) + " is not an object");
  Factorization f;
  f.iso = restrict_token(l, g, ig.src, image);
  f.inclusion = l.inclusion(image, ig.dst);
  if (l.compose(f.inclusion, f.iso) != g) throw PreconditionError("factor_token: factorization does not recompose");
  return f;
}

// ---------------------------------------------------------------- structure

StructureReport verify_linking_structure(const AugmentedCategory& l, const FusionActionSystem& x) {
  StructureReport out;
  AxiomReport& r = out.report;
  const PGroup& s = l.base();
  const auto& obs = l.objects();
  std::vector<char> seen(l.token_count(), 0);

  std::map<std::pair<SubId, SubId>, std::map<ActionMorphism, std::vector<Token>>> fibers;
  for (SubId p : obs)
    for (SubId q : obs) {
      auto& f = fibers[{p, q}];
      for (Token g : l.hom(p, q)) f[l.pi(g)].push_back(g);
    }
  auto fiber = [&](SubId p, SubId q, const ActionMorphism& m) -> const std::vector<Token>* {
    const auto& f = fibers[{p, q}];
    auto it = f.find(m);
    return it == f.end() ? nullptr : &it->second;
  };

  // Right lifting, mono and epi over every composable pair.
  for (SubId p : obs)
    for (SubId q : obs)
      for (SubId w : obs) {
        const auto& pq = l.hom(p, q);
        const auto& qw = l.hom(q, w);
        if (pq.empty() || qw.empty()) continue;
        for (Token g : qw) {
          for (const auto& [m, fib] : fibers[{p, q}]) {
            const auto* target = fiber(p, w, am_compose(s, l.pi(g), m));
            ++out.right_lifts;
            if (!target || target->size() != fib.size()) {
              r.fail("right lifting", p, w, "composite fiber has the wrong size");
              continue;
            }
            std::set<Token> hit;
            for (Token h : fib) {
              Token c = l.compose(g, h);
              if (std::find(target->begin(), target->end(), c) != target->end()) hit.insert(c);
            }
            if (hit.size() != target->size()) r.fail("right lifting", p, w, "lifts are not unique for token " + std::to_string(g));
            Token h0 = fib.front();
            try {
              if (lift_right(l, g, l.compose(g, h0), m) != h0) r.fail("right lifting", p, w, "lift_right returned another token");
            } catch (const std::exception& e) {
              r.fail("right lifting", p, w, e.what());
            }
          }
          std::vector<Token> touched;
          bool mono = true;
          for (Token h : pq) {
            Token c = l.compose(g, h);
            if (c == kNoToken) continue;
            if (seen[c]) mono = false;
            seen[c] = 1;
            touched.push_back(c);
          }
          for (Token c : touched) seen[c] = 0;
          ++out.cancellations;
          if (!mono) r.fail("mono", p, w, "token " + std::to_string(g) + " is not left-cancellable");
        }
        for (Token h : pq) {
          std::vector<Token> touched;
          bool epi = true;
          for (Token g : qw) {
            Token c = l.compose(g, h);
            if (c == kNoToken) continue;
            if (seen[c]) epi = false;
            seen[c] = 1;
            touched.push_back(c);
          }
          for (Token c : touched) seen[c] = 0;
          ++out.cancellations;
          if (!epi) r.fail("epi", p, w, "token " + std::to_string(h) + " is not right-cancellable");
        }
      }
  r.add_checks("right lifting", out.right_lifts);
  r.add_checks("mono", out.cancellations);
  r.add_checks("epi", out.cancellations);

  // Restrictions and factorizations.
  for (SubId p : obs)
    for (SubId q : obs)
      for (Token g : l.hom(p, q)) {
        const auto& phi = l.pi(g).phi;
        for (SubId ps : obs) {
          if (!s.contains(p, ps)) continue;
          for (SubId qs : obs) {
            if (!s.contains(q, qs)) continue;
            bool inside = true;
            for (Elem e : s.members(ps))
              if (!s.contains_elem(qs, hom_apply(s, phi, e))) {
                inside = false;
                break;
              }
            if (!inside) continue;
            ++out.restrictions;
            try {
              Token h = restrict_token(l, g, ps, qs);
              if (ps == p && qs == q && h != g) r.fail("restriction", p, q, "restriction to (P,Q) is not g");
            } catch (const std::exception& e) {
              r.fail("restriction", ps, qs, e.what());
            }
          }
        }
        ++out.factorizations;
        try {
          auto f = factor_token(l, g);
          if (!l.is_iso(f.iso)) r.fail("factorization", p, q, "first factor is not an isomorphism");
          if (l.is_iso(g) && (f.iso != g || f.inclusion != l.identity(q)))
            r.fail("factorization", p, q, "iso does not factor trivially");
        } catch (const std::exception& e) {
          r.fail("factorization", p, q, e.what());
        }
      }
  r.add_checks("restriction", out.restrictions);
  r.add_checks("factorization", out.factorizations);

  // Extensions of isomorphisms to normal overgroups.
  for (SubId p : obs)
    for (SubId q : obs)
      for (Token g : l.hom(p, q)) {
        if (!l.is_iso(g)) continue;
        Token ginv = l.inverse(g);
        if (ginv == kNoToken) {
          r.fail("extension", p, q, "iso without inverse");
          continue;
        }
        for (SubId pt : obs) {
          if (!is_normal_overgroup(s, p, pt)) continue;
          for (SubId qt : obs) {
            if (!is_normal_overgroup(s, q, qt) || !conjugation_condition(l, g, ginv, pt, qt)) continue;
            ++out.extensions;
            try {
              extend_token(l, g, pt, qt);
            } catch (const std::exception& e) {
              r.fail("extension", p, q, e.what());
            }
          }
        }
      }
  r.add_checks("extension", out.extensions);

  // Left pseudo-lifting.
  for (SubId p : obs) {
    const auto& zp = s.members(x.x_center(p));
    for (SubId q : obs)
      for (SubId w : obs) {
        const auto& pq = l.hom(p, q);
        const auto& qw = l.hom(q, w);
        if (pq.empty() || qw.empty()) continue;
        auto xs = x.hom(q, w);
        for (Token h : pq) {
          std::unordered_map<Token, Token> left;  // g ∘ h -> g
          for (Token g : qw) left.emplace(l.compose(g, h), g);
          const auto& phi = l.pi(h).phi;
          for (const auto& psi : xs) {
            const auto* gfib = fiber(q, w, psi);
            const auto* cfib = fiber(p, w, am_compose(s, psi, l.pi(h)));
            if (!gfib || !cfib) {
              r.fail("left pseudo-lifting", p, w, "missing fiber");
              continue;
            }
            Token g1 = gfib->front();
            Token g1h = l.compose(g1, h);
            for (Token c : *cfib) {
              ++out.left_pseudo_lifts;
              auto it = left.find(c);
              if (it == left.end()) {
                r.fail("left pseudo-lifting", p, w, "no g with g h = composite");
                continue;
              }
              Token g = it->second;
              std::vector<Elem> zs;
              for (Elem z : zp)
                if (l.compose(g1h, l.delta(p, p, z)) == c) zs.push_back(z);
              if (zs.size() != 1) {
                r.fail("left pseudo-lifting", p, w, std::to_string(zs.size()) + " translates z in Z(P;X)");
                continue;
              }
              Elem fz = hom_apply(s, phi, zs[0]);
              if (l.compose(g1, l.delta(q, q, fz)) != g) r.fail("left pseudo-lifting", p, w, "g differs from g' composed with phi(z)");
              ActionMorphism cz = am_conjugation(x, fz, q);
              cz.phi.codomain = q;
              if (l.pi(g) != am_compose(s, psi, cz)) r.fail("left pseudo-lifting", p, w, "pi(g) is not the translate");
              std::size_t matches = 0;
              for (Elem z : zp) {
                ActionMorphism cw = am_conjugation(x, hom_apply(s, phi, z), q);
                cw.phi.codomain = q;
                if (l.pi(g) == am_compose(s, psi, cw)) ++matches;
              }
              if (matches > 1) ++out.ambiguous_translates;
            }
          }
        }
      }
  }
  r.add_checks("left pseudo-lifting", out.left_pseudo_lifts);

  // Sylow at fully normalized objects and the free left Q-action.
  auto table = classify_all(x);
  for (SubId p : obs) {
    if (!table.flags[p].normalized) continue;
    ++out.sylow_objects;
    std::size_t order = l.hom(p, p).size();
    if (order == 0 || p_part(order, s.prime()) != s.sub_order(s.sub(p).normalizer))
      r.fail("sylow", p, p, "delta(N_S(P)) is not Sylow in L(P)");
  }
  r.add_checks("sylow", out.sylow_objects);
  for (SubId p : obs)
    for (SubId q : obs) {
      std::vector<ActionMorphism> conj;
      std::vector<Token> dq;
      for (Elem e : s.members(q)) {
        ActionMorphism c = am_conjugation(x, e, q);
        c.phi.codomain = q;
        conj.push_back(std::move(c));
        dq.push_back(l.delta(q, q, e));
      }
      for (Token g : l.hom(p, q)) {
        ++out.target_orbits;
        std::set<Token> a, b;
        for (Token d : dq) a.insert(l.compose(d, g));
        std::set<ActionMorphism> orbit;
        for (const auto& c : conj) orbit.insert(am_compose(s, c, l.pi(g)));
        for (const auto& m : orbit)
          if (const auto* f = fiber(p, q, m)) b.insert(f->begin(), f->end());
        if (a.size() != dq.size()) r.fail("target action", p, q, "Q does not act freely");
        if (a != b) r.fail("target action", p, q, "pi-bar is not the orbit map of Q");
      }
    }
  r.add_checks("target action", out.target_orbits);
  return out;
}

// ---------------------------------------------------------------- orbit category

const std::vector<std::vector<ActionMorphism>>& OrbitCategory::hom(SubId p, SubId q) const {
  static const std::vector<std::vector<ActionMorphism>> empty;
  auto it = orbits.find({p, q});
  return it == orbits.end() ? empty : it->second;
}

std::size_t OrbitCategory::orbit_of(SubId p, SubId q, const ActionMorphism& m) const {
  auto it = orbit_index.find({p, q});
  if (it == orbit_index.end()) throw InputError("orbit_of: not a pair of objects");
  auto jt = it->second.find(m);
  if (jt == it->second.end()) throw InputError("orbit_of: morphism not in the hom-set");
  return jt->second;
}

OrbitCategory orbit_category(const FusionActionSystem& x, bool centric_only) {
  const PGroup& s = x.base();
  OrbitCategory o;
  if (centric_only) {
    o.objects = x_centric_subgroups(x);
  } else {
    for (SubId p = 0; p < s.subgroup_count(); ++p) o.objects.push_back(p);
  }
  for (SubId p : o.objects)
    for (SubId q : o.objects) {
      std::vector<ActionMorphism> conj;
      for (Elem e : s.members(q)) {
        ActionMorphism c = am_conjugation(x, e, q);
        c.phi.codomain = q;
        conj.push_back(std::move(c));
      }
      auto& orbits = o.orbits[{p, q}];
      auto& index = o.orbit_index[{p, q}];
      for (const auto& m : x.hom(p, q)) {
        if (index.count(m)) continue;
        std::set<ActionMorphism> orbit;
        for (const auto& c : conj) orbit.insert(am_compose(s, c, m));
        for (const auto& e : orbit) index.emplace(e, orbits.size());
        orbits.emplace_back(orbit.begin(), orbit.end());
      }
    }
  o.composition_well_defined = true;
  for (SubId p : o.objects)
    for (SubId q : o.objects)
      for (SubId w : o.objects)
        for (const auto& a : o.hom(q, w))
          for (const auto& b : o.hom(p, q)) {
            std::size_t want = o.orbit_of(p, w, am_compose(s, a.front(), b.front()));
            for (const auto& u : a)
              for (const auto& v : b)
                if (o.orbit_of(p, w, am_compose(s, u, v)) != want) o.composition_well_defined = false;
          }
  return o;
}

// ---------------------------------------------------------------- theta

ThetaMap induced_theta(const AugmentedCategory& t) {
  ThetaMap th;
  th.reserve(t.token_count());
  for (Token g = 0; g < t.token_count(); ++g) th.push_back(t.pi(g).sigma);
  return th;
}

void validate_theta(const AugmentedCategory& t, const ThetaMap& theta) {
  if (theta.size() != t.token_count()) throw InputError("theta must assign a permutation to every token");
  for (const auto& p : theta)
    if (p.degree() != t.set_size()) throw InputError("theta value has the wrong degree");
  const auto& obs = t.objects();
  for (SubId p : obs)
    for (SubId q : obs) {
      Token inc = t.inclusion(p, q);
      if (inc != kNoToken && !theta[inc].is_identity()) throw InputError("theta is not trivial on an inclusion");
      for (SubId w : obs)
        for (Token u : t.hom(q, w))
          for (Token g : t.hom(p, q)) {
            Token c = t.compose(u, g);
            if (c == kNoToken) throw InputError("theta: composition table has a gap");
            if (theta[c] != theta[u] * theta[g]) throw InputError("theta does not send composition to multiplication");
          }
    }
}

bool ThetaResult::ok() const {
  if (!ob_saturation.violations.empty()) return false;
  for (const auto& row : sylow)
    if (!row.ok()) return false;
  return true;
}

ThetaResult fusion_action_from_theta(const AugmentedCategory& t, const ThetaMap& theta) {
  validate_theta(t, theta);
  const PGroup& s = t.base();
  SubId whole = s.whole();
  if (!t.has_object(whole)) throw PreconditionError("S must be an object");
  SAction act;
  act.set_size = t.set_size();
  for (Elem e = 0; e < s.order(); ++e) {
    Token d = t.delta(whole, whole, e);
    if (d == kNoToken) throw PreconditionError("delta_{S,S} is incomplete");
    act.ell.push_back(theta[d]);
  }
  std::vector<ActionMorphism> gens;
  for (Token g = 0; g < t.token_count(); ++g) gens.push_back(am_normalize(s, {t.pi(g).phi, theta[g]}));
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  ThetaResult res;
  res.system = FusionActionSystem::generate(t.base_ptr(), std::move(act), gens);
  auto full = check_saturation_full(res.system);
  res.ob_saturation.criterion = Criterion::full;
  for (auto& v : full.violations)
    if (t.has_object(v.subgroup)) res.ob_saturation.violations.push_back(std::move(v));
  res.ob_saturation.verdict = res.ob_saturation.violations.empty();

  auto table = classify_all(res.system);
  const unsigned p = s.prime();
  auto sylow = [&](std::size_t sub, std::size_t group) { return group > 0 && p_part(group, p) == sub; };
  for (SubId q : t.objects()) {
    ThetaSylowRow row;
    row.subgroup = q;
    for (Token g : t.hom(q, q)) {
      bool e = is_identity_hom(t.pi(g).phi, s);
      bool k = theta[g].is_identity();
      row.e += e;
      row.k += k;
      row.ek += e && k;
      ++row.t;
    }
    const auto& f = table.flags[q];
    row.normalized_ok = f.normalized == sylow(s.sub_order(s.sub(q).normalizer), row.t);
    row.centralized_ok = f.centralized == sylow(s.sub_order(s.sub(q).centralizer), row.e);
    row.x_normalized_ok = f.x_normalized == sylow(s.sub_order(res.system.x_normalizer(q)), row.k);
    row.x_centralized_ok = f.x_centralized == sylow(s.sub_order(res.system.x_centralizer(q)), row.ek);
    res.sylow.push_back(row);
  }
  return res;
}

LinkingFromTheta linking_from_theta(const AugmentedCategory& t, const ThetaMap& theta) {
  LinkingFromTheta out;
  const PGroup& s = t.base();
  auto th = fusion_action_from_theta(t, theta);
  out.system = th.system;
  auto objects = x_centric_subgroups(out.system);
  for (SubId p : objects)
    if (!t.has_object(p)) throw PreconditionError("X-centric subgroup " + sub_str(s, p) + " is not an object");

  // EK'(P): p'-elements of E(P) ∩ K(P).
  out.complements_ok = true;
  std::vector<std::vector<Token>> ekp(s.subgroup_count());
  for (SubId p : objects) {
    Token id = t.identity(p);
    std::vector<Token> ek;
    for (Token g : t.hom(p, p))
      if (is_identity_hom(t.pi(g).phi, s) && theta[g].is_identity()) ek.push_back(g);
    std::vector<Token> prime_free;
    for (Token g : ek) {
      std::size_t order = 1;
      for (Token c = g; c != id; c = t.compose(g, c)) ++order;
      if (order % s.prime() != 0) prime_free.push_back(g);
    }
    std::sort(prime_free.begin(), prime_free.end());
    bool closed = true;
    for (Token a : prime_free)
      for (Token b : prime_free)
        if (!std::binary_search(prime_free.begin(), prime_free.end(), t.compose(a, b))) closed = false;
    const auto& z = s.members(out.system.x_center(p));
    bool z_inside = true;
    for (Elem e : z)
      if (std::find(ek.begin(), ek.end(), t.delta(p, p, e)) == ek.end()) z_inside = false;
    if (!closed) out.failures.push_back("EK'(" + sub_str(s, p) + ") is not a subgroup");
    if (ek.size() != z.size() * prime_free.size())
      out.failures.push_back("|E∩K| != |Z(P;X)|·|EK'| at " + sub_str(s, p));
    if (!z_inside) out.failures.push_back("Z(P;X) is not inside E∩K at " + sub_str(s, p));
    out.complements_ok = out.complements_ok && closed && z_inside && ek.size() == z.size() * prime_free.size();
    out.ek_prime.push_back(prime_free.size());
    ekp[p] = std::move(prime_free);
  }

  // Classes t ∘ EK'(P), represented by their least token.
  std::vector<Token> cls(t.token_count(), kNoToken), rep;
  std::vector<TokenInfo> infos;
  bool pi_ok = true;
  for (SubId p : objects)
    for (SubId q : objects)
      for (Token g : t.hom(p, q)) {
        if (cls[g] != kNoToken) continue;
        Token c = static_cast<Token>(rep.size());
        rep.push_back(g);
        TokenInfo info = t.info(g);
        info.pi.sigma = theta[g];
        for (Token k : ekp[p]) {
          Token m = t.compose(g, k);
          cls[m] = c;
          if (t.pi(m).phi != info.pi.phi || theta[m] != info.pi.sigma) pi_ok = false;
        }
        infos.push_back(std::move(info));
      }
  if (!pi_ok) out.failures.push_back("pi or theta is not constant on EK'-classes");
  out.category = AugmentedCategory::assemble(
      t.base_ptr(), t.set_size(), objects, std::move(infos),
      [&](Token u, Token g) {
        Token c = t.compose(rep[u], rep[g]);
        return c == kNoToken ? kNoToken : cls[c];
      },
      [&](SubId p, SubId q, Elem e) {
        Token d = t.delta(p, q, e);
        return d == kNoToken ? kNoToken : cls[d];
      });
  out.composition_well_defined = pi_ok;
  for (SubId p : objects)
    for (SubId q : objects)
      for (SubId w : objects)
        for (Token u : t.hom(q, w))
          for (Token g : t.hom(p, q)) {
            Token c = t.compose(u, g);
            if (c == kNoToken || cls[c] != out.category.compose(cls[u], cls[g])) out.composition_well_defined = false;
          }
  if (!out.composition_well_defined) out.failures.push_back("composition is not well defined on classes");
  out.axioms = verify_linking_axioms(out.category, out.system);
  return out;
}

CategoryComparison compare_via_witnesses(const AugmentedCategory& a, const AugmentedCategory& b) {
  CategoryComparison c;
  c.same_objects = a.objects() == b.objects();
  if (!c.same_objects) {
    c.failures.push_back("object sets differ");
    return c;
  }
  const PGroup& s = a.base();
  std::vector<Token> map(a.token_count(), kNoToken);
  c.bijective = c.pi_commutes = c.delta_commutes = c.composition_commutes = true;
  for (SubId p : a.objects())
    for (SubId q : a.objects()) {
      std::set<Token> hit;
      for (Token g : a.hom(p, q)) {
        const auto& w = a.info(g).witness;
        auto m = w ? b.by_element(p, q, *w) : std::nullopt;
        if (!m) {
          c.bijective = false;
          c.failures.push_back("no witness image for a token of " + pair_str(s, p, q));
          continue;
        }
        map[g] = *m;
        hit.insert(*m);
        if (a.pi(g) != b.pi(*m)) c.pi_commutes = false;
      }
      if (hit.size() != a.hom(p, q).size() || hit.size() != b.hom(p, q).size()) {
        c.bijective = false;
        c.failures.push_back("hom-set sizes differ at " + pair_str(s, p, q));
      }
      for (Elem e : a.delta_domain(p, q)) {
        Token d = a.delta(p, q, e);
        if (d == kNoToken || map[d] != b.delta(p, q, e)) c.delta_commutes = false;
      }
    }
  for (SubId p : a.objects())
    for (SubId q : a.objects())
      for (SubId w : a.objects())
        for (Token u : a.hom(q, w))
          for (Token g : a.hom(p, q)) {
            Token ab = a.compose(u, g);
            if (ab == kNoToken || map[u] == kNoToken || map[g] == kNoToken || map[ab] != b.compose(map[u], map[g]))
              c.composition_commutes = false;
          }
  if (!c.pi_commutes) c.failures.push_back("pi does not commute with the bijection");
  if (!c.delta_commutes) c.failures.push_back("delta does not commute with the bijection");
  if (!c.composition_commutes) c.failures.push_back("composition does not commute with the bijection");
  return c;
}

// ---------------------------------------------------------------- stabilizer

StabilizerLinkingResult stabilizer_linking(const AugmentedCategory& l, const FusionActionSystem& x, std::size_t point) {
  const PGroup& s = l.base();
  if (point >= x.set_size()) throw InputError("point outside X");
  StabilizerLinkingResult res;
  res.point = point;
  res.stabilizer = point_stabilizer(x, point);
  res.local = local_base(s, res.stabilizer);
  const auto& lb = res.local;
  SubId core = x.core();
  if (!l.has_object(core)) throw PreconditionError("the core is not an object");

  std::vector<SubId> parent_objects, objects;
  for (SubId p : l.objects())
    if (s.contains(res.stabilizer, p)) {
      parent_objects.push_back(p);
      objects.push_back(lb.local_sub(s, p));
    }
  std::vector<Token> renum(l.token_count(), kNoToken), back;
  std::vector<TokenInfo> infos;
  for (SubId p : parent_objects)
    for (SubId q : parent_objects)
      for (Token g : l.hom(p, q)) {
        if (l.pi(g).sigma(point) != point) continue;
        renum[g] = static_cast<Token>(back.size());
        back.push_back(g);
        TokenInfo info = l.info(g);
        info.src = lb.local_sub(s, p);
        info.dst = lb.local_sub(s, q);
        info.pi = lb.to_local(s, info.pi);
        infos.push_back(std::move(info));
      }
  auto map = [&](Token t) { return t == kNoToken ? kNoToken : renum[t]; };
  auto up = [&](SubId local) {
    std::vector<Elem> m;
    for (Elem e : lb.group->members(local)) m.push_back(lb.to_parent[e]);
    std::sort(m.begin(), m.end());
    return s.find_members(m);
  };
  std::vector<InjectiveHom> gens;
  for (const auto& info : infos) {
    InjectiveHom h = info.pi.phi;
    h.codomain = hom_image(*lb.group, h);
    gens.push_back(std::move(h));
  }
  res.category = AugmentedCategory::assemble(
      lb.group, l.set_size(), objects, std::move(infos),
      [&](Token u, Token g) { return map(l.compose(back[u], back[g])); },
      [&](SubId p, SubId q, Elem e) { return map(l.delta(up(p), up(q), lb.to_parent[e])); });
  res.fusion = FusionSystem::generate(lb.group, gens);

  SubId core_local = lb.local_sub(s, core);
  std::size_t lxc = res.category.hom(core_local, core_local).size();
  res.fully_stabilized = lxc > 0 && p_part(lxc, s.prime()) == s.sub_order(res.stabilizer);
  res.transporter = verify_transporter_axioms(res.category, res.fusion);
  res.fusion_saturated = is_saturated_fusion(res.fusion).saturated;
  res.transporter_iff_sylow = res.transporter.ok() == res.fully_stabilized;
  std::set<Perm> all, at_core;
  for (Token g = 0; g < l.token_count(); ++g) all.insert(l.pi(g).sigma);
  for (Token g : l.hom(core, core)) at_core.insert(l.pi(g).sigma);
  res.theta_image_in_core = all == at_core;
  return res;
}

// ---------------------------------------------------------------- json

nlohmann::json category_to_json(const AugmentedCategory& t) {
  const PGroup& s = t.base();
  nlohmann::json j;
  j["prime"] = s.prime();
  j["degree"] = s.degree();
  j["set_size"] = t.set_size();
  std::size_t witness_degree = 0;
  nlohmann::json elems = nlohmann::json::array();
  for (Elem e = 0; e < s.order(); ++e) elems.push_back(s.perm(e).str());
  j["s_elements"] = elems;
  nlohmann::json objs = nlohmann::json::array();
  for (SubId p : t.objects()) objs.push_back(s.members(p));
  j["objects"] = objs;
  auto obj_pos = [&](SubId p) {
    return static_cast<std::size_t>(std::lower_bound(t.objects().begin(), t.objects().end(), p) - t.objects().begin());
  };
  nlohmann::json toks = nlohmann::json::array();
  for (Token g = 0; g < t.token_count(); ++g) {
    const auto& info = t.info(g);
    nlohmann::json k;
    k["src"] = obj_pos(info.src);
    k["dst"] = obj_pos(info.dst);
    k["phi"] = info.pi.phi.images;
    k["sigma"] = info.pi.sigma.str();
    if (info.witness) {
      k["witness"] = info.witness->str();
      witness_degree = info.witness->degree();
    }
    toks.push_back(std::move(k));
  }
  j["tokens"] = toks;
  if (witness_degree) j["witness_degree"] = witness_degree;
  nlohmann::json comp = nlohmann::json::array();
  nlohmann::json delta = nlohmann::json::array();
  const auto& obs = t.objects();
  for (std::size_t a = 0; a < obs.size(); ++a)
    for (std::size_t b = 0; b < obs.size(); ++b) {
      for (std::size_t c = 0; c < obs.size(); ++c) {
        nlohmann::json block = nlohmann::json::array();
        for (Token u : t.hom(obs[b], obs[c]))
          for (Token g : t.hom(obs[a], obs[b])) {
            Token r = t.compose(u, g);
            block.push_back(r == kNoToken ? nlohmann::json(nullptr) : nlohmann::json(r));
          }
        if (!block.empty()) comp.push_back({{"objects", {a, b, c}}, {"table", block}});
      }
      nlohmann::json d = nlohmann::json::array();
      for (Elem e : t.delta_domain(obs[a], obs[b])) {
        Token r = t.delta(obs[a], obs[b], e);
        d.push_back({e, r == kNoToken ? nlohmann::json(nullptr) : nlohmann::json(r)});
      }
      delta.push_back({{"objects", {a, b}}, {"map", d}});
    }
  j["compose"] = comp;
  j["delta"] = delta;
  return j;
}

AugmentedCategory category_from_json(const nlohmann::json& j) {
  try {
    const std::size_t degree = j.at("degree").get<std::size_t>();
    const unsigned prime = j.at("prime").get<unsigned>();
    std::vector<Perm> perms;
    for (const auto& e : j.at("s_elements")) perms.push_back(Perm::parse(e.get<std::string>(), degree));
    auto base = std::make_shared<const PGroup>(generate_group(degree, perms), prime);
    // old element index -> new element index
    std::vector<Elem> remap;
    for (const auto& p : perms) remap.push_back(*base->index_of(p));
    std::vector<SubId> objects;
    for (const auto& o : j.at("objects")) {
      std::vector<Elem> m;
      for (const auto& e : o) m.push_back(remap.at(e.get<Elem>()));
      std::sort(m.begin(), m.end());
      objects.push_back(base->find_members(m));
    }
    std::vector<TokenInfo> infos;
    std::size_t wdeg = j.value("witness_degree", std::size_t{0});
    const std::size_t set_size = j.at("set_size").get<std::size_t>();
    for (const auto& k : j.at("tokens")) {
      TokenInfo info;
      info.src = objects.at(k.at("src").get<std::size_t>());
      info.dst = objects.at(k.at("dst").get<std::size_t>());
      info.pi.phi.domain = info.src;
      info.pi.phi.codomain = info.dst;
      const auto& dom_old = j.at("objects").at(k.at("src").get<std::size_t>());
      auto images = k.at("phi").get<std::vector<Elem>>();
      if (images.size() != dom_old.size()) throw InputError("phi has the wrong length");
      // images are parallel to the old member list; reorder to the new one.
      std::vector<std::pair<Elem, Elem>> pairs;
      for (std::size_t i = 0; i < images.size(); ++i)
        pairs.emplace_back(remap.at(dom_old[i].get<Elem>()), remap.at(images[i]));
      std::sort(pairs.begin(), pairs.end());
      for (const auto& pr : pairs) info.pi.phi.images.push_back(pr.second);
      info.pi.sigma = Perm::parse(k.at("sigma").get<std::string>(), set_size);
      if (k.contains("witness")) info.witness = Perm::parse(k.at("witness").get<std::string>(), wdeg);
      infos.push_back(std::move(info));
    }
    std::map<std::tuple<SubId, SubId, SubId>, std::vector<Token>> blocks;
    for (const auto& b : j.at("compose")) {
      auto o = b.at("objects").get<std::vector<std::size_t>>();
      std::vector<Token> table;
      for (const auto& v : b.at("table")) table.push_back(v.is_null() ? kNoToken : v.get<Token>());
      blocks[{objects.at(o.at(0)), objects.at(o.at(1)), objects.at(o.at(2))}] = std::move(table);
    }
    std::map<std::tuple<SubId, SubId, Elem>, Token> deltas;
    for (const auto& d : j.at("delta")) {
      auto o = d.at("objects").get<std::vector<std::size_t>>();
      for (const auto& pr : d.at("map"))
        deltas[{objects.at(o.at(0)), objects.at(o.at(1)), remap.at(pr.at(0).get<Elem>())}] =
            pr.at(1).is_null() ? kNoToken : pr.at(1).get<Token>();
    }
    // Positions inside hom-sets follow token order, as when written.
    std::map<std::pair<SubId, SubId>, std::vector<Token>> homs;
    std::vector<std::size_t> pos(infos.size());
    for (Token g = 0; g < infos.size(); ++g) {
      auto& h = homs[{infos[g].src, infos[g].dst}];
      pos[g] = h.size();
      h.push_back(g);
    }
    return AugmentedCategory::assemble(
        base, set_size, objects, infos,
        [&](Token u, Token g) {
          auto it = blocks.find({infos[g].src, infos[g].dst, infos[u].dst});
          if (it == blocks.end()) return kNoToken;
          std::size_t width = homs[{infos[g].src, infos[g].dst}].size();
          return it->second.at(pos[u] * width + pos[g]);
        },
        [&](SubId p, SubId q, Elem e) {
          auto it = deltas.find({p, q, e});
          return it == deltas.end() ? kNoToken : it->second;
        });
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed category JSON: ") + e.what());
  }
}

}  // namespace fusactk
