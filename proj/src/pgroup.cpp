#include "fusactk/pgroup.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "fusactk/error.hpp"
#include "fusactk/limits.hpp"

namespace fusactk {

std::size_t ElementSet::count() const {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool ElementSet::subset_of(const ElementSet& o) const {
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & ~o.words_[i]) return false;
  return true;
}

ElementSet ElementSet::operator&(const ElementSet& o) const {
  ElementSet r(n_);
  for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] = words_[i] & o.words_[i];
  return r;
}

std::size_t ElementSet::hash() const {
  std::size_t h = 0x9e3779b97f4a7c15ull;
  for (auto w : words_) h = (h ^ w) * 0x100000001b3ull + (h >> 29);
  return h;
}

TableGroup::TableGroup(std::size_t n, std::vector<Elem> table) : n_(n), table_(std::move(table)), inv_(n) {
  for (Elem a = 0; a < n_; ++a)
    for (Elem b = 0; b < n_; ++b)
      if (mul(a, b) == 0) {
        inv_[a] = b;
        break;
      }
}

std::size_t TableGroup::elem_order(Elem a) const {
  std::size_t k = 1;
  for (Elem x = a; x != 0; x = mul(x, a)) ++k;
  return k;
}

Elem TableGroup::power(Elem a, std::size_t k) const {
  Elem r = 0;
  for (std::size_t i = 0; i < k; ++i) r = mul(r, a);
  return r;
}

std::vector<Elem> TableGroup::closure(const std::vector<Elem>& seed, const std::vector<Elem>& extra) const {
  std::vector<char> in(n_, 0);
  std::vector<Elem> members{0};
  in[0] = 1;
  std::vector<Elem> gens = extra;
  gens.insert(gens.end(), seed.begin(), seed.end());
  for (std::size_t k = 0; k < members.size(); ++k)
    for (Elem s : gens) {
      Elem y = mul(s, members[k]);
      if (!in[y]) {
        in[y] = 1;
        members.push_back(y);
      }
    }
  std::sort(members.begin(), members.end());
  return members;
}

bool TableGroup::is_subgroup(const std::vector<Elem>& m) const {
  if (m.empty() || m.front() != 0) return false;
  std::vector<char> in(n_, 0);
  for (Elem x : m) in[x] = 1;
  for (Elem a : m)
    for (Elem b : m)
      if (!in[mul(a, b)]) return false;
  return true;
}

std::vector<std::vector<Elem>> TableGroup::all_subgroups(unsigned p) const {
  bool pmode = false;
  if (p != 0) {
    std::size_t n = n_;
    while (n % p == 0) n /= p;
    pmode = (n == 1);
  }
  std::vector<std::vector<Elem>> found{{0}};
  std::unordered_map<ElementSet, std::size_t, ElementSetHash> seen;
  auto mask_of = [&](const std::vector<Elem>& m) {
    ElementSet s(n_);
    for (Elem x : m) s.set(x);
    return s;
  };
  seen.emplace(mask_of(found[0]), 0);
  for (std::size_t h = 0; h < found.size(); ++h) {
    const std::vector<Elem> hm = found[h];
    ElementSet covered = mask_of(hm);
    for (Elem g = 0; g < n_; ++g) {
      if (covered.test(g)) continue;
      std::vector<Elem> k;
      if (pmode) {
        bool normal = true;
        for (Elem x : hm)
          if (!std::binary_search(hm.begin(), hm.end(), conj(g, x))) {
            normal = false;
            break;
          }
        if (!normal || !std::binary_search(hm.begin(), hm.end(), power(g, p))) continue;
        k = hm;
        Elem gi = g;
        for (unsigned i = 1; i < p; ++i, gi = mul(gi, g))
          for (Elem x : hm) k.push_back(mul(gi, x));
        std::sort(k.begin(), k.end());
        for (Elem x : k) covered.set(x);
      } else {
        k = closure(hm, {g});
        for (Elem x : hm) covered.set(mul(g, x));
      }
      auto km = mask_of(k);
      if (seen.emplace(km, found.size()).second) found.push_back(std::move(k));
    }
  }
  std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return found;
}

PGroup::PGroup(const PermGroup& s, unsigned p) : group_(s), p_(p) {
  if (!is_prime(p)) throw InputError(std::to_string(p) + " is not prime");
  if (p_part(s.order(), p) != s.order()) throw PreconditionError("group is not a p-group");
  if (s.order() > limits().max_pgroup_order)
    throw CapExceeded("p-group order " + std::to_string(s.order()) + " exceeds cap");
  const std::size_t n = s.order();
  std::vector<Elem> tab(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) tab[a * n + b] = *s.index_of(s.element(a) * s.element(b));
  table_ = TableGroup(n, std::move(tab));

  auto lists = table_.all_subgroups(p);
  subs_.reserve(lists.size());
  for (auto& m : lists) {
    SubgroupInfo info;
    info.mask = ElementSet(n);
    for (Elem x : m) info.mask.set(x);
    info.members = std::move(m);
    // greedy generators over the canonical order
    std::vector<Elem> cl{0};
    for (Elem x : info.members) {
      if (std::binary_search(cl.begin(), cl.end(), x)) continue;
      info.gens.push_back(x);
      cl = table_.closure({}, info.gens);
    }
    lookup_.emplace(info.mask, static_cast<SubId>(subs_.size()));
    subs_.push_back(std::move(info));
  }
  for (SubId id = 0; id < subs_.size(); ++id) {
    auto& info = subs_[id];
    std::vector<Elem> nm, cm, zm;
    for (Elem g = 0; g < n; ++g) {
      bool norm = true, cent = true;
      for (Elem x : info.gens) {
        Elem y = conj(g, x);
        if (y != x) cent = false;
        if (!info.mask.test(y)) {
          norm = false;
          break;
        }
      }
      if (norm) nm.push_back(g);
      if (cent) cm.push_back(g);
      if (cent && info.mask.test(g)) zm.push_back(g);
    }
    info.normalizer = find_members(nm);
    info.centralizer = find_members(cm);
    info.center = find_members(zm);
  }
  for (SubId a = 0; a < subs_.size(); ++a)
    for (SubId b = 0; b < subs_.size(); ++b)
      if (subs_[b].members.size() * p == subs_[a].members.size() && contains(a, b))
        subs_[a].maximal.push_back(b);
}

std::optional<SubId> PGroup::find(const ElementSet& mask) const {
  auto it = lookup_.find(mask);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

SubId PGroup::find_members(const std::vector<Elem>& m) const {
  ElementSet s(order());
  for (Elem x : m) s.set(x);
  auto id = find(s);
  if (!id) throw std::logic_error("element set is not a subgroup");
  return *id;
}

SubId PGroup::generated(const std::vector<Elem>& gens) const {
  return find_members(table_.closure({}, gens));
}

SubId PGroup::conjugate_sub(Elem g, SubId id) const {
  ElementSet s(order());
  for (Elem x : subs_[id].members) s.set(conj(g, x));
  return *find(s);
}

SubId PGroup::intersect(SubId a, SubId b) const { return *find(subs_[a].mask & subs_[b].mask); }

SubId PGroup::join(SubId a, SubId b) const {
  auto g = subs_[a].gens;
  g.insert(g.end(), subs_[b].gens.begin(), subs_[b].gens.end());
  return generated(g);
}

std::vector<SubId> PGroup::subgroups_of(SubId id) const {
  std::vector<SubId> out;
  for (SubId r = 0; r < subs_.size(); ++r)
    if (contains(id, r)) out.push_back(r);
  return out;
}

std::vector<Elem> PGroup::transporter(SubId p, SubId q) const {
  std::vector<Elem> out;
  for (Elem g = 0; g < order(); ++g) {
    bool ok = true;
    for (Elem x : subs_[p].gens)
      if (!subs_[q].mask.test(conj(g, x))) {
        ok = false;
        break;
      }
    if (ok) out.push_back(g);
  }
  return out;
}

std::size_t PGroup::position(SubId id, Elem e) const {
  const auto& m = subs_[id].members;
  auto it = std::lower_bound(m.begin(), m.end(), e);
  if (it == m.end() || *it != e) return npos;
  return static_cast<std::size_t>(it - m.begin());
}

std::vector<Perm> PGroup::perms(SubId id) const {
  std::vector<Perm> out;
  for (Elem x : subs_[id].members) out.push_back(perm(x));
  return out;
}

SubgroupRef PGroup::ref(SubId id) const {
  return SubgroupRef(group_, std::vector<std::uint32_t>(subs_[id].members.begin(), subs_[id].members.end()),
                     false);
}

std::optional<std::vector<Elem>> PGroup::extend_hom(SubId p, const std::vector<Elem>& gen_images) const {
  const auto& info = subs_[p];
  const auto& m = info.members;
  std::vector<Elem> img(m.size(), static_cast<Elem>(-1));
  img[0] = 0;
  std::vector<std::size_t> queue{0};
  for (std::size_t k = 0; k < queue.size(); ++k) {
    std::size_t xi = queue[k];
    for (std::size_t j = 0; j < info.gens.size(); ++j) {
      std::size_t yi = position(p, mul(info.gens[j], m[xi]));
      Elem v = mul(gen_images[j], img[xi]);
      if (img[yi] == static_cast<Elem>(-1)) {
        img[yi] = v;
        queue.push_back(yi);
      } else if (img[yi] != v) {
        return std::nullopt;
      }
    }
  }
  return img;
}

std::vector<std::vector<Elem>> PGroup::automorphisms(SubId p) const {
  const auto& info = subs_[p];
  const auto& m = info.members;
  std::vector<std::vector<Elem>> out;
  std::vector<std::vector<Elem>> cands(info.gens.size());
  for (std::size_t j = 0; j < info.gens.size(); ++j) {
    std::size_t o = table_.elem_order(info.gens[j]);
    for (Elem x : m)
      if (table_.elem_order(x) == o) cands[j].push_back(x);
  }
  std::vector<Elem> choice(info.gens.size());
  auto rec = [&](auto&& self, std::size_t j) -> void {
    if (j == info.gens.size()) {
      auto img = extend_hom(p, choice);
      if (!img) return;
      std::vector<Elem> sorted = *img;
      std::sort(sorted.begin(), sorted.end());
      if (sorted == m) out.push_back(std::move(*img));
      return;
    }
    for (Elem x : cands[j]) {
      choice[j] = x;
      self(self, j + 1);
    }
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace fusactk
