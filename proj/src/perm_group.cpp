#include "fusactk/perm_group.hpp"

#include <algorithm>
#include <deque>
#include <string>
#include <unordered_set>

#include "fusactk/error.hpp"
#include "fusactk/limits.hpp"

namespace fusactk {

PermGroup PermGroup::make(std::size_t degree, std::vector<Perm> gens, std::vector<Perm> elements) {
  auto d = std::make_shared<Data>();
  d->degree = degree;
  d->generators = std::move(gens);
  std::sort(elements.begin(), elements.end());
  d->elements = std::move(elements);
  d->index.reserve(d->elements.size() * 2);
  for (std::size_t i = 0; i < d->elements.size(); ++i)
    d->index.emplace(d->elements[i], static_cast<std::uint32_t>(i));
  PermGroup g;
  g.data_ = std::move(d);
  return g;
}

PermGroup PermGroup::from_closed_set(std::size_t degree, std::vector<Perm> elements) {
  std::sort(elements.begin(), elements.end());
  auto gens = greedy_generators(elements);
  return make(degree, std::move(gens), std::move(elements));
}

std::optional<std::uint32_t> PermGroup::index_of(const Perm& g) const {
  auto it = data_->index.find(g);
  if (it == data_->index.end()) return std::nullopt;
  return it->second;
}

PermGroup generate_group(std::size_t degree, const std::vector<Perm>& generators) {
  const std::size_t cap = limits().max_group_order;
  for (const auto& g : generators)
    if (g.degree() != degree) throw InputError("generator degree does not match group degree");
  std::unordered_set<Perm, PermHash> seen;
  std::vector<Perm> elements;
  std::deque<Perm> queue;
  Perm id(degree);
  seen.insert(id);
  elements.push_back(id);
  queue.push_back(id);
  while (!queue.empty()) {
    Perm x = std::move(queue.front());
    queue.pop_front();
    for (const auto& s : generators) {
      Perm y = s * x;
      if (seen.insert(y).second) {
        if (seen.size() > cap)
          throw CapExceeded("group order exceeds cap of " + std::to_string(cap));
        elements.push_back(y);
        queue.push_back(std::move(y));
      }
    }
  }
  return PermGroup::make(degree, generators, std::move(elements));
}

SubgroupRef::SubgroupRef(PermGroup parent, std::vector<std::uint32_t> members, bool check)
    : parent_(std::move(parent)), members_(std::move(members)) {
  if (!check) return;
  if (!std::is_sorted(members_.begin(), members_.end()) ||
      std::adjacent_find(members_.begin(), members_.end()) != members_.end())
    throw InputError("subgroup member list not canonical");
  if (members_.empty() || members_.front() != 0) throw InputError("subgroup lacks identity");
  for (auto a : members_)
    for (auto b : members_) {
      auto c = parent_.index_of(parent_.element(a) * parent_.element(b));
      if (!contains_index(*c)) throw InputError("member set is not closed");
    }
}

bool SubgroupRef::contains_index(std::uint32_t i) const {
  return std::binary_search(members_.begin(), members_.end(), i);
}

bool SubgroupRef::contains(const Perm& g) const {
  auto i = parent_.index_of(g);
  return i && contains_index(*i);
}

bool SubgroupRef::contains(const SubgroupRef& h) const {
  return std::includes(members_.begin(), members_.end(), h.members_.begin(), h.members_.end());
}

std::vector<Perm> SubgroupRef::elements() const {
  std::vector<Perm> out;
  out.reserve(members_.size());
  for (auto i : members_) out.push_back(parent_.element(i));
  return out;
}

PermGroup SubgroupRef::as_group() const {
  return PermGroup::from_closed_set(parent_.degree(), elements());
}

SubgroupRef whole_group(const PermGroup& g) {
  std::vector<std::uint32_t> m(g.order());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = static_cast<std::uint32_t>(i);
  return SubgroupRef(g, std::move(m), false);
}

SubgroupRef trivial_subgroup(const PermGroup& g) { return SubgroupRef(g, {0}, false); }

SubgroupRef subgroup_generated(const PermGroup& g, const std::vector<Perm>& gens) {
  std::vector<bool> in(g.order(), false);
  std::vector<std::uint32_t> members{0};
  in[0] = true;
  for (std::size_t k = 0; k < members.size(); ++k) {
    for (const auto& s : gens) {
      auto idx = g.index_of(s * g.element(members[k]));
      if (!idx) throw InputError("generator " + s.str() + " not in parent group");
      if (!in[*idx]) {
        in[*idx] = true;
        members.push_back(*idx);
      }
    }
  }
  std::sort(members.begin(), members.end());
  return SubgroupRef(g, std::move(members), false);
}

SubgroupRef intersection(const SubgroupRef& a, const SubgroupRef& b) {
  std::vector<std::uint32_t> m;
  std::set_intersection(a.members().begin(), a.members().end(), b.members().begin(),
                        b.members().end(), std::back_inserter(m));
  return SubgroupRef(a.parent(), std::move(m), false);
}

namespace {

template <class Pred>
SubgroupRef filter_group(const PermGroup& g, Pred pred) {
  std::vector<std::uint32_t> m;
  for (std::size_t i = 0; i < g.order(); ++i)
    if (pred(g.element(i))) m.push_back(static_cast<std::uint32_t>(i));
  return SubgroupRef(g, std::move(m), false);
}

}  // namespace

SubgroupRef normalizer(const PermGroup& g, const SubgroupRef& h) {
  auto gens = greedy_generators(h.elements());
  return filter_group(g, [&](const Perm& x) {
    for (const auto& s : gens)
      if (!h.contains(conjugate(x, s))) return false;
    return true;
  });
}

SubgroupRef centralizer(const PermGroup& g, const SubgroupRef& h) {
  auto gens = greedy_generators(h.elements());
  return filter_group(g, [&](const Perm& x) {
    for (const auto& s : gens)
      if (x * s != s * x) return false;
    return true;
  });
}

std::vector<Perm> greedy_generators(const std::vector<Perm>& sorted_elements) {
  std::vector<Perm> gens;
  if (sorted_elements.empty()) return gens;
  std::unordered_set<Perm, PermHash> closure{sorted_elements.front()};
  std::vector<Perm> members{sorted_elements.front()};
  for (const auto& x : sorted_elements) {
    if (closure.count(x)) continue;
    gens.push_back(x);
    for (std::size_t k = 0; k < members.size(); ++k) {
      for (const auto& s : gens) {
        Perm y = s * members[k];
        if (closure.insert(y).second) members.push_back(std::move(y));
      }
    }
  }
  return gens;
}

bool is_prime(unsigned long long n) {
  if (n < 2) return false;
  for (unsigned long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::size_t p_part(std::size_t n, unsigned p) {
  if (n == 0 || p < 2) throw PreconditionError("p_part needs n > 0 and p > 1");
  std::size_t r = 1;
  while (n % p == 0) {
    n /= p;
    r *= p;
  }
  return r;
}

SubgroupRef sylow_subgroup(const PermGroup& g, unsigned p) {
  if (!is_prime(p)) throw InputError(std::to_string(p) + " is not prime");
  const std::size_t target = p_part(g.order(), p);
  std::vector<std::uint32_t> cur{0};
  std::vector<bool> in(g.order(), false);
  in[0] = true;
  std::vector<Perm> gens;
  while (cur.size() < target) {
    bool grown = false;
    for (std::size_t i = 0; i < g.order() && !grown; ++i) {
      if (in[i]) continue;
      const Perm& x = g.element(i);
      bool normalizes = true;
      for (const auto& s : gens)
        if (!in[*g.index_of(conjugate(x, s))]) {
          normalizes = false;
          break;
        }
      if (!normalizes || !in[*g.index_of(x.pow(p))]) continue;
      // <cur, x> = cur ∪ x cur ∪ ... ∪ x^{p-1} cur
      std::vector<std::uint32_t> next = cur;
      Perm xi = x;
      for (unsigned k = 1; k < p; ++k, xi = xi * x)
        for (auto c : cur) {
          auto idx = *g.index_of(xi * g.element(c));
          in[idx] = true;
          next.push_back(idx);
        }
      cur = std::move(next);
      gens.push_back(x);
      grown = true;
    }
    if (!grown) throw std::logic_error("Sylow search stalled");
  }
  std::sort(cur.begin(), cur.end());
  return SubgroupRef(g, std::move(cur), false);
}

std::vector<Perm> transporter_set(const PermGroup& g, const SubgroupRef& p, const SubgroupRef& q) {
  auto gens = greedy_generators(p.elements());
  std::vector<Perm> out;
  for (const auto& x : g.elements()) {
    bool ok = true;
    for (const auto& s : gens)
      if (!q.contains(conjugate(x, s))) {
        ok = false;
        break;
      }
    if (ok) out.push_back(x);
  }
  return out;
}

GroupAction GroupAction::natural(const PermGroup& g) {
  GroupAction a;
  a.group_ = g;
  a.set_size_ = g.degree();
  a.images_ = g.elements();
  return a;
}

GroupAction GroupAction::trivial(const PermGroup& g, std::size_t set_size) {
  if (set_size == 0) throw InputError("the acted-on set must be nonempty");
  GroupAction a;
  a.group_ = g;
  a.set_size_ = set_size;
  a.images_.assign(g.order(), Perm(set_size));
  return a;
}

GroupAction GroupAction::from_generator_images(const PermGroup& g, std::size_t set_size,
                                               const std::vector<Perm>& gens,
                                               const std::vector<Perm>& images) {
  if (set_size == 0) throw InputError("the acted-on set must be nonempty");
  if (gens.size() != images.size()) throw InputError("one image per generator required");
  for (const auto& im : images)
    if (im.degree() != set_size) throw InputError("action image has wrong degree");
  GroupAction a;
  a.group_ = g;
  a.set_size_ = set_size;
  std::vector<std::optional<Perm>> img(g.order());
  img[0] = Perm(set_size);
  std::vector<std::uint32_t> queue{0};
  for (std::size_t k = 0; k < queue.size(); ++k) {
    auto x = queue[k];
    for (std::size_t j = 0; j < gens.size(); ++j) {
      auto y = g.index_of(gens[j] * g.element(x));
      if (!y) throw InputError("action generator not in group");
      Perm v = images[j] * *img[x];
      if (!img[*y]) {
        img[*y] = std::move(v);
        queue.push_back(*y);
      } else if (*img[*y] != v) {
        throw InputError("generator images do not define a homomorphism");
      }
    }
  }
  if (queue.size() != g.order()) throw InputError("action generators do not generate the group");
  // BFS consistency along generator edges gives a well-defined map; confirm
  // multiplicativity on all pairs to be safe for small groups.
  for (std::size_t i = 0; i < g.order(); ++i) a.images_.push_back(*img[i]);
  if (g.order() <= 2000) {
    for (std::size_t i = 0; i < g.order(); ++i)
      for (const auto& s : g.generators()) {
        auto si = *g.index_of(g.element(i) * s);
        if (a.images_[si] != a.images_[i] * a(s))
          throw InputError("generator images do not define a homomorphism");
      }
  }
  return a;
}

const Perm& GroupAction::operator()(const Perm& g) const {
  auto i = group_.index_of(g);
  if (!i) throw InputError("element " + g.str() + " not in acting group");
  return images_[*i];
}

GroupAction GroupAction::restrict_to(const PermGroup& h) const {
  GroupAction a;
  a.group_ = h;
  a.set_size_ = set_size_;
  for (const auto& x : h.elements()) a.images_.push_back((*this)(x));
  return a;
}

bool GroupAction::is_faithful() const {
  for (std::size_t i = 1; i < images_.size(); ++i)
    if (images_[i].is_identity()) return false;
  return true;
}

SubgroupRef action_core(const GroupAction& action, const SubgroupRef& restrict_to) {
  std::vector<std::uint32_t> m;
  for (auto i : restrict_to.members()) {
    const Perm& g = restrict_to.parent().element(i);
    if (action(g).is_identity()) m.push_back(i);
  }
  return SubgroupRef(restrict_to.parent(), std::move(m), false);
}

SubgroupRef x_normalizer(const PermGroup& g, const SubgroupRef& h, const GroupAction& action) {
  return intersection(normalizer(g, h), action_core(action, whole_group(g)));
}

SubgroupRef x_centralizer(const PermGroup& g, const SubgroupRef& h, const GroupAction& action) {
  return intersection(centralizer(g, h), action_core(action, whole_group(g)));
}

}  // namespace fusactk
