#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "fusactk/perm_group.hpp"

namespace fusactk {

using Elem = std::uint32_t;   // element index inside a table group
using SubId = std::uint32_t;  // subgroup index inside a lattice

// Fixed-width-at-runtime bitset over element indices.
class ElementSet {
 public:
  ElementSet() = default;
  explicit ElementSet(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}
  void set(std::size_t i) { words_[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
  std::size_t size() const { return n_; }
  std::size_t count() const;
  bool subset_of(const ElementSet& o) const;
  ElementSet operator&(const ElementSet& o) const;
  friend bool operator==(const ElementSet&, const ElementSet&) = default;
  std::size_t hash() const;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

struct ElementSetHash {
  std::size_t operator()(const ElementSet& s) const { return s.hash(); }
};

// A finite group given by its multiplication table; element 0 is the identity.
class TableGroup {
 public:
  TableGroup() = default;
  TableGroup(std::size_t n, std::vector<Elem> table);

  std::size_t order() const { return n_; }
  Elem mul(Elem a, Elem b) const { return table_[a * n_ + b]; }
  Elem inv(Elem a) const { return inv_[a]; }
  Elem conj(Elem g, Elem x) const { return mul(mul(g, x), inv_[g]); }
  std::size_t elem_order(Elem a) const;
  Elem power(Elem a, std::size_t k) const;

  // Sorted member list of the subgroup generated by seed ∪ extra.
  std::vector<Elem> closure(const std::vector<Elem>& seed, const std::vector<Elem>& extra) const;
  bool is_subgroup(const std::vector<Elem>& sorted_members) const;
  // Every subgroup, as sorted member lists, ordered by (order, lexicographic).
  // Cyclic extension; when p is given and the group is a p-group the search
  // only adjoins normalizing elements whose p-th power lies inside.
  std::vector<std::vector<Elem>> all_subgroups(unsigned p = 0) const;

 private:
  std::size_t n_ = 0;
  std::vector<Elem> table_;
  std::vector<Elem> inv_;
};

// Builds a TableGroup from an explicit element list and product function.
// Elements must be closed under the product and elements[0] the identity.
template <class T, class Mul, class Hash>
TableGroup make_table_group(const std::vector<T>& elements, Mul mul, Hash) {
  std::unordered_map<T, Elem, Hash> index;
  for (std::size_t i = 0; i < elements.size(); ++i) index.emplace(elements[i], static_cast<Elem>(i));
  std::vector<Elem> table(elements.size() * elements.size());
  for (std::size_t a = 0; a < elements.size(); ++a)
    for (std::size_t b = 0; b < elements.size(); ++b)
      table[a * elements.size() + b] = index.at(mul(elements[a], elements[b]));
  return TableGroup(elements.size(), std::move(table));
}

struct SubgroupInfo {
  std::vector<Elem> members;  // sorted
  ElementSet mask;
  std::vector<Elem> gens;
  SubId normalizer = 0;
  SubId centralizer = 0;
  SubId center = 0;
  std::vector<SubId> maximal;  // subgroups of index p
};

// A p-group S together with its multiplication table and complete subgroup
// lattice. Subgroups are ordered by (order, canonical element list), so the
// trivial subgroup has id 0 and S has the last id.
class PGroup {
 public:
  PGroup(const PermGroup& s, unsigned p);

  const PermGroup& group() const { return group_; }
  const TableGroup& table() const { return table_; }
  unsigned prime() const { return p_; }
  std::size_t order() const { return table_.order(); }
  std::size_t degree() const { return group_.degree(); }
  const Perm& perm(Elem e) const { return group_.element(e); }
  std::optional<Elem> index_of(const Perm& g) const { return group_.index_of(g); }

  Elem mul(Elem a, Elem b) const { return table_.mul(a, b); }
  Elem inv(Elem a) const { return table_.inv(a); }
  Elem conj(Elem g, Elem x) const { return table_.conj(g, x); }

  std::size_t subgroup_count() const { return subs_.size(); }
  const SubgroupInfo& sub(SubId id) const { return subs_[id]; }
  const std::vector<Elem>& members(SubId id) const { return subs_[id].members; }
  std::size_t sub_order(SubId id) const { return subs_[id].members.size(); }
  SubId trivial() const { return 0; }
  SubId whole() const { return static_cast<SubId>(subs_.size() - 1); }
  bool contains(SubId big, SubId small) const { return subs_[small].mask.subset_of(subs_[big].mask); }
  bool contains_elem(SubId id, Elem e) const { return subs_[id].mask.test(e); }

  std::optional<SubId> find(const ElementSet& mask) const;
  SubId find_members(const std::vector<Elem>& sorted_members) const;
  SubId generated(const std::vector<Elem>& gens) const;
  SubId conjugate_sub(Elem g, SubId id) const;
  SubId intersect(SubId a, SubId b) const;
  SubId join(SubId a, SubId b) const;
  std::vector<SubId> subgroups_of(SubId id) const;
  // N_S(P,Q) as sorted elements
  std::vector<Elem> transporter(SubId p, SubId q) const;
  // Position of e inside members(id), or npos.
  std::size_t position(SubId id, Elem e) const;
  // The canonical element list as permutations.
  std::vector<Perm> perms(SubId id) const;
  SubgroupRef ref(SubId id) const;

  // Bijective endomorphisms of P as image tables parallel to members(P),
  // canonically ordered.
  std::vector<std::vector<Elem>> automorphisms(SubId p) const;
  // Extends generator images to a homomorphism on P (images parallel to
  // members(P)); nullopt if the assignment is inconsistent.
  std::optional<std::vector<Elem>> extend_hom(SubId p, const std::vector<Elem>& gen_images) const;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  PermGroup group_;
  unsigned p_;
  TableGroup table_;
  std::vector<SubgroupInfo> subs_;
  std::unordered_map<ElementSet, SubId, ElementSetHash> lookup_;
};

}  // namespace fusactk
