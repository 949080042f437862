#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "fusactk/perm.hpp"

namespace fusactk {

// A finite permutation group with its full, canonically sorted element list.
// Copies share the underlying data; identity of the data is group identity.
class PermGroup {
 public:
  PermGroup() = default;

  std::size_t degree() const { return data_->degree; }
  std::size_t order() const { return data_->elements.size(); }
  const std::vector<Perm>& generators() const { return data_->generators; }
  const std::vector<Perm>& elements() const { return data_->elements; }
  const Perm& element(std::size_t i) const { return data_->elements[i]; }
  std::optional<std::uint32_t> index_of(const Perm& g) const;
  bool contains(const Perm& g) const { return index_of(g).has_value(); }
  bool same_as(const PermGroup& o) const { return data_ == o.data_; }
  bool valid() const { return data_ != nullptr; }

  // Builds a group whose element set is already known to be closed.
  static PermGroup from_closed_set(std::size_t degree, std::vector<Perm> elements);

 private:
  struct Data {
    std::size_t degree = 0;
    std::vector<Perm> generators;
    std::vector<Perm> elements;
    std::unordered_map<Perm, std::uint32_t, PermHash> index;
  };
  std::shared_ptr<const Data> data_;

  friend PermGroup generate_group(std::size_t, const std::vector<Perm>&);
  static PermGroup make(std::size_t degree, std::vector<Perm> gens, std::vector<Perm> elements);
};

// Closure of the generators; throws CapExceeded past limits().max_group_order.
PermGroup generate_group(std::size_t degree, const std::vector<Perm>& generators);

// A subgroup of a PermGroup, stored as sorted indices into the parent's elements.
class SubgroupRef {
 public:
  SubgroupRef() = default;
  // members must be sorted and form a subgroup; validated when check is set.
  SubgroupRef(PermGroup parent, std::vector<std::uint32_t> members, bool check = true);

  const PermGroup& parent() const { return parent_; }
  const std::vector<std::uint32_t>& members() const { return members_; }
  std::size_t order() const { return members_.size(); }
  bool contains(const Perm& g) const;
  bool contains_index(std::uint32_t i) const;
  bool contains(const SubgroupRef& h) const;
  std::vector<Perm> elements() const;
  // The subgroup as a standalone group (same element perms).
  PermGroup as_group() const;

  friend bool operator==(const SubgroupRef& a, const SubgroupRef& b) {
    return a.parent_.same_as(b.parent_) && a.members_ == b.members_;
  }

 private:
  PermGroup parent_;
  std::vector<std::uint32_t> members_;
};

SubgroupRef whole_group(const PermGroup& g);
SubgroupRef trivial_subgroup(const PermGroup& g);
SubgroupRef subgroup_generated(const PermGroup& g, const std::vector<Perm>& gens);
SubgroupRef intersection(const SubgroupRef& a, const SubgroupRef& b);
SubgroupRef normalizer(const PermGroup& g, const SubgroupRef& h);
SubgroupRef centralizer(const PermGroup& g, const SubgroupRef& h);

// A small generating set: greedy over the canonical element order.
std::vector<Perm> greedy_generators(const std::vector<Perm>& sorted_elements);

bool is_prime(unsigned long long n);
// Largest power of p dividing n.
std::size_t p_part(std::size_t n, unsigned p);

// Deterministic Sylow p-subgroup: grow from 1 by adjoining the first element
// (canonical order) of the normalizer whose coset has order p.
SubgroupRef sylow_subgroup(const PermGroup& g, unsigned p);

// N_G(P,Q) = {g : g P g^-1 <= Q}, canonically ordered.
std::vector<Perm> transporter_set(const PermGroup& g, const SubgroupRef& p, const SubgroupRef& q);

// A homomorphism G -> Sym(X), stored as one image per element of G.
class GroupAction {
 public:
  GroupAction() = default;
  static GroupAction natural(const PermGroup& g);
  static GroupAction trivial(const PermGroup& g, std::size_t set_size = 1);
  // Extends generator images to a homomorphism; throws InputError if the
  // assignment is not consistent.
  static GroupAction from_generator_images(const PermGroup& g, std::size_t set_size,
                                           const std::vector<Perm>& gens,
                                           const std::vector<Perm>& images);

  const PermGroup& group() const { return group_; }
  std::size_t set_size() const { return set_size_; }
  const Perm& of_index(std::size_t i) const { return images_[i]; }
  const Perm& operator()(const Perm& g) const;
  const std::vector<Perm>& images() const { return images_; }
  // Restriction to a subgroup H <= G viewed as its own group.
  GroupAction restrict_to(const PermGroup& h) const;
  bool is_faithful() const;

 private:
  PermGroup group_;
  std::size_t set_size_ = 0;
  std::vector<Perm> images_;
};

// {g in restrict_to : action(g) = id}
SubgroupRef action_core(const GroupAction& action, const SubgroupRef& restrict_to);
// N_G(H) ∩ Ĉ and Z_G(H) ∩ Ĉ with Ĉ the kernel of the action on all of G.
SubgroupRef x_normalizer(const PermGroup& g, const SubgroupRef& h, const GroupAction& action);
SubgroupRef x_centralizer(const PermGroup& g, const SubgroupRef& h, const GroupAction& action);

}  // namespace fusactk
