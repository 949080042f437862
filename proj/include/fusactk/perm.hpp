#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace fusactk {

using Point = std::uint16_t;

// A permutation of {0..n-1}. Products compose right to left:
// (a * b)(x) = a(b(x)). Ordering is lexicographic on image arrays.
class Perm {
 public:
  Perm() = default;
  explicit Perm(std::size_t degree);  // identity
  explicit Perm(std::vector<Point> images);  // throws InputError unless bijective

  static Perm parse(std::string_view cycles, std::size_t degree);

  std::size_t degree() const { return images_.size(); }
  Point operator()(std::size_t x) const { return images_[x]; }
  const std::vector<Point>& images() const { return images_; }

  bool is_identity() const;
  Perm inverse() const;
  std::size_t order() const;
  Perm pow(long long k) const;

  // Cycle notation, fixed points omitted, "()" for the identity.
  std::string str() const;

  friend Perm operator*(const Perm& a, const Perm& b);
  friend bool operator==(const Perm&, const Perm&) = default;
  friend auto operator<=>(const Perm&, const Perm&) = default;

 private:
  std::vector<Point> images_;
};

// a * b * a^-1
Perm conjugate(const Perm& a, const Perm& b);

struct PermHash {
  std::size_t operator()(const Perm& p) const noexcept;
};

}  // namespace fusactk

template <>
struct std::hash<fusactk::Perm> : fusactk::PermHash {};
