#include "fusactk/perm.hpp"

#include <cctype>
#include <numeric>

#include "fusactk/error.hpp"

namespace fusactk {

Perm::Perm(std::size_t degree) : images_(degree) {
  std::iota(images_.begin(), images_.end(), Point{0});
}

Perm::Perm(std::vector<Point> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (Point x : images_) {
    if (x >= images_.size() || seen[x]) throw InputError("image array is not a permutation");
    seen[x] = true;
  }
}

Perm Perm::parse(std::string_view text, std::size_t degree) {
  Perm p(degree);
  std::vector<bool> used(degree, false);
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  if (i == text.size()) throw InputError("empty permutation string");
  while (i < text.size()) {
    if (text[i] != '(') throw InputError("expected '(' in \"" + std::string(text) + "\"");
    ++i;
    std::vector<std::size_t> cycle;
    for (;;) {
      skip_ws();
      if (i == text.size()) throw InputError("unterminated cycle in \"" + std::string(text) + "\"");
      if (text[i] == ')') {
        ++i;
        break;
      }
      if (!std::isdigit(static_cast<unsigned char>(text[i])))
        throw InputError("unexpected character in \"" + std::string(text) + "\"");
      std::size_t v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        v = v * 10 + static_cast<std::size_t>(text[i] - '0');
        if (v > 65535) throw InputError("point out of range");
        ++i;
      }
      if (v >= degree) throw InputError("point " + std::to_string(v) + " exceeds degree");
      if (used[v]) throw InputError("point " + std::to_string(v) + " repeated");
      used[v] = true;
      cycle.push_back(v);
    }
    for (std::size_t k = 0; k < cycle.size(); ++k)
      p.images_[cycle[k]] = static_cast<Point>(cycle[(k + 1) % cycle.size()]);
    skip_ws();
  }
  return p;
}

bool Perm::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i) return false;
  return true;
}

Perm Perm::inverse() const {
  Perm r(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) r.images_[images_[i]] = static_cast<Point>(i);
  return r;
}

std::size_t Perm::order() const {
  std::size_t result = 1;
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = images_[j]) {
      seen[j] = true;
      ++len;
    }
    result = std::lcm(result, len);
  }
  return result;
}

Perm Perm::pow(long long k) const {
  long long n = static_cast<long long>(order());
  k %= n;
  if (k < 0) k += n;
  Perm r(images_.size());
  Perm base = *this;
  while (k > 0) {
    if (k & 1) r = r * base;
    base = base * base;
    k >>= 1;
  }
  return r;
}

std::string Perm::str() const {
  std::string out;
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i] || images_[i] == i) continue;
    out += '(';
    for (std::size_t j = i; !seen[j]; j = images_[j]) {
      seen[j] = true;
      if (j != i) out += ' ';
      out += std::to_string(j);
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

Perm operator*(const Perm& a, const Perm& b) {
  if (a.degree() != b.degree()) throw InputError("degree mismatch in product");
  Perm r;
  r.images_.resize(a.degree());
  for (std::size_t i = 0; i < a.degree(); ++i) r.images_[i] = a.images_[b.images_[i]];
  return r;
}

Perm conjugate(const Perm& a, const Perm& b) { return a * b * a.inverse(); }

std::size_t PermHash::operator()(const Perm& p) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (Point x : p.images()) {
    h ^= x;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace fusactk
