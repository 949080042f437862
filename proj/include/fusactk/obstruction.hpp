#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "fusactk/action_system.hpp"
#include "fusactk/linking.hpp"

namespace fusactk {

using Integer = boost::multiprecision::cpp_int;
using IntMatrix = std::vector<std::vector<Integer>>;

// Z^rank modulo the span of the relation vectors (each of length rank).
struct AbelianPresentation {
  std::size_t rank = 0;
  std::vector<std::vector<long long>> relations;
};

// Invariant factors d_1 | d_2 | ... (all > 1) plus a free rank.
struct AbelianInvariants {
  std::vector<Integer> torsion;
  std::size_t free_rank = 0;

  bool trivial() const { return torsion.empty() && free_rank == 0; }
  // Throws PreconditionError for infinite groups.
  Integer order() const;
  // "0", "Z/2", "Z/2 x Z/4", "Z^2 x Z/3", ...
  std::string str() const;
  friend bool operator==(const AbelianInvariants&, const AbelianInvariants&) = default;
};

// U A V = diag(d) with U unimodular; uinv = U^-1. d holds the nonzero
// diagonal entries in dividing order, padded to min(rows, cols) with zeros.
struct SmithForm {
  IntMatrix u;
  IntMatrix uinv;
  std::vector<Integer> diagonal;
};
SmithForm smith_form(IntMatrix a);

AbelianInvariants invariant_factors(const AbelianPresentation& a);
AbelianPresentation diagonal_presentation(const AbelianInvariants& inv);

// A finite category given by an explicit composition table.
struct SmallCategory {
  struct Arrow {
    std::size_t src = 0;
    std::size_t dst = 0;
    bool identity = false;
  };
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t object_count = 0;
  std::vector<Arrow> arrows;
  std::vector<std::size_t> table;  // arrows.size()^2, u ∘ t at u * n + t, npos if not composable

  std::size_t compose(std::size_t u, std::size_t t) const { return table[u * arrows.size() + t]; }
  std::size_t identity(std::size_t object) const;
};

// A contravariant functor into finitely generated abelian groups. maps[a] is
// the matrix of F(a) : F(dst) -> F(src), rank(src) x rank(dst), columns are
// images of the generators of F(dst).
struct CoefficientFunctor {
  SmallCategory category;
  std::vector<AbelianPresentation> values;
  std::vector<std::vector<std::vector<long long>>> maps;
};

struct FunctorCheck {
  std::size_t checks = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};
FunctorCheck check_functor(const CoefficientFunctor& f);

// Z^X on the X-centric orbit category.
struct CenterFunctor {
  OrbitCategory orbit;
  std::vector<SubId> objects;                 // object index -> subgroup
  std::vector<std::vector<Elem>> generators;  // generators of Z(P;X) per object
  std::vector<std::pair<SubId, std::size_t>> arrow_orbits;  // arrow -> (target, orbit index)
  CoefficientFunctor functor;
};
// Throws PreconditionError when two lifts of an orbit disagree on Z(Q;X).
CenterFunctor center_functor(const FusionActionSystem& x);
// The one-object category with only its identity and the given value.
CoefficientFunctor constant_point_functor(const AbelianPresentation& value);

// Normalized bar cochains: degree n is indexed by chains of n composable
// non-identity arrows a_1, ..., a_n (a_1 first), with value F(src a_1).
// Coordinates are taken with respect to the Smith bases of the values.
struct CochainComplex {
  struct Degree {
    std::vector<std::vector<std::uint32_t>> chains;  // degree 0: {object}
    std::vector<std::size_t> offset;                 // first coordinate per chain
    std::vector<std::uint64_t> modulus;              // order of each coordinate
  };
  struct Entry {
    std::size_t row = 0;
    std::size_t col = 0;
    std::int64_t value = 0;
  };
  std::vector<Degree> degrees;                     // 0 .. top
  std::vector<std::vector<Entry>> differential;    // d_n : C^n -> C^{n+1}, n < top
  std::size_t dimension(std::size_t n) const { return degrees[n].modulus.size(); }
};
// Builds degrees 0..max_degree+1. Throws CapExceeded past limits().max_chains
// and InputError for infinite values.
CochainComplex bar_complex(const CoefficientFunctor& f, std::size_t max_degree);
// Every column of d_{n+1} d_n vanishes modulo the target orders.
bool differential_squares_to_zero(const CochainComplex& c, std::vector<std::string>* failures = nullptr);
// Cohomology of degrees 0..max_degree (needs max_degree + 1 built degrees).
std::vector<AbelianInvariants> cohomology(const CochainComplex& c, std::size_t max_degree);
std::vector<AbelianInvariants> higher_limits(const CoefficientFunctor& f, std::size_t max_degree = 3);

}  // namespace fusactk
