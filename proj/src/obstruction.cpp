#include "fusactk/obstruction.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "fusactk/error.hpp"
#include "fusactk/limits.hpp"

namespace fusactk {

namespace {

using i64 = std::int64_t;
using i128 = __int128;

Integer iabs(const Integer& v) { return v < 0 ? Integer(-v) : v; }

// Floor division with a non-negative remainder.
Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

IntMatrix identity_matrix(std::size_t n) {
  IntMatrix m(n, std::vector<Integer>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

}  // namespace

// ---------------------------------------------------------------- Smith form

SmithForm smith_form(IntMatrix a) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  SmithForm out;
  out.u = identity_matrix(rows);
  out.uinv = identity_matrix(rows);

  // Row operations are mirrored on u (left) and inverted on uinv (right).
  auto swap_rows = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    std::swap(a[i], a[j]);
    std::swap(out.u[i], out.u[j]);
    for (auto& r : out.uinv) std::swap(r[i], r[j]);
  };
  // row_i += q row_j
  auto add_row = [&](std::size_t i, std::size_t j, const Integer& q) {
    if (q == 0) return;
    for (std::size_t c = 0; c < cols; ++c) a[i][c] += q * a[j][c];
    for (std::size_t c = 0; c < rows; ++c) out.u[i][c] += q * out.u[j][c];
    for (auto& r : out.uinv) r[j] -= q * r[i];
  };
  auto negate_row = [&](std::size_t i) {
    for (auto& v : a[i]) v = -v;
    for (auto& v : out.u[i]) v = -v;
    for (auto& r : out.uinv) r[i] = -r[i];
  };
  auto swap_cols = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    for (auto& r : a) std::swap(r[i], r[j]);
  };
  auto add_col = [&](std::size_t i, std::size_t j, const Integer& q) {
    if (q == 0) return;
    for (auto& r : a) r[i] += q * r[j];
  };

  const std::size_t n = std::min(rows, cols);
  for (std::size_t t = 0; t < n; ++t) {
    for (;;) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      std::size_t pr = rows, pc = cols;
      Integer best = 0;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (a[i][j] != 0 && (pr == rows || iabs(a[i][j]) < best)) {
            best = iabs(a[i][j]);
            pr = i;
            pc = j;
          }
      if (pr == rows) break;
      swap_rows(t, pr);
      swap_cols(t, pc);
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i)
        if (a[i][t] != 0) {
          add_row(i, t, -floor_div(a[i][t], a[t][t]));
          if (a[i][t] != 0) clean = false;
        }
      for (std::size_t j = t + 1; j < cols; ++j)
        if (a[t][j] != 0) {
          add_col(j, t, -floor_div(a[t][j], a[t][t]));
          if (a[t][j] != 0) clean = false;
        }
      if (!clean) continue;
      std::size_t bad = rows;
      for (std::size_t i = t + 1; i < rows && bad == rows; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (a[i][j] % a[t][t] != 0) {
            bad = i;
            break;
          }
      if (bad == rows) break;
      add_row(t, bad, 1);
    }
    if (a[t][t] < 0) negate_row(t);
    out.diagonal.push_back(a[t][t]);
  }
  // Zero pivots come last; the nonzero ones already divide each other.
  return out;
}

Integer AbelianInvariants::order() const {
  if (free_rank > 0) throw PreconditionError("order of an infinite abelian group");
  Integer o = 1;
  for (const auto& d : torsion) o *= d;
  return o;
}

std::string AbelianInvariants::str() const {
  if (trivial()) return "0";
  std::ostringstream os;
  bool first = true;
  if (free_rank > 0) {
    os << "Z";
    if (free_rank > 1) os << "^" << free_rank;
    first = false;
  }
  for (const auto& d : torsion) {
    if (!first) os << " x ";
    os << "Z/" << d;
    first = false;
  }
  return os.str();
}

namespace {

IntMatrix relation_matrix(const AbelianPresentation& a) {
  IntMatrix m(a.rank, std::vector<Integer>(a.relations.size(), 0));
  for (std::size_t j = 0; j < a.relations.size(); ++j) {
    if (a.relations[j].size() != a.rank) throw InputError("relation length differs from the rank");
    for (std::size_t i = 0; i < a.rank; ++i) m[i][j] = a.relations[j][i];
  }
  return m;
}

// A value in Smith coordinates: new coordinate i of an old vector v is
// (u v)_i modulo modulus[i]; generator i is column keep[i] of uinv.
struct NormalValue {
  std::vector<std::size_t> keep;   // Smith coordinates with modulus != 1
  std::vector<Integer> modulus;    // 0 for free coordinates
  IntMatrix u, uinv;
  std::size_t rank() const { return keep.size(); }
};

NormalValue normalize(const AbelianPresentation& a) {
  NormalValue nv;
  if (a.rank == 0) return nv;
  SmithForm sf = a.relations.empty() ? SmithForm{identity_matrix(a.rank), identity_matrix(a.rank), {}}
                                     : smith_form(relation_matrix(a));
  nv.u = std::move(sf.u);
  nv.uinv = std::move(sf.uinv);
  for (std::size_t i = 0; i < a.rank; ++i) {
    Integer d = i < sf.diagonal.size() ? sf.diagonal[i] : Integer(0);
    if (d == 1) continue;
    nv.keep.push_back(i);
    nv.modulus.push_back(d);
  }
  return nv;
}

Integer reduce(const Integer& v, const Integer& m) {
  if (m == 0) return v;
  Integer r = v % m;
  if (r < 0) r += m;
  return r;
}

// F(a) in Smith coordinates: rank(src) x rank(dst).
IntMatrix normal_map(const NormalValue& src, const NormalValue& dst,
                     const std::vector<std::vector<long long>>& m, std::size_t src_rank, std::size_t dst_rank) {
  if (m.size() != src_rank) throw InputError("map matrix has the wrong number of rows");
  for (const auto& r : m)
    if (r.size() != dst_rank) throw InputError("map matrix has the wrong number of columns");
  IntMatrix out(src.rank(), std::vector<Integer>(dst.rank(), 0));
  for (std::size_t j = 0; j < dst.rank(); ++j) {
    // Old coordinates of generator j of dst, pushed through m, then into src Smith coordinates.
    std::vector<Integer> g(dst_rank);
    for (std::size_t k = 0; k < dst_rank; ++k) g[k] = dst.uinv[k][dst.keep[j]];
    std::vector<Integer> img(src_rank, 0);
    for (std::size_t r = 0; r < src_rank; ++r)
      for (std::size_t k = 0; k < dst_rank; ++k)
        if (m[r][k] != 0 && g[k] != 0) img[r] += Integer(m[r][k]) * g[k];
    for (std::size_t i = 0; i < src.rank(); ++i) {
      Integer v = 0;
      for (std::size_t r = 0; r < src_rank; ++r) v += src.u[src.keep[i]][r] * img[r];
      out[i][j] = reduce(v, src.modulus[i]);
    }
  }
  return out;
}

}  // namespace

AbelianInvariants invariant_factors(const AbelianPresentation& a) {
  NormalValue nv = normalize(a);
  AbelianInvariants inv;
  for (const auto& d : nv.modulus) {
    if (d == 0)
      ++inv.free_rank;
    else
      inv.torsion.push_back(d);
  }
  return inv;
}

AbelianPresentation diagonal_presentation(const AbelianInvariants& inv) {
  AbelianPresentation a;
  a.rank = inv.torsion.size() + inv.free_rank;
  for (std::size_t i = 0; i < inv.torsion.size(); ++i) {
    std::vector<long long> r(a.rank, 0);
    r[i] = static_cast<long long>(inv.torsion[i]);
    a.relations.push_back(std::move(r));
  }
  return a;
}

std::size_t SmallCategory::identity(std::size_t object) const {
  for (std::size_t a = 0; a < arrows.size(); ++a)
    if (arrows[a].identity && arrows[a].src == object) return a;
  throw InputError("object without an identity arrow");
}

// ---------------------------------------------------------------- functors

namespace {

struct NormalFunctor {
  std::vector<NormalValue> values;
  std::vector<IntMatrix> maps;
};

void check_shape(const CoefficientFunctor& f) {
  const auto& c = f.category;
  if (f.values.size() != c.object_count) throw InputError("one value per object expected");
  if (f.maps.size() != c.arrows.size()) throw InputError("one map per arrow expected");
  if (c.table.size() != c.arrows.size() * c.arrows.size()) throw InputError("composition table has the wrong size");
  for (const auto& a : c.arrows)
    if (a.src >= c.object_count || a.dst >= c.object_count) throw InputError("arrow endpoint out of range");
}

NormalFunctor normalize(const CoefficientFunctor& f) {
  check_shape(f);
  NormalFunctor nf;
  for (const auto& v : f.values) nf.values.push_back(normalize(v));
  for (std::size_t a = 0; a < f.category.arrows.size(); ++a) {
    const auto& ar = f.category.arrows[a];
    nf.maps.push_back(normal_map(nf.values[ar.src], nf.values[ar.dst], f.maps[a], f.values[ar.src].rank,
                                 f.values[ar.dst].rank));
  }
  return nf;
}

}  // namespace

FunctorCheck check_functor(const CoefficientFunctor& f) {
  FunctorCheck out;
  NormalFunctor nf = normalize(f);
  const auto& c = f.category;
  auto name = [](std::size_t a) { return "arrow " + std::to_string(a); };
  for (std::size_t a = 0; a < c.arrows.size(); ++a) {
    const auto& ar = c.arrows[a];
    const auto& src = nf.values[ar.src];
    const auto& dst = nf.values[ar.dst];
    const auto& m = nf.maps[a];
    // Relations of the target go to zero.
    for (std::size_t j = 0; j < dst.rank(); ++j) {
      ++out.checks;
      for (std::size_t i = 0; i < src.rank(); ++i)
        if (reduce(dst.modulus[j] * m[i][j], src.modulus[i]) != 0) {
          out.failures.push_back(name(a) + ": not a homomorphism");
          break;
        }
    }
    if (ar.identity) {
      ++out.checks;
      if (ar.src != ar.dst) out.failures.push_back(name(a) + ": identity between distinct objects");
      for (std::size_t i = 0; i < src.rank(); ++i)
        for (std::size_t j = 0; j < src.rank(); ++j)
          if (reduce(m[i][j] - (i == j ? 1 : 0), src.modulus[i]) != 0) {
            out.failures.push_back(name(a) + ": identity acts nontrivially");
            i = j = src.rank();
          }
    }
  }
  for (std::size_t u = 0; u < c.arrows.size(); ++u)
    for (std::size_t t = 0; t < c.arrows.size(); ++t) {
      if (c.arrows[t].dst != c.arrows[u].src) continue;
      ++out.checks;
      std::size_t ut = c.compose(u, t);
      if (ut == SmallCategory::npos) {
        out.failures.push_back("missing composite of " + name(u) + " and " + name(t));
        continue;
      }
      if (c.arrows[ut].src != c.arrows[t].src || c.arrows[ut].dst != c.arrows[u].dst) {
        out.failures.push_back("composite of " + name(u) + " and " + name(t) + " has wrong endpoints");
        continue;
      }
      // F(u ∘ t) = F(t) F(u)
      const auto& a = nf.values[c.arrows[t].src];
      const auto& cc = nf.values[c.arrows[u].dst];
      const auto& ft = nf.maps[t];
      const auto& fu = nf.maps[u];
      const auto& fut = nf.maps[ut];
      for (std::size_t i = 0; i < a.rank(); ++i)
        for (std::size_t j = 0; j < cc.rank(); ++j) {
          Integer v = 0;
          for (std::size_t k = 0; k < fu.size(); ++k) v += ft[i][k] * fu[k][j];
          if (reduce(v - fut[i][j], a.modulus[i]) != 0) {
            out.failures.push_back("F(" + name(u) + " o " + name(t) + ") differs from the composite");
            i = a.rank();
            break;
          }
        }
    }
  return out;
}

CoefficientFunctor constant_point_functor(const AbelianPresentation& value) {
  CoefficientFunctor f;
  f.category.object_count = 1;
  f.category.arrows.push_back({0, 0, true});
  f.category.table = {0};
  f.values = {value};
  std::vector<std::vector<long long>> id(value.rank, std::vector<long long>(value.rank, 0));
  for (std::size_t i = 0; i < value.rank; ++i) id[i][i] = 1;
  f.maps = {id};
  return f;
}

CenterFunctor center_functor(const FusionActionSystem& x) {
  const PGroup& s = x.base();
  CenterFunctor cf;
  cf.orbit = orbit_category(x, true);
  if (!cf.orbit.composition_well_defined) throw PreconditionError("orbit category composition is not well defined");
  cf.objects = cf.orbit.objects;
  const std::size_t nobj = cf.objects.size();
  std::map<SubId, std::size_t> obj_index;
  for (std::size_t i = 0; i < nobj; ++i) obj_index[cf.objects[i]] = i;

  // Presentations of Z(P;X) from exponent boxes over the generators.
  std::vector<std::unordered_map<Elem, std::vector<long long>>> coords(nobj);
  for (std::size_t oi = 0; oi < nobj; ++oi) {
    SubId z = x.x_center(cf.objects[oi]);
    const auto& gens = s.sub(z).gens;
    cf.generators.push_back(gens);
    AbelianPresentation pres;
    pres.rank = gens.size();
    std::vector<std::size_t> ord;
    std::size_t box = 1;
    for (Elem g : gens) {
      ord.push_back(s.table().elem_order(g));
      box *= ord.back();
      if (box > (std::size_t{1} << 20)) throw CapExceeded("center presentation box too large");
    }
    std::vector<long long> e(gens.size(), 0);
    for (std::size_t step = 0; step < box; ++step) {
      Elem v = 0;
      for (std::size_t i = 0; i < gens.size(); ++i) v = s.mul(v, s.table().power(gens[i], e[i]));
      auto [it, fresh] = coords[oi].emplace(v, e);
      if (!fresh && v == 0) pres.relations.push_back(e);
      for (std::size_t i = 0; i < gens.size(); ++i) {
        if (++e[i] < static_cast<long long>(ord[i])) break;
        e[i] = 0;
      }
    }
    for (std::size_t i = 0; i < gens.size(); ++i) {
      std::vector<long long> r(gens.size(), 0);
      r[i] = static_cast<long long>(ord[i]);
      pres.relations.push_back(std::move(r));
    }
    if (coords[oi].size() != s.sub_order(z)) throw PreconditionError("center generators do not generate");
    cf.functor.values.push_back(std::move(pres));
  }

  auto& cat = cf.functor.category;
  cat.object_count = nobj;
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::size_t> arrow_id;
  for (std::size_t pi = 0; pi < nobj; ++pi)
    for (std::size_t qi = 0; qi < nobj; ++qi) {
      SubId p = cf.objects[pi], q = cf.objects[qi];
      const auto& orbits = cf.orbit.hom(p, q);
      for (std::size_t k = 0; k < orbits.size(); ++k) {
        bool ident = false;
        if (p == q) {
          ActionMorphism id = am_identity(x, p);
          ident = std::binary_search(orbits[k].begin(), orbits[k].end(), id);
        }
        arrow_id[{pi, qi, k}] = cat.arrows.size();
        cat.arrows.push_back({pi, qi, ident});
        cf.arrow_orbits.push_back({q, k});

        // z in Z(Q;X) goes to phi^-1(z), which must not depend on the lift.
        SubId zp = x.x_center(p);
        const auto& zgens = cf.generators[qi];
        std::vector<std::vector<long long>> mat(cf.functor.values[pi].rank,
                                                std::vector<long long>(zgens.size(), 0));
        std::vector<Elem> first;
        for (const auto& m : orbits[k]) {
          std::vector<Elem> pre;
          for (Elem z : zgens) {
            auto it = std::find(m.phi.images.begin(), m.phi.images.end(), z);
            if (it == m.phi.images.end())
              throw PreconditionError("Z(Q;X) is not inside the image of a morphism");
            Elem w = s.members(p)[static_cast<std::size_t>(it - m.phi.images.begin())];
            if (!s.contains_elem(zp, w)) throw PreconditionError("preimage of Z(Q;X) leaves Z(P;X)");
            pre.push_back(w);
          }
          if (first.empty() && !pre.empty()) first = pre;
          if (pre != first) throw PreconditionError("center functor depends on the chosen lift");
        }
        for (std::size_t j = 0; j < first.size(); ++j) {
          const auto& c = coords[pi].at(first[j]);
          for (std::size_t i = 0; i < c.size(); ++i) mat[i][j] = c[i];
        }
        cf.functor.maps.push_back(std::move(mat));
      }
    }
  const std::size_t na = cat.arrows.size();
  cat.table.assign(na * na, SmallCategory::npos);
  for (std::size_t u = 0; u < na; ++u)
    for (std::size_t t = 0; t < na; ++t) {
      const auto& au = cat.arrows[u];
      const auto& at = cat.arrows[t];
      if (at.dst != au.src) continue;
      SubId p = cf.objects[at.src], q = cf.objects[at.dst], r = cf.objects[au.dst];
      const auto& mu = cf.orbit.hom(q, r)[cf.arrow_orbits[u].second].front();
      const auto& mt = cf.orbit.hom(p, q)[cf.arrow_orbits[t].second].front();
      std::size_t k = cf.orbit.orbit_of(p, r, am_compose(s, mu, mt));
      cat.table[u * na + t] = arrow_id.at({at.src, au.dst, k});
    }
  return cf;
}

// ---------------------------------------------------------------- bar complex

namespace {

struct VecHash {
  std::size_t operator()(const std::vector<std::uint32_t>& v) const {
    std::size_t h = v.size();
    for (auto x : v) h = h * 1000003u ^ x;
    return h;
  }
};

}  // namespace

CochainComplex bar_complex(const CoefficientFunctor& f, std::size_t max_degree) {
  NormalFunctor nf = normalize(f);
  const auto& cat = f.category;
  std::vector<std::vector<std::uint64_t>> mods(nf.values.size());
  for (std::size_t o = 0; o < nf.values.size(); ++o)
    for (const auto& d : nf.values[o].modulus) {
      if (d == 0) throw InputError("cochain complex needs finite values");
      if (d > Integer(1) << 40) throw CapExceeded("value exponent too large");
      mods[o].push_back(static_cast<std::uint64_t>(d));
    }
  std::vector<std::vector<std::vector<i64>>> maps(nf.maps.size());
  for (std::size_t a = 0; a < nf.maps.size(); ++a)
    for (const auto& row : nf.maps[a]) {
      maps[a].emplace_back();
      for (const auto& v : row) maps[a].back().push_back(static_cast<i64>(v));
    }
  std::vector<std::vector<std::size_t>> out_arrows(cat.object_count);
  for (std::size_t a = 0; a < cat.arrows.size(); ++a)
    if (!cat.arrows[a].identity) out_arrows[cat.arrows[a].src].push_back(a);

  CochainComplex c;
  const std::size_t top = max_degree + 1;
  c.degrees.resize(top + 1);
  std::vector<std::unordered_map<std::vector<std::uint32_t>, std::size_t, VecHash>> index(top + 1);
  std::size_t total = 0;
  auto add_chain = [&](std::size_t n, std::vector<std::uint32_t> ch, std::size_t start) {
    if (++total > limits().max_chains) throw CapExceeded("bar complex exceeds the chain cap");
    auto& d = c.degrees[n];
    index[n].emplace(ch, d.chains.size());
    d.offset.push_back(d.modulus.size());
    for (auto m : mods[start]) d.modulus.push_back(m);
    d.chains.push_back(std::move(ch));
  };
  // Chains over a zero value carry no cochains and are skipped.
  for (std::size_t o = 0; o < cat.object_count; ++o)
    if (!mods[o].empty()) add_chain(0, {static_cast<std::uint32_t>(o)}, o);
  for (std::size_t n = 1; n <= top; ++n) {
    if (n == 1) {
      for (std::size_t o = 0; o < cat.object_count; ++o)
        if (!mods[o].empty())
          for (auto a : out_arrows[o]) add_chain(1, {static_cast<std::uint32_t>(a)}, o);
    } else {
      const auto prev = c.degrees[n - 1].chains;
      for (const auto& ch : prev)
        for (auto a : out_arrows[cat.arrows[ch.back()].dst]) {
          auto next = ch;
          next.push_back(static_cast<std::uint32_t>(a));
          add_chain(n, std::move(next), cat.arrows[ch.front()].src);
        }
    }
  }

  // (df)(a_1..a_{n+1}) = F(a_1) f(a_2..) + sum_i (-1)^i f(.., a_{i+1} a_i, ..) + (-1)^{n+1} f(a_1..a_n)
  c.differential.resize(top);
  for (std::size_t n = 0; n < top; ++n) {
    const auto& dn = c.degrees[n + 1];
    auto& entries = c.differential[n];
    for (std::size_t ci = 0; ci < dn.chains.size(); ++ci) {
      const auto& ch = dn.chains[ci];
      const std::size_t row0 = dn.offset[ci];
      const std::size_t rank = mods[cat.arrows[ch.front()].src].size();
      std::map<std::pair<std::size_t, std::size_t>, i64> acc;
      auto lookup = [&](const std::vector<std::uint32_t>& face) -> std::optional<std::size_t> {
        auto it = index[n].find(face);
        if (it == index[n].end()) return std::nullopt;
        return c.degrees[n].offset[it->second];
      };
      // Head term.
      {
        std::vector<std::uint32_t> tail;
        if (n == 0)
          tail = {static_cast<std::uint32_t>(cat.arrows[ch[0]].dst)};
        else
          tail.assign(ch.begin() + 1, ch.end());
        if (auto col0 = lookup(tail)) {
          const auto& m = maps[ch[0]];
          for (std::size_t i = 0; i < rank; ++i)
            for (std::size_t j = 0; j < m[i].size(); ++j)
              if (m[i][j] != 0) acc[{row0 + i, *col0 + j}] += m[i][j];
        }
      }
      auto add_identity = [&](const std::vector<std::uint32_t>& face, i64 sign) {
        if (auto col0 = lookup(face))
          for (std::size_t i = 0; i < rank; ++i) acc[{row0 + i, *col0 + i}] += sign;
      };
      for (std::size_t i = 1; i <= n; ++i) {
        std::size_t comp = cat.compose(ch[i], ch[i - 1]);
        if (comp == SmallCategory::npos) throw InputError("composition table has a gap");
        if (cat.arrows[comp].identity) continue;
        std::vector<std::uint32_t> face;
        for (std::size_t k = 0; k + 1 < i; ++k) face.push_back(ch[k]);
        face.push_back(static_cast<std::uint32_t>(comp));
        for (std::size_t k = i + 1; k < ch.size(); ++k) face.push_back(ch[k]);
        add_identity(face, (i % 2) ? -1 : 1);
      }
      {
        std::vector<std::uint32_t> face;
        if (n == 0)
          face = {static_cast<std::uint32_t>(cat.arrows[ch[0]].src)};
        else
          face.assign(ch.begin(), ch.end() - 1);
        add_identity(face, ((n + 1) % 2) ? -1 : 1);
      }
      for (const auto& [rc, v] : acc) {
        i64 m = static_cast<i64>(dn.modulus[rc.first]);
        i64 r = ((v % m) + m) % m;
        if (r != 0) entries.push_back({rc.first, rc.second, r});
      }
    }
  }
  return c;
}

bool differential_squares_to_zero(const CochainComplex& c, std::vector<std::string>* failures) {
  bool ok = true;
  for (std::size_t n = 0; n + 1 < c.differential.size(); ++n) {
    std::vector<std::vector<std::pair<std::size_t, i64>>> rows(c.dimension(n + 1));
    for (const auto& e : c.differential[n]) rows[e.row].push_back({e.col, e.value});
    std::map<std::pair<std::size_t, std::size_t>, i128> prod;
    for (const auto& e : c.differential[n + 1])
      for (const auto& [col, w] : rows[e.col]) prod[{e.row, col}] += static_cast<i128>(e.value) * w;
    for (const auto& [rc, v] : prod) {
      i128 m = static_cast<i128>(c.degrees[n + 2].modulus[rc.first]);
      if (v % m != 0) {
        ok = false;
        if (failures)
          failures->push_back("d" + std::to_string(n + 1) + " d" + std::to_string(n) + " nonzero at row " +
                              std::to_string(rc.first) + ", column " + std::to_string(rc.second));
        break;
      }
    }
  }
  return ok;
}

// ---------------------------------------------------------------- cohomology

namespace {

i64 mod_reduce(i128 v, i64 m) {
  i64 r = static_cast<i64>(v % m);
  return r < 0 ? r + m : r;
}

// Extended gcd: returns g = gcd(a,b) with s a + t b = g.
i64 ext_gcd(i64 a, i64 b, i64& s, i64& t) {
  i64 s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (b != 0) {
    i64 q = a / b;
    std::tie(a, b) = std::make_pair(b, a - q * b);
    std::tie(s0, s1) = std::make_pair(s1, s0 - q * s1);
    std::tie(t0, t1) = std::make_pair(t1, t0 - q * t1);
  }
  s = s0;
  t = t0;
  return a;
}

// A lattice L with E <= L <= Z^d, where E is spanned by modulus[c] e_c.
// Rows are kept in echelon form with one row per pivot column and the
// property that (modulus/pivot) times a row lies in the span of later rows,
// so the vectors of L vanishing on the first k columns are spanned by the
// rows with pivot at least k.
class ModLattice {
 public:
  explicit ModLattice(std::vector<i64> modulus) : mod_(std::move(modulus)), rows_(mod_.size()) {}

  void insert(std::vector<i64> v) {
    std::vector<std::vector<i64>> work;
    work.push_back(std::move(v));
    while (!work.empty()) {
      std::vector<i64> w = std::move(work.back());
      work.pop_back();
      place(std::move(w), work);
    }
  }

  std::size_t dim() const { return mod_.size(); }
  const std::vector<i64>& modulus() const { return mod_; }
  bool has_row(std::size_t c) const { return !rows_[c].empty(); }
  const std::vector<i64>& row(std::size_t c) const { return rows_[c]; }
  i64 pivot(std::size_t c) const { return rows_[c].empty() ? mod_[c] : rows_[c][c]; }

  // |L / E| as the product of modulus / pivot.
  Integer index_over_base() const {
    Integer v = 1;
    for (std::size_t c = 0; c < mod_.size(); ++c) v *= mod_[c] / pivot(c);
    return v;
  }

 private:
  void normalize(std::vector<i64>& v, std::size_t from) const {
    for (std::size_t c = from; c < v.size(); ++c) v[c] = mod_reduce(v[c], mod_[c]);
  }

  void place(std::vector<i64> v, std::vector<std::vector<i64>>& work) {
    const std::size_t d = mod_.size();
    normalize(v, 0);
    for (std::size_t c = 0; c < d; ++c) {
      i64 x = v[c];
      if (x == 0) continue;
      if (rows_[c].empty()) {
        i64 s, t;
        i64 g = ext_gcd(x, mod_[c], s, t);
        std::vector<i64> r1(d, 0);
        for (std::size_t k = c; k < d; ++k) r1[k] = mod_reduce(static_cast<i128>(s) * v[k], mod_[k]);
        r1[c] = g;
        if (g != mod_[c]) {
          std::vector<i64> r2(d, 0);
          i64 f = mod_[c] / g;
          for (std::size_t k = c + 1; k < d; ++k) r2[k] = mod_reduce(static_cast<i128>(f) * v[k], mod_[k]);
          work.push_back(std::move(r2));
        }
        rows_[c] = std::move(r1);
        return;
      }
      std::vector<i64>& b = rows_[c];
      i64 y = b[c];
      if (x % y == 0) {
        i64 q = x / y;
        for (std::size_t k = c; k < d; ++k) v[k] = mod_reduce(v[k] - static_cast<i128>(q) * b[k], mod_[k]);
        continue;
      }
      i64 s, t;
      i64 g = ext_gcd(x, y, s, t);
      std::vector<i64> r1(d, 0), r2(d, 0);
      i64 yg = y / g, xg = x / g;
      for (std::size_t k = c; k < d; ++k) {
        r1[k] = mod_reduce(static_cast<i128>(s) * v[k] + static_cast<i128>(t) * b[k], mod_[k]);
        r2[k] = mod_reduce(static_cast<i128>(yg) * v[k] - static_cast<i128>(xg) * b[k], mod_[k]);
      }
      r1[c] = g;
      r2[c] = 0;
      std::vector<i64> closure(d, 0);
      i64 f = mod_[c] / g;
      for (std::size_t k = c + 1; k < d; ++k) closure[k] = mod_reduce(static_cast<i128>(f) * r1[k], mod_[k]);
      b = std::move(r1);
      work.push_back(std::move(closure));
      v = std::move(r2);
    }
  }

  std::vector<i64> mod_;
  std::vector<std::vector<i64>> rows_;
};

std::vector<std::pair<i64, unsigned>> factorize(i64 n) {
  std::vector<std::pair<i64, unsigned>> out;
  for (i64 p = 2; p * p <= n; ++p) {
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) out.push_back({p, e});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

unsigned log_exact(Integer v, i64 p) {
  unsigned e = 0;
  while (v > 1) {
    if (v % p != 0) throw std::logic_error("index is not a prime power");
    v /= p;
    ++e;
  }
  return e;
}

}  // namespace

std::vector<AbelianInvariants> cohomology(const CochainComplex& c, std::size_t max_degree) {
  if (max_degree + 1 > c.differential.size()) throw InputError("cohomology needs one more built degree");
  std::vector<AbelianInvariants> out;
  for (std::size_t n = 0; n <= max_degree; ++n) {
    const std::size_t a = c.dimension(n);
    const std::size_t b = c.dimension(n + 1);
    if (a == 0) {
      out.emplace_back();
      continue;
    }
    std::vector<i64> mod_n(c.degrees[n].modulus.begin(), c.degrees[n].modulus.end());

    // Cocycles: (d_n v, v) with image columns first.
    std::vector<i64> aug;
    aug.insert(aug.end(), c.degrees[n + 1].modulus.begin(), c.degrees[n + 1].modulus.end());
    aug.insert(aug.end(), mod_n.begin(), mod_n.end());
    std::vector<std::vector<std::pair<std::size_t, i64>>> cols(a);
    for (const auto& e : c.differential[n]) cols[e.col].push_back({e.row, e.value});
    ModLattice big(aug);
    for (std::size_t i = 0; i < a; ++i) {
      std::vector<i64> v(a + b, 0);
      for (const auto& [r, val] : cols[i]) v[r] = val;
      v[b + i] = 1;
      big.insert(std::move(v));
    }
    std::vector<std::vector<i64>> cocycles;
    for (std::size_t k = b; k < a + b; ++k)
      if (big.has_row(k)) cocycles.emplace_back(big.row(k).begin() + static_cast<std::ptrdiff_t>(b), big.row(k).end());
    ModLattice z(mod_n);
    for (const auto& r : cocycles) z.insert(r);

    // Coboundaries.
    ModLattice bd(mod_n);
    if (n > 0) {
      std::vector<std::vector<std::pair<std::size_t, i64>>> pcols(c.dimension(n - 1));
      for (const auto& e : c.differential[n - 1]) pcols[e.col].push_back({e.row, e.value});
      for (const auto& col : pcols) {
        if (col.empty()) continue;
        std::vector<i64> v(a, 0);
        for (const auto& [r, val] : col) v[r] = val;
        bd.insert(std::move(v));
      }
    }
    const Integer zsize = z.index_over_base();
    const Integer bsize = bd.index_over_base();
    if (zsize % bsize != 0) throw std::logic_error("coboundaries are not cocycles");
    AbelianInvariants inv;
    if (zsize == bsize) {
      out.push_back(inv);
      continue;
    }
    // |H| / |p^i H| = |Z/E| / |(B + p^i Z)/E| fixes the p-primary part.
    i64 lcm = 1;
    for (i64 m : mod_n) lcm = std::lcm(lcm, m);
    std::vector<std::vector<Integer>> prime_parts;  // per prime: cyclic orders, descending
    for (auto [p, emax] : factorize(lcm)) {
      std::vector<unsigned> at_least(emax + 2, 0);
      Integer prev = 1;
      i64 pi = 1;
      for (unsigned i = 1; i <= emax; ++i) {
        pi *= p;
        ModLattice li(mod_n);
        for (std::size_t k = 0; k < a; ++k)
          if (bd.has_row(k)) li.insert(bd.row(k));
        for (std::size_t k = 0; k < a; ++k)
          if (z.has_row(k)) {
            std::vector<i64> v = z.row(k);
            for (std::size_t m = 0; m < a; ++m) v[m] = mod_reduce(static_cast<i128>(v[m]) * pi, mod_n[m]);
            li.insert(std::move(v));
          }
        Integer h = zsize / li.index_over_base();
        at_least[i] = log_exact(h / prev, p);
        prev = h;
      }
      std::vector<Integer> orders;
      for (unsigned i = emax; i >= 1; --i) {
        unsigned exact = at_least[i] - at_least[i + 1];
        Integer q = 1;
        for (unsigned k = 0; k < i; ++k) q *= p;
        for (unsigned k = 0; k < exact; ++k) orders.push_back(q);
      }
      if (!orders.empty()) prime_parts.push_back(std::move(orders));
    }
    std::size_t len = 0;
    for (const auto& pp : prime_parts) len = std::max(len, pp.size());
    for (std::size_t k = 0; k < len; ++k) {
      Integer d = 1;
      for (const auto& pp : prime_parts)
        if (k < pp.size()) d *= pp[k];
      inv.torsion.push_back(d);
    }
    std::reverse(inv.torsion.begin(), inv.torsion.end());
    if (inv.order() != zsize / bsize) throw std::logic_error("cohomology order mismatch");
    out.push_back(std::move(inv));
  }
  return out;
}

std::vector<AbelianInvariants> higher_limits(const CoefficientFunctor& f, std::size_t max_degree) {
  return cohomology(bar_complex(f, max_degree), max_degree);
}

}  // namespace fusactk
