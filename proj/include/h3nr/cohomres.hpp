#pragma once

// Group cohomology of G-lattices via free resolutions: small
// tensor-of-periodic resolutions for abelian groups, the bar resolution as
// an independent oracle and for table groups, cup products via diagonal
// approximations, restriction along subgroups, and connecting homomorphisms.
//
// Conventions (fixed; changing any is a breaking change):
//  * right modules throughout — group elements act on the right of module
//    basis elements and of coefficient row vectors;
//  * the Z-basis of a degree-d term of a resolution is (generator, group
//    element), flat index gen * |G| + g;
//  * a degree-d cochain with coefficients in a lattice L is the equivariant
//    map determined by its generator values, stored as one row vector of
//    length gens(d) * rank(L), flat index gen * rank + coordinate;
//  * the coboundary is (delta f)(x) = f(d x);
//  * tensor complexes carry the Koszul sign (-1)^p on the 1 (x) d term.
//
// Every resolution is certified exact at construction: the builders attach
// a contracting homotopy s and the constructor checks d o d = 0 together
// with the homotopy identities d s + s d = 1 - (unit o augmentation) on
// every Z-basis element through the stored degrees.  A homotopy is a
// stronger certificate than rank counting; verify_exactness_snf() provides
// the independent rank-based check for tests.

#include <h3nr/glattice.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace h3nr {
namespace cohomres {

using groups::AnyGroup;
using groups::Subgroup;
using glattice::GLattice;
using glattice::LatticeMap;
using glattice::LatticeSES;
using zlinalg::FgAbGroup;
using zlinalg::Int;
using zlinalg::IntMatrix;

// --------------------------------------------------------------------------
// Elements of free right Z[G]-modules
// --------------------------------------------------------------------------

// One term c * (e_gen . g).  A ZGVec is a normalized sum of terms: sorted by
// (gen, g), coefficients nonzero.
struct ZGTerm {
  int gen;
  int g;
  Int c;
};
using ZGVec = std::vector<ZGTerm>;

inline void zg_normalize(ZGVec& v) {
  std::sort(v.begin(), v.end(), [](const ZGTerm& a, const ZGTerm& b) {
    return a.gen != b.gen ? a.gen < b.gen : a.g < b.g;
  });
  ZGVec out;
  out.reserve(v.size());
  for (ZGTerm& t : v) {
    if (!out.empty() && out.back().gen == t.gen && out.back().g == t.g)
      out.back().c += t.c;
    else
      out.push_back(std::move(t));
  }
  out.erase(std::remove_if(out.begin(), out.end(), [](const ZGTerm& t) { return t.c == 0; }),
            out.end());
  v = std::move(out);
}

inline bool zg_equal(ZGVec a, ZGVec b) {
  zg_normalize(a);
  zg_normalize(b);
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i].gen != b[i].gen || a[i].g != b[i].g || a[i].c != b[i].c) return false;
  return true;
}

// --------------------------------------------------------------------------
// Resolution
// --------------------------------------------------------------------------

// A free resolution ... -> M_d -> ... -> M_1 -> M_0 -> Z -> 0 of the
// trivial module by free right Z[G]-modules, together with a contracting
// homotopy.  M_d has gens(d) free generators; the differential is stored as
// one ZGVec per generator; the homotopy is a Z-linear map given on every
// Z-basis element.  The augmentation sends every Z-basis element of M_0 to
// 1 (each builder has a single degree-0 generator).
class Resolution {
 public:
  enum class Kind { Periodic, Tensor, Bar };

  Resolution(std::shared_ptr<const AnyGroup> group, Kind kind, std::vector<int> gens,
             std::vector<std::vector<ZGVec>> diffs,
             std::function<ZGVec(int, int, int)> contract) {
    auto st = std::make_shared<State>();
    st->group = std::move(group);
    st->kind = kind;
    st->gens = std::move(gens);
    st->diffs = std::move(diffs);
    st->contract = std::move(contract);
    s_ = std::move(st);
    if (s_->gens.empty() || s_->gens[0] != 1)
      throw std::invalid_argument("resolution needs a single degree-0 generator");
    if (s_->diffs.size() != s_->gens.size())
      throw std::invalid_argument("one differential table per positive degree");
    verify_certificate();
  }

  const AnyGroup& group() const { return *s_->group; }
  std::shared_ptr<const AnyGroup> group_ptr() const { return s_->group; }
  Kind kind() const { return s_->kind; }
  int max_degree() const { return static_cast<int>(s_->gens.size()) - 1; }
  int gens(int d) const {
    if (d < 0) throw std::invalid_argument("negative degree");
    if (d > max_degree()) throw std::invalid_argument("degree beyond resolution");
    return s_->gens[d];
  }
  long long zdim(int d) const { return static_cast<long long>(gens(d)) * group().order(); }

  // differential of the degree-d generator, d >= 1
  const ZGVec& diff(int d, int gen) const {
    if (d < 1 || d > max_degree()) throw std::invalid_argument("differential degree");
    return s_->diffs[d][gen];
  }

  // differential applied to the Z-basis element (gen, g)
  ZGVec diff_of(int d, int gen, int g) const {
    ZGVec out;
    for (const ZGTerm& t : diff(d, gen)) out.push_back({t.gen, group().mul(t.g, g), t.c});
    zg_normalize(out);
    return out;
  }

  // contracting homotopy on the Z-basis element (gen, g) of degree d,
  // landing in degree d+1; defined for 0 <= d <= max_degree() - 1
  ZGVec contract(int d, int gen, int g) const {
    if (d < 0 || d >= max_degree()) throw std::invalid_argument("contraction degree");
    return s_->contract(d, gen, g);
  }

  // contraction extended Z-linearly to a module element
  ZGVec contract_elt(int d, const ZGVec& v) const {
    ZGVec out;
    for (const ZGTerm& t : v)
      for (const ZGTerm& u : contract(d, t.gen, t.g)) out.push_back({u.gen, u.g, u.c * t.c});
    zg_normalize(out);
    return out;
  }

  bool same(const Resolution& o) const { return s_ == o.s_; }

  // Re-tag with an isomorphic group object using the same element indexing
  // (used to hand a folded tensor resolution back over the caller's group).
  Resolution with_group(std::shared_ptr<const AnyGroup> g) const {
    if (g->order() != group().order())
      throw std::invalid_argument("group order mismatch in re-tag");
    Resolution r = *this;
    auto st = std::make_shared<State>(*s_);
    st->group = std::move(g);
    r.s_ = std::move(st);
    return r;
  }

 private:
  struct State {
    std::shared_ptr<const AnyGroup> group;
    Kind kind = Kind::Periodic;
    std::vector<int> gens;                     // per degree 0..max
    std::vector<std::vector<ZGVec>> diffs;     // diffs[d][gen], d >= 1
    std::function<ZGVec(int, int, int)> contract;
  };
  std::shared_ptr<const State> s_;

  // d o d = 0, augmentation o d_1 = 0, and the homotopy identities
  //   d_{d+1} s_d + s_{d-1} d_d = 1          on every basis element, d >= 1
  //   d_1 s_0 = 1 - unit o augmentation      in degree 0
  // on every Z-basis element.  The identities imply exactness of the
  // augmented complex at every stored degree below the top.
  void verify_certificate() const {
    const AnyGroup& g = *s_->group;
    int n = g.order();
    for (int d = 2; d <= max_degree(); ++d)
      for (int gen = 0; gen < gens(d); ++gen) {
        ZGVec acc;
        for (const ZGTerm& t : diff(d, gen))
          for (const ZGTerm& u : diff(d - 1, t.gen))
            acc.push_back({u.gen, g.mul(u.g, t.g), u.c * t.c});
        zg_normalize(acc);
        if (!acc.empty()) throw std::logic_error("resolution differential does not square to zero");
      }
    for (int gen = 0; gen < gens(1); ++gen) {
      Int s = 0;
      for (const ZGTerm& t : diff(1, gen)) s += t.c;
      if (s != 0) throw std::logic_error("augmentation does not kill the first differential");
    }
    for (int d = 0; d + 1 <= max_degree(); ++d)
      for (int gen = 0; gen < gens(d); ++gen)
        for (int x = 0; x < n; ++x) {
          ZGVec acc;
          for (const ZGTerm& t : contract(d, gen, x))
            for (const ZGTerm& u : diff(d + 1, t.gen))
              acc.push_back({u.gen, g.mul(u.g, t.g), u.c * t.c});
          if (d == 0) {
            acc.push_back({gen, x, -1});
            acc.push_back({0, g.identity(), 1});  // unit o augmentation
          } else {
            for (const ZGTerm& t : diff_of(d, gen, x))
              for (const ZGTerm& u : contract(d - 1, t.gen, t.g))
                acc.push_back({u.gen, u.g, u.c * t.c});
            acc.push_back({gen, x, -1});
          }
          zg_normalize(acc);
          if (!acc.empty()) throw std::logic_error("contracting homotopy identity fails");
        }
  }
};

// --------------------------------------------------------------------------
// Builders
// --------------------------------------------------------------------------

// The 2-periodic resolution of a cyclic group of order n: rank-1 free
// modules with differentials alternating (t - 1) in odd degree and the norm
// Sum t^a in even degree.  The homotopy: on t^a, even degrees take the
// prefix sum e + t + ... + t^{a-1} (one degree up, so the rule at even d
// splits the odd differential); odd degrees take the indicator of a = n-1
// at the identity.
inline Resolution periodic_resolution(int n, int max_deg) {
  if (n < 1) throw std::invalid_argument("cyclic order must be positive");
  if (max_deg < 1) throw std::invalid_argument("resolution needs degree at least 1");
  auto g = std::make_shared<const AnyGroup>(AnyGroup::abelian(std::vector<int>{n}));
  int t = n > 1 ? 1 : 0;
  std::vector<int> gens(max_deg + 1, 1);
  std::vector<std::vector<ZGVec>> diffs(max_deg + 1);
  for (int d = 1; d <= max_deg; ++d) {
    ZGVec v;
    if (d % 2 == 1) {
      v.push_back({0, t, 1});
      v.push_back({0, 0, -1});
    } else {
      for (int a = 0; a < n; ++a) v.push_back({0, a % n, 1});
    }
    zg_normalize(v);
    diffs[d] = {std::move(v)};
  }
  auto contract = [n](int d, int /*gen*/, int a) {
    ZGVec out;
    if (d % 2 == 0) {
      for (int b = 0; b < a; ++b) out.push_back({0, b, 1});
    } else {
      if (a == n - 1) out.push_back({0, 0, 1});
    }
    return out;
  };
  return Resolution(std::move(g), Resolution::Kind::Periodic, std::move(gens),
                    std::move(diffs), std::move(contract));
}

namespace detail {
// generator layout of a tensor resolution: degree-d generators are triples
// (p, a1, a2) with a1 a degree-p generator of the first factor and a2 a
// degree-(d-p) generator of the second, flattened with a1 fastest
struct TensorIndex {
  std::vector<int> g1, g2;              // gens per degree of the two factors
  std::vector<std::vector<int>> off;    // off[d][p]: first flat id of block p
  std::vector<int> total;               // gens per degree of the tensor
  int encode(int d, int p, int a1, int a2) const { return off[d][p] + a1 + g1[p] * a2; }
  // decode flat id in degree d -> (p, a1, a2)
  void decode(int d, int id, int* p, int* a1, int* a2) const {
    int q = 0;
    while (q + 1 <= d && q + 1 < static_cast<int>(off[d].size()) && id >= off[d][q + 1]) ++q;
    int rest = id - off[d][q];
    *p = q;
    *a1 = rest % g1[q];
    *a2 = rest / g1[q];
  }
};
}  // namespace detail

// Total complex of the tensor product of two resolutions over abelian
// groups, a resolution of the trivial module over the product group (the
// product is indexed little-endian: element g1 + |G1| * g2).  Koszul sign
// (-1)^p on the second-factor differential; the homotopy is
// S = s1 (x) 1 + (unit o augmentation) (x) s2.
inline Resolution tensor_resolution(const Resolution& r1, const Resolution& r2) {
  if (!r1.group().abelian_part() || !r2.group().abelian_part())
    throw std::invalid_argument("tensor resolution requires abelian factors");
  int max_deg = std::min(r1.max_degree(), r2.max_degree());
  int o1 = r1.group().order(), o2 = r2.group().order();

  std::vector<int> fac;
  for (int f : r1.group().abelian_part()->factors())
    if (f > 1) fac.push_back(f);
  for (int f : r2.group().abelian_part()->factors())
    if (f > 1) fac.push_back(f);
  if (fac.empty()) fac.push_back(1);
  auto g = std::make_shared<const AnyGroup>(AnyGroup::abelian(fac));
  if (g->order() != o1 * o2) throw std::logic_error("tensor group order mismatch");

  auto ix = std::make_shared<detail::TensorIndex>();
  ix->g1.resize(max_deg + 1);
  ix->g2.resize(max_deg + 1);
  for (int d = 0; d <= max_deg; ++d) {
    ix->g1[d] = r1.gens(d);
    ix->g2[d] = r2.gens(d);
  }
  ix->off.resize(max_deg + 1);
  ix->total.resize(max_deg + 1);
  for (int d = 0; d <= max_deg; ++d) {
    ix->off[d].resize(d + 1);
    int acc = 0;
    for (int p = 0; p <= d; ++p) {
      ix->off[d][p] = acc;
      acc += ix->g1[p] * ix->g2[d - p];
    }
    ix->total[d] = acc;
  }

  std::vector<int> gens(ix->total.begin(), ix->total.end());
  std::vector<std::vector<ZGVec>> diffs(max_deg + 1);
  for (int d = 1; d <= max_deg; ++d) {
    diffs[d].resize(gens[d]);
    for (int p = 0; p <= d; ++p) {
      int q = d - p;
      for (int a2 = 0; a2 < ix->g2[q]; ++a2)
        for (int a1 = 0; a1 < ix->g1[p]; ++a1) {
          ZGVec v;
          if (p >= 1)
            for (const ZGTerm& t : r1.diff(p, a1))
              v.push_back({ix->encode(d - 1, p - 1, t.gen, a2), t.g, t.c});
          if (q >= 1) {
            Int sign = (p % 2 == 0) ? 1 : -1;
            for (const ZGTerm& t : r2.diff(q, a2))
              v.push_back({ix->encode(d - 1, p, a1, t.gen), o1 * t.g, sign * t.c});
          }
          zg_normalize(v);
          diffs[d][ix->encode(d, p, a1, a2)] = std::move(v);
        }
    }
  }

  Resolution f1 = r1, f2 = r2;  // keep factor state alive in the closure
  auto contract = [ix, f1, f2, o1](int d, int gen, int gg) {
    int p, a1, a2;
    ix->decode(d, gen, &p, &a1, &a2);
    int g1 = gg % o1, g2 = gg / o1;
    ZGVec out;
    for (const ZGTerm& t : f1.contract(p, a1, g1))
      out.push_back({ix->encode(d + 1, p + 1, t.gen, a2), t.g + o1 * g2, t.c});
    if (p == 0)
      for (const ZGTerm& t : f2.contract(d, a2, g2))
        out.push_back({ix->encode(d + 1, 0, 0, t.gen), o1 * t.g, t.c});
    zg_normalize(out);
    return out;
  };
  return Resolution(std::move(g), Resolution::Kind::Tensor, std::move(gens),
                    std::move(diffs), std::move(contract));
}

// Tensor of periodic resolutions over the invariant factors of an abelian
// group, re-tagged to the caller's group object (the little-endian element
// indexing agrees).
inline Resolution small_resolution(std::shared_ptr<const AnyGroup> g, int max_deg) {
  const groups::FinAbGroup* a = g->abelian_part();
  if (!a) throw std::invalid_argument("small resolution requires an abelian group");
  std::vector<int> fac;
  for (int f : a->factors())
    if (f > 1) fac.push_back(f);
  if (fac.empty()) return periodic_resolution(1, max_deg).with_group(std::move(g));
  Resolution r = periodic_resolution(fac[0], max_deg);
  for (size_t i = 1; i < fac.size(); ++i)
    r = tensor_resolution(r, periodic_resolution(fac[i], max_deg));
  return r.with_group(std::move(g));
}

// Unnormalized bar resolution: degree-d generators are d-tuples
// [g_1 | ... | g_d] (flat index little-endian base |G|), with
//   d[g_1|...|g_d] = [g_1|...|g_{d-1}] . g_d
//                    + sum_{i<d} (-1)^{d-i} [g_1|...|g_i g_{i+1}|...|g_d]
//                    + (-1)^d [g_2|...|g_d]
// and homotopy s([w] . g) = [w | g].
inline Resolution bar_resolution(std::shared_ptr<const AnyGroup> g, int max_deg) {
  if (max_deg < 1) throw std::invalid_argument("resolution needs degree at least 1");
  int n = g->order();
  long long total = 0, pw = 1;  // pw = n^d
  for (int d = 0; d <= max_deg; ++d) {
    total += pw * n;
    if (total > 8'000'000) throw std::invalid_argument("bar resolution exceeds cost bound");
    pw *= n;
  }

  std::vector<int> gens(max_deg + 1);
  pw = 1;
  for (int d = 0; d <= max_deg; ++d) {
    gens[d] = static_cast<int>(pw);
    pw *= n;
  }
  auto decode = [n](int id, int d) {
    std::vector<int> w(d);
    for (int i = 0; i < d; ++i) {
      w[i] = id % n;
      id /= n;
    }
    return w;
  };
  auto encode = [n](const std::vector<int>& w) {
    int id = 0;
    for (int i = static_cast<int>(w.size()) - 1; i >= 0; --i) id = id * n + w[i];
    return id;
  };
  std::vector<std::vector<ZGVec>> diffs(max_deg + 1);
  for (int d = 1; d <= max_deg; ++d) {
    diffs[d].resize(gens[d]);
    for (int id = 0; id < gens[d]; ++id) {
      std::vector<int> w = decode(id, d);
      ZGVec v;
      std::vector<int> head(w.begin(), w.end() - 1);
      v.push_back({encode(head), w[d - 1], 1});
      for (int i = 0; i + 1 < d; ++i) {
        std::vector<int> m;
        m.reserve(d - 1);
        for (int j = 0; j < d; ++j) {
          if (j == i) {
            m.push_back(g->mul(w[i], w[i + 1]));
            ++j;
          } else {
            m.push_back(w[j]);
          }
        }
        v.push_back({encode(m), g->identity(), ((d - 1 - i) % 2 == 0) ? Int(1) : Int(-1)});
      }
      std::vector<int> tail(w.begin() + 1, w.end());
      v.push_back({encode(tail), g->identity(), (d % 2 == 0) ? Int(1) : Int(-1)});
      zg_normalize(v);
      diffs[d][id] = std::move(v);
    }
  }
  auto contract = [n](int d, int gen, int gg) {
    long long stride = 1;
    for (int i = 0; i < d; ++i) stride *= n;
    return ZGVec{{static_cast<int>(gen + stride * gg), 0, 1}};
  };
  return Resolution(std::move(g), Resolution::Kind::Bar, std::move(gens), std::move(diffs),
                    std::move(contract));
}

// --------------------------------------------------------------------------
// Independent SNF-based exactness check (the homotopy certificate is the
// construction-time default; this is the rank-counting cross-check)
// --------------------------------------------------------------------------

// Exactness of the augmented complex at degrees 0..max-1 by ranks: the
// composite of consecutive maps vanishes (checked at construction), every
// differential has saturated image (no SNF torsion), and ranks add up to
// the full dimension at each checked spot.
inline void verify_exactness_snf(const Resolution& r) {
  int n = r.group().order();
  std::vector<int> rank(r.max_degree() + 1, 0);
  std::vector<bool> saturated(r.max_degree() + 1, false);
  for (int d = 1; d <= r.max_degree(); ++d) {
    sparse::SparseMatrix m(static_cast<int>(r.zdim(d)), static_cast<int>(r.zdim(d - 1)));
    for (int gen = 0; gen < r.gens(d); ++gen)
      for (int g = 0; g < n; ++g)
        for (const ZGTerm& t : r.diff_of(d, gen, g)) m.add_term(gen * n + g, t.gen * n + t.g, t.c);
    m.normalize();
    sparse::SmithSummary s = sparse::smith_summary(std::move(m));
    rank[d] = s.rank;
    saturated[d] = s.torsion.empty();
  }
  // augmentation has rank 1; exactness at degree 0: rank d_1 = dim_0 - 1
  if (rank[1] != static_cast<int>(r.zdim(0)) - 1 || !saturated[1])
    throw std::logic_error("resolution not exact at degree 0");
  for (int d = 1; d + 1 <= r.max_degree(); ++d) {
    if (rank[d] + rank[d + 1] != static_cast<int>(r.zdim(d)) || !saturated[d + 1])
      throw std::logic_error("resolution not exact at degree " + std::to_string(d));
  }
}

// --------------------------------------------------------------------------
// Cochain complexes with lattice coefficients
// --------------------------------------------------------------------------

inline long long cochain_dim(const Resolution& r, const GLattice& l, int d) {
  return static_cast<long long>(r.gens(d)) * l.rank();
}

// matrix of the coboundary C^d -> C^{d+1} (rows = dim C^d)
inline IntMatrix delta_dense(const Resolution& r, const GLattice& l, int d) {
  int rank = l.rank();
  IntMatrix m(r.gens(d) * rank, r.gens(d + 1) * rank);
  for (int x = 0; x < r.gens(d + 1); ++x)
    for (const ZGTerm& t : r.diff(d + 1, x)) {
      IntMatrix mg = l.element_matrix(t.g);
      for (int a = 0; a < rank; ++a)
        for (int b = 0; b < rank; ++b)
          if (mg(a, b) != 0) m(t.gen * rank + a, x * rank + b) += t.c * mg(a, b);
    }
  return m;
}

inline sparse::SparseMatrix delta_sparse(const Resolution& r, const GLattice& l, int d) {
  int rank = l.rank();
  sparse::SparseMatrix m(r.gens(d) * rank, r.gens(d + 1) * rank);
  for (int x = 0; x < r.gens(d + 1); ++x)
    for (const ZGTerm& t : r.diff(d + 1, x)) {
      IntMatrix mg = l.element_matrix(t.g);
      for (int a = 0; a < rank; ++a)
        for (int b = 0; b < rank; ++b)
          if (mg(a, b) != 0) m.add_term(t.gen * rank + a, x * rank + b, t.c * mg(a, b));
    }
  m.normalize();
  return m;
}

// apply the coboundary to one cochain
inline std::vector<Int> delta_apply(const Resolution& r, const GLattice& l, int d,
                                    const std::vector<Int>& f) {
  int rank = l.rank();
  if (static_cast<long long>(f.size()) != cochain_dim(r, l, d))
    throw std::invalid_argument("cochain dimension mismatch");
  std::vector<Int> out(static_cast<size_t>(r.gens(d + 1)) * rank, 0);
  for (int x = 0; x < r.gens(d + 1); ++x)
    for (const ZGTerm& t : r.diff(d + 1, x)) {
      std::vector<Int> v(f.begin() + static_cast<size_t>(t.gen) * rank,
                         f.begin() + static_cast<size_t>(t.gen + 1) * rank);
      v = l.apply_element(std::move(v), t.g);
      for (int b = 0; b < rank; ++b) out[static_cast<size_t>(x) * rank + b] += t.c * v[b];
    }
  return out;
}

// Isomorphism class of H^i(G, L) alone — the cheap path.  For i >= 1 the
// group is killed by |G|, hence finite, so it coincides with the torsion of
// the cokernel of delta^{i-1}: any x with n x in the image is already a
// cocycle because its coboundary is n-torsion in a free group.  H^0 is the
// invariant lattice.
inline FgAbGroup cohomology_group(const Resolution& r, const GLattice& l, int i) {
  if (i < 0 || i > r.max_degree()) throw std::invalid_argument("degree out of range");
  if (i == 0) return FgAbGroup::from_parts(l.invariants_basis().rows(), {});
  // every invariant factor of the coboundary divides |G| (the cokernel's
  // torsion is H^i, killed by the group order), so the prime-local Smith
  // form applies
  sparse::SmithSummary s =
      sparse::smith_summary_bounded(delta_sparse(r, l, i - 1), r.group().order());
  return FgAbGroup::from_parts(0, std::move(s.torsion));
}

// A cohomology class: a cocycle representative on a named resolution.
struct CohomClass {
  Resolution res;
  GLattice coeff;
  int degree = 0;
  std::vector<Int> rep;
};

// Full cochain-level presentation of H^i(G, L): cocycle basis, coboundary
// coordinates in that basis (Hermite form), canonical generators with their
// orders, and canonical coordinates for any class so equality is a plain
// vector comparison.
class CohomologySpace {
 public:
  CohomologySpace(Resolution r, GLattice l, int i)
      : r_(std::move(r)), l_(std::move(l)), deg_(i) {
    if (i < 0 || i + 1 > r_.max_degree())
      throw std::invalid_argument("cohomology space needs one degree above i");
    kernel_ = zlinalg::kernel_basis(delta_dense(r_, l_, i));
    kpiv_ = kernel_.rows() ? zlinalg::pivot_cols_of_echelon(kernel_) : std::vector<int>{};
    int k = kernel_.rows();
    IntMatrix rel(0, k);
    if (i >= 1) {
      IntMatrix im = delta_dense(r_, l_, i - 1);
      rel = IntMatrix(im.rows(), k);
      for (int row = 0; row < im.rows(); ++row) {
        std::vector<Int> c;
        if (!zlinalg::solve_against_hnf(kernel_, kpiv_, im.row(row), &c))
          throw std::logic_error("coboundary escapes the cocycle lattice");
        for (int j = 0; j < k; ++j) rel(row, j) = c[j];
      }
    }
    relh_ = zlinalg::hnf(rel);
    rpiv_ = relh_.rows() ? zlinalg::pivot_cols_of_echelon(relh_) : std::vector<int>{};

    zlinalg::SmithForm s = zlinalg::smith_normal_form(rel, false, true);
    IntMatrix rinv = k > 0 ? zlinalg::unimodular_inverse(s.right) : IntMatrix(0, 0);
    std::vector<Int> parts;
    for (int q = 0; q < k; ++q) {
      Int ord = q < static_cast<int>(s.d.size()) ? s.d[q] : Int(0);
      parts.push_back(ord);
      if (ord == 1) continue;
      std::vector<Int> coords = zlinalg::reduce_mod_hnf(relh_, rpiv_, rinv.row(q));
      gens_.push_back(CohomClass{r_, l_, deg_, zlinalg::vec_mat(coords, kernel_)});
      orders_.push_back(ord);
    }
    iso_ = FgAbGroup::from_parts(0, std::move(parts));
  }

  const Resolution& res() const { return r_; }
  const GLattice& coeff() const { return l_; }
  int degree() const { return deg_; }
  const FgAbGroup& iso() const { return iso_; }
  const IntMatrix& kernel() const { return kernel_; }
  const IntMatrix& rel_hnf() const { return relh_; }
  const std::vector<CohomClass>& generators() const { return gens_; }
  const std::vector<Int>& orders() const { return orders_; }

  // coordinates of a cocycle in the cocycle basis; throws if not a cocycle
  std::vector<Int> coords_of(const std::vector<Int>& cocycle) const {
    std::vector<Int> c;
    if (!zlinalg::solve_against_hnf(kernel_, kpiv_, cocycle, &c))
      throw std::invalid_argument("vector is not a cocycle");
    return c;
  }

  // canonical coordinates of the class (reduced mod coboundaries);
  // classes are equal iff their canonical coordinates are equal
  std::vector<Int> class_canon(const std::vector<Int>& cocycle) const {
    return zlinalg::reduce_mod_hnf(relh_, rpiv_, coords_of(cocycle));
  }

  bool is_coboundary(const std::vector<Int>& cocycle) const {
    for (const Int& v : class_canon(cocycle))
      if (v != 0) return false;
    return true;
  }

  bool same_class(const std::vector<Int>& a, const std::vector<Int>& b) const {
    return class_canon(a) == class_canon(b);
  }

 private:
  Resolution r_;
  GLattice l_;
  int deg_;
  IntMatrix kernel_, relh_;
  std::vector<int> kpiv_, rpiv_;
  FgAbGroup iso_;
  std::vector<CohomClass> gens_;
  std::vector<Int> orders_;
};

inline CohomologySpace cohomology_space(const Resolution& r, const GLattice& l, int i) {
  return CohomologySpace(r, l, i);
}

// H^i with canonical generators (the full-contract entry point).
inline std::pair<FgAbGroup, std::vector<CohomClass>> cohomology(const Resolution& r,
                                                                const GLattice& l, int i) {
  CohomologySpace s(r, l, i);
  return {s.iso(), s.generators()};
}

// Tate cohomology in degrees 0 and -1 over the full group.
inline FgAbGroup tate_low(const GLattice& l, int i) {
  Subgroup full = groups::full_subgroup(l.group());
  if (i == 0) return glattice::tate_h0(l, full);
  if (i == -1) return glattice::tate_h_minus1(l, full);
  throw std::invalid_argument("tate_low computes degrees 0 and -1 only");
}

// --------------------------------------------------------------------------
// Diagonal approximations and cup products
// --------------------------------------------------------------------------

// One term c * ((e_gen1 . g1) (x) (e_gen2 . g2)) of an element of
// (R (x) R)_n, the first factor sitting in degree p.
struct DiagTerm {
  int p;
  int gen1, g1;
  int gen2, g2;
  Int c;
};
using DiagVec = std::vector<DiagTerm>;

inline void diag_normalize(DiagVec& v) {
  auto key = [](const DiagTerm& t) {
    return std::make_tuple(t.p, t.gen1, t.g1, t.gen2, t.g2);
  };
  std::sort(v.begin(), v.end(),
            [&](const DiagTerm& a, const DiagTerm& b) { return key(a) < key(b); });
  DiagVec out;
  out.reserve(v.size());
  for (DiagTerm& t : v) {
    if (!out.empty() && key(out.back()) == key(t))
      out.back().c += t.c;
    else
      out.push_back(std::move(t));
  }
  out.erase(std::remove_if(out.begin(), out.end(), [](const DiagTerm& t) { return t.c == 0; }),
            out.end());
  v = std::move(out);
}

namespace detail {
// differential of the tensor-square complex applied to one term,
// with the Koszul sign (-1)^p on the second factor
inline void diag_differential(const Resolution& r, int total, const DiagTerm& t, DiagVec* out) {
  const AnyGroup& g = r.group();
  if (t.p >= 1)
    for (const ZGTerm& u : r.diff(t.p, t.gen1))
      out->push_back({t.p - 1, u.gen, g.mul(u.g, t.g1), t.gen2, t.g2, t.c * u.c});
  int q = total - t.p;
  if (q >= 1) {
    Int sign = (t.p % 2 == 0) ? 1 : -1;
    for (const ZGTerm& u : r.diff(q, t.gen2))
      out->push_back({t.p, t.gen1, t.g1, u.gen, g.mul(u.g, t.g2), sign * t.c * u.c});
  }
}
}  // namespace detail

// Chain map R -> R (x) R over Z[G] (G acting diagonally) lifting the
// identity of Z; components stored for each generator through total degree
// max_total.  The chain-map identity is verified on every generator.
class DiagonalApprox {
 public:
  DiagonalApprox(Resolution r, std::vector<std::vector<DiagVec>> comp)
      : r_(std::move(r)), comp_(std::move(comp)) {
    verify();
  }
  const Resolution& res() const { return r_; }
  int max_total() const { return static_cast<int>(comp_.size()) - 1; }
  const DiagVec& component(int n, int gen) const { return comp_[n][gen]; }

 private:
  Resolution r_;
  std::vector<std::vector<DiagVec>> comp_;

  void verify() const {
    const AnyGroup& g = r_.group();
    // degree 0: generator |-> generator (x) generator
    const DiagVec& base = comp_[0][0];
    if (base.size() != 1 || base[0].p != 0 || base[0].gen1 != 0 || base[0].gen2 != 0 ||
        base[0].g1 != g.identity() || base[0].g2 != g.identity() || base[0].c != 1)
      throw std::logic_error("diagonal does not lift the identity in degree 0");
    for (int n = 1; n <= max_total(); ++n)
      for (int gen = 0; gen < r_.gens(n); ++gen) {
        DiagVec lhs;
        for (const DiagTerm& t : comp_[n][gen]) detail::diag_differential(r_, n, t, &lhs);
        DiagVec rhs;
        for (const ZGTerm& t : r_.diff(n, gen))
          for (const DiagTerm& u : comp_[n - 1][t.gen])
            rhs.push_back({u.p, u.gen1, g.mul(u.g1, t.g), u.gen2, g.mul(u.g2, t.g), u.c * t.c});
        diag_normalize(lhs);
        diag_normalize(rhs);
        bool equal = lhs.size() == rhs.size() &&
                     std::equal(lhs.begin(), lhs.end(), rhs.begin(),
                                [](const DiagTerm& a, const DiagTerm& b) {
                                  return a.p == b.p && a.gen1 == b.gen1 && a.g1 == b.g1 &&
                                         a.gen2 == b.gen2 && a.g2 == b.g2 && a.c == b.c;
                                });
        if (!equal) throw std::logic_error("diagonal approximation is not a chain map");
      }
  }
};

// Diagonal approximation constructed by lifting through the contracting
// homotopy: Delta_0(x0) = x0 (x) x0 and
// Delta_n(gen) = S_tensor(Delta_{n-1}(d gen)), where the tensor-square
// homotopy is S = s (x) 1 + (unit o augmentation) (x) s.  The chain-map
// identity certifies each degree.
inline DiagonalApprox diagonal_approx(const Resolution& r, int up_to = 4) {
  if (up_to > r.max_degree()) throw std::invalid_argument("diagonal needs resolution degrees");
  const AnyGroup& g = r.group();
  int e = g.identity();
  std::vector<std::vector<DiagVec>> comp(up_to + 1);
  comp[0] = {DiagVec{{0, 0, e, 0, e, 1}}};
  for (int n = 1; n <= up_to; ++n) {
    comp[n].resize(r.gens(n));
    for (int gen = 0; gen < r.gens(n); ++gen) {
      DiagVec prev;
      for (const ZGTerm& t : r.diff(n, gen))
        for (const DiagTerm& u : comp[n - 1][t.gen])
          prev.push_back({u.p, u.gen1, g.mul(u.g1, t.g), u.gen2, g.mul(u.g2, t.g), u.c * t.c});
      diag_normalize(prev);
      DiagVec out;
      for (const DiagTerm& t : prev) {
        for (const ZGTerm& u : r.contract(t.p, t.gen1, t.g1))
          out.push_back({t.p + 1, u.gen, u.g, t.gen2, t.g2, t.c * u.c});
        if (t.p == 0)
          for (const ZGTerm& u : r.contract(n - 1, t.gen2, t.g2))
            out.push_back({0, 0, e, u.gen, u.g, t.c * u.c});
      }
      diag_normalize(out);
      comp[n][gen] = std::move(out);
    }
  }
  return DiagonalApprox(std::move(r), std::move(comp));
}

// The Alexander-Whitney diagonal transported to the right-module bar
// resolution: [g_1|...|g_n] |-> sum_i (-1)^{i(n-i)}
// ([g_1|...|g_i] . (g_{i+1} ... g_n)) (x) [g_{i+1}|...|g_n].
// The mirror of the left-module formula picks up the Koszul sign of the
// degree split.  Independent of the lifted construction; used as the
// cup-product oracle (the constructor checks the chain-map identity).
inline DiagonalApprox aw_diagonal(const Resolution& r, int up_to = 4) {
  if (r.kind() != Resolution::Kind::Bar)
    throw std::invalid_argument("Alexander-Whitney diagonal is defined on the bar resolution");
  if (up_to > r.max_degree()) throw std::invalid_argument("diagonal needs resolution degrees");
  const AnyGroup& g = r.group();
  int n = g.order(), e = g.identity();
  std::vector<std::vector<DiagVec>> comp(up_to + 1);
  for (int d = 0; d <= up_to; ++d) {
    comp[d].resize(r.gens(d));
    for (int id = 0; id < r.gens(d); ++id) {
      std::vector<int> w(d);
      int v = id;
      for (int i = 0; i < d; ++i) {
        w[i] = v % n;
        v /= n;
      }
      DiagVec terms;
      for (int i = 0; i <= d; ++i) {
        int head = 0;
        for (int j = i - 1; j >= 0; --j) head = head * n + w[j];
        int tailprod = e;
        int tail = 0;
        for (int j = d - 1; j >= i; --j) tail = tail * n + w[j];
        for (int j = i; j < d; ++j) tailprod = g.mul(tailprod, w[j]);
        Int sign = (i * (d - i)) % 2 == 0 ? 1 : -1;
        terms.push_back({i, head, tailprod, tail, e, sign});
      }
      diag_normalize(terms);
      comp[d][id] = std::move(terms);
    }
  }
  return DiagonalApprox(std::move(r), std::move(comp));
}

// Cup product of two classes along a declared coefficient pairing
// L1 (x) L2 -> L3 (tensor basis flat index i + rank(L1) * j):
// (x cup y)(gen) = sum over diagonal terms in bidegree (deg x, deg y) of
// c * pairing(x(gen1) . g1 (x) y(gen2) . g2).
inline CohomClass cup(const DiagonalApprox& dg, const CohomClass& x, const CohomClass& y,
                      const LatticeMap& pairing) {
  if (!x.res.same(y.res) || !x.res.same(dg.res()))
    throw std::invalid_argument("cup needs both classes over the diagonal's resolution");
  int p = x.degree, q = y.degree, total = p + q;
  if (total > dg.max_total()) throw std::invalid_argument("cup degree beyond diagonal components");
  int r1 = x.coeff.rank(), r2 = y.coeff.rank(), r3 = pairing.cod.rank();
  if (pairing.dom.rank() != r1 * r2)
    throw std::invalid_argument("pairing domain is not the coefficient tensor product");
  const Resolution& r = x.res;
  std::vector<Int> out(static_cast<size_t>(r.gens(total)) * r3, 0);
  for (int gen = 0; gen < r.gens(total); ++gen)
    for (const DiagTerm& t : dg.component(total, gen)) {
      if (t.p != p) continue;
      std::vector<Int> vx(x.rep.begin() + static_cast<size_t>(t.gen1) * r1,
                          x.rep.begin() + static_cast<size_t>(t.gen1 + 1) * r1);
      vx = x.coeff.apply_element(std::move(vx), t.g1);
      std::vector<Int> vy(y.rep.begin() + static_cast<size_t>(t.gen2) * r2,
                          y.rep.begin() + static_cast<size_t>(t.gen2 + 1) * r2);
      vy = y.coeff.apply_element(std::move(vy), t.g2);
      for (int i = 0; i < r1; ++i) {
        if (vx[i] == 0) continue;
        for (int j = 0; j < r2; ++j) {
          if (vy[j] == 0) continue;
          Int cij = t.c * vx[i] * vy[j];
          for (int b = 0; b < r3; ++b) {
            const Int& pm = pairing.m(i + r1 * j, b);
            if (pm != 0) out[static_cast<size_t>(gen) * r3 + b] += cij * pm;
          }
        }
      }
    }
  return CohomClass{r, pairing.cod, total, std::move(out)};
}

// Convenience overload building the lifted diagonal on demand.
inline CohomClass cup(const CohomClass& x, const CohomClass& y, const LatticeMap& pairing) {
  return cup(diagonal_approx(x.res, x.degree + y.degree), x, y, pairing);
}

// Cokernel of the cup product H^2(G,Z) x H^2(G,Z) -> H^4(G,Z) for a finite
// abelian group, computed from generator pairs (bilinearity makes them
// sufficient) on the small resolution.
inline FgAbGroup cup_coker_2_2_4(std::shared_ptr<const AnyGroup> g) {
  if (!g->abelian_part()) throw std::invalid_argument("cup cokernel path requires abelian input");
  if (g->order() == 1) return FgAbGroup();
  GLattice z = glattice::trivial_lattice(g, 1);
  Resolution r = small_resolution(g, 5);
  DiagonalApprox dg = diagonal_approx(r, 4);
  CohomologySpace h2(r, z, 2);
  CohomologySpace h4(r, z, 4);
  int k4 = h4.kernel().rows();
  LatticeMap pairing{glattice::tensor_lattice(z, z), z, IntMatrix::identity(1)};
  const auto& gens2 = h2.generators();
  IntMatrix rows(h4.rel_hnf().rows() + static_cast<int>(gens2.size() * gens2.size()), k4);
  for (int i = 0; i < h4.rel_hnf().rows(); ++i)
    for (int j = 0; j < k4; ++j) rows(i, j) = h4.rel_hnf()(i, j);
  int at = h4.rel_hnf().rows();
  for (const CohomClass& a : gens2)
    for (const CohomClass& b : gens2) {
      CohomClass c = cup(dg, a, b, pairing);
      std::vector<Int> coords = h4.coords_of(c.rep);
      for (int j = 0; j < k4; ++j) rows(at, j) = coords[j];
      ++at;
    }
  return zlinalg::cokernel(rows);
}

// --------------------------------------------------------------------------
// Chain maps between resolutions (comparison and restriction)
// --------------------------------------------------------------------------

// A chain map from one resolution to another over a group monomorphism,
// stored per generator; the receiving module is viewed as a module over the
// source group through the map.
struct ChainMap {
  Resolution from, to;
  std::function<int(int)> gmap;             // source element -> target element
  std::vector<std::vector<ZGVec>> comp;     // comp[d][gen] in TO's degree d

  // pull a TO-cochain back to a FROM-cochain (coefficients: a lattice over
  // the target group, acted through gmap on the source side)
  std::vector<Int> pull(int d, const std::vector<Int>& f, const GLattice& coeff_to) const {
    int rank = coeff_to.rank();
    if (static_cast<long long>(f.size()) != cochain_dim(to, coeff_to, d))
      throw std::invalid_argument("cochain dimension mismatch");
    std::vector<Int> out(static_cast<size_t>(from.gens(d)) * rank, 0);
    for (int gen = 0; gen < from.gens(d); ++gen)
      for (const ZGTerm& t : comp[d][gen]) {
        std::vector<Int> v(f.begin() + static_cast<size_t>(t.gen) * rank,
                           f.begin() + static_cast<size_t>(t.gen + 1) * rank);
        v = coeff_to.apply_element(std::move(v), t.g);
        for (int b = 0; b < rank; ++b) out[static_cast<size_t>(gen) * rank + b] += t.c * v[b];
      }
    return out;
  }
};

// Lift the identity of Z to a chain map through the target's contracting
// homotopy: f_0(gen) = gen, f_d(gen) = s(f_{d-1}(d gen)).  The chain-map
// identity d f = f d is verified on every generator (exactness of the
// target makes the lift work; the check certifies the implementation).
inline ChainMap lift_chain_map(const Resolution& from, const Resolution& to,
                               std::function<int(int)> gmap, int up_to) {
  if (up_to > from.max_degree() || up_to > to.max_degree())
    throw std::invalid_argument("chain map degree exceeds a resolution");
  std::vector<std::vector<ZGVec>> comp(up_to + 1);
  comp[0] = {ZGVec{{0, to.group().identity(), 1}}};
  const AnyGroup& tg = to.group();
  for (int d = 1; d <= up_to; ++d) {
    comp[d].resize(from.gens(d));
    for (int gen = 0; gen < from.gens(d); ++gen) {
      ZGVec img;  // f_{d-1}(d gen) in TO's degree d-1
      for (const ZGTerm& t : from.diff(d, gen)) {
        int h = gmap(t.g);
        for (const ZGTerm& u : comp[d - 1][t.gen])
          img.push_back({u.gen, tg.mul(u.g, h), u.c * t.c});
      }
      zg_normalize(img);
      comp[d][gen] = to.contract_elt(d - 1, img);
      ZGVec check;
      for (const ZGTerm& t : comp[d][gen])
        for (const ZGTerm& u : to.diff_of(d, t.gen, t.g)) check.push_back({u.gen, u.g, u.c * t.c});
      if (!zg_equal(std::move(check), std::move(img)))
        throw std::logic_error("chain map lift does not commute with differentials");
    }
  }
  return ChainMap{from, to, std::move(gmap), std::move(comp)};
}

// A subgroup H of an abelian group packaged for restriction: H as a group
// of its own, a small resolution of it, and the chain map into the parent
// resolution along the inclusion.
struct SubgroupResolution {
  std::shared_ptr<const AnyGroup> hgroup;
  groups::SubgroupStructure st;
  Resolution res;
  ChainMap into_parent;
};

inline SubgroupResolution subgroup_resolution(const Resolution& parent, const Subgroup& h,
                                              int max_deg) {
  groups::SubgroupStructure st = groups::subgroup_structure(parent.group(), h);
  auto hg = std::make_shared<const AnyGroup>(AnyGroup::abelian(
      st.factors.empty() ? std::vector<int>{1} : st.factors));
  Resolution res = small_resolution(hg, max_deg);
  auto parent_ptr = parent.group_ptr();
  auto hgp = hg;
  auto structure = st;
  auto gmap = [hgp, parent_ptr, structure](int x) {
    std::vector<int> t = hgp->abelian_part()->tuple_of(x);
    int e = parent_ptr->identity();
    for (size_t i = 0; i < t.size(); ++i)
      for (int rep = 0; rep < t[i]; ++rep) e = parent_ptr->mul(e, structure.generators[i]);
    return e;
  };
  ChainMap cm = lift_chain_map(res, parent, gmap, max_deg);
  return SubgroupResolution{std::move(hg), std::move(st), std::move(res), std::move(cm)};
}

// Classes of H^2(G, L) that restrict to zero on every cyclic subgroup (the
// everywhere-locally-trivial classes).
inline FgAbGroup sha2_omega(const Resolution& r, const GLattice& l) {
  if (r.max_degree() < 3)
    throw std::invalid_argument("sha needs resolution degree 3");
  CohomologySpace s(r, l, 2);
  int k = s.kernel().rows();
  if (k == 0) return FgAbGroup();

  std::vector<IntMatrix> maps;      // k x (cyclic cocycle dims)
  std::vector<IntMatrix> rels;      // coboundary relations downstairs
  for (const Subgroup& h : groups::subgroups(r.group())) {
    if (h.order() == 1) continue;
    bool cyclic = false;
    for (int x : h.elements)
      if (r.group().element_order(x) == h.order()) {
        cyclic = true;
        break;
      }
    if (!cyclic) continue;
    SubgroupResolution sub = subgroup_resolution(r, h, 3);
    GLattice lh = glattice::restrict_lattice(l, h);
    CohomologySpace sh(sub.res, lh, 2);
    IntMatrix a(k, sh.kernel().rows());
    for (int i = 0; i < k; ++i) {
      std::vector<Int> down = sub.into_parent.pull(2, s.kernel().row(i), l);
      std::vector<Int> c = sh.coords_of(down);
      for (int j = 0; j < sh.kernel().rows(); ++j) a(i, j) = c[j];
    }
    maps.push_back(std::move(a));
    rels.push_back(sh.rel_hnf());
  }

  int wide = 0, deep = 0;
  for (const IntMatrix& a : maps) wide += a.cols();
  for (const IntMatrix& rel : rels) deep += rel.rows();
  IntMatrix big(k + deep, wide);
  int c0 = 0;
  for (const IntMatrix& a : maps) {
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < a.cols(); ++j) big(i, c0 + j) = a(i, j);
    c0 += a.cols();
  }
  int r0 = k;
  c0 = 0;
  for (size_t bi = 0; bi < rels.size(); ++bi) {
    for (int i = 0; i < rels[bi].rows(); ++i)
      for (int j = 0; j < rels[bi].cols(); ++j) big(r0 + i, c0 + j) = rels[bi](i, j);
    r0 += rels[bi].rows();
    c0 += rels[bi].cols();
  }
  IntMatrix ker = zlinalg::kernel_basis(big);
  IntMatrix sol(ker.rows() + s.rel_hnf().rows(), k);
  for (int i = 0; i < ker.rows(); ++i)
    for (int j = 0; j < k; ++j) sol(i, j) = ker(i, j);
  for (int i = 0; i < s.rel_hnf().rows(); ++i)
    for (int j = 0; j < k; ++j) sol(ker.rows() + i, j) = s.rel_hnf()(i, j);
  return zlinalg::subquotient(sol, s.rel_hnf());
}

// --------------------------------------------------------------------------
// Connecting homomorphism
// --------------------------------------------------------------------------

// A coefficient module presented as lattice / rowspan(relations); honest
// lattices use empty relations.
struct CoeffModule {
  GLattice lat;
  IntMatrix rel;  // rows in Z^rank; must be stable under the action
};

// delta: C^G -> H^1(G, A) for 0 -> A -> B -> C -> 0: lift the invariant x
// to B, take the coboundary of the lift, read the values back through the
// injection.  The class is independent of the lift because two lifts
// differ by an element of A, whose coboundary is a coboundary.
inline CohomClass connecting_delta(const Resolution& r, const GLattice& a, const GLattice& b,
                                   const CoeffModule& c, const IntMatrix& inj,
                                   const IntMatrix& surj, const std::vector<Int>& x) {
  if (r.group().order() != a.group().order())
    throw std::invalid_argument("resolution and coefficients disagree");
  int rb = b.rank(), rc = c.lat.rank();
  if (static_cast<int>(x.size()) != rc) throw std::invalid_argument("element dimension");
  // invariance of x in the quotient module
  IntMatrix relh = zlinalg::hnf(c.rel);
  std::vector<int> rpiv = relh.rows() ? zlinalg::pivot_cols_of_echelon(relh) : std::vector<int>{};
  for (int gen : r.group().generators()) {
    std::vector<Int> moved = c.lat.apply_element(x, gen);
    for (int j = 0; j < rc; ++j) moved[j] -= x[j];
    if (relh.rows() == 0) {
      for (const Int& v : moved)
        if (v != 0) throw std::invalid_argument("element is not invariant");
    } else if (!zlinalg::solve_against_hnf(relh, rpiv, moved, nullptr)) {
      throw std::invalid_argument("element is not invariant");
    }
  }
  // lift x through the surjection modulo the relations
  IntMatrix stacked(surj.rows() + c.rel.rows(), rc);
  for (int i = 0; i < surj.rows(); ++i)
    for (int j = 0; j < rc; ++j) stacked(i, j) = surj(i, j);
  for (int i = 0; i < c.rel.rows(); ++i)
    for (int j = 0; j < rc; ++j) stacked(surj.rows() + i, j) = c.rel(i, j);
  std::vector<Int> full;
  if (!zlinalg::solve_left(stacked, x, &full))
    throw std::logic_error("surjection failed to lift an invariant element");
  std::vector<Int> y(full.begin(), full.begin() + rb);

  // coboundary of the constant 0-cochain y, values solved back into A
  IntMatrix injh = zlinalg::hnf(inj);
  std::vector<int> ipiv = zlinalg::pivot_cols_of_echelon(injh);
  // to express values in A's basis we need coordinates along inj, not just
  // membership: solve v = z * inj directly
  int ra = a.rank();
  std::vector<Int> cochain(static_cast<size_t>(r.gens(1)) * ra, 0);
  for (int gen = 0; gen < r.gens(1); ++gen) {
    std::vector<Int> v(rb, 0);
    for (const ZGTerm& t : r.diff(1, gen)) {
      std::vector<Int> w = b.apply_element(y, t.g);
      for (int j = 0; j < rb; ++j) v[j] += t.c * w[j];
    }
    std::vector<Int> z;
    if (!zlinalg::solve_left(inj, v, &z))
      throw std::logic_error("connecting value escapes the submodule");
    for (int j = 0; j < ra; ++j) cochain[static_cast<size_t>(gen) * ra + j] = z[j];
  }
  return CohomClass{r, a, 1, std::move(cochain)};
}

inline CohomClass connecting_delta(const Resolution& r, const LatticeSES& ses,
                                   const std::vector<Int>& x) {
  return connecting_delta(r, ses.sub, ses.mid, CoeffModule{ses.quo, IntMatrix(0, ses.quo.rank())},
                          ses.inj, ses.surj, x);
}

}  // namespace cohomres
}  // namespace h3nr
