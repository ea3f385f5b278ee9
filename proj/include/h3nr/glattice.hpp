#pragma once

// G-lattices: finitely generated free Z-modules with an action of a finite
// group, given by one integer matrix per group generator.  Elements act on
// row vectors from the right (v |-> v * M_g), and the assignment g |-> M_g
// is a homomorphism for that convention.
//
// Alongside the lattice type itself this header provides
//   * the functor constructions (dual, tensor, Sym^2, wedge^2, permutation
//     modules) and the index conventions their bases use,
//   * equivariant maps and short exact sequences with full verification,
//   * invariants, the low Tate groups H^0 and H^-1, first cohomology of
//     abelian groups from the presentation, and flasque/coflasque tests,
//   * the norm-one torus lattice, its flasque resolution, and the auxiliary
//     exact sequences the higher cohomology computations are built from.

#include <h3nr/groups.hpp>
#include <h3nr/sparse.hpp>
#include <h3nr/zlinalg.hpp>

#include <functional>
#include <map>
#include <memory>
#include <random>

namespace h3nr {
namespace glattice {

using groups::AnyGroup;
using groups::Subgroup;
using zlinalg::FgAbGroup;
using zlinalg::Int;
using zlinalg::IntMatrix;

// --------------------------------------------------------------------------
// Basis indexing for the quadratic functors.
//
// Sym^2 basis: e_i e_j with i <= j, ordered lexicographically
//   (0,0), (0,1), ..., (0,n-1), (1,1), (1,2), ...
// wedge^2 basis: e_i ^ e_j with i < j, same lexicographic order.
// Tensor basis: e_i (x) f_j at flat index i + rank_first * j (first factor
// varies fastest, matching the element-tuple convention in groups).
// --------------------------------------------------------------------------

inline int s2_rank(int n) { return n * (n + 1) / 2; }

inline int s2_index(int i, int j, int n) {
  if (i > j) std::swap(i, j);
  // entries before row i: n + (n-1) + ... + (n-i+1)
  return i * n - i * (i - 1) / 2 + (j - i);
}

inline int wedge2_rank(int n) { return n * (n - 1) / 2; }

inline int wedge2_index(int i, int j, int n) {
  // requires i < j
  return i * (n - 1) - i * (i - 1) / 2 + (j - i - 1);
}

// Product L x L -> Sym^2 L on coordinates.
inline std::vector<Int> prod_s2(const std::vector<Int>& x, const std::vector<Int>& y) {
  int n = static_cast<int>(x.size());
  if (y.size() != x.size()) throw std::invalid_argument("prod_s2 size mismatch");
  std::vector<Int> out(s2_rank(n));
  for (int i = 0; i < n; ++i) {
    if (x[i] == 0 && y[i] == 0) continue;
    for (int j = i; j < n; ++j) {
      Int c = (i == j) ? Int(x[i] * y[i]) : Int(x[i] * y[j] + x[j] * y[i]);
      if (c != 0) out[s2_index(i, j, n)] += c;
    }
  }
  return out;
}

// Functorial matrix of Sym^2 applied to an a x b matrix.
inline IntMatrix sym2_map(const IntMatrix& m) {
  int a = m.rows(), b = m.cols();
  IntMatrix out(s2_rank(a), s2_rank(b));
  for (int i = 0; i < a; ++i)
    for (int j = i; j < a; ++j) {
      std::vector<Int> row = prod_s2(m.row(i), m.row(j));
      out.set_row(s2_index(i, j, a), row);
    }
  return out;
}

// Functorial matrix of wedge^2 applied to an a x b matrix.
inline IntMatrix wedge2_map(const IntMatrix& m) {
  int a = m.rows(), b = m.cols();
  IntMatrix out(wedge2_rank(a), wedge2_rank(b));
  for (int i = 0; i < a; ++i)
    for (int j = i + 1; j < a; ++j) {
      int r = wedge2_index(i, j, a);
      for (int p = 0; p < b; ++p) {
        if (m(i, p) == 0 && m(j, p) == 0) continue;
        for (int q = p + 1; q < b; ++q) {
          Int c = m(i, p) * m(j, q) - m(i, q) * m(j, p);
          if (c != 0) out(r, wedge2_index(p, q, b)) += c;
        }
      }
    }
  return out;
}

inline IntMatrix kronecker(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      if (a(i, j) == 0) continue;
      for (int p = 0; p < b.rows(); ++p)
        for (int q = 0; q < b.cols(); ++q)
          if (b(p, q) != 0) out(i + a.rows() * p, j + a.cols() * q) = a(i, j) * b(p, q);
    }
  return out;
}

// --------------------------------------------------------------------------
// GLattice
// --------------------------------------------------------------------------

class GLattice {
 public:
  // Unchecked constructor used by the library's own constructions; use
  // checked() for matrices from outside.
  GLattice(std::shared_ptr<const AnyGroup> group, int rank, std::vector<IntMatrix> gen_mats,
           std::function<IntMatrix(int)> element_provider = {})
      : s_(std::make_shared<State>()) {
    s_->group = std::move(group);
    s_->rank = rank;
    s_->gen_mats = std::move(gen_mats);
    s_->provider = std::move(element_provider);
    const auto& g = *s_->group;
    if (static_cast<int>(s_->gen_mats.size()) != static_cast<int>(g.generators().size()))
      throw std::invalid_argument("one action matrix per group generator required");
    for (const IntMatrix& m : s_->gen_mats)
      if (m.rows() != rank || m.cols() != rank)
        throw std::invalid_argument("action matrix has wrong size");
    s_->cache_ok =
        static_cast<long long>(g.order()) * rank * rank <= 8'000'000;
    if (!g.abelian_part()) {
      // word decomposition over the generators, breadth first
      s_->words.assign(g.order(), {});
      std::vector<char> seen(g.order(), 0);
      std::vector<int> gens = g.generators();
      std::vector<int> queue{g.identity()};
      seen[g.identity()] = 1;
      for (size_t qi = 0; qi < queue.size(); ++qi) {
        int x = queue[qi];
        for (size_t i = 0; i < gens.size(); ++i) {
          int y = g.mul(x, gens[i]);
          if (!seen[y]) {
            seen[y] = 1;
            s_->words[y] = s_->words[x];
            s_->words[y].push_back(static_cast<int>(i));
            queue.push_back(y);
          }
        }
      }
      for (char c : seen)
        if (!c) throw std::invalid_argument("generators do not generate the group");
    }
  }

  // Verifies the matrices define a group action before accepting them.
  static GLattice checked(std::shared_ptr<const AnyGroup> group, std::vector<IntMatrix> gen_mats) {
    int rank = gen_mats.empty() ? 0 : gen_mats[0].rows();
    GLattice l(std::move(group), rank, std::move(gen_mats));
    std::string why;
    if (!l.verify(&why)) throw std::invalid_argument("invalid group action: " + why);
    return l;
  }

  const AnyGroup& group() const { return *s_->group; }
  std::shared_ptr<const AnyGroup> group_ptr() const { return s_->group; }
  int rank() const { return s_->rank; }
  const std::vector<IntMatrix>& generator_matrices() const { return s_->gen_mats; }

  IntMatrix element_matrix(int x) const {
    if (s_->cache_ok) {
      auto it = s_->cache.find(x);
      if (it != s_->cache.end()) return it->second;
    }
    IntMatrix m = s_->provider ? s_->provider(x) : word_product(x);
    if (s_->cache_ok) s_->cache.emplace(x, m);
    return m;
  }

  // v * M_x without forming M_x (successive generator applications).
  std::vector<Int> apply_element(std::vector<Int> v, int x) const {
    if (s_->group->abelian_part()) {
      std::vector<int> t = s_->group->abelian_part()->tuple_of(x);
      for (size_t i = 0; i < t.size(); ++i) {
        if (t[i] == 0) continue;
        int gi = gen_slot(static_cast<int>(i));
        for (int rep = 0; rep < t[i]; ++rep) v = zlinalg::vec_mat(v, s_->gen_mats[gi]);
      }
      return v;
    }
    for (int gi : s_->words[x]) v = zlinalg::vec_mat(v, s_->gen_mats[gi]);
    return v;
  }

  IntMatrix norm_matrix(const std::vector<int>& elements) const {
    IntMatrix n(s_->rank, s_->rank);
    for (int x : elements) n = n + element_matrix(x);
    return n;
  }

  // Hermite basis (rows) of the sublattice fixed by every element of h.
  // Computed as the saturation of the image of the norm map: the quotient
  // invariants/image is killed by |h|, so x is invariant exactly when
  // |h| * x lies in the row span of the norm matrix.
  IntMatrix invariants_basis(const Subgroup& h) const {
    IntMatrix nm = norm_matrix(h.elements);
    IntMatrix hb = zlinalg::hnf(nm);
    int k = hb.rows();
    if (k == 0) return IntMatrix(0, s_->rank);
    Int e = static_cast<int>(h.elements.size());
    zlinalg::SmithForm s = zlinalg::smith_normal_form(hb, true, false);
    IntMatrix out(k, s_->rank);
    for (int i = 0; i < k; ++i) {
      Int g = gcd_int(e, s.d[i]);
      Int scale = e / g;
      std::vector<Int> row = zlinalg::vec_mat(s.left.row(i), hb);
      for (int j = 0; j < s_->rank; ++j) {
        Int v = scale * row[j];
        if (v % e != 0) throw std::logic_error("invariant saturation not integral");
        out(i, j) = v / e;
      }
    }
    return zlinalg::hnf(out);
  }

  IntMatrix invariants_basis() const { return invariants_basis(groups::full_subgroup(*s_->group)); }

  // Relations of the presentation hold and every matrix is unimodular.
  bool verify(std::string* why = nullptr) const {
    auto fail = [&](const std::string& msg) {
      if (why) *why = msg;
      return false;
    };
    for (const IntMatrix& m : s_->gen_mats) {
      IntMatrix h = zlinalg::hnf(m);
      if (h != IntMatrix::identity(s_->rank)) return fail("action matrix is not unimodular");
    }
    if (const groups::FinAbGroup* a = s_->group->abelian_part()) {
      int slot = 0;
      for (size_t i = 0; i < a->factors().size(); ++i) {
        if (a->factors()[i] == 1) continue;
        const IntMatrix& m = s_->gen_mats[slot++];
        if (mat_pow(m, a->factors()[i]) != IntMatrix::identity(s_->rank))
          return fail("generator order relation fails");
      }
      for (size_t i = 0; i < s_->gen_mats.size(); ++i)
        for (size_t j = i + 1; j < s_->gen_mats.size(); ++j)
          if (s_->gen_mats[i] * s_->gen_mats[j] != s_->gen_mats[j] * s_->gen_mats[i])
            return fail("generator matrices do not commute");
      return true;
    }
    // table group: the full multiplication law
    const AnyGroup& g = *s_->group;
    std::vector<IntMatrix> all;
    all.reserve(g.order());
    for (int x = 0; x < g.order(); ++x) all.push_back(word_product(x));
    for (int x = 0; x < g.order(); ++x)
      for (int y = 0; y < g.order(); ++y)
        if (all[x] * all[y] != all[g.mul(x, y)]) return fail("matrices violate the group law");
    return true;
  }

 private:
  struct State {
    std::shared_ptr<const AnyGroup> group;
    int rank = 0;
    std::vector<IntMatrix> gen_mats;
    std::function<IntMatrix(int)> provider;
    std::vector<std::vector<int>> words;  // table groups only
    bool cache_ok = false;
    mutable std::map<int, IntMatrix> cache;
  };

  static Int gcd_int(Int a, Int b) {
    a = zlinalg::abs_int(a);
    b = zlinalg::abs_int(b);
    while (b != 0) {
      Int t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  static IntMatrix mat_pow(const IntMatrix& m, int e) {
    IntMatrix r = IntMatrix::identity(m.rows());
    for (int i = 0; i < e; ++i) r = r * m;
    return r;
  }

  // generator slot for the i-th factor of an abelian group (trivial factors
  // have no generator)
  int gen_slot(int factor_index) const {
    const groups::FinAbGroup* a = s_->group->abelian_part();
    int slot = 0;
    for (int i = 0; i < factor_index; ++i)
      if (a->factors()[i] > 1) ++slot;
    if (a->factors()[factor_index] == 1)
      throw std::logic_error("trivial factor has no generator");
    return slot;
  }

  IntMatrix word_product(int x) const {
    IntMatrix m = IntMatrix::identity(s_->rank);
    if (const groups::FinAbGroup* a = s_->group->abelian_part()) {
      std::vector<int> t = a->tuple_of(x);
      for (size_t i = 0; i < t.size(); ++i) {
        if (t[i] == 0) continue;
        const IntMatrix& g = s_->gen_mats[gen_slot(static_cast<int>(i))];
        for (int rep = 0; rep < t[i]; ++rep) m = m * g;
      }
      return m;
    }
    for (int gi : s_->words[x]) m = m * s_->gen_mats[gi];
    return m;
  }

  std::shared_ptr<State> s_;
};

// --------------------------------------------------------------------------
// Basic constructions
// --------------------------------------------------------------------------

inline GLattice trivial_lattice(std::shared_ptr<const AnyGroup> g, int rank = 1) {
  std::vector<IntMatrix> mats(g->generators().size(), IntMatrix::identity(rank));
  return GLattice(std::move(g), rank, std::move(mats));
}

// Z[G] with basis e_x and action e_x * g = e_{xg}.
inline GLattice regular_lattice(std::shared_ptr<const AnyGroup> g) {
  int n = g->order();
  std::vector<IntMatrix> mats;
  for (int gen : g->generators()) {
    IntMatrix m(n, n);
    for (int x = 0; x < n; ++x) m(x, g->mul(x, gen)) = 1;
    mats.push_back(std::move(m));
  }
  auto gp = g;
  auto provider = [gp, n](int x) {
    IntMatrix m(n, n);
    for (int y = 0; y < n; ++y) m(y, gp->mul(y, x)) = 1;
    return m;
  };
  return GLattice(std::move(g), n, std::move(mats), provider);
}

// Z[H\G] with basis the right cosets Hx and action (Hx) * g = H(xg).
inline GLattice permutation_lattice(std::shared_ptr<const AnyGroup> g, const Subgroup& h) {
  std::vector<int> reps;
  std::vector<int> coset_of(g->order(), -1);
  for (int x = 0; x < g->order(); ++x) {
    if (coset_of[x] >= 0) continue;
    int c = static_cast<int>(reps.size());
    reps.push_back(x);
    for (int y : h.elements) coset_of[g->mul(y, x)] = c;
  }
  int n = static_cast<int>(reps.size());
  auto gp = g;
  auto provider = [gp, coset_of, reps, n](int x) {
    IntMatrix m(n, n);
    for (int c = 0; c < n; ++c) m(c, coset_of[gp->mul(reps[c], x)]) = 1;
    return m;
  };
  std::vector<IntMatrix> mats;
  for (int gen : g->generators()) mats.push_back(provider(gen));
  return GLattice(std::move(g), n, std::move(mats), provider);
}

inline GLattice dual_lattice(const GLattice& l) {
  auto provider = [l](int x) { return l.element_matrix(l.group().inv(x)).transpose(); };
  std::vector<IntMatrix> mats;
  for (int gen : l.group().generators()) mats.push_back(provider(gen));
  return GLattice(l.group_ptr(), l.rank(), std::move(mats), provider);
}

inline GLattice tensor_lattice(const GLattice& a, const GLattice& b) {
  if (a.group_ptr().get() != b.group_ptr().get())
    throw std::invalid_argument("tensor factors live over different groups");
  auto provider = [a, b](int x) { return kronecker(a.element_matrix(x), b.element_matrix(x)); };
  std::vector<IntMatrix> mats;
  for (int gen : a.group().generators()) mats.push_back(provider(gen));
  return GLattice(a.group_ptr(), a.rank() * b.rank(), std::move(mats), provider);
}

inline GLattice direct_sum_lattice(const GLattice& a, const GLattice& b) {
  if (a.group_ptr().get() != b.group_ptr().get())
    throw std::invalid_argument("direct summands live over different groups");
  auto provider = [a, b](int x) {
    IntMatrix ma = a.element_matrix(x), mb = b.element_matrix(x);
    IntMatrix m(a.rank() + b.rank(), a.rank() + b.rank());
    for (int i = 0; i < a.rank(); ++i)
      for (int j = 0; j < a.rank(); ++j) m(i, j) = ma(i, j);
    for (int i = 0; i < b.rank(); ++i)
      for (int j = 0; j < b.rank(); ++j) m(a.rank() + i, a.rank() + j) = mb(i, j);
    return m;
  };
  std::vector<IntMatrix> mats;
  for (int gen : a.group().generators()) mats.push_back(provider(gen));
  return GLattice(a.group_ptr(), a.rank() + b.rank(), std::move(mats), provider);
}

inline GLattice sym2_lattice(const GLattice& l) {
  auto provider = [l](int x) { return sym2_map(l.element_matrix(x)); };
  std::vector<IntMatrix> mats;
  for (int gen : l.group().generators()) mats.push_back(provider(gen));
  return GLattice(l.group_ptr(), s2_rank(l.rank()), std::move(mats), provider);
}

inline GLattice wedge2_lattice(const GLattice& l) {
  auto provider = [l](int x) { return wedge2_map(l.element_matrix(x)); };
  std::vector<IntMatrix> mats;
  for (int gen : l.group().generators()) mats.push_back(provider(gen));
  return GLattice(l.group_ptr(), wedge2_rank(l.rank()), std::move(mats), provider);
}

// Restriction to a subgroup: the lattice keeps its Z-basis, the group
// shrinks.  For abelian groups the subgroup is presented by its canonical
// invariant factors; table groups restrict to a sub-table.
inline GLattice restrict_lattice(const GLattice& l, const Subgroup& h) {
  const AnyGroup& g = l.group();
  if (g.abelian_part()) {
    groups::SubgroupStructure st = groups::subgroup_structure(g, h);
    auto hg = std::make_shared<const AnyGroup>(AnyGroup::abelian(
        st.factors.empty() ? std::vector<int>{1} : st.factors));
    std::vector<IntMatrix> mats;
    for (int gen : st.generators) mats.push_back(l.element_matrix(gen));
    // element x of the subgroup corresponds to the parent product of
    // structure generators with x's tuple exponents
    auto parent_of = [st, hgp = hg, gp = l.group_ptr()](int x) {
      std::vector<int> t = hgp->abelian_part()->tuple_of(x);
      int e = gp->identity();
      for (size_t i = 0; i < t.size(); ++i)
        for (int rep = 0; rep < t[i]; ++rep) e = gp->mul(e, st.generators[i]);
      return e;
    };
    auto provider = [l, parent_of](int x) { return l.element_matrix(parent_of(x)); };
    return GLattice(hg, l.rank(), std::move(mats), provider);
  }
  int m = h.order();
  std::vector<int> pos(g.order(), -1);
  for (int i = 0; i < m; ++i) pos[h.elements[i]] = i;
  std::vector<std::vector<int>> table(m, std::vector<int>(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) table[i][j] = pos[g.mul(h.elements[i], h.elements[j])];
  auto hg = std::make_shared<const AnyGroup>(AnyGroup(groups::TableGroup(table)));
  std::vector<IntMatrix> mats;
  for (int gen : hg->generators()) mats.push_back(l.element_matrix(h.elements[gen]));
  auto elems = h.elements;
  auto provider = [l, elems](int x) { return l.element_matrix(elems[x]); };
  return GLattice(hg, l.rank(), std::move(mats), provider);
}

// --------------------------------------------------------------------------
// Equivariant maps and short exact sequences
// --------------------------------------------------------------------------

struct LatticeMap {
  GLattice dom, cod;
  IntMatrix m;  // dom.rank() x cod.rank()

  LatticeMap(GLattice d, GLattice c, IntMatrix mat)
      : dom(std::move(d)), cod(std::move(c)), m(std::move(mat)) {
    if (m.rows() != dom.rank() || m.cols() != cod.rank())
      throw std::invalid_argument("map matrix has wrong shape");
    if (dom.group_ptr().get() != cod.group_ptr().get())
      throw std::invalid_argument("map between lattices over different groups");
  }

  bool is_equivariant() const {
    size_t gens = dom.generator_matrices().size();
    for (size_t i = 0; i < gens; ++i)
      if (dom.generator_matrices()[i] * m != m * cod.generator_matrices()[i]) return false;
    return true;
  }
};

struct LatticeSES {
  GLattice sub, mid, quo;
  IntMatrix inj;   // sub.rank x mid.rank
  IntMatrix surj;  // mid.rank x quo.rank

  // injectivity, surjectivity, equivariance, and exactness in the middle
  void verify() const {
    if (!LatticeMap(sub, mid, inj).is_equivariant())
      throw std::logic_error("injection is not equivariant");
    if (!LatticeMap(mid, quo, surj).is_equivariant())
      throw std::logic_error("surjection is not equivariant");
    if (!(inj * surj).is_zero()) throw std::logic_error("composite is not zero");
    if (zlinalg::kernel_basis(inj).rows() != 0) throw std::logic_error("injection has a kernel");
    zlinalg::SmithForm si = zlinalg::smith_normal_form(inj, false, false);
    int rank_inj = 0;
    for (const Int& d : si.d)
      if (d != 0) {
        ++rank_inj;
        if (d != 1) throw std::logic_error("image of injection is not saturated");
      }
    if (zlinalg::cokernel(surj).to_string() != "0")
      throw std::logic_error("surjection is not onto");
    zlinalg::SmithForm ss = zlinalg::smith_normal_form(surj, false, false);
    int rank_surj = 0;
    for (const Int& d : ss.d)
      if (d != 0) ++rank_surj;
    // image saturated + contained in kernel + equal rank => equality
    if (rank_inj + rank_surj != mid.rank())
      throw std::logic_error("sequence is not exact in the middle");
  }
};

// Quotient of mid by the saturated image of inj: projection and lifting
// matrices plus the induced action.
struct QuotientData {
  IntMatrix project;  // mid.rank x q
  IntMatrix lift;     // q x mid.rank, lift * project = identity
  std::vector<IntMatrix> gen_mats;
};

inline QuotientData quotient_by_image(const GLattice& mid, const IntMatrix& inj) {
  zlinalg::SmithForm s = zlinalg::smith_normal_form(inj);
  int k = 0;
  for (const Int& d : s.d) {
    if (d == 0) continue;
    if (d != 1) throw std::invalid_argument("image is not saturated; quotient has torsion");
    ++k;
  }
  if (k != inj.rows()) throw std::invalid_argument("injection expected");
  int n = mid.rank(), q = n - k;
  IntMatrix project(n, q), lift(q, n);
  IntMatrix rinv = zlinalg::unimodular_inverse(s.right);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < q; ++j) project(i, j) = s.right(i, k + j);
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < n; ++j) lift(i, j) = rinv(k + i, j);
  QuotientData out{std::move(project), std::move(lift), {}};
  for (const IntMatrix& g : mid.generator_matrices())
    out.gen_mats.push_back(out.lift * g * out.project);
  return out;
}

// --------------------------------------------------------------------------
// Low-degree cohomology from pure linear algebra
// --------------------------------------------------------------------------

// Tate H^0(h, L) = L^h / N_h L.
inline FgAbGroup tate_h0(const GLattice& l, const Subgroup& h) {
  IntMatrix inv = l.invariants_basis(h);
  IntMatrix nm = l.norm_matrix(h.elements);
  return zlinalg::subquotient(inv, nm);
}

// Tate H^-1(h, L) = ker(N_h) / I_h L.
inline FgAbGroup tate_h_minus1(const GLattice& l, const Subgroup& h) {
  IntMatrix ker = zlinalg::kernel_basis(l.norm_matrix(h.elements));
  IntMatrix aug(static_cast<int>(h.elements.size()) * l.rank(), l.rank());
  int r = 0;
  for (int x : h.elements) {
    IntMatrix d = l.element_matrix(x) - IntMatrix::identity(l.rank());
    for (int i = 0; i < l.rank(); ++i, ++r)
      for (int j = 0; j < l.rank(); ++j) aug(r, j) = d(i, j);
  }
  return zlinalg::subquotient(ker, zlinalg::hnf(aug));
}

// H^1(h, L) for an abelian subgroup, straight from the presentation:
// a cocycle is (a_1,...,a_k) in L^k with a_i N_i = 0 and
// a_i (h_j - 1) = a_j (h_i - 1); coboundaries are (x(h_1-1),...,x(h_k-1)).
inline FgAbGroup h1_abelian(const GLattice& l, const Subgroup& h) {
  if (!l.group().abelian_part())
    throw std::invalid_argument("h1_abelian requires an abelian group");
  groups::SubgroupStructure st = groups::subgroup_structure(l.group(), h);
  int k = static_cast<int>(st.generators.size());
  int r = l.rank();
  if (k == 0) return FgAbGroup();
  std::vector<IntMatrix> gm, dm, nm;
  for (int i = 0; i < k; ++i) {
    IntMatrix m = l.element_matrix(st.generators[i]);
    IntMatrix n(r, r), p = IntMatrix::identity(r);
    for (int e = 0; e < st.factors[i]; ++e) {
      n = n + p;
      p = p * m;
    }
    dm.push_back(m - IntMatrix::identity(r));
    nm.push_back(std::move(n));
    gm.push_back(std::move(m));
  }
  int pairs = k * (k - 1) / 2;
  IntMatrix c(k * r, k * r + pairs * r);
  for (int i = 0; i < k; ++i)
    for (int a = 0; a < r; ++a)
      for (int b = 0; b < r; ++b) c(i * r + a, i * r + b) = nm[i](a, b);
  int blk = 0;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j, ++blk)
      for (int a = 0; a < r; ++a)
        for (int b = 0; b < r; ++b) {
          c(i * r + a, k * r + blk * r + b) += dm[j](a, b);
          c(j * r + a, k * r + blk * r + b) -= dm[i](a, b);
        }
  IntMatrix cocycles = zlinalg::kernel_basis(c);
  IntMatrix cob(r, k * r);
  for (int i = 0; i < k; ++i)
    for (int a = 0; a < r; ++a)
      for (int b = 0; b < r; ++b) cob(a, i * r + b) = dm[i](a, b);
  return zlinalg::subquotient(cocycles, cob);
}

// Flasque: Tate H^-1 vanishes for every subgroup.
inline bool is_flasque(const GLattice& l) {
  for (const Subgroup& h : groups::subgroups(l.group()))
    if (!tate_h_minus1(l, h).is_trivial()) return false;
  return true;
}

// Coflasque: H^1 vanishes for every subgroup (abelian groups only).
inline bool is_coflasque(const GLattice& l) {
  for (const Subgroup& h : groups::subgroups(l.group()))
    if (!h1_abelian(l, h).is_trivial()) return false;
  return true;
}

// --------------------------------------------------------------------------
// The norm-one torus lattice and its resolutions
// --------------------------------------------------------------------------

// Character lattice of the norm-one torus of an extension with Galois group
// g: the quotient Z[G]/Z N_G, with basis the images of the non-identity
// elements (the identity maps to minus their sum).
inline GLattice norm_one_lattice(std::shared_ptr<const AnyGroup> g) {
  int n = g->order();
  int id = g->identity();
  // basis position of a non-identity element
  std::vector<int> pos(n, -1);
  int r = 0;
  for (int x = 0; x < n; ++x)
    if (x != id) pos[x] = r++;
  auto gp = g;
  auto provider = [gp, pos, id, n](int x) {
    IntMatrix m(n - 1, n - 1);
    for (int y = 0; y < n; ++y) {
      if (y == id) continue;
      int z = gp->mul(y, x);
      if (z == id) {
        for (int w = 0; w < n - 1; ++w) m(pos[y], w) = -1;
      } else {
        m(pos[y], pos[z]) = 1;
      }
    }
    return m;
  };
  std::vector<IntMatrix> mats;
  for (int gen : g->generators()) mats.push_back(provider(gen));
  return GLattice(std::move(g), n - 1, std::move(mats), provider);
}

struct FlasqueResolutionData {
  GLattice what;  // norm-one lattice
  GLattice phat;  // Z[G]^m, m = number of group generators
  GLattice that;  // flasque quotient
  LatticeSES ses;  // 0 -> what -> phat -> that -> 0
  IntMatrix lift;  // that.rank x phat.rank section: lift * ses.surj = identity
};

// The standard flasque resolution of the norm-one lattice: embed W into
// P = Z[G]^m by x |-> ((g_1 - 1)x, ..., (g_m - 1)x) over the group
// generators g_i; the quotient T = P/W is flasque.  Basis of the i-th copy
// of Z[G] sits at flat indices [i*n, (i+1)*n).
inline FlasqueResolutionData flasque_resolution(std::shared_ptr<const AnyGroup> g) {
  int n = g->order();
  int id = g->identity();
  std::vector<int> gens = g->generators();
  int m = static_cast<int>(gens.size());
  if (m == 0) throw std::invalid_argument("trivial group has no norm-one resolution");

  GLattice what = norm_one_lattice(g);
  GLattice zg = regular_lattice(g);
  // P = Z[G]^m via iterated direct sum: block diagonal action
  std::vector<IntMatrix> pmats;
  auto gp = g;
  auto pprovider = [gp, zg, n, m](int x) {
    IntMatrix blk = zg.element_matrix(x);
    IntMatrix out(n * m, n * m);
    for (int c = 0; c < m; ++c)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (blk(i, j) != 0) out(c * n + i, c * n + j) = blk(i, j);
    return out;
  };
  for (int gen : gens) pmats.push_back(pprovider(gen));
  GLattice phat(g, n * m, std::move(pmats), pprovider);

  // embedding: basis element (image of y != id) maps to (g_i y - y) in copy i
  IntMatrix inj(n - 1, n * m);
  int r = 0;
  for (int y = 0; y < n; ++y) {
    if (y == id) continue;
    for (int i = 0; i < m; ++i) {
      inj(r, i * n + g->mul(gens[i], y)) += 1;
      inj(r, i * n + y) -= 1;
    }
    ++r;
  }

  QuotientData q = quotient_by_image(phat, inj);
  auto base = std::make_shared<QuotientData>(q);
  auto tprovider = [phat, base](int x) {
    return base->lift * phat.element_matrix(x) * base->project;
  };
  GLattice that(g, n * m - (n - 1), std::vector<IntMatrix>(base->gen_mats), tprovider);

  LatticeSES ses{what, phat, that, std::move(inj), base->project};
  return {what, phat, that, std::move(ses), base->lift};
}

struct NSequenceData {
  FlasqueResolutionData res;  // the resolution everything is built over
  GLattice n;            // kernel of Sym^2 phat -> Sym^2 that
  LatticeSES wedge_seq;  // 0 -> wedge^2 what -> what (x) phat -> n -> 0
  LatticeSES s2_seq;     // 0 -> n -> Sym^2 phat -> Sym^2 that -> 0
  IntMatrix u;       // adapted basis of P: embedded W rows, then section rows
  IntMatrix u_inv;   // inverse of u
  std::vector<std::pair<int, int>> n_pairs;  // adapted index pairs spanning N
  void verify() const;  // throws std::logic_error if any check fails
};

// The two auxiliary exact sequences tying Sym^2 of the resolution together:
// N is the kernel of the induced surjection Sym^2 P -> Sym^2 T; the map
// W (x) P -> N sends w (x) p to (iota w) * p, with kernel wedge^2 W embedded
// by w ^ w' |-> w (x) iota(w') - w' (x) iota(w).
//
// Construction works in an adapted basis of P: the rows of the embedding
// followed by the rows of the section form a unimodular matrix u (the
// embedding is a saturated direct summand split by the section).  Write u_i
// for its rows and r_b for the rows of its inverse.  Then
//   * Sym^2 u is unimodular (Sym^2 is functorial and Sym^2(id) = id), so the
//     products u_i * u_j form a basis of Sym^2 P;
//   * the projection to Sym^2 T kills u_i * u_j exactly when min(i,j) < k
//     (k = rank of W): those products are a basis of the kernel N, realized
//     as a saturated sublattice spanned by part of a basis of Sym^2 P;
//   * w_a (x) e_b maps to u_a * e_b = sum_l r_b[l] (u_a * u_l), so the map
//     into N's basis is read off directly -- no linear solving anywhere.
inline NSequenceData n_sequence(const FlasqueResolutionData& f) {
  const IntMatrix& inj = f.ses.inj;
  const int k = f.what.rank(), nP = f.phat.rank(), nT = f.that.rank();

  // adapted basis
  IntMatrix u(nP, nP);
  for (int i = 0; i < k; ++i) u.set_row(i, inj.row(i));
  for (int j = 0; j < nT; ++j) u.set_row(k + j, f.lift.row(j));
  IntMatrix u_inv = zlinalg::unimodular_inverse(u);

  // adapted index pairs (i <= j, min < k) enumerating the basis of N, and
  // the position of each Sym^2 index among them (-1 for pairs inside T)
  std::vector<std::pair<int, int>> n_pairs;
  std::vector<int> pos(s2_rank(nP), -1);
  for (int i = 0; i < nP; ++i)
    for (int j = i; j < nP; ++j)
      if (i < k) {
        pos[s2_index(i, j, nP)] = static_cast<int>(n_pairs.size());
        n_pairs.emplace_back(i, j);
      }
  const int nr = static_cast<int>(n_pairs.size());

  // Action on N: conjugate the P action into the adapted basis and take
  // Sym^2 rows at the pairs spanning N.  Stability of the span is a
  // consequence of W being a submodule (checked structurally by verify());
  // the provider still asserts that nothing leaks into the T block.
  auto shared_u = std::make_shared<IntMatrix>(u);
  auto shared_uinv = std::make_shared<IntMatrix>(u_inv);
  auto shared_pairs = std::make_shared<std::vector<std::pair<int, int>>>(n_pairs);
  auto shared_pos = std::make_shared<std::vector<int>>(pos);
  GLattice phat = f.phat;
  auto nprovider = [shared_u, shared_uinv, shared_pairs, shared_pos, phat, nr](int x) {
    IntMatrix mp = *shared_u * phat.element_matrix(x) * *shared_uinv;
    IntMatrix out(nr, nr);
    for (int r = 0; r < nr; ++r) {
      auto [i, j] = (*shared_pairs)[r];
      std::vector<Int> full = prod_s2(mp.row(i), mp.row(j));
      for (int s = 0; s < static_cast<int>(full.size()); ++s) {
        if (full[s] == 0) continue;
        int p = (*shared_pos)[s];
        if (p < 0) throw std::logic_error("Sym^2 action leaks out of the kernel summand");
        out(r, p) = std::move(full[s]);
      }
    }
    return out;
  };
  std::vector<IntMatrix> nmats;
  for (int gen : f.phat.group().generators()) nmats.push_back(nprovider(gen));
  GLattice n(f.phat.group_ptr(), nr, std::move(nmats), nprovider);

  // W (x) P -> N: w_a (x) e_b |-> sum_l r_b[l] * (basis pair {a, l})
  GLattice wxp = tensor_lattice(f.what, f.phat);
  IntMatrix mid_to_n(k * nP, nr);
  for (int b = 0; b < nP; ++b)
    for (int a = 0; a < k; ++a)
      for (int l = 0; l < nP; ++l) {
        const Int& c = u_inv(b, l);
        if (c == 0) continue;
        mid_to_n(a + k * b, pos[s2_index(std::min(a, l), std::max(a, l), nP)]) += c;
      }

  // wedge^2 W -> W (x) P
  GLattice w2w = wedge2_lattice(f.what);
  IntMatrix w2_to_mid(wedge2_rank(k), k * nP);
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      int r = wedge2_index(i, j, k);
      for (int b = 0; b < nP; ++b) {
        if (inj(j, b) != 0) w2_to_mid(r, i + k * b) += inj(j, b);
        if (inj(i, b) != 0) w2_to_mid(r, j + k * b) -= inj(i, b);
      }
    }

  // N -> Sym^2 P in the original coordinates: rows u_i * u_j
  IntMatrix s2_inj(nr, s2_rank(nP));
  for (int r = 0; r < nr; ++r)
    s2_inj.set_row(r, prod_s2(u.row(n_pairs[r].first), u.row(n_pairs[r].second)));

  GLattice s2p = sym2_lattice(f.phat);
  GLattice s2t = sym2_lattice(f.that);
  LatticeSES wedge_seq{w2w, wxp, n, std::move(w2_to_mid), std::move(mid_to_n)};
  LatticeSES s2_seq{n, std::move(s2p), std::move(s2t), std::move(s2_inj),
                    sym2_map(f.ses.surj)};
  return {f,          std::move(n),     std::move(wedge_seq), std::move(s2_seq),
          std::move(u), std::move(u_inv), std::move(n_pairs)};
}

// Complete verification of both sequences of n_sequence, scalable to
// groups of order 27 where the generic LatticeSES::verify is out of reach.
// Strategy: check the adapted basis and the block structure of the adapted
// action directly; everything else is either a cheap sparse computation or
// follows from those checks by the functoriality of Sym^2
// (x A * y A = (x * y) Sym^2 A for the symmetric product).  Structural
// deductions are spot-checked literally on randomly sampled basis vectors
// (fixed seed, so verification is deterministic) to guard the
// implementation itself.
inline void NSequenceData::verify() const {
  const GLattice& what = res.what;
  const GLattice& phat = res.phat;
  const GLattice& that = res.that;
  const int k = what.rank(), nP = phat.rank(), nT = that.rank();
  const int nr = static_cast<int>(n_pairs.size());
  auto fail = [](const std::string& m) {
    throw std::logic_error("n_sequence verification failed: " + m);
  };

  // ---- shape bookkeeping -------------------------------------------------
  if (k + nT != nP) fail("resolution ranks");
  if (nr != s2_rank(nP) - s2_rank(nT)) fail("kernel rank");
  if (n.rank() != nr) fail("rank of N");
  if (u.rows() != nP || u.cols() != nP || u_inv.rows() != nP || u_inv.cols() != nP)
    fail("adapted basis shape");
  if (wedge_seq.inj.rows() != wedge2_rank(k) || wedge_seq.inj.cols() != k * nP ||
      wedge_seq.surj.rows() != k * nP || wedge_seq.surj.cols() != nr)
    fail("wedge sequence shapes");
  if (s2_seq.inj.rows() != nr || s2_seq.inj.cols() != s2_rank(nP) ||
      s2_seq.surj.rows() != s2_rank(nP) || s2_seq.surj.cols() != s2_rank(nT))
    fail("sym2 sequence shapes");
  if (wedge2_rank(k) + nr != k * nP) fail("wedge rank bookkeeping");

  // ---- the adapted basis ---------------------------------------------------
  // u unimodular with the embedding on top and a section of the projection
  // below.  Consequences used throughout: the embedding is injective with
  // saturated image; Sym^2 u is unimodular, so the rows of s2_seq.inj are
  // part of a basis of Sym^2 P (independent, saturated span); the rows r_b
  // of u_inv form a basis of Z^nP.
  if (!(u * u_inv == IntMatrix::identity(nP))) fail("adapted basis not unimodular");
  for (int i = 0; i < k; ++i)
    for (int b = 0; b < nP; ++b)
      if (u(i, b) != res.ses.inj(i, b)) fail("top of adapted basis is not the embedding");
  for (int i = 0; i < k; ++i)
    for (const Int& v : zlinalg::vec_mat(u.row(i), res.ses.surj))
      if (v != 0) fail("embedded row not killed by the projection");
  for (int j = 0; j < nT; ++j) {
    std::vector<Int> im = zlinalg::vec_mat(u.row(k + j), res.ses.surj);
    for (int c = 0; c < nT; ++c)
      if (im[c] != (c == j ? 1 : 0)) fail("bottom of adapted basis is not a section");
  }

  // ---- block structure of the adapted action ------------------------------
  // Every generator acts in the adapted basis by [ W_g 0 ; * T_g ].  The
  // zero block says W is a submodule and pins the induced actions; a row
  // (i, j) of Sym^2 of such a matrix with i < k has every term divisible by
  // an entry of row i, whose support lies below k, so the row is supported
  // on n_pairs: the span of N's basis is stable and n's provider gathers
  // exactly the induced action.  Since products of block-triangular
  // matrices are block-triangular with blocks multiplying, the same holds
  // for every group element once it holds for generators.
  std::vector<int> gens = phat.group().generators();
  for (int gen : gens) {
    IntMatrix mp = u * phat.element_matrix(gen) * u_inv;
    IntMatrix wg = what.element_matrix(gen);
    IntMatrix tg = that.element_matrix(gen);
    for (int i = 0; i < k; ++i)
      for (int b = 0; b < nP; ++b)
        if (mp(i, b) != (b < k ? wg(i, b) : Int(0))) fail("adapted action upper blocks");
    for (int i = 0; i < nT; ++i)
      for (int b = 0; b < nT; ++b)
        if (mp(k + i, k + b) != tg(i, b)) fail("adapted action lower-right block");
  }

  std::mt19937 rng(20240905u);
  auto rnd = [&rng](int m) { return std::uniform_int_distribution<int>(0, m - 1)(rng); };

  // sparse views of the wedge maps (rows as (column, value) lists)
  auto sparse_rows = [](const IntMatrix& m) {
    std::vector<std::vector<std::pair<int, const Int*>>> rows(m.rows());
    for (int r = 0; r < m.rows(); ++r)
      for (int c = 0; c < m.cols(); ++c)
        if (m(r, c) != 0) rows[r].emplace_back(c, &m(r, c));
    return rows;
  };
  auto w2m_rows = sparse_rows(wedge_seq.inj);
  auto mtn_rows = sparse_rows(wedge_seq.surj);

  // ---- wedge sequence ------------------------------------------------------
  // injectivity and saturation of the wedge embedding, certified by SNF
  {
    sparse::SparseMatrix sp(wedge_seq.inj.rows(), wedge_seq.inj.cols());
    for (int r = 0; r < wedge_seq.inj.rows(); ++r)
      for (auto& [c, v] : w2m_rows[r]) sp.add_term(r, c, *v);
    sp.normalize();
    sparse::SmithSummary sm = sparse::smith_summary(std::move(sp));
    if (sm.rank != wedge2_rank(k)) fail("wedge embedding not injective");
    if (!sm.torsion.empty()) fail("wedge embedding image not saturated");
  }

  // composite is zero
  for (int r = 0; r < wedge_seq.inj.rows(); ++r) {
    std::vector<Int> acc(nr, 0);
    for (auto& [c, v] : w2m_rows[r])
      for (auto& [t, w] : mtn_rows[c]) acc[t] += *v * *w;
    for (const Int& v : acc)
      if (v != 0) fail("wedge composite not zero");
  }

  // Surjectivity of the projection onto N is structural: w_a (x) v maps to
  // the symmetric product of e_a with the adapted coordinates of v, and
  // those coordinates range over all of Z^nP because u is unimodular;
  // v = u_j hits the basis vector at pair (a, j) exactly.  With the
  // composite zero, the embedding saturated of rank wedge2_rank(k), and
  // ranks adding up (wedge2_rank(k) + nr = k nP), the kernel of the
  // projection has the same rank as the image of the embedding and their
  // quotient embeds into the free lattice mid/image, so it is zero:
  // the sequence is exact.  Literal certificates on sampled pairs guard
  // the implementation of the row formulas:
  for (int s = 0, samples = std::min(nr, 48); s < samples; ++s) {
    int r = rnd(nr);
    auto [i, j] = n_pairs[r];
    std::vector<Int> acc(nr, 0);
    for (int b = 0; b < nP; ++b) {
      const Int& c = u(j, b);
      if (c == 0) continue;
      for (auto& [t, w] : mtn_rows[i + k * b]) acc[t] += c * *w;
    }
    for (int t = 0; t < nr; ++t)
      if (acc[t] != (t == r ? 1 : 0)) fail("projection certificate");
  }

  // equivariance of the wedge embedding: literal two-path check over every
  // basis pair and generator, in sparse arithmetic
  for (size_t gi = 0; gi < gens.size(); ++gi) {
    IntMatrix wg = what.element_matrix(gens[gi]);
    IntMatrix pg = phat.element_matrix(gens[gi]);
    // image of basis vector b of P under the (permutation-like) action
    std::vector<std::vector<std::pair<int, const Int*>>> pg_rows = sparse_rows(pg);
    IntMatrix w2g = wedge2_map(wg);
    for (int r = 0; r < wedge2_rank(k); ++r) {
      // path 1: act in wedge^2 W, then embed
      std::vector<Int> lhs(k * nP, 0);
      for (int s = 0; s < wedge2_rank(k); ++s) {
        if (w2g(r, s) == 0) continue;
        for (auto& [c, v] : w2m_rows[s]) lhs[c] += w2g(r, s) * *v;
      }
      // path 2: embed, then act in W (x) P
      std::vector<Int> rhs(k * nP, 0);
      for (auto& [c, v] : w2m_rows[r]) {
        int a = c % k, b = c / k;
        for (int a2 = 0; a2 < k; ++a2) {
          if (wg(a, a2) == 0) continue;
          for (auto& [b2, pv] : pg_rows[b]) rhs[a2 + k * b2] += *v * wg(a, a2) * *pv;
        }
      }
      if (lhs != rhs) fail("wedge embedding not equivariant");
    }
  }

  // Equivariance of the projection onto N reduces, by bilinearity of the
  // symmetric product, to the verified blocks: the top rows of the adapted
  // action are the W action padded by zeros, and r_b M'_g = r_{b g} because
  // the P action permutes the original basis.  Literal two-path spot checks:
  for (int s = 0; s < 24; ++s) {
    int a = rnd(k), b = rnd(nP);
    int gen = gens[rnd(static_cast<int>(gens.size()))];
    IntMatrix wg = what.element_matrix(gen);
    std::vector<Int> eb(nP, 0);
    eb[b] = 1;
    std::vector<Int> pimg = phat.apply_element(std::move(eb), gen);
    int bg = -1;
    for (int t = 0; t < nP; ++t)
      if (pimg[t] != 0) {
        if (bg >= 0 || pimg[t] != 1) { bg = -2; break; }
        bg = t;
      }
    if (bg < 0) fail("P action is not a basis permutation");
    // path 1: act in W (x) P, then project
    std::vector<Int> acc1(nr, 0);
    for (int c = 0; c < k; ++c) {
      if (wg(a, c) == 0) continue;
      for (auto& [t, w] : mtn_rows[c + k * bg]) acc1[t] += wg(a, c) * *w;
    }
    // path 2: project, then act on N
    std::vector<Int> acc2(nr, 0);
    IntMatrix ng = n.element_matrix(gen);
    for (auto& [c, v] : mtn_rows[a + k * b])
      for (int t = 0; t < nr; ++t)
        if (ng(c, t) != 0) acc2[t] += *v * ng(c, t);
    if (acc1 != acc2) fail("projection onto N not equivariant");
  }

  // ---- sym2 sequence -------------------------------------------------------
  // Exactness is structural given the above:
  //  * the embedding rows are part of a basis (Sym^2 u unimodular):
  //    injective, saturated image;
  //  * the composite vanishes by functoriality: u_i being killed by the
  //    projection (checked) forces (u_i * u_j) Sym^2(surj) = 0;
  //  * Sym^2 of a split surjection is surjective: the section rows map to
  //    the standard basis (checked), so their symmetric products map to the
  //    standard basis of Sym^2 T;
  //  * ranks: nr + s2_rank(nT) = s2_rank(nP) (checked above), so the
  //    rank/saturation argument closes middle exactness;
  //  * equivariance of the embedding is the support/block argument above,
  //    equivariance of the projection is functoriality applied to the
  //    underlying verified sequence.
  // Literal spot checks against the stored matrices:
  for (int s = 0, samples = std::min(nr, 32); s < samples; ++s) {
    int r = rnd(nr);
    std::vector<Int> row = prod_s2(u.row(n_pairs[r].first), u.row(n_pairs[r].second));
    for (int c = 0; c < s2_rank(nP); ++c)
      if (row[c] != s2_seq.inj(r, c)) fail("sym2 embedding rows");
  }
  for (int s = 0; s < 8; ++s) {
    int r = rnd(nr);
    std::vector<Int> acc(s2_rank(nT), 0);
    for (int c = 0; c < s2_rank(nP); ++c) {
      const Int& v = s2_seq.inj(r, c);
      if (v == 0) continue;
      for (int t = 0; t < s2_rank(nT); ++t)
        if (s2_seq.surj(c, t) != 0) acc[t] += v * s2_seq.surj(c, t);
    }
    for (const Int& v : acc)
      if (v != 0) fail("sym2 composite not zero");
  }
}

struct PhiSequenceData {
  GLattice what;       // norm-one lattice
  GLattice wedge_zg;   // wedge^2 Z[G]
  GLattice wedge_what; // wedge^2 of the norm-one lattice
  LatticeSES ses;      // 0 -> what -> wedge^2 Z[G] -> wedge^2 what -> 0
};

// phi embeds the norm-one lattice into wedge^2 Z[G] by b |-> b ^ N_G; the
// quotient is wedge^2 of the norm-one lattice via the functorial surjection.
inline PhiSequenceData phi_sequence(std::shared_ptr<const AnyGroup> g) {
  int n = g->order();
  int id = g->identity();
  GLattice what = norm_one_lattice(g);
  GLattice zg = regular_lattice(g);
  GLattice w2zg = wedge2_lattice(zg);
  GLattice w2w = wedge2_lattice(what);

  IntMatrix inj(n - 1, wedge2_rank(n));
  int r = 0;
  for (int y = 0; y < n; ++y) {
    if (y == id) continue;
    for (int x = 0; x < n; ++x) {
      if (x == y) continue;
      // y ^ e_x picks up a sign when x < y in basis order
      if (y < x)
        inj(r, wedge2_index(y, x, n)) += 1;
      else
        inj(r, wedge2_index(x, y, n)) -= 1;
    }
    ++r;
  }

  // quotient map Z[G] -> W on basis vectors, then its wedge square
  IntMatrix qm(n, n - 1);
  int c = 0;
  for (int x = 0; x < n; ++x) {
    if (x == id) continue;
    qm(x, c++) = 1;
  }
  for (int j = 0; j < n - 1; ++j) qm(id, j) = -1;
  IntMatrix surj = wedge2_map(qm);

  LatticeSES ses{what, w2zg, w2w, std::move(inj), std::move(surj)};
  return {what, w2zg, w2w, std::move(ses)};
}

}  // namespace glattice
}  // namespace h3nr
