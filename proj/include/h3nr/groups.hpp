#pragma once

// Finite groups: abelian groups given by a factor list Z/n1 x ... x Z/nk,
// arbitrary small groups given by a verified multiplication table, and the
// subgroup machinery (enumeration, cosets, structure of abelian subgroups)
// that restriction and decomposition computations depend on.
//
// Elements are indices 0..|G|-1.  For factor lists, an element (a1,...,ak)
// has index a1 + n1*(a2 + n2*(a3 + ...)), i.e. the first coordinate varies
// fastest; the identity is index 0.

#include <h3nr/zlinalg.hpp>

#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <set>
#include <sstream>
#include <variant>

namespace h3nr {
namespace groups {

using zlinalg::Int;
using zlinalg::IntMatrix;

class FinAbGroup {
 public:
  explicit FinAbGroup(std::vector<int> factors) : factors_(std::move(factors)) {
    if (factors_.empty()) factors_.push_back(1);
    order_ = 1;
    for (int f : factors_) {
      if (f < 1) throw std::invalid_argument("factor must be positive");
      if (order_ > (1 << 20) / f) throw std::invalid_argument("group too large");
      order_ *= f;
    }
  }

  int order() const { return order_; }
  const std::vector<int>& factors() const { return factors_; }

  std::vector<int> tuple_of(int x) const {
    std::vector<int> t(factors_.size());
    for (size_t i = 0; i < factors_.size(); ++i) {
      t[i] = x % factors_[i];
      x /= factors_[i];
    }
    return t;
  }

  int index_of(const std::vector<int>& t) const {
    if (t.size() != factors_.size()) throw std::invalid_argument("tuple arity mismatch");
    int x = 0;
    for (size_t i = factors_.size(); i-- > 0;) {
      int a = ((t[i] % factors_[i]) + factors_[i]) % factors_[i];
      x = x * factors_[i] + a;
    }
    return x;
  }

  int mul(int a, int b) const {
    std::vector<int> ta = tuple_of(a), tb = tuple_of(b);
    for (size_t i = 0; i < ta.size(); ++i) ta[i] = (ta[i] + tb[i]) % factors_[i];
    return index_of(ta);
  }

  int inv(int a) const {
    std::vector<int> t = tuple_of(a);
    for (size_t i = 0; i < t.size(); ++i) t[i] = (factors_[i] - t[i]) % factors_[i];
    return index_of(t);
  }

  // Standard generators: one per factor with n_i > 1.
  std::vector<int> generators() const {
    std::vector<int> gens;
    std::vector<int> t(factors_.size(), 0);
    for (size_t i = 0; i < factors_.size(); ++i) {
      if (factors_[i] == 1) continue;
      t[i] = 1;
      gens.push_back(index_of(t));
      t[i] = 0;
    }
    return gens;
  }

  int exponent() const {
    int e = 1;
    for (int f : factors_) e = std::lcm(e, f);
    return e;
  }

  std::string element_name(int x) const {
    std::vector<int> t = tuple_of(x);
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < t.size(); ++i) os << t[i] << (i + 1 < t.size() ? "," : "");
    os << ")";
    return os.str();
  }

 private:
  std::vector<int> factors_;
  int order_;
};

// A group presented by its full multiplication table (row a, column b holds
// a*b).  The constructor verifies the table is a group: Latin square,
// two-sided identity, inverses, associativity.
class TableGroup {
 public:
  explicit TableGroup(std::vector<std::vector<int>> table) : table_(std::move(table)) {
    n_ = static_cast<int>(table_.size());
    if (n_ == 0) throw std::invalid_argument("empty multiplication table");
    if (n_ > 64) throw std::invalid_argument("table group too large");
    for (const auto& row : table_) {
      if (static_cast<int>(row.size()) != n_) throw std::invalid_argument("table is not square");
      for (int v : row)
        if (v < 0 || v >= n_) throw std::invalid_argument("table entry out of range");
    }
    // Latin square
    for (int i = 0; i < n_; ++i) {
      std::vector<char> seen_row(n_, 0), seen_col(n_, 0);
      for (int j = 0; j < n_; ++j) {
        if (seen_row[table_[i][j]]++) throw std::invalid_argument("repeated entry in table row");
        if (seen_col[table_[j][i]]++) throw std::invalid_argument("repeated entry in table column");
      }
    }
    // identity
    identity_ = -1;
    for (int e = 0; e < n_; ++e) {
      bool ok = true;
      for (int a = 0; a < n_ && ok; ++a) ok = table_[e][a] == a && table_[a][e] == a;
      if (ok) {
        identity_ = e;
        break;
      }
    }
    if (identity_ < 0) throw std::invalid_argument("table has no identity");
    // inverses
    inv_.assign(n_, -1);
    for (int a = 0; a < n_; ++a) {
      for (int b = 0; b < n_; ++b)
        if (table_[a][b] == identity_ && table_[b][a] == identity_) {
          inv_[a] = b;
          break;
        }
      if (inv_[a] < 0) throw std::invalid_argument("table element has no inverse");
    }
    // associativity
    for (int a = 0; a < n_; ++a)
      for (int b = 0; b < n_; ++b)
        for (int c = 0; c < n_; ++c)
          if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
            throw std::invalid_argument("table is not associative");
  }

  int order() const { return n_; }
  int identity() const { return identity_; }
  int mul(int a, int b) const { return table_[a][b]; }
  int inv(int a) const { return inv_[a]; }

  bool is_abelian() const {
    for (int a = 0; a < n_; ++a)
      for (int b = a + 1; b < n_; ++b)
        if (table_[a][b] != table_[b][a]) return false;
    return true;
  }

  // Greedy generating set.
  std::vector<int> generators() const {
    std::vector<int> gens;
    std::set<int> span{identity_};
    for (int x = 0; x < n_ && static_cast<int>(span.size()) < n_; ++x) {
      if (span.count(x)) continue;
      gens.push_back(x);
      // close span under multiplication with the new generator set
      std::vector<int> frontier(span.begin(), span.end());
      span.insert(x);
      frontier.push_back(x);
      while (!frontier.empty()) {
        int a = frontier.back();
        frontier.pop_back();
        for (int g : gens) {
          int y = table_[a][g];
          if (span.insert(y).second) frontier.push_back(y);
          y = table_[g][a];
          if (span.insert(y).second) frontier.push_back(y);
        }
      }
    }
    return gens;
  }

  std::string element_name(int x) const { return "g" + std::to_string(x); }

 private:
  int n_;
  int identity_;
  std::vector<int> inv_;
  std::vector<std::vector<int>> table_;
};

// Uniform facade over the two group kinds.
class AnyGroup {
 public:
  explicit AnyGroup(FinAbGroup g) : g_(std::move(g)) {}
  explicit AnyGroup(TableGroup g) : g_(std::move(g)) {}

  static AnyGroup abelian(std::vector<int> factors) { return AnyGroup(FinAbGroup(std::move(factors))); }

  int order() const {
    return std::visit([](const auto& g) { return g.order(); }, g_);
  }
  int identity() const {
    if (const FinAbGroup* a = abelian_part()) return a->index_of(std::vector<int>(a->factors().size(), 0));
    return std::get<TableGroup>(g_).identity();
  }
  int mul(int a, int b) const {
    return std::visit([&](const auto& g) { return g.mul(a, b); }, g_);
  }
  int inv(int a) const {
    return std::visit([&](const auto& g) { return g.inv(a); }, g_);
  }
  std::vector<int> generators() const {
    return std::visit([](const auto& g) { return g.generators(); }, g_);
  }
  std::string element_name(int x) const {
    return std::visit([&](const auto& g) { return g.element_name(x); }, g_);
  }
  bool is_abelian() const {
    if (abelian_part()) return true;
    return std::get<TableGroup>(g_).is_abelian();
  }

  // Non-null exactly when constructed from a factor list.
  const FinAbGroup* abelian_part() const { return std::get_if<FinAbGroup>(&g_); }

  int pow(int a, long long e) const {
    int r = identity();
    if (e < 0) {
      a = inv(a);
      e = -e;
    }
    while (e > 0) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }

  int element_order(int a) const {
    int e = identity(), x = a, k = 1;
    while (x != e) {
      x = mul(x, a);
      ++k;
    }
    return k;
  }

  int exponent() const {
    int e = 1;
    for (int x = 0; x < order(); ++x) e = std::lcm(e, element_order(x));
    return e;
  }

 private:
  std::variant<FinAbGroup, TableGroup> g_;
};

struct Subgroup {
  std::vector<int> elements;  // sorted, contains the identity

  int order() const { return static_cast<int>(elements.size()); }
  bool contains(int x) const {
    return std::binary_search(elements.begin(), elements.end(), x);
  }
};

inline Subgroup closure(const AnyGroup& g, std::vector<int> seed) {
  std::set<int> elems{g.identity()};
  std::vector<int> frontier{g.identity()};
  for (int s : seed)
    if (elems.insert(s).second) frontier.push_back(s);
  while (!frontier.empty()) {
    int a = frontier.back();
    frontier.pop_back();
    for (int s : seed) {
      for (int y : {g.mul(a, s), g.mul(s, a)})
        if (elems.insert(y).second) frontier.push_back(y);
    }
  }
  return Subgroup{std::vector<int>(elems.begin(), elems.end())};
}

inline Subgroup trivial_subgroup(const AnyGroup& g) { return Subgroup{{g.identity()}}; }

inline Subgroup full_subgroup(const AnyGroup& g) {
  std::vector<int> all(g.order());
  std::iota(all.begin(), all.end(), 0);
  return Subgroup{std::move(all)};
}

inline std::vector<Subgroup> cyclic_subgroups(const AnyGroup& g) {
  std::set<std::vector<int>> seen;
  std::vector<Subgroup> out;
  for (int x = 0; x < g.order(); ++x) {
    Subgroup s = closure(g, {x});
    if (seen.insert(s.elements).second) out.push_back(std::move(s));
  }
  return out;
}

namespace detail {

// Subgroups of an abelian factor group correspond to integer lattices L with
// diag(n) <= L <= Z^k; the Hermite normal form of a generating stack is a
// canonical key, so a breadth-first closure over "add one element" visits
// each subgroup exactly once.
inline std::vector<Subgroup> abelian_subgroups(const AnyGroup& g) {
  const FinAbGroup& a = *g.abelian_part();
  int k = static_cast<int>(a.factors().size());
  IntMatrix rel(k, k);
  for (int i = 0; i < k; ++i) rel(i, i) = a.factors()[i];

  auto key_of = [&](const IntMatrix& gens) {
    return zlinalg::hnf(zlinalg::vstack(gens, rel));
  };
  auto serialize = [&](const IntMatrix& h) {
    std::ostringstream os;
    os << h.to_string();
    return os.str();
  };

  std::map<std::string, IntMatrix> seen;
  IntMatrix start = key_of(IntMatrix(0, k));
  seen.emplace(serialize(start), start);
  std::vector<IntMatrix> frontier{start};
  while (!frontier.empty()) {
    IntMatrix h = std::move(frontier.back());
    frontier.pop_back();
    for (int x = 1; x < g.order(); ++x) {
      std::vector<int> t = a.tuple_of(x);
      IntMatrix v(1, k);
      for (int i = 0; i < k; ++i) v(0, i) = t[i];
      IntMatrix nh = key_of(zlinalg::vstack(h, v));
      auto [it, fresh] = seen.emplace(serialize(nh), nh);
      if (fresh) frontier.push_back(it->second);
    }
  }

  std::vector<Subgroup> out;
  for (auto& [_, h] : seen) {
    std::vector<int> piv = zlinalg::pivot_cols_of_echelon(h);
    Subgroup s;
    for (int x = 0; x < g.order(); ++x) {
      std::vector<int> t = a.tuple_of(x);
      std::vector<Int> v(t.begin(), t.end());
      if (zlinalg::solve_against_hnf(h, piv, v, nullptr)) s.elements.push_back(x);
    }
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end(), [](const Subgroup& x, const Subgroup& y) {
    if (x.order() != y.order()) return x.order() < y.order();
    return x.elements < y.elements;
  });
  return out;
}

inline std::vector<Subgroup> generic_subgroups(const AnyGroup& g) {
  std::set<std::vector<int>> seen;
  std::vector<Subgroup> frontier{trivial_subgroup(g)};
  seen.insert(frontier[0].elements);
  std::vector<Subgroup> out;
  while (!frontier.empty()) {
    Subgroup h = std::move(frontier.back());
    frontier.pop_back();
    out.push_back(h);
    for (int x = 0; x < g.order(); ++x) {
      if (h.contains(x)) continue;
      std::vector<int> seed = h.elements;
      seed.push_back(x);
      Subgroup nh = closure(g, seed);
      if (seen.insert(nh.elements).second) frontier.push_back(nh);
    }
  }
  std::sort(out.begin(), out.end(), [](const Subgroup& x, const Subgroup& y) {
    if (x.order() != y.order()) return x.order() < y.order();
    return x.elements < y.elements;
  });
  return out;
}

}  // namespace detail

// All subgroups, sorted by order then element list.
// Close a set of permutations (vectors mapping index -> image, all of one
// arity) under composition and return the multiplication-table group, with
// the identity first.  Composition is "a then b".
inline std::shared_ptr<const AnyGroup> permutation_table_group(
    const std::vector<std::vector<int>>& gens) {
  using Perm = std::vector<int>;
  size_t n = gens.at(0).size();
  auto compose = [](const Perm& a, const Perm& b) {
    Perm c(a.size());
    for (size_t i = 0; i < a.size(); ++i) c[i] = b[a[i]];
    return c;
  };
  Perm id(n);
  for (size_t i = 0; i < n; ++i) id[i] = static_cast<int>(i);
  std::vector<Perm> elems{id};
  std::map<Perm, int> index{{id, 0}};
  for (size_t at = 0; at < elems.size(); ++at)
    for (const Perm& g : gens) {
      Perm next = compose(elems[at], g);
      if (index.emplace(next, static_cast<int>(elems.size())).second)
        elems.push_back(std::move(next));
    }
  int m = static_cast<int>(elems.size());
  std::vector<std::vector<int>> table(m, std::vector<int>(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) table[i][j] = index.at(compose(elems[i], elems[j]));
  return std::make_shared<const AnyGroup>(AnyGroup(TableGroup(std::move(table))));
}

inline std::shared_ptr<const AnyGroup> symmetric3() {
  return permutation_table_group({{1, 0, 2}, {1, 2, 0}});
}

inline std::shared_ptr<const AnyGroup> dihedral4() {
  // symmetries of a square: rotation (0123) and a reflection
  return permutation_table_group({{1, 2, 3, 0}, {1, 0, 3, 2}});
}

namespace detail {
inline void factor_chains(int rem, int cap, int max_factors, std::vector<int>& cur,
                          std::vector<std::vector<int>>& out) {
  if (rem == 1) {
    out.emplace_back(cur.rbegin(), cur.rend());
    return;
  }
  if (static_cast<int>(cur.size()) == max_factors) return;
  for (int d = 2; d <= std::min(rem, cap); ++d) {
    if (rem % d != 0 || cap % d != 0) continue;
    cur.push_back(d);
    factor_chains(rem / d, d, max_factors, cur, out);
    cur.pop_back();
  }
}
}  // namespace detail

// Invariant-factor lists (ascending divisibility chains, every factor > 1)
// of all abelian groups of order 2..max_order with at most max_factors
// factors, ordered by group order then lexicographically.
inline std::vector<std::vector<int>> abelian_factor_lists(int max_order,
                                                          int max_factors = 1 << 20) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  for (int n = 2; n <= max_order; ++n) detail::factor_chains(n, n, max_factors, cur, out);
  return out;
}

inline std::vector<Subgroup> subgroups(const AnyGroup& g) {
  if (g.abelian_part()) {
    if (g.order() > 512) throw std::invalid_argument("subgroup enumeration beyond order 512");
    return detail::abelian_subgroups(g);
  }
  if (g.order() > 24) throw std::invalid_argument("subgroup enumeration beyond order 24 for table groups");
  return detail::generic_subgroups(g);
}

// Representatives of the left cosets xH, found by ascending scan.
inline std::vector<int> coset_reps(const AnyGroup& g, const Subgroup& h) {
  std::vector<char> seen(g.order(), 0);
  std::vector<int> reps;
  for (int x = 0; x < g.order(); ++x) {
    if (seen[x]) continue;
    reps.push_back(x);
    for (int y : h.elements) seen[g.mul(x, y)] = 1;
  }
  return reps;
}

// Representatives of the right cosets Hx, found by ascending scan.  For a
// right module, the image of an H-fixed element under x depends only on Hx.
inline std::vector<int> right_coset_reps(const AnyGroup& g, const Subgroup& h) {
  std::vector<char> seen(g.order(), 0);
  std::vector<int> reps;
  for (int x = 0; x < g.order(); ++x) {
    if (seen[x]) continue;
    reps.push_back(x);
    for (int y : h.elements) seen[g.mul(y, x)] = 1;
  }
  return reps;
}

inline Subgroup commutator_subgroup(const AnyGroup& g) {
  std::vector<int> comms;
  for (int a = 0; a < g.order(); ++a)
    for (int b = 0; b < g.order(); ++b)
      comms.push_back(g.mul(g.mul(a, b), g.inv(g.mul(b, a))));
  return closure(g, comms);
}

// Structure of a subgroup of an abelian group: canonical invariant factors
// (each > 1) together with matching generators given as parent elements.
struct SubgroupStructure {
  std::vector<int> factors;
  std::vector<int> generators;  // generators[i] has order factors[i] in H
};

inline SubgroupStructure subgroup_structure(const AnyGroup& g, const Subgroup& h) {
  const FinAbGroup* ap = g.abelian_part();
  if (!ap) throw std::invalid_argument("subgroup_structure requires an abelian group");
  const FinAbGroup& a = *ap;
  int k = static_cast<int>(a.factors().size());

  IntMatrix rel(k, k);
  for (int i = 0; i < k; ++i) rel(i, i) = a.factors()[i];
  IntMatrix gens(static_cast<int>(h.elements.size()), k);
  for (size_t r = 0; r < h.elements.size(); ++r) {
    std::vector<int> t = a.tuple_of(h.elements[r]);
    for (int i = 0; i < k; ++i) gens(static_cast<int>(r), i) = t[i];
  }
  // lattice of the subgroup, and the relation lattice expressed in its basis
  IntMatrix b = zlinalg::hnf(zlinalg::vstack(gens, rel));
  std::vector<int> piv = zlinalg::pivot_cols_of_echelon(b);
  IntMatrix coords(k, b.rows());
  for (int i = 0; i < k; ++i) {
    std::vector<Int> c;
    if (!zlinalg::solve_against_hnf(b, piv, rel.row(i), &c))
      throw std::logic_error("relation lattice escaped the subgroup lattice");
    for (int j = 0; j < b.rows(); ++j) coords(i, j) = c[j];
  }
  zlinalg::SmithForm s = zlinalg::smith_normal_form(coords);
  // new basis rows V^{-1} * b make the relation coordinates diagonal
  IntMatrix nb = zlinalg::unimodular_inverse(s.right) * b;

  SubgroupStructure out;
  for (size_t i = 0; i < s.d.size(); ++i) {
    if (s.d[i] == 0) throw std::logic_error("subgroup of a finite group must be finite");
    if (s.d[i] == 1) continue;
    std::vector<int> t(k);
    for (int j = 0; j < k; ++j) {
      Int m = nb(static_cast<int>(i), j) % a.factors()[j];
      if (m < 0) m += a.factors()[j];
      t[j] = static_cast<int>(m);
    }
    out.factors.push_back(static_cast<int>(s.d[i]));
    out.generators.push_back(a.index_of(t));
  }
  return out;
}

}  // namespace groups
}  // namespace h3nr
