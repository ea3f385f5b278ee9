#pragma once

// Exact integer linear algebra: dense matrices over arbitrary-precision
// integers, Smith/Hermite normal forms, kernels, cokernels, subquotients,
// and finitely generated abelian groups in canonical invariant-factor form.
//
// Conventions used throughout the library:
//   * vectors are row vectors; a map Z^a -> Z^b is an a x b matrix acting
//     by right multiplication (v |-> v * M),
//   * "relations as rows": cokernel(M) is Z^cols(M) / rowspan(M),
//   * all normal forms use deterministic pivoting (smallest nonzero
//     absolute value, ties broken by lowest row-major index).

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace h3nr {
namespace zlinalg {

using Int = boost::multiprecision::cpp_int;

inline Int abs_int(const Int& a) { return a < 0 ? Int(-a) : a; }

// Floor division (quotient rounded toward minus infinity).
inline Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  if (a % b != 0 && ((a < 0) != (b < 0))) --q;
  return q;
}

class IntMatrix {
 public:
  IntMatrix() : rows_(0), cols_(0) {}
  IntMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), e_(static_cast<size_t>(rows) * cols) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
  }
  IntMatrix(int rows, int cols, std::vector<Int> entries)
      : rows_(rows), cols_(cols), e_(std::move(entries)) {
    if (e_.size() != static_cast<size_t>(rows) * cols)
      throw std::invalid_argument("entry count does not match dimensions");
  }

  static IntMatrix identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  // Row-major initializer helper, e.g. IntMatrix::from({{2,4},{6,8}}).
  static IntMatrix from(const std::vector<std::vector<Int>>& rows) {
    int r = static_cast<int>(rows.size());
    int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
    IntMatrix m(r, c);
    for (int i = 0; i < r; ++i) {
      if (static_cast<int>(rows[i].size()) != c)
        throw std::invalid_argument("ragged initializer");
      for (int j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Int& operator()(int i, int j) { return e_[static_cast<size_t>(i) * cols_ + j]; }
  const Int& operator()(int i, int j) const { return e_[static_cast<size_t>(i) * cols_ + j]; }

  bool operator==(const IntMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
  }
  bool operator!=(const IntMatrix& o) const { return !(*this == o); }

  bool is_zero() const {
    for (const Int& v : e_)
      if (v != 0) return false;
    return true;
  }

  std::vector<Int> row(int i) const {
    std::vector<Int> out(cols_);
    for (int j = 0; j < cols_; ++j) out[j] = (*this)(i, j);
    return out;
  }

  void set_row(int i, const std::vector<Int>& v) {
    if (static_cast<int>(v.size()) != cols_) throw std::invalid_argument("row length mismatch");
    for (int j = 0; j < cols_; ++j) (*this)(i, j) = v[j];
  }

  IntMatrix transpose() const {
    IntMatrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  IntMatrix operator*(const IntMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("dimension mismatch in product");
    IntMatrix p(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        const Int& a = (*this)(i, k);
        if (a == 0) continue;
        for (int j = 0; j < o.cols_; ++j) {
          const Int& b = o(k, j);
          if (b != 0) p(i, j) += a * b;
        }
      }
    return p;
  }

  IntMatrix operator+(const IntMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("shape mismatch");
    IntMatrix s(rows_, cols_);
    for (size_t k = 0; k < e_.size(); ++k) s.e_[k] = e_[k] + o.e_[k];
    return s;
  }

  IntMatrix operator-(const IntMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("shape mismatch");
    IntMatrix s(rows_, cols_);
    for (size_t k = 0; k < e_.size(); ++k) s.e_[k] = e_[k] - o.e_[k];
    return s;
  }

  void swap_rows(int a, int b) {
    if (a == b) return;
    for (int j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(int a, int b) {
    if (a == b) return;
    for (int i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  // row a -= q * row b
  void row_axpy(int a, int b, const Int& q) {
    if (q == 0) return;
    for (int j = 0; j < cols_; ++j) (*this)(a, j) -= q * (*this)(b, j);
  }
  // col a -= q * col b
  void col_axpy(int a, int b, const Int& q) {
    if (q == 0) return;
    for (int i = 0; i < rows_; ++i) (*this)(i, a) -= q * (*this)(i, b);
  }
  void negate_row(int i) {
    for (int j = 0; j < cols_; ++j) (*this)(i, j) = -(*this)(i, j);
  }

  std::string to_string() const {
    std::ostringstream os;
    for (int i = 0; i < rows_; ++i) {
      os << (i == 0 ? "[" : " ");
      for (int j = 0; j < cols_; ++j) os << (*this)(i, j) << (j + 1 == cols_ ? "" : " ");
      os << (i + 1 == rows_ ? "]" : "\n");
    }
    if (rows_ == 0) os << "[]";
    return os.str();
  }

 private:
  int rows_, cols_;
  std::vector<Int> e_;
};

inline IntMatrix hstack(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("hstack row mismatch");
  IntMatrix m(a.rows(), a.cols() + b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
    for (int j = 0; j < b.cols(); ++j) m(i, a.cols() + j) = b(i, j);
  }
  return m;
}

inline IntMatrix vstack(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.cols()) throw std::invalid_argument("vstack column mismatch");
  IntMatrix m(a.rows() + b.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) m(a.rows() + i, j) = b(i, j);
  return m;
}

inline std::vector<Int> vec_mat(const std::vector<Int>& v, const IntMatrix& m) {
  if (static_cast<int>(v.size()) != m.rows()) throw std::invalid_argument("vec_mat size mismatch");
  std::vector<Int> out(m.cols());
  for (int i = 0; i < m.rows(); ++i) {
    if (v[i] == 0) continue;
    for (int j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0) out[j] += v[i] * m(i, j);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Hermite normal form (row style).
//
// hnf_with_transform(M) returns (H, U) with U unimodular, U*M = H, H in row
// echelon form: pivots positive, strictly increasing pivot columns, entries
// above each pivot reduced into [0, pivot).  Zero rows are collected at the
// bottom of H.  hnf(M) additionally drops the zero rows.
// ---------------------------------------------------------------------------

struct HermiteForm {
  IntMatrix h;               // full (rows(M) x cols(M)), zero rows at bottom
  IntMatrix u;               // unimodular, u * m == h
  std::vector<int> pivot_cols;  // pivot column per nonzero row of h
};

inline HermiteForm hnf_with_transform(const IntMatrix& m) {
  IntMatrix h = m;
  IntMatrix u = IntMatrix::identity(m.rows());
  std::vector<int> pivots;
  int t = 0;
  for (int j = 0; j < h.cols() && t < h.rows(); ++j) {
    // Reduce column j below cursor t to a single nonzero entry.
    while (true) {
      int best = -1;
      for (int i = t; i < h.rows(); ++i)
        if (h(i, j) != 0 && (best < 0 || abs_int(h(i, j)) < abs_int(h(best, j)))) best = i;
      if (best < 0) break;
      bool more = false;
      for (int i = t; i < h.rows(); ++i) {
        if (i == best || h(i, j) == 0) continue;
        Int q = floor_div(h(i, j), h(best, j));
        h.row_axpy(i, best, q);
        u.row_axpy(i, best, q);
        if (h(i, j) != 0) more = true;
      }
      if (!more) {
        h.swap_rows(t, best);
        u.swap_rows(t, best);
        break;
      }
    }
    if (h(t, j) == 0) continue;
    if (h(t, j) < 0) {
      h.negate_row(t);
      u.negate_row(t);
    }
    for (int i = 0; i < t; ++i) {
      Int q = floor_div(h(i, j), h(t, j));
      h.row_axpy(i, t, q);
      u.row_axpy(i, t, q);
    }
    pivots.push_back(j);
    ++t;
  }
  return {std::move(h), std::move(u), std::move(pivots)};
}

inline IntMatrix hnf(const IntMatrix& m) {
  HermiteForm f = hnf_with_transform(m);
  int r = static_cast<int>(f.pivot_cols.size());
  IntMatrix out(r, m.cols());
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < m.cols(); ++j) out(i, j) = f.h(i, j);
  return out;
}

// Solve c * H = b for an echelon H without zero rows (as produced by hnf).
// Returns false when b is not in the row span.
inline bool solve_against_hnf(const IntMatrix& h, const std::vector<int>& pivot_cols,
                              std::vector<Int> b, std::vector<Int>* coeff = nullptr) {
  if (static_cast<int>(b.size()) != h.cols()) throw std::invalid_argument("solve size mismatch");
  std::vector<Int> c(h.rows());
  for (int i = 0; i < h.rows(); ++i) {
    int p = pivot_cols[i];
    if (b[p] == 0) continue;
    if (b[p] % h(i, p) != 0) return false;
    Int q = b[p] / h(i, p);
    for (int j = p; j < h.cols(); ++j) b[j] -= q * h(i, j);
    c[i] = q;
  }
  for (const Int& v : b)
    if (v != 0) return false;
  if (coeff) *coeff = std::move(c);
  return true;
}

inline std::vector<int> pivot_cols_of_echelon(const IntMatrix& h) {
  std::vector<int> p(h.rows());
  for (int i = 0; i < h.rows(); ++i) {
    int j = 0;
    while (j < h.cols() && h(i, j) == 0) ++j;
    if (j == h.cols()) throw std::invalid_argument("zero row in echelon matrix");
    p[i] = j;
  }
  return p;
}

// Solve x * A = b over the integers; returns false when no solution exists.
inline bool solve_left(const IntMatrix& a, const std::vector<Int>& b, std::vector<Int>* x) {
  HermiteForm f = hnf_with_transform(a);
  int r = static_cast<int>(f.pivot_cols.size());
  IntMatrix h(r, a.cols());
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < a.cols(); ++j) h(i, j) = f.h(i, j);
  std::vector<Int> c;
  if (!solve_against_hnf(h, f.pivot_cols, b, &c)) return false;
  if (x) {
    x->assign(a.rows(), Int(0));
    for (int i = 0; i < r; ++i)
      if (c[i] != 0)
        for (int k = 0; k < a.rows(); ++k) (*x)[k] += c[i] * f.u(i, k);
  }
  return true;
}

// Basis of {x : x * M = 0}, as rows.  The kernel is a saturated sublattice,
// and the returned basis is its Hermite normal form.
inline IntMatrix kernel_basis(const IntMatrix& m) {
  HermiteForm f = hnf_with_transform(m);
  int r = static_cast<int>(f.pivot_cols.size());
  int k = m.rows() - r;
  IntMatrix ker(k, m.rows());
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < m.rows(); ++j) ker(i, j) = f.u(r + i, j);
  return hnf(ker);
}

// Inverse of a unimodular matrix (errors when the input is not unimodular).
inline IntMatrix unimodular_inverse(const IntMatrix& u) {
  if (u.rows() != u.cols()) throw std::invalid_argument("inverse of non-square matrix");
  HermiteForm f = hnf_with_transform(u);
  if (static_cast<int>(f.pivot_cols.size()) != u.rows())
    throw std::invalid_argument("matrix is singular");
  // U unimodular implies HNF(U) = I, so f.u is the inverse.
  for (int i = 0; i < u.rows(); ++i)
    for (int j = 0; j < u.cols(); ++j)
      if (f.h(i, j) != (i == j ? 1 : 0)) throw std::invalid_argument("matrix is not unimodular");
  return f.u;
}

// ---------------------------------------------------------------------------
// Smith normal form: left * M * right = diag(d), left and right unimodular,
// d nonnegative with d[k] | d[k+1]; d is padded with zeros to min(rows, cols).
// ---------------------------------------------------------------------------

struct SmithForm {
  std::vector<Int> d;
  IntMatrix left;   // empty when with_left = false
  IntMatrix right;  // empty when with_right = false
};

// Transforms are optional: skipping one avoids carrying (and updating) a
// potentially huge unimodular matrix when only d or one side is wanted.
inline SmithForm smith_normal_form(const IntMatrix& m, bool with_left = true,
                                   bool with_right = true) {
  IntMatrix a = m;
  IntMatrix left = with_left ? IntMatrix::identity(m.rows()) : IntMatrix();
  IntMatrix right = with_right ? IntMatrix::identity(m.cols()) : IntMatrix();
  int n = std::min(m.rows(), m.cols());
  std::vector<Int> d(n, Int(0));

  for (int k = 0; k < n; ++k) {
    bool done = false;  // remaining submatrix is zero
    for (;;) {
      // Pivot: smallest nonzero absolute value, lowest row-major index.
      int pi = -1, pj = -1;
      for (int i = k; i < a.rows(); ++i)
        for (int j = k; j < a.cols(); ++j)
          if (a(i, j) != 0 && (pi < 0 || abs_int(a(i, j)) < abs_int(a(pi, pj)))) {
            pi = i;
            pj = j;
          }
      if (pi < 0) {
        done = true;
        break;
      }
      a.swap_rows(k, pi);
      if (with_left) left.swap_rows(k, pi);
      a.swap_cols(k, pj);
      if (with_right) right.swap_cols(k, pj);

      bool clean = true;
      for (int i = k + 1; i < a.rows(); ++i)
        if (a(i, k) != 0) {
          Int q = floor_div(a(i, k), a(k, k));
          a.row_axpy(i, k, q);
          if (with_left) left.row_axpy(i, k, q);
          if (a(i, k) != 0) clean = false;
        }
      for (int j = k + 1; j < a.cols(); ++j)
        if (a(k, j) != 0) {
          Int q = floor_div(a(k, j), a(k, k));
          a.col_axpy(j, k, q);
          if (with_right) right.col_axpy(j, k, q);
          if (a(k, j) != 0) clean = false;
        }
      if (!clean) continue;

      // Enforce the divisibility chain: fold in any entry the pivot misses.
      bool divides_all = true;
      for (int i = k + 1; i < a.rows() && divides_all; ++i)
        for (int j = k + 1; j < a.cols(); ++j)
          if (a(i, j) % a(k, k) != 0) {
            a.row_axpy(k, i, Int(-1));
            if (with_left) left.row_axpy(k, i, Int(-1));
            divides_all = false;
            break;
          }
      if (divides_all) break;
    }
    if (done) break;
    if (a(k, k) < 0) {
      a.negate_row(k);
      if (with_left) left.negate_row(k);
    }
    d[k] = a(k, k);
  }
  return {std::move(d), std::move(left), std::move(right)};
}

// ---------------------------------------------------------------------------
// Finitely generated abelian groups in canonical form: free rank plus
// torsion invariant factors (each >= 2, ascending divisibility chain).
// ---------------------------------------------------------------------------

class FgAbGroup {
 public:
  FgAbGroup() : free_rank_(0) {}

  static FgAbGroup free_of_rank(int r) {
    FgAbGroup g;
    g.free_rank_ = r;
    return g;
  }

  static FgAbGroup cyclic(const Int& n) {
    if (n < 0) throw std::invalid_argument("cyclic order must be nonnegative");
    FgAbGroup g;
    if (n == 0)
      g.free_rank_ = 1;
    else if (n > 1)
      g.torsion_.push_back(n);
    return g;
  }

  // Canonicalize an arbitrary direct sum Z^free + sum Z/t (t >= 1; t = 0
  // counts toward the free rank).
  static FgAbGroup from_parts(int free_rank, std::vector<Int> torsions) {
    for (const Int& t : torsions) {
      if (t < 0) throw std::invalid_argument("negative torsion order");
      if (t == 0) ++free_rank;
    }
    std::vector<Int> ts;
    for (const Int& t : torsions)
      if (t > 1) ts.push_back(t);
    FgAbGroup g;
    g.free_rank_ = free_rank;
    if (!ts.empty()) {
      int n = static_cast<int>(ts.size());
      IntMatrix diag(n, n);
      for (int i = 0; i < n; ++i) diag(i, i) = ts[i];
      SmithForm s = smith_normal_form(diag);
      for (const Int& v : s.d)
        if (v > 1) g.torsion_.push_back(v);
    }
    return g;
  }

  int free_rank() const { return free_rank_; }
  const std::vector<Int>& torsion() const { return torsion_; }

  bool is_trivial() const { return free_rank_ == 0 && torsion_.empty(); }
  bool is_finite() const { return free_rank_ == 0; }

  Int order() const {
    if (!is_finite()) throw std::invalid_argument("order of infinite group");
    Int o = 1;
    for (const Int& t : torsion_) o *= t;
    return o;
  }

  Int exponent() const { return torsion_.empty() ? Int(1) : torsion_.back(); }

  // p-primary torsion component (the free part is discarded: the p-part of
  // a group here always means the p-primary torsion subgroup).
  FgAbGroup p_part(const Int& p) const {
    if (p < 2) throw std::invalid_argument("p_part requires p >= 2");
    std::vector<Int> ts;
    for (const Int& t : torsion_) {
      Int q = 1, r = t;
      while (r % p == 0) {
        q *= p;
        r /= p;
      }
      if (q > 1) ts.push_back(q);
    }
    return from_parts(0, std::move(ts));
  }

  FgAbGroup direct_sum(const FgAbGroup& o) const {
    std::vector<Int> ts = torsion_;
    ts.insert(ts.end(), o.torsion_.begin(), o.torsion_.end());
    return from_parts(free_rank_ + o.free_rank_, std::move(ts));
  }

  bool operator==(const FgAbGroup& o) const {
    return free_rank_ == o.free_rank_ && torsion_ == o.torsion_;
  }
  bool operator!=(const FgAbGroup& o) const { return !(*this == o); }

  std::string to_string() const {
    if (is_trivial()) return "0";
    std::ostringstream os;
    bool first = true;
    if (free_rank_ > 0) {
      os << "Z";
      if (free_rank_ > 1) os << "^" << free_rank_;
      first = false;
    }
    for (const Int& t : torsion_) {
      if (!first) os << " + ";
      os << "Z/" << t;
      first = false;
    }
    return os.str();
  }

 private:
  int free_rank_;
  std::vector<Int> torsion_;
};

// Z^cols(M) modulo the row span of M.
inline FgAbGroup cokernel(const IntMatrix& relations) {
  // Many callers stack far more relation rows than there are columns;
  // reduce to a row basis first.
  const IntMatrix* rel = &relations;
  IntMatrix reduced;
  if (relations.rows() > relations.cols() + 8) {
    reduced = hnf(relations);
    rel = &reduced;
  }
  SmithForm s = smith_normal_form(*rel);
  int rank = 0;
  std::vector<Int> torsion;
  for (const Int& v : s.d)
    if (v != 0) {
      ++rank;
      if (v > 1) torsion.push_back(v);
    }
  return FgAbGroup::from_parts(relations.cols() - rank, std::move(torsion));
}

// rowspan(num) / rowspan(den); throws when den is not contained in num.
inline FgAbGroup subquotient(const IntMatrix& num, const IntMatrix& den) {
  if (num.cols() != den.cols()) throw std::invalid_argument("ambient dimension mismatch");
  IntMatrix basis = hnf(num);
  std::vector<int> pivots = basis.rows() > 0 ? pivot_cols_of_echelon(basis) : std::vector<int>{};
  IntMatrix coords(den.rows(), basis.rows());
  for (int i = 0; i < den.rows(); ++i) {
    std::vector<Int> c;
    if (!solve_against_hnf(basis, pivots, den.row(i), &c))
      throw std::invalid_argument("subquotient: denominator is not contained in numerator");
    for (int j = 0; j < basis.rows(); ++j) coords(i, j) = c[j];
  }
  return cokernel(coords);
}

inline bool is_prime(const Int& p) {
  if (p < 2) return false;
  if (p < 4) return true;
  if (p % 2 == 0) return false;
  for (Int f = 3; f * f <= p; f += 2)
    if (p % f == 0) return false;
  return true;
}

// p-primary torsion component (the free part contributes nothing).
inline FgAbGroup p_primary(const FgAbGroup& g, const Int& p) {
  if (!is_prime(p)) throw std::invalid_argument("p_primary requires a prime");
  std::vector<Int> parts;
  for (const Int& t : g.torsion()) {
    Int q = 1, rest = t;
    while (rest % p == 0) {
      q *= p;
      rest /= p;
    }
    if (q > 1) parts.push_back(q);
  }
  return FgAbGroup::from_parts(0, parts);
}

// Canonical representative of v modulo the lattice spanned by the rows of an
// echelon basis (pivot entries reduced into [0, pivot)).
inline std::vector<Int> reduce_mod_hnf(const IntMatrix& h, const std::vector<int>& pivot_cols,
                                       std::vector<Int> v) {
  for (int i = 0; i < h.rows(); ++i) {
    int p = pivot_cols[i];
    Int q = floor_div(v[p], h(i, p));
    if (q != 0)
      for (int j = p; j < h.cols(); ++j) v[j] -= q * h(i, j);
  }
  return v;
}

}  // namespace zlinalg
}  // namespace h3nr
