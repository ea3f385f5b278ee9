// Acceptance gate: ten end-to-end checks of the whole pipeline, every one
// exact (no tolerances).  Each criterion prints one PASS/FAIL line with its
// wall time; the process exits 0 iff every criterion passes.  Failures are
// reported with the offending group and the mismatching values — a failing
// criterion is a finding, never an excuse to weaken the check.

#include <h3nr/h3nr.hpp>

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace h3nr;
using groups::AnyGroup;
using groups::FinAbGroup;
using groups::Subgroup;
using zlinalg::FgAbGroup;
using zlinalg::Int;
using zlinalg::IntMatrix;

namespace {

std::shared_ptr<const AnyGroup> abelian(const std::vector<int>& factors) {
  return std::make_shared<const AnyGroup>(AnyGroup::abelian(factors));
}

std::string label(const std::vector<int>& factors) {
  std::vector<Int> ts(factors.begin(), factors.end());
  return FgAbGroup::from_parts(0, std::move(ts)).to_string();
}

FgAbGroup fin(std::vector<long long> torsion) {
  return FgAbGroup::from_parts(0, std::vector<Int>(torsion.begin(), torsion.end()));
}

// the eight-group corpus used by the Dec-machinery criteria
const std::vector<std::vector<int>>& corpus8() {
  static const std::vector<std::vector<int>> c = {
      {3}, {3, 3}, {3, 9}, {3, 3, 3}, {5, 5}, {15}, {2, 2}, {2, 4}};
  return c;
}

// the Dec subgroup prepared for repeated exact membership queries: the
// invariant basis and the generator span are put in echelon form once
struct DecSpan {
  decomp::DecSubgroup d;
  std::vector<int> ipiv;
  IntMatrix span;
  std::vector<int> spiv;

  explicit DecSpan(const glattice::GLattice& a) : d(decomp::dec_generators(a)) {
    if (d.inv_basis.rows() > 0) ipiv = zlinalg::pivot_cols_of_echelon(d.inv_basis);
    span = zlinalg::hnf(d.gens);
    if (span.rows() > 0) spiv = zlinalg::pivot_cols_of_echelon(span);
  }

  bool contains(const std::vector<Int>& s2vec) const {
    std::vector<Int> coords;
    if (!zlinalg::solve_against_hnf(d.inv_basis, ipiv, s2vec, &coords)) return false;
    if (span.rows() == 0) {
      for (const Int& v : coords)
        if (v != 0) return false;
      return true;
    }
    return zlinalg::solve_against_hnf(span, spiv, coords);
  }
};

// ---------------------------------------------------------------------------
// 1. Cup-product cokernel equals the closed form on the full corpus:
//    all abelian groups of order <= 81 with at most 4 invariant factors
//    (which includes Z/2+Z/2+Z/4+Z/4 at order 64).
// ---------------------------------------------------------------------------
bool criterion1(std::string& why) {
  std::vector<std::vector<int>> corpus = groups::abelian_factor_lists(81, 4);
  bool has_2244 = false;
  for (const auto& fs : corpus)
    if (fs == std::vector<int>{2, 2, 4, 4}) has_2244 = true;
  if (!has_2244) {
    why = "corpus misses Z/2+Z/2+Z/4+Z/4";
    return false;
  }
  for (const auto& fs : corpus) {
    FgAbGroup cup = cohomres::cup_coker_2_2_4(abelian(fs));
    FgAbGroup closed = closed_form_coker(FinAbGroup(fs));
    if (!(cup == closed)) {
      why = label(fs) + ": cup " + cup.to_string() + " vs closed " + closed.to_string();
      return false;
    }
  }
  why = std::to_string(corpus.size()) + " groups";
  return true;
}

// ---------------------------------------------------------------------------
// 2. The three worked examples, through the local-data input channel.
// ---------------------------------------------------------------------------
bool criterion2(std::string& why) {
  struct Case {
    std::vector<int> g;
    Int n;
    std::vector<Int> degrees;
    FgAbGroup expect;
  };
  const std::vector<Case> cases = {
      {{3, 3}, 9, {9, 3, 1}, fin({})},
      {{3, 3}, 9, {3, 3, 3, 1}, fin({3})},
      {{3, 3, 3}, 27, {9, 3, 1, 9}, fin({3, 3})},
  };
  for (const Case& c : cases) {
    classfield::LocalData data;
    data.n = c.n;
    int i = 0;
    for (const Int& d : c.degrees) data.places.push_back({"v" + std::to_string(++i), d});
    H3Report rep = unramified_h3(FinAbGroup(c.g), data);
    if (!rep.full.has_value()) {
      why = label(c.g) + ": no full group on an odd-order input";
      return false;
    }
    if (!(*rep.full == c.expect)) {
      why = label(c.g) + ": got " + rep.full->to_string() + ", expected " + c.expect.to_string();
      return false;
    }
  }
  why = "3 worked examples";
  return true;
}

// ---------------------------------------------------------------------------
// 3. Odd-part equivalence through disjoint code paths: the Dec machinery on
//    the flasque kernel vs the cup-product cokernel, p-part by p-part.
// ---------------------------------------------------------------------------
bool criterion3(std::string& why) {
  for (const auto& fs : corpus8()) {
    auto gp = abelian(fs);
    FgAbGroup via_dec = decomp::s2_mod_dec(glattice::flasque_resolution(gp).that);
    FgAbGroup via_cup = cohomres::cup_coker_2_2_4(gp);
    long long rest = gp->order();
    while (rest % 2 == 0) rest /= 2;
    for (long long p = 3; p <= rest; p += 2) {
      if (rest % p != 0) continue;
      while (rest % p == 0) rest /= p;
      FgAbGroup a = via_dec.p_part(p), b = via_cup.p_part(p);
      if (!(a == b)) {
        why = label(fs) + " at p=" + std::to_string(p) + ": Dec route " + a.to_string() +
              " vs cup route " + b.to_string();
        return false;
      }
    }
  }
  why = "8 groups, every odd p";
  return true;
}

// ---------------------------------------------------------------------------
// 4. H^i(G, S^2 Z[G]) and H^i(G, Wedge^2 Z[G]) are killed by 2 for i in
//    {1,2}: all abelian groups of order <= 27 plus S3 and D4.
// ---------------------------------------------------------------------------
bool criterion4(std::string& why) {
  int cells = 0;
  auto check = [&](std::shared_ptr<const AnyGroup> gp, const cohomres::Resolution& r,
                   const std::string& name) -> bool {
    glattice::GLattice zg = glattice::regular_lattice(gp);
    for (const glattice::GLattice& l :
         {glattice::sym2_lattice(zg), glattice::wedge2_lattice(zg)}) {
      for (int i : {1, 2}) {
        FgAbGroup h = cohomres::cohomology_group(r, l, i);
        ++cells;
        if (h.exponent() > 2) {
          why = name + ": H^" + std::to_string(i) + " has exponent " + h.exponent().str();
          return false;
        }
      }
    }
    return true;
  };
  for (const auto& fs : groups::abelian_factor_lists(27)) {
    auto gp = abelian(fs);
    if (!check(gp, cohomres::small_resolution(gp, 2), label(fs))) return false;
  }
  for (const auto& [name, gp] : std::vector<std::pair<std::string,
                                                      std::shared_ptr<const AnyGroup>>>{
           {"S3", groups::symmetric3()}, {"D4", groups::dihedral4()}}) {
    if (!check(gp, cohomres::bar_resolution(gp, 2), name)) return false;
  }
  why = std::to_string(cells) + " cohomology groups, all of exponent <= 2";
  return true;
}

// ---------------------------------------------------------------------------
// 5. The Dec quotient vanishes on every coset lattice Z[H\G] of the corpus
//    groups and on direct sums of two such.
// ---------------------------------------------------------------------------
bool criterion5(std::string& why) {
  int singles = 0, sums = 0;
  for (const auto& fs : corpus8()) {
    auto gp = abelian(fs);
    std::vector<glattice::GLattice> perms;
    for (const Subgroup& h : groups::subgroups(*gp))
      perms.push_back(glattice::permutation_lattice(gp, h));
    for (const glattice::GLattice& p : perms) {
      FgAbGroup q = decomp::s2_mod_dec(p);
      ++singles;
      if (!q.is_trivial()) {
        why = label(fs) + ": nonzero quotient " + q.to_string() + " on a coset lattice";
        return false;
      }
    }
    const size_t m = perms.size();
    const std::vector<std::pair<size_t, size_t>> pairs = {
        {0, m - 1}, {m / 2, m / 2}, {0, m / 2}};
    for (auto [i, j] : pairs) {
      FgAbGroup q = decomp::s2_mod_dec(glattice::direct_sum_lattice(perms[i], perms[j]));
      ++sums;
      if (!q.is_trivial()) {
        why = label(fs) + ": nonzero quotient " + q.to_string() + " on a direct sum";
        return false;
      }
    }
  }
  why = std::to_string(singles) + " coset lattices and " + std::to_string(sums) +
        " direct sums, all vanish";
  return true;
}

// ---------------------------------------------------------------------------
// 6. Structural exactness: the flasque resolution, its symmetric-square
//    kernel sequence, and the wedge-square sequence all verify, and the
//    kernel lattice is flasque — for every abelian group of order <= 27.
// ---------------------------------------------------------------------------
bool criterion6(std::string& why) {
  int count = 0;
  for (const auto& fs : groups::abelian_factor_lists(27)) {
    auto gp = abelian(fs);
    try {
      glattice::FlasqueResolutionData f = glattice::flasque_resolution(gp);
      f.ses.verify();
      if (!glattice::is_flasque(f.that)) {
        why = label(fs) + ": kernel lattice is not flasque";
        return false;
      }
      glattice::n_sequence(f).verify();
      glattice::phi_sequence(gp).ses.verify();
    } catch (const std::exception& e) {
      why = label(fs) + ": " + e.what();
      return false;
    }
    ++count;
  }
  why = std::to_string(count) + " groups, all sequences exact";
  return true;
}

// ---------------------------------------------------------------------------
// 7. Resolution oracle at order <= 8: small-resolution cohomology matches
//    bar-resolution cohomology in every degree i <= 4 for coefficients
//    Z, Z[G], the norm-one lattice, and the flasque kernel; and the cup
//    product H^2 x H^2 -> H^4 (integer coefficients) commutes with the
//    comparison chain map between the two resolutions.
// ---------------------------------------------------------------------------
bool criterion7(std::string& why) {
  int iso_cells = 0, cup_pairs = 0;
  for (const auto& fs : groups::abelian_factor_lists(8)) {
    auto gp = abelian(fs);
    cohomres::Resolution rs = cohomres::small_resolution(gp, 5);
    cohomres::Resolution rb = cohomres::bar_resolution(gp, 4);

    glattice::FlasqueResolutionData f = glattice::flasque_resolution(gp);
    const std::vector<std::pair<std::string, glattice::GLattice>> coeffs = {
        {"Z", glattice::trivial_lattice(gp, 1)},
        {"Z[G]", glattice::regular_lattice(gp)},
        {"norm-one", glattice::norm_one_lattice(gp)},
        {"flasque-T", f.that}};
    for (const auto& [cname, l] : coeffs) {
      for (int i = 0; i <= 4; ++i) {
        FgAbGroup a = cohomres::cohomology_group(rs, l, i);
        FgAbGroup b = cohomres::cohomology_group(rb, l, i);
        ++iso_cells;
        if (!(a == b)) {
          why = label(fs) + ", " + cname + ", H^" + std::to_string(i) + ": small " +
                a.to_string() + " vs bar " + b.to_string();
          return false;
        }
      }
    }

    // cup agreement: transport bar classes through the comparison map and
    // compare both cup routes inside the small resolution's H^4
    glattice::GLattice z = glattice::trivial_lattice(gp, 1);
    cohomres::ChainMap cm =
        cohomres::lift_chain_map(rs, rb, [](int x) { return x; }, 4);
    cohomres::CohomologySpace h2b(rb, z, 2);
    cohomres::CohomologySpace h2s(rs, z, 2);
    cohomres::CohomologySpace h4s(rs, z, 4);
    cohomres::DiagonalApprox dgb = cohomres::aw_diagonal(rb, 4);
    cohomres::DiagonalApprox dgs = cohomres::diagonal_approx(rs, 4);
    glattice::LatticeMap pairing{glattice::tensor_lattice(z, z), z, IntMatrix::identity(1)};

    // the transported generators must generate H^2 of the small resolution
    const auto& gens = h2b.generators();
    IntMatrix span(static_cast<int>(gens.size()) + h2s.rel_hnf().rows(), h2s.kernel().rows());
    std::vector<std::vector<Int>> pulled;
    for (size_t i = 0; i < gens.size(); ++i) {
      pulled.push_back(cm.pull(2, gens[i].rep, z));
      std::vector<Int> c = h2s.coords_of(pulled.back());
      for (int j = 0; j < span.cols(); ++j) span(static_cast<int>(i), j) = c[j];
    }
    for (int r = 0; r < h2s.rel_hnf().rows(); ++r)
      for (int j = 0; j < span.cols(); ++j)
        span(static_cast<int>(gens.size()) + r, j) = h2s.rel_hnf()(r, j);
    if (!zlinalg::cokernel(span).is_trivial()) {
      why = label(fs) + ": transported classes do not generate H^2";
      return false;
    }

    for (size_t i = 0; i < gens.size(); ++i)
      for (size_t j = 0; j < gens.size(); ++j) {
        cohomres::CohomClass cup_bar = cohomres::cup(dgb, gens[i], gens[j], pairing);
        std::vector<Int> via_bar = cm.pull(4, cup_bar.rep, z);
        cohomres::CohomClass ci{rs, z, 2, pulled[i]};
        cohomres::CohomClass cj{rs, z, 2, pulled[j]};
        cohomres::CohomClass cup_small = cohomres::cup(dgs, ci, cj, pairing);
        ++cup_pairs;
        if (!h4s.same_class(via_bar, cup_small.rep)) {
          why = label(fs) + ": cup of generators " + std::to_string(i) + "," +
                std::to_string(j) + " differs between resolutions";
          return false;
        }
      }
  }
  why = std::to_string(iso_cells) + " cohomology comparisons, " + std::to_string(cup_pairs) +
        " cup products";
  return true;
}

// ---------------------------------------------------------------------------
// 8. Unramified Brauer groups: (Z/n)^2 gives Z/n for n in {2,3,4,6}, and
//    the H^1(G,T) route agrees with the locally-trivial-classes route on
//    every corpus group.
// ---------------------------------------------------------------------------
bool criterion8(std::string& why) {
  for (int n : {2, 3, 4, 6}) {
    FgAbGroup b = brauer_nr(FinAbGroup({n, n}));
    if (!(b == fin({n}))) {
      why = "(Z/" + std::to_string(n) + ")^2: got " + b.to_string();
      return false;
    }
  }
  for (const auto& fs : corpus8()) {
    FinAbGroup g(fs);
    FgAbGroup a = brauer_nr(g), b = sha2_omega_norm_one(g);
    if (!(a == b)) {
      why = label(fs) + ": H^1 route " + a.to_string() + " vs locally-trivial route " +
            b.to_string();
      return false;
    }
  }
  why = "4 square groups and 8 cross-checks";
  return true;
}

// ---------------------------------------------------------------------------
// 9. The Dec quotient of the flasque kernel agrees with the connecting-map
//    route H^1(G,N)/delta-image for (Z/2)^2, (Z/3)^2, Z/2+Z/4.
// ---------------------------------------------------------------------------
bool criterion9(std::string& why) {
  for (const std::vector<int>& fs :
       std::vector<std::vector<int>>{{2, 2}, {3, 3}, {2, 4}}) {
    auto gp = abelian(fs);
    glattice::FlasqueResolutionData f = glattice::flasque_resolution(gp);
    glattice::NSequenceData nd = glattice::n_sequence(f);
    FgAbGroup lhs = decomp::s2_mod_dec(f.that);
    FgAbGroup rhs = decomp::h1n_mod_delta(nd);
    if (!(lhs == rhs)) {
      why = label(fs) + ": Dec route " + lhs.to_string() + " vs connecting route " +
            rhs.to_string();
      return false;
    }
  }
  why = "3 groups, both routes equal";
  return true;
}

// ---------------------------------------------------------------------------
// 10. Dec finite generation is lossless: 200 randomized quadratic-trace
//     membership trials per corpus group (coefficients bounded by 3), all
//     landing inside the generated subgroup — exact lattice membership.
// ---------------------------------------------------------------------------
bool criterion10(std::string& why) {
  std::mt19937 rng(20240819);
  std::uniform_int_distribution<int> coeff(-3, 3);
  int trials_total = 0;
  for (const auto& fs : corpus8()) {
    auto gp = abelian(fs);
    glattice::GLattice that = glattice::flasque_resolution(gp).that;
    DecSpan dec(that);
    std::vector<Subgroup> subs = groups::subgroups(*gp);
    std::vector<IntMatrix> bases;
    for (const Subgroup& h : subs) bases.push_back(that.invariants_basis(h));
    for (int t = 0; t < 200; ++t) {
      const Subgroup& h = subs[t % subs.size()];
      const IntMatrix& basis = bases[t % subs.size()];
      std::vector<Int> x(that.rank(), 0);
      for (int i = 0; i < basis.rows(); ++i) {
        int c = coeff(rng);
        if (c == 0) continue;
        for (int j = 0; j < that.rank(); ++j) x[j] += c * basis(i, j);
      }
      ++trials_total;
      if (!dec.contains(decomp::qtr(that, h, x))) {
        why = label(fs) + ": a quadratic trace escaped the Dec subgroup (trial " +
              std::to_string(t) + ")";
        return false;
      }
    }
  }
  why = std::to_string(trials_total) + " membership trials";
  return true;
}

}  // namespace

int main() {
  struct Criterion {
    int num;
    std::string name;
    std::function<bool(std::string&)> fn;
  };
  const std::vector<Criterion> criteria = {
      {1, "cup cokernel equals closed form on the full corpus", criterion1},
      {2, "worked examples reproduce", criterion2},
      {3, "odd parts agree across disjoint code paths", criterion3},
      {4, "symmetric/exterior square cohomology killed by 2", criterion4},
      {5, "Dec quotient vanishes on permutation lattices", criterion5},
      {6, "structural sequences exact, kernel flasque", criterion6},
      {7, "small and bar resolutions agree, cups included", criterion7},
      {8, "unramified Brauer groups and route agreement", criterion8},
      {9, "connecting-map route matches the Dec route", criterion9},
      {10, "quadratic-trace membership is lossless", criterion10},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    std::string why;
    bool ok = false;
    auto t0 = std::chrono::steady_clock::now();
    try {
      ok = c.fn(why);
    } catch (const std::exception& e) {
      ok = false;
      why = std::string("exception: ") + e.what();
    }
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::ostringstream line;
    line << (ok ? "PASS" : "FAIL") << "  criterion " << c.num << ": " << c.name << " ["
         << why << "] (" << std::fixed;
    line.precision(1);
    line << secs << "s)";
    std::cout << line.str() << std::endl;
    if (!ok) ++failures;
  }
  if (failures) {
    std::cout << failures << " of " << criteria.size() << " criteria FAILED" << std::endl;
    return 1;
  }
  std::cout << "all " << criteria.size() << " criteria passed" << std::endl;
  return 0;
}
