// H³(G, K*) of a finite abelian extension of global or local fields.
//
// For a degree-n abelian extension K/F of global fields, class field
// theory identifies H³(G, K*) with the cokernel of the sum of local
// invariant maps
//     ⊕_p (1/n_p)ℤ/ℤ  ⟶  (1/n)ℤ/ℤ,
// where n_p is the order of the decomposition group at a place above p.
// Only those orders enter: the image of the p-summand is exactly the
// subgroup generated by n/n_p.  The extension's local behavior is
// therefore captured by a finite list of local degrees; places not
// listed are declared to have trivial decomposition group and
// contribute nothing.
//
// For local fields, H³(G, K*) = 0 outright (Neukirch–Schmidt–Wingberg,
// Cohomology of Number Fields, Cor. 7.2.2); the constant function is
// provided so pipelines can treat both cases uniformly.
//
// This header does not factor primes in number fields: the local data
// is caller input, matching how worked examples present extensions.

#pragma once

#include <h3nr/zlinalg.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace h3nr {
namespace classfield {

using zlinalg::FgAbGroup;
using zlinalg::Int;
using zlinalg::IntMatrix;

struct LocalPlace {
  std::string label;  // informational only
  Int degree = 1;     // order of the decomposition group; must divide n
};

struct LocalData {
  Int n = 1;                      // total degree [K:F]
  std::vector<LocalPlace> places;  // finite; omitted places have degree 1

  void validate() const {
    if (n < 1) throw std::invalid_argument("total degree must be positive");
    for (const LocalPlace& p : places) {
      if (p.degree < 1) throw std::invalid_argument("local degree must be positive");
      if (n % p.degree != 0)
        throw std::invalid_argument("local degree " + p.degree.str() +
                                    " does not divide the total degree " + n.str());
    }
  }
};

// H³(G, K*) for a global extension: the cokernel of ⊕_p (1/n_p)ℤ/ℤ →
// (1/n)ℤ/ℤ.  Computed literally as a subquotient — ambient ℤ presents
// (1/n)ℤ/ℤ through the generator 1/n, the denominator stacks the
// relation n with the images n/n_p — rather than through the closed
// form ℤ/(n / lcm n_p), which is kept as an independent test oracle.
inline FgAbGroup h3_units_global(const LocalData& data) {
  data.validate();
  IntMatrix num(1, 1);
  num(0, 0) = 1;
  IntMatrix den(1 + static_cast<int>(data.places.size()), 1);
  den(0, 0) = data.n;
  for (size_t i = 0; i < data.places.size(); ++i)
    den(static_cast<int>(i) + 1, 0) = data.n / data.places[i].degree;
  return zlinalg::subquotient(num, den);
}

// H³(G, K*) for a local extension: always trivial, by the cited theorem
// rather than by computation.
inline FgAbGroup h3_units_local() { return FgAbGroup(); }

}  // namespace classfield
}  // namespace h3nr
