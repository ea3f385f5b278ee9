#include <catch2/catch_amalgamated.hpp>

#include <h3nr/h3nr.hpp>

#include <numeric>

using namespace h3nr;
using groups::FinAbGroup;
using zlinalg::FgAbGroup;
using zlinalg::Int;

namespace {

FgAbGroup fin(std::vector<long long> torsion) {
  return FgAbGroup::from_parts(0, std::vector<Int>(torsion.begin(), torsion.end()));
}

}  // namespace

TEST_CASE("closed form of the lattice summand") {
  // fewer than three invariant factors: every exponent d_i vanishes
  CHECK(closed_form_coker(FinAbGroup({7})).is_trivial());
  CHECK(closed_form_coker(FinAbGroup({2, 4})).is_trivial());
  CHECK(closed_form_coker(FinAbGroup({6, 6})).is_trivial());

  // three factors: d_1 = 1, the rest vanish
  CHECK(closed_form_coker(FinAbGroup({3, 3, 3})) == fin({3}));
  CHECK(closed_form_coker(FinAbGroup({2, 2, 2})) == fin({2}));
  CHECK(closed_form_coker(FinAbGroup({2, 4, 4})) == fin({2}));

  // four factors: d_1 = 3, d_2 = 1
  CHECK(closed_form_coker(FinAbGroup({2, 2, 4, 4})) == fin({2, 2, 2, 2}));
  CHECK(closed_form_coker(FinAbGroup({3, 3, 9, 9})) == fin({3, 3, 3, 3}));

  // five equal factors: d = (6, 3, 1, 0, 0)
  CHECK(closed_form_coker(FinAbGroup({2, 2, 2, 2, 2})) == fin({2, 2, 2, 2, 2, 2, 2, 2, 2, 2}));
}

TEST_CASE("canonical invariant factors ignore input ordering") {
  FinAbGroup a({4, 2}), b({2, 4});
  CHECK(canonical_factors(a) == canonical_factors(b));
  CHECK(canonical_factors(a) == std::vector<Int>{2, 4});
  CHECK(canonical_factors(FinAbGroup({2, 3})) == std::vector<Int>{6});
  CHECK(closed_form_coker(a) == closed_form_coker(b));

  H3Report ra = unramified_h3(a), rb = unramified_h3(b);
  CHECK(ra.group_factors == rb.group_factors);
  CHECK(ra.lattice == rb.lattice);
}

TEST_CASE("worked example: bicyclic (3,3) with a degree-9 place") {
  classfield::LocalData data;
  data.n = 9;
  data.places = {{"p1", 9}, {"p2", 3}, {"p3", 1}};
  H3Report rep = unramified_h3(FinAbGroup({3, 3}), data);

  CHECK(rep.source == ArithmeticSource::local_data);
  REQUIRE(rep.arithmetic.has_value());
  CHECK(rep.arithmetic->is_trivial());  // 9 / lcm(9,3,1) = 1
  CHECK(rep.lattice.is_trivial());      // two invariant factors
  REQUIRE(rep.full.has_value());
  CHECK(rep.full->is_trivial());
  CHECK(rep.two_part_status == "trivial");
  REQUIRE(rep.odd_parts.size() == 1);
  CHECK(rep.odd_parts[0].first == 3);
  CHECK(rep.odd_parts[0].second.is_trivial());
}

TEST_CASE("worked example: bicyclic (3,3) with local degrees at most 3") {
  classfield::LocalData data;
  data.n = 9;
  data.places = {{"p1", 3}, {"p2", 3}, {"p3", 1}};
  H3Report rep = unramified_h3(FinAbGroup({3, 3}), data);

  REQUIRE(rep.arithmetic.has_value());
  CHECK(*rep.arithmetic == fin({3}));  // 9 / lcm(3,3,1) = 3
  CHECK(rep.lattice.is_trivial());
  REQUIRE(rep.full.has_value());
  CHECK(*rep.full == fin({3}));
}

TEST_CASE("worked example: tricyclic (3,3,3) with a degree-9 place") {
  classfield::LocalData data;
  data.n = 27;
  data.places = {{"p1", 9}, {"p2", 3}, {"p3", 9}, {"p4", 1}};
  H3Report rep = unramified_h3(FinAbGroup({3, 3, 3}), data);

  REQUIRE(rep.arithmetic.has_value());
  CHECK(*rep.arithmetic == fin({3}));  // 27 / lcm = 27/9
  CHECK(rep.lattice == fin({3}));
  REQUIRE(rep.full.has_value());
  CHECK(*rep.full == fin({3, 3}));
  REQUIRE(rep.odd_parts.size() == 1);
  CHECK(rep.odd_parts[0].first == 3);
  CHECK(rep.odd_parts[0].second == fin({3, 3}));
}

TEST_CASE("supplied arithmetic channel matches the local-data channel") {
  classfield::LocalData data;
  data.n = 27;
  data.places = {{"p1", 9}, {"p2", 3}};
  H3Report via_local = unramified_h3(FinAbGroup({3, 3, 3}), data);
  H3Report via_group = unramified_h3(FinAbGroup({3, 3, 3}), fin({3}));

  CHECK(via_group.source == ArithmeticSource::supplied);
  CHECK(via_local.arithmetic == via_group.arithmetic);
  CHECK(via_local.lattice == via_group.lattice);
  CHECK(via_local.full == via_group.full);
  CHECK(via_local.odd_parts == via_group.odd_parts);
}

TEST_CASE("omitted arithmetic channel covers the lattice summand only") {
  H3Report rep = unramified_h3(FinAbGroup({3, 3, 3}));
  CHECK(rep.source == ArithmeticSource::omitted);
  CHECK_FALSE(rep.arithmetic.has_value());
  CHECK(rep.lattice == fin({3}));
  REQUIRE(rep.full.has_value());
  CHECK(*rep.full == fin({3}));  // lattice alone; nothing arithmetic added
  REQUIRE(rep.odd_parts.size() == 1);
  CHECK(rep.odd_parts[0].second == fin({3}));
}

TEST_CASE("even order: the 2-part is reported as undetermined") {
  H3Report rep = unramified_h3(FinAbGroup({2, 4}));
  CHECK(rep.two_part_status == "undetermined-by-method");
  CHECK_FALSE(rep.full.has_value());
  CHECK(rep.odd_parts.empty());  // no odd primes divide 8

  classfield::LocalData data;
  data.n = 12;
  data.places = {{"p1", 2}};
  H3Report mixed = unramified_h3(FinAbGroup({2, 6}), data);
  CHECK(mixed.two_part_status == "undetermined-by-method");
  CHECK_FALSE(mixed.full.has_value());
  REQUIRE(mixed.odd_parts.size() == 1);
  CHECK(mixed.odd_parts[0].first == 3);
  // arithmetic Z/6 contributes its 3-part; the lattice summand is trivial
  CHECK(mixed.odd_parts[0].second == fin({3}));
}

TEST_CASE("odd part assembly sums arithmetic and lattice p-parts") {
  H3Report rep = unramified_h3(FinAbGroup({15, 15, 15}), fin({15}));
  CHECK(rep.lattice == fin({15}));
  REQUIRE(rep.full.has_value());
  CHECK(*rep.full == fin({15, 15}));
  REQUIRE(rep.odd_parts.size() == 2);
  CHECK(rep.odd_parts[0].first == 3);
  CHECK(rep.odd_parts[0].second == fin({3, 3}));
  CHECK(rep.odd_parts[1].first == 5);
  CHECK(rep.odd_parts[1].second == fin({5, 5}));
}

TEST_CASE("source labels") {
  CHECK(std::string(to_string(ArithmeticSource::local_data)) == "local-data");
  CHECK(std::string(to_string(ArithmeticSource::supplied)) == "supplied");
  CHECK(std::string(to_string(ArithmeticSource::omitted)) == "omitted");
}

TEST_CASE("invalid inputs are rejected") {
  classfield::LocalData wrong_degree;
  wrong_degree.n = 8;
  wrong_degree.places = {{"p", 8}};
  CHECK_THROWS_AS(unramified_h3(FinAbGroup({3, 3}), wrong_degree), std::invalid_argument);

  classfield::LocalData bad_place;
  bad_place.n = 9;
  bad_place.places = {{"p", 2}};  // 2 does not divide 9
  CHECK_THROWS_AS(unramified_h3(FinAbGroup({3, 3}), bad_place), std::invalid_argument);

  FgAbGroup infinite = FgAbGroup::from_parts(1, {});
  CHECK_THROWS_AS(unramified_h3(FinAbGroup({3, 3}), infinite), std::invalid_argument);
}

TEST_CASE("unramified Brauer group of the norm-one torus") {
  CHECK(brauer_nr(FinAbGroup({2, 2})) == fin({2}));
  CHECK(brauer_nr(FinAbGroup({3, 3})) == fin({3}));
  // cyclic extensions have trivial unramified Brauer group
  CHECK(brauer_nr(FinAbGroup({4})).is_trivial());
  CHECK(brauer_nr(FinAbGroup({6})).is_trivial());

  // two independent routes agree
  for (std::vector<int> fs : {std::vector<int>{2, 2}, {3, 3}, {2, 4}, {8}}) {
    FinAbGroup g(fs);
    CHECK(brauer_nr(g) == sha2_omega_norm_one(g));
  }
}

TEST_CASE("enumeration of abelian groups by invariant factors") {
  using groups::abelian_factor_lists;
  std::vector<std::vector<int>> lists = abelian_factor_lists(8);
  // orders 2..8: one class each for 2,3,5,6,7; two for 4; three for 8
  REQUIRE(lists.size() == 10);
  for (const std::vector<int>& fs : lists) {
    long long order = std::accumulate(fs.begin(), fs.end(), 1LL,
                                      [](long long a, int b) { return a * b; });
    CHECK(order >= 2);
    CHECK(order <= 8);
    for (size_t i = 0; i + 1 < fs.size(); ++i) CHECK(fs[i + 1] % fs[i] == 0);
  }
  CHECK(lists.front() == std::vector<int>{2});
  CHECK(std::count(lists.begin(), lists.end(), std::vector<int>{2, 2}) == 1);
  CHECK(std::count(lists.begin(), lists.end(), std::vector<int>{2, 2, 2}) == 1);

  // restricting the number of invariant factors drops the longer lists
  CHECK(abelian_factor_lists(8, 1).size() == 7);
  CHECK(abelian_factor_lists(8, 2).size() == 9);
  CHECK(abelian_factor_lists(1).empty());
}

TEST_CASE("lemma verification: empty corpus passes vacuously") {
  VerifyReport rep = verify_lemmas(1);
  CHECK(rep.records.empty());
  CHECK(rep.all_pass());
}

TEST_CASE("lemma verification passes through order 9") {
  VerifyReport rep = verify_lemmas(9);
  CHECK(rep.all_pass());
  // ten families and eight groups, some families capped: expect a full grid
  CHECK(rep.records.size() >= 6 * 8);
  for (const VerifyRecord& r : rep.records) {
    INFO(r.lemma << " on " << r.group << ": " << r.detail);
    CHECK(r.pass);
  }
}

TEST_CASE("lemma verification covers the nonabelian table groups") {
  VerifyOptions opt;
  opt.include_table_groups = true;
  VerifyReport rep = verify_lemmas(2, opt);
  CHECK(rep.all_pass());
  int s3 = 0, d4 = 0;
  for (const VerifyRecord& r : rep.records) {
    if (r.group == "S3") ++s3;
    if (r.group == "D4") ++d4;
  }
  CHECK(s3 == 3);
  CHECK(d4 == 3);
}

TEST_CASE("lemma verification records an injected fault honestly") {
  VerifyOptions opt;
  opt.inject_fault = true;
  VerifyReport rep = verify_lemmas(2, opt);
  CHECK_FALSE(rep.all_pass());
  int failures = 0;
  for (const VerifyRecord& r : rep.records) {
    if (r.pass) continue;
    ++failures;
    CHECK(r.lemma == "sym2-kernel-exactness");
    CHECK(r.group.find("fault injected") != std::string::npos);
    CHECK_FALSE(r.detail.empty());
  }
  CHECK(failures == 1);
}
