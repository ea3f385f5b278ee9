// Command-line interface: unramified cohomology of norm-one tori.
//
// Every subcommand prints one machine-readable JSON document to stdout;
// that JSON (field names and order) is the stable contract.  Cosmetic
// human-readable remarks and progress lines go to stderr.  Exit codes:
// 0 = success / all checks pass, 1 = a verification failure, 2 = invalid
// input (bad flags, malformed JSON, domain errors).

#include <CLI11.hpp>
#include <json.hpp>

#include <h3nr/h3nr.hpp>

#include <iostream>
#include <string>
#include <vector>

using json = nlohmann::ordered_json;
using h3nr::zlinalg::FgAbGroup;
using h3nr::zlinalg::Int;

namespace {

// invariant factors as a JSON array of integers ([] = trivial group)
json factors_json(const FgAbGroup& g) {
  if (!g.is_finite()) throw std::invalid_argument("expected a finite group");
  json a = json::array();
  for (const Int& t : g.torsion()) a.push_back(static_cast<long long>(t));
  return a;
}

json factors_json(const std::vector<Int>& fs) {
  json a = json::array();
  for (const Int& t : fs) a.push_back(static_cast<long long>(t));
  return a;
}

h3nr::groups::FinAbGroup parse_group(const std::vector<int>& factors) {
  if (factors.empty()) throw std::invalid_argument("--group needs at least one cyclic factor");
  for (int f : factors)
    if (f < 1) throw std::invalid_argument("cyclic factors must be positive");
  return h3nr::groups::FinAbGroup(factors);
}

std::shared_ptr<const h3nr::groups::AnyGroup> any_group(const std::vector<int>& factors) {
  return std::make_shared<const h3nr::groups::AnyGroup>(
      h3nr::groups::AnyGroup::abelian(factors));
}

// {"n": 9, "local_degrees": [3,3,1]}; an entry may also be an object
// {"degree": 3, "label": "p7"} when a place should carry a name
h3nr::classfield::LocalData parse_local(const std::string& text) {
  json j = json::parse(text);
  if (!j.is_object() || !j.contains("n"))
    throw std::invalid_argument("local data must be an object with field \"n\"");
  h3nr::classfield::LocalData data;
  data.n = Int(j.at("n").get<long long>());
  int counter = 0;
  for (const json& entry : j.value("local_degrees", json::array())) {
    h3nr::classfield::LocalPlace place;
    ++counter;
    if (entry.is_object()) {
      place.degree = Int(entry.at("degree").get<long long>());
      place.label = entry.value("label", "v" + std::to_string(counter));
    } else {
      place.degree = Int(entry.get<long long>());
      place.label = "v" + std::to_string(counter);
    }
    data.places.push_back(std::move(place));
  }
  data.validate();
  return data;
}

void emit(const json& j) { std::cout << j.dump() << "\n"; }

std::string group_name(const h3nr::groups::FinAbGroup& g) {
  return FgAbGroup::from_parts(0, h3nr::canonical_factors(g)).to_string();
}

int run(int argc, char** argv) {
  CLI::App app{"unramified degree-3 cohomology of norm-one tori of abelian extensions"};
  app.require_subcommand(1);

  std::vector<int> group_factors;
  std::string local_text;
  std::vector<int> h3_factors;
  std::string coeff = "norm-one";
  int degree = 0;
  int max_order = 9;
  bool include_tables = false;
  bool quiet = false;

  CLI::App* cup = app.add_subcommand(
      "cup-coker", "cokernel of the cup product H^2 x H^2 -> H^4 (lattice summand)");
  cup->add_option("--group", group_factors, "cyclic factors, e.g. 3,3,3")
      ->required()
      ->delimiter(',');

  CLI::App* h3 = app.add_subcommand(
      "h3nr", "assemble the unramified H^3 report for a norm-one torus");
  h3->add_option("--group", group_factors, "Galois group as cyclic factors, e.g. 3,3")
      ->required()
      ->delimiter(',');
  CLI::Option* lopt = h3->add_option(
      "--local", local_text, R"(local degrees as JSON, e.g. {"n":9,"local_degrees":[3,3]})");
  CLI::Option* hopt =
      h3->add_option("--h3", h3_factors, "H^3(G,K*) supplied directly as cyclic factors")
          ->delimiter(',');
  lopt->excludes(hopt);

  CLI::App* coh = app.add_subcommand("cohomology", "H^i(G, lattice) for the standard lattices");
  coh->add_option("--group", group_factors, "cyclic factors, e.g. 2,4")
      ->required()
      ->delimiter(',');
  coh->add_option("--coeff", coeff, "norm-one | regular | flasque-T | sym2-T")
      ->check(CLI::IsMember({"norm-one", "regular", "flasque-T", "sym2-T"}))
      ->capture_default_str();
  coh->add_option("--degree", degree, "cohomological degree")
      ->check(CLI::Range(0, 4))
      ->capture_default_str();

  CLI::App* dec = app.add_subcommand(
      "dec", "invariant symmetric square of the flasque kernel modulo decomposable classes");
  dec->add_option("--group", group_factors, "cyclic factors, e.g. 3,3")
      ->required()
      ->delimiter(',');

  CLI::App* verify = app.add_subcommand(
      "verify", "recompute the supporting structure theorems over a corpus of groups");
  verify->add_option("--max-order", max_order, "largest group order in the corpus")
      ->check(CLI::Range(1, 64))
      ->capture_default_str();
  verify->add_flag("--include-table-groups", include_tables,
                   "also run the nonabelian table groups S3 and D4");
  verify->add_flag("--quiet", quiet, "suppress per-cell progress lines on stderr");
  bool inject_fault = false;
  verify->add_flag("--inject-fault", inject_fault,
                   "negative control: corrupt one differential and expect a failure record");

  CLI::App* brauer = app.add_subcommand(
      "brauer", "unramified Brauer group of the same torus, two routes cross-checked");

  brauer->add_option("--group", group_factors, "cyclic factors, e.g. 4,4")
      ->required()
      ->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);   // prints help text or the parse diagnostic
    if (code == 0) return 0;  // --help / --version are successes
    std::cout << json{{"error", e.what()}}.dump() << "\n";
    return 2;
  }

  if (cup->parsed()) {
    h3nr::groups::FinAbGroup g = parse_group(group_factors);
    FgAbGroup out = h3nr::cohomres::cup_coker_2_2_4(any_group(group_factors));
    json j;
    j["invariant_factors"] = factors_json(out);
    emit(j);
    std::cerr << "lattice summand for " << group_name(g) << ": " << out.to_string() << "\n";
    return 0;
  }

  if (h3->parsed()) {
    h3nr::groups::FinAbGroup g = parse_group(group_factors);
    h3nr::H3Report rep;
    if (*lopt)
      rep = h3nr::unramified_h3(g, parse_local(local_text));
    else if (*hopt)
      rep = h3nr::unramified_h3(
          g, FgAbGroup::from_parts(0, std::vector<Int>(h3_factors.begin(), h3_factors.end())));
    else
      rep = h3nr::unramified_h3(g);

    json j;
    j["group"] = factors_json(rep.group_factors);
    j["arithmetic_source"] = h3nr::to_string(rep.source);
    j["arithmetic"] = rep.arithmetic ? factors_json(*rep.arithmetic) : json(nullptr);
    j["lattice"] = factors_json(rep.lattice);
    json parts = json::array();
    for (const auto& [p, part] : rep.odd_parts) {
      json e;
      e["p"] = static_cast<long long>(p);
      e["invariant_factors"] = factors_json(part);
      parts.push_back(std::move(e));
    }
    j["odd_parts"] = std::move(parts);
    j["full"] = rep.full ? factors_json(*rep.full) : json(nullptr);
    j["two_part_status"] = rep.two_part_status;
    emit(j);

    std::cerr << "G = " << group_name(g) << ", arithmetic channel: "
              << h3nr::to_string(rep.source) << "\n";
    if (rep.full)
      std::cerr << "unramified H^3 = " << rep.full->to_string() << "\n";
    else
      std::cerr << "odd parts reported; the 2-part is " << rep.two_part_status << "\n";
    return 0;
  }

  if (coh->parsed()) {
    auto gp = any_group(group_factors);
    h3nr::glattice::GLattice lat = [&] {
      if (coeff == "norm-one") return h3nr::glattice::norm_one_lattice(gp);
      if (coeff == "regular") return h3nr::glattice::regular_lattice(gp);
      h3nr::glattice::FlasqueResolutionData f = h3nr::glattice::flasque_resolution(gp);
      if (coeff == "flasque-T") return f.that;
      return h3nr::glattice::sym2_lattice(f.that);
    }();
    h3nr::cohomres::Resolution r =
        h3nr::cohomres::small_resolution(gp, std::max(degree, 1));
    FgAbGroup out = h3nr::cohomres::cohomology_group(r, lat, degree);
    json j;
    j["group"] = factors_json(h3nr::canonical_factors(parse_group(group_factors)));
    j["coefficients"] = coeff;
    j["degree"] = degree;
    j["free_rank"] = out.free_rank();
    j["invariant_factors"] = factors_json(FgAbGroup::from_parts(0, out.torsion()));
    emit(j);
    std::cerr << "H^" << degree << " = " << out.to_string() << "\n";
    return 0;
  }

  if (dec->parsed()) {
    parse_group(group_factors);
    h3nr::glattice::FlasqueResolutionData f =
        h3nr::glattice::flasque_resolution(any_group(group_factors));
    FgAbGroup out = h3nr::decomp::s2_mod_dec(f.that);
    json j;
    j["invariant_factors"] = factors_json(out);
    emit(j);
    std::cerr << "S^2(T)^G / Dec = " << out.to_string() << "\n";
    return 0;
  }

  if (verify->parsed()) {
    h3nr::VerifyOptions opt;
    opt.include_table_groups = include_tables;
    opt.inject_fault = inject_fault;
    if (!quiet) opt.progress = &std::cerr;
    h3nr::VerifyReport rep = h3nr::verify_lemmas(max_order, opt);
    json records = json::array();
    for (const h3nr::VerifyRecord& r : rep.records) {
      json e;
      e["lemma"] = r.lemma;
      e["group"] = r.group;
      e["pass"] = r.pass;
      e["detail"] = r.detail;
      records.push_back(std::move(e));
    }
    json j;
    j["max_order"] = max_order;
    j["include_table_groups"] = include_tables;
    j["records"] = std::move(records);
    j["all_pass"] = rep.all_pass();
    emit(j);
    std::cerr << rep.records.size() << " cells, "
              << (rep.all_pass() ? "all pass" : "FAILURES PRESENT") << "\n";
    return rep.all_pass() ? 0 : 1;
  }

  if (brauer->parsed()) {
    h3nr::groups::FinAbGroup g = parse_group(group_factors);
    FgAbGroup a = h3nr::brauer_nr(g);
    FgAbGroup b = h3nr::sha2_omega_norm_one(g);
    json j;
    j["invariant_factors"] = factors_json(a);
    j["routes_agree"] = (a == b);
    emit(j);
    std::cerr << "unramified Brauer group = " << a.to_string()
              << (a == b ? " (both routes agree)" : " BUT the locally-trivial route gives " +
                                                        b.to_string())
              << "\n";
    return a == b ? 0 : 1;
  }

  return 2;  // unreachable: a subcommand is required
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    std::cout << json{{"error", e.what()}}.dump() << "\n";
    return 2;
  }
}
