#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include "teamsem/properties.hpp"
#include "teamsem/team.hpp"
#include "teamsem/value.hpp"

using namespace teamsem;

namespace {

Value V(const std::string& tok) { return intern_value(tok); }

Row row(std::initializer_list<const char*> toks) {
  Row r;
  for (const char* t : toks) r.push_back(V(t));
  return r;
}

std::vector<Variable> two_site_domain(bool hidden) {
  std::vector<Variable> dom = {{"x0", Role::Measurement},
                               {"x1", Role::Measurement},
                               {"y0", Role::Outcome},
                               {"y1", Role::Outcome}};
  if (hidden) dom.push_back({"z0", Role::Hidden});
  return dom;
}

Team epr() {
  return Team::from_rows(two_site_domain(false),
                         {row({"0", "1", "0", "1"}), row({"0", "1", "1", "0"})});
}

// Deterministic local team: y_i = x_i for every measurement combination.
Team copy_team() {
  std::vector<Row> rows;
  for (const char* a : {"0", "1"})
    for (const char* b : {"0", "1"}) rows.push_back({V(a), V(b), V(a), V(b)});
  return Team::from_rows(two_site_domain(false), rows);
}

}  // namespace

TEST_CASE("property names round-trip") {
  for (PropertyId p : {PropertyId::WD, PropertyId::SD, PropertyId::NS, PropertyId::SV,
                       PropertyId::ZI, PropertyId::PI, PropertyId::OI, PropertyId::ML,
                       PropertyId::LOCAL}) {
    auto back = property_from_string(to_string(p));
    REQUIRE(back.has_value());
    CHECK(*back == p);
  }
  // Identifiers are uppercase only.
  CHECK_FALSE(property_from_string("local").has_value());
  CHECK_FALSE(property_from_string("nope").has_value());
}

TEST_CASE("role inference groups by declared role and pairs sites in order") {
  auto roles = TeamRoles::infer(two_site_domain(true));
  CHECK(roles.x == std::vector<std::string>{"x0", "x1"});
  CHECK(roles.y == std::vector<std::string>{"y0", "y1"});
  CHECK(roles.z == std::vector<std::string>{"z0"});
  CHECK(roles.sites() == 2);
}

TEST_CASE("defining formulas print as documented") {
  auto roles = TeamRoles::infer(two_site_domain(true));
  CHECK(print_formula(property_formula(PropertyId::SV, roles)) == "=(z0)");
  CHECK(print_formula(property_formula(PropertyId::ZI, roles)) == "z0 _||_ x0 x1");
  CHECK(print_formula(property_formula(PropertyId::SD, roles)) ==
        "=(x0 z0 ; y0) /\\ =(x1 z0 ; y1)");
  CHECK(print_formula(property_formula(PropertyId::WD, roles)) ==
        "=(x0 x1 z0 ; y0) /\\ =(x0 x1 z0 ; y1)");
  CHECK(print_formula(property_formula(PropertyId::PI, roles)) ==
        "x1 _||_ y0 | x0 z0 /\\ x0 _||_ y1 | x1 z0");
  CHECK(print_formula(property_formula(PropertyId::OI, roles)) ==
        "y0 _||_ y1 | x0 x1 z0 /\\ y1 _||_ y0 | x0 x1 z0");

  // Without hidden variables the z part drops out.
  auto emp = TeamRoles::infer(two_site_domain(false));
  CHECK(print_formula(property_formula(PropertyId::NS, emp)) ==
        "x1 _||_ y0 | x0 /\\ x0 _||_ y1 | x1");
  CHECK(print_formula(property_formula(PropertyId::SV, emp)) == "=()");
}

TEST_CASE("independence_atoms flattens property conjunctions") {
  auto roles = TeamRoles::infer(two_site_domain(true));
  auto atoms = independence_atoms(property_formula(PropertyId::PI, roles));
  REQUIRE(atoms.size() == 2);
  CHECK(atoms[0].left == std::vector<std::string>{"x1"});
  CHECK(atoms[0].cond == std::vector<std::string>{"x0", "z0"});
  CHECK(atoms[0].right == std::vector<std::string>{"y0"});
}

TEST_CASE("the anticorrelated team signals nothing but is not local") {
  Team t = epr();
  CHECK(check_property(t, PropertyId::NS));
  CHECK_FALSE(check_property(t, PropertyId::OI));
  CHECK_FALSE(check_property(t, PropertyId::LOCAL));
  CHECK_FALSE(locality_holds(t));
  // One measurement tuple means WD reduces to functional determination.
  CHECK_FALSE(check_property(t, PropertyId::WD));
}

TEST_CASE("a deterministic product team has every locality property") {
  Team t = copy_team();
  for (PropertyId p : {PropertyId::WD, PropertyId::SD, PropertyId::NS, PropertyId::PI,
                       PropertyId::OI, PropertyId::LOCAL})
    CHECK(check_property(t, p));
  CHECK(locality_holds(t));
  // No hidden column: SV and ZI hold vacuously, ML needs the full
  // measurement rectangle, which the team has.
  CHECK(check_property(t, PropertyId::SV));
  CHECK(check_property(t, PropertyId::ZI));
  CHECK(check_property(t, PropertyId::ML));
}

TEST_CASE("hidden-variable properties read the z columns") {
  auto dom = two_site_domain(true);
  // Two hidden states, each deterministically fixing both outcomes.
  Team good = Team::from_rows(dom, {row({"0", "1", "0", "1", "a"}),
                                    row({"0", "1", "1", "0", "b"})});
  CHECK(check_property(good, PropertyId::SD));
  CHECK(check_property(good, PropertyId::WD));
  CHECK(check_property(good, PropertyId::OI));
  CHECK(check_property(good, PropertyId::PI));
  CHECK(check_property(good, PropertyId::ZI));  // single measurement tuple
  CHECK_FALSE(check_property(good, PropertyId::SV));

  Team sv = Team::from_rows(dom, {row({"0", "1", "0", "1", "a"}),
                                  row({"0", "1", "1", "0", "a"})});
  CHECK(check_property(sv, PropertyId::SV));
  CHECK_FALSE(check_property(sv, PropertyId::SD));
}

TEST_CASE("locality coincides with parameter plus outcome independence") {
  // Exhaustive cross-check on small nondeterministically generated teams.
  std::mt19937 rng(20260814);
  auto dom = two_site_domain(true);
  int agree = 0, locals = 0;
  for (int trial = 0; trial < 400; ++trial) {
    std::vector<Row> rows;
    int n = 1 + static_cast<int>(rng() % 5);
    for (int i = 0; i < n; ++i) {
      auto b = [&] { return V(rng() % 2 ? "1" : "0"); };
      rows.push_back({b(), b(), b(), b(), V(rng() % 2 ? "g" : "h")});
    }
    Team t = Team::from_rows(dom, rows);
    bool sem = locality_holds(t);
    bool atoms = check_property(t, PropertyId::PI) && check_property(t, PropertyId::OI);
    CHECK(sem == atoms);
    agree += (sem == atoms);
    locals += sem;
  }
  CHECK(agree == 400);
  CHECK(locals > 0);       // the sample hits both sides of the split
  CHECK(locals < 400);
}

TEST_CASE("probabilistic properties use exact mass arithmetic") {
  auto dom = two_site_domain(false);
  ProbTeam anti = ProbTeam::from_weighted_rows(
      dom, {row({"0", "1", "0", "1"}), row({"0", "1", "1", "0"})},
      {Rat(1, 2), Rat(1, 2)});
  CHECK(check_property(anti, PropertyId::NS));
  CHECK_FALSE(check_property(anti, PropertyId::OI));
  CHECK_FALSE(check_property(anti, PropertyId::LOCAL));
  CHECK_FALSE(prob_locality_holds(anti));

  ProbTeam prod = ProbTeam::uniform(copy_team());
  CHECK(check_property(prod, PropertyId::LOCAL));
  CHECK(prob_locality_holds(prod));
}

TEST_CASE("probabilistic locality coincides with its two-atom form") {
  // Random rational-weight teams over a fixed hidden-variable domain.
  std::mt19937 rng(7);
  auto dom = two_site_domain(true);
  int locals = 0;
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Row> rows;
    std::vector<Rat> wts;
    int n = 1 + static_cast<int>(rng() % 4);
    long total = 0;
    std::vector<long> raw;
    for (int i = 0; i < n; ++i) {
      auto b = [&] { return V(rng() % 2 ? "1" : "0"); };
      rows.push_back({b(), b(), b(), b(), V("g")});
      long w = 1 + static_cast<long>(rng() % 6);
      raw.push_back(w);
      total += w;
    }
    // Rows can repeat; from_weighted_rows merges them.
    for (long w : raw) wts.emplace_back(w, total);
    ProbTeam pt = ProbTeam::from_weighted_rows(dom, rows, wts);
    bool sem = prob_locality_holds(pt);
    bool atoms = check_property(pt, PropertyId::PI) && check_property(pt, PropertyId::OI);
    CHECK(sem == atoms);
    locals += sem;
  }
  CHECK(locals > 0);
  CHECK(locals < 300);
}

TEST_CASE("mutual independence matches the product characterization") {
  auto dom = two_site_domain(false);
  ProbTeam prod = ProbTeam::uniform(copy_team());
  CHECK(mutual_indep_product_holds(prod, {{"y0"}, {"y1"}}, {"x0", "x1"}));

  ProbTeam anti = ProbTeam::from_weighted_rows(
      dom, {row({"0", "1", "0", "1"}), row({"0", "1", "1", "0"})},
      {Rat(1, 2), Rat(1, 2)});
  CHECK_FALSE(mutual_indep_product_holds(anti, {{"y0"}, {"y1"}}, {"x0", "x1"}));

  // Three-way check: pairwise independent XOR masses are not mutually
  // independent, and the product form detects that.
  std::vector<Variable> abc = {{"a", Role::Plain}, {"b", Role::Plain}, {"c", Role::Plain}};
  std::vector<Row> xor_rows = {row({"0", "0", "0"}), row({"0", "1", "1"}),
                               row({"1", "0", "1"}), row({"1", "1", "0"})};
  ProbTeam xo = ProbTeam::from_weighted_rows(abc, xor_rows, std::vector<Rat>(4, Rat(1, 4)));
  CHECK(prob_indep_atom_holds(xo, {"a"}, {}, {"b"}));
  CHECK(prob_indep_atom_holds(xo, {"a"}, {}, {"c"}));
  CHECK_FALSE(mutual_indep_product_holds(xo, {{"a"}, {"b"}, {"c"}}, {}));

  ProbTeam cube = ProbTeam::from_weighted_rows(
      abc,
      {row({"0", "0", "0"}), row({"0", "0", "1"}), row({"0", "1", "0"}),
       row({"0", "1", "1"}), row({"1", "0", "0"}), row({"1", "0", "1"}),
       row({"1", "1", "0"}), row({"1", "1", "1"})},
      std::vector<Rat>(8, Rat(1, 8)));
  CHECK(mutual_indep_product_holds(cube, {{"a"}, {"b"}, {"c"}}, {}));
}

TEST_CASE("the walkthrough team signals but has independent outcomes") {
  // Changing the other site's setting changes which outcomes can occur
  // (y0 = 5 never pairs with x1 = 0), so no-signalling fails in both
  // semantics. Outcome independence holds conditionally on both settings.
  Team t = Team::from_rows(
      two_site_domain(false),
      {row({"0", "0", "1", "1"}), row({"0", "1", "1", "2"}), row({"0", "1", "1", "7"}),
       row({"0", "1", "5", "2"}), row({"0", "1", "5", "7"}), row({"1", "1", "5", "1"})});
  CHECK_FALSE(check_property(t, PropertyId::NS));
  CHECK(check_property(t, PropertyId::OI));
  CHECK_FALSE(check_property(ProbTeam::uniform(t), PropertyId::NS));
  CHECK(check_property(ProbTeam::uniform(t), PropertyId::OI));
}
