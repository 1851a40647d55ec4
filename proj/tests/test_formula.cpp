#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>
#include <vector>

#include "teamsem/eval.hpp"
#include "teamsem/formula.hpp"
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

Team team2(const char* a, const char* b, std::initializer_list<std::pair<const char*, const char*>> rs) {
  std::vector<Row> rows;
  for (auto [u, v] : rs) rows.push_back(row({u, v}));
  return Team::from_rows({{a, role_from_name(a)}, {b, role_from_name(b)}}, rows);
}

// The six-row team from the walkthrough: outcomes are independent given both
// measurement columns even though they are correlated overall.
Team walkthrough_team() {
  return Team::from_rows(
      {{"x0", Role::Measurement},
       {"x1", Role::Measurement},
       {"y0", Role::Outcome},
       {"y1", Role::Outcome}},
      {row({"0", "0", "1", "1"}), row({"0", "1", "1", "2"}), row({"0", "1", "1", "7"}),
       row({"0", "1", "5", "2"}), row({"0", "1", "5", "7"}), row({"1", "1", "5", "1"})});
}

std::string reprint(const std::string& text) { return print_formula(parse_formula(text)); }

}  // namespace

TEST_CASE("parse and print round-trip the concrete syntax") {
  CHECK(reprint("x = y") == "x = y");
  CHECK(reprint("x != y") == "x != y");
  CHECK(reprint("y0 _||_ y1 | x0 x1") == "y0 _||_ y1 | x0 x1");
  CHECK(reprint("a b _||_ c") == "a b _||_ c");
  CHECK(reprint("=(x ; y)") == "=(x ; y)");
  CHECK(reprint("=(x y; z)") == "=(x y ; z)");
  CHECK(reprint("=(z)") == "=(z)");
  CHECK(reprint("E v. v = x") == "E v. v = x");
  CHECK(reprint("A v. v = x") == "A v. v = x");
  CHECK(reprint("Eh z. =(z)") == "Eh z. =(z)");
  CHECK(reprint("Ah z. =(z)") == "Ah z. =(z)");

  // Second round trips are stable.
  std::string once = reprint("Eh z.(=(z) /\\ y0 _||_ y1 | x0 x1 z)");
  CHECK(reprint(once) == once);
}

TEST_CASE("conjunction binds tighter than splitjunction") {
  FormulaPtr f = parse_formula("x = y /\\ y = z \\/ x != z");
  REQUIRE(f->kind == FormulaKind::Or);
  CHECK(f->lhs->kind == FormulaKind::And);
  CHECK(f->rhs->kind == FormulaKind::Neq);

  FormulaPtr g = parse_formula("x = y /\\ (y = z \\/ x != z)");
  REQUIRE(g->kind == FormulaKind::And);
  CHECK(g->rhs->kind == FormulaKind::Or);
  CHECK(reprint(print_formula(g)) == print_formula(g));
}

TEST_CASE("quantifier body is the tightest unit unless parenthesized") {
  FormulaPtr f = parse_formula("E v. v = x /\\ v = y");
  REQUIRE(f->kind == FormulaKind::And);
  CHECK(f->lhs->kind == FormulaKind::Exists);

  FormulaPtr g = parse_formula("E v.(v = x /\\ v = y)");
  REQUIRE(g->kind == FormulaKind::Exists);
  CHECK(g->body->kind == FormulaKind::And);
}

TEST_CASE("sugar is preserved through printing but stored as independence") {
  FormulaPtr dep = parse_formula("=(x ; y)");
  REQUIRE(dep->kind == FormulaKind::Indep);
  CHECK(dep->left == dep->right);
  CHECK(dep->cond == std::vector<std::string>{"x"});
  CHECK(dep->sugar == Formula::Sugar::Dep);

  FormulaPtr con = parse_formula("=(z)");
  REQUIRE(con->kind == FormulaKind::Indep);
  CHECK(con->left == std::vector<std::string>{"z"});
  CHECK(con->cond.empty());
  CHECK(con->sugar == Formula::Sugar::Const);
}

TEST_CASE("parse errors carry a position") {
  CHECK_THROWS_AS(parse_formula(""), ParseError);
  CHECK_THROWS_AS(parse_formula("x ="), ParseError);
  CHECK_THROWS_AS(parse_formula("_||_ x \\/"), ParseError);
  CHECK_THROWS_AS(parse_formula("(x = y"), ParseError);
  CHECK_THROWS_AS(parse_formula("E . x = y"), ParseError);
  try {
    parse_formula("x = y /\\");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position >= 8);
    CHECK(std::string(e.what()).find("position") != std::string::npos);
  }
}

TEST_CASE("bound variables are renamed apart") {
  FormulaPtr f = parse_formula("(E v. v = x) /\\ (E v. v = y)");
  REQUIRE(f->kind == FormulaKind::And);
  const std::string& v1 = f->lhs->var;
  const std::string& v2 = f->rhs->var;
  CHECK(v1 != v2);

  // A binder clashing with a free occurrence elsewhere moves aside too.
  FormulaPtr g = parse_formula("x = y /\\ (E x. x = y)");
  CHECK(g->rhs->var != "x");
  auto fv = free_variables(g);
  CHECK(std::find(fv.begin(), fv.end(), "x") != fv.end());
}

TEST_CASE("free_variables sees through binders") {
  FormulaPtr f = parse_formula("Eh z.(=(z) /\\ y0 _||_ y1 | x0 x1 z)");
  auto fv = free_variables(f);
  std::vector<std::string> expect = {"x0", "x1", "y0", "y1"};
  for (const auto& name : expect)
    CHECK(std::find(fv.begin(), fv.end(), name) != fv.end());
  CHECK(std::find(fv.begin(), fv.end(), "z") == fv.end());
}

TEST_CASE("weak flatness excludes plain independence atoms only") {
  CHECK(is_weakly_flat(parse_formula("x = y /\\ =(x ; y) \\/ =(z)")));
  CHECK(is_weakly_flat(parse_formula("E v.(v = x /\\ =(v))")));
  CHECK_FALSE(is_weakly_flat(parse_formula("x _||_ y")));
  CHECK_FALSE(is_weakly_flat(parse_formula("E v. v _||_ x")));
}

TEST_CASE("first-order atoms are evaluated row-wise") {
  Team eq = team2("a", "b", {{"0", "0"}, {"1", "1"}});
  Team mixed = team2("a", "b", {{"0", "0"}, {"0", "1"}});
  FormulaPtr f = parse_formula("a = b");
  CHECK(eval_possibilistic(eq, f).verdict == Verdict::True);
  CHECK(eval_possibilistic(mixed, f).verdict == Verdict::False);
  CHECK(eval_possibilistic(mixed, parse_formula("a != b")).verdict == Verdict::False);

  // The empty team satisfies everything, even a contradiction.
  Team empty(std::vector<Variable>{{"a", Role::Plain}, {"b", Role::Plain}});
  CHECK(eval_possibilistic(empty, parse_formula("a != a")).verdict == Verdict::True);
  CHECK(eval_possibilistic(empty, parse_formula("a _||_ b")).verdict == Verdict::True);
}

TEST_CASE("independence atoms compare section rectangles") {
  // Outcomes independent given both measurements.
  Team t = walkthrough_team();
  CHECK(eval_possibilistic(t, parse_formula("y0 _||_ y1 | x0 x1")).verdict == Verdict::True);
  // Anticorrelated outcomes fail even within the single section.
  Team anti = team2("y0", "y1", {{"0", "1"}, {"1", "0"}});
  CHECK(eval_possibilistic(anti, parse_formula("y0 _||_ y1")).verdict == Verdict::False);

  // Mutating one row destroys the rectangle property.
  Team bad = Team::from_rows(t.domain(), [&] {
    auto rows = t.rows();
    rows.pop_back();
    rows.push_back(row({"0", "1", "5", "9"}));
    return rows;
  }());
  CHECK(eval_possibilistic(bad, parse_formula("y0 _||_ y1 | x0 x1")).verdict == Verdict::False);

  CHECK(indep_atom_holds(t, {"y0"}, {"x0", "x1"}, {"y1"}));
  CHECK_FALSE(indep_atom_holds(bad, {"y0"}, {"x0", "x1"}, {"y1"}));
}

TEST_CASE("dependence and constancy atoms") {
  Team fn = team2("x", "y", {{"0", "a"}, {"1", "b"}, {"1", "b"}});
  CHECK(eval_possibilistic(fn, parse_formula("=(x ; y)")).verdict == Verdict::True);
  Team notfn = team2("x", "y", {{"0", "a"}, {"0", "b"}});
  CHECK(eval_possibilistic(notfn, parse_formula("=(x ; y)")).verdict == Verdict::False);

  Team con = team2("x", "y", {{"0", "c"}, {"1", "c"}});
  CHECK(eval_possibilistic(con, parse_formula("=(y)")).verdict == Verdict::True);
  CHECK(eval_possibilistic(con, parse_formula("=(x)")).verdict == Verdict::False);
}

TEST_CASE("splitjunction searches covers of the team") {
  // Neither disjunct holds globally, but the team splits into halves where
  // each does.
  Team t = team2("x", "y", {{"0", "0"}, {"1", "1"}, {"2", "0"}, {"3", "1"}});
  FormulaPtr f = parse_formula("=(y) \\/ =(y)");
  CHECK(eval_possibilistic(t, parse_formula("=(y)")).verdict == Verdict::False);
  CHECK(eval_possibilistic(t, f).verdict == Verdict::True);

  // Three distinct y-values cannot be covered by two constant parts.
  Team t3 = team2("x", "y", {{"0", "0"}, {"1", "1"}, {"2", "2"}});
  CHECK(eval_possibilistic(t3, f).verdict == Verdict::False);
}

TEST_CASE("value quantifiers range over occurring values by default") {
  Team t = team2("x", "y", {{"0", "0"}, {"1", "1"}});
  CHECK(eval_possibilistic(t, parse_formula("E v. v = x")).verdict == Verdict::True);
  CHECK(eval_possibilistic(t, parse_formula("A v. v = x")).verdict == Verdict::False);
  CHECK(eval_possibilistic(t, parse_formula("A v.(v = x \\/ v != x)")).verdict == Verdict::True);

  // An explicit quantifier domain overrides the default.
  EvalContext ctx;
  ctx.quantifier_domain = {V("7")};
  CHECK(eval_possibilistic(t, parse_formula("E v. v = x"), ctx).verdict == Verdict::False);
}

TEST_CASE("sort quantifiers grow a fresh sort up to k_max") {
  // A bijection with a three-valued column needs a sort of size three.
  Team t = Team::from_rows({{"x", Role::Measurement}},
                           {row({"0"}), row({"1"}), row({"2"})});
  FormulaPtr bij = parse_formula("Eh z.(=(x ; z) /\\ =(z ; x))");

  EvalContext small;
  small.k_max = 2;
  EvalResult r2 = eval_possibilistic(t, bij, small);
  CHECK(r2.verdict == Verdict::False);
  CHECK(r2.bounded);  // only says "no witness up to size 2"

  EvalContext big;
  big.k_max = 3;
  EvalResult r3 = eval_possibilistic(t, bij, big);
  CHECK(r3.verdict == Verdict::True);

  // The universal sort quantifier must survive every fresh sort.
  CHECK(eval_possibilistic(t, parse_formula("Ah z. =(x ; x)")).verdict == Verdict::True);
  EvalResult ra = eval_possibilistic(t, parse_formula("Ah z. =(z)"));
  CHECK(ra.verdict == Verdict::False);  // fails already at sort size 2
}

TEST_CASE("a constancy atom makes the singleton sort exhaustive") {
  // With =(z) in an existential sort quantifier, larger sorts add nothing,
  // so a failure at size one is a genuine refutation, not a cutoff.
  Team epr = Team::from_rows(
      {{"x0", Role::Measurement},
       {"x1", Role::Measurement},
       {"y0", Role::Outcome},
       {"y1", Role::Outcome}},
      {row({"0", "1", "0", "1"}), row({"0", "1", "1", "0"})});
  FormulaPtr f = parse_formula("Eh z.(=(z) /\\ y0 _||_ y1 | x0 x1 z)");
  EvalContext ctx;
  ctx.k_max = 1;
  EvalResult r = eval_possibilistic(epr, f, ctx);
  CHECK(r.verdict == Verdict::False);
  CHECK_FALSE(r.bounded);
}

TEST_CASE("budget exhaustion reports inconclusive") {
  Team t = walkthrough_team();
  EvalContext ctx;
  ctx.budget = 3;
  EvalResult r = eval_possibilistic(t, parse_formula("=(y0) \\/ =(y1)"), ctx);
  CHECK(r.verdict == Verdict::Inconclusive);
  CHECK(r.note == "budget");
}

TEST_CASE("verdict names") {
  CHECK(to_string(Verdict::True) == "true");
  CHECK(to_string(Verdict::False) == "false");
  CHECK(to_string(Verdict::Inconclusive) == "inconclusive");
}

TEST_CASE("probabilistic atoms hold under exact rational arithmetic") {
  // Uniform lift of the walkthrough team: the conditional independence
  // survives because each section is a product of uniform marginals.
  ProbTeam pt = ProbTeam::uniform(walkthrough_team());
  CHECK(eval_probabilistic(pt, parse_formula("y0 _||_ y1 | x0 x1")).verdict == Verdict::True);

  // A full support rectangle with non-product masses: the possibilistic atom
  // holds on the collapse but the probabilistic one is stricter and fails.
  ProbTeam skew = ProbTeam::from_weighted_rows(
      {{"a", Role::Plain}, {"b", Role::Plain}},
      {row({"0", "0"}), row({"0", "1"}), row({"1", "0"}), row({"1", "1"})},
      {Rat(1, 2), Rat(1, 6), Rat(1, 6), Rat(1, 6)});
  CHECK(eval_possibilistic(skew.collapse(), parse_formula("a _||_ b")).verdict == Verdict::True);
  CHECK(eval_probabilistic(skew, parse_formula("a _||_ b")).verdict == Verdict::False);
  CHECK_FALSE(prob_indep_atom_holds(skew, {"a"}, {}, {"b"}));

  // Product of marginals (1/3, 2/3) x (1/4, 3/4).
  ProbTeam prod = ProbTeam::from_weighted_rows(
      {{"a", Role::Plain}, {"b", Role::Plain}},
      {row({"0", "0"}), row({"0", "1"}), row({"1", "0"}), row({"1", "1"})},
      {Rat(1, 12), Rat(1, 4), Rat(1, 6), Rat(1, 2)});
  CHECK(prob_indep_atom_holds(prod, {"a"}, {}, {"b"}));
}

TEST_CASE("weakly flat formulas are decided on the collapse") {
  ProbTeam pt = ProbTeam::from_weighted_rows(
      {{"x", Role::Plain}, {"y", Role::Plain}},
      {row({"0", "a"}), row({"1", "b"})}, {Rat(1, 100), Rat(99, 100)});
  CHECK(eval_probabilistic(pt, parse_formula("=(x ; y)")).verdict == Verdict::True);
  CHECK(eval_probabilistic(pt, parse_formula("=(y) \\/ =(y)")).verdict == Verdict::True);
  CHECK(eval_probabilistic(pt, parse_formula("=(y)")).verdict == Verdict::False);
  CHECK(eval_probabilistic(pt, parse_formula("E v. v = x")).verdict == Verdict::True);
}

TEST_CASE("unsupported probabilistic fragments throw") {
  ProbTeam pt = ProbTeam::from_weighted_rows(
      {{"x", Role::Plain}, {"y", Role::Plain}},
      {row({"0", "a"}), row({"1", "b"})}, {Rat(1, 2), Rat(1, 2)});
  CHECK_THROWS_AS(eval_probabilistic(pt, parse_formula("x _||_ y \\/ x = y")),
                  UnsupportedFormula);
  CHECK_THROWS_AS(eval_probabilistic(pt, parse_formula("E v. v _||_ x")), UnsupportedFormula);
  CHECK_THROWS_AS(eval_probabilistic(pt, parse_formula("Eh z. z _||_ x")), UnsupportedFormula);
}

TEST_CASE("witness kernels unlock probabilistic existentials") {
  ProbTeam pt = ProbTeam::from_weighted_rows(
      {{"x", Role::Plain}}, {row({"0"}), row({"1"})}, {Rat(1, 3), Rat(2, 3)});
  EvalContext ctx;
  ctx.witness_kernels["v"] = [](const Row&) {
    std::vector<std::pair<Value, Rat>> out;
    out.emplace_back(V("c"), Rat(1));
    return out;
  };
  // A constant witness makes v independent of x.
  CHECK(eval_probabilistic(pt, parse_formula("E v. v _||_ x"), ctx).verdict == Verdict::True);

  // A copying kernel does not.
  ctx.witness_kernels["v"] = [](const Row& r) {
    std::vector<std::pair<Value, Rat>> out;
    out.emplace_back(r[0], Rat(1));
    return out;
  };
  CHECK(eval_probabilistic(pt, parse_formula("E v. v _||_ x"), ctx).verdict == Verdict::False);
}

TEST_CASE("probabilistic universals duplicate through the value domain") {
  ProbTeam pt = ProbTeam::from_weighted_rows(
      {{"x", Role::Plain}}, {row({"0"}), row({"1"})}, {Rat(1, 3), Rat(2, 3)});
  // After duplicating v uniformly over {0,1}, v is independent of x.
  CHECK(eval_probabilistic(pt, parse_formula("A v. v _||_ x")).verdict == Verdict::True);
  CHECK(eval_probabilistic(pt, parse_formula("A v. v = x")).verdict == Verdict::False);
}
