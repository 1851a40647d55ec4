// Acceptance suite for the workbench: sixteen end-to-end checks, one line
// each, nonzero exit when any of them fails. Checks with an explicit time
// budget enforce it; wall time is printed either way.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "teamsem/constructions.hpp"
#include "teamsem/derivation.hpp"
#include "teamsem/eval.hpp"
#include "teamsem/formula.hpp"
#include "teamsem/nogo.hpp"
#include "teamsem/properties.hpp"
#include "teamsem/quantum.hpp"
#include "teamsem/team.hpp"
#include "teamsem/value.hpp"

using namespace teamsem;
using Clock = std::chrono::steady_clock;

namespace {

Value V(const std::string& tok) { return intern_value(tok); }

Row bits(std::initializer_list<int> vals) {
  Row r;
  for (int v : vals) r.push_back(V(std::to_string(v)));
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

Team walkthrough_team() {
  auto r = [](int a, int b, const char* u, const char* v) {
    return Row{V(std::to_string(a)), V(std::to_string(b)), V(u), V(v)};
  };
  return Team::from_rows(two_site_domain(false),
                         {r(0, 0, "1", "1"), r(0, 1, "1", "2"), r(0, 1, "1", "7"),
                          r(0, 1, "5", "2"), r(0, 1, "5", "7"), r(1, 1, "5", "1")});
}

// Product of a random measurement-tuple set and a random hidden set, with a
// nonempty outcome set per section: z-independent by construction.
Team random_zi_team(std::mt19937& rng) {
  std::vector<Row> rows;
  std::vector<std::pair<int, int>> settings;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      if (rng() % 2) settings.emplace_back(a, b);
  if (settings.empty()) settings.emplace_back(0, 0);
  int hidden = 1 + static_cast<int>(rng() % 3);
  for (int g = 0; g < hidden; ++g)
    for (auto [a, b] : settings) {
      int picked = 0;
      for (int u = 0; u < 2; ++u)
        for (int v = 0; v < 2; ++v)
          if (rng() % 3 == 0) {
            rows.push_back(bits({a, b, u, v, g}));
            ++picked;
          }
      if (!picked) rows.push_back(bits({a, b, 0, 0, g}));
    }
  return Team::from_rows(two_site_domain(true), rows);
}

// Deterministic single-site response functions on a shared measurement
// rectangle: satisfies ML, zI and LOCAL by construction.
Team random_local_team(std::mt19937& rng) {
  std::vector<Row> rows;
  int hidden = 1 + static_cast<int>(rng() % 3);
  std::vector<int> m0, m1;
  for (int a = 0; a < 2; ++a) {
    if (rng() % 2) m0.push_back(a);
    if (rng() % 2) m1.push_back(a);
  }
  if (m0.empty()) m0.push_back(0);
  if (m1.empty()) m1.push_back(1);
  for (int g = 0; g < hidden; ++g) {
    int f0[2] = {static_cast<int>(rng() % 3), static_cast<int>(rng() % 3)};
    int f1[2] = {static_cast<int>(rng() % 3), static_cast<int>(rng() % 3)};
    for (int a : m0)
      for (int b : m1) rows.push_back(bits({a, b, f0[a], f1[b], g}));
  }
  return Team::from_rows(two_site_domain(true), rows);
}

// Random positive rational weights over a fixed support, summing to one.
ProbTeam random_weights(const Team& support, std::mt19937& rng) {
  std::vector<long> raw;
  long total = 0;
  for (std::size_t i = 0; i < support.size(); ++i) {
    long w = 1 + static_cast<long>(rng() % 9);
    raw.push_back(w);
    total += w;
  }
  std::vector<Rat> wts;
  for (long w : raw) wts.emplace_back(w, total);
  return ProbTeam::from_weighted_rows(support.domain(), support.rows(), wts);
}

struct Outcome {
  bool pass = false;
  std::string detail;
  double ms = 0.0;
};

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// --------------------------------------------------------------------------

Outcome c1_walkthrough_atom() {
  Team t = walkthrough_team();
  auto start = Clock::now();
  FormulaPtr f = parse_formula("y0 _||_ y1 | x0 x1");
  EvalResult r = eval_possibilistic(t, f);
  double ms = ms_since(start);
  bool ok = r.verdict == Verdict::True && ms < 1.0;
  return {ok, "six-row team satisfies y0 _||_ y1 | x0 x1 exactly", ms};
}

Outcome c2_epr_no_sv_realization() {
  Team t = epr_team();
  auto start = Clock::now();
  FormulaPtr f = parse_formula("Eh z.(=(z) /\\ y0 _||_ y1 | x0 x1 z)");
  EvalContext ctx;
  ctx.k_max = 1;
  EvalResult r = eval_possibilistic(t, f, ctx);
  double ms = ms_since(start);
  bool ok = r.verdict == Verdict::False && !r.bounded && ms < 1000.0;
  return {ok, "anticorrelated team refutes single-valued hidden extensions, "
              "size-one sort exhaustive", ms};
}

Outcome c3_ghz_brute_force() {
  auto start = Clock::now();
  LocalModelResult r = find_local_model(ghz_team_minimal());
  double ms = ms_since(start);
  bool ok = !r.model_exists && r.instructions_total == 64 &&
            r.instructions_consistent == 0 && ms < 1000.0;
  return {ok, "three-site parity team: all 64 instruction sets fail", ms};
}

Outcome c4_hardy_brute_force() {
  auto start = Clock::now();
  LocalModelResult r = find_local_model(hardy_team_minimal());
  double ms = ms_since(start);
  bool ok = !r.model_exists && r.instructions_total == 16 &&
            r.instructions_consistent == 0 && ms < 1000.0;
  return {ok, "one-sided-zero team: all 16 strategy pairs fail", ms};
}

Outcome c5_ks_exhaustive_and_parity() {
  auto start = Clock::now();
  KSSpec spec = KSSpec::standard();
  NoncontextualResult r = verify_no_noncontextual(spec);
  double ms = ms_since(start);
  // Independent parity reasoning: each element in exactly two quadruples
  // forces even total weight, but nine quadruples require odd.
  bool parity = spec.double_cover() && spec.P.size() % 2 == 1;
  bool ok = r.no_noncontextual && r.parity_pass && parity &&
            r.assignments_checked == 262144 && ms < 1000.0;
  return {ok, "coloring search exhausts 4^9 assignments, parity argument agrees", ms};
}

Outcome c6_epr_distribution() {
  auto start = Clock::now();
  QuantumSystem sys = epr_system();
  std::vector<double> dist = outcome_distribution(sys, {0, 1});
  const double expect[4] = {0.0, 0.5, 0.5, 0.0};
  bool ok = dist.size() == 4;
  for (int b = 0; b < 4 && ok; ++b)
    ok = std::abs(dist[static_cast<std::size_t>(b)] - expect[b]) < 1e-12;
  ProbTeam pt = quantum_team(sys);
  ok = ok && pt.weight(bits({0, 1, 0, 1})) == Rat(1, 2) &&
       pt.weight(bits({0, 1, 1, 0})) == Rat(1, 2) && pt.collapse() == epr_team();
  return {ok, "Born rule reproduces (0, 1/2, 1/2, 0); collapse matches the "
              "canonical two-site team", ms_since(start)};
}

Outcome c7_ghz_distribution() {
  auto start = Clock::now();
  QuantumSystem sys = ghz_system();
  bool ok = true;
  for (int a = 0; a < 8 && ok; ++a) {
    std::vector<int> setting = {(a >> 2) & 1, (a >> 1) & 1, a & 1};
    int sum_a = setting[0] + setting[1] + setting[2];
    std::vector<double> dist = outcome_distribution(sys, setting);
    for (int b = 0; b < 8 && ok; ++b) {
      int sum_b = ((b >> 2) & 1) + ((b >> 1) & 1) + (b & 1);
      double expect;
      if (sum_a == 0)
        expect = (sum_b % 2) ? 0.25 : 0.0;
      else if (sum_a == 2)
        expect = (sum_b % 2) ? 0.0 : 0.25;
      else
        expect = 0.125;
      ok = std::abs(dist[static_cast<std::size_t>(b)] - expect) < 1e-12;
    }
  }
  Team collapse = quantum_team(sys).collapse();
  ok = ok && is_ghz_team(collapse) && collapse.size() == 48;
  return {ok, "three-site Born table matches the parity rule on all 64 cells; "
              "48-row collapse qualifies", ms_since(start)};
}

Outcome c8_hardy_distribution() {
  auto start = Clock::now();
  QuantumSystem sys = hardy_system();
  const double table[4][4] = {
      {9.0 / 100, 27.0 / 200, 27.0 / 200, 16.0 / 25},
      {0.0, 9.0 / 40, 5.0 / 8, 3.0 / 20},
      {0.0, 5.0 / 8, 9.0 / 40, 3.0 / 20},
      {1.0 / 4, 3.0 / 8, 3.0 / 8, 0.0},
  };
  bool ok = true;
  for (int a = 0; a < 4 && ok; ++a) {
    std::vector<double> dist = outcome_distribution(sys, {(a >> 1) & 1, a & 1});
    for (int b = 0; b < 4 && ok; ++b)
      ok = std::abs(dist[static_cast<std::size_t>(b)] - table[a][b]) < 1e-9;
  }
  Team collapse = quantum_team(sys).collapse();
  ok = ok && is_hardy_team(collapse) && collapse.size() == 13;
  return {ok, "two-site Born table matches all 16 entries; 13-row collapse "
              "has the one-sided zero pattern", ms_since(start)};
}

Outcome c9_ns_support_probe() {
  auto start = Clock::now();
  Team t = ns_counterexample_team();
  bool ok = check_property(t, PropertyId::NS);
  PrProbeConfig cfg;
  cfg.restarts = 10000;
  cfg.seed = 2026;
  PrProbeResult r = search_probabilistic_realization(t, {PropertyId::NS}, cfg);
  double ms = ms_since(start);
  ok = ok && !r.witness.has_value() && r.best_residual >= 1e-6 && ms < 60'000.0;
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "12-row support is no-signalling, yet 10^4 restarts bottom out at "
                "residual %.3g", r.best_residual);
  return {ok, buf, ms};
}

Outcome c10_lift_inverts_and_preserves() {
  auto start = Clock::now();
  std::mt19937 rng(101);
  bool ok = true;
  for (int trial = 0; trial < 1000 && ok; ++trial) {
    Team t = random_zi_team(rng);
    ProbTeam pt = probabilistic_lift(t);
    Rat total = 0;
    for (const auto& w : pt.weights()) total += w;
    ok = pt.collapse() == t && total == Rat(1);
  }
  for (int trial = 0; trial < 200 && ok; ++trial) {
    Team t = random_local_team(rng);
    ProbTeam pt = probabilistic_lift(t);
    ok = check_property(pt, PropertyId::ML) && check_property(pt, PropertyId::ZI) &&
         check_property(pt, PropertyId::LOCAL) && prob_locality_holds(pt);
  }
  return {ok, "1000 lifts collapse back exactly with unit mass; 200 local lifts "
              "keep ML, zI and locality", ms_since(start)};
}

Outcome c11_lift_max_entropy() {
  auto start = Clock::now();
  std::mt19937 rng(111);
  bool ok = true;
  for (int i = 0; i < 20 && ok; ++i) {
    Team t = random_zi_team(rng);
    ProbTeam lift = probabilistic_lift(t);
    ProbTeam lift_prior = measurement_prior(lift);
    double h_prior = entropy(lift_prior);
    for (int j = 0; j < 100 && ok; ++j) {
      ProbTeam other = random_weights(t, rng);
      ok = entropy(measurement_prior(other)) <= h_prior + 1e-12;
      for (std::size_t s = 0; s < lift_prior.size() && ok; ++s) {
        const Row& section = lift_prior.rows()[s];
        auto h = [&](const ProbTeam& pt) {
          std::vector<Rat> w;
          for (const auto& [row, p] : outcome_conditional(pt, section)) w.push_back(p);
          return entropy(w);
        };
        ok = h(other) <= h(lift) + 1e-12;
      }
    }
  }
  return {ok, "lift prior and every section dominate 100 same-support rivals "
              "on 20 teams", ms_since(start)};
}

Outcome c12_soundness_fuzzing() {
  auto start = Clock::now();
  bool ok = true;
  std::string detail;
  for (int rule = 1; rule <= 9 && ok; ++rule)
    for (Semantics sem : {Semantics::Possibilistic, Semantics::Probabilistic}) {
      FuzzReport r = fuzz_rule(rule, 2000, sem, 3000 + static_cast<std::uint64_t>(rule));
      if (r.counterexamples || !r.nonvacuous) {
        ok = false;
        detail = "rule " + std::to_string(rule) + ": " + r.first_counterexample;
        break;
      }
    }
  for (int axiom = 1; axiom <= 5 && ok; ++axiom) {
    FuzzReport r = fuzz_separoid(axiom, 2000, Semantics::Probabilistic,
                                 4000 + static_cast<std::uint64_t>(axiom));
    if (r.counterexamples || !r.nonvacuous) {
      ok = false;
      detail = "separoid axiom " + std::to_string(axiom) + ": " + r.first_counterexample;
    }
  }
  if (ok) {
    FuzzReport team_rule = fuzz_interaction_team_rule(2000, 5000);
    FuzzReport prob_rule = fuzz_interaction_prob_rule(2000, 6000);
    ok = !team_rule.counterexamples && team_rule.nonvacuous &&
         !prob_rule.counterexamples && prob_rule.nonvacuous;
    if (!ok) detail = "interaction rule counterexample";
  }
  if (ok) detail = "9 rules x 2 semantics, 5 separoid axioms, 2 interaction rules, "
                   "2000 trials each, no counterexamples";
  return {ok, detail, ms_since(start)};
}

Outcome c13_lemma_derivations() {
  std::vector<std::string> uni = {"x0", "x1", "y0", "y1", "z"};
  auto fact = [&uni](const std::string& text) {
    std::vector<std::string> copy = uni;
    return parse_fact(text, copy);
  };
  std::vector<AtomFact> wd = {fact("=(x0 x1 z ; y0)"), fact("=(x0 x1 z ; y1)")};
  std::vector<AtomFact> sd = {fact("=(x0 z ; y0)"), fact("=(x1 z ; y1)")};
  std::vector<AtomFact> pi_wd = {fact("x1 _||_ y0 | x0 z"), fact("x0 _||_ y1 | x1 z"),
                                 wd[0], wd[1]};

  struct Lemma {
    std::vector<AtomFact> premises;
    std::vector<AtomFact> goals;
  };
  std::vector<Lemma> lemmas = {
      {wd, {fact("y0 _||_ y1 | x0 x1 z"), fact("y1 _||_ y0 | x0 x1 z")}},
      {sd, {fact("x1 _||_ y0 | x0 z"), fact("x0 _||_ y1 | x1 z")}},
      {pi_wd, {fact("=(x0 z ; y0)"), fact("=(x1 z ; y1)")}},
  };

  auto start = Clock::now();
  bool ok = true;
  double slowest = 0.0;
  for (const Lemma& lemma : lemmas) {
    auto lemma_start = Clock::now();
    for (const AtomFact& goal : lemma.goals) {
      auto d = entail(uni, lemma.premises, goal, 6);
      ok = ok && d.has_value() && replay_derivation(*d);
    }
    double lemma_ms = ms_since(lemma_start);
    slowest = std::max(slowest, lemma_ms);
    ok = ok && lemma_ms < 5000.0;
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "determinism and independence lemmas derive within depth 6 "
                "(slowest %.0f ms)", slowest);
  return {ok, buf, ms_since(start)};
}

// Random quantifier-free formulas inside the exactly-decidable probabilistic
// fragment: splitjunctions stay weakly flat, independence atoms only join
// conjunctions.
FormulaPtr random_flat(std::mt19937& rng, const std::vector<std::string>& vars, int depth) {
  auto var = [&] { return vars[rng() % vars.size()]; };
  if (depth == 0 || rng() % 2) {
    switch (rng() % 4) {
      case 0: return Formula::eq(var(), var());
      case 1: return Formula::neq(var(), var());
      case 2: return Formula::dep({var()}, {var()});
      default: return Formula::constant({var()});
    }
  }
  FormulaPtr a = random_flat(rng, vars, depth - 1);
  FormulaPtr b = random_flat(rng, vars, depth - 1);
  return rng() % 2 ? Formula::conj(a, b) : Formula::disj(a, b);
}

FormulaPtr random_qf_formula(std::mt19937& rng, const std::vector<std::string>& vars) {
  auto var = [&] { return vars[rng() % vars.size()]; };
  std::vector<FormulaPtr> parts;
  int n = 1 + static_cast<int>(rng() % 3);
  for (int i = 0; i < n; ++i) {
    if (rng() % 2) {
      std::vector<std::string> cond;
      if (rng() % 2) cond.push_back(var());
      parts.push_back(Formula::indep({var()}, cond, {var()}));
    } else {
      parts.push_back(random_flat(rng, vars, 2));
    }
  }
  return Formula::conj_all(parts);
}

Outcome c14_truth_transfers_to_collapse() {
  auto start = Clock::now();
  std::mt19937 rng(141);
  std::vector<std::string> names = {"a", "b", "c", "d"};
  std::vector<Variable> dom;
  for (const auto& n : names) dom.push_back({n, Role::Plain});
  bool ok = true;
  int held = 0;
  for (int trial = 0; trial < 2000 && ok; ++trial) {
    std::vector<Row> rows;
    int n = 1 + static_cast<int>(rng() % 6);
    for (int i = 0; i < n; ++i) {
      Row r;
      for (std::size_t c = 0; c < names.size(); ++c)
        r.push_back(V(std::to_string(rng() % 3)));
      rows.push_back(r);
    }
    ProbTeam pt = random_weights(Team::from_rows(dom, rows), rng);
    FormulaPtr f = random_qf_formula(rng, names);
    EvalResult prob = eval_probabilistic(pt, f);
    if (prob.verdict != Verdict::True) continue;
    ++held;
    EvalResult flat = eval_possibilistic(pt.collapse(), f);
    ok = flat.verdict == Verdict::True;
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "2000 random team/formula pairs: probabilistic truth carried to "
                "the collapse every time (%d held)", held);
  return {ok && held > 100, buf, ms_since(start)};
}

Outcome c15_locality_equivalences() {
  auto start = Clock::now();
  // Exhaustive possibilistic side: every binary two-site one-hidden team
  // with at most 5 rows.
  std::vector<Row> pool;
  for (int m = 0; m < 32; ++m)
    pool.push_back(bits({(m >> 4) & 1, (m >> 3) & 1, (m >> 2) & 1, (m >> 1) & 1, m & 1}));
  auto domain = two_site_domain(true);
  bool ok = true;
  long checked = 0;
  std::vector<int> idx;
  auto visit = [&](auto&& self, int first, int remaining) -> void {
    if (!ok) return;
    if (!idx.empty()) {
      std::vector<Row> rows;
      for (int i : idx) rows.push_back(pool[static_cast<std::size_t>(i)]);
      Team t = Team::from_rows(domain, rows);
      bool atoms = check_property(t, PropertyId::PI) && check_property(t, PropertyId::OI);
      ok = locality_holds(t) == atoms;
      ++checked;
    }
    if (remaining == 0 || !ok) return;
    for (int i = first; i < 32; ++i) {
      idx.push_back(i);
      self(self, i + 1, remaining - 1);
      idx.pop_back();
    }
  };
  visit(visit, 0, 5);

  // Probabilistic side on random rational teams.
  std::mt19937 rng(151);
  int prob_checked = 0;
  for (int trial = 0; trial < 10000 && ok; ++trial) {
    std::vector<Row> rows;
    int n = 1 + static_cast<int>(rng() % 5);
    for (int i = 0; i < n; ++i)
      rows.push_back(pool[rng() % pool.size()]);
    ProbTeam pt = random_weights(Team::from_rows(domain, rows), rng);
    bool atoms = check_property(pt, PropertyId::PI) && check_property(pt, PropertyId::OI);
    ok = prob_locality_holds(pt) == atoms;
    ++prob_checked;
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "locality = PI and OI on %ld exhaustive teams and %d random "
                "rational teams", checked, prob_checked);
  return {ok, buf, ms_since(start)};
}

Outcome c16_game_reduction() {
  auto start = Clock::now();
  Team t = game_to_team(chsh_game());
  bool ok = t.size() == 8;
  for (int c = 0; c < 2 && ok; ++c)
    for (int d = 0; d < 2 && ok; ++d) {
      int count = 0;
      for (const auto& r : t.rows())
        count += r[0] == V(std::to_string(c)) && r[1] == V(std::to_string(d));
      ok = count == 2;
    }
  return {ok, "win-iff-and game becomes the 8-row team, two rows per question "
              "pair", ms_since(start)};
}

}  // namespace

int main() {
  struct Entry {
    int id;
    Outcome (*fn)();
  };
  const Entry entries[] = {
      {1, c1_walkthrough_atom},
      {2, c2_epr_no_sv_realization},
      {3, c3_ghz_brute_force},
      {4, c4_hardy_brute_force},
      {5, c5_ks_exhaustive_and_parity},
      {6, c6_epr_distribution},
      {7, c7_ghz_distribution},
      {8, c8_hardy_distribution},
      {9, c9_ns_support_probe},
      {10, c10_lift_inverts_and_preserves},
      {11, c11_lift_max_entropy},
      {12, c12_soundness_fuzzing},
      {13, c13_lemma_derivations},
      {14, c14_truth_transfers_to_collapse},
      {15, c15_locality_equivalences},
      {16, c16_game_reduction},
  };
  int failures = 0;
  for (const Entry& e : entries) {
    Outcome out;
    try {
      out = e.fn();
    } catch (const std::exception& ex) {
      out.pass = false;
      out.detail = std::string("exception: ") + ex.what();
    }
    failures += !out.pass;
    std::printf("criterion %2d: %s  %s (%.1f ms)\n", e.id, out.pass ? "PASS" : "FAIL",
                out.detail.c_str(), out.ms);
    std::fflush(stdout);
  }
  if (failures) std::printf("%d of 16 criteria failed\n", failures);
  return failures ? 1 : 0;
}
