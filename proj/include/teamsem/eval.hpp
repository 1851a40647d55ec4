// Formula evaluation over teams and probabilistic teams.
//
// The possibilistic evaluator implements the standard team-semantics clauses:
// splitjunction searches covers of the team, existential supplementing
// searches kernels into nonempty value sets, and Eh/Ah try fresh sorts of
// size 1..k_max. Everything is budgeted; running out of budget yields an
// explicit Inconclusive verdict rather than a wrong answer. A False that
// depends on the k_max cutoff is flagged as bounded.
//
// The probabilistic evaluator covers the exactly-decidable fragment: boolean
// combinations of first-order atoms and probabilistic independence atoms,
// with splitjunction allowed when both sides are weakly flat (then the
// collapse decides) and quantifiers allowed when the caller supplies witness
// kernels (or the subformula is weakly flat). Anything else throws
// UnsupportedFormula.
#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "teamsem/formula.hpp"
#include "teamsem/team.hpp"

namespace teamsem {

enum class Verdict { True, False, Inconclusive };

std::string to_string(Verdict v);

struct EvalResult {
  Verdict verdict = Verdict::Inconclusive;
  // Set when the verdict relies on the Eh/Ah sort-size cutoff; a bounded
  // False means "no witness up to k_max", not a proof of unsatisfiability.
  bool bounded = false;
  std::string note;
};

struct EvalContext {
  // Domain for E/A quantifiers; empty means "values occurring in the team".
  std::vector<Value> quantifier_domain;
  // Eh/Ah try fresh sorts of size 1..k_max.
  int k_max = 4;
  // Decremented per evaluated node; exhaustion aborts with Inconclusive.
  std::uint64_t budget = 4'000'000;
  // Witness kernels for probabilistic existentials, keyed by bound variable.
  std::map<std::string, ProbTeam::Kernel> witness_kernels;
};

struct UnsupportedFormula : std::runtime_error {
  using std::runtime_error::runtime_error;
};

EvalResult eval_possibilistic(const Team& team, const FormulaPtr& f, EvalContext ctx = {});
EvalResult eval_probabilistic(const ProbTeam& team, const FormulaPtr& f, EvalContext ctx = {});

// Direct atom checks, exposed for the property checkers and the fuzzers.
bool indep_atom_holds(const Team& team, const std::vector<std::string>& left,
                      const std::vector<std::string>& cond, const std::vector<std::string>& right);
bool prob_indep_atom_holds(const ProbTeam& team, const std::vector<std::string>& left,
                           const std::vector<std::string>& cond,
                           const std::vector<std::string>& right);

}  // namespace teamsem
