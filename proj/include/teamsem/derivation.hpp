// Syntactic entailment for conditional independence atoms.
//
// Facts are atoms  left _||_ right | cond  over a fixed universe of variable
// names, stored as sorted duplicate-free id tuples. Sorting and deduplication
// are sound in both semantics (tuple order and repetition never change the
// atom) and make the permutation rule a no-op.
//
// Rules, numbered as used in derivations:
//   1 constancy           y _||_ y | x            =>  y _||_ z | x
//   2 reflexivity                                 =>  x _||_ y | x
//   3 symmetry            z _||_ y | x            =>  y _||_ z | x
//   4 weakening           y y' _||_ z z' | x      =>  y _||_ z | x
//   5 permutation         (absorbed by the canonical form)
//   6 fixed parameter     z _||_ y | x            =>  y x _||_ z x | x
//   7 first transitivity  x _||_ y | z  and  u _||_ y | z x   =>  u _||_ y | z
//   8 second transitivity y _||_ y | z  and  z x _||_ u | y   =>  x _||_ u | z
//   9 exchange            x _||_ y | z  and  x y _||_ u | z   =>  x _||_ y u | z
//
// entail() saturates breadth-first, so a found derivation has minimal depth.
// Side tuples for rules 1 and 2 are drawn from subsets of the universe of
// size at most 3.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "teamsem/team.hpp"

namespace teamsem {

struct AtomFact {
  std::vector<int> left, cond, right;  // sorted, duplicate-free variable ids

  bool operator==(const AtomFact&) const = default;
  bool operator<(const AtomFact& o) const;
};

// Sorts and deduplicates each tuple.
AtomFact make_fact(std::vector<int> left, std::vector<int> cond, std::vector<int> right);

struct DerivationStep {
  int rule = 0;              // 0 marks a premise
  std::vector<int> inputs;   // indices of earlier steps
  AtomFact fact;
};

struct Derivation {
  std::vector<std::string> universe;
  std::vector<DerivationStep> steps;  // premises first; the last step is the goal
};

struct EntailStats {
  std::size_t facts_explored = 0;
  int rounds = 0;
};

std::optional<Derivation> entail(const std::vector<std::string>& universe,
                                 const std::vector<AtomFact>& premises, const AtomFact& goal,
                                 int max_depth = 6, std::size_t max_facts = 500'000,
                                 EntailStats* stats = nullptr);

// Re-validates every step of a derivation against the rule schemas.
bool replay_derivation(const Derivation& d);

// Parses "y _||_ z | x", "=(x ; y)" or "=(z)". Unknown names are appended to
// the universe.
AtomFact parse_fact(const std::string& text, std::vector<std::string>& universe);
std::string print_fact(const AtomFact& f, const std::vector<std::string>& universe);

// Checks a fact on a team whose variables are named by the universe.
bool fact_holds(const Team& team, const AtomFact& f, const std::vector<std::string>& universe);
bool fact_holds(const ProbTeam& team, const AtomFact& f,
                const std::vector<std::string>& universe);

// ---------------------------------------------------------------------------
// Randomized soundness checks
// ---------------------------------------------------------------------------

enum class Semantics { Possibilistic, Probabilistic };

struct FuzzReport {
  int trials = 0;
  int nonvacuous = 0;        // trials whose premises all held
  int counterexamples = 0;   // premises held but the conclusion failed
  std::string first_counterexample;
};

// Random teams and random tuple instantiations of one rule (1..9).
FuzzReport fuzz_rule(int rule, int trials, Semantics sem, std::uint64_t seed);

// Separoid axioms P1..P5 for the relation  a _||_ b | c  on variable tuples,
// with join = tuple concatenation and d <= b taken as "b determines d".
FuzzReport fuzz_separoid(int axiom, int trials, Semantics sem, std::uint64_t seed);

// {x _||_ y | z, x _||_ y | u, z _||_ u | x y}  =>  x _||_ y | z u
// holds possibilistically but not probabilistically; fuzzed in its sound
// semantics here.
FuzzReport fuzz_interaction_team_rule(int trials, std::uint64_t seed);

// {x _||_ y | y z, z _||_ u | x, z _||_ u | y, x _||_ y}  =>  z _||_ u
// holds probabilistically but not possibilistically; fuzzed in its sound
// semantics here. (The first premise is trivially true in every
// probabilistic team, so the rule effectively has three premises.)
FuzzReport fuzz_interaction_prob_rule(int trials, std::uint64_t seed);

// Deliberately corrupts symmetry (dropping the condition) and exhibits a
// counterexample by exhaustive search over binary teams with at most 4 rows.
struct MutationReport {
  bool counterexample_found = false;
  std::string description;
};
MutationReport corrupted_symmetry_counterexample();

}  // namespace teamsem
