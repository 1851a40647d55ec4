// Hidden-variable realizations, the probabilistic lift, and the entropy
// apparatus.
//
// All constructions take teams over measurement variables x_i, outcome
// variables y_i and (where stated) hidden variables z_k, and return teams
// whose projection onto the x/y part equals the input's. Structured hidden
// values (outcome selector functions, (gamma, f) pairs) are interned as
// canonical strings so repeated runs produce identical files.
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "teamsem/properties.hpp"
#include "teamsem/team.hpp"

namespace teamsem {

// Appends `count` constant hidden columns. The result realizes the input
// and satisfies single-valuedness =(z).
Team extend_single_valued(const Team& team, int count = 1);

// Appends one hidden column per site, valued h:<site>:<measurement>:<k>
// where k is the index of the row's outcome among the outcomes seen with
// that measurement at that site. The result realizes the input and satisfies
// strong determinism =(x_i z ; y_i).
Team realize_strong_determinism(const Team& team);

// Hidden value = one interned outcome-selector function per way of choosing,
// for every measurement tuple, one of its outcome tuples. The result
// realizes the input and satisfies weak determinism =(x z ; y) together with
// z-independence z _||_ x. The selector count is the product of the section
// sizes; exceeding max_functions is an error.
Team realize_weak_det_z_indep(const Team& team, std::size_t max_functions = 1'000'000);

// Rebuilds the hidden part of a z-independent local team so that the result
// is empirically equivalent (identical x/y projection) and satisfies
// z-independence and strong determinism. The first hidden column carries an
// interned (gamma, f) pair, remaining hidden columns become constant.
// Throws std::invalid_argument when the input violates zI or LOCAL.
Team canonicalize_local_to_sd(const Team& team, std::size_t max_rows = 1'000'000);

// Counts behind the lift weights 1/(m_h * m_m * m_o(a, gamma)).
struct LiftCounts {
  std::size_t m_h = 0;  // distinct hidden-variable tuples
  std::size_t m_m = 0;  // distinct measurement tuples
  // m_o is per (measurement, hidden) section; query via section row counts.
};

// The canonical probabilistic realization of a z-independent team: weight
// 1/(m_h * m_m * m_o(a,gamma)) on each row. Collapse returns the input and
// the weights sum to exactly 1. Throws std::invalid_argument without zI.
ProbTeam probabilistic_lift(const Team& team, LiftCounts* counts = nullptr);

// Entropy in bits, -sum p log2 p over the support.
double entropy(const std::vector<Rat>& weights);
double entropy(const ProbTeam& team);

// Marginal of a probabilistic team on its measurement + hidden columns.
ProbTeam measurement_prior(const ProbTeam& team);

// Conditional outcome distribution given measurement + hidden values, as
// (outcome row, weight) pairs over the outcome columns in domain order.
// Throws std::invalid_argument when the section has zero mass.
std::vector<std::pair<Row, Rat>> outcome_conditional(const ProbTeam& team, const Row& section);

// ---------------------------------------------------------------------------
// Bounded feasibility probe for probabilistic realizability
// ---------------------------------------------------------------------------

// Minimizes, over distributions with support exactly the given team, the
// largest violation of the polynomial identities defining the given
// properties. Multiplicative-weights descent with seeded random restarts; a
// returned witness is re-verified exactly in rational arithmetic. Absence of
// a witness proves nothing; the best residual is reported either way.
struct PrProbeConfig {
  int restarts = 16;
  int iterations = 300;
  std::uint64_t seed = 0;
  // Support floor: every weight stays >= 1/(floor_divisor * rows).
  double floor_divisor = 4.0;
};

struct PrProbeResult {
  double best_residual = 0.0;
  int best_restart = -1;
  std::optional<ProbTeam> witness;
};

PrProbeResult search_probabilistic_realization(const Team& team,
                                               const std::vector<PropertyId>& props,
                                               const PrProbeConfig& config = {});

}  // namespace teamsem
