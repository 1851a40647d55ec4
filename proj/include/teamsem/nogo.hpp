// Canonical counterexample teams, recognizers for the team classes they
// belong to, and independent brute-force oracles for the no-go results.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "teamsem/team.hpp"

namespace teamsem {

// Anticorrelated two-site team over (x0, x1, y0, y1) at measurement (0, 1).
Team epr_team();
// The 8-row three-site team: full parity block at (0,0,0), plus one Q-row
// per measurement tuple in P.
Team ghz_team_minimal();
// Four rows over (x0, x1, y0, y1), one per measurement pair.
Team hardy_team_minimal();
// The smallest equivariant four-site team induced by mapping every
// measurement quadruple of P to the outcome (1,0,0,0): 9 * |S_4| = 216 rows.
Team ks_team_canonical();
// The 12-row two-site team whose no-signalling holds possibilistically but
// admits no no-signalling distribution on the same support.
Team ns_counterexample_team();

struct GHZSpec {
  std::vector<Row> P, Q, R;  // binary triples
  static GHZSpec standard();
};

struct KSSpec {
  std::vector<std::vector<int>> P;  // 9 quadruples over {0..17}
  std::vector<std::vector<int>> Q;  // the 4 unit outcome tuples
  static KSSpec standard();
  // Every mentioned element occurs in exactly two tuples of P.
  bool double_cover() const;
};

// Literal checks of the defining conditions.
bool is_ghz_team(const Team& team);
bool is_hardy_team(const Team& team);
// When the team qualifies and f_out is given, it receives f(a) for each
// quadruple of the standard P, in P's order.
bool is_ks_team(const Team& team, std::vector<Row>* f_out = nullptr);

// ---------------------------------------------------------------------------
// Local hidden-variable oracle
// ---------------------------------------------------------------------------
//
// A local model is a set of per-site response functions (Mermin
// instructions) g with g_i : M_i -> O_i; an instruction is consistent when
// it answers inside the team for every occurring measurement tuple, and a
// model exists exactly when the consistent instructions cover every row.
struct LocalModelResult {
  bool model_exists = false;
  std::size_t instructions_total = 0;
  std::size_t instructions_consistent = 0;
  std::vector<std::string> model;  // consistent instructions, printed
  std::string certificate;         // uncovered row or model summary
};

LocalModelResult find_local_model(const Team& team, std::size_t max_instructions = 1'000'000);
bool verify_no_local_model(const Team& team, std::size_t max_instructions = 1'000'000);

// ---------------------------------------------------------------------------
// Noncontextuality oracle
// ---------------------------------------------------------------------------

struct NoncontextualResult {
  bool no_noncontextual = false;  // exhaustive search found no noncontextual f
  bool parity_pass = false;       // double cover + odd |P| forbids one
  std::size_t assignments_checked = 0;
  std::string certificate;
};

// Exhausts all |Q|^|P| functions f : P -> Q.
NoncontextualResult verify_no_noncontextual(const KSSpec& spec);

}  // namespace teamsem
