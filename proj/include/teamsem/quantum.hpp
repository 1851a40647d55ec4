// Finite-dimensional quantum systems and the probabilistic teams they induce.
//
// A system fixes one finite-dimensional complex space per site, a POVM per
// (site, measurement) pair, and a density operator on the tensor product.
// The Born rule tr((A_0^{a0,b0} (x) ... (x) A_{n-1}^{a_{n-1},b_{n-1}}) rho)
// turns each measurement tuple a into an outcome distribution; drawing a
// uniformly from the measurement set yields a probabilistic team over
// x0..x_{n-1} (measurements) and y0..y_{n-1} (outcomes).
//
// Probabilities are computed in doubles and snapped back to exact rationals
// (denominator <= 10^6, accepted within 1e-9), so the teams handed to the
// exact layer carry true zeros and weights summing to exactly one.
#pragma once

#include <array>
#include <complex>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "teamsem/team.hpp"

namespace teamsem {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

// Kronecker product, left to right. The list must be nonempty.
CMatrix tensor(const std::vector<CMatrix>& ms);

// |v><v|.
CMatrix projector(const CVector& v);

struct QuantumSystem {
  // One space dimension per site.
  std::vector<int> dims;
  // povms[i][a] lists the positive operators of measurement a at site i,
  // indexed by outcome value; all measurements at a site answer with the
  // same outcome count.
  std::vector<std::map<int, std::vector<CMatrix>>> povms;
  // Density operator on the tensor product of the site spaces.
  CMatrix rho;
  // Measurement tuples the experiment draws from, and the outcome tuples a
  // distribution ranges over. Their order fixes the row order of reports.
  std::vector<std::vector<int>> measurements;
  std::vector<std::vector<int>> outcomes;

  std::size_t sites() const { return dims.size(); }
};

struct QuantumReport {
  bool ok = true;
  std::vector<std::string> violations;
};

// Shape consistency, POVM completeness and positivity, and density operator
// trace/positivity, all at 1e-9 tolerance. Total dimension is capped at 64.
QuantumReport validate(const QuantumSystem& sys);

// Born-rule distribution over sys.outcomes for one measurement tuple taken
// from sys.measurements (std::invalid_argument otherwise).
std::vector<double> outcome_distribution(const QuantumSystem& sys,
                                         const std::vector<int>& a);

// The probabilistic team s -> p_{s(x)}(s(y)) / |measurements|. Throws
// std::invalid_argument when validate() rejects the system.
ProbTeam quantum_team(const QuantumSystem& sys);

// The worked examples: pure states measured with rank-one projector POVMs.
// epr_system measures the two sites of (|01> + |10>)/sqrt(2) in the
// computational basis; ghz_system measures each site of (|000> + |111>)/
// sqrt(2) in one of two conjugate bases; hardy_system pairs a tilted basis
// with the computational one on -1/2|00> + sqrt(3/8)(|01> + |10>).
QuantumSystem epr_system();
QuantumSystem ghz_system();
QuantumSystem hardy_system();

// Two-player one-round game: questions c and d go out, answers a and b come
// back, and the players win iff the table says so.
struct NonLocalGame {
  std::vector<std::string> questions_a, questions_b;
  std::vector<std::string> answers_a, answers_b;
  // Win predicate keyed by (a, b, c, d); total on the product domain.
  std::map<std::array<std::string, 4>, bool> table;

  // Throws std::invalid_argument when the entry is missing.
  bool wins(const std::string& a, const std::string& b,
            const std::string& c, const std::string& d) const;
};

// Win iff a XOR b = c AND d over binary questions and answers.
NonLocalGame chsh_game();

// Parses {"questions_a":[..],"questions_b":[..],"answers_a":[..],
// "answers_b":[..],"table":[{"question_a":..,"question_b":..,
// "answer_a":..,"answer_b":..,"win":0|1},..]}. The table must cover the
// product domain exactly once; std::runtime_error otherwise.
NonLocalGame game_from_json(const std::string& text,
                            const std::string& name = "<game>");
NonLocalGame game_from_json_file(const std::string& path);

// All assignments (x0,x1,y0,y1) = (c,d,a,b) with a winning (a,b), or the
// empty team over the same domain when some question pair cannot be won.
Team game_to_team(const NonLocalGame& g);

}  // namespace teamsem
