// Named properties of empirical and hidden-variable teams.
//
// For a team over measurements x_0..x_{n-1}, outcomes y_0..y_{n-1} and
// optional hidden variables z_0..z_{l-1}:
//
//   WD     weak determinism       =(x z ; y_i) for each i
//   SD     strong determinism     =(x_i z ; y_i)
//   NS     no-signalling          {x_j : j != i} _||_ y_i | x_i
//   SV     single-valuedness      =(z)
//   ZI     z-independence         z _||_ x
//   PI     parameter independence {x_j : j != i} _||_ y_i | x_i z
//   OI     outcome independence   y_i _||_ {y_j : j != i} | x z
//   ML     measurement locality   x_i _||_ {x_j : j != i} | z
//   LOCAL  locality               checked semantically; equivalent to PI & OI
//
// Empirical teams (no hidden variables) use the same formulas with the z
// part dropped. Probabilistic checks replace each independence atom by its
// probabilistic counterpart on the same team.
#pragma once

#include <optional>
#include <string>

#include "teamsem/eval.hpp"
#include "teamsem/formula.hpp"
#include "teamsem/team.hpp"

namespace teamsem {

enum class PropertyId { WD, SD, NS, SV, ZI, PI, OI, ML, LOCAL };

std::string to_string(PropertyId p);
std::optional<PropertyId> property_from_string(const std::string& s);

// Measurement/outcome/hidden variable names in site order. Measurements and
// outcomes are paired by their position in this struct.
struct TeamRoles {
  std::vector<std::string> x, y, z;

  static TeamRoles infer(const std::vector<Variable>& domain);
  std::size_t sites() const { return x.size(); }
};

// The defining formula over the given roles. LOCAL yields the equivalent
// conjunction PI /\ OI.
FormulaPtr property_formula(PropertyId p, const TeamRoles& roles);

bool check_property(const Team& team, PropertyId p);
bool check_property(const ProbTeam& team, PropertyId p);

// Locality, straight from its definition: whenever rows s_0..s_{n-1} agree
// with some row on each (x_i, z) individually, some row matches all the
// (x_i, y_i, z) triples simultaneously.
bool locality_holds(const Team& team);

// The probabilistic counterpart: for all a, b, gamma,
//   |X_{x y z = a b g}| * prod_i |X_{x_i z = a_i g}|
//     = |X_{x z = a g}| * prod_i |X_{x_i y_i z = a_i b_i g}|.
bool prob_locality_holds(const ProbTeam& team);

// Mutual independence of the tuples given u:   v_i _||_ {v_j : j != i} | u
// for all i holds iff the joint distribution factorizes:
//   |X_{v u = a b}| * |X_{u = b}|^{n-1} = prod_i |X_{v_i u = a_i b}| .
bool mutual_indep_product_holds(const ProbTeam& team,
                                const std::vector<std::vector<std::string>>& tuples,
                                const std::vector<std::string>& cond);

// (left, cond, right) name triples of every independence atom in a plain
// conjunction of atoms, as produced by property_formula.
struct IndepAtom {
  std::vector<std::string> left, cond, right;
};
std::vector<IndepAtom> independence_atoms(const FormulaPtr& f);

}  // namespace teamsem
