// CSV and JSON serialization for teams.
//
// CSV layout:
//   x0,x1,y0,y1          header: variable names (a final "prob" column makes
//   #roles: m,m,o,o      the file probabilistic); the optional second line
//   0,1,0,1,1/2          pins roles, otherwise they are inferred from the
//   0,1,1,0,1/2          leading letter (x/y/z); weights are "p/q", integers
//                        or plain decimals.
// Writers always emit the roles line and canonical row order, so re-writing
// a canonical file reproduces it byte for byte.
//
// The JSON mirror is {"schema":1,"domain":[..],"roles":[..],"rows":[[..]]}
// with an optional "weights" array of "p/q" strings.
#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "teamsem/team.hpp"

namespace teamsem {

struct TeamFile {
  std::vector<Variable> domain;
  std::vector<Row> rows;
  std::vector<Rat> weights;  // empty for plain teams
  bool probabilistic = false;

  Team to_team() const;          // collapses a probabilistic file to its support
  ProbTeam to_prob_team() const; // throws when the file has no weights
};

TeamFile read_team_csv(std::istream& in, const std::string& name = "<csv>");
TeamFile read_team_csv_file(const std::string& path);
TeamFile read_team_json(std::istream& in, const std::string& name = "<json>");
TeamFile read_team_json_file(const std::string& path);
// Dispatches on the .json / .csv extension (defaulting to CSV).
TeamFile read_team_file(const std::string& path);

void write_team_csv(std::ostream& out, const Team& team);
void write_team_csv(std::ostream& out, const ProbTeam& team);
void write_team_csv_file(const std::string& path, const Team& team);
void write_team_csv_file(const std::string& path, const ProbTeam& team);

std::string team_to_json(const Team& team);
std::string team_to_json(const ProbTeam& team);

}  // namespace teamsem
