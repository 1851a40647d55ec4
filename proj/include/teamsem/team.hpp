// Teams and probabilistic teams over finite value domains.
//
// A team is a finite set of assignments (rows) over a fixed, ordered variable
// domain. A probabilistic team is a probability distribution over such rows;
// we store only the support, with exact rational weights summing to one.
//
// Variables carry a role (measurement / outcome / hidden / plain) used by the
// property checkers and the realization constructions. Roles are inferred
// from the leading letter of the name (x/y/z) unless given explicitly.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "teamsem/rational.hpp"
#include "teamsem/value.hpp"

namespace teamsem {

enum class Role : std::uint8_t { Measurement, Outcome, Hidden, Plain };

char role_letter(Role r);
std::optional<Role> role_from_letter(const std::string& s);
Role role_from_name(const std::string& name);

struct Variable {
  std::string name;
  Role role = Role::Plain;

  bool operator==(const Variable& o) const { return name == o.name && role == o.role; }
};

using Row = std::vector<Value>;

struct RowHash {
  std::size_t operator()(const Row& r) const {
    std::size_t h = 1469598103934665603ull;
    for (Value v : r) {
      h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};

Row project_row(const Row& row, const std::vector<int>& cols);

class Team {
 public:
  Team() = default;
  explicit Team(std::vector<Variable> domain) : domain_(std::move(domain)) { check_domain(); }

  // Sorts and deduplicates. Every row must match the domain width.
  static Team from_rows(std::vector<Variable> domain, std::vector<Row> rows);

  const std::vector<Variable>& domain() const { return domain_; }
  const std::vector<Row>& rows() const { return rows_; }
  std::size_t size() const { return rows_.size(); }
  bool empty() const { return rows_.empty(); }

  int column(const std::string& name) const;           // -1 when absent
  int require_column(const std::string& name) const;   // throws when absent
  std::vector<int> require_columns(const std::vector<std::string>& names) const;

  bool contains(const Row& row) const;

  // All values occurring anywhere in the team, canonically sorted.
  std::vector<Value> occurring_values() const;
  // Distinct values of one column, canonically sorted.
  std::vector<Value> column_values(int col) const;

  // Restriction of every row to the named variables (team projection).
  Team project(const std::vector<std::string>& names) const;

  // X[A/v]: every row extended (or overwritten at v) with each value of A.
  Team duplicate(const std::string& v, Role role, const std::vector<Value>& values) const;

  // X[F/v]: per-row supplement; F must return a nonempty value set per row.
  Team supplement(const std::string& v, Role role,
                  const std::function<std::vector<Value>(const Row&)>& F) const;

  bool operator==(const Team& o) const { return domain_ == o.domain_ && rows_ == o.rows_; }

 private:
  void check_domain() const;
  // Position of v in the domain, or domain size if it is to be appended.
  std::size_t slot_for(const std::string& v) const;

  std::vector<Variable> domain_;
  std::vector<Row> rows_;  // sorted by row_less, unique
};

class ProbTeam {
 public:
  ProbTeam() = default;

  // Merges duplicate rows, drops zero weights, sorts. When normalize is
  // false the weights must sum to exactly one.
  static ProbTeam from_weighted_rows(std::vector<Variable> domain, std::vector<Row> rows,
                                     std::vector<Rat> weights, bool normalize = false);

  static ProbTeam uniform(const Team& team);  // uniform lift of a nonempty team

  const std::vector<Variable>& domain() const { return domain_; }
  const std::vector<Row>& rows() const { return rows_; }
  const std::vector<Rat>& weights() const { return weights_; }
  std::size_t size() const { return rows_.size(); }
  bool empty() const { return rows_.empty(); }

  int column(const std::string& name) const;
  int require_column(const std::string& name) const;
  std::vector<int> require_columns(const std::vector<std::string>& names) const;

  Rat weight(const Row& row) const;  // 0 when outside the support

  Team collapse() const;  // the support as a plain team

  // |X_{u=a}| for the given columns; the empty tuple has marginal 1.
  Rat marginal(const std::vector<int>& cols, const Row& vals) const;

  // Marginal distribution on the named variables (a probabilistic team).
  ProbTeam project(const std::vector<std::string>& names) const;

  ProbTeam duplicate(const std::string& v, Role role, const std::vector<Value>& values) const;

  // X[F/v] where F maps each support row to a distribution over values.
  // Each returned distribution must have nonnegative weights summing to one.
  using Kernel = std::function<std::vector<std::pair<Value, Rat>>(const Row&)>;
  ProbTeam supplement(const std::string& v, Role role, const Kernel& F) const;

  bool operator==(const ProbTeam& o) const {
    return domain_ == o.domain_ && rows_ == o.rows_ && weights_ == o.weights_;
  }

 private:
  std::vector<Variable> domain_;
  std::vector<Row> rows_;    // sorted by row_less, unique; support only
  std::vector<Rat> weights_; // parallel to rows_, all > 0, sum == 1
};

// r*X + (1-r)*Y over a common domain, 0 <= r <= 1.
ProbTeam scaled_union(const ProbTeam& x, const ProbTeam& y, const Rat& r);

// A hidden-variable team realizes an empirical team when projecting it to the
// empirical domain gives exactly that team. Variables are matched by name.
bool realizes(const Team& hidden, const Team& empirical);

// Probabilistic realization: supports agree on measurement tuples and the
// outcome distributions conditioned on each measurement tuple coincide.
bool prob_realizes(const ProbTeam& hidden, const ProbTeam& empirical);
// Additionally requires equal measurement marginals.
bool prob_uniform_realizes(const ProbTeam& hidden, const ProbTeam& empirical);

// Names of the variables with the given role, in domain order.
std::vector<std::string> names_with_role(const std::vector<Variable>& domain, Role role);

}  // namespace teamsem
