#include "teamsem/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "teamsem/value.hpp"

namespace teamsem {

namespace {

// Deterministic choice for "pick any value": the canonically least value
// occurring in the team, or the token 0 for empty teams.
Value default_hidden_value(const Team& team) {
  auto vals = team.occurring_values();
  return vals.empty() ? intern_value("0") : vals.front();
}

std::string tuple_token(const Row& row) {
  std::string out = "(";
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) out += ',';
    out += value_token(row[i]);
  }
  return out + ")";
}

int next_hidden_index(const std::vector<Variable>& domain) {
  int next = 0;
  for (const Variable& v : domain)
    if (v.role == Role::Hidden) ++next;
  return next;
}

struct RowLess {
  bool operator()(const Row& a, const Row& b) const { return row_less(a, b); }
};

}  // namespace

Team extend_single_valued(const Team& team, int count) {
  if (count < 0) throw std::invalid_argument("extend_single_valued: negative column count");
  Value gamma = default_hidden_value(team);
  Team out = team;
  int base = next_hidden_index(team.domain());
  for (int k = 0; k < count; ++k)
    out = out.duplicate("z" + std::to_string(base + k), Role::Hidden, {gamma});
  return out;
}

Team realize_strong_determinism(const Team& team) {
  TeamRoles roles = TeamRoles::infer(team.domain());
  if (roles.x.size() != roles.y.size())
    throw std::invalid_argument("realize_strong_determinism: unpaired measurement/outcome columns");
  const std::size_t n = roles.sites();

  std::vector<Variable> domain = team.domain();
  for (std::size_t i = 0; i < n; ++i)
    domain.push_back({"z" + std::to_string(next_hidden_index(domain)), Role::Hidden});

  // Outcome index per site: position of the row's y_i among the distinct
  // outcomes seen with its x_i value.
  std::vector<int> xcol = team.require_columns(roles.x);
  std::vector<int> ycol = team.require_columns(roles.y);
  std::vector<std::map<Value, std::vector<Value>, ValueLess>> seen(n);
  for (const Row& r : team.rows())
    for (std::size_t i = 0; i < n; ++i) {
      auto& outs = seen[i][r[std::size_t(xcol[i])]];
      Value b = r[std::size_t(ycol[i])];
      if (std::find(outs.begin(), outs.end(), b) == outs.end()) outs.push_back(b);
    }
  for (auto& per_site : seen)
    for (auto& [a, outs] : per_site) std::sort(outs.begin(), outs.end(), value_less);

  std::vector<Row> rows;
  for (const Row& r : team.rows()) {
    Row e = r;
    for (std::size_t i = 0; i < n; ++i) {
      Value a = r[std::size_t(xcol[i])];
      const auto& outs = seen[i].at(a);
      auto j = std::find(outs.begin(), outs.end(), r[std::size_t(ycol[i])]) - outs.begin();
      e.push_back(intern_value("h:" + std::to_string(i) + ":" + value_token(a) + ":" +
                               std::to_string(j)));
    }
    rows.push_back(std::move(e));
  }
  return Team::from_rows(std::move(domain), std::move(rows));
}

Team realize_weak_det_z_indep(const Team& team, std::size_t max_functions) {
  TeamRoles roles = TeamRoles::infer(team.domain());
  std::vector<int> xcol = team.require_columns(roles.x);
  std::vector<int> ycol = team.require_columns(roles.y);

  // Sections: per measurement tuple, the outcome tuples occurring with it.
  std::map<Row, std::vector<Row>, RowLess> sections;
  for (const Row& r : team.rows()) {
    auto& outs = sections[project_row(r, xcol)];
    Row b = project_row(r, ycol);
    if (std::find(outs.begin(), outs.end(), b) == outs.end()) outs.push_back(std::move(b));
  }
  std::size_t total = 1;
  for (auto& [a, outs] : sections) {
    std::sort(outs.begin(), outs.end(), row_less);
    if (outs.size() > max_functions / total)
      throw std::runtime_error("realize_weak_det_z_indep: selector count exceeds cap");
    total *= outs.size();
  }

  std::vector<Variable> domain = team.domain();
  domain.push_back({"z" + std::to_string(next_hidden_index(domain)), Role::Hidden});

  // Odometer over one outcome choice per measurement tuple.
  std::vector<Row> rows;
  std::vector<std::size_t> idx(sections.size(), 0);
  if (!sections.empty()) {
    while (true) {
      std::string token = "g:";
      std::size_t k = 0;
      for (const auto& [a, outs] : sections) {
        if (k) token += ';';
        token += tuple_token(a) + "->" + tuple_token(outs[idx[k]]);
        ++k;
      }
      Value gamma = intern_value(token);
      k = 0;
      for (const auto& [a, outs] : sections) {
        Row e(domain.size());
        for (std::size_t i = 0; i < xcol.size(); ++i) e[std::size_t(xcol[i])] = a[i];
        const Row& b = outs[idx[k]];
        for (std::size_t i = 0; i < ycol.size(); ++i) e[std::size_t(ycol[i])] = b[i];
        e.back() = gamma;
        rows.push_back(std::move(e));
        ++k;
      }
      std::size_t carry = 0;
      auto it = sections.begin();
      while (carry < idx.size() && ++idx[carry] == it->second.size()) {
        idx[carry] = 0;
        ++carry;
        ++it;
      }
      if (carry == idx.size()) break;
    }
  }
  return Team::from_rows(std::move(domain), std::move(rows));
}

Team canonicalize_local_to_sd(const Team& team, std::size_t max_rows) {
  TeamRoles roles = TeamRoles::infer(team.domain());
  if (roles.z.empty())
    throw std::invalid_argument("canonicalize_local_to_sd: no hidden variables to rebuild");
  if (!check_property(team, PropertyId::ZI))
    throw std::invalid_argument("canonicalize_local_to_sd: input violates z-independence");
  if (!locality_holds(team))
    throw std::invalid_argument("canonicalize_local_to_sd: input violates locality");
  if (team.empty()) return team;

  const std::size_t n = roles.sites();
  std::vector<int> xcol = team.require_columns(roles.x);
  std::vector<int> ycol = team.require_columns(roles.y);
  std::vector<int> zcol = team.require_columns(roles.z);
  int z0 = zcol[0];
  Value filler = default_hidden_value(team);

  std::vector<Row> gammas;  // distinct hidden tuples
  std::vector<Row> meas;    // distinct measurement tuples
  {
    Team zproj = team.project(roles.z);
    gammas.assign(zproj.rows().begin(), zproj.rows().end());
    Team xproj = team.project(roles.x);
    meas.assign(xproj.rows().begin(), xproj.rows().end());
  }

  std::vector<Row> rows;
  for (const Row& gamma : gammas) {
    // Per site, per measurement value: outcomes seen in this gamma section.
    std::vector<std::map<Value, std::vector<Value>, ValueLess>> options(n);
    for (const Row& r : team.rows()) {
      if (project_row(r, zcol) != gamma) continue;
      for (std::size_t i = 0; i < n; ++i) {
        auto& outs = options[i][r[std::size_t(xcol[i])]];
        Value b = r[std::size_t(ycol[i])];
        if (std::find(outs.begin(), outs.end(), b) == outs.end()) outs.push_back(b);
      }
    }
    for (auto& per_site : options)
      for (auto& [a, outs] : per_site) std::sort(outs.begin(), outs.end(), value_less);

    // Response functions f = (f_i), one outcome choice per (site, value).
    struct Slot {
      std::size_t site;
      Value a;
      const std::vector<Value>* outs;
    };
    std::vector<Slot> slots;
    for (std::size_t i = 0; i < n; ++i)
      for (const auto& [a, outs] : options[i]) slots.push_back({i, a, &outs});

    std::vector<std::size_t> idx(slots.size(), 0);
    while (true) {
      std::string token = "c:" + tuple_token(gamma);
      for (std::size_t k = 0; k < slots.size(); ++k)
        token += ";f" + std::to_string(slots[k].site) + ":" + value_token(slots[k].a) + "->" +
                 value_token((*slots[k].outs)[idx[k]]);
      Value tok = intern_value(token);

      for (const Row& a : meas) {
        if (rows.size() >= max_rows)
          throw std::runtime_error("canonicalize_local_to_sd: row count exceeds cap");
        Row e(team.domain().size());
        for (std::size_t i = 0; i < n; ++i) e[std::size_t(xcol[i])] = a[i];
        for (std::size_t k = 0; k < slots.size(); ++k)
          for (std::size_t i = 0; i < n; ++i)
            if (slots[k].site == i && slots[k].a == a[i])
              e[std::size_t(ycol[i])] = (*slots[k].outs)[idx[k]];
        for (std::size_t j = 1; j < zcol.size(); ++j) e[std::size_t(zcol[j])] = filler;
        e[std::size_t(z0)] = tok;
        rows.push_back(std::move(e));
      }
      std::size_t carry = 0;
      while (carry < idx.size() && ++idx[carry] == slots[carry].outs->size()) {
        idx[carry] = 0;
        ++carry;
      }
      if (carry == idx.size()) break;
    }
  }
  return Team::from_rows(team.domain(), std::move(rows));
}

ProbTeam probabilistic_lift(const Team& team, LiftCounts* counts) {
  if (team.empty())
    throw std::invalid_argument("probabilistic_lift: empty team has no distribution");
  if (!check_property(team, PropertyId::ZI))
    throw std::invalid_argument("probabilistic_lift: input violates z-independence");
  TeamRoles roles = TeamRoles::infer(team.domain());
  std::vector<int> xcol = team.require_columns(roles.x);
  std::vector<int> zcol = team.require_columns(roles.z);

  std::size_t m_h = team.project(roles.z).size();
  std::size_t m_m = team.project(roles.x).size();
  if (roles.z.empty()) m_h = 1;
  if (roles.x.empty()) m_m = 1;

  std::vector<int> xz = xcol;
  xz.insert(xz.end(), zcol.begin(), zcol.end());
  std::unordered_map<Row, std::size_t, RowHash> m_o;
  for (const Row& r : team.rows()) ++m_o[project_row(r, xz)];

  std::vector<Rat> weights;
  for (const Row& r : team.rows())
    weights.push_back(Rat(1) / Rat(std::uint64_t(m_h * m_m * m_o.at(project_row(r, xz)))));
  if (counts) {
    counts->m_h = m_h;
    counts->m_m = m_m;
  }
  return ProbTeam::from_weighted_rows(team.domain(),
                                      {team.rows().begin(), team.rows().end()},
                                      std::move(weights));
}

double entropy(const std::vector<Rat>& weights) {
  double h = 0.0;
  for (const Rat& w : weights) {
    if (w == 0) continue;
    double p = rat_to_double(w);
    h -= p * std::log2(p);
  }
  return h;
}

double entropy(const ProbTeam& team) { return entropy(team.weights()); }

ProbTeam measurement_prior(const ProbTeam& team) {
  std::vector<std::string> names;
  for (const Variable& v : team.domain())
    if (v.role == Role::Measurement || v.role == Role::Hidden) names.push_back(v.name);
  return team.project(names);
}

std::vector<std::pair<Row, Rat>> outcome_conditional(const ProbTeam& team, const Row& section) {
  std::vector<int> cols, ycol;
  for (std::size_t c = 0; c < team.domain().size(); ++c) {
    Role role = team.domain()[c].role;
    if (role == Role::Measurement || role == Role::Hidden)
      cols.push_back(int(c));
    else if (role == Role::Outcome)
      ycol.push_back(int(c));
  }
  if (section.size() != cols.size())
    throw std::invalid_argument("outcome_conditional: section width mismatch");
  Rat total = team.marginal(cols, section);
  if (total == 0) throw std::invalid_argument("outcome_conditional: zero-mass section");

  std::map<Row, Rat, RowLess> dist;
  for (std::size_t i = 0; i < team.size(); ++i) {
    const Row& r = team.rows()[i];
    if (project_row(r, cols) != section) continue;
    dist[project_row(r, ycol)] += team.weights()[i] / total;
  }
  return {dist.begin(), dist.end()};
}

}  // namespace teamsem
