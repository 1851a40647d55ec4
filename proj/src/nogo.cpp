#include "teamsem/nogo.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "teamsem/properties.hpp"
#include "teamsem/value.hpp"

namespace teamsem {

namespace {

Value val(int i) { return intern_value(std::to_string(i)); }

std::vector<Variable> empirical_domain(int n) {
  std::vector<Variable> domain;
  for (int i = 0; i < n; ++i) domain.push_back({"x" + std::to_string(i), Role::Measurement});
  for (int i = 0; i < n; ++i) domain.push_back({"y" + std::to_string(i), Role::Outcome});
  return domain;
}

Team team_from_bits(int n, const std::vector<std::vector<int>>& rows) {
  std::vector<Row> out;
  for (const auto& r : rows) {
    Row e;
    for (int b : r) e.push_back(val(b));
    out.push_back(std::move(e));
  }
  return Team::from_rows(empirical_domain(n), std::move(out));
}

struct RowLess {
  bool operator()(const Row& a, const Row& b) const { return row_less(a, b); }
};

}  // namespace

Team epr_team() {
  return team_from_bits(2, {{0, 1, 0, 1}, {0, 1, 1, 0}});
}

Team ghz_team_minimal() {
  return team_from_bits(3, {
                               {0, 0, 0, 0, 0, 1},
                               {0, 0, 0, 0, 1, 0},
                               {0, 0, 0, 1, 0, 0},
                               {0, 0, 0, 1, 1, 1},
                               {0, 1, 1, 0, 0, 0},
                               {0, 1, 1, 0, 1, 1},
                               {1, 0, 1, 1, 0, 1},
                               {1, 1, 0, 1, 1, 0},
                           });
}

Team hardy_team_minimal() {
  return team_from_bits(2, {{0, 0, 0, 0}, {0, 1, 1, 1}, {1, 0, 1, 1}, {1, 1, 0, 0}});
}

Team ns_counterexample_team() {
  return team_from_bits(2, {
                               {0, 0, 0, 0},
                               {0, 0, 0, 1},
                               {0, 0, 1, 1},
                               {0, 1, 0, 0},
                               {0, 1, 1, 0},
                               {0, 1, 1, 1},
                               {1, 0, 0, 0},
                               {1, 0, 1, 0},
                               {1, 0, 1, 1},
                               {1, 1, 0, 0},
                               {1, 1, 0, 1},
                               {1, 1, 1, 1},
                           });
}

GHZSpec GHZSpec::standard() {
  auto triple = [](int a, int b, int c) { return Row{val(a), val(b), val(c)}; };
  GHZSpec spec;
  spec.P = {triple(0, 1, 1), triple(1, 0, 1), triple(1, 1, 0)};
  spec.Q = {triple(0, 0, 0), triple(0, 1, 1), triple(1, 0, 1), triple(1, 1, 0)};
  spec.R = {triple(0, 0, 1), triple(0, 1, 0), triple(1, 0, 0), triple(1, 1, 1)};
  return spec;
}

KSSpec KSSpec::standard() {
  KSSpec spec;
  spec.P = {{0, 1, 2, 3},    {0, 4, 5, 6},    {7, 8, 2, 9},
            {7, 10, 6, 11},  {1, 4, 12, 13},  {8, 10, 13, 14},
            {15, 16, 3, 9},  {15, 17, 5, 11}, {16, 17, 12, 14}};
  spec.Q = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
  return spec;
}

bool KSSpec::double_cover() const {
  std::map<int, int> count;
  for (const auto& tuple : P)
    for (int e : tuple) ++count[e];
  return std::all_of(count.begin(), count.end(), [](const auto& kv) { return kv.second == 2; });
}

// All permutations of {0..n-1}; pi.a = (a_{pi^-1(0)}, ..., a_{pi^-1(n-1)}),
// i.e. position pi(k) of the result holds a_k.
static std::vector<std::vector<int>> permutations(int n) {
  std::vector<int> p(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) p[std::size_t(i)] = i;
  std::vector<std::vector<int>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

static Row act(const std::vector<int>& pi, const Row& a) {
  Row out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out[std::size_t(pi[k])] = a[k];
  return out;
}

Team ks_team_canonical() {
  KSSpec spec = KSSpec::standard();
  Row b0{val(1), val(0), val(0), val(0)};
  std::vector<Row> rows;
  for (const auto& tuple : spec.P) {
    Row a;
    for (int e : tuple) a.push_back(val(e));
    for (const auto& pi : permutations(4)) {
      Row r = act(pi, a);
      Row b = act(pi, b0);
      r.insert(r.end(), b.begin(), b.end());
      rows.push_back(std::move(r));
    }
  }
  return Team::from_rows(empirical_domain(4), std::move(rows));
}

namespace {

// Occurring (measurement tuple, outcome tuple) pairs, via the role split.
struct EmpiricalView {
  std::vector<int> xcol, ycol;
  std::set<Row, RowLess> meas;
  std::set<std::pair<Row, Row>> pairs;  // (a, b) with interned ids, set order ok
};

EmpiricalView empirical_view(const Team& team) {
  TeamRoles roles = TeamRoles::infer(team.domain());
  EmpiricalView v;
  v.xcol = team.require_columns(roles.x);
  v.ycol = team.require_columns(roles.y);
  for (const Row& r : team.rows()) {
    Row a = project_row(r, v.xcol), b = project_row(r, v.ycol);
    v.meas.insert(a);
    v.pairs.insert({std::move(a), std::move(b)});
  }
  return v;
}

bool values_within(const Team& team, const std::vector<int>& cols, int lo, int hi) {
  for (const Row& r : team.rows())
    for (int c : cols) {
      bool ok = false;
      for (int b = lo; b <= hi; ++b)
        if (r[std::size_t(c)] == val(b)) ok = true;
      if (!ok) return false;
    }
  return true;
}

}  // namespace

bool is_ghz_team(const Team& team) {
  TeamRoles roles = TeamRoles::infer(team.domain());
  if (roles.sites() != 3 || !roles.z.empty())
    throw std::invalid_argument("is_ghz_team: expects an empirical team with 3 sites");
  EmpiricalView v = empirical_view(team);
  if (!values_within(team, v.xcol, 0, 1) || !values_within(team, v.ycol, 0, 1)) return false;
  GHZSpec spec = GHZSpec::standard();
  auto in = [](const std::vector<Row>& set, const Row& r) {
    return std::find(set.begin(), set.end(), r) != set.end();
  };

  std::set<Row, RowLess> outcomes_at_P, outcomes_at_000, meas_with_Q;
  Row zero{val(0), val(0), val(0)};
  for (const auto& [a, b] : v.pairs) {
    if (in(spec.P, a)) outcomes_at_P.insert(b);
    if (a == zero) outcomes_at_000.insert(b);
    if (in(spec.Q, b)) meas_with_Q.insert(a);
  }
  std::set<Row, RowLess> Q(spec.Q.begin(), spec.Q.end()), R(spec.R.begin(), spec.R.end());
  if (outcomes_at_P != Q) return false;
  for (const Row& a : spec.P)
    if (!meas_with_Q.count(a)) return false;
  return outcomes_at_000 == R;
}

bool is_hardy_team(const Team& team) {
  TeamRoles roles = TeamRoles::infer(team.domain());
  if (roles.sites() != 2 || !roles.z.empty())
    throw std::invalid_argument("is_hardy_team: expects an empirical team with 2 sites");
  EmpiricalView v = empirical_view(team);
  if (!values_within(team, v.xcol, 0, 1) || !values_within(team, v.ycol, 0, 1)) return false;
  auto has = [&v](int x0, int x1, int y0, int y1) {
    return v.pairs.count({Row{val(x0), val(x1)}, Row{val(y0), val(y1)}}) != 0;
  };
  if (!has(0, 0, 0, 0) || has(0, 1, 0, 0) || has(1, 0, 0, 0) || has(1, 1, 1, 1)) return false;
  for (int a0 = 0; a0 < 2; ++a0)
    for (int a1 = 0; a1 < 2; ++a1)
      if (!v.meas.count(Row{val(a0), val(a1)})) return false;
  return true;
}

bool is_ks_team(const Team& team, std::vector<Row>* f_out) {
  TeamRoles roles = TeamRoles::infer(team.domain());
  if (roles.sites() != 4 || !roles.z.empty())
    throw std::invalid_argument("is_ks_team: expects an empirical team with 4 sites");
  EmpiricalView v = empirical_view(team);
  if (!values_within(team, v.xcol, 0, 17) || !values_within(team, v.ycol, 0, 1)) return false;
  KSSpec spec = KSSpec::standard();
  std::set<Row, RowLess> Q;
  for (const auto& q : spec.Q) {
    Row b;
    for (int e : q) b.push_back(val(e));
    Q.insert(std::move(b));
  }

  // Condition (i): each quadruple of P occurs with exactly one outcome, in Q.
  std::vector<Row> f;
  for (const auto& tuple : spec.P) {
    Row a;
    for (int e : tuple) a.push_back(val(e));
    std::vector<Row> seen;
    for (const auto& [am, b] : v.pairs)
      if (am == a) seen.push_back(b);
    if (seen.size() != 1 || !Q.count(seen[0])) return false;
    f.push_back(seen[0]);
  }

  // Condition (ii): closure of the occurring pairs under the S_4 action.
  for (const auto& [a, b] : v.pairs)
    for (const auto& pi : permutations(4))
      if (!v.pairs.count({act(pi, a), act(pi, b)})) return false;

  if (f_out) *f_out = std::move(f);
  return true;
}

// ---------------------------------------------------------------------------
// Local hidden-variable oracle
// ---------------------------------------------------------------------------

LocalModelResult find_local_model(const Team& team, std::size_t max_instructions) {
  TeamRoles roles = TeamRoles::infer(team.domain());
  if (roles.x.size() != roles.y.size())
    throw std::invalid_argument("find_local_model: unpaired measurement/outcome columns");
  LocalModelResult result;
  if (team.empty()) {
    result.model_exists = true;
    result.certificate = "empty team: the empty model";
    return result;
  }
  EmpiricalView v = empirical_view(team);
  const std::size_t n = roles.sites();

  // Instruction slots: one outcome choice per (site, occurring measurement).
  struct Slot {
    std::size_t site;
    Value a;
    std::vector<Value> outs;
  };
  std::vector<Slot> slots;
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Value> outs = team.column_values(v.ycol[i]);
    for (Value a : team.column_values(v.xcol[i])) {
      if (outs.size() > max_instructions / total)
        throw std::runtime_error("find_local_model: instruction space exceeds cap");
      total *= outs.size();
      slots.push_back({i, a, outs});
    }
  }
  result.instructions_total = total;

  auto print_instruction = [&slots](const std::vector<std::size_t>& idx) {
    std::ostringstream os;
    std::size_t last_site = std::size_t(-1);
    for (std::size_t k = 0; k < slots.size(); ++k) {
      if (slots[k].site != last_site) {
        os << (last_site == std::size_t(-1) ? "" : " | ") << "site " << slots[k].site << ":";
        last_site = slots[k].site;
      }
      os << ' ' << value_token(slots[k].a) << "->" << value_token(slots[k].outs[idx[k]]);
    }
    return os.str();
  };

  std::set<std::pair<Row, Row>> covered;
  std::vector<std::size_t> idx(slots.size(), 0);
  while (true) {
    // Consistency: for every occurring measurement tuple, the answered row
    // must belong to the team.
    bool consistent = true;
    std::vector<std::pair<Row, Row>> produced;
    for (const Row& a : v.meas) {
      Row b(n);
      for (std::size_t k = 0; k < slots.size(); ++k) {
        for (std::size_t i = 0; i < n; ++i)
          if (slots[k].site == i && a[i] == slots[k].a) b[i] = slots[k].outs[idx[k]];
      }
      if (!v.pairs.count({a, b})) {
        consistent = false;
        break;
      }
      produced.push_back({a, b});
    }
    if (consistent) {
      ++result.instructions_consistent;
      result.model.push_back(print_instruction(idx));
      covered.insert(produced.begin(), produced.end());
    }
    std::size_t carry = 0;
    while (carry < idx.size() && ++idx[carry] == slots[carry].outs.size()) {
      idx[carry] = 0;
      ++carry;
    }
    if (carry == idx.size()) break;
  }

  for (const auto& pair : v.pairs) {
    if (!covered.count(pair)) {
      std::ostringstream os;
      os << "no consistent instruction answers (";
      for (std::size_t i = 0; i < pair.first.size(); ++i)
        os << (i ? "," : "") << value_token(pair.first[i]);
      os << ") with (";
      for (std::size_t i = 0; i < pair.second.size(); ++i)
        os << (i ? "," : "") << value_token(pair.second[i]);
      os << "); " << result.instructions_consistent << " of " << result.instructions_total
         << " instructions consistent";
      result.certificate = os.str();
      result.model.clear();
      return result;
    }
  }
  result.model_exists = true;
  std::ostringstream os;
  os << "model: union of " << result.instructions_consistent << " consistent instructions (of "
     << result.instructions_total << ")";
  result.certificate = os.str();
  return result;
}

bool verify_no_local_model(const Team& team, std::size_t max_instructions) {
  return !find_local_model(team, max_instructions).model_exists;
}

// ---------------------------------------------------------------------------
// Noncontextuality oracle
// ---------------------------------------------------------------------------

NoncontextualResult verify_no_noncontextual(const KSSpec& spec) {
  NoncontextualResult result;
  result.parity_pass = spec.double_cover() && spec.P.size() % 2 == 1;

  const std::size_t np = spec.P.size(), nq = spec.Q.size();
  std::vector<std::size_t> choice(np, 0);
  result.no_noncontextual = true;
  while (true) {
    ++result.assignments_checked;
    std::map<int, int> assigned;
    bool contextual = false;
    for (std::size_t t = 0; t < np && !contextual; ++t)
      for (std::size_t pos = 0; pos < spec.P[t].size(); ++pos) {
        int element = spec.P[t][pos];
        int bit = spec.Q[choice[t]][pos];
        auto [it, fresh] = assigned.try_emplace(element, bit);
        if (!fresh && it->second != bit) {
          contextual = true;
          break;
        }
      }
    if (!contextual) {
      result.no_noncontextual = false;
      std::ostringstream os;
      os << "noncontextual assignment found:";
      for (std::size_t t = 0; t < np; ++t) os << ' ' << choice[t];
      result.certificate = os.str();
      return result;
    }
    std::size_t carry = 0;
    while (carry < np && ++choice[carry] == nq) {
      choice[carry] = 0;
      ++carry;
    }
    if (carry == np) break;
  }
  std::ostringstream os;
  os << "all " << result.assignments_checked << " assignments are contextual; parity check "
     << (result.parity_pass ? "passes" : "fails") << " (double cover "
     << (spec.double_cover() ? "yes" : "no") << ", |P| = " << spec.P.size() << ")";
  result.certificate = os.str();
  return result;
}

}  // namespace teamsem
