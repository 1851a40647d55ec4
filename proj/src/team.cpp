#include "teamsem/team.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace teamsem {

char role_letter(Role r) {
  switch (r) {
    case Role::Measurement: return 'm';
    case Role::Outcome: return 'o';
    case Role::Hidden: return 'h';
    case Role::Plain: return 'p';
  }
  return 'p';
}

std::optional<Role> role_from_letter(const std::string& s) {
  if (s == "m" || s == "measurement") return Role::Measurement;
  if (s == "o" || s == "outcome") return Role::Outcome;
  if (s == "h" || s == "hidden") return Role::Hidden;
  if (s == "p" || s == "plain" || s == "-") return Role::Plain;
  return std::nullopt;
}

Role role_from_name(const std::string& name) {
  if (name.empty()) return Role::Plain;
  switch (name[0]) {
    case 'x': return Role::Measurement;
    case 'y': return Role::Outcome;
    case 'z': return Role::Hidden;
    default: return Role::Plain;
  }
}

Row project_row(const Row& row, const std::vector<int>& cols) {
  Row out;
  out.reserve(cols.size());
  for (int c : cols) out.push_back(row[static_cast<std::size_t>(c)]);
  return out;
}

namespace {

void sort_unique(std::vector<Row>& rows) {
  std::sort(rows.begin(), rows.end(), row_less);
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
}

int find_column(const std::vector<Variable>& domain, const std::string& name) {
  for (std::size_t i = 0; i < domain.size(); ++i)
    if (domain[i].name == name) return static_cast<int>(i);
  return -1;
}

std::vector<int> find_columns(const std::vector<Variable>& domain,
                              const std::vector<std::string>& names) {
  std::vector<int> cols;
  cols.reserve(names.size());
  for (const auto& n : names) {
    int c = find_column(domain, n);
    if (c < 0) throw std::out_of_range("no variable named '" + n + "'");
    cols.push_back(c);
  }
  return cols;
}

}  // namespace

void Team::check_domain() const {
  std::set<std::string> seen;
  for (const auto& v : domain_) {
    if (v.name.empty()) throw std::invalid_argument("empty variable name");
    if (!seen.insert(v.name).second)
      throw std::invalid_argument("duplicate variable '" + v.name + "'");
  }
}

Team Team::from_rows(std::vector<Variable> domain, std::vector<Row> rows) {
  Team t(std::move(domain));
  for (const auto& r : rows) {
    if (r.size() != t.domain_.size())
      throw std::invalid_argument("row width does not match domain");
  }
  sort_unique(rows);
  t.rows_ = std::move(rows);
  return t;
}

int Team::column(const std::string& name) const { return find_column(domain_, name); }

int Team::require_column(const std::string& name) const {
  int c = column(name);
  if (c < 0) throw std::out_of_range("no variable named '" + name + "'");
  return c;
}

std::vector<int> Team::require_columns(const std::vector<std::string>& names) const {
  return find_columns(domain_, names);
}

bool Team::contains(const Row& row) const {
  return std::binary_search(rows_.begin(), rows_.end(), row, row_less);
}

std::vector<Value> Team::occurring_values() const {
  std::set<Value, ValueLess> vals;
  for (const auto& r : rows_)
    for (Value v : r) vals.insert(v);
  return {vals.begin(), vals.end()};
}

std::vector<Value> Team::column_values(int col) const {
  std::set<Value, ValueLess> vals;
  for (const auto& r : rows_) vals.insert(r[static_cast<std::size_t>(col)]);
  return {vals.begin(), vals.end()};
}

Team Team::project(const std::vector<std::string>& names) const {
  std::vector<int> cols = require_columns(names);
  std::vector<Variable> dom;
  dom.reserve(cols.size());
  for (int c : cols) dom.push_back(domain_[static_cast<std::size_t>(c)]);
  std::vector<Row> rows;
  rows.reserve(rows_.size());
  for (const auto& r : rows_) rows.push_back(project_row(r, cols));
  return from_rows(std::move(dom), std::move(rows));
}

std::size_t Team::slot_for(const std::string& v) const {
  int c = find_column(domain_, v);
  return c >= 0 ? static_cast<std::size_t>(c) : domain_.size();
}

Team Team::duplicate(const std::string& v, Role role, const std::vector<Value>& values) const {
  if (values.empty()) throw std::invalid_argument("duplication over an empty value set");
  std::size_t slot = slot_for(v);
  std::vector<Variable> dom = domain_;
  if (slot == dom.size()) dom.push_back({v, role});
  std::vector<Row> rows;
  rows.reserve(rows_.size() * values.size());
  for (const auto& r : rows_) {
    Row ext = r;
    ext.resize(dom.size());
    for (Value a : values) {
      ext[slot] = a;
      rows.push_back(ext);
    }
  }
  return from_rows(std::move(dom), std::move(rows));
}

Team Team::supplement(const std::string& v, Role role,
                      const std::function<std::vector<Value>(const Row&)>& F) const {
  std::size_t slot = slot_for(v);
  std::vector<Variable> dom = domain_;
  if (slot == dom.size()) dom.push_back({v, role});
  std::vector<Row> rows;
  for (const auto& r : rows_) {
    std::vector<Value> choice = F(r);
    if (choice.empty()) throw std::invalid_argument("supplement kernel returned an empty set");
    Row ext = r;
    ext.resize(dom.size());
    for (Value a : choice) {
      ext[slot] = a;
      rows.push_back(ext);
    }
  }
  return from_rows(std::move(dom), std::move(rows));
}

ProbTeam ProbTeam::from_weighted_rows(std::vector<Variable> domain, std::vector<Row> rows,
                                      std::vector<Rat> weights, bool normalize) {
  if (rows.size() != weights.size())
    throw std::invalid_argument("rows and weights differ in length");
  // Validates the domain.
  Team shape(domain);
  for (const auto& r : rows) {
    if (r.size() != domain.size()) throw std::invalid_argument("row width does not match domain");
  }

  std::map<Row, Rat, bool (*)(const Row&, const Row&)> acc(row_less);
  Rat total = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (weights[i] < 0) throw std::invalid_argument("negative weight");
    if (weights[i] == 0) continue;
    acc[rows[i]] += weights[i];
    total += weights[i];
  }
  if (normalize) {
    if (total == 0) throw std::invalid_argument("cannot normalize the zero distribution");
  } else if (total != 1) {
    throw std::invalid_argument("weights sum to " + rat_to_string(total) + ", expected 1");
  }

  ProbTeam pt;
  pt.domain_ = std::move(domain);
  pt.rows_.reserve(acc.size());
  pt.weights_.reserve(acc.size());
  for (auto& [row, w] : acc) {
    pt.rows_.push_back(row);
    pt.weights_.push_back(normalize ? Rat(w / total) : w);
  }
  return pt;
}

ProbTeam ProbTeam::uniform(const Team& team) {
  if (team.empty()) throw std::invalid_argument("uniform lift of an empty team");
  std::vector<Rat> w(team.size(), Rat(1, static_cast<long>(team.size())));
  return from_weighted_rows(team.domain(), team.rows(), std::move(w));
}

int ProbTeam::column(const std::string& name) const { return find_column(domain_, name); }

int ProbTeam::require_column(const std::string& name) const {
  int c = column(name);
  if (c < 0) throw std::out_of_range("no variable named '" + name + "'");
  return c;
}

std::vector<int> ProbTeam::require_columns(const std::vector<std::string>& names) const {
  return find_columns(domain_, names);
}

Rat ProbTeam::weight(const Row& row) const {
  auto it = std::lower_bound(rows_.begin(), rows_.end(), row, row_less);
  if (it == rows_.end() || *it != row) return Rat(0);
  return weights_[static_cast<std::size_t>(it - rows_.begin())];
}

Team ProbTeam::collapse() const { return Team::from_rows(domain_, rows_); }

Rat ProbTeam::marginal(const std::vector<int>& cols, const Row& vals) const {
  if (cols.size() != vals.size()) throw std::invalid_argument("columns and values differ in length");
  Rat total = 0;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    bool match = true;
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (rows_[i][static_cast<std::size_t>(cols[j])] != vals[j]) {
        match = false;
        break;
      }
    }
    if (match) total += weights_[i];
  }
  return total;
}

ProbTeam ProbTeam::project(const std::vector<std::string>& names) const {
  std::vector<int> cols = require_columns(names);
  std::vector<Variable> dom;
  dom.reserve(cols.size());
  for (int c : cols) dom.push_back(domain_[static_cast<std::size_t>(c)]);
  std::vector<Row> rows;
  rows.reserve(rows_.size());
  for (const auto& r : rows_) rows.push_back(project_row(r, cols));
  return from_weighted_rows(std::move(dom), std::move(rows), weights_);
}

ProbTeam ProbTeam::duplicate(const std::string& v, Role role,
                             const std::vector<Value>& values) const {
  if (values.empty()) throw std::invalid_argument("duplication over an empty value set");
  Kernel uniform_kernel = [&values](const Row&) {
    std::vector<std::pair<Value, Rat>> out;
    Rat w(1, static_cast<long>(values.size()));
    for (Value a : values) out.emplace_back(a, w);
    return out;
  };
  return supplement(v, role, uniform_kernel);
}

ProbTeam ProbTeam::supplement(const std::string& v, Role role, const Kernel& F) const {
  int existing = find_column(domain_, v);
  std::size_t slot = existing >= 0 ? static_cast<std::size_t>(existing) : domain_.size();
  std::vector<Variable> dom = domain_;
  if (existing < 0) dom.push_back({v, role});

  std::vector<Row> rows;
  std::vector<Rat> wts;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    auto dist = F(rows_[i]);
    Rat sum = 0;
    Row ext = rows_[i];
    ext.resize(dom.size());
    for (const auto& [a, p] : dist) {
      if (p < 0) throw std::invalid_argument("supplement kernel produced a negative weight");
      sum += p;
      if (p == 0) continue;
      ext[slot] = a;
      rows.push_back(ext);
      wts.push_back(weights_[i] * p);
    }
    if (sum != 1)
      throw std::invalid_argument("supplement kernel weights sum to " + rat_to_string(sum) +
                                  ", expected 1");
  }
  return from_weighted_rows(std::move(dom), std::move(rows), std::move(wts));
}

ProbTeam scaled_union(const ProbTeam& x, const ProbTeam& y, const Rat& r) {
  if (r < 0 || r > 1) throw std::invalid_argument("mixing weight outside [0,1]");
  if (x.domain() != y.domain())
    throw std::invalid_argument("scaled union over different domains");
  if (r == 1) return x;
  if (r == 0) return y;
  std::vector<Row> rows = x.rows();
  std::vector<Rat> wts;
  wts.reserve(x.size() + y.size());
  for (const auto& w : x.weights()) wts.push_back(w * r);
  Rat s = 1 - r;
  for (std::size_t i = 0; i < y.size(); ++i) {
    rows.push_back(y.rows()[i]);
    wts.push_back(y.weights()[i] * s);
  }
  return ProbTeam::from_weighted_rows(x.domain(), std::move(rows), std::move(wts));
}

std::vector<std::string> names_with_role(const std::vector<Variable>& domain, Role role) {
  std::vector<std::string> out;
  for (const auto& v : domain)
    if (v.role == role) out.push_back(v.name);
  return out;
}

namespace {

// Empirical domain of a hidden-variable team: its measurement and outcome
// variables, in the order the empirical team declares them.
std::vector<std::string> empirical_names(const Team& empirical) {
  std::vector<std::string> names;
  for (const auto& v : empirical.domain()) names.push_back(v.name);
  return names;
}

}  // namespace

bool realizes(const Team& hidden, const Team& empirical) {
  std::vector<std::string> names = empirical_names(empirical);
  Team projected = hidden.project(names);
  // Compare row sets; roles may differ between the two domains.
  return projected.rows() == empirical.rows();
}

namespace {

bool prob_realizes_impl(const ProbTeam& hidden, const ProbTeam& empirical, bool uniform) {
  std::vector<std::string> xs = names_with_role(empirical.domain(), Role::Measurement);
  std::vector<std::string> ys = names_with_role(empirical.domain(), Role::Outcome);
  std::vector<int> excols = empirical.require_columns(xs);
  std::vector<int> eycols = empirical.require_columns(ys);
  std::vector<int> hxcols = hidden.require_columns(xs);
  std::vector<int> hycols = hidden.require_columns(ys);

  // Group masses by measurement tuple and by (measurement, outcome) tuple.
  using Map = std::unordered_map<Row, Rat, RowHash>;
  auto tally = [](const ProbTeam& pt, const std::vector<int>& cols) {
    Map m;
    for (std::size_t i = 0; i < pt.size(); ++i) m[project_row(pt.rows()[i], cols)] += pt.weights()[i];
    return m;
  };
  auto tally2 = [](const ProbTeam& pt, const std::vector<int>& xcols, const std::vector<int>& ycols) {
    Map m;
    for (std::size_t i = 0; i < pt.size(); ++i) {
      Row key = project_row(pt.rows()[i], xcols);
      Row yv = project_row(pt.rows()[i], ycols);
      key.insert(key.end(), yv.begin(), yv.end());
      m[key] += pt.weights()[i];
    }
    return m;
  };

  Map ex = tally(empirical, excols);
  Map hx = tally(hidden, hxcols);
  for (const auto& [a, w] : ex)
    if (hx.find(a) == hx.end()) return false;
  for (const auto& [a, w] : hx)
    if (ex.find(a) == ex.end()) return false;
  if (uniform) {
    for (const auto& [a, w] : ex)
      if (hx.at(a) != w) return false;
  }

  Map exy = tally2(empirical, excols, eycols);
  Map hxy = tally2(hidden, hxcols, hycols);
  std::unordered_set<Row, RowHash> keys;
  for (const auto& [k, w] : exy) keys.insert(k);
  for (const auto& [k, w] : hxy) keys.insert(k);
  std::size_t nx = excols.size();
  for (const auto& k : keys) {
    Row a(k.begin(), k.begin() + static_cast<long>(nx));
    auto get = [](const Map& m, const Row& key) {
      auto it = m.find(key);
      return it == m.end() ? Rat(0) : it->second;
    };
    // |X_{xy=ab}| * |Y_{x=a}| == |Y_{xy=ab}| * |X_{x=a}|
    if (get(exy, k) * get(hx, a) != get(hxy, k) * get(ex, a)) return false;
  }
  return true;
}

}  // namespace

bool prob_realizes(const ProbTeam& hidden, const ProbTeam& empirical) {
  return prob_realizes_impl(hidden, empirical, false);
}

bool prob_uniform_realizes(const ProbTeam& hidden, const ProbTeam& empirical) {
  return prob_realizes_impl(hidden, empirical, true);
}

}  // namespace teamsem
