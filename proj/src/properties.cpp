#include "teamsem/properties.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace teamsem {

std::string to_string(PropertyId p) {
  switch (p) {
    case PropertyId::WD: return "WD";
    case PropertyId::SD: return "SD";
    case PropertyId::NS: return "NS";
    case PropertyId::SV: return "SV";
    case PropertyId::ZI: return "ZI";
    case PropertyId::PI: return "PI";
    case PropertyId::OI: return "OI";
    case PropertyId::ML: return "ML";
    case PropertyId::LOCAL: return "LOCAL";
  }
  return "?";
}

std::optional<PropertyId> property_from_string(const std::string& s) {
  if (s == "WD") return PropertyId::WD;
  if (s == "SD") return PropertyId::SD;
  if (s == "NS") return PropertyId::NS;
  if (s == "SV") return PropertyId::SV;
  if (s == "ZI") return PropertyId::ZI;
  if (s == "PI") return PropertyId::PI;
  if (s == "OI") return PropertyId::OI;
  if (s == "ML") return PropertyId::ML;
  if (s == "LOCAL") return PropertyId::LOCAL;
  return std::nullopt;
}

TeamRoles TeamRoles::infer(const std::vector<Variable>& domain) {
  TeamRoles roles;
  for (const auto& v : domain) {
    switch (v.role) {
      case Role::Measurement: roles.x.push_back(v.name); break;
      case Role::Outcome: roles.y.push_back(v.name); break;
      case Role::Hidden: roles.z.push_back(v.name); break;
      case Role::Plain: break;
    }
  }
  // Site order: shorter names first, then lexicographic. For the usual
  // x0..x9, x10.. naming this is numeric order.
  auto natural = [](const std::string& a, const std::string& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  };
  std::sort(roles.x.begin(), roles.x.end(), natural);
  std::sort(roles.y.begin(), roles.y.end(), natural);
  std::sort(roles.z.begin(), roles.z.end(), natural);
  return roles;
}

namespace {

std::vector<std::string> others(const std::vector<std::string>& vars, std::size_t i) {
  std::vector<std::string> out;
  for (std::size_t j = 0; j < vars.size(); ++j)
    if (j != i) out.push_back(vars[j]);
  return out;
}

std::vector<std::string> cat(std::vector<std::string> a, const std::vector<std::string>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

void require_paired(const TeamRoles& roles) {
  if (roles.x.size() != roles.y.size())
    throw std::invalid_argument("property needs as many outcome variables as measurements (got " +
                                std::to_string(roles.x.size()) + " measurements, " +
                                std::to_string(roles.y.size()) + " outcomes)");
  if (roles.x.empty()) throw std::invalid_argument("property needs at least one measurement site");
}

}  // namespace

FormulaPtr property_formula(PropertyId p, const TeamRoles& roles) {
  const std::size_t n = roles.x.size();
  std::vector<FormulaPtr> parts;
  switch (p) {
    case PropertyId::WD:
      require_paired(roles);
      for (std::size_t i = 0; i < n; ++i)
        parts.push_back(Formula::dep(cat(roles.x, roles.z), {roles.y[i]}));
      break;
    case PropertyId::SD:
      require_paired(roles);
      for (std::size_t i = 0; i < n; ++i)
        parts.push_back(Formula::dep(cat({roles.x[i]}, roles.z), {roles.y[i]}));
      break;
    case PropertyId::NS:
      require_paired(roles);
      for (std::size_t i = 0; i < n; ++i)
        parts.push_back(Formula::indep(others(roles.x, i), {roles.x[i]}, {roles.y[i]}));
      break;
    case PropertyId::SV:
      return Formula::constant(roles.z);
    case PropertyId::ZI:
      return Formula::indep(roles.z, {}, roles.x);
    case PropertyId::PI:
      require_paired(roles);
      for (std::size_t i = 0; i < n; ++i)
        parts.push_back(
            Formula::indep(others(roles.x, i), cat({roles.x[i]}, roles.z), {roles.y[i]}));
      break;
    case PropertyId::OI:
      require_paired(roles);
      for (std::size_t i = 0; i < n; ++i)
        parts.push_back(
            Formula::indep({roles.y[i]}, cat(roles.x, roles.z), others(roles.y, i)));
      break;
    case PropertyId::ML:
      if (roles.x.empty()) throw std::invalid_argument("ML needs measurement variables");
      for (std::size_t i = 0; i < n; ++i)
        parts.push_back(Formula::indep({roles.x[i]}, roles.z, others(roles.x, i)));
      break;
    case PropertyId::LOCAL:
      return Formula::conj(property_formula(PropertyId::PI, roles),
                           property_formula(PropertyId::OI, roles));
  }
  return Formula::conj_all(parts);
}

namespace {

// Atom-by-atom check of a conjunction of independence atoms.
template <typename AtomFn>
bool check_conjunction(const FormulaPtr& f, const AtomFn& atom) {
  if (f->kind == FormulaKind::And) {
    return check_conjunction(f->lhs, atom) && check_conjunction(f->rhs, atom);
  }
  if (f->kind != FormulaKind::Indep) throw std::logic_error("expected an independence atom");
  return atom(f->left, f->cond, f->right);
}

}  // namespace

bool check_property(const Team& team, PropertyId p) {
  if (p == PropertyId::LOCAL) return locality_holds(team);
  TeamRoles roles = TeamRoles::infer(team.domain());
  FormulaPtr f = property_formula(p, roles);
  return check_conjunction(f, [&](const auto& l, const auto& c, const auto& r) {
    return indep_atom_holds(team, l, c, r);
  });
}

bool check_property(const ProbTeam& team, PropertyId p) {
  if (p == PropertyId::LOCAL) return prob_locality_holds(team);
  TeamRoles roles = TeamRoles::infer(team.domain());
  FormulaPtr f = property_formula(p, roles);
  return check_conjunction(f, [&](const auto& l, const auto& c, const auto& r) {
    return prob_indep_atom_holds(team, l, c, r);
  });
}

namespace {

Row concat_rows(const Row& a, const Row& b) {
  Row out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

}  // namespace

bool locality_holds(const Team& team) {
  if (team.empty()) return true;
  TeamRoles roles = TeamRoles::infer(team.domain());
  require_paired(roles);
  const std::size_t n = roles.sites();
  std::vector<int> zc = team.require_columns(roles.z);
  std::vector<int> xc = team.require_columns(roles.x);
  std::vector<int> yc = team.require_columns(roles.y);

  // Group rows by hidden value. Only same-section row tuples matter: the
  // premise requires one row agreeing with all of s_0..s_{n-1} on z.
  std::unordered_map<Row, std::vector<const Row*>, RowHash> sections;
  for (const auto& r : team.rows()) sections[project_row(r, zc)].push_back(&r);

  for (const auto& [gamma, rows] : sections) {
    // Occurring measurement tuples, full (x, y) site-pair tuples, and the
    // per-site (x_i, y_i) options within this section.
    std::unordered_set<Row, RowHash> xs, xys;
    std::vector<std::vector<Row>> site_pairs(n);
    std::vector<std::unordered_set<Row, RowHash>> seen(n);
    for (const Row* r : rows) {
      xs.insert(project_row(*r, xc));
      Row pairs;
      for (std::size_t i = 0; i < n; ++i) {
        Row p{(*r)[static_cast<std::size_t>(xc[i])], (*r)[static_cast<std::size_t>(yc[i])]};
        pairs.insert(pairs.end(), p.begin(), p.end());
        if (seen[i].insert(p).second) site_pairs[i].push_back(p);
      }
      xys.insert(pairs);
    }
    // Every combination of per-site pairs whose measurement half occurs as a
    // row must itself occur as a row.
    std::vector<std::size_t> idx(n, 0);
    while (true) {
      Row a, ab;
      for (std::size_t i = 0; i < n; ++i) {
        const Row& p = site_pairs[i][idx[i]];
        a.push_back(p[0]);
        ab.insert(ab.end(), p.begin(), p.end());
      }
      if (xs.count(a) && !xys.count(ab)) return false;
      std::size_t i = 0;
      while (i < n && ++idx[i] == site_pairs[i].size()) {
        idx[i] = 0;
        ++i;
      }
      if (i == n) break;
    }
  }
  return true;
}

bool prob_locality_holds(const ProbTeam& team) {
  TeamRoles roles = TeamRoles::infer(team.domain());
  require_paired(roles);
  const std::size_t n = roles.sites();
  std::vector<int> zc = team.require_columns(roles.z);
  std::vector<int> xc = team.require_columns(roles.x);
  std::vector<int> yc = team.require_columns(roles.y);

  struct Section {
    std::unordered_map<Row, Rat, RowHash> joint_xy;           // (a, b) -> mass
    std::unordered_map<Row, Rat, RowHash> joint_x;            // a -> mass
    std::vector<std::unordered_map<Row, Rat, RowHash>> site_x, site_xy;
    std::vector<std::vector<Value>> xvals, yvals;
    std::vector<std::unordered_set<Value>> xseen, yseen;
    explicit Section(std::size_t n)
        : site_x(n), site_xy(n), xvals(n), yvals(n), xseen(n), yseen(n) {}
  };
  std::unordered_map<Row, Section, RowHash> sections;

  for (std::size_t k = 0; k < team.size(); ++k) {
    const Row& r = team.rows()[k];
    const Rat& w = team.weights()[k];
    auto [it, fresh] = sections.try_emplace(project_row(r, zc), n);
    Section& sec = it->second;
    Row a = project_row(r, xc);
    Row b = project_row(r, yc);
    sec.joint_xy[concat_rows(a, b)] += w;
    sec.joint_x[a] += w;
    for (std::size_t i = 0; i < n; ++i) {
      sec.site_x[i][Row{a[i]}] += w;
      sec.site_xy[i][Row{a[i], b[i]}] += w;
      if (sec.xseen[i].insert(a[i]).second) sec.xvals[i].push_back(a[i]);
      if (sec.yseen[i].insert(b[i]).second) sec.yvals[i].push_back(b[i]);
    }
  }

  auto get = [](const std::unordered_map<Row, Rat, RowHash>& m, const Row& k) {
    auto it = m.find(k);
    return it == m.end() ? Rat(0) : it->second;
  };

  for (const auto& [gamma, sec] : sections) {
    // Enumerate all combinations of occurring per-site measurement and
    // outcome values; combinations absent from the section must still
    // satisfy the identity (both sides then contain a zero factor or not).
    std::vector<std::size_t> dims;
    for (std::size_t i = 0; i < n; ++i) dims.push_back(sec.xvals[i].size());
    for (std::size_t i = 0; i < n; ++i) dims.push_back(sec.yvals[i].size());
    std::vector<std::size_t> idx(2 * n, 0);
    while (true) {
      Row a(n), b(n);
      for (std::size_t i = 0; i < n; ++i) a[i] = sec.xvals[i][idx[i]];
      for (std::size_t i = 0; i < n; ++i) b[i] = sec.yvals[i][idx[n + i]];
      Rat lhs = get(sec.joint_xy, concat_rows(a, b));
      Rat rhs = get(sec.joint_x, a);
      for (std::size_t i = 0; i < n; ++i) {
        lhs *= get(sec.site_x[i], Row{a[i]});
        rhs *= get(sec.site_xy[i], Row{a[i], b[i]});
      }
      if (lhs != rhs) return false;
      std::size_t i = 0;
      while (i < 2 * n && ++idx[i] == dims[i]) {
        idx[i] = 0;
        ++i;
      }
      if (i == 2 * n) break;
    }
  }
  return true;
}

bool mutual_indep_product_holds(const ProbTeam& team,
                                const std::vector<std::vector<std::string>>& tuples,
                                const std::vector<std::string>& cond) {
  const std::size_t n = tuples.size();
  if (n == 0) return true;
  std::vector<std::vector<int>> tc;
  for (const auto& t : tuples) tc.push_back(team.require_columns(t));
  std::vector<int> cc = team.require_columns(cond);

  struct Section {
    Rat total = 0;
    std::unordered_map<Row, Rat, RowHash> joint;
    std::vector<std::unordered_map<Row, Rat, RowHash>> parts;
    std::vector<std::vector<Row>> vals;
    std::vector<std::unordered_set<Row, RowHash>> seen;
    explicit Section(std::size_t n) : parts(n), vals(n), seen(n) {}
  };
  std::unordered_map<Row, Section, RowHash> sections;
  for (std::size_t k = 0; k < team.size(); ++k) {
    const Row& r = team.rows()[k];
    const Rat& w = team.weights()[k];
    auto [it, fresh] = sections.try_emplace(project_row(r, cc), n);
    Section& sec = it->second;
    sec.total += w;
    Row all;
    for (std::size_t i = 0; i < n; ++i) {
      Row v = project_row(r, tc[i]);
      all.insert(all.end(), v.begin(), v.end());
      sec.parts[i][v] += w;
      if (sec.seen[i].insert(v).second) sec.vals[i].push_back(v);
    }
    sec.joint[all] += w;
  }

  auto get = [](const std::unordered_map<Row, Rat, RowHash>& m, const Row& k) {
    auto it = m.find(k);
    return it == m.end() ? Rat(0) : it->second;
  };

  for (const auto& [key, sec] : sections) {
    std::vector<std::size_t> idx(n, 0);
    while (true) {
      Row all;
      Rat rhs = 1;
      for (std::size_t i = 0; i < n; ++i) {
        const Row& v = sec.vals[i][idx[i]];
        all.insert(all.end(), v.begin(), v.end());
        rhs *= get(sec.parts[i], v);
      }
      Rat lhs = get(sec.joint, all);
      for (std::size_t i = 0; i + 1 < n; ++i) lhs *= sec.total;
      if (lhs != rhs) return false;
      std::size_t i = 0;
      while (i < n && ++idx[i] == sec.vals[i].size()) {
        idx[i] = 0;
        ++i;
      }
      if (i == n) break;
    }
  }
  return true;
}

std::vector<IndepAtom> independence_atoms(const FormulaPtr& f) {
  std::vector<IndepAtom> out;
  check_conjunction(f, [&out](const auto& l, const auto& c, const auto& r) {
    out.push_back({l, c, r});
    return true;
  });
  return out;
}

}  // namespace teamsem
