#include "teamsem/eval.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace teamsem {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::True: return "true";
    case Verdict::False: return "false";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

struct BudgetExhausted {};

// Pair of projected rows used as a hash key.
Row concat(const Row& a, const Row& b) {
  Row out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

class Evaluator {
 public:
  Evaluator(const Team& root, const EvalContext& ctx) : ctx_(ctx), budget_(ctx.budget) {
    base_domain_ = ctx.quantifier_domain;
    if (base_domain_.empty()) base_domain_ = root.occurring_values();
    if (base_domain_.empty()) base_domain_ = {intern_value("0")};
  }

  bool run(const Team& team, const FormulaPtr& f) { return eval(team, f); }

  bool bounded() const { return bounded_; }

 private:
  void charge(std::uint64_t n = 1) {
    if (budget_ < n) throw BudgetExhausted{};
    budget_ -= n;
  }

  const std::vector<Value>& domain_for(Role role) const {
    auto it = sort_override_.find(role);
    return it == sort_override_.end() ? base_domain_ : it->second;
  }

  bool eval(const Team& team, const FormulaPtr& f) {
    charge();
    if (team.empty()) return true;  // the empty team satisfies every formula
    switch (f->kind) {
      case FormulaKind::Eq:
      case FormulaKind::Neq: {
        int cu = team.require_column(f->u);
        int cv = team.require_column(f->v);
        bool want_equal = f->kind == FormulaKind::Eq;
        for (const auto& r : team.rows()) {
          bool eq = r[static_cast<std::size_t>(cu)] == r[static_cast<std::size_t>(cv)];
          if (eq != want_equal) return false;
        }
        return true;
      }
      case FormulaKind::Indep:
        charge(team.size());
        return indep_atom_holds(team, f->left, f->cond, f->right);
      case FormulaKind::And:
        return eval(team, f->lhs) && eval(team, f->rhs);
      case FormulaKind::Or:
        return eval_or(team, f);
      case FormulaKind::Exists:
        return eval_exists(team, f);
      case FormulaKind::Forall: {
        const auto& dom = domain_for(role_from_name(f->var));
        Team dup = team.duplicate(f->var, role_from_name(f->var), dom);
        charge(dup.size());
        return eval(dup, f->body);
      }
      case FormulaKind::ExistsSort:
        return eval_sort(team, f, /*existential=*/true);
      case FormulaKind::ForallSort:
        return eval_sort(team, f, /*existential=*/false);
    }
    return false;
  }

  // X |= phi \/ psi  iff  some cover Y u Z = X has Y |= phi and Z |= psi.
  // Subteams may overlap and may be empty.
  bool eval_or(const Team& team, const FormulaPtr& f) {
    // The trivial covers (X, empty) and (empty, X) come first; they settle
    // the common case where one disjunct already holds in the whole team.
    if (eval(team, f->lhs)) return true;
    if (eval(team, f->rhs)) return true;

    std::size_t r = team.size();
    if (r > 24) charge(budget_ + 1);  // cover search is hopeless; give up honestly
    std::uint32_t full = (r >= 32) ? 0xffffffffu : ((1u << r) - 1);

    auto subteam = [&](std::uint32_t mask) {
      std::vector<Row> rows;
      for (std::size_t i = 0; i < r; ++i)
        if (mask & (1u << i)) rows.push_back(team.rows()[i]);
      return Team::from_rows(team.domain(), std::move(rows));
    };

    // sat flags for both halves on every subteam, then a superset sweep for
    // the right half: sup[m] says some superset of m satisfies rhs.
    std::vector<char> satL(full + 1), sup(full + 1);
    for (std::uint32_t m = 0; m <= full; ++m) {
      satL[m] = m == full ? 0 : eval(subteam(m), f->lhs);
      sup[m] = m == full ? 0 : eval(subteam(m), f->rhs);
    }
    // (full mask results are already known false from the trivial covers)
    for (std::uint32_t m = full; m-- > 0;) {
      if (sup[m]) continue;
      for (std::size_t i = 0; i < r; ++i) {
        std::uint32_t up = m | (1u << i);
        if (up != m && sup[up]) {
          sup[m] = 1;
          break;
        }
      }
    }
    for (std::uint32_t m = 0; m <= full; ++m) {
      if (satL[m] && sup[~m & full]) return true;
    }
    // The pair (full, full) was handled up front; (full, m) pairs reduce to
    // satL[full], also handled. Nothing found:
    return false;
  }

  // X |= Ev phi iff X[F/v] |= phi for some kernel F into nonempty value sets.
  // Kernels are tried with increasing maximal set size, functions first.
  bool eval_exists(const Team& team, const FormulaPtr& f) {
    const auto& dom = domain_for(role_from_name(f->var));
    std::size_t r = team.size();
    std::size_t k = dom.size();

    // All nonempty subsets of the domain, sorted by size then lexicographic
    // order; the first k entries are the singletons.
    std::vector<std::vector<Value>> subsets;
    for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
      std::vector<Value> s;
      for (std::size_t i = 0; i < k; ++i)
        if (mask & (1u << i)) s.push_back(dom[i]);
      subsets.push_back(std::move(s));
    }
    std::stable_sort(subsets.begin(), subsets.end(),
                     [](const auto& a, const auto& b) { return a.size() < b.size(); });

    std::vector<std::size_t> choice(r, 0);
    for (std::size_t max_size = 1; max_size <= k; ++max_size) {
      std::size_t limit = 0;
      while (limit < subsets.size() && subsets[limit].size() <= max_size) ++limit;
      // Odometer over per-row subset indices below `limit`. To avoid
      // re-testing combinations already covered at a smaller max size, at
      // least one row must pick a subset of exactly max_size (except in the
      // first round, where everything is new).
      std::fill(choice.begin(), choice.end(), 0);
      while (true) {
        bool has_max = max_size == 1;
        for (std::size_t i = 0; i < r && !has_max; ++i)
          has_max = subsets[choice[i]].size() == max_size;
        if (has_max) {
          charge(r);
          Team sup = team.supplement(f->var, role_from_name(f->var),
                                     [&](const Row& row) -> std::vector<Value> {
                                       // Rows are sorted and unique, so the index
                                       // of the row identifies the kernel entry.
                                       auto it = std::lower_bound(team.rows().begin(),
                                                                  team.rows().end(), row, row_less);
                                       return subsets[choice[static_cast<std::size_t>(
                                           it - team.rows().begin())]];
                                     });
          if (eval(sup, f->body)) return true;
        }
        // Advance the odometer.
        std::size_t i = 0;
        while (i < r && ++choice[i] == limit) {
          choice[i] = 0;
          ++i;
        }
        if (i == r) break;
      }
    }
    return false;
  }

  // Eh v: expand by a fresh sort of size 1..k_max, then Ev. Ah v dually.
  bool eval_sort(const Team& team, const FormulaPtr& f, bool existential) {
    Role role = role_from_name(f->var);
    auto saved = sort_override_;
    for (int size = 1; size <= ctx_.k_max; ++size) {
      std::vector<Value> fresh;
      for (int i = 0; i < size; ++i)
        fresh.push_back(intern_value("#" + std::to_string(size) + ":" + std::to_string(i)));
      sort_override_[role] = fresh;
      bool inner;
      if (existential) {
        FormulaPtr ex = Formula::exists(f->var, f->body);
        inner = eval(team, ex);
      } else {
        FormulaPtr all = Formula::forall(f->var, f->body);
        inner = eval(team, all);
      }
      sort_override_ = saved;
      if (existential && inner) return true;
      if (!existential && !inner) return false;  // a genuine counterexample sort
    }
    // No verdict from sizes up to k_max. For existentials a constancy atom on
    // the bound variable pins every witness to a single sort value, so size 1
    // was already complete; but only when no other quantifier in the body
    // draws from the same sort.
    if (existential && constancy_completeness(f)) return false;
    bounded_ = true;
    return !existential;
  }

  static bool collect_conjuncts(const FormulaPtr& f, std::vector<FormulaPtr>& out) {
    if (f->kind == FormulaKind::And) {
      return collect_conjuncts(f->lhs, out) && collect_conjuncts(f->rhs, out);
    }
    out.push_back(f);
    return true;
  }

  static bool mentions_same_sort_quantifier(const FormulaPtr& f, Role role) {
    switch (f->kind) {
      case FormulaKind::And:
      case FormulaKind::Or:
        return mentions_same_sort_quantifier(f->lhs, role) ||
               mentions_same_sort_quantifier(f->rhs, role);
      case FormulaKind::Exists:
      case FormulaKind::Forall:
      case FormulaKind::ExistsSort:
      case FormulaKind::ForallSort:
        if (role_from_name(f->var) == role) return true;
        return mentions_same_sort_quantifier(f->body, role);
      default:
        return false;
    }
  }

  bool constancy_completeness(const FormulaPtr& f) const {
    Role role = role_from_name(f->var);
    if (mentions_same_sort_quantifier(f->body, role)) return false;
    std::vector<FormulaPtr> conjuncts;
    collect_conjuncts(f->body, conjuncts);
    for (const auto& c : conjuncts) {
      if (c->kind != FormulaKind::Indep) continue;
      if (c->left != c->right || !c->cond.empty()) continue;  // want =(...)
      if (std::find(c->left.begin(), c->left.end(), f->var) != c->left.end()) return true;
    }
    return false;
  }

  const EvalContext& ctx_;
  std::uint64_t budget_;
  std::vector<Value> base_domain_;
  std::map<Role, std::vector<Value>> sort_override_;
  bool bounded_ = false;
};

}  // namespace

bool indep_atom_holds(const Team& team, const std::vector<std::string>& left,
                      const std::vector<std::string>& cond,
                      const std::vector<std::string>& right) {
  if (team.empty()) return true;
  std::vector<int> lc = team.require_columns(left);
  std::vector<int> cc = team.require_columns(cond);
  std::vector<int> rc = team.require_columns(right);

  struct Section {
    std::unordered_set<Row, RowHash> lefts, rights, pairs;
  };
  std::unordered_map<Row, Section, RowHash> sections;
  for (const auto& r : team.rows()) {
    Section& sec = sections[project_row(r, cc)];
    Row lv = project_row(r, lc);
    Row rv = project_row(r, rc);
    sec.pairs.insert(concat(lv, rv));
    sec.lefts.insert(std::move(lv));
    sec.rights.insert(std::move(rv));
  }
  // Within each section every left value must combine with every right
  // value on some row. Overlapping tuples are handled correctly because an
  // inconsistent combination can never occur as a pair.
  for (const auto& [key, sec] : sections) {
    if (sec.pairs.size() != sec.lefts.size() * sec.rights.size()) return false;
  }
  return true;
}

EvalResult eval_possibilistic(const Team& team, const FormulaPtr& f, EvalContext ctx) {
  Evaluator ev(team, ctx);
  EvalResult res;
  try {
    bool ok = ev.run(team, f);
    res.verdict = ok ? Verdict::True : Verdict::False;
    res.bounded = ev.bounded();
  } catch (const BudgetExhausted&) {
    res.verdict = Verdict::Inconclusive;
    res.note = "budget";
  }
  return res;
}

}  // namespace teamsem
