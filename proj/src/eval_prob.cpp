#include "teamsem/eval.hpp"

#include <unordered_map>

namespace teamsem {

namespace {

Row concat(const Row& a, const Row& b) {
  Row out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

class ProbEvaluator {
 public:
  explicit ProbEvaluator(const EvalContext& ctx) : ctx_(ctx) {}

  EvalResult run(const ProbTeam& team, const FormulaPtr& f) {
    bool ok = eval(team, f);
    EvalResult res;
    res.verdict = ok ? Verdict::True : Verdict::False;
    res.bounded = bounded_;
    return res;
  }

 private:
  // Weakly flat subformulas are decided on the possibilistic collapse.
  bool eval_on_collapse(const ProbTeam& team, const FormulaPtr& f) {
    EvalResult r = eval_possibilistic(team.collapse(), f, ctx_);
    if (r.verdict == Verdict::Inconclusive)
      throw UnsupportedFormula("budget exhausted while evaluating on the collapse");
    bounded_ = bounded_ || r.bounded;
    return r.verdict == Verdict::True;
  }

  bool eval(const ProbTeam& team, const FormulaPtr& f) {
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
        return prob_indep_atom_holds(team, f->left, f->cond, f->right);
      case FormulaKind::And:
        return eval(team, f->lhs) && eval(team, f->rhs);
      case FormulaKind::Or:
        // A splitjunction of weakly flat parts is itself weakly flat, so the
        // collapse decides it. General splitjunctions would require searching
        // over continuous decompositions X = rY + (1-r)Z.
        if (is_weakly_flat(f->lhs) && is_weakly_flat(f->rhs)) return eval_on_collapse(team, f);
        throw UnsupportedFormula(
            "splitjunction over a non-weakly-flat disjunct has no exact decision procedure");
      case FormulaKind::Forall: {
        std::vector<Value> dom = ctx_.quantifier_domain;
        if (dom.empty()) dom = team.collapse().occurring_values();
        return eval(team.duplicate(f->var, role_from_name(f->var), dom), f->body);
      }
      case FormulaKind::Exists: {
        auto it = ctx_.witness_kernels.find(f->var);
        if (it != ctx_.witness_kernels.end()) {
          return eval(team.supplement(f->var, role_from_name(f->var), it->second), f->body);
        }
        if (is_weakly_flat(f)) return eval_on_collapse(team, f);
        throw UnsupportedFormula("existential needs a witness kernel for variable '" + f->var +
                                 "'");
      }
      case FormulaKind::ExistsSort:
      case FormulaKind::ForallSort:
        if (is_weakly_flat(f)) return eval_on_collapse(team, f);
        throw UnsupportedFormula("sort quantifiers outside the weakly flat fragment");
    }
    return false;
  }

  const EvalContext& ctx_;
  bool bounded_ = false;
};

}  // namespace

bool prob_indep_atom_holds(const ProbTeam& team, const std::vector<std::string>& left,
                           const std::vector<std::string>& cond,
                           const std::vector<std::string>& right) {
  std::vector<int> lc = team.require_columns(left);
  std::vector<int> cc = team.require_columns(cond);
  std::vector<int> rc = team.require_columns(right);

  // Group the support by condition value; within each group tally the mass
  // of every left value, right value and (left, right) pair. The defining
  // identity |X_lc| * |X_cr| = |X_lcr| * |X_c| then has to hold for every
  // combination of an occurring left value with an occurring right value
  // (combinations with a non-occurring side are zero on both sides).
  struct Section {
    Rat total = 0;
    std::unordered_map<Row, Rat, RowHash> lefts, rights, pairs;
  };
  std::unordered_map<Row, Section, RowHash> sections;
  for (std::size_t i = 0; i < team.size(); ++i) {
    const Row& r = team.rows()[i];
    const Rat& w = team.weights()[i];
    Section& sec = sections[project_row(r, cc)];
    Row lv = project_row(r, lc);
    Row rv = project_row(r, rc);
    sec.total += w;
    sec.pairs[concat(lv, rv)] += w;
    sec.lefts[lv] += w;
    sec.rights[rv] += w;
  }
  for (const auto& [key, sec] : sections) {
    for (const auto& [lv, lw] : sec.lefts) {
      for (const auto& [rv, rw] : sec.rights) {
        auto it = sec.pairs.find(concat(lv, rv));
        Rat pw = it == sec.pairs.end() ? Rat(0) : it->second;
        if (lw * rw != pw * sec.total) return false;
      }
    }
  }
  return true;
}

EvalResult eval_probabilistic(const ProbTeam& team, const FormulaPtr& f, EvalContext ctx) {
  ProbEvaluator ev(ctx);
  return ev.run(team, f);
}

}  // namespace teamsem
