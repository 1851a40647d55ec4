#include "teamsem/derivation.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>
#include <tuple>
#include <unordered_map>

#include "teamsem/eval.hpp"
#include "teamsem/formula.hpp"
#include "teamsem/io.hpp"
#include "teamsem/value.hpp"

namespace teamsem {

namespace {

std::vector<int> canon(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::vector<int> set_union(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<int> set_minus(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<int> set_intersect(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool is_subset(const std::vector<int>& a, const std::vector<int>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

struct FactHash {
  std::size_t operator()(const AtomFact& f) const {
    std::size_t h = 1469598103934665603ull;
    auto mix = [&h](const std::vector<int>& v) {
      h ^= v.size() + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      for (int x : v) h ^= std::size_t(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    };
    mix(f.left);
    mix(f.cond);
    mix(f.right);
    return h;
  }
};

}  // namespace

bool AtomFact::operator<(const AtomFact& o) const {
  return std::tie(left, cond, right) < std::tie(o.left, o.cond, o.right);
}

AtomFact make_fact(std::vector<int> left, std::vector<int> cond, std::vector<int> right) {
  return AtomFact{canon(std::move(left)), canon(std::move(cond)), canon(std::move(right))};
}

// ---------------------------------------------------------------------------
// Saturation
// ---------------------------------------------------------------------------

namespace {

// Derived facts with their producing rule applications. Fact ids double as
// step indices; inputs always point at earlier ids.
struct Saturation {
  std::vector<AtomFact> facts;
  std::vector<int> rule_of;
  std::vector<std::vector<int>> inputs_of;
  std::unordered_map<AtomFact, int, FactHash> index;

  bool add(AtomFact f, int rule, std::vector<int> inputs) {
    auto [it, fresh] = index.try_emplace(f, int(facts.size()));
    if (!fresh) return false;
    facts.push_back(std::move(f));
    rule_of.push_back(rule);
    inputs_of.push_back(std::move(inputs));
    return true;
  }
};

using TupleKey = std::pair<std::vector<int>, std::vector<int>>;

// All subsets of {0..n-1} of size <= 3, used as side tuples for the rules
// that may introduce fresh variables.
std::vector<std::vector<int>> small_subsets(int n) {
  std::vector<std::vector<int>> out;
  out.push_back({});
  for (int a = 0; a < n; ++a) {
    out.push_back({a});
    for (int b = a + 1; b < n; ++b) {
      out.push_back({a, b});
      for (int c = b + 1; c < n; ++c) out.push_back({a, b, c});
    }
  }
  return out;
}

}  // namespace

std::optional<Derivation> entail(const std::vector<std::string>& universe,
                                 const std::vector<AtomFact>& premises, const AtomFact& goal,
                                 int max_depth, std::size_t max_facts, EntailStats* stats) {
  const int n = int(universe.size());
  auto in_universe = [n](const AtomFact& f) {
    auto ok = [n](const std::vector<int>& v) {
      return std::all_of(v.begin(), v.end(), [n](int x) { return 0 <= x && x < n; });
    };
    return ok(f.left) && ok(f.cond) && ok(f.right);
  };
  if (!in_universe(goal)) throw std::invalid_argument("entail: goal mentions unknown variables");

  Saturation sat;
  for (const AtomFact& p : premises) {
    if (!in_universe(p)) throw std::invalid_argument("entail: premise mentions unknown variables");
    sat.add(p, 0, {});
  }
  const auto sides = small_subsets(n);

  auto finish = [&](int rounds) -> std::optional<Derivation> {
    if (stats) {
      stats->facts_explored = sat.facts.size();
      stats->rounds = rounds;
    }
    auto it = sat.index.find(goal);
    if (it == sat.index.end()) return std::nullopt;
    // Collect the sub-DAG below the goal; ids are already topologically
    // ordered because inputs precede their conclusions.
    std::vector<int> needed{it->second};
    std::vector<char> seen(sat.facts.size(), 0);
    seen[it->second] = 1;
    for (std::size_t i = 0; i < needed.size(); ++i) {
      for (int j : sat.inputs_of[needed[i]]) {
        if (!seen[j]) {
          seen[j] = 1;
          needed.push_back(j);
        }
      }
    }
    std::sort(needed.begin(), needed.end());
    std::vector<int> remap(sat.facts.size(), -1);
    Derivation d;
    d.universe = universe;
    for (int id : needed) {
      remap[id] = int(d.steps.size());
      DerivationStep step;
      step.rule = sat.rule_of[id];
      step.fact = sat.facts[id];
      for (int j : sat.inputs_of[id]) step.inputs.push_back(remap[j]);
      d.steps.push_back(std::move(step));
    }
    return d;
  };

  if (sat.index.count(goal)) return finish(0);

  for (int round = 1; round <= max_depth; ++round) {
    const std::size_t frontier = sat.facts.size();

    // Premise-2 lookup tables over everything derived so far.
    std::map<TupleKey, std::vector<int>> by_cond_right;  // rule 7
    std::map<std::vector<int>, std::vector<int>> by_cond;  // rule 8
    std::map<TupleKey, std::vector<int>> by_left_cond;  // rule 9
    for (std::size_t i = 0; i < frontier; ++i) {
      const AtomFact& f = sat.facts[i];
      by_cond_right[{f.cond, f.right}].push_back(int(i));
      by_cond[f.cond].push_back(int(i));
      by_left_cond[{f.left, f.cond}].push_back(int(i));
    }

    if (round == 1) {
      for (const auto& x : sides)
        for (const auto& y : sides) sat.add(make_fact(x, x, y), 2, {});
    }

    for (std::size_t i = 0; i < frontier; ++i) {
      if (sat.facts.size() > max_facts) return finish(round);
      const AtomFact f = sat.facts[i];
      const int fi = int(i);

      if (f.left == f.right) {
        for (const auto& z : sides) sat.add(make_fact(f.left, f.cond, z), 1, {fi});
      }

      sat.add(AtomFact{f.right, f.cond, f.left}, 3, {fi});

      for (std::size_t k = 0; k < f.left.size(); ++k) {
        std::vector<int> l = f.left;
        l.erase(l.begin() + std::ptrdiff_t(k));
        sat.add(AtomFact{l, f.cond, f.right}, 4, {fi});
        for (std::size_t m = 0; m < f.right.size(); ++m) {
          std::vector<int> r = f.right;
          r.erase(r.begin() + std::ptrdiff_t(m));
          sat.add(AtomFact{l, f.cond, r}, 4, {fi});
        }
      }
      for (std::size_t m = 0; m < f.right.size(); ++m) {
        std::vector<int> r = f.right;
        r.erase(r.begin() + std::ptrdiff_t(m));
        sat.add(AtomFact{f.left, f.cond, r}, 4, {fi});
      }

      sat.add(make_fact(set_union(f.right, f.cond), f.cond, set_union(f.left, f.cond)), 6, {fi});

      // rule 7: f = (x, z, y), partner (u, z+x, y) yields (u, z, y).
      if (auto it = by_cond_right.find({set_union(f.cond, f.left), f.right});
          it != by_cond_right.end()) {
        for (int j : it->second)
          sat.add(AtomFact{sat.facts[j].left, f.cond, f.right}, 7, {fi, j});
      }

      // rule 8: f = (y, z, y), partner (w, y, u) with w >= z yields
      // (x, z, u) for every x with z+x = w.
      if (f.left == f.right) {
        if (auto it = by_cond.find(f.left); it != by_cond.end()) {
          for (int j : it->second) {
            // Copy: sat.add below may reallocate sat.facts.
            const AtomFact g = sat.facts[j];
            if (!is_subset(f.cond, g.left)) continue;
            const auto base = set_minus(g.left, f.cond);
            const auto overlap = set_intersect(g.left, f.cond);
            sat.add(AtomFact{base, f.cond, g.right}, 8, {fi, j});
            if (overlap.size() <= 3) {
              for (std::size_t mask = 1; mask < (std::size_t(1) << overlap.size()); ++mask) {
                std::vector<int> extra;
                for (std::size_t b = 0; b < overlap.size(); ++b)
                  if (mask >> b & 1) extra.push_back(overlap[b]);
                sat.add(make_fact(set_union(base, extra), f.cond, g.right), 8, {fi, j});
              }
            } else {
              sat.add(AtomFact{g.left, f.cond, g.right}, 8, {fi, j});
            }
          }
        }
      }

      // rule 9: f = (x, z, y), partner (x+y, z, u) yields (x, z, y+u).
      if (auto it = by_left_cond.find({set_union(f.left, f.right), f.cond});
          it != by_left_cond.end()) {
        for (int j : it->second)
          sat.add(make_fact(f.left, f.cond, set_union(f.right, sat.facts[j].right)), 9, {fi, j});
      }
    }

    if (sat.index.count(goal) || sat.facts.size() == frontier || sat.facts.size() > max_facts)
      return finish(round);
  }
  return finish(max_depth);
}

// ---------------------------------------------------------------------------
// Replay
// ---------------------------------------------------------------------------

bool replay_derivation(const Derivation& d) {
  const int n = int(d.universe.size());
  auto tuple_ok = [n](const std::vector<int>& v) {
    if (!std::is_sorted(v.begin(), v.end())) return false;
    if (std::adjacent_find(v.begin(), v.end()) != v.end()) return false;
    return v.empty() || (v.front() >= 0 && v.back() < n);
  };

  for (std::size_t i = 0; i < d.steps.size(); ++i) {
    const DerivationStep& s = d.steps[i];
    const AtomFact& c = s.fact;
    if (!tuple_ok(c.left) || !tuple_ok(c.cond) || !tuple_ok(c.right)) return false;
    for (int j : s.inputs)
      if (j < 0 || std::size_t(j) >= i) return false;
    auto in = [&](std::size_t k) -> const AtomFact& { return d.steps[s.inputs[k]].fact; };

    switch (s.rule) {
      case 0:
        if (!s.inputs.empty()) return false;
        break;
      case 1: {
        if (s.inputs.size() != 1) return false;
        const AtomFact& p = in(0);
        if (p.left != p.right || c.left != p.left || c.cond != p.cond) return false;
        break;
      }
      case 2:
        if (!s.inputs.empty() || c.left != c.cond) return false;
        break;
      case 3: {
        if (s.inputs.size() != 1) return false;
        const AtomFact& p = in(0);
        if (c.left != p.right || c.cond != p.cond || c.right != p.left) return false;
        break;
      }
      case 4: {
        if (s.inputs.size() != 1) return false;
        const AtomFact& p = in(0);
        if (c.cond != p.cond) return false;
        if (!is_subset(c.left, p.left) || !is_subset(c.right, p.right)) return false;
        if (set_minus(p.left, c.left).size() > 1) return false;
        if (set_minus(p.right, c.right).size() > 1) return false;
        break;
      }
      case 6: {
        if (s.inputs.size() != 1) return false;
        const AtomFact& p = in(0);
        if (c.cond != p.cond) return false;
        if (c.left != set_union(p.right, p.cond)) return false;
        if (c.right != set_union(p.left, p.cond)) return false;
        break;
      }
      case 7: {
        if (s.inputs.size() != 2) return false;
        const AtomFact &p1 = in(0), &p2 = in(1);
        if (p2.cond != set_union(p1.cond, p1.left) || p2.right != p1.right) return false;
        if (c.left != p2.left || c.cond != p1.cond || c.right != p1.right) return false;
        break;
      }
      case 8: {
        if (s.inputs.size() != 2) return false;
        const AtomFact &p1 = in(0), &p2 = in(1);
        if (p1.left != p1.right || p2.cond != p1.left) return false;
        if (!is_subset(p1.cond, p2.left)) return false;
        if (c.cond != p1.cond || c.right != p2.right) return false;
        if (!is_subset(c.left, p2.left)) return false;
        if (!is_subset(set_minus(p2.left, p1.cond), c.left)) return false;
        break;
      }
      case 9: {
        if (s.inputs.size() != 2) return false;
        const AtomFact &p1 = in(0), &p2 = in(1);
        if (p2.left != set_union(p1.left, p1.right) || p2.cond != p1.cond) return false;
        if (c.left != p1.left || c.cond != p1.cond) return false;
        if (c.right != set_union(p1.right, p2.right)) return false;
        break;
      }
      default:
        return false;
    }
  }
  return !d.steps.empty();
}

// ---------------------------------------------------------------------------
// Parsing and printing
// ---------------------------------------------------------------------------

AtomFact parse_fact(const std::string& text, std::vector<std::string>& universe) {
  FormulaPtr f = parse_formula(text);
  if (f->kind != FormulaKind::Indep)
    throw std::invalid_argument("expected an independence or dependence atom: " + text);
  auto ids = [&universe](const std::vector<std::string>& names) {
    std::vector<int> out;
    for (const std::string& name : names) {
      auto it = std::find(universe.begin(), universe.end(), name);
      if (it == universe.end()) {
        universe.push_back(name);
        out.push_back(int(universe.size()) - 1);
      } else {
        out.push_back(int(it - universe.begin()));
      }
    }
    return out;
  };
  // Sequenced so the universe grows left, condition, right regardless of
  // the compiler's argument evaluation order.
  std::vector<int> left = ids(f->left);
  std::vector<int> cond = ids(f->cond);
  std::vector<int> right = ids(f->right);
  return make_fact(std::move(left), std::move(cond), std::move(right));
}

std::string print_fact(const AtomFact& f, const std::vector<std::string>& universe) {
  auto names = [&universe](const std::vector<int>& ids) {
    std::string out;
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if (i) out += ' ';
      out += universe.at(std::size_t(ids[i]));
    }
    return out;
  };
  if (f.left == f.right) {
    if (f.cond.empty()) return "=(" + names(f.left) + ")";
    return "=(" + names(f.cond) + " ; " + names(f.left) + ")";
  }
  std::string out = names(f.left) + " _||_ " + names(f.right);
  if (!f.cond.empty()) out += " | " + names(f.cond);
  return out;
}

namespace {

std::array<std::vector<std::string>, 3> fact_names(const AtomFact& f,
                                                   const std::vector<std::string>& universe) {
  auto names = [&universe](const std::vector<int>& ids) {
    std::vector<std::string> out;
    for (int id : ids) out.push_back(universe.at(std::size_t(id)));
    return out;
  };
  return {names(f.left), names(f.cond), names(f.right)};
}

}  // namespace

bool fact_holds(const Team& team, const AtomFact& f, const std::vector<std::string>& universe) {
  auto [l, c, r] = fact_names(f, universe);
  return indep_atom_holds(team, l, c, r);
}

bool fact_holds(const ProbTeam& team, const AtomFact& f,
                const std::vector<std::string>& universe) {
  auto [l, c, r] = fact_names(f, universe);
  return prob_indep_atom_holds(team, l, c, r);
}

// ---------------------------------------------------------------------------
// Fuzzing
// ---------------------------------------------------------------------------

namespace {

struct Rng {
  std::mt19937_64 gen;
  explicit Rng(std::uint64_t seed) : gen(seed) {}
  int upto(int n) { return int(gen() % std::uint64_t(n)); }  // 0..n-1
};

constexpr int kFuzzVars = 4;

std::vector<Variable> fuzz_domain() {
  return {{"a", Role::Plain}, {"b", Role::Plain}, {"c", Role::Plain}, {"d", Role::Plain}};
}

const std::vector<std::string>& fuzz_universe() {
  static const std::vector<std::string> u{"a", "b", "c", "d"};
  return u;
}

Value val(int i) { return intern_value(std::to_string(i)); }

// Every row of the full product over per-variable domain sizes.
std::vector<Row> product_rows(const std::vector<int>& sizes) {
  std::vector<Row> rows{{}};
  for (int s : sizes) {
    std::vector<Row> next;
    for (const Row& r : rows)
      for (int v = 0; v < s; ++v) {
        Row e = r;
        e.push_back(val(v));
        next.push_back(std::move(e));
      }
    rows = std::move(next);
  }
  return rows;
}

Team random_team(Rng& rng) {
  switch (rng.upto(5)) {
    case 0: {  // fully random rows
      int nrows = 1 + rng.upto(6);
      std::vector<Row> rows;
      for (int i = 0; i < nrows; ++i) {
        Row r;
        for (int v = 0; v < kFuzzVars; ++v) r.push_back(val(rng.upto(3)));
        rows.push_back(std::move(r));
      }
      return Team::from_rows(fuzz_domain(), std::move(rows));
    }
    case 1: {  // full product; every purely relational independence holds
      std::vector<int> sizes;
      for (int v = 0; v < kFuzzVars; ++v) sizes.push_back(1 + rng.upto(2));
      return Team::from_rows(fuzz_domain(), product_rows(sizes));
    }
    case 2: {  // last two variables are functions of the first two
      int table[3][3][2];
      for (auto& p : table)
        for (auto& q : p)
          for (int& x : q) x = rng.upto(2);
      int nrows = 1 + rng.upto(6);
      std::vector<Row> rows;
      for (int i = 0; i < nrows; ++i) {
        int a = rng.upto(3), b = rng.upto(3);
        rows.push_back({val(a), val(b), val(table[a][b][0]), val(table[a][b][1])});
      }
      return Team::from_rows(fuzz_domain(), std::move(rows));
    }
    case 3:  // single row; satisfies every formula of the logic
      return Team::from_rows(fuzz_domain(),
                             {{val(rng.upto(2)), val(rng.upto(2)), val(rng.upto(2)),
                               val(rng.upto(2))}});
    default: {  // two constant columns, two random
      int c0 = rng.upto(2), c1 = rng.upto(2);
      int nrows = 1 + rng.upto(5);
      std::vector<Row> rows;
      for (int i = 0; i < nrows; ++i)
        rows.push_back({val(rng.upto(3)), val(c0), val(rng.upto(3)), val(c1)});
      return Team::from_rows(fuzz_domain(), std::move(rows));
    }
  }
}

ProbTeam random_prob_team(Rng& rng) {
  if (rng.upto(3) == 0) {
    // product distribution: every disjoint independence holds
    std::vector<std::vector<Rat>> site(kFuzzVars);
    std::vector<int> sizes;
    for (int v = 0; v < kFuzzVars; ++v) {
      int s = 1 + rng.upto(2);
      sizes.push_back(s);
      Rat total = 0;
      std::vector<Rat> w;
      for (int i = 0; i < s; ++i) {
        w.push_back(Rat(1 + rng.upto(4)));
        total += w.back();
      }
      for (Rat& x : w) x /= total;
      site[v] = std::move(w);
    }
    auto rows = product_rows(sizes);
    std::vector<Rat> weights;
    for (const Row& r : rows) {
      Rat w = 1;
      for (int v = 0; v < kFuzzVars; ++v) {
        // value tokens are "0".."2"; recover the index from the row
        for (int i = 0; i < sizes[v]; ++i)
          if (r[std::size_t(v)] == val(i)) w *= site[v][std::size_t(i)];
      }
      weights.push_back(w);
    }
    return ProbTeam::from_weighted_rows(fuzz_domain(), std::move(rows), std::move(weights));
  }
  Team support = random_team(rng);
  if (rng.upto(2) == 0) return ProbTeam::uniform(support);
  std::vector<Rat> weights;
  for (std::size_t i = 0; i < support.size(); ++i) weights.push_back(Rat(1 + rng.upto(4)));
  return ProbTeam::from_weighted_rows(support.domain(),
                                      {support.rows().begin(), support.rows().end()},
                                      std::move(weights), /*normalize=*/true);
}

std::vector<int> random_tuple(Rng& rng, int max_len = 2) {
  std::vector<int> t;
  int len = rng.upto(max_len + 1);
  for (int i = 0; i < len; ++i) t.push_back(rng.upto(kFuzzVars));
  return canon(std::move(t));
}

struct FuzzCase {
  std::vector<AtomFact> premises;
  AtomFact conclusion;
};

FuzzCase instantiate_rule(int rule, Rng& rng) {
  auto x = random_tuple(rng), y = random_tuple(rng), z = random_tuple(rng),
       u = random_tuple(rng);
  FuzzCase fc;
  switch (rule) {
    case 1:
      fc.premises = {make_fact(y, x, y)};
      fc.conclusion = make_fact(y, x, z);
      break;
    case 2:
      fc.conclusion = make_fact(x, x, y);
      break;
    case 3:
      fc.premises = {make_fact(z, x, y)};
      fc.conclusion = make_fact(y, x, z);
      break;
    case 4: {
      auto yy = set_union(y, u), zz = set_union(z, x);
      fc.premises = {make_fact(yy, x, zz)};
      fc.conclusion = make_fact(y, x, z);
      break;
    }
    case 6:
      fc.premises = {make_fact(z, x, y)};
      fc.conclusion = make_fact(set_union(y, x), x, set_union(z, x));
      break;
    case 7:
      fc.premises = {make_fact(x, z, y), make_fact(u, set_union(z, x), y)};
      fc.conclusion = make_fact(u, z, y);
      break;
    case 8:
      fc.premises = {make_fact(y, z, y), make_fact(set_union(z, x), y, u)};
      fc.conclusion = make_fact(x, z, u);
      break;
    case 9:
      fc.premises = {make_fact(x, z, y), make_fact(set_union(x, y), z, u)};
      fc.conclusion = make_fact(x, z, set_union(y, u));
      break;
    default:
      throw std::invalid_argument("fuzz_rule: rule must be 1..9 (5 is permutation)");
  }
  return fc;
}

template <typename TeamT>
std::string describe_case(const TeamT& team, const FuzzCase& fc) {
  std::ostringstream os;
  for (std::size_t i = 0; i < fc.premises.size(); ++i)
    os << "premise " << i + 1 << ": " << print_fact(fc.premises[i], fuzz_universe()) << "\n";
  os << "conclusion: " << print_fact(fc.conclusion, fuzz_universe()) << "\n";
  write_team_csv(os, team);
  return os.str();
}

template <typename TeamT, typename MakeTeam>
FuzzReport run_fuzz(int trials, std::uint64_t seed, const MakeTeam& make_team,
                    const std::function<FuzzCase(Rng&)>& make_case) {
  Rng rng(seed);
  FuzzReport rep;
  rep.trials = trials;
  const auto& universe = fuzz_universe();
  for (int t = 0; t < trials; ++t) {
    TeamT team = make_team(rng);
    FuzzCase fc = make_case(rng);
    bool vacuous = false;
    for (const AtomFact& p : fc.premises)
      if (!fact_holds(team, p, universe)) {
        vacuous = true;
        break;
      }
    if (vacuous) continue;
    ++rep.nonvacuous;
    if (!fact_holds(team, fc.conclusion, universe)) {
      if (rep.counterexamples == 0) rep.first_counterexample = describe_case(team, fc);
      ++rep.counterexamples;
    }
  }
  return rep;
}

// Rule 5 says tuple order and repetition are irrelevant; check the atom
// directly with shuffled, duplicated tuples against the canonical form.
template <typename TeamT>
FuzzReport fuzz_permutation(int trials, std::uint64_t seed, const std::function<TeamT(Rng&)>& mk) {
  Rng rng(seed);
  FuzzReport rep;
  rep.trials = trials;
  const auto& universe = fuzz_universe();
  auto scramble = [&rng](std::vector<int> ids) {
    if (!ids.empty() && rng.upto(2)) ids.push_back(ids[std::size_t(rng.upto(int(ids.size())))]);
    std::shuffle(ids.begin(), ids.end(), rng.gen);
    return ids;
  };
  for (int t = 0; t < trials; ++t) {
    TeamT team = mk(rng);
    auto l = random_tuple(rng), c = random_tuple(rng), r = random_tuple(rng);
    auto names = [&universe](const std::vector<int>& ids) {
      std::vector<std::string> out;
      for (int id : ids) out.push_back(universe[std::size_t(id)]);
      return out;
    };
    bool canonical;
    bool scrambled;
    if constexpr (std::is_same_v<TeamT, Team>) {
      canonical = indep_atom_holds(team, names(l), names(c), names(r));
      scrambled = indep_atom_holds(team, names(scramble(l)), names(scramble(c)),
                                   names(scramble(r)));
    } else {
      canonical = prob_indep_atom_holds(team, names(l), names(c), names(r));
      scrambled = prob_indep_atom_holds(team, names(scramble(l)), names(scramble(c)),
                                        names(scramble(r)));
    }
    ++rep.nonvacuous;
    if (canonical != scrambled) {
      ++rep.counterexamples;
      if (rep.first_counterexample.empty()) {
        std::ostringstream os;
        os << "atom " << print_fact(make_fact(l, c, r), universe)
           << " changed truth value under tuple reordering\n";
        write_team_csv(os, team);
        rep.first_counterexample = os.str();
      }
    }
  }
  return rep;
}

}  // namespace

FuzzReport fuzz_rule(int rule, int trials, Semantics sem, std::uint64_t seed) {
  if (rule == 5) {
    if (sem == Semantics::Possibilistic)
      return fuzz_permutation<Team>(trials, seed, [](Rng& r) { return random_team(r); });
    return fuzz_permutation<ProbTeam>(trials, seed,
                                      [](Rng& r) { return random_prob_team(r); });
  }
  auto make_case = [rule](Rng& rng) { return instantiate_rule(rule, rng); };
  if (sem == Semantics::Possibilistic)
    return run_fuzz<Team>(trials, seed, [](Rng& r) { return random_team(r); }, make_case);
  return run_fuzz<ProbTeam>(trials, seed, [](Rng& r) { return random_prob_team(r); },
                            make_case);
}

FuzzReport fuzz_separoid(int axiom, int trials, Semantics sem, std::uint64_t seed) {
  if (axiom < 1 || axiom > 5) throw std::invalid_argument("fuzz_separoid: axiom must be 1..5");
  // d <= b is "b determines d": nonvacuous instances are easiest to hit when
  // d is a literal subtuple of b, so mix subtuples with arbitrary tuples.
  auto make_case = [axiom](Rng& rng) {
    auto a = random_tuple(rng), b = random_tuple(rng), c = random_tuple(rng);
    std::vector<int> d;
    if (rng.upto(2) == 0 && !b.empty()) {
      for (int x : b)
        if (rng.upto(2)) d.push_back(x);
    } else {
      d = random_tuple(rng);
    }
    FuzzCase fc;
    switch (axiom) {
      case 1:  // a _||_ b | a
        fc.conclusion = make_fact(a, a, b);
        break;
      case 2:  // symmetry
        fc.premises = {make_fact(a, c, b)};
        fc.conclusion = make_fact(b, c, a);
        break;
      case 3:  // a _||_ b | c, d <= b  =>  a _||_ d | c
        fc.premises = {make_fact(a, c, b), make_fact(d, b, d)};
        fc.conclusion = make_fact(a, c, d);
        break;
      case 4:  // a _||_ b | c, d <= b  =>  a _||_ b | c v d
        fc.premises = {make_fact(a, c, b), make_fact(d, b, d)};
        fc.conclusion = make_fact(a, set_union(c, d), b);
        break;
      default:  // a _||_ b | c, a _||_ d | b v c  =>  a _||_ b v d | c
        fc.premises = {make_fact(a, c, b), make_fact(a, set_union(b, c), d)};
        fc.conclusion = make_fact(a, c, set_union(b, d));
        break;
    }
    return fc;
  };
  if (sem == Semantics::Possibilistic)
    return run_fuzz<Team>(trials, seed, [](Rng& r) { return random_team(r); }, make_case);
  return run_fuzz<ProbTeam>(trials, seed, [](Rng& r) { return random_prob_team(r); },
                            make_case);
}

FuzzReport fuzz_interaction_team_rule(int trials, std::uint64_t seed) {
  auto make_case = [](Rng& rng) {
    auto x = random_tuple(rng), y = random_tuple(rng), z = random_tuple(rng),
         u = random_tuple(rng);
    FuzzCase fc;
    fc.premises = {make_fact(x, z, y), make_fact(x, u, y),
                   make_fact(z, set_union(x, y), u)};
    fc.conclusion = make_fact(x, set_union(z, u), y);
    return fc;
  };
  return run_fuzz<Team>(trials, seed, [](Rng& r) { return random_team(r); }, make_case);
}

FuzzReport fuzz_interaction_prob_rule(int trials, std::uint64_t seed) {
  Rng rng(seed);
  FuzzReport rep;
  rep.trials = trials;
  const auto& universe = fuzz_universe();
  for (int t = 0; t < trials; ++t) {
    ProbTeam team = [&rng]() {
      if (rng.upto(2)) return random_prob_team(rng);
      // Markov-style construction p(a)p(b)q(c|a)r(d|b): the premises hold
      // with variables (x,y,z,u) = (a,b,c,d), so these trials are never
      // vacuous and exercise the rule away from pure product distributions.
      std::vector<Row> rows;
      std::vector<Rat> weights;
      auto mass = [&rng]() { return Rat(1 + rng.upto(4)); };
      std::vector<Rat> pa{mass(), mass()}, pb{mass(), mass()};
      Rat qa[2][2], rb[2][2];
      for (int i = 0; i < 2; ++i) {
        qa[i][0] = mass();
        qa[i][1] = mass();
        rb[i][0] = mass();
        rb[i][1] = mass();
      }
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          for (int c = 0; c < 2; ++c)
            for (int d = 0; d < 2; ++d) {
              rows.push_back({val(a), val(b), val(c), val(d)});
              weights.push_back(pa[a] * pb[b] * qa[a][c] * rb[b][d]);
            }
      return ProbTeam::from_weighted_rows(fuzz_domain(), std::move(rows), std::move(weights),
                                          /*normalize=*/true);
    }();
    std::vector<int> x{0}, y{1}, z{2}, u{3};
    if (rng.upto(4) == 0) {
      x = random_tuple(rng);
      y = random_tuple(rng);
      z = random_tuple(rng);
      u = random_tuple(rng);
    }
    FuzzCase fc;
    fc.premises = {make_fact(x, set_union(y, z), y), make_fact(z, x, u), make_fact(z, y, u),
                   make_fact(x, {}, y)};
    fc.conclusion = make_fact(z, {}, u);
    bool vacuous = false;
    for (const AtomFact& p : fc.premises)
      if (!fact_holds(team, p, universe)) {
        vacuous = true;
        break;
      }
    if (vacuous) continue;
    ++rep.nonvacuous;
    if (!fact_holds(team, fc.conclusion, universe)) {
      if (rep.counterexamples == 0) rep.first_counterexample = describe_case(team, fc);
      ++rep.counterexamples;
    }
  }
  return rep;
}

MutationReport corrupted_symmetry_counterexample() {
  // The corrupt rule concludes y _||_ z from z _||_ y | x, forgetting the
  // condition. Search binary teams over {x, y, z} with at most 4 rows.
  std::vector<Variable> domain{{"x", Role::Plain}, {"y", Role::Plain}, {"z", Role::Plain}};
  std::vector<Row> all_rows;
  for (int m = 0; m < 8; ++m) all_rows.push_back({val(m >> 2 & 1), val(m >> 1 & 1), val(m & 1)});
  for (int mask = 1; mask < 256; ++mask) {
    if (std::popcount(unsigned(mask)) > 4) continue;
    std::vector<Row> rows;
    for (int m = 0; m < 8; ++m)
      if (mask >> m & 1) rows.push_back(all_rows[std::size_t(m)]);
    Team team = Team::from_rows(domain, std::move(rows));
    if (!indep_atom_holds(team, {"z"}, {"x"}, {"y"})) continue;
    if (indep_atom_holds(team, {"y"}, {}, {"z"})) continue;
    MutationReport rep;
    rep.counterexample_found = true;
    std::ostringstream os;
    os << "z _||_ y | x holds but y _||_ z fails on\n";
    write_team_csv(os, team);
    rep.description = os.str();
    return rep;
  }
  return {};
}

}  // namespace teamsem
