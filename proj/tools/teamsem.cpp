// Command-line front end for the team-semantics workbench.
//
// One subcommand per task: eval/property run the checkers, realize/lift/
// entropy-report/pr-probe drive the hidden-variable constructions, entail
// runs the axiom engine, and nogo/quantum/game regenerate the counterexample
// suites. Reports print as "key: value" lines, or as JSON ({"schema":1,...},
// rationals as "p/q" strings) under --json. Output is deterministic for a
// fixed command line, so files produced here can serve as golden fixtures.
//
// Exit codes: 0 = verdict computed (whether true or false), 2 = inconclusive
// within the configured budget, 1 = usage or input error.

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "teamsem/constructions.hpp"
#include "teamsem/derivation.hpp"
#include "teamsem/eval.hpp"
#include "teamsem/formula.hpp"
#include "teamsem/io.hpp"
#include "teamsem/nogo.hpp"
#include "teamsem/properties.hpp"
#include "teamsem/quantum.hpp"
#include "teamsem/team.hpp"

namespace {

using namespace teamsem;
using nlohmann::json;

constexpr int kExitVerdict = 0;
constexpr int kExitInconclusive = 2;

std::string fmt_double(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

std::string fmt_residual(double v) {
  std::ostringstream os;
  os << std::setprecision(6) << v;
  return os.str();
}

std::string tuple_str(const std::vector<int>& t) {
  std::string s = "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(t[i]);
  }
  return s + ")";
}

std::string row_str(const Row& row) {
  std::string s = "(";
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) s += ',';
    s += value_token(row[i]);
  }
  return s + ")";
}

void emit(const json& j, bool as_json) {
  if (as_json) std::cout << j.dump(2) << "\n";
}

PropertyId parse_property(const std::string& s) {
  auto p = property_from_string(s);
  if (!p) throw std::runtime_error("unknown property id '" + s + "'");
  return *p;
}

// ---------------------------------------------------------------------------
// eval
// ---------------------------------------------------------------------------

struct EvalOpts {
  std::string team, formula;
  bool prob = false;
  int k_max = 4;
  std::uint64_t budget = 4'000'000;
  bool as_json = false;
};

int run_eval(const EvalOpts& o) {
  TeamFile tf = read_team_file(o.team);
  FormulaPtr f = parse_formula(o.formula);
  EvalContext ctx;
  ctx.k_max = o.k_max;
  ctx.budget = o.budget;
  EvalResult r = o.prob ? eval_probabilistic(tf.to_prob_team(), f, ctx)
                        : eval_possibilistic(tf.to_team(), f, ctx);

  if (o.as_json) {
    json j{{"schema", 1},
           {"command", "eval"},
           {"formula", print_formula(f)},
           {"semantics", o.prob ? "probabilistic" : "possibilistic"},
           {"verdict", to_string(r.verdict)},
           {"bounded", r.bounded}};
    if (!r.note.empty()) j["note"] = r.note;
    emit(j, true);
  } else {
    std::cout << "formula: " << print_formula(f) << "\n"
              << "semantics: " << (o.prob ? "probabilistic" : "possibilistic") << "\n"
              << "verdict: " << to_string(r.verdict) << "\n";
    if (r.bounded) std::cout << "bounded: yes (relies on the k-max cutoff)\n";
    if (!r.note.empty()) std::cout << "note: " << r.note << "\n";
  }
  return r.verdict == Verdict::Inconclusive ? kExitInconclusive : kExitVerdict;
}

// ---------------------------------------------------------------------------
// property
// ---------------------------------------------------------------------------

struct PropertyOpts {
  std::string team, check;
  bool prob = false;
  bool as_json = false;
};

int run_property(const PropertyOpts& o) {
  TeamFile tf = read_team_file(o.team);
  PropertyId id = parse_property(o.check);
  bool holds;
  std::vector<Variable> domain;
  if (o.prob) {
    ProbTeam pt = tf.to_prob_team();
    domain = pt.domain();
    holds = check_property(pt, id);
  } else {
    Team t = tf.to_team();
    domain = t.domain();
    holds = check_property(t, id);
  }
  FormulaPtr f = property_formula(id, TeamRoles::infer(domain));
  if (o.as_json) {
    emit(json{{"schema", 1},
              {"command", "property"},
              {"check", to_string(id)},
              {"semantics", o.prob ? "probabilistic" : "possibilistic"},
              {"formula", print_formula(f)},
              {"holds", holds}},
         true);
  } else {
    std::cout << "formula: " << print_formula(f) << "\n"
              << to_string(id) << ": " << (holds ? "true" : "false") << "\n";
  }
  return kExitVerdict;
}

// ---------------------------------------------------------------------------
// realize
// ---------------------------------------------------------------------------

struct RealizeOpts {
  std::string team, mode, out;
  int count = 1;
  std::size_t budget = 1'000'000;
  bool as_json = false;
};

int run_realize(const RealizeOpts& o) {
  TeamFile tf = read_team_file(o.team);
  Team input = tf.to_team();
  Team result;
  std::vector<PropertyId> advertised;
  if (o.mode == "sv") {
    result = extend_single_valued(input, o.count);
    advertised = {PropertyId::SV};
  } else if (o.mode == "sd") {
    result = realize_strong_determinism(input);
    advertised = {PropertyId::SD};
  } else if (o.mode == "wdzi") {
    result = realize_weak_det_z_indep(input, o.budget);
    advertised = {PropertyId::WD, PropertyId::ZI};
  } else {
    result = canonicalize_local_to_sd(input, o.budget);
    advertised = {PropertyId::SD, PropertyId::ZI};
  }

  // Empirical agreement: modes over empirical inputs must realize them; the
  // canonical rebuild must leave the x/y projection untouched.
  TeamRoles roles = TeamRoles::infer(input.domain());
  std::vector<std::string> xy;
  xy.insert(xy.end(), roles.x.begin(), roles.x.end());
  xy.insert(xy.end(), roles.y.begin(), roles.y.end());
  bool faithful = input.project(xy) == result.project(xy);

  std::vector<std::string> held;
  bool all_hold = true;
  for (PropertyId p : advertised) {
    bool h = check_property(result, p);
    all_hold = all_hold && h;
    held.push_back(to_string(p) + (h ? ":true" : ":false"));
  }

  if (o.out.empty()) {
    if (o.as_json)
      std::cout << team_to_json(result) << "\n";
    else
      write_team_csv(std::cout, result);
  } else {
    write_team_csv_file(o.out, result);
    if (o.as_json) {
      emit(json{{"schema", 1},
                {"command", "realize"},
                {"mode", o.mode},
                {"input_rows", input.size()},
                {"rows", result.size()},
                {"columns", result.domain().size()},
                {"faithful", faithful},
                {"properties", held},
                {"out", o.out}},
           true);
    } else {
      std::cout << "mode: " << o.mode << "\n"
                << "rows: " << result.size() << "\n"
                << "columns: " << result.domain().size() << "\n"
                << "faithful: " << (faithful ? "yes" : "no") << "\n"
                << "properties:";
      for (const std::string& h : held) std::cout << ' ' << h;
      std::cout << "\nwrote: " << o.out << "\n";
    }
  }
  return faithful && all_hold ? kExitVerdict : kExitInconclusive;
}

// ---------------------------------------------------------------------------
// lift
// ---------------------------------------------------------------------------

struct LiftOpts {
  std::string team, out;
  bool as_json = false;
};

int run_lift(const LiftOpts& o) {
  TeamFile tf = read_team_file(o.team);
  Team input = tf.to_team();
  LiftCounts counts;
  ProbTeam lift = probabilistic_lift(input, &counts);
  if (o.out.empty()) {
    if (o.as_json)
      std::cout << team_to_json(lift) << "\n";
    else
      write_team_csv(std::cout, lift);
  } else {
    write_team_csv_file(o.out, lift);
    if (o.as_json) {
      emit(json{{"schema", 1},
                {"command", "lift"},
                {"rows", lift.size()},
                {"hidden_tuples", counts.m_h},
                {"measurement_tuples", counts.m_m},
                {"entropy", entropy(lift)},
                {"out", o.out}},
           true);
    } else {
      std::cout << "rows: " << lift.size() << "\n"
                << "hidden-tuples: " << counts.m_h << "\n"
                << "measurement-tuples: " << counts.m_m << "\n"
                << "entropy: " << fmt_double(entropy(lift)) << "\n"
                << "wrote: " << o.out << "\n";
    }
  }
  return kExitVerdict;
}

// ---------------------------------------------------------------------------
// entropy-report
// ---------------------------------------------------------------------------

struct EntropyOpts {
  std::string team;
  bool as_json = false;
};

int run_entropy_report(const EntropyOpts& o) {
  TeamFile tf = read_team_file(o.team);
  ProbTeam pt;
  std::string source;
  if (tf.probabilistic) {
    pt = tf.to_prob_team();
    source = "probabilistic input";
  } else {
    pt = probabilistic_lift(tf.to_team());
    source = "lift of " + std::to_string(tf.rows.size()) + " rows";
  }

  double h = entropy(pt);
  ProbTeam prior = measurement_prior(pt);
  double h_prior = entropy(prior);

  double recomposed = h_prior;
  json sections = json::array();
  std::ostringstream lines;
  for (std::size_t i = 0; i < prior.size(); ++i) {
    const Row& sec = prior.rows()[i];
    const Rat& th = prior.weights()[i];
    auto eta = outcome_conditional(pt, sec);
    std::vector<Rat> ws;
    ws.reserve(eta.size());
    for (auto& [row, w] : eta) ws.push_back(w);
    double h_eta = entropy(ws);
    recomposed += rat_to_double(th) * h_eta;
    lines << "section " << row_str(sec) << ": weight " << rat_to_string(th)
          << "  entropy " << fmt_double(h_eta) << "\n";
    sections.push_back(json{{"section", row_str(sec)},
                            {"weight", rat_to_fraction(th)},
                            {"entropy", h_eta}});
  }
  bool decomposes = std::abs(h - recomposed) <= 1e-9;

  if (o.as_json) {
    emit(json{{"schema", 1},
              {"command", "entropy-report"},
              {"source", source},
              {"rows", pt.size()},
              {"entropy", h},
              {"prior_entropy", h_prior},
              {"sections", sections},
              {"recomposed", recomposed},
              {"decomposes", decomposes}},
         true);
  } else {
    std::cout << "source: " << source << "\n"
              << "rows: " << pt.size() << "\n"
              << "entropy: " << fmt_double(h) << "\n"
              << "prior-entropy: " << fmt_double(h_prior) << "\n"
              << lines.str() << "decomposition: " << fmt_double(recomposed)
              << (decomposes ? " (matches)" : " (MISMATCH)") << "\n";
  }
  return decomposes ? kExitVerdict : kExitInconclusive;
}

// ---------------------------------------------------------------------------
// pr-probe
// ---------------------------------------------------------------------------

struct ProbeOpts {
  std::string team, out;
  std::vector<std::string> props;
  PrProbeConfig config;
  bool as_json = false;
};

int run_pr_probe(const ProbeOpts& o) {
  TeamFile tf = read_team_file(o.team);
  Team input = tf.to_team();
  std::vector<PropertyId> props;
  for (const std::string& p : o.props) props.push_back(parse_property(p));
  PrProbeResult r = search_probabilistic_realization(input, props, o.config);

  bool found = r.witness.has_value();
  if (found && !o.out.empty()) write_team_csv_file(o.out, *r.witness);

  if (o.as_json) {
    json j{{"schema", 1},
           {"command", "pr-probe"},
           {"properties", o.props},
           {"restarts", o.config.restarts},
           {"iterations", o.config.iterations},
           {"seed", o.config.seed},
           {"best_residual", r.best_residual},
           {"best_restart", r.best_restart},
           {"witness", found}};
    if (found && !o.out.empty()) j["out"] = o.out;
    emit(j, true);
  } else {
    std::cout << "properties:";
    for (const std::string& p : o.props) std::cout << ' ' << p;
    std::cout << "\nrestarts: " << o.config.restarts << "\n"
              << "best-residual: " << fmt_residual(r.best_residual) << "\n"
              << "best-restart: " << r.best_restart << "\n";
    if (found) {
      std::cout << "witness: exact (" << r.witness->size() << " rows)";
      if (!o.out.empty()) std::cout << ", wrote " << o.out;
      std::cout << "\n";
    } else {
      std::cout << "witness: none within budget\n";
    }
  }
  return found ? kExitVerdict : kExitInconclusive;
}

// ---------------------------------------------------------------------------
// entail
// ---------------------------------------------------------------------------

struct EntailOpts {
  std::string premises, goal;
  int depth = 6;
  std::size_t max_facts = 500'000;
  bool as_json = false;
};

const char* rule_name(int rule) {
  switch (rule) {
    case 0: return "premise";
    case 1: return "constancy";
    case 2: return "reflexivity";
    case 3: return "symmetry";
    case 4: return "weakening";
    case 5: return "permutation";
    case 6: return "fixed parameter";
    case 7: return "first transitivity";
    case 8: return "second transitivity";
    case 9: return "exchange";
    default: return "?";
  }
}

int run_entail(const EntailOpts& o) {
  std::vector<std::string> universe;
  std::vector<AtomFact> premises;
  if (!o.premises.empty()) {
    std::ifstream in(o.premises);
    if (!in) throw std::runtime_error("cannot open '" + o.premises + "'");
    std::string line;
    while (std::getline(in, line)) {
      std::size_t start = line.find_first_not_of(" \t\r");
      if (start == std::string::npos || line[start] == '#') continue;
      premises.push_back(parse_fact(line, universe));
    }
  }
  AtomFact goal = parse_fact(o.goal, universe);

  EntailStats stats;
  auto derivation = entail(universe, premises, goal, o.depth, o.max_facts, &stats);

  if (o.as_json) {
    json j{{"schema", 1},
           {"command", "entail"},
           {"goal", print_fact(goal, universe)},
           {"depth_limit", o.depth},
           {"facts_explored", stats.facts_explored},
           {"derived", derivation.has_value()}};
    if (derivation) {
      json steps = json::array();
      for (std::size_t i = 0; i < derivation->steps.size(); ++i) {
        const DerivationStep& s = derivation->steps[i];
        json inputs = json::array();
        for (int in_idx : s.inputs) inputs.push_back(in_idx + 1);
        steps.push_back(json{{"index", i + 1},
                             {"rule", s.rule},
                             {"rule_name", rule_name(s.rule)},
                             {"from", inputs},
                             {"fact", print_fact(s.fact, derivation->universe)}});
      }
      j["steps"] = steps;
      j["replay"] = replay_derivation(*derivation);
    }
    emit(j, true);
    return derivation ? kExitVerdict : kExitInconclusive;
  }

  std::cout << "goal: " << print_fact(goal, universe) << "\n";
  if (!derivation) {
    std::cout << "derived: no (depth limit " << o.depth << ", " << stats.facts_explored
              << " facts explored)\n";
    return kExitInconclusive;
  }
  for (std::size_t i = 0; i < derivation->steps.size(); ++i) {
    const DerivationStep& s = derivation->steps[i];
    std::cout << "  " << (i + 1) << ". ";
    if (s.rule == 0) {
      std::cout << "premise";
    } else {
      std::cout << "rule " << s.rule << " (" << rule_name(s.rule) << ") from";
      for (std::size_t k = 0; k < s.inputs.size(); ++k)
        std::cout << (k ? "," : "") << ' ' << (s.inputs[k] + 1);
    }
    std::cout << "  ->  " << print_fact(s.fact, derivation->universe) << "\n";
  }
  std::cout << "derived: yes (" << stats.facts_explored << " facts explored)\n"
            << "replay: " << (replay_derivation(*derivation) ? "ok" : "FAILED") << "\n";
  return kExitVerdict;
}

// ---------------------------------------------------------------------------
// nogo
// ---------------------------------------------------------------------------

struct NogoOpts {
  std::string which, emit_path;
  bool as_json = false;
};

int run_nogo(const NogoOpts& o) {
  json j{{"schema", 1}, {"command", "nogo"}, {"case", o.which}};
  int exit_code = kExitVerdict;

  if (o.which == "epr") {
    Team team = epr_team();
    if (!o.emit_path.empty()) write_team_csv_file(o.emit_path, team);
    FormulaPtr f = parse_formula("Eh z.(=(z) /\\ y0 _||_ y1 | x0 x1 z)");
    EvalContext ctx;
    ctx.k_max = 1;  // a constant hidden variable never needs a second value
    EvalResult r = eval_possibilistic(team, f, ctx);
    j["rows"] = team.size();
    j["formula"] = print_formula(f);
    j["verdict"] = to_string(r.verdict);
    j["complete"] = true;
    if (!o.as_json) {
      std::cout << "case: epr\nrows: " << team.size() << "\n"
                << "formula: " << print_formula(f) << "\n"
                << "verdict: " << to_string(r.verdict) << "\n"
                << "note: single-valuedness caps the hidden sort at one value, so "
                   "k-max 1 is exhaustive\n"
                << "conclusion: no single-valued outcome-independent realization\n";
    }
    if (r.verdict == Verdict::Inconclusive) exit_code = kExitInconclusive;
  } else if (o.which == "ghz" || o.which == "hardy") {
    Team team = o.which == "ghz" ? ghz_team_minimal() : hardy_team_minimal();
    if (!o.emit_path.empty()) write_team_csv_file(o.emit_path, team);
    bool recognized = o.which == "ghz" ? is_ghz_team(team) : is_hardy_team(team);
    LocalModelResult r = find_local_model(team);
    j["rows"] = team.size();
    j["recognized"] = recognized;
    j["instructions_total"] = r.instructions_total;
    j["instructions_consistent"] = r.instructions_consistent;
    j["local_model"] = r.model_exists;
    j["certificate"] = r.certificate;
    if (!o.as_json) {
      std::cout << "case: " << o.which << "\nrows: " << team.size() << "\n"
                << "recognized: " << (recognized ? "yes" : "no") << "\n"
                << "instructions: " << r.instructions_total << " total, "
                << r.instructions_consistent << " consistent\n"
                << "local-model: " << (r.model_exists ? "found" : "none") << "\n"
                << "certificate: " << r.certificate << "\n";
    }
  } else {  // ks
    KSSpec spec = KSSpec::standard();
    Team team = ks_team_canonical();
    if (!o.emit_path.empty()) write_team_csv_file(o.emit_path, team);
    bool recognized = is_ks_team(team);
    NoncontextualResult r = verify_no_noncontextual(spec);
    j["rows"] = team.size();
    j["recognized"] = recognized;
    j["assignments_checked"] = r.assignments_checked;
    j["no_noncontextual"] = r.no_noncontextual;
    j["parity_pass"] = r.parity_pass;
    j["certificate"] = r.certificate;
    if (!o.as_json) {
      std::cout << "case: ks\nrows: " << team.size() << "\n"
                << "recognized: " << (recognized ? "yes" : "no") << "\n"
                << "assignments-checked: " << r.assignments_checked << "\n"
                << "noncontextual-assignment: " << (r.no_noncontextual ? "none" : "found")
                << "\n"
                << "parity-argument: " << (r.parity_pass ? "pass" : "fail") << "\n"
                << "certificate: " << r.certificate << "\n";
    }
  }

  if (!o.emit_path.empty()) {
    j["out"] = o.emit_path;
    if (!o.as_json) std::cout << "wrote: " << o.emit_path << "\n";
  }
  emit(j, o.as_json);
  return exit_code;
}

// ---------------------------------------------------------------------------
// quantum
// ---------------------------------------------------------------------------

struct QuantumOpts {
  std::string preset, emit_path;
  bool as_json = false;
};

int run_quantum(const QuantumOpts& o) {
  QuantumSystem sys;
  if (o.preset == "epr")
    sys = epr_system();
  else if (o.preset == "ghz")
    sys = ghz_system();
  else
    sys = hardy_system();

  QuantumReport report = validate(sys);
  ProbTeam pt = quantum_team(sys);
  Team collapse = pt.collapse();

  // Conditional outcome probabilities per measurement tuple, exact after
  // the rational snap: team weight times the measurement count.
  const Rat m_count(sys.measurements.size());
  json table = json::array();
  std::ostringstream lines;
  for (const auto& a : sys.measurements) {
    json row = json::array();
    lines << "p" << tuple_str(a) << ":";
    for (const auto& b : sys.outcomes) {
      Row key;
      for (int v : a) key.push_back(intern_value(std::to_string(v)));
      for (int v : b) key.push_back(intern_value(std::to_string(v)));
      Rat p = pt.weight(key) * m_count;
      row.push_back(rat_to_fraction(p));
      lines << ' ' << rat_to_string(p);
    }
    lines << "\n";
    table.push_back(row);
  }

  bool recognized;
  std::string recognizer;
  if (o.preset == "epr") {
    recognized = collapse == epr_team();
    recognizer = "collapse equals the anticorrelated two-site team";
  } else if (o.preset == "ghz") {
    recognized = is_ghz_team(collapse);
    recognizer = "collapse passes the three-site parity-block conditions";
  } else {
    recognized = is_hardy_team(collapse);
    recognizer = "collapse passes the one-sided-zero conditions";
  }

  if (!o.emit_path.empty()) write_team_csv_file(o.emit_path, pt);

  if (o.as_json) {
    json outs = json::array();
    for (const auto& b : sys.outcomes) outs.push_back(tuple_str(b));
    json meas = json::array();
    for (const auto& a : sys.measurements) meas.push_back(tuple_str(a));
    json j{{"schema", 1},
           {"command", "quantum"},
           {"preset", o.preset},
           {"validation", report.violations},
           {"measurements", meas},
           {"outcomes", outs},
           {"table", table},
           {"support_rows", pt.size()},
           {"collapse_rows", collapse.size()},
           {"recognized", recognized}};
    if (!o.emit_path.empty()) j["out"] = o.emit_path;
    emit(j, true);
  } else {
    std::cout << "preset: " << o.preset << "\n"
              << "validation: " << (report.ok ? "clean" : "VIOLATIONS") << "\n";
    for (const std::string& v : report.violations) std::cout << "  " << v << "\n";
    std::cout << "outcomes:";
    for (const auto& b : sys.outcomes) std::cout << ' ' << tuple_str(b);
    std::cout << "\n" << lines.str();
    std::cout << "support-rows: " << pt.size() << "\n"
              << "collapse-rows: " << collapse.size() << "\n"
              << recognizer << ": " << (recognized ? "yes" : "no") << "\n";
    if (!o.emit_path.empty()) std::cout << "wrote: " << o.emit_path << "\n";
  }
  return kExitVerdict;
}

// ---------------------------------------------------------------------------
// game
// ---------------------------------------------------------------------------

struct GameOpts {
  std::string spec, to_team;
  bool as_json = false;
};

int run_game(const GameOpts& o) {
  NonLocalGame g = game_from_json_file(o.spec);
  Team team = game_to_team(g);

  if (o.to_team.empty()) {
    if (o.as_json)
      std::cout << team_to_json(team) << "\n";
    else
      write_team_csv(std::cout, team);
    return kExitVerdict;
  }
  write_team_csv_file(o.to_team, team);

  json pairs = json::array();
  std::ostringstream lines;
  for (const std::string& c : g.questions_a)
    for (const std::string& d : g.questions_b) {
      std::size_t count = 0;
      for (const std::string& a : g.answers_a)
        for (const std::string& b : g.answers_b)
          if (g.wins(a, b, c, d)) ++count;
      lines << "pair (" << c << "," << d << "): " << count << " winning answers\n";
      pairs.push_back(json{{"question_a", c}, {"question_b", d}, {"winning", count}});
    }

  if (o.as_json) {
    emit(json{{"schema", 1},
              {"command", "game"},
              {"questions", {g.questions_a.size(), g.questions_b.size()}},
              {"answers", {g.answers_a.size(), g.answers_b.size()}},
              {"rows", team.size()},
              {"pairs", pairs},
              {"out", o.to_team}},
         true);
  } else {
    std::cout << "questions: " << g.questions_a.size() << " x " << g.questions_b.size()
              << "\n"
              << "answers: " << g.answers_a.size() << " x " << g.answers_b.size() << "\n"
              << "rows: " << team.size() << "\n"
              << lines.str() << "wrote: " << o.to_team << "\n";
  }
  return kExitVerdict;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Workbench for team semantics, hidden-variable realizations and "
               "quantum counterexamples"};
  app.require_subcommand(1);

  EvalOpts eval_opts;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a formula on a team");
  eval_cmd->add_option("--team", eval_opts.team, "Team file (.csv or .json)")
      ->required()
      ->check(CLI::ExistingFile);
  eval_cmd->add_option("--formula", eval_opts.formula, "Formula in the DSL")->required();
  eval_cmd->add_flag("--prob", eval_opts.prob, "Probabilistic semantics");
  eval_cmd->add_option("--k-max", eval_opts.k_max, "Fresh-sort size cap for Eh/Ah");
  eval_cmd->add_option("--budget", eval_opts.budget, "Node budget before giving up");
  eval_cmd->add_flag("--json", eval_opts.as_json, "JSON report");

  PropertyOpts prop_opts;
  auto* prop_cmd = app.add_subcommand("property", "Check a named team property");
  prop_cmd->add_option("--team", prop_opts.team, "Team file")->required()->check(CLI::ExistingFile);
  prop_cmd->add_option("--check", prop_opts.check, "WD|SD|NS|SV|ZI|PI|OI|ML|LOCAL")->required();
  prop_cmd->add_flag("--prob", prop_opts.prob, "Probabilistic semantics");
  prop_cmd->add_flag("--json", prop_opts.as_json, "JSON report");

  RealizeOpts realize_opts;
  auto* realize_cmd = app.add_subcommand("realize", "Construct a hidden-variable realization");
  realize_cmd->add_option("--team", realize_opts.team, "Empirical team file")
      ->required()
      ->check(CLI::ExistingFile);
  realize_cmd->add_option("--mode", realize_opts.mode, "sv|sd|wdzi|canon")
      ->required()
      ->check(CLI::IsMember({"sv", "sd", "wdzi", "canon"}));
  realize_cmd->add_option("--out", realize_opts.out, "Output CSV (stdout when omitted)");
  realize_cmd->add_option("--count", realize_opts.count, "Hidden columns for --mode sv");
  realize_cmd->add_option("--budget", realize_opts.budget,
                          "Cap on candidate selectors / output rows");
  realize_cmd->add_flag("--json", realize_opts.as_json, "JSON output");

  LiftOpts lift_opts;
  auto* lift_cmd = app.add_subcommand("lift", "Probabilistic lift of a z-independent team");
  lift_cmd->add_option("--team", lift_opts.team, "Team file")->required()->check(CLI::ExistingFile);
  lift_cmd->add_option("--out", lift_opts.out, "Output CSV (stdout when omitted)");
  lift_cmd->add_flag("--json", lift_opts.as_json, "JSON output");

  EntropyOpts entropy_opts;
  auto* entropy_cmd =
      app.add_subcommand("entropy-report", "Entropy decomposition of a team's lift");
  entropy_cmd->add_option("--team", entropy_opts.team, "Team file (plain teams are lifted)")
      ->required()
      ->check(CLI::ExistingFile);
  entropy_cmd->add_flag("--json", entropy_opts.as_json, "JSON report");

  ProbeOpts probe_opts;
  auto* probe_cmd =
      app.add_subcommand("pr-probe", "Search for a probabilistic realization on a support");
  probe_cmd->add_option("--team", probe_opts.team, "Support team file")
      ->required()
      ->check(CLI::ExistingFile);
  probe_cmd
      ->add_option("--prop", probe_opts.props, "Target properties (repeatable)")
      ->required()
      ->check(CLI::IsMember({"WD", "SD", "NS", "SV", "ZI", "PI", "OI", "ML", "LOCAL"}));
  probe_cmd->add_option("--restarts", probe_opts.config.restarts, "Random restarts");
  probe_cmd->add_option("--iterations", probe_opts.config.iterations, "Steps per restart");
  probe_cmd->add_option("--seed", probe_opts.config.seed, "Base seed");
  probe_cmd->add_option("--floor-divisor", probe_opts.config.floor_divisor,
                        "Support floor = 1/(divisor * rows)");
  probe_cmd->add_option("--out", probe_opts.out, "Write the witness CSV here");
  probe_cmd->add_flag("--json", probe_opts.as_json, "JSON report");

  EntailOpts entail_opts;
  auto* entail_cmd = app.add_subcommand("entail", "Derive an atom from premises via the rules");
  entail_cmd->add_option("--premises", entail_opts.premises,
                         "File with one atom per line (# comments allowed)")
      ->check(CLI::ExistingFile);
  entail_cmd->add_option("--goal", entail_opts.goal, "Goal atom")->required();
  entail_cmd->add_option("--depth", entail_opts.depth, "Depth limit");
  entail_cmd->add_option("--max-facts", entail_opts.max_facts, "Fact budget");
  entail_cmd->add_flag("--json", entail_opts.as_json, "JSON report");

  NogoOpts nogo_opts;
  auto* nogo_cmd = app.add_subcommand("nogo", "Verify a counterexample case by brute force");
  nogo_cmd->add_option("--case", nogo_opts.which, "epr|ghz|hardy|ks")
      ->required()
      ->check(CLI::IsMember({"epr", "ghz", "hardy", "ks"}));
  nogo_cmd->add_option("--emit", nogo_opts.emit_path, "Write the canonical team CSV here");
  nogo_cmd->add_flag("--json", nogo_opts.as_json, "JSON report");

  QuantumOpts quantum_opts;
  auto* quantum_cmd = app.add_subcommand("quantum", "Regenerate a quantum preset team");
  quantum_cmd->add_option("--preset", quantum_opts.preset, "epr|ghz|hardy")
      ->required()
      ->check(CLI::IsMember({"epr", "ghz", "hardy"}));
  quantum_cmd->add_option("--emit", quantum_opts.emit_path, "Write the probabilistic team here");
  quantum_cmd->add_flag("--json", quantum_opts.as_json, "JSON report");

  GameOpts game_opts;
  auto* game_cmd = app.add_subcommand("game", "Turn a non-local game into a team");
  game_cmd->add_option("--spec", game_opts.spec, "Game description (JSON)")
      ->required()
      ->check(CLI::ExistingFile);
  game_cmd->add_option("--to-team", game_opts.to_team, "Output CSV (stdout when omitted)");
  game_cmd->add_flag("--json", game_opts.as_json, "JSON output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (eval_cmd->parsed()) return run_eval(eval_opts);
    if (prop_cmd->parsed()) return run_property(prop_opts);
    if (realize_cmd->parsed()) return run_realize(realize_opts);
    if (lift_cmd->parsed()) return run_lift(lift_opts);
    if (entropy_cmd->parsed()) return run_entropy_report(entropy_opts);
    if (probe_cmd->parsed()) return run_pr_probe(probe_opts);
    if (entail_cmd->parsed()) return run_entail(entail_opts);
    if (nogo_cmd->parsed()) return run_nogo(nogo_opts);
    if (quantum_cmd->parsed()) return run_quantum(quantum_opts);
    if (game_cmd->parsed()) return run_game(game_opts);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
