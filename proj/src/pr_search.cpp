// Feasibility probe for probabilistic realizability: minimize the largest
// violation of the property-defining polynomial identities over
// distributions whose support is exactly the given team.
//
// The support constraint is enforced by a weight floor 1/(floor_divisor *
// rows). The floor matters: without it the search can park almost all mass
// on one section and drive every residual to zero without exhibiting a
// genuine witness. Candidate witnesses are snapped to small rationals and
// re-verified exactly before being returned.
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <random>
#include <thread>
#include <vector>

#include "teamsem/constructions.hpp"

namespace teamsem {

namespace {

int probe_threads() {
  if (const char* env = std::getenv("TEAMSEM_THREADS")) {
    int n = std::atoi(env);
    if (n >= 1) return n;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return int(std::min(hw ? hw : 1u, 8u));
}

// One independence atom compiled against the team: rows grouped into
// condition sections, each row tagged with its left/right value ids.
struct CompiledAtom {
  struct Section {
    std::vector<int> rows;
    std::vector<int> a, b;  // per member: left/right value id in the section
    int na = 0, nb = 0;
  };
  std::vector<Section> sections;
};

CompiledAtom compile_atom(const Team& team, const IndepAtom& atom) {
  auto lc = team.require_columns(atom.left);
  auto cc = team.require_columns(atom.cond);
  auto rc = team.require_columns(atom.right);
  auto id_of = [](std::vector<Row>& pool, Row r) {
    for (std::size_t i = 0; i < pool.size(); ++i)
      if (pool[i] == r) return int(i);
    pool.push_back(std::move(r));
    return int(pool.size()) - 1;
  };
  std::vector<Row> keys;
  std::vector<std::vector<Row>> la, lb;
  CompiledAtom out;
  for (std::size_t i = 0; i < team.size(); ++i) {
    const Row& r = team.rows()[i];
    std::size_t s = std::size_t(id_of(keys, project_row(r, cc)));
    if (s == out.sections.size()) {
      out.sections.emplace_back();
      la.emplace_back();
      lb.emplace_back();
    }
    auto& sec = out.sections[s];
    sec.rows.push_back(int(i));
    sec.a.push_back(id_of(la[s], project_row(r, lc)));
    sec.b.push_back(id_of(lb[s], project_row(r, rc)));
  }
  for (std::size_t s = 0; s < keys.size(); ++s) {
    out.sections[s].na = int(la[s].size());
    out.sections[s].nb = int(lb[s].size());
  }
  return out;
}

struct Violation {
  double value = 0.0;         // signed: lw*rw - pw*T
  const CompiledAtom::Section* sec = nullptr;
  int a = 0, b = 0;
};

// Largest-magnitude violation across all atoms at the distribution p.
Violation max_violation(const std::vector<CompiledAtom>& atoms, const std::vector<double>& p) {
  Violation worst;
  std::vector<double> lw, rw, pw;
  for (const CompiledAtom& atom : atoms) {
    for (const auto& sec : atom.sections) {
      lw.assign(std::size_t(sec.na), 0.0);
      rw.assign(std::size_t(sec.nb), 0.0);
      pw.assign(std::size_t(sec.na * sec.nb), 0.0);
      double total = 0.0;
      for (std::size_t k = 0; k < sec.rows.size(); ++k) {
        double w = p[std::size_t(sec.rows[k])];
        total += w;
        lw[std::size_t(sec.a[k])] += w;
        rw[std::size_t(sec.b[k])] += w;
        pw[std::size_t(sec.a[k] * sec.nb + sec.b[k])] += w;
      }
      for (int a = 0; a < sec.na; ++a)
        for (int b = 0; b < sec.nb; ++b) {
          double v = lw[std::size_t(a)] * rw[std::size_t(b)] -
                     pw[std::size_t(a * sec.nb + b)] * total;
          if (std::abs(v) > std::abs(worst.value)) worst = {v, &sec, a, b};
        }
    }
  }
  return worst;
}

// Projection onto { p >= floor, sum p = 1 } by repeated clip-and-rescale.
void project_floor(std::vector<double>& p, double floor) {
  for (int pass = 0; pass < 6; ++pass) {
    double clipped_mass = 0.0, free_mass = 0.0;
    for (double w : p)
      (w <= floor ? clipped_mass += floor : free_mass += w);
    double scale = (1.0 - clipped_mass) / free_mass;
    bool stable = true;
    for (double& w : p) {
      w = (w <= floor) ? floor : w * scale;
      if (w < floor - 1e-15) stable = false;
    }
    if (stable) break;
  }
}

double run_restart(const std::vector<CompiledAtom>& atoms, std::size_t nrows, double floor,
                   int iterations, std::uint64_t seed, bool uniform_start,
                   std::vector<double>* best_point) {
  std::vector<double> p(nrows, 1.0 / double(nrows));
  if (!uniform_start) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (double& w : p) w = -std::log(1.0 - unit(gen));
    double s = 0.0;
    for (double w : p) s += w;
    for (double& w : p) w /= s;
    project_floor(p, floor);
  }

  double best = std::abs(max_violation(atoms, p).value);
  if (best_point) *best_point = p;
  std::vector<double> lw, rw, pwrow;
  for (int t = 0; t < iterations; ++t) {
    Violation v = max_violation(atoms, p);
    if (std::abs(v.value) < best) {
      best = std::abs(v.value);
      if (best_point) *best_point = p;
    }
    if (!v.sec || v.value == 0.0) break;
    const auto& sec = *v.sec;

    // Gradient of |lw*rw - pw*T| restricted to the section's rows.
    double lwa = 0.0, rwb = 0.0, pwab = 0.0, total = 0.0;
    for (std::size_t k = 0; k < sec.rows.size(); ++k) {
      double w = p[std::size_t(sec.rows[k])];
      total += w;
      if (sec.a[k] == v.a) lwa += w;
      if (sec.b[k] == v.b) rwb += w;
      if (sec.a[k] == v.a && sec.b[k] == v.b) pwab += w;
    }
    double sign = v.value > 0 ? 1.0 : -1.0;
    double lr = 0.5 / (1.0 + double(t) / 64.0);
    for (std::size_t k = 0; k < sec.rows.size(); ++k) {
      double g = 0.0;
      if (sec.a[k] == v.a) g += rwb;
      if (sec.b[k] == v.b) g += lwa;
      if (sec.a[k] == v.a && sec.b[k] == v.b) g -= total;
      g -= pwab;
      p[std::size_t(sec.rows[k])] *= std::exp(-lr * sign * g);
    }
    double s = 0.0;
    for (double w : p) s += w;
    for (double& w : p) w /= s;
    project_floor(p, floor);
  }
  return best;
}

}  // namespace

PrProbeResult search_probabilistic_realization(const Team& team,
                                               const std::vector<PropertyId>& props,
                                               const PrProbeConfig& config) {
  if (team.empty()) return {};
  TeamRoles roles = TeamRoles::infer(team.domain());
  std::vector<CompiledAtom> atoms;
  for (PropertyId p : props)
    for (const IndepAtom& atom : independence_atoms(property_formula(p, roles)))
      atoms.push_back(compile_atom(team, atom));

  const std::size_t nrows = team.size();
  const double floor = 1.0 / (config.floor_divisor * double(nrows));
  const int restarts = std::max(config.restarts, 1);

  struct Outcome {
    double residual = std::numeric_limits<double>::infinity();
    int restart = -1;
    std::vector<double> point;
  };
  const int nthreads = std::min(probe_threads(), restarts);
  std::vector<Outcome> per_thread{std::size_t(nthreads)};
  std::atomic<int> next{0};
  auto worker = [&](int tid) {
    Outcome& best = per_thread[std::size_t(tid)];
    std::vector<double> point;
    for (int r; (r = next.fetch_add(1)) < restarts;) {
      double res = run_restart(atoms, nrows, floor, config.iterations, config.seed + std::uint64_t(r),
                               r == 0, &point);
      if (res < best.residual || (res == best.residual && r < best.restart)) {
        best.residual = res;
        best.restart = r;
        best.point = point;
      }
    }
  };
  if (nthreads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }
  Outcome best;
  for (const Outcome& o : per_thread)
    if (o.residual < best.residual || (o.residual == best.residual && o.restart != -1 &&
                                       (best.restart == -1 || o.restart < best.restart)))
      best = o;

  PrProbeResult result;
  result.best_residual = best.residual;
  result.best_restart = best.restart;
  if (best.residual < 1e-9 && !best.point.empty()) {
    std::vector<Rat> weights;
    Rat sum = 0;
    for (double w : best.point) {
      weights.push_back(approximate_rational(w, 1'000'000));
      sum += weights.back();
    }
    if (sum > 0) {
      for (Rat& w : weights) w /= sum;
      ProbTeam candidate = ProbTeam::from_weighted_rows(
          team.domain(), {team.rows().begin(), team.rows().end()}, std::move(weights));
      bool exact = candidate.size() == team.size();
      for (PropertyId p : props) exact = exact && check_property(candidate, p);
      if (exact) result.witness = std::move(candidate);
    }
  }
  return result;
}

}  // namespace teamsem
