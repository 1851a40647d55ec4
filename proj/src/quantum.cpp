#include "teamsem/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>
#include <unsupported/Eigen/KroneckerProduct>

#include "teamsem/rational.hpp"

namespace teamsem {

namespace {

constexpr double kTol = 1e-9;
constexpr int kMaxTotalDim = 64;

using Cplx = std::complex<double>;

std::string tuple_str(const std::vector<int>& t) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) os << ',';
    os << t[i];
  }
  os << ')';
  return os.str();
}

bool hermitian_within(const CMatrix& m, double tol) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

double min_eigenvalue(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver((m + m.adjoint()) / 2.0);
  return solver.eigenvalues().minCoeff();
}

CVector ket(std::initializer_list<Cplx> amps) {
  CVector v(static_cast<Eigen::Index>(amps.size()));
  Eigen::Index i = 0;
  for (Cplx a : amps) v(i++) = a;
  return v;
}

std::vector<std::vector<int>> binary_tuples(int n) {
  std::vector<std::vector<int>> out;
  for (int mask = 0; mask < (1 << n); ++mask) {
    std::vector<int> t(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i) t[static_cast<std::size_t>(i)] = (mask >> (n - 1 - i)) & 1;
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<Variable> empirical_domain(std::size_t n) {
  std::vector<Variable> domain;
  for (std::size_t i = 0; i < n; ++i)
    domain.push_back({"x" + std::to_string(i), Role::Measurement});
  for (std::size_t i = 0; i < n; ++i)
    domain.push_back({"y" + std::to_string(i), Role::Outcome});
  return domain;
}

// Nearest small rational when one is close enough, otherwise the exact
// binary value of the double. Near-zeros snap to an exact zero, which is
// what separates destructive interference from rounding noise downstream.
Rat snap_probability(double w) {
  Rat r = approximate_rational(w, 1'000'000);
  if (std::abs(rat_to_double(r) - w) < kTol) return r;
  return Rat(w);
}

}  // namespace

CMatrix tensor(const std::vector<CMatrix>& ms) {
  if (ms.empty()) throw std::invalid_argument("tensor of an empty operator list");
  CMatrix acc = ms.front();
  for (std::size_t i = 1; i < ms.size(); ++i)
    acc = Eigen::kroneckerProduct(acc, ms[i]).eval();
  return acc;
}

CMatrix projector(const CVector& v) { return v * v.adjoint(); }

QuantumReport validate(const QuantumSystem& sys) {
  QuantumReport report;
  auto flag = [&](std::string msg) {
    report.ok = false;
    report.violations.push_back(std::move(msg));
  };

  const std::size_t n = sys.sites();
  if (n == 0) {
    flag("system has no sites");
    return report;
  }
  long total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (sys.dims[i] < 1) flag("site " + std::to_string(i) + " has dimension < 1");
    total *= std::max(sys.dims[i], 1);
  }
  if (total > kMaxTotalDim)
    flag("total dimension " + std::to_string(total) + " exceeds the cap of " +
         std::to_string(kMaxTotalDim));
  if (sys.povms.size() != n) {
    flag("POVM table covers " + std::to_string(sys.povms.size()) + " of " +
         std::to_string(n) + " sites");
    return report;
  }

  std::vector<std::size_t> outcome_count(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const int d = sys.dims[i];
    if (sys.povms[i].empty()) {
      flag("site " + std::to_string(i) + " has no measurements");
      continue;
    }
    outcome_count[i] = sys.povms[i].begin()->second.size();
    for (const auto& [a, ops] : sys.povms[i]) {
      const std::string where =
          "site " + std::to_string(i) + ", measurement " + std::to_string(a);
      if (ops.empty()) {
        flag(where + ": empty POVM");
        continue;
      }
      if (ops.size() != outcome_count[i])
        flag(where + ": outcome count differs from the site's other measurements");
      CMatrix sum = CMatrix::Zero(d, d);
      bool shaped = true;
      for (std::size_t b = 0; b < ops.size(); ++b) {
        const CMatrix& op = ops[b];
        const std::string el = where + ", outcome " + std::to_string(b);
        if (op.rows() != d || op.cols() != d) {
          flag(el + ": operator shape does not match the site dimension");
          shaped = false;
          continue;
        }
        if (!hermitian_within(op, kTol)) {
          flag(el + ": operator is not Hermitian");
        } else if (double lo = min_eigenvalue(op); lo < -kTol) {
          std::ostringstream os;
          os << el << ": operator is not positive (eigenvalue " << lo << ")";
          flag(os.str());
        }
        sum += op;
      }
      if (shaped) {
        double dev = (sum - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
        if (dev > kTol) {
          std::ostringstream os;
          os << where << ": POVM does not sum to the identity (deviation " << dev << ")";
          flag(os.str());
        }
      }
    }
  }

  if (sys.rho.rows() != total || sys.rho.cols() != total) {
    flag("density operator shape does not match the product dimension " +
         std::to_string(total));
  } else {
    double tr = sys.rho.trace().real();
    if (std::abs(tr - 1.0) > kTol || std::abs(sys.rho.trace().imag()) > kTol) {
      std::ostringstream os;
      os << "density operator trace is " << tr << ", not 1";
      flag(os.str());
    }
    if (!hermitian_within(sys.rho, kTol)) {
      flag("density operator is not Hermitian");
    } else if (double lo = min_eigenvalue(sys.rho); lo < -kTol) {
      std::ostringstream os;
      os << "density operator is not positive (eigenvalue " << lo << ")";
      flag(os.str());
    }
  }

  if (sys.measurements.empty()) flag("empty measurement set");
  for (const auto& a : sys.measurements) {
    if (a.size() != n) {
      flag("measurement tuple " + tuple_str(a) + " has wrong arity");
      continue;
    }
    for (std::size_t i = 0; i < n; ++i)
      if (!sys.povms[i].count(a[i]))
        flag("measurement tuple " + tuple_str(a) + " uses unknown measurement " +
             std::to_string(a[i]) + " at site " + std::to_string(i));
  }
  if (sys.outcomes.empty()) flag("empty outcome set");
  for (const auto& b : sys.outcomes) {
    if (b.size() != n) {
      flag("outcome tuple " + tuple_str(b) + " has wrong arity");
      continue;
    }
    for (std::size_t i = 0; i < n; ++i)
      if (b[i] < 0 || static_cast<std::size_t>(b[i]) >= outcome_count[i])
        flag("outcome tuple " + tuple_str(b) + " is out of range at site " +
             std::to_string(i));
  }
  return report;
}

std::vector<double> outcome_distribution(const QuantumSystem& sys,
                                         const std::vector<int>& a) {
  if (std::find(sys.measurements.begin(), sys.measurements.end(), a) ==
      sys.measurements.end())
    throw std::invalid_argument("unknown measurement tuple " + tuple_str(a));

  const std::size_t n = sys.sites();
  std::vector<double> dist;
  dist.reserve(sys.outcomes.size());
  std::vector<CMatrix> ops(n);
  for (const auto& b : sys.outcomes) {
    for (std::size_t i = 0; i < n; ++i)
      ops[i] = sys.povms[i].at(a[i]).at(static_cast<std::size_t>(b[i]));
    double p = (tensor(ops) * sys.rho).trace().real();
    if (p < 0.0 && p > -1e-12) p = 0.0;  // rounding noise only
    dist.push_back(p);
  }
  return dist;
}

ProbTeam quantum_team(const QuantumSystem& sys) {
  QuantumReport report = validate(sys);
  if (!report.ok) {
    std::string msg = "invalid quantum system";
    for (const std::string& v : report.violations) msg += "; " + v;
    throw std::invalid_argument(msg);
  }

  const std::size_t n = sys.sites();
  std::vector<Variable> domain = empirical_domain(n);
  std::vector<Row> rows;
  std::vector<Rat> weights;
  const Rat m_count(sys.measurements.size());
  for (const auto& a : sys.measurements) {
    std::vector<double> dist = outcome_distribution(sys, a);
    for (std::size_t j = 0; j < sys.outcomes.size(); ++j) {
      Rat w = snap_probability(dist[j] / static_cast<double>(sys.measurements.size()));
      if (w == 0) continue;
      Row row;
      row.reserve(2 * n);
      for (int v : a) row.push_back(intern_value(std::to_string(v)));
      for (int v : sys.outcomes[j]) row.push_back(intern_value(std::to_string(v)));
      rows.push_back(std::move(row));
      weights.push_back(std::move(w));
    }
  }

  Rat sum(0);
  for (const Rat& w : weights) sum += w;
  if (sum == 0) throw std::invalid_argument("quantum system yields an empty team");
  if (sum != 1)
    for (Rat& w : weights) w /= sum;
  return ProbTeam::from_weighted_rows(std::move(domain), std::move(rows),
                                      std::move(weights), /*normalize=*/false);
}

QuantumSystem epr_system() {
  QuantumSystem s;
  s.dims = {2, 2};
  s.povms.resize(2);
  const CVector k0 = ket({1, 0});
  const CVector k1 = ket({0, 1});
  // Site 0 only ever measures "0", site 1 only ever measures "1", both in
  // the computational basis.
  s.povms[0][0] = {projector(k0), projector(k1)};
  s.povms[1][1] = {projector(k0), projector(k1)};
  const double r = 1.0 / std::sqrt(2.0);
  s.rho = projector(ket({0, r, r, 0}));  // (|01> + |10>)/sqrt(2)
  s.measurements = {{0, 1}};
  s.outcomes = binary_tuples(2);
  return s;
}

QuantumSystem ghz_system() {
  QuantumSystem s;
  s.dims = {2, 2, 2};
  s.povms.resize(3);
  const double r = 1.0 / std::sqrt(2.0);
  const Cplx i(0.0, 1.0);
  for (std::size_t k = 0; k < 3; ++k) {
    // Eigenvectors (|0> + (-1)^{1-b} i^a |1>)/sqrt(2) for measurement a,
    // outcome b: the minus sign answers 0, the plus sign answers 1.
    s.povms[k][0] = {projector(ket({r, -r})), projector(ket({r, r}))};
    s.povms[k][1] = {projector(ket({r, -r * i})), projector(ket({r, r * i}))};
  }
  CVector psi = CVector::Zero(8);
  psi(0) = r;
  psi(7) = r;  // (|000> + |111>)/sqrt(2)
  s.rho = projector(psi);
  s.measurements = binary_tuples(3);
  s.outcomes = binary_tuples(3);
  return s;
}

QuantumSystem hardy_system() {
  QuantumSystem s;
  s.dims = {2, 2};
  s.povms.resize(2);
  const double c0 = std::sqrt(3.0 / 5.0);
  const double c1 = std::sqrt(2.0 / 5.0);
  for (std::size_t k = 0; k < 2; ++k) {
    // Measurement 0 is the tilted basis sqrt(3/5)|0> + sqrt(2/5)|1> and its
    // orthogonal complement; measurement 1 is the computational basis.
    s.povms[k][0] = {projector(ket({c0, c1})), projector(ket({-c1, c0}))};
    s.povms[k][1] = {projector(ket({1, 0})), projector(ket({0, 1}))};
  }
  const double q = std::sqrt(3.0 / 8.0);
  s.rho = projector(ket({-0.5, q, q, 0}));
  s.measurements = binary_tuples(2);
  s.outcomes = binary_tuples(2);
  return s;
}

bool NonLocalGame::wins(const std::string& a, const std::string& b,
                        const std::string& c, const std::string& d) const {
  auto it = table.find({a, b, c, d});
  if (it == table.end())
    throw std::invalid_argument("game table has no entry for answers (" + a + "," +
                                b + ") to questions (" + c + "," + d + ")");
  return it->second;
}

NonLocalGame chsh_game() {
  NonLocalGame g;
  g.questions_a = g.questions_b = g.answers_a = g.answers_b = {"0", "1"};
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d)
          g.table[{std::to_string(a), std::to_string(b), std::to_string(c),
                   std::to_string(d)}] = ((a ^ b) == (c & d));
  return g;
}

namespace {

std::vector<std::string> string_list(const nlohmann::json& j, const std::string& name,
                                     const std::string& key) {
  if (!j.contains(key) || !j[key].is_array() || j[key].empty())
    throw std::runtime_error(name + ": missing or empty '" + key + "' array");
  std::vector<std::string> out;
  for (const auto& v : j[key]) {
    if (!v.is_string())
      throw std::runtime_error(name + ": '" + key + "' must hold strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

std::string table_field(const nlohmann::json& entry, const std::string& name,
                        std::size_t index, const std::string& key,
                        const std::vector<std::string>& allowed) {
  if (!entry.contains(key) || !entry[key].is_string())
    throw std::runtime_error(name + ": table entry " + std::to_string(index) +
                             " lacks string field '" + key + "'");
  std::string value = entry[key].get<std::string>();
  if (std::find(allowed.begin(), allowed.end(), value) == allowed.end())
    throw std::runtime_error(name + ": table entry " + std::to_string(index) + ": '" +
                             value + "' is not in the declared '" + key + "' set");
  return value;
}

}  // namespace

NonLocalGame game_from_json(const std::string& text, const std::string& name) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error(name + ": " + e.what());
  }
  NonLocalGame g;
  g.questions_a = string_list(j, name, "questions_a");
  g.questions_b = string_list(j, name, "questions_b");
  g.answers_a = string_list(j, name, "answers_a");
  g.answers_b = string_list(j, name, "answers_b");
  if (!j.contains("table") || !j["table"].is_array())
    throw std::runtime_error(name + ": missing 'table' array");
  std::size_t index = 0;
  for (const auto& entry : j["table"]) {
    std::string a = table_field(entry, name, index, "answer_a", g.answers_a);
    std::string b = table_field(entry, name, index, "answer_b", g.answers_b);
    std::string c = table_field(entry, name, index, "question_a", g.questions_a);
    std::string d = table_field(entry, name, index, "question_b", g.questions_b);
    bool win = false;
    if (entry.contains("win") && entry["win"].is_boolean()) {
      win = entry["win"].get<bool>();
    } else if (entry.contains("win") && entry["win"].is_number_integer()) {
      int v = entry["win"].get<int>();
      if (v != 0 && v != 1)
        throw std::runtime_error(name + ": table entry " + std::to_string(index) +
                                 ": 'win' must be 0 or 1");
      win = v == 1;
    } else {
      throw std::runtime_error(name + ": table entry " + std::to_string(index) +
                               " lacks a 0/1 'win' field");
    }
    if (!g.table.emplace(std::array<std::string, 4>{a, b, c, d}, win).second)
      throw std::runtime_error(name + ": duplicate table entry for answers (" + a +
                               "," + b + ") to questions (" + c + "," + d + ")");
    ++index;
  }
  std::size_t expected =
      g.answers_a.size() * g.answers_b.size() * g.questions_a.size() * g.questions_b.size();
  if (g.table.size() != expected)
    throw std::runtime_error(name + ": table covers " + std::to_string(g.table.size()) +
                             " of " + std::to_string(expected) + " combinations");
  return g;
}

NonLocalGame game_from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return game_from_json(buf.str(), path);
}

Team game_to_team(const NonLocalGame& g) {
  std::vector<Variable> domain = empirical_domain(2);
  for (const std::string& c : g.questions_a)
    for (const std::string& d : g.questions_b) {
      bool winnable = false;
      for (const std::string& a : g.answers_a)
        for (const std::string& b : g.answers_b)
          if (g.wins(a, b, c, d)) winnable = true;
      if (!winnable) return Team(domain);
    }
  std::vector<Row> rows;
  for (const std::string& c : g.questions_a)
    for (const std::string& d : g.questions_b)
      for (const std::string& a : g.answers_a)
        for (const std::string& b : g.answers_b)
          if (g.wins(a, b, c, d))
            rows.push_back({intern_value(c), intern_value(d), intern_value(a),
                            intern_value(b)});
  return Team::from_rows(std::move(domain), std::move(rows));
}

}  // namespace teamsem
