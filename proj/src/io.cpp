#include "teamsem/io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace teamsem {
namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Fields may be double-quoted (required when a value carries a comma, a
// quote, edge whitespace or a leading '#'); "" inside quotes is a literal
// quote. Unquoted fields are trimmed, quoted ones taken verbatim.
std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  bool quoted = false;
  bool in_quotes = false;
  auto flush = [&] {
    cells.push_back(quoted ? cur : trim(cur));
    cur.clear();
    quoted = false;
  };
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (in_quotes) {
      if (c != '"') {
        cur.push_back(c);
      } else if (i + 1 < line.size() && line[i + 1] == '"') {
        cur.push_back('"');
        ++i;
      } else {
        in_quotes = false;
      }
    } else if (c == ',') {
      flush();
    } else if (c == '"' && !quoted && trim(cur).empty()) {
      in_quotes = quoted = true;
      cur.clear();
    } else if (quoted && !std::isspace(static_cast<unsigned char>(c))) {
      throw std::invalid_argument("text after closing quote");
    } else if (!quoted) {
      cur.push_back(c);
    }
  }
  if (in_quotes) throw std::invalid_argument("unterminated quoted cell");
  flush();
  return cells;
}

[[noreturn]] void fail(const std::string& name, std::size_t line, const std::string& msg) {
  throw std::runtime_error(name + ":" + std::to_string(line) + ": " + msg);
}

}  // namespace

Team TeamFile::to_team() const { return Team::from_rows(domain, rows); }

ProbTeam TeamFile::to_prob_team() const {
  if (!probabilistic) throw std::runtime_error("team file has no weight column");
  return ProbTeam::from_weighted_rows(domain, rows, weights);
}

TeamFile read_team_csv(std::istream& in, const std::string& name) {
  TeamFile tf;
  std::string line;
  std::size_t lineno = 0;
  auto cells_of = [&](const std::string& l) {
    try {
      return split_csv(l);
    } catch (const std::invalid_argument& e) {
      fail(name, lineno, e.what());
    }
  };

  // Header.
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    break;
  }
  if (lineno == 0 || trim(line).empty()) fail(name, lineno, "missing header row");
  std::vector<std::string> header = cells_of(line);
  std::size_t ncols = header.size();
  if (!header.empty() && header.back() == "prob") {
    tf.probabilistic = true;
    --ncols;
  }
  if (ncols == 0) fail(name, lineno, "no variables in header");
  for (std::size_t i = 0; i < ncols; ++i) {
    if (header[i].empty()) fail(name, lineno, "empty variable name in header");
    for (std::size_t j = 0; j < i; ++j)
      if (header[j] == header[i]) fail(name, lineno, "duplicate variable '" + header[i] + "'");
    tf.domain.push_back({header[i], role_from_name(header[i])});
  }

  bool roles_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty()) continue;
    if (t.rfind("#roles:", 0) == 0) {
      if (roles_seen) fail(name, lineno, "duplicate #roles line");
      if (!tf.rows.empty()) fail(name, lineno, "#roles must come before data rows");
      roles_seen = true;
      std::vector<std::string> letters = cells_of(t.substr(7));
      if (letters.size() != ncols)
        fail(name, lineno,
             "expected " + std::to_string(ncols) + " roles, got " + std::to_string(letters.size()));
      for (std::size_t i = 0; i < ncols; ++i) {
        auto r = role_from_letter(letters[i]);
        if (!r) fail(name, lineno, "unknown role '" + letters[i] + "'");
        tf.domain[i].role = *r;
      }
      continue;
    }
    if (t[0] == '#') continue;  // other comments are ignored
    std::vector<std::string> cells = cells_of(t);
    std::size_t want = ncols + (tf.probabilistic ? 1 : 0);
    if (cells.size() != want)
      fail(name, lineno,
           "expected " + std::to_string(want) + " cells, got " + std::to_string(cells.size()));
    Row row;
    row.reserve(ncols);
    for (std::size_t i = 0; i < ncols; ++i) {
      if (cells[i].empty()) fail(name, lineno, "empty cell");
      row.push_back(intern_value(cells[i]));
    }
    tf.rows.push_back(std::move(row));
    if (tf.probabilistic) {
      try {
        tf.weights.push_back(parse_rational(cells.back()));
      } catch (const std::invalid_argument& e) {
        fail(name, lineno, e.what());
      }
    }
  }
  return tf;
}

TeamFile read_team_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return read_team_csv(in, path);
}

TeamFile read_team_json(std::istream& in, const std::string& name) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error(name + ": " + e.what());
  }
  TeamFile tf;
  if (!j.contains("domain") || !j["domain"].is_array())
    throw std::runtime_error(name + ": missing 'domain' array");
  std::vector<std::string> names = j["domain"].get<std::vector<std::string>>();
  std::vector<std::string> roles;
  if (j.contains("roles")) roles = j["roles"].get<std::vector<std::string>>();
  if (!roles.empty() && roles.size() != names.size())
    throw std::runtime_error(name + ": 'roles' length does not match 'domain'");
  for (std::size_t i = 0; i < names.size(); ++i) {
    Role r = role_from_name(names[i]);
    if (!roles.empty()) {
      auto parsed = role_from_letter(roles[i]);
      if (!parsed) throw std::runtime_error(name + ": unknown role '" + roles[i] + "'");
      r = *parsed;
    }
    tf.domain.push_back({names[i], r});
  }
  if (!j.contains("rows") || !j["rows"].is_array())
    throw std::runtime_error(name + ": missing 'rows' array");
  for (const auto& jr : j["rows"]) {
    std::vector<std::string> cells = jr.get<std::vector<std::string>>();
    if (cells.size() != tf.domain.size())
      throw std::runtime_error(name + ": row width does not match domain");
    Row row;
    for (const auto& c : cells) row.push_back(intern_value(c));
    tf.rows.push_back(std::move(row));
  }
  if (j.contains("weights")) {
    tf.probabilistic = true;
    for (const auto& w : j["weights"]) tf.weights.push_back(parse_rational(w.get<std::string>()));
    if (tf.weights.size() != tf.rows.size())
      throw std::runtime_error(name + ": 'weights' length does not match 'rows'");
  }
  return tf;
}

TeamFile read_team_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return read_team_json(in, path);
}

TeamFile read_team_file(const std::string& path) {
  if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") return read_team_json_file(path);
  return read_team_csv_file(path);
}

namespace {

// Quotes only when the reader would otherwise mangle the field, so files
// without awkward values stay exactly as they always were.
std::string csv_field(const std::string& s) {
  bool needs = s.empty() || s.front() == '#' ||
               std::isspace(static_cast<unsigned char>(s.front())) ||
               std::isspace(static_cast<unsigned char>(s.back())) ||
               s.find_first_of(",\"\n\r") != std::string::npos;
  if (!needs) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += "\"\"";
    else quoted += c;
  }
  quoted += '"';
  return quoted;
}

void write_csv_impl(std::ostream& out, const std::vector<Variable>& domain,
                    const std::vector<Row>& rows, const std::vector<Rat>* weights) {
  for (std::size_t i = 0; i < domain.size(); ++i) {
    if (i) out << ',';
    out << csv_field(domain[i].name);
  }
  if (weights) out << ",prob";
  out << '\n';
  out << "#roles:";
  for (std::size_t i = 0; i < domain.size(); ++i) {
    out << (i ? ',' : ' ') << role_letter(domain[i].role);
  }
  out << '\n';
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      if (j) out << ',';
      out << csv_field(value_token(rows[i][j]));
    }
    if (weights) out << ',' << rat_to_string((*weights)[i]);
    out << '\n';
  }
}

nlohmann::json json_impl(const std::vector<Variable>& domain, const std::vector<Row>& rows,
                         const std::vector<Rat>* weights) {
  nlohmann::json j;
  j["schema"] = 1;
  std::vector<std::string> names, roles;
  for (const auto& v : domain) {
    names.push_back(v.name);
    roles.push_back(std::string(1, role_letter(v.role)));
  }
  j["domain"] = names;
  j["roles"] = roles;
  nlohmann::json jrows = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json jr = nlohmann::json::array();
    for (Value v : r) jr.push_back(value_token(v));
    jrows.push_back(jr);
  }
  j["rows"] = jrows;
  if (weights) {
    nlohmann::json jw = nlohmann::json::array();
    for (const auto& w : *weights) jw.push_back(rat_to_fraction(w));
    j["weights"] = jw;
  }
  return j;
}

}  // namespace

void write_team_csv(std::ostream& out, const Team& team) {
  write_csv_impl(out, team.domain(), team.rows(), nullptr);
}

void write_team_csv(std::ostream& out, const ProbTeam& team) {
  write_csv_impl(out, team.domain(), team.rows(), &team.weights());
}

void write_team_csv_file(const std::string& path, const Team& team) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_team_csv(out, team);
}

void write_team_csv_file(const std::string& path, const ProbTeam& team) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_team_csv(out, team);
}

std::string team_to_json(const Team& team) {
  return json_impl(team.domain(), team.rows(), nullptr).dump(2);
}

std::string team_to_json(const ProbTeam& team) {
  return json_impl(team.domain(), team.rows(), &team.weights()).dump(2);
}

}  // namespace teamsem
