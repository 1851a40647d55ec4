#include "teamsem/formula.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace teamsem {

namespace {

FormulaPtr make(Formula f) { return std::make_shared<const Formula>(std::move(f)); }

}  // namespace

FormulaPtr Formula::eq(std::string u, std::string v) {
  Formula f;
  f.kind = FormulaKind::Eq;
  f.u = std::move(u);
  f.v = std::move(v);
  return make(std::move(f));
}

FormulaPtr Formula::neq(std::string u, std::string v) {
  Formula f;
  f.kind = FormulaKind::Neq;
  f.u = std::move(u);
  f.v = std::move(v);
  return make(std::move(f));
}

FormulaPtr Formula::indep(std::vector<std::string> left, std::vector<std::string> cond,
                          std::vector<std::string> right) {
  Formula f;
  f.kind = FormulaKind::Indep;
  f.left = std::move(left);
  f.cond = std::move(cond);
  f.right = std::move(right);
  return make(std::move(f));
}

FormulaPtr Formula::dep(std::vector<std::string> x, std::vector<std::string> y) {
  Formula f;
  f.kind = FormulaKind::Indep;
  f.left = y;
  f.cond = std::move(x);
  f.right = std::move(y);
  f.sugar = Sugar::Dep;
  return make(std::move(f));
}

FormulaPtr Formula::constant(std::vector<std::string> z) {
  Formula f;
  f.kind = FormulaKind::Indep;
  f.left = z;
  f.right = std::move(z);
  f.sugar = Sugar::Const;
  return make(std::move(f));
}

FormulaPtr Formula::conj(FormulaPtr a, FormulaPtr b) {
  Formula f;
  f.kind = FormulaKind::And;
  f.lhs = std::move(a);
  f.rhs = std::move(b);
  return make(std::move(f));
}

FormulaPtr Formula::disj(FormulaPtr a, FormulaPtr b) {
  Formula f;
  f.kind = FormulaKind::Or;
  f.lhs = std::move(a);
  f.rhs = std::move(b);
  return make(std::move(f));
}

FormulaPtr Formula::exists(std::string var, FormulaPtr body) {
  Formula f;
  f.kind = FormulaKind::Exists;
  f.var = std::move(var);
  f.body = std::move(body);
  return make(std::move(f));
}

FormulaPtr Formula::forall(std::string var, FormulaPtr body) {
  Formula f;
  f.kind = FormulaKind::Forall;
  f.var = std::move(var);
  f.body = std::move(body);
  return make(std::move(f));
}

FormulaPtr Formula::exists_sort(std::string var, FormulaPtr body) {
  Formula f;
  f.kind = FormulaKind::ExistsSort;
  f.var = std::move(var);
  f.body = std::move(body);
  return make(std::move(f));
}

FormulaPtr Formula::forall_sort(std::string var, FormulaPtr body) {
  Formula f;
  f.kind = FormulaKind::ForallSort;
  f.var = std::move(var);
  f.body = std::move(body);
  return make(std::move(f));
}

FormulaPtr Formula::conj_all(const std::vector<FormulaPtr>& parts) {
  if (parts.empty()) return constant({});  // =() holds in every team
  FormulaPtr acc = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) acc = conj(acc, parts[i]);
  return acc;
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

namespace {

struct Token {
  enum Type { Ident, And, Or, Indep, Pipe, Semi, Dot, LParen, RParen, DepOpen, EqSym, NeqSym, End };
  Type type;
  std::string text;
  std::size_t pos;
};

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(&src) { advance(); }

  const Token& peek() const { return tok_; }

  Token next() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  static bool ident_start(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
  }
  static bool ident_char(char c) { return ident_start(c) || (c >= '0' && c <= '9') || c == '\''; }

  void advance() {
    const std::string& src = *src_;
    while (i_ < src.size() && (src[i_] == ' ' || src[i_] == '\t' || src[i_] == '\n' ||
                               src[i_] == '\r'))
      ++i_;
    std::size_t start = i_;
    if (i_ >= src.size()) {
      tok_ = {Token::End, "", start};
      return;
    }
    char c = src[i_];
    auto two = [&](char a, char b) {
      return c == a && i_ + 1 < src.size() && src[i_ + 1] == b;
    };
    if (two('/', '\\')) {
      i_ += 2;
      tok_ = {Token::And, "/\\", start};
      return;
    }
    if (two('\\', '/')) {
      i_ += 2;
      tok_ = {Token::Or, "\\/", start};
      return;
    }
    if (src.compare(i_, 4, "_||_") == 0) {
      i_ += 4;
      tok_ = {Token::Indep, "_||_", start};
      return;
    }
    if (two('=', '(')) {
      i_ += 2;
      tok_ = {Token::DepOpen, "=(", start};
      return;
    }
    if (two('!', '=')) {
      i_ += 2;
      tok_ = {Token::NeqSym, "!=", start};
      return;
    }
    switch (c) {
      case '|': ++i_; tok_ = {Token::Pipe, "|", start}; return;
      case ';': ++i_; tok_ = {Token::Semi, ";", start}; return;
      case '.': ++i_; tok_ = {Token::Dot, ".", start}; return;
      case '(': ++i_; tok_ = {Token::LParen, "(", start}; return;
      case ')': ++i_; tok_ = {Token::RParen, ")", start}; return;
      case '=': ++i_; tok_ = {Token::EqSym, "=", start}; return;
      default: break;
    }
    if (ident_start(c)) {
      std::size_t j = i_;
      while (j < src.size() && ident_char(src[j])) ++j;
      tok_ = {Token::Ident, src.substr(i_, j - i_), start};
      i_ = j;
      return;
    }
    throw ParseError("unexpected character '" + std::string(1, c) + "'", start);
  }

  const std::string* src_;
  std::size_t i_ = 0;
  Token tok_;
};

class Parser {
 public:
  explicit Parser(const std::string& src) : lex_(src) {}

  FormulaPtr parse() {
    FormulaPtr f = disj();
    if (lex_.peek().type != Token::End)
      throw ParseError("trailing input '" + lex_.peek().text + "'", lex_.peek().pos);
    return f;
  }

 private:
  FormulaPtr disj() {
    FormulaPtr f = conj();
    while (lex_.peek().type == Token::Or) {
      lex_.next();
      f = Formula::disj(f, conj());
    }
    return f;
  }

  FormulaPtr conj() {
    FormulaPtr f = unit();
    while (lex_.peek().type == Token::And) {
      lex_.next();
      f = Formula::conj(f, unit());
    }
    return f;
  }

  FormulaPtr unit() {
    const Token& t = lex_.peek();
    if (t.type == Token::LParen) {
      lex_.next();
      FormulaPtr f = disj();
      expect(Token::RParen, ")");
      return f;
    }
    if (t.type == Token::DepOpen) return dep_atom();
    if (t.type == Token::Ident && is_quantifier(t.text)) {
      // "E x . phi" only reads as a quantifier when followed by a variable
      // and a dot; otherwise the name is an ordinary variable.
      std::string q = t.text;
      Lexer save = lex_;
      lex_.next();
      if (lex_.peek().type == Token::Ident) {
        std::string var = lex_.next().text;
        if (lex_.peek().type == Token::Dot) {
          lex_.next();
          FormulaPtr body = unit();
          if (q == "E") return Formula::exists(var, body);
          if (q == "A") return Formula::forall(var, body);
          if (q == "Eh") return Formula::exists_sort(var, body);
          return Formula::forall_sort(var, body);
        }
      }
      lex_ = save;  // not a quantifier after all
    }
    if (t.type == Token::Ident) return var_atom();
    throw ParseError("expected a formula, found '" + t.text + "'", t.pos);
  }

  static bool is_quantifier(const std::string& s) {
    return s == "E" || s == "A" || s == "Eh" || s == "Ah";
  }

  FormulaPtr dep_atom() {
    lex_.next();  // "=("
    std::vector<std::string> first = tuple();
    if (lex_.peek().type == Token::Semi) {
      lex_.next();
      std::vector<std::string> second = tuple();
      expect(Token::RParen, ")");
      return Formula::dep(std::move(first), std::move(second));
    }
    expect(Token::RParen, ")");
    return Formula::constant(std::move(first));
  }

  FormulaPtr var_atom() {
    Token first = lex_.next();
    if (lex_.peek().type == Token::EqSym) {
      lex_.next();
      Token v = expect(Token::Ident, "variable");
      return Formula::eq(first.text, v.text);
    }
    if (lex_.peek().type == Token::NeqSym) {
      lex_.next();
      Token v = expect(Token::Ident, "variable");
      return Formula::neq(first.text, v.text);
    }
    // A tuple, necessarily the left side of an independence atom.
    std::vector<std::string> left{first.text};
    while (lex_.peek().type == Token::Ident) left.push_back(lex_.next().text);
    expect(Token::Indep, "_||_");
    std::vector<std::string> right = tuple();
    std::vector<std::string> cond;
    if (lex_.peek().type == Token::Pipe) {
      lex_.next();
      cond = tuple();
    }
    return Formula::indep(std::move(left), std::move(cond), std::move(right));
  }

  std::vector<std::string> tuple() {
    std::vector<std::string> vars;
    // The empty tuple is permitted inside =( ) and after "|".
    while (lex_.peek().type == Token::Ident) vars.push_back(lex_.next().text);
    return vars;
  }

  Token expect(Token::Type type, const std::string& what) {
    if (lex_.peek().type != type)
      throw ParseError("expected '" + what + "', found '" +
                           (lex_.peek().type == Token::End ? "end of input" : lex_.peek().text) +
                           "'",
                       lex_.peek().pos);
    return lex_.next();
  }

  Lexer lex_;
};

// ---------------------------------------------------------------------------
// Bound-variable renaming
// ---------------------------------------------------------------------------

void collect_names(const FormulaPtr& f, std::set<std::string>& out) {
  switch (f->kind) {
    case FormulaKind::Eq:
    case FormulaKind::Neq:
      out.insert(f->u);
      out.insert(f->v);
      break;
    case FormulaKind::Indep:
      out.insert(f->left.begin(), f->left.end());
      out.insert(f->cond.begin(), f->cond.end());
      out.insert(f->right.begin(), f->right.end());
      break;
    case FormulaKind::And:
    case FormulaKind::Or:
      collect_names(f->lhs, out);
      collect_names(f->rhs, out);
      break;
    default:
      out.insert(f->var);
      collect_names(f->body, out);
      break;
  }
}

std::string fresh_name(const std::string& base, std::set<std::string>& taken) {
  for (int k = 2;; ++k) {
    std::string cand = base + "_" + std::to_string(k);
    if (taken.insert(cand).second) return cand;
  }
}

std::vector<std::string> substitute(const std::vector<std::string>& vars,
                                    const std::map<std::string, std::string>& env) {
  std::vector<std::string> out;
  out.reserve(vars.size());
  for (const auto& v : vars) {
    auto it = env.find(v);
    out.push_back(it == env.end() ? v : it->second);
  }
  return out;
}

FormulaPtr rename_apart(const FormulaPtr& f, std::map<std::string, std::string> env,
                        std::set<std::string>& taken) {
  switch (f->kind) {
    case FormulaKind::Eq:
    case FormulaKind::Neq: {
      std::vector<std::string> uv = substitute({f->u, f->v}, env);
      return f->kind == FormulaKind::Eq ? Formula::eq(uv[0], uv[1]) : Formula::neq(uv[0], uv[1]);
    }
    case FormulaKind::Indep: {
      Formula g = *f;
      g.left = substitute(f->left, env);
      g.cond = substitute(f->cond, env);
      g.right = substitute(f->right, env);
      return std::make_shared<const Formula>(std::move(g));
    }
    case FormulaKind::And:
      return Formula::conj(rename_apart(f->lhs, env, taken), rename_apart(f->rhs, env, taken));
    case FormulaKind::Or:
      return Formula::disj(rename_apart(f->lhs, env, taken), rename_apart(f->rhs, env, taken));
    default: {
      std::string name = f->var;
      if (taken.count(name)) {
        name = fresh_name(name, taken);
      } else {
        taken.insert(name);
      }
      env[f->var] = name;
      FormulaPtr body = rename_apart(f->body, std::move(env), taken);
      switch (f->kind) {
        case FormulaKind::Exists: return Formula::exists(name, body);
        case FormulaKind::Forall: return Formula::forall(name, body);
        case FormulaKind::ExistsSort: return Formula::exists_sort(name, body);
        default: return Formula::forall_sort(name, body);
      }
    }
  }
}

void free_vars_impl(const FormulaPtr& f, std::set<std::string> bound, std::set<std::string>& out) {
  auto add = [&](const std::string& v) {
    if (!bound.count(v)) out.insert(v);
  };
  switch (f->kind) {
    case FormulaKind::Eq:
    case FormulaKind::Neq:
      add(f->u);
      add(f->v);
      break;
    case FormulaKind::Indep:
      for (const auto& v : f->left) add(v);
      for (const auto& v : f->cond) add(v);
      for (const auto& v : f->right) add(v);
      break;
    case FormulaKind::And:
    case FormulaKind::Or:
      free_vars_impl(f->lhs, bound, out);
      free_vars_impl(f->rhs, bound, out);
      break;
    default:
      bound.insert(f->var);
      free_vars_impl(f->body, std::move(bound), out);
      break;
  }
}

}  // namespace

FormulaPtr parse_formula(const std::string& text) {
  Parser p(text);
  FormulaPtr raw = p.parse();
  std::set<std::string> taken;
  for (const auto& v : free_variables(raw)) taken.insert(v);
  return rename_apart(raw, {}, taken);
}

std::vector<std::string> free_variables(const FormulaPtr& f) {
  std::set<std::string> out;
  free_vars_impl(f, {}, out);
  return {out.begin(), out.end()};
}

// ---------------------------------------------------------------------------
// Printer
// ---------------------------------------------------------------------------

namespace {

void print_tuple(std::ostream& os, const std::vector<std::string>& vars) {
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (i) os << ' ';
    os << vars[i];
  }
}

bool is_atom(const FormulaPtr& f) {
  return f->kind == FormulaKind::Eq || f->kind == FormulaKind::Neq ||
         f->kind == FormulaKind::Indep;
}

bool is_quant(const FormulaPtr& f) {
  return f->kind == FormulaKind::Exists || f->kind == FormulaKind::Forall ||
         f->kind == FormulaKind::ExistsSort || f->kind == FormulaKind::ForallSort;
}

void print_impl(std::ostream& os, const FormulaPtr& f);

// Prints f as a grammar "unit", adding parentheses when f is a connective.
void print_unit(std::ostream& os, const FormulaPtr& f) {
  if (is_atom(f) || is_quant(f)) {
    print_impl(os, f);
  } else {
    os << '(';
    print_impl(os, f);
    os << ')';
  }
}

void print_conj(std::ostream& os, const FormulaPtr& f) {
  if (f->kind == FormulaKind::And) {
    print_conj(os, f->lhs);
    os << " /\\ ";
    print_conj(os, f->rhs);
  } else {
    print_unit(os, f);
  }
}

void print_impl(std::ostream& os, const FormulaPtr& f) {
  switch (f->kind) {
    case FormulaKind::Eq:
      os << f->u << " = " << f->v;
      break;
    case FormulaKind::Neq:
      os << f->u << " != " << f->v;
      break;
    case FormulaKind::Indep:
      if (f->sugar == Formula::Sugar::Const) {
        os << "=(";
        print_tuple(os, f->left);
        os << ')';
      } else if (f->sugar == Formula::Sugar::Dep) {
        os << "=(";
        print_tuple(os, f->cond);
        os << " ; ";
        print_tuple(os, f->left);
        os << ')';
      } else {
        print_tuple(os, f->left);
        os << " _||_ ";
        print_tuple(os, f->right);
        if (!f->cond.empty()) {
          os << " | ";
          print_tuple(os, f->cond);
        }
      }
      break;
    case FormulaKind::And:
      print_conj(os, f);
      break;
    case FormulaKind::Or:
      if (f->lhs->kind == FormulaKind::Or) {
        print_impl(os, f->lhs);
      } else {
        print_conj(os, f->lhs);
      }
      os << " \\/ ";
      print_conj(os, f->rhs);
      break;
    case FormulaKind::Exists:
    case FormulaKind::Forall:
    case FormulaKind::ExistsSort:
    case FormulaKind::ForallSort: {
      const char* q = f->kind == FormulaKind::Exists   ? "E"
                      : f->kind == FormulaKind::Forall ? "A"
                      : f->kind == FormulaKind::ExistsSort ? "Eh"
                                                           : "Ah";
      os << q << ' ' << f->var << ". ";
      print_unit(os, f->body);
      break;
    }
  }
}

}  // namespace

std::string print_formula(const FormulaPtr& f) {
  std::ostringstream os;
  print_impl(os, f);
  return os.str();
}

bool is_weakly_flat(const FormulaPtr& f) {
  switch (f->kind) {
    case FormulaKind::Eq:
    case FormulaKind::Neq:
      return true;
    case FormulaKind::Indep:
      return f->left == f->right;  // dependence/constancy atoms only
    case FormulaKind::And:
    case FormulaKind::Or:
      return is_weakly_flat(f->lhs) && is_weakly_flat(f->rhs);
    default:
      return is_weakly_flat(f->body);
  }
}

}  // namespace teamsem
