// Independence-logic formulas: AST, parser and printer.
//
// Concrete syntax (operators bind tighter left to right, /\ over \/):
//
//   formula := disj
//   disj    := conj ("\/" conj)*
//   conj    := unit ("/\" unit)*
//   unit    := quant | atom | "(" formula ")"
//   quant   := ("E" | "A" | "Eh" | "Ah") var "." unit
//   atom    := tuple "_||_" tuple ["|" tuple]     independence y _||_ z | x
//            | "=(" tuple [";" tuple] ")"         constancy =(z) / dependence =(x ; y)
//            | var "=" var | var "!=" var
//   tuple   := var (var)*
//
// E/A quantify over the active value domain; Eh/Ah additionally introduce a
// fresh sort for the bound (hidden) variable. =(x;y) is sugar for y _||_ y | x
// and =(z) for z _||_ z with an empty condition.
#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace teamsem {

enum class FormulaKind { Eq, Neq, Indep, And, Or, Exists, Forall, ExistsSort, ForallSort };

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  FormulaKind kind;

  // Eq / Neq
  std::string u, v;

  // Indep: left _||_ right | cond. Dependence atoms are stored with
  // left == right; sugar controls how they print.
  std::vector<std::string> left, cond, right;
  enum class Sugar { None, Dep, Const } sugar = Sugar::None;

  // And / Or
  FormulaPtr lhs, rhs;

  // Quantifiers
  std::string var;
  FormulaPtr body;

  static FormulaPtr eq(std::string u, std::string v);
  static FormulaPtr neq(std::string u, std::string v);
  static FormulaPtr indep(std::vector<std::string> left, std::vector<std::string> cond,
                          std::vector<std::string> right);
  // =(x ; y): y is constant on each x-class.
  static FormulaPtr dep(std::vector<std::string> x, std::vector<std::string> y);
  // =(z): z is constant.
  static FormulaPtr constant(std::vector<std::string> z);
  static FormulaPtr conj(FormulaPtr a, FormulaPtr b);
  static FormulaPtr disj(FormulaPtr a, FormulaPtr b);
  static FormulaPtr exists(std::string var, FormulaPtr body);
  static FormulaPtr forall(std::string var, FormulaPtr body);
  static FormulaPtr exists_sort(std::string var, FormulaPtr body);
  static FormulaPtr forall_sort(std::string var, FormulaPtr body);

  // Conjunction of all formulas (empty input yields a trivially true atom).
  static FormulaPtr conj_all(const std::vector<FormulaPtr>& parts);
};

struct ParseError : std::runtime_error {
  std::size_t position;  // 0-based offset into the input
  ParseError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " at position " + std::to_string(pos)), position(pos) {}
};

// Parses and renames bound variables apart from free variables and from each
// other, so downstream code never has to deal with shadowing.
FormulaPtr parse_formula(const std::string& text);

// Prints in the concrete syntax above; parse(print(f)) reproduces f.
std::string print_formula(const FormulaPtr& f);

std::vector<std::string> free_variables(const FormulaPtr& f);

// True when the formula contains no plain independence atom (dependence and
// constancy atoms are fine). Such formulas hold in a probabilistic team
// exactly when they hold in its possibilistic collapse.
bool is_weakly_flat(const FormulaPtr& f);

}  // namespace teamsem
