#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bneq/state.hpp"

namespace bneq {

/// Immutable propositional formula over agent positions.
///
/// Node kinds are Const, Var, Not, And, Or and Xor. And/Or are n-ary with at
/// least two children; the factories flatten nested nodes of the same kind
/// and collapse degenerate arities, so every Formula value respects that.
class Formula {
 public:
  enum class Kind { Const, Var, Not, And, Or, Xor };

  /// Defaults to the constant 0.
  Formula();

  static Formula constant(bool value);
  static Formula var(std::size_t agent);
  static Formula negation(Formula operand);
  /// Empty list yields Const(1), a single operand is returned as is.
  static Formula conjunction(std::vector<Formula> operands);
  /// Empty list yields Const(0), a single operand is returned as is.
  static Formula disjunction(std::vector<Formula> operands);
  static Formula exclusive_or(Formula lhs, Formula rhs);

  Kind kind() const noexcept;
  /// Const only.
  bool value() const;
  /// Var only.
  std::size_t agent() const;
  std::span<const Formula> children() const noexcept;

  bool is_literal() const noexcept;

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

/// Signed literal: `agent` or its negation.
struct Literal {
  std::size_t agent;
  bool positive;
  friend auto operator<=>(const Literal&, const Literal&) = default;
};

/// Parses the concrete syntax: `!`/`~` not, `&` and, `^` xor, `|` or,
/// parentheses, constants `0`/`1` and agent identifiers. Precedence is
/// not > and > xor > or; binary operators associate to the left.
/// Throws ParseError on syntax errors and unknown identifiers.
Formula parse_formula(std::string_view text, std::span<const std::string> agents);

/// Pretty-prints in the syntax accepted by parse_formula, with the minimal
/// parentheses required by the precedence rules.
std::string to_string(const Formula& f, std::span<const std::string> agents);

bool eval(const Formula& f, State s);

/// Agents occurring in `f`.
AgentMask support(const Formula& f);

/// Non-redundant DNF: a disjunction of prime implicants forming a minimum
/// cover (exact search on small instances, greedy otherwise).
Formula to_dnf(const Formula& f);

/// Minimum DNF of the function whose truth table over `vars` is `table`;
/// table[v] is the value at the assignment placing bit j of v on vars[j].
Formula minimal_dnf(std::span<const std::size_t> vars, const std::vector<bool>& table);

bool is_dnf(const Formula& f);

/// Signed literals occurring in a DNF formula. Throws ValidationError if `f`
/// is not in DNF.
std::set<Literal> literals(const Formula& f);

/// Negation normal form; Xor is expanded, negations sit on variables only.
Formula to_nnf(const Formula& f);

/// De Morgan dual: eval(dual_transform(f), s) == !eval(f, ~s). On NNF input
/// this swaps And and Or and keeps literals.
Formula dual_transform(const Formula& f);

}  // namespace bneq
