#include "bneq/formula.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <map>
#include <stdexcept>
#include <utility>

#include "bneq/error.hpp"

namespace bneq {

struct Formula::Node {
  Kind kind = Kind::Const;
  bool value = false;
  std::size_t agent = 0;
  std::vector<Formula> children;
};

Formula::Formula() : node_(constant(false).node_) {}
Formula::Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Formula Formula::constant(bool value) {
  static const Formula zero = [] {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Const;
    return Formula(std::shared_ptr<const Node>(std::move(n)));
  }();
  static const Formula one = [] {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Const;
    n->value = true;
    return Formula(std::shared_ptr<const Node>(std::move(n)));
  }();
  return value ? one : zero;
}

Formula Formula::var(std::size_t agent) {
  if (agent >= kMaxAgents) throw ValidationError("agent index out of range");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Var;
  n->agent = agent;
  return Formula(std::move(n));
}

Formula Formula::negation(Formula operand) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Not;
  n->children.push_back(std::move(operand));
  return Formula(std::move(n));
}

Formula Formula::conjunction(std::vector<Formula> operands) {
  std::vector<Formula> flat;
  for (auto& op : operands) {
    if (op.kind() == Kind::And) {
      for (const auto& c : op.children()) flat.push_back(c);
    } else {
      flat.push_back(std::move(op));
    }
  }
  if (flat.empty()) return constant(true);
  if (flat.size() == 1) return flat.front();
  auto n = std::make_shared<Node>();
  n->kind = Kind::And;
  n->children = std::move(flat);
  return Formula(std::move(n));
}

Formula Formula::disjunction(std::vector<Formula> operands) {
  std::vector<Formula> flat;
  for (auto& op : operands) {
    if (op.kind() == Kind::Or) {
      for (const auto& c : op.children()) flat.push_back(c);
    } else {
      flat.push_back(std::move(op));
    }
  }
  if (flat.empty()) return constant(false);
  if (flat.size() == 1) return flat.front();
  auto n = std::make_shared<Node>();
  n->kind = Kind::Or;
  n->children = std::move(flat);
  return Formula(std::move(n));
}

Formula Formula::exclusive_or(Formula lhs, Formula rhs) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Xor;
  n->children.push_back(std::move(lhs));
  n->children.push_back(std::move(rhs));
  return Formula(std::move(n));
}

Formula::Kind Formula::kind() const noexcept { return node_->kind; }

bool Formula::value() const {
  if (node_->kind != Kind::Const) throw std::logic_error("Formula::value on non-constant");
  return node_->value;
}

std::size_t Formula::agent() const {
  if (node_->kind != Kind::Var) throw std::logic_error("Formula::agent on non-variable");
  return node_->agent;
}

std::span<const Formula> Formula::children() const noexcept { return node_->children; }

bool Formula::is_literal() const noexcept {
  return kind() == Kind::Var || (kind() == Kind::Not && children()[0].kind() == Kind::Var);
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Formula::Kind::Const: return a.node_->value == b.node_->value;
    case Formula::Kind::Var: return a.node_->agent == b.node_->agent;
    default: return a.node_->children == b.node_->children;
  }
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class Parser {
 public:
  Parser(std::string_view text, std::span<const std::string> agents) : text_(text), agents_(agents) {}

  Formula parse() {
    Formula f = parse_or();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Formula parse_or() {
    std::vector<Formula> ops{parse_xor()};
    while (accept('|')) ops.push_back(parse_xor());
    return Formula::disjunction(std::move(ops));
  }

  Formula parse_xor() {
    Formula lhs = parse_and();
    while (accept('^')) lhs = Formula::exclusive_or(std::move(lhs), parse_and());
    return lhs;
  }

  Formula parse_and() {
    std::vector<Formula> ops{parse_unary()};
    while (accept('&')) ops.push_back(parse_unary());
    return Formula::conjunction(std::move(ops));
  }

  Formula parse_unary() {
    if (accept('!') || accept('~')) return Formula::negation(parse_unary());
    return parse_atom();
  }

  static bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
  static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

  Formula parse_atom() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of formula");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Formula inner = parse_or();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (c == '0' || c == '1') {
      if (pos_ + 1 < text_.size() && ident_char(text_[pos_ + 1])) fail("malformed constant");
      ++pos_;
      return Formula::constant(c == '1');
    }
    if (ident_start(c)) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
      const std::string_view name = text_.substr(start, pos_ - start);
      for (std::size_t i = 0; i < agents_.size(); ++i) {
        if (agents_[i] == name) return Formula::var(i);
      }
      throw ParseError("undeclared agent '" + std::string(name) + "'", start);
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  std::span<const std::string> agents_;
  std::size_t pos_ = 0;
};

// Binding strength used by the printer.
int level(Formula::Kind k) {
  switch (k) {
    case Formula::Kind::Or: return 0;
    case Formula::Kind::Xor: return 1;
    case Formula::Kind::And: return 2;
    default: return 3;
  }
}

void print(const Formula& f, std::span<const std::string> agents, int min_level, std::string& out) {
  const bool paren = level(f.kind()) < min_level;
  if (paren) out += '(';
  switch (f.kind()) {
    case Formula::Kind::Const: out += f.value() ? '1' : '0'; break;
    case Formula::Kind::Var:
      if (f.agent() >= agents.size()) throw ValidationError("formula references an undeclared agent");
      out += agents[f.agent()];
      break;
    case Formula::Kind::Not:
      out += '!';
      print(f.children()[0], agents, 3, out);
      break;
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      const char* sep = f.kind() == Formula::Kind::And ? " & " : " | ";
      const int child_level = level(f.kind()) + 1;
      bool first = true;
      for (const auto& c : f.children()) {
        if (!first) out += sep;
        first = false;
        print(c, agents, child_level, out);
      }
      break;
    }
    case Formula::Kind::Xor:
      print(f.children()[0], agents, 1, out);
      out += " ^ ";
      print(f.children()[1], agents, 2, out);
      break;
  }
  if (paren) out += ')';
}

}  // namespace

Formula parse_formula(std::string_view text, std::span<const std::string> agents) {
  return Parser(text, agents).parse();
}

std::string to_string(const Formula& f, std::span<const std::string> agents) {
  std::string out;
  print(f, agents, 0, out);
  return out;
}

bool eval(const Formula& f, State s) {
  switch (f.kind()) {
    case Formula::Kind::Const: return f.value();
    case Formula::Kind::Var: return s[f.agent()];
    case Formula::Kind::Not: return !eval(f.children()[0], s);
    case Formula::Kind::And:
      for (const auto& c : f.children())
        if (!eval(c, s)) return false;
      return true;
    case Formula::Kind::Or:
      for (const auto& c : f.children())
        if (eval(c, s)) return true;
      return false;
    case Formula::Kind::Xor: return eval(f.children()[0], s) != eval(f.children()[1], s);
  }
  return false;
}

AgentMask support(const Formula& f) {
  if (f.kind() == Formula::Kind::Var) return AgentMask{1} << f.agent();
  AgentMask m = 0;
  for (const auto& c : f.children()) m |= support(c);
  return m;
}

// ---------------------------------------------------------------------------
// Quine–McCluskey minimization

namespace {

// An implicant over v local variables: `care` marks the fixed positions,
// `bits` their values (bits & ~care == 0).
struct Implicant {
  std::uint32_t bits = 0;
  std::uint32_t care = 0;
  friend auto operator<=>(const Implicant&, const Implicant&) = default;
  bool covers(std::uint32_t minterm) const { return (minterm & care) == bits; }
};

std::vector<Implicant> prime_implicants(const std::vector<std::uint32_t>& minterms, std::size_t nvars) {
  const std::uint32_t full = nvars >= 32 ? ~0u : ((1u << nvars) - 1);
  std::set<Implicant> current;
  for (auto m : minterms) current.insert({m, full});
  std::vector<Implicant> primes;
  while (!current.empty()) {
    std::set<Implicant> next;
    std::set<Implicant> used;
    // Bucket by care mask; only equal masks can merge.
    std::map<std::uint32_t, std::vector<Implicant>> by_care;
    for (const auto& imp : current) by_care[imp.care].push_back(imp);
    for (auto& [care, group] : by_care) {
      for (std::size_t a = 0; a < group.size(); ++a) {
        for (std::size_t b = a + 1; b < group.size(); ++b) {
          const std::uint32_t diff = group[a].bits ^ group[b].bits;
          if (std::has_single_bit(diff)) {
            next.insert({group[a].bits & ~diff, care & ~diff});
            used.insert(group[a]);
            used.insert(group[b]);
          }
        }
      }
    }
    for (const auto& imp : current)
      if (!used.contains(imp)) primes.push_back(imp);
    current = std::move(next);
  }
  std::sort(primes.begin(), primes.end());
  return primes;
}

struct CoverSearch {
  const std::vector<Implicant>& primes;
  const std::vector<std::uint32_t>& minterms;
  std::vector<std::vector<std::size_t>> covering;  // minterm index -> prime indices
  std::vector<std::size_t> best;
  std::size_t best_literals = std::numeric_limits<std::size_t>::max();
  std::size_t nodes = 0;
  static constexpr std::size_t kNodeLimit = 200000;

  std::size_t literal_count(const std::vector<std::size_t>& sel) const {
    std::size_t n = 0;
    for (auto i : sel) n += std::popcount(primes[i].care);
    return n;
  }

  bool better(const std::vector<std::size_t>& sel) const {
    if (sel.size() != best.size()) return sel.size() < best.size();
    return literal_count(sel) < best_literals;
  }

  void search(std::vector<std::size_t>& chosen, std::vector<int>& cover_count) {
    if (++nodes > kNodeLimit) return;
    if (!best.empty() && chosen.size() + 1 > best.size()) {
      // Another clause could at best tie on clause count; only continue if
      // everything is already covered.
      bool all = std::all_of(cover_count.begin(), cover_count.end(), [](int c) { return c > 0; });
      if (!all) return;
    }
    // Most constrained uncovered minterm.
    std::size_t pick = minterms.size();
    std::size_t options = std::numeric_limits<std::size_t>::max();
    for (std::size_t m = 0; m < minterms.size(); ++m) {
      if (cover_count[m] == 0 && covering[m].size() < options) {
        options = covering[m].size();
        pick = m;
      }
    }
    if (pick == minterms.size()) {
      if (best.empty() || better(chosen)) {
        best = chosen;
        std::sort(best.begin(), best.end());
        best_literals = literal_count(best);
      }
      return;
    }
    for (auto p : covering[pick]) {
      chosen.push_back(p);
      for (std::size_t m = 0; m < minterms.size(); ++m)
        if (primes[p].covers(minterms[m])) ++cover_count[m];
      search(chosen, cover_count);
      for (std::size_t m = 0; m < minterms.size(); ++m)
        if (primes[p].covers(minterms[m])) --cover_count[m];
      chosen.pop_back();
    }
  }
};

std::vector<Implicant> minimum_cover(const std::vector<Implicant>& primes,
                                     const std::vector<std::uint32_t>& minterms) {
  CoverSearch cs{primes, minterms, {}, {}, std::numeric_limits<std::size_t>::max(), 0};
  cs.covering.resize(minterms.size());
  for (std::size_t m = 0; m < minterms.size(); ++m) {
    for (std::size_t p = 0; p < primes.size(); ++p)
      if (primes[p].covers(minterms[m])) cs.covering[m].push_back(p);
    // Prefer larger implicants first so the first leaf is already good.
    std::stable_sort(cs.covering[m].begin(), cs.covering[m].end(), [&](std::size_t a, std::size_t b) {
      return std::popcount(primes[a].care) < std::popcount(primes[b].care);
    });
  }
  std::vector<std::size_t> chosen;
  std::vector<int> cover_count(minterms.size(), 0);
  cs.search(chosen, cover_count);
  std::vector<Implicant> out;
  for (auto i : cs.best) out.push_back(primes[i]);
  return out;
}

Formula literal_formula(std::size_t agent, bool positive) {
  Formula v = Formula::var(agent);
  return positive ? v : Formula::negation(v);
}

void truth_table_over(const Formula& f, const std::vector<std::size_t>& vars, std::vector<bool>& table) {
  table.assign(std::size_t{1} << vars.size(), false);
  for (std::uint32_t v = 0; v < table.size(); ++v) {
    std::uint32_t bits = 0;
    for (std::size_t j = 0; j < vars.size(); ++j)
      if ((v >> j) & 1u) bits |= 1u << vars[j];
    table[v] = eval(f, State(bits));
  }
}

}  // namespace

Formula minimal_dnf(std::span<const std::size_t> vars_in, const std::vector<bool>& table_in) {
  const std::size_t nv = vars_in.size();
  if (table_in.size() != (std::size_t{1} << nv)) throw ValidationError("truth table size mismatch");

  // Drop variables the function does not depend on.
  std::vector<std::size_t> keep;
  for (std::size_t j = 0; j < nv; ++j) {
    for (std::uint32_t v = 0; v < table_in.size(); ++v) {
      if (!((v >> j) & 1u) && table_in[v] != table_in[v | (1u << j)]) {
        keep.push_back(j);
        break;
      }
    }
  }
  std::vector<std::size_t> vars;
  for (auto j : keep) vars.push_back(vars_in[j]);
  std::vector<std::uint32_t> minterms;
  for (std::uint32_t v = 0; v < (1u << keep.size()); ++v) {
    std::uint32_t full = 0;
    for (std::size_t j = 0; j < keep.size(); ++j)
      if ((v >> j) & 1u) full |= 1u << keep[j];
    if (table_in[full]) minterms.push_back(v);
  }
  if (minterms.empty()) return Formula::constant(false);
  if (minterms.size() == (std::size_t{1} << keep.size())) return Formula::constant(true);

  const auto primes = prime_implicants(minterms, keep.size());
  auto cover = minimum_cover(primes, minterms);

  // Deterministic clause order: by the literal sequence in agent order.
  std::vector<std::vector<Literal>> clauses;
  for (const auto& imp : cover) {
    std::vector<Literal> lits;
    for (std::size_t j = 0; j < keep.size(); ++j)
      if ((imp.care >> j) & 1u) lits.push_back({vars[j], ((imp.bits >> j) & 1u) != 0});
    std::sort(lits.begin(), lits.end(), [](const Literal& a, const Literal& b) {
      return a.agent != b.agent ? a.agent < b.agent : a.positive > b.positive;
    });
    clauses.push_back(std::move(lits));
  }
  std::sort(clauses.begin(), clauses.end(), [](const auto& a, const auto& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                        [](const Literal& x, const Literal& y) {
                                          return x.agent != y.agent ? x.agent < y.agent : x.positive > y.positive;
                                        });
  });
  std::vector<Formula> terms;
  for (const auto& c : clauses) {
    std::vector<Formula> lits;
    for (const auto& l : c) lits.push_back(literal_formula(l.agent, l.positive));
    terms.push_back(Formula::conjunction(std::move(lits)));
  }
  return Formula::disjunction(std::move(terms));
}

Formula to_dnf(const Formula& f) {
  const auto vars = mask_positions(support(f));
  std::vector<bool> table;
  truth_table_over(f, vars, table);
  return minimal_dnf(vars, table);
}

bool is_dnf(const Formula& f) {
  auto is_clause = [](const Formula& c) {
    if (c.is_literal()) return true;
    if (c.kind() != Formula::Kind::And) return false;
    return std::all_of(c.children().begin(), c.children().end(), [](const Formula& l) { return l.is_literal(); });
  };
  if (f.kind() == Formula::Kind::Const) return true;
  if (is_clause(f)) return true;
  if (f.kind() != Formula::Kind::Or) return false;
  return std::all_of(f.children().begin(), f.children().end(), is_clause);
}

std::set<Literal> literals(const Formula& f) {
  if (!is_dnf(f)) throw ValidationError("formula is not in disjunctive normal form");
  std::set<Literal> out;
  auto visit = [&](const Formula& g, auto&& self) -> void {
    if (g.kind() == Formula::Kind::Var) {
      out.insert({g.agent(), true});
    } else if (g.kind() == Formula::Kind::Not) {
      out.insert({g.children()[0].agent(), false});
    } else {
      for (const auto& c : g.children()) self(c, self);
    }
  };
  visit(f, visit);
  return out;
}

namespace {

Formula nnf(const Formula& f, bool negate) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Const: return Formula::constant(f.value() != negate);
    case K::Var: return negate ? Formula::negation(f) : f;
    case K::Not: return nnf(f.children()[0], !negate);
    case K::And:
    case K::Or: {
      std::vector<Formula> ops;
      for (const auto& c : f.children()) ops.push_back(nnf(c, negate));
      const bool conj = (f.kind() == K::And) != negate;
      return conj ? Formula::conjunction(std::move(ops)) : Formula::disjunction(std::move(ops));
    }
    case K::Xor: {
      // a ^ b = (a & !b) | (!a & b);  !(a ^ b) = (a & b) | (!a & !b)
      const auto& a = f.children()[0];
      const auto& b = f.children()[1];
      Formula left = Formula::conjunction({nnf(a, false), nnf(b, !negate)});
      Formula right = Formula::conjunction({nnf(a, true), nnf(b, negate)});
      return Formula::disjunction({left, right});
    }
  }
  return f;
}

Formula swap_and_or(const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Const: return Formula::constant(!f.value());
    case K::Var:
    case K::Not: return f;
    case K::And:
    case K::Or: {
      std::vector<Formula> ops;
      for (const auto& c : f.children()) ops.push_back(swap_and_or(c));
      return f.kind() == K::And ? Formula::disjunction(std::move(ops)) : Formula::conjunction(std::move(ops));
    }
    case K::Xor: break;
  }
  throw std::logic_error("swap_and_or expects NNF");
}

bool is_nnf(const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Const:
    case K::Var: return true;
    case K::Not: return f.children()[0].kind() == K::Var;
    case K::Xor: return false;
    default:
      return std::all_of(f.children().begin(), f.children().end(), [](const Formula& c) { return is_nnf(c); });
  }
}

}  // namespace

Formula to_nnf(const Formula& f) { return is_nnf(f) ? f : nnf(f, false); }

Formula dual_transform(const Formula& f) { return swap_and_or(to_nnf(f)); }

}  // namespace bneq
