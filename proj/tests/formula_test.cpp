#include <doctest.h>

#include <random>

#include "bneq/error.hpp"
#include "bneq/formula.hpp"

using namespace bneq;

namespace {

const std::vector<std::string> kFour{"a4", "a3", "a2", "a1"};
const std::vector<std::string> kAbcd{"a", "b", "c", "d"};

Formula parse(const std::string& text, const std::vector<std::string>& agents = kAbcd) {
  return parse_formula(text, agents);
}

bool same_function(const Formula& f, const Formula& g, std::size_t n) {
  for (std::uint32_t s = 0; s < (1u << n); ++s)
    if (eval(f, State(s)) != eval(g, State(s))) return false;
  return true;
}

Formula random_formula(std::mt19937_64& rng, std::size_t vars, int depth) {
  std::uniform_int_distribution<int> op(0, depth <= 0 ? 1 : 5);
  std::uniform_int_distribution<std::size_t> var(0, vars - 1);
  switch (op(rng)) {
    case 0: return Formula::var(var(rng));
    case 1: return rng() % 8 == 0 ? Formula::constant(rng() % 2) : Formula::negation(Formula::var(var(rng)));
    case 2: return Formula::negation(random_formula(rng, vars, depth - 1));
    case 3: return Formula::conjunction({random_formula(rng, vars, depth - 1), random_formula(rng, vars, depth - 1)});
    case 4: return Formula::disjunction({random_formula(rng, vars, depth - 1), random_formula(rng, vars, depth - 1)});
    default: return Formula::exclusive_or(random_formula(rng, vars, depth - 1), random_formula(rng, vars, depth - 1));
  }
}

std::pair<std::size_t, std::size_t> dnf_size(const Formula& f) {
  if (f.kind() == Formula::Kind::Const) return {f.value() ? 1 : 0, 0};
  auto term_literals = [](const Formula& t) -> std::size_t {
    return t.kind() == Formula::Kind::And ? t.children().size() : 1;
  };
  if (f.kind() != Formula::Kind::Or) return {1, term_literals(f)};
  std::size_t lits = 0;
  for (const auto& t : f.children()) lits += term_literals(t);
  return {f.children().size(), lits};
}

// Smallest (terms, literals) of any DNF of the 3-variable function `truth`,
// by exhaustive search over sets of at most four product terms.
std::pair<std::size_t, std::size_t> brute_force_minimum(std::uint8_t truth) {
  if (truth == 0) return {0, 0};
  if (truth == 0xFF) return {1, 0};
  struct Term {
    std::uint8_t cover;
    std::size_t lits;
  };
  std::vector<Term> implicants;
  for (int code = 0; code < 27; ++code) {
    int c = code;
    std::uint8_t cover = 0;
    std::size_t lits = 0;
    int req[3];
    for (int v = 0; v < 3; ++v) {
      req[v] = c % 3;  // 0 absent, 1 positive, 2 negative
      c /= 3;
      if (req[v]) ++lits;
    }
    for (int s = 0; s < 8; ++s) {
      bool ok = true;
      for (int v = 0; v < 3; ++v) {
        const bool bit = (s >> v) & 1;
        if ((req[v] == 1 && !bit) || (req[v] == 2 && bit)) ok = false;
      }
      if (ok) cover |= static_cast<std::uint8_t>(1u << s);
    }
    if ((cover & ~truth) == 0) implicants.push_back({cover, lits});
  }
  std::pair<std::size_t, std::size_t> best{99, 99};
  const std::size_t m = implicants.size();
  for (std::size_t a = 0; a < m; ++a) {
    auto consider = [&](std::uint8_t cover, std::size_t terms, std::size_t lits) {
      if (cover == truth) best = std::min(best, std::make_pair(terms, lits));
    };
    consider(implicants[a].cover, 1, implicants[a].lits);
    for (std::size_t b = a + 1; b < m; ++b) {
      consider(implicants[a].cover | implicants[b].cover, 2, implicants[a].lits + implicants[b].lits);
      for (std::size_t c = b + 1; c < m; ++c) {
        const auto abc = implicants[a].cover | implicants[b].cover | implicants[c].cover;
        const auto l3 = implicants[a].lits + implicants[b].lits + implicants[c].lits;
        consider(abc, 3, l3);
        if (best.first <= 3) continue;
        for (std::size_t d = c + 1; d < m; ++d) consider(abc | implicants[d].cover, 4, l3 + implicants[d].lits);
      }
    }
  }
  return best;
}

}  // namespace

TEST_SUITE("formula") {
  TEST_CASE("and binds tighter than or") {
    const Formula f = parse_formula("a1 & a3 | a4", kFour);
    const Formula expected = Formula::disjunction({Formula::conjunction({Formula::var(3), Formula::var(1)}), Formula::var(0)});
    CHECK(f == expected);
  }

  TEST_CASE("precedence chain not > and > xor > or") {
    CHECK(parse("!a & b") == Formula::conjunction({Formula::negation(Formula::var(0)), Formula::var(1)}));
    CHECK(parse("a | b ^ c & d") ==
          Formula::disjunction(
              {Formula::var(0),
               Formula::exclusive_or(Formula::var(1), Formula::conjunction({Formula::var(2), Formula::var(3)}))}));
    CHECK(parse("~(a | b)") == Formula::negation(Formula::disjunction({Formula::var(0), Formula::var(1)})));
    CHECK(parse("a & b & c") == Formula::conjunction({Formula::var(0), Formula::var(1), Formula::var(2)}));
  }

  TEST_CASE("constants and whitespace") {
    CHECK(parse(" 1 ") == Formula::constant(true));
    CHECK(parse("0") == Formula::constant(false));
    CHECK(parse("(a)") == Formula::var(0));
  }

  TEST_CASE("unknown identifier is reported at its offset") {
    try {
      parse_formula("a1 & zz", kFour);
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.position() == 5);
    }
  }

  TEST_CASE("syntax errors") {
    CHECK_THROWS_AS(parse("a &"), ParseError);
    CHECK_THROWS_AS(parse("(a"), ParseError);
    CHECK_THROWS_AS(parse("a b"), ParseError);
    CHECK_THROWS_AS(parse(""), ParseError);
    CHECK_THROWS_AS(parse("a | | b"), ParseError);
  }

  TEST_CASE("printing round-trips through the parser") {
    std::mt19937_64 rng(7);
    for (int k = 0; k < 300; ++k) {
      const Formula f = random_formula(rng, 4, 4);
      const std::string text = to_string(f, kAbcd);
      const Formula g = parse(text);
      INFO(text);
      CHECK(same_function(f, g, 4));
      CHECK(to_string(g, kAbcd) == text);
    }
  }

  TEST_CASE("minimal parentheses") {
    CHECK(to_string(parse("(a & b) | c"), kAbcd) == "a & b | c");
    CHECK(to_string(parse("a & (b | c)"), kAbcd) == "a & (b | c)");
    CHECK(to_string(parse("!(a & b)"), kAbcd) == "!(a & b)");
  }

  TEST_CASE("support") {
    CHECK(support(parse("a & !c | 1")) == 0b0101);
    CHECK(support(parse("0")) == 0);
  }

  TEST_CASE("to_dnf small cases") {
    CHECK(to_dnf(parse("a & b | a & !b")) == Formula::var(0));
    CHECK(to_dnf(parse("a | !a")) == Formula::constant(true));
    CHECK(to_dnf(parse("a & !a")) == Formula::constant(false));
    CHECK(dnf_size(to_dnf(parse("a ^ b"))) == std::make_pair<std::size_t, std::size_t>(2, 4));
    CHECK(dnf_size(to_dnf(parse("a & b | !a & c | b & c"))) == std::make_pair<std::size_t, std::size_t>(2, 4));
    CHECK(is_dnf(to_dnf(parse("!(a | b) ^ c"))));
  }

  TEST_CASE("to_dnf is minimal for every function of three variables") {
    for (int truth = 0; truth < 256; ++truth) {
      std::vector<bool> table(8);
      for (int s = 0; s < 8; ++s) table[s] = (truth >> s) & 1;
      const std::vector<std::size_t> vars{0, 1, 2};
      const Formula f = minimal_dnf(vars, table);
      INFO("truth table ", truth);
      CHECK(is_dnf(f));
      for (std::uint32_t s = 0; s < 8; ++s) CHECK(eval(f, State(s)) == table[s]);
      CHECK(dnf_size(f) == brute_force_minimum(static_cast<std::uint8_t>(truth)));
    }
  }

  TEST_CASE("to_dnf preserves the function and is deterministic") {
    std::mt19937_64 rng(11);
    for (int k = 0; k < 200; ++k) {
      const Formula f = random_formula(rng, 4, 4);
      const Formula d = to_dnf(f);
      CHECK(is_dnf(d));
      CHECK(same_function(f, d, 4));
      CHECK(to_dnf(f) == d);
      CHECK((support(d) & ~support(f)) == 0);
    }
  }

  TEST_CASE("literals of a DNF") {
    const auto lits = literals(parse("a & !b | c"));
    CHECK(lits == std::set<Literal>{{0, true}, {1, false}, {2, true}});
    CHECK_THROWS_AS(literals(parse("a & (b | c)")), ValidationError);
    CHECK_THROWS_AS(literals(parse("a ^ b")), ValidationError);
  }

  TEST_CASE("negation normal form") {
    std::mt19937_64 rng(3);
    auto check_nnf = [](auto&& self, const Formula& f) -> bool {
      switch (f.kind()) {
        case Formula::Kind::Xor: return false;
        case Formula::Kind::Not: return f.children()[0].kind() == Formula::Kind::Var;
        case Formula::Kind::And:
        case Formula::Kind::Or:
          for (const auto& c : f.children())
            if (!self(self, c)) return false;
          return true;
        default: return true;
      }
    };
    for (int k = 0; k < 200; ++k) {
      const Formula f = random_formula(rng, 4, 4);
      const Formula g = to_nnf(f);
      CHECK(check_nnf(check_nnf, g));
      CHECK(same_function(f, g, 4));
    }
  }

  TEST_CASE("dual transform swaps and/or") {
    CHECK(dual_transform(parse("a & b | c")) == parse("(a | b) & c"));
    CHECK(dual_transform(parse("a & !b")) == parse("a | !b"));
    CHECK(dual_transform(parse("1")) == parse("0"));
    std::mt19937_64 rng(5);
    for (int k = 0; k < 200; ++k) {
      const Formula f = random_formula(rng, 4, 4);
      const Formula d = dual_transform(f);
      for (std::uint32_t s = 0; s < 16; ++s) CHECK(eval(d, State(s)) == !eval(f, State(s ^ 0xF)));
    }
  }
}
