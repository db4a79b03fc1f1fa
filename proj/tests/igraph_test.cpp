#include <doctest.h>

#include "bneq/equivalence.hpp"
#include "bneq/error.hpp"
#include "bneq/igraph.hpp"
#include "support.hpp"

using namespace bneq;

namespace {

using Arcs = std::set<std::tuple<std::size_t, std::size_t, int>>;

}  // namespace

TEST_SUITE("igraph") {
  TEST_CASE("interaction graph of the four-agent network") {
    const auto g = interaction_graph(testing::load_data("feedback4_seq.bn"));
    // a4=0 a3=1 a2=2 a1=3
    CHECK(testing::arcs_of(g) == Arcs{{2, 3, 1}, {2, 1, 1}, {1, 2, -1}, {0, 1, 1}, {0, 0, 1}});
    const std::vector<std::size_t> cycle{2, 1, 2};
    CHECK(sign_of_path(g, cycle) == Sign::Negative);
    CHECK(sign_of_cycle(g, std::vector<std::size_t>{2, 1}) == Sign::Negative);
    CHECK(sign_of_path(g, std::vector<std::size_t>{0, 1}) == Sign::Positive);
    CHECK_THROWS_AS(sign_of_path(g, std::vector<std::size_t>{3, 2}), ValidationError);
  }

  TEST_CASE("interaction graph of the paired network") {
    const auto g = interaction_graph(testing::load_data("paired4.bn"));
    CHECK(testing::arcs_of(g) == Arcs{{1, 0, 1}, {0, 1, 1}, {0, 2, 1}, {0, 3, 1}, {1, 2, 1}, {3, 2, 1}});
  }

  TEST_CASE("constant functions have no interactions") {
    const auto net = parse_network("agents: x y\nf x = 1\nf y = 0\nmode: parallel\n");
    CHECK(interaction_graph(net).arc_count() == 0);
  }

  TEST_CASE("zero sign for non-monotone dependence") {
    const auto net = parse_network("agents: x y\nf x = x ^ y\nf y = y\nmode: parallel\n");
    const auto g = interaction_graph(net);
    CHECK(g.arc(1, 0) == Sign::Zero);
    CHECK(sign_of_path(g, std::vector<std::size_t>{1, 0, 0}) == Sign::Zero);
    CHECK(sign_symbol(Sign::Zero) == "±");
  }

  TEST_CASE("semantic and syntactic graphs agree and match the oracle") {
    std::mt19937_64 rng(23);
    for (std::size_t n = 1; n <= 5; ++n) {
      const AgentSet agents = testing::numbered_agents(n);
      for (int k = 0; k < 30; ++k) {
        const Network net = testing::random_network(agents, Mode::sequential(n), rng);
        const auto g = interaction_graph(net);
        CHECK(testing::arcs_of(g) == testing::oracle_interactions(net));
        CHECK(interaction_graph_from_dnf(net) == g);
      }
    }
  }

  TEST_CASE("simple cycles match brute force") {
    std::mt19937_64 rng(29);
    const AgentSet agents = testing::numbered_agents(5);
    for (int k = 0; k < 30; ++k) {
      const auto g = interaction_graph(testing::random_network(agents, Mode::sequential(5), rng));
      const auto cycles = simple_cycles(g);
      CHECK(std::set<std::vector<std::size_t>>(cycles.begin(), cycles.end()) == testing::oracle_cycles(g));
    }
  }

  TEST_CASE("IMG of the paired network") {
    const Network net = testing::load_data("paired4.bn");
    const Digraph q = img(interaction_graph(net), net.mode());
    REQUIRE(q.size() == 2);
    // modality 0 is {a4,a3} (positions 0,1), modality 1 is {a2,a1}
    CHECK(q.arcs() == std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}});
    CHECK(img(interaction_graph(net), net.mode(), true).arc_count() == 3);
    CHECK(img_to_dot(q, net.mode(), net.agents()).find("\"{a4,a3}\" -> \"{a2,a1}\"") != std::string::npos);
  }

  TEST_CASE("IMG under the standard modes") {
    const Network net = testing::load_data("feedback4_seq.bn");
    const auto g = interaction_graph(net);
    const Digraph seq = img(g, Mode::sequential(4));
    CHECK(seq.arc_count() == 4);
    CHECK(!seq.has_arc(0, 0));
    CHECK(img(g, Mode::parallel(4)).arc_count() == 0);
    CHECK_THROWS_AS(img(g, Mode::generalized(4)), NonPartitionError);
    CHECK_THROWS_AS(img(g, Mode::sequential(3)), ModeMismatchError);
  }

  TEST_CASE("mu transform") {
    const auto left = interaction_graph(testing::load_data("mixed3.bn"));
    CHECK(mu_transform(left, SignedPermutation::complement(3)) == left);
    CHECK(mu_transform(left, SignedPermutation::identity(3)) == left);

    // Negating only a2 flips the sign of a2 -> a1.
    const auto net = parse_network("agents: a2 a1\nf a2 = a2\nf a1 = a2\nmode: sequential\n");
    const SignedPermutation sigma{Permutation::identity(2), {true, false}};
    const auto g = mu_transform(interaction_graph(net), sigma);
    CHECK(g.arc(0, 1) == Sign::Negative);
    CHECK(g.arc(0, 0) == Sign::Positive);
    CHECK(interaction_graph(transform_network(net, ModeIsomorphism::from_signed(sigma))) == g);
  }

  TEST_CASE("mu transform moves arcs with pi") {
    const auto net = testing::load_data("feedback4_seq.bn");
    const SignedPermutation sigma{parse_cycles("(1 4)", 4), {false, true, false, true}};
    const auto expected = interaction_graph(transform_network(net, ModeIsomorphism::from_signed(sigma)));
    CHECK(mu_transform(interaction_graph(net), sigma) == expected);
  }

  TEST_CASE("digraph isomorphism") {
    const Network net = testing::load_data("paired4.bn");
    const auto g = interaction_graph(net);
    const auto self = digraph_isomorphic(g, g, true);
    REQUIRE(self);
    CHECK(*self == std::vector<std::size_t>{0, 1, 2, 3});

    Digraph forward(2), backward(2);
    forward.add_arc(0, 1);
    backward.add_arc(1, 0);
    const auto swap = digraph_isomorphic(forward, backward);
    REQUIRE(swap);
    CHECK(*swap == std::vector<std::size_t>{1, 0});

    Digraph loop(2);
    loop.add_arc(0, 1);
    loop.add_arc(0, 0);
    CHECK(!digraph_isomorphic(forward, loop));
    CHECK(!digraph_isomorphic(Digraph(2), Digraph(3)));
    CHECK_THROWS_AS(digraph_isomorphic(Digraph(17), Digraph(17)), BudgetError);
  }

  TEST_CASE("the two-agent pair has non-isomorphic interaction graphs") {
    const auto a = interaction_graph(testing::load_data("swap2.bn"));
    const auto b = interaction_graph(testing::load_data("swap2_image.bn"));
    CHECK(!digraph_isomorphic(a, b, false));
    CHECK(!digraph_isomorphic(a, b, true));
  }

  TEST_CASE("isomorphism respects signs when asked") {
    const auto pos = parse_network("agents: x y\nf x = y\nf y = y\nmode: parallel\n");
    const auto neg = parse_network("agents: x y\nf x = !y\nf y = y\nmode: parallel\n");
    CHECK(digraph_isomorphic(interaction_graph(pos), interaction_graph(neg), false));
    CHECK(!digraph_isomorphic(interaction_graph(pos), interaction_graph(neg), true));
  }

  TEST_CASE("isomorphism finds relabelled random graphs") {
    std::mt19937_64 rng(31);
    const AgentSet agents = testing::numbered_agents(6);
    for (int k = 0; k < 30; ++k) {
      const auto g = interaction_graph(testing::random_network(agents, Mode::sequential(6), rng));
      std::vector<std::size_t> p{0, 1, 2, 3, 4, 5};
      std::shuffle(p.begin(), p.end(), rng);
      const SignedPermutation sigma{Permutation(p), std::vector<bool>(6, false)};
      const auto h = mu_transform(g, sigma);
      const auto map = digraph_isomorphic(g, h, true);
      REQUIRE(map);
      for (const auto& a : g.arcs()) CHECK(h.arc((*map)[a.from], (*map)[a.to]) == a.sign);
    }
  }

  TEST_CASE("DOT export") {
    const auto dot = to_dot(interaction_graph(testing::load_data("feedback4_seq.bn")));
    CHECK(dot.rfind("digraph interactions {", 0) == 0);
    CHECK(dot.find("\"a3\" -> \"a2\" [label=\"-\"]") != std::string::npos);
    CHECK(dot.find("\"a4\" -> \"a4\" [label=\"+\"]") != std::string::npos);
  }
}
