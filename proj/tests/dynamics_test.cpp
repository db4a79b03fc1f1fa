#include <doctest.h>

#include "bneq/dynamics.hpp"
#include "bneq/error.hpp"
#include "support.hpp"

using namespace bneq;

namespace {

std::uint32_t bits(const char* s) { return parse_bitstring(s); }

UnlabeledRelation relation(std::size_t n, std::initializer_list<std::pair<const char*, const char*>> edges) {
  UnlabeledRelation r{n, {}};
  for (const auto& [a, b] : edges) r.edges.emplace_back(State(bits(a)), State(bits(b)));
  return r;
}

std::vector<std::vector<std::uint32_t>> states_of(const std::vector<Attractor>& atts) {
  std::vector<std::vector<std::uint32_t>> out;
  for (const auto& a : atts) {
    std::vector<std::uint32_t> s;
    for (auto st : a.states) s.push_back(st.bits());
    out.push_back(s);
  }
  return out;
}

}  // namespace

TEST_SUITE("dynamics") {
  TEST_CASE("sequential model of the four-agent network") {
    const Network net = testing::load_data("feedback4_seq.bn");
    const Amts m = build_model(net);
    CHECK(m.transitions().size() == 24);
    CHECK(testing::edges_of(m) == testing::oracle_model(net));
    const auto atts = attractors(m);
    REQUIRE(atts.size() == 2);
    CHECK(atts[0].kind == Attractor::Kind::Cyclic);
    CHECK(atts[0].states.size() == 8);
    for (const auto& s : atts[0].states) CHECK(!s[0]);
    CHECK(atts[1].kind == Attractor::Kind::Steady);
    CHECK(to_bitstring(atts[1].states[0], 4) == "1100");
  }

  TEST_CASE("parallel model of the four-agent network") {
    const Network net = testing::load_data("feedback4_par.bn");
    const Amts m = build_model(net);
    CHECK(m.transitions().size() == 15);
    const auto atts = attractors(m);
    REQUIRE(atts.size() == 2);
    CHECK(atts[0].kind == Attractor::Kind::Cyclic);
    std::vector<std::string> cycle;
    State s(0);
    for (int k = 0; k < 4; ++k) {
      cycle.push_back(to_bitstring(s, 4));
      REQUIRE(m.outgoing(s).size() == 1);
      s = m.outgoing(s)[0].to;
    }
    CHECK(s == State(0));
    CHECK(cycle == std::vector<std::string>{"0000", "0010", "0111", "0101"});
    CHECK(to_bitstring(atts[1].states[0], 4) == "1100");
    CHECK(atts[1].kind == Attractor::Kind::Steady);
  }

  TEST_CASE("identity network has no transitions") {
    const Amts m = build_model(testing::load_data("identity3.bn"));
    CHECK(m.transitions().empty());
    CHECK(attractors(m).size() == 8);
  }

  TEST_CASE("models and attractors agree with the oracles") {
    std::mt19937_64 rng(17);
    for (std::size_t n = 1; n <= 5; ++n) {
      const AgentSet agents = testing::numbered_agents(n);
      for (const auto& mode : {Mode::sequential(n), Mode::parallel(n), Mode::generalized(n)}) {
        for (int k = 0; k < 10; ++k) {
          const Network net = testing::random_network(agents, mode, rng);
          const Amts m = build_model(net);
          CHECK(testing::edges_of(m) == testing::oracle_model(net));
          CHECK(states_of(attractors(m)) == testing::oracle_attractors(m));
        }
      }
    }
  }

  TEST_CASE("threaded model construction matches") {
    std::mt19937_64 rng(2);
    const AgentSet agents = testing::numbered_agents(12);
    const Network net = testing::random_network(agents, Mode::sequential(12), rng);
    CHECK(build_model(net, kMaxTableAgents, 4) == build_model(net));
  }

  TEST_CASE("state-space guard") {
    const Network net = testing::load_data("feedback4_seq.bn");
    CHECK_THROWS_AS(build_model(net, 3), BudgetError);
  }

  TEST_CASE("AMTS condition is enforced") {
    const AgentSet agents = testing::numbered_agents(2);
    const Mode seq = Mode::sequential(2);
    CHECK_THROWS_AS(Amts(agents, seq, {{State(0), 0, State(0b10)}}), ValidationError);
    CHECK_THROWS_AS(Amts(agents, seq, {{State(0), 0, State(0)}}), ValidationError);
    CHECK_THROWS_AS(Amts(agents, seq, {{State(0), 5, State(1)}}), ValidationError);
    CHECK_THROWS_AS(Amts(agents, seq, {{State(0), 0, State(0b101)}}), ValidationError);
    const Amts ok(agents, seq, {{State(0), 0, State(1)}, {State(0), 0, State(1)}});
    CHECK(ok.transitions().size() == 1);
  }

  TEST_CASE("models are recognised and inverted") {
    const Network net = testing::load_data("majority3.bn");
    const Amts m = build_model(net);
    CHECK(is_model(m));
    const Network back = network_from_model(m);
    CHECK(std::vector<std::uint32_t>(back.table().begin(), back.table().end()) ==
          std::vector<std::uint32_t>(net.table().begin(), net.table().end()));
    CHECK(build_model(back) == m);
  }

  TEST_CASE("nondeterminism is diagnosed") {
    const AgentSet agents = testing::numbered_agents(2);
    const Amts m(agents, Mode::parallel(2), {{State(0), 0, State(1)}, {State(0), 0, State(2)}});
    const auto check = check_model(m);
    CHECK(!check.is_model);
    REQUIRE(check.diagnosis);
    CHECK(check.diagnosis->kind == ModelDiagnosis::Kind::Nondeterministic);
    CHECK_THROWS_AS(network_from_model(m), ValidationError);
  }

  TEST_CASE("conflicting modalities are diagnosed") {
    // {a1}: 00 -> 10 says f(00)[a1] = 1; {a1,a2}: 00 -> 01 says f(00)[a1] = 0.
    const AgentSet agents = testing::numbered_agents(2);
    const Mode mode(2, {0b01, 0b11});
    const Amts m(agents, mode, {{State(0), 0, State(0b01)}, {State(0), 1, State(0b10)}});
    const auto check = check_model(m);
    CHECK(!check.is_model);
    REQUIRE(check.diagnosis);
    CHECK(check.diagnosis->kind == ModelDiagnosis::Kind::ConflictingModalities);
    CHECK(check.diagnosis->agent == 0);
  }

  TEST_CASE("minimal labelling") {
    const AgentSet agents = testing::numbered_agents(2);
    const auto m = label_by_change(agents, relation(2, {{"00", "11"}, {"00", "10"}}));
    CHECK(m.mode().size() == 2);
    CHECK(m.mode().index_of(0b11));
    CHECK(m.mode().index_of(0b01));
    CHECK_THROWS_AS(label_by_change(agents, relation(2, {{"01", "01"}})), ValidationError);
  }

  TEST_CASE("labelling inside a partition") {
    const AgentSet agents = testing::numbered_agents(3);
    const Mode mode(3, {0b011, 0b100});
    CHECK(label_in_mode(agents, relation(3, {{"000", "100"}, {"000", "110"}, {"000", "001"}}), mode));
    CHECK(!label_in_mode(agents, relation(3, {{"000", "101"}}), mode));
  }

  TEST_CASE("mode inference succeeds on a model") {
    const Network net = testing::load_data("majority3.bn");
    const auto rel = unlabeled(build_model(net));
    const auto inf = infer_mode(net.agents(), rel, true);
    REQUIRE(inf.mode);
    CHECK(*inf.mode == Mode::sequential(3));
    REQUIRE(inf.network);
    CHECK(build_model(*inf.network) == build_model(net));
  }

  TEST_CASE("mode inference completes partial partitions with singletons") {
    const AgentSet agents = testing::numbered_agents(3);
    const auto inf = infer_mode(agents, relation(3, {{"000", "110"}}), true);
    REQUIRE(inf.mode);
    CHECK(*inf.mode == Mode(3, {0b011, 0b100}));
    const auto loose = infer_mode(agents, relation(3, {{"000", "110"}}), false);
    REQUIRE(loose.mode);
    CHECK(*loose.mode == Mode(3, {0b011}));
  }

  TEST_CASE("empty relation infers the identity network") {
    const AgentSet agents = testing::numbered_agents(2);
    const auto inf = infer_mode(agents, relation(2, {}), true);
    REQUIRE(inf.mode);
    CHECK(*inf.mode == Mode::sequential(2));
    REQUIRE(inf.network);
    CHECK(build_model(*inf.network).transitions().empty());
  }

  TEST_CASE("mode inference rejects a relation with conflicting reads") {
    // Twelve transitions over a3 a2 a1 that no network regenerates.
    const AgentSet agents({"a3", "a2", "a1"});
    const auto rel = relation(3, {{"110", "000"}, {"011", "111"}, {"100", "010"}, {"101", "001"},
                                  {"011", "000"}, {"111", "110"}, {"010", "001"}, {"101", "100"},
                                  {"111", "001"}, {"100", "000"}, {"010", "110"}, {"101", "011"}});
    const auto loose = infer_mode(agents, rel, false);
    CHECK(!loose.mode);
    REQUIRE(loose.diagnosis);
    CHECK(loose.diagnosis->kind == ModelDiagnosis::Kind::ConflictingModalities);
    // 100 -> 000 and 100 -> 010 put a3 in {a3} and {a3,a2}.
    const auto strict = infer_mode(agents, rel, true);
    CHECK(!strict.mode);
    REQUIRE(strict.conflicting_labels);
    CHECK((strict.conflicting_labels->first & strict.conflicting_labels->second) == 0b001);
    CHECK(strict.reason.find("agent a3") != std::string::npos);
  }

  TEST_CASE("partition inference reports overlapping labels") {
    const AgentSet agents = testing::numbered_agents(3);
    const auto inf = infer_mode(agents, relation(3, {{"000", "110"}, {"111", "100"}}), true);
    CHECK(!inf.mode);
    CHECK(inf.conflicting_labels);
  }

  TEST_CASE("JSON round trip") {
    const Amts m = build_model(testing::load_data("paired4.bn"));
    const std::string text = to_json(m);
    CHECK(text.find("\"agents\"") != std::string::npos);
    CHECK(amts_from_json(text) == m);
    CHECK_THROWS_AS(amts_from_json("{"), ParseError);
    CHECK_THROWS_AS(amts_from_json(R"({"agents":["a"],"mode":[["a"]],"transitions":[{"from":"0","to":"1"}]})"),
                    ParseError);
  }

  TEST_CASE("DOT export marks attractors") {
    const Amts m = build_model(testing::load_data("feedback4_par.bn"));
    const std::string dot = to_dot(m, attractors(m));
    CHECK(dot.rfind("digraph", 0) == 0);
    CHECK(dot.find("\"1100\" [fillcolor=gray90]") != std::string::npos);
    CHECK(dot.find("\"0000\" -> \"0010\"") != std::string::npos);
    CHECK(dot.find("gray75") != std::string::npos);
  }
}
