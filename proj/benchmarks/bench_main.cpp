#include <benchmark/benchmark.h>

#include <random>

#include "bneq/equivalence.hpp"

using namespace bneq;

namespace {

// Each agent reads three random agents: f = x_a & !x_b | x_c.
Network sparse_network(std::size_t n, const Mode& mode, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::vector<std::string> names;
  std::vector<Formula> fs;
  for (std::size_t i = 0; i < n; ++i) {
    names.push_back("x" + std::to_string(i));
    fs.push_back(Formula::disjunction(
        {Formula::conjunction({Formula::var(pick(rng)), Formula::negation(Formula::var(pick(rng)))}),
         Formula::var(pick(rng))}));
  }
  return Network(AgentSet(names), std::move(fs), mode);
}

// Dense random tables; only for small n, since formulas are synthesized per agent.
Network random_network(std::size_t n, const Mode& mode, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("x" + std::to_string(i));
  std::vector<std::uint32_t> table(state_count(n));
  for (auto& v : table) v = static_cast<std::uint32_t>(rng() & full_mask(n));
  return Network::from_table(AgentSet(names), std::move(table), mode);
}

void BM_BuildModel(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Network net = sparse_network(n, Mode::sequential(n), 1);
  for (auto _ : state) benchmark::DoNotOptimize(build_model(net));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(state_count(n)));
}
BENCHMARK(BM_BuildModel)->Arg(8)->Arg(12)->Arg(16);

void BM_Attractors(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Amts m = build_model(sparse_network(n, Mode::sequential(n), 2));
  for (auto _ : state) benchmark::DoNotOptimize(attractors(m));
}
BENCHMARK(BM_Attractors)->Arg(8)->Arg(12)->Arg(16);

void BM_GroupEnumeration(benchmark::State& state) {
  const Mode mode(4, {0b0011, 0b1100});
  const IsomorphismGroup group(mode);
  for (auto _ : state)
    for (auto phi : group.elements()) benchmark::DoNotOptimize(phi);
  state.SetItemsProcessed(state.iterations() * 1152);
}
BENCHMARK(BM_GroupEnumeration);

void BM_EquivalenceClass(benchmark::State& state) {
  const Network net = load_network(BNEQ_BENCH_DATA_DIR "/paired4.bn");
  const SearchOptions opts{kDefaultGroupBudget, static_cast<unsigned>(state.range(0))};
  for (auto _ : state) {
    const auto members = enumerate_equivalence_class(net, opts);
    benchmark::DoNotOptimize(classify_interaction_patterns(members));
    benchmark::DoNotOptimize(classify_imgs(members));
  }
}
BENCHMARK(BM_EquivalenceClass)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_EquivalenceSearch(benchmark::State& state) {
  const Mode mode(6, {0b000011, 0b001100, 0b110000});
  const IsomorphismGroup group(mode);
  std::mt19937_64 rng(3);
  const Network a = random_network(6, mode, 4);
  const Network b = transform_network(a, group.random_element(rng));
  const SearchOptions opts{kDefaultGroupBudget * 100, static_cast<unsigned>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(equivalent(a, b, opts));
}
BENCHMARK(BM_EquivalenceSearch)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_InteractionGraph(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Network net = sparse_network(n, Mode::sequential(n), 5);
  for (auto _ : state) benchmark::DoNotOptimize(interaction_graph(net));
}
BENCHMARK(BM_InteractionGraph)->Arg(8)->Arg(12)->Arg(16);

}  // namespace
BENCHMARK_MAIN();
