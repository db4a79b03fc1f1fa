#include "support.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <numeric>

#include "bneq/formula.hpp"

namespace testing {

using namespace bneq;

std::string data_path(const std::string& name) { return std::string(BNEQ_TEST_DATA_DIR) + "/" + name; }

Network load_data(const std::string& name) { return load_network(data_path(name)); }

AgentSet numbered_agents(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= n; ++i) names.push_back("a" + std::to_string(i));
  return AgentSet(names);
}

Network random_network(const AgentSet& agents, const Mode& mode, std::mt19937_64& rng) {
  const std::size_t n = agents.size();
  std::uniform_int_distribution<std::uint32_t> dist(0, full_mask(n));
  std::vector<std::uint32_t> table(state_count(n));
  for (auto& v : table) v = dist(rng);
  return Network::from_table(agents, std::move(table), mode);
}

std::vector<Mode> all_partitions(std::size_t n) {
  // Restricted growth strings.
  std::vector<Mode> out;
  std::vector<std::size_t> block(n, 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t used) {
    if (i == n) {
      std::vector<AgentMask> ws(used, 0);
      for (std::size_t a = 0; a < n; ++a) ws[block[a]] |= AgentMask{1} << a;
      out.emplace_back(n, ws);
      return;
    }
    for (std::size_t b = 0; b <= used; ++b) {
      block[i] = b;
      rec(i + 1, std::max(used, b + 1));
    }
  };
  if (n > 0) rec(0, 0);
  return out;
}

bool refines(const Mode& fine, const Mode& coarse) {
  for (auto w : fine.modalities()) {
    bool inside = false;
    for (auto c : coarse.modalities()) inside = inside || (w & ~c) == 0;
    if (!inside) return false;
  }
  return true;
}

std::set<Edge> oracle_model(const Network& net) {
  const std::size_t n = net.size();
  std::set<Edge> out;
  for (std::uint32_t s = 0; s < state_count(n); ++s) {
    for (auto w : net.mode().modalities()) {
      std::uint32_t t = s;
      for (std::size_t i = 0; i < n; ++i) {
        if (!((w >> i) & 1u)) continue;
        const bool v = eval(net.function(i), State(s));
        t = v ? (t | (1u << i)) : (t & ~(1u << i));
      }
      if (t != s) out.emplace(s, w, t);
    }
  }
  return out;
}

std::set<Edge> edges_of(const Amts& m) {
  std::set<Edge> out;
  for (const auto& t : m.transitions()) out.emplace(t.from.bits(), m.mode()[t.modality], t.to.bits());
  return out;
}

std::vector<std::vector<std::uint32_t>> oracle_attractors(const Amts& m) {
  const std::size_t count = m.state_count();
  std::vector<std::vector<bool>> reach(count, std::vector<bool>(count, false));
  for (std::uint32_t s = 0; s < count; ++s) {
    std::vector<std::uint32_t> stack{s};
    reach[s][s] = true;
    while (!stack.empty()) {
      const auto u = stack.back();
      stack.pop_back();
      for (const auto& t : m.outgoing(State(u)))
        if (!reach[s][t.to.bits()]) {
          reach[s][t.to.bits()] = true;
          stack.push_back(t.to.bits());
        }
    }
  }
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<bool> done(count, false);
  for (std::uint32_t s = 0; s < count; ++s) {
    if (done[s]) continue;
    bool terminal = true;
    for (std::uint32_t t = 0; t < count; ++t)
      if (reach[s][t] && !reach[t][s]) terminal = false;
    if (!terminal) continue;
    std::vector<std::uint32_t> scc;
    for (std::uint32_t t = 0; t < count; ++t)
      if (reach[s][t]) {
        scc.push_back(t);
        done[t] = true;
      }
    out.push_back(scc);
  }
  return out;
}

std::set<std::tuple<std::size_t, std::size_t, int>> oracle_interactions(const Network& net) {
  const std::size_t n = net.size();
  std::set<std::tuple<std::size_t, std::size_t, int>> out;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      bool up = false, down = false;
      for (std::uint32_t s1 = 0; s1 < state_count(n); ++s1) {
        for (std::uint32_t s2 = 0; s2 < state_count(n); ++s2) {
          // s1, s2 differ exactly at i, with s1[i] = 0.
          if ((s1 ^ s2) != (1u << i) || ((s1 >> i) & 1u)) continue;
          const bool v1 = eval(net.function(j), State(s1));
          const bool v2 = eval(net.function(j), State(s2));
          if (!v1 && v2) up = true;
          if (v1 && !v2) down = true;
        }
      }
      if (up || down) out.emplace(i, j, up && down ? 0 : (up ? 1 : -1));
    }
  }
  return out;
}

std::set<std::tuple<std::size_t, std::size_t, int>> arcs_of(const SignedInteractionGraph& g) {
  std::set<std::tuple<std::size_t, std::size_t, int>> out;
  for (const auto& a : g.arcs()) out.emplace(a.from, a.to, static_cast<int>(a.sign));
  return out;
}

std::string oracle_act(const ModeIsomorphism& phi, const std::string& state) {
  const Mode& mode = phi.mode();
  std::string out(state.size(), '?');
  for (std::size_t i = 0; i < mode.size(); ++i) {
    std::vector<std::size_t> src, dst;
    for (std::size_t a = 0; a < state.size(); ++a) {
      if ((mode[i] >> a) & 1u) src.push_back(a);
      if ((mode[phi.pi()(i)] >> a) & 1u) dst.push_back(a);
    }
    // Table text lists images of the inputs in lexicographic order.
    std::string table = to_table_string(phi.beta(i));
    table = table.substr(1, table.size() - 2);
    std::vector<std::string> images;
    for (std::size_t p = 0; p <= table.size();) {
      auto q = table.find(' ', p);
      if (q == std::string::npos) q = table.size();
      images.push_back(table.substr(p, q - p));
      p = q + 1;
    }
    std::vector<std::string> inputs;
    for (std::size_t v = 0; v < images.size(); ++v) {
      std::string b;
      for (std::size_t k = src.size(); k-- > 0;) b += ((v >> k) & 1u) ? '1' : '0';
      inputs.push_back(b);
    }
    std::sort(inputs.begin(), inputs.end());
    std::map<std::string, std::string> lookup;
    for (std::size_t k = 0; k < inputs.size(); ++k) lookup[inputs[k]] = images[k];
    std::string sub;
    for (auto a : src) sub += state[a];
    const std::string image = lookup.at(sub);
    for (std::size_t k = 0; k < dst.size(); ++k) out[dst[k]] = image[k];
  }
  return out;
}

std::uint64_t oracle_order(const Mode& partition) {
  std::map<std::size_t, std::uint64_t> count_by_size;
  for (auto w : partition.modalities()) ++count_by_size[std::popcount(w)];
  auto fact = [](std::uint64_t n) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 2; i <= n; ++i) r *= i;
    return r;
  };
  std::uint64_t order = 1;
  for (auto [m, k] : count_by_size) {
    for (std::uint64_t i = 0; i < k; ++i) order *= fact(std::uint64_t{1} << m);
    order *= fact(k);
  }
  return order;
}

std::size_t oracle_hypercube_automorphisms(std::size_t n) {
  const std::size_t count = state_count(n);
  std::vector<std::uint32_t> perm(count);
  std::iota(perm.begin(), perm.end(), 0u);
  auto hamming1 = [](std::uint32_t a, std::uint32_t b) {
    const std::uint32_t d = a ^ b;
    return d != 0 && (d & (d - 1)) == 0;
  };
  std::size_t found = 0;
  do {
    bool ok = true;
    for (std::uint32_t a = 0; a < count && ok; ++a)
      for (std::uint32_t b = a + 1; b < count && ok; ++b)
        if (hamming1(a, b) != hamming1(perm[a], perm[b])) ok = false;
    if (ok) ++found;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return found;
}

bool preserves_sequential_model(const BooleanPermutation& beta, const Network& net) {
  const Mode seq = Mode::sequential(net.size());
  const auto rel = act_relation(beta, unlabeled(build_model(net.with_mode(seq))));
  const auto labelled = label_in_mode(net.agents(), rel, seq);
  return labelled && is_model(*labelled);
}

std::set<std::vector<std::size_t>> oracle_cycles(const SignedInteractionGraph& g) {
  const std::size_t n = g.size();
  std::set<std::vector<std::size_t>> out;
  for (std::uint32_t subset = 1; subset < state_count(n); ++subset) {
    std::vector<std::size_t> vs;
    for (std::size_t v = 0; v < n; ++v)
      if ((subset >> v) & 1u) vs.push_back(v);
    // vs[0] is the smallest vertex; permute the rest.
    std::vector<std::size_t> rest(vs.begin() + 1, vs.end());
    do {
      std::vector<std::size_t> cyc{vs[0]};
      cyc.insert(cyc.end(), rest.begin(), rest.end());
      bool ok = true;
      for (std::size_t k = 0; k < cyc.size() && ok; ++k) ok = g.has_arc(cyc[k], cyc[(k + 1) % cyc.size()]);
      if (ok) out.insert(cyc);
    } while (std::next_permutation(rest.begin(), rest.end()));
  }
  return out;
}

}  // namespace testing
