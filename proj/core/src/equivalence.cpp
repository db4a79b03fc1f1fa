#include "bneq/equivalence.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <limits>
#include <sstream>
#include <thread>

#include "bneq/error.hpp"
#include "json.hpp"

namespace bneq {

Network transform_network(const Network& net, const ModeIsomorphism& phi) {
  if (net.mode() != phi.mode()) throw ModeMismatchError("network mode differs from the isomorphism's mode");
  const auto act = action_table(phi);
  const auto f = net.table();
  std::vector<std::uint32_t> g(f.size());
  for (std::uint32_t s = 0; s < f.size(); ++s) g[act[s]] = act[f[s]];
  return Network::from_table(net.agents(), std::move(g), net.mode());
}

bool is_witness(const ModeIsomorphism& phi, const Network& a, const Network& b) {
  if (a.mode() != phi.mode() || b.mode() != phi.mode()) return false;
  return act_model(phi, build_model(a)) == build_model(b);
}

namespace {

void require_same_agents(const Network& a, const Network& b) {
  if (a.agents() != b.agents()) throw ModeMismatchError("networks are over different agent sets");
}

// Runs `body(index)` over [0, count) split across threads, each index once.
template <class Body>
void parallel_for(std::uint64_t count, unsigned threads, Body&& body) {
  threads = std::max(1u, threads);
  if (threads == 1 || count < 2) {
    for (std::uint64_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::jthread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      for (std::uint64_t i = t; i < count; i += threads) body(i);
    });
}

}  // namespace

std::optional<EquivalenceWitness> equivalent(const Network& a, const Network& b, const SearchOptions& options) {
  require_same_agents(a, b);
  if (a.mode() != b.mode()) return std::nullopt;
  const IsomorphismGroup group(a.mode());
  const std::uint64_t total = group.size(options.budget);
  const auto fa = a.table();
  const auto fb = b.table();

  // g = φ f φ^{-1} holds iff the models correspond, since the mode partitions the agents.
  auto matches = [&](const ModeIsomorphism& phi) {
    const auto act = action_table(phi);
    for (std::uint32_t s = 0; s < fa.size(); ++s)
      if (act[fa[s]] != fb[act[s]]) return false;
    return true;
  };

  constexpr std::uint64_t kChunk = 4096;
  for (std::uint64_t begin = 0; begin < total; begin += kChunk) {
    const std::uint64_t end = std::min(total, begin + kChunk);
    std::atomic<std::uint64_t> best{std::numeric_limits<std::uint64_t>::max()};
    parallel_for(end - begin, options.threads, [&](std::uint64_t k) {
      const std::uint64_t idx = begin + k;
      if (idx > best.load()) return;
      if (!matches(group.at(idx))) return;
      std::uint64_t cur = best.load();
      while (idx < cur && !best.compare_exchange_weak(cur, idx)) {
      }
    });
    if (best.load() != std::numeric_limits<std::uint64_t>::max()) {
      auto phi = group.at(best.load());
      if (!is_witness(phi, a, b)) throw Error("internal error: table witness does not relate the models");
      return EquivalenceWitness{std::move(phi)};
    }
  }
  return std::nullopt;
}

std::vector<ClassMember> enumerate_equivalence_class(const Network& net, const SearchOptions& options) {
  const IsomorphismGroup group(net.mode());
  const std::uint64_t total = group.size(options.budget);
  std::vector<std::optional<ClassMember>> slots(total);
  parallel_for(total, options.threads, [&](std::uint64_t i) {
    auto phi = group.at(i);
    auto transformed = transform_network(net, phi);
    slots[i].emplace(ClassMember{std::move(phi), std::move(transformed)});
  });
  std::vector<ClassMember> out;
  out.reserve(total);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

std::vector<std::size_t> PatternHistogram::counts() const {
  std::vector<std::size_t> out;
  for (const auto& b : buckets) out.push_back(b.count);
  return out;
}

std::vector<std::size_t> ImgClassification::counts() const {
  std::vector<std::size_t> out;
  for (const auto& b : buckets) out.push_back(b.count);
  return out;
}

PatternHistogram classify_interaction_patterns(std::span<const Network> networks) {
  PatternHistogram h;
  std::vector<Digraph> reps;
  for (std::size_t i = 0; i < networks.size(); ++i) {
    auto g = interaction_graph(networks[i]);
    const auto d = to_digraph(g, false);
    std::size_t found = reps.size();
    for (std::size_t r = 0; r < reps.size() && found == reps.size(); ++r)
      if (digraph_isomorphic(reps[r], d)) found = r;
    if (found == reps.size()) {
      reps.push_back(d);
      h.buckets.push_back({0, i, std::move(g)});
    }
    ++h.buckets[found].count;
    h.bucket_of.push_back(found);
  }
  return h;
}

PatternHistogram classify_interaction_patterns(std::span<const ClassMember> members) {
  std::vector<Network> nets;
  nets.reserve(members.size());
  for (const auto& m : members) nets.push_back(m.network);
  return classify_interaction_patterns(nets);
}

ImgClassification classify_imgs(std::span<const ClassMember> members, bool keep_loops) {
  ImgClassification c;
  for (const auto& m : members) {
    auto g = img(interaction_graph(m.network), m.network.mode(), keep_loops);
    auto it = std::find_if(c.buckets.begin(), c.buckets.end(), [&](const ImgBucket& b) { return b.graph == g; });
    if (it == c.buckets.end()) c.buckets.push_back({1, std::move(g)});
    else ++it->count;
  }
  for (std::size_t i = 1; i < c.buckets.size(); ++i)
    if (!digraph_isomorphic(c.buckets[0].graph, c.buckets[i].graph)) c.mutually_isomorphic = false;
  return c;
}

bool check_img_invariance(const Network& a, const Network& b, const ModeIsomorphism& phi) {
  if (!is_witness(phi, a, b)) throw PreconditionError("the isomorphism does not relate the two networks");
  const auto ga = img(interaction_graph(a), a.mode());
  const auto gb = img(interaction_graph(b), b.mode());
  const std::size_t k = ga.size();
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (ga.has_arc(i, j) != gb.has_arc(phi.pi()(i), phi.pi()(j))) return false;
  return true;
}

bool check_cycle_signs(const Network& a, const Network& b, const SignedPermutation& sigma) {
  const Mode seq = Mode::sequential(a.size());
  if (a.mode() != seq || b.mode() != seq) throw PreconditionError("cycle-sign check needs the sequential mode");
  if (!is_witness(ModeIsomorphism::from_signed(sigma), a, b))
    throw PreconditionError("the signed permutation does not relate the two networks");
  const auto ga = interaction_graph(a);
  const auto gb = interaction_graph(b);
  for (const auto& cycle : simple_cycles(ga)) {
    std::vector<std::size_t> image;
    for (auto v : cycle) image.push_back(sigma.perm(v));
    for (std::size_t k = 0; k < image.size(); ++k)
      if (!gb.has_arc(image[k], image[(k + 1) % image.size()])) return false;
    if (sign_of_cycle(ga, cycle) != sign_of_cycle(gb, image)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Embedding

std::optional<EmbeddingWitness> pi_embedded(const Mode& from, const Mode& to, const Permutation& pi) {
  require_partition(from, "embedding source");
  require_partition(to, "embedding target");
  if (from.agent_count() != to.agent_count()) throw ModeMismatchError("modes are over different agent counts");
  const std::size_t k = from.size();
  if (pi.size() != k) throw ValidationError("pi must permute the modalities of the embedded mode");
  std::vector<std::size_t> inclusion(k);
  for (std::size_t i = 0; i < k; ++i) {
    const AgentMask w = from[i];
    const std::size_t block = to.block_of(static_cast<std::size_t>(std::countr_zero(w)));
    if ((w & ~to[block]) != 0) return std::nullopt;
    inclusion[i] = block;
  }
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if ((inclusion[i] == inclusion[j]) != (inclusion[pi(i)] == inclusion[pi(j)])) return std::nullopt;
  return EmbeddingWitness{from, to, pi, std::move(inclusion)};
}

std::optional<EmbeddingWitness> find_embedding(const Mode& from, const Mode& to, std::uint64_t budget) {
  require_partition(from, "embedding source");
  const std::size_t k = from.size();
  std::vector<std::vector<std::size_t>> classes;
  for (std::size_t i = 0; i < k; ++i) {
    auto it = std::find_if(classes.begin(), classes.end(),
                           [&](const auto& c) { return std::popcount(from[c.front()]) == std::popcount(from[i]); });
    if (it == classes.end()) classes.push_back({i});
    else it->push_back(i);
  }
  std::vector<std::vector<std::size_t>> perms(classes.size());
  for (std::size_t c = 0; c < classes.size(); ++c) perms[c] = classes[c];
  std::uint64_t tried = 0;
  for (;;) {
    if (++tried > budget) throw BudgetError("embedding search exceeded its budget");
    std::vector<std::size_t> images(k);
    for (std::size_t c = 0; c < classes.size(); ++c)
      for (std::size_t t = 0; t < classes[c].size(); ++t) images[classes[c][t]] = perms[c][t];
    if (auto w = pi_embedded(from, to, Permutation(std::move(images)))) return w;
    // Odometer over the per-class permutations, last class fastest.
    std::size_t c = classes.size();
    while (c > 0) {
      --c;
      if (std::next_permutation(perms[c].begin(), perms[c].end())) break;
      if (c == 0) return std::nullopt;
    }
    if (classes.empty()) return std::nullopt;
  }
}

ModeIsomorphism lift_isomorphism(const ModeIsomorphism& phi, const Mode& to) {
  const auto emb = pi_embedded(phi.mode(), to, phi.pi());
  if (!emb) throw PreconditionError("mode is not embedded into the target mode for this isomorphism");
  const std::size_t kt = to.size();
  std::vector<std::size_t> images(kt, kt);
  for (std::size_t i = 0; i < emb->inclusion.size(); ++i) images[emb->inclusion[i]] = emb->inclusion[phi.pi()(i)];
  std::vector<BooleanPermutation> beta;
  for (std::size_t a = 0; a < kt; ++a) {
    const AgentMask src = to[a];
    const AgentMask dst = to[images[a]];
    const auto m = static_cast<std::size_t>(std::popcount(src));
    std::vector<std::uint32_t> table(state_count(m));
    for (std::uint32_t v = 0; v < table.size(); ++v)
      table[v] = extract_bits(phi.act(State(deposit_bits(v, src))).bits(), dst);
    beta.emplace_back(m, std::move(table));
  }
  ModeIsomorphism lifted(to, std::move(beta), Permutation(std::move(images)));
  if (to.agent_count() <= kMaxTableAgents && action_table(lifted) != action_table(phi))
    throw Error("internal error: lifted isomorphism acts differently");
  return lifted;
}

bool transfer_equivalence(const Network& a, const Network& b, const ModeIsomorphism& phi, const Mode& to) {
  if (!is_witness(phi, a, b)) throw PreconditionError("the isomorphism does not relate the two networks");
  const auto lifted = lift_isomorphism(phi, to);
  return is_witness(lifted, a.with_mode(to), b.with_mode(to));
}

// ---------------------------------------------------------------------------
// Reports

std::string classification_csv(const PatternHistogram& histogram) {
  std::ostringstream os;
  os << "pattern,count,representative\n";
  for (std::size_t i = 0; i < histogram.buckets.size(); ++i) {
    std::string dot = to_dot(histogram.buckets[i].representative);
    std::string quoted;
    for (char c : dot) {
      if (c == '"') quoted += "\"\"";
      else quoted += c;
    }
    os << (i + 1) << ',' << histogram.buckets[i].count << ",\"" << quoted << "\"\n";
  }
  return os.str();
}

std::string classification_text(const PatternHistogram& patterns, const ImgClassification& imgs, const Mode& mode,
                                const AgentSet& agents) {
  std::ostringstream os;
  std::size_t total = 0;
  for (const auto& b : patterns.buckets) total += b.count;
  os << "class size: " << total << "\n";
  os << "interaction patterns: " << patterns.buckets.size() << "\n";
  for (std::size_t i = 0; i < patterns.buckets.size(); ++i) {
    const auto& b = patterns.buckets[i];
    os << "  pattern " << (i + 1) << ": " << b.count << "  [";
    bool first = true;
    for (const auto& a : b.representative.arcs()) {
      if (!first) os << ", ";
      first = false;
      os << agents.name(a.from) << "->" << agents.name(a.to);
    }
    os << "]\n";
  }
  os << "interaction modal graphs: " << imgs.buckets.size()
     << (imgs.mutually_isomorphic ? " (mutually isomorphic)" : " (not all isomorphic)") << "\n";
  for (const auto& b : imgs.buckets) {
    os << "  " << b.count << "  [";
    bool first = true;
    for (const auto& [i, j] : b.graph.arcs()) {
      if (!first) os << ", ";
      first = false;
      os << "{" << agents.join(mode[i]) << "}->{" << agents.join(mode[j]) << "}";
    }
    os << "]\n";
  }
  return os.str();
}

std::string witness_json(const std::optional<EquivalenceWitness>& witness, const Network& a) {
  nlohmann::ordered_json j;
  j["equivalent"] = witness.has_value();
  auto mode = nlohmann::json::array();
  for (auto w : a.mode().modalities()) {
    auto block = nlohmann::json::array();
    for (auto p : mask_positions(w)) block.push_back(a.agents().name(p));
    mode.push_back(block);
  }
  j["mode"] = mode;
  if (witness) j["witness"] = to_string(witness->phi);
  else j["witness"] = nullptr;
  return j.dump(2) + "\n";
}

}  // namespace bneq
