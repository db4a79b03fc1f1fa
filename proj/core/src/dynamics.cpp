#include "bneq/dynamics.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "bneq/error.hpp"
#include "json.hpp"

namespace bneq {

// ---------------------------------------------------------------------------
// Amts

Amts::Amts(AgentSet agents, Mode mode, std::vector<Transition> transitions)
    : agents_(std::move(agents)), mode_(std::move(mode)), transitions_(std::move(transitions)) {
  const std::size_t n = agents_.size();
  if (n > kMaxTableAgents) throw BudgetError("AMTS state space exceeds 2^" + std::to_string(kMaxTableAgents));
  if (mode_.agent_count() != n) throw ValidationError("AMTS mode is over a different agent count");
  const std::uint32_t all = full_mask(n);
  for (const auto& t : transitions_) {
    if (t.modality >= mode_.size()) throw ValidationError("transition label outside the mode");
    if ((t.from.bits() & ~all) || (t.to.bits() & ~all)) throw ValidationError("transition state outside B^n");
    const AgentMask w = mode_[t.modality];
    const std::uint32_t diff = t.from.bits() ^ t.to.bits();
    if ((diff & w) == 0 || (diff & ~w) != 0)
      throw ValidationError("transition " + to_bitstring(t.from, n) + " -> " + to_bitstring(t.to, n) +
                            " violates the AMTS condition for modality {" + agents_.join(w) + "}");
  }
  std::sort(transitions_.begin(), transitions_.end());
  transitions_.erase(std::unique(transitions_.begin(), transitions_.end()), transitions_.end());
  offsets_.assign(bneq::state_count(n) + 1, 0);
  for (const auto& t : transitions_) ++offsets_[t.from.bits() + 1];
  for (std::size_t i = 1; i < offsets_.size(); ++i) offsets_[i] += offsets_[i - 1];
}

std::span<const Transition> Amts::outgoing(State s) const {
  const auto b = offsets_.at(s.bits());
  const auto e = offsets_.at(s.bits() + 1);
  return std::span<const Transition>(transitions_).subspan(b, e - b);
}

Amts build_model(const Network& net, std::size_t max_agents, unsigned threads) {
  const std::size_t n = net.size();
  if (n > max_agents || n > kMaxTableAgents)
    throw BudgetError("state-space guard exceeded: " + std::to_string(n) + " agents");
  const auto table = net.table();
  const auto& ws = net.mode().modalities();
  const std::size_t count = state_count(n);

  auto work = [&](std::size_t begin, std::size_t end, std::vector<Transition>& out) {
    for (std::size_t s = begin; s < end; ++s) {
      const std::uint32_t fs = table[s];
      for (std::size_t i = 0; i < ws.size(); ++i) {
        const std::uint32_t next = (fs & ws[i]) | (static_cast<std::uint32_t>(s) & ~ws[i]);
        if (next != s) out.push_back({State(static_cast<std::uint32_t>(s)), i, State(next)});
      }
    }
  };

  std::vector<Transition> all;
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count / 1024 + 1)));
  if (threads == 1) {
    work(0, count, all);
  } else {
    std::vector<std::vector<Transition>> parts(threads);
    std::vector<std::jthread> pool;
    const std::size_t chunk = (count + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const std::size_t b = std::min(count, t * chunk);
      const std::size_t e = std::min(count, b + chunk);
      pool.emplace_back([&, b, e, t] { work(b, e, parts[t]); });
    }
    pool.clear();
    for (auto& p : parts) all.insert(all.end(), p.begin(), p.end());
  }
  return Amts(net.agents(), net.mode(), std::move(all));
}

// ---------------------------------------------------------------------------
// Attractors: iterative Tarjan over the unlabeled state digraph.

std::vector<Attractor> attractors(const Amts& model) {
  const std::size_t count = model.state_count();
  std::vector<std::vector<std::uint32_t>> succ(count);
  for (const auto& t : model.transitions()) succ[t.from.bits()].push_back(t.to.bits());
  for (auto& v : succ) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }

  constexpr std::uint32_t kUnvisited = ~0u;
  std::vector<std::uint32_t> index(count, kUnvisited), low(count, 0), comp(count, kUnvisited);
  std::vector<bool> on_stack(count, false);
  std::vector<std::uint32_t> stack;
  std::vector<std::vector<std::uint32_t>> components;
  std::uint32_t next_index = 0;

  struct Frame {
    std::uint32_t v;
    std::size_t edge;
  };
  std::vector<Frame> call;
  for (std::uint32_t root = 0; root < count; ++root) {
    if (index[root] != kUnvisited) continue;
    call.push_back({root, 0});
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      Frame& fr = call.back();
      const std::uint32_t v = fr.v;
      if (fr.edge < succ[v].size()) {
        const std::uint32_t w = succ[v][fr.edge++];
        if (index[w] == kUnvisited) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        std::vector<std::uint32_t> c;
        std::uint32_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = static_cast<std::uint32_t>(components.size());
          c.push_back(w);
        } while (w != v);
        components.push_back(std::move(c));
      }
      call.pop_back();
      if (!call.empty()) {
        const std::uint32_t parent = call.back().v;
        low[parent] = std::min(low[parent], low[v]);
      }
    }
  }

  std::vector<Attractor> out;
  for (std::size_t ci = 0; ci < components.size(); ++ci) {
    bool terminal = true;
    for (auto v : components[ci]) {
      for (auto w : succ[v])
        if (comp[w] != ci) {
          terminal = false;
          break;
        }
      if (!terminal) break;
    }
    if (!terminal) continue;
    Attractor a;
    for (auto v : components[ci]) a.states.emplace_back(v);
    std::sort(a.states.begin(), a.states.end());
    a.kind = a.states.size() == 1 ? Attractor::Kind::Steady : Attractor::Kind::Cyclic;
    out.push_back(std::move(a));
  }
  std::sort(out.begin(), out.end(), [](const Attractor& a, const Attractor& b) { return a.states[0] < b.states[0]; });
  return out;
}

// ---------------------------------------------------------------------------
// Model check

namespace {

// Derives f(s) per state; returns the diagnosis of the first failure.
std::optional<ModelDiagnosis> derive_function(const Amts& m, std::vector<std::uint32_t>* table) {
  const std::size_t n = m.agent_count();
  const auto& ws = m.mode().modalities();
  if (table) table->assign(m.state_count(), 0);
  std::vector<int> source(n);
  for (std::uint32_t s = 0; s < m.state_count(); ++s) {
    const auto out = m.outgoing(State(s));
    std::uint32_t value = s;  // agents in no modality keep their state
    std::fill(source.begin(), source.end(), -1);
    std::size_t cursor = 0;
    for (std::size_t w = 0; w < ws.size(); ++w) {
      std::uint32_t target = s;
      std::size_t hits = 0;
      while (cursor < out.size() && out[cursor].modality == w) {
        target = out[cursor].to.bits();
        ++hits;
        ++cursor;
      }
      if (hits > 1) {
        ModelDiagnosis d;
        d.kind = ModelDiagnosis::Kind::Nondeterministic;
        d.state = State(s);
        d.modality = d.other_modality = w;
        d.agent = static_cast<std::size_t>(std::countr_zero(ws[w]));
        d.message = "state " + to_bitstring(s, n) + " has " + std::to_string(hits) + " transitions labeled {" +
                    m.agents().join(ws[w]) + "}";
        return d;
      }
      for (auto a : mask_positions(ws[w])) {
        const bool v = (target >> a) & 1u;
        if (source[a] >= 0 && (((value >> a) & 1u) != 0) != v) {
          ModelDiagnosis d;
          d.kind = ModelDiagnosis::Kind::ConflictingModalities;
          d.state = State(s);
          d.modality = w;
          d.other_modality = static_cast<std::size_t>(source[a]);
          d.agent = a;
          d.message = "state " + to_bitstring(s, n) + ": modalities {" + m.agents().join(ws[d.other_modality]) +
                      "} and {" + m.agents().join(ws[w]) + "} require different updates of agent " +
                      m.agents().name(a);
          return d;
        }
        source[a] = static_cast<int>(w);
        value = v ? (value | (1u << a)) : (value & ~(1u << a));
      }
    }
    if (table) (*table)[s] = value;
  }
  return std::nullopt;
}

}  // namespace

ModelCheck check_model(const Amts& m) {
  ModelCheck r;
  r.diagnosis = derive_function(m, nullptr);
  r.is_model = !r.diagnosis.has_value();
  return r;
}

Network network_from_model(const Amts& m) {
  std::vector<std::uint32_t> table;
  if (auto d = derive_function(m, &table)) throw ValidationError("AMTS is not a model: " + d->message);
  return Network::from_table(m.agents(), std::move(table), m.mode());
}

UnlabeledRelation unlabeled(const Amts& m) {
  UnlabeledRelation r;
  r.agent_count = m.agent_count();
  for (const auto& t : m.transitions()) r.edges.emplace_back(t.from, t.to);
  std::sort(r.edges.begin(), r.edges.end());
  r.edges.erase(std::unique(r.edges.begin(), r.edges.end()), r.edges.end());
  return r;
}

Amts label_by_change(const AgentSet& agents, const UnlabeledRelation& rel) {
  if (rel.agent_count != agents.size()) throw ValidationError("relation is over a different agent count");
  std::set<AgentMask> labels;
  for (const auto& [a, b] : rel.edges) {
    const AgentMask diff = a.bits() ^ b.bits();
    if (diff == 0) throw ValidationError("self-transition in relation");
    labels.insert(diff);
  }
  Mode mode(agents.size(), std::vector<AgentMask>(labels.begin(), labels.end()));
  std::vector<Transition> ts;
  ts.reserve(rel.edges.size());
  for (const auto& [a, b] : rel.edges) ts.push_back({a, *mode.index_of(a.bits() ^ b.bits()), b});
  return Amts(agents, std::move(mode), std::move(ts));
}

std::optional<Amts> label_in_mode(const AgentSet& agents, const UnlabeledRelation& rel, const Mode& partition) {
  require_partition(partition, "label_in_mode");
  if (rel.agent_count != agents.size() || partition.agent_count() != agents.size())
    throw ValidationError("relation and mode are over different agent counts");
  std::vector<Transition> ts;
  ts.reserve(rel.edges.size());
  for (const auto& [a, b] : rel.edges) {
    const AgentMask diff = a.bits() ^ b.bits();
    if (diff == 0) return std::nullopt;
    const std::size_t w = partition.block_of(static_cast<std::size_t>(std::countr_zero(diff)));
    if ((diff & ~partition[w]) != 0) return std::nullopt;
    ts.push_back({a, w, b});
  }
  return Amts(agents, partition, std::move(ts));
}

ModeInference infer_mode(const AgentSet& agents, const UnlabeledRelation& rel, bool require_partition_flag) {
  ModeInference r;
  const Amts labeled = label_by_change(agents, rel);
  const auto check = check_model(labeled);
  if (!check) r.diagnosis = check.diagnosis;
  Mode mode = labeled.mode();
  const auto& ws = mode.modalities();
  AgentMask covered = 0;
  if (require_partition_flag) {
    // Overlapping labels rule out every partition, whatever the updates say.
    for (std::size_t i = 0; i < ws.size(); ++i) {
      for (std::size_t j = i + 1; j < ws.size(); ++j) {
        if (ws[i] & ws[j]) {
          r.conflicting_labels = std::make_pair(ws[i], ws[j]);
          r.reason = "agent " + agents.name(static_cast<std::size_t>(std::countr_zero(ws[i] & ws[j]))) +
                     " is required in two distinct modalities {" + agents.join(ws[i]) + "} and {" +
                     agents.join(ws[j]) + "}";
          return r;
        }
      }
      covered |= ws[i];
    }
  }
  if (!check) {
    if (check.diagnosis->kind == ModelDiagnosis::Kind::ConflictingModalities)
      r.conflicting_labels = std::make_pair(ws[check.diagnosis->other_modality], ws[check.diagnosis->modality]);
    r.reason = check.diagnosis->message;
    return r;
  }
  if (require_partition_flag) {
    std::vector<AgentMask> blocks = ws;
    for (auto a : mask_positions(agents.all() & ~covered)) blocks.push_back(AgentMask{1} << a);
    mode = Mode(agents.size(), std::move(blocks));
  }
  std::vector<Transition> ts;
  for (const auto& t : labeled.transitions())
    ts.push_back({t.from, *mode.index_of(labeled.mode()[t.modality]), t.to});
  const Amts relabeled(agents, mode, std::move(ts));
  r.network = network_from_model(relabeled);
  r.mode = std::move(mode);
  return r;
}

// ---------------------------------------------------------------------------
// Export

std::string to_dot(const Amts& m, const std::vector<Attractor>& attrs) {
  const std::size_t n = m.agent_count();
  std::map<std::uint32_t, const char*> fill;
  for (const auto& a : attrs)
    for (auto s : a.states) fill[s.bits()] = a.kind == Attractor::Kind::Steady ? "gray90" : "gray75";
  std::ostringstream out;
  out << "digraph model {\n";
  out << "  node [shape=box, style=filled, fillcolor=white, fontname=\"monospace\"];\n";
  for (std::uint32_t s = 0; s < m.state_count(); ++s) {
    out << "  \"" << to_bitstring(s, n) << "\"";
    if (auto it = fill.find(s); it != fill.end()) out << " [fillcolor=" << it->second << "]";
    out << ";\n";
  }
  for (const auto& t : m.transitions()) {
    out << "  \"" << to_bitstring(t.from, n) << "\" -> \"" << to_bitstring(t.to, n) << "\" [label=\""
        << m.agents().join(m.mode()[t.modality]) << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

namespace {

nlohmann::json mask_names(const AgentSet& agents, AgentMask w) {
  auto arr = nlohmann::json::array();
  for (auto i : mask_positions(w)) arr.push_back(agents.name(i));
  return arr;
}

AgentMask names_mask(const AgentSet& agents, const nlohmann::json& arr) {
  if (!arr.is_array()) throw ParseError("modality must be an array of agent names", 0);
  AgentMask w = 0;
  for (const auto& e : arr) w |= AgentMask{1} << agents.require_index(e.get<std::string>());
  return w;
}

}  // namespace

std::string to_json(const Amts& m) {
  nlohmann::json j;
  j["agents"] = std::vector<std::string>(m.agents().names().begin(), m.agents().names().end());
  auto mode = nlohmann::json::array();
  for (auto w : m.mode().modalities()) mode.push_back(mask_names(m.agents(), w));
  j["mode"] = std::move(mode);
  auto ts = nlohmann::json::array();
  for (const auto& t : m.transitions()) {
    ts.push_back({{"from", to_bitstring(t.from, m.agent_count())},
                  {"to", to_bitstring(t.to, m.agent_count())},
                  {"label", mask_names(m.agents(), m.mode()[t.modality])}});
  }
  j["transitions"] = std::move(ts);
  return j.dump(2) + "\n";
}

Amts amts_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), e.byte);
  }
  try {
    AgentSet agents(j.at("agents").get<std::vector<std::string>>());
    std::vector<AgentMask> ws;
    for (const auto& w : j.at("mode")) ws.push_back(names_mask(agents, w));
    Mode mode(agents.size(), std::move(ws));
    std::vector<Transition> ts;
    for (const auto& t : j.at("transitions")) {
      const auto from = t.at("from").get<std::string>();
      const auto to = t.at("to").get<std::string>();
      if (from.size() != agents.size() || to.size() != agents.size())
        throw ValidationError("transition state width differs from the agent count");
      const auto idx = mode.index_of(names_mask(agents, t.at("label")));
      if (!idx) throw ValidationError("transition label is not a modality of the mode");
      ts.push_back({State(parse_bitstring(from)), *idx, State(parse_bitstring(to))});
    }
    return Amts(std::move(agents), std::move(mode), std::move(ts));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed AMTS JSON: ") + e.what(), 0);
  }
}

}  // namespace bneq
