#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bneq/network.hpp"
#include "bneq/state.hpp"

namespace bneq {

/// s1 --w--> s2 with w given by its index in the mode.
struct Transition {
  State from;
  std::size_t modality = 0;
  State to;
  friend auto operator<=>(const Transition&, const Transition&) = default;
};

/// Agent-based modal transition system ⟨B^n, W, →⟩.
///
/// Every transition s1 --w--> s2 satisfies s1[w] != s2[w] and
/// s1[A\w] == s2[A\w]; the constructor rejects anything else. Transitions
/// are kept sorted by (from, modality, to) with per-state offsets, which is
/// the adjacency keyed by (state, modality) that isomorphisms act on.
class Amts {
 public:
  Amts(AgentSet agents, Mode mode, std::vector<Transition> transitions);

  const AgentSet& agents() const noexcept { return agents_; }
  const Mode& mode() const noexcept { return mode_; }
  std::size_t agent_count() const noexcept { return agents_.size(); }
  std::size_t state_count() const noexcept { return bneq::state_count(agents_.size()); }

  std::span<const Transition> transitions() const noexcept { return transitions_; }
  std::span<const Transition> outgoing(State s) const;

  friend bool operator==(const Amts&, const Amts&) = default;

 private:
  AgentSet agents_;
  Mode mode_;
  std::vector<Transition> transitions_;
  std::vector<std::uint32_t> offsets_;
};

/// Model of a network: s --w--> f̃_w(s) whenever f̃_w(s) != s.
/// `max_agents` is the state-space guard; `threads` > 1 splits the states.
Amts build_model(const Network& net, std::size_t max_agents = kMaxTableAgents, unsigned threads = 1);

/// Terminal strongly connected component of the transition digraph.
struct Attractor {
  enum class Kind { Steady, Cyclic };
  std::vector<State> states;  // ascending
  Kind kind = Kind::Steady;
  friend bool operator==(const Attractor&, const Attractor&) = default;
};

/// All attractors, ordered by their smallest state.
std::vector<Attractor> attractors(const Amts& model);

/// Why an AMTS is not the model of any network over its mode.
struct ModelDiagnosis {
  enum class Kind {
    Nondeterministic,       // two w-transitions leave `state`
    ConflictingModalities,  // `modality` and `other_modality` disagree on f(state)[agent]
  };
  Kind kind = Kind::Nondeterministic;
  State state;
  std::size_t modality = 0;
  std::size_t other_modality = 0;
  std::size_t agent = 0;
  std::string message;
};

struct ModelCheck {
  bool is_model = false;
  std::optional<ModelDiagnosis> diagnosis;
  explicit operator bool() const noexcept { return is_model; }
};

/// Decides whether some evolution function regenerates exactly `m` under
/// mode(m); on failure reports the first violated state/modality.
ModelCheck check_model(const Amts& m);
inline bool is_model(const Amts& m) { return check_model(m).is_model; }

/// The network whose model is `m`; agents covered by no modality keep their
/// state. Throws ValidationError if `m` is not a model.
Network network_from_model(const Amts& m);

/// Transition relation on B^n without labels.
struct UnlabeledRelation {
  std::size_t agent_count = 0;
  std::vector<std::pair<State, State>> edges;
  friend bool operator==(const UnlabeledRelation&, const UnlabeledRelation&) = default;
};

UnlabeledRelation unlabeled(const Amts& m);

/// Labels each edge with its exact changed-agent set; the mode is the set of
/// labels that occur. Throws ValidationError on self-loops.
Amts label_by_change(const AgentSet& agents, const UnlabeledRelation& rel);

/// Labels each edge with the block of `partition` containing its changed
/// agents, or returns nullopt when some edge changes agents of two blocks.
std::optional<Amts> label_in_mode(const AgentSet& agents, const UnlabeledRelation& rel, const Mode& partition);

/// Outcome of reconstructing a mode and network from bare transitions.
struct ModeInference {
  std::optional<Mode> mode;        // set when inference succeeded
  std::optional<Network> network;  // induced network (under `mode`)
  std::optional<ModelDiagnosis> diagnosis;
  /// Labels (as agent masks) whose overlap prevents a partition.
  std::optional<std::pair<AgentMask, AgentMask>> conflicting_labels;
  std::string reason;
  explicit operator bool() const noexcept { return mode.has_value(); }
};

/// Minimal labeling (exact changed sets) followed by the model check; with
/// `require_partition`, the labels must be disjoint and are completed with
/// singletons into a partition of the agents.
ModeInference infer_mode(const AgentSet& agents, const UnlabeledRelation& rel, bool require_partition);

/// Graphviz rendering: boxes labeled by bitstrings, edges by the comma-joined
/// modality agents; steady states filled light gray, cyclic attractors gray.
std::string to_dot(const Amts& m, const std::vector<Attractor>& attractors);

/// {"agents": [...], "mode": [[...]], "transitions": [{"from","to","label"}]}.
std::string to_json(const Amts& m);
Amts amts_from_json(std::string_view text);

}  // namespace bneq
