#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bneq/formula.hpp"
#include "bneq/state.hpp"

namespace bneq {

/// Largest agent count for which full truth tables (2^n states) are built.
inline constexpr std::size_t kMaxTableAgents = 20;

/// A set of modalities, each a non-empty subset of the agents.
///
/// Modalities are kept in a canonical order (lexicographic on their sorted
/// agent positions, i.e. by minimal agent position for partitions); that
/// order defines the 0-based modality index used by isomorphisms.
class Mode {
 public:
  Mode() = default;
  /// Throws ValidationError on empty modalities, agents out of range or
  /// duplicated modalities.
  Mode(std::size_t agent_count, std::vector<AgentMask> modalities);

  static Mode sequential(std::size_t n);
  static Mode parallel(std::size_t n);
  /// All non-empty subsets (only sensible for small n).
  static Mode generalized(std::size_t n);

  std::size_t agent_count() const noexcept { return agent_count_; }
  std::size_t size() const noexcept { return modalities_.size(); }
  bool empty() const noexcept { return modalities_.empty(); }
  AgentMask operator[](std::size_t i) const { return modalities_.at(i); }
  const std::vector<AgentMask>& modalities() const noexcept { return modalities_; }

  /// True iff the modalities are pairwise disjoint and cover every agent.
  bool is_partition() const noexcept { return partition_; }

  std::optional<std::size_t> index_of(AgentMask modality) const;
  /// Index of the modality containing `agent`; partitions only.
  std::size_t block_of(std::size_t agent) const;

  friend bool operator==(const Mode&, const Mode&) = default;

 private:
  std::size_t agent_count_ = 0;
  std::vector<AgentMask> modalities_;
  bool partition_ = false;
};

/// Throws NonPartitionError unless `mode` partitions its agents.
void require_partition(const Mode& mode, std::string_view context);

/// One `count • cardinality` entry of a spectrum.
struct SpectrumEntry {
  std::size_t count = 0;
  std::size_t cardinality = 0;
  friend bool operator==(const SpectrumEntry&, const SpectrumEntry&) = default;
};

/// Multiset of modality cardinalities, entries sorted by cardinality.
struct Spectrum {
  std::vector<SpectrumEntry> entries;

  /// Σ count·cardinality.
  std::size_t weight() const noexcept;
  friend bool operator==(const Spectrum&, const Spectrum&) = default;
};

Spectrum spectrum(const Mode& mode);
/// "{2•1, 1•2, 1•3}".
std::string to_string(const Spectrum& s);
/// Parses "{2•2}" or "2*2 1*3" (either `•`, `*` or `x` as separator).
Spectrum parse_spectrum(std::string_view text);

/// True iff the mode partitions the agents into modalities of one cardinality.
bool is_regular(const Mode& mode);

/// "{a4,a3} {a2,a1}" with agents in declaration order inside each block.
std::string to_string(const Mode& mode, const AgentSet& agents);

/// Parses whitespace-separated `{a,b,...}` blocks, or one of the keywords
/// `sequential`, `parallel`, `generalized`, against a known agent set.
Mode parse_mode(std::string_view text, const AgentSet& agents);

/// Parses explicit blocks without a prior agent declaration; the agent set is
/// taken in order of first appearance.
std::pair<AgentSet, Mode> parse_standalone_mode(std::string_view text);

/// Boolean network ⟨f, W⟩: one formula per agent plus a mode.
class Network {
 public:
  /// Throws ValidationError if the formula count differs from the agent
  /// count, a formula references an undeclared agent, or the mode is over
  /// a different agent count.
  Network(AgentSet agents, std::vector<Formula> functions, Mode mode);

  /// Builds a network from the full transition table f: B^n -> B^n
  /// (table[s] = f(s)); formulas are synthesized as minimal DNFs.
  static Network from_table(AgentSet agents, std::vector<std::uint32_t> table, Mode mode);

  const AgentSet& agents() const noexcept { return agents_; }
  std::size_t size() const noexcept { return agents_.size(); }
  const std::vector<Formula>& functions() const noexcept { return functions_; }
  const Formula& function(std::size_t agent) const { return functions_.at(agent); }
  const Mode& mode() const noexcept { return mode_; }

  /// Full synchronous image f(s).
  State apply(State s) const;

  /// f̃_{subset}(s): agents of `subset` take their f-value, the others keep s.
  State extend_tilde(AgentMask subset, State s) const;

  bool has_table() const noexcept { return !table_.empty(); }
  /// table()[s] = f(s).bits(). Throws BudgetError above kMaxTableAgents.
  std::span<const std::uint32_t> table() const;

  /// Same functions under another mode.
  Network with_mode(Mode mode) const;

 private:
  Network() = default;
  void build_table();

  AgentSet agents_;
  std::vector<Formula> functions_;
  Mode mode_;
  std::vector<std::uint32_t> table_;
};

/// Free-function form of Network::extend_tilde; throws ValidationError if
/// `subset` names agents outside the network.
State extend_tilde(const Network& net, AgentMask subset, State s);

/// Parses the line-oriented network format:
///   agents: a4 a3 a2 a1
///   f a3 = a4 | a2
///   mode: {a4} {a3} {a2} {a1}
/// `#` starts a comment. Throws ParseError (with the offending line) or
/// ValidationError.
Network parse_network(std::string_view text);

/// Inverse of parse_network; modalities are written explicitly.
std::string serialize_network(const Network& net);

/// Reads and parses a network file.
Network load_network(const std::string& path);

}  // namespace bneq
