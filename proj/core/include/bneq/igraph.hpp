#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bneq/network.hpp"
#include "bneq/permutation.hpp"

namespace bneq {

enum class Sign : int { Negative = -1, Zero = 0, Positive = 1 };

constexpr Sign operator*(Sign a, Sign b) noexcept {
  return static_cast<Sign>(static_cast<int>(a) * static_cast<int>(b));
}

/// "+", "-" or "±" for +1, -1 and 0.
std::string sign_symbol(Sign s);

struct SignedArc {
  std::size_t from = 0;
  std::size_t to = 0;
  Sign sign = Sign::Positive;
  friend auto operator<=>(const SignedArc&, const SignedArc&) = default;
};

/// Agent digraph with at most one signed arc per ordered pair.
class SignedInteractionGraph {
 public:
  SignedInteractionGraph() = default;
  explicit SignedInteractionGraph(AgentSet agents);

  const AgentSet& agents() const noexcept { return agents_; }
  std::size_t size() const noexcept { return agents_.size(); }

  void set_arc(std::size_t from, std::size_t to, Sign sign);
  std::optional<Sign> arc(std::size_t from, std::size_t to) const;
  bool has_arc(std::size_t from, std::size_t to) const { return arc(from, to).has_value(); }

  /// Arcs sorted by (from, to).
  std::vector<SignedArc> arcs() const;
  std::size_t arc_count() const;

  friend bool operator==(const SignedInteractionGraph&, const SignedInteractionGraph&) = default;

 private:
  static constexpr std::int8_t kNone = -2;
  AgentSet agents_;
  std::vector<std::int8_t> matrix_;
};

/// Digraph on {0..n-1} with small integer arc labels; label 0 means no arc.
class Digraph {
 public:
  Digraph() = default;
  explicit Digraph(std::size_t n);

  std::size_t size() const noexcept { return n_; }
  void add_arc(std::size_t from, std::size_t to, int label = 1);
  int label(std::size_t from, std::size_t to) const { return labels_.at(from * n_ + to); }
  bool has_arc(std::size_t from, std::size_t to) const { return label(from, to) != 0; }
  std::size_t arc_count() const;
  std::vector<std::pair<std::size_t, std::size_t>> arcs() const;

  friend bool operator==(const Digraph&, const Digraph&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<int> labels_;
};

/// Semantic interaction graph: a_i -> a_j iff flipping a_i changes f_{a_j} in
/// some context; the sign records monotonicity over all 2^(n-1) contexts.
SignedInteractionGraph interaction_graph(const Network& net, std::size_t max_agents = kMaxTableAgents);

/// Interaction graph read off the literals of the minimal DNF of each
/// function (positive only -> +, negative only -> -, both -> ±).
SignedInteractionGraph interaction_graph_from_dnf(const Network& net);

/// Product of the arc signs along consecutive agents of `path` (at least two
/// vertices). Throws ValidationError on a missing arc.
Sign sign_of_path(const SignedInteractionGraph& g, std::span<const std::size_t> path);

/// Simple cycles, each listed once starting at its smallest vertex without
/// repeating it at the end; self-loops are cycles of length one.
std::vector<std::vector<std::size_t>> simple_cycles(const SignedInteractionGraph& g);

/// Sign of a cycle given without its closing vertex.
Sign sign_of_cycle(const SignedInteractionGraph& g, std::span<const std::size_t> cycle);

/// Interaction modal graph: vertices are the modality indices of `partition`,
/// arc (i, j) iff some agent of w_i interacts with some agent of w_j.
/// Arcs inside a modality are dropped unless `keep_loops`.
/// Throws NonPartitionError for non-partitioning modes.
Digraph img(const SignedInteractionGraph& g, const Mode& partition, bool keep_loops = false);

/// Maps a_i -x-> a_j to a_{π(i)} -y-> a_{π(j)} with y = x·(-1)^(p_i + p_j),
/// where p is indexed by source position as in SignedPermutation.
SignedInteractionGraph mu_transform(const SignedInteractionGraph& g, const SignedPermutation& sigma);

/// Label-preserving isomorphism search; mapping[v] is the image in `b` of
/// vertex v of `a`. Throws BudgetError above 16 vertices.
std::optional<std::vector<std::size_t>> digraph_isomorphic(const Digraph& a, const Digraph& b);

/// Signed graphs compared with or without regard to arc signs.
Digraph to_digraph(const SignedInteractionGraph& g, bool keep_signs);
std::optional<std::vector<std::size_t>> digraph_isomorphic(const SignedInteractionGraph& a,
                                                           const SignedInteractionGraph& b, bool respect_signs);

/// Graphviz rendering with sign labels.
std::string to_dot(const SignedInteractionGraph& g);
/// Graphviz rendering of an IMG, vertices named by their modality.
std::string img_to_dot(const Digraph& img, const Mode& mode, const AgentSet& agents);

}  // namespace bneq
