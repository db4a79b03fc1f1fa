#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bneq/dynamics.hpp"
#include "bneq/network.hpp"
#include "bneq/permutation.hpp"

namespace bneq {

using BigInt = boost::multiprecision::cpp_int;

/// Default cap on enumerated group elements.
inline constexpr std::uint64_t kDefaultGroupBudget = 10'000'000;

/// Bijection on B^m stored as its image table; vectors are packed with
/// position j in bit j and printed position 0 leftmost.
class BooleanPermutation {
 public:
  BooleanPermutation() = default;
  /// Throws ValidationError unless `images` is a bijection on {0..2^width-1}.
  BooleanPermutation(std::size_t width, std::vector<std::uint32_t> images);
  static BooleanPermutation identity(std::size_t width);
  /// Element-wise negation.
  static BooleanPermutation complement(std::size_t width);
  /// The permutation induced on B^n by a signed permutation of positions.
  static BooleanPermutation from_signed(const SignedPermutation& sigma);

  std::size_t width() const noexcept { return width_; }
  std::uint32_t operator()(std::uint32_t v) const { return images_.at(v); }
  std::span<const std::uint32_t> images() const noexcept { return images_; }
  bool is_identity() const noexcept;

  /// (then(next))(v) = next(this(v)).
  BooleanPermutation then(const BooleanPermutation& next) const;
  BooleanPermutation inverse() const;

  friend bool operator==(const BooleanPermutation&, const BooleanPermutation&) = default;
  friend auto operator<=>(const BooleanPermutation&, const BooleanPermutation&) = default;

 private:
  std::size_t width_ = 0;
  std::vector<std::uint32_t> images_;
};

/// Cycle notation on bitstrings, e.g. "(00 11)" or "(00 11 01 10)"; "e" for the identity.
std::string to_cycle_string(const BooleanPermutation& beta);
/// Image table "[11 10 01 00]": images of the inputs in lexicographic bitstring order.
std::string to_table_string(const BooleanPermutation& beta);
/// Accepts either text form.
BooleanPermutation parse_boolean_permutation(std::string_view text, std::size_t width);

/// Element φ = (β, π) of the group preserving a partitioning mode W.
///
/// β_i is a Boolean permutation of width |w_i| and π permutes the modality
/// indices among modalities of equal cardinality. The action on a state is
/// c[w_{π(i)}] = β_i(b[w_i]).
class ModeIsomorphism {
 public:
  /// Throws NonPartitionError or ValidationError on inconsistent data.
  ModeIsomorphism(Mode mode, std::vector<BooleanPermutation> beta, Permutation pi);
  static ModeIsomorphism identity(const Mode& mode);
  /// The sequential-mode element with β_i = NOT iff p_i = 1 and the same π.
  static ModeIsomorphism from_signed(const SignedPermutation& sigma);

  const Mode& mode() const noexcept { return mode_; }
  std::span<const BooleanPermutation> beta() const noexcept { return beta_; }
  const BooleanPermutation& beta(std::size_t i) const { return beta_.at(i); }
  const Permutation& pi() const noexcept { return pi_; }

  State act(State s) const;
  /// The signed permutation this element encodes, if the mode is sequential.
  std::optional<SignedPermutation> to_signed() const;

  friend bool operator==(const ModeIsomorphism&, const ModeIsomorphism&) = default;

 private:
  Mode mode_;
  std::vector<BooleanPermutation> beta_;
  Permutation pi_;
};

/// act(compose(a, b), s) = act(b, act(a, s)). Throws ModeMismatchError.
ModeIsomorphism compose(const ModeIsomorphism& a, const ModeIsomorphism& b);
ModeIsomorphism inverse(const ModeIsomorphism& phi);

/// Action on states; throws ModeMismatchError if widths differ.
State act_state(const ModeIsomorphism& phi, State s);
/// img[s] = φ(s) for every s of B^n.
std::vector<std::uint32_t> action_table(const ModeIsomorphism& phi);

/// s1 --w_i--> s2 becomes φ(s1) --w_{π(i)}--> φ(s2).
/// Throws ModeMismatchError unless mode(m) equals the mode of φ.
Amts act_model(const ModeIsomorphism& phi, const Amts& m);

/// Image of an unlabelled relation under a Boolean permutation of B^n.
UnlabeledRelation act_relation(const BooleanPermutation& beta, const UnlabeledRelation& rel);

/// "beta1=(00 11), beta2=(01 10), pi=(1 2)".
std::string to_string(const ModeIsomorphism& phi);
ModeIsomorphism parse_isomorphism(std::string_view text, const Mode& mode);

/// "pi=(1 2), p=10" with p printed position 0 leftmost.
std::string to_string(const SignedPermutation& sigma);

/// ∏ ((2^m)!)^k · k! over the spectrum entries k•m.
BigInt group_order(const Spectrum& spectrum);

/// The group SP of a partitioning mode in a fixed lexicographic order over
/// (π, β_1, ..., β_k): π varies slowest, β_k fastest, each component ordered
/// by the lexicographic rank of its image table. Elements are decoded on
/// demand, so index ranges can be swept independently.
class IsomorphismGroup {
 public:
  /// Throws NonPartitionError for non-partitioning modes.
  explicit IsomorphismGroup(Mode mode);

  const Mode& mode() const noexcept { return mode_; }
  BigInt order() const;
  /// Order as a machine integer; throws BudgetError above `budget`.
  std::uint64_t size(std::uint64_t budget = kDefaultGroupBudget) const;

  ModeIsomorphism at(std::uint64_t index) const;
  /// Uniformly random element (independent of the enumeration order).
  ModeIsomorphism random_element(std::mt19937_64& rng) const;

  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = ModeIsomorphism;
    using difference_type = std::ptrdiff_t;

    iterator() = default;
    iterator(const IsomorphismGroup* group, std::uint64_t index) : group_(group), index_(index) {}
    ModeIsomorphism operator*() const { return group_->at(index_); }
    iterator& operator++() {
      ++index_;
      return *this;
    }
    iterator operator++(int) {
      auto old = *this;
      ++index_;
      return old;
    }
    std::uint64_t index() const noexcept { return index_; }
    friend bool operator==(const iterator& a, const iterator& b) { return a.index_ == b.index_; }

   private:
    const IsomorphismGroup* group_ = nullptr;
    std::uint64_t index_ = 0;
  };

  /// Range over all elements; throws BudgetError when the order exceeds `budget`.
  struct Range {
    iterator first, last;
    iterator begin() const { return first; }
    iterator end() const { return last; }
  };
  Range elements(std::uint64_t budget = kDefaultGroupBudget) const&;
  /// The range points into the group, so it must outlive the loop.
  Range elements(std::uint64_t budget = kDefaultGroupBudget) const&& = delete;

 private:
  Mode mode_;
  std::vector<std::size_t> widths_;               // |w_i|
  std::vector<std::vector<std::size_t>> classes_;  // modality indices grouped by cardinality
  std::vector<std::uint64_t> class_perms_;        // |class|!
  std::vector<std::uint64_t> beta_counts_;        // (2^|w_i|)!
  bool fits_ = true;                              // order fits in 64 bits
};

/// All elements in enumeration order; throws BudgetError above `budget`.
std::vector<ModeIsomorphism> enumerate_group(const Mode& mode, std::uint64_t budget = kDefaultGroupBudget);

/// All (2^m)! Boolean permutations of width m in lexicographic order (m ≤ 3).
std::vector<BooleanPermutation> all_boolean_permutations(std::size_t width);

// ---------------------------------------------------------------------------
// Graphs on Boolean vectors

/// Simple undirected graph on {0..n-1} with sorted adjacency lists.
class UGraph {
 public:
  UGraph() = default;
  explicit UGraph(std::size_t vertex_count);

  std::size_t vertex_count() const noexcept { return adj_.size(); }
  std::size_t edge_count() const noexcept { return edges_; }
  void add_edge(std::uint32_t u, std::uint32_t v);
  bool has_edge(std::uint32_t u, std::uint32_t v) const;
  std::size_t degree(std::uint32_t v) const { return adj_.at(v).size(); }
  std::span<const std::uint32_t> neighbors(std::uint32_t v) const { return adj_.at(v); }
  /// Edges (u, v) with u < v in lexicographic order.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges() const;

  friend bool operator==(const UGraph&, const UGraph&) = default;

 private:
  std::vector<std::vector<std::uint32_t>> adj_;
  std::size_t edges_ = 0;
};

/// Q_n: Boolean vectors at Hamming distance one are adjacent.
UGraph hypercube(std::size_t n);
/// K_k.
UGraph complete_graph(std::size_t k);
/// KM_W: distinct vectors adjacent iff they differ inside a single modality.
UGraph complete_modal_graph(const Mode& mode);
/// G1 □ G2 with vertex (v1, v2) numbered v1 + |V1|·v2.
UGraph cartesian_product(const UGraph& g1, const UGraph& g2);

/// Reindexing of B^n that lays the blocks of a partition out contiguously:
/// b[w_1] occupies the lowest |w_1| positions, then b[w_2], and so on.
/// map[s] is the image of state s.
std::vector<std::uint32_t> modal_reindexing(const Mode& partition);

/// True iff `map` is a bijection carrying the edges of `a` exactly onto those of `b`.
bool is_graph_isomorphism(const UGraph& a, const UGraph& b, std::span<const std::uint32_t> map);

/// True iff β preserves Hamming distance one in both directions.
bool is_hypercube_automorphism(const BooleanPermutation& beta);

}  // namespace bneq
