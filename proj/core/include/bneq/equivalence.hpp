#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bneq/dynamics.hpp"
#include "bneq/groups.hpp"
#include "bneq/igraph.hpp"
#include "bneq/network.hpp"

namespace bneq {

/// f' = φ ∘ f ∘ φ^{-1} under the same mode, so that the model of the result
/// is the image of the model of `net` under φ. Formulas are minimal DNFs.
/// Throws ModeMismatchError unless the network's mode is φ's mode.
Network transform_network(const Network& net, const ModeIsomorphism& phi);

struct EquivalenceWitness {
  ModeIsomorphism phi;
};

struct SearchOptions {
  std::uint64_t budget = kDefaultGroupBudget;
  unsigned threads = 1;
};

/// First φ (in enumeration order) with φ(model(a)) = model(b), or nullopt.
/// Networks under different modes are never equivalent. Throws
/// ModeMismatchError on different agent sets, NonPartitionError or BudgetError.
std::optional<EquivalenceWitness> equivalent(const Network& a, const Network& b, const SearchOptions& options = {});

/// True iff φ maps model(a) onto model(b).
bool is_witness(const ModeIsomorphism& phi, const Network& a, const Network& b);

struct ClassMember {
  ModeIsomorphism phi;
  Network network;
};

/// (φ, transform_network(net, φ)) for every group element, in enumeration order.
std::vector<ClassMember> enumerate_equivalence_class(const Network& net, const SearchOptions& options = {});

struct PatternBucket {
  std::size_t count = 0;
  std::size_t first_member = 0;  // index of the first network in the bucket
  SignedInteractionGraph representative;
};

/// Buckets in order of first occurrence.
struct PatternHistogram {
  std::vector<PatternBucket> buckets;
  std::vector<std::size_t> bucket_of;  // per input network
  std::vector<std::size_t> counts() const;
};

/// Groups interaction graphs up to isomorphism of unsigned, unlabeled digraphs.
PatternHistogram classify_interaction_patterns(std::span<const Network> networks);
PatternHistogram classify_interaction_patterns(std::span<const ClassMember> members);

struct ImgBucket {
  std::size_t count = 0;
  Digraph graph;
};

struct ImgClassification {
  std::vector<ImgBucket> buckets;  // distinct IMGs, in order of first occurrence
  bool mutually_isomorphic = true;
  std::vector<std::size_t> counts() const;
};

/// Groups IMGs over the network's own mode by exact equality of their arcs.
ImgClassification classify_imgs(std::span<const ClassMember> members, bool keep_loops = false);

/// The IMG of `b` is the image of the IMG of `a` under π (hence isomorphic).
/// Throws PreconditionError unless φ witnesses a ~ b.
bool check_img_invariance(const Network& a, const Network& b, const ModeIsomorphism& phi);

/// Every simple cycle C of G_a has the sign of π(C) in G_b.
/// Throws PreconditionError unless both are sequential and σ witnesses a ~ b.
bool check_cycle_signs(const Network& a, const Network& b, const SignedPermutation& sigma);

/// W into W' via π on W's modality indices; inclusion[i] indexes the block of W' containing w_i.
struct EmbeddingWitness {
  Mode from;
  Mode to;
  Permutation pi;
  std::vector<std::size_t> inclusion;
};

/// Checks that every w_i lies inside one block of W' and that w_i, w_j share
/// a block iff w_{π(i)}, w_{π(j)} do. Throws NonPartitionError or ModeMismatchError.
std::optional<EmbeddingWitness> pi_embedded(const Mode& from, const Mode& to, const Permutation& pi);

/// Tries every cardinality-preserving π in enumeration order (identity first).
std::optional<EmbeddingWitness> find_embedding(const Mode& from, const Mode& to,
                                               std::uint64_t budget = kDefaultGroupBudget);

/// The element of SP(W') acting on states exactly as φ does.
/// Throws PreconditionError if W is not π-embedded into W' for φ's π.
ModeIsomorphism lift_isomorphism(const ModeIsomorphism& phi, const Mode& to);

/// With φ witnessing a ~ b at their common mode, decides ⟨f_a, W'⟩ ~ ⟨f_b, W'⟩
/// by acting with the lifted element on the model under W'.
/// Throws PreconditionError if φ is not a witness or the embedding fails.
bool transfer_equivalence(const Network& a, const Network& b, const ModeIsomorphism& phi, const Mode& to);

/// Columns pattern,count,representative (DOT, quoted).
std::string classification_csv(const PatternHistogram& histogram);
std::string classification_text(const PatternHistogram& patterns, const ImgClassification& imgs, const Mode& mode,
                                const AgentSet& agents);

/// {"equivalent": bool, "mode": [[...]], "witness": "beta1=..., pi=..."}.
std::string witness_json(const std::optional<EquivalenceWitness>& witness, const Network& a);

}  // namespace bneq
