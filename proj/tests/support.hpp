#pragma once

// Test fixtures, random generators and brute-force oracles. The oracles work
// from formulas and bitstrings rather than the library's packed tables, so
// they share as little code as possible with what they check.

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "bneq/dynamics.hpp"
#include "bneq/groups.hpp"
#include "bneq/igraph.hpp"
#include "bneq/network.hpp"

namespace testing {

std::string data_path(const std::string& name);
bneq::Network load_data(const std::string& name);

/// Agents "a1".."an" in that declaration order.
bneq::AgentSet numbered_agents(std::size_t n);

/// Uniformly random evolution function over `mode`.
bneq::Network random_network(const bneq::AgentSet& agents, const bneq::Mode& mode, std::mt19937_64& rng);

/// Every partition of {0..n-1} as a mode.
std::vector<bneq::Mode> all_partitions(std::size_t n);

/// True iff every block of `fine` lies in a block of `coarse`.
bool refines(const bneq::Mode& fine, const bneq::Mode& coarse);

using Edge = std::tuple<std::uint32_t, bneq::AgentMask, std::uint32_t>;

/// Model edges (from, modality mask, to) evaluated straight from the formulas.
std::set<Edge> oracle_model(const bneq::Network& net);
std::set<Edge> edges_of(const bneq::Amts& m);

/// Terminal SCCs via explicit reachability sets.
std::vector<std::vector<std::uint32_t>> oracle_attractors(const bneq::Amts& m);

/// Interaction arcs with signs from the formulas over all state pairs.
std::set<std::tuple<std::size_t, std::size_t, int>> oracle_interactions(const bneq::Network& net);
std::set<std::tuple<std::size_t, std::size_t, int>> arcs_of(const bneq::SignedInteractionGraph& g);

/// Action of (β, π) computed on bitstrings: the characters of block i,
/// read in declaration order, are looked up in β_i and written into block π(i).
std::string oracle_act(const bneq::ModeIsomorphism& phi, const std::string& state);

/// ∏ ((2^m)!)^k · k! in 64 bits (small spectra only).
std::uint64_t oracle_order(const bneq::Mode& partition);

/// Brute-force count of Boolean permutations of B^n mapping Hamming-1 pairs
/// onto Hamming-1 pairs.
std::size_t oracle_hypercube_automorphisms(std::size_t n);

/// Image of the sequential model under β, relabelled inside the sequential
/// mode; false if some image edge changes two agents or the result is no model.
bool preserves_sequential_model(const bneq::BooleanPermutation& beta, const bneq::Network& net);

/// Simple cycles by brute force over vertex sequences (small graphs).
std::set<std::vector<std::size_t>> oracle_cycles(const bneq::SignedInteractionGraph& g);

}  // namespace testing
