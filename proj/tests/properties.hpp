#pragma once

// Property sweeps shared by the unit tests and the acceptance runner. Each
// returns how many cases it checked and how many violated the property.

#include <cstdint>
#include <string>
#include <vector>

namespace testing {

struct SweepResult {
  std::string name;
  std::uint64_t cases = 0;
  std::uint64_t violations = 0;
  std::string first_violation;
  bool ok() const { return violations == 0 && cases > 0; }
};

/// Group axioms of SP(W) over every partition W of n agents: all pairs when
/// the group has at most 1152 elements, otherwise every element against its
/// inverse and identity plus `samples` random pairs and triples.
SweepResult sweep_group_axioms(std::size_t n, std::uint64_t samples, std::uint64_t seed);

/// For every partition W of n agents and every φ in SP(W) (or `samples`
/// random (W, φ) pairs when `samples` > 0): the image of a random model is a
/// model under W, and it equals the model of the transformed network.
SweepResult sweep_model_action(std::size_t n, std::uint64_t samples, std::uint64_t seed);

/// IMG of every equivalent pair (N, transform(N, φ)) is the π-image of the IMG of N.
SweepResult sweep_img_invariance(std::size_t n, std::uint64_t samples, std::uint64_t seed);

/// Sequential mode, signed permutations: interaction graph of the transformed
/// network equals the μ-transform, and cycle signs are kept. `networks`
/// random networks per element, or `samples` random cases when > 0.
SweepResult sweep_mu_transform(std::size_t n, std::size_t networks, std::uint64_t samples, std::uint64_t seed);
SweepResult sweep_cycle_signs(std::size_t n, std::size_t networks, std::uint64_t samples, std::uint64_t seed);

/// Equivalence transfer along every refinement pair of partitions of n agents.
SweepResult sweep_refinement_transfer(std::size_t n, std::size_t per_pair, std::uint64_t seed);

/// Equivalence transfer for the six-agent mode embedded with π = (1 2)(3 4) and π = e.
SweepResult sweep_six_agent_transfer(std::size_t cases, std::uint64_t seed);

}  // namespace testing
