#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bneq {

/// Hard cap on the agent count; states are packed into 32 bits.
inline constexpr std::size_t kMaxAgents = 32;

/// A subset of agent positions, bit i standing for the agent declared i-th.
using AgentMask = std::uint32_t;

/// Boolean vector over the declared agents. Bit i holds the state of the
/// agent declared at position i; the width lives with the agent set.
class State {
 public:
  constexpr State() = default;
  constexpr explicit State(std::uint32_t bits) : bits_(bits) {}

  constexpr std::uint32_t bits() const noexcept { return bits_; }
  constexpr bool operator[](std::size_t i) const noexcept { return (bits_ >> i) & 1u; }

  constexpr State with(std::size_t i, bool v) const noexcept {
    return State(v ? (bits_ | (1u << i)) : (bits_ & ~(1u << i)));
  }
  constexpr State flipped(AgentMask m) const noexcept { return State(bits_ ^ m); }

  friend constexpr auto operator<=>(State, State) = default;

 private:
  std::uint32_t bits_ = 0;
};

/// Number of states of a width-`n` system, i.e. 2^n.
constexpr std::size_t state_count(std::size_t n) noexcept { return std::size_t{1} << n; }

/// Full mask {0..n-1}.
constexpr AgentMask full_mask(std::size_t n) noexcept {
  return n >= 32 ? ~AgentMask{0} : ((AgentMask{1} << n) - 1);
}

/// Gathers the bits of `bits` selected by `mask` into a dense value;
/// the j-th selected position (in declaration order) lands on bit j.
constexpr std::uint32_t extract_bits(std::uint32_t bits, AgentMask mask) noexcept {
  std::uint32_t out = 0;
  std::uint32_t j = 0;
  for (AgentMask m = mask; m != 0; m &= m - 1, ++j) {
    if (bits & (m & -m)) out |= 1u << j;
  }
  return out;
}

/// Inverse of extract_bits: scatters the low bits of `value` onto `mask`.
constexpr std::uint32_t deposit_bits(std::uint32_t value, AgentMask mask) noexcept {
  std::uint32_t out = 0;
  std::uint32_t j = 0;
  for (AgentMask m = mask; m != 0; m &= m - 1, ++j) {
    if ((value >> j) & 1u) out |= (m & -m);
  }
  return out;
}

/// Positions set in `mask`, ascending.
std::vector<std::size_t> mask_positions(AgentMask mask);

/// Renders `width` bits, position 0 leftmost ("1100" for a4=1,a3=1,a2=0,a1=0
/// when the agents are declared a4 a3 a2 a1).
std::string to_bitstring(std::uint32_t bits, std::size_t width);
inline std::string to_bitstring(State s, std::size_t width) { return to_bitstring(s.bits(), width); }

/// Parses a string of '0'/'1' characters, leftmost character at position 0.
std::uint32_t parse_bitstring(std::string_view text);

/// Ordered, duplicate-free list of agent names.
class AgentSet {
 public:
  AgentSet() = default;
  explicit AgentSet(std::vector<std::string> names);

  std::size_t size() const noexcept { return names_.size(); }
  bool empty() const noexcept { return names_.empty(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  std::span<const std::string> names() const noexcept { return names_; }

  std::optional<std::size_t> index_of(std::string_view name) const;
  std::size_t require_index(std::string_view name) const;
  AgentMask all() const noexcept { return full_mask(size()); }

  /// Comma-joined names of the agents in `mask`, in declaration order.
  std::string join(AgentMask mask, std::string_view sep = ",") const;

  friend bool operator==(const AgentSet&, const AgentSet&) = default;

 private:
  std::vector<std::string> names_;
};

}  // namespace bneq
