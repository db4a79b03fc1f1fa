#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bneq {

/// Permutation of {0..size-1}; printed and parsed in 1-based cycle notation.
class Permutation {
 public:
  Permutation() = default;
  /// Throws ValidationError unless `images` is a bijection on {0..size-1}.
  explicit Permutation(std::vector<std::size_t> images);
  static Permutation identity(std::size_t size);

  std::size_t size() const noexcept { return images_.size(); }
  std::size_t operator()(std::size_t i) const { return images_.at(i); }
  std::span<const std::size_t> images() const noexcept { return images_; }
  bool is_identity() const noexcept;

  /// (then(*this))(i) = then(this(i)).
  Permutation then(const Permutation& next) const;
  Permutation inverse() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::size_t> images_;
};

/// Disjoint cycles, 1-based, fixed points omitted: "(1 2)(3 4)"; "e" for the identity.
std::string to_cycle_string(const Permutation& p);
/// Accepts "e", "()" or products of cycles over 1..size.
Permutation parse_cycles(std::string_view text, std::size_t size);

/// Element (π, p) of BC_n acting by c = (b ⊕ p)^π, i.e. c[π(i)] = b[i] ⊕ p[i].
struct SignedPermutation {
  Permutation perm;
  std::vector<bool> negate;  // p, indexed by source position

  static SignedPermutation identity(std::size_t n);
  static SignedPermutation complement(std::size_t n);

  std::size_t size() const noexcept { return perm.size(); }
  /// Acts on a width-n vector packed with position i in bit i.
  std::uint32_t apply(std::uint32_t bits) const;

  friend bool operator==(const SignedPermutation&, const SignedPermutation&) = default;
};

/// Validates width agreement and applies the signed permutation.
std::uint32_t signed_act(const SignedPermutation& sigma, std::uint32_t bits, std::size_t width);

}  // namespace bneq
