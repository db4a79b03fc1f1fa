#include "bneq/groups.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <limits>
#include <numeric>
#include <sstream>

#include "bneq/error.hpp"

namespace bneq {

// ---------------------------------------------------------------------------
// Permutation

Permutation::Permutation(std::vector<std::size_t> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (auto v : images_) {
    if (v >= images_.size() || seen[v]) throw ValidationError("permutation images are not a bijection");
    seen[v] = true;
  }
}

Permutation Permutation::identity(std::size_t size) {
  std::vector<std::size_t> id(size);
  std::iota(id.begin(), id.end(), std::size_t{0});
  return Permutation(std::move(id));
}

bool Permutation::is_identity() const noexcept {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i) return false;
  return true;
}

Permutation Permutation::then(const Permutation& next) const {
  if (next.size() != size()) throw ValidationError("composing permutations of different sizes");
  std::vector<std::size_t> out(size());
  for (std::size_t i = 0; i < size(); ++i) out[i] = next.images_[images_[i]];
  return Permutation(std::move(out));
}

Permutation Permutation::inverse() const {
  std::vector<std::size_t> out(size());
  for (std::size_t i = 0; i < size(); ++i) out[images_[i]] = i;
  return Permutation(std::move(out));
}

std::string to_cycle_string(const Permutation& p) {
  std::string out;
  std::vector<bool> seen(p.size(), false);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i] || p(i) == i) continue;
    out += '(';
    for (std::size_t j = i; !seen[j]; j = p(j)) {
      if (j != i) out += ' ';
      out += std::to_string(j + 1);
      seen[j] = true;
    }
    out += ')';
  }
  return out.empty() ? "e" : out;
}

namespace {

std::string_view strip(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Splits "(a b)(c d)" into token lists; throws ParseError on bad nesting.
std::vector<std::vector<std::string>> cycle_tokens(std::string_view text) {
  std::vector<std::vector<std::string>> cycles;
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    if (text[i] != '(') throw ParseError("expected '(' in cycle notation", i);
    const auto close = text.find(')', i);
    if (close == std::string_view::npos) throw ParseError("unterminated cycle", i);
    std::istringstream is{std::string(text.substr(i + 1, close - i - 1))};
    std::vector<std::string> tokens;
    for (std::string t; is >> t;) tokens.push_back(t);
    cycles.push_back(std::move(tokens));
    i = close + 1;
  }
  return cycles;
}

}  // namespace

Permutation parse_cycles(std::string_view text, std::size_t size) {
  text = strip(text);
  std::vector<std::size_t> images(size);
  std::iota(images.begin(), images.end(), std::size_t{0});
  if (text == "e" || text.empty()) return Permutation(std::move(images));
  std::vector<bool> used(size, false);
  for (const auto& cycle : cycle_tokens(text)) {
    std::vector<std::size_t> elems;
    for (const auto& t : cycle) {
      std::size_t v = 0;
      try {
        std::size_t pos = 0;
        v = std::stoul(t, &pos);
        if (pos != t.size()) throw std::invalid_argument(t);
      } catch (const std::exception&) {
        throw ParseError("bad cycle element '" + t + "'", 0);
      }
      if (v < 1 || v > size) throw ParseError("cycle element " + t + " outside 1.." + std::to_string(size), 0);
      if (used[v - 1]) throw ParseError("cycles are not disjoint at element " + t, 0);
      used[v - 1] = true;
      elems.push_back(v - 1);
    }
    for (std::size_t k = 0; k < elems.size(); ++k) images[elems[k]] = elems[(k + 1) % elems.size()];
  }
  return Permutation(std::move(images));
}

// ---------------------------------------------------------------------------
// SignedPermutation

SignedPermutation SignedPermutation::identity(std::size_t n) {
  return {Permutation::identity(n), std::vector<bool>(n, false)};
}

SignedPermutation SignedPermutation::complement(std::size_t n) {
  return {Permutation::identity(n), std::vector<bool>(n, true)};
}

std::uint32_t SignedPermutation::apply(std::uint32_t bits) const {
  std::uint32_t out = 0;
  for (std::size_t i = 0; i < size(); ++i) {
    const bool b = ((bits >> i) & 1u) != negate[i];
    if (b) out |= 1u << perm(i);
  }
  return out;
}

std::uint32_t signed_act(const SignedPermutation& sigma, std::uint32_t bits, std::size_t width) {
  if (sigma.size() != width || sigma.negate.size() != width)
    throw ValidationError("signed permutation width " + std::to_string(sigma.size()) + " differs from vector width " +
                          std::to_string(width));
  if (bits & ~full_mask(width)) throw ValidationError("vector has bits beyond its width");
  return sigma.apply(bits);
}

std::string to_string(const SignedPermutation& sigma) {
  std::string p;
  for (bool b : sigma.negate) p += b ? '1' : '0';
  return "pi=" + to_cycle_string(sigma.perm) + ", p=" + p;
}

// ---------------------------------------------------------------------------
// BooleanPermutation

BooleanPermutation::BooleanPermutation(std::size_t width, std::vector<std::uint32_t> images)
    : width_(width), images_(std::move(images)) {
  if (width_ > kMaxTableAgents) throw BudgetError("Boolean permutation width too large");
  if (images_.size() != state_count(width_)) throw ValidationError("image table size is not 2^width");
  std::vector<bool> seen(images_.size(), false);
  for (auto v : images_) {
    if (v >= images_.size() || seen[v]) throw ValidationError("image table is not a bijection");
    seen[v] = true;
  }
}

BooleanPermutation BooleanPermutation::identity(std::size_t width) {
  std::vector<std::uint32_t> t(state_count(width));
  std::iota(t.begin(), t.end(), 0u);
  return BooleanPermutation(width, std::move(t));
}

BooleanPermutation BooleanPermutation::complement(std::size_t width) {
  std::vector<std::uint32_t> t(state_count(width));
  for (std::uint32_t v = 0; v < t.size(); ++v) t[v] = v ^ full_mask(width);
  return BooleanPermutation(width, std::move(t));
}

BooleanPermutation BooleanPermutation::from_signed(const SignedPermutation& sigma) {
  const std::size_t n = sigma.size();
  std::vector<std::uint32_t> t(state_count(n));
  for (std::uint32_t v = 0; v < t.size(); ++v) t[v] = sigma.apply(v);
  return BooleanPermutation(n, std::move(t));
}

bool BooleanPermutation::is_identity() const noexcept {
  for (std::uint32_t v = 0; v < images_.size(); ++v)
    if (images_[v] != v) return false;
  return true;
}

BooleanPermutation BooleanPermutation::then(const BooleanPermutation& next) const {
  if (next.width_ != width_) throw ValidationError("composing Boolean permutations of different widths");
  std::vector<std::uint32_t> t(images_.size());
  for (std::uint32_t v = 0; v < t.size(); ++v) t[v] = next.images_[images_[v]];
  return BooleanPermutation(width_, std::move(t));
}

BooleanPermutation BooleanPermutation::inverse() const {
  std::vector<std::uint32_t> t(images_.size());
  for (std::uint32_t v = 0; v < t.size(); ++v) t[images_[v]] = v;
  return BooleanPermutation(width_, std::move(t));
}

namespace {

// Vectors of B^width sorted by their printed bitstrings.
std::vector<std::uint32_t> lexicographic_vectors(std::size_t width) {
  std::vector<std::uint32_t> vs(state_count(width));
  std::iota(vs.begin(), vs.end(), 0u);
  std::sort(vs.begin(), vs.end(),
            [width](std::uint32_t a, std::uint32_t b) { return to_bitstring(a, width) < to_bitstring(b, width); });
  return vs;
}

std::uint32_t parse_vector(const std::string& token, std::size_t width) {
  if (token.size() != width) throw ParseError("bitstring '" + token + "' does not have width " + std::to_string(width), 0);
  return parse_bitstring(token);
}

}  // namespace

std::string to_cycle_string(const BooleanPermutation& beta) {
  const std::size_t w = beta.width();
  std::string out;
  std::vector<bool> seen(beta.images().size(), false);
  for (auto v : lexicographic_vectors(w)) {
    if (seen[v] || beta(v) == v) continue;
    out += '(';
    for (std::uint32_t u = v; !seen[u]; u = beta(u)) {
      if (u != v) out += ' ';
      out += to_bitstring(u, w);
      seen[u] = true;
    }
    out += ')';
  }
  return out.empty() ? "e" : out;
}

std::string to_table_string(const BooleanPermutation& beta) {
  std::string out = "[";
  bool first = true;
  for (auto v : lexicographic_vectors(beta.width())) {
    if (!first) out += ' ';
    first = false;
    out += to_bitstring(beta(v), beta.width());
  }
  return out + "]";
}

BooleanPermutation parse_boolean_permutation(std::string_view text, std::size_t width) {
  text = strip(text);
  if (width > kMaxTableAgents) throw BudgetError("Boolean permutation width too large");
  if (text == "e" || text.empty()) return BooleanPermutation::identity(width);
  std::vector<std::uint32_t> images(state_count(width));
  if (text.front() == '[') {
    if (text.back() != ']') throw ParseError("unterminated image table", text.size());
    std::istringstream is{std::string(text.substr(1, text.size() - 2))};
    std::vector<std::string> tokens;
    for (std::string t; is >> t;) tokens.push_back(t);
    const auto order = lexicographic_vectors(width);
    if (tokens.size() != order.size())
      throw ParseError("image table needs " + std::to_string(order.size()) + " entries", 0);
    for (std::size_t k = 0; k < order.size(); ++k) images[order[k]] = parse_vector(tokens[k], width);
    return BooleanPermutation(width, std::move(images));
  }
  std::iota(images.begin(), images.end(), 0u);
  std::vector<bool> used(images.size(), false);
  for (const auto& cycle : cycle_tokens(text)) {
    std::vector<std::uint32_t> elems;
    for (const auto& t : cycle) {
      const auto v = parse_vector(t, width);
      if (used[v]) throw ParseError("cycles are not disjoint at " + t, 0);
      used[v] = true;
      elems.push_back(v);
    }
    for (std::size_t k = 0; k < elems.size(); ++k) images[elems[k]] = elems[(k + 1) % elems.size()];
  }
  return BooleanPermutation(width, std::move(images));
}

std::vector<BooleanPermutation> all_boolean_permutations(std::size_t width) {
  if (width > 3) throw BudgetError("listing all Boolean permutations is limited to width 3");
  std::vector<std::uint32_t> t(state_count(width));
  std::iota(t.begin(), t.end(), 0u);
  std::vector<BooleanPermutation> out;
  do {
    out.emplace_back(width, t);
  } while (std::next_permutation(t.begin(), t.end()));
  return out;
}

// ---------------------------------------------------------------------------
// ModeIsomorphism

ModeIsomorphism::ModeIsomorphism(Mode mode, std::vector<BooleanPermutation> beta, Permutation pi)
    : mode_(std::move(mode)), beta_(std::move(beta)), pi_(std::move(pi)) {
  require_partition(mode_, "mode isomorphism");
  const std::size_t k = mode_.size();
  if (beta_.size() != k) throw ValidationError("need one Boolean permutation per modality");
  if (pi_.size() != k) throw ValidationError("modality permutation has the wrong size");
  for (std::size_t i = 0; i < k; ++i) {
    const auto m = static_cast<std::size_t>(std::popcount(mode_[i]));
    if (beta_[i].width() != m)
      throw ValidationError("beta" + std::to_string(i + 1) + " has width " + std::to_string(beta_[i].width()) +
                            " but modality " + std::to_string(i + 1) + " has " + std::to_string(m) + " agents");
    if (std::popcount(mode_[pi_(i)]) != std::popcount(mode_[i]))
      throw ValidationError("pi maps modality " + std::to_string(i + 1) + " onto one of another cardinality");
  }
}

ModeIsomorphism ModeIsomorphism::identity(const Mode& mode) {
  require_partition(mode, "mode isomorphism");
  std::vector<BooleanPermutation> beta;
  for (auto w : mode.modalities()) beta.push_back(BooleanPermutation::identity(std::popcount(w)));
  return ModeIsomorphism(mode, std::move(beta), Permutation::identity(mode.size()));
}

ModeIsomorphism ModeIsomorphism::from_signed(const SignedPermutation& sigma) {
  const std::size_t n = sigma.size();
  std::vector<BooleanPermutation> beta;
  for (std::size_t i = 0; i < n; ++i)
    beta.push_back(sigma.negate.at(i) ? BooleanPermutation::complement(1) : BooleanPermutation::identity(1));
  return ModeIsomorphism(Mode::sequential(n), std::move(beta), sigma.perm);
}

State ModeIsomorphism::act(State s) const {
  std::uint32_t out = 0;
  for (std::size_t i = 0; i < mode_.size(); ++i)
    out |= deposit_bits(beta_[i](extract_bits(s.bits(), mode_[i])), mode_[pi_(i)]);
  return State(out);
}

std::optional<SignedPermutation> ModeIsomorphism::to_signed() const {
  const std::size_t n = mode_.agent_count();
  if (mode_ != Mode::sequential(n)) return std::nullopt;
  SignedPermutation sigma{pi_, std::vector<bool>(n, false)};
  for (std::size_t i = 0; i < n; ++i) sigma.negate[i] = !beta_[i].is_identity();
  return sigma;
}

ModeIsomorphism compose(const ModeIsomorphism& a, const ModeIsomorphism& b) {
  if (a.mode() != b.mode()) throw ModeMismatchError("composing isomorphisms of different modes");
  const std::size_t k = a.mode().size();
  std::vector<BooleanPermutation> beta;
  for (std::size_t i = 0; i < k; ++i) beta.push_back(a.beta(i).then(b.beta(a.pi()(i))));
  return ModeIsomorphism(a.mode(), std::move(beta), a.pi().then(b.pi()));
}

ModeIsomorphism inverse(const ModeIsomorphism& phi) {
  const std::size_t k = phi.mode().size();
  const Permutation inv = phi.pi().inverse();
  std::vector<BooleanPermutation> beta;
  for (std::size_t j = 0; j < k; ++j) beta.push_back(phi.beta(inv(j)).inverse());
  return ModeIsomorphism(phi.mode(), std::move(beta), inv);
}

State act_state(const ModeIsomorphism& phi, State s) {
  if (s.bits() & ~full_mask(phi.mode().agent_count()))
    throw ModeMismatchError("state is wider than the isomorphism's agent set");
  return phi.act(s);
}

std::vector<std::uint32_t> action_table(const ModeIsomorphism& phi) {
  const std::size_t n = phi.mode().agent_count();
  if (n > kMaxTableAgents) throw BudgetError("state-space guard exceeded");
  std::vector<std::uint32_t> t(state_count(n));
  for (std::uint32_t s = 0; s < t.size(); ++s) t[s] = phi.act(State(s)).bits();
  return t;
}

Amts act_model(const ModeIsomorphism& phi, const Amts& m) {
  if (m.mode() != phi.mode()) throw ModeMismatchError("model and isomorphism have different modes");
  const auto t = action_table(phi);
  std::vector<Transition> out;
  out.reserve(m.transitions().size());
  for (const auto& tr : m.transitions())
    out.push_back({State(t[tr.from.bits()]), phi.pi()(tr.modality), State(t[tr.to.bits()])});
  return Amts(m.agents(), m.mode(), std::move(out));
}

UnlabeledRelation act_relation(const BooleanPermutation& beta, const UnlabeledRelation& rel) {
  if (beta.width() != rel.agent_count) throw ValidationError("Boolean permutation width differs from the relation");
  UnlabeledRelation out{rel.agent_count, {}};
  out.edges.reserve(rel.edges.size());
  for (const auto& [a, b] : rel.edges) out.edges.emplace_back(State(beta(a.bits())), State(beta(b.bits())));
  std::sort(out.edges.begin(), out.edges.end());
  return out;
}

std::string to_string(const ModeIsomorphism& phi) {
  std::string out;
  for (std::size_t i = 0; i < phi.mode().size(); ++i)
    out += "beta" + std::to_string(i + 1) + "=" + to_cycle_string(phi.beta(i)) + ", ";
  return out + "pi=" + to_cycle_string(phi.pi());
}

ModeIsomorphism parse_isomorphism(std::string_view text, const Mode& mode) {
  require_partition(mode, "mode isomorphism");
  const std::size_t k = mode.size();
  std::vector<BooleanPermutation> beta;
  for (auto w : mode.modalities()) beta.push_back(BooleanPermutation::identity(std::popcount(w)));
  Permutation pi = Permutation::identity(k);
  std::size_t start = 0;
  while (start <= text.size()) {
    auto comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    const auto part = strip(text.substr(start, comma - start));
    start = comma + 1;
    if (part.empty()) continue;
    const auto eq = part.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected key=value in isomorphism text", start);
    const auto key = strip(part.substr(0, eq));
    const auto value = part.substr(eq + 1);
    if (key == "pi") {
      pi = parse_cycles(value, k);
    } else if (key.substr(0, 4) == "beta") {
      std::size_t idx = 0;
      const auto digits = std::string(key.substr(4));
      if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(c); }))
        throw ParseError("bad key '" + std::string(key) + "'", 0);
      idx = std::stoul(digits);
      if (idx < 1 || idx > k) throw ParseError("modality index " + digits + " outside 1.." + std::to_string(k), 0);
      beta[idx - 1] = parse_boolean_permutation(value, std::popcount(mode[idx - 1]));
    } else {
      throw ParseError("unknown key '" + std::string(key) + "'", 0);
    }
  }
  return ModeIsomorphism(mode, std::move(beta), std::move(pi));
}

// ---------------------------------------------------------------------------
// Group enumeration

namespace {

BigInt factorial(std::uint64_t n) {
  BigInt r = 1;
  for (std::uint64_t i = 2; i <= n; ++i) r *= i;
  return r;
}

std::uint64_t factorial64(std::uint64_t n) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 2; i <= n; ++i) r *= i;
  return r;
}

// Permutation of {0..n-1} with the given lexicographic rank.
std::vector<std::size_t> unrank(std::uint64_t rank, std::size_t n) {
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  std::vector<std::size_t> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t f = factorial64(n - 1 - i);
    const auto idx = static_cast<std::size_t>(rank / f);
    rank %= f;
    out.push_back(pool[idx]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(idx));
  }
  return out;
}

constexpr std::size_t kMaxOrderWidth = 12;

}  // namespace

BigInt group_order(const Spectrum& spectrum) {
  BigInt order = 1;
  for (const auto& e : spectrum.entries) {
    if (e.cardinality > kMaxOrderWidth) throw BudgetError("modality too large for an exact group order");
    const BigInt sym = factorial(std::uint64_t{1} << e.cardinality);
    order *= boost::multiprecision::pow(sym, static_cast<unsigned>(e.count)) * factorial(e.count);
  }
  return order;
}

IsomorphismGroup::IsomorphismGroup(Mode mode) : mode_(std::move(mode)) {
  require_partition(mode_, "isomorphism group");
  for (auto w : mode_.modalities()) widths_.push_back(static_cast<std::size_t>(std::popcount(w)));
  for (std::size_t i = 0; i < widths_.size(); ++i) {
    auto it = std::find_if(classes_.begin(), classes_.end(), [&](const auto& c) { return widths_[c.front()] == widths_[i]; });
    if (it == classes_.end()) classes_.push_back({i});
    else it->push_back(i);
  }
  const BigInt total = order();
  fits_ = total <= std::numeric_limits<std::uint64_t>::max();
  if (fits_) {
    for (const auto& c : classes_) class_perms_.push_back(factorial64(c.size()));
    for (auto m : widths_) beta_counts_.push_back(factorial64(std::uint64_t{1} << m));
  }
}

BigInt IsomorphismGroup::order() const { return group_order(spectrum(mode_)); }

std::uint64_t IsomorphismGroup::size(std::uint64_t budget) const {
  const BigInt total = order();
  if (total > budget)
    throw BudgetError("group order " + total.str() + " exceeds the enumeration budget " + std::to_string(budget));
  return static_cast<std::uint64_t>(total);
}

ModeIsomorphism IsomorphismGroup::at(std::uint64_t index) const {
  if (!fits_) throw BudgetError("group too large for indexed access");
  std::uint64_t beta_total = 1;
  for (auto c : beta_counts_) beta_total *= c;
  std::uint64_t pi_index = index / beta_total;
  std::uint64_t beta_index = index % beta_total;

  const std::size_t k = widths_.size();
  std::vector<std::size_t> images(k);
  // First cardinality class varies slowest.
  std::uint64_t radix = 1;
  for (auto c : class_perms_) radix *= c;
  if (pi_index >= radix) throw ValidationError("group index out of range");
  for (std::size_t c = 0; c < classes_.size(); ++c) {
    radix /= class_perms_[c];
    const auto local = unrank(pi_index / radix, classes_[c].size());
    pi_index %= radix;
    for (std::size_t t = 0; t < local.size(); ++t) images[classes_[c][t]] = classes_[c][local[t]];
  }

  std::vector<BooleanPermutation> beta(k);
  for (std::size_t i = k; i-- > 0;) {
    const std::uint64_t rank = beta_index % beta_counts_[i];
    beta_index /= beta_counts_[i];
    const auto table = unrank(rank, state_count(widths_[i]));
    beta[i] = BooleanPermutation(widths_[i], std::vector<std::uint32_t>(table.begin(), table.end()));
  }
  return ModeIsomorphism(mode_, std::move(beta), Permutation(std::move(images)));
}

ModeIsomorphism IsomorphismGroup::random_element(std::mt19937_64& rng) const {
  const std::size_t k = widths_.size();
  std::vector<std::size_t> images(k);
  for (const auto& c : classes_) {
    auto shuffled = c;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    for (std::size_t t = 0; t < c.size(); ++t) images[c[t]] = shuffled[t];
  }
  std::vector<BooleanPermutation> beta;
  for (auto m : widths_) {
    std::vector<std::uint32_t> t(state_count(m));
    std::iota(t.begin(), t.end(), 0u);
    std::shuffle(t.begin(), t.end(), rng);
    beta.emplace_back(m, std::move(t));
  }
  return ModeIsomorphism(mode_, std::move(beta), Permutation(std::move(images)));
}

IsomorphismGroup::Range IsomorphismGroup::elements(std::uint64_t budget) const& {
  return {iterator(this, 0), iterator(this, size(budget))};
}

std::vector<ModeIsomorphism> enumerate_group(const Mode& mode, std::uint64_t budget) {
  IsomorphismGroup group(mode);
  std::vector<ModeIsomorphism> out;
  out.reserve(group.size(budget));
  for (auto phi : group.elements(budget)) out.push_back(std::move(phi));
  return out;
}

// ---------------------------------------------------------------------------
// Graphs

UGraph::UGraph(std::size_t vertex_count) : adj_(vertex_count) {}

void UGraph::add_edge(std::uint32_t u, std::uint32_t v) {
  if (u >= adj_.size() || v >= adj_.size()) throw ValidationError("edge endpoint outside the vertex set");
  if (u == v) throw ValidationError("self-loops are not allowed");
  auto insert = [](std::vector<std::uint32_t>& list, std::uint32_t x) {
    auto it = std::lower_bound(list.begin(), list.end(), x);
    if (it != list.end() && *it == x) return false;
    list.insert(it, x);
    return true;
  };
  if (insert(adj_[u], v)) {
    insert(adj_[v], u);
    ++edges_;
  }
}

bool UGraph::has_edge(std::uint32_t u, std::uint32_t v) const {
  const auto& list = adj_.at(u);
  return std::binary_search(list.begin(), list.end(), v);
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> UGraph::edges() const {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  for (std::uint32_t u = 0; u < adj_.size(); ++u)
    for (auto v : adj_[u])
      if (u < v) out.emplace_back(u, v);
  return out;
}

UGraph complete_modal_graph(const Mode& mode) {
  const std::size_t n = mode.agent_count();
  if (n > 16) throw BudgetError("complete modal graph is limited to 16 agents");
  UGraph g(state_count(n));
  for (std::uint32_t s = 0; s < state_count(n); ++s)
    for (auto w : mode.modalities())
      for (std::uint32_t d = w; d != 0; d = (d - 1) & w)
        if (s < (s ^ d)) g.add_edge(s, s ^ d);
  return g;
}

UGraph hypercube(std::size_t n) { return complete_modal_graph(Mode::sequential(n)); }

UGraph complete_graph(std::size_t k) {
  UGraph g(k);
  for (std::uint32_t u = 0; u < k; ++u)
    for (std::uint32_t v = u + 1; v < k; ++v) g.add_edge(u, v);
  return g;
}

UGraph cartesian_product(const UGraph& g1, const UGraph& g2) {
  const auto n1 = static_cast<std::uint32_t>(g1.vertex_count());
  const auto n2 = static_cast<std::uint32_t>(g2.vertex_count());
  if (static_cast<std::uint64_t>(n1) * n2 > (std::uint64_t{1} << 24)) throw BudgetError("product graph too large");
  UGraph g(std::size_t{n1} * n2);
  for (const auto& [u, v] : g1.edges())
    for (std::uint32_t x = 0; x < n2; ++x) g.add_edge(u + n1 * x, v + n1 * x);
  for (const auto& [u, v] : g2.edges())
    for (std::uint32_t x = 0; x < n1; ++x) g.add_edge(x + n1 * u, x + n1 * v);
  return g;
}

std::vector<std::uint32_t> modal_reindexing(const Mode& partition) {
  require_partition(partition, "modal reindexing");
  const std::size_t n = partition.agent_count();
  if (n > kMaxTableAgents) throw BudgetError("state-space guard exceeded");
  std::vector<std::uint32_t> map(state_count(n));
  for (std::uint32_t s = 0; s < map.size(); ++s) {
    std::uint32_t out = 0;
    int offset = 0;
    for (auto w : partition.modalities()) {
      out |= extract_bits(s, w) << offset;
      offset += std::popcount(w);
    }
    map[s] = out;
  }
  return map;
}

bool is_graph_isomorphism(const UGraph& a, const UGraph& b, std::span<const std::uint32_t> map) {
  if (a.vertex_count() != b.vertex_count() || map.size() != a.vertex_count() || a.edge_count() != b.edge_count())
    return false;
  std::vector<bool> seen(map.size(), false);
  for (auto v : map) {
    if (v >= map.size() || seen[v]) return false;
    seen[v] = true;
  }
  for (const auto& [u, v] : a.edges())
    if (!b.has_edge(map[u], map[v])) return false;
  return true;
}

bool is_hypercube_automorphism(const BooleanPermutation& beta) {
  const std::size_t n = beta.width();
  const auto inv = beta.inverse();
  for (std::uint32_t v = 0; v < state_count(n); ++v) {
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint32_t u = v ^ (1u << i);
      if (std::popcount(beta(v) ^ beta(u)) != 1) return false;
      if (std::popcount(inv(v) ^ inv(u)) != 1) return false;
    }
  }
  return true;
}

}  // namespace bneq
