#include "bneq/igraph.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "bneq/error.hpp"

namespace bneq {

std::string sign_symbol(Sign s) {
  switch (s) {
    case Sign::Positive: return "+";
    case Sign::Negative: return "-";
    case Sign::Zero: return "±";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// SignedInteractionGraph

SignedInteractionGraph::SignedInteractionGraph(AgentSet agents)
    : agents_(std::move(agents)), matrix_(agents_.size() * agents_.size(), kNone) {}

void SignedInteractionGraph::set_arc(std::size_t from, std::size_t to, Sign sign) {
  if (from >= size() || to >= size()) throw ValidationError("arc endpoint outside the agent set");
  matrix_[from * size() + to] = static_cast<std::int8_t>(sign);
}

std::optional<Sign> SignedInteractionGraph::arc(std::size_t from, std::size_t to) const {
  if (from >= size() || to >= size()) throw ValidationError("arc endpoint outside the agent set");
  const auto v = matrix_[from * size() + to];
  if (v == kNone) return std::nullopt;
  return static_cast<Sign>(v);
}

std::vector<SignedArc> SignedInteractionGraph::arcs() const {
  std::vector<SignedArc> out;
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = 0; j < size(); ++j)
      if (auto s = arc(i, j)) out.push_back({i, j, *s});
  return out;
}

std::size_t SignedInteractionGraph::arc_count() const {
  return static_cast<std::size_t>(std::count_if(matrix_.begin(), matrix_.end(), [](auto v) { return v != kNone; }));
}

// ---------------------------------------------------------------------------
// Digraph

Digraph::Digraph(std::size_t n) : n_(n), labels_(n * n, 0) {}

void Digraph::add_arc(std::size_t from, std::size_t to, int label) {
  if (from >= n_ || to >= n_) throw ValidationError("arc endpoint outside the vertex set");
  if (label == 0) throw ValidationError("arc label 0 is reserved for absent arcs");
  labels_[from * n_ + to] = label;
}

std::size_t Digraph::arc_count() const {
  return static_cast<std::size_t>(std::count_if(labels_.begin(), labels_.end(), [](int v) { return v != 0; }));
}

std::vector<std::pair<std::size_t, std::size_t>> Digraph::arcs() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      if (has_arc(i, j)) out.emplace_back(i, j);
  return out;
}

// ---------------------------------------------------------------------------
// Construction

SignedInteractionGraph interaction_graph(const Network& net, std::size_t max_agents) {
  const std::size_t n = net.size();
  if (n > max_agents || n > kMaxTableAgents)
    throw BudgetError("state-space guard exceeded: " + std::to_string(n) + " agents");
  const auto table = net.table();
  SignedInteractionGraph g(net.agents());
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint32_t bit = 1u << i;
    std::uint32_t up = 0;
    std::uint32_t down = 0;
    for (std::uint32_t s = 0; s < state_count(n); ++s) {
      if (s & bit) continue;
      const std::uint32_t lo = table[s];
      const std::uint32_t hi = table[s | bit];
      up |= ~lo & hi;
      down |= lo & ~hi;
    }
    for (std::size_t j = 0; j < n; ++j) {
      const bool u = (up >> j) & 1u;
      const bool d = (down >> j) & 1u;
      if (u && d) g.set_arc(i, j, Sign::Zero);
      else if (u) g.set_arc(i, j, Sign::Positive);
      else if (d) g.set_arc(i, j, Sign::Negative);
    }
  }
  return g;
}

SignedInteractionGraph interaction_graph_from_dnf(const Network& net) {
  SignedInteractionGraph g(net.agents());
  for (std::size_t j = 0; j < net.size(); ++j) {
    const auto lits = literals(to_dnf(net.function(j)));
    for (std::size_t i = 0; i < net.size(); ++i) {
      const bool pos = std::find(lits.begin(), lits.end(), Literal{i, true}) != lits.end();
      const bool neg = std::find(lits.begin(), lits.end(), Literal{i, false}) != lits.end();
      if (pos && neg) g.set_arc(i, j, Sign::Zero);
      else if (pos) g.set_arc(i, j, Sign::Positive);
      else if (neg) g.set_arc(i, j, Sign::Negative);
    }
  }
  return g;
}

Sign sign_of_path(const SignedInteractionGraph& g, std::span<const std::size_t> path) {
  if (path.size() < 2) throw ValidationError("a path needs at least two vertices");
  Sign s = Sign::Positive;
  for (std::size_t k = 0; k + 1 < path.size(); ++k) {
    const auto a = g.arc(path[k], path[k + 1]);
    if (!a)
      throw ValidationError("no arc " + g.agents().name(path[k]) + " -> " + g.agents().name(path[k + 1]));
    s = s * *a;
  }
  return s;
}

Sign sign_of_cycle(const SignedInteractionGraph& g, std::span<const std::size_t> cycle) {
  if (cycle.empty()) throw ValidationError("empty cycle");
  std::vector<std::size_t> closed(cycle.begin(), cycle.end());
  closed.push_back(cycle.front());
  return sign_of_path(g, closed);
}

std::vector<std::vector<std::size_t>> simple_cycles(const SignedInteractionGraph& g) {
  const std::size_t n = g.size();
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> path;
  std::vector<bool> on_path(n, false);

  // Cycles through `start` whose other vertices are all larger than `start`.
  auto extend = [&](auto&& self, std::size_t start, std::size_t v) -> void {
    for (std::size_t w = start; w < n; ++w) {
      if (!g.has_arc(v, w)) continue;
      if (w == start) {
        out.push_back(path);
      } else if (!on_path[w]) {
        on_path[w] = true;
        path.push_back(w);
        self(self, start, w);
        path.pop_back();
        on_path[w] = false;
      }
    }
  };
  for (std::size_t s = 0; s < n; ++s) {
    path.assign(1, s);
    on_path[s] = true;
    extend(extend, s, s);
    on_path[s] = false;
  }
  return out;
}

Digraph img(const SignedInteractionGraph& g, const Mode& partition, bool keep_loops) {
  require_partition(partition, "interaction modal graph");
  if (partition.agent_count() != g.size()) throw ModeMismatchError("mode and interaction graph differ in agent count");
  Digraph out(partition.size());
  for (const auto& a : g.arcs()) {
    const std::size_t bi = partition.block_of(a.from);
    const std::size_t bj = partition.block_of(a.to);
    if (bi != bj || keep_loops) out.add_arc(bi, bj);
  }
  return out;
}

SignedInteractionGraph mu_transform(const SignedInteractionGraph& g, const SignedPermutation& sigma) {
  if (sigma.size() != g.size() || sigma.negate.size() != g.size())
    throw ValidationError("signed permutation width differs from the graph size");
  SignedInteractionGraph out(g.agents());
  for (const auto& a : g.arcs()) {
    Sign s = a.sign;
    if (sigma.negate[a.from] != sigma.negate[a.to]) s = s * Sign::Negative;
    out.set_arc(sigma.perm(a.from), sigma.perm(a.to), s);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Isomorphism

namespace {

// Colour refinement run jointly on both graphs so colours are comparable.
std::pair<std::vector<int>, std::vector<int>> refine_colours(const Digraph& a, const Digraph& b) {
  const std::size_t n = a.size();
  using Signature = std::vector<long>;
  auto initial = [n](const Digraph& d, std::size_t v) {
    Signature sig{d.label(v, v)};
    std::vector<long> outs, ins;
    for (std::size_t w = 0; w < n; ++w) {
      if (w == v) continue;
      if (d.has_arc(v, w)) outs.push_back(d.label(v, w));
      if (d.has_arc(w, v)) ins.push_back(d.label(w, v));
    }
    std::sort(outs.begin(), outs.end());
    std::sort(ins.begin(), ins.end());
    sig.push_back(static_cast<long>(ins.size()));
    sig.push_back(static_cast<long>(outs.size()));
    sig.insert(sig.end(), outs.begin(), outs.end());
    sig.push_back(-1000);
    sig.insert(sig.end(), ins.begin(), ins.end());
    return sig;
  };

  std::vector<int> ca(n), cb(n);
  auto assign = [&](auto&& sig_of) {
    std::map<Signature, int> ids;
    std::vector<Signature> sa(n), sb(n);
    for (std::size_t v = 0; v < n; ++v) {
      sa[v] = sig_of(a, ca, v);
      sb[v] = sig_of(b, cb, v);
      ids.emplace(sa[v], 0);
      ids.emplace(sb[v], 0);
    }
    int next = 0;
    for (auto& [k, id] : ids) id = next++;
    for (std::size_t v = 0; v < n; ++v) {
      ca[v] = ids[sa[v]];
      cb[v] = ids[sb[v]];
    }
    return next;
  };

  int classes = assign([&](const Digraph& d, const std::vector<int>&, std::size_t v) { return initial(d, v); });
  for (;;) {
    const int before = classes;
    classes = assign([n](const Digraph& d, const std::vector<int>& c, std::size_t v) {
      Signature sig{c[v]};
      std::vector<long> outs, ins;
      for (std::size_t w = 0; w < n; ++w) {
        if (w == v) continue;
        if (d.has_arc(v, w)) outs.push_back(d.label(v, w) * 4096L + c[w]);
        if (d.has_arc(w, v)) ins.push_back(d.label(w, v) * 4096L + c[w]);
      }
      std::sort(outs.begin(), outs.end());
      std::sort(ins.begin(), ins.end());
      sig.insert(sig.end(), outs.begin(), outs.end());
      sig.push_back(-1L << 40);
      sig.insert(sig.end(), ins.begin(), ins.end());
      return sig;
    });
    if (classes == before) break;
  }
  return {ca, cb};
}

}  // namespace

std::optional<std::vector<std::size_t>> digraph_isomorphic(const Digraph& a, const Digraph& b) {
  if (a.size() > 16 || b.size() > 16) throw BudgetError("digraph isomorphism is limited to 16 vertices");
  const std::size_t n = a.size();
  if (b.size() != n || a.arc_count() != b.arc_count()) return std::nullopt;
  const auto [ca, cb] = refine_colours(a, b);
  {
    auto ha = ca, hb = cb;
    std::sort(ha.begin(), ha.end());
    std::sort(hb.begin(), hb.end());
    if (ha != hb) return std::nullopt;
  }

  // Visit the vertices of `a` from the rarest colour class first.
  std::vector<std::size_t> order(n);
  for (std::size_t v = 0; v < n; ++v) order[v] = v;
  auto class_size = [&](std::size_t v) { return std::count(ca.begin(), ca.end(), ca[v]); };
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return class_size(x) < class_size(y); });

  std::vector<std::size_t> map(n, n);
  std::vector<bool> used(n, false);
  auto search = [&](auto&& self, std::size_t depth) -> bool {
    if (depth == n) return true;
    const std::size_t v = order[depth];
    for (std::size_t w = 0; w < n; ++w) {
      if (used[w] || cb[w] != ca[v] || a.label(v, v) != b.label(w, w)) continue;
      bool ok = true;
      for (std::size_t k = 0; k < depth && ok; ++k) {
        const std::size_t u = order[k];
        ok = a.label(v, u) == b.label(w, map[u]) && a.label(u, v) == b.label(map[u], w);
      }
      if (!ok) continue;
      map[v] = w;
      used[w] = true;
      if (self(self, depth + 1)) return true;
      used[w] = false;
    }
    return false;
  };
  if (!search(search, 0)) return std::nullopt;
  return map;
}

Digraph to_digraph(const SignedInteractionGraph& g, bool keep_signs) {
  Digraph d(g.size());
  for (const auto& a : g.arcs()) d.add_arc(a.from, a.to, keep_signs ? static_cast<int>(a.sign) + 2 : 1);
  return d;
}

std::optional<std::vector<std::size_t>> digraph_isomorphic(const SignedInteractionGraph& a,
                                                           const SignedInteractionGraph& b, bool respect_signs) {
  return digraph_isomorphic(to_digraph(a, respect_signs), to_digraph(b, respect_signs));
}

// ---------------------------------------------------------------------------
// Export

std::string to_dot(const SignedInteractionGraph& g) {
  std::ostringstream os;
  os << "digraph interactions {\n";
  for (const auto& name : g.agents().names()) os << "  \"" << name << "\";\n";
  for (const auto& a : g.arcs())
    os << "  \"" << g.agents().name(a.from) << "\" -> \"" << g.agents().name(a.to) << "\" [label=\""
       << sign_symbol(a.sign) << "\"];\n";
  os << "}\n";
  return os.str();
}

std::string img_to_dot(const Digraph& graph, const Mode& mode, const AgentSet& agents) {
  if (graph.size() != mode.size()) throw ModeMismatchError("IMG size differs from the mode size");
  auto name = [&](std::size_t i) { return "{" + agents.join(mode[i]) + "}"; };
  std::ostringstream os;
  os << "digraph img {\n";
  for (std::size_t i = 0; i < mode.size(); ++i) os << "  \"" << name(i) << "\";\n";
  for (const auto& [i, j] : graph.arcs()) os << "  \"" << name(i) << "\" -> \"" << name(j) << "\";\n";
  os << "}\n";
  return os.str();
}

}  // namespace bneq
