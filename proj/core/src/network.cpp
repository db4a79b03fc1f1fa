#include "bneq/network.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "bneq/error.hpp"

namespace bneq {

// ---------------------------------------------------------------------------
// state.hpp

std::vector<std::size_t> mask_positions(AgentMask mask) {
  std::vector<std::size_t> out;
  for (AgentMask m = mask; m != 0; m &= m - 1) out.push_back(static_cast<std::size_t>(std::countr_zero(m)));
  return out;
}

std::string to_bitstring(std::uint32_t bits, std::size_t width) {
  std::string out(width, '0');
  for (std::size_t i = 0; i < width; ++i)
    if ((bits >> i) & 1u) out[i] = '1';
  return out;
}

std::uint32_t parse_bitstring(std::string_view text) {
  if (text.size() > kMaxAgents) throw ParseError("bitstring too long", kMaxAgents);
  std::uint32_t bits = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '1') {
      bits |= 1u << i;
    } else if (text[i] != '0') {
      throw ParseError("expected '0' or '1' in bitstring", i);
    }
  }
  return bits;
}

AgentSet::AgentSet(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.size() > kMaxAgents) throw ValidationError("too many agents (max " + std::to_string(kMaxAgents) + ")");
  std::set<std::string_view> seen;
  for (const auto& n : names_) {
    if (n.empty()) throw ValidationError("empty agent name");
    if (!seen.insert(n).second) throw ValidationError("duplicate agent '" + n + "'");
  }
}

std::optional<std::size_t> AgentSet::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

std::size_t AgentSet::require_index(std::string_view name) const {
  if (auto i = index_of(name)) return *i;
  throw ValidationError("unknown agent '" + std::string(name) + "'");
}

std::string AgentSet::join(AgentMask mask, std::string_view sep) const {
  std::string out;
  for (auto i : mask_positions(mask)) {
    if (!out.empty()) out += sep;
    out += name(i);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Mode

namespace {

bool modality_less(AgentMask a, AgentMask b) {
  // Lexicographic on ascending position lists; equal prefix -> shorter first.
  while (a != 0 && b != 0) {
    const int pa = std::countr_zero(a);
    const int pb = std::countr_zero(b);
    if (pa != pb) return pa < pb;
    a &= a - 1;
    b &= b - 1;
  }
  return a == 0 && b != 0;
}

}  // namespace

Mode::Mode(std::size_t agent_count, std::vector<AgentMask> modalities)
    : agent_count_(agent_count), modalities_(std::move(modalities)) {
  if (agent_count_ > kMaxAgents) throw ValidationError("too many agents for a mode");
  const AgentMask all = full_mask(agent_count_);
  for (auto w : modalities_) {
    if (w == 0) throw ValidationError("empty modality");
    if ((w & ~all) != 0) throw ValidationError("modality references an agent outside the agent set");
  }
  std::sort(modalities_.begin(), modalities_.end(), modality_less);
  if (std::adjacent_find(modalities_.begin(), modalities_.end()) != modalities_.end())
    throw ValidationError("duplicate modality");
  AgentMask seen = 0;
  partition_ = true;
  for (auto w : modalities_) {
    if (seen & w) partition_ = false;
    seen |= w;
  }
  if (seen != all) partition_ = false;
}

Mode Mode::sequential(std::size_t n) {
  std::vector<AgentMask> ws;
  for (std::size_t i = 0; i < n; ++i) ws.push_back(AgentMask{1} << i);
  return Mode(n, std::move(ws));
}

Mode Mode::parallel(std::size_t n) {
  if (n == 0) return Mode(0, {});
  return Mode(n, {full_mask(n)});
}

Mode Mode::generalized(std::size_t n) {
  if (n > 16) throw BudgetError("generalized mode limited to 16 agents");
  std::vector<AgentMask> ws;
  for (AgentMask m = 1; m <= full_mask(n); ++m) ws.push_back(m);
  return Mode(n, std::move(ws));
}

std::optional<std::size_t> Mode::index_of(AgentMask modality) const {
  for (std::size_t i = 0; i < modalities_.size(); ++i)
    if (modalities_[i] == modality) return i;
  return std::nullopt;
}

std::size_t Mode::block_of(std::size_t agent) const {
  if (!partition_) throw NonPartitionError("block_of requires a partitioning mode");
  for (std::size_t i = 0; i < modalities_.size(); ++i)
    if ((modalities_[i] >> agent) & 1u) return i;
  throw ValidationError("agent outside the mode");
}

void require_partition(const Mode& mode, std::string_view context) {
  if (!mode.is_partition())
    throw NonPartitionError(std::string(context) + ": the mode does not partition the agents");
}

std::size_t Spectrum::weight() const noexcept {
  std::size_t w = 0;
  for (const auto& e : entries) w += e.count * e.cardinality;
  return w;
}

Spectrum spectrum(const Mode& mode) {
  std::map<std::size_t, std::size_t> by_card;
  for (auto w : mode.modalities()) ++by_card[static_cast<std::size_t>(std::popcount(w))];
  Spectrum s;
  for (auto [m, k] : by_card) s.entries.push_back({k, m});
  return s;
}

std::string to_string(const Spectrum& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.entries.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(s.entries[i].count) + "•" + std::to_string(s.entries[i].cardinality);
  }
  return out + "}";
}

Spectrum parse_spectrum(std::string_view text) {
  std::string cleaned;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '{' || c == '}' || c == ',') {
      cleaned += ' ';
    } else if (text.substr(i, 3) == "•") {
      cleaned += '*';
      i += 2;
    } else if (c == 'x' || c == '*') {
      cleaned += '*';
    } else {
      cleaned += c;
    }
  }
  std::istringstream in(cleaned);
  std::string tok;
  std::map<std::size_t, std::size_t> by_card;
  while (in >> tok) {
    const auto star = tok.find('*');
    if (star == std::string::npos || star == 0 || star + 1 == tok.size())
      throw ParseError("spectrum entry must look like k*m", 0);
    try {
      const auto k = std::stoul(tok.substr(0, star));
      const auto m = std::stoul(tok.substr(star + 1));
      if (k == 0 || m == 0) throw ParseError("spectrum entries must be positive", 0);
      by_card[m] += k;
    } catch (const std::logic_error&) {
      throw ParseError("malformed spectrum entry '" + tok + "'", 0);
    }
  }
  if (by_card.empty()) throw ParseError("empty spectrum", 0);
  Spectrum s;
  for (auto [m, k] : by_card) s.entries.push_back({k, m});
  return s;
}

bool is_regular(const Mode& mode) {
  if (!mode.is_partition() || mode.empty()) return false;
  return spectrum(mode).entries.size() == 1;
}

std::string to_string(const Mode& mode, const AgentSet& agents) {
  std::string out;
  for (auto w : mode.modalities()) {
    if (!out.empty()) out += ' ';
    out += '{' + agents.join(w) + '}';
  }
  return out;
}

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

// Splits "{a,b} {c}" into name lists; reports byte offsets on error.
std::vector<std::vector<std::string>> split_blocks(std::string_view text) {
  std::vector<std::vector<std::string>> blocks;
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    if (text[i] != '{') throw ParseError("expected '{' to open a modality", i);
    const auto close = text.find('}', i);
    if (close == std::string_view::npos) throw ParseError("unterminated modality", i);
    std::vector<std::string> names;
    const std::string_view body = text.substr(i + 1, close - i - 1);
    std::size_t start = 0;
    while (true) {
      const auto comma = body.find(',', start);
      std::string name = trim(body.substr(start, comma == std::string_view::npos ? body.size() - start : comma - start));
      if (name.empty()) throw ParseError("empty agent name in modality", i);
      names.push_back(std::move(name));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    blocks.push_back(std::move(names));
    i = close + 1;
  }
  return blocks;
}

}  // namespace

Mode parse_mode(std::string_view text, const AgentSet& agents) {
  const std::string t = trim(text);
  if (t == "sequential") return Mode::sequential(agents.size());
  if (t == "parallel") return Mode::parallel(agents.size());
  if (t == "generalized") return Mode::generalized(agents.size());
  const auto blocks = split_blocks(t);
  if (blocks.empty()) throw ParseError("empty mode", 0);
  std::vector<AgentMask> ws;
  for (const auto& b : blocks) {
    AgentMask w = 0;
    for (const auto& name : b) {
      const auto idx = agents.index_of(name);
      if (!idx) throw ValidationError("modality references unknown agent '" + name + "'");
      if ((w >> *idx) & 1u) throw ValidationError("agent '" + name + "' repeated inside a modality");
      w |= AgentMask{1} << *idx;
    }
    ws.push_back(w);
  }
  return Mode(agents.size(), std::move(ws));
}

std::pair<AgentSet, Mode> parse_standalone_mode(std::string_view text) {
  const auto blocks = split_blocks(trim(text));
  if (blocks.empty()) throw ParseError("empty mode", 0);
  std::vector<std::string> names;
  for (const auto& b : blocks)
    for (const auto& name : b)
      if (std::find(names.begin(), names.end(), name) == names.end()) names.push_back(name);
  AgentSet agents(std::move(names));
  return {agents, parse_mode(text, agents)};
}

// ---------------------------------------------------------------------------
// Network

Network::Network(AgentSet agents, std::vector<Formula> functions, Mode mode)
    : agents_(std::move(agents)), functions_(std::move(functions)), mode_(std::move(mode)) {
  if (functions_.size() != agents_.size())
    throw ValidationError("expected one function per agent (" + std::to_string(agents_.size()) + "), got " +
                          std::to_string(functions_.size()));
  const AgentMask all = agents_.all();
  for (std::size_t i = 0; i < functions_.size(); ++i)
    if ((support(functions_[i]) & ~all) != 0)
      throw ValidationError("function of '" + agents_.name(i) + "' references an undeclared agent");
  if (mode_.agent_count() != agents_.size()) throw ValidationError("mode is defined over a different agent count");
  build_table();
}

void Network::build_table() {
  table_.clear();
  if (agents_.size() > kMaxTableAgents) return;
  const std::size_t count = state_count(agents_.size());
  table_.resize(count);
  for (std::uint32_t s = 0; s < count; ++s) {
    std::uint32_t out = 0;
    for (std::size_t i = 0; i < functions_.size(); ++i)
      if (eval(functions_[i], State(s))) out |= 1u << i;
    table_[s] = out;
  }
}

Network Network::from_table(AgentSet agents, std::vector<std::uint32_t> table, Mode mode) {
  const std::size_t n = agents.size();
  if (n > kMaxTableAgents) throw BudgetError("too many agents for a truth table");
  if (table.size() != state_count(n)) throw ValidationError("transition table must have 2^n entries");
  if (mode.agent_count() != n) throw ValidationError("mode is defined over a different agent count");
  const AgentMask all = full_mask(n);
  std::vector<std::size_t> vars(n);
  for (std::size_t i = 0; i < n; ++i) vars[i] = i;
  Network net;
  net.functions_.reserve(n);
  std::vector<bool> column(table.size());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t s = 0; s < table.size(); ++s) {
      if ((table[s] & ~all) != 0) throw ValidationError("table entry outside B^n");
      column[s] = (table[s] >> i) & 1u;
    }
    net.functions_.push_back(minimal_dnf(vars, column));
  }
  net.agents_ = std::move(agents);
  net.mode_ = std::move(mode);
  net.table_ = std::move(table);
  return net;
}

State Network::apply(State s) const {
  if (!table_.empty()) return State(table_[s.bits()]);
  std::uint32_t out = 0;
  for (std::size_t i = 0; i < functions_.size(); ++i)
    if (eval(functions_[i], s)) out |= 1u << i;
  return State(out);
}

State Network::extend_tilde(AgentMask subset, State s) const {
  const std::uint32_t fs = apply(s).bits();
  return State((fs & subset) | (s.bits() & ~subset));
}

std::span<const std::uint32_t> Network::table() const {
  if (table_.empty()) throw BudgetError("state space too large for a transition table");
  return table_;
}

Network Network::with_mode(Mode mode) const {
  if (mode.agent_count() != agents_.size()) throw ValidationError("mode is defined over a different agent count");
  Network copy = *this;
  copy.mode_ = std::move(mode);
  return copy;
}

State extend_tilde(const Network& net, AgentMask subset, State s) {
  if ((subset & ~net.agents().all()) != 0) throw ValidationError("extend_tilde: subset is not contained in the agent set");
  return net.extend_tilde(subset, s);
}

// ---------------------------------------------------------------------------
// File format

namespace {

[[noreturn]] void line_error(std::size_t line_no, std::size_t offset, const std::string& what) {
  throw ParseError("line " + std::to_string(line_no) + ": " + what, offset);
}

}  // namespace

Network parse_network(std::string_view text) {
  std::optional<AgentSet> agents;
  std::vector<std::optional<Formula>> functions;
  std::optional<Mode> mode;

  std::size_t offset = 0;
  std::size_t line_no = 0;
  while (offset <= text.size()) {
    const auto nl = text.find('\n', offset);
    const std::size_t end = nl == std::string_view::npos ? text.size() : nl;
    std::string_view raw = text.substr(offset, end - offset);
    const std::size_t line_start = offset;
    offset = end + 1;
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    const std::string line = trim(raw);
    if (line.empty()) {
      if (nl == std::string_view::npos) break;
      continue;
    }

    try {
      if (line.rfind("agents:", 0) == 0) {
        if (agents) line_error(line_no, line_start, "agents declared twice");
        std::istringstream in(line.substr(7));
        std::vector<std::string> names;
        for (std::string n; in >> n;) names.push_back(n);
        if (names.empty()) line_error(line_no, line_start, "empty agent declaration");
        agents = AgentSet(std::move(names));
        functions.assign(agents->size(), std::nullopt);
      } else if (line.rfind("mode:", 0) == 0) {
        if (!agents) line_error(line_no, line_start, "mode given before the agent declaration");
        if (mode) line_error(line_no, line_start, "mode declared twice");
        const std::string body = trim(line.substr(5));
        if (body.empty()) line_error(line_no, line_start, "empty mode");
        mode = parse_mode(body, *agents);
      } else if (line.size() > 2 && line[0] == 'f' && std::isspace(static_cast<unsigned char>(line[1]))) {
        if (!agents) line_error(line_no, line_start, "function given before the agent declaration");
        const auto eq = line.find('=');
        if (eq == std::string::npos) line_error(line_no, line_start, "expected 'f <agent> = <formula>'");
        const std::string name = trim(std::string_view(line).substr(1, eq - 1));
        const auto idx = agents->index_of(name);
        if (!idx) line_error(line_no, line_start, "function for undeclared agent '" + name + "'");
        if (functions[*idx]) line_error(line_no, line_start, "second function for agent '" + name + "'");
        functions[*idx] = parse_formula(std::string_view(line).substr(eq + 1), agents->names());
      } else {
        line_error(line_no, line_start, "unrecognized line '" + line + "'");
      }
    } catch (const ParseError& e) {
      if (std::string_view(e.what()).rfind("line ", 0) == 0) throw;
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what(), line_start);
    } catch (const ValidationError& e) {
      throw ValidationError("line " + std::to_string(line_no) + ": " + e.what());
    }
    if (nl == std::string_view::npos) break;
  }

  if (!agents) throw ParseError("missing 'agents:' declaration", 0);
  if (!mode) throw ParseError("missing 'mode:' declaration", text.size());
  std::vector<Formula> fs;
  for (std::size_t i = 0; i < functions.size(); ++i) {
    if (!functions[i]) throw ValidationError("missing function for agent '" + agents->name(i) + "'");
    fs.push_back(*functions[i]);
  }
  return Network(std::move(*agents), std::move(fs), std::move(*mode));
}

std::string serialize_network(const Network& net) {
  std::string out = "agents:";
  for (const auto& n : net.agents().names()) out += ' ' + n;
  out += '\n';
  for (std::size_t i = 0; i < net.size(); ++i)
    out += "f " + net.agents().name(i) + " = " + to_string(net.function(i), net.agents().names()) + '\n';
  out += "mode: " + to_string(net.mode(), net.agents()) + '\n';
  return out;
}

Network load_network(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_network(buf.str());
}

}  // namespace bneq
