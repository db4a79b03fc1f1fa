#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "bneq/dynamics.hpp"
#include "bneq/equivalence.hpp"
#include "bneq/error.hpp"
#include "bneq/groups.hpp"
#include "bneq/igraph.hpp"
#include "bneq/network.hpp"
#include "json.hpp"

namespace bneq::cli {
namespace {

struct Options {
  std::string format = "text";
  std::uint64_t budget = kDefaultGroupBudget;
  std::size_t state_budget = kMaxTableAgents;
  unsigned threads = 1;
  std::uint64_t seed = 0;
  std::uint64_t sample = 0;
  bool keep_loops = false;
  bool infer = false;
  bool partition = false;
  std::string mode;
  std::string agents;
  std::string pi;
  std::vector<std::string> files;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Network load(const Options& o, const std::string& path) {
  Network net = load_network(path);
  if (!o.mode.empty()) net = net.with_mode(parse_mode(o.mode, net.agents()));
  return net;
}

void require_format(const Options& o, std::initializer_list<const char*> allowed) {
  for (const char* f : allowed)
    if (o.format == f) return;
  std::string list;
  for (const char* f : allowed) list += std::string(list.empty() ? "" : ", ") + f;
  throw CLI::ValidationError("--format", "expected one of " + list);
}

std::string state_list(const std::vector<State>& states, std::size_t n) {
  std::string s;
  for (const auto& st : states) s += (s.empty() ? "" : " ") + to_bitstring(st, n);
  return s;
}

int cmd_model(const Options& o, std::ostream& out) {
  require_format(o, {"text", "dot", "json"});
  const auto net = load(o, o.files.at(0));
  const auto m = build_model(net, o.state_budget, o.threads);
  const std::size_t n = net.size();
  if (o.format == "dot") {
    out << to_dot(m, attractors(m));
  } else if (o.format == "json") {
    out << to_json(m);
  } else {
    for (const auto& t : m.transitions())
      out << to_bitstring(t.from, n) << " --{" << net.agents().join(net.mode()[t.modality]) << "}--> "
          << to_bitstring(t.to, n) << "\n";
    out << m.transitions().size() << " transitions\n";
  }
  return kOk;
}

int cmd_attractors(const Options& o, std::ostream& out) {
  require_format(o, {"text", "json"});
  const auto net = load(o, o.files.at(0));
  const auto atts = attractors(build_model(net, o.state_budget, o.threads));
  const std::size_t n = net.size();
  if (o.format == "json") {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& a : atts) {
      nlohmann::ordered_json j;
      j["kind"] = a.kind == Attractor::Kind::Steady ? "steady" : "cyclic";
      auto states = nlohmann::json::array();
      for (const auto& s : a.states) states.push_back(to_bitstring(s, n));
      j["states"] = states;
      arr.push_back(j);
    }
    out << arr.dump(2) << "\n";
  } else {
    for (const auto& a : atts)
      out << (a.kind == Attractor::Kind::Steady ? "steady " : "cyclic ") << state_list(a.states, n) << "\n";
  }
  return kOk;
}

int cmd_igraph(const Options& o, std::ostream& out) {
  require_format(o, {"text", "dot", "json"});
  const auto net = load(o, o.files.at(0));
  const auto g = interaction_graph(net, o.state_budget);
  if (o.format == "dot") {
    out << to_dot(g);
  } else if (o.format == "json") {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& a : g.arcs()) {
      nlohmann::ordered_json j;
      j["from"] = net.agents().name(a.from);
      j["to"] = net.agents().name(a.to);
      j["sign"] = static_cast<int>(a.sign);
      arr.push_back(j);
    }
    out << arr.dump(2) << "\n";
  } else {
    for (const auto& a : g.arcs())
      out << net.agents().name(a.from) << " -> " << net.agents().name(a.to) << " " << sign_symbol(a.sign) << "\n";
  }
  return kOk;
}

int cmd_img(const Options& o, std::ostream& out) {
  require_format(o, {"text", "dot"});
  const auto net = load(o, o.files.at(0));
  const auto g = img(interaction_graph(net, o.state_budget), net.mode(), o.keep_loops);
  if (o.format == "dot") {
    out << img_to_dot(g, net.mode(), net.agents());
  } else {
    for (const auto& [i, j] : g.arcs())
      out << "{" << net.agents().join(net.mode()[i]) << "} -> {" << net.agents().join(net.mode()[j]) << "}\n";
  }
  return kOk;
}

int cmd_equiv(const Options& o, std::ostream& out) {
  require_format(o, {"text", "json"});
  if (o.files.size() != 2) throw CLI::ValidationError("equiv", "expects two network files");
  const auto a = load(o, o.files[0]);
  const auto b = load(o, o.files[1]);
  const auto w = equivalent(a, b, {o.budget, o.threads});
  if (o.format == "json") out << witness_json(w, a);
  else if (w) out << "equivalent: " << to_string(w->phi) << "\n";
  else out << "not equivalent\n";
  return kOk;
}

int cmd_class(const Options& o, std::ostream& out) {
  require_format(o, {"text", "csv"});
  const auto net = load(o, o.files.at(0));
  std::vector<ClassMember> members;
  if (o.sample > 0) {
    const IsomorphismGroup group(net.mode());
    std::mt19937_64 rng(o.seed);
    for (std::uint64_t i = 0; i < o.sample; ++i) {
      auto phi = group.random_element(rng);
      auto transformed = transform_network(net, phi);
      members.push_back({std::move(phi), std::move(transformed)});
    }
  } else {
    members = enumerate_equivalence_class(net, {o.budget, o.threads});
  }
  const auto patterns = classify_interaction_patterns(members);
  if (o.format == "csv") {
    out << classification_csv(patterns);
  } else {
    out << "group order: " << IsomorphismGroup(net.mode()).order().str() << "\n";
    out << classification_text(patterns, classify_imgs(members, o.keep_loops), net.mode(), net.agents());
  }
  return kOk;
}

int cmd_order(const Options& o, std::ostream& out) {
  require_format(o, {"text"});
  const std::string& text = o.files.at(0);
  Spectrum s;
  if (!o.agents.empty()) {
    std::istringstream in(o.agents);
    std::vector<std::string> names;
    for (std::string n; in >> n;) names.push_back(n);
    const Mode m = parse_mode(text, AgentSet(names));
    require_partition(m, "group order");
    s = spectrum(m);
  } else {
    // Spectra are tried first: "{2*2}" would otherwise read as one agent named "2*2".
    try {
      s = parse_spectrum(text);
    } catch (const ParseError&) {
      const auto [agents, m] = parse_standalone_mode(text);
      require_partition(m, "group order");
      s = spectrum(m);
    }
  }
  out << group_order(s).str() << "\n";
  return kOk;
}

int cmd_embed(const Options& o, std::ostream& out) {
  require_format(o, {"text", "json"});
  if (o.files.size() != 2) throw CLI::ValidationError("embed", "expects two modes");
  AgentSet agents;
  if (!o.agents.empty()) {
    std::istringstream in(o.agents);
    std::vector<std::string> names;
    for (std::string n; in >> n;) names.push_back(n);
    agents = AgentSet(std::move(names));
  } else {
    const auto first = o.files[0].find('{') != std::string::npos ? o.files[0] : o.files[1];
    if (first.find('{') == std::string::npos)
      throw CLI::ValidationError("embed", "keyword modes need --agents");
    agents = parse_standalone_mode(first).first;
  }
  const Mode from = parse_mode(o.files[0], agents);
  const Mode to = parse_mode(o.files[1], agents);
  std::optional<EmbeddingWitness> w;
  if (!o.pi.empty()) w = pi_embedded(from, to, parse_cycles(o.pi, from.size()));
  else w = find_embedding(from, to, o.budget);
  if (o.format == "json") {
    nlohmann::ordered_json j;
    j["embedded"] = w.has_value();
    if (w) {
      j["pi"] = to_cycle_string(w->pi);
      auto inc = nlohmann::json::array();
      for (std::size_t i = 0; i < w->inclusion.size(); ++i)
        inc.push_back({{"from", "{" + agents.join(from[i]) + "}"}, {"into", "{" + agents.join(to[w->inclusion[i]]) + "}"}});
      j["inclusion"] = inc;
    }
    out << j.dump(2) << "\n";
  } else if (w) {
    out << "embedded with pi=" << to_cycle_string(w->pi) << "\n";
    for (std::size_t i = 0; i < w->inclusion.size(); ++i)
      out << "  {" << agents.join(from[i]) << "} in {" << agents.join(to[w->inclusion[i]]) << "}\n";
  } else {
    out << "not embedded\n";
  }
  return kOk;
}

// Plain relation files: an `agents:` line followed by `s -> t` lines.
std::pair<AgentSet, UnlabeledRelation> parse_relation(const std::string& text) {
  std::istringstream in(text);
  std::optional<AgentSet> agents;
  UnlabeledRelation rel;
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (first == "agents:") {
      std::vector<std::string> names;
      for (std::string n; ls >> n;) names.push_back(n);
      agents = AgentSet(std::move(names));
      rel.agent_count = agents->size();
      continue;
    }
    std::string arrow, second;
    if (!agents) throw ParseError("line " + std::to_string(line_no) + ": transition before 'agents:'", 0);
    if (!(ls >> arrow >> second) || arrow != "->" || first.size() != agents->size() || second.size() != agents->size())
      throw ParseError("line " + std::to_string(line_no) + ": expected '<state> -> <state>'", 0);
    rel.edges.emplace_back(State(parse_bitstring(first)), State(parse_bitstring(second)));
  }
  if (!agents) throw ParseError("missing 'agents:' declaration", 0);
  return {*agents, rel};
}

int cmd_check_model(const Options& o, std::ostream& out) {
  require_format(o, {"text", "json"});
  const std::string text = read_file(o.files.at(0));
  const bool is_json = text.find_first_not_of(" \t\r\n") != std::string::npos &&
                       text[text.find_first_not_of(" \t\r\n")] == '{';
  AgentSet agents;
  UnlabeledRelation rel;
  std::optional<Amts> labelled;
  if (is_json) {
    labelled = amts_from_json(text);
    agents = labelled->agents();
    rel = unlabeled(*labelled);
  } else {
    std::tie(agents, rel) = parse_relation(text);
  }

  nlohmann::ordered_json j;
  if (labelled && !o.infer) {
    const auto check = check_model(*labelled);
    j["model"] = check.is_model;
    if (check.diagnosis) j["diagnosis"] = check.diagnosis->message;
    if (o.format == "json") {
      out << j.dump(2) << "\n";
    } else if (check.is_model) {
      out << "model of:\n" << serialize_network(network_from_model(*labelled));
    } else {
      out << "not a model: " << check.diagnosis->message << "\n";
    }
    return kOk;
  }

  const auto inf = infer_mode(agents, rel, o.partition);
  j["model"] = inf.mode.has_value();
  if (inf.mode) j["mode"] = to_string(*inf.mode, agents);
  if (!inf.reason.empty()) j["reason"] = inf.reason;
  if (o.format == "json") {
    out << j.dump(2) << "\n";
  } else if (inf.mode) {
    out << "model of:\n" << serialize_network(*inf.network);
  } else {
    out << "not a model: " << inf.reason << "\n";
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Boolean network dynamics and equivalence analysis", "bneq"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "Output format (text, dot, json, csv)")->capture_default_str();
    sub->add_option("--state-budget", o.state_budget, "Largest agent count for state-space analyses")
        ->capture_default_str()
        ->check(CLI::Range(std::size_t{1}, kMaxTableAgents));
    sub->add_option("--threads", o.threads, "Worker threads")->capture_default_str()->check(CLI::Range(1u, 256u));
  };
  auto enumerating = [&](CLI::App* sub) {
    sub->add_option("--budget", o.budget, "Maximum number of group elements to enumerate")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
  };
  auto with_mode = [&](CLI::App* sub) {
    sub->add_option("--mode", o.mode, "Override the mode of the input network(s)");
  };

  auto* model = app.add_subcommand("model", "Transition system of a network");
  model->add_option("network", o.files, "Network file")->required()->expected(1);
  common(model);
  with_mode(model);

  auto* atts = app.add_subcommand("attractors", "Steady states and cyclic attractors");
  atts->add_option("network", o.files, "Network file")->required()->expected(1);
  common(atts);
  with_mode(atts);

  auto* ig = app.add_subcommand("igraph", "Signed interaction graph");
  ig->add_option("network", o.files, "Network file")->required()->expected(1);
  common(ig);

  auto* im = app.add_subcommand("img", "Interaction graph quotiented by the mode");
  im->add_option("network", o.files, "Network file")->required()->expected(1);
  im->add_flag("--keep-loops", o.keep_loops, "Keep arcs inside a modality");
  common(im);
  with_mode(im);

  auto* eq = app.add_subcommand("equiv", "Search a witness that two networks are equivalent");
  eq->add_option("networks", o.files, "Two network files")->required()->expected(2);
  common(eq);
  enumerating(eq);
  with_mode(eq);

  auto* cl = app.add_subcommand("class", "Classify the equivalence class of a network");
  cl->add_option("network", o.files, "Network file")->required()->expected(1);
  cl->add_option("--sample", o.sample, "Classify this many random group elements instead of all");
  cl->add_option("--seed", o.seed, "Seed for --sample")->capture_default_str();
  cl->add_flag("--keep-loops", o.keep_loops, "Keep arcs inside a modality in the modal graphs");
  common(cl);
  enumerating(cl);
  with_mode(cl);

  auto* ord = app.add_subcommand("order", "Order of the group preserving a mode or spectrum");
  ord->add_option("mode", o.files, "Mode such as '{a4,a3} {a2,a1}' or spectrum such as '{2*2}'")
      ->required()
      ->expected(1);
  ord->add_option("--agents", o.agents, "Agent names, needed for keyword modes");
  ord->add_option("--format", o.format, "Output format (text)")->capture_default_str();

  auto* emb = app.add_subcommand("embed", "Check whether one mode embeds into another");
  emb->add_option("modes", o.files, "Embedded mode and target mode")->required()->expected(2);
  emb->add_option("--pi", o.pi, "Modality permutation in cycle notation; searched when omitted");
  emb->add_option("--agents", o.agents, "Agent names, needed for keyword modes");
  emb->add_option("--format", o.format, "Output format (text, json)")->capture_default_str();
  enumerating(emb);

  auto* chk = app.add_subcommand("check-model", "Decide whether a transition system is a network model");
  chk->add_option("file", o.files, "AMTS JSON or relation file")->required()->expected(1);
  chk->add_flag("--infer", o.infer, "Ignore labels and infer a mode");
  chk->add_flag("--partition", o.partition, "With --infer, require a partitioning mode");
  chk->add_option("--format", o.format, "Output format (text, json)")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*model) return cmd_model(o, out);
    if (*atts) return cmd_attractors(o, out);
    if (*ig) return cmd_igraph(o, out);
    if (*im) return cmd_img(o, out);
    if (*eq) return cmd_equiv(o, out);
    if (*cl) return cmd_class(o, out);
    if (*ord) return cmd_order(o, out);
    if (*emb) return cmd_embed(o, out);
    if (*chk) return cmd_check_model(o, out);
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const BudgetError& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kAnalysis;
  } catch (const NonPartitionError& e) {
    err << "error: " << e.what() << "\n";
    return kAnalysis;
  } catch (const ModeMismatchError& e) {
    err << "error: " << e.what() << "\n";
    return kAnalysis;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return kAnalysis;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace bneq::cli
