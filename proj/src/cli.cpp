#include "akb/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "akb/blp.hpp"
#include "akb/parser.hpp"
#include "akb/scenarios.hpp"
#include "akb/trace_io.hpp"

namespace akb {

namespace {

struct Loaded {
  std::string text;
  std::string file;
};

class CliError : public std::runtime_error {
 public:
  CliError(int code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
  int code() const { return code_; }

 private:
  int code_;
};

std::optional<std::string> read_file(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  if (!f) return std::nullopt;
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// A path, then a built-in name, then <dir>/<name>[.akb] for each directory
// of AKB_SCENARIO_PATH. "-" reads standard input.
Loaded load(const std::string& spec, std::istream& in) {
  namespace fs = std::filesystem;
  if (spec == "-") {
    std::ostringstream ss;
    ss << in.rdbuf();
    return {ss.str(), "<stdin>"};
  }
  std::error_code ec;
  if (fs::is_regular_file(spec, ec))
    if (auto text = read_file(spec)) return {*text, spec};
  if (auto text = builtin_text(spec)) return {std::string(*text), spec + ".akb"};
  if (const char* env = std::getenv("AKB_SCENARIO_PATH")) {
    std::stringstream dirs(env);
    for (std::string dir; std::getline(dirs, dir, ':');) {
      if (dir.empty()) continue;
      for (const auto& candidate : {fs::path(dir) / spec, fs::path(dir) / (spec + ".akb")}) {
        if (fs::is_regular_file(candidate, ec))
          if (auto text = read_file(candidate)) return {*text, candidate.string()};
      }
    }
  }
  throw CliError(kExitParse, "no scenario file or built-in named '" + spec + "'");
}

Net load_net(const std::string& spec, std::istream& in, std::ostream& err) {
  const Loaded src = load(spec, in);
  Net net;
  try {
    net = parse_scenario(src.text, src.file);
  } catch (const ParseError& e) {
    const bool structural = e.code() == ErrorCode::SyntaxError ||
                            e.code() == ErrorCode::UnknownLevelName ||
                            e.code() == ErrorCode::DuplicateLatticeDecl;
    throw CliError(structural ? kExitParse : kExitValidation, e.what());
  }
  const auto diags = validate(net);
  if (!diags.empty()) {
    for (const auto& d : diags) err << src.file << ": " << d.location << ": " << d.message << "\n";
    throw CliError(kExitValidation, std::to_string(diags.size()) + " validation error(s)");
  }
  return net;
}

std::vector<std::string> split_script(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string part; std::getline(ss, part, ',');) {
    const auto b = part.find_first_not_of(" \t");
    const auto e = part.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(part.substr(b, e - b + 1));
  }
  return out;
}

struct RunOpts {
  std::string scenario;
  std::uint64_t seed = 0;
  std::string script;
  std::size_t max_steps = 1000;
  std::string trace_path;
  std::string format = "text";
};

int cmd_run(const RunOpts& o, std::istream& in, std::ostream& out, std::ostream& err) {
  const Net net = load_net(o.scenario, in, err);
  Trace trace;
  if (!o.script.empty()) {
    FixedScript sched(split_script(o.script));
    try {
      trace = run(net, sched, o.max_steps);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::ScriptMismatch) throw;
      throw CliError(kExitScript, e.what());
    }
  } else {
    SeededRandom sched(o.seed);
    trace = run(net, sched, o.max_steps);
  }
  const TraceFormat fmt = o.format == "text" ? TraceFormat::Text : TraceFormat::JsonLines;
  if (o.trace_path.empty()) {
    write_trace(out, trace, fmt);
    return kExitOk;
  }
  std::ofstream f(o.trace_path, std::ios::binary);
  if (!f) throw CliError(kExitParse, "cannot write trace to '" + o.trace_path + "'");
  write_trace(f, trace, fmt);
  std::size_t granted = 0, denied = 0, blocked = 0;
  for (const auto& ev : trace.events) {
    if (!ev.granted)
      ++denied;
    else if (!ev.enabled)
      ++blocked;
    else
      ++granted;
  }
  out << trace.events.size() << " events: " << granted << " granted, " << denied
      << " denied, " << blocked << " not enabled\n";
  return kExitOk;
}

int cmd_explore(const std::string& scenario, std::size_t depth, std::istream& in,
                std::ostream& out, std::ostream& err) {
  const Net net = load_net(scenario, in, err);
  const ExploreGraph g = explore(net, depth);
  const auto terminals = g.terminals();
  out << "states: " << g.states.size() << "\n"
      << "transitions: " << g.edges.size() << "\n"
      << "terminal states: " << terminals.size() << "\n";
  out << "interactions:\n";
  for (const auto& s : summarize(g))
    out << "  " << s.redex << "  granted " << s.granted << "  denied " << s.denied << "\n";
  if (g.exhausted) {
    out << "depth bound " << depth << " reached with unexplored successors\n";
    return kExitDepth;
  }
  return kExitOk;
}

int cmd_lemmas(const HarnessConfig& cfg, const std::string& report_path, std::ostream& out) {
  const HarnessReport report = lemma_harness(cfg);
  const std::string text = report.to_text();
  out << text;
  if (!report_path.empty()) {
    std::ofstream f(report_path, std::ios::binary);
    if (!f) throw CliError(kExitParse, "cannot write report to '" + report_path + "'");
    f << text;
  }
  return report.ok() ? kExitOk : kExitCounterexample;
}

int cmd_check(const std::string& scenario, std::istream& in, std::ostream& out,
              std::ostream& err) {
  const Net net = load_net(scenario, in, err);
  out << "OK: " << net.items.size() << " items, " << net.lattice->size() << " levels\n";
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Interpreter for nets of located processes under Belnap security policies",
               "akb"};
  app.require_subcommand(1);

  RunOpts run_opts;
  auto* run_cmd = app.add_subcommand("run", "Execute one schedule and write its trace");
  run_cmd->add_option("--scenario", run_opts.scenario, "File, built-in name, or -")->required();
  auto* seed_opt = run_cmd->add_option("--seed", run_opts.seed, "Random scheduler seed");
  run_cmd->add_option("--script", run_opts.script, "Comma-separated subject:kind@target picks")
      ->excludes(seed_opt);
  run_cmd->add_option("--max-steps", run_opts.max_steps, "Stop after this many events");
  run_cmd->add_option("--trace", run_opts.trace_path, "Write the trace here instead of stdout");
  run_cmd->add_option("--format", run_opts.format, "text or json-lines")
      ->check(CLI::IsMember({"text", "json-lines", "jsonl"}));

  std::string explore_scenario;
  std::size_t depth = 50;
  auto* explore_cmd = app.add_subcommand("explore", "Breadth-first reachability summary");
  explore_cmd->add_option("--scenario", explore_scenario, "File, built-in name, or -")
      ->required();
  explore_cmd->add_option("--depth", depth, "Depth bound")->check(CLI::PositiveNumber);

  HarnessConfig harness;
  std::string report_path;
  auto* lemmas_cmd = app.add_subcommand("lemmas", "Check both BLP lemmas on random nets");
  lemmas_cmd->add_option("--instances", harness.instances, "Number of random nets");
  lemmas_cmd->add_option("--lattice", harness.lattice, "chain3 or diamond")
      ->check(CLI::IsMember({"chain3", "diamond"}));
  lemmas_cmd->add_option("--seed", harness.seed, "Generator seed");
  lemmas_cmd->add_option("--report", report_path, "Also write the report here");

  std::string check_scenario;
  auto* check_cmd = app.add_subcommand("check", "Parse and validate a scenario");
  check_cmd->add_option("--scenario", check_scenario, "File, built-in name, or -")->required();

  auto* list_cmd = app.add_subcommand("list", "List built-in scenarios");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*run_cmd) return cmd_run(run_opts, in, out, err);
    if (*explore_cmd) return cmd_explore(explore_scenario, depth, in, out, err);
    if (*lemmas_cmd) return cmd_lemmas(harness, report_path, out);
    if (*check_cmd) return cmd_check(check_scenario, in, out, err);
    if (*list_cmd) {
      for (const auto& b : builtin_list()) out << b.name << "\n";
      return kExitOk;
    }
  } catch (const CliError& e) {
    err << "akb: " << e.what() << "\n";
    return e.code();
  } catch (const Error& e) {
    err << "akb: " << to_string(e.code()) << ": " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitOk;
}

}  // namespace akb
