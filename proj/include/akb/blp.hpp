#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "akb/ast.hpp"
#include "akb/engine.hpp"

namespace akb {

// The eight Bell-LaPadula aspects combined with (+):
//   read: Ss >= Ot, Ss >= Ht
//   in:   Ss >= Ot, Ot >= Cs, Ot >= Hs, Ss >= Ht
//   out:  Ot >= Cs, Ot >= Hs
const Policy& blp_policy();

// Named policies usable wherever a policy is expected ("BLP").
std::optional<Policy> policy_preset(std::string_view name);
std::optional<std::string> policy_preset_name(const Policy& policy);

// ---------------------------------------------------------------------------
// Global-state oracle

enum class Access { Read, Write };
std::string_view to_string(Access a);

struct Entity {
  std::string name;
  Level fS;
  Level fC;
  Level fO;
  Level initial_history;
  bool object = false;
  std::optional<std::uint64_t> parent;  // set for entities born during the run
  std::size_t birth_time = 0;
  bool born_after_access = false;
};

struct AccessRecord {
  std::size_t time = 0;
  std::uint64_t subject = 0;
  std::uint64_t object = 0;
  Access op = Access::Read;
};

// Accumulated accesses B (in the order they happened) and the level
// functions. An entity born during the run starts from its parent's history
// at its birth time.
struct GlobalState {
  LatticePtr lattice;
  std::map<std::uint64_t, Entity> entities;
  std::vector<AccessRecord> accesses;
  std::size_t time = 0;  // number of events folded in
  // The history function under test, and the one of the previous state.
  std::map<std::uint64_t, Level> fH;
  std::map<std::uint64_t, Level> previous_fH;
};

struct Violation {
  std::string property;  // ss, star1, star2, history-read, history-write, history-monotone
  AccessRecord access;
  std::string explanation;
};

struct SecurityVerdict {
  bool secure = true;
  std::vector<Violation> violations;
};

// f_H from first principles: a subject's history joins the classification
// and history of everything it read, an object's joins the current level and
// history of everyone who wrote it.
std::map<std::uint64_t, Level> recompute_history(const GlobalState& gs);

SecurityVerdict oracle_check(const GlobalState& gs);

GlobalState initial_state(const Net& net);
// Folds one engine event in: births always, accesses only when it was
// granted and enabled. Throws Error{MalformedTrace}.
void append_event(GlobalState& gs, const TraceEvent& ev);
GlobalState state_from_trace(const Trace& trace, std::size_t upto);

// ---------------------------------------------------------------------------
// Lemma harness

struct HarnessConfig {
  std::size_t instances = 100;
  std::string lattice = "chain3";  // chain3 | diamond
  std::uint64_t seed = 1;
  std::size_t min_locations = 2;
  std::size_t max_locations = 5;
  std::size_t max_actions = 3;
  std::size_t max_depth = 32;
};

struct Counterexample {
  std::string lemma;  // lemma1, lemma2, history
  std::size_t instance = 0;
  std::string scenario;
  Trace trace;  // prefix plus the forced interaction
  Four decision = Four::Bottom;
  std::vector<Violation> violations;
  std::string detail;
};

struct HarnessReport {
  std::size_t instances = 0;
  std::size_t states = 0;
  std::size_t interactions = 0;
  std::size_t denied = 0;
  std::size_t insecure = 0;
  std::size_t not_enabled = 0;
  std::size_t history_checks = 0;
  std::size_t lemma1_failures = 0;
  std::size_t lemma2_failures = 0;
  std::size_t history_failures = 0;
  std::size_t exhausted = 0;
  std::vector<Counterexample> counterexamples;

  bool ok() const { return counterexamples.empty() && exhausted == 0; }
  std::string to_text() const;
};

LatticePtr harness_lattice(const std::string& name);
// Random bounded net: BLP at every location, histories at bottom.
Net random_net(std::uint64_t seed, const LatticePtr& lattice, const HarnessConfig& cfg);

// Checks both lemma directions and engine/oracle history agreement at every
// reachable state of one net.
void check_net(const Net& net, std::size_t instance, std::size_t max_depth,
               HarnessReport& report);
HarnessReport lemma_harness(const HarnessConfig& cfg);

}  // namespace akb
