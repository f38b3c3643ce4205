#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "akb/ast.hpp"
#include "akb/belnap.hpp"
#include "akb/matcher.hpp"

namespace akb {

// Splits parallel processes into separate items sharing the location's name
// and annotation. The first piece keeps the item's uid. Replication is left
// folded.
Net normalize(const Net& net);

struct Redex {
  std::size_t subject = 0;           // item index
  std::vector<std::size_t> unfold;   // path into a replicated body; empty otherwise
  std::size_t branch = 0;
  std::size_t target = 0;            // item index
  std::uint64_t subject_uid = 0;
  std::uint64_t target_uid = 0;
  Action action;

  // "subject:kind@target", the form accepted by scripted scheduling.
  std::string key(const Net& net) const;
};

// Every (branch, target) pair some rule could fire on. In and read targets
// are tuple items of the right arity; an out targets the first declared item
// of its name. A replicated item contributes the redexes of one unfolded copy.
std::vector<Redex> enumerate_redexes(const Net& net);

struct StateUpdate {
  std::string location;
  std::uint64_t uid = 0;
  Level old_history;
  Level new_history;
};

// Why an item appeared: "virtual" (tuple made by an out; parent is the
// out-target), "unfold" (copy or sibling from a replicated item; parent is
// that item), "split" (extra parallel piece of a continuation; parent is the
// acting item). Virtual and unfolded items are born before the access, split
// pieces after it.
struct CreatedItem {
  std::uint64_t uid = 0;
  std::string name;
  std::uint64_t parent = 0;
  std::string reason;
};

struct TraceEvent {
  std::size_t step = 0;
  std::string redex;
  std::string subject;
  std::uint64_t subject_uid = 0;  // the acting entity (the fresh copy when unfolded)
  std::uint64_t origin_uid = 0;   // the item the redex was enumerated from
  std::vector<std::size_t> unfold;
  std::size_t branch = 0;
  ActionKind kind = ActionKind::Read;
  std::vector<std::string> args;
  std::string target;
  std::uint64_t target_uid = 0;
  Four decision = Four::Bottom;
  bool granted = false;
  // False when granted but the input pattern did not match the tuple; the
  // net is then unchanged.
  bool enabled = true;
  bool forced = false;
  std::optional<Substitution> theta;
  std::vector<StateUpdate> state_updates;
  std::vector<CreatedItem> created_items;
  std::vector<std::uint64_t> removed_items;
};

struct Trace {
  Net initial;
  std::vector<TraceEvent> events;
  Net final;
};

struct ApplyOptions {
  // Apply the granted rule regardless of the policies' decision; the event
  // still records the real decision.
  bool force_grant = false;
};

// Throws Error{StaleRedex} when the redex does not belong to `net`.
std::pair<Net, TraceEvent> apply(const Net& net, const Redex& r, ApplyOptions opts = {});

// Re-applies recorded events to the trace's initial net. Throws
// Error{MalformedTrace} when an event does not correspond to a redex.
Net replay(const Trace& trace);

class Scheduler {
 public:
  virtual ~Scheduler() = default;
  // Index into `candidates` (never empty), or nullopt to stop.
  virtual std::optional<std::size_t> pick(const Net& net,
                                          const std::vector<Redex>& candidates) = 0;
};

class SeededRandom final : public Scheduler {
 public:
  explicit SeededRandom(std::uint64_t seed) : rng_(seed) {}
  std::optional<std::size_t> pick(const Net& net,
                                  const std::vector<Redex>& candidates) override;

 private:
  std::mt19937_64 rng_;
};

// Entries look like "D:read@B"; each picks the first matching candidate.
class FixedScript final : public Scheduler {
 public:
  explicit FixedScript(std::vector<std::string> entries) : entries_(std::move(entries)) {}
  // Throws Error{ScriptMismatch}.
  std::optional<std::size_t> pick(const Net& net,
                                  const std::vector<Redex>& candidates) override;

 private:
  std::vector<std::string> entries_;
  std::size_t next_ = 0;
};

// Steps until no candidate is left or max_steps events were recorded. A
// redex found not enabled is recorded once and skipped until the net
// changes.
Trace run(const Net& net, Scheduler& scheduler, std::size_t max_steps);

// Reachability graph for exhaustive scheduling.
struct ExploreEdge {
  std::size_t from = 0;
  std::size_t to = 0;
  TraceEvent event;
};

struct ExploreGraph {
  std::vector<Net> states;  // states[0] is the normalized initial net
  std::vector<std::size_t> depth;
  std::vector<ExploreEdge> edges;
  std::vector<std::vector<std::size_t>> out_edges;
  std::vector<std::optional<std::size_t>> parent_edge;  // BFS tree
  std::vector<bool> expanded;  // false for states at the depth bound
  bool exhausted = false;  // depth bound hit with unexplored successors

  // Expanded states without a transition that changes the net.
  std::vector<std::size_t> terminals() const;
  // The BFS-tree trace from the initial net to `state`.
  Trace trace_to(std::size_t state) const;
  // Every path of net-changing edges from the initial state to a terminal
  // or depth-bounded state, as edge indices. Stops after `limit` paths.
  std::vector<std::vector<std::size_t>> paths(std::size_t limit = 100000) const;
};

ExploreGraph explore(const Net& net, std::size_t max_depth);

// Order-independent identity of a net: sorted item renderings without uids.
std::string canonical_key(const Net& net);

struct InteractionSummary {
  std::string redex;
  std::size_t granted = 0;
  std::size_t denied = 0;
};
std::vector<InteractionSummary> summarize(const ExploreGraph& graph);

}  // namespace akb
