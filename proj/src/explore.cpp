#include <algorithm>
#include <deque>
#include <map>
#include <unordered_map>

#include "akb/engine.hpp"
#include "akb/parser.hpp"

namespace akb {

namespace {

class KeyBuilder {
 public:
  std::string operator()(const Net& net) {
    const Lattice& lat = *net.lattice;
    std::vector<std::string> rows;
    rows.reserve(net.items.size());
    for (const auto& item : net.items) {
      const auto& st = item.annot.state;
      std::string row = item.name;
      row += '|';
      for (Level l : {st.clearance, st.current, st.history, st.classification}) {
        row += lat.name(l);
        row += ',';
      }
      row += '|';
      row += policy(item.annot.policy);
      row += '|';
      row += item.is_tuple() ? render_tuple(item.tuple()) : render_process(item.process());
      row += item.declared ? "|d" : "|v";
      rows.push_back(std::move(row));
    }
    std::sort(rows.begin(), rows.end());
    std::string key;
    for (const auto& r : rows) {
      key += r;
      key += '\n';
    }
    return key;
  }

 private:
  const std::string& policy(const PolicyPtr& p) {
    auto it = cache_.find(p.get());
    if (it == cache_.end())
      it = cache_.emplace(p.get(), p ? render_policy(*p) : std::string()).first;
    return it->second;
  }

  // Keyed by address; every cached policy is kept alive by the states.
  std::unordered_map<const Policy*, std::string> cache_;
};

}  // namespace

std::string canonical_key(const Net& net) { return KeyBuilder{}(net); }

ExploreGraph explore(const Net& net, std::size_t max_depth) {
  ExploreGraph g;
  KeyBuilder key_of;
  std::unordered_map<std::string, std::size_t> index;
  auto& expanded = g.expanded;

  auto add_state = [&](Net n, std::size_t depth, std::optional<std::size_t> parent) {
    g.states.push_back(std::move(n));
    g.depth.push_back(depth);
    g.out_edges.emplace_back();
    g.parent_edge.push_back(parent);
    expanded.push_back(false);
    return g.states.size() - 1;
  };

  Net root = normalize(net);
  index.emplace(key_of(root), 0);
  add_state(std::move(root), 0, std::nullopt);

  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    const std::size_t i = queue.front();
    queue.pop_front();
    const Net cur = g.states[i];
    const auto redexes = enumerate_redexes(cur);
    if (g.depth[i] >= max_depth) {
      for (const auto& r : redexes) {
        if (apply(cur, r).second.enabled) {
          g.exhausted = true;
          break;
        }
      }
      continue;
    }
    expanded[i] = true;
    for (const auto& r : redexes) {
      auto [next, ev] = apply(cur, r);
      ev.step = g.depth[i];
      std::size_t to = i;
      if (ev.enabled) {
        auto key = key_of(next);
        auto it = index.find(key);
        if (it == index.end()) {
          to = add_state(std::move(next), g.depth[i] + 1, g.edges.size());
          index.emplace(std::move(key), to);
          queue.push_back(to);
        } else {
          to = it->second;
        }
      }
      g.out_edges[i].push_back(g.edges.size());
      g.edges.push_back(ExploreEdge{i, to, std::move(ev)});
    }
  }
  return g;
}

std::vector<std::size_t> ExploreGraph::terminals() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (!expanded[i]) continue;
    const bool moves = std::any_of(out_edges[i].begin(), out_edges[i].end(),
                                   [&](std::size_t e) { return edges[e].event.enabled; });
    if (!moves) out.push_back(i);
  }
  return out;
}

Trace ExploreGraph::trace_to(std::size_t state) const {
  std::vector<std::size_t> chain;
  for (auto e = parent_edge[state]; e; e = parent_edge[edges[*e].from]) chain.push_back(*e);
  std::reverse(chain.begin(), chain.end());
  Trace t;
  t.initial = states.front();
  for (std::size_t e : chain) {
    t.events.push_back(edges[e].event);
    t.events.back().step = t.events.size() - 1;
  }
  t.final = states[state];
  return t;
}

std::vector<std::vector<std::size_t>> ExploreGraph::paths(std::size_t limit) const {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> stack;
  std::vector<bool> on_path(states.size(), false);
  auto dfs = [&](auto&& self, std::size_t s) -> void {
    if (out.size() >= limit) return;
    on_path[s] = true;
    bool moved = false;
    for (std::size_t e : out_edges[s]) {
      if (!edges[e].event.enabled || on_path[edges[e].to]) continue;
      moved = true;
      stack.push_back(e);
      self(self, edges[e].to);
      stack.pop_back();
    }
    if (!moved) out.push_back(stack);
    on_path[s] = false;
  };
  if (!states.empty()) dfs(dfs, 0);
  return out;
}

std::vector<InteractionSummary> summarize(const ExploreGraph& graph) {
  std::map<std::string, InteractionSummary> by_key;
  for (const auto& e : graph.edges) {
    if (!e.event.enabled) continue;
    auto& s = by_key[e.event.redex];
    s.redex = e.event.redex;
    (e.event.granted ? s.granted : s.denied) += 1;
  }
  std::vector<InteractionSummary> out;
  for (auto& [_, s] : by_key) out.push_back(std::move(s));
  return out;
}

}  // namespace akb
