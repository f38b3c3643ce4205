#include "akb/engine.hpp"

#include <algorithm>
#include <tuple>

#include "akb/error.hpp"
#include "akb/parser.hpp"
#include "akb/policy_eval.hpp"

namespace akb {

namespace {

void split_parallel(Process p, std::vector<Process>& out) {
  if (p.kind != ProcKind::Parallel) {
    out.push_back(std::move(p));
    return;
  }
  for (auto& q : p.parts) split_parallel(std::move(q), out);
}

std::vector<Process> pieces_of(Process p) {
  std::vector<Process> out;
  split_parallel(std::move(p), out);
  if (out.empty()) out.push_back(Process::nil());
  return out;
}

// Choices reachable in one unfolding of a replicated body, with their paths.
void unfold_choices(const Process& p, std::vector<std::size_t>& path,
                    std::vector<std::pair<std::vector<std::size_t>, const Process*>>& out) {
  switch (p.kind) {
    case ProcKind::Nil:
      return;
    case ProcKind::Choice:
      out.emplace_back(path, &p);
      return;
    case ProcKind::Parallel:
    case ProcKind::Replicate:
      for (std::size_t i = 0; i < p.parts.size(); ++i) {
        path.push_back(i);
        unfold_choices(p.parts[i], path, out);
        path.pop_back();
      }
      return;
  }
}

const Process* choice_at(const LocatedItem& item, const std::vector<std::size_t>& path) {
  if (item.is_tuple()) return nullptr;
  const Process* p = &item.process();
  if (!path.empty()) {
    if (p->kind != ProcKind::Replicate) return nullptr;
    p = &p->body();
    for (std::size_t i = 1; i < path.size(); ++i) {
      const std::size_t step = path[i];
      if ((p->kind != ProcKind::Parallel && p->kind != ProcKind::Replicate) ||
          step >= p->parts.size())
        return nullptr;
      p = &p->parts[step];
    }
  }
  return p->kind == ProcKind::Choice ? p : nullptr;
}

// The processes besides the acting choice that one unfolding of `body` adds
// along `path`: untouched parallel siblings and re-folded inner replications.
void unfold_siblings(const Process& p, const std::vector<std::size_t>& path,
                     std::size_t depth, std::vector<Process>& out) {
  if (depth == path.size()) return;
  if (p.kind == ProcKind::Replicate) {
    out.push_back(p);
    unfold_siblings(p.body(), path, depth + 1, out);
    return;
  }
  for (std::size_t i = 0; i < p.parts.size(); ++i)
    if (i != path[depth]) out.push_back(p.parts[i]);
  unfold_siblings(p.parts[path[depth]], path, depth + 1, out);
}

std::vector<std::string> rendered_args(const Action& a) {
  std::vector<std::string> out;
  for (const auto& arg : a.args) out.push_back(render_pattern(arg));
  return out;
}

}  // namespace

Net normalize(const Net& net) {
  Net out;
  out.lattice = net.lattice;
  out.next_uid = net.next_uid;
  for (const auto& item : net.items) {
    if (item.is_tuple() || item.process().kind != ProcKind::Parallel) {
      out.items.push_back(item);
      continue;
    }
    auto pieces = pieces_of(item.process());
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      LocatedItem piece = item;
      piece.body = std::move(pieces[i]);
      if (i > 0) piece.uid = out.next_uid++;
      out.items.push_back(std::move(piece));
    }
  }
  return out;
}

std::string Redex::key(const Net& net) const {
  return net.items[subject].name + ":" + std::string(to_string(action.kind)) + "@" +
         net.items[target].name;
}

std::vector<Redex> enumerate_redexes(const Net& net) {
  std::vector<Redex> out;
  auto base_of = [&](const std::string& name) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < net.items.size(); ++i)
      if (net.items[i].declared && net.items[i].name == name) return i;
    return std::nullopt;
  };
  auto add_branches = [&](std::size_t s, const std::vector<std::size_t>& path,
                          const Process& choice) {
    for (std::size_t b = 0; b < choice.branches.size(); ++b) {
      const Action& a = choice.branches[b].action;
      if (a.target.is_var()) continue;
      Redex r;
      r.subject = s;
      r.unfold = path;
      r.branch = b;
      r.subject_uid = net.items[s].uid;
      r.action = a;
      if (a.kind == ActionKind::Out) {
        const bool closed = std::all_of(a.args.begin(), a.args.end(), [](const Pattern& p) {
          return p.kind == PatternKind::Literal;
        });
        auto base = base_of(a.target.name);
        if (!closed || !base) continue;
        r.target = *base;
        r.target_uid = net.items[*base].uid;
        out.push_back(r);
        continue;
      }
      for (std::size_t t = 0; t < net.items.size(); ++t) {
        const auto& item = net.items[t];
        if (item.name != a.target.name || !item.is_tuple() ||
            item.tuple().size() != a.args.size())
          continue;
        r.target = t;
        r.target_uid = item.uid;
        out.push_back(r);
      }
    }
  };
  for (std::size_t s = 0; s < net.items.size(); ++s) {
    const auto& item = net.items[s];
    if (item.is_tuple()) continue;
    const Process& p = item.process();
    if (p.kind == ProcKind::Choice) {
      add_branches(s, {}, p);
    } else if (p.kind == ProcKind::Replicate) {
      // Paths start with a 0 step into the replicated body, so an unfolded
      // redex is never confused with a plain one.
      std::vector<std::pair<std::vector<std::size_t>, const Process*>> choices;
      std::vector<std::size_t> path{0};
      unfold_choices(p.body(), path, choices);
      for (const auto& [cpath, choice] : choices) add_branches(s, cpath, *choice);
    }
  }
  std::stable_sort(out.begin(), out.end(), [&](const Redex& a, const Redex& b) {
    return std::tie(net.items[a.subject].name, a.subject, a.unfold, a.branch,
                    net.items[a.target].name, a.target) <
           std::tie(net.items[b.subject].name, b.subject, b.unfold, b.branch,
                    net.items[b.target].name, b.target);
  });
  return out;
}

std::pair<Net, TraceEvent> apply(const Net& net, const Redex& r, ApplyOptions opts) {
  auto stale = [] {
    throw Error(ErrorCode::StaleRedex, "redex does not belong to this net");
  };
  if (r.subject >= net.items.size() || r.target >= net.items.size()) stale();
  const LocatedItem& s = net.items[r.subject];
  const LocatedItem& t = net.items[r.target];
  if (s.uid != r.subject_uid || t.uid != r.target_uid) stale();
  const Process* choice = choice_at(s, r.unfold);
  if (!choice || r.branch >= choice->branches.size() ||
      choice->branches[r.branch].action != r.action)
    stale();
  const Branch& br = choice->branches[r.branch];
  const bool is_out = r.action.kind == ActionKind::Out;
  if (!is_out && (!t.is_tuple() || t.tuple().size() != r.action.args.size())) stale();

  const Lattice& lat = *net.lattice;
  const auto& ss = s.annot.state;
  const auto& ts = t.annot.state;

  InteractionView iv;
  iv.subject = s.name;
  iv.action = br.action;
  iv.continuation = &br.cont;
  iv.levels = LevelBinding{ss.clearance, ss.current, ts.classification, ss.history,
                           ts.history};
  iv.net = &net;
  auto eval = [&](const PolicyPtr& p) { return p ? eval_policy(*p, iv) : Four::Bottom; };
  const Four decision = oplus(eval(s.annot.policy), eval(t.annot.policy));

  TraceEvent ev;
  ev.redex = r.key(net);
  ev.subject = s.name;
  ev.subject_uid = s.uid;
  ev.origin_uid = s.uid;
  ev.unfold = r.unfold;
  ev.branch = r.branch;
  ev.kind = r.action.kind;
  ev.args = rendered_args(r.action);
  ev.target = t.name;
  ev.target_uid = t.uid;
  ev.decision = decision;
  ev.granted = opts.force_grant || grant(decision);
  ev.forced = opts.force_grant && !grant(decision);

  if (ev.granted && !is_out) {
    ev.theta = match(r.action.args, t.tuple());
    if (!ev.theta) {
      ev.enabled = false;
      return {net, std::move(ev)};
    }
  }

  Net next = net;
  LocalizedState acted = ss;
  Process cont = Process::nil();
  if (ev.granted) {
    if (is_out) {
      cont = br.cont;
    } else {
      cont = substitute(br.cont, *ev.theta);
      acted.history = lat.join(ss.history, lat.join(ts.classification, ts.history));
    }
  }

  std::vector<LocatedItem> appended;
  auto spawn = [&](Process body, const LocalizedState& state, std::uint64_t parent,
                   const char* reason) {
    LocatedItem item;
    item.name = s.name;
    item.annot = Annotation{state, s.annot.policy};
    item.body = std::move(body);
    item.declared = false;
    item.uid = next.next_uid++;
    ev.created_items.push_back(CreatedItem{item.uid, item.name, parent, reason});
    appended.push_back(std::move(item));
    return appended.back().uid;
  };

  auto pieces = pieces_of(std::move(cont));
  std::uint64_t actor = s.uid;
  if (r.unfold.empty()) {
    next.items[r.subject].body = std::move(pieces.front());
    next.items[r.subject].annot.state = acted;
  } else {
    // The acting copy is born from the replicated item before the access.
    actor = spawn(std::move(pieces.front()), acted, s.uid, "unfold");
    ev.subject_uid = actor;
    std::vector<Process> siblings;
    unfold_siblings(s.process().body(), r.unfold, 1, siblings);
    for (auto& sib : siblings)
      for (auto& piece : pieces_of(std::move(sib))) spawn(std::move(piece), ss, s.uid, "unfold");
  }
  for (std::size_t i = 1; i < pieces.size(); ++i)
    spawn(std::move(pieces[i]), acted, actor, "split");

  if (ev.granted && !is_out)
    ev.state_updates.push_back(StateUpdate{s.name, actor, ss.history, acted.history});

  if (ev.granted && is_out) {
    LocatedItem tuple;
    tuple.name = t.name;
    tuple.annot.state = ts;
    tuple.annot.state.history = lat.join(ts.history, lat.join(ss.current, ss.history));
    tuple.annot.policy = t.annot.policy;
    Tuple data;
    for (const auto& a : r.action.args) data.push_back(a.name);
    tuple.body = std::move(data);
    tuple.declared = false;
    tuple.uid = next.next_uid++;
    ev.created_items.push_back(CreatedItem{tuple.uid, tuple.name, t.uid, "virtual"});
    appended.push_back(std::move(tuple));
  }

  for (auto& item : appended) next.items.push_back(std::move(item));
  if (ev.granted && r.action.kind == ActionKind::In) {
    ev.removed_items.push_back(t.uid);
    next.items.erase(next.items.begin() + static_cast<std::ptrdiff_t>(r.target));
  }
  return {std::move(next), std::move(ev)};
}

Net replay(const Trace& trace) {
  Net net = normalize(trace.initial);
  for (const auto& ev : trace.events) {
    const auto redexes = enumerate_redexes(net);
    auto it = std::find_if(redexes.begin(), redexes.end(), [&](const Redex& r) {
      return r.subject_uid == ev.origin_uid && r.target_uid == ev.target_uid &&
             r.unfold == ev.unfold && r.branch == ev.branch;
    });
    if (it == redexes.end())
      throw Error(ErrorCode::MalformedTrace,
                  "event " + std::to_string(ev.step) + " (" + ev.redex +
                      ") matches no redex");
    auto [after, replayed] = apply(net, *it, ApplyOptions{ev.forced});
    if (replayed.decision != ev.decision || replayed.enabled != ev.enabled)
      throw Error(ErrorCode::MalformedTrace,
                  "event " + std::to_string(ev.step) + " replays differently");
    net = std::move(after);
  }
  return net;
}

std::optional<std::size_t> SeededRandom::pick(const Net&,
                                              const std::vector<Redex>& candidates) {
  return static_cast<std::size_t>(rng_() % candidates.size());
}

std::optional<std::size_t> FixedScript::pick(const Net& net,
                                             const std::vector<Redex>& candidates) {
  if (next_ >= entries_.size()) return std::nullopt;
  const std::string& want = entries_[next_];
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (candidates[i].key(net) == want) {
      ++next_;
      return i;
    }
  }
  std::string avail;
  for (const auto& c : candidates) avail += (avail.empty() ? "" : ", ") + c.key(net);
  throw Error(ErrorCode::ScriptMismatch,
              "script entry " + std::to_string(next_ + 1) + " '" + want +
                  "' is not enabled; candidates: " + (avail.empty() ? "none" : avail));
}

namespace {

using RedexId = std::tuple<std::uint64_t, std::vector<std::size_t>, std::size_t, std::uint64_t>;

RedexId id_of(const Redex& r) { return {r.subject_uid, r.unfold, r.branch, r.target_uid}; }

}  // namespace

Trace run(const Net& net, Scheduler& scheduler, std::size_t max_steps) {
  Trace trace;
  trace.initial = normalize(net);
  Net cur = trace.initial;
  std::vector<RedexId> blocked;
  while (trace.events.size() < max_steps) {
    auto candidates = enumerate_redexes(cur);
    std::erase_if(candidates, [&](const Redex& r) {
      return std::find(blocked.begin(), blocked.end(), id_of(r)) != blocked.end();
    });
    if (candidates.empty()) break;
    const auto choice = scheduler.pick(cur, candidates);
    if (!choice) break;
    const Redex& r = candidates.at(*choice);
    auto [next, ev] = apply(cur, r, {});
    ev.step = trace.events.size();
    if (ev.enabled) {
      blocked.clear();
      cur = std::move(next);
    } else {
      blocked.push_back(id_of(r));
    }
    trace.events.push_back(std::move(ev));
  }
  trace.final = std::move(cur);
  return trace;
}

}  // namespace akb
