#include "akb/blp.hpp"

#include <algorithm>
#include <map>

#include "akb/error.hpp"

namespace akb {

namespace {

Policy blp_aspect(ActionKind kind, LevKind lhs, LevKind rhs) {
  Aspect a{
      Rec{RecGeq{LevExpr{lhs, {}}, LevExpr{rhs, {}}}},
      Cut{LocRef::var("ls"), Action{kind, {Pattern::rest()}, LocRef::var("lt")}, "P"},
      Cond{CondConst{true}},
  };
  return Policy{std::move(a)};
}

Policy build_blp() {
  using K = ActionKind;
  using L = LevKind;
  const std::vector<Policy> aspects = {
      blp_aspect(K::Read, L::Ss, L::Ot), blp_aspect(K::In, L::Ss, L::Ot),
      blp_aspect(K::Out, L::Ot, L::Cs),  blp_aspect(K::In, L::Ot, L::Cs),
      blp_aspect(K::Out, L::Ot, L::Hs),  blp_aspect(K::In, L::Ot, L::Hs),
      blp_aspect(K::Read, L::Ss, L::Ht), blp_aspect(K::In, L::Ss, L::Ht),
  };
  Policy acc = aspects.front();
  for (std::size_t i = 1; i < aspects.size(); ++i)
    acc = policy_bin(BinOp::Oplus, std::move(acc), aspects[i]);
  return acc;
}

}  // namespace

const Policy& blp_policy() {
  static const Policy policy = build_blp();
  return policy;
}

std::optional<Policy> policy_preset(std::string_view name) {
  if (name == "BLP") return blp_policy();
  return std::nullopt;
}

std::optional<std::string> policy_preset_name(const Policy& policy) {
  if (policy == blp_policy()) return "BLP";
  return std::nullopt;
}

std::string_view to_string(Access a) { return a == Access::Read ? "read" : "write"; }

// ---------------------------------------------------------------------------
// Oracle

namespace {

struct Timeline {
  std::map<std::uint64_t, Level> history;
  // Pre-access histories of subject and object, per access (same order).
  std::vector<std::pair<Level, Level>> pre;
};

Timeline simulate(const GlobalState& gs) {
  const Lattice& lat = *gs.lattice;
  Timeline tl;
  std::map<std::size_t, std::vector<std::uint64_t>> before, after;
  for (const auto& [uid, e] : gs.entities) {
    if (!e.parent)
      tl.history[uid] = e.initial_history;
    else
      (e.born_after_access ? after : before)[e.birth_time].push_back(uid);
  }
  auto born = [&](std::uint64_t uid) {
    const Entity& e = gs.entities.at(uid);
    auto it = tl.history.find(*e.parent);
    tl.history[uid] = it == tl.history.end() ? e.initial_history : it->second;
  };
  tl.pre.resize(gs.accesses.size());
  std::size_t next = 0;
  for (std::size_t t = 0; t <= gs.time; ++t) {
    for (auto uid : before[t]) born(uid);
    const std::size_t first = next;
    while (next < gs.accesses.size() && gs.accesses[next].time == t) {
      const auto& a = gs.accesses[next];
      tl.pre[next] = {tl.history.at(a.subject), tl.history.at(a.object)};
      ++next;
    }
    for (std::size_t i = first; i < next; ++i) {
      const auto& a = gs.accesses[i];
      const auto [hs, ho] = tl.pre[i];
      if (a.op == Access::Read) {
        Level& h = tl.history[a.subject];
        h = lat.join(h, lat.join(gs.entities.at(a.object).fO, ho));
      } else {
        Level& h = tl.history[a.object];
        h = lat.join(h, lat.join(gs.entities.at(a.subject).fC, hs));
      }
    }
    for (auto uid : after[t]) born(uid);
  }
  return tl;
}

}  // namespace

std::map<std::uint64_t, Level> recompute_history(const GlobalState& gs) {
  return simulate(gs).history;
}

SecurityVerdict oracle_check(const GlobalState& gs) {
  const Lattice& lat = *gs.lattice;
  const Timeline tl = simulate(gs);
  SecurityVerdict v;
  auto name = [&](std::uint64_t uid) {
    return gs.entities.at(uid).name + "#" + std::to_string(uid);
  };
  auto lv = [&](Level l) { return lat.name(l); };
  auto given = [&](std::uint64_t uid) {
    auto it = gs.fH.find(uid);
    return it != gs.fH.end() ? it->second : tl.history.at(uid);
  };
  auto violate = [&](const char* prop, const AccessRecord& a, std::string why) {
    v.violations.push_back(Violation{prop, a, std::move(why)});
  };
  for (std::size_t i = 0; i < gs.accesses.size(); ++i) {
    const auto& a = gs.accesses[i];
    const Entity& s = gs.entities.at(a.subject);
    const Entity& o = gs.entities.at(a.object);
    const auto [hs, ho] = tl.pre[i];
    const std::string who = name(a.subject) + " " + std::string(to_string(a.op)) + " " +
                            name(a.object) + ": ";
    if (a.op == Access::Read) {
      if (!lat.leq(o.fO, s.fS))
        violate("ss", a, who + "clearance " + lv(s.fS) + " below classification " + lv(o.fO));
      if (!lat.leq(ho, s.fS))
        violate("star2", a, who + "clearance " + lv(s.fS) + " below object history " + lv(ho));
      if (!lat.leq(o.fO, given(a.subject)))
        violate("history-read", a,
                who + "subject history " + lv(given(a.subject)) + " below " + lv(o.fO));
    } else {
      if (!lat.leq(s.fC, o.fO))
        violate("star1", a, who + "classification " + lv(o.fO) + " below current " + lv(s.fC));
      if (!lat.leq(hs, o.fO))
        violate("star2", a,
                who + "classification " + lv(o.fO) + " below subject history " + lv(hs));
      if (!lat.leq(s.fC, given(a.object)))
        violate("history-write", a,
                who + "object history " + lv(given(a.object)) + " below " + lv(s.fC));
    }
  }
  for (const auto& [uid, prev] : gs.previous_fH) {
    auto it = gs.fH.find(uid);
    if (it != gs.fH.end() && !lat.leq(prev, it->second))
      violate("history-monotone", AccessRecord{gs.time, uid, uid, Access::Read},
              name(uid) + ": history fell from " + lv(prev) + " to " + lv(it->second));
  }
  v.secure = v.violations.empty();
  return v;
}

GlobalState initial_state(const Net& net) {
  GlobalState gs;
  gs.lattice = net.lattice;
  for (const auto& item : net.items) {
    const auto& st = item.annot.state;
    gs.entities[item.uid] =
        Entity{item.name, st.clearance, st.current, st.classification, st.history,
               item.is_tuple(), std::nullopt, 0, false};
  }
  gs.fH = recompute_history(gs);
  return gs;
}

void append_event(GlobalState& gs, const TraceEvent& ev) {
  auto malformed = [&](const std::string& why) {
    throw Error(ErrorCode::MalformedTrace,
                "event " + std::to_string(ev.step) + " (" + ev.redex + "): " + why);
  };
  const std::size_t t = gs.time + 1;
  std::optional<std::uint64_t> written;
  for (const auto& c : ev.created_items) {
    auto parent = gs.entities.find(c.parent);
    if (parent == gs.entities.end()) malformed("unknown parent " + std::to_string(c.parent));
    if (gs.entities.contains(c.uid)) malformed("uid " + std::to_string(c.uid) + " reused");
    Entity e = parent->second;
    e.name = c.name;
    e.parent = c.parent;
    e.birth_time = t;
    e.born_after_access = c.reason == "split";
    if (c.reason == "virtual") {
      e.object = true;
      written = c.uid;
    } else if (c.reason != "unfold" && c.reason != "split") {
      malformed("unknown creation reason '" + c.reason + "'");
    }
    gs.entities.emplace(c.uid, std::move(e));
  }
  if (ev.granted && ev.enabled) {
    if (!gs.entities.contains(ev.subject_uid)) malformed("unknown subject");
    if (ev.kind == ActionKind::Out) {
      if (!written) malformed("granted out without a virtual tuple");
      gs.accesses.push_back(AccessRecord{t, ev.subject_uid, *written, Access::Write});
    } else {
      if (!gs.entities.contains(ev.target_uid)) malformed("unknown target");
      gs.accesses.push_back(AccessRecord{t, ev.subject_uid, ev.target_uid, Access::Read});
      if (ev.kind == ActionKind::In)
        gs.accesses.push_back(AccessRecord{t, ev.subject_uid, ev.target_uid, Access::Write});
    }
  }
  gs.time = t;
  gs.previous_fH = std::move(gs.fH);
  gs.fH = recompute_history(gs);
}

GlobalState state_from_trace(const Trace& trace, std::size_t upto) {
  if (upto > trace.events.size())
    throw Error(ErrorCode::MalformedTrace, "prefix longer than the trace");
  GlobalState gs = initial_state(trace.initial);
  for (std::size_t i = 0; i < upto; ++i) append_event(gs, trace.events[i]);
  return gs;
}

}  // namespace akb
