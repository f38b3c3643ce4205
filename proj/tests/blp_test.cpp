#include "akb/blp.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <random>

#include "akb/parser.hpp"
#include "akb/policy_eval.hpp"
#include "akb/scenarios.hpp"
#include "support/aspect_texts.hpp"

namespace akb {
namespace {

LatticePtr Chain() { return harness_lattice("chain3"); }

struct StateBuilder {
  GlobalState gs;
  explicit StateBuilder(LatticePtr lat) { gs.lattice = std::move(lat); }
  Level L(const char* n) const { return gs.lattice->level(n); }
  StateBuilder& entity(std::uint64_t uid, const char* s, const char* c, const char* o, bool object) {
    gs.entities[uid] = Entity{"E" + std::to_string(uid), L(s), L(c), L(o), gs.lattice->bottom(), object,
                              std::nullopt, 0, false};
    return *this;
  }
  StateBuilder& access(std::size_t time, std::uint64_t s, std::uint64_t o, Access op) {
    gs.accesses.push_back({time, s, o, op});
    gs.time = std::max(gs.time, time);
    return *this;
  }
  GlobalState done() {
    gs.fH = recompute_history(gs);
    return gs;
  }
};

bool Has(const SecurityVerdict& v, const std::string& prop) {
  return std::any_of(v.violations.begin(), v.violations.end(),
                     [&](const Violation& x) { return x.property == prop; });
}

TEST(BlpPolicy, EightAspectsUnderOplus) {
  std::size_t aspects = 0;
  std::function<void(const Policy&)> walk = [&](const Policy& p) {
    if (std::holds_alternative<Aspect>(p.node)) {
      ++aspects;
    } else {
      const auto& b = std::get<PolBin>(p.node);
      EXPECT_EQ(b.op, BinOp::Oplus);
      walk(*b.lhs);
      walk(*b.rhs);
    }
  };
  walk(parse_policy(render_policy(blp_policy())));
  EXPECT_EQ(aspects, 8u);
  EXPECT_EQ(policy_preset("BLP"), blp_policy());
  EXPECT_FALSE(policy_preset("blp"));
  EXPECT_EQ(policy_preset_name(blp_policy()), "BLP");
  EXPECT_FALSE(policy_preset_name(policy_const(true)));
}

class BlpDecisions : public ::testing::Test {
 protected:
  Four Decide(std::string_view action, const char* s, const char* c, const char* o, const char* hs,
              const char* ht) {
    const auto& lat = *net_.lattice;
    proc_ = parse_process(std::string(action) + " . 0");
    InteractionView iv{"S", proc_.branches[0].action, &proc_.branches[0].cont,
                       {lat.level(s), lat.level(c), lat.level(o), lat.level(hs), lat.level(ht)}, &net_};
    return eval_policy(blp_policy(), iv);
  }
  Net net_{Chain(), {}, 0};
  Process proc_;
};

TEST_F(BlpDecisions, Examples) {
  EXPECT_EQ(Decide("out(K)@T", "3", "2", "2", "1", "1"), Four::True);
  EXPECT_EQ(Decide("read(?x)@T", "3", "3", "2", "1", "2"), Four::True);
  auto up = Decide("read(?x)@T", "1", "1", "3", "1", "1");
  EXPECT_TRUE(up == Four::False || up == Four::Top);
  EXPECT_FALSE(grant(up));
  // One aspect says ff while another says tt.
  EXPECT_EQ(Decide("out(K)@T", "3", "3", "1", "1", "1"), Four::Top);
  EXPECT_EQ(Decide("out(K)@T", "3", "3", "1", "3", "1"), Four::False);
  EXPECT_EQ(Decide("in(?x)@T", "3", "2", "2", "3", "1"), Four::Top);
  EXPECT_EQ(Decide("in(?x)@T", "3", "2", "2", "2", "3"), Four::True);
}

TEST(Oracle, EmptyIsSecure) {
  auto gs = StateBuilder(Chain()).entity(1, "3", "3", "3", false).done();
  EXPECT_TRUE(oracle_check(gs).secure);
}

TEST(Oracle, ReadUp) {
  auto gs = StateBuilder(Chain())
                .entity(1, "1", "1", "1", false)
                .entity(2, "3", "3", "3", true)
                .access(1, 1, 2, Access::Read)
                .done();
  auto v = oracle_check(gs);
  EXPECT_FALSE(v.secure);
  EXPECT_TRUE(Has(v, "ss"));
}

TEST(Oracle, ReadHighThenWriteLow) {
  auto gs = StateBuilder(Chain())
                .entity(1, "3", "1", "1", false)
                .entity(2, "3", "3", "3", true)
                .entity(3, "1", "1", "1", true)
                .access(1, 1, 2, Access::Read)
                .access(2, 1, 3, Access::Write)
                .done();
  auto v = oracle_check(gs);
  EXPECT_FALSE(v.secure);
  EXPECT_TRUE(Has(v, "star2"));
  EXPECT_FALSE(Has(v, "star1"));
  EXPECT_FALSE(Has(v, "ss"));
}

TEST(Oracle, WriteDown) {
  auto gs = StateBuilder(Chain())
                .entity(1, "3", "3", "3", false)
                .entity(2, "1", "1", "1", true)
                .access(1, 1, 2, Access::Write)
                .done();
  auto v = oracle_check(gs);
  EXPECT_TRUE(Has(v, "star1"));
}

TEST(Oracle, HistoryConditions) {
  auto gs = StateBuilder(Chain())
                .entity(1, "3", "2", "3", false)
                .entity(2, "2", "2", "2", true)
                .access(1, 1, 2, Access::Read)
                .done();
  EXPECT_TRUE(oracle_check(gs).secure);
  EXPECT_EQ(gs.lattice->name(gs.fH.at(1)), "2");
  gs.fH[1] = gs.lattice->bottom();
  auto v = oracle_check(gs);
  EXPECT_TRUE(Has(v, "history-read"));
  gs = StateBuilder(Chain()).entity(1, "3", "2", "3", false).done();
  gs.previous_fH[1] = gs.lattice->level("3");
  EXPECT_TRUE(Has(oracle_check(gs), "history-monotone"));
}

TEST(Oracle, HistoryPropagatesThroughObjects) {
  // s1 (current 3) writes o; s2 reads o: s2 learns o's history too.
  auto gs = StateBuilder(Chain())
                .entity(1, "3", "3", "3", false)
                .entity(2, "3", "3", "3", false)
                .entity(3, "3", "3", "3", true)
                .entity(4, "1", "1", "1", true)
                .access(1, 1, 3, Access::Write)
                .access(2, 2, 3, Access::Read)
                .done();
  EXPECT_EQ(gs.lattice->name(gs.fH.at(3)), "3");
  EXPECT_EQ(gs.lattice->name(gs.fH.at(2)), "3");
  EXPECT_EQ(gs.lattice->name(gs.fH.at(4)), "1");
}

TEST(StateFromTrace, Examples) {
  auto fig = *builtin_net("fig1b");
  Trace empty{fig, {}, fig};
  auto gs0 = state_from_trace(empty, 0);
  EXPECT_TRUE(gs0.accesses.empty());
  for (const auto& [uid, h] : gs0.fH) EXPECT_EQ(h, gs0.lattice->bottom());

  SeededRandom s(1);
  auto trace = run(fig, s, 10);
  ASSERT_EQ(trace.events.size(), 2u);
  auto gs1 = state_from_trace(trace, 1);
  EXPECT_EQ(gs1.accesses.size(), 1u);
  EXPECT_EQ(gs1.lattice->name(gs1.fH.at(trace.events[0].subject_uid)), "2");
  auto gs2 = state_from_trace(trace, 2);
  ASSERT_EQ(trace.events[1].created_items.size(), 1u);
  // Written by D at current level 2 after reading level 2.
  EXPECT_EQ(gs2.lattice->name(gs2.fH.at(trace.events[1].created_items[0].uid)), "2");
  EXPECT_TRUE(oracle_check(gs2).secure);
  EXPECT_THROW(state_from_trace(trace, 3), Error);
}

TEST(StateFromTrace, InCountsAsReadAndWrite) {
  auto net = parse_scenario(
      "lattice { levels: 1, 2, 3; order: 1 < 2, 2 < 3; }\n"
      "location S { state <3,2,1,3>; policy BLP; process in(?x)@B . 0; }\n"
      "location B { state <2,2,1,2>; policy BLP; tuple <K>; }");
  SeededRandom s(1);
  auto trace = run(net, s, 10);
  auto gs = state_from_trace(trace, 1);
  ASSERT_EQ(gs.accesses.size(), 2u);
  EXPECT_EQ(gs.accesses[0].op, Access::Read);
  EXPECT_EQ(gs.accesses[1].op, Access::Write);
  EXPECT_EQ(gs.accesses[0].time, gs.accesses[1].time);
}

TEST(Harness, Fig1aDeniesWriteDown) {
  HarnessReport report;
  check_net(*builtin_net("fig1a"), 0, 20, report);
  EXPECT_TRUE(report.ok()) << report.to_text();
  EXPECT_GT(report.denied, 0u);
  // The hypothetical forced out violates star1.
  auto g = explore(*builtin_net("fig1a"), 10);
  bool seen = false;
  for (std::size_t i = 0; i < g.states.size(); ++i) {
    auto prefix = g.trace_to(i);
    for (const auto& r : enumerate_redexes(g.states[i])) {
      auto [after, ev] = apply(g.states[i], r, ApplyOptions{true});
      if (ev.kind != ActionKind::Out) continue;
      auto gs = state_from_trace(prefix, prefix.events.size());
      append_event(gs, ev);
      auto v = oracle_check(gs);
      EXPECT_TRUE(Has(v, "star1"));
      EXPECT_FALSE(grant(ev.decision));
      seen = true;
    }
  }
  EXPECT_TRUE(seen);
}

TEST(Harness, Fig1bAllSecure) {
  HarnessReport report;
  check_net(*builtin_net("fig1b"), 0, 20, report);
  EXPECT_TRUE(report.ok()) << report.to_text();
  EXPECT_EQ(report.denied, 0u);
  EXPECT_EQ(report.insecure, 0u);
}

TEST(Harness, ZeroInstances) {
  HarnessConfig cfg;
  cfg.instances = 0;
  auto report = lemma_harness(cfg);
  EXPECT_TRUE(report.ok());
  EXPECT_EQ(report.states, 0u);
}

TEST(Harness, SmallRunsAreClean) {
  for (const char* lat : {"chain3", "diamond"}) {
    HarnessConfig cfg;
    cfg.instances = 100;
    cfg.lattice = lat;
    cfg.seed = 17;
    auto report = lemma_harness(cfg);
    EXPECT_TRUE(report.ok()) << report.to_text();
    EXPECT_GT(report.denied, 0u);
    EXPECT_GT(report.interactions, report.denied);
  }
}

TEST(Harness, RandomNetsRespectBounds) {
  HarnessConfig cfg;
  auto lat = Chain();
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    auto net = random_net(seed, lat, cfg);
    EXPECT_TRUE(validate(net).empty()) << render(net);
    std::set<std::string> names;
    for (const auto& item : net.items) {
      names.insert(item.name);
      EXPECT_EQ(item.annot.state.history, lat->bottom());
      EXPECT_EQ(*item.annot.policy, blp_policy());
    }
    EXPECT_GE(names.size(), 2u);
    EXPECT_LE(names.size(), 5u);
  }
}

Policy Fold(const std::vector<Policy>& ps) {
  Policy acc = ps.front();
  for (std::size_t i = 1; i < ps.size(); ++i) acc = policy_bin(BinOp::Oplus, acc, ps[i]);
  return acc;
}

std::vector<Policy> Aspects() {
  std::vector<Policy> out;
  for (auto t : testgen::kBlpAspects) out.push_back(parse_policy(t));
  return out;
}

// Any ordering of the eight aspects decides every interaction the same way.
TEST(BlpProperty, PermutationSymmetry) {
  auto aspects = Aspects();
  std::mt19937_64 rng(42);
  HarnessConfig cfg;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    auto net = random_net(seed, seed % 2 ? harness_lattice("diamond") : Chain(), cfg);
    std::shuffle(aspects.begin(), aspects.end(), rng);
    auto shuffled = std::make_shared<const Policy>(Fold(aspects));
    auto other = net;
    for (auto& item : other.items) item.annot.policy = shuffled;
    auto g1 = explore(net, 32);
    auto g2 = explore(other, 32);
    ASSERT_EQ(g1.edges.size(), g2.edges.size());
    for (std::size_t i = 0; i < g1.edges.size(); ++i)
      EXPECT_EQ(g1.edges[i].event.decision, g2.edges[i].event.decision);
  }
}

// X is cleared high but classified low; once it has read Hi, a low writer
// makes a low-classified tuple at X that carries a high history.
const char* kLaundering =
    "lattice { levels: 1, 2, 3; order: 1 < 2, 2 < 3; }\n"
    "location Hi { state <3, 3, 1, 3>; policy BLP; tuple <K>; }\n"
    "location X { state <3, 1, 1, 1>; policy BLP; process read(?x)@Hi . 0; }\n"
    "location W { state <1, 1, 1, 1>; policy BLP; process out(M)@X . 0; }\n"
    "location R { state <1, 1, 1, 1>; policy BLP; process read(?y)@X . 0 + in(?y)@X . 0; }\n";

TEST(BlpProperty, LaunderingNetIsSafeUnderBlp) {
  HarnessReport report;
  check_net(parse_scenario(kLaundering), 0, 32, report);
  EXPECT_TRUE(report.ok()) << report.to_text();
  EXPECT_GT(report.denied, 0u);
}

// Dropping any single aspect lets the harness find an insecure interaction
// that is granted.
TEST(BlpProperty, EveryAspectIsNeeded) {
  const auto aspects = Aspects();
  HarnessConfig cfg;
  for (std::size_t drop = 0; drop < aspects.size(); ++drop) {
    std::vector<Policy> kept;
    for (std::size_t i = 0; i < aspects.size(); ++i)
      if (i != drop) kept.push_back(aspects[i]);
    auto weak = std::make_shared<const Policy>(Fold(kept));
    HarnessReport report;
    auto laundering = parse_scenario(kLaundering);
    for (auto& item : laundering.items) item.annot.policy = weak;
    check_net(laundering, 0, 32, report);
    for (std::uint64_t seed = 0; seed < 400 && report.lemma1_failures == 0; ++seed) {
      auto net = random_net(seed, seed % 2 ? harness_lattice("diamond") : Chain(), cfg);
      for (auto& item : net.items) item.annot.policy = weak;
      check_net(net, seed, 32, report);
    }
    EXPECT_GT(report.lemma1_failures, 0u) << "without " << testgen::kBlpAspects[drop];
    EXPECT_EQ(report.lemma2_failures, 0u) << "without " << testgen::kBlpAspects[drop];
  }
}

}  // namespace
}  // namespace akb
