#include "akb/policy_eval.hpp"

#include <gtest/gtest.h>

#include <deque>
#include <functional>

#include "akb/blp.hpp"
#include "akb/error.hpp"
#include "akb/parser.hpp"
#include "akb/scenarios.hpp"
#include "support/aspect_texts.hpp"
#include "support/generators.hpp"

namespace akb {
namespace {

class PolicyEval : public ::testing::Test {
 protected:
  void SetUp() override {
    net_ = parse_scenario(
        "lattice { levels: 1, 2, 3; order: 1 < 2, 2 < 3; }\n"
        "location DB { state <1, 1, 1, 1>; policy true; tuple <threatlevel, high>; }\n");
    lat_ = net_.lattice.get();
  }

  // subject action with the given levels: S, C, O, Hs, Ht.
  InteractionView View(std::string subject, std::string_view action, const char* s, const char* c,
                       const char* o, const char* hs = "1", const char* ht = "1",
                       std::string_view cont = "0") {
    const auto& proc = procs_.emplace_back(parse_process(std::string(action) + " . " + std::string(cont)));
    InteractionView iv;
    iv.subject = std::move(subject);
    iv.action = proc.branches.at(0).action;
    iv.continuation = &proc.branches.at(0).cont;
    iv.levels = {L(s), L(c), L(o), L(hs), L(ht)};
    iv.net = &net_;
    return iv;
  }

  Level L(const char* name) const { return lat_->level(name); }

  Net net_;
  const Lattice* lat_ = nullptr;
  std::deque<Process> procs_;
};

TEST_F(PolicyEval, Constants) {
  auto iv = View("D", "read(?x)@B", "3", "2", "2");
  EXPECT_EQ(eval_policy(parse_policy("true"), iv), Four::True);
  EXPECT_EQ(eval_policy(parse_policy("false"), iv), Four::False);
  EXPECT_EQ(eval_policy(parse_policy("true (+) false"), iv), Four::Top);
  EXPECT_EQ(eval_policy(parse_policy("true (x) false"), iv), Four::Bottom);
  EXPECT_EQ(eval_policy(parse_policy("!(true (+) false)"), iv), Four::Top);
}

TEST_F(PolicyEval, PriorityFallsThroughBottom) {
  auto iv = View("D", "read(?x)@B", "3", "2", "2");
  auto undecided = "[ true if s :: out(_*)@t . P : true ]";
  EXPECT_EQ(eval_policy(parse_policy(std::string(undecided) + " > false"), iv), Four::False);
  EXPECT_EQ(eval_policy(parse_policy("true > false"), iv), Four::True);
}

TEST_F(PolicyEval, ReadUpAspect) {
  auto read_up = parse_policy(testgen::kBlpAspects[0]);
  EXPECT_EQ(eval_policy(read_up, View("D", "read(?x)@B", "3", "2", "2")), Four::True);
  EXPECT_EQ(eval_policy(read_up, View("D", "read(?x)@B", "1", "1", "3")), Four::False);
  EXPECT_EQ(eval_policy(read_up, View("D", "out(X)@B", "1", "1", "3")), Four::Bottom);
}

TEST_F(PolicyEval, RecForms) {
  auto iv = View("D", "read(?x)@B", "1", "1", "3");
  Substitution theta;
  LevelBinding lv = iv.levels;
  EXPECT_EQ(eval_rec(Rec{RecGeq{{LevKind::Ss, {}}, {LevKind::Ot, {}}}}, theta, lv, iv), Four::False);
  EXPECT_EQ(eval_rec(Rec{RecGeq{{LevKind::Lit, "2"}, {LevKind::Lit, "2"}}}, theta, lv, iv), Four::True);
  EXPECT_EQ(eval_rec(Rec{RecEq{LocRef::literal("A"), LocRef::literal("A")}}, theta, lv, iv), Four::True);
  EXPECT_THROW(eval_rec(Rec{RecEq{LocRef::var("q"), LocRef::literal("A")}}, theta, lv, iv), Error);
  try {
    (void)eval_rec(Rec{RecGeq{{LevKind::Lit, "9"}, {LevKind::Ss, {}}}}, theta, lv, iv);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownLevelName);
  }
}

TEST_F(PolicyEval, OccursInRecommendation) {
  auto future = parse_policy(testgen::kAirlineFuture);
  auto leak = View("Government", "read(\"pass\", ?d)@AirlineDB", "2", "2", "1", "1", "1",
                   "out(d)@PressRelease . 0");
  auto clean = View("Government", "read(\"pass\", ?d)@AirlineDB", "2", "2", "1", "1", "1",
                    "out(d)@Archive . 0");
  // The snapshot holds the tuple at DB, not at AirlineDB.
  EXPECT_EQ(eval_policy(future, clean), Four::Bottom);
  net_.items[0].name = "AirlineDB";
  EXPECT_EQ(eval_policy(future, leak), Four::False);
  EXPECT_EQ(eval_policy(future, clean), Four::True);
  auto other = View("Journalist", "read(\"pass\", ?d)@AirlineDB", "1", "1", "1");
  EXPECT_EQ(eval_policy(future, other), Four::Bottom);
}

TEST_F(PolicyEval, Conditions) {
  auto iv = View("D", "read(?x)@B", "1", "1", "1");
  Substitution theta;
  EXPECT_TRUE(eval_cond(Cond{CondConst{true}}, theta, iv));
  EXPECT_FALSE(eval_cond(Cond{CondEq{LocRef::literal("A"), LocRef::literal("B")}}, theta, iv));
  CondPresent present{{Pattern::literal("threatlevel"), Pattern::literal("high")}, LocRef::literal("DB")};
  EXPECT_TRUE(eval_cond(Cond{present}, theta, iv));
  present.tuple.pop_back();
  EXPECT_FALSE(eval_cond(Cond{present}, theta, iv));
  present.tuple.push_back(Pattern::rest());
  EXPECT_TRUE(eval_cond(Cond{present}, theta, iv));
  EXPECT_THROW(eval_cond(Cond{CondEq{LocRef::var("q"), LocRef::literal("A")}}, theta, iv), Error);
}

TEST_F(PolicyEval, CondFalseGivesBottom) {
  auto pol = parse_policy("[ false if s :: read(_*)@t . P : s = t ]");
  EXPECT_EQ(eval_policy(pol, View("D", "read(?x)@B", "1", "1", "1")), Four::Bottom);
  EXPECT_EQ(eval_policy(pol, View("B", "read(?x)@B", "1", "1", "1")), Four::False);
}

// Random interactions for the properties below.
class PolicyEvalProperty : public PolicyEval {
 protected:
  InteractionView Random(testgen::AstGen& gen) {
    static const char* levels[] = {"1", "2", "3"};
    static const char* actions[] = {"read(?x)@B", "in(?x, ?y)@DB", "out(A)@B", "out(\"pass\", K)@C",
                                    "read(threatlevel, ?z)@DB"};
    auto lv = [&] { return levels[gen.uniform(0, 2)]; };
    return View(gen.coin() ? "D" : "Government", actions[gen.uniform(0, 4)], lv(), lv(), lv(),
                lv(), lv(), gen.coin() ? "0" : "out(x)@PressRelease . 0");
  }
};

TEST_F(PolicyEvalProperty, KeywordMismatchIsBottom) {
  testgen::AstGen gen(21);
  for (int i = 0; i < 2000; ++i) {
    auto iv = Random(gen);
    Aspect asp{Rec{RecConst{gen.coin()}}, Cut{LocRef::var("s"), gen.action(true), "P"}, Cond{CondConst{true}}};
    for (auto& a : asp.cut.action.args)
      if (a.kind != PatternKind::Literal) a = Pattern::wildcard();
    asp.cut.action.target = LocRef::var("t");
    if (asp.cut.action.kind == iv.action.kind) continue;
    EXPECT_EQ(eval_aspect(asp, iv), Four::Bottom);
  }
}

TEST_F(PolicyEvalProperty, OplusCommutes) {
  testgen::AstGen gen(22);
  std::vector<Policy> pool;
  for (auto t : testgen::kBlpAspects) pool.push_back(parse_policy(t));
  pool.push_back(parse_policy(testgen::kAirlineFuture));
  pool.push_back(policy_const(true));
  pool.push_back(policy_const(false));
  for (int i = 0; i < 2000; ++i) {
    auto iv = Random(gen);
    const auto& p = gen.pick(pool);
    const auto& q = gen.pick(pool);
    EXPECT_EQ(eval_policy(policy_bin(BinOp::Oplus, p, q), iv),
              eval_policy(policy_bin(BinOp::Oplus, q, p), iv));
  }
}

TEST_F(PolicyEvalProperty, SingleBlpAspectNeverConflicts) {
  testgen::AstGen gen(23);
  for (int i = 0; i < 2000; ++i) {
    auto iv = Random(gen);
    for (auto t : testgen::kBlpAspects) EXPECT_NE(eval_policy(parse_policy(t), iv), Four::Top);
  }
}

TEST_F(PolicyEvalProperty, BooleanRecAgreesWithCond) {
  testgen::AstGen gen(24);
  auto iv = View("D", "read(?x)@B", "1", "1", "1");
  std::function<std::pair<Rec, Cond>(int)> make = [&](int depth) -> std::pair<Rec, Cond> {
    switch (depth <= 0 ? 0 : gen.uniform(0, 3)) {
      case 0: {
        bool v = gen.coin();
        return {Rec{RecConst{v}}, Cond{CondConst{v}}};
      }
      case 1: {
        auto [r, c] = make(depth - 1);
        return {Rec{RecNot{r}}, Cond{CondNot{c}}};
      }
      default: {
        auto op = gen.coin() ? BinOp::And : BinOp::Or;
        auto [r1, c1] = make(depth - 1);
        auto [r2, c2] = make(depth - 1);
        return {Rec{RecBin{op, r1, r2}}, Cond{CondBin{op, c1, c2}}};
      }
    }
  };
  for (int i = 0; i < 2000; ++i) {
    auto [rec, cond] = make(4);
    EXPECT_EQ(eval_rec(rec, {}, iv.levels, iv), from_bool(eval_cond(cond, {}, iv)));
  }
}

}  // namespace
}  // namespace akb
