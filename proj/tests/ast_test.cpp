#include "akb/ast.hpp"

#include <gtest/gtest.h>

#include <string>

#include "akb/parser.hpp"
#include "akb/scenarios.hpp"

namespace akb {
namespace {

const char* kHeader = "lattice { levels: 1, 2, 3; order: 1 < 2, 2 < 3; }\n";

Net Parse(const std::string& locations) { return parse_scenario(kHeader + locations); }

std::string Messages(const std::vector<Diagnostic>& ds) {
  std::string out;
  for (const auto& d : ds) out += d.location + ": " + d.message + "\n";
  return out;
}

TEST(Validate, BuiltinScenariosAreClean) {
  for (const auto& [name, net] : builtin_scenarios())
    EXPECT_TRUE(validate(net).empty()) << name << "\n" << Messages(validate(net));
}

TEST(Validate, TupleStateEquality) {
  auto net = Parse("location B { state <3, 2, 1, 2>; policy BLP; tuple <Data>; }");
  auto ds = validate(net);
  ASSERT_EQ(ds.size(), 1u) << Messages(ds);
  EXPECT_EQ(ds[0].location, "B");
  EXPECT_NE(ds[0].message.find("clearance = current = classification"), std::string::npos);
}

TEST(Validate, OutWithBinder) {
  auto net = Parse("location A { state <1, 1, 1, 1>; policy BLP; process out(?u)@A . 0; }");
  auto ds = validate(net);
  ASSERT_EQ(ds.size(), 1u) << Messages(ds);
  EXPECT_NE(ds[0].message.find("out action binds ?u"), std::string::npos);
}

TEST(Validate, CurrentAboveClearance) {
  auto ds = validate(Parse("location A { state <1, 2, 1, 1>; policy BLP; process 0; }"));
  ASSERT_EQ(ds.size(), 1u) << Messages(ds);
  EXPECT_NE(ds[0].message.find("exceeds clearance"), std::string::npos);
}

TEST(Validate, FreeVariableAndWildcard) {
  auto ds = validate(Parse(
      "location A { state <1, 1, 1, 1>; policy BLP; process out(x)@A . 0 | read(_)@A . 0; }"));
  EXPECT_EQ(ds.size(), 2u) << Messages(ds);
  EXPECT_NE(Messages(ds).find("free variable 'x'"), std::string::npos);
  EXPECT_NE(Messages(ds).find("wildcard in executable action"), std::string::npos);
}

TEST(Validate, BinderScopesOverContinuationOnly) {
  EXPECT_TRUE(validate(Parse("location A { state <1, 1, 1, 1>; policy BLP;"
                             " process read(?x)@B . out(x)@A . 0; }"))
                  .empty());
  auto ds = validate(Parse("location A { state <1, 1, 1, 1>; policy BLP;"
                           " process read(?x)@B . 0 | out(x)@A . 0; }"));
  EXPECT_EQ(ds.size(), 1u) << Messages(ds);
}

TEST(Validate, MissingPolicy) {
  auto ds = validate(Parse("location A { state <1, 1, 1, 1>; process 0; }"));
  ASSERT_EQ(ds.size(), 1u);
  EXPECT_EQ(ds[0].message, "missing policy");
}

TEST(Validate, PolicyProblems) {
  auto ds = validate(Parse(
      "location A { state <1, 1, 1, 1>;"
      " policy [ Ss >= 7 if ls :: read(?v, _*, _)@lt . X : test(w)@lt ]"
      "   (+) [ true if ls :: out()@lt . X : out()@u occurs-in Y ];"
      " process 0; }"));
  const auto text = Messages(ds);
  EXPECT_NE(text.find("undeclared level '7'"), std::string::npos) << text;
  EXPECT_NE(text.find("binder ?v"), std::string::npos) << text;
  EXPECT_NE(text.find("_* must be the last"), std::string::npos) << text;
  EXPECT_NE(text.find("'w' is not bound"), std::string::npos) << text;
  EXPECT_NE(text.find("'u' is not bound"), std::string::npos) << text;
  EXPECT_NE(text.find("occurs-in refers to 'Y'"), std::string::npos) << text;
}

TEST(Validate, PriorityInsideRecommendation) {
  auto net = Parse("location A { state <1, 1, 1, 1>; policy [ true if ls :: out()@lt . X : true ]; process 0; }");
  auto asp = std::get<Aspect>(net.items[0].annot.policy->node);
  asp.rec = Rec{RecBin{BinOp::Priority, Rec{RecConst{true}}, Rec{RecConst{false}}}};
  net.items[0].annot.policy = std::make_shared<const Policy>(Policy{asp});
  auto ds = validate(net);
  ASSERT_EQ(ds.size(), 1u) << Messages(ds);
  EXPECT_EQ(ds[0].message, "priority is not a recommendation operator");
}

TEST(Validate, DoesNotMutate) {
  auto net = Parse("location B { state <3, 2, 1, 2>; policy BLP; tuple <Data>; }");
  auto before = render(net);
  (void)validate(net);
  EXPECT_EQ(render(net), before);
}

TEST(Ast, FreeVariables) {
  auto p = parse_process("read(?x)@B . out(x, y)@z . 0 | *in(?y)@y . 0");
  EXPECT_EQ(free_variables(p), (std::set<std::string>{"y", "z"}));
}

TEST(Ast, CutVariables) {
  auto pol = parse_policy("[ true if u :: read(\"pass\", d, _)@l . P : true ]");
  const auto& asp = std::get<Aspect>(pol.node);
  EXPECT_EQ(cut_variables(asp.cut), (std::set<std::string>{"u", "d", "l"}));
}

TEST(Ast, EquivalenceIgnoresUidsButNotDeclared) {
  auto a = *builtin_net("fig1b");
  auto b = *builtin_net("fig1b");
  b.items[0].uid += 100;
  EXPECT_TRUE(equivalent(a, b));
  b.items[0].declared = false;
  EXPECT_FALSE(equivalent(a, b));
  auto c = *builtin_net("fig1a");
  EXPECT_FALSE(equivalent(a, c));
}

TEST(Ast, ProcessFactories) {
  auto nil = Process::nil();
  EXPECT_TRUE(nil.is_nil());
  Action a{ActionKind::Out, {Pattern::literal("X")}, LocRef::literal("A")};
  auto p = Process::prefix(a, nil);
  ASSERT_EQ(p.kind, ProcKind::Choice);
  ASSERT_EQ(p.branches.size(), 1u);
  EXPECT_EQ(p.branches[0].action, a);
  auto r = Process::replicate(p);
  EXPECT_EQ(r.body(), p);
}

}  // namespace
}  // namespace akb
