#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "akb/ast.hpp"
#include "akb/belnap.hpp"
#include "akb/lattice.hpp"

namespace akb::testgen {

// Random syntax trees covering every constructor, including names that need
// quoting. Shapes the concrete syntax cannot express (parallel with fewer
// than two parts, choice without branches) are never produced.
class AstGen {
 public:
  explicit AstGen(std::uint64_t seed) : rng_(seed) {}

  std::size_t uniform(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
  }
  bool coin(unsigned one_in = 2) { return uniform(1, one_in) == 1; }

  template <class T>
  const T& pick(const std::vector<T>& xs) {
    return xs[uniform(0, xs.size() - 1)];
  }

  std::string literal() {
    static const std::vector<std::string> names = {
        "A", "B", "Server", "X1", "0", "42", "Ss", "Ht", "a", "lower", "in", "true",
        "with space", "q\"uote", "back\\slash", "", "_", "x-y"};
    return pick(names);
  }

  std::string var() {
    static const std::vector<std::string> names = {"u", "v", "x", "data", "l_s", "p2", "x"};
    return pick(names);
  }

  std::string cont_var() {
    static const std::vector<std::string> names = {"P", "X", "Q", "k", "Cont"};
    return pick(names);
  }

  LocRef locref() { return coin() ? LocRef::var(var()) : LocRef::literal(literal()); }

  Pattern pattern(bool in_policy) {
    switch (uniform(0, in_policy ? 4 : 2)) {
      case 0: return Pattern::literal(literal());
      case 1: return Pattern::var(var());
      case 2: return Pattern::binder(var());
      case 3: return Pattern::wildcard();
      default: return Pattern::rest();
    }
  }

  Action action(bool in_policy) {
    Action a;
    a.kind = static_cast<ActionKind>(uniform(0, 2));
    const std::size_t n = uniform(0, 3);
    for (std::size_t i = 0; i < n; ++i) a.args.push_back(pattern(in_policy));
    a.target = locref();
    return a;
  }

  Process process(int depth) {
    const std::size_t top = depth <= 0 ? 0 : 3;
    switch (uniform(0, top)) {
      case 0:
        return coin(3) ? Process::nil() : Process::prefix(action(false), Process::nil());
      case 1: {
        std::vector<Branch> bs;
        const std::size_t n = uniform(1, 3);
        for (std::size_t i = 0; i < n; ++i) bs.push_back(Branch{action(false), process(depth - 1)});
        return Process::choice(std::move(bs));
      }
      case 2: {
        std::vector<Process> ps;
        const std::size_t n = uniform(2, 3);
        for (std::size_t i = 0; i < n; ++i) ps.push_back(process(depth - 1));
        return Process::parallel(std::move(ps));
      }
      default:
        return Process::replicate(process(depth - 1));
    }
  }

  LevExpr lev(const std::vector<std::string>& levels) {
    const std::size_t k = uniform(0, 5);
    if (k < 5) return LevExpr{static_cast<LevKind>(k), {}};
    return LevExpr{LevKind::Lit, pick(levels)};
  }

  Rec rec(int depth, const std::vector<std::string>& levels) {
    const std::size_t top = depth <= 0 ? 3 : 5;
    switch (uniform(0, top)) {
      case 0: return Rec{RecEq{locref(), locref()}};
      case 1: return Rec{RecGeq{lev(levels), lev(levels)}};
      case 2: return Rec{RecConst{coin()}};
      case 3: return Rec{RecOccurs{action(true), cont_var()}};
      case 4: return Rec{RecNot{rec(depth - 1, levels)}};
      default: {
        static const std::vector<BinOp> ops = {BinOp::Oplus, BinOp::Otimes, BinOp::Implies,
                                               BinOp::And, BinOp::Or};
        return Rec{RecBin{pick(ops), rec(depth - 1, levels), rec(depth - 1, levels)}};
      }
    }
  }

  Cond cond(int depth) {
    const std::size_t top = depth <= 0 ? 3 : 5;
    switch (uniform(0, top)) {
      case 0: return Cond{CondEq{locref(), locref()}};
      case 1: return Cond{CondConst{coin()}};
      case 2: return Cond{CondOccurs{action(true), cont_var()}};
      case 3: {
        CondPresent p;
        const std::size_t n = uniform(0, 3);
        for (std::size_t i = 0; i < n; ++i) p.tuple.push_back(pattern(true));
        p.target = locref();
        return Cond{std::move(p)};
      }
      case 4: return Cond{CondNot{cond(depth - 1)}};
      default:
        return Cond{CondBin{coin() ? BinOp::And : BinOp::Or, cond(depth - 1), cond(depth - 1)}};
    }
  }

  Aspect aspect(const std::vector<std::string>& levels) {
    Aspect a;
    a.rec = rec(2, levels);
    a.cut = Cut{locref(), action(true), cont_var()};
    a.cond = cond(2);
    return a;
  }

  Policy policy(int depth, const std::vector<std::string>& levels) {
    const std::size_t top = depth <= 0 ? 1 : 3;
    switch (uniform(0, top)) {
      case 0: return Policy{aspect(levels)};
      case 1: return policy_const(coin());
      case 2: return policy_not(policy(depth - 1, levels));
      default: {
        static const std::vector<BinOp> ops = {BinOp::Oplus, BinOp::Otimes, BinOp::Implies,
                                               BinOp::Priority, BinOp::And, BinOp::Or};
        return policy_bin(pick(ops), policy(depth - 1, levels), policy(depth - 1, levels));
      }
    }
  }

  LatticePtr lattice() {
    switch (uniform(0, 3)) {
      case 0: return std::make_shared<const Lattice>(Lattice::chain({"1", "2", "3"}));
      case 1: return std::make_shared<const Lattice>(Lattice::diamond());
      case 2:
        return std::make_shared<const Lattice>(
            Lattice::chain({"public", "restricted", "private"}));
      default:
        return std::make_shared<const Lattice>(Lattice::build(
            {"low", "if", "Ss", "9", "top level"},
            {{"low", "if"}, {"low", "Ss"}, {"if", "9"}, {"Ss", "9"}, {"9", "top level"}}));
    }
  }

  Net net(const Policy* preset = nullptr) {
    Net n;
    n.lattice = lattice();
    const auto& levels = n.lattice->names();
    const std::size_t count = uniform(0, 4);
    for (std::size_t i = 0; i < count; ++i) {
      LocatedItem item;
      item.name = literal();
      auto lv = [&] { return n.lattice->at(uniform(0, n.lattice->size() - 1)); };
      item.annot.state = LocalizedState{lv(), lv(), lv(), lv()};
      if (preset && coin(3))
        item.annot.policy = std::make_shared<const Policy>(*preset);
      else if (!coin(6))
        item.annot.policy = std::make_shared<const Policy>(policy(2, levels));
      if (coin()) {
        Tuple t;
        const std::size_t k = uniform(0, 3);
        for (std::size_t j = 0; j < k; ++j) t.push_back(literal());
        item.body = std::move(t);
      } else {
        item.body = process(3);
      }
      item.declared = !coin(5);
      item.uid = n.next_uid++;
      n.items.push_back(std::move(item));
    }
    return n;
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace akb::testgen
