#include "akb/ast.hpp"

#include <functional>

namespace akb {

std::string_view to_string(ActionKind kind) {
  switch (kind) {
    case ActionKind::Out: return "out";
    case ActionKind::In: return "in";
    case ActionKind::Read: return "read";
  }
  return "?";
}

std::string_view to_string(BinOp op) {
  switch (op) {
    case BinOp::Oplus: return "(+)";
    case BinOp::Otimes: return "(x)";
    case BinOp::Implies: return "=>";
    case BinOp::Priority: return ">";
    case BinOp::And: return "&&";
    case BinOp::Or: return "||";
  }
  return "?";
}

Process Process::parallel(std::vector<Process> ps) {
  Process p;
  p.kind = ProcKind::Parallel;
  p.parts = std::move(ps);
  return p;
}

Process Process::choice(std::vector<Branch> bs) {
  Process p;
  p.kind = ProcKind::Choice;
  p.branches = std::move(bs);
  return p;
}

Process Process::prefix(Action a, Process cont) {
  std::vector<Branch> bs;
  bs.push_back(Branch{std::move(a), std::move(cont)});
  return choice(std::move(bs));
}

Process Process::replicate(Process body) {
  Process p;
  p.kind = ProcKind::Replicate;
  p.parts.push_back(std::move(body));
  return p;
}

bool operator==(const Process& a, const Process& b) {
  return a.kind == b.kind && a.parts == b.parts && a.branches == b.branches;
}

namespace {

void collect_free(const Process& p, std::set<std::string>& bound,
                  std::set<std::string>& out) {
  switch (p.kind) {
    case ProcKind::Nil:
      return;
    case ProcKind::Parallel:
    case ProcKind::Replicate:
      for (const auto& q : p.parts) collect_free(q, bound, out);
      return;
    case ProcKind::Choice:
      for (const auto& br : p.branches) {
        // Arguments and target live in the outer scope; binders scope over
        // the continuation only.
        for (const auto& arg : br.action.args)
          if (arg.kind == PatternKind::Var && !bound.contains(arg.name))
            out.insert(arg.name);
        const auto& t = br.action.target;
        if (t.is_var() && !bound.contains(t.name)) out.insert(t.name);
        std::vector<std::string> fresh;
        for (const auto& arg : br.action.args)
          if (arg.kind == PatternKind::Binder && bound.insert(arg.name).second)
            fresh.push_back(arg.name);
        collect_free(br.cont, bound, out);
        for (const auto& f : fresh) bound.erase(f);
      }
      return;
  }
}

}  // namespace

std::set<std::string> free_variables(const Process& p) {
  std::set<std::string> bound, out;
  collect_free(p, bound, out);
  return out;
}

Policy policy_bin(BinOp op, Policy lhs, Policy rhs) {
  return Policy{PolBin{op, Box<Policy>(std::move(lhs)), Box<Policy>(std::move(rhs))}};
}

Policy policy_not(Policy arg) { return Policy{PolNot{Box<Policy>(std::move(arg))}}; }

Policy policy_const(bool value) { return Policy{PolConst{value}}; }

std::set<std::string> cut_variables(const Cut& cut) {
  std::set<std::string> vars;
  if (cut.subject.is_var()) vars.insert(cut.subject.name);
  if (cut.action.target.is_var()) vars.insert(cut.action.target.name);
  for (const auto& a : cut.action.args)
    if (a.kind == PatternKind::Var) vars.insert(a.name);
  return vars;
}

// ---------------------------------------------------------------------------

bool equivalent(const Net& a, const Net& b) {
  if (!a.lattice || !b.lattice) return a.lattice == b.lattice;
  if (!a.lattice->same_shape(*b.lattice)) return false;
  if (a.items.size() != b.items.size()) return false;
  auto same_level = [](Level x, Level y) { return x.index() == y.index(); };
  for (std::size_t i = 0; i < a.items.size(); ++i) {
    const auto& x = a.items[i];
    const auto& y = b.items[i];
    const auto& s = x.annot.state;
    const auto& t = y.annot.state;
    if (x.name != y.name || x.declared != y.declared || !(x.body == y.body))
      return false;
    if (!same_level(s.clearance, t.clearance) ||
        !same_level(s.current, t.current) ||
        !same_level(s.history, t.history) ||
        !same_level(s.classification, t.classification))
      return false;
    if (!x.annot.policy || !y.annot.policy) {
      if (x.annot.policy != y.annot.policy) return false;
    } else if (!(*x.annot.policy == *y.annot.policy)) {
      return false;
    }
  }
  return true;
}

namespace {

class Validator {
 public:
  Validator(const Net& net, std::vector<Diagnostic>& out)
      : net_(net), out_(out) {}

  void item(const LocatedItem& it) {
    where_ = it.name;
    const auto& st = it.annot.state;
    const Lattice& lat = *net_.lattice;
    bool owned = lat.owns(st.clearance) && lat.owns(st.current) &&
                 lat.owns(st.history) && lat.owns(st.classification);
    if (!owned) {
      report("state uses a level outside the net's lattice");
    } else {
      if (!lat.leq(st.current, st.clearance))
        report("current level " + lat.name(st.current) +
               " exceeds clearance " + lat.name(st.clearance));
      if (it.is_tuple() && it.declared &&
          (st.clearance != st.classification || st.current != st.classification))
        report("tuple location must have clearance = current = classification");
    }
    if (!it.annot.policy) {
      report("missing policy");
    } else {
      policy(*it.annot.policy);
    }
    if (!it.is_tuple()) {
      process(it.process());
      for (const auto& v : free_variables(it.process()))
        report("free variable '" + v + "' in process");
    }
  }

 private:
  void report(std::string msg) { out_.push_back({where_, std::move(msg)}); }

  void process(const Process& p) {
    switch (p.kind) {
      case ProcKind::Nil: return;
      case ProcKind::Parallel:
        for (const auto& q : p.parts) process(q);
        return;
      case ProcKind::Replicate:
        if (p.parts.size() != 1) report("replication must have exactly one body");
        for (const auto& q : p.parts) process(q);
        return;
      case ProcKind::Choice:
        if (p.branches.empty()) report("choice without branches");
        for (const auto& br : p.branches) {
          for (const auto& arg : br.action.args) {
            if (arg.kind == PatternKind::Wildcard || arg.kind == PatternKind::Rest)
              report("wildcard in executable action");
            if (arg.kind == PatternKind::Binder && br.action.kind == ActionKind::Out)
              report("out action binds ?" + arg.name);
          }
          process(br.cont);
        }
        return;
    }
  }

  void level(const LevExpr& e) {
    if (e.kind == LevKind::Lit && !net_.lattice->find(e.level))
      report("policy refers to undeclared level '" + e.level + "'");
  }

  void locref(const LocRef& r) {
    if (r.is_var() && !vars_.contains(r.name))
      report("policy variable '" + r.name + "' is not bound by the cut");
  }

  void action_pattern(const Action& a, bool in_cut) {
    for (std::size_t i = 0; i < a.args.size(); ++i) {
      const auto& arg = a.args[i];
      if (arg.kind == PatternKind::Binder)
        report("binder ?" + arg.name + " inside a policy pattern");
      if (arg.kind == PatternKind::Rest && i + 1 != a.args.size())
        report("_* must be the last argument pattern");
      if (!in_cut && arg.kind == PatternKind::Var && !vars_.contains(arg.name))
        report("policy variable '" + arg.name + "' is not bound by the cut");
    }
    if (!in_cut) locref(a.target);
  }

  void cont(const std::string& x) {
    if (x != cont_)
      report("occurs-in refers to '" + x + "' but the cut binds '" + cont_ + "'");
  }

  void rec(const Rec& r) {
    std::visit(Overloaded{
                   [&](const RecEq& e) { locref(e.lhs); locref(e.rhs); },
                   [&](const RecNot& n) { rec(*n.arg); },
                   [&](const RecBin& b) {
                     if (b.op == BinOp::Priority) report("priority is not a recommendation operator");
                     rec(*b.lhs);
                     rec(*b.rhs);
                   },
                   [&](const RecConst&) {},
                   [&](const RecOccurs& o) { action_pattern(o.pattern, false); cont(o.cont); },
                   [&](const RecGeq& g) { level(g.lhs); level(g.rhs); },
               },
               r.node);
  }

  void cond(const Cond& c) {
    std::visit(Overloaded{
                   [&](const CondEq& e) { locref(e.lhs); locref(e.rhs); },
                   [&](const CondNot& n) { cond(*n.arg); },
                   [&](const CondBin& b) {
                     if (b.op != BinOp::And && b.op != BinOp::Or)
                       report("conditions combine only with && and ||");
                     cond(*b.lhs);
                     cond(*b.rhs);
                   },
                   [&](const CondConst&) {},
                   [&](const CondOccurs& o) { action_pattern(o.pattern, false); cont(o.cont); },
                   [&](const CondPresent& p) {
                     for (const auto& arg : p.tuple) {
                       if (arg.kind == PatternKind::Binder)
                         report("binder ?" + arg.name + " inside a policy pattern");
                       if (arg.kind == PatternKind::Var && !vars_.contains(arg.name))
                         report("policy variable '" + arg.name + "' is not bound by the cut");
                     }
                     locref(p.target);
                   },
               },
               c.node);
  }

  void policy(const Policy& p) {
    std::visit(Overloaded{
                   [&](const Aspect& a) {
                     vars_ = cut_variables(a.cut);
                     cont_ = a.cut.cont;
                     action_pattern(a.cut.action, true);
                     rec(a.rec);
                     cond(a.cond);
                   },
                   [&](const PolNot& n) { policy(*n.arg); },
                   [&](const PolBin& b) { policy(*b.lhs); policy(*b.rhs); },
                   [&](const PolConst&) {},
               },
               p.node);
  }

  const Net& net_;
  std::vector<Diagnostic>& out_;
  std::string where_;
  std::set<std::string> vars_;
  std::string cont_;
};

}  // namespace

std::vector<Diagnostic> validate(const Net& net) {
  std::vector<Diagnostic> out;
  if (!net.lattice) {
    out.push_back({"", "net has no lattice"});
    return out;
  }
  Validator v(net, out);
  for (const auto& it : net.items) v.item(it);
  return out;
}

}  // namespace akb
