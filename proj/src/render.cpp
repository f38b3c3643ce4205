#include <sstream>

#include "akb/blp.hpp"
#include "akb/parser.hpp"
#include "syntax.hpp"

namespace akb {

namespace {

using detail::level_text;
using detail::literal_text;
using detail::word_text;

// Binding tightness of binary operators; larger binds looser.
int tier(BinOp op) {
  switch (op) {
    case BinOp::And:
    case BinOp::Or: return 1;
    case BinOp::Oplus:
    case BinOp::Otimes: return 2;
    case BinOp::Implies: return 3;
    case BinOp::Priority: return 4;
  }
  return 4;
}

std::string loc_text(const LocRef& r) {
  return r.is_var() ? r.name : literal_text(r.name);
}

std::string pattern_text(const Pattern& p) {
  switch (p.kind) {
    case PatternKind::Literal: return literal_text(p.name);
    case PatternKind::Var: return p.name;
    case PatternKind::Binder: return "?" + p.name;
    case PatternKind::Wildcard: return "_";
    case PatternKind::Rest: return "_*";
  }
  return "_";
}

std::string patterns_text(const std::vector<Pattern>& ps) {
  std::string out = "(";
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (i) out += ", ";
    out += pattern_text(ps[i]);
  }
  return out + ")";
}

std::string lev_text(const LevExpr& v) {
  switch (v.kind) {
    case LevKind::Ss: return "Ss";
    case LevKind::Cs: return "Cs";
    case LevKind::Hs: return "Hs";
    case LevKind::Ot: return "Ot";
    case LevKind::Ht: return "Ht";
    case LevKind::Lit: return level_text(v.level);
  }
  return "?";
}

// Operands of a binary node: the left side keeps its own tier unparenthesized
// (left associativity), the right side needs strictly tighter binding.
template <class Node, class Bin, class Fn>
std::string bin_text(const Bin& b, Fn&& self) {
  auto side = [&](const Node& n, bool right) {
    if (const auto* inner = std::get_if<Bin>(&n.node)) {
      const int t = tier(inner->op);
      if (t > tier(b.op) || (right && t == tier(b.op))) return "(" + self(n) + ")";
    }
    return self(n);
  };
  return side(*b.lhs, false) + " " + std::string(to_string(b.op)) + " " +
         side(*b.rhs, true);
}

std::string rec_text(const Rec& r);
std::string cond_text(const Cond& c);

std::string rec_text(const Rec& r) {
  return std::visit(
      Overloaded{
          [](const RecEq& e) { return loc_text(e.lhs) + " = " + loc_text(e.rhs); },
          [](const RecGeq& g) { return lev_text(g.lhs) + " >= " + lev_text(g.rhs); },
          [](const RecConst& c) { return std::string(c.value ? "true" : "false"); },
          [](const RecOccurs& o) {
            return render_action(o.pattern) + " occurs-in " + o.cont;
          },
          [](const RecNot& n) {
            const bool wrap = std::holds_alternative<RecBin>(n.arg->node);
            return wrap ? "!(" + rec_text(*n.arg) + ")" : "!" + rec_text(*n.arg);
          },
          [](const RecBin& b) { return bin_text<Rec>(b, rec_text); },
      },
      r.node);
}

std::string cond_text(const Cond& c) {
  return std::visit(
      Overloaded{
          [](const CondEq& e) { return loc_text(e.lhs) + " = " + loc_text(e.rhs); },
          [](const CondConst& k) { return std::string(k.value ? "true" : "false"); },
          [](const CondOccurs& o) {
            return render_action(o.pattern) + " occurs-in " + o.cont;
          },
          [](const CondPresent& p) {
            return "test" + patterns_text(p.tuple) + "@" + loc_text(p.target);
          },
          [](const CondNot& n) {
            const bool wrap = std::holds_alternative<CondBin>(n.arg->node);
            return wrap ? "!(" + cond_text(*n.arg) + ")" : "!" + cond_text(*n.arg);
          },
          [](const CondBin& b) { return bin_text<Cond>(b, cond_text); },
      },
      c.node);
}

std::string aspect_text(const Aspect& a) {
  return "[ " + rec_text(a.rec) + " if " + loc_text(a.cut.subject) + " :: " +
         render_action(a.cut.action) + " . " + a.cut.cont + " : " +
         cond_text(a.cond) + " ]";
}

std::string policy_text(const Policy& p) {
  if (auto name = policy_preset_name(p)) return *name;
  return std::visit(
      Overloaded{
          [](const Aspect& a) { return aspect_text(a); },
          [](const PolConst& c) { return std::string(c.value ? "true" : "false"); },
          [](const PolNot& n) {
            const bool wrap = std::holds_alternative<PolBin>(n.arg->node) &&
                              !policy_preset_name(*n.arg);
            return wrap ? "!(" + policy_text(*n.arg) + ")" : "!" + policy_text(*n.arg);
          },
          [](const PolBin& b) {
            auto side = [&](const Policy& q, bool right) {
              const auto* inner = std::get_if<PolBin>(&q.node);
              if (inner && !policy_preset_name(q)) {
                const int t = tier(inner->op);
                if (t > tier(b.op) || (right && t == tier(b.op)))
                  return "(" + policy_text(q) + ")";
              }
              return policy_text(q);
            };
            return side(*b.lhs, false) + " " + std::string(to_string(b.op)) + " " +
                   side(*b.rhs, true);
          },
      },
      p.node);
}

enum class ProcCtx { Top, Part, Cont };

std::string process_text(const Process& p, ProcCtx ctx) {
  switch (p.kind) {
    case ProcKind::Nil:
      return "0";
    case ProcKind::Replicate:
      return "*" + process_text(p.body(), ProcCtx::Cont);
    case ProcKind::Parallel: {
      std::string out;
      for (std::size_t i = 0; i < p.parts.size(); ++i) {
        if (i) out += " | ";
        out += process_text(p.parts[i], ProcCtx::Part);
      }
      return ctx == ProcCtx::Top ? out : "(" + out + ")";
    }
    case ProcKind::Choice: {
      std::string out;
      for (std::size_t i = 0; i < p.branches.size(); ++i) {
        if (i) out += " + ";
        out += render_action(p.branches[i].action) + " . " +
               process_text(p.branches[i].cont, ProcCtx::Cont);
      }
      return ctx == ProcCtx::Cont && p.branches.size() > 1 ? "(" + out + ")" : out;
    }
  }
  return "0";
}

}  // namespace

std::string render_action(const Action& a) {
  return std::string(to_string(a.kind)) + patterns_text(a.args) + "@" +
         loc_text(a.target);
}

std::string render_pattern(const Pattern& p) { return pattern_text(p); }

std::string render_tuple(const Tuple& t) {
  std::string out = "<";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += ", ";
    out += word_text(t[i]);
  }
  return out + ">";
}

std::string render_process(const Process& p) { return process_text(p, ProcCtx::Top); }

std::string render_policy(const Policy& p) { return policy_text(p); }

std::string render(const Net& net) {
  std::ostringstream os;
  const Lattice& lat = *net.lattice;
  os << "lattice {\n  levels: ";
  for (std::size_t i = 0; i < lat.size(); ++i)
    os << (i ? ", " : "") << level_text(lat.names()[i]);
  os << ";\n";
  const auto edges = lat.covering_edges();
  if (!edges.empty()) {
    os << "  order: ";
    for (std::size_t i = 0; i < edges.size(); ++i)
      os << (i ? ", " : "") << level_text(lat.names()[edges[i].first]) << " < "
         << level_text(lat.names()[edges[i].second]);
    os << ";\n";
  }
  os << "}\n";
  for (const auto& item : net.items) {
    const auto& st = item.annot.state;
    os << "\nlocation " << word_text(item.name) << " {\n";
    os << "  state <" << level_text(lat.name(st.clearance)) << ", "
       << level_text(lat.name(st.current)) << ", " << level_text(lat.name(st.history))
       << ", " << level_text(lat.name(st.classification)) << ">;\n";
    if (item.annot.policy) os << "  policy " << render_policy(*item.annot.policy) << ";\n";
    if (item.is_tuple())
      os << "  tuple " << render_tuple(item.tuple()) << ";\n";
    else
      os << "  process " << render_process(item.process()) << ";\n";
    if (!item.declared) os << "  virtual;\n";
    os << "}\n";
  }
  return os.str();
}

}  // namespace akb
