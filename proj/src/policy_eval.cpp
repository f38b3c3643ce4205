#include "akb/policy_eval.hpp"

#include "akb/error.hpp"

namespace akb {

namespace {

[[noreturn]] void unresolved(const std::string& var) {
  throw Error(ErrorCode::UnresolvedVariable,
              "variable '" + var + "' is not bound by the cut");
}

LocRef resolve(const LocRef& r, const Substitution& theta) {
  if (!r.is_var()) return r;
  if (const LocRef* v = theta.find(r.name)) return *v;
  unresolved(r.name);
}

Pattern resolve(const Pattern& p, const Substitution& theta) {
  if (p.kind != PatternKind::Var) return p;
  if (const LocRef* v = theta.find(p.name))
    return v->is_var() ? Pattern::var(v->name) : Pattern::literal(v->name);
  unresolved(p.name);
}

bool occurs(const Action& pattern, const std::string& cont, const Substitution& theta) {
  if (!theta.continuation || theta.continuation->first != cont) unresolved(cont);
  Action ground = pattern;
  for (auto& a : ground.args) a = resolve(a, theta);
  ground.target = resolve(ground.target, theta);
  return occurs_in(ground, theta.continuation->second);
}

Level level_of(const LevExpr& v, const LevelBinding& b, const Lattice& lat) {
  switch (v.kind) {
    case LevKind::Ss: return b.gS;
    case LevKind::Cs: return b.gC;
    case LevKind::Hs: return b.gHs;
    case LevKind::Ot: return b.gO;
    case LevKind::Ht: return b.gHt;
    case LevKind::Lit: return lat.level(v.level);
  }
  return lat.bottom();
}

}  // namespace

Four apply_op(BinOp op, Four a, Four b) {
  switch (op) {
    case BinOp::Oplus: return oplus(a, b);
    case BinOp::Otimes: return otimes(a, b);
    case BinOp::Implies: return implies(a, b);
    case BinOp::Priority: return priority(a, b);
    case BinOp::And: return band(a, b);
    case BinOp::Or: return bor(a, b);
  }
  return Four::Bottom;
}

Four eval_rec(const Rec& rec, const Substitution& theta, const LevelBinding& levels,
              const InteractionView& iv) {
  return std::visit(
      Overloaded{
          [&](const RecEq& e) {
            return from_bool(resolve(e.lhs, theta) == resolve(e.rhs, theta));
          },
          [&](const RecGeq& g) {
            const Lattice& lat = *iv.net->lattice;
            return from_bool(
                lat.leq(level_of(g.rhs, levels, lat), level_of(g.lhs, levels, lat)));
          },
          [](const RecConst& c) { return from_bool(c.value); },
          [&](const RecOccurs& o) { return from_bool(occurs(o.pattern, o.cont, theta)); },
          [&](const RecNot& n) { return bnot(eval_rec(*n.arg, theta, levels, iv)); },
          [&](const RecBin& b) {
            // Both sides are evaluated so unresolved variables always surface.
            const Four l = eval_rec(*b.lhs, theta, levels, iv);
            const Four r = eval_rec(*b.rhs, theta, levels, iv);
            return apply_op(b.op, l, r);
          },
      },
      rec.node);
}

bool eval_cond(const Cond& cond, const Substitution& theta, const InteractionView& iv) {
  return std::visit(
      Overloaded{
          [&](const CondEq& e) { return resolve(e.lhs, theta) == resolve(e.rhs, theta); },
          [](const CondConst& c) { return c.value; },
          [&](const CondOccurs& o) { return occurs(o.pattern, o.cont, theta); },
          [&](const CondPresent& p) {
            std::vector<Pattern> pats;
            pats.reserve(p.tuple.size());
            for (const auto& q : p.tuple) pats.push_back(resolve(q, theta));
            const LocRef target = resolve(p.target, theta);
            if (target.is_var()) return false;
            for (const auto& item : iv.net->items)
              if (item.name == target.name && item.is_tuple() &&
                  tuple_matches(pats, item.tuple()))
                return true;
            return false;
          },
          [&](const CondNot& n) { return !eval_cond(*n.arg, theta, iv); },
          [&](const CondBin& b) {
            const bool l = eval_cond(*b.lhs, theta, iv);
            const bool r = eval_cond(*b.rhs, theta, iv);
            return apply_op(b.op, from_bool(l), from_bool(r)) == Four::True;
          },
      },
      cond.node);
}

Four eval_aspect(const Aspect& aspect, const InteractionView& iv) {
  const LocRef subject = LocRef::literal(iv.subject);
  const auto theta = check(extract(aspect.cut.subject, aspect.cut.action, aspect.cut.cont),
                           extract(subject, iv.action, *iv.continuation));
  if (!theta) return Four::Bottom;
  if (!eval_cond(aspect.cond, *theta, iv)) return Four::Bottom;
  return eval_rec(aspect.rec, *theta, iv.levels, iv);
}

Four eval_policy(const Policy& policy, const InteractionView& iv) {
  return std::visit(
      Overloaded{
          [&](const Aspect& a) { return eval_aspect(a, iv); },
          [](const PolConst& c) { return from_bool(c.value); },
          [&](const PolNot& n) { return bnot(eval_policy(*n.arg, iv)); },
          [&](const PolBin& b) {
            const Four l = eval_policy(*b.lhs, iv);
            const Four r = eval_policy(*b.rhs, iv);
            return apply_op(b.op, l, r);
          },
      },
      policy.node);
}

}  // namespace akb
