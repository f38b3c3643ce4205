#include "akb/matcher.hpp"

#include <set>

#include "akb/error.hpp"

namespace akb {

namespace {

Token arg_token(const Pattern& p) {
  switch (p.kind) {
    case PatternKind::Literal: return {Token::Kind::Literal, p.name};
    case PatternKind::Var: return {Token::Kind::Var, p.name};
    case PatternKind::Binder: return {Token::Kind::Binder, p.name};
    case PatternKind::Wildcard: return {Token::Kind::Wildcard, "_"};
    case PatternKind::Rest: return {Token::Kind::Rest, "_*"};
  }
  return {};
}

Token loc_token(const LocRef& r) {
  return {r.is_var() ? Token::Kind::Var : Token::Kind::Literal, r.name};
}

TokenList action_tokens(const LocRef& subject, const Action& action) {
  TokenList out;
  out.push_back(loc_token(subject));
  out.push_back({Token::Kind::Keyword, std::string(to_string(action.kind))});
  for (const auto& a : action.args) out.push_back(arg_token(a));
  out.push_back(loc_token(action.target));
  return out;
}

bool is_arg_like(const Token& t) {
  return t.kind == Token::Kind::Literal || t.kind == Token::Kind::Var ||
         t.kind == Token::Kind::Binder;
}

bool align(const Token& c, const Token& a, Substitution& theta) {
  switch (c.kind) {
    case Token::Kind::Keyword:
      return a.kind == Token::Kind::Keyword && a.text == c.text;
    case Token::Kind::Literal:
      return a.kind == Token::Kind::Literal && a.text == c.text;
    case Token::Kind::Binder:
      return a.kind == Token::Kind::Binder && a.text == c.text;
    case Token::Kind::Wildcard:
      return is_arg_like(a);
    case Token::Kind::Var: {
      if (!is_arg_like(a)) return false;
      LocRef value = a.kind == Token::Kind::Literal ? LocRef::literal(a.text)
                                                    : LocRef::var(a.text);
      auto [it, inserted] = theta.bindings.emplace(c.text, value);
      return inserted || it->second == value;
    }
    case Token::Kind::ContVar:
      if (a.kind == Token::Kind::ContProc) {
        theta.continuation.emplace(c.text, *a.proc);
        return true;
      }
      return a.kind == Token::Kind::ContVar;
    case Token::Kind::Rest:
    case Token::Kind::ContProc:
      return false;
  }
  return false;
}

// Shared alignment loop; `rest` marks where a `_*` token sits in `cut`.
std::optional<Substitution> align_lists(const TokenList& cut,
                                        const TokenList& act) {
  std::optional<std::size_t> rest;
  for (std::size_t i = 0; i < cut.size(); ++i) {
    if (cut[i].kind == Token::Kind::Rest) {
      if (rest) return std::nullopt;
      rest = i;
    }
  }
  Substitution theta;
  if (!rest) {
    if (cut.size() != act.size()) return std::nullopt;
    for (std::size_t i = 0; i < cut.size(); ++i)
      if (!align(cut[i], act[i], theta)) return std::nullopt;
    return theta;
  }
  if (act.size() + 1 < cut.size()) return std::nullopt;
  const std::size_t consumed = act.size() + 1 - cut.size();
  for (std::size_t i = 0; i < *rest; ++i)
    if (!align(cut[i], act[i], theta)) return std::nullopt;
  for (std::size_t i = *rest; i < *rest + consumed; ++i)
    if (!is_arg_like(act[i])) return std::nullopt;
  for (std::size_t i = *rest + 1; i < cut.size(); ++i)
    if (!align(cut[i], act[i - 1 + consumed], theta)) return std::nullopt;
  return theta;
}

}  // namespace

TokenList extract(const LocRef& subject, const Action& action,
                  const std::string& cont_var) {
  TokenList out = action_tokens(subject, action);
  out.push_back({Token::Kind::ContVar, cont_var});
  return out;
}

TokenList extract(const LocRef& subject, const Action& action,
                  const Process& cont) {
  TokenList out = action_tokens(subject, action);
  out.push_back({Token::Kind::ContProc, "P", &cont});
  return out;
}

std::optional<Substitution> check(const TokenList& cut, const TokenList& act) {
  return align_lists(cut, act);
}

std::optional<Substitution> match(std::span<const Pattern> patterns,
                                  const Tuple& tuple) {
  if (patterns.size() != tuple.size()) return std::nullopt;
  Substitution theta;
  for (std::size_t i = 0; i < patterns.size(); ++i) {
    const auto& p = patterns[i];
    switch (p.kind) {
      case PatternKind::Literal:
        if (p.name != tuple[i]) return std::nullopt;
        break;
      case PatternKind::Binder: {
        auto value = LocRef::literal(tuple[i]);
        auto [it, inserted] = theta.bindings.emplace(p.name, value);
        if (!inserted && it->second != value) return std::nullopt;
        break;
      }
      case PatternKind::Wildcard:
        break;
      case PatternKind::Var:
      case PatternKind::Rest:
        throw Error(ErrorCode::OpenVariableInPattern,
                    "input pattern contains unresolved '" +
                        (p.kind == PatternKind::Var ? p.name : "_*") + "'");
    }
  }
  return theta;
}

bool tuple_matches(std::span<const Pattern> patterns, const Tuple& tuple) {
  std::size_t i = 0;
  for (const auto& p : patterns) {
    if (p.kind == PatternKind::Rest) return true;
    if (i >= tuple.size()) return false;
    switch (p.kind) {
      case PatternKind::Literal:
        if (p.name != tuple[i]) return false;
        break;
      case PatternKind::Wildcard:
      case PatternKind::Binder:
        break;
      default:
        return false;
    }
    ++i;
  }
  return i == tuple.size();
}

bool occurs_in(const Action& pattern, const Process& proc) {
  switch (proc.kind) {
    case ProcKind::Nil:
      return false;
    case ProcKind::Parallel:
    case ProcKind::Replicate:
      for (const auto& q : proc.parts)
        if (occurs_in(pattern, q)) return true;
      return false;
    case ProcKind::Choice: {
      // The subject slot is irrelevant here; use the same token on both sides.
      const LocRef anyone = LocRef::literal("");
      const TokenList pat = action_tokens(anyone, pattern);
      for (const auto& br : proc.branches) {
        if (align_lists(pat, action_tokens(anyone, br.action))) return true;
        if (occurs_in(pattern, br.cont)) return true;
      }
      return false;
    }
  }
  return false;
}

namespace {

Process substitute_scoped(const Process& proc, const Substitution& theta,
                          std::set<std::string>& shadowed) {
  auto lookup = [&](const std::string& v) -> const LocRef* {
    return shadowed.contains(v) ? nullptr : theta.find(v);
  };
  switch (proc.kind) {
    case ProcKind::Nil:
      return proc;
    case ProcKind::Parallel:
    case ProcKind::Replicate: {
      Process out = proc;
      for (auto& q : out.parts) q = substitute_scoped(q, theta, shadowed);
      return out;
    }
    case ProcKind::Choice: {
      Process out = proc;
      for (auto& br : out.branches) {
        for (auto& arg : br.action.args) {
          if (arg.kind != PatternKind::Var) continue;
          if (const LocRef* v = lookup(arg.name))
            arg = v->is_var() ? Pattern::var(v->name) : Pattern::literal(v->name);
        }
        if (br.action.target.is_var())
          if (const LocRef* v = lookup(br.action.target.name))
            br.action.target = *v;
        std::vector<std::string> fresh;
        for (const auto& arg : br.action.args)
          if (arg.kind == PatternKind::Binder && shadowed.insert(arg.name).second)
            fresh.push_back(arg.name);
        br.cont = substitute_scoped(br.cont, theta, shadowed);
        for (const auto& f : fresh) shadowed.erase(f);
      }
      return out;
    }
  }
  return proc;
}

}  // namespace

Process substitute(const Process& proc, const Substitution& theta) {
  if (theta.bindings.empty()) return proc;
  std::set<std::string> shadowed;
  return substitute_scoped(proc, theta, shadowed);
}

}  // namespace akb
