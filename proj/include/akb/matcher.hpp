#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "akb/ast.hpp"

namespace akb {

struct Token {
  enum class Kind { Literal, Var, Binder, Wildcard, Rest, Keyword, ContVar, ContProc };
  Kind kind = Kind::Literal;
  std::string text;
  const Process* proc = nullptr;  // ContProc only

  friend bool operator==(const Token& a, const Token& b) {
    return a.kind == b.kind && a.text == b.text &&
           (a.kind != Kind::ContProc || *a.proc == *b.proc);
  }
};

// Flattened action-with-continuation: subject, keyword, args..., target,
// continuation.
using TokenList = std::vector<Token>;

// Result of matching a cut against an interaction, or a pattern against a
// tuple. Cut variables aligned with a binder `?u` of the actual action are
// bound to the process variable u.
struct Substitution {
  std::map<std::string, LocRef> bindings;
  std::optional<std::pair<std::string, Process>> continuation;

  const LocRef* find(const std::string& var) const {
    auto it = bindings.find(var);
    return it == bindings.end() ? nullptr : &it->second;
  }
  friend bool operator==(const Substitution&, const Substitution&) = default;
};

TokenList extract(const LocRef& subject, const Action& action,
                  const std::string& cont_var);
// The returned list points into `cont`; keep it alive while using the list.
TokenList extract(const LocRef& subject, const Action& action,
                  const Process& cont);

// Aligns a cut's tokens with an interaction's tokens. Literals match only
// themselves, variables bind consistently, `_` matches one argument and `_*`
// any number of trailing arguments; the continuation variable binds the
// concrete continuation. nullopt means the cut does not trap the action.
std::optional<Substitution> check(const TokenList& cut, const TokenList& act);

// Input matching of `patterns` against a tuple. Binders bind componentwise;
// a plain variable means the action was not closed before enactment.
// Throws Error{OpenVariableInPattern}.
std::optional<Substitution> match(std::span<const Pattern> patterns,
                                  const Tuple& tuple);

// Pattern test used by `test(...)@l` conditions: literals compare, `_` and
// `_*` match anything, variables never match a tuple component.
bool tuple_matches(std::span<const Pattern> patterns, const Tuple& tuple);

// Whether some action prefix anywhere in `proc` (under parallel, choice and
// replication, reachable or not) matches `pattern` under the check rules.
bool occurs_in(const Action& pattern, const Process& proc);

// Replaces free variables of `proc` bound in `theta`; binders shadow.
Process substitute(const Process& proc, const Substitution& theta);

}  // namespace akb
