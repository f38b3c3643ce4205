#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "akb/lattice.hpp"

namespace akb {

// Immutable heap cell with value semantics; copies share the node and
// equality is structural.
template <class T>
class Box {
 public:
  Box(T value) : ptr_(std::make_shared<const T>(std::move(value))) {}
  const T& operator*() const { return *ptr_; }
  const T* operator->() const { return ptr_.get(); }
  friend bool operator==(const Box& a, const Box& b) {
    return a.ptr_ == b.ptr_ || *a.ptr_ == *b.ptr_;
  }

 private:
  std::shared_ptr<const T> ptr_;
};

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// ---------------------------------------------------------------------------
// Locations, patterns, actions

struct LocRef {
  enum class Kind { Literal, Var };
  Kind kind = Kind::Literal;
  std::string name;

  static LocRef literal(std::string n) { return {Kind::Literal, std::move(n)}; }
  static LocRef var(std::string n) { return {Kind::Var, std::move(n)}; }
  bool is_var() const { return kind == Kind::Var; }
  friend bool operator==(const LocRef&, const LocRef&) = default;
  friend auto operator<=>(const LocRef&, const LocRef&) = default;
};

// Action argument. Binder is `?u` (input binding). Wildcard `_` and Rest `_*`
// (any number of trailing arguments) are only legal inside policies.
enum class PatternKind { Literal, Var, Binder, Wildcard, Rest };

struct Pattern {
  PatternKind kind = PatternKind::Literal;
  std::string name;

  static Pattern literal(std::string n) { return {PatternKind::Literal, std::move(n)}; }
  static Pattern var(std::string n) { return {PatternKind::Var, std::move(n)}; }
  static Pattern binder(std::string n) { return {PatternKind::Binder, std::move(n)}; }
  static Pattern wildcard() { return {PatternKind::Wildcard, {}}; }
  static Pattern rest() { return {PatternKind::Rest, {}}; }
  friend bool operator==(const Pattern&, const Pattern&) = default;
};

enum class ActionKind { Out, In, Read };
std::string_view to_string(ActionKind kind);

struct Action {
  ActionKind kind = ActionKind::Out;
  std::vector<Pattern> args;
  LocRef target;
  friend bool operator==(const Action&, const Action&) = default;
};

// ---------------------------------------------------------------------------
// Processes

enum class ProcKind { Nil, Parallel, Choice, Replicate };

struct Branch;

struct Process {
  ProcKind kind = ProcKind::Nil;
  std::vector<Process> parts;     // Parallel components; Replicate body at [0]
  std::vector<Branch> branches;   // Choice summands, at least one

  static Process nil();
  static Process parallel(std::vector<Process> ps);
  static Process choice(std::vector<Branch> bs);
  static Process prefix(Action a, Process cont);
  static Process replicate(Process body);

  bool is_nil() const { return kind == ProcKind::Nil; }
  const Process& body() const { return parts.front(); }

  friend bool operator==(const Process& a, const Process& b);
};

struct Branch {
  Action action;
  Process cont;
  friend bool operator==(const Branch&, const Branch&) = default;
};

inline Process Process::nil() { return Process{}; }

using Tuple = std::vector<std::string>;

// Variables occurring free in a process (not bound by an enclosing `?u`).
std::set<std::string> free_variables(const Process& p);

// ---------------------------------------------------------------------------
// Policies

enum class LevKind { Ss, Cs, Hs, Ot, Ht, Lit };

// Level expression in a recommendation: one of the five interaction names or
// a literal level of the net's lattice (kept by name until evaluation).
struct LevExpr {
  LevKind kind = LevKind::Lit;
  std::string level;
  friend bool operator==(const LevExpr&, const LevExpr&) = default;
};

enum class BinOp { Oplus, Otimes, Implies, Priority, And, Or };
std::string_view to_string(BinOp op);

struct Rec;
struct RecEq { LocRef lhs, rhs; friend bool operator==(const RecEq&, const RecEq&) = default; };
struct RecNot { Box<Rec> arg; friend bool operator==(const RecNot&, const RecNot&) = default; };
struct RecBin {
  BinOp op = BinOp::Oplus;  // never Priority
  Box<Rec> lhs, rhs;
  friend bool operator==(const RecBin&, const RecBin&) = default;
};
struct RecConst { bool value = true; friend bool operator==(const RecConst&, const RecConst&) = default; };
struct RecOccurs {
  Action pattern;
  std::string cont;
  friend bool operator==(const RecOccurs&, const RecOccurs&) = default;
};
struct RecGeq { LevExpr lhs, rhs; friend bool operator==(const RecGeq&, const RecGeq&) = default; };

struct Rec {
  std::variant<RecEq, RecNot, RecBin, RecConst, RecOccurs, RecGeq> node;
  friend bool operator==(const Rec&, const Rec&) = default;
};

struct Cond;
struct CondEq { LocRef lhs, rhs; friend bool operator==(const CondEq&, const CondEq&) = default; };
struct CondNot { Box<Cond> arg; friend bool operator==(const CondNot&, const CondNot&) = default; };
struct CondBin {
  BinOp op = BinOp::And;  // And or Or
  Box<Cond> lhs, rhs;
  friend bool operator==(const CondBin&, const CondBin&) = default;
};
struct CondConst { bool value = true; friend bool operator==(const CondConst&, const CondConst&) = default; };
struct CondOccurs {
  Action pattern;
  std::string cont;
  friend bool operator==(const CondOccurs&, const CondOccurs&) = default;
};
// `test(p1,...,pn)@l`: some tuple at l matches the pattern.
struct CondPresent {
  std::vector<Pattern> tuple;
  LocRef target;
  friend bool operator==(const CondPresent&, const CondPresent&) = default;
};

struct Cond {
  std::variant<CondEq, CondNot, CondBin, CondConst, CondOccurs, CondPresent> node;
  friend bool operator==(const Cond&, const Cond&) = default;
};

struct Cut {
  LocRef subject;
  Action action;
  std::string cont;  // continuation metavariable
  friend bool operator==(const Cut&, const Cut&) = default;
};

// [rec if cut : cond]
struct Aspect {
  Rec rec;
  Cut cut;
  Cond cond;
  friend bool operator==(const Aspect&, const Aspect&) = default;
};

struct Policy;
struct PolNot { Box<Policy> arg; friend bool operator==(const PolNot&, const PolNot&) = default; };
struct PolBin {
  BinOp op = BinOp::Oplus;
  Box<Policy> lhs, rhs;
  friend bool operator==(const PolBin&, const PolBin&) = default;
};
struct PolConst { bool value = true; friend bool operator==(const PolConst&, const PolConst&) = default; };

struct Policy {
  std::variant<Aspect, PolNot, PolBin, PolConst> node;
  friend bool operator==(const Policy&, const Policy&) = default;
};

using PolicyPtr = std::shared_ptr<const Policy>;

Policy policy_bin(BinOp op, Policy lhs, Policy rhs);
Policy policy_not(Policy arg);
Policy policy_const(bool value);

// Variables that an aspect's cut binds (subject, target, argument variables).
std::set<std::string> cut_variables(const Cut& cut);

// ---------------------------------------------------------------------------
// Nets

// <clearance, current, history, classification> of one location; the values
// of f_S, f_C, f_H and f_O at that location.
struct LocalizedState {
  Level clearance;
  Level current;
  Level history;
  Level classification;
  friend bool operator==(const LocalizedState&, const LocalizedState&) = default;
};

struct Annotation {
  LocalizedState state;
  PolicyPtr policy;
};

struct LocatedItem {
  std::string name;
  Annotation annot;
  std::variant<Process, Tuple> body;
  // Declared in the scenario (as opposed to created by an out); the first
  // declared item of a name is the out-target ("base") for that name.
  bool declared = true;
  // Identity of the entity across steps; ignored by structural equality.
  std::uint64_t uid = 0;

  bool is_tuple() const { return std::holds_alternative<Tuple>(body); }
  const Process& process() const { return std::get<Process>(body); }
  const Tuple& tuple() const { return std::get<Tuple>(body); }
};

struct Net {
  LatticePtr lattice;
  std::vector<LocatedItem> items;
  std::uint64_t next_uid = 0;
};

// Structural equality: same-shaped lattices, and items equal in order with
// levels compared by position in their lattice. Uids are ignored.
bool equivalent(const Net& a, const Net& b);

struct Diagnostic {
  std::string location;
  std::string message;
};

// Checks every well-formedness invariant of the net; never throws.
std::vector<Diagnostic> validate(const Net& net);

}  // namespace akb
