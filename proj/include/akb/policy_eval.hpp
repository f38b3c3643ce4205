#pragma once

#include <string>

#include "akb/ast.hpp"
#include "akb/belnap.hpp"
#include "akb/matcher.hpp"

namespace akb {

// Levels substituted for Ss, Cs, Ot, Hs and Ht when a recommendation is
// evaluated.
struct LevelBinding {
  Level gS;
  Level gC;
  Level gO;
  Level gHs;
  Level gHt;
};

// One attempted interaction, as seen by the policies of both parties.
struct InteractionView {
  std::string subject;
  Action action;
  const Process* continuation = nullptr;
  LevelBinding levels;
  const Net* net = nullptr;  // snapshot before the interaction
};

Four eval_policy(const Policy& policy, const InteractionView& iv);

// Bottom when the cut does not trap the interaction or the condition is
// false; otherwise the recommendation under the cut's substitution.
Four eval_aspect(const Aspect& aspect, const InteractionView& iv);

// Throws Error{UnresolvedVariable} for a variable theta does not bind, and
// Error{UnknownLevelName | ForeignLevel} for bad level literals.
Four eval_rec(const Rec& rec, const Substitution& theta, const LevelBinding& levels,
              const InteractionView& iv);
bool eval_cond(const Cond& cond, const Substitution& theta, const InteractionView& iv);

// Evaluates a binary policy operator over Four.
Four apply_op(BinOp op, Four a, Four b);

}  // namespace akb
