#pragma once

#include <map>
#include <string>
#include <vector>

#include "foliso/typeexpr.hpp"

namespace foliso {

// Minimal independent checker for the emitted fragment of MLTT/HoTT:
// Russell-style cumulative universes U^h, Pi, Sigma (as binder telescopes),
// Id with refl and trans, Unit/star, Empty, Sum, Trunc. Definitional
// equality is alpha + beta + the transport computation rule
// trans_{refl t}^{v.P}(a) = a.
//
// The kernel is deliberately dumb: it re-derives everything structurally and
// shares no code with the emitter beyond the TypeExpr syntax.

struct KernelError {
  std::string message;
};

// A judgment as produced by the emitter: `context |- type Type` when `term`
// is absent, `context |- term : type` otherwise.
struct EmittedJudgment {
  std::vector<std::pair<std::string, TypeExpr>> context;
  TypeExpr type;
  bool has_term = false;
  TypeExpr term;
};

// Full normalization (beta + trans/refl + binder renumbering).
TypeExpr kernel_normalize(const TypeExpr& e);

// Capture-avoiding substitution of `value` for free variable `var`.
TypeExpr subst_term(const TypeExpr& e, const std::string& var,
                    const TypeExpr& value);

// Throws KernelError with a path-qualified message on failure.
void kernel_check(const EmittedJudgment& j);
bool kernel_ok(const EmittedJudgment& j, std::string* why = nullptr);

// Least upper bound on the h-level of a type, given h-level assumptions for
// free variables (a variable K : Pi ... U^n contributes El(K ...) <= n).
// Returns HLevel::inf() when nothing better is known.
HLevel hlevel_bound(const TypeExpr& e,
                    const std::map<std::string, HLevel>& assumptions);

}  // namespace foliso
