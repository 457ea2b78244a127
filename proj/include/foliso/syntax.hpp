#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "foliso/signature.hpp"

namespace foliso {

// A sort expression K(x_f)_{f in K//L}. After elaboration `args` has exactly
// one variable per cosieve arrow of `head`, in canonical cosieve order. As
// produced by the parser (surface form), logical heads carry the short
// argument lists instead: Iso(K)(x,y), Refl(K)(q,x), Transp(f)(p,a,b).
struct SortExpr {
  std::string head;
  std::vector<std::string> args;
  bool operator==(const SortExpr& o) const {
    return head == o.head && args == o.args;
  }
  bool operator!=(const SortExpr& o) const { return !(*this == o); }
  std::string str() const;
};

struct Binding {
  std::string var;
  SortExpr sort;
  bool operator==(const Binding& o) const {
    return var == o.var && sort == o.sort;
  }
};

using Context = std::vector<Binding>;
std::string context_str(const Context& ctx);

struct Formula {
  enum class Kind { Atom, Bot, Top, And, Or, Imp, Forall, Exists };
  Kind kind = Kind::Top;
  std::vector<Formula> children;  // And/Or/Imp: 2; quantifiers: 1
  std::string var;                // quantifier binder
  SortExpr sort;                  // quantifier binder sort; Atom sort

  bool operator==(const Formula& o) const;
  std::string str() const;
};

// alpha: Gamma => Delta given by the variable sequence ys (one per Delta
// binding).
struct ContextMorphism {
  Context src;  // Gamma
  Context dst;  // Delta
  std::vector<std::string> ys;
};

struct Sequent {
  Context ctx;
  Formula phi;  // antecedent
  Formula psi;  // succedent
  std::string str() const;
};

// Mutable working signature that materializes logical sorts on demand, so
// checking stays finitary even over signatures with infinite-level sorts.
class Workspace {
 public:
  explicit Workspace(Signature sig) : work_(std::move(sig)) {}
  const Signature& sig() const { return work_; }
  // Ensures `head` names a sort, declaring Iso(...)/Refl(...)/Transp(...)
  // layers as needed. Returns the object index, or -1 (diagnostic in rep).
  int ensure_sort(const std::string& head, Report& rep);

 private:
  bool ensure_arrow(const std::string& name, Report& rep);
  Signature work_;
};

// --- Surface parsers (no well-formedness checking) ---
Context parse_context(const std::string& text);  // "x:O, y:O, f:A(x,y)"
SortExpr parse_sort(const std::string& text);
Formula parse_formula(const std::string& text);

// --- Elaboration + checking ---
// Each elaborate_* validates its input against the rules and returns the
// fully elaborated object; on failure the Report carries diagnostics and the
// returned object is unspecified.
Context elaborate_context(Workspace& ws, const Context& surface, Report& rep);
SortExpr elaborate_sort(Workspace& ws, const Context& gamma,
                        const SortExpr& surface, Report& rep);
Formula elaborate_formula(Workspace& ws, const Context& gamma,
                          const Formula& surface, Report& rep);

Report check_context(const Signature& sig, const Context& surface);
Report check_sort(const Signature& sig, const Context& gamma,
                  const SortExpr& surface);
Report check_var(const Signature& sig, const Context& gamma,
                 const std::string& x, const SortExpr& sort);
Report check_formula(const Signature& sig, const Context& gamma,
                     const Formula& surface);
Report check_context_morphism(const Signature& sig,
                              const ContextMorphism& alpha);
Report check_sequent(Workspace& ws, Sequent& seq);  // elaborates in place

// Convenience: parse + elaborate against a workspace.
Context read_context(Workspace& ws, const std::string& text, Report& rep);
Formula read_formula(Workspace& ws, const Context& gamma,
                     const std::string& text, Report& rep);

// --- Substitution / alpha-equivalence ---
std::set<std::string> free_vars(const Formula& f);
std::string fresh(const std::set<std::string>& avoid);

SortExpr substitute(const ContextMorphism& alpha, const SortExpr& k);
Formula substitute(const ContextMorphism& alpha, const Formula& f);
// Simultaneous variable-for-variable substitution (capture-avoiding).
Formula substitute_vars(
    const Formula& f, const std::vector<std::pair<std::string, std::string>>& m);
SortExpr substitute_vars(
    const SortExpr& k,
    const std::vector<std::pair<std::string, std::string>>& m);

// Renames bound variables to the canonical pool $0,$1,... in traversal order.
Formula normalize(const Formula& f);
bool alpha_eq(const Formula& a, const Formula& b);

}  // namespace foliso
