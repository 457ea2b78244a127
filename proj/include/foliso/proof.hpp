#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "foliso/syntax.hpp"

namespace foliso {

// Logic fragments, linearly ordered by inclusion. A connective (or rule) has
// a home fragment; anything accepted in a fragment is accepted in every
// larger one.
enum class Fragment { Regular = 0, Coherent, Intuitionistic, Classical };

Fragment parse_fragment(const std::string& text);  // throws ParseError
std::string fragment_str(Fragment f);

// Smallest fragment whose connectives cover the formula: and/top/exists/atoms
// are regular, or/bot coherent, imp/forall intuitionistic.
Fragment needed_fragment(const Formula& f);

struct Theory {
  std::string name;
  Signature sig;
  Fragment fragment = Fragment::Intuitionistic;
  bool diso = false;  // iso rules (rho), (tau-rho), (J) enabled
  std::vector<std::pair<std::string, Sequent>> axioms;  // elaborated

  const Sequent* axiom(const std::string& axname) const;
};

// One node of a derivation tree. Conclusions are stored in surface form and
// elaborated by the checker.
struct Derivation {
  std::string rule;
  Sequent conclusion;
  std::optional<ContextMorphism> sub;  // instantiation of (sub)
  std::string axiom;                   // cited axiom name of (axiom)
  std::string dir;                     // "fwd"/"bwd" on double-line rules
  std::vector<Derivation> premises;
};

// Theory file front end (grammar in README); `base` must be the signature the
// header's `over` clause names.
Theory parse_theory(const std::string& text, Signature base);

// Proof file front end: a single `(proof <name> ...)` S-expression, with
// optional `:over`/`:theory` file hints for stand-alone checking.
struct ProofFile {
  std::string name;
  std::string over;    // signature file hint, may be empty
  std::string theory;  // theory file hint, may be empty
  Derivation root;
};
ProofFile parse_proof(const std::string& text);  // throws ParseError
Derivation parse_derivation(const std::string& text);

// Verifies every node of the tree against its rule schema, the theory's
// axioms, and the theory's fragment/iso gating. Diagnostics carry the tree
// path of the offending node.
Report check_derivation(const Theory& th, const Derivation& d);

// Expands a derived-rule node (and-intro, exists-intro, wJ, symm-eq,
// trans-eq) into a primitive-rule tree with the same conclusion. Throws
// BuildError when the macro does not apply to the conclusion's shape.
Derivation expand_macro(const Theory& th, const Derivation& d);

// Convenience: checks `d` and that its root conclusion alpha-equals `seq`.
std::pair<bool, Report> entails(const Theory& th, const Sequent& seq,
                                const Derivation& d);

}  // namespace foliso
