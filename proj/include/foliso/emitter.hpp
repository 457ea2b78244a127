#pragma once

#include <string>
#include <utility>
#include <vector>

#include "foliso/signature.hpp"
#include "foliso/syntax.hpp"
#include "foliso/typeexpr.hpp"

namespace foliso {

// MLTT: every sort (logical or not) becomes a type family into a plain
// universe. HoTT: only non-logical sorts head the structure record; logical
// codomains are inlined as Id / Id-refl / Id-trans types and universes carry
// the h-level index.
enum class EmitMode { MLTT, HoTT };

using Telescope = std::vector<std::pair<std::string, TypeExpr>>;

// The closed structure types. Results are in canonical form (binders
// v0,v1,..., spines flattened).
TypeExpr emit_struc(const Signature& sig);
TypeExpr emit_hstruc(const Signature& sig);

// Gamma_L ++ Gamma^M: one binder per (relevant) sort of the signature
// followed by one binder per context variable. Not normalized — callers wrap
// it into a Pi/Sigma and normalize the result.
Telescope emit_telescope(const Signature& sig, const Context& gamma,
                         EmitMode mode);

// Interpretation of one sort instance / formula in an already-emitted
// telescope (variables named as in `gamma`). Not normalized.
TypeExpr emit_sort_type(const Signature& sig, const SortExpr& k, EmitMode mode);
TypeExpr emit_formula_type(const Signature& sig, const Formula& f,
                           EmitMode mode);

// Canonical closed emissions.
TypeExpr emit_sort(const Signature& sig, const Context& gamma,
                   const SortExpr& k, EmitMode mode);
TypeExpr emit_formula(const Signature& sig, const Context& gamma,
                      const Formula& f, EmitMode mode);
TypeExpr emit_sequent(const Signature& sig, const Sequent& s, EmitMode mode);
TypeExpr emit_extension(const Signature& sig, const Context& gamma,
                        const Formula& f, EmitMode mode);
TypeExpr emit_models(const Signature& sig, const std::vector<Sequent>& axioms,
                     EmitMode mode);

}  // namespace foliso
