// Globular completion G (one layer), its exhaustive closure glob, the
// transport functor tau, T = glob ∘ tau, repletion (iterated T with fixed
// point detection), and the completion monad's unit/multiplication.
#ifndef FOLISO_COMPLETION_HPP
#define FOLISO_COMPLETION_HPP

#include <optional>

#include "foliso/morphism.hpp"
#include "foliso/signature.hpp"

namespace foliso {

struct CompletionConfig {
  int max_t_iterations = 8;   // bound on repletion's T iterations
  int max_glob_layers = 64;   // safety bound for glob on finite-level input
};

// One application of G: adds Iso(K) and Refl(K) for every sort K with
// h(K) >= 2 lacking them.
Signature glob_step(const Signature& sig);

// Exhaustive closure of glob_step. Without a layer bound, throws BuildError
// ("depth exceeded") when sorts of infinite h-level force unbounded layers.
Signature glob(const Signature& sig,
               std::optional<int> layer_bound = std::nullopt);

// Adds Transp(f) for every top-level f : A -> K with h(K) >= 3 lacking it.
// The input must already carry Iso(K) for each such codomain (image of glob).
Signature tau_step(const Signature& sig);

// T = glob ∘ tau (tau first, then glob closure).
Signature t_step(const Signature& sig);

struct RepletionResult {
  Signature sig;
  bool reached_fixpoint = false;
  int iterations = 0;  // t_step applications performed
};

RepletionResult repletion(const Signature& sig, CompletionConfig cfg = {});

bool is_fixed_point(const Signature& sig);

// Monad structure of the globular completion: eta : L -> G(L) is the
// inclusion; mu : G(G(L)) -> G(L) is the contraction collapsing the second
// iso/refl layer (Iso(Iso K) -> Iso K, Refl(Iso K) -> Iso K,
// Iso(Refl K) -> Refl K, Refl(Refl K) -> Refl K).
HMorphism monad_eta(const Signature& sig);
HMorphism monad_mu(const Signature& sig);

// Functorial action of G on a morphism I : L -> L', as G(L) -> G(L').
HMorphism glob_on_morphism(const HMorphism& i);

}  // namespace foliso

#endif  // FOLISO_COMPLETION_HPP
