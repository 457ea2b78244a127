#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <set>

#include "doctest.h"
#include "foliso/completion.hpp"
#include "sigs.hpp"

using namespace foliso;

namespace {

std::set<std::string> object_set(const Signature& s) {
  std::set<std::string> out;
  for (const auto& o : s.objects) out.insert(o.name);
  return out;
}

Signature inf1() {
  Presentation p;
  p.objects = {{"O", LogicalKind::None, "", HLevel::inf()}};
  return saturate("L_inf1", std::move(p));
}

}  // namespace

TEST_CASE("glob_step(L_rg): one layer of iso/refl sorts") {
  Signature g = glob_step(testsig::lrg());
  CHECK(object_set(g) == std::set<std::string>{"O", "A", "I", "Iso(O)",
                                               "Iso(A)", "Refl(O)", "Refl(A)"});
  CHECK(g.objects[g.object_index("Iso(O)")].h == HLevel::fin(2));
  CHECK(g.objects[g.object_index("Refl(A)")].h == HLevel::fin(0));
  CHECK(validate_h_signature(g).ok());
  // Idempotent on signatures already owning all first-layer sorts of h >= 2?
  // No: Iso(O) has h 2, so another layer is still due. glob_step is a single
  // layer by contract.
  CHECK_FALSE(glob_step(g).same_symbols(g));
}

TEST_CASE("glob(L_rg) reaches the exhaustive closure") {
  Signature g = glob(testsig::lrg());
  CHECK(object_set(g) ==
        std::set<std::string>{"O", "A", "I", "Iso(O)", "Iso(A)", "Iso(Iso(O))",
                              "Refl(O)", "Refl(Iso(O))", "Refl(A)"});
  CHECK(validate_h_signature(g).ok());
  CHECK(glob(g).same_symbols(g));
  // The stipulated relations hold, e.g. s(O)∘s(Iso(O)) = s(O)∘t(Iso(O)).
  int sO = g.arrow_index("s(O)");
  int sI = g.arrow_index("s(Iso(O))"), tI = g.arrow_index("t(Iso(O))");
  CHECK(g.compose2(sO, sI) == g.compose2(sO, tI));
}

TEST_CASE("tau_step over glob(L_rg) adds the four transport sorts") {
  Signature g = glob(testsig::lrg());
  Signature t = tau_step(g);
  std::set<std::string> added;
  for (const auto& o : t.objects)
    if (!object_set(g).count(o.name)) added.insert(o.name);
  CHECK(added == std::set<std::string>{"Transp(c)", "Transp(d)",
                                       "Transp(s(O))", "Transp(t(O))"});
  CHECK(validate_h_signature(t).ok());
}

TEST_CASE("t_step is idempotent on glob(L_rg) and repletion stabilizes") {
  Signature g = glob(testsig::lrg());
  Signature once = t_step(g);
  CHECK(t_step(once).same_symbols(once));
  CHECK(is_fixed_point(once));
  CHECK_FALSE(is_fixed_point(testsig::lrg()));

  RepletionResult r = repletion(g);
  CHECK(r.reached_fixpoint);
  CHECK(r.iterations <= 2);
  CHECK(r.sig.same_symbols(once));
  CHECK(validate_h_signature(r.sig).ok());
  // Still a FOL≅-3-signature: every h-level is at most 3.
  for (const auto& o : r.sig.objects) CHECK(o.h <= HLevel::fin(3));
}

TEST_CASE("empty signature is a fixed point") {
  Presentation p;
  Signature e = saturate("empty", std::move(p));
  CHECK(is_fixed_point(e));
  RepletionResult r = repletion(e);
  CHECK(r.reached_fixpoint);
}

TEST_CASE("infinite h-levels: bounded glob, unbounded throws") {
  Signature s = inf1();
  CHECK_THROWS_AS(glob(s), BuildError);
  Signature g3 = glob(s, 3);
  CHECK(g3.object_index("Iso(Iso(Iso(O)))") >= 0);
  CHECK(g3.object_index("Iso(Iso(Iso(Iso(O))))") < 0);
  CHECK(validate_h_signature(g3).ok());
  RepletionResult r = repletion(s, {.max_t_iterations = 4});
  CHECK_FALSE(r.reached_fixpoint);
  CHECK(r.iterations == 4);
}

TEST_CASE("completed signatures serialize and parse back") {
  Signature t = t_step(glob(testsig::lrg()));
  CHECK(parse_signature(serialize_signature(t)) == t);
}

TEST_CASE("monad structure: unit, multiplication and the laws on L_rg") {
  Signature L = testsig::lrg();
  HMorphism eta = monad_eta(L);
  CHECK(check_h_morphism(eta, /*strict=*/true).ok());
  HMorphism mu = monad_mu(L);
  CHECK(check_h_morphism(mu).ok());

  // mu collapses the second layer onto the first: Iso(Iso(O)) |-> Iso(O)
  // (over L_rg only Iso(O) still has h >= 2, so the second layer sits on O).
  const Signature& GG = *mu.src;
  const Signature& G = *mu.dst;
  int ii = GG.object_index("Iso(Iso(O))");
  REQUIRE(ii >= 0);
  CHECK(G.objects[mu.object_map[ii]].name == "Iso(O)");
  int rr = GG.object_index("Refl(Iso(O))");
  REQUIRE(rr >= 0);
  CHECK(G.objects[mu.object_map[rr]].name == "Iso(O)");

  // Unit laws: mu ∘ G(eta) = id and mu ∘ eta_G = id on G(L).
  HMorphism Geta = glob_on_morphism(eta);
  HMorphism etaG = monad_eta(glob_step(L));
  HMorphism idG = identity_morphism(glob_step(L));
  CHECK(same_map(compose(mu, Geta), idG));
  CHECK(same_map(compose(mu, etaG), idG));

  // Associativity: mu ∘ G(mu) = mu ∘ mu_G on G(G(G(L))).
  HMorphism Gmu = glob_on_morphism(mu);
  HMorphism muG = monad_mu(glob_step(L));
  CHECK(same_map(compose(mu, Gmu), compose(mu, muG)));
}
