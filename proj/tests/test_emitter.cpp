#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "foliso/completion.hpp"
#include "foliso/emitter.hpp"
#include "foliso/kernel.hpp"
#include "sigs.hpp"

using namespace foliso;

namespace {

// The expected emissions below were transcribed by hand from the defining
// clauses (sort families as iterated Pi over the cosieve into a universe,
// records as iterated Sigma in canonical sort order, logical sorts as
// Id / Id-refl / Id-trans types) before being compared with the emitter.

const char* kStrucLrg =
    "(Sigma ((v1 (Pi ((v0 (unit))) (U inf))) "
    "(v4 (Pi ((v2 (El (app v1 (star)))) (v3 (El (app v1 (star))))) (U inf)))) "
    "(Pi ((v5 (El (app v1 (star)))) (v6 (El (app (app v4 v5) v5)))) (U inf)))";

const char* kHStrucLrg =
    "(Sigma ((v1 (Pi ((v0 (unit))) (U 3))) "
    "(v4 (Pi ((v2 (El (app v1 (star)))) (v3 (El (app v1 (star))))) (U 2)))) "
    "(Pi ((v5 (El (app v1 (star)))) (v6 (El (app (app v4 v5) v5)))) (U 1)))";

Signature completed_lrg() { return t_step(glob(testsig::lrg())); }

Context ctx_of(Workspace& ws, const std::string& text) {
  Report rep;
  Context out = read_context(ws, text, rep);
  REQUIRE(rep.ok());
  return out;
}

SortExpr sort_of(Workspace& ws, const Context& gamma, const std::string& text) {
  Report rep;
  SortExpr out = elaborate_sort(ws, gamma, parse_sort(text), rep);
  REQUIRE(rep.ok());
  return out;
}

bool type_ok(const TypeExpr& T) {
  std::string why;
  bool ok = kernel_ok(EmittedJudgment{{}, T, false, {}}, &why);
  if (!ok) INFO(why);
  return ok;
}

}  // namespace

TEST_CASE("structure record over a plain signature") {
  Signature lrg = testsig::lrg();
  CHECK(render(emit_struc(lrg)) == kStrucLrg);
  CHECK(render(emit_hstruc(lrg)) == kHStrucLrg);

  // L_cat extends the record by binary arrow-equality and ternary
  // composition relations; spot-check their family types.
  std::string lcat = render(emit_struc(testsig::lcat()));
  // E: Pi (x y : O) A(x,y) -> A(x,y) -> U.
  CHECK(lcat.find("(v7 (El (app (app v4 v5) v6))) (v8 (El (app (app v4 v5) "
                  "v6)))") != std::string::npos);
  // T: Pi (x y z : O) A(y,z) -> A(x,y) -> A(x,z) -> U.
  CHECK(lcat.find("(v16 (El (app (app v4 v14) v15))) (v17 (El (app (app v4 "
                  "v13) v14))) (v18 (El (app (app v4 v13) v15)))") !=
        std::string::npos);
}

TEST_CASE("completion does not change the non-logical record") {
  Signature lrg = testsig::lrg();
  CHECK(render(emit_hstruc(completed_lrg())) == kHStrucLrg);
  RepletionResult r = repletion(lrg);
  REQUIRE(r.reached_fixpoint);
  CHECK(render(emit_hstruc(r.sig)) == kHStrucLrg);
  // In plain mode the logical sorts do head extra record components.
  CHECK(render(emit_struc(completed_lrg())) != render(emit_struc(lrg)));
}

TEST_CASE("emission is invariant under presentation reordering") {
  Presentation p;
  p.objects = {{"I", LogicalKind::None, "", HLevel::fin(1)},
               {"O", LogicalKind::None, "", HLevel::fin(3)},
               {"A", LogicalKind::None, "", HLevel::fin(2)}};
  p.arrows = {{"i", LogicalKind::None, "", "I", "A"},
              {"c", LogicalKind::None, "", "A", "O"},
              {"d", LogicalKind::None, "", "A", "O"}};
  p.equations = {{{"c", "i"}, {"d", "i"}}};
  Signature shuffled = saturate("L_rg", std::move(p));
  CHECK(render(emit_struc(shuffled)) == kStrucLrg);
  CHECK(render(emit_hstruc(shuffled)) == kHStrucLrg);
}

TEST_CASE("logical sorts become identity types") {
  Workspace ws(completed_lrg());
  Context ctx = ctx_of(
      ws, "u:O, v:O, w:O, a:A(u,w), b:A(v,w), p:Iso(O)(u,v), q:Iso(O)(u,u), "
          "rr:Refl(O)(q,u), z:Iso(Iso(O))(p,p)");

  auto hott = [&](const std::string& s) {
    return render(emit_sort_type(ws.sig(), sort_of(ws, ctx, s),
                                 EmitMode::HoTT));
  };
  CHECK(hott("Iso(O)(u,v)") == "(Id (El (app %O (star))) u v)");
  CHECK(hott("Refl(O)(q,u)") ==
        "(Id (Id (El (app %O (star))) u u) q (refl u))");
  CHECK(hott("Iso(Iso(O))(p,p)") ==
        "(Id (Id (El (app %O (star))) u v) p p)");
  CHECK(hott("Transp(c)(p,a,b)") ==
        "(Id (El (app (app %A v) w)) b "
        "(trans p (bind %v0 (El (app (app %A %v0) w))) a))");

  // In plain mode the same sorts are ordinary applied families.
  CHECK(render(emit_sort_type(ws.sig(), sort_of(ws, ctx, "Iso(O)(u,v)"),
                              EmitMode::MLTT)) ==
        "(El (app (app %Iso(O) u) v))");
}

TEST_CASE("formula translation: plain vs truncated") {
  Workspace ws(testsig::lrg());
  Context ctx = ctx_of(ws, "x:O");
  Report rep;
  Formula f = read_formula(ws, ctx, "exists f:A(x,x). I(x,f)", rep);
  REQUIRE(rep.ok());

  CHECK(render(emit_formula(ws.sig(), ctx, f, EmitMode::MLTT)) ==
        "(Pi ((v1 (Pi ((v0 (unit))) (U inf))) (v4 (Pi ((v2 (El (app v1 "
        "(star)))) (v3 (El (app v1 (star))))) (U inf))) (v7 (Pi ((v5 (El "
        "(app v1 (star)))) (v6 (El (app (app v4 v5) v5)))) (U inf))) (v8 "
        "(El (app v1 (star))))) (Sigma ((v9 (El (app (app v4 v8) v8))) "
        "(v10 (El (app (app v7 v8) v9)))) (unit)))");
  // The homotopy reading truncates each existential.
  CHECK(render(emit_formula(ws.sig(), ctx, f, EmitMode::HoTT)) ==
        "(Pi ((v1 (Pi ((v0 (unit))) (U 3))) (v4 (Pi ((v2 (El (app v1 "
        "(star)))) (v3 (El (app v1 (star))))) (U 2))) (v7 (Pi ((v5 (El "
        "(app v1 (star)))) (v6 (El (app (app v4 v5) v5)))) (U 1))) (v8 "
        "(El (app v1 (star))))) (trunc (Sigma ((v9 (El (app (app v4 v8) "
        "v8)))) (trunc (Sigma ((v10 (El (app (app v7 v8) v9)))) "
        "(unit))))))");

  Formula g = read_formula(ws, ctx, "bot \\/ (I(x,f) -> bot)", rep);
  // `f` is unbound here: expect a diagnostic.
  CHECK_FALSE(rep.ok());
  rep = Report{};
  Context ctx2 = ctx_of(ws, "x:O, f:A(x,x)");
  g = read_formula(ws, ctx2, "bot \\/ (I(x,f) -> bot)", rep);
  REQUIRE(rep.ok());
  std::string mltt = render(emit_formula_type(ws.sig(), g, EmitMode::MLTT));
  CHECK(mltt ==
        "(sum (empty) (Pi ((%v0 (Sigma ((v0 (El (app (app %I x) f)))) "
        "(unit)))) (empty)))");
  CHECK(render(emit_formula_type(ws.sig(), g, EmitMode::HoTT)) ==
        "(trunc (sum (empty) (Pi ((%v0 (trunc (Sigma ((v0 (El (app (app %I "
        "x) f)))) (unit))))) (empty))))");
}

TEST_CASE("sequents, extensions and model types") {
  Workspace ws(testsig::lrg());
  Sequent s;
  s.ctx = parse_context("x:O, f:A(x,x)");
  s.phi = parse_formula("I(x,f) \\/ bot");
  s.psi = parse_formula("I(x,f)");
  REQUIRE(check_sequent(ws, s).ok());

  CHECK(render(emit_sequent(ws.sig(), s, EmitMode::MLTT)) ==
        "(Pi ((v1 (Pi ((v0 (unit))) (U inf))) (v4 (Pi ((v2 (El (app v1 "
        "(star)))) (v3 (El (app v1 (star))))) (U inf))) (v7 (Pi ((v5 (El "
        "(app v1 (star)))) (v6 (El (app (app v4 v5) v5)))) (U inf))) (v8 "
        "(El (app v1 (star)))) (v9 (El (app (app v4 v8) v8))) (v11 (sum "
        "(Sigma ((v10 (El (app (app v7 v8) v9)))) (unit)) (empty)))) "
        "(Sigma ((v12 (El (app (app v7 v8) v9)))) (unit)))");

  Report rep;
  Context ctx = ctx_of(ws, "x:O");
  Formula f = read_formula(ws, ctx, "exists f:A(x,x). I(x,f)", rep);
  REQUIRE(rep.ok());
  CHECK(render(emit_extension(ws.sig(), ctx, f, EmitMode::MLTT)) ==
        "(Sigma ((v1 (Pi ((v0 (unit))) (U inf))) (v4 (Pi ((v2 (El (app v1 "
        "(star)))) (v3 (El (app v1 (star))))) (U inf))) (v7 (Pi ((v5 (El "
        "(app v1 (star)))) (v6 (El (app (app v4 v5) v5)))) (U inf))) (v8 "
        "(El (app v1 (star)))) (v9 (El (app (app v4 v8) v8))) (v10 (El "
        "(app (app v7 v8) v9)))) (unit))");

  // Model types share one record prefix across all axioms.
  CHECK(render(emit_models(ws.sig(), {}, EmitMode::HoTT)) ==
        "(Sigma ((v1 (Pi ((v0 (unit))) (U 3))) (v4 (Pi ((v2 (El (app v1 "
        "(star)))) (v3 (El (app v1 (star))))) (U 2))) (v7 (Pi ((v5 (El "
        "(app v1 (star)))) (v6 (El (app (app v4 v5) v5)))) (U 1)))) "
        "(unit))");
  std::string one = render(emit_models(ws.sig(), {s}, EmitMode::MLTT));
  CHECK(one.substr(0, 7) == "(Sigma ");
  CHECK(one.find("(sum (Sigma") != std::string::npos);
  CHECK(type_ok(emit_models(ws.sig(), {s, s}, EmitMode::MLTT)));
}

TEST_CASE("kernel accepts every emission") {
  Signature lrg = testsig::lrg();
  CHECK(type_ok(emit_struc(lrg)));
  CHECK(type_ok(emit_hstruc(lrg)));
  CHECK(type_ok(emit_struc(testsig::lcat())));
  CHECK(type_ok(emit_struc(testsig::lk3())));
  CHECK(type_ok(emit_hstruc(testsig::lk3())));
  CHECK(type_ok(emit_struc(completed_lrg())));
  CHECK(type_ok(emit_hstruc(completed_lrg())));

  Workspace ws(completed_lrg());
  Sequent s;
  s.ctx = parse_context("u:O, v:O, w:O, a:A(u,w), b:A(v,w), p:Iso(O)(u,v)");
  s.phi = parse_formula("top");
  s.psi = parse_formula("Transp(c)(p,a,b)");
  REQUIRE(check_sequent(ws, s).ok());
  // Exercises Id/trans typing in the kernel end to end.
  CHECK(type_ok(emit_sequent(ws.sig(), s, EmitMode::HoTT)));
  CHECK(type_ok(emit_sequent(ws.sig(), s, EmitMode::MLTT)));
}

TEST_CASE("emitted judgments with terms: transport computation") {
  // trans over refl computes to its argument.
  TypeExpr tr = t_trans(t_refl(t_var("x")), "v",
                        t_el(t_app(t_app(t_var("P"), t_var("v")), t_star())),
                        t_var("a"));
  CHECK(render(kernel_normalize(tr)) == "a");

  // refl x : Id(El(K), x, x) in a suitable context...
  EmittedJudgment good;
  good.context = {{"K", t_u(HLevel::fin(3))},
                  {"x", t_el(t_var("K"))}};
  good.type = t_id(t_el(t_var("K")), t_var("x"), t_var("x"));
  good.has_term = true;
  good.term = t_refl(t_var("x"));
  CHECK(kernel_ok(good));

  // ...but not against mismatched endpoints.
  EmittedJudgment bad = good;
  bad.context.push_back({"y", t_el(t_var("K"))});
  bad.type = t_id(t_el(t_var("K")), t_var("x"), t_var("y"));
  std::string why;
  CHECK_FALSE(kernel_ok(bad, &why));
  CHECK(why.find("type mismatch") != std::string::npos);

  // Unbound variables are rejected.
  EmittedJudgment unbound;
  unbound.type = t_el(t_var("nowhere"));
  CHECK_FALSE(kernel_ok(unbound, &why));
  CHECK(why.find("unbound") != std::string::npos);

  // Universe discipline: a 2-level family is no term of U^1.
  EmittedJudgment uni;
  uni.context = {{"K", t_u(HLevel::fin(2))}};
  uni.type = t_u(HLevel::fin(1));
  uni.has_term = true;
  uni.term = t_var("K");
  CHECK_FALSE(kernel_ok(uni, &why));
  uni.type = t_u(HLevel::fin(2));
  CHECK(kernel_ok(uni));
  uni.type = t_u(HLevel::inf());  // cumulativity
  CHECK(kernel_ok(uni));
}

TEST_CASE("h-level bounds") {
  Signature lrg = testsig::lrg();
  std::map<std::string, HLevel> none;
  CHECK(hlevel_bound(emit_hstruc(lrg), none) == HLevel::fin(4));
  CHECK(hlevel_bound(emit_struc(lrg), none).is_inf());

  Workspace ws(completed_lrg());
  Context ctx = ctx_of(ws, "u:O, v:O, p:Iso(O)(u,v), q:Iso(O)(u,v)");
  std::map<std::string, HLevel> assume{{"%O", HLevel::fin(3)},
                                       {"%A", HLevel::fin(2)}};
  CHECK(hlevel_bound(emit_sort_type(ws.sig(), sort_of(ws, ctx, "Iso(O)(u,v)"),
                                    EmitMode::HoTT),
                     assume) == HLevel::fin(2));
  CHECK(hlevel_bound(
            emit_sort_type(ws.sig(), sort_of(ws, ctx, "Iso(Iso(O))(p,q)"),
                           EmitMode::HoTT),
            assume) == HLevel::fin(1));
  // Without assumptions nothing is known.
  CHECK(hlevel_bound(emit_sort_type(ws.sig(), sort_of(ws, ctx, "Iso(O)(u,v)"),
                                    EmitMode::HoTT),
                     none)
            .is_inf());
}

TEST_CASE("renderer round trip") {
  Workspace ws(completed_lrg());
  Sequent s;
  s.ctx = parse_context("u:O, v:O, w:O, a:A(u,w), b:A(v,w), p:Iso(O)(u,v)");
  s.phi = parse_formula("top");
  s.psi = parse_formula("Transp(c)(p,a,b)");
  REQUIRE(check_sequent(ws, s).ok());
  for (TypeExpr e : {emit_struc(ws.sig()), emit_hstruc(ws.sig()),
                     emit_sequent(ws.sig(), s, EmitMode::HoTT),
                     emit_models(ws.sig(), {s}, EmitMode::MLTT)}) {
    CHECK(parse_type(render(e)) == e);
    CHECK(alpha_eq_type(parse_type(render(e)), e));
  }
}
