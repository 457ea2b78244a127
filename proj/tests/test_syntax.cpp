#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "foliso/syntax.hpp"
#include "sigs.hpp"

using namespace foliso;

TEST_CASE("check_context on L_rg") {
  Signature L = testsig::lrg();
  CHECK(check_context(L, parse_context("x:O, y:O, f:A(x,y)")).ok());
  CHECK(check_context(L, parse_context("")).ok());
  CHECK_FALSE(check_context(L, parse_context("f:A(x,y)")).ok());
  CHECK_FALSE(check_context(L, parse_context("x:O, x:O")).ok());
  CHECK_FALSE(check_context(L, parse_context("x:O, f:A(x)")).ok());
}

TEST_CASE("check_sort: non-logical heads") {
  Signature L = testsig::lrg();
  CHECK(check_sort(L, parse_context("x:O, y:O"), parse_sort("A(x,y)")).ok());
  CHECK(check_sort(L, parse_context("x:O, f:A(x,x)"), parse_sort("I(x,f)")).ok());
  // Dependency mismatch: I's arguments must share endpoints with f.
  CHECK_FALSE(
      check_sort(L, parse_context("x:O, y:O, f:A(x,y)"), parse_sort("I(x,f)"))
          .ok());
}

TEST_CASE("check_sort: on-demand logical sorts") {
  Signature L = testsig::lrg();
  CHECK(check_sort(L, parse_context("x:O, f:A(x,x)"),
                   parse_sort("Iso(A)(f,f)"))
            .ok());
  CHECK(check_sort(L, parse_context("x:O, y:O, f:A(x,y), g:A(x,y)"),
                   parse_sort("Iso(A)(f,g)"))
            .ok());
  // Endpoint mismatch: g' lives on different objects.
  CHECK_FALSE(check_sort(L, parse_context("x:O, y:O, f:A(x,y), g:A(y,x)"),
                         parse_sort("Iso(A)(f,g)"))
                  .ok());
  // Nested iso sorts.
  CHECK(check_sort(L,
                   parse_context("x:O, y:O, p:Iso(O)(x,y), q:Iso(O)(x,y)"),
                   parse_sort("Iso(Iso(O))(p,q)"))
            .ok());
  // h-level threshold: h(I) = 1 < 2, no iso sort.
  CHECK_FALSE(check_sort(L, parse_context("x:O, f:A(x,x), i:I(x,f), j:I(x,f)"),
                         parse_sort("Iso(I)(i,j)"))
                  .ok());
}

TEST_CASE("check_sort: reflexivity sorts want loops") {
  Signature L = testsig::lrg();
  CHECK(check_sort(L, parse_context("x:O, f:A(x,x), q:Iso(A)(f,f)"),
                   parse_sort("Refl(A)(q,f)"))
            .ok());
  // q is not a loop: its endpoints differ.
  Report r = check_sort(L, parse_context("x:O, f:A(x,x), g:A(x,x), q:Iso(A)(f,g)"),
                        parse_sort("Refl(A)(q,f)"));
  CHECK_FALSE(r.ok());
}

TEST_CASE("check_sort: transport sorts") {
  Signature L = testsig::lrg();
  // Transp(c) relates two arrows along an O-iso between their c-endpoints.
  CHECK(check_sort(
            L,
            parse_context("u:O, v:O, w:O, a:A(u,w), b:A(v,w), p:Iso(O)(u,v)"),
            parse_sort("Transp(c)(p,a,b)"))
            .ok());
  // a and b must agree at every arrow other than c (here: d).
  CHECK_FALSE(
      check_sort(
          L,
          parse_context("u:O, v:O, w:O, z:O, a:A(u,w), b:A(v,z), p:Iso(O)(u,v)"),
          parse_sort("Transp(c)(p,a,b)"))
          .ok());
  // Transport along a non-top-level arrow is not formable.
  CHECK_FALSE(check_sort(L, parse_context(""), parse_sort("Transp(d.i)(p,a,b)"))
                  .ok());
}

TEST_CASE("check_var is literal appearance") {
  Signature L = testsig::lrg();
  CHECK(check_var(L, parse_context("x:O, y:O"), "y", parse_sort("O")).ok());
  CHECK_FALSE(check_var(L, parse_context("x:O"), "y", parse_sort("O")).ok());
  CHECK_FALSE(check_var(L, parse_context("x:O, y:O, f:A(x,y)"), "f",
                        parse_sort("A(y,x)"))
                  .ok());
  CHECK(check_var(L, parse_context("x:O, y:O, f:A(x,y)"), "f",
                  parse_sort("A(x,y)"))
            .ok());
}

TEST_CASE("check_formula over L_rg") {
  Signature L = testsig::lrg();
  CHECK(check_formula(L, parse_context("x:O, f:A(x,x)"),
                      parse_formula("exists tau:I(x,f). top"))
            .ok());
  CHECK(check_formula(L, parse_context(""), parse_formula("top")).ok());
  // Atomic sugar + connectives.
  CHECK(check_formula(L, parse_context("x:O, f:A(x,x)"),
                      parse_formula("I(x,f) /\\ (bot -> top)"))
            .ok());
  CHECK(check_formula(
            L, parse_context(""),
            parse_formula(
                "forall x:O. forall y:O. forall f:A(x,y). exists g:A(y,x). top"))
            .ok());
  CHECK_FALSE(check_formula(L, parse_context(""),
                            parse_formula("exists f:A(x,x). top"))
                  .ok());
  // Shadowing is resolved by renaming, never an error.
  CHECK(check_formula(L, parse_context("x:O"),
                      parse_formula("forall x:O. exists y:O. top"))
            .ok());
}

TEST_CASE("context morphisms") {
  Signature L = testsig::lrg();
  ContextMorphism a;
  a.dst = parse_context("x:O, y:O, f:A(x,y)");
  a.src = parse_context("z:O, g:A(z,z)");
  a.ys = {"z", "z", "g"};
  CHECK(check_context_morphism(L, a).ok());

  // A(x,y)[z/x][z/y] == A(z,z).
  Workspace ws(L);
  Report rep;
  a.src = elaborate_context(ws, a.src, rep);
  a.dst = elaborate_context(ws, a.dst, rep);
  REQUIRE(rep.ok());
  CHECK(substitute(a, a.dst[2].sort) == parse_sort("A(z,z)"));

  ContextMorphism id;
  id.src = id.dst = parse_context("x:O, y:O, f:A(x,y)");
  id.ys = {"x", "y", "f"};
  CHECK(check_context_morphism(L, id).ok());

  // The contraction delta: (x:O, q:Iso(O)(x,x)) => (x:O, y:O, p:Iso(O)(x,y)).
  ContextMorphism delta;
  delta.src = parse_context("x:O, q:Iso(O)(x,x)");
  delta.dst = parse_context("x:O, y:O, p:Iso(O)(x,y)");
  delta.ys = {"x", "x", "q"};
  CHECK(check_context_morphism(L, delta).ok());

  ContextMorphism bad = id;
  bad.ys = {"x", "y", "x"};
  CHECK_FALSE(check_context_morphism(L, bad).ok());
}

TEST_CASE("alpha-equivalence and substitution") {
  Signature L = testsig::lrg();
  Workspace ws(L);
  Report rep;
  Context g = read_context(ws, "x:O", rep);
  REQUIRE(rep.ok());
  Formula a = read_formula(ws, g, "forall u:O. top", rep);
  Formula b = read_formula(ws, g, "forall w:O. top", rep);
  REQUIRE(rep.ok());
  CHECK(alpha_eq(a, b));

  Context g2 = read_context(ws, "x:O", rep);
  Formula c = read_formula(ws, g2, "exists f:A(x,x). I(x,f)", rep);
  Formula d = read_formula(ws, g2, "exists f:A(x,x). top", rep);
  Formula c2 = read_formula(ws, g2, "exists h:A(x,x). I(x,h)", rep);
  REQUIRE(rep.ok());
  CHECK_FALSE(alpha_eq(c, d));
  CHECK(alpha_eq(c, c2));

  // Capture avoidance: substituting y for x under a binder named y renames it.
  Formula e = parse_formula("exists y:A(x,x). top");
  Formula s = substitute_vars(e, {{"x", "y"}});
  CHECK(s.var != "y");
  CHECK(s.sort == parse_sort("A(y,y)"));
}

TEST_CASE("fresh avoids the given set") {
  std::set<std::string> avoid{"v0", "v1", "x"};
  std::string v = fresh(avoid);
  CHECK_FALSE(avoid.count(v));
}

TEST_CASE("weakening: adding fresh bindings preserves acceptance") {
  Signature L = testsig::lrg();
  Formula f = parse_formula("exists g:A(x,x). I(x,g)");
  CHECK(check_formula(L, parse_context("x:O"), f).ok());
  CHECK(check_formula(L, parse_context("x:O, y:O, h:A(y,y)"), f).ok());
}
