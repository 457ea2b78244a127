// Derivation checking for the FOLDS deductive systems, with the iso rules
// (rho), (tau-rho), (J) behind the theory's `system d-iso` switch, fragment
// gating, theory axioms, and derived-rule macros.
//
// Double-line rules carry an explicit direction: `fwd` is the downward
// reading of the rule as displayed (from the quantified/connective side to
// the decomposed side), `bwd` the upward one. (and) fwd projects a
// conjunction on the right; (or) fwd selects a disjunct on the left; (imp)
// fwd turns theta => phi -> psi into theta /\ phi => psi; (forall)/(exists)
// fwd move the binder into the context.

#include "foliso/proof.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace foliso {

namespace {

const Binding* lookup(const Context& g, const std::string& v) {
  for (const auto& b : g)
    if (b.var == v) return &b;
  return nullptr;
}

Formula mk_top() { return Formula{Formula::Kind::Top}; }

Formula mk_and(Formula a, Formula b) {
  Formula f;
  f.kind = Formula::Kind::And;
  f.children = {std::move(a), std::move(b)};
  return f;
}

Formula mk_imp(Formula a, Formula b) {
  Formula f;
  f.kind = Formula::Kind::Imp;
  f.children = {std::move(a), std::move(b)};
  return f;
}

Formula mk_exists(std::string var, SortExpr sort, Formula body) {
  Formula f;
  f.kind = Formula::Kind::Exists;
  f.var = std::move(var);
  f.sort = std::move(sort);
  f.children.push_back(std::move(body));
  return f;
}

std::set<std::string> seq_vars(const Sequent& s) {
  std::set<std::string> out;
  for (const auto& b : s.ctx) out.insert(b.var);
  for (const auto& v : free_vars(s.phi)) out.insert(v);
  for (const auto& v : free_vars(s.psi)) out.insert(v);
  return out;
}

// Positional renaming of `s` onto the variables of `target`: succeeds iff
// the contexts agree sort-wise under the induced renaming, and returns `s`
// expressed in target's variables.
std::optional<Sequent> align(const Sequent& s, const Context& target) {
  if (s.ctx.size() != target.size()) return std::nullopt;
  std::vector<std::pair<std::string, std::string>> m;
  for (size_t i = 0; i < target.size(); ++i) {
    if (substitute_vars(s.ctx[i].sort, m) != target[i].sort)
      return std::nullopt;
    if (s.ctx[i].var != target[i].var)
      m.push_back({s.ctx[i].var, target[i].var});
  }
  Sequent out;
  out.ctx = target;
  out.phi = substitute_vars(s.phi, m);
  out.psi = substitute_vars(s.psi, m);
  return out;
}

// `other` equals `ref` up to positional context renaming + alpha.
bool seq_match(const Sequent& ref, const Sequent& other) {
  auto a = align(other, ref.ctx);
  return a && alpha_eq(a->phi, ref.phi) && alpha_eq(a->psi, ref.psi);
}

// The context argument of `S` sitting at the cosieve position of the named
// arrow of S.head; empty string if the arrow is not in the cosieve.
std::string arg_at(const Signature& sig, const SortExpr& S,
                   const std::string& arrow) {
  int oi = sig.object_index(S.head);
  if (oi < 0) return "";
  auto cos = sig.cosieve(oi);
  for (size_t j = 0; j < cos.size(); ++j)
    if (sig.arrow(cos[j]).name == arrow && j < S.args.size())
      return S.args[j];
  return "";
}

// rho(q): exists w : Refl(K)(... r=q ...). top, with q free.
bool is_rho(const Signature& sig, const Formula& f, std::string* q_out,
            std::string* base_out) {
  if (f.kind != Formula::Kind::Exists) return false;
  if (f.children[0].kind != Formula::Kind::Top) return false;
  int oi = sig.object_index(f.sort.head);
  if (oi < 0 || sig.object(oi).lk != LogicalKind::Refl) return false;
  const std::string& base = sig.object(oi).base;
  std::string q = arg_at(sig, f.sort, refl_arrow_name(base));
  if (q.empty() || q == f.var) return false;
  if (q_out) *q_out = q;
  if (base_out) *base_out = base;
  return true;
}

// An atomic formula after elaboration: exists w : K(...). top.
bool atom_view(const Formula& f, SortExpr* sort_out) {
  if (f.kind != Formula::Kind::Exists) return false;
  if (f.children[0].kind != Formula::Kind::Top) return false;
  if (sort_out) *sort_out = f.sort;
  return true;
}

bool is_macro(const std::string& rule) {
  return rule == "and-intro" || rule == "exists-intro" || rule == "wJ" ||
         rule == "symm-eq" || rule == "trans-eq";
}

Fragment frag_max(Fragment a, Fragment b) { return a < b ? b : a; }

// ---------------------------------------------------------------------------
// Checker

struct Checker {
  const Theory& th;
  Workspace ws;
  Report rep;

  explicit Checker(const Theory& t) : th(t), ws(t.sig) {}

  void err(const std::string& code, const std::string& path,
           const std::string& msg) {
    rep.add(code, path, msg);
  }

  bool need_diso(const Derivation& d, const std::string& path) {
    if (th.diso) return true;
    err("system", path, "rule (" + d.rule + ") requires system d-iso");
    return false;
  }

  std::optional<Sequent> check(const Derivation& d, const std::string& path);

  std::optional<Sequent> check_rule(const Derivation& d, const Sequent& c,
                                    const std::vector<Sequent>& ps,
                                    const std::string& path);
};

std::optional<Sequent> Checker::check(const Derivation& d,
                                      const std::string& path) {
  if (is_macro(d.rule)) {
    Derivation ex;
    try {
      ex = expand_macro(th, d);
    } catch (const BuildError& e) {
      err("macro", path, std::string(e.what()));
      return std::nullopt;
    }
    auto got = check(ex, path + "/" + d.rule + "!");
    if (!got) return std::nullopt;
    Sequent c = d.conclusion;
    Report sr = check_sequent(ws, c);
    if (!sr.ok() || !seq_match(c, *got)) {
      err("macro", path, "expansion conclusion mismatch");
      return std::nullopt;
    }
    return c;
  }

  Sequent c = d.conclusion;
  Report sr = check_sequent(ws, c);
  if (!sr.ok()) {
    err("sequent", path, "ill-formed conclusion: " + sr.str());
    return std::nullopt;
  }

  Fragment need = frag_max(needed_fragment(c.phi), needed_fragment(c.psi));
  if (th.fragment < need) {
    err("fragment", path,
        "conclusion uses connectives of the " + fragment_str(need) +
            " fragment, theory is " + fragment_str(th.fragment));
    return std::nullopt;
  }

  std::vector<Sequent> ps;
  for (size_t i = 0; i < d.premises.size(); ++i) {
    auto p = check(d.premises[i], path + "/" + std::to_string(i));
    if (!p) return std::nullopt;
    ps.push_back(std::move(*p));
  }

  return check_rule(d, c, ps, path);
}

std::optional<Sequent> Checker::check_rule(const Derivation& d,
                                           const Sequent& c,
                                           const std::vector<Sequent>& ps,
                                           const std::string& path) {
  const Signature& sig = ws.sig();
  auto fail = [&](const std::string& msg) -> std::optional<Sequent> {
    err(d.rule, path, msg);
    return std::nullopt;
  };
  auto arity = [&](size_t n) {
    if (ps.size() == n) return true;
    err(d.rule, path,
        "expected " + std::to_string(n) + " premise(s), got " +
            std::to_string(ps.size()));
    return false;
  };
  auto need_dir = [&]() {
    if (d.dir == "fwd" || d.dir == "bwd") return true;
    err(d.rule, path, "double-line rule needs :dir fwd|bwd");
    return false;
  };

  const std::string& R = d.rule;

  if (R == "iden") {
    if (!arity(0)) return std::nullopt;
    if (!alpha_eq(c.phi, c.psi)) return fail("phi and psi differ");
    return c;
  }

  if (R == "axiom") {
    if (!arity(0)) return std::nullopt;
    const Sequent* ax = th.axiom(d.axiom);
    if (!ax) return fail("unknown axiom '" + d.axiom + "'");
    if (!seq_match(c, *ax))
      return fail("conclusion is not the axiom '" + d.axiom +
                  "' up to renaming");
    return c;
  }

  if (R == "top") {
    if (!arity(0)) return std::nullopt;
    if (c.psi.kind != Formula::Kind::Top) return fail("psi is not top");
    return c;
  }

  if (R == "bot") {
    if (!arity(0)) return std::nullopt;
    if (c.phi.kind != Formula::Kind::Bot) return fail("phi is not bot");
    return c;
  }

  if (R == "exists-top") {
    if (!arity(0)) return std::nullopt;
    if (c.phi.kind != Formula::Kind::Exists ||
        c.psi.kind != Formula::Kind::Exists ||
        c.psi.children[0].kind != Formula::Kind::Top ||
        c.psi.sort != c.phi.sort)
      return fail("expected exists x:K. phi => exists x:K. top");
    return c;
  }

  if (R == "lem") {
    if (!arity(0)) return std::nullopt;
    if (th.fragment != Fragment::Classical)
      return fail("(lem) is available only in the classical fragment");
    if (c.phi.kind != Formula::Kind::Top || c.psi.kind != Formula::Kind::Or)
      return fail("expected top => phi \\/ (phi -> bot)");
    const Formula& l = c.psi.children[0];
    const Formula& r = c.psi.children[1];
    if (r.kind != Formula::Kind::Imp ||
        r.children[1].kind != Formula::Kind::Bot ||
        !alpha_eq(r.children[0], l))
      return fail("right disjunct is not the negation of the left");
    return c;
  }

  if (R == "frob") {
    if (!arity(0)) return std::nullopt;
    if (c.phi.kind != Formula::Kind::And ||
        c.phi.children[1].kind != Formula::Kind::Exists ||
        c.psi.kind != Formula::Kind::Exists ||
        c.psi.sort != c.phi.children[1].sort)
      return fail("expected phi /\\ (exists x:K. psi) => exists x:K. (phi /\\ psi)");
    std::set<std::string> avoid = seq_vars(c);
    std::string w = fresh(avoid);
    Formula inner = substitute_vars(c.psi.children[0], {{c.psi.var, w}});
    const Formula& ex = c.phi.children[1];
    Formula exbody = substitute_vars(ex.children[0], {{ex.var, w}});
    if (inner.kind != Formula::Kind::And ||
        !alpha_eq(inner.children[0], c.phi.children[0]) ||
        !alpha_eq(inner.children[1], exbody))
      return fail("succedent body is not phi /\\ psi");
    return c;
  }

  if (R == "dist") {
    if (!arity(0)) return std::nullopt;
    if (c.phi.kind != Formula::Kind::And ||
        c.phi.children[1].kind != Formula::Kind::Or ||
        c.psi.kind != Formula::Kind::Or ||
        c.psi.children[0].kind != Formula::Kind::And ||
        c.psi.children[1].kind != Formula::Kind::And)
      return fail("expected phi /\\ (psi \\/ chi) => (phi /\\ psi) \\/ (phi /\\ chi)");
    const Formula& ph = c.phi.children[0];
    const Formula& orr = c.phi.children[1];
    if (!alpha_eq(c.psi.children[0].children[0], ph) ||
        !alpha_eq(c.psi.children[1].children[0], ph) ||
        !alpha_eq(c.psi.children[0].children[1], orr.children[0]) ||
        !alpha_eq(c.psi.children[1].children[1], orr.children[1]))
      return fail("distribution components do not match");
    return c;
  }

  if (R == "sub") {
    if (!arity(1)) return std::nullopt;
    if (!d.sub) return fail("missing :sub context morphism");
    Report mr = check_context_morphism(sig, *d.sub);
    if (!mr.ok()) return fail("ill-formed context morphism: " + mr.str());
    Report er;
    Context srcE = elaborate_context(ws, d.sub->src, er);
    Context dstE = elaborate_context(ws, d.sub->dst, er);
    if (!er.ok()) return fail("morphism contexts: " + er.str());
    auto ap = align(ps[0], dstE);
    if (!ap) return fail("premise context differs from the morphism codomain");
    ContextMorphism aE{srcE, dstE, d.sub->ys};
    Sequent expected{srcE, substitute(aE, ap->phi), substitute(aE, ap->psi)};
    if (!seq_match(c, expected))
      return fail("conclusion is not the substituted premise");
    return c;
  }

  if (R == "cut") {
    if (!arity(2)) return std::nullopt;
    auto a1 = align(ps[0], c.ctx);
    auto a2 = align(ps[1], c.ctx);
    if (!a1 || !a2) return fail("premise contexts differ from the conclusion");
    if (!alpha_eq(a1->phi, c.phi)) return fail("left premise antecedent mismatch");
    if (!alpha_eq(a2->psi, c.psi)) return fail("right premise succedent mismatch");
    if (!alpha_eq(a1->psi, a2->phi)) return fail("cut formulas differ");
    return c;
  }

  if (R == "con-wk") {
    if (!arity(1)) return std::nullopt;
    if (c.ctx.size() != ps[0].ctx.size() + 1 || c.ctx.empty())
      return fail("conclusion context must extend the premise by one binding");
    Context prefix(c.ctx.begin(), c.ctx.end() - 1);
    auto a = align(ps[0], prefix);
    if (!a) return fail("premise context is not the conclusion prefix");
    if (!alpha_eq(a->phi, c.phi) || !alpha_eq(a->psi, c.psi))
      return fail("formulas change under weakening");
    return c;
  }

  if (R == "con-exch") {
    if (!arity(1)) return std::nullopt;
    const Context& pc = ps[0].ctx;
    if (pc.size() != c.ctx.size()) return fail("context length changed");
    size_t k = 0;
    while (k < pc.size() && pc[k] == c.ctx[k]) ++k;
    if (k + 1 >= pc.size()) return fail("no adjacent swap found");
    if (!(pc[k] == c.ctx[k + 1]) || !(pc[k + 1] == c.ctx[k]))
      return fail("contexts differ by more than one adjacent swap");
    for (size_t j = k + 2; j < pc.size(); ++j)
      if (!(pc[j] == c.ctx[j]))
        return fail("contexts differ by more than one adjacent swap");
    const auto& later = pc[k + 1];
    if (std::find(later.sort.args.begin(), later.sort.args.end(),
                  pc[k].var) != later.sort.args.end())
      return fail("'" + later.var + "' depends on '" + pc[k].var + "'");
    if (!alpha_eq(ps[0].phi, c.phi) || !alpha_eq(ps[0].psi, c.psi))
      return fail("formulas change under exchange");
    return c;
  }

  if (R == "and") {
    if (!need_dir()) return std::nullopt;
    if (d.dir == "fwd") {
      if (!arity(1)) return std::nullopt;
      auto a = align(ps[0], c.ctx);
      if (!a) return fail("premise context differs from the conclusion");
      if (a->psi.kind != Formula::Kind::And)
        return fail("premise succedent is not a conjunction");
      if (!alpha_eq(a->phi, c.phi)) return fail("antecedent mismatch");
      if (!alpha_eq(c.psi, a->psi.children[0]) &&
          !alpha_eq(c.psi, a->psi.children[1]))
        return fail("succedent is neither conjunct");
      return c;
    }
    if (!arity(2)) return std::nullopt;
    if (c.psi.kind != Formula::Kind::And)
      return fail("conclusion succedent is not a conjunction");
    auto a1 = align(ps[0], c.ctx);
    auto a2 = align(ps[1], c.ctx);
    if (!a1 || !a2) return fail("premise contexts differ from the conclusion");
    if (!alpha_eq(a1->phi, c.phi) || !alpha_eq(a2->phi, c.phi))
      return fail("antecedent mismatch");
    if (!alpha_eq(a1->psi, c.psi.children[0]) ||
        !alpha_eq(a2->psi, c.psi.children[1]))
      return fail("conjunct mismatch");
    return c;
  }

  if (R == "or") {
    if (!need_dir()) return std::nullopt;
    if (d.dir == "fwd") {
      if (!arity(1)) return std::nullopt;
      auto a = align(ps[0], c.ctx);
      if (!a) return fail("premise context differs from the conclusion");
      if (a->phi.kind != Formula::Kind::Or)
        return fail("premise antecedent is not a disjunction");
      if (!alpha_eq(a->psi, c.psi)) return fail("succedent mismatch");
      if (!alpha_eq(c.phi, a->phi.children[0]) &&
          !alpha_eq(c.phi, a->phi.children[1]))
        return fail("antecedent is neither disjunct");
      return c;
    }
    if (!arity(2)) return std::nullopt;
    if (c.phi.kind != Formula::Kind::Or)
      return fail("conclusion antecedent is not a disjunction");
    auto a1 = align(ps[0], c.ctx);
    auto a2 = align(ps[1], c.ctx);
    if (!a1 || !a2) return fail("premise contexts differ from the conclusion");
    if (!alpha_eq(a1->psi, c.psi) || !alpha_eq(a2->psi, c.psi))
      return fail("succedent mismatch");
    if (!alpha_eq(a1->phi, c.phi.children[0]) ||
        !alpha_eq(a2->phi, c.phi.children[1]))
      return fail("disjunct mismatch");
    return c;
  }

  if (R == "imp") {
    if (!need_dir()) return std::nullopt;
    if (!arity(1)) return std::nullopt;
    auto a = align(ps[0], c.ctx);
    if (!a) return fail("premise context differs from the conclusion");
    if (d.dir == "fwd") {
      if (a->psi.kind != Formula::Kind::Imp)
        return fail("premise succedent is not an implication");
      if (c.phi.kind != Formula::Kind::And)
        return fail("conclusion antecedent is not a conjunction");
      if (!alpha_eq(c.phi.children[0], a->phi) ||
          !alpha_eq(c.phi.children[1], a->psi.children[0]) ||
          !alpha_eq(c.psi, a->psi.children[1]))
        return fail("implication components do not match");
      return c;
    }
    if (c.psi.kind != Formula::Kind::Imp)
      return fail("conclusion succedent is not an implication");
    if (a->phi.kind != Formula::Kind::And)
      return fail("premise antecedent is not a conjunction");
    if (!alpha_eq(a->phi.children[0], c.phi) ||
        !alpha_eq(a->phi.children[1], c.psi.children[0]) ||
        !alpha_eq(a->psi, c.psi.children[1]))
      return fail("implication components do not match");
    return c;
  }

  if (R == "forall" || R == "exists") {
    if (!need_dir()) return std::nullopt;
    if (!arity(1)) return std::nullopt;
    bool all = R == "forall";
    Formula::Kind qk = all ? Formula::Kind::Forall : Formula::Kind::Exists;
    if (d.dir == "fwd") {
      // From the quantified premise to the open conclusion.
      if (c.ctx.empty()) return fail("conclusion context is empty");
      Context prefix(c.ctx.begin(), c.ctx.end() - 1);
      auto a = align(ps[0], prefix);
      if (!a) return fail("premise context is not the conclusion prefix");
      const Formula& q = all ? a->psi : a->phi;
      if (q.kind != qk) return fail("premise formula is not " + R + "-shaped");
      if (q.sort != c.ctx.back().sort)
        return fail("binder sort differs from the appended binding");
      Formula open =
          substitute_vars(q.children[0], {{q.var, c.ctx.back().var}});
      const Formula& side = all ? a->phi : a->psi;
      const Formula& cside = all ? c.phi : c.psi;
      const Formula& copen = all ? c.psi : c.phi;
      if (!alpha_eq(side, cside)) return fail("side formula mismatch");
      if (!alpha_eq(open, copen)) return fail("opened body mismatch");
      return c;
    }
    // bwd: from the open premise to the quantified conclusion.
    const Formula& q = all ? c.psi : c.phi;
    if (q.kind != qk) return fail("conclusion formula is not " + R + "-shaped");
    std::string v = q.var;
    Formula body = q.children[0];
    if (lookup(c.ctx, v)) {
      std::set<std::string> avoid = seq_vars(c);
      std::string nv = fresh(avoid);
      body = substitute_vars(body, {{v, nv}});
      v = nv;
    }
    Context ectx = c.ctx;
    ectx.push_back({v, q.sort});
    Sequent expected;
    expected.ctx = ectx;
    expected.phi = all ? c.phi : body;
    expected.psi = all ? body : c.psi;
    if (!seq_match(expected, ps[0]))
      return fail("premise is not the opened conclusion");
    return c;
  }

  if (R == "rho") {
    if (!arity(0) || !need_diso(d, path)) return std::nullopt;
    if (!d.dir.empty() && d.dir != "fwd" && d.dir != "bwd")
      return fail("direction must be fwd or bwd");
    if (d.dir == "bwd") {
      // rho(i) /\ rho(j) => i ~ j : the reflexivity predicate is
      // single-valued (both witnesses are the trivial isomorphism).
      if (c.phi.kind != Formula::Kind::And)
        return fail("antecedent is not rho(i) /\\ rho(j)");
      std::string i, j, bi, bj;
      if (!is_rho(sig, c.phi.children[0], &i, &bi) ||
          !is_rho(sig, c.phi.children[1], &j, &bj) || bi != bj)
        return fail("antecedent is not rho(i) /\\ rho(j) over one sort");
      SortExpr S;
      if (!atom_view(c.psi, &S)) return fail("succedent is not atomic");
      int oi = sig.object_index(S.head);
      if (oi < 0 || sig.object(oi).lk != LogicalKind::Iso ||
          sig.object(oi).base != iso_name(bi))
        return fail("succedent sort is not an iso between the witnesses");
      if (arg_at(sig, S, src_name(iso_name(bi))) != i ||
          arg_at(sig, S, tgt_name(iso_name(bi))) != j)
        return fail("succedent endpoints are not i, j");
      return c;
    }
    const Formula& e = c.psi;
    if (e.kind != Formula::Kind::Exists)
      return fail("succedent is not exists q : x ~ x. rho(q)");
    int oi = sig.object_index(e.sort.head);
    if (oi < 0 || sig.object(oi).lk != LogicalKind::Iso)
      return fail("binder sort is not an iso sort");
    const std::string& base = sig.object(oi).base;
    std::string sx = arg_at(sig, e.sort, src_name(base));
    std::string tx = arg_at(sig, e.sort, tgt_name(base));
    if (sx.empty() || sx != tx)
      return fail("iso sort is not a loop x ~ x");
    std::string q, rbase;
    if (!is_rho(sig, e.children[0], &q, &rbase) || q != e.var || rbase != base)
      return fail("body is not rho(q)");
    return c;
  }

  if (R == "tau-rho") {
    if (!arity(0) || !need_diso(d, path)) return std::nullopt;
    if (!d.dir.empty() && d.dir != "fwd" && d.dir != "bwd")
      return fail("direction must be fwd or bwd");
    if (c.phi.kind != Formula::Kind::And)
      return fail("antecedent is not rho(q) /\\ theta");
    std::string q, base;
    if (!is_rho(sig, c.phi.children[0], &q, &base))
      return fail("left conjunct is not rho(q)");
    if (d.dir == "bwd") {
      // rho(q) /\ tau(q, a, b) => a ~ b : transport along the trivial
      // isomorphism is the identity functional relation.
      SortExpr T;
      if (!atom_view(c.phi.children[1], &T))
        return fail("right conjunct is not atomic");
      int ti = sig.object_index(T.head);
      if (ti < 0 || sig.object(ti).lk != LogicalKind::Transp)
        return fail("right conjunct is not a transport atom");
      const std::string& arrow = sig.object(ti).base;
      if (arg_at(sig, T, transp_path_name(arrow)) != q)
        return fail("transport path is not q");
      std::string a = arg_at(sig, T, transp1_name(arrow));
      std::string b = arg_at(sig, T, transp2_name(arrow));
      const Binding* ab = lookup(c.ctx, a);
      if (!ab) return fail("transported element is not a variable");
      SortExpr S;
      if (!atom_view(c.psi, &S)) return fail("succedent is not atomic");
      int oi = sig.object_index(S.head);
      if (oi < 0 || sig.object(oi).lk != LogicalKind::Iso ||
          sig.object(oi).base != ab->sort.head)
        return fail("succedent sort is not an iso over the transported sort");
      if (arg_at(sig, S, src_name(ab->sort.head)) != a ||
          arg_at(sig, S, tgt_name(ab->sort.head)) != b)
        return fail("succedent endpoints are not the transported elements");
      return c;
    }
    SortExpr T;
    if (!atom_view(c.psi, &T)) return fail("succedent is not atomic");
    int oi = sig.object_index(T.head);
    if (oi < 0 || sig.object(oi).lk != LogicalKind::Transp)
      return fail("succedent sort is not a transport sort");
    const std::string& arrow = sig.object(oi).base;
    if (arg_at(sig, T, transp_path_name(arrow)) != q)
      return fail("transport path is not q");
    if (arg_at(sig, T, transp1_name(arrow)) !=
        arg_at(sig, T, transp2_name(arrow)))
      return fail("transported elements differ");
    return c;
  }

  if (R == "J") {
    if (!arity(1) || !need_diso(d, path)) return std::nullopt;
    if (c.ctx.size() < 3)
      return fail("context must end with x:K, y:K, p : x ~ y");
    size_t n = c.ctx.size();
    const Binding& bx = c.ctx[n - 3];
    const Binding& by = c.ctx[n - 2];
    const Binding& bp = c.ctx[n - 1];
    int oi = sig.object_index(bp.sort.head);
    if (oi < 0 || sig.object(oi).lk != LogicalKind::Iso)
      return fail("last binding is not an iso");
    const std::string& base = sig.object(oi).base;
    if (arg_at(sig, bp.sort, src_name(base)) != bx.var ||
        arg_at(sig, bp.sort, tgt_name(base)) != by.var)
      return fail("iso endpoints are not the preceding x, y");
    if (bx.sort != by.sort) return fail("x and y have different sorts");
    Context ectx(c.ctx.begin(), c.ctx.end() - 3);
    ectx.push_back(bx);
    std::set<std::string> avoid = seq_vars(c);
    std::string qv = fresh(avoid);
    avoid.insert(qv);
    SortExpr Sq = substitute_vars(bp.sort, {{by.var, bx.var}});
    ectx.push_back({qv, Sq});
    Report er;
    if (ws.ensure_sort(refl_name(base), er) < 0)
      return fail("no reflexivity sort over " + base + ": " + er.str());
    SortExpr reflS;
    reflS.head = refl_name(base);
    reflS.args = {qv, bx.var};
    SortExpr reflE = elaborate_sort(ws, ectx, reflS, er);
    if (!er.ok()) return fail("rho(q) ill-formed: " + er.str());
    Formula rho = mk_exists(fresh(avoid), reflE, mk_top());
    std::vector<std::pair<std::string, std::string>> m = {
        {by.var, bx.var}, {bp.var, qv}};
    Sequent expected;
    expected.ctx = ectx;
    expected.phi = mk_and(rho, substitute_vars(c.phi, m));
    expected.psi = substitute_vars(c.psi, m);
    if (!seq_match(expected, ps[0]))
      return fail("premise is not the contracted sequent with rho(q)");
    return c;
  }

  return fail("unknown rule '" + R + "'");
}

// ---------------------------------------------------------------------------
// Macro expansion

Derivation mk_node(std::string rule, Sequent concl,
                   std::vector<Derivation> prem = {}, std::string dir = "") {
  Derivation d;
  d.rule = std::move(rule);
  d.conclusion = std::move(concl);
  d.dir = std::move(dir);
  d.premises = std::move(prem);
  return d;
}

Sequent mk_seq(Context ctx, Formula phi, Formula psi) {
  Sequent s;
  s.ctx = std::move(ctx);
  s.phi = std::move(phi);
  s.psi = std::move(psi);
  return s;
}

struct Expander {
  const Theory& th;
  Workspace ws;

  explicit Expander(const Theory& t) : th(t), ws(t.sig) {}

  [[noreturn]] void bad(const std::string& macro, const std::string& msg) {
    throw BuildError("(" + macro + ") inapplicable: " + msg);
  }

  Sequent elab(const std::string& macro, Sequent s) {
    Report r = check_sequent(ws, s);
    if (!r.ok()) bad(macro, "ill-formed sequent: " + r.str());
    return s;
  }

  Derivation sub_expand(Derivation d) {
    if (is_macro(d.rule)) return expand(d);
    for (auto& p : d.premises) p = sub_expand(std::move(p));
    return d;
  }

  // rho(q) over the given context, with both endpoint and path named.
  Formula make_rho(const std::string& macro, const Context& ctx,
                   const std::string& base, const std::string& q,
                   const std::string& x) {
    Report er;
    if (ws.ensure_sort(refl_name(base), er) < 0)
      bad(macro, "no reflexivity sort over " + base);
    SortExpr s;
    s.head = refl_name(base);
    s.args = {q, x};
    SortExpr se = elaborate_sort(ws, ctx, s, er);
    if (!er.ok()) bad(macro, "rho(q) ill-formed: " + er.str());
    std::set<std::string> avoid;
    for (const auto& b : ctx) avoid.insert(b.var);
    return mk_exists(fresh(avoid), se, mk_top());
  }

  Derivation expand(const Derivation& d);
  Derivation and_intro(const Derivation& d, const Sequent& c);
  Derivation exists_intro(const Derivation& d, const Sequent& c);
  Derivation wj(const Derivation& d, const Sequent& c);
  Derivation symm_eq(const Sequent& c);
  Derivation trans_eq(const Sequent& c);
};

Derivation Expander::expand(const Derivation& d) {
  Sequent c = elab(d.rule, d.conclusion);
  if (d.rule == "and-intro") return and_intro(d, c);
  if (d.rule == "exists-intro") return exists_intro(d, c);
  if (d.rule == "wJ") return wj(d, c);
  if (d.rule == "symm-eq") {
    if (!d.premises.empty()) bad(d.rule, "takes no premises");
    return symm_eq(c);
  }
  if (d.rule == "trans-eq") {
    if (!d.premises.empty()) bad(d.rule, "takes no premises");
    return trans_eq(c);
  }
  throw BuildError("'" + d.rule + "' is not a macro");
}

// theta /\ phi => psi   from   phi => psi.
Derivation Expander::and_intro(const Derivation& d, const Sequent& c) {
  if (d.premises.size() != 1) bad("and-intro", "takes one premise");
  if (c.phi.kind != Formula::Kind::And)
    bad("and-intro", "antecedent is not a conjunction");
  Derivation iden = mk_node("iden", mk_seq(c.ctx, c.phi, c.phi));
  Derivation proj = mk_node("and", mk_seq(c.ctx, c.phi, c.phi.children[1]),
                            {std::move(iden)}, "fwd");
  return mk_node("cut", c, {std::move(proj), sub_expand(d.premises[0])});
}

// theta => exists y:K. phi   from   theta => phi[w/y], w in the context.
Derivation Expander::exists_intro(const Derivation& d, const Sequent& c) {
  if (d.premises.size() != 1) bad("exists-intro", "takes one premise");
  if (c.psi.kind != Formula::Kind::Exists)
    bad("exists-intro", "succedent is not an existential");
  Sequent pc = elab("exists-intro", d.premises[0].conclusion);
  auto ap = align(pc, c.ctx);
  if (!ap) bad("exists-intro", "premise context differs from the conclusion");
  const SortExpr& K = c.psi.sort;
  std::string w;
  for (const auto& b : c.ctx) {
    if (b.sort != K) continue;
    if (alpha_eq(substitute_vars(c.psi.children[0], {{c.psi.var, b.var}}),
                 ap->psi)) {
      w = b.var;
      break;
    }
  }
  if (w.empty()) bad("exists-intro", "no witness in the context");
  std::set<std::string> avoid = seq_vars(c);
  std::string yv = fresh(avoid);
  Context ectx = c.ctx;
  ectx.push_back({yv, K});
  Formula open = substitute_vars(c.psi.children[0], {{c.psi.var, yv}});
  Derivation iden = mk_node("iden", mk_seq(c.ctx, c.psi, c.psi));
  Derivation opened = mk_node("exists", mk_seq(ectx, open, c.psi),
                              {std::move(iden)}, "fwd");
  Derivation subN = mk_node(
      "sub", mk_seq(c.ctx, substitute_vars(open, {{yv, w}}), c.psi),
      {std::move(opened)});
  ContextMorphism alpha;
  alpha.src = c.ctx;
  alpha.dst = ectx;
  for (const auto& b : c.ctx) alpha.ys.push_back(b.var);
  alpha.ys.push_back(w);
  subN.sub = std::move(alpha);
  return mk_node("cut", c, {sub_expand(d.premises[0]), std::move(subN)});
}

// Gamma, x, y, p | top => phi   from   Gamma, x, q | rho(q) => phi[x,x,q].
Derivation Expander::wj(const Derivation& d, const Sequent& c) {
  if (d.premises.size() != 1) bad("wJ", "takes one premise");
  if (c.phi.kind != Formula::Kind::Top) bad("wJ", "antecedent is not top");
  Sequent pc = elab("wJ", d.premises[0].conclusion);
  Formula rt = mk_and(pc.phi, mk_top());
  Derivation iden = mk_node("iden", mk_seq(pc.ctx, rt, rt));
  Derivation proj = mk_node("and", mk_seq(pc.ctx, rt, pc.phi),
                            {std::move(iden)}, "fwd");
  Derivation cutN = mk_node(
      "cut", mk_seq(pc.ctx, rt, pc.psi),
      {std::move(proj), sub_expand(d.premises[0])});
  return mk_node("J", c, {std::move(cutN)});
}

// Gamma, x, y | (exists p : x ~ y. top) => exists q : y ~ x. top.
Derivation Expander::symm_eq(const Sequent& c) {
  SortExpr Sxy, Syx;
  if (!atom_view(c.phi, &Sxy) || !atom_view(c.psi, &Syx))
    bad("symm-eq", "expected mere-equality antecedent and succedent");
  const Signature& sig = ws.sig();
  int oi = sig.object_index(Sxy.head);
  if (oi < 0 || sig.object(oi).lk != LogicalKind::Iso || Syx.head != Sxy.head)
    bad("symm-eq", "formulas are not iso atoms over a common sort");
  const std::string& base = sig.object(oi).base;
  std::string x = arg_at(sig, Sxy, src_name(base));
  std::string y = arg_at(sig, Sxy, tgt_name(base));
  if (arg_at(sig, Syx, src_name(base)) != y ||
      arg_at(sig, Syx, tgt_name(base)) != x)
    bad("symm-eq", "succedent endpoints are not swapped");
  size_t n = c.ctx.size();
  if (n < 2 || c.ctx[n - 2].var != x || c.ctx[n - 1].var != y)
    bad("symm-eq", "context must end with x, y");

  std::set<std::string> avoid = seq_vars(c);
  std::string pv = fresh(avoid);
  avoid.insert(pv);
  Context ctxP = c.ctx;
  ctxP.push_back({pv, Sxy});

  Context ctx2(c.ctx.begin(), c.ctx.end() - 1);  // drop y
  std::string qv = fresh(avoid);
  SortExpr Sxx = substitute_vars(Sxy, {{y, x}});
  ctx2.push_back({qv, Sxx});
  Formula rho = make_rho("symm-eq", ctx2, base, qv, x);
  Formula target = substitute_vars(c.psi, {{y, x}});

  Derivation topN = mk_node("top", mk_seq(ctx2, rho, mk_top()));
  Derivation intro = mk_node("exists-intro", mk_seq(ctx2, rho, target),
                             {std::move(topN)});
  Derivation wjN =
      mk_node("wJ", mk_seq(ctxP, mk_top(), c.psi), {std::move(intro)});
  return mk_node("exists", c, {sub_expand(std::move(wjN))}, "bwd");
}

// Gamma, x, y, z | (x ~ y) /\ (y ~ z) => x ~ z  (mere equalities).
Derivation Expander::trans_eq(const Sequent& c) {
  if (c.phi.kind != Formula::Kind::And)
    bad("trans-eq", "antecedent is not a conjunction");
  SortExpr Sxy, Syz, Sxz;
  if (!atom_view(c.phi.children[0], &Sxy) ||
      !atom_view(c.phi.children[1], &Syz) || !atom_view(c.psi, &Sxz))
    bad("trans-eq", "expected three mere-equality atoms");
  const Signature& sig = ws.sig();
  int oi = sig.object_index(Sxy.head);
  if (oi < 0 || sig.object(oi).lk != LogicalKind::Iso ||
      Syz.head != Sxy.head || Sxz.head != Sxy.head)
    bad("trans-eq", "formulas are not iso atoms over a common sort");
  const std::string& base = sig.object(oi).base;
  std::string x = arg_at(sig, Sxy, src_name(base));
  std::string y = arg_at(sig, Sxy, tgt_name(base));
  std::string z = arg_at(sig, Syz, tgt_name(base));
  if (arg_at(sig, Syz, src_name(base)) != y ||
      arg_at(sig, Sxz, src_name(base)) != x ||
      arg_at(sig, Sxz, tgt_name(base)) != z)
    bad("trans-eq", "endpoints do not chain x ~ y ~ z");
  size_t n = c.ctx.size();
  if (n < 3 || c.ctx[n - 3].var != x || c.ctx[n - 2].var != y ||
      c.ctx[n - 1].var != z)
    bad("trans-eq", "context must end with x, y, z");

  const Formula& Exy = c.phi.children[0];
  const Formula& Eyz = c.phi.children[1];
  const Formula& Exz = c.psi;
  Formula goal = mk_imp(Eyz, Exz);

  std::set<std::string> avoid = seq_vars(c);
  std::string pv = fresh(avoid);
  avoid.insert(pv);
  std::string qv = fresh(avoid);
  avoid.insert(qv);

  // Inner contexts.
  Context ctxXYZP = c.ctx;
  ctxXYZP.push_back({pv, Sxy});  // Gamma0, x, y, z, p
  Context g0(c.ctx.begin(), c.ctx.end() - 3);
  Context ctxZXYP = g0;
  ctxZXYP.push_back(c.ctx[n - 1]);  // z
  ctxZXYP.push_back(c.ctx[n - 3]);  // x
  ctxZXYP.push_back(c.ctx[n - 2]);  // y
  ctxZXYP.push_back({pv, Sxy});
  Context ctxXZYP = g0;
  ctxXZYP.push_back(c.ctx[n - 3]);  // x
  ctxXZYP.push_back(c.ctx[n - 1]);  // z
  ctxXZYP.push_back(c.ctx[n - 2]);  // y
  ctxXZYP.push_back({pv, Sxy});
  Context ctx4 = g0;
  ctx4.push_back(c.ctx[n - 1]);  // z
  ctx4.push_back(c.ctx[n - 3]);  // x
  SortExpr Sxx = substitute_vars(Sxy, {{y, x}});
  ctx4.push_back({qv, Sxx});

  Formula rho = make_rho("trans-eq", ctx4, base, qv, x);
  Formula goalD = substitute_vars(goal, {{y, x}});  // Exz -> Exz

  Derivation E3 = mk_node("iden", mk_seq(ctx4, Exz, Exz));
  Formula te = mk_and(mk_top(), Exz);
  Derivation idenN = mk_node("iden", mk_seq(ctx4, te, te));
  Derivation proj =
      mk_node("and", mk_seq(ctx4, te, Exz), {std::move(idenN)}, "fwd");
  Derivation E2 = mk_node("cut", mk_seq(ctx4, te, Exz),
                          {std::move(proj), std::move(E3)});
  Derivation E1 =
      mk_node("imp", mk_seq(ctx4, mk_top(), goalD), {std::move(E2)}, "bwd");
  Derivation topN = mk_node("top", mk_seq(ctx4, rho, mk_top()));
  Derivation D4 = mk_node("cut", mk_seq(ctx4, rho, goalD),
                          {std::move(topN), std::move(E1)});
  Derivation D3 =
      mk_node("wJ", mk_seq(ctxZXYP, mk_top(), goal), {std::move(D4)});
  Derivation Dmid = mk_node("con-exch", mk_seq(ctxXZYP, mk_top(), goal),
                            {std::move(D3)});
  Derivation D2 = mk_node("con-exch", mk_seq(ctxXYZP, mk_top(), goal),
                          {std::move(Dmid)});
  Derivation D1 =
      mk_node("exists", mk_seq(c.ctx, Exy, goal), {std::move(D2)}, "bwd");
  return mk_node("imp", c, {sub_expand(std::move(D1))}, "fwd");
}

// ---------------------------------------------------------------------------
// S-expression front end

struct SNode {
  bool atom = true;
  std::string text;
  std::vector<SNode> kids;
};

struct SParser {
  const std::string& s;
  size_t i = 0;

  explicit SParser(const std::string& text) : s(text) {}

  void skip() {
    for (;;) {
      while (i < s.size() && std::isspace((unsigned char)s[i])) ++i;
      if (i < s.size() && s[i] == ';') {
        while (i < s.size() && s[i] != '\n') ++i;
        continue;
      }
      break;
    }
  }

  SNode parse() {
    skip();
    if (i >= s.size()) throw ParseError("unexpected end of proof script");
    if (s[i] == '(') {
      ++i;
      SNode n;
      n.atom = false;
      for (;;) {
        skip();
        if (i >= s.size()) throw ParseError("unbalanced '('");
        if (s[i] == ')') {
          ++i;
          return n;
        }
        n.kids.push_back(parse());
      }
    }
    if (s[i] == ')') throw ParseError("unexpected ')'");
    SNode n;
    if (s[i] == '"') {
      ++i;
      size_t j = s.find('"', i);
      if (j == std::string::npos) throw ParseError("unterminated string");
      n.text = s.substr(i, j - i);
      i = j + 1;
      return n;
    }
    size_t j = i;
    while (j < s.size() && !std::isspace((unsigned char)s[j]) &&
           s[j] != '(' && s[j] != ')' && s[j] != ';')
      ++j;
    n.text = s.substr(i, j - i);
    i = j;
    return n;
  }
};

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

Sequent parse_sequent_text(const std::string& text) {
  size_t bar = text.find('|');
  if (bar == std::string::npos)
    throw ParseError("sequent needs '<context> | <phi> => <psi>'");
  size_t arr = text.find("=>", bar);
  if (arr == std::string::npos) throw ParseError("sequent needs '=>'");
  Sequent q;
  q.ctx = parse_context(trim(text.substr(0, bar)));
  q.phi = parse_formula(trim(text.substr(bar + 1, arr - bar - 1)));
  q.psi = parse_formula(trim(text.substr(arr + 2)));
  return q;
}

Sequent sequent_of(const SNode& n) {
  if (n.atom || n.kids.size() != 4 || n.kids[0].text != "seq")
    throw ParseError("expected (seq \"ctx\" \"phi\" \"psi\")");
  Sequent q;
  q.ctx = parse_context(n.kids[1].text);
  q.phi = parse_formula(n.kids[2].text);
  q.psi = parse_formula(n.kids[3].text);
  return q;
}

ContextMorphism morphism_of(const SNode& n) {
  if (n.atom || n.kids.size() != 4 || n.kids[0].text != "sub")
    throw ParseError("expected (sub \"src-ctx\" \"dst-ctx\" \"y1 y2 ...\")");
  ContextMorphism a;
  a.src = parse_context(n.kids[1].text);
  a.dst = parse_context(n.kids[2].text);
  std::istringstream ys(n.kids[3].text);
  std::string y;
  while (ys >> y) a.ys.push_back(y);
  return a;
}

Derivation derivation_of(const SNode& n) {
  if (n.atom || n.kids.size() < 2 || n.kids[0].text != "rule")
    throw ParseError("expected (rule <name> :conclusion (seq ...) ...)");
  Derivation d;
  d.rule = n.kids[1].text;
  bool have_conclusion = false;
  size_t i = 2;
  while (i < n.kids.size()) {
    const SNode& k = n.kids[i];
    if (k.atom && !k.text.empty() && k.text[0] == ':') {
      if (i + 1 >= n.kids.size())
        throw ParseError("keyword '" + k.text + "' needs a value");
      const SNode& v = n.kids[i + 1];
      if (k.text == ":conclusion") {
        d.conclusion = sequent_of(v);
        have_conclusion = true;
      } else if (k.text == ":sub") {
        d.sub = morphism_of(v);
      } else if (k.text == ":axiom") {
        d.axiom = v.text;
      } else if (k.text == ":dir") {
        d.dir = v.text;
      } else {
        throw ParseError("unknown keyword '" + k.text + "'");
      }
      i += 2;
      continue;
    }
    d.premises.push_back(derivation_of(k));
    ++i;
  }
  if (!have_conclusion)
    throw ParseError("rule node '" + d.rule + "' lacks :conclusion");
  return d;
}

// ---------------------------------------------------------------------------
// Theory front end

struct TheoryLexer {
  const std::string& s;
  size_t i = 0;

  explicit TheoryLexer(const std::string& text) : s(text) {}

  void skip() {
    for (;;) {
      while (i < s.size() && std::isspace((unsigned char)s[i])) ++i;
      if (i + 1 < s.size() && s[i] == '/' && s[i + 1] == '/') {
        while (i < s.size() && s[i] != '\n') ++i;
        continue;
      }
      break;
    }
  }

  std::string word() {
    skip();
    size_t j = i;
    while (j < s.size() && !std::isspace((unsigned char)s[j]) &&
           s[j] != '{' && s[j] != '}' && s[j] != ';' && s[j] != ':')
      ++j;
    if (j == i) throw ParseError("expected a word in theory file");
    std::string out = s.substr(i, j - i);
    i = j;
    return out;
  }

  void expect(char c) {
    skip();
    if (i >= s.size() || s[i] != c)
      throw ParseError(std::string("expected '") + c + "' in theory file");
    ++i;
  }

  bool peek(char c) {
    skip();
    return i < s.size() && s[i] == c;
  }

  std::string until(char c) {
    size_t j = s.find(c, i);
    if (j == std::string::npos)
      throw ParseError(std::string("expected '") + c + "' in theory file");
    std::string out = s.substr(i, j - i);
    i = j + 1;
    return out;
  }

  bool done() {
    skip();
    return i >= s.size();
  }
};

}  // namespace

// ---------------------------------------------------------------------------

Fragment parse_fragment(const std::string& text) {
  if (text == "regular") return Fragment::Regular;
  if (text == "coherent") return Fragment::Coherent;
  if (text == "intuitionistic") return Fragment::Intuitionistic;
  if (text == "classical") return Fragment::Classical;
  throw ParseError("unknown fragment '" + text + "'");
}

std::string fragment_str(Fragment f) {
  switch (f) {
    case Fragment::Regular: return "regular";
    case Fragment::Coherent: return "coherent";
    case Fragment::Intuitionistic: return "intuitionistic";
    case Fragment::Classical: return "classical";
  }
  return "?";
}

Fragment needed_fragment(const Formula& f) {
  Fragment out = Fragment::Regular;
  switch (f.kind) {
    case Formula::Kind::Bot:
    case Formula::Kind::Or:
      out = Fragment::Coherent;
      break;
    case Formula::Kind::Imp:
    case Formula::Kind::Forall:
      out = Fragment::Intuitionistic;
      break;
    default:
      break;
  }
  for (const auto& ch : f.children) out = frag_max(out, needed_fragment(ch));
  return out;
}

const Sequent* Theory::axiom(const std::string& axname) const {
  for (const auto& [n, s] : axioms)
    if (n == axname) return &s;
  return nullptr;
}

Theory parse_theory(const std::string& text, Signature base) {
  TheoryLexer lx(text);
  if (lx.word() != "theory") throw ParseError("theory file must start with 'theory'");
  Theory th;
  th.name = lx.word();
  if (lx.word() != "over") throw ParseError("expected 'over <signature>'");
  std::string signame = lx.word();
  if (signame != base.name)
    throw BuildError("theory is over '" + signame + "', got signature '" +
                     base.name + "'");
  th.sig = std::move(base);
  Workspace ws(th.sig);
  lx.expect('{');
  while (!lx.peek('}')) {
    std::string kw = lx.word();
    if (kw == "fragment") {
      th.fragment = parse_fragment(lx.word());
      lx.expect(';');
    } else if (kw == "system") {
      std::string sys = lx.word();
      if (sys == "folds")
        th.diso = false;
      else if (sys == "d-iso")
        th.diso = true;
      else
        throw ParseError("unknown system '" + sys + "'");
      lx.expect(';');
    } else if (kw == "axiom") {
      std::string axname = lx.word();
      lx.expect(':');
      Sequent q = parse_sequent_text(lx.until(';'));
      Report r = check_sequent(ws, q);
      if (!r.ok())
        throw BuildError("axiom '" + axname + "' ill-formed:\n" + r.str());
      Fragment need = frag_max(needed_fragment(q.phi), needed_fragment(q.psi));
      if (th.fragment < need)
        throw BuildError("axiom '" + axname + "' uses connectives outside the " +
                         fragment_str(th.fragment) + " fragment");
      th.axioms.emplace_back(std::move(axname), std::move(q));
    } else {
      throw ParseError("unknown theory clause '" + kw + "'");
    }
  }
  return th;
}

ProofFile parse_proof(const std::string& text) {
  SParser sp(text);
  SNode root = sp.parse();
  if (root.atom || root.kids.size() < 2 || root.kids[0].text != "proof")
    throw ParseError("expected (proof <name> ... (rule ...))");
  ProofFile pf;
  pf.name = root.kids[1].text;
  size_t i = 2;
  bool have_root = false;
  while (i < root.kids.size()) {
    const SNode& k = root.kids[i];
    if (k.atom && !k.text.empty() && k.text[0] == ':') {
      if (i + 1 >= root.kids.size())
        throw ParseError("keyword '" + k.text + "' needs a value");
      if (k.text == ":over")
        pf.over = root.kids[i + 1].text;
      else if (k.text == ":theory")
        pf.theory = root.kids[i + 1].text;
      else
        throw ParseError("unknown keyword '" + k.text + "'");
      i += 2;
      continue;
    }
    if (have_root) throw ParseError("proof file has more than one root rule");
    pf.root = derivation_of(k);
    have_root = true;
    ++i;
  }
  if (!have_root) throw ParseError("proof file lacks a root rule");
  return pf;
}

Derivation parse_derivation(const std::string& text) {
  SParser sp(text);
  return derivation_of(sp.parse());
}

Report check_derivation(const Theory& th, const Derivation& d) {
  Checker ck(th);
  ck.check(d, "root");
  return ck.rep;
}

Derivation expand_macro(const Theory& th, const Derivation& d) {
  Expander ex(th);
  return ex.expand(d);
}

std::pair<bool, Report> entails(const Theory& th, const Sequent& seq,
                                const Derivation& d) {
  Checker ck(th);
  auto got = ck.check(d, "root");
  if (got) {
    Sequent goal = seq;
    Report r = check_sequent(ck.ws, goal);
    if (!r.ok()) {
      ck.rep.add("goal", "", "ill-formed goal sequent: " + r.str());
    } else if (!seq_match(goal, *got)) {
      ck.rep.add("goal", "",
                 "derivation concludes " + got->str() + ", wanted " +
                     goal.str());
    }
  }
  return {ck.rep.ok(), ck.rep};
}

}  // namespace foliso
