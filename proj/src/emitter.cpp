#include "foliso/emitter.hpp"

#include <algorithm>

namespace foliso {

namespace {

// Internal binder names start with '%' (not expressible in the surface
// grammar), so they can never capture user context variables. Everything is
// renumbered to v0,v1,... by normalize_type before leaving this module.
std::string family_var(const std::string& sort) { return "%" + sort; }

int cosieve_pos(const Signature& sig, const std::vector<int>& cos, int arrow) {
  auto it = std::find(cos.begin(), cos.end(), arrow);
  if (it == cos.end())
    throw BuildError("emit: arrow " + sig.arrows[arrow].name +
                     " not in expected cosieve");
  return int(it - cos.begin());
}

struct Emitter {
  const Signature& sig;
  EmitMode mode;
  int freshc = 0;

  std::string fresh_binder() { return "%v" + std::to_string(freshc++); }

  // Arguments of the sub-instance reached along arrow f, given the instance
  // arguments of K = dom f (indexed by cosieve(K) position).
  std::vector<TypeExpr> args_along(int K, int f,
                                   const std::vector<TypeExpr>& args) {
    auto cosK = sig.cosieve(K);
    auto cosC = sig.cosieve(sig.arrows[f].cod);
    std::vector<TypeExpr> out;
    for (int p : cosC)
      out.push_back(args[cosieve_pos(sig, cosK, sig.compose2(p, f))]);
    return out;
  }

  // The type of one instance of sort `oi` at the given arguments (one term
  // per cosieve arrow, canonical order). In HoTT mode logical sorts become
  // Id / Id-refl / Id-trans types (Def-style induction on the level).
  TypeExpr instance(int oi, const std::vector<TypeExpr>& args) {
    const ObjectSym& obj = sig.objects[oi];
    if (mode == EmitMode::MLTT || obj.lk == LogicalKind::None) {
      TypeExpr spine = t_var(family_var(obj.name));
      if (args.empty()) {
        spine = t_app(std::move(spine), t_star());
      } else {
        for (const TypeExpr& a : args) spine = t_app(std::move(spine), a);
      }
      return t_el(std::move(spine));
    }
    auto cos = sig.cosieve(oi);
    auto at = [&](int arrow) -> const TypeExpr& {
      return args[cosieve_pos(sig, cos, arrow)];
    };
    switch (obj.lk) {
      case LogicalKind::Iso: {
        int B = sig.object_index(obj.base);
        int s = sig.arrow_index(src_name(obj.base));
        int t = sig.arrow_index(tgt_name(obj.base));
        return t_id(instance(B, args_along(oi, s, args)), at(s), at(t));
      }
      case LogicalKind::Refl: {
        int I = sig.object_index(iso_name(obj.base));
        int r = sig.arrow_index(refl_arrow_name(obj.base));
        int s = sig.arrow_index(src_name(obj.base));
        int loop = sig.compose2(s, r);
        return t_id(instance(I, args_along(oi, r, args)), at(r),
                    t_refl(at(loop)));
      }
      case LogicalKind::Transp: {
        int h = sig.arrow_index(obj.base);
        int A = sig.arrows[h].dom;
        int e = sig.arrow_index(transp_path_name(obj.base));
        int f1 = sig.arrow_index(transp1_name(obj.base));
        int f2 = sig.arrow_index(transp2_name(obj.base));
        std::string v = fresh_binder();
        // Family over the codomain instance: the A-instance whose h-argument
        // is the transport variable.
        auto cosA = sig.cosieve(A);
        std::vector<TypeExpr> famargs;
        for (int g : cosA) {
          if (g == h)
            famargs.push_back(t_var(v));
          else
            famargs.push_back(args[cosieve_pos(
                sig, cos, sig.compose2(g, f1))]);
        }
        return t_id(instance(A, args_along(oi, f2, args)), at(f2),
                    t_trans(at(e), v, instance(A, famargs), at(f1)));
      }
      default:
        throw BuildError("emit: unexpected logical sort " + obj.name);
    }
  }

  // T_K: the family type of sort K in the structure record / Gamma_L.
  TypeExpr family_type(int oi) {
    const ObjectSym& obj = sig.objects[oi];
    TypeExpr uni =
        mode == EmitMode::HoTT ? t_u(obj.h) : t_u(HLevel::inf());
    auto cos = sig.cosieve(oi);
    if (cos.empty())  // Pi over the empty cosieve is 1 -> E
      return t_pi({{fresh_binder(), t_unit()}}, std::move(uni));
    std::vector<std::pair<std::string, TypeExpr>> bs;
    std::vector<TypeExpr> argvars;
    for (int f : cos) argvars.push_back(t_var("%" + sig.arrows[f].name));
    for (size_t j = 0; j < cos.size(); ++j) {
      int f = cos[j];
      bs.emplace_back("%" + sig.arrows[f].name,
                      instance(sig.arrows[f].cod, args_along(oi, f, argvars)));
    }
    return t_pi(std::move(bs), std::move(uni));
  }

  // Sorts heading the record: all of them in MLTT mode, NL(L) in HoTT mode.
  std::vector<int> record_sorts() {
    std::vector<int> out;
    for (int i = 0; i < (int)sig.objects.size(); ++i)
      if (mode == EmitMode::MLTT || sig.objects[i].lk == LogicalKind::None)
        out.push_back(i);
    return out;
  }

  Telescope gamma_l() {
    Telescope out;
    for (int i : record_sorts())
      out.emplace_back(family_var(sig.objects[i].name), family_type(i));
    return out;
  }

  TypeExpr sort_type(const SortExpr& k) {
    int oi = sig.object_index(k.head);
    if (oi < 0) throw BuildError("emit: unknown sort " + k.head);
    std::vector<TypeExpr> args;
    for (const auto& a : k.args) args.push_back(t_var(a));
    return instance(oi, args);
  }

  TypeExpr formula_type(const Formula& f) {
    using K = Formula::Kind;
    switch (f.kind) {
      case K::Bot: return t_empty();
      case K::Top: return t_unit();
      case K::And:
        return t_sigma({{fresh_binder(), formula_type(f.children[0])}},
                       formula_type(f.children[1]));
      case K::Or: {
        TypeExpr s =
            t_sum(formula_type(f.children[0]), formula_type(f.children[1]));
        return mode == EmitMode::HoTT ? t_trunc(std::move(s)) : s;
      }
      case K::Imp:
        return t_pi({{fresh_binder(), formula_type(f.children[0])}},
                    formula_type(f.children[1]));
      case K::Forall:
        return t_pi({{f.var, sort_type(f.sort)}},
                    formula_type(f.children[0]));
      case K::Exists: {
        TypeExpr s = t_sigma({{f.var, sort_type(f.sort)}},
                             formula_type(f.children[0]));
        return mode == EmitMode::HoTT ? t_trunc(std::move(s)) : s;
      }
      case K::Atom:
        throw BuildError("emit: formulas must be elaborated (atom found)");
    }
    return t_unit();
  }

  TypeExpr record(std::vector<int> sorts) {
    if (sorts.empty()) return t_unit();
    std::vector<std::pair<std::string, TypeExpr>> bs;
    for (size_t i = 0; i + 1 < sorts.size(); ++i)
      bs.emplace_back(family_var(sig.objects[sorts[i]].name),
                      family_type(sorts[i]));
    TypeExpr body = family_type(sorts.back());
    if (bs.empty()) return body;
    return t_sigma(std::move(bs), std::move(body));
  }
};

}  // namespace

TypeExpr emit_struc(const Signature& sig) {
  Emitter em{sig, EmitMode::MLTT};
  return normalize_type(em.record(em.record_sorts()));
}

TypeExpr emit_hstruc(const Signature& sig) {
  Report rep = validate_h_signature(sig);
  if (!rep.ok()) throw BuildError("emit_hstruc: invalid h-signature: " + rep.str());
  Emitter em{sig, EmitMode::HoTT};
  return normalize_type(em.record(em.record_sorts()));
}

Telescope emit_telescope(const Signature& sig, const Context& gamma,
                         EmitMode mode) {
  Emitter em{sig, mode};
  Telescope out = em.gamma_l();
  for (const auto& b : gamma) out.emplace_back(b.var, em.sort_type(b.sort));
  return out;
}

TypeExpr emit_sort_type(const Signature& sig, const SortExpr& k,
                        EmitMode mode) {
  Emitter em{sig, mode};
  return em.sort_type(k);
}

TypeExpr emit_formula_type(const Signature& sig, const Formula& f,
                           EmitMode mode) {
  Emitter em{sig, mode};
  return em.formula_type(f);
}

TypeExpr emit_sort(const Signature& sig, const Context& gamma,
                   const SortExpr& k, EmitMode mode) {
  return normalize_type(
      t_pi(emit_telescope(sig, gamma, mode), emit_sort_type(sig, k, mode)));
}

TypeExpr emit_formula(const Signature& sig, const Context& gamma,
                      const Formula& f, EmitMode mode) {
  return normalize_type(
      t_pi(emit_telescope(sig, gamma, mode), emit_formula_type(sig, f, mode)));
}

TypeExpr emit_sequent(const Signature& sig, const Sequent& s, EmitMode mode) {
  Telescope tel = emit_telescope(sig, s.ctx, mode);
  tel.emplace_back("%ante", emit_formula_type(sig, s.phi, mode));
  return normalize_type(t_pi(std::move(tel), emit_formula_type(sig, s.psi, mode)));
}

TypeExpr emit_extension(const Signature& sig, const Context& gamma,
                        const Formula& f, EmitMode mode) {
  return normalize_type(t_sigma(emit_telescope(sig, gamma, mode),
                                emit_formula_type(sig, f, mode)));
}

TypeExpr emit_models(const Signature& sig, const std::vector<Sequent>& axioms,
                     EmitMode mode) {
  Emitter em{sig, mode};
  Telescope tel = em.gamma_l();
  // Each axiom is interpreted without its own Gamma_L prefix: the outer one
  // is shared by all of them.
  std::vector<TypeExpr> interps;
  for (const auto& ax : axioms) {
    Telescope inner;
    for (const auto& b : ax.ctx) inner.emplace_back(b.var, em.sort_type(b.sort));
    inner.emplace_back(em.fresh_binder(), em.formula_type(ax.phi));
    interps.push_back(t_pi(std::move(inner), em.formula_type(ax.psi)));
  }
  TypeExpr body = t_unit();
  if (!interps.empty()) {
    body = interps.back();
    for (size_t i = 0; i + 1 < interps.size(); ++i)
      tel.emplace_back(em.fresh_binder(), interps[i]);
  }
  return normalize_type(t_sigma(std::move(tel), std::move(body)));
}

}  // namespace foliso
