#include "foliso/kernel.hpp"

#include <algorithm>
#include <set>

namespace foliso {

namespace {

using Tag = TypeExpr::Tag;
using Ctx = std::vector<std::pair<std::string, TypeExpr>>;

[[noreturn]] void fail(const std::string& msg) { throw KernelError{msg}; }

void free_vars_rec(const TypeExpr& e, std::set<std::string>& bound,
                   std::set<std::string>& out) {
  switch (e.tag) {
    case Tag::Var:
      if (!bound.count(e.var)) out.insert(e.var);
      return;
    case Tag::Lam: {
      free_vars_rec(e.kids[0], bound, out);
      bool fresh = bound.insert(e.var).second;
      free_vars_rec(e.kids[1], bound, out);
      if (fresh) bound.erase(e.var);
      return;
    }
    case Tag::Pi:
    case Tag::Sigma: {
      std::vector<std::string> added;
      for (size_t i = 0; i < e.binder_names.size(); ++i) {
        free_vars_rec(e.kids[i], bound, out);
        if (bound.insert(e.binder_names[i]).second)
          added.push_back(e.binder_names[i]);
      }
      free_vars_rec(e.kids.back(), bound, out);
      for (const auto& v : added) bound.erase(v);
      return;
    }
    case Tag::Trans: {
      free_vars_rec(e.kids[0], bound, out);
      bool fresh = bound.insert(e.var).second;
      free_vars_rec(e.kids[1], bound, out);
      if (fresh) bound.erase(e.var);
      free_vars_rec(e.kids[2], bound, out);
      return;
    }
    default:
      for (const auto& k : e.kids) free_vars_rec(k, bound, out);
  }
}

std::set<std::string> free_vars(const TypeExpr& e) {
  std::set<std::string> bound, out;
  free_vars_rec(e, bound, out);
  return out;
}

std::string freshen(const std::string& base, const std::set<std::string>& avoid) {
  std::string v = base;
  while (avoid.count(v)) v += "'";
  return v;
}

}  // namespace

TypeExpr subst_term(const TypeExpr& e, const std::string& var,
                    const TypeExpr& value) {
  switch (e.tag) {
    case Tag::Var:
      return e.var == var ? value : e;
    case Tag::Lam: {
      TypeExpr dom = subst_term(e.kids[0], var, value);
      if (e.var == var) return t_lam(e.var, std::move(dom), e.kids[1]);
      std::string v = e.var;
      TypeExpr body = e.kids[1];
      std::set<std::string> fv = free_vars(value);
      if (fv.count(v)) {
        fv.insert(var);
        auto bfv = free_vars(body);
        fv.insert(bfv.begin(), bfv.end());
        std::string v2 = freshen(v, fv);
        body = subst_term(body, v, t_var(v2));
        v = v2;
      }
      return t_lam(v, std::move(dom), subst_term(body, var, value));
    }
    case Tag::Pi:
    case Tag::Sigma: {
      // Substitute dom-by-dom; stop (and rename if needed) at each binder.
      TypeExpr out = e;
      std::set<std::string> fv = free_vars(value);
      bool shadowed = false;
      for (size_t i = 0; i < out.binder_names.size(); ++i) {
        if (!shadowed) out.kids[i] = subst_term(out.kids[i], var, value);
        std::string& v = out.binder_names[i];
        if (shadowed) continue;
        if (v == var) {
          shadowed = true;
          continue;
        }
        if (fv.count(v)) {
          std::set<std::string> avoid = fv;
          avoid.insert(var);
          for (size_t j = i; j < out.kids.size(); ++j) {
            auto k = free_vars(out.kids[j]);
            avoid.insert(k.begin(), k.end());
          }
          std::string v2 = freshen(v, avoid);
          for (size_t j = i + 1; j < out.kids.size(); ++j)
            out.kids[j] = subst_term(out.kids[j], v, t_var(v2));
          v = v2;
        }
      }
      if (!shadowed)
        out.kids.back() = subst_term(out.kids.back(), var, value);
      return out;
    }
    case Tag::Trans: {
      TypeExpr path = subst_term(e.kids[0], var, value);
      TypeExpr arg = subst_term(e.kids[2], var, value);
      std::string v = e.var;
      TypeExpr fam = e.kids[1];
      if (v != var) {
        std::set<std::string> fv = free_vars(value);
        if (fv.count(v)) {
          fv.insert(var);
          auto bfv = free_vars(fam);
          fv.insert(bfv.begin(), bfv.end());
          std::string v2 = freshen(v, fv);
          fam = subst_term(fam, v, t_var(v2));
          v = v2;
        }
        fam = subst_term(fam, var, value);
      }
      return t_trans(std::move(path), v, std::move(fam), std::move(arg));
    }
    default: {
      TypeExpr out = e;
      for (auto& k : out.kids) k = subst_term(k, var, value);
      return out;
    }
  }
}

namespace {

TypeExpr whnf(TypeExpr e) {
  for (;;) {
    if (e.tag == Tag::App) {
      TypeExpr fn = whnf(e.kids[0]);
      if (fn.tag == Tag::Lam) {
        e = subst_term(fn.kids[1], fn.var, e.kids[1]);
        continue;
      }
      if (fn != e.kids[0]) e.kids[0] = fn;
      return e;
    }
    if (e.tag == Tag::Trans) {
      TypeExpr p = whnf(e.kids[0]);
      if (p.tag == Tag::ReflTm) {
        e = e.kids[2];
        continue;
      }
      if (p != e.kids[0]) e.kids[0] = p;
      return e;
    }
    return e;
  }
}

TypeExpr deep_reduce(const TypeExpr& in) {
  TypeExpr e = whnf(in);
  for (auto& k : e.kids) k = deep_reduce(k);
  // Reduction inside kids can expose a new redex at the head.
  if ((e.tag == Tag::App && e.kids[0].tag == Tag::Lam) ||
      (e.tag == Tag::Trans && e.kids[0].tag == Tag::ReflTm))
    return deep_reduce(whnf(e));
  return e;
}

bool defeq(const TypeExpr& a, const TypeExpr& b) {
  return normalize_type(deep_reduce(a)) == normalize_type(deep_reduce(b));
}

HLevel succ(HLevel h) {
  return h.is_inf() ? h : HLevel::fin(h.value + 1);
}
HLevel pred0(HLevel h) {
  return h.is_inf() ? h : HLevel::fin(h.value > 0 ? h.value - 1 : 0);
}
HLevel hmax(HLevel a, HLevel b) {
  if (a.is_inf() || b.is_inf()) return HLevel::inf();
  return HLevel::fin(std::max(a.value, b.value));
}
bool hle(HLevel a, HLevel b) {
  if (b.is_inf()) return true;
  return !a.is_inf() && a.value <= b.value;
}

struct Checker {
  Ctx ctx;

  const TypeExpr* lookup(const std::string& v) const {
    for (auto it = ctx.rbegin(); it != ctx.rend(); ++it)
      if (it->first == v) return &it->second;
    return nullptr;
  }

  // H-level assumptions induced by the context: a variable whose type is a
  // (possibly dependent-function-valued) universe U^n bounds its instances.
  std::map<std::string, HLevel> assumptions() const {
    std::map<std::string, HLevel> out;
    for (const auto& [v, T] : ctx) {
      TypeExpr t = whnf(T);
      while (t.tag == Tag::Pi) t = whnf(t.kids.back());
      if (t.tag == Tag::U) out[v] = t.h;
    }
    return out;
  }

  HLevel level_of(const TypeExpr& T) {
    return hlevel_bound(deep_reduce(T), assumptions());
  }

  TypeExpr infer(const TypeExpr& e) {
    switch (e.tag) {
      case Tag::Var: {
        const TypeExpr* T = lookup(e.var);
        if (!T) fail("unbound variable " + e.var);
        return *T;
      }
      case Tag::App: {
        TypeExpr Tf = whnf(infer(e.kids[0]));
        if (Tf.tag != Tag::Pi)
          fail("application head is not a Pi: " + render(Tf));
        check(e.kids[1], Tf.kids[0]);
        TypeExpr rest;
        if (Tf.binder_names.size() == 1) {
          rest = Tf.kids.back();
        } else {
          rest = Tf;
          rest.binder_names.erase(rest.binder_names.begin());
          rest.kids.erase(rest.kids.begin());
        }
        return subst_term(rest, Tf.binder_names[0], e.kids[1]);
      }
      case Tag::Star:
        return t_unit();
      case Tag::ReflTm: {
        TypeExpr T = infer(e.kids[0]);
        return t_id(std::move(T), e.kids[0], e.kids[0]);
      }
      case Tag::Trans: {
        TypeExpr Tp = whnf(infer(e.kids[0]));
        if (Tp.tag != Tag::Id)
          fail("trans over a non-identity path: " + render(Tp));
        ctx.emplace_back(e.var, Tp.kids[0]);
        check_type(e.kids[1]);
        ctx.pop_back();
        check(e.kids[2], subst_term(e.kids[1], e.var, Tp.kids[1]));
        return subst_term(e.kids[1], e.var, Tp.kids[2]);
      }
      case Tag::Lam: {
        check_type(e.kids[0]);
        ctx.emplace_back(e.var, e.kids[0]);
        TypeExpr T = infer(e.kids[1]);
        ctx.pop_back();
        return t_pi({{e.var, e.kids[0]}}, std::move(T));
      }
      case Tag::Pair:
      case Tag::Proj:
        fail("pair/proj are outside the emitted fragment");
      default: {
        // Russell universes: a well-formed type is a term of the universe
        // bounding its h-level.
        check_type(e);
        return t_u(level_of(e));
      }
    }
  }

  void check(const TypeExpr& t, const TypeExpr& T) {
    TypeExpr wT = whnf(T);
    if (wT.tag == Tag::U) {
      check_type(t);
      HLevel b = level_of(t);
      if (!hle(b, wT.h))
        fail("h-level " + b.str() + " exceeds universe " + wT.h.str() +
             " for " + render(t));
      return;
    }
    TypeExpr Ti = infer(t);
    if (!defeq(Ti, wT))
      fail("type mismatch:\n  have " + render(normalize_type(deep_reduce(Ti))) +
           "\n  want " + render(normalize_type(deep_reduce(wT))));
  }

  void check_type(const TypeExpr& e) {
    switch (e.tag) {
      case Tag::U:
      case Tag::Unit:
      case Tag::Empty:
        return;
      case Tag::El: {
        TypeExpr T = whnf(infer(e.kids[0]));
        if (T.tag != Tag::U) fail("El applied to a non-code: " + render(T));
        return;
      }
      case Tag::Pi:
      case Tag::Sigma: {
        size_t base = ctx.size();
        for (size_t i = 0; i < e.binder_names.size(); ++i) {
          check_type(e.kids[i]);
          ctx.emplace_back(e.binder_names[i], e.kids[i]);
        }
        check_type(e.kids.back());
        ctx.resize(base);
        return;
      }
      case Tag::Id:
        check_type(e.kids[0]);
        check(e.kids[1], e.kids[0]);
        check(e.kids[2], e.kids[0]);
        return;
      case Tag::Sum:
        check_type(e.kids[0]);
        check_type(e.kids[1]);
        return;
      case Tag::Trunc:
        check_type(e.kids[0]);
        return;
      case Tag::Var:
      case Tag::App: {
        TypeExpr T = whnf(infer(e));
        if (T.tag != Tag::U)
          fail("term used as a type has non-universe type: " + render(T));
        return;
      }
      default: {
        TypeExpr r = whnf(e);
        if (r != e) return check_type(r);
        fail("not a type in the emitted fragment: " + render(e));
      }
    }
  }
};

}  // namespace

TypeExpr kernel_normalize(const TypeExpr& e) {
  return normalize_type(deep_reduce(e));
}

HLevel hlevel_bound(const TypeExpr& e,
                    const std::map<std::string, HLevel>& assumptions) {
  switch (e.tag) {
    case Tag::U:
      return succ(e.h);
    case Tag::Unit:
      return HLevel::fin(0);
    case Tag::Empty:
    case Tag::Trunc:
      return HLevel::fin(1);
    case Tag::Pi:
      return hlevel_bound(e.kids.back(), assumptions);
    case Tag::Sigma: {
      HLevel b = HLevel::fin(0);
      for (const auto& k : e.kids) b = hmax(b, hlevel_bound(k, assumptions));
      return b;
    }
    case Tag::Sum:
      return hmax(HLevel::fin(2),
                  hmax(hlevel_bound(e.kids[0], assumptions),
                       hlevel_bound(e.kids[1], assumptions)));
    case Tag::Id:
      return pred0(hlevel_bound(e.kids[0], assumptions));
    case Tag::El: {
      // El of a (possibly applied) family variable with a known bound.
      const TypeExpr* h = &e.kids[0];
      while (h->tag == Tag::App) h = &h->kids[0];
      if (h->tag == Tag::Var) {
        auto it = assumptions.find(h->var);
        if (it != assumptions.end()) return it->second;
      }
      return HLevel::inf();
    }
    case Tag::Var: {
      auto it = assumptions.find(e.var);
      return it != assumptions.end() ? it->second : HLevel::inf();
    }
    default:
      return HLevel::inf();
  }
}

void kernel_check(const EmittedJudgment& j) {
  Checker c;
  for (const auto& [v, T] : j.context) {
    c.check_type(T);
    c.ctx.emplace_back(v, T);
  }
  if (j.has_term)
    c.check(j.term, j.type);
  else
    c.check_type(j.type);
}

bool kernel_ok(const EmittedJudgment& j, std::string* why) {
  try {
    kernel_check(j);
    return true;
  } catch (const KernelError& e) {
    if (why) *why = e.message;
    return false;
  }
}

}  // namespace foliso
