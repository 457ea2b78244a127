#pragma once

#include <string>
#include <vector>

#include "foliso/basics.hpp"

namespace foliso {

// MLTT/HoTT type- and term-expressions in one tree (terms and types share the
// grammar; the kernel keeps them apart).
//
// Layout per tag:
//   U      h
//   El     kids{t}
//   App    kids{fn, arg}
//   Var    var
//   Lam    var, kids{dom, body}
//   Pi     binder_names, kids{dom..., body}   (n binders, n+1 kids)
//   Sigma  binder_names, kids{dom..., body}
//   Id     kids{carrier, lhs, rhs}
//   ReflTm kids{t}
//   Trans  var, kids{path, family, arg}       (trans_path^{var.family}(arg))
//   Unit/Star/Empty  --
//   Sum    kids{A, B}
//   Trunc  kids{A}
//   Proj   idx, kids{t}
//   Pair   kids{a, b}
struct TypeExpr {
  enum class Tag {
    U, El, App, Var, Lam, Pi, Sigma, Id, ReflTm, Trans,
    Unit, Star, Empty, Sum, Trunc, Proj, Pair
  };
  Tag tag = Tag::Unit;
  HLevel h = HLevel::inf();
  std::string var;
  std::vector<std::string> binder_names;
  std::vector<TypeExpr> kids;
  int idx = 0;

  bool operator==(const TypeExpr& o) const;
  bool operator!=(const TypeExpr& o) const { return !(*this == o); }
};

// Constructors.
TypeExpr t_u(HLevel h);
TypeExpr t_el(TypeExpr t);
TypeExpr t_app(TypeExpr fn, TypeExpr arg);
TypeExpr t_var(std::string v);
TypeExpr t_lam(std::string v, TypeExpr dom, TypeExpr body);
TypeExpr t_pi(std::vector<std::pair<std::string, TypeExpr>> bs, TypeExpr body);
TypeExpr t_sigma(std::vector<std::pair<std::string, TypeExpr>> bs,
                 TypeExpr body);
TypeExpr t_id(TypeExpr carrier, TypeExpr l, TypeExpr r);
TypeExpr t_refl(TypeExpr t);
TypeExpr t_trans(TypeExpr path, std::string v, TypeExpr family, TypeExpr arg);
TypeExpr t_unit();
TypeExpr t_star();
TypeExpr t_empty();
TypeExpr t_sum(TypeExpr a, TypeExpr b);
TypeExpr t_trunc(TypeExpr a);
TypeExpr t_proj(int i, TypeExpr t);
TypeExpr t_pair(TypeExpr a, TypeExpr b);

// Bit-exact sexpr format:
//   (U <h>) (El t) (app t t) (Pi ((v0 T) ...) T) (Sigma ((v0 T) ...) T)
//   (Id T t t) (refl t) (trans t (bind v<i> T) t) (unit) (star) (empty)
//   (sum T T) (trunc T) (lam (v T) t) (proj <i> t) (pair t t), variables bare.
std::string render(const TypeExpr& e);
std::string render_pretty(const TypeExpr& e);  // documentation only
TypeExpr parse_type(const std::string& text);

// Renumbers binders to v0,v1,... in binding order and flattens directly
// nested Pi-in-Pi / Sigma-in-Sigma spines.
TypeExpr normalize_type(const TypeExpr& e);
bool alpha_eq_type(const TypeExpr& a, const TypeExpr& b);

}  // namespace foliso
