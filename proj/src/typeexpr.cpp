#include "foliso/typeexpr.hpp"

#include <cctype>
#include <map>
#include <sstream>

namespace foliso {

bool TypeExpr::operator==(const TypeExpr& o) const {
  return tag == o.tag && h == o.h && var == o.var &&
         binder_names == o.binder_names && idx == o.idx && kids == o.kids;
}

TypeExpr t_u(HLevel h) {
  TypeExpr e;
  e.tag = TypeExpr::Tag::U;
  e.h = h;
  return e;
}
TypeExpr t_el(TypeExpr t) {
  TypeExpr e;
  e.tag = TypeExpr::Tag::El;
  e.kids = {std::move(t)};
  return e;
}
TypeExpr t_app(TypeExpr fn, TypeExpr arg) {
  TypeExpr e;
  e.tag = TypeExpr::Tag::App;
  e.kids = {std::move(fn), std::move(arg)};
  return e;
}
TypeExpr t_var(std::string v) {
  TypeExpr e;
  e.tag = TypeExpr::Tag::Var;
  e.var = std::move(v);
  return e;
}
TypeExpr t_lam(std::string v, TypeExpr dom, TypeExpr body) {
  TypeExpr e;
  e.tag = TypeExpr::Tag::Lam;
  e.var = std::move(v);
  e.kids = {std::move(dom), std::move(body)};
  return e;
}
static TypeExpr binderform(TypeExpr::Tag tag,
                           std::vector<std::pair<std::string, TypeExpr>> bs,
                           TypeExpr body) {
  TypeExpr e;
  e.tag = tag;
  for (auto& [v, t] : bs) {
    e.binder_names.push_back(std::move(v));
    e.kids.push_back(std::move(t));
  }
  e.kids.push_back(std::move(body));
  return e;
}
TypeExpr t_pi(std::vector<std::pair<std::string, TypeExpr>> bs, TypeExpr body) {
  return binderform(TypeExpr::Tag::Pi, std::move(bs), std::move(body));
}
TypeExpr t_sigma(std::vector<std::pair<std::string, TypeExpr>> bs,
                 TypeExpr body) {
  return binderform(TypeExpr::Tag::Sigma, std::move(bs), std::move(body));
}
TypeExpr t_id(TypeExpr carrier, TypeExpr l, TypeExpr r) {
  TypeExpr e;
  e.tag = TypeExpr::Tag::Id;
  e.kids = {std::move(carrier), std::move(l), std::move(r)};
  return e;
}
TypeExpr t_refl(TypeExpr t) {
  TypeExpr e;
  e.tag = TypeExpr::Tag::ReflTm;
  e.kids = {std::move(t)};
  return e;
}
TypeExpr t_trans(TypeExpr path, std::string v, TypeExpr family, TypeExpr arg) {
  TypeExpr e;
  e.tag = TypeExpr::Tag::Trans;
  e.var = std::move(v);
  e.kids = {std::move(path), std::move(family), std::move(arg)};
  return e;
}
TypeExpr t_unit() {
  TypeExpr e;
  e.tag = TypeExpr::Tag::Unit;
  return e;
}
TypeExpr t_star() {
  TypeExpr e;
  e.tag = TypeExpr::Tag::Star;
  return e;
}
TypeExpr t_empty() {
  TypeExpr e;
  e.tag = TypeExpr::Tag::Empty;
  return e;
}
TypeExpr t_sum(TypeExpr a, TypeExpr b) {
  TypeExpr e;
  e.tag = TypeExpr::Tag::Sum;
  e.kids = {std::move(a), std::move(b)};
  return e;
}
TypeExpr t_trunc(TypeExpr a) {
  TypeExpr e;
  e.tag = TypeExpr::Tag::Trunc;
  e.kids = {std::move(a)};
  return e;
}
TypeExpr t_proj(int i, TypeExpr t) {
  TypeExpr e;
  e.tag = TypeExpr::Tag::Proj;
  e.idx = i;
  e.kids = {std::move(t)};
  return e;
}
TypeExpr t_pair(TypeExpr a, TypeExpr b) {
  TypeExpr e;
  e.tag = TypeExpr::Tag::Pair;
  e.kids = {std::move(a), std::move(b)};
  return e;
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

namespace {

void render_rec(const TypeExpr& e, std::string& out) {
  using Tag = TypeExpr::Tag;
  switch (e.tag) {
    case Tag::U:
      out += "(U " + e.h.str() + ")";
      return;
    case Tag::El:
      out += "(El ";
      render_rec(e.kids[0], out);
      out += ")";
      return;
    case Tag::App:
      out += "(app ";
      render_rec(e.kids[0], out);
      out += " ";
      render_rec(e.kids[1], out);
      out += ")";
      return;
    case Tag::Var:
      out += e.var;
      return;
    case Tag::Lam:
      out += "(lam (" + e.var + " ";
      render_rec(e.kids[0], out);
      out += ") ";
      render_rec(e.kids[1], out);
      out += ")";
      return;
    case Tag::Pi:
    case Tag::Sigma: {
      out += e.tag == Tag::Pi ? "(Pi (" : "(Sigma (";
      for (size_t i = 0; i < e.binder_names.size(); ++i) {
        if (i) out += " ";
        out += "(" + e.binder_names[i] + " ";
        render_rec(e.kids[i], out);
        out += ")";
      }
      out += ") ";
      render_rec(e.kids.back(), out);
      out += ")";
      return;
    }
    case Tag::Id:
      out += "(Id ";
      render_rec(e.kids[0], out);
      out += " ";
      render_rec(e.kids[1], out);
      out += " ";
      render_rec(e.kids[2], out);
      out += ")";
      return;
    case Tag::ReflTm:
      out += "(refl ";
      render_rec(e.kids[0], out);
      out += ")";
      return;
    case Tag::Trans:
      out += "(trans ";
      render_rec(e.kids[0], out);
      out += " (bind " + e.var + " ";
      render_rec(e.kids[1], out);
      out += ") ";
      render_rec(e.kids[2], out);
      out += ")";
      return;
    case Tag::Unit: out += "(unit)"; return;
    case Tag::Star: out += "(star)"; return;
    case Tag::Empty: out += "(empty)"; return;
    case Tag::Sum:
      out += "(sum ";
      render_rec(e.kids[0], out);
      out += " ";
      render_rec(e.kids[1], out);
      out += ")";
      return;
    case Tag::Trunc:
      out += "(trunc ";
      render_rec(e.kids[0], out);
      out += ")";
      return;
    case Tag::Proj:
      out += "(proj " + std::to_string(e.idx) + " ";
      render_rec(e.kids[0], out);
      out += ")";
      return;
    case Tag::Pair:
      out += "(pair ";
      render_rec(e.kids[0], out);
      out += " ";
      render_rec(e.kids[1], out);
      out += ")";
      return;
  }
}

}  // namespace

std::string render(const TypeExpr& e) {
  std::string out;
  render_rec(e, out);
  return out;
}

std::string render_pretty(const TypeExpr& e) {
  using Tag = TypeExpr::Tag;
  switch (e.tag) {
    case Tag::U: return "U^" + e.h.str();
    case Tag::El: return render_pretty(e.kids[0]);
    case Tag::App:
      return render_pretty(e.kids[0]) + "(" + render_pretty(e.kids[1]) + ")";
    case Tag::Var: return e.var;
    case Tag::Lam:
      return "\\" + e.var + ". " + render_pretty(e.kids[1]);
    case Tag::Pi:
    case Tag::Sigma: {
      std::string out;
      for (size_t i = 0; i < e.binder_names.size(); ++i)
        out += "(" + e.binder_names[i] + " : " + render_pretty(e.kids[i]) + ")";
      out += e.tag == Tag::Pi ? " -> " : " x ";
      return out + render_pretty(e.kids.back());
    }
    case Tag::Id:
      return "Id_{" + render_pretty(e.kids[0]) + "}(" +
             render_pretty(e.kids[1]) + ", " + render_pretty(e.kids[2]) + ")";
    case Tag::ReflTm: return "refl(" + render_pretty(e.kids[0]) + ")";
    case Tag::Trans:
      return "trans_{" + render_pretty(e.kids[0]) + "}^{" + e.var + "." +
             render_pretty(e.kids[1]) + "}(" + render_pretty(e.kids[2]) + ")";
    case Tag::Unit: return "1";
    case Tag::Star: return "*";
    case Tag::Empty: return "0";
    case Tag::Sum:
      return "(" + render_pretty(e.kids[0]) + " + " +
             render_pretty(e.kids[1]) + ")";
    case Tag::Trunc: return "||" + render_pretty(e.kids[0]) + "||";
    case Tag::Proj:
      return "proj_" + std::to_string(e.idx) + "(" +
             render_pretty(e.kids[0]) + ")";
    case Tag::Pair:
      return "<" + render_pretty(e.kids[0]) + ", " +
             render_pretty(e.kids[1]) + ">";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

namespace {

struct SexprParser {
  const std::string& s;
  size_t i = 0;

  void skip() {
    while (i < s.size() && std::isspace((unsigned char)s[i])) ++i;
  }
  char peek() {
    skip();
    if (i >= s.size()) throw ParseError("unexpected end of type expression", 1, (int)i);
    return s[i];
  }
  void expect(char c) {
    if (peek() != c)
      throw ParseError(std::string("expected '") + c + "'", 1, (int)i + 1);
    ++i;
  }
  std::string word() {
    skip();
    size_t start = i;
    while (i < s.size() && !std::isspace((unsigned char)s[i]) && s[i] != '(' &&
           s[i] != ')')
      ++i;
    if (i == start) throw ParseError("expected a token", 1, (int)i + 1);
    return s.substr(start, i - start);
  }

  TypeExpr expr() {
    if (peek() != '(') return t_var(word());
    expect('(');
    std::string head = word();
    TypeExpr e;
    if (head == "U") {
      std::string lv = word();
      e = t_u(lv == "inf" ? HLevel::inf()
                          : HLevel::fin((std::uint32_t)std::stoul(lv)));
    } else if (head == "El") {
      e = t_el(expr());
    } else if (head == "app") {
      TypeExpr f = expr();
      e = t_app(std::move(f), expr());
    } else if (head == "lam") {
      expect('(');
      std::string v = word();
      TypeExpr dom = expr();
      expect(')');
      e = t_lam(std::move(v), std::move(dom), expr());
    } else if (head == "Pi" || head == "Sigma") {
      std::vector<std::pair<std::string, TypeExpr>> bs;
      expect('(');
      while (peek() != ')') {
        expect('(');
        std::string v = word();
        bs.emplace_back(std::move(v), expr());
        expect(')');
      }
      expect(')');
      TypeExpr body = expr();
      e = head == "Pi" ? t_pi(std::move(bs), std::move(body))
                       : t_sigma(std::move(bs), std::move(body));
    } else if (head == "Id") {
      TypeExpr c = expr();
      TypeExpr l = expr();
      e = t_id(std::move(c), std::move(l), expr());
    } else if (head == "refl") {
      e = t_refl(expr());
    } else if (head == "trans") {
      TypeExpr p = expr();
      expect('(');
      std::string b = word();
      if (b != "bind") throw ParseError("expected (bind v T)", 1, (int)i);
      std::string v = word();
      TypeExpr fam = expr();
      expect(')');
      e = t_trans(std::move(p), std::move(v), std::move(fam), expr());
    } else if (head == "unit") {
      e = t_unit();
    } else if (head == "star") {
      e = t_star();
    } else if (head == "empty") {
      e = t_empty();
    } else if (head == "sum") {
      TypeExpr a = expr();
      e = t_sum(std::move(a), expr());
    } else if (head == "trunc") {
      e = t_trunc(expr());
    } else if (head == "proj") {
      int idx = std::stoi(word());
      e = t_proj(idx, expr());
    } else if (head == "pair") {
      TypeExpr a = expr();
      e = t_pair(std::move(a), expr());
    } else {
      throw ParseError("unknown type form '" + head + "'", 1, (int)i);
    }
    expect(')');
    return e;
  }
};

}  // namespace

TypeExpr parse_type(const std::string& text) {
  SexprParser p{text};
  TypeExpr e = p.expr();
  p.skip();
  if (p.i != text.size())
    throw ParseError("trailing input after type expression", 1, (int)p.i + 1);
  return e;
}

// ---------------------------------------------------------------------------
// Normalization / alpha-equivalence
// ---------------------------------------------------------------------------

namespace {

struct Renamer {
  std::vector<std::pair<std::string, std::string>> env;
  int counter = 0;

  std::string lookup(const std::string& v) const {
    for (auto it = env.rbegin(); it != env.rend(); ++it)
      if (it->first == v) return it->second;
    return v;
  }
  std::string bind(const std::string& v) {
    std::string nv = "v" + std::to_string(counter++);
    env.emplace_back(v, nv);
    return nv;
  }

  TypeExpr run(const TypeExpr& e) {
    using Tag = TypeExpr::Tag;
    TypeExpr out = e;
    switch (e.tag) {
      case Tag::Var:
        out.var = lookup(e.var);
        return out;
      case Tag::Lam: {
        out.kids[0] = run(e.kids[0]);
        size_t mark = env.size();
        out.var = bind(e.var);
        out.kids[1] = run(e.kids[1]);
        env.resize(mark);
        return out;
      }
      case Tag::Pi:
      case Tag::Sigma: {
        // Flatten directly nested spines of the same tag, then renumber.
        std::vector<std::pair<std::string, TypeExpr>> bs;
        const TypeExpr* cur = &e;
        while (cur->tag == e.tag) {
          for (size_t i = 0; i < cur->binder_names.size(); ++i)
            bs.emplace_back(cur->binder_names[i], cur->kids[i]);
          cur = &cur->kids.back();
        }
        size_t mark = env.size();
        std::vector<std::pair<std::string, TypeExpr>> nbs;
        for (auto& [v, t] : bs) {
          TypeExpr nt = run(t);
          nbs.emplace_back(bind(v), std::move(nt));
        }
        TypeExpr body = run(*cur);
        env.resize(mark);
        return e.tag == Tag::Pi ? t_pi(std::move(nbs), std::move(body))
                                : t_sigma(std::move(nbs), std::move(body));
      }
      case Tag::Trans: {
        out.kids[0] = run(e.kids[0]);
        size_t mark = env.size();
        out.var = bind(e.var);
        out.kids[1] = run(e.kids[1]);
        env.resize(mark);
        out.kids[2] = run(e.kids[2]);
        return out;
      }
      default:
        for (size_t i = 0; i < e.kids.size(); ++i) out.kids[i] = run(e.kids[i]);
        return out;
    }
  }
};

}  // namespace

TypeExpr normalize_type(const TypeExpr& e) {
  Renamer r;
  return r.run(e);
}

bool alpha_eq_type(const TypeExpr& a, const TypeExpr& b) {
  return normalize_type(a) == normalize_type(b);
}

}  // namespace foliso
