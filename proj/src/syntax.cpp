#include "foliso/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace foliso {

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

std::string SortExpr::str() const {
  if (args.empty()) return head;
  std::string s = head + "(";
  for (size_t i = 0; i < args.size(); ++i) {
    if (i) s += ",";
    s += args[i];
  }
  return s + ")";
}

std::string context_str(const Context& ctx) {
  std::string s;
  for (size_t i = 0; i < ctx.size(); ++i) {
    if (i) s += ", ";
    s += ctx[i].var + ":" + ctx[i].sort.str();
  }
  return s;
}

bool Formula::operator==(const Formula& o) const {
  return kind == o.kind && var == o.var && sort == o.sort &&
         children == o.children;
}

std::string Formula::str() const {
  switch (kind) {
    case Kind::Atom: return sort.str();
    case Kind::Bot: return "bot";
    case Kind::Top: return "top";
    case Kind::And: return "(" + children[0].str() + " /\\ " + children[1].str() + ")";
    case Kind::Or: return "(" + children[0].str() + " \\/ " + children[1].str() + ")";
    case Kind::Imp: return "(" + children[0].str() + " -> " + children[1].str() + ")";
    case Kind::Forall:
      return "forall " + var + ":" + sort.str() + ". " + children[0].str();
    case Kind::Exists:
      return "exists " + var + ":" + sort.str() + ". " + children[0].str();
  }
  return "?";
}

std::string Sequent::str() const {
  return context_str(ctx) + " | " + phi.str() + " => " + psi.str();
}

// ---------------------------------------------------------------------------
// Lexer. Identifiers starting with Iso/Refl/Transp absorb one balanced paren
// group into the token, so "Iso(Iso(A))" is a single head token.
// ---------------------------------------------------------------------------

namespace {

struct Token {
  enum class Kind { Ident, LParen, RParen, Comma, Colon, Dot, And, Or, Imp, End };
  Kind kind;
  std::string text;
  int pos;
};

class Lexer {
 public:
  explicit Lexer(const std::string& s) : s_(s) { advance(); }
  const Token& peek() const { return tok_; }
  Token next() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  static bool ident_char(char c) {
    return std::isalnum((unsigned char)c) || c == '_' || c == '\'' || c == '=';
  }
  void advance() {
    while (i_ < s_.size() && std::isspace((unsigned char)s_[i_])) ++i_;
    int start = (int)i_;
    if (i_ >= s_.size()) {
      tok_ = {Token::Kind::End, "", start};
      return;
    }
    char c = s_[i_];
    auto one = [&](Token::Kind k) {
      ++i_;
      tok_ = {k, std::string(1, c), start};
    };
    switch (c) {
      case '(': return one(Token::Kind::LParen);
      case ')': return one(Token::Kind::RParen);
      case ',': return one(Token::Kind::Comma);
      case ':': return one(Token::Kind::Colon);
      case '.': return one(Token::Kind::Dot);
      default: break;
    }
    if (c == '/' && i_ + 1 < s_.size() && s_[i_ + 1] == '\\') {
      i_ += 2;
      tok_ = {Token::Kind::And, "/\\", start};
      return;
    }
    if (c == '\\' && i_ + 1 < s_.size() && s_[i_ + 1] == '/') {
      i_ += 2;
      tok_ = {Token::Kind::Or, "\\/", start};
      return;
    }
    if (c == '-' && i_ + 1 < s_.size() && s_[i_ + 1] == '>') {
      i_ += 2;
      tok_ = {Token::Kind::Imp, "->", start};
      return;
    }
    if (!ident_char(c))
      throw ParseError("unexpected character '" + std::string(1, c) + "'", 1,
                       start + 1);
    std::string id;
    while (i_ < s_.size() && ident_char(s_[i_])) id += s_[i_++];
    if ((id == "Iso" || id == "Refl" || id == "Transp") && i_ < s_.size() &&
        s_[i_] == '(') {
      int depth = 0;
      do {
        char d = s_[i_++];
        id += d;
        if (d == '(') ++depth;
        if (d == ')') --depth;
        if (i_ > s_.size())
          throw ParseError("unbalanced parentheses in " + id, 1, start + 1);
      } while (depth > 0 && i_ <= s_.size());
      if (depth != 0)
        throw ParseError("unbalanced parentheses in " + id, 1, start + 1);
    }
    tok_ = {Token::Kind::Ident, id, start};
  }

  const std::string& s_;
  size_t i_ = 0;
  Token tok_;
};

[[noreturn]] void fail(const Token& t, const std::string& want) {
  throw ParseError("expected " + want + " but found '" +
                       (t.kind == Token::Kind::End ? "<end>" : t.text) + "'",
                   1, t.pos + 1);
}

Token expect(Lexer& lx, Token::Kind k, const std::string& want) {
  if (lx.peek().kind != k) fail(lx.peek(), want);
  return lx.next();
}

SortExpr parse_sort_expr(Lexer& lx) {
  Token head = expect(lx, Token::Kind::Ident, "sort head");
  SortExpr s;
  s.head = head.text;
  if (lx.peek().kind == Token::Kind::LParen) {
    lx.next();
    if (lx.peek().kind != Token::Kind::RParen) {
      for (;;) {
        s.args.push_back(expect(lx, Token::Kind::Ident, "argument variable").text);
        if (lx.peek().kind != Token::Kind::Comma) break;
        lx.next();
      }
    }
    expect(lx, Token::Kind::RParen, "')'");
  }
  return s;
}

Formula parse_imp(Lexer& lx);

Formula parse_primary(Lexer& lx) {
  Formula f;
  const Token& t = lx.peek();
  if (t.kind == Token::Kind::LParen) {
    lx.next();
    f = parse_imp(lx);
    expect(lx, Token::Kind::RParen, "')'");
    return f;
  }
  if (t.kind != Token::Kind::Ident) fail(t, "formula");
  if (t.text == "bot") {
    lx.next();
    f.kind = Formula::Kind::Bot;
    return f;
  }
  if (t.text == "top") {
    lx.next();
    f.kind = Formula::Kind::Top;
    return f;
  }
  if (t.text == "forall" || t.text == "exists") {
    bool all = t.text == "forall";
    lx.next();
    f.kind = all ? Formula::Kind::Forall : Formula::Kind::Exists;
    f.var = expect(lx, Token::Kind::Ident, "bound variable").text;
    expect(lx, Token::Kind::Colon, "':'");
    f.sort = parse_sort_expr(lx);
    expect(lx, Token::Kind::Dot, "'.'");
    f.children.push_back(parse_imp(lx));
    return f;
  }
  f.kind = Formula::Kind::Atom;
  f.sort = parse_sort_expr(lx);
  return f;
}

Formula parse_and(Lexer& lx) {
  Formula f = parse_primary(lx);
  while (lx.peek().kind == Token::Kind::And) {
    lx.next();
    Formula g;
    g.kind = Formula::Kind::And;
    g.children = {std::move(f), parse_primary(lx)};
    f = std::move(g);
  }
  return f;
}

Formula parse_or(Lexer& lx) {
  Formula f = parse_and(lx);
  while (lx.peek().kind == Token::Kind::Or) {
    lx.next();
    Formula g;
    g.kind = Formula::Kind::Or;
    g.children = {std::move(f), parse_and(lx)};
    f = std::move(g);
  }
  return f;
}

Formula parse_imp(Lexer& lx) {
  Formula f = parse_or(lx);
  if (lx.peek().kind == Token::Kind::Imp) {
    lx.next();
    Formula g;
    g.kind = Formula::Kind::Imp;
    g.children = {std::move(f), parse_imp(lx)};  // right associative
    f = std::move(g);
  }
  return f;
}

}  // namespace

Context parse_context(const std::string& text) {
  Context ctx;
  Lexer lx(text);
  if (lx.peek().kind == Token::Kind::End) return ctx;
  for (;;) {
    Binding b;
    b.var = expect(lx, Token::Kind::Ident, "variable").text;
    expect(lx, Token::Kind::Colon, "':'");
    b.sort = parse_sort_expr(lx);
    ctx.push_back(std::move(b));
    if (lx.peek().kind != Token::Kind::Comma) break;
    lx.next();
  }
  if (lx.peek().kind != Token::Kind::End) fail(lx.peek(), "',' or end");
  return ctx;
}

SortExpr parse_sort(const std::string& text) {
  Lexer lx(text);
  SortExpr s = parse_sort_expr(lx);
  if (lx.peek().kind != Token::Kind::End) fail(lx.peek(), "end of sort");
  return s;
}

Formula parse_formula(const std::string& text) {
  Lexer lx(text);
  Formula f = parse_imp(lx);
  if (lx.peek().kind != Token::Kind::End) fail(lx.peek(), "end of formula");
  return f;
}

// ---------------------------------------------------------------------------
// Workspace: on-demand logical sort formation ((iso-form)/(rho-form)/(tau-form)
// preconditions are enforced here; the structural clauses come from the
// signature layer).
// ---------------------------------------------------------------------------

namespace {

// Splits "Iso(X)"/"Refl(X)"/"Transp(X)" into (kind, X); None otherwise.
std::pair<LogicalKind, std::string> split_logical(const std::string& name) {
  auto match = [&](const char* pre, LogicalKind k)
      -> std::optional<std::pair<LogicalKind, std::string>> {
    std::string p = std::string(pre) + "(";
    if (name.size() > p.size() + 1 && name.compare(0, p.size(), p) == 0 &&
        name.back() == ')')
      return std::make_pair(k, name.substr(p.size(), name.size() - p.size() - 1));
    return std::nullopt;
  };
  if (auto r = match("Iso", LogicalKind::Iso)) return *r;
  if (auto r = match("Refl", LogicalKind::Refl)) return *r;
  if (auto r = match("Transp", LogicalKind::Transp)) return *r;
  return {LogicalKind::None, ""};
}

std::pair<std::string, std::string> split_structural_arrow(
    const std::string& name) {
  for (const char* pre : {"s", "t", "r", "e", "f1", "f2"}) {
    std::string p = std::string(pre) + "(";
    if (name.size() > p.size() && name.compare(0, p.size(), p) == 0 &&
        name.back() == ')')
      return {pre, name.substr(p.size(), name.size() - p.size() - 1)};
  }
  return {"", ""};
}

}  // namespace

bool Workspace::ensure_arrow(const std::string& name, Report& rep) {
  if (work_.arrow_index(name) >= 0) return true;
  auto [pre, base] = split_structural_arrow(name);
  if (pre.empty()) {
    rep.add("sort", name, "unknown arrow '" + name + "'");
    return false;
  }
  // s(K)/t(K) live on Iso(K), r(K) on Refl(K), e/f1/f2(f) on Transp(f).
  std::string owner = (pre == "s" || pre == "t") ? iso_name(base)
                      : pre == "r"               ? refl_name(base)
                                                 : transp_name(base);
  if (ensure_sort(owner, rep) < 0) return false;
  return work_.arrow_index(name) >= 0;
}

int Workspace::ensure_sort(const std::string& head, Report& rep) {
  int idx = work_.object_index(head);
  if (idx >= 0) return idx;
  auto [lk, base] = split_logical(head);
  Presentation pres;
  switch (lk) {
    case LogicalKind::Iso: {
      int bi = ensure_sort(base, rep);
      if (bi < 0) return -1;
      if (!(work_.object(bi).h >= HLevel::fin(2))) {
        rep.add("iso-form", head,
                "h(" + base + ") = " + work_.object(bi).h.str() +
                    " < 2: iso sort not formable");
        return -1;
      }
      pres = work_.presentation;
      declare_iso(pres, base);
      break;
    }
    case LogicalKind::Refl: {
      if (ensure_sort(iso_name(base), rep) < 0) return -1;
      pres = work_.presentation;
      declare_refl(pres, base);
      break;
    }
    case LogicalKind::Transp: {
      if (!ensure_arrow(base, rep)) return -1;
      int fi = work_.arrow_index(base);
      const ArrowSym& f = work_.arrow(fi);
      auto tops = work_.top_level_arrows(f.dom);
      if (std::find(tops.begin(), tops.end(), fi) == tops.end()) {
        rep.add("tau-form", head, "'" + base + "' is not top-level");
        return -1;
      }
      if (!(work_.object(f.cod).h >= HLevel::fin(3))) {
        rep.add("tau-form", head,
                "h(" + work_.object(f.cod).name + ") = " +
                    work_.object(f.cod).h.str() +
                    " < 3: transport sort not formable");
        return -1;
      }
      std::string codname = work_.object(f.cod).name;
      if (ensure_sort(iso_name(codname), rep) < 0) return -1;
      fi = work_.arrow_index(base);  // re-saturation may have reindexed
      pres = work_.presentation;
      declare_transp(pres, base);
      break;
    }
    default:
      rep.add("sort", head, "unknown sort '" + head + "'");
      return -1;
  }
  work_ = saturate(work_.name, std::move(pres));
  return work_.object_index(head);
}

// ---------------------------------------------------------------------------
// Elaboration
// ---------------------------------------------------------------------------

namespace {

const Binding* find_binding(const Context& g, const std::string& v) {
  for (const auto& b : g)
    if (b.var == v) return &b;
  return nullptr;
}

// Walks a generator path prefix (outer-first, excluding the final generator)
// through the declared sorts of Gamma: starting from variable v of the inner
// generator, repeatedly projects out the argument at each generator arrow.
std::optional<std::string> walk_prefix(const Signature& sig, const Context& g,
                                       std::string v, const Path& rep,
                                       Report& rr, const std::string& where) {
  for (size_t k = rep.size() - 1; k-- > 0;) {
    const Binding* b = find_binding(g, v);
    if (!b) {
      rr.add("sort", where, "variable '" + v + "' is not bound");
      return std::nullopt;
    }
    int hi = sig.object_index(b->sort.head);
    auto cos = sig.cosieve(hi);
    int ai = sig.arrow_index(rep[k]);
    auto it = std::find(cos.begin(), cos.end(), ai);
    if (ai < 0 || it == cos.end()) {
      rr.add("sort", where,
             "cannot project '" + rep[k] + "' out of sort " + b->sort.head);
      return std::nullopt;
    }
    v = b->sort.args[it - cos.begin()];
  }
  return v;
}

}  // namespace

SortExpr elaborate_sort(Workspace& ws, const Context& gamma,
                        const SortExpr& surface, Report& rep) {
  const std::string where = surface.str();
  int oi = ws.ensure_sort(surface.head, rep);
  if (oi < 0) return surface;
  const Signature& sig = ws.sig();
  const ObjectSym& obj = sig.object(oi);
  auto cos = sig.cosieve(oi);

  SortExpr full;
  full.head = surface.head;

  // An elaborated logical instance carries one argument per cosieve arrow;
  // accept that layout as well, so elaboration is idempotent.  The only
  // ambiguous case (cosieve size equal to the short-form arity) is a Refl
  // whose base has an empty cosieve; there the first short-form argument is
  // an iso, while the first full-form argument is not, so we dispatch on the
  // binding sort.
  bool full_form = obj.lk == LogicalKind::None;
  if (!full_form && surface.args.size() == cos.size()) {
    size_t short_want = obj.lk == LogicalKind::Transp ? 3 : 2;
    if (cos.size() != short_want) {
      full_form = true;
    } else if (obj.lk == LogicalKind::Refl) {
      const Binding* b0 = find_binding(gamma, surface.args[0]);
      if (b0 && b0->sort.head != iso_name(obj.base)) full_form = true;
    }
  }

  if (full_form) {
    if (surface.args.size() != cos.size()) {
      rep.add("K-form", where,
              "arity mismatch: " + surface.head + " takes " +
                  std::to_string(cos.size()) + " argument(s), got " +
                  std::to_string(surface.args.size()));
      return surface;
    }
    full.args = surface.args;
  } else {
    // Short logical form: one surface argument per structural generator
    // (Iso: s,t; Refl: r plus the loop endpoint; Transp: e,f1,f2), expanded
    // along representative paths through the bindings in Gamma.
    std::vector<std::pair<std::string, std::string>> genmap;  // gen -> var
    size_t want = obj.lk == LogicalKind::Iso    ? 2
                  : obj.lk == LogicalKind::Refl ? 2
                                                : 3;
    if (surface.args.size() != want) {
      rep.add("arity", where,
              surface.head + " takes " + std::to_string(want) +
                  " argument(s), got " + std::to_string(surface.args.size()));
      return surface;
    }
    switch (obj.lk) {
      case LogicalKind::Iso:
        genmap = {{src_name(obj.base), surface.args[0]},
                  {tgt_name(obj.base), surface.args[1]}};
        break;
      case LogicalKind::Refl:
        genmap = {{refl_arrow_name(obj.base), surface.args[0]}};
        break;
      default:
        genmap = {{transp_path_name(obj.base), surface.args[0]},
                  {transp1_name(obj.base), surface.args[1]},
                  {transp2_name(obj.base), surface.args[2]}};
        break;
    }
    for (int ai : cos) {
      const ArrowSym& a = sig.arrow(ai);
      std::string inner = a.rep.back();
      std::string v;
      for (auto& [g, x] : genmap)
        if (g == inner) v = x;
      if (v.empty()) {
        rep.add("sort", where, "internal: unmapped generator " + inner);
        return surface;
      }
      auto got = walk_prefix(sig, gamma, v, a.rep, rep, where);
      if (!got) return surface;
      full.args.push_back(*got);
    }
    if (obj.lk == LogicalKind::Refl) {
      // rho-form: the loop endpoint argument must match both endpoints of q,
      // i.e. the s∘r (= t∘r) component of the expanded list.
      const std::string& x = surface.args[1];
      int sr = -1;
      for (size_t j = 0; j < cos.size(); ++j) {
        const ArrowSym& a = sig.arrow(cos[j]);
        if (a.rep.size() == 2 && a.rep.back() == refl_arrow_name(obj.base))
          sr = (int)j;
      }
      if (sr < 0 || full.args[sr] != x) {
        rep.add("rho-form", where,
                "'" + surface.args[0] + "' is not a loop at '" + x +
                    "' (clause s∘r = t∘r)");
        return surface;
      }
    }
  }

  // (K-form) table check: each argument must be bound with exactly the sort
  // K_f applied to the shared composite arguments.
  for (size_t j = 0; j < cos.size(); ++j) {
    const ArrowSym& f = sig.arrow(cos[j]);
    const std::string& x = full.args[j];
    const Binding* b = find_binding(gamma, x);
    if (!b) {
      rep.add("K-form", where, "argument '" + x + "' is not bound in context");
      return full;
    }
    const std::string codname = sig.object(f.cod).name;
    if (b->sort.head != codname) {
      rep.add("K-form", where,
              "argument '" + x + "' has sort " + b->sort.head + ", expected " +
                  codname);
      return full;
    }
    auto codcos = sig.cosieve(f.cod);
    for (size_t k = 0; k < codcos.size(); ++k) {
      int pf = sig.compose2(codcos[k], cos[j]);
      auto it = std::find(cos.begin(), cos.end(), pf);
      const std::string& want = full.args[it - cos.begin()];
      if (b->sort.args[k] != want) {
        rep.add("K-form", where,
                "dependency mismatch at '" + f.name + "': composite '" +
                    sig.arrow(codcos[k]).name + "∘" + f.name +
                    "' requires argument '" + want + "', but '" + x +
                    "' carries '" + b->sort.args[k] + "'");
        return full;
      }
    }
  }
  return full;
}

Context elaborate_context(Workspace& ws, const Context& surface, Report& rep) {
  Context out;
  for (size_t i = 0; i < surface.size(); ++i) {
    const Binding& b = surface[i];
    if (find_binding(out, b.var)) {
      rep.add("con-ext", b.var,
              "duplicate variable '" + b.var + "' at position " +
                  std::to_string(i));
      return out;
    }
    Report sub;
    SortExpr full = elaborate_sort(ws, out, b.sort, sub);
    if (!sub.ok()) {
      rep.add("con-ext", b.var,
              "ill-formed sort at position " + std::to_string(i));
      rep.merge(sub);
      return out;
    }
    out.push_back({b.var, std::move(full)});
  }
  return out;
}

Formula elaborate_formula(Workspace& ws, const Context& gamma,
                          const Formula& surface, Report& rep) {
  switch (surface.kind) {
    case Formula::Kind::Bot:
    case Formula::Kind::Top:
      return surface;
    case Formula::Kind::Atom: {
      // Sugared K(y...) := exists x:K(y...). top, with a fresh witness.
      Formula out;
      out.kind = Formula::Kind::Exists;
      out.sort = elaborate_sort(ws, gamma, surface.sort, rep);
      std::set<std::string> avoid;
      for (const auto& b : gamma) avoid.insert(b.var);
      out.var = fresh(avoid);
      out.children.push_back(Formula{Formula::Kind::Top});
      return out;
    }
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Imp: {
      Formula out;
      out.kind = surface.kind;
      out.children.push_back(elaborate_formula(ws, gamma, surface.children[0], rep));
      out.children.push_back(elaborate_formula(ws, gamma, surface.children[1], rep));
      return out;
    }
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      Formula out;
      out.kind = surface.kind;
      out.var = surface.var;
      out.sort = elaborate_sort(ws, gamma, surface.sort, rep);
      Formula body = surface.children[0];
      if (find_binding(gamma, out.var)) {
        // Shadowing: alpha-rename the binder, never an error.
        std::set<std::string> avoid;
        for (const auto& b : gamma) avoid.insert(b.var);
        for (const auto& v : free_vars(body)) avoid.insert(v);
        std::string nv = fresh(avoid);
        body = substitute_vars(body, {{out.var, nv}});
        out.var = nv;
      }
      Context ext = gamma;
      ext.push_back({out.var, out.sort});
      out.children.push_back(elaborate_formula(ws, ext, body, rep));
      return out;
    }
  }
  return surface;
}

// ---------------------------------------------------------------------------
// Check entry points
// ---------------------------------------------------------------------------

Report check_context(const Signature& sig, const Context& surface) {
  Workspace ws(sig);
  Report rep;
  elaborate_context(ws, surface, rep);
  return rep;
}

Report check_sort(const Signature& sig, const Context& gamma,
                  const SortExpr& surface) {
  Workspace ws(sig);
  Report rep;
  Context g = elaborate_context(ws, gamma, rep);
  if (!rep.ok()) return rep;
  elaborate_sort(ws, g, surface, rep);
  return rep;
}

Report check_var(const Signature& sig, const Context& gamma,
                 const std::string& x, const SortExpr& sort) {
  Workspace ws(sig);
  Report rep;
  Context g = elaborate_context(ws, gamma, rep);
  if (!rep.ok()) return rep;
  SortExpr full = elaborate_sort(ws, g, sort, rep);
  if (!rep.ok()) return rep;
  const Binding* b = find_binding(g, x);
  if (!b)
    rep.add("ax", x, "no binding '" + x + "' appears in the context");
  else if (b->sort != full)
    rep.add("ax", x,
            "binding has sort " + b->sort.str() + ", expected " + full.str());
  return rep;
}

Report check_formula(const Signature& sig, const Context& gamma,
                     const Formula& surface) {
  Workspace ws(sig);
  Report rep;
  Context g = elaborate_context(ws, gamma, rep);
  if (!rep.ok()) return rep;
  elaborate_formula(ws, g, surface, rep);
  return rep;
}

Report check_context_morphism(const Signature& sig,
                              const ContextMorphism& alpha) {
  Workspace ws(sig);
  Report rep;
  Context g = elaborate_context(ws, alpha.src, rep);
  Context d = elaborate_context(ws, alpha.dst, rep);
  if (!rep.ok()) return rep;
  if (alpha.ys.size() != d.size()) {
    rep.add("ctx-mor", "", "component count mismatch");
    return rep;
  }
  std::vector<std::pair<std::string, std::string>> m;
  for (size_t i = 0; i < d.size(); ++i) {
    SortExpr want = substitute_vars(d[i].sort, m);
    const Binding* b = find_binding(g, alpha.ys[i]);
    if (!b) {
      rep.add("ctx-mor", alpha.ys[i],
              "component " + std::to_string(i) + ": '" + alpha.ys[i] +
                  "' is not bound in the source context");
      return rep;
    }
    if (b->sort != want) {
      rep.add("ctx-mor", alpha.ys[i],
              "component " + std::to_string(i) + ": '" + alpha.ys[i] +
                  "' has sort " + b->sort.str() + ", expected " + want.str());
      return rep;
    }
    m.emplace_back(d[i].var, alpha.ys[i]);
  }
  return rep;
}

Report check_sequent(Workspace& ws, Sequent& seq) {
  Report rep;
  seq.ctx = elaborate_context(ws, seq.ctx, rep);
  if (!rep.ok()) return rep;
  seq.phi = elaborate_formula(ws, seq.ctx, seq.phi, rep);
  seq.psi = elaborate_formula(ws, seq.ctx, seq.psi, rep);
  return rep;
}

Context read_context(Workspace& ws, const std::string& text, Report& rep) {
  return elaborate_context(ws, parse_context(text), rep);
}

Formula read_formula(Workspace& ws, const Context& gamma,
                     const std::string& text, Report& rep) {
  return elaborate_formula(ws, gamma, parse_formula(text), rep);
}

// ---------------------------------------------------------------------------
// Substitution / alpha-equivalence
// ---------------------------------------------------------------------------

namespace {

void collect_free(const Formula& f, std::set<std::string>& bound,
                  std::set<std::string>& out) {
  switch (f.kind) {
    case Formula::Kind::Bot:
    case Formula::Kind::Top:
      return;
    case Formula::Kind::Atom:
      for (const auto& a : f.sort.args)
        if (!bound.count(a)) out.insert(a);
      return;
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Imp:
      collect_free(f.children[0], bound, out);
      collect_free(f.children[1], bound, out);
      return;
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      for (const auto& a : f.sort.args)
        if (!bound.count(a)) out.insert(a);
      bool was = bound.count(f.var) > 0;
      bound.insert(f.var);
      collect_free(f.children[0], bound, out);
      if (!was) bound.erase(f.var);
      return;
    }
  }
}

std::string lookup(const std::vector<std::pair<std::string, std::string>>& m,
                   const std::string& v) {
  for (auto it = m.rbegin(); it != m.rend(); ++it)
    if (it->first == v) return it->second;
  return v;
}

}  // namespace

std::set<std::string> free_vars(const Formula& f) {
  std::set<std::string> bound, out;
  collect_free(f, bound, out);
  return out;
}

std::string fresh(const std::set<std::string>& avoid) {
  for (int i = 0;; ++i) {
    std::string v = "v" + std::to_string(i);
    if (!avoid.count(v)) return v;
  }
}

SortExpr substitute_vars(
    const SortExpr& k,
    const std::vector<std::pair<std::string, std::string>>& m) {
  SortExpr out = k;
  for (auto& a : out.args) a = lookup(m, a);
  return out;
}

Formula substitute_vars(
    const Formula& f,
    const std::vector<std::pair<std::string, std::string>>& m) {
  Formula out = f;
  switch (f.kind) {
    case Formula::Kind::Bot:
    case Formula::Kind::Top:
      return out;
    case Formula::Kind::Atom:
      out.sort = substitute_vars(f.sort, m);
      return out;
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Imp:
      out.children[0] = substitute_vars(f.children[0], m);
      out.children[1] = substitute_vars(f.children[1], m);
      return out;
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      out.sort = substitute_vars(f.sort, m);
      // Drop any mapping shadowed by the binder; rename the binder if it
      // would capture an incoming variable.
      std::vector<std::pair<std::string, std::string>> inner;
      std::set<std::string> images;
      for (const auto& [a, b] : m)
        if (a != f.var) {
          inner.emplace_back(a, b);
          images.insert(b);
        }
      if (images.count(f.var)) {
        std::set<std::string> avoid = images;
        for (const auto& v : free_vars(f.children[0])) avoid.insert(v);
        for (const auto& [a, b] : inner) avoid.insert(a);
        std::string nv = fresh(avoid);
        inner.emplace_back(f.var, nv);
        out.var = nv;
      }
      out.children[0] = substitute_vars(f.children[0], inner);
      return out;
    }
  }
  return out;
}

SortExpr substitute(const ContextMorphism& alpha, const SortExpr& k) {
  std::vector<std::pair<std::string, std::string>> m;
  for (size_t i = 0; i < alpha.dst.size(); ++i)
    m.emplace_back(alpha.dst[i].var, alpha.ys[i]);
  return substitute_vars(k, m);
}

Formula substitute(const ContextMorphism& alpha, const Formula& f) {
  std::vector<std::pair<std::string, std::string>> m;
  for (size_t i = 0; i < alpha.dst.size(); ++i)
    m.emplace_back(alpha.dst[i].var, alpha.ys[i]);
  return substitute_vars(f, m);
}

namespace {

Formula normalize_rec(const Formula& f,
                      std::vector<std::pair<std::string, std::string>>& env,
                      int& counter) {
  Formula out = f;
  switch (f.kind) {
    case Formula::Kind::Bot:
    case Formula::Kind::Top:
      return out;
    case Formula::Kind::Atom:
      out.sort = substitute_vars(f.sort, env);
      return out;
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Imp:
      out.children[0] = normalize_rec(f.children[0], env, counter);
      out.children[1] = normalize_rec(f.children[1], env, counter);
      return out;
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      out.sort = substitute_vars(f.sort, env);
      std::string nv = "$" + std::to_string(counter++);
      env.emplace_back(f.var, nv);
      out.var = nv;
      out.children[0] = normalize_rec(f.children[0], env, counter);
      env.pop_back();
      return out;
    }
  }
  return out;
}

}  // namespace

Formula normalize(const Formula& f) {
  std::vector<std::pair<std::string, std::string>> env;
  int counter = 0;
  return normalize_rec(f, env, counter);
}

bool alpha_eq(const Formula& a, const Formula& b) {
  return normalize(a) == normalize(b);
}

}  // namespace foliso
