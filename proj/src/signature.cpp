#include "foliso/signature.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

namespace foliso {

bool is_logical_object_kind(LogicalKind k) {
  return k == LogicalKind::Iso || k == LogicalKind::Refl ||
         k == LogicalKind::Transp;
}

std::string iso_name(const std::string& b) { return "Iso(" + b + ")"; }
std::string refl_name(const std::string& b) { return "Refl(" + b + ")"; }
std::string transp_name(const std::string& b) { return "Transp(" + b + ")"; }
std::string src_name(const std::string& b) { return "s(" + b + ")"; }
std::string tgt_name(const std::string& b) { return "t(" + b + ")"; }
std::string refl_arrow_name(const std::string& b) { return "r(" + b + ")"; }
std::string transp_path_name(const std::string& b) { return "e(" + b + ")"; }
std::string transp1_name(const std::string& b) { return "f1(" + b + ")"; }
std::string transp2_name(const std::string& b) { return "f2(" + b + ")"; }

bool Presentation::has_object(const std::string& name) const {
  for (const auto& o : objects)
    if (o.name == name) return true;
  return false;
}
bool Presentation::has_arrow(const std::string& name) const {
  for (const auto& a : arrows)
    if (a.name == name) return true;
  return false;
}

int Signature::object_index(const std::string& n) const {
  for (int i = 0; i < (int)objects.size(); ++i)
    if (objects[i].name == n) return i;
  return -1;
}
int Signature::arrow_index(const std::string& n) const {
  for (int i = 0; i < (int)arrows.size(); ++i)
    if (arrows[i].name == n) return i;
  return -1;
}

std::vector<int> Signature::cosieve(int obj) const {
  std::vector<int> out;
  for (int i = 0; i < (int)arrows.size(); ++i)
    if (arrows[i].dom == obj) out.push_back(i);
  return out;  // arrows are already in canonical order
}

std::vector<int> Signature::top_level_arrows(int obj) const {
  std::vector<int> out;
  for (int f : cosieve(obj)) {
    bool factors = false;
    for (const auto& [pair, comp] : compose)
      if (comp == f) {
        factors = true;
        break;
      }
    if (!factors) out.push_back(f);
  }
  return out;
}

int Signature::level(int obj) const {
  int lv = 0;
  for (int f : cosieve(obj)) lv = std::max(lv, 1 + level(arrows[f].cod));
  return lv;
}

int Signature::height() const {
  int h = 0;
  for (int i = 0; i < (int)objects.size(); ++i)
    h = std::max(h, level(i) + 1);
  return h;
}

int Signature::compose2(int g, int f) const {
  auto it = compose.find({g, f});
  if (it == compose.end())
    throw BuildError("arrows not composable: " + arrows[g].name + " after " +
                     arrows[f].name);
  return it->second;
}

int Signature::logical_child(LogicalKind lk, const std::string& base) const {
  for (int i = 0; i < (int)objects.size(); ++i)
    if (objects[i].lk == lk && objects[i].base == base) return i;
  return -1;
}

bool Signature::same_symbols(const Signature& other) const {
  if (objects.size() != other.objects.size() ||
      arrows.size() != other.arrows.size())
    return false;
  for (size_t i = 0; i < objects.size(); ++i) {
    const auto &a = objects[i], &b = other.objects[i];
    if (a.name != b.name || a.h != b.h || a.lk != b.lk || a.base != b.base)
      return false;
  }
  for (size_t i = 0; i < arrows.size(); ++i) {
    const auto &a = arrows[i], &b = other.arrows[i];
    if (a.name != b.name || a.lk != b.lk || a.base != b.base) return false;
    if (objects[a.dom].name != other.objects[b.dom].name) return false;
    if (objects[a.cod].name != other.objects[b.cod].name) return false;
  }
  return true;
}

bool operator==(const Signature& a, const Signature& b) {
  return a.same_symbols(b) && a.compose == b.compose;
}

// ---------------------------------------------------------------------------
// Saturation: path enumeration + congruence closure.
// ---------------------------------------------------------------------------

namespace {

std::string path_key(const Path& p) {
  std::string k;
  for (size_t i = 0; i < p.size(); ++i) {
    if (i) k += ".";
    k += p[i];
  }
  return k;
}

// Representative choice: shortest path, tie-break lexicographically greatest.
bool rep_better(const Path& cand, const Path& cur) {
  if (cand.size() != cur.size()) return cand.size() < cur.size();
  return path_key(cand) > path_key(cur);
}

struct UnionFind {
  std::vector<int> parent;
  int make() {
    parent.push_back((int)parent.size());
    return (int)parent.size() - 1;
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
};

}  // namespace

Signature saturate(std::string name, Presentation pres) {
  // Resolve presentation names.
  std::map<std::string, int> objIdx;
  for (int i = 0; i < (int)pres.objects.size(); ++i) {
    if (objIdx.count(pres.objects[i].name))
      throw BuildError("duplicate object: " + pres.objects[i].name);
    objIdx[pres.objects[i].name] = i;
  }
  struct Gen {
    std::string name;
    LogicalKind lk;
    std::string base;
    int dom, cod;
  };
  std::vector<Gen> gens;
  std::map<std::string, int> genIdx;
  for (const auto& a : pres.arrows) {
    if (genIdx.count(a.name)) throw BuildError("duplicate arrow: " + a.name);
    auto d = objIdx.find(a.dom), c = objIdx.find(a.cod);
    if (d == objIdx.end())
      throw BuildError("arrow " + a.name + ": unknown domain " + a.dom);
    if (c == objIdx.end())
      throw BuildError("arrow " + a.name + ": unknown codomain " + a.cod);
    if (d->second == c->second)
      throw BuildError("arrow " + a.name + " is a non-identity endomorphism");
    genIdx[a.name] = (int)gens.size();
    gens.push_back({a.name, a.lk, a.base, d->second, c->second});
  }

  // Cycle check on the generator graph (levels must strictly decrease).
  {
    std::vector<int> state(pres.objects.size(), 0);  // 0 new, 1 open, 2 done
    std::function<void(int)> dfs = [&](int o) {
      state[o] = 1;
      for (const auto& g : gens)
        if (g.dom == o) {
          if (state[g.cod] == 1)
            throw BuildError("directed cycle through object " +
                             pres.objects[g.cod].name);
          if (state[g.cod] == 0) dfs(g.cod);
        }
      state[o] = 2;
    };
    for (int o = 0; o < (int)pres.objects.size(); ++o)
      if (state[o] == 0) dfs(o);
  }

  // Enumerate every generator path. Paths are outer-first: {a, b} = a∘b,
  // with dom = dom(b), cod = cod(a). Acyclicity makes the set finite.
  struct PathInfo {
    Path path;
    int dom, cod;
  };
  std::vector<PathInfo> paths;
  std::map<std::string, int> pathIdx;
  {
    // Paths from an object = [g] for each out-generator g, plus p·[g] for
    // each path p from cod(g). Memoized over the DAG.
    std::vector<std::vector<int>> fromObj(pres.objects.size());
    std::vector<bool> done(pres.objects.size(), false);
    std::function<void(int)> build = [&](int o) {
      if (done[o]) return;
      done[o] = true;
      for (int gi = 0; gi < (int)gens.size(); ++gi) {
        const auto& g = gens[gi];
        if (g.dom != o) continue;
        build(g.cod);
        Path unit{g.name};
        int id = (int)paths.size();
        pathIdx[path_key(unit)] = id;
        paths.push_back({unit, g.dom, g.cod});
        fromObj[o].push_back(id);
        for (int pid : fromObj[g.cod]) {
          Path comp = paths[pid].path;
          comp.push_back(g.name);
          int cid = (int)paths.size();
          pathIdx[path_key(comp)] = cid;
          paths.push_back({comp, g.dom, paths[pid].cod});
          fromObj[o].push_back(cid);
        }
      }
    };
    for (int o = 0; o < (int)pres.objects.size(); ++o) build(o);
  }

  // Congruence closure over the path set.
  UnionFind uf;
  for (size_t i = 0; i < paths.size(); ++i) uf.make();
  auto lookup = [&](const Path& p) -> int {
    auto it = pathIdx.find(path_key(p));
    if (it == pathIdx.end())
      throw BuildError("equation mentions unknown composite " + path_key(p));
    return it->second;
  };
  for (const auto& [lhs, rhs] : pres.equations) {
    int a = lookup(lhs), b = lookup(rhs);
    if (paths[a].dom != paths[b].dom || paths[a].cod != paths[b].cod)
      throw BuildError("equation " + path_key(lhs) + " = " + path_key(rhs) +
                       " equates arrows with different dom/cod");
    uf.unite(a, b);
  }
  // Close under pre/post-composition with generators until stable.
  bool changed = true;
  while (changed) {
    changed = false;
    std::map<int, std::vector<int>> classes;
    for (int i = 0; i < (int)paths.size(); ++i)
      classes[uf.find(i)].push_back(i);
    for (const auto& [root, members] : classes) {
      for (size_t i = 1; i < members.size(); ++i) {
        int p = members[0], q = members[i];
        for (const auto& g : gens) {
          if (g.cod == paths[p].dom) {  // post-compose: p·g ~ q·g
            Path a = paths[p].path, b = paths[q].path;
            a.push_back(g.name);
            b.push_back(g.name);
            if (uf.unite(lookup(a), lookup(b))) changed = true;
          }
          if (g.dom == paths[p].cod) {  // pre-compose: g·p ~ g·q
            Path a = paths[p].path, b = paths[q].path;
            a.insert(a.begin(), g.name);
            b.insert(b.begin(), g.name);
            if (uf.unite(lookup(a), lookup(b))) changed = true;
          }
        }
      }
    }
  }

  // Arrow classes with representatives.
  std::map<int, Path> reps;
  for (int i = 0; i < (int)paths.size(); ++i) {
    int r = uf.find(i);
    auto it = reps.find(r);
    if (it == reps.end() || rep_better(paths[i].path, it->second))
      reps[r] = paths[i].path;
  }

  Signature sig;
  sig.name = std::move(name);
  sig.presentation = pres;
  for (const auto& o : pres.objects)
    sig.objects.push_back({o.name, o.lk, o.base, o.h});

  std::map<int, int> classArrow;  // uf root -> arrow index (pre-sort)
  for (const auto& [root, rep] : reps) {
    ArrowSym a;
    a.rep = rep;
    a.name = path_key(rep);
    a.dom = paths[root].dom;
    a.cod = paths[root].cod;
    if (rep.size() == 1) {
      const auto& g = gens[genIdx[rep[0]]];
      a.lk = g.lk;
      a.base = g.base;
      a.generator = true;
    }
    classArrow[root] = (int)sig.arrows.size();
    sig.arrows.push_back(a);
  }

  // Canonical proper order. Objects: (level ascending, name). Levels are
  // computed on the unsorted data first.
  {
    std::vector<int> lvl(sig.objects.size(), -1);
    std::function<int(int)> L = [&](int o) -> int {
      if (lvl[o] >= 0) return lvl[o];
      int m = 0;
      for (const auto& a : sig.arrows)
        if (a.dom == o) m = std::max(m, 1 + L(a.cod));
      return lvl[o] = m;
    };
    std::vector<int> operm(sig.objects.size());
    std::iota(operm.begin(), operm.end(), 0);
    std::sort(operm.begin(), operm.end(), [&](int x, int y) {
      if (L(x) != L(y)) return L(x) < L(y);
      return sig.objects[x].name < sig.objects[y].name;
    });
    std::vector<int> opos(sig.objects.size());
    for (int i = 0; i < (int)operm.size(); ++i) opos[operm[i]] = i;
    std::vector<ObjectSym> sorted;
    for (int i : operm) sorted.push_back(sig.objects[i]);
    sig.objects = std::move(sorted);
    for (auto& a : sig.arrows) {
      a.dom = opos[a.dom];
      a.cod = opos[a.cod];
    }
    // Arrows: (codomain position, domain position, name).
    std::vector<int> aperm(sig.arrows.size());
    std::iota(aperm.begin(), aperm.end(), 0);
    std::sort(aperm.begin(), aperm.end(), [&](int x, int y) {
      const auto &a = sig.arrows[x], &b = sig.arrows[y];
      if (a.cod != b.cod) return a.cod < b.cod;
      if (a.dom != b.dom) return a.dom < b.dom;
      return a.name < b.name;
    });
    std::vector<int> apos(sig.arrows.size());
    for (int i = 0; i < (int)aperm.size(); ++i) apos[aperm[i]] = i;
    std::vector<ArrowSym> asorted;
    for (int i : aperm) asorted.push_back(sig.arrows[i]);
    sig.arrows = std::move(asorted);

    // Composition table from representative path concatenation.
    auto classOf = [&](const Path& p) { return apos[classArrow[uf.find(lookup(p))]]; };
    for (int g = 0; g < (int)sig.arrows.size(); ++g)
      for (int f = 0; f < (int)sig.arrows.size(); ++f) {
        if (sig.arrows[g].dom != sig.arrows[f].cod) continue;
        Path comp = sig.arrows[g].rep;
        comp.insert(comp.end(), sig.arrows[f].rep.begin(),
                    sig.arrows[f].rep.end());
        sig.compose[{g, f}] = classOf(comp);
      }
  }
  return sig;
}

// ---------------------------------------------------------------------------
// Logical-sort declaration helpers.
// ---------------------------------------------------------------------------

namespace {

const Presentation::PObject* find_pobj(const Presentation& p,
                                       const std::string& n) {
  for (const auto& o : p.objects)
    if (o.name == n) return &o;
  return nullptr;
}
const Presentation::PArrow* find_parr(const Presentation& p,
                                      const std::string& n) {
  for (const auto& a : p.arrows)
    if (a.name == n) return &a;
  return nullptr;
}

}  // namespace

void declare_iso(Presentation& p, const std::string& base) {
  const auto* K = find_pobj(p, base);
  if (!K) throw BuildError("iso: unknown object " + base);
  if (p.has_object(iso_name(base)))
    throw BuildError("iso: duplicate for " + base);
  std::string IK = iso_name(base), s = src_name(base), t = tgt_name(base);
  p.objects.push_back({IK, LogicalKind::Iso, base, K->h.minus(1)});
  p.arrows.push_back({s, LogicalKind::Src, base, IK, base});
  p.arrows.push_back({t, LogicalKind::Tgt, base, IK, base});
  // f∘s = f∘t for every arrow out of K; generators suffice, congruence
  // closure covers the composites.
  for (const auto& a : p.arrows)
    if (a.dom == base && a.name != s && a.name != t)
      p.equations.push_back({{a.name, s}, {a.name, t}});
}

void declare_refl(Presentation& p, const std::string& base) {
  const auto* K = find_pobj(p, base);
  if (!K) throw BuildError("refl: unknown object " + base);
  if (!p.has_object(iso_name(base)))
    throw BuildError("refl: " + base + " has no iso sort");
  if (p.has_object(refl_name(base)))
    throw BuildError("refl: duplicate for " + base);
  std::string RK = refl_name(base), r = refl_arrow_name(base);
  p.objects.push_back({RK, LogicalKind::Refl, base, K->h.minus(2)});
  p.arrows.push_back({r, LogicalKind::ReflArrow, base, RK, iso_name(base)});
  p.equations.push_back({{src_name(base), r}, {tgt_name(base), r}});
}

void declare_transp(Presentation& p, const std::string& base_arrow) {
  const auto* f = find_parr(p, base_arrow);
  if (!f) throw BuildError("transp: unknown arrow " + base_arrow);
  if (p.has_object(transp_name(base_arrow)))
    throw BuildError("transp: duplicate for " + base_arrow);
  const std::string A = f->dom, K = f->cod;  // copies: push_back invalidates f
  const auto* domA = find_pobj(p, A);
  if (!p.has_object(iso_name(K)))
    throw BuildError("transp: codomain " + K + " of " + base_arrow +
                     " has no iso sort");
  std::string TF = transp_name(base_arrow);
  std::string e = transp_path_name(base_arrow);
  std::string f1 = transp1_name(base_arrow), f2 = transp2_name(base_arrow);
  p.objects.push_back({TF, LogicalKind::Transp, base_arrow, domA->h.minus(1)});
  p.arrows.push_back({e, LogicalKind::TranspPath, base_arrow, TF, iso_name(K)});
  p.arrows.push_back({f1, LogicalKind::Transp1, base_arrow, TF, A});
  p.arrows.push_back({f2, LogicalKind::Transp2, base_arrow, TF, A});
  p.equations.push_back({{src_name(K), e}, {base_arrow, f1}});
  p.equations.push_back({{tgt_name(K), e}, {base_arrow, f2}});
  for (const auto& g : p.arrows)
    if (g.dom == A && g.name != base_arrow && g.name != f1 && g.name != f2)
      p.equations.push_back({{g.name, f1}, {g.name, f2}});
}

// ---------------------------------------------------------------------------
// Signature file grammar.
//
//   sig <Name> {
//     object <O> : h <nat|inf> ;
//     arrow <f> : <A> -> <K> ;
//     eq <path> = <path> ;        # '.'-separated, written order of application
//     iso <K> ; refl <K> ; transp <f> ;
//   }
// ---------------------------------------------------------------------------

namespace {

struct Lexer {
  const std::string& src;
  size_t pos = 0;
  int line = 1, col = 1;

  explicit Lexer(const std::string& s) : src(s) {}

  void skip_ws() {
    while (pos < src.size()) {
      char c = src[pos];
      if (c == '#') {
        while (pos < src.size() && src[pos] != '\n') ++pos;
      } else if (c == '\n') {
        ++pos;
        ++line;
        col = 1;
      } else if (std::isspace((unsigned char)c)) {
        ++pos;
        ++col;
      } else {
        break;
      }
    }
  }
  bool eof() {
    skip_ws();
    return pos >= src.size();
  }
  char peek() {
    skip_ws();
    return pos < src.size() ? src[pos] : '\0';
  }
  void bump() {
    ++pos;
    ++col;
  }
  void expect(char c) {
    if (peek() != c)
      throw ParseError(std::string("expected '") + c + "'", line, col);
    bump();
  }
  bool accept(char c) {
    if (peek() == c) {
      bump();
      return true;
    }
    return false;
  }
  static bool name_char(char c) {
    return std::isalnum((unsigned char)c) || c == '_';
  }
  // A name is an identifier optionally carrying one balanced parenthesized
  // suffix, recursively: O, d, Iso(O), s(Iso(O)), Transp(s(O)), ...
  std::string name() {
    skip_ws();
    if (pos >= src.size() || !name_char(src[pos]))
      throw ParseError("expected name", line, col);
    std::string out;
    while (pos < src.size() && name_char(src[pos])) {
      out += src[pos];
      bump();
    }
    if (pos < src.size() && src[pos] == '(') {
      int depth = 0;
      do {
        if (src[pos] == '(') ++depth;
        if (src[pos] == ')') --depth;
        out += src[pos];
        bump();
        if (pos >= src.size() && depth > 0)
          throw ParseError("unbalanced '(' in name", line, col);
      } while (depth > 0);
      // allow a dotted continuation inside composite names like d.i
    }
    if (pos < src.size() && src[pos] == '.') {
      out += '.';
      bump();
      out += name();
    }
    return out;
  }
  std::string keyword() {
    skip_ws();
    std::string out;
    while (pos < src.size() && std::isalpha((unsigned char)src[pos])) {
      out += src[pos];
      bump();
    }
    return out;
  }
};

Path split_path(const std::string& s) {
  Path out;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == '.' && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

Signature parse_signature(const std::string& text) {
  Lexer lx(text);
  if (lx.eof()) return saturate("", {});
  std::string kw = lx.keyword();
  if (kw != "sig") throw ParseError("expected 'sig'", lx.line, lx.col);
  std::string name = lx.name();
  lx.expect('{');
  Presentation pres;
  struct LogDecl {
    std::string kind, base;
    int line;
  };
  std::vector<LogDecl> logical;
  while (!lx.accept('}')) {
    int at = lx.line;
    std::string stmt = lx.keyword();
    if (stmt == "object") {
      std::string o = lx.name();
      lx.expect(':');
      std::string hkw = lx.keyword();
      if (hkw != "h") throw ParseError("expected 'h'", lx.line, lx.col);
      HLevel h;
      std::string v = lx.name();
      if (v == "inf")
        h = HLevel::inf();
      else {
        for (char c : v)
          if (!std::isdigit((unsigned char)c))
            throw ParseError("expected h-level nat or 'inf'", at, lx.col);
        h = HLevel::fin((std::uint32_t)std::stoul(v));
      }
      pres.objects.push_back({o, LogicalKind::None, "", h});
    } else if (stmt == "arrow") {
      std::string f = lx.name();
      lx.expect(':');
      std::string dom = lx.name();
      lx.expect('-');
      lx.expect('>');
      std::string cod = lx.name();
      pres.arrows.push_back({f, LogicalKind::None, "", dom, cod});
    } else if (stmt == "eq") {
      std::string lhs = lx.name();
      lx.expect('=');
      std::string rhs = lx.name();
      pres.equations.push_back({split_path(lhs), split_path(rhs)});
    } else if (stmt == "iso" || stmt == "refl" || stmt == "transp") {
      logical.push_back({stmt, lx.name(), at});
    } else {
      throw ParseError("unknown statement '" + stmt + "'", at, lx.col);
    }
    lx.expect(';');
  }
  if (!lx.eof()) throw ParseError("trailing input", lx.line, lx.col);
  for (const auto& d : logical) {
    try {
      if (d.kind == "iso")
        declare_iso(pres, d.base);
      else if (d.kind == "refl")
        declare_refl(pres, d.base);
      else
        declare_transp(pres, d.base);
    } catch (const BuildError& e) {
      throw ParseError(e.what(), d.line, 0);
    }
  }
  return saturate(name, std::move(pres));
}

std::string serialize_signature(const Signature& sig) {
  std::ostringstream out;
  out << "sig " << (sig.name.empty() ? "Unnamed" : sig.name) << " {\n";
  const auto& p = sig.presentation;
  for (const auto& o : p.objects)
    if (o.lk == LogicalKind::None)
      out << "  object " << o.name << " : h " << o.h.str() << " ;\n";
  for (const auto& a : p.arrows)
    if (a.lk == LogicalKind::None)
      out << "  arrow " << a.name << " : " << a.dom << " -> " << a.cod
          << " ;\n";
  // Only equations between non-logical generators are user-declared; the
  // logical declarations below regenerate their own relations.
  std::set<std::string> logicalArrows;
  for (const auto& a : p.arrows)
    if (a.lk != LogicalKind::None) logicalArrows.insert(a.name);
  for (const auto& [lhs, rhs] : p.equations) {
    bool touchesLogical = false;
    for (const auto& seg : lhs)
      if (logicalArrows.count(seg)) touchesLogical = true;
    for (const auto& seg : rhs)
      if (logicalArrows.count(seg)) touchesLogical = true;
    if (!touchesLogical)
      out << "  eq " << path_key(lhs) << " = " << path_key(rhs) << " ;\n";
  }
  // Logical declarations in dependency order = declaration order.
  for (const auto& o : p.objects) {
    if (o.lk == LogicalKind::Iso)
      out << "  iso " << o.base << " ;\n";
    else if (o.lk == LogicalKind::Refl)
      out << "  refl " << o.base << " ;\n";
    else if (o.lk == LogicalKind::Transp)
      out << "  transp " << o.base << " ;\n";
  }
  out << "}\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Def 3.2 validation.
// ---------------------------------------------------------------------------

namespace {

// Arrows in L(dom, cod).
std::vector<int> hom(const Signature& s, int dom, int cod) {
  std::vector<int> out;
  for (int i = 0; i < (int)s.arrows.size(); ++i)
    if (s.arrows[i].dom == dom && s.arrows[i].cod == cod) out.push_back(i);
  return out;
}

bool contains(const std::vector<int>& v, int x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

}  // namespace

Report validate_h_signature(const Signature& sig) {
  Report rep;
  auto objname = [&](int i) { return sig.objects[i].name; };

  for (int oi = 0; oi < (int)sig.objects.size(); ++oi) {
    const ObjectSym& obj = sig.objects[oi];

    if (obj.lk == LogicalKind::Iso) {
      int K = sig.object_index(obj.base);
      if (K < 0) {
        rep.add("1a", obj.name, "iso sort over unknown base " + obj.base);
        continue;
      }
      // (1a) h(K) >= 2
      if (!(sig.objects[K].h >= HLevel::fin(2)))
        rep.add("1a", obj.name,
                "base " + obj.base + " has h-level " + sig.objects[K].h.str() +
                    " < 2");
      // (1b) top(Iso K) = {s,t} = L(Iso K, K)
      int s = -1, t = -1;
      for (int a : sig.cosieve(oi)) {
        if (sig.arrows[a].lk == LogicalKind::Src && sig.arrows[a].base == obj.base)
          s = a;
        if (sig.arrows[a].lk == LogicalKind::Tgt && sig.arrows[a].base == obj.base)
          t = a;
      }
      auto top = sig.top_level_arrows(oi);
      auto homKK = hom(sig, oi, K);
      bool topok = s >= 0 && t >= 0 && top.size() == 2 && contains(top, s) &&
                   contains(top, t) && homKK.size() == 2 &&
                   contains(homKK, s) && contains(homKK, t);
      if (!topok) {
        rep.add("1b", obj.name,
                "top-level arrows must be exactly {s,t} = L(" + obj.name +
                    ", " + obj.base + ")");
        continue;
      }
      // (1c) f∘s = f∘t for every f out of K
      for (int f : sig.cosieve(K))
        if (sig.compose2(f, s) != sig.compose2(f, t)) {
          rep.add("1c", obj.name,
                  "composite " + sig.arrows[f].name + "∘s differs from " +
                      sig.arrows[f].name + "∘t");
          break;
        }
      // (1d) h(Iso K) = h(K) - 1
      if (obj.h != sig.objects[K].h.minus(1))
        rep.add("1d", obj.name,
                "h = " + obj.h.str() + ", expected h(" + obj.base + ") - 1 = " +
                    sig.objects[K].h.minus(1).str());
    }

    else if (obj.lk == LogicalKind::Refl) {
      int K = sig.object_index(obj.base);
      int IK = sig.logical_child(LogicalKind::Iso, obj.base);
      if (K < 0 || IK < 0) {
        rep.add("2a", obj.name, "refl sort lacks base or iso sort");
        continue;
      }
      // (2a) h(K) >= 2
      if (!(sig.objects[K].h >= HLevel::fin(2)))
        rep.add("2a", obj.name,
                "base " + obj.base + " has h-level " + sig.objects[K].h.str() +
                    " < 2");
      // (2b) top(Refl K) = {r} = L(Refl K, Iso K)
      int r = -1;
      for (int a : sig.cosieve(oi))
        if (sig.arrows[a].lk == LogicalKind::ReflArrow &&
            sig.arrows[a].base == obj.base)
          r = a;
      auto top = sig.top_level_arrows(oi);
      auto homRI = hom(sig, oi, IK);
      if (!(r >= 0 && top.size() == 1 && top[0] == r && homRI.size() == 1 &&
            homRI[0] == r)) {
        rep.add("2b", obj.name,
                "top-level arrows must be exactly {r} = L(" + obj.name + ", " +
                    objname(IK) + ")");
        continue;
      }
      // (2c) s∘r = t∘r
      int s = sig.arrow_index(src_name(obj.base));
      int t = sig.arrow_index(tgt_name(obj.base));
      if (s < 0 || t < 0 || sig.compose2(s, r) != sig.compose2(t, r))
        rep.add("2c", obj.name, "s∘r differs from t∘r");
      // (2d) h(Refl K) = h(K) - 2
      if (obj.h != sig.objects[K].h.minus(2))
        rep.add("2d", obj.name,
                "h = " + obj.h.str() + ", expected h(" + obj.base + ") - 2 = " +
                    sig.objects[K].h.minus(2).str());
    }

    else if (obj.lk == LogicalKind::Transp) {
      int f = sig.arrow_index(obj.base);
      if (f < 0) {
        rep.add("3a", obj.name, "transport sort over unknown arrow " + obj.base);
        continue;
      }
      int A = sig.arrows[f].dom, K = sig.arrows[f].cod;
      int IK = sig.logical_child(LogicalKind::Iso, objname(K));
      // (3a) f top-level, h(K) >= 3
      if (!contains(sig.top_level_arrows(A), f))
        rep.add("3a", obj.name, "base arrow " + obj.base + " is not top-level");
      if (!(sig.objects[K].h >= HLevel::fin(3)))
        rep.add("3a", obj.name,
                "codomain " + objname(K) + " has h-level " +
                    sig.objects[K].h.str() + " < 3");
      if (IK < 0) {
        rep.add("3b", obj.name, "codomain " + objname(K) + " has no iso sort");
        continue;
      }
      // (3b) top(Transp f) = {e, f1, f2}; L(., Iso K) = {e}; L(., A) = {f1, f2}
      int e = -1, f1 = -1, f2 = -1;
      for (int a : sig.cosieve(oi)) {
        if (sig.arrows[a].base != obj.base) continue;
        if (sig.arrows[a].lk == LogicalKind::TranspPath) e = a;
        if (sig.arrows[a].lk == LogicalKind::Transp1) f1 = a;
        if (sig.arrows[a].lk == LogicalKind::Transp2) f2 = a;
      }
      auto top = sig.top_level_arrows(oi);
      auto homTI = hom(sig, oi, IK);
      auto homTA = hom(sig, oi, A);
      bool ok = e >= 0 && f1 >= 0 && f2 >= 0 && top.size() == 3 &&
                contains(top, e) && contains(top, f1) && contains(top, f2);
      if (IK == A) {
        // f : Iso(K) -> K, so the base and the iso sort coincide and the two
        // hom-set conditions merge into L(τ, Iso K) = {e, f1, f2}.
        ok = ok && homTI.size() == 3 && contains(homTI, e) &&
             contains(homTI, f1) && contains(homTI, f2);
      } else {
        ok = ok && homTI.size() == 1 && homTI[0] == e && homTA.size() == 2 &&
             contains(homTA, f1) && contains(homTA, f2);
      }
      if (!ok) {
        rep.add("3b", obj.name,
                "arrows must be top(τ)={e,f1,f2}, L(τ,Iso)= {e}, L(τ,dom)= {f1,f2}");
        continue;
      }
      int s = sig.arrow_index(src_name(objname(K)));
      int t = sig.arrow_index(tgt_name(objname(K)));
      // (3c) s∘e = f∘f1 and t∘e = f∘f2
      if (sig.compose2(s, e) != sig.compose2(f, f1) ||
          sig.compose2(t, e) != sig.compose2(f, f2))
        rep.add("3c", obj.name, "s∘e = f∘f1 / t∘e = f∘f2 violated");
      // (3d) g∘f1 = g∘f2 for every g in A//L except f
      for (int g : sig.cosieve(A))
        if (g != f && sig.compose2(g, f1) != sig.compose2(g, f2)) {
          rep.add("3d", obj.name,
                  "composite " + sig.arrows[g].name + "∘f1 differs from " +
                      sig.arrows[g].name + "∘f2");
          break;
        }
      // (3e) q∘f∘f1 = q∘f∘f2 for every q in K//L
      for (int q : sig.cosieve(K)) {
        int l = sig.compose2(q, sig.compose2(f, f1));
        int r = sig.compose2(q, sig.compose2(f, f2));
        if (l != r) {
          rep.add("3e", obj.name,
                  "composite " + sig.arrows[q].name + "∘f∘f1 differs from " +
                      sig.arrows[q].name + "∘f∘f2");
          break;
        }
      }
      // (3f) h(Transp f) = h(A) - 1
      if (obj.h != sig.objects[A].h.minus(1))
        rep.add("3f", obj.name,
                "h = " + obj.h.str() + ", expected h(" + objname(A) +
                    ") - 1 = " + sig.objects[A].h.minus(1).str());
    }

    // (4) h(K) = 0 only for refl sorts.
    if (obj.h == HLevel::fin(0) && obj.lk != LogicalKind::Refl)
      rep.add("4", obj.name, "h-level 0 sort that is not a refl sort");
  }
  return rep;
}

}  // namespace foliso
