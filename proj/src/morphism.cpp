#include "foliso/morphism.hpp"

#include <algorithm>
#include <set>

namespace foliso {

namespace {

// Structural object order: K R K' iff some arrow K' -> K exists (transitively
// closed by saturation: every composite is an explicit arrow).
bool below(const Signature& s, int lower, int upper) {
  for (const auto& a : s.arrows)
    if (a.dom == upper && a.cod == lower) return true;
  return false;
}

}  // namespace

ArrowImage HMorphism::compose_images(const ArrowImage& g,
                                     const ArrowImage& f) const {
  if (g.identity) return f;
  if (f.identity) return g;
  return {false, dst->compose2(g.index, f.index)};
}

HMorphism identity_morphism(const Signature& sig) {
  HMorphism m;
  m.src = m.dst = std::make_shared<Signature>(sig);
  m.object_map.resize(sig.objects.size());
  for (int i = 0; i < (int)sig.objects.size(); ++i) m.object_map[i] = i;
  m.arrow_map.resize(sig.arrows.size());
  for (int i = 0; i < (int)sig.arrows.size(); ++i) m.arrow_map[i] = {false, i};
  return m;
}

HMorphism compose(const HMorphism& h, const HMorphism& g) {
  HMorphism out;
  out.src = g.src;
  out.dst = h.dst;
  out.object_map.resize(g.object_map.size());
  for (size_t i = 0; i < g.object_map.size(); ++i)
    out.object_map[i] = h.object_map[g.object_map[i]];
  out.arrow_map.resize(g.arrow_map.size());
  for (size_t i = 0; i < g.arrow_map.size(); ++i) {
    ArrowImage mid = g.arrow_map[i];
    if (mid.identity)
      out.arrow_map[i] = {true, h.object_map[mid.index]};
    else
      out.arrow_map[i] = h.arrow_map[mid.index];
  }
  return out;
}

bool same_map(const HMorphism& a, const HMorphism& b) {
  return a.object_map == b.object_map && a.arrow_map == b.arrow_map;
}

HMorphism invert(const HMorphism& m) {
  HMorphism out;
  out.src = m.dst;
  out.dst = m.src;
  out.object_map.assign(m.dst->objects.size(), -1);
  for (int i = 0; i < (int)m.object_map.size(); ++i)
    out.object_map[m.object_map[i]] = i;
  out.arrow_map.assign(m.dst->arrows.size(), ArrowImage{});
  for (int i = 0; i < (int)m.arrow_map.size(); ++i)
    if (!m.arrow_map[i].identity)
      out.arrow_map[m.arrow_map[i].index] = {false, i};
  return out;
}

Report check_h_morphism(const HMorphism& m, bool strict) {
  Report rep;
  const Signature &S = *m.src, &D = *m.dst;
  if (m.object_map.size() != S.objects.size() ||
      m.arrow_map.size() != S.arrows.size()) {
    rep.add("morphism", "", "map arity does not match source signature");
    return rep;
  }
  for (int o = 0; o < (int)S.objects.size(); ++o) {
    int io = m.object_map[o];
    if (io < 0 || io >= (int)D.objects.size()) {
      rep.add("morphism", S.objects[o].name, "object image out of range");
      return rep;
    }
    if (!(S.objects[o].h <= D.objects[io].h))
      rep.add("h-level", S.objects[o].name,
              "h " + S.objects[o].h.str() + " > h(" + D.objects[io].name +
                  ") = " + D.objects[io].h.str());
  }
  for (int a = 0; a < (int)S.arrows.size(); ++a) {
    ArrowImage ia = m.arrow_map[a];
    const auto& ar = S.arrows[a];
    if (ia.identity) {
      if (m.object_map[ar.dom] != ia.index || m.object_map[ar.cod] != ia.index)
        rep.add("functor", ar.name,
                "identity image requires I(dom) = I(cod) = the object");
    } else {
      if (ia.index < 0 || ia.index >= (int)D.arrows.size()) {
        rep.add("morphism", ar.name, "arrow image out of range");
        return rep;
      }
      const auto& im = D.arrows[ia.index];
      if (im.dom != m.object_map[ar.dom] || im.cod != m.object_map[ar.cod])
        rep.add("functor", ar.name, "image does not preserve dom/cod");
    }
  }
  if (!rep.ok()) return rep;
  // Functoriality over the full table.
  for (const auto& [gf, c] : S.compose) {
    ArrowImage expect = m.compose_images(m.arrow_map[gf.first], m.arrow_map[gf.second]);
    if (!(m.arrow_map[c] == expect))
      rep.add("functor", S.arrows[c].name, "composition not preserved");
  }
  // Structural order preservation.
  for (int x = 0; x < (int)S.objects.size(); ++x)
    for (int y = 0; y < (int)S.objects.size(); ++y)
      if (x != y && below(S, x, y) && m.object_map[x] != m.object_map[y] &&
          !below(D, m.object_map[x], m.object_map[y]))
        rep.add("order", S.objects[y].name,
                "structural order " + S.objects[x].name + " < " +
                    S.objects[y].name + " not preserved");
  if (strict) {
    for (int o = 0; o < (int)S.objects.size(); ++o) {
      const auto& so = S.objects[o];
      const auto& io = D.objects[m.object_map[o]];
      if (so.lk != io.lk) {
        rep.add("logical-kind", so.name, "logical kind not preserved");
        continue;
      }
      if (so.lk == LogicalKind::Iso || so.lk == LogicalKind::Refl) {
        int b = S.object_index(so.base);
        if (b < 0 || D.objects[m.object_map[b]].name != io.base)
          rep.add("logical-kind", so.name, "logical base not preserved");
      } else if (so.lk == LogicalKind::Transp) {
        int b = S.arrow_index(so.base);
        ArrowImage ib = b >= 0 ? m.arrow_map[b] : ArrowImage{};
        if (b < 0 || ib.identity || D.arrows[ib.index].name != io.base)
          rep.add("logical-kind", so.name, "logical base not preserved");
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Isomorphism search.
// ---------------------------------------------------------------------------

namespace {

struct IsoSearch {
  const Signature &A, &B;
  std::vector<int> omap;                 // A object -> B object or -1
  std::vector<int> oused;                // B object used flags
  std::vector<int> amap;                 // A arrow -> B arrow or -1
  std::vector<int> aused;                // B arrow used flags
  std::vector<int> alevel;               // cached levels of A objects
  std::vector<int> blevel;

  IsoSearch(const Signature& a, const Signature& b) : A(a), B(b) {
    omap.assign(A.objects.size(), -1);
    oused.assign(B.objects.size(), 0);
    amap.assign(A.arrows.size(), -1);
    aused.assign(B.arrows.size(), 0);
    for (int i = 0; i < (int)A.objects.size(); ++i)
      alevel.push_back(A.level(i));
    for (int i = 0; i < (int)B.objects.size(); ++i)
      blevel.push_back(B.level(i));
  }

  // Candidate order: matching name first, then descending name.
  template <typename Name>
  std::vector<int> order_candidates(std::vector<int> cand, const std::string& want,
                                    Name name) {
    std::sort(cand.begin(), cand.end(), [&](int x, int y) {
      bool mx = name(x) == want, my = name(y) == want;
      if (mx != my) return mx;
      return name(x) > name(y);
    });
    return cand;
  }

  bool assign_objects(int oi) {
    if (oi == (int)A.objects.size()) return assign_arrows(0);
    const auto& obj = A.objects[oi];
    std::vector<int> cand;
    for (int b = 0; b < (int)B.objects.size(); ++b) {
      if (oused[b]) continue;
      if (blevel[b] != alevel[oi]) continue;
      if (!(B.objects[b].h == obj.h)) continue;
      if (B.cosieve(b).size() != A.cosieve(oi).size()) continue;
      cand.push_back(b);
    }
    cand = order_candidates(cand, obj.name,
                            [&](int i) { return B.objects[i].name; });
    for (int b : cand) {
      // hom-set sizes to already-assigned objects must agree.
      bool ok = true;
      for (int o2 = 0; o2 < oi && ok; ++o2) {
        int n1 = 0, n2 = 0;
        for (const auto& ar : A.arrows) {
          if (ar.dom == oi && ar.cod == o2) ++n1;
          if (ar.dom == o2 && ar.cod == oi) ++n1;
        }
        for (const auto& br : B.arrows) {
          if (br.dom == b && br.cod == omap[o2]) ++n2;
          if (br.dom == omap[o2] && br.cod == b) ++n2;
        }
        ok = n1 == n2;
      }
      if (!ok) continue;
      omap[oi] = b;
      oused[b] = 1;
      if (assign_objects(oi + 1)) return true;
      omap[oi] = -1;
      oused[b] = 0;
    }
    return false;
  }

  // Arrows processed by (level of domain ascending, canonical position) so
  // that composites of assigned arrows constrain later choices early.
  std::vector<int> arrow_order() const {
    std::vector<int> idx(A.arrows.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = (int)i;
    std::stable_sort(idx.begin(), idx.end(), [&](int x, int y) {
      return alevel[A.arrows[x].dom] < alevel[A.arrows[y].dom];
    });
    return idx;
  }

  bool consistent(int ai, int bi) {
    // All compositions with already-assigned arrows must be preserved.
    for (int x = 0; x < (int)A.arrows.size(); ++x) {
      if (amap[x] < 0) continue;
      auto it = A.compose.find({ai, x});
      if (it != A.compose.end() && amap[it->second] >= 0)
        if (B.compose2(bi, amap[x]) != amap[it->second]) return false;
      it = A.compose.find({x, ai});
      if (it != A.compose.end() && amap[it->second] >= 0)
        if (B.compose2(amap[x], bi) != amap[it->second]) return false;
    }
    // ai may itself be the composite of two already-assigned arrows.
    for (const auto& [gf, c] : A.compose)
      if (c == ai && amap[gf.first] >= 0 && amap[gf.second] >= 0)
        if (B.compose2(amap[gf.first], amap[gf.second]) != bi) return false;
    return true;
  }

  bool assign_arrows_at(const std::vector<int>& order, size_t k) {
    if (k == order.size()) return true;
    int ai = order[k];
    const auto& ar = A.arrows[ai];
    std::vector<int> cand;
    for (int b = 0; b < (int)B.arrows.size(); ++b) {
      if (aused[b]) continue;
      if (B.arrows[b].dom != omap[ar.dom] || B.arrows[b].cod != omap[ar.cod])
        continue;
      cand.push_back(b);
    }
    cand = order_candidates(cand, ar.name,
                            [&](int i) { return B.arrows[i].name; });
    for (int b : cand) {
      amap[ai] = b;
      aused[b] = 1;
      if (consistent(ai, b) && assign_arrows_at(order, k + 1)) return true;
      amap[ai] = -1;
      aused[b] = 0;
    }
    return false;
  }

  bool assign_arrows(int) { return assign_arrows_at(arrow_order(), 0); }
};

}  // namespace

std::optional<HMorphism> find_isomorphism(const Signature& a,
                                          const Signature& b) {
  if (a.objects.size() != b.objects.size() ||
      a.arrows.size() != b.arrows.size())
    return std::nullopt;
  IsoSearch search(a, b);
  if (!search.assign_objects(0)) return std::nullopt;
  HMorphism m;
  m.src = std::make_shared<Signature>(a);
  m.dst = std::make_shared<Signature>(b);
  m.object_map = search.omap;
  m.arrow_map.resize(search.amap.size());
  for (size_t i = 0; i < search.amap.size(); ++i)
    m.arrow_map[i] = {false, search.amap[i]};
  return m;
}

}  // namespace foliso
