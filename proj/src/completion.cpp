#include "foliso/completion.hpp"

#include <functional>

namespace foliso {

namespace {

// Adds one G layer to the presentation; returns true when anything was added.
bool add_glob_layer(const Signature& sig, Presentation& pres) {
  bool added = false;
  for (const auto& obj : sig.objects) {
    if (!(obj.h >= HLevel::fin(2))) continue;
    if (!pres.has_object(iso_name(obj.name))) {
      declare_iso(pres, obj.name);
      added = true;
    }
    if (!pres.has_object(refl_name(obj.name))) {
      declare_refl(pres, obj.name);
      added = true;
    }
  }
  return added;
}

}  // namespace

Signature glob_step(const Signature& sig) {
  Presentation pres = sig.presentation;
  if (!add_glob_layer(sig, pres)) return sig;
  return saturate(sig.name, std::move(pres));
}

Signature glob(const Signature& sig, std::optional<int> layer_bound) {
  Signature cur = sig;
  int limit = layer_bound.value_or(64);
  for (int i = 0; i < limit; ++i) {
    if (!layer_bound) {
      // An infinite-level sort without its iso/refl can never close: each
      // added layer inherits h = ∞. Diagnose up front instead of diverging.
      for (const auto& o : cur.objects)
        if (o.h.is_inf() &&
            (!cur.presentation.has_object(iso_name(o.name)) ||
             !cur.presentation.has_object(refl_name(o.name))))
          throw BuildError(
              "glob: depth exceeded (sort " + o.name +
              " has infinite h-level; supply a layer bound)");
    }
    Signature next = glob_step(cur);
    if (next.same_symbols(cur)) return cur;
    cur = std::move(next);
  }
  if (!layer_bound)
    throw BuildError("glob: depth exceeded (closure did not stabilize within "
                     "64 layers; supply a layer bound)");
  return cur;
}

Signature tau_step(const Signature& sig) {
  Presentation pres = sig.presentation;
  bool added = false;
  for (int oi = 0; oi < (int)sig.objects.size(); ++oi) {
    for (int f : sig.top_level_arrows(oi)) {
      const ArrowSym& ar = sig.arrows[f];
      const ObjectSym& cod = sig.objects[ar.cod];
      if (!(cod.h >= HLevel::fin(3))) continue;
      if (pres.has_object(transp_name(ar.name))) continue;
      // Not formable until the codomain's iso sort exists (image of glob);
      // simply not yet due, never an error.
      if (!pres.has_object(iso_name(cod.name))) continue;
      declare_transp(pres, ar.name);
      added = true;
    }
  }
  if (!added) return sig;
  return saturate(sig.name, std::move(pres));
}

Signature t_step(const Signature& sig) { return glob(tau_step(sig)); }

namespace {

Signature t_step_bounded(const Signature& sig, int glob_bound) {
  return glob(tau_step(sig), glob_bound);
}

}  // namespace

RepletionResult repletion(const Signature& sig, CompletionConfig cfg) {
  RepletionResult res{sig, false, 0};
  // Finite-level signatures use the exhaustive glob; with infinite levels
  // each iteration adds a single glob layer so repletion stays total.
  bool has_inf = false;
  for (const auto& o : sig.objects) has_inf |= o.h.is_inf();
  for (int i = 0; i < cfg.max_t_iterations; ++i) {
    Signature next =
        has_inf ? t_step_bounded(res.sig, 1) : t_step(res.sig);
    ++res.iterations;
    if (next.same_symbols(res.sig)) {
      res.reached_fixpoint = true;
      return res;
    }
    res.sig = std::move(next);
  }
  return res;
}

bool is_fixed_point(const Signature& sig) {
  return t_step(sig).same_symbols(sig);
}

// ---------------------------------------------------------------------------
// Monad structure.
// ---------------------------------------------------------------------------

namespace {

// Builds a morphism from images of objects (by name) and generator arrows,
// extending to composites by folding representative paths.
HMorphism build_morphism(
    std::shared_ptr<const Signature> src, std::shared_ptr<const Signature> dst,
    const std::function<std::string(const ObjectSym&)>& obj_image,
    const std::function<ArrowImage(const ArrowSym&)>& gen_image) {
  HMorphism m;
  m.src = src;
  m.dst = dst;
  for (const auto& o : src->objects) {
    int io = dst->object_index(obj_image(o));
    if (io < 0) throw BuildError("morphism: missing image object for " + o.name);
    m.object_map.push_back(io);
  }
  for (const auto& a : src->arrows) {
    ArrowImage img{true, m.object_map[a.dom]};  // start at identity
    // rep is outer-first; fold right-to-left (order is irrelevant here, the
    // table is associative).
    for (auto it = a.rep.rbegin(); it != a.rep.rend(); ++it) {
      int gi = src->arrow_index(*it);
      if (gi < 0) throw BuildError("morphism: unknown generator " + *it);
      img = m.compose_images(gen_image(src->arrows[gi]), img);
    }
    m.arrow_map.push_back(img);
  }
  return m;
}

}  // namespace

HMorphism monad_eta(const Signature& sig) {
  auto src = std::make_shared<Signature>(sig);
  auto dst = std::make_shared<Signature>(glob_step(sig));
  return build_morphism(
      src, dst, [](const ObjectSym& o) { return o.name; },
      [&](const ArrowSym& a) {
        return ArrowImage{false, dst->arrow_index(a.name)};
      });
}

HMorphism monad_mu(const Signature& sig) {
  auto g1 = std::make_shared<Signature>(glob_step(sig));
  auto g2 = std::make_shared<Signature>(glob_step(*g1));
  return build_morphism(
      g2, g1,
      [&](const ObjectSym& o) {
        // Sorts of the second layer contract onto their base.
        if (g1->object_index(o.name) >= 0) return o.name;
        return o.base;
      },
      [&](const ArrowSym& a) -> ArrowImage {
        int keep = g1->arrow_index(a.name);
        if (keep >= 0) return {false, keep};
        // New generators (s/t/r over a logical base) collapse to identities.
        return {true, g1->object_index(a.base)};
      });
}

HMorphism glob_on_morphism(const HMorphism& i) {
  auto gsrc = std::make_shared<Signature>(glob_step(*i.src));
  auto gdst = std::make_shared<Signature>(glob_step(*i.dst));
  auto image_object_name = [&](const ObjectSym& o) -> std::string {
    int idx = i.src->object_index(o.name);
    if (idx >= 0) return i.dst->objects[i.object_map[idx]].name;
    // One new layer: Iso(K)/Refl(K) over K in the source.
    int base = i.src->object_index(o.base);
    const std::string ib = i.dst->objects[i.object_map[base]].name;
    return o.lk == LogicalKind::Iso ? iso_name(ib) : refl_name(ib);
  };
  return build_morphism(
      gsrc, gdst, image_object_name,
      [&](const ArrowSym& a) -> ArrowImage {
        int idx = i.src->arrow_index(a.name);
        if (idx >= 0) {
          ArrowImage im = i.arrow_map[idx];
          if (im.identity)
            return {true, gdst->object_index(
                              i.dst->objects[im.index].name)};
          return {false,
                  gdst->arrow_index(i.dst->arrows[im.index].name)};
        }
        // New structural generator over base K (object) in the source.
        int base = i.src->object_index(a.base);
        const std::string ib = i.dst->objects[i.object_map[base]].name;
        std::string name;
        switch (a.lk) {
          case LogicalKind::Src: name = src_name(ib); break;
          case LogicalKind::Tgt: name = tgt_name(ib); break;
          case LogicalKind::ReflArrow: name = refl_arrow_name(ib); break;
          default:
            throw BuildError("glob_on_morphism: unexpected new generator " +
                             a.name);
        }
        return {false, gdst->arrow_index(name)};
      });
}

}  // namespace foliso
