// h-morphisms between signatures and isomorphism search.
#ifndef FOLISO_MORPHISM_HPP
#define FOLISO_MORPHISM_HPP

#include <memory>
#include <optional>

#include "foliso/signature.hpp"

namespace foliso {

// A map between two signatures. Arrow images may be identities (an arrow can
// collapse onto an object), so images are tagged.
struct ArrowImage {
  bool identity = false;
  int index = -1;  // object index when identity, else arrow index
  bool operator==(const ArrowImage& o) const {
    return identity == o.identity && index == o.index;
  }
};

struct HMorphism {
  std::shared_ptr<const Signature> src, dst;  // owned: morphisms outlive calls
  std::vector<int> object_map;          // src object -> dst object
  std::vector<ArrowImage> arrow_map;    // src arrow -> dst arrow or identity

  ArrowImage compose_images(const ArrowImage& g, const ArrowImage& f) const;
};

// Composition h ∘ g of morphisms (g first). Domains must line up.
HMorphism compose(const HMorphism& h, const HMorphism& g);
HMorphism identity_morphism(const Signature& sig);
bool same_map(const HMorphism& a, const HMorphism& b);

// Verifies: dom/cod preservation, functoriality on the composition table,
// preservation of the structural proper order (the order generated by the
// arrows; name tie-breaks of the canonical total order are not part of the
// signature's structure), and h(K) <= h'(I(K)). With strict=true the map
// must also preserve logical kinds and bases (a FOL≅-morphism) and h-levels
// exactly when bijective.
Report check_h_morphism(const HMorphism& m, bool strict = false);

// Backtracking search for a full, faithful, bijective-on-objects h-morphism
// with h(K) = h'(I(K)). Deterministic: candidates with a matching name are
// tried first, remaining candidates in descending name order.
std::optional<HMorphism> find_isomorphism(const Signature& a,
                                          const Signature& b);

// Inverse of a bijective morphism.
HMorphism invert(const HMorphism& m);

}  // namespace foliso

#endif  // FOLISO_MORPHISM_HPP
