// Shared in-code signature builders used across the test binaries.
#pragma once

#include "foliso/signature.hpp"

namespace foliso::testsig {

// Reflexive graphs: O (h3); A (h2) with d,c : A -> O; I (h1) with i : I -> A
// subject to d∘i = c∘i.
inline Signature lrg() {
  Presentation p;
  p.objects = {{"O", LogicalKind::None, "", HLevel::fin(3)},
               {"A", LogicalKind::None, "", HLevel::fin(2)},
               {"I", LogicalKind::None, "", HLevel::fin(1)}};
  p.arrows = {{"d", LogicalKind::None, "", "A", "O"},
              {"c", LogicalKind::None, "", "A", "O"},
              {"i", LogicalKind::None, "", "I", "A"}};
  p.equations = {{{"d", "i"}, {"c", "i"}}};
  return saturate("L_rg", std::move(p));
}

// Categories: O, A as in L_rg; I (identities), E (arrow equality),
// T (composition), all h1; O h3, A h2.
inline Signature lcat() {
  Presentation p;
  p.objects = {{"O", LogicalKind::None, "", HLevel::fin(3)},
               {"A", LogicalKind::None, "", HLevel::fin(2)},
               {"I", LogicalKind::None, "", HLevel::fin(1)},
               {"E", LogicalKind::None, "", HLevel::fin(1)},
               {"T", LogicalKind::None, "", HLevel::fin(1)}};
  p.arrows = {{"d", LogicalKind::None, "", "A", "O"},
              {"c", LogicalKind::None, "", "A", "O"},
              {"i", LogicalKind::None, "", "I", "A"},
              {"s", LogicalKind::None, "", "E", "A"},
              {"t", LogicalKind::None, "", "E", "A"},
              {"t0", LogicalKind::None, "", "T", "A"},
              {"t1", LogicalKind::None, "", "T", "A"},
              {"t2", LogicalKind::None, "", "T", "A"}};
  p.equations = {{{"d", "i"}, {"c", "i"}},
                 {{"d", "s"}, {"d", "t"}},
                 {{"c", "s"}, {"c", "t"}},
                 {{"d", "t0"}, {"d", "t2"}},
                 {{"c", "t1"}, {"c", "t2"}},
                 {{"d", "t1"}, {"c", "t0"}}};
  return saturate("L_cat", std::move(p));
}

// The one-sort h-signature L_{K,3}: a single K at h-level 3, with iso,
// reflexivity, one transport (along s(K)) and the iso of the iso sort.
inline Signature lk3() {
  Presentation p;
  p.objects = {{"K", LogicalKind::None, "", HLevel::fin(3)}};
  declare_iso(p, "K");
  declare_refl(p, "K");
  declare_transp(p, src_name("K"));
  declare_iso(p, iso_name("K"));
  return saturate("L_K3", std::move(p));
}

}  // namespace foliso::testsig
