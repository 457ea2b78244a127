// Inverse categories, proper orders and h-signatures.
//
// A signature is stored *saturated*: every non-identity arrow (including all
// composites) is an explicit entry, and composition is a total table over
// composable pairs. Saturation is computed once, by enumerating all generator
// paths (finite, since levels strictly decrease) and quotienting by the
// congruence closure of the declared path equations. Equality of composites
// is then a table lookup, which the equational well-formedness clauses need.
//
// Alongside the saturated data each signature keeps its *presentation*
// (generator arrows + path equations); completion operators extend the
// presentation and re-saturate, and the file serializer writes it back out.
#ifndef FOLISO_SIGNATURE_HPP
#define FOLISO_SIGNATURE_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "foliso/basics.hpp"

namespace foliso {

// Logical role of a symbol. Objects: Iso/Refl/Transp sorts generated over a
// base symbol. Arrows: the structural arrows those sorts carry.
enum class LogicalKind {
  None,        // non-logical object or arrow (includes all composites)
  Iso,         // iso sort over object `base`
  Refl,        // reflexivity sort over object `base`
  Transp,      // transport sort over arrow `base`
  Src,         // s : Iso(K) -> K
  Tgt,         // t : Iso(K) -> K
  ReflArrow,   // r : Refl(K) -> Iso(K)
  TranspPath,  // e : Transp(f) -> Iso(cod f)
  Transp1,     // f1 : Transp(f) -> dom f
  Transp2,     // f2 : Transp(f) -> dom f
};

bool is_logical_object_kind(LogicalKind k);

// Deterministic surface names of generated logical symbols.
std::string iso_name(const std::string& base);     // Iso(K)
std::string refl_name(const std::string& base);    // Refl(K)
std::string transp_name(const std::string& base);  // Transp(f)
std::string src_name(const std::string& base);     // s(K)
std::string tgt_name(const std::string& base);     // t(K)
std::string refl_arrow_name(const std::string& base);  // r(K)
std::string transp_path_name(const std::string& base); // e(f)
std::string transp1_name(const std::string& base);     // f1(f)
std::string transp2_name(const std::string& base);     // f2(f)

struct ObjectSym {
  std::string name;
  LogicalKind lk = LogicalKind::None;
  std::string base;  // base symbol name for logical kinds, empty otherwise
  HLevel h = HLevel::inf();
};

// A path is a composite written outer-first: {"d","i"} denotes d∘i.
using Path = std::vector<std::string>;

struct ArrowSym {
  std::string name;  // generator name, or dotted representative path
  LogicalKind lk = LogicalKind::None;
  std::string base;
  int dom = -1, cod = -1;  // object indices
  bool generator = false;  // true iff a declared (non-composite) arrow
  Path rep;                // representative generator path (size 1 iff generator)
};

// The presentation a signature was built from; kept for re-saturation by the
// completion operators and for serialization.
struct Presentation {
  struct PObject {
    std::string name;
    LogicalKind lk = LogicalKind::None;
    std::string base;
    HLevel h = HLevel::inf();
  };
  struct PArrow {
    std::string name;
    LogicalKind lk = LogicalKind::None;
    std::string base;
    std::string dom, cod;
  };
  std::vector<PObject> objects;
  std::vector<PArrow> arrows;
  std::vector<std::pair<Path, Path>> equations;

  bool has_object(const std::string& name) const;
  bool has_arrow(const std::string& name) const;
};

struct Signature {
  std::string name;
  // Canonical proper order is baked into the element order of both vectors:
  // objects by (level ascending, name); arrows by (codomain position,
  // domain position, name).
  std::vector<ObjectSym> objects;
  std::vector<ArrowSym> arrows;
  // compose[{g, f}] = g∘f for every composable pair of non-identity arrows
  // (dom g == cod f). Identities are implicit.
  std::map<std::pair<int, int>, int> compose;
  Presentation presentation;

  int object_index(const std::string& name) const;  // -1 if absent
  int arrow_index(const std::string& name) const;   // -1 if absent
  const ObjectSym& object(int i) const { return objects[i]; }
  const ArrowSym& arrow(int i) const { return arrows[i]; }

  // Non-identity arrows with domain K, in canonical order (the cosieve K//L).
  std::vector<int> cosieve(int obj) const;
  // Arrows from K that do not factor as h∘k with h, k non-identity.
  std::vector<int> top_level_arrows(int obj) const;
  // 0 if K has only its identity out-arrow, else 1 + max level of codomains.
  int level(int obj) const;
  int height() const;  // max object level + 1, 0 when empty

  int compose2(int g, int f) const;  // table lookup, throws on non-composable

  // Object with the given logical kind over `base`, or -1.
  int logical_child(LogicalKind lk, const std::string& base) const;

  bool same_symbols(const Signature& other) const;  // symbol-set + h equality
};

bool operator==(const Signature& a, const Signature& b);

// Saturates a presentation into a signature with canonical proper order.
// Throws BuildError on cycles, unknown symbols, or dom/cod-incompatible
// equations.
Signature saturate(std::string name, Presentation pres);

// Helpers that extend a presentation with a logical sort and its structural
// arrows + equations (referring only to generator arrows; congruence closure
// supplies the composite instances). Throw BuildError on missing bases or
// duplicate declarations.
void declare_iso(Presentation& p, const std::string& base);
void declare_refl(Presentation& p, const std::string& base);
void declare_transp(Presentation& p, const std::string& base_arrow);

// Signature-file front end (grammar in README). parse_signature saturates
// and canonically orders; serialize_signature writes the presentation back.
Signature parse_signature(const std::string& text);
std::string serialize_signature(const Signature& sig);

// Def 3.2 validation. Violations are reported with clause identifiers
// 1a-1d (iso sorts), 2a-2d (refl sorts), 3a-3f (transport sorts), 4
// (h-level-0 sorts must be refl sorts). Empty report == valid h-signature.
Report validate_h_signature(const Signature& sig);

}  // namespace foliso

#endif  // FOLISO_SIGNATURE_HPP
