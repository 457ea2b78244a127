#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>

#include "doctest.h"
#include "foliso/morphism.hpp"
#include "foliso/signature.hpp"
#include "sigs.hpp"

using namespace foliso;

namespace {

std::vector<std::string> object_names(const Signature& s) {
  std::vector<std::string> out;
  for (const auto& o : s.objects) out.push_back(o.name);
  return out;
}

std::vector<std::string> arrow_names(const Signature& s) {
  std::vector<std::string> out;
  for (const auto& a : s.arrows) out.push_back(a.name);
  return out;
}

std::vector<std::string> names_of(const Signature& s, const std::vector<int>& is) {
  std::vector<std::string> out;
  for (int i : is) out.push_back(s.arrows[i].name);
  return out;
}

}  // namespace

TEST_CASE("L_rg saturation: objects, arrows, canonical order") {
  Signature s = testsig::lrg();
  CHECK(object_names(s) == std::vector<std::string>{"O", "A", "I"});
  // Proper order on arrows: c < d < d.i (= c.i) < i.
  CHECK(arrow_names(s) == std::vector<std::string>{"c", "d", "d.i", "i"});
  CHECK(s.height() == 3);
  CHECK(s.level(s.object_index("O")) == 0);
  CHECK(s.level(s.object_index("A")) == 1);
  CHECK(s.level(s.object_index("I")) == 2);
}

TEST_CASE("L_rg composition table identifies d∘i = c∘i") {
  Signature s = testsig::lrg();
  int d = s.arrow_index("d"), c = s.arrow_index("c"), i = s.arrow_index("i");
  int di = s.arrow_index("d.i");
  REQUIRE(di >= 0);
  CHECK(s.compose2(d, i) == di);
  CHECK(s.compose2(c, i) == di);
  CHECK(s.arrows[di].rep == Path{"d", "i"});
}

TEST_CASE("L_rg cosieves and top-level arrows") {
  Signature s = testsig::lrg();
  CHECK(names_of(s, s.cosieve(s.object_index("I"))) ==
        std::vector<std::string>{"d.i", "i"});
  CHECK(names_of(s, s.cosieve(s.object_index("A"))) ==
        std::vector<std::string>{"c", "d"});
  CHECK(s.cosieve(s.object_index("O")).empty());
  CHECK(names_of(s, s.top_level_arrows(s.object_index("I"))) ==
        std::vector<std::string>{"i"});
  CHECK(names_of(s, s.top_level_arrows(s.object_index("A"))) ==
        std::vector<std::string>{"c", "d"});
}

TEST_CASE("L_cat saturation oracle: 6 objects' worth of data") {
  Signature s = testsig::lcat();
  CHECK(object_names(s) == std::vector<std::string>{"O", "A", "E", "I", "T"});
  // The composition sort carries 6 non-identity out-arrows: three composite
  // classes plus t0,t1,t2.
  int T = s.object_index("T");
  auto cos = s.cosieve(T);
  CHECK(cos.size() == 6);
  int d = s.arrow_index("d"), c = s.arrow_index("c");
  int t0 = s.arrow_index("t0"), t1 = s.arrow_index("t1"), t2 = s.arrow_index("t2");
  CHECK(s.compose2(d, t0) == s.compose2(d, t2));
  CHECK(s.compose2(c, t1) == s.compose2(c, t2));
  CHECK(s.compose2(d, t1) == s.compose2(c, t0));
  // ...and exactly three distinct classes.
  std::set<int> classes{s.compose2(d, t0), s.compose2(d, t1), s.compose2(d, t2),
                        s.compose2(c, t0), s.compose2(c, t1), s.compose2(c, t2)};
  CHECK(classes.size() == 3);
  // E's composites collapse pairwise: d∘s = d∘t, c∘s = c∘t.
  int sE = s.arrow_index("s"), tE = s.arrow_index("t");
  CHECK(s.compose2(d, sE) == s.compose2(d, tE));
  CHECK(s.compose2(c, sE) == s.compose2(c, tE));
  CHECK(s.cosieve(s.object_index("E")).size() == 4);
}

TEST_CASE("saturate rejects cycles and bad equations") {
  Presentation p;
  p.objects = {{"X", LogicalKind::None, "", HLevel::fin(1)},
               {"Y", LogicalKind::None, "", HLevel::fin(1)}};
  p.arrows = {{"f", LogicalKind::None, "", "X", "Y"},
              {"g", LogicalKind::None, "", "Y", "X"}};
  CHECK_THROWS_AS(saturate("cyc", std::move(p)), BuildError);

  Presentation q;
  q.objects = {{"X", LogicalKind::None, "", HLevel::fin(1)}};
  q.arrows = {{"f", LogicalKind::None, "", "X", "X"}};
  CHECK_THROWS_AS(saturate("endo", std::move(q)), BuildError);
}

TEST_CASE("logical declarations generate the Def 3.2 data") {
  Presentation p = testsig::lrg().presentation;
  declare_iso(p, "A");
  Signature s = saturate("L_rg+isoA", std::move(p));
  int iso = s.object_index(iso_name("A"));
  REQUIRE(iso >= 0);
  CHECK(s.objects[iso].h == HLevel::fin(1));
  CHECK(s.objects[iso].lk == LogicalKind::Iso);
  auto cos = names_of(s, s.cosieve(iso));
  CHECK(cos == std::vector<std::string>{"c.t(A)", "d.t(A)", "s(A)", "t(A)"});
  // Clause 1c: f∘s = f∘t for every f out of A.
  int sA = s.arrow_index("s(A)"), tA = s.arrow_index("t(A)");
  CHECK(s.compose2(s.arrow_index("c"), sA) ==
        s.compose2(s.arrow_index("c"), tA));
  CHECK(s.compose2(s.arrow_index("d"), sA) ==
        s.compose2(s.arrow_index("d"), tA));
  CHECK(validate_h_signature(s).ok());
}

TEST_CASE("validate_h_signature accepts L_rg, L_cat, L_K3") {
  CHECK(validate_h_signature(testsig::lrg()).ok());
  CHECK(validate_h_signature(testsig::lcat()).ok());
  CHECK(validate_h_signature(testsig::lk3()).ok());
}

TEST_CASE("serialize/parse round trip") {
  for (const Signature& s :
       {testsig::lrg(), testsig::lcat(), testsig::lk3()}) {
    Signature back = parse_signature(serialize_signature(s));
    CHECK(back == s);
  }
}

TEST_CASE("check_h_morphism accepts the identity and rejects junk") {
  auto s = testsig::lrg();
  auto id = identity_morphism(s);
  CHECK(check_h_morphism(id).ok());
  CHECK(check_h_morphism(id, /*strict=*/true).ok());
  // Swap d and c images: still a functor (the relation is symmetric) but a
  // different morphism; breaking an arrow image's cod must be rejected.
  HMorphism bad = id;
  bad.arrow_map[s.arrow_index("i")] = ArrowImage{false, s.arrow_index("c")};
  CHECK_FALSE(check_h_morphism(bad).ok());
}

TEST_CASE("find_isomorphism: identity case and L_K3 ≃ L_cat") {
  auto lrg = testsig::lrg();
  auto id = find_isomorphism(lrg, lrg);
  REQUIRE(id.has_value());
  for (size_t i = 0; i < lrg.objects.size(); ++i)
    CHECK(id->object_map[i] == (int)i);

  auto k3 = testsig::lk3();
  auto lcat = testsig::lcat();
  auto iso = find_isomorphism(k3, lcat);
  REQUIRE(iso.has_value());
  CHECK(check_h_morphism(*iso).ok());
  auto img_obj = [&](const std::string& n) {
    return lcat.objects[iso->object_map[k3.object_index(n)]].name;
  };
  auto img_arr = [&](const std::string& n) {
    const ArrowImage& im = iso->arrow_map[k3.arrow_index(n)];
    REQUIRE(!im.identity);
    return lcat.arrows[im.index].name;
  };
  CHECK(img_obj("K") == "O");
  CHECK(img_obj(iso_name("K")) == "A");
  CHECK(img_obj(refl_name("K")) == "I");
  CHECK(img_obj(iso_name(iso_name("K"))) == "E");
  CHECK(img_obj(transp_name(src_name("K"))) == "T");
  CHECK(img_arr(src_name("K")) == "d");
  CHECK(img_arr(tgt_name("K")) == "c");
  CHECK(img_arr(refl_arrow_name("K")) == "i");
  CHECK(img_arr(transp_path_name(src_name("K"))) == "t0");
  CHECK(img_arr(transp1_name(src_name("K"))) == "t2");
  CHECK(img_arr(transp2_name(src_name("K"))) == "t1");
  // Inverse composes to the identity on objects.
  HMorphism inv = invert(*iso);
  HMorphism round = compose(inv, *iso);
  CHECK(same_map(round, identity_morphism(k3)));

  // No isomorphism between signatures of different shape.
  CHECK_FALSE(find_isomorphism(lrg, lcat).has_value());
}
