#include <gtest/gtest.h>

#include <sstream>

#include "rzlab/io.hpp"

using namespace rzlab;

TEST(FieldSpec, ShorthandRoundTrip) {
  for (ExtKind kind : {ExtKind::RP, ExtKind::RU, ExtKind::UNRAM}) {
    const FieldSpec s = FieldSpec::shorthand(2, 2, kind, 1);
    const FieldSpec back = FieldSpec::from_json(Json::parse(s.to_json().dump()));
    EXPECT_EQ(back.to_json(), s.to_json());
    EXPECT_EQ(back.build()->kind(), kind);
  }
}

TEST(FieldSpec, ExplicitDescriptor) {
  const Json j = Json::parse(R"({"f":1,"e":2,"eisenstein":[[-2],[0],[1]],"precision":20,
                                 "ext":{"kind":"RU","t":[[0],[1]]}})");
  const auto E = FieldSpec::from_json(j).build();
  EXPECT_EQ(E->vt(), 1);
  EXPECT_EQ(E->field().precision(), 20);
}

TEST(FieldSpec, Rejections) {
  EXPECT_THROW(FieldSpec::from_json(Json::parse(R"({"e":1})")), FormatError);
  EXPECT_THROW(FieldSpec::from_json(Json::parse(R"({"f":1,"e":1,"ext":{"kind":"RU"}})")), FormatError);
  EXPECT_THROW(FieldSpec::from_json(Json::parse(R"({"f":1,"e":1,"eisenstein":[[-4],[1]]})")).build(),
               InvalidEisenstein);
  EXPECT_THROW(FieldSpec::shorthand(1, 1, ExtKind::RU, 2), InvalidExtension);
}

TEST(Describe, SmallestRamifiedField) {
  const Json d = describe_field(*FieldSpec::shorthand(1, 1, ExtKind::RP, 0).build());
  EXPECT_EQ(d["q"], 2);
  EXPECT_EQ(d["different_exponent"], 3);
  EXPECT_EQ(d["different_exponent_scan"], 3);
  EXPECT_EQ(d["hyperbolic_norm_exponent"], 1);
}

TEST(OFJson, SignedRepresentatives) {
  const auto F = Field::make(1, 1, Field::default_eisenstein(1, 1));
  EXPECT_EQ(of_to_json(F->from_int(-3)), Json::parse("[[-3]]"));
  EXPECT_EQ(of_from_json(*F, Json::parse("[[-3]]")), F->from_int(-3));
}

TEST(LatticeJson, RoundTripOverTheGrid) {
  for (int e : {1, 2})
    for (ExtKind kind : {ExtKind::RP, ExtKind::RU}) {
      const auto E = FieldSpec::shorthand(1, e, kind, 1).build();
      for (int i : {-1, 0, 1}) {
        if (!supported_modularity(*E, i)) continue;
        std::vector<Lattice> lats = superlattices_index1(witness_lattice(*E, i, std::nullopt));
        lats.push_back(witness_lattice(*E, i, 0).scaled(-3));
        for (const auto& lat : lats) {
          const Json j = Json::parse(lattice_to_json(lat).dump());
          EXPECT_EQ(lattice_from_json(*E, j), lat) << j.dump();
        }
      }
    }
}

TEST(LatticeJson, Malformed) {
  const auto E = FieldSpec::shorthand(1, 1, ExtKind::RP, 0).build();
  EXPECT_THROW(lattice_from_json(*E, Json::parse(R"({"basis":[[[[1],[0]]]]})")), FormatError);
  EXPECT_THROW(lattice_from_json(*E, Json::parse(R"({"basis":[[[[[1]],[[0]]],[[[0]],[[0]]]],[[[[2]],[[0]]],[[[0]],[[0]]]]]})")),
               DegenerateLattice);
}

TEST(Classify, HyperbolicWitness) {
  const auto E = FieldSpec::shorthand(1, 1, ExtKind::RP, 0).build();
  const Json c = classify_lattice(witness_lattice(*E, 0, std::nullopt));
  EXPECT_EQ(c["modularity"], 0);
  EXPECT_EQ(c["hyperbolic"], true);
  EXPECT_EQ(c["norm_exponent"], 1);
  EXPECT_EQ(c["normal_form"]["gram"].size(), 2u);
  const Json odd = classify_lattice(Lattice::from_key(*E, LatticeKey{2, 0, 0, {1}}));
  EXPECT_TRUE(odd["modularity"].is_null());
  EXPECT_TRUE(odd["normal_form"].is_null());
}

TEST(Reports, QuaternionAndTangent) {
  for (ExtKind kind : {ExtKind::RP, ExtKind::RU}) {
    const Json q = quat_check(FieldSpec::shorthand(1, 1, kind, 1).build());
    EXPECT_EQ(q["pass"], true) << q.dump(2);
    EXPECT_EQ(q["discriminant"]["reduced_valuation"], 1);
  }
  const Json t = tangent_json(*FieldSpec::shorthand(1, 1, ExtKind::RU, 1).build());
  EXPECT_EQ(t["tangent_dim"], 3);
  EXPECT_EQ(t["drinfeld_dim"], 2);
  EXPECT_EQ(t["verdict"], "naive ≠ Drinfeld");
  EXPECT_EQ(t["ideal_equal"], true);
}

TEST(Reports, PropsAndStats) {
  const auto E = FieldSpec::shorthand(1, 1, ExtKind::RU, 1).build();
  const Json p = props_json(verify_neighbor_props(*E));
  EXPECT_EQ(p["pass"], true);
  EXPECT_EQ(p["cases"].size(), 4u);
  const Json s = stats_json(build_ball(default_base_line(*E), 1));
  EXPECT_EQ(s["lines"].get<int>() + s["points"].get<int>() > 0, true);
  EXPECT_TRUE(s["tails"].empty());
}

TEST(Describe, UnramifiedHasTrivialDifferent) {
  const Json d = describe_field(*FieldSpec::shorthand(2, 1, ExtKind::UNRAM, 0).build());
  EXPECT_EQ(d["different_exponent"], 0);
  EXPECT_FALSE(d.contains("hyperbolic_norm_exponent"));
  EXPECT_EQ(d["ramified"], false);
}
