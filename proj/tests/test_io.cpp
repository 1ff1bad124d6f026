#include <gtest/gtest.h>

#include <set>

#include "mhtc/mhtc.hpp"

using namespace mhtc;

namespace {

const Field F7 = Field::prime(7);
const Field Q = Field::rationals();

// k^{Z2} with a stored counit; crossing and antipode omitted.
const char* kZ2 = R"(mhtc-instance v1
field F7
meta family hand-written
[group]
0 1
1 0
[algebra]
dims 1 1
mu 0
1
mu 1
1
[comultiplication]
delta 0 0
1
delta 0 1
1
delta 1 0
1
delta 1 1
1
[counit]
eps 1
)";

std::string replace(std::string s, const std::string& from, const std::string& to) {
  auto at = s.find(from);
  EXPECT_NE(at, std::string::npos) << from;
  if (at != std::string::npos) s.replace(at, from.size(), to);
  return s;
}

std::string error_of(const std::string& text) {
  try {
    parse_instance(text);
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Io, RoundTripsEveryGenerator) {
  InstanceBundle bich = gen_bicharacter(3, F7, Scalar(F7, 2));
  bich.modules.push_back(gen_character_module(bich, "M", {Scalar(F7, 1), Scalar(F7, 2), Scalar(F7, 4)}));
  InstanceBundle s3 = gen_function_algebra(symmetric_group_3(), Q);
  s3.rmatrix = unit_rmatrix(s3.algebra);
  s3.modules.push_back(regular_module(s3.structure()));
  s3.modules.back().name = "A";
  for (const auto& b : {bich, s3, gen_sweedler_h4(Q, Scalar::parse(Q, "2/3")), gen_sweedler_h4(F7, Scalar(F7, 5)),
                        mutate(bich, "perturb-beta:1,2=5"), gen_function_algebra(cyclic_group(1), Field::prime(2))}) {
    const std::string text = serialize(b);
    InstanceBundle back = parse_instance(text);
    EXPECT_EQ(back, b) << text;
    EXPECT_EQ(serialize(back), text);
  }
}

TEST(Io, HandWrittenFileParses) {
  InstanceBundle b = parse_instance(kZ2);
  EXPECT_EQ(b.group().order(), 2u);
  EXPECT_EQ(b.get_meta("family"), "hand-written");
  EXPECT_FALSE(b.antipode);
  EXPECT_FALSE(b.rmatrix);
  EXPECT_EQ(b.crossing, trivial_crossing(b.algebra));
  EXPECT_TRUE(structural_report(b).passed());
}

TEST(Io, FractionsResolveInPrimeFields) {
  InstanceBundle b = parse_instance(replace(kZ2, "delta 1 1\n1", "delta 1 1\n1/2"));
  EXPECT_EQ(b.delta.at(1, 1)(0, 0), Scalar(F7, 4));
  EXPECT_NE(error_of(replace(kZ2, "delta 1 1\n1", "delta 1 1\n1/7")), "");
}

TEST(Io, CommentsAndBlankLinesAreIgnored) {
  InstanceBundle a = parse_instance(kZ2);
  InstanceBundle b = parse_instance(replace(replace(kZ2, "[algebra]\n", "# grade data\n\n[algebra]   # here\n"), "mu 0\n", "mu 0\n\n"));
  EXPECT_EQ(a, b);
}

TEST(Io, ErrorsCarryLineNumbers) {
  // A 2x2 block where delta 1 1 must be 1x1.
  std::string e = error_of(replace(kZ2, "delta 1 1\n1\n", "delta 1 1\n1 0\n0 1\n"));
  EXPECT_EQ(e.rfind("line 21:", 0), 0u) << e;
  EXPECT_EQ(error_of(replace(kZ2, "[counit]", "[cocommutator]")).rfind("line 22:", 0), 0u);
  EXPECT_NE(error_of(replace(kZ2, "[counit]", "[counit]\neps 1\n[counit]")).find("duplicate"), std::string::npos);
  e = error_of(replace(kZ2, "1 0\n[algebra]", "0 0\n[algebra]"));
  EXPECT_EQ(e.rfind("line 6:", 0), 0u) << e;
  EXPECT_NE(e.find("[group]"), std::string::npos);
  EXPECT_NE(error_of(replace(kZ2, "mhtc-instance v1", "mhtc-instance v2")), "");
  EXPECT_NE(error_of(replace(kZ2, "field F7", "field F8")), "");
  EXPECT_NE(error_of(replace(kZ2, "delta 0 1", "delta 0 2")).find("out of range"), std::string::npos);
  EXPECT_NE(error_of(replace(kZ2, "eps 1", "eps 1 1")), "");
  EXPECT_NE(error_of(replace(kZ2, "mu 1\n1\n", "")).find("missing 'mu 1'"), std::string::npos);
}

TEST(Io, MissingDeltaComponentIsRejected) {
  EXPECT_NE(error_of(replace(kZ2, "delta 1 1\n1\n", "")), "");
}

TEST(Report, EveryTagHasOneCheck) {
  std::set<std::string> tags, checks;
  for (const auto& t : kCheckForTag) {
    EXPECT_TRUE(tags.insert(t.tag).second) << t.tag;
    EXPECT_TRUE(checks.insert(t.check).second) << t.check;
  }
  EXPECT_EQ(tags.size(), 24u);
}

TEST(Report, TextAndJsonAgree) {
  InstanceBundle b = mutate(gen_bicharacter(3, F7, Scalar(F7, 2)), "perturb-beta:1,2=5");
  CheckReport rep = qt_report(b);
  rep.seed = 11;
  std::string text = to_text(rep);
  EXPECT_NE(text.find("FAIL QT-hexagon-1"), std::string::npos) << text;
  EXPECT_NE(text.find("PASS 2.1-coassoc"), std::string::npos);
  EXPECT_NE(text.find("seed 11"), std::string::npos);
  EXPECT_EQ(text.substr(text.size() - 12), "RESULT FAIL\n");
  auto j = to_json(rep, false);
  EXPECT_EQ(j["verdict"], "fail");
  EXPECT_EQ(j["seed"], 11);
  EXPECT_FALSE(j.contains("seconds"));
  EXPECT_TRUE(to_json(rep, true).contains("seconds"));
  CheckReport again = qt_report(b);
  again.seed = 11;
  again.seconds = rep.seconds + 1.0;
  EXPECT_EQ(j.dump(), to_json(again, false).dump());
}
