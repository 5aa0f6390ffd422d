#include <random>

#include "doctest.h"
#include "extrans/io.hpp"
#include "json.hpp"
#include "oracles.hpp"

using namespace extrans;
using nlohmann::json;

namespace {

ErrorCode code_of(const std::string& text) {
  try {
    parse_input(text);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected a parse failure");
  return ErrorCode::InvalidArgument;
}

std::string message_of(const std::string& text) {
  try {
    parse_input(text);
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

const char* kP1 = R"({"torus_rank": 1, "characters": [[1], [1]], "stability": [1], "request": "fan"})";

}  // namespace

TEST_CASE("parse the quintic preset") {
  auto doc = parse_input(serialize_input(preset("quintic-conifold")));
  CHECK(doc.characters.size() == 5);
  CHECK(doc.torus_rank == 1);
  CHECK(doc.divisor == IntVec(5, 1));
  REQUIRE(doc.blowup);
  CHECK(doc.blowup->center == std::vector<int>{0, 1});
  CHECK(doc.request == Request::Transition);
}

TEST_CASE("presets carry the worked data") {
  auto cubic = preset("cubic-transition");
  CHECK(cubic.blowup->center == std::vector<int>{0, 1, 2, 3});
  CHECK(cubic.divisor == IntVec(5, 1));

  auto w = preset("weighted-p11122-8");
  std::vector<IntVec> chars = {{1}, {1}, {1}, {2}, {2}, {1}};
  CHECK(w.characters == chars);
  CHECK(w.divisor == IntVec{0, 0, 0, 0, 0, 8});
  CHECK(w.blowup->center.size() == 2);

  auto ph = preset("proj-hypersurface", {{"m", 6}, {"k", 3}, {"d", 8}});
  CHECK(ph.characters.size() == 6);
  CHECK(ph.divisor == IntVec{1, 1, 1, 1, 1, 3});
  Integer total = 0;
  for (const auto& x : *ph.divisor) total += x;
  CHECK(total == 8);

  auto pp = preset("product-proj");
  CHECK(pp.torus_rank == 2);
  CHECK(pp.characters.size() == 6);
  CHECK(pp.blowup->center == std::vector<int>{0, 3});

  CHECK_THROWS_AS(preset("no-such-thing"), Error);
  CHECK_THROWS_AS(preset("proj-hypersurface", {{"d", 0}}), Error);
  CHECK_THROWS_AS(preset("proj-hypersurface", {{"q", 1}}), Error);
  CHECK_THROWS_AS(preset("quintic-conifold", {{"m", 5}}), Error);
  try {
    preset("no-such-thing");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownPreset);
  }
}

TEST_CASE("strict schema") {
  CHECK(code_of(R"({"torus_rank": 1, "characters": [[1]], "stability": ["1/0"]})") == ErrorCode::SchemaError);
  CHECK(message_of(R"({"torus_rank": 1, "characters": [[1]], "stability": ["1/0"]})").find("stability[0]") !=
        std::string::npos);

  auto bad_row = R"({"torus_rank": 2, "characters": [[1, 0], [0, 1], [1]], "stability": [1, 1]})";
  CHECK(code_of(bad_row) == ErrorCode::SchemaError);
  CHECK(message_of(bad_row).find("characters[2]") != std::string::npos);

  auto unknown = R"({"torus_rank": 1, "characters": [[1]], "stability": [1], "colour": "red"})";
  CHECK(code_of(unknown) == ErrorCode::SchemaError);
  CHECK(message_of(unknown).find("colour") != std::string::npos);

  auto nested = R"({"torus_rank": 1, "characters": [[1],[1]], "stability": [1], "blowup": {"center": [0], "centre": 1}})";
  CHECK(message_of(nested).find("blowup.centre") != std::string::npos);

  CHECK(code_of(R"({"torus_rank": 1, "characters": [[1.5]], "stability": [1]})") == ErrorCode::SchemaError);
  CHECK(code_of(R"({"torus_rank": 1, "characters": [[1]]})") == ErrorCode::SchemaError);
  CHECK(code_of(R"({"torus_rank": 1, "characters": [[1],[1]], "stability": [1], "blowup": {"center": [0, 0]}})") ==
        ErrorCode::SchemaError);
  CHECK(code_of(R"({"torus_rank": 1, "characters": [[1],[1]], "stability": [1], "blowup": {"center": [2]}})") ==
        ErrorCode::SchemaError);
  CHECK(code_of(R"({"torus_rank": 1, "characters": [[1],[1]], "stability": [1], "request": "plot"})") ==
        ErrorCode::SchemaError);
  CHECK(code_of(R"({"torus_rank": 1, "characters": [[1],[1]], "stability": [1], "options": {"narrow": 1}})") ==
        ErrorCode::SchemaError);

  auto ok = parse_input(R"({"torus_rank": 1, "characters": [[1],[1]], "stability": ["3/6"],
                             "blowup": {"center": [1], "epsilon": "1/4", "weights": [2]}})");
  CHECK(ok.stability == QVec{Rational(1, 2)});
  CHECK(ok.blowup->epsilon == Rational(1, 4));
  CHECK(ok.blowup->weights == IntVec{2});
}

TEST_CASE("syntax errors carry line and column") {
  // the o of oops sits in column 23
  std::string text = "{\n  \"torus_rank\": 1,\n  \"characters\": [[1]] oops\n}";
  CHECK(code_of(text) == ErrorCode::ParseError);
  auto msg = message_of(text);
  CHECK(msg.find("line 3") != std::string::npos);
  CHECK(msg.find("column 23") != std::string::npos);
}

TEST_CASE("round trip on presets and random documents") {
  for (const auto& name : preset_names()) {
    auto doc = preset(name);
    CHECK(parse_input(serialize_input(doc)) == doc);
    CHECK(serialize_input(parse_input(serialize_input(doc))) == serialize_input(doc));
  }
  std::mt19937 rng(20240611);
  for (int trial = 0; trial < 200; ++trial) {
    InputDocument doc;
    doc.torus_rank = static_cast<int>(oracle::uniform(rng, 1, 3));
    int m = static_cast<int>(oracle::uniform(rng, 1, 8));
    for (int i = 0; i < m; ++i) {
      IntVec c;
      for (int j = 0; j < doc.torus_rank; ++j) c.push_back(oracle::uniform(rng, -5, 5));
      doc.characters.push_back(c);
    }
    for (int j = 0; j < doc.torus_rank; ++j) doc.stability.push_back(Rational(oracle::uniform(rng, -9, 9), oracle::uniform(rng, 1, 7)));
    for (auto& q : doc.stability) q.canonicalize();
    if (oracle::uniform(rng, 0, 1)) {
      IntVec a;
      for (int i = 0; i < m; ++i) a.push_back(oracle::uniform(rng, -3, 3));
      doc.divisor = a;
    }
    if (oracle::uniform(rng, 0, 1)) {
      BlowupInput b;
      for (int i = 0; i < m; ++i)
        if (oracle::uniform(rng, 0, 1)) b.center.push_back(i);
      if (b.center.empty()) b.center.push_back(0);
      if (oracle::uniform(rng, 0, 1)) {
        IntVec w;
        for (std::size_t i = 0; i < b.center.size(); ++i) w.push_back(oracle::uniform(rng, 1, 4));
        b.weights = w;
      }
      if (oracle::uniform(rng, 0, 1)) b.epsilon = Rational(1, oracle::uniform(rng, 1, 9));
      doc.blowup = b;
    }
    doc.request = static_cast<Request>(oracle::uniform(rng, 0, 3));
    doc.narrow = oracle::uniform(rng, 0, 1);
    doc.sectors = oracle::uniform(rng, 0, 1);
    CHECK(parse_input(serialize_input(doc)) == doc);
  }
}

TEST_CASE("reports are byte-stable and carry the verdicts") {
  auto doc = preset("quintic-conifold");
  auto a = run(doc), b = run(doc);
  CHECK(a.json == b.json);
  CHECK(a.text == b.text);
  CHECK(a.exit_code == 0);
  auto rep = json::parse(a.json);
  for (const char* key : {"anticones", "fan", "cohomology", "blowup", "total_spaces", "wall_chart", "conditions",
                          "verdict", "convention_flags", "version", "input"})
    CHECK_MESSAGE(rep.contains(key), key);
  CHECK(rep["conditions"]["c1"] == true);
  CHECK(rep["conditions"]["c2"] == false);
  CHECK(rep["blowup"]["crepancy"]["ok"] == true);
  CHECK(rep["blowup"]["epsilon"] == "1/2");
  CHECK(rep["wall_chart"]["T-bar/T~"]["frak_c"] == "1");
  CHECK(rep["verdict"]["status"] == "ok");
  // re-serializing the parsed report reproduces it: keys are sorted
  CHECK(rep.dump(2) + "\n" == a.json);
}

TEST_CASE("request depth") {
  auto v = run(parse_input(kP1));
  auto rep = json::parse(v.json);
  CHECK(rep.contains("fan"));
  CHECK_FALSE(rep.contains("cohomology"));
  CHECK(rep["fan"]["max_cones"].size() == 2);

  auto doc = parse_input(kP1);
  doc.request = Request::Validate;
  CHECK_FALSE(json::parse(run(doc).json).contains("fan"));
}

TEST_CASE("narrow cohomology of the blown-up total space") {
  auto doc = preset("proj-hypersurface", {{"m", 5}, {"k", 2}, {"d", 5}});
  doc.request = Request::Cohomology;
  doc.narrow = true;
  auto res = run(doc);
  REQUIRE(res.exit_code == 0);
  auto rep = json::parse(res.json);
  const auto& sec = rep["cohomology"]["T-bar"]["sectors"][0];
  REQUIRE(sec.contains("narrow"));

  // the module generated by -d u + (k - 1) e and u^k, u = u_5, e = u_e
  auto spec = to_spec(doc);
  auto hat = blowup_presentation(spec);
  auto tbar = total_space_presentations(spec, hat).tbar;
  auto rings = chen_ruan(tbar, validated_anticones(tbar), {4, 5});
  const auto& R = rings[0].ring;
  auto u = R.variable(4), e = R.variable(5);
  auto gen1 = R.add(R.scale(-5, u), e);
  auto gen2 = R.multiply(u, u);
  auto expected = ideal_image(R, {gen1, gen2});
  auto narrow = narrow_by_interior_cones(R, rings[0].fan).space;
  CHECK(narrow == expected);
  CHECK(sec["narrow"]["total_dim"] == expected.total_dim());
}

TEST_CASE("exit codes") {
  // omega on the wall spanned by (1,0)
  auto wall = parse_input(R"({"torus_rank": 2, "characters": [[1,0],[1,0],[0,1],[0,1]], "stability": [1, 0],
                               "request": "validate"})");
  auto r = run(wall);
  CHECK(r.exit_code == 1);
  CHECK(json::parse(r.json)["verdict"]["status"] == "validation_failure");

  auto missing = parse_input(kP1);
  missing.request = Request::Transition;
  auto m = run(missing);
  CHECK(m.exit_code == 1);
  CHECK(json::parse(m.json)["verdict"]["errors"][0]["code"] == "SchemaError");

  auto not_cone = preset("proj-hypersurface", {{"m", 3}, {"k", 2}, {"d", 3}});
  not_cone.blowup->center = {0, 1, 2};
  auto nc = run(not_cone);
  CHECK(nc.exit_code == 1);
  CHECK(json::parse(nc.json)["verdict"]["errors"][0]["code"] == "CenterNotCone");

  CHECK(exit_code_for(ErrorCode::NonvanishingAboveCap) == 2);
  CHECK(exit_code_for(ErrorCode::ValidationFailed) == 1);
}
