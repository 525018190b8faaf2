#include "augkit/core/spec.hpp"

#include <json.hpp>

#include "augkit/core/metadata.hpp"

#include "doctest.h"

using namespace augkit;

TEST_SUITE("pipeline json") {

TEST_CASE("parses ops, params and probabilities") {
  const auto p = parse_pipeline_json(R"([
    {"op": "rotate", "params": {"degrees": 15.0}, "p": 0.5},
    {"op": "hflip"},
    {"op": "overlay_text", "params": {"text": "hi", "opacity": 1,
                                      "color": [255, 0, 0]}}
  ])");
  REQUIRE(p.children.size() == 3);

  const auto& rotate = std::get<TransformSpec>(p.children[0]);
  CHECK(rotate.name == "rotate");
  CHECK(get_float(rotate.params, "degrees") == 15.0);
  CHECK(rotate.p == 0.5);

  const auto& hflip = std::get<TransformSpec>(p.children[1]);
  CHECK(hflip.name == "hflip");
  CHECK(hflip.params.empty());
  CHECK(hflip.p == 1.0);

  const auto& text = std::get<TransformSpec>(p.children[2]);
  CHECK(get_string(text.params, "text") == "hi");
  CHECK(get_int(text.params, "opacity") == 1);
  CHECK(get_list(text.params, "color") == std::vector<double>{255, 0, 0});
}

TEST_CASE("accepts a single object as a one element pipeline") {
  const auto p = parse_pipeline_json(R"({"op": "vflip"})");
  REQUIRE(p.children.size() == 1);
  CHECK(std::get<TransformSpec>(p.children[0]).name == "vflip");
}

TEST_CASE("nested compose entries become nested pipelines") {
  const auto p = parse_pipeline_json(R"([
    {"op": "compose", "children": [
      {"op": "a", "p": 0.25},
      {"op": "compose", "children": [{"op": "b"}]}
    ]},
    {"op": "c"}
  ])");
  REQUIRE(p.children.size() == 2);
  const auto& inner = std::get<Pipeline>(p.children[0]);
  REQUIRE(inner.children.size() == 2);
  CHECK(std::get<TransformSpec>(inner.children[0]).p == 0.25);
  const auto& inner2 = std::get<Pipeline>(inner.children[1]);
  REQUIRE(inner2.children.size() == 1);
  CHECK(std::get<TransformSpec>(inner2.children[0]).name == "b");
}

TEST_CASE("bad configs are rejected with ValidationError") {
  CHECK_THROWS_AS(parse_pipeline_json("not json"), ValidationError);
  CHECK_THROWS_AS(parse_pipeline_json("[1, 2]"), ValidationError);
  CHECK_THROWS_AS(parse_pipeline_json(R"([{"params": {}}])"), ValidationError);
  CHECK_THROWS_AS(parse_pipeline_json(R"([{"op": "x", "p": 1.5}])"),
                  ValidationError);
  CHECK_THROWS_AS(parse_pipeline_json(R"([{"op": "x", "p": -0.1}])"),
                  ValidationError);
  CHECK_THROWS_AS(parse_pipeline_json(R"([{"op": "x", "unknown": 1}])"),
                  ValidationError);
  CHECK_THROWS_AS(parse_pipeline_json(R"([{"op": "compose"}])"),
                  ValidationError);
  CHECK_THROWS_AS(parse_pipeline_json(R"([{"op": "x", "params": {"v": {}}}])"),
                  ValidationError);
}

TEST_CASE("round trips through pipeline_to_json") {
  const std::string src = R"([
    {"op": "rotate", "params": {"degrees": "random"}, "p": 0.5},
    {"op": "compose", "children": [{"op": "blur", "params": {"radius": 2.5}}]}
  ])";
  const auto p1 = parse_pipeline_json(src);
  const std::string dumped = pipeline_to_json(p1);
  const auto p2 = parse_pipeline_json(dumped);
  REQUIRE(p2.children.size() == 2);
  const auto& rot = std::get<TransformSpec>(p2.children[0]);
  CHECK(rot.p == 0.5);
  CHECK(is_random_marker(rot.params.at("degrees")));
  const auto& inner = std::get<Pipeline>(p2.children[1]);
  CHECK(get_float(std::get<TransformSpec>(inner.children[0]).params, "radius") ==
        2.5);
  // Dumping again yields the same text (stable serialization).
  CHECK(pipeline_to_json(p2) == dumped);
}

TEST_CASE("metadata serializes shapes and nested children") {
  TransformMetadata inner;
  inner.name = "blur";
  inner.applied = true;
  inner.intensity = 25.0;
  inner.src_shape = {"image", {{"width", 4}, {"height", 2}, {"channels", 3}}};
  inner.dst_shape = inner.src_shape;

  TransformMetadata outer;
  outer.name = "compose";
  outer.applied = true;
  outer.intensity = 25.0;
  outer.src_shape = inner.src_shape;
  outer.dst_shape = inner.src_shape;
  outer.children.push_back(inner);

  const auto j = nlohmann::json::parse(metadata_to_json({outer}));
  REQUIRE(j.is_array());
  CHECK(j[0]["name"] == "compose");
  CHECK(j[0]["children"][0]["name"] == "blur");
  CHECK(j[0]["children"][0]["src_shape"]["width"] == 4);
  CHECK(j[0]["children"][0]["src_shape"]["kind"] == "image");
  CHECK(j[0]["children"][0]["intensity"] == 25.0);
}

}  // TEST_SUITE
