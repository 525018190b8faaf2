#include "augkit/core/value.hpp"
#include "doctest.h"

using namespace augkit;

namespace {

ParamSchema demo_schema() {
  return ParamSchema{
      {"factor", ParamType::Float, false, 1.0, 0.0, 10.0, {}, true},
      {"count", ParamType::Int, false, std::int64_t{3}, 1.0, 100.0},
      {"mode", ParamType::String, false, std::string{"fast"}, {}, {},
       {"fast", "exact"}},
      {"enabled", ParamType::Bool, false, true},
      {"color", ParamType::FloatList, false, std::vector<double>{0, 0, 0}},
      {"name", ParamType::String, true},
  };
}

}  // namespace

TEST_SUITE("params") {

TEST_CASE("defaults are filled and provided values kept") {
  const auto out = demo_schema().validate({{"name", std::string{"x"}}}, "demo");
  CHECK(get_float(out, "factor") == 1.0);
  CHECK(get_int(out, "count") == 3);
  CHECK(get_string(out, "mode") == "fast");
  CHECK(get_bool(out, "enabled"));
  CHECK(get_list(out, "color") == std::vector<double>{0, 0, 0});
  CHECK(get_string(out, "name") == "x");

  const auto out2 = demo_schema().validate(
      {{"name", std::string{"x"}}, {"factor", 2.5}}, "demo");
  CHECK(get_float(out2, "factor") == 2.5);
}

TEST_CASE("unknown and missing-required parameters are rejected") {
  CHECK_THROWS_AS(demo_schema().validate({{"name", std::string{"x"}},
                                          {"bogus", 1.0}},
                                         "demo"),
                  ValidationError);
  CHECK_THROWS_AS(demo_schema().validate({}, "demo"), ValidationError);
}

TEST_CASE("type checks with int <-> float coercion") {
  const auto s = demo_schema();
  // int literal for a float param
  auto out = s.validate({{"name", std::string{"x"}}, {"factor", std::int64_t{2}}},
                        "demo");
  CHECK(get_float(out, "factor") == 2.0);
  // integral double for an int param
  out = s.validate({{"name", std::string{"x"}}, {"count", 4.0}}, "demo");
  CHECK(get_int(out, "count") == 4);
  // fractional double for an int param
  CHECK_THROWS_AS(s.validate({{"name", std::string{"x"}}, {"count", 4.5}}, "demo"),
                  ValidationError);
  CHECK_THROWS_AS(
      s.validate({{"name", std::string{"x"}}, {"enabled", 1.0}}, "demo"),
      ValidationError);
}

TEST_CASE("range and one_of checks") {
  const auto s = demo_schema();
  CHECK_THROWS_AS(s.validate({{"name", std::string{"x"}}, {"factor", -0.5}}, "demo"),
                  ValidationError);
  CHECK_THROWS_AS(s.validate({{"name", std::string{"x"}}, {"factor", 11.0}}, "demo"),
                  ValidationError);
  CHECK_THROWS_AS(s.validate({{"name", std::string{"x"}},
                              {"mode", std::string{"slow"}}},
                             "demo"),
                  ValidationError);
}

TEST_CASE("random marker is gated by randomizable") {
  const auto s = demo_schema();
  const auto out = s.validate(
      {{"name", std::string{"x"}}, {"factor", std::string{"random"}}}, "demo");
  CHECK(is_random_marker(out.at("factor")));
  // Reading an unresolved marker as a number must fail loudly.
  CHECK_THROWS_AS(get_float(out, "factor"), ValidationError);
  // count is not randomizable
  CHECK_THROWS_AS(s.validate({{"name", std::string{"x"}},
                              {"count", std::string{"random"}}},
                             "demo"),
                  ValidationError);
}

TEST_CASE("color accessor validates shape and range") {
  Params p{{"c", std::vector<double>{1, 2, 3}},
           {"c4", std::vector<double>{1, 2, 3, 4}},
           {"bad_len", std::vector<double>{1, 2}},
           {"bad_range", std::vector<double>{0, 0, 300}}};
  CHECK(get_color(p, "c").size() == 3);
  CHECK(get_color(p, "c4").size() == 4);
  CHECK_THROWS_AS(get_color(p, "bad_len"), ValidationError);
  CHECK_THROWS_AS(get_color(p, "bad_range"), ValidationError);
}

}  // TEST_SUITE
