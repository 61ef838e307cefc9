#include <string>

#include "doctest.h"
#include "mncx/set_io.hpp"

using namespace mncx;

TEST_SUITE("set_io") {

TEST_CASE("format_double round-trips") {
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(1.0) == "1");
  double third = 1.0 / 3.0;
  CHECK(std::stod(format_double(third)) == third);
  CHECK(std::stod(format_double(1.4142135623730951)) == 1.4142135623730951);
}

TEST_CASE("canonical text forms") {
  CHECK(to_text(StructuredSet{TailFamily{SparseVector::basis(1, 0.5), 0.5, 3}}) ==
        "tail(center=[0.5], r=0.5, start=3)");
  CHECK(to_text(StructuredSet{SphereTail{SparseVector{}, 1.0, 1}}) ==
        "sphere(center=[], r=1, start=1)");
  CHECK(to_text(StructuredSet{BallTail{SparseVector{}, 0.25, 2}}) ==
        "ball(center=[], r=0.25, start=2)");

  FiniteSet fin;
  fin.points.points = {SparseVector::basis(1), SparseVector::basis(2)};
  CHECK(to_text(StructuredSet{fin}) == "finite([[1], [0, 1]])");

  UnionSet u;
  u.components.push_back(StructuredSet{TailFamily{SparseVector{}, 1.0, 1}});
  FiniteSet single;
  single.points.points = {SparseVector::basis(1, 0.5)};
  u.components.push_back(StructuredSet{single});
  CHECK(to_text(StructuredSet{u}) ==
        "union(tail(center=[], r=1, start=1), finite([[0.5]]))");
}

TEST_CASE("parse inverts to_text") {
  const SpaceSpec sp{2.0, 4096, 1e-9};
  const char* samples[] = {
      "tail(center=[0.5], r=0.5, start=3)",
      "sphere(center=[], r=1, start=1)",
      "ball(center=[0.1, -0.2], r=0.25, start=4)",
      "finite([[1], [0, 1], [0.25, 0.25]])",
      "union(tail(center=[], r=1, start=1), ball(center=[], r=0.5, start=2))",
      "union(union(tail(center=[], r=0.5, start=1), sphere(center=[], r=0.25, start=1)), "
      "finite([[0.5]]))",
  };
  for (const char* text : samples) {
    CAPTURE(text);
    StructuredSet s = parse_set(text);
    CHECK(to_text(s) == text);  // canonical form is a fixpoint
    StructuredSet again = parse_set(to_text(s));
    for (MeasureKind k : {MeasureKind::Alpha, MeasureKind::Chi, MeasureKind::Beta}) {
      CHECK(measure_exact(again, k, sp) == measure_exact(s, k, sp));
    }
  }
}

TEST_CASE("whitespace insensitivity") {
  StructuredSet s = parse_set("  tail ( center = [ 0.5 ] , r = 0.5 , start = 3 )  ");
  CHECK(to_text(s) == "tail(center=[0.5], r=0.5, start=3)");
}

TEST_CASE("syntax errors carry a byte position") {
  CHECK_THROWS_AS(parse_set("tail(centre=[0.5], r=0.5, start=3)"), ParseError);
  CHECK_THROWS_AS(parse_set("blob(center=[], r=1, start=1)"), ParseError);
  CHECK_THROWS_AS(parse_set("tail(center=[0.5], r=0.5, start=3) trailing"), ParseError);
  CHECK_THROWS_AS(parse_set("tail(center=[0.x5], r=0.5, start=3)"), ParseError);
  CHECK_THROWS_AS(parse_set(""), ParseError);

  try {
    parse_set("tail(center=[], r=1, start=1");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.position() <= 28);
    CHECK(std::string(e.what()).find("position") != std::string::npos);
  }
}

TEST_CASE("semantic violations surface as domain errors") {
  CHECK_THROWS_AS(parse_set("tail(center=[], r=-1, start=1)"), DomainError);
  CHECK_THROWS_AS(parse_set("tail(center=[0.5], r=1, start=1)"), DomainError);
  // An empty point list never reaches validation; the grammar wants a point.
  CHECK_THROWS_AS(parse_set("finite([])"), ParseError);
}

}  // TEST_SUITE
