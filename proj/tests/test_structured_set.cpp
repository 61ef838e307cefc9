#include <cmath>
#include <set>
#include <vector>

#include "doctest.h"
#include "mncx/structured_set.hpp"

using namespace mncx;

namespace {

const SpaceSpec kP2{2.0, 4096, 1e-9};
const SpaceSpec kP3{3.0, 4096, 1e-9};

constexpr double kSqrt2 = 1.4142135623730951;
constexpr double kCbrt2 = 1.2599210498948732;

StructuredSet tail(double r, int start = 5) {
  return TailFamily{SparseVector::basis(1, 0.25), r, start};
}

}  // namespace

TEST_SUITE("structured_set") {

TEST_CASE("exact measures of canonical families") {
  // A tail family of radius r consists of points pairwise (r * 2^(1/p))-apart,
  // each at distance r from the common center.
  StructuredSet t = tail(0.5);
  CHECK(measure_exact(t, MeasureKind::Alpha, kP2) ==
        doctest::Approx(0.5 * kSqrt2).epsilon(1e-15));
  CHECK(measure_exact(t, MeasureKind::Beta, kP2) ==
        doctest::Approx(0.5 * kSqrt2).epsilon(1e-15));
  CHECK(measure_exact(t, MeasureKind::Chi, kP2) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(measure_exact(t, MeasureKind::Alpha, kP3) ==
        doctest::Approx(0.5 * kCbrt2).epsilon(1e-15));

  StructuredSet sphere = SphereTail{SparseVector{}, 0.5, 2};
  CHECK(measure_exact(sphere, MeasureKind::Alpha, kP2) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(measure_exact(sphere, MeasureKind::Chi, kP2) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(measure_exact(sphere, MeasureKind::Beta, kP2) ==
        doctest::Approx(0.5 * kSqrt2).epsilon(1e-15));

  StructuredSet ball = BallTail{SparseVector{}, 0.5, 2};
  for (MeasureKind k : {MeasureKind::Alpha, MeasureKind::Chi, MeasureKind::Beta}) {
    CHECK(measure_exact(ball, k, kP2) == doctest::Approx(measure_exact(sphere, k, kP2)));
  }

  FiniteSet fin;
  fin.points.points = {SparseVector::basis(1), SparseVector::basis(2)};
  StructuredSet sfin{fin};
  for (MeasureKind k : {MeasureKind::Alpha, MeasureKind::Chi, MeasureKind::Beta}) {
    CHECK(measure_exact(sfin, k, kP2) == 0.0);
  }
}

TEST_CASE("union takes the maximum") {
  UnionSet u;
  u.components.push_back(tail(0.3, 5));
  u.components.push_back(tail(0.7, 50));
  FiniteSet fin;
  fin.points.points = {SparseVector::basis(1)};
  u.components.push_back(StructuredSet{fin});
  StructuredSet su{u};
  CHECK(measure_exact(su, MeasureKind::Chi, kP2) == doctest::Approx(0.7).epsilon(1e-15));
  CHECK(measure_exact(su, MeasureKind::Alpha, kP2) ==
        doctest::Approx(0.7 * kSqrt2).epsilon(1e-15));
}

TEST_CASE("unit ball measures") {
  CHECK(unit_ball_measure(MeasureKind::Alpha, kP2) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(unit_ball_measure(MeasureKind::Chi, kP2) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(unit_ball_measure(MeasureKind::Beta, kP2) == doctest::Approx(kSqrt2).epsilon(1e-15));
  CHECK(unit_ball_measure(MeasureKind::Beta, kP3) == doctest::Approx(kCbrt2).epsilon(1e-15));
}

TEST_CASE("minimality classification") {
  for (MeasureKind k : {MeasureKind::Alpha, MeasureKind::Chi, MeasureKind::Beta}) {
    CHECK(is_minimal(tail(0.4), k, kP2));
    CHECK_FALSE(is_minimal(StructuredSet{SphereTail{SparseVector{}, 0.4, 2}}, k, kP2));
    CHECK_FALSE(is_minimal(StructuredSet{BallTail{SparseVector{}, 0.4, 2}}, k, kP2));
  }

  UnionSet eq;
  eq.components.push_back(tail(0.4, 5));
  eq.components.push_back(tail(0.4, 60));
  CHECK(is_minimal(StructuredSet{eq}, MeasureKind::Alpha, kP2));

  UnionSet uneq;
  uneq.components.push_back(tail(0.4, 5));
  uneq.components.push_back(tail(0.8, 60));
  CHECK_FALSE(is_minimal(StructuredSet{uneq}, MeasureKind::Alpha, kP2));

  FiniteSet fin;
  fin.points.points = {SparseVector::basis(1)};
  CHECK_THROWS_AS(is_minimal(StructuredSet{fin}, MeasureKind::Alpha, kP2), DomainError);
}

TEST_CASE("scaling is exactly homogeneous") {
  StructuredSet t = tail(0.3);
  StructuredSet t2 = scale_set(t, 2.5);
  for (MeasureKind k : {MeasureKind::Alpha, MeasureKind::Chi, MeasureKind::Beta}) {
    CHECK(measure_exact(t2, k, kP3) ==
          doctest::Approx(2.5 * measure_exact(t, k, kP3)).epsilon(1e-15));
  }
  CHECK_THROWS_AS(scale_set(t, 0.0), DomainError);
  CHECK_THROWS_AS(scale_set(t, -1.0), DomainError);
}

TEST_CASE("validation rejects malformed sets") {
  StructuredSet neg_radius{TailFamily{SparseVector{}, -0.5, 1}};
  CHECK_THROWS_AS(neg_radius.validate(), DomainError);
  StructuredSet zero_radius{TailFamily{SparseVector{}, 0.0, 1}};
  CHECK_THROWS_AS(zero_radius.validate(), DomainError);
  // Tail directions must use coordinates beyond the center's support.
  StructuredSet overlapping{TailFamily{SparseVector::basis(3), 1.0, 2}};
  CHECK_THROWS_AS(overlapping.validate(), DomainError);
  StructuredSet fresh{TailFamily{SparseVector::basis(3), 1.0, 4}};
  CHECK_NOTHROW(fresh.validate());

  StructuredSet empty_union{UnionSet{}};
  CHECK_THROWS_AS(empty_union.validate(), DomainError);
  UnionSet big;
  for (int i = 0; i < kMaxUnionComponents + 1; ++i) big.components.push_back(tail(0.5, 5));
  StructuredSet too_big{big};
  CHECK_THROWS_AS(too_big.validate(), DomainError);

  FiniteSet dup;
  dup.points.points = {SparseVector::basis(1), SparseVector::basis(1)};
  StructuredSet duplicated{dup};
  CHECK_THROWS_AS(duplicated.validate(), DomainError);
  FiniteSet empty;
  StructuredSet no_points{empty};
  CHECK_THROWS_AS(no_points.validate(), DomainError);
}

TEST_CASE("truncation capacity") {
  SpaceSpec small{2.0, 16, 1e-9};
  CHECK(truncation_capacity(StructuredSet{TailFamily{SparseVector{}, 1.0, 5}}, small) == 12);
  // Sphere tails contribute antipodal pairs per fresh coordinate.
  CHECK(truncation_capacity(StructuredSet{SphereTail{SparseVector{}, 1.0, 5}}, small) == 24);
  FiniteSet fin;
  fin.points.points = {SparseVector::basis(1), SparseVector::basis(2)};
  CHECK(truncation_capacity(StructuredSet{fin}, small) == 2);
  UnionSet u;
  u.components.push_back(StructuredSet{TailFamily{SparseVector{}, 1.0, 5}});
  u.components.push_back(StructuredSet{fin});
  CHECK(truncation_capacity(StructuredSet{u}, small) == 14);
}

TEST_CASE("axes truncation of a tail family") {
  StructuredSet t{TailFamily{SparseVector::basis(1, 0.6), 0.8, 2}};
  FinitePointSet pts = truncate(t, 4, kP2);
  REQUIRE(pts.points.size() == 4);
  std::set<int> seen;
  for (const SparseVector& x : pts.points) {
    CHECK(x.coeff(1) == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(x.support_size() == 2);
    int j = x.max_index();
    CHECK(j >= 2);
    CHECK(x.coeff(j) == doctest::Approx(0.8).epsilon(1e-15));
    seen.insert(j);
  }
  CHECK(seen.size() == 4);  // pairwise-distinct tail directions
}

TEST_CASE("axes truncation of a sphere tail has antipodal pairs") {
  StructuredSet s{SphereTail{SparseVector{}, 0.5, 3}};
  FinitePointSet pts = truncate(s, 4, kP2);
  REQUIRE(pts.points.size() == 4);
  for (const SparseVector& x : pts.points) {
    CHECK(norm(x, 2.0) == doctest::Approx(0.5).epsilon(1e-12));
  }
  // The first two points use the same coordinate with opposite signs.
  CHECK((pts.points[0] + pts.points[1]).is_zero());
}

TEST_CASE("ball truncation starts at the center") {
  StructuredSet b{BallTail{SparseVector::basis(1, 0.3), 0.5, 2}};
  FinitePointSet pts = truncate(b, 3, kP2);
  REQUIRE(pts.points.size() == 3);
  CHECK(pts.points[0] == SparseVector::basis(1, 0.3));
}

TEST_CASE("truncation failures") {
  SpaceSpec small{2.0, 8, 1e-9};
  StructuredSet t{TailFamily{SparseVector{}, 1.0, 5}};  // capacity 4
  CHECK_THROWS_AS(truncate(t, 5, small), DomainError);
  CHECK_THROWS_AS(truncate(t, 0, small), DomainError);
}

TEST_CASE("random truncation is seeded and on-sphere") {
  TruncationScheme sch;
  sch.mode = TruncationScheme::Mode::Random;
  sch.seed = 7;
  StructuredSet s{SphereTail{SparseVector::basis(1, 0.2), 0.6, 2}};
  FinitePointSet a = truncate(s, 6, kP2, sch);
  FinitePointSet b = truncate(s, 6, kP2, sch);
  REQUIRE(a.points.size() == 6);
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    CHECK(a.points[i] == b.points[i]);  // same seed, identical points
    CHECK(distance(a.points[i], SparseVector::basis(1, 0.2), 2.0) ==
          doctest::Approx(0.6).epsilon(1e-12));
  }
  sch.seed = 8;
  FinitePointSet c = truncate(s, 6, kP2, sch);
  bool any_diff = false;
  for (std::size_t i = 0; i < c.points.size(); ++i) {
    if (!(c.points[i] == a.points[i])) any_diff = true;
  }
  CHECK(any_diff);
}

TEST_CASE("unit ball membership") {
  CHECK(validate_in_unit_ball(StructuredSet{TailFamily{SparseVector::basis(1, 0.6), 0.8, 2}},
                              kP2));
  CHECK_FALSE(validate_in_unit_ball(
      StructuredSet{TailFamily{SparseVector::basis(1, 0.6), 0.81, 2}}, kP2));
  FiniteSet fin;
  fin.points.points = {SparseVector::basis(1, 0.99), SparseVector::basis(2, 1.01)};
  CHECK_FALSE(validate_in_unit_ball(StructuredSet{fin}, kP2));
}

TEST_CASE("measure kind names round-trip") {
  for (MeasureKind k : {MeasureKind::Alpha, MeasureKind::Chi, MeasureKind::Beta}) {
    CHECK(measure_kind_from_string(to_string(k)) == k);
  }
  CHECK_THROWS_AS(measure_kind_from_string("gamma"), DomainError);
}

}  // TEST_SUITE
