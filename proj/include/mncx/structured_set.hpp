#pragma once

#include <cstdint>
#include <string_view>
#include <variant>
#include <vector>

#include "mncx/lp_core.hpp"

namespace mncx {

enum class MeasureKind { Alpha, Chi, Beta };

const char* to_string(MeasureKind kind);
MeasureKind measure_kind_from_string(std::string_view text);

// Nonempty list of pairwise-distinct points.
struct FinitePointSet {
  std::vector<SparseVector> points;

  void validate(double tol = 1e-9) const;
};

// {center + radius * e_n : n >= tail_start}; tail_start must exceed every
// support index of center so the tail directions are fresh coordinates.
struct TailFamily {
  SparseVector center;
  double radius = 1.0;
  int tail_start = 1;
};

// {center + radius * u : u a unit vector supported on coordinates >= tail_start}
struct SphereTail {
  SparseVector center;
  double radius = 1.0;
  int tail_start = 1;
};

// Same as SphereTail with the closed unit ball in place of the sphere.
struct BallTail {
  SparseVector center;
  double radius = 1.0;
  int tail_start = 1;
};

struct FiniteSet {
  FinitePointSet points;
};

class StructuredSet;

inline constexpr int kMaxUnionComponents = 16;

struct UnionSet {
  std::vector<StructuredSet> components;
};

// Symbolic description of a bounded subset of the sequence space: one of the
// canonical infinite families, a finite point list, or a union of at most
// kMaxUnionComponents structured sets.
class StructuredSet {
 public:
  using Node = std::variant<TailFamily, SphereTail, BallTail, FiniteSet, UnionSet>;

  StructuredSet(TailFamily v) : node_(std::move(v)) {}
  StructuredSet(SphereTail v) : node_(std::move(v)) {}
  StructuredSet(BallTail v) : node_(std::move(v)) {}
  StructuredSet(FiniteSet v) : node_(std::move(v)) {}
  StructuredSet(UnionSet v) : node_(std::move(v)) {}

  const Node& node() const { return node_; }

  template <class Visitor>
  decltype(auto) visit(Visitor&& visitor) const {
    return std::visit(std::forward<Visitor>(visitor), node_);
  }

  // Structural invariants (positive radii, fresh tail coordinates, union
  // size, distinct finite points); throws DomainError on violation.
  void validate() const;

 private:
  Node node_;
};

// How infinite families are sampled into finite point sets.
struct TruncationScheme {
  enum class Mode { Axes, Random };
  Mode mode = Mode::Axes;
  std::uint64_t seed = 42;
};

// Exact value of the chosen noncompactness measure on the symbolic set.
double measure_exact(const StructuredSet& s, MeasureKind kind, const SpaceSpec& space);

// True when every infinite subset of s has the same measure as s itself.
// Requires at least one infinite component; throws DomainError otherwise.
bool is_minimal(const StructuredSet& s, MeasureKind kind, const SpaceSpec& space);

// Image of s under multiplication by k > 0.
StructuredSet scale_set(const StructuredSet& s, double k);

// Number of distinct points the deterministic truncation can produce.
int truncation_capacity(const StructuredSet& s, const SpaceSpec& space);

// `count` distinct points of s, deterministically chosen.
FinitePointSet truncate(const StructuredSet& s, int count, const SpaceSpec& space,
                        const TruncationScheme& scheme = {});

// Whether s lies inside the closed unit ball (within space.eq_tol).
bool validate_in_unit_ball(const StructuredSet& s, const SpaceSpec& space);

// Measure of the closed unit ball itself.
double unit_ball_measure(MeasureKind kind, const SpaceSpec& space);

}  // namespace mncx
