#include "mncx/structured_set.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mncx/rng.hpp"

namespace mncx {

const char* to_string(MeasureKind kind) {
  switch (kind) {
    case MeasureKind::Alpha:
      return "alpha";
    case MeasureKind::Chi:
      return "chi";
    case MeasureKind::Beta:
      return "beta";
  }
  return "?";
}

MeasureKind measure_kind_from_string(std::string_view text) {
  if (text == "alpha") return MeasureKind::Alpha;
  if (text == "chi") return MeasureKind::Chi;
  if (text == "beta") return MeasureKind::Beta;
  throw DomainError("unknown measure kind: " + std::string(text));
}

void FinitePointSet::validate(double tol) const {
  if (points.empty()) throw DomainError("finite point set must be nonempty");
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      if (approx_equal(points[i], points[j], tol)) {
        throw DomainError("finite point set has coincident points");
      }
    }
  }
}

namespace {

template <class Family>
void validate_family(const Family& f) {
  if (!(f.radius > 0.0) || !std::isfinite(f.radius)) {
    throw DomainError("family radius must be positive and finite");
  }
  if (f.tail_start < 1) throw DomainError("tail_start must be at least 1");
  if (f.tail_start <= f.center.max_index()) {
    throw DomainError("tail_start must exceed every center support index");
  }
}

bool contains_infinite(const StructuredSet& s) {
  return s.visit([](const auto& node) -> bool {
    using T = std::decay_t<decltype(node)>;
    if constexpr (std::is_same_v<T, FiniteSet>) {
      return false;
    } else if constexpr (std::is_same_v<T, UnionSet>) {
      return std::any_of(node.components.begin(), node.components.end(),
                         [](const StructuredSet& c) { return contains_infinite(c); });
    } else {
      return true;
    }
  });
}

}  // namespace

void StructuredSet::validate() const {
  visit([](const auto& node) {
    using T = std::decay_t<decltype(node)>;
    if constexpr (std::is_same_v<T, FiniteSet>) {
      node.points.validate();
    } else if constexpr (std::is_same_v<T, UnionSet>) {
      if (node.components.empty()) throw DomainError("union must have components");
      if (static_cast<int>(node.components.size()) > kMaxUnionComponents) {
        throw DomainError("union exceeds the component limit of " +
                          std::to_string(kMaxUnionComponents));
      }
      for (const auto& c : node.components) c.validate();
    } else {
      validate_family(node);
    }
  });
}

double unit_ball_measure(MeasureKind kind, const SpaceSpec& space) {
  space.validate();
  switch (kind) {
    case MeasureKind::Alpha:
      return 2.0;
    case MeasureKind::Chi:
      return 1.0;
    case MeasureKind::Beta:
      return std::pow(2.0, 1.0 / space.p);
  }
  return 0.0;
}

double measure_exact(const StructuredSet& s, MeasureKind kind, const SpaceSpec& space) {
  space.validate();
  const double root2 = std::pow(2.0, 1.0 / space.p);
  return s.visit([&](const auto& node) -> double {
    using T = std::decay_t<decltype(node)>;
    if constexpr (std::is_same_v<T, FiniteSet>) {
      return 0.0;
    } else if constexpr (std::is_same_v<T, TailFamily>) {
      switch (kind) {
        case MeasureKind::Alpha:
        case MeasureKind::Beta:
          return node.radius * root2;
        case MeasureKind::Chi:
          return node.radius;
      }
      return 0.0;
    } else if constexpr (std::is_same_v<T, SphereTail> || std::is_same_v<T, BallTail>) {
      switch (kind) {
        case MeasureKind::Alpha:
          return 2.0 * node.radius;
        case MeasureKind::Chi:
          return node.radius;
        case MeasureKind::Beta:
          return node.radius * root2;
      }
      return 0.0;
    } else {  // UnionSet: measures are max-additive across components
      double best = 0.0;
      for (const auto& c : node.components) {
        best = std::max(best, measure_exact(c, kind, space));
      }
      return best;
    }
  });
}

namespace {

// Collect the measure of every infinite component (recursing through unions)
// and whether each is minimal.
void collect_infinite(const StructuredSet& s, MeasureKind kind, const SpaceSpec& space,
                      std::vector<double>& measures, bool& all_minimal) {
  s.visit([&](const auto& node) {
    using T = std::decay_t<decltype(node)>;
    if constexpr (std::is_same_v<T, FiniteSet>) {
      // finite components never affect minimality
    } else if constexpr (std::is_same_v<T, TailFamily>) {
      measures.push_back(measure_exact(s, kind, space));
    } else if constexpr (std::is_same_v<T, SphereTail> || std::is_same_v<T, BallTail>) {
      // spheres and balls contain norm-convergent sequences, so some infinite
      // subset has measure zero while the family itself does not
      measures.push_back(measure_exact(s, kind, space));
      all_minimal = false;
    } else {
      for (const auto& c : node.components) {
        collect_infinite(c, kind, space, measures, all_minimal);
      }
    }
  });
}

}  // namespace

bool is_minimal(const StructuredSet& s, MeasureKind kind, const SpaceSpec& space) {
  s.validate();
  if (!contains_infinite(s)) {
    throw DomainError("minimality is undefined for purely finite sets");
  }
  bool all_minimal = true;
  std::vector<double> measures;
  collect_infinite(s, kind, space, measures, all_minimal);
  if (!all_minimal) return false;
  // Every infinite component must carry the same measure, or an infinite
  // subset drawn from the smaller component would witness a smaller value.
  double lo = *std::min_element(measures.begin(), measures.end());
  double hi = *std::max_element(measures.begin(), measures.end());
  return hi - lo <= space.eq_tol * std::max(1.0, hi);
}

StructuredSet scale_set(const StructuredSet& s, double k) {
  if (!(k > 0.0) || !std::isfinite(k)) {
    throw DomainError("scale factor must be positive and finite");
  }
  return s.visit([&](const auto& node) -> StructuredSet {
    using T = std::decay_t<decltype(node)>;
    if constexpr (std::is_same_v<T, FiniteSet>) {
      FiniteSet out;
      out.points.points.reserve(node.points.points.size());
      for (const auto& pt : node.points.points) out.points.points.push_back(k * pt);
      return StructuredSet(std::move(out));
    } else if constexpr (std::is_same_v<T, UnionSet>) {
      UnionSet out;
      out.components.reserve(node.components.size());
      for (const auto& c : node.components) out.components.push_back(scale_set(c, k));
      return StructuredSet(std::move(out));
    } else {
      T out = node;
      out.center *= k;
      out.radius *= k;
      return StructuredSet(std::move(out));
    }
  });
}

int truncation_capacity(const StructuredSet& s, const SpaceSpec& space) {
  space.validate();
  return s.visit([&](const auto& node) -> int {
    using T = std::decay_t<decltype(node)>;
    if constexpr (std::is_same_v<T, FiniteSet>) {
      return static_cast<int>(node.points.points.size());
    } else if constexpr (std::is_same_v<T, UnionSet>) {
      long long total = 0;
      for (const auto& c : node.components) total += truncation_capacity(c, space);
      return static_cast<int>(std::min<long long>(total, 1 << 24));
    } else {
      int fresh = space.truncation_dim - node.tail_start + 1;
      if (fresh < 0) fresh = 0;
      if constexpr (std::is_same_v<T, TailFamily>) {
        return fresh;
      } else if constexpr (std::is_same_v<T, SphereTail>) {
        return 2 * fresh;  // antipodal pair per fresh coordinate
      } else {
        return 1 + 4 * fresh;  // center plus full- and half-radius pairs
      }
    }
  });
}

namespace {

// Random p-unit vector supported on `width` coordinates from `start`.
SparseVector random_direction(Rng& rng, int start, int width, double p) {
  while (true) {
    SparseVector u;
    for (int i = 0; i < width; ++i) {
      u.set(start + i, rng.gaussian());
    }
    double n = norm(u, p);
    if (n > 1e-12) {
      u *= 1.0 / n;
      return u;
    }
  }
}

FinitePointSet truncate_impl(const StructuredSet& s, int count, const SpaceSpec& space,
                             const TruncationScheme& scheme);

std::vector<SparseVector> family_points(const StructuredSet& s, int count,
                                        const SpaceSpec& space,
                                        const TruncationScheme& scheme) {
  return truncate_impl(s, count, space, scheme).points;
}

FinitePointSet truncate_impl(const StructuredSet& s, int count, const SpaceSpec& space,
                             const TruncationScheme& scheme) {
  if (count < 1) throw DomainError("truncation count must be positive");
  int capacity = truncation_capacity(s, space);
  if (count > capacity) {
    throw DomainError("truncation count " + std::to_string(count) +
                      " exceeds the " + std::to_string(capacity) +
                      " representable points of this set");
  }
  FinitePointSet out;
  out.points.reserve(count);
  s.visit([&](const auto& node) {
    using T = std::decay_t<decltype(node)>;
    if constexpr (std::is_same_v<T, FiniteSet>) {
      out.points.assign(node.points.points.begin(), node.points.points.begin() + count);
    } else if constexpr (std::is_same_v<T, TailFamily>) {
      for (int i = 0; i < count; ++i) {
        SparseVector pt = node.center;
        pt.set(node.tail_start + i, node.radius);
        out.points.push_back(std::move(pt));
      }
    } else if constexpr (std::is_same_v<T, SphereTail>) {
      if (scheme.mode == TruncationScheme::Mode::Axes) {
        // antipodal basis pairs center +- r e_i
        for (int i = 0; i < count; ++i) {
          SparseVector pt = node.center;
          double sign = (i % 2 == 0) ? 1.0 : -1.0;
          pt.set(node.tail_start + i / 2, sign * node.radius);
          out.points.push_back(std::move(pt));
        }
      } else {
        Rng rng(scheme.seed);
        int width = std::min(space.truncation_dim - node.tail_start + 1,
                             std::max(4, count));
        while (static_cast<int>(out.points.size()) < count) {
          SparseVector pt = node.center;
          pt += node.radius * random_direction(rng, node.tail_start, width, space.p);
          bool dup = std::any_of(out.points.begin(), out.points.end(),
                                 [&](const SparseVector& q) { return q == pt; });
          if (!dup) out.points.push_back(std::move(pt));
        }
      }
    } else if constexpr (std::is_same_v<T, BallTail>) {
      if (scheme.mode == TruncationScheme::Mode::Axes) {
        out.points.push_back(node.center);
        int fresh = space.truncation_dim - node.tail_start + 1;
        // full-radius antipodal pairs, then a half-radius ring
        for (int ring = 0; ring < 2 && static_cast<int>(out.points.size()) < count; ++ring) {
          double r = node.radius / (ring + 1);
          for (int i = 0; i < 2 * fresh && static_cast<int>(out.points.size()) < count; ++i) {
            SparseVector pt = node.center;
            double sign = (i % 2 == 0) ? 1.0 : -1.0;
            pt.set(node.tail_start + i / 2, sign * r);
            out.points.push_back(std::move(pt));
          }
        }
      } else {
        Rng rng(scheme.seed);
        int width = std::min(space.truncation_dim - node.tail_start + 1,
                             std::max(4, count));
        while (static_cast<int>(out.points.size()) < count) {
          SparseVector pt = node.center;
          double shrink = std::pow(rng.uniform01(), 1.0 / width);
          pt += (node.radius * shrink) * random_direction(rng, node.tail_start, width, space.p);
          bool dup = std::any_of(out.points.begin(), out.points.end(),
                                 [&](const SparseVector& q) { return q == pt; });
          if (!dup) out.points.push_back(std::move(pt));
        }
      }
    } else {  // UnionSet: round-robin across components, skipping duplicates
      std::vector<std::vector<SparseVector>> streams;
      streams.reserve(node.components.size());
      for (const auto& c : node.components) {
        int avail = std::min(count, truncation_capacity(c, space));
        if (avail > 0) streams.push_back(family_points(c, avail, space, scheme));
      }
      std::size_t cursor = 0;
      bool progressed = true;
      while (static_cast<int>(out.points.size()) < count && progressed) {
        progressed = false;
        for (auto& stream : streams) {
          if (cursor < stream.size()) {
            progressed = true;
            SparseVector& pt = stream[cursor];
            bool dup = std::any_of(out.points.begin(), out.points.end(),
                                   [&](const SparseVector& q) { return q == pt; });
            if (!dup) out.points.push_back(std::move(pt));
            if (static_cast<int>(out.points.size()) == count) break;
          }
        }
        ++cursor;
      }
      if (static_cast<int>(out.points.size()) < count) {
        throw DomainError("union components provide fewer than " +
                          std::to_string(count) + " distinct points");
      }
    }
  });
  return out;
}

}  // namespace

FinitePointSet truncate(const StructuredSet& s, int count, const SpaceSpec& space,
                        const TruncationScheme& scheme) {
  s.validate();
  space.validate();
  return truncate_impl(s, count, space, scheme);
}

bool validate_in_unit_ball(const StructuredSet& s, const SpaceSpec& space) {
  s.validate();
  space.validate();
  const double limit = 1.0 + space.eq_tol;
  return s.visit([&](const auto& node) -> bool {
    using T = std::decay_t<decltype(node)>;
    if constexpr (std::is_same_v<T, FiniteSet>) {
      return std::all_of(node.points.points.begin(), node.points.points.end(),
                         [&](const SparseVector& pt) { return norm(pt, space.p) <= limit; });
    } else if constexpr (std::is_same_v<T, UnionSet>) {
      return std::all_of(node.components.begin(), node.components.end(),
                         [&](const StructuredSet& c) {
                           return validate_in_unit_ball(c, space);
                         });
    } else {
      // every point is center + r*u with u supported on fresh coordinates,
      // so its norm is ((norm center)^p + (r |u|)^p)^(1/p), maximal at |u| = 1
      double cp = std::pow(norm(node.center, space.p), space.p);
      double rp = std::pow(node.radius, space.p);
      return std::pow(cp + rp, 1.0 / space.p) <= limit;
    }
  });
}

}  // namespace mncx
