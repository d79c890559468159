#pragma once

namespace relcommit {

/// Event in 1+1-dimensional Minkowski space, light speed 1.
struct SpacetimePoint {
  double x = 0.0;
  double t = 0.0;
  friend bool operator==(const SpacetimePoint&, const SpacetimePoint&) = default;
};

/// Throws InputError on non-finite coordinates.
SpacetimePoint make_point(double x, double t);

/// |dx| > |dt|; lightlike pairs count as causally connected.
bool spacelike_separated(const SpacetimePoint& p, const SpacetimePoint& q);

/// True if a signal at light speed or slower can go from `from` to `to`.
bool can_signal(const SpacetimePoint& from, const SpacetimePoint& to);

/// Apex of the intersection of the two past light cones.
SpacetimePoint latest_common_past(const SpacetimePoint& q, const SpacetimePoint& r);

}  // namespace relcommit
