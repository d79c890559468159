#include "relcommit/spacetime/geometry.hpp"

#include <cmath>

#include "relcommit/errors.hpp"

namespace relcommit {

SpacetimePoint make_point(double x, double t) {
  if (!std::isfinite(x) || !std::isfinite(t)) throw InputError("spacetime coordinates must be finite");
  return {x, t};
}

bool spacelike_separated(const SpacetimePoint& p, const SpacetimePoint& q) {
  return std::abs(p.x - q.x) > std::abs(p.t - q.t);
}

bool can_signal(const SpacetimePoint& from, const SpacetimePoint& to) {
  return to.t - from.t >= std::abs(to.x - from.x);
}

SpacetimePoint latest_common_past(const SpacetimePoint& q, const SpacetimePoint& r) {
  const double dx = std::abs(q.x - r.x);
  const double dt = std::abs(q.t - r.t);
  if (dx <= dt) return q.t <= r.t ? q : r;
  // Intersection of the left past-cone edge of the right point with the
  // right past-cone edge of the left point.
  const SpacetimePoint& left = q.x <= r.x ? q : r;
  const SpacetimePoint& right = q.x <= r.x ? r : q;
  return {(left.x + right.x + left.t - right.t) / 2.0, (left.t + right.t - dx) / 2.0};
}

}  // namespace relcommit
