#pragma once

#include <span>

#include "roadpulse/types.hpp"

namespace roadpulse {

/// Great-circle distance in meters on a spherical Earth (R = 6,371 km).
double haversine_m(LatLon a, LatLon b);

/// Distance in meters from `point` to the closest point of segment [a, b].
/// The segment is treated in a local equirectangular plane centered on its
/// midpoint (fine at the scale of a metro-area corridor), the projection is
/// clamped to the segment, and the final distance is the great-circle one.
double point_to_segment_distance_m(LatLon point, LatLon a, LatLon b);

/// Minimum of point_to_segment_distance_m over consecutive vertex pairs.
/// Throws Error(DegeneratePolyline) when the polyline has fewer than 2
/// vertices.
double point_to_polyline_distance_m(LatLon point, std::span<const LatLon> polyline);

} // namespace roadpulse
