#include "roadpulse/geo.hpp"

#include <algorithm>
#include <cmath>

#include "roadpulse/error.hpp"

namespace roadpulse {

namespace {

constexpr double kEarthRadiusM = 6'371'000.0;
constexpr double kDegToRad = 3.141592653589793238462643383279502884 / 180.0;

} // namespace

double haversine_m(LatLon a, LatLon b) {
    double lat1 = a.lat * kDegToRad;
    double lat2 = b.lat * kDegToRad;
    double dlat = (b.lat - a.lat) * kDegToRad;
    double dlon = (b.lon - a.lon) * kDegToRad;
    double s1 = std::sin(dlat / 2.0);
    double s2 = std::sin(dlon / 2.0);
    double h = s1 * s1 + std::cos(lat1) * std::cos(lat2) * s2 * s2;
    return 2.0 * kEarthRadiusM * std::asin(std::min(1.0, std::sqrt(h)));
}

double point_to_segment_distance_m(LatLon point, LatLon a, LatLon b) {
    // Local plane centered on the segment midpoint.
    double lat0 = (a.lat + b.lat) / 2.0 * kDegToRad;
    double lon0 = (a.lon + b.lon) / 2.0;
    double coslat = std::cos(lat0);
    auto to_plane = [&](LatLon p) {
        return std::pair<double, double>{(p.lon - lon0) * kDegToRad * coslat * kEarthRadiusM,
                                         (p.lat - (a.lat + b.lat) / 2.0) * kDegToRad * kEarthRadiusM};
    };
    auto [ax, ay] = to_plane(a);
    auto [bx, by] = to_plane(b);
    auto [px, py] = to_plane(point);

    double dx = bx - ax;
    double dy = by - ay;
    double len_sq = dx * dx + dy * dy;
    double t = 0.0;
    if (len_sq > 0.0) {
        t = std::clamp(((px - ax) * dx + (py - ay) * dy) / len_sq, 0.0, 1.0);
    }
    double cx = ax + t * dx;
    double cy = ay + t * dy;

    // Back to geographic coordinates, then the exact great-circle distance.
    LatLon closest{(a.lat + b.lat) / 2.0 + cy / kEarthRadiusM / kDegToRad,
                   lon0 + cx / (kEarthRadiusM * coslat) / kDegToRad};
    return haversine_m(point, closest);
}

double point_to_polyline_distance_m(LatLon point, std::span<const LatLon> polyline) {
    if (polyline.size() < 2) {
        throw Error(ErrorCode::DegeneratePolyline, "polyline needs at least 2 vertices");
    }
    double best = point_to_segment_distance_m(point, polyline[0], polyline[1]);
    for (std::size_t i = 2; i < polyline.size(); ++i) {
        best = std::min(best, point_to_segment_distance_m(point, polyline[i - 1], polyline[i]));
    }
    return best;
}

} // namespace roadpulse
