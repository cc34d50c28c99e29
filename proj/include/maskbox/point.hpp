#pragma once

#include <cmath>

namespace maskbox {

/// 2D point in continuous image coordinates (x right, y down, pixels).
struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

inline Point2 operator+(const Point2& a, const Point2& b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(const Point2& a, const Point2& b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(const Point2& p, double s) { return {p.x * s, p.y * s}; }
inline Point2 operator*(double s, const Point2& p) { return p * s; }

inline double dot(const Point2& a, const Point2& b) { return a.x * b.x + a.y * b.y; }

// z component of the 3D cross product; sign gives turn direction.
inline double cross(const Point2& a, const Point2& b) { return a.x * b.y - a.y * b.x; }

inline double length(const Point2& p) { return std::hypot(p.x, p.y); }
inline double distance(const Point2& a, const Point2& b) { return length(a - b); }

inline bool finite(const Point2& p) { return std::isfinite(p.x) && std::isfinite(p.y); }

}  // namespace maskbox
