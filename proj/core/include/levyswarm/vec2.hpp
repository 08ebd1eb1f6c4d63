#pragma once

#include <cmath>

namespace levyswarm {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline Vec2 operator*(Vec2 a, double s) { return {s * a.x, s * a.y}; }
inline Vec2& operator+=(Vec2& a, Vec2 b) { a.x += b.x; a.y += b.y; return a; }
inline Vec2& operator-=(Vec2& a, Vec2 b) { a.x -= b.x; a.y -= b.y; return a; }

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm2(Vec2 a) { return dot(a, a); }
inline double norm(Vec2 a) { return std::sqrt(norm2(a)); }

// Unit vector at angle phi from the positive x axis.
inline Vec2 unit_at(double phi) { return {std::cos(phi), std::sin(phi)}; }

inline double angle_of(Vec2 a) { return std::atan2(a.y, a.x); }

// Mirror v across the line orthogonal to unit normal nhat: v - 2 (v.nhat) nhat.
inline Vec2 reflect(Vec2 v, Vec2 nhat) {
    const double p = 2.0 * dot(v, nhat);
    return {v.x - p * nhat.x, v.y - p * nhat.y};
}

} // namespace levyswarm
