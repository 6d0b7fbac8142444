#pragma once

#include <cmath>

namespace vortex {

struct Vec2 {
    double x1 = 0.0;
    double x2 = 0.0;

    constexpr Vec2& operator+=(Vec2 o) { x1 += o.x1; x2 += o.x2; return *this; }
    constexpr Vec2& operator-=(Vec2 o) { x1 -= o.x1; x2 -= o.x2; return *this; }
    constexpr Vec2& operator*=(double s) { x1 *= s; x2 *= s; return *this; }
};

constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x1 + b.x1, a.x2 + b.x2}; }
constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x1 - b.x1, a.x2 - b.x2}; }
constexpr Vec2 operator-(Vec2 a) { return {-a.x1, -a.x2}; }
constexpr Vec2 operator*(double s, Vec2 a) { return {s * a.x1, s * a.x2}; }
constexpr Vec2 operator*(Vec2 a, double s) { return s * a; }

constexpr double dot(Vec2 a, Vec2 b) { return a.x1 * b.x1 + a.x2 * b.x2; }

// Rotation by +90 degrees: L v = (-v2, v1).  The Coriolis term and the
// perpendicular gradient are both built from this one matrix.
constexpr Vec2 lrot(Vec2 v) { return {-v.x2, v.x1}; }

inline double norm(Vec2 a) { return std::hypot(a.x1, a.x2); }

}  // namespace vortex
