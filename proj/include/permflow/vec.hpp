#pragma once

#include <cmath>

namespace permflow {

// Point/vector with three slots. Lower-dimensional data leaves the trailing
// components at zero, so norms and distances never need a dimension switch.
struct Vec {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Vec() = default;
  Vec(double x_, double y_ = 0.0, double z_ = 0.0) : x(x_), y(y_), z(z_) {}

  Vec& operator+=(const Vec& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  Vec& operator-=(const Vec& o) {
    x -= o.x;
    y -= o.y;
    z -= o.z;
    return *this;
  }
  Vec& operator*=(double s) {
    x *= s;
    y *= s;
    z *= s;
    return *this;
  }

  friend bool operator==(const Vec&, const Vec&) = default;
};

inline Vec operator+(Vec a, const Vec& b) { return a += b; }
inline Vec operator-(Vec a, const Vec& b) { return a -= b; }
inline Vec operator*(double s, Vec a) { return a *= s; }
inline Vec operator*(Vec a, double s) { return a *= s; }
inline Vec operator-(const Vec& a) { return Vec(-a.x, -a.y, -a.z); }

inline double dot(const Vec& a, const Vec& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm2(const Vec& a) { return dot(a, a); }
inline double norm(const Vec& a) { return std::sqrt(norm2(a)); }
inline double dist2(const Vec& a, const Vec& b) { return norm2(a - b); }

}  // namespace permflow
