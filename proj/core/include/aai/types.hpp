#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace aai {

/// Configuration value that requests randomization at spawn time.
inline constexpr double kRandom = -1.0;

/// Arena floor spans [0, kArenaSize] on x and z.
inline constexpr double kArenaSize = 40.0;

/// Arena-space vector. x is right, y is up, z is forward; 1 unit = 1 meter.
struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Vec3() = default;
  constexpr Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

  constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  constexpr Vec3 operator-() const { return {-x, -y, -z}; }
  constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  constexpr Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
  constexpr Vec3& operator+=(const Vec3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  constexpr Vec3& operator-=(const Vec3& o) {
    x -= o.x;
    y -= o.y;
    z -= o.z;
    return *this;
  }
  constexpr Vec3& operator*=(double s) {
    x *= s;
    y *= s;
    z *= s;
    return *this;
  }
  constexpr bool operator==(const Vec3&) const = default;
};

constexpr Vec3 operator*(double s, const Vec3& v) { return v * s; }
constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double length(const Vec3& v) { return std::sqrt(dot(v, v)); }
inline Vec3 normalized(const Vec3& v) {
  const double n = length(v);
  return n > 0.0 ? v / n : Vec3{};
}

inline bool is_random(double v) { return v == kRandom; }

/// 8-bit color; a channel of -1 requests a random value.
struct Rgb {
  int r = 0;
  int g = 0;
  int b = 0;
  constexpr bool operator==(const Rgb&) const = default;
};

/// One `!Item` entry. Each list may be empty; the number of spawned
/// instances is the longest list length (at least one).
struct ItemSpec {
  std::string name;
  std::vector<Vec3> positions;
  std::vector<double> rotations;
  std::vector<Rgb> colors;
  std::vector<Vec3> sizes;

  bool operator==(const ItemSpec&) const = default;
};

struct ArenaSpec {
  int t = 0;                    // episode step limit; 0 means unbounded
  std::vector<int> blackouts;   // toggle steps, or a single negative period
  std::vector<ItemSpec> items;  // document order is spawn priority

  bool operator==(const ArenaSpec&) const = default;
};

/// A key that the parser did not recognize. Kept out of structural
/// equality; surfaced as a warning by validate_config.
struct UnknownField {
  int arena = -1;
  int item = -1;
  std::string key;
  int line = 0;
  int column = 0;
};

struct ArenaConfigDoc {
  std::map<int, ArenaSpec> arenas;
  std::vector<UnknownField> unknown_fields;

  bool operator==(const ArenaConfigDoc& o) const { return arenas == o.arenas; }
};

struct ObservationSpec {
  int resolution = 84;

  static constexpr int kMinResolution = 4;
  static constexpr int kMaxResolution = 512;
  bool valid() const { return resolution >= kMinResolution && resolution <= kMaxResolution; }
};

}  // namespace aai
