#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "aai/types.hpp"
#include "aai/world.hpp"

namespace aai {

class ResolutionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// k x k RGB bytes, row-major from the top row.
struct Frame {
  int k = 0;
  std::vector<std::uint8_t> pixels;

  std::array<std::uint8_t, 3> at(int row, int col) const;
  bool all_zero() const;
  bool operator==(const Frame&) const = default;
};

struct CameraModel {
  double fov_y_degrees = 60.0;
  double eye_height = kAgentRadius;
};

inline constexpr Rgb kSkyColor{150, 200, 235};
inline constexpr Rgb kGroundLight{140, 140, 130};
inline constexpr Rgb kGroundDark{120, 120, 112};
inline constexpr Rgb kFenceColor{150, 111, 51};
inline constexpr float kAmbient = 0.35f;
inline constexpr float kDiffuse = 0.65f;
inline constexpr float kGlassOpacity = 0.3f;

void check_resolution(int k);

/// World-space primary ray through the center of pixel (row, col).
void camera_ray(const WorldState& world, int k, int row, int col, Vec3& origin, Vec3& direction,
                const CameraModel& camera = {});

/// Shaded color seen along a ray (the agent itself is invisible).
std::array<std::uint8_t, 3> render_ray_color(const WorldState& world, const Vec3& origin, const Vec3& direction);

Frame render(const WorldState& world, int k, const CameraModel& camera = {});
Frame black_frame(int k);

/// (forward, right, up) velocity of the body in its own frame.
Vec3 local_velocity(const BodyState& body);

/// FNV-1a over the pixel bytes.
std::uint64_t frame_hash(const Frame& frame);

std::vector<std::uint8_t> encode_png(const Frame& frame);
void write_png(const std::string& path, const Frame& frame);

}  // namespace aai
