#include "aai/render.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include <fmt/format.h>

#include "aai/physics.hpp"
#include "aai/raycast.hpp"

namespace aai {

std::array<std::uint8_t, 3> Frame::at(int row, int col) const {
  const std::size_t i = (static_cast<std::size_t>(row) * static_cast<std::size_t>(k) + static_cast<std::size_t>(col)) * 3;
  return {pixels[i], pixels[i + 1], pixels[i + 2]};
}

bool Frame::all_zero() const {
  return std::all_of(pixels.begin(), pixels.end(), [](std::uint8_t v) { return v == 0; });
}

void check_resolution(int k) {
  if (k < ObservationSpec::kMinResolution || k > ObservationSpec::kMaxResolution) {
    throw ResolutionError(fmt::format("resolution {} outside [{}, {}]", k, ObservationSpec::kMinResolution, ObservationSpec::kMaxResolution));
  }
}

void camera_ray(const WorldState& world, int k, int row, int col, Vec3& origin, Vec3& direction,
                const CameraModel& camera) {
  const double half = std::tan(deg_to_rad(camera.fov_y_degrees) / 2.0);
  // Exact rationals: pixel centers of k and 3k that coincide give equal rays.
  const double nx = static_cast<double>(2 * col + 1 - k) / k;
  const double ny = static_cast<double>(k - 2 * row - 1) / k;
  const Mat3 r = yaw_rotation(world.agent.body.yaw);
  origin = world.agent.body.position + Vec3{0.0, camera.eye_height, 0.0};
  direction = normalized(r * Vec3{nx * half, ny * half, 1.0});
}

namespace {

struct Color {
  float r = 0.0f;
  float g = 0.0f;
  float b = 0.0f;
};

Color lit(const Rgb& c, const Vec3& normal) {
  static const Vec3 to_light = normalized(Vec3{-1.0, 2.0, -1.0});
  const float ndl = static_cast<float>(dot(normal, to_light));
  const float f = kAmbient + kDiffuse * std::max(0.0f, ndl);
  return {static_cast<float>(c.r) * f, static_cast<float>(c.g) * f, static_cast<float>(c.b) * f};
}

Rgb ground_color(const WorldState& world, const Vec3& p) {
  for (auto it = world.objects.rbegin(); it != world.objects.rend(); ++it) {
    if (!it->entry->is_zone()) continue;
    if (point_in_rect(p.x, p.z, it->body.position, it->body.yaw, it->size.x / 2.0, it->size.z / 2.0)) return it->color;
  }
  const long cx = static_cast<long>(std::floor(p.x));
  const long cz = static_cast<long>(std::floor(p.z));
  return ((cx + cz) & 1) == 0 ? kGroundLight : kGroundDark;
}

constexpr int kMaxLayers = 8;

Color trace(const WorldState& world, const Vec3& origin, const Vec3& dir, int depth) {
  RaycastOptions opts;
  opts.skip_transparent = depth >= kMaxLayers;
  const auto hit = raycast(world, origin, dir, opts);
  if (!hit) return {static_cast<float>(kSkyColor.r), static_cast<float>(kSkyColor.g), static_cast<float>(kSkyColor.b)};
  const Vec3 p = origin + dir * hit->distance;
  switch (hit->target) {
    case WorldHit::Target::kGround:
      return lit(ground_color(world, p), hit->normal);
    case WorldHit::Target::kFence:
      return lit(kFenceColor, hit->normal);
    case WorldHit::Target::kAgent:
      return lit({0, 0, 255}, hit->normal);
    case WorldHit::Target::kObject:
      break;
  }
  const PlacedObject* o = world.find(hit->object_id);
  const Color surface = lit(o->color, hit->normal);
  if (!o->entry->transparent) return surface;
  const Color behind = trace(world, p + dir * 1e-6, dir, depth + 1);
  const float a = kGlassOpacity;
  return {a * surface.r + (1.0f - a) * behind.r, a * surface.g + (1.0f - a) * behind.g,
          a * surface.b + (1.0f - a) * behind.b};
}

std::uint8_t to_byte(float v) { return static_cast<std::uint8_t>(std::clamp(std::lround(v), 1L, 255L)); }

}  // namespace

std::array<std::uint8_t, 3> render_ray_color(const WorldState& world, const Vec3& origin, const Vec3& direction) {
  const Color c = trace(world, origin, direction, 0);
  return {to_byte(c.r), to_byte(c.g), to_byte(c.b)};
}

Frame render(const WorldState& world, int k, const CameraModel& camera) {
  check_resolution(k);
  Frame f;
  f.k = k;
  f.pixels.resize(static_cast<std::size_t>(k) * static_cast<std::size_t>(k) * 3);
  auto rows = [&](int begin, int end) {
    for (int row = begin; row < end; ++row) {
      for (int col = 0; col < k; ++col) {
        Vec3 o, d;
        camera_ray(world, k, row, col, o, d, camera);
        const auto c = render_ray_color(world, o, d);
        const std::size_t i = (static_cast<std::size_t>(row) * k + col) * 3;
        f.pixels[i] = c[0];
        f.pixels[i + 1] = c[1];
        f.pixels[i + 2] = c[2];
      }
    }
  };
  const unsigned hw = std::thread::hardware_concurrency();
  const int workers = k >= 64 && hw > 1 ? static_cast<int>(std::min(hw, 8u)) : 1;
  if (workers == 1) {
    rows(0, k);
    return f;
  }
  std::vector<std::thread> pool;
  const int chunk = (k + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const int begin = w * chunk;
    const int end = std::min(k, begin + chunk);
    if (begin < end) pool.emplace_back(rows, begin, end);
  }
  for (auto& t : pool) t.join();
  return f;
}

Frame black_frame(int k) {
  check_resolution(k);
  Frame f;
  f.k = k;
  f.pixels.assign(static_cast<std::size_t>(k) * static_cast<std::size_t>(k) * 3, 0);
  return f;
}

Vec3 local_velocity(const BodyState& body) { return to_local_frame(body.velocity, body.yaw); }

std::uint64_t frame_hash(const Frame& frame) {
  std::uint64_t h = 1469598103934665603ULL;
  for (std::uint8_t v : frame.pixels) {
    h ^= v;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace aai
