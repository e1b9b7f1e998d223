#include "sightline/compass.hpp"

#include <algorithm>
#include <cctype>
#include <numbers>

#include "sightline/error.hpp"

namespace sightline {

namespace {

std::string lower(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

constexpr double kHalfSqrt2 = std::numbers::sqrt2 / 2.0;

}  // namespace

std::string_view to_string(Facing f) {
  switch (f) {
    case Facing::N:
      return "N";
    case Facing::S:
      return "S";
    case Facing::E:
      return "E";
    case Facing::W:
      return "W";
  }
  return "?";
}

std::string_view to_string(Cardinal c) {
  switch (c) {
    case Cardinal::N:
      return "N";
    case Cardinal::NE:
      return "NE";
    case Cardinal::E:
      return "E";
    case Cardinal::SE:
      return "SE";
    case Cardinal::S:
      return "S";
    case Cardinal::SW:
      return "SW";
    case Cardinal::W:
      return "W";
    case Cardinal::NW:
      return "NW";
  }
  return "?";
}

Facing parse_facing(std::string_view text) {
  const auto t = lower(text);
  if (t == "n" || t == "north") return Facing::N;
  if (t == "s" || t == "south") return Facing::S;
  if (t == "e" || t == "east") return Facing::E;
  if (t == "w" || t == "west") return Facing::W;
  throw Error("unknown facing '" + std::string(text) + "'");
}

Cardinal parse_cardinal(std::string_view text) {
  const auto t = lower(text);
  if (t == "n" || t == "north") return Cardinal::N;
  if (t == "ne" || t == "northeast") return Cardinal::NE;
  if (t == "e" || t == "east") return Cardinal::E;
  if (t == "se" || t == "southeast") return Cardinal::SE;
  if (t == "s" || t == "south") return Cardinal::S;
  if (t == "sw" || t == "southwest") return Cardinal::SW;
  if (t == "w" || t == "west") return Cardinal::W;
  if (t == "nw" || t == "northwest") return Cardinal::NW;
  throw Error("unknown camera direction '" + std::string(text) + "'");
}

Vec3 forward_of(Facing f) {
  switch (f) {
    case Facing::N:
      return {0.0, 0.0, 1.0};
    case Facing::S:
      return {0.0, 0.0, -1.0};
    case Facing::E:
      return {1.0, 0.0, 0.0};
    case Facing::W:
      return {-1.0, 0.0, 0.0};
  }
  return {};
}

Vec3 forward_of(Cardinal c) {
  switch (c) {
    case Cardinal::N:
      return {0.0, 0.0, 1.0};
    case Cardinal::NE:
      return {kHalfSqrt2, 0.0, kHalfSqrt2};
    case Cardinal::E:
      return {1.0, 0.0, 0.0};
    case Cardinal::SE:
      return {kHalfSqrt2, 0.0, -kHalfSqrt2};
    case Cardinal::S:
      return {0.0, 0.0, -1.0};
    case Cardinal::SW:
      return {-kHalfSqrt2, 0.0, -kHalfSqrt2};
    case Cardinal::W:
      return {-1.0, 0.0, 0.0};
    case Cardinal::NW:
      return {-kHalfSqrt2, 0.0, kHalfSqrt2};
  }
  return {};
}

Facing mirror(Facing f) {
  if (f == Facing::E) return Facing::W;
  if (f == Facing::W) return Facing::E;
  return f;
}

Cardinal mirror(Cardinal c) {
  switch (c) {
    case Cardinal::NE:
      return Cardinal::NW;
    case Cardinal::NW:
      return Cardinal::NE;
    case Cardinal::E:
      return Cardinal::W;
    case Cardinal::W:
      return Cardinal::E;
    case Cardinal::SE:
      return Cardinal::SW;
    case Cardinal::SW:
      return Cardinal::SE;
    default:
      return c;
  }
}

Vec3 rotate_to_world(Facing f, const Vec3& l) {
  switch (f) {
    case Facing::N:
      return {l.x, l.y, l.z};
    case Facing::S:
      return {-l.x, l.y, -l.z};
    case Facing::E:
      return {l.z, l.y, -l.x};
    case Facing::W:
      return {-l.z, l.y, l.x};
  }
  return l;
}

Vec3 rotate_to_local(Facing f, const Vec3& w) {
  switch (f) {
    case Facing::N:
      return {w.x, w.y, w.z};
    case Facing::S:
      return {-w.x, w.y, -w.z};
    case Facing::E:
      return {-w.z, w.y, w.x};
    case Facing::W:
      return {w.z, w.y, -w.x};
  }
  return w;
}

}  // namespace sightline
