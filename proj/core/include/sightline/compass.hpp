#pragma once

#include <array>
#include <string>
#include <string_view>

#include "sightline/geometry.hpp"

namespace sightline {

/// Travel direction of a vehicle.
enum class Facing { N, S, E, W };

/// Camera look direction.
enum class Cardinal { N, NE, E, SE, S, SW, W, NW };

inline constexpr std::array<Facing, 4> kAllFacings{Facing::N, Facing::S, Facing::E, Facing::W};
inline constexpr std::array<Cardinal, 8> kAllCardinals{Cardinal::N, Cardinal::NE, Cardinal::E,
                                                       Cardinal::SE, Cardinal::S, Cardinal::SW,
                                                       Cardinal::W, Cardinal::NW};

std::string_view to_string(Facing f);
std::string_view to_string(Cardinal c);

/// Accepts "N", "north", "n", ... Throws Error on anything else.
Facing parse_facing(std::string_view text);
Cardinal parse_cardinal(std::string_view text);

/// Unit horizontal vector (world frame) of a facing / cardinal.
Vec3 forward_of(Facing f);
Vec3 forward_of(Cardinal c);

/// Reflection about the x = 0 plane swaps east and west.
Facing mirror(Facing f);
Cardinal mirror(Cardinal c);

/// Vehicle-local to world rotation for a road-aligned yaw: local +Z maps to
/// forward_of(f), local +X to the vehicle's right. Exact (signs and swaps only).
Vec3 rotate_to_world(Facing f, const Vec3& local);
Vec3 rotate_to_local(Facing f, const Vec3& world);

}  // namespace sightline
