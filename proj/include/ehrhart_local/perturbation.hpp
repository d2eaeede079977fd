#pragma once

#include <algorithm>
#include <cstdlib>
#include <span>
#include <stdexcept>
#include <string>

#include "ehrhart_local/vec2.hpp"

namespace ehrhart_local {

/// The global direction u of the infinitesimal shift. Every tile and region
/// piece is read as its closure moved by ε·u, so it behaves like a half-open
/// set; cones and lattice points are never moved.
struct EpsDirection {
  Vec2 u;
  int sequenceIndex = 0;  // index into the δ sequence that was used
  int fallbacks = 0;      // candidates skipped because u was parallel to a line in play

  static constexpr int kDeltaDenominators[] = {1009, 1013, 1019, 1021, 1031, 1033, 1039, 1049,
                                               1051, 1061, 1063, 1069, 1087, 1091, 1093, 1097};
  static constexpr int kSequenceLength = static_cast<int>(std::size(kDeltaDenominators));

  static Vec2 candidate(int index) {
    return {Rational(-1), -makeRational(1, kDeltaDenominators[index % kSequenceLength])};
  }

  /// First candidate (starting at `start`) not orthogonal to any of `normals`,
  /// i.e. not parallel to any line with one of these normals.
  static EpsDirection choose(std::span<const Vec2> normals, int start = 0) {
    for (int i = 0; i < kSequenceLength; ++i) {
      int idx = (start + i) % kSequenceLength;
      Vec2 u = candidate(idx);
      bool ok = std::none_of(normals.begin(), normals.end(),
                             [&](const Vec2& n) { return dot(n, u) == 0; });
      if (ok) return {u, idx, i};
    }
    throw std::runtime_error("no generic perturbation direction in the fixed sequence");
  }

  /// Start index from EHRHART_LOCAL_SEED, 0 if unset.
  static int seedFromEnvironment() {
    const char* s = std::getenv("EHRHART_LOCAL_SEED");
    if (!s || !*s) return 0;
    try {
      int v = std::stoi(s) % kSequenceLength;
      return v < 0 ? v + kSequenceLength : v;
    } catch (const std::exception&) {
      throw std::invalid_argument(std::string("EHRHART_LOCAL_SEED is not an integer: ") + s);
    }
  }

  bool isGenericFor(const Vec2& normal) const { return dot(normal, u) != 0; }
};

}  // namespace ehrhart_local
