#pragma once

// JSON and SVG renderings of the library's reports.
//
// Domain JSON schema:
//   p, a               integers
//   certified          bool; message: string (empty when certified)
//   level_reached, closure_level, elements_seen
//   area, area_over_pi number (null when the region never closed)
//   genus              integer or null
//   torsion_free, arcs_covered  bool
//   generators         [[x0,x1,x2,x3], ...]
//   sides              [{owner: [x0..x3], generator, start: [re,im], end: [re,im],
//                        paired_with, center: [re,im], radius}]
//   pairing            [paired_with of side 0, side 1, ...]
//   vertices           [[re,im], ...]; angles: [interior angle at each vertex]
// Exact rationals are written as "num/den" strings.

#include <string>

#include <json.hpp>

#include "quatgroup/arith.hpp"
#include "quatgroup/fuchsian.hpp"
#include "quatgroup/quat.hpp"

namespace quatgroup::io {

nlohmann::json toJson(const quat::VolumeReport& report);
nlohmann::json toJson(const fuchsian::FordDomain& domain);
nlohmann::json toJson(const fuchsian::BoundReport& bounds);
nlohmann::json toJson(const enumerate::UnitElement& g);

/// Hilbert symbols of (a, b) at every candidate place plus the ramification.
nlohmann::json hilbertReport(std::int64_t a, std::int64_t b);

struct SvgOptions {
    int size = 800;
    bool circles = false;  // overlay the full isometric circles
    bool vertexDots = true;
};

std::string toSvg(const fuchsian::FordDomain& domain, const SvgOptions& opts = {});

/// Parses "x0,x1,x2,x3"; throws std::invalid_argument on malformed input.
std::array<std::int64_t, 4> parseQuadruple(const std::string& text);

}  // namespace quatgroup::io
