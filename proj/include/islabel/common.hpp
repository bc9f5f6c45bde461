#pragma once

#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <limits>
#include <stdexcept>
#include <string>

namespace islabel {

using VertexId = std::uint32_t;
using Weight = std::uint64_t;
using Distance = std::uint64_t;

// Reserved id used for "no vertex" (absent midpoint, seed parent, ...).
inline constexpr VertexId kNullVertex = std::numeric_limits<VertexId>::max();

inline constexpr Distance kInfDistance = std::numeric_limits<Distance>::max();

inline bool is_inf(Distance d) { return d == kInfDistance; }

// Checked addition: infinity absorbs, finite overflow is a hard error.
inline Distance dist_add(Distance a, Distance b) {
    if (is_inf(a) || is_inf(b)) return kInfDistance;
    if (a > kInfDistance - 1 - b)
        throw std::overflow_error("distance accumulator overflow");
    return a + b;
}

// Saturating variant for bound comparisons (never throws).
inline Distance dist_add_sat(Distance a, Distance b) {
    if (is_inf(a) || is_inf(b)) return kInfDistance;
    return a > kInfDistance - 1 - b ? kInfDistance : a + b;
}

inline std::string dist_to_string(Distance d) {
    return is_inf(d) ? std::string("INF") : std::to_string(d);
}

// Verbose logging, gated by the ISLABEL_LOG environment variable.
inline bool log_enabled() {
    static const bool on = [] {
        const char* v = std::getenv("ISLABEL_LOG");
        return v != nullptr && *v != '\0' && std::string(v) != "0";
    }();
    return on;
}

inline void log_info(const std::string& msg) {
    if (log_enabled()) std::cerr << "[islabel] " << msg << '\n';
}

}  // namespace islabel
