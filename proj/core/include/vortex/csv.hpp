#pragma once

#include <charconv>
#include <ostream>
#include <string>
#include <system_error>

namespace vortex::csv {

// Shortest decimal text that round-trips to the same double.
inline std::string format(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

inline void write_field(std::ostream& os, double v, bool last) {
    os << format(v);
    os << (last ? '\n' : ',');
}

}  // namespace vortex::csv
