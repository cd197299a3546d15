#include "riss/format.hpp"

#include <cstdio>

namespace riss {

std::string format_real(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace riss
