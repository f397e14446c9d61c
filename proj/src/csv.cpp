#include "wpnet/csv.hpp"

#include <charconv>

namespace wpnet {

std::string format_number(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
    return std::string(buf, res.ptr);
}

}  // namespace wpnet
