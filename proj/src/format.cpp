#include "h1pick/format.hpp"

#include <array>
#include <charconv>

namespace h1pick {

std::string format_number(double v, int digits) {
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, digits);
    return {buf.data(), res.ptr};
}

}  // namespace h1pick
