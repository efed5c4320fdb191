#ifndef STOCHOPTICS_VERSION_HPP
#define STOCHOPTICS_VERSION_HPP

#include <string_view>

namespace stochoptics {
inline constexpr std::string_view kVersion = "stochoptics 0.1.0";
}

#endif  // STOCHOPTICS_VERSION_HPP
