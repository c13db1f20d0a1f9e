#ifndef AEROKIN_VERSION_HPP
#define AEROKIN_VERSION_HPP

namespace aerokin {
inline constexpr const char* kVersion = "0.1.0";
}

#endif
