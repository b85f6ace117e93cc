#ifndef BONDMATCHER_VERSION_HPP
#define BONDMATCHER_VERSION_HPP

namespace bondmatcher {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace bondmatcher

#endif
