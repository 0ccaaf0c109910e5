#ifndef PATHINT_VERSION_HPP
#define PATHINT_VERSION_HPP

namespace pathint {

inline constexpr const char* kVersion = "pathint 0.1.0";
// Bump when any emitted JSON/CSV field changes meaning or name.
inline constexpr const char* kManifestSchema = "pathint-manifest-1";

}  // namespace pathint

#endif
