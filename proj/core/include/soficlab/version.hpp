#ifndef SOFICLAB_VERSION_HPP
#define SOFICLAB_VERSION_HPP

namespace soficlab {

inline constexpr const char* kArtifactName = "soficlab";
inline constexpr const char* kArtifactVersion = "0.1.0";

inline const char* artifact_banner() { return "soficlab 0.1.0"; }

} // namespace soficlab

#endif
