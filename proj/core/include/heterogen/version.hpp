#pragma once

namespace heterogen {

inline constexpr const char* kVersion = "0.1.0";

// Schema tag written into every manifest and report this library emits.
inline constexpr const char* kSchema = "heterogen/1";

}  // namespace heterogen
