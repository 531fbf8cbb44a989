#pragma once

#define NZFLOW_VERSION_MAJOR 0
#define NZFLOW_VERSION_MINOR 1
#define NZFLOW_VERSION_PATCH 0
#define NZFLOW_VERSION_STRING "0.1.0"

namespace nzflow {

inline const char* version() { return NZFLOW_VERSION_STRING; }

}  // namespace nzflow
