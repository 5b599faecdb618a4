#include "tenrank/version.hpp"

namespace tenrank {

std::string_view library_version() { return TENRANK_VERSION; }

}  // namespace tenrank
