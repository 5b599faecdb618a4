#pragma once

#include <string_view>

namespace tenrank {

std::string_view library_version();

}  // namespace tenrank
