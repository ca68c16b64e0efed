#pragma once

#include <string>

namespace depthseg {

using WarnHandler = void (*)(const std::string& message);

/// Installs a new warning sink and returns the previous one.
/// The default handler writes "warning: <message>" to stderr.
WarnHandler set_warn_handler(WarnHandler handler);

void warn(const std::string& message);

}  // namespace depthseg
