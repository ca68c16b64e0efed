#include "depthseg/diag.hpp"

#include <atomic>
#include <cstdio>

namespace depthseg {

namespace {

void default_warn(const std::string& message) {
    std::fprintf(stderr, "warning: %s\n", message.c_str());
}

std::atomic<WarnHandler> g_handler{&default_warn};

}  // namespace

WarnHandler set_warn_handler(WarnHandler handler) {
    return g_handler.exchange(handler ? handler : &default_warn);
}

void warn(const std::string& message) {
    g_handler.load()(message);
}

}  // namespace depthseg
