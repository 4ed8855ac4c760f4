#include "inhomog/threads.hpp"

#include <cstdlib>
#include <string>
#include <thread>

namespace inhomog {

unsigned worker_count() {
    unsigned n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    if (const char* env = std::getenv("INHOMOG_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v >= 1 && v < 1024) n = std::min<unsigned>(n, static_cast<unsigned>(v));
        } catch (const std::logic_error&) {
            // ignore malformed values
        }
    }
    return n;
}

} // namespace inhomog
