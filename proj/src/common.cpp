#include "toeplitz/common.hpp"

#include <cstdlib>
#include <string>
#include <thread>

namespace toeplitz {

unsigned worker_threads() {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("TOEPLITZ_CALC_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v >= 1) return static_cast<unsigned>(std::min<long>(v, hw));
        } catch (const std::exception&) {
        }
    }
    return hw;
}

}  // namespace toeplitz
