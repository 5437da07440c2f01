#pragma once

#include <atomic>
#include <cstddef>

namespace gvdkit::detail {

/// Counts the choices searches make: shed variables, witness scalars, shedding vertices. Replay asserts it
/// does not move.
inline std::atomic<std::size_t>& search_counter() {
    static std::atomic<std::size_t> n{0};
    return n;
}

}  // namespace gvdkit::detail
