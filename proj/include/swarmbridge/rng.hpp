#pragma once

#include <cstdint>

namespace swarmbridge {

// Counter-based generator built on the splitmix64 finalizer. Draw k of
// stream (seed, stream) depends only on (seed, stream, k), so trials and
// per-robot streams can run in parallel and still replay bit-identically.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0);

    std::uint64_t next_u64();

    // uniform in [0, 1), 53-bit resolution
    double uniform();

    // standard normal via Box-Muller; consumes two uniforms per pair
    double normal();

    std::uint64_t counter() const { return counter_; }

private:
    std::uint64_t key_ = 0;
    std::uint64_t counter_ = 0;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace swarmbridge
