#pragma once

#include <cstdint>

namespace subwick {

/// Seed plus stream id. Identical (value, stream) pairs reproduce identical
/// draws; distinct streams are independent for practical purposes.
struct RngSeed {
    std::uint64_t value = 0;
    std::uint64_t stream = 0;

    /// Derive the seed for an independent sub-stream (trial index, restart
    /// index, ...). XOR keeps derivation involutive and cheap.
    [[nodiscard]] RngSeed substream(std::uint64_t id) const {
        return RngSeed{value, stream ^ id};
    }
};

/// Counter-based uniform generator with a fixed, documented algorithm:
///
///   key     = mix64(mix64(value + A) ^ mix64(stream + B))
///   out(i)  = mix64(key + i * 0x9e3779b97f4a7c15)        (splitmix64)
///
/// where mix64 is the splitmix64 finalizer. Uniforms in (0,1) take the top
/// 53 bits: u = ((out >> 11) + 0.5) * 2^-53. Normals use the Box-Muller
/// transform on consecutive uniform pairs. There is no hidden state beyond
/// the counter, so draws are reproducible given (value, stream).
class CounterRng {
public:
    explicit CounterRng(const RngSeed& seed);

    std::uint64_t next_u64();
    /// Uniform in the open interval (0, 1).
    double next_unit();
    /// Standard normal via Box-Muller; caches the second variate of a pair.
    double next_gaussian();

    void discard_spare() { have_spare_ = false; }

private:
    std::uint64_t key_ = 0;
    std::uint64_t counter_ = 0;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace subwick
