#include "subwick/rng.hpp"

#include <cmath>
#include <numbers>

namespace subwick {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

// splitmix64 finalizer
std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

CounterRng::CounterRng(const RngSeed& seed) {
    key_ = mix64(mix64(seed.value + kGolden) ^ mix64(seed.stream + 0x6a09e667f3bcc909ULL));
}

std::uint64_t CounterRng::next_u64() {
    counter_ += 1;
    return mix64(key_ + counter_ * kGolden);
}

double CounterRng::next_unit() {
    // top 53 bits, shifted into the open interval (0, 1)
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double CounterRng::next_gaussian() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    const double u1 = next_unit();
    const double u2 = next_unit();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
}

}  // namespace subwick
