#include "ccm/rng.hpp"

namespace ccm {

namespace {
std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}
}  // namespace

Rng derive_stream(std::uint64_t seed, StreamKind kind, std::uint64_t index) {
    std::uint64_t h = mix(seed + 0x9e3779b97f4a7c15ull);
    h = mix(h ^ (static_cast<std::uint64_t>(kind) * 0xff51afd7ed558ccdull));
    h = mix(h ^ (index * 0xc4ceb9fe1a85ec53ull));
    return Rng{h};
}

}  // namespace ccm
