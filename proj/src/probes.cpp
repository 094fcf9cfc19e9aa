#include "moebius/probes.hpp"

#include "moebius/random.hpp"

namespace moebius {

std::vector<Vec> sample_probes(const Box& domain, int count, std::uint64_t seed) {
    const Box inner = domain.shrunk(0.1);
    Rng rng(seed);
    std::vector<Vec> out;
    out.reserve(static_cast<std::size_t>(std::max(count, 0)));
    for (int k = 0; k < count; ++k) {
        Vec p(inner.dim());
        for (int i = 0; i < inner.dim(); ++i) p[i] = rng.uniform(inner.lo[i], inner.hi[i]);
        out.push_back(p);
    }
    return out;
}

}  // namespace moebius
