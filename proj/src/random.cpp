#include "gpeval/random.hpp"

#include <random>
#include <vector>

namespace gpeval {

std::uint64_t derive_seed(std::uint64_t parent, std::initializer_list<std::uint32_t> path) {
    std::vector<std::uint32_t> material{static_cast<std::uint32_t>(parent),
                                        static_cast<std::uint32_t>(parent >> 32)};
    material.insert(material.end(), path.begin(), path.end());
    std::seed_seq seq(material.begin(), material.end());
    std::uint32_t out[2];
    seq.generate(out, out + 2);
    return (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
}

Eigen::VectorXd standard_normal(Rng& rng, Eigen::Index n) {
    boost::random::normal_distribution<double> normal(0.0, 1.0);
    Eigen::VectorXd z(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        z[i] = normal(rng);
    }
    return z;
}

}  // namespace gpeval
