#pragma once

// All randomness flows through a 64-bit Mersenne Twister paired with Boost's
// normal_distribution (ziggurat). Both are specified algorithms, so draws are
// reproducible across runs, compilers and standard libraries.

#include <boost/random/mersenne_twister.hpp>
#include <boost/random/normal_distribution.hpp>

#include <Eigen/Dense>

#include <cstdint>
#include <initializer_list>

namespace gpeval {

using Rng = boost::random::mt19937_64;

/// Deterministically derives a child seed from a parent seed and a path of labels.
[[nodiscard]] std::uint64_t derive_seed(std::uint64_t parent, std::initializer_list<std::uint32_t> path);

/// Fills a vector with n independent standard normal draws.
[[nodiscard]] Eigen::VectorXd standard_normal(Rng& rng, Eigen::Index n);

}  // namespace gpeval
