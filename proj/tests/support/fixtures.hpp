/*
 Copyright 2026 The ddc Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/
#ifndef DDC_TESTS_FIXTURES_HPP
#define DDC_TESTS_FIXTURES_HPP

#include <cstdint>
#include <random>

#include "ddc/data.hpp"
#include "ddc/lti.hpp"
#include "oracles.hpp"

namespace ddc::fixture {

/// Clean Hankel data of (A, B) under a seeded PE input of order n+1.
inline HankelPair clean_hankel(const SystemRealization& sys, Index T, std::uint64_t seed) {
    const Matrix u = gen_pe_input(sys.m(), T, sys.n() + 1, seed);
    return to_hankel(collect_dataset(sys, u));
}

/// A horizon comfortably above the PE requirement for the given sizes.
inline Index generous_horizon(Index n, Index m) { return 2 * ((m + 1) * n + m) + 4; }

/// Gain with spectral radius of A - BK above `threshold`, by rejection sampling.
inline Matrix unstable_gain(const SystemRealization& sys, std::mt19937_64& rng, double threshold = 1.05) {
    for (;;) {
        const Matrix K = 2.0 * oracle::gaussian(sys.m(), sys.n(), rng);
        if (oracle::gelfand_radius(sys.closed_loop(K)) > threshold) return K;
    }
}

} // namespace ddc::fixture

#endif // DDC_TESTS_FIXTURES_HPP
