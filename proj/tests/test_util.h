// Copyright 2026 The channel-mixer Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef CHMIX_TESTS_TEST_UTIL_H
#define CHMIX_TESTS_TEST_UTIL_H

#include <random>

#include <gtest/gtest.h>

#include "chmix/error.h"
#include "chmix/qmath.h"

// Asserts that `stmt` throws chmix::Error with the given kind.
#define EXPECT_ERROR_KIND(stmt, expected_kind)                                   \
    do {                                                                         \
        try {                                                                    \
            stmt;                                                                \
            ADD_FAILURE() << "expected " << chmix::to_string(expected_kind);     \
        } catch (const chmix::Error &e__) {                                      \
            EXPECT_EQ(e__.kind(), expected_kind) << e__.what();                  \
        }                                                                        \
    } while (0)

namespace testutil {

inline chmix::ComplexMatrix random_matrix(std::mt19937_64 &rng, int dim) {
    std::normal_distribution<double> g(0.0, 1.0);
    chmix::ComplexMatrix m(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) m(i, j) = chmix::cplx(g(rng), g(rng));
    return m;
}

inline chmix::ComplexMatrix random_hermitian(std::mt19937_64 &rng, int dim) {
    return chmix::hermitian_from(random_matrix(rng, dim));
}

inline chmix::Matrix2c random_state(std::mt19937_64 &rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double x = g(rng), y = g(rng), z = g(rng);
    double r = u(rng) / std::sqrt(x * x + y * y + z * z);
    return 0.5 * (chmix::pauli(0) + r * x * chmix::pauli(1) + r * y * chmix::pauli(2) + r * z * chmix::pauli(3));
}

}  // namespace testutil

#endif
