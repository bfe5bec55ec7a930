// Copyright 2026 The qspec Authors
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

#pragma once

#include <bit>
#include <cstddef>
#include <span>
#include <stdexcept>

namespace qspec {

/**
 * Unnormalized in-place fast Walsh-Hadamard transform:
 * data[s] <- Σ_x data[x] (-1)^{popcount(x & s)}.
 *
 * Works for any element type with + and -. The length must be a power of two.
 * Stages run with the half-length doubling; the innermost loop is contiguous.
 */
template <class T> void fwht_inplace(std::span<T> data) {
    const std::size_t len = data.size();
    if (len == 0 || !std::has_single_bit(len)) {
        throw std::invalid_argument("fwht: length must be a power of two");
    }
    for (std::size_t half = 1; half < len; half <<= 1) {
        for (std::size_t base = 0; base < len; base += 2 * half) {
            T *lo = data.data() + base;
            T *hi = lo + half;
            for (std::size_t i = 0; i < half; ++i) {
                const T a = lo[i];
                const T b = hi[i];
                lo[i] = a + b;
                hi[i] = a - b;
            }
        }
    }
}

} // namespace qspec
