#pragma once

#include <doctest.h>

#include <cstdint>
#include <random>
#include <string>

#include "counterquill/error.hpp"
#include "counterquill/utf8.hpp"

// Checks that `expr` throws counterquill::Error carrying `code`.
#define CHECK_ERROR_CODE(expr, expected)                                 \
    do {                                                                 \
        bool thrown_ = false;                                            \
        try {                                                            \
            (void)(expr);                                                \
        } catch (const counterquill::Error& e_) {                        \
            thrown_ = true;                                              \
            CHECK_MESSAGE(e_.code() == (expected), e_.what());           \
        }                                                                \
        CHECK_MESSAGE(thrown_, "expected an error from " #expr);         \
    } while (0)

namespace cqtest {

using Rng = std::mt19937_64;

inline std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

// Mixes ASCII with 2-, 3- and 4-byte codepoints.
inline std::u32string random_codepoints(Rng& rng, std::size_t n) {
    static const char32_t pool[] = {U'a', U'b', U'z', U' ', U'.', U'\n', U'é', U'ß',
                                    U'ж', U'中', U'‘', U'’', U'😀', U'𝔸'};
    std::u32string out;
    for (std::size_t i = 0; i < n; ++i) out += pool[uniform(rng, 0, std::size(pool) - 1)];
    return out;
}

inline std::string random_text(Rng& rng, std::size_t max_len) {
    return counterquill::utf8::encode(random_codepoints(rng, uniform(rng, 0, max_len)));
}

}  // namespace cqtest
