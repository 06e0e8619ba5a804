#pragma once

#include "tapkit/builders.hpp"
#include "tapkit/representation.hpp"
#include "tapkit/scalars.hpp"
#include "tapkit/words.hpp"

#include <random>
#include <vector>

namespace tapkit::testing {

inline Word random_word(std::mt19937_64& rng, int num_gens, int max_len) {
    std::uniform_int_distribution<int> len(0, max_len);
    std::uniform_int_distribution<int> gen(0, num_gens - 1);
    std::uniform_int_distribution<int> sign(0, 1);
    std::vector<Letter> letters;
    int n = len(rng);
    for (int i = 0; i < n; ++i) letters.push_back(Letter{gen(rng), sign(rng) ? 1 : -1});
    return Word(letters);
}

inline std::vector<Letter> random_raw_letters(std::mt19937_64& rng, int num_gens, int max_len) {
    std::uniform_int_distribution<int> len(0, max_len);
    std::uniform_int_distribution<int> gen(0, num_gens - 1);
    std::uniform_int_distribution<int> sign(0, 1);
    std::vector<Letter> letters;
    int n = len(rng);
    for (int i = 0; i < n; ++i) letters.push_back(Letter{gen(rng), sign(rng) ? 1 : -1});
    return letters;
}

inline TwoBridgeSpec random_two_bridge(std::mt19937_64& rng, int k, int max_abs) {
    std::uniform_int_distribution<int> mag(1, max_abs);
    std::uniform_int_distribution<int> sign(0, 1);
    TwoBridgeSpec spec;
    for (int i = 0; i <= k; ++i) spec.m.push_back(sign(rng) ? mag(rng) : -mag(rng));
    return spec;
}

inline Case2Spec random_case2(std::mt19937_64& rng, int k, int l, int max_abs,
                              bool allow_zero_m0) {
    std::uniform_int_distribution<int> mag(1, max_abs);
    std::uniform_int_distribution<int> sign(0, 1);
    std::uniform_int_distribution<int> zero(0, 2);
    Case2Spec spec;
    spec.beta1_sign = sign(rng) ? 1 : -1;
    for (int i = 0; i <= k; ++i) spec.m.push_back(sign(rng) ? mag(rng) : -mag(rng));
    if (allow_zero_m0 && zero(rng) == 0) spec.m[0] = 0;
    for (int i = 0; i < l; ++i) spec.n.push_back(sign(rng) ? mag(rng) : -mag(rng));
    return spec;
}

// Random SL2 matrix over an exact field: product of elementary shears, so the
// determinant is exactly one.
template <class F>
Mat2<F> random_sl2(std::mt19937_64& rng, int factors = 3) {
    std::uniform_int_distribution<int> small(-3, 3);
    Mat2<F> acc = Mat2<F>::identity();
    for (int i = 0; i < factors; ++i) {
        Mat2<F> upper{F::one(), F::from_int(small(rng)), F::zero(), F::one()};
        Mat2<F> lower{F::one(), F::zero(), F::from_int(small(rng)), F::one()};
        acc = acc * upper * lower;
    }
    return acc;
}

template <class F>
Mat2<F> random_mat2(std::mt19937_64& rng, int bound = 4) {
    std::uniform_int_distribution<int> small(-bound, bound);
    return Mat2<F>{F::from_int(small(rng)), F::from_int(small(rng)), F::from_int(small(rng)),
                   F::from_int(small(rng))};
}

} // namespace tapkit::testing
