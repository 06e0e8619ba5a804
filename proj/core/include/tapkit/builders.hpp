#pragma once

#include "tapkit/presentation.hpp"
#include "tapkit/scalars.hpp"

#include <vector>

namespace tapkit {

// Conway parameters of a two-bridge knot C(2m_0, -2m_1, ..., -2m_k), k odd,
// every m_i nonzero.
struct TwoBridgeSpec {
    std::vector<int> m; // m_0 ... m_k
    int k() const { return static_cast<int>(m.size()) - 1; }
    void validate() const;
};

// Normalized tunnel-number-one Montesinos knot of case (2):
// M(0; (2, beta1), tangle [2m_0,...,2m_k], tangle [0, 2n_1,...,2n_l]) with
// beta1 = +-1, k and l even, m_0 possibly zero, everything else nonzero.
struct Case2Spec {
    int beta1_sign = 1; // +1 or -1
    std::vector<int> m; // m_0 ... m_k
    std::vector<int> n; // n_1 ... n_l
    int k() const { return static_cast<int>(m.size()) - 1; }
    int l() const { return static_cast<int>(n.size()); }
    void validate() const;
};

// K_n = M(0; (3n+2, -2n-1), (3,1), (3,1)); the parity of n selects the
// two-generator presentation.
struct Case3Spec {
    int n = 0;
};

// Continued fraction with even entries (the last entry may be odd when both
// numerator and denominator are odd). Reconstructs its rational exactly.
struct EvenCF {
    std::vector<long long> entries;
};

Rational cf_to_rational(const std::vector<long long>& entries);
inline Rational cf_to_rational(const EvenCF& cf) { return cf_to_rational(cf.entries); }

// Even continued-fraction expansion of beta/alpha, gcd(alpha,beta) = 1, alpha >= 1:
//   alpha odd,  beta even: odd number of even entries
//   alpha even, beta odd:  even number of even entries
//   alpha odd,  beta odd:  even entries with a final odd entry
EvenCF even_continued_fraction(const BigInt& beta, const BigInt& alpha);

// ---------------------------------------------------------------------------
// Presentations
// ---------------------------------------------------------------------------

// Generators b, a, x_{-1}..x_{2k}; relators r_{-1}..r_{2k} and r_{2k+2}
// (deficiency one; r_{2k+1} is a consequence). Meridian b.
Presentation build_two_bridge(const TwoBridgeSpec& spec);

// Generators a, b, c, x_{-4}..x_{2k}, y_{-2}..y_{2l}; relators
// r_{-4}..r_{2k+1}, s_{-2}..s_{2l+1} (deficiency one; the closing relation
// x_{2k} = y_{2l} is a consequence). Meridian c.
Presentation build_case2(const Case2Spec& spec);

// Two-generator one-relator presentation <x, z | r> with y expanded into
// x,z-letters; meridian x, degrees (1, 2).
Presentation build_case3(const Case3Spec& spec);

// The y word of the case-(3) presentation (identity when the twist power
// vanishes).
Word case3_y_word(const Case3Spec& spec);

// Raw Montesinos data for case (2) before normalization.
struct MontesinosInput {
    long long b = 0;
    long long alpha1 = 2, beta1 = 1;
    long long alpha2 = 3, beta2 = 1;
    long long alpha3 = 3, beta3 = 1;
};

// Applies the twist transfers that bring a tunnel-number-one case-(2)
// Montesinos knot to the normalized shape: tangle one becomes +-1/2, the
// other two numerators become even with the third tangle proper. Canonical:
// equivalent inputs map to the same spec.
Case2Spec normalize_case2(const MontesinosInput& in);

// Seifert genus. Two-bridge: (k+1)/2. Case 2: (k+l+2)/2 if m_0 != 0 else
// (k+l)/2. Case 3 is not supported.
int genus(const TwoBridgeSpec& spec);
int genus(const Case2Spec& spec);

// Generator-id helpers shared with the closed forms. Negative indices map to
// the substituted initial words (case 1: x_{-4}=b, x_{-3}=a, x_{-2}=a^-1).
namespace twobridge_ids {
inline int b() { return 0; }
inline int a() { return 1; }
inline int x(int i) { return i + 3; } // valid for i >= -1
Word x_word(int i);                    // valid for i >= -4
} // namespace twobridge_ids

namespace case2_ids {
inline int a() { return 0; }
inline int b() { return 1; }
inline int c() { return 2; }
inline int x(int i) { return i + 7; }             // i in [-4, 2k]
inline int y(int i, int k) { return 2 * k + 10 + i; } // i in [-2, 2l]
} // namespace case2_ids

} // namespace tapkit
