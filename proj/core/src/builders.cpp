#include "tapkit/builders.hpp"

#include "tapkit/errors.hpp"

#include <string>

namespace tapkit {

void TwoBridgeSpec::validate() const {
    if (m.size() < 2 || m.size() % 2 != 0)
        throw spec_invariant_violation("two-bridge m-vector needs k odd (even length >= 2), got " +
                                       std::to_string(m.size()) + " entries");
    for (int v : m)
        if (v == 0) throw spec_invariant_violation("two-bridge m_i must all be nonzero");
}

void Case2Spec::validate() const {
    if (beta1_sign != 1 && beta1_sign != -1)
        throw spec_invariant_violation("beta1_sign must be +1 or -1");
    if (m.size() < 3 || m.size() % 2 != 1)
        throw spec_invariant_violation("case-2 m-vector needs k even >= 2 (odd length >= 3)");
    for (size_t i = 1; i < m.size(); ++i)
        if (m[i] == 0) throw spec_invariant_violation("case-2 m_1..m_k must be nonzero");
    if (n.size() < 2 || n.size() % 2 != 0)
        throw spec_invariant_violation("case-2 n-vector needs l even >= 2");
    for (int v : n)
        if (v == 0) throw spec_invariant_violation("case-2 n_i must all be nonzero");
}

// ---------------------------------------------------------------------------
// Continued fractions
// ---------------------------------------------------------------------------

Rational cf_to_rational(const std::vector<long long>& entries) {
    if (entries.empty()) return Rational(0);
    Rational acc(entries.back());
    for (auto it = entries.rbegin() + 1; it != entries.rend(); ++it) {
        if (acc == 0) throw InvalidInput("BadContinuedFraction", "zero tail in evaluation");
        acc = Rational(*it) + Rational(1) / acc;
    }
    return acc;
}

EvenCF even_continued_fraction(const BigInt& beta, const BigInt& alpha) {
    if (alpha < 1) throw not_coprime("alpha must be a positive integer");
    if (boost::multiprecision::gcd(beta < 0 ? BigInt(-beta) : beta, alpha) != 1)
        throw not_coprime("gcd(alpha, beta) must be 1");
    EvenCF cf;
    BigInt num = beta, den = alpha;
    while (true) {
        if (den == 1) {
            cf.entries.push_back(num.convert_to<long long>());
            break;
        }
        // Residue of num mod 2*den in (-den, den]; the quotient is then even.
        BigInt r = num % (2 * den);
        if (r <= -den) r += 2 * den;
        if (r > den) r -= 2 * den;
        cf.entries.push_back(((num - r) / den).convert_to<long long>());
        // beta/alpha = c + 1/(den/r); keep denominators positive.
        BigInt next_num = den, next_den = r;
        if (next_den < 0) {
            next_den = -next_den;
            next_num = -next_num;
        }
        num = next_num;
        den = next_den;
    }
    return cf;
}

// ---------------------------------------------------------------------------
// Two-bridge presentation (case 1)
// ---------------------------------------------------------------------------

namespace twobridge_ids {
Word x_word(int i) {
    switch (i) {
    case -4: return Word::generator(b());
    case -3: return Word::generator(a());
    case -2: return Word::generator(a(), -1);
    default: return Word::generator(x(i));
    }
}
} // namespace twobridge_ids

Presentation build_two_bridge(const TwoBridgeSpec& spec) {
    spec.validate();
    const int k = spec.k();
    Presentation p;
    p.generators = {"b", "a"};
    for (int i = -1; i <= 2 * k; ++i) p.generators.push_back("x" + std::to_string(i));
    p.meridian = twobridge_ids::b();

    using twobridge_ids::x_word;
    for (int i = 0; i <= k; ++i) {
        int s = (i % 2 == 0) ? 1 : -1;
        Word base = x_word(2 * i - 3).pow(s) * x_word(2 * i - 4).pow(s);
        Word conj = base.pow(spec.m[i]);
        Word conj_inv = conj.inverse();
        p.relators.push_back(x_word(2 * i - 1) * conj * x_word(2 * i - 3).inverse() * conj_inv);
        p.relators.push_back(x_word(2 * i) * conj * x_word(2 * i - 4).inverse() * conj_inv);
    }
    // r_{2k+2}: x_{2k} = b. (r_{2k+1} is a consequence of the rest.)
    p.relators.push_back(x_word(2 * k) * Word::generator(twobridge_ids::b(), -1));
    compute_degrees(p);
    return p;
}

// ---------------------------------------------------------------------------
// Case (2) presentation
// ---------------------------------------------------------------------------

Presentation build_case2(const Case2Spec& spec) {
    spec.validate();
    const int k = spec.k();
    const int l = spec.l();
    Presentation p;
    p.generators = {"a", "b", "c"};
    for (int i = -4; i <= 2 * k; ++i) p.generators.push_back("x" + std::to_string(i));
    for (int i = -2; i <= 2 * l; ++i) p.generators.push_back("y" + std::to_string(i));
    p.meridian = case2_ids::c();

    const Word A = Word::generator(case2_ids::a());
    const Word B = Word::generator(case2_ids::b());
    const Word C = Word::generator(case2_ids::c());
    auto X = [&](int i) { return Word::generator(case2_ids::x(i)); };
    auto Y = [&](int i) { return Word::generator(case2_ids::y(i, k)); };

    // Initial substitutions; the beta1 sign swaps the roles of a and c.
    Word x_m4_def = spec.beta1_sign > 0
                        ? C.inverse() * A.inverse() * C
                        : A.inverse() * C * A.inverse() * C.inverse() * A;
    Word y0_def = spec.beta1_sign > 0 ? C.inverse() * A * C.inverse() * A.inverse() * C
                                      : A.inverse() * C.inverse() * A;

    p.relators.push_back(X(-4) * x_m4_def.inverse());
    p.relators.push_back(X(-3) * A.inverse());
    p.relators.push_back(X(-2) * B.inverse());
    for (int i = 0; i <= k; ++i) {
        int s = (i % 2 == 0) ? 1 : -1;
        Word base = X(2 * i - 3).pow(s) * X(2 * i - 4).pow(s);
        Word conj = base.pow(spec.m[i]);
        Word conj_inv = conj.inverse();
        p.relators.push_back(X(2 * i - 1) * conj * X(2 * i - 3).inverse() * conj_inv);
        p.relators.push_back(X(2 * i) * conj * X(2 * i - 4).inverse() * conj_inv);
    }
    p.relators.push_back(X(2 * k - 1) * X(2 * k - 2)); // r_{2k+1}

    p.relators.push_back(Y(-2) * B.inverse());
    p.relators.push_back(Y(-1) * C.inverse());
    p.relators.push_back(Y(0) * y0_def.inverse());
    for (int i = 1; i <= l; ++i) {
        int s = (i % 2 == 0) ? 1 : -1;
        Word base = Y(2 * i - 3).pow(s) * Y(2 * i - 4).pow(s);
        Word conj = base.pow(-spec.n[i - 1]);
        Word conj_inv = conj.inverse();
        p.relators.push_back(Y(2 * i - 1) * conj * Y(2 * i - 3).inverse() * conj_inv);
        p.relators.push_back(Y(2 * i) * conj * Y(2 * i - 4).inverse() * conj_inv);
    }
    p.relators.push_back(Y(2 * l - 1) * Y(2 * l - 2)); // s_{2l+1}
    // The closing relation x_{2k} = y_{2l} is a consequence; dropping it
    // leaves a deficiency-one presentation.
    compute_degrees(p);
    return p;
}

// ---------------------------------------------------------------------------
// Case (3) presentations
// ---------------------------------------------------------------------------

Word case3_y_word(const Case3Spec& spec) {
    const Word x = Word::generator(0);
    const Word z = Word::generator(1);
    auto comm = [](const Word& u, const Word& v) {
        return u * v * u.inverse() * v.inverse();
    };
    if (spec.n % 2 == 0) {
        Word w = comm(x, z) * comm(x.inverse(), z.inverse());
        return x.inverse() * w.pow(spec.n / 2) * x;
    }
    Word w = comm(z, x.inverse()) * comm(z.inverse(), x);
    return w.pow((spec.n + 1) / 2);
}

Presentation build_case3(const Case3Spec& spec) {
    Presentation p;
    p.generators = {"x", "z"};
    p.meridian = 0;
    const Word x = Word::generator(0);
    const Word z = Word::generator(1);
    const Word y = case3_y_word(spec);
    const Word zxz = z * x * z.inverse();
    auto comm = [](const Word& u, const Word& v) {
        return u * v * u.inverse() * v.inverse();
    };
    Word r;
    if (spec.n % 2 == 0) {
        // [x^-1,z^-1] x y x (zxz^-1) y^-1 = y z x (zxz^-1) y^-1 (zxz^-1)^-1
        Word lhs = comm(x.inverse(), z.inverse()) * x * y * x * zxz * y.inverse();
        Word rhs = y * z * x * zxz * y.inverse() * zxz.inverse();
        r = lhs * rhs.inverse();
    } else {
        // x z x z^-1 [y, zxz^-1] = z x^-1 [zxz^-1, y] x
        Word lhs = x * z * x * z.inverse() * comm(y, zxz);
        Word rhs = z * x.inverse() * comm(zxz, y) * x;
        r = lhs * rhs.inverse();
    }
    p.relators.push_back(r);
    compute_degrees(p);
    return p;
}

// ---------------------------------------------------------------------------
// Case (2) normalization
// ---------------------------------------------------------------------------

Case2Spec normalize_case2(const MontesinosInput& in) {
    if (in.alpha1 != 2) throw not_case2("alpha_1 must be 2");
    if (in.alpha2 < 3 || in.alpha2 % 2 == 0 || in.alpha3 < 3 || in.alpha3 % 2 == 0)
        throw not_case2("alpha_2 and alpha_3 must be odd and >= 3");
    auto coprime = [](long long a, long long b) {
        return boost::multiprecision::gcd(BigInt(a < 0 ? -a : a), BigInt(b < 0 ? -b : b)) == 1;
    };
    if (!coprime(in.alpha1, in.beta1) || !coprime(in.alpha2, in.beta2) ||
        !coprime(in.alpha3, in.beta3))
        throw not_case2("each tangle must have gcd(alpha, beta) = 1");
    if (in.beta1 % 2 == 0) throw not_case2("beta_1 must be odd");

    // Unique shift v making beta_3 + v*alpha_3 proper and even.
    long long r0 = in.beta3 % in.alpha3;
    if (r0 < 0) r0 += in.alpha3;
    long long v_base = (r0 - in.beta3) / in.alpha3;
    long long b3 = r0, v = v_base;
    if (b3 % 2 != 0) {
        b3 -= in.alpha3;
        v -= 1;
    }
    if (b3 == 0 && in.alpha3 != 1) {
        // r0 == 0 would contradict coprimality for alpha_3 >= 3
        throw not_case2("degenerate third tangle");
    }

    // beta_1/2 + b collapses to s/2 after moving u twists into tangle 2;
    // conservation fixes s in {+1,-1} once u's parity (evenness of the new
    // beta_2) is imposed.
    long long P = in.beta1 + 2 * in.b - 2 * v;
    long long u = (P - 1) / 2; // candidate for s = +1
    int s = 1;
    if (((u % 2) + 2) % 2 != ((in.beta2 % 2) + 2) % 2) {
        u = (P + 1) / 2;
        s = -1;
    }
    long long b2 = in.beta2 + u * in.alpha2;
    if (b2 == 0) throw not_case2("second tangle collapses to zero");

    Case2Spec spec;
    spec.beta1_sign = s;
    EvenCF cf2 = even_continued_fraction(BigInt(b2), BigInt(in.alpha2));
    for (long long e : cf2.entries) {
        if (e % 2 != 0) throw not_case2("second tangle expansion not all-even");
        spec.m.push_back(static_cast<int>(e / 2));
    }
    EvenCF cf3 = even_continued_fraction(BigInt(b3), BigInt(in.alpha3));
    if (cf3.entries.empty() || cf3.entries[0] != 0)
        throw not_case2("third tangle expansion must be proper");
    for (size_t i = 1; i < cf3.entries.size(); ++i) {
        if (cf3.entries[i] % 2 != 0) throw not_case2("third tangle expansion not all-even");
        spec.n.push_back(static_cast<int>(cf3.entries[i] / 2));
    }
    spec.validate();
    return spec;
}

int genus(const TwoBridgeSpec& spec) {
    spec.validate();
    return (spec.k() + 1) / 2;
}

int genus(const Case2Spec& spec) {
    spec.validate();
    int two_g = spec.m[0] != 0 ? spec.k() + spec.l() + 2 : spec.k() + spec.l();
    return two_g / 2;
}

} // namespace tapkit
