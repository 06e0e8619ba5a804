#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace tapkit {

// One letter of a free-group word: a generator id and a sign.
struct Letter {
    int gen = 0;
    int sign = 1; // +1 or -1
    auto operator<=>(const Letter&) const = default;
};

// Freely reduced word. The empty word is the identity. All constructors
// reduce, so Word values are canonical and safe to use as map keys.
class Word {
public:
    Word() = default;
    explicit Word(std::vector<Letter> raw);

    static Word generator(int gen, int sign = 1) { return Word({Letter{gen, sign}}); }

    const std::vector<Letter>& letters() const { return letters_; }
    bool is_identity() const { return letters_.empty(); }
    size_t length() const { return letters_.size(); }

    Word operator*(const Word& o) const;
    Word inverse() const;
    Word pow(int n) const;

    auto operator<=>(const Word&) const = default;

private:
    std::vector<Letter> letters_;
};

// Element of the integral group ring Z[F] of the free group: a finite formal
// sum of reduced words with integer coefficients. Zero coefficients are never
// stored.
class GroupRingElement {
public:
    GroupRingElement() = default;
    explicit GroupRingElement(const Word& w, long long coeff = 1);

    static GroupRingElement zero() { return {}; }
    static GroupRingElement one() { return GroupRingElement(Word{}); }

    const std::map<Word, long long>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    GroupRingElement& add_term(const Word& w, long long coeff);

    GroupRingElement operator+(const GroupRingElement& o) const;
    GroupRingElement operator-(const GroupRingElement& o) const;
    GroupRingElement operator-() const;
    GroupRingElement operator*(const GroupRingElement& o) const;

    // Left-multiply by a single word (the common case in Fox calculus).
    GroupRingElement left_mul(const Word& w) const;

    bool operator==(const GroupRingElement& o) const { return terms_ == o.terms_; }

private:
    std::map<Word, long long> terms_;
};

// Free reduction of a raw letter sequence. Idempotent and length-nonincreasing.
Word reduce_word(const std::vector<Letter>& raw);

// Fox derivative d(w)/d(gen): dg/dg = 1, dg^-1/dg = -g^-1, dh/dg = 0,
// d(uv)/dg = du/dg + u dv/dg.
GroupRingElement fox_derivative(const Word& w, int gen);
GroupRingElement fox_derivative(const GroupRingElement& e, int gen);

} // namespace tapkit
