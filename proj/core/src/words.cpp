#include "tapkit/words.hpp"

namespace tapkit {

Word reduce_word(const std::vector<Letter>& raw) {
    std::vector<Letter> out;
    out.reserve(raw.size());
    for (const Letter& l : raw) {
        if (!out.empty() && out.back().gen == l.gen && out.back().sign == -l.sign)
            out.pop_back();
        else
            out.push_back(l);
    }
    Word w;
    w = Word(std::move(out));
    return w;
}

Word::Word(std::vector<Letter> raw) {
    letters_.reserve(raw.size());
    for (const Letter& l : raw) {
        if (!letters_.empty() && letters_.back().gen == l.gen && letters_.back().sign == -l.sign)
            letters_.pop_back();
        else
            letters_.push_back(l);
    }
}

Word Word::operator*(const Word& o) const {
    std::vector<Letter> raw = letters_;
    raw.insert(raw.end(), o.letters_.begin(), o.letters_.end());
    return Word(std::move(raw));
}

Word Word::inverse() const {
    std::vector<Letter> raw;
    raw.reserve(letters_.size());
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
        raw.push_back(Letter{it->gen, -it->sign});
    return Word(std::move(raw));
}

Word Word::pow(int n) const {
    Word base = n >= 0 ? *this : inverse();
    Word acc;
    for (int i = 0; i < std::abs(n); ++i) acc = acc * base;
    return acc;
}

GroupRingElement::GroupRingElement(const Word& w, long long coeff) {
    if (coeff != 0) terms_[w] = coeff;
}

GroupRingElement& GroupRingElement::add_term(const Word& w, long long coeff) {
    if (coeff == 0) return *this;
    auto it = terms_.find(w);
    if (it == terms_.end()) {
        terms_.emplace(w, coeff);
    } else {
        it->second += coeff;
        if (it->second == 0) terms_.erase(it);
    }
    return *this;
}

GroupRingElement GroupRingElement::operator+(const GroupRingElement& o) const {
    GroupRingElement r = *this;
    for (const auto& [w, c] : o.terms_) r.add_term(w, c);
    return r;
}

GroupRingElement GroupRingElement::operator-(const GroupRingElement& o) const {
    GroupRingElement r = *this;
    for (const auto& [w, c] : o.terms_) r.add_term(w, -c);
    return r;
}

GroupRingElement GroupRingElement::operator-() const {
    GroupRingElement r;
    for (const auto& [w, c] : terms_) r.terms_[w] = -c;
    return r;
}

GroupRingElement GroupRingElement::operator*(const GroupRingElement& o) const {
    GroupRingElement r;
    for (const auto& [w1, c1] : terms_)
        for (const auto& [w2, c2] : o.terms_) r.add_term(w1 * w2, c1 * c2);
    return r;
}

GroupRingElement GroupRingElement::left_mul(const Word& w) const {
    GroupRingElement r;
    for (const auto& [t, c] : terms_) r.add_term(w * t, c);
    return r;
}

GroupRingElement fox_derivative(const Word& w, int gen) {
    GroupRingElement out;
    std::vector<Letter> prefix;
    prefix.reserve(w.letters().size());
    for (const Letter& l : w.letters()) {
        if (l.gen == gen) {
            if (l.sign > 0) {
                out.add_term(Word(prefix), 1);
            } else {
                auto pre = prefix;
                pre.push_back(l); // -u g^-1 for a g^-1 occurrence after prefix u
                out.add_term(Word(std::move(pre)), -1);
            }
        }
        prefix.push_back(l);
    }
    return out;
}

GroupRingElement fox_derivative(const GroupRingElement& e, int gen) {
    GroupRingElement out;
    for (const auto& [w, c] : e.terms()) {
        GroupRingElement d = fox_derivative(w, gen);
        for (const auto& [t, dc] : d.terms()) out.add_term(t, dc * c);
    }
    return out;
}

} // namespace tapkit
