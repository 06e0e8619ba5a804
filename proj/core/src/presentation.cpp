#include "tapkit/presentation.hpp"

#include "tapkit/errors.hpp"
#include "tapkit/scalars.hpp"

#include <sstream>

namespace tapkit {

int Presentation::gen_id(const std::string& name) const {
    for (size_t i = 0; i < generators.size(); ++i)
        if (generators[i] == name) return static_cast<int>(i);
    throw unknown_generator("no generator named '" + name + "'");
}

std::vector<int> abelianization_degrees(const Presentation& p, int meridian) {
    const size_t n = p.generators.size();
    const size_t m = p.relators.size();
    if (meridian < 0 || static_cast<size_t>(meridian) >= n)
        throw unknown_generator("meridian index out of range");

    // Exponent-sum matrix, one row per relator.
    std::vector<std::vector<Rational>> a(m, std::vector<Rational>(n, 0));
    for (size_t i = 0; i < m; ++i)
        for (const Letter& l : p.relators[i].letters()) a[i][l.gen] += l.sign;

    // Gaussian elimination over Q.
    std::vector<int> pivot_col;
    size_t row = 0;
    for (size_t col = 0; col < n && row < m; ++col) {
        size_t sel = row;
        while (sel < m && a[sel][col] == 0) ++sel;
        if (sel == m) continue;
        std::swap(a[sel], a[row]);
        Rational inv = Rational(1) / a[row][col];
        for (size_t j = col; j < n; ++j) a[row][j] *= inv;
        for (size_t i = 0; i < m; ++i) {
            if (i == row || a[i][col] == 0) continue;
            Rational f = a[i][col];
            for (size_t j = col; j < n; ++j) a[i][j] -= f * a[row][j];
        }
        pivot_col.push_back(static_cast<int>(col));
        ++row;
    }
    const size_t rank = row;
    if (rank + 1 != n)
        throw non_cyclic_abelianization("abelianized relator matrix has nullity " +
                                        std::to_string(n - rank) + ", expected 1");

    // The one free column parametrizes the nullspace.
    std::vector<bool> is_pivot(n, false);
    for (int c : pivot_col) is_pivot[c] = true;
    size_t free_col = 0;
    while (free_col < n && is_pivot[free_col]) ++free_col;

    std::vector<Rational> v(n, 0);
    v[free_col] = 1;
    for (size_t r = 0; r < rank; ++r) v[pivot_col[r]] = -a[r][free_col];

    if (v[meridian] == 0)
        throw non_cyclic_abelianization("meridian has abelianized degree 0");
    Rational scale = Rational(1) / v[meridian];
    std::vector<int> deg(n);
    for (size_t i = 0; i < n; ++i) {
        Rational d = v[i] * scale;
        if (boost::multiprecision::denominator(d) != 1)
            throw non_cyclic_abelianization("no integer normalization with meridian degree 1");
        deg[i] = boost::multiprecision::numerator(d).convert_to<int>();
    }
    return deg;
}

void compute_degrees(Presentation& p) { p.degrees = abelianization_degrees(p, p.meridian); }

std::string word_to_string(const Word& w, const std::vector<std::string>& names) {
    if (w.is_identity()) return "";
    std::ostringstream os;
    bool first = true;
    for (const Letter& l : w.letters()) {
        if (!first) os << ' ';
        first = false;
        os << names.at(l.gen);
        if (l.sign < 0) os << "^-1";
    }
    return os.str();
}

DefinitionalChain definitional_chain(const Presentation& p) {
    DefinitionalChain chain;
    std::vector<bool> resolved(p.generators.size(), false);
    std::vector<bool> relator_used(p.relators.size(), false);

    for (size_t g = 0; g < p.generators.size(); ++g) {
        bool found = false;
        for (size_t r = 0; r < p.relators.size() && !found; ++r) {
            if (relator_used[r]) continue;
            const auto& letters = p.relators[r].letters();
            int count = 0;
            size_t pos = 0;
            bool others_resolved = true;
            for (size_t i = 0; i < letters.size(); ++i) {
                if (letters[i].gen == static_cast<int>(g)) {
                    ++count;
                    pos = i;
                } else if (!resolved[letters[i].gen]) {
                    others_resolved = false;
                }
            }
            if (count != 1 || !others_resolved) continue;
            // r = u g^e v = 1, so g = (u^-1 v^-1)^e.
            std::vector<Letter> u(letters.begin(), letters.begin() + pos);
            std::vector<Letter> v(letters.begin() + pos + 1, letters.end());
            Word def = Word(u).inverse() * Word(v).inverse();
            if (letters[pos].sign < 0) def = def.inverse();
            chain.defined.emplace_back(static_cast<int>(g), def);
            relator_used[r] = true;
            resolved[g] = true;
            found = true;
        }
        if (!found) {
            chain.core.push_back(static_cast<int>(g));
            resolved[g] = true;
        }
    }
    for (size_t r = 0; r < p.relators.size(); ++r)
        if (!relator_used[r]) chain.residual_relators.push_back(r);
    return chain;
}

Word word_from_string(const std::string& s, const std::vector<std::string>& names) {
    std::istringstream is(s);
    std::string tok;
    std::vector<Letter> letters;
    while (is >> tok) {
        int sign = 1;
        size_t caret = tok.find('^');
        std::string name = tok;
        if (caret != std::string::npos) {
            name = tok.substr(0, caret);
            std::string e = tok.substr(caret + 1);
            if (e != "-1" && e != "1")
                throw parse_error("unsupported exponent '" + e + "' in word (use ^-1)");
            if (e == "-1") sign = -1;
        }
        int id = -1;
        for (size_t i = 0; i < names.size(); ++i)
            if (names[i] == name) id = static_cast<int>(i);
        if (id < 0) throw unknown_generator("word mentions unknown generator '" + name + "'");
        letters.push_back(Letter{id, sign});
    }
    return Word(std::move(letters));
}

} // namespace tapkit
