#pragma once

#include "tapkit/words.hpp"

#include <string>
#include <vector>

namespace tapkit {

// Finitely presented group with a designated meridian generator. Generators
// are identified by their index into `generators`. Abelianization degrees are
// always computed from the relators (never user-supplied), normalized so the
// meridian has degree 1.
struct Presentation {
    std::vector<std::string> generators;
    std::vector<Word> relators;
    int meridian = 0;
    std::vector<int> degrees; // exponent of t per generator

    int gen_id(const std::string& name) const;
    int deficiency() const {
        return static_cast<int>(generators.size()) - static_cast<int>(relators.size());
    }
};

// Unique integer degree vector with degree(meridian) = 1 and all relators of
// abelianized degree 0. Throws NonCyclicAbelianization if the solution space
// is not one-dimensional or admits no integer normalization.
std::vector<int> abelianization_degrees(const Presentation& p, int meridian);

// Fills p.degrees from p.relators and p.meridian.
void compute_degrees(Presentation& p);

// Word <-> "a b^-1 a" round-trip against a generator name table.
std::string word_to_string(const Word& w, const std::vector<std::string>& names);
Word word_from_string(const std::string& s, const std::vector<std::string>& names);

// Split a presentation into core generators, a chain of generators defined by
// relators of the form g = word(earlier generators), and the residual
// relators. All builder-produced presentations decompose this way, which lets
// representation searches work on the few core unknowns only.
struct DefinitionalChain {
    std::vector<int> core;
    std::vector<std::pair<int, Word>> defined; // (generator, defining word), in order
    std::vector<size_t> residual_relators;     // indices into p.relators
};

DefinitionalChain definitional_chain(const Presentation& p);

} // namespace tapkit
