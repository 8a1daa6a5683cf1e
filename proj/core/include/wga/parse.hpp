#pragma once

#include <string>

#include "wga/algebra.hpp"
#include "wga/group.hpp"
#include "wga/representation.hpp"
#include "wga/spectrum.hpp"
#include "wga/weight.hpp"

namespace wga {

/// Parse errors carry a character position into the offending text.
class ParseError : public DomainError {
  public:
    ParseError(const std::string& what, std::size_t position)
        : DomainError(what + " (at position " + std::to_string(position) + ")"),
          position(position) {}

    std::size_t position;
};

/// "Z", "Z^2xZ_4", "Z_6", "1" (trivial).
GroupSpec parse_group_spec(const std::string& text);

/// Per-axis factors joined with "*": "poly:1", "exp:0.7", "subexp:1,0.5",
/// "const:1", "table:[1,2,4]", "table:[4,2,1,0.5]@-2:clamp".
Weight parse_weight(const std::string& text, const GroupSpec& spec);

/// JSON list of [coordinates, re, im] triples, e.g. [[[0],1,0],[[1],0,1]].
AlgebraElement parse_element(const std::string& text, const GroupSpec& spec);

/// JSON object {"free":[{"re":..,"im":..},...],"torsion":[k,...]}.
Character parse_character(const std::string& text, const GroupSpec& spec);

/// JSON list of {"character": {...}, "mass": c}, validated against cs.
SpectralMeasure parse_measure(const std::string& text, const CharacterSpace& cs);

/// JSON list of characters.
std::vector<Character> parse_character_list(const std::string& text, const GroupSpec& spec);

std::string element_to_json(const AlgebraElement& f);
std::string character_to_json(const Character& chi);

} // namespace wga
