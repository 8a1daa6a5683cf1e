#include "wga/parse.hpp"

#include <nlohmann/json.hpp>

#include <cctype>
#include <cmath>
#include <sstream>

namespace wga {

using nlohmann::json;

namespace {

json parse_json(const std::string& text, const char* what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& err) {
        throw ParseError(std::string(what) + ": " + err.what(), err.byte);
    }
}

Complex json_complex(const json& j, const char* what) {
    if (j.is_number()) return Complex{j.get<double>(), 0.0};
    if (j.is_object() && j.contains("re"))
        return Complex{j.at("re").get<double>(), j.value("im", 0.0)};
    throw ParseError(std::string(what) + ": expected a number or {re, im} object", 0);
}

} // namespace

GroupSpec parse_group_spec(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s == "1" || s == "0" || s.empty()) return GroupSpec(0, {});

    int free_rank = 0;
    std::vector<std::int64_t> torsion;
    std::size_t pos = 0;
    bool first = true;
    while (pos < s.size()) {
        if (!first) {
            if (s[pos] != 'x' && s[pos] != 'X' && s[pos] != '*')
                throw ParseError("group spec: expected 'x' between axes", pos);
            ++pos;
        }
        first = false;
        if (pos >= s.size() || (s[pos] != 'Z' && s[pos] != 'z'))
            throw ParseError("group spec: expected 'Z'", pos);
        ++pos;
        if (pos < s.size() && s[pos] == '^') {
            ++pos;
            std::size_t len = 0;
            int d = 0;
            try {
                d = std::stoi(s.substr(pos), &len);
            } catch (const std::exception&) {
                throw ParseError("group spec: bad free rank", pos);
            }
            if (d < 1) throw ParseError("group spec: free rank must be >= 1", pos);
            free_rank += d;
            pos += len;
        } else if (pos < s.size() && s[pos] == '_') {
            ++pos;
            std::size_t len = 0;
            long long m = 0;
            try {
                m = std::stoll(s.substr(pos), &len);
            } catch (const std::exception&) {
                throw ParseError("group spec: bad torsion order", pos);
            }
            if (m < 2) throw ParseError("group spec: torsion orders must be >= 2", pos);
            torsion.push_back(m);
            pos += len;
        } else {
            free_rank += 1; // bare "Z"
        }
    }
    return GroupSpec(free_rank, std::move(torsion));
}

namespace {

AxisFactor parse_axis_factor(const std::string& s, std::size_t base_pos) {
    auto colon = s.find(':');
    std::string kind = s.substr(0, colon);
    std::string arg = colon == std::string::npos ? "" : s.substr(colon + 1);

    auto one_number = [&](const char* what) {
        try {
            std::size_t len = 0;
            double v = std::stod(arg, &len);
            if (len != arg.size()) throw std::invalid_argument("trailing characters");
            return v;
        } catch (const std::exception&) {
            throw ParseError(std::string(what) + ": expected a number after ':'", base_pos);
        }
    };

    if (kind == "const") return ConstantFactor{one_number("const factor")};
    if (kind == "poly") return PolyFactor{one_number("poly factor")};
    if (kind == "exp") return ExpFactor{one_number("exp factor")};
    if (kind == "subexp") {
        auto comma = arg.find(',');
        if (comma == std::string::npos)
            throw ParseError("subexp factor: expected 'rate,beta'", base_pos);
        try {
            return SubexpFactor{std::stod(arg.substr(0, comma)), std::stod(arg.substr(comma + 1))};
        } catch (const std::exception&) {
            throw ParseError("subexp factor: bad numbers", base_pos);
        }
    }
    if (kind == "table") {
        TableFactor t;
        std::string rest = arg;
        // trailing ":clamp" / ":strict"
        auto ext = rest.rfind(":clamp");
        if (ext != std::string::npos && ext == rest.size() - 6) {
            t.extension = TableExtension::Clamp;
            rest = rest.substr(0, ext);
        } else {
            ext = rest.rfind(":strict");
            if (ext != std::string::npos && ext == rest.size() - 7) rest = rest.substr(0, ext);
        }
        auto at = rest.rfind('@');
        if (at != std::string::npos) {
            try {
                t.window_lo = std::stoll(rest.substr(at + 1));
            } catch (const std::exception&) {
                throw ParseError("table factor: bad window start after '@'", base_pos + at);
            }
            rest = rest.substr(0, at);
        }
        if (rest.size() < 2 || rest.front() != '[' || rest.back() != ']')
            throw ParseError("table factor: expected '[v1,v2,...]'", base_pos);
        std::stringstream ss(rest.substr(1, rest.size() - 2));
        std::string item;
        while (std::getline(ss, item, ',')) {
            try {
                t.values.push_back(std::stod(item));
            } catch (const std::exception&) {
                throw ParseError("table factor: bad value '" + item + "'", base_pos);
            }
        }
        return t;
    }
    throw ParseError("unknown weight factor '" + kind + "'", base_pos);
}

} // namespace

Weight parse_weight(const std::string& text, const GroupSpec& spec) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;

    std::vector<AxisFactor> factors;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        // split on '*' at depth 0 (brackets may contain commas, not stars)
        std::size_t next = s.find('*', pos);
        std::string piece = s.substr(pos, next == std::string::npos ? next : next - pos);
        if (piece.empty()) throw ParseError("weight: empty axis factor", pos);
        factors.push_back(parse_axis_factor(piece, pos));
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    if (factors.size() == 1 && spec.num_axes() > 1) {
        // a single factor broadcasts across all axes
        std::vector<AxisFactor> all(spec.num_axes(), factors[0]);
        return Weight(spec, std::move(all));
    }
    return Weight(spec, std::move(factors));
}

AlgebraElement parse_element(const std::string& text, const GroupSpec& spec) {
    json j = parse_json(text, "element literal");
    if (!j.is_array()) throw ParseError("element literal: expected a JSON array of triples", 0);
    AlgebraElement f(spec);
    for (const auto& triple : j) {
        if (!triple.is_array() || triple.size() != 3 || !triple[0].is_array())
            throw ParseError("element literal: each entry is [[coords...], re, im]", 0);
        std::vector<std::int64_t> coords;
        for (const auto& c : triple[0]) coords.push_back(c.get<std::int64_t>());
        f.add_at(make_element(spec, coords),
                 Complex{triple[1].get<double>(), triple[2].get<double>()});
    }
    return f;
}

namespace {

Character character_from_json(const json& j, const GroupSpec& spec) {
    if (!j.is_object()) throw ParseError("character literal: expected a JSON object", 0);
    std::vector<Complex> free_coords;
    if (j.contains("free"))
        for (const auto& z : j.at("free")) free_coords.push_back(json_complex(z, "character"));
    std::vector<std::int64_t> torsion;
    if (j.contains("torsion"))
        for (const auto& k : j.at("torsion")) torsion.push_back(k.get<std::int64_t>());
    return make_character(spec, std::move(free_coords), std::move(torsion));
}

} // namespace

Character parse_character(const std::string& text, const GroupSpec& spec) {
    return character_from_json(parse_json(text, "character literal"), spec);
}

std::vector<Character> parse_character_list(const std::string& text, const GroupSpec& spec) {
    json j = parse_json(text, "character list");
    if (!j.is_array()) throw ParseError("character list: expected a JSON array", 0);
    std::vector<Character> out;
    for (const auto& item : j) out.push_back(character_from_json(item, spec));
    return out;
}

SpectralMeasure parse_measure(const std::string& text, const CharacterSpace& cs) {
    json j = parse_json(text, "measure literal");
    if (!j.is_array()) throw ParseError("measure literal: expected a JSON array of atoms", 0);
    std::vector<SpectralMeasure::Atom> atoms;
    for (const auto& item : j) {
        if (!item.is_object() || !item.contains("character") || !item.contains("mass"))
            throw ParseError("measure literal: each atom is {character, mass}", 0);
        atoms.push_back({character_from_json(item.at("character"), cs.spec),
                         item.at("mass").get<double>()});
    }
    return make_spectral_measure(cs, std::move(atoms));
}

std::string element_to_json(const AlgebraElement& f) {
    json j = json::array();
    for (const auto& [x, a] : f.support()) {
        json coords = json::array();
        for (auto v : x.free) coords.push_back(v);
        for (auto v : x.torsion) coords.push_back(v);
        j.push_back(json::array({coords, a.real(), a.imag()}));
    }
    return j.dump();
}

std::string character_to_json(const Character& chi) {
    json j;
    j["free"] = json::array();
    for (const auto& z : chi.free_coords) j["free"].push_back({{"re", z.real()}, {"im", z.imag()}});
    j["torsion"] = chi.torsion_indices;
    return j.dump();
}

} // namespace wga
