#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include <randgroup/automata.hpp>
#include <randgroup/blocks.hpp>
#include <randgroup/order.hpp>
#include <randgroup/sampler.hpp>
#include <randgroup/words.hpp>

namespace randgroup {

using Json = nlohmann::json;

/// Single-letter text form, "a3" for a generator and "A3" for its inverse.
inline std::string letter_text(Letter s) {
    if (s == 0) throw std::invalid_argument("letter_text: zero letter");
    std::string out(1, s < 0 ? 'A' : 'a');
    out += std::to_string(generator_of(s));
    return out;
}

inline Letter letter_from_text(const std::string& text) {
    Word w = word_from_text(text);
    if (w.size() != 1) throw std::invalid_argument("letter_from_text: expected one letter");
    return w[0];
}

// ---- words ----------------------------------------------------------------

inline Json word_to_json(const Word& w) {
    Json out = Json::array();
    for (Letter s : w) out.push_back(s);
    return out;
}

inline Word word_from_json(const Json& j, std::optional<Alphabet> alphabet = std::nullopt) {
    if (!j.is_array()) throw std::invalid_argument("word: expected a JSON array of letters");
    std::vector<Letter> letters;
    letters.reserve(j.size());
    for (const auto& item : j) {
        if (!item.is_number_integer())
            throw std::invalid_argument("word: letters must be signed integers");
        auto s = item.get<std::int64_t>();
        if (s == 0) throw std::invalid_argument("word: zero is not a letter");
        if (alphabet && !alphabet->contains(static_cast<Letter>(s)))
            throw std::invalid_argument("word: letter outside the alphabet");
        if (!alphabet && (s > (1 << 30) || s < -(1 << 30)))
            throw std::invalid_argument("word: letter out of range");
        letters.push_back(static_cast<Letter>(s));
    }
    return Word(std::move(letters));
}

// ---- presentations ---------------------------------------------------------

inline Json presentation_to_json(const Presentation& p) {
    Json out;
    out["n"] = p.generators;
    out["L"] = p.length;
    out["d"] = p.density ? Json(*p.density) : Json(nullptr);
    out["seed"] = p.seed ? Json(*p.seed) : Json(nullptr);
    Json relators = Json::array();
    for (const Word& w : p.relators) relators.push_back(word_to_json(w));
    out["relators"] = std::move(relators);
    return out;
}

/// Parse a presentation.  Relators are allowed to be non-reduced; each such
/// relator adds a note to `warnings` when a sink is supplied.
inline Presentation presentation_from_json(const Json& j,
                                           std::vector<std::string>* warnings = nullptr) {
    if (!j.is_object()) throw std::invalid_argument("presentation: expected a JSON object");
    if (!j.contains("n") || !j["n"].is_number_integer())
        throw std::invalid_argument("presentation: missing integer field 'n'");
    if (!j.contains("relators") || !j["relators"].is_array())
        throw std::invalid_argument("presentation: missing array field 'relators'");
    Presentation p;
    p.generators = j["n"].get<int>();
    if (p.generators < 1) throw std::invalid_argument("presentation: need at least one generator");
    Alphabet alphabet(p.generators);
    if (j.contains("L") && !j["L"].is_null()) {
        if (!j["L"].is_number_integer())
            throw std::invalid_argument("presentation: 'L' must be an integer");
        p.length = j["L"].get<int>();
    }
    if (j.contains("d") && !j["d"].is_null()) {
        if (!j["d"].is_number())
            throw std::invalid_argument("presentation: 'd' must be a number or null");
        p.density = j["d"].get<double>();
    }
    if (j.contains("seed") && !j["seed"].is_null()) {
        if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer())
            throw std::invalid_argument("presentation: 'seed' must be an integer or null");
        p.seed = j["seed"].get<std::uint64_t>();
    }
    std::size_t index = 0;
    for (const auto& item : j["relators"]) {
        Word w = word_from_json(item, alphabet);
        if (!is_reduced(w) && warnings)
            warnings->push_back("relator " + std::to_string(index) + " is not freely reduced");
        p.relators.push_back(std::move(w));
        ++index;
    }
    if (p.length == 0)
        for (const Word& w : p.relators)
            p.length = std::max(p.length, static_cast<int>(w.size()));
    return p;
}

// ---- automata ---------------------------------------------------------------

inline Json letter_set_to_json(const LetterSet& set) {
    Json out = Json::array();
    for (Letter s : set.letters()) out.push_back(s);
    return out;
}

inline Json automaton_to_json(const BAutomaton& a) {
    Json out;
    out["n"] = a.n;
    out["sigma_empty"] = letter_set_to_json(a.sigma_empty);
    Json sigma = Json::object();
    for (int r = 0; r < 2 * a.n; ++r)
        sigma[letter_text(letter_at_rank(r))] = letter_set_to_json(a.sigma[r]);
    out["sigma"] = std::move(sigma);
    return out;
}

inline BAutomaton automaton_from_json(const Json& j) {
    if (!j.is_object()) throw std::invalid_argument("automaton: expected a JSON object");
    if (!j.contains("n") || !j["n"].is_number_integer())
        throw std::invalid_argument("automaton: missing integer field 'n'");
    int n = j["n"].get<int>();
    if (n < 1) throw std::invalid_argument("automaton: need at least one generator");
    Alphabet alphabet(n);
    BAutomaton a(n);
    auto fill = [&](LetterSet& set, const Json& arr, const char* what) {
        if (!arr.is_array())
            throw std::invalid_argument(std::string("automaton: ") + what + " must be an array");
        for (const auto& item : arr) {
            if (!item.is_number_integer())
                throw std::invalid_argument("automaton: letters must be signed integers");
            auto s = item.get<std::int64_t>();
            if (s == 0 || !alphabet.contains(static_cast<Letter>(s)))
                throw std::invalid_argument("automaton: letter outside the alphabet");
            set.insert(static_cast<Letter>(s));
        }
    };
    if (j.contains("sigma_empty")) fill(a.sigma_empty, j["sigma_empty"], "sigma_empty");
    if (j.contains("sigma")) {
        if (!j["sigma"].is_object())
            throw std::invalid_argument("automaton: 'sigma' must be an object");
        for (const auto& [key, value] : j["sigma"].items()) {
            Letter s = letter_from_text(key);
            if (!alphabet.contains(s))
                throw std::invalid_argument("automaton: sigma key outside the alphabet");
            fill(a.sigma[static_cast<std::size_t>(letter_rank(s))], value, "sigma entry");
        }
    }
    return a;
}

// ---- certificates -----------------------------------------------------------

inline Json certificate_to_json(const ObstructionCertificate& cert) {
    Json out;
    out["n"] = cert.generators;
    out["route"] = to_string(cert.route);
    Json witnesses = Json::array();
    for (const PairWitness& w : cert.witnesses) {
        Json entry;
        entry["signs"] = w.signs;
        entry["i"] = w.index;
        entry["relator"] = w.relator;
        witnesses.push_back(std::move(entry));
    }
    out["witnesses"] = std::move(witnesses);
    return out;
}

inline Json first_failure_to_json(const FirstFailure& failure) {
    Json out;
    out["signs"] = failure.signs;
    out["i"] = failure.index;
    return out;
}

// ---- associated sets ---------------------------------------------------------

/// Associated-set artifact: a presentation over the block alphabet plus the
/// section describing how that alphabet was built.
inline Json associated_set_to_json(const AssociatedSet& set, const BlockAlphabet& blocks) {
    Json out;
    out["n"] = blocks.generators();
    out["L"] = set.hat_length;
    out["d"] = nullptr;
    out["seed"] = nullptr;
    Json relators = Json::array();
    for (const Word& w : set.relators) relators.push_back(word_to_json(w));
    out["relators"] = std::move(relators);
    out["block_alphabet"] = {{"n", blocks.base().generators()},
                             {"B", blocks.block_length()},
                             {"shift", set.shift},
                             {"partition_rule", "rank-lex-min"}};
    return out;
}

// ---- files -------------------------------------------------------------------

inline Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    Json j;
    try {
        in >> j;
    } catch (const Json::parse_error& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
    return j;
}

inline void save_json_file(const std::string& path, const Json& j, int indent = 2) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << j.dump(indent) << '\n';
    if (!out) throw std::runtime_error("failed writing " + path);
}

inline std::string json_text(const Json& j, int indent = 2) { return j.dump(indent) + "\n"; }

}  // namespace randgroup
