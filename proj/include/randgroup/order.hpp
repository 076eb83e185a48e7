// order.hpp -- certificates that a presented group admits no left order
//
// For a sign vector eps and a generator index i, call a relator a witness
// when, as written, it uses only letters from the cone {a_1^(eps_1), ...,
// a_n^(eps_n)} and mentions a_i^(eps_i) at least once. A presentation that
// produces a witness for every (eps, i) pair cannot present a non-trivial
// left-orderable group. Two search routes are provided: a direct scan of
// each relator, and acceptance by the sign automaton, which additionally
// requires the witness to start with a_i^(eps_i) and is therefore stricter.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "randgroup/automata.hpp"
#include "randgroup/errors.hpp"
#include "randgroup/sampler.hpp"
#include "randgroup/words.hpp"

namespace randgroup {

/// The letter a_i^(eps_i) as a signed integer.
inline Letter cone_letter(const SignVector& signs, int i) {
    return static_cast<Letter>(signs[static_cast<std::size_t>(i - 1)] * i);
}

/// Sign vector number `mask` in the fixed enumeration: bit j of the mask set
/// means generator j+1 carries sign -1.
inline SignVector sign_vector_from_mask(int n, std::uint64_t mask) {
    SignVector signs(static_cast<std::size_t>(n), +1);
    for (int j = 0; j < n; ++j)
        if (mask & (std::uint64_t{1} << j)) signs[static_cast<std::size_t>(j)] = -1;
    return signs;
}

/// True when every letter of w, as written, lies in the cone of eps.
inline bool uses_only_positive_letters(const Word& w, const SignVector& signs) {
    const int n = static_cast<int>(signs.size());
    for (Letter s : w) {
        const int g = generator_of(s);
        if (g > n || s != cone_letter(signs, g)) return false;
    }
    return true;
}

inline bool contains_letter(const Word& w, Letter s) {
    for (Letter t : w)
        if (t == s) return true;
    return false;
}

enum class CertifyRoute { scan, language };

inline std::string to_string(CertifyRoute r) {
    return r == CertifyRoute::scan ? "scan" : "language";
}

/// Witness relator for one (eps, i) pair.
struct PairWitness {
    SignVector signs;
    int index = 0;               // generator index i
    std::size_t relator = 0;     // position in the presentation
    friend bool operator==(const PairWitness&, const PairWitness&) = default;
};

/// One witness per (eps, i) pair, in enumeration order: sign masks
/// ascending, generator index ascending within each mask.
struct ObstructionCertificate {
    int generators = 0;
    CertifyRoute route = CertifyRoute::scan;
    std::vector<PairWitness> witnesses;
};

/// The first (eps, i) pair with no witness, in enumeration order.
struct FirstFailure {
    SignVector signs;
    int index = 0;
};

struct CertifyResult {
    std::optional<ObstructionCertificate> certificate;
    std::optional<FirstFailure> first_failure;
    bool certified() const noexcept { return certificate.has_value(); }
};

/// Index of the first relator witnessing (signs, i) under the given route,
/// scanning the presentation in order.
inline std::optional<std::size_t> find_positive_relator(const Presentation& p,
                                                        const SignVector& signs,
                                                        int i, CertifyRoute route) {
    validate_signs(signs, p.generators);
    if (i < 1 || i > p.generators)
        throw std::invalid_argument("find_positive_relator: generator index out of range");
    if (route == CertifyRoute::language) {
        const BAutomaton a = make_sign_automaton(p.generators, signs, i);
        for (std::size_t r = 0; r < p.relators.size(); ++r)
            if (accepts(a, p.relators[r])) return r;
        return std::nullopt;
    }
    const Letter target = cone_letter(signs, i);
    for (std::size_t r = 0; r < p.relators.size(); ++r) {
        const Word& w = p.relators[r];
        if (uses_only_positive_letters(w, signs) && contains_letter(w, target))
            return r;
    }
    return std::nullopt;
}

/// Searches every (eps, i) pair for a witness. Stops at the first pair with
/// none; the result then carries that pair instead of a certificate.
/// 2^n * n pairs are visited, so n is capped to keep runs enumerable.
inline CertifyResult certify_obstruction(const Presentation& p,
                                         CertifyRoute route = CertifyRoute::scan) {
    const int n = p.generators;
    if (n < 1) throw std::invalid_argument("certify_obstruction: need n >= 1");
    if (n > 20)
        throw BudgetError("certify_obstruction: 2^n * n pairs exceed the search budget");
    for (const Word& w : p.relators)
        for (Letter s : w)
            if (generator_of(s) > n)
                throw std::invalid_argument("certify_obstruction: relator letter outside alphabet");

    ObstructionCertificate cert;
    cert.generators = n;
    cert.route = route;
    cert.witnesses.reserve((std::size_t{1} << n) * static_cast<std::size_t>(n));
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        const SignVector signs = sign_vector_from_mask(n, mask);
        for (int i = 1; i <= n; ++i) {
            const auto hit = find_positive_relator(p, signs, i, route);
            if (!hit) {
                CertifyResult res;
                res.first_failure = FirstFailure{signs, i};
                return res;
            }
            cert.witnesses.push_back(PairWitness{signs, i, *hit});
        }
    }
    CertifyResult res;
    res.certificate = std::move(cert);
    return res;
}

/// Convenience wrapper for the stricter automaton route.
inline CertifyResult certify_via_languages(const Presentation& p) {
    return certify_obstruction(p, CertifyRoute::language);
}

} // namespace randgroup
