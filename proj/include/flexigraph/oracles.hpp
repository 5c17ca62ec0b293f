#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "flexigraph/free_product.hpp"
#include "flexigraph/machine.hpp"
#include "flexigraph/magnus.hpp"
#include "flexigraph/words.hpp"

namespace flexigraph {

// Desk-scale verification drivers shared by the CLI and the acceptance suite.
// Each report carries the claim it tests, so logs are self-describing.

struct TheoremBReport {
    int rank = 0, ell = 0;
    std::uint64_t ball_checked = 0;
    std::vector<std::string> trivial_image; // ball order
    bool short_words_certified_out = false;
    bool trivial_set_exact = false;
    bool pass = false;
    std::string claim;
};

// Scans B(ell): every nontrivial word shorter than ell must be certified out
// of the subgroup generated by ell-th powers and weight-ell commutators, and
// the words with trivial truncated image must be exactly {1, x_i^{+-ell}}.
inline TheoremBReport run_theoremB(int rank, int ell, std::uint64_t cap = UINT64_MAX) {
    TheoremBReport r;
    r.rank = rank;
    r.ell = ell;
    r.claim = "every nontrivial word of length < ell lies outside the subgroup "
              "generated by ell-th powers and weight-ell commutators; at length ell "
              "only the generator powers have trivial truncated image";
    std::vector<FreeWord> trivial;
    bool short_ok = true;
    enumerate_ball(rank, ell, [&](const FreeWord& w) {
        ++r.ball_checked;
        if (in_power_gamma(w, ell) == PowerGammaVerdict::trivial_image) {
            trivial.push_back(w);
            if (!w.empty() && static_cast<int>(w.length()) < ell) short_ok = false;
        }
    }, cap);
    std::vector<FreeWord> expected = {FreeWord(rank)};
    for (int i = 1; i <= rank; ++i) {
        expected.push_back(FreeWord::generator(rank, i, ell));
        expected.push_back(FreeWord::generator(rank, i, -ell));
    }
    std::sort(expected.begin(), expected.end());
    std::vector<FreeWord> got = trivial;
    std::sort(got.begin(), got.end());
    r.short_words_certified_out = short_ok;
    r.trivial_set_exact = got == expected;
    r.pass = r.short_words_certified_out && r.trivial_set_exact;
    for (const FreeWord& w : trivial) r.trivial_image.push_back(w.str());
    return r;
}

struct Lemma43Report {
    int ell = 0;
    std::uint64_t ball_checked = 0;
    std::vector<std::string> members; // members of H found in B(ell), ball order
    bool members_exact = false;
    bool long_witnesses_in = false; // (x2 x3^-1)^{+-ell} at length 2 ell
    bool pass = false;
    std::string claim;
};

inline Lemma43Report run_lemma43(int ell, std::uint64_t cap = UINT64_MAX) {
    Lemma43Report r;
    r.ell = ell;
    r.claim = "no nontrivial word of length < ell lies in the normal closure of "
              "x1^ell and (x2*x3^-1)^ell; at length ell exactly x1^{+-ell} lie in "
              "it, and (x2*x3^-1)^{+-ell} are members of length 2*ell";
    std::vector<FreeWord> members;
    enumerate_ball(3, ell, [&](const FreeWord& w) {
        ++r.ball_checked;
        if (in_H(w, ell)) members.push_back(w);
    }, cap);
    std::vector<FreeWord> expected = {FreeWord(3), FreeWord::generator(3, 1, ell),
                                      FreeWord::generator(3, 1, -ell)};
    std::sort(expected.begin(), expected.end());
    std::vector<FreeWord> got = members;
    std::sort(got.begin(), got.end());
    r.members_exact = got == expected;
    FreeWord x2x3(3);
    x2x3.append_power(2, 1);
    x2x3.append_power(3, -1);
    FreeWord wpos = x2x3.pow(ell), wneg = x2x3.pow(-ell);
    r.long_witnesses_in = in_H(wpos, ell) && in_H(wneg, ell) &&
                          wpos.length() == static_cast<std::size_t>(2 * ell) &&
                          wneg.length() == static_cast<std::size_t>(2 * ell);
    r.pass = r.members_exact && r.long_witnesses_in;
    for (const FreeWord& w : members) r.members.push_back(w.str());
    return r;
}

struct BallsReport {
    int ell = 0, radius = 0;
    std::uint64_t ball_checked = 0;
    std::vector<std::string> members; // sorted normal forms
    std::vector<std::string> expected;
    std::optional<bool> pass; // empty when the radius carries no claim
    std::string claim;
};

// Streams B_*(radius) through the machine and compares with the predicted
// intersection: {1} up to radius 4*ell - 1, and {1, (za^2)^{+-2*ell}} at radii
// 4*ell and 4*ell + 1.
inline BallsReport run_balls(const QuotientMachine& m, int radius,
                             std::uint64_t cap = UINT64_MAX) {
    BallsReport r;
    r.ell = m.ell();
    r.radius = radius;
    r.claim = "exhaustive intersection of the radius-" + std::to_string(radius) +
              " star ball with the kernel of the finite quotient";
    std::vector<AmalgamNF> hits;
    star_ball(radius, [&](const AmalgamNF& nf) {
        ++r.ball_checked;
        if (m.is_in_M(nf)) hits.push_back(nf);
    }, cap);
    std::sort(hits.begin(), hits.end());
    for (const AmalgamNF& nf : hits) r.members.push_back(nf.str());

    std::vector<AmalgamNF> expect = {AmalgamNF()};
    if (radius >= 4 * m.ell()) {
        GWord za2 = GWord::parse("z*a^2");
        expect.push_back(AmalgamNF::of(za2.pow(2 * m.ell())));
        expect.push_back(AmalgamNF::of(za2.pow(-2 * m.ell())));
    }
    std::sort(expect.begin(), expect.end());
    for (const AmalgamNF& nf : expect) r.expected.push_back(nf.str());
    if (radius <= 4 * m.ell() + 1) r.pass = r.members == r.expected;
    return r;
}

struct FoxReport {
    int samples = 0;
    std::uint64_t seed = 0;
    int matches = 0;
    bool pass = false;
    std::string claim;
};

// Seeded random adjacent-distinct power words x_{i1}^{a1}...x_{in}^{an}; the
// Magnus coefficient of X_{i1}...X_{in} must equal the product of the a_j.
inline FoxReport run_fox(int samples, std::uint64_t seed, int rank = 3) {
    FoxReport r;
    r.samples = samples;
    r.seed = seed;
    r.claim = "the Magnus coefficient of the index monomial of an adjacent-distinct "
              "power word equals the product of its exponents";
    std::mt19937_64 rng(seed);
    for (int s = 0; s < samples; ++s) {
        int n = 1 + static_cast<int>(rng() % 5);
        FreeWord w(rank);
        std::vector<int> monomial;
        long long prod = 1;
        int prev = 0;
        for (int j = 0; j < n; ++j) {
            int gen;
            do {
                gen = 1 + static_cast<int>(rng() % rank);
            } while (gen == prev);
            prev = gen;
            long long e = static_cast<long long>(rng() % 8) - 4;
            if (e == 0) e = 4;
            w.append_power(gen, e);
            monomial.push_back(gen);
            prod *= e;
        }
        if (fox_coefficient(w, monomial) == prod) ++r.matches;
    }
    r.pass = r.matches == r.samples;
    return r;
}

// Magnus property battery: multiplicativity and inverse cancellation over the
// given modulus/degree grid, on seeded random reduced words.
struct MagnusPropertyReport {
    int samples = 0;
    std::uint64_t seed = 0;
    int checked = 0, matches = 0;
    bool pass = false;
};

inline FreeWord random_reduced_word(std::mt19937_64& rng, int rank, int len) {
    FreeWord w(rank);
    int prev_key = -1;
    for (int i = 0; i < len; ++i) {
        int key;
        do {
            key = static_cast<int>(rng() % (2 * rank));
        } while (prev_key >= 0 && (key ^ 1) == prev_key);
        prev_key = key;
        w.push({key / 2 + 1, key % 2 == 0 ? 1 : -1});
    }
    return w;
}

inline MagnusPropertyReport run_magnus_properties(int samples, std::uint64_t seed,
                                                  int rank = 3) {
    MagnusPropertyReport r;
    r.samples = samples;
    r.seed = seed;
    std::mt19937_64 rng(seed);
    const long long mods[] = {0, 2, 3, 5};
    const int degs[] = {2, 3, 5};
    for (int s = 0; s < samples; ++s) {
        FreeWord u = random_reduced_word(rng, rank, 1 + static_cast<int>(rng() % 8));
        FreeWord v = random_reduced_word(rng, rank, 1 + static_cast<int>(rng() % 8));
        for (long long m : mods) {
            for (int d : degs) {
                ++r.checked;
                bool ok = magnus(u * v, m, d) == magnus(u, m, d).mul(magnus(v, m, d)) &&
                          magnus(u.inverse(), m, d).mul(magnus(u, m, d)).is_one();
                if (ok) ++r.matches;
            }
        }
    }
    r.pass = r.checked == r.matches;
    return r;
}

} // namespace flexigraph
