#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "flexigraph/free_product.hpp"
#include "flexigraph/magnus.hpp"
#include "flexigraph/oracles.hpp"
#include "flexigraph/presentation.hpp"

using namespace flexigraph;

TEST_CASE("magnus basics", "[membership]") {
    CHECK(magnus(FreeWord(3), 0, 3).is_one());

    TruncSeries s = magnus(FreeWord::generator(3, 1), 0, 3);
    CHECK(s.coeff({}) == 1);
    CHECK(s.coeff({1}) == 1);
    CHECK(s.coeff({1, 1}) == 0);

    TruncSeries si = magnus(FreeWord::generator(3, 1, -1), 0, 3);
    CHECK(si.coeff({1}) == -1);
    CHECK(si.coeff({1, 1}) == 1);
    CHECK(si.mul(s).is_one());

    // the constant term of every image is 1
    std::mt19937_64 rng(59);
    for (int trial = 0; trial < 50; ++trial) {
        FreeWord w = random_reduced_word(rng, 3, 1 + rng() % 10);
        CHECK(magnus(w, 0, 4).coeff({}) == 1);
        CHECK(magnus(w, 5, 4).coeff({}) == 1);
    }
}

TEST_CASE("magnus is multiplicative with truncated inverses", "[membership]") {
    MagnusPropertyReport r = run_magnus_properties(200, 97);
    CHECK(r.pass);
    CHECK(r.checked == 200 * 4 * 3);
}

TEST_CASE("fox coefficients", "[membership]") {
    CHECK(fox_coefficient(FreeWord::generator(3, 1), {1}) == 1);
    CHECK(fox_coefficient(FreeWord::generator(3, 1, -1), {1}) == -1);
    FreeWord w = parse_free_word("x1^2*x2^3", 3);
    CHECK(fox_coefficient(w, {1, 2}) == 6);

    FoxReport r = run_fox(1000, 7);
    CHECK(r.matches == 1000);
}

TEST_CASE("power-gamma verdicts", "[membership]") {
    CHECK(in_power_gamma(FreeWord::generator(3, 1, 2), 2) ==
          PowerGammaVerdict::trivial_image);
    CHECK(in_power_gamma(parse_free_word("x1^-1*x2^-1*x1*x2", 3), 2) ==
          PowerGammaVerdict::trivial_image); // commutator has no degree-1 part
    CHECK(in_power_gamma(parse_free_word("x1*x2*x1", 3), 3) ==
          PowerGammaVerdict::certified_out);
    CHECK_THROWS_AS(in_power_gamma(FreeWord(3), 4), Error); // ell must be prime
}

TEST_CASE("trivial image forces zero abelianization mod ell", "[membership]") {
    std::mt19937_64 rng(41);
    for (int ell : {2, 3, 5}) {
        for (int trial = 0; trial < 300; ++trial) {
            FreeWord w = random_reduced_word(rng, 3, 1 + rng() % 6);
            if (in_power_gamma(w, ell) == PowerGammaVerdict::trivial_image) {
                for (long long e : w.abelianize()) CHECK(e % ell == 0);
            }
        }
    }
}

TEST_CASE("verbal-subgroup desk verification across the grid", "[membership]") {
    for (int rank : {2, 3}) {
        for (int ell : {2, 3, 5}) {
            TheoremBReport r = run_theoremB(rank, ell);
            INFO("rank " << rank << " ell " << ell);
            CHECK(r.pass);
            CHECK(r.trivial_image.size() == 1 + 2 * static_cast<std::size_t>(rank));
        }
    }
}

TEST_CASE("free product normal form", "[membership]") {
    for (int ell : {2, 3, 5}) {
        CHECK(fp_normal_form(FreeWord::generator(3, 1, ell), ell).empty());
        FreeWord w232 = parse_free_word("x2*x3*x2", 3);
        CHECK(fp_normal_form(w232, ell).syllables().size() == 3);
        FPWord z3 = fp_normal_form(FreeWord::generator(3, 3, ell), ell);
        REQUIRE(z3.syllables().size() == 1);
        CHECK(z3.syllables()[0].exp == ell); // infinite-order factor
    }
}

TEST_CASE("normal closure membership oracle", "[membership]") {
    for (int ell : {2, 3, 5}) {
        CHECK(in_H(FreeWord::generator(3, 1, ell), ell));
        FreeWord x2x3 = parse_free_word("x2*x3^-1", 3);
        CHECK(in_H(x2x3.pow(ell), ell));
        CHECK(x2x3.pow(ell).length() == static_cast<std::size_t>(2 * ell));
    }
    CHECK(!in_H(FreeWord::generator(3, 2, 2), 2)); // x2^2 at ell = 2
}

TEST_CASE("normal closure desk verification", "[membership]") {
    for (int ell : {2, 3, 5}) {
        Lemma43Report r = run_lemma43(ell);
        INFO("ell " << ell);
        CHECK(r.pass);
        CHECK(r.members.size() == 3);
    }
}
