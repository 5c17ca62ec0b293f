#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <unordered_set>

#include "flexigraph/machine.hpp"
#include "flexigraph/oracles.hpp"
#include "flexigraph/presentation.hpp"
#include "flexigraph/todd_coxeter.hpp"

using namespace flexigraph;

TEST_CASE("quotient group orders and generators", "[nilq]") {
    PGroup p2(2);
    CHECK(p2.order() == 64);
    CHECK(p2.gen(1).a == std::array<int, 3>{1, 0, 0});

    PGroup p3(3);
    CHECK(p3.order() == 5832);
    CHECK(p3.pow(p3.gen(1), 6) == p3.id());
    CHECK(p3.pow(p3.mul(p3.gen(1), p3.gen(2)), 6) == p3.id());

    CHECK_THROWS_AS(PGroup(5), Error);
    try {
        PGroup(5);
    } catch (const Error& e) {
        CHECK(e.kind() == Error::Kind::resource);
    }
}

TEST_CASE("collection product is associative and of exponent 2*ell", "[nilq]") {
    // exhaustive triples for ell = 2
    PGroup p2(2);
    std::vector<PElement> all2 = p2.elements();
    std::uint64_t bad = 0;
    for (const PElement& x : all2)
        for (const PElement& y : all2)
            for (const PElement& z : all2)
                if (!(p2.mul(p2.mul(x, y), z) == p2.mul(x, p2.mul(y, z)))) ++bad;
    CHECK(bad == 0);
    for (const PElement& x : all2) CHECK(p2.pow(x, 4) == p2.id());

    // randomized triples for ell = 3, generators exhaustive
    PGroup p3(3);
    std::mt19937_64 rng(3);
    std::vector<PElement> all3 = p3.elements();
    auto rand_elem = [&]() { return all3[rng() % all3.size()]; };
    bad = 0;
    for (int trial = 0; trial < 100000; ++trial) {
        PElement x = rand_elem(), y = rand_elem(), z = rand_elem();
        if (!(p3.mul(p3.mul(x, y), z) == p3.mul(x, p3.mul(y, z)))) ++bad;
    }
    CHECK(bad == 0);
    for (int i = 1; i <= 3; ++i) CHECK(p3.pow(p3.gen(i), 6) == p3.id());
    for (int trial = 0; trial < 200; ++trial) CHECK(p3.pow(rand_elem(), 6) == p3.id());
}

TEST_CASE("induced automorphisms", "[nilq]") {
    PGroup P(2);
    auto& kr = kernel_rewriter();
    AutoMap az = induce_automorphism(P, kr.conj_action('z'));
    PElement x1 = P.gen(1);
    CHECK(apply(P, az, x1).a == std::array<int, 3>{3, 0, 0});

    AutoMap aa = induce_automorphism(P, kr.conj_action('a'));
    CHECK(apply(P, aa, x1).a == std::array<int, 3>{0, 3, 1}); // (0,-1,1) mod 4

    // a^4 = 1 in G, so the fourth power of the action is the identity map
    for (int i = 1; i <= 3; ++i) {
        PElement v = P.gen(i);
        PElement w = v;
        for (int k = 0; k < 4; ++k) w = apply(P, aa, w);
        CHECK(w == v);
    }

    // a non-bijective assignment is rejected
    std::array<FreeWord, 3> bad = {FreeWord::generator(3, 1, 2), FreeWord::generator(3, 2),
                                   FreeWord::generator(3, 3)};
    CHECK_THROWS_AS(induce_automorphism(P, bad), Error);
}

TEST_CASE("invariant closure", "[nilq]") {
    PGroup P(2);
    auto& kr = kernel_rewriter();
    std::vector<AutoMap> autos;
    for (char g : {'a', 'b', 'z'}) autos.push_back(induce_automorphism(P, kr.conj_action(g)));

    InvariantSubgroup triv(P, {P.id()}, autos);
    CHECK(triv.order() == 1);

    InvariantSubgroup mbar(P, {P.eval(FreeWord::generator(3, 1, 2))}, autos);
    CHECK(mbar.order() == 4);
    PElement m1;
    m1.a = {2, 0, 0};
    PElement m2;
    m2.a = {0, 2, 2};
    CHECK(mbar.contains(P, m1));
    CHECK(mbar.contains(P, m2));
    // closure is invariant under every automorphism
    for (const AutoMap& f : autos)
        for (const PElement& e : mbar.elements()) CHECK(mbar.contains(P, apply(P, f, e)));
}

TEST_CASE("machine kills the relators and x1^ell, and nothing it should not",
          "[nilq]") {
    for (int ell : {2, 3}) {
        QuotientMachine m(ell);
        INFO("ell " << ell);
        CHECK(m.order() == 16 * m.Q_order());
        CHECK(m.P_order() % m.Q_order() == 0); // Q is a quotient of P
        for (const char* rel : {"a^4", "b^2", "a*b*a*b", "z^2", "a*b*z*a*b*z"})
            CHECK(m.is_in_M(GWord::parse(rel)));
        CHECK(m.is_in_M(expand_kernel_word(FreeWord::generator(3, 1, ell))));
        CHECK(!m.is_in_M(expand_kernel_word(FreeWord::generator(3, 2, ell))));
        CHECK(!m.is_in_M(expand_kernel_word(FreeWord::generator(3, 3, ell))));
        CHECK(m.is_in_M(GWord::parse("z*a^2").pow(2 * ell)));
    }
}

TEST_CASE("machine is a homomorphic image of G", "[nilq]") {
    std::mt19937_64 rng(7);
    const char gens[3] = {'a', 'b', 'z'};
    auto random_gword = [&](int len) {
        GWord w;
        for (int i = 0; i < len; ++i)
            w.append(gens[rng() % 3], static_cast<long long>(rng() % 5) - 2);
        return w;
    };
    for (int ell : {2, 3}) {
        QuotientMachine m(ell);
        for (int trial = 0; trial < 500; ++trial) {
            GWord u = random_gword(1 + rng() % 5), v = random_gword(1 + rng() % 5);
            CHECK(m.image_of(u * v) == m.mul(m.image_of(u), m.image_of(v)));
            CHECK(m.mul(m.image_of(u), m.inv(m.image_of(u))) == m.identity());
        }
        // normal-form-equal words have equal images, and kernel words land in
        // the kernel-part fibre
        for (int trial = 0; trial < 200; ++trial) {
            GWord u = random_gword(1 + rng() % 5);
            CHECK(m.image_of(u) == m.image_of(AmalgamNF::of(u)));
        }
        FreeWord x1l = FreeWord::generator(3, 1, ell);
        CHECK(m.image_of_kernel(x1l) == m.identity());
        CHECK(m.image_of_kernel(x1l) == m.image_of(expand_kernel_word(x1l)));
        FreeWord x2l = FreeWord::generator(3, 2, ell);
        CHECK(m.image_of_kernel(x2l) == m.image_of(expand_kernel_word(x2l)));
    }
}

TEST_CASE("machine summaries", "[nilq]") {
    QuotientMachine m2(2);
    CHECK(m2.P_order() == 64);
    CHECK(m2.Mbar_order() == 4);
    CHECK(m2.Q_order() == 16);
    CHECK(m2.order() == 256);

    QuotientMachine m3(3);
    CHECK(m3.P_order() == 5832);
    CHECK(m3.Mbar_order() == 4);
    CHECK(m3.Q_order() == 1458);
    CHECK(m3.order() == 23328);
}

TEST_CASE("ball intersections with the kernel of the machine", "[nilq]") {
    for (int ell : {2, 3}) {
        QuotientMachine m(ell);
        INFO("ell " << ell);

        auto inner = verify_ball_intersection(m, 4 * ell - 1);
        REQUIRE(inner.size() == 1);
        CHECK(inner[0].is_identity());

        GWord za2 = GWord::parse("z*a^2");
        std::vector<AmalgamNF> expect3 = {AmalgamNF(), AmalgamNF::of(za2.pow(2 * ell)),
                                          AmalgamNF::of(za2.pow(-2 * ell))};
        std::sort(expect3.begin(), expect3.end());
        CHECK(verify_ball_intersection(m, 4 * ell) == expect3);

        // at radius 4*ell + 1 the a-conjugates of (za^2)^{+-2*ell} enter as
        // well: they lie in the normal closure and have star length 4*ell + 1
        GWord a = GWord::parse("a");
        std::vector<AmalgamNF> expect5 = expect3;
        expect5.push_back(AmalgamNF::of(a * za2.pow(2 * ell) * a.inverse()));
        expect5.push_back(AmalgamNF::of(a.inverse() * za2.pow(2 * ell) * a));
        std::sort(expect5.begin(), expect5.end());
        CHECK(expect5[expect5.size() - 1].star_length() == 4 * ell + 1);
        CHECK(verify_ball_intersection(m, 4 * ell + 1) == expect5);
    }
}

TEST_CASE("members of the S-ball that the machine kills evaluate to 0 mod 2*ell",
          "[nilq]") {
    for (int ell : {2, 3}) {
        QuotientMachine m(ell);
        const long long images[] = {0, 1, 1};
        enumerate_ball(3, ell, [&](const FreeWord& w) {
            if (m.is_in_M(expand_kernel_word(w)))
                CHECK(w.evaluate(images) % (2 * ell) == 0);
        });
    }
}

TEST_CASE("ball verification respects the resource cap", "[nilq]") {
    QuotientMachine m(2);
    CHECK_THROWS_AS(verify_ball_intersection(m, 9, 50), Error);
}

// Independent route to |G/M|: enumerate cosets of the trivial subgroup in
// the presentation of G extended by normal generators of M, expanded into
// words over a and z.
TEST_CASE("coset enumeration confirms the machine order", "[nilq]") {
    auto X = [](int i, long long e) { return FreeWord::generator(3, i, e); };
    auto C = [&](int j, int i) { return X(j, -1) * X(i, -1) * X(j, 1) * X(i, 1); };
    for (int ell : {2, 3}) {
        Presentation p = parse_presentation(
            "gens: a, b, z; rels: a^4, b^2, a*b*a*b, z^2, a*b*z*a*b*z;");
        auto gens = p.gen_map();
        std::vector<FreeWord> extra = {X(1, ell)};
        if (ell == 2) {
            for (int i = 1; i <= 3; ++i) extra.push_back(X(i, 4));
            for (int i = 1; i <= 3; ++i)
                for (int j = i + 1; j <= 3; ++j) extra.push_back(C(j, i));
        } else {
            for (int i = 1; i <= 3; ++i) extra.push_back(X(i, 6));
            for (int i = 1; i <= 3; ++i)
                for (int j = i + 1; j <= 3; ++j)
                    extra.push_back((X(i, 1) * X(j, 1)).pow(6));
            for (int i = 1; i <= 3; ++i)
                for (int j = i + 1; j <= 3; ++j) extra.push_back(C(j, i).pow(6));
            for (int i = 1; i <= 3; ++i)
                for (int j = i + 1; j <= 3; ++j)
                    for (int k = 1; k <= 3; ++k)
                        extra.push_back(C(j, i).inverse() * X(k, -1) * C(j, i) * X(k, 1));
        }
        for (const FreeWord& w : extra) {
            GWord g = expand_kernel_word(w);
            TermWord tw;
            for (const GLetter& l : g.letters())
                tw.push_back({gens.at(std::string(1, l.gen)), l.exp});
            p.relators.push_back(tw);
        }
        CosetTable t = todd_coxeter(p, {}, 4000000);
        INFO("ell " << ell);
        REQUIRE(t.status == CosetTable::Status::complete);
        CHECK(t.index == QuotientMachine(ell).order());
    }
}
