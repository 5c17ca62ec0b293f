#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>
#include <unordered_set>

#include "flexigraph/amalgam.hpp"
#include "flexigraph/perm.hpp"

using namespace flexigraph;

namespace {

GWord random_gword(std::mt19937_64& rng, int syllables) {
    GWord w;
    const char gens[3] = {'a', 'b', 'z'};
    for (int i = 0; i < syllables; ++i)
        w.append(gens[rng() % 3], static_cast<long long>(rng() % 7) - 3);
    return w;
}

} // namespace

TEST_CASE("normal form examples", "[amalgam]") {
    // b = (ab) * a, exhaustively cross-checked over D4 below
    AmalgamNF b = AmalgamNF::of(GWord::parse("b"));
    CHECK(b.eps() == 1);
    CHECK(b.exps() == std::vector<int>{1});

    CHECK(AmalgamNF::of(GWord::parse("z*z")).is_identity());

    AmalgamNF w = AmalgamNF::of(GWord::parse("z*a^2*z*a^2"));
    CHECK(w.eps() == 0);
    CHECK(w.exps() == std::vector<int>{0, 2, 2});
    CHECK(w.star_length() == 4);
}

TEST_CASE("normal forms of D4 elements are exactly the z-free forms", "[amalgam]") {
    // oracle: brute-force products of a^i b^j against the normal forms
    std::set<std::vector<int>> seen;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 2; ++j) {
            GWord w;
            if (i) w.append('a', i);
            if (j) w.append('b', 1);
            AmalgamNF nf = AmalgamNF::of(w);
            CHECK(nf.z_count() == 0);
            CHECK(nf.star_length() <= 1);
            std::vector<int> key = {nf.eps(), nf.exps()[0]};
            CHECK(seen.insert(key).second); // all 8 distinct
        }
    }
    CHECK(seen.size() == 8);
}

TEST_CASE("star ball small radii", "[amalgam]") {
    std::vector<AmalgamNF> b0, b1;
    star_ball(0, [&](const AmalgamNF& nf) { b0.push_back(nf); });
    star_ball(1, [&](const AmalgamNF& nf) { b1.push_back(nf); });
    CHECK(b0.size() == 2); // 1 and ab
    CHECK(b1.size() == 10);
    // brute-force oracle: random products filtered by star length
    std::mt19937_64 rng(5);
    std::unordered_set<AmalgamNF, AmalgamNFHash> found0, found1;
    for (int trial = 0; trial < 3000; ++trial) {
        AmalgamNF nf = AmalgamNF::of(random_gword(rng, 1 + rng() % 4));
        if (nf.star_length() <= 0) found0.insert(nf);
        if (nf.star_length() <= 1) found1.insert(nf);
    }
    CHECK(found0.size() == b0.size());
    CHECK(found1.size() == b1.size());
    for (const AmalgamNF& nf : b1) CHECK(found1.count(nf) == 1);
    // B_*(1) contains all 8 elements of D4
    std::unordered_set<AmalgamNF, AmalgamNFHash> ball1(b1.begin(), b1.end());
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 2; ++j) {
            GWord w;
            if (i) w.append('a', i);
            if (j) w.append('b', 1);
            CHECK(ball1.count(AmalgamNF::of(w)) == 1);
        }
}

TEST_CASE("star ball radius 4 contains (za^2)^{+-2}", "[amalgam]") {
    std::unordered_set<AmalgamNF, AmalgamNFHash> ball;
    star_ball(4, [&](const AmalgamNF& nf) { ball.insert(nf); });
    GWord za2 = GWord::parse("z*a^2");
    CHECK(ball.count(AmalgamNF::of(za2.pow(2))) == 1);
    CHECK(ball.count(AmalgamNF::of(za2.pow(-2))) == 1);
    CHECK(AmalgamNF::of(za2.pow(2)).star_length() == 4);
}

TEST_CASE("normal form respects multiplication and inversion", "[amalgam]") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 300; ++trial) {
        GWord u = random_gword(rng, 1 + rng() % 5);
        GWord v = random_gword(rng, 1 + rng() % 5);
        AmalgamNF nu = AmalgamNF::of(u), nv = AmalgamNF::of(v);
        CHECK(AmalgamNF::of(u * v) == nu.mul(nv));
        CHECK(nu.mul(nu.inverse()).is_identity());
        CHECK(nu.star_length() == nu.inverse().star_length());
        CHECK(nu.mul(nv).star_length() <= nu.star_length() + nv.star_length());
    }
}

TEST_CASE("star length zero is exactly {1, ab}", "[amalgam]") {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 500; ++trial) {
        AmalgamNF nf = AmalgamNF::of(random_gword(rng, 1 + rng() % 6));
        if (nf.star_length() == 0)
            CHECK((nf == AmalgamNF() || nf == AmalgamNF::of(GWord::parse("a*b"))));
    }
}

TEST_CASE("star ball round-trips through GWord", "[amalgam]") {
    star_ball(6, [&](const AmalgamNF& nf) { CHECK(AmalgamNF::of(nf.to_gword()) == nf); });
}

TEST_CASE("star ball counts match the shape census", "[amalgam]") {
    // counting reduced forms directly: i slots of a-exponents with interior
    // entries nonzero contribute 3^{i-2} / 2*3^{i-1} / 3^i shapes at star
    // lengths 2i-3 / 2i-2 / 2i-1, doubled for the (ab) prefix
    auto census = [](int r) {
        std::uint64_t total = 1 + (r >= 1 ? 3 : 0);
        for (int i = 2; 2 * i - 3 <= r; ++i) {
            std::uint64_t mid = 1;
            for (int k = 0; k < i - 2; ++k) mid *= 3;
            total += mid;                            // both ends zero
            if (2 * i - 2 <= r) total += 2 * mid * 3; // one end nonzero
            if (2 * i - 1 <= r) total += mid * 9;     // both ends nonzero
        }
        return 2 * total;
    };
    for (int r = 0; r <= 13; ++r) {
        std::uint64_t n = 0;
        star_ball(r, [&](const AmalgamNF&) { ++n; });
        CHECK(n == census(r));
    }
    std::uint64_t distinct = 0;
    std::unordered_set<AmalgamNF, AmalgamNFHash> seen;
    star_ball(9, [&](const AmalgamNF& nf) {
        ++distinct;
        CHECK(seen.insert(nf).second); // each element exactly once
    });
    CHECK(distinct == seen.size());
}

TEST_CASE("phi respects the five relators and has image of order 16", "[amalgam]") {
    for (const char* rel : {"a^4", "b^2", "a*b*a*b", "z^2", "a*b*z*a*b*z"})
        CHECK(phi(GWord::parse(rel)).is_identity());
    CHECK(phi(GWord::parse("b^-1*a^-1*z^-1*a*b*z")).is_identity()); // [ab,z]

    std::set<int> image;
    std::vector<ImageElement> queue = {ImageElement()};
    image.insert(ImageElement().index());
    while (!queue.empty()) {
        ImageElement e = queue.back();
        queue.pop_back();
        for (const ImageElement& g :
             {ImageElement::img_a(), ImageElement::img_b(), ImageElement::img_z()}) {
            ImageElement n = e.mul(g);
            if (image.insert(n.index()).second) queue.push_back(n);
        }
    }
    CHECK(image.size() == 16);

    // restrictions to the two factors are injective
    std::set<int> d4_im, c22_im;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 2; ++j) {
            GWord w;
            if (i) w.append('a', i);
            if (j) w.append('b', 1);
            d4_im.insert(phi(w).index());
        }
    CHECK(d4_im.size() == 8);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            GWord w;
            if (i) {
                w.append('a', 1);
                w.append('b', 1);
            }
            if (j) w.append('z', 1);
            c22_im.insert(phi(w).index());
        }
    CHECK(c22_im.size() == 4);
}

TEST_CASE("phi examples", "[amalgam]") {
    CHECK(phi(GWord::parse("z*a*z*a")).is_identity());
    ImageElement a = phi(GWord::parse("a"));
    CHECK(a == ImageElement::img_a());
    ImageElement p = a;
    int order = 1;
    while (!p.is_identity()) {
        p = p.mul(a);
        ++order;
    }
    CHECK(order == 4);
}

TEST_CASE("schreier rewriting", "[amalgam]") {
    CHECK(schreier_rewrite(GWord::parse("z*a*z*a")).str() == "x2");

    GWord x1 = GWord::parse("z*a^2*z*a^2");
    GWord conj = GWord::parse("a^-1") * x1 * GWord::parse("a");
    FreeWord w = schreier_rewrite(conj);
    CHECK(AmalgamNF::of(expand_kernel_word(w)) == AmalgamNF::of(conj));
    CHECK(w == parse_free_word("x2^-1*x3", 3));

    GWord zconj = GWord::parse("z") * x1 * GWord::parse("z");
    FreeWord wz = schreier_rewrite(zconj);
    CHECK(wz == parse_free_word("x1^-1", 3));

    CHECK_THROWS_AS(schreier_rewrite(GWord::parse("a")), Error); // NotInKernel
}

TEST_CASE("kernel elements in the radius-6 ball rewrite and round-trip", "[amalgam]") {
    int kernel_count = 0;
    star_ball(6, [&](const AmalgamNF& nf) {
        GWord w = nf.to_gword();
        if (!phi(w).is_identity()) return;
        ++kernel_count;
        FreeWord x = schreier_rewrite(w);
        CHECK(AmalgamNF::of(expand_kernel_word(x)) == nf);
        CHECK(nf.z_count() % 2 == 0); // kernel elements have an even z count
    });
    CHECK(kernel_count > 1);
}

TEST_CASE("conjugation action", "[amalgam]") {
    auto ca = conj_action('a');
    auto cz = conj_action('z');
    CHECK(cz[0] == parse_free_word("x1^-1", 3));
    CHECK(ca[0] == parse_free_word("x2^-1*x3", 3));

    // each action is the identity after composing with the inverse action:
    // v -> g^-1 v g followed by v -> g v g^-1 fixes the generators
    for (char g : {'a', 'b', 'z'}) {
        auto act = conj_action(g);
        for (int i = 0; i < 3; ++i) {
            GWord gw = GWord().append(g, 1);
            GWord back = gw * expand_kernel_word(act[i]) * gw.inverse();
            CHECK(AmalgamNF::of(back) == AmalgamNF::of(kernel_generator_words()[i]));
        }
    }

    // conjugation by any generator maps kernel words to kernel words
    for (char g : {'a', 'b', 'z'}) {
        auto act = conj_action(g);
        for (int i = 0; i < 3; ++i) CHECK(phi(expand_kernel_word(act[i])).is_identity());
    }
}

TEST_CASE("orbit of x1 modulo conjugacy and inversion", "[amalgam]") {
    // orbit of {x1^{+-1}} under the three actions, modulo cyclic conjugation
    // and inversion, is {x1, x2^-1 x3}
    std::set<std::string> orbit;
    std::vector<FreeWord> work = {FreeWord::generator(3, 1)};
    orbit.insert(work[0].cyclic_normal_form().str());
    std::array<std::array<FreeWord, 3>, 3> acts = {conj_action('a'), conj_action('b'),
                                                   conj_action('z')};
    while (!work.empty()) {
        FreeWord w = work.back();
        work.pop_back();
        for (const auto& act : acts) {
            FreeWord img = w.substitute(act).cyclic_normal_form();
            if (orbit.insert(img.str()).second) work.push_back(img);
        }
    }
    std::set<std::string> expected = {
        FreeWord::generator(3, 1).cyclic_normal_form().str(),
        parse_free_word("x2^-1*x3", 3).cyclic_normal_form().str()};
    CHECK(orbit == expected);
}

TEST_CASE("recorded degree-8 images fail the commuting relator", "[amalgam]") {
    auto [a, b, z] = sym8_candidate_images();
    for (Composition conv : {Composition::left_to_right, Composition::right_to_left}) {
        RelatorCheck rc = check_perm_relators(a, b, z, conv);
        CHECK(rc.failed == std::vector<std::string>{"(abz)^2"});
    }
    RelatorCheck adopted = check_g_relators(
        ImageElement::img_a(), ImageElement::img_b(), ImageElement::img_z(), ImageElement(),
        [](const ImageElement& x, const ImageElement& y) { return x.mul(y); });
    CHECK(adopted.all_pass());
}

TEST_CASE("amalgam text forms", "[amalgam]") {
    CHECK(AmalgamNF::of(GWord::parse("b")).str() == "(ab)*a");
    CHECK(AmalgamNF::of(GWord::parse("z*a^2")).str() == "z*a^2");
    CHECK(AmalgamNF().str() == "1");
    CHECK(GWord::parse("a^-1*z*a^3").str() == "a^-1*z*a^3");
}
