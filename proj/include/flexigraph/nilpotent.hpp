#pragma once

#include <array>
#include <cstdint>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "flexigraph/error.hpp"
#include "flexigraph/words.hpp"

namespace flexigraph {

// Element of P = F3 / F3^{2l} gamma_l(F3) in collected form
//   x1^{a1} x2^{a2} x3^{a3} [x2,x1]^{c21} [x3,x1]^{c31} [x3,x2]^{c32}
// with the a-part mod 2l and the commutator part mod (l == 2 ? 1 : 3).
struct PElement {
    std::array<int, 3> a{0, 0, 0};
    std::array<int, 3> c{0, 0, 0}; // order (2,1), (3,1), (3,2)

    friend bool operator==(const PElement&, const PElement&) = default;
};

// ell = 2 collapses to (Z/4)^3; ell = 3 is the exponent-6 class-2 group of
// order 6^3 * 3^3 = 5832.  The bilinear correction c''_{ji} += a_j * a'_i
// (i < j) is the class-2 collection rule.
class PGroup {
public:
    explicit PGroup(int ell) : ell_(ell), am_(2 * ell), cm_(ell == 2 ? 1 : 3) {
        // Burnside-type order growth past ell = 3; reject rather than thrash
        if (ell != 2 && ell != 3)
            throw Error::resource("desk-scale bound: ell in {2,3}");
    }

    int ell() const { return ell_; }
    int a_modulus() const { return am_; }
    int c_modulus() const { return cm_; }
    std::uint64_t order() const {
        return static_cast<std::uint64_t>(am_) * am_ * am_ * cm_ * cm_ * cm_;
    }

    PElement id() const { return {}; }

    PElement gen(int i) const {
        if (i < 1 || i > 3) throw Error::domain("PGroup: generator index must be 1..3");
        PElement p;
        p.a[i - 1] = 1;
        return p;
    }

    PElement mul(const PElement& x, const PElement& y) const {
        PElement r;
        for (int i = 0; i < 3; ++i) r.a[i] = modA(x.a[i] + y.a[i]);
        // pairs (j,i) with i<j in slot order (2,1), (3,1), (3,2)
        r.c[0] = modC(x.c[0] + y.c[0] + x.a[1] * y.a[0]);
        r.c[1] = modC(x.c[1] + y.c[1] + x.a[2] * y.a[0]);
        r.c[2] = modC(x.c[2] + y.c[2] + x.a[2] * y.a[1]);
        return r;
    }

    PElement inv(const PElement& x) const {
        PElement r;
        for (int i = 0; i < 3; ++i) r.a[i] = modA(-x.a[i]);
        r.c[0] = modC(-x.c[0] + x.a[1] * x.a[0]);
        r.c[1] = modC(-x.c[1] + x.a[2] * x.a[0]);
        r.c[2] = modC(-x.c[2] + x.a[2] * x.a[1]);
        return r;
    }

    PElement pow(PElement x, long long n) const {
        if (n < 0) {
            x = inv(x);
            n = -n;
        }
        PElement r = id();
        for (long long i = 0; i < n; ++i) r = mul(r, x);
        return r;
    }

    PElement conj(const PElement& x, const PElement& g) const {
        return mul(mul(inv(g), x), g);
    }

    PElement commutator(const PElement& x, const PElement& y) const {
        return mul(mul(inv(x), inv(y)), mul(x, y));
    }

    PElement eval(const FreeWord& w) const {
        if (w.rank() != 3) throw Error::domain("PGroup: rank-3 words only");
        PElement r = id();
        for (const Letter& l : w.letters()) {
            PElement g = gen(l.gen);
            r = mul(r, l.sign > 0 ? g : inv(g));
        }
        return r;
    }

    std::uint64_t key(const PElement& p) const {
        std::uint64_t k = 0;
        for (int v : p.a) k = k * am_ + v;
        for (int v : p.c) k = k * cm_ + v;
        return k;
    }

    std::vector<PElement> elements() const {
        std::vector<PElement> out;
        out.reserve(order());
        PElement p;
        for (p.a[0] = 0; p.a[0] < am_; ++p.a[0])
            for (p.a[1] = 0; p.a[1] < am_; ++p.a[1])
                for (p.a[2] = 0; p.a[2] < am_; ++p.a[2])
                    for (p.c[0] = 0; p.c[0] < cm_; ++p.c[0])
                        for (p.c[1] = 0; p.c[1] < cm_; ++p.c[1])
                            for (p.c[2] = 0; p.c[2] < cm_; ++p.c[2]) out.push_back(p);
        return out;
    }

private:
    int modA(int v) const { return ((v % am_) + am_) % am_; }
    int modC(int v) const { return ((v % cm_) + cm_) % cm_; }

    int ell_, am_, cm_;
};

// Endomorphism of P given by generator images; applied through the collected
// form, so it is a homomorphism by construction.  Bijectivity is certified
// exhaustively.
struct AutoMap {
    std::array<FreeWord, 3> words;    // images of x1, x2, x3 as free words
    std::array<PElement, 3> images;   // the same, evaluated in P
};

inline PElement apply(const PGroup& P, const AutoMap& f, const PElement& p) {
    PElement r = P.id();
    for (int i = 0; i < 3; ++i) r = P.mul(r, P.pow(f.images[i], p.a[i]));
    // t = x1^{a1} x2^{a2} x3^{a3} has trivial commutator part, so the
    // residual central factor is exactly the stored c-part
    r = P.mul(r, P.pow(P.commutator(f.images[1], f.images[0]), p.c[0]));
    r = P.mul(r, P.pow(P.commutator(f.images[2], f.images[0]), p.c[1]));
    r = P.mul(r, P.pow(P.commutator(f.images[2], f.images[1]), p.c[2]));
    return r;
}

inline AutoMap induce_automorphism(const PGroup& P, const std::array<FreeWord, 3>& words) {
    AutoMap f{{FreeWord(3), FreeWord(3), FreeWord(3)}, {}};
    f.words = words;
    for (int i = 0; i < 3; ++i) f.images[i] = P.eval(words[i]);
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(P.order() * 2);
    for (const PElement& p : P.elements()) seen.insert(P.key(apply(P, f, p)));
    if (seen.size() != P.order())
        throw Error::domain("induce_automorphism: non-bijective evaluation "
                            "(signals an upstream rewriting bug)");
    return f;
}

// Smallest subset of P containing the seeds and closed under product,
// inverse, conjugation and the given automorphisms; in a finite group that
// closure is the smallest invariant subgroup.
class InvariantSubgroup {
public:
    InvariantSubgroup(const PGroup& P, const std::vector<PElement>& seeds,
                      const std::vector<AutoMap>& autos) {
        std::vector<PElement> work;
        auto add = [&](const PElement& p) {
            if (members_.insert(P.key(p)).second) {
                elements_.push_back(p);
                work.push_back(p);
            }
        };
        add(P.id());
        for (const PElement& s : seeds) add(s);
        while (!work.empty()) {
            PElement u = work.back();
            work.pop_back();
            add(P.inv(u));
            for (std::size_t i = 0; i < elements_.size(); ++i) {
                add(P.mul(u, elements_[i]));
                add(P.mul(elements_[i], u));
            }
            for (int g = 1; g <= 3; ++g) add(P.conj(u, P.gen(g)));
            for (const AutoMap& f : autos) add(apply(P, f, u));
        }
    }

    bool contains(const PGroup& P, const PElement& p) const {
        return members_.count(P.key(p)) != 0;
    }

    std::uint64_t order() const { return elements_.size(); }
    const std::vector<PElement>& elements() const { return elements_; }

private:
    std::vector<PElement> elements_;
    std::unordered_set<std::uint64_t> members_;
};

} // namespace flexigraph
