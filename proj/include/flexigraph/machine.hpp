#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "flexigraph/amalgam.hpp"
#include "flexigraph/nilpotent.hpp"

namespace flexigraph {

// Concrete finite model of G/M for M = <x1^ell, N>^G, N = F3^{2l} gamma_l(F3):
// a 16-element transversal crossed with Q = P/Mbar, multiplied through the
// precomputed Schreier cocycle and the 16 induced automorphisms of Q.
// Immutable once built; queries are safe to run concurrently.
class QuotientMachine {
public:
    struct Elem {
        std::uint16_t t;
        std::uint32_t q;
        friend bool operator==(const Elem&, const Elem&) = default;
        friend auto operator<=>(const Elem&, const Elem&) = default;
    };

    explicit QuotientMachine(int ell) : ell_(ell), P_(ell) {
        build();
    }

    int ell() const { return ell_; }
    const PGroup& P() const { return P_; }
    std::uint64_t P_order() const { return P_.order(); }
    std::uint64_t Mbar_order() const { return mbar_order_; }
    std::uint64_t Q_order() const { return qreps_.size(); }
    std::uint64_t order() const { return 16 * Q_order(); }

    Elem identity() const { return id_; }

    // (q1, t1)(q2, t2) = (q1 * theta_{t1}(q2) * c(t1,t2), t1 t2)
    Elem mul(const Elem& x, const Elem& y) const {
        std::uint16_t t3 = tmul_[x.t][y.t];
        std::uint32_t moved = theta_[x.t][qrep_pidx_[y.q]];
        PElement p = P_.mul(P_.mul(pelems_[qrep_pidx_[x.q]], pelems_[moved]),
                            cocycle_[x.t][y.t]);
        return {t3, q_of_p(p)};
    }

    // solve q * theta_t(q') * c(t, t^-1) = 1 for q'
    Elem inv(const Elem& x) const {
        std::uint16_t ti = tinv_[x.t];
        PElement rhs = P_.mul(P_.inv(pelems_[qrep_pidx_[x.q]]),
                              P_.inv(cocycle_[x.t][ti]));
        std::uint32_t pre = theta_inv_[x.t][pidx(rhs)];
        return {ti, q_of_p(pelems_[pre])};
    }

    Elem pow(Elem x, long long n) const {
        if (n < 0) {
            x = inv(x);
            n = -n;
        }
        Elem r = id_;
        for (long long i = 0; i < n; ++i) r = mul(r, x);
        return r;
    }

    Elem image_of_letter(char gen) const {
        switch (gen) {
        case 'a': return gen_a_;
        case 'b': return gen_b_;
        case 'z': return gen_z_;
        default: throw Error::domain("QuotientMachine: bad generator");
        }
    }

    Elem image_of(const GWord& w) const {
        Elem r = id_;
        for (const GLetter& l : w.letters()) {
            Elem g = image_of_letter(l.gen);
            r = mul(r, pow(g, l.exp));
        }
        return r;
    }

    Elem image_of(const AmalgamNF& nf) const { return image_of(nf.to_gword()); }

    // image of a word in the kernel generators x1, x2, x3
    Elem image_of_kernel(const FreeWord& w) const {
        return {0, q_of_p(P_.eval(w))};
    }

    bool is_in_M(const GWord& w) const { return image_of(w) == id_; }
    bool is_in_M(const AmalgamNF& nf) const { return image_of(nf) == id_; }

    // the 8 images of D4 = <a, b>, in a fixed order
    const std::vector<Elem>& d4_elements() const { return d4_; }

    std::uint64_t elem_key(const Elem& e) const {
        return static_cast<std::uint64_t>(e.t) * qreps_.size() + e.q;
    }

    Elem elem_of_key(std::uint64_t k) const {
        return {static_cast<std::uint16_t>(k / qreps_.size()),
                static_cast<std::uint32_t>(k % qreps_.size())};
    }

    std::string elem_str(const Elem& e) const {
        return "t" + std::to_string(e.t) + ".q" + std::to_string(e.q);
    }

    const std::array<FreeWord, 3>& conj_words(int gi) const { return conj_words_[gi]; }
    const InvariantSubgroup& mbar() const { return *mbar_; }

private:
    void build() {
        // P-element index
        pelems_ = P_.elements();
        pindex_.reserve(pelems_.size() * 2);
        for (std::uint32_t i = 0; i < pelems_.size(); ++i)
            pindex_.emplace(P_.key(pelems_[i]), i);

        // induced automorphisms of P for right conjugation by a, b, z
        KernelRewriter& kr = kernel_rewriter();
        const char gens[3] = {'a', 'b', 'z'};
        std::array<std::vector<std::uint32_t>, 3> Aperm, ApermInv;
        for (int gi = 0; gi < 3; ++gi) {
            conj_words_[gi] = kr.conj_action(gens[gi]);
            AutoMap f = induce_automorphism(P_, conj_words_[gi]);
            Aperm[gi].resize(pelems_.size());
            ApermInv[gi].resize(pelems_.size());
            for (std::uint32_t i = 0; i < pelems_.size(); ++i) {
                std::uint32_t j = pidx(apply(P_, f, pelems_[i]));
                Aperm[gi][i] = j;
                ApermInv[gi][j] = i;
            }
            autos_.push_back(std::move(f));
        }

        // Mbar = invariant closure of the image of x1^ell
        std::vector<PElement> seeds = {P_.eval(FreeWord::generator(3, 1, ell_))};
        mbar_.emplace(P_, seeds, autos_);
        mbar_order_ = mbar_->order();

        // canonical coset representatives for Q = P/Mbar
        pcanon_.assign(pelems_.size(), 0);
        for (std::uint32_t i = 0; i < pelems_.size(); ++i) {
            std::uint64_t best = UINT64_MAX;
            std::uint32_t besti = i;
            for (const PElement& m : mbar_->elements()) {
                PElement pm = P_.mul(pelems_[i], m);
                std::uint64_t k = P_.key(pm);
                if (k < best) {
                    best = k;
                    besti = pidx(pm);
                }
            }
            pcanon_[i] = besti;
        }
        for (std::uint32_t i = 0; i < pelems_.size(); ++i) {
            if (pcanon_[i] == i) {
                qindex_.emplace(i, static_cast<std::uint32_t>(qrep_pidx_.size()));
                qrep_pidx_.push_back(i);
            }
        }
        qreps_.reserve(qrep_pidx_.size());
        for (std::uint32_t i : qrep_pidx_) qreps_.push_back(pelems_[i]);

        // transversal multiplication over the 16-element image
        for (int i = 0; i < 16; ++i) {
            for (int j = 0; j < 16; ++j)
                tmul_[i][j] = static_cast<std::uint16_t>(
                    ImageElement::of_index(i).mul(ImageElement::of_index(j)).index());
            tinv_[i] = static_cast<std::uint16_t>(ImageElement::of_index(i).inverse().index());
        }

        // theta_t = left conjugation by rep(t), as a permutation of P
        for (int t = 0; t < 16; ++t) {
            std::vector<std::uint32_t> perm(pelems_.size());
            for (std::uint32_t i = 0; i < perm.size(); ++i) perm[i] = i;
            // t f t^-1 with t = s1..sr peels innermost first: apply the
            // inverse of right-conjugation by s_r, then s_{r-1}, ...
            const GWord& rep = kr.rep(t);
            for (auto it = rep.letters().rbegin(); it != rep.letters().rend(); ++it) {
                int gi = it->gen == 'a' ? 0 : it->gen == 'b' ? 1 : 2;
                long long e = it->exp;
                int s = e >= 0 ? 1 : -1;
                for (long long k = 0; k != e; k += s) {
                    const std::vector<std::uint32_t>& step =
                        s > 0 ? ApermInv[gi] : Aperm[gi];
                    for (std::uint32_t i = 0; i < perm.size(); ++i)
                        perm[i] = step[perm[i]];
                }
            }
            theta_[t] = perm;
            theta_inv_[t].resize(perm.size());
            for (std::uint32_t i = 0; i < perm.size(); ++i) theta_inv_[t][perm[i]] = i;
        }

        // Schreier cocycle c(t1,t2) = rep(t1) rep(t2) rep(t1 t2)^-1, in P
        for (int t1 = 0; t1 < 16; ++t1) {
            for (int t2 = 0; t2 < 16; ++t2) {
                GWord w = kr.rep(t1) * kr.rep(t2) * kr.rep(tmul_[t1][t2]).inverse();
                cocycle_[t1][t2] = P_.eval(kr.rewrite(w));
            }
        }

        id_ = {0, q_of_p(P_.id())};
        gen_a_ = build_letter('a');
        gen_b_ = build_letter('b');
        gen_z_ = build_letter('z');

        // D4 image in a fixed order: a^i then a^i b
        for (int ref = 0; ref < 2; ++ref)
            for (int rot = 0; rot < 4; ++rot) {
                Elem e = pow(gen_a_, rot);
                if (ref) e = mul(e, gen_b_);
                d4_.push_back(e);
            }
    }

    Elem build_letter(char gen) {
        KernelRewriter& kr = kernel_rewriter();
        GWord g = GWord().append(gen, 1);
        int t = phi(g).index();
        GWord k = g * kr.rep(t).inverse();
        return {static_cast<std::uint16_t>(t), q_of_p(P_.eval(kr.rewrite(k)))};
    }

    std::uint32_t pidx(const PElement& p) const { return pindex_.at(P_.key(p)); }

    std::uint32_t q_of_p(const PElement& p) const {
        return qindex_.at(pcanon_[pidx(p)]);
    }

    int ell_;
    PGroup P_;
    std::vector<PElement> pelems_;
    std::unordered_map<std::uint64_t, std::uint32_t> pindex_;
    std::vector<AutoMap> autos_;
    std::array<std::array<FreeWord, 3>, 3> conj_words_ = {
        std::array<FreeWord, 3>{FreeWord(3), FreeWord(3), FreeWord(3)},
        std::array<FreeWord, 3>{FreeWord(3), FreeWord(3), FreeWord(3)},
        std::array<FreeWord, 3>{FreeWord(3), FreeWord(3), FreeWord(3)}};
    std::optional<InvariantSubgroup> mbar_;
    std::uint64_t mbar_order_ = 0;
    std::vector<std::uint32_t> pcanon_;           // P index -> canonical rep P index
    std::unordered_map<std::uint32_t, std::uint32_t> qindex_; // rep P index -> q index
    std::vector<std::uint32_t> qrep_pidx_;        // q index -> P index
    std::vector<PElement> qreps_;
    std::array<std::array<std::uint16_t, 16>, 16> tmul_{};
    std::array<std::uint16_t, 16> tinv_{};
    std::array<std::vector<std::uint32_t>, 16> theta_;
    std::array<std::vector<std::uint32_t>, 16> theta_inv_;
    std::array<std::array<PElement, 16>, 16> cocycle_;
    Elem id_{}, gen_a_{}, gen_b_{}, gen_z_{};
    std::vector<Elem> d4_;
};

// Exact set {g in B_*(radius) : g in M}, by streaming the star ball through
// the machine.
inline std::vector<AmalgamNF> verify_ball_intersection(const QuotientMachine& m, int radius,
                                                       std::uint64_t max_count = UINT64_MAX) {
    std::vector<AmalgamNF> hits;
    star_ball(radius, [&](const AmalgamNF& nf) {
        if (m.is_in_M(nf)) hits.push_back(nf);
    }, max_count);
    std::sort(hits.begin(), hits.end());
    return hits;
}

} // namespace flexigraph
