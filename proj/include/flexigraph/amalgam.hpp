#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "flexigraph/error.hpp"
#include "flexigraph/presentation.hpp"
#include "flexigraph/words.hpp"

namespace flexigraph {

// -------------------------------------------------------------------------
// Words over the amalgam generators a, b, z.
// -------------------------------------------------------------------------

struct GLetter {
    char gen; // 'a', 'b' or 'z'
    long long exp;
    friend bool operator==(const GLetter&, const GLetter&) = default;
};

class GWord {
public:
    GWord() = default;
    explicit GWord(std::vector<GLetter> ls) : letters_(std::move(ls)) {
        for (const GLetter& l : letters_)
            if (l.gen != 'a' && l.gen != 'b' && l.gen != 'z')
                throw Error::domain("GWord: alphabet is {a,b,z}");
    }

    static GWord parse(std::string_view text) {
        static const std::map<std::string, int> names = {{"a", 0}, {"b", 1}, {"z", 2}};
        TermWord tw = parse_word(text, names);
        std::vector<GLetter> ls;
        for (const Term& t : tw) ls.push_back({"abz"[t.gen], t.exp});
        return GWord(std::move(ls));
    }

    const std::vector<GLetter>& letters() const { return letters_; }

    GWord& append(char gen, long long exp) {
        letters_.push_back({gen, exp});
        return *this;
    }

    GWord operator*(const GWord& o) const {
        GWord r = *this;
        for (const GLetter& l : o.letters_) r.letters_.push_back(l);
        return r;
    }

    GWord inverse() const {
        GWord r;
        for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
            r.letters_.push_back({it->gen, -it->exp});
        return r;
    }

    GWord pow(long long n) const {
        GWord base = n >= 0 ? *this : inverse();
        if (n < 0) n = -n;
        GWord r;
        for (long long i = 0; i < n; ++i) r = r * base;
        return r;
    }

    std::string str() const {
        if (letters_.empty()) return "1";
        std::string out;
        for (const GLetter& l : letters_) {
            if (!out.empty()) out += "*";
            out += l.gen;
            if (l.exp != 1) out += "^" + std::to_string(l.exp);
        }
        return out;
    }

private:
    std::vector<GLetter> letters_;
};

// The identification of ker(phi) with the free group on x1, x2, x3.
inline const std::array<GWord, 3>& kernel_generator_words() {
    static const std::array<GWord, 3> gens = {
        GWord::parse("z*a^2*z*a^2"), GWord::parse("z*a*z*a"), GWord::parse("z*a^3*z*a^3")};
    return gens;
}

inline GWord expand_kernel_word(const FreeWord& w) {
    if (w.rank() != 3) throw Error::domain("expand_kernel_word: rank-3 words only");
    GWord out;
    const auto& gens = kernel_generator_words();
    for (const Letter& l : w.letters()) {
        const GWord& g = l.sign > 0 ? gens[l.gen - 1] : gens[l.gen - 1].inverse();
        out = out * g;
    }
    return out;
}

// -------------------------------------------------------------------------
// Canonical reduced form (ab)^eps a^{e1} z a^{e2} ... z a^{ei}.
// -------------------------------------------------------------------------

// eps in {0,1}; exps nonempty with e1, ei in 0..3 and interior entries in
// 1..3.  Two normal forms are equal iff they name the same element of G.
// Star-length counts the nonzero a-powers plus the z separators; the (ab)
// prefix is free.
class AmalgamNF {
public:
    AmalgamNF() : eps_(0), exps_{0} {}

    static AmalgamNF of(const GWord& w) {
        AmalgamNF nf;
        for (const GLetter& l : w.letters()) {
            switch (l.gen) {
            case 'a': nf.append_a(l.exp); break;
            case 'b':
                for (long long i = 0, n = ((l.exp % 2) + 2) % 2; i < n; ++i) nf.append_b();
                break;
            case 'z':
                for (long long i = 0, n = ((l.exp % 2) + 2) % 2; i < n; ++i) nf.append_z();
                break;
            default: throw Error::domain("AmalgamNF: bad letter");
            }
        }
        return nf;
    }

    int eps() const { return eps_; }
    const std::vector<int>& exps() const { return exps_; }

    bool is_identity() const { return eps_ == 0 && exps_.size() == 1 && exps_[0] == 0; }

    int star_length() const {
        int n = static_cast<int>(exps_.size()) - 1; // z separators
        for (int e : exps_)
            if (e != 0) ++n;
        return n;
    }

    int z_count() const { return static_cast<int>(exps_.size()) - 1; }

    GWord to_gword() const {
        GWord w;
        if (eps_) {
            w.append('a', 1);
            w.append('b', 1);
        }
        for (std::size_t i = 0; i < exps_.size(); ++i) {
            if (i) w.append('z', 1);
            if (exps_[i]) w.append('a', exps_[i]);
        }
        return w;
    }

    AmalgamNF mul(const AmalgamNF& o) const {
        AmalgamNF r = *this;
        if (o.eps_) r.append_b_free(); // (ab) factor
        for (std::size_t i = 0; i < o.exps_.size(); ++i) {
            if (i) r.append_z();
            if (o.exps_[i]) r.append_a(o.exps_[i]);
        }
        return r;
    }

    AmalgamNF inverse() const { return AmalgamNF::of(to_gword().inverse()); }

    friend bool operator==(const AmalgamNF& a, const AmalgamNF& b) {
        return a.eps_ == b.eps_ && a.exps_ == b.exps_;
    }
    friend bool operator<(const AmalgamNF& a, const AmalgamNF& b) {
        if (a.eps_ != b.eps_) return a.eps_ < b.eps_;
        return a.exps_ < b.exps_;
    }

    std::string str() const {
        if (is_identity()) return "1";
        std::string out;
        auto add = [&out](const std::string& s) {
            if (!out.empty()) out += "*";
            out += s;
        };
        if (eps_) add("(ab)");
        for (std::size_t i = 0; i < exps_.size(); ++i) {
            if (i) add("z");
            if (exps_[i] == 1) add("a");
            else if (exps_[i]) add("a^" + std::to_string(exps_[i]));
        }
        return out;
    }

    std::uint64_t hash() const {
        std::uint64_t h = 1469598103934665603ull ^ static_cast<std::uint64_t>(eps_);
        for (int e : exps_) {
            h ^= static_cast<std::uint64_t>(e) + 1;
            h *= 1099511628211ull;
        }
        return h;
    }

private:
    // Rewriting uses only a^4 = b^2 = z^2 = (ab)^2 = 1, (ab)a^e = a^{-e}(ab),
    // (ab)z = z(ab) and b = (ab)a, applied while appending on the right.
    void append_a(long long e) {
        int r = static_cast<int>((e % 4 + 4) % 4);
        exps_.back() = (exps_.back() + r) & 3;
    }

    void append_z() {
        if (exps_.size() >= 2 && exps_.back() == 0)
            exps_.pop_back(); // trailing z meets new z
        else
            exps_.push_back(0);
    }

    // append one (ab) factor: w*(ab) = (ab)*mirror(w)
    void append_b_free() {
        eps_ ^= 1;
        for (int& e : exps_) e = (4 - e) & 3;
    }

    void append_b() {
        append_b_free();
        append_a(1); // b = (ab)*a
    }

    int eps_;
    std::vector<int> exps_;
};

struct AmalgamNFHash {
    std::size_t operator()(const AmalgamNF& nf) const { return nf.hash(); }
};

inline AmalgamNF normal_form(const GWord& w) { return AmalgamNF::of(w); }

// Streams every element of star-length <= radius exactly once (deterministic
// prefix-extension order).  Sequences grow one z-syllable at a time; the slot
// before an extension must be nonzero unless it is the leading one.
template <typename Fn>
inline void star_ball(int radius, Fn&& fn, std::uint64_t max_count = UINT64_MAX) {
    if (radius < 0) throw Error::domain("star_ball: radius must be >= 0");
    std::uint64_t count = 0;
    std::vector<int> exps;
    auto emit = [&](int eps) {
        if (++count > max_count)
            throw Error::resource("star_ball: element cap exceeded, radius infeasible");
        fn(AmalgamNF::of([&] {
            GWord w;
            if (eps) {
                w.append('a', 1);
                w.append('b', 1);
            }
            for (std::size_t i = 0; i < exps.size(); ++i) {
                if (i) w.append('z', 1);
                if (exps[i]) w.append('a', exps[i]);
            }
            return w;
        }()));
    };
    auto rec = [&](auto&& self, int star) -> void {
        emit(0);
        emit(1);
        if (exps.size() == 1 || exps.back() != 0) {
            for (int e = 0; e < 4; ++e) {
                int nstar = star + 1 + (e != 0 ? 1 : 0);
                if (nstar > radius) continue;
                exps.push_back(e);
                self(self, nstar);
                exps.pop_back();
            }
        }
    };
    for (int e1 = 0; e1 < 4; ++e1) {
        int star = e1 != 0 ? 1 : 0;
        if (star > radius) continue;
        exps.assign(1, e1);
        rec(rec, star);
    }
}

// -------------------------------------------------------------------------
// The finite image: D4 x C2 with a |-> (abar,0), b |-> (bbar,0),
// z |-> (abar*bbar, 1).  All five relators map to the identity and the
// restrictions to both amalgam factors are injective.
// -------------------------------------------------------------------------

struct ImageElement {
    int rot = 0;    // abar^rot
    int ref = 0;    // bbar factor
    int c2 = 0;

    friend bool operator==(const ImageElement&, const ImageElement&) = default;

    ImageElement mul(const ImageElement& o) const {
        // dihedral part: abar^r bbar^s * abar^r' bbar^s' = abar^{r+(-1)^s r'} bbar^{s+s'}
        return {(rot + (ref ? 4 - o.rot : o.rot)) & 3, ref ^ o.ref, c2 ^ o.c2};
    }

    ImageElement inverse() const {
        ImageElement r;
        r.ref = ref;
        r.rot = ref ? rot : (4 - rot) & 3;
        r.c2 = c2;
        return r;
    }

    bool is_identity() const { return rot == 0 && ref == 0 && c2 == 0; }
    int index() const { return rot + 4 * ref + 8 * c2; }

    static ImageElement of_index(int i) { return {i & 3, (i >> 2) & 1, (i >> 3) & 1}; }
    static ImageElement img_a() { return {1, 0, 0}; }
    static ImageElement img_b() { return {0, 1, 0}; }
    static ImageElement img_z() { return {1, 1, 1}; }
};

inline ImageElement phi(const GWord& w) {
    ImageElement r;
    for (const GLetter& l : w.letters()) {
        ImageElement g;
        switch (l.gen) {
        case 'a': g = ImageElement::img_a(); break;
        case 'b': g = ImageElement::img_b(); break;
        case 'z': g = ImageElement::img_z(); break;
        }
        // every generator image has order dividing 4
        long long e = ((l.exp % 4) + 4) % 4;
        for (long long i = 0; i < e; ++i) r = r.mul(g);
    }
    return r;
}

// -------------------------------------------------------------------------
// Schreier machinery for ker(phi) = <x1, x2, x3>.
// -------------------------------------------------------------------------

// BFS transversal of the 16 cosets of ker(phi), prefix closed, generator
// order a, b, z.  Also resolves short kernel elements to words in the x's by
// breadth-first search over the free group, keyed by normal form.
class KernelRewriter {
public:
    KernelRewriter() {
        // transversal BFS over the 16 image elements
        rep_.assign(16, GWord());
        known_.assign(16, false);
        known_[ImageElement().index()] = true;
        std::vector<int> queue = {ImageElement().index()};
        const char gens[3] = {'a', 'b', 'z'};
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            int t = queue[qi];
            for (char g : gens) {
                ImageElement next = ImageElement::of_index(t).mul(phi_letter(g));
                if (!known_[next.index()]) {
                    known_[next.index()] = true;
                    rep_[next.index()] = rep_[t] * GWord().append(g, 1);
                    queue.push_back(next.index());
                }
            }
        }
        for (bool k : known_)
            if (!k) throw Error::domain("KernelRewriter: image has fewer than 16 elements");
        // seed the free-group dictionary with the identity
        dict_.emplace(AmalgamNF(), FreeWord(3));
        frontier_.push_back(FreeWord(3));
        // Schreier generators for each (coset, letter)
        schreier_.reserve(48);
        for (int t = 0; t < 16; ++t) {
            for (int gi = 0; gi < 3; ++gi) {
                char g = gens[gi];
                ImageElement target = ImageElement::of_index(t).mul(phi_letter(g));
                GWord k = rep_[t] * GWord().append(g, 1) * rep_[target.index()].inverse();
                schreier_.push_back(kernel_word_for(AmalgamNF::of(k)));
            }
        }
    }

    const GWord& rep(int coset_index) const { return rep_[coset_index]; }

    // Expresses a kernel element, given by its normal form, as a word in
    // x1, x2, x3.  Grows the search ball on demand.
    FreeWord kernel_word_for(const AmalgamNF& nf) {
        auto it = dict_.find(nf);
        while (it == dict_.end()) {
            if (radius_ >= kMaxRadius)
                throw Error::domain("KernelRewriter: kernel element beyond search radius");
            grow();
            it = dict_.find(nf);
        }
        return it->second;
    }

    // Rewrites w with phi(w) = 1 into a word in the x's by walking the coset
    // graph and splicing the Schreier generator at every step.
    FreeWord rewrite(const GWord& w) {
        if (!phi(w).is_identity())
            throw Error::domain("schreier_rewrite: word not in the kernel (NotInKernel)");
        FreeWord out(3);
        ImageElement t;
        for (const GLetter& l : w.letters()) {
            int gi = l.gen == 'a' ? 0 : l.gen == 'b' ? 1 : 2;
            ImageElement g = phi_letter(l.gen);
            int s = l.exp >= 0 ? 1 : -1;
            for (long long i = 0; i != l.exp; i += s) {
                if (s > 0) {
                    out = out * schreier_[t.index() * 3 + gi];
                    t = t.mul(g);
                } else {
                    t = t.mul(g.inverse());
                    out = out * schreier_[t.index() * 3 + gi].inverse();
                }
            }
        }
        return out;
    }

    // Images of x1, x2, x3 under v -> g^-1 v g, as words in the x's.
    std::array<FreeWord, 3> conj_action(char g) {
        std::array<FreeWord, 3> out = {FreeWord(3), FreeWord(3), FreeWord(3)};
        GWord gw = GWord().append(g, 1);
        for (int i = 0; i < 3; ++i) {
            GWord conj = gw.inverse() * kernel_generator_words()[i] * gw;
            out[i] = rewrite(conj);
        }
        return out;
    }

private:
    static constexpr int kMaxRadius = 7;

    static ImageElement phi_letter(char g) {
        switch (g) {
        case 'a': return ImageElement::img_a();
        case 'b': return ImageElement::img_b();
        default: return ImageElement::img_z();
        }
    }

    void grow() {
        ++radius_;
        std::vector<FreeWord> next;
        for (const FreeWord& w : frontier_) {
            for (int gen = 1; gen <= 3; ++gen) {
                for (int sign : {1, -1}) {
                    if (!w.empty() && w.letters().back() == Letter{gen, -sign}) continue;
                    FreeWord e = w;
                    e.push({gen, sign});
                    AmalgamNF nf = AmalgamNF::of(expand_kernel_word(e));
                    if (dict_.emplace(nf, e).second) next.push_back(std::move(e));
                }
            }
        }
        frontier_ = std::move(next);
    }

    std::vector<GWord> rep_;
    std::vector<bool> known_;
    std::vector<FreeWord> schreier_; // indexed coset*3 + generator
    std::unordered_map<AmalgamNF, FreeWord, AmalgamNFHash> dict_;
    std::vector<FreeWord> frontier_;
    int radius_ = 0;
};

inline KernelRewriter& kernel_rewriter() {
    static KernelRewriter instance;
    return instance;
}

inline FreeWord schreier_rewrite(const GWord& w) { return kernel_rewriter().rewrite(w); }

inline std::array<FreeWord, 3> conj_action(char g) {
    if (g != 'a' && g != 'b' && g != 'z')
        throw Error::domain("conj_action: generator must be one of a, b, z");
    return kernel_rewriter().conj_action(g);
}

} // namespace flexigraph
