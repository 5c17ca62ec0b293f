#pragma once

#include <string>
#include <vector>

#include "flexigraph/error.hpp"
#include "flexigraph/words.hpp"

namespace flexigraph {

// Alternating syllable form in C_ell * C_ell * C_inf on z1, z2, z3.
// Factors 1 and 2 carry exponents mod ell (stored in 1..ell-1), factor 3
// exponents in Z; no zero syllables, adjacent syllables from distinct
// factors, empty iff the element is trivial.
struct FPSyllable {
    int factor; // 1, 2 or 3
    long long exp;
    friend bool operator==(const FPSyllable&, const FPSyllable&) = default;
};

class FPWord {
public:
    explicit FPWord(int ell) : ell_(ell) {
        if (ell < 2) throw Error::domain("FPWord: ell must be >= 2");
    }

    bool empty() const { return syllables_.empty(); }
    const std::vector<FPSyllable>& syllables() const { return syllables_; }

    // Syllables only ever enter at the top, so cancelling one cannot expose
    // two same-factor neighbours: merge at the top and pop zeros.
    void push(int factor, long long exp) {
        if (factor < 1 || factor > 3) throw Error::domain("FPWord: factor must be 1..3");
        if (!syllables_.empty() && syllables_.back().factor == factor) {
            syllables_.back().exp = reduce(factor, syllables_.back().exp + exp);
            if (syllables_.back().exp == 0) syllables_.pop_back();
        } else {
            long long e = reduce(factor, exp);
            if (e != 0) syllables_.push_back({factor, e});
        }
    }

    friend bool operator==(const FPWord& a, const FPWord& b) {
        return a.ell_ == b.ell_ && a.syllables_ == b.syllables_;
    }

    std::string str() const {
        if (syllables_.empty()) return "1";
        std::string out;
        for (const FPSyllable& s : syllables_) {
            if (!out.empty()) out += "*";
            out += "z" + std::to_string(s.factor);
            if (s.exp != 1) out += "^" + std::to_string(s.exp);
        }
        return out;
    }

private:
    long long reduce(int factor, long long e) const {
        if (factor == 3) return e;
        e %= ell_;
        return e < 0 ? e + ell_ : e;
    }

    int ell_;
    std::vector<FPSyllable> syllables_;
};

// Canonical alternating form of a word over z1, z2, z3 in C_ell*C_ell*C_inf.
inline FPWord fp_normal_form(const FreeWord& w, int ell) {
    if (w.rank() != 3) throw Error::domain("fp_normal_form: rank-3 words only");
    FPWord out(ell);
    for (const Letter& l : w.letters()) out.push(l.gen, l.sign);
    return out;
}

// Exact membership in the normal closure of x1^ell and (x2 x3^-1)^ell in the
// free group on x1, x2, x3: substitute x1 -> z1, x2 -> z2 z3, x3 -> z3 and
// test triviality in the displayed quotient.
inline bool in_H(const FreeWord& w, int ell) {
    if (w.rank() != 3) throw Error::domain("in_H: rank-3 words only");
    if (ell < 2) throw Error::domain("in_H: ell must be >= 2");
    FPWord acc(ell);
    for (const Letter& l : w.letters()) {
        switch (l.gen) {
        case 1: acc.push(1, l.sign); break;
        case 2:
            if (l.sign > 0) {
                acc.push(2, 1);
                acc.push(3, 1);
            } else {
                acc.push(3, -1);
                acc.push(2, -1);
            }
            break;
        case 3: acc.push(3, l.sign); break;
        }
    }
    return acc.empty();
}

} // namespace flexigraph
