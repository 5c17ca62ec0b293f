#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "flexigraph/error.hpp"
#include "flexigraph/words.hpp"

namespace flexigraph {

// Noncommutative polynomial in X1..Xk, coefficients mod m (m = 0 means Z),
// truncated below degree bound d.  Monomials are interned into integer keys
// (2 bits per variable index plus a length field), and only nonzero
// coefficients are stored.
class TruncSeries {
public:
    TruncSeries(int rank, long long modulus, int degree_bound)
        : rank_(rank), mod_(modulus), deg_(degree_bound) {
        if (rank < 1 || rank > 4) throw Error::domain("TruncSeries: rank must be 1..4");
        if (modulus < 0) throw Error::domain("TruncSeries: modulus must be >= 0");
        if (degree_bound < 1 || degree_bound > 16)
            throw Error::domain("TruncSeries: degree bound must be 1..16");
    }

    static TruncSeries one(int rank, long long modulus, int degree_bound) {
        TruncSeries s(rank, modulus, degree_bound);
        s.set(kEmpty, 1);
        return s;
    }

    // 1 + X_i, or its truncated geometric inverse for sign < 0.
    static TruncSeries letter(int rank, long long modulus, int degree_bound, int gen,
                              int sign) {
        TruncSeries s = one(rank, modulus, degree_bound);
        if (sign > 0) {
            if (degree_bound > 1) s.set(append(kEmpty, gen), 1);
            return s;
        }
        std::uint64_t key = kEmpty;
        long long coef = 1;
        for (int j = 1; j < degree_bound; ++j) {
            key = append(key, gen);
            coef = -coef;
            s.set(key, coef);
        }
        return s;
    }

    int rank() const { return rank_; }
    long long modulus() const { return mod_; }
    int degree_bound() const { return deg_; }

    TruncSeries mul(const TruncSeries& o) const {
        TruncSeries r(rank_, mod_, deg_);
        for (const auto& [k1, v1] : c_) {
            for (const auto& [k2, v2] : o.c_) {
                if (len(k1) + len(k2) >= deg_) continue;
                r.add(concat(k1, k2), v1 * v2);
            }
        }
        return r;
    }

    bool is_one() const { return *this == one(rank_, mod_, deg_); }

    long long coeff(const std::vector<int>& monomial) const {
        std::uint64_t key = kEmpty;
        for (int g : monomial) {
            if (g < 1 || g > rank_) throw Error::domain("TruncSeries: bad monomial index");
            key = append(key, g);
        }
        if (static_cast<int>(monomial.size()) >= deg_)
            throw Error::domain("TruncSeries: monomial beyond degree bound");
        auto it = c_.find(key);
        return it == c_.end() ? 0 : it->second;
    }

    friend bool operator==(const TruncSeries& a, const TruncSeries& b) {
        return a.rank_ == b.rank_ && a.mod_ == b.mod_ && a.deg_ == b.deg_ && a.c_ == b.c_;
    }

    std::string str() const {
        if (c_.empty()) return "0";
        std::string out;
        for (const auto& [k, v] : c_) {
            if (!out.empty()) out += " + ";
            out += std::to_string(v);
            std::uint64_t digits = k & kDigitMask;
            int l = len(k);
            for (int i = l - 1; i >= 0; --i)
                out += "*X" + std::to_string(static_cast<int>((digits >> (2 * i)) & 3) + 1);
        }
        return out;
    }

private:
    static constexpr std::uint64_t kEmpty = 0;
    static constexpr std::uint64_t kDigitMask = (1ull << 40) - 1;

    static int len(std::uint64_t key) { return static_cast<int>(key >> 40); }

    static std::uint64_t append(std::uint64_t key, int gen) {
        std::uint64_t digits = key & kDigitMask;
        std::uint64_t l = key >> 40;
        return ((l + 1) << 40) | (digits << 2) | static_cast<std::uint64_t>(gen - 1);
    }

    static std::uint64_t concat(std::uint64_t k1, std::uint64_t k2) {
        std::uint64_t l1 = k1 >> 40, l2 = k2 >> 40;
        std::uint64_t digits = ((k1 & kDigitMask) << (2 * l2)) | (k2 & kDigitMask);
        return ((l1 + l2) << 40) | digits;
    }

    long long normal(long long v) const {
        if (mod_ == 0) return v;
        v %= mod_;
        return v < 0 ? v + mod_ : v;
    }

    void set(std::uint64_t key, long long v) {
        v = normal(v);
        if (v == 0)
            c_.erase(key);
        else
            c_[key] = v;
    }

    void add(std::uint64_t key, long long v) {
        auto it = c_.find(key);
        long long nv = normal((it == c_.end() ? 0 : it->second) + v);
        if (nv == 0) {
            if (it != c_.end()) c_.erase(it);
        } else if (it == c_.end()) {
            c_.emplace(key, nv);
        } else {
            it->second = nv;
        }
    }

    int rank_;
    long long mod_;
    int deg_;
    std::map<std::uint64_t, long long> c_;
};

// Multiplicative map x_i -> 1 + X_i into the truncated series ring.
inline TruncSeries magnus(const FreeWord& w, long long modulus, int degree_bound) {
    TruncSeries r = TruncSeries::one(w.rank(), modulus, degree_bound);
    for (const Letter& l : w.letters())
        r = r.mul(TruncSeries::letter(w.rank(), modulus, degree_bound, l.gen, l.sign));
    return r;
}

// Integer coefficient of the given monomial in the Magnus image; for a word
// x_{i1}^{a1}...x_{in}^{an} with adjacent indices distinct and the monomial
// X_{i1}...X_{in} this equals the product of the exponents.
inline long long fox_coefficient(const FreeWord& w, const std::vector<int>& monomial) {
    int deg = static_cast<int>(monomial.size()) + 1;
    return magnus(w, 0, deg).coeff(monomial);
}

enum class PowerGammaVerdict { certified_out, trivial_image };

inline bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Verbal-subgroup exclusion test for the group generated by ell-th powers
// and weight-ell commutators.  A nontrivial truncated image mod ell proves
// the word lies outside; a trivial image is only a necessary condition for
// membership, so the verdict stays two-valued.
inline PowerGammaVerdict in_power_gamma(const FreeWord& w, int ell) {
    if (!is_prime(ell)) throw Error::domain("in_power_gamma: ell must be prime");
    return magnus(w, ell, ell).is_one() ? PowerGammaVerdict::trivial_image
                                        : PowerGammaVerdict::certified_out;
}

} // namespace flexigraph
