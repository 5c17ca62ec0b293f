#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "flexigraph/error.hpp"

namespace flexigraph {

// One letter of a free-group word: generator index (1-based) and sign.
struct Letter {
    int gen;
    int sign; // +1 or -1

    friend bool operator==(const Letter&, const Letter&) = default;

    // Enumeration order: x1 < x1^-1 < x2 < x2^-1 < ...
    int key() const { return (gen - 1) * 2 + (sign < 0 ? 1 : 0); }
};

inline Letter inverse(Letter l) { return {l.gen, -l.sign}; }

// Freely reduced word over x1..xk.  Value object; every constructor output
// is reduced, so downstream code may assume reduced input throughout.
class FreeWord {
public:
    explicit FreeWord(int rank) : rank_(rank) {
        if (rank < 1) throw Error::domain("FreeWord: rank must be >= 1");
    }

    FreeWord(int rank, std::span<const Letter> raw) : FreeWord(rank) {
        for (const Letter& l : raw) push(l);
    }

    static FreeWord generator(int rank, int i, long long exp = 1) {
        FreeWord w(rank);
        w.append_power(i, exp);
        return w;
    }

    int rank() const { return rank_; }
    bool empty() const { return letters_.empty(); }
    std::size_t length() const { return letters_.size(); }
    const std::vector<Letter>& letters() const { return letters_; }

    void push(Letter l) {
        if (l.gen < 1 || l.gen > rank_)
            throw Error::domain("FreeWord: generator index out of range");
        if (l.sign != 1 && l.sign != -1)
            throw Error::domain("FreeWord: sign must be +1 or -1");
        if (!letters_.empty() && letters_.back().gen == l.gen &&
            letters_.back().sign == -l.sign) {
            letters_.pop_back();
        } else {
            letters_.push_back(l);
        }
    }

    void append_power(int gen, long long exp) {
        int s = exp >= 0 ? 1 : -1;
        for (long long i = 0; i != exp; i += s) push({gen, s});
    }

    FreeWord operator*(const FreeWord& o) const {
        if (o.rank_ != rank_) throw Error::domain("FreeWord: rank mismatch");
        FreeWord r = *this;
        for (const Letter& l : o.letters_) r.push(l);
        return r;
    }

    FreeWord inverse() const {
        FreeWord r(rank_);
        r.letters_.reserve(letters_.size());
        for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
            r.letters_.push_back(flexigraph::inverse(*it)); // reduced input stays reduced
        return r;
    }

    FreeWord pow(long long n) const {
        FreeWord base = n >= 0 ? *this : inverse();
        if (n < 0) n = -n;
        FreeWord r(rank_);
        for (long long i = 0; i < n; ++i) r = r * base;
        return r;
    }

    // Applies the endomorphism x_i -> images[i-1].
    FreeWord substitute(std::span<const FreeWord> images) const {
        if (static_cast<int>(images.size()) != rank_)
            throw Error::domain("FreeWord: one image per generator required");
        FreeWord r(images.empty() ? 1 : images[0].rank());
        for (const Letter& l : letters_) {
            const FreeWord& im = images[l.gen - 1];
            if (l.sign > 0)
                for (const Letter& m : im.letters()) r.push(m);
            else {
                FreeWord inv = im.inverse();
                for (const Letter& m : inv.letters()) r.push(m);
            }
        }
        return r;
    }

    std::vector<long long> abelianize() const {
        std::vector<long long> v(rank_, 0);
        for (const Letter& l : letters_) v[l.gen - 1] += l.sign;
        return v;
    }

    long long evaluate(std::span<const long long> images) const {
        if (static_cast<int>(images.size()) != rank_)
            throw Error::domain("FreeWord: one image per generator required");
        long long s = 0;
        for (const Letter& l : letters_) s += l.sign * images[l.gen - 1];
        return s;
    }

    // Representative of the word modulo cyclic permutation and inversion:
    // cyclically reduce, then take the least rotation of the word and of its
    // inverse.  Used for conjugacy-class level comparisons.
    FreeWord cyclic_normal_form() const {
        std::vector<Letter> w = letters_;
        while (w.size() >= 2 && w.front().gen == w.back().gen &&
               w.front().sign == -w.back().sign) {
            w.erase(w.begin());
            w.pop_back();
        }
        auto least_rotation = [&](const std::vector<Letter>& v) {
            std::vector<Letter> best = v;
            std::vector<Letter> cur = v;
            for (std::size_t i = 1; i < v.size(); ++i) {
                std::rotate(cur.begin(), cur.begin() + 1, cur.end());
                if (lex_less(cur, best)) best = cur;
            }
            return best;
        };
        if (w.empty()) return FreeWord(rank_);
        std::vector<Letter> a = least_rotation(w);
        std::vector<Letter> winv(w.rbegin(), w.rend());
        for (Letter& l : winv) l.sign = -l.sign;
        std::vector<Letter> b = least_rotation(winv);
        FreeWord r(rank_);
        r.letters_ = lex_less(a, b) ? a : b;
        return r;
    }

    friend bool operator==(const FreeWord& a, const FreeWord& b) {
        return a.rank_ == b.rank_ && a.letters_ == b.letters_;
    }

    // (length, then lexicographic on (index, sign)) -- the enumeration order.
    friend bool operator<(const FreeWord& a, const FreeWord& b) {
        if (a.letters_.size() != b.letters_.size())
            return a.letters_.size() < b.letters_.size();
        return lex_less(a.letters_, b.letters_);
    }

    // Text form: "x1*x2^-1", identity prints as "1".  Consecutive letters of
    // the same generator are grouped into one power.
    std::string str() const {
        if (letters_.empty()) return "1";
        std::string out;
        std::size_t i = 0;
        while (i < letters_.size()) {
            std::size_t j = i;
            while (j < letters_.size() && letters_[j].gen == letters_[i].gen &&
                   letters_[j].sign == letters_[i].sign)
                ++j;
            long long e = static_cast<long long>(j - i) * letters_[i].sign;
            if (!out.empty()) out += "*";
            out += "x" + std::to_string(letters_[i].gen);
            if (e != 1) out += "^" + std::to_string(e);
            i = j;
        }
        return out;
    }

    std::uint64_t hash() const {
        std::uint64_t h = 1469598103934665603ull;
        auto mix = [&h](std::uint64_t v) {
            h ^= v;
            h *= 1099511628211ull;
        };
        mix(static_cast<std::uint64_t>(rank_));
        for (const Letter& l : letters_) mix(static_cast<std::uint64_t>(l.key()) + 1);
        return h;
    }

private:
    static bool lex_less(const std::vector<Letter>& a, const std::vector<Letter>& b) {
        for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
            if (a[i].key() != b[i].key()) return a[i].key() < b[i].key();
        }
        return a.size() < b.size();
    }

    int rank_;
    std::vector<Letter> letters_;
};

struct FreeWordHash {
    std::size_t operator()(const FreeWord& w) const { return w.hash(); }
};

// Streams every freely reduced word of length <= radius, each exactly once,
// ordered by (length, then lexicographic on (index, sign)).  Words are built
// in place with an odometer over last-letter constraints, so nothing is
// materialized.  Throws a resource error after max_count words.
template <typename Fn>
inline void enumerate_ball(int rank, int radius, Fn&& fn,
                           std::uint64_t max_count = UINT64_MAX) {
    if (rank < 1) throw Error::domain("enumerate_ball: rank must be >= 1");
    if (radius < 0) throw Error::domain("enumerate_ball: radius must be >= 0");
    std::uint64_t count = 0;
    auto emit = [&](const FreeWord& w) {
        if (++count > max_count)
            throw Error::resource("enumerate_ball: word cap exceeded, radius infeasible");
        fn(w);
    };

    emit(FreeWord(rank));
    const int nkeys = 2 * rank;
    auto letter_of_key = [](int key) { return Letter{key / 2 + 1, key % 2 == 0 ? 1 : -1}; };
    auto blocked = [&](const std::vector<int>& keys, int pos, int key) {
        // a letter may not cancel its predecessor
        return pos > 0 && letter_of_key(keys[pos - 1]) == inverse(letter_of_key(key));
    };

    for (int len = 1; len <= radius; ++len) {
        std::vector<int> keys(len, -1);
        int pos = 0;
        while (pos >= 0) {
            int next = keys[pos] + 1;
            while (next < nkeys && blocked(keys, pos, next)) ++next;
            if (next >= nkeys) {
                keys[pos] = -1;
                --pos; // backtrack
                continue;
            }
            keys[pos] = next;
            if (pos == len - 1) {
                FreeWord w(rank);
                for (int k : keys) w.push(letter_of_key(k));
                emit(w);
            } else {
                ++pos;
            }
        }
    }
}

inline std::uint64_t ball_size(int rank, int radius) {
    std::uint64_t n = 0;
    enumerate_ball(rank, radius, [&](const FreeWord&) { ++n; });
    return n;
}

} // namespace flexigraph
