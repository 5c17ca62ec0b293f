#pragma once

#include <cstdint>
#include <deque>
#include <vector>

#include "flexigraph/presentation.hpp"

namespace flexigraph {

// Coset table produced by HLT-style enumeration.  Overflow is a first-class
// result: enumeration may legitimately exceed a desk-scale budget, and an
// overflowed table carries no index claim.
struct CosetTable {
    enum class Status { complete, overflow };

    Status status = Status::overflow;
    std::uint32_t index = 0;          // live cosets on completion
    int ngens = 0;
    std::vector<std::uint32_t> table; // index * 2*ngens entries, complete tables only

    std::uint32_t at(std::uint32_t coset, int gen, int sign) const {
        return table[coset * 2 * ngens + 2 * gen + (sign < 0 ? 1 : 0)];
    }

    // Generator action as a permutation of {0..index-1}.
    std::vector<std::uint32_t> permutation(int gen) const {
        std::vector<std::uint32_t> p(index);
        for (std::uint32_t c = 0; c < index; ++c) p[c] = at(c, gen, +1);
        return p;
    }

    std::uint32_t trace(std::uint32_t start, const TermWord& w) const {
        std::uint32_t c = start;
        for (const Term& t : w) {
            int s = t.exp >= 0 ? 1 : -1;
            for (long long i = 0; i != t.exp; i += s) c = at(c, t.gen, s);
        }
        return c;
    }
};

namespace detail {

class TCWorker {
    static constexpr std::uint32_t UNDEF = UINT32_MAX;

public:
    TCWorker(const Presentation& p, const std::vector<TermWord>& subgroup,
             std::uint32_t max_cosets)
        : ngens_(static_cast<int>(p.generators.size())), cap_(max_cosets) {
        for (const TermWord& r : p.relators) relators_.push_back(flatten_cols(r));
        for (const TermWord& w : subgroup) subgens_.push_back(flatten_cols(w));
        rep_.push_back(0);
        rows_.assign(2 * ngens_, UNDEF);
    }

    CosetTable run() {
        CosetTable out;
        out.ngens = ngens_;
        for (const std::vector<int>& w : subgens_)
            if (!scan_and_fill(0, w)) return out; // overflow
        for (std::uint32_t alpha = 0; alpha < nrows(); ++alpha) {
            if (!live(alpha)) continue;
            for (const std::vector<int>& r : relators_) {
                if (!scan_and_fill(alpha, r)) return out;
                if (!live(alpha)) break; // merged away mid-processing
            }
            if (!live(alpha)) continue;
            for (int col = 0; col < 2 * ngens_; ++col)
                if (entry(alpha, col) == UNDEF && !define(alpha, col)) return out;
        }
        // stabilize: rescan everything until no further coincidences
        while (true) {
            std::uint64_t before = merges_;
            scan_all();
            if (merges_ == before) break;
        }
        compact(out);
        validate(out);
        out.status = CosetTable::Status::complete;
        return out;
    }

private:
    // Relator/subgroup words as column sequences; col 2g is generator g,
    // col 2g+1 its inverse.
    std::vector<int> flatten_cols(const TermWord& w) const {
        std::vector<int> cols;
        for (const Term& t : w) {
            int s = t.exp >= 0 ? 1 : -1;
            for (long long i = 0; i != t.exp; i += s)
                cols.push_back(2 * t.gen + (s < 0 ? 1 : 0));
        }
        return cols;
    }

    static int inv_col(int col) { return col ^ 1; }

    std::uint32_t nrows() const { return static_cast<std::uint32_t>(rep_.size()); }
    bool live(std::uint32_t c) const { return rep_[c] == c; }

    std::uint32_t find(std::uint32_t c) {
        while (rep_[c] != c) {
            rep_[c] = rep_[rep_[c]];
            c = rep_[c];
        }
        return c;
    }

    std::uint32_t& entry(std::uint32_t c, int col) { return rows_[c * 2 * ngens_ + col]; }

    // Defines a new coset as the image of (c, col).  At the cap, one full
    // lookahead pass may still close the gap by collapsing cosets; if the
    // entry stays undefined the enumeration is inconclusive.
    bool define(std::uint32_t c, int col) {
        if (nrows() >= cap_) {
            if (!lookahead_spent_) {
                lookahead_spent_ = true;
                scan_all();
            }
            c = find(c);
            if (entry(c, col) != UNDEF) return true;
            return false;
        }
        std::uint32_t n = nrows();
        rep_.push_back(n);
        rows_.resize(rows_.size() + 2 * ngens_, UNDEF);
        entry(c, col) = n;
        entry(n, inv_col(col)) = c;
        return true;
    }

    // Scan word at alpha, defining cosets to close the gap (HLT).  Returns
    // false only when a definition hits the cap.
    bool scan_and_fill(std::uint32_t alpha, const std::vector<int>& word) {
        alpha = find(alpha);
        std::size_t i = 0, j = word.size();
        std::uint32_t f = alpha, b = alpha;
        while (true) {
            while (i < j && entry(f, word[i]) != UNDEF) f = find(entry(f, word[i++]));
            while (j > i && entry(b, inv_col(word[j - 1])) != UNDEF)
                b = find(entry(b, inv_col(word[--j])));
            if (i == j) {
                if (f != b) coincide(f, b);
                return true;
            }
            if (i == j - 1) {
                set_entry(f, word[i], b); // deduction closes the scan
                return true;
            }
            if (!define(f, word[i])) return false;
            f = find(f);
            b = find(b);
        }
    }

    void set_entry(std::uint32_t c, int col, std::uint32_t d) {
        c = find(c);
        d = find(d);
        std::uint32_t& slot = entry(c, col);
        if (slot != UNDEF) {
            if (find(slot) != d) coincide(find(slot), d);
            return;
        }
        slot = d;
        std::uint32_t& back = entry(d, inv_col(col));
        if (back == UNDEF)
            back = c;
        else if (find(back) != c)
            coincide(find(back), c);
    }

    void coincide(std::uint32_t a, std::uint32_t b) {
        merge_queue_.push_back({a, b});
        while (!merge_queue_.empty()) {
            auto [x, y] = merge_queue_.front();
            merge_queue_.pop_front();
            x = find(x);
            y = find(y);
            if (x == y) continue;
            if (y < x) std::swap(x, y);
            rep_[y] = x; // keep the earlier-discovered coset
            ++merges_;
            for (int col = 0; col < 2 * ngens_; ++col) {
                std::uint32_t d = entry(y, col);
                if (d == UNDEF) continue;
                d = find(d);
                std::uint32_t& slot = entry(x, col);
                if (slot == UNDEF) {
                    slot = d;
                    std::uint32_t& back = entry(d, inv_col(col));
                    if (back == UNDEF)
                        back = x;
                    else if (find(back) != x)
                        merge_queue_.push_back({find(back), x});
                } else if (find(slot) != d) {
                    merge_queue_.push_back({find(slot), d});
                }
            }
        }
    }

    // Full pass over every live coset and every relator, deducing and
    // coinciding but never defining.
    void scan_all() {
        for (std::uint32_t alpha = 0; alpha < nrows(); ++alpha) {
            if (!live(alpha)) continue;
            for (const std::vector<int>& r : relators_) {
                scan_only(alpha, r);
                if (!live(alpha)) break;
            }
        }
        for (const std::vector<int>& w : subgens_) scan_only(0, w);
    }

    void scan_only(std::uint32_t alpha, const std::vector<int>& word) {
        alpha = find(alpha);
        std::size_t i = 0, j = word.size();
        std::uint32_t f = alpha, b = alpha;
        while (i < j && entry(f, word[i]) != UNDEF) f = find(entry(f, word[i++]));
        while (j > i && entry(b, inv_col(word[j - 1])) != UNDEF)
            b = find(entry(b, inv_col(word[--j])));
        if (i == j) {
            if (f != b) coincide(f, b);
        } else if (i == j - 1) {
            set_entry(f, word[i], b);
        }
    }

    void compact(CosetTable& out) {
        std::vector<std::uint32_t> newid(nrows(), UNDEF);
        std::uint32_t next = 0;
        for (std::uint32_t c = 0; c < nrows(); ++c)
            if (live(c)) newid[c] = next++;
        out.index = next;
        out.table.assign(static_cast<std::size_t>(next) * 2 * ngens_, UNDEF);
        for (std::uint32_t c = 0; c < nrows(); ++c) {
            if (!live(c)) continue;
            for (int col = 0; col < 2 * ngens_; ++col) {
                std::uint32_t d = entry(c, col);
                if (d != UNDEF) out.table[newid[c] * 2 * ngens_ + col] = newid[find(d)];
            }
        }
    }

    // A complete validated table proves the index: columns are permutations,
    // every relator closes everywhere, subgroup generators fix coset 0.  Any
    // violation is an internal bug, never a wrong index.
    void validate(const CosetTable& out) {
        for (std::uint32_t v : out.table)
            if (v == UNDEF) throw Error::domain("todd_coxeter: incomplete table survived");
        for (int g = 0; g < ngens_; ++g) {
            std::vector<bool> seen(out.index, false);
            for (std::uint32_t c = 0; c < out.index; ++c) {
                std::uint32_t d = out.table[c * 2 * ngens_ + 2 * g];
                if (seen[d]) throw Error::domain("todd_coxeter: column not a permutation");
                seen[d] = true;
                if (out.table[d * 2 * ngens_ + 2 * g + 1] != c)
                    throw Error::domain("todd_coxeter: inverse column mismatch");
            }
        }
        auto trace_cols = [&](std::uint32_t start, const std::vector<int>& w) {
            std::uint32_t c = start;
            for (int col : w) c = out.table[c * 2 * ngens_ + col];
            return c;
        };
        for (const std::vector<int>& r : relators_)
            for (std::uint32_t c = 0; c < out.index; ++c)
                if (trace_cols(c, r) != c)
                    throw Error::domain("todd_coxeter: relator fails to close");
        for (const std::vector<int>& w : subgens_)
            if (trace_cols(0, w) != 0)
                throw Error::domain("todd_coxeter: subgroup generator moves coset 0");
    }

    int ngens_;
    std::uint32_t cap_;
    bool lookahead_spent_ = false;
    std::uint64_t merges_ = 0;
    std::vector<std::vector<int>> relators_;
    std::vector<std::vector<int>> subgens_;
    std::vector<std::uint32_t> rep_;  // union-find over coset ids
    std::vector<std::uint32_t> rows_; // 2*ngens entries per coset
    std::deque<std::pair<std::uint32_t, std::uint32_t>> merge_queue_;
};

} // namespace detail

inline CosetTable todd_coxeter(const Presentation& p, const std::vector<TermWord>& subgroup,
                               std::uint32_t max_cosets) {
    if (max_cosets < 1) throw Error::domain("todd_coxeter: max_cosets must be >= 1");
    detail::TCWorker worker(p, subgroup, max_cosets);
    return worker.run();
}

} // namespace flexigraph
