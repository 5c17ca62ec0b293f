#pragma once

#include <array>
#include <string>
#include <vector>

#include "flexigraph/error.hpp"

namespace flexigraph {

// Small permutation on {1..degree}, stored 0-based.
class Perm {
public:
    explicit Perm(int degree) : img_(degree) {
        for (int i = 0; i < degree; ++i) img_[i] = i;
    }

    static Perm parse_cycles(const std::string& text, int degree) {
        Perm p(degree);
        std::vector<bool> seen(degree, false);
        std::size_t i = 0;
        auto skip = [&] {
            while (i < text.size() && (text[i] == ' ' || text[i] == ',')) ++i;
        };
        skip();
        while (i < text.size()) {
            if (text[i] != '(') throw Error::parse("permutation: expected '('");
            ++i;
            std::vector<int> cyc;
            while (true) {
                skip();
                if (i < text.size() && text[i] == ')') {
                    ++i;
                    break;
                }
                std::size_t start = i;
                while (i < text.size() && isdigit(static_cast<unsigned char>(text[i]))) ++i;
                if (start == i) throw Error::parse("permutation: expected point");
                int v = std::stoi(text.substr(start, i - start)) - 1;
                if (v < 0 || v >= degree) throw Error::parse("permutation: point out of range");
                if (seen[v]) throw Error::parse("permutation: repeated point");
                seen[v] = true;
                cyc.push_back(v);
            }
            for (std::size_t k = 0; k < cyc.size(); ++k)
                p.img_[cyc[k]] = cyc[(k + 1) % cyc.size()];
            skip();
        }
        return p;
    }

    int degree() const { return static_cast<int>(img_.size()); }
    int apply(int x) const { return img_[x]; }

    // x -> other(this(x)): "apply this first"
    Perm then(const Perm& other) const {
        Perm r(degree());
        for (int i = 0; i < degree(); ++i) r.img_[i] = other.img_[img_[i]];
        return r;
    }

    bool is_identity() const {
        for (int i = 0; i < degree(); ++i)
            if (img_[i] != i) return false;
        return true;
    }

    friend bool operator==(const Perm&, const Perm&) = default;

    std::string str() const {
        std::string out;
        std::vector<bool> seen(degree(), false);
        for (int i = 0; i < degree(); ++i) {
            if (seen[i] || img_[i] == i) continue;
            out += "(";
            int j = i;
            bool first = true;
            while (!seen[j]) {
                seen[j] = true;
                if (!first) out += " ";
                out += std::to_string(j + 1);
                first = false;
                j = img_[j];
            }
            out += ")";
        }
        return out.empty() ? "()" : out;
    }

private:
    std::vector<int> img_;
};

enum class Composition { left_to_right, right_to_left };

// The five defining relators of G over (a, b, z).
inline const std::vector<std::pair<std::string, std::string>>& g_relator_words() {
    static const std::vector<std::pair<std::string, std::string>> rels = {
        {"a^4", "aaaa"},
        {"b^2", "bb"},
        {"(ab)^2", "abab"},
        {"z^2", "zz"},
        {"(abz)^2", "abzabz"},
    };
    return rels;
}

struct RelatorCheck {
    std::vector<std::string> failed;
    bool all_pass() const { return failed.empty(); }
};

// Evaluates the five relators on a candidate generator-image triple under a
// group product supplied by the caller.
template <typename T, typename MulFn>
inline RelatorCheck check_g_relators(const T& a, const T& b, const T& z, const T& id,
                                     MulFn&& mul) {
    RelatorCheck out;
    auto of = [&](char c) -> const T& { return c == 'a' ? a : c == 'b' ? b : z; };
    for (const auto& [name, word] : g_relator_words()) {
        T acc = id;
        for (char c : word) acc = mul(acc, of(c));
        if (!(acc == id)) out.failed.push_back(name);
    }
    return out;
}

inline RelatorCheck check_perm_relators(const Perm& a, const Perm& b, const Perm& z,
                                        Composition conv) {
    Perm id(a.degree());
    if (conv == Composition::left_to_right)
        return check_g_relators(a, b, z, id,
                                [](const Perm& x, const Perm& y) { return x.then(y); });
    return check_g_relators(a, b, z, id,
                            [](const Perm& x, const Perm& y) { return y.then(x); });
}

// A degree-8 permutation assignment for (a, b, z) that fails the commuting
// relator under both composition conventions; the relator-checker regression
// pins this down.  The abstract D4 x C2 model is what the pipeline uses.
inline std::array<Perm, 3> sym8_candidate_images() {
    return {Perm::parse_cycles("(1 2 3 4)(5 8 7 6)", 8),
            Perm::parse_cycles("(1 2)(3 4)(5 6)(7 8)", 8),
            Perm::parse_cycles("(1 2)(3 4)(5 8)(6 7)", 8)};
}

} // namespace flexigraph
