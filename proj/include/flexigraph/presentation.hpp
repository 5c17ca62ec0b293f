#pragma once

#include <cctype>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "flexigraph/error.hpp"
#include "flexigraph/words.hpp"

namespace flexigraph {

// A term list keeps the exponents the user wrote, so printing round-trips;
// flattening to +-1 letters happens only where scanning needs it.
struct Term {
    int gen; // 0-based generator index
    long long exp;
    friend bool operator==(const Term&, const Term&) = default;
};
using TermWord = std::vector<Term>;

namespace detail {

class WordLexer {
public:
    explicit WordLexer(std::string_view text) : text_(text) {}

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            if (text_[pos_] == '\n') {
                ++line_;
                col_ = 1;
            } else {
                ++col_;
            }
            ++pos_;
        }
    }

    bool eof() {
        skip_ws();
        return pos_ >= text_.size();
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    void expect(char c) {
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] != c)
            fail(std::string("expected '") + c + "'");
        advance();
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            advance();
            return true;
        }
        return false;
    }

    std::string ident() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            advance();
        if (start == pos_) fail("expected identifier");
        return std::string(text_.substr(start, pos_ - start));
    }

    long long integer() {
        skip_ws();
        std::size_t start = pos_;
        if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) advance();
        std::size_t digits = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            advance();
            ++digits;
        }
        if (digits == 0) fail("expected integer");
        return std::stoll(std::string(text_.substr(start, pos_ - start)));
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw Error::parse("syntax error at line " + std::to_string(line_) + ", column " +
                           std::to_string(col_) + ": " + what);
    }

private:
    void advance() {
        ++pos_;
        ++col_;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    int line_ = 1, col_ = 1;
};

// word := term ("*" term)* ; term := ident ("^" signed-int)?
inline TermWord parse_word_terms(WordLexer& lex, const std::map<std::string, int>& gens) {
    TermWord out;
    while (true) {
        std::string name = lex.ident();
        if (name == "1" && out.empty()) return out; // identity word
        auto it = gens.find(name);
        if (it == gens.end()) lex.fail("unknown identifier '" + name + "'");
        long long exp = 1;
        if (lex.accept('^')) exp = lex.integer();
        out.push_back({it->second, exp});
        if (!lex.accept('*')) break;
    }
    return out;
}

} // namespace detail

inline TermWord parse_word(std::string_view text, const std::map<std::string, int>& gens) {
    detail::WordLexer lex(text);
    TermWord w = detail::parse_word_terms(lex, gens);
    if (!lex.eof()) lex.fail("trailing input after word");
    return w;
}

inline FreeWord flatten(const TermWord& w, int rank) {
    FreeWord out(rank);
    for (const Term& t : w) out.append_power(t.gen + 1, t.exp);
    return out;
}

// "x1*x2^-1*x3" over the canonical generators x1..xk
inline FreeWord parse_free_word(std::string_view text, int rank) {
    std::map<std::string, int> gens;
    for (int i = 1; i <= rank; ++i) gens["x" + std::to_string(i)] = i - 1;
    return flatten(parse_word(text, gens), rank);
}

inline std::string print_word(const TermWord& w, const std::vector<std::string>& names) {
    if (w.empty()) return "1";
    std::string out;
    for (const Term& t : w) {
        if (!out.empty()) out += "*";
        out += names[t.gen];
        if (t.exp != 1) out += "^" + std::to_string(t.exp);
    }
    return out;
}

// Finite presentation over named generators; relators keep their written form.
struct Presentation {
    std::vector<std::string> generators;
    std::vector<TermWord> relators;

    std::map<std::string, int> gen_map() const {
        std::map<std::string, int> m;
        for (std::size_t i = 0; i < generators.size(); ++i)
            m[generators[i]] = static_cast<int>(i);
        return m;
    }
};

// file := "gens:" ident ("," ident)* ";" "rels:" word ("," word)* ";"
inline Presentation parse_presentation(std::string_view text) {
    detail::WordLexer lex(text);
    Presentation p;
    if (lex.ident() != "gens") lex.fail("expected 'gens:'");
    lex.expect(':');
    do {
        std::string name = lex.ident();
        for (const std::string& g : p.generators)
            if (g == name) lex.fail("duplicate generator '" + name + "'");
        p.generators.push_back(name);
    } while (lex.accept(','));
    lex.expect(';');
    std::map<std::string, int> gens = p.gen_map();
    if (lex.ident() != "rels") lex.fail("expected 'rels:'");
    lex.expect(':');
    do {
        if (lex.peek() == ';') lex.fail("empty relator");
        TermWord w = detail::parse_word_terms(lex, gens);
        if (w.empty()) lex.fail("empty relator");
        p.relators.push_back(std::move(w));
    } while (lex.accept(','));
    lex.expect(';');
    if (!lex.eof()) lex.fail("trailing input after presentation");
    return p;
}

inline std::string print_presentation(const Presentation& p) {
    std::string out = "gens: ";
    for (std::size_t i = 0; i < p.generators.size(); ++i) {
        if (i) out += ", ";
        out += p.generators[i];
    }
    out += "; rels: ";
    for (std::size_t i = 0; i < p.relators.size(); ++i) {
        if (i) out += ", ";
        out += print_word(p.relators[i], p.generators);
    }
    out += ";";
    return out;
}

} // namespace flexigraph
