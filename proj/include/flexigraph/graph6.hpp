#pragma once

#include <string>
#include <vector>

#include "flexigraph/graph.hpp"

namespace flexigraph {

// graph6 encoding: N(n) followed by the upper-triangle bit vector
// x(0,1), x(0,2), x(1,2), x(0,3), ... packed 6 bits per printable byte.
inline std::string graph6_encode(const LabeledGraph& g) {
    std::string out;
    long long n = g.n();
    if (n < 0 || n > 258047) throw Error::domain("graph6: order out of range");
    if (n <= 62) {
        out += static_cast<char>(n + 63);
    } else {
        out += static_cast<char>(126);
        out += static_cast<char>(((n >> 12) & 63) + 63);
        out += static_cast<char>(((n >> 6) & 63) + 63);
        out += static_cast<char>((n & 63) + 63);
    }
    int bit = 5;
    char cur = 0;
    for (int j = 1; j < g.n(); ++j) {
        for (int i = 0; i < j; ++i) {
            if (g.adjacent(i, j)) cur |= static_cast<char>(1 << bit);
            if (--bit < 0) {
                out += static_cast<char>(cur + 63);
                bit = 5;
                cur = 0;
            }
        }
    }
    if (g.n() >= 2 && bit != 5) out += static_cast<char>(cur + 63);
    return out;
}

inline LabeledGraph graph6_decode(const std::string& s) {
    std::size_t pos = 0;
    auto next = [&]() -> int {
        if (pos >= s.size()) throw Error::parse("graph6: truncated input");
        int v = static_cast<unsigned char>(s[pos++]) - 63;
        if (v < 0 || v > 63) throw Error::parse("graph6: byte out of range");
        return v;
    };
    long long n;
    if (!s.empty() && s[0] == static_cast<char>(126)) {
        ++pos;
        if (pos < s.size() && s[pos] == static_cast<char>(126))
            throw Error::parse("graph6: orders above 258047 unsupported");
        n = next();
        n = (n << 6) | next();
        n = (n << 6) | next();
    } else {
        n = next();
    }
    std::vector<Edge> edges;
    int bit = -1, cur = 0;
    for (int j = 1; j < n; ++j) {
        for (int i = 0; i < j; ++i) {
            if (bit < 0) {
                cur = next();
                bit = 5;
            }
            if (cur & (1 << bit)) edges.push_back({i, j});
            --bit;
        }
    }
    return LabeledGraph(static_cast<int>(n), std::move(edges));
}

} // namespace flexigraph
