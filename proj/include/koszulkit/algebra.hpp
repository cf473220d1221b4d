#pragma once

// Quivers, quadratic monomial algebras and their path-word bases.
// Words are read left to right: "a b" traverses a, then b.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <memory>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace koszulkit {

struct ParseError : Error {
    int line;
    ParseError(int line_no, const std::string& msg)
        : Error(line_no > 0 ? "line " + std::to_string(line_no) + ": " + msg : msg), line(line_no) {}
};

struct Arrow {
    std::string name;
    int source;
    int target;
};

struct Quiver {
    std::vector<std::string> vertices;
    std::vector<Arrow> arrows;

    int num_vertices() const { return static_cast<int>(vertices.size()); }
    int num_arrows() const { return static_cast<int>(arrows.size()); }
};

// Trivial word when arrows is empty (then source == target).
struct Path {
    int source = 0;
    int target = 0;
    std::vector<int> arrows;

    int length() const { return static_cast<int>(arrows.size()); }
    bool trivial() const { return arrows.empty(); }
    auto operator<=>(const Path&) const = default;
};

struct WordHash {
    std::size_t operator()(const std::vector<int>& w) const {
        std::size_t h = w.size();
        for (int a : w) h ^= static_cast<std::size_t>(a) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    }
};

struct FiniteDimInfo {
    bool finite = false;
    std::optional<int> max_length;
    std::optional<Integer> dimension;
};

class MonomialAlgebra {
public:
    MonomialAlgebra() = default;
    MonomialAlgebra(Quiver q, const std::vector<std::pair<int, int>>& relations) : quiver_(std::move(q)) {
        const int n = quiver_.num_arrows();
        zero_.assign(n, std::vector<char>(n, 0));
        allowed_.assign(n, std::vector<char>(n, 0));
        for (auto [a, b] : relations) {
            if (a < 0 || b < 0 || a >= n || b >= n) throw Error("relation arrow out of range");
            if (!composable(a, b)) throw Error("relation not composable");
            zero_[a][b] = 1;
        }
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) allowed_[a][b] = composable(a, b) && !zero_[a][b];
        out_.assign(quiver_.num_vertices(), {});
        in_.assign(quiver_.num_vertices(), {});
        for (int a = 0; a < n; ++a) {
            out_[quiver_.arrows[a].source].push_back(a);
            in_[quiver_.arrows[a].target].push_back(a);
        }
        for (int v = 0; v < quiver_.num_vertices(); ++v) vertex_index_[quiver_.vertices[v]] = v;
        for (int a = 0; a < n; ++a) arrow_index_[quiver_.arrows[a].name] = a;
        compute_finiteness();
    }

    const Quiver& quiver() const { return quiver_; }
    int num_vertices() const { return quiver_.num_vertices(); }
    int num_arrows() const { return quiver_.num_arrows(); }
    const Arrow& arrow(int a) const { return quiver_.arrows[a]; }
    const std::string& vertex_name(int v) const { return quiver_.vertices[v]; }
    const std::string& arrow_name(int a) const { return quiver_.arrows[a].name; }
    int source(int a) const { return quiver_.arrows[a].source; }
    int target(int a) const { return quiver_.arrows[a].target; }
    const std::vector<int>& out_arrows(int v) const { return out_[v]; }
    const std::vector<int>& in_arrows(int v) const { return in_[v]; }

    std::optional<int> find_vertex(const std::string& name) const {
        auto it = vertex_index_.find(name);
        if (it == vertex_index_.end()) return std::nullopt;
        return it->second;
    }
    std::optional<int> find_arrow(const std::string& name) const {
        auto it = arrow_index_.find(name);
        if (it == arrow_index_.end()) return std::nullopt;
        return it->second;
    }
    int vertex(const std::string& name) const {
        auto v = find_vertex(name);
        if (!v) throw Error("unknown vertex '" + name + "'");
        return *v;
    }
    int arrow_id(const std::string& name) const {
        auto a = find_arrow(name);
        if (!a) throw Error("unknown arrow '" + name + "'");
        return *a;
    }

    bool composable(int a, int b) const { return target(a) == source(b); }
    bool is_relation(int a, int b) const { return zero_[a][b] != 0; }
    bool allowed(int a, int b) const { return allowed_[a][b] != 0; }
    const std::vector<std::vector<char>>& allowed_graph() const { return allowed_; }
    const std::vector<std::vector<char>>& zero_graph() const { return zero_; }

    std::vector<std::pair<int, int>> relations() const {
        std::vector<std::pair<int, int>> out;
        for (int a = 0; a < num_arrows(); ++a)
            for (int b = 0; b < num_arrows(); ++b)
                if (zero_[a][b]) out.emplace_back(a, b);
        return out;
    }
    int num_relations() const { return static_cast<int>(relations().size()); }

    const FiniteDimInfo& finite_info() const { return finite_; }
    bool finite_dimensional() const { return finite_.finite; }

    bool is_nonzero(const std::vector<int>& word) const {
        for (std::size_t i = 0; i + 1 < word.size(); ++i)
            if (!allowed(word[i], word[i + 1])) return false;
        return true;
    }

    std::string word_string(const Path& p) const {
        if (p.trivial()) return "e_" + vertex_name(p.source);
        std::string s;
        for (std::size_t i = 0; i < p.arrows.size(); ++i) {
            if (i) s += '.';
            s += arrow_name(p.arrows[i]);
        }
        return s;
    }

    Path make_path(int start, std::vector<int> arrows) const {
        Path p{start, start, std::move(arrows)};
        for (int a : p.arrows) {
            if (source(a) != p.target) throw Error("word is not composable");
            p.target = target(a);
        }
        return p;
    }

    bool operator==(const MonomialAlgebra& o) const {
        if (quiver_.vertices != o.quiver_.vertices || num_arrows() != o.num_arrows()) return false;
        for (int a = 0; a < num_arrows(); ++a) {
            const auto &x = arrow(a), &y = o.arrow(a);
            if (x.name != y.name || x.source != y.source || x.target != y.target) return false;
        }
        return zero_ == o.zero_;
    }

private:
    void compute_finiteness() {
        // Kahn's algorithm on the allowed graph (vertices = arrows).
        const int n = num_arrows();
        std::vector<int> indeg(n, 0);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                if (allowed_[a][b]) ++indeg[b];
        std::vector<int> order;
        for (int a = 0; a < n; ++a)
            if (indeg[a] == 0) order.push_back(a);
        for (std::size_t i = 0; i < order.size(); ++i)
            for (int b = 0; b < n; ++b)
                if (allowed_[order[i]][b] && --indeg[b] == 0) order.push_back(b);
        finite_ = {};
        if (static_cast<int>(order.size()) != n) return;
        finite_.finite = true;
        // longest[a]: length of the longest nonzero word ending with a
        std::vector<int> longest(n, 1);
        std::vector<Integer> ending(n, 1);
        Integer dim = num_vertices();
        int max_len = 0;
        for (int a : order) {
            for (int b = 0; b < n; ++b)
                if (allowed_[a][b]) {
                    longest[b] = std::max(longest[b], longest[a] + 1);
                    ending[b] += ending[a];
                }
        }
        for (int a = 0; a < n; ++a) {
            max_len = std::max(max_len, longest[a]);
            dim += ending[a];
        }
        finite_.max_length = max_len;
        finite_.dimension = dim;
    }

    Quiver quiver_;
    std::vector<std::vector<char>> zero_;
    std::vector<std::vector<char>> allowed_;
    std::vector<std::vector<int>> out_;
    std::vector<std::vector<int>> in_;
    std::unordered_map<std::string, int> vertex_index_;
    std::unordered_map<std::string, int> arrow_index_;
    FiniteDimInfo finite_;
};

inline bool valid_identifier(const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
        return std::isalnum(c) || c == '_';
    });
}

inline MonomialAlgebra parse_algebra(const std::string& text) {
    Quiver q;
    std::vector<std::pair<int, int>> rels;
    std::map<std::string, int> vertex_ids, arrow_ids;
    std::set<std::pair<int, int>> seen;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::vector<std::string> tok;
        for (std::string t; ls >> t;) tok.push_back(t);
        if (tok.empty()) continue;
        auto fresh = [&](const std::string& id) {
            if (!valid_identifier(id)) throw ParseError(line_no, "invalid identifier '" + id + "'");
            if (vertex_ids.count(id) || arrow_ids.count(id))
                throw ParseError(line_no, "duplicate identifier '" + id + "'");
        };
        if (tok[0] == "vertex") {
            if (tok.size() != 2) throw ParseError(line_no, "syntax error: expected 'vertex <id>'");
            fresh(tok[1]);
            vertex_ids[tok[1]] = q.num_vertices();
            q.vertices.push_back(tok[1]);
        } else if (tok[0] == "arrow") {
            if (tok.size() != 4) throw ParseError(line_no, "syntax error: expected 'arrow <id> <source> <target>'");
            fresh(tok[1]);
            for (int k = 2; k <= 3; ++k)
                if (!vertex_ids.count(tok[k])) throw ParseError(line_no, "unknown endpoint '" + tok[k] + "'");
            arrow_ids[tok[1]] = q.num_arrows();
            q.arrows.push_back({tok[1], vertex_ids[tok[2]], vertex_ids[tok[3]]});
        } else if (tok[0] == "relation") {
            if (tok.size() != 3) throw ParseError(line_no, "syntax error: expected 'relation <arrow> <arrow>'");
            for (int k = 1; k <= 2; ++k)
                if (!arrow_ids.count(tok[k])) throw ParseError(line_no, "unknown arrow '" + tok[k] + "'");
            int a = arrow_ids[tok[1]], b = arrow_ids[tok[2]];
            if (q.arrows[a].target != q.arrows[b].source)
                throw ParseError(line_no, "relation not composable: " + tok[1] + " " + tok[2]);
            if (!seen.insert({a, b}).second) throw ParseError(line_no, "duplicate relation " + tok[1] + " " + tok[2]);
            rels.emplace_back(a, b);
        } else {
            throw ParseError(line_no, "syntax error: unknown keyword '" + tok[0] + "'");
        }
    }
    return MonomialAlgebra(std::move(q), rels);
}

inline std::string serialize(const MonomialAlgebra& A) {
    std::ostringstream out;
    for (auto& v : A.quiver().vertices) out << "vertex " << v << "\n";
    for (auto& a : A.quiver().arrows)
        out << "arrow " << a.name << " " << A.vertex_name(a.source) << " " << A.vertex_name(a.target) << "\n";
    for (auto [a, b] : A.relations()) out << "relation " << A.arrow_name(a) << " " << A.arrow_name(b) << "\n";
    return out.str();
}

// Opposite quiver (arrow a becomes a_op with reversed ends, same index) modulo
// the duals of the allowed words: (b_op, a_op) is a relation iff (a, b) is allowed.
inline MonomialAlgebra koszul_dual(const MonomialAlgebra& A) {
    Quiver q;
    q.vertices = A.quiver().vertices;
    for (auto& a : A.quiver().arrows) q.arrows.push_back({a.name + "_op", a.target, a.source});
    std::vector<std::pair<int, int>> rels;
    for (int b = 0; b < A.num_arrows(); ++b)
        for (int a = 0; a < A.num_arrows(); ++a)
            if (A.allowed(a, b)) rels.emplace_back(b, a);
    std::sort(rels.begin(), rels.end());
    return MonomialAlgebra(std::move(q), rels);
}

inline std::optional<Path> multiply_words(const MonomialAlgebra& A, const Path& p, const Path& q) {
    if (p.target != q.source) return std::nullopt;
    if (!p.trivial() && !q.trivial() && !A.allowed(p.arrows.back(), q.arrows.front())) return std::nullopt;
    Path r{p.source, q.target, p.arrows};
    r.arrows.insert(r.arrows.end(), q.arrows.begin(), q.arrows.end());
    return r;
}

// Number of nonzero words of length n from x to y, via powers of the allowed graph.
inline Integer count_paths(const MonomialAlgebra& A, int x, int y, int n) {
    if (n == 0) return x == y ? 1 : 0;
    const int m = A.num_arrows();
    std::vector<Integer> c(m, 0);
    for (int a : A.out_arrows(x)) c[a] = 1;
    for (int k = 1; k < n; ++k) {
        std::vector<Integer> next(m, 0);
        for (int a = 0; a < m; ++a) {
            if (c[a] == 0) continue;
            for (int b : A.out_arrows(A.target(a)))
                if (A.allowed(a, b)) next[b] += c[a];
        }
        c = std::move(next);
    }
    Integer total = 0;
    for (int a : A.in_arrows(y)) total += c[a];
    return total;
}

// All nonzero words from x (outgoing) or into x (incoming), grouped by length,
// each group in lexicographic order of arrow indices. `complete` is false when
// longer nonzero words exist beyond the returned levels.
enum class WordDirection { from, into };

struct WordLevels {
    std::vector<std::vector<Path>> levels;
    bool complete = true;
};

inline WordLevels enumerate_words(const MonomialAlgebra& A, int x, WordDirection dir, int max_length,
                                  std::size_t budget = SIZE_MAX) {
    WordLevels out;
    if (max_length < 0) {
        out.complete = false;
        return out;
    }
    out.levels.push_back({Path{x, x, {}}});
    std::size_t total = 1;
    for (int len = 1;; ++len) {
        std::vector<Path> next;
        for (const Path& w : out.levels.back()) {
            if (dir == WordDirection::from) {
                for (int b : A.out_arrows(w.target)) {
                    if (!w.trivial() && !A.allowed(w.arrows.back(), b)) continue;
                    Path n{w.source, A.target(b), w.arrows};
                    n.arrows.push_back(b);
                    next.push_back(std::move(n));
                }
            } else {
                for (int a : A.in_arrows(w.source)) {
                    if (!w.trivial() && !A.allowed(a, w.arrows.front())) continue;
                    Path n{A.source(a), w.target, {a}};
                    n.arrows.insert(n.arrows.end(), w.arrows.begin(), w.arrows.end());
                    next.push_back(std::move(n));
                }
            }
        }
        if (next.empty()) break;
        if (len > max_length || total + next.size() > budget) {
            out.complete = false;
            break;
        }
        if (dir == WordDirection::into)
            std::sort(next.begin(), next.end(), [](const Path& a, const Path& b) { return a.arrows < b.arrows; });
        total += next.size();
        out.levels.push_back(std::move(next));
    }
    return out;
}

inline bool is_radical_square_zero(const MonomialAlgebra& A) {
    for (auto& row : A.allowed_graph())
        for (char c : row)
            if (c) return false;
    return true;
}

// The pair (Lambda, Lambda!) with arrow a of Lambda corresponding to arrow a of the dual.
using AlgebraPtr = std::shared_ptr<const MonomialAlgebra>;

struct KoszulPair {
    AlgebraPtr lambda;
    AlgebraPtr dual;
    explicit KoszulPair(MonomialAlgebra A)
        : lambda(std::make_shared<const MonomialAlgebra>(std::move(A))),
          dual(std::make_shared<const MonomialAlgebra>(koszul_dual(*lambda))) {}
};

}  // namespace koszulkit
