#pragma once

// Seeded generators for algebras and test objects. Only std::mt19937_64 is
// used directly (its output sequence is fixed by the standard); bounded draws
// use rejection sampling so results do not depend on the standard library.

#include <cstdint>
#include <random>
#include <vector>

#include "algebra.hpp"

namespace koszulkit {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    // Uniform integer in [lo, hi].
    int uniform(int lo, int hi) {
        if (hi < lo) throw Error("empty range");
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
        std::uint64_t x;
        do x = engine_();
        while (x >= limit);
        return lo + static_cast<int>(x % span);
    }

    bool chance(int num, int den) { return uniform(0, den - 1) < num; }

    template <class T>
    const T& pick(const std::vector<T>& v) {
        return v[uniform(0, static_cast<int>(v.size()) - 1)];
    }

    Rng fork() { return Rng(next()); }

private:
    std::mt19937_64 engine_;
};

struct AlgebraShape {
    int min_vertices = 1;
    int max_vertices = 6;
    int max_arrows = 10;
    int relation_percent = 50;
    bool finite_only = true;
};

// Random quiver with random quadratic monomial relations; when finite_only,
// allowed compositions on cycles are turned into relations until the allowed
// graph is acyclic.
inline MonomialAlgebra random_algebra(Rng& rng, const AlgebraShape& shape = {}) {
    Quiver q;
    int nv = rng.uniform(shape.min_vertices, shape.max_vertices);
    for (int v = 0; v < nv; ++v) q.vertices.push_back(std::to_string(v + 1));
    int na = rng.uniform(0, shape.max_arrows);
    for (int a = 0; a < na; ++a)
        q.arrows.push_back({"a" + std::to_string(a + 1), rng.uniform(0, nv - 1), rng.uniform(0, nv - 1)});
    std::vector<std::vector<char>> rel(na, std::vector<char>(na, 0));
    for (int a = 0; a < na; ++a)
        for (int b = 0; b < na; ++b)
            if (q.arrows[a].target == q.arrows[b].source) rel[a][b] = rng.chance(shape.relation_percent, 100);
    auto allowed = [&](int a, int b) { return q.arrows[a].target == q.arrows[b].source && !rel[a][b]; };
    while (shape.finite_only) {
        // find a cycle in the allowed graph by DFS and forbid its closing edge
        std::vector<int> color(na, 0);
        std::pair<int, int> back{-1, -1};
        std::vector<std::pair<int, int>> stack;
        for (int s = 0; s < na && back.first < 0; ++s) {
            if (color[s]) continue;
            stack.push_back({s, 0});
            color[s] = 1;
            while (!stack.empty() && back.first < 0) {
                auto& [a, next] = stack.back();
                if (next == na) {
                    color[a] = 2;
                    stack.pop_back();
                    continue;
                }
                int b = next++;
                if (!allowed(a, b)) continue;
                if (color[b] == 1) {
                    back = {a, b};
                } else if (color[b] == 0) {
                    color[b] = 1;
                    stack.push_back({b, 0});
                }
            }
        }
        if (back.first < 0) break;
        rel[back.first][back.second] = 1;
    }
    std::vector<std::pair<int, int>> rels;
    for (int a = 0; a < na; ++a)
        for (int b = 0; b < na; ++b)
            if (rel[a][b]) rels.emplace_back(a, b);
    return MonomialAlgebra(std::move(q), rels);
}

}  // namespace koszulkit
