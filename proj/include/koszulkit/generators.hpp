#pragma once

// Seeded random presentations, copresentations and two-term complexes.

#include "module_expr.hpp"
#include "random.hpp"

namespace koszulkit {

inline Rational random_coefficient(Rng& rng) {
    static const int nums[] = {1, -1, 2, -2, 1, 3};
    static const int dens[] = {1, 1, 1, 1, 2, 1};
    int i = rng.uniform(0, 5);
    Rational c(nums[i], dens[i]);
    c.canonicalize();
    return c;
}

// Random combination of nonzero words from `from` to `to` of the given length (possibly zero).
inline PathCombination random_entry(Rng& rng, const MonomialAlgebra& A, int from, int to, int length,
                                    std::size_t budget = 4000) {
    PathCombination c;
    if (length < 0) return c;
    auto lv = enumerate_words(A, from, WordDirection::from, length, budget);
    if (static_cast<int>(lv.levels.size()) <= length) return c;
    std::vector<Path> ws;
    for (auto& w : lv.levels[length])
        if (w.target == to) ws.push_back(w);
    if (ws.empty()) return c;
    int terms = rng.uniform(1, std::min<int>(2, ws.size()));
    for (int t = 0; t < terms; ++t) add_term(c, rng.pick(ws), random_coefficient(rng));
    return c;
}

struct PresentationShape {
    int max_targets = 2;
    int max_sources = 2;
    int max_degree = 1;  // target summands sit in degrees [0, max_degree]
    int max_gap = 2;     // source degree minus target degree in [1, max_gap]
};

// Random presentation (projective) or copresentation (injective) with word entries.
inline Presentation random_presentation(Rng& rng, const MonomialAlgebra& A, SummandKind kind,
                                        const PresentationShape& shape = {}) {
    Presentation p;
    p.kind = kind;
    const int nv = A.num_vertices();
    int nt = rng.uniform(1, shape.max_targets);
    int ns = rng.uniform(0, shape.max_sources);
    if (kind == SummandKind::projective) {
        for (int i = 0; i < nt; ++i) p.targets.push_back({rng.uniform(0, nv - 1), rng.uniform(0, shape.max_degree), ""});
        for (int j = 0; j < ns; ++j) {
            const Summand& t = rng.pick(p.targets);
            p.sources.push_back({rng.uniform(0, nv - 1), t.degree + rng.uniform(1, shape.max_gap), ""});
        }
    } else {
        // injective: I^0 summands (sources) with socles in degrees [-max_degree, 0], I^1 below them
        for (int i = 0; i < nt; ++i)
            p.sources.push_back({rng.uniform(0, nv - 1), -rng.uniform(0, shape.max_degree), ""});
        for (int j = 0; j < ns; ++j) {
            const Summand& s = rng.pick(p.sources);
            p.targets.push_back({rng.uniform(0, nv - 1), s.degree - rng.uniform(1, shape.max_gap), ""});
        }
    }
    for (std::size_t r = 0; r < p.targets.size(); ++r)
        for (std::size_t c = 0; c < p.sources.size(); ++c) {
            const Summand &row = p.targets[r], &col = p.sources[c];
            if (!rng.chance(2, 3)) continue;
            PathCombination e = random_entry(rng, A, row.vertex, col.vertex, col.degree - row.degree);
            if (!e.empty()) p.entries[{static_cast<int>(r), static_cast<int>(c)}] = std::move(e);
        }
    return p;
}

// Random two-term complex of the given kind placed in cohomological degrees lo, lo + 1.
inline SummandComplex random_two_term(Rng& rng, const AlgebraPtr& A, SummandKind kind, int lo = 0,
                                      const PresentationShape& shape = {}) {
    Presentation p = random_presentation(rng, *A, kind, shape);
    SummandComplex X(kind, A, lo);
    X.push_term(p.sources);
    X.push_term(p.targets);
    X.set_diff(lo, p.entries);
    return X;
}

inline std::string summand_list(const MonomialAlgebra& A, const std::vector<Summand>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i)
        s += (i ? ", " : "") + A.vertex_name(xs[i].vertex) + "@" + std::to_string(xs[i].degree);
    return s;
}

// Module expression text for a presentation, parseable by parse_module.
inline std::string presentation_expr(const MonomialAlgebra& A, const Presentation& p) {
    const bool proj = p.kind == SummandKind::projective;
    std::string s = proj ? "coker(" : "ker(";
    s += summand_list(A, proj ? p.targets : p.sources) + "; " + summand_list(A, proj ? p.sources : p.targets) + "; ";
    for (std::size_t r = 0; r < p.targets.size(); ++r) {
        if (r) s += " | ";
        for (std::size_t c = 0; c < p.sources.size(); ++c) {
            if (c) s += ", ";
            auto it = p.entries.find({static_cast<int>(r), static_cast<int>(c)});
            if (it == p.entries.end()) continue;
            bool first = true;
            for (auto& [w, x] : it->second) {
                Rational mag = abs(x);
                s += first ? (x < 0 ? "-" : "") : (x < 0 ? " - " : " + ");
                s += to_string(mag) + "*" + A.word_string(w);
                first = false;
            }
        }
    }
    return s + ")";
}

}  // namespace koszulkit
