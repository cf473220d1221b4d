#pragma once

// Property suite over a corpus directory: each row runs one family of
// executable checks on the corpus and on seeded random inputs, and reports
// PASS or FAIL with a witness.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "generators.hpp"
#include "koszul.hpp"
#include "series.hpp"

namespace koszulkit {

struct CorpusEntry {
    std::string name;
    KoszulPair pair;
    std::optional<std::string> golden_betti;
};

struct Corpus {
    std::string dir;
    std::vector<CorpusEntry> entries;
    std::vector<std::string> warnings;
};

inline std::string read_text(const std::filesystem::path& p) {
    std::ifstream in(p);
    if (!in) throw Error("cannot read " + p.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// All `*.alg` files of a directory in name order; `<name>.betti` next to an
// algebra file is its expected Betti golden file.
inline Corpus load_corpus(const std::string& dir) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir)) throw Error("corpus directory not found: " + dir);
    std::vector<fs::path> files;
    for (auto& e : fs::directory_iterator(dir))
        if (e.is_regular_file() && e.path().extension() == ".alg") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    Corpus c;
    c.dir = dir;
    for (auto& f : files) {
        MonomialAlgebra A;
        try {
            A = parse_algebra(read_text(f));
        } catch (const Error& e) {
            throw Error(f.filename().string() + ": " + e.what());
        }
        CorpusEntry entry{f.stem().string(), KoszulPair(std::move(A)), std::nullopt};
        fs::path g = f;
        g.replace_extension(".betti");
        if (fs::exists(g)) entry.golden_betti = read_text(g);
        c.entries.push_back(std::move(entry));
    }
    if (c.entries.empty()) c.warnings.push_back("no algebra files in " + dir);
    return c;
}

inline std::string one_line(std::string s) {
    while (!s.empty() && s.back() == '\n') s.pop_back();
    std::replace(s.begin(), s.end(), '\n', ';');
    return s;
}

// Betti tables of the simples of an algebra, as stored in golden files.
inline std::string betti_golden_text(const AlgebraPtr& A, int steps, const Limits& lim = {}) {
    std::string s;
    for (int x = 0; x < A->num_vertices(); ++x) {
        s += "# simple " + A->vertex_name(x) + "\n";
        s += format_betti(minimal_projective_resolution(simple_module(A, x), steps, lim).betti, *A);
    }
    return s;
}

struct CheckResult {
    explicit CheckResult(std::string n) : name(std::move(n)) {}

    std::string name;
    bool ok = true;
    int checked = 0;
    std::string detail;
    std::string witness;

    void fail(std::string w) {
        if (ok) witness = std::move(w);
        ok = false;
    }
};

struct SuiteOptions {
    std::uint64_t seed = 1;
    int random_algebras = 20;
    int syzygy_modules = 40;
    int defect_modules = 30;
    int defect_cutoff = 20;
    int series_modules_per_algebra = 2;
    int series_order = 30;
    int poincare_steps = 20;
    int shift_complexes = 20;
    int truncation_modules = 20;
    int golden_steps = 6;
};

namespace suite_detail {

inline const AlgebraShape kRandomShape{1, 6, 10, 50, true};
inline const AlgebraShape kSmallShape{1, 4, 6, 50, true};
inline const Limits kSmallLimits{10, 4000};
inline const Limits kArrowLimits{12, 20000};

inline const CorpusEntry& pick_entry(const Corpus& c, int i) { return c.entries[i % c.entries.size()]; }

}  // namespace suite_detail

// Every simple of every corpus algebra and of `random_count` random algebras.
inline CheckResult check_koszul_certificates(const Corpus& c, int random_count, Rng& rng) {
    CheckResult r{"koszul-certificate"};
    auto run = [&](const KoszulPair& P, const std::string& label) {
        KoszulReport k = koszul_certificate(P);
        r.checked += static_cast<int>(k.vertices.size());
        for (auto& v : k.vertices)
            for (auto& f : v.failures) r.fail(label + " vertex " + P.lambda->vertex_name(v.vertex) + ": " + f);
    };
    for (auto& e : c.entries) run(e.pair, e.name);
    for (int i = 0; i < random_count; ++i) {
        KoszulPair P(random_algebra(rng, suite_detail::kRandomShape));
        run(P, "random algebra [" + one_line(serialize(*P.lambda)) + "]");
    }
    r.detail = std::to_string(c.entries.size()) + " corpus + " + std::to_string(random_count) + " random algebras";
    return r;
}

inline CheckResult check_arrow_linearity(const Corpus& c) {
    CheckResult r{"arrow-ideal-linearity"};
    for (auto& e : c.entries)
        for (int a = 0; a < e.pair.lambda->num_arrows(); ++a) {
            ArrowCheck k = check_arrow(e.pair, a, suite_detail::kArrowLimits);
            ++r.checked;
            for (auto& f : k.failures) r.fail(e.name + " arrow " + e.pair.lambda->arrow_name(a) + ": " + f);
        }
    r.detail = "K(C(a_op)) resolves L(a), G(L(a)) coresolves C(a_op)";
    return r;
}

// Second syzygies of random presentations (or cosyzygies of copresentations)
// decompose into shifted arrow ideals (coideals).
inline CheckResult check_syzygy_decomposition(const Corpus& c, int count, SummandKind kind, Rng& rng) {
    const bool proj = kind == SummandKind::projective;
    CheckResult r{proj ? "syzygy-arrow-ideals" : "cosyzygy-arrow-coideals"};
    for (int i = 0; i < count && !c.entries.empty(); ++i) {
        const CorpusEntry& e = suite_detail::pick_entry(c, i);
        const AlgebraPtr& A = e.pair.lambda;
        Presentation p = random_presentation(rng, *A, kind);
        const std::string expr = presentation_expr(*A, p);
        try {
            GradedModule M = presented_module(A, p, {});
            Resolution R = proj ? minimal_projective_resolution(M, 3, {}) : minimal_injective_coresolution(M, 3, {});
            if (R.syzygies.size() > 2) syzygy_decomposition(R, 2, {});
            ++r.checked;
        } catch (const PropertyViolation& ex) {
            r.fail(e.name + " " + expr + ": " + ex.what());
        }
    }
    r.detail = std::to_string(r.checked) + (proj ? " random coker modules" : " random ker modules");
    return r;
}

// ld <= 1 on random presented modules; ld = 0 over radical-square-zero algebras.
inline CheckResult check_linearity_defect(const Corpus& c, int count, int cutoff, Rng& rng) {
    CheckResult r{"linearity-defect"};
    int rad2 = 0;
    for (int i = 0; i < count && !c.entries.empty(); ++i) {
        const CorpusEntry& e = suite_detail::pick_entry(c, i);
        const AlgebraPtr& A = e.pair.lambda;
        Presentation p = random_presentation(rng, *A, SummandKind::projective);
        GradedModule M = presented_module(A, p, {});
        LinDefectReport d = linearity_defect(M, cutoff, {});
        ++r.checked;
        const std::string label = e.name + " " + presentation_expr(*A, p);
        if (!d.defect || *d.defect > 1)
            r.fail(label + ": linearity defect " + (d.defect ? std::to_string(*d.defect) : "> cutoff"));
        if (is_radical_square_zero(*A)) {
            ++rad2;
            if (d.defect != 0) r.fail(label + ": nonzero linearity defect over a radical-square-zero algebra");
        }
    }
    r.detail = std::to_string(r.checked) + " modules (" + std::to_string(rad2) + " radical-square-zero), cutoff " +
               std::to_string(cutoff);
    return r;
}

struct SeriesProbe {
    std::string label;
    GradedModule module;
    SummandKind kind;  // side of the Poincare series
};

// Simples, projectives and arrow ideals over the algebra, injectives, simples
// and arrow coideals over its dual, and random presented / copresented modules.
inline std::vector<SeriesProbe> corpus_modules(const CorpusEntry& e, int random_per_kind, Rng& rng,
                                               const Limits& lim = {}) {
    const AlgebraPtr& A = e.pair.lambda;
    const AlgebraPtr& D = e.pair.dual;
    std::vector<SeriesProbe> out;
    const auto P = SummandKind::projective, I = SummandKind::injective;
    for (int x = 0; x < A->num_vertices(); ++x) {
        const std::string v = A->vertex_name(x);
        out.push_back({"S(" + v + ")", simple_module(A, x), P});
        out.push_back({"P(" + v + ")", projective_module(A, x, 0, lim), P});
        out.push_back({"dual I(" + v + ")", injective_module(D, x, 0, lim), I});
        out.push_back({"dual S(" + v + ")", simple_module(D, x), I});
    }
    for (int a = 0; a < A->num_arrows(); ++a) {
        out.push_back({"L(" + A->arrow_name(a) + ")", arrow_ideal(A, a, lim), P});
        out.push_back({"dual C(" + D->arrow_name(a) + ")", arrow_coideal(D, a, lim), I});
    }
    for (int i = 0; i < random_per_kind; ++i)
        for (SummandKind kind : {P, I}) {
            Presentation p = random_presentation(rng, *A, kind);
            out.push_back({presentation_expr(*A, p), presented_module(A, p, lim), kind});
        }
    return out;
}

// First mismatch between a closed module Hilbert series and the module's dimensions.
inline std::optional<std::string> hilbert_mismatch(const ModuleSeries& s, const GradedModule& M, int order) {
    if (!s.closed) return "no closed form: " + s.note;
    const bool up = s.side == Side::t;
    const int from = up ? std::min(M.lo(), 0) : std::min(-M.hi(), 0);
    const int to = up ? (M.complete_above() ? order : std::min(order, M.hi()))
                      : (M.complete_below() ? order : std::min(order, -M.lo()));
    for (int v = 0; v < M.algebra().num_vertices(); ++v) {
        auto coeffs = s.per_vertex[v].expand_range(from, to);
        for (int k = from; k <= to; ++k) {
            const int n = up ? k : -k;
            if (coeffs[k - from] != M.dim(v, n))
                return "vertex " + M.algebra().vertex_name(v) + " degree " + std::to_string(n) + ": series gives " +
                       coeffs[k - from].get_str() + ", module has " + std::to_string(M.dim(v, n));
        }
    }
    return std::nullopt;
}

// First mismatch between a closed Poincare series and an engine Betti table.
inline std::optional<std::string> poincare_mismatch(const PoincareSeries& p, const BettiTable& b, int nv) {
    if (!p.closed) return "no closed form: " + p.note;
    for (int s = 0; s < b.steps; ++s) {
        std::vector<int> per(nv, 0);
        for (auto& [k, m] : b.entries)
            if (std::get<0>(k) == s) per[std::get<2>(k)] += m;
        for (int v = 0; v < nv; ++v)
            if (p.per_vertex[v].coefficient(s) != per[v])
                return "step " + std::to_string(s) + " vertex " + std::to_string(v) + ": series gives " +
                       p.per_vertex[v].coefficient(s).get_str() + ", resolution has " + std::to_string(per[v]);
    }
    return std::nullopt;
}

inline CheckResult check_rational_series(const Corpus& c, int random_per_kind, int order, int steps, Rng& rng) {
    CheckResult r{"rational-series"};
    for (auto& e : c.entries) {
        const auto& A = *e.pair.lambda;
        auto H = hilbert_algebra_closed(A);
        for (int x = 0; x < A.num_vertices(); ++x)
            for (int y = 0; y < A.num_vertices(); ++y) {
                auto coeffs = H[x][y].expand(order);
                for (int n = 0; n <= order; ++n)
                    if (coeffs[n] != count_paths(A, x, y, n)) {
                        r.fail(e.name + " algebra series (" + A.vertex_name(x) + "," + A.vertex_name(y) +
                               ") degree " + std::to_string(n));
                        break;
                    }
            }
        for (auto& probe : corpus_modules(e, random_per_kind, rng)) {
            const GradedModule& M = probe.module;
            const std::string label = e.name + " " + probe.label;
            ++r.checked;
            if (auto m = hilbert_mismatch(hilbert_module_closed(M, natural_side(M), {}), M, order))
                r.fail(label + " hilbert: " + *m);
            // coresolutions over an infinite algebra are only windowed; Poincare there covers the dual simples
            const bool proj = probe.kind == SummandKind::projective;
            if (!proj && !M.algebra().finite_info().max_length && probe.label.rfind("dual", 0) != 0) continue;
            Resolution R = proj ? minimal_projective_resolution(M, steps, {}) : minimal_injective_coresolution(M, steps, {});
            if (auto m = poincare_mismatch(poincare_closed(M, probe.kind, {}), R.betti, M.algebra().num_vertices()))
                r.fail(label + " poincare: " + *m);
        }
    }
    r.detail = std::to_string(r.checked) + " modules, order " + std::to_string(order) + ", " + std::to_string(steps) +
               " steps";
    return r;
}

inline CheckResult check_shift_compatibility(int count, Rng& rng) {
    CheckResult r{"shift-compatibility"};
    for (int t = 0; t < count; ++t) {
        KoszulPair P(random_algebra(rng, suite_detail::kSmallShape));
        auto kind = t % 2 ? SummandKind::injective : SummandKind::projective;
        SummandComplex X = random_two_term(rng, P.dual, kind, 0);
        ++r.checked;
        auto reports = shift_compatibility(X, P.lambda, -2, 2, suite_detail::kSmallLimits);
        for (int i = -2; i <= 2; ++i)
            if (!reports[i + 2].ok)
                r.fail("[" + one_line(serialize(*P.lambda)) + "] " + one_line(format_complex(X)) + " shift " +
                       std::to_string(i) + ": " + reports[i + 2].witness);
    }
    r.detail = std::to_string(count) + " random two-term complexes, shifts -2..2";
    return r;
}

inline CheckResult check_truncation(int count, Rng& rng) {
    CheckResult r{"colinear-truncation"};
    for (int guard = 0; r.checked < count && guard < 20 * count; ++guard) {
        KoszulPair P(random_algebra(rng, suite_detail::kSmallShape));
        Presentation p = random_presentation(rng, *P.dual, SummandKind::injective);
        GradedModule M = presented_module(P.dual, p, suite_detail::kSmallLimits);
        if (M.is_zero()) continue;
        ++r.checked;
        const std::string label = "[" + one_line(serialize(*P.lambda)) + "] dual " + presentation_expr(*P.dual, p);
        try {
            TruncationReport t = find_linear_truncation(M, P.lambda, TruncationRule::lowest, suite_detail::kSmallLimits);
            if (!t.finite) r.fail(label + ": finite part is not finite-dimensional");
            if (!t.tail_colinear) r.fail(label + ": " + t.witness);
        } catch (const WindowError& ex) {
            r.fail(label + ": " + ex.what());
        }
    }
    r.detail = std::to_string(r.checked) + " random copresented dual-side modules";
    return r;
}

inline CheckResult check_roundtrip(const Corpus& c) {
    CheckResult r{"derived-roundtrip"};
    const Limits lim = suite_detail::kArrowLimits;
    for (auto& e : c.entries) {
        const AlgebraPtr& L = e.pair.lambda;
        std::vector<std::pair<std::string, GradedModule>> ms;
        for (int x = 0; x < L->num_vertices(); ++x) {
            ms.push_back({"S(" + L->vertex_name(x) + ")", simple_module(L, x)});
            ms.push_back({"P(" + L->vertex_name(x) + ")", projective_module(L, x, 0, lim)});
        }
        for (int a = 0; a < L->num_arrows(); ++a) ms.push_back({"L(" + L->arrow_name(a) + ")", arrow_ideal(L, a, lim)});
        for (auto& [label, N] : ms) {
            ++r.checked;
            RoundtripReport k = roundtrip_check(N, e.pair.dual, lim);
            if (!k.ok) r.fail(e.name + " " + label + ": " + (k.failures.empty() ? "failed" : k.failures.front()));
        }
    }
    r.detail = std::to_string(r.checked) + " simples, projectives and arrow ideals";
    return r;
}

inline const char* kSl2Text = "vertex 1\nvertex 2\narrow alpha 1 2\narrow beta 2 1\nrelation alpha beta\n";
inline const char* kA3Text = "vertex 1\nvertex 2\nvertex 3\narrow a 1 2\narrow b 2 3\nrelation a b\n";

// Variants of the reciprocity identity that hold on the sl2 and A3 examples to degree D.
inline std::vector<ReciprocityVariant> calibrate_reciprocity(int D) {
    std::vector<ReciprocityVariant> out;
    MonomialAlgebra S = parse_algebra(kSl2Text), T = parse_algebra(kA3Text);
    for (auto v : all_reciprocity_variants())
        if (reciprocity_holds(S, koszul_dual(S), v, D) && reciprocity_holds(T, koszul_dual(T), v, D)) out.push_back(v);
    return out;
}

inline CheckResult check_reciprocity(const Corpus& c, int D = 20) {
    CheckResult r{"hilbert-reciprocity"};
    auto variants = calibrate_reciprocity(D);
    if (variants.empty()) {
        r.fail("no orientation of the identity holds on the calibration examples");
        return r;
    }
    const ReciprocityVariant v = variants.front();
    for (auto& e : c.entries) {
        ++r.checked;
        if (!reciprocity_holds(*e.pair.lambda, *e.pair.dual, v, D))
            r.fail(e.name + ": " + to_string(v) + " is not the identity through degree " + std::to_string(D));
        else if (!reciprocity_holds_closed(*e.pair.lambda, *e.pair.dual, v))
            r.fail(e.name + ": closed forms violate " + to_string(v));
    }
    r.detail = "calibrated " + to_string(v) + " = identity, degree " + std::to_string(D);
    return r;
}

inline CheckResult check_betti_golden(const Corpus& c, int steps) {
    CheckResult r{"betti-golden"};
    for (auto& e : c.entries) {
        if (!e.golden_betti) continue;
        ++r.checked;
        std::string got = betti_golden_text(e.pair.lambda, steps);
        if (got == *e.golden_betti) continue;
        std::istringstream a(got), b(*e.golden_betti);
        std::string la, lb;
        int line = 0;
        while (true) {
            ++line;
            bool ga = static_cast<bool>(std::getline(a, la)), gb = static_cast<bool>(std::getline(b, lb));
            if (!ga && !gb) break;
            if (!ga) la = "<end>";
            if (!gb) lb = "<end>";
            if (la != lb) {
                r.fail(e.name + ".betti line " + std::to_string(line) + ": expected '" + lb + "', computed '" + la + "'");
                break;
            }
        }
    }
    r.detail = std::to_string(r.checked) + " golden Betti files, " + std::to_string(steps) + " steps";
    return r;
}

struct SuiteReport {
    std::vector<CheckResult> rows;
    std::vector<std::string> warnings;
    bool ok() const {
        return std::all_of(rows.begin(), rows.end(), [](const CheckResult& r) { return r.ok; });
    }
};

// Rows draw from independent generators forked from the seed, so each row
// is reproducible on its own.
inline SuiteReport run_suite(const Corpus& c, const SuiteOptions& o) {
    SuiteReport rep;
    rep.warnings = c.warnings;
    if (c.entries.empty()) return rep;
    Rng root(o.seed);
    std::vector<Rng> rngs;
    for (int i = 0; i < 8; ++i) rngs.push_back(root.fork());
    rep.rows.push_back(check_koszul_certificates(c, o.random_algebras, rngs[0]));
    rep.rows.push_back(check_arrow_linearity(c));
    rep.rows.push_back(check_syzygy_decomposition(c, o.syzygy_modules, SummandKind::projective, rngs[1]));
    rep.rows.push_back(check_syzygy_decomposition(c, o.syzygy_modules, SummandKind::injective, rngs[2]));
    rep.rows.push_back(check_linearity_defect(c, o.defect_modules, o.defect_cutoff, rngs[3]));
    rep.rows.push_back(check_rational_series(c, o.series_modules_per_algebra, o.series_order, o.poincare_steps, rngs[4]));
    rep.rows.push_back(check_shift_compatibility(o.shift_complexes, rngs[5]));
    rep.rows.push_back(check_truncation(o.truncation_modules, rngs[6]));
    rep.rows.push_back(check_roundtrip(c));
    rep.rows.push_back(check_reciprocity(c));
    rep.rows.push_back(check_betti_golden(c, o.golden_steps));
    return rep;
}

inline std::string format_suite(const SuiteReport& rep, const std::string& corpus_dir, const SuiteOptions& o,
                                bool tsv) {
    std::string s;
    for (auto& w : rep.warnings) s += "warning: " + w + "\n";
    if (tsv) {
        s += "result\tproperty\tchecked\tdetail\twitness\n";
        for (auto& r : rep.rows)
            s += std::string(r.ok ? "PASS" : "FAIL") + "\t" + r.name + "\t" + std::to_string(r.checked) + "\t" +
                 r.detail + "\t" + r.witness + "\n";
    } else {
        std::size_t w = 8;
        for (auto& r : rep.rows) w = std::max(w, r.name.size());
        for (auto& r : rep.rows) {
            std::string name = r.name;
            name.resize(w, ' ');
            s += std::string(r.ok ? "PASS" : "FAIL") + "  " + name + "  " + std::to_string(r.checked) + " checked: " +
                 r.detail + "\n";
            if (!r.ok) s += "      witness: " + r.witness + "\n";
        }
    }
    s += std::string("overall: ") + (rep.ok() ? "PASS" : "FAIL") + "\n";
    if (!rep.ok()) s += "reproduce: koszulkit suite " + corpus_dir + " --seed " + std::to_string(o.seed) + "\n";
    return s;
}

}  // namespace koszulkit
