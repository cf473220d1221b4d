// koszulkit: command-line front end for the koszulkit library.
// Exit codes: 0 success, 1 property falsified, 2 input error.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>

#include "koszulkit/koszulkit.hpp"

using namespace koszulkit;

namespace {

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

struct Output {
    bool tsv = false;

    // text: "k: v, k: v" on one line; tsv: one "k\tv" line per field
    void record(const std::vector<std::pair<std::string, std::string>>& fields) const {
        if (tsv) {
            for (auto& [k, v] : fields) std::cout << k << "\t" << v << "\n";
            return;
        }
        for (std::size_t i = 0; i < fields.size(); ++i)
            std::cout << (i ? ", " : "") << fields[i].first << ": " << fields[i].second;
        std::cout << "\n";
    }

    void table(const Table& t) const {
        if (tsv) {
            auto line = [](const std::vector<std::string>& r) {
                for (std::size_t i = 0; i < r.size(); ++i) std::cout << (i ? "\t" : "") << r[i];
                std::cout << "\n";
            };
            line(t.header);
            for (auto& r : t.rows) line(r);
            return;
        }
        std::vector<std::size_t> w(t.header.size());
        for (std::size_t i = 0; i < w.size(); ++i) w[i] = t.header[i].size();
        for (auto& r : t.rows)
            for (std::size_t i = 0; i < r.size(); ++i) w[i] = std::max(w[i], r[i].size());
        auto line = [&](const std::vector<std::string>& r) {
            std::string s;
            for (std::size_t i = 0; i < r.size(); ++i) {
                s += r[i];
                if (i + 1 < r.size()) s += std::string(w[i] - r[i].size() + 2, ' ');
            }
            std::cout << s << "\n";
        };
        line(t.header);
        for (auto& r : t.rows) line(r);
    }

    void section(const std::string& title) const { std::cout << (tsv ? "# " : "== ") << title << "\n"; }

    void text(const std::string& s) const { std::cout << s; }
};

int env_default(const char* name, int fallback) {
    const char* v = std::getenv(name);
    if (!v || !*v) return fallback;
    try {
        std::size_t used = 0;
        int x = std::stoi(v, &used);
        if (used != std::string(v).size() || x <= 0) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw InputError(std::string(name) + " must be a positive integer, got '" + v + "'");
    }
}

struct Settings {
    std::string algebra_file;
    std::string module;
    std::string over = "lambda";
    std::string format = "text";
    std::string kind = "projective";
    std::string rule = "lowest";
    int steps = 0, cutoff = 0, order = 0;
    std::optional<int> truncate;
    bool closed = false;
    std::string dir;
    std::uint64_t seed = 1;
    int count = 20;
    bool full = false;
};

std::string yes_no(bool b) { return b ? "true" : "false"; }

AlgebraPtr load_algebra(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return std::make_shared<const MonomialAlgebra>(parse_algebra(ss.str()));
    } catch (const Error& e) {
        throw InputError(path + ": " + e.what());
    }
}

struct Context {
    Settings s;
    Output out;
    AlgebraPtr file_algebra;
    std::optional<KoszulPair> pair;
    Limits lim;

    const KoszulPair& koszul_pair() {
        if (!pair) pair.emplace(*file_algebra);
        return *pair;
    }
    // Algebra named by --over.
    AlgebraPtr side() { return s.over == "dual" ? koszul_pair().dual : koszul_pair().lambda; }
    AlgebraPtr other() { return s.over == "dual" ? koszul_pair().lambda : koszul_pair().dual; }
    SummandKind kind() const { return s.kind == "injective" ? SummandKind::injective : SummandKind::projective; }

    GradedModule module_on(const AlgebraPtr& A) {
        if (s.module.empty()) throw InputError("--module is required");
        try {
            return parse_module(s.module, A, lim);
        } catch (const WindowError&) {
            throw;
        } catch (const Error& e) {
            throw InputError(e.what());
        }
    }
    GradedModule module() { return module_on(side()); }
};

Table betti_table(const BettiTable& b, const MonomialAlgebra& A) {
    Table t{{"step", "vertex", "degree", "multiplicity"}, {}};
    for (auto& [k, m] : b.entries) {
        auto [step, degree, vertex] = k;
        t.rows.push_back({std::to_string(step), A.vertex_name(vertex), std::to_string(degree), std::to_string(m)});
    }
    return t;
}

Table dims_table(const GradedModule& M) {
    Table t{{"vertex", "degree", "dim"}, {}};
    for (auto& [vd, d] : dims(M))
        t.rows.push_back({M.algebra().vertex_name(vd.first), std::to_string(vd.second), std::to_string(d)});
    return t;
}

Table cohomology_rows(const CohomologyTable& c, const MonomialAlgebra& A) {
    Table t{{"n", "vertex", "degree", "dim"}, {}};
    for (auto& [k, d] : c)
        t.rows.push_back({std::to_string(std::get<0>(k)), A.vertex_name(std::get<1>(k)), std::to_string(std::get<2>(k)),
                          std::to_string(d)});
    return t;
}

std::string window_string(const GradedModule& M) {
    const std::string lo = M.complete_below() ? "-inf" : std::to_string(M.lo());
    const std::string hi = M.complete_above() ? "inf" : std::to_string(M.hi());
    return "[" + lo + ", " + hi + "]";
}

// ---------------------------------------------------------------------------

int cmd_validate(Context& c) {
    const auto& A = *c.file_algebra;
    c.out.record({{"valid", "true"},
                  {"vertices", std::to_string(A.num_vertices())},
                  {"arrows", std::to_string(A.num_arrows())},
                  {"relations", std::to_string(A.num_relations())}});
    return 0;
}

int cmd_dual(Context& c) {
    c.out.text(serialize(*c.koszul_pair().dual));
    return 0;
}

int cmd_dim(Context& c) {
    const auto& A = *c.side();
    const auto& f = A.finite_info();
    if (!f.finite) {
        c.out.record({{"finite", "false"}});
        return 0;
    }
    c.out.record({{"finite", "true"}, {"max_path_len", std::to_string(*f.max_length)}, {"dim", to_string(*f.dimension)}});
    return 0;
}

int cmd_basis(Context& c) {
    AlgebraPtr A = c.side();
    if (!c.s.module.empty()) {
        GradedModule M = c.module();
        c.out.record({{"window", window_string(M)}, {"completeness", to_string(M.completeness())}});
        Table t{{"vertex", "degree", "label"}, {}};
        for (int n = M.lo(); n <= M.hi(); ++n)
            for (int v = 0; v < A->num_vertices(); ++v)
                for (auto& l : M.labels(v, n)) t.rows.push_back({A->vertex_name(v), std::to_string(n), l});
        c.out.table(t);
        return 0;
    }
    const int len = A->finite_info().finite ? *A->finite_info().max_length : c.s.cutoff;
    bool complete = true;
    Table t{{"length", "source", "target", "word"}, {}};
    for (int x = 0; x < A->num_vertices(); ++x) {
        WordLevels lv = enumerate_words(*A, x, WordDirection::from, len, c.lim.budget);
        complete = complete && lv.complete;
        for (auto& level : lv.levels)
            for (auto& w : level)
                t.rows.push_back({std::to_string(w.length()), A->vertex_name(w.source), A->vertex_name(w.target),
                                  A->word_string(w)});
    }
    std::stable_sort(t.rows.begin(), t.rows.end(),
                     [](auto& a, auto& b) { return std::stoi(a[0]) < std::stoi(b[0]); });
    c.out.record({{"max_length", std::to_string(len)}, {"complete", yes_no(complete && A->finite_info().finite)}});
    c.out.table(t);
    return 0;
}

int cmd_hilbert(Context& c) {
    AlgebraPtr A = c.side();
    const bool truncated = c.s.truncate.has_value();
    if (c.s.module.empty()) {
        if (truncated) {
            const int D = *c.s.truncate;
            TruncatedMatrix m = path_count_matrix(*A, D);
            Table t{{"source", "target", "coefficients 0.." + std::to_string(D)}, {}};
            for (int x = 0; x < A->num_vertices(); ++x)
                for (int y = 0; y < A->num_vertices(); ++y) {
                    std::string s;
                    for (int n = 0; n <= D; ++n) s += (n ? " " : "") + to_string(m[x][y][n]);
                    t.rows.push_back({A->vertex_name(x), A->vertex_name(y), s});
                }
            c.out.table(t);
            return 0;
        }
        VertexMatrixSeries H = hilbert_algebra_closed(*A);
        Table t{{"source", "target", "series"}, {}};
        for (int x = 0; x < A->num_vertices(); ++x)
            for (int y = 0; y < A->num_vertices(); ++y)
                t.rows.push_back({A->vertex_name(x), A->vertex_name(y), H[x][y].str()});
        c.out.table(t);
        return 0;
    }
    if (truncated) {
        c.lim.degree = std::max(c.lim.degree, *c.s.truncate);
        GradedModule M = c.module();
        HilbertData h = hilbert_truncated(M, *c.s.truncate);
        Table t{{"degree", "vertex", "dim"}, {}};
        for (auto& [vd, d] : h.coefficients)
            t.rows.push_back({std::to_string(vd.second), A->vertex_name(vd.first), std::to_string(d)});
        c.out.table(t);
        return 0;
    }
    GradedModule M = c.module();
    ModuleSeries s = hilbert_module_closed(M, natural_side(M), c.lim);
    if (!s.closed) {
        std::cerr << "koszulkit: no closed form: " << s.note << "\n";
        return 1;
    }
    c.out.record({{"variable", s.side == Side::u ? "u = t^-1" : "t"}});
    Table t{{"vertex", "series"}, {}};
    for (int v = 0; v < A->num_vertices(); ++v) t.rows.push_back({A->vertex_name(v), s.per_vertex[v].str()});
    t.rows.push_back({"total", s.total.str()});
    c.out.table(t);
    return 0;
}

Resolution resolve(Context& c, const GradedModule& M) {
    return c.kind() == SummandKind::projective ? minimal_projective_resolution(M, c.s.steps, c.lim)
                                               : minimal_injective_coresolution(M, c.s.steps, c.lim);
}

void resolution_summary(Context& c, const Resolution& R) {
    const auto& b = R.betti;
    std::string dim = "unknown";
    if (b.terminated) {
        int top = -1;
        for (auto& [k, m] : b.entries) top = std::max(top, std::get<0>(k));
        dim = std::to_string(std::max(top, 0));
    }
    c.out.record({{"steps", std::to_string(b.steps)},
                  {"terminated", yes_no(b.terminated)},
                  {c.kind() == SummandKind::projective ? "projective_dimension" : "injective_dimension", dim},
                  {"certified_degrees", std::abs(b.degree_bound) >= INT_MAX / 8
                                            ? std::string("all")
                                            : (c.kind() == SummandKind::projective ? "<= " : ">= ") +
                                                  std::to_string(b.degree_bound)}});
}

int cmd_resolve(Context& c) {
    GradedModule M = c.module();
    Resolution R = resolve(c, M);
    resolution_summary(c, R);
    c.out.section("terms");
    c.out.text(format_complex(R.complex));
    c.out.section("betti");
    c.out.table(betti_table(R.betti, *c.side()));
    return 0;
}

int cmd_betti(Context& c) {
    GradedModule M = c.module();
    Resolution R = resolve(c, M);
    resolution_summary(c, R);
    c.out.table(betti_table(R.betti, *c.side()));
    return 0;
}

int cmd_poincare(Context& c) {
    GradedModule M = c.module();
    PoincareSeries p = poincare_closed(M, c.kind(), c.lim);
    if (!p.closed) {
        std::cerr << "koszulkit: no closed form: " << p.note << "\n";
        return 1;
    }
    const auto& A = *c.side();
    Table t{{"vertex", "series"}, {}};
    for (int v = 0; v < A.num_vertices(); ++v) t.rows.push_back({A.vertex_name(v), p.per_vertex[v].str()});
    t.rows.push_back({"total", p.total.str()});
    c.out.table(t);
    if (c.s.truncate) {
        Table e{{"step", "total"}, {}};
        std::vector<Integer> xs = p.total.expand(*c.s.truncate);
        for (std::size_t n = 0; n < xs.size(); ++n) e.rows.push_back({std::to_string(n), to_string(xs[n])});
        c.out.table(e);
    }
    return 0;
}

int cmd_lindefect(Context& c) {
    GradedModule M = c.module();
    LinDefectReport r = linearity_defect(M, c.s.steps, c.lim);
    c.out.record({{"linearity_defect", r.defect ? std::to_string(*r.defect) : "> " + std::to_string(r.cutoff)},
                  {"cutoff", std::to_string(r.cutoff)},
                  {"tail_certified", yes_no(r.tail_certified)}});
    Table t{{"n", "homology_dim"}, {}};
    for (auto& [n, d] : r.homology)
        if (n >= -3 || d) t.rows.push_back({std::to_string(n), std::to_string(d)});
    c.out.table(t);
    return r.defect && *r.defect <= 1 ? 0 : 1;
}

int cmd_koszul_check(Context& c) {
    const KoszulPair& P = c.koszul_pair();
    KoszulReport r = koszul_certificate(P);
    Table t{{"vertex", "result", "projective_dimension", "certified_steps", "dual_certified_steps"}, {}};
    std::vector<std::string> failures;
    for (auto& v : r.vertices) {
        t.rows.push_back({P.lambda->vertex_name(v.vertex), v.ok ? "PASS" : "FAIL",
                          v.projective_dimension ? std::to_string(*v.projective_dimension) : "infinite",
                          std::to_string(v.certified_steps), std::to_string(v.dual_certified_steps)});
        for (auto& f : v.failures) failures.push_back("vertex " + P.lambda->vertex_name(v.vertex) + ": " + f);
    }
    c.out.table(t);
    for (auto& f : failures) std::cout << "witness: " << f << "\n";
    c.out.record({{"koszul", r.ok ? "PASS" : "FAIL"}});
    return r.ok ? 0 : 1;
}

void print_functor(Context& c, const SummandComplex& X) {
    if (auto chk = check_complex(X); !chk.ok) throw PropertyViolation("not a complex: " + chk.detail);
    ModuleComplex E = expand(X, c.lim);
    const int from = std::max(X.lo(), E.certified_from()), to = std::min(X.hi(), E.certified_to());
    c.out.record({{"terms", std::to_string(X.lo()) + ".." + std::to_string(X.hi())},
                  {"certified", std::to_string(from) + ".." + std::to_string(to)}});
    c.out.section("complex");
    c.out.text(format_complex(X));
    c.out.section("cohomology");
    c.out.table(cohomology_rows(cohomology_table(E, from, to), X.algebra()));
}

int cmd_kfunctor(Context& c) {
    c.s.over = "dual";
    GradedModule M = c.module();
    print_functor(c, koszul_K(M, c.koszul_pair().lambda));
    return 0;
}

int cmd_gfunctor(Context& c) {
    c.s.over = "lambda";
    GradedModule N = c.module();
    print_functor(c, cokoszul_G(N, c.koszul_pair().dual));
    return 0;
}

int cmd_roundtrip(Context& c) {
    const KoszulPair& P = c.koszul_pair();
    const auto& L = *P.lambda;
    std::vector<std::pair<std::string, GradedModule>> modules;
    if (!c.s.module.empty()) {
        modules.push_back({c.s.module, c.module_on(P.lambda)});
    } else {
        for (int x = 0; x < L.num_vertices(); ++x) modules.push_back({"S(" + L.vertex_name(x) + ")", simple_module(P.lambda, x)});
        for (int x = 0; x < L.num_vertices(); ++x)
            modules.push_back({"P(" + L.vertex_name(x) + ")", projective_module(P.lambda, x, 0, c.lim)});
        for (int a = 0; a < L.num_arrows(); ++a)
            modules.push_back({"L(" + L.arrow_name(a) + ")", arrow_ideal(P.lambda, a, c.lim)});
    }
    Table t{{"module", "result", "certified_from"}, {}};
    std::vector<std::string> failures;
    bool ok = true;
    for (auto& [name, N] : modules) {
        RoundtripReport r = roundtrip_check(N, P.dual, c.lim);
        ok = ok && r.ok;
        t.rows.push_back({name, r.ok ? "PASS" : "FAIL", std::to_string(r.certified_from)});
        for (auto& f : r.failures) failures.push_back(name + ": " + f);
    }
    c.out.table(t);
    for (auto& f : failures) std::cout << "witness: " << f << "\n";
    return ok ? 0 : 1;
}

int cmd_truncation(Context& c) {
    c.s.over = "dual";
    GradedModule M = c.module();
    const TruncationRule rule = c.s.rule == "below-top" ? TruncationRule::below_top : TruncationRule::lowest;
    TruncationReport r = find_linear_truncation(M, c.koszul_pair().lambda, rule, c.lim);
    const auto& D = *c.koszul_pair().dual;
    c.out.record({{"rule", c.s.rule},
                  {"r", std::to_string(r.r)},
                  {"finite_part_dim", std::to_string(r.finite_part.total_dim())},
                  {"finite", yes_no(r.finite)},
                  {"tail_colinear", yes_no(r.tail_colinear)}});
    c.out.section("K-cohomology");
    Table k{{"n", "vertex", "degree", "dim"}, {}};
    const auto& L = *c.koszul_pair().lambda;
    for (auto& [n, d] : r.k_cohomology)
        for (auto& [vd, m] : d)
            k.rows.push_back({std::to_string(n), L.vertex_name(vd.first), std::to_string(vd.second), std::to_string(m)});
    c.out.table(k);
    c.out.section("finite part");
    c.out.table(dims_table(r.finite_part));
    c.out.section("tail coBetti");
    c.out.table(betti_table(r.tail_cobetti, D));
    if (!r.ok()) std::cout << "witness: " << (r.witness.empty() ? "finite part is not finite-dimensional" : r.witness) << "\n";
    return r.ok() ? 0 : 1;
}

int cmd_reciprocity(Context& c) {
    const KoszulPair& P = c.koszul_pair();
    std::vector<ReciprocityVariant> calibrated = calibrate_reciprocity(c.s.order);
    Table t{{"variant", "calibrated", "truncated", "closed"}, {}};
    bool ok = !calibrated.empty();
    for (auto v : all_reciprocity_variants()) {
        const bool cal = std::find(calibrated.begin(), calibrated.end(), v) != calibrated.end();
        const bool tr = reciprocity_holds(*P.lambda, *P.dual, v, c.s.order);
        const bool cl = reciprocity_holds_closed(*P.lambda, *P.dual, v);
        if (cal) ok = ok && tr && cl;
        t.rows.push_back({to_string(v), yes_no(cal), yes_no(tr), yes_no(cl)});
    }
    c.out.table(t);
    c.out.record({{"reciprocity", ok ? "PASS" : "FAIL"}, {"degree", std::to_string(c.s.order)}});
    return ok ? 0 : 1;
}

int cmd_suite(Context& c) {
    Corpus corpus;
    try {
        corpus = load_corpus(c.s.dir);
    } catch (const Error& e) {
        throw InputError(e.what());
    }
    SuiteOptions o;
    o.seed = c.s.seed;
    o.defect_cutoff = c.s.steps;
    o.series_order = c.s.order;
    o.poincare_steps = c.s.steps;
    if (c.s.full) {
        o.random_algebras = 100;
        o.syzygy_modules = 200;
        o.defect_modules = 100;
        o.shift_complexes = 50;
        o.truncation_modules = 50;
    }
    SuiteReport rep = run_suite(corpus, o);
    for (auto& w : rep.warnings) std::cerr << "koszulkit: warning: " << w << "\n";
    SuiteReport quiet = rep;
    quiet.warnings.clear();
    std::string text = format_suite(quiet, c.s.dir, o, c.out.tsv);
    if (c.s.full && !rep.ok()) text += "reproduce: koszulkit suite " + c.s.dir + " --seed " + std::to_string(o.seed) + " --full\n";
    c.out.text(text);
    return rep.ok() ? 0 : 1;
}

int cmd_gen_corpus(Context& c) {
    namespace fs = std::filesystem;
    fs::create_directories(c.s.dir);
    Rng rng(c.s.seed);
    const int width = static_cast<int>(std::to_string(c.s.count).size());
    for (int i = 1; i <= c.s.count; ++i) {
        MonomialAlgebra A = random_algebra(rng, suite_detail::kRandomShape);
        std::ostringstream name;
        name << "random_" << std::setw(width) << std::setfill('0') << i << ".alg";
        std::ofstream f(fs::path(c.s.dir) / name.str());
        if (!f) throw InputError("cannot write " + (fs::path(c.s.dir) / name.str()).string());
        f << "# random quadratic monomial algebra, seed " << c.s.seed << ", index " << i << "\n" << serialize(A);
        std::cout << name.str() << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Koszul duality for quadratic monomial algebras"};
    app.require_subcommand(1);
    Settings s;
    try {
        s.steps = env_default("KOSZULKIT_STEPS", 20);
        s.cutoff = env_default("KOSZULKIT_CUTOFF", 24);
        s.order = env_default("KOSZULKIT_ORDER", 30);
    } catch (const InputError& e) {
        std::cerr << "koszulkit: " << e.what() << "\n";
        return 2;
    }

    using Handler = int (*)(Context&);
    std::vector<std::pair<CLI::App*, Handler>> handlers;
    auto common = [&](CLI::App* sub) {
        sub->add_option("--format", s.format, "Output format")->check(CLI::IsMember({"text", "tsv"}));
        sub->add_option("--steps", s.steps, "Resolution steps")->check(CLI::PositiveNumber);
        sub->add_option("--cutoff", s.cutoff, "Internal degree cutoff")->check(CLI::PositiveNumber);
    };
    auto algebra_cmd = [&](const std::string& name, const std::string& help, Handler h, bool module_opts) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("algebra", s.algebra_file, "Algebra file")->required();
        common(sub);
        sub->add_option("--over", s.over, "Algebra the module lives over")->check(CLI::IsMember({"lambda", "dual"}));
        if (module_opts) sub->add_option("--module", s.module, "Module expression");
        handlers.push_back({sub, h});
        return sub;
    };

    algebra_cmd("validate", "Parse and check an algebra file", cmd_validate, false);
    algebra_cmd("dual", "Print the Koszul dual algebra", cmd_dual, false);
    algebra_cmd("basis", "List the basis of the algebra or of a module", cmd_basis, true);
    algebra_cmd("dim", "Finite-dimensionality, longest word and dimension", cmd_dim, false);
    {
        auto* sub = algebra_cmd("hilbert", "Hilbert series of the algebra or of a module", cmd_hilbert, true);
        auto* closed = sub->add_flag("--closed", s.closed, "Closed rational form (default)");
        sub->add_option("--truncate", s.truncate, "Coefficients through this degree")
            ->check(CLI::NonNegativeNumber)
            ->excludes(closed);
    }
    for (auto [name, kind] : {std::pair<const char*, const char*>{"resolve", "projective"}, {"coresolve", "injective"}}) {
        auto* sub = algebra_cmd(name, std::string("Minimal ") + kind + " (co)resolution", cmd_resolve, true);
        sub->final_callback([&s, kind] { s.kind = kind; });
    }
    for (auto [name, help, h] : {std::tuple<const char*, const char*, Handler>{"betti", "Betti table", cmd_betti},
                                 {"poincare", "Closed Poincare series", cmd_poincare}}) {
        auto* sub = algebra_cmd(name, help, h, true);
        sub->add_option("--kind", s.kind, "Resolution kind")->check(CLI::IsMember({"projective", "injective"}));
        if (std::string(name) == "poincare")
            sub->add_option("--truncate", s.truncate, "Also expand through this step")->check(CLI::NonNegativeNumber);
    }
    algebra_cmd("lindefect", "Linearity defect of a module", cmd_lindefect, true);
    algebra_cmd("koszul-check", "Koszulness certificate for every simple", cmd_koszul_check, false);
    algebra_cmd("kfunctor", "Koszul functor K on a dual-side module", cmd_kfunctor, true);
    algebra_cmd("gfunctor", "CoKoszul functor G on a module", cmd_gfunctor, true);
    algebra_cmd("roundtrip", "Check F(G(N)) against N", cmd_roundtrip, true);
    {
        auto* sub = algebra_cmd("truncation", "Finite part and colinear tail of a dual-side module", cmd_truncation, true);
        sub->add_option("--rule", s.rule, "Truncation degree rule")->check(CLI::IsMember({"lowest", "below-top"}));
    }
    {
        auto* sub = algebra_cmd("reciprocity", "Hilbert series reciprocity with the dual", cmd_reciprocity, false);
        sub->add_option("--order", s.order, "Degree of the truncated check")->check(CLI::PositiveNumber);
    }
    {
        CLI::App* sub = app.add_subcommand("suite", "Run the property suite on a corpus directory");
        sub->add_option("corpus", s.dir, "Corpus directory")->required();
        common(sub);
        sub->add_option("--seed", s.seed, "Seed for random inputs");
        sub->add_option("--order", s.order, "Series order")->check(CLI::PositiveNumber);
        sub->add_flag("--full", s.full, "Use the acceptance sample sizes");
        handlers.push_back({sub, cmd_suite});
    }
    {
        CLI::App* sub = app.add_subcommand("gen-corpus", "Write seeded random algebras into a directory");
        sub->add_option("dir", s.dir, "Output directory")->required();
        sub->add_option("--seed", s.seed, "Seed");
        sub->add_option("--count", s.count, "Number of algebras")->check(CLI::PositiveNumber);
        handlers.push_back({sub, cmd_gen_corpus});
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    Context c;
    c.s = s;
    c.out.tsv = s.format == "tsv";
    c.lim = {s.cutoff, Limits{}.budget};
    try {
        for (auto& [sub, h] : handlers) {
            if (!sub->parsed()) continue;
            if (!s.algebra_file.empty()) c.file_algebra = load_algebra(s.algebra_file);
            return h(c);
        }
    } catch (const InputError& e) {
        std::cerr << "koszulkit: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "koszulkit: " << e.what() << "\n";
        return 2;
    } catch (const WindowError& e) {
        std::cerr << "koszulkit: " << e.what() << " (raise --cutoff)\n";
        return 2;
    } catch (const PropertyViolation& e) {
        std::cerr << "koszulkit: falsified: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "koszulkit: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
