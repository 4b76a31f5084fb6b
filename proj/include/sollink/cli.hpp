#pragma once

// Command-line front end. `run_cli` parses argv into a RunConfig and
// dispatches it; output is assembled in one thread in a fixed order, so equal
// configurations give byte-identical output.
//
// Exit codes: 0 success, 1 computational inconsistency, 2 usage error.

#include "sollink/io.hpp"
#include "sollink/verify.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

namespace sollink {

struct RunConfig {
    std::string command;
    std::int64_t d = 0;
    std::string n = "1";
    int m = 1;
    int nmax = 10;
    int k_range = 60;
    int box = 40;
    int n_cut = 0;
    std::string tau = "0+1i";
    std::string f;
    std::string a;
    std::string b;
    std::string offset = "0,0";
    std::string s_b = "1/2";
    std::string interior;
    std::string output;
    std::string format; // json, csv, text; empty picks the command default
    std::uint64_t seed = 1;
    int threads = 1;
};

struct RunResult {
    int exit_code = 0;
    std::string out;
    std::string err;
};

/// Invalid flag value; the message names the flag.
class UsageError : public std::invalid_argument {
public:
    UsageError(const std::string& flag, const std::string& what) : std::invalid_argument(flag + ": " + what) {}
};

namespace detail {

inline std::vector<std::string> split_commas(const std::string& s)
{
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, ',')) parts.push_back(cur);
    if (!s.empty() && s.back() == ',') parts.push_back("");
    return parts;
}

inline std::vector<Rational> parse_list(const std::string& flag, const std::string& text, std::size_t count, bool integral)
{
    auto parts = split_commas(text);
    if (parts.size() != count) throw UsageError(flag, "expected " + std::to_string(count) + " comma-separated values, got '" + text + "'");
    std::vector<Rational> out;
    for (auto& p : parts) {
        try {
            Rational r = parse_rational(p);
            if (integral && !is_integer(r)) throw InputError("not an integer");
            out.push_back(r);
        } catch (const InputError&) {
            throw UsageError(flag, "malformed value '" + p + "' in '" + text + "'");
        }
    }
    return out;
}

inline IVec2 parse_ivec(const std::string& flag, const std::string& text)
{
    auto v = parse_list(flag, text, 2, true);
    return {numer(v[0]), numer(v[1])};
}

inline SolManifold parse_sol(const std::string& text)
{
    if (text.empty()) throw UsageError("--f", "gluing matrix is required");
    auto v = parse_list("--f", text, 4, true);
    try {
        return make_sol(IMat2{{{numer(v[0]), numer(v[1])}, {numer(v[2]), numer(v[3])}}});
    } catch (const InputError& e) {
        throw UsageError("--f", e.what());
    }
}

inline FieldData parse_field(std::int64_t d)
{
    try {
        return make_field(d);
    } catch (const InputError& e) {
        throw UsageError("--d", e.what());
    }
}

inline std::string format_of(const RunConfig& c, const std::string& fallback, std::initializer_list<const char*> allowed)
{
    std::string f = c.format.empty() ? fallback : c.format;
    for (const char* a : allowed)
        if (f == a) return f;
    throw UsageError("--format", "'" + f + "' is not supported by " + c.command);
}

inline void need_positive(const char* flag, int v)
{
    if (v < 1) throw UsageError(flag, "must be >= 1, got " + std::to_string(v));
}

inline std::string dump(const ojson& j) { return j.dump(2) + "\n"; }

inline std::string cmd_field_info(const RunConfig& c)
{
    FieldData f = parse_field(c.d);
    if (format_of(c, "json", {"json", "text"}) == "text") {
        std::ostringstream os;
        os << "d = " << f.d << "\ndisc = " << f.disc << "\nomega = " << f.omega_desc << "\neps0 = " << f.eps0.str()
           << " (norm " << f.eps0_norm << ")\neps = " << f.eps.str() << "\n";
        return os.str();
    }
    return dump(field_json(f));
}

inline std::string cmd_sol_link(const RunConfig& c)
{
    SolManifold m = parse_sol(c.f);
    if (c.a.empty()) throw UsageError("--a", "class is required");
    if (c.b.empty()) throw UsageError("--b", "class is required");
    FiberClass a(parse_ivec("--a", c.a)), b(parse_ivec("--b", c.b));
    Rational lk = link_fiber(m, a, b);
    if (format_of(c, "text", {"text", "json"}) == "text") return to_string(lk) + "\n";
    return dump(ojson{{"f", mat_json(m.f)}, {"a", vec_json(a.v)}, {"b", vec_json(b.v)}, {"n_det", m.n_det.str()}, {"g", mat_json(m.g)}, {"lk", to_string(lk)}});
}

inline std::string cmd_sol_cap(const RunConfig& c, bool& consistent)
{
    SolManifold m = parse_sol(c.f);
    if (c.a.empty()) throw UsageError("--a", "class is required");
    FiberClass a(parse_ivec("--a", c.a));
    auto off = parse_list("--offset", c.offset, 2, false);
    Rational s_b;
    try {
        s_b = parse_rational(c.s_b);
    } catch (const InputError& e) {
        throw UsageError("--s-b", e.what());
    }
    if (s_b <= 0 || s_b >= 1) throw UsageError("--s-b", "must lie strictly between 0 and 1");
    format_of(c, "json", {"json"});

    CapChain cap = build_cap(m, a, {off[0], off[1]});
    std::vector<FiberClass> probes;
    if (!c.b.empty())
        probes.emplace_back(parse_ivec("--b", c.b));
    else
        probes = {FiberClass(1, 0), FiberClass(0, 1), a};

    ojson checks = ojson::array();
    for (const auto& b : probes) {
        Rational lk = link_fiber(m, a, b), oc = cap_intersect(cap, m, b, s_b);
        consistent = consistent && lk == oc;
        checks.push_back(ojson{{"b", vec_json(b.v)}, {"link_fiber", to_string(lk)}, {"cap_intersect", to_string(oc)}, {"agree", lk == oc}});
    }
    const Rational period = cap_area_period(cap);
    const bool boundary_ok = cap_boundary_matches(cap, m);
    consistent = consistent && period == 0 && boundary_ok;

    ojson para = ojson::array(), tri = ojson::array();
    for (const auto& v : cap.parallelogram) para.push_back(vec_json(v));
    for (const auto& v : cap.triangle) tri.push_back(vec_json(v));
    return dump(ojson{
        {"f", mat_json(m.f)},
        {"a", vec_json(a.v)},
        {"base_offset", vec_json(cap.base_offset)},
        {"n_det", m.n_det.str()},
        {"weight", to_string(cap.weight)},
        {"monodromy_class", vec_json(cap.monodromy_class)},
        {"parallelogram", para},
        {"triangle", tri},
        {"fiber_correction", to_string(cap.fiber_correction)},
        {"area_period", to_string(period)},
        {"boundary_exact", boundary_ok},
        {"s_b", to_string(s_b)},
        {"oracle", checks},
    });
}

inline std::string cmd_boundary(const RunConfig& c)
{
    FieldData f = parse_field(c.d);
    Rational n;
    try {
        n = parse_rational(c.n);
    } catch (const InputError& e) {
        throw UsageError("--n", e.what());
    }
    if (n <= 0) throw UsageError("--n", "must be positive");
    auto comps = boundary_components(f, n);
    if (format_of(c, "json", {"json", "text"}) == "text") {
        std::ostringstream os;
        for (const auto& x : comps) os << x.cls.rep.str() << " multiplicity " << x.multiplicity << "\n";
        return os.str();
    }
    return dump(components_json(f, n, comps));
}

inline std::string cmd_lk_table(const RunConfig& c)
{
    FieldData f = parse_field(c.d);
    need_positive("--nmax", c.nmax);
    LinkTable t = link_table(f, c.nmax, c.threads);
    if (format_of(c, "json", {"json", "csv"}) == "csv") {
        std::ostringstream os;
        os << "n,m,value\n";
        for (const auto& [k, v] : t.entries) os << k.first << ',' << k.second << ',' << to_string(v) << '\n';
        return os.str();
    }
    return dump(link_table_json(t));
}

inline std::string exact_csv(const QExpansion& q)
{
    std::ostringstream os;
    os << "n,value,tail_estimate\n";
    for (const auto& [n, v] : q.coeffs) os << n << ',' << to_string(v) << ",0\n";
    return os.str();
}

inline std::string cmd_qexp(const RunConfig& c)
{
    FieldData f = parse_field(c.d);
    need_positive("--m", c.m);
    need_positive("--nmax", c.nmax);
    QExpansion q = lk_qexpansion(f, c.m, c.nmax);
    if (format_of(c, "json", {"json", "csv"}) == "csv") return exact_csv(q);
    return dump(qexpansion_json(q));
}

inline std::string cmd_w_eval(const RunConfig& c)
{
    FieldData f = parse_field(c.d);
    need_positive("--k-range", c.k_range);
    need_positive("--box", c.box);
    if (c.n_cut < 0) throw UsageError("--n-cut", "must be >= 1 (or 0 for automatic)");
    WEvalParams p;
    try {
        p.tau = parse_tau(c.tau);
    } catch (const InputError& e) {
        throw UsageError("--tau", e.what());
    }
    p.k_range = c.k_range;
    p.box = c.box;
    p.n_cut = c.n_cut;
    WEvalResult w = eval_W(f, p);
    if (format_of(c, "json", {"json", "csv"}) == "csv") return series_csv(min_series(f, w.n_cut, c.k_range));
    auto cplx = [](std::complex<double> z, double tail) { return ojson{{"re", z.real()}, {"im", z.imag()}, {"tail_estimate", tail}}; };
    return dump(ojson{
        {"d", f.d},
        {"tau", {{"re", p.tau.real()}, {"im", p.tau.imag()}}},
        {"k_range", p.k_range},
        {"box", p.box},
        {"n_cut", w.n_cut},
        {"holomorphic_sum", cplx(w.holomorphic_sum, w.holomorphic_tail)},
        {"beta_sum", cplx(w.beta_sum, w.beta_tail)},
    });
}

inline std::string cmd_ratio_test(const RunConfig& c, bool& consistent)
{
    FieldData f = parse_field(c.d);
    need_positive("--nmax", c.nmax);
    need_positive("--k-range", c.k_range);
    RatioReport rep = holomorphic_ratio_test(f, c.nmax, c.k_range);
    consistent = rep.inconsistent.empty();
    if (format_of(c, "json", {"json", "csv"}) == "csv") {
        std::vector<SeriesRow> rows;
        for (const auto& row : min_series(f, c.nmax, c.k_range)) {
            Rational lk = link_boundary(f, row.n, 1);
            if (lk == 0) continue;
            double scale = std::fabs(to_double(lk));
            rows.push_back({row.n, row.value / to_double(lk), row.tail_estimate / scale});
        }
        return series_csv(rows);
    }
    ojson ratios = ojson::array();
    for (const auto& [n, r] : rep.ratios) ratios.push_back(ojson{{"n", n}, {"ratio", r}});
    return dump(ojson{
        {"d", f.d},
        {"nmax", c.nmax},
        {"k_range", c.k_range},
        {"ratios", ratios},
        {"mean", rep.mean},
        {"relative_spread", rep.relative_spread},
        {"omitted", rep.omitted},
        {"inconsistent", rep.inconsistent},
    });
}

inline std::string cmd_combine(const RunConfig& c)
{
    FieldData f = parse_field(c.d);
    need_positive("--nmax", c.nmax);
    if (c.interior.empty()) throw UsageError("--interior", "file is required");
    std::ifstream in(c.interior);
    if (!in) throw UsageError("--interior", "cannot open '" + c.interior + "'");
    InteriorTable t;
    try {
        t = interior_from_json(nlohmann::json::parse(in));
        QExpansion q = combine_interior(t, f, c.nmax);
        if (format_of(c, "json", {"json", "csv"}) == "csv") return exact_csv(q);
        ojson j = qexpansion_json(q);
        j["provenance"] = t.provenance;
        return dump(j);
    } catch (const nlohmann::json::exception& e) {
        throw UsageError("--interior", e.what());
    } catch (const UsageError&) {
        throw;
    } catch (const InputError& e) {
        throw UsageError("--interior", e.what());
    }
}

inline std::string cmd_self_test(const RunConfig& c, bool& consistent)
{
    format_of(c, "text", {"text"});
    std::ostringstream os;
    int failed = 0;
    auto results = run_self_test(c.seed, c.threads);
    for (const auto& r : results) {
        os << (r.passed ? "PASS  " : "FAIL  ") << r.name << "  [" << r.detail << "]\n";
        failed += !r.passed;
    }
    os << (results.size() - failed) << "/" << results.size() << " suites passed (seed " << c.seed << ")\n";
    consistent = failed == 0;
    return os.str();
}

} // namespace detail

/// Parallelism cap from SOLLINK_THREADS; unset means one worker per core.
inline int threads_from_env()
{
    const char* v = std::getenv("SOLLINK_THREADS");
    if (!v || !*v) return std::max(1u, std::thread::hardware_concurrency());
    char* end = nullptr;
    long n = std::strtol(v, &end, 10);
    if (*end != '\0' || n < 1 || n > 4096) throw UsageError("SOLLINK_THREADS", "must be an integer >= 1, got '" + std::string(v) + "'");
    return int(n);
}

inline RunResult dispatch(const RunConfig& c)
{
    RunResult res;
    bool consistent = true;
    try {
        const std::string& cmd = c.command;
        if (cmd == "field-info") res.out = detail::cmd_field_info(c);
        else if (cmd == "sol-link") res.out = detail::cmd_sol_link(c);
        else if (cmd == "sol-cap") res.out = detail::cmd_sol_cap(c, consistent);
        else if (cmd == "boundary") res.out = detail::cmd_boundary(c);
        else if (cmd == "lk-table") res.out = detail::cmd_lk_table(c);
        else if (cmd == "qexp") res.out = detail::cmd_qexp(c);
        else if (cmd == "w-eval") res.out = detail::cmd_w_eval(c);
        else if (cmd == "ratio-test") res.out = detail::cmd_ratio_test(c, consistent);
        else if (cmd == "combine") res.out = detail::cmd_combine(c);
        else if (cmd == "self-test") res.out = detail::cmd_self_test(c, consistent);
        else throw UsageError("command", "unknown command '" + cmd + "'");
    } catch (const UsageError& e) {
        res.exit_code = 2;
        res.err = std::string("usage error: ") + e.what() + "\n";
        return res;
    } catch (const InputError& e) {
        res.exit_code = 2;
        res.err = std::string("usage error: ") + e.what() + "\n";
        return res;
    } catch (const std::exception& e) {
        res.exit_code = 1;
        res.err = std::string("inconsistency: ") + e.what() + "\n";
        return res;
    }
    if (!consistent) {
        res.exit_code = 1;
        res.err = "inconsistency: an oracle or invariant check failed\n";
    }
    if (!c.output.empty()) {
        std::ofstream out(c.output, std::ios::binary);
        if (!out) {
            res.exit_code = 2;
            res.err = "usage error: --output: cannot write '" + c.output + "'\n";
            return res;
        }
        out << res.out;
        res.out.clear();
    }
    return res;
}

inline RunResult run_cli(int argc, const char* const* argv)
{
    CLI::App app{"Exact linking numbers in Sol manifolds and Hilbert modular boundary cycles"};
    app.require_subcommand(1);
    RunConfig c;

    auto add_format = [&](CLI::App* s) { s->add_option("--format", c.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"})); };
    auto add_output = [&](CLI::App* s) { s->add_option("--output,-o", c.output, "write to a file instead of stdout"); };
    auto common = [&](CLI::App* s) {
        add_format(s);
        add_output(s);
        return s;
    };

    auto* fi = common(app.add_subcommand("field-info", "field data: discriminant, fundamental and totally positive units"));
    fi->add_option("--d", c.d, "squarefree d > 1")->required();

    auto* sl = common(app.add_subcommand("sol-link", "linking number of fiber circles in a Sol manifold"));
    sl->add_option("--f", c.f, "gluing matrix a,b,c,d")->required();
    sl->add_option("--a", c.a, "first class x,y")->required();
    sl->add_option("--b", c.b, "second class x,y")->required();

    auto* sc = common(app.add_subcommand("sol-cap", "capping chain of a fiber circle with oracle cross-check"));
    sc->add_option("--f", c.f, "gluing matrix a,b,c,d")->required();
    sc->add_option("--a", c.a, "capped class x,y")->required();
    sc->add_option("--b", c.b, "probe class x,y (default: basis vectors and a)");
    sc->add_option("--offset", c.offset, "start point of the circle, p/q,p/q");
    sc->add_option("--s-b", c.s_b, "fiber of the probe circle, in (0,1)");

    auto* bd = common(app.add_subcommand("boundary", "boundary circles of the special cycle C_n"));
    bd->add_option("--d", c.d, "squarefree d > 1")->required();
    bd->add_option("--n", c.n, "norm n > 0")->required();

    auto* lt = common(app.add_subcommand("lk-table", "table of boundary linking numbers"));
    lt->add_option("--d", c.d, "squarefree d > 1")->required();
    lt->add_option("--nmax", c.nmax, "table size")->required();

    auto* qe = common(app.add_subcommand("qexp", "q-expansion of Lk(dC_n, dC_m)"));
    qe->add_option("--d", c.d, "squarefree d > 1")->required();
    qe->add_option("--m", c.m, "fixed index m");
    qe->add_option("--nmax", c.nmax, "last coefficient")->required();

    auto* we = common(app.add_subcommand("w-eval", "numeric evaluation of the boundary theta function"));
    we->add_option("--d", c.d, "squarefree d > 1")->required();
    we->add_option("--tau", c.tau, "RE+IMi with IM > 0");
    we->add_option("--k-range", c.k_range, "unit-orbit truncation");
    we->add_option("--box", c.box, "lattice box for the beta sum");
    we->add_option("--n-cut", c.n_cut, "norm cutoff (0: automatic)");

    auto* rt = common(app.add_subcommand("ratio-test", "ratios of min-series coefficients to linking numbers"));
    rt->add_option("--d", c.d, "squarefree d > 1")->required();
    rt->add_option("--nmax", c.nmax, "last coefficient")->required();
    rt->add_option("--k-range", c.k_range, "unit-orbit truncation");

    auto* cb = common(app.add_subcommand("combine", "capped intersection numbers from an interior table"));
    cb->add_option("--d", c.d, "squarefree d > 1")->required();
    cb->add_option("--interior", c.interior, "interior table JSON")->required();
    cb->add_option("--nmax", c.nmax, "last coefficient")->required();

    auto* st = common(app.add_subcommand("self-test", "oracle-equivalence and finite-difference suites"));
    st->add_option("--seed", c.seed, "seed for randomized suites");

    RunResult res;
    std::ostringstream out, err;
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        res.exit_code = app.exit(e, out, err);
        if (res.exit_code != 0) res.exit_code = 2;
        res.out = out.str();
        res.err = err.str();
        return res;
    }
    c.command = app.get_subcommands().front()->get_name();
    try {
        c.threads = threads_from_env();
    } catch (const UsageError& e) {
        return {2, "", std::string("usage error: ") + e.what() + "\n"};
    }
    return dispatch(c);
}

} // namespace sollink
