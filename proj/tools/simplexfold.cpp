// simplexfold: command-line experiment runner.

#include "simplexfold/simplexfold.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

using namespace simplexfold;
namespace fs = std::filesystem;

namespace {

std::string num(double v) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, r.ptr);
}

// FNV-1a, 64 bit; enough to tell outputs apart on replay.
std::string file_hash(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        return "missing";
    std::uint64_t h = 0xcbf29ce484222325ULL;
    char c;
    while (in.get(c)) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

ExactMap load_map(const std::string& spec) {
    if (fs::exists(spec))
        return map_from_json<Rational>(read_json_file(spec));
    return catalog(spec);
}

FoldTemplate load_template(const std::string& spec) {
    if (fs::exists(spec))
        return template_from_json(read_json_file(spec));
    return builtin_template(spec);
}

void ensure_parent(const std::string& path) {
    const auto parent = fs::path(path).parent_path();
    if (!parent.empty())
        fs::create_directories(parent);
}

class CsvWriter {
public:
    explicit CsvWriter(const std::string& path) : path_(path) { ensure_parent(path); }
    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i)
            out_ << (i ? "," : "") << cells[i];
        out_ << '\n';
    }
    ~CsvWriter() { write_text_file(path_, out_.str()); }

private:
    std::string path_;
    std::ostringstream out_;
};

struct Run {
    std::string subcommand;
    std::vector<std::string> argv; ///< replayable argument list, seed made explicit
    std::uint64_t seed = 0;
    unsigned jobs = 1;
    std::vector<std::string> outputs;
    std::string manifest_path;
    json summary = json::object();
};

void write_manifest(const Run& run) {
    json files = json::object();
    for (const auto& o : run.outputs)
        files[o] = file_hash(o);
    json m{{"subcommand", run.subcommand}, {"argv", run.argv},        {"master_seed", run.seed},
           {"version", kVersion},          {"hash", "fnv1a-64"},      {"outputs", files},
           {"summary", run.summary}};
    write_json_file(run.manifest_path, m);
}

std::string map_to_csv(const ExactMap& f) {
    std::ostringstream s;
    s << "component";
    for (std::size_t j = 0; j < f.n(); ++j)
        s << ",e" << j + 1;
    s << ",coefficient\n";
    const auto polys = f.all_polys();
    for (std::size_t i = 0; i < polys.size(); ++i)
        for (const auto& [e, c] : polys[i].terms()) {
            s << i + 1;
            for (auto v : e)
                s << ',' << v;
            s << ',' << to_string(c) << '\n';
        }
    return s.str();
}

// ---------------------------------------------------------------- tables

struct TablesArgs {
    std::string out_dir = "tables";
    std::string format = "json";
    bool corrupt = false;
};

int cmd_tables(const TablesArgs& a, Run& run) {
    fs::create_directories(a.out_dir);
    bool all_ok = true;
    json report{{"maps", json::array()}, {"compositions", json::array()}};
    std::vector<std::vector<std::string>> csv_rows;
    for (const auto& name : catalog_names()) {
        auto entry = catalog_entry(name);
        if (a.corrupt && name == "tri:f2") {
            auto ps = entry.map.polys();
            ps[0] += ExactPoly::constant(2, Rational(1, 1000));
            entry.map = ExactMap(2, entry.map.k(), ps, name);
        }
        std::string file = name;
        std::replace(file.begin(), file.end(), ':', '_');
        const std::string path = (fs::path(a.out_dir) / (file + "." + a.format)).string();
        if (a.format == "json")
            write_json_file(path, to_json(entry.map));
        else
            write_text_file(path, map_to_csv(entry.map));
        run.outputs.push_back(path);

        FactorizationReport rep;
        try {
            rep = verify_factorization(entry.map, entry.factors);
        } catch (const std::exception& e) {
            rep.checks.push_back({"verify", false, e.what()});
        }
        const bool member = membership_check(entry.map).member;
        rep.checks.push_back({"maps into the simplex", member, member ? "sampled" : "image leaves the simplex"});
        all_ok = all_ok && rep.ok();
        auto j = to_json(rep);
        j["name"] = name;
        j["ok"] = rep.ok();
        report["maps"].push_back(j);
        for (const auto& c : rep.checks)
            csv_rows.push_back({name, "\"" + c.name + "\"", c.passed ? "pass" : "fail", "\"" + c.detail + "\""});
    }
    auto compose_check = [&](const std::string& label, const ExactMap& lhs, const std::string& rhs) {
        const bool ok = lhs.polys() == catalog(rhs).polys();
        all_ok = all_ok && ok;
        report["compositions"].push_back({{"identity", label}, {"passed", ok}});
        csv_rows.push_back({"composition", "\"" + label + "\"", ok ? "pass" : "fail", "\"\""});
    };
    for (int d = 1; d <= 12; ++d)
        for (int e = 1; d * e <= 12; ++e)
            compose_check("cheb:" + std::to_string(d) + " o cheb:" + std::to_string(e) + " = cheb:" +
                              std::to_string(d * e),
                          compose_maps(catalog("cheb:" + std::to_string(d)), catalog("cheb:" + std::to_string(e))),
                          "cheb:" + std::to_string(d * e));
    const auto f2 = catalog("tri:f2");
    compose_check("tri:f2 o tri:f2 = tri:f4", compose_maps(f2, f2), "tri:f4");
    compose_check("tri:f2 o tri:f2 o tri:f2 = tri:f8", compose_maps(f2, compose_maps(f2, f2)), "tri:f8");
    report["ok"] = all_ok;

    const std::string rpath = (fs::path(a.out_dir) / ("verification." + a.format)).string();
    if (a.format == "json") {
        write_json_file(rpath, report);
    } else {
        std::ostringstream s;
        s << "subject,check,result,detail\n";
        for (const auto& r : csv_rows)
            s << r[0] << ',' << r[1] << ',' << r[2] << ',' << r[3] << '\n';
        write_text_file(rpath, s.str());
    }
    run.outputs.push_back(rpath);
    run.summary = {{"ok", all_ok}, {"maps", catalog_names().size()}};
    std::cout << (all_ok ? "all tables verified" : "verification FAILED") << '\n';
    return all_ok ? 0 : 1;
}

// ---------------------------------------------------------------- cone

struct ConeArgs {
    std::size_t n = 2;
    int k = 2;
    int N = 8;
    bool no_scale = false;
    std::string out = "cone.json";
};

ConeRep build_cone(std::size_t n, int k, int N, bool scale) {
    auto c = enumerate_rays(build_inequalities(n, k, N));
    return scale ? scale_generators(std::move(c)) : c;
}

int cmd_cone_build(const ConeArgs& a, Run& run) {
    const auto c = build_cone(a.n, a.k, a.N, !a.no_scale);
    ensure_parent(a.out);
    write_json_file(a.out, to_json(c));
    run.outputs.push_back(a.out);
    run.summary = {{"rows", c.ineq.size()}, {"rays", c.rays.size()}};
    std::cout << "rows " << c.ineq.size() << ", extreme rays " << c.rays.size() << '\n';
    return 0;
}

// ---------------------------------------------------------------- folds

struct SolveArgs {
    std::string tmpl = "triangle:2";
    std::size_t seeds = 200;
    double box = 5.0;
    std::string out = "solutions.json";
};

int cmd_solve_fold(const SolveArgs& a, Run& run) {
    SolveOptions opts;
    opts.seeds = a.seeds;
    opts.box = a.box;
    opts.jobs = run.jobs;
    const auto t = load_template(a.tmpl);
    json out{{"template", to_json(t)}, {"solutions", json::array()}};
    int rc = 0;
    try {
        const auto rep = solve_fold(t, opts);
        for (const auto& s : rep.solutions) {
            json j{{"params", s.params}, {"residual", s.residual_norm}};
            if (s.exact()) {
                json ps = json::array();
                for (const auto& p : *s.exact_params)
                    ps.push_back(to_string(p));
                j["exact_params"] = ps;
                j["map"] = to_json(*s.exact_map);
            } else {
                j["map"] = to_json(s.map);
            }
            out["solutions"].push_back(j);
        }
        out["stats"] = {{"seeds", rep.seeds_tried},          {"converged", rep.converged},
                        {"distinct", rep.distinct},          {"rejected_sign", rep.rejected_sign},
                        {"rejected_degree", rep.rejected_degree}, {"rejected_membership", rep.rejected_membership},
                        {"rejected_fold_order", rep.rejected_fold_order}};
        std::cout << rep.solutions.size() << " solution(s)\n";
    } catch (const FoldSolveError& e) {
        out["error"] = e.what();
        out["best_residual"] = e.best_residual;
        std::cerr << e.what() << '\n';
        rc = 1;
    }
    ensure_parent(a.out);
    write_json_file(a.out, out);
    run.outputs.push_back(a.out);
    run.summary = {{"solutions", out["solutions"].size()}};
    return rc;
}

struct VerifyArgs {
    std::string map = "tri:f2";
    std::string out = "verify.json";
};

int cmd_verify_fold(const VerifyArgs& a, Run& run) {
    const auto f = load_map(a.map);
    FactorizationReport rep;
    try {
        rep = fs::exists(a.map) ? verify_factorization(f) : verify_factorization(f, catalog_entry(a.map).factors);
    } catch (const std::exception& e) {
        rep.checks.push_back({"factorization", false, e.what()});
    }
    auto j = to_json(rep);
    j["ok"] = rep.ok();
    ensure_parent(a.out);
    write_json_file(a.out, j);
    run.outputs.push_back(a.out);
    run.summary = {{"ok", rep.ok()}};
    std::cout << (rep.ok() ? "fold verified" : "verification FAILED") << '\n';
    return rep.ok() ? 0 : 1;
}

// ---------------------------------------------------------------- sampling

struct DeformArgs {
    double eps = 0.05;
    std::size_t count = 1000;
    int N = 8;
    std::string cone;
    double alpha = 1e-3;
    std::size_t trials = 20;
    std::string out;
};

SamplerConfig sampler_config(const DeformArgs& a, std::uint64_t seed) {
    const auto c = a.cone.empty() ? build_cone(2, 2, a.N, true) : cone_from_json(read_json_file(a.cone));
    auto cfg = SamplerConfig::from_cone(c);
    cfg.epsilon = a.eps;
    cfg.dirichlet_alpha = a.alpha;
    cfg.master_seed = seed;
    return cfg;
}

int cmd_fig6(const DeformArgs& a, Run& run) {
    const auto f2 = catalog("tri:f2").cast<double>();
    std::vector<FloatMap> maps;
    if (a.count > 0) {
        maps.push_back(f2);
        for (auto& d : deform_batch(f2, sampler_config(a, run.seed), a.count, run.jobs))
            maps.push_back(std::move(d.map));
    }
    ScanOptions sopt;
    sopt.seed = run.seed;
    sopt.trials_per_map = a.trials;
    sopt.jobs = run.jobs;
    const auto rows = deform_scan(f2, maps, sopt);
    std::size_t green = 0, red = 0, failed = 0;
    {
        CsvWriter csv(a.out);
        csv.row({"index", "distance", "min_abs_eig", "n_fixed_points", "periodic_trials", "fixed_trials", "verdict",
                 "error"});
        for (const auto& r : rows) {
            green += r.verdict == ScanVerdict::green;
            red += r.verdict == ScanVerdict::red;
            failed += r.verdict == ScanVerdict::failed;
            std::string err = r.error;
            std::replace(err.begin(), err.end(), ',', ';');
            csv.row({std::to_string(r.index), num(r.l2_distance), num(r.min_abs_eig), std::to_string(r.n_fixed_points),
                     std::to_string(r.periodic_trials), std::to_string(r.fixed_trials), to_string(r.verdict), err});
        }
    }
    run.outputs.push_back(a.out);
    run.summary = {{"rows", rows.size()},
                   {"green", green},
                   {"red", red},
                   {"failed", failed},
                   {"green_rule", "no trial converges or cycles with period <= " + std::to_string(sopt.orbit.window) +
                                      "; longer periods count as green"}};
    std::cout << rows.size() << " rows: " << green << " green, " << red << " red, " << failed << " failed\n";
    return 0;
}

int cmd_deform_sample(const DeformArgs& a, Run& run) {
    const auto f2 = catalog("tri:f2").cast<double>();
    const auto batch = deform_batch(f2, sampler_config(a, run.seed), a.count, run.jobs);
    json out = json::array();
    for (const auto& d : batch)
        out.push_back({{"t", d.t}, {"distance", d.distance}, {"map", to_json(d.map)}});
    ensure_parent(a.out);
    write_json_file(a.out, out);
    run.outputs.push_back(a.out);
    run.summary = {{"count", batch.size()}};
    return 0;
}

// ---------------------------------------------------------------- fixation

struct FixationArgs {
    std::size_t count = 10000;
    double region = 0.01;
    double absorb_tol = 1e-9;
    std::size_t max_iters = 100000;
    std::string map = "tri:f9";
    std::string out = "fig7.csv";
    std::string fit_out = "fig7_fit.json";
};

int cmd_fig7(const FixationArgs& a, Run& run) {
    FixationOptions opts;
    opts.count = a.count;
    opts.region = a.region;
    opts.absorb_tol = a.absorb_tol;
    opts.max_iters = a.max_iters;
    opts.seed = run.seed;
    opts.jobs = run.jobs;
    const auto f = load_map(a.map);
    const auto res = fixation_experiment(f, opts);
    {
        CsvWriter csv(a.out);
        std::vector<std::string> head;
        for (std::size_t j = 0; j < f.n(); ++j)
            head.push_back("x" + std::to_string(j + 1));
        head.insert(head.end(), {"vertex", "time"});
        csv.row(head);
        for (const auto& r : res.records) {
            std::vector<std::string> cells;
            for (double v : r.initial)
                cells.push_back(num(v));
            cells.push_back(std::to_string(r.vertex));
            cells.push_back(std::to_string(r.time));
            csv.row(cells);
        }
    }
    json fit{{"count", res.records.size()}, {"unabsorbed", res.unabsorbed}};
    if (res.fit)
        fit["fit"] = {{"mu", res.fit->mu},
                      {"sigma", res.fit->sigma},
                      {"samples", res.fit->samples},
                      {"low_sample", res.fit->low_sample}};
    else
        fit["fit"] = nullptr;
    ensure_parent(a.fit_out);
    write_json_file(a.fit_out, fit);
    run.outputs.push_back(a.out);
    run.outputs.push_back(a.fit_out);
    run.summary = fit;
    if (res.fit)
        std::cout << "mu " << num(res.fit->mu) << " sigma " << num(res.fit->sigma) << ", unabsorbed " << res.unabsorbed
                  << '\n';
    return 0;
}

// ---------------------------------------------------------------- checks

struct MeasureArgs {
    std::vector<int> degrees{2, 3, 4};
    std::size_t samples = 100000;
    double threshold = 0.02;
    std::string out = "measure.json";
};

int cmd_measure_test(const MeasureArgs& a, Run& run) {
    json out = json::array();
    bool ok = true;
    for (int d : a.degrees) {
        const double ks = invariant_measure_test(d, a.samples, run.seed);
        ok = ok && ks < a.threshold;
        out.push_back({{"d", d}, {"samples", a.samples}, {"ks", ks}, {"pass", ks < a.threshold}});
        std::cout << "cheb:" << d << " KS " << num(ks) << '\n';
    }
    ensure_parent(a.out);
    write_json_file(a.out, out);
    run.outputs.push_back(a.out);
    run.summary = {{"ok", ok}};
    return ok ? 0 : 1;
}

struct PreimageArgs {
    std::string map = "tri:f2";
    std::size_t targets = 50;
    std::size_t seeds = 500;
    std::string out = "preimages.csv";
};

int cmd_preimage_count(const PreimageArgs& a, Run& run) {
    const auto f = load_map(a.map);
    SplitMix64 rng(run.seed);
    PreimageOptions opts;
    opts.seeds = a.seeds;
    opts.jobs = run.jobs;
    std::map<std::size_t, std::size_t> histogram;
    {
        CsvWriter csv(a.out);
        std::vector<std::string> head;
        for (std::size_t j = 0; j < f.n(); ++j)
            head.push_back("y" + std::to_string(j + 1));
        head.push_back("count");
        csv.row(head);
        for (const auto& y : sample_uniform(f.n(), a.targets, rng)) {
            const auto rep = preimage_count(f, y, opts);
            ++histogram[rep.count];
            std::vector<std::string> cells;
            for (double v : y.coords())
                cells.push_back(num(v));
            cells.push_back(std::to_string(rep.count));
            csv.row(cells);
        }
    }
    run.outputs.push_back(a.out);
    json h = json::object();
    for (const auto& [c, k] : histogram) {
        h[std::to_string(c)] = k;
        std::cout << k << " target(s) with " << c << " preimage(s)\n";
    }
    run.summary = {{"histogram", h}};
    return 0;
}

// ---------------------------------------------------------------- driver

int execute(std::vector<std::string> args);

int cmd_replay(const std::string& manifest_path) {
    const auto m = read_json_file(manifest_path);
    const auto argv = m.at("argv").get<std::vector<std::string>>();
    const int rc = execute(argv);
    bool same = true;
    for (const auto& [path, hash] : m.at("outputs").items()) {
        const bool eq = file_hash(path) == hash.get<std::string>();
        same = same && eq;
        std::cout << (eq ? "identical " : "DIFFERS   ") << path << '\n';
    }
    return (rc == 0 && same) ? 0 : 1;
}

int execute(std::vector<std::string> args) {
    CLI::App app{"Polynomial folding maps of the simplex: tables, solvers and dynamics experiments"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kVersion));

    std::optional<std::uint64_t> seed;
    unsigned jobs = 0;
    std::string manifest;
    app.add_option("--seed", seed, "master seed (drawn from entropy when omitted)");
    app.add_option("--jobs", jobs, "worker threads (fallback: SIMPLEXFOLD_JOBS, then 1)");
    app.add_option("--manifest", manifest, "run manifest path (default: next to the main output)");

    TablesArgs ta;
    auto* tables = app.add_subcommand("tables", "write the catalog maps and verify their factorizations");
    tables->add_option("--out-dir", ta.out_dir);
    tables->add_option("--format", ta.format)->check(CLI::IsMember({"json", "csv"}));
    tables->add_flag("--corrupt", ta.corrupt, "perturb one catalog map before verifying (test mode)");

    ConeArgs ca;
    auto* cone = app.add_subcommand("cone-build", "build the Polya cone and enumerate its extreme rays");
    cone->add_option("--n", ca.n);
    cone->add_option("--k", ca.k);
    cone->add_option("--N", ca.N);
    cone->add_flag("--no-scale", ca.no_scale, "skip generator scaling");
    cone->add_option("--out", ca.out);

    SolveArgs sa;
    auto* solve = app.add_subcommand("solve-fold", "solve a fold template for its parameters");
    solve->add_option("--template", sa.tmpl, "builtin name (interval:d, triangle:2, triangle:9) or JSON file");
    solve->add_option("--seeds", sa.seeds);
    solve->add_option("--box", sa.box);
    solve->add_option("--out", sa.out);

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify-fold", "check the fold factorization of a map");
    verify->add_option("--map", va.map, "catalog name or JSON map file");
    verify->add_option("--out", va.out);

    DeformArgs fa6;
    fa6.out = "fig6.csv";
    auto* fig6 = app.add_subcommand("fig6", "scan random deformations of the two-fold of the triangle");
    fig6->add_option("--eps", fa6.eps);
    fig6->add_option("--count", fa6.count);
    fig6->add_option("--N", fa6.N);
    fig6->add_option("--cone", fa6.cone, "cone JSON from cone-build (built on the fly otherwise)");
    fig6->add_option("--alpha", fa6.alpha);
    fig6->add_option("--trials", fa6.trials);
    fig6->add_option("--out", fa6.out);

    DeformArgs da;
    da.count = 10;
    da.out = "deformations.json";
    auto* dsample = app.add_subcommand("deform-sample", "write random deformations of the two-fold as JSON");
    dsample->add_option("--eps", da.eps);
    dsample->add_option("--count", da.count);
    dsample->add_option("--N", da.N);
    dsample->add_option("--cone", da.cone);
    dsample->add_option("--alpha", da.alpha);
    dsample->add_option("--out", da.out);

    FixationArgs xa;
    auto* fig7 = app.add_subcommand("fig7", "fixation times of the nine-fold near the origin");
    fig7->add_option("--count", xa.count);
    fig7->add_option("--region", xa.region);
    fig7->add_option("--absorb-tol", xa.absorb_tol);
    fig7->add_option("--max-iters", xa.max_iters);
    fig7->add_option("--map", xa.map);
    fig7->add_option("--out", xa.out);
    fig7->add_option("--fit-out", xa.fit_out);

    MeasureArgs ma;
    auto* measure = app.add_subcommand("measure-test", "KS test of the arcsine law under cheb:d");
    measure->add_option("--d", ma.degrees)->expected(1, 32);
    measure->add_option("--samples", ma.samples);
    measure->add_option("--threshold", ma.threshold);
    measure->add_option("--out", ma.out);

    PreimageArgs pa;
    auto* pre = app.add_subcommand("preimage-count", "count preimages at random interior targets");
    pre->add_option("--map", pa.map);
    pre->add_option("--targets", pa.targets);
    pre->add_option("--seeds", pa.seeds);
    pre->add_option("--out", pa.out);

    std::string replay_path;
    auto* replay = app.add_subcommand("replay", "re-run a manifest and compare output hashes");
    replay->add_option("manifest", replay_path)->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    if (replay->parsed())
        return cmd_replay(replay_path);

    Run run;
    run.jobs = resolve_jobs(jobs);
    if (seed) {
        run.seed = *seed;
    } else {
        std::random_device rd;
        run.seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    }
    // replayable argv: everything minus --seed/--manifest, then the seed made explicit
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--seed" || args[i] == "--manifest") {
            ++i;
            continue;
        }
        if (args[i].rfind("--seed=", 0) == 0 || args[i].rfind("--manifest=", 0) == 0)
            continue;
        run.argv.push_back(args[i]);
    }
    run.argv.insert(run.argv.begin(), {"--seed", std::to_string(run.seed)});

    int rc = 0;
    std::string anchor;
    try {
        if (tables->parsed()) {
            run.subcommand = "tables";
            anchor = (fs::path(ta.out_dir) / "tables").string();
            rc = cmd_tables(ta, run);
        } else if (cone->parsed()) {
            run.subcommand = "cone-build";
            anchor = ca.out;
            rc = cmd_cone_build(ca, run);
        } else if (solve->parsed()) {
            run.subcommand = "solve-fold";
            anchor = sa.out;
            rc = cmd_solve_fold(sa, run);
        } else if (verify->parsed()) {
            run.subcommand = "verify-fold";
            anchor = va.out;
            rc = cmd_verify_fold(va, run);
        } else if (fig6->parsed()) {
            run.subcommand = "fig6";
            anchor = fa6.out;
            rc = cmd_fig6(fa6, run);
        } else if (dsample->parsed()) {
            run.subcommand = "deform-sample";
            anchor = da.out;
            rc = cmd_deform_sample(da, run);
        } else if (fig7->parsed()) {
            run.subcommand = "fig7";
            anchor = xa.out;
            rc = cmd_fig7(xa, run);
        } else if (measure->parsed()) {
            run.subcommand = "measure-test";
            anchor = ma.out;
            rc = cmd_measure_test(ma, run);
        } else if (pre->parsed()) {
            run.subcommand = "preimage-count";
            anchor = pa.out;
            rc = cmd_preimage_count(pa, run);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    run.manifest_path = manifest.empty() ? anchor + ".manifest.json" : manifest;
    write_manifest(run);
    return rc;
}

} // namespace

int main(int argc, char** argv) {
    std::locale::global(std::locale::classic());
    return execute(std::vector<std::string>(argv + 1, argv + argc));
}
