// pppc -- precoded polar product codes: Monte Carlo simulation, truncated
// union bounds, weight reports and spec validation.
//
// Exit codes: 0 success, 1 configuration error, 2 spec error, 3 enumeration
// guard violation.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "pppc/pppc.hpp"

namespace {

std::vector<double> parse_snr_grid(const std::string& s) {
    std::vector<double> out;
    if (s.find(':') != std::string::npos) {
        // start:step:stop
        double start = 0, step = 0, stop = 0;
        char c1 = 0, c2 = 0;
        std::istringstream in(s);
        if (!(in >> start >> c1 >> step >> c2 >> stop) || c1 != ':' || c2 != ':')
            throw pppc::Error("bad SNR grid '" + s + "', expected start:step:stop");
        if (!(step > 0)) throw pppc::Error("SNR grid step must be positive");
        for (double v = start; v <= stop + 1e-9; v += step) out.push_back(v);
    } else {
        std::stringstream ss(s);
        std::string item;
        while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
    }
    if (out.empty()) throw pppc::Error("empty SNR grid");
    return out;
}

std::vector<double> parse_alpha(const std::string& s, int i_max) {
    if (s == "default") return pppc::default_alpha(i_max);
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
    return out;
}

int default_threads() {
    if (const char* env = std::getenv("PPPC_THREADS")) {
        const int t = std::atoi(env);
        if (t >= 1) return t;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc ? (int)hc : 1;
}

std::string default_spec_dir() {
    if (const char* env = std::getenv("PPPC_SPEC_DIR")) return env;
    return ".";
}

struct CommonOpts {
    std::string code1, code2;
    std::string spec_dir = default_spec_dir();
    bool allow_shadow = false;

    void add_to(CLI::App* cmd, bool need_code2) {
        cmd->add_option("--code1", code1, "first (column) component: catalog name or spec file")
            ->required();
        auto* c2 = cmd->add_option("--code2", code2,
                                   "second (row) component: catalog name or spec file "
                                   "(defaults to --code1)");
        if (need_code2) c2->capture_default_str();
        cmd->add_option("--spec-dir", spec_dir, "directory searched for <name>.spec files")
            ->capture_default_str();
        cmd->add_flag("--allow-shadow", allow_shadow,
                      "let spec files in --spec-dir shadow catalog names");
    }

    pppc::ProductCode product() const {
        const std::string c2 = code2.empty() ? code1 : code2;
        return pppc::compose(pppc::resolve_code(code1, spec_dir, allow_shadow),
                             pppc::resolve_code(c2, spec_dir, allow_shadow));
    }
};

void describe_code(std::vector<std::string>& meta, const std::string& role, const std::string& name,
                   const pppc::PrecodedPolarCode& code) {
    meta.push_back(role + ": " + name + " (N=" + std::to_string(code.N()) + ", k=" +
                   std::to_string(code.k()) + ")");
}

std::vector<std::string> product_metadata(const CommonOpts& opts, const pppc::ProductCode& pc) {
    std::vector<std::string> meta;
    const std::string c2name = opts.code2.empty() ? opts.code1 : opts.code2;
    describe_code(meta, "code1", opts.code1, pc.c1);
    describe_code(meta, "code2", c2name, pc.c2);
    {
        std::ostringstream os;
        os << "product: N=" << pc.N << ", k=" << pc.k << ", R=" << pppc::format_sci(pc.R);
        meta.push_back(os.str());
    }
    if (pc.dist) {
        const auto& d = *pc.dist;
        meta.push_back("distance: d=" + std::to_string(d.d) + ", A_d=" + std::to_string(d.a_d) +
                       " (components d1=" + std::to_string(d.d1) + ", A_d1=" + std::to_string(d.a1) +
                       "; d2=" + std::to_string(d.d2) + ", A_d2=" + std::to_string(d.a2) + ")");
    } else {
        meta.push_back("distance: unknown (component dimension above enumeration guard)");
    }
    meta.push_back("layout: row-major N1xN2 grid; rows decoded by code2, columns by code1; "
                   "natural bit order (no bit reversal)");
    return meta;
}

std::ostream& open_output(std::ofstream& file, const std::string& path) {
    if (path.empty()) return std::cout;
    file.open(path, std::ios::binary);
    if (!file) throw pppc::Error("cannot open output file: " + path);
    return file;
}

std::string wef_line(const pppc::WeightEnumerator& wef) {
    std::string s;
    for (const auto& [w, c] : wef.counts) {
        if (!s.empty()) s += ' ';
        s += std::to_string(w) + ":" + std::to_string(c);
    }
    return s;
}

int cmd_simulate(const CommonOpts& opts, const std::string& snr, int list_size, int max_iters,
                 const std::string& alpha_str, long long min_errors, long long max_trials,
                 std::uint64_t seed, const std::string& out_path, int threads,
                 const std::string& first_pass, const std::string& softmax_mode, bool dry_run) {
    const pppc::ProductCode pc = opts.product();
    const std::vector<double> grid = parse_snr_grid(snr);

    pppc::TurboConfig cfg;
    cfg.list_size = list_size;
    cfg.max_iterations = max_iters;
    cfg.alpha = parse_alpha(alpha_str, max_iters);
    if (first_pass == "rows")
        cfg.first_pass = pppc::TurboConfig::FirstPass::rows;
    else if (first_pass == "columns")
        cfg.first_pass = pppc::TurboConfig::FirstPass::columns;
    else
        throw pppc::Error("--first-pass must be rows or columns");
    if (softmax_mode == "normalized")
        cfg.soft.mode = pppc::SoftMaxMode::normalized;
    else if (softmax_mode == "literal")
        cfg.soft.mode = pppc::SoftMaxMode::literal;
    else
        throw pppc::Error("--softmax-mode must be normalized or literal");

    std::vector<std::string> meta = product_metadata(opts, pc);
    meta.insert(meta.begin(), "pppc simulate");
    meta.push_back("list_size: " + std::to_string(list_size));
    meta.push_back("max_iters: " + std::to_string(max_iters));
    meta.push_back("alpha: " + alpha_str);
    meta.push_back("first_pass: " + first_pass);
    meta.push_back("softmax_mode: " + softmax_mode);
    meta.push_back("input_clip: " + pppc::format_sci(cfg.input_clip) +
                   ", extrinsic_clip: " + pppc::format_sci(cfg.extrinsic_clip) +
                   ", fallback_cap: " + pppc::format_sci(cfg.soft.fallback_cap));
    meta.push_back("min_errors: " + std::to_string(min_errors));
    meta.push_back("max_trials: " + std::to_string(max_trials));
    meta.push_back("seed: " + std::to_string(seed));

    std::vector<pppc::SimRecord> records;
    if (!dry_run)
        records = pppc::simulate_cer(pc, cfg, grid, {min_errors, max_trials}, seed, threads);

    std::ofstream file;
    std::ostream& os = open_output(file, out_path);
    pppc::write_sim_csv(os, records, meta);
    return 0;
}

int cmd_tub(const CommonOpts& opts, const std::string& snr, const std::string& out_path) {
    const pppc::ProductCode pc = opts.product();
    const std::vector<double> grid = parse_snr_grid(snr);
    std::vector<std::string> meta = product_metadata(opts, pc);
    meta.insert(meta.begin(), "pppc tub");

    std::ofstream file;
    std::ostream& os = open_output(file, out_path);
    for (const auto& line : meta) os << "# " << line << "\n";
    os << "ebn0_db,tub\n";
    for (double db : grid)
        os << pppc::format_sci(db) << ',' << pppc::format_sci(pppc::tub(pc, db)) << "\n";
    return 0;
}

int cmd_wef(const CommonOpts& opts) {
    const pppc::PrecodedPolarCode c1 = pppc::resolve_code(opts.code1, opts.spec_dir, opts.allow_shadow);
    const pppc::WeightEnumerator w1 = pppc::brute_wef(c1);
    std::cout << "code: " << opts.code1 << " (" << c1.N() << "," << c1.k() << ")\n";
    std::cout << "weights: " << wef_line(w1) << "\n";
    std::cout << "d=" << w1.min_distance() << ", A_d=" << w1.multiplicity(w1.min_distance()) << "\n";
    if (!opts.code2.empty()) {
        const pppc::ProductCode pc = opts.product();
        const auto& d = pc.distance();
        std::cout << "product: N=" << pc.N << ", k=" << pc.k << ", d=" << d.d << ", A_d=" << d.a_d
                  << "\n";
    }
    return 0;
}

int cmd_validate(const std::string& path) {
    std::cout << "file: " << path << "\n";
    pppc::ParsedSpecFile parsed;
    try {
        parsed = pppc::parse_spec_file(pppc::read_text_file(path));
    } catch (const pppc::SpecError& e) {
        std::cout << "parse: FAIL (" << e.what() << ")\n";
        return 2;
    }
    std::cout << "parse: ok (" << (parsed.matrix ? "matrix form" : "constraint form") << ")\n";

    pppc::BitMatrix p;
    if (parsed.matrix) {
        p = *parsed.matrix;
    } else {
        try {
            parsed.spec->validate();
            p = pppc::precoding_from_spec(*parsed.spec);
        } catch (const pppc::SpecError& e) {
            std::cout << "spec invariants: FAIL (" << e.what() << ")\n";
            return 2;
        }
        std::cout << "spec invariants: ok\n";
    }

    bool ok = true;
    std::string why;
    // Property checks are reported separately so a failing file names the
    // violated property; the rank line reports full-rank status.
    {
        pppc::BitMatrix probe = p;
        std::string w;
        const bool aimed = pppc::is_sc_aimed(probe, &w);
        const bool prop1_fail = !aimed && w.find("property 1") != std::string::npos;
        const bool prop2_fail = !aimed && w.find("property 2") != std::string::npos;
        std::cout << "SC-aimed property 1 (each leading one is alone in its column): "
                  << (prop1_fail ? "FAIL" : "pass") << "\n";
        std::cout << "SC-aimed property 2 (leading columns non-decreasing): "
                  << (prop2_fail ? "FAIL" : "pass") << "\n";
        if (!aimed) {
            std::cout << "detail: " << w << "\n";
            ok = false;
        }
    }
    const std::size_t r = pppc::rank_gf2(p);
    std::cout << "rank: " << r << (r == p.rows() ? " (full)" : " (RANK-DEFICIENT)") << "\n";
    if (r != p.rows()) ok = false;
    if (!ok) return 2;

    const pppc::CodeSpec spec = pppc::spec_from_precoding(p);
    std::cout << "N: " << spec.N() << "\nk: " << spec.k << "\nA: [";
    for (std::size_t i = 0; i < spec.info_set.size(); ++i)
        std::cout << (i ? ", " : "") << spec.info_set[i];
    std::cout << "]\n";
    if (spec.dyn_constraints.empty()) {
        std::cout << "constraints: none (all frozen bits fixed to 0)\n";
    } else {
        std::cout << "constraints:\n";
        for (const auto& [t, srcs] : spec.dyn_constraints) {
            std::cout << "  " << t << ": [";
            for (std::size_t i = 0; i < srcs.size(); ++i) std::cout << (i ? ", " : "") << srcs[i];
            std::cout << "]\n";
        }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"precoded polar product codes: simulate, tub, wef, validate"};
    app.require_subcommand(1);

    CommonOpts sim_opts, tub_opts, wef_opts;
    std::string snr, alpha_str = "default", out_path, first_pass = "rows", softmax_mode = "literal";
    int list_size = 8, max_iters = 20, threads = default_threads();
    long long min_errors = 100, max_trials = 1000000;
    std::uint64_t seed = 1;
    bool dry_run = false;
    std::string validate_path;

    CLI::App* sim = app.add_subcommand("simulate", "Monte Carlo CER estimation over biAWGN");
    sim_opts.add_to(sim, true);
    sim->add_option("--snr", snr, "Eb/N0 grid in dB: start:step:stop or comma list")->required();
    sim->add_option("--list-size,-L", list_size, "SCL list size")->capture_default_str();
    sim->add_option("--max-iters", max_iters, "maximum full iterations")->capture_default_str();
    sim->add_option("--alpha", alpha_str, "'default' or comma list of 2*max_iters factors in (0,1]")
        ->capture_default_str();
    sim->add_option("--min-errors", min_errors, "stop after this many block errors")
        ->capture_default_str();
    sim->add_option("--max-trials", max_trials, "hard cap on trials per SNR point")
        ->capture_default_str();
    sim->add_option("--seed", seed, "master seed")->capture_default_str();
    sim->add_option("--out", out_path, "output CSV path (default: stdout)");
    sim->add_option("--threads", threads, "worker threads (default: PPPC_THREADS or hardware)");
    sim->add_option("--first-pass", first_pass, "rows|columns")->capture_default_str();
    sim->add_option("--softmax-mode", softmax_mode,
                    "unanimous-position fallback: normalized|literal")
        ->capture_default_str();
    sim->add_flag("--dry-run", dry_run, "emit metadata only, run no trials");

    CLI::App* tub = app.add_subcommand("tub", "truncated union bound curve");
    tub_opts.add_to(tub, true);
    std::string tub_snr, tub_out;
    tub->add_option("--snr", tub_snr, "Eb/N0 grid in dB: start:step:stop or comma list")->required();
    tub->add_option("--out", tub_out, "output CSV path (default: stdout)");

    CLI::App* wef = app.add_subcommand("wef", "exhaustive weight enumerator report");
    wef_opts.add_to(wef, false);

    CLI::App* val = app.add_subcommand("validate", "check a spec file and report its structure");
    val->add_option("file", validate_path, "spec file to validate")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (sim->parsed())
            return cmd_simulate(sim_opts, snr, list_size, max_iters, alpha_str, min_errors,
                                max_trials, seed, out_path, threads, first_pass, softmax_mode,
                                dry_run);
        if (tub->parsed()) return cmd_tub(tub_opts, tub_snr, tub_out);
        if (wef->parsed()) return cmd_wef(wef_opts);
        if (val->parsed()) return cmd_validate(validate_path);
    } catch (const pppc::GuardError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const pppc::SpecError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
