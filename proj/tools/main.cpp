// hexmono command line: generate, verify, order, torus-scan, render, serve,
// plus translation/loop scans and rule-set search.
//
// Exit status: 0 clean/SAT, 1 violation/UNSAT, 2 usage or input error, 3 LIMIT.

#include "service.hpp"

#include "hexmono/aperiodicity.hpp"
#include "hexmono/dendrite.hpp"
#include "hexmono/render.hpp"
#include "hexmono/ruleset_io.hpp"
#include "hexmono/search.hpp"
#include "hexmono/solver.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace hexmono;

namespace {

enum Exit { kOk = 0, kViolation = 1, kUsage = 2, kLimit = 3 };

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text)
{
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw InputError("cannot write " + path);
    out << text;
}

RuleSetPtr ruleset_arg(const std::string& name)
{
    try {
        return resolve_ruleset(name);
    } catch (const RuleSetError& e) {
        throw InputError("rule set " + name + ": " + e.what());
    } catch (const std::exception& e) {
        throw InputError(e.what());
    }
}

Patch patch_arg(const std::string& path)
{
    try {
        return parse_patch(read_file(path));
    } catch (const PatchParseError& e) {
        throw InputError(path + ": " + e.what());
    }
}

void print_stats(std::ostream& os, const SolveStats& s)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", s.wall_seconds);
    os << "nodes " << s.nodes << ", propagations " << s.propagations << ", " << buf << " s\n";
}

std::string cells_text(const std::vector<Cell>& cells)
{
    std::string out;
    for (std::size_t i = 0; i < cells.size(); ++i)
        out += (i ? " " : "") + to_string(cells[i]);
    return out;
}

RenderOptions render_options(const std::string& style, double size, const std::string& palette)
{
    RenderOptions opts;
    const auto st = parse_style(style);
    if (!st)
        throw InputError("unknown style '" + style + "' (outline, stripes, dendrite, joints, rhombi)");
    opts.style = *st;
    if (size <= 0)
        throw InputError("--size must be positive");
    opts.size = size;
    try {
        opts.palette.apply(palette);
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
    return opts;
}

std::string render_or_throw(const Patch& patch, const RenderOptions& opts)
{
    try {
        return render_svg(patch, opts);
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"hexmono: decorated hexagonal monotiles"};
    app.require_subcommand(1);

    // generate
    std::string g_ruleset, g_out, g_svg, g_style = "outline";
    int g_radius = 0;
    std::uint64_t g_seed = 1, g_limit = SolverConfig{}.node_limit;
    auto* gen = app.add_subcommand("generate", "grow a hexagonal patch with the solver");
    gen->add_option("--ruleset", g_ruleset, "shipped name or document path")->required();
    gen->add_option("--radius", g_radius)->required()->check(CLI::Range(0, 64));
    gen->add_option("--seed", g_seed);
    gen->add_option("--out", g_out, "patch document ('-' for stdout)")->required();
    gen->add_option("--svg", g_svg);
    gen->add_option("--style", g_style, "style of the --svg picture");
    gen->add_option("--node-limit", g_limit);

    // verify
    std::string v_in;
    auto* ver = app.add_subcommand("verify", "check a patch document");
    ver->add_option("patch", v_in)->required();

    // order
    std::string o_in, o_out = "-";
    auto* ord = app.add_subcommand("order", "placement order listing");
    ord->add_option("patch", o_in)->required();
    ord->add_option("--out", o_out);

    // torus-scan
    std::string t_ruleset, t_out;
    int t_max_det = 0;
    unsigned t_threads = 0;
    std::uint64_t t_limit = SolverConfig{}.node_limit;
    auto* tor = app.add_subcommand("torus-scan", "exhaustive search of every torus up to a determinant");
    tor->add_option("--ruleset", t_ruleset)->required();
    tor->add_option("--max-det", t_max_det)->required()->check(CLI::Range(1, 100000));
    tor->add_option("--out", t_out)->required();
    tor->add_option("--threads", t_threads);
    tor->add_option("--node-limit", t_limit);

    // render
    std::string r_in, r_out, r_style = "outline", r_palette;
    double r_size = 40.0;
    auto* ren = app.add_subcommand("render", "SVG picture of a patch");
    ren->add_option("patch", r_in)->required();
    ren->add_option("--style", r_style);
    ren->add_option("--out", r_out)->required();
    ren->add_option("--size", r_size);
    ren->add_option("--palette", r_palette, "key=color,...");

    // serve
    std::string s_ruleset, s_dir, s_host = "127.0.0.1";
    int s_port = 0, s_radius = 6;
    auto* srv = app.add_subcommand("serve", "HTTP session service for the tiler");
    srv->add_option("--port", s_port)->required()->check(CLI::Range(1, 65535));
    srv->add_option("--ruleset", s_ruleset)->required();
    srv->add_option("--sessions", s_dir, "directory keeping one patch document per session");
    srv->add_option("--host", s_host);
    srv->add_option("--radius", s_radius, "board radius of new sessions")->check(CLI::Range(0, 12));

    // translations
    std::string x_in, x_out = "-";
    int x_len = 8;
    double x_min = 0.5;
    auto* trn = app.add_subcommand("translations", "translation-symmetry scan of a complete patch");
    trn->add_option("patch", x_in)->required();
    trn->add_option("--max-len", x_len)->check(CLI::Range(1, 1000));
    trn->add_option("--min-overlap", x_min)->check(CLI::Range(0.0, 1.0));
    trn->add_option("--out", x_out);

    // census
    std::string c_in, c_layer = "stripe", c_out = "-";
    auto* cen = app.add_subcommand("census", "closed loops of a motif layer");
    cen->add_option("patch", c_in)->required();
    cen->add_option("--layer", c_layer);
    cen->add_option("--out", c_out);

    // search
    std::string q_template, q_out = "-", q_first;
    SearchBudget q_budget;
    SearchFilter q_filter;
    auto* sea = app.add_subcommand("search", "enumerate a rule-set template and filter the instantiations");
    sea->add_option("template", q_template)->required();
    sea->add_option("--out", q_out);
    sea->add_option("--emit-first", q_first, "write the first survivor as a rule-set document");
    sea->add_option("--budget", q_budget.max_instantiations);
    sea->add_option("--node-limit", q_budget.node_limit);
    sea->add_option("--radius", q_filter.region_radius);
    sea->add_option("--max-det", q_filter.max_torus_det);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        if (*gen) {
            auto rs = ruleset_arg(g_ruleset);
            std::optional<RenderOptions> ropts;
            if (!g_svg.empty())
                ropts = render_options(g_style, 40.0, "");
            SolverConfig cfg;
            cfg.seed = g_seed;
            cfg.node_limit = g_limit;
            const SolveResult r = solve_region(Region::hex(g_radius), rs, cfg);
            std::cerr << to_string(r.outcome) << ": ";
            if (r.outcome != Outcome::SAT) {
                std::cerr << "radius " << g_radius << ", ";
                print_stats(std::cerr, r.stats);
                return r.outcome == Outcome::UNSAT ? kViolation : kLimit;
            }
            std::cerr << r.patch.size() << " tiles, ";
            print_stats(std::cerr, r.stats);
            write_file(g_out, emit_patch(r.patch));
            if (ropts)
                write_file(g_svg, render_or_throw(r.patch, *ropts));
            return kOk;
        }

        if (*ver) {
            const Patch p = patch_arg(v_in);
            if (p.empty())
                std::cout << "warning: no tiles\n";
            const auto violations = verify_patch(p);
            for (const Violation& v : violations)
                std::cout << to_string(v.clause) << ": " << cells_text(v.cells) << ": " << v.detail << "\n";
            std::cout << p.size() << " tiles, " << violations.size() << " violations\n";
            try {
                const auto seq = placement_order(p);
                std::cout << "order: exists (" << seq.size() << " steps)\n";
            } catch (const CycleError& e) {
                std::cout << "order: none, cycle " << cells_text(e.cycle()) << "\n";
            }
            return violations.empty() ? kOk : kViolation;
        }

        if (*ord) {
            const Patch p = patch_arg(o_in);
            const auto violations = verify_patch(p);
            const bool cyclic = std::any_of(violations.begin(), violations.end(),
                                            [](const Violation& v) { return v.clause == Clause::Acyclicity; });
            if (!violations.empty() && !cyclic) {
                std::cerr << "error: patch has " << violations.size() << " violations; run verify\n";
                return kViolation;
            }
            try {
                const auto seq = placement_order(p);
                write_file(o_out, order_listing(p, seq));
            } catch (const CycleError& e) {
                std::cerr << "error: no placement order, cycle " << cells_text(e.cycle()) << "\n";
                return kViolation;
            }
            return kOk;
        }

        if (*tor) {
            auto rs = ruleset_arg(t_ruleset);
            TorusScanOptions opts;
            opts.solver.node_limit = t_limit;
            opts.threads = t_threads;
            const auto report = torus_scan(t_max_det, rs, opts);
            write_file(t_out, emit_torus_report(report));
            std::cerr << report.entries.size() << " bases: " << report.count(Outcome::SAT) << " SAT, "
                      << report.count(Outcome::UNSAT) << " UNSAT, " << report.count(Outcome::LIMIT) << " LIMIT\n";
            return report.exhaustive() ? kOk : kLimit;
        }

        if (*ren) {
            const Patch p = patch_arg(r_in);
            write_file(r_out, render_or_throw(p, render_options(r_style, r_size, r_palette)));
            return kOk;
        }

        if (*srv) {
            service::ServiceOptions opts;
            opts.ruleset = ruleset_arg(s_ruleset);
            opts.default_radius = s_radius;
            opts.session_dir = s_dir;
            service::Service service(std::move(opts));
            std::cerr << "serving " << service.session_count() << " sessions on http://" << s_host << ":" << s_port
                      << "\n";
            if (!service::run_server(service, s_host, s_port)) {
                std::cerr << "error: cannot listen on " << s_host << ":" << s_port << "\n";
                return kUsage;
            }
            return kOk;
        }

        if (*trn) {
            const Patch p = patch_arg(x_in);
            if (!p.complete())
                throw InputError("translation scan needs a complete patch");
            const auto report = scan_translations(p, x_len, x_min);
            write_file(x_out, emit_translation_report(report));
            return report.periods().empty() ? kOk : kViolation;
        }

        if (*cen) {
            const Patch p = patch_arg(c_in);
            try {
                write_file(c_out, emit_loop_census(loop_census(p, c_layer)));
            } catch (const std::invalid_argument& e) {
                throw InputError(e.what());
            }
            return kOk;
        }

        if (*sea) {
            SearchResult result;
            try {
                result = search_rulesets(read_file(q_template), q_budget, q_filter);
            } catch (const RuleSetError& e) {
                throw InputError(q_template + ": " + e.what());
            }
            write_file(q_out, emit_search_result(result));
            std::cerr << result.examined << " of " << result.total << " examined, " << result.invalid
                      << " invalid, " << result.survivors.size() << " survivors"
                      << (result.incomplete ? " (incomplete)" : "") << "\n";
            if (!q_first.empty()) {
                if (result.survivors.empty()) {
                    std::cerr << "error: no survivor to emit\n";
                    return kViolation;
                }
                write_file(q_first, emit_ruleset(*result.survivors.front().ruleset));
            }
            return result.survivors.empty() ? kViolation : kOk;
        }
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
