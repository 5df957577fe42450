// Command line driver: generate boards, evaluate discrepancies, sweep
// experiments, run spectral checks, and manage hierarchical colorings.
// Single results print as JSON, sweeps as CSV; all floats use 12 significant
// digits. Errors exit nonzero with {"error": ...} on stderr.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "ckdisc/arc_disc.hpp"
#include "ckdisc/coloring.hpp"
#include "ckdisc/hierarchy.hpp"
#include "ckdisc/line_disc.hpp"
#include "ckdisc/parallel.hpp"
#include "ckdisc/spectral.hpp"

namespace {

using namespace ckdisc;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

Coloring make_family(const std::string& family, int n, std::uint64_t seed) {
    if (family == "constant") return Coloring::constant(n, +1);
    if (family == "constant-") return Coloring::constant(n, -1);
    if (family == "parity") return Coloring::parity(n);
    if (family == "striped") return Coloring::striped(n);
    if (family == "random") return Coloring::random(n, seed);
    throw std::runtime_error("unknown family '" + family +
                             "' (expected constant, constant-, parity, striped, random)");
}

Coloring load_board(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open board file '" + path + "'");
    return Coloring::load(in);
}

void write_output(const std::string& out_path, const std::string& content) {
    if (out_path.empty() || out_path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot open output file '" + out_path + "'");
    out << content;
}

std::string witness_string(const DiscrepancyReport& rep) {
    if (const Segment* s = std::get_if<Segment>(&rep.witness)) {
        return "seg(" + fmt(s->a.x) + ";" + fmt(s->a.y) + ";" + fmt(s->b.x) + ";" + fmt(s->b.y) +
               ")";
    }
    const Circle& k = std::get<Circle>(rep.witness);
    return "circle(" + fmt(k.center.x) + ";" + fmt(k.center.y) + ";" + fmt(k.radius) + ")";
}

struct SweepTask {
    std::string family;
    int n = 0;
    std::uint64_t seed = 0;
};

struct SweepRow {
    std::string family;
    int n;
    std::uint64_t seed;
    std::string mode;
    std::string p;
    double value;
    std::string witness;
    std::string method;
    long long elapsed_ms;
};

int run(int argc, char** argv) {
    CLI::App app{"checkerboard discrepancy toolkit"};
    app.require_subcommand(1);
    unsigned jobs = 0;
    app.add_option("--jobs", jobs, "worker threads (0 = hardware)")->capture_default_str();

    // gen
    auto* gen = app.add_subcommand("gen", "generate a coloring and write its text format");
    std::string gen_family, gen_out = "-", gen_label;
    int gen_n = 0;
    std::uint64_t gen_seed = 0;
    gen->add_option("family", gen_family, "constant|constant-|parity|striped|random")->required();
    gen->add_option("N", gen_n, "board size")->required();
    gen->add_option("--seed", gen_seed, "seed for the random family");
    gen->add_option("--out", gen_out, "output file (- for stdout)");
    gen->add_option("--label", gen_label, "override the board label");

    // disc
    auto* disc = app.add_subcommand("disc", "discrepancy of one probe on a board file");
    std::string disc_board;
    std::vector<double> seg_coords, circ_coords;
    disc->add_option("board", disc_board, "board file")->required();
    auto* seg_opt = disc->add_option("--segment", seg_coords, "ax ay bx by")->expected(4);
    auto* circ_opt = disc->add_option("--circle", circ_coords, "cx cy r")->expected(3);
    seg_opt->excludes(circ_opt);

    // sweep
    auto* sweep = app.add_subcommand("sweep", "batch experiments over boards, CSV output");
    std::string sw_family = "random", sw_mode = "seg-sup", sw_out = "-", sw_format = "csv";
    std::vector<int> sw_ns;
    std::vector<std::uint64_t> sw_seeds{1};
    double sw_p = 1.0;
    int sw_angular = 0, sw_radius_count = 32, sw_exact_cap = 64;
    std::size_t sw_trials = 10000;
    double sw_step = 0.25;
    sweep->add_option("--family", sw_family, "board family")->capture_default_str();
    sweep->add_option("--N", sw_ns, "board sizes (repeat or comma separated)")
        ->required()
        ->delimiter(',');
    sweep->add_option("--seeds", sw_seeds, "seeds (random family)")->delimiter(',');
    sweep->add_option("--mode", sw_mode, "seg-sup|circ-sup|lp|circ-lp|line-sup")
        ->capture_default_str();
    sweep->add_option("--p", sw_p, "Lp exponent for lp modes")->capture_default_str();
    sweep->add_option("--angular-nodes", sw_angular, "angular nodes for lp (0 = max(256,4N))");
    sweep->add_option("--center-step", sw_step, "center grid step for circle modes")
        ->capture_default_str();
    sweep->add_option("--radius-count", sw_radius_count, "radius nodes for circle modes")
        ->capture_default_str();
    sweep->add_option("--trials", sw_trials, "trials for sampled segment search")
        ->capture_default_str();
    sweep->add_option("--exact-cap", sw_exact_cap, "largest N for exact seg-sup")
        ->capture_default_str();
    sweep->add_option("--out", sw_out, "output file (- for stdout)");
    sweep->add_option("--format", sw_format, "csv|json")->capture_default_str();

    // spectral
    auto* spectral = app.add_subcommand("spectral", "Fourier-side verification checks");
    std::string sp_board, sp_check;
    double sp_t = 1.5, sp_a = 0.25, sp_A = 2.0, sp_x = 5.0, sp_c1 = 2.0;
    spectral->add_option("board", sp_board, "board file")->required();
    spectral->add_option("--check", sp_check, "parseval|decay|ring")->required();
    spectral->add_option("--t", sp_t, "circle radius (parseval)")->capture_default_str();
    spectral->add_option("--a", sp_a, "inner radius factor a (decay)")->capture_default_str();
    spectral->add_option("--A", sp_A, "outer radius A (decay)")->capture_default_str();
    spectral->add_option("--x", sp_x, "ring start (ring)")->capture_default_str();
    spectral->add_option("--c1", sp_c1, "ring stretch factor (ring)")->capture_default_str();

    // hier
    auto* hier = app.add_subcommand("hier", "hierarchical coloring operations");
    hier->require_subcommand(1);
    auto* hb = hier->add_subcommand("build", "build and verify a hierarchy");
    std::vector<double> hb_eps{0.25};
    double hb_K = 500.0, hb_cm = 1.0;
    int hb_levels = 3, hb_retry = 200, hb_exact_cap = 64, hb_size_cap = 4096;
    std::uint64_t hb_seed = 1;
    std::size_t hb_trials = 20000;
    std::string hb_out;
    hb->add_option("--epsilon", hb_eps, "epsilon schedule")->delimiter(',')->capture_default_str();
    hb->add_option("--levels", hb_levels, "levels to build")->capture_default_str();
    hb->add_option("--seed", hb_seed, "sign-draw seed")->capture_default_str();
    hb->add_option("--K", hb_K, "length-bound constant")->capture_default_str();
    hb->add_option("--cm", hb_cm, "C_M multiplier constant")->capture_default_str();
    hb->add_option("--retry-budget", hb_retry, "resamples per level")->capture_default_str();
    hb->add_option("--exact-cap", hb_exact_cap, "exact verification cap")->capture_default_str();
    hb->add_option("--trials", hb_trials, "sampled verification trials")->capture_default_str();
    hb->add_option("--size-cap", hb_size_cap, "largest allowed level size")->capture_default_str();
    hb->add_option("--out", hb_out, "dump file")->required();

    auto* hv = hier->add_subcommand("verify", "re-verify a built hierarchy");
    std::string hv_in;
    int hv_level = 0;
    hv->add_option("--in", hv_in, "dump file")->required();
    hv->add_option("--level", hv_level, "single level (default: all)");

    auto* hq = hier->add_subcommand("query", "color of one cell");
    std::string hq_in;
    long long hq_m = 0, hq_n = 0;
    hq->add_option("--in", hq_in, "dump file")->required();
    hq->add_option("--m", hq_m, "cell m (centered coordinates)")->required();
    hq->add_option("--n", hq_n, "cell n (centered coordinates)")->required();

    auto* hd = hier->add_subcommand("dump", "summarize a dump file");
    std::string hd_in;
    hd->add_option("--in", hd_in, "dump file")->required();

    CLI11_PARSE(app, argc, argv);

    if (gen->parsed()) {
        Coloring c = make_family(gen_family, gen_n, gen_seed);
        if (!gen_label.empty()) {
            std::vector<std::int8_t> cells;
            cells.reserve(static_cast<std::size_t>(gen_n) * gen_n);
            for (int row = 0; row < gen_n; ++row)
                for (int col = 0; col < gen_n; ++col)
                    cells.push_back(static_cast<std::int8_t>(c.get(col, row)));
            c = Coloring::from_cells(gen_n, std::move(cells), gen_label);
        }
        write_output(gen_out, c.to_text());
        return 0;
    }

    if (disc->parsed()) {
        const Coloring board = load_board(disc_board);
        double value = 0.0;
        if (!seg_coords.empty()) {
            value = segment_discrepancy(
                board, {{seg_coords[0], seg_coords[1]}, {seg_coords[2], seg_coords[3]}});
        } else if (!circ_coords.empty()) {
            value = circle_discrepancy(board,
                                       {{circ_coords[0], circ_coords[1]}, circ_coords[2]});
        } else {
            throw std::runtime_error("disc: provide --segment or --circle");
        }
        std::cout << "{\"value\":" << fmt(value) << "}\n";
        return 0;
    }

    if (sweep->parsed()) {
        std::vector<SweepTask> tasks;
        for (int n : sw_ns)
            for (std::uint64_t s : sw_seeds) tasks.push_back({sw_family, n, s});

        std::vector<SweepRow> rows(tasks.size());
        const unsigned outer = jobs == 0 ? default_jobs() : jobs;
        const unsigned inner = tasks.size() >= outer ? 1 : std::max(1u, outer / static_cast<unsigned>(tasks.size()));
        parallel_for(tasks.size(), [&](std::size_t ti) {
            const SweepTask& task = tasks[ti];
            const Coloring board = make_family(task.family, task.n, task.seed);
            SweepRow row{task.family, task.n, task.seed, sw_mode, "inf", 0.0, "", "", 0};
            const auto start = std::chrono::steady_clock::now();
            if (sw_mode == "seg-sup") {
                const DiscrepancyReport rep =
                    task.n <= sw_exact_cap
                        ? max_segment_discrepancy(board, {sw_exact_cap, inner})
                        : sampled_segment_sup(board, sw_trials, task.seed, inner);
                row.value = rep.value;
                row.witness = witness_string(rep);
                row.method = rep.method;
            } else if (sw_mode == "circ-sup") {
                const DiscrepancyReport rep =
                    circle_sup_search(board, sw_step, sw_radius_count, inner);
                row.value = rep.value;
                row.witness = witness_string(rep);
                row.method = rep.method;
            } else if (sw_mode == "lp") {
                const int nodes = sw_angular > 0 ? sw_angular : std::max(256, 4 * task.n);
                row.value = line_lp(board, sw_p, nodes, inner);
                row.p = fmt(sw_p);
                row.method = "quadrature";
            } else if (sw_mode == "circ-lp") {
                row.value = circle_lp(board, sw_p, sw_step, sw_radius_count, inner);
                row.p = fmt(sw_p);
                row.method = "quadrature";
            } else if (sw_mode == "line-sup") {
                row.value = line_sup(board, inner);
                row.method = "exact-grid";
            } else {
                throw std::runtime_error("sweep: unknown mode '" + sw_mode + "'");
            }
            row.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                 std::chrono::steady_clock::now() - start)
                                 .count();
            rows[ti] = row;
        }, outer);

        std::ostringstream out;
        if (sw_format == "json") {
            out << "[";
            for (std::size_t i = 0; i < rows.size(); ++i) {
                const SweepRow& r = rows[i];
                out << (i ? "," : "") << "{\"family\":\"" << r.family << "\",\"N\":" << r.n
                    << ",\"seed\":" << r.seed << ",\"mode\":\"" << r.mode << "\",\"p\":\"" << r.p
                    << "\",\"value\":" << fmt(r.value) << ",\"witness\":\"" << r.witness
                    << "\",\"method\":\"" << r.method << "\",\"elapsed_ms\":" << r.elapsed_ms
                    << "}";
            }
            out << "]\n";
        } else if (sw_format == "csv") {
            out << "family,N,seed,mode,p,value,witness,method,elapsed_ms\n";
            for (const SweepRow& r : rows) {
                out << r.family << ',' << r.n << ',' << r.seed << ',' << r.mode << ',' << r.p
                    << ',' << fmt(r.value) << ',' << r.witness << ',' << r.method << ','
                    << r.elapsed_ms << '\n';
            }
        } else {
            throw std::runtime_error("sweep: unknown format '" + sw_format + "'");
        }
        write_output(sw_out, out.str());
        return 0;
    }

    if (spectral->parsed()) {
        const Coloring board = load_board(sp_board);
        double lhs = 0.0, rhs = 0.0;
        if (sp_check == "parseval") {
            const ParsevalResult pr = parseval_check(board, sp_t, 0.0625, jobs);
            lhs = pr.spatial;
            rhs = pr.spectral;
        } else if (sp_check == "decay") {
            lhs = decay_mass(board, sp_a, sp_A, jobs);
            rhs = static_cast<double>(board.size()) * board.size() / 3.0;
        } else if (sp_check == "ring") {
            lhs = ring_energy(sp_x, sp_c1);
            rhs = 0.0;
        } else {
            throw std::runtime_error("spectral: unknown check '" + sp_check + "'");
        }
        const double scale = std::max(std::abs(lhs), std::abs(rhs));
        const double rel_gap = scale == 0.0 ? 0.0 : (lhs - rhs) / scale;
        std::cout << "{\"lhs\":" << fmt(lhs) << ",\"rhs\":" << fmt(rhs)
                  << ",\"rel_gap\":" << fmt(rel_gap) << "}\n";
        return 0;
    }

    if (hb->parsed()) {
        HierarchySpec spec;
        spec.epsilon = hb_eps;
        spec.K = hb_K;
        spec.C_M = hb_cm;
        spec.max_level = hb_levels;
        spec.seed = hb_seed;
        spec.retry_budget = hb_retry;
        spec.exact_cap = hb_exact_cap;
        spec.sampled_trials = hb_trials;
        spec.size_cap = hb_size_cap;
        const HierarchicalColoring h = HierarchicalColoring::build(spec);
        std::ofstream out(hb_out);
        if (!out) throw std::runtime_error("cannot open dump file '" + hb_out + "'");
        h.save(out);
        std::cout << "{\"levels\":" << h.levels() << ",\"extent\":" << h.extent()
                  << ",\"passed\":true}\n";
        return 0;
    }

    if (hv->parsed()) {
        std::ifstream in(hv_in);
        if (!in) throw std::runtime_error("cannot open dump file '" + hv_in + "'");
        const HierarchicalColoring h = HierarchicalColoring::load(in);
        std::ostringstream out;
        out << "[";
        bool first = true;
        for (int level = 1; level <= h.levels(); ++level) {
            if (hv_level != 0 && level != hv_level) continue;
            const LevelReport rep = h.verify_level(level);
            out << (first ? "" : ",") << "{\"level\":" << rep.level << ",\"board_size\":"
                << rep.board_size << ",\"max_found\":" << fmt(rep.max_found)
                << ",\"bound\":" << fmt(rep.bound) << ",\"method\":\"" << rep.method
                << "\",\"passed\":" << (rep.passed ? "true" : "false") << "}";
            first = false;
        }
        out << "]\n";
        std::cout << out.str();
        return 0;
    }

    if (hq->parsed()) {
        std::ifstream in(hq_in);
        if (!in) throw std::runtime_error("cannot open dump file '" + hq_in + "'");
        const HierarchicalColoring h = HierarchicalColoring::load(in);
        std::cout << "{\"value\":" << h.cell(hq_m, hq_n) << "}\n";
        return 0;
    }

    if (hd->parsed()) {
        std::ifstream in(hd_in);
        if (!in) throw std::runtime_error("cannot open dump file '" + hd_in + "'");
        const HierarchicalColoring h = HierarchicalColoring::load(in);
        std::ostringstream out;
        out << "{\"levels\":" << h.levels() << ",\"extent\":" << h.extent() << ",\"sizes\":[";
        for (int k = 0; k < h.levels(); ++k) out << (k ? "," : "") << h.level_sizes()[k];
        out << "],\"reports\":[";
        for (int k = 0; k < h.levels(); ++k) {
            const LevelReport& rep = h.reports()[static_cast<std::size_t>(k)];
            out << (k ? "," : "") << "{\"level\":" << rep.level << ",\"max_found\":"
                << fmt(rep.max_found) << ",\"bound\":" << fmt(rep.bound) << ",\"method\":\""
                << rep.method << "\",\"retries\":" << rep.retries
                << ",\"passed\":" << (rep.passed ? "true" : "false") << "}";
        }
        out << "]}\n";
        std::cout << out.str();
        return 0;
    }

    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "{\"error\":\"" << e.what() << "\"}\n";
        return 1;
    }
}
