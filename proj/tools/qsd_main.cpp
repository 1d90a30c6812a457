// qsd: construct, verify, classify and analyze the quasi-symmetric
// 2-(64,24,46) designs supported by the dual of the binary code of the
// lines of AG(3,4).

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "qsd/pipeline.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void print_stage_anchors(const qsd::Pipeline& p, const std::string& stage) {
    for (const auto& a : p.anchors) {
        if (a.stage != stage) continue;
        std::cout << "  " << (a.pass ? "PASS" : "FAIL") << "  " << a.name << ": " << a.actual
                  << (a.pass ? "" : " (expected " + a.expected + ")") << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quasi-symmetric 2-(64,24,46) design toolkit"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string out_dir = "out";
    int threads = 0;
    std::string verify = "fast";
    bool json = false;
    int dimacs = 0;

    app.add_option("--out", out_dir, "output directory for artifacts");
    app.add_option("--threads", threads, "worker threads (0 = hardware)");
    app.add_option("--verify", verify, "verification level: fast or full")
        ->check(CLI::IsMember({"fast", "full"}));
    app.add_flag("--json", json, "write JSON artifacts");
    app.add_option("--dimacs", dimacs, "export the first N block graphs as DIMACS (analyze)");

    auto* cmd_code = app.add_subcommand("code", "build the line code and its dual, check the weight enumerator");
    auto* cmd_cliques = app.add_subcommand("cliques", "even unions, special cliques, design count");
    auto* cmd_classify = app.add_subcommand("classify", "full classification: families, mass formula, orbit recount");
    auto* cmd_analyze = app.add_subcommand("analyze", "2-ranks, block graphs, SRG checks, fingerprints");
    auto* cmd_repro = app.add_subcommand("reproduce-paper", "run every stage and check all reference counts");

    CLI11_PARSE(app, argc, argv);

    qsd::PipelineOptions opt;
    opt.threads = threads;
    opt.full_verify = verify == "full";
    opt.out_dir = out_dir;
    opt.write_json = json;
    opt.dimacs_count = dimacs;

    try {
        qsd::Pipeline p(opt);
        auto t0 = Clock::now();

        if (cmd_code->parsed()) {
            p.run_code_stage();
            std::cout << "code stage (" << seconds_since(t0) << " s)\n";
            print_stage_anchors(p, "code");
            if (json) p.write_code_artifacts();
        } else if (cmd_cliques->parsed()) {
            p.run_clique_stage();
            std::cout << "clique stage (" << seconds_since(t0) << " s)\n";
            std::cout << "  21 classes x 3 cliques x 16 blocks = 1008\n";
            print_stage_anchors(p, "cliques");
            std::cout << "  same-class cross-clique meet sizes:";
            for (const auto& [m, cnt] : p.same_class_meets)
                std::cout << " " << m << "x" << cnt;
            std::cout << "\n";
            if (json) p.write_clique_artifacts();
        } else if (cmd_classify->parsed()) {
            p.run_group_stage();
            p.run_orbit_stage();
            p.run_classify_stage();
            std::cout << "classification (" << seconds_since(t0) << " s)\n";
            print_stage_anchors(p, "group");
            print_stage_anchors(p, "orbits");
            print_stage_anchors(p, "classify");
            p.write_classification_artifacts();
            if (p.mass) {
                std::cout << "  mass sum: " << p.mass->mass_sum << "\n";
                std::cout << "  rich classes: " << (p.classification ? p.classification->records.size() : 0)
                          << ", order-64 classes: " << p.mass->n64 << ", total: " << p.mass->n_total << "\n";
            }
        } else if (cmd_analyze->parsed()) {
            std::filesystem::path cpath = std::filesystem::path(out_dir) / "classification.json";
            if (std::filesystem::exists(cpath)) {
                p.load_classification(cpath.string());
            } else {
                std::cerr << "no " << cpath.string() << "; run `qsd classify` first or pass --out\n";
                return 1;
            }
            p.run_analysis_stage();
            std::cout << "analysis (" << seconds_since(t0) << " s)\n";
            print_stage_anchors(p, "analysis");
            p.write_analysis_artifacts();
        } else if (cmd_repro->parsed()) {
            p.run_all();
            if (json) {
                p.write_code_artifacts();
                p.write_clique_artifacts();
            }
            p.write_classification_artifacts();
            p.write_analysis_artifacts();
            std::cout << p.report_text();
            if (!out_dir.empty()) {
                std::filesystem::create_directories(out_dir);
                std::ofstream rep(std::filesystem::path(out_dir) / "report.txt");
                rep << p.report_text();
            }
            std::cout << "total time: " << seconds_since(t0) << " s\n";
        }

        int failed = p.failed();
        if (failed) std::cout << failed << " verification(s) failed\n";
        return failed > 255 ? 255 : failed;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
}
