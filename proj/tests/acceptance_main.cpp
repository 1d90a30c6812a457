// Acceptance suite: runs every stage against the expected reference counts
// and prints one line per criterion.  Exit code = number of failed criteria.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "qsd/pipeline.hpp"

using namespace qsd;
using Clock = std::chrono::steady_clock;

namespace {

struct Criterion {
    std::string name;
    bool pass = true;
    double seconds = 0;
    double budget = 0;
    std::vector<std::string> notes;
};

std::vector<Criterion> criteria;

void finish(Criterion& c, Clock::time_point t0) {
    c.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    if (c.budget > 0 && c.seconds > c.budget) {
        c.pass = false;
        c.notes.push_back("time budget exceeded");
    }
    criteria.push_back(c);
}

// Collects anchors of the given stages into the criterion.
void absorb(Criterion& c, const Pipeline& p, std::initializer_list<std::string> stages) {
    for (const auto& a : p.anchors)
        for (const auto& s : stages)
            if (a.stage == s) {
                if (!a.pass) {
                    c.pass = false;
                    c.notes.push_back(a.name + ": expected " + a.expected + ", got " + a.actual);
                }
            }
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

}  // namespace

int main() {
    PipelineOptions opt;
    opt.threads = 0;
    opt.full_verify = true;
    Pipeline p(opt);

    {
        Criterion c{"criterion 1: code stage (rank 51, dual dim 13, weight enumerator)"};
        c.budget = 5;
        auto t0 = Clock::now();
        p.run_code_stage();
        absorb(c, p, {"code"});
        finish(c, t0);
    }
    {
        Criterion c{"criterion 2: clique stage (48 unions, 3 cliques, 2-(16,6,2), 3^21)"};
        c.budget = 30;
        auto t0 = Clock::now();
        p.run_clique_stage();
        absorb(c, p, {"cliques"});
        finish(c, t0);
    }
    {
        Criterion c{"criterion 3: group stage (order, kernel, quotient, involutions)"};
        c.budget = 120;
        auto t0 = Clock::now();
        p.run_group_stage();
        absorb(c, p, {"group"});
        finish(c, t0);
    }
    {
        Criterion c{"criterion 4: orbit signatures and compatibility graphs"};
        c.budget = 60;
        auto t0 = Clock::now();
        p.run_orbit_stage();
        absorb(c, p, {"orbits"});
        finish(c, t0);
    }
    {
        Criterion c{"criterion 5: classification (2688 + 17, overlap 6, mass, Burnside)"};
        c.budget = 1200;
        auto t0 = Clock::now();
        p.run_classify_stage();
        absorb(c, p, {"classify"});
        finish(c, t0);
    }
    {
        Criterion c{"criterion 6: analysis (2-ranks, SRG, cocliques, fingerprints)"};
        c.budget = 300;
        auto t0 = Clock::now();
        p.run_analysis_stage();
        absorb(c, p, {"analysis"});
        finish(c, t0);
    }
    {
        Criterion c{"criterion 7: property suites and thread-count determinism"};
        auto t0 = Clock::now();

        // field axioms, exhaustively
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) {
                if (f4_mul(a, b) != f4_mul(b, a)) c.pass = false;
                for (int d = 0; d < 4; ++d) {
                    if (f4_mul(f4_mul(a, b), d) != f4_mul(a, f4_mul(b, d))) c.pass = false;
                    if (f4_mul(a, f4_add(b, d)) != f4_add(f4_mul(a, b), f4_mul(a, d))) c.pass = false;
                }
            }
        for (int a = 1; a < 4; ++a)
            if (f4_mul(a, f4_inv(a)) != 1) c.pass = false;
        if (!c.pass) c.notes.push_back("field axioms failed");

        // the lines form a 2-(64,4,1) design
        {
            const Geometry& g = p.universe->geom;
            std::array<std::array<int, 64>, 64> cover{};
            for (const Line& ln : g.lines) {
                int pts[4], np = 0;
                for (uint64_t m = ln.mask; m;) {
                    pts[np++] = __builtin_ctzll(m);
                    m &= m - 1;
                }
                for (int i = 0; i < np; ++i)
                    for (int j = i + 1; j < np; ++j) ++cover[pts[i]][pts[j]];
            }
            bool ok = true;
            for (int a = 0; a < 64; ++a)
                for (int b = a + 1; b < 64; ++b) ok = ok && cover[a][b] == 1;
            if (!ok) {
                c.pass = false;
                c.notes.push_back("2-(64,4,1) line design check failed");
            }
        }

        // design axioms on 100 random choice vectors
        {
            std::mt19937_64 rng(1009);
            bool ok = true;
            for (int trial = 0; trial < 100; ++trial) {
                DesignChoice ch;
                for (int cc = 0; cc < 21; ++cc) ch.trits[cc] = static_cast<uint8_t>(rng() % 3);
                ok = ok && verify_design(*p.universe, assemble_design(*p.universe, ch)).ok;
            }
            if (!ok) {
                c.pass = false;
                c.notes.push_back("random-choice design axioms failed");
            }
        }

        // canonical form: idempotence and orbit constancy
        {
            std::mt19937_64 rng(1013);
            bool ok = true;
            for (int trial = 0; trial < 3; ++trial) {
                DesignChoice ch;
                for (int cc = 0; cc < 21; ++cc) ch.trits[cc] = static_cast<uint8_t>(rng() % 3);
                CanonResult base = canonical_choice(*p.quotient, ch);
                ok = ok && canonical_choice(*p.quotient, DesignChoice::decode(base.canon_key)).canon_key ==
                               base.canon_key;
                for (int k = 0; k < 25; ++k) {
                    int e = static_cast<int>(rng() % p.quotient->order());
                    DesignChoice img;
                    p.quotient->apply(e, ch, img);
                    ok = ok && canonical_choice(*p.quotient, img).canon_key == base.canon_key;
                }
            }
            if (!ok) {
                c.pass = false;
                c.notes.push_back("canonical-form properties failed");
            }
        }

        // byte-identical artifacts across thread counts
        {
            namespace fs = std::filesystem;
            fs::path base = fs::temp_directory_path() / "qsd_acceptance";
            fs::remove_all(base);
            auto run_with = [&](int threads, const fs::path& dir) {
                PipelineOptions o;
                o.threads = threads;
                o.out_dir = dir.string();
                o.write_json = true;
                Pipeline q(o);
                q.run_code_stage();
                q.run_clique_stage();
                q.run_group_stage();
                q.run_orbit_stage();
                q.run_classify_stage();
                q.write_code_artifacts();
                q.write_clique_artifacts();
                q.write_classification_artifacts();
                return q.failed();
            };
            int f1 = run_with(1, base / "t1");
            int f2 = run_with(0, base / "tN");
            bool ok = f1 == 0 && f2 == 0;
            for (const char* name : {"weight_enumerator.json", "clique_catalog.json",
                                     "classification.json", "tables.json", "tables.txt"}) {
                std::string a = slurp(base / "t1" / name), b = slurp(base / "tN" / name);
                if (a.empty() || a != b) {
                    ok = false;
                    c.notes.push_back(std::string("artifact differs across thread counts: ") + name);
                }
            }
            if (!ok) c.pass = false;
        }

        finish(c, t0);
    }

    int failed = 0;
    for (const auto& c : criteria) {
        std::printf("[%s] %s (%.1f s)\n", c.pass ? "PASS" : "FAIL", c.name.c_str(), c.seconds);
        for (const auto& n : c.notes) std::printf("        %s\n", n.c_str());
        failed += c.pass ? 0 : 1;
    }
    if (p.mass)
        std::printf("summary: rich classes %zu, mass sum %llu, N64 %llu, N %llu, burnside %llu, "
                    "distinct fingerprints %zu\n",
                    p.classification ? p.classification->records.size() : 0,
                    static_cast<unsigned long long>(p.mass->mass_sum),
                    static_cast<unsigned long long>(p.mass->n64),
                    static_cast<unsigned long long>(p.mass->n_total),
                    static_cast<unsigned long long>(p.burnside ? *p.burnside : 0),
                    p.distinct_fingerprints);
    std::printf("%d of %zu criteria failed\n", failed, criteria.size());
    return failed;
}
