#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qsd/analysis.hpp"
#include "qsd/bh.hpp"
#include "qsd/classify.hpp"
#include "qsd/group.hpp"

namespace qsd {

struct Anchor {
    std::string stage;
    std::string name;
    std::string expected;
    std::string actual;
    bool pass = false;
};

struct PipelineOptions {
    int threads = 0;            // 0 = hardware
    bool full_verify = false;   // verify design axioms on all records vs. a sample
    std::string out_dir;        // empty = no artifacts
    bool write_json = false;
    int dimacs_count = 0;       // block graphs to export as DIMACS
};

// Runs the construction/verification stages in order, collecting the
// reference-value checks.  Stages build on each other's results and can be
// run individually by the CLI subcommands.
struct Pipeline {
    explicit Pipeline(PipelineOptions opt_) : opt(std::move(opt_)) {}

    PipelineOptions opt;
    std::vector<Anchor> anchors;

    std::optional<BhUniverse> universe;
    std::map<int, uint64_t> same_class_meets;  // informational, from the clique stage
    std::optional<Quotient> quotient;
    std::vector<InvolutionClass> inv_classes;
    int h1_class = -1, h2_class = -1;  // indices into inv_classes, by orbit signature
    std::optional<OrbitAnalysis> h1_orbits, h2_orbits;
    std::optional<Classification> classification;
    std::optional<MassResult> mass;
    std::optional<uint64_t> burnside;
    // analysis outputs
    std::vector<std::string> fingerprints;  // per record
    size_t distinct_fingerprints = 0;
    std::map<int, uint64_t> two_rank_histogram;
    bool all_srg_ok = false;

    void run_code_stage();      // code C, dual, weight enumerator
    void run_clique_stage();    // even unions, special cliques, 3^21
    void run_group_stage();     // group order, kernel, quotient, involutions
    void run_orbit_stage();     // orbit signatures, good/compatible graphs
    void run_classify_stage();  // families, mass formula, Burnside
    void run_analysis_stage();  // 2-ranks, SRGs, fingerprints

    void run_all();

    // Restores a classification from classification.json so the analysis
    // stage can run on its own.
    void load_classification(const std::string& path);

    int failed() const;
    std::string report_text() const;

    // Artifact writers; no-ops when out_dir is empty or write_json is off.
    void write_code_artifacts() const;
    void write_clique_artifacts() const;
    void write_classification_artifacts() const;
    void write_analysis_artifacts() const;

private:
    void check_exact(const std::string& stage, const std::string& name, uint64_t expected,
                     uint64_t actual);
    void check_true(const std::string& stage, const std::string& name, bool ok,
                    const std::string& detail = "");
    void ensure_universe();
    void ensure_quotient();
};

}  // namespace qsd
