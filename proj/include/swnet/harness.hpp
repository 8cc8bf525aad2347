#pragma once

#include "swnet/beamforming.hpp"
#include "swnet/graph.hpp"
#include "swnet/self_organization.hpp"
#include "swnet/topology.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace swnet {

struct ExperimentConfig {
    double area_side = 500.0;
    std::vector<double> density_list{2.5e-3};
    double r = 30.0;
    double r_b = 30.0;
    std::size_t l_min = 5;
    std::vector<int> gradient_list{3};
    int g_max = 0; // 0 selects 3 * gradient for each run
    int M = 6;
    double eps = 0.05;
    AntennaModel model = AntennaModel::sector;
    std::size_t replicates = 50;
    std::uint64_t base_seed = 1;
    double tol = 1e-9;
    std::size_t max_rounds = 0; // 0 selects 10 * |region|
    HopGuard hop_guard = HopGuard::within;
    TieBreak tie_break = TieBreak::lowest_id;

    // Throws std::invalid_argument describing the first violated constraint.
    void validate() const;
    int g_max_for(int gradient) const { return g_max > 0 ? g_max : 3 * gradient; }
};

// Line-oriented "key = value" pairs named after the ExperimentConfig fields.
// Lists are comma separated; '#' starts a comment. Unknown keys are an error.
ExperimentConfig parse_config(std::istream& is);
ExperimentConfig load_config(const std::filesystem::path& path);

inline constexpr std::size_t kHopBins = 5; // 0, 1, 2, 3, 4+

struct MetricsRecord {
    double density = 0.0;
    int gradient = 0;
    AntennaModel model = AntennaModel::sector;
    std::size_t replicate = 0;
    std::uint64_t seed = 0;
    std::size_t n_nodes = 0;
    double apl_omni = 0.0; // NaN when no pair is connected
    double apl_dir = 0.0;
    double cc_omni = 0.0;
    double cc_dir = 0.0;
    std::size_t components_omni = 0;
    std::size_t components_dir = 0;
    double giant_omni_frac = 0.0;
    double gscc_frac = 0.0;
    double gin_frac = 0.0;
    std::size_t n_peripheral = 0;
    std::size_t n_centroid = 0;
    // Per region: hops from the centroid to the nearest maximum-betweenness node.
    std::array<std::size_t, kHopBins> centroid_betweenness_hops{};

    std::optional<double> normalized_apl() const;
    std::optional<double> normalized_cc() const;

    friend bool operator==(const MetricsRecord&, const MetricsRecord&) = default;
};

class InvariantViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Throws InvariantViolation (message names the seed) if a record breaks its invariants.
void check_record(const MetricsRecord& rec);

struct RunKey {
    double density = 0.0;
    int gradient = 3;
    std::size_t replicate = 0;
    std::uint64_t seed = 0;
};

struct PipelineResult {
    MetricsRecord record;
    Placement placement; // after thinning
    MixedGraph omni;
    MixedGraph directed;
    Organization organization;
    std::vector<NodeId> peripherals;
    CommitResult beams;
    std::string trace; // region formation round log, when requested
};

// thin -> omni graph -> regions -> centroids -> RC tables -> peripherals ->
// beams -> metrics on the omni and the beamformed graphs.
PipelineResult run_pipeline_detailed(const Placement& uniform, const ExperimentConfig& config, const RunKey& key,
                                     bool capture_trace = false);
MetricsRecord run_pipeline(const Placement& uniform, const ExperimentConfig& config, const RunKey& key);

// Histogram of centroid-to-max-betweenness hop distances over the regions.
std::array<std::size_t, kHopBins> centroid_betweenness_histogram(const MixedGraph& omni, const RegionState& rs);

struct RunObserver {
    // Called once per finished run (possibly from worker threads, serialized).
    std::function<void(const PipelineResult&)> on_result;
    std::size_t threads = 0; // 0 selects hardware concurrency
};

// Every density x gradient x replicate cell; replicate k uses seed base_seed + k.
// Records come back sorted by (density, gradient, replicate).
std::vector<MetricsRecord> run_experiment(const ExperimentConfig& config, const RunObserver& observer = {});

void write_records_csv(std::ostream& os, const std::vector<MetricsRecord>& records);
extern const char* const kRecordsHeader;

struct Stat {
    double mean = 0.0;
    double ci95 = 0.0; // Student-t half-width; NaN with fewer than two samples
    std::size_t count = 0;
};

Stat describe(const std::vector<double>& samples);

struct SummaryRow {
    double density = 0.0;
    int gradient = 0;
    AntennaModel model = AntennaModel::sector;
    std::size_t replicates = 0;
    std::vector<std::pair<std::string, Stat>> metrics; // fixed order, see summary_metric_names()
    std::size_t regions = 0;
    double centroid_within1_frac = 0.0;
    double centroid_within4_frac = 0.0;

    const Stat& metric(const std::string& name) const;
};

const std::vector<std::string>& summary_metric_names();

std::vector<SummaryRow> summarize(const std::vector<MetricsRecord>& records);
void write_summary_csv(std::ostream& os, const std::vector<SummaryRow>& rows);

// Shortest round-trip decimal form; "nan" for NaN.
std::string format_number(double value);

} // namespace swnet
