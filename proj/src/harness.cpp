#include "swnet/harness.hpp"

#include "swnet/centrality.hpp"

#include <boost/math/distributions/students_t.hpp>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>
#include <tuple>

namespace swnet {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

template <class T>
T parse_scalar(const std::string& key, const std::string& text)
{
    T value{};
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last)
        throw std::invalid_argument("config: bad value '" + text + "' for " + key);
    return value;
}

template <class T>
std::vector<T> parse_list(const std::string& key, const std::string& text)
{
    std::vector<T> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(parse_scalar<T>(key, trim(item)));
    if (out.empty())
        throw std::invalid_argument("config: empty list for " + key);
    return out;
}

} // namespace

void ExperimentConfig::validate() const
{
    auto require = [](bool ok, const char* what) {
        if (!ok)
            throw std::invalid_argument(std::string("config: ") + what);
    };
    require(area_side > 0.0, "area_side must be positive");
    require(!density_list.empty(), "density_list must not be empty");
    for (double d : density_list)
        require(d > 0.0, "densities must be positive");
    require(r > 0.0, "r must be positive");
    require(r_b > 0.0, "r_b must be positive");
    require(!gradient_list.empty(), "gradient_list must not be empty");
    for (int g : gradient_list) {
        require(g >= 1, "gradients must be at least 1");
        require(g_max == 0 || g_max > g, "g_max must exceed every gradient");
    }
    require(M >= 2, "M must be at least 2");
    require(eps >= 0.0, "eps must be non-negative");
    require(replicates >= 1, "replicates must be at least 1");
    require(tol > 0.0, "tol must be positive");
}

ExperimentConfig parse_config(std::istream& is)
{
    ExperimentConfig c;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(line_no) + ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        if (key == "area_side")
            c.area_side = parse_scalar<double>(key, value);
        else if (key == "density_list")
            c.density_list = parse_list<double>(key, value);
        else if (key == "r")
            c.r = parse_scalar<double>(key, value);
        else if (key == "r_b")
            c.r_b = parse_scalar<double>(key, value);
        else if (key == "l_min")
            c.l_min = parse_scalar<std::size_t>(key, value);
        else if (key == "gradient_list")
            c.gradient_list = parse_list<int>(key, value);
        else if (key == "g_max")
            c.g_max = parse_scalar<int>(key, value);
        else if (key == "M")
            c.M = parse_scalar<int>(key, value);
        else if (key == "eps")
            c.eps = parse_scalar<double>(key, value);
        else if (key == "model")
            c.model = parse_antenna_model(value);
        else if (key == "replicates")
            c.replicates = parse_scalar<std::size_t>(key, value);
        else if (key == "base_seed")
            c.base_seed = parse_scalar<std::uint64_t>(key, value);
        else if (key == "tol")
            c.tol = parse_scalar<double>(key, value);
        else if (key == "max_rounds")
            c.max_rounds = parse_scalar<std::size_t>(key, value);
        else if (key == "hop_guard") {
            if (value == "within")
                c.hop_guard = HopGuard::within;
            else if (value == "strict")
                c.hop_guard = HopGuard::strict;
            else
                throw std::invalid_argument("config: hop_guard must be 'within' or 'strict'");
        } else if (key == "tie_break") {
            if (value == "lowest_id")
                c.tie_break = TieBreak::lowest_id;
            else if (value == "seeded_random")
                c.tie_break = TieBreak::seeded_random;
            else
                throw std::invalid_argument("config: tie_break must be 'lowest_id' or 'seeded_random'");
        } else
            throw std::invalid_argument("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
    c.validate();
    return c;
}

ExperimentConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open config file " + path.string());
    return parse_config(in);
}

std::optional<double> MetricsRecord::normalized_apl() const
{
    if (std::isfinite(apl_omni) && std::isfinite(apl_dir) && apl_omni > 0.0)
        return apl_dir / apl_omni;
    return std::nullopt;
}

std::optional<double> MetricsRecord::normalized_cc() const
{
    if (std::isfinite(cc_omni) && std::isfinite(cc_dir) && cc_omni > 0.0)
        return cc_dir / cc_omni;
    return std::nullopt;
}

void check_record(const MetricsRecord& rec)
{
    auto fraction = [](double f) { return f >= 0.0 && f <= 1.0; };
    std::string problem;
    if (!fraction(rec.giant_omni_frac) || !fraction(rec.gscc_frac) || !fraction(rec.gin_frac))
        problem = "fraction outside [0, 1]";
    else if (rec.gscc_frac > rec.gin_frac)
        problem = "GSCC larger than GIN";
    else if (rec.n_centroid > rec.n_nodes || rec.n_peripheral > rec.n_nodes)
        problem = "role count exceeds node count";
    if (!problem.empty())
        throw InvariantViolation("metrics invariant violated (" + problem + ") for seed " + std::to_string(rec.seed) +
                                 ", density " + format_number(rec.density) + ", gradient " +
                                 std::to_string(rec.gradient));
}

std::array<std::size_t, kHopBins> centroid_betweenness_histogram(const MixedGraph& omni, const RegionState& rs)
{
    std::array<std::size_t, kHopBins> hist{};
    for (const auto& members : regions(rs)) {
        const auto sub = induced_subgraph(omni, members);
        const auto best = argmax_nodes(sociocentric_betweenness(sub.graph));
        NodeId centroid_local = -1;
        for (NodeId i = 0; i < static_cast<NodeId>(members.size()); ++i)
            if (rs.nodes[members[i]].is_centroid())
                centroid_local = i;
        if (centroid_local < 0)
            throw std::logic_error("region without centroid");
        const Adjacency adj(sub.graph, Adjacency::Direction::forward);
        const auto dist = bfs_hops(adj, centroid_local);
        int nearest = kUnreachable;
        for (NodeId b : best)
            nearest = std::min(nearest, dist[b]);
        hist[static_cast<std::size_t>(std::min(nearest, static_cast<int>(kHopBins) - 1))]++;
    }
    return hist;
}

PipelineResult run_pipeline_detailed(const Placement& uniform, const ExperimentConfig& config, const RunKey& key,
                                     bool capture_trace)
{
    PipelineResult out;
    MetricsRecord& rec = out.record;
    rec.density = key.density;
    rec.gradient = key.gradient;
    rec.model = config.model;
    rec.replicate = key.replicate;
    rec.seed = key.seed;

    out.placement = thin(uniform, {config.r_b, config.l_min});
    rec.n_nodes = out.placement.size();
    if (rec.n_nodes == 0) {
        rec.apl_omni = rec.apl_dir = rec.cc_omni = rec.cc_dir = kNaN;
        return out;
    }

    out.omni = build_omni_graph(out.placement, config.r);

    std::ostringstream trace;
    OrganizationParams params;
    params.inhibition.gradient = key.gradient;
    params.inhibition.guard = config.hop_guard;
    params.inhibition.tie_break = config.tie_break;
    params.inhibition.seed = key.seed;
    params.inhibition.trace = capture_trace ? &trace : nullptr;
    if (capture_trace)
        trace << "round,node,head,hop,head_degree\n";
    params.eps = config.eps;
    params.tol = config.tol;
    params.max_rounds = config.max_rounds;
    params.g_max = config.g_max_for(key.gradient);
    params.seed = key.seed;
    out.organization = organize(out.omni, params);
    out.trace = trace.str();

    out.peripherals = identify_peripherals(out.organization.regions, out.omni);

    AntennaConfig antenna;
    antenna.model = config.model;
    antenna.max_elements = config.M;
    antenna.r = config.r;
    out.beams = commit_beams(out.omni, out.organization.regions, out.organization.rc, antenna, key.seed);
    out.directed = out.beams.graph;

    const double n = static_cast<double>(rec.n_nodes);
    auto apl = [](const MixedGraph& g) {
        try {
            return average_path_length(g).mean;
        } catch (const NoReachablePairs&) {
            return kNaN;
        }
    };
    rec.apl_omni = apl(out.omni);
    rec.apl_dir = apl(out.directed);
    rec.cc_omni = clustering_coefficient(out.omni);
    rec.cc_dir = clustering_coefficient(out.directed);
    const auto omni_components = weak_components(out.omni);
    rec.components_omni = omni_components.size();
    rec.components_dir = weak_components(out.directed).size();
    rec.giant_omni_frac = static_cast<double>(largest_component(omni_components).size()) / n;
    const auto core = gscc(out.directed);
    const auto in_component = gin(out.directed);
    if (!std::includes(in_component.begin(), in_component.end(), core.begin(), core.end()))
        throw InvariantViolation("GIN does not contain GSCC for seed " + std::to_string(key.seed));
    rec.gscc_frac = static_cast<double>(core.size()) / n;
    rec.gin_frac = static_cast<double>(in_component.size()) / n;
    rec.n_peripheral = out.peripherals.size();
    rec.n_centroid = out.organization.centroids.size();
    rec.centroid_betweenness_hops = centroid_betweenness_histogram(out.omni, out.organization.regions);
    check_record(rec);
    return out;
}

MetricsRecord run_pipeline(const Placement& uniform, const ExperimentConfig& config, const RunKey& key)
{
    return run_pipeline_detailed(uniform, config, key).record;
}

std::vector<MetricsRecord> run_experiment(const ExperimentConfig& config, const RunObserver& observer)
{
    config.validate();
    std::vector<RunKey> jobs;
    for (double density : config.density_list)
        for (int gradient : config.gradient_list)
            for (std::size_t k = 0; k < config.replicates; ++k)
                jobs.push_back({density, gradient, k, config.base_seed + k});

    std::vector<MetricsRecord> records(jobs.size());
    std::atomic<std::size_t> next{0};
    std::mutex observer_mutex;
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= jobs.size())
                return;
            try {
                const RunKey& key = jobs[i];
                const Placement uniform = place_uniform(key.density, config.area_side, key.seed);
                const bool want_trace = static_cast<bool>(observer.on_result);
                auto result = run_pipeline_detailed(uniform, config, key, want_trace);
                records[i] = result.record;
                if (observer.on_result) {
                    std::lock_guard lock(observer_mutex);
                    observer.on_result(result);
                }
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
                next = jobs.size();
                return;
            }
        }
    };

    std::size_t threads = observer.threads ? observer.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, jobs.size());
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < threads; ++t)
            pool.emplace_back(worker);
    }
    if (failure)
        std::rethrow_exception(failure);

    std::stable_sort(records.begin(), records.end(), [](const MetricsRecord& a, const MetricsRecord& b) {
        return std::tie(a.density, a.gradient, a.replicate) < std::tie(b.density, b.gradient, b.replicate);
    });
    return records;
}

std::string format_number(double value)
{
    if (std::isnan(value))
        return "nan";
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

const char* const kRecordsHeader =
    "density,gradient,model,replicate,seed,n_nodes,apl_omni,apl_dir,cc_omni,cc_dir,components_omni,"
    "components_dir,giant_omni_frac,gscc_frac,gin_frac,n_peripheral,n_centroid,cbw_hop0,cbw_hop1,cbw_hop2,"
    "cbw_hop3,cbw_hop4plus";

void write_records_csv(std::ostream& os, const std::vector<MetricsRecord>& records)
{
    os << kRecordsHeader << '\n';
    for (const auto& r : records) {
        os << format_number(r.density) << ',' << r.gradient << ',' << to_string(r.model) << ',' << r.replicate << ','
           << r.seed << ',' << r.n_nodes << ',' << format_number(r.apl_omni) << ',' << format_number(r.apl_dir) << ','
           << format_number(r.cc_omni) << ',' << format_number(r.cc_dir) << ',' << r.components_omni << ','
           << r.components_dir << ',' << format_number(r.giant_omni_frac) << ',' << format_number(r.gscc_frac) << ','
           << format_number(r.gin_frac) << ',' << r.n_peripheral << ',' << r.n_centroid;
        for (std::size_t h : r.centroid_betweenness_hops)
            os << ',' << h;
        os << '\n';
    }
}

Stat describe(const std::vector<double>& samples)
{
    Stat s;
    s.count = samples.size();
    if (samples.empty()) {
        s.mean = s.ci95 = kNaN;
        return s;
    }
    double sum = 0.0;
    for (double x : samples)
        sum += x;
    s.mean = sum / static_cast<double>(s.count);
    if (s.count < 2) {
        s.ci95 = kNaN;
        return s;
    }
    double ss = 0.0;
    for (double x : samples)
        ss += (x - s.mean) * (x - s.mean);
    const double sd = std::sqrt(ss / static_cast<double>(s.count - 1));
    const boost::math::students_t dist(static_cast<double>(s.count - 1));
    s.ci95 = boost::math::quantile(dist, 0.975) * sd / std::sqrt(static_cast<double>(s.count));
    return s;
}

const std::vector<std::string>& summary_metric_names()
{
    static const std::vector<std::string> names{
        "n_nodes",         "apl_omni",       "apl_dir",    "cc_omni",  "cc_dir",       "components_omni",
        "components_dir",  "giant_omni_frac", "gscc_frac", "gin_frac", "n_peripheral", "n_centroid",
        "normalized_apl",  "normalized_cc"};
    return names;
}

const Stat& SummaryRow::metric(const std::string& name) const
{
    for (const auto& [n, s] : metrics)
        if (n == name)
            return s;
    throw std::out_of_range("no summary metric named " + name);
}

std::vector<SummaryRow> summarize(const std::vector<MetricsRecord>& records)
{
    using Key = std::tuple<double, int, int>;
    std::map<Key, std::vector<const MetricsRecord*>> groups;
    for (const auto& r : records)
        groups[{r.density, r.gradient, static_cast<int>(r.model)}].push_back(&r);

    std::vector<SummaryRow> rows;
    for (const auto& [key, group] : groups) {
        SummaryRow row;
        row.density = std::get<0>(key);
        row.gradient = std::get<1>(key);
        row.model = static_cast<AntennaModel>(std::get<2>(key));
        row.replicates = group.size();

        std::map<std::string, std::vector<double>> samples;
        auto push = [&](const std::string& name, double v) {
            if (std::isfinite(v))
                samples[name].push_back(v);
        };
        std::array<std::size_t, kHopBins> hops{};
        for (const auto* r : group) {
            push("n_nodes", static_cast<double>(r->n_nodes));
            push("apl_omni", r->apl_omni);
            push("apl_dir", r->apl_dir);
            push("cc_omni", r->cc_omni);
            push("cc_dir", r->cc_dir);
            push("components_omni", static_cast<double>(r->components_omni));
            push("components_dir", static_cast<double>(r->components_dir));
            push("giant_omni_frac", r->giant_omni_frac);
            push("gscc_frac", r->gscc_frac);
            push("gin_frac", r->gin_frac);
            push("n_peripheral", static_cast<double>(r->n_peripheral));
            push("n_centroid", static_cast<double>(r->n_centroid));
            if (auto a = r->normalized_apl())
                push("normalized_apl", *a);
            if (auto c = r->normalized_cc())
                push("normalized_cc", *c);
            for (std::size_t b = 0; b < kHopBins; ++b)
                hops[b] += r->centroid_betweenness_hops[b];
        }
        for (const auto& name : summary_metric_names())
            row.metrics.emplace_back(name, describe(samples[name]));
        for (std::size_t h : hops)
            row.regions += h;
        if (row.regions > 0) {
            const double total = static_cast<double>(row.regions);
            row.centroid_within1_frac = static_cast<double>(hops[0] + hops[1]) / total;
            row.centroid_within4_frac = static_cast<double>(row.regions - hops[4]) / total;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_summary_csv(std::ostream& os, const std::vector<SummaryRow>& rows)
{
    os << "density,gradient,model,replicates";
    for (const auto& name : summary_metric_names())
        os << ',' << name << "_mean," << name << "_ci95";
    os << ",regions,centroid_within1_frac,centroid_within4_frac\n";
    for (const auto& row : rows) {
        os << format_number(row.density) << ',' << row.gradient << ',' << to_string(row.model) << ','
           << row.replicates;
        for (const auto& [name, s] : row.metrics)
            os << ',' << format_number(s.mean) << ',' << format_number(s.ci95);
        os << ',' << row.regions << ',' << format_number(row.centroid_within1_frac) << ','
           << format_number(row.centroid_within4_frac) << '\n';
    }
}

} // namespace swnet
