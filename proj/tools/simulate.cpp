#include "swnet/harness.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;
using namespace swnet;

namespace {

std::string run_dir_name(const MetricsRecord& r)
{
    return "d" + format_number(r.density) + "_g" + std::to_string(r.gradient) + "_" + to_string(r.model) + "_r" +
           std::to_string(r.replicate);
}

template <class Fn>
void write_file(const fs::path& path, Fn&& fn)
{
    std::ofstream out(path);
    if (!out) {
        std::cerr << "warning: cannot write " << path << "\n";
        return;
    }
    fn(out);
    if (!out)
        std::cerr << "warning: write failed for " << path << "\n";
}

void dump_trace(const fs::path& root, const PipelineResult& res)
{
    const fs::path dir = root / "trace" / run_dir_name(res.record);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        std::cerr << "warning: cannot create " << dir << ": " << ec.message() << "\n";
        return;
    }
    write_file(dir / "placement.csv", [&](std::ostream& os) { write_placement_csv(os, res.placement); });
    write_file(dir / "omni.edges", [&](std::ostream& os) { write_edge_list(os, res.omni); });
    write_file(dir / "directed.edges", [&](std::ostream& os) { write_edge_list(os, res.directed); });
    write_file(dir / "regions.csv", [&](std::ostream& os) { write_region_csv(os, res.organization.regions); });
    write_file(dir / "beams.csv", [&](std::ostream& os) { write_decisions_csv(os, res.beams.decisions); });
    write_file(dir / "rounds.csv", [&](std::ostream& os) { os << res.trace; });
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Directional small-world ad hoc network simulator"};
    std::string config_path;
    std::string out_dir;
    std::string model;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> replicates;
    bool trace = false;
    app.add_option("--config", config_path, "experiment config file")->required()->check(CLI::ExistingFile);
    app.add_option("--out", out_dir, "output directory")->required();
    app.add_option("--model", model, "antenna model")->check(CLI::IsMember({"sector", "ula"}));
    app.add_option("--seed", seed, "base seed (overrides config)");
    app.add_option("--replicates", replicates, "replicates per cell (overrides config)");
    app.add_flag("--trace", trace, "write per-run graphs, regions, beams and round logs");
    CLI11_PARSE(app, argc, argv);

    try {
        ExperimentConfig cfg = load_config(config_path);
        if (!model.empty())
            cfg.model = parse_antenna_model(model);
        if (seed)
            cfg.base_seed = *seed;
        if (replicates)
            cfg.replicates = *replicates;
        cfg.validate();

        const fs::path out(out_dir);
        fs::create_directories(out);

        RunObserver observer;
        if (trace)
            observer.on_result = [&](const PipelineResult& res) { dump_trace(out, res); };

        const auto records = run_experiment(cfg, observer);
        {
            std::ofstream os(out / "records.csv");
            if (!os)
                throw std::runtime_error("cannot write records.csv");
            write_records_csv(os, records);
        }
        {
            std::ofstream os(out / "summary.csv");
            if (!os)
                throw std::runtime_error("cannot write summary.csv");
            write_summary_csv(os, summarize(records));
        }
        std::cout << records.size() << " runs written to " << out.string() << "\n";
    } catch (const InvariantViolation& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
