// msc: medoid silhouette clustering from the command line.
//
//   msc cluster --input data.csv --kind points --algorithm fastermsc --k 4
//   msc sweep   --input data.csv --kind points --k-max 12
//   msc bench   --sizes 500,1000 --ks 5,10,20 --algorithms pammedsil,fastmsc
//   msc eval    --a truth.csv --b predicted.csv
//
// Exit codes: 0 ok, 1 invalid configuration, 2 unreadable input, 3 matrix
// invariant violation.

#include "msc/msc.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

enum ExitCode : int { kOk = 0, kInvalidConfig = 1, kBadInput = 2, kBadMatrix = 3 };

struct InputOptions {
    std::string path;
    std::string kind = "points";
    std::string metric = "euclidean";
};

void add_input_options(CLI::App* cmd, InputOptions& in) {
    cmd->add_option("-i,--input", in.path, "CSV file: dissimilarity matrix or one point per row")->required();
    cmd->add_option("--kind", in.kind, "matrix | points")->check(CLI::IsMember({"matrix", "points"}));
    cmd->add_option("--metric", in.metric, "euclidean | sq-euclidean | manhattan (points only)")
        ->check(CLI::IsMember({"euclidean", "sq-euclidean", "manhattan"}));
}

msc::DissimilarityMatrix load_matrix(const InputOptions& in) {
    if (in.kind == "matrix") return msc::io::read_matrix_csv(in.path);
    const auto points = msc::io::read_points_csv(in.path);
    try {
        return msc::build_matrix(points, msc::parse_metric(in.metric));
    } catch (const std::invalid_argument& e) {
        throw msc::io::input_error(in.path + ": " + e.what());
    }
}

/// Writes to path, or stdout when path is empty or "-".
void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw msc::io::input_error("cannot write '" + path + "'");
    out << text;
}

std::vector<std::size_t> parse_size_list(const std::string& s) {
    std::vector<std::size_t> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        const auto comma = s.find(',', start);
        const auto token = s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        if (!token.empty()) out.push_back(std::stoul(token));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Medoid silhouette clustering (FastMSC / FasterMSC / DynMSC)"};
    app.require_subcommand(1);

    // cluster
    InputOptions cluster_in;
    std::string algorithm = "fastermsc", init = "random", format = "json", output, plot_path;
    std::size_t k = 0, restarts = 10, max_iter = 1000;
    std::uint64_t seed = 0;
    bool shuffle = false, with_asw = false, no_timing = false;
    auto* cluster = app.add_subcommand("cluster", "Cluster with a fixed number of medoids");
    add_input_options(cluster, cluster_in);
    cluster->add_option("-a,--algorithm", algorithm, "pamsil | pammedsil | fastmsc | fastermsc")
        ->check(CLI::IsMember({"pamsil", "pammedsil", "fastmsc", "fastermsc"}));
    cluster->add_option("-k,--k", k, "number of medoids")->required();
    cluster->add_option("--init", init, "random | build")->check(CLI::IsMember({"random", "build"}));
    cluster->add_option("--seed", seed, "base seed; restart r uses seed + r");
    cluster->add_option("--restarts", restarts, "number of restarts; the best result is kept");
    cluster->add_option("--max-iter", max_iter, "iteration cap per restart");
    cluster->add_flag("--shuffle", shuffle, "shuffle point order per restart");
    cluster->add_flag("--asw", with_asw, "also report the full silhouette width (O(n^2))");
    cluster->add_option("--plot-data", plot_path, "write silhouette plot rows (label,point,width) to this CSV");
    cluster->add_option("-o,--output", output, "output file (default stdout)");
    cluster->add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
    cluster->add_flag("--no-timing", no_timing, "omit wall time from the JSON output");

    // sweep
    InputOptions sweep_in;
    std::size_t k_min = 2, k_max = 0;
    std::uint64_t sweep_seed = 0;
    std::string sweep_output, sweep_format = "json";
    auto* sweep = app.add_subcommand("sweep", "Choose the number of clusters with DynMSC");
    add_input_options(sweep, sweep_in);
    sweep->add_option("--k-min", k_min, "smallest k (>= 2)");
    sweep->add_option("--k-max", k_max, "largest k (default min(ceil(sqrt(n)) + 10, n - 1))");
    sweep->add_option("--seed", sweep_seed, "seed of the random k_max initialization");
    sweep->add_option("-o,--output", sweep_output, "output file (default stdout)");
    sweep->add_option("--format", sweep_format, "json | csv (k,ams)")->check(CLI::IsMember({"json", "csv"}));

    // bench
    std::string sizes = "500,1000", ks = "5,10,20", algos = "pammedsil,fastmsc,fastermsc", bench_output;
    msc::BenchConfig bench_config;
    bool no_warmup = false;
    auto* bench = app.add_subcommand("bench", "Time algorithms over an (n, k) grid");
    bench->add_option("--sizes", sizes, "comma-separated n values");
    bench->add_option("--ks", ks, "comma-separated k values");
    bench->add_option("--algorithms", algos, "comma-separated algorithm names");
    bench->add_option("--repeats", bench_config.repeats, "timed runs per cell (median reported)");
    bench->add_flag("--no-warmup", no_warmup, "skip the untimed warmup run");
    bench->add_option("--budget", bench_config.cell_budget, "seconds per cell before it is marked timeout");
    bench->add_option("--seed", bench_config.seed, "data and initialization seed");
    bench->add_option("-o,--output", bench_output, "output CSV (default stdout)");

    // eval
    std::string labels_a, labels_b;
    auto* eval = app.add_subcommand("eval", "ARI and NMI between two label files");
    eval->add_option("--a", labels_a, "first label file")->required();
    eval->add_option("--b", labels_b, "second label file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kInvalidConfig;
    }

    try {
        if (*cluster) {
            const auto matrix = load_matrix(cluster_in);
            msc::RunSpec spec;
            spec.algorithm = msc::parse_algorithm(algorithm);
            spec.k = k;
            spec.init = msc::parse_init(init);
            spec.seed = seed;
            spec.restarts = restarts;
            spec.shuffle = shuffle;
            spec.compute_asw = with_asw;
            spec.options.max_iter = max_iter;
            if (with_asw && matrix.size() > 5000)
                std::cerr << "warning: --asw is O(n^2) and may be slow for n=" << matrix.size() << "\n";

            const auto t0 = std::chrono::steady_clock::now();
            const auto result = msc::best_of_restarts(matrix, spec);
            const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

            if (format == "json") {
                const auto j = msc::result_to_json(algorithm, result, no_timing ? std::nullopt : std::optional(secs));
                emit(output, j.dump(2) + "\n");
            } else {
                std::ostringstream csv;
                csv << "point,label,medoid\n";
                for (std::size_t o = 0; o < result.labels.size(); ++o)
                    csv << o << ',' << result.labels[o] << ',' << result.medoids[result.labels[o]] << '\n';
                emit(output, csv.str());
            }
            if (!plot_path.empty()) {
                const auto report = msc::medoid_silhouette(matrix, result.medoids);
                std::ostringstream csv;
                msc::write_plot_csv(csv, msc::silhouette_plot_data(report, result.labels));
                emit(plot_path, csv.str());
            }
        } else if (*sweep) {
            const auto matrix = load_matrix(sweep_in);
            const std::size_t upper = k_max ? k_max : msc::default_k_max(matrix.size());
            const auto result = msc::dynmsc(matrix, upper, k_min, sweep_seed);
            if (sweep_format == "json") {
                emit(sweep_output, msc::sweep_to_json(result).dump(2) + "\n");
            } else {
                std::ostringstream csv;
                msc::write_sweep_csv(csv, result);
                emit(sweep_output, csv.str());
            }
        } else if (*bench) {
            bench_config.sizes = parse_size_list(sizes);
            bench_config.ks = parse_size_list(ks);
            bench_config.algorithms.clear();
            std::size_t start = 0;
            while (start <= algos.size()) {
                const auto comma = algos.find(',', start);
                const auto name = algos.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
                if (!name.empty()) bench_config.algorithms.push_back(msc::parse_algorithm(name));
                if (comma == std::string::npos) break;
                start = comma + 1;
            }
            bench_config.warmup = !no_warmup;
            if (bench_config.sizes.empty() || bench_config.ks.empty() || bench_config.algorithms.empty())
                throw std::invalid_argument("bench grids must be non-empty");
            std::ostringstream csv;
            msc::write_bench_csv(csv, msc::run_bench(bench_config));
            emit(bench_output, csv.str());
        } else if (*eval) {
            const auto a = msc::io::read_labels(labels_a);
            const auto b = msc::io::read_labels(labels_b);
            if (a.size() != b.size()) throw std::invalid_argument("label files differ in length");
            msc::ordered_json j;
            j["ari"] = msc::ari(a, b);
            j["nmi"] = msc::nmi(a, b);
            std::cout << j.dump(2) << "\n";
        }
    } catch (const msc::io::input_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadInput;
    } catch (const msc::matrix_error& e) {
        std::cerr << "error: invalid dissimilarity matrix: " << e.what() << "\n";
        return kBadMatrix;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInvalidConfig;
    }
    return kOk;
}
