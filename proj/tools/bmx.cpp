// bmx - train, stimulate and measure B-matrix associative memories from
// the command line.
//
// Subcommands:
//   train       build weight matrix, geometry and active-site map from a
//               pattern file
//   retrieve    recall a memory from clamped sites on trained artifacts
//   experiment  seeded Monte-Carlo capacity sweep, CSV output
//   complexity  exact sweep-cost accounting (classical vs active sites)
//   sitemap     SVG scatter of the active-site spread
//   replay      re-run a command from its manifest
//
// Every artifact-producing run writes a manifest recording the resolved
// configuration; outputs are pure functions of it (timestamps aside).
//
// Exit codes: 0 ok, 2 parse error, 3 validation error, 4 domain error,
// 5 I/O error.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <ctime>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include "bmatrix/bmatrix.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kToolVersion = "0.1.0";

constexpr int kExitParse = 2;
constexpr int kExitValidation = 3;
constexpr int kExitDomain = 4;
constexpr int kExitIo = 5;

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_manifest(const fs::path& path, const std::string& command, const json& args) {
    json manifest;
    manifest["tool"] = "bmx";
    manifest["version"] = kToolVersion;
    manifest["created_utc"] = utc_timestamp();
    manifest["command"] = command;
    manifest["args"] = args;
    bmx::io::write_file(path.string(), manifest.dump(2) + "\n");
}

std::vector<std::size_t> parse_size_list(const std::string& text, const char* what) {
    std::vector<std::size_t> out;
    for (const auto& field : bmx::io::split_fields(text)) {
        if (field.empty()) {
            throw std::invalid_argument(std::string(what) + ": empty list entry");
        }
        out.push_back(bmx::io::parse_int<std::size_t>(field, 1));
    }
    if (out.empty()) {
        throw std::invalid_argument(std::string(what) + ": empty list");
    }
    return out;
}

std::vector<bmx::Spin> parse_values(std::string text) {
    text.erase(std::remove(text.begin(), text.end(), ','), text.end());
    const bmx::BipolarVector v = bmx::BipolarVector::from_bits(text);
    return v.values();
}

bmx::IndependentCombine parse_combine(const std::string& name) {
    if (name == "potentials") return bmx::IndependentCombine::sum_potentials;
    if (name == "votes") return bmx::IndependentCombine::majority_vote;
    throw std::invalid_argument("unknown combine mode '" + name + "'");
}

// ---------------------------------------------------------------------------
// train

struct TrainArgs {
    std::string memories_file;
    std::string geometry = "uniform2d";
    std::uint64_t seed = 0;
    std::size_t r = 4;
    std::string out_dir;
};

json to_json(const TrainArgs& a) {
    return json{{"memories_file", a.memories_file},
                {"geometry", a.geometry},
                {"seed", a.seed},
                {"r", a.r},
                {"out_dir", a.out_dir}};
}

TrainArgs train_from_json(const json& j) {
    TrainArgs a;
    a.memories_file = j.at("memories_file").get<std::string>();
    a.geometry = j.at("geometry").get<std::string>();
    a.seed = j.at("seed").get<std::uint64_t>();
    a.r = j.at("r").get<std::size_t>();
    a.out_dir = j.at("out_dir").get<std::string>();
    return a;
}

int cmd_train(const TrainArgs& args) {
    std::ifstream in = bmx::io::open_input(args.memories_file);
    const bmx::MemorySet memories = bmx::io::read_patterns(in);
    const bmx::GeometryKind geometry{bmx::geometry_from_name(args.geometry), args.seed};
    const bmx::ProximityModel prox = bmx::build_proximity(memories.width(), geometry);
    const bmx::WeightMatrix t = bmx::train_hebbian(memories);
    const bmx::ActiveSiteMap map = bmx::identify_sites(memories, args.r);

    const fs::path dir(args.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        throw bmx::io_error("cannot create output directory '" + args.out_dir + "'");
    }

    std::ostringstream mem_out, weights_out, pos_out, sites_out;
    bmx::io::write_patterns(mem_out, memories);
    bmx::io::write_weights_csv(weights_out, t);
    bmx::io::write_positions_csv(pos_out, prox);
    bmx::io::write_sites_csv(sites_out, map);
    bmx::io::write_file((dir / "memories.txt").string(), mem_out.str());
    bmx::io::write_file((dir / "weights.csv").string(), weights_out.str());
    bmx::io::write_file((dir / "positions.csv").string(), pos_out.str());
    bmx::io::write_file((dir / "sites.csv").string(), sites_out.str());
    write_manifest(dir / "manifest.json", "train", to_json(args));

    std::cout << "trained " << memories.count() << " memories over " << memories.width()
              << " neurons (" << args.geometry << " geometry, r=" << args.r << ")\n"
              << "artifacts written to " << dir.string() << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// retrieve

struct RetrieveArgs {
    std::string artifacts_dir;
    std::string sites;
    std::string values;
    std::string strategy = "classical";
    std::uint64_t seed = 0;
    std::string combine = "potentials";
    std::string out_file;  // optional CSV
};

json to_json(const RetrieveArgs& a) {
    return json{{"artifacts_dir", a.artifacts_dir}, {"sites", a.sites},
                {"values", a.values},               {"strategy", a.strategy},
                {"seed", a.seed},                   {"combine", a.combine},
                {"out_file", a.out_file}};
}

RetrieveArgs retrieve_from_json(const json& j) {
    RetrieveArgs a;
    a.artifacts_dir = j.at("artifacts_dir").get<std::string>();
    a.sites = j.at("sites").get<std::string>();
    a.values = j.at("values").get<std::string>();
    a.strategy = j.at("strategy").get<std::string>();
    a.seed = j.at("seed").get<std::uint64_t>();
    a.combine = j.at("combine").get<std::string>();
    a.out_file = j.at("out_file").get<std::string>();
    return a;
}

template <typename T>
std::string join(const std::vector<T>& values, char sep) {
    std::ostringstream out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out << sep;
        out << values[i];
    }
    return out.str();
}

int cmd_retrieve(const RetrieveArgs& args) {
    const fs::path dir(args.artifacts_dir);
    std::ifstream wf = bmx::io::open_input((dir / "weights.csv").string());
    const bmx::WeightMatrix t = bmx::io::read_weights_csv(wf);
    std::ifstream pf = bmx::io::open_input((dir / "positions.csv").string());
    const bmx::ProximityModel prox = bmx::io::read_positions_csv(pf);
    std::ifstream mf = bmx::io::open_input((dir / "memories.txt").string());
    const bmx::MemorySet memories = bmx::io::read_patterns(mf);

    const std::vector<std::size_t> sites = parse_size_list(args.sites, "--sites");
    const std::vector<bmx::Spin> values = parse_values(args.values);
    const bmx::StrategyKind kind = bmx::strategy_from_name(args.strategy);

    bmx::RetrievalResult res;
    switch (kind) {
        case bmx::StrategyKind::classical:
            if (sites.size() != 1) {
                throw std::invalid_argument("classical clamps exactly one site");
            }
            if (values.size() != 1) {
                throw std::invalid_argument("--sites/--values length mismatch");
            }
            res = bmx::retrieve_classical(t, prox, sites[0], values[0], memories);
            break;
        case bmx::StrategyKind::arbitrary:
        case bmx::StrategyKind::averaged:
            res = bmx::retrieve_multi(t, prox, sites, values, bmx::Strategy{kind, args.seed},
                                      memories);
            break;
        case bmx::StrategyKind::independent:
            res = bmx::retrieve_independent(t, prox, sites, values, memories,
                                            parse_combine(args.combine));
            break;
    }

    std::cout << "output   " << res.output.to_bits() << "\n";
    std::cout << "matched  " << (res.matched ? std::to_string(*res.matched) : std::string("none"))
              << "\n";
    std::cout << "order    " << join(res.order.order, ' ') << "\n";

    if (!args.out_file.empty()) {
        std::ostringstream csv;
        csv << "strategy,sites,values,output,matched,order\n";
        csv << bmx::strategy_name(kind) << ',' << join(res.clamped_sites, ';') << ',';
        for (std::size_t s : res.clamped_sites) {
            // values column mirrors the clamp aligned to the sorted prefix
            csv << (res.output[s] > 0 ? '1' : '0');
        }
        csv << ',' << res.output.to_bits() << ','
            << (res.matched ? std::to_string(*res.matched) : std::string("none")) << ','
            << join(res.order.order, ';') << '\n';
        bmx::io::write_file(args.out_file, csv.str());
        write_manifest(args.out_file + ".manifest.json", "retrieve", to_json(args));
    }
    return 0;
}

// ---------------------------------------------------------------------------
// experiment

struct ExperimentArgs {
    std::string n_list = "12,16,20,24";
    std::size_t m = 8;
    std::string m_list;  // optional sweep over m
    std::size_t r = 4;
    std::size_t trials = 250;
    std::string strategies = "arbitrary,averaged,independent";
    std::string geometry = "uniform2d";
    std::uint64_t seed = 0;
    std::string combine = "potentials";
    std::string out_file;
};

json to_json(const ExperimentArgs& a) {
    return json{{"n_list", a.n_list},   {"m", a.m},
                {"m_list", a.m_list},   {"r", a.r},
                {"trials", a.trials},   {"strategies", a.strategies},
                {"geometry", a.geometry}, {"seed", a.seed},
                {"combine", a.combine}, {"out_file", a.out_file}};
}

ExperimentArgs experiment_from_json(const json& j) {
    ExperimentArgs a;
    a.n_list = j.at("n_list").get<std::string>();
    a.m = j.at("m").get<std::size_t>();
    a.m_list = j.at("m_list").get<std::string>();
    a.r = j.at("r").get<std::size_t>();
    a.trials = j.at("trials").get<std::size_t>();
    a.strategies = j.at("strategies").get<std::string>();
    a.geometry = j.at("geometry").get<std::string>();
    a.seed = j.at("seed").get<std::uint64_t>();
    a.combine = j.at("combine").get<std::string>();
    a.out_file = j.at("out_file").get<std::string>();
    return a;
}

int cmd_experiment(const ExperimentArgs& args) {
    const std::vector<std::size_t> n_values = parse_size_list(args.n_list, "--n-list");
    const std::vector<std::size_t> m_values =
        args.m_list.empty() ? std::vector<std::size_t>{args.m}
                            : parse_size_list(args.m_list, "--m-list");
    std::vector<bmx::StrategyKind> strategies;
    for (const auto& name : bmx::io::split_fields(args.strategies)) {
        strategies.push_back(bmx::strategy_from_name(name));
    }

    const std::size_t min_n = *std::min_element(n_values.begin(), n_values.end());
    if (args.r < 1 || args.r > min_n) {
        throw std::domain_error("--r must satisfy 1 <= r <= min(n-list)");
    }

    bmx::ExperimentConfig base;
    base.r = args.r;
    base.trials = args.trials;
    base.geometry.variant = bmx::geometry_from_name(args.geometry);
    base.master_seed = args.seed;
    base.combine = parse_combine(args.combine);

    std::vector<bmx::SweepRow> rows;
    for (std::size_t m : m_values) {
        base.m = m;
        auto part = bmx::run_sweep(base, n_values, strategies);
        rows.insert(rows.end(), part.begin(), part.end());
    }

    std::cout << std::left << std::setw(12) << "strategy" << std::right << std::setw(5) << "n"
              << std::setw(5) << "m" << std::setw(4) << "r" << std::setw(8) << "trials"
              << std::setw(10) << "mean" << std::setw(10) << "stddev" << std::setw(8) << "strict"
              << std::setw(10) << "anymatch" << "\n";
    std::cout << std::string(72, '-') << "\n";
    for (const auto& row : rows) {
        std::cout << std::left << std::setw(12) << bmx::strategy_name(row.strategy) << std::right
                  << std::setw(5) << row.n << std::setw(5) << row.m << std::setw(4) << row.r
                  << std::setw(8) << row.trials << std::fixed << std::setprecision(3)
                  << std::setw(10) << row.stats.mean_success << std::setw(10) << row.stats.stddev
                  << std::setw(8) << std::setprecision(2) << row.stats.strict_site_rate
                  << std::setw(10) << std::setprecision(3) << row.stats.mean_any_match
                  << std::defaultfloat << "\n";
    }

    if (!args.out_file.empty()) {
        std::ostringstream csv;
        bmx::io::write_experiments_csv(csv, rows);
        bmx::io::write_file(args.out_file, csv.str());
        write_manifest(args.out_file + ".manifest.json", "experiment", to_json(args));
        std::cout << "wrote " << rows.size() << " rows to " << args.out_file << "\n";
    }
    return 0;
}

// ---------------------------------------------------------------------------
// complexity

struct ComplexityArgs {
    unsigned n = 0;
    unsigned r = 0;
    std::string out_file;
};

json to_json(const ComplexityArgs& a) {
    return json{{"n", a.n}, {"r", a.r}, {"out_file", a.out_file}};
}

ComplexityArgs complexity_from_json(const json& j) {
    ComplexityArgs a;
    a.n = j.at("n").get<unsigned>();
    a.r = j.at("r").get<unsigned>();
    a.out_file = j.at("out_file").get<std::string>();
    return a;
}

int cmd_complexity(const ComplexityArgs& args) {
    const bmx::CostReport report = bmx::cost_report(args.n, args.r);
    std::cout << std::left << std::setw(15) << "n" << report.n << "\n"
              << std::left << std::setw(15) << "r" << report.r << "\n"
              << std::left << std::setw(15) << "classical_ops" << report.classical_ops.str()
              << "\n"
              << std::left << std::setw(15) << "active_ops" << report.active_ops.str() << "\n"
              << std::left << std::setw(15) << "ratio" << bmx::io::format_double(report.ratio)
              << "\n";
    if (!args.out_file.empty()) {
        std::ostringstream csv;
        bmx::io::write_cost_csv(csv, report);
        bmx::io::write_file(args.out_file, csv.str());
        write_manifest(args.out_file + ".manifest.json", "complexity", to_json(args));
    }
    return 0;
}

// ---------------------------------------------------------------------------
// sitemap

struct SitemapArgs {
    std::string artifacts_dir;
    std::string out_file;
};

json to_json(const SitemapArgs& a) {
    return json{{"artifacts_dir", a.artifacts_dir}, {"out_file", a.out_file}};
}

SitemapArgs sitemap_from_json(const json& j) {
    SitemapArgs a;
    a.artifacts_dir = j.at("artifacts_dir").get<std::string>();
    a.out_file = j.at("out_file").get<std::string>();
    return a;
}

int cmd_sitemap(const SitemapArgs& args) {
    const fs::path dir(args.artifacts_dir);
    std::ifstream pf = bmx::io::open_input((dir / "positions.csv").string());
    const bmx::ProximityModel prox = bmx::io::read_positions_csv(pf);
    std::ifstream sf = bmx::io::open_input((dir / "sites.csv").string());
    const bmx::ActiveSiteMap map = bmx::io::read_sites_csv(sf);

    const std::string svg = bmx::render_site_map_svg(prox, map);
    bmx::io::write_file(args.out_file, svg);
    write_manifest(args.out_file + ".manifest.json", "sitemap", to_json(args));
    std::cout << "wrote " << args.out_file << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// replay

int dispatch_manifest(const json& manifest, const std::string& out_override) {
    const std::string command = manifest.at("command").get<std::string>();
    const json& args = manifest.at("args");
    if (command == "train") {
        TrainArgs a = train_from_json(args);
        if (!out_override.empty()) a.out_dir = out_override;
        return cmd_train(a);
    }
    if (command == "retrieve") {
        RetrieveArgs a = retrieve_from_json(args);
        if (!out_override.empty()) a.out_file = out_override;
        return cmd_retrieve(a);
    }
    if (command == "experiment") {
        ExperimentArgs a = experiment_from_json(args);
        if (!out_override.empty()) a.out_file = out_override;
        return cmd_experiment(a);
    }
    if (command == "complexity") {
        ComplexityArgs a = complexity_from_json(args);
        if (!out_override.empty()) a.out_file = out_override;
        return cmd_complexity(a);
    }
    if (command == "sitemap") {
        SitemapArgs a = sitemap_from_json(args);
        if (!out_override.empty()) a.out_file = out_override;
        return cmd_sitemap(a);
    }
    throw std::invalid_argument("manifest names unknown command '" + command + "'");
}

int cmd_replay(const std::string& manifest_path, const std::string& out_override) {
    json manifest;
    try {
        manifest = json::parse(bmx::io::read_file(manifest_path));
    } catch (const json::parse_error& e) {
        throw bmx::parse_error(1, std::string("manifest: ") + e.what());
    }
    return dispatch_manifest(manifest, out_override);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"B-matrix associative memory with active-site stimulation"};
    app.set_version_flag("--version", kToolVersion);
    app.require_subcommand(1);

    TrainArgs train_args;
    auto* train = app.add_subcommand("train", "train a network from a pattern file");
    train->add_option("memories", train_args.memories_file, "pattern file, one '1'/'0' row per memory")
        ->required();
    train->add_option("--geometry", train_args.geometry, "line|grid2d|uniform2d|uniform3d");
    train->add_option("--seed", train_args.seed, "geometry seed (default 0)");
    train->add_option("--r", train_args.r, "active-site budget per memory");
    train->add_option("--out", train_args.out_dir, "artifact output directory")->required();

    RetrieveArgs retrieve_args;
    auto* retrieve = app.add_subcommand("retrieve", "recall from clamped sites");
    retrieve->add_option("--artifacts", retrieve_args.artifacts_dir, "directory written by train")
        ->required();
    retrieve->add_option("--sites", retrieve_args.sites, "comma-separated neuron indices")
        ->required();
    retrieve->add_option("--values", retrieve_args.values, "clamp bits, e.g. 10 or 1,0")
        ->required();
    retrieve->add_option("--strategy", retrieve_args.strategy,
                         "classical|arbitrary|averaged|independent");
    retrieve->add_option("--seed", retrieve_args.seed, "seed for the arbitrary order");
    retrieve->add_option("--combine", retrieve_args.combine,
                         "independent combination: potentials|votes");
    retrieve->add_option("--out", retrieve_args.out_file, "optional result CSV");

    ExperimentArgs experiment_args;
    auto* experiment = app.add_subcommand("experiment", "Monte-Carlo capacity sweep");
    experiment->add_option("--n-list", experiment_args.n_list, "network sizes, e.g. 12,16,20,24");
    experiment->add_option("--m", experiment_args.m, "memories per network");
    experiment->add_option("--m-list", experiment_args.m_list,
                           "sweep memory counts (overrides --m)");
    experiment->add_option("--r", experiment_args.r, "active-site budget per memory");
    experiment->add_option("--trials", experiment_args.trials, "trials per cell");
    experiment->add_option("--strategies", experiment_args.strategies,
                           "comma-separated strategy list");
    experiment->add_option("--geometry", experiment_args.geometry,
                           "line|grid2d|uniform2d|uniform3d");
    experiment->add_option("--seed", experiment_args.seed, "master seed (default 0)");
    experiment->add_option("--combine", experiment_args.combine,
                           "independent combination: potentials|votes");
    experiment->add_option("--out", experiment_args.out_file, "sweep CSV path");

    ComplexityArgs complexity_args;
    auto* complexity = app.add_subcommand("complexity", "exact retrieval-sweep cost report");
    complexity->add_option("--n", complexity_args.n, "network size")->required();
    complexity->add_option("--r", complexity_args.r, "fragment size")->required();
    complexity->add_option("--out", complexity_args.out_file, "optional cost CSV");

    SitemapArgs sitemap_args;
    auto* sitemap = app.add_subcommand("sitemap", "render the active-site spread as SVG");
    sitemap->add_option("--artifacts", sitemap_args.artifacts_dir, "directory written by train")
        ->required();
    sitemap->add_option("--out", sitemap_args.out_file, "SVG path")->required();

    std::string replay_manifest, replay_out;
    auto* replay = app.add_subcommand("replay", "re-run a command from its manifest");
    replay->add_option("manifest", replay_manifest, "manifest.json path")->required();
    replay->add_option("--out", replay_out, "redirect the output path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (train->parsed()) return cmd_train(train_args);
        if (retrieve->parsed()) return cmd_retrieve(retrieve_args);
        if (experiment->parsed()) return cmd_experiment(experiment_args);
        if (complexity->parsed()) return cmd_complexity(complexity_args);
        if (sitemap->parsed()) return cmd_sitemap(sitemap_args);
        if (replay->parsed()) return cmd_replay(replay_manifest, replay_out);
    } catch (const bmx::parse_error& e) {
        std::cerr << "bmx: parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const bmx::io_error& e) {
        std::cerr << "bmx: i/o error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::domain_error& e) {
        std::cerr << "bmx: domain error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::invalid_argument& e) {
        std::cerr << "bmx: validation error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::out_of_range& e) {
        std::cerr << "bmx: validation error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "bmx: error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
