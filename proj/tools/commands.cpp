#include "commands.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "pathchain/chains.hpp"
#include "pathchain/embedding.hpp"
#include "pathchain/errors.hpp"
#include "pathchain/geometry.hpp"
#include "pathchain/io.hpp"
#include "pathchain/ising.hpp"
#include "pathchain/maxent.hpp"
#include "pathchain/targets.hpp"

namespace pathchain::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct DataOptions {
    std::string input;
    std::vector<std::string> exclude_columns;
    std::string label_column;
};

struct TargetOptions {
    std::string kind = "uniform";
    std::string target_file;
    std::string energy_column;
    double beta_old = 0.0;
    double beta_new = 0.0;
};

struct EmbedConfig {
    DataOptions data;
    std::string kernel = "gaussian";
    double epsilon = 0.0;  // 0: derive from percentile
    double percentile = 10.0;
    double alpha = 0.0;
    int k = 5;
    double beta = 8.0;
    std::string chain = "rnmc";
    TargetOptions target;
    std::string prior_q;
    std::string prior_p;
    int m = 2;
    double tol = kDefaultSolverTol;
    double audit_tol = kDefaultAuditTol;
    int max_iter = kDefaultSinkhornMaxIter;
    std::uint64_t seed = 0;
    std::string out_dir = ".";
    bool write_chain = false;
    bool target_given = false;  // set after parsing
};

struct ValidateConfig {
    std::string q_path;
    std::string p_path;
    double tol = kDefaultAuditTol;
};

struct IsingConfig {
    MetropolisOptions sampler;
    std::string output;
};

struct TargetConfig {
    DataOptions data;
    TargetOptions target;
    std::string output;
};

// Input table plus the numeric columns left after exclusion. Excluded columns
// stay reachable for target construction (e.g. an energy column).
struct LoadedData {
    io::Table table;
    PointCloud cloud;
};

LoadedData load(const DataOptions& o) {
    io::ReadOptions ro;
    if (!o.label_column.empty()) ro.label_column = o.label_column;
    io::Table table = io::read_table(fs::path(o.input), ro);
    std::vector<Eigen::Index> keep;
    for (std::size_t j = 0; j < table.columns.size(); ++j)
        if (std::find(o.exclude_columns.begin(), o.exclude_columns.end(), table.columns[j]) == o.exclude_columns.end())
            keep.push_back(static_cast<Eigen::Index>(j));
    for (const auto& name : o.exclude_columns)
        if (std::find(table.columns.begin(), table.columns.end(), name) == table.columns.end())
            throw InputError("--exclude-columns: no column named '" + name + "'");
    Matrix values(table.values.rows(), static_cast<Eigen::Index>(keep.size()));
    for (std::size_t j = 0; j < keep.size(); ++j) values.col(static_cast<Eigen::Index>(j)) = table.values.col(keep[j]);
    PointCloud cloud(std::move(values), table.ids, table.labels);
    return {std::move(table), std::move(cloud)};
}

StationaryTarget build_target(const TargetOptions& o, const LoadedData& data) {
    const Eigen::Index n = data.cloud.size();
    if (o.kind == "uniform") return uniform_target(n);
    if (o.kind == "energy-bias") {
        if (o.energy_column.empty()) throw ParameterError("energy-bias target needs --energy-column");
        return energy_bias_target(io::column(data.table, o.energy_column), o.beta_new, o.beta_old);
    }
    if (o.kind == "entropy") return entropy_logistic_target(data.cloud.points());
    if (o.kind == "custom") {
        if (o.target_file.empty()) throw ParameterError("custom target needs --target-file");
        return io::read_target(fs::path(o.target_file), &data.cloud.ids());
    }
    throw ParameterError("unknown target kind '" + o.kind + "'");
}

void write_json(const fs::path& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write '" + path.string() + "'");
    out << j.dump(2) << '\n';
}

void add_data_options(CLI::App* cmd, DataOptions& o) {
    cmd->add_option("-i,--input", o.input, "Point cloud CSV (id column first)")->required();
    cmd->add_option("--exclude-columns", o.exclude_columns, "Columns left out of the geometry")->delimiter(',');
    cmd->add_option("--label-column", o.label_column, "Non-numeric column kept as labels");
}

void add_target_options(CLI::App* cmd, TargetOptions& o) {
    cmd->add_option("--target", o.kind, "Stationary target")
        ->check(CLI::IsMember({"uniform", "energy-bias", "entropy", "custom"}))
        ->capture_default_str();
    cmd->add_option("--target-file", o.target_file, "Custom target CSV (id,p)");
    cmd->add_option("--energy-column", o.energy_column, "Column holding sample energies");
    cmd->add_option("--beta-old", o.beta_old, "Inverse temperature the samples were drawn at");
    cmd->add_option("--beta-new", o.beta_new, "Inverse temperature to reweight to");
}

int cmd_embed(const EmbedConfig& c, const CLI::App& app, std::ostream& out) {
    const bool prescribed = c.chain == "pnmc-prescribed";
    const bool update = c.chain == "pnmc-update";
    if (c.target_given && !prescribed && !update)
        throw ParameterError("--target only applies to pnmc-prescribed and pnmc-update");
    if (update && (c.prior_q.empty() || c.prior_p.empty()))
        throw ParameterError("pnmc-update needs --prior-q and --prior-p");

    const LoadedData data = load(c.data);
    const auto d = pairwise_distances(data.cloud);
    std::optional<KernelMatrix> kernel;
    if (c.kernel == "gaussian") {
        const double eps = c.epsilon > 0.0 ? c.epsilon : bandwidth_percentile(d, c.percentile);
        kernel = gaussian_kernel(d, eps);
    } else {
        kernel = phate_kernel(d, c.k, c.beta);
    }
    if (c.alpha != 0.0) kernel = anisotropic_kernel(*kernel, c.alpha);

    SolverTelemetry telemetry;
    std::optional<MarkovChain> chain;
    if (c.chain == "rnmc") {
        chain = rnmc(*kernel);
    } else if (c.chain == "pnmc-free") {
        chain = pnmc_free(*kernel, c.tol, &telemetry);
    } else if (prescribed) {
        chain = pnmc_prescribed(*kernel, build_target(c.target, data), c.tol, c.max_iter, &telemetry);
    } else {
        std::vector<std::string> prior_ids;
        const MarkovChain prior = io::read_chain(fs::path(c.prior_q), fs::path(c.prior_p), &prior_ids);
        if (prior_ids != data.cloud.ids()) throw InputError("prior chain ids do not match the input ids");
        chain = c.target_given
                    ? pnmc_update_prescribed(*kernel, prior, build_target(c.target, data), c.tol, c.max_iter, &telemetry)
                    : pnmc_update_free(*kernel, prior, c.tol, &telemetry);
    }

    const Embedding emb = diffusion_map(*chain, c.m);
    const ChainReport report = validate(*chain, c.audit_tol);

    const fs::path dir(c.out_dir);
    fs::create_directories(dir);
    io::write_embedding(dir / "embedding.csv", data.cloud.ids(), emb);
    write_json(dir / "eigenvalues.json",
               {{"eigenvalues", std::vector<double>(emb.eigenvalues.begin(), emb.eigenvalues.end())}});
    json diag = {{"chain", c.chain},
                 {"mean_squared_jump", path_average(*chain, d.d.cwiseAbs2())},
                 {"validate", io::to_json(report)},
                 {"embedding", io::to_json(emb)}};
    if (!telemetry.solver.empty()) diag["solver"] = io::to_json(telemetry);
    write_json(dir / "diagnostics.json", diag);
    {
        std::ofstream echo(dir / "config.toml");
        echo << app.config_to_str(true, false);
    }
    if (c.write_chain) io::write_chain(dir / "q.csv", dir / "p.csv", data.cloud.ids(), *chain);

    out << json{{"status", report.passed ? "ok" : "audit_failed"}, {"out", dir.string()}}.dump() << '\n';
    return report.passed ? kExitOk : kExitFailure;
}

int cmd_validate(const ValidateConfig& c, std::ostream& out) {
    const MarkovChain chain = io::read_chain(fs::path(c.q_path), fs::path(c.p_path));
    const ChainReport report = validate(chain, c.tol);
    out << io::to_json(report).dump(2) << '\n';
    return report.passed ? kExitOk : kExitFailure;
}

int cmd_ising(const IsingConfig& c, std::ostream& out) {
    const IsingSample sample = metropolis_sample(c.sampler);
    if (c.output.empty()) {
        io::write_ising(out, sample);
    } else {
        const fs::path path(c.output);
        if (path.has_parent_path()) fs::create_directories(path.parent_path());
        io::write_ising(path, sample);
    }
    return kExitOk;
}

int cmd_target(const TargetConfig& c) {
    const LoadedData data = load(c.data);
    io::write_target(fs::path(c.output), data.cloud.ids(), build_target(c.target, data));
    return kExitOk;
}

json error_json(const std::string& kind, const std::string& message) {
    return {{"error", kind}, {"message", message}};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Maximum path-entropy Markov chains and diffusion maps"};
    app.name("pathchain");
    app.require_subcommand(1);
    app.set_config("--config", "", "TOML/INI file with an [embed] section; command-line flags take precedence");

    EmbedConfig embed_cfg;
    auto* embed = app.add_subcommand("embed", "distances -> kernel -> chain -> diffusion map");
    embed->fallthrough();
    add_data_options(embed, embed_cfg.data);
    embed->add_option("--kernel", embed_cfg.kernel)->check(CLI::IsMember({"gaussian", "phate"}))->capture_default_str();
    auto* eps = embed->add_option("--epsilon", embed_cfg.epsilon, "Gaussian bandwidth")->check(CLI::PositiveNumber);
    auto* pct = embed->add_option("--percentile", embed_cfg.percentile, "Bandwidth percentile of pairwise distances")
                    ->check(CLI::Range(0.0, 100.0))
                    ->capture_default_str();
    eps->excludes(pct);
    embed->add_option("--alpha", embed_cfg.alpha, "Anisotropic density exponent")->check(CLI::Range(0.0, 1.0));
    embed->add_option("--k", embed_cfg.k, "PHATE nearest-neighbour rank")->capture_default_str();
    embed->add_option("--beta", embed_cfg.beta, "PHATE decay exponent")->capture_default_str();
    embed->add_option("--chain", embed_cfg.chain)
        ->check(CLI::IsMember({"rnmc", "pnmc-free", "pnmc-prescribed", "pnmc-update"}))
        ->capture_default_str();
    add_target_options(embed, embed_cfg.target);
    embed->add_option("--prior-q", embed_cfg.prior_q, "Prior chain transition matrix CSV");
    embed->add_option("--prior-p", embed_cfg.prior_p, "Prior chain stationary CSV");
    embed->add_option("-m,--dims", embed_cfg.m, "Number of diffusion coordinates")->capture_default_str();
    embed->add_option("--tol", embed_cfg.tol, "Solver tolerance")->check(CLI::PositiveNumber)->capture_default_str();
    embed->add_option("--audit-tol", embed_cfg.audit_tol, "Tolerance of the chain audit")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    embed->add_option("--max-iter", embed_cfg.max_iter, "Sinkhorn iteration cap")->capture_default_str();
    embed->add_option("--seed", embed_cfg.seed, "Seed (recorded; the pipeline is deterministic)");
    embed->add_option("-o,--out", embed_cfg.out_dir, "Output directory")->envname(kOutDirEnv)->capture_default_str();
    embed->add_flag("--write-chain", embed_cfg.write_chain, "Also write q.csv and p.csv");

    ValidateConfig validate_cfg;
    auto* val = app.add_subcommand("validate", "Audit a chain stored as q and p CSV files");
    val->add_option("--q", validate_cfg.q_path, "Transition matrix CSV")->required();
    val->add_option("--p", validate_cfg.p_path, "Stationary distribution CSV")->required();
    val->add_option("--tol", validate_cfg.tol)->check(CLI::PositiveNumber)->capture_default_str();

    IsingConfig ising_cfg;
    auto* ising = app.add_subcommand("ising", "Metropolis samples of the 2-D Ising model");
    ising->add_option("-L,--side", ising_cfg.sampler.side)->capture_default_str();
    ising->add_option("-T,--temperature", ising_cfg.sampler.temperature, "k_B T")->capture_default_str();
    ising->add_option("-n,--n-samples", ising_cfg.sampler.n_samples)->capture_default_str();
    ising->add_option("--burn-in", ising_cfg.sampler.burn_in, "Sweeps discarded")->capture_default_str();
    ising->add_option("--thinning", ising_cfg.sampler.thinning, "Sweeps between samples")->capture_default_str();
    ising->add_option("--seed", ising_cfg.sampler.seed)->capture_default_str();
    ising->add_option("-o,--output", ising_cfg.output, "CSV path (standard output when omitted)");

    TargetConfig target_cfg;
    auto* target = app.add_subcommand("target", "Write a stationary target CSV for an input cloud");
    add_data_options(target, target_cfg.data);
    add_target_options(target, target_cfg.target);
    target->add_option("-o,--output", target_cfg.output, "Target CSV path")->required();

    std::vector<const char*> argv{"pathchain"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << error_json("usage", e.what()).dump() << '\n';
        return kExitInputError;
    }

    try {
        if (*embed) {
            embed_cfg.target_given = embed->count("--target") > 0;
            return cmd_embed(embed_cfg, app, out);
        }
        if (*val) return cmd_validate(validate_cfg, out);
        if (*ising) return cmd_ising(ising_cfg, out);
        return cmd_target(target_cfg);
    } catch (const InputError& e) {
        json j = error_json(e.kind(), e.what());
        if (e.line()) j["line"] = *e.line();
        err << j.dump() << '\n';
        return kExitInputError;
    } catch (const ConvergenceError& e) {
        json j = error_json(e.kind(), e.what());
        j["residual_history"] = e.residual_history();
        err << j.dump() << '\n';
        return kExitFailure;
    } catch (const Error& e) {
        err << error_json(e.kind(), e.what()).dump() << '\n';
        return kExitFailure;
    } catch (const fs::filesystem_error& e) {
        err << error_json("input", e.what()).dump() << '\n';
        return kExitInputError;
    } catch (const std::exception& e) {
        err << error_json("internal", e.what()).dump() << '\n';
        return kExitFailure;
    }
}

}  // namespace pathchain::cli
