#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "bnpre/experiments.hpp"

using namespace bnpre;

namespace {

constexpr int kExitSolved = 0;
constexpr int kExitUnsolved = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInput = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw BnError(BnErrc::bad_format, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw BnError(BnErrc::bad_format, "cannot write " + path);
    out << text;
}

Bits parse_bitstring(const std::string& s) {
    Bits y;
    for (char c : s) {
        if (c != '0' && c != '1') {
            throw BnError(BnErrc::bad_format, "y must be a string over {0,1}");
        }
        y.push_back(static_cast<uint8_t>(c - '0'));
    }
    return y;
}

struct EnsembleFlags {
    std::string preset = "desk";
    std::string type = "A";
    int nodes = 0, inputs = 0, outputs = 0, depth = 0, kmax = 0;

    EnsembleConfig resolve() const {
        EnsembleConfig c = preset == "paper" ? EnsembleConfig::paper() : EnsembleConfig::desk();
        if (nodes > 0) c.n_total = nodes;
        if (inputs > 0) c.n_in = inputs;
        if (outputs > 0) c.n_out = outputs;
        if (depth > 0) c.depth = depth;
        if (kmax > 0) c.k_max = kmax;
        c.function_type = type == "B" ? FunctionType::B : FunctionType::A;
        return c;
    }

    void attach(CLI::App* cmd) {
        cmd->add_option("--preset", preset, "ensemble preset")
            ->check(CLI::IsMember({"desk", "paper"}));
        cmd->add_option("--type", type, "function ensemble type")->check(CLI::IsMember({"A", "B"}));
        cmd->add_option("--nodes", nodes, "total node count");
        cmd->add_option("--inputs", inputs, "in-node count N");
        cmd->add_option("--outputs", outputs, "out-node count M");
        cmd->add_option("--depth", depth, "interior layer count");
        cmd->add_option("--kmax", kmax, "max in-degree");
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Preimage search for feed-forward Boolean networks"};
    app.require_subcommand(1);
    app.fallthrough();  // let subcommands pass --seed/--threads/--out up

    uint64_t seed = 1;
    int threads = 1;
    std::string out_path;
    app.add_option("--seed", seed, "RNG seed")->capture_default_str();
    app.add_option("--threads", threads, "worker thread count")->capture_default_str();
    app.add_option("--out", out_path, "output file (default stdout)");

    // gen
    auto* gen = app.add_subcommand("gen", "emit a random network file");
    EnsembleFlags gen_flags;
    gen_flags.attach(gen);

    // solve
    auto* solve = app.add_subcommand("solve", "find preimages of y for one network file");
    std::string net_path, y_str;
    int solve_tmax = 14;
    uint64_t solve_samples = 1000;
    solve->add_option("--net", net_path, "network file")->required();
    solve->add_option("y", y_str, "desired output bits, out-node order")->required();
    solve->add_option("--tmax", solve_tmax, "iteration count")->capture_default_str();
    solve->add_option("--samples", solve_samples, "sample count")->capture_default_str();

    // sweep
    auto* sweep = app.add_subcommand("sweep", "similarity vs iteration count over an ensemble");
    EnsembleFlags sweep_flags;
    sweep_flags.attach(sweep);
    std::vector<int> t_list;
    int sweep_nets = 100, sweep_ys = 100;
    bool timing = false;
    sweep->add_option("--t-list", t_list, "iteration checkpoints")->delimiter(',');
    sweep->add_option("--nets", sweep_nets, "networks per ensemble")->capture_default_str();
    sweep->add_option("--ys", sweep_ys, "targets per network")->capture_default_str();
    sweep->add_flag("--timing", timing, "emit wall-clock column (breaks byte determinism)");

    // table
    auto* table = app.add_subcommand("table", "solved/valid/unique statistics for Type A and B");
    EnsembleFlags table_flags;
    table_flags.attach(table);
    int table_nets = 100, table_ys = 5, table_tmax = 0;
    uint64_t table_samples = 1000;
    bool table_single = false;
    table->add_option("--nets", table_nets, "networks per ensemble")->capture_default_str();
    table->add_option("--ys", table_ys, "targets per network")->capture_default_str();
    table->add_option("--samples", table_samples, "samples per target")->capture_default_str();
    table->add_option("--tmax", table_tmax, "iteration count (default 2*depth)");
    table->add_flag("--single-type", table_single, "run only the --type ensemble");
    table->add_flag("--timing", timing, "emit wall-clock column (breaks byte determinism)");

    // validate
    auto* validate = app.add_subcommand("validate", "cross-check inference against the exact oracle");
    std::string validate_net;
    int validate_nets = 10, validate_ys = 4, validate_tmax = 0;
    uint64_t validate_samples = 1000;
    validate->add_option("--net", validate_net, "network file (default: small random ensemble)");
    validate->add_option("--nets", validate_nets, "networks when generating")->capture_default_str();
    validate->add_option("--ys", validate_ys, "targets per network")->capture_default_str();
    validate->add_option("--samples", validate_samples, "samples per target")->capture_default_str();
    validate->add_option("--tmax", validate_tmax, "iteration count (default 2*depth)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    try {
        if (gen->parsed()) {
            SeededRng rng(seed);
            Network net = random_network(gen_flags.resolve(), rng);
            write_output(out_path, serialize_network(net));
            return 0;
        }

        if (solve->parsed()) {
            Network net = parse_network(read_file(net_path));
            Bits y = parse_bitstring(y_str);
            if (y.size() != static_cast<size_t>(net.num_outputs())) {
                std::cerr << "error: y has " << y.size() << " bits but the network has "
                          << net.num_outputs() << " out-nodes\n";
                return kExitUsage;
            }
            InferenceParams params;
            params.t_max = solve_tmax;
            MarginalSet m = run_inference(net, y, params);
            SeededRng rng(seed);
            PreimageReport report = collect_preimages(net, y, m, solve_samples, rng);

            std::ostringstream text;
            text << "in-node LLRs:";
            for (int id : net.in_nodes()) {
                char buf[32];
                std::snprintf(buf, sizeof(buf), " %.6f", m.llr[id]);
                text << buf;
            }
            text << "\nsamples " << report.samples_drawn << " valid " << report.valid_count
                 << " unique " << report.unique_preimages.size() << " solved "
                 << (report.solved ? 1 : 0) << "\n";
            for (const Bits& x : report.unique_preimages) {
                text << "preimage ";
                for (uint8_t b : x) text << static_cast<int>(b);
                text << "\n";
            }
            write_output(out_path, text.str());
            return report.solved ? kExitSolved : kExitUnsolved;
        }

        if (sweep->parsed()) {
            SweepConfig cfg;
            cfg.ens = sweep_flags.resolve();
            cfg.t_list = t_list;
            if (cfg.t_list.empty()) {
                for (int t = 1; t <= 4 * cfg.ens.depth; ++t) cfg.t_list.push_back(t);
            }
            cfg.num_networks = sweep_nets;
            cfg.ys_per_net = sweep_ys;
            cfg.seed = seed;
            cfg.threads = threads;
            cfg.timing = timing;
            write_output(out_path, run_sweep(cfg).csv);
            return 0;
        }

        if (table->parsed()) {
            TableConfig cfg;
            EnsembleConfig base = table_flags.resolve();
            if (table_single) {
                cfg.ensembles = {base};
            } else {
                EnsembleConfig a = base, b = base;
                a.function_type = FunctionType::A;
                b.function_type = FunctionType::B;
                cfg.ensembles = {a, b};
            }
            cfg.num_networks = table_nets;
            cfg.ys_per_net = table_ys;
            cfg.n_samples = table_samples;
            cfg.t_max = table_tmax;
            cfg.seed = seed;
            cfg.threads = threads;
            cfg.timing = timing;
            write_output(out_path, run_table(cfg).csv);
            return 0;
        }

        if (validate->parsed()) {
            ValidateConfig cfg;
            if (!validate_net.empty()) cfg.network = parse_network(read_file(validate_net));
            cfg.num_networks = validate_nets;
            cfg.ys_per_net = validate_ys;
            cfg.n_samples = validate_samples;
            cfg.t_max = validate_tmax;
            cfg.seed = seed;
            cfg.threads = threads;
            write_output(out_path, run_validate(cfg).csv);
            return 0;
        }
    } catch (const BnError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitUsage;
}
