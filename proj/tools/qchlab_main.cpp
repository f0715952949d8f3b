// SPDX-License-Identifier: Apache-2.0
//
// Command-line driver: verify a metric family against the identity suite,
// dump sectional-curvature profiles, or tabulate fitted coefficients.

#include "qch/campaign.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>

namespace {

struct CommonFlags {
    std::string family;
    std::string params = "{}";
    std::string config_path;
    int points = 50;
    std::uint64_t seed = 1;
    double tol_scale = 1.0;
    std::string out;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--family", flags.family, "family name: spaceform|product|calabi|orthotoric|kowalski");
    cmd->add_option("--params", flags.params, "family parameters as a JSON object");
    cmd->add_option("--points", flags.points, "number of sample points");
    cmd->add_option("--seed", flags.seed, "seed for the deterministic sampler");
    cmd->add_option("--tol", flags.tol_scale, "multiplier applied to every default tolerance");
    cmd->add_option("--out", flags.out, "output path (stdout when omitted)");
    cmd->add_option("--config", flags.config_path, "JSON config file; flags override its entries");
}

qch::CampaignConfig build_config(const CommonFlags& flags, const CLI::App* cmd) {
    qch::CampaignConfig config;
    if (!flags.config_path.empty()) {
        std::ifstream in(flags.config_path);
        if (!in) throw qch::BadParameterError("cannot open config file '" + flags.config_path + "'");
        nlohmann::json j = nlohmann::json::parse(in);
        config = qch::config_from_json(j);
    } else if (flags.family.empty()) {
        throw qch::BadParameterError("either --family or --config is required");
    }
    if (!flags.family.empty())
        config.family = qch::family_from_json(flags.family, nlohmann::json::parse(flags.params));
    if (cmd->count("--points")) config.points = flags.points;
    if (cmd->count("--seed")) config.seed = flags.seed;
    if (cmd->count("--tol")) config.tol_scale = flags.tol_scale;
    if (cmd->count("--out")) config.out_path = flags.out;
    return config;
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw qch::BadParameterError("cannot open output path '" + path + "'");
    out << text;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical verification of curvature identities for distinguished Kaehler families"};
    app.require_subcommand(1);

    CommonFlags vflags, pflags, fflags;
    int directions = 32;

    CLI::App* verify = app.add_subcommand("verify", "run the identity suite and report pass/fail per identity");
    add_common(verify, vflags);

    CLI::App* sample = app.add_subcommand("sample-phi", "tabulate the sectional-curvature profile against t^2");
    add_common(sample, pflags);
    sample->add_option("--directions", directions, "directions sampled per point");

    CLI::App* fit = app.add_subcommand("fit-abc", "tabulate fitted profile coefficients per point");
    add_common(fit, fflags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (verify->parsed()) {
            qch::CampaignConfig config = build_config(vflags, verify);
            qch::ReportDocument doc = qch::run_verify(config);
            nlohmann::json j = qch::report_to_json(doc);
            write_output(config.out_path, j.dump(2) + "\n");
            for (const auto& [name, res] : doc.aggregate)
                std::fprintf(stderr, "%s  %-22s  max %.3e  tol %.3e\n", res.pass ? "pass" : "FAIL", name.c_str(),
                             res.max_residual, res.tolerance);
            return doc.all_pass ? 0 : 1;
        }
        if (sample->parsed()) {
            qch::CampaignConfig config = build_config(pflags, sample);
            write_output(config.out_path, qch::sample_phi_csv(config, directions));
            return 0;
        }
        qch::CampaignConfig config = build_config(fflags, fit);
        write_output(config.out_path, qch::fit_abc_csv(config));
        return 0;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const qch::BadParameterError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const qch::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
