// Command-line front end: grow networks, evaluate closed forms, enumerate
// small-n ground truth, compare against limit laws, run the acceptance
// suites. Emits JSON (default) or CSV plot data.
//
// Exit codes: 0 success, 1 failed verification, 2 usage / domain errors.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "spnet/exact.hpp"
#include "spnet/serialize.hpp"
#include "spnet/spectrum.hpp"
#include "spnet/verify.hpp"

namespace {

using namespace spnet;

// every run is reproducible: randomness only ever flows from --seed, and the
// default is this fixed constant (echoed in reports, announced on stderr)
constexpr std::uint64_t default_seed = 8818261;

struct ModelFlags {
    std::string model = "bernoulli";
    std::string p;
    int b = 0;
};

void add_model_flags(CLI::App* cmd, ModelFlags& f) {
    cmd->add_option("--model", f.model, "bernoulli|binary|preferential|saturation|bary")
        ->capture_default_str();
    cmd->add_option("--p", f.p, "step weight, \"a/b\" (exact) or a decimal");
    cmd->add_option("--b", f.b, "bucket capacity for the bary model (>= 2)");
}

ModelConfig build_config(const ModelFlags& f) {
    Model m = parse_model(f.model);
    ModelConfig cfg;
    switch (m) {
        case Model::bernoulli:
        case Model::preferential:
        case Model::saturation:
            if (f.p.empty())
                throw std::invalid_argument(std::string(model_name(m)) + " needs --p");
            cfg = ModelConfig{m, ProbParam::parse(f.p), 0};
            break;
        case Model::binary:
            cfg = ModelConfig::binary();
            break;
        case Model::bary:
            cfg = ModelConfig::bary(f.b);
            break;
    }
    cfg.validate();
    return cfg;
}

struct OutputFlags {
    std::string format = "json";
    std::string path;
};

void add_output_flags(CLI::App* cmd, OutputFlags& o) {
    cmd->add_option("--out", o.format, "csv|json")
        ->capture_default_str()
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--output", o.path, "write to this file instead of stdout");
}

void emit(const OutputFlags& o, const std::string& text) {
    if (o.path.empty()) {
        std::cout << text;
        if (text.empty() || text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream file(o.path);
    if (!file) throw std::runtime_error("cannot open output file " + o.path);
    file << text;
    if (text.empty() || text.back() != '\n') file << '\n';
}

void emit(const OutputFlags& o, const Json& j) { emit(o, j.dump(2)); }

// --------------------------------------------------------------------------
// exact: closed-form laws and means
// --------------------------------------------------------------------------

Json pmf_rows(const std::vector<BigRat>& pmf) {
    Json rows = Json::array();
    for (int m = 1; m < static_cast<int>(pmf.size()); ++m) {
        if (pmf[m] == 0) continue;
        Json row;
        row["m"] = m;
        row["prob"] = format_rational(pmf[m]);
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string pmf_csv(const ModelConfig& cfg, int n, const std::string& quantity,
                    const std::vector<BigRat>& pmf) {
    std::ostringstream out;
    out << detail::model_comment(cfg) << " n=" << n << " quantity=" << quantity << "\n";
    out << "m,prob,prob_float\n" << std::setprecision(17);
    for (int m = 1; m < static_cast<int>(pmf.size()); ++m)
        if (pmf[m] != 0)
            out << m << "," << format_rational(pmf[m]) << "," << to_double(pmf[m]) << "\n";
    return out.str();
}

int run_exact(const ModelFlags& mf, const OutputFlags& of, int n, const std::string& quantity) {
    ModelConfig cfg = build_config(mf);
    Json j = report_envelope(cfg);
    j["n"] = n;
    j["quantity"] = quantity;

    auto scalar_rat = [&](const BigRat& v) {
        j["value"] = format_rational(v);
        j["value_float"] = to_double(v);
        if (of.format == "csv") {
            std::ostringstream out;
            out << detail::model_comment(cfg) << " n=" << n << " quantity=" << quantity << "\n";
            out << "value,value_float\n"
                << format_rational(v) << "," << std::setprecision(17) << to_double(v) << "\n";
            emit(of, out.str());
        } else {
            emit(of, j);
        }
    };
    auto scalar_float = [&](double v) {
        j["value_float"] = v;
        if (of.format == "csv") {
            std::ostringstream out;
            out << detail::model_comment(cfg) << " n=" << n << " quantity=" << quantity << "\n";
            out << "value_float\n" << std::setprecision(17) << v << "\n";
            emit(of, out.str());
        } else {
            emit(of, j);
        }
    };
    auto pmf_out = [&](const std::vector<BigRat>& pmf) {
        if (of.format == "csv") {
            emit(of, pmf_csv(cfg, n, quantity, pmf));
        } else {
            j["pmf"] = pmf_rows(pmf);
            emit(of, j);
        }
    };
    auto wrong_model = [&](const char* supported) {
        throw std::invalid_argument("quantity '" + quantity + "' is available for " + supported +
                                    " (got " + model_name(cfg.model) + ")");
    };
    if (n < 1) throw std::invalid_argument("--n must be >= 1");

    if (quantity == "degree-pmf") {
        if (cfg.model != Model::bernoulli) wrong_model("bernoulli");
        pmf_out(bernoulli_degree_pmf(n, cfg.p->rat()));
    } else if (quantity == "leftmost-pmf") {
        if (cfg.model != Model::bernoulli) wrong_model("bernoulli");
        pmf_out(bernoulli_leftpath_pmf(n, cfg.p->rat()));
    } else if (quantity == "joint-pmf") {
        if (cfg.model != Model::bernoulli) wrong_model("bernoulli");
        auto joint = bernoulli_joint_pmf(n, cfg.p->rat());
        if (of.format == "csv") {
            std::ostringstream out;
            out << detail::model_comment(cfg) << " n=" << n << " quantity=" << quantity << "\n";
            out << "length,degree,prob,prob_float\n" << std::setprecision(17);
            for (const auto& [k, pr] : joint)
                if (pr != 0)
                    out << k.first << "," << k.second << "," << format_rational(pr) << ","
                        << to_double(pr) << "\n";
            emit(of, out.str());
        } else {
            Json rows = Json::array();
            for (const auto& [k, pr] : joint) {
                if (pr == 0) continue;
                Json row;
                row["length"] = k.first;
                row["degree"] = k.second;
                row["prob"] = format_rational(pr);
                rows.push_back(std::move(row));
            }
            j["pmf"] = std::move(rows);
            emit(of, j);
        }
    } else if (quantity == "mean-degree") {
        if (cfg.model == Model::bernoulli)
            scalar_rat(bernoulli_degree_factorial_moment(n, 1, cfg.p->rat()));
        else if (cfg.model == Model::preferential)
            scalar_rat(preferential_expected_sourcedegree(n, *cfg.p));
        else if (cfg.model == Model::saturation)
            scalar_rat(saturation_expected_sourcedegree(n, *cfg.p));
        else
            wrong_model("bernoulli/preferential/saturation");
    } else if (quantity == "mean-length") {
        if (cfg.model == Model::bernoulli)
            scalar_rat(bernoulli_degree_factorial_moment(n, 1, 1 - cfg.p->rat()));
        else if (cfg.model == Model::binary)
            scalar_float(binary_expected_pathlength(n));
        else if (cfg.model == Model::bary)
            scalar_float(bary_expected_pathlength(n, cfg.b));
        else
            wrong_model("bernoulli/binary/bary");
    } else if (quantity == "mean-sink-degree") {
        if (cfg.model != Model::binary) wrong_model("binary");
        scalar_float(binary_expected_sinkdegree(n));
    } else if (quantity == "mean-paths") {
        if (cfg.model == Model::bernoulli)
            scalar_rat(bernoulli_expected_paths_closed(n, *cfg.p));
        else if (cfg.model == Model::binary)
            scalar_rat(binary_expected_paths_exact(n)[n]);
        else
            wrong_model("bernoulli/binary");
    } else if (quantity == "limit-pmf") {
        if (cfg.model != Model::saturation) wrong_model("saturation");
        std::vector<BigRat> pmf(n + 1);
        for (int m = 1; m <= n; ++m) pmf[m] = saturation_limit_pmf(m, cfg.p->rat());
        pmf_out(pmf);
    } else if (quantity == "limit-mass") {
        if (cfg.model != Model::saturation) wrong_model("saturation");
        scalar_rat(saturation_limit_mass(cfg.p->rat()));
    } else {
        throw std::invalid_argument(
            "unknown quantity '" + quantity +
            "' (want degree-pmf|leftmost-pmf|joint-pmf|mean-degree|mean-length|"
            "mean-sink-degree|mean-paths|limit-pmf|limit-mass)");
    }
    return 0;
}

// --------------------------------------------------------------------------
// limit: spectrum or limit-law reference values, optionally vs a fresh sample
// --------------------------------------------------------------------------

int run_limit(ModelFlags mf, const OutputFlags& of, bool model_given, const std::string& law_name,
              int n, std::uint64_t trials, std::uint64_t seed, bool seed_given, int workers) {
    if (law_name == "bary-spectrum") {
        int b = mf.b > 0 ? mf.b : 2;
        auto sp = bary_spectrum(b);
        if (of.format == "csv") {
            std::ostringstream out;
            out << "# version=" << version_string << " law=bary-spectrum b=" << b << "\n";
            out << "i,root_re,root_im,beta_re,beta_im,residual\n" << std::setprecision(17);
            for (int i = 0; i < b; ++i)
                out << i + 1 << "," << sp.roots[i].real() << "," << sp.roots[i].imag() << ","
                    << sp.betas[i].real() << "," << sp.betas[i].imag() << "," << sp.residuals[i]
                    << "\n";
            emit(of, out.str());
            return 0;
        }
        Json j;
        j["version"] = version_string;
        j["law"] = "bary-spectrum";
        j["b"] = b;
        j["lambda1"] = sp.lambda1();
        Json roots = Json::array();
        for (int i = 0; i < b; ++i) {
            Json row;
            row["re"] = sp.roots[i].real();
            row["im"] = sp.roots[i].imag();
            row["beta_re"] = sp.betas[i].real();
            row["beta_im"] = sp.betas[i].imag();
            row["residual"] = sp.residuals[i];
            roots.push_back(std::move(row));
        }
        j["roots"] = std::move(roots);
        emit(of, j);
        return 0;
    }

    LimitLaw law = parse_limit_law(law_name);
    if (!model_given) {
        // the law names its model; fill the blank for convenience
        switch (law) {
            case LimitLaw::mittag_leffler_degree:
            case LimitLaw::mittag_leffler_length: mf.model = "bernoulli"; break;
            case LimitLaw::binary_length:
            case LimitLaw::binary_degree: mf.model = "binary"; break;
            case LimitLaw::preferential_degree: mf.model = "preferential"; break;
            case LimitLaw::saturation_degree: mf.model = "saturation"; break;
        }
    }
    ModelConfig cfg = build_config(mf);

    if (trials > 0) {
        if (n < 1) throw std::invalid_argument("--n must be >= 1 when sampling");
        if (!seed_given) std::cerr << "seed = " << seed << " (default)\n";
        auto sum = simulate(cfg, n, trials, seed, {default_stat_for(law)}, workers);
        auto cmp = compare_limit(sum, law);
        emit(of, of.format == "csv" ? to_csv(cmp, sum) : to_json(cmp, sum).dump(2));
        return 0;
    }

    Stat stat = default_stat_for(law);
    double gamma = scaling_exponent(cfg, stat);
    double c = detail::law_prefactor(law, cfg);
    if (of.format == "csv") {
        std::ostringstream out;
        out << detail::model_comment(cfg) << " law=" << limit_law_name(law)
            << " stat=" << stat_name(stat) << " exponent=" << gamma << " prefactor=" << c
            << "\n";
        out << "r,limit_moment\n" << std::setprecision(17);
        for (int r = 1; r <= 3; ++r)
            out << r << "," << detail::limit_moment(law, cfg, r) / std::pow(c, r) << "\n";
        emit(of, out.str());
        return 0;
    }
    Json j = report_envelope(cfg);
    j["law"] = limit_law_name(law);
    j["stat"] = stat_name(stat);
    j["exponent"] = gamma;
    j["prefactor"] = c;
    Json moments = Json::array();
    for (int r = 1; r <= 3; ++r) {
        Json row;
        row["r"] = r;
        row["value"] = detail::limit_moment(law, cfg, r) / std::pow(c, r);
        moments.push_back(std::move(row));
    }
    j["moments"] = std::move(moments);
    emit(of, j);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"series-parallel network growth: sampling, exact laws, limit checks"};
    app.set_version_flag("--version", version_string);
    app.require_subcommand(1);

    // simulate
    auto* sim = app.add_subcommand("simulate", "grow networks and summarize statistics");
    ModelFlags sim_model;
    OutputFlags sim_out;
    int sim_n = 0;
    std::uint64_t sim_trials = 10000, sim_seed = default_seed;
    std::uint64_t sim_budget = default_sim_budget;
    int sim_workers = 0;
    std::vector<std::string> sim_stats = {"source-degree", "walk-length"};
    add_model_flags(sim, sim_model);
    add_output_flags(sim, sim_out);
    sim->add_option("--n", sim_n, "network size (edge count)")->required();
    sim->add_option("--trials", sim_trials, "independent networks")->capture_default_str();
    auto* sim_seed_opt = sim->add_option("--seed", sim_seed, "RNG seed (fixed default)");
    sim->add_option("--stat", sim_stats,
                    "statistics: source-degree|sink-degree|leftmost-length|walk-length|"
                    "log2-path-count|path-count (repeat or comma-separate)")
        ->delimiter(',')
        ->capture_default_str();
    sim->add_option("--workers", sim_workers, "worker threads (default: hardware)");
    sim->add_option("--budget", sim_budget, "trials*n cap")->capture_default_str();

    // exact
    auto* exa = app.add_subcommand("exact", "closed-form pmfs and means");
    ModelFlags exa_model;
    OutputFlags exa_out;
    int exa_n = 0;
    std::string exa_quantity;
    add_model_flags(exa, exa_model);
    add_output_flags(exa, exa_out);
    exa->add_option("--n", exa_n, "network size")->required();
    exa->add_option("--quantity", exa_quantity, "what to evaluate")->required();

    // oracle
    auto* ora = app.add_subcommand("oracle", "exhaustive small-n enumeration (exact)");
    ModelFlags ora_model;
    OutputFlags ora_out;
    int ora_n = 0;
    add_model_flags(ora, ora_model);
    add_output_flags(ora, ora_out);
    ora->add_option("--n", ora_n, "network size (tight budget; grows factorially)")->required();

    // limit
    auto* lim = app.add_subcommand("limit", "limit-law reference values / comparisons");
    ModelFlags lim_model;
    OutputFlags lim_out;
    std::string lim_law;
    int lim_n = 0;
    std::uint64_t lim_trials = 0, lim_seed = default_seed;
    int lim_workers = 0;
    add_model_flags(lim, lim_model);
    add_output_flags(lim, lim_out);
    lim->add_option("--law", lim_law,
                    "mittag-leffler-degree|mittag-leffler-length|binary-length|binary-degree|"
                    "preferential-degree|saturation-degree|bary-spectrum")
        ->required();
    lim->add_option("--n", lim_n, "network size (with --trials)");
    lim->add_option("--trials", lim_trials, "sample and compare when given");
    auto* lim_seed_opt = lim->add_option("--seed", lim_seed, "RNG seed (fixed default)");
    lim->add_option("--workers", lim_workers, "worker threads (default: hardware)");

    // verify
    auto* ver = app.add_subcommand("verify", "run acceptance criteria");
    OutputFlags ver_out;
    std::string ver_suite = "all";
    add_output_flags(ver, ver_out);
    ver->add_option("--suite", ver_suite, "oracle|asymptotics|montecarlo|all")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    auto workers_or_hardware = [](int w) {
        if (w > 0) return w;
        unsigned h = std::thread::hardware_concurrency();
        return h > 0 ? static_cast<int>(h) : 1;
    };

    try {
        if (sim->parsed()) {
            ModelConfig cfg = build_config(sim_model);
            std::vector<Stat> stats;
            for (const auto& s : sim_stats) stats.push_back(parse_stat(s));
            if (sim_seed_opt->count() == 0) std::cerr << "seed = " << sim_seed << " (default)\n";
            auto sum = simulate(cfg, sim_n, sim_trials, sim_seed, stats,
                                workers_or_hardware(sim_workers), sim_budget);
            emit(sim_out, sim_out.format == "csv" ? to_csv(sum) : to_json(sum).dump(2));
            return 0;
        }
        if (exa->parsed()) return run_exact(exa_model, exa_out, exa_n, exa_quantity);
        if (ora->parsed()) {
            ModelConfig cfg = build_config(ora_model);
            auto rep = enumerate(cfg, ora_n);
            emit(ora_out, ora_out.format == "csv" ? to_csv(rep) : to_json(rep).dump(2));
            return 0;
        }
        if (lim->parsed())
            return run_limit(lim_model, lim_out, lim->count("--model") > 0, lim_law, lim_n,
                             lim_trials, lim_seed, lim_seed_opt->count() > 0,
                             workers_or_hardware(lim_workers));
        if (ver->parsed()) {
            auto results = run_acceptance(ver_suite, [](const CriterionResult& r) {
                std::cerr << "criterion " << r.id << " " << (r.pass ? "[pass]" : "[FAIL]") << " "
                          << r.name << " (" << std::fixed << std::setprecision(1) << r.seconds
                          << " s)\n";
            });
            Json j;
            j["version"] = version_string;
            j["suite"] = ver_suite;
            Json rows = Json::array();
            for (const auto& r : results) {
                Json row;
                row["id"] = r.id;
                row["name"] = r.name;
                row["pass"] = r.pass;
                row["seconds"] = r.seconds;
                row["detail"] = r.detail;
                rows.push_back(std::move(row));
            }
            j["criteria"] = std::move(rows);
            bool ok = all_pass(results);
            j["all_pass"] = ok;
            emit(ver_out, j);
            return ok ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
