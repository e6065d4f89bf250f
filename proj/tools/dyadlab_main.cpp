// Experiment harness: wires JSON configs to the library, runs verification
// suites and writes CSV/JSON artifacts. Exit codes: 0 pass, 1 threshold
// fail, 2 numerical failure, 3 config error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "dyadlab/csv.hpp"
#include "dyadlab/cz.hpp"
#include "dyadlab/experiments.hpp"
#include "dyadlab/kernels.hpp"
#include "dyadlab/norms.hpp"
#include "dyadlab/paraproducts.hpp"
#include "dyadlab/representation.hpp"
#include "dyadlab/rng.hpp"
#include "dyadlab/square.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using nlohmann::json;
using namespace dyadlab;

namespace {

json default_config() {
    return json{
        {"seed", 1},
        {"jobs", 0},
        {"out_dir", "."},
        {"window_exp", 0},   // signals live on [0, 2^window_exp)
        {"resolution", 10},
        {"ambient_exp", 7},  // families clipped to [-2^ambient_exp, 2^ambient_exp)
        {"verify_square_fn",
         {{"k_min", -6},
          {"k_max", 6},
          {"n", {1, 2, 4, 8, 16, 32, 64}},
          {"p", {4.0 / 3.0, 2.0, 4.0}},
          {"trials", 24},
          {"threshold", 10.0}}},
        {"kernel_audit",
         {{"kernel", "tensor_hilbert"},
          {"param", 0.0},
          {"samples", 2000},
          {"alphas", {0.0078125, 0.0625, 0.5}},
          {"betas", {1.0, 4.0, 8.0}},
          {"size_threshold", 100.0},
          {"cancellation_threshold", 100.0}}},
        {"bump_decay",
         {{"e", {1, 2, 3, 4, 5}},
          {"m", {2, 4, 8, 16, 32}},
          {"cells", 512},
          {"ecc_slope_min", 0.9},
          {"dist_slope_max", -1.4},
          {"r2_min", 0.95}}},
        {"reduce", {{"resolution", 3}, {"forms", 5}, {"threshold", 1e-10}}},
        {"weak_type",
         {{"k_min", -6}, {"k_max", 6}, {"n", {1, 2, 4, 8, 16, 32, 64}}, {"trials", 16},
          {"threshold", 10.0}}},
        {"represent",
         {{"resolution", 4}, {"operators", 20}, {"pairs", 100}, {"threshold", 1e-10}}},
        {"t1_limit",
         {{"resolution", 7}, {"kmax", 9}, {"from_k", 3}, {"ratio_threshold", 0.70710678}}},
    };
}

// dotted-path overrides: --set verify_square_fn.trials=5
void apply_override(json& cfg, const std::string& kv) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("--set expects key=value");
    const std::string path = kv.substr(0, eq);
    const std::string value = kv.substr(eq + 1);
    json* node = &cfg;
    std::size_t pos = 0;
    while (true) {
        const auto dot = path.find('.', pos);
        const std::string key = path.substr(pos, dot - pos);
        if (dot == std::string::npos) {
            (*node)[key] = json::parse(value, nullptr, false).is_discarded()
                               ? json(value)
                               : json::parse(value);
            return;
        }
        node = &(*node)[key];
        pos = dot + 1;
    }
}

std::string config_hash(const json& cfg) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a(cfg.dump())));
    return buf;
}

std::filesystem::path out_path(const json& cfg, const std::string& name) {
    std::filesystem::path dir = cfg.at("out_dir").get<std::string>();
    if (const char* env = std::getenv("DYADLAB_OUT")) {
        if (cfg.at("out_dir").get<std::string>() == ".") dir = env;
    }
    std::filesystem::create_directories(dir);
    return dir / name;
}

struct GridSetup {
    DyadicInterval window;
    int res;
    ClipRange ambient;
};

GridSetup grid_setup(const json& cfg) {
    const int w = cfg.at("window_exp").get<int>();
    return {{-w, 0}, cfg.at("resolution").get<int>(),
            ClipRange::symmetric(cfg.at("ambient_exp").get<int>())};
}

double square_fn_bound(int k, std::int64_t n, double p) {
    const double expo = std::abs(2.0 / p - 1.0);
    const double sgn = 2.0 / p - 1.0 > 0 ? 1.0 : -1.0;
    const double lg = std::log(static_cast<double>(n) + 1.0);
    if (k >= 0) return std::pow(std::ldexp(1.0, static_cast<int>(-sgn * k)) * lg + 1.0, expo);
    return std::pow(std::ldexp(1.0, static_cast<int>(-sgn * k)) + lg + 1.0, expo);
}

int cmd_verify_square_fn(const json& cfg) {
    const GridSetup g = grid_setup(cfg);
    const json& c = cfg.at("verify_square_fn");
    const int trials = c.at("trials").get<int>();
    const auto seed = cfg.at("seed").get<std::uint64_t>();

    CsvWriter csv(out_path(cfg, "verify_square_fn.csv").string(), config_hash(cfg),
                  "(2^{-k sign(2/p-1)} ln(n+1) + 1)^{|2/p-1|} for k>=0; "
                  "(2^{-k sign(2/p-1)} + ln(n+1) + 1)^{|2/p-1|} for k<0",
                  {"k", "n", "p", "measured", "bound", "ratio"});

    double max_ratio = 0.0;
    std::string worst;
    std::uint64_t cell = 0;
    for (int k = c.at("k_min").get<int>(); k <= c.at("k_max").get<int>(); ++k) {
        for (const auto& nj : c.at("n")) {
            const auto n = nj.get<std::int64_t>();
            const ShiftSpec spec = leftmost_selector(k, n, g.window, g.res, g.ambient);
            for (const auto& pj : c.at("p")) {
                const double p = pj.get<double>();
                const auto op = [&](const Signal1D& f) {
                    return modified_square_fn(f, spec,
                                              std::numeric_limits<double>::infinity())
                        .lp_norm(p);
                };
                const OpNormResult r =
                    empirical_opnorm(op, p, trials, mix_seed(seed, cell), g.window, g.res);
                const double bound = square_fn_bound(k, n, p);
                const double ratio = r.norm / bound;
                csv.row_values({static_cast<double>(k), static_cast<double>(n), p, r.norm,
                                bound, ratio});
                if (ratio > max_ratio) {
                    max_ratio = ratio;
                    worst = "k=" + std::to_string(k) + " n=" + std::to_string(n) +
                            " p=" + std::to_string(p);
                }
                ++cell;
            }
        }
    }
    std::cout << "verify-square-fn: max ratio " << format_value(max_ratio) << " at " << worst
              << " (threshold " << c.at("threshold").get<double>() << ")\n";
    return max_ratio <= c.at("threshold").get<double>() ? 0 : 1;
}

int cmd_kernel_audit(const json& cfg) {
    const json& c = cfg.at("kernel_audit");
    const ProductKernel k =
        kernel_from_registry(c.at("kernel").get<std::string>(), c.at("param").get<double>());
    const int samples = c.at("samples").get<int>();
    const auto seed = cfg.at("seed").get<std::uint64_t>();
    std::vector<double> alphas, betas;
    for (const auto& a : c.at("alphas")) alphas.push_back(a.get<double>());
    for (const auto& b : c.at("betas")) betas.push_back(b.get<double>());

    json report;
    report["kernel"] = k.name;
    report["delta"] = k.delta;
    report["approximate"] = k.approximate;
    report["size_constant"] = check_size(k, samples, mix_seed(seed, 1));
    report["size_constant_refined"] = check_size(k, 2 * samples, mix_seed(seed, 1));
    report["smoothness_constant"] = check_product_smoothness(k, samples, mix_seed(seed, 2));
    report["smoothness_constant_refined"] =
        check_product_smoothness(k, 2 * samples, mix_seed(seed, 2));

    const AnnulusReport ann = check_annulus_cancellation(k, alphas, betas);
    report["annulus_sup"] = ann.sup;
    report["annulus_converged"] = ann.all_converged;
    report["annulus_growth_ratio"] = ann.growth_ratio;
    report["annulus_flag_fail"] =
        !(ann.sup <= c.at("cancellation_threshold").get<double>() && ann.growth_ratio <= 4.0);

    const MixedCancellationReport mixed =
        check_mixed_kernel_cancellation(k, alphas, betas, samples / 20 + 4, mix_seed(seed, 3));
    report["mixed_size1"] = mixed.size1;
    report["mixed_smooth1"] = mixed.smooth1;
    report["mixed_size2"] = mixed.size2;
    report["mixed_smooth2"] = mixed.smooth2;

    const DyadicInterval w{-4, 0};
    const WbczReport wbcz = mixed_wbcz_check(k, {0, 8}, w, 9, 40, mix_seed(seed, 4));
    report["wbcz_size"] = wbcz.size_constant;
    report["wbcz_smoothness"] = wbcz.smoothness_constant;

    const bool pass = !report["annulus_flag_fail"].get<bool>() &&
                      report["size_constant"].get<double>() <=
                          c.at("size_threshold").get<double>() &&
                      ann.all_converged;
    report["pass"] = pass;
    std::ofstream out(out_path(cfg, "kernel_audit.json"));
    out << report.dump(2) << "\n";
    std::cout << "kernel-audit: " << k.name << (pass ? " PASS" : " FAIL") << " (size "
              << format_value(report["size_constant"].get<double>()) << ", annulus sup "
              << format_value(ann.sup) << ")\n";
    if (!ann.all_converged) return 2;
    return pass ? 0 : 1;
}

int cmd_bump_decay(const json& cfg) {
    const json& c = cfg.at("bump_decay");
    std::vector<int> es;
    std::vector<std::int64_t> ms;
    for (const auto& e : c.at("e")) es.push_back(e.get<int>());
    for (const auto& m : c.at("m")) ms.push_back(m.get<std::int64_t>());
    const DecayTable tab = bump_decay_experiment(
        tensor_hilbert_form(), es, ms, c.at("cells").get<std::size_t>());

    CsvWriter csv(out_path(cfg, "bump_decay.csv").string(), config_hash(cfg),
                  "(|S|/|R|)^{1/2+d'} prod (diam(Ri u Si)/|Ri|)^{-(1+d')}",
                  {"e1", "e2", "m1", "m2", "value", "ok"});
    for (const auto& row : tab.rows)
        csv.row_values({static_cast<double>(row.e1), static_cast<double>(row.e2),
                        static_cast<double>(row.m1), static_cast<double>(row.m2), row.value,
                        row.ok ? 1.0 : 0.0});
    CsvWriter fit(out_path(cfg, "bump_decay_fit.csv").string(), config_hash(cfg),
                  "log-log plane fit per axis",
                  {"ecc_slope1", "ecc_slope2", "dist_slope1", "dist_slope2", "r2_axis1",
                   "r2_axis2"});
    fit.row_values({tab.fit.ecc_slope1, tab.fit.ecc_slope2, tab.fit.dist_slope1,
                    tab.fit.dist_slope2, tab.fit.r2_axis1, tab.fit.r2_axis2});

    bool fail = false;
    for (const auto& row : tab.rows) fail = fail || !row.ok;
    if (fail) return 2; // quadrature failure entries
    std::cout << "bump-decay: ecc slopes " << format_value(tab.fit.ecc_slope1) << ", "
              << format_value(tab.fit.ecc_slope2) << "; dist slopes "
              << format_value(tab.fit.dist_slope1) << ", " << format_value(tab.fit.dist_slope2)
              << "; R2 " << format_value(tab.fit.r2_axis1) << ", "
              << format_value(tab.fit.r2_axis2) << "\n";
    const bool pass = tab.fit.ecc_slope1 >= c.at("ecc_slope_min").get<double>() &&
                      tab.fit.ecc_slope2 >= c.at("ecc_slope_min").get<double>() &&
                      tab.fit.dist_slope1 <= c.at("dist_slope_max").get<double>() &&
                      tab.fit.dist_slope2 <= c.at("dist_slope_max").get<double>() &&
                      tab.fit.r2_axis1 >= c.at("r2_min").get<double>() &&
                      tab.fit.r2_axis2 >= c.at("r2_min").get<double>();
    return pass ? 0 : 1;
}

int cmd_reduce(const json& cfg) {
    const json& c = cfg.at("reduce");
    const int res = c.at("resolution").get<int>();
    const int nforms = c.at("forms").get<int>();
    const double threshold = c.at("threshold").get<double>();
    const auto seed = cfg.at("seed").get<std::uint64_t>();
    const TensorBasis basis({{0, 0}, {0, 0}}, res, res);

    CsvWriter csv(out_path(cfg, "reduce.csv").string(), config_hash(cfg),
                  "eight special cancellation families of the reduced form",
                  {"form", "f1", "f2", "f3", "f4", "f5", "f6", "f7", "f8", "second_pass"});
    double worst = 0.0;
    for (int i = 0; i < nforms; ++i) {
        const FiniteBilinearForm l = random_support_preserving_form(basis, mix_seed(seed, i));
        const ReductionResult r = reduce_to_special_cancellation(l);
        const CancellationResiduals res8 = cancellation_residuals(r.reduced);
        const ReductionResult twice = reduce_to_special_cancellation(r.reduced);
        const double second = (twice.reduced.m - r.reduced.m).cwiseAbs().maxCoeff();
        std::vector<double> row{static_cast<double>(i)};
        for (double v : res8.family) row.push_back(v);
        row.push_back(second);
        csv.row_values(row);
        worst = std::max({worst, res8.max(), second});
    }
    std::cout << "reduce: max residual " << format_value(worst) << " over " << nforms
              << " forms (threshold " << threshold << ")\n";
    return worst <= threshold ? 0 : 1;
}

int cmd_weak_type(const json& cfg) {
    const GridSetup g = grid_setup(cfg);
    const json& c = cfg.at("weak_type");
    std::vector<int> ks;
    for (int k = c.at("k_min").get<int>(); k <= c.at("k_max").get<int>(); ++k) ks.push_back(k);
    std::vector<std::int64_t> ns;
    for (const auto& n : c.at("n")) ns.push_back(n.get<std::int64_t>());
    const auto cells = weak_type_experiment(ks, ns, c.at("trials").get<int>(),
                                            cfg.at("seed").get<std::uint64_t>(), g.window, g.res,
                                            g.ambient);
    CsvWriter csv(out_path(cfg, "weak_type.csv").string(), config_hash(cfg),
                  "C (2^{-k} n + 1) ||f||_1 / lambda",
                  {"k", "n", "constant", "normalized", "argmax_trial", "argmax_kind"});
    double worst = 0.0;
    for (const auto& cell : cells) {
        csv.row({std::to_string(cell.k), std::to_string(cell.n), format_value(cell.constant),
                 format_value(cell.normalized), std::to_string(cell.argmax_trial),
                 cell.argmax_kind});
        worst = std::max(worst, cell.normalized);
    }
    std::cout << "weak-type: max normalized constant " << format_value(worst) << " (threshold "
              << c.at("threshold").get<double>() << ")\n";
    return worst <= c.at("threshold").get<double>() ? 0 : 1;
}

int cmd_represent(const json& cfg) {
    const json& c = cfg.at("represent");
    const int res = c.at("resolution").get<int>();
    const int nops = c.at("operators").get<int>();
    const int pairs = c.at("pairs").get<int>();
    const double threshold = c.at("threshold").get<double>();
    const auto seed = cfg.at("seed").get<std::uint64_t>();
    const TensorBasis basis({{0, 0}, {0, 0}}, res, res);

    CsvWriter csv(out_path(cfg, "represent.csv").string(), config_hash(cfg),
                  "nine-term total vs <T f, g>", {"operator", "max_residual"});
    double worst = 0.0;
    for (int i = 0; i < nops; ++i) {
        const FiniteBilinearForm t = random_support_preserving_form(basis, mix_seed(seed, i));
        double local = 0.0;
        for (int p = 0; p < pairs; ++p) {
            Signal2D f(basis.window(), res, res), g(basis.window(), res, res);
            Rng rf(mix_seed(seed, i, p, 0)), rg(mix_seed(seed, i, p, 1));
            for (double& x : f.v) x = rf.normal();
            for (double& x : g.v) x = rg.normal();
            const NineTermDecomposition dec = haar_representation(t, f, g);
            local = std::max(local, std::abs(dec.total() - dec.bilinear_total) /
                                        std::max(1.0, std::abs(dec.bilinear_total)));
        }
        csv.row_values({static_cast<double>(i), local});
        worst = std::max(worst, local);
    }
    std::cout << "represent: max identity residual " << format_value(worst) << " (threshold "
              << threshold << ")\n";
    return worst <= threshold ? 0 : 1;
}

int cmd_t1_limit(const json& cfg) {
    const json& c = cfg.at("t1_limit");
    const int res = c.at("resolution").get<int>();
    const int kmax = c.at("kmax").get<int>();
    const int from_k = c.at("from_k").get<int>();
    const DyadicRectangle w{{0, 0}, {0, 0}};
    const DyadicRectangle s{{2, 1}, {3, 4}};
    const Signal2D f = tensor(haar_function(w.i1, res, s.i1), haar_function(w.i2, res, s.i2));
    const LimitSequence seq = t1_limit(tensor_hilbert_form(), f, s, kmax);

    CsvWriter csv(out_path(cfg, "t1_limit.csv").string(), config_hash(cfg),
                  "|L(f) - Lambda_k| <= C 2^{-delta k}", {"k", "value", "difference", "ratio"});
    for (std::size_t k = 0; k < seq.values.size(); ++k) {
        std::vector<std::string> row{std::to_string(k + 1), format_value(seq.values[k])};
        row.push_back(k < seq.differences.size() ? format_value(seq.differences[k]) : "");
        row.push_back(k >= 1 && k - 1 < seq.ratios.size() ? format_value(seq.ratios[k - 1])
                                                          : "");
        csv.row(row);
    }
    const double worst = seq.max_ratio_tail(from_k);
    std::cout << "t1-limit: max Cauchy ratio beyond k=" << from_k << " is "
              << format_value(worst) << " (threshold "
              << c.at("ratio_threshold").get<double>() << ")\n";
    return worst <= c.at("ratio_threshold").get<double>() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"dyadlab: dyadic bi-parameter singular-integral experiments"};
    app.require_subcommand(1);
    app.fallthrough(); // options may follow the subcommand

    std::string config_path;
    std::vector<std::string> overrides;
    int jobs = 0;
    app.add_option("--config", config_path, "JSON config file");
    app.add_option("--set", overrides, "override config fields (key.path=value)");
    app.add_option("--jobs", jobs, "worker pool size (0 = library default)");

    const char* names[] = {"verify-square-fn", "kernel-audit", "bump-decay", "reduce",
                           "weak-type",        "represent",    "t1-limit"};
    for (const char* n : names) app.add_subcommand(n);

    CLI11_PARSE(app, argc, argv);

    json cfg = default_config();
    try {
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw std::runtime_error("cannot open config " + config_path);
            json user = json::parse(in);
            cfg.merge_patch(user);
        }
        for (const auto& kv : overrides) apply_override(cfg, kv);
        if (jobs > 0) cfg["jobs"] = jobs;
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 3;
    }

#ifdef _OPENMP
    if (cfg.at("jobs").get<int>() > 0) omp_set_num_threads(cfg.at("jobs").get<int>());
#endif

    try {
        if (app.got_subcommand("verify-square-fn")) return cmd_verify_square_fn(cfg);
        if (app.got_subcommand("kernel-audit")) return cmd_kernel_audit(cfg);
        if (app.got_subcommand("bump-decay")) return cmd_bump_decay(cfg);
        if (app.got_subcommand("reduce")) return cmd_reduce(cfg);
        if (app.got_subcommand("weak-type")) return cmd_weak_type(cfg);
        if (app.got_subcommand("represent")) return cmd_represent(cfg);
        if (app.got_subcommand("t1-limit")) return cmd_t1_limit(cfg);
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    }
    return 3;
}
