// Command-line driver: reductions, benchmark ensembles and BER sweeps.
// Data files are byte-reproducible for a fixed seed; timestamps appear only
// in the sibling manifest.json.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "latred/clll.hpp"
#include "latred/io.hpp"
#include "latred/linalg.hpp"
#include "latred/metrics.hpp"
#include "latred/mimo.hpp"
#include "latred/parallel.hpp"
#include "latred/reducer.hpp"
#include "latred/rng.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace latred;

namespace {

struct CommonOpts {
    int n = 4;
    long long count = -1;  // -1: desk-scale default by n
    std::uint64_t seed = 0;
    int n_alpha = 20;
    int n_theta = 30;
    double delta = kDefaultClllDelta;
    int clll_steps = kDefaultPreprocessingSteps;
    bool no_baseline = false;
    int jobs = 1;
    std::string out = "latred_out";
};

void add_grid_flags(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--seed", o.seed, "RNG seed")->envname("LATRED_SEED");
    cmd->add_option("--n-alpha", o.n_alpha, "alpha grid size")->check(CLI::PositiveNumber);
    cmd->add_option("--n-theta", o.n_theta, "theta grid size")->check(CLI::PositiveNumber);
    cmd->add_option("--delta", o.delta, "CLLL reduction parameter in (0.5, 1]");
    cmd->add_option("--clll-steps", o.clll_steps,
                    "preprocessing effort budget in column visits (0 = fully converged)");
    cmd->add_flag("--no-baseline-candidate", o.no_baseline,
                  "exclude the CLLL baseline from the candidate pool");
    cmd->add_option("--jobs", o.jobs, "worker threads (1 = canonical reference)")
        ->envname("LATRED_JOBS")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--out", o.out, "output directory");
}

SearchConfig make_search_config(const CommonOpts& o) {
    SearchConfig cfg;
    cfg.n_alpha = o.n_alpha;
    cfg.n_theta = o.n_theta;
    cfg.clll_delta = o.delta;
    cfg.preprocessing_steps = o.clll_steps;
    cfg.include_baseline_candidate = !o.no_baseline;
    return cfg;
}

json search_config_json(const SearchConfig& cfg, int n) {
    return {{"n_alpha", cfg.n_alpha},
            {"n_theta", cfg.n_theta},
            {"alpha_lo", cfg.alpha_lo},
            {"alpha_hi", cfg.alpha_hi > 0 ? cfg.alpha_hi : n / 2.0},
            {"clll_delta", cfg.clll_delta},
            {"preprocessing_steps", cfg.preprocessing_steps},
            {"include_baseline_candidate", cfg.include_baseline_candidate}};
}

long long default_count(const CommonOpts& o) {
    if (o.count > 0) return o.count;
    return o.n <= 4 ? 10000 : 2000;
}

struct EnsembleRecord {
    double ratio_db = 0.0;
    bool exact_zero = false;
    bool covered = false;
    DetBucket bucket = DetBucket::One;
    double lg_od_clll = 0.0;
    double lg_od_prop = 0.0;
    double lg_odc_clll = 0.0;
    double lg_odc_prop = 0.0;
};

std::vector<EnsembleRecord> run_ensemble(const CommonOpts& o, long long count,
                                         bool identity_ensemble) {
    const SearchConfig cfg = make_search_config(o);
    std::vector<EnsembleRecord> recs(static_cast<std::size_t>(count));
    parallel_for(static_cast<std::size_t>(count), o.jobs, [&](std::size_t m) {
        Rng rng = Rng::substream(o.seed, "chan", {m});
        const ComplexMatrix H = identity_ensemble
                                    ? ComplexMatrix(ComplexMatrix::Identity(o.n, o.n))
                                    : gen_channel(o.n, rng);
        const CLLLResult cl = preprocess(H, cfg);
        const GaussianIntMatrix z_clll = clll_baseline_Z(cl);
        const ReductionResult r = search_prereduced(H, cl, cfg);
        const double ratio = ratio_R(z_clll, r.Z, H);

        EnsembleRecord rec;
        rec.ratio_db = 10.0 * std::log10(ratio);
        rec.exact_zero = ratio == 1.0;
        rec.covered = r.covered;
        rec.bucket = classify_det(r.Z);
        rec.lg_od_clll = std::log10(orthogonality_defect(cl.H0));
        rec.lg_od_prop = std::log10(orthogonality_defect(r.Q));
        rec.lg_odc_clll = std::log10(orthogonality_defect_classical(cl.H0));
        rec.lg_odc_prop = std::log10(orthogonality_defect_classical(r.Q));
        recs[m] = rec;
    });
    return recs;
}

fs::path prepare_out_dir(const std::string& out) {
    fs::path dir(out);
    fs::create_directories(dir);
    return dir;
}

json common_config_json(const CommonOpts& o, long long count) {
    json j = search_config_json(make_search_config(o), o.n);
    j["n"] = o.n;
    j["count"] = count;
    j["jobs"] = o.jobs;
    return j;
}

double coverage_fraction(const std::vector<EnsembleRecord>& recs) {
    std::size_t covered = 0;
    for (const auto& r : recs) covered += r.covered;
    return static_cast<double>(covered) / static_cast<double>(recs.size());
}

int cmd_bench_ratio(const CommonOpts& o, double bin_width) {
    const long long count = default_count(o);
    const fs::path dir = prepare_out_dir(o.out);
    const auto recs = run_ensemble(o, count, false);

    std::vector<double> ratios;
    ratios.reserve(recs.size());
    std::size_t zeros = 0;
    double mean = 0.0;
    for (const auto& r : recs) {
        ratios.push_back(r.ratio_db);
        zeros += r.exact_zero;
        mean += r.ratio_db;
    }
    mean /= static_cast<double>(ratios.size());
    std::vector<double> sorted = ratios;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t h = sorted.size() / 2;
    const double median = sorted.size() % 2 ? sorted[h] : 0.5 * (sorted[h - 1] + sorted[h]);
    const double zero_mass = static_cast<double>(zeros) / static_cast<double>(ratios.size());
    const double coverage = coverage_fraction(recs);

    write_histogram_csv(dir / "ratio_hist.csv", make_histogram(ratios, bin_width));
    std::ostringstream os;
    os << "count,exact_zero_mass,mean_db,median_db,coverage,min_db,max_db\n"
       << count << ',' << format_double(zero_mass) << ',' << format_double(mean) << ','
       << format_double(median) << ',' << format_double(coverage) << ','
       << format_double(sorted.front()) << ',' << format_double(sorted.back()) << '\n';
    write_text_file(dir / "ratio_summary.csv", os.str());

    json cfg = common_config_json(o, count);
    cfg["bin_width_db"] = bin_width;
    write_manifest(dir / "manifest.json", make_manifest("bench-ratio", cfg, o.seed, {}));

    std::cout << "bench-ratio: n=" << o.n << " count=" << count
              << " exact-zero mass=" << 100.0 * zero_mass << "%"
              << " mean=" << mean << " dB"
              << " coverage=" << 100.0 * coverage << "%\n"
              << "wrote " << (dir / "ratio_hist.csv").string() << "\n";
    return 0;
}

int cmd_bench_det(const CommonOpts& o, bool identity_ensemble) {
    const long long count = default_count(o);
    const fs::path dir = prepare_out_dir(o.out);
    const auto recs = run_ensemble(o, count, identity_ensemble);

    constexpr DetBucket kBuckets[] = {DetBucket::One,   DetBucket::Sqrt2,
                                      DetBucket::Two,   DetBucket::Sqrt5,
                                      DetBucket::TwoSqrt2, DetBucket::AboveTwoSqrt2};
    std::size_t counts[6] = {};
    std::size_t covered = 0;
    for (const auto& r : recs) {
        counts[static_cast<int>(r.bucket)]++;
        covered += r.covered;
    }

    std::ostringstream os;
    os << "bucket,count,percent\n";
    for (int b = 0; b < 6; ++b)
        os << to_label(kBuckets[b]) << ',' << counts[b] << ','
           << format_double(100.0 * static_cast<double>(counts[b]) /
                            static_cast<double>(count))
           << '\n';
    os << "coverage," << covered << ','
       << format_double(100.0 * static_cast<double>(covered) / static_cast<double>(count))
       << '\n';
    write_text_file(dir / "det_table.csv", os.str());

    json cfg = common_config_json(o, count);
    cfg["identity_ensemble"] = identity_ensemble;
    write_manifest(dir / "manifest.json", make_manifest("bench-det", cfg, o.seed, {}));

    std::cout << "bench-det: n=" << o.n << " count=" << count << " |det|=1 share="
              << 100.0 * static_cast<double>(counts[0]) / static_cast<double>(count)
              << "% coverage="
              << 100.0 * static_cast<double>(covered) / static_cast<double>(count)
              << "%\nwrote " << (dir / "det_table.csv").string() << "\n";
    return 0;
}

int cmd_bench_od(const CommonOpts& o, double bin_width) {
    const long long count = default_count(o);
    const fs::path dir = prepare_out_dir(o.out);
    const auto recs = run_ensemble(o, count, false);

    std::vector<double> clll_od, clll_odc, prop_od, prop_odc;
    for (const auto& r : recs) {
        clll_od.push_back(r.lg_od_clll);
        clll_odc.push_back(r.lg_odc_clll);
        prop_od.push_back(r.lg_od_prop);
        prop_odc.push_back(r.lg_odc_prop);
    }
    auto write_pair = [&](const fs::path& p, const std::vector<double>& paper,
                          const std::vector<double>& classical) {
        double mn = paper[0], mx = paper[0];
        for (double v : paper) { mn = std::min(mn, v); mx = std::max(mx, v); }
        for (double v : classical) { mn = std::min(mn, v); mx = std::max(mx, v); }
        const double lo = std::floor(mn / bin_width) * bin_width;
        const auto nbins =
            static_cast<std::size_t>(std::floor((mx - lo) / bin_width)) + 1;
        write_histogram2_csv(p, make_histogram_anchored(paper, lo, bin_width, nbins),
                             make_histogram_anchored(classical, lo, bin_width, nbins),
                             "count_classical");
    };
    write_pair(dir / "od_clll_hist.csv", clll_od, clll_odc);
    write_pair(dir / "od_proposed_hist.csv", prop_od, prop_odc);

    json cfg = common_config_json(o, count);
    cfg["bin_width"] = bin_width;
    write_manifest(dir / "manifest.json", make_manifest("bench-od", cfg, o.seed, {}));

    auto median_of = [](std::vector<double> v) {
        std::sort(v.begin(), v.end());
        const std::size_t h = v.size() / 2;
        return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
    };
    std::cout << "bench-od: n=" << o.n << " count=" << count
              << " median lg(od) clll=" << median_of(clll_od)
              << " proposed=" << median_of(prop_od) << "\nwrote "
              << (dir / "od_clll_hist.csv").string() << ", "
              << (dir / "od_proposed_hist.csv").string() << "\n";
    return 0;
}

int cmd_ber(const CommonOpts& o, int transmissions, int qam,
            const std::vector<double>& snr, const std::string& algorithms) {
    SimConfig cfg;
    cfg.n = o.n;
    cfg.snr_points_db = snr;
    cfg.channels = static_cast<int>(o.count > 0 ? o.count : 1000);
    cfg.transmissions_per_channel = transmissions;
    cfg.constellation_order = qam;
    cfg.seed = o.seed;
    cfg.run_clll = algorithms == "both" || algorithms == "clll";
    cfg.run_proposed = algorithms == "both" || algorithms == "proposed";
    cfg.search = make_search_config(o);
    cfg.jobs = o.jobs;

    const fs::path dir = prepare_out_dir(o.out);
    const BerCurve curve = ber_sweep(cfg);

    std::ostringstream os;
    os << "algorithm,snr_db,errors,bits,ber\n";
    for (const auto& s : curve.series)
        for (const auto& p : s.points)
            os << s.algorithm << ',' << format_double(p.snr_db) << ',' << p.errors << ','
               << p.bits << ',' << format_double(p.ber) << '\n';
    write_text_file(dir / "ber_curve.csv", os.str());

    json jc = common_config_json(o, cfg.channels);
    jc["transmissions_per_channel"] = transmissions;
    jc["constellation_order"] = qam;
    jc["snr_points_db"] = snr;
    jc["algorithms"] = algorithms;
    json manifest = make_manifest("ber", jc, o.seed, {});
    manifest["skipped_channels"] = curve.skipped_channels;
    manifest["draw_digest"] = curve.draw_digest_proposed;
    write_manifest(dir / "manifest.json", manifest);

    std::cout << "ber: n=" << cfg.n << " channels=" << cfg.channels << " qam=" << qam
              << " skipped=" << curve.skipped_channels << "\nwrote "
              << (dir / "ber_curve.csv").string() << "\n";
    return 0;
}

int cmd_reduce(const CommonOpts& o, const std::string& in, const std::string& algorithm) {
    const fs::path dir = prepare_out_dir(o.out);
    const ComplexMatrix H = read_matrix(in);
    const SearchConfig cfg = make_search_config(o);
    const CLLLResult cl = preprocess(H, cfg);
    const GaussianIntMatrix z_clll = clll_baseline_Z(cl);

    json result;
    result["algorithm"] = algorithm;
    result["n"] = static_cast<int>(H.rows());
    result["od_input"] = orthogonality_defect(H);
    result["od_input_classical"] = orthogonality_defect_classical(H);

    ComplexMatrix Q;
    GaussianIntMatrix Z;
    if (algorithm == "proposed") {
        const ReductionResult r = search_prereduced(H, cl, cfg);
        Q = r.Q;
        Z = r.Z;
        result["cost"] = r.cost;
        result["ratio_db_vs_clll"] = 10.0 * std::log10(ratio_R(z_clll, r.Z, H));
        result["covered"] = r.covered;
        result["used_fallback"] = r.used_fallback;
        if (r.winner)
            result["winner"] = {{"i", r.winner->i}, {"j", r.winner->j}, {"k", r.winner->k}};
        else
            result["winner"] = nullptr;
    } else {
        Q = cl.H0;
        Z = z_clll;
        result["cost"] = cost_of_Z(Z, gram(H));
        result["ratio_db_vs_clll"] = 0.0;
        result["covered"] = nullptr;
        result["used_fallback"] = false;
        result["winner"] = nullptr;
    }
    result["det_bucket"] = to_label(classify_det(Z));
    result["od_output"] = orthogonality_defect(Q);
    result["od_output_classical"] = orthogonality_defect_classical(Q);
    result["Q"] = matrix_to_json(Q);
    result["Z"] = gaussian_matrix_to_json(Z);

    json cfgj = search_config_json(cfg, static_cast<int>(H.rows()));
    cfgj["algorithm"] = algorithm;
    cfgj["in"] = in;
    result["manifest"] = make_manifest("reduce", cfgj, o.seed, {fs::path(in)});

    write_text_file(dir / "result.json", result.dump(2) + "\n");
    std::cout << "reduce: algorithm=" << algorithm << " cost=" << result["cost"]
              << " det_bucket=" << result["det_bucket"] << "\nwrote "
              << (dir / "result.json").string() << "\n";
    return 0;
}

int cmd_flops(int n, int n_alpha, int n_theta) {
    const FlopEstimate f = flop_estimate(n, n_alpha, n_theta);
    std::cout << "FLOP model (complex flops), N=" << n << ", N_alpha=" << n_alpha
              << ", N_theta=" << n_theta << "\n"
              << "  P_Z  (rounding + rank check)   8/3 N^3       = " << f.pz_flops << "\n"
              << "  P_H  (inverting Q0 and Z)      N^3 + 4/3 N^3 = " << f.ph_flops << "\n"
              << "  Round                          5 N^3         = " << f.round_flops << "\n"
              << "  Full sweep                     5 Nt Na N^4   = " << f.total_flops << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"latred: complex lattice basis reduction toolkit"};
    app.require_subcommand(1);

    CommonOpts o;

    auto* reduce = app.add_subcommand("reduce", "factor one matrix as H = Q Z");
    std::string in_file, algorithm = "proposed";
    reduce->add_option("--in", in_file, "matrix file (.json or .csv)")->required();
    reduce->add_option("--algorithm", algorithm, "clll or proposed")
        ->check(CLI::IsMember({"clll", "proposed"}));
    add_grid_flags(reduce, o);

    auto* ratio = app.add_subcommand("bench-ratio", "10 lg R histogram over an ensemble");
    double ratio_bin = 0.25;
    ratio->add_option("--n", o.n, "matrix dimension")->check(CLI::PositiveNumber);
    ratio->add_option("--count", o.count, "ensemble size");
    ratio->add_option("--bin-width", ratio_bin, "histogram bin width in dB");
    add_grid_flags(ratio, o);

    auto* det = app.add_subcommand("bench-det", "determinant bucket and coverage table");
    bool identity_ensemble = false;
    det->add_option("--n", o.n, "matrix dimension")->check(CLI::PositiveNumber);
    det->add_option("--count", o.count, "ensemble size");
    det->add_flag("--identity-ensemble", identity_ensemble,
                  "debug: run on identity matrices only");
    add_grid_flags(det, o);

    auto* od = app.add_subcommand("bench-od", "lg(od) histograms for CLLL and proposed");
    double od_bin = 0.05;
    od->add_option("--n", o.n, "matrix dimension")->check(CLI::PositiveNumber);
    od->add_option("--count", o.count, "ensemble size");
    od->add_option("--bin-width", od_bin, "histogram bin width in lg units");
    add_grid_flags(od, o);

    auto* ber = app.add_subcommand("ber", "Monte-Carlo LR-aided ZF BER sweep");
    int transmissions = 100;
    int qam = 4;
    std::vector<double> snr = {0, 4, 8, 12, 16, 20, 24, 28, 32, 36, 40};
    std::string algorithms = "both";
    ber->add_option("--n", o.n, "matrix dimension")->check(CLI::PositiveNumber);
    ber->add_option("--count", o.count, "number of channels");
    ber->add_option("--transmissions", transmissions, "transmissions per channel");
    ber->add_option("--qam", qam, "constellation order")->check(CLI::IsMember({4, 16}));
    ber->add_option("--snr", snr, "SNR points in dB (comma separated)")->delimiter(',');
    ber->add_option("--algorithms", algorithms, "both, clll or proposed")
        ->check(CLI::IsMember({"both", "clll", "proposed"}));
    add_grid_flags(ber, o);

    auto* flops = app.add_subcommand("flops", "FLOP-count model report");
    flops->add_option("--n", o.n, "matrix dimension")->check(CLI::PositiveNumber);
    flops->add_option("--n-alpha", o.n_alpha, "alpha grid size")->check(CLI::PositiveNumber);
    flops->add_option("--n-theta", o.n_theta, "theta grid size")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (reduce->parsed()) return cmd_reduce(o, in_file, algorithm);
        if (ratio->parsed()) return cmd_bench_ratio(o, ratio_bin);
        if (det->parsed()) return cmd_bench_det(o, identity_ensemble);
        if (od->parsed()) return cmd_bench_od(o, od_bin);
        if (ber->parsed()) return cmd_ber(o, transmissions, qam, snr, algorithms);
        if (flops->parsed()) return cmd_flops(o.n, o.n_alpha, o.n_theta);
    } catch (const InvalidInputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
