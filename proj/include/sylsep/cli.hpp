#pragma once

// Command-line front end: one subcommand per pipeline stage.
//
// Exit status: 0 success, 1 I/O or file-format failure, 2 invalid parameters,
// 3 some syllables could not be pooled.

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "sylsep/cepstral.hpp"
#include "sylsep/dataset.hpp"
#include "sylsep/detail/bytes.hpp"
#include "sylsep/error.hpp"
#include "sylsep/preprocess.hpp"
#include "sylsep/separability.hpp"
#include "sylsep/svg.hpp"
#include "sylsep/sylf.hpp"
#include "sylsep/wav.hpp"

namespace sylsep::cli {

enum ExitCode : int { kOk = 0, kIo = 1, kParameter = 2, kPartial = 3 };

struct PreprocessArgs {
    std::string input;
    std::string output;
    PreprocessConfig config;
};

struct FeaturesArgs {
    std::string input;
    std::string output;
    std::string kind = "mfcc";
    bool no_c0 = false;
    CepstralConfig config;
};

struct PoolArgs {
    std::string features;
    std::string annotations;
    std::string output;
    std::string recording;
    std::uint32_t stretch = 8;
};

struct AnalyzeArgs {
    std::string embeddings;
    std::string report;
    std::string report_csv;
    std::string scatter;
    std::string scatter_svg;
    std::string covariance = "pooled_within";
    bool no_pca = false;
    AnalyzeOptions options;
};

struct SynthArgs {
    std::size_t classes = 5;
    std::vector<std::uint32_t> counts{135, 97, 92, 9, 87};
    std::uint64_t seed = 1;
    std::string wav;
    std::string annotations;
};

namespace detail_cli {

inline void require(bool ok, const std::string& message) {
    if (!ok) throw ParameterError(message);
}

inline int cmd_preprocess(const PreprocessArgs& a, std::ostream& err) {
    require(a.config.stretch_factor >= 1, "--stretch must be a positive integer");
    require(a.config.target_rate_hz >= 8000, "--target-rate must be at least 8000");
    require(a.config.highpass_cutoff_hz > 0.0, "--highpass-hz must be positive");
    require(a.config.noise_threshold_db >= -120.0 && a.config.noise_threshold_db <= 0.0,
            "--noise-threshold-db must lie in [-120, 0]");
    require(a.config.noise_reduction_db >= 0.0, "--noise-reduction-db must be nonnegative");
    const auto clip = read_wav(a.input);
    const auto result = preprocess_pipeline(clip, a.config);
    if (result.gate_skipped) err << "warning: input shorter than one noise-gate window; gate not applied\n";
    write_wav(result.clip, a.output);
    return kOk;
}

inline int cmd_features(const FeaturesArgs& a, std::ostream&) {
    CepstralConfig cfg = a.config;
    if (a.kind == "mfcc") cfg.kind = FilterScale::mel;
    else if (a.kind == "lfcc") cfg.kind = FilterScale::linear;
    else throw ParameterError("--kind must be mfcc or lfcc, got '" + a.kind + "'");
    require(cfg.fft_size >= 2, "--fft must be at least 2");
    require(cfg.hop >= 1, "--hop must be positive");
    require(cfg.pre_emphasis >= 0.0 && cfg.pre_emphasis < 1.0, "--pre-emphasis must lie in [0, 1)");
    cfg.include_c0 = !a.no_c0;
    const auto clip = read_wav(a.input);
    const auto fm = cepstral_features(clip, cfg);
    write_frames(fm, a.kind, a.output);
    return kOk;
}

inline int cmd_pool(const PoolArgs& a, std::ostream& err) {
    require(a.stretch >= 1, "--stretch must be a positive integer");
    const auto file = read_frames(a.features);
    auto anns = parse_annotations(sylsep::detail::read_text(a.annotations));
    if (!a.recording.empty()) std::erase_if(anns, [&](const auto& x) { return x.recording_id != a.recording; });
    const auto pooled = pool_syllables(file.frames, anns, a.stretch);
    sylsep::detail::write_text(a.output, format_embeddings(pooled.embeddings, file.frames.dim));
    for (const auto& e : pooled.errors) err << "error: syllable '" << e.syllable_id << "': " << e.message << '\n';
    if (!pooled.errors.empty()) {
        err << pooled.errors.size() << " of " << anns.size() << " syllables dropped\n";
        return kPartial;
    }
    return kOk;
}

inline int cmd_analyze(AnalyzeArgs a, std::ostream& out) {
    if (a.covariance == "pooled_within") a.options.covariance = CovarianceKind::pooled_within;
    else if (a.covariance == "global") a.options.covariance = CovarianceKind::global;
    else throw ParameterError("--covariance must be pooled_within or global");
    a.options.pca_pre = !a.no_pca;
    require(a.options.k >= 1, "--lda-dims must be positive");

    const auto embs = parse_embeddings(sylsep::detail::read_text(a.embeddings));
    const auto result = analyze(embs, a.options);
    const auto text = format_report(result.report);
    if (a.report.empty()) out << text;
    else sylsep::detail::write_text(a.report, text);
    if (!a.report_csv.empty()) sylsep::detail::write_text(a.report_csv, format_report_csv(result.report));

    auto coord = [&](std::size_t i, Eigen::Index j) {
        return j < result.projected.cols() ? result.projected(static_cast<Eigen::Index>(i), j) : 0.0;
    };
    if (!a.scatter.empty()) {
        std::string csv_text = "syllable_id,label,d1,d2\n";
        for (std::size_t i = 0; i < embs.size(); ++i)
            csv_text += embs[i].syllable_id + ',' + embs[i].label + ',' + csv::format_g9(coord(i, 0)) + ',' +
                        csv::format_g9(coord(i, 1)) + '\n';
        sylsep::detail::write_text(a.scatter, csv_text);
    }
    if (!a.scatter_svg.empty()) {
        std::vector<ScatterPoint> pts;
        for (std::size_t i = 0; i < embs.size(); ++i) pts.push_back({coord(i, 0), coord(i, 1), result.data.labels[i]});
        sylsep::detail::write_text(a.scatter_svg, render_scatter_svg(pts, result.data.class_labels));
    }
    return kOk;
}

inline int cmd_synth(const SynthArgs& a, std::ostream&) {
    if (a.classes != a.counts.size())
        throw ParameterError("--classes is " + std::to_string(a.classes) + " but --counts lists " +
                             std::to_string(a.counts.size()) + " values");
    const auto ds = synthesize_dataset(a.classes, a.counts, a.seed);
    write_wav(ds.clip, a.wav);
    sylsep::detail::write_text(a.annotations, format_annotations(ds.annotations));
    return kOk;
}

}  // namespace detail_cli

/// Runs the CLI on argv-style arguments (args[0] is the program name).
inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"Syllable separability toolkit: preprocessing, cepstral features, pooling and LDA/silhouette analysis"};
    app.require_subcommand(1);
    app.allow_extras(false);

    PreprocessArgs pre;
    auto* sp = app.add_subcommand("preprocess", "Noise gate, high-pass, slow down and resample a WAV file");
    sp->add_option("--input", pre.input, "Input WAV")->required();
    sp->add_option("--output", pre.output, "Output WAV (32-bit float)")->required();
    sp->add_option("--stretch", pre.config.stretch_factor, "Slow-down factor")->capture_default_str();
    sp->add_option("--highpass-hz", pre.config.highpass_cutoff_hz, "High-pass cutoff on the original timeline")
        ->capture_default_str();
    sp->add_option("--noise-threshold-db", pre.config.noise_threshold_db, "Gate threshold, dBFS")->capture_default_str();
    sp->add_option("--noise-reduction-db", pre.config.noise_reduction_db, "Attenuation of gated bins, dB")
        ->capture_default_str();
    sp->add_option("--target-rate", pre.config.target_rate_hz, "Output sample rate, Hz")->capture_default_str();

    FeaturesArgs feat;
    auto* sf = app.add_subcommand("features", "Compute MFCC or LFCC frames and write a SYLF file");
    sf->add_option("--input", feat.input, "Input WAV")->required();
    sf->add_option("--output", feat.output, "Output SYLF file")->required();
    sf->add_option("--kind", feat.kind, "mfcc or lfcc")->capture_default_str();
    sf->add_option("--fft", feat.config.fft_size, "FFT window, samples")->capture_default_str();
    sf->add_option("--hop", feat.config.hop, "Hop, samples")->capture_default_str();
    sf->add_option("--coeffs", feat.config.num_coeffs, "Cepstral coefficients kept")->capture_default_str();
    sf->add_option("--filters", feat.config.num_filters, "Triangular filters")->capture_default_str();
    sf->add_option("--fmin", feat.config.fmin_hz, "Lowest filterbank edge, Hz")->capture_default_str();
    sf->add_option("--fmax", feat.config.fmax_hz, "Highest filterbank edge, Hz")->capture_default_str();
    sf->add_option("--pre-emphasis", feat.config.pre_emphasis, "Pre-emphasis coefficient (0 disables)")->capture_default_str();
    sf->add_flag("--no-c0", feat.no_c0, "Drop c0 and keep coefficients 1..coeffs");

    PoolArgs pool;
    auto* so = app.add_subcommand("pool", "Mean-pool SYLF frames per annotated syllable");
    so->add_option("--features", pool.features, "Input SYLF file")->required();
    so->add_option("--annotations", pool.annotations, "Annotation CSV")->required();
    so->add_option("--output", pool.output, "Output embedding CSV")->required();
    so->add_option("--stretch", pool.stretch, "Slow-down factor applied to annotation times")->capture_default_str();
    so->add_option("--recording", pool.recording, "Only pool annotations of this recording_id");

    AnalyzeArgs an;
    auto* sa = app.add_subcommand("analyze", "LDA projection and Mahalanobis silhouette report");
    sa->add_option("--embeddings", an.embeddings, "Embedding CSV")->required();
    sa->add_option("--lda-dims", an.options.k, "Number of discriminant directions")->capture_default_str();
    sa->add_option("--bootstrap", an.options.bootstrap_n, "Bootstrap resamples (0 disables intervals)")
        ->capture_default_str();
    sa->add_option("--seed", an.options.seed, "Bootstrap seed")->capture_default_str();
    sa->add_option("--gamma-lda", an.options.gamma_lda, "LDA shrinkage")->capture_default_str();
    sa->add_option("--gamma-cov", an.options.gamma_cov, "Mahalanobis covariance shrinkage")->capture_default_str();
    sa->add_option("--covariance", an.covariance, "pooled_within or global")->capture_default_str();
    sa->add_flag("--no-pca", an.no_pca, "Skip PCA pre-reduction");
    sa->add_option("--report", an.report, "Report text file (stdout if omitted)");
    sa->add_option("--report-csv", an.report_csv, "Report CSV file");
    sa->add_option("--scatter", an.scatter, "Scatter CSV (first two directions)");
    sa->add_option("--scatter-svg", an.scatter_svg, "Scatter SVG");

    SynthArgs syn;
    auto* ss = app.add_subcommand("synth", "Generate a synthetic chirp recording with annotations");
    ss->add_option("--classes", syn.classes, "Number of classes")->capture_default_str();
    ss->add_option("--counts", syn.counts, "Syllables per class, comma separated")->delimiter(',')->capture_default_str();
    ss->add_option("--seed", syn.seed, "Generator seed")->capture_default_str();
    ss->add_option("--wav", syn.wav, "Output WAV")->required();
    ss->add_option("--annotations", syn.annotations, "Output annotation CSV")->required();

    std::vector<const char*> argv;
    for (const auto& s : args) argv.push_back(s.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kParameter;
    }

    try {
        if (sp->parsed()) return detail_cli::cmd_preprocess(pre, err);
        if (sf->parsed()) return detail_cli::cmd_features(feat, err);
        if (so->parsed()) return detail_cli::cmd_pool(pool, err);
        if (sa->parsed()) return detail_cli::cmd_analyze(an, out);
        if (ss->parsed()) return detail_cli::cmd_synth(syn, err);
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kIo;
    } catch (const FormatError& e) {
        err << "error: " << e.what() << '\n';
        return kIo;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kParameter;
    }
    return kParameter;
}

inline int run(int argc, char** argv) { return run(std::vector<std::string>(argv, argv + argc)); }

}  // namespace sylsep::cli
