#pragma once

// Separability of labelled embeddings: LDA projection, Mahalanobis distances
// under a pooled covariance, per-sample silhouettes, and stratified bootstrap
// confidence intervals for the mean silhouettes.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "sylsep/dataset.hpp"
#include "sylsep/error.hpp"

namespace sylsep {

/// Embeddings as a dense matrix plus compact class indices. Classes are
/// ordered by label (lexicographic), so the layout does not depend on input
/// order.
struct LabelledMatrix {
    Eigen::MatrixXd x;                     // n x dim
    std::vector<int> labels;               // n, values in [0, class_labels.size())
    std::vector<std::string> class_labels;
    std::vector<std::string> sample_ids;

    [[nodiscard]] std::size_t num_classes() const { return class_labels.size(); }
};

inline LabelledMatrix to_matrix(const std::vector<SyllableEmbedding>& embs) {
    if (embs.empty()) throw ValidationError("no embeddings given");
    const std::size_t dim = embs.front().vector.size();
    if (dim == 0) throw ValidationError("embeddings have zero dimension");
    std::map<std::string, int> index;
    for (const auto& e : embs) index.emplace(e.label, 0);
    LabelledMatrix m;
    for (auto& [label, idx] : index) {
        idx = static_cast<int>(m.class_labels.size());
        m.class_labels.push_back(label);
    }
    m.x.resize(static_cast<Eigen::Index>(embs.size()), static_cast<Eigen::Index>(dim));
    for (std::size_t i = 0; i < embs.size(); ++i) {
        if (embs[i].vector.size() != dim)
            throw ValidationError("embedding '" + embs[i].syllable_id + "' has dimension " +
                                  std::to_string(embs[i].vector.size()) + ", expected " + std::to_string(dim));
        for (std::size_t j = 0; j < dim; ++j) {
            if (!std::isfinite(embs[i].vector[j]))
                throw ValidationError("embedding '" + embs[i].syllable_id + "' has a non-finite entry");
            m.x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = embs[i].vector[j];
        }
        m.labels.push_back(index.at(embs[i].label));
        m.sample_ids.push_back(embs[i].syllable_id);
    }
    return m;
}

namespace sep_detail {

inline std::vector<std::size_t> class_counts(std::span<const int> labels, std::size_t num_classes) {
    std::vector<std::size_t> counts(num_classes, 0);
    for (int l : labels) {
        if (l < 0 || static_cast<std::size_t>(l) >= num_classes) throw ValidationError("label index out of range");
        ++counts[static_cast<std::size_t>(l)];
    }
    return counts;
}

// Within-class scatter divided by `divisor`.
inline Eigen::MatrixXd within_scatter(const Eigen::MatrixXd& x, std::span<const int> labels, std::size_t num_classes,
                                      double divisor) {
    const auto counts = class_counts(labels, num_classes);
    Eigen::MatrixXd means = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(num_classes), x.cols());
    for (Eigen::Index i = 0; i < x.rows(); ++i) means.row(labels[static_cast<std::size_t>(i)]) += x.row(i);
    for (std::size_t k = 0; k < num_classes; ++k) {
        if (counts[k] > 0) means.row(static_cast<Eigen::Index>(k)) /= static_cast<double>(counts[k]);
    }
    Eigen::MatrixXd centered = x;
    for (Eigen::Index i = 0; i < x.rows(); ++i) centered.row(i) -= means.row(labels[static_cast<std::size_t>(i)]);
    Eigen::MatrixXd s = centered.transpose() * centered;
    return s / divisor;
}

// (1 - gamma) S + gamma (trace(S) / d) I
inline Eigen::MatrixXd shrink(const Eigen::MatrixXd& s, double gamma) {
    const auto d = s.rows();
    Eigen::MatrixXd out = (1.0 - gamma) * s;
    out.diagonal().array() += gamma * s.trace() / static_cast<double>(d);
    return out;
}

// Cholesky that rejects matrices which are not numerically positive-definite.
inline Eigen::LLT<Eigen::MatrixXd> checked_cholesky(const Eigen::MatrixXd& s, const std::string& what) {
    Eigen::LLT<Eigen::MatrixXd> llt(s);
    if (llt.info() != Eigen::Success)
        throw NumericalError(what + " is not positive-definite; increase the shrinkage gamma");
    const Eigen::VectorXd diag = Eigen::MatrixXd(llt.matrixL()).diagonal();
    const double hi = diag.maxCoeff(), lo = diag.minCoeff();
    if (!(lo > 0.0) || lo * lo < hi * hi * 1e-14 || !std::isfinite(hi))
        throw NumericalError(what + " is numerically singular; increase the shrinkage gamma");
    return llt;
}

}  // namespace sep_detail

struct LdaOptions {
    std::size_t k = 4;
    double gamma = 1e-3;
    bool pca_pre = true;
};

struct LdaModel {
    Eigen::VectorXd mean;            // dim
    Eigen::MatrixXd projection;      // dim x k, columns in descending eigenvalue order
    std::vector<double> eigenvalues; // k, descending, clamped at zero
    std::vector<std::string> class_labels;
    double gamma = 0.0;
    std::optional<std::size_t> pca_rank;

    [[nodiscard]] std::size_t dim() const { return static_cast<std::size_t>(projection.rows()); }
    [[nodiscard]] std::size_t k() const { return static_cast<std::size_t>(projection.cols()); }
};

/// Fits LDA. With pca_pre the centred data is first reduced to its leading
/// min(dim, n - c) principal directions. Sw is the pooled within-class
/// covariance (divisor n - c), Sb = sum_k n_k (mu_k - mu)(mu_k - mu)^T / n, and
/// Sb w = lambda Sw' w is solved by Cholesky whitening of the shrunk Sw'.
/// Columns satisfy w^T Sw' w = 1 in the (reduced) fitting space, and each
/// column's largest-magnitude entry is made positive.
inline LdaModel fit_lda(const LabelledMatrix& data, const LdaOptions& opt = {}) {
    const auto n = static_cast<std::size_t>(data.x.rows());
    const auto d = static_cast<std::size_t>(data.x.cols());
    const std::size_t c = data.num_classes();
    if (c < 2) throw ValidationError("LDA needs at least 2 classes, got " + std::to_string(c));
    if (data.labels.size() != n) throw ValidationError("LDA: label count does not match sample count");
    const auto counts = sep_detail::class_counts(data.labels, c);
    for (std::size_t k = 0; k < c; ++k) {
        if (counts[k] == 0) throw ValidationError("LDA: class '" + data.class_labels[k] + "' has no samples");
    }
    if (opt.k < 1 || opt.k > c - 1)
        throw ParameterError("LDA: requested " + std::to_string(opt.k) + " directions but at most " +
                             std::to_string(c - 1) + " exist for " + std::to_string(c) + " classes");
    if (!(opt.gamma >= 0.0 && opt.gamma <= 1.0)) throw ParameterError("LDA: gamma must lie in [0, 1]");
    if (n <= c) throw NumericalError("LDA: no within-class degrees of freedom (n - c = 0)");

    LdaModel model;
    model.class_labels = data.class_labels;
    model.gamma = opt.gamma;
    model.mean = data.x.colwise().mean().transpose();
    const Eigen::MatrixXd centered = data.x.rowwise() - model.mean.transpose();

    Eigen::MatrixXd basis;  // d x r, orthonormal columns; empty means identity
    Eigen::MatrixXd z;
    if (opt.pca_pre) {
        const std::size_t r = std::min(d, n - c);
        Eigen::BDCSVD<Eigen::MatrixXd> svd(centered, Eigen::ComputeThinV);
        basis = svd.matrixV().leftCols(static_cast<Eigen::Index>(r));
        z = centered * basis;
        model.pca_rank = r;
    } else {
        z = centered;
    }

    const Eigen::MatrixXd sw = sep_detail::within_scatter(z, data.labels, c, static_cast<double>(n - c));
    Eigen::MatrixXd sb = Eigen::MatrixXd::Zero(z.cols(), z.cols());
    {
        Eigen::MatrixXd means = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(c), z.cols());
        for (Eigen::Index i = 0; i < z.rows(); ++i) means.row(data.labels[static_cast<std::size_t>(i)]) += z.row(i);
        for (std::size_t k = 0; k < c; ++k) {
            const Eigen::RowVectorXd mk = means.row(static_cast<Eigen::Index>(k)) / static_cast<double>(counts[k]);
            sb += static_cast<double>(counts[k]) * mk.transpose() * mk;
        }
        sb /= static_cast<double>(n);
    }

    const auto llt = sep_detail::checked_cholesky(sep_detail::shrink(sw, opt.gamma), "shrunk within-class scatter");
    const Eigen::MatrixXd lower = llt.matrixL();
    // a = L^-1 Sb L^-T
    Eigen::MatrixXd a = lower.triangularView<Eigen::Lower>().solve(sb);
    a = lower.triangularView<Eigen::Lower>().solve(a.transpose()).transpose();
    a = 0.5 * (a + a.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(a);
    if (eig.info() != Eigen::Success) throw NumericalError("LDA: eigen-decomposition failed");

    const auto dim_fit = static_cast<std::size_t>(a.rows());
    std::vector<std::size_t> order(dim_fit);
    std::iota(order.begin(), order.end(), 0);
    const Eigen::VectorXd& vals = eig.eigenvalues();
    std::stable_sort(order.begin(), order.end(), [&](std::size_t p, std::size_t q) {
        return vals(static_cast<Eigen::Index>(p)) > vals(static_cast<Eigen::Index>(q));
    });

    Eigen::MatrixXd v(a.rows(), static_cast<Eigen::Index>(opt.k));
    for (std::size_t j = 0; j < opt.k; ++j) {
        v.col(static_cast<Eigen::Index>(j)) = eig.eigenvectors().col(static_cast<Eigen::Index>(order[j]));
        model.eigenvalues.push_back(std::max(0.0, vals(static_cast<Eigen::Index>(order[j]))));
    }
    // w = L^-T v
    const Eigen::MatrixXd w_fit = lower.transpose().triangularView<Eigen::Upper>().solve(v);
    model.projection = opt.pca_pre ? Eigen::MatrixXd(basis * w_fit) : w_fit;

    for (Eigen::Index j = 0; j < model.projection.cols(); ++j) {
        Eigen::Index arg = 0;
        model.projection.col(j).cwiseAbs().maxCoeff(&arg);
        if (model.projection(arg, j) < 0.0) model.projection.col(j) *= -1.0;
    }
    return model;
}

inline LdaModel fit_lda(const std::vector<SyllableEmbedding>& embs, const LdaOptions& opt = {}) {
    return fit_lda(to_matrix(embs), opt);
}

/// Rows of (x - mean) W. An empty input gives an empty n x k result.
inline Eigen::MatrixXd project(const LdaModel& model, const Eigen::MatrixXd& vectors) {
    if (vectors.rows() == 0) return Eigen::MatrixXd(0, model.projection.cols());
    if (static_cast<std::size_t>(vectors.cols()) != model.dim())
        throw ParameterError("project: vectors have dimension " + std::to_string(vectors.cols()) + ", model expects " +
                             std::to_string(model.dim()));
    return (vectors.rowwise() - model.mean.transpose()) * model.projection;
}

enum class CovarianceKind { pooled_within, global };

inline const char* to_string(CovarianceKind k) { return k == CovarianceKind::global ? "global" : "pooled_within"; }

struct CovarianceEstimate {
    Eigen::MatrixXd covariance;
    Eigen::MatrixXd inverse;
};

/// Pooled within-class covariance (divisor n - c) or, for `global`, the
/// covariance of all samples (divisor n - 1); shrunk like fit_lda, inverted via
/// Cholesky.
inline CovarianceEstimate pooled_covariance(const Eigen::MatrixXd& x, std::span<const int> labels, std::size_t num_classes,
                                            double gamma, CovarianceKind kind = CovarianceKind::pooled_within) {
    const auto n = static_cast<std::size_t>(x.rows());
    if (labels.size() != n) throw ValidationError("covariance: label count does not match sample count");
    if (!(gamma >= 0.0 && gamma <= 1.0)) throw ParameterError("covariance: gamma must lie in [0, 1]");
    if (x.cols() == 0) throw ParameterError("covariance: zero-dimensional samples");
    Eigen::MatrixXd s;
    if (kind == CovarianceKind::pooled_within) {
        const auto counts = sep_detail::class_counts(labels, num_classes);
        const auto present = static_cast<std::size_t>(std::count_if(counts.begin(), counts.end(), [](auto v) { return v > 0; }));
        if (n <= present) throw NumericalError("covariance: no within-class degrees of freedom");
        s = sep_detail::within_scatter(x, labels, num_classes, static_cast<double>(n - present));
    } else {
        if (n < 2) throw NumericalError("covariance: need at least two samples");
        const Eigen::MatrixXd centered = x.rowwise() - x.colwise().mean();
        s = centered.transpose() * centered / static_cast<double>(n - 1);
    }
    CovarianceEstimate est;
    est.covariance = sep_detail::shrink(s, gamma);
    const auto llt = sep_detail::checked_cholesky(est.covariance, "covariance");
    est.inverse = llt.solve(Eigen::MatrixXd::Identity(x.cols(), x.cols()));
    est.inverse = 0.5 * (est.inverse + est.inverse.transpose()).eval();
    return est;
}

/// sqrt((x - y)^T inv_cov (x - y)).
inline double mahalanobis(const Eigen::VectorXd& x, const Eigen::VectorXd& y, const Eigen::MatrixXd& inv_cov) {
    const Eigen::VectorXd d = x - y;
    return std::sqrt(std::max(0.0, d.dot(inv_cov * d)));
}

/// All pairwise Mahalanobis distances: exactly symmetric, zero diagonal.
/// Computed by whitening with the Cholesky factor of inv_cov.
inline Eigen::MatrixXd mahalanobis_matrix(const Eigen::MatrixXd& x, const Eigen::MatrixXd& inv_cov) {
    const auto llt = sep_detail::checked_cholesky(inv_cov, "inverse covariance");
    const Eigen::MatrixXd white = x * Eigen::MatrixXd(llt.matrixL());
    const Eigen::Index n = x.rows();
    Eigen::MatrixXd dist = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index i = j + 1; i < n; ++i) {
            const double v = (white.row(i) - white.row(j)).norm();
            dist(i, j) = v;
            dist(j, i) = v;
        }
    }
    return dist;
}

/// Silhouette of every sample given a distance accessor dist(i, j):
/// a = mean distance to the other members of its cluster, b = smallest mean
/// distance to another cluster, s = (b - a) / max(a, b). Singletons and
/// a = b = 0 score 0. Labels must lie in [0, num_classes).
template <typename Distance>
std::vector<double> silhouettes_with(std::span<const int> labels, std::size_t num_classes, Distance&& dist) {
    const std::size_t n = labels.size();
    const auto counts = sep_detail::class_counts(labels, num_classes);
    if (std::count_if(counts.begin(), counts.end(), [](auto v) { return v > 0; }) < 2)
        throw ValidationError("silhouettes need at least 2 clusters");
    std::vector<double> s(n, 0.0), sums(num_classes);
    for (std::size_t i = 0; i < n; ++i) {
        const auto own = static_cast<std::size_t>(labels[i]);
        if (counts[own] < 2) continue;
        std::fill(sums.begin(), sums.end(), 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i) sums[static_cast<std::size_t>(labels[j])] += dist(i, j);
        }
        const double a = sums[own] / static_cast<double>(counts[own] - 1);
        double b = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < num_classes; ++k) {
            if (k != own && counts[k] > 0) b = std::min(b, sums[k] / static_cast<double>(counts[k]));
        }
        const double m = std::max(a, b);
        s[i] = m > 0.0 ? (b - a) / m : 0.0;
    }
    return s;
}

/// Silhouettes from a full n x n distance matrix with arbitrary integer labels.
inline std::vector<double> silhouettes(const Eigen::MatrixXd& distance, std::span<const int> labels) {
    const auto n = labels.size();
    if (static_cast<std::size_t>(distance.rows()) != n || static_cast<std::size_t>(distance.cols()) != n)
        throw ValidationError("silhouettes: distance matrix does not match label count");
    std::map<int, int> remap;
    for (int l : labels) remap.emplace(l, 0);
    int next = 0;
    for (auto& [label, idx] : remap) idx = next++;
    std::vector<int> compact(n);
    for (std::size_t i = 0; i < n; ++i) compact[i] = remap.at(labels[i]);
    return silhouettes_with(compact, remap.size(), [&distance](std::size_t i, std::size_t j) {
        return distance(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    });
}

// ---------------------------------------------------------------------------
// analyze

struct AnalyzeOptions {
    std::size_t k = 4;
    double gamma_lda = 1e-3;
    double gamma_cov = 1e-6;
    bool pca_pre = true;
    CovarianceKind covariance = CovarianceKind::pooled_within;
    std::size_t bootstrap_n = 1000;
    std::uint64_t seed = 42;
    double confidence = 0.95;
};

struct Interval {
    double low;
    double high;
};

struct ScoreSummary {
    double mean = 0.0;
    std::optional<Interval> ci;
};

struct ClassSummary {
    std::string label;
    std::size_t num_samples = 0;
    ScoreSummary score;
};

struct SeparabilityReport {
    AnalyzeOptions options;
    std::optional<std::size_t> pca_rank;
    std::size_t dim = 0;
    std::vector<double> eigenvalues;
    std::vector<ClassSummary> classes;
    ScoreSummary overall;         // unweighted mean over samples
    ScoreSummary class_balanced;  // mean of the per-class means
};

struct AnalysisResult {
    LdaModel model;
    Eigen::MatrixXd projected;        // n x k
    CovarianceEstimate covariance;
    std::vector<double> silhouettes;  // per sample, input order
    LabelledMatrix data;
    SeparabilityReport report;
};

namespace sep_detail {

struct Means {
    std::vector<double> per_class;
    double overall;
    double balanced;
};

inline Means summarize(std::span<const double> s, std::span<const int> labels, std::size_t c) {
    Means m{std::vector<double>(c, 0.0), 0.0, 0.0};
    std::vector<std::size_t> counts(c, 0);
    for (std::size_t i = 0; i < s.size(); ++i) {
        m.per_class[static_cast<std::size_t>(labels[i])] += s[i];
        ++counts[static_cast<std::size_t>(labels[i])];
        m.overall += s[i];
    }
    m.overall /= static_cast<double>(s.size());
    for (std::size_t k = 0; k < c; ++k) {
        m.per_class[k] /= static_cast<double>(counts[k]);
        m.balanced += m.per_class[k];
    }
    m.balanced /= static_cast<double>(c);
    return m;
}

// Linear-interpolated quantile of sorted data.
inline double quantile_sorted(std::span<const double> sorted, double q) {
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

// Percentile interval widened, if needed, to contain the point estimate.
inline Interval percentile_interval(std::vector<double> values, double confidence, double point) {
    std::sort(values.begin(), values.end());
    const double tail = 0.5 * (1.0 - confidence);
    return {std::min(point, quantile_sorted(values, tail)), std::max(point, quantile_sorted(values, 1.0 - tail))};
}

}  // namespace sep_detail

/// Per-iteration generator for the bootstrap: a function of (seed, iteration)
/// only, so iterations can run in any order.
inline std::mt19937_64 bootstrap_generator(std::uint64_t seed, std::size_t iteration) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(iteration), static_cast<std::uint32_t>(iteration >> 32)};
    return std::mt19937_64(seq);
}

/// fit_lda -> project -> covariance of the projections -> Mahalanobis distance
/// matrix -> silhouettes -> per-class / overall means. With bootstrap_n > 0,
/// each class is resampled with replacement (sizes preserved) and silhouettes
/// are recomputed against the fixed projection and covariance; intervals are
/// the percentile bounds of the resampled means.
inline AnalysisResult analyze(LabelledMatrix data, const AnalyzeOptions& opt = {}) {
    if (!(opt.confidence > 0.0 && opt.confidence < 1.0)) throw ParameterError("confidence must lie in (0, 1)");
    AnalysisResult r;
    r.model = fit_lda(data, {opt.k, opt.gamma_lda, opt.pca_pre});
    r.projected = project(r.model, data.x);
    const std::size_t c = data.num_classes();
    r.covariance = pooled_covariance(r.projected, data.labels, c, opt.gamma_cov, opt.covariance);
    const Eigen::MatrixXd dist = mahalanobis_matrix(r.projected, r.covariance.inverse);
    r.silhouettes = silhouettes_with(data.labels, c, [&dist](std::size_t i, std::size_t j) {
        return dist(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    });

    const auto point = sep_detail::summarize(r.silhouettes, data.labels, c);
    const auto counts = sep_detail::class_counts(data.labels, c);

    SeparabilityReport& rep = r.report;
    rep.options = opt;
    rep.pca_rank = r.model.pca_rank;
    rep.dim = static_cast<std::size_t>(data.x.cols());
    rep.eigenvalues = r.model.eigenvalues;
    rep.overall.mean = point.overall;
    rep.class_balanced.mean = point.balanced;
    for (std::size_t k = 0; k < c; ++k) rep.classes.push_back({data.class_labels[k], counts[k], {point.per_class[k], {}}});

    if (opt.bootstrap_n > 0) {
        std::vector<std::vector<std::size_t>> members(c);
        for (std::size_t i = 0; i < data.labels.size(); ++i) members[static_cast<std::size_t>(data.labels[i])].push_back(i);
        std::vector<int> boot_labels;
        for (std::size_t k = 0; k < c; ++k) boot_labels.insert(boot_labels.end(), members[k].size(), static_cast<int>(k));

        std::vector<std::vector<double>> class_means(c, std::vector<double>(opt.bootstrap_n));
        std::vector<double> overall(opt.bootstrap_n), balanced(opt.bootstrap_n);
        std::vector<std::size_t> pick(boot_labels.size());
        for (std::size_t b = 0; b < opt.bootstrap_n; ++b) {
            auto gen = bootstrap_generator(opt.seed, b);
            std::size_t slot = 0;
            for (std::size_t k = 0; k < c; ++k) {
                std::uniform_int_distribution<std::size_t> draw(0, members[k].size() - 1);
                for (std::size_t m = 0; m < members[k].size(); ++m) pick[slot++] = members[k][draw(gen)];
            }
            const auto s = silhouettes_with(boot_labels, c, [&](std::size_t i, std::size_t j) {
                return dist(static_cast<Eigen::Index>(pick[i]), static_cast<Eigen::Index>(pick[j]));
            });
            const auto m = sep_detail::summarize(s, boot_labels, c);
            for (std::size_t k = 0; k < c; ++k) class_means[k][b] = m.per_class[k];
            overall[b] = m.overall;
            balanced[b] = m.balanced;
        }
        for (std::size_t k = 0; k < c; ++k)
            rep.classes[k].score.ci = sep_detail::percentile_interval(std::move(class_means[k]), opt.confidence, point.per_class[k]);
        rep.overall.ci = sep_detail::percentile_interval(std::move(overall), opt.confidence, point.overall);
        rep.class_balanced.ci = sep_detail::percentile_interval(std::move(balanced), opt.confidence, point.balanced);
    }
    r.data = std::move(data);
    return r;
}

inline AnalysisResult analyze(const std::vector<SyllableEmbedding>& embs, const AnalyzeOptions& opt = {}) {
    return analyze(to_matrix(embs), opt);
}

// ---------------------------------------------------------------------------
// Serialization

/// Indented key/value document with one nested block per class.
inline std::string format_report(const SeparabilityReport& rep) {
    using csv::format_g9;
    const auto& o = rep.options;
    std::string out = "separability_report:\n";
    auto line = [&out](int indent, const std::string& key, const std::string& value) {
        out.append(static_cast<std::size_t>(indent) * 2, ' ');
        out += key;
        out += ':';
        if (!value.empty()) out += ' ' + value;
        out += '\n';
    };
    auto score = [&](int indent, const ScoreSummary& s) {
        line(indent, "mean_silhouette", format_g9(s.mean));
        if (s.ci) {
            line(indent, "ci_low", format_g9(s.ci->low));
            line(indent, "ci_high", format_g9(s.ci->high));
        }
    };
    line(1, "config", "");
    line(2, "lda_dims", std::to_string(o.k));
    line(2, "gamma_lda", format_g9(o.gamma_lda));
    line(2, "gamma_cov", format_g9(o.gamma_cov));
    line(2, "covariance", to_string(o.covariance));
    line(2, "pca_pre", o.pca_pre ? "true" : "false");
    line(2, "pca_rank", rep.pca_rank ? std::to_string(*rep.pca_rank) : "none");
    line(2, "bootstrap", std::to_string(o.bootstrap_n));
    line(2, "seed", std::to_string(o.seed));
    line(2, "confidence", format_g9(o.confidence));
    std::size_t n = 0;
    for (const auto& c : rep.classes) n += c.num_samples;
    line(1, "num_samples", std::to_string(n));
    line(1, "num_classes", std::to_string(rep.classes.size()));
    line(1, "dim", std::to_string(rep.dim));
    std::string ev = "[";
    for (std::size_t i = 0; i < rep.eigenvalues.size(); ++i) ev += (i ? ", " : "") + format_g9(rep.eigenvalues[i]);
    line(1, "eigenvalues", ev + "]");
    line(1, "overall", "");
    score(2, rep.overall);
    line(1, "class_balanced", "");
    score(2, rep.class_balanced);
    line(1, "classes", "");
    for (const auto& c : rep.classes) {
        line(2, "- label", c.label);
        line(3, "num_samples", std::to_string(c.num_samples));
        score(3, c.score);
    }
    return out;
}

/// CSV rows class,label,mean,ci_low,ci_high: one per class (class = index),
/// then "all,overall" and "all,class_balanced". Missing intervals are empty.
inline std::string format_report_csv(const SeparabilityReport& rep) {
    using csv::format_g9;
    std::string out = "class,label,mean,ci_low,ci_high\n";
    auto row = [&out](const std::string& cls, const std::string& label, const ScoreSummary& s) {
        out += cls + ',' + label + ',' + format_g9(s.mean) + ',';
        if (s.ci) out += format_g9(s.ci->low) + ',' + format_g9(s.ci->high);
        else out += ',';
        out += '\n';
    };
    for (std::size_t k = 0; k < rep.classes.size(); ++k) row(std::to_string(k), rep.classes[k].label, rep.classes[k].score);
    row("all", "overall", rep.overall);
    row("all", "class_balanced", rep.class_balanced);
    return out;
}

}  // namespace sylsep
