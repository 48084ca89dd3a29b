#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "lmfp/classifiers/proba.hpp"
#include "lmfp/core/io.hpp"

namespace lmfp::eval {

using classifiers::ProbaMatrix;

/// A prediction, or nullopt for an abstention.
using Prediction = std::optional<std::size_t>;

struct PrfReport {
    double macro_precision = 0.0;
    double macro_recall = 0.0;
    double micro_precision = 0.0;
    double micro_recall = 0.0;
    std::vector<double> class_precision;
    std::vector<double> class_recall;
    /// confusion[predicted][true], predicted samples only.
    std::vector<std::vector<std::size_t>> confusion;
    std::size_t n_predicted = 0;
    std::size_t n_abstained = 0;
};

/// Precision counts predicted samples only; a class never predicted has
/// precision 0. Recall counts every labeled sample, abstentions included.
inline PrfReport macro_micro_prf(std::span<const Prediction> preds, std::span<const std::size_t> labels, std::size_t n_classes) {
    if (labels.empty()) throw InvalidArgument("macro_micro_prf: no labels");
    if (preds.size() != labels.size()) throw InvalidArgument("macro_micro_prf: prediction/label count mismatch");
    PrfReport r;
    r.confusion.assign(n_classes, std::vector<std::size_t>(n_classes, 0));
    std::vector<std::size_t> tp(n_classes, 0), predicted(n_classes, 0), actual(n_classes, 0);
    std::size_t correct = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const auto y = labels[i];
        if (y >= n_classes) throw InvalidArgument("macro_micro_prf: label out of range");
        ++actual[y];
        if (!preds[i]) {
            ++r.n_abstained;
            continue;
        }
        const auto p = *preds[i];
        if (p >= n_classes) throw InvalidArgument("macro_micro_prf: prediction out of range");
        ++r.n_predicted;
        ++predicted[p];
        ++r.confusion[p][y];
        if (p == y) {
            ++tp[y];
            ++correct;
        }
    }
    r.class_precision.resize(n_classes);
    r.class_recall.resize(n_classes);
    double ps = 0.0, rs = 0.0;
    for (std::size_t c = 0; c < n_classes; ++c) {
        r.class_precision[c] = predicted[c] ? static_cast<double>(tp[c]) / static_cast<double>(predicted[c]) : 0.0;
        r.class_recall[c] = actual[c] ? static_cast<double>(tp[c]) / static_cast<double>(actual[c]) : 0.0;
        ps += r.class_precision[c];
        rs += r.class_recall[c];
    }
    r.macro_precision = ps / static_cast<double>(n_classes);
    r.macro_recall = rs / static_cast<double>(n_classes);
    r.micro_precision = r.n_predicted ? static_cast<double>(correct) / static_cast<double>(r.n_predicted) : 0.0;
    r.micro_recall = static_cast<double>(correct) / static_cast<double>(labels.size());
    return r;
}

inline std::vector<Prediction> argmax_predictions(const ProbaMatrix& p) {
    std::vector<Prediction> out;
    out.reserve(static_cast<std::size_t>(p.rows()));
    for (Eigen::Index i = 0; i < p.rows(); ++i) out.emplace_back(classifiers::argmax_predict(p.row(i)));
    return out;
}

/// Class indices of a row ordered by descending probability, ties by index.
inline std::vector<std::size_t> ranked_classes(const ProbaMatrix& p, Eigen::Index row) {
    std::vector<std::size_t> idx(static_cast<std::size_t>(p.cols()));
    for (std::size_t c = 0; c < idx.size(); ++c) idx[c] = c;
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return p(row, static_cast<Eigen::Index>(a)) > p(row, static_cast<Eigen::Index>(b));
    });
    return idx;
}

inline std::map<std::size_t, double> topk_accuracy(const ProbaMatrix& p, std::span<const std::size_t> labels, std::span<const std::size_t> ks) {
    if (static_cast<std::size_t>(p.rows()) != labels.size()) throw InvalidArgument("topk_accuracy: row/label count mismatch");
    const auto C = static_cast<std::size_t>(p.cols());
    for (auto k : ks)
        if (k == 0 || k > C) throw InvalidArgument("topk_accuracy: k=" + std::to_string(k) + " outside [1, " + std::to_string(C) + "]");
    std::map<std::size_t, double> out;
    for (auto k : ks) out[k] = 0.0;
    if (labels.empty()) return out;
    for (Eigen::Index i = 0; i < p.rows(); ++i) {
        const auto order = ranked_classes(p, i);
        const auto pos = static_cast<std::size_t>(std::find(order.begin(), order.end(), labels[static_cast<std::size_t>(i)]) - order.begin());
        for (auto k : ks)
            if (pos < k) out[k] += 1.0;
    }
    for (auto& [k, v] : out) v /= static_cast<double>(labels.size());
    return out;
}

/// Highest minus second-highest probability.
template <typename Row>
double gap_statistic(const Row& row) {
    if (row.size() < 2) throw InvalidArgument("gap_statistic needs at least 2 classes");
    double first = -1.0, second = -1.0;
    for (Eigen::Index c = 0; c < static_cast<Eigen::Index>(row.size()); ++c) {
        const double v = row[c];
        if (v > first) {
            second = first;
            first = v;
        } else if (v > second) {
            second = v;
        }
    }
    return std::clamp(first - second, 0.0, 1.0);
}

inline double gap_statistic(std::span<const double> row) {
    return gap_statistic(Eigen::Map<const Eigen::VectorXd>(row.data(), static_cast<Eigen::Index>(row.size())));
}

struct TradeoffPoint {
    double threshold = 0.0;
    double coverage = 0.0;
    PrfReport metrics;
};

using TradeoffCurve = std::vector<TradeoffPoint>;

/// Samples whose gap is below the threshold abstain.
inline TradeoffCurve threshold_sweep(const ProbaMatrix& p, std::span<const std::size_t> labels, std::span<const double> thresholds) {
    for (std::size_t i = 1; i < thresholds.size(); ++i)
        if (thresholds[i] < thresholds[i - 1]) throw InvalidArgument("threshold_sweep: thresholds must be ascending");
    std::vector<double> gaps(static_cast<std::size_t>(p.rows()));
    const auto base = argmax_predictions(p);
    for (Eigen::Index i = 0; i < p.rows(); ++i) gaps[static_cast<std::size_t>(i)] = gap_statistic(p.row(i));
    TradeoffCurve curve;
    for (double t : thresholds) {
        std::vector<Prediction> preds = base;
        for (std::size_t i = 0; i < preds.size(); ++i)
            if (gaps[i] < t) preds[i].reset();
        TradeoffPoint pt;
        pt.threshold = t;
        pt.metrics = macro_micro_prf(preds, labels, static_cast<std::size_t>(p.cols()));
        pt.coverage = static_cast<double>(pt.metrics.n_predicted) / static_cast<double>(labels.size());
        curve.push_back(std::move(pt));
    }
    return curve;
}

struct EvalReport {
    PrfReport prf;
    std::map<std::size_t, double> topk;
    TradeoffCurve curve;
};

inline json to_json(const PrfReport& r) {
    return {{"macro_precision", r.macro_precision}, {"macro_recall", r.macro_recall}, {"micro_precision", r.micro_precision},
            {"micro_recall", r.micro_recall},       {"class_precision", r.class_precision}, {"class_recall", r.class_recall},
            {"confusion", r.confusion},             {"n_predicted", r.n_predicted},     {"n_abstained", r.n_abstained}};
}

inline json to_json(const TradeoffCurve& curve) {
    json out = json::array();
    for (const auto& pt : curve)
        out.push_back({{"threshold", pt.threshold},
                       {"coverage", pt.coverage},
                       {"macro_precision", pt.metrics.macro_precision},
                       {"macro_recall", pt.metrics.macro_recall},
                       {"micro_precision", pt.metrics.micro_precision},
                       {"micro_recall", pt.metrics.micro_recall},
                       {"n_predicted", pt.metrics.n_predicted},
                       {"n_abstained", pt.metrics.n_abstained}});
    return out;
}

/// Report body; class labels name the confusion axes.
inline json to_json(const EvalReport& r, const std::vector<std::string>& classes) {
    json topk = json::object();
    for (const auto& [k, v] : r.topk) topk[std::to_string(k)] = v;
    json j = to_json(r.prf);
    j["classes"] = classes;
    j["confusion_axes"] = "confusion[predicted][true]";
    j["topk"] = topk;
    j["topk_tie_rule"] = "lowest class index ranks first";
    j["zero_prediction_precision"] = 0.0;
    j["tradeoff"] = to_json(r.curve);
    return j;
}

inline std::string tradeoff_csv(const TradeoffCurve& curve) {
    std::string out = "threshold,coverage,macro_precision,macro_recall,micro_precision,micro_recall,n_predicted,n_abstained\n";
    for (const auto& pt : curve)
        out += fmt_double(pt.threshold) + "," + fmt_double(pt.coverage) + "," + fmt_double(pt.metrics.macro_precision) + "," +
               fmt_double(pt.metrics.macro_recall) + "," + fmt_double(pt.metrics.micro_precision) + "," +
               fmt_double(pt.metrics.micro_recall) + "," + std::to_string(pt.metrics.n_predicted) + "," +
               std::to_string(pt.metrics.n_abstained) + "\n";
    return out;
}

inline std::string confusion_csv(const PrfReport& r, const std::vector<std::string>& classes) {
    std::string out = "predicted\\true";
    for (const auto& c : classes) out += "," + c;
    out += "\n";
    for (std::size_t p = 0; p < r.confusion.size(); ++p) {
        out += classes[p];
        for (auto n : r.confusion[p]) out += "," + std::to_string(n);
        out += "\n";
    }
    return out;
}

inline EvalReport evaluate(const ProbaMatrix& p, std::span<const std::size_t> labels, std::span<const std::size_t> ks,
                           std::span<const double> thresholds) {
    EvalReport r;
    r.prf = macro_micro_prf(argmax_predictions(p), labels, static_cast<std::size_t>(p.cols()));
    r.topk = topk_accuracy(p, labels, ks);
    r.curve = threshold_sweep(p, labels, thresholds);
    return r;
}

}  // namespace lmfp::eval
