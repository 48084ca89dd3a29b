// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
// Usage: lmfp_acceptance <path to lmfp CLI> <scratch directory>

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>

#include "lmfp/classifiers/model.hpp"
#include "lmfp/eval/metrics.hpp"
#include "lmfp/eval/sweeps.hpp"
#include "lmfp/features/gltr.hpp"
#include "lmfp/features/scaler.hpp"
#include "lmfp/pipeline/pipeline.hpp"
#include "lmfp/simgen/simgen.hpp"
#include "lmfp/textstats/correlation.hpp"
#include "lmfp/textstats/lexical.hpp"
#include "lmfp/textstats/quality.hpp"
#include "lmfp/textstats/vocab.hpp"
#include "oracles.hpp"

using namespace lmfp;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void fail(const std::string& why) {
        if (pass) detail = why;
        pass = false;
    }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

Matrix random_matrix(Rng& rng, Eigen::Index r, Eigen::Index c) {
    Matrix m(r, c);
    for (Eigen::Index i = 0; i < r; ++i)
        for (Eigen::Index j = 0; j < c; ++j) m(i, j) = rng.normal();
    return m;
}

std::vector<std::size_t> random_labels(Rng& rng, std::size_t n, std::size_t C) {
    std::vector<std::size_t> y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = i < C ? i : rng.below(C);
    return y;
}

// ---- classifiers ----

Outcome gnb_oracle() {
    Outcome o;
    Rng rng(2024);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t C = 3;
        const std::size_t n = 10 + rng.below(91);
        const auto D = static_cast<Eigen::Index>(1 + rng.below(5));
        Matrix X = random_matrix(rng, static_cast<Eigen::Index>(n), D);
        const auto y = random_labels(rng, n, C);
        for (std::size_t i = 0; i < n; ++i) X.row(static_cast<Eigen::Index>(i)).array() += static_cast<double>(y[i]);
        const Matrix Q = 2.0 * random_matrix(rng, 25, D);
        const auto p = classifiers::GaussianNB::fit(X, y, C).predict_proba(Q);
        const auto ref = oracle::gnb_posterior(X, y, C, 1e-9, Q);
        for (Eigen::Index i = 0; i < Q.rows(); ++i)
            for (std::size_t c = 0; c < C; ++c)
                worst = std::max(worst, std::abs(p(i, static_cast<Eigen::Index>(c)) - ref[static_cast<std::size_t>(i)][c]));
    }
    o.detail = "20 datasets, max |diff| " + num(worst);
    if (!(worst <= 1e-9)) o.fail("max |diff| " + num(worst) + " > 1e-9");
    return o;
}

Outcome gradient_checks() {
    Outcome o;
    double worst_mlp = 0.0, worst_cnn = 0.0;
    Rng rng(77);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t n_in = 2 + rng.below(5), C = 2 + rng.below(3);
        std::vector<std::size_t> hidden;
        for (std::size_t l = 0, L = 1 + rng.below(2); l < L; ++l) hidden.push_back(2 + rng.below(5));
        const std::string act = trial % 2 ? "tanh" : "relu";
        classifiers::Mlp net(n_in, hidden, C, act, 0.1 * rng.uniform(), 500 + static_cast<std::uint64_t>(trial));
        const auto n = static_cast<Eigen::Index>(3 + rng.below(6));
        const Matrix X = random_matrix(rng, n, static_cast<Eigen::Index>(n_in));
        const auto y = random_labels(rng, static_cast<std::size_t>(n), C);
        for (auto& w : net.params()) w = 0.5 * rng.normal();
        std::vector<double> grad;
        net.loss_and_grad(X, y, &grad, true);
        worst_mlp = std::max(worst_mlp, oracle::max_gradient_error(net.params(), grad, [&] { return net.loss_and_grad(X, y, nullptr, true); }));
    }
    for (int trial = 0; trial < 10; ++trial) {
        classifiers::CnnConfig cfg;
        cfg.kernel1 = 1 + rng.below(3);
        cfg.kernel2 = 1 + rng.below(3);
        cfg.filters = 2 + rng.below(3);
        cfg.pool_size = 1 + rng.below(3);
        cfg.pool_stride = 1 + rng.below(2);
        cfg.activation = trial % 3 == 2 ? "none" : "relu";
        cfg.l2 = trial % 2 ? 0.05 : 0.0;
        cfg.seed = 600 + static_cast<std::uint64_t>(trial);
        const std::size_t length = cfg.kernel1 + cfg.kernel2 + cfg.pool_size + rng.below(6);
        const std::size_t channels = 1 + rng.below(3), C = 2 + rng.below(3);
        classifiers::Cnn net(length, channels, C, cfg);
        const auto n = static_cast<Eigen::Index>(3 + rng.below(4));
        const Matrix X = random_matrix(rng, n, static_cast<Eigen::Index>(length * channels));
        const auto y = random_labels(rng, static_cast<std::size_t>(n), C);
        const bool training = trial != 9;
        for (auto& w : net.params()) w = 0.5 * rng.normal();
        std::vector<double> grad;
        net.evaluate_loss(X, y, &grad, training);
        worst_cnn = std::max(worst_cnn, oracle::max_gradient_error(net.params(), grad, [&] { return net.evaluate_loss(X, y, nullptr, training); }));
    }
    o.detail = "max relative error mlp " + num(worst_mlp) + ", cnn " + num(worst_cnn);
    if (!(worst_mlp <= 1e-4 && worst_cnn <= 1e-4)) o.fail(o.detail + " exceeds 1e-4");
    return o;
}

// ---- metrics ----

using Conf = std::vector<std::vector<std::size_t>>;

void expand(const Conf& conf, std::vector<eval::Prediction>& preds, std::vector<std::size_t>& labels) {
    preds.clear();
    labels.clear();
    for (std::size_t p = 0; p < conf.size(); ++p)
        for (std::size_t t = 0; t < conf.size(); ++t)
            for (std::size_t k = 0; k < conf[p][t]; ++k) {
                preds.emplace_back(p);
                labels.push_back(t);
            }
}

/// Walks every C x C matrix with entries 0..5, skipping the all-zero one.
std::size_t exhaustive_confusions(std::size_t C, Outcome& o) {
    const std::size_t cells = C * C;
    std::vector<std::size_t> digits(cells, 0);
    Conf conf(C, std::vector<std::size_t>(C, 0));
    std::vector<eval::Prediction> preds;
    std::vector<std::size_t> labels;
    std::size_t checked = 0;
    while (true) {
        std::size_t i = 0;
        while (i < cells && digits[i] == 5) digits[i++] = 0;
        if (i == cells) break;
        ++digits[i];
        for (std::size_t k = 0; k < cells; ++k) conf[k / C][k % C] = digits[k];
        expand(conf, preds, labels);
        const auto r = eval::macro_micro_prf(preds, labels, C);
        const auto h = oracle::hand_prf(conf);
        if (r.macro_precision != h.macro_precision || r.macro_recall != h.macro_recall || r.micro_precision != h.micro_precision ||
            r.micro_recall != h.micro_recall || r.confusion != conf) {
            o.fail(std::to_string(C) + "x" + std::to_string(C) + " matrix #" + std::to_string(checked) + " differs from hand oracle");
            return checked;
        }
        ++checked;
    }
    return checked;
}

Outcome metric_identities() {
    Outcome o;
    Rng rng(99);
    std::vector<double> grid;
    for (int i = 0; i <= 20; ++i) grid.push_back(0.05 * i);
    for (int trial = 0; trial < 500 && o.pass; ++trial) {
        const auto C = static_cast<Eigen::Index>(2 + rng.below(9));
        const auto n = static_cast<Eigen::Index>(1 + rng.below(80));
        classifiers::ProbaMatrix p(n, C);
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index c = 0; c < C; ++c) p(i, c) = std::exp(2.0 * rng.normal());
            p.row(i) /= p.row(i).sum();
        }
        std::vector<std::size_t> labels;
        for (Eigen::Index i = 0; i < n; ++i) labels.push_back(rng.below(static_cast<std::size_t>(C)));
        std::vector<std::size_t> ks;
        for (std::size_t k = 1; k <= static_cast<std::size_t>(C); ++k) ks.push_back(k);
        const auto t = eval::topk_accuracy(p, labels, ks);
        for (std::size_t k = 2; k <= ks.size(); ++k)
            if (t.at(k) < t.at(k - 1)) o.fail("topk decreases at k=" + std::to_string(k));
        if (t.at(static_cast<std::size_t>(C)) != 1.0) o.fail("topk[C] != 1");

        const auto base = eval::macro_micro_prf(eval::argmax_predictions(p), labels, static_cast<std::size_t>(C));
        const auto curve = eval::threshold_sweep(p, labels, grid);
        const auto& zero = curve.front().metrics;
        if (eval::to_json(zero).dump() != eval::to_json(base).dump()) o.fail("t=0 sweep differs from no-abstention metrics");
        for (std::size_t i = 1; i < curve.size(); ++i) {
            if (curve[i].coverage > curve[i - 1].coverage) o.fail("coverage increases");
            if (curve[i].metrics.micro_recall > curve[i - 1].metrics.micro_recall) o.fail("micro recall increases");
        }
    }
    const auto n2 = exhaustive_confusions(2, o);
    const auto n3 = o.pass ? exhaustive_confusions(3, o) : 0;
    if (o.pass) {
        if (n2 != 6 * 6 * 6 * 6 - 1) o.fail("wrong 2x2 count");
        if (n3 != 10077695) o.fail("wrong 3x3 count");
    }
    if (o.pass) o.detail = "500 random sweeps, " + std::to_string(n2) + " 2x2 and " + std::to_string(n3) + " 3x3 confusions";
    return o;
}

// ---- features ----

Outcome gltr_binning() {
    Outcome o;
    // Bins as quoted: [1], [2-5], [6-10], [11-25], [26-50], [51-100], [101-250], [251-500], [501-1000], [>1000].
    const std::int64_t lo[10] = {1, 2, 6, 11, 26, 51, 101, 251, 501, 1001};
    const std::int64_t hi[10] = {1, 5, 10, 25, 50, 100, 250, 500, 1000, INT64_MAX};
    auto expected = [&](std::int64_t r) {
        int hits = 0;
        std::size_t bin = 99;
        for (std::size_t b = 0; b < 10; ++b)
            if (r >= lo[b] && r <= hi[b]) ++hits, bin = b;
        return hits == 1 ? bin : 99;
    };
    for (std::int64_t r = 1; r <= 2000 && o.pass; ++r) {
        features::LikelihoodRecord rec{"x", features::LmSource::Bert, {0.5}, {r}};
        features::LikelihoodPair pair{rec, rec};
        pair.gpt2->source = features::LmSource::Gpt2;
        const auto v = features::gltr_features("x", pair);
        std::size_t fired = 0, where = 99;
        for (std::size_t b = 0; b < features::kRankBins; ++b)
            if (v[1 + b] != 0.0) ++fired, where = b;
        if (fired != 1 || v[1 + where] != 1.0) o.fail("rank " + std::to_string(r) + " fires " + std::to_string(fired) + " bins");
        else if (where != expected(r)) o.fail("rank " + std::to_string(r) + " in bin " + std::to_string(where));
        else if (features::rank_bin(r) != where) o.fail("rank_bin disagrees at " + std::to_string(r));
    }
    const std::vector<std::pair<std::int64_t, std::size_t>> boundaries{
        {1, 0},   {2, 1},   {5, 1},   {6, 2},   {10, 2},  {11, 3},  {25, 3},  {26, 4},   {50, 4},
        {51, 5},  {100, 5}, {101, 6}, {250, 6}, {251, 7}, {500, 7}, {501, 8}, {1000, 8}, {1001, 9}};
    for (auto [r, b] : boundaries)
        if (features::rank_bin(r) != b) o.fail("boundary rank " + std::to_string(r));
    if (o.pass) o.detail = "ranks 1..2000 and 18 boundary ranks";
    return o;
}

Outcome scaling() {
    Outcome o;
    Rng rng(5);
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        const auto n = static_cast<Eigen::Index>(2 + rng.below(40)), D = static_cast<Eigen::Index>(1 + rng.below(12));
        Matrix X = 10.0 * random_matrix(rng, n, D);
        const auto s = features::MinMaxScaler::fit(X);
        const Matrix Y = s.transform(X);
        for (Eigen::Index d = 0; d < D; ++d) {
            worst = std::max({worst, std::abs(Y.col(d).minCoeff() + 3.0), std::abs(Y.col(d).maxCoeff() - 3.0)});
            const double mn = X.col(d).minCoeff(), mx = X.col(d).maxCoeff();
            for (Eigen::Index i = 0; i < n; ++i) worst = std::max(worst, std::abs(Y(i, d) - (-3.0 + 6.0 * (X(i, d) - mn) / (mx - mn))));
        }
        Matrix T = X;
        T.row(0).array() = X.colwise().maxCoeff().array() + 5.0;
        T.row(1 % n).array() = X.colwise().minCoeff().array() - 5.0;
        const Matrix Z = s.transform(T);
        for (Eigen::Index d = 0; d < D; ++d)
            if (Z(0, d) != 3.0 || (n > 1 && Z(1, d) != -3.0)) o.fail("out-of-range value not clamped");
    }
    if (!(worst <= 1e-9)) o.fail("max |diff| " + num(worst));
    if (o.pass) o.detail = "10 fits, max |diff| " + num(worst);
    return o;
}

// ---- textstats ----

Outcome textstats_oracles() {
    Outcome o;
    double worst = 0.0;
    std::size_t cases = 0;
    auto near = [&](double got, double want) {
        worst = std::max(worst, std::abs(got - want));
        ++cases;
    };
    using textstats::readability;
    near(readability("The cat sat."), 0.39 * 3.0 + 11.8 * 1.0 - 15.59);
    near(readability("The cat sat. The cat sat."), 0.39 * 3.0 + 11.8 * 1.0 - 15.59);
    near(readability("Reading is fun. Cats play."), 0.39 * 2.5 + 11.8 * 6.0 / 5.0 - 15.59);
    near(readability("The little table is made of maple."), 0.39 * 7.0 + 11.8 * 10.0 / 7.0 - 15.59);
    near(readability("Beautiful queueing!"), 0.39 * 2.0 + 11.8 * 2.0 - 15.59);

    using textstats::jaccard;
    near(jaccard({"a", "b"}, {"b", "c"}), 1.0 / 3.0);
    near(jaccard({"a", "b"}, {"a", "b"}), 1.0);
    near(jaccard({"a"}, {"b"}), 0.0);
    near(jaccard({}, {}), 0.0);
    near(jaccard({"a"}, {"a", "b", "c", "d"}), 0.25);

    auto corr = [&](std::vector<double> x, std::vector<double> y, double rho, double slope) {
        const auto r = textstats::pearson(x, y);
        near(r.rho, rho);
        near(r.slope, slope);
    };
    corr({1, 2, 3}, {2, 4, 6}, 1.0, 2.0);
    corr({1, 2, 3}, {6, 4, 2}, -1.0, -2.0);
    corr({1, 2, 3, 4}, {1, 3, 2, 4}, 0.8, 0.8);
    corr({0, 1, 2}, {0, 1, 0}, 0.0, 0.0);
    corr({1, 2, 3, 4, 5}, {2, 1, 4, 3, 5}, 0.8, 0.8);

    using V = std::vector<textstats::TokenList>;
    using textstats::corpus_bleu;
    near(corpus_bleu(V{{"the", "cat"}}, V{{"the", "cat", "sat"}}), 1.9180183554164506e-05);
    near(corpus_bleu(V{{"a", "b", "c", "d"}}, V{{"a", "b", "c", "d", "e"}}), std::exp(-0.25));
    near(corpus_bleu(V{{"the", "the", "the", "the"}}, V{{"the", "cat"}}), 8.034284189446515e-08);
    near(corpus_bleu(V{{"x", "y"}}, V{{"a", "b"}}), 8.408964152537147e-10);
    near(corpus_bleu(V{{"on", "the", "mat", "the", "cat", "sat"}}, V{{"the", "cat", "sat", "on", "the", "mat"}}), 0.003398088489694244);
    near(corpus_bleu(V{{"a", "b", "c"}, {"c", "d", "e", "f"}}, V{{"a", "b", "c", "d"}, {"c", "d", "e"}}), 0.004623948459162791);

    using textstats::sentence_gleu;
    near(sentence_gleu({"the", "cat"}, {"the", "cat", "sat"}), 0.5);
    near(sentence_gleu({"a", "b", "c", "d"}, {"a", "b", "c", "d", "e"}), 5.0 / 7.0);
    near(sentence_gleu({"the", "the", "the", "the"}, {"the", "cat"}), 0.1);
    near(sentence_gleu({"x", "y"}, {"a", "b"}), 0.0);
    near(sentence_gleu({"on", "the", "mat", "the", "cat", "sat"}, {"the", "cat", "sat", "on", "the", "mat"}), 2.0 / 3.0);

    using textstats::sentence_chrf;
    near(sentence_chrf({"the", "cat"}, {"the", "cat", "sat"}), 0.5577101053281037);
    near(sentence_chrf({"a", "b", "c", "d"}, {"a", "b", "c", "d", "e"}), 0.7257346393588602);
    near(sentence_chrf({"the", "the", "the", "the"}, {"the", "cat"}), 0.17868921870125237);
    near(sentence_chrf({"x", "y"}, {"a", "b"}), 0.0);
    near(sentence_chrf({"on", "the", "mat", "the", "cat", "sat"}, {"the", "cat", "sat", "on", "the", "mat"}), 0.8109203296703296);

    if (!(worst <= 1e-9)) o.fail("max |diff| " + num(worst));

    Rng rng(17);
    for (int trial = 0; trial < 50 && o.pass; ++trial) {
        std::vector<textstats::VocabSet> vs;
        for (std::size_t c = 0, C = 2 + rng.below(8); c < C; ++c) {
            textstats::VocabSet v{"c" + std::to_string(c), {}};
            for (std::size_t i = 0, n = 1 + rng.below(30); i < n; ++i) v.terms.insert("w" + std::to_string(rng.below(40)));
            vs.push_back(v);
        }
        const auto m = textstats::jaccard_matrix(vs, vs);
        for (std::size_t i = 0; i < vs.size(); ++i) {
            if (m.values[i][i] != 1.0) o.fail("jaccard diagonal != 1");
            for (std::size_t j = 0; j < vs.size(); ++j)
                if (m.values[i][j] != m.values[j][i]) o.fail("jaccard matrix not symmetric");
        }
    }
    if (o.pass) o.detail = std::to_string(cases) + " oracle values, max |diff| " + num(worst) + "; 50 symmetric Jaccard matrices";
    return o;
}

// ---- fixture experiments ----

pipeline::PipelineResult fixture_run(double mix, double& secs) {
    const auto t0 = Clock::now();
    simgen::SimSpec spec;
    spec.n_classes = 10;
    spec.comments_per_class = 1100;
    spec.private_mix = mix;
    spec.seed = 42;
    const auto ds = build_dataset(simgen::generate_corpus(spec)).dataset;
    pipeline::PipelineSpec ps;
    auto r = pipeline::run_pipeline(ps, ds, SplitSpec{800, 100, 200, 0}, {});
    secs = seconds_since(t0);
    return r;
}

Outcome end_to_end(const pipeline::PipelineResult& sep, double sep_secs, const pipeline::PipelineResult& flat, double flat_secs) {
    Outcome o;
    const auto& a = sep.report.prf;
    const auto& b = flat.report.prf;
    o.detail = "mix 0.5: macro P " + num(a.macro_precision) + " R " + num(a.macro_recall) + "; mix 0.0: macro R " + num(b.macro_recall) +
               "; runs " + num(sep_secs) + "s + " + num(flat_secs) + "s";
    if (!(a.macro_precision >= 0.80 && a.macro_recall >= 0.80)) o.fail(o.detail + " (need P, R >= 0.80)");
    if (!(b.macro_recall <= 0.25)) o.fail(o.detail + " (need mix 0.0 recall <= 0.25)");
    if (!(sep_secs + flat_secs < 600.0)) o.fail(o.detail + " (over 10 min)");
    return o;
}

Outcome tradeoff(const pipeline::PipelineResult& sep) {
    Outcome o;
    const eval::TradeoffPoint *at0 = nullptr, *at5 = nullptr;
    for (const auto& pt : sep.report.curve) {
        if (pt.threshold == 0.0) at0 = &pt;
        if (pt.threshold == 0.5) at5 = &pt;
    }
    if (!at0 || !at5) {
        o.fail("curve lacks t=0 or t=0.5");
        return o;
    }
    o.detail = "micro P " + num(at0->metrics.micro_precision) + " -> " + num(at5->metrics.micro_precision) + ", micro R " +
               num(at0->metrics.micro_recall) + " -> " + num(at5->metrics.micro_recall);
    if (!(at5->metrics.micro_precision >= at0->metrics.micro_precision)) o.fail(o.detail + " (precision fell)");
    if (!(at5->metrics.micro_recall < at0->metrics.micro_recall)) o.fail(o.detail + " (recall not lower)");
    return o;
}

Outcome learning_curve() {
    Outcome o;
    simgen::SimSpec spec;
    spec.seed = 42;
    const auto ds = build_dataset(simgen::generate_corpus(spec)).dataset;
    const auto splits = split(ds, SplitSpec{800, 100, 200, 0});
    const auto t = eval::learning_curve(pipeline::PipelineSpec{}, splits, {50, 400, 800}, {});
    const double r50 = t.rows[0].prf.macro_recall, r400 = t.rows[1].prf.macro_recall, r800 = t.rows[2].prf.macro_recall;
    o.detail = "macro R at 50/400/800: " + num(r50) + " / " + num(r400) + " / " + num(r800);
    if (!(r800 > r50)) o.fail(o.detail + " (800 not above 50)");
    if (!(std::abs(r800 - r400) <= 0.05)) o.fail(o.detail + " (|800 - 400| > 0.05)");
    return o;
}

// ---- CLI determinism ----

int run_cli(const std::string& cli, const std::string& args, const fs::path& log) {
    const std::string cmd = cli + " " + args + " >" + log.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

/// Runs each CLI command twice into sibling directories and compares every
/// output except the manifest, which carries timestamps.
Outcome cli_determinism(const std::string& cli, const fs::path& work) {
    Outcome o;
    fs::remove_all(work);
    fs::create_directories(work);
    std::size_t files = 0;
    auto twice = [&](const std::string& name, const std::string& args) {
        for (const char* tag : {"a", "b"}) {
            const auto out = work / (name + "_" + tag);
            if (run_cli(cli, args + " --out " + out.string(), work / (name + ".log")) != 0) {
                o.fail(name + " exited nonzero");
                return;
            }
        }
        for (const auto& entry : fs::directory_iterator(work / (name + "_a"))) {
            const auto fname = entry.path().filename();
            if (fname == "manifest.json") continue;
            if (read_file(entry.path()) != read_file(work / (name + "_b") / fname)) o.fail(name + "/" + fname.string() + " differs");
            ++files;
        }
        if (!fs::exists(work / (name + "_b") / "manifest.json")) o.fail(name + " wrote no manifest");
    };
    twice("simgen", "simgen --classes 5 --per-class 60 --seed 9");
    const auto corpus = (work / "simgen_a" / "corpus.jsonl").string();
    twice("analyze", "analyze --corpus " + corpus + " --cross " + corpus + " --quality-cap 10");
    twice("featurize", "featurize --corpus " + corpus + " --split 40,10,10 --seed 1");
    const auto feats = work / "featurize_a";
    for (const std::string kind : {"gnb", "dt", "rf", "mlp", "cnn"}) {
        std::string cfg;
        if (kind == "rf") cfg = " --config " + (work / "rf.json").string(), write_file(work / "rf.json", R"({"n_trees": 10})");
        if (kind == "cnn") cfg = " --config " + (work / "cnn.json").string(), write_file(work / "cnn.json", R"({"max_epochs": 2})");
        twice("train_" + kind, "train --train " + (feats / "train.features.jsonl").string() + " --val " +
                                   (feats / "val.features.jsonl").string() + " --classifier " + kind + cfg + " --seed 3");
        twice("evaluate_" + kind, "evaluate --model " + (work / ("train_" + kind + "_a") / "model.json").string() + " --features " +
                                      (feats / "test.features.jsonl").string());
    }
    twice("sweep", "sweep --kind train-size --corpus " + corpus + " --classifier gnb --values 10,40 --split 40,10,10");
    if (o.pass) o.detail = std::to_string(files) + " output files identical across reruns of 14 commands";
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 3) {
        std::cerr << "usage: lmfp_acceptance <lmfp cli> <scratch dir>\n";
        return 2;
    }
    const std::string cli = argv[1];
    const fs::path work = argv[2];
    bool all = true;

    auto report = [&](const std::string& name, const std::function<Outcome()>& check, double limit_secs = 0.0) {
        const auto t0 = Clock::now();
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        const double secs = seconds_since(t0);
        if (limit_secs > 0.0 && secs >= limit_secs) o.fail("took " + num(secs) + "s, limit " + num(limit_secs) + "s");
        all = all && o.pass;
        std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << " [" << num(secs) << "s]" << std::endl;
    };

    report("gnb-oracle", gnb_oracle, 5.0);
    report("gradient-checks", gradient_checks, 60.0);
    report("metric-identities", metric_identities);
    report("gltr-binning", gltr_binning);
    report("scaling", scaling);
    report("textstats-oracles", textstats_oracles);

    double sep_secs = 0.0, flat_secs = 0.0;
    std::optional<pipeline::PipelineResult> sep, flat;
    try {
        sep = fixture_run(0.5, sep_secs);
        flat = fixture_run(0.0, flat_secs);
    } catch (const std::exception& e) {
        std::cerr << "fixture experiment failed: " << e.what() << "\n";
    }
    report("end-to-end", [&] {
        Outcome o;
        if (!sep || !flat) o.fail("fixture runs did not complete");
        else o = end_to_end(*sep, sep_secs, *flat, flat_secs);
        return o;
    });
    report("tradeoff-direction", [&] {
        Outcome o;
        if (!sep) o.fail("fixture run did not complete");
        else o = tradeoff(*sep);
        return o;
    });
    report("learning-curve", learning_curve);
    report("determinism", [&] { return cli_determinism(cli, work); });

    std::cout << (all ? "ALL PASS" : "SOME FAILED") << std::endl;
    return all ? 0 : 1;
}
