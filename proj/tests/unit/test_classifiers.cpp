#include <catch_amalgamated.hpp>

#include <functional>

#include "lmfp/classifiers/model.hpp"
#include "lmfp/core/random.hpp"
#include "oracles.hpp"

using namespace lmfp;
using namespace lmfp::classifiers;
using Catch::Matchers::WithinAbs;

namespace {

struct Data {
    Matrix X;
    std::vector<std::size_t> y;
};

/// Gaussian blobs with class c centred at `spread * c` in every dimension.
Data blobs(std::size_t n_per_class, std::size_t dims, std::size_t classes, double spread, std::uint64_t seed) {
    Rng rng(seed);
    Data d;
    d.X.resize(static_cast<Eigen::Index>(n_per_class * classes), static_cast<Eigen::Index>(dims));
    for (std::size_t c = 0; c < classes; ++c)
        for (std::size_t i = 0; i < n_per_class; ++i) {
            const auto r = static_cast<Eigen::Index>(c * n_per_class + i);
            for (std::size_t k = 0; k < dims; ++k) d.X(r, static_cast<Eigen::Index>(k)) = spread * static_cast<double>(c) + rng.normal();
            d.y.push_back(c);
        }
    return d;
}

features::FeatureSet feature_set(const Data& d, std::size_t classes) {
    features::FeatureSet fs;
    fs.kind = "test";
    fs.shape = {static_cast<std::size_t>(d.X.cols())};
    for (std::size_t c = 0; c < classes; ++c) fs.classes.push_back("c" + std::to_string(c));
    for (std::size_t i = 0; i < d.y.size(); ++i) fs.ids.push_back("r" + std::to_string(i));
    fs.labels = d.y;
    fs.X = d.X;
    return fs;
}

double accuracy(const ProbaMatrix& p, const std::vector<std::size_t>& y) {
    const auto pred = argmax_all(p);
    std::size_t ok = 0;
    for (std::size_t i = 0; i < y.size(); ++i) ok += pred[i] == y[i];
    return static_cast<double>(ok) / static_cast<double>(y.size());
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

}  // namespace

TEST_CASE("gnb parameters on a hand example", "[gnb]") {
    Matrix X(4, 1);
    X << 0.0, 2.0, 10.0, 14.0;
    const std::vector<std::size_t> y{0, 0, 1, 1};
    const auto m = GaussianNB::fit(X, y, 2);
    REQUIRE(m.means()(0, 0) == 1.0);
    REQUIRE(m.means()(1, 0) == 12.0);
    REQUIRE_THAT(m.epsilon(), WithinAbs(32.75e-9, 1e-20));
    REQUIRE_THAT(m.variances()(0, 0), WithinAbs(1.0 + 32.75e-9, 1e-15));
    REQUIRE_THAT(m.variances()(1, 0), WithinAbs(4.0 + 32.75e-9, 1e-15));
    // Equal priors; at x = 1 class 0 has density N(1; 1, 1), class 1 N(1; 12, 4).
    Matrix q(1, 1);
    q << 1.0;
    const double l0 = std::exp(-0.0) / std::sqrt(2 * std::numbers::pi * 1.0);
    const double l1 = std::exp(-121.0 / 8.0) / std::sqrt(2 * std::numbers::pi * 4.0);
    REQUIRE_THAT(m.predict_proba(q)(0, 0), WithinAbs(l0 / (l0 + l1), 1e-9));
}

TEST_CASE("gnb matches the closed-form posterior", "[gnb][oracle]") {
    Rng rng(2);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t C = 3;
        const std::size_t n = 10 + rng.below(91);
        const auto D = static_cast<Eigen::Index>(1 + rng.below(5));
        Matrix X = random_matrix(rng, static_cast<Eigen::Index>(n), D);
        const auto y = random_labels(rng, n, C);
        for (std::size_t i = 0; i < n; ++i) X.row(static_cast<Eigen::Index>(i)).array() += static_cast<double>(y[i]);
        const Matrix Q = 2.0 * random_matrix(rng, 15, D);
        const auto p = GaussianNB::fit(X, y, C).predict_proba(Q);
        const auto ref = oracle::gnb_posterior(X, y, C, 1e-9, Q);
        REQUIRE(valid_proba(p));
        for (Eigen::Index i = 0; i < Q.rows(); ++i)
            for (std::size_t c = 0; c < C; ++c)
                REQUIRE_THAT(p(i, static_cast<Eigen::Index>(c)), WithinAbs(ref[static_cast<std::size_t>(i)][c], 1e-9));
    }
}

TEST_CASE("gnb is symmetric under class relabelling", "[gnb][property]") {
    const auto d = blobs(20, 3, 3, 1.0, 5);
    std::vector<std::size_t> perm{2, 0, 1}, y2;
    for (auto c : d.y) y2.push_back(perm[c]);
    const auto a = GaussianNB::fit(d.X, d.y, 3).predict_proba(d.X);
    const auto b = GaussianNB::fit(d.X, y2, 3).predict_proba(d.X);
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (std::size_t c = 0; c < 3; ++c)
            REQUIRE_THAT(b(i, static_cast<Eigen::Index>(perm[c])), WithinAbs(a(i, static_cast<Eigen::Index>(c)), 1e-12));
}

TEST_CASE("decision tree learns xor exactly", "[tree]") {
    Matrix X(4, 2);
    X << 0, 0, 0, 1, 1, 0, 1, 1;
    const std::vector<std::size_t> y{0, 1, 1, 0};
    const auto t = DecisionTree::fit(X, y, 2, TreeConfig{});
    REQUIRE(argmax_all(t.predict_proba(X)) == y);
    REQUIRE(t.depth() == 2);
    REQUIRE(t.node_count() == 7);
}

TEST_CASE("decision tree splits on the informative feature", "[tree]") {
    Rng rng(9);
    Matrix X = random_matrix(rng, 60, 3);
    std::vector<std::size_t> y;
    for (Eigen::Index i = 0; i < 60; ++i) y.push_back(X(i, 1) > 0.0 ? 1 : 0);
    TreeConfig cfg;
    cfg.max_depth = 1;
    const auto t = DecisionTree::fit(X, y, 2, cfg);
    REQUIRE(t.nodes()[0].feature == 1);
    REQUIRE(accuracy(t.predict_proba(X), y) == 1.0);
    REQUIRE(valid_proba(t.predict_proba(X)));
    TreeConfig gini;
    gini.criterion = "gini";
    REQUIRE_THROWS_AS(DecisionTree::fit(X, y, 2, gini), InvalidArgument);
}

TEST_CASE("a one-tree forest without bagging is a single tree", "[forest]") {
    const auto d = blobs(15, 4, 3, 1.5, 8);
    ForestConfig fc;
    fc.n_trees = 1;
    fc.bootstrap = false;
    fc.max_features = 4;
    const auto f = RandomForest::fit(d.X, d.y, 3, fc);
    TreeConfig tc;
    tc.max_features = 4;
    const auto t = DecisionTree::fit(d.X, d.y, 3, tc);
    REQUIRE(f.predict_proba(d.X) == t.predict_proba(d.X));
}

TEST_CASE("forest separates well-spaced blobs", "[forest]") {
    const auto train = blobs(40, 5, 4, 4.0, 1);
    const auto test = blobs(40, 5, 4, 4.0, 2);
    ForestConfig fc;
    fc.n_trees = 30;
    fc.seed = 3;
    const auto f = RandomForest::fit(train.X, train.y, 4, fc);
    const auto p = f.predict_proba(test.X);
    REQUIRE(valid_proba(p));
    REQUIRE(accuracy(p, test.y) >= 0.95);
    REQUIRE(RandomForest::fit(train.X, train.y, 4, fc).predict_proba(test.X) == p);
}

TEST_CASE("mlp gradients match finite differences", "[mlp][gradcheck]") {
    Rng rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t n_in = 2 + rng.below(5), C = 2 + rng.below(3);
        std::vector<std::size_t> hidden;
        for (std::size_t l = 0, L = 1 + rng.below(2); l < L; ++l) hidden.push_back(2 + rng.below(5));
        const std::string act = trial % 2 ? "tanh" : "relu";
        Mlp net(n_in, hidden, C, act, 0.1 * rng.uniform(), 100 + static_cast<std::uint64_t>(trial));
        const auto n = static_cast<Eigen::Index>(3 + rng.below(6));
        const Matrix X = random_matrix(rng, n, static_cast<Eigen::Index>(n_in));
        const auto y = random_labels(rng, static_cast<std::size_t>(n), C);
        // Random parameters keep pre-activations off the ReLU kink; zero
        // biases behind a dead layer would sit exactly on it.
        for (auto& w : net.params()) w = 0.5 * rng.normal();
        std::vector<double> grad;
        net.loss_and_grad(X, y, &grad, true);
        const double err = oracle::max_gradient_error(net.params(), grad, [&] { return net.loss_and_grad(X, y, nullptr, true); });
        INFO("trial " << trial << " activation " << act);
        REQUIRE(err <= 1e-4);
    }
}

TEST_CASE("cnn gradients match finite differences", "[cnn][gradcheck]") {
    Rng rng(47);
    for (int trial = 0; trial < 10; ++trial) {
        CnnConfig cfg;
        cfg.kernel1 = 1 + rng.below(3);
        cfg.kernel2 = 1 + rng.below(3);
        cfg.filters = 2 + rng.below(3);
        cfg.pool_size = 1 + rng.below(3);
        cfg.pool_stride = 1 + rng.below(2);
        cfg.activation = trial % 3 == 2 ? "none" : "relu";
        cfg.l2 = trial % 2 ? 0.05 : 0.0;
        cfg.seed = 200 + static_cast<std::uint64_t>(trial);
        const std::size_t length = cfg.kernel1 + cfg.kernel2 + cfg.pool_size + rng.below(6);
        const std::size_t channels = 1 + rng.below(3), C = 2 + rng.below(3);
        Cnn net(length, channels, C, cfg);
        const auto n = static_cast<Eigen::Index>(3 + rng.below(4));
        const Matrix X = random_matrix(rng, n, static_cast<Eigen::Index>(length * channels));
        const auto y = random_labels(rng, static_cast<std::size_t>(n), C);
        const bool training = trial != 9;
        for (auto& w : net.params()) w = 0.5 * rng.normal();
        std::vector<double> grad;
        net.evaluate_loss(X, y, &grad, training);
        const double err =
            oracle::max_gradient_error(net.params(), grad, [&] { return net.evaluate_loss(X, y, nullptr, training); });
        INFO("trial " << trial << " training " << training);
        REQUIRE(err <= 1e-4);
    }
}

TEST_CASE("cnn stage lengths", "[cnn]") {
    const auto s = cnn_shape(75, CnnConfig{});
    REQUIRE(s.input == 75);
    REQUIRE(s.conv1 == 74);
    REQUIRE(s.conv2 == 72);
    REQUIRE(s.pooled == 71);
    REQUIRE(cnn_shape(5, CnnConfig{}).pooled == 1);
    REQUIRE_THROWS_AS(cnn_shape(4, CnnConfig{}), InvalidArgument);
    CnnConfig strided;
    strided.pool_stride = 2;
    REQUIRE(cnn_shape(75, strided).pooled == 36);
}

TEST_CASE("batch norm zeroes a constant-input batch", "[cnn]") {
    Cnn net(10, 2, 3, CnnConfig{});
    const Matrix X = Matrix::Constant(4, 20, 0.7);
    // Zero variance leaves only the rounding of the batch mean, scaled by
    // 1/sqrt(epsilon).
    for (const auto& m : net.normalized(X)) REQUIRE(m.cwiseAbs().maxCoeff() <= 1e-9);
    const std::vector<std::size_t> y{0, 1, 2, 0};
    const auto before = net.running_mean();
    net.loss_and_grad(X, y, nullptr, true);
    REQUIRE(net.running_mean() != before);
    REQUIRE(valid_proba(net.predict_proba(X)));
}

TEST_CASE("argmax ties go to the lowest class index", "[proba]") {
    REQUIRE(argmax_predict(std::vector<double>{0.25, 0.25, 0.25, 0.25}) == 0);
    REQUIRE(argmax_predict(std::vector<double>{0.1, 0.45, 0.45}) == 1);
    REQUIRE(argmax_predict(std::vector<double>{0.2, 0.3, 0.5}) == 2);
    REQUIRE_THROWS_AS(check_labels(std::vector<std::size_t>{0, 0}, 2, 2), InvalidArgument);
    REQUIRE_THROWS_AS(check_labels(std::vector<std::size_t>{0, 2}, 2, 2), InvalidArgument);
}

TEST_CASE("argmax is invariant under strictly increasing maps", "[proba][property]") {
    Rng rng(13);
    const std::vector<std::function<double(double)>> maps{
        [](double x) { return std::log(x); }, [](double x) { return x * x * x; }, [](double x) { return 7.0 * x - 2.0; },
        [](double x) { return std::exp(3.0 * x); }, [](double x) { return x / (1.0 + x); }};
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<double> row(2 + rng.below(9));
        // A coarse grid makes ties common.
        for (auto& x : row) x = 0.1 * static_cast<double>(1 + rng.below(5));
        for (const auto& f : maps) {
            std::vector<double> mapped;
            for (double x : row) mapped.push_back(f(x));
            REQUIRE(argmax_predict(mapped) == argmax_predict(row));
        }
    }
}

TEST_CASE("every model kind trains, predicts distributions and round trips", "[model]") {
    const auto train = blobs(30, 6, 3, 3.0, 11);
    const auto val = blobs(10, 6, 3, 3.0, 12);
    const auto test = blobs(20, 6, 3, 3.0, 13);
    const auto tr = feature_set(train, 3), va = feature_set(val, 3);
    for (auto kind : {Kind::Gnb, Kind::Dt, Kind::Rf, Kind::Mlp, Kind::Cnn}) {
        json cfg = json::object();
        if (kind == Kind::Mlp) cfg = {{"lr", 0.01}, {"max_epochs", 60}};
        if (kind == Kind::Cnn) cfg = {{"lr", 0.01}, {"max_epochs", 20}, {"filters", 4}};
        if (kind == Kind::Rf) cfg = {{"n_trees", 20}};
        const auto m = train_model(kind, tr, va, cfg, 5);
        const auto p = m.predict_proba(test.X);
        INFO("kind " << to_string(kind));
        REQUIRE(valid_proba(p));
        REQUIRE(accuracy(p, test.y) >= 0.8);
        if (kind != Kind::Gnb) REQUIRE(m.train_config.at("seed") == 5);

        const auto again = train_model(kind, tr, va, cfg, 5);
        REQUIRE(to_json(again).dump() == to_json(m).dump());

        const auto back = model_from_json(json::parse(to_json(m).dump()));
        REQUIRE(back.predict_proba(test.X) == p);
        REQUIRE(back.class_labels == m.class_labels);
    }
}

TEST_CASE("model configs reject unknown keys", "[model]") {
    const auto d = feature_set(blobs(5, 2, 2, 3.0, 1), 2);
    REQUIRE_THROWS_AS(train_model(Kind::Mlp, d, {}, json{{"hidden_layer_sizes", {8}}}, 0), InvalidArgument);
    REQUIRE_THROWS_AS(train_model(Kind::Gnb, d, {}, json{{"smoothing", 1.0}}, 0), InvalidArgument);
    REQUIRE_THROWS_AS(parse_kind("svm"), InvalidArgument);
    REQUIRE_THROWS_AS(model_from_json(json{{"format", "other"}}), Error);
}

TEST_CASE("mlp training stops early and keeps its best epoch", "[mlp]") {
    const auto tr = feature_set(blobs(30, 4, 2, 3.0, 4), 2);
    const auto va = feature_set(blobs(10, 4, 2, 3.0, 5), 2);
    const auto m = train_model(Kind::Mlp, tr, va, {{"lr", 0.05}, {"max_epochs", 200}, {"patience", 3}}, 1);
    const auto& h = m.history;
    const auto losses = h.at("val_loss").get<std::vector<double>>();
    const auto best = h.at("best_epoch").get<std::size_t>();
    REQUIRE(losses.size() == h.at("epochs_run").get<std::size_t>());
    REQUIRE(best < losses.size());
    REQUIRE(*std::min_element(losses.begin(), losses.end()) == losses[best]);
}
