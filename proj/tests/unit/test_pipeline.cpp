#include <catch_amalgamated.hpp>

#include "lmfp/eval/sweeps.hpp"
#include "lmfp/pipeline/pipeline.hpp"
#include "lmfp/simgen/simgen.hpp"

using namespace lmfp;
using namespace lmfp::pipeline;

namespace {

const std::filesystem::path kData = LMFP_TESTDATA;

LabeledDataset sim_dataset() {
    simgen::SimSpec s;
    s.n_classes = 4;
    s.shared_vocab_size = 300;
    s.comments_per_class = 60;
    s.seed = 11;
    return build_dataset(simgen::generate_corpus(s)).dataset;
}

const SplitSpec kSplit{40, 10, 10, 3};

PipelineSpec quick_mlp() {
    PipelineSpec p;
    p.classifier_config = {{"hidden", {16}}, {"max_epochs", 25}};
    p.seed = 5;
    return p;
}

LabeledDataset small_corpus() { return build_dataset(load_corpus(kData / "corpus_small.jsonl")).dataset; }

}  // namespace

TEST_CASE("feature kinds parse and print", "[pipeline]") {
    for (auto k : {FeatureKind::Writeprints, FeatureKind::Gltr, FeatureKind::Glove, FeatureKind::Embedding})
        CHECK(parse_feature_kind(to_string(k)) == k);
    CHECK_THROWS_AS(parse_feature_kind("bow"), InvalidArgument);
}

TEST_CASE("clip_ks clamps to the class count and dedups", "[pipeline]") {
    CHECK(clip_ks({1, 5, 10}, 3) == std::vector<std::size_t>{1, 3});
    CHECK(clip_ks({1, 5, 10}, 10) == std::vector<std::size_t>{1, 5, 10});
    CHECK(clip_ks({10, 0, 1}, 20) == std::vector<std::size_t>{1, 10});
}

TEST_CASE("feature shapes per kind", "[pipeline]") {
    Resources none;
    CHECK(feature_shape(FeatureKind::Writeprints, none) == std::vector<std::size_t>{220});
    CHECK(feature_shape(FeatureKind::Gltr, none) == std::vector<std::size_t>{22});
    CHECK(feature_shape(FeatureKind::Embedding, none) == std::vector<std::size_t>{768});
    CHECK(feature_shape(FeatureKind::Glove, none) == std::vector<std::size_t>{75, 100});
    const auto glove = load_resources(FeatureKind::Glove, {{}, kData / "glove_small.txt", {}});
    CHECK(feature_shape(FeatureKind::Glove, glove) == std::vector<std::size_t>{75, glove.glove->dim});
}

TEST_CASE("missing resources are named", "[pipeline]") {
    CHECK_THROWS_WITH(load_resources(FeatureKind::Gltr, {}), Catch::Matchers::ContainsSubstring("likelihood"));
    CHECK_THROWS_WITH(load_resources(FeatureKind::Glove, {}), Catch::Matchers::ContainsSubstring("GloVe"));
    CHECK_THROWS_WITH(load_resources(FeatureKind::Embedding, {}), Catch::Matchers::ContainsSubstring("embedding"));
    const auto ds = small_corpus();
    CHECK_THROWS_AS(featurize(FeatureKind::Writeprints, ds, {}), InvalidArgument);
    CHECK_THROWS_AS(featurize(FeatureKind::Gltr, ds, {}), InvalidArgument);
}

TEST_CASE("every feature kind featurizes the small corpus", "[pipeline]") {
    const auto ds = small_corpus();
    const SplitSpec sp{4, 2, 2, 1};
    const auto splits = split(ds, sp);
    const ResourcePaths paths{kData / "likelihoods_stub.jsonl", kData / "glove_small.txt", kData / "embeddings_stub.jsonl"};
    for (auto k : {FeatureKind::Writeprints, FeatureKind::Gltr, FeatureKind::Glove, FeatureKind::Embedding}) {
        INFO(to_string(k));
        PipelineSpec spec;
        spec.features = k;
        const auto res = load_resources(k, paths);
        const auto f = fit_features(spec, splits, res);
        CHECK(f.train.X.rows() == 12);
        CHECK(f.test.X.rows() == 6);
        CHECK(static_cast<std::size_t>(f.train.X.cols()) == f.train.width());
        CHECK(f.train.classes == ds.classes);
        CHECK(f.context.has_value() == (k == FeatureKind::Writeprints));
        CHECK(f.scaler.has_value() == (k != FeatureKind::Glove));
        if (f.scaler) {
            CHECK(f.train.X.minCoeff() >= -3.0);
            CHECK(f.train.X.maxCoeff() <= 3.0);
            CHECK(f.test.X.minCoeff() >= -3.0);
            CHECK(f.test.X.maxCoeff() <= 3.0);
        }
    }
}

TEST_CASE("scaling can be forced either way", "[pipeline]") {
    PipelineSpec spec;
    CHECK(spec.scaled());
    spec.features = FeatureKind::Glove;
    CHECK_FALSE(spec.scaled());
    spec.scale = true;
    CHECK(spec.scaled());
    CHECK(spec.to_json()["scale"] == true);
}

TEST_CASE("pipeline runs are deterministic", "[pipeline]") {
    const auto ds = sim_dataset();
    const auto spec = quick_mlp();
    const auto a = run_pipeline(spec, ds, kSplit, {});
    const auto b = run_pipeline(spec, ds, kSplit, {});
    CHECK(eval::to_json(a.report, ds.classes).dump() == eval::to_json(b.report, ds.classes).dump());
    CHECK(classifiers::to_json(a.model).dump() == classifiers::to_json(b.model).dump());
    CHECK(a.report.topk.count(4) == 1);
    CHECK(a.report.topk.at(4) == 1.0);
    CHECK(a.report.curve.size() == 10);
}

TEST_CASE("learning curve at full size reproduces the plain run", "[pipeline][sweep]") {
    const auto ds = sim_dataset();
    const auto spec = quick_mlp();
    const auto splits = split(ds, kSplit);
    const auto plain = run_pipeline(spec, splits, {});
    const auto table = eval::learning_curve(spec, splits, {10, 40}, {});
    REQUIRE(table.rows.size() == 2);
    CHECK(table.kind == "train-size");
    CHECK(eval::to_json(table.rows[1].prf).dump() == eval::to_json(plain.report.prf).dump());
    CHECK(table.rows[1].topk == plain.report.topk);
    CHECK(eval::to_json(eval::learning_curve(spec, splits, {10, 40}, {})).dump() == eval::to_json(table).dump());
    CHECK_THROWS_AS(eval::learning_curve(spec, splits, {41}, {}), InvalidArgument);
    CHECK_THROWS_AS(eval::learning_curve(spec, splits, {0}, {}), InvalidArgument);
}

TEST_CASE("class sweep over every class reproduces the plain run", "[pipeline][sweep]") {
    const auto ds = sim_dataset();
    auto spec = quick_mlp();
    spec.classifier = classifiers::Kind::Gnb;
    spec.classifier_config = json::object();
    const auto plain = run_pipeline(spec, ds, kSplit, {});
    const auto table = eval::class_sweep(spec, ds, kSplit, {2, 3, 4}, 9, {});
    REQUIRE(table.rows.size() == 3);
    CHECK(table.rows[2].classes == ds.classes);
    CHECK(eval::to_json(table.rows[2].prf).dump() == eval::to_json(plain.report.prf).dump());
    CHECK(table.rows[0].classes.size() == 2);
    CHECK(std::is_sorted(table.rows[1].classes.begin(), table.rows[1].classes.end()));
    const auto csv = eval::to_csv(table);
    CHECK(csv.rfind("n_classes", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
}

TEST_CASE("choose_classes is seeded and validated", "[pipeline][sweep]") {
    const std::vector<std::string> cls{"a", "b", "c", "d", "e", "f"};
    CHECK(eval::choose_classes(cls, 3, 1) == eval::choose_classes(cls, 3, 1));
    CHECK(eval::choose_classes(cls, 6, 1) == cls);
    CHECK_THROWS_AS(eval::choose_classes(cls, 7, 1), InvalidArgument);
    CHECK_THROWS_AS(eval::choose_classes(cls, 1, 1), InvalidArgument);
    std::set<std::vector<std::string>> distinct;
    for (std::uint64_t s = 0; s < 10; ++s) distinct.insert(eval::choose_classes(cls, 3, s));
    CHECK(distinct.size() > 1);
}

TEST_CASE("macro recall rises with the private vocabulary mix", "[pipeline][simgen][property]") {
    const std::vector<double> mixes{0.0, 0.25, 0.5, 1.0};
    std::size_t inversions = 0;
    for (std::uint64_t seed : {1, 2, 3}) {
        std::vector<double> recall;
        for (double mix : mixes) {
            simgen::SimSpec s;
            s.n_classes = 5;
            s.comments_per_class = 120;
            s.private_mix = mix;
            s.seed = seed;
            const auto ds = build_dataset(simgen::generate_corpus(s)).dataset;
            PipelineSpec p;
            p.seed = seed;
            recall.push_back(run_pipeline(p, ds, SplitSpec{80, 10, 30, seed}, {}).report.prf.macro_recall);
        }
        INFO("seed " << seed << " recall " << recall[0] << " " << recall[1] << " " << recall[2] << " " << recall[3]);
        CHECK(recall.back() > recall.front());
        for (std::size_t i = 1; i < recall.size(); ++i) inversions += recall[i] < recall[i - 1];
    }
    CHECK(inversions <= 1);
}
