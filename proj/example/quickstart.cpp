// Generates a small synthetic corpus, trains Writeprints + MLP and prints
// the headline metrics and the abstention trade-off.

#include <cstdio>

#include "lmfp/lmfp.hpp"

int main() {
    using namespace lmfp;

    simgen::SimSpec sim;
    sim.n_classes = 5;
    sim.comments_per_class = 300;
    sim.private_mix = 0.5;
    sim.seed = 7;
    const auto corpus = simgen::generate_corpus(sim);
    const auto dataset = build_dataset(corpus).dataset;
    const auto splits = split(dataset, SplitSpec{200, 40, 60, 7});

    pipeline::PipelineSpec spec;
    spec.features = pipeline::FeatureKind::Writeprints;
    spec.classifier = classifiers::Kind::Mlp;
    spec.seed = 7;
    const auto result = pipeline::run_pipeline(spec, splits, {});

    const auto& prf = result.report.prf;
    std::printf("macro precision %.3f  macro recall %.3f\n", prf.macro_precision, prf.macro_recall);
    for (const auto& [k, acc] : result.report.topk) std::printf("top-%zu accuracy %.3f\n", k, acc);
    std::printf("\nthreshold  coverage  micro-P  micro-R\n");
    for (const auto& pt : result.report.curve)
        std::printf("%9.1f  %8.3f  %7.3f  %7.3f\n", pt.threshold, pt.coverage, pt.metrics.micro_precision, pt.metrics.micro_recall);
}
