// lmfp command-line front end.
//
//   lmfp simgen    --out DIR [--config SPEC.json] [spec flags]
//   lmfp analyze   --corpus FILE [--cross FILE] --out DIR
//   lmfp featurize --corpus FILE --features KIND [--split A,B,C] --out DIR
//   lmfp train     --train FILE [--val FILE] --classifier KIND [--config CFG.json] --out DIR
//   lmfp evaluate  --model FILE --features FILE [--ks ...] [--thresholds ...] --out DIR
//   lmfp sweep     --kind train-size|class-count --corpus FILE --values ... --out DIR
//
// Every command writes one manifest.json into its output directory. Metric
// outputs carry no timestamps, so reruns with the same inputs are
// byte-identical. Exit codes: 0 ok, 1 runtime or input error, 3 metric
// invariant violation, CLI11 codes for usage errors.

#include <chrono>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lmfp/lmfp.hpp"

namespace fs = std::filesystem;
using namespace lmfp;

namespace {

constexpr int kExitError = 1;
constexpr int kExitInvariant = 3;

class InvariantViolation : public Error {
public:
    using Error::Error;
};

std::string utc_now() {
    const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void require_input(const fs::path& p) {
    if (p.empty()) return;
    if (!fs::exists(p)) throw Error("input not found: " + p.string());
    if (fs::is_directory(p)) throw Error("input is a directory, expected a file: " + p.string());
}

/// Collects what a run consumed and produced; written last as manifest.json.
class Manifest {
public:
    Manifest(std::string command, std::vector<std::string> args) : started_(utc_now()) {
        j_["command"] = std::move(command);
        j_["args"] = std::move(args);
        j_["tool_version"] = kVersion;
        j_["inputs"] = json::object();
        j_["outputs"] = json::array();
    }

    void input(const std::string& role, const fs::path& p) {
        if (p.empty()) return;
        j_["inputs"][role] = {{"path", p.string()}, {"fnv1a64", file_digest(p)}};
    }
    void config(json c) { j_["config"] = std::move(c); }
    void seed(std::uint64_t s) { j_["seed"] = s; }
    void note(const std::string& k, json v) { j_["notes"][k] = std::move(v); }

    void write_text(const fs::path& dir, const std::string& name, const std::string& text) {
        write_file(dir / name, text);
        j_["outputs"].push_back(name);
    }
    void write_json(const fs::path& dir, const std::string& name, const json& v) { write_text(dir, name, v.dump(2) + "\n"); }

    void finish(const fs::path& dir) {
        j_["timestamps"] = {{"started", started_}, {"finished", utc_now()}};
        lmfp::write_json(dir / "manifest.json", j_);
    }

private:
    json j_;
    std::string started_;
};

std::vector<std::string> split_csv_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

SplitSpec parse_split(const std::string& s, std::uint64_t seed) {
    const auto parts = split_csv_list(s);
    std::vector<std::size_t> n;
    for (const auto& p : parts) {
        if (p.empty() || p.find_first_not_of("0123456789") != std::string::npos)
            throw InvalidArgument("--split expects three per-class counts: train,val,test (got '" + s + "')");
        n.push_back(std::stoul(p));
    }
    if (n.size() != 3) throw InvalidArgument("--split expects three per-class counts: train,val,test (got '" + s + "')");
    return {n[0], n[1], n[2], seed};
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

json read_config(const fs::path& p) {
    if (p.empty()) return json::object();
    require_input(p);
    auto j = read_json(p);
    if (!j.is_object()) throw ParseError(p.string(), 0, "config must be a JSON object");
    return j;
}

LabeledDataset load_dataset(const fs::path& corpus, Manifest& m, const std::string& role = "corpus") {
    require_input(corpus);
    m.input(role, corpus);
    auto pre = build_dataset(load_corpus(corpus));
    for (const auto& r : pre.rejected) std::cerr << "warning: rejected " << r.id << ": " << r.reason << "\n";
    m.note(role + "_rejected", pre.rejected.size());
    if (pre.dataset.size() == 0) throw Error("no usable comments in " + corpus.string());
    return std::move(pre.dataset);
}

// ---------------------------------------------------------------- simgen

struct SimgenArgs {
    fs::path out, config;
    std::optional<std::size_t> n_classes, shared, priv, per_class, min_len, max_len, successors;
    std::optional<int> order;
    std::optional<double> mix;
    std::optional<std::uint64_t> seed;
};

int cmd_simgen(const SimgenArgs& a, Manifest& m) {
    auto spec = simgen::SimSpec::from_json(read_config(a.config));
    m.input("config", a.config);
    if (a.n_classes) spec.n_classes = *a.n_classes;
    if (a.shared) spec.shared_vocab_size = *a.shared;
    if (a.priv) spec.private_vocab_size = *a.priv;
    if (a.per_class) spec.comments_per_class = *a.per_class;
    if (a.min_len) spec.min_length = *a.min_len;
    if (a.max_len) spec.max_length = *a.max_len;
    if (a.successors) spec.successors = *a.successors;
    if (a.order) spec.order = *a.order;
    if (a.mix) spec.private_mix = *a.mix;
    if (a.seed) spec.seed = *a.seed;
    spec.validate();
    m.config(spec.to_json());
    m.seed(spec.seed);
    const auto corpus = simgen::generate_corpus(spec);
    m.write_text(a.out, "corpus.jsonl", corpus_to_jsonl(corpus));
    m.write_json(a.out, "simspec.json", spec.to_json());
    m.note("comments", corpus.size());
    return 0;
}

// ---------------------------------------------------------------- analyze

struct ClassTexts {
    std::vector<std::string> classes;
    std::map<std::string, std::vector<std::string>> texts;
    std::map<std::string, std::vector<std::vector<std::string>>> tokens;
};

ClassTexts group_by_class(const LabeledDataset& ds) {
    ClassTexts g;
    g.classes = ds.classes;
    for (const auto& c : ds.comments) {
        g.texts[c.class_label].push_back(c.raw);
        g.tokens[c.class_label].push_back(c.tokens);
    }
    return g;
}

struct ClassStats {
    textstats::LexicalStats lex;
    double readability = 0.0;
    std::size_t vocab = 0;
    std::size_t n = 0;
};

std::vector<textstats::VocabSet> vocab_family(const ClassTexts& g) {
    std::vector<textstats::VocabSet> out;
    for (const auto& c : g.classes) out.push_back(textstats::build_vocab(c, g.texts.at(c)));
    return out;
}

std::map<std::string, ClassStats> class_stats(const ClassTexts& g, const std::vector<textstats::VocabSet>& vocab) {
    std::map<std::string, ClassStats> out;
    for (std::size_t i = 0; i < g.classes.size(); ++i) {
        const auto& texts = g.texts.at(g.classes[i]);
        ClassStats s;
        s.n = texts.size();
        if (texts.size() >= 2) s.lex = textstats::lexical_profile(texts);
        double sum = 0.0;
        std::size_t scored = 0;
        for (const auto& t : texts) {
            if (textstats::count_words(t) == 0) continue;
            sum += textstats::readability(t);
            ++scored;
        }
        s.readability = scored ? sum / static_cast<double>(scored) : 0.0;
        s.vocab = vocab[i].size();
        out[g.classes[i]] = s;
    }
    return out;
}

std::string stats_csv(const std::vector<std::string>& classes, const std::map<std::string, ClassStats>& stats) {
    std::string out = "class,n_comments,avg_words,sd_words,avg_sentences,sd_sentences,readability,vocab_size\n";
    for (const auto& c : classes) {
        const auto& s = stats.at(c);
        out += csv_field(c) + "," + std::to_string(s.n) + "," + fmt_double(s.lex.avg_words) + "," + fmt_double(s.lex.sd_words) + "," +
               fmt_double(s.lex.avg_sentences) + "," + fmt_double(s.lex.sd_sentences) + "," + fmt_double(s.readability) + "," +
               std::to_string(s.vocab) + "\n";
    }
    return out;
}

std::string overlap_csv(const textstats::OverlapMatrix& m) {
    std::string out = "class";
    for (const auto& c : m.col_labels) out += "," + csv_field(c);
    out += "\n";
    for (std::size_t i = 0; i < m.row_labels.size(); ++i) {
        out += csv_field(m.row_labels[i]);
        for (double v : m.values[i]) out += "," + fmt_double(v);
        out += "\n";
    }
    return out;
}

/// First `cap` items after a seeded shuffle; all of them if cap is 0 or larger.
template <typename T>
std::vector<T> sample_cap(std::vector<T> xs, std::size_t cap, std::uint64_t seed) {
    if (cap == 0 || xs.size() <= cap) return xs;
    Rng rng(seed);
    rng.shuffle(xs);
    xs.resize(cap);
    return xs;
}

struct AnalyzeArgs {
    fs::path corpus, cross, out;
    std::size_t quality_cap = 200;
    std::uint64_t seed = 0;
};

int cmd_analyze(const AnalyzeArgs& a, Manifest& m) {
    m.seed(a.seed);
    m.config({{"quality_cap", a.quality_cap}, {"cross", !a.cross.empty()}, {"statistics_text", "untruncated raw comment"}});
    const auto syn = group_by_class(load_dataset(a.corpus, m, "corpus"));
    const auto syn_vocab = vocab_family(syn);
    const auto syn_stats = class_stats(syn, syn_vocab);
    m.write_text(a.out, "class_stats.csv", stats_csv(syn.classes, syn_stats));
    const auto syn_syn = textstats::jaccard_matrix(syn_vocab, syn_vocab);

    json summary;
    summary["statistics_text"] = "untruncated raw comment";
    double corpus_read = 0.0;
    for (const auto& [c, s] : syn_stats) corpus_read += s.readability;
    summary["corpus_mean_readability"] = corpus_read / static_cast<double>(syn_stats.size());
    summary["reference_points"] = {{"readability_synthetic", 16.8}, {"readability_organic", 11.5}, {"correlation_rho_lower_bound", 0.83}};

    if (a.cross.empty()) {
        m.write_text(a.out, "overlap.csv", overlap_csv(syn_syn));
        summary["mode"] = "single";
        summary["correlations"] = json::object();
        m.write_json(a.out, "correlation.json", summary);
        return 0;
    }

    const auto org = group_by_class(load_dataset(a.cross, m, "cross_corpus"));
    const auto org_vocab = vocab_family(org);
    const auto org_stats = class_stats(org, org_vocab);
    m.write_text(a.out, "class_stats_cross.csv", stats_csv(org.classes, org_stats));
    m.write_text(a.out, "overlap_syn_syn.csv", overlap_csv(syn_syn));
    m.write_text(a.out, "overlap_org_org.csv", overlap_csv(textstats::jaccard_matrix(org_vocab, org_vocab)));
    m.write_text(a.out, "overlap_syn_org.csv", overlap_csv(textstats::jaccard_matrix(syn_vocab, org_vocab)));

    // Class-wise correlation between the two corpora, over shared classes.
    std::vector<std::string> shared;
    for (const auto& c : syn.classes)
        if (org_stats.count(c)) shared.push_back(c);
    summary["mode"] = "cross";
    summary["shared_classes"] = shared;
    json corr = json::object();
    auto stat_value = [](const ClassStats& s, const std::string& name) {
        if (name == "avg_words") return s.lex.avg_words;
        if (name == "sd_words") return s.lex.sd_words;
        if (name == "avg_sentences") return s.lex.avg_sentences;
        if (name == "sd_sentences") return s.lex.sd_sentences;
        if (name == "readability") return s.readability;
        return static_cast<double>(s.vocab);
    };
    for (const std::string name : {"avg_words", "sd_words", "avg_sentences", "sd_sentences", "readability", "vocab_size"}) {
        std::vector<double> xs, ys;
        for (const auto& c : shared) {
            xs.push_back(stat_value(org_stats.at(c), name));
            ys.push_back(stat_value(syn_stats.at(c), name));
        }
        try {
            const auto r = textstats::pearson(xs, ys);
            corr[name] = {{"rho", r.rho}, {"slope", r.slope}, {"x", "cross_corpus"}, {"y", "corpus"}};
        } catch (const InvalidArgument& e) {
            corr[name] = {{"error", e.what()}};
        }
    }
    summary["correlations"] = corr;
    m.write_json(a.out, "correlation.json", summary);

    // Candidates from the primary corpus scored against pooled same-class
    // references from the cross corpus.
    json quality = json::object();
    quality["pairing"] = "each candidate against the pooled same-class references";
    quality["sample_cap"] = a.quality_cap;
    json per_class = json::object();
    for (std::size_t i = 0; i < shared.size(); ++i) {
        const auto& c = shared[i];
        const auto cand = sample_cap(syn.tokens.at(c), a.quality_cap, derive_seed(a.seed, 2 * i));
        const auto refs = sample_cap(org.tokens.at(c), a.quality_cap, derive_seed(a.seed, 2 * i + 1));
        const auto q = textstats::quality_scores(cand, refs);
        per_class[c] = {{"bleu", q.bleu}, {"gleu", q.gleu}, {"chrf", q.chrf}, {"skipped", q.skipped}};
    }
    quality["classes"] = per_class;
    m.write_json(a.out, "quality.json", quality);
    return 0;
}

// ---------------------------------------------------------------- featurize

struct FeaturizeArgs {
    fs::path corpus, out, likelihoods, glove, embeddings, context, scaler;
    std::string kind = "writeprints";
    std::string split;  // "train,val,test" per-class counts
    std::optional<bool> scale;
    std::uint64_t seed = 0;
};

int cmd_featurize(const FeaturizeArgs& a, Manifest& m) {
    const auto kind = pipeline::parse_feature_kind(a.kind);
    const auto ds = load_dataset(a.corpus, m);
    const pipeline::ResourcePaths paths{a.likelihoods, a.glove, a.embeddings};
    for (const auto& [role, p] : {std::pair{"likelihoods", paths.likelihoods}, {"glove", paths.glove}, {"embeddings", paths.embeddings}}) {
        require_input(p);
        m.input(role, p);
    }
    const auto res = pipeline::load_resources(kind, paths);
    pipeline::PipelineSpec spec;
    spec.features = kind;
    spec.scale = a.scale;
    spec.seed = a.seed;
    m.seed(a.seed);
    json cfg{{"features", a.kind}, {"scale", spec.scaled()}};

    if (!a.split.empty()) {
        const auto ss = parse_split(a.split, a.seed);
        cfg["split"] = {{"train_per_class", ss.train_per_class}, {"val_per_class", ss.val_per_class},
                        {"test_per_class", ss.test_per_class}, {"seed", ss.seed}};
        m.config(cfg);
        const auto f = pipeline::fit_features(spec, split(ds, ss), res);
        m.write_text(a.out, "train.features.jsonl", features::to_jsonl(f.train));
        m.write_text(a.out, "val.features.jsonl", features::to_jsonl(f.val));
        m.write_text(a.out, "test.features.jsonl", features::to_jsonl(f.test));
        if (f.context) m.write_json(a.out, "context.json", f.context->to_json());
        if (f.scaler) m.write_json(a.out, "scaler.json", f.scaler->to_json());
        return 0;
    }

    // Whole corpus in one file. Context and scaler come from earlier runs when
    // given, otherwise they are fitted on this corpus.
    std::optional<features::WriteprintsContext> ctx;
    if (kind == pipeline::FeatureKind::Writeprints) {
        if (!a.context.empty()) {
            require_input(a.context);
            m.input("context", a.context);
            ctx = features::WriteprintsContext::from_json(read_json(a.context));
        } else {
            ctx = features::fit_writeprints_context(ds);
            m.write_json(a.out, "context.json", ctx->to_json());
        }
    }
    auto fset = pipeline::featurize(kind, ds, res, ctx ? &*ctx : nullptr);
    if (spec.scaled()) {
        features::MinMaxScaler s;
        if (!a.scaler.empty()) {
            require_input(a.scaler);
            m.input("scaler", a.scaler);
            s = features::MinMaxScaler::from_json(read_json(a.scaler));
        } else {
            s = features::MinMaxScaler::fit(fset.X);
            m.write_json(a.out, "scaler.json", s.to_json());
        }
        fset = pipeline::apply_scaler(std::move(fset), s);
    }
    m.config(cfg);
    m.write_text(a.out, "features.jsonl", features::to_jsonl(fset));
    return 0;
}

// ---------------------------------------------------------------- train

struct TrainArgs {
    fs::path train, val, config, out;
    std::string classifier = "mlp";
    std::uint64_t seed = 0;
};

int cmd_train(const TrainArgs& a, Manifest& m) {
    const auto kind = classifiers::parse_kind(a.classifier);
    require_input(a.train);
    require_input(a.val);
    m.input("train", a.train);
    m.input("val", a.val);
    m.input("config", a.config);
    const auto train = features::load_features(a.train);
    features::FeatureSet val;
    if (!a.val.empty()) val = features::load_features(a.val);
    const auto model = classifiers::train_model(kind, train, val, read_config(a.config), a.seed);
    m.seed(a.seed);
    m.config({{"classifier", a.classifier}, {"classifier_config", model.train_config}});
    m.write_text(a.out, "model.json", classifiers::to_json(model).dump() + "\n");
    return 0;
}

// ---------------------------------------------------------------- evaluate

/// Evaluation invariants that must hold for any probability matrix.
void check_report(const eval::EvalReport& r, std::size_t n_classes) {
    double prev = -1.0;
    for (const auto& [k, v] : r.topk) {
        if (v < prev) throw InvariantViolation("top-k accuracy decreased at k=" + std::to_string(k));
        prev = v;
        if (k == n_classes && v != 1.0) throw InvariantViolation("top-C accuracy is not 1");
    }
    for (std::size_t i = 1; i < r.curve.size(); ++i) {
        if (r.curve[i].coverage > r.curve[i - 1].coverage) throw InvariantViolation("coverage increased with threshold");
        if (r.curve[i].metrics.micro_recall > r.curve[i - 1].metrics.micro_recall)
            throw InvariantViolation("micro recall increased with threshold");
    }
    std::size_t confused = 0;
    for (const auto& row : r.prf.confusion)
        for (auto n : row) confused += n;
    if (confused != r.prf.n_predicted) throw InvariantViolation("confusion matrix total differs from predicted count");
}

std::string projection_csv(const features::FeatureSet& fs, const eval::PcaResult& pca) {
    std::string out = "id,class,pc1,pc2\n";
    for (std::size_t i = 0; i < fs.size(); ++i) {
        const auto r = static_cast<Eigen::Index>(i);
        out += csv_field(fs.ids[i]) + "," + csv_field(fs.classes[fs.labels[i]]) + "," + fmt_double(pca.points(r, 0)) + "," +
               (pca.points.cols() > 1 ? fmt_double(pca.points(r, 1)) : "0") + "\n";
    }
    return out;
}

struct EvaluateArgs {
    fs::path model, features, out;
    std::vector<std::size_t> ks{1, 5, 10};
    std::vector<double> thresholds{0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    bool ks_given = false;
    bool projection = true;
};

int cmd_evaluate(const EvaluateArgs& a, Manifest& m) {
    require_input(a.model);
    require_input(a.features);
    m.input("model", a.model);
    m.input("features", a.features);
    const auto model = classifiers::load_model(a.model);
    const auto fs = features::load_features(a.features);
    if (fs.classes != model.class_labels) throw Error("feature file classes differ from the model's class labels");
    if (fs.shape != model.input_shape) throw Error("feature shape differs from the model's input shape");
    const auto ks = a.ks_given ? a.ks : pipeline::clip_ks(a.ks, fs.classes.size());
    m.config({{"ks", ks}, {"ks_requested", a.ks}, {"thresholds", a.thresholds}});
    const auto proba = model.predict_proba(fs.X);
    const auto report = eval::evaluate(proba, fs.labels, ks, a.thresholds);
    check_report(report, fs.classes.size());
    json rj = eval::to_json(report, fs.classes);
    rj["n_samples"] = fs.size();
    rj["model_kind"] = classifiers::to_string(model.kind);
    m.write_json(a.out, "report.json", rj);
    m.write_text(a.out, "tradeoff.csv", eval::tradeoff_csv(report.curve));
    m.write_text(a.out, "confusion.csv", eval::confusion_csv(report.prf, fs.classes));
    if (a.projection && fs.size() >= 2) {
        try {
            m.write_text(a.out, "projection.csv", projection_csv(fs, eval::pca_projection(fs.X, 2, 0)));
        } catch (const InvalidArgument& e) {
            std::cerr << "warning: projection skipped: " << e.what() << "\n";
        }
    }
    return 0;
}

// ---------------------------------------------------------------- sweep

struct SweepArgs {
    fs::path corpus, config, out, likelihoods, glove, embeddings;
    std::string kind = "train-size";
    std::string features = "writeprints";
    std::string classifier = "mlp";
    std::vector<std::size_t> values;
    std::string split = "800,100,200";
    std::uint64_t seed = 0;
};

int cmd_sweep(const SweepArgs& a, Manifest& m) {
    if (a.kind != "train-size" && a.kind != "class-count") throw InvalidArgument("--kind must be train-size or class-count");
    if (a.values.empty()) throw InvalidArgument("--values needs at least one entry");
    const auto ds = load_dataset(a.corpus, m);
    m.input("config", a.config);
    pipeline::PipelineSpec spec;
    spec.features = pipeline::parse_feature_kind(a.features);
    spec.classifier = classifiers::parse_kind(a.classifier);
    spec.classifier_config = read_config(a.config);
    spec.seed = a.seed;
    const pipeline::ResourcePaths paths{a.likelihoods, a.glove, a.embeddings};
    for (const auto& [role, p] : {std::pair{"likelihoods", paths.likelihoods}, {"glove", paths.glove}, {"embeddings", paths.embeddings}}) {
        require_input(p);
        m.input(role, p);
    }
    const auto res = pipeline::load_resources(spec.features, paths);
    const auto ss = parse_split(a.split, a.seed);
    json cfg = spec.to_json();
    cfg["sweep"] = a.kind;
    cfg["values"] = a.values;
    cfg["split"] = a.split;
    m.config(cfg);
    m.seed(a.seed);
    const auto table = a.kind == "train-size" ? eval::learning_curve(spec, split(ds, ss), a.values, res)
                                              : eval::class_sweep(spec, ds, ss, a.values, a.seed, res);
    m.write_json(a.out, "sweep.json", eval::to_json(table));
    m.write_text(a.out, "sweep.csv", eval::to_csv(table));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"lmfp: fingerprint which language model wrote a text"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    SimgenArgs sg;
    auto* simgen_cmd = app.add_subcommand("simgen", "Generate a synthetic multi-class corpus");
    simgen_cmd->add_option("--out", sg.out, "Output directory")->required();
    simgen_cmd->add_option("--config,--spec", sg.config, "SimSpec JSON; flags override it");
    simgen_cmd->add_option("--classes", sg.n_classes, "Number of classes");
    simgen_cmd->add_option("--shared-vocab", sg.shared, "Shared vocabulary size");
    simgen_cmd->add_option("--private-vocab", sg.priv, "Private words per class");
    simgen_cmd->add_option("--per-class", sg.per_class, "Comments per class");
    simgen_cmd->add_option("--min-length", sg.min_len, "Minimum comment length in words");
    simgen_cmd->add_option("--max-length", sg.max_len, "Maximum comment length in words");
    simgen_cmd->add_option("--successors", sg.successors, "Nonzero entries per shared transition row");
    simgen_cmd->add_option("--order", sg.order, "Markov order, 1 or 2");
    simgen_cmd->add_option("--mix", sg.mix, "Probability mass on private vocabulary");
    simgen_cmd->add_option("--seed", sg.seed, "Random seed");

    AnalyzeArgs an;
    auto* analyze_cmd = app.add_subcommand("analyze", "Lexical, readability, overlap and quality statistics");
    analyze_cmd->add_option("--corpus", an.corpus, "Corpus JSONL")->required();
    analyze_cmd->add_option("--cross", an.cross, "Second corpus for cross-corpus comparison");
    analyze_cmd->add_option("--out", an.out, "Output directory")->required();
    analyze_cmd->add_option("--quality-cap", an.quality_cap, "Comments per class sampled for quality scores (0 = all)");
    analyze_cmd->add_option("--seed", an.seed, "Seed for quality sampling");

    FeaturizeArgs fz;
    auto* featurize_cmd = app.add_subcommand("featurize", "Extract features from a corpus");
    featurize_cmd->add_option("--corpus", fz.corpus, "Corpus JSONL")->required();
    featurize_cmd->add_option("--features", fz.kind, "writeprints, gltr, glove or embedding");
    featurize_cmd->add_option("--likelihoods", fz.likelihoods, "Likelihood JSONL (gltr)");
    featurize_cmd->add_option("--glove", fz.glove, "GloVe text table (glove)");
    featurize_cmd->add_option("--embeddings", fz.embeddings, "Embedding JSONL (embedding)");
    featurize_cmd->add_option("--split", fz.split, "Per-class train,val,test counts, e.g. 800,100,200");
    featurize_cmd->add_option("--context", fz.context, "Fitted writeprints context to reuse");
    featurize_cmd->add_option("--scaler", fz.scaler, "Fitted scaler to reuse");
    featurize_cmd->add_flag("--scale,!--no-scale", fz.scale, "Min-max scale to [-3, 3]");
    featurize_cmd->add_option("--seed", fz.seed, "Split seed");
    featurize_cmd->add_option("--out", fz.out, "Output directory")->required();

    TrainArgs tr;
    auto* train_cmd = app.add_subcommand("train", "Train a classifier on a feature file");
    train_cmd->add_option("--train", tr.train, "Training features")->required();
    train_cmd->add_option("--val", tr.val, "Validation features for early stopping");
    train_cmd->add_option("--classifier", tr.classifier, "gnb, dt, rf, mlp or cnn");
    train_cmd->add_option("--config", tr.config, "Classifier hyperparameters JSON");
    train_cmd->add_option("--seed", tr.seed, "Random seed");
    train_cmd->add_option("--out", tr.out, "Output directory")->required();

    EvaluateArgs ev;
    auto* evaluate_cmd = app.add_subcommand("evaluate", "Score a model on a feature file");
    evaluate_cmd->add_option("--model", ev.model, "Model JSON")->required();
    evaluate_cmd->add_option("--features", ev.features, "Feature file")->required();
    auto* ks_opt = evaluate_cmd->add_option("--ks", ev.ks, "Top-k values; defaults are clamped to the class count")->delimiter(',');
    evaluate_cmd->add_option("--thresholds", ev.thresholds, "Ascending gap thresholds")->delimiter(',');
    evaluate_cmd->add_flag("--projection,!--no-projection", ev.projection, "Write PCA projection CSV");
    evaluate_cmd->add_option("--out", ev.out, "Output directory")->required();

    SweepArgs sw;
    auto* sweep_cmd = app.add_subcommand("sweep", "Training-size or class-count sweep");
    sweep_cmd->add_option("--kind", sw.kind, "train-size or class-count");
    sweep_cmd->add_option("--corpus", sw.corpus, "Corpus JSONL")->required();
    sweep_cmd->add_option("--features", sw.features, "Feature kind");
    sweep_cmd->add_option("--classifier", sw.classifier, "Classifier kind");
    sweep_cmd->add_option("--config", sw.config, "Classifier hyperparameters JSON");
    sweep_cmd->add_option("--values", sw.values, "Per-class sizes or class counts")->delimiter(',')->required();
    sweep_cmd->add_option("--split", sw.split, "Per-class train,val,test counts");
    sweep_cmd->add_option("--likelihoods", sw.likelihoods, "Likelihood JSONL (gltr)");
    sweep_cmd->add_option("--glove", sw.glove, "GloVe text table (glove)");
    sweep_cmd->add_option("--embeddings", sw.embeddings, "Embedding JSONL (embedding)");
    sweep_cmd->add_option("--seed", sw.seed, "Random seed");
    sweep_cmd->add_option("--out", sw.out, "Output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    ev.ks_given = ks_opt->count() > 0;
    auto* sub = app.get_subcommands().front();
    Manifest manifest(sub->get_name(), std::vector<std::string>(argv + 1, argv + argc));
    fs::path out;
    try {
        int rc = 0;
        if (sub == simgen_cmd) rc = cmd_simgen(sg, manifest), out = sg.out;
        else if (sub == analyze_cmd) rc = cmd_analyze(an, manifest), out = an.out;
        else if (sub == featurize_cmd) rc = cmd_featurize(fz, manifest), out = fz.out;
        else if (sub == train_cmd) rc = cmd_train(tr, manifest), out = tr.out;
        else if (sub == evaluate_cmd) rc = cmd_evaluate(ev, manifest), out = ev.out;
        else if (sub == sweep_cmd) rc = cmd_sweep(sw, manifest), out = sw.out;
        manifest.finish(out);
        return rc;
    } catch (const InvariantViolation& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return kExitInvariant;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
}
