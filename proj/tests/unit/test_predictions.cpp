#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "seqmoments/errors.hpp"
#include "seqmoments/metrics.hpp"
#include "seqmoments/predictions.hpp"
#include "seqmoments/synthetic.hpp"
#include "test_util.hpp"

using namespace seqmoments;
using namespace testutil;

namespace {

PredictionSet preds(const Alphabet& a, std::initializer_list<std::pair<const char*, double>> items) {
    std::vector<PredictionSet::Entry> entries;
    for (const auto& [text, p] : items) entries.push_back({seq(text, a), p});
    return PredictionSet("M", std::move(entries));
}

TaskBundle small_synthetic_task() {
    SyntheticFamilySpec spec;
    spec.alphabet_size = 6;
    spec.families = 6;
    spec.sequences_per_family = 10;
    spec.target_sequences = 3;
    spec.sequence_length = 40;
    spec.seed = 3;
    TaskOptions o;
    o.segment_length = 4;
    return build_task(generate_families(spec), o);
}

// MICRO MSPC and MICRO MR of a single model over n = 1..L.
std::pair<MetricValue, MetricValue> micro_scores(const TaskBundle& task, const PredictionSet& p) {
    EvaluationInput in;
    in.models.push_back({"M", {}});
    for (std::size_t n = 1; n <= task.segment_length; ++n) {
        const auto s = enumerate_support(task.domain, n);
        in.gold.push_back(gold_moments(task.domain, task.target, s));
        in.partitions.push_back(seen_partition(LabeledSet{}, s));
        in.models[0].tables.push_back(model_moments(task.domain, p, s));
    }
    const auto r = evaluate(in);
    return {r.micro_at(Metric::MSPC, "M"), r.micro_at(Metric::MR, "M")};
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t h = v.size() / 2;
    return v.size() % 2 ? v[h] : (v[h - 1] + v[h]) / 2;
}

} // namespace

TEST_CASE("load_predictions") {
    TempDir dir;
    const auto a = ab();
    write_file(dir / "p.tsv", "ab\t0.9\nbb\t0.1\n");
    const auto p = load_predictions(dir / "p.tsv", a, Tokenization::Char, "M");
    CHECK(p.size() == 2);
    CHECK(p.probability(seq("ab", a).view()) == 0.9);
    CHECK(p.probability(seq("bb", a).view()) == 0.1);
    CHECK_FALSE(p.probability(seq("aa", a).view()).has_value());
    CHECK(p.model_id() == "M");

    write_file(dir / "sci.tsv", "ab\t1e-3\nbb\t1.0E0\n");
    CHECK(load_predictions(dir / "sci.tsv", a, Tokenization::Char, "M").probability(seq("ab", a).view()) == 1e-3);

    write_file(dir / "range.tsv", "ab\t1.5\n");
    CHECK_THROWS_AS(load_predictions(dir / "range.tsv", a, Tokenization::Char, "M"), InputError);
    write_file(dir / "nan.tsv", "ab\tx\n");
    CHECK_THROWS_AS(load_predictions(dir / "nan.tsv", a, Tokenization::Char, "M"), InputError);
    write_file(dir / "sym.tsv", "ac\t0.5\n");
    CHECK_THROWS_AS(load_predictions(dir / "sym.tsv", a, Tokenization::Char, "M"), InputError);
    write_file(dir / "notab.tsv", "ab 0.5\n");
    CHECK_THROWS_AS(load_predictions(dir / "notab.tsv", a, Tokenization::Char, "M"), InputError);

    write_file(dir / "dup.tsv", "ab\t0.9\nab\t0.8\n");
    try {
        load_predictions(dir / "dup.tsv", a, Tokenization::Char, "M");
        FAIL("expected an error");
    } catch (const InputError& e) {
        CHECK(std::string(e.what()).find("duplicate key ab") != std::string::npos);
    }
}

TEST_CASE("prediction round trip") {
    TempDir dir;
    const auto a = abcd();
    const auto p = preds(a, {{"abc", 0.1}, {"dda", 1.0 / 3.0}, {"bbb", 0.0}, {"ccc", 1.0}});
    save_predictions(p, dir / "p.tsv", a, Tokenization::Char);
    CHECK(load_predictions(dir / "p.tsv", a, Tokenization::Char, "M") == p);
}

TEST_CASE("PredictionSet rejects bad entries") {
    const auto a = ab();
    CHECK_THROWS_AS(preds(a, {{"ab", -0.1}}), InputError);
    CHECK_THROWS_AS(preds(a, {{"ab", std::nan("")}}), InputError);
    CHECK_THROWS_AS(preds(a, {{"ab", 0.2}, {"ab", 0.2}}), InputError);
}

TEST_CASE("validate_coverage") {
    const auto a = ab();
    const auto u = corpus(a, {{"ab", 2}, {"bb", 1}});
    CHECK(validate_coverage(preds(a, {{"ab", 1}, {"bb", 0}}), u).empty());
    CHECK(validate_coverage(preds(a, {{"ab", 1}}), u) == std::vector<Sequence>{seq("bb", a)});
    CHECK(validate_coverage(preds(a, {}), SequenceCorpus(a, {})).empty());
}

TEST_CASE("oracle_predictor") {
    const auto a = ab();
    const auto u = corpus(a, {{"ab", 2}, {"bb", 1}});
    const auto task = task_from(u, {"ab"});
    const auto p = oracle_predictor(task);
    CHECK(p.size() == 2);
    CHECK(p.probability(seq("ab", a).view()) == 1.0);
    CHECK(p.probability(seq("bb", a).view()) == 0.0);

    const auto none = oracle_predictor(task_from(u, {}));
    for (const auto& e : none.entries()) CHECK(e.probability == 0.0);

    for (std::size_t n = 1; n <= 2; ++n) {
        const auto s = enumerate_support(u, n);
        CHECK(model_moments(u, p, s) == gold_moments(u, task.target, s));
    }
}

TEST_CASE("noisy_oracle_predictor") {
    Rng rng(6);
    for (int trial = 0; trial < 10; ++trial) {
        const auto task = random_task(rng, 4, 200, 4);
        const auto seed = rng.next();
        CHECK(noisy_oracle_predictor(task, 0.0, seed).entries().size() == oracle_predictor(task).size());
        const auto clean = noisy_oracle_predictor(task, 0.0, seed);
        const auto oracle = oracle_predictor(task);
        for (std::size_t i = 0; i < clean.size(); ++i) {
            CHECK(clean.entries()[i].sequence == oracle.entries()[i].sequence);
            CHECK(clean.entries()[i].probability == oracle.entries()[i].probability);
        }
        const auto noisy = noisy_oracle_predictor(task, 0.4, seed);
        CHECK(noisy == noisy_oracle_predictor(task, 0.4, seed));
        for (const auto& e : noisy.entries()) {
            CHECK(e.probability >= 0.0);
            CHECK(e.probability <= 1.0);
        }
        CHECK(validate_coverage(noisy, task.domain).empty());
    }
    const auto task = small_synthetic_task();
    CHECK_THROWS_AS(noisy_oracle_predictor(task, 1.0, 1), InputError);
    CHECK_THROWS_AS(noisy_oracle_predictor(task, -0.1, 1), InputError);
    CHECK_FALSE(noisy_oracle_predictor(task, 0.5, 1) == noisy_oracle_predictor(task, 0.5, 2));
}

TEST_CASE("oracle output scores perfectly") {
    const auto task = small_synthetic_task();
    const auto p = oracle_predictor(task);
    EvaluationInput in;
    in.models.push_back({"ORACLE", {}});
    for (std::size_t n = 1; n <= task.segment_length; ++n) {
        const auto s = enumerate_support(task.domain, n);
        in.gold.push_back(gold_moments(task.domain, task.target, s));
        in.partitions.push_back(seen_partition(LabeledSet{}, s));
        in.models[0].tables.push_back(model_moments(task.domain, p, s));
    }
    const auto r = evaluate(in);
    for (std::size_t i = 0; i < r.lengths.size(); ++i) {
        const auto n = r.lengths[i].n;
        const auto& mspc_v = r.at(Metric::MSPC, "ORACLE", n);
        if (mspc_v) CHECK(*mspc_v == 1.0);
        const auto& mspcp_v = r.at(Metric::MSPCP, "ORACLE", n);
        if (mspcp_v) CHECK(*mspcp_v == 1.0);
        // every gold-positive moment is ranked ahead of every zero one
        const auto& mr_v = r.at(Metric::MR, "ORACLE", n);
        const double K = static_cast<double>(r.lengths[i].gold_nonzero);
        const double N = static_cast<double>(r.lengths[i].support_size);
        if (mr_v) CHECK(*mr_v == doctest::Approx(1.0 - (K + 1) / (2 * N)).epsilon(1e-12));
    }
}

TEST_CASE("median MICRO MSPC does not increase with noise") {
    const auto task = small_synthetic_task();
    double previous = 2.0;
    for (double eps : {0.0, 0.25, 0.5, 0.75}) {
        std::vector<double> values;
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            const auto [mspc_micro, mr_micro] = micro_scores(task, noisy_oracle_predictor(task, eps, seed));
            REQUIRE(mspc_micro.has_value());
            values.push_back(*mspc_micro);
        }
        const double m = median(values);
        CHECK(m <= previous);
        previous = m;
    }
}

TEST_CASE("near-total noise drives MR toward 0.5") {
    const auto task = small_synthetic_task();
    std::vector<double> values;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto [mspc_micro, mr_micro] = micro_scores(task, noisy_oracle_predictor(task, 0.999, seed));
        REQUIRE(mr_micro.has_value());
        values.push_back(*mr_micro);
    }
    CHECK(median(values) == doctest::Approx(0.5).epsilon(0.1));
}
