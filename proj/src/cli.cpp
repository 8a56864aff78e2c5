#include "seqmoments/cli.hpp"

#include <algorithm>
#include <iostream>
#include <optional>

#include <omp.h>

#include "CLI11.hpp"
#include "seqmoments/errors.hpp"
#include "seqmoments/metrics.hpp"
#include "seqmoments/moments.hpp"
#include "seqmoments/predictions.hpp"
#include "seqmoments/report.hpp"
#include "seqmoments/synthetic.hpp"
#include "seqmoments/task.hpp"
#include "text_io.hpp"

namespace seqmoments {

namespace fs = std::filesystem;

std::vector<std::size_t> parse_lengths(const std::string& text) {
    std::vector<std::size_t> out;
    auto parse_one = [&](std::string_view s) {
        std::int64_t v = 0;
        if (!detail::parse_int(detail::trim(s), v) || v < 1) throw InputError("invalid moment length '" + std::string(s) + "'");
        return static_cast<std::size_t>(v);
    };
    std::string_view rest = text;
    while (!rest.empty()) {
        auto comma = rest.find(',');
        auto item = detail::trim(rest.substr(0, comma));
        rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
        if (item.empty()) continue;
        auto dots = item.find("..");
        auto dash = item.find('-');
        if (dots != std::string_view::npos || dash != std::string_view::npos) {
            const bool d = dots != std::string_view::npos;
            const auto lo = parse_one(item.substr(0, d ? dots : dash));
            const auto hi = parse_one(item.substr((d ? dots : dash) + (d ? 2 : 1)));
            if (hi < lo) throw InputError("empty length range '" + std::string(item) + "'");
            for (auto n = lo; n <= hi; ++n) out.push_back(n);
        } else {
            out.push_back(parse_one(item));
        }
    }
    if (out.empty()) throw InputError("no moment lengths given");
    for (std::size_t i = 1; i < out.size(); ++i)
        if (out[i] <= out[i - 1]) throw InputError("moment lengths must be strictly increasing");
    return out;
}

namespace {

struct GlobalOptions {
    std::string lengths;
    std::string seen_reading = "all";
    int workers = 0;
    std::uint64_t seed = 1;
    std::string out;
};

struct LabeledPath {
    std::string label;
    fs::path path;
};

LabeledPath parse_labeled_path(const std::string& arg) {
    auto eq = arg.find('=');
    if (eq == std::string::npos) return {fs::path(arg).stem().string(), arg};
    if (eq == 0 || eq + 1 == arg.size()) throw InputError("expected LABEL=FILE, got '" + arg + "'");
    return {arg.substr(0, eq), arg.substr(eq + 1)};
}

int resolve_workers(int requested) {
    return requested > 0 ? requested : std::max(1, omp_get_max_threads());
}

std::vector<std::size_t> resolve_lengths(const GlobalOptions& g, const TaskBundle& task) {
    std::vector<std::size_t> lengths;
    if (g.lengths.empty()) {
        for (std::size_t n = 1; n <= task.segment_length; ++n) lengths.push_back(n);
    } else {
        lengths = parse_lengths(g.lengths);
    }
    if (lengths.back() > task.segment_length)
        throw InputError("moment length " + std::to_string(lengths.back()) + " exceeds the segment length " +
                         std::to_string(task.segment_length));
    return lengths;
}

fs::path require_out(const GlobalOptions& g, std::string_view what) {
    if (g.out.empty()) throw InputError(std::string(what) + " needs --out");
    return g.out;
}

PredictionSet load_checked_predictions(const LabeledPath& lp, const TaskBundle& task, bool allow_missing,
                                       std::ostream& err) {
    auto preds = load_predictions(lp.path, task.alphabet(), task.tokenization, lp.label);
    const auto missing = validate_coverage(preds, task.domain);
    if (missing.empty()) return preds;
    if (!allow_missing) {
        for (const auto& s : missing) err << render(s.view(), task.alphabet(), task.tokenization) << '\n';
        throw CoverageError(lp.path.string() + ": " + std::to_string(missing.size()) +
                            " domain sequences have no prediction (listed above)");
    }
    err << "warning: " << missing.size() << " domain sequences lack predictions in '" << lp.label
        << "'; treating them as p=0\n";
    return preds;
}

// ─── task build / sample / synth ─────────────────────────────

void cmd_task_build(const GlobalOptions& g, const std::string& families, std::size_t length,
                    const std::optional<std::string>& target, const std::optional<std::string>& validation,
                    const std::string& tokenization, const std::string& alphabet_path, const std::string& multiplicity,
                    std::ostream& out) {
    const auto dir = require_out(g, "task build");
    const Tokenization t = parse_tokenization(tokenization);
    std::optional<Alphabet> alphabet;
    if (!alphabet_path.empty()) alphabet = load_alphabet(alphabet_path);
    const auto data = load_families(families, t, alphabet);
    TaskOptions opts{length, target, validation, parse_target_multiplicity(multiplicity), t};
    const auto task = build_task(data, opts);
    save_task(task, dir);
    out << "target\t" << task.target_family << "\nsparsity\t" << detail::format_double(task.sparsity())
        << "\ndomain_total\t" << task.domain.total() << "\ntarget_total\t" << task.target.total() << '\n';
}

void cmd_task_sample(const GlobalOptions& g, const std::string& task_dir, std::int64_t m) {
    if (m < 1) throw InputError("--m must be >= 1");
    const auto path = require_out(g, "task sample");
    const auto task = load_task(task_dir);
    const auto set = sample_training_set(task, static_cast<std::size_t>(m), g.seed);
    save_labeled_set(set, path, task.alphabet(), task.tokenization);
}

void cmd_task_synth(const GlobalOptions& g, SyntheticFamilySpec spec) {
    const auto path = require_out(g, "task synth");
    spec.seed = g.seed;
    const auto data = generate_families(spec);
    const Tokenization t = data.alphabet.size() <= 52 ? Tokenization::Char : Tokenization::Whitespace;
    save_families(data, path, t);
}

void cmd_predict(const GlobalOptions& g, const std::string& task_dir, const std::string& kind, double flip_rate) {
    const auto path = require_out(g, "predict");
    const auto task = load_task(task_dir);
    std::optional<PredictionSet> preds;
    if (kind == "oracle")
        preds = oracle_predictor(task);
    else if (kind == "noisy")
        preds = noisy_oracle_predictor(task, flip_rate, g.seed);
    else if (kind == "uniform")
        preds = uniform_predictor(task, g.seed);
    else
        throw InputError("unknown predictor kind '" + kind + "' (expected oracle|noisy|uniform)");
    save_predictions(*preds, path, task.alphabet(), task.tokenization);
}

// ─── moments / evaluate / compare ────────────────────────────

struct Prepared {
    TaskBundle task;
    std::vector<std::size_t> lengths;
    std::vector<SupportHandle> supports;
    std::vector<PredictionSet> predictions;
    std::optional<LabeledSet> training;
};

Prepared prepare(const GlobalOptions& g, const std::string& task_dir, const std::vector<std::string>& preds,
                 const std::string& train, bool allow_missing, std::ostream& err) {
    Prepared p{load_task(task_dir), {}, {}, {}, {}};
    p.lengths = resolve_lengths(g, p.task);
    for (const auto& item : preds) {
        auto preds_set = load_checked_predictions(parse_labeled_path(item), p.task, allow_missing, err);
        for (const auto& existing : p.predictions)
            if (existing.model_id() == preds_set.model_id())
                throw InputError("duplicate model label '" + preds_set.model_id() + "'");
        p.predictions.push_back(std::move(preds_set));
    }
    if (!train.empty()) {
        p.training = load_labeled_set(train, p.task.alphabet(), p.task.tokenization);
        validate_labeled_set(*p.training, p.task.alphabet());
    }
    for (auto n : p.lengths) p.supports.push_back(enumerate_support(p.task.domain, n));
    return p;
}

void cmd_moments(const GlobalOptions& g, const std::string& task_dir, const std::vector<std::string>& preds,
                 const std::string& train, bool allow_missing, std::ostream& err) {
    const fs::path dir = require_out(g, "moments");
    const int workers = resolve_workers(g.workers);
    const auto p = prepare(g, task_dir, preds, train, allow_missing, err);
    const auto& a = p.task.alphabet();
    const auto t = p.task.tokenization;
    const auto missing = allow_missing ? MissingPolicy::TreatAsZero : MissingPolicy::Fail;
    for (std::size_t i = 0; i < p.lengths.size(); ++i) {
        const auto tag = ".N" + std::to_string(p.lengths[i]);
        const auto& support = p.supports[i];
        save_support(*support, dir / ("support" + tag + ".txt"), a, t);
        save_moment_table(gold_moments(p.task.domain, p.task.target, support, workers), dir / ("gold" + tag + ".tsv"),
                          a, t);
        for (const auto& preds_set : p.predictions)
            save_moment_table(model_moments(p.task.domain, preds_set, support, workers, missing),
                              dir / ("model." + preds_set.model_id() + tag + ".tsv"), a, t);
        if (p.training) {
            save_moment_table(baseline_moments(p.task.domain, *p.training, support, workers),
                              dir / ("baseline" + tag + ".tsv"), a, t);
            const auto part = seen_partition(*p.training, support, parse_seen_reading(g.seen_reading));
            auto out = detail::open_output(dir / ("seen" + tag + ".txt"));
            for (auto idx : part.seen()) out << render(support->member(idx), a, t) << '\n';
        }
    }
}

void cmd_evaluate(const GlobalOptions& g, const std::string& task_dir, const std::vector<std::string>& preds,
                  const std::string& train, bool allow_missing, const std::string& plot_series, std::int64_t m,
                  const std::string& mr_lengths, std::ostream& err) {
    const fs::path dir = require_out(g, "evaluate");
    if (train.empty()) throw InputError("evaluate needs --train (seen partition and baseline)");
    const int workers = resolve_workers(g.workers);
    const SeenReading reading = parse_seen_reading(g.seen_reading);
    const auto p = prepare(g, task_dir, preds, train, allow_missing, err);
    const auto missing = allow_missing ? MissingPolicy::TreatAsZero : MissingPolicy::Fail;

    EvaluationInput input;
    for (const auto& preds_set : p.predictions) input.models.push_back({preds_set.model_id(), {}});
    input.baseline = ModelMoments{"BASELINE", {}};
    for (std::size_t i = 0; i < p.lengths.size(); ++i) {
        const auto& support = p.supports[i];
        input.gold.push_back(gold_moments(p.task.domain, p.task.target, support, workers));
        input.partitions.push_back(seen_partition(*p.training, support, reading));
        for (std::size_t k = 0; k < p.predictions.size(); ++k)
            input.models[k].tables.push_back(model_moments(p.task.domain, p.predictions[k], support, workers, missing));
        input.baseline->tables.push_back(baseline_moments(p.task.domain, *p.training, support, workers));
    }
    if (!mr_lengths.empty()) {
        input.mr_lengths = parse_lengths(mr_lengths);
        for (auto n : input.mr_lengths)
            if (std::find(p.lengths.begin(), p.lengths.end(), n) == p.lengths.end())
                throw InputError("--mr-lengths entry " + std::to_string(n) + " is not an evaluated length");
    }

    const auto report = evaluate(input);
    const std::size_t training_size = m > 0 ? static_cast<std::size_t>(m) : p.training->size();
    write_report(report, dir,
                 {{"seed", std::to_string(g.seed)},
                  {"training_size", std::to_string(training_size)},
                  {"target_family", p.task.target_family},
                  {"target_multiplicity", std::string(to_string(p.task.multiplicity))},
                  {"domain_total", std::to_string(p.task.domain.total())}});
    if (!plot_series.empty()) write_plot_series(report, training_size, plot_series);
}

void cmd_compare(const GlobalOptions& g, const std::string& task_dir, const std::string& a, const std::string& b,
                 bool allow_missing, std::ostream& out, std::ostream& err) {
    const int workers = resolve_workers(g.workers);
    const auto p = prepare(g, task_dir, {a, b}, "", allow_missing, err);
    const auto missing = allow_missing ? MissingPolicy::TreatAsZero : MissingPolicy::Fail;
    std::ostringstream table;
    table << "n\tvalue\n";
    for (std::size_t i = 0; i < p.lengths.size(); ++i) {
        const auto ma = model_moments(p.task.domain, p.predictions[0], p.supports[i], workers, missing);
        const auto mb = model_moments(p.task.domain, p.predictions[1], p.supports[i], workers, missing);
        table << p.lengths[i] << '\t' << format_metric(model_pairwise(ma, mb)) << '\n';
    }
    if (g.out.empty()) {
        out << table.str();
    } else {
        auto file = detail::open_output(g.out);
        file << table.str();
    }
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Evaluate sequence classifiers by the moments they induce over a domain corpus", "seqmoments"};
    app.set_config("--config", "", "TOML/INI config file; command-line flags take precedence");
    app.require_subcommand(1);

    GlobalOptions g;
    app.add_option("--lengths", g.lengths, "Moment lengths, e.g. 1,2,3 or 1-5 (default 1..segment length)");
    app.add_option("--seen-reading", g.seen_reading, "Seen moments from all training items or positives only")
        ->check(CLI::IsMember({"all", "positives"}));
    app.add_option("--workers", g.workers, "Worker threads (0 = OpenMP default)")->check(CLI::NonNegativeNumber);
    app.add_option("--seed", g.seed, "Seed for every random draw");
    app.add_option("--out", g.out, "Output file or directory");

    // task
    auto* task = app.add_subcommand("task", "Build tasks, sample training sets, generate synthetic families");
    task->require_subcommand(1);
    task->fallthrough();

    std::string families, tokenization = "char", alphabet_path, multiplicity = "domain";
    std::size_t length = 5;
    std::string target, validation;
    bool rarest = false;
    auto* build = task->add_subcommand("build", "Build U, Y and the positive key from a family file");
    build->add_option("--families", families, "familyId<TAB>sequence file")->required();
    build->add_option("--length,-L", length, "Segment length L")->required()->check(CLI::PositiveNumber);
    auto* target_opt = build->add_option("--target", target, "Target family id");
    build->add_flag("--rarest", rarest, "Pick the family with the smallest |Y|/|U| (default)")->excludes(target_opt);
    build->add_option("--validation", validation, "Validation family id (recorded in meta.tsv)");
    build->add_option("--tokenization", tokenization, "char or whitespace")->check(CLI::IsMember({"char", "whitespace"}));
    build->add_option("--alphabet", alphabet_path, "Explicit alphabet file, one symbol per line");
    build->add_option("--target-multiplicity", multiplicity, "domain or family")
        ->check(CLI::IsMember({"domain", "family"}));
    build->fallthrough();

    std::string task_dir;
    std::int64_t m = 0;
    auto* sample = task->add_subcommand("sample", "Sample a labeled training set from U");
    sample->add_option("--task", task_dir, "Task directory")->required();
    sample->add_option("--m", m, "Training-set size")->required();
    sample->fallthrough();

    SyntheticFamilySpec synth_spec;
    auto* synth = task->add_subcommand("synth", "Write a synthetic family file");
    synth->add_option("--alphabet-size", synth_spec.alphabet_size)->check(CLI::Range(1, 65535));
    synth->add_option("--families", synth_spec.families)->check(CLI::PositiveNumber);
    synth->add_option("--sequences", synth_spec.sequences_per_family)->check(CLI::PositiveNumber);
    synth->add_option("--target-sequences", synth_spec.target_sequences)->check(CLI::PositiveNumber);
    synth->add_option("--sequence-length", synth_spec.sequence_length)->check(CLI::PositiveNumber);
    synth->add_option("--sharpness", synth_spec.sharpness)->check(CLI::Range(0.0, 1.0));
    synth->fallthrough();

    // predict
    std::string kind = "oracle";
    double flip_rate = 0.0;
    auto* predict = app.add_subcommand("predict", "Write reference predictions for a task");
    predict->add_option("--task", task_dir)->required();
    predict->add_option("--kind", kind, "oracle, noisy or uniform");
    predict->add_option("--flip-rate", flip_rate, "Noise rate for --kind noisy");
    predict->fallthrough();

    // moments / evaluate / compare
    std::vector<std::string> preds;
    std::string train, plot_series, mr_lengths;
    bool allow_missing = false;
    auto* moments = app.add_subcommand("moments", "Write support sets and moment tables");
    moments->add_option("--task", task_dir)->required();
    moments->add_option("--pred", preds, "LABEL=FILE prediction file (repeatable)");
    moments->add_option("--train", train, "Training set (label<TAB>sequence)");
    moments->add_flag("--allow-missing", allow_missing, "Treat missing predictions as p=0");
    moments->fallthrough();

    auto* evaluate_cmd = app.add_subcommand("evaluate", "Compute the metric tables");
    evaluate_cmd->add_option("--task", task_dir)->required();
    evaluate_cmd->add_option("--pred", preds, "LABEL=FILE prediction file (repeatable)");
    evaluate_cmd->add_option("--train", train, "Training set (label<TAB>sequence)")->required();
    evaluate_cmd->add_option("--plot-series", plot_series, "Append-free m/model/metric/value rows to this file");
    evaluate_cmd->add_option("--m", m, "Training size recorded in the plot series (default: training-set size)");
    evaluate_cmd->add_option("--mr-lengths", mr_lengths, "Lengths entering the MR tables (default: all)");
    evaluate_cmd->add_flag("--allow-missing", allow_missing, "Treat missing predictions as p=0");
    evaluate_cmd->fallthrough();

    std::string pred_a, pred_b;
    auto* compare = app.add_subcommand("compare", "Pairwise Spearman correlation between two models' moments");
    compare->add_option("--task", task_dir)->required();
    compare->add_option("--a", pred_a, "LABEL=FILE")->required();
    compare->add_option("--b", pred_b, "LABEL=FILE")->required();
    compare->add_flag("--allow-missing", allow_missing, "Treat missing predictions as p=0");
    compare->fallthrough();

    std::vector<std::string> argv(args.rbegin(), args.rend());
    try {
        app.parse(argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return 0;
        err << "error: " << e.what() << '\n';
        return static_cast<int>(ErrorKind::Input);
    }

    try {
        if (*build)
            cmd_task_build(g, families, length, target.empty() ? std::nullopt : std::optional(target),
                           validation.empty() ? std::nullopt : std::optional(validation), tokenization, alphabet_path,
                           multiplicity, out);
        else if (*sample)
            cmd_task_sample(g, task_dir, m);
        else if (*synth)
            cmd_task_synth(g, synth_spec);
        else if (*predict)
            cmd_predict(g, task_dir, kind, flip_rate);
        else if (*moments)
            cmd_moments(g, task_dir, preds, train, allow_missing, err);
        else if (*evaluate_cmd)
            cmd_evaluate(g, task_dir, preds, train, allow_missing, plot_series, m, mr_lengths, err);
        else if (*compare)
            cmd_compare(g, task_dir, pred_a, pred_b, allow_missing, out, err);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return e.exit_code();
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return static_cast<int>(ErrorKind::Input);
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return static_cast<int>(ErrorKind::Consistency);
    }
    return 0;
}

} // namespace seqmoments
