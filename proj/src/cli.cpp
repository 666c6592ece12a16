#include "gapquant/cli.hpp"

#include "gapquant/consensus.hpp"
#include "gapquant/errors.hpp"
#include "gapquant/ingest.hpp"
#include "gapquant/metrics.hpp"
#include "gapquant/reliability.hpp"
#include "gapquant/report.hpp"
#include "gapquant/version.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>

#include <fstream>
#include <sstream>

namespace gapquant::cli {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDataError = 1;
constexpr int kExitInputError = 2;

struct RunConfig {
    std::string input;
    std::string by;
    std::string mode = "grid";
    double threshold = kDefaultConsensusThreshold;
    std::size_t panel = kDefaultPanelSize;
    std::uint64_t seed = 0;
    std::size_t budget = 0;
    std::string format;
    std::vector<std::string> mappings;
    std::string out_path;
    std::string table = "tiers";
    std::string standard;
};

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw MalformedFile("cannot open '" + path + "'");
    return in;
}

ColumnMap column_map(const RunConfig& cfg) {
    ColumnMap map;
    for (const auto& m : cfg.mappings) map.insert(parse_column_mapping(m));
    return map;
}

// Loads and validates a concern file; row diagnostics go to err and make the
// command fail rather than run on a partial dataset.
std::optional<AuditDataset> load_dataset(const RunConfig& cfg, std::ostream& err) {
    auto in = open_input(cfg.input);
    auto ingest = parse_concerns(in, column_map(cfg));
    if (!ingest.report.ok()) {
        err << to_text(ingest.report);
        return std::nullopt;
    }
    for (const auto& d : ingest.report.diagnostics) err << "row " << d.row << " [" << d.field << "] warning: " << d.message << "\n";
    return std::move(ingest.dataset);
}

bool has_ballots(const AuditDataset& ds) {
    return std::any_of(ds.concerns().begin(), ds.concerns().end(), [](const Concern& c) { return c.ballots.has_value(); });
}

AuditDataset with_consensus(const AuditDataset& ds, const RunConfig& cfg) {
    return has_ballots(ds) ? apply_consensus(ds, cfg.threshold, cfg.panel) : ds;
}

void emit(const std::string& text, const RunConfig& cfg, std::ostream& out) {
    if (cfg.out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(cfg.out_path, std::ios::binary);
    if (!file) throw Error("cannot write '" + cfg.out_path + "'");
    file << text;
}

Format output_format(const RunConfig& cfg, Format fallback) {
    return cfg.format.empty() ? fallback : parse_format(cfg.format);
}

int cmd_validate(const RunConfig& cfg, std::ostream& out) {
    auto in = open_input(cfg.input);
    const auto ingest = parse_concerns(in, column_map(cfg));
    out << (cfg.format.empty() ? to_text(ingest.report) : render(ingest.report, parse_format(cfg.format)));
    return ingest.report.ok() ? kExitOk : kExitDataError;
}

int cmd_metrics(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    auto ds = load_dataset(cfg, err);
    if (!ds) return kExitDataError;
    const auto filtered = with_consensus(*ds, cfg);
    const auto summaries = summarize(filtered, cfg.by == "standard", parse_mode(cfg.mode));
    emit(render(summaries, output_format(cfg, Format::Json)), cfg, out);
    return kExitOk;
}

int cmd_classify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    auto ds = load_dataset(cfg, err);
    if (!ds) return kExitDataError;
    emit(render(classification_rows(with_consensus(*ds, cfg)), output_format(cfg, Format::Csv)), cfg, out);
    return kExitOk;
}

int cmd_alpha(const RunConfig& cfg, std::ostream& out) {
    auto in = open_input(cfg.input);
    const auto table = parse_coder_table(in);
    const auto result = krippendorff_alpha_nominal(table);
    emit(cfg.format.empty() ? to_text(result) : render(result, parse_format(cfg.format)), cfg, out);
    return kExitOk;
}

int cmd_consensus(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    auto ds = load_dataset(cfg, err);
    if (!ds) return kExitDataError;
    const auto applied = apply_consensus(*ds, cfg.threshold, cfg.panel);
    std::size_t accepted = 0, rejected = 0, pending = 0;
    for (const auto& c : applied.concerns()) {
        if (!c.ballots) continue;
        switch (c.ballots->outcome) {
            case BallotOutcome::Accepted: ++accepted; break;
            case BallotOutcome::Rejected: ++rejected; break;
            case BallotOutcome::Pending: ++pending; break;
        }
    }
    err << "accepted=" << accepted << " rejected=" << rejected << " pending=" << pending
        << " active=" << applied.active().size() << "\n";
    std::ostringstream body;
    write_concerns(body, applied);
    emit(body.str(), cfg, out);
    return kExitOk;
}

int cmd_plan(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    auto ds = load_dataset(cfg, err);
    if (!ds) return kExitDataError;
    const auto plan = plan_validation(with_consensus(*ds, cfg), cfg.budget, cfg.seed, parse_mode(cfg.mode));
    std::string text;
    if (cfg.format == "json") {
        text = nlohmann::ordered_json{{"budget", plan.budget}, {"seed", plan.seed}, {"selected", plan.selected}}.dump(2) + "\n";
    } else {
        for (const auto& id : plan.selected) text += id + "\n";
    }
    emit(text, cfg, out);
    return kExitOk;
}

int cmd_report(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    auto ds = load_dataset(cfg, err);
    if (!ds) return kExitDataError;
    const auto filtered = with_consensus(*ds, cfg);
    const auto mode = parse_mode(cfg.mode);
    const auto format = output_format(cfg, Format::Markdown);
    std::optional<std::string> standard;
    if (!cfg.standard.empty()) standard = cfg.standard;

    std::string text;
    if (cfg.table == "tiers") {
        text = render(tier_counts(filtered, mode), format);
    } else if (cfg.table == "matrix") {
        text = render(matrix_grid(filtered, standard), format);
    } else if (cfg.table == "rootcause") {
        text = render(rootcause_heatmap(filtered, mode, standard), format);
    } else {
        throw Error("unknown table '" + cfg.table + "' (expected tiers, matrix or rootcause)");
    }
    emit(text, cfg, out);
    return kExitOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Quantifies security gaps in compliance-standard audit data", "gapquant"};
    app.set_version_flag("--version", kToolVersion);
    app.require_subcommand(1);

    RunConfig cfg;
    const auto add_input = [&](CLI::App* sub, const char* what) {
        sub->add_option("input", cfg.input, what)->required();
    };
    const auto add_map = [&](CLI::App* sub) {
        sub->add_option("--map", cfg.mappings, "Rename a source column, as col=field (repeatable)");
    };
    const auto add_consensus_flags = [&](CLI::App* sub) {
        sub->add_option("--threshold", cfg.threshold, "Expert consensus threshold in (0,1]")
            ->check(CLI::Validator(
                [](std::string& v) -> std::string {
                    double t = 0.0;
                    if (!CLI::detail::lexical_cast(v, t) || !(t > 0.0 && t <= 1.0)) {
                        return "threshold must be a number in (0, 1]";
                    }
                    return "";
                },
                "(0,1]"))
            ->capture_default_str();
        sub->add_option("--panel", cfg.panel, "Expert panel size (0 = verdicts cast)")->capture_default_str();
    };
    const auto add_mode = [&](CLI::App* sub) {
        sub->add_option("--mode", cfg.mode, "Tier classification: grid or rules")
            ->check(CLI::IsMember({"grid", "rules"}))
            ->capture_default_str();
    };
    const auto add_output = [&](CLI::App* sub) {
        sub->add_option("--format", cfg.format, "Output format: json, csv, md or svg");
        sub->add_option("--out", cfg.out_path, "Write output to this file instead of stdout");
    };

    auto* validate = app.add_subcommand("validate", "Check a concern CSV and list diagnostics");
    add_input(validate, "Concern CSV");
    add_map(validate);
    validate->add_option("--format", cfg.format, "Diagnostics as json, csv or md");

    auto* metrics = app.add_subcommand("metrics", "Compute RSI, RCVS, AVPI and CSGP");
    add_input(metrics, "Concern CSV");
    metrics->add_option("--by", cfg.by, "Partition by 'standard'")->check(CLI::IsMember({"standard"}));
    add_mode(metrics);
    add_consensus_flags(metrics);
    add_map(metrics);
    add_output(metrics);

    auto* classify_cmd = app.add_subcommand("classify", "List each concern's risk score and tiers");
    add_input(classify_cmd, "Concern CSV");
    add_consensus_flags(classify_cmd);
    add_map(classify_cmd);
    add_output(classify_cmd);

    auto* alpha = app.add_subcommand("alpha", "Krippendorff's alpha for a coder table");
    add_input(alpha, "Coder CSV");
    add_output(alpha);

    auto* consensus = app.add_subcommand("consensus", "Apply expert verdicts and write the updated concern CSV");
    add_input(consensus, "Concern CSV with expert_* columns");
    add_consensus_flags(consensus);
    add_map(consensus);
    consensus->add_option("--out", cfg.out_path, "Write output to this file instead of stdout");

    auto* plan = app.add_subcommand("plan", "Choose concerns for expert validation, highest tiers first");
    add_input(plan, "Concern CSV");
    plan->add_option("--budget", cfg.budget, "Number of concerns to select")->required();
    plan->add_option("--seed", cfg.seed, "Shuffle seed")->capture_default_str();
    add_mode(plan);
    add_consensus_flags(plan);
    add_map(plan);
    plan->add_option("--format", cfg.format, "Output as plain ids or json")->check(CLI::IsMember({"json", "text"}));
    plan->add_option("--out", cfg.out_path, "Write output to this file instead of stdout");

    auto* report = app.add_subcommand("report", "Tier count table, risk-matrix grid or root-cause heatmap");
    add_input(report, "Concern CSV");
    report->add_option("--table", cfg.table, "tiers, matrix or rootcause")
        ->check(CLI::IsMember({"tiers", "matrix", "rootcause"}))
        ->capture_default_str();
    report->add_option("--standard", cfg.standard, "Restrict grids to one standard");
    add_mode(report);
    add_consensus_flags(report);
    add_map(report);
    add_output(report);

    auto* dump = app.add_subcommand("matrix-dump", "Print the classification grid, the rule table and their differences");
    add_output(dump);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInputError;
    }

    try {
        if (*validate) return cmd_validate(cfg, out);
        if (*metrics) return cmd_metrics(cfg, out, err);
        if (*classify_cmd) return cmd_classify(cfg, out, err);
        if (*alpha) return cmd_alpha(cfg, out);
        if (*consensus) return cmd_consensus(cfg, out, err);
        if (*plan) return cmd_plan(cfg, out, err);
        if (*report) return cmd_report(cfg, out, err);
        if (*dump) {
            emit(render_matrix_dump(output_format(cfg, Format::Markdown)), cfg, out);
            return kExitOk;
        }
    } catch (const MalformedFile& e) {
        err << "MalformedFile: " << e.what() << "\n";
        return kExitInputError;
    } catch (const DuplicateItemId& e) {
        err << "DuplicateItemId: " << e.what() << "\n";
        return kExitInputError;
    } catch (const EmptyDataset& e) {
        err << "EmptyDataset: " << e.what() << "\n";
        return kExitDataError;
    } catch (const InsufficientData& e) {
        err << "InsufficientData: " << e.what() << "\n";
        return kExitDataError;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitDataError;
    }
    return kExitInputError;
}

} // namespace gapquant::cli
