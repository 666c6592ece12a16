#include "gapquant/report.hpp"

#include "gapquant/errors.hpp"
#include "gapquant/csv.hpp"
#include "gapquant/version.hpp"
#include "text_util.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <map>
#include <sstream>

namespace gapquant {

using Json = nlohmann::ordered_json;

namespace {

std::string markdown_row(const std::vector<std::string>& cells) {
    std::string out = "|";
    for (const auto& c : cells) {
        std::string cell;
        for (char ch : c) {
            if (ch == '|') cell += "\\|";
            else if (ch == '\n' || ch == '\r') cell += ' ';
            else cell += ch;
        }
        out += " " + cell + " |";
    }
    return out + "\n";
}

std::string markdown_table(const std::vector<std::string>& header,
                           const std::vector<std::vector<std::string>>& rows) {
    std::string out = markdown_row(header);
    out += "|";
    for (std::size_t i = 0; i < header.size(); ++i) out += i == 0 ? "---|" : "---:|";
    out += "\n";
    for (const auto& r : rows) out += markdown_row(r);
    return out;
}

std::string csv_table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
    std::ostringstream out;
    csv::write_row(out, header);
    for (const auto& r : rows) csv::write_row(out, r);
    return out.str();
}

std::string dump(const Json& j) {
    return j.dump(2) + "\n";
}

[[noreturn]] void unsupported(Format format, std::string_view what) {
    const char* name = format == Format::Svg ? "svg" : format == Format::Csv ? "csv"
                     : format == Format::Markdown ? "markdown" : "json";
    throw UnsupportedFormat(std::string(name) + " output is not available for " + std::string(what));
}

std::string xml_escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string tier_header(RiskTier t) {
    switch (t) {
        case RiskTier::ExtremelyHigh: return "Extremely High";
        case RiskTier::High: return "High";
        case RiskTier::Medium: return "Medium";
        case RiskTier::Low: return "Low";
    }
    return "?";
}

} // namespace

Format parse_format(std::string_view raw) {
    const auto key = detail::to_lower(detail::trim(raw));
    if (key == "json") return Format::Json;
    if (key == "csv") return Format::Csv;
    if (key == "md" || key == "markdown") return Format::Markdown;
    if (key == "svg") return Format::Svg;
    throw UnsupportedFormat("unsupported output format '" + std::string(raw) + "'");
}

std::string format_real(double v) {
    char buf[64];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    std::string out(buf, end);
    if (out.find_first_of(".eEn") == std::string::npos) out += ".0";
    return out;
}

std::string format_fixed2(double v) {
    char buf[64];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 2);
    return {buf, end};
}

std::size_t HeatmapGrid::total() const {
    std::size_t sum = 0;
    for (const auto& row : cells) {
        for (auto v : row) sum += v;
    }
    return sum;
}

std::vector<std::size_t> HeatmapGrid::row_sums() const {
    std::vector<std::size_t> out;
    for (const auto& row : cells) {
        std::size_t sum = 0;
        for (auto v : row) sum += v;
        out.push_back(sum);
    }
    return out;
}

TierCountTable tier_counts(const AuditDataset& dataset, ClassificationMode mode) {
    std::map<std::string, TierCountRow> rows;
    for (const auto& c : dataset.concerns()) {
        if (c.status != ConcernStatus::Active) continue;
        auto& row = rows[c.standard];
        row.standard = c.standard;
        ++row.total;
        switch (classify(c, mode)) {
            case RiskTier::ExtremelyHigh: ++row.extremely_high; break;
            case RiskTier::High: ++row.high; break;
            case RiskTier::Medium: ++row.medium; break;
            case RiskTier::Low: ++row.low; break;
        }
    }
    TierCountTable table;
    table.mode = mode;
    for (auto& [standard, row] : rows) table.rows.push_back(std::move(row));
    return table;
}

HeatmapGrid matrix_grid(const AuditDataset& dataset, std::optional<std::string> standard) {
    HeatmapGrid g;
    g.title = standard ? "Risk matrix: " + *standard : "Risk matrix";
    g.row_axis = "severity";
    g.col_axis = "probability";
    for (auto s : kAllSeverities) g.row_labels.emplace_back(label(s));
    for (auto p : kAllProbabilities) g.col_labels.emplace_back(label(p));
    g.cells.assign(4, std::vector<std::size_t>(5, 0));
    for (const auto& c : dataset.concerns()) {
        if (c.status != ConcernStatus::Active || (standard && c.standard != *standard)) continue;
        ++g.cells[static_cast<std::size_t>(4 - value(c.severity))][static_cast<std::size_t>(5 - value(c.probability))];
    }
    return g;
}

HeatmapGrid rootcause_heatmap(const AuditDataset& dataset, ClassificationMode mode,
                              std::optional<std::string> standard) {
    HeatmapGrid g;
    g.title = standard ? "Root cause by risk tier: " + *standard : "Root cause by risk tier";
    g.row_axis = "root_cause";
    g.col_axis = "tier";
    for (auto c : kAllCategories) g.row_labels.emplace_back(label(c));
    for (auto t : kAllTiers) g.col_labels.push_back(tier_header(t));
    g.cells.assign(4, std::vector<std::size_t>(4, 0));
    for (const auto& c : dataset.concerns()) {
        if (c.status != ConcernStatus::Active || (standard && c.standard != *standard)) continue;
        const auto row = static_cast<std::size_t>(c.root_cause.category);
        // kAllTiers runs ExtremelyHigh..Low, the reverse of the enum order.
        const auto col = static_cast<std::size_t>(3 - static_cast<int>(classify(c, mode)));
        ++g.cells[row][col];
    }
    return g;
}

std::vector<ClassificationRow> classification_rows(const AuditDataset& dataset) {
    std::vector<ClassificationRow> out;
    for (const auto& c : dataset.concerns()) {
        if (c.status != ConcernStatus::Active) continue;
        out.push_back({c.id, c.standard, c.probability, c.severity, risk_score(c),
                       classify_grid(c.probability, c.severity), classify_rules(c.probability, c.severity)});
    }
    return out;
}

std::string render(const std::vector<MetricsSummary>& summaries, Format format) {
    switch (format) {
        case Format::Json: {
            Json doc;
            doc["standards"] = Json::array();
            for (const auto& s : summaries) {
                Json rcvs = Json::object();
                for (const auto& [category, share] : s.rcvs_by_category) rcvs[std::string(label(category))] = share;
                Json tiers = Json::object();
                for (auto t : kAllTiers) {
                    const auto it = s.tier_counts.find(t);
                    tiers[std::string(label(t))] = it == s.tier_counts.end() ? 0 : it->second;
                }
                doc["standards"].push_back({
                    {"standard", s.standard},
                    {"n", s.n},
                    {"rsi", s.rsi},
                    {"avpi", s.avpi},
                    {"csgp_percent", s.csgp_percent},
                    {"rcvs", rcvs},
                    {"mean_rcvs", s.mean_rcvs},
                    {"k", s.k},
                    {"tier_counts", tiers},
                    {"classification_mode", std::string(label(s.classification_mode))},
                });
            }
            doc["diff_cells"] = Json::array();
            for (const auto& d : classification_diff()) {
                doc["diff_cells"].push_back({
                    {"probability", value(d.probability)},
                    {"severity", value(d.severity)},
                    {"grid_tier", std::string(label(d.grid_tier))},
                    {"rule_tier", std::string(label(d.rule_tier))},
                });
            }
            doc["tool_version"] = kToolVersion;
            return dump(doc);
        }
        case Format::Csv: {
            std::vector<std::string> header = {"standard", "n", "total_rs", "rsi", "avpi", "csgp_percent",
                                               "mean_rcvs", "k"};
            for (auto c : kAllCategories) header.push_back("rcvs_" + detail::fold_key(label(c)));
            for (auto t : kAllTiers) header.push_back("tier_" + detail::to_lower(label(t)));
            header.emplace_back("classification_mode");
            std::vector<std::vector<std::string>> rows;
            for (const auto& s : summaries) {
                std::vector<std::string> r = {s.standard, std::to_string(s.n), std::to_string(s.total_rs),
                                              format_real(s.rsi), format_real(s.avpi),
                                              format_real(s.csgp_percent), format_real(s.mean_rcvs),
                                              std::to_string(s.k)};
                for (auto c : kAllCategories) {
                    const auto it = s.rcvs_by_category.find(c);
                    r.push_back(it == s.rcvs_by_category.end() ? "" : format_real(it->second));
                }
                for (auto t : kAllTiers) {
                    const auto it = s.tier_counts.find(t);
                    r.push_back(std::to_string(it == s.tier_counts.end() ? 0 : it->second));
                }
                r.emplace_back(label(s.classification_mode));
                rows.push_back(std::move(r));
            }
            return csv_table(header, rows);
        }
        case Format::Markdown: {
            std::vector<std::vector<std::string>> rows;
            for (const auto& s : summaries) {
                rows.push_back({s.standard, format_fixed2(s.rsi), format_fixed2(s.avpi),
                                format_fixed2(s.csgp_percent), std::to_string(s.n), format_fixed2(s.mean_rcvs)});
            }
            return markdown_table({"Standard", "RSI", "AVPI", "CSGP (%)", "Total Concerns", "RCVS"}, rows);
        }
        case Format::Svg: break;
    }
    unsupported(format, "metric summaries");
}

std::string render(const TierCountTable& table, Format format) {
    const std::vector<std::string> header = {"Document", "Total Concerns", "Extremely High", "High", "Medium", "Low"};
    std::vector<std::vector<std::string>> rows;
    for (const auto& r : table.rows) {
        rows.push_back({r.standard, std::to_string(r.total), std::to_string(r.extremely_high),
                        std::to_string(r.high), std::to_string(r.medium), std::to_string(r.low)});
    }
    switch (format) {
        case Format::Json: {
            Json doc;
            doc["classification_mode"] = std::string(label(table.mode));
            doc["rows"] = Json::array();
            for (const auto& r : table.rows) {
                doc["rows"].push_back({{"standard", r.standard},
                                       {"total", r.total},
                                       {"extremely_high", r.extremely_high},
                                       {"high", r.high},
                                       {"medium", r.medium},
                                       {"low", r.low}});
            }
            doc["tool_version"] = kToolVersion;
            return dump(doc);
        }
        case Format::Csv: return csv_table(header, rows);
        case Format::Markdown: return markdown_table(header, rows);
        case Format::Svg: break;
    }
    unsupported(format, "tier count tables");
}

std::string render(const HeatmapGrid& grid, Format format) {
    std::vector<std::string> header = {grid.row_axis + " \\ " + grid.col_axis};
    header.insert(header.end(), grid.col_labels.begin(), grid.col_labels.end());
    std::vector<std::vector<std::string>> rows;
    for (std::size_t r = 0; r < grid.cells.size(); ++r) {
        std::vector<std::string> row = {grid.row_labels[r]};
        for (auto v : grid.cells[r]) row.push_back(std::to_string(v));
        rows.push_back(std::move(row));
    }

    switch (format) {
        case Format::Json: {
            Json doc = {{"title", grid.title},
                        {"row_axis", grid.row_axis},
                        {"col_axis", grid.col_axis},
                        {"row_labels", grid.row_labels},
                        {"col_labels", grid.col_labels},
                        {"cells", grid.cells},
                        {"total", grid.total()},
                        {"tool_version", kToolVersion}};
            return dump(doc);
        }
        case Format::Csv: return csv_table(header, rows);
        case Format::Markdown: return "**" + grid.title + "**\n\n" + markdown_table(header, rows);
        case Format::Svg: {
            constexpr int cell = 64;
            constexpr int left = 230;
            constexpr int top = 70;
            std::size_t max_count = 0;
            for (const auto& row : grid.cells) {
                for (auto v : row) max_count = std::max(max_count, v);
            }
            const auto width = left + cell * static_cast<int>(grid.col_labels.size()) + 10;
            const auto height = top + cell * static_cast<int>(grid.row_labels.size()) + 10;

            std::ostringstream svg;
            svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
                << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
            svg << "<title>" << xml_escape(grid.title) << "</title>\n";
            svg << "<desc>fill-opacity = count / " << max_count
                << " (linear in count, maximum cell fully shaded)</desc>\n";
            svg << "<text x=\"" << left << "\" y=\"20\" font-weight=\"bold\">" << xml_escape(grid.title)
                << "</text>\n";
            for (std::size_t c = 0; c < grid.col_labels.size(); ++c) {
                svg << "<text x=\"" << left + cell * static_cast<int>(c) + cell / 2 << "\" y=\"" << top - 8
                    << "\" text-anchor=\"middle\">" << xml_escape(grid.col_labels[c]) << "</text>\n";
            }
            for (std::size_t r = 0; r < grid.row_labels.size(); ++r) {
                const int y = top + cell * static_cast<int>(r);
                svg << "<text x=\"" << left - 8 << "\" y=\"" << y + cell / 2 + 4 << "\" text-anchor=\"end\">"
                    << xml_escape(grid.row_labels[r]) << "</text>\n";
                for (std::size_t c = 0; c < grid.cells[r].size(); ++c) {
                    const int x = left + cell * static_cast<int>(c);
                    const auto count = grid.cells[r][c];
                    const double opacity =
                        max_count == 0 ? 0.0 : static_cast<double>(count) / static_cast<double>(max_count);
                    svg << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << cell << "\" height=\"" << cell
                        << "\" fill=\"#8b0000\" fill-opacity=\"" << format_fixed2(opacity)
                        << "\" stroke=\"#999999\"/>\n";
                    svg << "<text x=\"" << x + cell / 2 << "\" y=\"" << y + cell / 2 + 4
                        << "\" text-anchor=\"middle\" fill=\"" << (opacity > 0.5 ? "#ffffff" : "#000000") << "\">"
                        << count << "</text>\n";
                }
            }
            svg << "</svg>\n";
            return svg.str();
        }
    }
    unsupported(format, "grids");
}

std::string render(const std::vector<ClassificationRow>& rows, Format format) {
    switch (format) {
        case Format::Json: {
            Json doc = Json::array();
            for (const auto& r : rows) {
                doc.push_back({{"id", r.id},
                               {"standard", r.standard},
                               {"probability", value(r.probability)},
                               {"severity", value(r.severity)},
                               {"risk_score", r.risk_score},
                               {"grid_tier", std::string(label(r.grid_tier))},
                               {"rule_tier", std::string(label(r.rule_tier))}});
            }
            return dump(doc);
        }
        case Format::Csv:
        case Format::Markdown: {
            const std::vector<std::string> header = {"id", "standard", "probability", "severity",
                                                     "risk_score", "grid_tier", "rule_tier"};
            std::vector<std::vector<std::string>> out;
            for (const auto& r : rows) {
                out.push_back({r.id, r.standard, std::to_string(value(r.probability)),
                               std::to_string(value(r.severity)), std::to_string(r.risk_score),
                               std::string(label(r.grid_tier)), std::string(label(r.rule_tier))});
            }
            return format == Format::Csv ? csv_table(header, out) : markdown_table(header, out);
        }
        case Format::Svg: break;
    }
    unsupported(format, "classification listings");
}

std::string render(const AlphaResult& result, Format format) {
    switch (format) {
        case Format::Json: {
            Json doc = {{"alpha", result.alpha},
                        {"observed_disagreement", result.observed_disagreement},
                        {"expected_disagreement", result.expected_disagreement},
                        {"pairable_values", result.pairable_values},
                        {"degenerate", result.degenerate}};
            return dump(doc);
        }
        case Format::Csv:
            return csv_table({"alpha", "observed_disagreement", "expected_disagreement", "pairable_values", "degenerate"},
                             {{format_real(result.alpha), format_real(result.observed_disagreement),
                               format_real(result.expected_disagreement), std::to_string(result.pairable_values),
                               result.degenerate ? "true" : "false"}});
        case Format::Markdown:
            return markdown_table({"alpha", "D_o", "D_e", "pairable values"},
                                  {{format_fixed2(result.alpha), format_real(result.observed_disagreement),
                                    format_real(result.expected_disagreement),
                                    std::to_string(result.pairable_values)}});
        case Format::Svg: break;
    }
    unsupported(format, "reliability results");
}

std::string to_text(const AlphaResult& result) {
    std::string out = "alpha=" + format_real(result.alpha) + "\n";
    out += "D_o=" + format_real(result.observed_disagreement) + "\n";
    out += "D_e=" + format_real(result.expected_disagreement) + "\n";
    out += "pairable=" + std::to_string(result.pairable_values) + "\n";
    if (result.degenerate) out += "warning: all pairable values identical; alpha reported as 1 by convention\n";
    return out;
}

std::string render(const IngestReport& report, Format format) {
    const auto level = [](DiagnosticLevel l) { return l == DiagnosticLevel::Error ? "error" : "warning"; };
    switch (format) {
        case Format::Json: {
            Json doc;
            doc["rows_read"] = report.rows_read;
            doc["rows_accepted"] = report.rows_accepted;
            doc["diagnostics"] = Json::array();
            for (const auto& d : report.diagnostics) {
                doc["diagnostics"].push_back(
                    {{"row", d.row}, {"field", d.field}, {"level", level(d.level)}, {"message", d.message}});
            }
            return dump(doc);
        }
        case Format::Csv:
        case Format::Markdown: {
            const std::vector<std::string> header = {"row", "field", "level", "message"};
            std::vector<std::vector<std::string>> rows;
            for (const auto& d : report.diagnostics) {
                rows.push_back({std::to_string(d.row), d.field, level(d.level), d.message});
            }
            return format == Format::Csv ? csv_table(header, rows) : markdown_table(header, rows);
        }
        case Format::Svg: break;
    }
    unsupported(format, "ingest reports");
}

std::string to_text(const IngestReport& report) {
    std::string out;
    for (const auto& d : report.diagnostics) {
        out += "row " + std::to_string(d.row);
        if (!d.field.empty()) out += " [" + d.field + "]";
        out += d.level == DiagnosticLevel::Error ? " error: " : " warning: ";
        out += d.message + "\n";
    }
    out += "rows_read=" + std::to_string(report.rows_read) + " rows_accepted=" + std::to_string(report.rows_accepted) +
           " errors=" + std::to_string(report.error_count()) + " warnings=" + std::to_string(report.warning_count()) +
           "\n";
    return out;
}

std::string render_matrix_dump(Format format) {
    std::vector<std::string> header = {"severity \\ probability"};
    for (auto p : kAllProbabilities) header.emplace_back(label(p));
    const auto table = [&](ClassificationMode mode) {
        std::vector<std::vector<std::string>> rows;
        for (auto s : kAllSeverities) {
            std::vector<std::string> row = {std::string(label(s))};
            for (auto p : kAllProbabilities) row.emplace_back(1, letter(classify(p, s, mode)));
            rows.push_back(std::move(row));
        }
        return rows;
    };
    const auto diff = classification_diff();

    switch (format) {
        case Format::Json: {
            Json doc;
            for (auto mode : {ClassificationMode::Grid, ClassificationMode::Rules}) {
                Json cells = Json::array();
                for (auto s : kAllSeverities) {
                    for (auto p : kAllProbabilities) {
                        cells.push_back({{"probability", value(p)},
                                         {"severity", value(s)},
                                         {"tier", std::string(label(classify(p, s, mode)))}});
                    }
                }
                doc[std::string(label(mode))] = cells;
            }
            doc["diff_cells"] = Json::array();
            for (const auto& d : diff) {
                doc["diff_cells"].push_back({{"probability", value(d.probability)},
                                             {"severity", value(d.severity)},
                                             {"grid_tier", std::string(label(d.grid_tier))},
                                             {"rule_tier", std::string(label(d.rule_tier))}});
            }
            doc["tool_version"] = kToolVersion;
            return dump(doc);
        }
        case Format::Csv: {
            std::vector<std::vector<std::string>> rows;
            for (auto mode : {ClassificationMode::Grid, ClassificationMode::Rules}) {
                for (auto s : kAllSeverities) {
                    for (auto p : kAllProbabilities) {
                        rows.push_back({std::string(label(mode)), std::to_string(value(p)), std::to_string(value(s)),
                                        std::string(label(classify(p, s, mode)))});
                    }
                }
            }
            return csv_table({"mode", "probability", "severity", "tier"}, rows);
        }
        case Format::Markdown: {
            std::string out = "**Grid**\n\n" + markdown_table(header, table(ClassificationMode::Grid));
            out += "\n**Rules**\n\n" + markdown_table(header, table(ClassificationMode::Rules));
            std::vector<std::vector<std::string>> rows;
            for (const auto& d : diff) {
                rows.push_back({std::string(label(d.probability)), std::string(label(d.severity)),
                                std::string(label(d.grid_tier)), std::string(label(d.rule_tier))});
            }
            out += "\n**Disagreements**\n\n" + markdown_table({"probability", "severity", "grid", "rules"}, rows);
            return out;
        }
        case Format::Svg: break;
    }
    unsupported(format, "the matrix dump");
}

} // namespace gapquant
