#include "rwprune/summary.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <utility>

#include <fmt/format.h>

namespace rwprune {

std::vector<SummaryRow> report_rows(const nlohmann::json& report) {
    if (!report.is_object() || !report.contains("rows") || !report["rows"].is_array()) {
        throw ConfigError("not an experiment report: missing 'rows'");
    }
    std::vector<SummaryRow> rows;
    for (const auto& r : report["rows"]) rows.push_back(SummaryRow::from_json(r));
    return rows;
}

Stat mean_max(const std::vector<double>& values) {
    if (values.empty()) throw ContractViolation("mean of an empty set");
    double sum = 0;
    double hi = values.front();
    for (double v : values) {
        sum += v;
        hi = std::max(hi, v);
    }
    return {sum / static_cast<double>(values.size()), hi};
}

namespace {

using Field = std::function<double(const SummaryRow&)>;

Stat stat_of(const std::vector<const SummaryRow*>& rows, const Field& field) {
    std::vector<double> values;
    for (const auto* r : rows) values.push_back(field(*r));
    return mean_max(values);
}

const std::vector<std::pair<std::string, Field>>& box_fields() {
    static const std::vector<std::pair<std::string, Field>> fields{
        {"compression", [](const SummaryRow& r) { return r.compression; }},
        {"speedup", [](const SummaryRow& r) { return r.speedup; }},
        {"best_fraction", [](const SummaryRow& r) { return r.best_fraction; }},
        {"Q_pruned", [](const SummaryRow& r) { return r.q_pruned; }},
        {"eff_pruned", [](const SummaryRow& r) { return r.eff_pruned; }},
    };
    return fields;
}

std::vector<std::pair<std::string, std::string>> cell_keys(const std::vector<SummaryRow>& rows) {
    std::vector<std::pair<std::string, std::string>> keys;
    for (const auto& r : rows) {
        std::pair<std::string, std::string> key{r.generator, r.measure};
        if (std::find(keys.begin(), keys.end(), key) == keys.end()) keys.push_back(std::move(key));
    }
    return keys;
}

std::vector<const SummaryRow*> rows_of(const std::vector<SummaryRow>& rows,
                                        const std::pair<std::string, std::string>& key) {
    std::vector<const SummaryRow*> out;
    for (const auto& r : rows) {
        if (r.generator == key.first && r.measure == key.second) out.push_back(&r);
    }
    return out;
}

} // namespace

std::vector<CellSummary> summarize(const std::vector<SummaryRow>& rows) {
    std::vector<CellSummary> cells;
    for (const auto& key : cell_keys(rows)) {
        const auto members = rows_of(rows, key);
        CellSummary c;
        c.generator = key.first;
        c.measure = key.second;
        c.seeds = members.size();
        c.best_fraction = stat_of(members, [](const SummaryRow& r) { return r.best_fraction; });
        c.params_base = stat_of(members, [](const SummaryRow& r) { return static_cast<double>(r.params_base); });
        c.params_pruned = stat_of(members, [](const SummaryRow& r) { return static_cast<double>(r.params_pruned); });
        c.flops_base = stat_of(members, [](const SummaryRow& r) { return static_cast<double>(r.flops_base); });
        c.flops_pruned = stat_of(members, [](const SummaryRow& r) { return static_cast<double>(r.flops_pruned); });
        c.compression = stat_of(members, [](const SummaryRow& r) { return r.compression; });
        c.speedup = stat_of(members, [](const SummaryRow& r) { return r.speedup; });
        c.q_base = stat_of(members, [](const SummaryRow& r) { return r.q_base; });
        c.q_pruned = stat_of(members, [](const SummaryRow& r) { return r.q_pruned; });
        c.eff_base = stat_of(members, [](const SummaryRow& r) { return r.eff_base; });
        c.eff_pruned = stat_of(members, [](const SummaryRow& r) { return r.eff_pruned; });
        cells.push_back(std::move(c));
    }
    return cells;
}

std::string summary_table_csv(const std::vector<CellSummary>& cells) {
    std::string out =
        "class,measure,seeds,best_fraction_mean,best_fraction_max,params_base_mean,params_pruned_mean,"
        "flops_base_mean,flops_pruned_mean,compression_mean,compression_max,speedup_mean,speedup_max,"
        "Q_base_mean,Q_pruned_mean,eff_base_mean,eff_pruned_mean\n";
    for (const auto& c : cells) {
        out += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", c.generator, c.measure, c.seeds,
                           c.best_fraction.mean, c.best_fraction.max, c.params_base.mean, c.params_pruned.mean,
                           c.flops_base.mean, c.flops_pruned.mean, c.compression.mean, c.compression.max,
                           c.speedup.mean, c.speedup.max, c.q_base.mean, c.q_pruned.mean, c.eff_base.mean,
                           c.eff_pruned.mean);
    }
    return out;
}

Quantiles quantiles(std::vector<double> values) {
    if (values.empty()) throw ContractViolation("quantiles of an empty set");
    std::sort(values.begin(), values.end());
    auto at = [&](double p) {
        const double pos = p * static_cast<double>(values.size() - 1);
        const auto lo = static_cast<std::size_t>(std::floor(pos));
        const auto hi = std::min(lo + 1, values.size() - 1);
        return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
    };
    return {values.front(), at(0.25), at(0.5), at(0.75), values.back()};
}

std::string boxplot_csv(const std::vector<SummaryRow>& rows) {
    std::string out = "class,measure,metric,min,q1,median,q3,max\n";
    for (const auto& key : cell_keys(rows)) {
        const auto members = rows_of(rows, key);
        for (const auto& [name, field] : box_fields()) {
            std::vector<double> values;
            for (const auto* r : members) values.push_back(field(*r));
            const Quantiles q = quantiles(values);
            out += fmt::format("{},{},{},{},{},{},{},{}\n", key.first, key.second, name, q.min, q.q1, q.median, q.q3,
                               q.max);
        }
    }
    return out;
}

} // namespace rwprune
