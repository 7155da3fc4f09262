#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "rwprune/experiment.hpp"

namespace rwprune {

// Rows of a serialized ExperimentReport.
std::vector<SummaryRow> report_rows(const nlohmann::json& report);

struct Stat {
    double mean = 0;
    double max = 0;
};

Stat mean_max(const std::vector<double>& values);

// Aggregate over seeds for one (generator class, measure) cell.
struct CellSummary {
    std::string generator;
    std::string measure;
    std::size_t seeds = 0;
    Stat best_fraction;
    Stat params_base;
    Stat params_pruned;
    Stat flops_base;
    Stat flops_pruned;
    Stat compression;
    Stat speedup;
    Stat q_base;
    Stat q_pruned;
    Stat eff_base;
    Stat eff_pruned;
};

// Cells appear in the order their first row does.
std::vector<CellSummary> summarize(const std::vector<SummaryRow>& rows);

// One line per cell with mean and max of every column.
std::string summary_table_csv(const std::vector<CellSummary>& cells);

struct Quantiles {
    double min = 0;
    double q1 = 0;
    double median = 0;
    double q3 = 0;
    double max = 0;
};

// Linear interpolation between order statistics at position p*(n-1).
Quantiles quantiles(std::vector<double> values);

// class,measure,metric,min,q1,median,q3,max for compression, speedup,
// best_fraction, Q_pruned and eff_pruned.
std::string boxplot_csv(const std::vector<SummaryRow>& rows);

} // namespace rwprune
