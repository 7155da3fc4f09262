#include "rwprune/evaluator.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "rwprune/analysis.hpp"
#include "rwprune/error.hpp"
#include "rwprune/rational.hpp"

namespace rwprune {

PerformanceMetrics metrics_from_confusion(const ConfusionCounts& c) {
    if (c.tp < 0 || c.tn < 0 || c.fp < 0 || c.fn < 0) throw ContractViolation("negative confusion count");
    if (c.positives() == 0) throw UndefinedMetricError("sensitivity undefined: no positive examples");
    if (c.negatives() == 0) throw UndefinedMetricError("specificity undefined: no negative examples");

    PerformanceMetrics m;
    m.accuracy = 100.0 * static_cast<double>(c.tp + c.tn) / static_cast<double>(c.total());
    m.specificity = 100.0 * static_cast<double>(c.tn) / static_cast<double>(c.negatives());
    m.sensitivity = 100.0 * static_cast<double>(c.tp) / static_cast<double>(c.positives());
    if (c.tp + c.fp > 0) {
        m.precision = 100.0 * static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp);
        if (*m.precision + m.sensitivity > 0) {
            m.f1 = 2.0 * *m.precision * m.sensitivity / (*m.precision + m.sensitivity);
        }
    }
    return m;
}

nlohmann::ordered_json PerformanceMetrics::to_json() const {
    nlohmann::ordered_json j;
    j["accuracy"] = accuracy;
    j["specificity"] = specificity;
    j["sensitivity"] = sensitivity;
    j["precision"] = precision ? nlohmann::ordered_json(*precision) : nlohmann::ordered_json(nullptr);
    j["f1"] = f1 ? nlohmann::ordered_json(*f1) : nlohmann::ordered_json(nullptr);
    if (auc_roc) j["auc_roc"] = *auc_roc;
    return j;
}

double auc_roc(std::vector<ScoredLabel> items) {
    const auto positives = std::count_if(items.begin(), items.end(), [](const ScoredLabel& s) { return s.positive; });
    const auto negatives = static_cast<std::int64_t>(items.size()) - positives;
    if (positives == 0 || negatives == 0) throw UndefinedMetricError("AUC-ROC needs both classes");

    std::sort(items.begin(), items.end(), [](const ScoredLabel& a, const ScoredLabel& b) { return a.score > b.score; });
    // Walk thresholds from high to low; equal scores form one step.
    std::int64_t tp = 0, fp = 0;
    double area = 0;  // in units of positives * negatives
    for (std::size_t i = 0; i < items.size();) {
        std::int64_t dtp = 0, dfp = 0;
        std::size_t j = i;
        while (j < items.size() && items[j].score == items[i].score) {
            (items[j].positive ? dtp : dfp) += 1;
            ++j;
        }
        area += static_cast<double>(dfp) * (static_cast<double>(tp) + static_cast<double>(dtp) / 2.0);
        tp += dtp;
        fp += dfp;
        i = j;
    }
    return 100.0 * area / (static_cast<double>(positives) * static_cast<double>(negatives));
}

BaselineScores BaselineScores::from_counts(const ConfusionCounts& c) {
    const auto m = metrics_from_confusion(c);
    return {m.accuracy, m.specificity, m.sensitivity, c};
}

nlohmann::ordered_json BaselineScores::to_json() const {
    nlohmann::ordered_json j;
    j["accuracy"] = accuracy;
    j["specificity"] = specificity;
    j["sensitivity"] = sensitivity;
    if (counts) j["counts"] = {{"tp", counts->tp}, {"tn", counts->tn}, {"fp", counts->fp}, {"fn", counts->fn}};
    return j;
}

namespace {

// a_num/a_den >= b_num/b_den for positive denominators.
bool at_least(std::int64_t a_num, std::int64_t a_den, std::int64_t b_num, std::int64_t b_den) {
    return static_cast<Int128>(a_num) * b_den >= static_cast<Int128>(b_num) * a_den;
}

} // namespace

bool meets_baseline(const ConfusionCounts& candidate, const BaselineScores& baseline) {
    if (baseline.counts) {
        const ConfusionCounts& g = *baseline.counts;
        if (candidate.positives() == 0 || candidate.negatives() == 0) return false;
        return at_least(candidate.tp + candidate.tn, candidate.total(), g.tp + g.tn, g.total()) &&
               at_least(candidate.tn, candidate.negatives(), g.tn, g.negatives()) &&
               at_least(candidate.tp, candidate.positives(), g.tp, g.positives());
    }
    const auto m = metrics_from_confusion(candidate);
    return m.accuracy >= baseline.accuracy && m.specificity >= baseline.specificity &&
           m.sensitivity >= baseline.sensitivity;
}

nlohmann::ordered_json EvalResponse::to_json() const {
    nlohmann::ordered_json j;
    j["tp"] = counts.tp;
    j["tn"] = counts.tn;
    j["fp"] = counts.fp;
    j["fn"] = counts.fn;
    if (scores) {
        auto list = nlohmann::ordered_json::array();
        for (const auto& s : *scores) list.push_back({s.score, s.positive ? 1 : 0});
        j["scores"] = std::move(list);
    }
    return j;
}

EvalResponse EvalResponse::from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw EvaluationError("evaluator response is not a JSON object");
    if (j.contains("error")) {
        throw EvaluationError(fmt::format("evaluator reported an error: {}", j["error"].dump()));
    }
    EvalResponse r;
    auto count = [&j](const char* key) {
        if (!j.contains(key) || !j[key].is_number_integer()) {
            throw EvaluationError(fmt::format("evaluator response lacks integer field '{}'", key));
        }
        const auto v = j[key].get<std::int64_t>();
        if (v < 0) throw EvaluationError(fmt::format("evaluator response has negative '{}'", key));
        return v;
    };
    r.counts = {count("tp"), count("tn"), count("fp"), count("fn")};
    if (j.contains("scores") && !j["scores"].is_null()) {
        std::vector<ScoredLabel> scores;
        std::int64_t positives = 0;
        try {
            for (const auto& item : j["scores"]) {
                const bool positive = item.at(1).get<int>() != 0;
                positives += positive ? 1 : 0;
                scores.push_back({item.at(0).get<double>(), positive});
            }
        } catch (const nlohmann::json::exception& ex) {
            throw EvaluationError(fmt::format("malformed score list: {}", ex.what()));
        }
        if (static_cast<std::int64_t>(scores.size()) != r.counts.total() || positives != r.counts.positives()) {
            throw EvaluationError("score list disagrees with the confusion counts");
        }
        r.scores = std::move(scores);
    }
    return r;
}

nlohmann::ordered_json SurrogateParams::to_json() const {
    nlohmann::ordered_json j;
    j["kind"] = "surrogate";
    j["tau"] = tau;
    j["lambda"] = lambda;
    j["base"] = {{"tp", base.tp}, {"tn", base.tn}, {"fp", base.fp}, {"fn", base.fn}};
    return j;
}

SurrogateParams SurrogateParams::from_json(const nlohmann::json& j) {
    SurrogateParams p;
    try {
        p.tau = j.value("tau", p.tau);
        p.lambda = j.value("lambda", p.lambda);
        if (j.contains("base")) {
            const auto& b = j["base"];
            p.base = {b.at("tp").get<std::int64_t>(), b.at("tn").get<std::int64_t>(), b.at("fp").get<std::int64_t>(),
                      b.at("fn").get<std::int64_t>()};
        }
    } catch (const nlohmann::json::exception& ex) {
        throw ConfigError(fmt::format("bad surrogate parameters: {}", ex.what()));
    }
    if (!(p.tau >= 0.0 && p.tau <= 1.0)) throw ConfigError("surrogate tau must lie in [0,1]");
    if (!(p.lambda >= 0.0)) throw ConfigError("surrogate lambda must be non-negative");
    if (p.base.positives() <= 0 || p.base.negatives() <= 0 || p.base.tp < 0 || p.base.tn < 0 || p.base.fp < 0 ||
        p.base.fn < 0) {
        throw ConfigError("surrogate base counts need both classes and non-negative entries");
    }
    return p;
}

SurrogateEvaluator::SurrogateEvaluator(SurrogateParams params, const StagedNetwork& original)
    : params_(params) {
    base_efficiency_.reserve(original.stages.size());
    for (const auto& g : original.stages) base_efficiency_.push_back(label_efficiency(g));
}

double SurrogateEvaluator::efficiency_ratio(const StagedNetwork& net) const {
    if (net.stages.size() != base_efficiency_.size()) {
        throw ContractViolation("surrogate evaluated on a network with a different stage count");
    }
    double sum = 0;
    for (std::size_t s = 0; s < net.stages.size(); ++s) {
        // An edgeless original has nothing to lose.
        sum += base_efficiency_[s] > 0 ? label_efficiency(net.stages[s]) / base_efficiency_[s] : 1.0;
    }
    return sum / static_cast<double>(net.stages.size());
}

EvalResponse SurrogateEvaluator::evaluate(const StagedNetwork& net, std::uint64_t /*init_seed*/) {
    const double r = efficiency_ratio(net);
    ConfusionCounts c = params_.base;
    if (r >= params_.tau) return {c, std::nullopt};

    const auto drop = static_cast<std::int64_t>(std::ceil(params_.lambda * (params_.tau - r)));
    const std::int64_t lost_pos = std::min(drop, c.tp);
    c.tp -= lost_pos;
    c.fn += lost_pos;
    const auto scaled = static_cast<std::int64_t>(
        std::ceil(static_cast<double>(drop) * static_cast<double>(params_.base.negatives()) /
                  static_cast<double>(params_.base.positives())));
    const std::int64_t lost_neg = std::min(scaled, c.tn);
    c.tn -= lost_neg;
    c.fp += lost_neg;
    return {c, std::nullopt};
}

} // namespace rwprune
