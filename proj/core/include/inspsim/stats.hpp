#pragma once

#include <string>
#include <vector>

namespace inspsim {

/// Balanced two-factor layout. Observations are stored cell-major:
/// response[((ia * b_levels) + ib) * cell_n + k].
struct FactorialData {
    std::size_t a_levels = 0;
    std::size_t b_levels = 0;
    std::size_t cell_n = 0;
    std::vector<double> response;
    std::vector<std::string> a_names;  ///< optional, defaults to A0, A1, ...
    std::vector<std::string> b_names;  ///< optional

    /// Assemble from per-observation factor indices; throws
    /// std::invalid_argument on an unbalanced design or empty cells.
    static FactorialData from_observations(const std::vector<double>& response,
                                           const std::vector<std::size_t>& level_a,
                                           const std::vector<std::size_t>& level_b);

    double value(std::size_t ia, std::size_t ib, std::size_t k) const {
        return response[((ia * b_levels) + ib) * cell_n + k];
    }
    std::size_t size() const { return response.size(); }
    std::string a_name(std::size_t ia) const;
    std::string b_name(std::size_t ib) const;
};

struct AnovaRow {
    std::string effect;
    double df = 0.0;
    double sum_sq = 0.0;
    double mean_sq = 0.0;
    double f = 0.0;
    double p = 1.0;
    bool f_defined = true;  ///< false when the residual MS vanishes
};

/// Rows: factor A, factor B, A x B interaction, residual (residual carries
/// only Df/SumSq/MeanSq).
struct AnovaTable {
    std::vector<AnovaRow> rows;
    const AnovaRow& row(const std::string& effect) const;
};

struct CellSummary {
    std::size_t ia = 0, ib = 0;
    std::size_t n = 0;
    double mean = 0.0;
    double sd = 0.0;  ///< n-1 denominator
};

std::vector<CellSummary> summarize(const FactorialData& data);

/// Balanced fixed-effects two-way ANOVA with interaction; p-values via the
/// regularized incomplete beta. Throws on fewer than 2 levels per factor or
/// cell_n < 2.
AnovaTable two_way_anova(const FactorialData& data);

struct LeveneResult {
    double statistic = 0.0;
    double df1 = 0.0;
    double df2 = 0.0;
    double p = 1.0;
};

/// Brown-Forsythe variant: one-way ANOVA over absolute deviations from the
/// cell medians, groups = all a*b cells.
LeveneResult levene_test(const FactorialData& data);

/// Average ranks (1-based, ties get the mean rank).
std::vector<double> average_ranks(const std::vector<double>& values);

enum class ArtEffect { FactorA, FactorB, Interaction };

/// Responses aligned for one effect: residual from the cell mean plus that
/// effect's estimate. The other effects' marginal sums vanish by construction.
std::vector<double> art_aligned(const FactorialData& data, ArtEffect effect);

/// Aligned Rank Transform ANOVA: per effect, align, rank, run two_way_anova
/// on the ranks, and keep that effect's row. The returned table carries one
/// row per effect plus the residual row of the last ranked fit.
AnovaTable art_anova(const FactorialData& data);

struct Contrast {
    std::string label;
    double estimate = 0.0;
    double se = 0.0;
    double df = 0.0;
    double t = 0.0;
    double p_raw = 1.0;
    double p_adj = 1.0;
};

enum class ContrastFamily {
    SimpleEffects,  ///< within-factor cell contrasts (both factors)
    MainEffects     ///< factor-A marginal-mean pairs only
};

/// Bonferroni-adjusted pairwise mean differences against the two-way ANOVA
/// residual MS of `data` (pass ranked responses for the ART scale).
std::vector<Contrast> pairwise_contrasts(const FactorialData& data, ContrastFamily family);

/// Pairs of (standard normal quantile at (i - 0.5) / n, sorted residual).
std::vector<std::pair<double, double>> qq_data(const std::vector<double>& residuals);

}  // namespace inspsim
