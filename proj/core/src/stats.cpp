#include "inspsim/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>

#include "inspsim/mathspec.hpp"

namespace inspsim {

FactorialData FactorialData::from_observations(const std::vector<double>& response,
                                               const std::vector<std::size_t>& level_a,
                                               const std::vector<std::size_t>& level_b) {
    if (response.size() != level_a.size() || response.size() != level_b.size()) {
        throw std::invalid_argument("FactorialData: length mismatch");
    }
    if (response.empty()) throw std::invalid_argument("FactorialData: empty input");
    const std::size_t a = *std::max_element(level_a.begin(), level_a.end()) + 1;
    const std::size_t b = *std::max_element(level_b.begin(), level_b.end()) + 1;

    std::vector<std::vector<double>> cells(a * b);
    for (std::size_t i = 0; i < response.size(); ++i) {
        cells[level_a[i] * b + level_b[i]].push_back(response[i]);
    }
    const std::size_t n = cells.front().size();
    for (const auto& cell : cells) {
        if (cell.empty()) throw std::invalid_argument("FactorialData: empty cell");
        if (cell.size() != n) throw std::invalid_argument("FactorialData: unbalanced design");
    }

    FactorialData d;
    d.a_levels = a;
    d.b_levels = b;
    d.cell_n = n;
    d.response.reserve(a * b * n);
    for (const auto& cell : cells) {
        d.response.insert(d.response.end(), cell.begin(), cell.end());
    }
    return d;
}

std::string FactorialData::a_name(std::size_t ia) const {
    return ia < a_names.size() ? a_names[ia] : "A" + std::to_string(ia);
}

std::string FactorialData::b_name(std::size_t ib) const {
    return ib < b_names.size() ? b_names[ib] : "B" + std::to_string(ib);
}

const AnovaRow& AnovaTable::row(const std::string& effect) const {
    for (const auto& r : rows) {
        if (r.effect == effect) return r;
    }
    throw std::out_of_range("AnovaTable: no effect '" + effect + "'");
}

namespace {

void check_shape(const FactorialData& d) {
    if (d.a_levels < 2 || d.b_levels < 2) {
        throw std::invalid_argument("two_way_anova: need >= 2 levels per factor");
    }
    if (d.cell_n < 2) {
        throw std::invalid_argument("two_way_anova: need >= 2 observations per cell");
    }
    if (d.response.size() != d.a_levels * d.b_levels * d.cell_n) {
        throw std::invalid_argument("two_way_anova: response size mismatch");
    }
}

struct Means {
    double grand = 0.0;
    std::vector<double> a;     // marginal means per A level
    std::vector<double> b;     // marginal means per B level
    std::vector<double> cell;  // cell means, index ia * b_levels + ib
};

Means compute_means(const FactorialData& d) {
    Means m;
    m.a.assign(d.a_levels, 0.0);
    m.b.assign(d.b_levels, 0.0);
    m.cell.assign(d.a_levels * d.b_levels, 0.0);
    for (std::size_t ia = 0; ia < d.a_levels; ++ia) {
        for (std::size_t ib = 0; ib < d.b_levels; ++ib) {
            double s = 0.0;
            for (std::size_t k = 0; k < d.cell_n; ++k) s += d.value(ia, ib, k);
            m.cell[ia * d.b_levels + ib] = s / double(d.cell_n);
            m.a[ia] += s;
            m.b[ib] += s;
            m.grand += s;
        }
    }
    for (auto& v : m.a) v /= double(d.b_levels * d.cell_n);
    for (auto& v : m.b) v /= double(d.a_levels * d.cell_n);
    m.grand /= double(d.response.size());
    return m;
}

}  // namespace

std::vector<CellSummary> summarize(const FactorialData& data) {
    std::vector<CellSummary> out;
    for (std::size_t ia = 0; ia < data.a_levels; ++ia) {
        for (std::size_t ib = 0; ib < data.b_levels; ++ib) {
            CellSummary s;
            s.ia = ia;
            s.ib = ib;
            s.n = data.cell_n;
            for (std::size_t k = 0; k < data.cell_n; ++k) s.mean += data.value(ia, ib, k);
            s.mean /= double(data.cell_n);
            if (data.cell_n > 1) {
                double ss = 0.0;
                for (std::size_t k = 0; k < data.cell_n; ++k) {
                    const double dlt = data.value(ia, ib, k) - s.mean;
                    ss += dlt * dlt;
                }
                s.sd = std::sqrt(ss / double(data.cell_n - 1));
            }
            out.push_back(s);
        }
    }
    return out;
}

AnovaTable two_way_anova(const FactorialData& data) {
    check_shape(data);
    const Means m = compute_means(data);
    const double n = double(data.cell_n);
    const double a = double(data.a_levels);
    const double b = double(data.b_levels);

    double ss_a = 0.0, ss_b = 0.0, ss_ab = 0.0, ss_res = 0.0;
    for (std::size_t ia = 0; ia < data.a_levels; ++ia) {
        const double da = m.a[ia] - m.grand;
        ss_a += b * n * da * da;
    }
    for (std::size_t ib = 0; ib < data.b_levels; ++ib) {
        const double db = m.b[ib] - m.grand;
        ss_b += a * n * db * db;
    }
    for (std::size_t ia = 0; ia < data.a_levels; ++ia) {
        for (std::size_t ib = 0; ib < data.b_levels; ++ib) {
            const double cm = m.cell[ia * data.b_levels + ib];
            const double dab = cm - m.a[ia] - m.b[ib] + m.grand;
            ss_ab += n * dab * dab;
            for (std::size_t k = 0; k < data.cell_n; ++k) {
                const double e = data.value(ia, ib, k) - cm;
                ss_res += e * e;
            }
        }
    }

    const double df_a = a - 1.0;
    const double df_b = b - 1.0;
    const double df_ab = df_a * df_b;
    const double df_res = a * b * (n - 1.0);
    const double ms_res = ss_res / df_res;

    auto make_row = [&](const std::string& name, double df, double ss) {
        AnovaRow r;
        r.effect = name;
        r.df = df;
        r.sum_sq = ss;
        r.mean_sq = ss / df;
        if (ms_res > 0.0) {
            r.f = r.mean_sq / ms_res;
            r.p = f_tail(r.f, df, df_res);
        } else {
            r.f_defined = false;
            r.f = std::numeric_limits<double>::quiet_NaN();
            r.p = std::numeric_limits<double>::quiet_NaN();
        }
        return r;
    };

    AnovaTable t;
    t.rows.push_back(make_row("A", df_a, ss_a));
    t.rows.push_back(make_row("B", df_b, ss_b));
    t.rows.push_back(make_row("A:B", df_ab, ss_ab));
    AnovaRow res;
    res.effect = "Residual";
    res.df = df_res;
    res.sum_sq = ss_res;
    res.mean_sq = ms_res;
    res.f = std::numeric_limits<double>::quiet_NaN();
    res.p = std::numeric_limits<double>::quiet_NaN();
    t.rows.push_back(res);
    return t;
}

LeveneResult levene_test(const FactorialData& data) {
    const std::size_t k = data.a_levels * data.b_levels;
    if (k < 2) throw std::invalid_argument("levene_test: need >= 2 groups");
    const std::size_t n = data.cell_n;
    const std::size_t total = k * n;

    std::vector<double> z(total);
    std::vector<double> group_mean(k, 0.0);
    double grand = 0.0;
    for (std::size_t g = 0; g < k; ++g) {
        std::vector<double> cell(data.response.begin() + g * n,
                                 data.response.begin() + (g + 1) * n);
        std::nth_element(cell.begin(), cell.begin() + n / 2, cell.end());
        double median = cell[n / 2];
        if (n % 2 == 0) {
            const double lower = *std::max_element(cell.begin(), cell.begin() + n / 2);
            median = 0.5 * (median + lower);
        }
        for (std::size_t i = 0; i < n; ++i) {
            const double zi = std::fabs(data.response[g * n + i] - median);
            z[g * n + i] = zi;
            group_mean[g] += zi;
        }
        grand += group_mean[g];
        group_mean[g] /= double(n);
    }
    grand /= double(total);

    double between = 0.0, within = 0.0;
    for (std::size_t g = 0; g < k; ++g) {
        const double d = group_mean[g] - grand;
        between += double(n) * d * d;
        for (std::size_t i = 0; i < n; ++i) {
            const double e = z[g * n + i] - group_mean[g];
            within += e * e;
        }
    }

    LeveneResult r;
    r.df1 = double(k - 1);
    r.df2 = double(total - k);
    if (within > 0.0) {
        r.statistic = (between / r.df1) / (within / r.df2);
        r.p = f_tail(r.statistic, r.df1, r.df2);
    } else {
        r.statistic = between > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
        r.p = between > 0.0 ? 0.0 : 1.0;
    }
    return r;
}

std::vector<double> average_ranks(const std::vector<double>& values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return values[i] < values[j]; });

    std::vector<double> ranks(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
        const double avg = 0.5 * double(i + j) + 1.0;  // 1-based
        for (std::size_t s = i; s <= j; ++s) ranks[order[s]] = avg;
        i = j + 1;
    }
    return ranks;
}

std::vector<double> art_aligned(const FactorialData& data, ArtEffect effect) {
    check_shape(data);
    const Means m = compute_means(data);
    std::vector<double> aligned;
    aligned.reserve(data.size());
    for (std::size_t ia = 0; ia < data.a_levels; ++ia) {
        for (std::size_t ib = 0; ib < data.b_levels; ++ib) {
            const double cm = m.cell[ia * data.b_levels + ib];
            double est = 0.0;
            switch (effect) {
                case ArtEffect::FactorA: est = m.a[ia] - m.grand; break;
                case ArtEffect::FactorB: est = m.b[ib] - m.grand; break;
                case ArtEffect::Interaction:
                    est = cm - m.a[ia] - m.b[ib] + m.grand;
                    break;
            }
            for (std::size_t k = 0; k < data.cell_n; ++k) {
                aligned.push_back(data.value(ia, ib, k) - cm + est);
            }
        }
    }
    return aligned;
}

AnovaTable art_anova(const FactorialData& data) {
    check_shape(data);
    AnovaTable out;
    const ArtEffect effects[] = {ArtEffect::FactorA, ArtEffect::FactorB,
                                 ArtEffect::Interaction};
    const char* row_names[] = {"A", "B", "A:B"};
    AnovaRow last_residual;
    for (int e = 0; e < 3; ++e) {
        FactorialData ranked = data;
        ranked.response = average_ranks(art_aligned(data, effects[e]));
        const AnovaTable t = two_way_anova(ranked);
        out.rows.push_back(t.row(row_names[e]));
        last_residual = t.row("Residual");
    }
    out.rows.push_back(last_residual);
    return out;
}

std::vector<Contrast> pairwise_contrasts(const FactorialData& data, ContrastFamily family) {
    check_shape(data);
    const AnovaTable t = two_way_anova(data);
    const double ms_res = t.row("Residual").mean_sq;
    const double df_res = t.row("Residual").df;
    const Means m = compute_means(data);

    std::vector<Contrast> out;
    auto add = [&](const std::string& label, double m1, double m2, double n1, double n2) {
        Contrast c;
        c.label = label;
        c.estimate = m1 - m2;
        c.se = std::sqrt(ms_res * (1.0 / n1 + 1.0 / n2));
        c.df = df_res;
        if (c.se > 0.0) {
            c.t = c.estimate / c.se;
            c.p_raw = t_two_sided(c.t, df_res);
        } else {
            c.t = 0.0;
            c.p_raw = 1.0;
        }
        out.push_back(c);
    };

    const double n = double(data.cell_n);
    if (family == ContrastFamily::SimpleEffects) {
        // factor-A pairs within each B level, then factor-B pairs within each A level
        for (std::size_t ib = 0; ib < data.b_levels; ++ib) {
            for (std::size_t i = 0; i < data.a_levels; ++i) {
                for (std::size_t j = i + 1; j < data.a_levels; ++j) {
                    add(data.a_name(i) + " - " + data.a_name(j) + " | " + data.b_name(ib),
                        m.cell[i * data.b_levels + ib], m.cell[j * data.b_levels + ib], n, n);
                }
            }
        }
        for (std::size_t ia = 0; ia < data.a_levels; ++ia) {
            for (std::size_t i = 0; i < data.b_levels; ++i) {
                for (std::size_t j = i + 1; j < data.b_levels; ++j) {
                    add(data.b_name(i) + " - " + data.b_name(j) + " | " + data.a_name(ia),
                        m.cell[ia * data.b_levels + i], m.cell[ia * data.b_levels + j], n, n);
                }
            }
        }
    } else {
        const double na = n * double(data.b_levels);
        for (std::size_t i = 0; i < data.a_levels; ++i) {
            for (std::size_t j = i + 1; j < data.a_levels; ++j) {
                add(data.a_name(i) + " - " + data.a_name(j), m.a[i], m.a[j], na, na);
            }
        }
    }

    const double kf = double(out.size());
    for (auto& c : out) c.p_adj = std::min(1.0, kf * c.p_raw);
    return out;
}

std::vector<std::pair<double, double>> qq_data(const std::vector<double>& residuals) {
    std::vector<double> sorted = residuals;
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::pair<double, double>> out;
    const std::size_t n = sorted.size();
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.emplace_back(normal_quantile((double(i) + 0.5) / double(n)), sorted[i]);
    }
    return out;
}

}  // namespace inspsim
