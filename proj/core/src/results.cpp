#include "inspsim/results.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace inspsim {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt(float v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", double(v));
    return buf;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write '" + path + "'");
    return f;
}

}  // namespace

std::uint64_t fnv1a_64(const std::string& bytes) {
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (const unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001B3ull;
    }
    return h;
}

std::uint64_t checksum_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot read '" + path + "'");
    std::stringstream buf;
    buf << f.rdbuf();
    return fnv1a_64(buf.str());
}

void write_trials_csv(const std::vector<TrialRecord>& records, const std::string& path) {
    auto f = open_out(path);
    f << "mode,policy,trial,fuel_total,inspection_fraction,success,tau,failure_reason\n";
    for (const auto& r : records) {
        f << mode_name(r.mode) << ',' << policy_name(r.policy) << ',' << r.trial_index << ','
          << fmt(r.fuel_total) << ',' << fmt(r.inspection_fraction) << ','
          << (r.success ? 1 : 0) << ',' << (r.tau ? fmt(*r.tau) : std::string()) << ','
          << r.failure_reason << '\n';
    }
}

void write_series_csv(const std::vector<TrialRecord>& records, const std::string& path) {
    auto f = open_out(path);
    f << "mode,policy,trial,t,fuel,coverage\n";
    for (const auto& r : records) {
        const std::string prefix = std::string(mode_name(r.mode)) + ',' +
                                   policy_name(r.policy) + ',' +
                                   std::to_string(r.trial_index) + ',';
        for (std::size_t i = 0; i < r.fuel_series.size(); ++i) {
            f << prefix << i << ',' << fmt(r.fuel_series[i]) << ','
              << fmt(r.coverage_series[i]) << '\n';
        }
    }
}

void write_summary_csv(const FactorialData& data, const std::vector<CellSummary>& cells,
                       const std::string& path) {
    auto f = open_out(path);
    f << "factor_a,factor_b,n,mean,sd\n";
    for (const auto& c : cells) {
        f << data.a_name(c.ia) << ',' << data.b_name(c.ib) << ',' << c.n << ','
          << fmt(c.mean) << ',' << fmt(c.sd) << '\n';
    }
}

void write_anova_csv(const AnovaTable& table, const std::string& path) {
    auto f = open_out(path);
    f << "effect,df,sum_sq,mean_sq,f,p\n";
    for (const auto& r : table.rows) {
        f << r.effect << ',' << fmt(r.df) << ',' << fmt(r.sum_sq) << ',' << fmt(r.mean_sq)
          << ',';
        if (r.effect != "Residual" && r.f_defined) {
            f << fmt(r.f) << ',' << fmt(r.p);
        } else {
            f << ',';
        }
        f << '\n';
    }
}

void write_levene_csv(const LeveneResult& levene, const std::string& path) {
    auto f = open_out(path);
    f << "statistic,df1,df2,p\n";
    f << fmt(levene.statistic) << ',' << fmt(levene.df1) << ',' << fmt(levene.df2) << ','
      << fmt(levene.p) << '\n';
}

void write_contrasts_csv(const std::vector<Contrast>& contrasts, const std::string& path) {
    auto f = open_out(path);
    f << "contrast,estimate,se,df,t,p_raw,p_adj\n";
    for (const auto& c : contrasts) {
        f << c.label << ',' << fmt(c.estimate) << ',' << fmt(c.se) << ',' << fmt(c.df) << ','
          << fmt(c.t) << ',' << fmt(c.p_raw) << ',' << fmt(c.p_adj) << '\n';
    }
}

void write_qq_csv(const std::vector<std::pair<double, double>>& points,
                  const std::string& path) {
    auto f = open_out(path);
    f << "theoretical,sample\n";
    for (const auto& [q, s] : points) {
        f << fmt(q) << ',' << fmt(s) << '\n';
    }
}

void write_eval_csv(const std::vector<EvalResult>& results, const std::string& path) {
    auto f = open_out(path);
    f << "kind,assignment,mean_inspection_fraction,mean_time_to_threshold,mean_fuel\n";
    for (const auto& r : results) {
        f << policy_name(r.strategy.kind) << ',';
        for (std::size_t k = 0; k < r.strategy.assignment.size(); ++k) {
            if (k) f << ';';
            for (std::size_t i = 0; i < r.strategy.assignment[k].size(); ++i) {
                if (i) f << '|';
                f << r.strategy.assignment[k][i];
            }
        }
        f << ',' << fmt(r.mean_inspection_fraction) << ',' << fmt(r.mean_time_to_threshold)
          << ',' << fmt(r.mean_fuel) << '\n';
    }
}

std::vector<TrialRecord> read_trials_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot read '" + path + "'");
    std::string line;
    if (!std::getline(f, line)) throw std::runtime_error("'" + path + "': empty file");

    auto parse_mode = [&](const std::string& s) {
        if (s == "static") return RsoMode::StaticCWH;
        if (s == "tumble") return RsoMode::StableTumble;
        throw std::runtime_error("'" + path + "': unknown mode '" + s + "'");
    };
    auto parse_policy = [&](const std::string& s) {
        if (s == "point_hold") return StrategyKind::PointHold;
        if (s == "nmc_hold") return StrategyKind::NmcHold;
        if (s == "waypoint_sequence") return StrategyKind::WaypointSequence;
        if (s == "greedy_active") return StrategyKind::GreedyActive;
        throw std::runtime_error("'" + path + "': unknown policy '" + s + "'");
    };

    std::vector<TrialRecord> out;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cols;
        std::stringstream ss(line);
        std::string col;
        while (std::getline(ss, col, ',')) cols.push_back(col);
        cols.resize(8);
        TrialRecord r;
        r.mode = parse_mode(cols[0]);
        r.policy = parse_policy(cols[1]);
        r.trial_index = std::stoull(cols[2]);
        r.fuel_total = std::stod(cols[3]);
        r.inspection_fraction = std::stod(cols[4]);
        r.success = cols[5] == "1";
        if (!cols[6].empty()) r.tau = std::stod(cols[6]);
        r.failure_reason = cols[7];
        out.push_back(std::move(r));
    }
    return out;
}

std::string write_manifest(const std::string& dir, const std::string& config_json,
                           std::uint64_t seed, const std::vector<std::string>& files) {
    nlohmann::json j;
    j["schema"] = 1;
    j["seed"] = seed;
    char buf[24];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a_64(config_json)));
    j["config_fnv1a"] = buf;
    nlohmann::json sums = nlohmann::json::object();
    for (const auto& name : files) {
        std::snprintf(buf, sizeof buf, "%016llx",
                      static_cast<unsigned long long>(checksum_file(dir + "/" + name)));
        sums[name] = buf;
    }
    j["files"] = sums;
    const std::string path = dir + "/manifest.json";
    auto f = open_out(path);
    f << j.dump(2) << "\n";
    return path;
}

}  // namespace inspsim
