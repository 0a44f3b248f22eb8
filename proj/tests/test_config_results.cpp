#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "inspsim/config.hpp"
#include "inspsim/results.hpp"

using namespace inspsim;
namespace fs = std::filesystem;

namespace {

std::string write_temp(const std::string& name, const std::string& text) {
    const std::string path = (fs::temp_directory_path() / name).string();
    std::ofstream out(path);
    out << text;
    return path;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST_CASE("empty config resolves to the documented defaults") {
    const std::string path = write_temp("inspsim_empty.json", "{}\n");
    const ExperimentConfig cfg = load_config(path);
    CHECK(cfg.constants.mu == doctest::Approx(3.986004418e14));
    CHECK(cfg.constants.r0_orbit == doctest::Approx(7357000.0));
    CHECK(cfg.constants.mass == 1.0);
    CHECK(cfg.constants.u_max == 1.0);
    CHECK(cfg.mc.threshold_m == doctest::Approx(0.85));
    CHECK(cfg.mc.horizon == doctest::Approx(6280.0));
    CHECK(cfg.mc.n_key == 20);
    CHECK(cfg.mc.n_agloc == 20);
    CHECK(cfg.mc.n_deputies == 3);
    CHECK(cfg.val.threshold_m == doctest::Approx(0.85));
    CHECK(cfg.val.trials_per_cell == 30);
    CHECK(cfg.val.entrance_r_lo == doctest::Approx(150.0));
    CHECK(cfg.val.entrance_r_hi == doctest::Approx(400.0));
    CHECK(cfg.val.keep_out == doctest::Approx(50.0));
    CHECK(cfg.val.capture.illum_mode == IllumMode::BlinnPhongEarthShadow);
    CHECK(cfg.output_dir == "out");
    std::remove(path.c_str());
}

TEST_CASE("unknown keys are rejected with a path-qualified message") {
    const std::string path =
        write_temp("inspsim_unknown.json", R"({"val": {"tresholt_m": 0.9}})");
    try {
        load_config(path);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("val.tresholt_m") != std::string::npos);
    }
    std::remove(path.c_str());
}

TEST_CASE("range violations are rejected") {
    const std::string path = write_temp(
        "inspsim_range.json", R"({"capture": {"fov_half_angle": -1.0}})");
    CHECK_THROWS_AS(load_config(path), ConfigError);
    std::remove(path.c_str());

    const std::string p2 =
        write_temp("inspsim_range2.json", R"({"mc": {"n_samples": 0}})");
    CHECK_THROWS_AS(load_config(p2), ConfigError);
    std::remove(p2.c_str());
}

TEST_CASE("TOML subset: tables, scalars, arrays, comments") {
    const std::string path = write_temp("inspsim_cfg.toml",
                                        "# experiment overrides\n"
                                        "output_dir = \"results/run1\"\n"
                                        "[constants]\n"
                                        "r0_orbit = 7.0e6  # lower chief orbit\n"
                                        "[mc]\n"
                                        "n_samples = 64\n"
                                        "rso_mode = \"tumble\"\n"
                                        "[val]\n"
                                        "trials_per_cell = 5\n"
                                        "ph_assignment = [1, 2, 3]\n"
                                        "[capture]\n"
                                        "illum_mode = \"binary\"\n");
    const ExperimentConfig cfg = load_config(path);
    CHECK(cfg.output_dir == "results/run1");
    CHECK(cfg.constants.r0_orbit == doctest::Approx(7.0e6));
    CHECK(cfg.mc.n_samples == 64);
    CHECK(cfg.mc.rso_mode == RsoMode::StableTumble);
    CHECK(cfg.val.trials_per_cell == 5);
    CHECK(cfg.val.ph_assignment == std::vector<std::uint32_t>{1, 2, 3});
    CHECK(cfg.val.capture.illum_mode == IllumMode::Binary);
    std::remove(path.c_str());
}

TEST_CASE("inconsistent sigma_mu override is rejected") {
    const std::string path =
        write_temp("inspsim_sigma.json", R"({"constants": {"sigma_mu": 2.0e-3}})");
    CHECK_THROWS_AS(load_config(path), ConfigError);
    std::remove(path.c_str());

    // a consistent value is accepted
    const std::string ok = write_temp(
        "inspsim_sigma_ok.json", R"({"constants": {"sigma_mu": 1.0005015223738258e-3}})");
    CHECK_NOTHROW(load_config(ok));
    std::remove(ok.c_str());
}

TEST_CASE("dump(load(x)) is a fixed point under reload") {
    const std::string path = write_temp(
        "inspsim_fp.toml", "[val]\ntrials_per_cell = 4\n[mc]\nn_samples = 16\n");
    const ExperimentConfig cfg = load_config(path);
    const std::string once = dump_config(cfg);
    const ExperimentConfig back = parse_config_json(once);
    const std::string twice = dump_config(back);
    CHECK(once == twice);
    CHECK(back.val.trials_per_cell == 4);
    CHECK(back.mc.n_samples == 16);
    std::remove(path.c_str());
}

TEST_CASE("FNV-1a reference vectors") {
    CHECK(fnv1a_64("") == 0xCBF29CE484222325ull);
    CHECK(fnv1a_64("a") == 0xAF63DC4C8601EC8Cull);
    CHECK(fnv1a_64("foobar") == 0x85944171F73967E8ull);
}

TEST_CASE("trials CSV round trips the metric columns") {
    std::vector<TrialRecord> recs(3);
    recs[0].mode = RsoMode::StableTumble;
    recs[0].policy = StrategyKind::GreedyActive;
    recs[0].trial_index = 7;
    recs[0].fuel_total = 12.34567890123;
    recs[0].inspection_fraction = 0.875;
    recs[0].success = true;
    recs[0].tau = 1234.5;
    recs[1].failure_reason = "singular transfer";
    recs[2].fuel_total = 1e-17;

    const std::string path = (fs::temp_directory_path() / "inspsim_trials.csv").string();
    write_trials_csv(recs, path);
    const auto back = read_trials_csv(path);
    REQUIRE(back.size() == 3);
    CHECK(back[0].mode == RsoMode::StableTumble);
    CHECK(back[0].policy == StrategyKind::GreedyActive);
    CHECK(back[0].trial_index == 7);
    CHECK(back[0].fuel_total == recs[0].fuel_total);
    CHECK(back[0].inspection_fraction == 0.875);
    CHECK(back[0].success);
    REQUIRE(back[0].tau.has_value());
    CHECK(*back[0].tau == 1234.5);
    CHECK(back[1].failure_reason == "singular transfer");
    CHECK_FALSE(back[1].tau.has_value());
    CHECK(back[2].fuel_total == 1e-17);
    std::remove(path.c_str());
}

TEST_CASE("identical records produce byte-identical CSV files") {
    std::vector<TrialRecord> recs(2);
    recs[0].fuel_total = 3.141592653589793;
    recs[1].coverage_series = {0.0f, 0.25f, 0.5f};
    recs[1].fuel_series = {0.0f, 0.1f, 0.2f};
    const std::string p1 = (fs::temp_directory_path() / "inspsim_a.csv").string();
    const std::string p2 = (fs::temp_directory_path() / "inspsim_b.csv").string();
    write_trials_csv(recs, p1);
    write_trials_csv(recs, p2);
    CHECK(slurp(p1) == slurp(p2));
    write_series_csv(recs, p1);
    write_series_csv(recs, p2);
    CHECK(slurp(p1) == slurp(p2));
    std::remove(p1.c_str());
    std::remove(p2.c_str());
}

TEST_CASE("manifest lists per-file checksums that match the contents") {
    const fs::path dir = fs::temp_directory_path() / "inspsim_manifest";
    fs::create_directories(dir);
    const std::string f1 = (dir / "one.csv").string();
    const std::string f2 = (dir / "two.csv").string();
    {
        std::ofstream(f1) << "alpha,beta\n1,2\n";
        std::ofstream(f2) << "gamma\n3\n";
    }
    const std::string mpath = write_manifest(dir.string(), "{\"cfg\":1}", 42,
                                             {"one.csv", "two.csv"});
    const std::string text = slurp(mpath);
    char expect[32];
    std::snprintf(expect, sizeof expect, "%016llx",
                  (unsigned long long)checksum_file(f1));
    CHECK(text.find(expect) != std::string::npos);
    CHECK(text.find("\"seed\": 42") != std::string::npos);
    std::snprintf(expect, sizeof expect, "%016llx",
                  (unsigned long long)fnv1a_64("{\"cfg\":1}"));
    CHECK(text.find(expect) != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("checksum_file throws on a missing path") {
    CHECK_THROWS_AS(checksum_file("/nonexistent/file.bin"), std::runtime_error);
}
