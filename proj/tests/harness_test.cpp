#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "secrecy/secrecy.hpp"

using namespace secrecy;

namespace {

constexpr const char* one_gaussian = R"({"schema_version": 1, "channels": [{"kind": "gaussian", "sigma_m_sq": 1, "sigma_w_sq": 3}]})";

Scenario agents_scenario() {
    return parse_scenario(R"({"schema_version": 1, "channels": [
        {"kind": "agent", "main_snr": 1, "eaves_snr": 2.5},
        {"kind": "agent", "main_snr": 2, "eaves_snr": 5},
        {"kind": "agent", "main_snr": 3, "eaves_snr": 6}]})");
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::size_t count_rows(const std::vector<ReportRecord>& rs, const std::string& experiment) {
    std::size_t n = 0;
    for (const auto& r : rs) n += r.experiment == experiment ? 1 : 0;
    return n;
}

}  // namespace

TEST(Scenario, MinimalGaussian) {
    const auto sc = parse_scenario(one_gaussian);
    ASSERT_EQ(sc.channels.size(), 1u);
    EXPECT_EQ(sc.channels[0].id, 1);
    EXPECT_NE(sc.channels[0].get_if<GaussianWiretapChannel>(), nullptr);
    EXPECT_EQ(sc.seed, 0u);
    EXPECT_FALSE(sc.budget.has_value());
}

TEST(Scenario, InvariantViolationNamesTheChannel) {
    try {
        parse_scenario(R"({"schema_version": 1, "channels": [
            {"kind": "gaussian", "sigma_m_sq": 1, "sigma_w_sq": 2},
            {"kind": "gaussian", "sigma_m_sq": -1, "sigma_w_sq": 2}]})");
        FAIL() << "expected a validation error";
    } catch (const ScenarioValidationError& e) {
        EXPECT_EQ(e.pointer(), "/channels/1");
    }
}

TEST(Scenario, SyntaxErrorCarriesPosition) {
    try {
        parse_scenario("{\n  \"schema_version\": 1,\n  \"channels\": [,]\n}");
        FAIL() << "expected a syntax error";
    } catch (const ScenarioSyntaxError& e) {
        EXPECT_EQ(e.line(), 3u);
    }
}

TEST(Scenario, ErrorKindsAreDistinct) {
    EXPECT_THROW(load_scenario("/nonexistent/dir/x.scenario"), ScenarioFileError);
    EXPECT_THROW(parse_scenario("{"), ScenarioSyntaxError);
    EXPECT_THROW(parse_scenario(R"({"schema_version": 2, "channels": []})"), ScenarioValidationError);
    EXPECT_THROW(parse_scenario(R"({"schema_version": 1, "channels": []})"), ScenarioValidationError);
    EXPECT_THROW(parse_scenario(R"({"schema_version": 1, "chanels": []})"), ScenarioValidationError);
    EXPECT_THROW(parse_scenario(R"({"schema_version": 1, "channels": [{"kind": "gaussian", "sigma_m_sq": 1, "sigma_w_sq": 2, "typo": 0}]})"),
                 ScenarioValidationError);
    EXPECT_THROW(parse_scenario(R"({"schema_version": 1, "channels": [{"kind": "laser"}]})"), ScenarioValidationError);
    EXPECT_THROW(parse_scenario(R"({"schema_version": 1, "channels": [{"kind": "agent", "id": 4, "main_snr": 1, "eaves_snr": 2},
                                                                       {"kind": "agent", "id": 4, "main_snr": 1, "eaves_snr": 2}]})"),
                 ScenarioValidationError);
}

TEST(Scenario, BundledReferenceMatchesBuiltIn) {
    const auto from_file = load_scenario(std::filesystem::path(SECRECY_SOURCE_DIR) / "scenarios" / "fig4.scenario");
    EXPECT_EQ(scenario_to_json(from_file), scenario_to_json(fig4_scenario()));
    const auto cls = classify(detail::agent_bank(from_file, "fig4"));
    EXPECT_EQ(cls.qualified.size(), 3u);
    EXPECT_EQ(cls.disqualified.size(), 6u);
}

TEST(Scenario, RoundTripsThroughJson) {
    const auto sc = fig4_scenario();
    const auto again = parse_scenario(scenario_to_json(sc).dump());
    EXPECT_EQ(scenario_to_json(again), scenario_to_json(sc));
}

TEST(Run, AllocateTwoIdenticalChannels) {
    const auto sc = parse_scenario(R"({"schema_version": 1, "budget": 4, "channels": [
        {"kind": "gaussian", "sigma_m_sq": 1, "sigma_w_sq": 3},
        {"kind": "gaussian", "sigma_m_sq": 1, "sigma_w_sq": 3}]})");
    const auto rs = run(Command::allocate, sc, {});
    ASSERT_EQ(rs.size(), 2u);
    EXPECT_NEAR(*rs[0].power, 2.0, 1e-12);
    EXPECT_NEAR(*rs[1].power, 2.0, 1e-12);
    EXPECT_FALSE(rs[0].pair_with.has_value());
}

TEST(Run, AllocateNeedsBudget) {
    EXPECT_THROW(run(Command::allocate, parse_scenario(one_gaussian), {}), UsageError);
    RunOptions opt;
    opt.budget = 2.0;
    EXPECT_NO_THROW(run(Command::allocate, parse_scenario(one_gaussian), opt));
}

TEST(Run, WrongChannelKindIsValidationError) {
    RunOptions opt;
    opt.budget = 1.0;
    EXPECT_THROW(run(Command::allocate, agents_scenario(), opt), ScenarioValidationError);
    EXPECT_THROW(run(Command::pair, parse_scenario(one_gaussian), opt), ScenarioValidationError);
}

TEST(Run, PairHandTrace) {
    const auto rs = run(Command::pair, agents_scenario(), {});
    ASSERT_EQ(count_rows(rs, "pair.pair"), 1u);
    const auto& p = rs.back();
    EXPECT_EQ(*p.channel_id, 1);
    EXPECT_EQ(*p.pair_with, 3);
    EXPECT_NEAR(*p.efficiency, 1.0 / 3.0, 1e-15);
}

TEST(Run, ReferenceShapeAndEfficiencies) {
    const auto rs = run(Command::fig4, fig4_scenario(), {});
    EXPECT_EQ(count_rows(rs, "fig4"), 9u);
    EXPECT_EQ(count_rows(rs, "fig4.pair"), 3u);
    for (const auto& r : rs)
        if (r.experiment == "fig4.pair") {
            EXPECT_GT(*r.efficiency, 0.0);
            EXPECT_LT(*r.efficiency, 0.5);
        }
}

TEST(Run, ReferenceCurves) {
    const auto pts = fig4_curves(fig4_scenario());
    const std::string csv = render_curves_csv(pts);
    EXPECT_EQ(csv.rfind("series,snr_db,efficiency\n", 0), 0u);
    for (const auto& p : pts) {
        ASSERT_GE(p.efficiency, 0.0);
        if (p.series.rfind("pair:", 0) == 0) ASSERT_LT(p.efficiency, 0.5);
        else ASSERT_LT(p.efficiency, 1.0);
    }
}

TEST(Run, ErgodicIsDeterministicAndSeedSensitive) {
    const auto sc = parse_scenario(R"({"schema_version": 1, "budget": 1, "samples": 2000, "channels": [
        {"kind": "fading", "a": 2, "b": 1, "sigma_m_sq": 1, "sigma_w_sq": 1},
        {"kind": "fading", "a": 1, "b": 3, "sigma_m_sq": 1, "sigma_w_sq": 1}]})");
    RunOptions opt;
    opt.seed = 9;
    const auto a = render(run(Command::ergodic, sc, opt), ReportFormat::json);
    const auto b = render(run(Command::ergodic, sc, opt), ReportFormat::json);
    EXPECT_EQ(a, b);
    opt.seed = 10;
    EXPECT_NE(a, render(run(Command::ergodic, sc, opt), ReportFormat::json));
}

TEST(Run, AddingAChannelLeavesOthersAlone) {
    const auto one = parse_scenario(R"({"schema_version": 1, "budget": 1, "samples": 2000, "channels": [
        {"kind": "fading", "a": 2, "b": 1, "sigma_m_sq": 1, "sigma_w_sq": 1}]})");
    const auto two = parse_scenario(R"({"schema_version": 1, "budget": 1, "samples": 2000, "channels": [
        {"kind": "fading", "a": 2, "b": 1, "sigma_m_sq": 1, "sigma_w_sq": 1},
        {"kind": "fading", "a": 5, "b": 1, "sigma_m_sq": 1, "sigma_w_sq": 1}]})");
    EXPECT_EQ(run(Command::ergodic, one, {})[0], run(Command::ergodic, two, {})[0]);
}

TEST(Run, DiscreteCapacity) {
    const auto sc = parse_scenario(R"({"schema_version": 1, "channels": [
        {"kind": "discrete", "main": [[0.9, 0.1], [0.1, 0.9]], "eaves": [[0.7, 0.3], [0.3, 0.7]]}]})");
    RunOptions opt;
    opt.grid_step = 1e-3;
    const auto rs = run(Command::discrete_capacity, sc, opt);
    EXPECT_NEAR(*rs[0].rate_bits, 0.4123, 1e-3);
}

TEST(Run, PickProb) {
    const auto sc = parse_scenario(R"({"schema_version": 1, "samples": 5000, "channels": [
        {"kind": "agent", "main_snr": 1, "eaves_snr": 1.5},
        {"kind": "agent", "main_snr": 2, "eaves_snr": 3.5},
        {"kind": "agent", "main_snr": 3, "eaves_snr": 3.5},
        {"kind": "agent", "main_snr": 4, "eaves_snr": 4.5},
        {"kind": "agent", "main_snr": 5, "eaves_snr": 6}]})");
    const auto rs = run(Command::pick_prob, sc, {});
    ASSERT_EQ(rs.size(), 6u);
    const auto& s = rs.back();
    EXPECT_EQ(s.experiment, "pick-prob.summary");
    EXPECT_EQ(s.metrics.at("pr_formula"), 0.8125);
    EXPECT_EQ(*s.channel_id, 4);
    EXPECT_EQ(*s.pair_with, 5);
}

TEST(Emit, EmptyRecordsGiveHeaderOnly) {
    EXPECT_EQ(render_csv({}), std::string(csv_header) + "\n");
}

TEST(Emit, AllocationRowLeavesPairFieldsEmpty) {
    RunOptions opt;
    opt.budget = 3.0;
    const auto csv = render_csv(run(Command::allocate, parse_scenario(one_gaussian), opt));
    EXPECT_EQ(csv, std::string(csv_header) + "\nallocate,1,,,3,0.5,,,0\n");
}

TEST(Emit, TwelveSignificantDigits) {
    EXPECT_EQ(format_number(1.0 / 3.0), "0.333333333333");
    EXPECT_EQ(format_number(2.0), "2");
    EXPECT_EQ(round_12(1.0 / 3.0), 0.333333333333);
}

TEST(Emit, JsonRoundTrip) {
    auto rs = run(Command::fig4, fig4_scenario(), {});
    const auto back = records_from_json(nlohmann::json::parse(render(rs, ReportFormat::json)));
    ASSERT_EQ(back.size(), rs.size());
    for (auto& r : rs) {
        for (auto* v : {&r.main_snr, &r.eaves_snr, &r.power, &r.rate_bits, &r.efficiency})
            if (*v) *v = round_12(**v);
        for (auto& [k, v] : r.metrics) v = round_12(v);
    }
    EXPECT_EQ(back, rs);
}

TEST(Emit, WritesFilesAndReportsUnwritablePaths) {
    const auto dir = std::filesystem::temp_directory_path() / "secrecy_harness_test";
    std::filesystem::create_directories(dir);
    const auto rs = run(Command::fig4, fig4_scenario(), {});
    emit(rs, ReportFormat::csv, dir / "a.csv");
    emit(rs, ReportFormat::csv, dir / "b.csv");
    EXPECT_EQ(read_file(dir / "a.csv"), read_file(dir / "b.csv"));
    EXPECT_THROW(emit(rs, ReportFormat::csv, dir / "missing" / "c.csv"), ReportWriteError);
    std::filesystem::remove_all(dir);
}
