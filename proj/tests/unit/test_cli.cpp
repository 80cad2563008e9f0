#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "nuspectra/cli.hpp"
#include "nuspectra/errors.hpp"

using namespace nuspectra;
using namespace nuspectra::cli;

namespace {

struct CliRun {
    int code;
    std::string out, err;
};

CliRun run_cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::vector<std::vector<double>> numeric_rows(const std::string& csv) {
    std::vector<std::vector<double>> rows;
    std::istringstream in(csv);
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (header) {
            header = false;
            continue;
        }
        std::vector<double> row;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
        rows.push_back(row);
    }
    return rows;
}

} // namespace

TEST(Cli, HarmonicSpectrumJson) {
    const CliRun r = run_cli({"spectrum", "--potential", "harmonic_1d", "--levels", "0..4"});
    ASSERT_EQ(r.code, ExitCode::Ok) << r.err;
    EXPECT_NE(r.out.find("\"schema_version\": 1"), std::string::npos);
    EXPECT_NE(r.out.find("\"energy\": 4.5"), std::string::npos);
    EXPECT_EQ(r.out.find("\"energy\": 5.5"), std::string::npos);
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run_cli({"spectrum", "--potential", "woods_saxon"}).code, ExitCode::InvalidInput);
    EXPECT_EQ(run_cli({"spectrum", "--potential", "hulthen", "--param", "V0=-1"}).code, ExitCode::InvalidInput);
    EXPECT_EQ(run_cli({"spectrum", "--potential", "hulthen", "--param", "bogus"}).code, ExitCode::InvalidInput);
    EXPECT_EQ(run_cli({"spectrum", "--bad-flag"}).code, ExitCode::InvalidInput);
    EXPECT_EQ(run_cli({"spectrum", "--potential", "dirac_coulomb", "--param", "mu=1.2"}).code, ExitCode::InvalidInput);

    const CliRun none = run_cli({"spectrum", "--potential", "hulthen", "--param", "beta2=0.5"});
    EXPECT_EQ(none.code, ExitCode::NotBound);
    EXPECT_NE(none.err.find("minimum size of potential hole"), std::string::npos);
    EXPECT_EQ(run_cli({"spectrum", "--potential", "morse", "--levels", "40..50"}).code, ExitCode::NotBound);
    EXPECT_EQ(run_cli({"spectrum", "--potential", "harmonic_1d", "-o", "/nonexistent/dir/x.json"}).code,
              ExitCode::InvalidInput);
}

TEST(Cli, HulthenCsv) {
    const CliRun r = run_cli({"spectrum", "--potential", "hulthen", "--param", "beta2=2", "--format", "csv"});
    ASSERT_EQ(r.code, ExitCode::Ok) << r.err;
    EXPECT_NE(r.out.find("n,energy,units,level_count_rule_applied"), std::string::npos);
    EXPECT_NE(r.out.find("1,-0.12499999999999997,"), std::string::npos);
    EXPECT_NE(r.out.find("# level_count=1"), std::string::npos);
}

TEST(Cli, CsvQuotesFields) {
    const CliRun r = run_cli({"list", "--format", "csv"});
    ASSERT_EQ(r.code, ExitCode::Ok);
    EXPECT_NE(r.out.find("\"m*omega/hbar, inverse squared length\""), std::string::npos);
}

TEST(Cli, ListHasEveryId) {
    const CliRun r = run_cli({"--list"});
    ASSERT_EQ(r.code, ExitCode::Ok);
    int ids = 0;
    for (const char* id : {"harmonic_1d", "bessel", "spherical_harmonics", "coulomb", "rel_schrodinger", "dirac_coulomb",
                           "confinement_3d", "oscillator_3d", "poschl_teller", "mod_poschl_teller", "kratzer", "hulthen",
                           "morse", "morse_rotation", "mod_hulthen", "mod_hulthen_rotation", "generalized_morse",
                           "generalized_morse_via_hulthen"})
        ids += r.out.find(std::string("\"") + id + "\"") != std::string::npos;
    EXPECT_EQ(ids, 18);
}

TEST(Cli, ParseLevels) {
    EXPECT_EQ(parse_levels("2..5"), std::make_pair(2, 5));
    EXPECT_EQ(parse_levels("3"), std::make_pair(3, 3));
    for (const char* bad : {"", "5..2", "a..b", "1..", "-1"}) EXPECT_THROW((void)parse_levels(bad), Error) << bad;
}

TEST(Cli, ParseParams) {
    const Params p = parse_params({"V0=2", "beta2=0.5"});
    EXPECT_DOUBLE_EQ(p.at("V0"), 2.0);
    EXPECT_DOUBLE_EQ(p.at("beta2"), 0.5);
    for (const std::vector<std::string>& bad :
         std::vector<std::vector<std::string>>{{"V0"}, {"=1"}, {"V0=x"}, {"V0=1", "V0=2"}, {"V0=nan"}})
        EXPECT_THROW((void)parse_params(bad), Error);
}

TEST(Cli, FigureGoldenFiles) {
    for (const char* fig : {"1", "2"}) {
        for (const char* fmt : {"csv", "json"}) {
            const CliRun a = run_cli({"wavefunction", "--figure", fig, "--format", fmt});
            const CliRun b = run_cli({"wavefunction", "--figure", fig, "--format", fmt});
            ASSERT_EQ(a.code, ExitCode::Ok) << a.err;
            EXPECT_EQ(a.out, b.out);
            const std::string golden = slurp(std::string(NUSPECTRA_GOLDEN_DIR) + "/figure" + fig + "." + fmt);
            EXPECT_EQ(a.out, golden) << "figure " << fig << " " << fmt;
        }
    }
}

TEST(Cli, FigureOneStatesAreNormalized) {
    const CliRun r = run_cli({"wavefunction", "--potential", "harmonic_1d", "--levels", "0..4", "--from", "-8", "--to", "8",
                           "--points", "1601", "--format", "csv"});
    ASSERT_EQ(r.code, ExitCode::Ok) << r.err;
    const auto rows = numeric_rows(r.out);
    ASSERT_EQ(rows.size(), 1601u);
    ASSERT_EQ(rows[0].size(), 6u);
    for (int c = 1; c <= 5; ++c) {
        double s = 0.0;
        for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
            const double h = rows[i + 1][0] - rows[i][0];
            s += 0.5 * h * (rows[i][c] * rows[i][c] + rows[i + 1][c] * rows[i + 1][c]);
        }
        EXPECT_NEAR(s, 1.0, 1e-3) << "psi_" << c - 1;
    }
}

TEST(Cli, FigureTwoMinimum) {
    const CliRun r = run_cli({"wavefunction", "--figure", "2", "--format", "csv"});
    ASSERT_EQ(r.code, ExitCode::Ok);
    const auto key = std::string("# mod_hulthen.r_min=");
    const auto pos = r.out.find(key);
    ASSERT_NE(pos, std::string::npos);
    EXPECT_NEAR(std::stod(r.out.substr(pos + key.size())), std::log(3.0), 1e-9);
}

TEST(Cli, MoleculesFlags) {
    const CliRun r = run_cli({"molecules", "--format", "csv"});
    EXPECT_EQ(r.code, ExitCode::Ok) << r.err;
    EXPECT_NE(r.out.find("CONSISTENT"), std::string::npos);
    EXPECT_NE(r.out.find("DISCREPANT"), std::string::npos);
}

TEST(Cli, VerifyTables) {
    const CliRun r = run_cli({"verify", "--scope", "tables"});
    EXPECT_EQ(r.code, ExitCode::Ok) << r.err;
    EXPECT_EQ(run_cli({"verify", "--scope", "nothing"}).code, ExitCode::InvalidInput);
    EXPECT_EQ(run_cli({"verify", "--scope", "tables", "--tol", "table=abc"}).code, ExitCode::InvalidInput);
}
