#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include <gtest/gtest.h>

#include "lohho/analysis.hpp"
#include "lohho/cases.hpp"
#include "lohho/study.hpp"
#include "lohho/vtk.hpp"

using namespace lohho;
namespace fs = std::filesystem;

namespace {

std::string csv_of(const RunConfig& c)
{
    std::ostringstream out;
    write_study_csv(out, run_study(c));
    return out.str();
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text)
{
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        std::vector<std::string> cells;
        std::stringstream ls(line);
        for (std::string cell; std::getline(ls, cell, ',');)
            cells.push_back(cell);
        if (!line.empty() && line.back() == ',')
            cells.emplace_back();
        rows.push_back(cells);
    }
    return rows;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

class TempDir {
public:
    TempDir() : path_(fs::temp_directory_path() / ("lohho_test_" + std::to_string(::getpid())))
    {
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    const fs::path& path() const { return path_; }

private:
    fs::path path_;
};

int run_cli(const std::string& args)
{
    const std::string cmd = std::string(LOHHO_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

RunConfig small_config()
{
    RunConfig c;
    c.case_id = "brenner2d";
    c.family = MeshFamily::structured_triangular;
    c.levels = {4, 8, 16};
    c.check_tractions = true;
    return c;
}

} // namespace

TEST(Study, EmptyLevelsRejected)
{
    RunConfig c;
    EXPECT_THROW(c.validate(), ConfigError);
    EXPECT_THROW(run_study(c), ConfigError);
}

TEST(Study, ParsesJsonConfig)
{
    const RunConfig c = parse_run_config(R"({"case": "cube3d", "family": "cube-to-tet", "levels": [1, 2],
        "mu": 2.0, "lambda": 3.0, "solver": "cg", "tolerance": 1e-9, "check_tractions": true})");
    EXPECT_EQ(c.case_id, "cube3d");
    EXPECT_EQ(c.family, MeshFamily::cube_to_tet);
    EXPECT_EQ(c.levels, (std::vector<int>{1, 2}));
    EXPECT_EQ(*c.mu, 2.0);
    EXPECT_EQ(*c.lambda, 3.0);
    EXPECT_EQ(c.solver.method, SolverMethod::cg);
    EXPECT_EQ(c.solver.tolerance, 1e-9);
    EXPECT_TRUE(c.check_tractions);
    EXPECT_THROW(parse_run_config(R"({"levels": [2], "colour": "red"})"), ConfigError);
    EXPECT_THROW(parse_run_config("{not json"), ConfigError);
    EXPECT_THROW(parse_run_config(R"({"levels": [4, 2]})").validate(), ConfigError);
}

TEST(Study, CsvIsByteIdenticalOnRerun)
{
    const RunConfig c = small_config();
    EXPECT_EQ(csv_of(c), csv_of(c));
}

TEST(Study, CsvColumnsAndEocRecomputable)
{
    const auto rows = parse_csv(csv_of(small_config()));
    ASSERT_EQ(rows.size(), 4u);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"mesh_id", "h", "ndofs", "nnz", "energy_err", "energy_eoc", "l2_err",
                                                  "l2_eoc", "balance_residual", "equilibrium_residual"}));
    EXPECT_EQ(rows[1][0], "structured-triangular-n4");
    EXPECT_EQ(rows[1][2], "144");
    EXPECT_EQ(rows[1][5], "");
    for (std::size_t i = 2; i < rows.size(); ++i) {
        for (std::size_t col : {4u, 6u}) {
            const double want = std::log(std::stod(rows[i - 1][col]) / std::stod(rows[i][col]))
                                / std::log(std::stod(rows[i - 1][1]) / std::stod(rows[i][1]));
            EXPECT_NEAR(std::stod(rows[i][col + 1]), want, 2e-4);
        }
        EXPECT_LE(std::stod(rows[i][8]), 1e-8);
        EXPECT_LE(std::stod(rows[i][9]), 1e-8);
    }
}

TEST(Study, ExportsFiles)
{
    TempDir dir;
    RunConfig c;
    c.case_id = "cube3d";
    c.family = MeshFamily::cube_to_tet;
    c.levels = {2};
    c.check_tractions = true;
    c.vtk_prefix = (dir.path() / "u").string();
    c.tractions_prefix = (dir.path() / "phi").string();
    c.matrix_prefix = (dir.path() / "A").string();
    const auto report = run_study(c);
    ASSERT_TRUE(report.ok());

    const std::string vtk = slurp(dir.path() / "u_cube-to-tet-n2.vtk");
    EXPECT_EQ(vtk.rfind("# vtk DataFile Version", 0), 0u);
    EXPECT_NE(vtk.find("DATASET UNSTRUCTURED_GRID"), std::string::npos);
    EXPECT_NE(vtk.find("CELL_DATA 48"), std::string::npos);
    const auto types = vtk.find("CELL_TYPES 48");
    ASSERT_NE(types, std::string::npos);
    std::istringstream in(vtk.substr(types + 13));
    int tens = 0, t;
    for (int k = 0; k < 48 && in >> t; ++k)
        tens += t == 10;
    EXPECT_EQ(tens, 48);

    std::istringstream mtx(slurp(dir.path() / "A_cube-to-tet-n2.mtx"));
    std::string header;
    std::getline(mtx, header);
    EXPECT_EQ(header, "%%MatrixMarket matrix coordinate real general");
    long rows, cols, nnz;
    mtx >> rows >> cols >> nnz;
    EXPECT_EQ(static_cast<std::size_t>(rows), report.levels[0].ndofs);
    EXPECT_EQ(static_cast<std::size_t>(nnz), report.levels[0].nnz);

    EXPECT_TRUE(fs::exists(dir.path() / "phi_cube-to-tet-n2.csv"));
}

TEST(Study, ErrorsNameTheLevel)
{
    RunConfig c;
    c.family = MeshFamily::file;
    c.files = {"/nonexistent/mesh.txt"};
    try {
        run_study(c);
        FAIL() << "expected an error";
    } catch (const std::runtime_error& e) {
        EXPECT_NE(std::string(e.what()).find("mesh:"), std::string::npos) << e.what();
    }
}

TEST(Study, VtkExportFailsOnBadPath)
{
    const Mesh m = cartesian_mesh_2d(1);
    const DofMap dofs(m);
    const DiscreteDisplacement v(dofs, Eigen::VectorXd::Zero(2));
    EXPECT_THROW(export_vtk(v, m, "/nonexistent/dir/u.vtk"), std::runtime_error);
}

TEST(Cli, ExitCodes)
{
    EXPECT_EQ(run_cli("--list-cases"), 0);
    EXPECT_EQ(run_cli("--case brenner2d --family cartesian --levels 2,4 --check-tractions"), 0);
    EXPECT_EQ(run_cli("--case brenner2d --family cartesian"), 2);
    EXPECT_EQ(run_cli("--family hexagonal --levels 2"), 2);
    EXPECT_EQ(run_cli("--case brenner2d --mu 2 --levels 2"), 2);
    EXPECT_EQ(run_cli("--no-such-flag"), 2);
    EXPECT_EQ(run_cli("--family file --files /nonexistent/m.txt"), 1);
}

TEST(Cli, WritesCsvFile)
{
    TempDir dir;
    const fs::path out = dir.path() / "study.csv";
    ASSERT_EQ(run_cli("--case cube3d --family cartesian --levels 1,2 --out " + out.string()), 0);
    const auto rows = parse_csv(slurp(out));
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_EQ(rows[2][2], "60");
}
