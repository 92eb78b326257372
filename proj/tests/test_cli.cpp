#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace {

struct Result {
  int code = -1;
  std::string out;
};

fs::path work_dir() {
  static const fs::path dir = [] {
    const fs::path p = fs::temp_directory_path() / "eplast_cli_test";
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
  }();
  return dir;
}

Result eplast(const std::string& args) {
  const fs::path out = work_dir() / "stdout.txt";
  const std::string cmd = std::string(EPLAST_CLI_PATH) + " " + args + " > " + out.string() + " 2> " +
                          (work_dir() / "stderr.txt").string();
  const int status = std::system(cmd.c_str());
  Result r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream is(out);
  std::ostringstream ss;
  ss << is.rdbuf();
  r.out = ss.str();
  return r;
}

fs::path write_config(const std::string& name, const std::string& text) {
  const fs::path p = work_dir() / name;
  std::ofstream(p) << text;
  return p;
}

const char* small_static = "[scenario]\nname = static\n[grid]\nnx = 12\nny = 12\n[time]\nsteps = 3\n";

}  // namespace

TEST(Cli, ListsScenariosAndMaterials) {
  const Result s = eplast("scenarios");
  EXPECT_EQ(s.code, 0);
  EXPECT_NE(s.out.find("jeffreys_creep"), std::string::npos);
  const Result m = eplast("materials neo_hookean_default");
  EXPECT_EQ(m.code, 0);
  EXPECT_NE(m.out.find("G_E"), std::string::npos);
}

TEST(Cli, UnknownMaterialIsAConfigError) { EXPECT_EQ(eplast("materials nope").code, 2); }

TEST(Cli, BadFlagIsAConfigError) {
  EXPECT_EQ(eplast("run --frobnicate").code, 2);
  EXPECT_EQ(eplast("").code, 2);
}

TEST(Cli, VersionFlag) {
  const Result r = eplast("--version");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("0.1.0"), std::string::npos);
}

TEST(Cli, CheckPrintsNormalizedConfig) {
  const Result r = eplast("check --config " + write_config("check.cfg", small_static).string() + " --steps 9");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("name = static"), std::string::npos);
  EXPECT_NE(r.out.find("steps = 9"), std::string::npos);
}

TEST(Cli, InvalidConfigExitsTwo) {
  EXPECT_EQ(eplast("check --config " + write_config("bad.cfg", "[material]\nalpha = 2.5\n").string()).code, 2);
  EXPECT_EQ(eplast("check --config " + write_config("bad2.cfg", "[grid]\nnx\n").string()).code, 2);
  EXPECT_EQ(eplast("check --config /nonexistent/eplast.cfg").code, 2);
}

TEST(Cli, RunThenAudit) {
  const fs::path out = work_dir() / "run_static";
  const std::string common = "--config " + write_config("run.cfg", small_static).string() + " --out " + out.string();
  ASSERT_EQ(eplast("run " + common + " --threads 2").code, 0);
  EXPECT_TRUE(fs::exists(out / "energies.csv"));
  EXPECT_TRUE(fs::exists(out / "manifest.txt"));
  const Result a = eplast("audit " + common);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out.rfind("step,t [s],kinetic [J]", 0), 0u);
  EXPECT_NE(a.out.find("\n0,"), std::string::npos);
  EXPECT_NE(a.out.find("\n3,"), std::string::npos);
}

TEST(Cli, CflViolationExitsThree) {
  const fs::path out = work_dir() / "run_cfl";
  const std::string cfg = "[grid]\nnx = 16\nny = 16\n[time]\nsteps = 2\ndt = 0.5\n";
  EXPECT_EQ(eplast("run --config " + write_config("cfl.cfg", cfg).string() + " --out " + out.string()).code, 3);
  EXPECT_TRUE(fs::exists(out / "failure.txt"));
}

TEST(Cli, NegativeTemperatureExitsFour) {
  // With alpha near 1 and a strong coupling the explicit adiabatic cooling
  // overshoots zero within a few steps of the volumetric relaxation.
  const fs::path out = work_dir() / "run_cold";
  const std::string cfg =
      "[scenario]\nname = kelvin_voigt_volumetric\namplitude = 0.5\n"
      "[material]\nc = 0.1\nc1 = 5\nalpha = 1.01\n[grid]\nnx = 16\nny = 16\n[time]\nsteps = 50\ndt = 0.01\n";
  EXPECT_EQ(eplast("run --config " + write_config("cold.cfg", cfg).string() + " --out " + out.string()).code, 4);
  std::ifstream failure(out / "failure.txt");
  std::ostringstream ss;
  ss << failure.rdbuf();
  EXPECT_NE(ss.str().find("NegativeEnthalpy"), std::string::npos);
}
