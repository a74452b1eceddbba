#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "qpsf/cli.hpp"
#include "qpsf/qpsf_file.hpp"

namespace fs = std::filesystem;
using namespace qpsf;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "qpsf");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string dir() {
  const fs::path d = fs::temp_directory_path() / "qpsf_cli_tests";
  fs::create_directories(d);
  return d.string();
}

}  // namespace

TEST_CASE("compute writes a field and passes its checks") {
  const std::string out = dir() + "/coh.qpsf";
  const std::string csv = dir() + "/coh.csv";
  const auto r = run({"compute", "--state", "coherent", "--state-args", "alpha0=1,alpha0_im=0.5", "--dist", "sigma-kr",
                      "--sigma", "0.5", "--grid", "n=128,qmin=-8,qmax=8", "--out", out, "--csv", csv, "--check"});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.out.find("PASS marginal-q") != std::string::npos);
  CHECK(r.out.find("FAIL") == std::string::npos);
  const auto f = read_qpsf(fs::path(out));
  CHECK(f.tag().kind == DistributionKind::sigma_kr);
  CHECK(f.rows() == 128);
  CHECK(fs::file_size(csv) > 0);
}

TEST_CASE("Fock engine and s-ordered output") {
  const std::string out = dir() + "/q.qpsf";
  const auto r = run({"compute", "--state", "cat", "--state-args", "alpha0=1", "--dist", "s-ordered", "--s", "-1",
                      "--grid", "n=33,qmin=-8,qmax=8", "--dim", "32", "--out", out, "--check"});
  CHECK(r.code == cli::kExitOk);
  CHECK(read_qpsf(fs::path(out)).tag().kind == DistributionKind::s_ordered);
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == cli::kExitUsage);
  CHECK(run({"compute", "--state", "coherent", "--dist", "kr"}).code == cli::kExitUsage);  // no --out
  CHECK(run({"compute", "--state", "coherent", "--dist", "kr", "--bogus", "--check"}).code == cli::kExitUsage);
  CHECK(run({"compute", "--state", "coherent", "--dist", "s-ordered", "--s", "1", "--check"}).code == cli::kExitUsage);
  CHECK(run({"compute", "--state", "fock", "--state-args", "n=3", "--dist", "kr", "--grid", "n=512,qmin=-12,qmax=12,pmin=-2",
             "--check"})
            .code == cli::kExitUsage);
  CHECK(run({"compute", "--state", "coherent", "--state-args", "alpha0=10", "--dist", "kr", "--check"}).code ==
        cli::kExitTruncation);
  CHECK(run({"render", "--in", dir() + "/missing.qpsf", "--out", dir() + "/x.pgm"}).code == cli::kExitUsage);
  // a Fock-engine window too small to hold the state fails the normalization check
  CHECK(run({"compute", "--state", "coherent", "--state-args", "alpha0=1", "--dist", "wigner", "--engine", "fock",
             "--grid", "n=11,qmin=-2,qmax=2", "--dim", "32", "--check"})
            .code == cli::kExitDiagnostics);
}

TEST_CASE("evolve writes frames that pass the two-path check") {
  const std::string out = dir() + "/frames";
  const auto r = run({"evolve", "--state", "coherent", "--state-args", "alpha0_im=0.5", "--grid", "n=128,qmin=-10,qmax=10",
                      "--t", "1", "--frames", "3", "--out-dir", out});
  CHECK(r.code == cli::kExitOk);
  CHECK(fs::exists(out + "/frame_002.qpsf"));
  CHECK(r.out.find("PASS two-path") != std::string::npos);
}

TEST_CASE("reconstruct and render from files") {
  const std::string field = dir() + "/vac.qpsf";
  REQUIRE(run({"compute", "--state", "fock", "--state-args", "n=1", "--dist", "kr", "--engine", "fock", "--grid",
               "n=81,qmin=-5.657,qmax=5.657", "--dim", "32", "--out", field})
              .code == cli::kExitOk);
  const auto r = run({"reconstruct", "--in", field, "--dim", "16", "--out", dir() + "/rho.csv", "--truth", "fock:n=1"});
  CHECK(r.code == cli::kExitOk);
  const auto pos = r.out.find("fidelity ");
  REQUIRE(pos != std::string::npos);
  CHECK(std::stod(r.out.substr(pos + 9)) > 0.995);

  CHECK(run({"render", "--in", field, "--part", "re", "--out", dir() + "/f1.pgm"}).code == cli::kExitOk);
  CHECK(fs::exists(dir() + "/f1.pgm.range.txt"));
  CHECK(run({"render", "--in", field, "--mode", "contour-data", "--out", dir() + "/f1.csv"}).code == cli::kExitOk);
  CHECK(run({"render", "--in", field, "--mode", "svg", "--out", dir() + "/f1.svg"}).code == cli::kExitUsage);
  CHECK(run({"reconstruct", "--in", field, "--dim", "16", "--out", dir() + "/r.csv", "--path", "sideways"}).code ==
        cli::kExitUsage);
}
