#include "doctest.h"
#include "qpsf/diagnostics.hpp"
#include "qpsf/distributions.hpp"
#include "qpsf/states.hpp"
#include "support.hpp"

using namespace qpsf;

TEST_CASE("marginal and K-R identity checks pass on a cat state") {
  const auto g = testing::reference_grid();
  const auto psi = cat_wave({{2.0, 0.5}}, g);
  const auto pg = PhaseGrid::conjugate(g);
  for (const auto& field : {wigner(psi, pg), kirkwood_rihaczek(psi, pg), sigma_kirkwood_rihaczek(psi, 2.0, pg)}) {
    const auto m = check_marginals(field, psi);
    CHECK(all_passed(m));
  }
  const auto ids = check_kr_identities(psi, pg);
  CHECK(all_passed(ids));
  CHECK(ids[1].expected == doctest::Approx(1.0 / (2.0 * kPi)));
}

TEST_CASE("a kernel with Phi(q', 0) != 1 breaks only the momentum marginal") {
  const auto g = testing::reference_grid();
  const auto psi = coherent_wave({{1.0, 1.0}}, g);
  const CohenKernel corrupted("corrupt", [](double ql, double pl, double) {
    return pl == 0.0 && ql != 0.0 ? complex{1.1} : complex{1.0};
  });
  const auto field = cohen(psi, corrupted, PhaseGrid::conjugate(g), KernelCheck::skip);
  const auto m = check_marginals(field, psi);
  CHECK(m[0].passed);
  CHECK_FALSE(m[1].passed);
  CHECK(m[1].measured > 1e-3);
}

TEST_CASE("reality check distinguishes real and complex kinds") {
  const auto g = testing::reference_grid();
  const auto psi = cat_wave({{2.0, 0.0}}, g);
  const auto pg = PhaseGrid::conjugate(g);
  const auto w = check_reality_wigner(wigner(psi, pg));
  CHECK(w.name == "wigner-reality");
  CHECK(w.passed);
  const auto s0 = check_reality_wigner(sigma_kirkwood_rihaczek(psi, 0.0, pg));
  CHECK(s0.name == "wigner-reality");
  CHECK(s0.passed);
  const auto k = check_reality_wigner(kirkwood_rihaczek(psi, pg));
  CHECK(k.name == "complex-part");
  CHECK(k.passed);
  CHECK(k.measured > tolerance::significant_imaginary);
  CHECK(k.context.find("significant") != std::string::npos);

  // corrupt a Wigner field's imaginary part
  auto bad = wigner(psi, pg);
  bad.values()[1000] += complex{0.0, 1e-6};
  CHECK_FALSE(check_reality_wigner(bad).passed);
}

TEST_CASE("report formatting") {
  const auto ok = make_report("demo", 1.0e-7, 0.0, 1e-6, "ctx");
  const auto bad = make_report("demo", 2.0, 1.0, 0.5);
  CHECK(ok.passed);
  CHECK_FALSE(bad.passed);
  CHECK(to_text(ok).rfind("PASS demo", 0) == 0);
  CHECK(to_text(ok).find("[ctx]") != std::string::npos);
  CHECK(to_text(bad).rfind("FAIL demo", 0) == 0);
  CHECK(csv_header() == "name,measured,expected,tolerance,pass");
  CHECK(to_csv_row(bad) == "demo,2,1,0.5,0");
  const std::vector<CheckReport> both{ok, bad};
  CHECK_FALSE(all_passed(both));
  CHECK(to_csv(both).find("demo,2,1,0.5,0\n") != std::string::npos);
}
