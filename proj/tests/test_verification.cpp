#include <doctest.h>

#include "cqed/verification.hpp"

using namespace cqed;

namespace {

bool all_pass(const std::vector<Check>& checks) {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

const Check& find(const std::vector<Check>& checks, const std::string& prefix) {
  for (const auto& c : checks)
    if (c.name.rfind(prefix, 0) == 0) return c;
  FAIL("no check named " << prefix);
  return checks.front();
}

}  // namespace

TEST_CASE("default verification passes") {
  VerifyOptions opt;
  opt.draws = 20;
  const auto checks = run_verification(opt);
  CHECK(checks.size() == 10);
  for (const auto& c : checks) {
    CAPTURE(c.name);
    CAPTURE(c.detail);
    CHECK(c.passed);
  }
}

TEST_CASE("verification still passes at 1e-7") {
  VerifyOptions opt;
  opt.draws = 20;
  opt.tolerance = 1e-7;
  CHECK(all_pass(run_verification(opt)));
}

TEST_CASE("a sign error in the effective Hamiltonian is caught") {
  VerifyOptions opt;
  opt.draws = 20;
  opt.stage_a_effective = [](const HilbertSpace& s, const PhysicalParams& p) {
    Matrix h = Matrix::Zero(static_cast<Eigen::Index>(s.dim()), static_cast<Eigen::Index>(s.dim()));
    for (const auto& term : stage_a_effective_terms(s, p)) {
      h += term.description.rfind("cross-mode", 0) == 0 ? Matrix(-term.matrix) : term.matrix;
    }
    return h;
  };
  const auto checks = run_verification(opt);
  CHECK_FALSE(find(checks, "oracle: stage A").passed);
  CHECK_FALSE(find(checks, "second-order").passed);
  CHECK(find(checks, "oracle: stage B qubit").passed);
}

TEST_CASE("oracle draws are reproducible") {
  const auto a = oracle_draws(5, 42), b = oracle_draws(5, 42);
  REQUIRE(a.size() == 5);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].params.delta == b[i].params.delta);
    CHECK(a[i].t_a == b[i].t_a);
    CHECK(a[i].params.delta >= 5.0);
    CHECK(a[i].params.delta <= 100.0);
  }
  CHECK(oracle_draws(5, 43)[0].t_a != a[0].t_a);
}
