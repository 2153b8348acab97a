#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "simred/catalog.hpp"

using namespace simred;

TEST_CASE("potential filter selects exactly the X6 generator") {
  EntryFilter pot_only;
  pot_only.kind = "potential";
  auto entries = Catalog::get().list_entries(pot_only);
  REQUIRE(entries.size() == 1);
  CHECK(entries[0].id == "x6");
}

TEST_CASE("full listing covers the whole transcription") {
  auto entries = Catalog::get().list_entries();
  CHECK(entries.size() >= 14);
  // 13 generators + 6 solution families
  CHECK(entries.size() == 19);
  CHECK(std::is_sorted(entries.begin(), entries.end(),
                       [](const EntrySummary& a, const EntrySummary& b) { return a.id < b.id; }));
  int solutions = 0;
  for (const auto& e : entries)
    if (e.kind == "solution") ++solutions;
  CHECK(solutions == 6);
}

TEST_CASE("nonclassical entries exist only on the n = 1/2 branch") {
  EntryFilter f;
  f.kind = "nonclassical";
  f.n = Rational(3);
  CHECK(Catalog::get().list_entries(f).empty());
  f.n = Rational(1, 2);
  CHECK(Catalog::get().list_entries(f).size() == 3);
}

TEST_CASE("steady potential-invariant solution evaluates to the stated values") {
  const auto& s = Catalog::get().solution("trivial-potential");
  SolutionInstance inst = instantiate(s, std::nullopt, {{"C1", 2.0}}, Region{1, 5, 0, 2});
  // u(4, t) = 2 / (2 * 4^{3/2}) = 1/8 and u_t = 0
  Jet2 u = inst.eval(4.0, 0.7);
  CHECK(u.v == doctest::Approx(1.0 / 8.0));
  CHECK(u.vt == doctest::Approx(0.0));
}

TEST_CASE("kink-square solution at the kink zero reduces to the shift term") {
  const auto& s = Catalog::get().solution("nc-c2-solution");
  // with k2 = 0 the kink vanishes at z = x - kt = 0, so u = (0 - 1/(k(x+l)))^2
  SolutionInstance inst = instantiate(s, std::nullopt, {{"k", 1.0}, {"k2", 0.0}},
                                      Region{1.0, 4.0, 0.0, 4.0});
  double x = 2.0, t = 2.0;  // z = 0
  Jet2 u = inst.eval(x, t);
  CHECK(u.v == doctest::Approx(std::pow(1.0 / (1.0 * x), 2)).epsilon(1e-14));
}

TEST_CASE("exponential row-2 solution meets the residual oracle on a 5x5 grid") {
  const auto& s = Catalog::get().solution("i2-exponential");
  SolutionInstance inst = instantiate(s);
  double worst = 0;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      double x = 1.0 + 0.25 * i, t = 0.25 * j;
      worst = std::max(worst, std::abs(pde_residual(inst.params, x, inst.eval(x, t))));
    }
  CHECK(worst <= 1e-9);
}

TEST_CASE("generator evaluations match hand values") {
  const auto& cat = Catalog::get();
  PdeParams p2(Rational(2), 0.0, 0.0);

  Infinitesimals v2 = eval_generator(cat.generator("v2"), p2, 1.0, 3.0, 0.5);
  CHECK(v2.p == doctest::Approx(1.0));
  CHECK(v2.q == doctest::Approx(6.0));
  CHECK(v2.r == doctest::Approx(0.0));

  Infinitesimals v1 = eval_generator(cat.generator("v1"), p2, 0.3, 0.9, 2.0);
  CHECK(v1.p == 0.0);
  CHECK(v1.q == 1.0);
  CHECK(v1.r == 0.0);

  PdeParams px6(Rational(-1), -0.5, 0.0);
  Infinitesimals x6 = eval_generator(cat.generator("x6"), px6, 1.0, 0.0, 1.0, 1.0);
  CHECK(x6.p == doctest::Approx(2.0));
  CHECK(x6.q == doctest::Approx(0.0));
  CHECK(x6.r == doctest::Approx(-4.0));
  REQUIRE(x6.s.has_value());
  CHECK(*x6.s == doctest::Approx(1.0));
}

TEST_CASE("nonclassical infinitesimals keep q normalized to one") {
  const auto& cat = Catalog::get();
  for (const char* id : {"nc-c2-gen", "nc-c53-gen", "nc-cm1-gen"}) {
    const GeneratorSpec& g = cat.generator(id);
    PdeParams p(Rational(1, 2), *g.constraint.C_equals, 0.0);
    CHECK(eval_generator(g, p, 1.3, 0.4, 0.8).q == 1.0);
  }
}

TEST_CASE("x5 infinitesimals carry the u factor of the fourth classical generator") {
  // x5 is a scaling of v4p: r/p must equal -2u/((n+1)(x+l)^{C-1}) for both
  PdeParams p(Rational(2), 7.0 / 3.0, 0.0);
  const auto& cat = Catalog::get();
  double x = 1.7, u = 0.9;
  Infinitesimals x5 = eval_generator(cat.generator("x5"), p, x, 0.0, u);
  Infinitesimals v4 = eval_generator(cat.generator("v4p"), p, x, 0.0, u);
  CHECK(x5.r / x5.p == doctest::Approx(v4.r / v4.p).epsilon(1e-13));
  // both ratios reduce to -2u/((n+1)(x+l))
  CHECK(x5.r / x5.p == doctest::Approx(-2.0 * u / (3.0 * x)));
}

TEST_CASE("potential generators demand the potential value") {
  PdeParams p(Rational(-1), -0.5, 0.0);
  CHECK_THROWS_AS((void)eval_generator(Catalog::get().generator("x6"), p, 1.0, 0.0, 1.0), Error);
}

TEST_CASE("parameter validation per entry") {
  const auto& cat = Catalog::get();
  // x5 with n=2 is admissible only at C = 7/3
  CHECK(validate_entry(cat.generator("x5"), PdeParams(Rational(2), 7.0 / 3.0, 0.0)).empty());
  CHECK_FALSE(validate_entry(cat.generator("x5"), PdeParams(Rational(2), 2.0, 0.0)).empty());
  // x6 pins n = -1, C = -1/2
  CHECK(validate_entry(cat.generator("x6"), PdeParams(Rational(-1), -0.5, 0.0)).empty());
  auto viol = validate_entry(cat.generator("x6"), PdeParams(Rational(2), -0.5, 0.0));
  REQUIRE_FALSE(viol.empty());
  CHECK(viol[0].find("n = -1") != std::string::npos);
}

TEST_CASE("every catalog solution is verified against the residual oracle") {
  for (const auto& s : Catalog::get().solutions()) {
    INFO(s.id);
    CHECK(s.verified_against_pde);
  }
}

TEST_CASE("inadmissible constants are rejected") {
  const auto& s = Catalog::get().solution("nc-c2-solution");
  CHECK_THROWS_AS((void)instantiate(s, std::nullopt, {{"k3", 0.0}}), Error);
  // requesting the tanh branch with k*k3 < 0 is inadmissible
  SolutionInstance inst = instantiate(s, std::nullopt, {{"k3", -1.0}, {"branch", 1.0}},
                                      Region{3, 4, 0, 0.5});
  CHECK_THROWS_AS((void)inst.eval(3.5, 0.1), Error);
  // without the branch request the same constants select the tan branch
  SolutionInstance tan_inst = instantiate(s, std::nullopt, {{"k3", -1.0}}, Region{3, 4, 0, 0.1});
  CHECK_NOTHROW((void)tan_inst.eval(3.1, 0.05));
}

TEST_CASE("tan-branch instance also satisfies the residual oracle") {
  const auto& s = Catalog::get().solution("nc-c2-solution");
  PdeParams p(Rational(1, 2), 2.0, 4.0);
  SolutionInstance inst =
      instantiate(s, p, {{"k", 1.0}, {"k2", -0.9}, {"k3", -1.0}}, Region{0.0, 0.4, 0.0, 0.3});
  GridMax m = max_abs_residual_on_grid(inst.params, inst.field(), inst.domain, 25, 25);
  CHECK(m.max_abs <= 1e-9);
}

TEST_CASE("json export carries ids, provenance, constraints and domains") {
  auto j = Catalog::get().to_json();
  CHECK(j.is_array());
  CHECK(j.size() == 19);
  bool saw_x6 = false, saw_dipole = false;
  for (const auto& e : j) {
    CHECK(e.contains("id"));
    CHECK(e.contains("provenance"));
    CHECK(e.contains("constraints"));
    if (e["id"] == "x6") {
      saw_x6 = true;
      CHECK(e["kind"] == "potential");
    }
    if (e["id"] == "dipole") {
      saw_dipole = true;
      CHECK(e.contains("domain"));
      CHECK(e["verified_against_pde"] == true);
    }
  }
  CHECK(saw_x6);
  CHECK(saw_dipole);
}

TEST_CASE("constant reference solution") {
  SolutionSpec c = constant_solution_spec(1.5);
  SolutionInstance inst = instantiate(c, PdeParams(Rational(2), 1.0, 0.0));
  CHECK(inst.eval(1.2, 0.3).v == doctest::Approx(1.5));
  CHECK(std::abs(pde_residual(inst.params, 1.2, inst.eval(1.2, 0.3))) == 0.0);
}
