#include <doctest.h>

#include "qgs/builtin.hpp"
#include "qgs/json_io.hpp"
#include "test_util.hpp"

using namespace qgs;

TEST_SUITE("io") {

TEST_CASE("double formatting round-trips and is shortest") {
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(-1.0) == "-1");
  CHECK(format_double(0.1) == "0.1");
  for (double v : {1.0 / 3.0, M_PI, 1e-300, 123456.789}) {
    CHECK(std::stod(format_double(v)) == v);
  }
  CHECK(format_complex(Complex(0.5, 0.0)) == "0.5");
  CHECK(format_complex(Complex(0.0, -0.25)) == "0-0.25i");
}

TEST_CASE("coupling JSON round trip") {
  const GpiCouplingA c{0.7, -1.2, Complex(0.3, -0.4)};
  const GpiCouplingA back = coupling_from_json(to_json(c));
  CHECK(back.alpha == c.alpha);
  CHECK(back.beta == c.beta);
  CHECK(back.gamma == c.gamma);
  // scalar gamma accepted as a plain number
  const GpiCouplingA fromnum = coupling_from_json(
      Json{{"alpha", 0.0}, {"beta", 2.0}, {"gamma", 0.0}});
  CHECK(fromnum.gamma == Complex(0.0, 0.0));
}

TEST_CASE("tree spec JSON round trip preserves every matrix entry") {
  const RadialTreeSpec tree = example_two_generation_tree();
  const RadialTreeSpec back = tree_from_json(to_json(tree));
  CHECK(back.theta0 == tree.theta0);
  REQUIRE(back.generations.size() == tree.generations.size());
  for (std::size_t i = 0; i < tree.generations.size(); ++i) {
    const Generation& a = tree.generations[i];
    const Generation& b = back.generations[i];
    CHECK(a.b == b.b);
    CHECK(a.t == b.t);
    CHECK(a.coupling.alpha_t == b.coupling.alpha_t);
    CHECK(a.coupling.beta_t == b.coupling.beta_t);
    CHECK(a.coupling.gamma_t == b.coupling.gamma_t);
    CHECK((a.coupling.U - b.coupling.U).cwiseAbs().maxCoeff() == 0.0);
    CHECK((a.coupling.V - b.coupling.V).cwiseAbs().maxCoeff() == 0.0);
  }
  // defaults: U omitted -> -I, V omitted -> canonical
  const Json minimal = Json{
      {"theta0", 0.0},
      {"generations", Json::array({Json{{"b", 3},
                                        {"t", 1.0},
                                        {"alpha_t", 0.0},
                                        {"beta_t", 0.0},
                                        {"gamma_t", Json::array({0.0, 0.0})}}})}};
  const RadialTreeSpec min_tree = tree_from_json(minimal);
  CHECK((min_tree.generations[0].coupling.U + Eigen::MatrixXcd::Identity(2, 2))
            .cwiseAbs()
            .maxCoeff() == 0.0);
  CHECK(validate_tree(min_tree).ok());
}

TEST_CASE("decomposition JSON round trip") {
  const auto problems = decompose(example_two_generation_tree(), 2);
  const Json j = decomposition_to_json(problems);
  REQUIRE(j.at("problems").size() == problems.size());
  for (std::size_t i = 0; i < problems.size(); ++i) {
    const HalflineProblem back = problem_from_json(j.at("problems")[i]);
    CHECK(back.start == problems[i].start);
    CHECK(back.root_bc.theta == problems[i].root_bc.theta);
    CHECK(back.multiplicity == problems[i].multiplicity);
    REQUIRE(back.points.size() == problems[i].points.size());
    for (std::size_t k = 0; k < back.points.size(); ++k) {
      CHECK(back.points[k].t == problems[i].points[k].t);
      CHECK(back.points[k].coupling.index() == problems[i].points[k].coupling.index());
    }
  }
}

TEST_CASE("special couplings in problem JSON") {
  HalflineProblem p;
  p.start = 2.0;
  p.root_bc = RootCondition{0.3};
  p.points.push_back({3.0, SpecialBeta{2.0, 4}});
  p.points.push_back({4.0, SpecialAlpha{-1.0, 9}});
  p.points.push_back({5.0, DirichletBoth{}});
  p.points.push_back({6.0, NeumannBoth{}});
  const HalflineProblem back = problem_from_json(to_json(p));
  REQUIRE(back.points.size() == 4);
  const auto* sb = std::get_if<SpecialBeta>(&back.points[0].coupling);
  REQUIRE(sb != nullptr);
  CHECK(sb->beta_t == 2.0);
  CHECK(sb->b == 4);
  const auto* sa = std::get_if<SpecialAlpha>(&back.points[1].coupling);
  REQUIRE(sa != nullptr);
  CHECK(sa->alpha_t == -1.0);
  CHECK(std::holds_alternative<DirichletBoth>(back.points[2].coupling));
  CHECK(std::holds_alternative<NeumannBoth>(back.points[3].coupling));
}

TEST_CASE("measure set JSON") {
  GpiMeasureSet s;
  s.regime = 2;
  s.atoms.push_back({1.5, {0.25, -0.5}});
  const GpiMeasureSet back = measures_from_json(to_json(s));
  CHECK(back.regime == 2);
  REQUIRE(back.atoms.size() == 1);
  CHECK(back.atoms[0].t == 1.5);
  CHECK(back.atoms[0].weights == std::vector<double>{0.25, -0.5});
  Json bad = to_json(s);
  bad["atoms"][0]["weights"] = Json::array({1.0});
  CHECK_THROWS_AS(measures_from_json(bad), RegimeMismatch);
}

}  // TEST_SUITE
