#include "qgs/json_io.hpp"

#include <charconv>

namespace qgs {

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string format_complex(Complex v) {
  if (v.imag() == 0.0) return format_double(v.real());
  std::string s = format_double(v.real());
  s += (v.imag() < 0.0) ? "-" : "+";
  s += format_double(std::abs(v.imag()));
  s += "i";
  return s;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

namespace {

Json complex_to_json(Complex v) { return Json::array({v.real(), v.imag()}); }

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2)
    return Complex(j.at(0).get<double>(), j.at(1).get<double>());
  throw Error("expected a complex value as [re, im]");
}

Json matrix_to_json(const Eigen::MatrixXcd& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXcd matrix_from_json(const Json& j) {
  if (!j.is_array()) throw Error("expected a matrix as an array of rows");
  const Eigen::Index nr = Eigen::Index(j.size());
  Eigen::Index nc = 0;
  if (nr > 0) nc = Eigen::Index(j.at(0).size());
  Eigen::MatrixXcd m(nr, nc);
  for (Eigen::Index r = 0; r < nr; ++r) {
    const Json& row = j.at(r);
    if (Eigen::Index(row.size()) != nc) throw Error("ragged matrix rows");
    for (Eigen::Index c = 0; c < nc; ++c) m(r, c) = complex_from_json(row.at(c));
  }
  return m;
}

}  // namespace

Json to_json(const GpiCouplingA& c) {
  return Json{{"alpha", c.alpha}, {"beta", c.beta}, {"gamma", complex_to_json(c.gamma)}};
}

GpiCouplingA coupling_from_json(const Json& j) {
  GpiCouplingA c;
  c.alpha = j.at("alpha").get<double>();
  c.beta = j.at("beta").get<double>();
  c.gamma = complex_from_json(j.at("gamma"));
  return c;
}

Json to_json(const RadialTreeSpec& spec) {
  Json gens = Json::array();
  for (const Generation& g : spec.generations) {
    Json gj{{"b", g.b},
            {"t", g.t},
            {"alpha_t", g.coupling.alpha_t},
            {"beta_t", g.coupling.beta_t},
            {"gamma_t", complex_to_json(g.coupling.gamma_t)}};
    gj["U"] = matrix_to_json(g.coupling.U);
    gj["V"] = matrix_to_json(g.coupling.V);
    gens.push_back(std::move(gj));
  }
  return Json{{"theta0", spec.theta0}, {"generations", std::move(gens)}};
}

RadialTreeSpec tree_from_json(const Json& j) {
  RadialTreeSpec spec;
  spec.theta0 = j.at("theta0").get<double>();
  for (const Json& gj : j.at("generations")) {
    Generation g;
    g.b = gj.at("b").get<int>();
    g.t = gj.at("t").get<double>();
    g.coupling.alpha_t = gj.at("alpha_t").get<double>();
    g.coupling.beta_t = gj.at("beta_t").get<double>();
    g.coupling.gamma_t = complex_from_json(gj.at("gamma_t"));
    g.coupling.U = gj.contains("U") ? matrix_from_json(gj.at("U")) : kirchhoff_u(g.b);
    g.coupling.V = gj.contains("V") ? matrix_from_json(gj.at("V")) : canonical_v(g.b);
    spec.generations.push_back(std::move(g));
  }
  return spec;
}

namespace {

Json halfline_coupling_to_json(const HalflineCoupling& c) {
  if (const auto* g = std::get_if<GpiCouplingA>(&c)) {
    Json j = to_json(*g);
    j["kind"] = "gpi";
    return j;
  }
  if (std::holds_alternative<DirichletBoth>(c)) return Json{{"kind", "dirichlet"}};
  if (std::holds_alternative<NeumannBoth>(c)) return Json{{"kind", "neumann"}};
  if (const auto* sb = std::get_if<SpecialBeta>(&c))
    return Json{{"kind", "special_beta"}, {"beta_t", sb->beta_t}, {"b", sb->b}};
  const auto& sa = std::get<SpecialAlpha>(c);
  return Json{{"kind", "special_alpha"}, {"alpha_t", sa.alpha_t}, {"b", sa.b}};
}

HalflineCoupling halfline_coupling_from_json(const Json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "gpi") return coupling_from_json(j);
  if (kind == "dirichlet") return DirichletBoth{};
  if (kind == "neumann") return NeumannBoth{};
  if (kind == "special_beta")
    return SpecialBeta{j.at("beta_t").get<double>(), j.at("b").get<int>()};
  if (kind == "special_alpha")
    return SpecialAlpha{j.at("alpha_t").get<double>(), j.at("b").get<int>()};
  throw Error("unknown halfline coupling kind: " + kind);
}

}  // namespace

Json to_json(const HalflineProblem& p) {
  Json pts = Json::array();
  for (const CouplingPoint& cp : p.points) {
    Json pj = halfline_coupling_to_json(cp.coupling);
    Json entry{{"t", cp.t}, {"coupling", std::move(pj)}};
    pts.push_back(std::move(entry));
  }
  return Json{{"generation", p.generation},
              {"s", p.s_index},
              {"start", p.start},
              {"root", Json{{"theta", p.root_bc.theta}}},
              {"multiplicity", p.multiplicity},
              {"points", std::move(pts)}};
}

HalflineProblem problem_from_json(const Json& j) {
  HalflineProblem p;
  p.generation = j.value("generation", 0);
  p.s_index = j.value("s", 0);
  p.start = j.at("start").get<double>();
  p.root_bc = RootCondition{j.at("root").at("theta").get<double>()};
  p.multiplicity = j.value("multiplicity", 1L);
  if (j.contains("points"))
    for (const Json& pj : j.at("points"))
      p.points.push_back(
          {pj.at("t").get<double>(), halfline_coupling_from_json(pj.at("coupling"))});
  return p;
}

Json decomposition_to_json(const std::vector<HalflineProblem>& problems) {
  Json arr = Json::array();
  for (const HalflineProblem& p : problems) arr.push_back(to_json(p));
  return Json{{"problems", std::move(arr)}};
}

Json to_json(const GpiMeasureSet& s) {
  Json atoms = Json::array();
  for (const GpiMeasureAtom& a : s.atoms)
    atoms.push_back(Json{{"t", a.t}, {"weights", a.weights}});
  return Json{{"regime", s.regime}, {"atoms", std::move(atoms)}};
}

GpiMeasureSet measures_from_json(const Json& j) {
  GpiMeasureSet s;
  s.regime = j.at("regime").get<int>();
  if (s.regime != 2 && s.regime != 3)
    throw RegimeMismatch("measure set regime must be 2 or 3");
  for (const Json& aj : j.at("atoms")) {
    GpiMeasureAtom a;
    a.t = aj.at("t").get<double>();
    a.weights = aj.at("weights").get<std::vector<double>>();
    if (int(a.weights.size()) != s.regime)
      throw RegimeMismatch("atom weight count does not match the regime");
    s.atoms.push_back(std::move(a));
  }
  return s;
}

Json to_json(const MainTheoremReport& r) {
  Json checks = Json::array();
  for (const GenerationCheck& c : r.checks) {
    checks.push_back(Json{{"n", c.n},
                          {"iii", c.cond_iii},
                          {"iv", c.cond_iv},
                          {"nonseparating_expr", c.nonseparating_expr},
                          {"reduction_denominator_nonzero", c.reduction_denominator_nonzero},
                          {"denominator_bounded", c.denominator_bounded},
                          {"reduced_det_bounded", c.reduced_det_bounded},
                          {"c_magnitude_bound", c.c_magnitude_bound},
                          {"va", c.cond_va},
                          {"vb_alpha_pos", c.vb_alpha_pos},
                          {"vb_alpha_neg", c.vb_alpha_neg},
                          {"vb_beta_pos", c.vb_beta_pos},
                          {"vb_beta_neg", c.vb_beta_neg},
                          {"alpha_h_rhs", c.alpha_h_rhs},
                          {"beta_h_rhs", c.beta_h_rhs}});
  }
  return Json{{"K", r.k_bound},
              {"N", r.n_start},
              {"delta", r.delta},
              {"sparsity_proxy", r.sparsity_proxy},
              {"positive_min_gap", r.positive_min_gap},
              {"min_gap", r.min_gap},
              {"max_gap", r.max_gap},
              {"generations", std::move(checks)},
              {"verdict", r.empty_ac_predicted ? "EmptyAcPredicted" : "HypothesesFail"},
              {"failures", r.failures}};
}

Json to_json(const ValidationReport& r) {
  Json issues = Json::array();
  for (const ValidationIssue& i : r.issues)
    issues.push_back(Json{{"where", i.where}, {"message", i.message}});
  return Json{{"valid", r.ok()}, {"issues", std::move(issues)}};
}

}  // namespace qgs
