// qgs: conversions, reductions and spectral scans for Schroedinger operators
// on radial trees with generalized point interactions.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "qgs/ac.hpp"
#include "qgs/builtin.hpp"
#include "qgs/coupling.hpp"
#include "qgs/json_io.hpp"
#include "qgs/reduction.hpp"
#include "qgs/spectral.hpp"
#include "qgs/tree_spectrum.hpp"

namespace {

using qgs::Json;

constexpr int kExitOk = 0;
constexpr int kExitNumeric = 1;
constexpr int kExitValidation = 2;

struct ValidationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationFailure("cannot open input file: " + path);
  try {
    Json j;
    in >> j;
    return j;
  } catch (const std::exception& e) {
    throw ValidationFailure("malformed JSON in " + path + ": " + e.what());
  }
}

qgs::RadialTreeSpec load_tree(const std::string& path) {
  qgs::RadialTreeSpec spec;
  try {
    spec = qgs::tree_from_json(load_json(path));
  } catch (const ValidationFailure&) {
    throw;
  } catch (const std::exception& e) {
    throw ValidationFailure(std::string("tree spec does not match the schema: ") + e.what());
  }
  const qgs::ValidationReport rep = qgs::validate_tree(spec);
  if (!rep.ok()) {
    std::ostringstream os;
    os << "invalid tree spec:";
    for (const auto& issue : rep.issues)
      os << "\n  " << issue.where << ": " << issue.message;
    throw ValidationFailure(os.str());
  }
  return spec;
}

qgs::HalflineProblem load_problem(const std::string& path) {
  try {
    return qgs::problem_from_json(load_json(path));
  } catch (const ValidationFailure&) {
    throw;
  } catch (const std::exception& e) {
    throw ValidationFailure(std::string("problem does not match the schema: ") + e.what());
  }
}

void write_output(const std::string& path, const std::string& payload) {
  if (path.empty() || path == "-") {
    std::cout << payload;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationFailure("cannot open output file: " + path);
  out << payload;
}

std::string csv_row(std::initializer_list<std::string> cells) {
  std::string row;
  bool first = true;
  for (const std::string& c : cells) {
    if (!first) row += ",";
    row += c;
    first = false;
  }
  row += "\n";
  return row;
}

std::vector<double> make_grid(double lo, double hi, int n) {
  std::vector<double> grid;
  if (n < 1) n = 1;
  if (n == 1) {
    grid.push_back(lo);
    return grid;
  }
  for (int i = 0; i < n; ++i) grid.push_back(lo + (hi - lo) * double(i) / double(n - 1));
  return grid;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"computations with Schroedinger operators on radial tree graphs "
               "with generalized point interactions"};
  app.require_subcommand(1);

  // convert ------------------------------------------------------------
  auto* convert = app.add_subcommand("convert", "convert a GPI coupling between parametrizations");
  double cv_alpha = 0.0, cv_beta = 0.0, cv_gamma_re = 0.0, cv_gamma_im = 0.0;
  std::string cv_to = "b";
  convert->add_option("--alpha", cv_alpha, "matrix-form alpha");
  convert->add_option("--beta", cv_beta, "matrix-form beta");
  convert->add_option("--gamma", cv_gamma_re, "Re gamma");
  convert->add_option("--gamma-im", cv_gamma_im, "Im gamma");
  convert->add_option("--to", cv_to, "target form: b | unitary | class | jump")
      ->check(CLI::IsMember({"b", "unitary", "class", "jump"}));

  // validate -----------------------------------------------------------
  auto* validate = app.add_subcommand("validate", "validate a radial tree spec");
  std::string va_tree;
  validate->add_option("--tree", va_tree, "tree spec JSON")->required();

  // reduce -------------------------------------------------------------
  auto* reduce = app.add_subcommand("reduce", "decompose a tree into halfline problems");
  std::string rd_tree, rd_out;
  int rd_maxgen = -1;
  std::string rd_trunc = "free";
  reduce->add_option("--tree", rd_tree, "tree spec JSON")->required();
  reduce->add_option("--max-generation", rd_maxgen, "last generation to include (default: all)");
  reduce->add_option("--truncation", rd_trunc, "couplings beyond max-generation: free | dirichlet")
      ->check(CLI::IsMember({"free", "dirichlet"}));
  reduce->add_option("--out", rd_out, "output path (default: stdout)");

  // mfun ---------------------------------------------------------------
  auto* mfun = app.add_subcommand("mfun", "Weyl m-function of a halfline problem");
  std::string mf_problem, mf_out;
  double mf_t = -1.0;
  std::optional<double> mf_kappa, mf_energy;
  double mf_eta = 1e-6;
  double mf_emin = 0.5, mf_emax = 10.0;
  int mf_grid = 0;
  bool mf_series = false;
  mfun->add_option("--problem", mf_problem, "halfline problem JSON")->required();
  mfun->add_option("--t", mf_t, "evaluation point (default: problem start)");
  mfun->add_option("--kappa", mf_kappa, "evaluate at z = -kappa^2");
  mfun->add_option("--energy", mf_energy, "evaluate at z = E + i eta");
  mfun->add_option("--eta", mf_eta, "imaginary shift for boundary values");
  mfun->add_option("--e-min", mf_emin, "grid start (with --grid)");
  mfun->add_option("--e-max", mf_emax, "grid end (with --grid)");
  mfun->add_option("--grid", mf_grid, "emit CSV over an energy grid of this size");
  mfun->add_flag("--series", mf_series, "use the resolvent-series route (GPI points only)");
  mfun->add_option("--out", mf_out, "output path (default: stdout)");

  // eig ----------------------------------------------------------------
  auto* eig = app.add_subcommand("eig", "truncated eigenvalues");
  std::string eg_problem, eg_tree, eg_out, eg_cutoff_bc = "dirichlet";
  double eg_cutoff = 0.0, eg_emin = 1e-6, eg_emax = 100.0;
  int eg_grid = 4000;
  bool eg_compare = false;
  eig->add_option("--problem", eg_problem, "halfline problem JSON");
  eig->add_option("--tree", eg_tree, "tree spec JSON (decomposed union)");
  eig->add_flag("--compare", eg_compare,
                "with --tree: also solve the tree edge by edge and report the mismatch");
  eig->add_option("--cutoff", eg_cutoff, "truncation point")->required();
  eig->add_option("--cutoff-bc", eg_cutoff_bc, "dirichlet | neumann")
      ->check(CLI::IsMember({"dirichlet", "neumann"}));
  eig->add_option("--e-min", eg_emin, "window start");
  eig->add_option("--e-max", eg_emax, "window end");
  eig->add_option("--grid", eg_grid, "bisection panels");
  eig->add_option("--out", eg_out, "output path (default: stdout)");

  // scan ----------------------------------------------------------------
  auto* scan = app.add_subcommand("scan", "transfer growth / reflectionless scan");
  std::string sc_problem, sc_out;
  double sc_emin = 0.5, sc_emax = 10.0, sc_eta = 1e-6, sc_bound = 10.0;
  int sc_grid = 20;
  scan->add_option("--problem", sc_problem, "halfline problem JSON")->required();
  scan->add_option("--e-min", sc_emin, "grid start");
  scan->add_option("--e-max", sc_emax, "grid end");
  scan->add_option("--grid", sc_grid, "number of grid energies");
  scan->add_option("--eta", sc_eta, "imaginary shift for boundary values");
  scan->add_option("--bound", sc_bound, "ac-candidate growth bound");
  scan->add_option("--out", sc_out, "output path (default: stdout)");

  // distance -----------------------------------------------------------
  auto* distance = app.add_subcommand("distance", "distance between GPI measure sets");
  std::string di_a, di_b;
  int di_terms = 32;
  distance->add_option("--first", di_a, "measure set JSON")->required();
  distance->add_option("--second", di_b, "measure set JSON")->required();
  distance->add_option("--terms", di_terms, "series truncation");

  // check-theorem --------------------------------------------------------
  auto* check = app.add_subcommand("check-theorem", "check the no-ac theorem hypotheses");
  std::string ct_tree, ct_out;
  double ct_k = 30.0, ct_delta = 1e-12;
  int ct_n = 0;
  check->add_option("--tree", ct_tree, "tree spec JSON")->required();
  check->add_option("--K", ct_k, "bound constant K");
  check->add_option("--N", ct_n, "conditions checked for generations n > N");
  check->add_option("--delta", ct_delta, "strict-inequality tolerance");
  check->add_option("--out", ct_out, "output path (default: stdout)");

  // reproduce-example -----------------------------------------------------
  auto* repro = app.add_subcommand("reproduce-example", "golden run of the built-in examples");
  double rp_r = 0.6;
  repro->add_option("--r", rp_r, "r parameter of the example W matrix");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*convert) {
      const qgs::GpiCouplingA c{cv_alpha, cv_beta, qgs::Complex(cv_gamma_re, cv_gamma_im)};
      if (cv_to == "b") {
        const qgs::GpiCouplingB b = qgs::a_to_b(c);
        std::cout << "a=" << qgs::format_double(b.a) << " d=" << qgs::format_double(b.d)
                  << " c=" << qgs::format_complex(b.c) << "\n";
      } else if (cv_to == "unitary") {
        const qgs::GpiCouplingU u = qgs::a_to_unitary(c);
        std::cout << "xi=" << qgs::format_double(u.xi)
                  << " u1=" << qgs::format_complex(u.u1)
                  << " u2=" << qgs::format_complex(u.u2) << "\n";
        if (u.norm_warning)
          std::cerr << "warning: closed-form (u1, u2) norm was "
                    << qgs::format_double(u.raw_norm) << ", renormalized\n";
      } else if (cv_to == "class") {
        switch (qgs::classify(c)) {
          case qgs::CouplingClass::Generic: std::cout << "generic\n"; break;
          case qgs::CouplingClass::Delta: std::cout << "delta\n"; break;
          case qgs::CouplingClass::DeltaPrime: std::cout << "delta-prime\n"; break;
          case qgs::CouplingClass::Separating: std::cout << "separating\n"; break;
          default: std::cout << "other\n"; break;
        }
      } else {
        const Eigen::Matrix2cd m = qgs::jump_matrix(c).m;
        std::cout << "[[" << qgs::format_complex(m(0, 0)) << ", "
                  << qgs::format_complex(m(0, 1)) << "], ["
                  << qgs::format_complex(m(1, 0)) << ", "
                  << qgs::format_complex(m(1, 1)) << "]]\n";
      }
      return kExitOk;
    }

    if (*validate) {
      qgs::RadialTreeSpec spec;
      try {
        spec = qgs::tree_from_json(load_json(va_tree));
      } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return kExitValidation;
      }
      const qgs::ValidationReport rep = qgs::validate_tree(spec);
      std::cout << qgs::dump(qgs::to_json(rep));
      return rep.ok() ? kExitOk : kExitValidation;
    }

    if (*reduce) {
      const qgs::RadialTreeSpec spec = load_tree(rd_tree);
      const int maxgen = rd_maxgen < 0 ? int(spec.generations.size()) : rd_maxgen;
      const auto policy = rd_trunc == "dirichlet"
                              ? qgs::TruncationPolicy::DirichletTruncation
                              : qgs::TruncationPolicy::FreeContinuation;
      const auto problems = qgs::decompose(spec, maxgen, policy);
      write_output(rd_out, qgs::dump(qgs::decomposition_to_json(problems)));
      return kExitOk;
    }

    if (*mfun) {
      const qgs::HalflineProblem p = load_problem(mf_problem);
      const double t = mf_t < 0.0 ? p.start : mf_t;
      std::vector<std::pair<double, qgs::GpiCouplingA>> gpi_points;
      if (mf_series) {
        for (const auto& cp : p.points) {
          const auto* g = std::get_if<qgs::GpiCouplingA>(&cp.coupling);
          if (!g) throw qgs::Error("--series requires GPI points only");
          gpi_points.emplace_back(cp.t, *g);
        }
      }
      auto value_at = [&](const qgs::SpectralParameter& sp) {
        return mf_series ? qgs::mfunction_series(gpi_points, sp)
                         : qgs::mfunction_plus(p, sp, t);
      };
      if (mf_grid > 0) {
        std::string csv = csv_row({"E", "re_m", "im_m", "eta"});
        for (double e : make_grid(mf_emin, mf_emax, mf_grid)) {
          const auto mv = value_at(qgs::SpectralParameter::from_energy(e, mf_eta));
          csv += csv_row({qgs::format_double(e), qgs::format_double(mv.value.real()),
                          qgs::format_double(mv.value.imag()), qgs::format_double(mf_eta)});
        }
        write_output(mf_out, csv);
      } else {
        qgs::SpectralParameter sp;
        if (mf_kappa)
          sp = qgs::SpectralParameter::from_kappa(*mf_kappa);
        else if (mf_energy)
          sp = qgs::SpectralParameter::from_energy(*mf_energy, mf_eta);
        else
          throw ValidationFailure("mfun: pass --kappa, --energy, or --grid");
        const auto mv = value_at(sp);
        std::cout << "m=" << qgs::format_complex(mv.value)
                  << (mv.at_infinity ? " (point at infinity)" : "") << "\n";
      }
      return kExitOk;
    }

    if (*eig) {
      const qgs::RootCondition bc = eg_cutoff_bc == "dirichlet"
                                        ? qgs::RootCondition::dirichlet()
                                        : qgs::RootCondition::neumann();
      std::string out;
      if (!eg_tree.empty()) {
        const qgs::RadialTreeSpec spec = load_tree(eg_tree);
        const auto evs =
            qgs::decomposed_eigenvalues(spec, eg_cutoff, eg_emin, eg_emax, eg_grid);
        out += csv_row({"index", "E"});
        for (std::size_t i = 0; i < evs.size(); ++i)
          out += csv_row({std::to_string(i), qgs::format_double(evs[i])});
        if (eg_compare) {
          const auto direct = qgs::expand_multiplicities(
              qgs::tree_eigenvalues_direct(spec, eg_cutoff, eg_emin, eg_emax));
          double mismatch = direct.size() == evs.size() ? 0.0 : INFINITY;
          if (direct.size() == evs.size())
            for (std::size_t i = 0; i < evs.size(); ++i)
              mismatch = std::max(mismatch, std::abs(direct[i] - evs[i]));
          out += "# direct count " + std::to_string(direct.size()) +
                 ", decomposed count " + std::to_string(evs.size()) +
                 ", max mismatch " + qgs::format_double(mismatch) + "\n";
        }
      } else if (!eg_problem.empty()) {
        const qgs::HalflineProblem p = load_problem(eg_problem);
        const auto evs =
            qgs::truncated_eigenvalues(p, eg_cutoff, bc, eg_emin, eg_emax, eg_grid);
        out += csv_row({"index", "E"});
        for (std::size_t i = 0; i < evs.values.size(); ++i)
          out += csv_row({std::to_string(i), qgs::format_double(evs.values[i])});
        if (evs.grid_too_coarse)
          out += "# warning: adjacent roots closer than two panels, refine --grid\n";
      } else {
        throw ValidationFailure("eig: pass --problem or --tree");
      }
      write_output(eg_out, out);
      return kExitOk;
    }

    if (*scan) {
      const qgs::HalflineProblem p = load_problem(sc_problem);
      const auto rep = qgs::transfer_growth_scan(p, make_grid(sc_emin, sc_emax, sc_grid),
                                                 sc_bound, sc_eta);
      std::string csv = csv_row({"E", "defect", "max_growth", "lyapunov_slope", "ac_candidate"});
      for (const auto& s : rep.samples) {
        double mx = 1.0;
        for (double g : s.growth) mx = std::max(mx, g);
        csv += csv_row({qgs::format_double(s.e), qgs::format_double(s.defect),
                        qgs::format_double(mx), qgs::format_double(s.lyapunov_slope),
                        s.ac_candidate ? "1" : "0"});
      }
      write_output(sc_out, csv);
      return kExitOk;
    }

    if (*distance) {
      const auto h1 = qgs::measures_from_json(load_json(di_a));
      const auto h2 = qgs::measures_from_json(load_json(di_b));
      std::cout << "d=" << qgs::format_double(qgs::gpi_distance(h1, h2, di_terms)) << "\n";
      return kExitOk;
    }

    if (*check) {
      const qgs::RadialTreeSpec spec = load_tree(ct_tree);
      const auto rep = qgs::check_main_theorem(spec, ct_k, ct_n, ct_delta);
      write_output(ct_out, qgs::dump(qgs::to_json(rep)));
      return kExitOk;
    }

    if (*repro) {
      const qgs::ReproduceReport rep = qgs::reproduce_example(rp_r);
      std::cout << qgs::reproduce_report_text(rep);
      return rep.pass() ? kExitOk : kExitNumeric;
    }
  } catch (const ValidationFailure& e) {
    std::cerr << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitOk;
}
