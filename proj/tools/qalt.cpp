// qalt: construct, transport, and verify alternative Hamiltonian and
// Hilbert-space structures for a given linear quantum dynamics.
//
// One subcommand per construction; every numeric check in the report carries
// its tolerance and pass/fail flag. Exit codes: 0 all checks pass, 1 a
// verification failed, 2 configuration error.

#include <CLI11.hpp>

#include <cmath>
#include <iostream>
#include <string>
#include <vector>

#include "qalt/alternatives.hpp"
#include "qalt/dynamics.hpp"
#include "qalt/json_io.hpp"
#include "qalt/kdeform.hpp"
#include "qalt/oscillator.hpp"
#include "qalt/random.hpp"
#include "qalt/realization.hpp"
#include "qalt/structures.hpp"

using namespace qalt;

namespace {

struct Report {
  Json doc;
  bool ok = true;
  std::string first_failure;

  explicit Report(const std::string& command) {
    doc["command"] = command;
    doc["params"] = Json::object();
    doc["outputs"] = Json::object();
    doc["checks"] = Json::array();
  }

  void param(const std::string& key, const Json& value) { doc["params"][key] = value; }
  void output(const std::string& key, const Json& value) { doc["outputs"][key] = value; }

  void check(const std::string& name, double value, double tol) {
    const bool pass = value <= tol;
    doc["checks"].push_back(
        {{"name", name}, {"value", value}, {"tol", tol}, {"ok", pass}});
    note(name, pass);
  }

  void flag(const std::string& name, bool pass) {
    doc["checks"].push_back({{"name", name}, {"ok", pass}});
    note(name, pass);
  }

  int finish(const std::string& out_path) {
    doc["ok"] = ok;
    for (const auto& c : doc["checks"]) {
      std::cout << (c.at("ok").get<bool>() ? "[PASS] " : "[FAIL] ")
                << c.at("name").get<std::string>();
      if (c.contains("value")) {
        std::cout << " (value " << c.at("value").get<double>() << ", tol "
                  << c.at("tol").get<double>() << ")";
      }
      std::cout << "\n";
    }
    if (!out_path.empty()) write_json_file(out_path, doc);
    if (!ok) {
      std::cout << "FAILED: " << first_failure << "\n";
      return 1;
    }
    std::cout << "all checks passed\n";
    return 0;
  }

 private:
  void note(const std::string& name, bool pass) {
    if (!pass && ok) {
      ok = false;
      first_failure = name;
    }
  }
};

Json load_config(const std::string& path) {
  return path.empty() ? Json::object() : load_json_file(path);
}

template <typename T>
void merge_cfg(const Json& cfg, const CLI::Option* opt, const char* key, T& var) {
  if (opt->count() == 0 && cfg.contains(key)) var = cfg.at(key).get<T>();
}

RealMatrix oscillator_generator(double omega) {
  RealMatrix a(2, 2);
  a << 0.0, omega, -omega, 0.0;
  return a;
}

// Loads the generator for --system oscillator or --input file.json and
// checks the phase-space dimension is even and desk-scale.
RealMatrix load_generator(const std::string& system, const std::string& input,
                          double omega) {
  RealMatrix a;
  if (!input.empty()) {
    a = real_matrix_from_json(load_json_file(input));
  } else if (system == "oscillator") {
    a = oscillator_generator(omega);
  } else {
    throw std::invalid_argument("unknown --system \"" + system +
                                "\" (use oscillator or --input)");
  }
  if (a.rows() != a.cols() || a.rows() % 2 != 0) {
    throw DimensionError("generator must be a square matrix of even dimension");
  }
  if (a.rows() > kMaxPhaseDim) {
    throw DimensionError("generator exceeds the supported phase-space cap");
  }
  return a;
}

StructureTriple load_triple(const RealMatrix& a, const std::string& poisson_path,
                            const std::string& jpath) {
  if (poisson_path.empty() && jpath.empty()) return standard_triple(a.rows() / 2);
  const StructureTriple std_triple = standard_triple(a.rows() / 2);
  PoissonTensor c = poisson_path.empty()
                        ? std_triple.c
                        : PoissonTensor::make(real_matrix_from_json(load_json_file(poisson_path)));
  ComplexStructure j = jpath.empty()
                           ? std_triple.j
                           : ComplexStructure::make(real_matrix_from_json(load_json_file(jpath)));
  if (c.dim() != a.rows() || j.dim() != a.rows()) {
    throw DimensionError("structure dimensions do not match the generator");
  }
  return assemble_triple(std::move(c), std::move(j));
}

// ---------------------------------------------------------------------------

struct OneLevelParams {
  double omega = 1.0;
  double q0 = 1.0;
  double p0 = 0.0;
  double t = 1.0;
  double dt = 1e-3;
  double horizon = 10.0;
  std::string out;
};

int run_one_level(const OneLevelParams& p) {
  Report rep("one-level");
  rep.param("omega", p.omega);
  rep.param("q0", p.q0);
  rep.param("p0", p.p0);
  rep.param("t", p.t);
  rep.param("dt", p.dt);
  rep.param("horizon", p.horizon);

  const auto [q, pp] = one_level_trajectory(p.omega, p.q0, p.p0, p.t);
  std::cout << "(q, p) at t = " << p.t << ": (" << q << ", " << pp << ")\n";
  rep.output("q", q);
  rep.output("p", pp);
  rep.output("energy", one_level_energy(p.omega, q, pp));

  double worst_fd = 0.0, worst_energy = 0.0;
  const double e0 = one_level_energy(p.omega, p.q0, p.p0);
  for (double t = p.dt; t <= p.horizon; t += p.dt) {
    const auto [qm, unused_pm] = one_level_trajectory(p.omega, p.q0, p.p0, t - p.dt);
    const auto [qc, pc] = one_level_trajectory(p.omega, p.q0, p.p0, t);
    const auto [qp, unused_pp] = one_level_trajectory(p.omega, p.q0, p.p0, t + p.dt);
    worst_fd = std::max(worst_fd, std::abs((qp - 2 * qc + qm) / (p.dt * p.dt) +
                                           p.omega * p.omega * qc));
    worst_energy = std::max(worst_energy, std::abs(one_level_energy(p.omega, qc, pc) - e0));
  }
  rep.check("finite-difference residual of q'' + omega^2 q", worst_fd, 1e-6);
  rep.check("energy drift over the horizon", worst_energy, 1e-10);
  return rep.finish(p.out);
}

// ---------------------------------------------------------------------------

struct DecomposeParams {
  std::string system = "oscillator";
  std::string input;
  std::string poisson;
  double omega = 1.0;
  std::string out;
};

int run_decompose(const DecomposeParams& p) {
  Report rep("decompose");
  rep.param("system", p.system);
  rep.param("omega", p.omega);

  const RealMatrix a = load_generator(p.system, p.input, p.omega);
  const StructureTriple triple = load_triple(a, p.poisson, "");
  const RealMatrix h = decompose_hamiltonian(a, triple.c);

  rep.output("hamiltonian", matrix_to_json(h));
  rep.check("symmetry of A C^{-1}", symmetry_residual(h), 1e-9);
  rep.check("reconstruction |A - H C|", (a - h * triple.c.c).norm(), 1e-10);
  return rep.finish(p.out);
}

// ---------------------------------------------------------------------------

struct InvarianceParams {
  std::string system = "oscillator";
  std::string input;
  std::string poisson;
  std::string jmatrix;
  double omega = 1.0;
  double tol = kIdentityTol;
  std::string out;
};

int run_invariance(const InvarianceParams& p) {
  Report rep("invariance");
  rep.param("system", p.system);
  rep.param("omega", p.omega);
  rep.param("tol", p.tol);

  const RealMatrix a = load_generator(p.system, p.input, p.omega);
  const StructureTriple triple = load_triple(a, p.poisson, p.jmatrix);
  const InvarianceReport inv = check_invariance(a, triple, p.tol);

  rep.doc["outputs"]["invariance"] = invariance_to_json(inv, p.tol);
  rep.check("symplectic invariance |tA Omega + Omega A|", inv.symplectic_residual, p.tol);
  rep.check("complex-structure invariance |AJ - JA|", inv.complex_residual, p.tol);
  rep.check("metric invariance |tA s + s A|", inv.metric_residual, p.tol);
  return rep.finish(p.out);
}

// ---------------------------------------------------------------------------

struct AlternativesParams {
  std::string system = "oscillator";
  std::string input;
  double omega = 2.0;  // even powers of the default system are visibly non-unitary
  int max_power = 4;
  bool commutant = false;
  double tol = 1e-9;
  std::string out;
};

int run_alternatives(const AlternativesParams& p) {
  Report rep("alternatives");
  rep.param("system", p.system);
  rep.param("omega", p.omega);
  rep.param("max_power", p.max_power);
  rep.param("tol", p.tol);

  const RealMatrix a = load_generator(p.system, p.input, p.omega);
  const StructureTriple triple = standard_triple(a.rows() / 2);
  const RealMatrix h = decompose_hamiltonian(a, triple.c);

  const SymmetryPowers powers = symmetry_powers(a, p.max_power);
  rep.output("skipped_singular_powers", powers.skipped);

  Json per_power = Json::array();
  for (const auto& t : powers.transforms) {
    const AlternativeDescription d = transport(t, a, triple, h);
    Json entry = alternative_to_json(d, p.tol);
    entry["power"] = t.power;
    per_power.push_back(entry);

    const std::string tag = "power " + std::to_string(t.power);
    rep.check(tag + ": relation 1_T (A = H_T C_T)", d.residual_decomposition, p.tol);
    rep.check(tag + ": relation 2_T (A J_T = J_T A)", d.residual_complex, p.tol);
    rep.check(tag + ": relation 3_T (C_T J_T = s_T)", d.residual_compatibility, p.tol);
    std::cout << "power " << t.power << ": " << (d.unitary ? "unitary" : "non-unitary")
              << (d.genuinely_alternative ? ", genuinely alternative" : "") << "\n";
  }
  rep.output("transports", per_power);

  Json classification = Json::array();
  for (const auto& c : classify_powers(a, triple.c, p.max_power)) {
    classification.push_back({{"power", c.power},
                              {"invertible", c.invertible},
                              {"decomposes", c.decomposes},
                              {"decomposition_residual", c.decomposition_residual},
                              {"unitary_standard", c.unitary_standard}});
  }
  rep.output("power_classification", classification);

  if (p.commutant) {
    const auto basis = commutant_basis(a);
    rep.output("commutant_dimension", basis.size());
  }
  return rep.finish(p.out);
}

// ---------------------------------------------------------------------------

struct KdeformParams {
  Index dim = 4;
  std::vector<double> lambdas = {0.1, 1.0};
  int instances = 100;
  unsigned long long seed = 20240101;
  double tol = kIdentityTol;
  std::string deformation;  // optional JSON file with {"lambda":, "K":}
  std::string out;
};

int run_kdeform_verify(const KdeformParams& p) {
  Report rep("kdeform-verify");
  rep.param("dim", p.dim);
  rep.param("lambda", p.lambdas);
  rep.param("instances", p.instances);
  rep.param("seed", p.seed);
  rep.param("tol", p.tol);

  Rng rng(p.seed);
  double assoc = 0.0, antisym = 0.0, jacobi = 0.0, derivation = 0.0;
  double hom_assoc = 0.0, hom_lie = 0.0, fk_inverse = 0.0, expectation = 0.0;

  std::vector<ComplexDeformation> deformations;
  Index dim = p.dim;
  if (!p.deformation.empty()) {
    deformations.push_back(deformation_from_json(load_json_file(p.deformation)));
    dim = deformations.front().dim();
  }

  for (int trial = 0; trial < p.instances; ++trial) {
    for (double lambda : p.lambdas) {
      ComplexDeformation d = [&] {
        if (!deformations.empty()) return deformations.front();
        ComplexMatrix k = random_hermitian(rng, dim);
        k *= 1.5 / k.norm();
        return ComplexDeformation::make(std::move(k), lambda);
      }();
      const ComplexMatrix a = random_complex_matrix(rng, dim, dim);
      const ComplexMatrix b = random_complex_matrix(rng, dim, dim);
      const ComplexMatrix c = random_complex_matrix(rng, dim, dim);

      assoc = std::max(assoc, (kproduct(kproduct(a, b, d), c, d) -
                               kproduct(a, kproduct(b, c, d), d))
                                  .norm());
      antisym = std::max(antisym, (kbracket(a, b, d) + kbracket(b, a, d)).norm());
      jacobi = std::max(jacobi, (kbracket(a, kbracket(b, c, d), d) +
                                 kbracket(b, kbracket(c, a, d), d) +
                                 kbracket(c, kbracket(a, b, d), d))
                                    .norm());
      derivation = std::max(derivation, (kbracket(a, kproduct(b, c, d), d) -
                                         kproduct(kbracket(a, b, d), c, d) -
                                         kproduct(b, kbracket(a, c, d), d))
                                            .norm());
      hom_assoc = std::max(hom_assoc, (fk_map(a, d) * fk_map(b, d) -
                                       fk_map(kproduct(a, b, d), d))
                                          .norm());
      hom_lie = std::max(hom_lie, (fk_map(a, d) * fk_map(b, d) -
                                   fk_map(b, d) * fk_map(a, d) -
                                   fk_map(kbracket(a, b, d), d))
                                      .norm());
      const ComplexDeformation dinv = ComplexDeformation::make(d.k, -d.lambda);
      fk_inverse = std::max(fk_inverse, (fk_map(fk_map(a, d), dinv) - a).norm());

      const ComplexVector psi = random_state(rng, dim);
      expectation = std::max(expectation,
                             std::abs(psi.dot(fk_map(a, d) * psi) - kexpectation(a, psi, d)));
    }
  }

  rep.check("associativity of the K-product", assoc, p.tol);
  rep.check("antisymmetry of the K-bracket", antisym, p.tol);
  rep.check("Jacobi identity of the K-bracket", jacobi, p.tol);
  rep.check("K-bracket is a derivation of the K-product", derivation, p.tol);
  rep.check("F_K homomorphism for the associative product", hom_assoc, p.tol);
  rep.check("F_K homomorphism for the Lie bracket", hom_lie, p.tol);
  rep.check("F_{-K} inverts F_K", fk_inverse, p.tol);
  rep.check("K-expectation equals the reference expectation of F_K", expectation, 1e-12);
  return rep.finish(p.out);
}

// ---------------------------------------------------------------------------

struct PicturesParams {
  Index dim = 6;
  int instances = 100;
  unsigned long long seed = 20240101;
  std::vector<double> times = {0.1, 1.0, 5.0};
  double tol = kEvolutionTol;
  std::string out;
};

int run_pictures(const PicturesParams& p) {
  if (p.dim < 1 || p.dim > 8) {
    throw std::invalid_argument("pictures: --dim must lie in [1, 8]");
  }
  Report rep("pictures");
  rep.param("dim", p.dim);
  rep.param("instances", p.instances);
  rep.param("seed", p.seed);
  rep.param("times", p.times);
  rep.param("tol", p.tol);

  Rng rng(p.seed);
  double ehrenfest = 0.0, realified = 0.0;
  for (int trial = 0; trial < p.instances; ++trial) {
    const ComplexMatrix h = random_hermitian(rng, p.dim);
    const ComplexMatrix b = random_hermitian(rng, p.dim);
    const ComplexVector psi0 = random_state(rng, p.dim);
    const RealMatrix a = realify_hamiltonian(h);
    for (double t : p.times) {
      ehrenfest = std::max(ehrenfest, ehrenfest_check(h, b, psi0, t).residual);
      const ComplexVector psi_t = evolve_state(h, psi0, t);
      const RealVector x_t = evolve_schrodinger(a, realify_state(psi0), t);
      realified = std::max(realified, (realify_state(psi_t) - x_t).norm());
    }
  }
  rep.check("Schroedinger vs Heisenberg expectations", ehrenfest, p.tol);
  rep.check("complex flow vs realified flow", realified, p.tol);
  return rep.finish(p.out);
}

// ---------------------------------------------------------------------------

struct RecurrenceParams {
  double epsilon = 0.0;
  Index dim = 12;
  std::string out;
};

int run_recurrence(const RecurrenceParams& p) {
  Report rep("recurrence");
  rep.param("epsilon", p.epsilon);
  rep.param("dim", p.dim);

  const KTable table = solve_standard_commutation(p.epsilon, p.dim);
  rep.output("exp_table", table.exp_values);

  double odd = 0.0, even = 0.0;
  for (Index n = 1; n < p.dim; n += 2) {
    odd = std::max(odd, std::abs(table.exp_values[static_cast<size_t>(n)] - 1.0));
  }
  for (Index n = 0; n < p.dim; n += 2) {
    double num = 1.0, den = 1.0;
    for (Index k = n - 1; k >= 1; k -= 2) num *= static_cast<double>(k);
    for (Index k = n; k >= 2; k -= 2) den *= static_cast<double>(k);
    even = std::max(even, std::abs(table.exp_values[static_cast<size_t>(n)] -
                                   (1.0 + (num / den) * p.epsilon)));
  }
  rep.check("odd entries equal one", odd, 1e-14);
  rep.check("even entries match the double-factorial family", even, 1e-12);

  const FockLadder ladder = build_fock(p.dim);
  const ComplexMatrix comm = kcommutator_fock(ladder, table);
  double interior = 0.0;
  for (Index n = 0; n <= p.dim - 2; ++n) {
    interior = std::max(interior, std::abs(comm(n, n) - 1.0));
  }
  rep.check("deformed commutator is the identity on interior modes", interior, 1e-12);
  rep.output("boundary_mode_value", comm(p.dim - 1, p.dim - 1).real());
  return rep.finish(p.out);
}

// ---------------------------------------------------------------------------

struct FOscillatorParams {
  std::string f = "affine";
  std::string f_file;
  double lambda = 0.2;
  Index dim = 16;
  std::string out;
};

int run_foscillator(const FOscillatorParams& p) {
  Report rep("foscillator");
  rep.param("f", p.f_file.empty() ? p.f : p.f_file);
  rep.param("lambda", p.lambda);
  rep.param("dim", p.dim);

  const std::vector<double> f =
      p.f_file.empty() ? named_table(p.f, p.lambda, p.dim)
                       : table_from_json(load_json_file(p.f_file), p.lambda, p.dim);
  const FOscillator osc = build_f_oscillator(f, p.dim);
  rep.output("phi", osc.phi);
  rep.output("big_f", osc.big_f);

  const ComplexMatrix comm = osc.a_def * osc.a_def_dag - osc.a_def_dag * osc.a_def;
  double phi_residual = 0.0;
  for (Index n = 0; n <= p.dim - 2; ++n) {
    phi_residual = std::max(phi_residual,
                            std::abs(comm(n, n) - osc.phi[static_cast<size_t>(n)]));
  }
  rep.check("commutator diagonal matches phi on interior modes", phi_residual, 1e-12);
  rep.output("boundary_commutator_value", comm(p.dim - 1, p.dim - 1).real());

  const BlockReport blocks = invariant_blocks(osc);
  Json blocks_json = Json::array();
  for (const auto& [lo, hi] : blocks.blocks) blocks_json.push_back({lo, hi});
  rep.output("invariant_blocks", blocks_json);
  rep.check("cross-block coupling", blocks.max_cross_coupling, 0.0);

  // Gram checks run on the leading block when f has zeros.
  const Index n_max = blocks.blocks.front().second;
  const GramReport gram = dual_scalar_products(osc, n_max);
  rep.output("h1_gram_diag", gram.h1_gram_diag);
  rep.output("gram_n_max", gram.n_max);
  double gram_residual = 0.0;
  double prod = 1.0;
  for (Index n = 0; n <= n_max; ++n) {
    if (n > 0) prod *= f[static_cast<size_t>(n)] * f[static_cast<size_t>(n)];
    gram_residual = std::max(gram_residual,
                             std::abs(gram.h1_gram_diag[static_cast<size_t>(n)] - prod) /
                                 std::max(1.0, std::abs(prod)));
  }
  rep.check("h1 Gram diagonal matches the product formula", gram_residual, 1e-10);
  rep.check("h2 pair obeys the standard commutator on interior modes",
            gram.h2_commutator_residual, 1e-10);
  return rep.finish(p.out);
}

// ---------------------------------------------------------------------------

struct AltHamParams {
  std::string htilde = "sinh";
  std::string htilde_file;
  double lambda = 0.5;
  Index dim = 16;
  double tol = 1e-10;
  std::string out;
};

int run_alt_hamiltonian(const AltHamParams& p) {
  Report rep("alt-hamiltonian");
  rep.param("htilde", p.htilde);
  rep.param("lambda", p.lambda);
  rep.param("dim", p.dim);
  rep.param("tol", p.tol);

  const std::vector<double> htilde =
      p.htilde_file.empty()
          ? named_table(p.htilde, p.lambda, p.dim)
          : table_from_json(load_json_file(p.htilde_file), p.lambda, p.dim);

  const FockLadder ladder = build_fock(p.dim);
  const AltHamiltonianSolution sol = solve_alternative_hamiltonian(ladder, htilde);

  Json table = Json::array();
  for (Index n = 0; n < p.dim; ++n) {
    const double g = sol.exp_table[static_cast<size_t>(n)];
    table.push_back(std::isnan(g) ? Json() : Json(g));
  }
  rep.output("exp_table", table);
  rep.output("singular_modes", sol.singular_modes);
  for (Index n : sol.singular_modes) {
    std::cout << "mode " << n << " flagged singular (|Htilde| < 1e-12)\n";
  }

  rep.check("deformed equation of motion [Htilde, a]_K = -a",
            alt_hamiltonian_eom_residual(ladder, htilde, sol), p.tol);
  return rep.finish(p.out);
}

}  // anonymous namespace

int main(int argc, char** argv) {
  CLI::App app{"alternative Hamiltonian and Hilbert-space structures for linear quantum dynamics"};
  app.require_subcommand(1);

  std::string config_path;

  OneLevelParams one;
  auto* cmd_one = app.add_subcommand("one-level", "closed-form one-mode trajectory and residual checks");
  auto* o_omega = cmd_one->add_option("--omega", one.omega, "frequency");
  auto* o_q0 = cmd_one->add_option("--q0", one.q0, "initial q");
  auto* o_p0 = cmd_one->add_option("--p0", one.p0, "initial p");
  auto* o_t = cmd_one->add_option("--t", one.t, "evaluation time");
  auto* o_dt = cmd_one->add_option("--dt", one.dt, "finite-difference step");
  auto* o_hz = cmd_one->add_option("--horizon", one.horizon, "drift-check horizon");
  auto* o_out = cmd_one->add_option("--out", one.out, "write the JSON report here");
  cmd_one->add_option("--config", config_path, "JSON config file");

  DecomposeParams dec;
  auto* cmd_dec = app.add_subcommand("decompose", "Hamiltonian decomposition A = HC");
  auto* d_sys = cmd_dec->add_option("--system", dec.system, "built-in system name");
  auto* d_in = cmd_dec->add_option("--input", dec.input, "generator matrix JSON file");
  auto* d_poi = cmd_dec->add_option("--poisson", dec.poisson, "Poisson tensor JSON file");
  auto* d_omega = cmd_dec->add_option("--omega", dec.omega, "oscillator frequency");
  auto* d_out = cmd_dec->add_option("--out", dec.out, "write the JSON report here");
  cmd_dec->add_option("--config", config_path, "JSON config file");

  InvarianceParams inv;
  auto* cmd_inv = app.add_subcommand("invariance", "structure invariance under the flow");
  auto* i_sys = cmd_inv->add_option("--system", inv.system, "built-in system name");
  auto* i_in = cmd_inv->add_option("--input", inv.input, "generator matrix JSON file");
  auto* i_poi = cmd_inv->add_option("--poisson", inv.poisson, "Poisson tensor JSON file");
  auto* i_j = cmd_inv->add_option("--complex-structure", inv.jmatrix, "complex structure JSON file");
  auto* i_omega = cmd_inv->add_option("--omega", inv.omega, "oscillator frequency");
  auto* i_tol = cmd_inv->add_option("--tol", inv.tol, "invariance tolerance");
  auto* i_out = cmd_inv->add_option("--out", inv.out, "write the JSON report here");
  cmd_inv->add_option("--config", config_path, "JSON config file");

  AlternativesParams alt;
  auto* cmd_alt = app.add_subcommand("alternatives", "transport structures along symmetries of A");
  auto* a_sys = cmd_alt->add_option("--system", alt.system, "built-in system name");
  auto* a_in = cmd_alt->add_option("--input", alt.input, "generator matrix JSON file");
  auto* a_omega = cmd_alt->add_option("--omega", alt.omega,
                                      "oscillator frequency (default 2: even powers rescale)");
  auto* a_max = cmd_alt->add_option("--max-power", alt.max_power, "highest power of A");
  auto* a_comm = cmd_alt->add_flag("--commutant", alt.commutant, "include the commutant dimension");
  auto* a_tol = cmd_alt->add_option("--tol", alt.tol, "relation tolerance");
  auto* a_out = cmd_alt->add_option("--out", alt.out, "write the JSON report here");
  cmd_alt->add_option("--config", config_path, "JSON config file");

  KdeformParams kd;
  auto* cmd_kd = app.add_subcommand("kdeform-verify", "randomized K-algebra identity suites");
  auto* k_dim = cmd_kd->add_option("--dim", kd.dim, "matrix dimension");
  auto* k_lam = cmd_kd->add_option("--lambda", kd.lambdas, "deformation strengths");
  auto* k_inst = cmd_kd->add_option("--instances", kd.instances, "random instances per lambda");
  auto* k_seed = cmd_kd->add_option("--seed", kd.seed, "random seed");
  auto* k_tol = cmd_kd->add_option("--tol", kd.tol, "identity tolerance");
  auto* k_def = cmd_kd->add_option("--deformation", kd.deformation, "deformation JSON file");
  auto* k_out = cmd_kd->add_option("--out", kd.out, "write the JSON report here");
  cmd_kd->add_option("--config", config_path, "JSON config file");

  PicturesParams pic;
  auto* cmd_pic = app.add_subcommand("pictures", "three-picture agreement on random instances");
  auto* p_dim = cmd_pic->add_option("--dim", pic.dim, "Hilbert space dimension (<= 8)");
  auto* p_inst = cmd_pic->add_option("--instances", pic.instances, "random instances");
  auto* p_seed = cmd_pic->add_option("--seed", pic.seed, "random seed");
  auto* p_times = cmd_pic->add_option("--times", pic.times, "evaluation times");
  auto* p_tol = cmd_pic->add_option("--tol", pic.tol, "agreement tolerance");
  auto* p_out = cmd_pic->add_option("--out", pic.out, "write the JSON report here");
  cmd_pic->add_option("--config", config_path, "JSON config file");

  RecurrenceParams rec;
  auto* cmd_rec = app.add_subcommand("recurrence", "standard-commutator recurrence family");
  auto* r_eps = cmd_rec->add_option("--epsilon", rec.epsilon, "family parameter (> -1)");
  auto* r_dim = cmd_rec->add_option("--dim", rec.dim, "Fock truncation");
  auto* r_out = cmd_rec->add_option("--out", rec.out, "write the JSON report here");
  cmd_rec->add_option("--config", config_path, "JSON config file");

  FOscillatorParams fo;
  auto* cmd_fo = app.add_subcommand("foscillator", "f-deformed oscillator construction and checks");
  auto* f_name = cmd_fo->add_option("--f", fo.f, "built-in f table (identity, affine)");
  auto* f_file = cmd_fo->add_option("--f-file", fo.f_file, "f table JSON file");
  auto* f_lam = cmd_fo->add_option("--lambda", fo.lambda, "nonlinearity strength");
  auto* f_dim = cmd_fo->add_option("--dim", fo.dim, "Fock truncation");
  auto* f_out = cmd_fo->add_option("--out", fo.out, "write the JSON report here");
  cmd_fo->add_option("--config", config_path, "JSON config file");

  AltHamParams ah;
  auto* cmd_ah = app.add_subcommand("alt-hamiltonian", "solve Htilde e^{lambda K} = n + 1/2");
  auto* h_name = cmd_ah->add_option("--htilde", ah.htilde, "built-in Htilde table (identity, sinh)");
  auto* h_file = cmd_ah->add_option("--htilde-file", ah.htilde_file, "Htilde table JSON file");
  auto* h_lam = cmd_ah->add_option("--lambda", ah.lambda, "family parameter");
  auto* h_dim = cmd_ah->add_option("--dim", ah.dim, "Fock truncation");
  auto* h_tol = cmd_ah->add_option("--tol", ah.tol, "equation-of-motion tolerance");
  auto* h_out = cmd_ah->add_option("--out", ah.out, "write the JSON report here");
  cmd_ah->add_option("--config", config_path, "JSON config file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }

  try {
    const Json cfg = load_config(config_path);
    if (cmd_one->parsed()) {
      merge_cfg(cfg, o_omega, "omega", one.omega);
      merge_cfg(cfg, o_q0, "q0", one.q0);
      merge_cfg(cfg, o_p0, "p0", one.p0);
      merge_cfg(cfg, o_t, "t", one.t);
      merge_cfg(cfg, o_dt, "dt", one.dt);
      merge_cfg(cfg, o_hz, "horizon", one.horizon);
      merge_cfg(cfg, o_out, "out", one.out);
      return run_one_level(one);
    }
    if (cmd_dec->parsed()) {
      merge_cfg(cfg, d_sys, "system", dec.system);
      merge_cfg(cfg, d_in, "input", dec.input);
      merge_cfg(cfg, d_poi, "poisson", dec.poisson);
      merge_cfg(cfg, d_omega, "omega", dec.omega);
      merge_cfg(cfg, d_out, "out", dec.out);
      return run_decompose(dec);
    }
    if (cmd_inv->parsed()) {
      merge_cfg(cfg, i_sys, "system", inv.system);
      merge_cfg(cfg, i_in, "input", inv.input);
      merge_cfg(cfg, i_poi, "poisson", inv.poisson);
      merge_cfg(cfg, i_j, "complex_structure", inv.jmatrix);
      merge_cfg(cfg, i_omega, "omega", inv.omega);
      merge_cfg(cfg, i_tol, "tol", inv.tol);
      merge_cfg(cfg, i_out, "out", inv.out);
      return run_invariance(inv);
    }
    if (cmd_alt->parsed()) {
      merge_cfg(cfg, a_sys, "system", alt.system);
      merge_cfg(cfg, a_in, "input", alt.input);
      merge_cfg(cfg, a_omega, "omega", alt.omega);
      merge_cfg(cfg, a_max, "max_power", alt.max_power);
      merge_cfg(cfg, a_comm, "commutant", alt.commutant);
      merge_cfg(cfg, a_tol, "tol", alt.tol);
      merge_cfg(cfg, a_out, "out", alt.out);
      return run_alternatives(alt);
    }
    if (cmd_kd->parsed()) {
      merge_cfg(cfg, k_dim, "dim", kd.dim);
      merge_cfg(cfg, k_lam, "lambda", kd.lambdas);
      merge_cfg(cfg, k_inst, "instances", kd.instances);
      merge_cfg(cfg, k_seed, "seed", kd.seed);
      merge_cfg(cfg, k_tol, "tol", kd.tol);
      merge_cfg(cfg, k_def, "deformation", kd.deformation);
      merge_cfg(cfg, k_out, "out", kd.out);
      return run_kdeform_verify(kd);
    }
    if (cmd_pic->parsed()) {
      merge_cfg(cfg, p_dim, "dim", pic.dim);
      merge_cfg(cfg, p_inst, "instances", pic.instances);
      merge_cfg(cfg, p_seed, "seed", pic.seed);
      merge_cfg(cfg, p_times, "times", pic.times);
      merge_cfg(cfg, p_tol, "tol", pic.tol);
      merge_cfg(cfg, p_out, "out", pic.out);
      return run_pictures(pic);
    }
    if (cmd_rec->parsed()) {
      merge_cfg(cfg, r_eps, "epsilon", rec.epsilon);
      merge_cfg(cfg, r_dim, "dim", rec.dim);
      merge_cfg(cfg, r_out, "out", rec.out);
      return run_recurrence(rec);
    }
    if (cmd_fo->parsed()) {
      merge_cfg(cfg, f_name, "f", fo.f);
      merge_cfg(cfg, f_file, "f_file", fo.f_file);
      merge_cfg(cfg, f_lam, "lambda", fo.lambda);
      merge_cfg(cfg, f_dim, "dim", fo.dim);
      merge_cfg(cfg, f_out, "out", fo.out);
      return run_foscillator(fo);
    }
    if (cmd_ah->parsed()) {
      merge_cfg(cfg, h_name, "htilde", ah.htilde);
      merge_cfg(cfg, h_file, "htilde_file", ah.htilde_file);
      merge_cfg(cfg, h_lam, "lambda", ah.lambda);
      merge_cfg(cfg, h_dim, "dim", ah.dim);
      merge_cfg(cfg, h_tol, "tol", ah.tol);
      merge_cfg(cfg, h_out, "out", ah.out);
      return run_alt_hamiltonian(ah);
    }
    std::cerr << "no subcommand selected\n";
    return 2;
  } catch (const NotHamiltonianError& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return 1;
  } catch (const IncompatibleStructureError& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return 1;
  } catch (const PositivityError& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return 1;
  } catch (const SingularMatrixError& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return 1;
  } catch (const Json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
