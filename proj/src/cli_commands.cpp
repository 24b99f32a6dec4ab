#include "covproc/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "covproc/bounds.hpp"
#include "covproc/catalog.hpp"
#include "covproc/rng.hpp"
#include "covproc/spectral.hpp"

namespace covproc::cli {

namespace {

constexpr int kSchemaVersion = 1;

GroupSystem load_system(const RunConfig& cfg) {
  if (catalog_has(cfg.group_source)) return catalog_group(cfg.group_source);
  if (std::filesystem::exists(cfg.group_source))
    return load_group_file(cfg.group_source, cfg.tol);
  throw error("unknown group '" + cfg.group_source +
              "' (not a catalog name and not a readable file)");
}

struct Resolved {
  GroupSystem sys;
  std::string u_label, v_label;

  const Representation& u() const { return sys.irreps.by_label(u_label); }
  const Representation& v() const { return sys.irreps.by_label(v_label); }
};

Resolved resolve(const RunConfig& cfg) {
  Resolved r{load_system(cfg), cfg.u_label, cfg.v_label};
  if (r.u_label.empty()) r.u_label = default_irrep_label(r.sys);
  if (r.v_label.empty()) r.v_label = r.u_label;
  if (r.sys.irreps.index_of(r.u_label) < 0)
    throw error("irrep label '" + r.u_label + "' not found in group '" +
                r.sys.group->name + "'");
  if (r.sys.irreps.index_of(r.v_label) < 0)
    throw error("irrep label '" + r.v_label + "' not found in group '" +
                r.sys.group->name + "'");
  return r;
}

json blocks_json(const BlockStructure& bs) {
  json blocks = json::array();
  for (const Block& b : bs.blocks)
    blocks.push_back(json{{"label", b.label}, {"b", b.b}, {"n", b.n}});
  return blocks;
}

json header_json(const Resolved& r) {
  return json{{"schema_version", kSchemaVersion},
              {"group", r.sys.group->name},
              {"u", r.u_label},
              {"v", r.v_label}};
}

// non-finite values (targets outside the implementable class) would
// otherwise serialize as JSON null
json finite_or(double v) {
  if (std::isfinite(v)) return v;
  return "unbounded";
}

CmdResult validation_failure(const std::string& what) {
  CmdResult res;
  res.report = json{{"schema_version", kSchemaVersion}, {"error", what}};
  res.exit_code = kExitValidation;
  return res;
}

std::vector<ChannelMap> sample_channels(const Representation& u,
                                        const Representation& v, uint64_t seed,
                                        int count, std::vector<uint64_t>* seeds) {
  std::vector<ChannelMap> out;
  for (int i = 1; i <= count; ++i) {
    const uint64_t s = seed + static_cast<uint64_t>(i);
    out.push_back(random_covariant_channel(u, v, s));
    if (seeds) seeds->push_back(s);
  }
  return out;
}

std::vector<DensityMatrix> sample_states(int dim, uint64_t seed, int count,
                                         std::vector<uint64_t>* seeds) {
  std::vector<DensityMatrix> out;
  for (int i = 1; i <= count; ++i) {
    const uint64_t s = seed + 10000 + static_cast<uint64_t>(i);
    Prng rng(s);
    out.push_back(random_density(dim, rng));
    if (seeds) seeds->push_back(s);
  }
  return out;
}

std::vector<ChannelMap> extremes_from_file(const std::string& path,
                                           double tol) {
  std::ifstream in(path);
  if (!in) throw error("cannot open extremes file: " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw error("extremes file parse error: " + std::string(e.what()));
  }
  for (const char* field : {"d1", "d2", "extremes"})
    if (!j.contains(field))
      throw error(std::string("extremes file: missing field '") + field + "'");
  const int d1 = j.at("d1").get<int>();
  const int d2 = j.at("d2").get<int>();
  std::vector<ChannelMap> out;
  for (const json& m : j.at("extremes"))
    out.push_back(channel_from_choi(matrix_from_json(m), d1, d2, tol));
  if (out.empty()) throw error("extremes file: empty extreme list");
  return out;
}

Processor build_processor(const Resolved& r, const RunConfig& cfg,
                          const std::string& kind) {
  if (kind == "teleport") return build_teleport_processor(r.u(), r.v(), cfg.tol);
  if (kind == "compressed") {
    const AdaptedBasis basis = adapted_basis(r.u(), r.v(), r.sys.irreps, cfg.tol);
    return build_compressed_processor(r.u(), r.v(), basis, cfg.tol);
  }
  if (kind == "mp") {
    std::vector<ChannelMap> extremes;
    if (!cfg.extremes_path.empty()) {
      extremes = extremes_from_file(cfg.extremes_path, cfg.tol);
      if (extremes.front().d1() != r.u().dim ||
          extremes.front().d2() != r.v().dim)
        throw error("extremes file dimensions do not match the chosen irreps");
    } else {
      const AdaptedBasis basis =
          adapted_basis(r.u(), r.v(), r.sys.irreps, cfg.tol);
      extremes = derive_extremes_abelian(r.u(), basis);
    }
    Processor p = build_mp_processor(extremes, cfg.pure_programs);
    p.group = r.sys.group;
    p.u_label = r.u_label;
    p.v_label = r.v_label;
    return p;
  }
  throw error("unknown processor kind '" + kind +
              "' (expected mp, teleport or compressed)");
}

// ---- demo helpers ------------------------------------------------------

struct CheckList {
  json checks = json::array();
  bool all_pass = true;

  void add(const std::string& name, bool pass, json detail = json::object()) {
    detail["id"] = static_cast<int>(checks.size()) + 1;
    detail["name"] = name;
    detail["pass"] = pass;
    checks.push_back(std::move(detail));
    all_pass &= pass;
  }
};

CmdResult finish_demo(const std::string& name, uint64_t seed, CheckList& list) {
  CmdResult res;
  res.report = json{{"schema_version", kSchemaVersion},
                    {"demo", name},
                    {"seed", seed},
                    {"checks", std::move(list.checks)},
                    {"all_pass", list.all_pass}};
  res.exit_code = list.all_pass ? kExitOk : kExitCheckFailure;
  return res;
}

CmdResult demo_a4(uint64_t seed) {
  CheckList list;
  const GroupSystem& sys = catalog_group("a4");
  const Representation& theta = sys.irreps.by_label("theta");
  const Representation& phi1 = sys.irreps.by_label("phi1");

  // 1. multiplicities of the tensor square
  const MultiplicityVector mv =
      multiplicities(bar_tensor_rep(theta, theta), sys.irreps);
  list.add("multiplicities of conj(theta) (x) theta are (1,1,1,2)",
           mv.n == std::vector<int>{1, 1, 1, 2}, json{{"n", mv.n}});

  // 2. commutant block structure
  const AdaptedBasis basis = adapted_basis(theta, theta, sys.irreps);
  const BlockStructure& bs = basis.structure;
  list.add("commutant has three 1x1 blocks and one 2x2 block of weight 3",
           bs.K == 4 && bs.d_c == 5 && bs.d_n == 7 && bs.blocks[3].b == 3 &&
               bs.blocks[3].n == 2,
           json{{"K", bs.K}, {"d_c", bs.d_c}, {"d_n", bs.d_n},
                {"blocks", blocks_json(bs)}});

  // 3. adapted basis block-diagonalizes all group elements
  const double residual = block_diagonalization_residual(basis);
  list.add("adapted basis block-diagonalizes the tensor representation",
           residual <= 1e-8, json{{"residual", residual}});

  const A4Algebra& alg = a4_algebra();

  // 4. the degree-3 unitary V
  list.add("tetrahedral unitary V is unitary", alg.V.is_unitary(1e-10));

  // 5. intertwining relation
  double intertwine = 0.0;
  for (size_t g = 0; g < theta.mats.size(); ++g)
    intertwine = std::max(
        intertwine, max_abs_diff(sandwich(theta.mats[g], alg.V),
                                 phi1.mats[g](0, 0) * alg.V));
  list.add("theta_g V theta_g* = phi1(g) V for all g", intertwine <= 1e-9,
           json{{"residual", intertwine}});

  // 6. Werner-Holevo choi = antisymmetric projector / 3, unital
  const ChannelMap wh = werner_holevo_channel(3);
  ComplexMatrix anti = ComplexMatrix::identity(9) - alg.F;
  anti *= cplx(1.0 / 6.0, 0.0);
  const double wh_form = max_abs_diff(wh.choi.m, anti);
  ComplexMatrix out_marginal = partial_trace(wh.choi.m, {3, 3}, 1);
  out_marginal -= (1.0 / 3.0) * ComplexMatrix::identity(3);
  list.add("werner-holevo choi is the normalized antisymmetric projector",
           wh_form <= 1e-10 && out_marginal.max_abs() <= 1e-10,
           json{{"form_residual", wh_form},
                {"unital_residual", out_marginal.max_abs()}});

  // 7. covariance against sampled special unitaries
  Prng rng(seed + 40);
  double wh_cov = 0.0;
  for (int i = 0; i < 20; ++i) {
    const ComplexMatrix u = random_special_unitary(3, rng);
    wh_cov = std::max(wh_cov, covariance_residual(wh.choi.m, u.conj(), u));
  }
  list.add("werner-holevo commutes with u (x) u for 20 sampled SU(3)",
           wh_cov <= 1e-9, json{{"residual", wh_cov}});

  // 8. the emergent qubit algebra anticommutes like Pauli matrices
  const ComplexMatrix* ops[3] = {&alg.VX, &alg.VY, &alg.VZ};
  double anticomm = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      ComplexMatrix ac = (*ops[i]) * (*ops[j]) + (*ops[j]) * (*ops[i]);
      if (i == j) ac -= 2.0 * alg.P;
      anticomm = std::max(anticomm, trace_norm(ac));
    }
  list.add("V_i V_j + V_j V_i = 2 delta_ij P", anticomm <= 1e-9,
           json{{"residual", anticomm}});

  // 9. P commutes with 1 (x) V and with the flip
  const double p_comm = std::max(
      commutator(alg.P, tensor_product(ComplexMatrix::identity(3), alg.V))
          .max_abs(),
      commutator(alg.P, alg.F).max_abs());
  list.add("[P, 1 (x) V] = 0 and [P, F] = 0", p_comm <= 1e-10,
           json{{"residual", p_comm}});

  // 10. extremal Bloch-sphere channel of rank 3
  const ChannelMap bloch = a4_bloch_channel({0.0, 0.0, 1.0});
  ComplexMatrix want = alg.P + alg.VZ;
  want *= cplx(1.0 / 6.0, 0.0);
  const HermitianEig eg = eigh(bloch.choi.m);
  int rank = 0;
  for (double v : eg.values)
    if (v > 1e-9) ++rank;
  const CovarianceReport bloch_cov = is_covariant(bloch, theta, theta);
  list.add("bloch channel (0,0,1) has choi (P+V_Z)/6 of rank 3 and is covariant",
           max_abs_diff(bloch.choi.m, want) <= 1e-10 && rank == 3 &&
               bloch_cov.covariant,
           json{{"rank", rank}, {"covariance_residual", bloch_cov.max_residual}});

  // 11. composition closure inside the algebra span
  const ComplexMatrix vv = tensor_product(alg.V, alg.V.adjoint());
  const ComplexMatrix span[4] = {alg.P, alg.P * alg.F, alg.P * vv,
                                 alg.P * alg.F * vv};
  double closure = 0.0;
  for (int jj = 0; jj < 3; ++jj)
    for (int kk = 0; kk < 3; ++kk) {
      const ChannelMap comp = compose_channels(
          a4_unitary_channel(jj), compose_channels(wh, a4_unitary_channel(kk)));
      // least-squares projection onto the 4-element span via its Gram matrix
      cplx g[4][5];
      for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) g[a][b] = (span[a].adjoint() * span[b]).trace();
        g[a][4] = (span[a].adjoint() * comp.choi.m).trace();
      }
      for (int c = 0; c < 4; ++c) {
        int piv = c;
        for (int rr = c + 1; rr < 4; ++rr)
          if (std::abs(g[rr][c]) > std::abs(g[piv][c])) piv = rr;
        for (int cc = 0; cc < 5; ++cc) std::swap(g[c][cc], g[piv][cc]);
        for (int rr = 0; rr < 4; ++rr) {
          if (rr == c) continue;
          const cplx f = g[rr][c] / g[c][c];
          for (int cc = c; cc < 5; ++cc) g[rr][cc] -= f * g[c][cc];
        }
      }
      ComplexMatrix recon(9, 9);
      for (int a = 0; a < 4; ++a) recon += (g[a][4] / g[a][a]) * span[a];
      closure = std::max(closure, max_abs_diff(recon, comp.choi.m));
    }
  list.add("chois of T_j o W o T_k stay in span{P, PF, PVV*, PFVV*}",
           closure <= 1e-8, json{{"residual", closure}});

  // 12. processors: teleport 9 vs compressed 5, both exact; bound tight
  Processor tp = build_teleport_processor(theta, theta);
  Processor cp = build_compressed_processor(theta, theta, basis);
  std::vector<ChannelMap> targets =
      sample_channels(theta, theta, seed, 20, nullptr);
  std::vector<DensityMatrix> states = sample_states(3, seed, 20, nullptr);
  const VerifyReport vt = verify_processor(tp, targets, states);
  const VerifyReport vc = verify_processor(cp, targets, states);
  const double lb = lower_bound(0.0, bs);
  list.add(
      "teleport (d_P=9) and compressed (d_P=5) are exact; lower bound = 5",
      tp.d_p == 9 && cp.d_p == 5 && vt.max_error <= 1e-8 &&
          vc.max_error <= 1e-8 && lb == 5.0,
      json{{"teleport_error", vt.max_error},
           {"compressed_error", vc.max_error},
           {"lower_bound", lb}});

  return finish_demo("a4", seed, list);
}

CmdResult demo_pauli(uint64_t seed) {
  CheckList list;
  const GroupSystem& sys = catalog_group("pauli2");
  const Representation& w = sys.irreps.by_label("w");

  const AdaptedBasis basis = adapted_basis(w, w, sys.irreps);
  const BlockStructure& bs = basis.structure;
  bool four_lines = bs.K == 4;
  for (const Block& b : bs.blocks) four_lines &= (b.b == 1 && b.n == 1);
  list.add("commutant splits into four (1,1) blocks (abelian)",
           four_lines && is_abelian(bs),
           json{{"K", bs.K}, {"blocks", blocks_json(bs)}});

  Processor tp = build_teleport_processor(w, w);
  const double completeness = tp.povm->completeness_residual();

  // cluster the POVM into distinct projectors
  std::vector<ComplexMatrix> distinct;
  std::vector<int> counts;
  for (const ComplexMatrix& m : tp.povm->elements) {
    bool found = false;
    for (size_t i = 0; i < distinct.size(); ++i)
      if (max_abs_diff(distinct[i], m) <= 1e-10) {
        ++counts[i];
        found = true;
        break;
      }
    if (!found) {
      distinct.push_back(m);
      counts.push_back(1);
    }
  }
  bool bell = distinct.size() == 4;
  for (int c : counts) bell &= (c == 4);
  double proj_residual = 0.0;
  for (const ComplexMatrix& m : distinct) {
    // each element is (d1^2/|G|) times a rank-one projector
    proj_residual =
        std::max(proj_residual, max_abs_diff(m * m, (4.0 / 16.0) * m));
    proj_residual = std::max(proj_residual,
                             std::abs(m.trace() - cplx(4.0 / 16.0, 0.0)));
  }
  list.add("teleport POVM is the Bell measurement",
           completeness <= 1e-9 && bell && proj_residual <= 1e-9,
           json{{"completeness_residual", completeness},
                {"distinct_projectors", distinct.size()},
                {"projector_residual", proj_residual}});

  std::vector<ChannelMap> targets = sample_channels(w, w, seed, 20, nullptr);
  std::vector<DensityMatrix> states = sample_states(2, seed, 20, nullptr);
  const VerifyReport vt = verify_processor(tp, targets, states);
  list.add("teleportation implements 20 sampled covariant channels exactly",
           tp.d_p == 4 && vt.max_error <= 1e-9,
           json{{"d_P", tp.d_p}, {"max_error", vt.max_error}});

  double entangled = 0.0;
  for (int col = 0; col < 4; ++col) {
    const ComplexMatrix psi = basis.S.block(0, col, 4, 1);
    ComplexMatrix marg = partial_trace(psi * psi.adjoint(), {2, 2}, 0);
    marg -= 0.5 * ComplexMatrix::identity(2);
    entangled = std::max(entangled, marg.max_abs());
  }
  list.add("adapted basis vectors are maximally entangled (Bell up to phase)",
           entangled <= 1e-9, json{{"marginal_residual", entangled}});

  const std::vector<ChannelMap> extremes = derive_extremes_abelian(w, basis);
  Processor mp = build_mp_processor(extremes);
  const VerifyReport vm = verify_processor(mp, targets, states);
  list.add("measure-and-prepare processor with d_P = 4 is exact",
           mp.d_p == 4 && vm.max_error <= 1e-9,
           json{{"d_P", mp.d_p}, {"max_error", vm.max_error}});

  double offdiag = 0.0;
  for (const ChannelMap& t : targets) {
    const ComplexMatrix rot = basis.S.adjoint() * t.choi.m * basis.S;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        if (i != j) offdiag = std::max(offdiag, std::abs(rot(i, j)));
  }
  list.add("covariant chois are diagonal in the Bell basis", offdiag <= 1e-9,
           json{{"offdiag", offdiag}});

  return finish_demo("pauli", seed, list);
}

CmdResult demo_depolarizing(uint64_t seed) {
  CheckList list;
  const int d = 2;

  // 1. family form and simplex endpoints
  const ComplexMatrix omega = maximally_entangled_state(d);
  double family = 0.0;
  for (double a : {0.0, 0.3, 0.7, 1.0, 4.0 / 3.0}) {
    const ChannelMap t = depolarizing_channel(d, a);
    // apply form: T(rho) = a tr(rho) 1/d + (1-a) rho on matrix units
    ComplexMatrix choi(d * d, d * d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        ComplexMatrix tout(d, d);
        if (i == j)
          for (int r = 0; r < d; ++r) tout(r, r) += a / d;
        tout += (1.0 - a) * ComplexMatrix::unit(d, i, j);
        for (int r = 0; r < d; ++r)
          for (int c = 0; c < d; ++c)
            choi(i * d + r, j * d + c) = tout(r, c) / static_cast<double>(d);
      }
    family = std::max(family, max_abs_diff(choi, t.choi.m));
  }
  const double end0 =
      max_abs_diff(depolarizing_channel(d, 0.0).choi.m, omega);
  ComplexMatrix other = ComplexMatrix::identity(d * d) - omega;
  other *= cplx(1.0 / (d * d - 1.0), 0.0);
  const double end1 =
      max_abs_diff(depolarizing_channel(d, 4.0 / 3.0).choi.m, other);
  list.add("choi family matches the closed form; endpoints are the extremes",
           family <= 1e-12 && end0 <= 1e-12 && end1 <= 1e-12,
           json{{"family_residual", family},
                {"endpoint_residuals", json::array({end0, end1})}});

  // 2. unitary covariance of the family
  Prng rng(seed + 77);
  double cov = 0.0;
  const ChannelMap mid = depolarizing_channel(d, 0.7);
  for (int i = 0; i < 20; ++i) {
    const ComplexMatrix u = random_unitary(d, rng);
    cov = std::max(cov, covariance_residual(mid.choi.m, u, u));
  }
  list.add("depolarizing(0.7) commutes with conj(u) (x) u for 20 sampled u",
           cov <= 1e-9, json{{"residual", cov}});

  // 3. measure-and-prepare processor over the two extremes is exact
  const std::vector<ChannelMap> extremes = {
      identity_channel(d), depolarizing_channel(d, 4.0 / 3.0)};
  Processor mp = build_mp_processor(extremes);
  std::vector<ChannelMap> targets;
  for (double a : {0.0, 0.25, 0.5, 0.75, 1.0, 1.25, 4.0 / 3.0})
    targets.push_back(depolarizing_channel(d, a));
  std::vector<DensityMatrix> states = sample_states(d, seed, 20, nullptr);
  const VerifyReport vm = verify_processor(mp, targets, states);
  list.add("measure-and-prepare with d_P = 2 implements the family exactly",
           mp.d_p == 2 && vm.max_error <= 1e-9,
           json{{"d_P", mp.d_p}, {"max_error", vm.max_error}});

  // 4. a channel outside the segment is rejected with a residual
  bool rejected = false;
  std::string note;
  try {
    mp.program_for(werner_holevo_channel(d));
  } catch (const error& e) {
    rejected = true;
    note = e.what();
  }
  list.add("channel outside the segment is rejected by the program solver",
           rejected, json{{"note", note}});

  // 5. purified program register sizes
  const PurifiedDimBounds pd = purified_dim_bounds(d, d, mp.d_p);
  Processor pure = purify_program(mp);
  const VerifyReport vp = verify_processor(pure, targets, states);
  list.add("purified programs use d_P^2 = 4 and stay exact",
           pure.d_p == 4 && pd.naive == 4 && vp.max_error <= 1e-9,
           json{{"d_P", pure.d_p},
                {"naive", pd.naive},
                {"refined", pd.refined},
                {"max_error", vp.max_error}});

  return finish_demo("depolarizing", seed, list);
}

}  // namespace

double default_tol_from_env() {
  const char* v = std::getenv("COVPROC_TOL");
  if (!v) return kDefaultTol;
  char* end = nullptr;
  const double tol = std::strtod(v, &end);
  if (end == v || tol <= 0.0 || tol > 1.0) return kDefaultTol;
  return tol;
}

std::string render_report(const CmdResult& result) {
  if (!result.csv.empty()) return result.csv;
  return result.report.dump(2) + "\n";
}

CmdResult cmd_decompose(const RunConfig& cfg) {
  try {
    const Resolved r = resolve(cfg);
    const AdaptedBasis basis =
        adapted_basis(r.u(), r.v(), r.sys.irreps, cfg.tol);
    const BlockStructure& bs = basis.structure;

    ComplexMatrix gram = basis.S.adjoint() * basis.S;
    for (int i = 0; i < gram.rows(); ++i) gram(i, i) -= 1.0;

    CmdResult res;
    res.report = header_json(r);
    res.report["K"] = bs.K;
    res.report["blocks"] = blocks_json(bs);
    res.report["d_c"] = bs.d_c;
    res.report["d_n"] = bs.d_n;
    res.report["total"] = bs.total;
    res.report["abelian"] = is_abelian(bs);
    res.report["adapted_basis"] =
        json{{"unitarity_residual", gram.max_abs()},
             {"block_diag_residual", block_diagonalization_residual(basis)}};
    if (cfg.dump_choi) res.report["basis_matrix"] = matrix_to_json(basis.S);
    return res;
  } catch (const error& e) {
    return validation_failure(e.what());
  }
}

CmdResult cmd_build(const RunConfig& cfg, const std::string& kind) {
  try {
    const Resolved r = resolve(cfg);
    Processor p = build_processor(r, cfg, kind);

    CmdResult res;
    res.report = header_json(r);
    res.report["kind"] = p.kind;
    res.report["d1"] = p.d1;
    res.report["d2"] = p.d2;
    res.report["d_P"] = p.d_p;
    if (p.povm)
      res.report["povm"] = json{
          {"outcomes", p.povm->elements.size()},
          {"completeness_residual", p.povm->completeness_residual()}};
    if (p.basis) {
      res.report["blocks"] = blocks_json(p.basis->structure);
      res.report["d_c"] = p.basis->structure.d_c;
      res.report["d_n"] = p.basis->structure.d_n;
    }
    if (!p.mp_extremes.empty())
      res.report["extremes"] = p.mp_extremes.size();
    const PurifiedDimBounds pd = purified_dim_bounds(p.d1, p.d2, p.d_p);
    res.report["purified_dim"] =
        json{{"naive", pd.naive}, {"refined", pd.refined}};
    if (const auto choi = materialize_choi(p)) {
      const CptpReport cr = is_cptp_choi(*choi, p.d1 * p.d_p, p.d2, cfg.tol);
      res.report["process_cptp"] = json{{"valid", cr.valid},
                                        {"min_eig", cr.min_eig},
                                        {"trace_residual", cr.trace_residual},
                                        {"marginal_residual", cr.marginal_residual}};
      if (cfg.dump_choi) res.report["choi"] = matrix_to_json(*choi);
    }
    return res;
  } catch (const error& e) {
    return validation_failure(e.what());
  }
}

CmdResult cmd_verify(const RunConfig& cfg, const std::string& kind,
                     int n_channels, int n_states) {
  try {
    RunConfig effective = cfg;
    std::string effective_kind = kind;
    if (!cfg.processor_path.empty()) {
      std::ifstream in(cfg.processor_path);
      if (!in) throw error("cannot open processor artifact: " + cfg.processor_path);
      json artifact;
      try {
        in >> artifact;
      } catch (const std::exception& e) {
        throw error("processor artifact parse error: " + std::string(e.what()));
      }
      for (const char* field : {"group", "u", "v", "kind"})
        if (!artifact.contains(field))
          throw error(std::string("processor artifact: missing field '") +
                      field + "'");
      effective.group_source = artifact.at("group").get<std::string>();
      effective.u_label = artifact.at("u").get<std::string>();
      effective.v_label = artifact.at("v").get<std::string>();
      effective_kind = artifact.at("kind").get<std::string>();
    }
    if (effective_kind.empty())
      throw error("verify: processor kind required (--kind or --processor)");

    const Resolved r = resolve(effective);
    Processor p = build_processor(r, effective, effective_kind);

    std::vector<uint64_t> channel_seeds, state_seeds;
    const std::vector<ChannelMap> targets =
        sample_channels(r.u(), r.v(), cfg.seed, n_channels, &channel_seeds);
    const std::vector<DensityMatrix> states =
        sample_states(p.d1, cfg.seed, n_states, &state_seeds);
    const VerifyReport vr = verify_processor(p, targets, states);

    CmdResult res;
    res.report = header_json(r);
    res.report["kind"] = p.kind;
    res.report["d_P"] = p.d_p;
    res.report["seeds"] = json{{"base", cfg.seed},
                               {"channels", channel_seeds},
                               {"states", state_seeds}};
    json targets_json = json::array();
    for (const TargetCheck& t : vr.targets) {
      json tj{{"index", t.index},
              {"max_state_error", finite_or(t.max_state_error)},
              {"epsilon_bounds",
               json::array({finite_or(t.choi_lo), finite_or(t.choi_hi)})}};
      if (!t.program_ok) tj["note"] = t.note;
      targets_json.push_back(std::move(tj));
    }
    res.report["targets"] = std::move(targets_json);
    res.report["max_error"] = finite_or(vr.max_error);
    res.report["epsilon_bounds"] = json::array(
        {finite_or(vr.max_choi_lo), finite_or(vr.max_choi_hi)});
    const bool pass = vr.max_error <= std::max(cfg.tol, 1e-12);
    res.report["pass"] = pass;
    res.exit_code = pass ? kExitOk : kExitCheckFailure;
    return res;
  } catch (const error& e) {
    return validation_failure(e.what());
  }
}

CmdResult cmd_bounds(const RunConfig& cfg, const std::vector<double>& eps_list) {
  try {
    const Resolved r = resolve(cfg);
    const BlockStructure bs = block_structure(r.u(), r.v(), r.sys.irreps);

    CmdResult res;
    res.report = header_json(r);
    res.report["d_c"] = bs.d_c;
    res.report["d_n"] = bs.d_n;
    json rows = json::array();
    std::string csv = "epsilon,d_c,d_n,lower,upper,exact\n";
    char line[256];
    for (double eps : eps_list) {
      const double lower = lower_bound(eps, bs);  // validates eps range
      json row{{"epsilon", eps},
               {"d_c", bs.d_c},
               {"d_n", bs.d_n},
               {"lower_bound", lower},
               {"lower_bound_ceil", static_cast<long long>(std::ceil(lower))}};
      std::string upper_csv = "n/a";
      if (eps > 0.0) {
        const double upper = upper_bound_net(eps, bs);
        row["upper_bound_net"] = upper;
        row["net_cardinality"] = net_cardinality(eps, bs.d_n);
        std::snprintf(line, sizeof(line), "%.17g", upper);
        upper_csv = line;
      } else {
        row["upper_bound_net"] = "n/a";
        row["net_cardinality"] = "n/a";
      }
      row["exact_dp"] = bs.d_c;
      rows.push_back(std::move(row));
      std::snprintf(line, sizeof(line), "%.17g,%d,%d,%.17g,%s,%d\n", eps,
                    bs.d_c, bs.d_n, lower, upper_csv.c_str(), bs.d_c);
      csv += line;
    }
    res.report["rows"] = std::move(rows);
    if (cfg.format == "csv") res.csv = csv;
    return res;
  } catch (const error& e) {
    return validation_failure(e.what());
  }
}

CmdResult cmd_demo(const std::string& name, uint64_t seed) {
  try {
    if (name == "a4") return demo_a4(seed);
    if (name == "pauli") return demo_pauli(seed);
    if (name == "depolarizing") return demo_depolarizing(seed);
    throw error("unknown demo '" + name +
                "' (expected a4, pauli or depolarizing)");
  } catch (const error& e) {
    return validation_failure(e.what());
  }
}

}  // namespace covproc::cli
