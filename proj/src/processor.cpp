#include "covproc/processor.hpp"

#include <cmath>
#include <limits>

#include "covproc/nnls.hpp"
#include "covproc/spectral.hpp"

namespace covproc {

namespace {

// (id_{da} (x) f)(z) for a linear map f on db x db blocks.
ComplexMatrix apply_on_second_factor(
    int da, int db_in, int db_out,
    const std::function<ComplexMatrix(const ComplexMatrix&)>& f,
    const ComplexMatrix& z) {
  ComplexMatrix out(da * db_out, da * db_out);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < da; ++j) {
      const ComplexMatrix blk_out =
          f(z.block(i * db_in, j * db_in, db_in, db_in));
      out.set_block(i * db_out, j * db_out, blk_out);
    }
  return out;
}

}  // namespace

double Povm::completeness_residual() const {
  if (elements.empty()) return 0.0;
  ComplexMatrix sum(elements.front().rows(), elements.front().cols());
  for (const ComplexMatrix& m : elements) sum += m;
  return trace_norm(sum - ComplexMatrix::identity(sum.rows()));
}

ComplexMatrix apply_processor(const Processor& p, const ComplexMatrix& x,
                              const ComplexMatrix& program) {
  if (x.rows() != p.d1 || x.cols() != p.d1)
    throw error("apply_processor: input must be d1 x d1");
  if (program.rows() != p.d_p || program.cols() != p.d_p)
    throw error("apply_processor: program must be d_P x d_P");
  return p.apply_full(tensor_product(x, program));
}

ComplexMatrix induced_choi(const Processor& p, const ComplexMatrix& program) {
  ComplexMatrix c(p.d1 * p.d2, p.d1 * p.d2);
  for (int i = 0; i < p.d1; ++i)
    for (int j = 0; j < p.d1; ++j) {
      const ComplexMatrix out =
          apply_processor(p, ComplexMatrix::unit(p.d1, i, j), program);
      for (int a = 0; a < p.d2; ++a)
        for (int b = 0; b < p.d2; ++b)
          c(i * p.d2 + a, j * p.d2 + b) = out(a, b) / static_cast<double>(p.d1);
    }
  return c;
}

std::optional<ComplexMatrix> materialize_choi(const Processor& p,
                                              int side_limit) {
  const int din = p.d1 * p.d_p;
  if (din * p.d2 > side_limit) return std::nullopt;
  if (p.explicit_choi) return *p.explicit_choi;
  ComplexMatrix c(din * p.d2, din * p.d2);
  for (int i = 0; i < din; ++i)
    for (int j = 0; j < din; ++j) {
      const ComplexMatrix out = p.apply_full(ComplexMatrix::unit(din, i, j));
      for (int a = 0; a < p.d2; ++a)
        for (int b = 0; b < p.d2; ++b)
          c(i * p.d2 + a, j * p.d2 + b) = out(a, b) / static_cast<double>(din);
    }
  return c;
}

CptpReport processor_cptp_report(const Processor& p, double tol,
                                 int side_limit) {
  std::optional<ComplexMatrix> c = materialize_choi(p, side_limit);
  if (!c) throw error("processor_cptp_report: register too large to materialize");
  return is_cptp_choi(*c, p.d1 * p.d_p, p.d2, tol);
}

double processor_covariance_residual(const Processor& p,
                                     const Representation& u,
                                     const Representation& v, int side_limit) {
  std::optional<ComplexMatrix> c = materialize_choi(p, side_limit);
  if (!c)
    throw error("processor_covariance_residual: register too large to materialize");
  const ComplexMatrix eye_p = ComplexMatrix::identity(p.d_p);
  double worst = 0.0;
  for (size_t g = 0; g < u.mats.size(); ++g) {
    const ComplexMatrix op = tensor_product(
        tensor_product(u.mats[g].conj(), eye_p), v.mats[g]);
    worst = std::max(worst, trace_norm(commutator(*c, op)));
  }
  return worst;
}

Processor build_teleport_processor(const Representation& u,
                                   const Representation& v, double tol) {
  if (u.group != v.group) throw error("build_teleport_processor: group mismatch");
  const int d1 = u.dim, d2 = v.dim;
  const int order = u.group->order;

  auto povm = std::make_shared<Povm>();
  const ComplexMatrix omega = maximally_entangled_state(d1);
  const ComplexMatrix eye1 = ComplexMatrix::identity(d1);
  const double weight = static_cast<double>(d1) * d1 / order;
  for (int g = 0; g < order; ++g) {
    ComplexMatrix m =
        sandwich(tensor_product(eye1, u.mats[static_cast<size_t>(g)].conj()), omega);
    m *= cplx(weight, 0.0);
    povm->elements.push_back(std::move(m));
  }
  const double completeness = povm->completeness_residual();
  if (completeness > std::max(tol, 1e-9))
    throw error("build_teleport_processor: POVM incomplete (residual " +
                std::to_string(completeness) + "); u must be irreducible");

  // precompute M_g (x) 1_B and the correction unitaries
  auto mg_ext = std::make_shared<std::vector<ComplexMatrix>>();
  auto vdag = std::make_shared<std::vector<ComplexMatrix>>();
  const ComplexMatrix eye_b = ComplexMatrix::identity(d2);
  for (int g = 0; g < order; ++g) {
    mg_ext->push_back(tensor_product(povm->elements[static_cast<size_t>(g)], eye_b));
    vdag->push_back(v.mats[static_cast<size_t>(g)].adjoint());
  }

  Processor p;
  p.kind = "teleport";
  p.d1 = d1;
  p.d2 = d2;
  p.d_p = d1 * d2;
  p.group = u.group;
  p.u_label = u.label;
  p.v_label = v.label;
  p.povm = povm;
  p.apply_full = [d1, d2, mg_ext, vdag](const ComplexMatrix& z) {
    if (z.rows() != d1 * d1 * d2)
      throw error("teleport processor: input side must be d1*d1*d2");
    ComplexMatrix out(d2, d2);
    for (size_t g = 0; g < mg_ext->size(); ++g) {
      const ComplexMatrix meas =
          partial_trace(z * (*mg_ext)[g], {d1 * d1, d2}, 1);
      out += sandwich((*vdag)[g], meas);
    }
    return out;
  };
  p.program_for = [d1, d2](const ChannelMap& t) {
    if (t.d1() != d1 || t.d2() != d2)
      throw error("teleport program: channel dimension mismatch");
    return t.choi.m;
  };
  return p;
}

Processor build_compressed_processor(const Representation& u,
                                     const Representation& v,
                                     const AdaptedBasis& basis, double tol) {
  Processor base = build_teleport_processor(u, v, tol);
  auto shared_basis = std::make_shared<AdaptedBasis>(basis);
  auto base_apply = base.apply_full;
  const int d1 = base.d1, d2 = base.d2;
  const int d_c = basis.structure.d_c;

  Processor p;
  p.kind = "compressed";
  p.d1 = d1;
  p.d2 = d2;
  p.d_p = d_c;
  p.group = base.group;
  p.u_label = base.u_label;
  p.v_label = base.v_label;
  p.povm = base.povm;
  p.basis = shared_basis;
  p.apply_full = [d1, d2, d_c, shared_basis, base_apply](const ComplexMatrix& z) {
    if (z.rows() != d1 * d_c)
      throw error("compressed processor: input side must be d1*d_c");
    const ComplexMatrix lifted = apply_on_second_factor(
        d1, d_c, d1 * d2,
        [&](const ComplexMatrix& y) { return embed_map(y, *shared_basis); }, z);
    return base_apply(lifted);
  };
  p.program_for = [shared_basis, d1, d2](const ChannelMap& t) {
    if (t.d1() != d1 || t.d2() != d2)
      throw error("compressed program: channel dimension mismatch");
    return compress_map(t.choi.m, *shared_basis);
  };
  return p;
}

Processor build_mp_processor(const std::vector<ChannelMap>& extremes,
                             bool pure_programs, double hull_tol) {
  if (extremes.empty()) throw error("build_mp_processor: no extreme channels");
  const int d1 = extremes.front().d1();
  const int d2 = extremes.front().d2();
  for (const ChannelMap& t : extremes)
    if (t.d1() != d1 || t.d2() != d2)
      throw error("build_mp_processor: extremes have mixed dimensions");
  const int k = static_cast<int>(extremes.size());

  auto chois = std::make_shared<std::vector<ComplexMatrix>>();
  for (const ChannelMap& t : extremes) chois->push_back(t.choi.m);

  Processor p;
  p.kind = "mp";
  p.d1 = d1;
  p.d2 = d2;
  p.d_p = k;
  p.mp_extremes = extremes;
  p.apply_full = [d1, d2, k, chois](const ComplexMatrix& z) {
    if (z.rows() != d1 * k)
      throw error("mp processor: input side must be d1*K");
    ComplexMatrix out(d2, d2);
    for (int e = 0; e < k; ++e) {
      ComplexMatrix y(d1, d1);
      for (int i = 0; i < d1; ++i)
        for (int j = 0; j < d1; ++j) y(i, j) = z(i * k + e, j * k + e);
      out += apply_choi((*chois)[static_cast<size_t>(e)], d1, d2, y);
    }
    return out;
  };
  p.program_for = [d1, d2, k, chois, pure_programs,
                   hull_tol](const ChannelMap& t) {
    if (t.d1() != d1 || t.d2() != d2)
      throw error("mp program: channel dimension mismatch");
    const int nn = d1 * d2;
    std::vector<std::vector<double>> cols;
    for (const ComplexMatrix& c : *chois) {
      std::vector<double> col;
      col.reserve(2 * static_cast<size_t>(nn) * nn);
      for (int i = 0; i < nn; ++i)
        for (int j = 0; j < nn; ++j) {
          col.push_back(c(i, j).real());
          col.push_back(c(i, j).imag());
        }
      cols.push_back(std::move(col));
    }
    std::vector<double> rhs;
    rhs.reserve(2 * static_cast<size_t>(nn) * nn);
    for (int i = 0; i < nn; ++i)
      for (int j = 0; j < nn; ++j) {
        rhs.push_back(t.choi.m(i, j).real());
        rhs.push_back(t.choi.m(i, j).imag());
      }
    NnlsResult sol = nnls(cols, rhs);
    if (sol.residual > hull_tol)
      throw error("mp program: target outside the convex hull (residual " +
                  std::to_string(sol.residual) + ")");
    double sum = 0.0;
    for (double v : sol.x) sum += v;
    if (std::abs(sum - 1.0) > 1e-6)
      throw error("mp program: decomposition weights do not sum to 1");
    ComplexMatrix prog(k, k);
    if (pure_programs) {
      ComplexMatrix psi(k, 1);
      for (int e = 0; e < k; ++e) psi(e, 0) = std::sqrt(sol.x[static_cast<size_t>(e)] / sum);
      prog = psi * psi.adjoint();
    } else {
      for (int e = 0; e < k; ++e) prog(e, e) = sol.x[static_cast<size_t>(e)] / sum;
    }
    return prog;
  };
  return p;
}

std::vector<ChannelMap> derive_extremes_abelian(const Representation& u,
                                                const AdaptedBasis& basis) {
  if (!is_abelian(basis.structure))
    throw error(
        "derive_extremes_abelian: commutant is non-abelian (a multiplicity "
        "block exceeds 1); use the teleport or compressed builder");
  if (!is_irreducible(u))
    throw error("derive_extremes_abelian: u must be irreducible");
  std::vector<ChannelMap> out;
  const int d_c = basis.structure.d_c;
  for (int kk = 0; kk < d_c; ++kk) {
    const ComplexMatrix c = embed_map(ComplexMatrix::unit(d_c, kk, kk), basis);
    out.push_back(channel_from_choi(c, basis.structure.d1, basis.structure.d2));
  }
  return out;
}

Processor twirl_processor(const Processor& p, const Representation& u,
                          const Representation& v) {
  if (u.group != v.group) throw error("twirl_processor: group mismatch");
  if (p.d1 != u.dim || p.d2 != v.dim)
    throw error("twirl_processor: dimension mismatch");
  auto base = std::make_shared<Processor>(p);
  auto u_ext = std::make_shared<std::vector<ComplexMatrix>>();
  auto vdag = std::make_shared<std::vector<ComplexMatrix>>();
  const ComplexMatrix eye_p = ComplexMatrix::identity(p.d_p);
  for (size_t g = 0; g < u.mats.size(); ++g) {
    u_ext->push_back(tensor_product(u.mats[g], eye_p));
    vdag->push_back(v.mats[g].adjoint());
  }
  const double w = u.group->haar_weight();

  Processor q;
  q.kind = "twirled";
  q.d1 = p.d1;
  q.d2 = p.d2;
  q.d_p = p.d_p;
  q.group = u.group;
  q.u_label = u.label;
  q.v_label = v.label;
  q.povm = p.povm;
  q.basis = p.basis;
  q.mp_extremes = p.mp_extremes;
  q.apply_full = [base, u_ext, vdag, w](const ComplexMatrix& z) {
    ComplexMatrix out;
    for (size_t g = 0; g < u_ext->size(); ++g) {
      const ComplexMatrix term =
          sandwich((*vdag)[g], base->apply_full(sandwich((*u_ext)[g], z)));
      if (g == 0)
        out = term;
      else
        out += term;
    }
    out *= cplx(w, 0.0);
    return out;
  };
  q.program_for = base->program_for;

  // Twirling commutes with taking the Choi matrix, so when the base Choi is
  // available (or cheap), carry the twirled Choi along explicitly.
  if (const auto base_choi = materialize_choi(*base)) {
    const int order = u.group->order;
    std::vector<ComplexMatrix> reps;
    std::vector<const cplx*> ptrs;
    const std::vector<double> weights(static_cast<size_t>(order), w);
    for (int g = 0; g < order; ++g) {
      reps.push_back(tensor_product((*u_ext)[static_cast<size_t>(g)].conj(),
                                    v.mats[static_cast<size_t>(g)]));
      ptrs.push_back(reps.back().data());
    }
    ComplexMatrix twirled(base_choi->rows(), base_choi->cols());
    kernels::sandwich_sum(ptrs.data(), weights.data(), order,
                          base_choi->data(), twirled.data(),
                          base_choi->rows());
    q.explicit_choi = std::make_shared<const ComplexMatrix>(std::move(twirled));
  }
  return q;
}

Processor purify_program(const Processor& p) {
  auto base = std::make_shared<Processor>(p);
  const int d_p = p.d_p;

  Processor q;
  q.kind = "purified";
  q.d1 = p.d1;
  q.d2 = p.d2;
  q.d_p = d_p * d_p;
  q.group = p.group;
  q.u_label = p.u_label;
  q.v_label = p.v_label;
  q.povm = p.povm;
  q.basis = p.basis;
  q.mp_extremes = p.mp_extremes;
  q.apply_full = [base, d_p](const ComplexMatrix& z) {
    if (z.rows() != base->d1 * d_p * d_p)
      throw error("purified processor: input side must be d1*d_P^2");
    // trace out the purifying factor, then run the base processor
    return base->apply_full(partial_trace(z, {base->d1 * d_p, d_p}, 0));
  };
  q.program_for = [base, d_p](const ChannelMap& t) {
    const ComplexMatrix pi = base->program_for(t);
    const ComplexMatrix root = psd_sqrt(pi);
    ComplexMatrix psi(d_p * d_p, 1);
    for (int i = 0; i < d_p; ++i)
      for (int j = 0; j < d_p; ++j) psi(i * d_p + j, 0) = root(i, j);
    return ComplexMatrix(psi * psi.adjoint());
  };
  return q;
}

PurifiedDimBounds purified_dim_bounds(int d1, int d2, int d_p) {
  PurifiedDimBounds b;
  b.naive = d_p * d_p;
  const int caratheodory = d1 * d1 * (d2 * d2 - 1) + 1;
  b.refined = d_p * std::min(caratheodory, d_p);
  return b;
}

Processor processor_from_choi(const ComplexMatrix& choi, int d1, int d_p,
                              int d2) {
  const int din = d1 * d_p;
  if (!choi.square() || choi.rows() != din * d2)
    throw error("processor_from_choi: side must be d1*d_P*d2");
  auto c = std::make_shared<const ComplexMatrix>(choi);
  Processor p;
  p.kind = "choi";
  p.d1 = d1;
  p.d2 = d2;
  p.d_p = d_p;
  p.explicit_choi = c;
  p.apply_full = [c, din, d2](const ComplexMatrix& z) {
    return apply_choi(*c, din, d2, z);
  };
  p.program_for = [](const ChannelMap&) -> ComplexMatrix {
    throw error("choi-backed processor has no program assignment");
  };
  return p;
}

VerifyReport verify_processor(const Processor& p,
                              const std::vector<ChannelMap>& targets,
                              const std::vector<DensityMatrix>& states) {
  VerifyReport report;
  report.kind = p.kind;
  report.d_p = p.d_p;
  for (size_t t = 0; t < targets.size(); ++t) {
    TargetCheck check;
    check.index = static_cast<int>(t);
    ComplexMatrix program;
    try {
      program = p.program_for(targets[t]);
    } catch (const error& e) {
      check.program_ok = false;
      check.note = e.what();
      check.max_state_error = std::numeric_limits<double>::infinity();
      check.choi_lo = check.choi_hi = std::numeric_limits<double>::infinity();
      report.targets.push_back(std::move(check));
      report.max_error = std::numeric_limits<double>::infinity();
      continue;
    }
    for (const DensityMatrix& rho : states) {
      const ComplexMatrix got = apply_processor(p, rho.matrix(), program);
      const ComplexMatrix want =
          apply_choi(targets[t].choi.m, p.d1, p.d2, rho.matrix());
      check.max_state_error =
          std::max(check.max_state_error, 0.5 * trace_norm(got - want));
    }
    const ComplexMatrix cind = induced_choi(p, program);
    const double lo = 0.5 * trace_norm(cind - targets[t].choi.m);
    check.choi_lo = lo;
    check.choi_hi = p.d1 * lo;
    report.max_error = std::max(report.max_error, check.max_state_error);
    report.max_choi_lo = std::max(report.max_choi_lo, check.choi_lo);
    report.max_choi_hi = std::max(report.max_choi_hi, check.choi_hi);
    report.targets.push_back(std::move(check));
  }
  return report;
}

}  // namespace covproc
