#include <doctest.h>

#include <cmath>
#include <functional>

#include "covproc/catalog.hpp"
#include "covproc/channel.hpp"
#include "covproc/spectral.hpp"
#include "test_util.hpp"

using namespace covproc;

namespace {

ComplexMatrix choi_of_linear_map(
    int din, int dout,
    const std::function<ComplexMatrix(const ComplexMatrix&)>& f) {
  ComplexMatrix c(din * dout, din * dout);
  for (int i = 0; i < din; ++i)
    for (int j = 0; j < din; ++j) {
      const ComplexMatrix out = f(ComplexMatrix::unit(din, i, j));
      for (int a = 0; a < dout; ++a)
        for (int b = 0; b < dout; ++b)
          c(i * dout + a, j * dout + b) = out(a, b) / static_cast<double>(din);
    }
  return c;
}

}  // namespace

TEST_CASE("block structure of the catalog cases") {
  const GroupSystem& a4 = catalog_group("a4");
  const Representation& theta = a4.irreps.by_label("theta");
  const BlockStructure bs = block_structure(theta, theta, a4.irreps);
  REQUIRE(bs.K == 4);
  CHECK(bs.blocks[0].b == 1);
  CHECK(bs.blocks[0].n == 1);
  CHECK(bs.blocks[1].b == 1);
  CHECK(bs.blocks[2].b == 1);
  CHECK(bs.blocks[3].label == "theta");
  CHECK(bs.blocks[3].b == 3);
  CHECK(bs.blocks[3].n == 2);
  CHECK(bs.d_c == 5);
  CHECK(bs.d_n == 7);
  CHECK(bs.total == 9);
  CHECK(!is_abelian(bs));

  const GroupSystem& p2 = catalog_group("pauli2");
  const Representation& w = p2.irreps.by_label("w");
  const BlockStructure pbs = block_structure(w, w, p2.irreps);
  CHECK(pbs.K == 4);
  for (const Block& b : pbs.blocks) {
    CHECK(b.b == 1);
    CHECK(b.n == 1);
  }
  CHECK(pbs.d_c == 4);
  CHECK(pbs.d_n == 4);
  CHECK(is_abelian(pbs));

  const GroupSystem& z1 = catalog_group("z1");
  const BlockStructure tbs =
      block_structure(z1.irreps.irreps[0], z1.irreps.irreps[0], z1.irreps);
  CHECK(tbs.K == 1);
  CHECK(tbs.blocks[0].b == 1);
  CHECK(tbs.blocks[0].n == 1);
  CHECK(is_abelian(tbs));
}

TEST_CASE("dimension accounting holds for every catalog pair") {
  for (const std::string& name : catalog_names()) {
    const GroupSystem& sys = catalog_group(name);
    for (const Representation& u : sys.irreps.irreps) {
      if (!is_irreducible(u)) continue;
      for (const Representation& v : sys.irreps.irreps) {
        const BlockStructure bs = block_structure(u, v, sys.irreps);
        CHECK(bs.total == u.dim * v.dim);
        CHECK(bs.d_c <= bs.d_n);
        CHECK(bs.d_n <= bs.total * bs.total);
      }
    }
  }
}

TEST_CASE("adapted basis block-diagonalizes the tensor representation") {
  const GroupSystem& a4 = catalog_group("a4");
  const Representation& theta = a4.irreps.by_label("theta");
  const AdaptedBasis basis = adapted_basis(theta, theta, a4.irreps);
  CHECK(basis.S.is_unitary(1e-12));
  CHECK(block_diagonalization_residual(basis) <= 1e-9);

  SUBCASE("trivial group gives the identity basis") {
    const GroupSystem& z1 = catalog_group("z1");
    const AdaptedBasis tb =
        adapted_basis(z1.irreps.irreps[0], z1.irreps.irreps[0], z1.irreps);
    CHECK(approx_equal(tb.S, ComplexMatrix::identity(1), 1e-12));
  }

  SUBCASE("pauli basis vectors are maximally entangled") {
    const GroupSystem& p2 = catalog_group("pauli2");
    const Representation& w = p2.irreps.by_label("w");
    const AdaptedBasis pb = adapted_basis(w, w, p2.irreps);
    for (int col = 0; col < 4; ++col) {
      const ComplexMatrix psi = pb.S.block(0, col, 4, 1);
      const ComplexMatrix marg = partial_trace(psi * psi.adjoint(), {2, 2}, 0);
      CHECK(max_abs_diff(marg, 0.5 * ComplexMatrix::identity(2)) <= 1e-10);
    }
  }

  SUBCASE("residual across further catalog pairs") {
    for (const std::string& name : {"s3", "q8", "pauli2", "wh3"}) {
      const GroupSystem& sys = catalog_group(name);
      for (const Representation& u : sys.irreps.irreps) {
        if (!is_irreducible(u) || u.dim == 1) continue;
        const AdaptedBasis b = adapted_basis(u, u, sys.irreps);
        CHECK(block_diagonalization_residual(b) <= 1e-9);
      }
    }
  }
}

TEST_CASE("commutant projection") {
  const GroupSystem& a4 = catalog_group("a4");
  const Representation& theta = a4.irreps.by_label("theta");
  const Representation w = bar_tensor_rep(theta, theta);
  const AdaptedBasis basis = adapted_basis(theta, theta, a4.irreps);

  SUBCASE("commutant elements are fixed points") {
    Prng rng(21);
    ComplexMatrix y = random_hermitian(5, rng);
    y *= cplx(1.0 / y.trace().real(), 0.0);
    const ComplexMatrix x = embed_map(y, basis);
    CHECK(max_abs_diff(project_to_commutant(x, w), x) <= 1e-12);
  }

  SUBCASE("the maximally entangled state is invariant under bar(u) (x) u") {
    const ComplexMatrix omega9 = maximally_entangled_state(3);
    CHECK(max_abs_diff(project_to_commutant(omega9, w), omega9) <= 1e-12);

    const GroupSystem& p2 = catalog_group("pauli2");
    const Representation& wp = p2.irreps.by_label("w");
    const ComplexMatrix omega4 = maximally_entangled_state(2);
    CHECK(max_abs_diff(
              project_to_commutant(omega4, bar_tensor_rep(wp, wp)), omega4) <=
          1e-12);
  }

  SUBCASE("idempotent on random inputs") {
    Prng rng(22);
    for (int i = 0; i < 20; ++i) {
      const ComplexMatrix x = random_ginibre(9, rng);
      const ComplexMatrix once = project_to_commutant(x, w);
      CHECK(trace_norm(project_to_commutant(once, w) - once) <= 1e-10);
      CHECK(std::abs(once.trace() - x.trace()) <= 1e-10);
    }
  }

  SUBCASE("fixed point space has complex dimension d_n = 7") {
    Prng rng(23);
    const int samples = 50;
    ComplexMatrix stacked(81, samples);
    for (int s = 0; s < samples; ++s) {
      const ComplexMatrix t = project_to_commutant(random_hermitian(9, rng), w);
      for (int i = 0; i < 9; ++i)
        for (int j = 0; j < 9; ++j) stacked(i * 9 + j, s) = t(i, j);
    }
    CHECK(numerical_rank(stacked, 1e-7) == 7);
  }
}

TEST_CASE("compress and embed") {
  const GroupSystem& a4 = catalog_group("a4");
  const Representation& theta = a4.irreps.by_label("theta");
  const AdaptedBasis basis = adapted_basis(theta, theta, a4.irreps);
  const BlockStructure& bs = basis.structure;

  SUBCASE("trace preservation and block bookkeeping") {
    const ChannelMap t = random_covariant_channel(theta, theta, 3);
    const ComplexMatrix y = compress_map(t.choi.m, basis);
    CHECK(std::abs(y.trace() - cplx(1.0, 0.0)) <= 1e-12);

    // extreme state concentrated on the phi0 block compresses to that slot
    const ComplexMatrix extreme =
        embed_map(ComplexMatrix::unit(bs.d_c, 0, 0), basis);
    CHECK(max_abs_diff(compress_map(extreme, basis),
                       ComplexMatrix::unit(bs.d_c, 0, 0)) <= 1e-12);
  }

  SUBCASE("the 1-design average maps to the maximally mixed program") {
    ComplexMatrix avg(9, 9);
    for (int slot = 0; slot < bs.d_c; ++slot)
      avg += embed_map(ComplexMatrix::unit(bs.d_c, slot, slot), basis);
    avg *= cplx(1.0 / bs.d_c, 0.0);
    CHECK(max_abs_diff(compress_map(avg, basis),
                       (1.0 / bs.d_c) * ComplexMatrix::identity(bs.d_c)) <=
          1e-12);

    // and the embedded maximally mixed program is the block-normalized
    // identity in the adapted frame
    const ComplexMatrix lifted =
        embed_map((1.0 / bs.d_c) * ComplexMatrix::identity(bs.d_c), basis);
    ComplexMatrix frame = basis.S.adjoint() * lifted * basis.S;
    for (size_t k = 0; k < bs.blocks.size(); ++k) {
      const Block& blk = bs.blocks[k];
      for (int i = 0; i < blk.b * blk.n; ++i) {
        const int row = basis.col_offset[k] + i;
        CHECK(std::abs(frame(row, row) -
                       cplx(1.0 / (blk.b * bs.d_c), 0.0)) <= 1e-12);
        frame(row, row) = 0.0;
      }
    }
    CHECK(frame.max_abs() <= 1e-12);  // nothing off the block diagonals
  }

  SUBCASE("embed inverts compress on covariant states") {
    for (uint64_t seed = 1; seed <= 20; ++seed) {
      const ChannelMap t = random_covariant_channel(theta, theta, seed);
      const ComplexMatrix roundtrip =
          embed_map(compress_map(t.choi.m, basis), basis);
      CHECK(trace_norm(roundtrip - t.choi.m) <= 1e-10);
    }
  }

  SUBCASE("compress inverts embed on block-diagonal programs") {
    Prng rng(24);
    for (int i = 0; i < 20; ++i) {
      // block-diagonal density on H_P
      ComplexMatrix y(bs.d_c, bs.d_c);
      double trace = 0.0;
      for (size_t k = 0; k < bs.blocks.size(); ++k) {
        const ComplexMatrix g = random_ginibre(bs.blocks[k].n, rng);
        const ComplexMatrix blockmat = g * g.adjoint();
        y.set_block(basis.compressed_offset[k], basis.compressed_offset[k],
                    blockmat);
        trace += blockmat.trace().real();
      }
      y *= cplx(1.0 / trace, 0.0);
      CHECK(trace_norm(compress_map(embed_map(y, basis), basis) - y) <= 1e-10);
    }
  }

  SUBCASE("both maps are channels") {
    const ComplexMatrix c_compress = choi_of_linear_map(
        9, bs.d_c, [&](const ComplexMatrix& x) { return compress_map(x, basis); });
    const CptpReport r1 = is_cptp_choi(c_compress, 9, bs.d_c, 1e-9);
    CHECK(r1.valid);

    const ComplexMatrix c_embed = choi_of_linear_map(
        bs.d_c, 9, [&](const ComplexMatrix& y) { return embed_map(y, basis); });
    const CptpReport r2 = is_cptp_choi(c_embed, bs.d_c, 9, 1e-9);
    CHECK(r2.valid);
  }

  SUBCASE("dimension mismatches are rejected") {
    CHECK_THROWS_AS(compress_map(ComplexMatrix::identity(4), basis), error);
    CHECK_THROWS_AS(embed_map(ComplexMatrix::identity(9), basis), error);
  }
}
