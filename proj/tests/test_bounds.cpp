#include <doctest.h>

#include <cmath>
#include <functional>

#include "covproc/bounds.hpp"
#include "covproc/catalog.hpp"
#include "covproc/spectral.hpp"
#include "test_util.hpp"

using namespace covproc;

namespace {

struct A4Setup {
  const GroupSystem& sys;
  const Representation& theta;
  AdaptedBasis basis;

  A4Setup()
      : sys(catalog_group("a4")),
        theta(sys.irreps.by_label("theta")),
        basis(adapted_basis(theta, theta, sys.irreps)) {}
};

}  // namespace

TEST_CASE("binary entropy") {
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(1.0) == 0.0);
  CHECK(binary_entropy(0.5) == 1.0);
  // closed form: h(1/4) = 2 - (3/4) log2 3
  const long double want = 2.0L - 0.75L * std::log2(3.0L);
  CHECK(std::abs(binary_entropy(0.25) - static_cast<double>(want)) <= 1e-14);
  CHECK_THROWS_AS(binary_entropy(-0.1), error);
  CHECK_THROWS_AS(binary_entropy(1.1), error);
}

TEST_CASE("holevo information") {
  SUBCASE("orthogonal pure states carry log2 n bits") {
    for (int n : {2, 3, 5}) {
      Ensemble e;
      for (int i = 0; i < n; ++i) {
        e.probs.push_back(1.0 / n);
        e.states.push_back(
            DensityMatrix::unchecked(ComplexMatrix::unit(n, i, i)));
      }
      CHECK(holevo_information(e) ==
            doctest::Approx(std::log2(n)).epsilon(1e-12));
    }
  }

  SUBCASE("identical states carry nothing") {
    Prng rng(51);
    const DensityMatrix rho = random_density(4, rng);
    Ensemble e;
    for (int i = 0; i < 3; ++i) {
      e.probs.push_back(1.0 / 3);
      e.states.push_back(rho);
    }
    CHECK(std::abs(holevo_information(e)) <= 1e-12);
  }

  SUBCASE("nonnegative, bounded by log2 of the dimension") {
    Prng rng(52);
    for (int t = 0; t < 10; ++t) {
      Ensemble e;
      for (int i = 0; i < 4; ++i) {
        e.probs.push_back(0.25);
        e.states.push_back(random_density(5, rng));
      }
      const double chi = holevo_information(e);
      CHECK(chi >= -1e-12);
      CHECK(chi <= std::log2(5.0) + 1e-12);
    }
  }

  SUBCASE("validation") {
    Ensemble bad;
    bad.probs = {0.7, 0.7};
    bad.states = {DensityMatrix::unchecked(ComplexMatrix::identity(1)),
                  DensityMatrix::unchecked(ComplexMatrix::identity(1))};
    CHECK_THROWS_AS(holevo_information(bad), error);
  }
}

TEST_CASE("one-design ensemble on a4") {
  const A4Setup a4;
  const DesignEnsemble design = one_design_ensemble(a4.basis);
  REQUIRE(design.ensemble.states.size() == 5);
  for (double p : design.ensemble.probs) CHECK(p == doctest::Approx(0.2));

  SUBCASE("members are valid covariant choi states") {
    for (const ChannelMap& t : design.channels) {
      CHECK(is_cptp_choi(t.choi.m, 3, 3).valid);
      CHECK(is_covariant(t, a4.theta, a4.theta).covariant);
    }
  }

  SUBCASE("average state is the embedded maximally mixed program") {
    ComplexMatrix avg(9, 9);
    for (size_t i = 0; i < design.ensemble.states.size(); ++i)
      avg += design.ensemble.probs[i] * design.ensemble.states[i].matrix();
    const ComplexMatrix want = embed_map(
        (1.0 / 5.0) * ComplexMatrix::identity(5), a4.basis);
    CHECK(max_abs_diff(avg, want) <= 1e-12);
  }

  SUBCASE("compressed members are pure") {
    for (const ChannelMap& t : design.channels) {
      const HermitianEig e = eigh(compress_map(t.choi.m, a4.basis));
      CHECK(e.values.back() == doctest::Approx(1.0).epsilon(1e-10));
    }
  }

  SUBCASE("a single block yields the one-member ensemble") {
    const GroupSystem& z2 = catalog_group("z2");
    const Representation& sign = z2.irreps.by_label("chi1");
    const AdaptedBasis zb = adapted_basis(sign, sign, z2.irreps);
    const DesignEnsemble single = one_design_ensemble(zb);
    REQUIRE(single.ensemble.states.size() == 1);
    CHECK(single.ensemble.probs.front() == 1.0);
    CHECK(is_cptp_choi(single.channels.front().choi.m, 1, 1).valid);
  }

  SUBCASE("compressed-program ensemble carries log2 5 bits") {
    Ensemble programs;
    for (size_t i = 0; i < design.channels.size(); ++i) {
      programs.probs.push_back(design.ensemble.probs[i]);
      programs.states.push_back(DensityMatrix::unchecked(
          compress_map(design.channels[i].choi.m, a4.basis)));
    }
    CHECK(std::abs(holevo_information(programs) - std::log2(5.0)) <= 1e-6);
  }
}

TEST_CASE("lower bound formula") {
  const A4Setup a4;
  const BlockStructure& bs = a4.basis.structure;

  CHECK(lower_bound(0.0, bs) == 5.0);  // exactly d_c at eps = 0
  CHECK(lower_bound(0.5, bs) == doctest::Approx(0.25).epsilon(1e-15));

  // independent long-double evaluation at eps = 1/4
  const long double h = -(0.25L * std::log2(0.25L) + 0.75L * std::log2(0.75L));
  const long double want = std::pow(2.0L, -2.0L * h) * std::sqrt(5.0L);
  CHECK(std::abs(lower_bound(0.25, bs) - static_cast<double>(want)) <= 1e-12);

  CHECK_THROWS_AS(lower_bound(-0.1, bs), error);
  CHECK_THROWS_AS(lower_bound(1.0, bs), error);

  SUBCASE("continuity and monotonicity on [0, 1/2]") {
    // continuous at 0 (the entropy slope diverges, the value does not)
    CHECK(std::abs(lower_bound(1e-12, bs) - 5.0) <= 1e-9);
    // strictly decreasing on the grid
    double prev = lower_bound(0.0, bs);
    for (double eps = 0.01; eps <= 0.5; eps += 0.01) {
      const double cur = lower_bound(eps, bs);
      CHECK(cur < prev);
      prev = cur;
    }
    // small steps move the value very little away from the endpoint
    for (double eps : {0.01, 0.1, 0.25, 0.4})
      CHECK(std::abs(lower_bound(eps + 1e-6, bs) - lower_bound(eps, bs)) <=
            1e-3);
  }
}

TEST_CASE("net upper bound formula") {
  const A4Setup a4;
  const BlockStructure& bs = a4.basis.structure;  // d_n = 7

  CHECK(upper_bound_net(0.5, bs) == 78125.0);  // 5^7 exactly
  CHECK(net_cardinality(0.5, 1) == 5.0);
  CHECK(net_cardinality(0.25, 7) == doctest::Approx(std::pow(9.0, 7)));
  CHECK(upper_bound_net(0.25, bs) > upper_bound_net(0.5, bs));
  CHECK_THROWS_AS(upper_bound_net(0.0, bs), error);
  CHECK_THROWS_AS(upper_bound_net(1.0, bs), error);
}

TEST_CASE("holevo chain on the a4 processors") {
  const A4Setup a4;

  SUBCASE("compressed processor is tight") {
    Processor cp = build_compressed_processor(a4.theta, a4.theta, a4.basis);
    const ChainReport r = verify_lower_bound_chain(cp, a4.basis);
    CHECK(r.ok);
    CHECK(std::abs(r.chi_program - std::log2(5.0)) <= 1e-6);
    CHECK(std::abs(r.log2_dp - r.chi_program) <= 1e-6);  // log2 d_P = chi
    CHECK(std::abs(r.chi_compressed_exact - std::log2(5.0)) <= 1e-6);
    for (const ChainInequality& q : r.inequalities) CHECK(q.slack >= -1e-8);
  }

  SUBCASE("teleport processor has log2(9/5) slack") {
    Processor tp = build_teleport_processor(a4.theta, a4.theta);
    const ChainReport r = verify_lower_bound_chain(tp, a4.basis);
    CHECK(r.ok);
    CHECK(std::abs(r.chi_program - std::log2(5.0)) <= 1e-6);
    CHECK(std::abs((r.log2_dp - r.chi_program) - std::log2(9.0 / 5.0)) <=
          1e-6);
  }

  SUBCASE("single-block case collapses to zero") {
    const GroupSystem& z2 = catalog_group("z2");
    const Representation& sign = z2.irreps.by_label("chi1");
    const AdaptedBasis zb = adapted_basis(sign, sign, z2.irreps);
    Processor zp = build_compressed_processor(sign, sign, zb);
    const ChainReport r = verify_lower_bound_chain(zp, zb);
    CHECK(r.ok);
    CHECK(std::abs(r.chi_program) <= 1e-10);
    CHECK(std::abs(r.log2_dp) <= 1e-10);
    CHECK(std::abs(r.chi_compressed_exact) <= 1e-10);
  }
}

TEST_CASE("data processing inequality for the holevo information") {
  const A4Setup a4;
  const Representation w = bar_tensor_rep(a4.theta, a4.theta);
  Prng rng(53);
  for (int trial = 0; trial < 10; ++trial) {
    Ensemble e;
    for (int i = 0; i < 4; ++i) {
      e.probs.push_back(0.25);
      e.states.push_back(random_density(9, rng));
    }
    const double chi = holevo_information(e);

    auto apply_all = [&](const std::function<ComplexMatrix(const ComplexMatrix&)>& f) {
      Ensemble out;
      out.probs = e.probs;
      for (const DensityMatrix& s : e.states)
        out.states.push_back(DensityMatrix::unchecked(f(s.matrix())));
      return out;
    };

    const double chi_compress = holevo_information(
        apply_all([&](const ComplexMatrix& x) { return compress_map(x, a4.basis); }));
    CHECK(chi_compress <= chi + 1e-8);

    const double chi_pt = holevo_information(apply_all(
        [&](const ComplexMatrix& x) { return partial_trace(x, {3, 3}, 0); }));
    CHECK(chi_pt <= chi + 1e-8);

    const double chi_twirl = holevo_information(apply_all(
        [&](const ComplexMatrix& x) { return project_to_commutant(x, w); }));
    CHECK(chi_twirl <= chi + 1e-8);
  }
}

TEST_CASE("alicki-fannes-winter consistency on perturbed ensembles") {
  Prng rng(54);
  const int dim = 6;
  for (double delta : {0.01, 0.05}) {
    for (int trial = 0; trial < 5; ++trial) {
      Ensemble a, b;
      const DensityMatrix noise = random_density(dim, rng);
      for (int i = 0; i < 4; ++i) {
        const DensityMatrix rho = random_density(dim, rng);
        a.probs.push_back(0.25);
        a.states.push_back(rho);
        b.probs.push_back(0.25);
        b.states.push_back(DensityMatrix::unchecked(
            (1.0 - delta) * rho.matrix() + delta * noise.matrix()));
      }
      double eps = 0.0;
      for (size_t i = 0; i < a.states.size(); ++i)
        eps = std::max(eps, 0.5 * trace_norm(a.states[i].matrix() -
                                             b.states[i].matrix()));
      REQUIRE(eps < 0.5);
      const double gap =
          std::abs(holevo_information(a) - holevo_information(b));
      CHECK(gap <= 2.0 * eps * std::log2(dim) + 2.0 * binary_entropy(eps) +
                       1e-8);
    }
  }
}
