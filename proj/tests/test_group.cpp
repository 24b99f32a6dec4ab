#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "covproc/catalog.hpp"
#include "covproc/io.hpp"
#include "test_util.hpp"

using namespace covproc;

namespace {

// Independent character arithmetic for A4: the trace of a 4x4 permutation
// matrix is the number of fixed points, and theta is that action restricted
// to (1,1,1,1)^perp, so chi_theta(g) = fix(g) - 1.
std::vector<int> a4_fixed_points() {
  std::vector<std::vector<int>> perms;
  std::vector<int> p{0, 1, 2, 3};
  do {
    int swaps = 0;
    std::vector<int> q = p;
    for (size_t i = 0; i < q.size(); ++i)
      while (q[i] != static_cast<int>(i)) {
        std::swap(q[i], q[static_cast<size_t>(q[i])]);
        ++swaps;
      }
    if (swaps % 2 == 0) perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  std::vector<int> fix;
  for (const auto& perm : perms) {
    int f = 0;
    for (int i = 0; i < 4; ++i)
      if (perm[static_cast<size_t>(i)] == i) ++f;
    fix.push_back(f);
  }
  return fix;
}

}  // namespace

TEST_CASE("catalog groups validate and satisfy the dimension identity") {
  for (const std::string& name : catalog_names()) {
    const GroupSystem& sys = catalog_group(name);
    int dim_sq = 0;
    for (const Representation& r : sys.irreps.irreps) dim_sq += r.dim * r.dim;
    CHECK(dim_sq == sys.group->order);
    for (const Representation& r : sys.irreps.irreps) {
      const Character chi = character_of(r);
      CHECK(is_class_function(chi, 1e-10));
    }
  }
  CHECK(catalog_group("a4").irreps.by_label("theta").dim == 3);
  CHECK(catalog_group("pauli2").group->order == 16);
  CHECK(catalog_group("pauli2").irreps.irreps.size() == 10);
  CHECK(catalog_group("z3").irreps.irreps.size() == 3);
}

TEST_CASE("characters") {
  const GroupSystem& a4 = catalog_group("a4");
  const Representation& theta = a4.irreps.by_label("theta");

  const Character triv = character_of(a4.irreps.by_label("phi0"));
  for (const cplx& v : triv.values) CHECK(std::abs(v - cplx(1.0, 0.0)) <= 1e-14);

  const Character chi_theta = character_of(theta);
  CHECK(std::abs(chi_theta.values[static_cast<size_t>(a4.group->identity)] -
                 cplx(3.0, 0.0)) <= 1e-13);

  const Representation tt = bar_tensor_rep(theta, theta);
  const Character chi_tt = character_of(tt);
  CHECK(std::abs(chi_tt.values[static_cast<size_t>(a4.group->identity)] -
                 cplx(9.0, 0.0)) <= 1e-12);

  // chi_theta(g) = fix(g) - 1, independently of the matrix realization
  const std::vector<int> fix = a4_fixed_points();
  for (size_t g = 0; g < chi_theta.values.size(); ++g)
    CHECK(std::abs(chi_theta.values[g] - cplx(fix[g] - 1.0, 0.0)) <= 1e-12);
}

TEST_CASE("character inner products") {
  const GroupSystem& a4 = catalog_group("a4");
  const Representation& theta = a4.irreps.by_label("theta");

  const Character chi_theta = character_of(theta);
  CHECK(std::abs(char_inner(chi_theta, chi_theta) - cplx(1.0, 0.0)) <= 1e-12);

  const Character phi1 = character_of(a4.irreps.by_label("phi1"));
  const Character phi2 = character_of(a4.irreps.by_label("phi2"));
  CHECK(std::abs(char_inner(phi1, phi2)) <= 1e-12);

  // <chi, chi> for theta (x) theta: brute-force oracle (1/12) sum (fix-1)^4
  const std::vector<int> fix = a4_fixed_points();
  double oracle = 0.0;
  for (int f : fix) oracle += std::pow(f - 1.0, 4.0);
  oracle /= 12.0;
  CHECK(oracle == doctest::Approx(7.0));
  const Character chi_tt = character_of(tensor_rep(theta, theta));
  CHECK(std::abs(char_inner(chi_tt, chi_tt) - cplx(oracle, 0.0)) <= 1e-10);

  CHECK_THROWS_AS(
      char_inner(chi_theta, character_of(catalog_group("z3").irreps.irreps[0])),
      error);
}

TEST_CASE("multiplicities") {
  const GroupSystem& a4 = catalog_group("a4");
  const Representation& theta = a4.irreps.by_label("theta");

  SUBCASE("theta tensor theta decomposes as (1,1,1,2)") {
    const MultiplicityVector mv =
        multiplicities(bar_tensor_rep(theta, theta), a4.irreps);
    CHECK(mv.n == std::vector<int>{1, 1, 1, 2});

    // brute-force oracle from fixed-point counts: chi_W(g) = (fix-1)^2
    const std::vector<int> fix = a4_fixed_points();
    double n_phi0 = 0.0, n_theta = 0.0;
    for (int f : fix) {
      n_phi0 += std::pow(f - 1.0, 2.0);
      n_theta += (f - 1.0) * std::pow(f - 1.0, 2.0);
    }
    CHECK(n_phi0 / 12.0 == doctest::Approx(1.0));
    CHECK(n_theta / 12.0 == doctest::Approx(2.0));
  }

  SUBCASE("trivial representation") {
    const MultiplicityVector mv =
        multiplicities(a4.irreps.by_label("phi0"), a4.irreps);
    CHECK(mv.n == std::vector<int>{1, 0, 0, 0});
  }

  SUBCASE("pauli tensor square hits the four even one-dim irreps") {
    const GroupSystem& p2 = catalog_group("pauli2");
    const Representation& w = p2.irreps.by_label("w");
    const MultiplicityVector mv = multiplicities(bar_tensor_rep(w, w), p2.irreps);
    int total = 0, ones = 0;
    for (size_t i = 0; i < mv.n.size(); ++i) {
      total += mv.n[i];
      if (mv.n[i] == 1) {
        ++ones;
        CHECK(p2.irreps.irreps[i].dim == 1);
      }
    }
    CHECK(total == 4);
    CHECK(ones == 4);

    // brute-force character sum for one of them
    const Character chi_w = character_of(w);
    const Character chi_ww = character_of(bar_tensor_rep(w, w));
    cplx acc(0.0, 0.0);
    for (size_t g = 0; g < chi_ww.values.size(); ++g)
      acc += std::conj(
                 character_of(p2.irreps.irreps[0]).values[g]) *
             chi_ww.values[g];
    acc *= cplx(1.0 / 16.0, 0.0);
    CHECK(std::abs(acc - cplx(static_cast<double>(mv.n[0]), 0.0)) <= 1e-12);
  }

  SUBCASE("non-homomorphic matrices give non-integer multiplicities") {
    Prng rng(3);
    Representation fake;
    fake.group = a4.group;
    fake.label = "fake";
    fake.dim = 3;
    for (int g = 0; g < 12; ++g) fake.mats.push_back(random_unitary(3, rng));
    CHECK_THROWS_AS(multiplicities(fake, a4.irreps), error);
  }
}

TEST_CASE("multiplicity accounting on random tensor/direct-sum combinations") {
  const std::vector<std::string> names = {"a4", "s3", "q8", "pauli2", "z6"};
  uint64_t lcg = 0x2545f4914f6cdd1dULL;
  auto next = [&](int mod) {
    lcg = lcg * 6364136223846793005ULL + 1442695040888963407ULL;
    return static_cast<int>((lcg >> 33) % static_cast<uint64_t>(mod));
  };
  for (int trial = 0; trial < 50; ++trial) {
    const GroupSystem& sys = catalog_group(names[static_cast<size_t>(
        next(static_cast<int>(names.size())))]);
    const auto& irreps = sys.irreps.irreps;
    const Representation& a = irreps[static_cast<size_t>(next(static_cast<int>(irreps.size())))];
    const Representation& b = irreps[static_cast<size_t>(next(static_cast<int>(irreps.size())))];
    const Representation w =
        (trial % 2 == 0) ? tensor_rep(a, b) : direct_sum_rep(a, b);
    const MultiplicityVector mv = multiplicities(w, sys.irreps);
    int dim = 0;
    for (size_t i = 0; i < mv.n.size(); ++i) dim += mv.n[i] * irreps[i].dim;
    CHECK(dim == w.dim);
  }
}

TEST_CASE("bar_tensor_rep") {
  const GroupSystem& a4 = catalog_group("a4");
  const Representation& phi0 = a4.irreps.by_label("phi0");
  const Representation& theta = a4.irreps.by_label("theta");

  const Representation tt = bar_tensor_rep(phi0, phi0);
  for (const ComplexMatrix& m : tt.mats)
    CHECK(std::abs(m(0, 0) - cplx(1.0, 0.0)) <= 1e-14);

  // theta is real, so conj(theta) (x) theta has character chi_theta^2
  const Representation w = bar_tensor_rep(theta, theta);
  const Character chi_w = character_of(w);
  const Character chi_theta = character_of(theta);
  for (size_t g = 0; g < chi_w.values.size(); ++g) {
    CHECK(std::abs(chi_w.values[g].imag()) <= 1e-12);
    CHECK(std::abs(chi_w.values[g] -
                   chi_theta.values[g] * chi_theta.values[g]) <= 1e-12);
  }
  for (const ComplexMatrix& m : w.mats) CHECK(m.is_unitary(1e-12));

  validate_representation(w, 1e-9);
}

TEST_CASE("irreducibility test") {
  const GroupSystem& a4 = catalog_group("a4");
  const Representation& theta = a4.irreps.by_label("theta");
  CHECK(is_irreducible(theta));
  CHECK(is_irreducible(a4.irreps.by_label("phi0")));
  CHECK(!is_irreducible(tensor_rep(theta, theta)));
}

TEST_CASE("one-dimensional irrep multiplicities never exceed one") {
  // stated per pair across the entire catalog
  for (const std::string& name : catalog_names()) {
    const GroupSystem& sys = catalog_group(name);
    for (const Representation& u : sys.irreps.irreps) {
      if (!is_irreducible(u)) continue;
      for (const Representation& v : sys.irreps.irreps) {
        if (v.dim > u.dim) continue;
        const OneDimMultReport report =
            one_dim_multiplicity_check(u, v, sys.irreps);
        CHECK(report.ok);
      }
    }
  }

  const GroupSystem& a4 = catalog_group("a4");
  const Representation& theta = a4.irreps.by_label("theta");
  CHECK_THROWS_AS(
      one_dim_multiplicity_check(tensor_rep(theta, theta), theta, a4.irreps),
      error);
}

TEST_CASE("group table validation rejects corrupted input") {
  SUBCASE("closure") {
    CHECK_THROWS_AS(make_group("bad", 2, {0, 1, 1, 7}), error);
  }
  SUBCASE("identity") {
    CHECK_THROWS_AS(make_group("bad", 2, {1, 1, 1, 1}), error);
  }
  SUBCASE("associativity") {
    // z3 with one corrupted product; identity and inverses survive
    CHECK_THROWS_AS(make_group("bad", 3, {0, 1, 2, 1, 1, 0, 2, 0, 1}), error);
  }
}

TEST_CASE("group spec json round trip and validation") {
  const GroupSystem& a4 = catalog_group("a4");
  const json spec = group_to_json(a4);

  const GroupSystem loaded = group_from_json(spec);
  CHECK(loaded.group->order == 12);
  CHECK(loaded.group->mul == a4.group->mul);
  const MultiplicityVector mv = multiplicities(
      bar_tensor_rep(loaded.irreps.by_label("theta"),
                     loaded.irreps.by_label("theta")),
      loaded.irreps);
  CHECK(mv.n == std::vector<int>{1, 1, 1, 2});

  SUBCASE("missing fields") {
    json broken = spec;
    broken.erase("mul");
    CHECK_THROWS_AS(group_from_json(broken), error);
  }
  SUBCASE("non-unitary irrep matrices") {
    json broken = spec;
    broken["irreps"][3]["matrices"][2][0][0] = 5.0;
    CHECK_THROWS_AS(group_from_json(broken), error);
  }
  SUBCASE("wrong irrep inventory") {
    json broken = spec;
    broken["irreps"].erase(3);  // drop theta: sum d_alpha^2 != |G|
    CHECK_THROWS_AS(group_from_json(broken), error);
  }
}

TEST_CASE("weyl-heisenberg qutrit catalog entry") {
  const GroupSystem& wh3 = catalog_group("wh3");
  CHECK(wh3.group->order == 27);
  const Representation& w = wh3.irreps.by_label("w");
  CHECK(w.dim == 3);
  CHECK(is_irreducible(w));
  const MultiplicityVector mv = multiplicities(bar_tensor_rep(w, w), wh3.irreps);
  int total = 0;
  for (size_t i = 0; i < mv.n.size(); ++i) {
    total += mv.n[i] * wh3.irreps.irreps[i].dim;
    if (mv.n[i] > 0) CHECK(wh3.irreps.irreps[i].dim == 1);
  }
  CHECK(total == 9);
}
