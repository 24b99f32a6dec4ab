#include "covproc/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <mutex>

namespace covproc {

namespace {

using Perm = std::vector<int>;

Perm compose(const Perm& p, const Perm& q) {
  Perm r(p.size());
  for (size_t x = 0; x < p.size(); ++x) r[x] = p[static_cast<size_t>(q[x])];
  return r;
}

int parity(const Perm& p) {
  int swaps = 0;
  Perm q = p;
  for (size_t i = 0; i < q.size(); ++i)
    while (q[i] != static_cast<int>(i)) {
      std::swap(q[i], q[static_cast<size_t>(q[i])]);
      ++swaps;
    }
  return swaps % 2;
}

std::vector<Perm> all_perms(int n) {
  Perm p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  std::vector<Perm> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

int index_of_perm(const std::vector<Perm>& ps, const Perm& p) {
  for (size_t i = 0; i < ps.size(); ++i)
    if (ps[i] == p) return static_cast<int>(i);
  throw error("permutation not in list");
}

ComplexMatrix perm_matrix(const Perm& p) {
  const int n = static_cast<int>(p.size());
  ComplexMatrix m(n, n);
  for (int j = 0; j < n; ++j) m(p[static_cast<size_t>(j)], j) = 1.0;
  return m;
}

// Restriction of a permutation group to the orthogonal complement of
// (1,...,1), expressed in the orthonormalized span of the given columns.
Representation perm_complement_rep(const GroupPtr& group, const std::string& label,
                                   const std::vector<Perm>& perms,
                                   const ComplexMatrix& span_columns) {
  const ComplexMatrix q = orthonormal_columns(span_columns);
  Representation rep;
  rep.group = group;
  rep.label = label;
  rep.dim = q.cols();
  for (const Perm& p : perms)
    rep.mats.push_back(q.adjoint() * perm_matrix(p) * q);
  return rep;
}

Representation one_dim_rep(const GroupPtr& group, const std::string& label,
                           const std::vector<cplx>& values) {
  Representation rep;
  rep.group = group;
  rep.label = label;
  rep.dim = 1;
  for (const cplx& v : values) rep.mats.push_back(ComplexMatrix(1, 1, {v}));
  return rep;
}

cplx root_of_unity(int num, int den) {
  const double a = 2.0 * M_PI * num / den;
  return cplx(std::cos(a), std::sin(a));
}

GroupSystem make_zn(int n) {
  std::vector<int> mul(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) mul[static_cast<size_t>(i) * n + j] = (i + j) % n;
  GroupSystem sys;
  sys.group = make_group("z" + std::to_string(n), n, std::move(mul));
  sys.irreps.group = sys.group;
  for (int j = 0; j < n; ++j) {
    std::vector<cplx> vals;
    for (int k = 0; k < n; ++k) vals.push_back(root_of_unity(j * k, n));
    sys.irreps.irreps.push_back(
        one_dim_rep(sys.group, "chi" + std::to_string(j), vals));
  }
  return sys;
}

GroupSystem make_klein() {
  // elements (x, y) in Z2 x Z2, index = 2x + y
  std::vector<int> mul(16);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) mul[static_cast<size_t>(a) * 4 + b] = a ^ b;
  GroupSystem sys;
  sys.group = make_group("klein", 4, std::move(mul));
  sys.irreps.group = sys.group;
  for (int s = 0; s < 2; ++s)
    for (int t = 0; t < 2; ++t) {
      std::vector<cplx> vals;
      for (int e = 0; e < 4; ++e) {
        const int x = e >> 1, y = e & 1;
        vals.push_back(((s * x + t * y) % 2) ? cplx(-1.0, 0.0) : cplx(1.0, 0.0));
      }
      sys.irreps.irreps.push_back(one_dim_rep(
          sys.group, "chi" + std::to_string(s) + std::to_string(t), vals));
    }
  return sys;
}

GroupSystem make_s3() {
  const std::vector<Perm> perms = all_perms(3);
  const int n = static_cast<int>(perms.size());
  std::vector<int> mul(static_cast<size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      mul[static_cast<size_t>(a) * n + b] =
          index_of_perm(perms, compose(perms[a], perms[b]));
  GroupSystem sys;
  sys.group = make_group("s3", n, std::move(mul));
  sys.irreps.group = sys.group;

  std::vector<cplx> triv(n, cplx(1.0, 0.0));
  std::vector<cplx> sign;
  for (const Perm& p : perms)
    sign.push_back(parity(p) ? cplx(-1.0, 0.0) : cplx(1.0, 0.0));
  sys.irreps.irreps.push_back(one_dim_rep(sys.group, "triv", triv));
  sys.irreps.irreps.push_back(one_dim_rep(sys.group, "sign", sign));

  ComplexMatrix span(3, 2);
  span(0, 0) = 1.0; span(1, 0) = -1.0;
  span(1, 1) = 1.0; span(2, 1) = -1.0;
  sys.irreps.irreps.push_back(perm_complement_rep(sys.group, "std", perms, span));
  return sys;
}

GroupSystem make_a4() {
  std::vector<Perm> perms;
  for (const Perm& p : all_perms(4))
    if (parity(p) == 0) perms.push_back(p);
  const int n = static_cast<int>(perms.size());  // 12
  std::vector<int> mul(static_cast<size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      mul[static_cast<size_t>(a) * n + b] =
          index_of_perm(perms, compose(perms[a], perms[b]));
  GroupSystem sys;
  sys.group = make_group("a4", n, std::move(mul));
  sys.irreps.group = sys.group;

  // Coset of the Klein normal subgroup: k(g) in {0, 1, 2} with
  // cosets K4, cK4, c^2 K4 for the 3-cycle c = (0 1 2).
  const Perm c = {1, 2, 0, 3};
  const Perm cinv = {2, 0, 1, 3};
  auto in_klein = [&](const Perm& p) {
    return compose(p, p) == Perm{0, 1, 2, 3};
  };
  std::vector<int> coset(n);
  for (int g = 0; g < n; ++g) {
    if (in_klein(perms[g]))
      coset[g] = 0;
    else if (in_klein(compose(cinv, perms[g])))
      coset[g] = 1;
    else
      coset[g] = 2;
  }
  for (int j = 0; j < 3; ++j) {
    std::vector<cplx> vals;
    for (int g = 0; g < n; ++g) vals.push_back(root_of_unity(j * coset[g], 3));
    sys.irreps.irreps.push_back(
        one_dim_rep(sys.group, "phi" + std::to_string(j), vals));
  }

  // theta: permutation action on the tetrahedron vertices
  // v1 = (3,-1,-1,-1), v2 = (-1,3,-1,-1), v3 = (-1,-1,3,-1) spanning
  // (1,1,1,1)^perp; the redundant v4 = -(v1+v2+v3).
  ComplexMatrix span(4, 3);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 3; ++j) span(i, j) = (i == j) ? 3.0 : -1.0;
  sys.irreps.irreps.push_back(perm_complement_rep(sys.group, "theta", perms, span));
  return sys;
}

GroupSystem make_q8() {
  // elements: index = 2*axis + sign, axis in {1,i,j,k} = 0..3, sign 0 = +, 1 = -
  // axis products: (a,b) -> (sign, axis)
  static const int ax[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int sg[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
  // sg[a][b]: sign of e_a * e_b with e_1 = i, e_2 = j, e_3 = k:
  //   i*i = -1, i*j = +k, i*k = -j, j*i = -k, j*j = -1, j*k = +i,
  //   k*i = +j, k*j = -i, k*k = -1
  const int n = 8;
  std::vector<int> mul(64);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const int aa = a >> 1, sa = a & 1, ab = b >> 1, sb = b & 1;
      const int axis = ax[aa][ab];
      const int sign = (sa + sb + sg[aa][ab]) % 2;
      mul[static_cast<size_t>(a) * n + b] = 2 * axis + sign;
    }
  GroupSystem sys;
  sys.group = make_group("q8", n, std::move(mul));
  sys.irreps.group = sys.group;

  auto chi_splitting = [&](const std::string& label, int keep_axis) {
    std::vector<cplx> vals;
    for (int e = 0; e < n; ++e) {
      const int axis = e >> 1;
      const bool plus = axis == 0 || axis == keep_axis;
      vals.push_back(plus ? cplx(1.0, 0.0) : cplx(-1.0, 0.0));
    }
    return one_dim_rep(sys.group, label, vals);
  };
  std::vector<cplx> triv(n, cplx(1.0, 0.0));
  sys.irreps.irreps.push_back(one_dim_rep(sys.group, "triv", triv));
  sys.irreps.irreps.push_back(chi_splitting("chi_i", 1));
  sys.irreps.irreps.push_back(chi_splitting("chi_j", 2));
  sys.irreps.irreps.push_back(chi_splitting("chi_k", 3));

  const cplx I(0.0, 1.0);
  const ComplexMatrix u1 = ComplexMatrix::identity(2);
  const ComplexMatrix ui(2, 2, {I, 0.0, 0.0, -I});
  const ComplexMatrix uj(2, 2, {0.0, 1.0, -1.0, 0.0});
  const ComplexMatrix uk = ui * uj;
  Representation w;
  w.group = sys.group;
  w.label = "w";
  w.dim = 2;
  const ComplexMatrix* base[4] = {&u1, &ui, &uj, &uk};
  for (int e = 0; e < n; ++e) {
    ComplexMatrix m = *base[e >> 1];
    if (e & 1) m *= cplx(-1.0, 0.0);
    w.mats.push_back(std::move(m));
  }
  sys.irreps.irreps.push_back(std::move(w));
  return sys;
}

// Weyl-Heisenberg group for qudit dimension d: elements tau^a X^b Z^c with
// tau = exp(2 pi i / p), p = 4 for d = 2 (Pauli group with phases +-1, +-i)
// and p = 3 for d = 3.
GroupSystem make_weyl_heisenberg(int d) {
  if (d != 2 && d != 3) throw error("weyl-heisenberg catalog supports d = 2, 3");
  const int p = (d == 2) ? 4 : 3;
  const int n = p * d * d;
  auto idx = [&](int a, int b, int c) { return (a * d + b) * d + c; };
  std::vector<int> mul(static_cast<size_t>(n) * n);
  for (int a1 = 0; a1 < p; ++a1)
    for (int b1 = 0; b1 < d; ++b1)
      for (int c1 = 0; c1 < d; ++c1)
        for (int a2 = 0; a2 < p; ++a2)
          for (int b2 = 0; b2 < d; ++b2)
            for (int c2 = 0; c2 < d; ++c2) {
              // Z^c X^b = omega^{cb} X^b Z^c with omega = tau^{p/d}
              const int phase = (p / d) * c1 * b2;
              const int a = (a1 + a2 + phase) % p;
              mul[static_cast<size_t>(idx(a1, b1, c1)) * n + idx(a2, b2, c2)] =
                  idx(a, (b1 + b2) % d, (c1 + c2) % d);
            }
  GroupSystem sys;
  sys.group = make_group(d == 2 ? "pauli2" : "wh3", n, std::move(mul));
  sys.irreps.group = sys.group;

  // one-dimensional irreps factor through the abelianization
  if (d == 2) {
    for (int s = 0; s < 2; ++s)
      for (int t = 0; t < 2; ++t)
        for (int r = 0; r < 2; ++r) {
          std::vector<cplx> vals;
          for (int a = 0; a < p; ++a)
            for (int b = 0; b < d; ++b)
              for (int c = 0; c < d; ++c)
                vals.push_back(((s * a + t * b + r * c) % 2) ? cplx(-1.0, 0.0)
                                                             : cplx(1.0, 0.0));
          sys.irreps.irreps.push_back(one_dim_rep(
              sys.group,
              "chi" + std::to_string(s) + std::to_string(t) + std::to_string(r),
              vals));
        }
  } else {
    for (int s = 0; s < 3; ++s)
      for (int t = 0; t < 3; ++t) {
        std::vector<cplx> vals;
        for (int a = 0; a < p; ++a)
          for (int b = 0; b < d; ++b)
            for (int c = 0; c < d; ++c)
              vals.push_back(root_of_unity(s * b + t * c, 3));
        sys.irreps.irreps.push_back(one_dim_rep(
            sys.group, "chi" + std::to_string(s) + std::to_string(t), vals));
      }
  }

  ComplexMatrix x(d, d), z(d, d);
  for (int j = 0; j < d; ++j) {
    x((j + 1) % d, j) = 1.0;
    z(j, j) = root_of_unity(j, d);
  }
  Representation w;
  w.group = sys.group;
  w.label = "w";
  w.dim = d;
  for (int a = 0; a < p; ++a)
    for (int b = 0; b < d; ++b)
      for (int c = 0; c < d; ++c) {
        ComplexMatrix m = ComplexMatrix::identity(d);
        for (int t = 0; t < b; ++t) m = x * m;
        for (int t = 0; t < c; ++t) m = m * z;
        m *= root_of_unity(a, p);
        w.mats.push_back(std::move(m));
      }
  Representation wbar;
  wbar.group = sys.group;
  wbar.label = "wbar";
  wbar.dim = d;
  for (const ComplexMatrix& m : w.mats) wbar.mats.push_back(m.conj());
  sys.irreps.irreps.push_back(std::move(w));
  sys.irreps.irreps.push_back(std::move(wbar));
  return sys;
}

std::map<std::string, GroupSystem>& cache() {
  static std::map<std::string, GroupSystem> c;
  return c;
}

std::mutex& cache_mutex() {
  static std::mutex m;
  return m;
}

GroupSystem build(const std::string& name) {
  if (name == "klein") return make_klein();
  if (name == "s3") return make_s3();
  if (name == "a4") return make_a4();
  if (name == "q8") return make_q8();
  if (name == "pauli2") return make_weyl_heisenberg(2);
  if (name == "wh3") return make_weyl_heisenberg(3);
  if (name.size() >= 2 && name[0] == 'z') {
    const int n = std::atoi(name.c_str() + 1);
    if (n >= 1 && n <= 12 && name == "z" + std::to_string(n)) return make_zn(n);
  }
  throw error("unknown catalog group: " + name);
}

}  // namespace

const GroupSystem& catalog_group(const std::string& name) {
  std::lock_guard<std::mutex> lock(cache_mutex());
  auto it = cache().find(name);
  if (it != cache().end()) return it->second;
  GroupSystem sys = build(name);
  validate_group_system(sys);
  return cache().emplace(name, std::move(sys)).first->second;
}

std::vector<std::string> catalog_names() {
  std::vector<std::string> names;
  for (int n = 1; n <= 12; ++n) names.push_back("z" + std::to_string(n));
  names.insert(names.end(), {"klein", "s3", "a4", "q8", "pauli2", "wh3"});
  return names;
}

bool catalog_has(const std::string& name) {
  try {
    catalog_group(name);
    return true;
  } catch (const error&) {
    return false;
  }
}

std::string default_irrep_label(const GroupSystem& sys) {
  int best = 0;
  for (size_t i = 1; i < sys.irreps.irreps.size(); ++i)
    if (sys.irreps.irreps[i].dim > sys.irreps.irreps[best].dim)
      best = static_cast<int>(i);
  return sys.irreps.irreps[static_cast<size_t>(best)].label;
}

}  // namespace covproc
