#include "covproc/group.hpp"

#include <algorithm>
#include <cmath>

namespace covproc {

namespace {

void check_group_axioms(const std::string& name, int order,
                        const std::vector<int>& mul) {
  if (order <= 0) throw error(name + ": group order must be positive");
  if (static_cast<int>(mul.size()) != order * order)
    throw error(name + ": multiplication table has wrong size");
  for (int v : mul)
    if (v < 0 || v >= order)
      throw error(name + ": multiplication table entry out of range (closure)");
}

int find_identity(const std::string& name, int order,
                  const std::vector<int>& mul) {
  for (int e = 0; e < order; ++e) {
    bool ok = true;
    for (int g = 0; g < order && ok; ++g)
      ok = mul[static_cast<size_t>(e) * order + g] == g &&
           mul[static_cast<size_t>(g) * order + e] == g;
    if (ok) return e;
  }
  throw error(name + ": no identity element");
}

}  // namespace

GroupPtr make_group(std::string name, int order, std::vector<int> mul) {
  check_group_axioms(name, order, mul);
  auto g = std::make_shared<GroupTable>();
  g->name = std::move(name);
  g->order = order;
  g->mul = std::move(mul);
  g->identity = find_identity(g->name, order, g->mul);

  g->inverse.assign(order, -1);
  for (int a = 0; a < order; ++a) {
    for (int b = 0; b < order; ++b) {
      if (g->at(a, b) == g->identity && g->at(b, a) == g->identity) {
        g->inverse[a] = b;
        break;
      }
    }
    if (g->inverse[a] < 0) throw error(g->name + ": element without inverse");
  }

  auto assoc = [&](int a, int b, int c) {
    return g->at(g->at(a, b), c) == g->at(a, g->at(b, c));
  };
  if (order <= 64) {
    for (int a = 0; a < order; ++a)
      for (int b = 0; b < order; ++b)
        for (int c = 0; c < order; ++c)
          if (!assoc(a, b, c))
            throw error(g->name + ": multiplication table not associative");
  } else {
    // deterministic sample of triples
    uint64_t s = 0x9e3779b97f4a7c15ULL;
    for (int t = 0; t < 200000; ++t) {
      s = s * 6364136223846793005ULL + 1442695040888963407ULL;
      const int a = static_cast<int>((s >> 33) % order);
      const int b = static_cast<int>((s >> 17) % order);
      const int c = static_cast<int>(s % order);
      if (!assoc(a, b, c))
        throw error(g->name + ": multiplication table not associative");
    }
  }

  g->class_of.assign(order, -1);
  int next = 0;
  for (int a = 0; a < order; ++a) {
    if (g->class_of[a] >= 0) continue;
    for (int h = 0; h < order; ++h) {
      const int conj = g->at(g->at(h, a), g->inverse[h]);
      g->class_of[conj] = next;
    }
    ++next;
  }
  g->num_classes = next;
  return g;
}

void validate_representation(const Representation& rep, double tol) {
  if (!rep.group) throw error("representation without group");
  const int n = rep.group->order;
  if (static_cast<int>(rep.mats.size()) != n)
    throw error(rep.label + ": one matrix per group element required");
  for (const ComplexMatrix& m : rep.mats) {
    if (m.rows() != rep.dim || m.cols() != rep.dim)
      throw error(rep.label + ": matrix dimension mismatch");
    if (!m.is_unitary(tol)) throw error(rep.label + ": matrix not unitary within tol");
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (!approx_equal(rep.mats[a] * rep.mats[b], rep.mats[rep.group->at(a, b)],
                        tol))
        throw error(rep.label + ": homomorphism law violated");
}

bool is_class_function(const Character& chi, double tol) {
  const GroupTable& g = *chi.group;
  for (int a = 0; a < g.order; ++a)
    for (int h = 0; h < g.order; ++h) {
      const int conj = g.at(g.at(h, a), g.inverse[h]);
      if (std::abs(chi.values[a] - chi.values[conj]) > tol) return false;
    }
  return true;
}

int IrrepTable::index_of(const std::string& label) const {
  for (size_t i = 0; i < irreps.size(); ++i)
    if (irreps[i].label == label) return static_cast<int>(i);
  return -1;
}

const Representation& IrrepTable::by_label(const std::string& label) const {
  const int i = index_of(label);
  if (i < 0) throw error("unknown irrep label: " + label);
  return irreps[static_cast<size_t>(i)];
}

void validate_irrep_table(const IrrepTable& table, double tol) {
  if (!table.group) throw error("irrep table without group");
  int dim_sq = 0;
  for (const Representation& r : table.irreps) {
    if (r.group != table.group) throw error("irrep on wrong group");
    validate_representation(r, tol);
    dim_sq += r.dim * r.dim;
  }
  if (dim_sq != table.group->order)
    throw error(table.group->name +
                ": sum of squared irrep dimensions != group order");
  std::vector<Character> chars;
  chars.reserve(table.irreps.size());
  for (const Representation& r : table.irreps) chars.push_back(character_of(r));
  for (size_t a = 0; a < chars.size(); ++a)
    for (size_t b = 0; b < chars.size(); ++b) {
      const cplx ip = char_inner(chars[a], chars[b]);
      const cplx want = (a == b) ? cplx(1.0, 0.0) : cplx(0.0, 0.0);
      if (std::abs(ip - want) > std::max(tol, 1e-9))
        throw error(table.group->name + ": irrep characters not orthonormal");
    }
}

Character character_of(const Representation& rep) {
  Character chi;
  chi.group = rep.group;
  chi.values.reserve(rep.mats.size());
  for (const ComplexMatrix& m : rep.mats) chi.values.push_back(m.trace());
  return chi;
}

cplx char_inner(const Character& a, const Character& b) {
  if (a.group != b.group) throw error("char_inner: group mismatch");
  cplx s(0.0, 0.0);
  for (size_t g = 0; g < a.values.size(); ++g)
    s += std::conj(a.values[g]) * b.values[g];
  return s * cplx(a.group->haar_weight(), 0.0);
}

MultiplicityVector multiplicities(const Representation& w,
                                  const IrrepTable& irreps, double round_tol) {
  if (w.group != irreps.group) throw error("multiplicities: group mismatch");
  const Character chi_w = character_of(w);
  MultiplicityVector mv;
  int dim_acc = 0;
  for (const Representation& alpha : irreps.irreps) {
    const cplx ip = char_inner(character_of(alpha), chi_w);
    const double re = ip.real();
    const long n = std::lround(re);
    if (std::abs(ip.imag()) > round_tol || std::abs(re - n) > round_tol || n < 0)
      throw error("multiplicity <chi_" + alpha.label +
                  ", chi_W> is not a nonnegative integer within tol");
    mv.n.push_back(static_cast<int>(n));
    dim_acc += static_cast<int>(n) * alpha.dim;
  }
  if (dim_acc != w.dim)
    throw error("multiplicities do not account for dim W (invalid input)");
  return mv;
}

Representation bar_tensor_rep(const Representation& u, const Representation& v) {
  if (u.group != v.group) throw error("bar_tensor_rep: group mismatch");
  Representation w;
  w.group = u.group;
  w.label = "bar(" + u.label + ")x" + v.label;
  w.dim = u.dim * v.dim;
  w.mats.reserve(u.mats.size());
  for (size_t g = 0; g < u.mats.size(); ++g)
    w.mats.push_back(tensor_product(u.mats[g].conj(), v.mats[g]));
  return w;
}

Representation tensor_rep(const Representation& u, const Representation& v) {
  if (u.group != v.group) throw error("tensor_rep: group mismatch");
  Representation w;
  w.group = u.group;
  w.label = u.label + "x" + v.label;
  w.dim = u.dim * v.dim;
  w.mats.reserve(u.mats.size());
  for (size_t g = 0; g < u.mats.size(); ++g)
    w.mats.push_back(tensor_product(u.mats[g], v.mats[g]));
  return w;
}

Representation direct_sum_rep(const Representation& u, const Representation& v) {
  if (u.group != v.group) throw error("direct_sum_rep: group mismatch");
  Representation w;
  w.group = u.group;
  w.label = u.label + "+" + v.label;
  w.dim = u.dim + v.dim;
  w.mats.reserve(u.mats.size());
  for (size_t g = 0; g < u.mats.size(); ++g) {
    ComplexMatrix m(w.dim, w.dim);
    m.set_block(0, 0, u.mats[g]);
    m.set_block(u.dim, u.dim, v.mats[g]);
    w.mats.push_back(std::move(m));
  }
  return w;
}

bool is_irreducible(const Representation& rep, double tol) {
  const Character chi = character_of(rep);
  return std::abs(char_inner(chi, chi) - cplx(1.0, 0.0)) <= tol;
}

OneDimMultReport one_dim_multiplicity_check(const Representation& u,
                                            const Representation& v,
                                            const IrrepTable& irreps) {
  if (!is_irreducible(u))
    throw error("one_dim_multiplicity_check: u is not irreducible");
  if (v.dim > u.dim)
    throw error("one_dim_multiplicity_check: requires dim v <= dim u");
  const Representation w = bar_tensor_rep(u, v);
  const MultiplicityVector mv = multiplicities(w, irreps);
  OneDimMultReport report;
  report.ok = true;
  for (size_t i = 0; i < irreps.irreps.size(); ++i) {
    if (irreps.irreps[i].dim != 1) continue;
    report.one_dim_mults.emplace_back(irreps.irreps[i].label, mv.n[i]);
    if (mv.n[i] > 1) report.ok = false;
  }
  return report;
}

void validate_group_system(const GroupSystem& sys, double tol) {
  if (!sys.group) throw error("group system without group");
  validate_irrep_table(sys.irreps, tol);
}

}  // namespace covproc
