#include <fstream>

#include "covproc/io.hpp"

namespace covproc {

json matrix_to_json(const ComplexMatrix& m) {
  json data = json::array();
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      data.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

ComplexMatrix matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") ||
      !j.contains("data"))
    throw error("matrix json: expected {rows, cols, data}");
  const int rows = j.at("rows").get<int>();
  const int cols = j.at("cols").get<int>();
  const json& data = j.at("data");
  if (!data.is_array() || static_cast<int>(data.size()) != rows * cols)
    throw error("matrix json: data length != rows*cols");
  ComplexMatrix m(rows, cols);
  int k = 0;
  for (int i = 0; i < rows; ++i)
    for (int jj = 0; jj < cols; ++jj, ++k) {
      const json& e = data.at(k);
      if (!e.is_array() || e.size() != 2)
        throw error("matrix json: entries must be [re, im] pairs");
      m(i, jj) = cplx(e.at(0).get<double>(), e.at(1).get<double>());
    }
  return m;
}

namespace {

json rep_matrices_to_json(const Representation& rep) {
  json mats = json::array();
  for (const ComplexMatrix& m : rep.mats) {
    json flat = json::array();
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j)
        flat.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
    mats.push_back(std::move(flat));
  }
  return mats;
}

}  // namespace

json group_to_json(const GroupSystem& sys) {
  json irreps = json::array();
  for (const Representation& r : sys.irreps.irreps)
    irreps.push_back(json{{"label", r.label},
                          {"dim", r.dim},
                          {"matrices", rep_matrices_to_json(r)}});
  return json{{"schema_version", 1},
              {"name", sys.group->name},
              {"order", sys.group->order},
              {"mul", sys.group->mul},
              {"irreps", std::move(irreps)}};
}

GroupSystem group_from_json(const json& j, double tol) {
  if (!j.is_object()) throw error("group spec: expected a JSON object");
  for (const char* field : {"order", "mul", "irreps"})
    if (!j.contains(field))
      throw error(std::string("group spec: missing field '") + field + "'");
  const int order = j.at("order").get<int>();
  std::vector<int> mul = j.at("mul").get<std::vector<int>>();
  const std::string name = j.value("name", std::string("group"));

  GroupSystem sys;
  sys.group = make_group(name, order, std::move(mul));
  sys.irreps.group = sys.group;

  for (const json& ir : j.at("irreps")) {
    for (const char* field : {"label", "dim", "matrices"})
      if (!ir.contains(field))
        throw error(std::string("group spec irrep: missing field '") + field +
                    "'");
    Representation rep;
    rep.group = sys.group;
    rep.label = ir.at("label").get<std::string>();
    rep.dim = ir.at("dim").get<int>();
    if (rep.dim <= 0) throw error(rep.label + ": irrep dim must be positive");
    const json& mats = ir.at("matrices");
    if (static_cast<int>(mats.size()) != order)
      throw error(rep.label + ": need one matrix per group element");
    for (const json& flat : mats) {
      if (static_cast<int>(flat.size()) != rep.dim * rep.dim)
        throw error(rep.label + ": matrix entry count != dim^2");
      ComplexMatrix m(rep.dim, rep.dim);
      int k = 0;
      for (int r = 0; r < rep.dim; ++r)
        for (int c = 0; c < rep.dim; ++c, ++k) {
          const json& e = flat.at(k);
          if (!e.is_array() || e.size() != 2)
            throw error(rep.label + ": entries must be [re, im] pairs");
          m(r, c) = cplx(e.at(0).get<double>(), e.at(1).get<double>());
        }
      rep.mats.push_back(std::move(m));
    }
    sys.irreps.irreps.push_back(std::move(rep));
  }
  validate_group_system(sys, tol);
  return sys;
}

GroupSystem load_group_file(const std::string& path, double tol) {
  std::ifstream in(path);
  if (!in) throw error("cannot open group spec file: " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw error("group spec parse error in " + path + ": " + e.what());
  }
  return group_from_json(j, tol);
}

}  // namespace covproc
