#include "gmalie/io.hpp"

#include <cstdio>

namespace gmalie {

namespace {

const Json& member(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw Error(where + ": missing \"" + key + "\"");
  return j.at(key);
}

std::size_t size_member(const Json& j, const char* key, const std::string& where) {
  const Json& v = member(j, key, where);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
    throw Error(where + "." + key + ": expected a non-negative integer");
  return v.get<std::size_t>();
}

void expect_array(const Json& j, std::size_t n, const std::string& where) {
  if (!j.is_array()) throw Error(where + ": expected an array");
  if (j.size() != n)
    throw Error(where + ": expected " + std::to_string(n) + " entries, got " + std::to_string(j.size()));
}

std::vector<std::string> labels_from_json(const Json& j, std::size_t n, const std::string& prefix,
                                          const std::string& where) {
  std::vector<std::string> out;
  if (!j.is_object() || !j.contains("labels")) {
    for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
    return out;
  }
  expect_array(j.at("labels"), n, where + ".labels");
  for (const auto& l : j.at("labels")) {
    if (!l.is_string()) throw Error(where + ".labels: expected strings");
    out.push_back(l.get<std::string>());
  }
  return out;
}

std::string at(const std::string& where, std::size_t i) { return where + "[" + std::to_string(i) + "]"; }

}  // namespace

Json to_json(Field f) {
  if (f.is_rational()) return Json{{"kind", "Q"}};
  return Json{{"kind", "Fp"}, {"p", f.prime()}};
}

Field field_from_json(const Json& j) {
  const std::string kind = member(j, "kind", "field").get<std::string>();
  if (kind == "Q") return Field::rationals();
  if (kind == "Fp") {
    const std::size_t p = size_member(j, "p", "field");
    if (p == 2) throw Error("field: characteristic 2 is not supported");
    return Field::prime_field(p);
  }
  throw Error("field.kind: expected \"Q\" or \"Fp\"");
}

Json to_json(const Vec& v) {
  Json out = Json::array();
  for (const auto& s : v) out.push_back(s.to_string());
  return out;
}

Vec vec_from_json(Field f, const Json& j, std::size_t expected, const std::string& where) {
  expect_array(j, expected, where);
  Vec out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_string()) throw Error(at(where, i) + ": scalars must be strings");
    try {
      out.push_back(Scalar::parse(f, j[i].get<std::string>()));
    } catch (const Error& e) {
      throw Error(at(where, i) + ": " + e.what());
    }
  }
  return out;
}

Json to_json(const Matrix& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(to_json(Vec(m.row(r).begin(), m.row(r).end())));
  return out;
}

Matrix matrix_from_json(Field f, const Json& j, std::size_t rows, std::size_t cols, const std::string& where) {
  expect_array(j, rows, where);
  Matrix out(f, rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    Vec row = vec_from_json(f, j[r], cols, at(where, r));
    for (std::size_t c = 0; c < cols; ++c) out(r, c) = row[c];
  }
  return out;
}

Json to_json(const FinDimAlgebra& a) {
  Json structure = Json::array();
  for (std::size_t i = 0; i < a.dim(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < a.dim(); ++j) row.push_back(to_json(a.product(i, j)));
    structure.push_back(std::move(row));
  }
  return Json{{"dim", a.dim()}, {"labels", a.labels()}, {"unit", to_json(a.unit())}, {"structure", structure}};
}

FinDimAlgebra algebra_from_json(Field f, const Json& j, const std::string& where) {
  const std::size_t n = size_member(j, "dim", where);
  auto labels = labels_from_json(j, n, "e", where);
  Vec unit = vec_from_json(f, member(j, "unit", where), n, where + ".unit");
  const Json& st = member(j, "structure", where);
  expect_array(st, n, where + ".structure");
  std::vector<Vec> products;
  for (std::size_t i = 0; i < n; ++i) {
    expect_array(st[i], n, at(where + ".structure", i));
    for (std::size_t k = 0; k < n; ++k)
      products.push_back(vec_from_json(f, st[i][k], n, at(at(where + ".structure", i), k)));
  }
  return FinDimAlgebra(f, std::move(labels), std::move(unit), std::move(products));
}

Json to_json(const Bimodule& m) {
  Json left = Json::array(), right = Json::array();
  for (const auto& x : m.left()) left.push_back(to_json(x));
  for (const auto& x : m.right()) right.push_back(to_json(x));
  return Json{{"dim", m.dim()}, {"labels", m.labels()}, {"left", left}, {"right", right}};
}

Bimodule bimodule_from_json(Field f, const Json& j, std::size_t left_dim, std::size_t right_dim,
                            const std::string& where) {
  const std::size_t d = size_member(j, "dim", where);
  auto labels = labels_from_json(j, d, "v", where);
  std::vector<Matrix> left, right;
  const Json& l = member(j, "left", where);
  const Json& r = member(j, "right", where);
  expect_array(l, left_dim, where + ".left");
  expect_array(r, right_dim, where + ".right");
  for (std::size_t i = 0; i < left_dim; ++i) left.push_back(matrix_from_json(f, l[i], d, d, at(where + ".left", i)));
  for (std::size_t i = 0; i < right_dim; ++i)
    right.push_back(matrix_from_json(f, r[i], d, d, at(where + ".right", i)));
  return Bimodule(f, std::move(labels), std::move(left), std::move(right));
}

Json to_json(const MoritaContext& ctx) {
  Json phi = Json::array(), psi = Json::array();
  for (std::size_t i = 0; i < ctx.m.dim(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < ctx.n.dim(); ++j) row.push_back(to_json(ctx.phi[i * ctx.n.dim() + j]));
    phi.push_back(std::move(row));
  }
  for (std::size_t j = 0; j < ctx.n.dim(); ++j) {
    Json row = Json::array();
    for (std::size_t i = 0; i < ctx.m.dim(); ++i) row.push_back(to_json(ctx.psi[j * ctx.m.dim() + i]));
    psi.push_back(std::move(row));
  }
  return Json{{"field", to_json(ctx.field())}, {"A", to_json(ctx.a)}, {"B", to_json(ctx.b)},
              {"M", to_json(ctx.m)},         {"N", to_json(ctx.n)}, {"Phi", phi}, {"Psi", psi}};
}

MoritaContext context_from_json(const Json& doc) {
  const Field f = field_from_json(member(doc, "field", "document"));
  MoritaContext ctx;
  ctx.a = algebra_from_json(f, member(doc, "A", "document"), "A");
  ctx.b = algebra_from_json(f, member(doc, "B", "document"), "B");
  ctx.m = bimodule_from_json(f, member(doc, "M", "document"), ctx.a.dim(), ctx.b.dim(), "M");
  ctx.n = bimodule_from_json(f, member(doc, "N", "document"), ctx.b.dim(), ctx.a.dim(), "N");
  const std::size_t dm = ctx.m.dim(), dn = ctx.n.dim();
  const Json& phi = member(doc, "Phi", "document");
  const Json& psi = member(doc, "Psi", "document");
  expect_array(phi, dm, "Phi");
  for (std::size_t i = 0; i < dm; ++i) {
    expect_array(phi[i], dn, at("Phi", i));
    for (std::size_t j = 0; j < dn; ++j) ctx.phi.push_back(vec_from_json(f, phi[i][j], ctx.a.dim(), at(at("Phi", i), j)));
  }
  expect_array(psi, dn, "Psi");
  for (std::size_t j = 0; j < dn; ++j) {
    expect_array(psi[j], dm, at("Psi", j));
    for (std::size_t i = 0; i < dm; ++i) ctx.psi.push_back(vec_from_json(f, psi[j][i], ctx.b.dim(), at(at("Psi", j), i)));
  }
  return ctx;
}

Json to_json(const MapSequence& s, const std::string& kind) {
  Json maps = Json::array();
  for (std::size_t k = 1; k <= s.order(); ++k) maps.push_back(to_json(s[k]));
  return Json{{"kind", kind}, {"order", s.order()}, {"maps", maps}};
}

MapSequence sequence_from_json(Field f, std::size_t dim, const Json& j) {
  const std::size_t order = size_member(j, "order", "sequence");
  const Json& maps = member(j, "maps", "sequence");
  expect_array(maps, order, "sequence.maps");
  std::vector<Matrix> higher;
  for (std::size_t k = 0; k < order; ++k) higher.push_back(matrix_from_json(f, maps[k], dim, dim, at("sequence.maps", k)));
  const bool tau = j.contains("kind") && j.at("kind") == "tau";
  return tau ? make_tau(f, dim, std::move(higher)) : make_sequence(f, dim, std::move(higher));
}

Instance instance_from_json(const Json& doc) {
  if (!doc.is_object()) throw Error("document: expected an object");
  if (doc.contains("schema_version") && doc.at("schema_version") != kSchemaVersion)
    throw Error("document: unsupported schema_version " + doc.at("schema_version").dump());
  Instance inst;
  inst.context = context_from_json(doc);
  if (doc.contains("sequence") && !doc.at("sequence").is_null()) {
    const std::size_t dim = inst.context.a.dim() + inst.context.m.dim() + inst.context.n.dim() + inst.context.b.dim();
    inst.sequence = sequence_from_json(inst.context.field(), dim, doc.at("sequence"));
    inst.sequence_kind = doc.at("sequence").value("kind", std::string("lhd"));
  }
  inst.fixture = doc.value("fixture", Json());
  inst.generator = doc.value("generator", Json());
  return inst;
}

Json to_json(const Instance& inst) {
  Json out{{"schema_version", kSchemaVersion}};
  const Json ctx = to_json(inst.context);
  for (const auto& [k, v] : ctx.items()) out[k] = v;
  if (!inst.fixture.is_null()) out["fixture"] = inst.fixture;
  if (inst.sequence) out["sequence"] = to_json(*inst.sequence, inst.sequence_kind.empty() ? "lhd" : inst.sequence_kind);
  if (!inst.generator.is_null()) out["generator"] = inst.generator;
  return out;
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Json to_json(const Witness& w) {
  return Json{{"k", w.k}, {"x", w.x}, {"y", w.y}, {"lhs", to_json(w.lhs)}, {"rhs", to_json(w.rhs)}};
}

Json to_json(const ConditionReport& r) {
  auto list = [](const std::vector<Violation>& vs) {
    Json out = Json::array();
    for (const auto& v : vs) out.push_back(Json{{"condition", v.condition}, {"k", v.k}, {"indices", v.indices}, {"detail", v.detail}});
    return out;
  };
  Json conds = Json::array();
  for (const auto& c : r.conditions) conds.push_back(Json{{"id", c}, {"pass", r.holds(c)}, {"violations", r.count(c)}});
  return Json{{"ok", r.ok()}, {"conditions", conds}, {"violations", list(r.violations)}, {"diagnostics", list(r.diagnostics)}};
}

Json to_json(const PrimeWitness& w) {
  return Json{{"condition", w.condition}, {"k", w.k}, {"indices", w.indices}, {"detail", w.detail}};
}

Json to_json(const Certificate& c) {
  Json la = Json::array(), lb = Json::array();
  for (std::size_t k = 1; k < c.ell_a.size(); ++k) la.push_back(to_json(c.ell_a[k]));
  for (std::size_t k = 1; k < c.ell_b.size(); ++k) lb.push_back(to_json(c.ell_b[k]));
  return Json{{"method", c.method}, {"D", to_json(c.d, "hd")}, {"tau", to_json(c.tau, "tau")}, {"ell_A", la}, {"ell_B", lb}};
}

Json to_json(const Verdict& v) {
  Json out{{"verdict", to_string(v.kind)},
           {"A_prime", v.a_prime},
           {"B_prime", v.b_prime},
           {"weakly_faithful", v.weakly_faithful},
           {"reason", v.reason},
           {"notes", v.notes}};
  if (v.witness) out["witness"] = to_json(*v.witness);
  if (v.certificate) out["certificate"] = to_json(*v.certificate);
  return out;
}

Json to_json(const SufficiencyReport& r) {
  return Json{{"center_projection_A_full", r.center_a_full},
              {"center_projection_B_full", r.center_b_full},
              {"no_central_ideal_A", r.no_central_ideal_a},
              {"no_central_ideal_B", r.no_central_ideal_b},
              {"domain_A", to_string(r.domain_a)},
              {"domain_B", to_string(r.domain_b)},
              {"strongly_faithful_M", to_string(r.strongly_faithful_m)},
              {"strongly_faithful_N", to_string(r.strongly_faithful_n)},
              {"weakly_faithful", r.weakly_faithful},
              {"via_central_ideals", r.via_central_ideals},
              {"via_domains", r.via_domains},
              {"via_strong_faithfulness", r.via_strong_faithfulness},
              {"conclusion", r.guaranteed ? "guaranteed" : "not guaranteed by these criteria"}};
}

Json to_json(const PairingReport& r) {
  Json out{{"ok", r.ok}, {"bare_form_holds", r.bare_form_holds}, {"gamma_vanishes", r.gamma_vanishes}};
  if (r.failure) out["failure"] = to_json(*r.failure);
  return out;
}

}  // namespace gmalie
