// gma: command-line front end over instance documents.
//
// Exit codes: decide returns 0 PROPER, 1 IMPROPER, 2 UNKNOWN; validate and verify return 0 on
// success and 1 on a failed check; any error exits with 3.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "gmalie/io.hpp"

using namespace gmalie;

namespace {

constexpr int kError = 3;

struct Options {
  bool json = false;
  std::string path;
  std::string output;
  std::string kind = "lhd";
  std::optional<std::size_t> order;
  std::string gen = "synth-lhd";
  std::string source = "generic";
  std::uint64_t seed = 1;
  std::string fixture;
  std::size_t n = 3;
  std::uint64_t p = 0;
};

struct Loaded {
  std::string bytes;
  Json doc;
  Instance inst;
};

Loaded load(const std::string& path) {
  Loaded l;
  std::ostringstream ss;
  if (path == "-") {
    ss << std::cin.rdbuf();
  } else {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    ss << in.rdbuf();
  }
  l.bytes = ss.str();
  try {
    l.doc = Json::parse(l.bytes);
  } catch (const Json::parse_error& e) {
    throw Error(std::string("malformed JSON: ") + e.what());
  }
  l.inst = instance_from_json(l.doc);
  return l;
}

std::size_t sequence_order(const Instance& inst, const Options& o) {
  if (!inst.sequence) throw Error("document carries no sequence");
  const std::size_t k = o.order.value_or(inst.sequence->order());
  if (k > inst.sequence->order())
    throw Error("--order " + std::to_string(k) + " exceeds the embedded order " + std::to_string(inst.sequence->order()));
  return k;
}

class Report {
 public:
  Report(std::string command, const Options& o) : o_(o), start_(std::chrono::steady_clock::now()) {
    body_["schema_version"] = kSchemaVersion;
    body_["command"] = std::move(command);
  }
  Json& body() { return body_; }
  void line(const std::string& s) { text_ << s << '\n'; }

  void emit() {
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    if (o_.json) {
      Json out = body_;
      out["timing"] = Json{{"seconds", secs}};
      std::cout << out.dump(2) << '\n';
    } else {
      std::cout << text_.str();
    }
  }

 private:
  const Options& o_;
  std::chrono::steady_clock::time_point start_;
  Json body_;
  std::ostringstream text_;
};

const char* yn(bool b) { return b ? "yes" : "no"; }

int cmd_validate(const Options& o) {
  Report r("validate", o);
  Loaded l = load(o.path);
  r.body()["instance_digest"] = fnv1a_hex(l.bytes);
  Json issues = Json::array();
  for (const auto& is : validate_context(l.inst.context))
    issues.push_back(Json{{"kind", is.kind}, {"indices", is.indices}, {"detail", is.detail}});
  bool ok = issues.empty();
  Json res = Json::object();
  if (ok) {
    Gma g = build_gma(l.inst.context);
    for (const auto& is : validate(g.algebra()))
      issues.push_back(Json{{"kind", "gma." + is.kind}, {"indices", is.indices}, {"detail", is.detail}});
    ok = issues.empty();
    res["dim"] = g.dim();
    if (l.inst.sequence) {
      try {
        check_shape(*l.inst.sequence, g.dim());
      } catch (const Error& e) {
        issues.push_back(Json{{"kind", "sequence"}, {"indices", Json::array()}, {"detail", e.what()}});
        ok = false;
      }
    }
  }
  res["valid"] = ok;
  res["issues"] = issues;
  r.body()["results"] = res;
  r.line(std::string("valid: ") + yn(ok));
  for (const auto& is : issues) r.line("  " + is["kind"].get<std::string>() + ": " + is["detail"].get<std::string>());
  r.emit();
  return ok ? 0 : 1;
}

int cmd_props(const Options& o) {
  Report r("props", o);
  Loaded l = load(o.path);
  r.body()["instance_digest"] = fnv1a_hex(l.bytes);
  const Gma g = build_gma(l.inst.context);
  const auto& ctx = g.context();
  const GmaCenter z = center_gma(g);
  const FaithfulnessReport fr = faithfulness(g);
  const Subspace za = center(ctx.a), zb = center(ctx.b);
  Json basis = Json::array();
  for (const auto& v : z.center.basis()) basis.push_back(to_json(v));
  Json res{{"dim", g.dim()},
           {"block_dims", Json{{"A", ctx.a.dim()}, {"M", ctx.m.dim()}, {"N", ctx.n.dim()}, {"B", ctx.b.dim()}}},
           {"center_dim", z.center.dim()},
           {"center_basis", basis},
           {"center_projection_A_dim", z.center_a.dim()},
           {"center_A_dim", za.dim()},
           {"center_projection_A_full", z.center_a == za},
           {"center_projection_B_dim", z.center_b.dim()},
           {"center_B_dim", zb.dim()},
           {"center_projection_B_full", z.center_b == zb},
           {"trivial", is_trivial(g)}};
  res["faithfulness"] = Json{{"M_left", fr.m_left},
                             {"M_right", fr.m_right},
                             {"N_left", fr.n_left},
                             {"N_right", fr.n_right},
                             {"M_faithful", fr.m_faithful},
                             {"N_faithful", fr.n_faithful},
                             {"weakly_faithful", fr.weakly_faithful},
                             {"strongly_faithful_M", to_string(fr.strongly_faithful_m)},
                             {"strongly_faithful_N", to_string(fr.strongly_faithful_n)}};
  if (fr.weakly_faithful) {
    const CenterIsomorphism phi = compute_phi(g);
    Json pairs = Json::array();
    for (std::size_t i = 0; i < phi.domain_basis().size(); ++i)
      pairs.push_back(Json{{"a", to_json(phi.domain_basis()[i])}, {"phi_a", to_json(phi.image_basis()[i])}});
    res["phi"] = pairs;
  }
  const DomainResult da = is_domain(ctx.a), db = is_domain(ctx.b);
  res["central_ideal_A"] = has_nonzero_central_ideal(ctx.a);
  res["central_ideal_B"] = has_nonzero_central_ideal(ctx.b);
  res["domain_A"] = Json{{"status", to_string(da.status)}, {"reason", da.reason}};
  res["domain_B"] = Json{{"status", to_string(db.status)}, {"reason", db.reason}};
  r.body()["results"] = res;
  r.line("dim " + std::to_string(g.dim()) + " (A " + std::to_string(ctx.a.dim()) + ", M " + std::to_string(ctx.m.dim()) +
         ", N " + std::to_string(ctx.n.dim()) + ", B " + std::to_string(ctx.b.dim()) + ")");
  r.line("center dim " + std::to_string(z.center.dim()) + "; pi_A(Z) = Z(A): " + yn(z.center_a == za) +
         "; pi_B(Z) = Z(B): " + yn(z.center_b == zb));
  r.line(std::string("trivial: ") + yn(res["trivial"].get<bool>()));
  r.line(std::string("M faithful: ") + yn(fr.m_faithful) + ", N faithful: " + yn(fr.n_faithful) +
         ", weakly faithful: " + yn(fr.weakly_faithful));
  r.line(std::string("strongly faithful M: ") + to_string(fr.strongly_faithful_m) +
         ", N: " + to_string(fr.strongly_faithful_n));
  r.line(std::string("nonzero central ideal in A: ") + yn(res["central_ideal_A"].get<bool>()) +
         ", in B: " + yn(res["central_ideal_B"].get<bool>()));
  r.line(std::string("domain A: ") + to_string(da.status) + ", B: " + to_string(db.status));
  r.emit();
  return 0;
}

int cmd_verify(const Options& o) {
  if (o.kind != "hd" && o.kind != "lhd") throw Error("--kind must be hd or lhd");
  Report r("verify", o);
  Loaded l = load(o.path);
  r.body()["instance_digest"] = fnv1a_hex(l.bytes);
  const Gma g = build_gma(l.inst.context);
  const std::size_t k = sequence_order(l.inst, o);
  const bool lie = o.kind == "lhd";
  const CheckResult direct = lie ? verify_lhd(g.algebra(), *l.inst.sequence, k) : verify_hd(g.algebra(), *l.inst.sequence, k);
  const EntryMaps e = extract_entries(g, *l.inst.sequence);
  const ConditionReport conds = lie ? check_lhd_conditions(g, e, k) : check_hd_conditions(g, e, k);
  Json res{{"kind", o.kind}, {"order", k}, {"identity_holds", direct.ok}};
  if (direct.witness) res["witness"] = to_json(*direct.witness);
  res["conditions"] = to_json(conds);
  r.body()["results"] = res;
  r.line(std::string(lie ? "Lie higher derivation" : "higher derivation") + " identity up to order " +
         std::to_string(k) + ": " + (direct.ok ? "holds" : "fails"));
  if (direct.witness)
    r.line("  witness: order " + std::to_string(direct.witness->k) + ", basis pair (" + std::to_string(direct.witness->x) +
           ", " + std::to_string(direct.witness->y) + ")");
  for (const auto& c : conds.conditions)
    r.line("  condition " + c + ": " + (conds.holds(c) ? "pass" : "FAIL (" + std::to_string(conds.count(c)) + ")"));
  for (const auto& d : conds.diagnostics) r.line("  note: " + d.detail + " at order " + std::to_string(d.k));
  r.emit();
  return direct.ok ? 0 : 1;
}

int cmd_decide(const Options& o) {
  Report r("decide", o);
  Loaded l = load(o.path);
  r.body()["instance_digest"] = fnv1a_hex(l.bytes);
  const Gma g = build_gma(l.inst.context);
  const std::size_t k = sequence_order(l.inst, o);
  const Verdict v = decide_proper(g, *l.inst.sequence, k);
  Json res = to_json(v);
  res["order"] = k;
  if (v.certificate) {
    const MapSequence s = truncate(*l.inst.sequence, k);
    const EntryMaps e = extract_entries(g, s);
    res["pairing"] = to_json(pairing_crosscheck(g, e, lhd_families(g, e, k), *v.certificate, k));
  }
  r.body()["results"] = res;
  r.line(std::string("verdict: ") + to_string(v.kind) + " (order " + std::to_string(k) + ")");
  r.line(std::string("A': ") + (v.a_prime ? "holds" : "fails") + ", B': " + (v.b_prime ? "holds" : "fails") +
         ", weakly faithful: " + yn(v.weakly_faithful));
  if (!v.reason.empty()) r.line("reason: " + v.reason);
  if (v.witness) r.line("witness: " + v.witness->condition + " at order " + std::to_string(v.witness->k) + ": " + v.witness->detail);
  if (v.certificate) r.line("certificate: " + v.certificate->method + ", verified");
  for (const auto& n : v.notes) r.line("note: " + n);
  r.emit();
  switch (v.kind) {
    case VerdictKind::proper: return 0;
    case VerdictKind::improper: return 1;
    case VerdictKind::unknown: return 2;
  }
  return kError;
}

int cmd_sufficient(const Options& o) {
  Report r("sufficient", o);
  Loaded l = load(o.path);
  r.body()["instance_digest"] = fnv1a_hex(l.bytes);
  const SufficiencyReport s = check_sufficient(build_gma(l.inst.context));
  r.body()["results"] = to_json(s);
  r.line(std::string("weakly faithful: ") + yn(s.weakly_faithful));
  r.line(std::string("center projections full: A ") + yn(s.center_a_full) + ", B " + yn(s.center_b_full));
  r.line(std::string("no nonzero central ideals: A ") + yn(s.no_central_ideal_a) + ", B " + yn(s.no_central_ideal_b));
  r.line(std::string("domains: A ") + to_string(s.domain_a) + ", B " + to_string(s.domain_b));
  r.line(std::string("strongly faithful: M ") + to_string(s.strongly_faithful_m) + ", N " +
         to_string(s.strongly_faithful_n));
  r.line(std::string("conclusion: ") + (s.guaranteed ? "LHD property guaranteed" : "not guaranteed by these criteria"));
  r.emit();
  return 0;
}

void write_document(const Json& doc, const std::string& output) {
  const std::string text = doc.dump(2) + "\n";
  if (output.empty() || output == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(output, std::ios::binary);
  if (!out) throw Error("cannot write " + output);
  out << text;
}

int cmd_gen(const Options& o) {
  Loaded l = load(o.path);
  const Gma g = build_gma(l.inst.context);
  std::uint64_t seed = o.seed;
  std::string seed_source = "flag";
  if (const char* env = std::getenv("GMA_SEED")) {
    seed = std::stoull(env);
    seed_source = "GMA_SEED";
  }
  const std::size_t k = o.order.value_or(2);
  Sampler rnd(g.field(), seed);
  const auto& alg = g.algebra();
  MapSequence s;
  std::string kind = "lhd";
  Json gen{{"gen", o.gen}, {"order", k}, {"seed", seed}, {"seed_source", seed_source}};
  if (o.gen == "ordinary") {
    if (l.inst.sequence && l.inst.sequence->order() >= 1) {
      s = ordinary_from_lie_derivation(alg, (*l.inst.sequence)[1], k);
      gen["from"] = "embedded first-order map";
    } else {
      s = ordinary_from_derivation(alg, random_derivation(alg, rnd), k);
      gen["from"] = "random derivation";
      kind = "hd";
    }
  } else if (o.gen == "inner") {
    s = ordinary_from_derivation(alg, inner_derivation(alg, rnd.vec(alg.dim())), k);
    kind = "hd";
  } else if (o.gen == "synth-lhd") {
    IngredientSource src = IngredientSource::generic;
    if (o.source == "ordinary-tau") src = IngredientSource::ordinary_plus_tau;
    else if (o.source == "inner-tau") src = IngredientSource::inner_plus_tau;
    else if (o.source != "generic") throw Error("--source must be generic, ordinary-tau or inner-tau");
    auto ing = random_ingredients(g, k, rnd, src);
    if (!ing) throw Error("no consistent ingredients found for this instance and order");
    s = synthesize_lhd(g, k, *ing);
    gen["source"] = o.source;
  } else {
    throw Error("--gen must be ordinary, inner or synth-lhd");
  }
  Instance out = l.inst;
  out.sequence = s;
  out.sequence_kind = kind;
  out.generator = gen;
  write_document(to_json(out), o.output);
  return 0;
}

int cmd_fixture(const Options& o) {
  const Field f = o.p == 0 ? Field::rationals() : Field::prime_field(o.p);
  if (f.characteristic() == 2) throw Error("characteristic 2 is not supported");
  Instance inst;
  Json params{{"field", to_json(f)}};
  if (o.fixture == "benkovic") {
    Gma g = benkovic(f);
    inst.context = g.context();
    inst.sequence = make_sequence(f, g.dim(), {benkovic_lie_derivation(g)});
    inst.sequence_kind = "lhd";
  } else if (o.fixture == "full-matrix") {
    if (o.n < 2) throw Error("--n must be at least 2");
    inst.context = full_matrix(f, o.n).context();
    params["n"] = o.n;
  } else if (o.fixture == "peirce-m2") {
    inst.context = full_matrix(f, 2).context();
  } else if (o.fixture == "triangular") {
    if (o.n < 1) throw Error("--n must be at least 1");
    const FinDimAlgebra t = upper_triangular_algebra(f, o.n);
    inst.context = triangular(t, regular_bimodule(t), t).context();
    params["n"] = o.n;
  } else {
    throw Error("unknown fixture " + o.fixture);
  }
  inst.fixture = Json{{"name", o.fixture}, {"params", params}};
  write_document(to_json(inst), o.output);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lie higher derivations on generalized matrix algebras"};
  app.require_subcommand(1);
  Options o;
  app.add_flag("--json", o.json, "machine-readable report");

  auto with_path = [&](CLI::App* c) { c->add_option("path", o.path, "instance document (- for stdin)")->required(); };
  auto* validate = app.add_subcommand("validate", "check the algebra, context and GMA invariants");
  with_path(validate);
  auto* props = app.add_subcommand("props", "center, projections, faithfulness and ideal predicates");
  with_path(props);
  auto* verify = app.add_subcommand("verify", "verify the embedded sequence");
  with_path(verify);
  verify->add_option("--kind", o.kind, "hd or lhd")->check(CLI::IsMember({"hd", "lhd"}));
  verify->add_option("--order", o.order, "truncation order");
  auto* decide = app.add_subcommand("decide", "decide properness of the embedded sequence");
  with_path(decide);
  decide->add_option("--order", o.order, "truncation order");
  auto* sufficient = app.add_subcommand("sufficient", "evaluate the sufficient criteria for the LHD property");
  with_path(sufficient);
  auto* gen = app.add_subcommand("gen", "embed a generated sequence into a copy of the document");
  with_path(gen);
  gen->add_option("--gen", o.gen, "ordinary, inner or synth-lhd")->check(CLI::IsMember({"ordinary", "inner", "synth-lhd"}));
  gen->add_option("--order", o.order, "order of the generated sequence (default 2)");
  gen->add_option("--seed", o.seed, "random seed (GMA_SEED overrides)");
  gen->add_option("--source", o.source, "synth-lhd ingredients: generic, ordinary-tau or inner-tau");
  gen->add_option("-o,--output", o.output, "output file (default stdout)");
  auto* fixture = app.add_subcommand("fixture", "write a named instance document");
  fixture->add_option("name", o.fixture, "benkovic, full-matrix, triangular or peirce-m2")
      ->required()
      ->check(CLI::IsMember({"benkovic", "full-matrix", "triangular", "peirce-m2"}));
  fixture->add_option("--n", o.n, "matrix size");
  fixture->add_option("--p", o.p, "field characteristic (0 for the rationals)");
  fixture->add_option("-o,--output", o.output, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kError;
  }

  try {
    if (*validate) return cmd_validate(o);
    if (*props) return cmd_props(o);
    if (*verify) return cmd_verify(o);
    if (*decide) return cmd_decide(o);
    if (*sufficient) return cmd_sufficient(o);
    if (*gen) return cmd_gen(o);
    if (*fixture) return cmd_fixture(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kError;
  }
  return kError;
}
