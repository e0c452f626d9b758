// qzero: command-line front end for heights, bounds and small zeros of
// hermitian forms over definite quaternion algebras.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qzero/qzero.hpp"

namespace {

using qzero::Json;

constexpr int kExitOk = 0;
constexpr int kExitLikely = 1;
constexpr int kExitViolated = 2;
constexpr int kExitInvalid = 3;
constexpr int kExitCap = 4;

int exit_code_for(qzero::Verdict v) {
  switch (v) {
    case qzero::Verdict::Certified: return kExitOk;
    case qzero::Verdict::Likely: return kExitLikely;
    case qzero::Verdict::Violated: return kExitViolated;
  }
  return kExitViolated;
}

void emit(const Json& j, const std::string& out_path) {
  const std::string text = j.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw qzero::Error(qzero::ErrorCode::InvalidInput, "cannot write " + out_path);
  f << text;
}

qzero::Instance load_instance(const std::string& path, const std::string& order_file) {
  qzero::Instance in = qzero::parse_instance(qzero::read_json_file(path));
  if (!order_file.empty()) in.order = qzero::parse_order(qzero::read_json_file(order_file), in.algebra);
  return in;
}

Json checks_json(const std::vector<qzero::CheckResult>& results) {
  Json out = Json::array();
  for (const auto& r : results) out.push_back(Json{{"check", r.name}, {"ok", r.ok}, {"detail", r.detail}});
  return out;
}

struct Options {
  std::string path;
  std::string order_file;
  std::string json_out;
  long cap = 64;
  unsigned parallel = 1;
  std::uint64_t seed = 0;
  std::string target = "subspace";
  int n = 2;
  int l = 1;
  long alpha = -1;
  long beta = -1;
  std::string order = "od";
  long twist = 1;
  std::size_t iters = 100;
};

int cmd_solve(const Options& o) {
  const qzero::Instance in = load_instance(o.path, o.order_file);
  qzero::SolverConfig cfg;
  cfg.enumeration_cap = o.cap;
  cfg.seed = o.seed;
  cfg.workers = o.parallel;
  const auto cert = qzero::solve(in.form, in.resolved_subspace(), in.resolved_order(), cfg);
  emit(qzero::certificate_json(cert, in, cfg), o.json_out);
  return exit_code_for(qzero::overall(cert));
}

int cmd_height(const Options& o) {
  const qzero::Instance in = load_instance(o.path, o.order_file);
  const qzero::Order ord = in.resolved_order();
  const qzero::AlgebraParams& a = ord.algebra();
  Json j;
  if (o.target == "vector") {
    if (!in.vector) throw qzero::Error(qzero::ErrorCode::InvalidInput, "instance has no \"vector\"");
    const qzero::QuatVector& x = *in.vector;
    const qzero::RatVector flat = qzero::coord_map(x);
    j["Hinf"] = qzero::to_json(qzero::Hinf_D(x, a));
    j["h"] = qzero::to_json(qzero::h_D(x, a));
    j["H_O"] = qzero::to_json(qzero::H_O_vector(ord, x));
    if (ord.contains(x)) j["Hfin_O"] = qzero::to_json(qzero::Hfin_O(ord, x));
    j["H_coords"] = qzero::to_json(qzero::height_H(flat));
    j["h_coords"] = qzero::to_json(qzero::height_h(flat));
  } else if (o.target == "form") {
    const qzero::TraceFormQ q = qzero::build_trace_matrix(in.form, a);
    const auto fh = qzero::form_heights(in.form, q, ord);
    j["H_Q"] = qzero::to_json(fh.H_Q);
    j["Hinf_F"] = qzero::to_json(fh.Hinf_F);
    j["Hfin_O_F"] = qzero::to_json(fh.Hfin_O_F);
    j["H_O_F"] = qzero::to_json(fh.H_O_F);
    j["Hfin_B"] = qzero::to_json(fh.Hfin_B);
  } else if (o.target == "subspace") {
    const qzero::SubspaceD z = in.resolved_subspace();
    const qzero::SubspaceD zp = qzero::orthogonal_complement(z, a);
    j["dim"] = z.dim();
    j["H_O_Z"] = qzero::to_json(qzero::height_subspace_D(ord, z));
    j["H_OD_Z"] = qzero::to_json(qzero::height_subspace_D(qzero::Order::standard(a), z));
    j["H_O_Zperp"] = qzero::to_json(qzero::height_subspace_D(ord, zp));
    j["H_VZ"] = qzero::to_json(qzero::height_subspace_K(qzero::subspace_image(z, a)));
  } else {
    throw qzero::Error(qzero::ErrorCode::InvalidInput, "unknown target \"" + o.target + "\"");
  }
  emit(j, o.json_out);
  return kExitOk;
}

int cmd_bound(const Options& o) {
  const qzero::AlgebraParams a(o.alpha, o.beta);
  const qzero::Order ord = o.order_file.empty() ? qzero::parse_order(Json(o.order), a)
                                                : qzero::parse_order(qzero::read_json_file(o.order_file), a);
  const auto [s, t] = qzero::s_t_constants(a);
  Json j;
  j["N"] = o.n;
  j["L"] = o.l;
  j["s"] = qzero::to_json(s);
  j["t"] = qzero::to_json(t);
  j["frakM"] = qzero::to_json(qzero::frakM(ord));
  j["C_K_1"] = qzero::to_json(qzero::C_K(1));
  j["B_K_4L"] = qzero::to_json(qzero::B_K(4 * o.l));
  j["A_K"] = qzero::to_json(qzero::A_K(o.n, o.l, a, ord));
  emit(j, o.json_out);
  return kExitOk;
}

int cmd_check(const Options& o) {
  const Json j = qzero::read_json_file(o.path);
  if (j.contains("format")) {
    const qzero::VerifyReport rep = qzero::verify_certificate(j);
    Json out{{"consistent", rep.consistent}, {"mismatches", rep.mismatches}, {"overall", qzero::to_string(rep.overall)}};
    emit(out, o.json_out);
    if (!rep.consistent) return kExitViolated;
    return exit_code_for(rep.overall);
  }
  qzero::Instance in = qzero::parse_instance(j);
  if (!o.order_file.empty()) in.order = qzero::parse_order(qzero::read_json_file(o.order_file), in.algebra);
  const auto results = qzero::check_instance(in.form, in.resolved_subspace(), in.resolved_order(), in.vector);
  bool ok = true;
  for (const auto& r : results) ok = ok && r.ok;
  emit(Json{{"all_ok", ok}, {"checks", checks_json(results)}}, o.json_out);
  return ok ? kExitOk : kExitViolated;
}

int cmd_twisted(const Options& o) {
  if (o.twist < 1) throw qzero::Error(qzero::ErrorCode::InvalidInput, "--n must be at least 1");
  const qzero::TwistedReport r = qzero::twisted_form_report(o.twist);
  Json j{{"n", r.n},
         {"index", qzero::to_json(r.index)},
         {"Hfin_O_F", qzero::to_json(r.hfin_o_f)},
         {"Hfin_O_F_pow4", qzero::to_json(r.hfin_o_f.power(4))},
         {"Hfin_B", qzero::to_json(r.hfin_b)},
         {"closed_forms_ok", r.closed_forms_ok}};
  emit(j, o.json_out);
  return r.closed_forms_ok ? kExitOk : kExitViolated;
}

int cmd_selftest(const Options& o) {
  const qzero::SelfTestReport rep = qzero::run_selftest(o.seed, o.iters);
  Json j{{"seed", o.seed}, {"iters", o.iters}, {"passed", rep.passed}, {"failed", rep.failed},
         {"failures", checks_json(rep.failures)}};
  emit(j, o.json_out);
  return rep.failed == 0 ? kExitOk : kExitViolated;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Small zeros of hermitian forms over quaternion algebras"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--order-file", o.order_file, "JSON file with an order basis");
    sub->add_option("--json-out", o.json_out, "Write the JSON report here instead of stdout");
  };

  auto* solve = app.add_subcommand("solve", "Find a basis of zeros and certify the height bounds");
  solve->add_option("instance", o.path, "Instance file")->required();
  solve->add_option("--cap", o.cap, "Enumeration cap (coefficient radius)")->check(CLI::PositiveNumber);
  solve->add_option("--parallel", o.parallel, "Worker threads for enumeration")->check(CLI::PositiveNumber);
  solve->add_option("--seed", o.seed, "Scheduling seed");
  add_common(solve);

  auto* height = app.add_subcommand("height", "Print heights of a vector, form or subspace");
  height->add_option("instance", o.path, "Instance file")->required();
  height->add_option("--target", o.target, "vector | form | subspace");
  add_common(height);

  auto* bound = app.add_subcommand("bound", "Print the constants of the main bound");
  bound->add_option("--n", o.n, "Number of variables")->required();
  bound->add_option("--l", o.l, "Subspace dimension")->required();
  bound->add_option("--alpha", o.alpha, "alpha (negative)")->required();
  bound->add_option("--beta", o.beta, "beta (negative)")->required();
  bound->add_option("--order", o.order, "od | hurwitz");
  add_common(bound);

  auto* check = app.add_subcommand("check", "Verify a certificate, or run the height comparisons on an instance");
  check->add_option("file", o.path, "Certificate or instance file")->required();
  add_common(check);

  auto* twisted = app.add_subcommand("remark42", "Finite heights of the twisted hyperbolic form");
  twisted->alias("twisted");
  twisted->add_option("--n", o.twist, "Twist parameter")->required();
  twisted->add_option("--json-out", o.json_out, "Write the JSON report here instead of stdout");

  auto* selftest = app.add_subcommand("selftest", "Randomized exact checks");
  selftest->add_option("--seed", o.seed, "Random seed");
  selftest->add_option("--iters", o.iters, "Iterations");
  selftest->add_option("--json-out", o.json_out, "Write the JSON report here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInvalid;
  }

  try {
    if (*solve) return cmd_solve(o);
    if (*height) return cmd_height(o);
    if (*bound) return cmd_bound(o);
    if (*check) return cmd_check(o);
    if (*twisted) return cmd_twisted(o);
    if (*selftest) return cmd_selftest(o);
  } catch (const qzero::Error& e) {
    qzero::log_error(e.what());
    return e.code() == qzero::ErrorCode::CapExceeded ? kExitCap : kExitInvalid;
  } catch (const std::exception& e) {
    qzero::log_error(e.what());
    return kExitInvalid;
  }
  return kExitInvalid;
}
