// Command-line front end: every pipeline behind one deterministic binary.
// JSON goes to stdout (17 significant digits), flow trajectories as CSV (12);
// exit 0 on success, 2 on numerical breakdown (details on stderr), 1 on
// usage or schema errors.
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <cmv/cmv.hpp>
#include <cmv/io.hpp>

#include "acceptance_items.hpp"

namespace {

using Cx = cmv::Cplx<double>;
using cmv::Json;

// `@path` pulls the value from a file, anything else is taken inline.
std::string slurp(const std::string& arg) {
  if (arg.empty() || arg[0] != '@') return arg;
  std::ifstream in(arg.substr(1));
  if (!in) throw cmv::ZeroArgument("cannot read " + arg.substr(1));
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json parse_json(const std::string& arg) { return Json::parse(slurp(arg)); }

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw cmv::ZeroArgument("cannot write " + out_path);
  out << text;
}

void emit_json(const Json& j, const std::string& out_path) {
  emit(cmv::canonical_dump(j) + "\n", out_path);
}

Json json_of_doubles(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(x);
  return a;
}

Json json_of_signs(const std::vector<int>& v) {
  Json a = Json::array();
  for (int x : v) a.push_back(x);
  return a;
}

bool is_real(const cmv::SchurSequence<double>& a) {
  for (const auto& z : a.prefix)
    if (std::abs(z.imag()) > 1e-14) return false;
  return std::abs(a.tail_value.imag()) <= 1e-14;
}

struct Options {
  std::string schur, schur_b, laurent, s0 = "0", lambda = "1", zeta;
  std::string scheme = "darboux", out;
  double r0 = 1, r1 = 1, er0sq = 1, er1sq = 1;
  // Looser than the library default: corner data typed on a command line
  // usually carries five or six significant digits.
  double rel = 1e-4;
  double t = 0, dt = 0, tol = cmv::default_tol;
  int n = 20, depth = 2, stride = 0, jobs = 1;
  bool quasi = false;
};

int run_examples() {
  const auto items = acceptance::run_all();
  int failures = 0;
  int index = 0;
  for (const auto& item : items) {
    ++index;
    if (!item.pass) ++failures;
    std::printf("%02d %-28s %s  (%s)\n", index, item.name.c_str(),
                item.pass ? "PASS" : "FAIL", item.detail.c_str());
  }
  std::printf("%d/%d passed\n", static_cast<int>(items.size()) - failures,
              static_cast<int>(items.size()));
  return failures == 0 ? 0 : 2;
}

void run_flow(const Options& o) {
  const Cx lambda = cmv::complex_from_arg(o.lambda);
  if (o.dt <= 0) throw cmv::ZeroArgument("step size must be positive");
  const int steps = static_cast<int>(std::lround(std::abs(o.t) / o.dt));
  if (steps < 1) throw cmv::ZeroArgument("time span shorter than one step");
  const int L = o.n;
  if (L < 1) throw cmv::ZeroArgument("need at least one tracked parameter");
  const int stride = o.stride > 0 ? o.stride : std::max(1, steps / 50);

  cmv::SchurSequence<double> a;
  if (!o.schur.empty()) a = cmv::schur_from_json(parse_json(o.schur));

  std::vector<double> times;
  std::vector<std::vector<Cx>> states;
  const auto snapshot = [&](double time, const std::vector<Cx>& row) {
    times.push_back(time);
    states.push_back(row);
  };

  if (o.scheme == "darboux") {
    if (o.t <= 0) throw cmv::ZeroArgument("darboux scheme runs forward in time");
    int count = 2 * steps + 8 + L;
    auto s = a;
    const auto row = [&](const cmv::SchurSequence<double>& q) {
      std::vector<Cx> r(L);
      for (int k = 1; k <= L; ++k) r[k - 1] = q.at(k);
      return r;
    };
    snapshot(0.0, row(s));
    for (int k = 1; k <= steps; ++k) {
      s = cmv::darboux_flow_step(s, lambda, o.dt, count, o.tol);
      count -= 2;
      if (k % stride == 0 || k == steps) snapshot(k * o.dt, row(s));
    }
  } else if (o.scheme == "rk4") {
    const double sign = o.t < 0 ? -1.0 : 1.0;
    const auto full = a.materialize(L + 1);
    std::vector<Cx> v(full.begin() + 1, full.end());
    snapshot(0.0, v);
    for (int k = 1; k <= steps; ++k) {
      v = cmv::integrate_flow(v, lambda, sign * o.dt, o.dt);
      if (k % stride == 0 || k == steps) snapshot(sign * k * o.dt, v);
    }
  } else {
    throw cmv::ZeroArgument("unknown scheme " + o.scheme);
  }
  emit(cmv::trajectory_csv(times, states), o.out);
}

void run_validate(const Options& o) {
  Json rep;
  rep["ok"] = true;
  if (!o.schur.empty()) {
    const auto a = cmv::schur_from_json(parse_json(o.schur));
    if (!o.quasi)
      for (std::size_t k = 0; k < a.prefix.size(); ++k)
        if (std::abs(a.prefix[k]) >= 1.0)
          throw cmv::InvalidSchurParameter("schur parameter " + std::to_string(k + 1) +
                                           " leaves the open disk");
    if (!o.quasi && a.tail == cmv::Tail::Constant && std::abs(a.tail_value) >= 1.0)
      throw cmv::InvalidSchurParameter("constant tail leaves the open disk");
    rep["schur"] = cmv::json_of(a);
  }
  if (!o.schur_b.empty()) {
    const auto b = cmv::schur_from_json(parse_json(o.schur_b));
    if (!o.quasi)
      for (std::size_t k = 0; k < b.prefix.size(); ++k)
        if (std::abs(b.prefix[k]) >= 1.0)
          throw cmv::InvalidSchurParameter("target parameter " + std::to_string(k + 1) +
                                           " leaves the open disk");
    rep["schur_b"] = cmv::json_of(b);
  }
  if (!o.laurent.empty()) {
    const auto l = cmv::laurent_from_json(parse_json(o.laurent));
    if (l.degree() < 1) throw cmv::ZeroArgument("transformation must have positive degree");
    rep["laurent"] = cmv::json_of(l);
  }
  emit_json(rep, o.out);
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  if (const char* env = std::getenv("CMV_DARBOUX_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && v > 0) o.tol = v;
  }

  CLI::App app{"Darboux transformations of CMV matrices"};
  app.require_subcommand(1);
  app.add_option("--out", o.out, "write output to a file instead of stdout");
  app.add_option("--tol", o.tol, "pivot tolerance (env CMV_DARBOUX_TOL)");
  app.add_option("--jobs", o.jobs, "worker budget for grid scans")
      ->check(CLI::PositiveNumber);

  const auto add_schur = [&](CLI::App* c, bool required = true) {
    auto* opt = c->add_option("--schur", o.schur, "source parameters, inline JSON or @file");
    if (required) opt->required();
  };
  const auto add_schur_b = [&](CLI::App* c) {
    c->add_option("--schur-b", o.schur_b, "target parameters, inline JSON or @file")
        ->required();
  };
  const auto add_laurent = [&](CLI::App* c, bool required = true) {
    auto* opt = c->add_option("--laurent", o.laurent,
                              "transformation coefficients, inline JSON or @file");
    if (required) opt->required();
  };
  const auto add_corner = [&](CLI::App* c) {
    c->add_option("--r0", o.r0, "free corner entry r0")->required();
    c->add_option("--r1", o.r1, "free corner entry r1")->required();
    c->add_option("--s0", o.s0, "free corner entry s0, re or re,im");
  };
  const auto add_quasi_corner = [&](CLI::App* c) {
    c->add_option("--er0sq", o.er0sq, "signed corner pivot e0 r0^2")->required();
    c->add_option("--er1sq", o.er1sq, "signed corner pivot e1 r1^2")->required();
    c->add_option("--s0", o.s0, "free corner entry s0, re or re,im");
  };

  auto* fwd = app.add_subcommand("forward", "run a Darboux step on source data");
  add_schur(fwd);
  add_laurent(fwd);
  fwd->add_option("--n", o.n, "number of target parameters");

  auto* inv = app.add_subcommand("inverse", "grow a reversed factor from a target");
  add_schur_b(inv);
  add_laurent(inv);
  add_corner(inv);
  inv->add_option("--n", o.n, "number of recovered parameters");

  auto* cls = app.add_subcommand("classify", "label the solution at a free corner");
  add_schur_b(cls);
  add_laurent(cls);
  add_corner(cls);
  cls->add_option("--depth", o.depth, "pivot depth to probe");
  cls->add_option("--rel", o.rel, "branch acceptance threshold");

  auto* qfwd = app.add_subcommand("quasi-forward", "signed Darboux step");
  add_schur(qfwd);
  add_laurent(qfwd);
  qfwd->add_option("--n", o.n, "number of target parameters");

  auto* qinv = app.add_subcommand("quasi-inverse", "signed reversed factor");
  add_schur_b(qinv);
  add_laurent(qinv);
  add_quasi_corner(qinv);
  qinv->add_option("--n", o.n, "number of recovered parameters");

  auto* qcls = app.add_subcommand("quasi-classify", "label the signed corner");
  add_schur_b(qcls);
  add_laurent(qcls);
  add_quasi_corner(qcls);
  qcls->add_option("--depth", o.depth, "pivot depth to probe");
  qcls->add_option("--rel", o.rel, "branch acceptance threshold");

  auto* sz = app.add_subcommand("szego", "Jacobi projections of the doubled matrix");
  add_schur(sz);
  add_laurent(sz, false);
  sz->add_option("--n", o.n, "window size");

  auto* flow = app.add_subcommand("flow", "integrate the Schur flow");
  add_schur(flow, false);
  flow->add_option("--lambda", o.lambda, "flow direction, re or re,im")->required();
  flow->add_option("--t", o.t, "time horizon")->required();
  flow->add_option("--dt", o.dt, "step size")->required();
  flow->add_option("--scheme", o.scheme, "darboux or rk4");
  flow->add_option("--n", o.n, "tracked parameters per row");
  flow->add_option("--stride", o.stride, "sample every k-th step (0 = auto)");

  auto* qr = app.add_subcommand("qr", "shifted QR factor and its Cholesky bridge");
  add_schur(qr);
  qr->add_option("--zeta", o.zeta, "shift inside the disk, re or re,im")->required();
  qr->add_option("--n", o.n, "window size");

  auto* val = app.add_subcommand("validate", "schema-check inputs and echo them");
  add_schur(val, false);
  val->add_option("--schur-b", o.schur_b, "target parameters, inline JSON or @file");
  add_laurent(val, false);
  val->add_flag("--quasi", o.quasi, "allow parameters outside the unit disk");

  app.add_subcommand("examples", "replay the worked examples and report PASS/FAIL");

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (fwd->parsed()) {
      const auto a = cmv::schur_from_json(parse_json(o.schur));
      const auto l = cmv::laurent_from_json(parse_json(o.laurent));
      const auto res = cmv::forward(a, l, o.n, o.tol);
      Json j;
      j["target"] = cmv::json_of(res.target);
      j["factor"] = cmv::json_of(res.factor);
      j["radicands"] = json_of_doubles(res.radicands);
      emit_json(j, o.out);
    } else if (inv->parsed()) {
      const auto b = cmv::schur_from_json(parse_json(o.schur_b));
      const auto l = cmv::laurent_from_json(parse_json(o.laurent));
      const cmv::InverseParameters<double> p{o.r0, o.r1, cmv::complex_from_arg(o.s0)};
      const auto res = cmv::inverse(b, l, p, o.n, o.tol);
      Json j;
      j["source"] = cmv::json_of(res.source);
      j["factor"] = cmv::json_of(res.factor);
      j["radicands"] = json_of_doubles(res.radicands);
      emit_json(j, o.out);
    } else if (cls->parsed()) {
      const auto b = cmv::schur_from_json(parse_json(o.schur_b));
      const auto l = cmv::laurent_from_json(parse_json(o.laurent));
      const cmv::InverseParameters<double> p{o.r0, o.r1, cmv::complex_from_arg(o.s0)};
      emit_json(cmv::json_of(cmv::classify(b, l, p, o.depth, o.tol, o.rel)), o.out);
    } else if (qfwd->parsed()) {
      const auto a = cmv::quasi_schur_from_json(parse_json(o.schur));
      const auto l = cmv::laurent_from_json(parse_json(o.laurent));
      const auto res = cmv::quasi_forward(a, l, o.n, o.tol);
      Json j;
      j["target"] = cmv::json_of(res.target);
      j["factor"] = cmv::json_of(res.factor);
      j["factor_signs"] = json_of_signs(res.factor_signs);
      j["pivots"] = json_of_doubles(res.pivots);
      emit_json(j, o.out);
    } else if (qinv->parsed()) {
      const auto b = cmv::quasi_schur_from_json(parse_json(o.schur_b));
      const auto l = cmv::laurent_from_json(parse_json(o.laurent));
      const cmv::QuasiInverseParameters<double> p{o.er0sq, cmv::complex_from_arg(o.s0),
                                                  o.er1sq};
      const auto res = cmv::quasi_inverse(b, l, p, o.n, o.tol);
      Json j;
      j["source"] = cmv::json_of(res.source);
      j["source_signs"] = json_of_signs(res.source_signs);
      j["factor"] = cmv::json_of(res.factor);
      j["pivots"] = json_of_doubles(res.pivots);
      emit_json(j, o.out);
    } else if (qcls->parsed()) {
      const auto b = cmv::quasi_schur_from_json(parse_json(o.schur_b));
      const auto l = cmv::laurent_from_json(parse_json(o.laurent));
      const cmv::QuasiInverseParameters<double> p{o.er0sq, cmv::complex_from_arg(o.s0),
                                                  o.er1sq};
      emit_json(cmv::json_of(cmv::quasi_classify(b, l, p, o.depth, o.tol, o.rel)), o.out);
    } else if (sz->parsed()) {
      const auto a = cmv::schur_from_json(parse_json(o.schur));
      const auto pj = cmv::szego_jacobi(a, o.n, o.tol);
      Json j;
      j["even"] = cmv::json_of(pj.even);
      j["odd"] = cmv::json_of(pj.odd);
      j["mixing_defect"] = pj.mixing_defect;
      if (is_real(a)) j["dvz"] = cmv::json_of(cmv::dvz(a, std::max(2, o.n / 2), o.tol));
      if (!o.laurent.empty()) {
        const auto l = cmv::laurent_from_json(parse_json(o.laurent));
        const auto split = cmv::szego_factor_split(a, l, o.n, o.tol);
        Json s;
        s["even"] = cmv::json_of(split.even);
        s["odd"] = cmv::json_of(split.odd);
        s["rotation_residual"] = split.rotation_residual;
        s["pattern_defect"] = split.pattern_defect;
        s["factorization_residual"] = split.factorization_residual;
        s["window"] = split.window;
        j["split"] = s;
      }
      emit_json(j, o.out);
    } else if (flow->parsed()) {
      run_flow(o);
    } else if (qr->parsed()) {
      const auto a = cmv::schur_from_json(parse_json(o.schur));
      const Cx zeta = cmv::complex_from_arg(o.zeta);
      const auto C = cmv::build_cmv(a, o.n, o.tol);
      const auto res = cmv::qr_shifted(C, zeta, o.tol);
      cmv::HermitianLaurent<double> lz;
      lz.beta = 1 + std::norm(zeta);
      lz.alpha = {-std::conj(zeta)};
      const auto M = cmv::eval_on_cmv(lz, C);
      const auto ch = cmv::banded_cholesky(M);
      const int w = std::min({res.valid, M.valid, ch.valid});
      const double defect =
          (res.r - ch.m.adjoint()).topLeftCorner(w, w).cwiseAbs().maxCoeff();
      Json j;
      j["zeta"] = cmv::json_of(zeta);
      j["window"] = w;
      j["r"] = cmv::json_of_window(res.r, w);
      j["bridge_defect"] = defect;
      emit_json(j, o.out);
    } else if (val->parsed()) {
      run_validate(o);
    } else {
      return run_examples();
    }
  } catch (const cmv::Breakdown& b) {
    Json err;
    err["error"] = b.what();
    err["index"] = b.index;
    std::fprintf(stderr, "%s\n", cmv::canonical_dump(err).c_str());
    return 2;
  } catch (const cmv::BlowUp& b) {
    Json err;
    err["error"] = b.what();
    std::fprintf(stderr, "%s\n", cmv::canonical_dump(err).c_str());
    return 2;
  } catch (const std::exception& e) {
    Json err;
    err["error"] = e.what();
    std::fprintf(stderr, "%s\n", cmv::canonical_dump(err).c_str());
    return 1;
  }
  return 0;
}
