#include "findim/commands.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "findim/corpus.hpp"
#include "findim/error.hpp"
#include "findim/module_expr.hpp"

namespace findim {

namespace {

using json = nlohmann::ordered_json;

const std::vector<std::string> kCommands = {"check", "projectives", "standard", "pd", "phi",
                                            "psi", "decompose", "ss-check", "epss", "filtration",
                                            "bound", "radcube-bound", "three-props"};

const std::vector<std::string> kValueKeys = {"dim", "L", "pd", "phi", "psi", "pfd_c_m", "s", "card",
                                             "alpha", "beta", "epsilon0", "bound", "psi_dim_bound",
                                             "finitistic_bound", "cardinal_bound"};

struct Options {
  std::string command;
  std::string algebra;
  std::string module;
  std::string system = "standard";
  int depth = kDefaultDepth;
  std::optional<std::uint64_t> prime;
  std::string format = "text";
  std::uint64_t seed = 1;
  std::vector<std::string> assume;
  int samples = 12;
};

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::Undecided:
      return 2;
    case ErrorCode::CapExceeded:
    case ErrorCode::EpssNotConverged:
    case ErrorCode::ValidationFailed:
    case ErrorCode::CoverNotFound:
    case ErrorCode::NonSplit:
      return 3;
    default:
      return 1;
  }
}

json module_json(const Module& m) {
  return json{{"label", m.label()}, {"dims", m.dims()}, {"dim", m.total_dim()}};
}

json optional_json(const std::optional<int>& v) { return v ? json(*v) : json(nullptr); }

const char* membership_name(Membership m) {
  switch (m) {
    case Membership::Member: return "member";
    case Membership::NonMember: return "nonmember";
    case Membership::Unknown: return "unknown";
  }
  return "unknown";
}

const char* pd_status_name(PdStatus s) {
  switch (s) {
    case PdStatus::Finite: return "finite";
    case PdStatus::Infinite: return "infinite";
    case PdStatus::Unknown: return "unknown";
  }
  return "unknown";
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "holds";
    case Verdict::Vacuous: return "vacuous";
    case Verdict::Violated: return "violated";
    case Verdict::Undecided: return "undecided";
  }
  return "undecided";
}

class Session {
 public:
  explicit Session(Options opts) : opts_(std::move(opts)) {
    values_ = json::object();
    for (const auto& k : kValueKeys) values_[k] = nullptr;
    result_ = json::object();
  }

  int run(std::ostream& out, std::ostream& err) {
    int code = 0;
    std::optional<std::pair<std::string, std::string>> error;
    try {
      load();
      dispatch();
      code = inconclusive_ ? 2 : 0;
    } catch (const Error& e) {
      code = exit_code_for(e.code());
      error = {std::string(error_code_name(e.code())), e.what()};
      if (e.code() == ErrorCode::Undecided) inconclusive_ = true;
      status_ = inconclusive_ ? "undecided" : "error";
    } catch (const std::exception& e) {
      code = 3;
      error = {"Internal", e.what()};
      status_ = "error";
    }

    json report;
    report["command"] = opts_.command;
    report["algebra"] = opts_.algebra;
    report["prime"] = algebra_ ? json(algebra_->prime()) : json(nullptr);
    report["version"] = kVersion;
    report["status"] = status_;
    report["exit_code"] = code;
    report["inconclusive"] = inconclusive_;
    report["error"] = error ? json{{"code", error->first}, {"message", error->second}} : json(nullptr);
    report["values"] = values_;
    report["result"] = result_;

    if (opts_.format == "json") {
      out << report.dump(2) << "\n";
    } else {
      render_text(report, out);
      if (error) err << "error: " << error->first << ": " << error->second << "\n";
    }
    return code;
  }

 private:
  // ---- loading ------------------------------------------------------------

  void load() {
    std::string text;
    const auto names = corpus_names();
    if (std::find(names.begin(), names.end(), opts_.algebra) != names.end()) {
      text = std::string(corpus_text(opts_.algebra));
      corpus_name_ = opts_.algebra;
    } else {
      std::ifstream in(opts_.algebra);
      if (!in) {
        throw Error(ErrorCode::InvalidArgument,
                    "'" + opts_.algebra + "' is neither a corpus name nor a readable file");
      }
      std::stringstream buf;
      buf << in.rdbuf();
      text = buf.str();
    }
    spec_ = parse_algebra_file(text);
    std::optional<std::uint64_t> prime = opts_.prime;
    if (!prime) {
      if (const char* env = std::getenv("FINDIM_PRIME"); env && *env) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (*end != '\0') throw Error(ErrorCode::InvalidArgument, "FINDIM_PRIME is not an integer");
        prime = v;
      }
    }
    algebra_ = build_algebra(spec_, prime);
    registry_.emplace(algebra_);
  }

  EvalContext context() const {
    EvalContext ctx;
    ctx.algebra = algebra_;
    ctx.system = system_ ? &*system_ : nullptr;
    ctx.epss = epss_ ? &*epss_ : nullptr;
    ctx.corpus_name = corpus_name_;
    return ctx;
  }

  const StratSystem& system() {
    if (system_) return *system_;
    std::vector<Module> theta;
    if (opts_.system == "standard") {
      theta = standard_modules(algebra_);
    } else {
      std::stringstream ss(opts_.system);
      std::string part;
      while (std::getline(ss, part, ';')) {
        if (part.find_first_not_of(" \t") == std::string::npos) continue;
        theta.push_back(eval_module_expr(part, context()));
      }
      if (theta.empty()) throw Error(ErrorCode::InvalidArgument, "--system lists no modules");
    }
    StratSystem sys = verify_stratifying_system(theta);
    if (!sys.verified()) {
      std::string msg = "--system is not a stratifying system:";
      for (int i : sys.not_indecomposable) msg += " theta(" + std::to_string(i) + ") decomposable;";
      for (auto [j, i] : sys.hom_violations) msg += " Hom(" + std::to_string(j) + "," + std::to_string(i) + ")!=0;";
      for (auto [j, i] : sys.ext_violations) msg += " Ext(" + std::to_string(j) + "," + std::to_string(i) + ")!=0;";
      throw Error(ErrorCode::InvalidArgument, msg);
    }
    system_ = std::move(sys);
    return *system_;
  }

  const Epss& epss() {
    if (!epss_) epss_ = build_epss(system());
    return *epss_;
  }

  Module module() {
    if (opts_.module.empty()) throw Error(ErrorCode::InvalidArgument, opts_.command + " needs --module");
    const ModuleExpr expr = parse_module_expr(opts_.module);
    // Pull in the system and epss lazily, only when the expression names them.
    std::function<void(const ModuleExpr&)> scan = [&](const ModuleExpr& e) {
      if (e.kind == ModuleExpr::Kind::EpssQ || (e.kind == ModuleExpr::Kind::Named && (e.name == "K" || e.name == "Qsum"))) {
        epss();
      }
      if (e.kind == ModuleExpr::Kind::Named && e.name == "theta") system();
      for (const auto& c : e.children) scan(c);
    };
    scan(expr);
    return eval_module_expr(expr, context());
  }

  std::string class_label(std::size_t id) { return registry_->info(id).witness.label(); }

  FiltrationOptions filtration_options() const {
    FiltrationOptions o;
    o.depth_cap = opts_.depth;
    o.seed = opts_.seed;
    return o;
  }

  // ---- commands -----------------------------------------------------------

  void dispatch() {
    static const std::map<std::string, void (Session::*)()> table = {
        {"check", &Session::cmd_check},         {"projectives", &Session::cmd_projectives},
        {"standard", &Session::cmd_standard},   {"pd", &Session::cmd_pd},
        {"phi", &Session::cmd_phi},             {"psi", &Session::cmd_psi},
        {"decompose", &Session::cmd_decompose}, {"ss-check", &Session::cmd_ss_check},
        {"epss", &Session::cmd_epss},           {"filtration", &Session::cmd_filtration},
        {"bound", &Session::cmd_bound},         {"radcube-bound", &Session::cmd_radcube},
        {"three-props", &Session::cmd_three_props},
    };
    (this->*table.at(opts_.command))();
  }

  void cmd_check() {
    const Quiver& q = algebra_->quiver();
    values_["dim"] = algebra_->dimension();
    values_["L"] = algebra_->nilpotency_degree();
    result_["vertices"] = q.vertex_count();
    json arrows = json::array();
    for (const auto& a : q.arrows()) arrows.push_back({{"name", a.name}, {"source", a.source}, {"target", a.target}});
    result_["arrows"] = arrows;
    json rels = json::array();
    std::stringstream rendered(render_algebra_spec(spec_));
    for (std::string line; std::getline(rendered, line);)
      if (line.rfind("rel ", 0) == 0) rels.push_back(line.substr(4));
    result_["relations"] = rels;
    json proj = json::array();
    for (int v = 1; v <= q.vertex_count(); ++v) proj.push_back(module_json(projective(algebra_, v)));
    result_["projectives"] = proj;
    if (!opts_.module.empty()) {
      const Module m = module();
      json mj = module_json(m);
      mj["satisfies_relations"] = m.satisfies_relations();
      const Indecomposability ind = m.is_zero() ? Indecomposability{} : indecomposability(m);
      mj["indecomposable"] = ind.indecomposable;
      mj["non_split"] = ind.non_split;
      result_["module"] = mj;
    }
  }

  void cmd_projectives() {
    values_["dim"] = algebra_->dimension();
    json proj = json::array();
    for (int v = 1; v <= algebra_->vertex_count(); ++v) {
      const Module p = projective(algebra_, v);
      json pj = module_json(p);
      pj["vertex"] = v;
      pj["radical"] = module_json(radical(p).module);
      proj.push_back(pj);
    }
    result_["projectives"] = proj;
  }

  json system_json(const StratSystem& sys) {
    json theta = json::array();
    for (const auto& m : sys.theta) theta.push_back(module_json(m));
    return json{{"theta", theta},
                {"verified", sys.verified()},
                {"not_indecomposable", sys.not_indecomposable},
                {"hom_violations", sys.hom_violations},
                {"ext_violations", sys.ext_violations}};
  }

  void cmd_standard() {
    const StratSystem sys = verify_stratifying_system(standard_modules(algebra_));
    result_["system"] = system_json(sys);
    json pds = json::array();
    for (const auto& m : sys.theta) pds.push_back(pd_json(pd(m, *registry_, opts_.depth)));
    result_["pd"] = pds;
  }

  json pd_json(const PdResult& r) {
    if (r.status == PdStatus::Unknown) inconclusive_ = true;
    json cycle = json::array();
    for (std::size_t c : r.cycle) cycle.push_back(class_label(c));
    return json{{"status", pd_status_name(r.status)},
                {"value", r.status == PdStatus::Finite ? json(r.value) : json(nullptr)},
                {"cycle", cycle},
                {"depth_reached", r.depth_reached}};
  }

  void cmd_pd() {
    const Module m = module();
    const PdResult r = pd(m, *registry_, opts_.depth);
    result_["module"] = module_json(m);
    result_["pd"] = pd_json(r);
    status_ = pd_status_name(r.status);
    if (r.status == PdStatus::Finite) values_["pd"] = r.value;
  }

  void cmd_phi() {
    const Module m = module();
    const PhiResult r = phi(m, *registry_, opts_.depth);
    result_["module"] = module_json(m);
    result_["rank_trace"] = r.rank_trace;
    result_["orbit_size"] = r.orbit_size;
    result_["orbit_closed_at"] = optional_json(r.orbit_closed_at);
    values_["phi"] = optional_json(r.value);
    if (!r.value) {
      inconclusive_ = true;
      status_ = "unknown";
    }
  }

  json psi_json(const PsiReport& r) {
    json cm = json::array();
    for (std::size_t c : r.c_m) cm.push_back(class_label(c));
    return json{{"phi", r.phi}, {"rank_trace", r.rank_trace}, {"c_m", cm}, {"pfd_c_m", r.pfd_c_m}, {"psi", r.psi}};
  }

  void cmd_psi() {
    const Module m = module();
    result_["module"] = module_json(m);
    const PsiReport r = psi(m, *registry_, opts_.depth);
    result_["psi"] = psi_json(r);
    values_["phi"] = r.phi;
    values_["psi"] = r.psi;
    values_["pfd_c_m"] = r.pfd_c_m;
  }

  void cmd_decompose() {
    const Module m = module();
    const DecompositionResult d = registry_->decompose(m);
    result_["module"] = module_json(m);
    json summands = json::array();
    for (const auto& s : d.summands) {
      json sj = module_json(registry_->info(s.class_id).witness);
      sj["multiplicity"] = s.multiplicity;
      summands.push_back(sj);
    }
    result_["summands"] = summands;
    json proj = json::array();
    for (auto [v, k] : d.projective_part) {
      proj.push_back({{"label", "P(" + std::to_string(v) + ")"}, {"multiplicity", k}});
    }
    result_["projective_part"] = proj;
    result_["round_trip_verified"] = d.round_trip.is_isomorphism();
    values_["dim"] = m.total_dim();
  }

  json certificate_json(const FiltrationCertificate& cert, std::size_t t) {
    json layers = json::array();
    for (const auto& l : cert.layers) {
      layers.push_back({{"index", l.index}, {"multiplicity", l.multiplicity}, {"kernel_dims", l.kernel.dims()}});
    }
    const SupportData sd = support_data(cert, t);
    return json{{"layers", layers},
                {"multiplicities", sd.multiplicities},
                {"support", sd.support},
                {"min", optional_json(sd.min)},
                {"max", optional_json(sd.max)}};
  }

  void cmd_ss_check() {
    const StandardlyStratifiedResult r = is_standardly_stratified(algebra_, opts_.depth);
    status_ = membership_name(r.status);
    if (r.status == Membership::Unknown) inconclusive_ = true;
    json proj = json::array();
    for (std::size_t i = 0; i < r.projectives.size(); ++i) {
      json pj = {{"label", "P(" + std::to_string(i + 1) + ")"}, {"status", membership_name(r.projectives[i].status)}};
      pj["certificate"] = r.projectives[i].certificate
                              ? certificate_json(*r.projectives[i].certificate, static_cast<std::size_t>(algebra_->vertex_count()))
                              : json(nullptr);
      proj.push_back(pj);
    }
    result_["projectives"] = proj;
  }

  void cmd_epss() {
    const Epss& e = epss();
    result_["system"] = system_json(*system_);
    json q = json::array(), k = json::array();
    for (const auto& m : e.q) q.push_back(module_json(m));
    for (const auto& m : e.k) k.push_back(module_json(m));
    result_["q"] = q;
    result_["k"] = k;
    result_["q_sum"] = module_json(e.q_sum);
    result_["passes"] = e.passes;
  }

  void cmd_filtration() {
    const StratSystem& sys = system();
    const Module m = module();
    const FiltrationResult r = filtration_search(m, sys, filtration_options());
    result_["module"] = module_json(m);
    status_ = membership_name(r.status);
    if (r.status == Membership::Unknown) inconclusive_ = true;
    result_["certificate"] = r.certificate ? certificate_json(*r.certificate, sys.size()) : json(nullptr);
  }

  Assumptions assumptions() const {
    Assumptions a;
    for (const auto& s : opts_.assume) {
      if (s == "3-finitistic") a.three_finitistic = true;
      if (s == "3-cardinal") a.three_cardinal = true;
    }
    return a;
  }

  void cmd_bound() {
    const StratSystem& sys = system();
    const InfinitePart ip = infinite_part(sys, *registry_, opts_.depth);
    const Epss* e = ip.infinity.size() >= 2 && ip.infinity.size() <= 3 ? &epss() : nullptr;
    const BoundReport r = finitistic_bound(sys, e, *registry_, opts_.depth, assumptions());
    result_["system"] = system_json(sys);
    json pds = json::array();
    for (const auto& p : ip.pds) pds.push_back(pd_json(p));
    result_["pd"] = pds;
    if (e) {
      json q = json::array();
      for (const auto& m : e->q) q.push_back(module_json(m));
      result_["q"] = q;
    }
    result_["infinity"] = r.infinity;
    result_["theorem"] = r.theorem;
    result_["supported"] = r.supported;
    result_["assumptions_used"] = r.assumptions_used;
    values_["s"] = r.s;
    values_["card"] = r.card;
    values_["alpha"] = optional_json(r.alpha);
    values_["beta"] = optional_json(r.beta);
    values_["epsilon0"] = optional_json(r.epsilon0);
    values_["bound"] = optional_json(r.bound);
    values_["psi_dim_bound"] = optional_json(r.psi_dim_bound);
    values_["finitistic_bound"] = optional_json(r.finitistic_bound);
    values_["cardinal_bound"] = optional_json(r.cardinal_bound);
    if (!r.supported) {
      // No bound is available for four or more infinite members.
      inconclusive_ = true;
      status_ = "undecided";
    }
  }

  void cmd_radcube() {
    const RadCubeReport r = radcube_pfd_bound(algebra_, *registry_, opts_.depth);
    result_["psi"] = psi_json(r.psi);
    values_["L"] = algebra_->nilpotency_degree();
    values_["phi"] = r.psi.phi;
    values_["psi"] = r.psi.psi;
    values_["pfd_c_m"] = r.psi.pfd_c_m;
    values_["bound"] = r.bound;
  }

  void cmd_three_props() {
    const StratSystem& sys = system();
    const Epss& e = epss();
    std::vector<Module> candidates;
    const auto t = static_cast<int>(sys.size());
    for (int i = 1; i <= t; ++i) candidates.push_back(sys.at(i).with_label("theta(" + std::to_string(i) + ")"));
    for (int i = 1; i <= t; ++i) candidates.push_back(e.q[static_cast<std::size_t>(i - 1)].with_label("Q(" + std::to_string(i) + ")"));
    for (int i = 1; i <= t; ++i) {
      const Module& k = e.k[static_cast<std::size_t>(i - 1)];
      if (!k.is_zero()) candidates.push_back(k.with_label("K(" + std::to_string(i) + ")"));
    }
    for (int i = 1; i <= t; ++i) {
      for (int j = i + 1; j <= t; ++j) {
        candidates.push_back(direct_sum({sys.at(i), sys.at(j)}, algebra_)
                                 .with_label("theta(" + std::to_string(i) + ") + theta(" + std::to_string(j) + ")"));
      }
    }
    for (int i = 1; i <= t; ++i) {
      for (int j = 1; j <= t; ++j) {
        if (i == j) continue;
        const Extension x = universal_extension(sys.at(j), sys.at(i));
        if (x.multiplicity > 0) {
          candidates.push_back(x.middle.with_label("E(" + std::to_string(j) + "," + std::to_string(i) + ")"));
        }
      }
    }
    // Deterministic Fisher-Yates driven by the seed.
    std::mt19937_64 rng(opts_.seed);
    for (std::size_t n = candidates.size(); n > 1; --n) std::swap(candidates[n - 1], candidates[rng() % n]);
    std::vector<std::pair<Module, FiltrationCertificate>> samples;
    for (const auto& m : candidates) {
      if (static_cast<int>(samples.size()) >= opts_.samples) break;
      FiltrationResult r = filtration_search(m, sys, filtration_options());
      if (r.status == Membership::Member) samples.emplace_back(m, std::move(*r.certificate));
    }
    const ThreePropertiesReport r = check_three_properties(sys, e, samples, *registry_, opts_.depth);
    result_["infinity"] = r.infinity;
    json rows = json::array();
    for (const auto& s : r.samples) {
      if (s.finitistic == Verdict::Undecided || s.cardinal == Verdict::Undecided) inconclusive_ = true;
      rows.push_back({{"label", s.label},
                      {"support_module", s.support_module},
                      {"support_kernel", s.support_kernel},
                      {"pd_module", pd_json(s.pd_module)},
                      {"pd_kernel", pd_json(s.pd_kernel)},
                      {"finitistic", verdict_name(s.finitistic)},
                      {"cardinal", verdict_name(s.cardinal)},
                      {"note", s.note}});
    }
    result_["samples"] = rows;
    result_["finitistic_counterexample"] = r.finitistic_counterexample;
    result_["cardinal_counterexample"] = r.cardinal_counterexample;
    values_["card"] = r.infinity.size();
    if (inconclusive_) status_ = "undecided";
  }

  // ---- text rendering -----------------------------------------------------

  static void render_value(const json& v, const std::string& indent, std::ostream& out) {
    if (v.is_object()) {
      for (const auto& [k, x] : v.items()) {
        if (x.is_object() || (x.is_array() && !x.empty() && x.front().is_object())) {
          out << indent << k << ":\n";
          render_value(x, indent + "  ", out);
        } else {
          out << indent << k << ": " << x.dump() << "\n";
        }
      }
    } else if (v.is_array()) {
      for (std::size_t i = 0; i < v.size(); ++i) {
        out << indent << "- [" << i + 1 << "]\n";
        render_value(v[i], indent + "  ", out);
      }
    } else {
      out << indent << v.dump() << "\n";
    }
  }

  static void render_text(const json& report, std::ostream& out) {
    out << report["command"].get<std::string>() << " " << report["algebra"].get<std::string>()
        << "  (p = " << report["prime"].dump() << ")\n";
    out << "status: " << report["status"].get<std::string>() << "\n";
    for (const auto& [k, v] : report["values"].items())
      if (!v.is_null()) out << k << " = " << v.dump() << "\n";
    render_value(report["result"], "", out);
  }

  Options opts_;
  AlgebraSpec spec_;
  AlgebraPtr algebra_;
  std::string corpus_name_;
  std::optional<ClassRegistry> registry_;
  std::optional<StratSystem> system_;
  std::optional<Epss> epss_;
  json values_;
  json result_;
  std::string status_ = "ok";
  bool inconclusive_ = false;
};

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opts;
  CLI::App app{"Homological invariants of bound quiver algebras over F_p", "findim"};
  app.add_option("command", opts.command, "Command to run")->required()->check(CLI::IsMember(kCommands));
  app.add_option("algebra", opts.algebra, "Corpus name (ex23, ex53, ex54) or algebra file")->required();
  app.add_option("--module", opts.module, "Module expression");
  app.add_option("--system", opts.system, "'standard' or ';'-separated module expressions");
  app.add_option("--depth", opts.depth, "Omega exploration depth")->check(CLI::Range(0, 100000));
  app.add_option("--prime", opts.prime, "Field characteristic (overrides FINDIM_PRIME and the file)");
  app.add_option("--format", opts.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--seed", opts.seed, "Seed for sampling and random searches");
  app.add_option("--assume", opts.assume, "3-finitistic and/or 3-cardinal")
      ->check(CLI::IsMember({"3-finitistic", "3-cardinal"}));
  app.add_option("--samples", opts.samples, "Number of sample modules for three-props")->check(CLI::Range(0, 100000));
  app.add_flag_callback("--version", [&out] {
    out << "findim " << kVersion << "\n";
    throw CLI::Success();
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }
  return Session(std::move(opts)).run(out, err);
}

}  // namespace findim
