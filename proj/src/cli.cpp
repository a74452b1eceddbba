#include "qpsf/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <functional>
#include <optional>
#include <set>
#include <sstream>

#include "qpsf/diagnostics.hpp"
#include "qpsf/distributions.hpp"
#include "qpsf/errors.hpp"
#include "qpsf/evolution.hpp"
#include "qpsf/fock_distributions.hpp"
#include "qpsf/log.hpp"
#include "qpsf/qpsf_file.hpp"
#include "qpsf/reconstruction.hpp"
#include "qpsf/render.hpp"
#include "qpsf/states.hpp"

namespace qpsf::cli {
namespace {

namespace fs = std::filesystem;

using KeyValues = std::map<std::string, double>;

// "a=1,b=-2.5" -> {a: 1, b: -2.5}
KeyValues parse_key_values(const std::string& text, const char* what) {
  KeyValues out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ConfigurationError(std::string(what) + ": expected key=value, got '" + item + "'");
    const std::string key = item.substr(0, eq);
    const std::string raw = item.substr(eq + 1);
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(raw, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != raw.size() || raw.empty()) {
      throw ConfigurationError(std::string(what) + ": '" + raw + "' is not a number (key " + key + ")");
    }
    out[key] = value;
  }
  return out;
}

class Args {
 public:
  Args(KeyValues values, std::string context) : values_(std::move(values)), context_(std::move(context)) {}

  double get(const std::string& key, double fallback) {
    used_.insert(key);
    const auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
  }
  std::optional<double> find(const std::string& key) {
    used_.insert(key);
    const auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    return it->second;
  }
  // Rejects keys nobody asked for.
  void finish() const {
    for (const auto& [key, value] : values_) {
      if (!used_.count(key)) throw ConfigurationError(context_ + ": unknown key '" + key + "'");
    }
  }

 private:
  KeyValues values_;
  std::string context_;
  std::set<std::string> used_;
};

struct StateSpec {
  std::string kind;
  KeyValues args;
};

// "coherent:alpha0=1" or kind plus separate argument text.
StateSpec parse_state_spec(const std::string& kind, const std::string& args) {
  return {kind, parse_key_values(args, "state arguments")};
}

StateSpec parse_state_spec(const std::string& combined) {
  const auto colon = combined.find(':');
  if (colon == std::string::npos) return parse_state_spec(combined, "");
  return parse_state_spec(combined.substr(0, colon), combined.substr(colon + 1));
}

complex alpha_arg(Args& a) {
  const auto abs = a.find("alpha0_abs");
  const auto arg = a.find("alpha0_arg");
  const auto re = a.find("alpha0");
  const auto im = a.find("alpha0_im");
  if (abs || arg) {
    if (re || im) throw ConfigurationError("give alpha0/alpha0_im or alpha0_abs/alpha0_arg, not both");
    return std::polar(abs.value_or(0.0), arg.value_or(0.0));
  }
  return {re.value_or(0.0), im.value_or(0.0)};
}

SqueezeParams squeeze_arg(Args& a) { return SqueezeParams(a.get("xi", 0.0), a.get("phi", 0.0)); }

int fock_index(Args& a) {
  const double n = a.get("n", 0.0);
  if (n < 0.0 || n != std::floor(n)) throw ConfigurationError("Fock index n must be a non-negative integer");
  return static_cast<int>(n);
}

WaveField make_wave(const StateSpec& spec, const PositionGrid& grid) {
  Args a(spec.args, "state " + spec.kind);
  std::optional<WaveField> psi;
  if (spec.kind == "coherent") {
    psi = coherent_wave({alpha_arg(a)}, grid);
  } else if (spec.kind == "fock") {
    psi = fock_wave(fock_index(a), grid);
  } else if (spec.kind == "cat") {
    psi = cat_wave({alpha_arg(a)}, grid);
  } else if (spec.kind == "plane-pair") {
    psi = plane_wave_pair({a.get("p1", -2.0), a.get("p2", 2.0), a.get("L", 20.0)}, grid);
  } else if (spec.kind == "squeezed") {
    const complex alpha = alpha_arg(a);
    psi = squeezed_coherent_wave({alpha}, squeeze_arg(a), grid);
  } else if (spec.kind == "squeezed-cat") {
    psi = squeezed_cat_wave(squeeze_arg(a), grid);
  } else {
    throw ConfigurationError("unknown state '" + spec.kind + "'");
  }
  a.finish();
  return *psi;
}

Ket make_ket(const StateSpec& spec, std::size_t dim) {
  Args a(spec.args, "state " + spec.kind);
  Ket psi;
  if (spec.kind == "coherent") {
    psi = coherent_ket(alpha_arg(a), dim);
  } else if (spec.kind == "fock") {
    psi = fock_ket(static_cast<std::size_t>(fock_index(a)), dim);
  } else if (spec.kind == "cat") {
    psi = cat_ket(alpha_arg(a), dim);
  } else if (spec.kind == "squeezed") {
    const complex alpha = alpha_arg(a);
    psi = squeezed_ket(alpha, squeeze_arg(a), dim);
  } else if (spec.kind == "squeezed-cat") {
    psi = squeezed_cat_ket(squeeze_arg(a), dim);
  } else if (spec.kind == "plane-pair") {
    throw ConfigurationError("plane-pair states have no Fock-basis form");
  } else {
    throw ConfigurationError("unknown state '" + spec.kind + "'");
  }
  a.finish();
  return psi;
}

struct GridSpec {
  std::size_t n = 512;
  std::optional<std::size_t> m;
  double q_min = -12.0;
  double q_max = 12.0;
  std::optional<double> p_min;
  std::optional<double> p_max;
};

std::size_t count_arg(double v, const char* key) {
  if (v < 1.0 || v != std::floor(v)) throw ConfigurationError(std::string("grid ") + key + " must be a positive integer");
  return static_cast<std::size_t>(v);
}

GridSpec parse_grid(const std::string& text) {
  Args a(parse_key_values(text, "grid"), "grid");
  GridSpec g;
  g.n = count_arg(a.get("n", 512.0), "n");
  if (const auto m = a.find("m")) g.m = count_arg(*m, "m");
  g.q_min = a.get("qmin", -12.0);
  g.q_max = a.get("qmax", 12.0);
  g.p_min = a.find("pmin");
  g.p_max = a.find("pmax");
  a.finish();
  if ((g.p_min.has_value()) != (g.p_max.has_value())) throw ConfigurationError("grid needs both pmin and pmax, or neither");
  return g;
}

struct ComputeOptions {
  std::string state;
  std::string state_args;
  std::string dist;
  std::string kernel = "unit";
  std::optional<double> sigma;
  double s = 0.0;
  std::string grid = "n=512,qmin=-12,qmax=12";
  double hbar = 1.0;
  std::string engine = "wave";
  std::size_t dim = 64;
  std::string out;
  std::string csv;
  std::string marginals;
  bool check = false;
};

PhaseField wave_field(const WaveField& psi, const ComputeOptions& o, const PhaseGrid& grid) {
  const double sigma = o.sigma.value_or(1.0);
  if (o.dist == "wigner") return wigner(psi, grid);
  if (o.dist == "kr") {
    if (sigma != 1.0) throw ConfigurationError("--dist kr is sigma = 1; use --dist sigma-kr for other sigma");
    return kirkwood_rihaczek(psi, grid);
  }
  if (o.dist == "mh") return margenau_hill(psi, grid);
  if (o.dist == "sigma-kr") return sigma_kirkwood_rihaczek(psi, sigma, grid);
  if (o.dist == "cohen") {
    if (o.kernel == "unit") return cohen(psi, CohenKernel::unit(), grid);
    if (o.kernel == "kr") return cohen(psi, CohenKernel::kirkwood_rihaczek(), grid);
    if (o.kernel == "mh") return cohen(psi, CohenKernel::margenau_hill(), grid);
    if (o.kernel == "sigma") return cohen(psi, sigma_kernel(sigma), grid);
    throw ConfigurationError("unknown kernel '" + o.kernel + "'");
  }
  throw ConfigurationError("distribution '" + o.dist + "' is not available on the wavefunction engine");
}

// Inclusive node axis for the Fock engine.
Axis linspace(double lo, double hi, std::size_t count) {
  if (count < 2 || !(hi > lo)) throw ConfigurationError("Fock-engine grid needs at least 2 nodes and max > min");
  return Axis{lo, (hi - lo) / static_cast<double>(count - 1), count};
}

PhaseField fock_field(const DensityMatrix& rho, const ComputeOptions& o, const GridSpec& gs) {
  const Axis q = linspace(gs.q_min, gs.q_max, gs.n);
  const Axis p = linspace(gs.p_min.value_or(gs.q_min), gs.p_max.value_or(gs.q_max), gs.m.value_or(gs.n));
  const double scale = 1.0 / std::sqrt(2.0 * o.hbar);
  const AlphaGrid alpha(Axis{q.min * scale, q.step * scale, q.count}, Axis{p.min * scale, p.step * scale, p.count});
  const double sigma = o.sigma.value_or(1.0);

  PhaseField field = [&] {
    if (o.dist == "wigner") return generalized_kr(rho, alpha, 0.0);
    if (o.dist == "kr" || o.dist == "mh") {
      if (sigma != 1.0 && o.dist == "kr") throw ConfigurationError("--dist kr is sigma = 1");
      return kr_closed_form(rho, alpha);
    }
    if (o.dist == "sigma-kr") return generalized_kr(rho, alpha, sigma);
    if (o.dist == "s-ordered") return s_ordered(rho, alpha, o.s);
    throw ConfigurationError("distribution '" + o.dist + "' is not available on the Fock engine");
  }();

  FieldTag tag = field.tag();
  if (o.dist == "wigner") tag = FieldTag{DistributionKind::wigner, 0.0, {}};
  if (o.dist == "kr") tag = FieldTag{DistributionKind::kr, 0.0, {}};
  if (o.dist == "mh") tag = FieldTag{DistributionKind::mh, 0.0, {}};
  std::vector<complex> values(field.values().begin(), field.values().end());
  const double density = 1.0 / alpha_density_scale(o.hbar);
  for (auto& v : values) {
    v *= density;
    if (o.dist == "mh") v = complex{v.real(), 0.0};
  }
  return PhaseField(PhaseGrid(q, p, o.hbar), std::move(values), tag);
}

void write_text_file(const std::string& path, const std::function<void(std::ostream&)>& body) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error("cannot open " + path + " for writing");
  body(out);
  if (!out) throw Error("failed to write " + path);
}

int run_compute(const ComputeOptions& o, std::ostream& out) {
  if (o.out.empty() && !o.check) throw ConfigurationError("compute needs --out (or --check)");
  if (!(o.hbar > 0.0)) throw ConfigurationError("--hbar must be positive");
  const GridSpec gs = parse_grid(o.grid);
  const StateSpec spec = parse_state_spec(o.state, o.state_args);
  const bool fock_engine = o.engine == "fock" || o.dist == "s-ordered";
  if (o.engine != "wave" && o.engine != "fock") throw ConfigurationError("unknown engine '" + o.engine + "'");

  std::vector<CheckReport> reports;
  std::optional<PhaseField> field;
  if (fock_engine) {
    const DensityMatrix rho = DensityMatrix::pure(make_ket(spec, o.dim));
    field = fock_field(rho, o, gs);
    if (o.check) {
      const complex total = integrate_2d(*field);
      reports.push_back(make_report("normalization", std::abs(total - 1.0), 0.0, 1e-4, field->tag().to_string()));
      reports.push_back(check_reality_wigner(*field));
    }
  } else {
    if (gs.m) throw ConfigurationError("grid key m applies to the Fock engine only");
    const PositionGrid pos = PositionGrid::spanning(gs.q_min, gs.q_max, gs.n, o.hbar);
    const PhaseGrid grid = gs.p_min ? PhaseGrid::conjugate(pos, *gs.p_min, *gs.p_max) : PhaseGrid::conjugate(pos);
    const WaveField psi = make_wave(spec, pos);
    field = wave_field(psi, o, grid);
    if (o.check) {
      for (auto& r : check_marginals(*field, psi)) reports.push_back(r);
      for (auto& r : check_kr_identities(psi, grid)) reports.push_back(r);
      reports.push_back(check_reality_wigner(*field));
    }
  }

  if (!o.out.empty()) write_qpsf(fs::path(o.out), *field);
  if (!o.csv.empty()) write_text_file(o.csv, [&](std::ostream& s) { write_field_csv(s, *field); });
  if (!o.marginals.empty()) write_text_file(o.marginals, [&](std::ostream& s) { write_marginals_csv(s, *field); });
  if (o.check) {
    out << to_text(reports);
    if (!all_passed(reports)) return kExitDiagnostics;
  }
  return kExitOk;
}

struct EvolveOptions {
  std::string state;
  std::string state_args;
  std::string grid = "n=512,qmin=-12,qmax=12";
  double hbar = 1.0;
  double t = 1.0;
  double mass = 1.0;
  std::size_t frames = 5;
  std::string out_dir;
};

int run_evolve(const EvolveOptions& o, std::ostream& out) {
  FreeEvolutionParams{o.mass, o.t}.validate();
  if (o.frames < 1) throw ConfigurationError("--frames must be at least 1");
  const GridSpec gs = parse_grid(o.grid);
  if (gs.m) throw ConfigurationError("grid key m applies to the Fock engine only");
  const PositionGrid pos = PositionGrid::spanning(gs.q_min, gs.q_max, gs.n, o.hbar);
  const PhaseGrid grid = gs.p_min ? PhaseGrid::conjugate(pos, *gs.p_min, *gs.p_max) : PhaseGrid::conjugate(pos);
  const WaveField psi = make_wave(parse_state_spec(o.state, o.state_args), pos);
  const PhaseField k0 = kirkwood_rihaczek(psi, grid);

  fs::create_directories(o.out_dir);
  bool ok = true;
  for (std::size_t f = 0; f < o.frames; ++f) {
    const double t = o.frames == 1 ? 0.0 : o.t * static_cast<double>(f) / static_cast<double>(o.frames - 1);
    const FreeEvolutionParams params{o.mass, t};
    const PhaseField kt = evolve_kr_field(k0, params);
    const WaveField psi_t = evolve_wave(psi, params);
    const PhaseField reference = kirkwood_rihaczek(psi_t, grid);
    double deviation = 0.0;
    for (std::size_t i = 0; i < kt.values().size(); ++i) {
      deviation = std::max(deviation, std::abs(kt.values()[i] - reference.values()[i]));
    }
    std::vector<CheckReport> reports;
    for (auto& r : check_marginals(kt, psi_t)) reports.push_back(r);
    reports.push_back(make_report("two-path", deviation, 0.0, 1e-6));

    std::ostringstream name;
    name << "frame_" << std::setw(3) << std::setfill('0') << f << ".qpsf";
    write_qpsf(fs::path(o.out_dir) / name.str(), kt);
    out << "frame " << f << " t=" << t << "\n" << to_text(reports);
    ok = ok && all_passed(reports);
  }
  return ok ? kExitOk : kExitDiagnostics;
}

struct ReconstructOptions {
  std::string in;
  std::size_t dim = 32;
  std::string out;
  std::string truth;
  std::string path = "direct";
};

int run_reconstruct(const ReconstructOptions& o, std::ostream& out) {
  const PhaseField field = read_qpsf(fs::path(o.in));
  ReconstructionPath path = ReconstructionPath::direct;
  if (o.path == "conjugate") {
    path = ReconstructionPath::conjugate;
  } else if (o.path != "direct") {
    throw ConfigurationError("unknown reconstruction path '" + o.path + "'");
  }
  const Reconstruction rec = reconstruct(field, o.dim, path);
  write_text_file(o.out, [&](std::ostream& s) { write_matrix_csv(s, rec.rho); });
  out << std::setprecision(10);
  out << "raw_trace " << rec.raw_trace.real() << " " << rec.raw_trace.imag() << "\n";
  out << "boundary_ratio " << rec.boundary_ratio << "\n";
  out << "min_eigenvalue " << rec.min_eigenvalue << "\n";
  if (!o.truth.empty()) {
    // Build the reference wide enough to be exact, then project onto dim levels.
    const std::size_t wide = std::max<std::size_t>(o.dim, 128);
    const Ket full = make_ket(parse_state_spec(o.truth), wide);
    const Ket projected = full.head(static_cast<Eigen::Index>(o.dim));
    const double captured = projected.squaredNorm();
    if (captured < 1.0 - 1e-6) {
      std::ostringstream msg;
      msg << "dim " << o.dim << " holds only " << captured << " of the reference state's norm";
      warn(msg.str());
    }
    const double fid = projected.dot(rec.rho * projected).real();
    out << "fidelity " << fid << "\n";
  }
  return kExitOk;
}

struct RenderOptions {
  std::string in;
  std::string part = "re";
  std::string mode = "heatmap";
  std::string out;
};

int run_render(const RenderOptions& o) {
  const PhaseField field = read_qpsf(fs::path(o.in));
  const RenderPart part = parse_render_part(o.part);
  if (o.mode == "heatmap") {
    write_heatmap(fs::path(o.out), make_heatmap(field, part));
  } else if (o.mode == "contour-data") {
    const auto data = field_part(field, part);
    const auto [lo, hi] = std::minmax_element(data.begin(), data.end());
    const auto lines = contour_lines(field, part, contour_levels(*lo, *hi));
    write_text_file(o.out, [&](std::ostream& s) { write_contour_csv(s, lines); });
  } else {
    throw ConfigurationError("unknown mode '" + o.mode + "' (expected heatmap or contour-data)");
  }
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Phase-space quasi-distributions: compute, evolve, reconstruct, render", "qpsf"};
  app.require_subcommand(1);

  ComputeOptions co;
  auto* compute = app.add_subcommand("compute", "Compute a quasi-distribution of a state");
  compute->add_option("--state", co.state, "coherent|fock|cat|plane-pair|squeezed|squeezed-cat")->required();
  compute->add_option("--state-args", co.state_args, "k=v,... (alpha0, alpha0_im, alpha0_abs, alpha0_arg, n, p1, p2, L, xi, phi)");
  compute->add_option("--dist", co.dist, "wigner|kr|mh|cohen|sigma-kr|s-ordered")
      ->required()
      ->check(CLI::IsMember({"wigner", "kr", "mh", "cohen", "sigma-kr", "s-ordered"}));
  compute->add_option("--kernel", co.kernel, "Cohen kernel: unit|kr|mh|sigma")
      ->check(CLI::IsMember({"unit", "kr", "mh", "sigma"}));
  compute->add_option("--sigma", co.sigma, "sigma for sigma-kr (default 1)");
  compute->add_option("--s", co.s, "s for s-ordered (s < 1)");
  compute->add_option("--grid", co.grid, "n=..,qmin=..,qmax=..,pmin=..,pmax=..[,m=..]");
  compute->add_option("--hbar", co.hbar, "hbar (default 1)");
  compute->add_option("--engine", co.engine, "wave|fock")->check(CLI::IsMember({"wave", "fock"}));
  compute->add_option("--dim", co.dim, "Fock truncation (Fock engine)");
  compute->add_option("--out", co.out, "QPSF output path");
  compute->add_option("--csv", co.csv, "CSV output path (q,p,re,im)");
  compute->add_option("--marginals", co.marginals, "marginal CSV output path");
  compute->add_flag("--check", co.check, "run diagnostics; exit 4 on failure");

  EvolveOptions eo;
  auto* evolve = app.add_subcommand("evolve", "Free evolution of a K-R field");
  evolve->add_option("--state", eo.state)->required();
  evolve->add_option("--state-args", eo.state_args);
  evolve->add_option("--grid", eo.grid);
  evolve->add_option("--hbar", eo.hbar);
  evolve->add_option("--t", eo.t, "final time");
  evolve->add_option("--mass", eo.mass);
  evolve->add_option("--frames", eo.frames, "frames at t_k = t k / (frames - 1)");
  evolve->add_option("--out-dir", eo.out_dir)->required();

  ReconstructOptions ro;
  auto* recon = app.add_subcommand("reconstruct", "Density matrix from a K-R field");
  recon->add_option("--in", ro.in, "QPSF file holding a sigma = 1 field")->required();
  recon->add_option("--dim", ro.dim)->required();
  recon->add_option("--out", ro.out, "matrix CSV output")->required();
  recon->add_option("--truth", ro.truth, "reference state, e.g. coherent:alpha0=1");
  recon->add_option("--path", ro.path, "direct|conjugate");

  RenderOptions rn;
  auto* render = app.add_subcommand("render", "Heatmap or contour data of a QPSF field");
  render->add_option("--in", rn.in)->required();
  render->add_option("--part", rn.part, "re|im|abs");
  render->add_option("--mode", rn.mode, "heatmap|contour-data");
  render->add_option("--out", rn.out)->required();

  // Route library warnings to `err` for the duration of the command.
  auto previous = set_warning_sink([&err](std::string_view msg) { err << "qpsf: warning: " << msg << '\n'; });
  struct Restore {
    WarningSink sink;
    ~Restore() { set_warning_sink(std::move(sink)); }
  } restore{std::move(previous)};

  try {
    app.parse(argc, argv);
    if (compute->parsed()) return run_compute(co, out);
    if (evolve->parsed()) return run_evolve(eo, out);
    if (recon->parsed()) return run_reconstruct(ro, out);
    if (render->parsed()) return run_render(rn);
    return kExitUsage;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const TruncationError& e) {
    err << "qpsf: truncation: " << e.what() << '\n';
    return kExitTruncation;
  } catch (const ConfigurationError& e) {
    err << "qpsf: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ValidationError& e) {
    err << "qpsf: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "qpsf: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "qpsf: error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace qpsf::cli
