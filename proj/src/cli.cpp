#include "branchpoint/cli.hpp"

#include <fstream>
#include <iostream>
#include <locale>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "branchpoint/cantor_set.hpp"
#include "branchpoint/errors.hpp"
#include "branchpoint/io.hpp"
#include "branchpoint/qvalued_frequency.hpp"
#include "branchpoint/series_fg.hpp"
#include "branchpoint/vanishing_analysis.hpp"

namespace branchpoint {

namespace {

struct SeriesOptions {
  double s = 0.5;
  std::optional<double> alpha_base;
  int max_gen = kDefaultMaxGen;

  std::shared_ptr<const FgModel> model() const {
    return std::make_shared<const FgModel>(SeriesParams(HausdorffParam(s), alpha_base, max_gen));
  }
};

struct Options {
  std::string config;
  std::string output = "-";

  int depth = 10;
  SeriesOptions series;

  double re_min = 0.01, re_max = 0.5, im_min = -0.5, im_max = 0.5;
  int nx = 5, ny = 5;

  int max_m = 20;

  std::string h = "monomial";
  int P = 1;
  int Q = 2;
  double alpha = 0.5;
  std::string domain;
  std::string center = "0,0";
  std::vector<double> radii{0.5};
  double tol = 1e-9;
  bool rescaled = false;

  std::string target = "re_f";
  std::string ladder = "default";
  int window = 4;
};

Complex parse_center(const std::string& text) {
  auto comma = text.find(',');
  if (comma == std::string::npos) throw ValidationError("center must be given as re,im: " + text);
  return {io::parse_double(text.substr(0, comma)), io::parse_double(text.substr(comma + 1))};
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find(',', start);
    if (end == std::string::npos) end = text.size();
    out.push_back(io::parse_double(text.substr(start, end - start)));
    start = end + 1;
  }
  return out;
}

std::vector<double> parse_ladder(const std::string& text) {
  if (text == "default") return default_ladder();
  const std::string geo = "geometric:";
  if (text.rfind(geo, 0) == 0) {
    auto v = parse_list(text.substr(geo.size()));
    if (v.size() != 3) throw ValidationError("geometric ladder needs largest,ratio,rungs");
    return geometric_ladder(v[0], v[1], static_cast<int>(v[2]));
  }
  return parse_list(text);
}

// Fills options not given on the command line from the config file.
class ConfigLayer {
 public:
  ConfigLayer(const CLI::App* sub, const std::string& path) : sub_(sub) {
    if (path.empty()) return;
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config file " + path);
    auto doc = io::read_json(in).doc;
    if (!doc.is_object()) throw ValidationError("config file must hold a JSON object");
    if (doc.contains(sub->get_name()) && doc[sub->get_name()].is_object()) doc = doc[sub->get_name()];
    cfg_ = std::move(doc);
  }

  template <class T>
  void take(const std::string& name, T& value) const {
    if (!cfg_.contains(name)) return;
    const auto* opt = sub_->get_option_no_throw("--" + name);
    if (opt != nullptr && opt->count() > 0) return;
    try {
      value = cfg_.at(name).get<T>();
    } catch (const nlohmann::json::exception&) {
      throw ValidationError("config key '" + name + "' has the wrong type");
    }
  }

  void take_optional(const std::string& name, std::optional<double>& value) const {
    if (!cfg_.contains(name)) return;
    const auto* opt = sub_->get_option_no_throw("--" + name);
    if (opt != nullptr && opt->count() > 0) return;
    double v = 0.0;
    take(name, v);
    value = v;
  }

 private:
  const CLI::App* sub_;
  nlohmann::json cfg_ = nlohmann::json::object();
};

void add_series_flags(CLI::App* sub, SeriesOptions& so) {
  sub->add_option("--s", so.s, "Hausdorff parameter in (0, 1]");
  sub->add_option("--alpha-base", so.alpha_base, "exponent alpha for s < 1");
  sub->add_option("--max-gen", so.max_gen, "truncation generation K");
}

void take_series(const ConfigLayer& cfg, SeriesOptions& so) {
  cfg.take("s", so.s);
  cfg.take_optional("alpha-base", so.alpha_base);
  cfg.take("max-gen", so.max_gen);
}

void cmd_cantor(const Options& o, std::ostream& out) {
  auto cs = build_cantor(HausdorffParam(o.series.s), o.depth);
  auto doc = to_json(cs);
  nlohmann::json sums = nlohmann::json::array();
  for (int k = 1; k <= cs.depth(); ++k) sums.push_back({{"k", k}, {"cover_sum", cover_sum(cs, k, o.series.s)}});
  doc["cover_sums"] = std::move(sums);
  io::write_json(out, "cantor", doc);
}

void cmd_eval(const Options& o, std::ostream& out) {
  if (o.nx < 1 || o.ny < 1) throw ValidationError("grid resolution must be positive");
  auto model = o.series.model();
  io::CsvWriter w(out, "eval", {"re", "im", "logMag_f", "arg_f", "logMag_g", "arg_g", "d_lower", "tail_bound"});
  auto coord = [](double lo, double hi, int n, int i) { return n == 1 ? lo : lo + (hi - lo) * i / (n - 1); };
  for (int j = 0; j < o.ny; ++j) {
    for (int i = 0; i < o.nx; ++i) {
      Complex z(coord(o.re_min, o.re_max, o.nx, i), coord(o.im_min, o.im_max, o.ny, j));
      auto f = eval_f(*model, z);
      auto g = eval_g(*model, z);
      w.row({z.real(), z.imag(), f.value.log_mag, f.value.reduced_arg(), g.value.log_mag, g.value.reduced_arg(),
             f.d_lower, f.tail_bound});
    }
  }
}

void cmd_zeros(const Options& o, std::ostream& out) {
  if (o.max_m < 1) throw ValidationError("max-m must be at least 1");
  auto model = o.series.model();
  io::CsvWriter w(out, "zeros", {"k", "l", "m", "y", "log_re", "re", "im", "residual", "g_exact_zero"});
  for (int k = 1; k <= model->max_gen(); ++k) {
    const std::int64_t count = std::int64_t{1} << k;
    for (std::int64_t l = 1; l <= count; ++l) {
      for (int m = 1; m <= o.max_m; ++m) {
        auto zero = zero_of_g(*model, {k, l}, m);
        auto g = eval_g(*model, zero.eval_point());
        const auto p = zero.point();
        w.row({double(k), double(l), double(m), zero.y, zero.log_re, p.real(), p.imag(),
               zero_cos_residual(*model, zero), g.value.is_zero() ? 1.0 : 0.0});
      }
    }
  }
}

Domain parse_domain(const std::string& text, Domain fallback) {
  if (text.empty()) return fallback;
  if (text == "plane") return Domain::full_plane;
  if (text == "half") return Domain::right_half_plane;
  throw ValidationError("domain must be plane or half, got " + text);
}

MinimizerSpec build_spec(const Options& o) {
  MinimizerSpec spec;
  spec.Q = o.Q;
  if (o.h == "monomial") {
    spec.h = Polynomial::monomial(o.P);
    spec.domain = parse_domain(o.domain, Domain::full_plane);
  } else if (o.h == "block_a") {
    spec.h = BlockA{o.alpha};
    spec.domain = parse_domain(o.domain, Domain::right_half_plane);
  } else if (o.h == "block_b") {
    spec.h = BlockBPower{o.alpha, o.P};
    spec.domain = parse_domain(o.domain, Domain::right_half_plane);
  } else if (o.h == "series_f") {
    spec.h = SeriesF{o.series.model()};
    spec.domain = parse_domain(o.domain, Domain::right_half_plane);
  } else if (o.h == "series_g") {
    spec.h = SeriesG{o.series.model()};
    spec.domain = parse_domain(o.domain, Domain::right_half_plane);
  } else {
    throw ValidationError("unknown h: " + o.h + " (monomial, block_a, block_b, series_f, series_g)");
  }
  spec.validate();
  return spec;
}

void cmd_frequency(const Options& o, std::ostream& out) {
  auto spec = build_spec(o);
  const Complex center = parse_center(o.center);
  if (o.radii.empty()) throw ValidationError("at least one radius is required");
  FrequencyConfig cfg;
  cfg.energy_rel_tol = o.tol;
  cfg.mass_rel_tol = o.tol;
  io::CsvWriter w(out, "frequency", {"center_re", "center_im", "r", "D", "H", "I", "err"});
  for (double r : o.radii) {
    auto s = o.rescaled ? frequency_rescaled(spec, center, r, cfg) : frequency(spec, center, r, cfg);
    w.row({center.real(), center.imag(), r, s.D, s.H, s.I, s.error});
  }
}

void cmd_vanishing(const Options& o, std::ostream& out) {
  const Complex center = parse_center(o.center);
  MassTarget target;
  if (o.target == "re_f") {
    target = ReFTarget{o.series.model()};
  } else if (o.target == "monomial") {
    MinimizerSpec spec{Polynomial::monomial(o.P), o.Q, parse_domain(o.domain, Domain::full_plane)};
    spec.validate();
    target = QMinimizerTarget{spec};
  } else if (o.target == "constant") {
    target = ConstantTarget{1.0, parse_domain(o.domain, Domain::full_plane)};
  } else {
    throw ValidationError("unknown target: " + o.target + " (re_f, monomial, constant)");
  }
  auto radii = parse_ladder(o.ladder);
  if (o.window < 2) throw ValidationError("slope window needs at least 2 rungs");
  if (radii.size() < static_cast<std::size_t>(o.window)) throw ValidationError("ladder is shorter than one window");
  auto curve = mass_curve(target, center, radii, MassConfig{});

  const std::size_t n = radii.size();
  const std::size_t width = static_cast<std::size_t>(o.window);
  std::size_t windows = n / width;
  io::CsvWriter w(out, "vanishing", {"center_re", "center_im", "R", "logMass", "slope_window_id", "slope"});
  for (std::size_t id = 0; id < windows; ++id) {
    const std::size_t first = id * width;
    const std::size_t last = id + 1 == windows ? n - 1 : first + width - 1;
    const double slope = vanishing_order_slope(curve, {first, last});
    for (std::size_t i = first; i <= last; ++i)
      w.row({center.real(), center.imag(), radii[i], curve.log_mass[i], double(id), slope});
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cantor-set branch point explorer", "branchpoint-lab"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(io::kVersion));
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->set_help_flag("--help", "print this help and exit");
    sub->add_option("--config", o.config, "JSON config file (flags take precedence)");
    sub->add_option("--output,-o", o.output, "output path, - for stdout");
  };

  auto* cantor = app.add_subcommand("cantor", "Cantor set intervals and canonical cover sums (JSON)");
  common(cantor);
  cantor->add_option("--s", o.series.s, "Hausdorff parameter in (0, 1]");
  cantor->add_option("--depth", o.depth, "number of generations");

  auto* eval = app.add_subcommand("eval", "f and g on a grid (CSV)");
  common(eval);
  add_series_flags(eval, o.series);
  eval->add_option("--re-min", o.re_min);
  eval->add_option("--re-max", o.re_max);
  eval->add_option("--im-min", o.im_min);
  eval->add_option("--im-max", o.im_max);
  eval->add_option("--nx", o.nx);
  eval->add_option("--ny", o.ny);

  auto* zeros = app.add_subcommand("zeros", "explicit zeros of g (CSV)");
  common(zeros);
  add_series_flags(zeros, o.series);
  zeros->add_option("--max-m", o.max_m, "largest zero index m");

  auto* freq = app.add_subcommand("frequency", "frequency function of the Q-valued minimizer (CSV)");
  common(freq);
  add_series_flags(freq, o.series);
  freq->add_option("--h", o.h, "monomial, block_a, block_b, series_f or series_g");
  freq->add_option("--P", o.P);
  freq->add_option("--Q", o.Q);
  freq->add_option("--alpha", o.alpha, "exponent of the a and b blocks");
  freq->add_option("--domain", o.domain, "plane or half");
  freq->add_option("--center", o.center, "re,im");
  freq->add_option("--radii", o.radii, "comma separated radii")->delimiter(',');
  freq->add_option("--tol", o.tol, "relative quadrature tolerance");
  freq->add_flag("--rescaled", o.rescaled, "assemble D/H in log space");

  auto* van = app.add_subcommand("vanishing", "mass curve and vanishing-order slopes (CSV)");
  common(van);
  add_series_flags(van, o.series);
  van->add_option("--target", o.target, "re_f, monomial or constant");
  van->add_option("--P", o.P);
  van->add_option("--Q", o.Q);
  van->add_option("--domain", o.domain, "plane or half");
  van->add_option("--center", o.center, "re,im");
  van->add_option("--ladder", o.ladder, "default, geometric:largest,ratio,rungs or a radius list");
  van->add_option("--window", o.window, "rungs per slope window");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitValidation;
  }

  CLI::App* sub = app.get_subcommands().front();
  try {
    ConfigLayer cfg(sub, o.config);
    cfg.take("output", o.output);
    take_series(cfg, o.series);
    cfg.take("depth", o.depth);
    cfg.take("re-min", o.re_min);
    cfg.take("re-max", o.re_max);
    cfg.take("im-min", o.im_min);
    cfg.take("im-max", o.im_max);
    cfg.take("nx", o.nx);
    cfg.take("ny", o.ny);
    cfg.take("max-m", o.max_m);
    cfg.take("h", o.h);
    cfg.take("P", o.P);
    cfg.take("Q", o.Q);
    cfg.take("alpha", o.alpha);
    cfg.take("domain", o.domain);
    cfg.take("center", o.center);
    cfg.take("radii", o.radii);
    cfg.take("tol", o.tol);
    cfg.take("rescaled", o.rescaled);
    cfg.take("target", o.target);
    cfg.take("ladder", o.ladder);
    cfg.take("window", o.window);

    std::ofstream file;
    std::ostream* dest = &out;
    if (o.output != "-") {
      file.open(o.output, std::ios::binary);
      if (!file) throw ValidationError("cannot open output file " + o.output);
      dest = &file;
    }
    dest->imbue(std::locale::classic());

    const std::string name = sub->get_name();
    if (name == "cantor") cmd_cantor(o, *dest);
    else if (name == "eval") cmd_eval(o, *dest);
    else if (name == "zeros") cmd_zeros(o, *dest);
    else if (name == "frequency") cmd_frequency(o, *dest);
    else cmd_vanishing(o, *dest);
    dest->flush();
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "runtime failure: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}

}  // namespace branchpoint
