#include "wnv/config.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

namespace wnv {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  if (trim(s).empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_factor(std::string_view f) {
  f = trim(f);
  double sign = 1.0;
  if (!f.empty() && (f.front() == '-' || f.front() == '+')) {
    if (f.front() == '-') sign = -1.0;
    f.remove_prefix(1);
  }
  if (f == "pi") return sign * std::numbers::pi;
  if (f == "inf") return sign * INFINITY;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
  if (f.empty() || ec != std::errc() || ptr != f.data() + f.size())
    throw std::invalid_argument("not a number: '" + std::string(f) + "'");
  return sign * v;
}

std::string fmt(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 40> buf{};
  std::snprintf(buf.data(), buf.size(), "%.17g", v);
  return buf.data();
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + fmt(v[i]);
  return s;
}

int to_int(std::string_view s) {
  const double v = parse_number(s);
  if (v != std::floor(v) || std::abs(v) > 2e9)
    throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
  return static_cast<int>(v);
}

std::vector<double> to_list(std::string_view s) {
  std::vector<double> out;
  for (auto item : split(s, ',')) out.push_back(parse_number(item));
  return out;
}

struct FieldDraft {
  double base = 1.0;
  std::vector<TemporalHarmonic> harmonics;
  double spatial_amp = 0.0;
  ProfileKind profile = ProfileKind::constant_one;
  double floor = 1e-6;

  explicit FieldDraft(const CoefficientField& f)
      : base(f.base()),
        harmonics(f.harmonics()),
        spatial_amp(f.spatial_amp()),
        profile(f.profile()),
        floor(f.floor()) {}
};

std::vector<TemporalHarmonic> parse_harmonics(std::string_view s) {
  std::vector<TemporalHarmonic> out;
  if (trim(s) == "none") return out;
  for (auto item : split(s, ',')) {
    const auto parts = split(item, ':');
    if (parts.size() != 3 && parts.size() != 4)
      throw std::invalid_argument("harmonic must be kind:amplitude:frequency[:phase], got '" +
                                  std::string(item) + "'");
    TemporalHarmonic h;
    h.kind = harmonic_from_string(parts[0]);
    h.amplitude = parse_number(parts[1]);
    h.frequency = parse_number(parts[2]);
    if (parts.size() == 4) h.phase = parse_number(parts[3]);
    out.push_back(h);
  }
  return out;
}

std::string render_harmonics(const std::vector<TemporalHarmonic>& hs) {
  if (hs.empty()) return "none";
  std::string s;
  for (std::size_t i = 0; i < hs.size(); ++i) {
    const auto& h = hs[i];
    s += (i ? ", " : "") + std::string(to_string(h.kind)) + ":" + fmt(h.amplitude) + ":" +
         fmt(h.frequency);
    if (h.phase != 0.0) s += ":" + fmt(h.phase);
  }
  return s;
}

constexpr std::array<std::string_view, 4> kFieldNames = {"alpha1", "alpha2", "gamma", "death"};

CoefficientField& field_ref(ModelSpec& m, std::size_t k) {
  switch (k) {
    case 0: return m.alpha1;
    case 1: return m.alpha2;
    case 2: return m.gamma;
    default: return m.death;
  }
}

const CoefficientField& field_ref(const ModelSpec& m, std::size_t k) {
  return field_ref(const_cast<ModelSpec&>(m), k);
}

class Parser {
 public:
  RunConfig cfg;

  Parser() {
    for (std::size_t k = 0; k < kFieldNames.size(); ++k) drafts_.emplace_back(field_ref(cfg.model, k));
    field_lines_.fill(0);
  }

  void line(int no, std::string_view section, std::string_view key, std::string_view value) {
    try {
      if (section == "model") model(no, key, value);
      else if (section == "init") init(key, value);
      else if (section == "solver") solver(key, value);
      else if (section == "lyapunov") lyapunov(key, value);
      else if (section == "run") run(key, value);
      else throw ParseError(no, "key outside a known section");
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& e) {
      throw ParseError(no, std::string(section) + "." + std::string(key) + ": " + e.what());
    }
  }

  void finish() {
    for (std::size_t k = 0; k < drafts_.size(); ++k) {
      if (field_lines_[k] == 0) continue;
      const FieldDraft& d = drafts_[k];
      try {
        field_ref(cfg.model, k) =
            CoefficientField::make(d.base, d.harmonics, d.spatial_amp, d.profile, d.floor);
      } catch (const std::exception& e) {
        throw ValidationError(std::string(kFieldNames[k]) + ": " + e.what());
      }
    }
    try {
      cfg.model.validate();
    } catch (const std::exception& e) {
      throw ValidationError(e.what());
    }
    try {
      if (cfg.init.data.kind == InitialKind::cosine) cfg.init.data.validate(cfg.model);
      else if (cfg.init.samples_path.empty())
        throw std::invalid_argument("init: kind = samples needs a samples path");
    } catch (const std::exception& e) {
      throw ValidationError(e.what());
    }
    auto check = [](auto&& fn) {
      try {
        fn();
      } catch (const std::exception& e) {
        throw ValidationError(e.what());
      }
    };
    check([&] { cfg.solver.validate(); });
    check([&] { cfg.lyapunov.validate(); });
    const RunSection& r = cfg.run;
    if (!(r.L_lo > 0.0 && r.L_hi > r.L_lo)) throw ValidationError("run: need 0 < L_lo < L_hi");
    if (!(r.mu_lo > 0.0 && r.mu_hi > r.mu_lo)) throw ValidationError("run: need 0 < mu_lo < mu_hi");
    if (r.L_star < 0.0) throw ValidationError("run: L_star must be nonnegative");
    if (r.shifts.empty()) throw ValidationError("run: shifts must not be empty");
    if (r.snapshot_count < 1) throw ValidationError("run: snapshot_count must be at least 1");
    for (double L : r.sweep_L)
      if (!(L > 0.0)) throw ValidationError("run: sweep_L entries must be positive");
  }

 private:
  std::vector<FieldDraft> drafts_;
  std::array<int, 4> field_lines_{};

  void model(int no, std::string_view key, std::string_view v) {
    ModelSpec& m = cfg.model;
    if (key == "D1") m.D1 = parse_number(v);
    else if (key == "D2") m.D2 = parse_number(v);
    else if (key == "N1") m.N1 = parse_number(v);
    else if (key == "N2") m.N2 = parse_number(v);
    else if (key == "beta") m.beta = parse_number(v);
    else if (key == "mu") m.mu = parse_number(v);
    else if (key == "h0") m.h0 = parse_number(v);
    else {
      const auto dot = key.find('.');
      std::size_t k = kFieldNames.size();
      for (std::size_t i = 0; i < kFieldNames.size(); ++i)
        if (key.substr(0, dot) == kFieldNames[i]) k = i;
      if (dot == std::string_view::npos || k == kFieldNames.size())
        throw std::invalid_argument("unknown key");
      FieldDraft& d = drafts_[k];
      const auto part = key.substr(dot + 1);
      if (part == "base") d.base = parse_number(v);
      else if (part == "harmonics") d.harmonics = parse_harmonics(v);
      else if (part == "spatial_amp") d.spatial_amp = parse_number(v);
      else if (part == "profile") d.profile = profile_from_string(v);
      else if (part == "floor") d.floor = parse_number(v);
      else throw std::invalid_argument("unknown key");
      field_lines_[k] = no;
    }
  }

  void init(std::string_view key, std::string_view v) {
    InitSection& s = cfg.init;
    if (key == "kind") {
      if (v == "cosine") s.data.kind = InitialKind::cosine;
      else if (v == "samples") s.data.kind = InitialKind::samples;
      else throw std::invalid_argument("expected cosine or samples");
    } else if (key == "amp_u") s.data.amp_u = parse_number(v);
    else if (key == "amp_v") s.data.amp_v = parse_number(v);
    else if (key == "samples") s.samples_path = std::string(v);
    else throw std::invalid_argument("unknown key");
  }

  void solver(std::string_view key, std::string_view v) {
    SolverConfig& s = cfg.solver;
    if (key == "J") s.J = to_int(v);
    else if (key == "dt0") s.dt0 = parse_number(v);
    else if (key == "dt_min") s.dt_min = parse_number(v);
    else if (key == "dt_max") s.dt_max = parse_number(v);
    else if (key == "t_end") s.t_end = parse_number(v);
    else if (key == "newton_tol") s.newton_tol = parse_number(v);
    else if (key == "max_newton") s.max_newton = to_int(v);
    else if (key == "output_times") s.output_times = to_list(v);
    else if (key == "bound_mode") s.bound_mode = bound_mode_from_string(v);
    else if (key == "probe_points") s.probe_points = to_list(v);
    else throw std::invalid_argument("unknown key");
  }

  void lyapunov(std::string_view key, std::string_view v) {
    LyapunovConfig& s = cfg.lyapunov;
    if (key == "J") s.J = to_int(v);
    else if (key == "dt") s.dt = parse_number(v);
    else if (key == "horizon") s.horizon = parse_number(v);
    else if (key == "renorm_low") s.renorm_low = parse_number(v);
    else if (key == "renorm_high") s.renorm_high = parse_number(v);
    else if (key == "tol") s.tol = parse_number(v);
    else throw std::invalid_argument("unknown key");
  }

  void run(std::string_view key, std::string_view v) {
    RunSection& s = cfg.run;
    if (key == "L_lo") s.L_lo = parse_number(v);
    else if (key == "L_hi") s.L_hi = parse_number(v);
    else if (key == "shifts") s.shifts = to_list(v);
    else if (key == "mu_lo") s.mu_lo = parse_number(v);
    else if (key == "mu_hi") s.mu_hi = parse_number(v);
    else if (key == "L_star") s.L_star = parse_number(v);
    else if (key == "sweep_L") s.sweep_L = to_list(v);
    else if (key == "lambda_times") s.lambda_times = to_list(v);
    else if (key == "snapshot_count") s.snapshot_count = to_int(v);
    else if (key == "out_dir") s.out_dir = std::string(v);
    else if (key == "seed") {
      std::uint64_t seed = 0;
      const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), seed);
      if (ec != std::errc() || ptr != v.data() + v.size())
        throw std::invalid_argument("seed must be a nonnegative integer");
      s.seed = seed;
    } else if (key == "extinction_eps") s.classify.extinction_eps = parse_number(v);
    else if (key == "width_slope_eps") s.classify.width_slope_eps = parse_number(v);
    else if (key == "window") s.classify.window = parse_number(v);
    else if (key == "spreading_margin") s.classify.spreading_margin = parse_number(v);
    else throw std::invalid_argument("unknown key");
  }
};

}  // namespace

double parse_number(std::string_view token) {
  token = trim(token);
  if (token.empty()) throw std::invalid_argument("empty number");
  double value = 1.0;
  char op = '*';
  std::size_t start = 0;
  for (std::size_t i = 0; i <= token.size(); ++i) {
    const bool end = i == token.size();
    if (!end && token[i] != '*' && token[i] != '/') continue;
    const double f = parse_factor(token.substr(start, i - start));
    value = op == '*' ? value * f : value / f;
    if (!end) op = token[i];
    start = i + 1;
  }
  return value;
}

RunConfig parse_config(std::string_view text) {
  Parser p;
  std::string section;
  int no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? nl : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++no;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError(no, "unterminated section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (section != "model" && section != "init" && section != "solver" &&
          section != "lyapunov" && section != "run")
        throw ParseError(no, "unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(no, "expected key = value");
    const auto key = trim(line.substr(0, eq));
    if (key.empty()) throw ParseError(no, "empty key");
    if (section.empty()) throw ParseError(no, "key '" + std::string(key) + "' before any section");
    p.line(no, section, key, trim(line.substr(eq + 1)));
  }
  p.finish();
  return p.cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open config '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string render_config(const RunConfig& c) {
  std::ostringstream o;
  const ModelSpec& m = c.model;
  o << "[model]\n"
    << "D1 = " << fmt(m.D1) << "\n"
    << "D2 = " << fmt(m.D2) << "\n"
    << "N1 = " << fmt(m.N1) << "\n"
    << "N2 = " << fmt(m.N2) << "\n"
    << "beta = " << fmt(m.beta) << "\n"
    << "mu = " << fmt(m.mu) << "\n"
    << "h0 = " << fmt(m.h0) << "\n";
  for (std::size_t k = 0; k < kFieldNames.size(); ++k) {
    const CoefficientField& f = field_ref(m, k);
    const std::string n(kFieldNames[k]);
    o << n << ".base = " << fmt(f.base()) << "\n"
      << n << ".harmonics = " << render_harmonics(f.harmonics()) << "\n"
      << n << ".spatial_amp = " << fmt(f.spatial_amp()) << "\n"
      << n << ".profile = " << to_string(f.profile()) << "\n"
      << n << ".floor = " << fmt(f.floor()) << "\n";
  }
  const InitSection& i = c.init;
  o << "\n[init]\n"
    << "kind = " << (i.data.kind == InitialKind::cosine ? "cosine" : "samples") << "\n"
    << "amp_u = " << fmt(i.data.amp_u) << "\n"
    << "amp_v = " << fmt(i.data.amp_v) << "\n";
  if (!i.samples_path.empty()) o << "samples = " << i.samples_path << "\n";
  const SolverConfig& s = c.solver;
  o << "\n[solver]\n"
    << "J = " << s.J << "\n"
    << "dt0 = " << fmt(s.dt0) << "\n"
    << "dt_min = " << fmt(s.dt_min) << "\n"
    << "dt_max = " << fmt(s.dt_max) << "\n"
    << "t_end = " << fmt(s.t_end) << "\n"
    << "newton_tol = " << fmt(s.newton_tol) << "\n"
    << "max_newton = " << s.max_newton << "\n"
    << "output_times = " << join(s.output_times) << "\n"
    << "bound_mode = " << to_string(s.bound_mode) << "\n"
    << "probe_points = " << join(s.probe_points) << "\n";
  const LyapunovConfig& l = c.lyapunov;
  o << "\n[lyapunov]\n"
    << "J = " << l.J << "\n"
    << "dt = " << fmt(l.dt) << "\n"
    << "horizon = " << fmt(l.horizon) << "\n"
    << "renorm_low = " << fmt(l.renorm_low) << "\n"
    << "renorm_high = " << fmt(l.renorm_high) << "\n"
    << "tol = " << fmt(l.tol) << "\n";
  const RunSection& r = c.run;
  o << "\n[run]\n"
    << "L_lo = " << fmt(r.L_lo) << "\n"
    << "L_hi = " << fmt(r.L_hi) << "\n"
    << "shifts = " << join(r.shifts) << "\n"
    << "mu_lo = " << fmt(r.mu_lo) << "\n"
    << "mu_hi = " << fmt(r.mu_hi) << "\n"
    << "L_star = " << fmt(r.L_star) << "\n"
    << "sweep_L = " << join(r.sweep_L) << "\n"
    << "lambda_times = " << join(r.lambda_times) << "\n"
    << "snapshot_count = " << r.snapshot_count << "\n"
    << "out_dir = " << r.out_dir << "\n"
    << "seed = " << r.seed << "\n"
    << "extinction_eps = " << fmt(r.classify.extinction_eps) << "\n"
    << "width_slope_eps = " << fmt(r.classify.width_slope_eps) << "\n"
    << "window = " << fmt(r.classify.window) << "\n"
    << "spreading_margin = " << fmt(r.classify.spreading_margin) << "\n";
  return o.str();
}

void load_samples(RunConfig& config, const std::string& base_dir) {
  if (config.init.data.kind != InitialKind::samples) return;
  std::filesystem::path p(config.init.samples_path);
  if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
  std::ifstream in(p);
  if (!in) throw std::runtime_error("cannot open samples file '" + p.string() + "'");
  std::string line;
  std::getline(in, line);
  if (trim(line) != "U,V")
    throw std::runtime_error(p.string() + ": expected header 'U,V'");
  std::vector<double> u, v;
  int no = 1;
  while (std::getline(in, line)) {
    ++no;
    if (trim(line).empty()) continue;
    const auto cols = split(line, ',');
    if (cols.size() != 2) throw ParseError(no, p.string() + ": expected two columns");
    u.push_back(parse_number(cols[0]));
    v.push_back(parse_number(cols[1]));
  }
  config.init.data.u_samples = std::move(u);
  config.init.data.v_samples = std::move(v);
  try {
    config.init.data.validate(config.model);
  } catch (const std::exception& e) {
    throw ValidationError(e.what());
  }
}

}  // namespace wnv
