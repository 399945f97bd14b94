#include "singheat/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "singheat/error.hpp"
#include "singheat/mollifier.hpp"

namespace singheat {

std::string_view to_string(Command command) {
  switch (command) {
    case Command::solve: return "solve";
    case Command::sweep: return "sweep";
    case Command::uniqueness: return "uniqueness";
    case Command::consistency: return "consistency";
    case Command::duhamel: return "duhamel";
    case Command::diagnose: return "diagnose";
  }
  return "unknown";
}

std::optional<Command> parse_command(std::string_view text) {
  for (Command c : {Command::solve, Command::sweep, Command::uniqueness, Command::consistency,
                    Command::duhamel, Command::diagnose})
    if (to_string(c) == text) return c;
  return std::nullopt;
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? s.npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::optional<double> to_double(std::string_view s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

template <class Int>
std::optional<Int> to_integer(std::string_view s) {
  Int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt(const char* spec, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

using Setter = std::function<std::optional<std::string>(ExperimentConfig&, std::string_view)>;

struct Key {
  Setter set;
  bool required = false;
};

Setter real(double ExperimentConfig::*field) {
  return [field](ExperimentConfig& c, std::string_view v) -> std::optional<std::string> {
    auto d = to_double(v);
    if (!d) return "expected a number, got '" + std::string(v) + "'";
    c.*field = *d;
    return std::nullopt;
  };
}

template <class Fn>
Setter real_with(Fn fn) {
  return [fn](ExperimentConfig& c, std::string_view v) -> std::optional<std::string> {
    auto d = to_double(v);
    if (!d) return "expected a number, got '" + std::string(v) + "'";
    fn(c, *d);
    return std::nullopt;
  };
}

Setter boolean(bool ExperimentConfig::*field) {
  return [field](ExperimentConfig& c, std::string_view v) -> std::optional<std::string> {
    if (v == "true") c.*field = true;
    else if (v == "false") c.*field = false;
    else return "expected true or false, got '" + std::string(v) + "'";
    return std::nullopt;
  };
}

template <class T>
Setter choice(std::vector<std::pair<std::string_view, T>> options,
              std::function<void(ExperimentConfig&, T)> assign) {
  return [options, assign](ExperimentConfig& c, std::string_view v) -> std::optional<std::string> {
    for (const auto& [name, value] : options) {
      if (name == v) {
        assign(c, value);
        return std::nullopt;
      }
    }
    std::string allowed;
    for (const auto& [name, value] : options) allowed += (allowed.empty() ? "" : " | ") + std::string(name);
    return "expected one of " + allowed + ", got '" + std::string(v) + "'";
  };
}

PerturbationSpec& perturbation(ExperimentConfig& c) {
  if (!c.perturbation) c.perturbation.emplace();
  return *c.perturbation;
}

std::optional<std::string> parse_atoms(ExperimentConfig& c, std::string_view v) {
  c.atoms.clear();
  if (v.empty() || v == "none") return std::nullopt;
  for (auto item : split(v, ',')) {
    const auto parts = split(item, ':');
    SingularAtom atom;
    if (parts[0] == "delta") atom.kind = AtomKind::dirac_delta;
    else if (parts[0] == "delta2") atom.kind = AtomKind::dirac_delta_squared;
    else if (parts[0] == "jump") atom.kind = AtomKind::jump;
    else return "unknown atom kind '" + std::string(parts[0]) + "' (delta | delta2 | jump)";
    const std::size_t want = atom.kind == AtomKind::jump ? 5 : 3;
    if (parts.size() != want)
      return "atom '" + std::string(item) + "' needs " + std::to_string(want) +
             " fields (kind:location:weight" + (want == 5 ? ":left:right)" : ")");
    std::vector<double> vals;
    for (std::size_t i = 1; i < parts.size(); ++i) {
      auto d = to_double(parts[i]);
      if (!d) return "atom '" + std::string(item) + "' has a non-numeric field";
      vals.push_back(*d);
    }
    atom.location = vals[0];
    atom.weight = vals[1];
    if (atom.kind == AtomKind::jump) {
      atom.left = vals[2];
      atom.right = vals[3];
    }
    c.atoms.push_back(atom);
  }
  return std::nullopt;
}

const std::map<std::string, std::map<std::string, Key>>& schema() {
  using C = ExperimentConfig;
  static const std::map<std::string, std::map<std::string, Key>> s = {
      {"run",
       {
           {"command", {choice<Command>({{"solve", Command::solve},
                                         {"sweep", Command::sweep},
                                         {"uniqueness", Command::uniqueness},
                                         {"consistency", Command::consistency},
                                         {"duhamel", Command::duhamel},
                                         {"diagnose", Command::diagnose}},
                                        [](C& c, Command v) { c.command = v; })}},
           {"output_dir", {[](C& c, std::string_view v) -> std::optional<std::string> {
              if (v.empty()) return "must not be empty";
              c.output_dir = std::string(v);
              return std::nullopt;
            }}},
           {"seed", {[](C& c, std::string_view v) -> std::optional<std::string> {
              auto i = to_integer<std::uint64_t>(v);
              if (!i) return "expected a nonnegative integer, got '" + std::string(v) + "'";
              c.seed = *i;
              return std::nullopt;
            }}},
           {"epsilon", {real_with([](C& c, double v) { c.epsilon = v; })}},
           {"quadrature_intervals", {[](C& c, std::string_view v) -> std::optional<std::string> {
              auto i = to_integer<std::size_t>(v);
              if (!i || *i == 0) return "expected a positive integer, got '" + std::string(v) + "'";
              c.quadrature_intervals = *i;
              return std::nullopt;
            }}},
           {"fine_reference", {boolean(&C::fine_reference)}},
       }},
      {"domain",
       {
           {"a", {real(&C::a), true}},
           {"b", {real(&C::b), true}},
           {"n", {[](C& c, std::string_view v) -> std::optional<std::string> {
                    auto i = to_integer<std::size_t>(v);
                    if (!i) return "expected a positive integer, got '" + std::string(v) + "'";
                    c.n = *i;
                    return std::nullopt;
                  },
                  true}},
           {"boundary", {choice<Boundary>({{"dirichlet", Boundary::dirichlet_zero},
                                           {"periodic", Boundary::periodic}},
                                          [](C& c, Boundary v) { c.boundary = v; })}},
           {"face_rule", {choice<FaceRule>({{"arithmetic", FaceRule::arithmetic},
                                            {"harmonic", FaceRule::harmonic}},
                                           [](C& c, FaceRule v) { c.face_rule = v; })}},
       }},
      {"coefficient",
       {
           {"background", {choice<Background::Kind>({{"constant", Background::Kind::constant},
                                                     {"affine", Background::Kind::affine},
                                                     {"sinusoid", Background::Kind::sinusoid}},
                                                    [](C& c, Background::Kind v) {
                                                      c.background.kind = v;
                                                    })}},
           {"value", {real_with([](C& c, double v) { c.background.value = v; })}},
           {"slope", {real_with([](C& c, double v) { c.background.slope = v; })}},
           {"amplitude", {real_with([](C& c, double v) { c.background.amplitude = v; })}},
           {"frequency", {real_with([](C& c, double v) { c.background.frequency = v; })}},
           {"phase", {real_with([](C& c, double v) { c.background.phase = v; })}},
           {"h0", {real(&C::h0), true}},
           {"atoms", {parse_atoms}},
       }},
      {"initial_data",
       {
           {"kind", {choice<InitialData::Kind>({{"gaussian", InitialData::Kind::gaussian},
                                                {"mollified-step", InitialData::Kind::mollified_step},
                                                {"fourier-mode", InitialData::Kind::fourier_mode},
                                                {"file", InitialData::Kind::file}},
                                               [](C& c, InitialData::Kind v) { c.initial.kind = v; }),
                     true}},
           {"amplitude", {real_with([](C& c, double v) { c.initial.amplitude = v; })}},
           {"center", {real_with([](C& c, double v) { c.initial.center = v; })}},
           {"width", {real_with([](C& c, double v) { c.initial.width = v; })}},
           {"lo", {real_with([](C& c, double v) { c.initial.lo = v; })}},
           {"hi", {real_with([](C& c, double v) { c.initial.hi = v; })}},
           {"mode", {[](C& c, std::string_view v) -> std::optional<std::string> {
              auto i = to_integer<int>(v);
              if (!i) return "expected an integer, got '" + std::string(v) + "'";
              c.initial.mode = *i;
              return std::nullopt;
            }}},
           {"path", {[](C& c, std::string_view v) -> std::optional<std::string> {
              c.initial.path = std::string(v);
              return std::nullopt;
            }}},
           {"mollify", {[](C& c, std::string_view v) -> std::optional<std::string> {
              if (v == "true") c.initial.mollify = true;
              else if (v == "false") c.initial.mollify = false;
              else return "expected true or false, got '" + std::string(v) + "'";
              return std::nullopt;
            }}},
       }},
      {"time",
       {
           {"T", {real(&C::final_time), true}},
           {"dt", {real(&C::dt), true}},
           {"scheme", {choice<Scheme>({{"implicit-euler", Scheme::implicit_euler},
                                       {"crank-nicolson", Scheme::crank_nicolson}},
                                      [](C& c, Scheme v) { c.scheme = v; })}},
           {"snapshots", {[](C& c, std::string_view v) -> std::optional<std::string> {
              auto i = to_integer<std::size_t>(v);
              if (!i || *i == 0) return "expected a positive integer, got '" + std::string(v) + "'";
              c.snapshots = *i;
              return std::nullopt;
            }}},
       }},
      {"ladder",
       {
           {"epsilons", {[](C& c, std::string_view v) -> std::optional<std::string> {
              c.epsilons.clear();
              for (auto item : split(v, ',')) {
                auto d = to_double(item);
                if (!d) return "expected a comma-separated list of numbers, got '" +
                                std::string(item) + "'";
                c.epsilons.push_back(*d);
              }
              return std::nullopt;
            }}},
       }},
      {"perturbation",
       {
           {"kind", {choice<PerturbationSpec::Kind>(
                        {{"power-law", PerturbationSpec::Kind::power_law},
                         {"superpolynomial", PerturbationSpec::Kind::superpolynomial}},
                        [](C& c, PerturbationSpec::Kind v) { perturbation(c).kind = v; })}},
           {"applies_to", {choice<PerturbationSpec::Target>(
                              {{"coefficient", PerturbationSpec::Target::coefficient},
                               {"data", PerturbationSpec::Target::data},
                               {"both", PerturbationSpec::Target::both}},
                              [](C& c, PerturbationSpec::Target v) { perturbation(c).applies_to = v; })}},
           {"k", {real_with([](C& c, double v) { perturbation(c).order = v; })}},
           {"magnitude", {real_with([](C& c, double v) { perturbation(c).magnitude = v; })}},
           {"center", {real_with([](C& c, double v) { perturbation(c).center = v; })}},
           {"width", {real_with([](C& c, double v) { perturbation(c).width = v; })}},
       }},
  };
  return s;
}

}  // namespace

std::vector<std::string> validate(const ExperimentConfig& c) {
  std::vector<std::string> errors;
  auto err = [&](const std::string& key, const std::string& msg) {
    errors.push_back(key + ": " + msg);
  };

  if (!(c.b > c.a)) err("[domain] b", "b " + fmt("%g", c.b) + " must exceed a " + fmt("%g", c.a));
  if (c.n < 8) err("[domain] n", "need at least 8 nodes, got " + std::to_string(c.n));
  const bool grid_ok = c.b > c.a && c.n >= 8;
  const double dx = grid_ok ? (c.b - c.a) / static_cast<double>(c.n - 1) : 0.0;

  if (!(c.h0 > 0.0)) err("[coefficient] h0", "must be positive, got " + fmt("%g", c.h0));
  for (const auto& atom : c.atoms) {
    if (atom.weight < 0.0)
      err("[coefficient] atoms", "atom at " + fmt("%g", atom.location) + " has negative weight");
    if (atom.kind == AtomKind::jump && (atom.left < 0.0 || atom.right < 0.0))
      err("[coefficient] atoms", "jump at " + fmt("%g", atom.location) + " has a negative value");
  }
  if (grid_ok && c.h0 > 0.0) {
    double lowest = INFINITY;
    for (std::size_t i = 0; i < c.n; ++i)
      lowest = std::min(lowest, c.background(c.a + static_cast<double>(i) * dx));
    if (lowest < c.h0)
      err("[coefficient] h0", "background drops to " + fmt("%g", lowest) + " below h0 " +
                                  fmt("%g", c.h0));
  }

  if (!(c.dt > 0.0)) err("[time] dt", "must be positive, got " + fmt("%g", c.dt));
  if (!(c.final_time > 0.0)) err("[time] T", "must be positive, got " + fmt("%g", c.final_time));
  if (c.dt > 0.0 && c.final_time > 0.0 && c.dt > c.final_time)
    err("[time] dt", "dt " + fmt("%g", c.dt) + " exceeds T " + fmt("%g", c.final_time));

  if (c.initial.kind == InitialData::Kind::gaussian && !(c.initial.width > 0.0))
    err("[initial_data] width", "must be positive");
  if (c.initial.kind == InitialData::Kind::mollified_step && !(c.initial.hi > c.initial.lo))
    err("[initial_data] hi", "must exceed lo");
  if (c.initial.kind == InitialData::Kind::file && c.initial.path.empty())
    err("[initial_data] path", "required for kind = file");

  auto check_eps = [&](const std::string& key, double e) {
    if (!(e > 0.0 && e <= 1.0)) {
      err(key, "epsilon " + fmt("%g", e) + " outside (0, 1]");
      return;
    }
    if (grid_ok && e < 4.0 * dx)
      err(key, "epsilon " + fmt("%g", e) + " < 4*dx " + fmt("%.3g", 4.0 * dx));
  };
  for (double e : c.epsilons) check_eps("[ladder] epsilons", e);
  if (c.epsilon) check_eps("[run] epsilon", *c.epsilon);

  const bool needs_ladder = c.command == Command::sweep || c.command == Command::uniqueness ||
                            c.command == Command::consistency;
  if (needs_ladder) {
    if (c.epsilons.size() < 4) {
      err("[ladder] epsilons", "command " + std::string(to_string(c.command)) +
                                   " needs at least 4 values");
    } else {
      for (std::size_t i = 1; i < c.epsilons.size(); ++i) {
        const double r = c.epsilons[i] / c.epsilons[i - 1];
        const double r0 = c.epsilons[1] / c.epsilons[0];
        if (!(r <= 0.5 + 1e-12) || std::abs(r - r0) > 1e-6 * r0) {
          err("[ladder] epsilons", "must be geometric with ratio <= 1/2");
          break;
        }
      }
    }
  }
  if ((c.command == Command::uniqueness || c.command == Command::duhamel) && !c.perturbation)
    err("[perturbation]", "command " + std::string(to_string(c.command)) +
                              " needs a [perturbation] section");
  if (c.command == Command::duhamel && !c.epsilon) err("[run] epsilon", "required for duhamel");
  if (c.command == Command::consistency && !c.atoms.empty())
    err("[coefficient] atoms", "consistency needs a regular coefficient (no atoms)");
  if (c.command == Command::solve && !c.epsilon && !c.atoms.empty())
    err("[run] epsilon", "a coefficient with atoms must be solved at some epsilon");

  double eps_max = 0.0;
  for (double e : c.epsilons) eps_max = std::max(eps_max, e);
  if (c.epsilon) eps_max = std::max(eps_max, *c.epsilon);
  for (const auto& atom : c.atoms) {
    const double margin = std::min(atom.location - c.a, c.b - atom.location);
    if (margin < 4.0 * eps_max)
      err("[coefficient] atoms", "atom at " + fmt("%g", atom.location) + " is " +
                                     fmt("%g", margin) + " from the boundary; needs >= 4*eps_max " +
                                     fmt("%g", 4.0 * eps_max));
  }
  if (c.perturbation) {
    const auto& p = *c.perturbation;
    if (!(p.width > 0.0) || p.center - p.width <= c.a || p.center + p.width >= c.b)
      err("[perturbation] center", "bump [" + fmt("%g", p.center - p.width) + ", " +
                                       fmt("%g", p.center + p.width) + "] must lie inside the domain");
    if (p.magnitude < 0.0) err("[perturbation] magnitude", "must be nonnegative");
  }
  if (c.command == Command::duhamel) {
    const auto steps = static_cast<std::size_t>(std::llround(c.final_time / c.dt));
    if (c.quadrature_intervals == 0 || steps % c.quadrature_intervals != 0)
      err("[run] quadrature_intervals",
          std::to_string(c.quadrature_intervals) + " does not divide the " +
              std::to_string(steps) + " time steps");
  }
  return errors;
}

ParseResult parse_config(std::string_view text) {
  ParseResult result;
  ExperimentConfig config;
  const auto& keys = schema();
  std::set<std::pair<std::string, std::string>> seen;
  std::string section;
  std::size_t line_no = 0;

  for (auto raw : split(text, '\n')) {
    ++line_no;
    const auto line = trim(raw);
    if (line.empty() || line.front() == '#' || line.front() == ';') continue;
    const std::string where = "line " + std::to_string(line_no);
    if (line.front() == '[') {
      if (line.back() != ']') {
        result.errors.push_back(where + ": malformed section header '" + std::string(line) + "'");
        continue;
      }
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (!keys.contains(section)) result.errors.push_back(where + ": unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      result.errors.push_back(where + ": expected 'key = value', got '" + std::string(line) + "'");
      continue;
    }
    const std::string key(trim(line.substr(0, eq)));
    const auto value = trim(line.substr(eq + 1));
    const std::string name = "[" + section + "] " + key;
    if (section.empty()) {
      result.errors.push_back(where + ": key '" + key + "' outside any section");
      continue;
    }
    const auto sec = keys.find(section);
    if (sec == keys.end()) continue;  // already reported
    const auto it = sec->second.find(key);
    if (it == sec->second.end()) {
      result.errors.push_back(name + ": unknown key");
      continue;
    }
    if (!seen.insert({section, key}).second) {
      result.errors.push_back(name + ": duplicate key");
      continue;
    }
    if (auto e = it->second.set(config, value)) result.errors.push_back(name + ": " + *e);
  }

  for (const auto& [sec, entries] : keys)
    for (const auto& [key, spec] : entries)
      if (spec.required && !seen.contains({sec, key}))
        result.errors.push_back("[" + sec + "] " + key + ": missing required key");

  if (result.errors.empty()) {
    for (auto& e : validate(config)) result.errors.push_back(std::move(e));
  }
  if (result.errors.empty()) result.config = std::move(config);
  return result;
}

std::string serialize(const ExperimentConfig& c) {
  std::ostringstream s;
  s << "[run]\n";
  s << "command = " << to_string(c.command) << '\n';
  s << "output_dir = " << c.output_dir << '\n';
  s << "seed = " << c.seed << '\n';
  if (c.epsilon) s << "epsilon = " << num(*c.epsilon) << '\n';
  s << "quadrature_intervals = " << c.quadrature_intervals << '\n';
  s << "fine_reference = " << (c.fine_reference ? "true" : "false") << '\n';

  s << "\n[domain]\n";
  s << "a = " << num(c.a) << '\n' << "b = " << num(c.b) << '\n' << "n = " << c.n << '\n';
  s << "boundary = " << (c.boundary == Boundary::periodic ? "periodic" : "dirichlet") << '\n';
  s << "face_rule = " << (c.face_rule == FaceRule::arithmetic ? "arithmetic" : "harmonic") << '\n';

  s << "\n[coefficient]\n";
  const char* bg = c.background.kind == Background::Kind::constant ? "constant"
                   : c.background.kind == Background::Kind::affine ? "affine"
                                                                    : "sinusoid";
  s << "background = " << bg << '\n';
  s << "value = " << num(c.background.value) << '\n';
  s << "slope = " << num(c.background.slope) << '\n';
  s << "amplitude = " << num(c.background.amplitude) << '\n';
  s << "frequency = " << num(c.background.frequency) << '\n';
  s << "phase = " << num(c.background.phase) << '\n';
  s << "h0 = " << num(c.h0) << '\n';
  s << "atoms = ";
  if (c.atoms.empty()) s << "none";
  for (std::size_t i = 0; i < c.atoms.size(); ++i) {
    const auto& a = c.atoms[i];
    s << (i ? ", " : "") << to_string(a.kind) << ':' << num(a.location) << ':' << num(a.weight);
    if (a.kind == AtomKind::jump) s << ':' << num(a.left) << ':' << num(a.right);
  }
  s << '\n';

  s << "\n[initial_data]\n";
  s << "kind = " << to_string(c.initial.kind) << '\n';
  s << "amplitude = " << num(c.initial.amplitude) << '\n';
  s << "center = " << num(c.initial.center) << '\n';
  s << "width = " << num(c.initial.width) << '\n';
  s << "lo = " << num(c.initial.lo) << '\n';
  s << "hi = " << num(c.initial.hi) << '\n';
  s << "mode = " << c.initial.mode << '\n';
  if (!c.initial.path.empty()) s << "path = " << c.initial.path << '\n';
  s << "mollify = " << (c.initial.mollify ? "true" : "false") << '\n';

  s << "\n[time]\n";
  s << "T = " << num(c.final_time) << '\n' << "dt = " << num(c.dt) << '\n';
  s << "scheme = " << to_string(c.scheme) << '\n';
  s << "snapshots = " << c.snapshots << '\n';

  if (!c.epsilons.empty()) {
    s << "\n[ladder]\nepsilons = ";
    for (std::size_t i = 0; i < c.epsilons.size(); ++i) s << (i ? ", " : "") << num(c.epsilons[i]);
    s << '\n';
  }
  if (c.perturbation) {
    const auto& p = *c.perturbation;
    s << "\n[perturbation]\n";
    s << "kind = " << to_string(p.kind) << '\n';
    s << "applies_to = " << to_string(p.applies_to) << '\n';
    s << "k = " << num(p.order) << '\n';
    s << "magnitude = " << num(p.magnitude) << '\n';
    s << "center = " << num(p.center) << '\n';
    s << "width = " << num(p.width) << '\n';
  }
  return s.str();
}

Grid make_grid(const ExperimentConfig& c) { return Grid(c.a, c.b, c.n, c.boundary); }

Problem make_problem(const ExperimentConfig& c) {
  return Problem{make_grid(c), SingularCoefficient(c.background, c.h0, c.atoms), c.initial,
                 c.face_rule, MollifierKernel::standard_bump()};
}

SolveConfig make_solve_config(const ExperimentConfig& c) {
  return SolveConfig::uniform(c.final_time, c.dt, c.scheme, c.snapshots);
}

}  // namespace singheat
