#include "cqed/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>

namespace cqed {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void fail(std::string_view where, const std::string& msg) {
  throw ConfigError(std::string(where) + ": " + msg);
}

double parse_double(std::string_view key, std::string_view v, std::string_view where) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size()) {
    fail(where, "value '" + std::string(v) + "' for key '" + std::string(key) +
                    "' is not a number");
  }
  return out;
}

long parse_integer(std::string_view key, std::string_view v, std::string_view where) {
  long out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size()) {
    fail(where, "value '" + std::string(v) + "' for key '" + std::string(key) +
                    "' is not an integer");
  }
  return out;
}

using Setter = std::function<void(RunConfig&, std::string_view, std::string_view)>;

const std::vector<std::pair<std::string_view, Setter>>& setters() {
  static const std::vector<std::pair<std::string_view, Setter>> table = [] {
    std::vector<std::pair<std::string_view, Setter>> t;
    auto add = [&](std::string_view key, auto&& fn) {
      t.emplace_back(key, [key, fn](RunConfig& c, std::string_view v, std::string_view w) {
        fn(c, key, v, w);
      });
    };
    add("variant", [](RunConfig& c, auto, std::string_view v, std::string_view w) {
      if (v == "qubit") c.protocol.variant = Variant::Qubit;
      else if (v == "qutrit") c.protocol.variant = Variant::Qutrit;
      else fail(w, "variant must be 'qubit' or 'qutrit', got '" + std::string(v) + "'");
    });
    add("model", [](RunConfig& c, auto, std::string_view v, std::string_view w) {
      if (v == "full") c.protocol.model = Model::Full;
      else if (v == "effective") c.protocol.model = Model::Effective;
      else fail(w, "model must be 'full' or 'effective', got '" + std::string(v) + "'");
    });
    auto param = [&](std::string_view key, double PhysicalParams::*field) {
      add(key, [field](RunConfig& c, std::string_view k, std::string_view v, std::string_view w) {
        c.protocol.params.*field = parse_double(k, v, w);
      });
    };
    param("g_b", &PhysicalParams::gB);
    param("delta", &PhysicalParams::delta);
    param("kappa", &PhysicalParams::kappa);
    param("gamma", &PhysicalParams::gamma);
    auto over = [&](std::string_view key, std::optional<double> RunConfig::*field) {
      add(key, [field](RunConfig& c, std::string_view k, std::string_view v, std::string_view w) {
        c.*field = parse_double(k, v, w);
      });
    };
    over("omega_a", &RunConfig::omega_a);
    over("omega_b", &RunConfig::omega_b);
    over("t1", &RunConfig::t1);
    over("delay", &RunConfig::delay);
    over("stage_b_duration", &RunConfig::stage_b_duration);
    add("delay_fraction", [](RunConfig& c, std::string_view k, std::string_view v, std::string_view w) {
      c.protocol.delay_fraction = parse_double(k, v, w);
    });
    add("clock_offset", [](RunConfig& c, std::string_view k, std::string_view v, std::string_view w) {
      c.protocol.stage_b_clock_offset = parse_double(k, v, w);
    });
    add("n_max", [](RunConfig& c, std::string_view k, std::string_view v, std::string_view w) {
      c.protocol.n_max = static_cast<int>(parse_integer(k, v, w));
    });
    add("samples", [](RunConfig& c, std::string_view k, std::string_view v, std::string_view w) {
      c.protocol.sample_count = static_cast<int>(parse_integer(k, v, w));
    });
    add("tolerance", [](RunConfig& c, std::string_view k, std::string_view v, std::string_view w) {
      c.protocol.tolerance = parse_double(k, v, w);
    });
    add("sweep_parameter", [](RunConfig& c, auto, std::string_view v, std::string_view w) {
      try {
        c.sweep_parameter = parse_sweep_parameter(v);
      } catch (const std::invalid_argument& e) {
        fail(w, e.what());
      }
    });
    add("sweep_min", [](RunConfig& c, std::string_view k, std::string_view v, std::string_view w) {
      c.sweep_min = parse_double(k, v, w);
    });
    add("sweep_max", [](RunConfig& c, std::string_view k, std::string_view v, std::string_view w) {
      c.sweep_max = parse_double(k, v, w);
    });
    add("sweep_steps", [](RunConfig& c, std::string_view k, std::string_view v, std::string_view w) {
      c.sweep_steps = static_cast<int>(parse_integer(k, v, w));
    });
    add("threads", [](RunConfig& c, std::string_view k, std::string_view v, std::string_view w) {
      const long n = parse_integer(k, v, w);
      if (n < 0) fail(w, "threads must be >= 0");
      c.threads = static_cast<unsigned>(n);
    });
    add("out", [](RunConfig& c, auto, std::string_view v, auto) { c.out = std::string(v); });
    return t;
  }();
  return table;
}

}  // namespace

ProtocolConfig RunConfig::protocol_config() const {
  ProtocolConfig c = protocol;
  if (omega_a || omega_b || t1 || delay || stage_b_duration) {
    ProtocolSchedule s = schedule(c.variant, c.params.gA, c.params.gB, c.params.delta,
                                  c.delay_fraction);
    if (omega_a) s.omegaA = *omega_a;
    if (omega_b) s.omegaB = *omega_b;
    if (t1) s.t1 = *t1;
    s.delay = delay ? *delay : c.delay_fraction * s.t1;
    if (stage_b_duration) s.stage_b_duration = *stage_b_duration;
    c.schedule_override = s;
  }
  return c;
}

SweepSpec RunConfig::sweep_spec() const {
  SweepSpec s;
  s.parameter = sweep_parameter;
  s.min = sweep_min;
  s.max = sweep_max;
  s.steps = sweep_steps;
  s.base = protocol_config();
  s.threads = threads;
  return s;
}

const std::vector<std::string_view>& config_keys() {
  static const std::vector<std::string_view> keys = [] {
    std::vector<std::string_view> k;
    for (const auto& [key, _] : setters()) k.push_back(key);
    return k;
  }();
  return keys;
}

void apply_setting(RunConfig& config, std::string_view key, std::string_view value,
                   std::string_view where) {
  for (const auto& [k, setter] : setters()) {
    if (k == key) {
      setter(config, trim(value), where);
      return;
    }
  }
  fail(where, "unknown key '" + std::string(key) + "'");
}

void parse_config(std::istream& in, std::string_view source, RunConfig& config) {
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) {
      view = view.substr(0, hash);
    }
    view = trim(view);
    if (view.empty()) continue;
    const std::string where = std::string(source) + ":" + std::to_string(number);
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) fail(where, "expected 'key = value', got '" + std::string(view) + "'");
    const std::string_view key = trim(view.substr(0, eq));
    const std::string_view value = trim(view.substr(eq + 1));
    if (key.empty()) fail(where, "missing key before '='");
    if (value.empty()) fail(where, "missing value for key '" + std::string(key) + "'");
    apply_setting(config, key, value, where);
  }
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  RunConfig config;
  parse_config(in, path, config);
  return config;
}

}  // namespace cqed
