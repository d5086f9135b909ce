#include "ddr/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace ddr {

std::vector<int> RunConfig::level_sizes() const {
  std::vector<int> out;
  int n = n0;
  for (int i = 0; i < levels; ++i) {
    out.push_back(n);
    n *= 2;
  }
  return out;
}

void RunConfig::validate() const {
  static const std::vector<std::string> cases = {"square", "circle", "generic", "patch", "ldm"};
  bool known = false;
  for (const auto& c : cases) known = known || c == case_name;
  if (!known) throw ConfigError("unknown case '" + case_name + "'");
  if (mesh != "cartesian" && mesh != "perturbed" && mesh != "triangular")
    throw ConfigError("unknown mesh family '" + mesh + "'");
  if (k < 0) throw ConfigError("k must be >= 0");
  if (levels < 1) throw ConfigError("levels must be >= 1");
  if (n0 < 1) throw ConfigError("n0 must be >= 1");
  if (refinement_ratio < 0) throw ConfigError("refinement ratio must be >= 0");
  if (ratios.empty()) throw ConfigError("ratio list must not be empty");
  for (double r : ratios)
    if (r <= 0) throw ConfigError("sigma ratios must be positive");
  if (sigma_ext <= 0) throw ConfigError("sigma_ext must be positive");
  if (ldm_t_c <= 0 || ldm_t_f <= 0) throw ConfigError("ldm times must be positive");
  if (ldm_radius <= 0) throw ConfigError("ldm radius must be positive");
  if (ldm_steps0 < 1) throw ConfigError("ldm step count must be >= 1");
}

namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& v, const std::string& key) {
  try {
    size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw ConfigError("");
    return x;
  } catch (...) {
    throw ConfigError("bad numeric value for '" + key + "': " + v);
  }
}

int to_int(const std::string& v, const std::string& key) {
  try {
    size_t pos = 0;
    const int x = std::stoi(v, &pos);
    if (pos != v.size()) throw ConfigError("");
    return x;
  } catch (...) {
    throw ConfigError("bad integer value for '" + key + "': " + v);
  }
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig c;
  std::istringstream in(text);
  std::string line, section = "run";
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("line " + std::to_string(lineno) + ": malformed section");
      section = trim(line.substr(1, line.size() - 2));
      if (section != "run" && section != "ldm")
        throw ConfigError("unknown section '" + section + "'");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (section == "run") {
      if (key == "case") c.case_name = val;
      else if (key == "k") c.k = to_int(val, key);
      else if (key == "mesh") c.mesh = val;
      else if (key == "levels") c.levels = to_int(val, key);
      else if (key == "n0") c.n0 = to_int(val, key);
      else if (key == "M") c.refinement_ratio = to_int(val, key);
      else if (key == "ratios") {
        c.ratios.clear();
        std::istringstream rs(val);
        std::string item;
        while (std::getline(rs, item, ',')) c.ratios.push_back(to_double(trim(item), key));
      } else if (key == "sigma_ext") c.sigma_ext = to_double(val, key);
      else if (key == "eta") c.eta = val == "auto" ? -1.0 : to_double(val, key);
      else if (key == "seed") c.seed = static_cast<std::uint64_t>(std::stoull(val));
      else if (key == "outdir") c.outdir = val;
      else throw ConfigError("unknown key '" + key + "' in [run]");
    } else {
      if (key == "t_c") c.ldm_t_c = to_double(val, key);
      else if (key == "field") c.ldm_field = to_double(val, key);
      else if (key == "radius") c.ldm_radius = to_double(val, key);
      else if (key == "t_f") c.ldm_t_f = to_double(val, key);
      else if (key == "steps0") c.ldm_steps0 = to_int(val, key);
      else throw ConfigError("unknown key '" + key + "' in [ldm]");
    }
  }
  return c;
}

std::string serialize_config(const RunConfig& c) {
  std::ostringstream os;
  os << "[run]\n";
  os << "case = " << c.case_name << "\n";
  os << "k = " << c.k << "\n";
  os << "mesh = " << c.mesh << "\n";
  os << "levels = " << c.levels << "\n";
  os << "n0 = " << c.n0 << "\n";
  os << "M = " << c.refinement_ratio << "\n";
  os << "ratios = ";
  for (size_t i = 0; i < c.ratios.size(); ++i) os << (i ? "," : "") << fmt(c.ratios[i]);
  os << "\n";
  os << "sigma_ext = " << fmt(c.sigma_ext) << "\n";
  os << "eta = " << (c.eta < 0 ? std::string("auto") : fmt(c.eta)) << "\n";
  os << "seed = " << c.seed << "\n";
  os << "outdir = " << c.outdir << "\n";
  os << "[ldm]\n";
  os << "t_c = " << fmt(c.ldm_t_c) << "\n";
  os << "field = " << fmt(c.ldm_field) << "\n";
  os << "radius = " << fmt(c.ldm_radius) << "\n";
  os << "t_f = " << fmt(c.ldm_t_f) << "\n";
  os << "steps0 = " << c.ldm_steps0 << "\n";
  return os.str();
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace ddr
