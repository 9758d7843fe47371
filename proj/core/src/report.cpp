#include "dnls/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace dnls {

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

static std::FILE* open_or_throw(const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  return f;
}

void write_rows_csv(const std::string& path, const std::string& header,
                    const std::vector<std::vector<double>>& rows) {
  std::FILE* f = open_or_throw(path);
  std::fprintf(f, "%s\n", header.c_str());
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i)
      std::fprintf(f, "%s%s", i ? "," : "", format_g17(row[i]).c_str());
    std::fputc('\n', f);
  }
  std::fclose(f);
}

void write_field_csv(const std::string& path, const Window& w, const Field& f) {
  if (static_cast<int>(f.size()) != w.size())
    throw std::invalid_argument("field does not match window");
  std::FILE* fp = open_or_throw(path);
  std::fprintf(fp, "x,re,im\n");
  for (int i = 0; i < w.size(); ++i)
    std::fprintf(fp, "%d,%s,%s\n", w.site(i), format_g17(f[i].real()).c_str(),
                 format_g17(f[i].imag()).c_str());
  std::fclose(fp);
}

Field read_field_csv(const std::string& path, const Window& w) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::string line;
  std::getline(in, line);  // header
  Field f = zero_field(w);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string tok;
    std::getline(ss, tok, ',');
    int x = std::stoi(tok);
    std::getline(ss, tok, ',');
    double re = std::stod(tok);
    std::getline(ss, tok, ',');
    double im = std::stod(tok);
    if (!w.contains(x)) throw std::runtime_error("site outside window in " + path);
    f[w.index(x)] = cplx(re, im);
  }
  return f;
}

void save_trajectory(const std::string& dir, const Window& w, const Trajectory& traj) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);

  nlohmann::json meta;
  meta["schema_version"] = 1;
  meta["N"] = w.N;
  meta["snapshots"] = traj.times.size();
  meta["norm_drift"] = traj.norm_drift;
  meta["energy_drift"] = traj.energy_drift;
  std::ofstream(dir + "/meta.json") << meta.dump(2) << "\n";

  std::FILE* idx = open_or_throw(dir + "/index.csv");
  std::fprintf(idx, "k,t,file\n");
  for (size_t k = 0; k < traj.times.size(); ++k) {
    char name[32];
    std::snprintf(name, sizeof(name), "snap_%05zu.csv", k);
    std::fprintf(idx, "%zu,%s,%s\n", k, format_g17(traj.times[k]).c_str(), name);
    write_field_csv(dir + "/" + name, w, traj.states[k]);
  }
  std::fclose(idx);
}

}  // namespace dnls
