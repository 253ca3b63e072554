#include "ac/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ac {

namespace {
std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}
}  // namespace

void write_profile_csv(const std::string& path, const Grid& g, const Profile& u) {
  if (static_cast<int>(u.size()) != g.count())
    throw std::invalid_argument("write_profile_csv: profile size mismatch");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << "r,u\n";
  for (int i = 0; i < g.count(); ++i)
    out << fmt17(g.nodes[i]) << ',' << fmt17(u[i]) << '\n';
}

std::pair<std::vector<double>, Profile> read_profile_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::string line;
  if (!std::getline(in, line) || line.rfind("r,u", 0) != 0)
    throw std::runtime_error("bad profile header in " + path);
  std::vector<double> r;
  Profile u;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    double a, b;
    char comma;
    if (!(row >> a >> comma >> b) || comma != ',')
      throw std::runtime_error("bad profile row in " + path + ": " + line);
    r.push_back(a);
    u.push_back(b);
  }
  if (r.size() < 2) throw std::runtime_error("profile too short in " + path);
  return {std::move(r), std::move(u)};
}

}  // namespace ac
