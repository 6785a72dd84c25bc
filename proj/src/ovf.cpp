#include "magmin/ovf.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace magmin {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void write_ovf(const std::string& path, const VectorField& v,
               const std::string& title) {
  const Grid& g = v.grid();
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << "# OOMMF OVF 2.0\n";
  out << "# Segment count: 1\n";
  out << "# Begin: Segment\n";
  out << "# Begin: Header\n";
  out << "# Title: " << title << "\n";
  out << "# meshtype: rectangular\n";
  out << "# meshunit: m\n";
  out << "# valuedim: 3\n";
  out << "# valuelabels: m_x m_y m_z\n";
  out << "# valueunits: 1 1 1\n";
  out << "# xmin: " << fmt(g.origin[0]) << "\n";
  out << "# ymin: " << fmt(g.origin[1]) << "\n";
  out << "# zmin: " << fmt(g.origin[2]) << "\n";
  out << "# xmax: " << fmt(g.origin[0] + g.nx * g.hx) << "\n";
  out << "# ymax: " << fmt(g.origin[1] + g.ny * g.hy) << "\n";
  out << "# zmax: " << fmt(g.origin[2] + g.nz * g.hz) << "\n";
  out << "# xbase: " << fmt(g.origin[0] + 0.5 * g.hx) << "\n";
  out << "# ybase: " << fmt(g.origin[1] + 0.5 * g.hy) << "\n";
  out << "# zbase: " << fmt(g.origin[2] + 0.5 * g.hz) << "\n";
  out << "# xstepsize: " << fmt(g.hx) << "\n";
  out << "# ystepsize: " << fmt(g.hy) << "\n";
  out << "# zstepsize: " << fmt(g.hz) << "\n";
  out << "# xnodes: " << g.nx << "\n";
  out << "# ynodes: " << g.ny << "\n";
  out << "# znodes: " << g.nz << "\n";
  out << "# End: Header\n";
  out << "# Begin: Data Text\n";
  for (int k = 0; k < g.nz; ++k)
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) {
        const std::size_t c = g.index(i, j, k);
        out << fmt(v[0][c]) << " " << fmt(v[1][c]) << " " << fmt(v[2][c])
            << "\n";
      }
  out << "# End: Data Text\n";
  out << "# End: Segment\n";
  if (!out) throw IoError("write failed: " + path);
}

VectorField read_ovf(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open for reading: " + path);
  int nx = 0, ny = 0, nz = 0, valuedim = 0;
  double hx = 0, hy = 0, hz = 0;
  std::array<double, 3> origin{0, 0, 0};
  bool have_min[3] = {false, false, false};
  std::string line;
  bool in_data = false;
  while (std::getline(in, line)) {
    if (line.rfind("#", 0) != 0)
      throw IoError(path + ": expected header line, got: " + line);
    std::string body = line.substr(1);
    const std::size_t notblank = body.find_first_not_of(" \t");
    if (notblank == std::string::npos) continue;
    body = body.substr(notblank);
    const std::size_t colon = body.find(':');
    if (colon == std::string::npos) continue;
    const std::string key = body.substr(0, colon);
    std::string val = body.substr(colon + 1);
    const std::size_t vb = val.find_first_not_of(" \t");
    val = (vb == std::string::npos) ? "" : val.substr(vb);
    if (key == "xnodes") nx = std::stoi(val);
    else if (key == "ynodes") ny = std::stoi(val);
    else if (key == "znodes") nz = std::stoi(val);
    else if (key == "xstepsize") hx = std::stod(val);
    else if (key == "ystepsize") hy = std::stod(val);
    else if (key == "zstepsize") hz = std::stod(val);
    else if (key == "xmin") { origin[0] = std::stod(val); have_min[0] = true; }
    else if (key == "ymin") { origin[1] = std::stod(val); have_min[1] = true; }
    else if (key == "zmin") { origin[2] = std::stod(val); have_min[2] = true; }
    else if (key == "valuedim") valuedim = std::stoi(val);
    else if (key == "meshtype" && val != "rectangular")
      throw IoError(path + ": unsupported meshtype " + val);
    else if (key == "Begin" && val.rfind("Data Text", 0) == 0) {
      in_data = true;
      break;
    }
  }
  if (!in_data) throw IoError(path + ": no text data section");
  if (nx < 1 || ny < 1 || nz < 1 || hx <= 0 || hy <= 0 || hz <= 0)
    throw IoError(path + ": incomplete mesh header");
  if (valuedim != 3) throw IoError(path + ": valuedim must be 3");
  if (!have_min[0] || !have_min[1] || !have_min[2])
    throw IoError(path + ": missing mesh bounds");
  VectorField v(Grid(nx, ny, nz, hx, hy, hz, origin));
  const std::size_t n = v.cells();
  for (std::size_t c = 0; c < n; ++c) {
    double x, y, z;
    if (!(in >> x >> y >> z))
      throw IoError(path + ": truncated data section");
    v.set(c, x, y, z);
  }
  return v;
}

}  // namespace magmin
