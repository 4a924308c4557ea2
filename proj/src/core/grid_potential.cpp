#include "core/grid_potential.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace lcbp {

namespace {

void check_dims(const GridPotential& g) {
  if (g.dim < 1 || g.dim > 3)
    throw invalid_input("GridPotential: supported dimensions are 1..3");
  if (static_cast<int>(g.resolution.size()) != g.dim ||
      g.box_lo.size() != g.dim || g.box_hi.size() != g.dim)
    throw invalid_input("GridPotential: inconsistent dimension metadata");
  std::size_t n = 1;
  for (int r : g.resolution) {
    if (r < 2) throw invalid_input("GridPotential: resolution must be >= 2 per axis");
    n *= static_cast<std::size_t>(r);
  }
  if (g.values.size() != n)
    throw invalid_input("GridPotential: value count does not match resolution");
  for (int a = 0; a < g.dim; ++a)
    if (!(g.box_hi[a] > g.box_lo[a]))
      throw invalid_input("GridPotential: box must have positive extent");
}

/// 1-D conjugate of one lattice line.  xs/vals are the source nodes, ys the
/// target nodes; result is max_i (xs[i]*y - vals[i]) over finite entries.
void conjugate_line(const std::vector<double>& xs, const std::vector<double>& vals,
                    const std::vector<double>& ys, std::vector<double>& out) {
  const int n = static_cast<int>(xs.size());
  const int m = static_cast<int>(ys.size());

  int first = -1, last = -1;
  bool contiguous = true;
  for (int i = 0; i < n; ++i) {
    if (std::isfinite(vals[i])) {
      if (first < 0) first = i;
      else if (last != i - 1) contiguous = false;
      last = i;
    }
  }
  if (first < 0) {
    std::fill(out.begin(), out.end(), -kInfinity);
    return;
  }

  bool convex = contiguous;
  if (convex) {
    for (int i = first + 1; i < last; ++i) {
      if (vals[i - 1] + vals[i + 1] < 2.0 * vals[i] - 1e-12 * (1.0 + std::abs(vals[i]))) {
        convex = false;
        break;
      }
    }
  }

  if (convex) {
    // argmax of the concave sequence x_i y - v_i is nondecreasing in y
    int i = first;
    for (int j = 0; j < m; ++j) {
      const double y = ys[j];
      while (i < last && xs[i + 1] * y - vals[i + 1] >= xs[i] * y - vals[i]) ++i;
      out[j] = xs[i] * y - vals[i];
    }
    // ys descending would break the sweep; handle by a second reverse pass
    // only if needed (target nodes are always ascending here).
    return;
  }

  for (int j = 0; j < m; ++j) {
    double best = -kInfinity;
    for (int i = first; i <= last; ++i) {
      if (!std::isfinite(vals[i])) continue;
      best = std::max(best, xs[i] * ys[j] - vals[i]);
    }
    out[j] = best;
  }
}

std::vector<double> axis_nodes(const Vector& lo, const Vector& hi,
                               const std::vector<int>& res, int axis) {
  std::vector<double> xs(res[axis]);
  const double h = (hi[axis] - lo[axis]) / (res[axis] - 1);
  for (int i = 0; i < res[axis]; ++i) xs[i] = lo[axis] + h * i;
  return xs;
}

} // namespace

std::size_t GridPotential::size() const {
  std::size_t n = 1;
  for (int r : resolution) n *= static_cast<std::size_t>(r);
  return n;
}

double GridPotential::spacing(int axis) const {
  return (box_hi[axis] - box_lo[axis]) / (resolution[axis] - 1);
}

double GridPotential::coordinate(int axis, int index) const {
  return box_lo[axis] + spacing(axis) * index;
}

std::size_t GridPotential::flat_index(const std::vector<int>& idx) const {
  std::size_t flat = 0;
  for (int a = 0; a < dim; ++a) flat = flat * resolution[a] + idx[a];
  return flat;
}

double GridPotential::value_at(const std::vector<int>& idx) const {
  return values[flat_index(idx)];
}

bool GridPotential::proper() const {
  for (double v : values)
    if (std::isfinite(v)) return true;
  return false;
}

GridPotential GridPotential::tabulate(const Vector& lo, const Vector& hi,
                                      const std::vector<int>& resolution,
                                      const std::function<double(const Vector&)>& fn) {
  GridPotential g;
  g.dim = static_cast<int>(lo.size());
  g.box_lo = lo;
  g.box_hi = hi;
  g.resolution = resolution;
  g.values.assign(g.size(), 0.0);
  check_dims(g);

  std::vector<int> idx(g.dim, 0);
  Vector x(g.dim);
  for (std::size_t flat = 0; flat < g.values.size(); ++flat) {
    std::size_t rem = flat;
    for (int a = g.dim - 1; a >= 0; --a) {
      idx[a] = static_cast<int>(rem % g.resolution[a]);
      rem /= g.resolution[a];
    }
    for (int a = 0; a < g.dim; ++a) x[a] = g.coordinate(a, idx[a]);
    g.values[flat] = fn(x);
  }
  return g;
}

namespace {

/// Sweep the 1-D conjugate along `axis`, writing a grid whose coordinates
/// along that axis become `ys`.  Inputs are negated first when `negate` is
/// set (the chained multi-axis transform needs -previous between sweeps).
GridPotential conjugate_axis(const GridPotential& g, int axis,
                             const std::vector<double>& ys, bool negate) {
  GridPotential out = g;
  out.resolution[axis] = static_cast<int>(ys.size());
  out.box_lo[axis] = ys.front();
  out.box_hi[axis] = ys.back();
  out.values.assign(out.size(), 0.0);

  std::vector<double> xs = axis_nodes(g.box_lo, g.box_hi, g.resolution, axis);

  // strides for iterating lines along `axis`
  std::vector<int> outer_res;
  for (int a = 0; a < g.dim; ++a)
    if (a != axis) outer_res.push_back(g.resolution[a]);
  std::size_t outer_count = 1;
  for (int r : outer_res) outer_count *= static_cast<std::size_t>(r);

  std::vector<double> line(xs.size()), conj(ys.size());
  std::vector<int> idx(g.dim, 0);
  for (std::size_t o = 0; o < outer_count; ++o) {
    std::size_t rem = o;
    for (int a = g.dim - 1, slot = static_cast<int>(outer_res.size()) - 1; a >= 0; --a) {
      if (a == axis) continue;
      idx[a] = static_cast<int>(rem % outer_res[slot]);
      rem /= outer_res[slot];
      --slot;
    }
    for (int i = 0; i < static_cast<int>(xs.size()); ++i) {
      idx[axis] = i;
      double v = g.value_at(idx);
      if (negate) v = std::isfinite(v) ? -v : (v > 0 ? -kInfinity : kInfinity);
      // -inf inputs (empty columns of a previous sweep) act as +inf here
      line[i] = (v == -kInfinity) ? kInfinity : v;
    }
    conjugate_line(xs, line, ys, conj);
    for (int j = 0; j < static_cast<int>(ys.size()); ++j) {
      idx[axis] = j;
      out.values[out.flat_index(idx)] = conj[j];
    }
  }
  return out;
}

std::vector<double> dual_axis_nodes(const GridPotential& g, int axis, int res) {
  // slope range of the finite differences along the axis, 10% margin
  double smin = kInfinity, smax = -kInfinity;
  const double h = g.spacing(axis);
  std::vector<int> idx(g.dim, 0);

  std::vector<int> outer_res;
  for (int a = 0; a < g.dim; ++a)
    if (a != axis) outer_res.push_back(g.resolution[a]);
  std::size_t outer_count = 1;
  for (int r : outer_res) outer_count *= static_cast<std::size_t>(r);

  for (std::size_t o = 0; o < outer_count; ++o) {
    std::size_t rem = o;
    for (int a = g.dim - 1, slot = static_cast<int>(outer_res.size()) - 1; a >= 0; --a) {
      if (a == axis) continue;
      idx[a] = static_cast<int>(rem % outer_res[slot]);
      rem /= outer_res[slot];
      --slot;
    }
    for (int i = 0; i + 1 < g.resolution[axis]; ++i) {
      idx[axis] = i;
      const double v0 = g.value_at(idx);
      idx[axis] = i + 1;
      const double v1 = g.value_at(idx);
      if (!std::isfinite(v0) || !std::isfinite(v1)) continue;
      const double s = (v1 - v0) / h;
      smin = std::min(smin, s);
      smax = std::max(smax, s);
    }
  }
  if (!(smin <= smax)) { smin = -1.0; smax = 1.0; }
  const double margin = 0.1 * std::max(smax - smin, 1e-6) + 1e-9;
  smin -= margin;
  smax += margin;
  std::vector<double> ys(res);
  for (int j = 0; j < res; ++j) ys[j] = smin + (smax - smin) * j / (res - 1);
  return ys;
}

} // namespace

GridPotential legendre_transform(const GridPotential& phi) {
  check_dims(phi);
  if (!phi.proper()) throw invalid_input("legendre_transform: all-infinite input");
  GridPotential work = phi;
  for (int axis = 0; axis < phi.dim; ++axis) {
    std::vector<double> ys = dual_axis_nodes(phi, axis, phi.resolution[axis]);
    work = conjugate_axis(work, axis, ys, axis > 0);
  }
  return work;
}

GridPotential legendre_transform_to(const GridPotential& phi, const Vector& lo,
                                    const Vector& hi,
                                    const std::vector<int>& resolution) {
  check_dims(phi);
  if (!phi.proper()) throw invalid_input("legendre_transform: all-infinite input");
  if (lo.size() != phi.dim || hi.size() != phi.dim ||
      static_cast<int>(resolution.size()) != phi.dim)
    throw invalid_input("legendre_transform_to: target box dimension mismatch");
  GridPotential work = phi;
  for (int axis = 0; axis < phi.dim; ++axis) {
    std::vector<double> ys(resolution[axis]);
    for (int j = 0; j < resolution[axis]; ++j)
      ys[j] = lo[axis] + (hi[axis] - lo[axis]) * j / (resolution[axis] - 1);
    work = conjugate_axis(work, axis, ys, axis > 0);
  }
  return work;
}

GridPotential infimal_convolution(const GridPotential& phi, const GridPotential& psi) {
  check_dims(phi);
  check_dims(psi);
  if (phi.dim != psi.dim || phi.resolution != psi.resolution ||
      (phi.box_lo - psi.box_lo).norm() > 1e-12 ||
      (phi.box_hi - psi.box_hi).norm() > 1e-12)
    throw invalid_input("infimal_convolution: box/resolution mismatch");
  if (!phi.proper() || !psi.proper())
    throw invalid_input("infimal_convolution: improper input");
  // node differences must land on nodes: lo must be an integer multiple of h
  std::vector<int> origin(phi.dim);
  for (int a = 0; a < phi.dim; ++a) {
    const double ratio = -phi.box_lo[a] / phi.spacing(a);
    origin[a] = static_cast<int>(std::llround(ratio));
    if (std::abs(ratio - origin[a]) > 1e-9)
      throw invalid_input("infimal_convolution: lattice must contain the origin");
  }

  GridPotential out = phi;
  std::fill(out.values.begin(), out.values.end(), kInfinity);

  const std::size_t total = phi.size();
  std::vector<int> xi(phi.dim), yi(phi.dim), di(phi.dim);
  for (std::size_t xf = 0; xf < total; ++xf) {
    std::size_t rem = xf;
    for (int a = phi.dim - 1; a >= 0; --a) {
      xi[a] = static_cast<int>(rem % phi.resolution[a]);
      rem /= phi.resolution[a];
    }
    double best = kInfinity;
    for (std::size_t yf = 0; yf < total; ++yf) {
      const double pv = psi.values[yf];
      if (!std::isfinite(pv) || pv >= best) continue;
      std::size_t yrem = yf;
      bool in_range = true;
      for (int a = phi.dim - 1; a >= 0; --a) {
        yi[a] = static_cast<int>(yrem % phi.resolution[a]);
        yrem /= phi.resolution[a];
      }
      for (int a = 0; a < phi.dim && in_range; ++a) {
        di[a] = xi[a] - yi[a] + origin[a];
        if (di[a] < 0 || di[a] >= phi.resolution[a]) in_range = false;
      }
      if (!in_range) continue;
      const double fv = phi.value_at(di);
      if (std::isfinite(fv) && fv + pv < best) best = fv + pv;
    }
    out.values[xf] = best;
  }
  return out;
}

GridPotential right_scalar_mult(const GridPotential& phi, double t) {
  check_dims(phi);
  if (!(t > 0.0)) throw invalid_input("right_scalar_mult: requires t > 0");
  GridPotential out = phi;
  out.box_lo = t * phi.box_lo;
  out.box_hi = t * phi.box_hi;
  for (double& v : out.values)
    if (std::isfinite(v)) v *= t;
  return out;
}

GridPotential harmonic_combination_grid(const GridPotential& phi,
                                        const GridPotential& psi, double t) {
  check_dims(phi);
  check_dims(psi);
  if (!(t > 0.0)) throw invalid_input("harmonic_combination: requires t > 0");
  if (phi.dim != psi.dim || phi.resolution != psi.resolution ||
      (phi.box_lo - psi.box_lo).norm() > 1e-12 ||
      (phi.box_hi - psi.box_hi).norm() > 1e-12)
    throw invalid_input("harmonic_combination: box/resolution mismatch");
  GridPotential out = phi;
  for (std::size_t i = 0; i < out.values.size(); ++i)
    out.values[i] = phi.values[i] + t * psi.values[i];
  return out;
}

double midpoint_convexity_violation(const GridPotential& phi) {
  check_dims(phi);
  double worst = 0.0;
  std::vector<int> idx(phi.dim, 0);
  const std::size_t total = phi.size();
  for (std::size_t f = 0; f < total; ++f) {
    std::size_t rem = f;
    for (int a = phi.dim - 1; a >= 0; --a) {
      idx[a] = static_cast<int>(rem % phi.resolution[a]);
      rem /= phi.resolution[a];
    }
    for (int a = 0; a < phi.dim; ++a) {
      if (idx[a] == 0 || idx[a] + 1 >= phi.resolution[a]) continue;
      std::vector<int> lo = idx, hi = idx;
      lo[a] -= 1;
      hi[a] += 1;
      const double vm = phi.value_at(idx);
      const double vl = phi.value_at(lo);
      const double vr = phi.value_at(hi);
      if (!std::isfinite(vm)) continue;
      if (std::isfinite(vl) && std::isfinite(vr))
        worst = std::max(worst, 2.0 * vm - vl - vr);
      // an infinite neighbor can never violate midpoint convexity
    }
  }
  return worst;
}

void export_grid_csv(const GridPotential& phi, const std::string& path) {
  check_dims(phi);
  std::ofstream out(path);
  if (!out) throw computation_error("export_grid_csv: cannot open " + path);
  out << "# gridpotential dim=" << phi.dim << "\n# lo=";
  for (int a = 0; a < phi.dim; ++a) out << (a ? "," : "") << phi.box_lo[a];
  out << "\n# hi=";
  for (int a = 0; a < phi.dim; ++a) out << (a ? "," : "") << phi.box_hi[a];
  out << "\n# res=";
  for (int a = 0; a < phi.dim; ++a) out << (a ? "," : "") << phi.resolution[a];
  out << "\n";
  for (int a = 0; a < phi.dim; ++a) out << "i" << a << ",";
  out << "value\n";
  out.precision(17);
  std::vector<int> idx(phi.dim, 0);
  for (std::size_t f = 0; f < phi.size(); ++f) {
    std::size_t rem = f;
    for (int a = phi.dim - 1; a >= 0; --a) {
      idx[a] = static_cast<int>(rem % phi.resolution[a]);
      rem /= phi.resolution[a];
    }
    for (int a = 0; a < phi.dim; ++a) out << idx[a] << ",";
    const double v = phi.values[f];
    if (std::isinf(v)) out << "+inf\n";
    else out << v << "\n";
  }
}

GridPotential import_grid_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw computation_error("import_grid_csv: cannot open " + path);
  GridPotential g;
  std::string line;
  auto parse_list = [](const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
    return out;
  };
  std::vector<double> lo, hi, res;
  while (std::getline(in, line)) {
    if (line.rfind("# gridpotential", 0) == 0) {
      const auto pos = line.find("dim=");
      g.dim = std::stoi(line.substr(pos + 4));
    } else if (line.rfind("# lo=", 0) == 0) {
      lo = parse_list(line.substr(5));
    } else if (line.rfind("# hi=", 0) == 0) {
      hi = parse_list(line.substr(5));
    } else if (line.rfind("# res=", 0) == 0) {
      res = parse_list(line.substr(6));
    } else if (!line.empty() && line[0] != '#' && line.rfind("i0", 0) != 0) {
      break; // first data row, handled below
    }
  }
  if (g.dim < 1 || lo.size() != static_cast<size_t>(g.dim) ||
      hi.size() != static_cast<size_t>(g.dim) || res.size() != static_cast<size_t>(g.dim))
    throw computation_error("import_grid_csv: malformed header in " + path);
  g.box_lo = Vector(g.dim);
  g.box_hi = Vector(g.dim);
  g.resolution.resize(g.dim);
  for (int a = 0; a < g.dim; ++a) {
    g.box_lo[a] = lo[a];
    g.box_hi[a] = hi[a];
    g.resolution[a] = static_cast<int>(res[a]);
  }
  g.values.assign(g.size(), kInfinity);

  auto consume_row = [&](const std::string& row) {
    if (row.empty() || row[0] == '#') return;
    std::stringstream ss(row);
    std::string tok;
    std::vector<int> idx;
    for (int a = 0; a < g.dim; ++a) {
      if (!std::getline(ss, tok, ',')) throw computation_error("import_grid_csv: short row");
      idx.push_back(std::stoi(tok));
    }
    if (!std::getline(ss, tok, ','))
      throw computation_error("import_grid_csv: missing value column");
    double v;
    if (tok == "+inf" || tok == "inf") v = kInfinity;
    else v = std::stod(tok);
    g.values[g.flat_index(idx)] = v;
  };
  consume_row(line);
  while (std::getline(in, line)) consume_row(line);
  check_dims(g);
  return g;
}

} // namespace lcbp
